//! One function per subcommand; each returns the JSON body of the result.

use std::path::Path;

use k3cert::char2::{
    classify_additive_normal_form, classify_by_b_invariants, wild_ramification_at, BinaryField,
    Place, WeierstrassModel,
};
use k3cert::fiber::{
    enumerate_configurations, fiber_table, max_disjoint, max_disjoint_omitting,
    max_disjoint_with_a2, EnumerationOptions, FiberType,
};
use k3cert::lattice::{
    ade_gram, discriminant_group, enumerate_roots, extended_lattice, find_disjoint_a1,
    identify_root_system, index_lemma_entry, two_length, verify_factor_through,
    verify_parity_argument, AdeLabel, LatticeVector, RootLatticeModel, SublatticeEmbedding,
};
use k3cert::quartic::{
    build_family, certify_family, dwork_twisted_cubic_check, expected_nodes, incidence_census,
    plane_section, rational_twelve_node_family, singular_points_scan, Family, FamilyParameters,
    LinearForm, PrimeField, QuarticField, MAX_SEED_ATTEMPTS,
};
use k3cert::verify::{run_criterion, CRITERIA};
use k3cert::{Error, Status};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::{json, Value};

use crate::args::{
    Cli, Command, FamilySource, LatticeOp, LatticeSource, ModelSource, QuarticOp, Vectors,
    WmodelOp,
};
use crate::Failure;

type Out = Result<(&'static str, Value), Failure>;

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("library types serialise to JSON")
}

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Io(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| Failure::Lib(Error::Input(format!("{}: {e}", path.display()))))
}

pub fn dispatch(cli: &Cli) -> Out {
    match &cli.command {
        Command::FiberTable { max_euler } => fiber_table_cmd(*max_euler),
        Command::Nv { fiber, a2, omit } => nv(fiber, *a2, *omit),
        Command::Enumerate {
            budget,
            require_a2,
            summary,
        } => enumerate(*budget, *require_a2, *summary),
        Command::Lattice { op } => lattice(op),
        Command::Wmodel { op } => wmodel(op, cli.seed),
        Command::Quartic { op } => quartic(op, cli.seed),
        Command::VerifyAll { only } => verify_all(only, cli.seed),
    }
}

fn fiber_table_cmd(max_euler: u32) -> Out {
    let mut rows = Vec::new();
    let mut ok = true;
    for t in FiberType::all_within_budget(max_euler) {
        let rec = fiber_table(t)?;
        let computed = max_disjoint(t)? as u32;
        ok &= computed == rec.n_v;
        let mut row = to_value(&rec);
        row["N_v_computed"] = json!(computed);
        rows.push(row);
    }
    Ok((
        "fiber-table",
        json!({"types": rows, "status": Status::from_bool(ok)}),
    ))
}

fn nv(fiber: &str, a2: Option<usize>, omit: Option<usize>) -> Out {
    let t: FiberType = fiber.parse()?;
    let mut v = json!({"type": t, "N_v": max_disjoint(t)?, "table_N_v": fiber_table(t)?.n_v});
    if let Some(i) = a2 {
        v["a2"] = json!(i);
        v["N_v_a2"] = json!(max_disjoint_with_a2(t, i)?);
    }
    if let Some(c) = omit {
        v["omit"] = json!(c);
        v["N_v_omit"] = json!(max_disjoint_omitting(t, c)?);
    }
    Ok(("nv", v))
}

fn enumerate(budget: u32, require_a2: u32, summary: bool) -> Out {
    let r = enumerate_configurations(&EnumerationOptions {
        budget,
        required_a2: require_a2,
        reverse_order: false,
    })?;
    let mut v = to_value(&r);
    if summary {
        v["configurations"] = json!(r.configurations.len());
    }
    Ok(("enumerate", v))
}

// ---- lattices ----

fn parse_label(s: &str) -> Result<AdeLabel, Failure> {
    Ok(s.parse::<AdeLabel>()?)
}

/// The ambient lattice, and generators if the input file had `images`.
fn ambient(src: &LatticeSource) -> Result<(RootLatticeModel, Option<Vec<LatticeVector>>), Failure> {
    match (&src.lattice, &src.input) {
        (Some(l), None) => Ok((ade_gram(parse_label(l)?)?, None)),
        (None, Some(path)) => {
            let v: Value = read_json(path)?;
            if v.get("images").is_some() {
                let e: SublatticeEmbedding = serde_json::from_value(v)
                    .map_err(|e| Failure::Lib(Error::Input(e.to_string())))?;
                Ok((e.ambient().clone(), Some(e.images().to_vec())))
            } else {
                let m: RootLatticeModel = serde_json::from_value(v)
                    .map_err(|e| Failure::Lib(Error::Input(e.to_string())))?;
                Ok((m, None))
            }
        }
        _ => Err(Failure::Usage("give exactly one of --lattice and --input".into())),
    }
}

fn parse_vectors(s: &str) -> Result<Vec<LatticeVector>, Failure> {
    s.split(';')
        .filter(|p| !p.trim().is_empty())
        .map(|p| {
            p.split(',')
                .map(|x| x.trim().parse::<i64>())
                .collect::<Result<Vec<_>, _>>()
                .map(LatticeVector)
                .map_err(|_| Failure::Lib(Error::Input(format!("bad vector `{p}`"))))
        })
        .collect()
}

fn embedding(src: &LatticeSource, vectors: &Vectors) -> Result<SublatticeEmbedding, Failure> {
    let (amb, from_file) = ambient(src)?;
    let images = match (&vectors.vectors, from_file) {
        (Some(s), _) => parse_vectors(s)?,
        (None, Some(v)) => v,
        (None, None) => {
            return Err(Failure::Usage(
                "give --vectors or an --input file with images".into(),
            ))
        }
    };
    Ok(SublatticeEmbedding::new(amb, images)?)
}

fn lattice(op: &LatticeOp) -> Out {
    Ok(match op {
        LatticeOp::Gram { src } => {
            let (m, _) = ambient(src)?;
            let mut v = to_value(&m);
            v["determinant"] = json!(m.determinant().to_string());
            v["negative_definite"] = json!(m.is_negative_definite());
            v["even"] = json!(m.is_even());
            ("lattice gram", v)
        }
        LatticeOp::Roots { src } => {
            let (m, _) = ambient(src)?;
            let roots = enumerate_roots(&m)?;
            ("lattice roots", json!({"count": roots.len(), "roots": roots}))
        }
        LatticeOp::Disc { src } => {
            let (m, _) = ambient(src)?;
            let d = discriminant_group(&m)?;
            let mut v = to_value(&d);
            v["two_length"] = json!(d.two_length());
            ("lattice disc", v)
        }
        LatticeOp::TwoLength { src } => {
            let (m, _) = ambient(src)?;
            ("lattice two-length", json!({"two_length": two_length(&m)?}))
        }
        LatticeOp::Complement { src, vectors } => {
            let e = embedding(src, vectors)?;
            let c = e.orthogonal_complement()?;
            let mut v = to_value(&c);
            v["complement_rank"] = json!(c.rank());
            v["complement_gram"] = to_value(&c.sub_gram().to_rows());
            if c.rank() > 0 {
                v["root_system"] = to_value(&identify_root_system(&c.as_lattice())?);
            }
            ("lattice complement", v)
        }
        LatticeOp::Closure { src, vectors } => {
            let e = embedding(src, vectors)?;
            let c = e.primitive_closure()?;
            let mut v = to_value(&c.closure);
            v["index"] = json!(c.index);
            v["primitive"] = json!(c.index == 1);
            ("lattice closure", v)
        }
        LatticeOp::EmbedA1 { r, lattice } => {
            let label = parse_label(lattice)?;
            let search = find_disjoint_a1(&ade_gram(label)?, *r)?;
            let entry = index_lemma_entry(label, *r)?;
            let mut v = to_value(&entry);
            v["example"] = to_value(&search.found);
            v["max_orthogonal"] = json!(search.max_size);
            ("lattice embed-a1", v)
        }
        LatticeOp::FactorThrough { m, r, max_rank } => (
            "lattice factor-through",
            to_value(&verify_factor_through(*r, *m, *max_rank)?),
        ),
        LatticeOp::RootsInQuotient { src, vectors } => {
            let e = embedding(src, vectors)?;
            let rq = e.roots_in_quotient()?;
            let mut v = to_value(&rq);
            v["nonzero_root_classes"] = json!(rq.nonzero_root_classes());
            ("lattice roots-in-quotient", v)
        }
        LatticeOp::Parity { lattice, vectors, k } => {
            let label = parse_label(lattice)?;
            let set = match &vectors.vectors {
                Some(s) => parse_vectors(s)?,
                None => return Err(Failure::Usage("parity needs --vectors".into())),
            };
            let k = if k.is_empty() { vec![1; set.len()] } else { k.clone() };
            let ext = extended_lattice(label)?;
            let lifted = ext.lift(0, &set, &k)?;
            let mut v = to_value(&verify_parity_argument(&ext, &lifted)?);
            v["lifted"] = to_value(&lifted);
            ("lattice parity", v)
        }
    })
}

// ---- Weierstrass models ----

fn model(src: &ModelSource, seed: u64) -> Result<WeierstrassModel, Failure> {
    match (&src.input, src.random) {
        (Some(path), _) => read_json(path),
        (None, true) => {
            let f = BinaryField::new(src.k)?;
            Ok(WeierstrassModel::random(f, &mut ChaCha8Rng::seed_from_u64(seed)))
        }
        (None, false) => Err(Failure::Usage("give --input FILE or --random".into())),
    }
}

fn wmodel(op: &WmodelOp, seed: u64) -> Out {
    Ok(match op {
        WmodelOp::Disc { src } => {
            let w = model(src, seed)?;
            let d = w.discriminant();
            let oracle = w.discriminant_from_b_invariants();
            (
                "wmodel disc",
                json!({
                    "model": w,
                    "discriminant": d,
                    "degree": d.degree(),
                    "b_invariant_discriminant": oracle,
                    "status": Status::from_bool(d == oracle),
                }),
            )
        }
        WmodelOp::IsSquare { src } => {
            let w = model(src, seed)?;
            let d = w.discriminant();
            (
                "wmodel is-square",
                json!({"discriminant": d, "is_square": d.is_square(), "sqrt": d.sqrt()}),
            )
        }
        WmodelOp::Classify { src } => {
            let w = model(src, seed)?;
            let mut v = json!({"places": w.place_reports()?});
            // The normal-form branches apply only to models of that shape.
            if let Ok(c) = classify_additive_normal_form(&w) {
                v["normal_form_at_0"] = to_value(&c);
                v["tate_at_0"] = to_value(&classify_by_b_invariants(&w)?);
            }
            ("wmodel classify", v)
        }
        WmodelOp::Delta { src, place, fiber } => {
            let w = model(src, seed)?;
            let place: Place = place.parse()?;
            let t: FiberType = fiber.parse()?;
            let r = wild_ramification_at(&w, place, t)?;
            let mut v = to_value(&r);
            v["status"] = to_value(&Status::from_bool(r.consistent));
            ("wmodel delta", v)
        }
    })
}

// ---- quartics ----

fn field_of(src: &FamilySource) -> Result<QuarticField, Failure> {
    match src.p {
        Some(p) => Ok(QuarticField::Prime(PrimeField::new(p)?)),
        None => Ok(QuarticField::gf2k(src.k)?),
    }
}

/// The family member, and the seeded search data when it was drawn.
fn family(src: &FamilySource, seed: u64) -> Result<(Family, Value), Failure> {
    let field = field_of(src)?;
    match &src.params {
        Some(path) => {
            let params: FamilyParameters = read_json(path)?;
            Ok((build_family(field, &params)?, Value::Null))
        }
        None => {
            if src.p.is_some() {
                return Err(Failure::Usage("seeded members are drawn in characteristic 2; give --params".into()));
            }
            let s = rational_twelve_node_family(field, seed, MAX_SEED_ATTEMPTS)?;
            let info = json!({"attempts": s.attempts, "expected": s.expected});
            Ok((s.family, info))
        }
    }
}

fn parse_plane(s: &str) -> Result<LinearForm, Failure> {
    let v: Vec<u32> = s
        .split(',')
        .map(|x| {
            let x = x.trim();
            match x.strip_prefix("0x") {
                Some(h) => u32::from_str_radix(h, 16).ok(),
                None => x.parse().ok(),
            }
        })
        .collect::<Option<_>>()
        .ok_or_else(|| Failure::Lib(Error::Input(format!("bad plane `{s}`"))))?;
    v.try_into()
        .map_err(|_| Failure::Lib(Error::Input(format!("a plane needs 4 coefficients: `{s}`"))))
}

fn quartic(op: &QuarticOp, seed: u64) -> Out {
    Ok(match op {
        QuarticOp::Build { src } => {
            let (f, info) = family(src, seed)?;
            let mut v = to_value(&f);
            if !info.is_null() {
                v["search"] = info;
            }
            ("quartic build", v)
        }
        QuarticOp::Scan { src } => {
            let (f, _) = family(src, seed)?;
            let scan = singular_points_scan(&f.model)?;
            let mut v = to_value(&scan);
            v["count"] = json!(scan.singular_points.len());
            ("quartic scan", v)
        }
        QuarticOp::Expected { src } => {
            let (f, _) = family(src, seed)?;
            let e = expected_nodes(f.model.field(), &f.params)?;
            let mut v = to_value(&e);
            v["generic"] = json!(e.generic());
            ("quartic expected", v)
        }
        QuarticOp::Planes { src, plane } => {
            let (f, _) = family(src, seed)?;
            let mut planes: Vec<LinearForm> = f.params.l.to_vec();
            for p in plane {
                planes.push(parse_plane(p)?);
            }
            let reports = planes
                .iter()
                .map(|p| plane_section(&f.model, p))
                .collect::<Result<Vec<_>, _>>()?;
            ("quartic planes", json!({"sections": reports}))
        }
        QuarticOp::Census { src } => match (&src.params, src.p) {
            (None, None) => ("quartic census", to_value(&certify_family(src.k, seed)?)),
            _ => {
                let (f, _) = family(src, seed)?;
                let scan = singular_points_scan(&f.model)?;
                (
                    "quartic census",
                    to_value(&incidence_census(&f.model, &scan, &f.params.l)?),
                )
            }
        },
        QuarticOp::DworkCheck => ("quartic dwork-check", to_value(&dwork_twisted_cubic_check())),
    })
}

fn verify_all(only: &[u8], seed: u64) -> Out {
    let ids: Vec<u8> = if only.is_empty() {
        (1..=CRITERIA).collect()
    } else {
        only.to_vec()
    };
    let mut reports = Vec::new();
    for (n, &id) in ids.iter().enumerate() {
        let r = run_criterion(id, seed)?;
        eprintln!(
            "[{}/{}] check {id} ({}): {} in {:.2}s",
            n + 1,
            ids.len(),
            r.name,
            r.status,
            r.elapsed_secs
        );
        reports.push(r);
    }
    let status = Status::all(reports.iter().map(|r| r.status));
    Ok(("verify-all", json!({"criteria": reports, "status": status})))
}
