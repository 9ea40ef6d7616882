//! The sixteen end-to-end checks behind `verify-all`.
//!
//! Each check returns a [`CriterionReport`]; a check that overruns its time
//! limit is reported as refuted, with the timing in the detail line.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::certificate::Status;
use crate::char2::{
    classify_additive_normal_form, classify_by_b_invariants, t23_argument, wild_ramification_at,
    AdditiveType, BinaryField, NormalFormParts, Place, PolyGF2k, WeierstrassModel,
};
use crate::error::{Error, Result};
use crate::fiber::{
    census_check, enumerate_configurations, fiber_table, max_disjoint, max_disjoint_omitting,
    max_disjoint_with_a2, pencil_minimum_points, DualGraph, EnumerationOptions, FiberType,
    IncidenceProblem,
};
use crate::lattice::{
    ade_gram, delta_chain, enumerate_roots, extended_lattice, identify_root_system, index_lemma,
    orthogonal_root_sets, two_length, verify_factor_through, verify_parity_argument, AdeLabel,
    RootLatticeModel, SublatticeEmbedding,
};
use crate::quartic::{certify_family, dwork_twisted_cubic_check};

/// Number of checks.
pub const CRITERIA: u8 = 16;

#[derive(Clone, Debug, Serialize)]
pub struct CriterionReport {
    pub id: u8,
    pub name: &'static str,
    pub status: Status,
    pub detail: String,
    /// Wall-clock seconds; left out of JSON so reports are reproducible.
    #[serde(skip)]
    pub elapsed_secs: f64,
    pub time_limit_secs: Option<f64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyAllReport {
    pub seed: u64,
    pub criteria: Vec<CriterionReport>,
    pub status: Status,
}

/// Name and time limit of a check.
pub fn criterion_info(id: u8) -> Result<(&'static str, Option<f64>)> {
    Ok(match id {
        1 => ("fibre N_v table", Some(1.0)),
        2 => ("budget enumerator", Some(60.0)),
        3 => ("A2 exclusion", Some(60.0)),
        4 => ("N_v^(i) bound", Some(10.0)),
        5 => ("omitting a section vertex", Some(10.0)),
        6 => ("2-length table", None),
        7 => ("index table", Some(300.0)),
        8 => ("complement of d1 in D_n", None),
        9 => ("factoring through D_2m", Some(600.0)),
        10 => ("root subgroups and parity lifts", None),
        11 => ("discriminant vs b-invariants", Some(5.0)),
        12 => ("normal-form classifier", None),
        13 => ("t^23 coefficient", None),
        14 => ("twelve-node quartic", Some(10.0)),
        15 => ("13-node incidence census", None),
        16 => ("twisted cubic on the Dwork member", None),
        _ => return Err(Error::range(format!("no check {id}; checks are 1..={CRITERIA}"))),
    })
}

/// Runs one check. Errors inside a check are reported, not propagated,
/// except an unknown id. A budget overrun becomes `not_checked`.
pub fn run_criterion(id: u8, seed: u64) -> Result<CriterionReport> {
    let (name, limit) = criterion_info(id)?;
    let start = Instant::now();
    let out = match id {
        1 => nv_table(),
        2 => enumerator(),
        3 => a2_exclusion(),
        4 => a2_pair_bound(),
        5 => omitted_vertex_bound(),
        6 => two_lengths(),
        7 => index_table(),
        8 => d1_complements(),
        9 => factor_through(),
        10 => parity_lifts(),
        11 => discriminant_oracle(seed),
        12 => classifier(seed),
        13 => t23(seed),
        14 => quartic_family(seed),
        15 => census(),
        _ => dwork(),
    };
    let elapsed = start.elapsed().as_secs_f64();
    let (mut status, mut detail) = match out {
        Ok(x) => x,
        Err(Error::BudgetExceeded(m)) => (Status::NotChecked, m),
        Err(e) => (Status::Refuted, format!("error: {e}")),
    };
    if let Some(l) = limit {
        if elapsed > l {
            status = status.and(Status::Refuted);
            detail = format!("{detail}; took {elapsed:.1}s, limit {l}s");
        }
    }
    Ok(CriterionReport {
        id,
        name,
        status,
        detail,
        elapsed_secs: elapsed,
        time_limit_secs: limit,
    })
}

pub fn verify_all(seed: u64) -> VerifyAllReport {
    let criteria: Vec<CriterionReport> = (1..=CRITERIA)
        .map(|i| run_criterion(i, seed).expect("ids in range"))
        .collect();
    let status = Status::all(criteria.iter().map(|c| c.status));
    VerifyAllReport {
        seed,
        criteria,
        status,
    }
}

type Outcome = Result<(Status, String)>;

/// The types of the fibre table: the exceptional ones and the two series.
fn listed_types(max_n: u32) -> Vec<FiberType> {
    let mut v = vec![
        FiberType::II,
        FiberType::III,
        FiberType::IV,
        FiberType::IVStar,
        FiberType::IIIStar,
        FiberType::IIStar,
    ];
    v.extend((1..=max_n).map(FiberType::I));
    v.extend((0..=max_n).map(FiberType::IStar));
    v
}

fn nv_table() -> Outcome {
    let types = listed_types(40);
    let mut bad = Vec::new();
    for &t in &types {
        let computed = max_disjoint(t)? as u32;
        if computed != fiber_table(t)?.n_v {
            bad.push(t.to_string());
        }
    }
    Ok((
        Status::from_bool(bad.is_empty()),
        format!("{} types, mismatches: {bad:?}", types.len()),
    ))
}

fn enumerator() -> Outcome {
    let r = enumerate_configurations(&EnumerationOptions::default())?;
    let want = ["I_2n", "I*_2n", "I*_1", "IV*", "III*"];
    let ok = r.max == Some(12) && r.types_at_max == want && r.minimal_delta_at_max;
    Ok((
        Status::from_bool(ok),
        format!(
            "max {:?}, {} optimal configurations, types {:?}, δ minimal: {}",
            r.max,
            r.configurations.len(),
            r.types_at_max,
            r.minimal_delta_at_max
        ),
    ))
}

fn a2_exclusion() -> Outcome {
    let mut maxima = Vec::new();
    for k in 1..=6 {
        let r = enumerate_configurations(&EnumerationOptions {
            required_a2: k,
            ..Default::default()
        })?;
        maxima.push((k, r.max));
    }
    let ok = maxima.iter().all(|(_, m)| m.is_none_or(|m| m <= 11));
    Ok((Status::from_bool(ok), format!("maxima by Σi: {maxima:?}")))
}

fn a2_pair_bound() -> Outcome {
    let mut violations = Vec::new();
    let mut checked = 0;
    for t in listed_types(40) {
        let rec = fiber_table(t)?;
        for i in 0..=4u32 {
            checked += 1;
            if let Some(v) = max_disjoint_with_a2(t, i as usize)? {
                if 2 * v as u32 + i > rec.e_v + rec.delta_min {
                    violations.push((t, i, v));
                }
            }
        }
    }
    let ok = violations == [(FiberType::IVStar, 3, 3)];
    let shown: Vec<String> = violations
        .iter()
        .map(|(t, i, v)| format!("({t}, i={i}) = {v}"))
        .collect();
    Ok((
        Status::from_bool(ok),
        format!("{checked} (type, i) pairs, exceeding the bound: {shown:?}"),
    ))
}

fn omitted_vertex_bound() -> Outcome {
    let mut types: Vec<FiberType> = (0..=40).map(FiberType::IStar).collect();
    types.extend([FiberType::IVStar, FiberType::IIIStar, FiberType::IIStar]);
    let (mut simple, mut odd) = (0, 0);
    let mut bad = Vec::new();
    for t in types {
        let rec = fiber_table(t)?;
        let g = DualGraph::of(t)?;
        for (v, &m) in g.multiplicities.iter().enumerate() {
            if m % 2 == 0 {
                continue;
            }
            if m == 1 {
                simple += 1;
            } else {
                odd += 1;
            }
            let n = max_disjoint_omitting(t, v)? as u32;
            if 2 * n + 2 > rec.e_v + rec.delta_min {
                bad.push(format!("{t} without c{v}: {n}"));
            }
        }
    }
    Ok((
        Status::from_bool(bad.is_empty()),
        format!("{simple} multiplicity-1 and {odd} other odd vertices, failures: {bad:?}"),
    ))
}

fn two_lengths() -> Outcome {
    let mut rows: Vec<(AdeLabel, usize)> = (2..=20)
        .map(|n| (AdeLabel::D(n), if n % 2 == 0 { 2 } else { 1 }))
        .collect();
    rows.extend([(AdeLabel::E(6), 0), (AdeLabel::E(7), 1), (AdeLabel::E(8), 0)]);
    let mut bad = Vec::new();
    for &(l, want) in &rows {
        let got = two_length(&ade_gram(l)?)?;
        if got != want {
            bad.push(format!("{l}: {got} != {want}"));
        }
    }
    Ok((
        Status::from_bool(bad.is_empty()),
        format!("{} lattices, mismatches: {bad:?}", rows.len()),
    ))
}

fn index_table() -> Outcome {
    let rep = index_lemma(6..=15)?;
    let rows: Vec<String> = rep
        .entries
        .iter()
        .map(|e| match e.min_index {
            Some(i) => format!("{} r={}: {} sets, min index {i}", e.lattice, e.r, e.embeddings_checked),
            None => format!("{} r={}: no embedding", e.lattice, e.r),
        })
        .collect();
    Ok((
        rep.status,
        format!(
            "{}; D5 has at most {} orthogonal roots",
            rows.join("; "),
            rep.d5_max_orthogonal
        ),
    ))
}

fn d1_complements() -> Outcome {
    let mut bad = Vec::new();
    for n in 4..=14 {
        let v = ade_gram(AdeLabel::D(n))?;
        let comp = SublatticeEmbedding::new(v.clone(), vec![v.basis_vector(0)])?
            .orthogonal_complement()?
            .as_lattice();
        let target = RootLatticeModel::direct_sum(&[
            ade_gram(AdeLabel::A(1))?,
            ade_gram(AdeLabel::D(n - 2))?,
        ]);
        let roots = enumerate_roots(&comp)?.len();
        let id = identify_root_system(&comp)?;
        let ok = roots == 2 + AdeLabel::D(n - 2).root_count()
            && comp.determinant() == target.determinant()
            && id.isometry
            && id.matches(&[AdeLabel::A(1), AdeLabel::D(n - 2)]);
        if !ok {
            bad.push(format!("D{n}: {} with {roots} roots", id.label()));
        }
    }
    Ok((
        Status::from_bool(bad.is_empty()),
        format!("n = 4..=14, failures: {bad:?}"),
    ))
}

fn factor_through() -> Outcome {
    let certs = (1..=6)
        .into_par_iter()
        .map(|m| verify_factor_through(None, m, 13))
        .collect::<Result<Vec<_>>>()?;
    let chains = (2..=6).map(delta_chain).collect::<Result<Vec<_>>>()?;
    let status = Status::all(certs.iter().map(|c| c.status))
        .and(Status::all(chains.iter().map(|c| c.status)));
    let sets: Vec<String> = certs
        .iter()
        .map(|c| format!("D{}: {} sets", 2 * c.m + 1, c.sets_checked))
        .collect();
    Ok((
        status,
        format!("{}; δ chain for m = 2..=6: {status}", sets.join(", ")),
    ))
}

/// Rows of the index table that admit an embedding.
fn index_rows() -> Vec<(AdeLabel, usize)> {
    let mut rows: Vec<(AdeLabel, usize)> =
        (6..=15).map(|n| (AdeLabel::D(n), n / 2 + 3)).collect();
    rows.extend([(AdeLabel::E(6), 5), (AdeLabel::E(7), 6), (AdeLabel::E(8), 6)]);
    rows
}

fn parity_lifts() -> Outcome {
    let mut lines = Vec::new();
    let mut status = Status::Verified;
    for (label, r) in index_rows() {
        let v = ade_gram(label)?;
        let sets = orthogonal_root_sets(&v, Some(r))?;
        let reps = sets.of_size(r);
        if reps.is_empty() {
            lines.push(format!("{label} r={r}: no embedding"));
            continue;
        }
        let ext = extended_lattice(label)?;
        let k: Vec<i64> = (0..r as i64).map(|i| 1 + i % 3).collect();
        let certs = reps
            .par_iter()
            .map(|m| verify_parity_argument(&ext, &ext.lift(0, m, &k)?))
            .collect::<Result<Vec<_>>>()?;
        let with_subgroup = certs.iter().filter(|c| !c.subgroups.is_empty()).count();
        let row = Status::all(certs.iter().map(|c| c.status))
            .and(Status::from_bool(with_subgroup == certs.len()));
        status = status.and(row);
        lines.push(format!(
            "{label} r={r}: {} sets, {with_subgroup} with a root subgroup, {row}",
            certs.len()
        ));
    }
    Ok((status, lines.join("; ")))
}

fn discriminant_oracle(seed: u64) -> Outcome {
    let f = BinaryField::new(8)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let bad = (0..1000)
        .filter(|_| {
            let w = WeierstrassModel::random(f, &mut rng);
            w.discriminant() != w.discriminant_from_b_invariants()
        })
        .count();
    Ok((
        Status::from_bool(bad == 0),
        format!("1000 models over GF(2^8), {bad} disagreements"),
    ))
}

/// Random parts with the constant terms of `a3'`, `a4'` zeroed half the time.
fn random_shape(f: BinaryField, rng: &mut ChaCha8Rng) -> Result<NormalFormParts> {
    let mut p = NormalFormParts::random(f, rng);
    let zero_const = |q: &PolyGF2k| -> Result<PolyGF2k> {
        let mut c = q.coeffs().to_vec();
        if let Some(c0) = c.first_mut() {
            *c0 = 0;
        }
        PolyGF2k::new(q.field(), c)
    };
    if rng.gen_bool(0.5) {
        p.a3 = zero_const(&p.a3)?;
    }
    if rng.gen_bool(0.5) {
        p.a4 = zero_const(&p.a4)?;
    }
    Ok(p)
}

fn classifier(seed: u64) -> Outcome {
    let f = BinaryField::new(4)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut counts, mut bad) = ([0usize; 3], Vec::new());
    let mut nonsquare_branch = 0;
    for draw in 0..200 {
        let p = random_shape(f, &mut rng)?;
        let w = WeierstrassModel::from_normal_form(&p)?;
        let expect = if p.a4.eval(0) != 0 {
            AdditiveType::III
        } else if p.a3.eval(0) != 0 {
            AdditiveType::IV
        } else {
            AdditiveType::Other
        };
        let got = classify_additive_normal_form(&w)?;
        let tate = classify_by_b_invariants(&w)?;
        counts[expect as usize] += 1;
        if got != expect || tate != expect {
            bad.push(format!("draw {draw}: {got:?}/{tate:?}, expected {expect:?}"));
        }
        // A III-shape with t ∤ a3' never has a square discriminant.
        if expect == AdditiveType::III && p.a3.eval(0) != 0 {
            nonsquare_branch += 1;
            if w.discriminant().is_square() {
                bad.push(format!("draw {draw}: square Δ with t ∤ a3'"));
            }
        }
    }
    // The other branch, built directly: a3' = 0 and a6' a square.
    let mut square_branch = 0;
    for draw in 0..50 {
        let mut p = random_shape(f, &mut rng)?;
        let a4c = p.a4.coeffs().to_vec();
        let mut a4c = if a4c.is_empty() { vec![0] } else { a4c };
        a4c[0] = f.random_nonzero(&mut rng);
        p.a4 = PolyGF2k::new(f, a4c)?;
        p.a3 = PolyGF2k::zero(f);
        let s = PolyGF2k::random(f, 5, &mut rng);
        p.a6 = &s * &s;
        let w = WeierstrassModel::from_normal_form(&p)?;
        let wild = wild_ramification_at(&w, Place::At(0), FiberType::III)?;
        let ok = w.discriminant().is_square()
            && classify_additive_normal_form(&w)? == AdditiveType::III
            && wild.exceeds_two;
        if ok {
            square_branch += 1;
        } else {
            bad.push(format!("square branch {draw}: δ = {}", wild.delta));
        }
    }
    Ok((
        Status::from_bool(bad.is_empty()),
        format!(
            "III/IV/other = {counts:?}; {nonsquare_branch} III-shapes with t ∤ a3' all non-square; \
             {square_branch}/50 square-Δ III-shapes have t | a3' and δ > 2; failures: {bad:?}"
        ),
    ))
}

fn t23(seed: u64) -> Outcome {
    let f = BinaryField::new(4)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut bad = 0;
    for _ in 0..100 {
        let alpha = f.random(&mut rng);
        let beta = loop {
            let b = f.random(&mut rng);
            if b != alpha {
                break b;
            }
        };
        let n1 = 2 * rng.gen_range(0..12) + 1;
        let n2 = 2 * rng.gen_range(0..=(23 - n1) / 2) + 1;
        let ds = ((24 - n1 - n2) / 2) as usize;
        let s = match ds {
            0 => PolyGF2k::one(f),
            _ => &PolyGF2k::random(f, ds - 1, &mut rng) + &PolyGF2k::monomial(f, 1, ds),
        };
        let c = t23_argument(alpha, beta, n1, n2, &s)?;
        if !c.status.is_verified() || c.coefficient_t23 != alpha ^ beta {
            bad += 1;
        }
    }
    Ok((
        Status::from_bool(bad == 0),
        format!("100 draws over GF(2^4), {bad} failures"),
    ))
}

fn quartic_family(seed: u64) -> Outcome {
    let c = certify_family(4, seed)?;
    Ok((
        c.status,
        format!(
            "seed {seed} (attempt {}): {} nodes, full scan matches: {}, \
             coordinate planes double conics: {}, {} non-reduced planes, max shared {}",
            c.attempts,
            c.nodes.len(),
            c.scan_matches_expected,
            c.coordinate_planes_double_conics,
            c.nonreduced_planes.len(),
            c.census.max_shared
        ),
    ))
}

fn census() -> Outcome {
    let r = census_check(IncidenceProblem {
        num_points: 13,
        points_per_block: 6,
        blocks_per_point: 3,
        max_shared_points: 2,
    })?;
    let pencil = pencil_minimum_points(4, 6, 2)?;
    let ok = r.feasible() == Some(false)
        && r.arithmetic.contains("39")
        && pencil.formula == 15
        && pencil.minimum == Some(15)
        && pencil.formula > 13;
    Ok((
        Status::from_bool(ok),
        format!(
            "{}; four planes through a node need {} points (minimum {:?}) > 13",
            r.arithmetic, pencil.formula, pencil.minimum
        ),
    ))
}

fn dwork() -> Outcome {
    let c = dwork_twisted_cubic_check();
    Ok((
        c.status,
        format!(
            "λ = {}: residue {}; char 2 residue zero: {}; control λ = {} nonzero: {}",
            c.lambda, c.rational_residue, c.char2_zero, c.control_lambda, c.control_nonzero
        ),
    ))
}
