//! The family `l1·l2·l3·l4 + q² = 0`, its singular points and the nodes
//! predicted on the six lines `l_i = l_j = 0`.

use std::collections::HashSet;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::census::collinear_triples;
use super::field::QuarticField;
use super::poly::MPoly;
use crate::error::{Error, Result};

/// `Σ c_i x_i`.
pub type LinearForm = [u32; 4];

/// Monomials `x_i x_j` (`i <= j`) in the order used by [`FamilyParameters::q`].
pub const Q_MONOMIALS: [(usize, usize); 10] = [
    (0, 0),
    (0, 1),
    (0, 2),
    (0, 3),
    (1, 1),
    (1, 2),
    (1, 3),
    (2, 2),
    (2, 3),
    (3, 3),
];

/// Largest `|P³(F)|` a scan will visit.
pub const SCAN_LIMIT: u64 = 1 << 24;

/// Point of `P³` with first nonzero coordinate 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ProjectivePoint(pub [u32; 4]);

impl ProjectivePoint {
    pub fn new(field: QuarticField, coords: &[u32]) -> Result<Self> {
        if coords.len() != 4 {
            return Err(Error::Dimension(format!("{} coordinates", coords.len())));
        }
        for &c in coords {
            field.check(c)?;
        }
        let Some(&lead) = coords.iter().find(|&&c| c != 0) else {
            return Err(Error::domain("the zero vector is not a projective point"));
        };
        let inv = field.inv(lead)?;
        Ok(ProjectivePoint(std::array::from_fn(|i| field.mul(coords[i], inv))))
    }

    pub fn coords(&self) -> &[u32; 4] {
        &self.0
    }
}

/// All normalized points of `P^{n-1}(F)`, `n <= 4`, in a fixed order.
pub fn projective_points(field: QuarticField, n: usize) -> Vec<Vec<u32>> {
    let q = field.order();
    let mut out = Vec::new();
    for lead in 0..n {
        let free = n - lead - 1;
        let count = (q as u64).pow(free as u32);
        for mut idx in 0..count {
            let mut v = vec![0; n];
            v[lead] = 1;
            for slot in v.iter_mut().skip(lead + 1) {
                *slot = (idx % q as u64) as u32;
                idx /= q as u64;
            }
            out.push(v);
        }
    }
    out
}

/// Homogeneous quartic in `x0..x3`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuarticSurfaceModel {
    field: QuarticField,
    #[serde(rename = "terms")]
    poly: MPoly,
}

impl QuarticSurfaceModel {
    pub fn new(poly: MPoly) -> Result<Self> {
        if poly.is_zero() {
            return Err(Error::domain("the zero form does not define a surface"));
        }
        if poly.homogeneous_degree() != Some(4) {
            return Err(Error::domain("form is not homogeneous of degree 4"));
        }
        Ok(QuarticSurfaceModel {
            field: poly.field(),
            poly,
        })
    }

    pub fn field(&self) -> QuarticField {
        self.field
    }

    pub fn poly(&self) -> &MPoly {
        &self.poly
    }

    pub fn gradient(&self) -> [MPoly; 4] {
        std::array::from_fn(|i| self.poly.partial(i))
    }

    /// `F` and its four formal partials vanish (the first condition is not
    /// implied by the others in characteristic 2).
    pub fn is_singular_at(&self, p: &[u32]) -> bool {
        self.poly.eval(p) == 0 && self.gradient().iter().all(|g| g.eval(p) == 0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyParameters {
    pub l: [LinearForm; 4],
    /// Coefficients of `q` on [`Q_MONOMIALS`].
    pub q: [u32; 10],
}

impl FamilyParameters {
    pub fn random<R: rand::Rng + ?Sized>(field: QuarticField, rng: &mut R) -> Self {
        FamilyParameters {
            l: std::array::from_fn(|_| std::array::from_fn(|_| field.random(rng))),
            q: std::array::from_fn(|_| field.random(rng)),
        }
    }

    /// `l_i = x_i`, `q = λ(x0 + x1 + x2 + x3)²`.
    pub fn dwork(field: QuarticField, lambda: u32) -> Self {
        let mut q = [0; 10];
        for (k, &(i, j)) in Q_MONOMIALS.iter().enumerate() {
            q[k] = if i == j { lambda } else { field.mul(lambda, field.add(1, 1)) };
        }
        FamilyParameters {
            l: std::array::from_fn(|i| std::array::from_fn(|j| (i == j) as u32)),
            q,
        }
    }

    pub fn check(&self, field: QuarticField) -> Result<()> {
        for &c in self.l.iter().flatten().chain(&self.q) {
            field.check(c)?;
        }
        Ok(())
    }

    pub fn q_poly(&self, field: QuarticField) -> MPoly {
        MPoly::from_terms(
            field,
            Q_MONOMIALS.iter().zip(&self.q).map(|(&(i, j), &c)| {
                let mut e = [0u8; 4];
                e[i] += 1;
                e[j] += 1;
                (e, c)
            }),
        )
    }

    pub fn forms_independent(&self, field: QuarticField) -> bool {
        let rows: Vec<Vec<u32>> = self.l.iter().map(|r| r.to_vec()).collect();
        field.rank(&rows) == 4
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Family {
    pub field: QuarticField,
    pub params: FamilyParameters,
    pub model: QuarticSurfaceModel,
    /// `false` flags dependent linear forms.
    pub independent: bool,
}

/// `F = l1·l2·l3·l4 + q²`.
pub fn build_family(field: QuarticField, params: &FamilyParameters) -> Result<Family> {
    params.check(field)?;
    let prod = params
        .l
        .iter()
        .fold(MPoly::constant(field, 1), |acc, l| acc.mul(&MPoly::linear(field, l)));
    let q = params.q_poly(field);
    let f = prod.add(&q.mul(&q));
    Ok(Family {
        field,
        params: params.clone(),
        model: QuarticSurfaceModel::new(f)?,
        independent: params.forms_independent(field),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct ScanReport {
    pub points_scanned: u64,
    pub singular_points: Vec<ProjectivePoint>,
    /// Lines all of whose rational points are singular.
    pub singular_lines: usize,
    /// A singular line was found, so the singularities are not isolated.
    pub non_isolated: bool,
}

/// Every rational point of `P³` where `F` and all formal partials vanish.
pub fn singular_points_scan(x: &QuarticSurfaceModel) -> Result<ScanReport> {
    let field = x.field();
    let q = field.order() as u64;
    let total = q * q * q + q * q + q + 1;
    if total > SCAN_LIMIT {
        return Err(Error::BudgetExceeded(format!(
            "|P³| = {total} exceeds the scan limit {SCAN_LIMIT}"
        )));
    }
    let grad = x.gradient();
    let points = projective_points(field, 4);
    let mut singular: Vec<ProjectivePoint> = points
        .par_iter()
        .filter(|p| x.poly().eval(p) == 0 && grad.iter().all(|g| g.eval(p) == 0))
        .map(|p| ProjectivePoint(std::array::from_fn(|i| p[i])))
        .collect();
    singular.sort();
    let lines = singular_lines(field, &singular);
    Ok(ScanReport {
        points_scanned: total,
        non_isolated: lines > 0,
        singular_lines: lines,
        singular_points: singular,
    })
}

/// Number of lines through two of `pts` whose rational points all lie in `pts`.
fn singular_lines(field: QuarticField, pts: &[ProjectivePoint]) -> usize {
    let set: HashSet<&ProjectivePoint> = pts.iter().collect();
    let mut seen: HashSet<Vec<ProjectivePoint>> = HashSet::new();
    for (i, a) in pts.iter().enumerate() {
        for b in &pts[i + 1..] {
            let line = line_points(field, a.coords(), b.coords());
            if line.iter().all(|p| set.contains(p)) {
                let mut key = line;
                key.sort();
                seen.insert(key);
            }
        }
    }
    seen.len()
}

/// The rational points on the line through two distinct points.
pub fn line_points(field: QuarticField, a: &[u32; 4], b: &[u32; 4]) -> Vec<ProjectivePoint> {
    let mut out = vec![ProjectivePoint(*a)];
    for s in field.elements() {
        let v: Vec<u32> = (0..4).map(|i| field.add(field.mul(s, a[i]), b[i])).collect();
        out.push(ProjectivePoint::new(field, &v).expect("distinct points"));
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct ExpectedNode {
    /// `{l_i = l_j = 0}`.
    pub pair: [usize; 2],
    /// Present when the point is rational over the base field.
    pub point: Option<ProjectivePoint>,
    /// Degree of the extension the point is defined over (1 or 2).
    pub extension_degree: u32,
    /// 2 when `q` is tangent to the line (double root).
    pub multiplicity: u32,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExpectedNodes {
    pub nodes: Vec<ExpectedNode>,
    /// Pairs whose line meets `q = 0` in a double point.
    pub tangencies: Vec<[usize; 2]>,
    /// Pairs whose line lies in `q = 0`, or whose forms are dependent.
    pub degenerate_pairs: Vec<[usize; 2]>,
    pub independent: bool,
    /// Twelve pairwise distinct points (over the base field or not).
    pub distinct: bool,
    pub all_rational: bool,
    /// No three rational points are collinear; for distinct points this
    /// means `q` cuts a smooth conic on every plane `l_i = 0`.
    pub no_collinear_triples: bool,
    /// Every rational point found is singular on `F`.
    pub verified_singular: bool,
}

impl ExpectedNodes {
    /// Independent forms, no tangency or degenerate line, twelve distinct
    /// points, no three of them collinear.
    pub fn generic(&self) -> bool {
        self.independent
            && self.tangencies.is_empty()
            && self.degenerate_pairs.is_empty()
            && self.distinct
            && self.no_collinear_triples
    }

    pub fn rational_points(&self) -> Vec<ProjectivePoint> {
        let mut v: Vec<ProjectivePoint> = self.nodes.iter().filter_map(|n| n.point).collect();
        v.sort();
        v
    }
}

/// Solves `l_i = l_j = q = 0` on each of the six lines.
pub fn expected_nodes(field: QuarticField, params: &FamilyParameters) -> Result<ExpectedNodes> {
    let fam = build_family(field, params)?;
    let q = params.q_poly(field);
    let mut nodes = Vec::new();
    let mut tangencies = Vec::new();
    let mut degenerate = Vec::new();
    for i in 0..4 {
        for j in i + 1..4 {
            let rows = vec![params.l[i].to_vec(), params.l[j].to_vec()];
            let ker = field.kernel(&rows, 4);
            if ker.len() != 2 {
                degenerate.push([i, j]);
                continue;
            }
            let (p, r) = (&ker[0], &ker[1]);
            // Rational roots of the binary quadratic q(s·p + t·r).
            let mut roots = Vec::new();
            let mut candidates: Vec<Vec<u32>> = vec![p.clone()];
            for t in field.elements() {
                candidates.push((0..4).map(|k| field.add(field.mul(t, p[k]), r[k])).collect());
            }
            for c in candidates {
                if q.eval(&c) == 0 {
                    roots.push(ProjectivePoint::new(field, &c)?);
                }
            }
            match roots.len() {
                0 => {
                    for _ in 0..2 {
                        nodes.push(ExpectedNode {
                            pair: [i, j],
                            point: None,
                            extension_degree: 2,
                            multiplicity: 1,
                        });
                    }
                }
                1 => {
                    tangencies.push([i, j]);
                    nodes.push(ExpectedNode {
                        pair: [i, j],
                        point: Some(roots[0]),
                        extension_degree: 1,
                        multiplicity: 2,
                    });
                }
                2 => {
                    for pt in roots {
                        nodes.push(ExpectedNode {
                            pair: [i, j],
                            point: Some(pt),
                            extension_degree: 1,
                            multiplicity: 1,
                        });
                    }
                }
                _ => degenerate.push([i, j]),
            }
        }
    }
    let rational = nodes.iter().filter_map(|n| n.point).collect::<Vec<_>>();
    let unique: HashSet<&ProjectivePoint> = rational.iter().collect();
    let count: u32 = nodes.iter().map(|n| n.multiplicity).sum();
    let distinct = count == 12
        && unique.len() == rational.len()
        && nodes.iter().all(|n| n.multiplicity == 1);
    Ok(ExpectedNodes {
        no_collinear_triples: collinear_triples(field, &rational).is_empty(),
        verified_singular: rational.iter().all(|p| fam.model.is_singular_at(p.coords())),
        all_rational: nodes.len() == 12 && nodes.iter().all(|n| n.point.is_some()),
        nodes,
        tangencies,
        degenerate_pairs: degenerate,
        independent: fam.independent,
        distinct,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct SeededFamily {
    pub seed: u64,
    /// Parameter draws until a generic, fully rational member appeared.
    pub attempts: u32,
    pub family: Family,
    pub expected: ExpectedNodes,
}

/// Draws parameters from `ChaCha8(seed)` until the twelve expected nodes are
/// distinct, rational over the field, and the linear forms independent.
pub fn rational_twelve_node_family(
    field: QuarticField,
    seed: u64,
    max_attempts: u32,
) -> Result<SeededFamily> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for attempt in 1..=max_attempts {
        let params = FamilyParameters::random(field, &mut rng);
        let expected = expected_nodes(field, &params)?;
        if expected.generic() && expected.all_rational {
            return Ok(SeededFamily {
                seed,
                attempts: attempt,
                family: build_family(field, &params)?,
                expected,
            });
        }
    }
    Err(Error::BudgetExceeded(format!(
        "no generic rational member in {max_attempts} draws (seed {seed})"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quartic::field::PrimeField;

    fn gf16() -> QuarticField {
        QuarticField::gf2k(4).unwrap()
    }

    #[test]
    fn point_counts() {
        assert_eq!(projective_points(gf16(), 4).len(), 4369);
        assert_eq!(projective_points(gf16(), 3).len(), 273);
        let p: QuarticField = PrimeField::new(3).unwrap().into();
        assert_eq!(projective_points(p, 4).len(), 40);
    }

    #[test]
    fn normalization() {
        let f = gf16();
        let p = ProjectivePoint::new(f, &[0, 5, 7, 1]).unwrap();
        assert_eq!(p.0[1], 1);
        assert_eq!(p, ProjectivePoint::new(f, &[0, f.mul(5, 9), f.mul(7, 9), 9]).unwrap());
        assert!(ProjectivePoint::new(f, &[0, 0, 0, 0]).is_err());
    }

    #[test]
    fn coordinate_forms_without_q() {
        let f = gf16();
        let params = FamilyParameters {
            l: std::array::from_fn(|i| std::array::from_fn(|j| (i == j) as u32)),
            q: [0; 10],
        };
        let fam = build_family(f, &params).unwrap();
        assert_eq!(fam.model.poly().num_terms(), 1);
        assert_eq!(fam.model.poly().coeff(&[1, 1, 1, 1]), 1);
        // Singular along the six coordinate lines.
        let scan = singular_points_scan(&fam.model).unwrap();
        assert!(scan.non_isolated);
        assert_eq!(scan.singular_lines, 6);
        assert!(scan.singular_points.len() > 12);
    }

    #[test]
    fn dwork_member_is_not_generic() {
        let f = gf16();
        let e = expected_nodes(f, &FamilyParameters::dwork(f, 1)).unwrap();
        assert_eq!(e.tangencies.len(), 6);
        assert!(!e.generic());
        // Odd characteristic: the line x0 = x1 = 0 meets σ1² = 0 doubly too.
        let p: QuarticField = PrimeField::new(5).unwrap().into();
        let e = expected_nodes(p, &FamilyParameters::dwork(p, 2)).unwrap();
        assert_eq!(e.tangencies.len(), 6);
    }

    #[test]
    fn seeded_member_has_twelve_rational_nodes() {
        let f = gf16();
        let s = rational_twelve_node_family(f, 7, 10_000).unwrap();
        assert!(s.expected.verified_singular);
        let pts = s.expected.rational_points();
        assert_eq!(pts.len(), 12);
        let scan = singular_points_scan(&s.family.model).unwrap();
        assert!(!scan.non_isolated);
        assert_eq!(scan.singular_points, pts);
        // Same seed, same member.
        let again = rational_twelve_node_family(f, 7, 10_000).unwrap();
        assert_eq!(again.family.params, s.family.params);
    }

    #[test]
    fn odd_characteristic_family() {
        let p: QuarticField = PrimeField::new(7).unwrap().into();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..20 {
            let params = FamilyParameters::random(p, &mut rng);
            let fam = build_family(p, &params).unwrap();
            assert_eq!(fam.model.poly().homogeneous_degree(), Some(4));
            let e = expected_nodes(p, &params).unwrap();
            assert!(e.verified_singular);
        }
    }

    #[test]
    fn random_members_are_quartic_forms() {
        let f = gf16();
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        for _ in 0..20 {
            let params = FamilyParameters::random(f, &mut rng);
            let fam = build_family(f, &params).unwrap();
            assert_eq!(fam.model.poly().homogeneous_degree(), Some(4));
        }
    }

    #[test]
    fn scan_respects_limit() {
        let f = QuarticField::gf2k(8).unwrap();
        let fam = build_family(f, &FamilyParameters::dwork(f, 1)).unwrap();
        assert!(matches!(singular_points_scan(&fam.model), Err(Error::BudgetExceeded(_))));
    }
}
