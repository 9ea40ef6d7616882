//! Plane sections in characteristic 2: double conics, double lines and the
//! nodes they reveal.
//!
//! Writing `F = G(u) + z·g(u) + z²(…)` with `z` the plane's equation, the
//! section is `G`. If `G = h²` the nodes on the plane are `{h = g = 0}`; if
//! `G = y²·q` they are `{y = g = 0}`.

use serde::Serialize;

use super::family::{projective_points, LinearForm, ProjectivePoint, QuarticSurfaceModel};
use super::field::QuarticField;
use super::poly::MPoly;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PlaneStatus {
    Reduced,
    DoubleConic,
    ContainsDoubleLine,
}

#[derive(Clone, Debug, Serialize)]
pub struct PlaneSectionReport {
    /// Normalized (first nonzero coefficient 1).
    pub plane: LinearForm,
    /// `x = u0·b0 + u1·b1 + u2·b2` on the plane.
    pub basis: [LinearForm; 3],
    /// The ternary quartic `G(u0, u1, u2)`.
    pub section: MPoly,
    pub status: PlaneStatus,
    /// Rational double lines, in plane coordinates.
    pub double_lines: Vec<[u32; 3]>,
    /// Rational nodes on the plane, sorted.
    pub node_locus: Vec<ProjectivePoint>,
}

fn normalize(field: QuarticField, v: &[u32]) -> Result<Vec<u32>> {
    let Some(&lead) = v.iter().find(|&&c| c != 0) else {
        return Err(Error::domain("zero vector"));
    };
    let inv = field.inv(lead)?;
    Ok(v.iter().map(|&c| field.mul(c, inv)).collect())
}

/// Section by `plane`, in the coordinates given by a kernel basis.
pub fn plane_section(x: &QuarticSurfaceModel, plane: &LinearForm) -> Result<PlaneSectionReport> {
    let field = x.field();
    let ker = field.kernel(&[plane.to_vec()], 4);
    if ker.len() != 3 {
        return Err(Error::domain("the zero form is not a plane"));
    }
    let basis = std::array::from_fn(|i| std::array::from_fn(|k| ker[i][k]));
    plane_section_with_basis(x, plane, &basis)
}

/// Section by `plane` in the coordinates `x = Σ u_j·basis[j]`.
pub fn plane_section_with_basis(
    x: &QuarticSurfaceModel,
    plane: &LinearForm,
    basis: &[LinearForm; 3],
) -> Result<PlaneSectionReport> {
    let field = x.field();
    if field.binary().is_none() {
        return Err(Error::domain("plane sections are implemented in characteristic 2 only"));
    }
    let plane_n: Vec<u32> = normalize(field, plane)?;
    let rows: Vec<Vec<u32>> = basis.iter().map(|b| b.to_vec()).collect();
    if field.rank(&rows) != 3 || basis.iter().any(|b| field.dot(plane, b) != 0) {
        return Err(Error::Input("basis does not span the plane".into()));
    }
    // A point off the plane: z = plane(x) becomes the fourth coordinate.
    let lead = plane.iter().position(|&c| c != 0).expect("nonzero plane");
    let mut off = [0u32; 4];
    off[lead] = field.inv(plane[lead])?;
    let images: Vec<Vec<u32>> = (0..4)
        .map(|k| vec![basis[0][k], basis[1][k], basis[2][k], off[k]])
        .collect();
    let sub = x.poly().substitute(&images);
    let g_section = sub.coefficient_in(3, 0);
    let g_linear = sub.coefficient_in(3, 1);
    if g_section.is_zero() {
        return Err(Error::domain("the plane is contained in the surface"));
    }

    let plane_pts = projective_points(field, 3);
    let to_p3 = |u: &[u32]| -> ProjectivePoint {
        let v: Vec<u32> = (0..4)
            .map(|k| (0..3).fold(0, |acc, j| field.add(acc, field.mul(u[j], basis[j][k]))))
            .collect();
        ProjectivePoint::new(field, &v).expect("basis is independent")
    };

    let (status, double_lines, mut nodes) = if let Some(h) = g_section.sqrt_char2() {
        let status = if conic_is_singular(&h) {
            PlaneStatus::ContainsDoubleLine
        } else {
            PlaneStatus::DoubleConic
        };
        let lines = rational_line_factors(field, &plane_pts, &h, 1);
        let nodes: Vec<ProjectivePoint> = plane_pts
            .iter()
            .filter(|u| h.eval(u) == 0 && g_linear.eval(u) == 0)
            .map(|u| to_p3(u))
            .collect();
        (status, lines, nodes)
    } else {
        // A double line not defined over the field would come with its
        // conjugate and force G to be a square, so rational lines suffice.
        let lines = rational_line_factors(field, &plane_pts, &g_section, 2);
        let nodes: Vec<ProjectivePoint> = plane_pts
            .iter()
            .filter(|u| {
                g_linear.eval(u) == 0 && lines.iter().any(|l| field.dot(l, u) == 0)
            })
            .map(|u| to_p3(u))
            .collect();
        let status = if lines.is_empty() {
            PlaneStatus::Reduced
        } else {
            PlaneStatus::ContainsDoubleLine
        };
        (status, lines, nodes)
    };
    nodes.sort();
    nodes.dedup();
    Ok(PlaneSectionReport {
        plane: std::array::from_fn(|i| plane_n[i]),
        basis: *basis,
        section: g_section,
        status,
        double_lines,
        node_locus: nodes,
    })
}

/// A ternary quadric in characteristic 2 is singular iff it vanishes at the
/// common zero `(a12, a02, a01)` of its partials (or is a square).
fn conic_is_singular(h: &MPoly) -> bool {
    let a01 = h.coeff(&[1, 1, 0, 0]);
    let a02 = h.coeff(&[1, 0, 1, 0]);
    let a12 = h.coeff(&[0, 1, 1, 0]);
    let p = [a12, a02, a01];
    p == [0, 0, 0] || h.eval(&p) == 0
}

/// Rational lines `ℓ` (plane coordinates) with `ℓ^power | f`.
fn rational_line_factors(
    field: QuarticField,
    plane_pts: &[Vec<u32>],
    f: &MPoly,
    power: u8,
) -> Vec<[u32; 3]> {
    let zeros: Vec<&Vec<u32>> = plane_pts.iter().filter(|u| f.eval(u) == 0).collect();
    let mut out = Vec::new();
    for l in plane_pts {
        // ℓ | f forces f to vanish at every rational point of ℓ.
        let on_line = plane_pts.iter().filter(|u| field.dot(l, u) == 0).count();
        let zero_on_line = zeros.iter().filter(|u| field.dot(l, u) == 0).count();
        if on_line != zero_on_line {
            continue;
        }
        // Coordinates (s, t, e) with ℓ = e: f must lie in (e^power).
        let ker = field.kernel(std::slice::from_ref(l), 3);
        let lead = l.iter().position(|&c| c != 0).expect("nonzero");
        let mut w = [0u32; 3];
        w[lead] = field.inv(l[lead]).expect("nonzero");
        let images: Vec<Vec<u32>> = (0..3).map(|k| vec![ker[0][k], ker[1][k], w[k]]).collect();
        let sub = f.substitute(&images);
        if (0..power).all(|k| sub.coefficient_in(2, k).is_zero()) {
            out.push([l[0], l[1], l[2]]);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quartic::family::{build_family, rational_twelve_node_family};
    use proptest::prelude::*;

    fn gf16() -> QuarticField {
        QuarticField::gf2k(4).unwrap()
    }

    #[test]
    fn coordinate_planes_of_a_family_member_are_double_conics() {
        let f = gf16();
        let s = rational_twelve_node_family(f, 7, 10_000).unwrap();
        let nodes = s.expected.rational_points();
        for (i, l) in s.family.params.l.iter().enumerate() {
            let r = plane_section(&s.family.model, l).unwrap();
            assert_eq!(r.status, PlaneStatus::DoubleConic, "plane {i}");
            assert_eq!(r.node_locus.len(), 6);
            // The nodes on l_i = 0 are those of the pairs containing i.
            let mut mine: Vec<ProjectivePoint> = s
                .expected
                .nodes
                .iter()
                .filter(|n| n.pair.contains(&i))
                .filter_map(|n| n.point)
                .collect();
            mine.sort();
            assert_eq!(r.node_locus, mine);
            assert!(r.node_locus.iter().all(|p| nodes.contains(p)));
        }
    }

    #[test]
    fn generic_plane_is_reduced() {
        let f = gf16();
        let s = rational_twelve_node_family(f, 7, 10_000).unwrap();
        let r = plane_section(&s.family.model, &[1, 2, 3, 4]).unwrap();
        assert_eq!(r.status, PlaneStatus::Reduced);
        assert!(r.node_locus.is_empty());
    }

    /// `F = x2²·q + x3·g` with the double line `x2 = x3 = 0`.
    fn double_line_example() -> QuarticSurfaceModel {
        let f = gf16();
        let v = |i| MPoly::var(f, i);
        let q = v(0).mul(&v(1)).add(&v(0).mul(&v(0))).add(&v(2).mul(&v(3)));
        // g restricted to the line is x0·x1·(x0 + x1).
        let g = v(0)
            .mul(&v(1))
            .mul(&v(0).add(&v(1)))
            .add(&v(2).pow(3))
            .add(&v(3).pow(3));
        let poly = v(2).mul(&v(2)).mul(&q).add(&v(3).mul(&g));
        QuarticSurfaceModel::new(poly).unwrap()
    }

    #[test]
    fn double_line_with_three_nodes() {
        let x = double_line_example();
        let r = plane_section(&x, &[0, 0, 0, 1]).unwrap();
        assert_eq!(r.status, PlaneStatus::ContainsDoubleLine);
        assert_eq!(r.double_lines.len(), 1);
        assert_eq!(
            r.node_locus,
            vec![
                ProjectivePoint([0, 1, 0, 0]),
                ProjectivePoint([1, 0, 0, 0]),
                ProjectivePoint([1, 1, 0, 0]),
            ]
        );
        assert!(r.node_locus.iter().all(|p| x.is_singular_at(p.coords())));
    }

    #[test]
    fn two_double_lines() {
        // x0·x1·x2·x3 + (x0·x1)² on the plane x3 = 0 is (x0·x1)².
        let f = gf16();
        let params = crate::quartic::family::FamilyParameters {
            l: std::array::from_fn(|i| std::array::from_fn(|j| (i == j) as u32)),
            q: [0, 1, 0, 0, 0, 0, 0, 0, 0, 0],
        };
        let fam = build_family(f, &params).unwrap();
        let r = plane_section(&fam.model, &[0, 0, 0, 1]).unwrap();
        assert_eq!(r.status, PlaneStatus::ContainsDoubleLine);
        assert_eq!(r.double_lines.len(), 2);
    }

    #[test]
    fn rejects_odd_characteristic_and_contained_planes() {
        let p: QuarticField = crate::quartic::field::PrimeField::new(3).unwrap().into();
        let fam = build_family(p, &crate::quartic::family::FamilyParameters::dwork(p, 1)).unwrap();
        assert!(plane_section(&fam.model, &[1, 0, 0, 0]).is_err());
        let f = gf16();
        let x = QuarticSurfaceModel::new(MPoly::from_terms(f, [([1, 1, 1, 1], 1)])).unwrap();
        assert!(plane_section(&x, &[1, 0, 0, 0]).is_err());
    }

    fn invertible(f: QuarticField, m: &[[u32; 3]; 3]) -> bool {
        f.rank(&m.iter().map(|r| r.to_vec()).collect::<Vec<_>>()) == 3
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn status_is_independent_of_plane_coordinates(
            which in 0usize..6,
            m in prop::array::uniform3(prop::array::uniform3(0u32..16)),
        ) {
            let f = gf16();
            prop_assume!(invertible(f, &m));
            let s = rational_twelve_node_family(f, 7, 10_000).unwrap();
            let (x, plane) = match which {
                0..=3 => (s.family.model.clone(), s.family.params.l[which]),
                4 => (s.family.model.clone(), [1, 2, 3, 4]),
                _ => (double_line_example(), [0, 0, 0, 1]),
            };
            let base = plane_section(&x, &plane).unwrap();
            let new_basis: [LinearForm; 3] = std::array::from_fn(|i| {
                std::array::from_fn(|k| {
                    (0..3).fold(0, |acc, j| f.add(acc, f.mul(m[i][j], base.basis[j][k])))
                })
            });
            let other = plane_section_with_basis(&x, &plane, &new_basis).unwrap();
            prop_assert_eq!(base.status, other.status);
            prop_assert_eq!(base.node_locus, other.node_locus);
            prop_assert_eq!(base.double_lines.len(), other.double_lines.len());
        }
    }
}
