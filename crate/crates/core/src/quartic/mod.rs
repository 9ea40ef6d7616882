//! Quartic surfaces `l1·l2·l3·l4 + q² = 0` with twelve nodes: singular
//! points, non-reduced plane sections and node/plane incidences.

mod census;
mod dwork;
mod family;
mod field;
mod plane;
mod poly;

use serde::Serialize;

pub use census::{collinear_triples, incidence_census, IncidenceCensus, SharedNodes};
pub use dwork::{dwork_twisted_cubic_check, DworkCertificate};
pub use family::{
    build_family, expected_nodes, line_points, projective_points, rational_twelve_node_family,
    singular_points_scan, ExpectedNode, ExpectedNodes, Family, FamilyParameters, LinearForm,
    ProjectivePoint, QuarticSurfaceModel, ScanReport, SeededFamily, Q_MONOMIALS, SCAN_LIMIT,
};
pub use field::{PrimeField, QuarticField};
pub use plane::{plane_section, plane_section_with_basis, PlaneSectionReport, PlaneStatus};
pub use poly::{Exponent, MPoly};

use crate::certificate::Status;
use crate::error::Result;

/// Draws allowed when searching for a fully rational member.
pub const MAX_SEED_ATTEMPTS: u32 = 100_000;

/// Full certificate for one seeded family member.
#[derive(Clone, Debug, Serialize)]
pub struct FamilyCertificate {
    pub seed: u64,
    pub attempts: u32,
    pub field: QuarticField,
    pub params: FamilyParameters,
    pub nodes: Vec<ProjectivePoint>,
    pub scan_matches_expected: bool,
    pub coordinate_planes_double_conics: bool,
    pub nonreduced_planes: Vec<PlaneSectionReport>,
    pub census: IncidenceCensus,
    pub status: Status,
}

/// Seeded member over `GF(2^k)`: expected nodes, full scan, plane sections
/// by `l_i = 0` and the incidence census.
pub fn certify_family(k: u32, seed: u64) -> Result<FamilyCertificate> {
    let field = QuarticField::gf2k(k)?;
    let s = rational_twelve_node_family(field, seed, MAX_SEED_ATTEMPTS)?;
    let model = &s.family.model;
    let scan = singular_points_scan(model)?;
    let expected = s.expected.rational_points();
    let scan_matches = !scan.non_isolated && scan.singular_points == expected;
    let coord: Vec<PlaneSectionReport> = s
        .family
        .params
        .l
        .iter()
        .map(|l| plane_section(model, l))
        .collect::<Result<_>>()?;
    let coord_ok = coord
        .iter()
        .all(|r| r.status == PlaneStatus::DoubleConic && r.node_locus.len() == 6);
    let census = incidence_census(model, &scan, &s.family.params.l)?;
    let family_shape = census.nonreduced_planes.len() == 4
        && census.planes_per_node.iter().all(|&n| n == 2);
    let status = Status::from_bool(
        s.expected.verified_singular && scan_matches && coord_ok && family_shape,
    )
    .and(census.status);
    Ok(FamilyCertificate {
        seed,
        attempts: s.attempts,
        field,
        params: s.family.params.clone(),
        nodes: scan.singular_points.clone(),
        scan_matches_expected: scan_matches,
        coordinate_planes_double_conics: coord_ok,
        nonreduced_planes: census.nonreduced_planes.clone(),
        census,
        status,
    })
}
