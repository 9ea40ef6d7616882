//! Weierstrass models `y² + a1·xy + a3·y = x³ + a2·x² + a4·x + a6` over
//! `GF(2^k)[t]`, their discriminant and the local checks at additive fibres.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::field::BinaryField;
use super::poly::{Place, PolyGF2k};
use crate::certificate::Status;
use crate::error::{Error, Result};
use crate::fiber::{fiber_table, FiberType};

/// The weights `i` of `a_i`.
pub const WEIGHTS: [usize; 5] = [1, 2, 3, 4, 6];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeierstrassModel {
    /// `[a1, a2, a3, a4, a6]`.
    coeffs: [PolyGF2k; 5],
}

impl WeierstrassModel {
    /// Checks the K3 degree bounds `deg a_i <= 2i`.
    pub fn new(a1: PolyGF2k, a2: PolyGF2k, a3: PolyGF2k, a4: PolyGF2k, a6: PolyGF2k) -> Result<Self> {
        let coeffs = [a1, a2, a3, a4, a6];
        let field = coeffs[0].field();
        for (a, w) in coeffs.iter().zip(WEIGHTS) {
            if a.field() != field {
                return Err(Error::Input("coefficients over different fields".into()));
            }
            if let Some(d) = a.degree() {
                if d > 2 * w {
                    return Err(Error::domain(format!(
                        "deg a{w} = {d} exceeds the bound {}",
                        2 * w
                    )));
                }
            }
        }
        Ok(WeierstrassModel { coeffs })
    }

    /// Uniformly random coefficients within the degree bounds.
    pub fn random<R: rand::Rng + ?Sized>(field: BinaryField, rng: &mut R) -> Self {
        let c = WEIGHTS.map(|w| PolyGF2k::random(field, 2 * w, rng));
        WeierstrassModel { coeffs: c }
    }

    /// `y² + t²xy + t·a3'·y = x³ + t·a2'·x² + t·a4'·x + t²·a6'`.
    pub fn from_normal_form(parts: &NormalFormParts) -> Result<Self> {
        let f = parts.a3.field();
        let t = PolyGF2k::monomial(f, 1, 1);
        let t2 = PolyGF2k::monomial(f, 1, 2);
        Self::new(
            t2.clone(),
            &t * &parts.a2,
            &t * &parts.a3,
            &t * &parts.a4,
            &t2 * &parts.a6,
        )
    }

    pub fn field(&self) -> BinaryField {
        self.coeffs[0].field()
    }

    pub fn a1(&self) -> &PolyGF2k {
        &self.coeffs[0]
    }
    pub fn a2(&self) -> &PolyGF2k {
        &self.coeffs[1]
    }
    pub fn a3(&self) -> &PolyGF2k {
        &self.coeffs[2]
    }
    pub fn a4(&self) -> &PolyGF2k {
        &self.coeffs[3]
    }
    pub fn a6(&self) -> &PolyGF2k {
        &self.coeffs[4]
    }

    /// `Δ = a3⁴ + a1³a3³ + a1⁴a4² + a1⁴a2a3² + a1⁵a3a4 + a1⁶a6`.
    pub fn discriminant(&self) -> PolyGF2k {
        let [a1, a2, a3, a4, a6] = &self.coeffs;
        let a1_3 = a1.pow(3);
        let a1_4 = &a1_3 * a1;
        let a1_5 = &a1_4 * a1;
        let a1_6 = &a1_5 * a1;
        let a3_2 = a3 * a3;
        let terms = [
            &a3_2 * &a3_2,
            &a1_3 * &a3.pow(3),
            &a1_4 * &(a4 * a4),
            &(&a1_4 * a2) * &a3_2,
            &(&a1_5 * a3) * a4,
            &a1_6 * a6,
        ];
        terms
            .iter()
            .fold(PolyGF2k::zero(self.field()), |acc, x| &acc + x)
    }

    /// `(b2, b4, b6, b8)` reduced mod 2.
    pub fn b_invariants(&self) -> [PolyGF2k; 4] {
        let [a1, a2, a3, a4, a6] = &self.coeffs;
        let b2 = a1 * a1;
        let b4 = a1 * a3;
        let b6 = a3 * a3;
        let b8 = [&b2 * a6, &(a1 * a3) * a4, &(a2 * a3) * a3, a4 * a4]
            .iter()
            .fold(PolyGF2k::zero(self.field()), |acc, x| &acc + x);
        [b2, b4, b6, b8]
    }

    /// The classical `-b2²b8 - 8b4³ - 27b6² + 9b2b4b6`, reduced mod 2.
    pub fn discriminant_from_b_invariants(&self) -> PolyGF2k {
        let [b2, b4, b6, b8] = self.b_invariants();
        let t1 = &(&b2 * &b2) * &b8;
        let t2 = &b6 * &b6;
        let t3 = &(&b2 * &b4) * &b6;
        &(&t1 + &t2) + &t3
    }

    /// The model with `place` moved to `t = 0`: `t -> t + α`, or at infinity
    /// `a_i -> t^{2i} a_i(1/t)`.
    pub fn localize(&self, place: Place) -> Result<Self> {
        let coeffs = match place {
            Place::At(alpha) => {
                self.field().check(alpha)?;
                self.coeffs.clone().map(|a| a.shift(alpha))
            }
            Place::Infinity(_) => {
                let mut out = self.coeffs.clone();
                for (a, w) in out.iter_mut().zip(WEIGHTS) {
                    *a = a.reversal(2 * w)?;
                }
                out
            }
        };
        Ok(WeierstrassModel { coeffs })
    }

    /// Vanishing order of `Δ`; at infinity the nominal degree is 24.
    pub fn discriminant_order(&self, place: Place) -> Result<usize> {
        let d = self.discriminant();
        if d.is_zero() {
            return Err(Error::domain("Δ vanishes identically (singular generic fibre)"));
        }
        match place {
            Place::At(_) => d.vanishing_order(place),
            Place::Infinity(_) => d.vanishing_order(Place::K3_INFINITY),
        }
    }

    /// Report for every field-rational zero of `Δ` and for infinity.
    pub fn place_reports(&self) -> Result<Vec<PlaceReport>> {
        let d = self.discriminant();
        if d.is_zero() {
            return Err(Error::domain("Δ vanishes identically (singular generic fibre)"));
        }
        let mut places: Vec<Place> = d.rational_roots().into_iter().map(Place::At).collect();
        places.push(Place::K3_INFINITY);
        places
            .into_iter()
            .map(|p| self.place_report(p))
            .collect()
    }

    pub fn place_report(&self, place: Place) -> Result<PlaceReport> {
        let v = self.discriminant_order(place)?;
        let local = self.localize(place)?;
        let classification = if v == 0 {
            PlaceClass::Smooth
        } else if local.a1().eval(0) != 0 {
            PlaceClass::Multiplicative(v as u32)
        } else {
            match classify_additive_normal_form(&local) {
                Ok(AdditiveType::III) => PlaceClass::III,
                Ok(AdditiveType::IV) => PlaceClass::IV,
                Ok(AdditiveType::Other) | Err(_) => PlaceClass::AdditiveOther,
            }
        };
        Ok(PlaceReport {
            place,
            v_delta: v,
            classification,
        })
    }
}

#[derive(Serialize, Deserialize)]
struct ModelJson {
    field: BinaryField,
    a1: Vec<String>,
    a2: Vec<String>,
    a3: Vec<String>,
    a4: Vec<String>,
    a6: Vec<String>,
}

impl Serialize for WeierstrassModel {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let [a1, a2, a3, a4, a6] = self.coeffs.clone().map(|a| a.to_hex());
        ModelJson {
            field: self.field(),
            a1,
            a2,
            a3,
            a4,
            a6,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for WeierstrassModel {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = ModelJson::deserialize(d)?;
        let parse = |c: &[String]| PolyGF2k::from_hex(j.field, c);
        let build = || -> Result<Self> {
            Self::new(
                parse(&j.a1)?,
                parse(&j.a2)?,
                parse(&j.a3)?,
                parse(&j.a4)?,
                parse(&j.a6)?,
            )
        };
        build().map_err(serde::de::Error::custom)
    }
}

/// Local type of the fibre at a place, as far as it is decided here.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PlaceClass {
    Smooth,
    /// `I_n`.
    Multiplicative(u32),
    III,
    IV,
    /// Additive, but not one of the two normal-form branches.
    AdditiveOther,
}

impl fmt::Display for PlaceClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PlaceClass::Smooth => f.write_str("smooth"),
            PlaceClass::Multiplicative(n) => write!(f, "I_{n}"),
            PlaceClass::III => f.write_str("III"),
            PlaceClass::IV => f.write_str("IV"),
            PlaceClass::AdditiveOther => f.write_str("additive-other"),
        }
    }
}

impl Serialize for PlaceClass {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PlaceReport {
    pub place: Place,
    pub v_delta: usize,
    pub classification: PlaceClass,
}

/// `a2', a3', a4', a6'` of the normal form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalFormParts {
    pub a2: PolyGF2k,
    pub a3: PolyGF2k,
    pub a4: PolyGF2k,
    pub a6: PolyGF2k,
}

impl NormalFormParts {
    /// Random parts within the degree bounds of the shape.
    pub fn random<R: rand::Rng + ?Sized>(field: BinaryField, rng: &mut R) -> Self {
        NormalFormParts {
            a2: PolyGF2k::random(field, 3, rng),
            a3: PolyGF2k::random(field, 5, rng),
            a4: PolyGF2k::random(field, 7, rng),
            a6: PolyGF2k::random(field, 10, rng),
        }
    }
}

/// Extracts the parts; errors unless `a1 = t²`, `t | a2, a3, a4`, `t² | a6`.
pub fn normal_form_parts(w: &WeierstrassModel) -> Result<NormalFormParts> {
    let f = w.field();
    let t = PolyGF2k::monomial(f, 1, 1);
    let t2 = PolyGF2k::monomial(f, 1, 2);
    if *w.a1() != t2 {
        return Err(Error::domain(format!("a1 = {} is not t^2", w.a1())));
    }
    let take = |a: &PolyGF2k, d: &PolyGF2k, name: &str| {
        a.div_exact(d)
            .map_err(|_| Error::domain(format!("{name} = {a} is not divisible by {d}")))
    };
    Ok(NormalFormParts {
        a2: take(w.a2(), &t, "a2")?,
        a3: take(w.a3(), &t, "a3")?,
        a4: take(w.a4(), &t, "a4")?,
        a6: take(w.a6(), &t2, "a6")?,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum AdditiveType {
    III,
    IV,
    /// Deeper in Tate's algorithm; not decided here.
    #[serde(rename = "other")]
    Other,
}

/// III iff `t ∤ a4'`; IV iff `t | a4'` and `t ∤ a3'`; otherwise other.
pub fn classify_additive_normal_form(w: &WeierstrassModel) -> Result<AdditiveType> {
    let p = normal_form_parts(w)?;
    Ok(if p.a4.eval(0) != 0 {
        AdditiveType::III
    } else if p.a3.eval(0) != 0 {
        AdditiveType::IV
    } else {
        AdditiveType::Other
    })
}

/// Independent check of the same branches through the `b`-invariants:
/// `v(b8) < 3` gives III, then `v(b6) < 3` gives IV.
pub fn classify_by_b_invariants(w: &WeierstrassModel) -> Result<AdditiveType> {
    normal_form_parts(w)?;
    let [_, _, b6, b8] = w.b_invariants();
    let low = |b: &PolyGF2k| !b.is_zero() && b.vanishing_order(Place::At(0)).unwrap_or(0) < 3;
    Ok(if low(&b8) {
        AdditiveType::III
    } else if low(&b6) {
        AdditiveType::IV
    } else {
        AdditiveType::Other
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct WildRamification {
    pub place: Place,
    pub asserted: FiberType,
    pub v_delta: usize,
    pub e_v: u32,
    /// `v(Δ) - e_v`; negative means the asserted type is impossible.
    pub delta: i64,
    /// `δ` meets the table's constraint for the asserted type.
    pub consistent: bool,
    pub exceeds_two: bool,
}

/// `δ = v(Δ) - e(F_v)` for an asserted fibre type.
pub fn wild_ramification_at(
    w: &WeierstrassModel,
    place: Place,
    asserted: FiberType,
) -> Result<WildRamification> {
    let rec = fiber_table(asserted)?;
    let v = w.discriminant_order(place)?;
    let delta = v as i64 - rec.e_v as i64;
    Ok(WildRamification {
        place,
        asserted,
        v_delta: v,
        e_v: rec.e_v,
        delta,
        consistent: delta >= 0 && rec.admits_delta(delta as u32),
        exceeds_two: delta > 2,
    })
}

/// `Δ = (t+α)^{n1} (t+β)^{n2} s²` of degree 24 and its `t²³` coefficient.
#[derive(Clone, Debug, Serialize)]
pub struct T23Certificate {
    #[serde(serialize_with = "hex")]
    pub alpha: u32,
    #[serde(serialize_with = "hex")]
    pub beta: u32,
    pub n1: u32,
    pub n2: u32,
    pub delta: PolyGF2k,
    #[serde(serialize_with = "hex")]
    pub coefficient_t23: u32,
    #[serde(serialize_with = "hex")]
    pub alpha_plus_beta: u32,
    pub status: Status,
}

fn hex<S: serde::Serializer>(v: &u32, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(&format_args!("{v:#x}"))
}

/// `square_root` is the monic `s`; the degrees must add up to 24.
pub fn t23_argument(
    alpha: u32,
    beta: u32,
    n1: u32,
    n2: u32,
    square_root: &PolyGF2k,
) -> Result<T23Certificate> {
    let f = square_root.field();
    f.check(alpha)?;
    f.check(beta)?;
    if alpha == beta {
        return Err(Error::domain("α = β"));
    }
    if n1.is_multiple_of(2) || n2.is_multiple_of(2) {
        return Err(Error::domain("n1 and n2 must be odd"));
    }
    if !square_root.is_monic() {
        return Err(Error::domain("square part must be monic"));
    }
    let ds = square_root.degree().unwrap_or(0) as u32;
    if n1 + n2 + 2 * ds != 24 {
        return Err(Error::Dimension(format!(
            "{n1} + {n2} + 2·{ds} != 24"
        )));
    }
    let delta = &(&PolyGF2k::linear(f, alpha).pow(n1) * &PolyGF2k::linear(f, beta).pow(n2))
        * &(square_root * square_root);
    let c = delta.coeff(23);
    let sum = alpha ^ beta;
    Ok(T23Certificate {
        alpha,
        beta,
        n1,
        n2,
        coefficient_t23: c,
        alpha_plus_beta: sum,
        status: Status::from_bool(delta.degree() == Some(24) && c == sum && c != 0),
        delta,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn gf(k: u32) -> BinaryField {
        BinaryField::new(k).unwrap()
    }

    fn p(f: BinaryField, c: &[u32]) -> PolyGF2k {
        PolyGF2k::new(f, c.to_vec()).unwrap()
    }

    fn model(f: BinaryField, a: [&[u32]; 5]) -> WeierstrassModel {
        WeierstrassModel::new(p(f, a[0]), p(f, a[1]), p(f, a[2]), p(f, a[3]), p(f, a[4])).unwrap()
    }

    /// Dense integer polynomials in five variables `a1, a2, a3, a4, a6`,
    /// keyed by exponent vectors.
    mod zpoly {
        use std::collections::BTreeMap;

        pub type P = BTreeMap<[u32; 5], i64>;

        pub fn var(i: usize) -> P {
            let mut e = [0; 5];
            e[i] = 1;
            P::from([(e, 1)])
        }

        pub fn add(a: &P, b: &P, s: i64) -> P {
            let mut r = a.clone();
            for (k, v) in b {
                *r.entry(*k).or_insert(0) += s * v;
            }
            r.retain(|_, v| *v != 0);
            r
        }

        pub fn mul(a: &P, b: &P) -> P {
            let mut r = P::new();
            for (ka, va) in a {
                for (kb, vb) in b {
                    let k = std::array::from_fn(|i| ka[i] + kb[i]);
                    *r.entry(k).or_insert(0) += va * vb;
                }
            }
            r.retain(|_, v| *v != 0);
            r
        }

        pub fn scale(a: &P, c: i64) -> P {
            a.iter().map(|(k, v)| (*k, v * c)).collect()
        }
    }

    #[test]
    fn integer_discriminant_reduces_to_the_char2_formula() {
        use zpoly::*;
        let [a1, a2, a3, a4, a6] = std::array::from_fn(var);
        let b2 = add(&mul(&a1, &a1), &scale(&a2, 4), 1);
        let b4 = add(&mul(&a1, &a3), &scale(&a4, 2), 1);
        let b6 = add(&mul(&a3, &a3), &scale(&a6, 4), 1);
        let b8 = [
            mul(&mul(&a1, &a1), &a6),
            scale(&mul(&a2, &a6), 4),
            scale(&mul(&mul(&a1, &a3), &a4), -1),
            mul(&mul(&a2, &a3), &a3),
            scale(&mul(&a4, &a4), -1),
        ]
        .iter()
        .fold(P::new(), |acc, x| add(&acc, x, 1));
        let disc = [
            scale(&mul(&mul(&b2, &b2), &b8), -1),
            scale(&mul(&mul(&b4, &b4), &b4), -8),
            scale(&mul(&b6, &b6), -27),
            scale(&mul(&mul(&b2, &b4), &b6), 9),
        ]
        .iter()
        .fold(P::new(), |acc, x| add(&acc, x, 1));
        let mut odd: Vec<[u32; 5]> =
            disc.iter().filter(|(_, v)| v.rem_euclid(2) == 1).map(|(k, _)| *k).collect();
        odd.sort();
        let mut expected = vec![
            [0, 0, 4, 0, 0],
            [3, 0, 3, 0, 0],
            [4, 0, 0, 2, 0],
            [4, 1, 2, 0, 0],
            [5, 0, 1, 1, 0],
            [6, 0, 0, 0, 1],
        ];
        expected.sort();
        assert_eq!(odd, expected);
    }

    #[test]
    fn formula_matches_b_invariants_on_random_models() {
        let f = gf(8);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let w = WeierstrassModel::random(f, &mut rng);
            assert_eq!(w.discriminant(), w.discriminant_from_b_invariants());
        }
    }

    #[test]
    fn only_a3_gives_one() {
        let f = gf(1);
        let w = model(f, [&[], &[], &[1], &[], &[]]);
        assert_eq!(w.discriminant(), PolyGF2k::one(f));
    }

    #[test]
    fn degree_bounds_enforced() {
        let f = gf(1);
        let t3 = PolyGF2k::monomial(f, 1, 3);
        let z = PolyGF2k::zero(f);
        assert!(WeierstrassModel::new(t3, z.clone(), z.clone(), z.clone(), z).is_err());
    }

    #[test]
    fn normal_form_expansion() {
        let f = gf(4);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let parts = NormalFormParts::random(f, &mut rng);
            let w = WeierstrassModel::from_normal_form(&parts).unwrap();
            let t = |n| PolyGF2k::monomial(f, 1, n);
            let (a2, a3, a4, a6) = (&parts.a2, &parts.a3, &parts.a4, &parts.a6);
            let inner = [
                a3.pow(4),
                &t(5) * &a3.pow(3),
                &t(6) * &(a4 * a4),
                &(&t(7) * a2) * &(a3 * a3),
                &(&t(8) * a3) * a4,
                &t(10) * a6,
            ]
            .iter()
            .fold(PolyGF2k::zero(f), |acc, x| &acc + x);
            assert_eq!(w.discriminant(), &t(4) * &inner);
        }
    }

    #[test]
    fn classifier_branches() {
        let f = gf(2);
        let parts = |a3: &[u32], a4: &[u32]| NormalFormParts {
            a2: PolyGF2k::zero(f),
            a3: p(f, a3),
            a4: p(f, a4),
            a6: PolyGF2k::zero(f),
        };
        let cls = |a3: &[u32], a4: &[u32]| {
            let w = WeierstrassModel::from_normal_form(&parts(a3, a4)).unwrap();
            (
                classify_additive_normal_form(&w).unwrap(),
                classify_by_b_invariants(&w).unwrap(),
            )
        };
        assert_eq!(cls(&[], &[1]), (AdditiveType::III, AdditiveType::III));
        assert_eq!(cls(&[1], &[0, 1]), (AdditiveType::IV, AdditiveType::IV));
        assert_eq!(cls(&[0, 1], &[0, 1]), (AdditiveType::Other, AdditiveType::Other));
        let bad = model(f, [&[0, 1], &[], &[], &[], &[]]);
        assert!(matches!(classify_additive_normal_form(&bad), Err(Error::Domain(_))));
    }

    #[test]
    fn random_shapes_agree_with_tate_steps() {
        let f = gf(4);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..200 {
            let parts = NormalFormParts::random(f, &mut rng);
            let w = WeierstrassModel::from_normal_form(&parts).unwrap();
            assert_eq!(
                classify_additive_normal_form(&w).unwrap(),
                classify_by_b_invariants(&w).unwrap()
            );
        }
    }

    #[test]
    fn type_iii_and_iv_have_order_four() {
        let f = gf(2);
        let iii = WeierstrassModel::from_normal_form(&NormalFormParts {
            a2: PolyGF2k::zero(f),
            a3: p(f, &[1]),
            a4: p(f, &[1]),
            a6: PolyGF2k::zero(f),
        })
        .unwrap();
        let r = wild_ramification_at(&iii, Place::At(0), FiberType::III).unwrap();
        assert_eq!((r.v_delta, r.delta, r.consistent), (4, 1, true));
        let iv = WeierstrassModel::from_normal_form(&NormalFormParts {
            a2: PolyGF2k::zero(f),
            a3: p(f, &[1]),
            a4: p(f, &[0, 1]),
            a6: PolyGF2k::zero(f),
        })
        .unwrap();
        let r = wild_ramification_at(&iv, Place::At(0), FiberType::IV).unwrap();
        assert_eq!((r.v_delta, r.delta, r.consistent), (4, 0, true));
        // Claiming I_6 at a place of order 4 is inconsistent.
        let r = wild_ramification_at(&iv, Place::At(0), FiberType::I(6)).unwrap();
        assert!(!r.consistent);
        assert_eq!(r.delta, -2);
    }

    #[test]
    fn divisible_a3_forces_large_delta() {
        let f = gf(2);
        // a3' = 0 and a6' a square: Δ = t^10 a4'^2 + t^14 a6' is a square.
        let w = WeierstrassModel::from_normal_form(&NormalFormParts {
            a2: p(f, &[1]),
            a3: PolyGF2k::zero(f),
            a4: p(f, &[1, 1]),
            a6: p(f, &[1, 0, 1]),
        })
        .unwrap();
        assert_eq!(classify_additive_normal_form(&w).unwrap(), AdditiveType::III);
        assert!(w.discriminant().is_square());
        let r = wild_ramification_at(&w, Place::At(0), FiberType::III).unwrap();
        assert!(r.exceeds_two);
    }

    #[test]
    fn multiplicative_place() {
        // a1 = 1, a3 = 0, a4 = 0, a6 = t^6 + ...: Δ = a6, an I_6 at 0.
        let f = gf(2);
        let w = model(f, [&[1], &[], &[], &[], &[0, 0, 0, 0, 0, 0, 1, 1]]);
        let r = w.place_report(Place::At(0)).unwrap();
        assert_eq!(r.classification, PlaceClass::Multiplicative(6));
        let total: usize = w.place_reports().unwrap().iter().map(|r| r.v_delta).sum();
        assert!(total <= 24);
    }

    #[test]
    fn t23_examples() {
        let f = gf(4);
        let s = PolyGF2k::linear(f, 2).pow(11);
        let c = t23_argument(0, 1, 1, 1, &s).unwrap();
        assert_eq!(c.coefficient_t23, 1);
        assert_eq!(c.status, Status::Verified);
        assert!(t23_argument(3, 3, 1, 1, &s).is_err());
        assert!(matches!(t23_argument(0, 1, 3, 1, &s), Err(Error::Dimension(_))));
        assert!(t23_argument(0, 1, 2, 2, &s).is_err());
    }

    #[test]
    fn json_round_trip() {
        let f = gf(8);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let w = WeierstrassModel::random(f, &mut rng);
        let s = serde_json::to_string(&w).unwrap();
        assert!(s.starts_with(r#"{"field":{"k":8,"modulus":"0x11b"},"a1":["#));
        assert_eq!(serde_json::from_str::<WeierstrassModel>(&s).unwrap(), w);
    }
}
