use std::fmt;
use std::ops::{Add, Mul};

use serde::Serialize;

use super::field::{parse_hex, BinaryField};
use crate::error::{Error, Result};

/// Polynomial in `t` over `GF(2^k)`; `coeffs[i]` is the coefficient of `t^i`,
/// never with a trailing zero.
///
/// Binary operations panic if the operands live over different fields.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolyGF2k {
    field: BinaryField,
    coeffs: Vec<u32>,
}

/// Where a vanishing order is measured.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Place {
    /// `t = α`.
    At(u32),
    /// `t = ∞`, for a polynomial regarded as a section of degree `nominal`:
    /// the order is `nominal - deg`. K3 discriminants use 24.
    Infinity(usize),
}

impl Place {
    pub const K3_INFINITY: Place = Place::Infinity(24);
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::At(a) => write!(f, "{a:#x}"),
            Place::Infinity(_) => f.write_str("inf"),
        }
    }
}

/// `inf` or a field element in hex (`0x3`).
impl std::str::FromStr for Place {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "inf" | "infinity" => Ok(Place::K3_INFINITY),
            other => parse_hex(other).map(Place::At),
        }
    }
}

impl Serialize for Place {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl PolyGF2k {
    pub fn new(field: BinaryField, coeffs: Vec<u32>) -> Result<Self> {
        for &c in &coeffs {
            field.check(c)?;
        }
        Ok(Self::from_raw(field, coeffs))
    }

    fn from_raw(field: BinaryField, mut coeffs: Vec<u32>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        PolyGF2k { field, coeffs }
    }

    pub fn zero(field: BinaryField) -> Self {
        PolyGF2k {
            field,
            coeffs: Vec::new(),
        }
    }

    pub fn constant(field: BinaryField, c: u32) -> Self {
        Self::from_raw(field, vec![c])
    }

    pub fn one(field: BinaryField) -> Self {
        Self::constant(field, 1)
    }

    /// `c · t^n`.
    pub fn monomial(field: BinaryField, c: u32, n: usize) -> Self {
        let mut v = vec![0; n + 1];
        v[n] = c;
        Self::from_raw(field, v)
    }

    /// `t + α`.
    pub fn linear(field: BinaryField, alpha: u32) -> Self {
        Self::from_raw(field, vec![alpha, 1])
    }

    /// Coefficients uniformly at random, degree at most `max_degree`.
    pub fn random<R: rand::Rng + ?Sized>(field: BinaryField, max_degree: usize, rng: &mut R) -> Self {
        let coeffs = (0..=max_degree).map(|_| field.random(rng)).collect();
        Self::from_raw(field, coeffs)
    }

    /// Parses hex strings such as `["0x1", "0x0", "0x3"]`.
    pub fn from_hex(field: BinaryField, coeffs: &[String]) -> Result<Self> {
        let v = coeffs.iter().map(|s| parse_hex(s)).collect::<Result<Vec<_>>>()?;
        Self::new(field, v)
    }

    pub fn to_hex(&self) -> Vec<String> {
        self.coeffs.iter().map(|c| format!("{c:#x}")).collect()
    }

    pub fn field(&self) -> BinaryField {
        self.field
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> u32 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> u32 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == 1
    }

    fn same_field(&self, other: &Self) {
        assert_eq!(self.field, other.field, "polynomials over different fields");
    }

    pub fn scale(&self, c: u32) -> Self {
        let f = self.field;
        Self::from_raw(f, self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    /// Multiplication by `t^n`.
    pub fn shl(&self, n: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut v = vec![0; n];
        v.extend_from_slice(&self.coeffs);
        Self::from_raw(self.field, v)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut r = Self::one(self.field);
        while e > 0 {
            if e & 1 == 1 {
                r = &r * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        r
    }

    /// Quotient and remainder.
    pub fn divmod(&self, d: &Self) -> Result<(Self, Self)> {
        self.same_field(d);
        let f = self.field;
        let Some(dd) = d.degree() else {
            return Err(Error::DivisionByZero);
        };
        let lead_inv = f.inv(d.leading())?;
        let mut rem = self.coeffs.clone();
        let mut quo = vec![0; self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd {
            let top = *rem.last().unwrap();
            let shift = rem.len() - 1 - dd;
            if top != 0 {
                let q = f.mul(top, lead_inv);
                quo[shift] = q;
                for (i, &c) in d.coeffs.iter().enumerate() {
                    rem[shift + i] ^= f.mul(q, c);
                }
            }
            rem.pop();
        }
        Ok((Self::from_raw(f, quo), Self::from_raw(f, rem)))
    }

    /// Exact division; errors if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Self) -> Result<Self> {
        let (q, r) = self.divmod(d)?;
        if !r.is_zero() {
            return Err(Error::domain("polynomial division is not exact"));
        }
        Ok(q)
    }

    pub fn divides(&self, f: &Self) -> Result<bool> {
        Ok(f.divmod(self)?.1.is_zero())
    }

    /// Monic gcd (zero if both are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        self.same_field(other);
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.divmod(&b).expect("nonzero divisor").1;
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            let inv = a.field.inv(a.leading()).expect("nonzero");
            a.scale(inv)
        }
    }

    /// Formal derivative; in characteristic 2 only odd-degree terms survive.
    pub fn derivative(&self) -> Self {
        let v = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| if i % 2 == 1 { c } else { 0 })
            .collect();
        Self::from_raw(self.field, v)
    }

    pub fn eval(&self, x: u32) -> u32 {
        let f = self.field;
        self.coeffs.iter().rev().fold(0, |acc, &c| f.mul(acc, x) ^ c)
    }

    /// `f(t + α)`.
    pub fn shift(&self, alpha: u32) -> Self {
        let lin = Self::linear(self.field, alpha);
        let mut r = Self::zero(self.field);
        for &c in self.coeffs.iter().rev() {
            r = &(&r * &lin) + &Self::constant(self.field, c);
        }
        r
    }

    /// `t^n f(1/t)`; errors if `n < deg f`.
    pub fn reversal(&self, n: usize) -> Result<Self> {
        match self.degree() {
            Some(d) if d > n => Err(Error::domain(format!(
                "degree {d} exceeds nominal degree {n}"
            ))),
            _ => {
                let mut v = vec![0; n + 1];
                for (i, &c) in self.coeffs.iter().enumerate() {
                    v[n - i] = c;
                }
                Ok(Self::from_raw(self.field, v))
            }
        }
    }

    /// Order of vanishing at `place`.
    pub fn vanishing_order(&self, place: Place) -> Result<usize> {
        let Some(d) = self.degree() else {
            return Err(Error::domain("the zero polynomial has no vanishing order"));
        };
        match place {
            Place::At(alpha) => {
                self.field.check(alpha)?;
                let s = self.shift(alpha);
                Ok(s.coeffs.iter().take_while(|&&c| c == 0).count())
            }
            Place::Infinity(n) => n.checked_sub(d).ok_or_else(|| {
                Error::domain(format!("degree {d} exceeds nominal degree {n}"))
            }),
        }
    }

    /// `Some(g)` with `g² = self` iff every odd coefficient vanishes.
    pub fn sqrt(&self) -> Option<Self> {
        if self.coeffs.iter().skip(1).step_by(2).any(|&c| c != 0) {
            return None;
        }
        let f = self.field;
        Some(Self::from_raw(
            f,
            self.coeffs.iter().step_by(2).map(|&c| f.sqrt(c)).collect(),
        ))
    }

    pub fn is_square(&self) -> bool {
        self.sqrt().is_some()
    }

    /// Roots lying in the base field, in increasing order.
    pub fn rational_roots(&self) -> Vec<u32> {
        if self.is_zero() {
            return self.field.elements().collect();
        }
        self.field.elements().filter(|&a| self.eval(a) == 0).collect()
    }
}

impl Add for &PolyGF2k {
    type Output = PolyGF2k;

    fn add(self, rhs: &PolyGF2k) -> PolyGF2k {
        self.same_field(rhs);
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let v = (0..n).map(|i| self.coeff(i) ^ rhs.coeff(i)).collect();
        PolyGF2k::from_raw(self.field, v)
    }
}

impl Mul for &PolyGF2k {
    type Output = PolyGF2k;

    fn mul(self, rhs: &PolyGF2k) -> PolyGF2k {
        self.same_field(rhs);
        if self.is_zero() || rhs.is_zero() {
            return PolyGF2k::zero(self.field);
        }
        let f = self.field;
        let mut v = vec![0; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                v[i + j] ^= f.mul(a, b);
            }
        }
        PolyGF2k::from_raw(f, v)
    }
}

impl Add for PolyGF2k {
    type Output = PolyGF2k;

    fn add(self, rhs: PolyGF2k) -> PolyGF2k {
        &self + &rhs
    }
}

impl Mul for PolyGF2k {
    type Output = PolyGF2k;

    fn mul(self, rhs: PolyGF2k) -> PolyGF2k {
        &self * &rhs
    }
}

impl fmt::Display for PolyGF2k {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            let coef = if c == 1 && i > 0 { String::new() } else { format!("{c:#x}") };
            match i {
                0 => write!(f, "{coef}")?,
                1 => write!(f, "{coef}t")?,
                _ => write!(f, "{coef}t^{i}")?,
            }
        }
        Ok(())
    }
}

/// Serialized as the list of hex coefficients; the field travels separately.
impl Serialize for PolyGF2k {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_hex().serialize(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn gf(k: u32) -> BinaryField {
        BinaryField::new(k).unwrap()
    }

    fn p(k: u32, c: &[u32]) -> PolyGF2k {
        PolyGF2k::new(gf(k), c.to_vec()).unwrap()
    }

    #[test]
    fn places_round_trip_through_strings() {
        for pl in [Place::At(0), Place::At(0x1f), Place::K3_INFINITY] {
            assert_eq!(pl.to_string().parse::<Place>().unwrap(), pl);
        }
        assert!("zz".parse::<Place>().is_err());
    }

    #[test]
    fn frobenius_on_polynomials() {
        let a = p(1, &[1, 1]);
        assert_eq!(&a * &a, p(1, &[1, 0, 1]));
    }

    #[test]
    fn gcd_and_derivative() {
        assert_eq!(p(1, &[0, 1, 1]).gcd(&p(1, &[0, 1])), p(1, &[0, 1]));
        assert_eq!(p(1, &[1, 0, 1, 1]).derivative(), p(1, &[0, 0, 1]));
        assert!(p(1, &[1]).divmod(&PolyGF2k::zero(gf(1))).is_err());
    }

    #[test]
    fn square_detection() {
        assert_eq!(p(1, &[1, 0, 1]).sqrt(), Some(p(1, &[1, 1])));
        assert_eq!(p(1, &[0, 0, 0, 1]).sqrt(), None);
        assert_eq!(PolyGF2k::zero(gf(3)).sqrt(), Some(PolyGF2k::zero(gf(3))));
    }

    #[test]
    fn orders_at_finite_places_and_infinity() {
        let f = p(1, &[0, 0, 1, 1]); // t²(t+1)
        assert_eq!(f.vanishing_order(Place::At(0)).unwrap(), 2);
        assert_eq!(f.vanishing_order(Place::At(1)).unwrap(), 1);
        assert_eq!(f.vanishing_order(Place::Infinity(3)).unwrap(), 0);
        assert_eq!(f.vanishing_order(Place::K3_INFINITY).unwrap(), 21);
        assert!(f.vanishing_order(Place::Infinity(2)).is_err());
        assert!(PolyGF2k::zero(gf(1)).vanishing_order(Place::At(0)).is_err());
    }

    #[test]
    fn shift_and_reversal() {
        let f = gf(4);
        let a = PolyGF2k::linear(f, 7).pow(3);
        assert_eq!(a.shift(7), PolyGF2k::monomial(f, 1, 3));
        assert_eq!(p(2, &[1, 2]).reversal(3).unwrap(), p(2, &[0, 0, 2, 1]));
    }

    #[test]
    fn hex_round_trip() {
        let a = p(8, &[0x1b, 0, 0xff]);
        let h = a.to_hex();
        assert_eq!(h, ["0x1b", "0x0", "0xff"]);
        assert_eq!(PolyGF2k::from_hex(gf(8), &h).unwrap(), a);
        assert!(PolyGF2k::from_hex(gf(4), &h).is_err());
    }

    fn arb_poly(k: u32, max_deg: usize) -> impl Strategy<Value = PolyGF2k> {
        prop::collection::vec(0u32..(1 << k), 0..=max_deg + 1)
            .prop_map(move |c| PolyGF2k::new(BinaryField::new(k).unwrap(), c).unwrap())
    }

    proptest! {
        #[test]
        fn squares_are_recognised(f in arb_poly(8, 12)) {
            let sq = &f * &f;
            prop_assert_eq!(sq.sqrt(), Some(f));
        }

        #[test]
        fn vanishing_order_is_additive(
            f in arb_poly(4, 8),
            g in arb_poly(4, 8),
            alpha in 0u32..16,
        ) {
            prop_assume!(!f.is_zero() && !g.is_zero());
            let at = Place::At(alpha);
            let fg = &f * &g;
            prop_assert_eq!(
                fg.vanishing_order(at).unwrap(),
                f.vanishing_order(at).unwrap() + g.vanishing_order(at).unwrap()
            );
        }

        #[test]
        fn division_identity(f in arb_poly(4, 10), g in arb_poly(4, 5)) {
            prop_assume!(!g.is_zero());
            let (q, r) = f.divmod(&g).unwrap();
            prop_assert_eq!(&(&q * &g) + &r, f);
            prop_assert!(r.degree() < g.degree());
        }

        #[test]
        fn degrees_add(f in arb_poly(5, 8), g in arb_poly(5, 8)) {
            prop_assume!(!f.is_zero() && !g.is_zero());
            prop_assert_eq!((&f * &g).degree(), Some(f.degree().unwrap() + g.degree().unwrap()));
        }
    }
}
