//! The twisted cubic `t ↦ (−t³, 1−t, t, (t−1)³)` on the Dwork-type member
//! `x1·x2·x3·x4 + λ·σ1⁴`, over ℚ and in characteristic 2.

use num_rational::Ratio;
use serde::Serialize;

use crate::certificate::Status;
use crate::char2::{BinaryField, PolyGF2k};

type Q = Ratio<i128>;

/// Dense univariate polynomial over ℚ, lowest degree first.
fn qmul(a: &[Q], b: &[Q]) -> Vec<Q> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut r = vec![Q::from_integer(0); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            r[i + j] += x * y;
        }
    }
    trim(r)
}

fn qadd(a: &[Q], b: &[Q]) -> Vec<Q> {
    let n = a.len().max(b.len());
    let z = Q::from_integer(0);
    trim((0..n).map(|i| *a.get(i).unwrap_or(&z) + *b.get(i).unwrap_or(&z)).collect())
}

fn trim(mut v: Vec<Q>) -> Vec<Q> {
    while v.last().is_some_and(|c| *c == Q::from_integer(0)) {
        v.pop();
    }
    v
}

fn qpoly(c: &[i128]) -> Vec<Q> {
    trim(c.iter().map(|&x| Q::from_integer(x)).collect())
}

fn qpow(a: &[Q], n: u32) -> Vec<Q> {
    (0..n).fold(qpoly(&[1]), |acc, _| qmul(&acc, a))
}

/// The rational parametrization, coordinates as polynomials in `t`.
fn rational_curve() -> [Vec<Q>; 4] {
    let tm1 = qpoly(&[-1, 1]);
    [qpoly(&[0, 0, 0, -1]), qpoly(&[1, -1]), qpoly(&[0, 1]), qpow(&tm1, 3)]
}

/// `x1·x2·x3·x4 + coeff·σ1⁴` along the curve.
fn rational_residue(coeff: Q) -> Vec<Q> {
    let x = rational_curve();
    let prod = x.iter().fold(qpoly(&[1]), |acc, xi| qmul(&acc, xi));
    let sigma = x.iter().fold(Vec::new(), |acc, xi| qadd(&acc, xi));
    let s4: Vec<Q> = qpow(&sigma, 4).into_iter().map(|c| c * coeff).collect();
    qadd(&prod, &s4)
}

fn show(p: &[Q]) -> String {
    if p.is_empty() {
        return "0".into();
    }
    p.iter()
        .enumerate()
        .rev()
        .filter(|(_, c)| **c != Q::from_integer(0))
        .map(|(i, c)| format!("({c})t^{i}"))
        .collect::<Vec<_>>()
        .join(" + ")
}

/// Reduction of a rational with odd denominator into GF(2).
fn mod2(q: Q) -> Option<u32> {
    (q.denom().rem_euclid(2) == 1).then(|| q.numer().rem_euclid(2) as u32)
}

#[derive(Clone, Debug, Serialize)]
pub struct DworkCertificate {
    pub lambda: String,
    /// `x1x2x3x4 + λσ1⁴` along the curve at `λ = −1/81`.
    pub rational_residue: String,
    pub rational_zero: bool,
    pub control_lambda: String,
    pub control_residue: String,
    pub control_nonzero: bool,
    /// Informational: the reading with `λ²σ1⁴` does not vanish over ℚ.
    pub squared_reading_zero: bool,
    /// `λ` and `λ²` both reduce to 1 in GF(2).
    pub lambda_mod2: Option<u32>,
    pub lambda_squared_mod2: Option<u32>,
    /// `x1x2x3x4 + σ1⁴` along `(t³, 1+t, t, (t+1)³)` over GF(2).
    pub char2_residue: Vec<String>,
    pub char2_zero: bool,
    pub status: Status,
}

pub fn dwork_twisted_cubic_check() -> DworkCertificate {
    let lambda = Q::new(-1, 81);
    let control = Q::new(-1, 80);
    let res = rational_residue(lambda);
    let ctl = rational_residue(control);
    let squared = rational_residue(lambda * lambda);

    let f = BinaryField::new(1).expect("GF(2)");
    let lin = |a: u32| PolyGF2k::linear(f, a);
    let t = PolyGF2k::monomial(f, 1, 1);
    let x = [t.pow(3), lin(1), t.clone(), lin(1).pow(3)];
    let prod = x.iter().fold(PolyGF2k::one(f), |acc, xi| &acc * xi);
    let sigma = x.iter().fold(PolyGF2k::zero(f), |acc, xi| &acc + xi);
    let char2 = &prod + &sigma.pow(4);

    let lm = mod2(lambda);
    let lsm = mod2(lambda * lambda);
    let ok = res.is_empty() && !ctl.is_empty() && char2.is_zero() && lm == Some(1) && lsm == Some(1);
    DworkCertificate {
        lambda: lambda.to_string(),
        rational_residue: show(&res),
        rational_zero: res.is_empty(),
        control_lambda: control.to_string(),
        control_residue: show(&ctl),
        control_nonzero: !ctl.is_empty(),
        squared_reading_zero: squared.is_empty(),
        lambda_mod2: lm,
        lambda_squared_mod2: lsm,
        char2_residue: char2.to_hex(),
        char2_zero: char2.is_zero(),
        status: Status::from_bool(ok),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn curve_lies_on_the_member() {
        let c = dwork_twisted_cubic_check();
        assert!(c.rational_zero);
        assert!(c.char2_zero);
        assert!(c.control_nonzero);
        assert!(!c.squared_reading_zero);
        assert_eq!(c.status, Status::Verified);
    }

    #[test]
    fn hand_expansion() {
        // x1x2x3x4 = t⁴(t−1)⁴ and σ1 = 3t(1−t).
        let x = rational_curve();
        let prod = x.iter().fold(qpoly(&[1]), |acc, xi| qmul(&acc, xi));
        assert_eq!(prod, qmul(&qpoly(&[0, 0, 0, 0, 1]), &qpow(&qpoly(&[-1, 1]), 4)));
        let sigma = x.iter().fold(Vec::new(), |acc, xi| qadd(&acc, xi));
        assert_eq!(sigma, qpoly(&[0, 3, -3]));
    }
}
