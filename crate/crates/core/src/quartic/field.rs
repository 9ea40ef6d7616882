//! Coefficient fields for quartic surfaces: binary fields, plus the small
//! prime fields used as an odd-characteristic sanity path.

use serde::{Deserialize, Serialize};

use crate::char2::BinaryField;
use crate::error::{Error, Result};

/// `GF(p)` for `p ∈ {3, 5, 7}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawPrime")]
pub struct PrimeField {
    p: u32,
}

#[derive(Deserialize)]
struct RawPrime {
    p: u32,
}

impl TryFrom<RawPrime> for PrimeField {
    type Error = Error;

    fn try_from(r: RawPrime) -> Result<Self> {
        PrimeField::new(r.p)
    }
}

impl PrimeField {
    pub fn new(p: u32) -> Result<Self> {
        if ![3, 5, 7].contains(&p) {
            return Err(Error::range(format!("prime field GF({p}) not supported (3, 5, 7)")));
        }
        Ok(PrimeField { p })
    }

    pub fn p(&self) -> u32 {
        self.p
    }
}

/// A finite field; elements are `u32` (bit vectors or residues).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(untagged)]
pub enum QuarticField {
    Binary(BinaryField),
    Prime(PrimeField),
}

impl From<BinaryField> for QuarticField {
    fn from(f: BinaryField) -> Self {
        QuarticField::Binary(f)
    }
}

impl From<PrimeField> for QuarticField {
    fn from(f: PrimeField) -> Self {
        QuarticField::Prime(f)
    }
}

impl QuarticField {
    pub fn gf2k(k: u32) -> Result<Self> {
        Ok(BinaryField::new(k)?.into())
    }

    pub fn characteristic(&self) -> u32 {
        match self {
            QuarticField::Binary(_) => 2,
            QuarticField::Prime(f) => f.p,
        }
    }

    pub fn order(&self) -> u32 {
        match self {
            QuarticField::Binary(f) => f.order(),
            QuarticField::Prime(f) => f.p,
        }
    }

    pub fn binary(&self) -> Option<BinaryField> {
        match self {
            QuarticField::Binary(f) => Some(*f),
            QuarticField::Prime(_) => None,
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.order()
    }

    pub fn check(&self, a: u32) -> Result<u32> {
        if a < self.order() {
            Ok(a)
        } else {
            Err(Error::Input(format!("{a} is not an element of a field of order {}", self.order())))
        }
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        match self {
            QuarticField::Binary(_) => a ^ b,
            QuarticField::Prime(f) => (a + b) % f.p,
        }
    }

    pub fn neg(&self, a: u32) -> u32 {
        match self {
            QuarticField::Binary(_) => a,
            QuarticField::Prime(f) => (f.p - a) % f.p,
        }
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        match self {
            QuarticField::Binary(f) => f.mul(a, b),
            QuarticField::Prime(f) => a * b % f.p,
        }
    }

    pub fn pow(&self, a: u32, e: u32) -> u32 {
        (0..e).fold(1, |acc, _| self.mul(acc, a))
    }

    pub fn inv(&self, a: u32) -> Result<u32> {
        match self {
            QuarticField::Binary(f) => f.inv(a),
            QuarticField::Prime(f) => {
                if a.is_multiple_of(f.p) {
                    Err(Error::domain("zero has no inverse"))
                } else {
                    Ok(self.pow(a, f.p - 2))
                }
            }
        }
    }

    /// Square root in characteristic 2 (always exists); `None` otherwise.
    pub fn sqrt_char2(&self, a: u32) -> Option<u32> {
        self.binary().map(|f| f.sqrt(a))
    }

    pub fn random<R: rand::Rng + ?Sized>(&self, rng: &mut R) -> u32 {
        rng.gen_range(0..self.order())
    }

    /// Rank of a matrix over the field.
    pub fn rank(&self, rows: &[Vec<u32>]) -> usize {
        self.echelon(rows).len()
    }

    /// Reduced row echelon form (nonzero rows only), with pivot columns.
    fn echelon(&self, rows: &[Vec<u32>]) -> Vec<(usize, Vec<u32>)> {
        let mut m: Vec<Vec<u32>> = rows.to_vec();
        let cols = m.first().map_or(0, |r| r.len());
        let mut out: Vec<(usize, Vec<u32>)> = Vec::new();
        for c in 0..cols {
            let Some(pi) = m.iter().position(|r| r[c] != 0) else {
                continue;
            };
            let mut piv = m.swap_remove(pi);
            let inv = self.inv(piv[c]).expect("nonzero pivot");
            for x in piv.iter_mut() {
                *x = self.mul(*x, inv);
            }
            for r in m.iter_mut().chain(out.iter_mut().map(|(_, r)| r)) {
                let f = r[c];
                if f != 0 {
                    for (x, &y) in r.iter_mut().zip(&piv) {
                        *x = self.sub(*x, self.mul(f, y));
                    }
                }
            }
            out.push((c, piv));
        }
        out
    }

    /// Basis of `{x : rows · x = 0}`.
    pub fn kernel(&self, rows: &[Vec<u32>], cols: usize) -> Vec<Vec<u32>> {
        let ech = self.echelon(rows);
        let pivots: Vec<usize> = ech.iter().map(|(c, _)| *c).collect();
        (0..cols)
            .filter(|c| !pivots.contains(c))
            .map(|free| {
                let mut v = vec![0; cols];
                v[free] = 1;
                for (pc, row) in &ech {
                    v[*pc] = self.neg(row[free]);
                }
                v
            })
            .collect()
    }

    pub fn dot(&self, a: &[u32], b: &[u32]) -> u32 {
        a.iter().zip(b).fold(0, |acc, (&x, &y)| self.add(acc, self.mul(x, y)))
    }
}

impl std::fmt::Display for QuarticField {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            QuarticField::Binary(b) => write!(f, "{b}"),
            QuarticField::Prime(p) => write!(f, "GF({})", p.p),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_inverses() {
        for p in [3, 5, 7] {
            let f: QuarticField = PrimeField::new(p).unwrap().into();
            for a in 1..p {
                assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
                assert_eq!(f.add(a, f.neg(a)), 0);
            }
        }
        assert!(PrimeField::new(11).is_err());
    }

    #[test]
    fn kernel_is_orthogonal() {
        let f = QuarticField::gf2k(4).unwrap();
        let rows = vec![vec![3, 7, 0, 1], vec![0, 1, 5, 9]];
        let k = f.kernel(&rows, 4);
        assert_eq!(k.len(), 2);
        for v in &k {
            for r in &rows {
                assert_eq!(f.dot(r, v), 0);
            }
        }
        let mut all = rows.clone();
        all.extend(k);
        assert_eq!(f.rank(&all), 4);
    }

    #[test]
    fn json_shapes() {
        let b = QuarticField::gf2k(4).unwrap();
        assert_eq!(serde_json::to_string(&b).unwrap(), r#"{"k":4,"modulus":"0x13"}"#);
        let p: QuarticField = PrimeField::new(5).unwrap().into();
        assert_eq!(serde_json::to_string(&p).unwrap(), r#"{"p":5}"#);
        assert_eq!(serde_json::from_str::<QuarticField>(r#"{"p":5}"#).unwrap(), p);
    }
}
