use std::collections::BTreeMap;

use serde::ser::SerializeSeq;
use serde::Serialize;

use super::field::QuarticField;

pub type Exponent = [u8; 4];

/// Polynomial in at most four variables over a [`QuarticField`].
///
/// Binary operations panic if the operands live over different fields.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MPoly {
    field: QuarticField,
    terms: BTreeMap<Exponent, u32>,
}

impl MPoly {
    pub fn zero(field: QuarticField) -> Self {
        MPoly {
            field,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(field: QuarticField, c: u32) -> Self {
        let mut p = Self::zero(field);
        p.add_term([0; 4], c);
        p
    }

    pub fn var(field: QuarticField, i: usize) -> Self {
        let mut e = [0; 4];
        e[i] = 1;
        let mut p = Self::zero(field);
        p.add_term(e, 1);
        p
    }

    /// `Σ c_i x_i`.
    pub fn linear(field: QuarticField, c: &[u32]) -> Self {
        let mut p = Self::zero(field);
        for (i, &ci) in c.iter().enumerate() {
            let mut e = [0; 4];
            e[i] = 1;
            p.add_term(e, ci);
        }
        p
    }

    pub fn from_terms(field: QuarticField, terms: impl IntoIterator<Item = (Exponent, u32)>) -> Self {
        let mut p = Self::zero(field);
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn add_term(&mut self, e: Exponent, c: u32) {
        if c == 0 {
            return;
        }
        let f = self.field;
        let v = self.terms.entry(e).or_insert(0);
        *v = f.add(*v, c);
        if *v == 0 {
            self.terms.remove(&e);
        }
    }

    pub fn field(&self) -> QuarticField {
        self.field
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &u32)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: &Exponent) -> u32 {
        self.terms.get(e).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// `Some(d)` if every term has total degree `d` (zero counts as any).
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degs = self.terms.keys().map(|e| e.iter().map(|&x| x as u32).sum::<u32>());
        let d = degs.next()?;
        degs.all(|x| x == d).then_some(d)
    }

    fn same_field(&self, o: &Self) {
        assert_eq!(self.field, o.field, "polynomials over different fields");
    }

    pub fn add(&self, o: &Self) -> Self {
        self.same_field(o);
        let mut r = self.clone();
        for (e, &c) in &o.terms {
            r.add_term(*e, c);
        }
        r
    }

    pub fn scale(&self, c: u32) -> Self {
        let f = self.field;
        Self::from_terms(f, self.terms.iter().map(|(e, &a)| (*e, f.mul(a, c))))
    }

    pub fn mul(&self, o: &Self) -> Self {
        self.same_field(o);
        let f = self.field;
        let mut r = Self::zero(f);
        for (ea, &a) in &self.terms {
            for (eb, &b) in &o.terms {
                let e = std::array::from_fn(|i| ea[i] + eb[i]);
                r.add_term(e, f.mul(a, b));
            }
        }
        r
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::constant(self.field, 1), |acc, _| acc.mul(self))
    }

    /// Formal partial derivative in `x_i`.
    pub fn partial(&self, i: usize) -> Self {
        let f = self.field;
        let mut r = Self::zero(f);
        for (e, &c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            // The integer factor e[i] reduced into the field.
            let factor = (e[i] as u32) % f.characteristic();
            let mut e2 = *e;
            e2[i] -= 1;
            r.add_term(e2, f.mul(c, factor));
        }
        r
    }

    pub fn eval(&self, x: &[u32]) -> u32 {
        let f = self.field;
        self.terms.iter().fold(0, |acc, (e, &c)| {
            let m = e
                .iter()
                .zip(x)
                .fold(c, |m, (&k, &xi)| f.mul(m, f.pow(xi, k as u32)));
            f.add(acc, m)
        })
    }

    /// Substitutes `x_i = Σ_j images[i][j] y_j`.
    pub fn substitute(&self, images: &[Vec<u32>]) -> Self {
        let f = self.field;
        let lin: Vec<MPoly> = images.iter().map(|c| MPoly::linear(f, c)).collect();
        let mut powers: Vec<Vec<MPoly>> = lin
            .iter()
            .map(|l| vec![MPoly::constant(f, 1), l.clone()])
            .collect();
        let mut r = Self::zero(f);
        for (e, &c) in &self.terms {
            let mut m = MPoly::constant(f, c);
            for (i, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                while powers[i].len() <= k as usize {
                    let next = powers[i].last().unwrap().mul(&lin[i]);
                    powers[i].push(next);
                }
                m = m.mul(&powers[i][k as usize]);
            }
            r = r.add(&m);
        }
        r
    }

    /// Terms whose exponent in `x_i` equals `k`, with that variable removed.
    pub fn coefficient_in(&self, i: usize, k: u8) -> Self {
        Self::from_terms(
            self.field,
            self.terms.iter().filter(|(e, _)| e[i] == k).map(|(e, &c)| {
                let mut e2 = *e;
                e2[i] = 0;
                (e2, c)
            }),
        )
    }

    /// Characteristic 2: `Some(h)` with `h² = self` iff all exponents are even.
    pub fn sqrt_char2(&self) -> Option<Self> {
        let f = self.field;
        f.binary()?;
        if self.terms.keys().any(|e| e.iter().any(|x| x % 2 == 1)) {
            return None;
        }
        Some(Self::from_terms(
            f,
            self.terms
                .iter()
                .map(|(e, &c)| (e.map(|x| x / 2), f.sqrt_char2(c).expect("binary field"))),
        ))
    }
}

/// A list of `[exponent, coefficient]` pairs.
impl Serialize for MPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.terms.len()))?;
        for (e, c) in &self.terms {
            seq.serialize_element(&(e, c))?;
        }
        seq.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quartic::field::PrimeField;

    #[test]
    fn char2_partials_drop_even_powers() {
        let f = QuarticField::gf2k(4).unwrap();
        // x0² x1 + x0 x1 x2 x3
        let p = MPoly::from_terms(f, [([2, 1, 0, 0], 1), ([1, 1, 1, 1], 1)]);
        assert_eq!(p.partial(0), MPoly::from_terms(f, [([0, 1, 1, 1], 1)]));
        assert_eq!(
            p.partial(1),
            MPoly::from_terms(f, [([2, 0, 0, 0], 1), ([1, 0, 1, 1], 1)])
        );
    }

    #[test]
    fn odd_characteristic_partial() {
        let f: QuarticField = PrimeField::new(3).unwrap().into();
        let p = MPoly::from_terms(f, [([4, 0, 0, 0], 1), ([3, 1, 0, 0], 1)]);
        // 4x0³ + 3x0²x1 = x0³ mod 3.
        assert_eq!(p.partial(0), MPoly::from_terms(f, [([3, 0, 0, 0], 1)]));
    }

    #[test]
    fn substitution_matches_evaluation() {
        let f = QuarticField::gf2k(4).unwrap();
        let p = MPoly::from_terms(f, [([1, 1, 1, 1], 3), ([0, 2, 0, 2], 7), ([4, 0, 0, 0], 1)]);
        let images = vec![vec![1, 2, 0], vec![0, 5, 1], vec![9, 0, 3], vec![1, 1, 1]];
        let q = p.substitute(&images);
        for y in [[1, 2, 3], [0, 1, 7], [15, 4, 4]] {
            let x: Vec<u32> = images.iter().map(|row| f.dot(row, &y)).collect();
            assert_eq!(q.eval(&y), p.eval(&x));
        }
    }

    #[test]
    fn square_roots() {
        let f = QuarticField::gf2k(4).unwrap();
        let h = MPoly::from_terms(f, [([1, 1, 0, 0], 3), ([0, 0, 2, 0], 5)]);
        assert_eq!(h.mul(&h).sqrt_char2(), Some(h.clone()));
        assert_eq!(h.sqrt_char2(), None);
        assert_eq!(h.mul(&h).homogeneous_degree(), Some(4));
    }
}
