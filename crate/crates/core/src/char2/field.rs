use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Lexicographically least irreducible polynomial of each degree 1..=16,
/// bit-encoded (`0x11b` is `x^8 + x^4 + x^3 + x + 1`).
const MODULI: [u32; 16] = [
    0x2, 0x7, 0xb, 0x13, 0x25, 0x43, 0x83, 0x11b, 0x203, 0x409, 0x805, 0x1009, 0x201b, 0x4021,
    0x8003, 0x1002b,
];

/// `GF(2^k) = GF(2)[x] / (modulus)`, elements as bit vectors in a `u32`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BinaryField {
    k: u32,
    modulus: u32,
}

impl BinaryField {
    /// The field with the built-in modulus.
    pub fn new(k: u32) -> Result<Self> {
        if !(1..=16).contains(&k) {
            return Err(Error::range(format!("extension degree {k} outside 1..=16")));
        }
        Ok(BinaryField {
            k,
            modulus: MODULI[k as usize - 1],
        })
    }

    /// A field with an explicit modulus, checked for irreducibility.
    pub fn with_modulus(k: u32, modulus: u32) -> Result<Self> {
        if !(1..=16).contains(&k) {
            return Err(Error::range(format!("extension degree {k} outside 1..=16")));
        }
        if bit_degree(modulus) != Some(k) {
            return Err(Error::Input(format!("modulus {modulus:#x} does not have degree {k}")));
        }
        if !is_irreducible_gf2(modulus) {
            return Err(Error::Input(format!("modulus {modulus:#x} is reducible")));
        }
        Ok(BinaryField { k, modulus })
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn order(&self) -> u32 {
        1 << self.k
    }

    /// All field elements in increasing bit order.
    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.order()
    }

    pub fn contains(&self, a: u32) -> bool {
        a < self.order()
    }

    pub fn check(&self, a: u32) -> Result<u32> {
        if self.contains(a) {
            Ok(a)
        } else {
            Err(Error::Input(format!("{a:#x} is not an element of GF(2^{})", self.k)))
        }
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        a ^ b
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        let mut prod = clmul(a, b);
        // Reduce the (at most 2k-1 bit) product.
        let k = self.k;
        for bit in (k..2 * k).rev() {
            if prod >> bit & 1 == 1 {
                prod ^= (self.modulus as u64) << (bit - k);
            }
        }
        prod as u32
    }

    pub fn square(&self, a: u32) -> u32 {
        self.mul(a, a)
    }

    pub fn pow(&self, mut a: u32, mut e: u64) -> u32 {
        let mut r = 1;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }

    /// `a^(2^k - 2)`.
    pub fn inv(&self, a: u32) -> Result<u32> {
        if a == 0 {
            return Err(Error::domain("zero has no inverse"));
        }
        Ok(self.pow(a, (1u64 << self.k) - 2))
    }

    pub fn div(&self, a: u32, b: u32) -> Result<u32> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// The unique square root, `a^(2^(k-1))`.
    pub fn sqrt(&self, a: u32) -> u32 {
        let mut r = a;
        for _ in 1..self.k {
            r = self.square(r);
        }
        r
    }

    pub fn random<R: rand::Rng + ?Sized>(&self, rng: &mut R) -> u32 {
        rng.gen_range(0..self.order())
    }

    pub fn random_nonzero<R: rand::Rng + ?Sized>(&self, rng: &mut R) -> u32 {
        rng.gen_range(1..self.order())
    }
}

impl fmt::Display for BinaryField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF(2^{}) mod {:#x}", self.k, self.modulus)
    }
}

#[derive(Serialize, Deserialize)]
struct FieldJson {
    k: u32,
    modulus: String,
}

impl Serialize for BinaryField {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        FieldJson {
            k: self.k,
            modulus: format!("{:#x}", self.modulus),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for BinaryField {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = FieldJson::deserialize(d)?;
        let m = parse_hex(&j.modulus).map_err(serde::de::Error::custom)?;
        BinaryField::with_modulus(j.k, m).map_err(serde::de::Error::custom)
    }
}

/// Parses `0x1b` or `1b`.
pub fn parse_hex(s: &str) -> Result<u32> {
    let t = s.trim();
    let t = t.strip_prefix("0x").or_else(|| t.strip_prefix("0X")).unwrap_or(t);
    u32::from_str_radix(t, 16).map_err(|_| Error::Input(format!("bad hex value `{s}`")))
}

/// Carry-less product of two polynomials over GF(2).
fn clmul(a: u32, b: u32) -> u64 {
    let mut r = 0u64;
    let mut b = b as u64;
    let mut a = a as u64;
    while b != 0 {
        if b & 1 == 1 {
            r ^= a;
        }
        a <<= 1;
        b >>= 1;
    }
    r
}

fn bit_degree(p: u32) -> Option<u32> {
    (p != 0).then(|| 31 - p.leading_zeros())
}

fn gf2_rem(mut a: u32, b: u32) -> u32 {
    let db = bit_degree(b).expect("nonzero divisor");
    while let Some(da) = bit_degree(a) {
        if da < db {
            break;
        }
        a ^= b << (da - db);
    }
    a
}

/// Trial division by every polynomial of degree `1..=deg/2`.
pub fn is_irreducible_gf2(p: u32) -> bool {
    let Some(d) = bit_degree(p) else { return false };
    if d == 0 {
        return false;
    }
    for q in 2u32..1 << (d / 2 + 1) {
        if bit_degree(q).unwrap_or(0) <= d / 2 && gf2_rem(p, q) == 0 {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_moduli_are_least_irreducible() {
        for k in 1..=16u32 {
            let f = BinaryField::new(k).unwrap();
            assert!(is_irreducible_gf2(f.modulus()), "k={k}");
            // Nothing smaller of the same degree is irreducible.
            let least = (1u32 << k..f.modulus()).find(|&p| is_irreducible_gf2(p));
            assert_eq!(least, None, "k={k}");
        }
    }

    #[test]
    fn aes_field_arithmetic() {
        let f = BinaryField::new(8).unwrap();
        assert_eq!(f.modulus(), 0x11b);
        // Classical AES example: 0x57 * 0x83 = 0xc1.
        assert_eq!(f.mul(0x57, 0x83), 0xc1);
        assert_eq!(f.mul(0x53, f.inv(0x53).unwrap()), 1);
        assert!(f.inv(0).is_err());
    }

    #[test]
    fn frobenius_is_a_bijection_and_sqrt_inverts_it() {
        for k in [1, 2, 4, 5, 8] {
            let f = BinaryField::new(k).unwrap();
            let mut seen = vec![false; f.order() as usize];
            for a in f.elements() {
                let s = f.square(a);
                assert!(!seen[s as usize]);
                seen[s as usize] = true;
                assert_eq!(f.sqrt(s), a);
                assert_eq!(f.square(f.sqrt(a)), a);
            }
        }
    }

    #[test]
    fn inverses_in_gf16() {
        let f = BinaryField::new(4).unwrap();
        for a in 1..16 {
            assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
        }
    }

    #[test]
    fn explicit_modulus_checked() {
        assert!(BinaryField::with_modulus(4, 0x19).is_ok()); // x^4+x^3+1
        assert!(BinaryField::with_modulus(4, 0x15).is_err()); // (x^2+x+1)^2
        assert!(BinaryField::with_modulus(4, 0x7).is_err());
    }

    #[test]
    fn json_descriptor() {
        let f = BinaryField::new(8).unwrap();
        let s = serde_json::to_string(&f).unwrap();
        assert_eq!(s, r#"{"k":8,"modulus":"0x11b"}"#);
        assert_eq!(serde_json::from_str::<BinaryField>(&s).unwrap(), f);
    }
}
