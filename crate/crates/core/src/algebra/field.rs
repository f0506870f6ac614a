//! Finite fields GF(p^k) with at most 256 elements.
//!
//! Elements are encoded as integers `0..q`. For `k > 1` the base-`p` digits of
//! an element code are the coefficients of its polynomial representative,
//! least significant digit first, reduced modulo a fixed irreducible
//! polynomial from [`reduction_polynomial`].

use std::fmt;
use std::sync::Arc;

use super::AlgebraError;

/// Largest supported field order.
pub const MAX_ORDER: u32 = 256;

/// Monic irreducible polynomials, coefficients low to high (leading 1
/// included). One per supported `(p, k)` with `k > 1`.
const REDUCTION_POLYS: &[(u32, u32, &[u8])] = &[
    (2, 2, &[1, 1, 1]),
    (2, 3, &[1, 1, 0, 1]),
    (2, 4, &[1, 1, 0, 0, 1]),
    (2, 5, &[1, 0, 1, 0, 0, 1]),
    (2, 6, &[1, 1, 0, 0, 0, 0, 1]),
    (2, 7, &[1, 1, 0, 0, 0, 0, 0, 1]),
    (2, 8, &[1, 0, 1, 1, 1, 0, 0, 0, 1]),
    (3, 2, &[2, 2, 1]),
    (3, 3, &[1, 2, 0, 1]),
    (3, 4, &[2, 0, 0, 2, 1]),
    (3, 5, &[1, 2, 0, 0, 0, 1]),
    (5, 2, &[2, 4, 1]),
    (5, 3, &[3, 3, 0, 1]),
    (7, 2, &[3, 6, 1]),
    (11, 2, &[2, 7, 1]),
    (13, 2, &[2, 12, 1]),
];

/// The built-in reduction polynomial for GF(p^k), if `k > 1` and the field
/// is supported.
pub fn reduction_polynomial(p: u32, k: u32) -> Option<&'static [u8]> {
    REDUCTION_POLYS
        .iter()
        .find(|(pp, kk, _)| *pp == p && *kk == k)
        .map(|(_, _, poly)| *poly)
}

pub(crate) fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

struct Tables {
    p: u32,
    k: u32,
    q: usize,
    poly: Vec<u8>,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
}

/// A finite field GF(q), q = p^k <= 256, backed by full operation tables.
///
/// Cloning is cheap; the tables are shared.
#[derive(Clone)]
pub struct Field(Arc<Tables>);

impl Field {
    /// Builds GF(p^k).
    pub fn new(p: u32, k: u32) -> Result<Field, AlgebraError> {
        if !is_prime(p) {
            return Err(AlgebraError::NonPrimeCharacteristic(p));
        }
        if k == 0 {
            return Err(AlgebraError::InvalidDegree);
        }
        let q = p
            .checked_pow(k)
            .filter(|&q| q <= MAX_ORDER)
            .ok_or(AlgebraError::FieldTooLarge { p, k })?;
        let poly: Vec<u8> = if k == 1 {
            Vec::new()
        } else {
            reduction_polynomial(p, k)
                .ok_or(AlgebraError::FieldTooLarge { p, k })?
                .to_vec()
        };
        let q = q as usize;
        let digits = |mut a: usize| -> Vec<u32> {
            (0..k)
                .map(|_| {
                    let d = (a % p as usize) as u32;
                    a /= p as usize;
                    d
                })
                .collect()
        };
        let encode = |ds: &[u32]| -> usize {
            ds.iter()
                .rev()
                .fold(0usize, |acc, &d| acc * p as usize + d as usize)
        };

        let mut add = vec![0u8; q * q];
        let mut mul = vec![0u8; q * q];
        for a in 0..q {
            let da = digits(a);
            for b in 0..q {
                let db = digits(b);
                let sum: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[a * q + b] = encode(&sum) as u8;

                // schoolbook product, then reduce by the monic polynomial
                let mut prod = vec![0u32; 2 * k as usize];
                for (i, x) in da.iter().enumerate() {
                    for (j, y) in db.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % p;
                    }
                }
                if k > 1 {
                    for deg in (k as usize..prod.len()).rev() {
                        let c = prod[deg];
                        if c == 0 {
                            continue;
                        }
                        for (i, &pc) in poly.iter().enumerate() {
                            let idx = deg - k as usize + i;
                            prod[idx] = (prod[idx] + p * p - (c * pc as u32) % p) % p;
                        }
                    }
                }
                mul[a * q + b] = encode(&prod[..k as usize]) as u8;
            }
        }

        let mut neg = vec![0u8; q];
        let mut inv = vec![0u8; q];
        for a in 0..q {
            neg[a] = (0..q).find(|&b| add[a * q + b] == 0).expect("additive group") as u8;
            if a != 0 {
                inv[a] = (1..q)
                    .find(|&b| mul[a * q + b] == 1)
                    .expect("reduction polynomial must be irreducible") as u8;
            }
        }

        Ok(Field(Arc::new(Tables {
            p,
            k,
            q,
            poly,
            add,
            mul,
            neg,
            inv,
        })))
    }

    /// The prime field GF(p).
    pub fn prime(p: u32) -> Result<Field, AlgebraError> {
        Field::new(p, 1)
    }

    /// Builds the field with `q` elements, factoring `q` as a prime power.
    pub fn with_order(q: u32) -> Result<Field, AlgebraError> {
        if q > MAX_ORDER {
            return Err(AlgebraError::NotAPrimePower(q));
        }
        let p = (2..=q.max(2))
            .find(|d| q.is_multiple_of(*d))
            .ok_or(AlgebraError::NotAPrimePower(q))?;
        let mut k = 0;
        let mut rest = q;
        while rest.is_multiple_of(p) {
            rest /= p;
            k += 1;
        }
        if rest != 1 {
            return Err(AlgebraError::NotAPrimePower(q));
        }
        Field::new(p, k)
    }

    /// Parses the order notation used in text files: `p^k`, or a plain prime.
    pub fn parse_order(text: &str) -> Result<Field, AlgebraError> {
        let bad = || AlgebraError::BadOrder(text.to_string());
        match text.split_once('^') {
            Some((p, k)) => {
                let p: u32 = p.parse().map_err(|_| bad())?;
                let k: u32 = k.parse().map_err(|_| bad())?;
                Field::new(p, k)
            }
            None => {
                let q: u32 = text.parse().map_err(|_| bad())?;
                if !is_prime(q) {
                    return Err(bad());
                }
                Field::prime(q)
            }
        }
    }

    /// Inverse of [`Field::parse_order`].
    pub fn order_text(&self) -> String {
        if self.0.k == 1 {
            self.0.p.to_string()
        } else {
            format!("{}^{}", self.0.p, self.0.k)
        }
    }

    pub fn characteristic(&self) -> u32 {
        self.0.p
    }

    pub fn degree(&self) -> u32 {
        self.0.k
    }

    pub fn order(&self) -> usize {
        self.0.q
    }

    /// Coefficients of the reduction polynomial, low to high; empty for prime
    /// fields.
    pub fn reduction_poly(&self) -> &[u8] {
        &self.0.poly
    }

    pub fn elements(&self) -> impl Iterator<Item = u8> {
        (0..self.0.q).map(|a| a as u8)
    }

    #[inline]
    pub fn add(&self, a: u8, b: u8) -> u8 {
        self.0.add[a as usize * self.0.q + b as usize]
    }

    #[inline]
    pub fn sub(&self, a: u8, b: u8) -> u8 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn neg(&self, a: u8) -> u8 {
        self.0.neg[a as usize]
    }

    #[inline]
    pub fn mul(&self, a: u8, b: u8) -> u8 {
        self.0.mul[a as usize * self.0.q + b as usize]
    }

    /// Multiplicative inverse. Panics on zero.
    #[inline]
    pub fn inv(&self, a: u8) -> u8 {
        assert!(a != 0, "zero has no inverse");
        self.0.inv[a as usize]
    }

    pub fn div(&self, a: u8, b: u8) -> u8 {
        self.mul(a, self.inv(b))
    }

    pub fn pow(&self, a: u8, mut e: u32) -> u8 {
        let mut base = a;
        let mut acc = 1u8;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// The Frobenius automorphism `a -> a^p` applied `power` times.
    pub fn frobenius(&self, a: u8, power: u32) -> u8 {
        let mut x = a;
        for _ in 0..power % self.0.k {
            x = self.pow(x, self.0.p);
        }
        x
    }

    /// `-1`, i.e. `p - 1` in the prime subfield.
    pub fn minus_one(&self) -> u8 {
        self.neg(1)
    }

    pub fn contains(&self, a: u8) -> bool {
        (a as usize) < self.0.q
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.0.p == other.0.p && self.0.k == other.0.k
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.order_text())
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.0.q)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn supported() -> Vec<(u32, u32)> {
        let mut out = Vec::new();
        for p in (2..=256).filter(|&p| is_prime(p)) {
            out.push((p, 1));
        }
        for &(p, k, _) in REDUCTION_POLYS {
            out.push((p, k));
        }
        out
    }

    #[test]
    fn gf5_arithmetic() {
        let f = Field::new(5, 1).unwrap();
        assert_eq!(f.add(2, 4), 1);
        assert_eq!(f.mul(2, 3), 1);
        assert_eq!(f.minus_one(), 4);
    }

    #[test]
    fn gf4_uses_x2_x_1() {
        // x * x = x^2 = x + 1 modulo x^2 + x + 1
        let f = Field::new(2, 2).unwrap();
        assert_eq!(f.reduction_poly(), &[1, 1, 1]);
        assert_eq!(f.mul(2, 2), 3);
        assert_eq!(f.mul(2, 3), 1);
        assert_eq!(f.add(2, 3), 1);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert_eq!(
            Field::new(4, 1).unwrap_err(),
            AlgebraError::NonPrimeCharacteristic(4)
        );
        assert!(matches!(
            Field::new(2, 9).unwrap_err(),
            AlgebraError::FieldTooLarge { .. }
        ));
        assert!(matches!(
            Field::new(17, 2).unwrap_err(),
            AlgebraError::FieldTooLarge { .. }
        ));
        assert!(Field::with_order(6).is_err());
        assert!(Field::parse_order("4").is_err());
    }

    #[test]
    fn every_supported_field_has_inverses() {
        for (p, k) in supported() {
            let f = Field::new(p, k).unwrap();
            for a in 1..f.order() as u8 {
                assert_eq!(f.mul(a, f.inv(a)), 1, "GF({p}^{k}) a={a}");
            }
        }
    }

    #[test]
    fn axioms_exhaustive_small_fields() {
        for (p, k) in supported().into_iter().filter(|&(p, k)| p.pow(k) <= 16) {
            let f = Field::new(p, k).unwrap();
            let q = f.order() as u8;
            for a in 0..q {
                assert_eq!(f.add(a, f.neg(a)), 0);
                for b in 0..q {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for c in 0..q {
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                        assert_eq!(f.mul(a, f.mul(b, c)), f.mul(f.mul(a, b), c));
                        assert_eq!(f.add(a, f.add(b, c)), f.add(f.add(a, b), c));
                    }
                }
            }
        }
    }

    #[test]
    fn order_text_round_trip() {
        for text in ["2", "3^2", "2^8", "251"] {
            assert_eq!(Field::parse_order(text).unwrap().order_text(), text);
        }
        assert_eq!(Field::with_order(9).unwrap(), Field::new(3, 2).unwrap());
    }

    #[test]
    fn frobenius_is_a_field_automorphism() {
        let f = Field::new(2, 3).unwrap();
        for a in f.elements() {
            for b in f.elements() {
                assert_eq!(
                    f.frobenius(f.mul(a, b), 1),
                    f.mul(f.frobenius(a, 1), f.frobenius(b, 1))
                );
            }
            assert_eq!(f.frobenius(a, 3), a);
        }
    }
}
