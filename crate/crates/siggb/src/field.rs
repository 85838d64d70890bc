//! Prime field arithmetic on canonical residues.
//!
//! Elements are `u32` values in `[0, p)`. The modulus is restricted to
//! `2 < p < 2^31`, so sums fit in `u32` and products in `u64` without
//! intermediate reductions.

use crate::error::{Error, Result};

/// A prime field `F_p` with `2 < p < 2^31`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    modulus: u32,
}

/// Field element: canonical residue in `[0, modulus)`.
pub type Coeff = u32;

impl PrimeField {
    pub fn new(modulus: u64) -> Result<Self> {
        if !(3..1u64 << 31).contains(&modulus) {
            return Err(Error::CharOutOfRange(modulus));
        }
        if !is_prime(modulus as u32) {
            return Err(Error::NotPrime(modulus));
        }
        Ok(PrimeField {
            modulus: modulus as u32,
        })
    }

    #[inline]
    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    /// Canonical residue of a signed integer.
    #[inline]
    pub fn from_i64(&self, v: i64) -> Coeff {
        let p = self.modulus as i64;
        (v.rem_euclid(p)) as Coeff
    }

    #[inline]
    pub fn from_u64(&self, v: u64) -> Coeff {
        (v % self.modulus as u64) as Coeff
    }

    #[inline]
    pub fn add(&self, a: Coeff, b: Coeff) -> Coeff {
        let s = a + b;
        if s >= self.modulus {
            s - self.modulus
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: Coeff, b: Coeff) -> Coeff {
        if a >= b {
            a - b
        } else {
            a + self.modulus - b
        }
    }

    #[inline]
    pub fn neg(&self, a: Coeff) -> Coeff {
        if a == 0 {
            0
        } else {
            self.modulus - a
        }
    }

    #[inline]
    pub fn mul(&self, a: Coeff, b: Coeff) -> Coeff {
        ((a as u64 * b as u64) % self.modulus as u64) as Coeff
    }

    /// Multiplicative inverse via the extended Euclidean algorithm.
    ///
    /// Panics on zero; callers guarantee nonzero leading coefficients.
    pub fn inv(&self, a: Coeff) -> Coeff {
        assert!(a != 0, "inverse of zero");
        let p = self.modulus as i64;
        let (mut r0, mut r1) = (p, a as i64);
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        debug_assert_eq!(r0, 1, "modulus must be prime");
        t0.rem_euclid(p) as Coeff
    }

    #[inline]
    pub fn div(&self, a: Coeff, b: Coeff) -> Coeff {
        self.mul(a, self.inv(b))
    }
}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    for small in [2u32, 3, 5, 7] {
        if n % small == 0 {
            return n == small;
        }
    }
    let mut d = 11u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_prime_and_out_of_range() {
        assert!(PrimeField::new(32003).is_ok());
        assert!(matches!(PrimeField::new(32001), Err(Error::NotPrime(_))));
        assert!(matches!(PrimeField::new(2), Err(Error::CharOutOfRange(_))));
        assert!(matches!(
            PrimeField::new(1 << 31),
            Err(Error::CharOutOfRange(_))
        ));
        // Largest prime below 2^31.
        assert!(PrimeField::new((1 << 31) - 1).is_ok());
    }

    #[test]
    fn canonical_residues() {
        let f = PrimeField::new(32003).unwrap();
        assert_eq!(f.from_i64(-1), 32002);
        assert_eq!(f.from_i64(32003), 0);
        assert_eq!(f.from_i64(-32004), 32002);
    }

    #[test]
    fn inverse_of_every_small_element() {
        let f = PrimeField::new(101).unwrap();
        for a in 1..101 {
            assert_eq!(f.mul(a, f.inv(a)), 1);
        }
    }
}
