//! Module-monomial signatures and the labeled objects the signature
//! engine works with.
//!
//! A signature is a monic module monomial `t * e_j`: `index` selects the
//! generator, `mono` the monomial factor. Comparison is
//! position-over-term: the generator index decides first, the ring
//! ordering breaks ties. Two signatures with equal index and monomial are
//! called *level*.

use crate::error::Result;
use crate::monomial::{Monomial, MonomialOrder};
use crate::poly::Polynomial;
use std::cmp::Ordering;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonSig {
    pub mono: Monomial,
    pub index: u32,
}

impl MonSig {
    pub fn generator(index: u32, nvars: usize) -> Self {
        MonSig {
            mono: Monomial::one(nvars),
            index,
        }
    }

    /// Position-over-term comparison; `Equal` means level.
    #[inline]
    pub fn cmp(&self, other: &MonSig, order: MonomialOrder) -> Ordering {
        self.index
            .cmp(&other.index)
            .then_with(|| order.cmp(&self.mono, &other.mono))
    }

    /// `t * (mono, index)`; the index is untouched.
    #[inline]
    pub fn mul_mono(&self, t: &Monomial) -> MonSig {
        MonSig {
            mono: self.mono.mul(t),
            index: self.index,
        }
    }

    /// Checked variant for input boundaries; exponent overflow is an error.
    pub fn checked_mul_mono(&self, t: &Monomial) -> Result<MonSig> {
        Ok(MonSig {
            mono: self.mono.checked_mul(t)?,
            index: self.index,
        })
    }
}

/// A basis entry of the signature engine: the minimal signature attached
/// to the polynomial, plus bookkeeping flags.
#[derive(Debug, Clone)]
pub struct LabeledPoly {
    pub sig: MonSig,
    pub poly: Polynomial,
    /// Insertion counter, unique and monotone with insertion order.
    pub age: usize,
    /// Flagged at creation time when the entry is signature-redundant;
    /// such entries stay in the basis but generate no pairs and are
    /// filtered from the output.
    pub redundant: bool,
    /// True iff `poly` is zero: the signature witnesses a syzygy.
    pub syzygy: bool,
}

/// An oriented critical pair. `pos` carries the strictly larger multiplied
/// signature, which is the pair's signature; pairs whose two multiplied
/// signatures are level are never created.
#[derive(Debug, Clone)]
pub struct CriticalPair {
    pub sig: MonSig,
    /// Divisibility prefilter of `sig.mono`, cached for the repeated
    /// syzygy and rewriting scans.
    pub sig_mask: u64,
    pub pos: usize,
    pub neg: usize,
    pub lcm: Monomial,
    /// Multiplier on the `pos` polynomial: `u * lm(pos) = lcm`.
    pub u: Monomial,
    /// Multiplier on the `neg` polynomial: `v * lm(neg) = lcm`.
    pub v: Monomial,
    /// Creation sequence number, for deterministic retention choices.
    pub seq: u64,
    /// Leading monomial of the pair's S-polynomial, computed on demand:
    /// `None` = not computed yet, `Some(None)` = the S-polynomial is zero.
    pub spol_lm: Option<Option<Monomial>>,
    /// Term count of the pair's S-polynomial, computed on demand.
    pub spol_terms: Option<usize>,
}

/// Monomials known to be signatures of syzygies; any pair whose signature
/// monomial one of them divides can be discarded.
#[derive(Debug, Clone, Default)]
pub struct SyzygySet {
    monos: Vec<Monomial>,
    masks: Vec<u64>,
}

impl SyzygySet {
    pub fn new() -> Self {
        SyzygySet::default()
    }

    pub fn from_leading_monomials<'a, I: IntoIterator<Item = &'a Polynomial>>(polys: I) -> Self {
        let mut s = SyzygySet::new();
        for p in polys {
            if !p.is_zero() {
                s.push(p.lm().clone());
            }
        }
        s
    }

    pub fn contains_divisor_of(&self, mono: &Monomial) -> bool {
        self.contains_divisor_of_masked(mono, mono.divmask())
    }

    pub fn contains_divisor_of_masked(&self, mono: &Monomial, mask: u64) -> bool {
        self.monos
            .iter()
            .zip(self.masks.iter())
            .any(|(t, &m)| crate::monomial::mask_may_divide(m, mask) && t.divides(mono))
    }

    /// Inserting a monomial already divisible by a member changes no
    /// divisibility verdict, so it is skipped.
    pub fn insert(&mut self, mono: Monomial) {
        if !self.contains_divisor_of(&mono) {
            self.push(mono);
        }
    }

    fn push(&mut self, mono: Monomial) {
        self.masks.push(mono.divmask());
        self.monos.push(mono);
    }

    pub fn len(&self) -> usize {
        self.monos.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monos.is_empty()
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monos
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const ORD: MonomialOrder = MonomialOrder::DegRevLex;

    fn sig(exps: &[u16], index: u32) -> MonSig {
        MonSig {
            mono: Monomial::new(exps),
            index,
        }
    }

    #[test]
    fn position_over_term() {
        // Higher index dominates regardless of monomials: (x, 2) > (y^3, 1).
        assert_eq!(sig(&[1, 0], 2).cmp(&sig(&[0, 3], 1), ORD), Ordering::Greater);
        // Level signatures compare equal.
        assert_eq!(sig(&[1, 0], 1).cmp(&sig(&[1, 0], 1), ORD), Ordering::Equal);
        // Same index: the monomial ordering decides; y < x.
        assert_eq!(sig(&[0, 1], 1).cmp(&sig(&[1, 0], 1), ORD), Ordering::Less);
    }

    #[test]
    fn multiplication_keeps_index() {
        let s = sig(&[0, 1], 1);
        let t = Monomial::new(&[1, 0]);
        assert_eq!(s.mul_mono(&t), sig(&[1, 1], 1));
        assert_eq!(s.mul_mono(&Monomial::one(2)), s);
    }

    /// Multiplicativity of the signature order, brute-forced over every
    /// monomial of degree at most 2 in two variables.
    #[test]
    fn order_is_multiplicative() {
        let mut monos = Vec::new();
        for a in 0u16..3 {
            for b in 0u16..3 {
                if a + b <= 2 {
                    monos.push(Monomial::new(&[a, b]));
                }
            }
        }
        for t in &monos {
            for ma in &monos {
                for mb in &monos {
                    for (ia, ib) in [(1u32, 1u32), (1, 2), (2, 1)] {
                        let a = MonSig {
                            mono: ma.clone(),
                            index: ia,
                        };
                        let b = MonSig {
                            mono: mb.clone(),
                            index: ib,
                        };
                        assert_eq!(
                            a.mul_mono(t).cmp(&b.mul_mono(t), ORD),
                            a.cmp(&b, ORD),
                            "t={t:?} a={a:?} b={b:?}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn generator_signatures_order_by_index() {
        assert_eq!(
            MonSig::generator(0, 2).cmp(&MonSig::generator(1, 2), ORD),
            Ordering::Less
        );
    }

    #[test]
    fn syzygy_set_divisibility() {
        let mut syz = SyzygySet::new();
        assert!(!syz.contains_divisor_of(&Monomial::new(&[2, 1])));
        syz.insert(Monomial::new(&[1, 0]));
        // x divides x^2 y.
        assert!(syz.contains_divisor_of(&Monomial::new(&[2, 1])));
        assert!(!syz.contains_divisor_of(&Monomial::new(&[0, 3])));
        // Dominated insert is dropped.
        syz.insert(Monomial::new(&[1, 2]));
        assert_eq!(syz.len(), 1);
    }
}
