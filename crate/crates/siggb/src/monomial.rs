//! Monomials as exponent vectors with a cached total degree, and the
//! degree-reverse-lexicographic ordering used throughout.

use crate::error::{Error, Result};
use smallvec::SmallVec;
use std::cmp::Ordering;

/// Per-variable exponents are 16-bit; multiplication overflow is a hard
/// error rather than silent wraparound.
pub type Exponent = u16;

/// A monomial in a fixed number of variables. Immutable after construction.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: SmallVec<[Exponent; 16]>,
    degree: u32,
}

impl Monomial {
    pub fn new(exps: &[Exponent]) -> Self {
        let degree = exps.iter().map(|&e| e as u32).sum();
        Monomial {
            exps: SmallVec::from_slice(exps),
            degree,
        }
    }

    pub fn one(nvars: usize) -> Self {
        Monomial {
            exps: SmallVec::from_elem(0, nvars),
            degree: 0,
        }
    }

    /// The monomial `x_i` in `nvars` variables.
    pub fn var(i: usize, nvars: usize) -> Self {
        let mut exps = SmallVec::from_elem(0, nvars);
        exps[i] = 1;
        Monomial { exps, degree: 1 }
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.degree
    }

    #[inline]
    pub fn exponent(&self, i: usize) -> Exponent {
        self.exps[i]
    }

    #[inline]
    pub fn exponents(&self) -> &[Exponent] {
        &self.exps
    }

    #[inline]
    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    /// Componentwise product; overflow is a hard error.
    pub fn checked_mul(&self, other: &Monomial) -> Result<Monomial> {
        if self.nvars() != other.nvars() {
            return Err(Error::VarCountMismatch(self.nvars(), other.nvars()));
        }
        let mut exps = SmallVec::with_capacity(self.exps.len());
        for (&a, &b) in self.exps.iter().zip(other.exps.iter()) {
            let s = a.checked_add(b).ok_or(Error::ExponentOverflow)?;
            exps.push(s);
        }
        Ok(Monomial {
            exps,
            degree: self.degree + other.degree,
        })
    }

    /// Product of two monomials known to be small enough not to overflow.
    /// Panics on overflow in debug builds; use `checked_mul` at input
    /// boundaries.
    #[inline]
    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.nvars(), other.nvars());
        let mut exps = SmallVec::with_capacity(self.exps.len());
        for (&a, &b) in self.exps.iter().zip(other.exps.iter()) {
            exps.push(a + b);
        }
        Monomial {
            exps,
            degree: self.degree + other.degree,
        }
    }

    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        debug_assert_eq!(self.nvars(), other.nvars());
        self.degree <= other.degree
            && self
                .exps
                .iter()
                .zip(other.exps.iter())
                .all(|(&a, &b)| a <= b)
    }

    /// Componentwise difference `self / other`; errors unless `other`
    /// divides `self`.
    pub fn checked_quot(&self, other: &Monomial) -> Result<Monomial> {
        if self.nvars() != other.nvars() {
            return Err(Error::VarCountMismatch(self.nvars(), other.nvars()));
        }
        if !other.divides(self) {
            return Err(Error::NonDivisor);
        }
        Ok(self.quot(other))
    }

    #[inline]
    pub fn quot(&self, other: &Monomial) -> Monomial {
        debug_assert!(other.divides(self));
        let exps: SmallVec<[Exponent; 16]> = self
            .exps
            .iter()
            .zip(other.exps.iter())
            .map(|(&a, &b)| a - b)
            .collect();
        Monomial {
            exps,
            degree: self.degree - other.degree,
        }
    }

    #[inline]
    pub fn lcm(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.nvars(), other.nvars());
        let mut degree = 0u32;
        let exps: SmallVec<[Exponent; 16]> = self
            .exps
            .iter()
            .zip(other.exps.iter())
            .map(|(&a, &b)| {
                let m = a.max(b);
                degree += m as u32;
                m
            })
            .collect();
        Monomial { exps, degree }
    }

    /// True iff `lcm(self, other) == self * other`.
    #[inline]
    pub fn coprime(&self, other: &Monomial) -> bool {
        self.exps
            .iter()
            .zip(other.exps.iter())
            .all(|(&a, &b)| a == 0 || b == 0)
    }

    /// Divisibility prefilter: per-variable exponent threshold bits. If
    /// `a` divides `b` then `a.divmask() & !b.divmask() == 0`, so a
    /// nonzero intersection with the complement rejects a candidate in
    /// one AND.
    pub fn divmask(&self) -> u64 {
        let n = self.exps.len().max(1);
        let bpv = (64 / n).clamp(1, 8);
        let mut mask = 0u64;
        for (i, &e) in self.exps.iter().enumerate() {
            let base = i * bpv;
            if base >= 64 {
                break;
            }
            for j in 0..bpv {
                if e as usize > j {
                    mask |= 1u64 << (base + j);
                }
            }
        }
        mask
    }
}

/// Rejects `divisor | target` when the precomputed masks rule it out.
#[inline]
pub fn mask_may_divide(divisor_mask: u64, target_mask: u64) -> bool {
    divisor_mask & !target_mask == 0
}

/// Monomial orderings. Only degrevlex ships; the enum is the extension
/// point for further degree-compatible orderings.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MonomialOrder {
    /// Total degree first, ties broken reverse-lexicographically: the
    /// monomial with the smaller exponent at the last differing variable
    /// is the larger one.
    DegRevLex,
}

impl MonomialOrder {
    #[inline]
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        debug_assert_eq!(a.nvars(), b.nvars());
        match self {
            MonomialOrder::DegRevLex => match a.degree.cmp(&b.degree) {
                Ordering::Equal => {
                    for k in (0..a.exps.len()).rev() {
                        if a.exps[k] != b.exps[k] {
                            return b.exps[k].cmp(&a.exps[k]);
                        }
                    }
                    Ordering::Equal
                }
                ord => ord,
            },
        }
    }

    /// Compares `(target / div) * tau` against `sigma` without building
    /// the quotient. `div` must divide `target`.
    #[inline]
    pub fn cmp_shifted(
        &self,
        target: &Monomial,
        div: &Monomial,
        tau: &Monomial,
        sigma: &Monomial,
    ) -> Ordering {
        debug_assert!(div.divides(target));
        match self {
            MonomialOrder::DegRevLex => {
                let deg = target.degree + tau.degree - div.degree;
                match deg.cmp(&sigma.degree) {
                    Ordering::Equal => {
                        for k in (0..target.exps.len()).rev() {
                            let a = target.exps[k] as i32 - div.exps[k] as i32
                                + tau.exps[k] as i32;
                            let b = sigma.exps[k] as i32;
                            if a != b {
                                return b.cmp(&a);
                            }
                        }
                        Ordering::Equal
                    }
                    ord => ord,
                }
            }
        }
    }

    /// Compares `(target / div_a) * tau_a` against `(target / div_b) * tau_b`
    /// for a shared `target` that both `div_a` and `div_b` divide; the
    /// target cancels out of the comparison.
    #[inline]
    pub fn cmp_shifted_pair(
        &self,
        div_a: &Monomial,
        tau_a: &Monomial,
        div_b: &Monomial,
        tau_b: &Monomial,
    ) -> Ordering {
        match self {
            MonomialOrder::DegRevLex => {
                let da = tau_a.degree as i64 - div_a.degree as i64;
                let db = tau_b.degree as i64 - div_b.degree as i64;
                match da.cmp(&db) {
                    Ordering::Equal => {
                        for k in (0..div_a.exps.len()).rev() {
                            let a = tau_a.exps[k] as i32 - div_a.exps[k] as i32;
                            let b = tau_b.exps[k] as i32 - div_b.exps[k] as i32;
                            if a != b {
                                return b.cmp(&a);
                            }
                        }
                        Ordering::Equal
                    }
                    ord => ord,
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(exps: &[Exponent]) -> Monomial {
        Monomial::new(exps)
    }

    #[test]
    fn degrevlex_examples() {
        let ord = MonomialOrder::DegRevLex;
        // x^2 vs y^2 with x > y: smaller last exponent wins the tie.
        assert_eq!(ord.cmp(&m(&[2, 0]), &m(&[0, 2])), Ordering::Greater);
        assert_eq!(ord.cmp(&m(&[0, 0]), &m(&[0, 0])), Ordering::Equal);
        // Degree compatibility forces x < y^3.
        assert_eq!(ord.cmp(&m(&[1, 0]), &m(&[0, 3])), Ordering::Less);
    }

    /// Brute-force comparator over all degree-2 monomials in 2 variables:
    /// the expected degrevlex chain is x^2 > xy > y^2.
    #[test]
    fn degrevlex_degree_two_chain() {
        let ord = MonomialOrder::DegRevLex;
        let chain = [m(&[2, 0]), m(&[1, 1]), m(&[0, 2])];
        for i in 0..chain.len() {
            for j in 0..chain.len() {
                assert_eq!(ord.cmp(&chain[i], &chain[j]), j.cmp(&i));
            }
        }
    }

    #[test]
    fn degrevlex_three_vars_degree_two() {
        // x > y > z: x^2 > xy > y^2 > xz > yz > z^2.
        let ord = MonomialOrder::DegRevLex;
        let chain = [
            m(&[2, 0, 0]),
            m(&[1, 1, 0]),
            m(&[0, 2, 0]),
            m(&[1, 0, 1]),
            m(&[0, 1, 1]),
            m(&[0, 0, 2]),
        ];
        for w in chain.windows(2) {
            assert_eq!(ord.cmp(&w[0], &w[1]), Ordering::Greater);
        }
    }

    #[test]
    fn lcm_divides_quot() {
        // lcm(x^2 y, x y^3) = x^2 y^3
        assert_eq!(m(&[2, 1]).lcm(&m(&[1, 3])), m(&[2, 3]));
        assert!(m(&[1, 1]).divides(&m(&[2, 1])));
        assert!(!m(&[2, 0]).divides(&m(&[1, 1])));
        // quot(x^2 y^3, x y) = x y^2
        assert_eq!(m(&[2, 3]).checked_quot(&m(&[1, 1])).unwrap(), m(&[1, 2]));
        assert!(matches!(
            m(&[2, 0]).checked_quot(&m(&[1, 1])),
            Err(Error::NonDivisor)
        ));
    }

    #[test]
    fn mul_overflow_is_an_error() {
        let a = m(&[u16::MAX, 0]);
        let b = m(&[1, 0]);
        assert!(matches!(a.checked_mul(&b), Err(Error::ExponentOverflow)));
    }

    #[test]
    fn divmask_never_rejects_a_divisor() {
        let mut monos = Vec::new();
        for a in 0u16..4 {
            for b in 0u16..4 {
                for c in 0u16..4 {
                    monos.push(m(&[a, b, c]));
                }
            }
        }
        for x in &monos {
            for y in &monos {
                if x.divides(y) {
                    assert!(super::mask_may_divide(x.divmask(), y.divmask()));
                }
            }
        }
    }

    #[test]
    fn shifted_comparisons_agree_with_materialized_products() {
        let ord = MonomialOrder::DegRevLex;
        let mut monos = Vec::new();
        for a in 0u16..3 {
            for b in 0u16..3 {
                for c in 0u16..3 {
                    monos.push(m(&[a, b, c]));
                }
            }
        }
        for target in &monos {
            for div in monos.iter().filter(|d| d.divides(target)) {
                let t = target.quot(div);
                for tau in &monos {
                    for sigma in &monos {
                        assert_eq!(
                            ord.cmp_shifted(target, div, tau, sigma),
                            ord.cmp(&t.mul(tau), sigma)
                        );
                    }
                }
                for div_b in monos.iter().filter(|d| d.divides(target)) {
                    let tb = target.quot(div_b);
                    for tau_a in &monos {
                        for tau_b in &monos {
                            assert_eq!(
                                ord.cmp_shifted_pair(div, tau_a, div_b, tau_b),
                                ord.cmp(&t.mul(tau_a), &tb.mul(tau_b))
                            );
                        }
                    }
                }
            }
        }
    }
}
