//! Sparse multivariate polynomials over a prime field, and the ring
//! context that carries the field, the variable count and the ordering.
//!
//! Term sequences are strictly descending in the ring ordering and hold no
//! zero coefficients; the zero polynomial is the empty sequence.

use crate::error::{Error, Result};
use crate::field::{Coeff, PrimeField};
use crate::monomial::{Monomial, MonomialOrder};
use std::cmp::Ordering;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Term {
    pub mono: Monomial,
    pub coeff: Coeff,
}

/// Sorted sparse polynomial. Construct through [`Ring`] so the term
/// invariants hold.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Polynomial {
    terms: Vec<Term>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial { terms: Vec::new() }
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    #[inline]
    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    #[inline]
    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Leading monomial; panics on zero. Callers check `is_zero` first.
    #[inline]
    pub fn lm(&self) -> &Monomial {
        &self.terms[0].mono
    }

    #[inline]
    pub fn lc(&self) -> Coeff {
        self.terms[0].coeff
    }
}

/// The polynomial ring `F_p[x_1..x_n]` with a fixed degree-compatible
/// ordering. All polynomial arithmetic lives here; values are immutable
/// and operations are pure.
#[derive(Debug, Clone, PartialEq)]
pub struct Ring {
    field: PrimeField,
    nvars: usize,
    order: MonomialOrder,
    var_names: Vec<String>,
}

impl Ring {
    pub fn new(field: PrimeField, var_names: Vec<String>, order: MonomialOrder) -> Self {
        Ring {
            field,
            nvars: var_names.len(),
            order,
            var_names,
        }
    }

    pub fn with_nvars(field: PrimeField, nvars: usize, order: MonomialOrder) -> Self {
        let var_names = (0..nvars).map(|i| format!("x{}", i + 1)).collect();
        Ring::new(field, var_names, order)
    }

    #[inline]
    pub fn field(&self) -> &PrimeField {
        &self.field
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.nvars
    }

    #[inline]
    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn var_names(&self) -> &[String] {
        &self.var_names
    }

    #[inline]
    pub fn mono_cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.order.cmp(a, b)
    }

    /// Builds a polynomial from arbitrary (monomial, coefficient) pairs:
    /// sorts, merges duplicates, drops zeros.
    pub fn poly_from_terms(&self, terms: Vec<(Monomial, Coeff)>) -> Polynomial {
        let mut terms: Vec<Term> = terms
            .into_iter()
            .map(|(mono, coeff)| {
                debug_assert_eq!(mono.nvars(), self.nvars);
                Term { mono, coeff }
            })
            .collect();
        terms.sort_by(|a, b| self.mono_cmp(&b.mono, &a.mono));
        let mut out: Vec<Term> = Vec::with_capacity(terms.len());
        for t in terms {
            match out.last_mut() {
                Some(last) if last.mono == t.mono => {
                    last.coeff = self.field.add(last.coeff, t.coeff);
                    if last.coeff == 0 {
                        out.pop();
                    }
                }
                _ => {
                    if t.coeff % self.field.modulus() != 0 {
                        out.push(Term {
                            mono: t.mono,
                            coeff: t.coeff % self.field.modulus(),
                        });
                    }
                }
            }
        }
        Polynomial { terms: out }
    }

    /// `p + c * t * q`, the basic merge step behind every reduction.
    pub fn add_scaled(&self, p: &Polynomial, c: Coeff, t: &Monomial, q: &Polynomial) -> Polynomial {
        if c == 0 || q.is_zero() {
            return p.clone();
        }
        let mut out = Vec::with_capacity(p.terms.len() + q.terms.len());
        let mut i = 0;
        let mut j = 0;
        while i < p.terms.len() && j < q.terms.len() {
            let qm = q.terms[j].mono.mul(t);
            match self.mono_cmp(&p.terms[i].mono, &qm) {
                Ordering::Greater => {
                    out.push(p.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(Term {
                        mono: qm,
                        coeff: self.field.mul(c, q.terms[j].coeff),
                    });
                    j += 1;
                }
                Ordering::Equal => {
                    let coeff = self
                        .field
                        .add(p.terms[i].coeff, self.field.mul(c, q.terms[j].coeff));
                    if coeff != 0 {
                        out.push(Term { mono: qm, coeff });
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&p.terms[i..]);
        while j < q.terms.len() {
            out.push(Term {
                mono: q.terms[j].mono.mul(t),
                coeff: self.field.mul(c, q.terms[j].coeff),
            });
            j += 1;
        }
        Polynomial { terms: out }
    }

    pub fn add(&self, p: &Polynomial, q: &Polynomial) -> Polynomial {
        self.add_scaled(p, 1, &Monomial::one(self.nvars), q)
    }

    pub fn sub(&self, p: &Polynomial, q: &Polynomial) -> Polynomial {
        self.add_scaled(
            p,
            self.field.neg(1),
            &Monomial::one(self.nvars),
            q,
        )
    }

    pub fn scale(&self, p: &Polynomial, c: Coeff) -> Polynomial {
        if c == 0 {
            return Polynomial::zero();
        }
        Polynomial {
            terms: p
                .terms
                .iter()
                .map(|t| Term {
                    mono: t.mono.clone(),
                    coeff: self.field.mul(t.coeff, c),
                })
                .collect(),
        }
    }

    /// `t * p` for a monomial `t`.
    pub fn mul_mono(&self, t: &Monomial, p: &Polynomial) -> Polynomial {
        Polynomial {
            terms: p
                .terms
                .iter()
                .map(|term| Term {
                    mono: term.mono.mul(t),
                    coeff: term.coeff,
                })
                .collect(),
        }
    }

    /// Full product; used by the certify-mode witness checks only.
    pub fn mul(&self, p: &Polynomial, q: &Polynomial) -> Polynomial {
        let mut acc = Polynomial::zero();
        for t in &p.terms {
            acc = self.add_scaled(&acc, t.coeff, &t.mono, q);
        }
        acc
    }

    pub fn make_monic(&self, p: &Polynomial) -> Polynomial {
        if p.is_zero() || p.lc() == 1 {
            return p.clone();
        }
        self.scale(p, self.field.inv(p.lc()))
    }

    /// The S-polynomial `(lcm/lm p) * p - (lc p / lc q) * (lcm/lm q) * q`.
    /// Only `q` is multiplied by a field element, so the `p` side stays
    /// monomial-monic.
    pub fn s_polynomial(&self, p: &Polynomial, q: &Polynomial) -> Result<Polynomial> {
        if p.is_zero() || q.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let lcm = p.lm().lcm(q.lm());
        let u = lcm.quot(p.lm());
        let v = lcm.quot(q.lm());
        let up = self.mul_mono(&u, p);
        let c = self.field.neg(self.field.div(p.lc(), q.lc()));
        Ok(self.add_scaled(&up, c, &v, q))
    }

    /// Full normal form: returns `r` congruent to `p` mod `<G>` with no
    /// term of `r` divisible by any leading monomial of `G`. Zero members
    /// of `G` are ignored.
    pub fn normal_form(&self, p: &Polynomial, basis: &[Polynomial]) -> Polynomial {
        let mut done: Vec<Term> = Vec::new();
        let mut work = p.clone();
        'outer: while !work.is_zero() {
            for g in basis {
                if !g.is_zero() && g.lm().divides(work.lm()) {
                    let t = work.lm().quot(g.lm());
                    let c = self.field.neg(self.field.div(work.lc(), g.lc()));
                    work = self.add_scaled(&work, c, &t, g);
                    continue 'outer;
                }
            }
            // Leading term is irreducible: retire it and keep going on the
            // tail so the result is a full normal form.
            done.push(work.terms.remove(0));
        }
        Polynomial { terms: done }
    }

    /// Renders with `*` and `^` mandatory, matching the input grammar.
    pub fn render(&self, p: &Polynomial) -> String {
        if p.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, t) in p.terms.iter().enumerate() {
            if k > 0 {
                out.push_str(" + ");
            }
            let mut factors: Vec<String> = Vec::new();
            if t.coeff != 1 || t.mono.is_one() {
                factors.push(t.coeff.to_string());
            }
            for (i, &e) in t.mono.exponents().iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(self.var_names[i].clone()),
                    _ => factors.push(format!("{}^{}", self.var_names[i], e)),
                }
            }
            out.push_str(&factors.join("*"));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring2() -> Ring {
        // F_32003[x, y], degrevlex, x > y
        Ring::new(
            PrimeField::new(32003).unwrap(),
            vec!["x".into(), "y".into()],
            MonomialOrder::DegRevLex,
        )
    }

    fn p(ring: &Ring, terms: &[(i64, &[u16])]) -> Polynomial {
        ring.poly_from_terms(
            terms
                .iter()
                .map(|&(c, e)| (Monomial::new(e), ring.field().from_i64(c)))
                .collect(),
        )
    }

    #[test]
    fn spol_hand_expansions() {
        let r = ring2();
        // p = x^2 + y, q = xy + x  =>  Spol = y*p - x*q = -x^2 + y^2, lm = x^2
        let a = p(&r, &[(1, &[2, 0]), (1, &[0, 1])]);
        let b = p(&r, &[(1, &[1, 1]), (1, &[1, 0])]);
        let s = r.s_polynomial(&a, &b).unwrap();
        assert_eq!(s, p(&r, &[(-1, &[2, 0]), (1, &[0, 2])]));
        assert_eq!(s.lm(), &Monomial::new(&[2, 0]));

        // p = x^2 - y, q = xy - 1  =>  Spol = x - y^2, lm = y^2
        let a = p(&r, &[(1, &[2, 0]), (-1, &[0, 1])]);
        let b = p(&r, &[(1, &[1, 1]), (-1, &[0, 0])]);
        let s = r.s_polynomial(&a, &b).unwrap();
        assert_eq!(s, p(&r, &[(-1, &[0, 2]), (1, &[1, 0])]));
        assert_eq!(s.lm(), &Monomial::new(&[0, 2]));
    }

    #[test]
    fn spol_self_pair_cancels() {
        let r = ring2();
        let a = p(&r, &[(1, &[2, 0]), (1, &[0, 1])]);
        assert!(r.s_polynomial(&a, &a).unwrap().is_zero());
    }

    #[test]
    fn spol_zero_input_is_error() {
        let r = ring2();
        let a = p(&r, &[(1, &[1, 0])]);
        assert!(matches!(
            r.s_polynomial(&a, &Polynomial::zero()),
            Err(Error::ZeroPolynomial)
        ));
    }

    #[test]
    fn normal_form_examples() {
        let r = ring2();
        let g = vec![
            p(&r, &[(1, &[2, 0]), (-1, &[0, 1])]), // x^2 - y
            p(&r, &[(1, &[1, 1]), (-1, &[0, 0])]), // xy - 1
            p(&r, &[(1, &[0, 2]), (-1, &[1, 0])]), // y^2 - x
        ];
        // x - y^2 reduces to zero by y^2 - x.
        let q = p(&r, &[(1, &[1, 0]), (-1, &[0, 2])]);
        assert!(r.normal_form(&q, &g).is_zero());
        // Ideal membership of x^3 - y^3 via the division chain.
        let q = p(&r, &[(1, &[3, 0]), (-1, &[0, 3])]);
        assert!(r.normal_form(&q, &g).is_zero());
        // Reduction modulo the empty set is the identity.
        assert_eq!(r.normal_form(&q, &[]), q);
    }

    #[test]
    fn normal_form_reduces_tails_too() {
        let r = ring2();
        let g = vec![p(&r, &[(1, &[0, 1])])]; // y
        let q = p(&r, &[(1, &[1, 0]), (1, &[0, 1])]); // x + y
        assert_eq!(r.normal_form(&q, &g), p(&r, &[(1, &[1, 0])]));
    }

    #[test]
    fn render_roundtrip_shape() {
        let r = ring2();
        let q = p(&r, &[(1, &[2, 1]), (-3, &[0, 1]), (5, &[0, 0])]);
        assert_eq!(r.render(&q), "x^2*y + 32000*y + 5");
    }
}
