//! Classical Buchberger engine, interreduction and Groebner verification.
//!
//! This is the independent ground truth the signature engine is checked
//! against: plain pair-queue Buchberger with only the coprime-lcm
//! criterion, full normal forms everywhere, and reduced bases as the
//! canonical output form.

use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::poly::{Polynomial, Ring};

/// A reduced Groebner basis: monic members, sorted ascending by leading
/// monomial, no term of any member divisible by another member's leading
/// monomial.
#[derive(Debug, Clone, PartialEq)]
pub struct GroebnerBasis {
    pub polys: Vec<Polynomial>,
}

/// Statistics of an oracle run, for the `buchberger` CLI strategy.
#[derive(Debug, Clone, Copy, Default)]
pub struct OracleStats {
    pub pairs_reduced: u64,
    pub zero_reductions: u64,
}

/// Buchberger's algorithm with normal (ascending lcm degree) pair
/// selection and the first criterion only.
pub fn buchberger(ring: &Ring, input: &[Polynomial]) -> Result<GroebnerBasis> {
    buchberger_with_stats(ring, input).map(|(gb, _)| gb)
}

pub fn buchberger_with_stats(
    ring: &Ring,
    input: &[Polynomial],
) -> Result<(GroebnerBasis, OracleStats)> {
    let mut basis: Vec<Polynomial> = input
        .iter()
        .filter(|p| !p.is_zero())
        .map(|p| ring.make_monic(p))
        .collect();
    if basis.is_empty() {
        return Err(Error::EmptyInput);
    }
    let mut stats = OracleStats::default();

    // Pair queue keyed by (lcm degree, lcm, i, j); kept sorted descending
    // so the minimal pair pops off the back.
    let mut pairs: Vec<(Monomial, usize, usize)> = Vec::new();
    for i in 0..basis.len() {
        for j in 0..i {
            pairs.push((basis[i].lm().lcm(basis[j].lm()), j, i));
        }
    }
    sort_pairs(ring, &mut pairs);

    while let Some((lcm, i, j)) = pairs.pop() {
        // First criterion: coprime leading monomials reduce to zero.
        if basis[i].lm().coprime(basis[j].lm()) {
            continue;
        }
        let s = ring.s_polynomial(&basis[i], &basis[j])?;
        stats.pairs_reduced += 1;
        let r = ring.normal_form(&s, &basis);
        if r.is_zero() {
            stats.zero_reductions += 1;
            continue;
        }
        let r = ring.make_monic(&r);
        debug_assert!(ring.mono_cmp(r.lm(), &lcm) == std::cmp::Ordering::Less);
        let k = basis.len();
        for (idx, g) in basis.iter().enumerate() {
            debug_assert!(!g.is_zero());
            pairs.push((g.lm().lcm(r.lm()), idx, k));
        }
        basis.push(r);
        sort_pairs(ring, &mut pairs);
    }

    Ok((interreduce(ring, &basis), stats))
}

fn sort_pairs(ring: &Ring, pairs: &mut [(Monomial, usize, usize)]) {
    pairs.sort_by(|a, b| {
        ring.mono_cmp(&b.0, &a.0)
            .then_with(|| (b.1, b.2).cmp(&(a.1, a.2)))
    });
}

/// Interreduction to the unique reduced basis: every member is replaced by
/// its normal form against the others until nothing changes, then the
/// survivors are normalized to monic and sorted ascending by leading
/// monomial. On a Groebner basis this produces the reduced basis.
pub fn interreduce(ring: &Ring, basis: &[Polynomial]) -> GroebnerBasis {
    let mut polys: Vec<Polynomial> = basis
        .iter()
        .filter(|p| !p.is_zero())
        .map(|p| ring.make_monic(p))
        .collect();
    // Deterministic staging order regardless of input enumeration.
    polys.sort_by(|a, b| cmp_poly(ring, a, b));
    polys.dedup();

    loop {
        let mut changed = false;
        let mut i = 0;
        while i < polys.len() {
            let p = polys.remove(i);
            let r = ring.normal_form(&p, &polys);
            if r.is_zero() {
                changed = true;
                continue;
            }
            let r = ring.make_monic(&r);
            if r != p {
                changed = true;
            }
            polys.insert(i, r);
            i += 1;
        }
        if !changed {
            break;
        }
    }
    // Reduced members have pairwise distinct leading monomials.
    polys.sort_by(|a, b| ring.mono_cmp(a.lm(), b.lm()));
    GroebnerBasis { polys }
}

fn cmp_poly(ring: &Ring, a: &Polynomial, b: &Polynomial) -> std::cmp::Ordering {
    for (ta, tb) in a.terms().iter().zip(b.terms().iter()) {
        let c = ring
            .mono_cmp(&ta.mono, &tb.mono)
            .then_with(|| ta.coeff.cmp(&tb.coeff));
        if c != std::cmp::Ordering::Equal {
            return c;
        }
    }
    a.num_terms().cmp(&b.num_terms())
}

/// True iff every pairwise S-polynomial reduces to zero modulo `basis`.
/// No criteria shortcuts here: this is the verifier.
pub fn is_groebner(ring: &Ring, basis: &[Polynomial]) -> bool {
    let nonzero: Vec<&Polynomial> = basis.iter().filter(|p| !p.is_zero()).collect();
    for i in 0..nonzero.len() {
        for j in 0..i {
            let s = ring
                .s_polynomial(nonzero[i], nonzero[j])
                .expect("nonzero by construction");
            if !ring.normal_form(&s, basis).is_zero() {
                return false;
            }
        }
    }
    true
}

/// Reduced-basis equality; both sides must already be reduced, so this is
/// set equality of the sorted member lists.
pub fn ideals_equal(ring: &Ring, a: &GroebnerBasis, b: &GroebnerBasis) -> Result<bool> {
    if let (Some(p), Some(q)) = (a.polys.first(), b.polys.first()) {
        if p.lm().nvars() != q.lm().nvars() {
            return Err(Error::OrderMismatch);
        }
    }
    let _ = ring;
    Ok(a.polys == b.polys)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::monomial::MonomialOrder;

    fn ring2() -> Ring {
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

    /// Hand Buchberger run for {x^2 - y, xy - 1}:
    ///   Spol(f1, f2) = y*f1 - x*f2 = x - y^2, irreducible, add y^2 - x.
    ///   Spol(f1, f3) skipped: lm coprime (x^2, y^2).
    ///   Spol(f2, f3) = y*f2 - x*f3 = x^2 - y, reduces to zero by f1.
    #[test]
    fn toy_basis_two_spolynomials() {
        let r = ring2();
        let f1 = p(&r, &[(1, &[2, 0]), (-1, &[0, 1])]);
        let f2 = p(&r, &[(1, &[1, 1]), (-1, &[0, 0])]);
        let gb = buchberger(&r, &[f1.clone(), f2.clone()]).unwrap();
        let expected = vec![
            p(&r, &[(1, &[1, 1]), (-1, &[0, 0])]), // xy - 1
            p(&r, &[(1, &[2, 0]), (-1, &[0, 1])]), // x^2 - y
            p(&r, &[(1, &[0, 2]), (-1, &[1, 0])]), // y^2 - x
        ];
        let expected = interreduce(&r, &expected);
        assert_eq!(gb, expected);
    }

    #[test]
    fn constant_gives_unit_ideal() {
        let r = ring2();
        let c = p(&r, &[(7, &[0, 0])]);
        let gb = buchberger(&r, &[c]).unwrap();
        assert_eq!(gb.polys, vec![p(&r, &[(1, &[0, 0])])]);
    }

    #[test]
    fn coprime_pair_already_a_basis() {
        let r = ring2();
        let gb = buchberger(&r, &[p(&r, &[(1, &[1, 0])]), p(&r, &[(1, &[0, 1])])]).unwrap();
        assert_eq!(
            gb.polys,
            vec![p(&r, &[(1, &[0, 1])]), p(&r, &[(1, &[1, 0])])]
        );
    }

    #[test]
    fn is_groebner_detects_missing_member() {
        let r = ring2();
        let f1 = p(&r, &[(1, &[2, 0]), (-1, &[0, 1])]);
        let f2 = p(&r, &[(1, &[1, 1]), (-1, &[0, 0])]);
        // Spol(f1, f2) = x - y^2 does not reduce to zero.
        assert!(!is_groebner(&r, &[f1.clone(), f2.clone()]));
        let f3 = p(&r, &[(1, &[0, 2]), (-1, &[1, 0])]);
        assert!(is_groebner(&r, &[f1, f2, f3]));
        assert!(is_groebner(&r, &[]));
        assert!(is_groebner(&r, &[p(&r, &[(1, &[1, 0])])]));
    }

    #[test]
    fn interreduce_examples() {
        let r = ring2();
        // {x, x + y} -> {x, y}
        let gb = interreduce(&r, &[p(&r, &[(1, &[1, 0])]), p(&r, &[(1, &[1, 0]), (1, &[0, 1])])]);
        assert_eq!(
            gb.polys,
            vec![p(&r, &[(1, &[0, 1])]), p(&r, &[(1, &[1, 0])])]
        );
        // Idempotence and enumeration-order insensitivity.
        let again = interreduce(&r, &gb.polys);
        assert_eq!(gb, again);
        let mut rev = gb.polys.clone();
        rev.reverse();
        assert_eq!(interreduce(&r, &rev), gb);
    }

    #[test]
    fn ideals_equal_is_set_equality() {
        let r = ring2();
        let a = interreduce(&r, &[p(&r, &[(1, &[1, 0])])]);
        let b = interreduce(&r, &[p(&r, &[(1, &[1, 0])]), p(&r, &[(1, &[0, 1])])]);
        assert!(ideals_equal(&r, &a, &a.clone()).unwrap());
        assert!(!ideals_equal(&r, &a, &b).unwrap());
    }
}
