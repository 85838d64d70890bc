//! Benchmark polynomial systems: the Katsura, Cyclic and Eco families as
//! generators, plus the named-system lookup used by the CLI.

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::monomial::{Monomial, MonomialOrder};
use crate::poly::{Polynomial, Ring};

pub const DEFAULT_CHAR: u64 = 32003;

/// A named input system: ring plus generator list, in the order the
/// incremental engine consumes them.
#[derive(Debug, Clone)]
pub struct SystemSpec {
    pub name: String,
    pub ring: Ring,
    pub gens: Vec<Polynomial>,
}

impl SystemSpec {
    fn validate(self) -> Result<Self> {
        if self.gens.is_empty() {
            return Err(Error::EmptyInput);
        }
        if self.gens.iter().any(|g| g.is_zero()) {
            return Err(Error::ZeroPolynomial);
        }
        Ok(self)
    }
}

fn mono(nvars: usize, assign: &[(usize, u16)]) -> Monomial {
    let mut exps = vec![0u16; nvars];
    for &(i, e) in assign {
        exps[i] += e;
    }
    Monomial::new(&exps)
}

/// Cyclic-n: the elementary cyclic sums of degree 1..n-1, and the full
/// product minus one. `gen_cyclic(2)` is `{x + y, x*y - 1}`.
pub fn gen_cyclic(n: usize, characteristic: u64) -> Result<SystemSpec> {
    if n < 2 {
        return Err(Error::EmptyInput);
    }
    let field = PrimeField::new(characteristic)?;
    let names = (1..=n).map(|i| format!("x{i}")).collect();
    let ring = Ring::new(field, names, MonomialOrder::DegRevLex);
    let mut gens = Vec::with_capacity(n);
    for d in 1..n {
        let mut terms = Vec::with_capacity(n);
        for i in 0..n {
            let assign: Vec<(usize, u16)> = (0..d).map(|j| ((i + j) % n, 1)).collect();
            terms.push((mono(n, &assign), 1u32));
        }
        gens.push(ring.poly_from_terms(terms));
    }
    let all: Vec<(usize, u16)> = (0..n).map(|i| (i, 1)).collect();
    gens.push(ring.poly_from_terms(vec![
        (mono(n, &all), 1),
        (Monomial::one(n), field.from_i64(-1)),
    ]));
    SystemSpec {
        name: format!("cyclic{n}"),
        ring,
        gens,
    }
    .validate()
}

/// Katsura-n: n+1 variables `u0..un`. The linear relation comes first,
/// then the quadratic convolution relations for m = 0..n-1:
/// `sum_{|k|<=n, |m-k|<=n} u_|k| * u_|m-k| = u_m`.
pub fn gen_katsura(n: usize, characteristic: u64) -> Result<SystemSpec> {
    if n < 1 {
        return Err(Error::EmptyInput);
    }
    let field = PrimeField::new(characteristic)?;
    let nv = n + 1;
    let names = (0..nv).map(|i| format!("u{i}")).collect();
    let ring = Ring::new(field, names, MonomialOrder::DegRevLex);
    let mut gens = Vec::with_capacity(nv);

    // u0 + 2*u1 + ... + 2*un - 1
    let mut lin = vec![(mono(nv, &[(0, 1)]), 1u32)];
    for i in 1..nv {
        lin.push((mono(nv, &[(i, 1)]), 2));
    }
    lin.push((Monomial::one(nv), field.from_i64(-1)));
    gens.push(ring.poly_from_terms(lin));

    for m in 0..n {
        let mut terms: Vec<(Monomial, u32)> = Vec::new();
        for k in -(n as i64)..=(n as i64) {
            let j = (m as i64) - k;
            if j.abs() > n as i64 {
                continue;
            }
            terms.push((mono(nv, &[(k.unsigned_abs() as usize, 1), (j.unsigned_abs() as usize, 1)]), 1));
        }
        terms.push((mono(nv, &[(m, 1)]), field.from_i64(-1)));
        gens.push(ring.poly_from_terms(terms));
    }
    SystemSpec {
        name: format!("katsura{n}"),
        ring,
        gens,
    }
    .validate()
}

/// Eco-n: n variables `x1..xn`. For k = 1..n-1 the relation
/// `(x_k + sum_{i=1}^{n-1-k} x_i * x_{i+k}) * x_n = k`, and finally
/// `x_1 + ... + x_{n-1} + 1 = 0`.
pub fn gen_eco(n: usize, characteristic: u64) -> Result<SystemSpec> {
    if n < 3 {
        return Err(Error::EmptyInput);
    }
    let field = PrimeField::new(characteristic)?;
    let names = (1..=n).map(|i| format!("x{i}")).collect();
    let ring = Ring::new(field, names, MonomialOrder::DegRevLex);
    let last = n - 1; // index of x_n
    let mut gens = Vec::with_capacity(n);
    for k in 1..n {
        let mut terms = vec![(mono(n, &[(k - 1, 1), (last, 1)]), 1u32)];
        for i in 1..(n - k) {
            terms.push((mono(n, &[(i - 1, 1), (i + k - 1, 1), (last, 1)]), 1));
        }
        terms.push((Monomial::one(n), field.from_i64(-(k as i64))));
        gens.push(ring.poly_from_terms(terms));
    }
    let mut lin: Vec<(Monomial, u32)> = (0..n - 1).map(|i| (mono(n, &[(i, 1)]), 1u32)).collect();
    lin.push((Monomial::one(n), 1));
    gens.push(ring.poly_from_terms(lin));
    SystemSpec {
        name: format!("eco{n}"),
        ring,
        gens,
    }
    .validate()
}

/// Resolves `katsuraN`, `cyclicN` or `ecoN`. Paths to `.poly` files are
/// handled by the caller.
pub fn by_name(name: &str, characteristic: u64) -> Option<Result<SystemSpec>> {
    for (prefix, f) in [
        ("katsura", gen_katsura as fn(usize, u64) -> Result<SystemSpec>),
        ("cyclic", gen_cyclic),
        ("eco", gen_eco),
    ] {
        if let Some(rest) = name.strip_prefix(prefix) {
            if let Ok(n) = rest.parse::<usize>() {
                return Some(f(n, characteristic));
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_small_cases() {
        let s = gen_cyclic(2, DEFAULT_CHAR).unwrap();
        assert_eq!(s.gens.len(), 2);
        assert_eq!(s.ring.render(&s.gens[0]), "x1 + x2");
        assert_eq!(s.ring.render(&s.gens[1]), "x1*x2 + 32002");

        let s = gen_cyclic(3, DEFAULT_CHAR).unwrap();
        assert_eq!(s.ring.render(&s.gens[0]), "x1 + x2 + x3");
        assert_eq!(s.ring.render(&s.gens[1]), "x1*x2 + x1*x3 + x2*x3");
        assert_eq!(s.ring.render(&s.gens[2]), "x1*x2*x3 + 32002");
    }

    #[test]
    fn katsura_one() {
        let s = gen_katsura(1, DEFAULT_CHAR).unwrap();
        assert_eq!(s.gens.len(), 2);
        assert_eq!(s.ring.render(&s.gens[0]), "u0 + 2*u1 + 32002");
        // u0^2 + 2 u1^2 - u0
        assert_eq!(s.ring.render(&s.gens[1]), "u0^2 + 2*u1^2 + 32002*u0");
    }

    #[test]
    fn eco_small_shape() {
        let s = gen_eco(4, DEFAULT_CHAR).unwrap();
        assert_eq!(s.gens.len(), 4);
        assert_eq!(
            s.ring.render(&s.gens[0]),
            "x1*x2*x4 + x2*x3*x4 + x1*x4 + 32002"
        );
        assert_eq!(s.ring.render(&s.gens[1]), "x1*x3*x4 + x2*x4 + 32001");
        assert_eq!(s.ring.render(&s.gens[2]), "x3*x4 + 32000");
        assert_eq!(s.ring.render(&s.gens[3]), "x1 + x2 + x3 + 1");
    }

    #[test]
    fn lookup_by_name() {
        assert!(by_name("cyclic5", DEFAULT_CHAR).unwrap().is_ok());
        assert!(by_name("katsura6", DEFAULT_CHAR).unwrap().is_ok());
        assert!(by_name("eco7", DEFAULT_CHAR).unwrap().is_ok());
        assert!(by_name("noether9", DEFAULT_CHAR).is_none());
        assert!(by_name("cyclicx", DEFAULT_CHAR).is_none());
    }
}
