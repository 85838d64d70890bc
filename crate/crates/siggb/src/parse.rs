//! The `.poly` input format.
//!
//! ```text
//! vars: x,y
//! char: 32003
//! x^2 - y
//! x*y - 1
//! ```
//!
//! Header lines name the variables (ordered, greatest first) and the
//! characteristic; every following non-empty line is one polynomial.
//! Terms are `c*x^e*y^f` with `*` and `^` mandatory, whitespace
//! insignificant, `+`/`-` as separators, and coefficients reduced to
//! canonical residues.

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::monomial::{Monomial, MonomialOrder};
use crate::poly::{Polynomial, Ring};
use crate::systems::SystemSpec;

pub fn parse_system(name: &str, text: &str) -> Result<SystemSpec> {
    let mut lines = text.lines().enumerate();

    let (vars_lno, vars_line) = next_content_line(&mut lines)
        .ok_or_else(|| parse_err(1, 1, "missing `vars:` header"))?;
    let var_names = parse_vars_header(vars_lno, vars_line)?;

    let (char_lno, char_line) = next_content_line(&mut lines)
        .ok_or_else(|| parse_err(vars_lno + 1, 1, "missing `char:` header"))?;
    let characteristic = parse_char_header(char_lno, char_line)?;
    let field = match PrimeField::new(characteristic) {
        Ok(f) => f,
        Err(Error::NotPrime(p)) => {
            return Err(parse_err(char_lno + 1, 1, &format!("{p} is not prime")))
        }
        Err(e) => return Err(e),
    };
    let ring = Ring::new(field, var_names, MonomialOrder::DegRevLex);

    let mut gens = Vec::new();
    for (lno, line) in lines {
        if line.trim().is_empty() {
            continue;
        }
        let poly = parse_polynomial(&ring, lno, line)?;
        if poly.is_zero() {
            return Err(parse_err(lno + 1, 1, "polynomial is zero in the field"));
        }
        gens.push(poly);
    }
    if gens.is_empty() {
        return Err(Error::EmptyInput);
    }
    Ok(SystemSpec {
        name: name.to_string(),
        ring,
        gens,
    })
}

/// Renders a system in the same grammar `parse_system` accepts.
pub fn render_system(spec: &SystemSpec) -> String {
    let mut out = String::new();
    out.push_str("vars: ");
    out.push_str(&spec.ring.var_names().join(","));
    out.push('\n');
    out.push_str(&format!("char: {}\n", spec.ring.field().modulus()));
    for g in &spec.gens {
        out.push_str(&spec.ring.render(g));
        out.push('\n');
    }
    out
}

fn next_content_line<'a, I: Iterator<Item = (usize, &'a str)>>(
    lines: &mut I,
) -> Option<(usize, &'a str)> {
    lines.find(|(_, l)| !l.trim().is_empty())
}

fn parse_err(line: usize, col: usize, msg: &str) -> Error {
    Error::Parse {
        line,
        col,
        msg: msg.to_string(),
    }
}

fn parse_vars_header(lno: usize, line: &str) -> Result<Vec<String>> {
    let rest = line
        .trim()
        .strip_prefix("vars:")
        .ok_or_else(|| parse_err(lno + 1, 1, "expected `vars:` header"))?;
    let names: Vec<String> = rest
        .split(',')
        .map(|s| s.trim().to_string())
        .filter(|s| !s.is_empty())
        .collect();
    if names.is_empty() {
        return Err(parse_err(lno + 1, 1, "no variables listed"));
    }
    for n in &names {
        let mut chars = n.chars();
        let head_ok = chars.next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_');
        if !head_ok || !n.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
            return Err(parse_err(lno + 1, 1, &format!("invalid variable name `{n}`")));
        }
    }
    let mut dedup = names.clone();
    dedup.sort();
    dedup.dedup();
    if dedup.len() != names.len() {
        return Err(parse_err(lno + 1, 1, "duplicate variable name"));
    }
    Ok(names)
}

fn parse_char_header(lno: usize, line: &str) -> Result<u64> {
    let rest = line
        .trim()
        .strip_prefix("char:")
        .ok_or_else(|| parse_err(lno + 1, 1, "expected `char:` header"))?;
    rest.trim()
        .parse::<u64>()
        .map_err(|_| parse_err(lno + 1, 1, "characteristic is not a number"))
}

struct Scanner<'a> {
    chars: Vec<char>,
    pos: usize,
    line: usize,
    src: std::marker::PhantomData<&'a str>,
}

impl<'a> Scanner<'a> {
    fn new(line_no: usize, text: &'a str) -> Self {
        Scanner {
            chars: text.chars().collect(),
            pos: 0,
            line: line_no + 1,
            src: std::marker::PhantomData,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<char> {
        self.skip_ws();
        let c = self.chars.get(self.pos).copied();
        if c.is_some() {
            self.pos += 1;
        }
        c
    }

    fn col(&self) -> usize {
        self.pos + 1
    }

    fn err(&self, msg: &str) -> Error {
        parse_err(self.line, self.col(), msg)
    }

    fn number(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a number"));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse::<u64>().map_err(|_| self.err("number too large"))
    }

    fn ident(&mut self) -> Option<String> {
        self.skip_ws();
        let start = self.pos;
        if self
            .chars
            .get(self.pos)
            .is_some_and(|c| c.is_ascii_alphabetic() || *c == '_')
        {
            self.pos += 1;
            while self
                .chars
                .get(self.pos)
                .is_some_and(|c| c.is_ascii_alphanumeric() || *c == '_')
            {
                self.pos += 1;
            }
            Some(self.chars[start..self.pos].iter().collect())
        } else {
            None
        }
    }
}

fn parse_polynomial(ring: &Ring, lno: usize, line: &str) -> Result<Polynomial> {
    let mut sc = Scanner::new(lno, line);
    let mut terms: Vec<(Monomial, u32)> = Vec::new();
    let field = *ring.field();
    let mut first = true;

    loop {
        let mut negative = false;
        match sc.peek() {
            None if first => return Err(sc.err("empty polynomial")),
            None => break,
            Some('+') => {
                sc.bump();
            }
            Some('-') => {
                sc.bump();
                negative = true;
            }
            Some(_) if first => {}
            Some(_) => return Err(sc.err("expected `+` or `-` between terms")),
        }
        first = false;

        let mut coeff: u32 = 1;
        let mut exps = vec![0u16; ring.nvars()];
        let mut saw_factor = false;

        if sc.peek().is_some_and(|c| c.is_ascii_digit()) {
            coeff = field.from_u64(sc.number()?);
            saw_factor = true;
        }
        loop {
            match sc.peek() {
                Some('*') => {
                    sc.bump();
                }
                _ if !saw_factor => {}
                _ => break,
            }
            let Some(name) = sc.ident() else {
                if saw_factor && sc.peek().is_none() {
                    return Err(sc.err("trailing `*`"));
                }
                return Err(sc.err("expected a variable"));
            };
            let var = ring
                .var_names()
                .iter()
                .position(|v| *v == name)
                .ok_or_else(|| sc.err(&format!("unknown variable `{name}`")))?;
            let mut exp: u64 = 1;
            if sc.peek() == Some('^') {
                sc.bump();
                exp = sc.number()?;
            }
            let exp = u16::try_from(exp).map_err(|_| sc.err("exponent out of range"))?;
            exps[var] = exps[var]
                .checked_add(exp)
                .ok_or_else(|| sc.err("exponent out of range"))?;
            saw_factor = true;
        }
        if !saw_factor {
            return Err(sc.err("empty term"));
        }
        if negative {
            coeff = field.neg(coeff);
        }
        terms.push((Monomial::new(&exps), coeff));
    }

    Ok(ring.poly_from_terms(terms))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_the_toy_system() {
        let s = parse_system("toy", "vars: x,y\nchar: 32003\nx^2 - y\nx*y - 1\n").unwrap();
        assert_eq!(s.gens.len(), 2);
        assert_eq!(s.ring.nvars(), 2);
        assert_eq!(s.ring.render(&s.gens[0]), "x^2 + 32002*y");
        assert_eq!(s.ring.render(&s.gens[1]), "x*y + 32002");
    }

    #[test]
    fn negative_coefficients_become_canonical_residues() {
        let s = parse_system("t", "vars: x\nchar: 7\n-1 + x\n").unwrap();
        assert_eq!(s.ring.render(&s.gens[0]), "x + 6");
    }

    #[test]
    fn rejects_unknown_variable_with_position() {
        let err = parse_system("t", "vars: x\nchar: 7\nx + y\n").unwrap_err();
        match err {
            Error::Parse { line, msg, .. } => {
                assert_eq!(line, 3);
                assert!(msg.contains("unknown variable"), "{msg}");
            }
            other => panic!("unexpected error: {other}"),
        }
    }

    #[test]
    fn rejects_non_prime_characteristic() {
        let err = parse_system("t", "vars: x\nchar: 32001\nx\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }), "{err}");
    }

    #[test]
    fn rejects_zero_polynomial_mod_p() {
        let err = parse_system("t", "vars: x\nchar: 7\n7*x\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }), "{err}");
    }

    #[test]
    fn whitespace_is_insignificant() {
        let a = parse_system("t", "vars: x,y\nchar: 7\n2 * x ^ 2 * y - 3\n").unwrap();
        let b = parse_system("t", "vars: x,y\nchar: 7\n2*x^2*y-3\n").unwrap();
        assert_eq!(a.gens, b.gens);
    }

    #[test]
    fn render_parse_roundtrip() {
        let src = "vars: x,y,z\nchar: 32003\nx^2*y + 4*z - 1\nx + 31*y^5\n";
        let s = parse_system("t", src).unwrap();
        let rendered = render_system(&s);
        let again = parse_system("t", &rendered).unwrap();
        assert_eq!(s.gens, again.gens);
        assert_eq!(s.ring, again.ring);
    }
}
