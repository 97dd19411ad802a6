//! Text form of polynomials.
//!
//! Grammar (whitespace ignored):
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary ('*' unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' integer)?
//! atom   := integer ('/' integer)? | variable | '(' expr ')'
//! ```
//!
//! Multiplication must be written explicitly; `2x0` and `x0(x1)` are
//! rejected. Printing is canonical: terms in descending graded-lex order.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{Monomial, MultiPoly};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Ordered variable names for printing and parsing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VarNames(Vec<String>);

impl VarNames {
    pub fn new(names: Vec<String>) -> Self {
        VarNames(names)
    }

    /// `prefix0, prefix1, ...`
    pub fn indexed(prefix: &str, count: usize) -> Self {
        VarNames((0..count).map(|i| format!("{prefix}{i}")).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|n| n == name)
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Op(char),
}

fn tokenize(s: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = s.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let v: BigInt = s[start..i].parse().expect("digits");
            out.push((start, Tok::Int(v)));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push((start, Tok::Ident(s[start..i].to_string())));
        } else if "+-*^/()".contains(c) {
            out.push((i, Tok::Op(c)));
            i += 1;
        } else {
            return Err(Error::Parse {
                pos: i,
                msg: format!("unexpected character `{c}`"),
            });
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    names: &'a VarNames,
    end: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos: self.offset(),
            msg: msg.into(),
        })
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Tok::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<MultiPoly> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<MultiPoly> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = &acc * &self.unary()?;
            } else {
                match self.peek() {
                    Some(Tok::Int(_) | Tok::Ident(_) | Tok::Op('(')) => {
                        return self.err("implicit multiplication is not allowed; use `*`")
                    }
                    _ => return Ok(acc),
                }
            }
        }
    }

    fn unary(&mut self) -> Result<MultiPoly> {
        if self.eat('-') {
            return Ok(-self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<MultiPoly> {
        let base = self.atom()?;
        if self.eat('^') {
            match self.peek().cloned() {
                Some(Tok::Int(e)) => {
                    self.pos += 1;
                    let e: u32 = e.try_into().or_else(|_| self.err("exponent too large"))?;
                    return Ok(base.pow(e));
                }
                Some(Tok::Op('-')) => return self.err("negative exponents are not allowed"),
                _ => return self.err("expected an integer exponent"),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<MultiPoly> {
        let arity = self.names.len();
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                let mut q = BigRational::from_integer(n);
                if self.eat('/') {
                    match self.peek().cloned() {
                        Some(Tok::Int(d)) if !d.is_zero() => {
                            self.pos += 1;
                            q /= BigRational::from_integer(d);
                        }
                        Some(Tok::Int(_)) => return self.err("zero denominator"),
                        _ => return self.err("`/` is only allowed inside a rational literal"),
                    }
                }
                Ok(MultiPoly::constant(arity, Scalar::Rational(q)))
            }
            Some(Tok::Ident(name)) => match self.names.index_of(&name) {
                Some(i) => {
                    self.pos += 1;
                    Ok(MultiPoly::var(arity, i))
                }
                None => self.err(format!("unknown variable `{name}`")),
            },
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(')') {
                    return self.err("expected `)`");
                }
                Ok(inner)
            }
            Some(Tok::Op(c)) => self.err(format!("unexpected `{c}`")),
            None => self.err("unexpected end of input"),
        }
    }
}

/// Parses a polynomial over the rationals in the variables `names`.
pub fn parse_poly(text: &str, names: &VarNames) -> Result<MultiPoly> {
    let toks = tokenize(text)?;
    let mut p = Parser {
        toks,
        pos: 0,
        names,
        end: text.len(),
    };
    let out = p.expr()?;
    if p.pos != p.toks.len() {
        return p.err("trailing input");
    }
    Ok(out)
}

fn format_monomial(m: &Monomial, names: &VarNames) -> String {
    let parts: Vec<String> = m
        .exponents()
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(i, &e)| {
            let name = names
                .names()
                .get(i)
                .cloned()
                .unwrap_or_else(|| format!("x{i}"));
            if e == 1 {
                name
            } else {
                format!("{name}^{e}")
            }
        })
        .collect();
    parts.join("*")
}

pub(super) fn format_poly(p: &MultiPoly, names: &VarNames) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (k, (m, c)) in p.terms().enumerate() {
        let (negative, magnitude) = match c {
            Scalar::Rational(q) => (q.is_negative(), Scalar::Rational(q.abs())),
            Scalar::Mod(..) => (false, c.clone()),
        };
        match (k, negative) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        let mono = format_monomial(m, names);
        let unit = match &magnitude {
            Scalar::Rational(q) => q.is_one(),
            Scalar::Mod(v, _) => *v == 1,
        };
        if mono.is_empty() {
            out.push_str(&magnitude.to_string());
        } else if unit {
            out.push_str(&mono);
        } else {
            out.push_str(&format!("{magnitude}*{mono}"));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names() -> VarNames {
        VarNames::indexed("a", 5)
    }

    #[test]
    fn prints_in_grlex_order() {
        let q = parse_poly("a0*a4 - 4*a1*a3 + 3*a2^2", &names()).unwrap();
        assert_eq!(q.to_text(&names()), "a0*a4 - 4*a1*a3 + 3*a2^2");
    }

    #[test]
    fn parses_rationals_and_parentheses() {
        let p = parse_poly("-(a0 + 1/2)^2 + 3/4", &names()).unwrap();
        assert_eq!(p.to_text(&names()), "-a0^2 - a0 + 1/2");
    }

    #[test]
    fn rejects_implicit_multiplication() {
        assert!(matches!(
            parse_poly("2a0", &names()),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            parse_poly("a0(a1)", &names()),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            parse_poly("a0 a1", &names()),
            Err(Error::Parse { .. })
        ));
    }

    #[test]
    fn rejects_bad_input() {
        for bad in ["a5", "a0/a1", "1/0", "a0^-1", "(a0", "a0 +", "a0 $ a1", ""] {
            assert!(parse_poly(bad, &names()).is_err(), "{bad}");
        }
    }

    #[test]
    fn zero_and_constants() {
        assert_eq!(
            parse_poly("a0 - a0", &names()).unwrap().to_text(&names()),
            "0"
        );
        assert_eq!(
            parse_poly("-7/3", &names()).unwrap().to_text(&names()),
            "-7/3"
        );
    }
}
