//! Text form of polynomials: `3/2*a^2*x1*b - (1 + z)*b^3`.
//!
//! Terms print in descending graded-lex order. Irrational coefficients are
//! parenthesised sums in powers of `z` = ζ_n. The parser accepts the same
//! form and, more generally, any `+ - * ^ ( )` expression whose divisions
//! are by nonzero constants.

use num_traits::{One, Signed};

use super::{MultiPoly, PolyError, VarNames};
use crate::exactalg::rat::rat_to_string;
use crate::exactalg::Cyclo;

pub(super) fn render(names: &VarNames, p: &MultiPoly) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (m, c)) in p.terms().collect::<Vec<_>>().into_iter().rev().enumerate() {
        let mono: Vec<String> = m
            .0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(v, &e)| {
                let n = names.names().get(v).cloned().unwrap_or_else(|| format!("v{v}"));
                if e == 1 {
                    n
                } else {
                    format!("{n}^{e}")
                }
            })
            .collect();
        let mono = mono.join("*");
        let (neg, coeff) = match c.as_rational() {
            Some(r) => {
                let neg = r.is_negative();
                let a = r.abs();
                let s = if a.is_one() && !mono.is_empty() { String::new() } else { rat_to_string(&a) };
                (neg, s)
            }
            None => (false, format!("({c})")),
        };
        match (i, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        out.push_str(&coeff);
        if !coeff.is_empty() && !mono.is_empty() {
            out.push('*');
        }
        out.push_str(&mono);
    }
    out
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(String),
    Ident(String),
    Op(char),
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, PolyError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let s = i;
            while i < bytes.len() && (bytes[i] as char).is_ascii_digit() {
                i += 1;
            }
            out.push((s, Tok::Num(text[s..i].to_string())));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let s = i;
            while i < bytes.len() && ((bytes[i] as char).is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push((s, Tok::Ident(text[s..i].to_string())));
        } else if "+-*/^()".contains(c) {
            out.push((i, Tok::Op(c)));
            i += 1;
        } else {
            return Err(PolyError::Parse { pos: i, msg: format!("unexpected character {c:?}") });
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    names: &'a VarNames,
    conductor: u32,
    end: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn at(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn err(&self, msg: impl Into<String>) -> PolyError {
        PolyError::Parse { pos: self.at(), msg: msg.into() }
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Op(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<MultiPoly, PolyError> {
        let n = self.names.len();
        let mut acc = MultiPoly::zero(n, self.conductor);
        let mut sign = if self.eat('-') {
            -1
        } else {
            self.eat('+');
            1
        };
        loop {
            let t = self.term()?;
            acc = if sign < 0 { &acc - &t } else { &acc + &t };
            if self.eat('+') {
                sign = 1;
            } else if self.eat('-') {
                sign = -1;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<MultiPoly, PolyError> {
        let mut acc = self.factor()?;
        loop {
            if self.eat('*') {
                acc = &acc * &self.factor()?;
            } else if self.eat('/') {
                let den = self.factor()?;
                let c = den
                    .as_constant()
                    .filter(|c| !c.is_zero())
                    .ok_or_else(|| self.err("division only by nonzero constants"))?;
                acc = acc.scale(&c.inv().expect("nonzero"));
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<MultiPoly, PolyError> {
        let base = self.atom()?;
        if self.eat('^') {
            match self.peek().cloned() {
                Some(Tok::Num(s)) => {
                    self.pos += 1;
                    let e: u32 = s.parse().map_err(|_| self.err("exponent too large"))?;
                    Ok(base.pow(e))
                }
                _ => Err(self.err("expected integer exponent")),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<MultiPoly, PolyError> {
        let n = self.names.len();
        match self.peek().cloned() {
            Some(Tok::Num(s)) => {
                self.pos += 1;
                let v: num_bigint::BigInt = s.parse().map_err(|_| self.err("bad number"))?;
                let r = crate::exactalg::Rat::from_integer(v);
                Ok(MultiPoly::constant(n, Cyclo::from_rat(self.conductor, &r)))
            }
            Some(Tok::Ident(s)) => {
                self.pos += 1;
                if let Some(i) = self.names.index(&s) {
                    Ok(MultiPoly::var(n, self.conductor, i))
                } else if s == "z" {
                    Ok(MultiPoly::constant(n, Cyclo::zeta_pow(self.conductor, 1)))
                } else {
                    Err(PolyError::UnknownVariable(s))
                }
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(self.err("expected ')'"));
                }
                Ok(e)
            }
            _ => Err(self.err("expected number, variable or '('")),
        }
    }
}

pub(super) fn parse(names: &VarNames, text: &str, conductor: u32) -> Result<MultiPoly, PolyError> {
    let toks = lex(text)?;
    let mut p = Parser { toks, pos: 0, names, conductor, end: text.len() };
    let out = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(p.err("trailing input"));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn errors_carry_positions() {
        let names = VarNames::slots(2, 1);
        assert!(matches!(names.parse("a + q", 1), Err(PolyError::UnknownVariable(_))));
        assert!(matches!(names.parse("a + (b", 1), Err(PolyError::Parse { .. })));
        assert!(matches!(names.parse("a / b", 1), Err(PolyError::Parse { .. })));
        assert!(matches!(names.parse("a $ b", 1), Err(PolyError::Parse { pos: 2, .. })));
    }

    #[test]
    fn expressions_expand() {
        let names = VarNames::slots(2, 1);
        let p = names.parse("(a - b)*(a + b)/2", 1).unwrap();
        assert_eq!(render(&names, &p), "1/2*a^2 - 1/2*b^2");
        let q = names.parse("-a^2 + 0*b", 1).unwrap();
        assert_eq!(render(&names, &q), "-a^2");
    }

    #[test]
    fn zeta_in_coefficients() {
        let names = VarNames::slots(2, 1);
        let p = names.parse("(z^2 + z + 1)*a", 6).unwrap();
        assert_eq!(render(&names, &p), "(2*z)*a");
    }
}
