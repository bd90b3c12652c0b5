//! Canonical text form and a small expression parser.
//!
//! Printing grammar (frozen):
//!
//! ```text
//! rf       := poly | "(" poly ") / (" poly ")"
//! poly     := "0" | first (" + " rest | " - " rest)*
//! first    := ["-"] coeff | ["-"] [coeff "*"] monomial     (coeff 1 omitted, -1 written "-1*")
//! rest     := coeff | [coeff "*"] monomial                 (absolute value)
//! coeff    := int | int "/" int
//! monomial := var "^" int ("*" var "^" int)*
//! var      := "qh" | "t[" e "]" | "u[" i "," a "]" | "z[" i "," a "]" | "x[" i "," a "]" | aux
//! ```
//!
//! Terms appear in descending monomial order and the denominator is printed
//! expanded. The parser accepts any expression built from `+ - * / ^` and
//! parentheses over these atoms, so every printed value parses back.

use super::coeff::Q;
use super::poly::{LaurentPoly, Monomial};
use super::rational::RationalFunction;
use super::var::VarId;
use crate::error::{KhaError, Result};
use std::fmt::Write as _;

fn monomial_to_string(m: &Monomial) -> String {
    let mut s = String::new();
    for (k, (v, e)) in m.iter().enumerate() {
        if k > 0 {
            s.push('*');
        }
        let _ = write!(s, "{v}^{e}");
    }
    s
}

fn term_body(m: &Monomial, c: &Q) -> String {
    if m.is_one() {
        c.to_string()
    } else if c.is_one() {
        monomial_to_string(m)
    } else {
        format!("{c}*{}", monomial_to_string(m))
    }
}

pub fn poly_to_string(p: &LaurentPoly) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut s = String::new();
    for (k, (m, c)) in p.terms().iter().enumerate() {
        if k == 0 {
            if c.signum() < 0 && c.abs().is_one() && !m.is_one() {
                s.push_str("-1*");
                s.push_str(&monomial_to_string(m));
            } else {
                s.push_str(&term_body(m, c));
            }
        } else {
            s.push_str(if c.signum() < 0 { " - " } else { " + " });
            s.push_str(&term_body(m, &c.abs()));
        }
    }
    s
}

pub fn rf_to_string(f: &RationalFunction) -> String {
    match f.as_poly() {
        Some(p) => poly_to_string(p),
        None => format!("({}) / ({})", poly_to_string(f.num()), poly_to_string(&f.den_poly())),
    }
}

impl std::fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&poly_to_string(self))
    }
}

impl std::fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&rf_to_string(self))
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: &str) -> Result<T> {
        Err(KhaError::Parse(format!("{msg} at offset {}", self.pos)))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(&format!("expected `{}`", c as char))
        }
    }

    fn digits(&mut self) -> Result<&'a str> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected digits");
        }
        Ok(std::str::from_utf8(&self.src[start..self.pos]).unwrap())
    }

    fn small(&mut self) -> Result<usize> {
        let d = self.digits()?;
        d.parse().or_else(|_| self.err("index too large"))
    }

    fn expr(&mut self) -> Result<RationalFunction> {
        let mut acc = self.term()?;
        loop {
            if self.eat(b'+') {
                acc = acc.add(&self.term()?);
            } else if self.eat(b'-') {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<RationalFunction> {
        let mut acc = self.unary()?;
        loop {
            if self.eat(b'*') {
                acc = acc.mul(&self.unary()?);
            } else if self.eat(b'/') {
                acc = acc.div(&self.unary()?)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<RationalFunction> {
        if self.eat(b'-') {
            return Ok(self.unary()?.neg());
        }
        let base = self.atom()?;
        if self.eat(b'^') {
            let neg = self.eat(b'-');
            let e: i32 = self.digits()?.parse().or_else(|_| self.err("exponent too large"))?;
            return base.pow(if neg { -e } else { e });
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<RationalFunction> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(b')')?;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let d = self.digits()?;
                let q: Q = d.parse().map_err(KhaError::Parse)?;
                Ok(RationalFunction::constant(q))
            }
            Some(c) if c.is_ascii_lowercase() => Ok(RationalFunction::var(self.var()?)),
            _ => self.err("expected a number, variable or `(`"),
        }
    }

    fn var(&mut self) -> Result<VarId> {
        let start = self.pos;
        while self.pos < self.src.len() && (self.src[self.pos].is_ascii_lowercase() || self.src[self.pos].is_ascii_digit()) {
            self.pos += 1;
        }
        let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        if self.src.get(self.pos) != Some(&b'[') {
            if name == "qh" {
                return Ok(VarId::QH);
            }
            return VarId::aux(name).ok_or_else(|| KhaError::Parse(format!("bad symbol `{name}`")));
        }
        self.pos += 1;
        let first = self.small()?;
        let v = if name == "t" {
            if first == 0 {
                return self.err("indices are 1-based");
            }
            VarId::t(first - 1)
        } else {
            self.expect(b',')?;
            let slot = self.small()?;
            if first == 0 || slot == 0 {
                return self.err("indices are 1-based");
            }
            match name {
                "u" => VarId::u(first - 1, slot),
                "z" => VarId::z(first - 1, slot),
                "x" => VarId::x(first - 1, slot),
                _ => return self.err(&format!("unknown indexed symbol `{name}`")),
            }
        };
        self.expect(b']')?;
        Ok(v)
    }
}

pub fn parse_rf(s: &str) -> Result<RationalFunction> {
    let mut p = Parser { src: s.as_bytes(), pos: 0 };
    let f = p.expr()?;
    if p.peek().is_some() {
        return p.err("trailing input");
    }
    Ok(f)
}

pub fn parse_poly(s: &str) -> Result<LaurentPoly> {
    let f = parse_rf(s)?;
    f.as_poly().cloned().ok_or_else(|| KhaError::Parse(format!("`{s}` is not a Laurent polynomial")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_forms() {
        let qh = RationalFunction::var(VarId::QH);
        let f = qh.add(&qh.inv().unwrap());
        assert_eq!(f.to_string(), "qh^1 + qh^-1");
        let u11 = RationalFunction::var(VarId::u(0, 1));
        let u12 = RationalFunction::var(VarId::u(0, 2));
        let g = u11.sub(&qh.pow(2).unwrap()).div(&RationalFunction::one().sub(&u12)).unwrap();
        assert_eq!(g.to_string(), "(qh^2 - u[1,1]^1) / (u[1,2]^1 - 1)");
        assert_eq!(RationalFunction::int(-1).mul(&u11).to_string(), "-1*u[1,1]^1");
        assert_eq!(RationalFunction::constant(Q::new(-3, 2)).to_string(), "-3/2");
        assert_eq!(RationalFunction::zero().to_string(), "0");
    }

    #[test]
    fn round_trip() {
        for s in [
            "qh^1 + qh^-1",
            "(-1*qh^2 + u[1,1]^1) / (1 - u[1,2]^1)",
            "1/2*t[1]^3*z[2,1]^-1 - 7",
            "(x[1,1]^2 - y^1) / (ab3^1*l^2 + 2)",
        ] {
            let f = parse_rf(s).unwrap();
            let g = parse_rf(&f.to_string()).unwrap();
            assert!(f.rf_eq(&g), "{s}");
            assert_eq!(f.to_string(), g.to_string());
        }
    }

    #[test]
    fn parse_errors() {
        assert!(parse_rf("qh^").is_err());
        assert!(parse_rf("u[0,1]").is_err());
        assert!(parse_rf("1/0").is_err());
        assert!(parse_rf("(qh").is_err());
        assert!(parse_poly("1/(1-qh)").is_err());
    }
}
