//! Recursive-descent parser for the expression language.
//!
//! ```text
//! expr   := term (("+" | "-") term)*
//! term   := unary (("*" | "/") unary)*
//! unary  := ("+" | "-") unary | factor
//! factor := base ("^" signed_integer)?
//! base   := number | "i" | "z" | "n" | "pi" | ident "(" expr ")" | "(" expr ")"
//! ident  := "exp" | "sin" | "cos" | "tan"
//! ```
//!
//! Numbers are decimal literals with an optional exponent; a literal directly
//! followed by `i` (`2i`, `0.5i`) is imaginary. The exponent of `^` may be
//! written bare (`z^-2`) or parenthesised (`z^(-2)`).

use std::sync::Arc;

use num_complex::Complex;

use super::expr::{Expr, Func};
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Parses `text`. The family index `n` is accepted only with `family_mode`.
pub fn parse_expr<T: Real>(text: &str, family_mode: bool) -> Result<Expr<T>> {
    let mut p = Parser { src: text.as_bytes(), pos: 0, family_mode };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(e)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    family_mode: bool,
}

impl Parser<'_> {
    fn error(&self, message: &str) -> Error {
        Error::Parse { offset: self.pos, message: message.to_string() }
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
            Err(self.error(&format!("expected `{}`", c as char)))
        }
    }

    fn expr<T: Real>(&mut self) -> Result<Expr<T>> {
        let mut acc = self.term()?;
        loop {
            if self.eat(b'+') {
                let rhs = self.term()?;
                acc = Expr::Add(Arc::new(acc), Arc::new(rhs));
            } else if self.eat(b'-') {
                let rhs = self.term()?;
                acc = Expr::Sub(Arc::new(acc), Arc::new(rhs));
            } else {
                return Ok(acc);
            }
        }
    }

    fn term<T: Real>(&mut self) -> Result<Expr<T>> {
        let mut acc = self.unary()?;
        loop {
            if self.eat(b'*') {
                let rhs = self.unary()?;
                acc = Expr::Mul(Arc::new(acc), Arc::new(rhs));
            } else if self.eat(b'/') {
                let rhs = self.unary()?;
                acc = Expr::Div(Arc::new(acc), Arc::new(rhs));
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary<T: Real>(&mut self) -> Result<Expr<T>> {
        if self.eat(b'-') {
            let inner = self.unary()?;
            return Ok(Expr::Mul(Arc::new(Expr::real(-T::one())), Arc::new(inner)));
        }
        if self.eat(b'+') {
            return self.unary();
        }
        self.factor()
    }

    fn factor<T: Real>(&mut self) -> Result<Expr<T>> {
        let base = self.base()?;
        if self.eat(b'^') {
            let k = self.signed_integer()?;
            return Ok(Expr::Pow(Arc::new(base), k));
        }
        Ok(base)
    }

    fn signed_integer(&mut self) -> Result<i32> {
        if self.eat(b'(') {
            let k = self.signed_integer()?;
            self.expect(b')')?;
            return Ok(k);
        }
        let start = {
            self.skip_ws();
            self.pos
        };
        let negative = if self.eat(b'-') {
            true
        } else {
            self.eat(b'+');
            false
        };
        self.skip_ws();
        let digits_start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == digits_start {
            self.pos = start;
            return Err(self.error("non-integer power exponent"));
        }
        if self.pos < self.src.len() && matches!(self.src[self.pos], b'.' | b'e' | b'E' | b'i') {
            self.pos = start;
            return Err(self.error("non-integer power exponent"));
        }
        let text = std::str::from_utf8(&self.src[digits_start..self.pos]).expect("ascii digits");
        let magnitude: i64 = text.parse().map_err(|_| self.error("exponent out of range"))?;
        let value = if negative { -magnitude } else { magnitude };
        i32::try_from(value).map_err(|_| self.error("exponent out of range"))
    }

    fn base<T: Real>(&mut self) -> Result<Expr<T>> {
        match self.peek() {
            None => Err(self.error("unexpected end of input")),
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(b')')?;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() || c == b'.' => self.number(),
            Some(c) if c.is_ascii_alphabetic() => self.identifier(),
            Some(_) => Err(self.error("unexpected character")),
        }
    }

    fn number<T: Real>(&mut self) -> Result<Expr<T>> {
        let start = self.pos;
        let digits = |p: &mut Self| {
            let s = p.pos;
            while p.pos < p.src.len() && p.src[p.pos].is_ascii_digit() {
                p.pos += 1;
            }
            p.pos - s
        };
        let mut count = digits(self);
        if self.pos < self.src.len() && self.src[self.pos] == b'.' {
            self.pos += 1;
            count += digits(self);
        }
        if count == 0 {
            self.pos = start;
            return Err(self.error("malformed number"));
        }
        if self.pos < self.src.len() && matches!(self.src[self.pos], b'e' | b'E') {
            let save = self.pos;
            self.pos += 1;
            if self.pos < self.src.len() && matches!(self.src[self.pos], b'+' | b'-') {
                self.pos += 1;
            }
            if digits(self) == 0 {
                self.pos = save;
            }
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii number");
        let value: f64 =
            text.parse().map_err(|_| Error::Parse { offset: start, message: "malformed number".into() })?;
        let value = T::lit(value);
        let imaginary = self.pos < self.src.len()
            && self.src[self.pos] == b'i'
            && !self.src.get(self.pos + 1).is_some_and(|c| c.is_ascii_alphanumeric());
        if imaginary {
            self.pos += 1;
            return Ok(Expr::Const(Complex::new(T::zero(), value)));
        }
        Ok(Expr::real(value))
    }

    fn identifier<T: Real>(&mut self) -> Result<Expr<T>> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphanumeric() {
            self.pos += 1;
        }
        let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii identifier");
        match name {
            "z" => Ok(Expr::Var),
            "i" => Ok(Expr::Const(Complex::new(T::zero(), T::one()))),
            "pi" => Ok(Expr::real(T::PI())),
            "n" => {
                if self.family_mode {
                    Ok(Expr::Index)
                } else {
                    self.pos = start;
                    Err(self.error("family index `n` outside family mode"))
                }
            }
            _ => match Func::from_name(name) {
                Some(func) => {
                    if !self.eat(b'(') {
                        return Err(self.error("expected `(` after function name"));
                    }
                    let arg = self.expr()?;
                    self.expect(b')')?;
                    Ok(Expr::Func(func, Arc::new(arg)))
                }
                None => {
                    self.pos = start;
                    Err(self.error(&format!("unknown identifier `{name}`")))
                }
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::funcexpr::ExtComplex;

    fn p(s: &str) -> Result<Expr<f64>> {
        parse_expr(s, false)
    }

    fn at(e: &Expr<f64>, re: f64, im: f64) -> ExtComplex<f64> {
        e.eval_at(Complex::new(re, im)).unwrap()
    }

    #[test]
    fn single_function_node() {
        assert_eq!(p("exp(z)").unwrap(), Expr::Func(Func::Exp, Arc::new(Expr::Var)));
    }

    #[test]
    fn quotient_structure() {
        let e = p("z/(1-z^2)").unwrap();
        match e {
            Expr::Div(num, den) => {
                assert_eq!(*num, Expr::Var);
                assert!(matches!(den.as_ref(), Expr::Sub(_, _)));
            }
            other => panic!("unexpected tree {other:?}"),
        }
    }

    #[test]
    fn precedence_and_associativity() {
        let e = p("2 - 3 - 4").unwrap();
        assert_eq!(at(&e, 0.0, 0.0), ExtComplex::real(-5.0));
        let e = p("8 / 2 / 2").unwrap();
        assert_eq!(at(&e, 0.0, 0.0), ExtComplex::real(2.0));
        let e = p("2*z^2 + 1").unwrap();
        assert_eq!(at(&e, 3.0, 0.0), ExtComplex::real(19.0));
        let e = p("-z^2").unwrap();
        assert_eq!(at(&e, 3.0, 0.0), ExtComplex::real(-9.0));
    }

    #[test]
    fn family_template_requires_mode() {
        let t: Expr<f64> = parse_expr("exp(n*(z-1))/(z+1/n)", true).unwrap();
        assert!(t.has_index());
        let err = parse_expr::<f64>("exp(n*(z-1))/(z+1/n)", false).unwrap_err();
        assert!(matches!(err, Error::Parse { offset: 4, .. }));
    }

    #[test]
    fn non_integer_exponent_rejected() {
        assert!(matches!(p("z^0.5"), Err(Error::Parse { .. })));
        assert!(matches!(p("z^z"), Err(Error::Parse { .. })));
        assert_eq!(at(&p("z^-2").unwrap(), 2.0, 0.0), ExtComplex::real(0.25));
        assert_eq!(at(&p("z^(-2)").unwrap(), 2.0, 0.0), ExtComplex::real(0.25));
    }

    #[test]
    fn syntax_errors_carry_offsets() {
        assert_eq!(p("z +* 2").unwrap_err(), Error::Parse { offset: 3, message: "unexpected character".into() });
        assert!(matches!(p("sin z"), Err(Error::Parse { offset: 4, .. })));
        assert!(matches!(p("(z"), Err(Error::Parse { offset: 2, .. })));
        assert!(matches!(p("foo(z)"), Err(Error::Parse { offset: 0, .. })));
    }

    #[test]
    fn literals() {
        assert_eq!(at(&p("pi").unwrap(), 0.0, 0.0), ExtComplex::real(std::f64::consts::PI));
        assert_eq!(at(&p("2i").unwrap(), 0.0, 0.0), ExtComplex::new(0.0, 2.0));
        assert_eq!(at(&p("1.5e-1").unwrap(), 0.0, 0.0), ExtComplex::real(0.15));
        assert_eq!(at(&p(" 3 * i ").unwrap(), 0.0, 0.0), ExtComplex::new(0.0, 3.0));
    }
}
