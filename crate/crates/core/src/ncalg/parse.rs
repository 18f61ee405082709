//! Text syntax for algebra elements.
//!
//! ```text
//! expr   := ["-"] term (("+"|"-") term)*
//! term   := factor ("*" factor)*
//! factor := number ["i"] | "q" ["^" int] | gen ["^" nat] | "(" expr ")"
//! gen    := X | Y | Z | Zi | T | K | Ki | E | F | A(int)
//! ```

use num_complex::Complex;
use thiserror::Error;

use super::{Generator, NCPoly, Presentation, Word};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("label A({0}) out of range")]
    LabelOutOfRange(i32),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{kind} at byte {pos}")]
pub struct ParseError {
    pub pos: usize,
    pub kind: ParseErrorKind,
}

struct Parser<'a, T> {
    src: &'a [u8],
    pos: usize,
    pres: &'a Presentation<T>,
}

impl<'a, T: Scalar> Parser<'a, T> {
    fn err<R>(&self, kind: ParseErrorKind) -> Result<R, ParseError> {
        Err(ParseError { pos: self.pos, kind })
    }

    fn syntax<R>(&self, msg: &str) -> Result<R, ParseError> {
        self.err(ParseErrorKind::Syntax(msg.to_string()))
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

    fn expr(&mut self) -> Result<NCPoly<T>, ParseError> {
        let negate = self.eat(b'-');
        let mut acc = self.term()?;
        if negate {
            acc = -&acc;
        }
        loop {
            if self.eat(b'+') {
                acc = &acc + &self.term()?;
            } else if self.eat(b'-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<NCPoly<T>, ParseError> {
        let mut acc = self.factor()?;
        while self.eat(b'*') {
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn int(&mut self, signed: bool) -> Result<i32, ParseError> {
        self.skip_ws();
        let start = self.pos;
        if signed && matches!(self.src.get(self.pos), Some(b'-') | Some(b'+')) {
            self.pos += 1;
        }
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap_or("");
        match text.parse::<i32>() {
            Ok(v) => Ok(v),
            Err(_) => {
                self.pos = start;
                self.syntax("expected an integer")
            }
        }
    }

    fn exponent(&mut self) -> Result<Option<i32>, ParseError> {
        if self.eat(b'^') {
            Ok(Some(self.int(true)?))
        } else {
            Ok(None)
        }
    }

    fn factor(&mut self) -> Result<NCPoly<T>, ParseError> {
        match self.peek() {
            None => self.syntax("unexpected end of input"),
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(b')') {
                    return self.syntax("expected `)`");
                }
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() || c == b'.' => self.number(),
            Some(c) if c.is_ascii_alphabetic() => self.symbol(),
            Some(_) => self.syntax("unexpected character"),
        }
    }

    fn number(&mut self) -> Result<NCPoly<T>, ParseError> {
        let start = self.pos;
        while self.pos < self.src.len() && (self.src[self.pos].is_ascii_digit() || self.src[self.pos] == b'.') {
            self.pos += 1;
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap_or("");
        let Some(v) = T::parse_lit(text) else {
            self.pos = start;
            return self.syntax("malformed number");
        };
        let imaginary = self.src.get(self.pos) == Some(&b'i');
        if imaginary {
            self.pos += 1;
            Ok(NCPoly::constant(Complex::new(T::zero(), v)))
        } else {
            Ok(NCPoly::real(v))
        }
    }

    fn symbol(&mut self) -> Result<NCPoly<T>, ParseError> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphabetic() {
            self.pos += 1;
        }
        let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap_or("").to_string();
        if name == "q" {
            let e = self.exponent()?.unwrap_or(1);
            return Ok(NCPoly::real(self.pres.params.pow(e)));
        }
        let gen = if name == "A" {
            if !self.eat(b'(') {
                return self.syntax("expected `(` after A");
            }
            let s = self.int(true)?;
            if !self.eat(b')') {
                return self.syntax("expected `)`");
            }
            if !self.pres.has_a_generators() {
                self.pos = start;
                return self.err(ParseErrorKind::UnknownGenerator(format!("A({s})")));
            }
            let g = Generator::A(s);
            if !self.pres.generators.contains(&g) {
                self.pos = start;
                return self.err(ParseErrorKind::LabelOutOfRange(s));
            }
            g
        } else {
            match Generator::from_name(&name) {
                Some(g) if self.pres.generators.contains(&g) => g,
                _ => {
                    self.pos = start;
                    return self.err(ParseErrorKind::UnknownGenerator(name));
                }
            }
        };
        let n = match self.exponent()? {
            None => 1,
            Some(n) if n >= 0 => n as usize,
            Some(_) => return self.syntax("generator powers must be natural numbers"),
        };
        Ok(NCPoly::term(Word::unit().pow(gen, n), Complex::new(T::one(), T::zero())))
    }
}

/// Parses an element of `pres`; `q` literals resolve against the presentation's q.
pub fn parse<T: Scalar>(text: &str, pres: &Presentation<T>) -> Result<NCPoly<T>, ParseError> {
    let mut p = Parser { src: text.as_bytes(), pos: 0, pres };
    let out = p.expr()?;
    if p.peek().is_some() {
        return p.syntax("trailing input");
    }
    Ok(out)
}

/// Canonical text form; reparses to the same polynomial.
pub fn format<T: Scalar>(poly: &NCPoly<T>) -> String {
    if poly.is_zero() {
        return "0".to_string();
    }
    poly.terms()
        .map(|(w, c)| {
            let sign = if c.im.is_sign_negative() { '-' } else { '+' };
            let coeff = format!("({} {} {}i)", c.re, sign, c.im.abs());
            if w.is_empty() {
                coeff
            } else {
                format!("{coeff}*{w}")
            }
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ncalg::Presentation;
    use crate::qcore::{HalfInt, QParams};
    use Generator::*;

    fn uqmp() -> Presentation<f64> {
        Presentation::uqmp(QParams::new(0.5).unwrap())
    }

    #[test]
    fn literal_transcription() {
        let p = parse("X*Z - q^2*Z*X", &uqmp()).unwrap();
        assert_eq!(p.len(), 2);
        assert_eq!(p.coefficient(&Word::new(&[X, Z])).re, 1.0);
        assert_eq!(p.coefficient(&Word::new(&[Z, X])).re, -0.25);
    }

    #[test]
    fn unit_and_powers() {
        let pres = uqmp();
        assert_eq!(parse("1", &pres).unwrap(), NCPoly::one());
        let p = parse("2.5i*Z^3 + (1 - q^-1)", &pres).unwrap();
        assert_eq!(p.coefficient(&Word::new(&[Z, Z, Z])), Complex::new(0.0, 2.5));
        assert_eq!(p.coefficient(&Word::unit()).re, -1.0);
    }

    #[test]
    fn errors_carry_position() {
        let pres = uqmp();
        let e = parse("X*W", &pres).unwrap_err();
        assert_eq!(e.pos, 2);
        assert!(matches!(e.kind, ParseErrorKind::UnknownGenerator(_)));
        assert!(matches!(parse("X Z", &pres).unwrap_err().kind, ParseErrorKind::Syntax(_)));
        assert!(matches!(parse("(X", &pres).unwrap_err().kind, ParseErrorKind::Syntax(_)));
        let bl = Presentation::bl(QParams::new(0.5).unwrap(), HalfInt::from_twice(1));
        assert!(matches!(parse("A(2)", &bl).unwrap_err().kind, ParseErrorKind::LabelOutOfRange(2)));
        assert!(matches!(parse("A(0)", &pres).unwrap_err().kind, ParseErrorKind::UnknownGenerator(_)));
        assert!(parse("A(-1)*A(1)", &bl).is_ok());
    }

    #[test]
    fn format_roundtrip_exact() {
        let pres = uqmp();
        let p = parse("(0.1 - 3i)*X*X*Z - q^-3*T + 7", &pres).unwrap();
        let text = format(&p);
        assert_eq!(parse(&text, &pres).unwrap(), p);
        assert!(text.contains("X^2*Z"));
    }
}
