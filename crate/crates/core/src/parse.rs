//! Recursive-descent parser for polynomials and vector fields.
//!
//! ```text
//! field  := "dx" "=" expr ";" "dy" "=" expr ";" "dz" "=" expr [";"]
//!         | "(" expr "," expr "," expr ")"
//! expr   := ["+" | "-"] term (("+" | "-") term)*
//! term   := factor ("*" factor)*
//! factor := atom ["^" uint]
//! atom   := uint ["/" uint] | "x" | "y" | "z" | "Delta" | "(" expr ")"
//! ```
//!
//! The three equations of the named form may come in any order.

use crate::error::{Error, Result};
use crate::ratpoly::{Poly, Rational};
use crate::vfield::VField;
use num_bigint::BigInt;
use num_traits::Zero;

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        Parser { src: text.as_bytes(), pos: 0 }
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { pos: self.pos, msg: msg.into() })
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
            self.err(format!("expected '{}'", c as char))
        }
    }

    fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }

    fn ident(&mut self) -> Option<&'a str> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphanumeric() {
            self.pos += 1;
        }
        (self.pos > start).then(|| std::str::from_utf8(&self.src[start..self.pos]).unwrap())
    }

    fn uint(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return self.err("expected an integer");
        }
        Ok(std::str::from_utf8(&self.src[start..self.pos]).unwrap().parse().unwrap())
    }

    fn expr(&mut self) -> Result<Poly> {
        let mut acc = if self.eat(b'-') {
            -self.term()?
        } else {
            self.eat(b'+');
            self.term()?
        };
        loop {
            if self.eat(b'+') {
                acc = acc + self.term()?;
            } else if self.eat(b'-') {
                acc = acc - self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.factor()?;
        while self.eat(b'*') {
            acc = acc * self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Poly> {
        let base = self.atom()?;
        if !self.eat(b'^') {
            return Ok(base);
        }
        if self.peek() == Some(b'-') {
            return self.err("negative exponents are not allowed");
        }
        let e = self.uint()?;
        match u32::try_from(e) {
            Ok(e) => Ok(base.pow(e)),
            Err(_) => self.err("exponent too large"),
        }
    }

    fn atom(&mut self) -> Result<Poly> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(b')')?;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.uint()?;
                if self.eat(b'/') {
                    let at = self.pos;
                    let d = self.uint()?;
                    if d.is_zero() {
                        return Err(Error::Parse { pos: at, msg: "zero denominator".into() });
                    }
                    Ok(Poly::constant(Rational::new(n, d)))
                } else {
                    Ok(Poly::constant(Rational::from_integer(n)))
                }
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let at = self.pos;
                match self.ident().unwrap() {
                    "x" => Ok(Poly::x()),
                    "y" => Ok(Poly::y()),
                    "z" => Ok(Poly::z()),
                    "Delta" => Ok(Poly::delta()),
                    other => Err(Error::Parse { pos: at, msg: format!("unknown symbol '{other}'") }),
                }
            }
            Some(c) => self.err(format!("unexpected '{}'", c as char)),
            None => self.err("unexpected end of input"),
        }
    }

    fn finish(&mut self) -> Result<()> {
        if self.at_end() {
            Ok(())
        } else {
            self.err("trailing input")
        }
    }
}

pub fn parse_poly(text: &str) -> Result<Poly> {
    let mut p = Parser::new(text);
    let e = p.expr()?;
    p.finish()?;
    Ok(e)
}

pub fn parse_field(text: &str) -> Result<VField> {
    let mut p = Parser::new(text);
    if p.eat(b'(') {
        let a = p.expr()?;
        p.expect(b',')?;
        let b = p.expr()?;
        p.expect(b',')?;
        let c = p.expr()?;
        p.expect(b')')?;
        p.finish()?;
        return Ok(VField::new(a, b, c));
    }
    let mut comps: [Option<Poly>; 3] = [None, None, None];
    for n in 0..3 {
        let at = {
            p.skip_ws();
            p.pos
        };
        let slot = match p.ident() {
            Some("dx") => 0,
            Some("dy") => 1,
            Some("dz") => 2,
            _ => return Err(Error::Parse { pos: at, msg: "expected dx, dy or dz".into() }),
        };
        if comps[slot].is_some() {
            return Err(Error::Parse { pos: at, msg: "component given twice".into() });
        }
        p.expect(b'=')?;
        comps[slot] = Some(p.expr()?);
        if n < 2 {
            p.expect(b';')?;
        } else {
            p.eat(b';');
        }
    }
    p.finish()?;
    let [a, b, c] = comps.map(|c| c.unwrap());
    Ok(VField::new(a, b, c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bases::{make_generator, GenIndex};
    use crate::sl2core::n_field;

    #[test]
    fn examples() {
        assert_eq!(parse_field("dx=0; dy=-x; dz=-2*y").unwrap(), -n_field());
        assert_eq!(
            parse_field("dx = 2*y*z; dy = z^2; dz = 0").unwrap(),
            make_generator(GenIndex::b(-1, 1, 0)).unwrap()
        );
        assert_eq!(parse_field("dx = Delta; dy=0; dz=0").unwrap().cx, Poly::delta());
        assert_eq!(parse_field("dz = 0; dx = 0; dy = -x;").unwrap(), parse_field("(0, -x, 0)").unwrap());
    }

    #[test]
    fn fractions_and_signs() {
        let p = parse_poly(" -3/6*x^2*y + + 2 ").unwrap_err();
        assert!(matches!(p, Error::Parse { .. }));
        let p = parse_poly("-3/6*x^2*y + 2").unwrap();
        assert_eq!(p.to_string(), "-1/2*x^2*y + 2");
        assert_eq!(parse_poly("(x + y)^2").unwrap(), parse_poly("x^2 + 2*x*y + y^2").unwrap());
    }

    #[test]
    fn errors_report_position() {
        match parse_poly("x^-2") {
            Err(Error::Parse { pos, msg }) => {
                assert_eq!(pos, 2);
                assert!(msg.contains("negative"));
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_poly("x + w"), Err(Error::Parse { pos: 4, .. })));
        assert!(parse_poly("1/0").is_err());
        assert!(parse_field("dx = 1; dx = 2; dz = 0").is_err());
        assert!(parse_field("dx = 1; dy = 2").is_err());
    }
}
