//! Text grammar for polynomials.
//!
//! ```text
//! equation := expr ('=' expr)?
//! expr     := ('+' | '-')? term (('+' | '-') term)*
//! term     := factor ('*'? factor)*
//! factor   := atom ('^' integer)?
//! atom     := integer ('/' integer)? | ident | '(' expr ')'
//! ident    := letter (letter | digit | '_' | '\'')*
//! ```
//!
//! Juxtaposition multiplies, so `2x0^2 y1'` is a valid term. Adjacent
//! identifiers need a space or `*` between them.

use super::{Coeff, WPoly};
use crate::error::{Error, Result};

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn integer(&mut self) -> Result<i128> {
        self.skip_ws();
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected an integer");
        }
        self.src[start..self.pos]
            .parse()
            .or_else(|_| self.err("integer out of range"))
    }

    fn expr(&mut self) -> Result<WPoly> {
        let mut acc = WPoly::zero();
        let mut first = true;
        loop {
            self.skip_ws();
            let sign = if self.eat('+') {
                1
            } else if self.eat('-') {
                -1
            } else if first {
                1
            } else {
                return Ok(acc);
            };
            first = false;
            let t = self.term()?;
            acc = if sign > 0 { &acc + &t } else { &acc - &t };
        }
    }

    fn starts_factor(&mut self) -> bool {
        self.skip_ws();
        self.peek()
            .is_some_and(|c| c.is_ascii_alphanumeric() || c == '(')
    }

    fn term(&mut self) -> Result<WPoly> {
        let mut acc = self.factor()?;
        loop {
            // juxtaposition multiplies too
            if self.eat('*') || self.starts_factor() {
                let f = self.factor()?;
                acc = &acc * &f;
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<WPoly> {
        let base = self.atom()?;
        if self.eat('^') {
            let e = self.integer()?;
            let e = u32::try_from(e).or_else(|_| self.err("exponent too large"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<WPoly> {
        self.skip_ws();
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return self.err("expected `)`");
                }
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                let save = self.pos;
                if self.eat('/') {
                    if !self
                        .peek()
                        .is_some_and(|c| c.is_ascii_digit() || c.is_whitespace())
                    {
                        self.pos = save;
                        return Ok(WPoly::int(n));
                    }
                    let d = self.integer()?;
                    if d == 0 {
                        return self.err("division by zero");
                    }
                    return Ok(WPoly::constant(Coeff::new(n, d)));
                }
                Ok(WPoly::int(n))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self
                    .peek()
                    .is_some_and(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'')
                {
                    self.pos += 1;
                }
                Ok(WPoly::var(&self.src[start..self.pos]))
            }
            Some(c) => self.err(format!("unexpected `{c}`")),
            None => self.err("unexpected end of input"),
        }
    }
}

/// Parse a polynomial.
pub fn parse_poly(src: &str) -> Result<WPoly> {
    let mut p = Parser { src, pos: 0 };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos != src.len() {
        return p.err("trailing input");
    }
    Ok(e)
}

/// Parse `lhs = rhs` as `lhs - rhs`; a bare polynomial is returned as is.
pub fn parse_equation(src: &str) -> Result<WPoly> {
    let mut p = Parser { src, pos: 0 };
    let lhs = p.expr()?;
    let out = if p.eat('=') { &lhs - &p.expr()? } else { lhs };
    p.skip_ws();
    if p.pos != src.len() {
        return p.err("trailing input");
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grammar() {
        let f = parse_poly("2x0^2 y1' - 3/2*x1").unwrap();
        assert_eq!(f.num_terms(), 2);
        assert_eq!(f.variables(), vec!["x0", "x1", "y1'"]);
        assert_eq!(parse_poly("-x").unwrap(), parse_poly("0 - x").unwrap());
        assert_eq!(
            parse_poly("x(y+1)").unwrap(),
            parse_poly("x y + x").unwrap()
        );
        assert_eq!(parse_poly("(x)^0").unwrap(), WPoly::one());
        assert_eq!(
            parse_equation("y3^2 = y2 y4").unwrap(),
            parse_poly("y3^2 - y2*y4").unwrap()
        );
        // an identifier swallows following letters and digits
        assert_eq!(parse_poly("y1y2").unwrap().variables(), vec!["y1y2"]);
    }

    #[test]
    fn errors_carry_positions() {
        match parse_poly("x + * y") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("unexpected {other:?}"),
        }
        assert!(parse_poly("(x + y").is_err());
        assert!(parse_poly("x^").is_err());
        assert!(parse_poly("1/0").is_err());
        assert!(parse_poly("").is_err());
        assert!(parse_equation("x = y = z").is_err());
    }
}
