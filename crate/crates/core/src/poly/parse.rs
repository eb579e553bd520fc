use num_bigint::BigInt;

use super::{Coeff, Exponent, LaurentPoly, Ring};
use crate::error::{Error, Result};

/// Largest exponent accepted by the parser.
const MAX_EXPONENT: u64 = 1 << 16;

/// Parses an arithmetic expression over the ring's variables.
///
/// Grammar: integers and rationals, variable names, `+ - * / ^` and
/// parentheses. `/` only divides by a nonzero constant. Negative exponents
/// are allowed on monomials in a Laurent ring.
pub fn parse_poly(text: &str, ring: &Ring) -> Result<LaurentPoly> {
    let mut p = Parser { src: text.as_bytes(), pos: 0, ring };
    let f = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(f)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    ring: &'a Ring,
}

impl Parser<'_> {
    fn n(&self) -> usize {
        self.ring.nvars()
    }

    fn err(&self, msg: &str) -> Error {
        Error::Syntax { pos: self.pos, msg: msg.to_string() }
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

    fn expr(&mut self) -> Result<LaurentPoly> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<LaurentPoly> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = &acc * &self.unary()?;
                }
                Some(b'/') => {
                    self.pos += 1;
                    let at = self.pos;
                    let d = self.unary()?;
                    if !d.is_constant() || d.is_zero() {
                        return Err(Error::Syntax { pos: at, msg: "can only divide by a nonzero constant".into() });
                    }
                    acc = acc.scale(&d.terms()[0].0.recip());
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<LaurentPoly> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(-&self.unary()?)
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<LaurentPoly> {
        let base = self.atom()?;
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        let exp_pos = self.pos;
        let mut negative = false;
        match self.peek() {
            Some(b'-') => {
                negative = true;
                self.pos += 1;
            }
            Some(b'+') => self.pos += 1,
            _ => {}
        }
        self.skip_ws();
        let Some(digits) = self.digits() else {
            return Err(self.err("expected integer exponent"));
        };
        let k: u64 = digits.parse().map_err(|_| self.err("exponent too large"))?;
        if k > MAX_EXPONENT {
            return Err(Error::Syntax { pos: exp_pos, msg: "exponent too large".into() });
        }
        if !negative {
            return Ok(base.pow(k as u32));
        }
        if !self.ring.is_laurent() {
            return Err(Error::NegativeExponent(exp_pos));
        }
        if !base.is_monomial() {
            return Err(Error::Syntax { pos: exp_pos, msg: "negative power of a non-monomial".into() });
        }
        let (c, e) = &base.terms()[0];
        let mut cinv = Coeff::from_integer(BigInt::from(1));
        let cr = c.recip();
        for _ in 0..k {
            cinv *= &cr;
        }
        Ok(LaurentPoly::monomial(self.n(), cinv, e.scale(-(k as i64))))
    }

    fn digits(&mut self) -> Option<String> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            None
        } else {
            std::str::from_utf8(&self.src[start..self.pos]).ok().map(str::to_string)
        }
    }

    fn atom(&mut self) -> Result<LaurentPoly> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected `)`"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let s = self.digits().unwrap();
                let v: BigInt = s.parse().map_err(|_| self.err("bad number"))?;
                Ok(LaurentPoly::constant(self.n(), Coeff::from_integer(v)))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                let i = self.ring.index_of(name).ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
                Ok(LaurentPoly::monomial(self.n(), Coeff::from_integer(1.into()), Exponent::unit(self.n(), i)))
            }
            Some(_) => Err(self.err("unexpected character")),
            None => Err(self.err("unexpected end of input")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;

    #[test]
    fn square_of_difference() {
        let ring = Ring::polynomial(&["x", "y", "z"]).unwrap();
        let f = parse_poly("(x-z)^2", &ring).unwrap();
        let expect = LaurentPoly::from_terms(
            3,
            vec![
                (rat(1), Exponent::new(vec![2, 0, 0])),
                (rat(-2), Exponent::new(vec![1, 0, 1])),
                (rat(1), Exponent::new(vec![0, 0, 2])),
            ],
        );
        assert_eq!(f, expect);
    }

    #[test]
    fn zero_parses_to_empty() {
        let ring = Ring::polynomial(&["x"]).unwrap();
        assert!(parse_poly("0", &ring).unwrap().is_zero());
        assert!(parse_poly("x - x", &ring).unwrap().is_zero());
    }

    #[test]
    fn laurent_term_list() {
        let ring = Ring::laurent(&["x", "y"]).unwrap();
        let f = parse_poly("x*y^-1 - 2", &ring).unwrap();
        let terms: Vec<(Coeff, Vec<i64>)> = f.terms().iter().map(|(c, e)| (c.clone(), e.to_vec())).collect();
        assert_eq!(terms, vec![(rat(1), vec![1, -1]), (rat(-2), vec![0, 0])]);
    }

    #[test]
    fn errors() {
        let ring = Ring::polynomial(&["x", "y"]).unwrap();
        assert!(matches!(parse_poly("x + w", &ring), Err(Error::UnknownVariable(v)) if v == "w"));
        assert!(matches!(parse_poly("x^-1", &ring), Err(Error::NegativeExponent(_))));
        assert!(matches!(parse_poly("x + * y", &ring), Err(Error::Syntax { pos: 4, .. })));
        assert!(matches!(parse_poly("(x + y", &ring), Err(Error::Syntax { .. })));
        assert!(matches!(parse_poly("x / y", &ring), Err(Error::Syntax { .. })));
        let lr = ring.as_laurent();
        assert!(parse_poly("(x+y)^-1", &lr).is_err());
    }

    #[test]
    fn rationals_and_precedence() {
        let ring = Ring::polynomial(&["x"]).unwrap();
        let f = parse_poly("-x^2 + 3/4*x - 2/2", &ring).unwrap();
        let g = LaurentPoly::from_terms(
            1,
            vec![
                (rat(-1), Exponent::new(vec![2])),
                (crate::poly::ratio(3, 4), Exponent::new(vec![1])),
                (rat(-1), Exponent::new(vec![0])),
            ],
        );
        assert_eq!(f, g);
    }
}
