//! Recursive-descent parser for the scalar string grammar.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/')? unary)*      juxtaposition multiplies
//! unary  := ('-' | '+') unary | power
//! power  := atom ('^' exponent)?
//! exponent := ('-' | '+')? integer | '(' ('-' | '+')? integer ')'
//! atom   := integer | decimal | identifier | '(' expr ')'
//! ```

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::scalar::Scalar;
use super::vars::is_valid_name;
use super::ScalarError;

pub fn parse_scalar(src: &str) -> Result<Scalar, ScalarError> {
    let mut p = Parser {
        s: src.as_bytes(),
        pos: 0,
        src,
    };
    p.skip_ws();
    if p.at_end() {
        return Err(p.err("empty expression"));
    }
    let v = p.expr()?;
    p.skip_ws();
    if !p.at_end() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(v)
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
    src: &'a str,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> ScalarError {
        ScalarError::Parse(format!("{msg} at byte {} in {:?}", self.pos, self.src))
    }

    fn at_end(&self) -> bool {
        self.pos >= self.s.len()
    }

    fn peek(&self) -> Option<u8> {
        self.s.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, c: u8) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Scalar, ScalarError> {
        let mut acc = self.term()?;
        loop {
            if self.eat(b'+') {
                acc = acc.add_ref(&self.term()?);
            } else if self.eat(b'-') {
                acc = acc.sub_ref(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn starts_atom(&mut self) -> bool {
        self.skip_ws();
        matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || c == b'_' || c == b'(' || c == b'.')
    }

    fn term(&mut self) -> Result<Scalar, ScalarError> {
        let mut acc = self.unary()?;
        loop {
            if self.eat(b'*') {
                acc = acc.mul_ref(&self.unary()?);
            } else if self.eat(b'/') {
                let d = self.unary()?;
                acc = acc.div_ref(&d)?;
            } else if self.starts_atom() {
                acc = acc.mul_ref(&self.power()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Scalar, ScalarError> {
        if self.eat(b'-') {
            Ok(self.unary()?.neg_ref())
        } else if self.eat(b'+') {
            self.unary()
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<Scalar, ScalarError> {
        let base = self.atom()?;
        if self.eat(b'^') {
            let e = self.exponent()?;
            base.pow(e)
        } else {
            Ok(base)
        }
    }

    fn exponent(&mut self) -> Result<i64, ScalarError> {
        let paren = self.eat(b'(');
        let neg = if self.eat(b'-') {
            true
        } else {
            self.eat(b'+');
            false
        };
        self.skip_ws();
        let digits = self.digits();
        if digits.is_empty() {
            return Err(self.err("expected integer exponent"));
        }
        let mag: i64 = digits.parse().map_err(|_| self.err("exponent out of range"))?;
        if paren && !self.eat(b')') {
            return Err(self.err("expected ')'"));
        }
        Ok(if neg { -mag } else { mag })
    }

    fn digits(&mut self) -> String {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        self.src[start..self.pos].to_string()
    }

    fn atom(&mut self) -> Result<Scalar, ScalarError> {
        self.skip_ws();
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.err("expected ')'"));
                }
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() || c == b'.' => self.number(),
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || c == b'_') {
                    self.pos += 1;
                }
                let name = &self.src[start..self.pos];
                debug_assert!(is_valid_name(name));
                Scalar::var(name)
            }
            _ => Err(self.err("expected number, identifier or '('")),
        }
    }

    fn number(&mut self) -> Result<Scalar, ScalarError> {
        let int = self.digits();
        let mut frac = String::new();
        if self.peek() == Some(b'.') {
            self.pos += 1;
            frac = self.digits();
        }
        if int.is_empty() && frac.is_empty() {
            return Err(self.err("malformed number"));
        }
        let all = format!("{int}{frac}");
        let n: BigInt = all.parse().map_err(|_| self.err("malformed number"))?;
        let mut d = BigInt::one();
        for _ in 0..frac.len() {
            d *= 10;
        }
        let r = BigRational::new(n, d);
        if r.is_zero() {
            return Ok(Scalar::zero());
        }
        Ok(Scalar::from_rational(r))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trips_display() {
        for s in ["(q^4 - 1)/(q^2)", "q^2 + 1", "-3/2*q*t", "0", "1"] {
            let v = parse_scalar(s).unwrap();
            assert_eq!(parse_scalar(&v.to_string()).unwrap(), v, "{s}");
        }
    }

    #[test]
    fn precedence_and_negative_exponents() {
        let a = parse_scalar("-q^2").unwrap();
        assert_eq!(a, Scalar::q_pow(2).neg_ref());
        let b = parse_scalar("q^-2").unwrap();
        assert_eq!(b, Scalar::q_pow(-2));
        let c = parse_scalar("2q^(-1) t").unwrap();
        assert_eq!(c, parse_scalar("2*t/q").unwrap());
        assert_eq!(parse_scalar("1.5").unwrap(), Scalar::from_ratio(3, 2));
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_scalar("").is_err());
        assert!(parse_scalar("q +").is_err());
        assert!(parse_scalar("(q").is_err());
        assert!(matches!(parse_scalar("1/(q-q)"), Err(ScalarError::DivisionByZero)));
    }
}
