//! Small expression parser for elements of F_q(t): `t^2+t+1`, `(t+1)/(t^2+1)`,
//! `2t^-1`. Integer literals are reduced mod p over a prime field and read as
//! element codes otherwise.

use ffield::{Fq, Poly, RatFunc};

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
    f: &'a Fq,
}

type Res<T> = Result<T, String>;

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<u8> {
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn int(&mut self) -> Res<u64> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        std::str::from_utf8(&self.s[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| format!("expected an integer at position {start}"))
    }

    fn constant(&self, n: u64) -> Res<RatFunc> {
        let f = self.f;
        let code = if f.spec().e == 1 {
            (n % f.p() as u64) as u8
        } else if n < f.q() as u64 {
            n as u8
        } else {
            return Err(format!("{n} is not an element code of F_{}", f.q()));
        };
        Ok(RatFunc::constant(code))
    }

    fn expr(&mut self) -> Res<RatFunc> {
        let neg = self.eat(b'-');
        let mut acc = self.term()?;
        if neg {
            acc = acc.neg(self.f);
        }
        loop {
            if self.eat(b'+') {
                acc = acc.add(&self.term()?, self.f);
            } else if self.eat(b'-') {
                acc = acc.sub(&self.term()?, self.f);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Res<RatFunc> {
        let mut acc = self.factor()?;
        loop {
            if self.eat(b'*') {
                acc = acc.mul(&self.factor()?, self.f);
            } else if self.eat(b'/') {
                let d = self.factor()?;
                if d.is_zero() {
                    return Err("division by zero".into());
                }
                acc = acc.div(&d, self.f);
            } else if matches!(self.peek(), Some(b't' | b'(' | b'0'..=b'9')) {
                acc = acc.mul(&self.factor()?, self.f);
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Res<RatFunc> {
        let base = self.atom()?;
        if !self.eat(b'^') {
            return Ok(base);
        }
        let neg = self.eat(b'-');
        let e = self.int()?;
        let mut out = RatFunc::one();
        for _ in 0..e {
            out = out.mul(&base, self.f);
        }
        if neg {
            if out.is_zero() {
                return Err("zero to a negative power".into());
            }
            out = out.inv(self.f);
        }
        Ok(out)
    }

    fn atom(&mut self) -> Res<RatFunc> {
        match self.peek() {
            Some(b't') => {
                self.pos += 1;
                Ok(RatFunc::from_poly(Poly::t()))
            }
            Some(b'(') => {
                self.pos += 1;
                let x = self.expr()?;
                if !self.eat(b')') {
                    return Err(format!("missing ')' at position {}", self.pos));
                }
                Ok(x)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.int()?;
                self.constant(n)
            }
            Some(c) => Err(format!("unexpected '{}' at position {}", c as char, self.pos)),
            None => Err("unexpected end of input".into()),
        }
    }
}

pub fn parse_ratfunc(s: &str, f: &Fq) -> Result<RatFunc, String> {
    let cleaned: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let mut p = Parser { s: cleaned.as_bytes(), pos: 0, f };
    let x = p.expr()?;
    if p.pos != cleaned.len() {
        return Err(format!("trailing input in {s:?} at position {}", p.pos));
    }
    Ok(x)
}

pub fn parse_poly(s: &str, f: &Fq) -> Result<Poly, String> {
    let x = parse_ratfunc(s, f)?;
    if !x.is_poly() {
        return Err(format!("{s:?} is not a polynomial"));
    }
    Ok(x.num().clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn literals_and_errors() {
        let f = Fq::standard(3).unwrap();
        assert_eq!(parse_poly("t^2+2t+1", &f).unwrap(), Poly::from_coeffs(vec![1, 2, 1]));
        assert_eq!(parse_poly("-t", &f).unwrap(), Poly::from_coeffs(vec![0, 2]));
        assert_eq!(parse_poly("4", &f).unwrap(), Poly::one());
        let x = parse_ratfunc("(t+1)/(t^2+1)", &f).unwrap();
        assert_eq!(x.to_string_t(), "(t+1)/(t^2+1)");
        assert_eq!(parse_ratfunc("t^-1", &f).unwrap(), RatFunc::t_pow(-1));
        assert_eq!(parse_ratfunc("t(t+1)", &f).unwrap().to_string_t(), "t^2+t");
        for bad in ["", "t+", "(t", "1/0", "x", "t^", "0^-1"] {
            assert!(parse_ratfunc(bad, &f).is_err(), "{bad:?}");
        }
        assert!(parse_poly("1/t", &f).is_err());
        let f4 = Fq::standard(4).unwrap();
        assert!(parse_poly("3t", &f4).is_ok());
        assert!(parse_poly("4t", &f4).is_err());
    }

    proptest! {
        #[test]
        fn printed_form_reparses(num in proptest::collection::vec(0u8..3, 0..5), den in proptest::collection::vec(0u8..3, 1..4)) {
            let f = Fq::standard(3).unwrap();
            let d = Poly::from_coeffs(den);
            prop_assume!(!d.is_zero());
            let x = RatFunc::new(Poly::from_coeffs(num), d, &f);
            prop_assert_eq!(parse_ratfunc(&x.to_string_t(), &f).unwrap(), x);
        }
    }
}
