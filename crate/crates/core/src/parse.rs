//! A small infix expression reader for the text forms printed by this crate:
//! rational functions such as `(-p0) / (k*p0 - k - 1)` and Laurent symmetric
//! functions such as `1/2*p_1^2*p_-1 - (p0 - 1)*p_1 + w`.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::arith::RatFunc;
use crate::error::{Error, Result};
use crate::psym::{PMonomial, SymFunc};

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Num(BigInt),
    Ident(String),
    Op(char),
}

fn tokenize(s: &str) -> Result<Vec<Token>> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let text: String = chars[start..i].iter().collect();
            out.push(Token::Num(text.parse().expect("digits")));
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
                // signed generator index: p_-3
                if chars[i - 1] == '_' && i < chars.len() && chars[i] == '-' {
                    i += 1;
                }
            }
            out.push(Token::Ident(chars[start..i].iter().collect()));
        } else if "+-*/^()".contains(c) {
            out.push(Token::Op(c));
            i += 1;
        } else {
            return Err(Error::Parse(format!("unexpected character {c:?} in {s:?}")));
        }
    }
    Ok(out)
}

/// Values an expression can evaluate to.
pub(crate) trait ExprValue: Sized {
    fn constant(q: BigRational) -> Self;
    fn variable(name: &str) -> Result<Self>;
    fn plus(self, o: Self) -> Self;
    fn minus(self, o: Self) -> Self;
    fn times(self, o: Self) -> Self;
    fn divide(self, o: Self) -> Result<Self>;
    fn power(self, n: i64) -> Result<Self>;
}

struct Parser<'a> {
    toks: &'a [Token],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Token> {
        self.toks.get(self.pos)
    }

    fn eat_op(&mut self, op: char) -> bool {
        if self.peek() == Some(&Token::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr<V: ExprValue>(&mut self) -> Result<V> {
        let mut acc = self.term::<V>()?;
        loop {
            if self.eat_op('+') {
                acc = acc.plus(self.term()?);
            } else if self.eat_op('-') {
                acc = acc.minus(self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term<V: ExprValue>(&mut self) -> Result<V> {
        let mut acc = self.unary::<V>()?;
        loop {
            if self.eat_op('*') {
                acc = acc.times(self.unary()?);
            } else if self.eat_op('/') {
                acc = acc.divide(self.unary()?)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary<V: ExprValue>(&mut self) -> Result<V> {
        if self.eat_op('-') {
            let v: V = self.unary()?;
            return Ok(V::constant(BigRational::from_integer((-1).into())).times(v));
        }
        if self.eat_op('+') {
            return self.unary();
        }
        let base = self.atom::<V>()?;
        if self.eat_op('^') {
            let neg = self.eat_op('-');
            match self.peek().cloned() {
                Some(Token::Num(n)) => {
                    self.pos += 1;
                    let n: i64 = n
                        .try_into()
                        .map_err(|_| Error::Parse("exponent too large".into()))?;
                    return base.power(if neg { -n } else { n });
                }
                _ => return Err(Error::Parse("expected integer exponent".into())),
            }
        }
        Ok(base)
    }

    fn atom<V: ExprValue>(&mut self) -> Result<V> {
        match self.peek().cloned() {
            Some(Token::Num(n)) => {
                self.pos += 1;
                Ok(V::constant(BigRational::from_integer(n)))
            }
            Some(Token::Ident(name)) => {
                self.pos += 1;
                V::variable(&name)
            }
            Some(Token::Op('(')) => {
                self.pos += 1;
                let v = self.expr()?;
                if !self.eat_op(')') {
                    return Err(Error::Parse("missing ')'".into()));
                }
                Ok(v)
            }
            other => Err(Error::Parse(format!("unexpected token {other:?}"))),
        }
    }
}

fn parse<V: ExprValue>(s: &str) -> Result<V> {
    let toks = tokenize(s)?;
    if toks.is_empty() {
        return Err(Error::Parse("empty expression".into()));
    }
    let mut p = Parser {
        toks: &toks,
        pos: 0,
    };
    let v = p.expr()?;
    if p.pos != toks.len() {
        return Err(Error::Parse(format!(
            "trailing input after token {}",
            p.pos
        )));
    }
    Ok(v)
}

impl ExprValue for RatFunc {
    fn constant(q: BigRational) -> Self {
        RatFunc::from_rational(q)
    }
    fn variable(name: &str) -> Result<Self> {
        match name {
            "k" => Ok(RatFunc::k()),
            "p0" | "p_0" => Ok(RatFunc::p0()),
            _ => Err(Error::Parse(format!("unknown parameter {name:?}"))),
        }
    }
    fn plus(self, o: Self) -> Self {
        self + o
    }
    fn minus(self, o: Self) -> Self {
        self - o
    }
    fn times(self, o: Self) -> Self {
        self * o
    }
    fn divide(self, o: Self) -> Result<Self> {
        self.checked_div(&o)
    }
    fn power(self, n: i64) -> Result<Self> {
        let n = i32::try_from(n).map_err(|_| Error::Parse("exponent too large".into()))?;
        self.pow(n)
    }
}

impl ExprValue for SymFunc<RatFunc> {
    fn constant(q: BigRational) -> Self {
        SymFunc::constant(RatFunc::from_rational(q))
    }
    fn variable(name: &str) -> Result<Self> {
        if let Ok(r) = RatFunc::variable(name) {
            return Ok(SymFunc::constant(r));
        }
        if name == "w" {
            return Ok(SymFunc::monomial(PMonomial::w()));
        }
        if let Some(idx) = name.strip_prefix("p_").or_else(|| name.strip_prefix('p')) {
            let i: i32 = idx
                .parse()
                .map_err(|_| Error::Parse(format!("bad generator {name:?}")))?;
            if i != 0 {
                return Ok(SymFunc::generator(i));
            }
        }
        Err(Error::Parse(format!("unknown symbol {name:?}")))
    }
    fn plus(self, o: Self) -> Self {
        &self + &o
    }
    fn minus(self, o: Self) -> Self {
        &self - &o
    }
    fn times(self, o: Self) -> Self {
        &self * &o
    }
    fn divide(self, o: Self) -> Result<Self> {
        match o.as_scalar() {
            Some(c) => {
                let inv = c.inv()?;
                Ok(self.scale(&inv))
            }
            None => Err(Error::Parse(
                "division is only defined by coefficient-field elements".into(),
            )),
        }
    }
    fn power(self, n: i64) -> Result<Self> {
        if n < 0 {
            return match self.as_scalar() {
                Some(c) => Ok(SymFunc::constant(c.pow(n as i32)?)),
                None => Err(Error::Parse("negative power of a generator".into())),
            };
        }
        Ok(self.pow(n as u32))
    }
}

pub fn parse_ratfunc(s: &str) -> Result<RatFunc> {
    parse(s)
}

pub fn parse_symfunc(s: &str) -> Result<SymFunc<RatFunc>> {
    parse(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_parameters_and_fractions() {
        let f = parse_ratfunc("(-p0) / (k*p0 - k - 1)").unwrap();
        let g = RatFunc::p0()
            .checked_div(&(RatFunc::one() + RatFunc::k() - RatFunc::k() * RatFunc::p0()))
            .unwrap();
        assert_eq!(f, g);
        assert_eq!(parse_ratfunc("3/2*k^2").unwrap().to_string(), "3/2*k^2");
        assert_eq!(parse_ratfunc("k^-1").unwrap(), RatFunc::k().inv().unwrap());
    }

    #[test]
    fn parses_signed_generators() {
        let f = parse_symfunc("p_1*p_-1 - 1").unwrap();
        assert_eq!(f.to_string(), "p_1*p_-1 - 1");
        assert_eq!(
            parse_symfunc("p_0").unwrap(),
            SymFunc::constant(RatFunc::p0())
        );
        assert!(parse_symfunc("1/p_1").is_err());
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_ratfunc("k +").is_err());
        assert!(parse_ratfunc("q").is_err());
        assert!(parse_ratfunc("(k").is_err());
        assert!(parse_ratfunc("1/(k-k)").is_err());
    }
}
