//! The field `Q(k, p0)` of rational functions in the two formal parameters.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::poly::{fmt_rational, ParamPoly};
use crate::error::{Error, Result};

/// Reduced fraction `num / den` with `gcd(num, den) = 1` and the deg-lex
/// leading coefficient of `den` equal to 1. Zero is `0 / 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: ParamPoly,
    den: ParamPoly,
}

impl RatFunc {
    pub fn new(num: ParamPoly, den: ParamPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalize(num, den))
    }

    fn normalize(num: ParamPoly, den: ParamPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        if let Some(c) = den.as_constant() {
            return RatFunc {
                num: num.scale(&c.recip()),
                den: ParamPoly::one(),
            };
        }
        let g = ParamPoly::gcd(&num, &den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (
                num.exact_div(&g).expect("gcd divides numerator"),
                den.exact_div(&g).expect("gcd divides denominator"),
            )
        };
        let lc = den.leading().map(|(_, c)| c.clone()).unwrap();
        if lc.is_one() {
            RatFunc { num, den }
        } else {
            let inv = lc.recip();
            RatFunc {
                num: num.scale(&inv),
                den: den.scale(&inv),
            }
        }
    }

    pub fn zero() -> Self {
        RatFunc {
            num: ParamPoly::zero(),
            den: ParamPoly::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_poly(ParamPoly::one())
    }

    pub fn from_poly(p: ParamPoly) -> Self {
        RatFunc {
            num: p,
            den: ParamPoly::one(),
        }
    }

    pub fn from_rational(c: BigRational) -> Self {
        Self::from_poly(ParamPoly::constant(c))
    }

    pub fn from_i64(n: i64) -> Self {
        Self::from_poly(ParamPoly::from_i64(n))
    }

    pub fn from_frac(n: i64, d: i64) -> Self {
        Self::from_rational(BigRational::new(n.into(), d.into()))
    }

    /// The formal parameter `k`.
    pub fn k() -> Self {
        Self::from_poly(ParamPoly::k())
    }

    /// The formal parameter `p0`.
    pub fn p0() -> Self {
        Self::from_poly(ParamPoly::p0())
    }

    pub fn num(&self) -> &ParamPoly {
        &self.num
    }

    pub fn den(&self) -> &ParamPoly {
        &self.den
    }

    /// Builds `num / den` from a pair known to be coprime; only the leading
    /// coefficient of `den` is normalized.
    pub(crate) fn from_coprime(num: ParamPoly, den: ParamPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let inv = den
            .leading()
            .map(|(_, c)| c.recip())
            .expect("nonzero denominator");
        RatFunc {
            num: num.scale(&inv),
            den: den.scale(&inv),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_constant(&self) -> Option<BigRational> {
        if self.den.is_one() {
            self.num.as_constant()
        } else {
            None
        }
    }

    pub fn depends_on_k(&self) -> bool {
        self.num.depends_on_k() || self.den.depends_on_k()
    }

    pub fn depends_on_p0(&self) -> bool {
        self.num.depends_on_p0() || self.den.depends_on_p0()
    }

    pub fn checked_div(&self, o: &RatFunc) -> Result<RatFunc> {
        Ok(self * &o.inv()?)
    }

    pub fn inv(&self) -> Result<RatFunc> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalize(self.den.clone(), self.num.clone()))
    }

    pub fn pow(&self, n: i32) -> Result<RatFunc> {
        let base = if n < 0 { self.inv()? } else { self.clone() };
        let mut acc = RatFunc::one();
        for _ in 0..n.unsigned_abs() {
            acc = &acc * &base;
        }
        Ok(acc)
    }

    /// Composition `f(k_image, p0_image)`.
    pub fn substitute(&self, k_image: &RatFunc, p0_image: &RatFunc) -> Result<RatFunc> {
        let den = eval_poly_at(&self.den, k_image, p0_image);
        if den.is_zero() {
            return Err(Error::DegenerateSubstitution {
                den: self.den.to_string(),
            });
        }
        let num = eval_poly_at(&self.num, k_image, p0_image);
        num.checked_div(&den)
    }

    /// Exact value at a rational point.
    pub fn eval_at(&self, k: &BigRational, p0: &BigRational) -> Result<BigRational> {
        let d = self.den.eval(k, p0);
        if d.is_zero() {
            return Err(Error::Pole {
                k: fmt_rational(k),
                p0: fmt_rational(p0),
                den: self.den.to_string(),
            });
        }
        Ok(self.num.eval(k, p0) / d)
    }
}

fn eval_poly_at(p: &ParamPoly, k: &RatFunc, p0: &RatFunc) -> RatFunc {
    let mut kp = vec![RatFunc::one()];
    for i in 0..p.degree_k() as usize {
        let next = &kp[i] * k;
        kp.push(next);
    }
    let mut pp = vec![RatFunc::one()];
    for i in 0..p.degree_p0() as usize {
        let next = &pp[i] * p0;
        pp.push(next);
    }
    let mut acc = RatFunc::zero();
    for (e, c) in p.terms() {
        let t = &(&kp[e.k as usize] * &pp[e.p0 as usize]) * &RatFunc::from_rational(c.clone());
        acc = &acc + &t;
    }
    acc
}

impl Default for RatFunc {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<ParamPoly> for RatFunc {
    fn from(p: ParamPoly) -> Self {
        RatFunc::from_poly(p)
    }
}

impl From<i64> for RatFunc {
    fn from(n: i64) -> Self {
        RatFunc::from_i64(n)
    }
}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, o: &RatFunc) -> RatFunc {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            return RatFunc::normalize(&self.num + &o.num, self.den.clone());
        }
        if self.den.is_one() {
            return RatFunc {
                num: &(&self.num * &o.den) + &o.num,
                den: o.den.clone(),
            };
        }
        if o.den.is_one() {
            return RatFunc {
                num: &self.num + &(&o.num * &self.den),
                den: self.den.clone(),
            };
        }
        let g = ParamPoly::gcd(&self.den, &o.den);
        if g.is_one() {
            let num = &(&self.num * &o.den) + &(&o.num * &self.den);
            // both dens are monic and coprime, so the sum is already reduced
            return RatFunc {
                num,
                den: &self.den * &o.den,
            };
        }
        let a = self.den.exact_div(&g).unwrap();
        let b = o.den.exact_div(&g).unwrap();
        let num = &(&self.num * &b) + &(&o.num * &a);
        if num.is_zero() {
            return RatFunc::zero();
        }
        // any common factor of num and a*b*g already divides g
        let h = ParamPoly::gcd(&num, &g);
        let (num, g) = if h.is_one() {
            (num, g)
        } else {
            (num.exact_div(&h).unwrap(), g.exact_div(&h).unwrap())
        };
        let den = &(&a * &b) * &g;
        let inv = den.leading().map(|(_, c)| c.recip()).unwrap();
        RatFunc {
            num: num.scale(&inv),
            den: den.scale(&inv),
        }
    }
}

impl Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, o: &RatFunc) -> RatFunc {
        self + &(-o)
    }
}

impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, o: &RatFunc) -> RatFunc {
        if self.is_zero() || o.is_zero() {
            return RatFunc::zero();
        }
        if self.den.is_one() && o.den.is_one() {
            return RatFunc::from_poly(&self.num * &o.num);
        }
        if let Some(c) = self.as_constant() {
            return RatFunc {
                num: o.num.scale(&c),
                den: o.den.clone(),
            };
        }
        if let Some(c) = o.as_constant() {
            return RatFunc {
                num: self.num.scale(&c),
                den: self.den.clone(),
            };
        }
        let g1 = ParamPoly::gcd(&self.num, &o.den);
        let g2 = ParamPoly::gcd(&o.num, &self.den);
        let n1 = self.num.exact_div(&g1).unwrap();
        let d2 = o.den.exact_div(&g1).unwrap();
        let n2 = o.num.exact_div(&g2).unwrap();
        let d1 = self.den.exact_div(&g2).unwrap();
        let num = &n1 * &n2;
        let den = &d1 * &d2;
        let lc = den.leading().map(|(_, c)| c.clone()).unwrap();
        let inv = lc.recip();
        RatFunc {
            num: num.scale(&inv),
            den: den.scale(&inv),
        }
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        -&self
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for RatFunc {
            type Output = RatFunc;
            fn $m(self, o: RatFunc) -> RatFunc { (&self).$m(&o) }
        }
        impl<'a> $tr<&'a RatFunc> for RatFunc {
            type Output = RatFunc;
            fn $m(self, o: &'a RatFunc) -> RatFunc { (&self).$m(o) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl std::str::FromStr for RatFunc {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        crate::parse::parse_ratfunc(s)
    }
}

impl serde::Serialize for RatFunc {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for RatFunc {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k() -> RatFunc {
        RatFunc::k()
    }
    fn p0() -> RatFunc {
        RatFunc::p0()
    }
    fn c(n: i64) -> RatFunc {
        RatFunc::from_i64(n)
    }

    /// 1 + k - k p0
    fn e11_half() -> RatFunc {
        &(&c(1) + &k()) - &(&k() * &p0())
    }

    #[test]
    fn cancels_identical_factor() {
        let f = (&k() + &c(1)).checked_div(&(&k() + &c(1))).unwrap();
        assert!(f.is_one());
    }

    #[test]
    fn cancels_difference_of_squares() {
        let f = (&(&k() * &k()) - &c(1))
            .checked_div(&(&k() - &c(1)))
            .unwrap();
        assert_eq!(f, &k() + &c(1));
    }

    #[test]
    fn p11_coefficient_is_stable_under_zero_addition() {
        let f = p0().checked_div(&e11_half()).unwrap();
        assert_eq!(&f + &RatFunc::zero(), f);
        // normal form: denominator leading term (-k*p0) made monic
        assert_eq!(f.den().to_string(), "k*p0 - k - 1");
        assert_eq!(f.num().to_string(), "-p0");
    }

    #[test]
    fn substitution_examples() {
        let inv_k = k().inv().unwrap();
        let p0_over_k = p0().checked_div(&k()).unwrap();
        assert_eq!(k().substitute(&inv_k, &p0_over_k).unwrap(), inv_k);
        assert_eq!(e11_half().substitute(&c(-1), &p0()).unwrap(), p0());
        let f = p0().checked_div(&e11_half()).unwrap();
        assert!(f.substitute(&c(-1), &p0()).unwrap().is_one());
    }

    #[test]
    fn substitution_into_vanishing_denominator_fails() {
        let f = c(1).checked_div(&(&k() + &c(1))).unwrap();
        assert!(matches!(
            f.substitute(&c(-1), &p0()),
            Err(Error::DegenerateSubstitution { .. })
        ));
    }

    #[test]
    fn evaluation_examples() {
        let r = |n: i64| BigRational::from_integer(n.into());
        assert_eq!(k().eval_at(&r(2), &r(5)).unwrap(), r(2));
        let f = p0().checked_div(&e11_half()).unwrap();
        assert_eq!(f.eval_at(&r(1), &r(3)).unwrap(), r(-3));
        let pole = c(1).checked_div(&(&k() - &c(1))).unwrap();
        assert!(matches!(
            pole.eval_at(&r(1), &r(7)),
            Err(Error::Pole { .. })
        ));
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert_eq!(
            k().checked_div(&RatFunc::zero()),
            Err(Error::DivisionByZero)
        );
    }

    #[test]
    fn text_round_trip() {
        let f = (&(&k() * &p0()) - &c(3))
            .checked_div(&(&(&k() * &c(2)) + &RatFunc::from_frac(1, 2)))
            .unwrap();
        let s = f.to_string();
        assert_eq!(s.parse::<RatFunc>().unwrap(), f);
    }
}
