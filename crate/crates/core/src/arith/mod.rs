//! Exact coefficient arithmetic.
//!
//! Everything above this module is generic over [`Coeff`]: the symbolic field
//! `Q(k, p0)` ([`RatFunc`]) is the ground truth, and `BigRational` serves as
//! the numeric mode where `k` and `p0` have been fixed to rational values.

mod factored;
mod poly;
mod ratfunc;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

pub(crate) use factored::{factor_small, Factored};
pub use num_rational::BigRational;
pub use poly::{Exp, ParamPoly};
pub use ratfunc::RatFunc;

pub(crate) use poly::{fmt_rational, rat};

use crate::error::{Error, Result};
use num_traits::{One, Zero};

/// A coefficient field.
pub trait Coeff:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + Sub<Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + Mul<Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn from_rational(q: BigRational) -> Self;
    fn checked_div(&self, other: &Self) -> Result<Self>;

    /// Image of a symbolic coefficient when `k` and `p0` are bound to the
    /// given field elements.
    fn from_ratfunc(f: &RatFunc, k: &Self, p0: &Self) -> Result<Self>;

    fn from_i64(n: i64) -> Self {
        Self::from_rational(rat(n))
    }

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    /// The value as a plain rational, when it is one.
    fn as_rational(&self) -> Option<BigRational>;
}

impl Coeff for RatFunc {
    fn zero() -> Self {
        RatFunc::zero()
    }
    fn one() -> Self {
        RatFunc::one()
    }
    fn is_zero(&self) -> bool {
        RatFunc::is_zero(self)
    }
    fn from_rational(q: BigRational) -> Self {
        RatFunc::from_rational(q)
    }
    fn checked_div(&self, other: &Self) -> Result<Self> {
        RatFunc::checked_div(self, other)
    }
    fn from_ratfunc(f: &RatFunc, k: &Self, p0: &Self) -> Result<Self> {
        if *k == RatFunc::k() && *p0 == RatFunc::p0() {
            Ok(f.clone())
        } else {
            f.substitute(k, p0)
        }
    }
    fn is_one(&self) -> bool {
        RatFunc::is_one(self)
    }
    fn as_rational(&self) -> Option<BigRational> {
        self.as_constant()
    }
}

impl Coeff for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn from_rational(q: BigRational) -> Self {
        q
    }
    fn checked_div(&self, other: &Self) -> Result<Self> {
        if Zero::is_zero(other) {
            return Err(Error::DivisionByZero);
        }
        Ok(self / other)
    }
    fn from_ratfunc(f: &RatFunc, k: &Self, p0: &Self) -> Result<Self> {
        f.eval_at(k, p0)
    }
    fn as_rational(&self) -> Option<BigRational> {
        Some(self.clone())
    }
}

/// Bindings of the two formal parameters inside a coefficient field.
#[derive(Clone, Debug, PartialEq)]
pub struct Params<C> {
    pub k: C,
    pub p0: C,
}

impl Params<RatFunc> {
    /// `k` and `p0` left as formal parameters.
    pub fn symbolic() -> Self {
        Params {
            k: RatFunc::k(),
            p0: RatFunc::p0(),
        }
    }
}

impl Params<BigRational> {
    pub fn numeric(k: BigRational, p0: BigRational) -> Self {
        Params { k, p0 }
    }
}

impl<C: Coeff> Params<C> {
    /// Specialize a symbolic coefficient to this field.
    pub fn embed(&self, f: &RatFunc) -> Result<C> {
        C::from_ratfunc(f, &self.k, &self.p0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn small_poly() -> impl Strategy<Value = ParamPoly> {
        prop::collection::vec(((0u32..3, 0u32..3), -4i64..5), 0..4).prop_map(|ts| {
            ParamPoly::from_terms(ts.into_iter().map(|((a, b), c)| (Exp::new(a, b), rat(c))))
        })
    }

    fn small_ratfunc() -> impl Strategy<Value = RatFunc> {
        (small_poly(), small_poly()).prop_map(|(n, d)| {
            let d = if d.is_zero() { ParamPoly::one() } else { d };
            RatFunc::new(n, d).unwrap()
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn field_axioms(a in small_ratfunc(), b in small_ratfunc(), c in small_ratfunc()) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert!((&a - &a).is_zero());
        }

        #[test]
        fn division_undoes_multiplication(a in small_ratfunc(), b in small_ratfunc()) {
            prop_assume!(!b.is_zero());
            prop_assert_eq!((&a * &b).checked_div(&b).unwrap(), a);
        }

        #[test]
        fn evaluation_is_a_homomorphism(a in small_ratfunc(), b in small_ratfunc(),
                                         kv in -5i64..6, pv in -5i64..6) {
            let (kv, pv) = (rat(kv), rat(pv));
            if let (Ok(x), Ok(y)) = (a.eval_at(&kv, &pv), b.eval_at(&kv, &pv)) {
                prop_assert_eq!((&a + &b).eval_at(&kv, &pv).unwrap(), &x + &y);
                prop_assert_eq!((&a * &b).eval_at(&kv, &pv).unwrap(), &x * &y);
                prop_assert_eq!((&a - &b).eval_at(&kv, &pv).unwrap(), &x - &y);
            }
        }

        #[test]
        fn text_form_round_trips(a in small_ratfunc()) {
            prop_assert_eq!(a.to_string().parse::<RatFunc>().unwrap(), a);
        }
    }
}
