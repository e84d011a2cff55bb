// Fractions over Q[k, p0] whose denominator is a product of known
// irreducible factors. Sums need no GCD: the common denominator is a
// maximum of exponents, and reduction is trial division.

use super::{BigRational, ParamPoly, RatFunc};

#[derive(Clone, Debug, Default)]
pub(crate) struct Factored {
    num: ParamPoly,
    /// Monic irreducible factors with multiplicities.
    den: Vec<(ParamPoly, u32)>,
}

impl Factored {
    pub(crate) fn from_poly(num: ParamPoly) -> Self {
        Factored {
            num,
            den: Vec::new(),
        }
    }

    pub(crate) fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub(crate) fn mul_poly(&self, p: &ParamPoly) -> Self {
        if p.is_zero() || self.is_zero() {
            return Self::default();
        }
        Factored {
            num: &self.num * p,
            den: self.den.clone(),
        }
    }

    fn exponent(&self, f: &ParamPoly) -> u32 {
        self.den.iter().find(|(g, _)| g == f).map_or(0, |(_, e)| *e)
    }

    fn lift(&self, den: &[(ParamPoly, u32)]) -> ParamPoly {
        den.iter().fold(self.num.clone(), |acc, (f, e)| {
            &acc * &f.pow(e - self.exponent(f))
        })
    }

    pub(crate) fn add(&self, o: &Factored) -> Factored {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        let mut den = self.den.clone();
        for (f, e) in &o.den {
            match den.iter_mut().find(|(g, _)| g == f) {
                Some((_, d)) => *d = (*d).max(*e),
                None => den.push((f.clone(), *e)),
            }
        }
        let num = &self.lift(&den) + &o.lift(&den);
        if num.is_zero() {
            return Self::default();
        }
        let mut out = Factored { num, den };
        out.reduce();
        out
    }

    pub(crate) fn mul(&self, o: &Factored) -> Factored {
        if self.is_zero() || o.is_zero() {
            return Self::default();
        }
        let mut out = Factored {
            num: &self.num * &o.num,
            den: self.den.clone(),
        };
        for (f, e) in &o.den {
            match out.den.iter_mut().find(|(g, _)| g == f) {
                Some((_, d)) => *d += e,
                None => out.den.push((f.clone(), *e)),
            }
        }
        out.reduce();
        out
    }

    pub(crate) fn neg(&self) -> Factored {
        Factored {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    /// Divides by `c * Π factors`; the factors must be monic irreducible.
    pub(crate) fn div(&self, c: &BigRational, factors: &[(ParamPoly, u32)]) -> Factored {
        let mut out = Factored {
            num: self.num.scale(&c.recip()),
            den: self.den.clone(),
        };
        for (f, e) in factors {
            match out.den.iter_mut().find(|(g, _)| g == f) {
                Some((_, d)) => *d += e,
                None => out.den.push((f.clone(), *e)),
            }
        }
        out.reduce();
        out
    }

    fn reduce(&mut self) {
        if self.num.is_zero() {
            self.den.clear();
            return;
        }
        for (f, e) in self.den.iter_mut() {
            while *e > 0 {
                match self.num.exact_div(f) {
                    Some(q) => {
                        self.num = q;
                        *e -= 1;
                    }
                    None => break,
                }
            }
        }
        self.den.retain(|(_, e)| *e > 0);
    }

    pub(crate) fn to_ratfunc(&self) -> RatFunc {
        let den = self
            .den
            .iter()
            .fold(ParamPoly::one(), |acc, (f, e)| &acc * &f.pow(*e));
        RatFunc::from_coprime(self.num.clone(), den)
    }
}

/// Splits `p` into a constant and monic irreducible factors, for polynomials
/// of degree at most one in each variable separately after removing content.
/// Returns `None` outside that class.
pub(crate) fn factor_small(p: &ParamPoly) -> Option<(BigRational, Vec<(ParamPoly, u32)>)> {
    if p.is_zero() {
        return None;
    }
    if let Some(c) = p.as_constant() {
        return Some((c, Vec::new()));
    }
    let mut factors: Vec<(ParamPoly, u32)> = Vec::new();
    let mut push = |f: ParamPoly| match factors.iter_mut().find(|(g, _)| *g == f) {
        Some((_, e)) => *e += 1,
        None => factors.push((f, 1)),
    };
    let mut rest = p.clone();
    // split off the content in Q[k] of a polynomial linear in p0
    if rest.degree_p0() == 1 && rest.degree_k() > 0 {
        let part = |deg: u32| {
            ParamPoly::from_terms(
                rest.terms()
                    .filter(|(e, _)| e.p0 == deg)
                    .map(|(e, c)| (super::Exp::new(e.k, 0), c.clone())),
            )
        };
        let g = ParamPoly::gcd(&part(0), &part(1));
        if g.as_constant().is_none() {
            rest = rest.exact_div(&g)?;
            for f in split_univariate(&g)? {
                push(f);
            }
        }
    }
    match rest.degree_p0() {
        // primitive and linear in p0, hence irreducible
        1 => push(rest.monic()),
        0 => {
            for f in split_univariate(&rest)? {
                push(f);
            }
        }
        _ => return None,
    }
    let content = factors
        .iter()
        .fold(ParamPoly::one(), |acc, (f, e)| &acc * &f.pow(*e));
    let c = p.exact_div(&content)?.as_constant()?;
    Some((c, factors))
}

/// Monic irreducible factors of a polynomial in one variable, when it is
/// a product of a power of the variable and at most one linear factor.
fn split_univariate(p: &ParamPoly) -> Option<Vec<ParamPoly>> {
    let mut out = Vec::new();
    let mut rest = p.clone();
    let var = if p.depends_on_k() {
        ParamPoly::k()
    } else {
        ParamPoly::p0()
    };
    while rest.as_constant().is_none() {
        if let Some(q) = rest.exact_div(&var) {
            out.push(var.clone());
            rest = q;
            continue;
        }
        if rest.degree_k() + rest.degree_p0() > 1 {
            return None;
        }
        out.push(rest.monic());
        break;
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn poly(s: &str) -> ParamPoly {
        let r: RatFunc = s.parse().unwrap();
        assert!(r.den().is_one());
        r.num().clone()
    }

    fn expand(c: &BigRational, fs: &[(ParamPoly, u32)]) -> ParamPoly {
        fs.iter()
            .fold(ParamPoly::one().scale(c), |acc, (f, e)| &acc * &f.pow(*e))
    }

    #[test]
    fn factors_eigenvalue_gaps() {
        for s in [
            "2 + 2*k - 2*k*p0",
            "4*k - 2*k*p0",
            "6",
            "3 + 3*k",
            "-2*k",
            "2*k*p0 - 2*k^2*p0 + 2 - 2*k",
        ] {
            let p = poly(s);
            let (c, fs) = factor_small(&p).unwrap();
            assert_eq!(expand(&c, &fs), p, "{s}");
        }
        let (_, fs) = factor_small(&poly("4*k - 2*k*p0")).unwrap();
        assert_eq!(fs.len(), 2);
    }

    #[test]
    fn sums_agree_with_ratfunc() {
        let a = Factored::from_poly(poly("1 + p0")).div(&BigRational::one(), &[(poly("k + 1"), 1)]);
        let b = Factored::from_poly(poly("k"))
            .div(&BigRational::from_integer(2.into()), &[(poly("k + 1"), 2)]);
        let expect: RatFunc = "(1 + p0)/(k + 1) + k/(2*(k + 1)^2)".parse().unwrap();
        assert_eq!(a.add(&b).to_ratfunc(), expect);
        let cancel =
            Factored::from_poly(poly("k^2 - 1")).div(&BigRational::one(), &[(poly("k + 1"), 1)]);
        assert_eq!(cancel.to_ratfunc(), "k - 1".parse::<RatFunc>().unwrap());
    }
}
