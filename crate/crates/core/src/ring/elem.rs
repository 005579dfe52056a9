use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed};

use super::laurent::{Exponent, LaurentPoly};
use super::RingError;

/// Element of `Z[A^±1, B^±1, a^±1]` localized at `A - B`, stored as
/// `num / (A - B)^denom_pow`.
///
/// Values are kept canonical: either `denom_pow == 0` or `num` is not
/// divisible by `A - B`. Canonical forms compare structurally.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RingElem {
    num: LaurentPoly,
    denom_pow: u32,
}

impl RingElem {
    /// Canonicalize `num / (A - B)^k`.
    pub fn reduce(mut num: LaurentPoly, mut k: u32) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        while k > 0 {
            match num.div_a_minus_b() {
                Some(q) => {
                    num = q;
                    k -= 1;
                }
                None => break,
            }
        }
        Self { num, denom_pow: k }
    }

    pub fn from_poly(num: LaurentPoly) -> Self {
        Self { num, denom_pow: 0 }
    }

    pub fn zero() -> Self {
        Self::from_poly(LaurentPoly::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(LaurentPoly::one())
    }

    pub fn int(n: i64) -> Self {
        Self::from_poly(LaurentPoly::monomial(n, [0, 0, 0]))
    }

    pub fn monomial(coeff: i64, exp: Exponent) -> Self {
        Self::from_poly(LaurentPoly::monomial(coeff, exp))
    }

    pub fn num(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn denom_pow(&self) -> u32 {
        self.denom_pow
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.denom_pow == 0 && self.num.is_one()
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Integer power allowing negative exponents for monomials such as `a`.
    pub fn pow_i(&self, n: i32) -> Option<Self> {
        if n >= 0 {
            return Some(self.pow(n as u32));
        }
        let inv = self.monomial_inverse()?;
        Some(inv.pow(n.unsigned_abs()))
    }

    /// Inverse of a unit monomial `±A^i B^j a^l`.
    pub fn monomial_inverse(&self) -> Option<Self> {
        if self.denom_pow != 0 || self.num.len() != 1 {
            return None;
        }
        let (e, c) = self.num.terms().next().unwrap();
        if !c.abs().is_one() {
            return None;
        }
        Some(Self::from_poly(LaurentPoly::monomial(
            c.clone(),
            [-e[0], -e[1], -e[2]],
        )))
    }

    fn lift(&self, k: u32) -> LaurentPoly {
        debug_assert!(k >= self.denom_pow);
        &self.num * &LaurentPoly::a_minus_b().pow(k - self.denom_pow)
    }

    /// Look up one of the named structure constants.
    pub fn constant(name: &str) -> Result<Self, RingError> {
        let c = match name {
            "mu" => constants::mu(),
            "bigO" | "O" => constants::big_o(),
            "gamma" => constants::gamma(),
            "xi" => constants::xi(),
            "a" => Self::monomial(1, [0, 0, 1]),
            "ainv" => Self::monomial(1, [0, 0, -1]),
            "A" => Self::monomial(1, [1, 0, 0]),
            "B" => Self::monomial(1, [0, 1, 0]),
            "one" => Self::one(),
            "zero" => Self::zero(),
            other => return Err(RingError::UnknownConstant(other.to_string())),
        };
        Ok(c)
    }
}

/// Structure constants of the planar calculus.
pub mod constants {
    use super::*;

    fn frac(num: LaurentPoly) -> RingElem {
        RingElem::reduce(num, 1)
    }

    /// `(a - a^-1)/(A - B) + 1`
    pub fn mu() -> RingElem {
        let n = LaurentPoly::from_terms([([0, 0, 1], 1), ([0, 0, -1], -1)]);
        &frac(n) + &RingElem::one()
    }

    /// `(A a^-1 - B a)/(A - B) - (A + B)`
    pub fn big_o() -> RingElem {
        let n = LaurentPoly::from_terms([([1, 0, -1], 1), ([0, 1, 1], -1)]);
        let ab = RingElem::from_poly(LaurentPoly::from_terms([([1, 0, 0], 1), ([0, 1, 0], 1)]));
        &frac(n) - &ab
    }

    /// `(B^2 a - A^2 a^-1)/(A - B) + AB`
    pub fn gamma() -> RingElem {
        let n = LaurentPoly::from_terms([([0, 2, 1], 1), ([2, 0, -1], -1)]);
        &frac(n) + &RingElem::monomial(1, [1, 1, 0])
    }

    /// `(B^3 a - A^3 a^-1)/(A - B)`
    pub fn xi() -> RingElem {
        frac(LaurentPoly::from_terms([([0, 3, 1], 1), ([3, 0, -1], -1)]))
    }
}

impl Add for &RingElem {
    type Output = RingElem;
    fn add(self, rhs: &RingElem) -> RingElem {
        if self.denom_pow == rhs.denom_pow {
            return RingElem::reduce(&self.num + &rhs.num, self.denom_pow);
        }
        let k = self.denom_pow.max(rhs.denom_pow);
        RingElem::reduce(&self.lift(k) + &rhs.lift(k), k)
    }
}

impl Sub for &RingElem {
    type Output = RingElem;
    fn sub(self, rhs: &RingElem) -> RingElem {
        self + &(-rhs)
    }
}

impl Neg for &RingElem {
    type Output = RingElem;
    fn neg(self) -> RingElem {
        RingElem {
            num: -&self.num,
            denom_pow: self.denom_pow,
        }
    }
}

impl Mul for &RingElem {
    type Output = RingElem;
    fn mul(self, rhs: &RingElem) -> RingElem {
        RingElem::reduce(&self.num * &rhs.num, self.denom_pow + rhs.denom_pow)
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for RingElem {
            type Output = RingElem;
            fn $m(self, rhs: RingElem) -> RingElem { (&self).$m(&rhs) }
        }
        impl $tr<&RingElem> for RingElem {
            type Output = RingElem;
            fn $m(self, rhs: &RingElem) -> RingElem { (&self).$m(rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for RingElem {
    type Output = RingElem;
    fn neg(self) -> RingElem {
        -&self
    }
}

impl std::iter::Sum for RingElem {
    fn sum<I: Iterator<Item = RingElem>>(iter: I) -> Self {
        iter.fold(RingElem::zero(), |acc, x| &acc + &x)
    }
}

/// Writes `c*A^i*B^j*a^l` terms joined by ` + `, highest exponent triple first.
pub(crate) fn write_terms<'a, I>(f: &mut fmt::Formatter<'_>, terms: I, vars: &[&str]) -> fmt::Result
where
    I: Iterator<Item = (&'a [i32], &'a BigInt)>,
{
    let mut first = true;
    let mut any = false;
    for (exp, c) in terms {
        any = true;
        if !first {
            f.write_str(" + ")?;
        }
        first = false;
        let mut factors: Vec<String> = Vec::new();
        if !c.is_one() || exp.iter().all(|&e| e == 0) {
            factors.push(c.to_string());
        }
        for (v, &e) in vars.iter().zip(exp) {
            if e != 0 {
                factors.push(format!("{v}^{e}"));
            }
        }
        f.write_str(&factors.join("*"))?;
    }
    if !any {
        f.write_str("0")?;
    }
    Ok(())
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, self.terms().rev().map(|(e, c)| (&e[..], c)), &["A", "B", "a"])
    }
}

impl fmt::Display for RingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denom_pow == 0 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/(A-B)^{}", self.num, self.denom_pow)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::constants::*;
    use super::*;

    fn a() -> RingElem {
        RingElem::constant("a").unwrap()
    }

    #[test]
    fn additive_inverse() {
        let x = RingElem::constant("A").unwrap();
        assert!((&x + &(-&x)).is_zero());
    }

    #[test]
    fn mu_times_a_minus_b() {
        let amb = RingElem::from_poly(LaurentPoly::a_minus_b());
        let p = &mu() * &amb;
        let want = LaurentPoly::from_terms([([0, 0, 1], 1), ([0, 0, -1], -1), ([1, 0, 0], 1), ([0, 1, 0], -1)]);
        assert_eq!(p.denom_pow(), 0);
        assert_eq!(p.num(), &want);
    }

    #[test]
    fn reduce_examples() {
        let amb = LaurentPoly::a_minus_b();
        assert!(RingElem::reduce(amb.clone(), 1).is_one());
        let x = RingElem::reduce(&LaurentPoly::var_a_upper() * &amb, 1);
        assert_eq!(x, RingElem::constant("A").unwrap());
        let n = LaurentPoly::from_terms([([0, 0, 1], 1), ([0, 0, -1], -1), ([1, 0, 0], 1), ([0, 1, 0], -1)]);
        let r = RingElem::reduce(n.clone(), 1);
        assert_eq!(r.denom_pow(), 1);
        assert_eq!(r.num(), &n);
    }

    #[test]
    fn appendix_identities() {
        let big_a = RingElem::constant("A").unwrap();
        let big_b = RingElem::constant("B").unwrap();
        assert_eq!(&(&big_o() + &(&big_a * &mu())) + &big_b, a());
        assert_eq!(&(&big_o() + &big_a) + &(&big_b * &mu()), RingElem::constant("ainv").unwrap());
    }

    #[test]
    fn mu_renders_canonically() {
        assert_eq!(mu().to_string(), "(A^1 + -1*B^1 + a^1 + -1*a^-1)/(A-B)^1");
        assert_eq!(RingElem::one().to_string(), "1");
        assert_eq!(RingElem::zero().to_string(), "0");
    }

    #[test]
    fn unknown_constant() {
        assert!(matches!(RingElem::constant("zeta"), Err(RingError::UnknownConstant(_))));
    }
}
