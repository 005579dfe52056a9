//! Exact coefficient arithmetic.
//!
//! Values of the polynomial live in `Z[A^±1, B^±1, a^±1]` localized at
//! `A - B`. A [`RingElem`] stores a Laurent numerator together with a power
//! of `A - B` in the denominator and is always kept reduced, so equality
//! is structural. [`UniLaurent`] holds values after substituting `B = A^-1`.

mod elem;
mod expr;
mod laurent;
mod uni;

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

pub use elem::{constants, RingElem};
pub use expr::parse_expr;
pub use laurent::{Exponent, LaurentPoly};
pub use uni::UniLaurent;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RingError {
    #[error("unknown constant `{0}`")]
    UnknownConstant(String),
    #[error("(A - A^-1)^{0} does not divide the specialized numerator")]
    NonExactSpecialization(u32),
    #[error("evaluation point is a pole (A = B or a zero coordinate)")]
    PoleAtPoint,
    #[error("bad weight expression `{0}`")]
    BadExpression(String),
}

/// Substitutions `B = A^-1`, `a = ±A^n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Specialization {
    /// `a = A`: the planarity test.
    PlanarTest,
    /// `a = -A^3`: the Kauffman bracket.
    Bracket,
    /// `a = A^2`: the Yamada polynomial.
    Yamada,
}

impl Specialization {
    pub const ALL: [Specialization; 3] = [Self::PlanarTest, Self::Bracket, Self::Yamada];

    /// `(sign, exponent)` with `a = sign * A^exponent`.
    fn a_value(self) -> (i32, i32) {
        match self {
            Self::PlanarTest => (1, 1),
            Self::Bracket => (-1, 3),
            Self::Yamada => (1, 2),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::PlanarTest => "planar-test",
            Self::Bracket => "bracket",
            Self::Yamada => "yamada",
        }
    }
}

impl FromStr for Specialization {
    type Err = RingError;
    fn from_str(s: &str) -> Result<Self, RingError> {
        match s {
            "planar-test" | "planar_test" => Ok(Self::PlanarTest),
            "bracket" => Ok(Self::Bracket),
            "yamada" => Ok(Self::Yamada),
            other => Err(RingError::UnknownConstant(other.to_string())),
        }
    }
}

fn specialize_poly(p: &LaurentPoly, spec: Specialization) -> UniLaurent {
    let (sign, n) = spec.a_value();
    let mut out = UniLaurent::zero();
    for (e, c) in p.terms() {
        let mut c = c.clone();
        if sign < 0 && e[2].rem_euclid(2) == 1 {
            c = -c;
        }
        out.add_term(e[0] - e[1] + n * e[2], c);
    }
    out
}

/// Substitute `B = A^-1` and the chosen value of `a`, dividing out the
/// specialized denominator exactly.
pub fn specialize(x: &RingElem, spec: Specialization) -> Result<UniLaurent, RingError> {
    let k = x.denom_pow();
    // (A - A^-1)^k = A^-k (A^2 - 1)^k
    let mut num = specialize_poly(x.num(), spec).shift(k as i32);
    for _ in 0..k {
        num = num
            .div_a2_minus_1()
            .ok_or(RingError::NonExactSpecialization(k))?;
    }
    Ok(num)
}

/// A rational point `(A, B, a)` for randomized identity testing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Point {
    pub upper_a: BigRational,
    pub b: BigRational,
    pub a: BigRational,
}

impl Point {
    pub fn new(upper_a: (i64, i64), b: (i64, i64), a: (i64, i64)) -> Self {
        let r = |(n, d): (i64, i64)| BigRational::new(BigInt::from(n), BigInt::from(d));
        Self {
            upper_a: r(upper_a),
            b: r(b),
            a: r(a),
        }
    }
}

fn rpow(x: &BigRational, e: i32) -> BigRational {
    let base = if e < 0 { x.recip() } else { x.clone() };
    let mut acc = BigRational::one();
    for _ in 0..e.unsigned_abs() {
        acc *= &base;
    }
    acc
}

/// Exact evaluation of `x` at a rational point off the excluded locus.
pub fn eval_rational(x: &RingElem, p: &Point) -> Result<BigRational, RingError> {
    if p.upper_a == p.b || p.upper_a.is_zero() || p.b.is_zero() || p.a.is_zero() {
        return Err(RingError::PoleAtPoint);
    }
    let mut num = BigRational::zero();
    for (e, c) in x.num().terms() {
        num += BigRational::from_integer(c.clone())
            * rpow(&p.upper_a, e[0])
            * rpow(&p.b, e[1])
            * rpow(&p.a, e[2]);
    }
    let den = rpow(&(&p.upper_a - &p.b), x.denom_pow() as i32);
    Ok(num / den)
}

#[cfg(test)]
mod tests {
    use super::constants::*;
    use super::*;

    #[test]
    fn planar_test_constants() {
        let s = Specialization::PlanarTest;
        assert_eq!(specialize(&mu(), s).unwrap(), UniLaurent::monomial(2, 0));
        assert_eq!(specialize(&big_o(), s).unwrap(), UniLaurent::vertex_factor());
        assert_eq!(specialize(&gamma(), s).unwrap(), UniLaurent::zero());
        assert_eq!(specialize(&xi(), s).unwrap(), UniLaurent::vertex_factor());
    }

    #[test]
    fn bracket_loop_value() {
        let d = specialize(&mu(), Specialization::Bracket).unwrap();
        assert_eq!(d, UniLaurent::from_terms([(2, -1), (-2, -1)]));
        assert!(specialize(&big_o(), Specialization::Bracket).unwrap().is_zero());
    }

    #[test]
    fn non_exact_specialization() {
        let x = RingElem::reduce(LaurentPoly::one(), 1);
        assert_eq!(
            specialize(&x, Specialization::PlanarTest),
            Err(RingError::NonExactSpecialization(1))
        );
    }

    #[test]
    fn rational_evaluation() {
        let p = Point::new((2, 1), (1, 1), (3, 1));
        assert_eq!(eval_rational(&RingElem::one(), &p).unwrap(), BigRational::one());
        let want = BigRational::new(BigInt::from(11), BigInt::from(3));
        assert_eq!(eval_rational(&mu(), &p).unwrap(), want);
        let pole = Point::new((2, 1), (2, 1), (3, 1));
        assert_eq!(eval_rational(&mu(), &pole), Err(RingError::PoleAtPoint));
    }
}
