use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::Zero;

use super::elem::write_terms;

/// Integer Laurent polynomial in the single variable `A`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct UniLaurent {
    terms: BTreeMap<i32, BigInt>,
}

impl UniLaurent {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    pub fn monomial(coeff: impl Into<BigInt>, exp: i32) -> Self {
        let mut p = Self::zero();
        p.add_term(exp, coeff.into());
        p
    }

    pub fn from_terms<C: Into<BigInt>>(terms: impl IntoIterator<Item = (i32, C)>) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c.into());
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&i32, &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exp: i32) -> BigInt {
        self.terms.get(&exp).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, exp: i32, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        let slot = self.terms.entry(exp).or_insert_with(BigInt::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn shift(&self, by: i32) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (e + by, c.clone())).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Exact division by `A^2 - 1`, or `None` if it leaves a remainder.
    pub fn div_a2_minus_1(&self) -> Option<Self> {
        if self.is_zero() {
            return Some(Self::zero());
        }
        let lo = *self.terms.keys().next().unwrap();
        let hi = *self.terms.keys().next_back().unwrap();
        // p = sum c_i A^i, i in lo..=hi; q_{i-2} = c_i + q_i
        let mut rem: BTreeMap<i32, BigInt> = self.terms.clone();
        let mut q = Self::zero();
        let mut deg = hi;
        while deg >= lo + 2 {
            if let Some(c) = rem.remove(&deg) {
                q.add_term(deg - 2, c.clone());
                let slot = rem.entry(deg - 2).or_insert_with(BigInt::zero);
                *slot += c;
                if slot.is_zero() {
                    rem.remove(&(deg - 2));
                }
            }
            deg -= 1;
        }
        if rem.is_empty() {
            Some(q)
        } else {
            None
        }
    }

    /// `(-A - A^-1)`, the planar-test value of a vertex.
    pub fn vertex_factor() -> Self {
        Self::from_terms([(1, -1), (-1, -1)])
    }
}

impl Add for &UniLaurent {
    type Output = UniLaurent;
    fn add(self, rhs: &UniLaurent) -> UniLaurent {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Sub for &UniLaurent {
    type Output = UniLaurent;
    fn sub(self, rhs: &UniLaurent) -> UniLaurent {
        self + &(-rhs)
    }
}

impl Neg for &UniLaurent {
    type Output = UniLaurent;
    fn neg(self) -> UniLaurent {
        UniLaurent {
            terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }
}

impl Mul for &UniLaurent {
    type Output = UniLaurent;
    fn mul(self, rhs: &UniLaurent) -> UniLaurent {
        let mut out = UniLaurent::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

macro_rules! owned_ops {
    ($($tr:ident $f:ident),*) => {$(
        impl $tr for UniLaurent {
            type Output = UniLaurent;
            fn $f(self, rhs: UniLaurent) -> UniLaurent {
                (&self).$f(&rhs)
            }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl fmt::Display for UniLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let exps: Vec<[i32; 1]> = self.terms.keys().rev().map(|e| [*e]).collect();
        write_terms(
            f,
            exps.iter().zip(self.terms.values().rev()).map(|(e, c)| (&e[..], c)),
            &["A"],
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn division_by_a2_minus_1() {
        let d = UniLaurent::from_terms([(2, 1), (0, -1)]);
        let p = UniLaurent::from_terms([(3, 2), (-4, 7), (0, 1)]);
        assert_eq!((&p * &d).div_a2_minus_1(), Some(p.clone()));
        assert_eq!(p.div_a2_minus_1(), None);
    }

    #[test]
    fn renders() {
        assert_eq!(UniLaurent::vertex_factor().to_string(), "-1*A^1 + -1*A^-1");
        assert_eq!(UniLaurent::monomial(2, 0).to_string(), "2");
        assert_eq!(UniLaurent::monomial(1, 3).to_string(), "A^3");
    }
}
