use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Exponents of `A`, `B` and `a` in a single monomial.
pub type Exponent = [i32; 3];

/// Integer Laurent polynomial in `A`, `B`, `a`.
///
/// Zero coefficients are never stored, so structural equality is
/// polynomial equality.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentPoly {
    terms: BTreeMap<Exponent, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, [0, 0, 0])
    }

    pub fn monomial(coeff: impl Into<BigInt>, exp: Exponent) -> Self {
        let mut p = Self::zero();
        p.add_term(exp, coeff.into());
        p
    }

    pub fn var_a_upper() -> Self {
        Self::monomial(1, [1, 0, 0])
    }

    pub fn var_b() -> Self {
        Self::monomial(1, [0, 1, 0])
    }

    pub fn var_a() -> Self {
        Self::monomial(1, [0, 0, 1])
    }

    /// `A - B`, the element the ring is localized at.
    pub fn a_minus_b() -> Self {
        let mut p = Self::var_a_upper();
        p.add_term([0, 1, 0], BigInt::from(-1));
        p
    }

    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (Exponent, C)>,
        C: Into<BigInt>,
    {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c.into());
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&[0, 0, 0]).is_some_and(|c| c.is_one())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Exponent, &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exp: &Exponent) -> BigInt {
        self.terms.get(exp).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, exp: Exponent, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(exp) {
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn shift(&self, by: Exponent) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| ([e[0] + by[0], e[1] + by[1], e[2] + by[2]], c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(e, c)| (*e, c * k)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Exact division by `A - B`, or `None` when the remainder is nonzero.
    ///
    /// The polynomial is viewed as univariate in `A` with coefficients in
    /// `Z[B^±1, a^±1]`; since `A - B` is monic in `A` this is synthetic
    /// division.
    pub fn div_a_minus_b(&self) -> Option<Self> {
        if self.is_zero() {
            return Some(Self::zero());
        }
        // coefficient of A^i, keyed by (eB, ea)
        let mut by_deg: BTreeMap<i32, BTreeMap<[i32; 2], BigInt>> = BTreeMap::new();
        for (e, c) in &self.terms {
            by_deg
                .entry(e[0])
                .or_default()
                .insert([e[1], e[2]], c.clone());
        }
        let lo = *by_deg.keys().next().unwrap();
        let hi = *by_deg.keys().next_back().unwrap();
        if lo == hi {
            // a single power of A times a nonzero coefficient is never divisible
            return None;
        }
        // q_{i-1} = c_i + B * q_i, running from the top degree down
        let mut quotient = Self::zero();
        let mut carry: BTreeMap<[i32; 2], BigInt> = BTreeMap::new();
        for deg in (lo..=hi).rev() {
            let mut cur: BTreeMap<[i32; 2], BigInt> = BTreeMap::new();
            if let Some(c) = by_deg.get(&deg) {
                cur = c.clone();
            }
            for (k, v) in carry {
                let key = [k[0] + 1, k[1]];
                let slot = cur.entry(key).or_insert_with(BigInt::zero);
                *slot += v;
                if slot.is_zero() {
                    cur.remove(&key);
                }
            }
            if deg == lo {
                if !cur.is_empty() {
                    return None;
                }
                carry = BTreeMap::new();
            } else {
                for (k, v) in &cur {
                    quotient.add_term([deg - 1, k[0], k[1]], v.clone());
                }
                carry = cur;
            }
        }
        debug_assert!(carry.is_empty());
        Some(quotient)
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, -c.clone());
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.add_term([e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2]], c1 * c2);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn divides_exact_multiple() {
        let p = LaurentPoly::from_terms([([2, 0, 1], 3), ([0, -1, 0], -2), ([1, 1, 1], 5)]);
        let m = &p * &LaurentPoly::a_minus_b();
        assert_eq!(m.div_a_minus_b(), Some(p));
    }

    #[test]
    fn rejects_non_multiple() {
        // a - a^-1 + A - B
        let p = LaurentPoly::from_terms([([0, 0, 1], 1), ([0, 0, -1], -1), ([1, 0, 0], 1), ([0, 1, 0], -1)]);
        assert_eq!(p.div_a_minus_b(), None);
        assert_eq!(LaurentPoly::var_a().div_a_minus_b(), None);
    }

    #[test]
    fn negative_powers_of_a_divide() {
        // A^-3 (A - B) (B + a)
        let f = LaurentPoly::from_terms([([-3, 1, 0], 1), ([-3, 0, 1], 1)]);
        let m = &f * &LaurentPoly::a_minus_b();
        assert_eq!(m.div_a_minus_b(), Some(f));
    }
}
