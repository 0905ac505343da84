//! Exact integer polynomials: univariate Laurent polynomials in `q` and
//! bivariate polynomials in `x, y` for Tutte polynomials.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul};

use serde::de::{self, Deserializer, MapAccess, Visitor};
use serde::ser::{SerializeMap, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Coeff = i128;

/// Sparse Laurent polynomial: exponent -> nonzero coefficient.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPolynomial {
    terms: BTreeMap<i64, Coeff>,
}

impl LaurentPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    /// `coeff * q^exp`.
    pub fn monomial(coeff: Coeff, exp: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(exp, coeff);
        p
    }

    /// `q^exp`.
    pub fn q_pow(exp: i64) -> Self {
        Self::monomial(1, exp)
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, Coeff)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exp: i64) -> Coeff {
        self.terms.get(&exp).copied().unwrap_or(0)
    }

    /// Terms in increasing exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, Coeff)> + '_ {
        self.terms.iter().map(|(&e, &c)| (e, c))
    }

    pub fn min_exponent(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exponent(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// Terms in display order: larger `|exp|` first, and `q^k` before
    /// `q^-k`.
    pub fn display_terms(&self) -> Vec<(i64, Coeff)> {
        let mut terms: Vec<(i64, Coeff)> = self.terms().collect();
        terms.sort_by_key(|&(e, _)| (std::cmp::Reverse(e.unsigned_abs()), std::cmp::Reverse(e)));
        terms
    }

    /// Adds `coeff * q^exp` in place, dropping the term if it cancels.
    pub fn add_term(&mut self, exp: i64, coeff: Coeff) {
        if coeff == 0 {
            return;
        }
        let entry = self.terms.entry(exp).or_insert(0);
        *entry = entry.checked_add(coeff).expect("coefficient overflow");
        if *entry == 0 {
            self.terms.remove(&exp);
        }
    }

    /// `q^k * self`.
    pub fn shift(&self, k: i64) -> Self {
        LaurentPolynomial {
            terms: self.terms.iter().map(|(&e, &c)| (e + k, c)).collect(),
        }
    }

    /// Substitutes `q -> 1/q`.
    pub fn invert(&self) -> Self {
        LaurentPolynomial {
            terms: self.terms.iter().map(|(&e, &c)| (-e, c)).collect(),
        }
    }

    /// Value at `q = 1`, the sum of all coefficients.
    pub fn eval_at_one(&self) -> Coeff {
        self.terms.values().sum()
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        let mut out = Self::zero();
        for (&ea, &ca) in &self.terms {
            for (&eb, &cb) in &other.terms {
                let c = ca.checked_mul(cb).ok_or(Error::Overflow)?;
                let entry = out.terms.entry(ea + eb).or_insert(0);
                *entry = entry.checked_add(c).ok_or(Error::Overflow)?;
            }
        }
        out.terms.retain(|_, c| *c != 0);
        Ok(out)
    }
}

impl Add for &LaurentPolynomial {
    type Output = LaurentPolynomial;

    fn add(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        let mut out = self.clone();
        for (&e, &c) in &rhs.terms {
            out.add_term(e, c);
        }
        out
    }
}

impl Add for LaurentPolynomial {
    type Output = LaurentPolynomial;

    fn add(self, rhs: LaurentPolynomial) -> LaurentPolynomial {
        &self + &rhs
    }
}

impl Mul for &LaurentPolynomial {
    type Output = LaurentPolynomial;

    fn mul(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        self.checked_mul(rhs).expect("coefficient overflow")
    }
}

impl Mul for LaurentPolynomial {
    type Output = LaurentPolynomial;

    fn mul(self, rhs: LaurentPolynomial) -> LaurentPolynomial {
        &self * &rhs
    }
}

impl std::iter::Sum for LaurentPolynomial {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::zero(), |acc, p| acc + p)
    }
}

/// Renders terms in [`LaurentPolynomial::display_terms`] order joined by
/// `" + "`, e.g. `q^4 + 2*q^3` or `q^-1 + 2`. The zero polynomial renders
/// as `0`.
impl fmt::Display for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.display_terms().into_iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            if e == 0 {
                write!(f, "{c}")?;
                continue;
            }
            if c != 1 {
                write!(f, "{c}*")?;
            }
            if e == 1 {
                write!(f, "q")?;
            } else {
                write!(f, "q^{e}")?;
            }
        }
        Ok(())
    }
}

/// JSON form `{"<exponent>": <coefficient>, ...}`, keys in display order.
impl Serialize for LaurentPolynomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.terms.len()))?;
        for (e, c) in self.display_terms() {
            // i128 is not universally supported by serializers.
            let c = i64::try_from(c).map_err(serde::ser::Error::custom)?;
            map.serialize_entry(&e.to_string(), &c)?;
        }
        map.end()
    }
}

impl<'de> Deserialize<'de> for LaurentPolynomial {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct PolyVisitor;

        impl<'de> Visitor<'de> for PolyVisitor {
            type Value = LaurentPolynomial;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a map from exponent strings to integer coefficients")
            }

            fn visit_map<A: MapAccess<'de>>(
                self,
                mut access: A,
            ) -> std::result::Result<Self::Value, A::Error> {
                let mut p = LaurentPolynomial::zero();
                while let Some((key, coeff)) = access.next_entry::<String, i64>()? {
                    let exp: i64 = key.parse().map_err(de::Error::custom)?;
                    p.add_term(exp, coeff as Coeff);
                }
                Ok(p)
            }
        }

        deserializer.deserialize_map(PolyVisitor)
    }
}

/// Sparse polynomial in `x, y` with nonnegative exponents.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BivariatePolynomial {
    terms: BTreeMap<(u32, u32), Coeff>,
}

impl BivariatePolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0, 0)
    }

    pub fn monomial(coeff: Coeff, x_exp: u32, y_exp: u32) -> Self {
        let mut p = Self::zero();
        p.add_term(x_exp, y_exp, coeff);
        p
    }

    pub fn add_term(&mut self, x_exp: u32, y_exp: u32, coeff: Coeff) {
        if coeff == 0 {
            return;
        }
        let entry = self.terms.entry((x_exp, y_exp)).or_insert(0);
        *entry = entry.checked_add(coeff).expect("coefficient overflow");
        if *entry == 0 {
            self.terms.remove(&(x_exp, y_exp));
        }
    }

    pub fn coeff(&self, x_exp: u32, y_exp: u32) -> Coeff {
        self.terms.get(&(x_exp, y_exp)).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = ((u32, u32), Coeff)> + '_ {
        self.terms.iter().map(|(&k, &c)| (k, c))
    }

    /// Multiplies by `x^dx * y^dy`.
    pub fn shift(&self, dx: u32, dy: u32) -> Self {
        BivariatePolynomial {
            terms: self
                .terms
                .iter()
                .map(|(&(a, b), &c)| ((a + dx, b + dy), c))
                .collect(),
        }
    }

    pub fn eval(&self, x: Coeff, y: Coeff) -> Coeff {
        self.terms
            .iter()
            .map(|(&(a, b), &c)| c * x.pow(a) * y.pow(b))
            .sum()
    }

    /// Substitutes `x = 1, y = 1/q`, giving a Laurent polynomial in `q`.
    pub fn at_one_and_inverse_q(&self) -> LaurentPolynomial {
        let mut p = LaurentPolynomial::zero();
        for (&(_, b), &c) in &self.terms {
            p.add_term(-(b as i64), c);
        }
        p
    }
}

impl Add for &BivariatePolynomial {
    type Output = BivariatePolynomial;

    fn add(self, rhs: &BivariatePolynomial) -> BivariatePolynomial {
        let mut out = self.clone();
        for (&(a, b), &c) in &rhs.terms {
            out.add_term(a, b, c);
        }
        out
    }
}

impl fmt::Display for BivariatePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let var = |f: &mut fmt::Formatter<'_>, name: &str, e: u32| -> fmt::Result {
            match e {
                1 => write!(f, "{name}"),
                _ => write!(f, "{name}^{e}"),
            }
        };
        for (k, (&(a, b), &c)) in self.terms.iter().rev().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            if a == 0 && b == 0 {
                write!(f, "{c}")?;
                continue;
            }
            if c != 1 {
                write!(f, "{c}*")?;
            }
            if a > 0 {
                var(f, "x", a)?;
            }
            if b > 0 {
                if a > 0 {
                    write!(f, "*")?;
                }
                var(f, "y", b)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn rendering_is_frozen() {
        let p = LaurentPolynomial::from_terms([(-1, 1), (0, 2)]);
        assert_eq!(p.to_string(), "q^-1 + 2");
        let p = LaurentPolynomial::from_terms([(4, 1), (3, 2)]);
        assert_eq!(p.to_string(), "q^4 + 2*q^3");
        let p = LaurentPolynomial::from_terms([(1, 1), (0, 2)]);
        assert_eq!(p.to_string(), "q + 2");
        assert_eq!(LaurentPolynomial::from_terms([(1, 3)]).to_string(), "3*q");
        assert_eq!(
            LaurentPolynomial::from_terms([(2, -1)]).to_string(),
            "-1*q^2"
        );
        assert_eq!(LaurentPolynomial::zero().to_string(), "0");
        assert_eq!(LaurentPolynomial::one().to_string(), "1");
        let p = LaurentPolynomial::from_terms([(-2, 1), (-1, 3), (0, 4), (1, 5), (2, 6)]);
        assert_eq!(p.to_string(), "6*q^2 + q^-2 + 5*q + 3*q^-1 + 4");
    }

    #[test]
    fn zero_coefficients_are_dropped() {
        let mut p = LaurentPolynomial::monomial(3, 2);
        p.add_term(2, -3);
        assert!(p.is_zero());
        assert_eq!(p, LaurentPolynomial::zero());
    }

    #[test]
    fn shift_and_invert() {
        let p = LaurentPolynomial::from_terms([(-1, 1), (0, 2)]);
        assert_eq!(
            p.invert().shift(3),
            LaurentPolynomial::from_terms([(4, 1), (3, 2)])
        );
        assert_eq!(p.eval_at_one(), 3);
    }

    #[test]
    fn json_follows_display_order() {
        let p = LaurentPolynomial::from_terms([(-1, 1), (0, 2), (10, 5)]);
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, r#"{"10":5,"-1":1,"0":2}"#);
        let back: LaurentPolynomial = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn bivariate_rendering_and_substitution() {
        let mut t = BivariatePolynomial::zero();
        t.add_term(2, 0, 1);
        t.add_term(1, 0, 1);
        t.add_term(0, 1, 1);
        assert_eq!(t.to_string(), "x^2 + x + y");
        assert_eq!(t.eval(1, 1), 3);
        assert_eq!(
            t.at_one_and_inverse_q(),
            LaurentPolynomial::from_terms([(0, 2), (-1, 1)])
        );
    }

    fn small_poly() -> impl Strategy<Value = LaurentPolynomial> {
        prop::collection::vec((-6i64..6, -5i128..5), 0..6).prop_map(LaurentPolynomial::from_terms)
    }

    proptest! {
        #[test]
        fn ring_laws(a in small_poly(), b in small_poly(), c in small_poly()) {
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!((&a * &b).invert(), &a.invert() * &b.invert());
            prop_assert_eq!((&a * &b).eval_at_one(), a.eval_at_one() * b.eval_at_one());
        }

        #[test]
        fn json_round_trip(a in small_poly()) {
            let s = serde_json::to_string(&a).unwrap();
            let back: LaurentPolynomial = serde_json::from_str(&s).unwrap();
            prop_assert_eq!(back, a);
        }
    }
}
