//! Lazily evaluated formal power series with exact rational coefficients.
//!
//! A series is a coefficient rule plus a memo of the prefix computed so far.
//! Coefficients are always filled in index order, so a rule may read the
//! series' own lower coefficients (this is how square roots and inverses
//! are expressed).

use std::fmt;
use std::sync::{Arc, Mutex};

use num_traits::{One, Zero};

use super::Rational;
use crate::error::{Error, Result};

type Rule = dyn Fn(usize, &[Rational]) -> Rational + Send + Sync;

struct Inner {
    rule: Box<Rule>,
    memo: Mutex<Vec<Rational>>,
}

/// Cheap to clone; clones share the memo.
#[derive(Clone)]
pub struct PowerSeries {
    inner: Arc<Inner>,
}

impl PowerSeries {
    /// Series whose n-th coefficient is `rule(n, &[c_0, ..., c_{n-1}])`.
    pub fn from_rule<F>(rule: F) -> Self
    where
        F: Fn(usize, &[Rational]) -> Rational + Send + Sync + 'static,
    {
        Self {
            inner: Arc::new(Inner {
                rule: Box::new(rule),
                memo: Mutex::new(Vec::new()),
            }),
        }
    }

    pub fn from_fn<F>(f: F) -> Self
    where
        F: Fn(usize) -> Rational + Send + Sync + 'static,
    {
        Self::from_rule(move |n, _| f(n))
    }

    pub fn polynomial(coeffs: Vec<Rational>) -> Self {
        Self::from_fn(move |n| coeffs.get(n).cloned().unwrap_or_else(Rational::zero))
    }

    pub fn constant(c: Rational) -> Self {
        Self::polynomial(vec![c])
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    /// The series `x`.
    pub fn x() -> Self {
        Self::polynomial(vec![Rational::zero(), Rational::one()])
    }

    /// `1 / (1 - x) = 1 + x + x^2 + ...`
    pub fn geometric() -> Self {
        Self::from_fn(|_| Rational::one())
    }

    pub fn coeff(&self, n: usize) -> Rational {
        let mut memo = self.inner.memo.lock().expect("series memo poisoned");
        while memo.len() <= n {
            let i = memo.len();
            let c = (self.inner.rule)(i, &memo);
            memo.push(c);
        }
        memo[n].clone()
    }

    /// Coefficients `0..=n`.
    pub fn prefix(&self, n: usize) -> Vec<Rational> {
        self.coeff(n);
        let memo = self.inner.memo.lock().expect("series memo poisoned");
        memo[..=n].to_vec()
    }

    pub fn add(&self, other: &PowerSeries) -> PowerSeries {
        let (a, b) = (self.clone(), other.clone());
        Self::from_fn(move |n| a.coeff(n) + b.coeff(n))
    }

    pub fn sub(&self, other: &PowerSeries) -> PowerSeries {
        let (a, b) = (self.clone(), other.clone());
        Self::from_fn(move |n| a.coeff(n) - b.coeff(n))
    }

    pub fn scale(&self, r: Rational) -> PowerSeries {
        let a = self.clone();
        Self::from_fn(move |n| a.coeff(n) * &r)
    }

    pub fn mul(&self, other: &PowerSeries) -> PowerSeries {
        let (a, b) = (self.clone(), other.clone());
        Self::from_fn(move |n| {
            let pa = a.prefix(n);
            let pb = b.prefix(n);
            (0..=n).map(|i| &pa[i] * &pb[n - i]).sum()
        })
    }

    /// Divides by `x`; the constant term must vanish.
    pub fn shift_down(&self) -> Result<PowerSeries> {
        if !self.coeff(0).is_zero() {
            return Err(Error::Series("division by x needs a zero constant term".into()));
        }
        let a = self.clone();
        Ok(Self::from_fn(move |n| a.coeff(n + 1)))
    }

    /// `self ∘ inner`. The inner series must have zero constant term; the
    /// n-th coefficient of the result only reads coefficients `0..=n` of
    /// both operands.
    pub fn compose(&self, inner: &PowerSeries) -> Result<PowerSeries> {
        if !inner.coeff(0).is_zero() {
            return Err(Error::Series(
                "composition needs an inner series with zero constant term".into(),
            ));
        }
        let (f, g) = (self.clone(), inner.clone());
        Ok(Self::from_fn(move |n| {
            let fp = f.prefix(n);
            let gp = g.prefix(n);
            let mut power = vec![Rational::zero(); n + 1];
            power[0] = Rational::one();
            let mut acc = &fp[0] * &power[n];
            for fk in fp.iter().skip(1) {
                power = truncated_mul(&power, &gp, n);
                if !fk.is_zero() {
                    acc += fk * &power[n];
                }
            }
            acc
        }))
    }

    /// The square root with constant term 1; requires `f(0) = 1`.
    pub fn sqrt(&self) -> Result<PowerSeries> {
        if !self.coeff(0).is_one() {
            return Err(Error::Series("square root needs constant term 1".into()));
        }
        let f = self.clone();
        let two = Rational::from_integer(2.into());
        Ok(Self::from_rule(move |n, g| {
            if n == 0 {
                return Rational::one();
            }
            let cross: Rational = (1..n).map(|i| &g[i] * &g[n - i]).sum();
            (f.coeff(n) - cross) / &two
        }))
    }

    /// Multiplicative inverse; requires `f(0) = 1`.
    pub fn inverse(&self) -> Result<PowerSeries> {
        if !self.coeff(0).is_one() {
            return Err(Error::Series("inverse needs constant term 1".into()));
        }
        let f = self.clone();
        Ok(Self::from_rule(move |n, g| {
            if n == 0 {
                return Rational::one();
            }
            let fp = f.prefix(n);
            -(1..=n).map(|i| &fp[i] * &g[n - i]).sum::<Rational>()
        }))
    }
}

fn truncated_mul(a: &[Rational], b: &[Rational], n: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); n + 1];
    for (i, ai) in a.iter().enumerate().take(n + 1) {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate().take(n + 1 - i) {
            out[i + j] += ai * bj;
        }
    }
    out
}

impl fmt::Debug for PowerSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let memo = self.inner.memo.lock().expect("series memo poisoned");
        write!(
            f,
            "PowerSeries{:?}",
            memo.iter().map(|c| c.to_string()).collect::<Vec<_>>()
        )
    }
}

/// `Σ k! x^k`
pub fn factorial_series() -> PowerSeries {
    PowerSeries::from_rule(|n, prev| {
        if n == 0 {
            Rational::one()
        } else {
            &prev[n - 1] * Rational::from_integer(n.into())
        }
    })
}

/// `x / (1 - x) = x + x^2 + ...`
pub fn x_over_one_minus_x() -> PowerSeries {
    PowerSeries::from_fn(|n| if n == 0 { Rational::zero() } else { Rational::one() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, rat};

    fn ints(s: &PowerSeries, range: std::ops::RangeInclusive<usize>) -> Vec<Rational> {
        range.map(|n| s.coeff(n)).collect()
    }

    #[test]
    fn identity_on_the_left() {
        let g = PowerSeries::polynomial(vec![int(0), int(3), int(-1), rat(1, 2)]);
        let c = PowerSeries::x().compose(&g).unwrap();
        assert_eq!(ints(&c, 0..=6), ints(&g, 0..=6));
    }

    #[test]
    fn compose_rejects_constant_inner() {
        assert!(PowerSeries::x().compose(&PowerSeries::one()).is_err());
    }

    #[test]
    fn sqrt_of_one() {
        let s = PowerSeries::one().sqrt().unwrap();
        assert_eq!(ints(&s, 0..=5), vec![int(1), int(0), int(0), int(0), int(0), int(0)]);
        assert!(PowerSeries::constant(int(4)).sqrt().is_err());
    }

    #[test]
    fn inverse_examples() {
        let one_minus_x = PowerSeries::polynomial(vec![int(1), int(-1)]);
        let inv = one_minus_x.inverse().unwrap();
        assert!(ints(&inv, 0..=8).iter().all(|c| c.is_one()));

        let one_plus_x = PowerSeries::polynomial(vec![int(1), int(1)]);
        let inv = one_plus_x.inverse().unwrap();
        let expect: Vec<_> = (0..=8).map(|k| int(if k % 2 == 0 { 1 } else { -1 })).collect();
        assert_eq!(ints(&inv, 0..=8), expect);

        assert!(PowerSeries::constant(int(2)).inverse().is_err());
    }

    #[test]
    fn factorial_inverse_matches_hand_solution() {
        // g0 = 1; g1 = -1; g2 = -(2 + 1*(-1)) = -1; g3 = -(6 - 2 - 1) = -3;
        // g4 = -(24 - 6 - 2 - 3) = -13
        let inv = factorial_series().inverse().unwrap();
        assert_eq!(ints(&inv, 0..=4), vec![int(1), int(-1), int(-1), int(-3), int(-13)]);
    }

    #[test]
    fn shift_down_requires_zero_constant() {
        assert!(PowerSeries::one().shift_down().is_err());
        let s = x_over_one_minus_x().shift_down().unwrap();
        assert!(ints(&s, 0..=4).iter().all(|c| c.is_one()));
    }
}
