use std::collections::BTreeMap;

use num_traits::One;

use crate::algebra::{LinComb, Rational};
use crate::biword::{self, Biword};
use crate::error::{Error, Result};

use super::p_n;

/// A weight-graded series of biword combinations, truncated at `max_weight`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedSeries {
    max_weight: usize,
    components: BTreeMap<usize, LinComb<Biword>>,
}

impl GradedSeries {
    pub fn zero(max_weight: usize) -> Self {
        Self {
            max_weight,
            components: BTreeMap::new(),
        }
    }

    pub fn unit(max_weight: usize) -> Self {
        let mut s = Self::zero(max_weight);
        s.set(0, LinComb::basis(Biword::unit()));
        s
    }

    /// Splits a combination into its weight components, dropping weights
    /// beyond the truncation.
    pub fn from_lincomb(x: &LinComb<Biword>, max_weight: usize) -> Self {
        let mut s = Self::zero(max_weight);
        for (b, c) in x.iter() {
            let w = b.weight();
            if w <= max_weight {
                s.components.entry(w).or_default().add_term(b.clone(), c.clone());
            }
        }
        s.components.retain(|_, v| !v.is_zero());
        s
    }

    /// `p = Σ p_n`, the identity of the shuffle algebra.
    pub fn identity(max_weight: usize) -> Self {
        let mut s = Self::zero(max_weight);
        for n in 0..=max_weight {
            s.set(n, p_n(n));
        }
        s
    }

    /// `π = Σ_{n≥1} (1/n)`.
    pub fn pi(max_weight: usize) -> Self {
        let mut s = Self::zero(max_weight);
        for n in 1..=max_weight {
            s.set(n, LinComb::basis(Biword::identity(vec![n as u32])));
        }
        s
    }

    pub fn max_weight(&self) -> usize {
        self.max_weight
    }

    /// Replaces component `n`. Panics if `x` is not homogeneous of weight `n`.
    pub fn set(&mut self, n: usize, x: LinComb<Biword>) {
        assert!(x.keys().all(|b| b.weight() == n), "component {} is not homogeneous", n);
        if n > self.max_weight || x.is_zero() {
            self.components.remove(&n);
        } else {
            self.components.insert(n, x);
        }
    }

    pub fn component(&self, n: usize) -> LinComb<Biword> {
        self.components.get(&n).cloned().unwrap_or_default()
    }

    pub fn components(&self) -> impl Iterator<Item = (usize, &LinComb<Biword>)> {
        self.components.iter().map(|(&n, v)| (n, v))
    }

    /// All components summed into one combination.
    pub fn total(&self) -> LinComb<Biword> {
        let mut out = LinComb::zero();
        for v in self.components.values() {
            out += v;
        }
        out
    }

    /// The series without its weight-0 component.
    pub fn augmentation(&self) -> Self {
        let mut s = self.clone();
        s.components.remove(&0);
        s
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut s = Self::zero(self.max_weight.min(other.max_weight));
        for n in 0..=s.max_weight {
            let v = &self.component(n) + &other.component(n);
            s.set(n, v);
        }
        s
    }

    pub fn scale(&self, r: &Rational) -> Self {
        let mut s = Self::zero(self.max_weight);
        for (&n, v) in &self.components {
            s.set(n, v.scale(r));
        }
        s
    }

    fn product<F>(&self, other: &Self, op: F) -> Self
    where
        F: Fn(&LinComb<Biword>, &LinComb<Biword>) -> LinComb<Biword>,
    {
        let max = self.max_weight.min(other.max_weight);
        let mut s = Self::zero(max);
        for (&i, a) in &self.components {
            for (&j, b) in &other.components {
                if i + j <= max {
                    let mut c = s.component(i + j);
                    c += op(a, b);
                    s.set(i + j, c);
                }
            }
        }
        s
    }

    pub fn prec(&self, other: &Self) -> Self {
        self.product(other, biword::prec)
    }

    pub fn succ(&self, other: &Self) -> Self {
        self.product(other, biword::succ)
    }

    pub fn star(&self, other: &Self) -> Self {
        self.product(other, biword::star)
    }

    /// Convolution inverse `Σ_k (-1)^k (x⁺)^{⋆k}`; the constant term must be the unit.
    pub fn star_inverse(&self) -> Result<Self> {
        self.check_unit_constant()?;
        let plus = self.augmentation();
        let mut out = Self::unit(self.max_weight);
        let mut power = Self::unit(self.max_weight);
        for k in 1..=self.max_weight {
            power = power.star(&plus);
            let sign = if k % 2 == 0 { Rational::one() } else { -Rational::one() };
            out = out.add(&power.scale(&sign));
        }
        Ok(out)
    }

    fn check_unit_constant(&self) -> Result<()> {
        if self.component(0) != LinComb::basis(Biword::unit()) {
            return Err(Error::InvalidArgument("series needs the unit as constant term".into()));
        }
        Ok(())
    }
}

/// `exp^≺(μ) = Σ_n μ^{≺n}` with `μ^{≺0} = 1` and `μ^{≺n} = μ ≺ μ^{≺(n-1)}`.
pub fn exp_prec(mu: &GradedSeries) -> Result<GradedSeries> {
    if !mu.component(0).is_zero() {
        return Err(Error::InvalidArgument(
            "exp^≺ needs a series without constant term".into(),
        ));
    }
    let mut out = GradedSeries::unit(mu.max_weight());
    let mut power = GradedSeries::unit(mu.max_weight());
    for _ in 1..=mu.max_weight() {
        power = mu.prec(&power);
        out = out.add(&power);
    }
    Ok(out)
}

/// The `μ` with `q = exp^≺(μ)`, computed as `q⁺ ≺ q^{-1}`.
pub fn prec_logarithm(q: &GradedSeries) -> Result<GradedSeries> {
    let inverse = q.star_inverse()?;
    let mu = q.augmentation().prec(&inverse);
    debug_assert!(mu.component(0).is_zero());
    Ok(mu)
}
