//! Exact scalars, sparse linear combinations, row reduction and power series.

mod echelon;
mod lincomb;
pub mod series;
mod text;

pub use echelon::{rank_of, Echelon, Rref};
pub use lincomb::{bilinear, LinComb};
pub use series::PowerSeries;
pub use text::{parse_combination, render_terms, Named};

use serde::{Deserialize, Serialize};

/// Exact arbitrary-precision rational; always stored in lowest terms.
pub type Rational = num_rational::BigRational;

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(num.into(), den.into())
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// Parses `p`, `-p` or `p/q`.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: num_bigint::BigInt = n.trim().parse().ok()?;
            let d: num_bigint::BigInt = d.trim().parse().ok()?;
            if num_traits::Zero::is_zero(&d) {
                return None;
            }
            Some(Rational::new(n, d))
        }
        None => s.parse::<num_bigint::BigInt>().ok().map(Rational::from_integer),
    }
}

/// A tensor `left ⊗ right` of two basis keys.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Tensor<K> {
    pub left: K,
    pub right: K,
}

impl<K> Tensor<K> {
    pub fn new(left: K, right: K) -> Self {
        Self { left, right }
    }
}

impl<K: std::fmt::Display> std::fmt::Display for Tensor<K> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} ⊗ {}", self.left, self.right)
    }
}

/// Bilinear tensor product of two combinations.
pub fn tensor<K: Ord + Clone>(a: &LinComb<K>, b: &LinComb<K>) -> LinComb<Tensor<K>> {
    bilinear(a, b, |x, y| LinComb::basis(Tensor::new(x.clone(), y.clone())))
}
