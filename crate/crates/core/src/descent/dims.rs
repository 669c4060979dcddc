use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::algebra::series::{factorial_series, x_over_one_minus_x};
use crate::algebra::{int, Echelon, LinComb, PowerSeries, Rational};
use crate::biword::{self, enumerate_biwords, Biword, BiwordTensor};
use crate::combinatorics::{binomial, factorial};
use crate::error::{Error, Result};

use super::descd_component;

/// Upper weights for the expensive computations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Cutoffs {
    /// Default weight bound for the invariant suites.
    pub exhaustive: usize,
    /// Exact ranks of descent-algebra components.
    pub rank: usize,
    /// Exact dendriform-primitive kernels.
    pub prim: usize,
    /// Generating-series coefficients.
    pub series: usize,
}

impl Default for Cutoffs {
    fn default() -> Self {
        Self {
            exhaustive: 5,
            rank: 6,
            prim: 6,
            series: 12,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Space {
    /// All biwords of the given weight.
    FullS,
    /// The descent-algebra component of the given weight.
    Descd,
}

/// `Σ_{k=1}^{n} k! · C(n-1, k-1)`, the number of biwords of weight `n`.
pub fn biword_count(n: usize) -> BigUint {
    if n == 0 {
        return BigUint::one();
    }
    (1..=n).map(|k| factorial(k) * binomial(n - 1, k - 1)).sum()
}

/// `R(x) = (Σ k! x^k) ∘ (x / (1 - x))`.
pub fn biword_series() -> PowerSeries {
    factorial_series()
        .compose(&x_over_one_minus_x())
        .expect("inner series has zero constant term")
}

/// `P(x) = (R(x) - 1) / R(x)^2`.
pub fn primitive_series() -> PowerSeries {
    let r = biword_series();
    let inv = r.inverse().expect("R(0) = 1");
    r.sub(&PowerSeries::one()).mul(&inv).mul(&inv)
}

/// `(1 - x - √((1 - x)(1 - 5x))) / (2x)`.
pub fn descd_series_closed() -> PowerSeries {
    let radicand = PowerSeries::polynomial(vec![int(1), int(-6), int(5)]);
    let root = radicand.sqrt().expect("constant term 1");
    let numerator = PowerSeries::polynomial(vec![int(1), int(-1)]).sub(&root);
    numerator
        .shift_down()
        .expect("numerator vanishes at 0")
        .scale(Rational::new(1.into(), 2.into()))
}

/// The Catalan series `(1 - √(1 - 4x)) / (2x)` composed with `x / (1 - x)`.
pub fn descd_series_catalan() -> PowerSeries {
    let root = PowerSeries::polynomial(vec![int(1), int(-4)])
        .sqrt()
        .expect("constant term 1");
    let catalan = PowerSeries::one()
        .sub(&root)
        .shift_down()
        .expect("numerator vanishes at 0")
        .scale(Rational::new(1.into(), 2.into()));
    catalan
        .compose(&x_over_one_minus_x())
        .expect("inner series has zero constant term")
}

fn tagged(tag: u8, t: &LinComb<BiwordTensor>) -> LinComb<(u8, BiwordTensor)> {
    t.map_keys(|k| (tag, k.clone()))
}

fn coproduct_image(x: &LinComb<Biword>) -> LinComb<(u8, BiwordTensor)> {
    let mut out = tagged(0, &biword::delta_prec(x));
    out += tagged(1, &biword::delta_succ(x));
    out
}

/// Dimension of `Ker Δ≺ ∩ Ker Δ≻` in the weight-`n` component of the chosen space.
pub fn prim_dend_dimension(n: usize, space: Space, cutoffs: &Cutoffs) -> Result<usize> {
    if n > cutoffs.prim {
        return Err(Error::CutoffExceeded {
            requested: n,
            cutoff: cutoffs.prim,
        });
    }
    if n == 0 {
        return Err(Error::InvalidArgument("weight must be positive".into()));
    }
    let vectors: Vec<LinComb<Biword>> = match space {
        Space::FullS => enumerate_biwords(n).into_iter().map(LinComb::basis).collect(),
        Space::Descd => {
            if n > cutoffs.rank {
                return Err(Error::CutoffExceeded {
                    requested: n,
                    cutoff: cutoffs.rank,
                });
            }
            descd_component(n).echelon.rows().cloned().collect()
        }
    };
    let mut image = Echelon::new();
    for v in &vectors {
        image.insert(&coproduct_image(v));
    }
    Ok(vectors.len() - image.rank())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimensionRow {
    pub n: usize,
    /// Enumerated biwords of weight `n`.
    pub biwords: Option<usize>,
    /// Coefficient of `R(x)`.
    pub r_series: BigInt,
    /// Exact rank of the descent-algebra component.
    pub descd_rank: Option<usize>,
    pub descd_closed: BigInt,
    pub descd_catalan: BigInt,
    /// Exact dendriform-primitive dimension inside all biwords.
    pub prim_full: Option<usize>,
    /// Coefficient of `P(x)`.
    pub p_series: BigInt,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimensionReport {
    pub rows: Vec<DimensionRow>,
    pub flags: Vec<String>,
}

fn integer(r: Rational) -> BigInt {
    assert!(r.is_integer(), "dimension series coefficient {} is not an integer", r);
    r.to_integer()
}

/// Which columns of the report to compute exactly.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Columns {
    pub biwords: bool,
    pub descd: bool,
    pub prim: bool,
}

impl Default for Columns {
    fn default() -> Self {
        Self {
            biwords: true,
            descd: true,
            prim: true,
        }
    }
}

/// Tabulates dimensions for `1..=max_n`. Exact columns stop at their cutoffs;
/// the series columns run to `max_n`, which must not exceed `cutoffs.series`.
pub fn dimension_report(max_n: usize, cutoffs: &Cutoffs) -> Result<DimensionReport> {
    dimension_report_columns(max_n, cutoffs, Columns::default())
}

pub fn dimension_report_columns(max_n: usize, cutoffs: &Cutoffs, columns: Columns) -> Result<DimensionReport> {
    if max_n > cutoffs.series {
        return Err(Error::CutoffExceeded {
            requested: max_n,
            cutoff: cutoffs.series,
        });
    }
    let r = biword_series();
    let p = primitive_series();
    let closed = descd_series_closed();
    let catalan = descd_series_catalan();
    let mut rows = Vec::new();
    let mut flags = Vec::new();
    for n in 1..=max_n {
        let row = DimensionRow {
            n,
            biwords: (columns.biwords && n <= cutoffs.rank).then(|| enumerate_biwords(n).len()),
            r_series: integer(r.coeff(n)),
            descd_rank: (columns.descd && n <= cutoffs.rank).then(|| descd_component(n).dimension()),
            descd_closed: integer(closed.coeff(n)),
            descd_catalan: integer(catalan.coeff(n)),
            prim_full: if columns.prim && n <= cutoffs.prim {
                Some(prim_dend_dimension(n, Space::FullS, cutoffs)?)
            } else {
                None
            },
            p_series: integer(p.coeff(n)),
        };
        let count = BigInt::from(biword_count(n));
        if count != row.r_series {
            flags.push(format!(
                "n={}: biword count {} != R(x) coefficient {}",
                n, count, row.r_series
            ));
        }
        if let Some(b) = row.biwords {
            if BigInt::from(b) != row.r_series {
                flags.push(format!(
                    "n={}: enumerated {} biwords, R(x) gives {}",
                    n, b, row.r_series
                ));
            }
        }
        if row.descd_closed != row.descd_catalan {
            flags.push(format!(
                "n={}: closed-form series {} != Catalan route {}",
                n, row.descd_closed, row.descd_catalan
            ));
        }
        if let Some(d) = row.descd_rank {
            if BigInt::from(d) != row.descd_closed {
                flags.push(format!(
                    "n={}: rank {} != series coefficient {}",
                    n, d, row.descd_closed
                ));
            }
        }
        if let Some(d) = row.prim_full {
            if BigInt::from(d) != row.p_series {
                flags.push(format!(
                    "n={}: primitive kernel {} != P(x) coefficient {}",
                    n, d, row.p_series
                ));
            }
        }
        rows.push(row);
    }
    Ok(DimensionReport { rows, flags })
}

fn big_json(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(v) => json!(v),
        None => json!(x.to_string()),
    }
}

impl DimensionReport {
    pub fn is_consistent(&self) -> bool {
        self.flags.is_empty()
    }

    pub fn to_json(&self) -> Value {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|r| {
                json!({
                    "n": r.n,
                    "biwords": r.biwords,
                    "r_series": big_json(&r.r_series),
                    "descd_rank": r.descd_rank,
                    "descd_closed": big_json(&r.descd_closed),
                    "descd_catalan": big_json(&r.descd_catalan),
                    "prim_full": r.prim_full,
                    "p_series": big_json(&r.p_series),
                })
            })
            .collect();
        json!({ "rows": rows, "flags": self.flags })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn coeffs(s: &PowerSeries, range: std::ops::RangeInclusive<usize>) -> Vec<BigInt> {
        range.map(|n| integer(s.coeff(n))).collect()
    }

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn biword_series_table() {
        assert_eq!(
            coeffs(&biword_series(), 1..=9),
            big(&[1, 3, 11, 49, 261, 1631, 11743, 95901, 876809])
        );
        for n in 0..10 {
            assert_eq!(BigInt::from(biword_count(n)), integer(biword_series().coeff(n)));
        }
    }

    #[test]
    fn primitive_series_table() {
        assert_eq!(
            coeffs(&primitive_series(), 1..=8),
            big(&[1, 1, 2, 10, 70, 550, 4730, 44378])
        );
    }

    #[test]
    fn descd_series_routes() {
        let expect = big(&[1, 3, 10, 36, 137, 543, 2219, 9285, 39587, 171369, 751236]);
        assert_eq!(coeffs(&descd_series_closed(), 1..=11), expect);
        assert_eq!(coeffs(&descd_series_catalan(), 1..=11), expect);
        assert_eq!(
            coeffs(&descd_series_closed(), 0..=12),
            coeffs(&descd_series_catalan(), 0..=12)
        );
    }

    #[test]
    fn prim_dimensions_small() {
        let c = Cutoffs::default();
        let full: Vec<usize> = (1..=4)
            .map(|n| prim_dend_dimension(n, Space::FullS, &c).unwrap())
            .collect();
        assert_eq!(full, vec![1, 1, 2, 10]);
        for n in 1..=4 {
            assert_eq!(prim_dend_dimension(n, Space::Descd, &c).unwrap(), 1);
        }
        assert!(matches!(
            prim_dend_dimension(7, Space::FullS, &c),
            Err(Error::CutoffExceeded {
                requested: 7,
                cutoff: 6
            })
        ));
    }

    #[test]
    fn report_small() {
        let c = Cutoffs {
            rank: 4,
            prim: 4,
            ..Cutoffs::default()
        };
        let rep = dimension_report(5, &c).unwrap();
        assert!(rep.is_consistent(), "{:?}", rep.flags);
        assert_eq!(rep.rows[3].descd_rank, Some(36));
        assert_eq!(rep.rows[4].descd_rank, None);
        assert!(dimension_report(13, &c).is_err());
    }
}
