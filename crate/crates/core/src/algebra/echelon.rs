use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::{LinComb, Rational};

/// Incremental exact row echelon form over the rationals.
///
/// Columns are the basis keys in their canonical order; the pivot of a row is
/// its first nonzero key and every stored row is normalized to leading
/// coefficient 1. The result depends only on the sequence of inserted rows.
#[derive(Clone)]
pub struct Echelon<B: Ord> {
    rows: BTreeMap<B, LinComb<B>>,
}

impl<B: Ord + Clone> Default for Echelon<B> {
    fn default() -> Self {
        Self::new()
    }
}

impl<B: Ord + Clone> Echelon<B> {
    pub fn new() -> Self {
        Self { rows: BTreeMap::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against every pivot, left to right.
    pub fn reduce(&self, v: &LinComb<B>) -> LinComb<B> {
        let mut residual = v.clone();
        let Some((first, _)) = residual.leading() else {
            return residual;
        };
        let mut key = first.clone();
        loop {
            if let Some(row) = self.rows.get(&key) {
                let c = residual.coeff(&key);
                if !c.is_zero() {
                    residual.add_scaled(row, &-c);
                }
            }
            match residual.range_after(&key).next() {
                Some((k, _)) => key = k.clone(),
                None => break,
            }
        }
        residual
    }

    pub fn contains(&self, v: &LinComb<B>) -> bool {
        self.reduce(v).is_zero()
    }

    /// Inserts `v`; returns whether it was independent of the current rows.
    pub fn insert(&mut self, v: &LinComb<B>) -> bool {
        let residual = self.reduce(v);
        let Some((lead, c)) = residual.leading() else {
            return false;
        };
        let lead = lead.clone();
        let inv = Rational::one() / c;
        self.rows.insert(lead, residual.scale(&inv));
        true
    }

    pub fn pivots(&self) -> impl Iterator<Item = &B> {
        self.rows.keys()
    }

    pub fn rows(&self) -> impl Iterator<Item = &LinComb<B>> {
        self.rows.values()
    }

    /// Fully reduced form: each pivot column is zero in every other row.
    pub fn into_rref(self) -> Rref<B> {
        let mut rows: Vec<(B, LinComb<B>)> = self.rows.into_iter().collect();
        for i in (0..rows.len()).rev() {
            let (pivot, row) = rows[i].clone();
            for (_, other) in rows.iter_mut().take(i) {
                let c = other.coeff(&pivot);
                if !c.is_zero() {
                    other.add_scaled(&row, &-c);
                }
            }
        }
        Rref { rows }
    }
}

/// Reduced row echelon form, rows ordered by pivot.
#[derive(Clone)]
pub struct Rref<B: Ord> {
    rows: Vec<(B, LinComb<B>)>,
}

impl<B: Ord + Clone> Rref<B> {
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn rows(&self) -> impl Iterator<Item = &LinComb<B>> {
        self.rows.iter().map(|(_, r)| r)
    }

    /// Coordinates of `v` in the row basis, or `None` when `v` is outside the span.
    pub fn coordinates(&self, v: &LinComb<B>) -> Option<Vec<Rational>> {
        let coords: Vec<Rational> = self.rows.iter().map(|(p, _)| v.coeff(p)).collect();
        let mut check = v.clone();
        for (c, (_, row)) in coords.iter().zip(&self.rows) {
            check.add_scaled(row, &-c.clone());
        }
        check.is_zero().then_some(coords)
    }
}

impl<B: Ord> std::fmt::Debug for Echelon<B> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Echelon(rank {})", self.rows.len())
    }
}

impl<B: Ord> std::fmt::Debug for Rref<B> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Rref(rank {})", self.rows.len())
    }
}

/// Dimension of the span of `vectors`.
pub fn rank_of<'a, B, I>(vectors: I) -> usize
where
    B: Ord + Clone + 'a,
    I: IntoIterator<Item = &'a LinComb<B>>,
{
    let mut ech = Echelon::new();
    for v in vectors {
        ech.insert(v);
    }
    ech.rank()
}
