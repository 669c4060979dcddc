//! The dendriform descent algebra: graded projectors `p_n`, the idempotents
//! `π_n` and `π_{n1..nk}`, the prec-logarithm, and exact dimension counts.

mod dims;
mod graded;
mod monomial;

pub use dims::{
    biword_count, biword_series, descd_series_catalan, descd_series_closed, dimension_report, dimension_report_columns,
    prim_dend_dimension, primitive_series, Columns, Cutoffs, DimensionReport, DimensionRow, Space,
};
pub use graded::{exp_prec, prec_logarithm, GradedSeries};
pub use monomial::{descd_spanning_set, spanning_monomial_count, spanning_sets_up_to, DendMonomial, Generator};

use std::collections::BTreeMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::One;

use crate::algebra::{Echelon, LinComb, Rational};
use crate::biword::{self, Biword};
use crate::combinatorics::compositions;
use crate::error::{Error, Result};

fn deg_vec(c: &[usize]) -> Vec<u32> {
    c.iter().map(|&d| d as u32).collect()
}

/// The projector onto weight `n`: the identity biwords over all
/// compositions of `n`. `p_0` is the unit.
pub fn p_n(n: usize) -> LinComb<Biword> {
    compositions(n)
        .into_iter()
        .map(|c| (Biword::identity(deg_vec(&c)), Rational::one()))
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PiRoute {
    /// The single biword `(1/n)`.
    Closed,
    /// `Σ_k (-1)^{k-1} Σ p_{a1} ≺ (p_{a2} ⋆ … ⋆ p_{ak})` over compositions of `n`.
    Alternating,
    /// `π_n = p_n - Σ π_{i1..ik}` over compositions with at least two parts.
    Recursive,
}

/// The idempotent `π_n` by the requested route.
pub fn pi_n(n: usize, route: PiRoute) -> Result<LinComb<Biword>> {
    if n == 0 {
        return Err(Error::InvalidArgument("π_n needs n ≥ 1".into()));
    }
    Ok(match route {
        PiRoute::Closed => LinComb::basis(Biword::identity(vec![n as u32])),
        PiRoute::Alternating => pi_alternating(n),
        PiRoute::Recursive => {
            let mut memo = BTreeMap::new();
            pi_recursive(n, &mut memo)
        }
    })
}

fn pi_alternating(n: usize) -> LinComb<Biword> {
    let mut out = LinComb::zero();
    for comp in compositions(n) {
        let k = comp.len();
        let mut tail = LinComb::basis(Biword::unit());
        for &a in &comp[1..] {
            tail = biword::star(&tail, &p_n(a));
        }
        let term = biword::prec(&p_n(comp[0]), &tail);
        let sign = if k % 2 == 1 { Rational::one() } else { -Rational::one() };
        out.add_scaled(&term, &sign);
    }
    out
}

fn pi_recursive(n: usize, memo: &mut BTreeMap<usize, LinComb<Biword>>) -> LinComb<Biword> {
    if let Some(v) = memo.get(&n) {
        return v.clone();
    }
    let mut out = p_n(n);
    for comp in compositions(n).into_iter().filter(|c| c.len() > 1) {
        let factors: Vec<_> = comp.iter().map(|&i| pi_recursive(i, memo)).collect();
        out -= &right_nested_prec(&factors);
    }
    memo.insert(n, out.clone());
    out
}

fn right_nested_prec(factors: &[LinComb<Biword>]) -> LinComb<Biword> {
    let mut iter = factors.iter().rev();
    let mut acc = iter.next().cloned().unwrap_or_default();
    for f in iter {
        acc = biword::prec(f, &acc);
    }
    acc
}

/// `π_{n1} ≺ (π_{n2} ≺ (… ≺ π_{nk}))`.
pub fn pi_composite(comp: &[usize]) -> Result<LinComb<Biword>> {
    if comp.is_empty() {
        return Err(Error::InvalidArgument("empty composition".into()));
    }
    if comp.contains(&0) {
        return Err(Error::InvalidArgument("composition parts must be positive".into()));
    }
    let factors: Vec<_> = comp
        .iter()
        .map(|&i| LinComb::basis(Biword::identity(vec![i as u32])))
        .collect();
    Ok(right_nested_prec(&factors))
}

fn common_weight(vectors: &[LinComb<Biword>]) -> Result<Option<usize>> {
    let mut weight = None;
    for v in vectors {
        for b in v.keys() {
            let w = b.weight();
            match weight {
                None => weight = Some(w),
                Some(e) if e != w => return Err(Error::MixedWeights { expected: e, found: w }),
                _ => {}
            }
        }
    }
    Ok(weight)
}

/// Dimension of the span of weight-homogeneous biword combinations.
pub fn rank(vectors: &[LinComb<Biword>]) -> Result<usize> {
    common_weight(vectors)?;
    let mut ech = Echelon::new();
    for v in vectors {
        ech.insert(v);
    }
    Ok(ech.rank())
}

/// The weight-`n` component of the descent algebra as an echelon basis.
#[derive(Debug)]
pub struct DescdComponent {
    pub weight: usize,
    pub spanning_count: usize,
    pub echelon: Echelon<Biword>,
}

impl DescdComponent {
    pub fn dimension(&self) -> usize {
        self.echelon.rank()
    }

    pub fn contains(&self, x: &LinComb<Biword>) -> bool {
        self.echelon.contains(x)
    }
}

type ComponentCell = Arc<OnceLock<Arc<DescdComponent>>>;

/// Row-reduces the spanning set of weight `n`; memoized per process.
pub fn descd_component(n: usize) -> Arc<DescdComponent> {
    static CACHE: OnceLock<Mutex<BTreeMap<usize, ComponentCell>>> = OnceLock::new();
    let cell = {
        let mut map = CACHE
            .get_or_init(Default::default)
            .lock()
            .expect("descd cache poisoned");
        map.entry(n).or_default().clone()
    };
    cell.get_or_init(|| {
        let spanning = descd_spanning_set(n);
        let mut echelon = Echelon::new();
        for (_, v) in &spanning {
            echelon.insert(v);
        }
        Arc::new(DescdComponent {
            weight: n,
            spanning_count: spanning.len(),
            echelon,
        })
    })
    .clone()
}

/// Spanning monomials of weight `n` kept greedily when independent of the
/// ones before them: a basis of the component.
pub fn descd_basis(n: usize) -> Vec<(DendMonomial, LinComb<Biword>)> {
    let mut echelon = Echelon::new();
    descd_spanning_set(n)
        .into_iter()
        .filter(|(_, v)| echelon.insert(v))
        .collect()
}

/// Pairs of basis elements of weight `n` whose internal product leaves the
/// descent algebra, with the product.
pub fn non_stability_witnesses(n: usize) -> Vec<(DendMonomial, DendMonomial, LinComb<Biword>)> {
    let basis = descd_basis(n);
    let component = descd_component(n);
    let mut out = Vec::new();
    for (ma, a) in &basis {
        for (mb, b) in &basis {
            let c = biword::compose(a, b);
            if !component.contains(&c) {
                out.push((ma.clone(), mb.clone(), c));
            }
        }
    }
    out
}

/// Whether `x` lies in the weight-`n` component of the descent algebra.
pub fn descd_membership(x: &LinComb<Biword>, n: usize) -> Result<bool> {
    if n == 0 {
        return Err(Error::InvalidArgument("membership needs n ≥ 1".into()));
    }
    if let Some(w) = common_weight(std::slice::from_ref(x))? {
        if w != n {
            return Err(Error::MixedWeights { expected: n, found: w });
        }
    }
    Ok(descd_component(n).contains(x))
}
