use std::fmt;

use num_bigint::BigUint;

use crate::algebra::LinComb;
use crate::biword::{self, Biword};
use crate::combinatorics::{catalan, compositions};

use super::p_n;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Generator {
    /// The idempotent `π_n = (1/n)`.
    Pi(usize),
    /// The graded projector `p_n`.
    P(usize),
}

impl Generator {
    pub fn weight(&self) -> usize {
        match *self {
            Generator::Pi(n) | Generator::P(n) => n,
        }
    }

    pub fn value(&self) -> LinComb<Biword> {
        match *self {
            Generator::Pi(n) => LinComb::basis(Biword::identity(vec![n as u32])),
            Generator::P(n) => p_n(n),
        }
    }
}

/// A fully parenthesized `≺`/`≻` product of generators.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum DendMonomial {
    Gen(Generator),
    Prec(Box<DendMonomial>, Box<DendMonomial>),
    Succ(Box<DendMonomial>, Box<DendMonomial>),
}

impl DendMonomial {
    pub fn weight(&self) -> usize {
        match self {
            DendMonomial::Gen(g) => g.weight(),
            DendMonomial::Prec(a, b) | DendMonomial::Succ(a, b) => a.weight() + b.weight(),
        }
    }

    pub fn evaluate(&self) -> LinComb<Biword> {
        match self {
            DendMonomial::Gen(g) => g.value(),
            DendMonomial::Prec(a, b) => biword::prec(&a.evaluate(), &b.evaluate()),
            DendMonomial::Succ(a, b) => biword::succ(&a.evaluate(), &b.evaluate()),
        }
    }

    pub fn prec(a: DendMonomial, b: DendMonomial) -> Self {
        DendMonomial::Prec(Box::new(a), Box::new(b))
    }

    pub fn succ(a: DendMonomial, b: DendMonomial) -> Self {
        DendMonomial::Succ(Box::new(a), Box::new(b))
    }

    pub fn pi(n: usize) -> Self {
        DendMonomial::Gen(Generator::Pi(n))
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::Pi(n) => write!(f, "pi{}", n),
            Generator::P(n) => write!(f, "p{}", n),
        }
    }
}

impl fmt::Display for DendMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let part = |m: &DendMonomial, f: &mut fmt::Formatter<'_>| match m {
            DendMonomial::Gen(g) => write!(f, "{}", g),
            _ => write!(f, "({})", m),
        };
        match self {
            DendMonomial::Gen(g) => write!(f, "{}", g),
            DendMonomial::Prec(a, b) => {
                part(a, f)?;
                write!(f, "<")?;
                part(b, f)
            }
            DendMonomial::Succ(a, b) => {
                part(a, f)?;
                write!(f, ">")?;
                part(b, f)
            }
        }
    }
}

/// Spanning monomials with their values for every weight `0..=n`
/// (index 0 is empty). Values of sub-monomials are reused, not re-evaluated.
pub fn spanning_sets_up_to(n: usize) -> Vec<Vec<(DendMonomial, LinComb<Biword>)>> {
    let mut levels: Vec<Vec<(DendMonomial, LinComb<Biword>)>> = vec![Vec::new()];
    for w in 1..=n {
        let mut level = vec![(DendMonomial::pi(w), Generator::Pi(w).value())];
        for i in 1..w {
            for (ma, va) in &levels[i] {
                for (mb, vb) in &levels[w - i] {
                    level.push((DendMonomial::prec(ma.clone(), mb.clone()), biword::prec(va, vb)));
                    level.push((DendMonomial::succ(ma.clone(), mb.clone()), biword::succ(va, vb)));
                }
            }
        }
        levels.push(level);
    }
    levels
}

/// Every `≺`/`≻`-labelled binary product of `π_{i1}, …, π_{ik}` with
/// `i1 + … + ik = n`, each evaluated in the biword algebra.
pub fn descd_spanning_set(n: usize) -> Vec<(DendMonomial, LinComb<Biword>)> {
    spanning_sets_up_to(n).pop().unwrap_or_default()
}

/// `Σ_{compositions of n into k parts} 2^{k-1} · Catalan(k-1)`.
pub fn spanning_monomial_count(n: usize) -> BigUint {
    compositions(n)
        .iter()
        .map(|c| {
            let k = c.len();
            (BigUint::from(1u32) << (k - 1)) * catalan(k - 1)
        })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::int;

    #[test]
    fn small_spanning_sets() {
        let s1 = descd_spanning_set(1);
        assert_eq!(s1.len(), 1);
        assert_eq!(s1[0].1, LinComb::basis("1|1".parse().unwrap()));

        let s2 = descd_spanning_set(2);
        let names: Vec<String> = s2.iter().map(|(m, _)| m.to_string()).collect();
        assert_eq!(names, ["pi2", "pi1<pi1", "pi1>pi1"]);
        let values: Vec<String> = s2.iter().map(|(_, v)| v.to_string()).collect();
        assert_eq!(values, ["1|2", "12|11", "21|11"]);
    }

    #[test]
    fn monomial_counts_match_formula() {
        for n in 1..=5 {
            assert_eq!(BigUint::from(descd_spanning_set(n).len()), spanning_monomial_count(n));
        }
        assert_eq!(spanning_monomial_count(6), BigUint::from(2955u32));
    }

    #[test]
    fn evaluate_agrees_with_cached_values() {
        for (m, v) in descd_spanning_set(4) {
            assert_eq!(m.evaluate(), v, "{}", m);
            assert_eq!(m.weight(), 4);
        }
        let p = DendMonomial::prec(DendMonomial::Gen(Generator::P(1)), DendMonomial::Gen(Generator::P(1)));
        assert_eq!(p.evaluate(), LinComb::term("12|11".parse().unwrap(), int(1)));
    }
}
