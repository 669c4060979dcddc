//! Graded permutations (biwords) and their dendriform, convolution,
//! internal and coalgebra structures.
//!
//! A biword `(σ, d)` is displayed as `perm|deg`, e.g. `3142|1211`. The
//! empty biword of size 0 is the unit and renders as `1`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::algebra::{bilinear, LinComb, Rational, Tensor};
use crate::combinatorics::{compositions, permutations};
use crate::error::{Error, Result};

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawBiword")]
pub struct Biword {
    perm: Vec<u32>,
    deg: Vec<u32>,
}

#[derive(Deserialize)]
struct RawBiword {
    perm: Vec<u32>,
    deg: Vec<u32>,
}

impl TryFrom<RawBiword> for Biword {
    type Error = Error;

    fn try_from(raw: RawBiword) -> Result<Self> {
        Biword::new(raw.perm, raw.deg)
    }
}

pub type BiwordTensor = Tensor<Biword>;

impl Biword {
    pub fn new(perm: Vec<u32>, deg: Vec<u32>) -> Result<Self> {
        if perm.len() != deg.len() {
            return Err(Error::InvalidArgument(format!(
                "permutation has {} entries but degree map has {}",
                perm.len(),
                deg.len()
            )));
        }
        let k = perm.len();
        let mut seen = vec![false; k];
        for &v in &perm {
            let i = v as usize;
            if i == 0 || i > k || seen[i - 1] {
                return Err(Error::InvalidArgument(format!(
                    "{:?} is not a permutation of [{}]",
                    perm, k
                )));
            }
            seen[i - 1] = true;
        }
        if deg.contains(&0) {
            return Err(Error::InvalidArgument("degrees must be positive".into()));
        }
        Ok(Self { perm, deg })
    }

    pub(crate) fn new_unchecked(perm: Vec<u32>, deg: Vec<u32>) -> Self {
        debug_assert!(Self::new(perm.clone(), deg.clone()).is_ok());
        Self { perm, deg }
    }

    pub fn unit() -> Self {
        Self::default()
    }

    /// The identity permutation carrying the given degrees.
    pub fn identity(deg: Vec<u32>) -> Self {
        let perm = (1..=deg.len() as u32).collect();
        Self::new_unchecked(perm, deg)
    }

    pub fn perm(&self) -> &[u32] {
        &self.perm
    }

    pub fn deg(&self) -> &[u32] {
        &self.deg
    }

    pub fn size(&self) -> usize {
        self.perm.len()
    }

    pub fn is_unit(&self) -> bool {
        self.perm.is_empty()
    }

    pub fn weight(&self) -> usize {
        self.deg.iter().map(|&d| d as usize).sum()
    }

    /// The two-row matrix form: permutation on top, degrees below, columns aligned.
    pub fn two_row(&self) -> String {
        if self.is_unit() {
            return "1".into();
        }
        let cols: Vec<(String, String)> = self
            .perm
            .iter()
            .zip(&self.deg)
            .map(|(p, d)| (p.to_string(), d.to_string()))
            .collect();
        let width = |c: &(String, String)| c.0.len().max(c.1.len());
        let top: Vec<String> = cols.iter().map(|c| format!("{:>w$}", c.0, w = width(c))).collect();
        let bottom: Vec<String> = cols.iter().map(|c| format!("{:>w$}", c.1, w = width(c))).collect();
        format!("({})\n({})", top.join(" "), bottom.join(" "))
    }

    /// Renders with a custom degree formatter; entries are concatenated
    /// when every rendered entry is a single character, comma-separated otherwise.
    pub fn render_with<F: Fn(u32) -> String>(&self, fmt_deg: F) -> String {
        if self.is_unit() {
            return "1".into();
        }
        let join = |items: Vec<String>| {
            if items.iter().all(|s| s.chars().count() == 1) {
                items.concat()
            } else {
                items.join(",")
            }
        };
        let p = join(self.perm.iter().map(|v| v.to_string()).collect());
        let d = join(self.deg.iter().map(|&v| fmt_deg(v)).collect());
        format!("{}|{}", p, d)
    }

    /// Parses `perm|deg` with a custom parser for the degree part.
    pub fn parse_with<F>(s: &str, parse_deg: F) -> Result<Self>
    where
        F: Fn(&str, usize) -> Result<Vec<u32>>,
    {
        let t = s.trim();
        if t.is_empty() || t == "1" || t == "|" {
            return Ok(Self::unit());
        }
        let Some(bar) = t.find('|') else {
            return Err(Error::Parse {
                position: t.len(),
                message: "expected `perm|degrees`".into(),
            });
        };
        let perm = parse_digits(&t[..bar], 0)?;
        let deg = parse_deg(&t[bar + 1..], bar + 1)?;
        Self::new(perm, deg).map_err(|e| Error::Parse {
            position: 0,
            message: e.to_string(),
        })
    }
}

/// Parses a digit string (`3142`) or a comma list (`3,1,10,2`).
pub fn parse_digits(s: &str, offset: usize) -> Result<Vec<u32>> {
    let err = |position: usize, message: &str| Error::Parse {
        position,
        message: message.into(),
    };
    if s.is_empty() {
        return Err(err(offset, "empty entry list"));
    }
    if s.contains(',') {
        let mut out = Vec::new();
        let mut pos = offset;
        for part in s.split(',') {
            let v = part.trim().parse().map_err(|_| err(pos, "expected an integer"))?;
            out.push(v);
            pos += part.len() + 1;
        }
        Ok(out)
    } else {
        s.chars()
            .enumerate()
            .map(|(i, c)| c.to_digit(10).ok_or_else(|| err(offset + i, "expected a digit")))
            .collect()
    }
}

/// Ordered by weight, then size, then the permutation, then the degrees.
impl Ord for Biword {
    fn cmp(&self, other: &Self) -> Ordering {
        self.weight()
            .cmp(&other.weight())
            .then(self.size().cmp(&other.size()))
            .then_with(|| self.perm.cmp(&other.perm))
            .then_with(|| self.deg.cmp(&other.deg))
    }
}

impl PartialOrd for Biword {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Biword {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render_with(|d| d.to_string()))
    }
}

impl FromStr for Biword {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::parse_with(s, parse_digits)
    }
}

/// Order-isomorphic relabelling of distinct values onto `1..=k`.
pub fn standardize(values: &[u32]) -> Result<Vec<u32>> {
    let mut sorted = values.to_vec();
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::InvalidArgument(format!(
            "standardization needs distinct values, got {:?}",
            values
        )));
    }
    Ok(values
        .iter()
        .map(|v| sorted.binary_search(v).expect("value present") as u32 + 1)
        .collect())
}

fn std_unchecked(values: &[u32]) -> Vec<u32> {
    standardize(values).expect("entries of a permutation are distinct")
}

/// `σ ⊗ τ`: block-diagonal permutation with concatenated degrees.
pub fn tensor_biword(a: &Biword, b: &Biword) -> Biword {
    let k = a.size() as u32;
    let perm = a.perm.iter().copied().chain(b.perm.iter().map(|v| v + k)).collect();
    let deg = a.deg.iter().chain(&b.deg).copied().collect();
    Biword::new_unchecked(perm, deg)
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum First {
    Left,
    Right,
}

/// Riffle interleavings of `a` with `b` shifted by `|a|`, with the first
/// biletter taken from the requested side. Both sides are nonempty.
fn riffles(a: &Biword, b: &Biword, first: First) -> LinComb<Biword> {
    let k = a.size();
    let l = b.size();
    let shift = k as u32;
    let total = k + l;
    let mut out = LinComb::zero();
    let mut perm = Vec::with_capacity(total);
    let mut deg = Vec::with_capacity(total);

    #[allow(clippy::too_many_arguments)]
    fn go(
        a: &Biword,
        b: &Biword,
        shift: u32,
        i: usize,
        j: usize,
        perm: &mut Vec<u32>,
        deg: &mut Vec<u32>,
        out: &mut LinComb<Biword>,
    ) {
        if i == a.size() && j == b.size() {
            out.add_term(Biword::new_unchecked(perm.clone(), deg.clone()), Rational::one());
            return;
        }
        if i < a.size() {
            perm.push(a.perm[i]);
            deg.push(a.deg[i]);
            go(a, b, shift, i + 1, j, perm, deg, out);
            perm.pop();
            deg.pop();
        }
        if j < b.size() {
            perm.push(b.perm[j] + shift);
            deg.push(b.deg[j]);
            go(a, b, shift, i, j + 1, perm, deg, out);
            perm.pop();
            deg.pop();
        }
    }

    match first {
        First::Left => {
            perm.push(a.perm[0]);
            deg.push(a.deg[0]);
            go(a, b, shift, 1, 0, &mut perm, &mut deg, &mut out);
        }
        First::Right => {
            perm.push(b.perm[0] + shift);
            deg.push(b.deg[0]);
            go(a, b, shift, 0, 1, &mut perm, &mut deg, &mut out);
        }
    }
    out
}

/// `a ≺ b`; `1 ≺ b = 0` (including `1 ≺ 1`) and `a ≺ 1 = a`.
pub fn biword_prec(a: &Biword, b: &Biword) -> LinComb<Biword> {
    if a.is_unit() {
        return LinComb::zero();
    }
    if b.is_unit() {
        return LinComb::basis(a.clone());
    }
    riffles(a, b, First::Left)
}

/// `a ≻ b`; `a ≻ 1 = 0` (including `1 ≻ 1`) and `1 ≻ b = b`.
pub fn biword_succ(a: &Biword, b: &Biword) -> LinComb<Biword> {
    if b.is_unit() {
        return LinComb::zero();
    }
    if a.is_unit() {
        return LinComb::basis(b.clone());
    }
    riffles(a, b, First::Right)
}

/// `a ⋆ b = a ≺ b + a ≻ b`, with the unit acting on both sides.
pub fn biword_convolution(a: &Biword, b: &Biword) -> LinComb<Biword> {
    if a.is_unit() {
        return LinComb::basis(b.clone());
    }
    if b.is_unit() {
        return LinComb::basis(a.clone());
    }
    let mut out = riffles(a, b, First::Left);
    out += riffles(a, b, First::Right);
    out
}

pub fn prec(x: &LinComb<Biword>, y: &LinComb<Biword>) -> LinComb<Biword> {
    bilinear(x, y, biword_prec)
}

pub fn succ(x: &LinComb<Biword>, y: &LinComb<Biword>) -> LinComb<Biword> {
    bilinear(x, y, biword_succ)
}

pub fn star(x: &LinComb<Biword>, y: &LinComb<Biword>) -> LinComb<Biword> {
    bilinear(x, y, biword_convolution)
}

/// `x^{⋆k}`, with `x^{⋆0} = 1`.
pub fn star_power(x: &LinComb<Biword>, k: usize) -> LinComb<Biword> {
    let mut acc = LinComb::basis(Biword::unit());
    for _ in 0..k {
        acc = star(&acc, x);
    }
    acc
}

fn cut(a: &Biword, k: usize) -> BiwordTensor {
    Tensor::new(
        Biword::new_unchecked(std_unchecked(&a.perm[..k]), a.deg[..k].to_vec()),
        Biword::new_unchecked(std_unchecked(&a.perm[k..]), a.deg[k..].to_vec()),
    )
}

fn position_of_one(a: &Biword) -> usize {
    a.perm
        .iter()
        .position(|&v| v == 1)
        .expect("nonempty permutation contains 1")
}

/// `Δ≺`: cuts at or after the biletter with top entry 1, which stays on the left.
pub fn coproduct_prec(a: &Biword) -> LinComb<BiwordTensor> {
    if a.is_unit() {
        return LinComb::zero();
    }
    let p = position_of_one(a);
    (p + 1..a.size()).map(|k| (cut(a, k), Rational::one())).collect()
}

/// `Δ≻`: cuts strictly before the biletter with top entry 1, which lands on the right.
pub fn coproduct_succ(a: &Biword) -> LinComb<BiwordTensor> {
    if a.is_unit() {
        return LinComb::zero();
    }
    let p = position_of_one(a);
    (1..=p).map(|k| (cut(a, k), Rational::one())).collect()
}

/// `Δ̃ = Δ≺ + Δ≻`, the reduced coproduct.
pub fn reduced_coproduct(a: &Biword) -> LinComb<BiwordTensor> {
    if a.is_unit() {
        return LinComb::zero();
    }
    (1..a.size()).map(|k| (cut(a, k), Rational::one())).collect()
}

pub fn delta_prec(x: &LinComb<Biword>) -> LinComb<BiwordTensor> {
    x.map_linear(coproduct_prec)
}

pub fn delta_succ(x: &LinComb<Biword>) -> LinComb<BiwordTensor> {
    x.map_linear(coproduct_succ)
}

pub fn delta_reduced(x: &LinComb<Biword>) -> LinComb<BiwordTensor> {
    x.map_linear(reduced_coproduct)
}

/// `Δ(x) = x ⊗ 1 + 1 ⊗ x + Δ≺(x) + Δ≻(x)`, `Δ(1) = 1 ⊗ 1`.
pub fn hopf_coproduct(x: &LinComb<Biword>) -> LinComb<BiwordTensor> {
    x.map_linear(|a| {
        let mut out = LinComb::basis(Tensor::new(a.clone(), Biword::unit()));
        if !a.is_unit() {
            out.add_term(Tensor::new(Biword::unit(), a.clone()), Rational::one());
            out += reduced_coproduct(a);
        }
        out
    })
}

/// The biword `c` with `Φ_c = Φ_a ∘ Φ_b` (apply `b` first), or zero.
///
/// For `a = (σ, d)` and `b = (τ, e)` of equal size this is `(τ∘σ, d)` when
/// `d = e∘σ`.
pub fn internal_compose(a: &Biword, b: &Biword) -> LinComb<Biword> {
    if a.size() != b.size() {
        return LinComb::zero();
    }
    let compatible = a.perm.iter().zip(&a.deg).all(|(&s, &d)| b.deg[s as usize - 1] == d);
    if !compatible {
        return LinComb::zero();
    }
    let perm = a.perm.iter().map(|&s| b.perm[s as usize - 1]).collect();
    LinComb::basis(Biword::new_unchecked(perm, a.deg.clone()))
}

pub fn compose(x: &LinComb<Biword>, y: &LinComb<Biword>) -> LinComb<Biword> {
    bilinear(x, y, internal_compose)
}

/// All biwords of the given weight, in canonical order.
pub fn enumerate_biwords(weight: usize) -> Vec<Biword> {
    let mut out = Vec::new();
    for comp in compositions(weight) {
        let deg: Vec<u32> = comp.iter().map(|&c| c as u32).collect();
        for perm in permutations(deg.len()) {
            out.push(Biword::new_unchecked(perm, deg.clone()));
        }
    }
    out.sort();
    out
}

/// Biwords of the given weight whose degrees all lie in `allowed`.
pub fn enumerate_biwords_with_degrees(weight: usize, allowed: &[u32]) -> Vec<Biword> {
    enumerate_biwords(weight)
        .into_iter()
        .filter(|b| b.deg.iter().all(|d| allowed.contains(d)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::int;

    fn bw(s: &str) -> Biword {
        s.parse().unwrap()
    }

    fn lc(terms: &[&str]) -> LinComb<Biword> {
        terms.iter().map(|t| (bw(t), int(1))).collect()
    }

    fn tlc(terms: &[(&str, &str)]) -> LinComb<BiwordTensor> {
        terms.iter().map(|(l, r)| (Tensor::new(bw(l), bw(r)), int(1))).collect()
    }

    #[test]
    fn two_row_form() {
        let b: Biword = "3,1,4,2|1,12,1,2".parse().unwrap();
        assert_eq!(b.two_row(), "(3  1 4 2)\n(1 12 1 2)");
        assert_eq!(Biword::unit().two_row(), "1");
    }

    #[test]
    fn serde_validates() {
        let b: Biword = "3142|1211".parse().unwrap();
        let v = serde_json::to_value(&b).unwrap();
        assert_eq!(v, serde_json::json!({"perm": [3, 1, 4, 2], "deg": [1, 2, 1, 1]}));
        assert_eq!(serde_json::from_value::<Biword>(v).unwrap(), b);
        let bad = serde_json::json!({"perm": [1, 1], "deg": [1, 1]});
        assert!(serde_json::from_value::<Biword>(bad).is_err());
        let x = LinComb::basis(b);
        assert_eq!(LinComb::<Biword>::from_json(&x.to_json()).unwrap(), x);
    }

    #[test]
    fn standardize_examples() {
        assert_eq!(standardize(&[3, 1]).unwrap(), vec![2, 1]);
        assert_eq!(standardize(&[1, 2, 3, 4]).unwrap(), vec![1, 2, 3, 4]);
        assert_eq!(standardize(&[3, 1, 4]).unwrap(), vec![2, 1, 3]);
        assert!(standardize(&[2, 2]).is_err());
    }

    #[test]
    fn tensor_examples() {
        assert_eq!(tensor_biword(&bw("1|1"), &bw("1|2")), bw("12|12"));
        assert_eq!(tensor_biword(&bw("21|57"), &bw("1|3")), bw("213|573"));
        assert_eq!(tensor_biword(&bw("21|57"), &Biword::unit()), bw("21|57"));
    }

    #[test]
    fn half_product_examples() {
        assert_eq!(biword_prec(&bw("1|1"), &bw("1|2")), lc(&["12|12"]));
        assert_eq!(biword_succ(&bw("1|1"), &bw("1|2")), lc(&["21|21"]));
        assert_eq!(biword_prec(&bw("21|12"), &Biword::unit()), lc(&["21|12"]));
        assert_eq!(biword_succ(&Biword::unit(), &bw("21|12")), lc(&["21|12"]));
        assert!(biword_prec(&Biword::unit(), &bw("1|1")).is_zero());
        assert!(biword_succ(&bw("1|1"), &Biword::unit()).is_zero());
        assert!(biword_prec(&Biword::unit(), &Biword::unit()).is_zero());
    }

    #[test]
    fn worked_products() {
        // degrees a, b, c, d encoded as 1, 2, 3, 4
        let x = bw("12|12");
        let y = bw("21|34");
        assert_eq!(biword_prec(&x, &y), lc(&["1243|1234", "1423|1324", "1432|1342"]));
        assert_eq!(biword_succ(&x, &y), lc(&["4123|3124", "4132|3142", "4312|3412"]));
        assert_eq!(biword_convolution(&x, &y).len(), 6);
    }

    #[test]
    fn convolution_examples() {
        assert_eq!(biword_convolution(&bw("1|1"), &bw("1|2")), lc(&["12|12", "21|21"]));
        assert_eq!(biword_convolution(&Biword::unit(), &bw("1|2")), lc(&["1|2"]));
        assert_eq!(biword_convolution(&Biword::unit(), &Biword::unit()), lc(&["1"]));
    }

    #[test]
    fn half_coproduct_examples() {
        let x = bw("3142|1234");
        assert_eq!(coproduct_prec(&x), tlc(&[("21|12", "21|34"), ("213|123", "1|4")]));
        assert_eq!(coproduct_succ(&x), tlc(&[("1|1", "132|234")]));
        assert!(coproduct_prec(&bw("1|5")).is_zero());
        assert_eq!(coproduct_prec(&bw("12|12")), tlc(&[("1|1", "1|2")]));
        assert!(coproduct_succ(&bw("12|12")).is_zero());
        assert_eq!(coproduct_succ(&bw("21|12")), tlc(&[("1|1", "1|2")]));
    }

    #[test]
    fn hopf_coproduct_examples() {
        let u = Biword::unit();
        assert_eq!(
            hopf_coproduct(&LinComb::basis(u.clone())),
            LinComb::basis(Tensor::new(u.clone(), u.clone()))
        );
        let a = bw("1|3");
        assert_eq!(
            hopf_coproduct(&LinComb::basis(a.clone())),
            tlc(&[("1|3", "1"), ("1", "1|3")])
        );
        assert_eq!(
            hopf_coproduct(&lc(&["12|12"])),
            tlc(&[("12|12", "1"), ("1", "12|12"), ("1|1", "1|2")])
        );
    }

    #[test]
    fn internal_compose_examples() {
        assert_eq!(internal_compose(&bw("312|111"), &bw("132|111")), lc(&["213|111"]));
        let a = bw("231|213");
        assert_eq!(internal_compose(&Biword::identity(vec![2, 1, 3]), &a), lc(&["231|213"]));
        assert!(internal_compose(&bw("12|11"), &bw("123|111")).is_zero());
        assert!(internal_compose(&bw("12|12"), &bw("12|11")).is_zero());
    }

    #[test]
    fn enumeration_counts() {
        let counts: Vec<usize> = (1..=6).map(|n| enumerate_biwords(n).len()).collect();
        assert_eq!(counts, vec![1, 3, 11, 49, 261, 1631]);
        assert_eq!(enumerate_biwords(0), vec![Biword::unit()]);
    }

    #[test]
    fn parse_and_render() {
        assert_eq!(bw("3142|1211").to_string(), "3142|1211");
        assert_eq!(bw("1,2|3,10").to_string(), "12|3,10");
        assert_eq!(bw("1"), Biword::unit());
        assert!(matches!(
            "12|1x".parse::<Biword>(),
            Err(Error::Parse { position: 4, .. })
        ));
        assert!("11|12".parse::<Biword>().is_err());
        assert!("12".parse::<Biword>().is_err());
        let json = serde_json::to_string(&bw("21|12")).unwrap();
        assert_eq!(json, r#"{"perm":[2,1],"deg":[1,2]}"#);
    }
}
