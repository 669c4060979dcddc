//! Graded connected shuffle bialgebras given by structure constants, truncated
//! at a finite weight. Every axiom is checked, never assumed.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::action::phi_apply;
use crate::algebra::{
    bilinear, parse_combination, parse_rational, render_terms, Echelon, LinComb, Named, Rational, Rref, Tensor,
};
use crate::biword::Biword;
use crate::error::{Error, Result};
use crate::words::{self, Alphabet, Letter, Word};

/// Index of a basis element; `0` is the unit.
pub type Elem = usize;

pub const UNIT: Elem = 0;

/// A failed axiom: which one, on which inputs, and the two sides.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub axiom: String,
    pub inputs: Vec<String>,
    pub lhs: String,
    pub rhs: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}] ({}): {} != {}",
            self.axiom,
            self.inputs.join(", "),
            self.lhs,
            self.rhs
        )
    }
}

#[derive(Deserialize, Serialize)]
#[serde(untagged)]
enum CoeffRepr {
    Int(i64),
    Text(String),
}

impl CoeffRepr {
    fn value(&self) -> Result<Rational> {
        match self {
            CoeffRepr::Int(n) => Ok(Rational::from_integer((*n).into())),
            CoeffRepr::Text(s) => parse_rational(s).ok_or_else(|| Error::Format(format!("bad coefficient `{}`", s))),
        }
    }
}

type PrecRow = (String, String, Vec<(String, CoeffRepr)>);
type CoproductRow = (String, String, CoeffRepr);

#[derive(Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct PresentationFile {
    basis: Vec<Vec<String>>,
    #[serde(default)]
    prec: Vec<PrecRow>,
    coproduct: BTreeMap<String, Vec<CoproductRow>>,
}

/// Basis labels per weight, the `≺` table on pairs of non-unit basis elements
/// (missing entries are zero) and the full coproduct of every basis element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    labels: Vec<String>,
    weights: Vec<usize>,
    index: HashMap<String, Elem>,
    max_weight: usize,
    prec: BTreeMap<(Elem, Elem), LinComb<Elem>>,
    coproduct: Vec<LinComb<Tensor<Elem>>>,
}

impl Presentation {
    fn with_basis(basis: &[Vec<String>]) -> Result<Self> {
        let mut p = Self {
            labels: vec!["1".into()],
            weights: vec![0],
            index: HashMap::from([("1".to_string(), UNIT)]),
            max_weight: basis.len(),
            prec: BTreeMap::new(),
            coproduct: vec![LinComb::basis(Tensor::new(UNIT, UNIT))],
        };
        for (i, level) in basis.iter().enumerate() {
            for label in level {
                if label.is_empty() || p.index.contains_key(label) {
                    return Err(Error::Format(format!("duplicate or reserved label `{}`", label)));
                }
                p.index.insert(label.clone(), p.labels.len());
                p.labels.push(label.clone());
                p.weights.push(i + 1);
                p.coproduct.push(LinComb::zero());
            }
        }
        Ok(p)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let file: PresentationFile = serde_json::from_str(s)?;
        let mut p = Self::with_basis(&file.basis)?;
        for (a, b, terms) in &file.prec {
            let (a, b) = (p.lookup(a)?, p.lookup(b)?);
            if a == UNIT || b == UNIT {
                return Err(Error::Format("the unit has no entries in the ≺ table".into()));
            }
            let mut v = LinComb::zero();
            for (l, c) in terms {
                v.add_term(p.lookup(l)?, c.value()?);
            }
            if p.prec.insert((a, b), v).is_some() {
                return Err(Error::Format(format!(
                    "repeated ≺ entry ({}, {})",
                    p.labels[a], p.labels[b]
                )));
            }
        }
        for (label, terms) in &file.coproduct {
            let x = p.lookup(label)?;
            if x == UNIT {
                return Err(Error::Format("the unit coproduct is fixed".into()));
            }
            let mut v = LinComb::zero();
            for (l, r, c) in terms {
                v.add_term(Tensor::new(p.lookup(l)?, p.lookup(r)?), c.value()?);
            }
            p.coproduct[x] = v;
        }
        for x in 1..p.labels.len() {
            if !file.coproduct.contains_key(&p.labels[x]) {
                return Err(Error::Format(format!("missing coproduct for `{}`", p.labels[x])));
            }
        }
        Ok(p)
    }

    pub fn to_json(&self) -> Value {
        let basis: Vec<Vec<&str>> = (1..=self.max_weight)
            .map(|n| self.basis_of_weight(n).map(|e| self.labels[e].as_str()).collect())
            .collect();
        let coeff = |c: &Rational| Value::String(c.to_string());
        let prec: Vec<Value> = self
            .prec
            .iter()
            .filter(|(_, v)| !v.is_zero())
            .map(|((a, b), v)| {
                let terms: Vec<Value> = v.iter().map(|(e, c)| json!([self.labels[*e], coeff(c)])).collect();
                json!([self.labels[*a], self.labels[*b], terms])
            })
            .collect();
        let coproduct: serde_json::Map<String, Value> = (1..self.labels.len())
            .map(|x| {
                let terms: Vec<Value> = self.coproduct[x]
                    .iter()
                    .map(|(t, c)| json!([self.labels[t.left], self.labels[t.right], coeff(c)]))
                    .collect();
                (self.labels[x].clone(), Value::Array(terms))
            })
            .collect();
        json!({ "basis": basis, "prec": prec, "coproduct": coproduct })
    }

    fn lookup(&self, label: &str) -> Result<Elem> {
        self.elem(label)
            .ok_or_else(|| Error::Format(format!("unknown label `{}`", label)))
    }

    pub fn elem(&self, label: &str) -> Option<Elem> {
        self.index.get(label).copied()
    }

    pub fn label(&self, e: Elem) -> &str {
        &self.labels[e]
    }

    pub fn weight(&self, e: Elem) -> usize {
        self.weights[e]
    }

    pub fn max_weight(&self) -> usize {
        self.max_weight
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.len() == 1
    }

    /// Basis elements of weight `n`, in declaration order.
    pub fn basis_of_weight(&self, n: usize) -> impl Iterator<Item = Elem> + '_ {
        (0..self.labels.len()).filter(move |&e| self.weights[e] == n)
    }

    pub fn dimension(&self, n: usize) -> usize {
        self.basis_of_weight(n).count()
    }

    pub fn render(&self, x: &LinComb<Elem>) -> String {
        render_terms(x, |&e| self.labels[e].clone())
    }

    fn render_tensor(&self, x: &LinComb<Tensor<Elem>>) -> String {
        render_terms(x, |t| format!("{} ⊗ {}", self.labels[t.left], self.labels[t.right]))
    }

    /// Parses `2*ab - 1/2*a2 + c` style combinations of labels.
    pub fn parse_combination(&self, s: &str) -> Result<LinComb<Elem>> {
        parse_combination(s, |label, position| {
            self.elem(label).ok_or_else(|| Error::Parse {
                position,
                message: format!("unknown label `{}`", label),
            })
        })
    }

    /// The stored table entry `a ≺ b` for non-unit labels.
    pub fn prec_entry(&self, a: Elem, b: Elem) -> LinComb<Elem> {
        self.prec.get(&(a, b)).cloned().unwrap_or_default()
    }

    pub fn set_prec(&mut self, a: Elem, b: Elem, value: LinComb<Elem>) {
        assert!(a != UNIT && b != UNIT, "the unit has no table entries");
        self.prec.insert((a, b), value);
    }

    pub fn set_coproduct(&mut self, x: Elem, value: LinComb<Tensor<Elem>>) {
        assert!(x != UNIT, "the unit coproduct is fixed");
        self.coproduct[x] = value;
    }

    fn prec_basis(&self, a: Elem, b: Elem) -> LinComb<Elem> {
        if a == UNIT {
            LinComb::zero()
        } else if b == UNIT {
            LinComb::basis(a)
        } else if self.weights[a] + self.weights[b] > self.max_weight {
            LinComb::zero()
        } else {
            self.prec_entry(a, b)
        }
    }

    fn shuffle_basis(&self, a: Elem, b: Elem) -> LinComb<Elem> {
        if a == UNIT {
            LinComb::basis(b)
        } else if b == UNIT {
            LinComb::basis(a)
        } else {
            self.prec_basis(a, b) + self.prec_basis(b, a)
        }
    }

    /// `x ≺ y` with `x ≺ 1 = x`, `1 ≺ y = 0` and `1 ≺ 1 = 0`.
    pub fn prec(&self, x: &LinComb<Elem>, y: &LinComb<Elem>) -> LinComb<Elem> {
        bilinear(x, y, |&a, &b| self.prec_basis(a, b))
    }

    /// `x ≻ y := y ≺ x`.
    pub fn succ(&self, x: &LinComb<Elem>, y: &LinComb<Elem>) -> LinComb<Elem> {
        self.prec(y, x)
    }

    pub fn shuffle(&self, x: &LinComb<Elem>, y: &LinComb<Elem>) -> LinComb<Elem> {
        bilinear(x, y, |&a, &b| self.shuffle_basis(a, b))
    }

    pub fn coproduct(&self, x: &LinComb<Elem>) -> LinComb<Tensor<Elem>> {
        x.map_linear(|&e| self.coproduct[e].clone())
    }

    pub fn counit(&self, x: &LinComb<Elem>) -> Rational {
        x.coeff(&UNIT)
    }

    fn nonunit(&self) -> std::ops::Range<Elem> {
        1..self.labels.len()
    }

    /// Every axiom violation up to the truncation weight; empty iff valid.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        self.check_weights(&mut out);
        self.check_counit(&mut out);
        self.check_coassociativity(&mut out);
        self.check_shuffle_axiom(&mut out);
        self.check_left_compatibility(&mut out);
        out
    }

    fn violation(&self, axiom: &str, inputs: &[Elem], lhs: String, rhs: String) -> Violation {
        Violation {
            axiom: axiom.into(),
            inputs: inputs.iter().map(|&e| self.labels[e].clone()).collect(),
            lhs,
            rhs,
        }
    }

    fn check_weights(&self, out: &mut Vec<Violation>) {
        for (&(a, b), v) in &self.prec {
            let w = self.weights[a] + self.weights[b];
            let bad: LinComb<Elem> = v
                .iter()
                .filter(|(e, _)| self.weights[**e] != w)
                .map(|(e, c)| (*e, c.clone()))
                .collect();
            if !bad.is_zero() {
                out.push(self.violation("weight", &[a, b], self.render(&bad), format!("terms of weight {}", w)));
            }
        }
        for x in self.nonunit() {
            let w = self.weights[x];
            let bad: LinComb<Tensor<Elem>> = self.coproduct[x]
                .iter()
                .filter(|(t, _)| self.weights[t.left] + self.weights[t.right] != w)
                .map(|(t, c)| (t.clone(), c.clone()))
                .collect();
            if !bad.is_zero() {
                out.push(self.violation(
                    "weight",
                    &[x],
                    self.render_tensor(&bad),
                    format!("terms of weight {}", w),
                ));
            }
        }
    }

    fn check_counit(&self, out: &mut Vec<Violation>) {
        for x in self.nonunit() {
            let d = &self.coproduct[x];
            let left: LinComb<Tensor<Elem>> = d
                .iter()
                .filter(|(t, _)| t.left == UNIT)
                .map(|(t, c)| (t.clone(), c.clone()))
                .collect();
            let right: LinComb<Tensor<Elem>> = d
                .iter()
                .filter(|(t, _)| t.right == UNIT)
                .map(|(t, c)| (t.clone(), c.clone()))
                .collect();
            for (found, expect) in [(left, Tensor::new(UNIT, x)), (right, Tensor::new(x, UNIT))] {
                let expect = LinComb::basis(expect);
                if found != expect {
                    out.push(self.violation("counit", &[x], self.render_tensor(&found), self.render_tensor(&expect)));
                }
            }
        }
    }

    fn check_coassociativity(&self, out: &mut Vec<Violation>) {
        let name =
            |t: &(Elem, Elem, Elem)| format!("{} ⊗ {} ⊗ {}", self.labels[t.0], self.labels[t.1], self.labels[t.2]);
        for x in self.nonunit() {
            let mut lhs = LinComb::zero();
            let mut rhs = LinComb::zero();
            for (t, c) in self.coproduct[x].iter() {
                for (u, c2) in self.coproduct[t.left].iter() {
                    lhs.add_term((u.left, u.right, t.right), c * c2);
                }
                for (u, c2) in self.coproduct[t.right].iter() {
                    rhs.add_term((t.left, u.left, u.right), c * c2);
                }
            }
            if lhs != rhs {
                out.push(self.violation(
                    "coassociativity",
                    &[x],
                    render_terms(&lhs, name),
                    render_terms(&rhs, name),
                ));
            }
        }
    }

    fn check_shuffle_axiom(&self, out: &mut Vec<Violation>) {
        let n = self.max_weight;
        for a in self.nonunit() {
            for b in self.nonunit() {
                let ab = self.prec_basis(a, b);
                for c in self.nonunit() {
                    if self.weights[a] + self.weights[b] + self.weights[c] > n {
                        continue;
                    }
                    let lhs = self.prec(&ab, &LinComb::basis(c));
                    let inner = self.prec_basis(b, c) + self.prec_basis(c, b);
                    let rhs = self.prec(&LinComb::basis(a), &inner);
                    if lhs != rhs {
                        out.push(self.violation("shuffle", &[a, b, c], self.render(&lhs), self.render(&rhs)));
                    }
                }
            }
        }
    }

    fn check_left_compatibility(&self, out: &mut Vec<Violation>) {
        for a in self.nonunit() {
            for b in self.nonunit() {
                if self.weights[a] + self.weights[b] > self.max_weight {
                    continue;
                }
                let ab = self.prec_basis(a, b);
                let lhs = self.coproduct(&ab);
                let mut rhs: LinComb<Tensor<Elem>> =
                    ab.iter().map(|(&e, c)| (Tensor::new(UNIT, e), c.clone())).collect();
                for (s, cs) in self.coproduct[a].iter() {
                    for (t, ct) in self.coproduct[b].iter() {
                        let left = self.prec_basis(s.left, t.left);
                        if left.is_zero() {
                            continue;
                        }
                        let right = self.shuffle_basis(s.right, t.right);
                        let scale = cs * ct;
                        for (l, cl) in left.iter() {
                            for (r, cr) in right.iter() {
                                rhs.add_term(Tensor::new(*l, *r), cl * cr * &scale);
                            }
                        }
                    }
                }
                if lhs != rhs {
                    out.push(self.violation("left", &[a, b], self.render_tensor(&lhs), self.render_tensor(&rhs)));
                }
            }
        }
    }
}

/// The shuffle bialgebra `Sh(X)` truncated at `max_weight`, with compact word labels.
pub fn sh_presentation(alphabet: &Alphabet, max_weight: usize) -> Presentation {
    let levels: Vec<Vec<Word>> = (1..=max_weight).map(|n| alphabet.words_of_weight(n)).collect();
    let basis: Vec<Vec<String>> = levels.iter().map(|l| l.iter().map(Word::compact).collect()).collect();
    let mut p = Presentation::with_basis(&basis).expect("compact labels are distinct");
    let mut elems: HashMap<Word, Elem> = HashMap::from([(Word::empty(), UNIT)]);
    for w in levels.iter().flatten() {
        elems.insert(w.clone(), p.index[&w.compact()]);
    }
    let to_elems = |x: &LinComb<Word>| x.map_keys(|w| elems[w]);
    let all: Vec<&Word> = levels.iter().flatten().collect();
    for u in &all {
        for v in &all {
            if u.weight() + v.weight() <= max_weight {
                p.prec.insert((elems[*u], elems[*v]), to_elems(&words::word_prec(u, v)));
            }
        }
        p.coproduct[elems[*u]] = words::deconcat(u).map_keys(|t| Tensor::new(elems[&t.left], elems[&t.right]));
    }
    p
}

/// A primitive basis element: row `index` of the weight-`weight` primitive basis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct PrimId {
    pub weight: usize,
    pub index: usize,
}

/// `p1 ≺ (p2 ≺ (… ≺ pk))`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NestedWord(pub Vec<PrimId>);

impl NestedWord {
    pub fn weight(&self) -> usize {
        self.0.iter().map(|p| p.weight).sum()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimitiveDecomposition {
    pub label: String,
    pub terms: LinComb<Named<NestedWord>>,
}

impl fmt::Display for PrimitiveDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.terms)
    }
}

impl PrimitiveDecomposition {
    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|(w, c)| {
                let word: Vec<Value> = w.key.0.iter().map(|p| json!([p.weight, p.index])).collect();
                json!({ "coeff": c.to_string(), "word": word, "rendered": w.name })
            })
            .collect();
        json!({ "label": self.label, "terms": terms })
    }
}

/// A validated presentation with its antipode and primitive basis.
#[derive(Clone, Debug)]
pub struct ShuffleBialgebra {
    pres: Presentation,
    antipodes: Vec<LinComb<Elem>>,
    primitives: Vec<Rref<Elem>>,
}

impl ShuffleBialgebra {
    pub fn new(pres: Presentation) -> Result<Self> {
        let violations = pres.validate();
        if !violations.is_empty() {
            return Err(Error::InvalidPresentation(violations));
        }
        Ok(Self::new_unchecked(pres))
    }

    /// Skips validation; decompositions then detect inconsistencies themselves.
    pub fn new_unchecked(pres: Presentation) -> Self {
        let mut antipodes: Vec<LinComb<Elem>> = Vec::with_capacity(pres.len());
        let order = {
            let mut v: Vec<Elem> = (0..pres.len()).collect();
            v.sort_by_key(|&e| (pres.weight(e), e));
            v
        };
        let mut table: Vec<Option<LinComb<Elem>>> = vec![None; pres.len()];
        for &x in &order {
            let s = if x == UNIT {
                LinComb::basis(UNIT)
            } else {
                let mut acc = LinComb::zero();
                for (t, c) in pres.coproduct[x].iter() {
                    if t.right == UNIT {
                        continue;
                    }
                    let sl = table[t.left]
                        .clone()
                        .unwrap_or_else(|| panic!("coproduct of `{}` is not graded", pres.label(x)));
                    acc.add_scaled(&pres.shuffle(&sl, &LinComb::basis(t.right)), &-c.clone());
                }
                acc
            };
            table[x] = Some(s);
        }
        antipodes.extend(table.into_iter().map(|s| s.expect("all computed")));
        let mut me = Self {
            pres,
            antipodes,
            primitives: Vec::new(),
        };
        let mut primitives = vec![Echelon::new().into_rref()];
        for n in 1..=me.pres.max_weight() {
            let mut ech = Echelon::new();
            for e in me.pres.basis_of_weight(n) {
                ech.insert(&me.tau(&LinComb::basis(e)));
            }
            primitives.push(ech.into_rref());
        }
        me.primitives = primitives;
        me
    }

    pub fn presentation(&self) -> &Presentation {
        &self.pres
    }

    /// `S(1) = 1`, `S(x) = -Σ_{x'' ≠ 1} S(x') ⧢ x''`.
    pub fn antipode(&self, x: &LinComb<Elem>) -> LinComb<Elem> {
        x.map_linear(|&e| self.antipodes[e].clone())
    }

    /// `τ(x) = Σ_{x' ≠ 1} x' ≺ S(x'')`.
    pub fn tau(&self, x: &LinComb<Elem>) -> LinComb<Elem> {
        let mut out = LinComb::zero();
        for (t, c) in self.pres.coproduct(x).iter() {
            if t.left == UNIT {
                continue;
            }
            let term = self.pres.prec(&LinComb::basis(t.left), &self.antipodes[t.right]);
            out.add_scaled(&term, c);
        }
        out
    }

    /// Convolution `(f ⋆ g)(x) = f(x') ⧢ g(x'')`.
    pub fn convolve<F, G>(&self, f: F, g: G, x: &LinComb<Elem>) -> LinComb<Elem>
    where
        F: Fn(&LinComb<Elem>) -> LinComb<Elem>,
        G: Fn(&LinComb<Elem>) -> LinComb<Elem>,
    {
        let mut out = LinComb::zero();
        for (t, c) in self.pres.coproduct(x).iter() {
            let term = self
                .pres
                .shuffle(&f(&LinComb::basis(t.left)), &g(&LinComb::basis(t.right)));
            out.add_scaled(&term, c);
        }
        out
    }

    /// Per weight `0..=N`, the reduced-row-echelon basis of `τ(A_n)`.
    pub fn primitive_basis(&self) -> Vec<Vec<LinComb<Elem>>> {
        self.primitives.iter().map(|r| r.rows().cloned().collect()).collect()
    }

    pub fn primitive(&self, id: PrimId) -> LinComb<Elem> {
        self.primitives[id.weight]
            .rows()
            .nth(id.index)
            .cloned()
            .expect("primitive id in range")
    }

    pub fn primitive_name(&self, id: PrimId) -> String {
        let v = self.primitive(id);
        match v.leading() {
            Some((&e, c)) if v.len() == 1 && c.is_one() => self.pres.label(e).to_string(),
            _ => format!("[{}]", self.pres.render(&v)),
        }
    }

    pub fn nested_name(&self, w: &NestedWord) -> String {
        let names: Vec<String> = w.0.iter().map(|&p| self.primitive_name(p)).collect();
        let mut iter = names.iter().rev();
        let mut acc = iter.next().cloned().unwrap_or_else(|| "1".into());
        for (i, n) in iter.enumerate() {
            acc = if i == 0 {
                format!("{}<{}", n, acc)
            } else {
                format!("{}<({})", n, acc)
            };
        }
        acc
    }

    pub fn evaluate_nested(&self, w: &NestedWord) -> LinComb<Elem> {
        let mut iter = w.0.iter().rev();
        let Some(&last) = iter.next() else {
            return LinComb::basis(UNIT);
        };
        let mut acc = self.primitive(last);
        for &p in iter {
            acc = self.pres.prec(&self.primitive(p), &acc);
        }
        acc
    }

    pub fn evaluate_decomposition(&self, d: &PrimitiveDecomposition) -> LinComb<Elem> {
        let mut out = LinComb::zero();
        for (w, c) in d.terms.iter() {
            out.add_scaled(&self.evaluate_nested(&w.key), c);
        }
        out
    }

    /// Writes a basis label as a combination of right-nested `≺` words in the
    /// primitive basis, peeling the leading primitive off the lowest cut of
    /// the coproduct, one weight at a time.
    pub fn primitive_decomposition(&self, label: &str) -> Result<PrimitiveDecomposition> {
        let e = self.pres.lookup(label)?;
        let failure = |reason: String| Error::RigidityFailure {
            label: label.to_string(),
            reason,
        };
        if e == UNIT {
            return Err(failure("the unit has no primitive decomposition".into()));
        }
        let mut memo = HashMap::new();
        let terms = self.decompose_elem(e, &mut memo).map_err(failure)?;
        let back = terms.iter().fold(LinComb::zero(), |mut acc, (w, c)| {
            acc.add_scaled(&self.evaluate_nested(w), c);
            acc
        });
        if back != LinComb::basis(e) {
            return Err(failure(format!("nested words evaluate to {}", self.pres.render(&back))));
        }
        Ok(PrimitiveDecomposition {
            label: label.to_string(),
            terms: terms.map_keys(|w| Named {
                key: w.clone(),
                name: self.nested_name(w),
            }),
        })
    }

    /// Decomposes a combination of non-unit basis elements by linearity.
    pub fn decompose(&self, x: &LinComb<Elem>) -> Result<LinComb<NestedWord>> {
        let mut memo = HashMap::new();
        let mut out = LinComb::zero();
        for (&e, c) in x.iter() {
            let d = self
                .decompose_elem(e, &mut memo)
                .map_err(|reason| Error::RigidityFailure {
                    label: self.pres.label(e).to_string(),
                    reason,
                })?;
            out.add_scaled(&d, c);
        }
        Ok(out)
    }

    fn decompose_elem(
        &self,
        e: Elem,
        memo: &mut HashMap<Elem, LinComb<NestedWord>>,
    ) -> std::result::Result<LinComb<NestedWord>, String> {
        if e == UNIT {
            return Ok(LinComb::basis(NestedWord(Vec::new())));
        }
        if let Some(d) = memo.get(&e) {
            return Ok(d.clone());
        }
        let n = self.pres.weight(e);
        let mut rest = LinComb::basis(e);
        let mut out = LinComb::zero();
        for k in 1..=n {
            let cut = self.cut(&rest, k);
            for (right, left) in cut {
                let coords = self.primitives[k].coordinates(&left).ok_or_else(|| {
                    format!(
                        "left factor {} of the weight-{} cut is not primitive",
                        self.pres.render(&left),
                        k
                    )
                })?;
                let tail = self.decompose_elem(right, memo)?;
                let right_vec = LinComb::basis(right);
                for (index, c) in coords.into_iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    let id = PrimId { weight: k, index };
                    for (w, cw) in tail.iter() {
                        let mut word = vec![id];
                        word.extend_from_slice(&w.0);
                        out.add_term(NestedWord(word), &c * cw);
                    }
                    let value = if right == UNIT {
                        self.primitive(id)
                    } else {
                        self.pres.prec(&self.primitive(id), &right_vec)
                    };
                    rest.add_scaled(&value, &-c);
                }
            }
            if !self.cut(&rest, k).is_empty() {
                return Err(format!("the weight-{} cut does not clear", k));
            }
        }
        if !rest.is_zero() {
            return Err(format!("remainder {} survives every cut", self.pres.render(&rest)));
        }
        memo.insert(e, out.clone());
        Ok(out)
    }

    /// Component of `Δ(x)` in `A_k ⊗ A`, grouped by the right factor.
    fn cut(&self, x: &LinComb<Elem>, k: usize) -> BTreeMap<Elem, LinComb<Elem>> {
        let mut out: BTreeMap<Elem, LinComb<Elem>> = BTreeMap::new();
        for (t, c) in self.pres.coproduct(x).iter() {
            if t.left != UNIT && self.pres.weight(t.left) == k {
                out.entry(t.right).or_default().add_term(t.left, c.clone());
            }
        }
        out.retain(|_, v| !v.is_zero());
        out
    }

    /// Number of primitive basis elements per weight `0..=N`.
    pub fn primitive_dimensions(&self) -> Vec<usize> {
        self.primitives.iter().map(|r| r.len()).collect()
    }

    /// All nested words of weight `n` over the primitive basis.
    pub fn nested_words(&self, n: usize) -> Vec<NestedWord> {
        if n == 0 {
            return vec![NestedWord(Vec::new())];
        }
        let mut out = Vec::new();
        for k in 1..=n.min(self.pres.max_weight()) {
            for index in 0..self.primitives[k].len() {
                for tail in self.nested_words(n - k) {
                    let mut word = vec![PrimId { weight: k, index }];
                    word.extend(tail.0);
                    out.push(NestedWord(word));
                }
            }
        }
        out.sort();
        out
    }

    /// Per weight `1..=N`: nested-word count, ambient dimension, and the rank
    /// of the evaluated nested words.
    pub fn rigidity_counts(&self) -> Vec<(usize, usize, usize, usize)> {
        (1..=self.pres.max_weight())
            .map(|n| {
                let words = self.nested_words(n);
                let mut ech = Echelon::new();
                for w in &words {
                    ech.insert(&self.evaluate_nested(w));
                }
                (n, words.len(), self.pres.dimension(n), ech.rank())
            })
            .collect()
    }

    /// The action of a biword, transported from `Sh(Prim(A))` through the
    /// nested-word isomorphism.
    pub fn act(&self, a: &Biword, x: &LinComb<Elem>) -> Result<LinComb<Elem>> {
        let d = self.decompose(x)?;
        let mut out = LinComb::zero();
        for (w, c) in d.iter() {
            let word = Word(
                w.0.iter()
                    .map(|p| Letter::new(p.weight as u32, p.index as u32))
                    .collect(),
            );
            for (image, c2) in phi_apply(a, &word).iter() {
                let nested = NestedWord(
                    image
                        .letters()
                        .iter()
                        .map(|l| PrimId {
                            weight: l.weight as usize,
                            index: l.symbol as usize,
                        })
                        .collect(),
                );
                out.add_scaled(&self.evaluate_nested(&nested), &(c * c2));
            }
        }
        Ok(out)
    }
}
