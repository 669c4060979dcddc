//! The shuffle bialgebra over a graded alphabet.
//!
//! Words are built from graded letters; the half-shuffles follow the unit
//! conventions `w ≺ 1 = w`, `1 ≺ w = 0` and `1 ≺ 1 = 0`, with `≻` mirrored,
//! while `1` stays a two-sided unit for the full shuffle.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::algebra::{bilinear, LinComb, Rational, Tensor};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Letter {
    pub weight: u32,
    pub symbol: u32,
}

impl Letter {
    pub fn new(weight: u32, symbol: u32) -> Self {
        assert!(weight >= 1, "letters have positive weight");
        Self { weight, symbol }
    }

    fn write_symbol(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.symbol < 26 {
            write!(f, "{}", (b'a' + self.symbol as u8) as char)
        } else {
            write!(f, "#{}w", self.symbol)
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_symbol(f)?;
        write!(f, "{}", self.weight)
    }
}

/// A word; the empty word is the unit `1`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn from_letters(letters: &[Letter]) -> Self {
        Self(letters.to_vec())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn weight(&self) -> usize {
        self.0.iter().map(|l| l.weight as usize).sum()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    /// Dotless form with weight suffixes omitted for weight-1 letters, e.g. `ab2c`.
    pub fn compact(&self) -> String {
        if self.is_empty() {
            return "1".into();
        }
        let mut s = String::new();
        for l in &self.0 {
            if l.symbol < 26 {
                s.push((b'a' + l.symbol as u8) as char);
            } else {
                s.push_str(&format!("#{}w", l.symbol));
            }
            if l.weight != 1 {
                s.push_str(&l.weight.to_string());
            }
        }
        s
    }
}

/// Ordered by weight, then length, then lexicographically.
impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.weight()
            .cmp(&other.weight())
            .then(self.len().cmp(&other.len()))
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "1");
        }
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ".")?;
            }
            write!(f, "{}", l)?;
        }
        Ok(())
    }
}

/// Accepts `a1.b2.a1`, the compact `ab2a`, and `1` or the empty string for the unit.
/// A letter without a weight suffix has weight 1.
impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.is_empty() || t == "1" {
            return Ok(Word::empty());
        }
        let bytes = t.as_bytes();
        let mut letters = Vec::new();
        let mut i = 0;
        let err = |position: usize, message: &str| Error::Parse {
            position,
            message: message.into(),
        };
        while i < bytes.len() {
            let c = bytes[i];
            let symbol = if c.is_ascii_lowercase() {
                i += 1;
                (c - b'a') as u32
            } else if c == b'#' {
                let start = i + 1;
                let mut j = start;
                while j < bytes.len() && bytes[j].is_ascii_digit() {
                    j += 1;
                }
                if j == start || j >= bytes.len() || bytes[j] != b'w' {
                    return Err(err(i, "expected `#<symbol>w`"));
                }
                i = j + 1;
                t[start..j].parse().map_err(|_| err(start, "symbol out of range"))?
            } else {
                return Err(err(i, "expected a letter"));
            };
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let weight: u32 = if start == i {
                1
            } else {
                t[start..i].parse().map_err(|_| err(start, "weight out of range"))?
            };
            if weight == 0 {
                return Err(err(start, "letter weight must be positive"));
            }
            letters.push(Letter { weight, symbol });
            if i < bytes.len() && bytes[i] == b'.' {
                i += 1;
                if i == bytes.len() {
                    return Err(err(i, "trailing `.`"));
                }
            }
        }
        Ok(Word(letters))
    }
}

fn shuffle_slices(a: &[Letter], b: &[Letter]) -> LinComb<Word> {
    if a.is_empty() {
        return LinComb::basis(Word::from_letters(b));
    }
    if b.is_empty() {
        return LinComb::basis(Word::from_letters(a));
    }
    let mut out = prec_slices(a, b);
    out += prec_slices(b, a);
    out
}

/// `a ≺ b` for nonempty `a`: the first letter of `a` stays first.
fn prec_slices(a: &[Letter], b: &[Letter]) -> LinComb<Word> {
    let head = a[0];
    shuffle_slices(&a[1..], b).map_keys(|w| {
        let mut v = Vec::with_capacity(w.len() + 1);
        v.push(head);
        v.extend_from_slice(&w.0);
        Word(v)
    })
}

/// Left half-shuffle `w ≺ z`.
pub fn word_prec(w: &Word, z: &Word) -> LinComb<Word> {
    if w.is_empty() {
        return LinComb::zero();
    }
    if z.is_empty() {
        return LinComb::basis(w.clone());
    }
    prec_slices(&w.0, &z.0)
}

/// Right half-shuffle `w ≻ z = z ≺ w`.
pub fn word_succ(w: &Word, z: &Word) -> LinComb<Word> {
    word_prec(z, w)
}

/// Full shuffle product; `1` is a two-sided unit.
pub fn word_shuffle(w: &Word, z: &Word) -> LinComb<Word> {
    shuffle_slices(&w.0, &z.0)
}

pub fn prec(x: &LinComb<Word>, y: &LinComb<Word>) -> LinComb<Word> {
    bilinear(x, y, word_prec)
}

pub fn succ(x: &LinComb<Word>, y: &LinComb<Word>) -> LinComb<Word> {
    bilinear(x, y, word_succ)
}

pub fn shuffle(x: &LinComb<Word>, y: &LinComb<Word>) -> LinComb<Word> {
    bilinear(x, y, word_shuffle)
}

/// Deconcatenation coproduct, including the two unit cuts.
pub fn deconcat(w: &Word) -> LinComb<Tensor<Word>> {
    (0..=w.len())
        .map(|k| {
            let t = Tensor::new(Word::from_letters(&w.0[..k]), Word::from_letters(&w.0[k..]));
            (t, Rational::one())
        })
        .collect()
}

pub fn coproduct(x: &LinComb<Word>) -> LinComb<Tensor<Word>> {
    x.map_linear(deconcat)
}

pub fn counit(x: &LinComb<Word>) -> Rational {
    x.coeff(&Word::empty())
}

/// Antipode from the recursion `S(w) = -w - Σ S(w') ⧢ w''` over the proper cuts.
pub fn word_antipode(w: &Word) -> LinComb<Word> {
    let mut memo = HashMap::new();
    antipode_memo(w, &mut memo)
}

fn antipode_memo(w: &Word, memo: &mut HashMap<Word, LinComb<Word>>) -> LinComb<Word> {
    if let Some(s) = memo.get(w) {
        return s.clone();
    }
    let out = if w.is_empty() {
        LinComb::basis(Word::empty())
    } else {
        let mut acc = -LinComb::basis(w.clone());
        for k in 1..w.len() {
            let prefix = Word::from_letters(&w.0[..k]);
            let suffix = LinComb::basis(Word::from_letters(&w.0[k..]));
            let s = antipode_memo(&prefix, memo);
            acc -= &shuffle(&s, &suffix);
        }
        acc
    };
    memo.insert(w.clone(), out.clone());
    out
}

pub fn antipode(x: &LinComb<Word>) -> LinComb<Word> {
    let mut memo = HashMap::new();
    x.map_linear(|w| antipode_memo(w, &mut memo))
}

/// A right-nested or general binary `≺` expression over leaves.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PrecTree<T> {
    Leaf(T),
    Prec(Box<PrecTree<T>>, Box<PrecTree<T>>),
}

impl<T> PrecTree<T> {
    /// `t1 ≺ (t2 ≺ (... ≺ tn))`; `None` for an empty input.
    pub fn right_nested<I: IntoIterator<Item = T>>(leaves: I) -> Option<Self>
    where
        I::IntoIter: DoubleEndedIterator,
    {
        let mut it = leaves.into_iter().rev();
        let mut acc = PrecTree::Leaf(it.next()?);
        for leaf in it {
            acc = PrecTree::Prec(Box::new(PrecTree::Leaf(leaf)), Box::new(acc));
        }
        Some(acc)
    }

    pub fn leaves(&self) -> Vec<&T> {
        match self {
            PrecTree::Leaf(t) => vec![t],
            PrecTree::Prec(a, b) => {
                let mut v = a.leaves();
                v.extend(b.leaves());
                v
            }
        }
    }

    /// Evaluates with a leaf valuation and a bilinear `≺`.
    pub fn evaluate<K, L, P>(&self, leaf: &L, prec: &P) -> LinComb<K>
    where
        K: Ord,
        L: Fn(&T) -> LinComb<K>,
        P: Fn(&LinComb<K>, &LinComb<K>) -> LinComb<K>,
    {
        match self {
            PrecTree::Leaf(t) => leaf(t),
            PrecTree::Prec(a, b) => prec(&a.evaluate(leaf, prec), &b.evaluate(leaf, prec)),
        }
    }
}

impl<T: fmt::Display> fmt::Display for PrecTree<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PrecTree::Leaf(t) => write!(f, "{}", t),
            PrecTree::Prec(a, b) => {
                let wrap = |t: &PrecTree<T>| matches!(t, PrecTree::Prec(..));
                if wrap(a) {
                    write!(f, "({})", a)?;
                } else {
                    write!(f, "{}", a)?;
                }
                write!(f, "<")?;
                if wrap(b) {
                    write!(f, "({})", b)
                } else {
                    write!(f, "{}", b)
                }
            }
        }
    }
}

/// Rewrites a nonempty word as `y1 ≺ (y2 ≺ (... ≺ yn))`.
pub fn nested_prec_form(w: &Word) -> Result<PrecTree<Letter>> {
    PrecTree::right_nested(w.0.iter().copied())
        .ok_or_else(|| Error::InvalidArgument("the empty word has no nested form".into()))
}

pub fn evaluate_letter_tree(t: &PrecTree<Letter>) -> LinComb<Word> {
    t.evaluate(&|l: &Letter| LinComb::basis(Word(vec![*l])), &prec)
}

/// Finitely many symbols per weight: `sizes[i]` letters of weight `i + 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alphabet {
    sizes: Vec<usize>,
}

impl Alphabet {
    pub fn new(sizes: Vec<usize>) -> Self {
        Self { sizes }
    }

    /// `per_weight` letters in every weight `1..=max_weight`.
    pub fn uniform(per_weight: usize, max_weight: usize) -> Self {
        Self::new(vec![per_weight; max_weight])
    }

    pub fn letters_of_weight(&self, weight: usize) -> Vec<Letter> {
        let n = if weight == 0 {
            0
        } else {
            self.sizes.get(weight - 1).copied().unwrap_or(0)
        };
        (0..n as u32).map(|s| Letter::new(weight as u32, s)).collect()
    }

    /// All words of the given weight, in canonical order.
    pub fn words_of_weight(&self, weight: usize) -> Vec<Word> {
        let mut out = Vec::new();
        let mut prefix = Vec::new();
        self.extend_words(weight, &mut prefix, &mut out);
        out.sort();
        out
    }

    /// All words of weight `0..=max_weight`, starting with the unit.
    pub fn words_up_to(&self, max_weight: usize) -> Vec<Word> {
        (0..=max_weight).flat_map(|n| self.words_of_weight(n)).collect()
    }

    fn extend_words(&self, rest: usize, prefix: &mut Vec<Letter>, out: &mut Vec<Word>) {
        if rest == 0 {
            out.push(Word(prefix.clone()));
            return;
        }
        for w in 1..=rest {
            for l in self.letters_of_weight(w) {
                prefix.push(l);
                self.extend_words(rest - w, prefix, out);
                prefix.pop();
            }
        }
    }
}

pub fn enumerate_words(weight: usize, alphabet: &Alphabet) -> Vec<Word> {
    alphabet.words_of_weight(weight)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::int;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn lc(terms: &[&str]) -> LinComb<Word> {
        terms.iter().map(|t| (w(t), int(1))).collect()
    }

    #[test]
    fn prec_examples() {
        assert_eq!(word_prec(&w("ab"), &w("c")), lc(&["abc", "acb"]));
        assert_eq!(word_prec(&w("ab"), &Word::empty()), lc(&["ab"]));
        assert!(word_prec(&Word::empty(), &w("ab")).is_zero());
        assert!(word_prec(&Word::empty(), &Word::empty()).is_zero());
    }

    #[test]
    fn succ_examples() {
        assert_eq!(word_succ(&w("a"), &w("b")), lc(&["ba"]));
        assert_eq!(word_succ(&Word::empty(), &w("ab")), lc(&["ab"]));
        assert!(word_succ(&w("ab"), &Word::empty()).is_zero());
        assert_eq!(word_succ(&w("ab"), &w("c")), lc(&["cab"]));
    }

    #[test]
    fn shuffle_examples() {
        assert_eq!(word_shuffle(&w("a"), &w("b")), lc(&["ab", "ba"]));
        assert_eq!(word_shuffle(&w("ab2"), &Word::empty()), lc(&["ab2"]));
        assert_eq!(word_shuffle(&Word::empty(), &Word::empty()), lc(&["1"]));
        let s = word_shuffle(&w("ab"), &w("cd"));
        assert_eq!(s, lc(&["abcd", "acbd", "acdb", "cabd", "cadb", "cdab"]));
    }

    #[test]
    fn deconcat_examples() {
        let d = deconcat(&w("a"));
        assert_eq!(d.len(), 2);
        assert!(d.contains(&Tensor::new(Word::empty(), w("a"))));
        assert!(d.contains(&Tensor::new(w("a"), Word::empty())));
        let d = deconcat(&w("ab"));
        assert_eq!(d.len(), 3);
        assert!(d.contains(&Tensor::new(w("a"), w("b"))));
        let d = deconcat(&Word::empty());
        assert_eq!(d, LinComb::basis(Tensor::new(Word::empty(), Word::empty())));
    }

    #[test]
    fn antipode_examples() {
        assert_eq!(word_antipode(&w("a")), -lc(&["a"]));
        assert_eq!(word_antipode(&w("ab")), lc(&["ba"]));
        assert_eq!(word_antipode(&Word::empty()), lc(&["1"]));
        assert_eq!(word_antipode(&w("ab2c")), -lc(&["cb2a"]));
    }

    #[test]
    fn nested_form_examples() {
        let t = nested_prec_form(&w("a")).unwrap();
        assert_eq!(t, PrecTree::Leaf(Letter::new(1, 0)));
        for s in ["ab", "abc", "ab2ca3"] {
            let t = nested_prec_form(&w(s)).unwrap();
            assert_eq!(evaluate_letter_tree(&t), lc(&[s]));
        }
        assert_eq!(nested_prec_form(&w("abc")).unwrap().to_string(), "a1<(b1<c1)");
        assert!(nested_prec_form(&Word::empty()).is_err());
    }

    #[test]
    fn enumeration() {
        let alpha = Alphabet::new(vec![1, 1]);
        assert_eq!(enumerate_words(2, &alpha), vec![w("a2"), w("aa")]);
        let single = Alphabet::uniform(1, 3);
        assert_eq!(enumerate_words(3, &single).len(), 4);
        assert_eq!(
            enumerate_words(1, &Alphabet::uniform(3, 2)),
            vec![w("a"), w("b"), w("c")]
        );
    }

    #[test]
    fn parse_and_render() {
        let x = w("a1.b2.a1");
        assert_eq!(x.to_string(), "a1.b2.a1");
        assert_eq!(x.compact(), "ab2a");
        assert_eq!(w("ab2a"), x);
        assert_eq!(w("#30w2").letters()[0], Letter::new(2, 30));
        assert!(matches!("a.".parse::<Word>(), Err(Error::Parse { position: 2, .. })));
        assert!(matches!("aZ".parse::<Word>(), Err(Error::Parse { position: 1, .. })));
        assert!("a0".parse::<Word>().is_err());
        let json = serde_json::to_string(&w("ab2")).unwrap();
        assert_eq!(json, r#"[{"weight":1,"symbol":0},{"weight":2,"symbol":1}]"#);
    }
}
