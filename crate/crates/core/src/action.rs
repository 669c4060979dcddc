//! Biwords acting on the shuffle algebra as natural endomorphisms.
//!
//! `Φ_(σ,d)` sends `x_1 … x_k` to `x_σ(1) … x_σ(k)` when every permuted
//! letter has the prescribed degree `|x_σ(i)| = d(i)`, and annihilates every
//! other word. These functions are the ground truth for the combinatorial
//! products in [`crate::biword`].

use num_traits::One;

use crate::algebra::{LinComb, Rational};
use crate::biword::Biword;
use crate::combinatorics::compositions;
use crate::words::{self, Letter, Word};

/// `Φ_a(w)`: zero or a single word.
pub fn phi_apply(a: &Biword, w: &Word) -> LinComb<Word> {
    if a.size() != w.len() {
        return LinComb::zero();
    }
    let letters = w.letters();
    let mut out = Vec::with_capacity(letters.len());
    for (&s, &d) in a.perm().iter().zip(a.deg()) {
        let x = letters[s as usize - 1];
        if x.weight != d {
            return LinComb::zero();
        }
        out.push(x);
    }
    LinComb::basis(Word(out))
}

/// A linear endomorphism of the shuffle algebra given as a biword combination.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Endomorphism(pub LinComb<Biword>);

impl Endomorphism {
    pub fn zero() -> Self {
        Self(LinComb::zero())
    }

    pub fn from_biword(a: Biword) -> Self {
        Self(LinComb::basis(a))
    }

    /// Projection onto the scalars, the unit of the convolution product.
    pub fn unit_counit() -> Self {
        Self::from_biword(Biword::unit())
    }

    /// The identity restricted to weights `0..=max_weight`.
    pub fn identity(max_weight: usize) -> Self {
        let mut out = LinComb::basis(Biword::unit());
        for n in 1..=max_weight {
            for c in compositions(n) {
                out.add_term(Biword::identity(c.iter().map(|&d| d as u32).collect()), Rational::one());
            }
        }
        Self(out)
    }

    /// The antipode restricted to weights `0..=max_weight`: signed reversal.
    pub fn antipode(max_weight: usize) -> Self {
        let mut out = LinComb::basis(Biword::unit());
        for n in 1..=max_weight {
            for c in compositions(n) {
                let k = c.len();
                let perm: Vec<u32> = (1..=k as u32).rev().collect();
                // Φ reads letter σ(i) into slot i, so slot i must carry the
                // degree of the letter at position k + 1 - i.
                let deg: Vec<u32> = c.iter().rev().map(|&d| d as u32).collect();
                let sign = if k % 2 == 0 { Rational::one() } else { -Rational::one() };
                out.add_term(Biword::new_unchecked(perm, deg), sign);
            }
        }
        Self(out)
    }

    pub fn apply(&self, x: &LinComb<Word>) -> LinComb<Word> {
        endo_apply(self, x)
    }
}

/// Bilinear extension of [`phi_apply`].
pub fn endo_apply(f: &Endomorphism, x: &LinComb<Word>) -> LinComb<Word> {
    let mut out = LinComb::zero();
    for (a, ca) in f.0.iter() {
        for (w, cw) in x.iter() {
            out.add_scaled(&phi_apply(a, w), &(ca * cw));
        }
    }
    out
}

/// A word on fresh distinct letters carrying `b`'s degree profile, so that
/// `Φ_b` does not annihilate it. Letter `j` sits at position `j`.
fn generic_probe(b: &Biword) -> Word {
    let mut letters = vec![Letter::new(1, 0); b.size()];
    for (&t, &e) in b.perm().iter().zip(b.deg()) {
        letters[t as usize - 1] = Letter::new(e, t - 1);
    }
    Word(letters)
}

/// `Φ_a ∘ Φ_b` read off the action on a generic probe word.
pub fn compose_via_action(a: &Biword, b: &Biword) -> LinComb<Biword> {
    if a.size() != b.size() {
        return LinComb::zero();
    }
    let probe = generic_probe(b);
    let once = phi_apply(b, &probe);
    let mut out = LinComb::zero();
    for (w, c) in once.iter() {
        for (z, c2) in phi_apply(a, w).iter() {
            let perm = z.letters().iter().map(|l| l.symbol + 1).collect();
            let deg = z.letters().iter().map(|l| l.weight).collect();
            out.add_term(Biword::new_unchecked(perm, deg), c * c2);
        }
    }
    out
}

/// Which word-level product combines the two halves of a cut.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HalfProduct {
    Prec,
    Succ,
    Star,
}

impl HalfProduct {
    fn words(self, x: &LinComb<Word>, y: &LinComb<Word>) -> LinComb<Word> {
        match self {
            HalfProduct::Prec => words::prec(x, y),
            HalfProduct::Succ => words::succ(x, y),
            HalfProduct::Star => words::shuffle(x, y),
        }
    }
}

/// Evaluates `m ∘ (f ⊗ g) ∘ Δ` on a probe word, where `m` is `≺`, `≻` or `⧢`.
pub fn convolution_via_action(f: &Endomorphism, g: &Endomorphism, probe: &Word, kind: HalfProduct) -> LinComb<Word> {
    let mut out = LinComb::zero();
    for (cut, c) in words::deconcat(probe).iter() {
        let left = f.apply(&LinComb::basis(cut.left.clone()));
        let right = g.apply(&LinComb::basis(cut.right.clone()));
        out.add_scaled(&kind.words(&left, &right), c);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::descent::p_n;

    fn bw(s: &str) -> Biword {
        s.parse().unwrap()
    }

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn phi_examples() {
        assert_eq!(phi_apply(&bw("21|21"), &w("ab2")), LinComb::basis(w("b2a")));
        assert!(phi_apply(&bw("21|11"), &w("ab2")).is_zero());
        assert_eq!(phi_apply(&bw("12|12"), &w("ab2")), LinComb::basis(w("ab2")));
        assert!(phi_apply(&bw("1|1"), &w("ab")).is_zero());
    }

    #[test]
    fn endo_apply_linear() {
        assert!(endo_apply(&Endomorphism::zero(), &LinComb::basis(w("ab"))).is_zero());
        let f = Endomorphism(LinComb::basis(bw("12|11")) + LinComb::basis(bw("21|11")));
        let x = LinComb::basis(w("ab"));
        let expect = LinComb::basis(w("ab")) + LinComb::basis(w("ba"));
        assert_eq!(endo_apply(&f, &x), expect);
        let p2 = Endomorphism(p_n(2));
        for s in ["a2", "b2", "ab", "ba", "aa"] {
            assert_eq!(p2.apply(&LinComb::basis(w(s))), LinComb::basis(w(s)));
        }
        assert!(p2.apply(&LinComb::basis(w("a"))).is_zero());
    }

    #[test]
    fn compose_via_action_examples() {
        assert_eq!(
            compose_via_action(&bw("312|111"), &bw("132|111")),
            LinComb::basis(bw("213|111"))
        );
        let a = bw("21|12");
        assert_eq!(compose_via_action(&Biword::identity(vec![1, 2]), &a), LinComb::basis(a));
        assert!(compose_via_action(&bw("12|12"), &bw("12|11")).is_zero());
        assert!(compose_via_action(&bw("1|1"), &bw("12|11")).is_zero());
    }

    #[test]
    fn convolution_examples() {
        let pi1 = Endomorphism::from_biword(bw("1|1"));
        assert_eq!(
            convolution_via_action(&pi1, &pi1, &w("ab"), HalfProduct::Prec),
            LinComb::basis(w("ab"))
        );
        let g = Endomorphism(p_n(2));
        let unit = Endomorphism::unit_counit();
        for s in ["ab", "a2", "abc"] {
            let probe = w(s);
            assert_eq!(
                convolution_via_action(&unit, &g, &probe, HalfProduct::Star),
                g.apply(&LinComb::basis(probe.clone()))
            );
        }
        let id = Endomorphism::identity(4);
        let s = Endomorphism::antipode(4);
        for s_ in ["a", "ab", "ab2", "a2bc"] {
            assert!(convolution_via_action(&id, &s, &w(s_), HalfProduct::Star).is_zero());
        }
        assert_eq!(
            convolution_via_action(&id, &s, &Word::empty(), HalfProduct::Star),
            LinComb::basis(Word::empty())
        );
    }

    #[test]
    fn antipode_endomorphism_matches_words() {
        let s = Endomorphism::antipode(5);
        for word in crate::words::Alphabet::uniform(2, 5).words_up_to(4) {
            let x = LinComb::basis(word.clone());
            assert_eq!(s.apply(&x), crate::words::word_antipode(&word), "{}", word);
        }
    }
}
