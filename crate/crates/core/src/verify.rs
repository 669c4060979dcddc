//! Named invariant suites, each exhaustive up to a weight bound.

use std::fmt::Display;

use num_traits::One;
use serde_json::{json, Value};

use crate::action::{compose_via_action, convolution_via_action, endo_apply, phi_apply, Endomorphism, HalfProduct};
use crate::algebra::{tensor, LinComb, Rational, Tensor};
use crate::biword::{
    self, biword_convolution, biword_prec, biword_succ, coproduct_prec, coproduct_succ, enumerate_biwords_with_degrees,
    hopf_coproduct, internal_compose, reduced_coproduct, Biword, BiwordTensor,
};
use crate::combinatorics::compositions;
use crate::descent::{p_n, pi_composite, pi_n, PiRoute};
use crate::error::{Error, Result};
use crate::rigidity::{sh_presentation, ShuffleBialgebra, UNIT};
use crate::words::{self, Alphabet, Word};

pub const SUITES: [&str; 9] = [
    "shuffle-axioms",
    "dendriform",
    "bidendriform",
    "pn-coproduct",
    "pi-primitive",
    "idempotents",
    "action-compat",
    "tau",
    "rigidity",
];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteReport {
    pub name: String,
    pub max_weight: usize,
    pub checks: usize,
    /// Failures ordered by the weight of the inputs, smallest first.
    pub failures: Vec<String>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "suite": self.name,
            "max_weight": self.max_weight,
            "checks": self.checks,
            "passed": self.passed(),
            "failures": self.failures,
        })
    }
}

#[derive(Default)]
struct Checker {
    checks: usize,
    failures: Vec<(usize, String)>,
}

impl Checker {
    fn eq<T: PartialEq + Display>(&mut self, weight: usize, what: impl FnOnce() -> String, lhs: &T, rhs: &T) {
        self.checks += 1;
        if lhs != rhs {
            self.failures.push((weight, format!("{}: {} != {}", what(), lhs, rhs)));
        }
    }

    fn holds(&mut self, weight: usize, what: impl FnOnce() -> String, ok: bool) {
        self.checks += 1;
        if !ok {
            self.failures.push((weight, what()));
        }
    }

    fn report(mut self, name: &str, max_weight: usize) -> SuiteReport {
        self.failures.sort_by_key(|(w, _)| *w);
        SuiteReport {
            name: name.into(),
            max_weight,
            checks: self.checks,
            failures: self.failures.into_iter().map(|(_, s)| s).collect(),
        }
    }
}

/// Runs the named suite up to `max_weight`.
pub fn run_suite(name: &str, max_weight: usize) -> Result<SuiteReport> {
    let mut c = Checker::default();
    let n = max_weight;
    match name {
        "shuffle-axioms" => shuffle_axioms(&mut c, n),
        "dendriform" => dendriform(&mut c, n),
        "bidendriform" => bidendriform(&mut c, n),
        "pn-coproduct" => pn_coproduct(&mut c, n),
        "pi-primitive" => pi_primitive(&mut c, n),
        "idempotents" => idempotents(&mut c, n),
        "action-compat" => action_compat(&mut c, n),
        "tau" => tau(&mut c, n)?,
        "rigidity" => rigidity(&mut c, n)?,
        _ => {
            return Err(Error::InvalidArgument(format!(
                "unknown suite `{}` (expected one of {})",
                name,
                SUITES.join(", ")
            )))
        }
    }
    Ok(c.report(name, max_weight))
}

fn nonempty_words(alphabet: &Alphabet, max_weight: usize) -> Vec<Word> {
    (1..=max_weight).flat_map(|n| alphabet.words_of_weight(n)).collect()
}

fn wb(w: &Word) -> LinComb<Word> {
    LinComb::basis(w.clone())
}

fn sign(k: usize) -> Rational {
    if k.is_multiple_of(2) {
        Rational::one()
    } else {
        -Rational::one()
    }
}

fn word_tensor_product(
    s: &LinComb<Tensor<Word>>,
    t: &LinComb<Tensor<Word>>,
    f: impl Fn(&Word, &Word) -> LinComb<Word>,
    g: impl Fn(&Word, &Word) -> LinComb<Word>,
) -> LinComb<Tensor<Word>> {
    let mut out = LinComb::zero();
    for (a, ca) in s.iter() {
        for (b, cb) in t.iter() {
            out.add_scaled(&tensor(&f(&a.left, &b.left), &g(&a.right, &b.right)), &(ca * cb));
        }
    }
    out
}

fn shuffle_axioms(c: &mut Checker, n: usize) {
    let alphabet = Alphabet::uniform(2, n);
    let all = nonempty_words(&alphabet, n);
    for x in &all {
        let w = x.weight();
        let coass_l: LinComb<(Word, Word, Word)> = {
            let mut out = LinComb::zero();
            for (t, _) in words::deconcat(x).iter() {
                for (u, _) in words::deconcat(&t.left).iter() {
                    out.add_term((u.left.clone(), u.right.clone(), t.right.clone()), Rational::one());
                }
            }
            out
        };
        let coass_r: LinComb<(Word, Word, Word)> = {
            let mut out = LinComb::zero();
            for (t, _) in words::deconcat(x).iter() {
                for (u, _) in words::deconcat(&t.right).iter() {
                    out.add_term((t.left.clone(), u.left.clone(), u.right.clone()), Rational::one());
                }
            }
            out
        };
        c.holds(
            w,
            || format!("coassociativity of deconcatenation on {}", x),
            coass_l == coass_r,
        );

        let mut conv = LinComb::zero();
        for (t, ct) in words::deconcat(x).iter() {
            conv.add_scaled(&words::shuffle(&words::word_antipode(&t.left), &wb(&t.right)), ct);
        }
        c.eq(w, || format!("S ⋆ Id on {}", x), &conv, &LinComb::zero());
        c.eq(
            w,
            || format!("antipode of {} is signed reversal", x),
            &words::word_antipode(x),
            &LinComb::term(x.reversed(), sign(x.len())),
        );
    }
    for x in &all {
        for y in &all {
            let wxy = x.weight() + y.weight();
            if wxy > n {
                continue;
            }
            let (xb, yb) = (wb(x), wb(y));
            c.eq(
                wxy,
                || format!("{} ⧢ {} commutes", x, y),
                &words::shuffle(&xb, &yb),
                &words::shuffle(&yb, &xb),
            );
            c.eq(
                wxy,
                || format!("{} ≻ {} = {} ≺ {}", x, y, y, x),
                &words::succ(&xb, &yb),
                &words::prec(&yb, &xb),
            );

            let xy = words::prec(&xb, &yb);
            let lhs = words::coproduct(&xy);
            let mut rhs = word_tensor_product(
                &words::deconcat(x),
                &words::deconcat(y),
                words::word_prec,
                words::word_shuffle,
            );
            rhs += xy.map_keys(|w| Tensor::new(Word::empty(), w.clone()));
            c.eq(wxy, || format!("Δ({} ≺ {})", x, y), &lhs, &rhs);

            let lhs = words::coproduct(&words::shuffle(&xb, &yb));
            let rhs = word_tensor_product(
                &words::deconcat(x),
                &words::deconcat(y),
                words::word_shuffle,
                words::word_shuffle,
            );
            c.eq(wxy, || format!("Δ({} ⧢ {})", x, y), &lhs, &rhs);

            for z in &all {
                let w = wxy + z.weight();
                if w > n {
                    continue;
                }
                let zb = wb(z);
                let lhs = words::prec(&xy, &zb);
                let rhs = words::prec(&xb, &words::shuffle(&yb, &zb));
                c.eq(w, || format!("({} ≺ {}) ≺ {}", x, y, z), &lhs, &rhs);
                let lhs = words::shuffle(&words::shuffle(&xb, &yb), &zb);
                let rhs = words::shuffle(&xb, &words::shuffle(&yb, &zb));
                c.eq(w, || format!("⧢ associativity on {}, {}, {}", x, y, z), &lhs, &rhs);
            }
        }
    }
}

fn small_biwords(max_weight: usize) -> Vec<Biword> {
    (1..=max_weight)
        .flat_map(|w| enumerate_biwords_with_degrees(w, &[1, 2]))
        .collect()
}

fn bb(a: &Biword) -> LinComb<Biword> {
    LinComb::basis(a.clone())
}

fn dendriform(c: &mut Checker, n: usize) {
    let all = small_biwords(n);
    for x in &all {
        for y in &all {
            let wxy = x.weight() + y.weight();
            if wxy > n {
                continue;
            }
            for z in &all {
                let w = wxy + z.weight();
                if w > n {
                    continue;
                }
                let (xb, zb) = (bb(x), bb(z));
                let lhs = biword::prec(&biword_prec(x, y), &zb);
                let rhs = biword::prec(&xb, &biword_convolution(y, z));
                c.eq(w, || format!("({} ≺ {}) ≺ {}", x, y, z), &lhs, &rhs);
                let lhs = biword::prec(&biword_succ(x, y), &zb);
                let rhs = biword::succ(&xb, &biword_prec(y, z));
                c.eq(w, || format!("({} ≻ {}) ≺ {}", x, y, z), &lhs, &rhs);
                let lhs = biword::succ(&biword_convolution(x, y), &zb);
                let rhs = biword::succ(&xb, &biword_succ(y, z));
                c.eq(w, || format!("({} ⋆ {}) ≻ {}", x, y, z), &lhs, &rhs);
            }
        }
    }
}

type BT = LinComb<BiwordTensor>;
type BiProduct = fn(&Biword, &Biword) -> LinComb<Biword>;

fn tprod(s: &BT, t: &BT, f: BiProduct, g: BiProduct) -> BT {
    let mut out = LinComb::zero();
    for (a, ca) in s.iter() {
        for (b, cb) in t.iter() {
            out.add_scaled(&tensor(&f(&a.left, &b.left), &g(&a.right, &b.right)), &(ca * cb));
        }
    }
    out
}

fn pure(a: &Biword, b: &Biword) -> BT {
    LinComb::basis(Tensor::new(a.clone(), b.clone()))
}

/// The four bidendriform compatibilities for nonunit `x`, `y`, as `(name, lhs, rhs)`.
pub fn bidendriform_sides(x: &Biword, y: &Biword) -> Vec<(&'static str, BT, BT)> {
    let one = Biword::unit();
    let (dpx, dsx, dy) = (coproduct_prec(x), coproduct_succ(x), reduced_coproduct(y));
    let (prec, succ, star): (BiProduct, BiProduct, BiProduct) = (biword_prec, biword_succ, biword_convolution);

    let mut pp = tprod(&dpx, &dy, prec, star);
    pp += pure(x, y);
    pp += tprod(&pure(x, &one), &dy, prec, star);
    pp += tprod(&dpx, &pure(&one, y), prec, star);
    pp += tprod(&dpx, &pure(y, &one), prec, star);

    let mut sp = tprod(&dsx, &dy, prec, star);
    sp += tprod(&dsx, &pure(y, &one), prec, star);
    sp += tprod(&dsx, &pure(&one, y), prec, star);

    let mut ps = tprod(&dpx, &dy, succ, star);
    ps += tprod(&dpx, &pure(y, &one), succ, star);
    ps += tprod(&pure(x, &one), &dy, succ, star);

    let mut ss = tprod(&dsx, &dy, succ, star);
    ss += pure(y, x);
    ss += tprod(&pure(&one, x), &dy, succ, star);
    ss += tprod(&dsx, &pure(y, &one), succ, star);

    let xy_prec = biword_prec(x, y);
    let xy_succ = biword_succ(x, y);
    vec![
        ("Δ≺(x≺y)", biword::delta_prec(&xy_prec), pp),
        ("Δ≻(x≺y)", biword::delta_succ(&xy_prec), sp),
        ("Δ≺(x≻y)", biword::delta_prec(&xy_succ), ps),
        ("Δ≻(x≻y)", biword::delta_succ(&xy_succ), ss),
    ]
}

fn bidendriform(c: &mut Checker, n: usize) {
    let all = small_biwords(n);
    for x in &all {
        let d = hopf_coproduct(&bb(x));
        let mut left: LinComb<(Biword, Biword, Biword)> = LinComb::zero();
        let mut right: LinComb<(Biword, Biword, Biword)> = LinComb::zero();
        for (t, ct) in d.iter() {
            for (u, cu) in hopf_coproduct(&bb(&t.left)).iter() {
                left.add_term((u.left.clone(), u.right.clone(), t.right.clone()), ct * cu);
            }
            for (u, cu) in hopf_coproduct(&bb(&t.right)).iter() {
                right.add_term((t.left.clone(), u.left.clone(), u.right.clone()), ct * cu);
            }
        }
        c.holds(x.weight(), || format!("coassociativity of Δ on {}", x), left == right);
    }
    for x in &all {
        for y in &all {
            let w = x.weight() + y.weight();
            if w > n {
                continue;
            }
            for (name, lhs, rhs) in bidendriform_sides(x, y) {
                c.eq(w, || format!("{} on ({}, {})", name, x, y), &lhs, &rhs);
            }
            let lhs = hopf_coproduct(&biword_convolution(x, y));
            let rhs = tprod(
                &hopf_coproduct(&bb(x)),
                &hopf_coproduct(&bb(y)),
                biword_convolution,
                biword_convolution,
            );
            c.eq(w, || format!("Δ({} ⋆ {}) multiplicative", x, y), &lhs, &rhs);
        }
    }
}

fn pn_coproduct(c: &mut Checker, n: usize) {
    for k in 1..=n {
        let p = p_n(k);
        c.eq(k, || format!("Δ≻(p_{})", k), &biword::delta_succ(&p), &LinComb::zero());
        let mut expect = LinComb::zero();
        for i in 1..k {
            expect += tensor(&p_n(i), &p_n(k - i));
        }
        c.eq(k, || format!("Δ≺(p_{})", k), &biword::delta_prec(&p), &expect);
    }
}

fn pi_primitive(c: &mut Checker, n: usize) {
    for k in 1..=n {
        let closed = pi_n(k, PiRoute::Closed).expect("k ≥ 1");
        c.eq(
            k,
            || format!("π_{} is (1|{})", k, k),
            &closed,
            &bb(&Biword::identity(vec![k as u32])),
        );
        for route in [PiRoute::Alternating, PiRoute::Recursive] {
            let v = pi_n(k, route).expect("k ≥ 1");
            c.eq(k, || format!("π_{} by the {:?} route", k, route), &v, &closed);
        }
        c.eq(
            k,
            || format!("Δ≺(π_{})", k),
            &biword::delta_prec(&closed),
            &LinComb::zero(),
        );
        c.eq(
            k,
            || format!("Δ≻(π_{})", k),
            &biword::delta_succ(&closed),
            &LinComb::zero(),
        );
    }
}

fn idempotents(c: &mut Checker, n: usize) {
    for k in 1..=n {
        let comps = compositions(k);
        let pis: Vec<LinComb<Biword>> = comps
            .iter()
            .map(|cp| pi_composite(cp).expect("valid composition"))
            .collect();
        let mut total = LinComb::zero();
        for (i, a) in pis.iter().enumerate() {
            total += a;
            for (j, b) in pis.iter().enumerate() {
                let expect = if i == j { a.clone() } else { LinComb::zero() };
                c.eq(
                    k,
                    || format!("π{:?} ∘ π{:?}", comps[i], comps[j]),
                    &biword::compose(a, b),
                    &expect,
                );
            }
        }
        c.eq(k, || format!("Σ π_I over compositions of {}", k), &total, &p_n(k));

        let probes = Alphabet::uniform(2, k).words_of_weight(k);
        for (comp, pi) in comps.iter().zip(&pis) {
            let f = Endomorphism(pi.clone());
            for w in &probes {
                let shape: Vec<usize> = w.letters().iter().map(|l| l.weight as usize).collect();
                let expect = if &shape == comp { wb(w) } else { LinComb::zero() };
                c.eq(k, || format!("Φ(π{:?}) on {}", comp, w), &f.apply(&wb(w)), &expect);
            }
        }
    }
}

fn action_compat(c: &mut Checker, n: usize) {
    let all = small_biwords(n);
    let kinds = [
        (HalfProduct::Prec, biword_prec as BiProduct),
        (HalfProduct::Succ, biword_succ),
        (HalfProduct::Star, biword_convolution),
    ];
    for a in &all {
        for b in &all {
            let w = a.weight() + b.weight();
            if w > n {
                continue;
            }
            let (fa, fb) = (
                Endomorphism::from_biword(a.clone()),
                Endomorphism::from_biword(b.clone()),
            );
            for probe in Alphabet::uniform(2, w).words_of_weight(w) {
                for (kind, product) in kinds {
                    let lhs = endo_apply(&Endomorphism(product(a, b)), &wb(&probe));
                    let rhs = convolution_via_action(&fa, &fb, &probe, kind);
                    c.eq(w, || format!("{:?}({}, {}) on {}", kind, a, b, probe), &lhs, &rhs);
                }
            }
        }
    }
    let max_size = n.min(3);
    let sized: Vec<Biword> = small_biwords(2 * max_size)
        .into_iter()
        .filter(|a| a.size() <= max_size)
        .collect();
    for a in &sized {
        for b in sized.iter().filter(|b| b.size() == a.size()) {
            let composed = internal_compose(a, b);
            c.eq(
                a.weight(),
                || format!("{} ∘ {} against the action", a, b),
                &composed,
                &compose_via_action(a, b),
            );
            for probe in Alphabet::uniform(2, 2).words_of_weight(b.weight()) {
                let once = phi_apply(b, &probe);
                let twice = once.map_linear(|w| phi_apply(a, w));
                let direct = Endomorphism(composed.clone()).apply(&wb(&probe));
                c.eq(a.weight(), || format!("Φ({} ∘ {}) on {}", a, b, probe), &direct, &twice);
            }
        }
    }
}

fn tau(c: &mut Checker, n: usize) -> Result<()> {
    let pres = sh_presentation(&Alphabet::uniform(2, n), n);
    let alg = ShuffleBialgebra::new(pres)?;
    let pres = alg.presentation();
    for e in 1..pres.len() {
        let w = pres.weight(e);
        let x = LinComb::basis(e);
        let word: Word = pres.label(e).parse()?;
        let t = alg.tau(&x);
        let expect = if word.len() == 1 { x.clone() } else { LinComb::zero() };
        c.holds(w, || format!("τ({}) = {}", word, pres.render(&t)), t == expect);
        c.holds(w, || format!("τ² = τ on {}", word), alg.tau(&t) == t);
        let reduced: LinComb<Tensor<usize>> = {
            let mut d = pres.coproduct(&t);
            d.retain(|k| k.left != UNIT && k.right != UNIT);
            d
        };
        c.holds(w, || format!("τ({}) is primitive", word), reduced.is_zero());
        let s = alg.antipode(&x);
        let signed = LinComb::term(
            pres.elem(&word.reversed().compact()).expect("reversal is a basis word"),
            sign(word.len()),
        );
        c.holds(w, || format!("S({}) = {}", word, pres.render(&s)), s == signed);
        let conv = alg.convolve(|y| alg.antipode(y), |y| y.clone(), &x);
        c.holds(
            w,
            || format!("S ⋆ Id on {} = {}", word, pres.render(&conv)),
            conv.is_zero(),
        );
        let conv = alg.convolve(|y| y.clone(), |y| alg.antipode(y), &x);
        c.holds(
            w,
            || format!("Id ⋆ S on {} = {}", word, pres.render(&conv)),
            conv.is_zero(),
        );
    }
    let unit = LinComb::basis(UNIT);
    c.holds(
        0,
        || "S ⋆ Id on the unit".into(),
        alg.convolve(|y| alg.antipode(y), |y| y.clone(), &unit) == unit,
    );
    Ok(())
}

fn rigidity(c: &mut Checker, n: usize) -> Result<()> {
    let pres = sh_presentation(&Alphabet::uniform(2, n), n);
    let violations = pres.validate();
    c.holds(
        0,
        || format!("Sh(X) presentation violates {:?}", violations.first()),
        violations.is_empty(),
    );
    let alg = ShuffleBialgebra::new_unchecked(pres.clone());
    for e in 1..pres.len() {
        let label = pres.label(e);
        let w = pres.weight(e);
        match alg.primitive_decomposition(label) {
            Ok(d) => {
                c.eq(
                    w,
                    || format!("round trip of {}", label),
                    &alg.evaluate_decomposition(&d),
                    &LinComb::basis(e),
                );
                let word: Word = label.parse()?;
                let nested = words::nested_prec_form(&word)?;
                c.holds(
                    w,
                    || format!("decomposition of {} is {}", label, d),
                    d.to_string() == compact_tree(&nested),
                );
            }
            Err(err) => c.holds(w, || err.to_string(), false),
        }
    }
    for (k, count, dim, rank) in alg.rigidity_counts() {
        c.holds(
            k,
            || format!("weight {}: {} nested words for dimension {}", k, count, dim),
            count == dim,
        );
        c.holds(
            k,
            || format!("weight {}: nested words have rank {} < {}", k, rank, dim),
            rank == dim,
        );
    }
    if n >= 2 {
        let mut bad = pres.clone();
        let (a, b) = (pres.elem("a").expect("letter a"), pres.elem("b").expect("letter b"));
        let ba = pres.elem("ba").expect("word ba");
        let mut v = bad.prec_entry(a, b);
        v.add_term(ba, Rational::one());
        bad.set_prec(a, b, v);
        c.holds(
            2,
            || "perturbed presentation passes validation".into(),
            !bad.validate().is_empty(),
        );
        let alg = ShuffleBialgebra::new_unchecked(bad);
        let failed = matches!(alg.primitive_decomposition("ab"), Err(Error::RigidityFailure { .. }));
        c.holds(2, || "perturbed presentation decomposes `ab`".into(), failed);
    }
    Ok(())
}

/// Renders a letter tree with compact letter names, e.g. `a<(b2<c)`.
pub fn compact_tree(t: &words::PrecTree<words::Letter>) -> String {
    match t {
        words::PrecTree::Leaf(l) => Word(vec![*l]).compact(),
        words::PrecTree::Prec(a, b) => {
            let side = |s: &words::PrecTree<words::Letter>| match s {
                words::PrecTree::Leaf(_) => compact_tree(s),
                _ => format!("({})", compact_tree(s)),
            };
            format!("{}<{}", side(a), side(b))
        }
    }
}
