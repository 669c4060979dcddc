use proptest::prelude::*;

use shuffle_core::algebra::{bilinear, int, tensor, LinComb, Rational, Tensor};
use shuffle_core::biword::{self, Biword};
use shuffle_core::descent::{descd_membership, descd_spanning_set};
use shuffle_core::rigidity::{sh_presentation, ShuffleBialgebra};
use shuffle_core::words::{self, Alphabet, Letter, Word};

fn arb_biword() -> impl Strategy<Value = Biword> {
    (1usize..=3)
        .prop_flat_map(|k| {
            (
                Just((1..=k as u32).collect::<Vec<_>>()).prop_shuffle(),
                prop::collection::vec(1u32..=2, k),
            )
        })
        .prop_map(|(p, d)| Biword::new(p, d).unwrap())
}

fn arb_biwords() -> impl Strategy<Value = LinComb<Biword>> {
    prop::collection::vec((arb_biword(), -3i64..=3), 1..=2)
        .prop_map(|terms| terms.into_iter().map(|(b, c)| (b, int(c))).collect())
}

fn arb_word() -> impl Strategy<Value = Word> {
    prop::collection::vec((1u32..=2, 0u32..3), 0..=3)
        .prop_map(|ls| Word(ls.into_iter().map(|(w, s)| Letter::new(w, s)).collect()))
}

fn arb_words() -> impl Strategy<Value = LinComb<Word>> {
    prop::collection::vec((arb_word(), -3i64..=3), 1..=2)
        .prop_map(|terms| terms.into_iter().map(|(w, c)| (w, int(c))).collect())
}

type BT = LinComb<Tensor<Biword>>;

fn star2(x: &BT, y: &BT) -> BT {
    bilinear(x, y, |s, t| {
        tensor(
            &biword::star(&LinComb::basis(s.left.clone()), &LinComb::basis(t.left.clone())),
            &biword::star(&LinComb::basis(s.right.clone()), &LinComb::basis(t.right.clone())),
        )
    })
}

fn left_id(t: &BT) -> LinComb<(Biword, Biword, Biword)> {
    t.map_linear(|s| {
        biword::hopf_coproduct(&LinComb::basis(s.left.clone()))
            .map_keys(|u| (u.left.clone(), u.right.clone(), s.right.clone()))
    })
}

fn right_id(t: &BT) -> LinComb<(Biword, Biword, Biword)> {
    t.map_linear(|s| {
        biword::hopf_coproduct(&LinComb::basis(s.right.clone()))
            .map_keys(|u| (s.left.clone(), u.left.clone(), u.right.clone()))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn dendriform_relations(x in arb_biwords(), y in arb_biwords(), z in arb_biwords()) {
        use biword::{prec, star, succ};
        prop_assert_eq!(prec(&prec(&x, &y), &z), prec(&x, &star(&y, &z)));
        prop_assert_eq!(prec(&succ(&x, &y), &z), succ(&x, &prec(&y, &z)));
        prop_assert_eq!(succ(&x, &succ(&y, &z)), succ(&star(&x, &y), &z));
    }

    #[test]
    fn hopf_coproduct_is_coassociative_and_multiplicative(x in arb_biwords(), y in arb_biwords()) {
        let dx = biword::hopf_coproduct(&x);
        let dy = biword::hopf_coproduct(&y);
        prop_assert_eq!(biword::hopf_coproduct(&biword::star(&x, &y)), star2(&dx, &dy));
        let pieces: Vec<(Tensor<Biword>, Rational)> = dx.iter().map(|(t, c)| (t.clone(), c.clone())).collect();
        let mut l = LinComb::zero();
        let mut r = LinComb::zero();
        for (t, c) in pieces {
            let one = LinComb::term(t, c);
            l += left_id(&one);
            r += right_id(&one);
        }
        prop_assert!(l == r, "Δ is not coassociative on {}", x);
    }

    #[test]
    fn internal_product_is_associative(a in arb_biword(), b in arb_biword(), c in arb_biword()) {
        let (a, b, c) = (LinComb::basis(a), LinComb::basis(b), LinComb::basis(c));
        prop_assert_eq!(
            biword::compose(&biword::compose(&a, &b), &c),
            biword::compose(&a, &biword::compose(&b, &c))
        );
    }

    #[test]
    fn biword_text_round_trip(x in arb_biwords()) {
        let back: LinComb<Biword> = shuffle_core::algebra::parse_combination(&x.to_string(), |k, _| k.parse()).unwrap();
        prop_assert_eq!(&back, &x);
        prop_assert_eq!(LinComb::<Biword>::from_json(&x.to_json()).unwrap(), x);
    }

    #[test]
    fn word_shuffle_is_commutative_and_associative(x in arb_words(), y in arb_words(), z in arb_words()) {
        prop_assert_eq!(words::shuffle(&x, &y), words::shuffle(&y, &x));
        prop_assert_eq!(
            words::shuffle(&words::shuffle(&x, &y), &z),
            words::shuffle(&x, &words::shuffle(&y, &z))
        );
        prop_assert_eq!(words::prec(&words::prec(&x, &y), &z), words::prec(&x, &words::shuffle(&y, &z)));
        prop_assert_eq!(LinComb::<Word>::from_json(&x.to_json()).unwrap(), x);
    }

    #[test]
    fn deconcatenation_is_a_shuffle_morphism(x in arb_words(), y in arb_words()) {
        let lhs = words::coproduct(&words::shuffle(&x, &y));
        let rhs = bilinear(&words::coproduct(&x), &words::coproduct(&y), |s, t| {
            tensor(
                &words::word_shuffle(&s.left, &t.left),
                &words::word_shuffle(&s.right, &t.right),
            )
        });
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn spanning_combinations_are_members(coeffs in prop::collection::vec(-2i64..=2, 10)) {
        let set = descd_spanning_set(3);
        let mut x = LinComb::zero();
        for ((_, v), c) in set.iter().zip(&coeffs) {
            x.add_scaled(v, &int(*c));
        }
        prop_assert!(descd_membership(&x, 3).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn shuffle_presentations_are_rigid(sizes in prop::collection::vec(1usize..=2, 1..=3), pick in 0usize..64) {
        let n = 3;
        let pres = sh_presentation(&Alphabet::new(sizes), n);
        let alg = ShuffleBialgebra::new(pres).unwrap();
        let labels: Vec<String> = (1..=n)
            .flat_map(|w| alg.presentation().basis_of_weight(w).map(|e| alg.presentation().label(e).to_string()).collect::<Vec<_>>())
            .collect();
        let label = &labels[pick % labels.len()];
        let d = alg.primitive_decomposition(label).unwrap();
        let e = alg.presentation().elem(label).unwrap();
        prop_assert_eq!(alg.evaluate_decomposition(&d), LinComb::basis(e));
        for (k, count, dim, rank) in alg.rigidity_counts() {
            prop_assert_eq!((count, rank), (dim, dim), "weight {}", k);
        }
    }
}
