use std::collections::BTreeSet;
use std::sync::OnceLock;

use num_rational::BigRational;
use proptest::prelude::*;

use hurwitz::affine::AffineGroup;
use hurwitz::codec::{AnyGroup, ElementCodec};
use hurwitz::coxeter::{
    conjugation_closure, finite_matrix, inversion_set, product, CoxeterGroup, CoxeterSystem, ElemId,
    FiniteGroup,
};
use hurwitz::dyer::conj_multiset;
use hurwitz::hurwitz::{apply_braid, invert_braid, BraidLetter};
use hurwitz::Scalar;

fn b3() -> &'static FiniteGroup {
    static G: OnceLock<FiniteGroup> = OnceLock::new();
    G.get_or_init(|| FiniteGroup::new(CoxeterSystem::build(finite_matrix("B3").unwrap()).unwrap(), 1000).unwrap())
}

fn bt2() -> &'static AffineGroup {
    static G: OnceLock<AffineGroup> = OnceLock::new();
    G.get_or_init(|| AffineGroup::from_name("Bt2").unwrap())
}

fn scalar() -> impl Strategy<Value = Scalar> {
    prop::collection::vec((-9i64..=9, 1i64..=6), 8).prop_map(|c| {
        let mut x = Scalar::zero();
        for (r, (n, d)) in [1, 2, 3, 5, 6, 10, 15, 30].into_iter().zip(c) {
            let q = BigRational::new(n.into(), d.into());
            let basis = if r == 1 { Scalar::one() } else { Scalar::sqrt(r).unwrap() };
            x += &basis.scale(&q);
        }
        x
    })
}

/// Indices into the reflections of B3.
fn b3_tuple(max: usize) -> impl Strategy<Value = Vec<ElemId>> {
    prop::collection::vec(0..9usize, 2..=max).prop_map(|ix| ix.into_iter().map(|i| b3().reflections()[i]).collect())
}

fn braid(len: usize, max: usize) -> impl Strategy<Value = Vec<BraidLetter>> {
    prop::collection::vec((1..len.max(2), any::<bool>()), 0..=max)
        .prop_map(|v| v.into_iter().map(|(index, inverse)| BraidLetter { index, inverse }).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a - &a, Scalar::zero());
        if !b.is_zero() {
            prop_assert_eq!(&(&a / &b) * &b, a.clone());
        }
        prop_assert_eq!((&a * &b).sign(), a.sign() * b.sign());
        prop_assert_eq!((&a - &b).sign(), -(&b - &a).sign());
    }

    #[test]
    fn scalar_text_round_trip(a in scalar()) {
        let back: Scalar = a.to_string().parse().unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn braid_relations(f in b3_tuple(5), i in 1usize..4) {
        let g = b3();
        prop_assume!(i + 1 < f.len());
        let s = BraidLetter::sigma;
        let lhs = apply_braid(g, &f, &[s(i), s(i + 1), s(i)]).unwrap();
        let rhs = apply_braid(g, &f, &[s(i + 1), s(i), s(i + 1)]).unwrap();
        prop_assert_eq!(lhs, rhs);
        if i + 2 < f.len() {
            prop_assert_eq!(
                apply_braid(g, &f, &[s(i), s(i + 2)]).unwrap(),
                apply_braid(g, &f, &[s(i + 2), s(i)]).unwrap()
            );
        }
        prop_assert_eq!(apply_braid(g, &f, &[s(i), BraidLetter::sigma_inv(i)]).unwrap(), f);
    }

    #[test]
    fn hurwitz_invariants((f, b) in b3_tuple(5).prop_flat_map(|f| { let n = f.len(); (Just(f), braid(n, 12)) })) {
        let g = b3();
        let h = apply_braid(g, &f, &b).unwrap();
        prop_assert_eq!(product(g, &h), product(g, &f));
        prop_assert_eq!(conj_multiset(g, &h).unwrap(), conj_multiset(g, &f).unwrap());
        let sub = |x: &[ElemId]| conjugation_closure(g, x, 100).unwrap().into_iter().collect::<BTreeSet<_>>();
        prop_assert_eq!(sub(&h), sub(&f));
        prop_assert_eq!(apply_braid(g, &h, &invert_braid(&b)).unwrap(), f);
    }

    #[test]
    fn affine_hurwitz_invariants(words in prop::collection::vec(prop::collection::vec(0usize..3, 0..5), 2..5), b in braid(4, 10)) {
        let g = bt2();
        let f: Vec<_> = words
            .iter()
            .map(|w| {
                let u = g.element_from_word(w).unwrap();
                g.conjugate(&u, &g.generator(w.len() % 3))
            })
            .collect();
        let b: Vec<_> = b.into_iter().filter(|l| l.index < f.len()).collect();
        let h = apply_braid(g, &f, &b).unwrap();
        prop_assert_eq!(product(g, &h), product(g, &f));
        prop_assert_eq!(conj_multiset(g, &h).unwrap(), conj_multiset(g, &f).unwrap());
        let encoded = g.encode_tuple(&h);
        prop_assert_eq!(g.decode_tuple(&encoded).unwrap(), h);
    }

    #[test]
    fn inversion_sets(word in prop::collection::vec(0usize..3, 0..12)) {
        let g = b3();
        let w = g.element_from_word(&word).unwrap();
        prop_assert_eq!(inversion_set(g, &w).len(), g.length(&w));
        let a = bt2();
        let x = a.element_from_word(&word).unwrap();
        prop_assert_eq!(inversion_set(a, &x).len(), a.length(&x));
    }

    #[test]
    fn element_json_round_trip(word in prop::collection::vec(0usize..3, 0..10)) {
        for name in ["B3", "Bt2", "H3"] {
            let any = AnyGroup::from_type(name, 5000).unwrap();
            hurwitz::with_group!(&any, g => {
                let w = g.element_from_word(&word).unwrap();
                let v = g.encode(&w);
                prop_assert_eq!(g.decode(&v).unwrap(), w);
            });
        }
    }
}
