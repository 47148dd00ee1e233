use kmroots_core::filters::cond1_pair;
use kmroots_core::lattice::{bilinear_form, classify, simple_reflection, Node};
use kmroots_core::string_data::{format_word, parse_word, runs_to_word, weight_of, word_to_runs};
use kmroots_core::{Rank2Cartan, RootClass, SignedWeight, Weight};
use num_bigint::BigInt;
use proptest::prelude::*;

fn cartan(r: u64) -> Rank2Cartan {
    Rank2Cartan::new(r).unwrap()
}

fn signed(w: &Weight) -> SignedWeight {
    SignedWeight {
        c0: BigInt::from(w.c0.clone()),
        c1: BigInt::from(w.c1.clone()),
    }
}

proptest! {
    #[test]
    fn form_is_symmetric(a in 0u64..1000, b in 0u64..1000, c in 0u64..1000, d in 0u64..1000, r in 3u64..9) {
        let (u, v) = (Weight::new(a, b), Weight::new(c, d));
        prop_assert_eq!(bilinear_form(&u, &v, &cartan(r)), bilinear_form(&v, &u, &cartan(r)));
    }

    #[test]
    fn reflections_are_isometric_involutions(a in -500i64..500, b in -500i64..500, c in -500i64..500, d in -500i64..500, r in 3u64..9, node in 0usize..2) {
        let k = cartan(r);
        let node = Node::from_index(node).unwrap();
        let (u, v) = (SignedWeight::new(a, b), SignedWeight::new(c, d));
        let (su, sv) = (u.reflect(node, &k), v.reflect(node, &k));
        prop_assert_eq!(su.form(&sv, &k), u.form(&v, &k));
        prop_assert_eq!(su.reflect(node, &k), u);
    }

    #[test]
    fn simple_reflection_matches_signed(a in 0u64..1000, b in 0u64..1000, r in 3u64..9) {
        let k = cartan(r);
        let w = Weight::new(a, b);
        prop_assert_eq!(simple_reflection(Node::Alpha0, &w, &k), signed(&w).reflect(Node::Alpha0, &k));
        let s1 = simple_reflection(Node::Alpha1, &w, &k);
        prop_assert_eq!(s1.c0, BigInt::from(a));
        prop_assert_eq!(s1.c1, BigInt::from(r * a) - BigInt::from(b));
    }

    #[test]
    fn classification_is_flip_symmetric(a in 0u64..300, b in 0u64..300, r in 3u64..7) {
        prop_assume!(a + b > 0);
        let w = Weight::new(a, b);
        prop_assert_eq!(classify(&w, &cartan(r)).unwrap(), classify(&w.flipped(), &cartan(r)).unwrap());
    }

    #[test]
    fn word_runs_round_trip(word in proptest::collection::vec(0u8..2, 0..64)) {
        let data = word_to_runs(&word);
        prop_assert_eq!(runs_to_word(&data), word.clone());
        prop_assert!(data.runs().iter().skip(1).all(|&a| a > 0));
        let zeros = word.iter().filter(|&&l| l == 0).count() as u64;
        let ones = word.len() as u64 - zeros;
        prop_assert_eq!(weight_of(&data), Weight::new(zeros, ones));
        prop_assert_eq!(parse_word(&format_word(&word)).unwrap(), word);
    }

    #[test]
    fn cond1_matches_squared_threshold(a in 1u64..100_000, b in 1u64..100_000, r in 3u64..12) {
        // b/a ≤ (r + √(r²−4))/2  ⟺  2b − ra ≤ 0 or (2b − ra)² ≤ a²(r² − 4)
        let (a, b, r) = (a as i128, b as i128, r as i128);
        let t = 2 * b - r * a;
        let exact = t <= 0 || t * t <= a * a * (r * r - 4);
        prop_assert_eq!(cond1_pair(a as u64, b as u64, &cartan(r as u64)), exact);
    }
}

#[test]
fn real_roots_come_from_simple_reflections() {
    // orbit of the simple roots under alternating reflections
    for r in 3..=5 {
        let k = cartan(r);
        for start in [Node::Alpha0, Node::Alpha1] {
            let mut cur = match start {
                Node::Alpha0 => SignedWeight::new(1, 0),
                Node::Alpha1 => SignedWeight::new(0, 1),
            };
            let mut node = if start == Node::Alpha0 {
                Node::Alpha1
            } else {
                Node::Alpha0
            };
            for _ in 0..12 {
                cur = cur.reflect(node, &k);
                node = if node == Node::Alpha0 {
                    Node::Alpha1
                } else {
                    Node::Alpha0
                };
                let w = cur.to_weight().expect("positive");
                assert_eq!(classify(&w, &k).unwrap(), RootClass::RealRoot, "{w} r={r}");
            }
        }
    }
}
