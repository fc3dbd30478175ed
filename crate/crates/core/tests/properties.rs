use std::collections::BTreeSet;

use cayleyrf::splits::{effective_radius, split_of};
use cayleyrf::trees::parse_trees;
use cayleyrf::{
    k_local_split, prufer_decode, prufer_encode, rf_distance, rf_from_shared, sample_tree, shared_count, split_set,
    CayleyTree, PruferSequence, Split,
};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn prufer(max_n: usize) -> impl Strategy<Value = PruferSequence> {
    (2..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(1..=n, n - 2).prop_map(move |s| PruferSequence::new(n, s).unwrap())
    })
}

fn tree_pair(max_n: usize) -> impl Strategy<Value = (CayleyTree, CayleyTree, usize)> {
    (2..=max_n, any::<u64>(), 0..max_n).prop_map(|(n, seed, k)| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (sample_tree(n, &mut rng).unwrap(), sample_tree(n, &mut rng).unwrap(), k)
    })
}

fn splits_by_search(tree: &CayleyTree, k: usize) -> BTreeSet<Split> {
    tree.edges()
        .iter()
        .map(|&(u, v)| k_local_split(tree, u, v, k).unwrap())
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn prufer_roundtrip(seq in prufer(40)) {
        let tree = prufer_decode(&seq);
        tree.check_invariants().unwrap();
        prop_assert_eq!(prufer_encode(&tree), seq);
    }

    #[test]
    fn prufer_text_roundtrip(seq in prufer(40)) {
        let back = PruferSequence::parse(&seq.to_string(), seq.n()).unwrap();
        prop_assert_eq!(back, seq);
    }

    #[test]
    fn tree_text_roundtrip((a, b, _) in tree_pair(70)) {
        let text = format!("{a}\n\n{b}\n");
        prop_assert_eq!(parse_trees(&text).unwrap(), vec![a.clone(), b]);
        prop_assert_eq!(a.to_string().parse::<CayleyTree>().unwrap(), a);
    }

    #[test]
    fn fast_split_set_matches_search((t, _, k) in tree_pair(150)) {
        let fast = split_set(&t, k);
        prop_assert_eq!(fast.k(), effective_radius(t.n(), k));
        let got: BTreeSet<Split> = fast.iter().collect();
        prop_assert_eq!(got.len(), t.n() - 1);
        prop_assert_eq!(got, splits_by_search(&t, k));
    }

    #[test]
    fn shared_and_distance_agree((a, b, k) in tree_pair(150)) {
        let (sa, sb) = (split_set(&a, k), split_set(&b, k));
        let shared = sa.shared_with(&sb).unwrap();
        let brute = splits_by_search(&a, k).intersection(&splits_by_search(&b, k)).count();
        prop_assert_eq!(shared, brute);
        prop_assert_eq!(shared_count(&a, &b, k).unwrap(), shared);
        let d = rf_distance(&a, &b, k).unwrap();
        prop_assert_eq!(d, sa.symmetric_difference_len(&sb).unwrap());
        prop_assert_eq!(d, rf_from_shared(a.n(), shared).unwrap());
    }

    #[test]
    fn split_text_roundtrip((t, _, k) in tree_pair(60)) {
        for s in split_set(&t, k).iter() {
            prop_assert_eq!(s.to_string().parse::<Split>().unwrap(), s);
        }
    }
}

#[test]
fn split_of_orders_sides() {
    let s = split_of(&[3, 4], &[2, 1]).unwrap();
    assert_eq!(s.to_string(), "1,2|3,4");
    assert_eq!("3,4|1,2".parse::<Split>().unwrap(), s);
}
