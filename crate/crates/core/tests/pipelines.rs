use proptest::prelude::*;

use jumbled::generate::{random_string, random_tree, rng};
use jumbled::{
    binarize, blocked_profile, enumerate_connected_oracle, merge_profiles, naive_profile, occurs,
    recursive_profile, simple_tree_profile, tree_profile, BinaryString, LabeledTree, Profile,
};

#[test]
fn string_profiles_survive_csv() {
    for seed in 0..20 {
        let s = random_string(&mut rng(seed), 1 + seed as usize * 37, 0.3).unwrap();
        let p = blocked_profile(&s, None).unwrap();
        assert_eq!(Profile::from_csv(&p.to_csv().unwrap()).unwrap(), p);
    }
}

#[test]
fn tree_profiles_survive_text_and_csv() {
    for seed in 0..20 {
        let t = random_tree(&mut rng(seed), 1 + seed as usize * 11, 0.6).unwrap();
        let t2 = LabeledTree::parse(&t.to_text(), false).unwrap();
        let p = tree_profile(&t2, 4).unwrap();
        assert_eq!(p, simple_tree_profile(&binarize(&t)).unwrap());
        assert_eq!(Profile::from_csv(&p.to_csv().unwrap()).unwrap(), p);
    }
}

#[test]
fn path_tree_equals_string() {
    let s = BinaryString::parse("0110100111010").unwrap();
    let labels = s.bits().iter().map(|&b| b as i64).collect();
    let t = LabeledTree::path(labels).unwrap();
    assert_eq!(tree_profile(&t, 3).unwrap(), naive_profile(&s));
}

proptest! {
    #[test]
    fn concatenation_dominates_parts(a in "[01]{1,40}", b in "[01]{1,40}") {
        // every window of a part is a window of the concatenation
        let pa = recursive_profile(&BinaryString::parse(&a).unwrap()).unwrap();
        let pb = recursive_profile(&BinaryString::parse(&b).unwrap()).unwrap();
        let pab = recursive_profile(&BinaryString::parse(&(a + &b)).unwrap()).unwrap();
        let merged = merge_profiles(&pa, &pb);
        for i in 1..=merged.len() {
            let (lo, hi) = merged.entry(i).unwrap();
            prop_assert!(occurs(&pab, i, lo as i64) && occurs(&pab, i, hi as i64));
        }
    }

    #[test]
    fn micro_macro_matches_enumeration(seed in 0u64..10_000, n in 1usize..=16, r in 1usize..=16) {
        let t = random_tree(&mut rng(seed), n, 0.5).unwrap();
        prop_assert_eq!(tree_profile(&t, r).unwrap(), enumerate_connected_oracle(&t, 16).unwrap());
    }
}
