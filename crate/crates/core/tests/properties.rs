use dmres::cli::{parse, print, Artifact, Object};
use dmres::prelude::*;
use dmres::random::{random_fold, random_map, random_standard_form, rng};
use proptest::prelude::*;

fn ring(n: usize) -> GradedRing {
    GradedRing::polynomial(&["x", "y", "z"][..n])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn printed_matrices_parse_back(seed in any::<u64>(), n in 1usize..4, rows in 0usize..4, cols in 0usize..4) {
        let r = ring(n);
        let mut g = rng(seed);
        let src = FreeModule::new((0..cols).map(|j| (seed as i64 + j as i64) % 3).collect());
        let tgt = FreeModule::new((0..rows).map(|i| -((seed as i64 + i as i64) % 2)).collect());
        let m = random_map(&r, &src, &tgt, 3, &mut g).unwrap();
        let mut a = Artifact::new(r.clone());
        a.push("M", Object::Matrix(m));
        let text = print(&a);
        let b = parse(&text).unwrap();
        prop_assert_eq!(&a, &b);
        prop_assert_eq!(print(&b), text);
    }

    #[test]
    fn minimization_is_certified(seed in any::<u64>(), n in 2usize..4, terms in 2usize..4, a in 0i64..3) {
        let r = ring(n);
        let d = random_fold(&r, terms, a, seed).unwrap();
        let m = minimize(&r, &d).unwrap();
        prop_assert!(m.verify(&r, d.differential()).unwrap());
        prop_assert!(m.minimal.differential().is_minimal(&r));
        prop_assert!(m.rank() <= d.rank());
        prop_assert_eq!((d.rank() - m.rank()) % 2, 0);
    }

    #[test]
    fn standard_forms_minimize_to_zero(seed in any::<u64>(), pairs in 1usize..4, a in 0i64..3) {
        let r = ring(2);
        let d = random_standard_form(&r, pairs, a, seed).unwrap();
        let m = minimize(&r, &d).unwrap();
        prop_assert_eq!(m.rank(), 0);
        prop_assert!(m.verify(&r, d.differential()).unwrap());
    }
}
