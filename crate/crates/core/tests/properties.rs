use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use symdiff_core::code_builder::{build_code, ParityCode};
use symdiff_core::interval_union::enumerate_unions;
use symdiff_core::value_space::pullback;
use symdiff_core::witness_walks::{bfs_bipartite, odd_closed_walk, verify_walk};
use symdiff_core::PointSet;

fn params() -> impl Strategy<Value = (u32, usize, usize)> {
    prop_oneof![
        (2u32..=6).prop_map(|n| (n, 2usize, 1usize)),
        (4u32..=6).prop_flat_map(|n| (1usize..=2).prop_map(move |k| (n, 4usize, k))),
        (2u32..=4).prop_map(|n| (n, 3usize, 1usize)),
        (4u32..=5).prop_map(|n| (n, 5usize, 2usize)),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn membership_is_linear((n, d, k) in params(), seed in any::<u64>()) {
        let code = build_code(n, d, k).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = PointSet::random(n, d, &mut rng).unwrap();
        let b = PointSet::random(n, d, &mut rng).unwrap();
        let ab = a.symmetric_difference(&b).unwrap();
        prop_assert_eq!(
            code.membership(&ab).unwrap(),
            code.membership(&a).unwrap() ^ code.membership(&b).unwrap()
        );
    }

    #[test]
    fn every_forbidden_power_flips_membership((n, d, k) in params(), seed in any::<u64>()) {
        let code = build_code(n, d, k).unwrap();
        let a = PointSet::random(n, d, &mut ChaCha8Rng::seed_from_u64(seed)).unwrap();
        let before = code.membership(&a).unwrap();
        for s in enumerate_unions(n, k) {
            let flipped = a.symmetric_difference(&PointSet::power(&s, d).unwrap()).unwrap();
            prop_assert_ne!(code.membership(&flipped).unwrap(), before, "S = {}", s);
        }
    }

    #[test]
    fn certificate_round_trip((n, d, k) in params()) {
        let code = build_code(n, d, k).unwrap();
        let json = serde_json::to_string(&code.to_certificate()).unwrap();
        let back = ParityCode::from_certificate(&serde_json::from_str(&json).unwrap()).unwrap();
        prop_assert_eq!(&back, &code);
        prop_assert!(back.parity_violations().is_empty());
    }

    #[test]
    fn odd_dimension_lifts_even_code(n in 2u32..=3, seed in any::<u64>()) {
        let odd = build_code(n, 3, 1).unwrap();
        let even = build_code(n, 2, 1).unwrap();
        let x = PointSet::random(n, 3, &mut ChaCha8Rng::seed_from_u64(seed)).unwrap();
        prop_assert_eq!(
            odd.membership(&x).unwrap(),
            even.membership(&pullback(&x, 2).unwrap()).unwrap()
        );
    }

    #[test]
    fn odd_walks_verify(d in 1usize..=5, extra in 0u32..=2) {
        let n = d as u32 + 1 + extra;
        let k = d / 2 + 1;
        let w = odd_closed_walk(n, d, k).unwrap();
        prop_assert_eq!(w.len(), (1 << (d + 1)) - 1);
        prop_assert!(verify_walk(&w, n, d, k));
        prop_assert!(!verify_walk(&w, n, d, k - 1));
    }
}

#[test]
fn bipartite_exactly_up_to_half() {
    for (n, d) in [
        (2u32, 1usize),
        (3, 1),
        (4, 1),
        (2, 2),
        (3, 2),
        (4, 2),
        (2, 3),
    ] {
        let half = d / 2;
        if half >= 1 {
            assert!(bfs_bipartite(n, d, half).unwrap().bipartite, "n={n} d={d}");
        }
        if n as usize > d {
            let r = bfs_bipartite(n, d, half + 1).unwrap();
            assert!(!r.bipartite, "n={n} d={d}");
            let cycle = r.odd_cycle.unwrap();
            assert_eq!(cycle.len() % 2, 1);
            assert!(verify_walk(&cycle, n, d, half + 1));
        }
    }
}
