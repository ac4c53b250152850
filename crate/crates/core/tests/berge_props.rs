use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use rainbow_core::berge::{berge_hamilton, degree_threshold, shadow_reduce, verify_berge, Hypergraph};
use rainbow_core::classification::Params;
use rainbow_core::rainbow::PipelineConfig;

fn random_hypergraph(n: usize, r: usize, p: f64, seed: u64) -> Hypergraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let all = Hypergraph::complete(n, r).unwrap();
    Hypergraph::new(n, r, all.edges().iter().filter(|_| rng.gen_bool(p)).cloned().collect()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn shadow_classes_are_bounded(n in 4usize..12, r in 2usize..5, p in 0.1f64..1.0, seed: u64) {
        let r = r.min(n);
        let h = random_hypergraph(n, r, p, seed);
        let s = shadow_reduce(&h);
        prop_assert!(s.colouring.max_multiplicity() <= r * (r - 1) / 2);
        for e in s.graph.edges() {
            let owner = &h.edges()[s.edge_map[&s.colouring.colour_of(*e).unwrap()]];
            prop_assert!(owner.contains(&e.u) && owner.contains(&e.v));
        }
    }

    #[test]
    fn successes_translate_and_degrees_match(n in 6usize..11, p in 0.5f64..1.0, seed: u64) {
        let h = random_hypergraph(n, 3, p, seed);
        let mut cfg = PipelineConfig::default();
        cfg.search.max_steps = 3000;
        cfg.search.restarts = 3;
        let res = berge_hamilton(&h, &Params::default(), &cfg).unwrap();
        if let Some(b) = &res.cycle {
            prop_assert!(verify_berge(&h, b));
        }
        let min_deg = (0..n).map(|v| h.edges().iter().filter(|e| e.contains(&v)).count()).min().unwrap();
        prop_assert_eq!(res.min_degree, min_deg);
        let threshold = degree_threshold(n, 3).unwrap();
        prop_assert_eq!(res.above_threshold, num_bigint::BigUint::from(min_deg) > threshold);
        prop_assert_eq!(res.threshold, threshold.to_string());
    }
}
