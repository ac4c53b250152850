mod common;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::brute_force_hc;
use rainbow_core::classification::{repair_two_clique, BicliquePartition, Params};
use rainbow_core::generators::{gen_biclique, gen_two_clique_like};
use rainbow_core::graph::validate_ham_cycle;
use rainbow_core::hamilton::{biclique_ham, find_ham_cycle, two_clique_ham, HamOutcome, SearchBudget};
use rainbow_core::{Edge, Fraction, Graph, ProtectedSet};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn finder_agrees_with_brute_force(n in 3usize..9, p in 0.2f64..0.9, seed: u64, req in 0usize..3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        let g = Graph::new(n, pairs.into_iter().filter(|_| rng.gen_bool(p))).unwrap();
        let required: Vec<Edge> = g.edges().iter().copied().filter(|_| rng.gen_bool(0.5)).take(req).collect();
        let z = ProtectedSet::new(required.clone());
        match find_ham_cycle(&g, &z, SearchBudget::default(), seed) {
            Ok(HamOutcome::Found(h)) => prop_assert!(validate_ham_cycle(&g, &h, &z).unwrap()),
            Ok(HamOutcome::Exhausted) => prop_assert!(brute_force_hc(&g, &required).is_none()),
            Ok(HamOutcome::Budget) => prop_assert!(false, "budget hit at n = {}", n),
            // a required set that is not a linear forest
            Err(_) => prop_assert!(brute_force_hc(&g, &required).is_none()),
        }
    }

    #[test]
    fn constructions_validate(n in 10usize..40, seed: u64, m in 1usize..4) {
        let g = gen_two_clique_like(n, Fraction::new(1, 50), seed).unwrap();
        if let Ok(part) = repair_two_clique(&g, &(0..n.div_ceil(2)).collect::<Vec<_>>(), &Params::default()) {
            let am = rainbow_core::graph::membership(n, &part.a);
            let cross: Vec<Edge> = g.edges().iter().copied().filter(|e| am[e.u] != am[e.v]).collect();
            if let Some((f, f2)) = cross.iter().enumerate().find_map(|(i, f)| cross[i + 1..].iter().find(|f2| !f.shares_vertex(f2)).map(|f2| (*f, *f2))) {
                let built = two_clique_ham(&g, &part, f, f2, SearchBudget::default(), seed).unwrap();
                prop_assert!(validate_ham_cycle(&g, &built.cycle, &ProtectedSet::new([f, f2])).unwrap());
            }
        }
        let nb = 2 * n + 2 * m;
        let g = gen_biclique(nb, 2 * m, seed).unwrap();
        let f = Fraction::new(1, 10);
        let part = BicliquePartition { a: (0..n).collect(), b: (n..nb).collect(), alpha: f, eps: f, nu: f };
        let bm = rainbow_core::graph::membership(nb, &part.b);
        let mut used = vec![false; nb];
        let mut matching = Vec::new();
        for e in g.edges().iter().filter(|e| bm[e.u] && bm[e.v]) {
            if matching.len() < part.imbalance() && !used[e.u] && !used[e.v] {
                used[e.u] = true;
                used[e.v] = true;
                matching.push(*e);
            }
        }
        if matching.len() == part.imbalance() {
            let z = ProtectedSet::new(matching);
            let built = biclique_ham(&g, &part, &z, SearchBudget::default(), seed).unwrap();
            prop_assert!(validate_ham_cycle(&g, &built.cycle, &z).unwrap());
        }
    }
}
