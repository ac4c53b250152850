use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use rainbow_core::classification::{
    check_biclique, check_two_clique, classify, repair_biclique, repair_two_clique, robust_neighbourhood, ClassifyConfig,
    ClassifyMode, Params, Tag,
};
use rainbow_core::generators::{gen_bipartite_like, gen_two_clique_like};
use rainbow_core::graph::membership;
use rainbow_core::{Fraction, Graph};

fn random_graph(n: usize, p: f64, rng: &mut ChaCha8Rng) -> Graph {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    Graph::new(n, pairs.into_iter().filter(|_| rng.gen_bool(p))).unwrap()
}

fn is_subset(a: &[usize], b: &[usize]) -> bool {
    a.iter().all(|v| b.contains(v))
}

proptest! {
    #[test]
    fn robust_neighbourhood_monotone_and_antitone(n in 2usize..40, p in 0.0f64..1.0, seed: u64, k1 in 1i64..20, k2 in 1i64..20) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_graph(n, p, &mut rng);
        let x: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.4)).collect();
        let x2: Vec<usize> = (0..n).filter(|v| x.contains(v) || rng.gen_bool(0.4)).collect();
        let nu = Fraction::new(k1, 40);
        prop_assert!(is_subset(&robust_neighbourhood(&g, &x, nu), &robust_neighbourhood(&g, &x2, nu)));
        let (lo, hi) = (Fraction::new(k1.min(k2), 40), Fraction::new(k1.max(k2), 40));
        prop_assert!(is_subset(&robust_neighbourhood(&g, &x, hi), &robust_neighbourhood(&g, &x, lo)));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn closeness_witness_recounts(n in 8usize..15, seed: u64, which in 0usize..3) {
        let gamma = Fraction::new(1, 40);
        let g = match which {
            0 => gen_two_clique_like(n, gamma, seed).unwrap(),
            1 => gen_bipartite_like(n, gamma, seed).unwrap(),
            _ => random_graph(n, 0.6, &mut ChaCha8Rng::seed_from_u64(seed)),
        };
        let p = Params::default();
        let cls = classify(&g, &p, &ClassifyConfig { mode: ClassifyMode::Exact, seed, ..Default::default() }).unwrap();
        if let (Some(a), Some(e)) = (&cls.partition, cls.witness_edges) {
            let am = membership(n, a);
            let recount = match cls.tag {
                Tag::CloseToTwoCliques => g.edges().iter().filter(|e| am[e.u] != am[e.v]).count(),
                Tag::CloseToBipartite => g.edges_within(&am),
                _ => unreachable!("only closeness tags carry a witness"),
            };
            prop_assert_eq!(recount, e);
            prop_assert!(cls.gamma_best(n).unwrap() <= p.gamma);
            prop_assert!(a.len() == n / 2 || a.len() == n.div_ceil(2));
        }
    }

    #[test]
    fn repairs_pass_their_checks(n in 10usize..40, seed: u64) {
        let p = Params::default();
        let g = gen_two_clique_like(n, Fraction::new(1, 50), seed).unwrap();
        if let Ok(part) = repair_two_clique(&g, &(0..n.div_ceil(2)).collect::<Vec<_>>(), &p) {
            prop_assert!(check_two_clique(&g, &part.a, &part.b, part.eps));
            prop_assert!(part.eps <= p.eps);
        }
        let g = gen_bipartite_like(n, Fraction::new(1, 50), seed).unwrap();
        if let Ok(part) = repair_biclique(&g, &(0..n / 2).collect::<Vec<_>>(), &p) {
            prop_assert!(check_biclique(&g, &part));
            prop_assert!(part.alpha <= p.alpha && part.eps <= p.eps);
        }
    }
}

#[test]
fn extremal_anchors_for_even_n() {
    let p = Params::default();
    let cfg = ClassifyConfig { mode: ClassifyMode::Exact, ..Default::default() };
    for n in (8..=16).step_by(2) {
        let h = n / 2;
        let two = Graph::new(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).filter(|&(u, v)| (u < h) == (v < h))).unwrap();
        assert_eq!(classify(&two, &p, &cfg).unwrap().tag, Tag::CloseToTwoCliques, "n = {n}");
        assert_eq!(classify(&Graph::complete_bipartite(h, h), &p, &cfg).unwrap().tag, Tag::CloseToBipartite, "n = {n}");
    }
}
