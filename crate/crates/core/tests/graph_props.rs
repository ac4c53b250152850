use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use rainbow_core::graph::{is_rainbow, membership};
use rainbow_core::{Colouring, DirectedHamCycle, Edge, Graph};

fn random_graph(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    Graph::new(n, pairs.into_iter().filter(|_| rng.gen_bool(p))).unwrap()
}

proptest! {
    #[test]
    fn handshake_and_cut_identity(n in 1usize..50, p in 0.0f64..1.0, seed: u64, pick: Vec<bool>) {
        let g = random_graph(n, p, seed);
        prop_assert_eq!(g.degrees().iter().sum::<usize>(), 2 * g.m());
        let a: Vec<usize> = (0..n).filter(|&v| pick.get(v).copied().unwrap_or(false)).collect();
        let am = membership(n, &a);
        let bm: Vec<bool> = am.iter().map(|x| !x).collect();
        let deg_sum: usize = a.iter().map(|&v| g.degree(v)).sum();
        prop_assert_eq!(g.edges_between(&am, &bm) + 2 * g.edges_within(&am), deg_sum);
    }

    #[test]
    fn split_permutations_are_rejected(n in 4usize..30, cut in 2usize..28, seed: u64) {
        let cut = cut.min(n - 2).max(2);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut perm: Vec<usize> = (0..n).collect();
        rand::seq::SliceRandom::shuffle(perm.as_mut_slice(), &mut rng);
        // two cycles: perm[..cut] and perm[cut..]
        let mut succ = vec![0; n];
        for part in [&perm[..cut], &perm[cut..]] {
            for i in 0..part.len() {
                succ[part[i]] = part[(i + 1) % part.len()];
            }
        }
        prop_assert!(DirectedHamCycle::from_successors(succ).is_err());
    }

    #[test]
    fn reverse_is_an_involution(n in 3usize..40, seed: u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut order: Vec<usize> = (0..n).collect();
        rand::seq::SliceRandom::shuffle(order.as_mut_slice(), &mut rng);
        let h = DirectedHamCycle::from_order(&order).unwrap();
        prop_assert_eq!(h.reverse().reverse(), h.clone());
        prop_assert_eq!(h.reverse().edges(), h.edges());
    }

    #[test]
    fn rainbow_is_monotone(n in 3usize..12, palette in 1u32..40, seed: u64, keep: Vec<bool>) {
        let g = Graph::complete(n);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = Colouring::from_fn(&g, |_| rng.gen_range(0..palette));
        let s: Vec<Edge> = g.edges().iter().copied().filter(|_| rng.gen_bool(0.3)).collect();
        if is_rainbow(&c, &s).unwrap() {
            let sub: Vec<Edge> = s.iter().enumerate().filter(|(i, _)| keep.get(*i).copied().unwrap_or(true)).map(|(_, e)| *e).collect();
            prop_assert!(is_rainbow(&c, &sub).unwrap());
        }
    }
}
