use proptest::prelude::*;

use spread_core::bounds::{max_spread_simple, ub_general, ub_row0};
use spread_core::search::{exhaustive, Space};
use spread_core::spectral::{decompose, eigenvalues, singular_values, spread_ratio, Solver};
use spread_core::{LoopedGraph, SpreadQuery};

fn looped_graph(max_n: usize) -> impl Strategy<Value = LoopedGraph> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n + 1) / 2).prop_map(move |bits| {
            let mut it = bits.into_iter();
            let mut adj = vec![0u8; n * n];
            for u in 0..n {
                for v in u..n {
                    let b = u8::from(it.next().expect("enough bits"));
                    adj[u * n + v] = b;
                    adj[v * n + u] = b;
                }
            }
            LoopedGraph::from_adjacency(n, adj).expect("symmetric 0/1")
        })
    })
}

fn graph_and_query(max_n: usize) -> impl Strategy<Value = (LoopedGraph, SpreadQuery)> {
    looped_graph(max_n).prop_flat_map(|g| {
        let n = g.n();
        (Just(g), 0..n, 0..n).prop_map(|(g, i, j)| (g, SpreadQuery::new(i, j)))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn blowup_scales_spectrum(g in looped_graph(8), t in 1usize..=4) {
        let base = eigenvalues(&g).unwrap();
        let big = eigenvalues(&g.blowup(t).unwrap()).unwrap();
        let mut expected: Vec<f64> = base.values().iter().map(|x| x * t as f64).collect();
        expected.extend(std::iter::repeat_n(0.0, g.n() * (t - 1)));
        expected.sort_by(|a, b| b.total_cmp(a));
        for (x, y) in big.values().iter().zip(&expected) {
            prop_assert!((x - y).abs() <= 1e-8, "{:?} vs {:?}", big.values(), expected);
        }
    }

    #[test]
    fn blowup_keeps_ratio_when_signs_straddle((g, q) in graph_and_query(7), t in 1usize..=3) {
        let s = eigenvalues(&g).unwrap();
        let n = g.n();
        let big = g.blowup(t).unwrap();
        let before = spread_ratio(&g, q).unwrap();
        let after = spread_ratio(&big, q).unwrap();
        if s.lambda(q.i + 1) >= 0.0 && s.lambda(n - q.j) <= 0.0 {
            prop_assert!((before - after).abs() <= 1e-9, "{before} vs {after}");
        } else {
            // zeros from the blowup can only widen the gap
            prop_assert!(after >= before - 1e-9);
        }
    }

    #[test]
    fn loops_shift_eigenvalues_by_at_most_one(g in looped_graph(20)) {
        let looped = eigenvalues(&g).unwrap();
        let simple = eigenvalues(&g.underlying_simple()).unwrap();
        for (a, b) in looped.values().iter().zip(simple.values()) {
            prop_assert!(*a >= b - 1e-9);
            prop_assert!(*b >= a - 1.0 - 1e-9);
        }
    }

    #[test]
    fn loop_removal_moves_ratio_by_at_most_one_over_n((g, q) in graph_and_query(20)) {
        let a = spread_ratio(&g, q).unwrap();
        let b = spread_ratio(&g.underlying_simple(), q).unwrap();
        prop_assert!((a - b).abs() <= 1.0 / g.n() as f64 + 1e-9);
    }

    #[test]
    fn every_spread_respects_the_upper_bounds(g in looped_graph(20)) {
        let s = eigenvalues(&g).unwrap();
        let n = g.n();
        for i in 0..n {
            for j in 0..n {
                let value = s.spread(SpreadQuery::new(i, j)).unwrap();
                let bound = if i == 0 { ub_row0(j) } else { ub_general(i, j).unwrap() };
                prop_assert!(value <= n as f64 * bound + 1e-9, "({i},{j}): {value} > {}", n as f64 * bound);
            }
        }
    }

    #[test]
    fn singular_values_obey_the_second_moment_bound(g in looped_graph(20)) {
        let sv = singular_values(&g).unwrap();
        let n = g.n() as f64;
        for (k, &x) in sv.iter().enumerate().skip(1) {
            // σ_{i+1} ≤ n/(2√i)
            prop_assert!(x <= n / (2.0 * (k as f64).sqrt()) + 1e-9, "σ_{} = {x}", k + 1);
        }
        prop_assert!(sv.windows(2).all(|w| w[0] >= w[1]));
    }

    #[test]
    fn degree_sum_is_trace_of_square(g in looped_graph(12)) {
        let profile = g.degree_profile();
        let s = eigenvalues(&g).unwrap();
        let trace_sq: f64 = s.values().iter().map(|x| x * x).sum();
        prop_assert!((trace_sq - profile.total() as f64).abs() <= 1e-8 * g.n() as f64);
    }

    #[test]
    fn relabelling_preserves_spectrum(g in looped_graph(10), seed in any::<u64>()) {
        let n = g.n();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut x = seed;
        for k in (1..n).rev() {
            x = x.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(k, (x >> 33) as usize % (k + 1));
        }
        let h = g.relabel(&perm).unwrap();
        let (a, b) = (eigenvalues(&g).unwrap(), eigenvalues(&h).unwrap());
        for (p, q) in a.values().iter().zip(b.values()) {
            prop_assert!((p - q).abs() <= 1e-9);
        }
        prop_assert!(g.is_isomorphic(&h).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn jacobi_agrees_with_tridiagonal(g in looped_graph(20)) {
        let a = g.to_matrix();
        let t = decompose(&a, Solver::Tridiagonal, false).unwrap();
        let j = decompose(&a, Solver::Jacobi, false).unwrap();
        for (x, y) in t.values().iter().zip(j.values()) {
            prop_assert!((x - y).abs() <= 1e-8, "{:?} vs {:?}", t.values(), j.values());
        }
    }
}

#[test]
fn classical_spread_of_simple_graphs_is_at_most_two_over_root_three() {
    for n in 1..=7 {
        let r = exhaustive(n, SpreadQuery::new(0, 0), Space::Simple, 4).unwrap();
        assert!(r.best_ratio <= max_spread_simple() + 1e-9, "n={n}: {}", r.best_ratio);
    }
}

#[test]
fn exhaustive_maxima_respect_the_upper_bounds() {
    for n in 2..=5 {
        for i in 0..n {
            for j in 0..n {
                let q = SpreadQuery::new(i, j);
                let bound = if i == 0 { ub_row0(j) } else { ub_general(i, j).unwrap() };
                let l = exhaustive(n, q, Space::Looped, 4).unwrap();
                let s = exhaustive(n, q, Space::Simple, 4).unwrap();
                assert!(l.best_value <= n as f64 * bound + 1e-9);
                assert!(s.best_value <= l.best_value + 1e-9);
            }
        }
    }
}
