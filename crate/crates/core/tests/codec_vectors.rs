//! Encodings produced by networkx for fixed graphs.

use spread_core::codec::{
    decode_any, graph6_decode, graph6_encode, search_graphs, sparse6_decode, sparse6_encode, Certificate,
};
use spread_core::constructions::closed_path_p4;
use spread_core::LoopedGraph;

fn graph(n: usize, edges: &[(usize, usize)]) -> LoopedGraph {
    let (loops, plain): (Vec<_>, Vec<_>) = edges.iter().partition(|(u, v)| u == v);
    let loops: Vec<usize> = loops.into_iter().map(|(v, _)| v).collect();
    LoopedGraph::build(n, &plain, &loops).unwrap()
}

fn petersen() -> LoopedGraph {
    graph(
        10,
        &[
            (0, 1),
            (0, 4),
            (0, 5),
            (1, 2),
            (1, 6),
            (2, 3),
            (2, 7),
            (3, 4),
            (3, 8),
            (4, 9),
            (5, 7),
            (5, 8),
            (6, 8),
            (6, 9),
            (7, 9),
        ],
    )
}

fn simple_cases() -> Vec<(&'static str, &'static str, LoopedGraph)> {
    let k5: Vec<(usize, usize)> = (0..5).flat_map(|u| (u + 1..5).map(move |v| (u, v))).collect();
    vec![
        ("IheA@GUAo", ":I`ES@obGkqegW~", petersen()),
        ("D~{", ":Da@_Q_QN", graph(5, &k5)),
        (
            "EhEG",
            ":EaYmC",
            graph(6, &[(0, 1), (0, 5), (1, 2), (2, 3), (3, 4), (4, 5)]),
        ),
        ("Ds_", ":DaGb", graph(5, &[(0, 1), (0, 2), (0, 3), (0, 4)])),
        ("B?", ":B", LoopedGraph::empty(3).unwrap()),
    ]
}

#[test]
fn simple_graphs_match_networkx() {
    for (g6, s6, g) in simple_cases() {
        assert_eq!(graph6_decode(g6).unwrap(), g, "{g6}");
        assert_eq!(graph6_encode(&g).unwrap(), g6);
        assert_eq!(sparse6_decode(s6).unwrap(), g, "{s6}");
        assert_eq!(sparse6_encode(&g), s6);
    }
}

#[test]
fn looped_graphs_match_networkx() {
    let cases = [
        (":CCm^", closed_path_p4()),
        (":B``", graph(3, &[(0, 1), (0, 2), (1, 1), (1, 2)])),
        (":DoC", graph(5, &[(0, 4), (4, 4)])),
    ];
    for (s6, g) in cases {
        assert_eq!(sparse6_decode(s6).unwrap(), g, "{s6}");
        assert_eq!(sparse6_encode(&g), s6);
        assert!(graph6_encode(&g).is_err());
    }
}

#[test]
fn four_byte_size_field() {
    let path: Vec<(usize, usize)> = (0..69).map(|v| (v, v + 1)).collect();
    let g = graph(70, &path);
    let s6 = r":~?@E_GEA_wQD`g]GaWiJbGuMbxAPchMSdXYVeHeYexq\fh}_gYIbhIUehyahiimkjYynkJEqkzQtlj]wmZiznJu}n{B@okNC";
    assert_eq!(sparse6_decode(s6).unwrap(), g);
    assert_eq!(sparse6_encode(&g), s6);
    let g6 = graph6_encode(&g).unwrap();
    assert!(g6.starts_with("~?@E"));
    assert_eq!(graph6_decode(&g6).unwrap(), g);
    assert_eq!(decode_any(&g6).unwrap(), g);
}

#[test]
fn registry_strings_round_trip() {
    let mut available = 0;
    for entry in search_graphs().entries() {
        match entry.certificate() {
            Certificate::Available(g) => {
                available += 1;
                assert_eq!(&sparse6_decode(&sparse6_encode(g)).unwrap(), g, "{}", entry.name);
                let (i, j) = entry.cell;
                assert!(i < g.n() && j < g.n());
            }
            Certificate::Unavailable { reason, .. } => assert_eq!(reason, "G₅ unavailable"),
        }
    }
    // six published strings plus the complements of G1 and G2
    assert_eq!(available, 8);
}

#[test]
fn complements_are_involutions() {
    for name in ["G1", "G2"] {
        let base = match search_graphs().get(name).unwrap().certificate() {
            Certificate::Available(g) => g.clone(),
            Certificate::Unavailable { .. } => unreachable!(),
        };
        let comp = match search_graphs().get(&format!("{name}c")).unwrap().certificate() {
            Certificate::Available(g) => g.clone(),
            Certificate::Unavailable { .. } => unreachable!(),
        };
        assert_eq!(comp.closed_complement(), base);
        assert_eq!(comp.loop_count() + base.loop_count(), base.n());
    }
}
