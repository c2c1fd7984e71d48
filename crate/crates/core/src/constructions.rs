//! Named families of extremal and conjectured-extremal looped graphs, and
//! the Sylvester Hadamard matrices behind the equality construction.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::graph::{GraphError, LoopedGraph};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConstructionError {
    #[error("Sylvester exponent must be at least 1")]
    ZeroExponent,
    #[error("no symmetric trace-zero Hadamard matrix of order {order} in the factory (order must be a power of two)")]
    NoHadamard { order: usize },
    #[error("parameter {name} = {value} out of range: {reason}")]
    Parameter {
        name: &'static str,
        value: usize,
        reason: &'static str,
    },
    #[error("unknown construction '{0}'")]
    UnknownFamily(String),
    #[error("bad construction spec '{spec}': {reason}")]
    BadSpec { spec: String, reason: String },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// A ±1 matrix with `H·Hᵀ = m·I`.
#[derive(Clone, PartialEq, Eq)]
pub struct HadamardMatrix {
    order: usize,
    entries: Vec<i8>,
}

impl HadamardMatrix {
    /// Sylvester matrix of order `2^m`, built by `H_{2s} = [[H, H], [H, −H]]` from `H_2`.
    pub fn sylvester(m: u32) -> Result<Self, ConstructionError> {
        if m == 0 {
            return Err(ConstructionError::ZeroExponent);
        }
        let mut h = Self {
            order: 2,
            entries: vec![1, 1, 1, -1],
        };
        for _ in 1..m {
            let s = h.order;
            let order = 2 * s;
            let mut entries = vec![0i8; order * order];
            for r in 0..order {
                for c in 0..order {
                    let sign = if r >= s && c >= s { -1 } else { 1 };
                    entries[r * order + c] = sign * h.entries[(r % s) * s + c % s];
                }
            }
            h = Self { order, entries };
        }
        Ok(h)
    }

    /// Factory lookup by order; only Sylvester orders are available.
    pub fn of_order(order: usize) -> Result<Self, ConstructionError> {
        if order < 2 || !order.is_power_of_two() {
            return Err(ConstructionError::NoHadamard { order });
        }
        Self::sylvester(order.trailing_zeros())
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, r: usize, c: usize) -> i8 {
        self.entries[r * self.order + c]
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.order).all(|r| (0..self.order).all(|c| self.get(r, c) == self.get(c, r)))
    }

    pub fn trace(&self) -> i64 {
        (0..self.order).map(|i| i64::from(self.get(i, i))).sum()
    }

    /// Checks `H·Hᵀ = m·I` in integer arithmetic.
    pub fn is_hadamard(&self) -> bool {
        let m = self.order;
        (0..m).all(|r| {
            (0..m).all(|c| {
                let dot: i64 = (0..m)
                    .map(|k| i64::from(self.get(r, k)) * i64::from(self.get(c, k)))
                    .sum();
                dot == if r == c { m as i64 } else { 0 }
            })
        })
    }
}

impl fmt::Debug for HadamardMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "HadamardMatrix(order={})", self.order)?;
        for row in self.entries.chunks(self.order) {
            let line: String = row.iter().map(|&x| if x > 0 { '+' } else { '-' }).collect();
            writeln!(f, "  {line}")?;
        }
        Ok(())
    }
}

/// The `4k`-vertex graph with adjacency `½(K ⊗ H + J)`, `K = [[1, −1], [−1, 1]]`.
///
/// Needs a symmetric trace-zero Hadamard matrix of order `2k`, so `k` must be a
/// power of two. Its `(k, k−1)`-spread equals `4k/√(2k)`.
pub fn hadamard_equality_graph(k: usize) -> Result<LoopedGraph, ConstructionError> {
    if k == 0 {
        return Err(ConstructionError::Parameter {
            name: "k",
            value: 0,
            reason: "must be positive",
        });
    }
    let h = HadamardMatrix::of_order(2 * k)?;
    let m = h.order();
    let kron = [[1i8, -1], [-1, 1]];
    let n = 2 * m;
    let mut adj = vec![0u8; n * n];
    for r in 0..n {
        for c in 0..n {
            let x = kron[r / m][c / m] * h.get(r % m, c % m);
            // x ∈ {−1, 1}, so (x + 1) / 2 is exactly 0 or 1
            adj[r * n + c] = ((x + 1) / 2) as u8;
        }
    }
    Ok(LoopedGraph::from_adjacency(n, adj)?)
}

/// The path on four vertices with loops on both endpoints.
pub fn closed_path_p4() -> LoopedGraph {
    LoopedGraph::build(4, &[(0, 1), (1, 2), (2, 3)], &[0, 3]).expect("fixed graph")
}

/// `Q₃*`, the `k = 2` equality graph: 8 vertices, 4-regular counting loops,
/// loops on half of the vertices.
pub fn closed_cube_q3() -> LoopedGraph {
    hadamard_equality_graph(2).expect("order 4 is a Sylvester order")
}

fn complete(n: usize, looped: bool) -> LoopedGraph {
    LoopedGraph::from_fn(n, |u, v| looped || u != v).expect("n > 0")
}

/// `K_{j+2} ∪ K*_{j+1}`: a clique next to a clique with a loop on every vertex.
pub fn clique_union_closed(j: usize) -> Result<LoopedGraph, ConstructionError> {
    if j == 0 {
        return Err(ConstructionError::Parameter {
            name: "j",
            value: 0,
            reason: "must be at least 1",
        });
    }
    Ok(complete(j + 2, false).disjoint_union(&complete(j + 1, true)))
}

/// `K_{(i+1)*,i}`: complete bipartite `K_{i+1,i}` with loops on the larger side.
/// The looped side is vertices `0..=i`.
pub fn half_closed_bipartite(i: usize) -> Result<LoopedGraph, ConstructionError> {
    if i == 0 {
        return Err(ConstructionError::Parameter {
            name: "i",
            value: 0,
            reason: "must be at least 1",
        });
    }
    Ok(LoopedGraph::from_fn(2 * i + 1, |u, v| {
        let big = |w: usize| w <= i;
        if u == v {
            big(u)
        } else {
            big(u) != big(v)
        }
    })?)
}

/// `K_n^{t*}`: the complete graph with loops on its first `t` vertices.
pub fn clique_with_loops(n: usize, t: usize) -> Result<LoopedGraph, ConstructionError> {
    if n == 0 {
        return Err(ConstructionError::Parameter {
            name: "n",
            value: 0,
            reason: "must be positive",
        });
    }
    if t > n {
        return Err(ConstructionError::Parameter {
            name: "t",
            value: t,
            reason: "cannot exceed n",
        });
    }
    Ok(LoopedGraph::from_fn(n, |u, v| u != v || u < t)?)
}

/// Registry of the named families, keyed by their CLI spelling.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    /// `p4*`
    ClosedPath,
    /// `q3*`
    ClosedCube,
    /// `clique-union:j=J`
    CliqueUnion { j: usize },
    /// `half-closed-bipartite:i=I`
    HalfClosedBipartite { i: usize },
    /// `clique-loops:n=N,t=T`
    CliqueLoops { n: usize, t: usize },
    /// `hadamard-equality:k=K`
    HadamardEquality { k: usize },
}

impl Family {
    pub const NAMES: [&'static str; 6] = [
        "p4*",
        "q3*",
        "clique-union",
        "half-closed-bipartite",
        "clique-loops",
        "hadamard-equality",
    ];

    pub fn build(&self) -> Result<LoopedGraph, ConstructionError> {
        match *self {
            Family::ClosedPath => Ok(closed_path_p4()),
            Family::ClosedCube => Ok(closed_cube_q3()),
            Family::CliqueUnion { j } => clique_union_closed(j),
            Family::HalfClosedBipartite { i } => half_closed_bipartite(i),
            Family::CliqueLoops { n, t } => clique_with_loops(n, t),
            Family::HadamardEquality { k } => hadamard_equality_graph(k),
        }
    }

    /// Conventional name, e.g. `K_4 ∪ K_3*` or `K_(3)*,2`.
    pub fn label(&self) -> String {
        match *self {
            Family::ClosedPath => "P_4*".to_string(),
            Family::ClosedCube => "Q_3*".to_string(),
            Family::CliqueUnion { j } => format!("K_{} ∪ K_{}*", j + 2, j + 1),
            Family::HalfClosedBipartite { i } => format!("K_({})*,{}", i + 1, i),
            Family::CliqueLoops { n, t } => format!("K_{n}^({t})*"),
            Family::HadamardEquality { k } => format!("½(K⊗H_{} + J_{})", 2 * k, 4 * k),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Family::ClosedPath => write!(f, "p4*"),
            Family::ClosedCube => write!(f, "q3*"),
            Family::CliqueUnion { j } => write!(f, "clique-union:j={j}"),
            Family::HalfClosedBipartite { i } => write!(f, "half-closed-bipartite:i={i}"),
            Family::CliqueLoops { n, t } => write!(f, "clique-loops:n={n},t={t}"),
            Family::HadamardEquality { k } => write!(f, "hadamard-equality:k={k}"),
        }
    }
}

impl FromStr for Family {
    type Err = ConstructionError;

    fn from_str(spec: &str) -> Result<Self, Self::Err> {
        let bad = |reason: String| ConstructionError::BadSpec {
            spec: spec.to_string(),
            reason,
        };
        let (name, params) = spec.split_once(':').unwrap_or((spec, ""));
        let mut pairs: Vec<(String, usize)> = Vec::new();
        for item in params.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (key, value) = item
                .split_once('=')
                .ok_or_else(|| bad(format!("expected key=value, got '{item}'")))?;
            let value: usize = value
                .trim()
                .parse()
                .map_err(|_| bad(format!("'{value}' is not a nonnegative integer")))?;
            pairs.push((key.trim().to_string(), value));
        }
        let mut take = |key: &str| -> Result<usize, ConstructionError> {
            let pos = pairs
                .iter()
                .position(|(k, _)| k == key)
                .ok_or_else(|| bad(format!("missing parameter '{key}'")))?;
            Ok(pairs.remove(pos).1)
        };
        let family = match name.trim() {
            "p4*" => Family::ClosedPath,
            "q3*" => Family::ClosedCube,
            "clique-union" => Family::CliqueUnion { j: take("j")? },
            "half-closed-bipartite" => Family::HalfClosedBipartite { i: take("i")? },
            "clique-loops" => Family::CliqueLoops {
                n: take("n")?,
                t: take("t")?,
            },
            "hadamard-equality" => Family::HadamardEquality { k: take("k")? },
            other => return Err(ConstructionError::UnknownFamily(other.to_string())),
        };
        if let Some((key, _)) = pairs.first() {
            return Err(bad(format!("unexpected parameter '{key}'")));
        }
        Ok(family)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::{eigenvalues, spread, spread_ratio, SpreadQuery};

    fn assert_close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() <= tol, "{a} vs {b}");
    }

    #[test]
    fn sylvester_small_orders() {
        let h2 = HadamardMatrix::sylvester(1).unwrap();
        assert_eq!(h2.entries, vec![1, 1, 1, -1]);
        let h4 = HadamardMatrix::sylvester(2).unwrap();
        assert!(h4.is_hadamard() && h4.is_symmetric());
        assert_eq!(h4.trace(), 0);
        assert_eq!(HadamardMatrix::sylvester(0), Err(ConstructionError::ZeroExponent));
        for m in 1..=6 {
            let h = HadamardMatrix::sylvester(m).unwrap();
            assert!(h.is_hadamard() && h.is_symmetric() && h.trace() == 0, "m = {m}");
        }
    }

    #[test]
    fn sylvester_order_eight_spectrum() {
        let h = HadamardMatrix::sylvester(3).unwrap();
        let g = crate::spectral::SymMatrix::from_fn(8, |r, c| f64::from(h.get(r, c)));
        let values = crate::spectral::sorted_eigenvalues(&g).unwrap();
        let r = 8f64.sqrt();
        for (k, v) in values.iter().enumerate() {
            assert_close(*v, if k < 4 { r } else { -r }, 1e-10);
        }
    }

    #[test]
    fn no_hadamard_of_order_six() {
        assert_eq!(
            hadamard_equality_graph(3),
            Err(ConstructionError::NoHadamard { order: 6 })
        );
    }

    #[test]
    fn equality_graph_small_cases() {
        let g1 = hadamard_equality_graph(1).unwrap();
        assert_eq!(g1, LoopedGraph::build(4, &[(0, 1), (1, 3), (2, 3)], &[0, 2]).unwrap());
        assert!(g1.is_isomorphic(&closed_path_p4()).unwrap());

        let q3 = hadamard_equality_graph(2).unwrap();
        let deg = q3.degree_profile();
        assert!(deg.degrees.iter().all(|&d| d == 4));
        assert_eq!(q3.loop_count(), 4);
        assert_eq!(q3.edge_count(), 14);
        let values = eigenvalues(&q3).unwrap();
        let expected = [4.0, 2.0, 2.0, 0.0, 0.0, 0.0, -2.0, -2.0];
        for (v, e) in values.values().iter().zip(expected) {
            assert_close(*v, e, 1e-9);
        }
    }

    #[test]
    fn equality_graph_spectrum_shape() {
        for k in [1usize, 2, 4, 8] {
            let g = hadamard_equality_graph(k).unwrap();
            let values = eigenvalues(&g).unwrap();
            let v = values.values();
            let r = ((2 * k) as f64).sqrt();
            assert_close(v[0], (2 * k) as f64, 1e-9);
            for x in &v[1..=k] {
                assert_close(*x, r, 1e-9);
            }
            for x in &v[k + 1..3 * k] {
                assert_close(*x, 0.0, 1e-9);
            }
            for x in &v[3 * k..] {
                assert_close(*x, -r, 1e-9);
            }
            let ratio = spread_ratio(&g, SpreadQuery::new(k, k - 1)).unwrap();
            assert_close(ratio, 1.0 / r, 1e-9);
        }
    }

    #[test]
    fn clique_union_spectrum() {
        for j in 1..=8 {
            let g = clique_union_closed(j).unwrap();
            assert_eq!(g.n(), 2 * j + 3);
            let v = eigenvalues(&g).unwrap();
            let jf = j as f64;
            let mut expected = vec![jf + 1.0, jf + 1.0];
            expected.extend(std::iter::repeat_n(0.0, j));
            expected.extend(std::iter::repeat_n(-1.0, j + 1));
            for (a, b) in v.values().iter().zip(&expected) {
                assert_close(*a, *b, 1e-9);
            }
            assert_close(spread(&g, SpreadQuery::new(1, j)).unwrap(), jf + 2.0, 1e-9);
        }
        let j1 = spread_ratio(&clique_union_closed(1).unwrap(), SpreadQuery::new(1, 1)).unwrap();
        assert_close(j1, 0.6, 1e-12);
    }

    #[test]
    fn half_closed_bipartite_structure() {
        let g = half_closed_bipartite(4).unwrap();
        assert_eq!(g.n(), 9);
        assert_eq!(g.loop_count(), 5);
        assert_eq!(g.edge_count(), 20);

        let g1 = half_closed_bipartite(1).unwrap();
        let v = eigenvalues(&g1).unwrap();
        for (a, b) in v.values().iter().zip([2.0, 1.0, -1.0]) {
            assert_close(*a, b, 1e-9);
        }
        for (i, expected) in [(1usize, 2.0 / 3.0), (2, 0.6)] {
            let r = spread_ratio(&half_closed_bipartite(i).unwrap(), SpreadQuery::new(i, 0)).unwrap();
            assert_close(r, expected, 1e-12);
        }
    }

    #[test]
    fn clique_with_loops_extremes() {
        let k84 = clique_with_loops(8, 4).unwrap();
        assert_eq!(k84.loop_count(), 4);
        assert_eq!(k84.edge_count(), 28);
        assert!(clique_with_loops(3, 4).is_err());

        for j in 0..=8usize {
            let g = clique_with_loops(2 * j + 4, j + 2).unwrap();
            let jf = j as f64;
            let root = (4.0 * jf * jf + 16.0 * jf + 17.0).sqrt();
            let v = eigenvalues(&g).unwrap();
            assert_close(v.lambda(1), (2.0 * jf + 3.0 + root) / 2.0, 1e-9);
            // the smaller root lies in (−1, −1/2), above the −1 eigenvalues
            let small = (2.0 * jf + 3.0 - root) / 2.0;
            assert!(small > -1.0 && small < -0.5);
            assert!(v.values().iter().any(|x| (x - small).abs() < 1e-9));
            assert_close(v.lambda(g.n()), -1.0, 1e-9);
            if j >= 1 {
                let r = spread_ratio(&g, SpreadQuery::new(0, j)).unwrap();
                assert_close(r, (2.0 * jf + 5.0 + root) / (4.0 * (jf + 2.0)), 1e-9);
            }
        }
        let r = spread_ratio(&clique_with_loops(6, 3).unwrap(), SpreadQuery::new(0, 1)).unwrap();
        assert_close(r, (7.0 + 37f64.sqrt()) / 12.0, 1e-12);
    }

    #[test]
    fn loop_placement_does_not_matter() {
        // any t looped vertices in K_n give the same graph up to isomorphism
        let a = clique_with_loops(6, 3).unwrap();
        let b = LoopedGraph::from_fn(6, |u, v| u != v || u % 2 == 1).unwrap();
        assert!(a.is_isomorphic(&b).unwrap());
        let c = half_closed_bipartite(2).unwrap();
        let d = c.relabel(&[4, 0, 2, 1, 3]).unwrap();
        assert!(c.is_isomorphic(&d).unwrap());
    }

    #[test]
    fn family_specs() {
        assert_eq!("p4*".parse::<Family>().unwrap(), Family::ClosedPath);
        assert_eq!(
            "clique-loops:n=8,t=4".parse::<Family>().unwrap(),
            Family::CliqueLoops { n: 8, t: 4 }
        );
        assert_eq!(
            "hadamard-equality:k=4".parse::<Family>().unwrap(),
            Family::HadamardEquality { k: 4 }
        );
        assert!("clique-union".parse::<Family>().is_err());
        assert!("clique-union:j=2,x=1".parse::<Family>().is_err());
        assert!("petersen".parse::<Family>().is_err());
        for f in [
            Family::ClosedPath,
            Family::CliqueUnion { j: 3 },
            Family::HalfClosedBipartite { i: 4 },
            Family::CliqueLoops { n: 8, t: 4 },
        ] {
            assert_eq!(f.to_string().parse::<Family>().unwrap(), f);
        }
        assert_eq!(Family::CliqueUnion { j: 3 }.label(), "K_5 ∪ K_4*");
    }
}
