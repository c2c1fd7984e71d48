//! Graphs with at most one self-loop per vertex.
//!
//! A [`LoopedGraph`] is a symmetric 0/1 adjacency matrix whose diagonal is
//! free: `a_ii = 1` iff vertex `i` carries a loop. Simple graphs are the
//! special case of an all-zero diagonal. Every operation here is a pure
//! function returning a new graph.

use std::fmt;

use thiserror::Error;

use crate::spectral::SymMatrix;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("a graph needs at least one vertex")]
    NoVertices,
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("duplicate edge {u}-{v} (multi-edges are not representable)")]
    DuplicateEdge { u: usize, v: usize },
    #[error("adjacency has {len} entries, expected {n}x{n}")]
    DimensionMismatch { n: usize, len: usize },
    #[error("adjacency entry ({row},{col}) is {value}, expected 0 or 1")]
    NotBinary { row: usize, col: usize, value: u8 },
    #[error("adjacency is not symmetric at ({row},{col})")]
    NotSymmetric { row: usize, col: usize },
    #[error("blowup factor must be at least 1")]
    ZeroBlowup,
    #[error("not a permutation of 0..{n}")]
    InvalidPermutation { n: usize },
    #[error("canonical form supports at most {limit} vertices, got {n}")]
    TooLargeForCanonical { n: usize, limit: usize },
}

/// Symmetric 0/1 adjacency matrix with a free diagonal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LoopedGraph {
    n: usize,
    adj: Vec<u8>,
}

/// Row sums of the adjacency matrix (a loop counts once) and their mean.
#[derive(Debug, Clone, PartialEq)]
pub struct DegreeProfile {
    pub degrees: Vec<usize>,
    pub average: f64,
}

impl DegreeProfile {
    pub fn total(&self) -> usize {
        self.degrees.iter().sum()
    }
}

impl LoopedGraph {
    /// The graph on `n` vertices with no edges and no loops.
    pub fn empty(n: usize) -> Result<Self, GraphError> {
        if n == 0 {
            return Err(GraphError::NoVertices);
        }
        Ok(Self { n, adj: vec![0; n * n] })
    }

    /// Builds a graph from unordered edges and a loop set.
    ///
    /// An edge `(v, v)` is accepted as a loop. Repeating an edge or a loop is
    /// an error since multigraphs cannot be represented.
    pub fn build(n: usize, edges: &[(usize, usize)], loops: &[usize]) -> Result<Self, GraphError> {
        let mut g = Self::empty(n)?;
        let pairs = edges.iter().copied().chain(loops.iter().map(|&v| (v, v)));
        for (u, v) in pairs {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: w, n });
                }
            }
            if g.entry(u, v) {
                return Err(GraphError::DuplicateEdge {
                    u: u.min(v),
                    v: u.max(v),
                });
            }
            g.set(u, v, true);
        }
        Ok(g)
    }

    /// Wraps a row-major `n*n` matrix after checking symmetry and 0/1 entries.
    pub fn from_adjacency(n: usize, adj: Vec<u8>) -> Result<Self, GraphError> {
        if n == 0 {
            return Err(GraphError::NoVertices);
        }
        if adj.len() != n * n {
            return Err(GraphError::DimensionMismatch { n, len: adj.len() });
        }
        for r in 0..n {
            for c in 0..n {
                let value = adj[r * n + c];
                if value > 1 {
                    return Err(GraphError::NotBinary { row: r, col: c, value });
                }
                if value != adj[c * n + r] {
                    return Err(GraphError::NotSymmetric { row: r, col: c });
                }
            }
        }
        Ok(Self { n, adj })
    }

    /// Builds the graph from a closure over the upper triangle (`u <= v`).
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> bool) -> Result<Self, GraphError> {
        let mut g = Self::empty(n)?;
        for u in 0..n {
            for v in u..n {
                if f(u, v) {
                    g.set(u, v, true);
                }
            }
        }
        Ok(g)
    }

    pub(crate) fn set(&mut self, u: usize, v: usize, on: bool) {
        let bit = u8::from(on);
        self.adj[u * self.n + v] = bit;
        self.adj[v * self.n + u] = bit;
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entry(&self, u: usize, v: usize) -> bool {
        self.adj[u * self.n + v] == 1
    }

    pub fn has_loop(&self, v: usize) -> bool {
        self.entry(v, v)
    }

    /// Row-major adjacency entries.
    pub fn adjacency(&self) -> &[u8] {
        &self.adj
    }

    /// Off-diagonal edges `(u, v)` with `u < v`, in row-major order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| {
            ((u + 1)..self.n)
                .filter(move |&v| self.entry(u, v))
                .map(move |v| (u, v))
        })
    }

    pub fn loops(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&v| self.has_loop(v))
    }

    pub fn loop_count(&self) -> usize {
        self.loops().count()
    }

    pub fn edge_count(&self) -> usize {
        self.edges().count()
    }

    /// True when the diagonal is all zero, i.e. the graph lies in S_n.
    pub fn is_simple(&self) -> bool {
        self.loop_count() == 0
    }

    pub fn degree_profile(&self) -> DegreeProfile {
        let degrees: Vec<usize> = self
            .adj
            .chunks(self.n)
            .map(|row| row.iter().map(|&b| b as usize).sum())
            .collect();
        let average = degrees.iter().sum::<usize>() as f64 / self.n as f64;
        DegreeProfile { degrees, average }
    }

    pub fn to_matrix(&self) -> SymMatrix {
        SymMatrix::from_fn(self.n, |r, c| f64::from(self.adj[r * self.n + c]))
    }

    /// The same graph with every loop removed.
    pub fn underlying_simple(&self) -> Self {
        let mut g = self.clone();
        for v in 0..self.n {
            g.set(v, v, false);
        }
        g
    }

    /// The `t`-blowup, with adjacency `A ⊗ J_t`.
    ///
    /// Vertex `v` becomes the block `v*t .. (v+1)*t`. A looped vertex turns
    /// into a complete block with loops, a loopless one into an independent set.
    pub fn blowup(&self, t: usize) -> Result<Self, GraphError> {
        if t == 0 {
            return Err(GraphError::ZeroBlowup);
        }
        let m = self.n * t;
        let mut adj = vec![0u8; m * m];
        for r in 0..m {
            for c in 0..m {
                adj[r * m + c] = self.adj[(r / t) * self.n + c / t];
            }
        }
        Ok(Self { n: m, adj })
    }

    /// Adjacency `J - A`: every entry flipped, diagonal included.
    pub fn closed_complement(&self) -> Self {
        Self {
            n: self.n,
            adj: self.adj.iter().map(|&b| 1 - b).collect(),
        }
    }

    /// Block-diagonal union; `other`'s vertices follow `self`'s.
    pub fn disjoint_union(&self, other: &Self) -> Self {
        let n = self.n + other.n;
        let mut adj = vec![0u8; n * n];
        for r in 0..self.n {
            adj[r * n..r * n + self.n].copy_from_slice(&self.adj[r * self.n..(r + 1) * self.n]);
        }
        for r in 0..other.n {
            let row = (self.n + r) * n + self.n;
            adj[row..row + other.n].copy_from_slice(&other.adj[r * other.n..(r + 1) * other.n]);
        }
        Self { n, adj }
    }

    /// Renames vertex `v` to `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self, GraphError> {
        let n = self.n;
        let mut seen = vec![false; n];
        if perm.len() != n {
            return Err(GraphError::InvalidPermutation { n });
        }
        for &p in perm {
            if p >= n || std::mem::replace(&mut seen[p], true) {
                return Err(GraphError::InvalidPermutation { n });
            }
        }
        let mut adj = vec![0u8; n * n];
        for u in 0..n {
            for v in 0..n {
                adj[perm[u] * n + perm[v]] = self.adj[u * n + v];
            }
        }
        Ok(Self { n, adj })
    }

    /// Loop-respecting isomorphism test via canonical forms.
    pub fn is_isomorphic(&self, other: &Self) -> Result<bool, GraphError> {
        if self.n != other.n {
            return Ok(false);
        }
        Ok(self.canonical_form()? == other.canonical_form()?)
    }
}

impl fmt::Debug for LoopedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "LoopedGraph(n={})", self.n)?;
        for row in self.adj.chunks(self.n) {
            let line: String = row.iter().map(|&b| if b == 1 { '1' } else { '.' }).collect();
            writeln!(f, "  {line}")?;
        }
        Ok(())
    }
}
