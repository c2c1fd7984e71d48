//! Canonical labelling of looped graphs by pruned permutation search.
//!
//! Vertices are first split into an ordered equitable partition (loop bit and
//! degree, refined by neighbour colours). The canonical form is the minimum,
//! over all orderings that respect that partition, of the lower triangle of
//! the relabelled matrix read row by row (diagonal included). Because the
//! partition is isomorphism-invariant the minimum is too, and since the lower
//! triangle determines a symmetric matrix, equal forms mean isomorphic graphs.
//!
//! Two prunings keep this fast at the sizes we need: a branch is cut as soon
//! as its prefix exceeds the best found, and at each branch point only one
//! member of each twin class is tried (swapping twins is an automorphism that
//! fixes everything already placed).

use std::cmp::Ordering;

use crate::graph::{GraphError, LoopedGraph};

/// Largest order accepted by [`LoopedGraph::canonical_form`].
pub const CANONICAL_LIMIT: usize = 12;

/// Isomorphism-invariant encoding of a looped graph.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm {
    n: usize,
    /// Row `k` of the relabelled lower triangle, most significant bit = column 0.
    rows: Vec<u16>,
}

impl CanonicalForm {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Packed bit string of the lower triangle, row by row.
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut bits = Vec::with_capacity(self.n * (self.n + 1) / 2);
        for (k, &row) in self.rows.iter().enumerate() {
            for c in 0..=k {
                bits.push((row >> (k - c)) & 1 == 1);
            }
        }
        let mut out = vec![self.n as u8];
        out.extend(bits.chunks(8).map(|chunk| {
            chunk
                .iter()
                .enumerate()
                .fold(0u8, |acc, (i, &b)| acc | (u8::from(b) << (7 - i)))
        }));
        out
    }

    /// The canonically labelled representative.
    pub fn to_graph(&self) -> LoopedGraph {
        let n = self.n;
        LoopedGraph::from_fn(n, |u, v| {
            // u <= v: entry sits in row v, column u
            (self.rows[v] >> (v - u)) & 1 == 1
        })
        .expect("canonical form has at least one vertex")
    }
}

impl LoopedGraph {
    /// Canonical form for graphs with at most [`CANONICAL_LIMIT`] vertices.
    pub fn canonical_form(&self) -> Result<CanonicalForm, GraphError> {
        let n = self.n();
        if n > CANONICAL_LIMIT {
            return Err(GraphError::TooLargeForCanonical {
                n,
                limit: CANONICAL_LIMIT,
            });
        }
        let rows: Vec<u16> = (0..n)
            .map(|u| (0..n).fold(0u16, |acc, v| acc | (u16::from(self.entry(u, v)) << v)))
            .collect();
        let colours = refine(&rows);
        let twin = twin_classes(&rows);

        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&v| colours[v]);
        let slot_colour: Vec<usize> = order.iter().map(|&v| colours[v]).collect();

        let mut search = Search {
            rows: &rows,
            colours: &colours,
            twin: &twin,
            slot_colour: &slot_colour,
            placed: Vec::with_capacity(n),
            used: vec![false; n],
            current: Vec::with_capacity(n),
            best: None,
        };
        search.descend(Ordering::Equal);
        Ok(CanonicalForm {
            n,
            rows: search.best.expect("search visits at least one leaf"),
        })
    }
}

/// Colour refinement starting from (loop bit, degree). Returns colour ids
/// that are ordered by invariant signatures, never by vertex index.
fn refine(rows: &[u16]) -> Vec<usize> {
    let n = rows.len();
    let adjacent = |u: usize, v: usize| (rows[u] >> v) & 1 == 1;
    let initial: Vec<(bool, u32)> = (0..n).map(|v| (adjacent(v, v), rows[v].count_ones())).collect();
    let mut colours = relabel_signatures(&initial);
    loop {
        let signatures: Vec<(usize, Vec<usize>)> = (0..n)
            .map(|v| {
                let mut around: Vec<usize> = (0..n)
                    .filter(|&w| w != v && adjacent(v, w))
                    .map(|w| colours[w])
                    .collect();
                around.sort_unstable();
                (colours[v], around)
            })
            .collect();
        let next = relabel_signatures(&signatures);
        let count = |c: &[usize]| c.iter().max().map_or(0, |m| m + 1);
        if count(&next) == count(&colours) {
            return next;
        }
        colours = next;
    }
}

fn relabel_signatures<T: Ord + Clone>(signatures: &[T]) -> Vec<usize> {
    let mut distinct: Vec<T> = signatures.to_vec();
    distinct.sort();
    distinct.dedup();
    signatures
        .iter()
        .map(|s| distinct.binary_search(s).expect("signature present"))
        .collect()
}

/// `twin[v]` is the smallest vertex that `v` can be swapped with by an automorphism
/// of the form (u v): same loop bit and identical rows outside {u, v}.
fn twin_classes(rows: &[u16]) -> Vec<usize> {
    let n = rows.len();
    let mut twin: Vec<usize> = (0..n).collect();
    for v in 0..n {
        for u in 0..v {
            if twin[u] != u {
                continue;
            }
            let mask = !((1u16 << u) | (1u16 << v));
            let same_loop = ((rows[u] >> u) & 1) == ((rows[v] >> v) & 1);
            if same_loop && (rows[u] & mask) == (rows[v] & mask) {
                twin[v] = u;
                break;
            }
        }
    }
    twin
}

struct Search<'a> {
    rows: &'a [u16],
    colours: &'a [usize],
    twin: &'a [usize],
    slot_colour: &'a [usize],
    placed: Vec<usize>,
    used: Vec<bool>,
    current: Vec<u16>,
    best: Option<Vec<u16>>,
}

impl Search<'_> {
    /// `state` compares the current prefix with the same prefix of `best`.
    fn descend(&mut self, state: Ordering) {
        let k = self.placed.len();
        if k == self.rows.len() {
            if state == Ordering::Less || self.best.is_none() {
                self.best = Some(self.current.clone());
            }
            return;
        }
        let mut tried: Vec<usize> = Vec::new();
        for v in 0..self.rows.len() {
            if self.used[v] || self.colours[v] != self.slot_colour[k] {
                continue;
            }
            let class = self.twin[v];
            if tried.contains(&class) {
                continue;
            }
            tried.push(class);

            let row = self
                .placed
                .iter()
                .chain(std::iter::once(&v))
                .enumerate()
                .fold(0u16, |acc, (c, &w)| acc | (((self.rows[v] >> w) & 1) << (k - c)));
            let next = match (state, &self.best) {
                (Ordering::Equal, Some(best)) => row.cmp(&best[k]),
                (Ordering::Equal, None) => Ordering::Equal,
                (s, _) => s,
            };
            if next == Ordering::Greater {
                continue;
            }
            self.placed.push(v);
            self.used[v] = true;
            self.current.push(row);
            self.descend(next);
            self.current.pop();
            self.used[v] = false;
            self.placed.pop();
        }
    }
}
