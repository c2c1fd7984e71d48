//! Exhaustive and hill-climbing maximization of the (i,j)-spread over `L_n`
//! (free diagonal) or `S_n` (zero diagonal).
//!
//! Graphs are encoded as bitmasks over the upper triangle, row by row, with
//! the diagonal included for `L_n`. Values within [`SLACK`] of each other
//! count as equal.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::canonical::{CanonicalForm, CANONICAL_LIMIT};
use crate::codec::{sparse6_decode, sparse6_encode, CodecError};
use crate::graph::{GraphError, LoopedGraph};
use crate::spectral::{sorted_eigenvalues, SpectralError, SpreadQuery, SymMatrix};

/// Largest number of free matrix entries accepted by [`exhaustive`].
pub const EXHAUSTIVE_BITS: usize = 28;

/// Tolerance for grouping equal maxima.
pub const SLACK: f64 = 1e-9;

/// Number of ranges the enumeration is cut into, independent of thread count.
const CHUNKS: u64 = 64;

#[derive(Debug, Error)]
pub enum SearchError {
    #[error("{space} on {n} vertices has 2^{bits} graphs; exhaustive search is limited to 2^{limit}")]
    TooLarge {
        space: Space,
        n: usize,
        bits: usize,
        limit: usize,
    },
    #[error("need at least {min} vertices, got {n}")]
    TooSmall { n: usize, min: usize },
    #[error("thread pool: {0}")]
    Threads(String),
    #[error("malformed search record: {0}")]
    BadRecord(String),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Codec(#[from] CodecError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Space {
    /// Loops allowed.
    Looped,
    Simple,
}

impl Space {
    /// Matrix entries that vary in this space, row-major over `u ≤ v` (or `u < v`).
    pub fn positions(self, n: usize) -> Vec<(usize, usize)> {
        let off = usize::from(self == Space::Simple);
        (0..n).flat_map(|u| (u + off..n).map(move |v| (u, v))).collect()
    }

    pub fn contains(self, g: &LoopedGraph) -> bool {
        self == Space::Looped || g.is_simple()
    }
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Space::Looped => "L",
            Space::Simple => "S",
        })
    }
}

impl FromStr for Space {
    type Err = SearchError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "l" | "looped" => Ok(Space::Looped),
            "s" | "simple" => Ok(Space::Simple),
            other => Err(SearchError::BadRecord(format!("unknown space '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Exhaustive,
    HillClimb,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Exhaustive => "exhaustive",
            Method::HillClimb => "hill-climb",
        })
    }
}

impl FromStr for Method {
    type Err = SearchError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "exhaustive" => Ok(Method::Exhaustive),
            "hill-climb" => Ok(Method::HillClimb),
            other => Err(SearchError::BadRecord(format!("unknown method '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SearchRecord {
    pub n: usize,
    pub query: SpreadQuery,
    pub space: Space,
    pub best_value: f64,
    pub best_ratio: f64,
    /// Canonical representatives, sorted by canonical form. Beyond the
    /// canonical-form limit only the first maximizer found is kept.
    pub witnesses: Vec<LoopedGraph>,
    pub method: Method,
    pub seed: Option<u64>,
    /// Number of matrices evaluated.
    pub work: u64,
}

impl SearchRecord {
    /// One-line form: `key=value` fields separated by spaces, witnesses as
    /// comma-separated sparse6. Values use the shortest exact decimal.
    pub fn to_line(&self) -> String {
        let seed = self.seed.map_or_else(|| "-".to_string(), |s| s.to_string());
        let witnesses: Vec<String> = self.witnesses.iter().map(sparse6_encode).collect();
        format!(
            "n={} i={} j={} space={} method={} seed={} value={} ratio={} work={} witnesses={}",
            self.n,
            self.query.i,
            self.query.j,
            self.space,
            self.method,
            seed,
            self.best_value,
            self.best_ratio,
            self.work,
            witnesses.join(",")
        )
    }

    pub fn from_line(line: &str) -> Result<Self, SearchError> {
        let mut fields = BTreeMap::new();
        for part in line.split_whitespace() {
            let (k, v) = part
                .split_once('=')
                .ok_or_else(|| SearchError::BadRecord(format!("field '{part}' has no '='")))?;
            fields.insert(k, v);
        }
        let get = |k: &str| {
            fields
                .get(k)
                .copied()
                .ok_or_else(|| SearchError::BadRecord(format!("missing '{k}'")))
        };
        fn num<T: FromStr>(k: &str, v: &str) -> Result<T, SearchError> {
            v.parse()
                .map_err(|_| SearchError::BadRecord(format!("bad value for '{k}': {v}")))
        }
        let seed = match get("seed")? {
            "-" => None,
            s => Some(num("seed", s)?),
        };
        let witnesses = match get("witnesses")? {
            "" => Vec::new(),
            w => w.split(',').map(sparse6_decode).collect::<Result<_, _>>()?,
        };
        Ok(Self {
            n: num("n", get("n")?)?,
            query: SpreadQuery::new(num("i", get("i")?)?, num("j", get("j")?)?),
            space: get("space")?.parse()?,
            best_value: num("value", get("value")?)?,
            best_ratio: num("ratio", get("ratio")?)?,
            witnesses,
            method: get("method")?.parse()?,
            seed,
            work: num("work", get("work")?)?,
        })
    }
}

impl fmt::Display for SearchRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_line())
    }
}

fn matrix_of(n: usize, positions: &[(usize, usize)], mask: u64) -> SymMatrix {
    let mut a = SymMatrix::from_fn(n, |_, _| 0.0);
    for (b, &(u, v)) in positions.iter().enumerate() {
        if mask >> b & 1 == 1 {
            a.set(u, v, 1.0);
        }
    }
    a
}

fn graph_of(n: usize, positions: &[(usize, usize)], mask: u64) -> Result<LoopedGraph, GraphError> {
    let mut g = LoopedGraph::empty(n)?;
    for (b, &(u, v)) in positions.iter().enumerate() {
        if mask >> b & 1 == 1 {
            g.set(u, v, true);
        }
    }
    Ok(g)
}

fn evaluate(a: &SymMatrix, q: SpreadQuery) -> Result<f64, SpectralError> {
    let values = sorted_eigenvalues(a)?;
    Ok(values[q.i] - values[a.n() - 1 - q.j])
}

/// Best value in a chunk and every mask within [`SLACK`] of it, ascending.
#[derive(Debug)]
struct ChunkBest {
    value: f64,
    masks: Vec<(u64, f64)>,
}

fn scan(n: usize, positions: &[(usize, usize)], q: SpreadQuery, lo: u64, hi: u64) -> Result<ChunkBest, SpectralError> {
    let mut best = ChunkBest {
        value: f64::NEG_INFINITY,
        masks: Vec::new(),
    };
    for mask in lo..hi {
        let value = evaluate(&matrix_of(n, positions, mask), q)?;
        if value > best.value + SLACK {
            best.value = value;
            best.masks.retain(|&(_, v)| v >= value - SLACK);
            best.masks.push((mask, value));
        } else if value >= best.value - SLACK {
            best.value = best.value.max(value);
            best.masks.push((mask, value));
        }
    }
    Ok(best)
}

fn pool(threads: usize) -> Result<rayon::ThreadPool, SearchError> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads.max(1))
        .build()
        .map_err(|e| SearchError::Threads(e.to_string()))
}

/// Canonical representatives of `graphs`, deduplicated and sorted.
fn canonical_witnesses(graphs: impl IntoIterator<Item = LoopedGraph>) -> Result<Vec<LoopedGraph>, SearchError> {
    let mut forms: Vec<CanonicalForm> = graphs
        .into_iter()
        .map(|g| g.canonical_form())
        .collect::<Result<_, _>>()?;
    forms.sort();
    forms.dedup();
    Ok(forms.iter().map(CanonicalForm::to_graph).collect())
}

/// Exact maximum of the (i,j)-spread over every graph in the space.
///
/// The result does not depend on `threads`: the enumeration is cut into a
/// fixed set of ranges and merged in range order.
pub fn exhaustive(n: usize, q: SpreadQuery, space: Space, threads: usize) -> Result<SearchRecord, SearchError> {
    q.validate(n)?;
    let positions = space.positions(n);
    let bits = positions.len();
    if bits > EXHAUSTIVE_BITS {
        return Err(SearchError::TooLarge {
            space,
            n,
            bits,
            limit: EXHAUSTIVE_BITS,
        });
    }
    let total = 1u64 << bits;
    let chunks = CHUNKS.min(total);
    let bounds: Vec<(u64, u64)> = (0..chunks)
        .map(|c| (c * total / chunks, (c + 1) * total / chunks))
        .collect();

    let results: Vec<ChunkBest> = pool(threads)?.install(|| {
        bounds
            .par_iter()
            .map(|&(lo, hi)| scan(n, &positions, q, lo, hi))
            .collect::<Result<_, _>>()
    })?;

    let best_value = results.iter().map(|r| r.value).fold(f64::NEG_INFINITY, f64::max);
    let graphs = results
        .iter()
        .flat_map(|r| r.masks.iter())
        .filter(|&&(_, v)| v >= best_value - SLACK)
        .map(|&(mask, _)| graph_of(n, &positions, mask))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(SearchRecord {
        n,
        query: q,
        space,
        best_value,
        best_ratio: best_value / n as f64,
        witnesses: canonical_witnesses(graphs)?,
        method: Method::Exhaustive,
        seed: None,
        work: total,
    })
}

/// True iff nothing in the space beats `ratio · n` by more than [`SLACK`].
pub fn verify_no_better(
    n: usize,
    q: SpreadQuery,
    space: Space,
    ratio: f64,
    threads: usize,
) -> Result<bool, SearchError> {
    let record = exhaustive(n, q, space, threads)?;
    Ok(record.best_value <= ratio * n as f64 + SLACK)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClimbParams {
    pub seed: u64,
    pub restarts: usize,
    /// Step limit per restart.
    pub iters: usize,
    pub threads: usize,
}

struct Climb {
    value: f64,
    state: Vec<bool>,
    work: u64,
}

/// Random flips applied when a climb gets stuck.
const KICK: usize = 3;

fn load(a: &mut SymMatrix, positions: &[(usize, usize)], state: &[bool]) {
    for (&(u, v), &on) in positions.iter().zip(state) {
        a.set(u, v, f64::from(u8::from(on)));
    }
}

fn climb(
    n: usize,
    q: SpreadQuery,
    positions: &[(usize, usize)],
    seed: u64,
    restart: u64,
    iters: usize,
) -> Result<Climb, SpectralError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(restart);
    let mut state: Vec<bool> = positions.iter().map(|_| rng.random_bool(0.5)).collect();
    let mut a = SymMatrix::from_fn(n, |_, _| 0.0);
    load(&mut a, positions, &state);
    let mut value = evaluate(&a, q)?;
    let mut work = 1u64;
    let mut best = (value, state.clone());
    let plateau_limit = 2 * n * n;
    let mut plateau = 0usize;

    for _ in 0..iters {
        let mut top = f64::NEG_INFINITY;
        let mut moves: Vec<(usize, f64)> = Vec::with_capacity(positions.len());
        for (b, &(u, v)) in positions.iter().enumerate() {
            let old = a.get(u, v);
            a.set(u, v, 1.0 - old);
            let x = evaluate(&a, q)?;
            a.set(u, v, old);
            work += 1;
            top = top.max(x);
            moves.push((b, x));
        }
        let ties: Vec<usize> = moves.iter().filter(|m| m.1 >= top - SLACK).map(|m| m.0).collect();
        let pick = if top > value + SLACK {
            plateau = 0;
            ties[0]
        } else if top >= value - SLACK && plateau < plateau_limit {
            plateau += 1;
            ties[rng.random_range(0..ties.len())]
        } else {
            // local maximum: restart from the best state with a few random flips
            state.clone_from(&best.1);
            for _ in 0..KICK.min(positions.len()) {
                let b = rng.random_range(0..positions.len());
                state[b] = !state[b];
            }
            load(&mut a, positions, &state);
            value = evaluate(&a, q)?;
            work += 1;
            plateau = 0;
            continue;
        };
        let (u, v) = positions[pick];
        state[pick] = !state[pick];
        a.set(u, v, f64::from(u8::from(state[pick])));
        value = moves[pick].1;
        if value > best.0 + SLACK {
            best = (value, state.clone());
        }
    }
    Ok(Climb {
        value: best.0,
        state: best.1,
        work,
    })
}

/// Steepest-ascent search over single-entry flips with random restarts.
///
/// Each restart runs for `iters` steps. Equal-value moves are accepted up to
/// `2n²` times in a row; at a local maximum the best state of the restart is
/// perturbed by a few random flips and the climb resumes.
///
/// Restart `r` draws from stream `r` of a ChaCha8 generator seeded with
/// `seed`, so the record depends only on the parameters.
pub fn hill_climb(n: usize, q: SpreadQuery, space: Space, params: ClimbParams) -> Result<SearchRecord, SearchError> {
    if n < 2 {
        return Err(SearchError::TooSmall { n, min: 2 });
    }
    q.validate(n)?;
    let positions = space.positions(n);
    let runs: Vec<Climb> = pool(params.threads)?.install(|| {
        (0..params.restarts as u64)
            .into_par_iter()
            .map(|r| climb(n, q, &positions, params.seed, r, params.iters))
            .collect::<Result<_, _>>()
    })?;

    let best_value = runs.iter().map(|r| r.value).fold(f64::NEG_INFINITY, f64::max);
    let work = runs.iter().map(|r| r.work).sum();
    let mut graphs = Vec::new();
    for run in runs.iter().filter(|r| r.value >= best_value - SLACK) {
        let mut g = LoopedGraph::empty(n)?;
        for (&(u, v), &on) in positions.iter().zip(&run.state) {
            g.set(u, v, on);
        }
        graphs.push(g);
    }
    let witnesses = if n <= CANONICAL_LIMIT {
        canonical_witnesses(graphs)?
    } else {
        graphs.into_iter().take(1).collect()
    };
    Ok(SearchRecord {
        n,
        query: q,
        space,
        best_value,
        best_ratio: best_value / n as f64,
        witnesses,
        method: Method::HillClimb,
        seed: Some(params.seed),
        work,
    })
}
