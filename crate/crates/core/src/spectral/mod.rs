//! Dense symmetric eigensolvers and the (i,j)-spread functional.
//!
//! Eigenvalues are always reported in nonincreasing order and indexed from 1
//! in user-facing APIs: `λ₁` is the largest. The (i,j)-spread of a graph on
//! `n` vertices is `λ_{i+1} − λ_{n−j}`.

pub mod jacobi;
pub mod tridiagonal;

use thiserror::Error;

use crate::graph::LoopedGraph;

/// Relative tolerance used for the residual check of a decomposition.
pub const RESIDUAL_TOL: f64 = 1e-10;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SpectralError {
    #[error("eigensolver did not converge after {iterations} iterations (residual {residual:e})")]
    NoConvergence { residual: f64, iterations: usize },
    #[error("decomposition residual {residual:e} exceeds tolerance {tolerance:e}")]
    ResidualTooLarge { residual: f64, tolerance: f64 },
    #[error("index pair (i={i}, j={j}) is out of range for a graph on {n} vertices")]
    InvalidQuery { i: usize, j: usize, n: usize },
}

/// Dense symmetric matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct SymMatrix {
    n: usize,
    data: Vec<f64>,
}

impl SymMatrix {
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut data = vec![0.0; n * n];
        for r in 0..n {
            for c in r..n {
                let x = f(r, c);
                data[r * n + c] = x;
                data[c * n + r] = x;
            }
        }
        Self { n, data }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn get(&self, r: usize, c: usize) -> f64 {
        self.data[r * self.n + c]
    }

    pub fn set(&mut self, r: usize, c: usize, x: f64) {
        self.data[r * self.n + c] = x;
        self.data[c * self.n + r] = x;
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    pub fn trace(&self) -> f64 {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }
}

/// Which dense solver produced a [`Spectrum`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Solver {
    Tridiagonal,
    Jacobi,
}

/// Eigenvalues in nonincreasing order, with an optional eigenbasis.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    values: Vec<f64>,
    /// Row-major matrix whose column `k` is the eigenvector of `values[k]`.
    basis: Option<Vec<f64>>,
    residual: f64,
}

impl Spectrum {
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn n(&self) -> usize {
        self.values.len()
    }

    /// `λ_k` with 1-based `k`.
    pub fn lambda(&self, k: usize) -> f64 {
        self.values[k - 1]
    }

    pub fn basis(&self) -> Option<&[f64]> {
        self.basis.as_deref()
    }

    /// Eigenvector for `λ_k` (1-based).
    pub fn vector(&self, k: usize) -> Option<Vec<f64>> {
        let n = self.n();
        self.basis.as_ref().map(|b| (0..n).map(|r| b[r * n + k - 1]).collect())
    }

    /// `max |A·V − V·Λ|` achieved by the solver.
    pub fn residual(&self) -> f64 {
        self.residual
    }

    pub fn spread(&self, q: SpreadQuery) -> Result<f64, SpectralError> {
        let n = self.n();
        q.validate(n)?;
        Ok(self.values[q.i] - self.values[n - 1 - q.j])
    }

    pub fn singular_values(&self) -> Vec<f64> {
        sorted_desc(self.values.iter().map(|x| x.abs()).collect())
    }
}

/// The index pair of `λ_{i+1} − λ_{n−j}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SpreadQuery {
    pub i: usize,
    pub j: usize,
}

impl SpreadQuery {
    pub fn new(i: usize, j: usize) -> Self {
        Self { i, j }
    }

    /// Both `i + 1` and `n − j` must lie in `1..=n`.
    pub fn validate(&self, n: usize) -> Result<(), SpectralError> {
        if self.i < n && self.j < n {
            Ok(())
        } else {
            Err(SpectralError::InvalidQuery {
                i: self.i,
                j: self.j,
                n,
            })
        }
    }
}

fn sorted_desc(mut values: Vec<f64>) -> Vec<f64> {
    // stable, so exact ties keep solver order
    values.sort_by(|a, b| b.total_cmp(a));
    values
}

/// Decomposes `a`, sorts, and checks the residual against [`RESIDUAL_TOL`].
pub fn decompose(a: &SymMatrix, solver: Solver, keep_basis: bool) -> Result<Spectrum, SpectralError> {
    decompose_with_tolerance(a, solver, keep_basis, RESIDUAL_TOL)
}

/// [`decompose`] with a caller-chosen relative residual tolerance: the
/// residual must not exceed `tol · n · max(1, max |a_rc|)`.
pub fn decompose_with_tolerance(
    a: &SymMatrix,
    solver: Solver,
    keep_basis: bool,
    tol: f64,
) -> Result<Spectrum, SpectralError> {
    let n = a.n();
    let (values, vectors) = match solver {
        Solver::Tridiagonal => {
            let (d, v) = tridiagonal::decompose(a, true)?;
            (d, v.expect("vectors requested"))
        }
        Solver::Jacobi => jacobi::decompose(a)?,
    };

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| values[y].total_cmp(&values[x]));
    let sorted_values: Vec<f64> = order.iter().map(|&k| values[k]).collect();
    let mut basis = vec![0.0; n * n];
    for (col, &k) in order.iter().enumerate() {
        for r in 0..n {
            basis[r * n + col] = vectors[r * n + k];
        }
    }

    let residual = residual(a, &sorted_values, &basis);
    let tolerance = tol * n as f64 * a.max_abs().max(1.0);
    if residual.is_nan() || residual > tolerance {
        return Err(SpectralError::ResidualTooLarge { residual, tolerance });
    }
    Ok(Spectrum {
        values: sorted_values,
        basis: keep_basis.then_some(basis),
        residual,
    })
}

fn residual(a: &SymMatrix, values: &[f64], basis: &[f64]) -> f64 {
    let n = a.n();
    let mut worst: f64 = 0.0;
    for r in 0..n {
        for k in 0..n {
            let av: f64 = (0..n).map(|c| a.get(r, c) * basis[c * n + k]).sum();
            worst = worst.max((av - values[k] * basis[r * n + k]).abs());
        }
    }
    worst
}

/// Eigenvalues without vectors or residual check. This is the hot path used
/// by the search loops.
pub fn sorted_eigenvalues(a: &SymMatrix) -> Result<Vec<f64>, SpectralError> {
    let (values, _) = tridiagonal::decompose(a, false)?;
    Ok(sorted_desc(values))
}

/// Full spectrum of a graph (basis dropped).
pub fn eigenvalues(g: &LoopedGraph) -> Result<Spectrum, SpectralError> {
    decompose(&g.to_matrix(), Solver::Tridiagonal, false)
}

/// Full spectrum of a graph with its orthonormal eigenbasis.
pub fn eigendecomposition(g: &LoopedGraph) -> Result<Spectrum, SpectralError> {
    decompose(&g.to_matrix(), Solver::Tridiagonal, true)
}

/// `λ_{i+1} − λ_{n−j}`; negative values are returned as-is.
pub fn spread(g: &LoopedGraph, q: SpreadQuery) -> Result<f64, SpectralError> {
    q.validate(g.n())?;
    eigenvalues(g)?.spread(q)
}

/// [`spread`] divided by the number of vertices.
pub fn spread_ratio(g: &LoopedGraph, q: SpreadQuery) -> Result<f64, SpectralError> {
    Ok(spread(g, q)? / g.n() as f64)
}

/// Absolute eigenvalues in nonincreasing order (A is symmetric).
pub fn singular_values(g: &LoopedGraph) -> Result<Vec<f64>, SpectralError> {
    Ok(eigenvalues(g)?.singular_values())
}
