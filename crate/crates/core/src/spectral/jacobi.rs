//! Cyclic Jacobi rotations. Slower than the tridiagonal pipeline but built
//! on an unrelated idea, which makes it a useful cross-check.

use super::{SpectralError, SymMatrix};

const MAX_SWEEPS: usize = 100;

/// Returns unsorted eigenvalues and the row-major eigenvector matrix (columns).
pub fn decompose(a: &SymMatrix) -> Result<(Vec<f64>, Vec<f64>), SpectralError> {
    let n = a.n();
    let at = |r: usize, c: usize| r * n + c;
    let mut m = a.data().to_vec();
    let mut v = vec![0.0; n * n];
    for p in 0..n {
        v[at(p, p)] = 1.0;
    }
    let scale = m.iter().map(|x| x * x).sum::<f64>().sqrt().max(1.0);

    for _ in 0..MAX_SWEEPS {
        let off: f64 = (0..n)
            .flat_map(|p| ((p + 1)..n).map(move |q| (p, q)))
            .map(|(p, q)| m[at(p, q)] * m[at(p, q)])
            .sum::<f64>()
            .sqrt();
        if off <= 1e-15 * scale {
            let values = (0..n).map(|p| m[at(p, p)]).collect();
            return Ok((values, v));
        }

        for p in 0..n {
            for q in (p + 1)..n {
                let apq = m[at(p, q)];
                if apq.abs() < f64::MIN_POSITIVE {
                    continue;
                }
                let theta = (m[at(q, q)] - m[at(p, p)]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + theta.hypot(1.0));
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / t.hypot(1.0);
                let s = t * c;

                // M <- Jᵀ M J with J the (p, q) plane rotation
                for k in 0..n {
                    let mkp = m[at(k, p)];
                    let mkq = m[at(k, q)];
                    m[at(k, p)] = c * mkp - s * mkq;
                    m[at(k, q)] = s * mkp + c * mkq;
                }
                for k in 0..n {
                    let mpk = m[at(p, k)];
                    let mqk = m[at(q, k)];
                    m[at(p, k)] = c * mpk - s * mqk;
                    m[at(q, k)] = s * mpk + c * mqk;
                }
                m[at(p, q)] = 0.0;
                m[at(q, p)] = 0.0;

                for k in 0..n {
                    let vkp = v[at(k, p)];
                    let vkq = v[at(k, q)];
                    v[at(k, p)] = c * vkp - s * vkq;
                    v[at(k, q)] = s * vkp + c * vkq;
                }
            }
        }
    }

    let off = (0..n)
        .flat_map(|p| ((p + 1)..n).map(move |q| (p, q)))
        .map(|(p, q)| m[at(p, q)].abs())
        .fold(0.0, f64::max);
    Err(SpectralError::NoConvergence {
        residual: off,
        iterations: MAX_SWEEPS,
    })
}
