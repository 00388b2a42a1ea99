//! Spectral radius and Perron vector by shifted power iteration, an exact
//! characteristic-polynomial channel, and closed forms for the split families.

mod closed;
mod poly;

pub use closed::{
    lambda_f_even, lambda_f_odd, lambda_f_odd_printed, lambda_s_closed, odd_cubic_coeffs, FormulaMode,
};
pub use poly::{
    char_poly, compare_largest_roots, compare_spectral_radii, exact_spectral_radius, largest_root,
    largest_root_in, CharPoly, Dyadic, IntPoly, EXACT_MAX_VERTICES,
};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Bits, Graph};

pub const DEFAULT_TOL: f64 = 1e-10;
pub const DEFAULT_MAX_ITERATIONS: u64 = 1_000_000;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SpectralError {
    #[error("power iteration did not converge in {iterations} iterations (lambda {lambda}, residual {residual})")]
    NoConvergence {
        lambda: f64,
        residual: f64,
        iterations: u64,
    },
    #[error("tolerance must be positive and finite, got {0}")]
    Tolerance(f64),
    #[error("exact channel supports at most {EXACT_MAX_VERTICES} vertices, got {0}")]
    ExactCapacity(usize),
    #[error("characteristic polynomial coefficient overflow")]
    Overflow,
    #[error("root bracketing failed: {0}")]
    Bracket(String),
    #[error("invalid parameters: {0}")]
    Parameters(String),
    #[error("negative discriminant {0}")]
    NegativeDiscriminant(f64),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectralResult {
    pub lambda: f64,
    /// Max-normalized; zero outside the component attaining `lambda`.
    pub vector: Vec<f64>,
    /// `max_v |(A x)_v - lambda x_v|`
    pub residual: f64,
    pub iterations: u64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerOptions {
    pub tol: f64,
    pub max_iterations: u64,
}

impl Default for PowerOptions {
    fn default() -> Self {
        Self {
            tol: DEFAULT_TOL,
            max_iterations: DEFAULT_MAX_ITERATIONS,
        }
    }
}

pub fn spectral_radius(g: &Graph, tol: f64) -> Result<SpectralResult, SpectralError> {
    spectral_radius_with(
        g,
        PowerOptions {
            tol,
            ..PowerOptions::default()
        },
    )
}

pub fn spectral_radius_with(g: &Graph, opts: PowerOptions) -> Result<SpectralResult, SpectralError> {
    if !(opts.tol > 0.0 && opts.tol.is_finite()) {
        return Err(SpectralError::Tolerance(opts.tol));
    }
    let mut best: Option<(f64, u64, Vec<f64>, f64)> = None;
    let mut iterations = 0;
    for comp in g.components() {
        let (lambda, x, residual, iters) = component_radius(g, comp, opts)?;
        iterations += iters;
        if best.as_ref().is_none_or(|b| lambda > b.0) {
            best = Some((lambda, comp, x, residual));
        }
    }
    let (lambda, comp, x, residual) = best.expect("graphs have at least one vertex");
    let mut vector = vec![0.0; g.n()];
    for (k, v) in Bits(comp).enumerate() {
        vector[v] = x[k];
    }
    Ok(SpectralResult {
        lambda,
        vector,
        residual,
        iterations,
    })
}

/// Power iteration on `A + I` restricted to the connected vertex set `comp`.
/// Returns `(lambda, vector over comp in ascending vertex order, residual, iterations)`.
fn component_radius(
    g: &Graph,
    comp: u64,
    opts: PowerOptions,
) -> Result<(f64, Vec<f64>, f64, u64), SpectralError> {
    let verts: Vec<usize> = Bits(comp).collect();
    let m = verts.len();
    if m == 1 {
        return Ok((0.0, vec![1.0], 0.0, 0));
    }
    let mut index = [usize::MAX; 64];
    for (k, &v) in verts.iter().enumerate() {
        index[v] = k;
    }
    let nbrs: Vec<Vec<usize>> = verts
        .iter()
        .map(|&v| Bits(g.neighbors(v) & comp).map(|u| index[u]).collect())
        .collect();
    let apply = |x: &[f64], out: &mut [f64]| {
        for (k, nb) in nbrs.iter().enumerate() {
            out[k] = nb.iter().map(|&u| x[u]).sum();
        }
    };

    let mut x = vec![1.0; m];
    let mut ax = vec![0.0; m];
    let mut lambda = 0.0;
    let mut residual = f64::INFINITY;
    for it in 1..=opts.max_iterations {
        apply(&x, &mut ax);
        let num: f64 = x.iter().zip(&ax).map(|(a, b)| a * b).sum();
        let den: f64 = x.iter().map(|a| a * a).sum();
        lambda = num / den;
        residual = x
            .iter()
            .zip(&ax)
            .map(|(xi, axi)| (axi - lambda * xi).abs())
            .fold(0.0, f64::max);
        if residual <= opts.tol {
            return Ok((lambda, x, residual, it));
        }
        // x <- (A + I) x, max-normalized
        let mut top = 0.0f64;
        for (xi, axi) in x.iter_mut().zip(&ax) {
            *xi += axi;
            top = top.max(*xi);
        }
        for xi in x.iter_mut() {
            *xi /= top;
        }
    }
    Err(SpectralError::NoConvergence {
        lambda,
        residual,
        iterations: opts.max_iterations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complete(n: usize) -> Graph {
        Graph::empty(n).unwrap().complement()
    }

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn textbook_values() {
        for n in 2..=12 {
            let r = spectral_radius(&complete(n), 1e-12).unwrap();
            assert!(close(r.lambda, (n - 1) as f64, 1e-10));
        }
        let k27 = Graph::from_edges(9, (0..2).flat_map(|a| (2..9).map(move |b| (a, b)))).unwrap();
        let r = spectral_radius(&k27, 1e-12).unwrap();
        assert!(close(r.lambda, 14f64.sqrt(), 1e-10));
        assert!(r.vector.iter().all(|&v| v > 0.0));

        let two_k2 = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        let r = spectral_radius(&two_k2, 1e-12).unwrap();
        assert!(close(r.lambda, 1.0, 1e-12));
    }

    #[test]
    fn vector_normalization_and_residual() {
        let g = Graph::from_edges(7, [(0, 1), (1, 2), (2, 3), (3, 0), (4, 5)]).unwrap();
        let r = spectral_radius(&g, 1e-11).unwrap();
        assert!(close(r.lambda, 2.0, 1e-10));
        assert!(r.residual <= 1e-11);
        assert_eq!(r.vector.iter().cloned().fold(0.0, f64::max), 1.0);
        assert_eq!(&r.vector[4..], &[0.0, 0.0, 0.0]);
        assert!(r.vector[..4].iter().all(|&v| v > 0.0));
        // isolated vertices only
        let r = spectral_radius(&Graph::empty(3).unwrap(), 1e-10).unwrap();
        assert_eq!(r.lambda, 0.0);
        assert_eq!(r.vector, vec![1.0, 0.0, 0.0]);
    }

    #[test]
    fn bad_tolerance_and_cap() {
        let g = complete(3);
        assert!(matches!(spectral_radius(&g, 0.0), Err(SpectralError::Tolerance(_))));
        assert!(matches!(spectral_radius(&g, f64::NAN), Err(SpectralError::Tolerance(_))));
        let path = Graph::from_edges(30, (1..30).map(|i| (i - 1, i))).unwrap();
        let err = spectral_radius_with(
            &path,
            PowerOptions {
                tol: 1e-12,
                max_iterations: 3,
            },
        )
        .unwrap_err();
        match err {
            SpectralError::NoConvergence { iterations, residual, .. } => {
                assert_eq!(iterations, 3);
                assert!(residual > 1e-12);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn agrees_with_exact_channel() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..300 {
            let n = rng.gen_range(1..=12);
            let p = rng.gen_range(0.1..0.9);
            let edges: Vec<_> = (0..n)
                .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                .filter(|_| rng.gen_bool(p))
                .collect();
            let g = Graph::from_edges(n, edges).unwrap();
            let it = spectral_radius(&g, DEFAULT_TOL).unwrap().lambda;
            let exact = exact_spectral_radius(&g, 1e-13).unwrap();
            assert!(close(it, exact, 10.0 * DEFAULT_TOL), "{g:?}: {it} vs {exact}");
            let poly = largest_root(&char_poly(&g).unwrap(), 1e-13).unwrap();
            assert!(close(poly, exact, 1e-12));
        }
    }
}
