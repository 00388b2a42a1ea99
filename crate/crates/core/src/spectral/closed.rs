//! Closed forms for the spectral radii of `S(n, r-3)` and `F(n, r-3)`.
//!
//! Each family has an equitable partition (clique, matched vertices and the
//! possible leftover vertex), and the largest eigenvalue of its quotient matrix
//! is the spectral radius. With `t = r - 3`:
//!
//! - `S(n,t)`: quotient `[[t-1, n-t], [t, 0]]`.
//! - `F(n,t)`, `n - t` even: quotient `[[t-1, n-t], [t, 1]]`, giving
//!   `(t + sqrt(4tn - (3r^2 - 14r + 11))) / 2`.
//! - `F(n,t)`, `n - t` odd: quotient `[[t-1, n-t-1, 1], [t, 1, 0], [t, 0, 0]]`,
//!   whose characteristic polynomial is
//!   `x^3 - t x^2 - (tn - (r^2 - 5r + 5)) x + t`.
//!
//! [`FormulaMode::Printed`] evaluates the alternative printed expressions: a
//! leading `r - 4` in the even case and `(1 - t) x^3 - (tn - (r^2-5r+5)) x + t`
//! in the odd case.

use serde::{Deserialize, Serialize};

use super::poly::{largest_root_in, Dyadic, IntPoly};
use super::SpectralError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FormulaMode {
    /// Agrees with the quotient matrix.
    #[default]
    Derived,
    Printed,
}

fn check(n: usize, r: usize) -> Result<(f64, f64, f64), SpectralError> {
    if r < 4 {
        return Err(SpectralError::Parameters(format!("r = {r} must be at least 4")));
    }
    if n <= r - 3 {
        return Err(SpectralError::Parameters(format!("n = {n} must exceed r - 3 = {}", r - 3)));
    }
    Ok((n as f64, r as f64, (r - 3) as f64))
}

fn sqrt_checked(d: f64) -> Result<f64, SpectralError> {
    if d < 0.0 {
        Err(SpectralError::NegativeDiscriminant(d))
    } else {
        Ok(d.sqrt())
    }
}

/// `(r - 4 + sqrt(4(r-3)n - (3r^2 - 16r + 20))) / 2`
pub fn lambda_s_closed(n: usize, r: usize) -> Result<f64, SpectralError> {
    let (n, r, t) = check(n, r)?;
    let root = sqrt_checked(4.0 * t * n - (3.0 * r * r - 16.0 * r + 20.0))?;
    Ok((r - 4.0 + root) / 2.0)
}

fn parity(n: usize, r: usize, want_even: bool) -> Result<(), SpectralError> {
    let even = (n + 3 - r).is_multiple_of(2);
    if even != want_even {
        return Err(SpectralError::Parameters(format!(
            "n - r + 3 = {} is {}",
            n + 3 - r,
            if even { "even" } else { "odd" }
        )));
    }
    Ok(())
}

/// Spectral radius of `F(n, r-3)` when `n - r + 3` is even.
pub fn lambda_f_even(n: usize, r: usize, mode: FormulaMode) -> Result<f64, SpectralError> {
    let (nf, rf, t) = check(n, r)?;
    parity(n, r, true)?;
    let root = sqrt_checked(4.0 * t * nf - (3.0 * rf * rf - 14.0 * rf + 11.0))?;
    let lead = match mode {
        FormulaMode::Derived => t,
        FormulaMode::Printed => rf - 4.0,
    };
    Ok((lead + root) / 2.0)
}

/// Coefficients of the odd-case cubic, highest degree first.
pub fn odd_cubic_coeffs(n: usize, r: usize) -> Result<[i64; 4], SpectralError> {
    check(n, r)?;
    let (n, r) = (n as i64, r as i64);
    let t = r - 3;
    Ok([1, -t, -(t * n - (r * r - 5 * r + 5)), t])
}

/// Spectral radius of `F(n, r-3)` when `n - r + 3` is odd: the largest root of
/// the odd-case cubic, bisected to within `tol`.
pub fn lambda_f_odd(n: usize, r: usize, tol: f64) -> Result<f64, SpectralError> {
    let c = odd_cubic_coeffs(n, r)?;
    parity(n, r, false)?;
    let p = IntPoly::from_i64(&[c[3], c[2], c[1], c[0]]);
    // every root of a quotient matrix is an eigenvalue of the graph, so all
    // roots lie in [-(n-1), n-1]
    let bound = n as i64;
    largest_root_in(&p, &Dyadic::integer(-bound), &Dyadic::integer(bound), tol)
}

/// Largest real root of the printed odd-case cubic
/// `(1 - t) x^3 - (tn - (r^2 - 5r + 5)) x + t`, or `None` if it has none.
pub fn lambda_f_odd_printed(n: usize, r: usize) -> Result<Option<f64>, SpectralError> {
    let (nf, rf, t) = check(n, r)?;
    parity(n, r, false)?;
    // ascending coefficients
    let p = [t, -(t * nf - (rf * rf - 5.0 * rf + 5.0)), 0.0, 1.0 - t];
    Ok(real_roots(&p).last().copied())
}

fn eval(p: &[f64], x: f64) -> f64 {
    p.iter().rev().fold(0.0, |acc, &c| acc * x + c)
}

/// Real roots of a small dense polynomial in ascending order, each once.
/// Roots of the derivative split the line into monotone pieces, each bisected.
fn real_roots(p: &[f64]) -> Vec<f64> {
    let mut p = p.to_vec();
    while p.len() > 1 && p.last() == Some(&0.0) {
        p.pop();
    }
    let d = p.len() - 1;
    if d == 0 {
        return Vec::new();
    }
    if d == 1 {
        return vec![-p[0] / p[1]];
    }
    let lead = p[d].abs();
    let bound = 1.0 + p[..d].iter().map(|c| c.abs() / lead).fold(0.0, f64::max);
    let deriv: Vec<f64> = p.iter().enumerate().skip(1).map(|(k, c)| k as f64 * c).collect();
    let mut cuts = vec![-bound];
    cuts.extend(real_roots(&deriv).into_iter().filter(|x| x.abs() < bound));
    cuts.push(bound);
    let mut roots: Vec<f64> = Vec::new();
    for w in cuts.windows(2) {
        let (mut lo, mut hi) = (w[0], w[1]);
        let (flo, fhi) = (eval(&p, lo), eval(&p, hi));
        if flo == 0.0 {
            roots.push(lo);
            continue;
        }
        if flo.signum() == fhi.signum() {
            continue;
        }
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid == lo || mid == hi {
                break;
            }
            if eval(&p, mid).signum() == flo.signum() {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        roots.push(0.5 * (lo + hi));
    }
    if eval(&p, bound) == 0.0 {
        roots.push(bound);
    }
    roots.dedup_by(|a, b| (*a - *b).abs() < 1e-12);
    roots
}
