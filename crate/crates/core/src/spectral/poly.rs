//! Exact characteristic polynomials and exact largest-root isolation.
//!
//! Characteristic polynomials of adjacency matrices are computed with
//! Berkowitz's division-free recurrence in checked `i128` arithmetic. Every such
//! polynomial has only real roots, so the number of roots above a point `x`
//! equals the number of sign changes in the coefficients of `p(x + y)`. Root
//! counting at dyadic points is done in big integers and is exact.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::SpectralError;
use crate::graph::Graph;

/// Largest vertex count accepted by the exact channel.
pub const EXACT_MAX_VERTICES: usize = 20;

/// `det(xI - A)` as integer coefficients, `coeffs[k]` multiplying `x^k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CharPoly {
    pub coeffs: Vec<i128>,
}

impl CharPoly {
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// The edge count, read off the `x^(n-2)` coefficient.
    pub fn edge_count(&self) -> usize {
        let n = self.degree();
        if n < 2 {
            0
        } else {
            (-self.coeffs[n - 2]) as usize
        }
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c as f64)
    }

    pub fn to_int_poly(&self) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }
}

pub fn char_poly(g: &Graph) -> Result<CharPoly, SpectralError> {
    let n = g.n();
    if n > EXACT_MAX_VERTICES {
        return Err(SpectralError::ExactCapacity(n));
    }
    let a: Vec<Vec<i128>> = (0..n)
        .map(|i| (0..n).map(|j| i128::from(g.has_edge(i, j))).collect())
        .collect();
    let desc = berkowitz(&a).ok_or(SpectralError::Overflow)?;
    Ok(CharPoly {
        coeffs: desc.into_iter().rev().collect(),
    })
}

/// Coefficients of `det(xI - A)`, highest degree first.
fn berkowitz(a: &[Vec<i128>]) -> Option<Vec<i128>> {
    let n = a.len();
    let mut poly = vec![1i128];
    for r in 0..n {
        // leading (r+1)x(r+1) block: [[A_r, col], [row, a_rr]]
        let row = &a[r][..r];
        let col: Vec<i128> = (0..r).map(|i| a[i][r]).collect();
        let mut toeplitz = Vec::with_capacity(r + 2);
        toeplitz.push(1i128);
        toeplitz.push(-a[r][r]);
        let mut v = col;
        for _ in 0..r {
            // -row . A_r^k . col
            let dot = row
                .iter()
                .zip(&v)
                .try_fold(0i128, |acc, (&x, &y)| acc.checked_add(x.checked_mul(y)?))?;
            toeplitz.push(dot.checked_neg()?);
            let mut next = vec![0i128; r];
            for (i, slot) in next.iter_mut().enumerate() {
                *slot = a[i][..r]
                    .iter()
                    .zip(&v)
                    .try_fold(0i128, |acc, (&x, &y)| acc.checked_add(x.checked_mul(y)?))?;
            }
            v = next;
        }
        let mut next = vec![0i128; r + 2];
        for (i, slot) in next.iter_mut().enumerate() {
            let mut acc = 0i128;
            for (j, &c) in poly.iter().enumerate() {
                if j > i {
                    break;
                }
                acc = acc.checked_add(toeplitz[i - j].checked_mul(c)?)?;
            }
            *slot = acc;
        }
        poly = next;
    }
    Some(poly)
}

/// Integer polynomial, `coeffs[k]` multiplying `x^k`, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.len() > 1 && coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(BigInt::zero());
        }
        Self { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_zero()
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    fn lead(&self) -> &BigInt {
        self.coeffs.last().expect("nonempty")
    }

    fn derivative(&self) -> Self {
        if self.degree() == 0 {
            return Self::new(vec![]);
        }
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * BigInt::from(k))
                .collect(),
        )
    }

    fn primitive(&self) -> Self {
        let content = self
            .coeffs
            .iter()
            .fold(BigInt::zero(), |acc, c| acc.gcd(c));
        if content.is_zero() {
            return self.clone();
        }
        let sign = if self.lead().is_negative() { -BigInt::one() } else { BigInt::one() };
        Self::new(self.coeffs.iter().map(|c| c / &content * &sign).collect())
    }

    /// Pseudo-remainder of `self` by `d`.
    fn pseudo_rem(&self, d: &Self) -> Self {
        let mut r = self.coeffs.clone();
        let dd = d.degree();
        let lc = d.lead().clone();
        while r.len() > dd && !(r.len() == 1 && r[0].is_zero()) {
            let shift = r.len() - 1 - dd;
            let top = r.last().expect("nonempty").clone();
            for c in r.iter_mut() {
                *c *= &lc;
            }
            for (k, dc) in d.coeffs.iter().enumerate() {
                r[k + shift] -= &top * dc;
            }
            r.pop();
            while r.len() > 1 && r.last().is_some_and(Zero::is_zero) {
                r.pop();
            }
        }
        Self::new(r)
    }

    /// Primitive greatest common divisor with positive leading coefficient.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = if self.degree() >= other.degree() {
            (self.primitive(), other.primitive())
        } else {
            (other.primitive(), self.primitive())
        };
        while !b.is_zero() {
            let r = a.pseudo_rem(&b);
            a = b;
            b = if r.is_zero() { r } else { r.primitive() };
        }
        a.primitive()
    }

    /// Exact division; `d` must divide `self` over the rationals with an
    /// integral quotient.
    fn div_exact(&self, d: &Self) -> Self {
        let mut r = self.coeffs.clone();
        let dd = d.degree();
        if self.degree() < dd {
            return Self::new(vec![]);
        }
        let mut q = vec![BigInt::zero(); self.degree() - dd + 1];
        for shift in (0..q.len()).rev() {
            let top = &r[shift + dd];
            let (coef, rem) = top.div_rem(d.lead());
            debug_assert!(rem.is_zero(), "inexact polynomial division");
            for (k, dc) in d.coeffs.iter().enumerate() {
                r[k + shift] -= &coef * dc;
            }
            q[shift] = coef;
        }
        Self::new(q)
    }

    /// Same roots, each with multiplicity one.
    pub fn squarefree(&self) -> Self {
        if self.degree() == 0 {
            return self.primitive();
        }
        let g = self.gcd(&self.derivative());
        self.primitive().div_exact(&g).primitive()
    }

    /// Sign of `p(num / 2^scale)`.
    pub fn sign_at(&self, at: &Dyadic) -> Ordering {
        let scaled = self.scaled(at.scale);
        let v = scaled
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * &at.num + c);
        v.sign_ordering()
    }

    /// `2^(scale * d) * p(X / 2^scale)`, an integer polynomial in `X`.
    fn scaled(&self, scale: u32) -> Vec<BigInt> {
        let d = self.degree();
        self.coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| c << (scale as usize * (d - k)))
            .collect()
    }

    /// Number of roots greater than `at`, counted with multiplicity.
    ///
    /// Exact only for polynomials whose roots are all real.
    pub fn roots_above(&self, at: &Dyadic) -> usize {
        let mut c = self.scaled(at.scale);
        // Taylor shift: coefficients of P(num + Y)
        let d = c.len() - 1;
        for i in 0..d {
            for k in (i..d).rev() {
                let t = &c[k + 1] * &at.num;
                c[k] += t;
            }
        }
        let mut changes = 0;
        let mut last = Ordering::Equal;
        for coeff in &c {
            let s = coeff.sign_ordering();
            if s == Ordering::Equal {
                continue;
            }
            if last != Ordering::Equal && s != last {
                changes += 1;
            }
            last = s;
        }
        changes
    }
}

trait SignOrdering {
    fn sign_ordering(&self) -> Ordering;
}

impl SignOrdering for BigInt {
    fn sign_ordering(&self) -> Ordering {
        if self.is_positive() {
            Ordering::Greater
        } else if self.is_negative() {
            Ordering::Less
        } else {
            Ordering::Equal
        }
    }
}

/// The rational `num / 2^scale`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dyadic {
    pub num: BigInt,
    pub scale: u32,
}

impl Dyadic {
    pub fn integer(v: i64) -> Self {
        Self {
            num: BigInt::from(v),
            scale: 0,
        }
    }

    /// Largest dyadic with `scale` fractional bits that is `<= x`.
    pub fn floor_of(x: f64, scale: u32) -> Self {
        Self {
            num: BigInt::from((x * f64::powi(2.0, scale as i32)).floor() as i64),
            scale,
        }
    }

    pub fn ceil_of(x: f64, scale: u32) -> Self {
        Self {
            num: BigInt::from((x * f64::powi(2.0, scale as i32)).ceil() as i64),
            scale,
        }
    }

    fn rescale(&self, scale: u32) -> BigInt {
        debug_assert!(scale >= self.scale);
        &self.num << (scale - self.scale) as usize
    }

    pub fn to_f64(&self) -> f64 {
        // numerators stay small relative to f64 range for the scales used here
        let bits = self.num.bits() as i64;
        if bits > 1000 {
            let shift = (bits - 60) as usize;
            let top = (&self.num >> shift).to_f64().unwrap_or(f64::NAN);
            top * f64::powi(2.0, shift as i32 - self.scale as i32)
        } else {
            self.num.to_f64().unwrap_or(f64::NAN) / f64::powi(2.0, self.scale as i32)
        }
    }
}

/// Interval `(lo, hi]` at a common scale holding exactly one root of interest.
#[derive(Debug, Clone)]
struct Bracket {
    lo: BigInt,
    hi: BigInt,
    scale: u32,
}

impl Bracket {
    fn from(lo: &Dyadic, hi: &Dyadic) -> Self {
        let scale = lo.scale.max(hi.scale);
        Self {
            lo: lo.rescale(scale),
            hi: hi.rescale(scale),
            scale,
        }
    }

    fn at(&self, num: &BigInt) -> Dyadic {
        Dyadic {
            num: num.clone(),
            scale: self.scale,
        }
    }

    fn refine(&mut self) {
        self.lo <<= 1;
        self.hi <<= 1;
        self.scale += 1;
    }

    fn mid(&self) -> BigInt {
        (&self.lo + &self.hi) >> 1
    }

    fn width(&self) -> f64 {
        Dyadic {
            num: &self.hi - &self.lo,
            scale: self.scale,
        }
        .to_f64()
    }

    /// Halve the bracket, keeping the largest root of `p` inside.
    fn bisect_largest(&mut self, p: &IntPoly) {
        self.refine();
        let mid = self.mid();
        if p.roots_above(&self.at(&mid)) > 0 {
            self.lo = mid;
        } else {
            self.hi = mid;
        }
    }
}

/// Largest root of a real-rooted polynomial inside `[lo, hi]`, to within `tol`.
///
/// Requires no roots above `hi` and at least one root at or above `lo`.
pub fn largest_root_in(p: &IntPoly, lo: &Dyadic, hi: &Dyadic, tol: f64) -> Result<f64, SpectralError> {
    if p.degree() == 0 {
        return Err(SpectralError::Bracket("constant polynomial has no roots".into()));
    }
    if p.roots_above(hi) != 0 {
        return Err(SpectralError::Bracket(format!(
            "roots above the upper end {}",
            hi.to_f64()
        )));
    }
    if p.roots_above(lo) == 0 {
        if p.sign_at(lo) == Ordering::Equal {
            return Ok(lo.to_f64());
        }
        return Err(SpectralError::Bracket(format!(
            "no root above the lower end {}",
            lo.to_f64()
        )));
    }
    let mut b = Bracket::from(lo, hi);
    while b.width() > tol {
        b.bisect_largest(p);
    }
    Ok(0.5 * (b.at(&b.lo).to_f64() + b.at(&b.hi).to_f64()))
}

/// Bounds enclosing every real root (Cauchy).
fn root_bound(p: &IntPoly) -> Dyadic {
    let lead = p.lead().abs();
    let max = p.coeffs[..p.degree()]
        .iter()
        .map(|c| c.abs())
        .max()
        .unwrap_or_else(BigInt::zero);
    let (q, r) = max.div_rem(&lead);
    let bound = q + if r.is_zero() { 0 } else { 1 } + 1;
    Dyadic {
        num: bound,
        scale: 0,
    }
}

/// Isolating bracket for the largest root of a squarefree real-rooted polynomial.
fn isolate_largest(p: &IntPoly) -> Bracket {
    let hi = root_bound(p);
    let lo = Dyadic {
        num: -hi.num.clone(),
        scale: 0,
    };
    let mut b = Bracket::from(&lo, &hi);
    while p.roots_above(&b.at(&b.lo)) > 1 {
        b.bisect_largest(p);
    }
    b
}

/// Exact comparison of the largest roots of two real-rooted polynomials.
pub fn compare_largest_roots(p: &IntPoly, q: &IntPoly) -> Ordering {
    let sp = p.squarefree();
    let sq = q.squarefree();
    if sp == sq {
        return Ordering::Equal;
    }
    let common = sp.gcd(&sq);
    let mut a = isolate_largest(&sp);
    let mut b = isolate_largest(&sq);
    loop {
        while a.scale < b.scale {
            a.refine();
        }
        while b.scale < a.scale {
            b.refine();
        }
        if a.hi <= b.lo {
            return Ordering::Less;
        }
        if b.hi <= a.lo {
            return Ordering::Greater;
        }
        if common.degree() > 0 {
            let lo = if a.lo > b.lo { &a.lo } else { &b.lo };
            let hi = if a.hi < b.hi { &a.hi } else { &b.hi };
            let inside = common.roots_above(&a.at(lo)) - common.roots_above(&a.at(hi));
            if inside > 0 {
                // the shared root is the only root of each polynomial in its bracket
                return Ordering::Equal;
            }
        }
        a.bisect_largest(&sp);
        b.bisect_largest(&sq);
    }
}

/// Largest adjacency eigenvalue through the exact channel, bracketed by the
/// average and maximum degree.
pub fn exact_spectral_radius(g: &Graph, tol: f64) -> Result<f64, SpectralError> {
    let p = char_poly(g)?.to_int_poly();
    let n = g.n();
    let twice_edges: usize = g.degrees().iter().sum();
    // floor(2e / n) and the maximum degree as integer brackets
    let lo = Dyadic::integer((twice_edges / n) as i64);
    let hi = Dyadic::integer(g.max_degree() as i64);
    largest_root_in(&p, &lo, &hi, tol)
}

/// Largest root of a characteristic polynomial using only the polynomial:
/// `[floor(2e/n), ceil(sqrt(2e))]`.
pub fn largest_root(p: &CharPoly, tol: f64) -> Result<f64, SpectralError> {
    let n = p.degree();
    let e = p.edge_count();
    let lo = Dyadic::integer(((2 * e) / n.max(1)) as i64);
    let hi = Dyadic::integer(((2 * e) as f64).sqrt().ceil() as i64);
    largest_root_in(&p.to_int_poly(), &lo, &hi, tol)
}

/// Exact comparison of two graphs' spectral radii.
pub fn compare_spectral_radii(g: &Graph, h: &Graph) -> Result<Ordering, SpectralError> {
    let p = char_poly(g)?.to_int_poly();
    let q = char_poly(h)?.to_int_poly();
    Ok(compare_largest_roots(&p, &q))
}
