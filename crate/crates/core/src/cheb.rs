//! Chebyshev abscissae, affine domain maps, Gauss-Chebyshev coefficient
//! quadrature and Clenshaw evaluation of 1D series.

use std::f64::consts::PI;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A closed interval `[a, b]` with `a < b`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    a: f64,
    b: f64,
}

impl Interval {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if !(a.is_finite() && b.is_finite()) || a >= b {
            return Err(Error::invalid(format!(
                "interval requires finite a < b, got [{a}, {b}]"
            )));
        }
        Ok(Self { a, b })
    }

    /// The reference interval `[-1, 1]`.
    pub fn reference() -> Self {
        Self { a: -1.0, b: 1.0 }
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn width(&self) -> f64 {
        self.b - self.a
    }

    pub fn contains(&self, x: f64) -> bool {
        x >= self.a && x <= self.b
    }

    /// Maps `t` in `[-1, 1]` onto this interval.
    pub fn to_domain(&self, t: f64) -> f64 {
        self.a + (self.b - self.a) * (t + 1.0) / 2.0
    }

    /// Inverse of [`Interval::to_domain`].
    pub fn to_reference(&self, x: f64) -> f64 {
        (2.0 * x - self.a - self.b) / (self.b - self.a)
    }

    pub(crate) fn check(&self, x: f64) -> Result<()> {
        if self.contains(x) {
            Ok(())
        } else {
            Err(Error::OutOfDomain {
                point: vec![x],
                domain: self.to_string(),
            })
        }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.a, self.b)
    }
}

pub fn affine_to_domain(interval: &Interval, t: f64) -> f64 {
    interval.to_domain(t)
}

pub fn affine_to_reference(interval: &Interval, x: f64) -> f64 {
    interval.to_reference(x)
}

/// Roots of `T_n`: `t_l = cos((l - 1/2) pi / n)` for `l = 1..=n`, strictly decreasing.
pub fn cheb_points(n: usize) -> Result<Vec<f64>> {
    if n == 0 {
        return Err(Error::invalid("need at least one Chebyshev point"));
    }
    let nf = n as f64;
    Ok((1..=n)
        .map(|l| ((l as f64 - 0.5) * PI / nf).cos())
        .collect())
}

/// `T_k(t)` by the three-term recurrence.
pub fn chebyshev_t(k: usize, t: f64) -> f64 {
    match k {
        0 => 1.0,
        1 => t,
        _ => {
            let (mut prev, mut cur) = (1.0, t);
            for _ in 1..k {
                let next = 2.0 * t * cur - prev;
                prev = cur;
                cur = next;
            }
            cur
        }
    }
}

/// Fills `out[k] = T_k(t)` for `k < out.len()`.
pub(crate) fn chebyshev_t_all(t: f64, out: &mut [f64]) {
    if out.is_empty() {
        return;
    }
    out[0] = 1.0;
    if out.len() > 1 {
        out[1] = t;
    }
    for k in 2..out.len() {
        out[k] = 2.0 * t * out[k - 1] - out[k - 2];
    }
}

/// Backward recurrence; returns `(b_1, b_2)` so that
/// `sum_{k>=0} c_k T_k(t) = c_0 + t b_1 - b_2`.
fn clenshaw_tail(coeffs: &[f64], t: f64) -> (f64, f64) {
    let (mut b1, mut b2) = (0.0, 0.0);
    let two_t = 2.0 * t;
    for &c in coeffs.iter().skip(1).rev() {
        let b0 = c + two_t * b1 - b2;
        b2 = b1;
        b1 = b0;
    }
    (b1, b2)
}

/// Plain sum `sum_j coeffs[j] T_j(t)`, first term not halved.
pub fn eval_cheb_plain(coeffs: &[f64], t: f64) -> f64 {
    match coeffs.first() {
        None => 0.0,
        Some(&c0) => {
            let (b1, b2) = clenshaw_tail(coeffs, t);
            c0 + t * b1 - b2
        }
    }
}

/// Primed sum `c_0/2 + sum_{j>=1} c_j T_j(t)`.
pub fn eval_cheb_primed(coeffs: &[f64], t: f64) -> f64 {
    match coeffs.first() {
        None => 0.0,
        Some(&c0) => {
            let (b1, b2) = clenshaw_tail(coeffs, t);
            c0 / 2.0 + t * b1 - b2
        }
    }
}

/// Truncated Chebyshev series `c_0/2 + sum c_j T_j` on an interval.
#[derive(Debug, Clone, PartialEq)]
pub struct ChebyshevSeries1D {
    coeffs: Vec<f64>,
    interval: Interval,
    n_quad: usize,
}

impl ChebyshevSeries1D {
    pub fn new(coeffs: Vec<f64>, interval: Interval, n_quad: usize) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::invalid("series needs at least one coefficient"));
        }
        if coeffs.iter().any(|c| !c.is_finite()) {
            return Err(Error::invalid("series coefficients must be finite"));
        }
        if n_quad == 0 {
            return Err(Error::invalid("quadrature size must be positive"));
        }
        Ok(Self {
            coeffs,
            interval,
            n_quad,
        })
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn interval(&self) -> Interval {
        self.interval
    }

    pub fn n_quad(&self) -> usize {
        self.n_quad
    }

    /// Coefficient `c_m`, zero for indices past the stored degree.
    pub fn coeff(&self, m: usize) -> f64 {
        self.coeffs.get(m).copied().unwrap_or(0.0)
    }

    /// Keeps `c_0..c_degree`.
    pub fn truncated(&self, degree: usize) -> Self {
        let keep = (degree + 1).min(self.coeffs.len());
        Self {
            coeffs: self.coeffs[..keep].to_vec(),
            ..*self
        }
    }

    pub fn eval(&self, x: f64) -> Result<f64> {
        self.interval.check(x)?;
        Ok(eval_cheb_primed(&self.coeffs, self.interval.to_reference(x)))
    }
}

/// Samples `f` at the mapped nodes of `nodes` (reference abscissae), rejecting non-finite values.
pub(crate) fn sample_1d<F>(f: &F, interval: &Interval, nodes: &[f64]) -> Result<Vec<f64>>
where
    F: Fn(f64) -> f64 + ?Sized,
{
    nodes
        .iter()
        .map(|&t| {
            let x = interval.to_domain(t);
            let value = f(x);
            if value.is_finite() {
                Ok(value)
            } else {
                Err(Error::Sampling { x, y: None, value })
            }
        })
        .collect()
}

/// Gauss-Chebyshev projection `c_k = (2/n) sum_l f(G(t_l)) T_k(t_l)`, `k = 0..=degree`.
pub fn cheb_coeffs_1d<F>(f: &F, interval: Interval, degree: usize, n: usize) -> Result<ChebyshevSeries1D>
where
    F: Fn(f64) -> f64 + ?Sized,
{
    let nodes = cheb_points(n)?;
    cheb_coeffs_on_nodes(f, interval, degree, &nodes)
}

/// Same as [`cheb_coeffs_1d`] with a precomputed node set from [`cheb_points`].
pub fn cheb_coeffs_on_nodes<F>(
    f: &F,
    interval: Interval,
    degree: usize,
    nodes: &[f64],
) -> Result<ChebyshevSeries1D>
where
    F: Fn(f64) -> f64 + ?Sized,
{
    let n = nodes.len();
    if n == 0 {
        return Err(Error::invalid("need at least one quadrature node"));
    }
    if n < degree + 1 {
        log::warn!("{n} quadrature nodes cannot resolve Chebyshev degree {degree}");
    }
    let values = sample_1d(f, &interval, nodes)?;
    let mut coeffs = vec![0.0; degree + 1];
    let mut t_vals = vec![0.0; degree + 1];
    for (&t, &v) in nodes.iter().zip(&values) {
        chebyshev_t_all(t, &mut t_vals);
        for (c, &tk) in coeffs.iter_mut().zip(&t_vals) {
            *c += v * tk;
        }
    }
    let scale = 2.0 / n as f64;
    coeffs.iter_mut().for_each(|c| *c *= scale);
    ChebyshevSeries1D::new(coeffs, interval, n)
}
