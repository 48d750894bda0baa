#![allow(dead_code)]

use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// `T_k(t)` through the trigonometric definition, independent of the library recurrences.
pub fn t_trig(k: usize, t: f64) -> f64 {
    (k as f64 * t.clamp(-1.0, 1.0).acos()).cos()
}

/// Plain Chebyshev coefficients `g = sum_k a_k T_k` of a polynomial of degree
/// below `2m`, recovered by projection on `m` Chebyshev roots.
pub fn plain_projection(g: impl Fn(f64) -> f64, max_k: usize, m: usize) -> Vec<f64> {
    let nodes: Vec<f64> = (1..=m)
        .map(|l| ((l as f64 - 0.5) * std::f64::consts::PI / m as f64).cos())
        .collect();
    (0..=max_k)
        .map(|k| {
            let s: f64 = nodes.iter().map(|&t| g(t) * t_trig(k, t)).sum();
            if k == 0 {
                s / m as f64
            } else {
                2.0 * s / m as f64
            }
        })
        .collect()
}

/// Same as [`plain_projection`] for bivariate polynomials, on an `m x m` tensor grid.
pub fn plain_projection_2d(g: impl Fn(f64, f64) -> f64, max: (usize, usize), m: usize) -> Vec<Vec<f64>> {
    let nodes: Vec<f64> = (1..=m)
        .map(|l| ((l as f64 - 0.5) * std::f64::consts::PI / m as f64).cos())
        .collect();
    let weight = |k: usize| if k == 0 { 1.0 } else { 2.0 };
    (0..=max.0)
        .map(|i| {
            (0..=max.1)
                .map(|j| {
                    let mut s = 0.0;
                    for &x in &nodes {
                        for &y in &nodes {
                            s += g(x, y) * t_trig(i, x) * t_trig(j, y);
                        }
                    }
                    weight(i) * weight(j) * s / (m * m) as f64
                })
                .collect()
        })
        .collect()
}

/// Primed sum by direct evaluation of every term.
pub fn primed_direct(c: &[f64], t: f64) -> f64 {
    c.iter()
        .enumerate()
        .map(|(k, &ck)| if k == 0 { 0.5 * ck } else { ck * t_trig(k, t) })
        .sum()
}

pub fn plain_direct(c: &[f64], t: f64) -> f64 {
    c.iter().enumerate().map(|(k, &ck)| ck * t_trig(k, t)).sum()
}

pub fn plain_direct_2d(c: &[f64], shape: (usize, usize), x: f64, y: f64) -> f64 {
    let mut s = 0.0;
    for i in 0..shape.0 {
        for j in 0..shape.1 {
            s += c[i * shape.1 + j] * t_trig(i, x) * t_trig(j, y);
        }
    }
    s
}

/// Smooth test function `sum a_k cos(b_k t + phi_k)` with seeded parameters.
pub struct SmoothFn {
    terms: Vec<(f64, f64, f64)>,
}

impl SmoothFn {
    pub fn random(rng: &mut ChaCha8Rng) -> Self {
        let terms = (0..4)
            .map(|_| (rng.gen_range(-1.0..1.0), rng.gen_range(0.0..3.0), rng.gen_range(0.0..6.0)))
            .collect();
        Self { terms }
    }

    pub fn eval(&self, t: f64) -> f64 {
        self.terms.iter().map(|&(a, b, p)| a * (b * t + p).cos()).sum()
    }
}

pub fn random_vec(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect()
}
