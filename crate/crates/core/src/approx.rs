//! Common evaluation surface shared by series, rational and piecewise approximants.

use crate::error::Result;

/// A computed value together with the denominator guard outcome.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Evaluation {
    pub value: f64,
    /// Set when the denominator magnitude fell below the pole threshold.
    pub pole: bool,
}

impl Evaluation {
    pub fn regular(value: f64) -> Self {
        Self { value, pole: false }
    }
}

/// Default pole threshold factor: `|Q| < POLE_FACTOR * ||q||_1` raises the flag.
pub const POLE_FACTOR: f64 = 1e-12;

pub trait Approximant1D: Sync {
    fn evaluate(&self, x: f64) -> Result<Evaluation>;

    /// Points where the approximant may jump: the partition nodes, endpoints included.
    fn breakpoints(&self) -> Vec<f64>;
}

pub trait Approximant2D: Sync {
    fn evaluate(&self, x: f64, y: f64) -> Result<Evaluation>;

    /// Partition nodes along x and y, endpoints included.
    fn breakpoints(&self) -> (Vec<f64>, Vec<f64>);
}
