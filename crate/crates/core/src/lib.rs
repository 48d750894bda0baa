//! Chebyshev series and Maehly Padé-Chebyshev approximants of univariate and
//! bivariate functions, globally and piecewise on tensor partitions.
//!
//! The piecewise rational constructions suppress Gibbs oscillations near jumps
//! and kinks without being told where the singularities are.

pub mod analysis;
pub mod approx;
pub mod cheb;
pub mod cheb2d;
pub mod error;
pub mod linalg;
pub mod pade1d;
pub mod pade2d;
pub mod piecewise1d;

pub use approx::{Approximant1D, Approximant2D, Evaluation};
pub use cheb::{cheb_coeffs_1d, cheb_points, ChebyshevSeries1D, Interval};
pub use cheb2d::{build_pi2dc, cheb_coeffs_2d, ChebyshevSeries2D, Partition2D, PiecewiseApprox2D, Rect};
pub use error::{CellFailure, Error, Result};
pub use pade1d::{build_pade_1d, PadeOrder1D, RationalCheb1D};
pub use pade2d::{build_pade_2d, build_pi2dpc, PadeOrder2D, RationalCheb2D};
pub use piecewise1d::{build_piecewise_cheb, build_pipc, uniform_partition, BuildOptions, Partition1D, PiecewiseApprox1D};
