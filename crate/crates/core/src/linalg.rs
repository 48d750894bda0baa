//! Dense real matrices and numerical kernel extraction.
//!
//! The kernel basis comes from a full singular value decomposition. Basis
//! vectors are ordered by descending singular value, so the last vector is the
//! one with the smallest singular value, and each vector's first entry above
//! [`SIGN_THRESHOLD`] is made positive. [`choose_kernel_vector`] returns the
//! last vector of that ordering.

use nalgebra::DMatrix;

use crate::error::{Error, Result};

/// Entries at or below this magnitude are skipped when fixing a kernel vector's sign.
pub const SIGN_THRESHOLD: f64 = 1e-12;

/// Row-major dense matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<f64>,
}

impl DenseMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<f64>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::invalid(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                entries.len()
            )));
        }
        if entries.iter().any(|v| !v.is_finite()) {
            return Err(Error::invalid("matrix entries must be finite"));
        }
        Ok(Self {
            rows,
            cols,
            entries,
        })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![0.0; rows * cols],
        }
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::invalid("ragged rows"));
        }
        Self::new(rows.len(), cols, rows.concat())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    pub fn get(&self, r: usize, c: usize) -> f64 {
        self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: f64) {
        self.entries[r * self.cols + c] = value;
    }

    pub fn row(&self, r: usize) -> &[f64] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn mul_vec(&self, v: &[f64]) -> Result<Vec<f64>> {
        if v.len() != self.cols {
            return Err(Error::invalid(format!(
                "vector of length {} does not match {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|r| self.row(r).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect())
    }
}

/// Orthonormal basis of the numerical kernel of a matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct KernelResult {
    /// Unit vectors, ordered by descending singular value.
    pub basis: Vec<Vec<f64>>,
    pub numerical_rank: usize,
    pub rank_tolerance: f64,
    /// All `cols` singular values in descending order, zero-padded for wide matrices.
    pub singular_values: Vec<f64>,
}

impl KernelResult {
    /// Spectral norm of the decomposed matrix.
    pub fn norm(&self) -> f64 {
        self.singular_values.first().copied().unwrap_or(0.0)
    }
}

/// Default rank cut-off `max(rows, cols) * eps * sigma_max`.
pub fn default_rank_tolerance(rows: usize, cols: usize, sigma_max: f64) -> f64 {
    rows.max(cols) as f64 * f64::EPSILON * sigma_max
}

/// Kernel basis of `a`: right singular vectors whose singular value is `<= tol`.
///
/// `tol = None` selects [`default_rank_tolerance`].
pub fn kernel_basis(a: &DenseMatrix, tol: Option<f64>) -> Result<KernelResult> {
    if a.cols == 0 {
        return Err(Error::invalid("kernel of a matrix without columns"));
    }
    if a.entries.iter().any(|v| !v.is_finite()) {
        return Err(Error::invalid("matrix entries must be finite"));
    }
    if let Some(t) = tol {
        if !(t >= 0.0 && t.is_finite()) {
            return Err(Error::invalid(format!("rank tolerance must be finite and >= 0, got {t}")));
        }
    }
    let n = a.cols;
    // Wide matrices are padded with zero rows so the decomposition yields all n right vectors.
    let padded_rows = a.rows.max(n);
    let mut m = DMatrix::<f64>::zeros(padded_rows, n);
    for r in 0..a.rows {
        for c in 0..n {
            m[(r, c)] = a.get(r, c);
        }
    }
    let svd = m.svd(false, true);
    let v_t = svd.v_t.expect("right singular vectors were requested");
    let sigma = svd.singular_values;

    let mut order: Vec<usize> = (0..sigma.len()).collect();
    order.sort_by(|&i, &j| sigma[j].total_cmp(&sigma[i]).then(i.cmp(&j)));
    let sorted: Vec<f64> = order.iter().map(|&i| sigma[i]).collect();
    let sigma_max = sorted.first().copied().unwrap_or(0.0);
    let rank_tolerance = tol.unwrap_or_else(|| default_rank_tolerance(a.rows, a.cols, sigma_max));
    let numerical_rank = sorted.iter().filter(|&&s| s > rank_tolerance).count();

    let basis = order[numerical_rank..]
        .iter()
        .map(|&i| {
            let mut v: Vec<f64> = v_t.row(i).iter().copied().collect();
            let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            v.iter_mut().for_each(|x| *x /= norm);
            if let Some(first) = v.iter().find(|x| x.abs() > SIGN_THRESHOLD) {
                if *first < 0.0 {
                    v.iter_mut().for_each(|x| *x = -*x);
                }
            }
            v
        })
        .collect();

    Ok(KernelResult {
        basis,
        numerical_rank,
        rank_tolerance,
        singular_values: sorted,
    })
}

/// Last basis vector under the ordering documented on this module.
pub fn choose_kernel_vector(k: &KernelResult) -> Result<Vec<f64>> {
    k.basis.last().cloned().ok_or(Error::NoKernel)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn norm(v: &[f64]) -> f64 {
        v.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    #[test]
    fn kernel_of_single_row() {
        let a = DenseMatrix::from_rows(&[vec![1.0, 0.0]]).unwrap();
        let k = kernel_basis(&a, None).unwrap();
        assert_eq!(k.numerical_rank, 1);
        assert_eq!(k.basis.len(), 1);
        assert!((k.basis[0][0]).abs() < 1e-15);
        assert!((k.basis[0][1] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn kernel_of_zero_row() {
        let a = DenseMatrix::zeros(1, 2);
        let k = kernel_basis(&a, None).unwrap();
        assert_eq!(k.numerical_rank, 0);
        assert_eq!(k.basis.len(), 2);
        for v in &k.basis {
            assert!((norm(v) - 1.0).abs() < 1e-15);
        }
        let dot: f64 = k.basis[0].iter().zip(&k.basis[1]).map(|(a, b)| a * b).sum();
        assert!(dot.abs() < 1e-15);
        // The decomposition of the zero matrix keeps the canonical axes; the last is e_2.
        let chosen = choose_kernel_vector(&k).unwrap();
        assert!((chosen[0]).abs() < 1e-15 && (chosen[1] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn kernel_of_rank_one_square() {
        let a = DenseMatrix::from_rows(&[vec![1.0, 1.0], vec![1.0, 1.0]]).unwrap();
        let k = kernel_basis(&a, None).unwrap();
        assert_eq!(k.numerical_rank, 1);
        let v = choose_kernel_vector(&k).unwrap();
        let h = 1.0 / 2f64.sqrt();
        assert!((v[0] - h).abs() < 1e-14 && (v[1] + h).abs() < 1e-14);
    }

    #[test]
    fn full_column_rank_has_no_kernel() {
        let a = DenseMatrix::from_rows(&[vec![1.0, 0.0], vec![0.0, 2.0], vec![1.0, 1.0]]).unwrap();
        let k = kernel_basis(&a, None).unwrap();
        assert_eq!(k.numerical_rank, 2);
        assert_eq!(choose_kernel_vector(&k), Err(Error::NoKernel));
    }

    #[test]
    fn last_vector_has_smallest_singular_value() {
        // Two kernel directions once the tolerance admits sigma = 1e-9.
        let a = DenseMatrix::from_rows(&[vec![1.0, 0.0, 0.0], vec![0.0, 1e-9, 0.0]]).unwrap();
        let k = kernel_basis(&a, Some(1e-6)).unwrap();
        assert_eq!(k.numerical_rank, 1);
        assert_eq!(k.basis.len(), 2);
        let last = choose_kernel_vector(&k).unwrap();
        assert!((last[2] - 1.0).abs() < 1e-14, "{last:?}");
        assert!((k.basis[0][1] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn rejects_degenerate_input() {
        assert!(kernel_basis(&DenseMatrix::zeros(2, 0), None).is_err());
        assert!(DenseMatrix::new(1, 1, vec![f64::NAN]).is_err());
        assert!(DenseMatrix::new(1, 2, vec![1.0]).is_err());
        assert!(kernel_basis(&DenseMatrix::zeros(1, 2), Some(-1.0)).is_err());
    }

    #[test]
    fn sign_rule_makes_first_entry_positive() {
        let a = DenseMatrix::from_rows(&[vec![1.0, 1.0]]).unwrap();
        let v = choose_kernel_vector(&kernel_basis(&a, None).unwrap()).unwrap();
        assert!(v[0] > 0.0);
    }
}
