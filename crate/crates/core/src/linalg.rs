//! Small dense linear-algebra helpers on top of `nalgebra`.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};

/// Rank cutoff used for every nullspace computation, relative to the largest
/// singular value.
pub const RANK_CUTOFF: f64 = 1e-8;

/// Orthonormal nullspace basis together with the spectral gap at the rank cut.
#[derive(Clone, Debug)]
pub struct Nullspace {
    /// Columns form an orthonormal basis of the kernel.
    pub basis: DMatrix<f64>,
    /// Numerical rank of the input.
    pub rank: usize,
    /// `sigma_rank / sigma_{rank+1}`; infinite when either side of the cut is empty
    /// or the first discarded value is exactly zero.
    pub gap: f64,
}

impl Nullspace {
    pub fn dim(&self) -> usize {
        self.basis.ncols()
    }
}

/// Kernel of `m` via a full SVD, with singular values below `cutoff * sigma_max`
/// treated as zero.
pub fn nullspace(m: &DMatrix<f64>, cutoff: f64) -> Nullspace {
    nullspace_with_floor(m, cutoff, 0.0)
}

/// As [`nullspace`], with the threshold `cutoff * max(sigma_max, floor)`.
///
/// `floor` is the size `m` would have if it were not zero; it keeps a matrix of
/// pure rounding noise from being read as full rank.
pub fn nullspace_with_floor(m: &DMatrix<f64>, cutoff: f64, floor: f64) -> Nullspace {
    let cols = m.ncols();
    if cols == 0 {
        return Nullspace { basis: DMatrix::zeros(0, 0), rank: 0, gap: f64::INFINITY };
    }
    // nalgebra only returns min(rows, cols) right singular vectors
    let padded;
    let a = if m.nrows() < cols {
        padded = {
            let mut p = DMatrix::zeros(cols, cols);
            p.view_mut((0, 0), (m.nrows(), cols)).copy_from(m);
            p
        };
        &padded
    } else {
        m
    };
    let svd = a.clone().svd(false, true);
    let v_t = svd.v_t.expect("requested V^T");
    let mut order: Vec<usize> = (0..svd.singular_values.len()).collect();
    order.sort_by(|&i, &j| svd.singular_values[j].total_cmp(&svd.singular_values[i]));
    let sv: Vec<f64> = order.iter().map(|&i| svd.singular_values[i]).collect();
    let smax = sv.first().copied().unwrap_or(0.0);
    let thr = cutoff * smax.max(floor);
    let rank = if smax == 0.0 { 0 } else { sv.iter().filter(|&&s| s > thr).count() };

    let gap = if rank == 0 || rank == sv.len() || sv[rank] == 0.0 {
        f64::INFINITY
    } else {
        sv[rank - 1] / sv[rank]
    };

    let mut basis = DMatrix::zeros(cols, cols - rank);
    for (c, &idx) in order[rank..].iter().enumerate() {
        basis.set_column(c, &v_t.row(idx).transpose());
    }
    Nullspace { basis, rank, gap }
}

/// Orthonormal basis of the orthogonal complement of the column span of `q`
/// (assumed orthonormal) in `R^n`.
pub fn complement(q: &DMatrix<f64>, n: usize) -> DMatrix<f64> {
    if q.ncols() == 0 {
        return DMatrix::identity(n, n);
    }
    nullspace(&q.transpose(), RANK_CUTOFF).basis
}

/// Ratio of smallest to largest singular value; 0 for the zero matrix.
pub fn inverse_condition(m: &DMatrix<f64>) -> f64 {
    let sv = m.singular_values();
    let max = sv.max();
    if max == 0.0 {
        return 0.0;
    }
    sv.min() / max
}

/// Solve `m x = y` with a column-pivoted QR after checking that `m` is
/// invertible at relative threshold `tol`.
pub fn solve(m: &DMatrix<f64>, y: &DVector<f64>, tol: f64, what: &'static str) -> Result<DVector<f64>> {
    let ratio = inverse_condition(m);
    if ratio < tol {
        return Err(Error::Singular { what, ratio });
    }
    m.clone()
        .col_piv_qr()
        .solve(y)
        .ok_or(Error::Singular { what, ratio })
}

/// Inverse of `m`, with the same singularity test as [`solve`].
pub fn inverse(m: &DMatrix<f64>, tol: f64, what: &'static str) -> Result<DMatrix<f64>> {
    let n = m.nrows();
    let ratio = inverse_condition(m);
    if ratio < tol {
        return Err(Error::Singular { what, ratio });
    }
    m.clone()
        .col_piv_qr()
        .solve(&DMatrix::identity(n, n))
        .ok_or(Error::Singular { what, ratio })
}

/// Minimum-norm least-squares solution of `m x ≈ y` and the residual `‖m x − y‖`.
pub fn least_squares(m: &DMatrix<f64>, y: &DVector<f64>) -> (DVector<f64>, f64) {
    let svd = m.clone().svd(true, true);
    let eps = RANK_CUTOFF * svd.singular_values.max();
    let x = svd.solve(y, eps).expect("U and V^T were computed");
    let r = (m * &x - y).norm();
    (x, r)
}

/// `max(1, ‖v‖)` for relative tolerances.
pub fn scale(v: f64) -> f64 {
    v.abs().max(1.0)
}

/// Matrix of a column-major flattening: `vec(M)[i + n*j] = M[(i, j)]`.
pub fn vectorize(m: &DMatrix<f64>) -> DVector<f64> {
    DVector::from_column_slice(m.as_slice())
}
