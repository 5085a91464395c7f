//! Small dense helpers on top of nalgebra.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};

/// Interprets `coords` as a `k x k` row-major matrix.
pub(crate) fn square(k: usize, coords: &[f64]) -> DMatrix<f64> {
    DMatrix::from_row_slice(k, k, coords)
}

/// Row-major coordinates of a square matrix.
pub(crate) fn row_major(m: &DMatrix<f64>) -> Vec<f64> {
    let (r, c) = m.shape();
    let mut out = Vec::with_capacity(r * c);
    for i in 0..r {
        for j in 0..c {
            out.push(m[(i, j)]);
        }
    }
    out
}

pub(crate) fn symmetrize(m: &DMatrix<f64>) -> DMatrix<f64> {
    (m + m.transpose()) * 0.5
}

pub(crate) fn max_asymmetry(k: usize, coords: &[f64]) -> f64 {
    let mut worst: f64 = 0.0;
    for i in 0..k {
        for j in (i + 1)..k {
            worst = worst.max((coords[i * k + j] - coords[j * k + i]).abs());
        }
    }
    worst
}

/// Eigenpairs of a symmetric matrix, eigenvalues ascending, eigenvectors as columns.
pub(crate) fn sym_eigen(m: &DMatrix<f64>) -> (Vec<f64>, DMatrix<f64>) {
    let eig = symmetrize(m).symmetric_eigen();
    let n = eig.eigenvalues.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let mut vectors = DMatrix::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        vectors.set_column(dst, &eig.eigenvectors.column(src));
    }
    (values, vectors)
}

pub(crate) fn sym_eigenvalues(m: &DMatrix<f64>) -> Vec<f64> {
    let mut v: Vec<f64> = symmetrize(m)
        .symmetric_eigenvalues()
        .iter()
        .copied()
        .collect();
    v.sort_by(f64::total_cmp);
    v
}

/// Singular value decomposition with singular values sorted descending and a
/// full set of right singular vectors (rows are zero-padded when the matrix is wide).
pub(crate) struct FullSvd {
    pub singular_values: Vec<f64>,
    /// Right singular vectors as columns, matching `singular_values`; columns past
    /// `singular_values.len()` span the remaining (null) directions.
    pub right: DMatrix<f64>,
}

pub(crate) fn full_svd(a: &DMatrix<f64>) -> Result<FullSvd> {
    let (m, n) = a.shape();
    let padded = if m < n {
        let mut p = DMatrix::zeros(n, n);
        p.view_mut((0, 0), (m, n)).copy_from(a);
        p
    } else {
        a.clone()
    };
    let svd = padded.svd(false, true);
    let v_t = svd
        .v_t
        .ok_or_else(|| Error::Numeric("SVD did not produce right singular vectors".into()))?;
    let k = svd.singular_values.len();
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by(|&x, &y| svd.singular_values[y].total_cmp(&svd.singular_values[x]));
    let mut right = DMatrix::zeros(n, k);
    for (dst, &src) in order.iter().enumerate() {
        right.set_column(dst, &v_t.row(src).transpose());
    }
    Ok(FullSvd {
        singular_values: order.iter().map(|&i| svd.singular_values[i]).collect(),
        right,
    })
}

/// Numeric rank and an orthonormal null-space basis of the matrix whose rows are `rows`.
pub(crate) fn null_space(
    rows: &[Vec<f64>],
    n: usize,
    rel_tol: f64,
) -> Result<(usize, Vec<Vec<f64>>)> {
    if rows.is_empty() {
        let basis = (0..n)
            .map(|i| {
                let mut e = vec![0.0; n];
                e[i] = 1.0;
                e
            })
            .collect();
        return Ok((0, basis));
    }
    let a = DMatrix::from_fn(rows.len(), n, |i, j| rows[i][j]);
    let svd = full_svd(&a)?;
    let smax = svd.singular_values.first().copied().unwrap_or(0.0);
    let rank = svd
        .singular_values
        .iter()
        .filter(|&&s| s > rel_tol * smax && s > 0.0)
        .count();
    let basis = (rank..n)
        .map(|j| svd.right.column(j).iter().copied().collect())
        .collect();
    Ok((rank, basis))
}

pub(crate) fn mat_vec(m: &DMatrix<f64>, v: &[f64]) -> Vec<f64> {
    (m * DVector::from_column_slice(v))
        .iter()
        .copied()
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn null_space_of_two_rows_in_three_dims() {
        let rows = vec![vec![1.0, 0.0, 0.0], vec![0.0, 1.0, 0.0]];
        let (rank, basis) = null_space(&rows, 3, 1e-9).unwrap();
        assert_eq!(rank, 2);
        assert_eq!(basis.len(), 1);
        assert!((basis[0][2].abs() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn eigen_sorted() {
        let m = square(2, &[3.0, 1.0, 1.0, 3.0]);
        let (vals, vecs) = sym_eigen(&m);
        assert!((vals[0] - 2.0).abs() < 1e-12 && (vals[1] - 4.0).abs() < 1e-12);
        let v = vecs.column(1);
        assert!((v[0].abs() - v[1].abs()).abs() < 1e-12);
    }
}
