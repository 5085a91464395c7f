//! Euclidean Jordan algebras behind the symmetric cones: the orthant
//! (componentwise product), real symmetric matrices (`(xy + yx) / 2`) and the
//! spin factor `(s, w) o (t, v) = (st + <w, v>, sv + tw)` whose cone of squares
//! is the Lorentz cone.
//!
//! Elements are plain [`Point`]s; symmetric matrices are full row-major arrays.

use std::ops::Range;

use nalgebra::DMatrix;

use crate::error::{domain, input, Error, Result};
use crate::linalg;
use crate::point::Point;

/// Eigenvalues whose relative gap is at most this are merged into one spectral value.
pub const CLUSTER_REL_GAP: f64 = 1e-7;
/// Absolute floor for the clustering gap, relative to the spectral radius.
const CLUSTER_ABS_FLOOR: f64 = 1e-13;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum JordanAlgebra {
    /// `R^n` with the componentwise product.
    Orthant(usize),
    /// `k x k` real symmetric matrices.
    Sym(usize),
    /// Spin factor `R x R^n`, ambient dimension `n + 1`.
    Spin(usize),
}

/// Spectral decomposition `x = sum_i lambda_i c_i` with distinct eigenvalues
/// (ascending) and a complete system of orthogonal idempotents.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralDecomp {
    pub eigenvalues: Vec<f64>,
    pub idempotents: Vec<Point>,
}

impl SpectralDecomp {
    /// `sum_i f(lambda_i) c_i`.
    pub fn map(&self, f: impl Fn(f64) -> f64) -> Point {
        let len = self.idempotents.first().map_or(0, Point::len);
        let mut acc = vec![0.0; len];
        for (lambda, c) in self.eigenvalues.iter().zip(&self.idempotents) {
            let w = f(*lambda);
            for (a, v) in acc.iter_mut().zip(c.iter()) {
                *a += w * v;
            }
        }
        Point::new(acc)
    }

    pub fn reconstruct(&self) -> Point {
        self.map(|l| l)
    }

    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }
}

/// Groups an ascending list into runs of numerically equal values.
pub(crate) fn cluster_sorted(values: &[f64]) -> Vec<Range<usize>> {
    let scale = values.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
    let mut out = Vec::new();
    let mut start = 0;
    for i in 1..=values.len() {
        let split = i == values.len() || {
            let (a, b) = (values[i - 1], values[i]);
            b - a > CLUSTER_REL_GAP * a.abs().max(b.abs()) + CLUSTER_ABS_FLOOR * scale
        };
        if split {
            out.push(start..i);
            start = i;
        }
    }
    out
}

/// Distinct spectral values of an ascending list, each cluster represented by its mean.
pub(crate) fn distinct_values(values: &[f64]) -> Vec<f64> {
    cluster_sorted(values)
        .into_iter()
        .map(|r| values[r.clone()].iter().sum::<f64>() / r.len() as f64)
        .collect()
}

fn is_nonneg_integer(p: f64) -> bool {
    p >= 0.0 && p.fract() == 0.0
}

impl JordanAlgebra {
    /// Number of stored coordinates of an element.
    pub fn coord_len(&self) -> usize {
        match *self {
            JordanAlgebra::Orthant(n) => n,
            JordanAlgebra::Sym(k) => k * k,
            JordanAlgebra::Spin(n) => n + 1,
        }
    }

    /// Jordan-algebraic rank (maximal number of distinct eigenvalues).
    pub fn rank(&self) -> usize {
        match *self {
            JordanAlgebra::Orthant(n) => n,
            JordanAlgebra::Sym(k) => k,
            JordanAlgebra::Spin(_) => 2,
        }
    }

    pub fn unit(&self) -> Point {
        match *self {
            JordanAlgebra::Orthant(n) => Point::new(vec![1.0; n]),
            JordanAlgebra::Sym(k) => Point::diag(&vec![1.0; k]),
            JordanAlgebra::Spin(n) => {
                let mut c = vec![0.0; n + 1];
                c[0] = 1.0;
                Point::new(c)
            }
        }
    }

    fn check(&self, x: &Point) -> Result<()> {
        if x.len() != self.coord_len() {
            return input(format!(
                "expected {} coordinates, got {}",
                self.coord_len(),
                x.len()
            ));
        }
        Ok(())
    }

    /// The Jordan product `x o y`.
    pub fn product(&self, x: &Point, y: &Point) -> Result<Point> {
        self.check(x)?;
        self.check(y)?;
        Ok(match *self {
            JordanAlgebra::Orthant(_) => {
                Point::new(x.iter().zip(y.iter()).map(|(a, b)| a * b).collect())
            }
            JordanAlgebra::Sym(k) => {
                let a = linalg::square(k, x.coords());
                let b = linalg::square(k, y.coords());
                let m = (&a * &b + &b * &a) * 0.5;
                Point::new(linalg::row_major(&m))
            }
            JordanAlgebra::Spin(n) => {
                let (s, t) = (x[0], y[0]);
                let mut c = Vec::with_capacity(n + 1);
                c.push(s * t + (1..=n).map(|i| x[i] * y[i]).sum::<f64>());
                c.extend((1..=n).map(|i| s * y[i] + t * x[i]));
                Point::new(c)
            }
        })
    }

    /// Inner product for which every `L(x)` is self-adjoint (the coordinate dot product
    /// in all three families; Frobenius for matrices).
    pub fn inner(&self, x: &Point, y: &Point) -> f64 {
        x.dot(y)
    }

    /// Matrix of `L(x): y -> x o y` acting on coordinates.
    pub fn l_operator(&self, x: &Point) -> Result<DMatrix<f64>> {
        self.check(x)?;
        let len = self.coord_len();
        Ok(match *self {
            JordanAlgebra::Orthant(_) => {
                DMatrix::from_diagonal(&nalgebra::DVector::from_column_slice(x.coords()))
            }
            JordanAlgebra::Spin(n) => {
                let mut m = DMatrix::zeros(len, len);
                m[(0, 0)] = x[0];
                for i in 1..=n {
                    m[(0, i)] = x[i];
                    m[(i, 0)] = x[i];
                    m[(i, i)] = x[0];
                }
                m
            }
            JordanAlgebra::Sym(_) => {
                let mut m = DMatrix::zeros(len, len);
                let mut basis = vec![0.0; len];
                for j in 0..len {
                    basis[j] = 1.0;
                    let col = self.product(x, &Point::new(basis.clone()))?;
                    basis[j] = 0.0;
                    for i in 0..len {
                        m[(i, j)] = col[i];
                    }
                }
                m
            }
        })
    }

    /// Quadratic representation `P(x) = 2 L(x)^2 - L(x^2)` as a dense matrix.
    pub fn quadratic_rep(&self, x: &Point) -> Result<DMatrix<f64>> {
        let l = self.l_operator(x)?;
        let x2 = self.product(x, x)?;
        let l2 = self.l_operator(&x2)?;
        Ok(&l * &l * 2.0 - l2)
    }

    /// Applies `P(a)` to `b` without forming the operator.
    pub fn quadratic_apply(&self, a: &Point, b: &Point) -> Result<Point> {
        self.check(a)?;
        self.check(b)?;
        match *self {
            JordanAlgebra::Orthant(_) => Ok(Point::new(
                a.iter().zip(b.iter()).map(|(p, q)| p * p * q).collect(),
            )),
            JordanAlgebra::Sym(k) => {
                let am = linalg::square(k, a.coords());
                let bm = linalg::square(k, b.coords());
                Ok(Point::new(linalg::row_major(&(&am * bm * &am))))
            }
            JordanAlgebra::Spin(_) => {
                let p = self.quadratic_rep(a)?;
                Ok(Point::new(linalg::mat_vec(&p, b.coords())))
            }
        }
    }

    /// Smallest eigenvalue of `x`; positive exactly on the interior of the cone of squares.
    pub fn min_eigenvalue(&self, x: &Point) -> Result<f64> {
        self.check(x)?;
        Ok(match *self {
            JordanAlgebra::Orthant(_) => x.iter().copied().fold(f64::INFINITY, f64::min),
            JordanAlgebra::Sym(k) => linalg::sym_eigenvalues(&linalg::square(k, x.coords()))[0],
            JordanAlgebra::Spin(n) => x[0] - spatial_norm(x, n),
        })
    }

    pub fn spectral(&self, x: &Point) -> Result<SpectralDecomp> {
        self.check(x)?;
        match *self {
            JordanAlgebra::Orthant(n) => {
                let mut order: Vec<usize> = (0..n).collect();
                order.sort_by(|&a, &b| x[a].total_cmp(&x[b]));
                let sorted: Vec<f64> = order.iter().map(|&i| x[i]).collect();
                let mut eigenvalues = Vec::new();
                let mut idempotents = Vec::new();
                for r in cluster_sorted(&sorted) {
                    let mut c = vec![0.0; n];
                    for &i in &order[r.clone()] {
                        c[i] = 1.0;
                    }
                    eigenvalues.push(sorted[r.clone()].iter().sum::<f64>() / r.len() as f64);
                    idempotents.push(Point::new(c));
                }
                Ok(SpectralDecomp {
                    eigenvalues,
                    idempotents,
                })
            }
            JordanAlgebra::Sym(k) => {
                let (values, vectors) = linalg::sym_eigen(&linalg::square(k, x.coords()));
                let mut eigenvalues = Vec::new();
                let mut idempotents = Vec::new();
                for r in cluster_sorted(&values) {
                    let mut proj = DMatrix::<f64>::zeros(k, k);
                    for j in r.clone() {
                        let v = vectors.column(j);
                        proj += v * v.transpose();
                    }
                    eigenvalues.push(values[r.clone()].iter().sum::<f64>() / r.len() as f64);
                    idempotents.push(Point::new(linalg::row_major(&linalg::symmetrize(&proj))));
                }
                Ok(SpectralDecomp {
                    eigenvalues,
                    idempotents,
                })
            }
            JordanAlgebra::Spin(n) => {
                let s = x[0];
                let nw = spatial_norm(x, n);
                let (lo, hi) = (s - nw, s + nw);
                let merged = cluster_sorted(&[lo, hi]).len() == 1;
                if merged {
                    return Ok(SpectralDecomp {
                        eigenvalues: vec![s],
                        idempotents: vec![self.unit()],
                    });
                }
                let mut c_lo = vec![0.5; n + 1];
                let mut c_hi = vec![0.5; n + 1];
                for i in 1..=n {
                    c_lo[i] = -0.5 * x[i] / nw;
                    c_hi[i] = 0.5 * x[i] / nw;
                }
                Ok(SpectralDecomp {
                    eigenvalues: vec![lo, hi],
                    idempotents: vec![Point::new(c_lo), Point::new(c_hi)],
                })
            }
        }
    }

    /// `x^p` through the spectral decomposition.
    pub fn power(&self, x: &Point, p: f64) -> Result<Point> {
        let dec = self.spectral(x)?;
        if !is_nonneg_integer(p) && dec.eigenvalues.iter().any(|&l| l <= 0.0) {
            return domain(format!(
                "power {p} needs a positive spectrum, smallest eigenvalue is {}",
                dec.eigenvalues[0]
            ));
        }
        Ok(dec.map(|l| l.powf(p)))
    }

    pub fn inverse(&self, x: &Point) -> Result<Point> {
        self.power(x, -1.0)
    }

    /// All eigenvalues (with multiplicity, ascending) of `P(y^{-1/2}) x`.
    ///
    /// Matrices go through a Cholesky factor of `y` (a congruent, hence isospectral,
    /// form); the spin factor uses the closed form of its rank-two relative spectrum,
    /// which stays accurate close to the boundary of the Lorentz cone.
    pub fn relative_eigenvalues(&self, x: &Point, y: &Point) -> Result<Vec<f64>> {
        self.check(x)?;
        self.check(y)?;
        let values = match *self {
            JordanAlgebra::Orthant(n) => {
                if let Some(i) = (0..n).find(|&i| !(y[i] > 0.0)) {
                    return domain(format!("y is not interior: coordinate {i} is {}", y[i]));
                }
                let mut v: Vec<f64> = (0..n).map(|i| x[i] / y[i]).collect();
                v.sort_by(f64::total_cmp);
                v
            }
            JordanAlgebra::Sym(k) => {
                let ym = linalg::symmetrize(&linalg::square(k, y.coords()));
                let chol = ym
                    .cholesky()
                    .ok_or_else(|| Error::Domain("y is not positive definite".into()))?;
                let l = chol.l();
                let xm = linalg::symmetrize(&linalg::square(k, x.coords()));
                let linv_x = l
                    .solve_lower_triangular(&xm)
                    .ok_or_else(|| Error::Numeric("triangular solve failed".into()))?;
                let z = l
                    .solve_lower_triangular(&linv_x.transpose())
                    .ok_or_else(|| Error::Numeric("triangular solve failed".into()))?;
                linalg::sym_eigenvalues(&z)
            }
            JordanAlgebra::Spin(n) => spin_relative(x, y, n)?,
        };
        if values[0] <= 0.0 {
            return domain(format!(
                "x is not interior: smallest relative eigenvalue {}",
                values[0]
            ));
        }
        Ok(values)
    }

    /// Distinct relative spectrum `sigma(P(y^{-1/2}) x)`, ascending, clustered.
    pub fn relative_spectrum(&self, x: &Point, y: &Point) -> Result<Vec<f64>> {
        Ok(distinct_values(&self.relative_eigenvalues(x, y)?))
    }

    /// Relative spectrum computed literally as the spectrum of `P(y^{-1/2}) x`.
    pub fn relative_spectrum_via_quadratic(&self, x: &Point, y: &Point) -> Result<Vec<f64>> {
        let y_inv_half = self.power(y, -0.5)?;
        let z = self.quadratic_apply(&y_inv_half, x)?;
        let z = match *self {
            JordanAlgebra::Sym(k) => Point::new(linalg::row_major(&linalg::symmetrize(
                &linalg::square(k, z.coords()),
            ))),
            _ => z,
        };
        Ok(self.spectral(&z)?.eigenvalues)
    }
}

fn spatial_norm(x: &Point, n: usize) -> f64 {
    (1..=n).map(|i| x[i] * x[i]).sum::<f64>().sqrt()
}

/// Lorentz determinant `s^2 - |w|^2`, evaluated as `(s - |w|)(s + |w|)`.
fn spin_det(x: &Point, n: usize) -> f64 {
    let nw = spatial_norm(x, n);
    (x[0] - nw) * (x[0] + nw)
}

/// The two relative eigenvalues of a spin-factor pair: the roots of
/// `det(y) l^2 - 2 B l + det(x)` with `B` the Minkowski product of `x` and `y`.
fn spin_relative(x: &Point, y: &Point, n: usize) -> Result<Vec<f64>> {
    let dy = spin_det(y, n);
    if !(y[0] > 0.0) || !(dy > 0.0) {
        return domain("y is not in the interior of the Lorentz cone");
    }
    let dx = spin_det(x, n);
    if !(x[0] > 0.0) || !(dx > 0.0) {
        return domain("x is not in the interior of the Lorentz cone");
    }
    let (s, t) = (x[0], y[0]);
    let b = s * t - (1..=n).map(|i| x[i] * y[i]).sum::<f64>();
    // B^2 - det(x) det(y) = |t w_x - s w_y|^2 - |w_x ^ w_y|^2, free of the large cancellation.
    let cross: f64 = (1..=n).map(|i| (t * x[i] - s * y[i]).powi(2)).sum();
    let mut wedge = 0.0;
    for i in 1..=n {
        for j in (i + 1)..=n {
            wedge += (x[i] * y[j] - x[j] * y[i]).powi(2);
        }
    }
    let root = (cross - wedge).max(0.0).sqrt();
    let big = b + root;
    Ok(vec![dx / big, big / dy])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: &Point, b: &Point, tol: f64) -> bool {
        a.sup_distance(b) <= tol
    }

    #[test]
    fn orthant_product() {
        let alg = JordanAlgebra::Orthant(2);
        let p = alg
            .product(&Point::from([1.0, 2.0]), &Point::from([3.0, 4.0]))
            .unwrap();
        assert_eq!(p.coords(), &[3.0, 8.0]);
    }

    #[test]
    fn unit_is_neutral() {
        let x = [
            (JordanAlgebra::Orthant(3), Point::from([1.5, -2.0, 0.3])),
            (JordanAlgebra::Sym(2), Point::from([1.0, 0.4, 0.4, -3.0])),
            (JordanAlgebra::Spin(2), Point::from([0.7, 0.2, -1.1])),
        ];
        for (alg, v) in x {
            let p = alg.product(&alg.unit(), &v).unwrap();
            assert!(close(&p, &v, 1e-12), "{alg:?}");
        }
    }

    #[test]
    fn spin_product_formula() {
        let alg = JordanAlgebra::Spin(2);
        let p = alg
            .product(&Point::from([2.0, 1.0, 0.0]), &Point::from([3.0, 0.5, 2.0]))
            .unwrap();
        // (st + <x,y>, s y + t x)
        assert!(close(&p, &Point::from([6.5, 4.0, 4.0]), 1e-15));
    }

    #[test]
    fn quadratic_rep_of_unit_is_identity() {
        for alg in [
            JordanAlgebra::Orthant(3),
            JordanAlgebra::Sym(2),
            JordanAlgebra::Spin(3),
        ] {
            let p = alg.quadratic_rep(&alg.unit()).unwrap();
            let n = alg.coord_len();
            assert!((p - DMatrix::<f64>::identity(n, n)).amax() < 1e-15);
        }
    }

    #[test]
    fn quadratic_rep_orthant_is_diag_of_squares() {
        let alg = JordanAlgebra::Orthant(3);
        let p = alg.quadratic_rep(&Point::from([2.0, -1.0, 3.0])).unwrap();
        let expected = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![4.0, 1.0, 9.0]));
        assert!((p - expected).amax() < 1e-15);
    }

    #[test]
    fn quadratic_rep_maps_unit_to_square() {
        let alg = JordanAlgebra::Spin(2);
        let x = Point::from([1.3, 0.4, -0.2]);
        let p = alg.quadratic_rep(&x).unwrap();
        let pe = Point::new(linalg::mat_vec(&p, alg.unit().coords()));
        assert!(close(&pe, &alg.product(&x, &x).unwrap(), 1e-14));
    }

    #[test]
    fn orthant_spectral_groups_equal_coordinates() {
        let alg = JordanAlgebra::Orthant(3);
        let d = alg.spectral(&Point::from([2.0, 2.0, 5.0])).unwrap();
        assert_eq!(d.eigenvalues, vec![2.0, 5.0]);
        assert_eq!(d.idempotents[0].coords(), &[1.0, 1.0, 0.0]);
        assert_eq!(d.idempotents[1].coords(), &[0.0, 0.0, 1.0]);
    }

    #[test]
    fn spin_spectral_closed_form() {
        let alg = JordanAlgebra::Spin(2);
        let x = Point::from([2.0, 1.0, 0.0]);
        let d = alg.spectral(&x).unwrap();
        assert_eq!(d.eigenvalues, vec![1.0, 3.0]);
        assert!(close(
            &d.idempotents[0],
            &Point::from([0.5, -0.5, 0.0]),
            1e-15
        ));
        assert!(close(
            &d.idempotents[1],
            &Point::from([0.5, 0.5, 0.0]),
            1e-15
        ));
        for c in &d.idempotents {
            assert!(close(&alg.product(c, c).unwrap(), c, 1e-12));
        }
        assert!(close(&d.reconstruct(), &x, 1e-12));
        let w0 = alg.spectral(&Point::from([2.0, 0.0, 0.0])).unwrap();
        assert_eq!(w0.eigenvalues, vec![2.0]);
        assert_eq!(w0.idempotents[0], alg.unit());
    }

    #[test]
    fn sym_multiple_of_unit_has_single_eigenvalue() {
        let alg = JordanAlgebra::Sym(2);
        let d = alg.spectral(&Point::diag(&[3.0, 3.0])).unwrap();
        assert_eq!(d.eigenvalues.len(), 1);
        assert!((d.eigenvalues[0] - 3.0).abs() < 1e-14);
        assert!(close(&d.idempotents[0], &alg.unit(), 1e-14));
    }

    #[test]
    fn powers() {
        let alg = JordanAlgebra::Orthant(2);
        let r = alg.power(&Point::from([4.0, 9.0]), 0.5).unwrap();
        assert!(close(&r, &Point::from([2.0, 3.0]), 1e-15));
        for alg in [
            JordanAlgebra::Orthant(2),
            JordanAlgebra::Sym(3),
            JordanAlgebra::Spin(2),
        ] {
            let e = alg.unit();
            assert!(close(&alg.power(&e, 0.37).unwrap(), &e, 1e-14));
        }
        let sym = JordanAlgebra::Sym(2);
        let x = Point::from([2.0, 0.5, 0.5, 1.0]);
        let inv = sym.power(&x, -1.0).unwrap();
        let det = 2.0 - 0.25;
        let direct = Point::from([1.0 / det, -0.5 / det, -0.5 / det, 2.0 / det]);
        assert!(close(&inv, &direct, 1e-10));
    }

    #[test]
    fn fractional_power_of_indefinite_element_fails() {
        let alg = JordanAlgebra::Orthant(2);
        assert!(matches!(
            alg.power(&Point::from([1.0, -1.0]), 0.5),
            Err(Error::Domain(_))
        ));
        // integer powers are fine
        let sq = alg.power(&Point::from([1.0, -2.0]), 2.0).unwrap();
        assert!(close(&sq, &Point::from([1.0, 4.0]), 1e-14));
    }

    #[test]
    fn relative_spectrum_examples() {
        let sym = JordanAlgebra::Sym(2);
        let x = Point::diag(&[2.0, 0.5]);
        let s = sym.relative_spectrum(&x, &sym.unit()).unwrap();
        assert!((s[0] - 0.5).abs() < 1e-14 && (s[1] - 2.0).abs() < 1e-14);
        let same = sym.relative_spectrum(&x, &x).unwrap();
        assert_eq!(same.len(), 1);
        assert!((same[0] - 1.0).abs() < 1e-14);

        let spin = JordanAlgebra::Spin(2);
        let t: f64 = 0.8;
        let a = Point::from([1.0, 0.0, 0.0]);
        let b = Point::from([t.cosh(), t.sinh(), 0.0]);
        let s = spin.relative_spectrum(&a, &b).unwrap();
        assert!((s[0] - (-t).exp()).abs() < 1e-14);
        assert!((s[1] - t.exp()).abs() < 1e-14);
    }

    #[test]
    fn spin_closed_form_matches_quadratic_route() {
        let spin = JordanAlgebra::Spin(3);
        let x = Point::from([2.0, 0.3, -0.5, 0.9]);
        let y = Point::from([1.5, -0.2, 0.4, 0.1]);
        let a = spin.relative_spectrum(&x, &y).unwrap();
        let b = spin.relative_spectrum_via_quadratic(&x, &y).unwrap();
        for (p, q) in a.iter().zip(&b) {
            assert!((p - q).abs() < 1e-12 * p.abs().max(1.0));
        }
    }

    #[test]
    fn relative_spectrum_rejects_boundary() {
        let sym = JordanAlgebra::Sym(2);
        let r = sym.relative_spectrum(&sym.unit(), &Point::diag(&[1.0, 0.0]));
        assert!(matches!(r, Err(Error::Domain(_))));
    }

    #[test]
    fn clustering() {
        let r = cluster_sorted(&[1.0, 1.0 + 1e-12, 2.0, 3.0, 3.0 * (1.0 + 5e-8)]);
        assert_eq!(r, vec![0..2, 2..3, 3..5]);
    }
}
