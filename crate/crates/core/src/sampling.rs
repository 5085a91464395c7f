//! Random interior points and the regular polygonal cones used in experiments.

use std::f64::consts::PI;

use nalgebra::DMatrix;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::cones::{ConeSpec, Family};
use crate::error::Result;
use crate::linalg;
use crate::point::Point;

pub fn gaussian_vector<R: Rng + ?Sized>(len: usize, rng: &mut R) -> Vec<f64> {
    (0..len)
        .map(|_| rng.sample::<f64, _>(StandardNormal))
        .collect()
}

pub fn random_unit<R: Rng + ?Sized>(len: usize, rng: &mut R) -> Point {
    loop {
        let g = Point::new(gaussian_vector(len, rng));
        let n = g.norm();
        if n > 1e-8 {
            return g.scale(1.0 / n);
        }
    }
}

/// Haar-distributed orthogonal matrix (QR of a Gaussian matrix with sign correction).
pub fn random_orthogonal<R: Rng + ?Sized>(k: usize, rng: &mut R) -> DMatrix<f64> {
    let g = DMatrix::from_vec(k, k, gaussian_vector(k * k, rng));
    let qr = g.qr();
    let (mut q, r) = (qr.q(), qr.r());
    for j in 0..k {
        if r[(j, j)] < 0.0 {
            q.column_mut(j).neg_mut();
        }
    }
    q
}

/// Symmetric positive definite matrix `Q diag(exp(l_i)) Q^T` with `l_i` uniform in
/// `[-spread, spread]`.
pub fn random_spd<R: Rng + ?Sized>(k: usize, spread: f64, rng: &mut R) -> Point {
    let q = random_orthogonal(k, rng);
    let d = DMatrix::from_diagonal(&nalgebra::DVector::from_iterator(
        k,
        (0..k).map(|_| rng.random_range(-spread..=spread).exp()),
    ));
    let m = &q * d * q.transpose();
    Point::new(linalg::row_major(&linalg::symmetrize(&m)))
}

/// Point `(cosh r, sinh r * dir)` on the unit hyperboloid of `R^(n+1)`.
pub fn hyperboloid_point<R: Rng + ?Sized>(n: usize, max_r: f64, rng: &mut R) -> Point {
    let r = rng.random_range(0.0..=max_r);
    let dir = random_unit(n, rng);
    let mut c = vec![r.cosh()];
    c.extend(dir.iter().map(|d| r.sinh() * d));
    Point::new(c)
}

/// A random point of the interior, spread over a few units of Thompson distance
/// from the cone's reference point.
pub fn random_interior<R: Rng + ?Sized>(cone: &ConeSpec, rng: &mut R) -> Point {
    let n = cone.ambient_dim();
    match cone.family() {
        Family::Orthant => Point::new(
            (0..n)
                .map(|_| rng.random_range(-2.0..=2.0_f64).exp())
                .collect(),
        ),
        Family::Lorentz => {
            let h = hyperboloid_point(n - 1, 2.0, rng);
            h.scale(rng.random_range(-1.0..=1.0_f64).exp())
        }
        Family::Psd => random_spd(cone.matrix_order().unwrap_or(1), 1.5, rng),
        Family::Polyhedral => {
            let w = cone.interior_point();
            let w = w.scale(1.0 / w.norm());
            loop {
                let g = Point::new(gaussian_vector(n, rng));
                let p = w.combine(1.0, &g, 0.6);
                let m = cone.margin(&p).unwrap_or(f64::NEG_INFINITY);
                if m > 1e-3 * p.sup_norm() {
                    return p.scale(rng.random_range(-1.0..=1.0_f64).exp());
                }
            }
        }
    }
}

/// Cone over a regular polygon: facets `s - cos(theta_i) a - sin(theta_i) b >= 0`
/// with `theta_i = 2 pi i / sides`, coordinates `(s, a, b)`.
pub fn regular_polygonal_cone(sides: usize) -> Result<ConeSpec> {
    let rows = (0..sides)
        .map(|i| {
            let th = 2.0 * PI * i as f64 / sides as f64;
            vec![1.0, -th.cos(), -th.sin()]
        })
        .collect();
    ConeSpec::polyhedral(rows)
}

/// Extreme rays of [`regular_polygonal_cone`], scaled to `s = 1`.
pub fn regular_polygon_vertices(sides: usize) -> Vec<Point> {
    let r = 1.0 / (PI / sides as f64).cos();
    (0..sides)
        .map(|i| {
            let th = 2.0 * PI * (i as f64 + 0.5) / sides as f64;
            Point::from([1.0, r * th.cos(), r * th.sin()])
        })
        .collect()
}
