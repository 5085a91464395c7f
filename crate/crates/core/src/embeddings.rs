//! Sup-norm embeddings of polyhedral cones, generalized Gromov products, and
//! sequences running out to the boundary at prescribed distances.

use nalgebra::{DMatrix, DVector};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::cones::{ConeSpec, MembershipClass};
use crate::error::{domain, input, Error, Result};
use crate::point::Point;
use crate::sampling;

/// `x -> (log psi_1(x), ..., log psi_m(x))` for a cone given by facet functionals.
///
/// When the rows are exactly the facet-defining functionals this is an isometry
/// from the Thompson metric onto its image in `(R^m, sup norm)`.
#[derive(Debug, Clone)]
pub struct LogEmbedding {
    cone: ConeSpec,
    facets: Vec<Point>,
}

impl LogEmbedding {
    /// Builds the embedding, logging a warning for facet rows that never decide a
    /// distance on a sample of random pairs (likely redundant inequalities).
    pub fn new(cone: &ConeSpec) -> Result<Self> {
        let facets = cone
            .facet_rows()
            .ok_or_else(|| Error::Domain("log embedding needs a polyhedral cone".into()))?;
        let emb = LogEmbedding {
            cone: cone.clone(),
            facets,
        };
        let idle = emb.idle_rows(400, 0)?;
        if !idle.is_empty() {
            log::warn!("facet rows {idle:?} never attain a ratio extreme; they may be redundant");
        }
        Ok(emb)
    }

    pub fn target_dim(&self) -> usize {
        self.facets.len()
    }

    pub fn embed(&self, x: &Point) -> Result<Vec<f64>> {
        let margin = self.cone.margin(x)?;
        if !(margin > 0.0) {
            return domain(format!("point is not in the interior (margin {margin:e})"));
        }
        Ok(self.facets.iter().map(|f| f.dot(x).ln()).collect())
    }

    /// Rows that never attain the maximum of `psi_i(x)/psi_i(y)` over `pairs` random pairs.
    pub fn idle_rows(&self, pairs: usize, seed: u64) -> Result<Vec<usize>> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut hit = vec![false; self.facets.len()];
        for _ in 0..pairs {
            let x = sampling::random_interior(&self.cone, &mut rng);
            let y = sampling::random_interior(&self.cone, &mut rng);
            let (ex, ey) = (self.embed(&x)?, self.embed(&y)?);
            let gaps: Vec<f64> = ex.iter().zip(&ey).map(|(a, b)| a - b).collect();
            let best = gaps.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            for (i, g) in gaps.iter().enumerate() {
                if *g >= best - 1e-12 * best.abs().max(1.0) {
                    hit[i] = true;
                }
            }
        }
        Ok(hit
            .iter()
            .enumerate()
            .filter(|(_, h)| !**h)
            .map(|(i, _)| i)
            .collect())
    }
}

/// Log coordinates `log psi_i(x)` of an interior point of a polyhedral cone.
pub fn log_embed(cone: &ConeSpec, x: &Point) -> Result<Vec<f64>> {
    let facets = cone
        .facet_rows()
        .ok_or_else(|| Error::Domain("log embedding needs a polyhedral cone".into()))?;
    let margin = cone.margin(x)?;
    if !(margin > 0.0) {
        return domain(format!("point is not in the interior (margin {margin:e})"));
    }
    Ok(facets.iter().map(|f| f.dot(x).ln()).collect())
}

pub fn sup_gap(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).fold(0.0, |m, (p, q)| m.max((p - q).abs()))
}

/// Global chart of the simplicial cone spanned by a basis: `x -> log(T x)` with
/// `T` the inverse of the basis matrix.
#[derive(Debug, Clone)]
pub struct SimplicialChart {
    basis: DMatrix<f64>,
    inverse: DMatrix<f64>,
    condition: f64,
}

impl SimplicialChart {
    /// `basis` holds the generating rays; they must be linearly independent.
    pub fn new(basis: &[Point]) -> Result<Self> {
        let n = basis.len();
        if n == 0 || basis.iter().any(|b| b.len() != n) {
            return input(format!("need {n} basis vectors of length {n}"));
        }
        let b = DMatrix::from_fn(n, n, |i, j| basis[j][i]);
        let sv = b.singular_values();
        let (smax, smin) = (sv.max(), sv.min());
        if !(smin > 1e-14 * smax) {
            return domain("basis vectors are linearly dependent");
        }
        let inverse = b
            .clone()
            .try_inverse()
            .ok_or_else(|| Error::Domain("basis matrix is singular".into()))?;
        Ok(SimplicialChart {
            basis: b,
            inverse,
            condition: smax / smin,
        })
    }

    /// Spectral condition number of the basis matrix.
    pub fn condition_number(&self) -> f64 {
        self.condition
    }

    /// The cone itself, with the rows of `T` as facet functionals.
    pub fn cone(&self) -> Result<ConeSpec> {
        let n = self.inverse.nrows();
        ConeSpec::polyhedral(
            (0..n)
                .map(|i| self.inverse.row(i).iter().copied().collect())
                .collect(),
        )
    }

    pub fn map(&self, x: &Point) -> Result<Vec<f64>> {
        if x.len() != self.inverse.ncols() {
            return input("point has the wrong dimension");
        }
        let c = &self.inverse * DVector::from_column_slice(x.coords());
        if let Some(i) = c.iter().position(|v| !(*v > 0.0)) {
            return domain(format!("coefficient {i} of the point is {} <= 0", c[i]));
        }
        Ok(c.iter().map(|v| v.ln()).collect())
    }

    pub fn inverse_map(&self, z: &[f64]) -> Result<Point> {
        if z.len() != self.basis.ncols() {
            return input("chart coordinates have the wrong dimension");
        }
        let e = DVector::from_iterator(z.len(), z.iter().map(|v| v.exp()));
        Ok(Point::new((&self.basis * e).iter().copied().collect()))
    }
}

/// `(x | y)_{p, eta} = (d(x, p) + d(y, p) - eta d(x, y)) / 2`.
pub fn gromov_product(cone: &ConeSpec, p: &Point, x: &Point, y: &Point, eta: f64) -> Result<f64> {
    if !(eta > 0.0) {
        return input(format!("eta must be positive, got {eta}"));
    }
    let dxp = cone.thompson_distance(x, p)?;
    let dyp = cone.thompson_distance(y, p)?;
    let dxy = cone.thompson_distance(x, y)?;
    Ok(0.5 * (dxp + dyp - eta * dxy))
}

/// Gromov products of two sequences against a common base point.
#[derive(Debug, Clone, PartialEq)]
pub struct GromovSeries {
    pub base: Point,
    pub eta: f64,
    pub first: Vec<Point>,
    pub second: Vec<Point>,
    pub values: Vec<f64>,
}

impl GromovSeries {
    pub fn new(
        cone: &ConeSpec,
        base: &Point,
        first: &[Point],
        second: &[Point],
        eta: f64,
    ) -> Result<Self> {
        if first.len() != second.len() {
            return input("sequences must have equal length");
        }
        let values = first
            .iter()
            .zip(second)
            .map(|(x, y)| gromov_product(cone, base, x, y, eta))
            .collect::<Result<Vec<_>>>()?;
        Ok(GromovSeries {
            base: base.clone(),
            eta,
            first: first.to_vec(),
            second: second.to_vec(),
            values,
        })
    }

    /// Largest value over `k` in `[from, to]` (1-based, inclusive).
    pub fn tail_max(&self, from: usize, to: usize) -> f64 {
        self.values
            .iter()
            .enumerate()
            .filter(|(i, _)| (from..=to).contains(&(i + 1)))
            .map(|(_, v)| *v)
            .fold(f64::NEG_INFINITY, f64::max)
    }
}

/// Absolute bisection tolerance on the distance.
const BISECTION_TOL: f64 = 1e-10;
/// Floor of the distance mismatch accepted when `f64` cannot resolve the target point.
const REACH_TOL: f64 = 1e-6;

/// For each boundary direction `w_i` and `k = 1..=k_max`, the point on the segment
/// from `p` to `w_i` at Thompson distance `k` from `p`.
///
/// Points are written as `w + s (p - w)`, so the bisection runs in `log s` and keeps
/// full relative precision in `s` as the point approaches the boundary. The distance
/// is matched to within `1e-10` or to the resolution of `f64`, whichever is coarser.
pub fn boundary_sequences(
    cone: &ConeSpec,
    p: &Point,
    directions: &[Point],
    k_max: usize,
) -> Result<Vec<Vec<Point>>> {
    if !(cone.margin(p)? > 0.0) {
        return domain("base point is not in the interior");
    }
    for (i, w) in directions.iter().enumerate() {
        if cone.classify(w)?.class != MembershipClass::Boundary {
            return domain(format!("direction {i} is not on the boundary"));
        }
    }
    for i in 0..directions.len() {
        for j in (i + 1)..directions.len() {
            let chord = directions[i].combine(0.5, &directions[j], 0.5);
            if !cone.classify(&chord)?.is_interior() {
                return domain(format!(
                    "chord between directions {i} and {j} is not interior"
                ));
            }
        }
    }
    directions
        .iter()
        .map(|w| {
            (1..=k_max)
                .map(|k| point_at_distance(cone, p, w, k as f64))
                .collect()
        })
        .collect()
}

fn point_at_distance(cone: &ConeSpec, p: &Point, w: &Point, target: f64) -> Result<Point> {
    let at = |log_s: f64| w.combine(1.0, &p.combine(1.0, w, -1.0), log_s.exp());
    // None once the point has left the interior: a direction that is on the boundary
    // only up to rounding can put the far end of the segment just outside
    let dist = |log_s: f64| cone.thompson_distance(&at(log_s), p).ok();
    let mut reached = 0.0_f64;
    let not_reached = |reached: f64| {
        Err(Error::Numeric(format!(
            "distance {target} not reached along the segment; largest distance reached {reached}"
        )))
    };
    // expand towards the boundary until the distance reaches the target
    let mut hi = 0.0; // s = 1 is p itself
    let mut lo = -std::f64::consts::LN_2;
    loop {
        match dist(lo) {
            Some(d) if d < target => {
                reached = reached.max(d);
                hi = lo;
                lo *= 2.0;
            }
            _ => break,
        }
        if lo < f64::MIN_POSITIVE.ln() {
            return not_reached(reached);
        }
    }
    let mut best: Option<(f64, f64)> = dist(lo).map(|d| ((d - target).abs(), lo));
    for _ in 0..400 {
        let mid = 0.5 * (lo + hi);
        if mid == lo || mid == hi {
            break;
        }
        let d = dist(mid);
        if let Some(d) = d {
            reached = reached.max(d);
            if best.is_none_or(|(e, _)| (d - target).abs() < e) {
                best = Some(((d - target).abs(), mid));
            }
            if (d - target).abs() <= BISECTION_TOL {
                break;
            }
        }
        if d.is_none_or(|d| d >= target) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    match best {
        // a point at distance k has margin ~e^-k against O(1) coordinates, so rounding
        // alone moves its distance by ~eps e^k
        Some((err, log_s)) if err <= REACH_TOL.max(64.0 * f64::EPSILON * target.exp()) => {
            Ok(at(log_s))
        }
        _ => not_reached(reached),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn log_embed_examples() {
        let o2 = ConeSpec::orthant(2).unwrap();
        let e = log_embed(&o2, &Point::from([2.0, 3.0])).unwrap();
        assert_eq!(e, vec![2f64.ln(), 3f64.ln()]);
        let o3 = ConeSpec::orthant(3).unwrap();
        let (x, y) = (Point::from([2.0, 1.0, 1.0]), Point::from([1.0, 1.0, 2.0]));
        let gap = sup_gap(&log_embed(&o3, &x).unwrap(), &log_embed(&o3, &y).unwrap());
        assert!((gap - 2f64.ln()).abs() < 1e-15);
        let lam: f64 = 3.0;
        let a = log_embed(&o3, &x).unwrap();
        let b = log_embed(&o3, &x.scale(lam)).unwrap();
        for (p, q) in a.iter().zip(&b) {
            assert!((q - p - lam.ln()).abs() < 1e-14);
        }
        assert!(log_embed(&o3, &Point::from([1.0, 0.0, 1.0])).is_err());
        assert!(log_embed(&ConeSpec::psd(2).unwrap(), &Point::diag(&[1.0, 1.0])).is_err());
    }

    #[test]
    fn redundant_row_is_idle() {
        // x >= 0, y >= 0 and the redundant x + y >= 0
        let c = ConeSpec::polyhedral(vec![vec![1.0, 0.0], vec![0.0, 1.0], vec![1.0, 1.0]]).unwrap();
        let emb = LogEmbedding::new(&c).unwrap();
        assert_eq!(emb.idle_rows(400, 0).unwrap(), vec![2]);
        let hex = sampling::regular_polygonal_cone(6).unwrap();
        assert!(LogEmbedding::new(&hex)
            .unwrap()
            .idle_rows(400, 0)
            .unwrap()
            .is_empty());
    }

    #[test]
    fn simplicial_chart() {
        let id = SimplicialChart::new(&[Point::from([1.0, 0.0]), Point::from([0.0, 1.0])]).unwrap();
        let x = Point::from([2.0, 5.0]);
        assert_eq!(
            id.map(&x).unwrap(),
            log_embed(&ConeSpec::orthant(2).unwrap(), &x).unwrap()
        );

        let chart =
            SimplicialChart::new(&[Point::from([1.0, 0.0]), Point::from([1.0, 1.0])]).unwrap();
        let cone = chart.cone().unwrap();
        let (x, y) = (Point::from([3.0, 1.0]), Point::from([2.0, 1.5]));
        // facets of the cone spanned by (1,0) and (1,1): b >= 0 and a - b >= 0
        let by_hand = {
            let r = [(3.0 - 1.0) / (2.0 - 1.5), 1.0 / 1.5_f64];
            let big = r[0].max(r[1]);
            let small = r[0].min(r[1]);
            big.ln().max(-small.ln())
        };
        assert!((cone.thompson_distance(&x, &y).unwrap() - by_hand).abs() < 1e-14);
        let gap = sup_gap(&chart.map(&x).unwrap(), &chart.map(&y).unwrap());
        assert!((gap - by_hand).abs() < 1e-14);
        let back = chart.inverse_map(&chart.map(&x).unwrap()).unwrap();
        assert!(back.sup_distance(&x) < 1e-12);
        assert!(SimplicialChart::new(&[Point::from([1.0, 1.0]), Point::from([2.0, 2.0])]).is_err());
    }

    #[test]
    fn gromov_examples() {
        let c = ConeSpec::orthant(2).unwrap();
        let p = Point::from([1.0, 2.0]);
        let x = Point::from([3.0, 1.0]);
        let g = gromov_product(&c, &p, &x, &x, 1.0).unwrap();
        assert!((g - c.thompson_distance(&x, &p).unwrap()).abs() < 1e-15);
        assert_eq!(gromov_product(&c, &p, &p, &p, 2.0).unwrap(), 0.0);
        // ray distances are |log| of the scale ratios: ln 2, ln 4 and ln 2
        let v = gromov_product(&c, &p, &p.scale(2.0), &p.scale(4.0), 2.0).unwrap();
        let expected = 0.5 * (2f64.ln() + 4f64.ln() - 2.0 * 2f64.ln());
        assert!((v - expected).abs() < 1e-15);
        assert!((v - 0.5 * 2f64.ln()).abs() < 1e-15);
        assert!(gromov_product(&c, &p, &x, &x, 0.0).is_err());
    }

    #[test]
    fn orthant_sequences_hit_integer_distances() {
        let c = ConeSpec::orthant(2).unwrap();
        let p = Point::from([1.0, 1.0]);
        let dirs = [Point::from([1.0, 0.0]), Point::from([0.0, 1.0])];
        let seqs = boundary_sequences(&c, &p, &dirs, 30).unwrap();
        for seq in &seqs {
            for (k, x) in seq.iter().enumerate() {
                let d = c.thompson_distance(x, &p).unwrap();
                assert!((d - (k + 1) as f64).abs() <= 1e-9, "k={} d={d}", k + 1);
            }
        }
        let series = GromovSeries::new(&c, &p, &seqs[0], &seqs[1], 2.0).unwrap();
        assert!(series.tail_max(10, 30) < 1.0);
    }

    #[test]
    fn lorentz_sequences_moderate_k() {
        let c = ConeSpec::lorentz(3).unwrap();
        let p = Point::from([1.0, 0.0, 0.0]);
        let dirs = [Point::from([1.0, 1.0, 0.0]), Point::from([1.0, -1.0, 0.0])];
        let seqs = boundary_sequences(&c, &p, &dirs, 12).unwrap();
        for seq in &seqs {
            for (k, x) in seq.iter().enumerate() {
                let d = c.thompson_distance(x, &p).unwrap();
                assert!((d - (k + 1) as f64).abs() <= 1e-9, "k={} d={d}", k + 1);
            }
        }
    }

    #[test]
    fn invalid_directions() {
        let c = ConeSpec::lorentz(3).unwrap();
        let p = Point::from([1.0, 0.0, 0.0]);
        let interior = [Point::from([1.0, 0.5, 0.0])];
        assert!(matches!(
            boundary_sequences(&c, &p, &interior, 3),
            Err(Error::Domain(_))
        ));
        let same = [Point::from([1.0, 1.0, 0.0]), Point::from([2.0, 2.0, 0.0])];
        assert!(matches!(
            boundary_sequences(&c, &p, &same, 3),
            Err(Error::Domain(_))
        ));
    }
}
