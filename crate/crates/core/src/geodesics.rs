//! Unit-speed Thompson geodesics: type I legs `t -> alpha (e^t u + e^-t v)` inside the
//! plane of the endpoints, type II legs along a ray, and their concatenation for
//! pairs with `M(x/y) != M(y/x)`.

use crate::cones::ConeSpec;
use crate::error::{domain, Result};
use crate::point::Point;

/// Pairs with `|M(x/y) - M(y/x)| <= BALANCE_TOL * M(x/y)` are treated as balanced.
pub const BALANCE_TOL: f64 = 1e-9;
const EVAL_SLACK: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub enum GeodesicLeg {
    /// `t -> alpha (e^t u + e^-t v)` for `t` in `[t_start, t_end]`; `u`, `v` are
    /// boundary points of unit sup norm.
    TypeI {
        u: Point,
        v: Point,
        alpha: f64,
        t_start: f64,
        t_end: f64,
    },
    /// `t -> e^(log_rate t) base` for `t` in `[t_start, t_end]`, `log_rate = +-1`.
    TypeII {
        base: Point,
        log_rate: f64,
        t_start: f64,
        t_end: f64,
    },
}

impl GeodesicLeg {
    pub fn length(&self) -> f64 {
        match self {
            GeodesicLeg::TypeI { t_start, t_end, .. }
            | GeodesicLeg::TypeII { t_start, t_end, .. } => t_end - t_start,
        }
    }

    /// Point at arclength `s` from the start of the leg.
    fn at(&self, s: f64) -> Point {
        match self {
            GeodesicLeg::TypeI {
                u,
                v,
                alpha,
                t_start,
                ..
            } => {
                let t = t_start + s;
                u.combine(alpha * t.exp(), v, alpha * (-t).exp())
            }
            GeodesicLeg::TypeII {
                base,
                log_rate,
                t_start,
                ..
            } => base.scale((log_rate * (t_start + s)).exp()),
        }
    }
}

/// A unit-speed path made of consecutive legs.
#[derive(Debug, Clone, PartialEq)]
pub struct GeodesicPath {
    start: Point,
    legs: Vec<GeodesicLeg>,
    total_length: f64,
}

/// Order of the two legs joining an unbalanced pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum LegOrder {
    /// Type I leg from `x` to `lambda y`, then along the ray to `y`.
    #[default]
    PlaneFirst,
    /// Along the ray from `x` to `x / lambda`, then a type I leg to `y`.
    RayFirst,
}

impl GeodesicPath {
    fn new(start: Point, legs: Vec<GeodesicLeg>) -> Self {
        let total_length = legs.iter().map(GeodesicLeg::length).sum();
        GeodesicPath {
            start,
            legs,
            total_length,
        }
    }

    pub fn legs(&self) -> &[GeodesicLeg] {
        &self.legs
    }

    pub fn total_length(&self) -> f64 {
        self.total_length
    }

    pub fn start(&self) -> &Point {
        &self.start
    }

    pub fn end(&self) -> Point {
        self.at(self.total_length)
    }

    /// Point at arclength `s`; values within `1e-12` outside `[0, total_length]` are clamped.
    pub fn eval(&self, s: f64) -> Result<Point> {
        let slack = EVAL_SLACK * self.total_length.max(1.0);
        if !(s >= -slack && s <= self.total_length + slack) {
            return domain(format!("arclength {s} outside [0, {}]", self.total_length));
        }
        Ok(self.at(s))
    }

    fn at(&self, s: f64) -> Point {
        let mut rest = s.clamp(0.0, self.total_length);
        for (i, leg) in self.legs.iter().enumerate() {
            let len = leg.length();
            if rest <= len || i + 1 == self.legs.len() {
                return leg.at(rest.min(len));
            }
            rest -= len;
        }
        self.start.clone()
    }

    pub fn midpoint(&self) -> Point {
        self.at(0.5 * self.total_length)
    }

    /// `n + 1` equally spaced points from start to end.
    pub fn sample(&self, n: usize) -> Vec<Point> {
        if n == 0 {
            return vec![self.start.clone()];
        }
        (0..=n)
            .map(|i| self.at(self.total_length * i as f64 / n as f64))
            .collect()
    }

    /// Smallest sup-norm distance from `w` to the path, divided by the larger sup norm
    /// of the two endpoints.
    pub fn relative_sup_distance(&self, w: &Point) -> f64 {
        let scale = self.start.sup_norm().max(self.end().sup_norm());
        let len = self.total_length;
        let dist = |s: f64| self.at(s).sup_distance(w);
        if len == 0.0 {
            return dist(0.0) / scale;
        }
        const GRID: usize = 2000;
        let h = len / GRID as f64;
        let (best_i, mut best) =
            (0..=GRID)
                .map(|i| (i, dist(i as f64 * h)))
                .fold(
                    (0, f64::INFINITY),
                    |acc, c| if c.1 < acc.1 { c } else { acc },
                );
        // golden-section refinement in the neighbouring cells
        let (mut a, mut b) = (
            (best_i as f64 - 1.0).max(0.0) * h,
            (best_i as f64 + 1.0).min(GRID as f64) * h,
        );
        let g = 0.5 * (5f64.sqrt() - 1.0);
        for _ in 0..60 {
            let c = b - g * (b - a);
            let d = a + g * (b - a);
            if dist(c) < dist(d) {
                b = d;
            } else {
                a = c;
            }
        }
        best = best.min(dist(0.5 * (a + b)));
        best / scale
    }
}

/// `lambda = sqrt(M(x/y) / M(y/x))`, so that `M(x / lambda y) = M(lambda y / x)`.
pub fn balance_scale(cone: &ConeSpec, x: &Point, y: &Point) -> Result<f64> {
    let r = cone.m_ratio(x, y)?;
    // M(y/x) = 1 / m(x/y)
    Ok((r.max_ratio * r.min_ratio).sqrt())
}

/// True when `M(x/y)` and `M(y/x)` agree within [`BALANCE_TOL`].
pub fn is_balanced(cone: &ConeSpec, x: &Point, y: &Point) -> Result<bool> {
    let r = cone.m_ratio(x, y)?;
    let m_yx = 1.0 / r.min_ratio;
    Ok((r.max_ratio - m_yx).abs() <= BALANCE_TOL * r.max_ratio)
}

fn type_one_leg(cone: &ConeSpec, x: &Point, y: &Point) -> Result<GeodesicLeg> {
    let (v_ray, u_ray, r) = cone.boundary_rays(x, y)?;
    let (big, small) = (r.max_ratio, r.min_ratio);
    if (big - 1.0 / small).abs() > BALANCE_TOL * big {
        return domain(format!(
            "M(x/y) = {big} and M(y/x) = {} differ; use geodesic() for unbalanced pairs",
            1.0 / small
        ));
    }
    // x = (m U + M V)/(M - m), y = (U + V)/(M - m) with U = M y - x, V = x - m y
    let (nu, nv) = (u_ray.sup_norm(), v_ray.sup_norm());
    let u = u_ray.scale(1.0 / nu);
    let v = v_ray.scale(1.0 / nv);
    let gap = big - small;
    let (ax, bx) = (small * nu / gap, big * nv / gap);
    let (ay, by) = (nu / gap, nv / gap);
    let alpha = ((ax * bx).sqrt() * (ay * by).sqrt()).sqrt();
    Ok(GeodesicLeg::TypeI {
        u,
        v,
        alpha,
        t_start: 0.5 * (ax / bx).ln(),
        t_end: 0.5 * (ay / by).ln(),
    })
}

/// The type I geodesic between a balanced, linearly independent pair.
pub fn type_one_path(cone: &ConeSpec, x: &Point, y: &Point) -> Result<GeodesicPath> {
    let leg = type_one_leg(cone, x, y)?;
    Ok(GeodesicPath::new(x.clone(), vec![leg]))
}

fn ray_leg(x: &Point, lam: f64) -> GeodesicLeg {
    let len = lam.ln().abs();
    GeodesicLeg::TypeII {
        base: x.clone(),
        log_rate: if lam >= 1.0 { 1.0 } else { -1.0 },
        t_start: 0.0,
        t_end: len,
    }
}

/// The ray segment from `x` to `lam x`.
pub fn type_two_path(cone: &ConeSpec, x: &Point, lam: f64) -> Result<GeodesicPath> {
    if !(lam > 0.0) || !lam.is_finite() {
        return domain(format!("ray factor must be positive, got {lam}"));
    }
    let margin = cone.margin(x)?;
    if !(margin > 0.0) {
        return domain("x is not in the interior");
    }
    let legs = if lam == 1.0 {
        Vec::new()
    } else {
        vec![ray_leg(x, lam)]
    };
    Ok(GeodesicPath::new(x.clone(), legs))
}

/// The canonical geodesic from `x` to `y` (type I leg first for unbalanced pairs).
pub fn geodesic(cone: &ConeSpec, x: &Point, y: &Point) -> Result<GeodesicPath> {
    geodesic_with_order(cone, x, y, LegOrder::PlaneFirst)
}

pub fn geodesic_with_order(
    cone: &ConeSpec,
    x: &Point,
    y: &Point,
    order: LegOrder,
) -> Result<GeodesicPath> {
    let r = cone.m_ratio(x, y)?;
    if ConeSpec::are_equal(x, y) {
        return Ok(GeodesicPath::new(x.clone(), Vec::new()));
    }
    if ConeSpec::are_collinear(x, y) {
        let lam = y.norm() / x.norm();
        return type_two_path(cone, x, lam);
    }
    let m_yx = 1.0 / r.min_ratio;
    if (r.max_ratio - m_yx).abs() <= BALANCE_TOL * r.max_ratio {
        return type_one_path(cone, x, y);
    }
    let lam = (r.max_ratio * r.min_ratio).sqrt();
    let legs = match order {
        LegOrder::PlaneFirst => {
            let ly = y.scale(lam);
            vec![type_one_leg(cone, x, &ly)?, ray_leg(&ly, 1.0 / lam)]
        }
        LegOrder::RayFirst => {
            let xl = x.scale(1.0 / lam);
            vec![ray_leg(x, 1.0 / lam), type_one_leg(cone, &xl, y)?]
        }
    };
    Ok(GeodesicPath::new(x.clone(), legs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cones::MembershipClass;

    fn o2() -> ConeSpec {
        ConeSpec::orthant(2).unwrap()
    }

    #[test]
    fn balance_scale_examples() {
        let c = o2();
        let x = Point::from([1.0, 1.0]);
        assert!((balance_scale(&c, &x, &Point::from([4.0, 0.25])).unwrap() - 1.0).abs() < 1e-15);
        let y = Point::from([4.0, 1.0]);
        let lam = balance_scale(&c, &x, &y).unwrap();
        assert!((lam - 0.5).abs() < 1e-15);
        let ly = y.scale(lam);
        let a = c.m_ratio(&x, &ly).unwrap().max_ratio;
        let b = c.m_ratio(&ly, &x).unwrap().max_ratio;
        assert!((a - b).abs() < 1e-10 * a);
        assert!((balance_scale(&c, &x, &x.scale(2.0)).unwrap() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn type_one_midpoint_is_log_midpoint() {
        let c = o2();
        let (x, y) = (Point::from([1.0, 1.0]), Point::from([4.0, 0.25]));
        let p = type_one_path(&c, &x, &y).unwrap();
        assert!((p.total_length() - 4f64.ln()).abs() < 1e-12);
        // straight segment between log images (0,0) and (log 4, -log 4)
        let mid_log = [0.5 * 4f64.ln(), -0.5 * 4f64.ln()];
        let expected = Point::from([mid_log[0].exp(), mid_log[1].exp()]);
        assert!(
            p.eval(0.5 * p.total_length())
                .unwrap()
                .sup_distance(&expected)
                < 1e-12
        );
        assert!(p.eval(0.0).unwrap().sup_distance(&x) < 1e-10);
        assert!(p.eval(p.total_length()).unwrap().sup_distance(&y) < 1e-10);
        for leg in p.legs() {
            if let GeodesicLeg::TypeI { u, v, alpha, .. } = leg {
                assert!(*alpha > 0.0);
                assert_eq!(c.classify(u).unwrap().class, MembershipClass::Boundary);
                assert_eq!(c.classify(v).unwrap().class, MembershipClass::Boundary);
            }
        }
    }

    #[test]
    fn type_one_on_diagonal_matrices() {
        let c = ConeSpec::psd(2).unwrap();
        let (x, y) = (Point::diag(&[1.0, 1.0]), Point::diag(&[4.0, 0.25]));
        let p = type_one_path(&c, &x, &y).unwrap();
        let mid = p.midpoint();
        assert!(mid.sup_distance(&Point::diag(&[2.0, 0.5])) < 1e-12);
    }

    #[test]
    fn type_one_rejects_unbalanced_and_collinear() {
        let c = o2();
        let x = Point::from([1.0, 1.0]);
        assert!(type_one_path(&c, &x, &Point::from([4.0, 1.0])).is_err());
        assert!(type_one_path(&c, &x, &x.scale(2.0)).is_err());
    }

    #[test]
    fn ray_paths() {
        let c = o2();
        let x = Point::from([1.0, 3.0]);
        let p = type_two_path(&c, &x, 2.0).unwrap();
        let mid = p.eval(0.5 * p.total_length()).unwrap();
        assert!(mid.sup_distance(&x.scale(2f64.sqrt())) < 1e-14);
        let zero = type_two_path(&c, &x, 1.0).unwrap();
        assert_eq!(zero.total_length(), 0.0);
        assert_eq!(zero.eval(0.0).unwrap(), x);
        assert!(type_two_path(&c, &x, -1.0).is_err());
        let down = type_two_path(&c, &x, 0.25).unwrap();
        for (s, t) in [(0.1, 1.2), (0.0, 4f64.ln()), (0.7, 0.3)] {
            let d = c
                .thompson_distance(&down.eval(s).unwrap(), &down.eval(t).unwrap())
                .unwrap();
            assert!((d - (s - t).abs()).abs() < 1e-13);
        }
    }

    #[test]
    fn unbalanced_pair_concatenates() {
        let c = o2();
        let (x, y) = (Point::from([1.0, 1.0]), Point::from([4.0, 1.0]));
        let p = geodesic(&c, &x, &y).unwrap();
        assert_eq!(p.legs().len(), 2);
        assert!((p.legs()[0].length() - 2f64.ln()).abs() < 1e-12);
        assert!((p.legs()[1].length() - 2f64.ln()).abs() < 1e-12);
        assert!((p.total_length() - c.thompson_distance(&x, &y).unwrap()).abs() < 1e-12);
        assert!(p.end().sup_distance(&y) < 1e-10);
        let alt = geodesic_with_order(&c, &x, &y, LegOrder::RayFirst).unwrap();
        assert!((alt.total_length() - p.total_length()).abs() < 1e-12);
        assert!(alt.end().sup_distance(&y) < 1e-10);
        assert!(alt.midpoint().sup_distance(&p.midpoint()) >= 1e-3);
    }

    #[test]
    fn dispatch_special_cases() {
        let c = o2();
        let x = Point::from([1.0, 2.0]);
        assert_eq!(geodesic(&c, &x, &x).unwrap().total_length(), 0.0);
        assert_eq!(
            geodesic(&c, &x, &x.scale(3.0)).unwrap(),
            type_two_path(&c, &x, 3.0).unwrap()
        );
        let y = Point::from([4.0, 0.5]);
        assert_eq!(
            geodesic(&c, &x, &y).unwrap(),
            type_one_path(&c, &x, &y).unwrap()
        );
        assert!(geodesic(&c, &x, &x).unwrap().eval(1.0).is_err());
    }

    #[test]
    fn distance_to_path() {
        let c = o2();
        let p = geodesic(&c, &Point::from([1.0, 1.0]), &Point::from([4.0, 0.25])).unwrap();
        assert!(p.relative_sup_distance(&p.eval(0.3).unwrap()) < 1e-9);
        assert!(p.relative_sup_distance(&Point::from([1.0, 2.0])) > 0.1);
    }
}
