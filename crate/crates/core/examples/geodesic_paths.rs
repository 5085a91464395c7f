//! Explicit Thompson geodesics: a balanced pair (one hyperbolic leg) and an
//! unbalanced pair (hyperbolic leg plus a leg along a ray), in both leg orders.

use conemetric::geodesics::{self, LegOrder};
use conemetric::{ConeSpec, GeodesicLeg, Point, Result};

fn describe(path: &conemetric::GeodesicPath) {
    for leg in path.legs() {
        match leg {
            GeodesicLeg::TypeI { alpha, .. } => println!(
                "    plane leg, scale {alpha:.4}, length {:.4}",
                leg.length()
            ),
            GeodesicLeg::TypeII { log_rate, .. } => println!(
                "    ray leg, log rate {log_rate:.4}, length {:.4}",
                leg.length()
            ),
        }
    }
}

fn main() -> Result<()> {
    let cone = ConeSpec::psd(2)?;
    let x = Point::diag(&[1.0, 1.0]);
    let balanced = Point::diag(&[2.0, 0.5]);
    let path = geodesics::geodesic(&cone, &x, &balanced)?;
    println!("balanced pair, length {:.6}", path.total_length());
    describe(&path);
    for p in path.sample(4) {
        println!("  {p}");
    }

    let unbalanced = Point::diag(&[3.0, 1.2]);
    for order in [LegOrder::PlaneFirst, LegOrder::RayFirst] {
        let path = geodesics::geodesic_with_order(&cone, &x, &unbalanced, order)?;
        println!(
            "unbalanced pair, {order:?}, length {:.6}",
            path.total_length()
        );
        describe(&path);
        let mid = path.midpoint();
        println!(
            "  midpoint {mid}: d(x,m) = {:.6}, d(m,y) = {:.6}",
            cone.thompson_distance(&x, &mid)?,
            cone.thompson_distance(&mid, &unbalanced)?
        );
    }
    Ok(())
}
