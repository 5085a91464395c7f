//! Thompson and Hilbert distances on the four cone families, plus the cross-ratio
//! form of Hilbert's metric and the boundary points of the line through two points.

use conemetric::{ConeSpec, Point, Result};

fn main() -> Result<()> {
    let orthant = ConeSpec::orthant(3)?;
    let (x, y) = (Point::from([2.0, 1.0, 1.0]), Point::from([1.0, 1.0, 2.0]));
    println!("orthant(3)  x = {x}, y = {y}");
    println!(
        "  thompson {:.6}  hilbert {:.6}",
        orthant.thompson_distance(&x, &y)?,
        orthant.hilbert_distance(&x, &y)?
    );

    let lorentz = ConeSpec::lorentz(3)?;
    let (a, b) = (
        Point::from([1.0, 0.0, 0.0]),
        Point::from([2.0f64.cosh(), 2.0f64.sinh(), 0.0]),
    );
    println!("lorentz(3)  points on the unit hyperboloid, hyperbolic distance 2");
    println!("  thompson {:.6}", lorentz.thompson_distance(&a, &b)?);

    let psd = ConeSpec::psd(2)?;
    let (p, q) = (Point::diag(&[1.0, 1.0]), Point::from([2.0, 0.5, 0.5, 1.0]));
    println!("psd(2)  I vs [[2, .5], [.5, 1]]");
    println!(
        "  thompson {:.6}  hilbert {:.6}",
        psd.thompson_distance(&p, &q)?,
        psd.hilbert_distance(&p, &q)?
    );

    let square = ConeSpec::polyhedral(vec![
        vec![1.0, -1.0, 0.0],
        vec![1.0, 1.0, 0.0],
        vec![1.0, 0.0, -1.0],
        vec![1.0, 0.0, 1.0],
    ])?;
    let (u, v) = (Point::from([3.0, 1.0, 0.5]), Point::from([2.0, -0.5, 1.0]));
    let line = square.line_boundary_points(&u, &v)?;
    if let Some((xp, yp)) = line.pair() {
        println!("square cone: line through u, v leaves the cone at {xp} and {yp}");
    }
    let phi = Point::from([1.0, 0.0, 0.0]);
    println!(
        "  hilbert {:.6}  via cross ratio {:.6}",
        square.hilbert_distance(&u, &v)?,
        square.cross_ratio_distance(&u, &v, &phi)?
    );
    Ok(())
}
