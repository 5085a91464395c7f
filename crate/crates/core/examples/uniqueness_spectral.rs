//! Unique-geodesic test on symmetric cones and the constructive witness for
//! non-uniqueness, cross-checked against the midpoint oracle.

use conemetric::uniqueness::{self, midpoint_oracle, spectral_witness};
use conemetric::{ConeSpec, JordanAlgebra, Point, Result};

fn main() -> Result<()> {
    let psd2 = ConeSpec::psd(2)?;
    let v = uniqueness::is_unique(&psd2, &Point::diag(&[1.0, 1.0]), &Point::diag(&[2.0, 0.5]))?;
    println!(
        "psd(2) I vs diag(2, .5): {} via {} spectrum {:?}",
        v.status, v.method, v.spectrum
    );

    let psd3 = ConeSpec::psd(3)?;
    let x = Point::diag(&[1.0, 1.0, 1.0]);
    let y = Point::diag(&[2.5, 1.3, 0.4]);
    let v = uniqueness::is_unique(&psd3, &x, &y)?;
    println!(
        "psd(3) I vs diag(2.5, 1.3, .4): {} via {}",
        v.status, v.method
    );

    let w = spectral_witness(JordanAlgebra::Sym(3), &x, &y, 1)?;
    let d = psd3.thompson_distance(&x, &y)?;
    println!("  witness {w}");
    println!(
        "  d(x,w) = {:.9}, d(w,y) = {:.9}, d/2 = {:.9}",
        psd3.thompson_distance(&x, &w)?,
        psd3.thompson_distance(&w, &y)?,
        0.5 * d
    );
    let found = midpoint_oracle(&psd3, &x, &y, 10_000, 0.5, 0)?;
    println!(
        "  oracle found an alternative midpoint: {}",
        found.is_some()
    );

    let h = uniqueness::hilbert_unique(&psd3, &x, &y.scale(7.0))?;
    println!("hilbert, scaled y: {} via {}", h.status, h.method);
    Ok(())
}
