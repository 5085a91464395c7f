//! Generalized Gromov products along sequences running out to the boundary, and the
//! divergence of parallel type I curves in a non-simplicial polyhedral cone.

use conemetric::embeddings::{boundary_sequences, GromovSeries};
use conemetric::{ConeSpec, Point, Result};

fn main() -> Result<()> {
    let lorentz = ConeSpec::lorentz(3)?;
    let p = Point::from([1.0, 0.0, 0.0]);
    let dirs = [
        Point::from([1.0, 1.0, 0.0]),
        Point::from([1.0, 0.0, 1.0]),
        Point::from([1.0, -1.0, 0.0]),
    ];
    let seqs = boundary_sequences(&lorentz, &p, &dirs, 30)?;
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        let series = GromovSeries::new(&lorentz, &p, &seqs[i], &seqs[j], 2.0)?;
        let z = dirs[i].combine(0.5, &dirs[j], 0.5);
        println!(
            "lorentz directions {i},{j}: max product over k in [10,30] = {:.4}, d(z,p) = {:.4}",
            series.tail_max(10, 30),
            lorentz.thompson_distance(&z, &p)?
        );
    }

    let square = ConeSpec::polyhedral(vec![
        vec![1.0, -1.0, 0.0],
        vec![1.0, 1.0, 0.0],
        vec![1.0, 0.0, -1.0],
        vec![1.0, 0.0, 1.0],
    ])?;
    let u = Point::from([1.0, -1.0, 0.0]);
    let (v1, v2) = (Point::from([1.0, 1.0, 1.0]), Point::from([1.0, 1.0, -1.0]));
    println!("square cone, d(e^t u + e^-t v1, e^t u + e^-t v2):");
    for t in [-10.0, -5.0, 0.0, 5.0, 10.0_f64] {
        let a = u.combine(t.exp(), &v1, (-t).exp());
        let b = u.combine(t.exp(), &v2, (-t).exp());
        println!("  t = {t:>5}: {:.6}", square.thompson_distance(&a, &b)?);
    }
    Ok(())
}
