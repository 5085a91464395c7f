//! Isometric log embedding of a polyhedral cone into sup-norm space and the global
//! chart of a simplicial cone.

use conemetric::embeddings::{log_embed, sup_gap, LogEmbedding, SimplicialChart};
use conemetric::sampling::regular_polygonal_cone;
use conemetric::{ConeSpec, Point, Result};

fn main() -> Result<()> {
    let hex = regular_polygonal_cone(6)?;
    let emb = LogEmbedding::new(&hex)?;
    let (x, y) = (Point::from([1.0, 0.2, -0.3]), Point::from([2.0, -0.5, 0.6]));
    let (ex, ey) = (emb.embed(&x)?, emb.embed(&y)?);
    println!("hexagonal cone into R^{}", emb.target_dim());
    println!("  |Psi(x) - Psi(y)|_inf = {:.12}", sup_gap(&ex, &ey));
    println!(
        "  thompson distance     = {:.12}",
        hex.thompson_distance(&x, &y)?
    );

    let redundant = ConeSpec::polyhedral(vec![vec![1.0, 0.0], vec![0.0, 1.0], vec![1.0, 1.0]])?;
    println!(
        "rows never deciding a distance: {:?}",
        LogEmbedding::new(&redundant)?.idle_rows(400, 0)?
    );
    println!(
        "orthant log coordinates of (1, e): {:?}",
        log_embed(
            &ConeSpec::orthant(2)?,
            &Point::from([1.0, std::f64::consts::E])
        )?
    );

    let chart = SimplicialChart::new(&[Point::from([1.0, 0.0]), Point::from([1.0, 1.0])])?;
    let z = [0.3, -1.2];
    let p = chart.inverse_map(&z)?;
    println!(
        "simplicial chart (cond {:.3}): z = {z:?} -> {p} -> {:?}",
        chart.condition_number(),
        chart.map(&p)?
    );
    Ok(())
}
