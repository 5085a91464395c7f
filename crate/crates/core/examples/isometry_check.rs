//! Known Thompson isometries and the projective-linearity test that separates
//! linear automorphisms and inversion from the orthant partial inversion.

use conemetric::isometries::{check_isometry, is_projectively_linear, ConeMap};
use conemetric::{ConeSpec, Point, Result};

fn main() -> Result<()> {
    let psd2 = ConeSpec::psd(2)?;
    let orth3 = ConeSpec::orthant(3)?;
    let lor3 = ConeSpec::lorentz(3)?;
    let maps = [
        ConeMap::inversion(&psd2)?,
        ConeMap::congruence(&psd2, Point::from([2.0, 0.5, 0.5, 1.0]))?,
        ConeMap::partial_inversion(&orth3, 3)?,
        ConeMap::linear(
            &lor3,
            vec![
                vec![1.25, 0.75, 0.0],
                vec![0.75, 1.25, 0.0],
                vec![0.0, 0.0, 1.0],
            ],
        )?,
    ];
    for map in &maps {
        let dev = check_isometry(map, 500, 0)?;
        let fit = is_projectively_linear(map, 50, 0)?;
        let name = map.to_string();
        println!(
            "{name:<22} deviation {dev:.2e}  {} (residual {:.2e})",
            fit.verdict, fit.residual
        );
    }
    println!(
        "partial inversion of (1, 2, 4): {}",
        maps[2].apply(&Point::from([1.0, 2.0, 4.0]))?
    );
    Ok(())
}
