//! Jordan-algebra toolkit behind the symmetric cones: products, quadratic
//! representation, spectral decompositions and relative spectra.

use conemetric::{JordanAlgebra, Point, Result};

fn main() -> Result<()> {
    let sym = JordanAlgebra::Sym(2);
    let a = Point::from([2.0, 1.0, 1.0, 3.0]);
    let dec = sym.spectral(&a)?;
    println!("Sym(2): eigenvalues of {a} are {:?}", dec.eigenvalues);
    println!("  sqrt = {}", dec.map(f64::sqrt));
    println!("  P(a) e = a^2 = {}", sym.quadratic_apply(&a, &sym.unit())?);
    println!("  a o a^-1 = {}", sym.product(&a, &sym.inverse(&a)?)?);

    let spin = JordanAlgebra::Spin(2);
    let x = Point::from([2.0, 1.0, 0.5]);
    let y = Point::from([1.5, -0.4, 0.6]);
    println!(
        "Spin(2): spectrum of {x} is {:?}",
        spin.spectral(&x)?.eigenvalues
    );
    println!(
        "  relative spectrum of (x, y): {:?}",
        spin.relative_spectrum(&x, &y)?
    );
    println!(
        "  same via P(x^-1/2) y:        {:?}",
        spin.relative_spectrum_via_quadratic(&x, &y)?
    );

    let orth = JordanAlgebra::Orthant(3);
    let p = Point::from([1.0, 2.0, 4.0]);
    println!("Orthant(3): p^(1/2) = {}", orth.power(&p, 0.5)?);
    Ok(())
}
