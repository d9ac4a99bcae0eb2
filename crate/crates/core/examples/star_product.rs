//! Idempotents, the star product they induce and the Hua identity.

use divalg::hurwitz::{hurwitz, vector_product_algebra};
use divalg::json::{algebra_from_json, algebra_to_json};
use divalg::LinearMap;

fn main() -> divalg::Result<()> {
    let h = hurwitz(4)?;
    let alpha = LinearMap::from_fn(4, 4, |i, j| if i == j { 1.0 } else { 0.1 * (i + 2 * j) as f64 });
    let iso = h.algebra().isotope(&alpha, &h.conjugation())?;

    let e = iso.find_idempotent(9, 50)?;
    println!("idempotent {:.4?} residual {:.1e}", e.as_slice(), (iso.mul(&e, &e) - &e).norm());
    let star = iso.star_product(&e)?;
    let x = divalg::Element::from_vec(vec![0.2, 1.0, -0.5, 0.3]);
    println!("e is a left unit of the star product: {:.1e}", (star.mul(&e, &x) - &x).norm());

    let a = divalg::Element::from_vec(vec![1.0, 0.2, 0.0, -0.4]);
    let b = divalg::Element::from_vec(vec![0.5, -1.0, 0.7, 0.1]);
    println!("Hua residual on H: {:.1e}", h.algebra().hua_check(&a, &b)?);

    let v = vector_product_algebra(&hurwitz(8)?);
    let round = algebra_from_json(&algebra_to_json(&v))?;
    println!("7-dimensional vector product survives a JSON round trip: {}", round.constants() == v.constants());
    Ok(())
}
