//! The four Hurwitz algebras: norms, conjugation and a Cayley triple.

use divalg::hurwitz::{automorphism_from_cayley_triple, hurwitz, CayleyTriple};
use divalg::structure::morphism_residual;
use divalg::Element;

fn main() -> divalg::Result<()> {
    for n in [1, 2, 4, 8] {
        let h = hurwitz(n)?;
        let x = Element::from_fn(n, |k, _| 1.0 + k as f64);
        let y = Element::from_fn(n, |k, _| (k as f64 - 1.5).sin());
        let xy = h.algebra().mul(&x, &y);
        let multiplicative = h.norm_form(&xy) - h.norm_form(&x) * h.norm_form(&y);
        let inv = h.inverse(&x)?;
        let unit = h.algebra().mul(&x, &inv) - h.unit();
        println!(
            "dim {n}: N(xy) - N(x)N(y) = {multiplicative:.1e}, |x x^-1 - 1| = {:.1e}, t(x) = {}",
            unit.norm(),
            h.trace_form(&x)
        );
    }

    let o = hurwitz(8)?;
    let t = CayleyTriple::standard();
    let phi = automorphism_from_cayley_triple(&t);
    println!("standard triple gives automorphism residual {:.1e}", morphism_residual(o.algebra(), o.algebra(), &phi)?);
    Ok(())
}
