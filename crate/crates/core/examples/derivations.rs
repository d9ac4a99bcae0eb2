//! Triality derivations and nuclei of the Hurwitz algebras.

use divalg::hurwitz::hurwitz;
use divalg::structure::{nuclei, tder, tder_residual};

fn main() -> divalg::Result<()> {
    for n in [1, 2, 4, 8] {
        let a = hurwitz(n)?.into_algebra();
        let t = tder(&a);
        let worst = t.triples.iter().map(|d| tder_residual(&a, d)).fold(0.0, f64::max);
        let nu = nuclei(&a);
        println!(
            "dim {n}: Tder {} (gap {:.1e}, residual {worst:.1e}), projections {:?}, kernels {:?}, nuclei {:?}",
            t.dim,
            t.gap,
            t.projections,
            t.kernels,
            nu.dims()
        );
    }
    Ok(())
}
