//! The ten algebras with involutive inversion and their invariants.

use divalg::hurwitz::{invinv_algebra, InvInvLabel};
use divalg::structure::{fingerprint, left_inversion};

fn main() -> divalg::Result<()> {
    for label in InvInvLabel::ALL {
        let (a, spec) = invinv_algebra(label.as_str())?;
        let inv = left_inversion(&a, 8, 5)?;
        let f = fingerprint(&a, 5, Some(&spec))?;
        println!(
            "{:6} dim {}  relations {:.0e}  involutive {}  unit {}  nuclei {:?}  tder {}  d6 {:?}",
            label.as_str(),
            f.dim,
            spec.relation_residual(),
            inv.involutive,
            f.has_unit,
            f.nuclei_dims,
            f.tder_dim,
            f.d6_dims
        );
    }
    Ok(())
}
