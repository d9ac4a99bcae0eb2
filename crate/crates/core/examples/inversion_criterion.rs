//! Left inversion in isotopes of the quaternions.

use divalg::hurwitz::hurwitz;
use divalg::structure::{criterion_check, left_inversion};
use divalg::LinearMap;

fn main() -> divalg::Result<()> {
    let h = hurwitz(4)?;
    let q = h.algebra();
    let a = divalg::Element::from_vec(vec![1.0, 0.5, -0.25, 2.0]);
    let u = divalg::Element::from_vec(vec![0.0, 1.0, 1.0, 0.0]);

    let candidates = [
        ("kappa, I", h.conjugation(), LinearMap::identity(4, 4)),
        ("I, L_a R_u", LinearMap::identity(4, 4), q.left_mul(&a) * q.right_mul(&u)),
        ("I, R_u + I", LinearMap::identity(4, 4), q.right_mul(&u) + LinearMap::identity(4, 4)),
    ];
    for (name, alpha, beta) in candidates {
        let c = criterion_check(&alpha, &beta, 11)?;
        let iso = q.isotope(&alpha, &beta)?;
        let direct = left_inversion(&iso, 8, 11)?;
        println!(
            "({name}): criterion {} (det>0 {}, scalar residual {:.1e}), direct test {}",
            c.holds, c.det_positive, c.scalar_residual, direct.has_left_inversion
        );
    }
    Ok(())
}
