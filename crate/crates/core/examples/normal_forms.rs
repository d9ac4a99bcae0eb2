//! Canonical forms of class data under rotations and the division algebras they define.

use divalg::normal_form::{build_division_algebra, membership, reduce, ClassDatum, Family};
use divalg::structure::left_inversion;
use nalgebra::Rotation3;

fn main() -> divalg::Result<()> {
    let quad = [[2.0, 0.5, 0.0], [0.5, 1.0, 0.0], [0.0, 0.0, 1.5]];
    let x = ClassDatum::new(Family::B11, Some([0.3, -1.0, 0.2]), [0.1, 0.4, -0.7], [1.0, 0.0, 2.0], quad, 0.8)?;
    let r = reduce(&x)?;
    println!("stratum {} d {:?} block {}", r.stratum, r.d, r.block);
    println!("canonical {}", serde_json::to_string(&r.canonical).expect("serializable"));
    println!("member of its block: {}", membership(&r));

    let g = *Rotation3::from_euler_angles(0.3, -1.1, 2.0).matrix();
    let s = reduce(&x.act(&g))?;
    println!("after a rotation the canonical form moves by {:.1e}", s.canonical.distance(&r.canonical));

    let datum = ClassDatum::new(Family::B00, None, [1.0, 0.0, 0.0], [0.0; 3], [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]], 1.0)?;
    for sign in [1, -1] {
        let alg = build_division_algebra(&datum.to_division_datum(sign)?)?;
        println!("sign {sign:+}: left inversion {}", left_inversion(&alg, 6, 2)?.has_left_inversion);
    }
    Ok(())
}
