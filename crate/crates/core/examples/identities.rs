//! Checking identities: catalog entries, parsed expressions and the exact checker.

use divalg::hurwitz::hurwitz;
use divalg::identity::{catalog_entry, catalog_list, check_exact_multilinear, check_sampled, parse_identity};

fn main() -> divalg::Result<()> {
    let o = hurwitz(8)?.into_algebra();

    let moufang = catalog_entry("moufang-bol", "left-moufang")?;
    let report = check_sampled(&o, &moufang.identity(), 200, 1)?;
    println!("left Moufang on O: {:?} (max residual {:.1e})", report.verdict, report.max_residual);

    let assoc = parse_identity("(xy)z = x(yz)").expect("valid identity");
    let report = check_exact_multilinear(&o, &assoc)?;
    println!("{assoc} on O: {:?}", report.verdict);
    if let Some(w) = report.witness {
        println!("  witness residual {:.3}", w.residual);
    }

    let right_div = parse_identity("(x/y)y = x").expect("valid identity");
    println!("{right_div} on O: {:?}", check_sampled(&o, &right_div, 100, 2)?.verdict);

    let h = hurwitz(4)?.into_algebra();
    let holds = catalog_list("table1")?
        .iter()
        .filter(|e| check_sampled(&h, &e.identity(), 50, 3).map(|r| r.verdict == divalg::identity::Verdict::Holds).unwrap_or(false))
        .count();
    println!("table1 identities holding on H: {holds}/{}", catalog_list("table1")?.len());
    Ok(())
}
