use serde::Serialize;

use super::{parse_identity, Identity, Term};
use crate::error::{Error, Result};

pub const FAMILIES: [&str; 4] = ["table1", "bol-moufang", "moufang-bol", "involutive-inversion"];

/// Degree-five identities in `x, y, z` with letter order `x x y x z`.
const TABLE1: [&str; 45] = [
    "(((xx)y)x)z=(x(xy))(xz)",
    "(((xx)y)x)z=(xx)((yx)z)",
    "(((xx)y)x)z=(xx)(y(xz))",
    "(((xx)y)x)z=x(((xy)x)z)",
    "(((xx)y)x)z=x((x(yx))z)",
    "(((xx)y)x)z=x((xy)(xz))",
    "(((xx)y)x)z=x(x((yx)z))",
    "(((xx)y)x)z=x(x(y(xz)))",
    "((x(xy))x)z=((xx)y)(xz)",
    "((x(xy))x)z=(xx)((yx)z)",
    "((x(xy))x)z=(xx)(y(xz))",
    "((x(xy))x)z=x((x(yx))z)",
    "((x(xy))x)z=x(x((yx)z))",
    "((x(xy))x)z=x(x(y(xz)))",
    "((xx)(yx))z=((xx)y)(xz)",
    "((xx)(yx))z=(x(xy))(xz)",
    "((xx)(yx))z=(xx)(y(xz))",
    "((xx)(yx))z=x(((xy)x)z)",
    "((xx)(yx))z=x((xy)(xz))",
    "((xx)(yx))z=x(x(y(xz)))",
    "(x((xy)x))z=((xx)y)(xz)",
    "(x((xy)x))z=(xx)((yx)z)",
    "(x((xy)x))z=(xx)(y(xz))",
    "(x((xy)x))z=x((x(yx))z)",
    "(x((xy)x))z=x(x((yx)z))",
    "(x((xy)x))z=x(x(y(xz)))",
    "(x(x(yx)))z=((xx)y)(xz)",
    "(x(x(yx)))z=(x(xy))(xz)",
    "(x(x(yx)))z=(xx)(y(xz))",
    "(x(x(yx)))z=x(((xy)x)z)",
    "(x(x(yx)))z=x((xy)(xz))",
    "(x(x(yx)))z=x(x(y(xz)))",
    "((xx)y)(xz)=(xx)((yx)z)",
    "((xx)y)(xz)=x(((xy)x)z)",
    "((xx)y)(xz)=x((x(yx))z)",
    "((xx)y)(xz)=x(x((yx)z))",
    "(x(xy))(xz)=(xx)((yx)z)",
    "(x(xy))(xz)=x((x(yx))z)",
    "(x(xy))(xz)=x(x((yx)z))",
    "(xx)((yx)z)=x(((xy)x)z)",
    "(xx)((yx)z)=x((xy)(xz))",
    "(xx)((yx)z)=x(x(y(xz)))",
    "(xx)(y(xz))=x(((xy)x)z)",
    "(xx)(y(xz))=x((x(yx))z)",
    "(xx)(y(xz))=x(x((yx)z))",
];

/// Defining identities of the 26 Bol–Moufang varieties.
///
/// LG2 is stored as `(xy)(zz)=(x(yz))z` and RC1 as `x((yz)z)=(xy)(zz)`.
const BOL_MOUFANG: [(&str, &str); 26] = [
    ("CQ", "x(y(yz)) = ((xy)y)z"),
    ("EQ", "x((yx)z) = (xy)(xz)"),
    ("FQ", "(x(yx))z = ((xy)x)z"),
    ("GR", "(xy)z = x(yz)"),
    ("LAQ", "x(x(yz)) = (xx)(yz)"),
    ("LBQ", "x(y(xz)) = (x(yx))z"),
    ("LC1", "(xx)(yz) = (x(xy))z"),
    ("LC2", "x(x(yz)) = (x(xy))z"),
    ("LC3", "x(x(yz)) = ((xx)y)z"),
    ("LC4", "x(y(yz)) = (x(yy))z"),
    ("LG1", "x(y(zx)) = (x(yz))x"),
    ("LG2", "(xy)(zz) = (x(yz))z"),
    ("LG3", "x(y(zy)) = (x(yz))y"),
    ("LNQ", "(xx)(yz) = ((xx)y)z"),
    ("MNQ", "x((yy)z) = (x(yy))z"),
    ("MQ", "x(y(xz)) = ((xy)x)z"),
    ("RAQ", "(x(yy))z = ((xy)y)z"),
    ("RBQ", "x((yz)y) = ((xy)z)y"),
    ("RC1", "x((yz)z) = (xy)(zz)"),
    ("RC2", "x((yz)z) = ((xy)z)z"),
    ("RC3", "x(y(zz)) = ((xy)z)z"),
    ("RC4", "x((yy)z) = ((xy)y)z"),
    ("RG1", "x((xy)z) = ((xx)y)z"),
    ("RG2", "x((xy)z) = (xx)(yz)"),
    ("RG3", "x((yx)z) = ((xy)x)z"),
    ("RNQ", "x(y(zz)) = (xy)(zz)"),
];

const MOUFANG_BOL: [(&str, &str); 5] = [
    ("left-moufang", "((xy)x)z = x(y(xz))"),
    ("right-moufang", "z(x(yx)) = ((zx)y)x"),
    ("middle-moufang", "(xy)(zx) = (x(yz))x"),
    ("left-bol", "(x(yx))z = x(y(xz))"),
    ("right-bol", "z((xy)x) = ((zx)y)x"),
];

const INVOLUTIVE_INVERSION: [(&str, &str); 1] = [("inversion", "x((yz)(xt)) = ((xy)(zx))t")];

#[derive(Clone, Debug, Serialize)]
pub struct CatalogEntry {
    pub family: String,
    pub key: String,
    pub lhs: String,
    pub rhs: String,
}

impl CatalogEntry {
    pub fn identity(&self) -> Identity {
        parse_identity(&format!("{}={}", self.lhs, self.rhs)).expect("catalog entries parse")
    }
}

fn raw(family: &str) -> Result<Vec<(String, &'static str)>> {
    Ok(match family {
        "table1" => TABLE1.iter().enumerate().map(|(i, s)| ((i + 1).to_string(), *s)).collect(),
        "bol-moufang" => BOL_MOUFANG.iter().map(|(k, s)| (k.to_string(), *s)).collect(),
        "moufang-bol" => MOUFANG_BOL.iter().map(|(k, s)| (k.to_string(), *s)).collect(),
        "involutive-inversion" => INVOLUTIVE_INVERSION.iter().map(|(k, s)| (k.to_string(), *s)).collect(),
        other => return Err(Error::UnknownLabel(other.to_string())),
    })
}

/// All entries of a family, in catalog order.
pub fn catalog_list(family: &str) -> Result<Vec<CatalogEntry>> {
    raw(family)?
        .into_iter()
        .map(|(key, src)| {
            let id = parse_identity(src)?;
            Ok(CatalogEntry { family: family.to_string(), key, lhs: id.lhs.to_string(), rhs: id.rhs.to_string() })
        })
        .collect()
}

pub fn catalog_entry(family: &str, key: &str) -> Result<CatalogEntry> {
    catalog_list(family)?
        .into_iter()
        .find(|e| e.key == key)
        .ok_or_else(|| Error::UnknownLabel(format!("{family}:{key}")))
}

/// Look up `family:key`, e.g. `table1:19` or `bol-moufang:LC3`.
pub fn catalog(name: &str) -> Result<Identity> {
    let (family, key) = name.split_once(':').ok_or_else(|| Error::UnknownLabel(name.to_string()))?;
    Ok(catalog_entry(family, key)?.identity())
}

fn p(vars: &[Term]) -> Term {
    if vars.len() == 1 {
        return vars[0].clone();
    }
    let (a, b) = vars.split_at(vars.len() / 2);
    Term::mul(p(a), p(b))
}

/// `y p_n(x1, …, x_{2^n}) = p_n(y, x1, …, x_{2^n − 1}) x_{2^n}` with
/// `p_n = p_{n−1}(first half) p_{n−1}(second half)` and `p_1(x1, x2) = x1x2`.
pub fn generate_pn_identity(n: usize) -> Result<Identity> {
    if !(1..=5).contains(&n) {
        return Err(Error::Domain(format!("p_n identity needs 1 <= n <= 5, got {n}")));
    }
    let m = 1usize << n;
    let xs: Vec<Term> = (1..=m).map(|i| Term::Var(format!("x{i}"))).collect();
    let y = Term::var("y");
    let lhs = Term::mul(y.clone(), p(&xs));
    let mut shifted = vec![y];
    shifted.extend_from_slice(&xs[..m - 1]);
    let rhs = Term::mul(p(&shifted), xs[m - 1].clone());
    Ok(Identity::new(lhs, rhs)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table1_transcription() {
        let rows = catalog_list("table1").unwrap();
        assert_eq!(rows.len(), 45);
        for row in &rows {
            let id = row.identity();
            for side in [&id.lhs, &id.rhs] {
                let d = side.degrees();
                assert_eq!(d.len(), 3, "row {}", row.key);
                assert_eq!(d["x"], 3, "row {}", row.key);
                assert_eq!(d["y"], 1, "row {}", row.key);
                assert_eq!(d["z"], 1, "row {}", row.key);
                // letters appear in the order x x y x z
                let word: String = side.to_string().chars().filter(|c| c.is_alphabetic()).collect();
                assert_eq!(word, "xxyxz", "row {}", row.key);
            }
        }
        let r19 = catalog_entry("table1", "19").unwrap();
        assert_eq!(format!("{}={}", r19.lhs, r19.rhs), "((xx)(yx))z=x((xy)(xz))");
    }

    #[test]
    fn bol_moufang_transcription() {
        let rows = catalog_list("bol-moufang").unwrap();
        assert_eq!(rows.len(), 26);
        let keys: std::collections::HashSet<_> = rows.iter().map(|r| r.key.clone()).collect();
        assert_eq!(keys.len(), 26);
        let sides: std::collections::HashSet<_> = rows.iter().map(|r| (r.lhs.clone(), r.rhs.clone())).collect();
        assert_eq!(sides.len(), 26, "no two varieties share an identity");
        for row in &rows {
            let id = row.identity();
            let size = if row.key == "GR" { 5 } else { 7 };
            assert_eq!(id.lhs.size(), size, "{}", row.key);
            assert_eq!(id.rhs.size(), size, "{}", row.key);
            // same letter order on both sides, one letter doubled
            let l: String = id.lhs.to_string().chars().filter(|c| c.is_alphabetic()).collect();
            let r: String = id.rhs.to_string().chars().filter(|c| c.is_alphabetic()).collect();
            assert_eq!(l, r, "{}", row.key);
            if row.key != "GR" {
                assert_eq!(l.len(), 4);
            }
        }
        assert_eq!(catalog("bol-moufang:LC3").unwrap().to_string(), "x(x(yz))=((xx)y)z");
    }

    #[test]
    fn moufang_and_inversion_entries() {
        assert_eq!(catalog_list("moufang-bol").unwrap().len(), 5);
        assert_eq!(catalog("moufang-bol:middle-moufang").unwrap().to_string(), "(xy)(zx)=(x(yz))x");
        let inv = catalog_list("involutive-inversion").unwrap();
        assert_eq!(inv.len(), 1);
        assert_eq!(inv[0].identity().variables, ["x", "y", "z", "t"]);
        assert!(catalog("table1:46").is_err());
        assert!(catalog("nope:1").is_err());
        assert!(catalog("table1").is_err());
    }

    #[test]
    fn printing_is_stable() {
        for family in FAMILIES {
            for row in catalog_list(family).unwrap() {
                let printed = row.identity().to_string();
                assert_eq!(parse_identity(&printed).unwrap().to_string(), printed);
            }
        }
    }

    #[test]
    fn pn_identities() {
        assert_eq!(generate_pn_identity(1).unwrap().to_string(), "y(x1x2)=(yx1)x2");
        assert_eq!(generate_pn_identity(2).unwrap().to_string(), "y((x1x2)(x3x4))=((yx1)(x2x3))x4");
        assert_eq!(
            generate_pn_identity(3).unwrap().to_string(),
            "y(((x1x2)(x3x4))((x5x6)(x7x8)))=(((yx1)(x2x3))((x4x5)(x6x7)))x8"
        );
        assert_eq!(generate_pn_identity(5).unwrap().variables.len(), 33);
        assert!(generate_pn_identity(0).is_err());
        assert!(generate_pn_identity(6).is_err());
    }
}
