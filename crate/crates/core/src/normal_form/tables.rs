//! Sign-pattern cross-sections, loaded from `data/normal_forms.txt`.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use nalgebra::Vector3;

use super::Family;

const SOURCE: &str = include_str!("../../data/normal_forms.txt");

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Sym {
    One,
    Zero,
    Pos,
    NonNeg,
    Real,
    /// Whole column in `𝓟₁`.
    P1,
    /// Whole column in `𝓟₂`.
    P2,
}

impl Sym {
    fn parse(c: char) -> Option<Sym> {
        Some(match c {
            '1' => Sym::One,
            '0' => Sym::Zero,
            'P' => Sym::Pos,
            'N' => Sym::NonNeg,
            'R' => Sym::Real,
            'p' => Sym::P1,
            'Q' => Sym::P2,
            _ => return None,
        })
    }

    fn holds(self, y: f64, tol: f64) -> bool {
        match self {
            Sym::One => (y - 1.0).abs() <= tol,
            Sym::Zero => y.abs() <= tol,
            Sym::Pos => y > tol,
            Sym::NonNeg => y >= -tol,
            Sym::Real => true,
            Sym::P1 | Sym::P2 => unreachable!("composite symbols are checked per column"),
        }
    }
}

/// One column of a block: coordinate constraints top to bottom.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct Column(pub [Sym; 3]);

impl Column {
    fn unit(k: usize) -> Column {
        let mut s = [Sym::Zero; 3];
        s[k] = Sym::One;
        Column(s)
    }

    fn composite(&self) -> Option<Sym> {
        match self.0[0] {
            s @ (Sym::P1 | Sym::P2) => Some(s),
            _ => None,
        }
    }

    fn one_at(&self) -> Option<usize> {
        self.0.iter().position(|&s| s == Sym::One)
    }

    /// Checks `v` and returns the representative that satisfies the column.
    ///
    /// Projective columns are rescaled before the check: onto the `1`
    /// coordinate, or onto the first nonzero coordinate for `𝓟₁`.
    pub(crate) fn fit(&self, v: &Vector3<f64>, projective: bool, tol: f64) -> Option<Vector3<f64>> {
        let w = if projective {
            let k = match self.composite() {
                Some(Sym::P1) => (0..3).find(|&i| v[i].abs() > tol)?,
                Some(_) => unreachable!("𝓟₂ columns are affine"),
                None => self.one_at().expect("projective columns carry a 1"),
            };
            if v[k].abs() <= tol {
                return None;
            }
            v / v[k]
        } else {
            *v
        };
        let ok = match self.composite() {
            Some(Sym::P1) => in_p1(&w, tol),
            Some(_) => in_p2(&w, tol),
            None => (0..3).all(|i| self.0[i].holds(w[i], tol)),
        };
        ok.then(|| snap(w, tol))
    }
}

fn snap(mut w: Vector3<f64>, tol: f64) -> Vector3<f64> {
    for y in w.iter_mut() {
        if y.abs() <= tol {
            *y = 0.0;
        } else if (*y - 1.0).abs() <= tol {
            *y = 1.0;
        }
    }
    w
}

fn in_p1(w: &Vector3<f64>, tol: f64) -> bool {
    let one = |y: f64| (y - 1.0).abs() <= tol;
    let zero = |y: f64| y.abs() <= tol;
    one(w[0]) || (zero(w[0]) && one(w[1])) || (zero(w[0]) && zero(w[1]) && one(w[2]))
}

fn in_p2(w: &Vector3<f64>, tol: f64) -> bool {
    let (p, z, n) = (|y: f64| y > tol, |y: f64| y.abs() <= tol, |y: f64| y >= -tol);
    (p(w[0]) && p(w[1])) || (p(w[0]) && z(w[1]) && n(w[2])) || (z(w[0]) && n(w[1]) && n(w[2]))
}

#[derive(Clone, Debug)]
pub(crate) struct Block {
    /// Human-readable origin, e.g. `B10/2:3` or `B10/2:e3*B00/2:1`.
    pub label: String,
    pub columns: Vec<Column>,
}

pub(crate) type Tables = BTreeMap<(Family, u8), Vec<Block>>;

enum Line {
    Block(Vec<Column>),
    Product(usize, Family, u8),
}

fn parse_key(s: &str) -> (Family, u8) {
    let (f, s) = s.split_once('/').unwrap_or_else(|| panic!("bad set name {s}"));
    let family: Family = f.parse().unwrap_or_else(|_| panic!("bad family {f}"));
    let stratum: u8 = s.parse().unwrap_or_else(|_| panic!("bad stratum {s}"));
    assert!((1..=4).contains(&stratum));
    (family, stratum)
}

fn parse_block(line: &str, width: usize) -> Vec<Column> {
    let rows: Vec<Vec<Sym>> = line
        .split_whitespace()
        .map(|w| w.chars().map(|c| Sym::parse(c).unwrap_or_else(|| panic!("bad symbol {c} in {line}"))).collect())
        .collect();
    assert_eq!(rows.len(), 3, "three rows expected in {line}");
    assert!(rows.iter().all(|r| r.len() == width), "width {width} expected in {line}");
    (0..width)
        .map(|j| {
            let col = Column([rows[0][j], rows[1][j], rows[2][j]]);
            let composite = col.0.iter().filter(|s| matches!(s, Sym::P1 | Sym::P2)).count();
            assert!(composite == 0 || (composite == 3 && col.0.iter().all(|&s| s == col.0[0])), "mixed column in {line}");
            col
        })
        .collect()
}

fn load() -> Tables {
    let mut raw: Vec<((Family, u8), Vec<Line>)> = Vec::new();
    for line in SOURCE.lines().map(str::trim) {
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(name) = line.strip_prefix('[').and_then(|l| l.strip_suffix(']')) {
            raw.push((parse_key(name), Vec::new()));
            continue;
        }
        let ((family, _), lines) = raw.last_mut().expect("block before first section");
        if let Some((e, set)) = line.split_once('*') {
            let k: usize = e.trim().trim_start_matches('e').parse().expect("bad unit column");
            assert!((1..=3).contains(&k));
            let (f, s) = parse_key(set.trim());
            lines.push(Line::Product(k - 1, f, s));
        } else {
            lines.push(Line::Block(parse_block(line, family.width())));
        }
    }

    let mut tables = Tables::new();
    for (key, lines) in raw {
        let mut blocks = Vec::new();
        let name = format!("{}/{}", key.0, key.1);
        for line in lines {
            match line {
                Line::Block(columns) => {
                    blocks.push(Block { label: format!("{name}:{}", blocks.len() + 1), columns });
                }
                Line::Product(k, f, s) => {
                    let inner = tables.get(&(f, s)).unwrap_or_else(|| panic!("{f}/{s} used before definition"));
                    for b in inner.iter().cloned() {
                        let mut columns = vec![Column::unit(k)];
                        columns.extend(b.columns);
                        blocks.push(Block { label: format!("{name}:e{}*{}", k + 1, b.label), columns });
                    }
                }
            }
        }
        for b in &blocks {
            assert_eq!(b.columns.len(), key.0.width(), "{}", b.label);
            for (col, proj) in b.columns.iter().zip(key.0.projective()) {
                if proj {
                    assert_ne!(col.composite(), Some(Sym::P2), "{}", b.label);
                }
                if proj && col.composite().is_none() {
                    assert_eq!(col.0.iter().filter(|&&s| s == Sym::One).count(), 1, "{}", b.label);
                }
            }
        }
        tables.insert(key, blocks);
    }
    tables
}

pub(crate) fn tables() -> &'static Tables {
    static TABLES: OnceLock<Tables> = OnceLock::new();
    TABLES.get_or_init(load)
}

pub(crate) fn blocks(family: Family, stratum: u8) -> &'static [Block] {
    &tables()[&(family, stratum)]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn block_counts() {
        let expected = [
            ((Family::B00, 1), 1),
            ((Family::B00, 2), 4),
            ((Family::B00, 3), 4),
            ((Family::B00, 4), 10),
            ((Family::B01, 1), 2),
            ((Family::B01, 2), 5),
            ((Family::B01, 3), 5),
            ((Family::B01, 4), 10),
            ((Family::B10, 1), 4),
            ((Family::B10, 2), 8 + 4 + 10),
            ((Family::B10, 3), 8 + 4 + 10),
            ((Family::B10, 4), 25 + 30),
            ((Family::B11, 1), 5),
            ((Family::B11, 2), 9 + 10),
            ((Family::B11, 3), 9 + 10),
            ((Family::B11, 4), 13 + 30),
        ];
        let t = tables();
        assert_eq!(t.len(), 16);
        for (key, n) in expected {
            assert_eq!(t[&key].len(), n, "{}/{}", key.0, key.1);
        }
    }

    #[test]
    fn composite_sets() {
        let tol = 1e-12;
        assert!(in_p1(&Vector3::new(1.0, -3.0, 2.0), tol));
        assert!(in_p1(&Vector3::new(0.0, 1.0, -2.0), tol));
        assert!(!in_p1(&Vector3::new(0.0, 2.0, 0.0), tol));
        assert!(in_p2(&Vector3::new(1.0, 2.0, -5.0), tol));
        assert!(in_p2(&Vector3::new(1.0, 0.0, 0.0), tol));
        assert!(!in_p2(&Vector3::new(1.0, 0.0, -1.0), tol));
        assert!(in_p2(&Vector3::new(0.0, 0.0, 3.0), tol));
        assert!(!in_p2(&Vector3::new(0.0, -1.0, 3.0), tol));
    }

    #[test]
    fn projective_fit_rescales() {
        let col = Column([Sym::Pos, Sym::One, Sym::Zero]);
        let w = col.fit(&Vector3::new(-1.0, -2.0, 0.0), true, 1e-12).unwrap();
        assert_eq!(w, Vector3::new(0.5, 1.0, 0.0));
        assert!(col.fit(&Vector3::new(-1.0, 2.0, 0.0), true, 1e-12).is_none());
        assert!(col.fit(&Vector3::new(1.0, 2.0, 0.0), false, 1e-12).is_none());
    }
}
