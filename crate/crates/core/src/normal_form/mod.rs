//! Normal forms for the SO(3)-sets `B00, B01, B10, B11` that parametrize
//! four-dimensional division algebras with inversion on the left.
//!
//! A datum is `(u?, c, b, B, β)` with `B` symmetric, acted on by
//! `f·(u, c, b, B, β) = (fu, fc, fb, fBfᵀ, β)`. [`reduce`] first diagonalizes
//! `B`, then moves the vectors into the sign-pattern set listed for the family
//! and eigenvalue stratum, using only the stabilizer of the diagonal matrix.
//!
//! ```
//! use divalg::normal_form::{reduce, ClassDatum, Family};
//!
//! let x = ClassDatum::new(Family::B00, None, [0.0, 0.0, 1.0], [0.0, 0.0, -2.0], [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]], 1.0).unwrap();
//! let r = reduce(&x).unwrap();
//! assert_eq!(r.stratum, 1);
//! assert_eq!(r.canonical.c, [1.0, 0.0, 0.0]);
//! assert_eq!(r.canonical.b, [2.0, 0.0, 0.0]);
//! ```

mod tables;

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use nalgebra::{DMatrix, DVector, Matrix3, Matrix4, SymmetricEigen, Vector3};
use serde::{Deserialize, Serialize};

use crate::algebra::{Algebra, Element};
use crate::error::{Error, Result};
use crate::hurwitz::hurwitz;

/// Relative eigenvalue gap below which two eigenvalues count as equal.
pub const STRATUM_GAP: f64 = 1e-9;
/// Relative eigenvalue gap below which a datum is flagged near-degenerate.
pub const NEAR_DEGENERATE_GAP: f64 = 1e-3;
/// Relative tolerance of the sign-pattern tests.
pub const MEMBERSHIP_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Family {
    B00,
    B01,
    B10,
    B11,
}

impl Family {
    pub const ALL: [Family; 4] = [Family::B00, Family::B01, Family::B10, Family::B11];

    pub fn has_u(self) -> bool {
        matches!(self, Family::B10 | Family::B11)
    }

    /// Whether `c` is affine (`B01`, `B11`) rather than projective.
    pub fn affine_c(self) -> bool {
        matches!(self, Family::B01 | Family::B11)
    }

    pub(crate) fn width(self) -> usize {
        if self.has_u() {
            3
        } else {
            2
        }
    }

    /// Projective flags of the vector columns in table order.
    pub(crate) fn projective(self) -> Vec<bool> {
        let mut p = Vec::new();
        if self.has_u() {
            p.push(true);
        }
        p.push(!self.affine_c());
        p.push(false);
        p
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::B00 => "B00",
            Family::B01 => "B01",
            Family::B10 => "B10",
            Family::B11 => "B11",
        })
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.to_string().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Domain(format!("unknown family {s}")))
    }
}

/// A point of one of the sets `B_ij`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassDatum {
    pub family: Family,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub u: Option<[f64; 3]>,
    pub c: [f64; 3],
    pub b: [f64; 3],
    #[serde(rename = "B")]
    pub quad: [[f64; 3]; 3],
    pub beta: f64,
}

fn v3(a: &[f64; 3]) -> Vector3<f64> {
    Vector3::from_column_slice(a)
}

fn arr(v: &Vector3<f64>) -> [f64; 3] {
    [v[0], v[1], v[2]]
}

fn first_nonzero_one(v: &Vector3<f64>) -> Vector3<f64> {
    let k = v.iter().position(|y| *y != 0.0).expect("nonzero vector");
    v / v[k]
}

impl ClassDatum {
    /// Validates and stores a datum; projective vectors are scaled so that
    /// their first nonzero coordinate is 1.
    pub fn new(family: Family, u: Option<[f64; 3]>, c: [f64; 3], b: [f64; 3], quad: [[f64; 3]; 3], beta: f64) -> Result<Self> {
        let mut d = ClassDatum { family, u, c, b, quad, beta };
        d.validate()?;
        if let Some(u) = d.u {
            d.u = Some(arr(&first_nonzero_one(&v3(&u))));
        }
        if !family.affine_c() {
            d.c = arr(&first_nonzero_one(&v3(&d.c)));
        }
        Ok(d)
    }

    /// Checks finiteness, symmetry of `B`, presence of `u`, and that
    /// projective vectors are nonzero.
    pub fn validate(&self) -> Result<()> {
        let all = self.flat();
        if all.iter().any(|y| !y.is_finite()) {
            return Err(Error::NonFinite);
        }
        let tol = self.tol();
        let m = self.b_matrix();
        if (m - m.transpose()).amax() > tol {
            return Err(Error::Domain("B is not symmetric".into()));
        }
        if self.family.has_u() != self.u.is_some() {
            return Err(Error::Domain(format!("family {} {} u", self.family, if self.family.has_u() { "requires" } else { "forbids" })));
        }
        if let Some(u) = self.u {
            if v3(&u).amax() == 0.0 {
                return Err(Error::Domain("projective u is zero".into()));
            }
        }
        if !self.family.affine_c() && self.c_vec().amax() == 0.0 {
            return Err(Error::Domain("projective c is zero".into()));
        }
        Ok(())
    }

    pub fn c_vec(&self) -> Vector3<f64> {
        v3(&self.c)
    }

    pub fn b_vec(&self) -> Vector3<f64> {
        v3(&self.b)
    }

    pub fn u_vec(&self) -> Option<Vector3<f64>> {
        self.u.as_ref().map(v3)
    }

    pub fn b_matrix(&self) -> Matrix3<f64> {
        Matrix3::from_fn(|i, j| self.quad[i][j])
    }

    fn flat(&self) -> Vec<f64> {
        let mut v: Vec<f64> = self.u.iter().flatten().copied().collect();
        v.extend(self.c);
        v.extend(self.b);
        v.extend(self.quad.iter().flatten());
        v.push(self.beta);
        v
    }

    fn tol(&self) -> f64 {
        MEMBERSHIP_TOL * self.flat().iter().fold(1.0_f64, |m, y| m.max(y.abs()))
    }

    /// The vector columns `(u?, c, b)` in table order.
    fn columns(&self) -> Vec<Vector3<f64>> {
        let mut v: Vec<Vector3<f64>> = self.u_vec().into_iter().collect();
        v.push(self.c_vec());
        v.push(self.b_vec());
        v
    }

    fn with_columns(&self, cols: &[Vector3<f64>], quad: Matrix3<f64>) -> ClassDatum {
        let off = usize::from(self.family.has_u());
        ClassDatum {
            family: self.family,
            u: self.family.has_u().then(|| arr(&cols[0])),
            c: arr(&cols[off]),
            b: arr(&cols[off + 1]),
            quad: [0, 1, 2].map(|i| [0, 1, 2].map(|j| quad[(i, j)])),
            beta: self.beta,
        }
    }

    /// `f·x` without renormalizing projective vectors.
    pub fn act(&self, f: &Matrix3<f64>) -> ClassDatum {
        let cols: Vec<Vector3<f64>> = self.columns().iter().map(|v| f * v).collect();
        self.with_columns(&cols, f * self.b_matrix() * f.transpose())
    }

    /// Maximal coordinate distance, comparing projective vectors up to scale.
    pub fn distance(&self, other: &ClassDatum) -> f64 {
        if self.family != other.family {
            return f64::INFINITY;
        }
        let proj = self.family.projective();
        let mut d: f64 = 0.0;
        for ((x, y), p) in self.columns().iter().zip(other.columns()).zip(proj) {
            d = d.max(if p { projective_distance(x, &y) } else { (x - y).amax() });
        }
        d.max((self.b_matrix() - other.b_matrix()).amax()).max((self.beta - other.beta).abs())
    }

    /// The quadruple `(a, δ, u)` this datum stands for, with `δ = [[β, bᵀ], [b, B]]`.
    pub fn to_division_datum(&self, sign: i8) -> Result<DivisionAlgebraDatum> {
        let head = if self.family.affine_c() { 1.0 } else { 0.0 };
        let a = [head, self.c[0], self.c[1], self.c[2]];
        let mut delta = [[0.0; 4]; 4];
        delta[0][0] = self.beta;
        for i in 0..3 {
            delta[0][i + 1] = self.b[i];
            delta[i + 1][0] = self.b[i];
            for j in 0..3 {
                delta[i + 1][j + 1] = self.quad[i][j];
            }
        }
        let u = match self.u {
            Some(u) => [0.0, u[0], u[1], u[2]],
            None => [1.0, 0.0, 0.0, 0.0],
        };
        DivisionAlgebraDatum::new(a, delta, u, sign)
    }
}

fn projective_distance(x: &Vector3<f64>, y: &Vector3<f64>) -> f64 {
    let k = x.iamax();
    if y[k] == 0.0 {
        return f64::INFINITY;
    }
    (x / x[k] - y / y[k]).amax()
}

/// Eigen-decomposition `RᵀBR = diag(d)` with `d` ascending and `det R = +1`.
#[derive(Clone, Debug, PartialEq)]
pub struct Diagonalization {
    pub d: [f64; 3],
    pub rotation: Matrix3<f64>,
    pub stratum: u8,
    /// Some eigenvalue gap is nonzero but below [`NEAR_DEGENERATE_GAP`].
    pub near_degenerate: bool,
}

/// Diagonalizes a symmetric matrix; eigenvalues equal up to [`STRATUM_GAP`]
/// are snapped to their mean.
pub fn diagonalize_symmetric(m: &Matrix3<f64>) -> Diagonalization {
    let sym = (m + m.transpose()) * 0.5;
    let eig = SymmetricEigen::new(sym);
    let mut order = [0usize, 1, 2];
    order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));
    let mut d = order.map(|i| eig.eigenvalues[i]);
    let mut r = Matrix3::from_fn(|i, j| eig.eigenvectors[(i, order[j])]);
    if r.determinant() < 0.0 {
        r.column_mut(2).neg_mut();
    }

    let scale = d.iter().fold(1.0_f64, |s, y| s.max(y.abs()));
    let thr = STRATUM_GAP * scale;
    let near = NEAR_DEGENERATE_GAP * scale;
    let gaps = [d[1] - d[0], d[2] - d[1]];
    let eq = gaps.map(|g| g <= thr);
    let stratum = match eq {
        [true, true] => 1,
        [true, false] => 2,
        [false, true] => 3,
        [false, false] => 4,
    };
    match stratum {
        1 => d = [(d[0] + d[1] + d[2]) / 3.0; 3],
        2 => {
            let m = (d[0] + d[1]) / 2.0;
            d[0] = m;
            d[1] = m;
        }
        3 => {
            let m = (d[1] + d[2]) / 2.0;
            d[1] = m;
            d[2] = m;
        }
        _ => {}
    }
    let near_degenerate = gaps.iter().any(|&g| g > thr && g <= near);
    Diagonalization { d, rotation: r, stratum, near_degenerate }
}

/// Result of [`reduce`].
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NormalFormRecord {
    pub stratum: u8,
    pub d: [f64; 3],
    pub canonical: ClassDatum,
    /// Rotation `W` with `W·input = canonical`, projective vectors up to scale.
    pub witness_rotation: [[f64; 3]; 3],
    pub near_degenerate: bool,
    /// Label of the table block the canonical datum lies in.
    pub block: String,
}

fn klein() -> [Matrix3<f64>; 4] {
    [
        Matrix3::identity(),
        Matrix3::from_diagonal(&Vector3::new(1.0, -1.0, -1.0)),
        Matrix3::from_diagonal(&Vector3::new(-1.0, 1.0, -1.0)),
        Matrix3::from_diagonal(&Vector3::new(-1.0, -1.0, 1.0)),
    ]
}

/// Rotation in the coordinate plane `(p, q)` taking `(v_p, v_q)` to `(r, 0)`.
fn plane_rotation(v: &Vector3<f64>, p: usize, q: usize) -> Matrix3<f64> {
    let r = v[p].hypot(v[q]);
    let (c, s) = (v[p] / r, v[q] / r);
    let mut m = Matrix3::identity();
    m[(p, p)] = c;
    m[(p, q)] = s;
    m[(q, p)] = -s;
    m[(q, q)] = c;
    m
}

/// A rotation taking `v` to `|v| e1`.
fn rotation_to_e1(v: &Vector3<f64>) -> Matrix3<f64> {
    let r1 = v.normalize();
    let helper = if r1[0].abs() < 0.9 { Vector3::x() } else { Vector3::y() };
    let r2 = (helper - r1 * r1.dot(&helper)).normalize();
    let r3 = r1.cross(&r2);
    Matrix3::from_rows(&[r1.transpose(), r2.transpose(), r3.transpose()])
}

/// Alignments of the diagonalized vectors under the stratum stabilizer; the
/// remaining freedom is contained in the Klein four-group.
fn alignment(stratum: u8, cols: &[Vector3<f64>], tol: f64) -> Matrix3<f64> {
    let part = |v: &Vector3<f64>, p: usize, q: usize| v[p].hypot(v[q]) > tol;
    match stratum {
        1 => {
            let Some(first) = cols.iter().position(|v| v.amax() > tol) else {
                return Matrix3::identity();
            };
            let m = rotation_to_e1(&cols[first]);
            match cols[first + 1..].iter().map(|v| m * v).find(|w| part(w, 1, 2)) {
                Some(w) => plane_rotation(&w, 1, 2) * m,
                None => m,
            }
        }
        2 => cols.iter().find(|v| part(v, 0, 1)).map_or(Matrix3::identity(), |v| plane_rotation(v, 0, 1)),
        3 => cols.iter().find(|v| part(v, 1, 2)).map_or(Matrix3::identity(), |v| plane_rotation(v, 1, 2)),
        _ => Matrix3::identity(),
    }
}

fn lex(a: &[f64], b: &[f64], tol: f64) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        if (x - y).abs() > tol {
            return x.total_cmp(y);
        }
    }
    Ordering::Equal
}

/// Fits the vector columns into some block of the listed set.
fn fit(family: Family, stratum: u8, cols: &[Vector3<f64>], tol: f64) -> Option<(Vec<Vector3<f64>>, &'static str)> {
    let proj = family.projective();
    tables::blocks(family, stratum).iter().find_map(|block| {
        let fitted: Option<Vec<Vector3<f64>>> =
            block.columns.iter().zip(cols).zip(&proj).map(|((col, v), &p)| col.fit(v, p, tol)).collect();
        fitted.map(|f| (f, block.label.as_str()))
    })
}

/// Reduces a datum to the listed normal form of its orbit.
pub fn reduce(x: &ClassDatum) -> Result<NormalFormRecord> {
    x.validate()?;
    let tol = x.tol();
    let diag = diagonalize_symmetric(&x.b_matrix());
    let rt = diag.rotation.transpose();
    let cols: Vec<Vector3<f64>> = x.columns().iter().map(|v| rt * v).collect();
    let m = alignment(diag.stratum, &cols, tol);
    let dmat = Matrix3::from_diagonal(&Vector3::from(diag.d));

    let mut best: Option<(Vec<f64>, Vec<Vector3<f64>>, Matrix3<f64>, &'static str)> = None;
    for g in klein() {
        let gm = g * m;
        let moved: Vec<Vector3<f64>> = cols.iter().map(|v| gm * v).collect();
        let Some((fitted, label)) = fit(x.family, diag.stratum, &moved, tol) else {
            continue;
        };
        let key: Vec<f64> = fitted.iter().flat_map(|v| v.iter().copied()).collect();
        if best.as_ref().is_none_or(|(k, ..)| lex(&key, k, tol) == Ordering::Less) {
            best = Some((key, fitted, gm * rt, label));
        }
    }
    let Some((_, fitted, w, label)) = best else {
        let shown: Vec<String> = cols.iter().map(|v| format!("({:.6e}, {:.6e}, {:.6e})", v[0], v[1], v[2])).collect();
        return Err(Error::Canonicalization(format!(
            "{} stratum {} d = {:?}: no stabilizer image of [{}] lies in a listed block",
            x.family,
            diag.stratum,
            diag.d,
            shown.join(", ")
        )));
    };
    Ok(NormalFormRecord {
        stratum: diag.stratum,
        d: diag.d,
        canonical: x.with_columns(&fitted, dmat),
        witness_rotation: [0, 1, 2].map(|i| [0, 1, 2].map(|j| w[(i, j)])),
        near_degenerate: diag.near_degenerate,
        block: label.to_string(),
    })
}

/// Whether the canonical datum lies in the listed set for its family and
/// stratum with `B` diagonal and ascending.
pub fn membership(record: &NormalFormRecord) -> bool {
    block_of(&record.canonical, record.stratum).is_some()
}

/// The block of the listed set containing `x`, which must have `B` diagonal
/// with ascending entries in the given stratum.
pub fn block_of(x: &ClassDatum, stratum: u8) -> Option<&'static str> {
    if !(1..=4).contains(&stratum) {
        return None;
    }
    let tol = x.tol();
    let m = x.b_matrix();
    let off_diag = (0..3).flat_map(|i| (0..3).map(move |j| (i, j))).filter(|(i, j)| i != j).all(|(i, j)| m[(i, j)].abs() <= tol);
    if !off_diag {
        return None;
    }
    let d = [m[(0, 0)], m[(1, 1)], m[(2, 2)]];
    let eq = [(d[1] - d[0]).abs() <= tol, (d[2] - d[1]).abs() <= tol];
    let ordered = d[0] <= d[1] + tol && d[1] <= d[2] + tol;
    let s = match eq {
        [true, true] => 1,
        [true, false] => 2,
        [false, true] => 3,
        [false, false] => 4,
    };
    if !ordered || s != stratum {
        return None;
    }
    fit(x.family, stratum, &x.columns(), tol).map(|(_, label)| label)
}

/// A point `(a, δ, u)` of `ℍ×/ℝ× × Spds(ℍ) × U_ℍ` with a sign `r = ±1`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DivisionAlgebraDatum {
    pub a: [f64; 4],
    pub delta: [[f64; 4]; 4],
    pub u: [f64; 4],
    pub sign: i8,
}

const DATUM_TOL: f64 = 1e-8;

impl DivisionAlgebraDatum {
    pub fn new(a: [f64; 4], delta: [[f64; 4]; 4], u: [f64; 4], sign: i8) -> Result<Self> {
        let d = DivisionAlgebraDatum { a, delta, u, sign };
        d.validate()?;
        Ok(d)
    }

    pub fn delta_matrix(&self) -> Matrix4<f64> {
        Matrix4::from_fn(|i, j| self.delta[i][j])
    }

    pub fn validate(&self) -> Result<()> {
        if self.sign != 1 && self.sign != -1 {
            return Err(Error::Domain(format!("sign must be ±1, got {}", self.sign)));
        }
        let all = self.a.iter().chain(self.u.iter()).chain(self.delta.iter().flatten());
        if all.clone().any(|y| !y.is_finite()) {
            return Err(Error::NonFinite);
        }
        let a = DVector::from_column_slice(&self.a);
        if a.norm() == 0.0 {
            return Err(Error::Domain("a is zero".into()));
        }
        let m = self.delta_matrix();
        let scale = m.amax().max(1.0);
        if (m - m.transpose()).amax() > DATUM_TOL * scale {
            return Err(Error::Domain("delta is not symmetric".into()));
        }
        if m.cholesky().is_none() {
            return Err(Error::Domain("delta is not positive definite".into()));
        }
        let det = m.determinant();
        if (det - 1.0).abs() > DATUM_TOL {
            return Err(Error::RelationViolation { what: "det delta = 1", residual: (det - 1.0).abs() });
        }
        let h = hurwitz(4)?;
        let u = Element::from_column_slice(&self.u);
        if u.norm() == 0.0 {
            return Err(Error::Domain("u is zero".into()));
        }
        let uu = h.mul(&u, &u);
        let residual = uu.rows(1, 3).norm() / u.norm_squared();
        if residual > DATUM_TOL {
            return Err(Error::RelationViolation { what: "u² real", residual });
        }
        Ok(())
    }
}

/// The isotope `ℍ_{L_a δ, R_u}` for `r = +1` and `ℍ_{R_a δ κ, R_u}` for
/// `r = −1`, where `κ` is quaternion conjugation.
pub fn build_division_algebra(x: &DivisionAlgebraDatum) -> Result<Algebra> {
    x.validate()?;
    let h = hurwitz(4)?;
    let a = Element::from_column_slice(&x.a);
    let u = Element::from_column_slice(&x.u);
    let delta = DMatrix::from_fn(4, 4, |i, j| x.delta[i][j]);
    let alpha = if x.sign == 1 { h.left_mul(&a) * delta } else { h.right_mul(&a) * delta * h.conjugation() };
    h.isotope(&alpha, &h.right_mul(&u))
}
