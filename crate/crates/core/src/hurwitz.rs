//! Hurwitz algebras ℝ, ℂ, ℍ, 𝕆 and constructions built from them.
//!
//! The Cayley–Dickson product is `(a,b)(c,d) = (ac − d̄b, da + bc̄)` with every
//! doubling parameter equal to −1. The octonion basis is ordered
//! `1, i, j, ij, l, il, jl, (ij)l`.
//!
//! | label    | base | σ on generators          | τ on generators                 |
//! |----------|------|--------------------------|---------------------------------|
//! | `R`      | ℝ    | id                       | id                              |
//! | `C-id`   | ℂ    | id                       | id                              |
//! | `C-conj` | ℂ    | i ↦ −i                   | i ↦ −i                          |
//! | `H-id`   | ℍ    | id                       | id                              |
//! | `H-22`   | ℍ    | (i, j) ↦ (i, −j)         | (i, j) ↦ (i, −j)                |
//! | `H-111`  | ℍ    | (i, j) ↦ (i, −j)         | (i, j) ↦ (ci + sj, si − cj)     |
//! | `O-id`   | 𝕆    | id                       | id                              |
//! | `O-44`   | 𝕆    | (i, j, l) ↦ (i, j, −l)   | (i, j, l) ↦ (i, j, −l)          |
//! | `O-222`  | 𝕆    | (i, j, l) ↦ (−i, −j, l)  | (i, j, l) ↦ (−i, −j, cl + s·il) |
//! | `O-113`  | 𝕆    | (i, j, l) ↦ (i, j, −l)   | (i, j, l) ↦ (ci + s·il, cj + s·jl, −l) |
//!
//! with `(c, s) = (cos 2π/3, sin 2π/3)`. For `H-111` the image of `k = ij` is
//! `τ(i)τ(j) = −k`.

use std::fmt;
use std::ops::Deref;
use std::str::FromStr;

use nalgebra::DMatrix;

use crate::algebra::{Algebra, Element, LinearMap};
use crate::error::{Error, Result};
use crate::linalg::{self, RANK_CUTOFF};

const QUATERNION_LABELS: [&str; 4] = ["1", "i", "j", "k"];
const OCTONION_LABELS: [&str; 8] = ["1", "i", "j", "ij", "l", "il", "jl", "(ij)l"];

fn cd_conj(x: &[f64]) -> Vec<f64> {
    let mut out = x.to_vec();
    out.iter_mut().skip(1).for_each(|v| *v = -*v);
    out
}

fn cd_mul(x: &[f64], y: &[f64]) -> Vec<f64> {
    let n = x.len();
    if n == 1 {
        return vec![x[0] * y[0]];
    }
    let h = n / 2;
    let (a, b) = x.split_at(h);
    let (c, d) = y.split_at(h);
    let ac = cd_mul(a, c);
    let db = cd_mul(&cd_conj(d), b);
    let da = cd_mul(d, a);
    let bc = cd_mul(b, &cd_conj(c));
    let mut out = Vec::with_capacity(n);
    out.extend(ac.iter().zip(&db).map(|(p, q)| p - q));
    out.extend(da.iter().zip(&bc).map(|(p, q)| p + q));
    out
}

/// A unital composition algebra in its standard orthonormal basis.
#[derive(Clone, Debug, PartialEq)]
pub struct HurwitzAlgebra {
    algebra: Algebra,
}

impl Deref for HurwitzAlgebra {
    type Target = Algebra;

    fn deref(&self) -> &Algebra {
        &self.algebra
    }
}

/// Standard Hurwitz algebra of dimension 1, 2, 4 or 8.
pub fn hurwitz(dim: usize) -> Result<HurwitzAlgebra> {
    if !matches!(dim, 1 | 2 | 4 | 8) {
        return Err(Error::InvalidDimension(dim));
    }
    let algebra = Algebra::from_product(dim, |x, y| {
        Element::from_vec(cd_mul(x.as_slice(), y.as_slice()))
    })?;
    let labels: Vec<String> = match dim {
        1 => vec!["1".into()],
        2 => vec!["1".into(), "i".into()],
        4 => QUATERNION_LABELS.iter().map(|s| s.to_string()).collect(),
        _ => OCTONION_LABELS.iter().map(|s| s.to_string()).collect(),
    };
    Ok(HurwitzAlgebra { algebra: algebra.with_labels(labels)? })
}

impl HurwitzAlgebra {
    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn into_algebra(self) -> Algebra {
        self.algebra
    }

    pub fn unit(&self) -> Element {
        self.algebra.basis(0)
    }

    /// The standard involution `κ = diag(1, −1, …, −1)`.
    pub fn conjugation(&self) -> LinearMap {
        let mut k = LinearMap::identity(self.dim(), self.dim());
        for i in 1..self.dim() {
            k[(i, i)] = -1.0;
        }
        k
    }

    pub fn conj(&self, x: &Element) -> Element {
        let mut out = x.clone();
        out.iter_mut().skip(1).for_each(|v| *v = -*v);
        out
    }

    /// `t(x) = x + x̄`, as a scalar.
    pub fn trace_form(&self, x: &Element) -> f64 {
        2.0 * x[0]
    }

    /// `n(x) = x x̄`, as a scalar.
    pub fn norm_form(&self, x: &Element) -> f64 {
        x.norm_squared()
    }

    /// `x⁻¹ = n(x)⁻¹ x̄`.
    pub fn inverse(&self, x: &Element) -> Result<Element> {
        let n = self.norm_form(x);
        if n <= self.tol() {
            return Err(Error::ZeroDivisor);
        }
        Ok(self.conj(x) / n)
    }

    /// Residual of `x² − t(x)x + n(x)1 = 0`.
    pub fn quadratic_residual(&self, x: &Element) -> f64 {
        let mut r = self.mul(x, x) - x * self.trace_form(x);
        r[0] += self.norm_form(x);
        r.norm()
    }

    /// Imaginary part `x − ½t(x)1`.
    pub fn imaginary(&self, x: &Element) -> Element {
        let mut out = x.clone();
        out[0] = 0.0;
        out
    }
}

fn unit_imaginary(x: &Element, tol: f64) -> bool {
    (x.norm() - 1.0).abs() <= tol && x[0].abs() <= tol
}

/// Unit vectors `(u, v, z)` in Im 𝕆 with `u, v, uv, z` mutually orthogonal.
#[derive(Clone, Debug, PartialEq)]
pub struct CayleyTriple {
    pub u: Element,
    pub v: Element,
    pub z: Element,
}

impl CayleyTriple {
    pub fn new(u: Element, v: Element, z: Element) -> Result<Self> {
        let tol = 1e-9;
        for w in [&u, &v, &z] {
            if w.len() != 8 {
                return Err(Error::DimensionMismatch { expected: 8, found: w.len() });
            }
            if !unit_imaginary(w, tol) {
                return Err(Error::InvalidTriple("entries must be unit imaginary octonions".into()));
            }
        }
        let o = hurwitz(8)?;
        let uv = o.mul(&u, &v);
        let vecs = [&u, &v, &uv, &z];
        for a in 0..4 {
            for b in a + 1..4 {
                if vecs[a].dot(vecs[b]).abs() > tol {
                    return Err(Error::InvalidTriple(format!("entries {a} and {b} are not orthogonal")));
                }
            }
        }
        Ok(Self { u, v, z })
    }

    /// The reference triple `(i, j, l)`.
    pub fn standard() -> Self {
        let e = |k| {
            let mut x = Element::zeros(8);
            x[k] = 1.0;
            x
        };
        Self { u: e(1), v: e(2), z: e(4) }
    }
}

/// The automorphism of 𝕆 sending `(i, j, l)` to `(u, v, z)`.
pub fn automorphism_from_cayley_triple(t: &CayleyTriple) -> LinearMap {
    let o = hurwitz(8).expect("dimension 8 is valid");
    let uv = o.mul(&t.u, &t.v);
    let images = [
        o.unit(),
        t.u.clone(),
        t.v.clone(),
        uv.clone(),
        t.z.clone(),
        o.mul(&t.u, &t.z),
        o.mul(&t.v, &t.z),
        o.mul(&uv, &t.z),
    ];
    LinearMap::from_columns(&images)
}

/// The Cayley triple `(φ(i), φ(j), φ(l))` of an automorphism of 𝕆.
pub fn cayley_triple_of(phi: &LinearMap) -> Result<CayleyTriple> {
    CayleyTriple::new(phi.column(1).into_owned(), phi.column(2).into_owned(), phi.column(4).into_owned())
}

/// The automorphism of ℍ sending `(i, j)` to an orthonormal pair `(u, v)` of
/// imaginary quaternions.
pub fn quaternion_automorphism(u: &Element, v: &Element) -> Result<LinearMap> {
    let tol = 1e-9;
    for w in [u, v] {
        if w.len() != 4 {
            return Err(Error::DimensionMismatch { expected: 4, found: w.len() });
        }
        if !unit_imaginary(w, tol) {
            return Err(Error::InvalidTriple("entries must be unit imaginary quaternions".into()));
        }
    }
    if u.dot(v).abs() > tol {
        return Err(Error::InvalidTriple("entries are not orthogonal".into()));
    }
    let h = hurwitz(4)?;
    Ok(LinearMap::from_columns(&[h.unit(), u.clone(), v.clone(), h.mul(u, v)]))
}

/// `(cos 2π/3, sin 2π/3)`.
pub fn third_root() -> (f64, f64) {
    (-0.5, 3f64.sqrt() / 2.0)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum InvInvLabel {
    R,
    CId,
    CConj,
    HId,
    H22,
    H111,
    OId,
    O44,
    O222,
    O113,
}

impl InvInvLabel {
    pub const ALL: [InvInvLabel; 10] = [
        InvInvLabel::R,
        InvInvLabel::CId,
        InvInvLabel::CConj,
        InvInvLabel::HId,
        InvInvLabel::H22,
        InvInvLabel::H111,
        InvInvLabel::OId,
        InvInvLabel::O44,
        InvInvLabel::O222,
        InvInvLabel::O113,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            InvInvLabel::R => "R",
            InvInvLabel::CId => "C-id",
            InvInvLabel::CConj => "C-conj",
            InvInvLabel::HId => "H-id",
            InvInvLabel::H22 => "H-22",
            InvInvLabel::H111 => "H-111",
            InvInvLabel::OId => "O-id",
            InvInvLabel::O44 => "O-44",
            InvInvLabel::O222 => "O-222",
            InvInvLabel::O113 => "O-113",
        }
    }

    pub fn base_dim(self) -> usize {
        match self {
            InvInvLabel::R => 1,
            InvInvLabel::CId | InvInvLabel::CConj => 2,
            InvInvLabel::HId | InvInvLabel::H22 | InvInvLabel::H111 => 4,
            _ => 8,
        }
    }
}

impl fmt::Display for InvInvLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for InvInvLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        InvInvLabel::ALL
            .into_iter()
            .find(|l| l.as_str() == s)
            .ok_or_else(|| Error::UnknownLabel(s.to_string()))
    }
}

/// An involutive pair `(σ, τ)` of automorphisms of a Hurwitz algebra.
#[derive(Clone, Debug)]
pub struct InvInvSpec {
    pub base: usize,
    pub sigma: LinearMap,
    pub tau: LinearMap,
    pub label: InvInvLabel,
}

fn octonion(coords: &[(usize, f64)]) -> Element {
    let mut x = Element::zeros(8);
    for &(k, c) in coords {
        x[k] += c;
    }
    x
}

fn quaternion(coords: &[(usize, f64)]) -> Element {
    let mut x = Element::zeros(4);
    for &(k, c) in coords {
        x[k] += c;
    }
    x
}

fn triple(u: &[(usize, f64)], v: &[(usize, f64)], z: &[(usize, f64)]) -> LinearMap {
    let t = CayleyTriple::new(octonion(u), octonion(v), octonion(z)).expect("valid Cayley triple");
    automorphism_from_cayley_triple(&t)
}

impl InvInvSpec {
    pub fn new(label: InvInvLabel) -> Self {
        let (c, s) = third_root();
        let base = label.base_dim();
        let eye = LinearMap::identity(base, base);
        let (sigma, tau) = match label {
            InvInvLabel::R | InvInvLabel::CId | InvInvLabel::HId | InvInvLabel::OId => (eye.clone(), eye),
            InvInvLabel::CConj => {
                let k = LinearMap::from_diagonal(&Element::from_column_slice(&[1.0, -1.0]));
                (k.clone(), k)
            }
            InvInvLabel::H22 | InvInvLabel::H111 => {
                let sigma = quaternion_automorphism(&quaternion(&[(1, 1.0)]), &quaternion(&[(2, -1.0)]))
                    .expect("orthonormal pair");
                let tau = if label == InvInvLabel::H22 {
                    sigma.clone()
                } else {
                    quaternion_automorphism(&quaternion(&[(1, c), (2, s)]), &quaternion(&[(1, s), (2, -c)]))
                        .expect("orthonormal pair")
                };
                (sigma, tau)
            }
            InvInvLabel::O44 => {
                let sigma = triple(&[(1, 1.0)], &[(2, 1.0)], &[(4, -1.0)]);
                (sigma.clone(), sigma)
            }
            InvInvLabel::O222 => (
                triple(&[(1, -1.0)], &[(2, -1.0)], &[(4, 1.0)]),
                triple(&[(1, -1.0)], &[(2, -1.0)], &[(4, c), (5, s)]),
            ),
            InvInvLabel::O113 => (
                triple(&[(1, 1.0)], &[(2, 1.0)], &[(4, -1.0)]),
                triple(&[(1, c), (5, s)], &[(2, c), (6, s)], &[(4, -1.0)]),
            ),
        };
        Self { base, sigma, tau, label }
    }

    /// Largest Frobenius residual among `σ² = I`, `τ² = I`, `(τσ)³ = I`.
    pub fn relation_residual(&self) -> f64 {
        let eye = LinearMap::identity(self.base, self.base);
        let ts = &self.tau * &self.sigma;
        [
            (&self.sigma * &self.sigma - &eye).norm(),
            (&self.tau * &self.tau - &eye).norm(),
            (&ts * &ts * &ts - &eye).norm(),
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }

    pub fn decomposition(&self) -> Result<D6Decomposition> {
        D6Decomposition::new(&self.sigma, &self.tau)
    }
}

/// `B_{σ,τ}` with product `x∘y = σ(x)τ(y)`.
pub fn invinv_algebra(label: &str) -> Result<(Algebra, InvInvSpec)> {
    let label: InvInvLabel = label.parse()?;
    let spec = InvInvSpec::new(label);
    let base = hurwitz(spec.base)?;
    let algebra = base.isotope(&spec.sigma, &spec.tau)?;
    Ok((algebra, spec))
}

/// Splitting `B = T ⊕ S ⊕ N` into trivial, sign and natural isotypic parts of
/// the dihedral group generated by `σ` and `τ`.
#[derive(Clone, Debug)]
pub struct D6Decomposition {
    /// Orthonormal basis columns of `T = ker(σ − I) ∩ ker(τ − I)`.
    pub t: DMatrix<f64>,
    /// Orthonormal basis columns of `S = ker(σ + I) ∩ ker(τ + I)`.
    pub s: DMatrix<f64>,
    /// Orthonormal basis columns of the orthogonal complement `N`.
    pub n: DMatrix<f64>,
    /// Smallest spectral gap of the two rank decisions.
    pub gap: f64,
}

impl D6Decomposition {
    pub fn new(sigma: &LinearMap, tau: &LinearMap) -> Result<Self> {
        let dim = sigma.nrows();
        if sigma.ncols() != dim || tau.nrows() != dim || tau.ncols() != dim {
            return Err(Error::DimensionMismatch { expected: dim, found: tau.nrows() });
        }
        let eye = LinearMap::identity(dim, dim);
        let ts = tau * sigma;
        let checks = [
            ("sigma^2 = I", (sigma * sigma - &eye).norm()),
            ("tau^2 = I", (tau * tau - &eye).norm()),
            ("(tau sigma)^3 = I", (&ts * &ts * &ts - &eye).norm()),
        ];
        for (what, residual) in checks {
            if residual > 1e-8 {
                return Err(Error::RelationViolation { what, residual });
            }
        }
        let stack = |sign: f64| {
            let mut m = DMatrix::zeros(2 * dim, dim);
            m.view_mut((0, 0), (dim, dim)).copy_from(&(sigma - &eye * sign));
            m.view_mut((dim, 0), (dim, dim)).copy_from(&(tau - &eye * sign));
            linalg::nullspace(&m, RANK_CUTOFF)
        };
        let t = stack(1.0);
        let s = stack(-1.0);
        let mut ts_basis = DMatrix::zeros(dim, t.dim() + s.dim());
        ts_basis.view_mut((0, 0), (dim, t.dim())).copy_from(&t.basis);
        ts_basis.view_mut((0, t.dim()), (dim, s.dim())).copy_from(&s.basis);
        let n = linalg::complement(&ts_basis, dim);
        Ok(Self { gap: t.gap.min(s.gap), t: t.basis, s: s.basis, n })
    }

    pub fn dims(&self) -> (usize, usize, usize) {
        (self.t.ncols(), self.s.ncols(), self.n.ncols())
    }

    /// Distance from `x` to `N`.
    pub fn distance_to_n(&self, x: &Element) -> f64 {
        (x - &self.n * (self.n.transpose() * x)).norm()
    }
}

#[derive(Clone, Debug)]
pub struct SquareIdpReport {
    /// `‖σ(x)τ(x) + ‖x‖²(c − sy)‖` at the optimal unit `y ∈ S`.
    pub residual: f64,
    pub y: Element,
    /// `‖σ(w)τ(w) − w‖` for `w = c − sy`.
    pub idempotent_residual: f64,
}

/// Check `σ(x)τ(x) = −‖x‖²(c − sy)` for `x ∈ N` and some unit `y ∈ S`.
pub fn squareidp_check(spec: &InvInvSpec, x: &Element) -> Result<SquareIdpReport> {
    let dec = spec.decomposition()?;
    let base = hurwitz(spec.base)?;
    if dec.s.ncols() == 0 {
        return Err(Error::TrivialSubspace("S"));
    }
    if x.len() != spec.base {
        return Err(Error::DimensionMismatch { expected: spec.base, found: x.len() });
    }
    let dist = dec.distance_to_n(x);
    if dist > base.tol() * linalg::scale(x.norm()) {
        return Err(Error::Domain(format!("element is {dist:.3e} away from N")));
    }
    let (c, s) = third_root();
    let square = |w: &Element| base.mul(&(&spec.sigma * w), &(&spec.tau * w));

    let x2 = x.norm_squared();
    let mut v = square(x);
    v[0] += x2 * c;
    let eta = dec.s.transpose() * &v;
    let y = if eta.norm() > 0.0 {
        &dec.s * (&eta / eta.norm())
    } else {
        dec.s.column(0).into_owned()
    };
    let residual = (&v - &y * (x2 * s)).norm();

    let mut w = -&y * s;
    w[0] += c;
    let idempotent_residual = (square(&w) - &w).norm();
    Ok(SquareIdpReport { residual, y, idempotent_residual })
}

/// The algebra on `ℝ × Im H` with `(λ,v)(μ,w) = (λμ − ⟨v,w⟩, λw + μv + ½[v,w])`.
pub fn vector_product_algebra(h: &HurwitzAlgebra) -> Algebra {
    let n = h.dim();
    let bracket = |v: &Element, w: &Element| -> Element { h.imaginary(&((h.mul(v, w) - h.mul(w, v)) * 0.5)) };
    let algebra = Algebra::from_product(n, |x, y| {
        let (lambda, mu) = (x[0], y[0]);
        let v = h.imaginary(x);
        let w = h.imaginary(y);
        let mut out = &w * lambda + &v * mu + bracket(&v, &w);
        out[0] = lambda * mu - v.dot(&w);
        out
    })
    .expect("product has matching dimension");
    match h.labels() {
        Some(l) => algebra.clone().with_labels(l.to_vec()).unwrap_or(algebra),
        None => algebra,
    }
}

/// `M = γδ` with `γ` orthogonal and `δ` symmetric positive definite.
pub fn polar_decompose(m: &LinearMap) -> Result<(LinearMap, LinearMap)> {
    let n = m.nrows();
    if m.ncols() != n {
        return Err(Error::DimensionMismatch { expected: n, found: m.ncols() });
    }
    let svd = m.clone().svd(true, true);
    let smax = svd.singular_values.max();
    let smin = svd.singular_values.min();
    if smax == 0.0 || smin < crate::algebra::DEFAULT_TOL * smax {
        return Err(Error::Singular { what: "M", ratio: if smax == 0.0 { 0.0 } else { smin / smax } });
    }
    let u = svd.u.expect("requested U");
    let v_t = svd.v_t.expect("requested V^T");
    let gamma = &u * &v_t;
    let delta = v_t.transpose() * DMatrix::from_diagonal(&svd.singular_values) * &v_t;
    let delta = (&delta + delta.transpose()) * 0.5;
    Ok((gamma, delta))
}
