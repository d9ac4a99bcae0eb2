//! Linear invariants of an algebra: ternary derivations, nuclei, inversion on
//! the left, morphism residuals and isomorphism fingerprints.

use nalgebra::DMatrix;
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::Serialize;

use crate::algebra::{Algebra, Element, LinearMap};
use crate::error::{Error, Result};
use crate::hurwitz::{hurwitz, polar_decompose, D6Decomposition, InvInvSpec};
use crate::linalg::{self, Nullspace, RANK_CUTOFF};

/// Relative residual below which `L_a⁻¹` is accepted as some `L_b`.
pub const INVERSION_TOL: f64 = 1e-8;

// ---------------------------------------------------------------------------
// Ternary derivations
// ---------------------------------------------------------------------------

/// Basis of `Tder(A) = {(d1,d2,d3) : d1(xy) = d2(x)y + x d3(y)}`.
#[derive(Clone, Debug)]
pub struct TderBasis {
    pub triples: Vec<(LinearMap, LinearMap, LinearMap)>,
    pub dim: usize,
    /// Spectral gap at the rank cut of the defining system.
    pub gap: f64,
    /// Image dimensions of the projections `π₁, π₂, π₃`.
    pub projections: [usize; 3],
    /// Kernel dimensions of `π₁, π₂, π₃`.
    pub kernels: [usize; 3],
}

/// Coefficient matrix of the linear conditions defining `Tder(A)`.
///
/// Unknowns are `vec(d1), vec(d2), vec(d3)` in column-major order.
pub fn tder_system(a: &Algebra) -> DMatrix<f64> {
    let n = a.dim();
    let n2 = n * n;
    let mut m = DMatrix::zeros(n * n2, 3 * n2);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let row = (i * n + j) * n + k;
                for p in 0..n {
                    // d1(e_i e_j)_k = Σ_p c[i][j][p] d1[k][p]
                    m[(row, k + n * p)] += a.constant(i, j, p);
                    // (d2(e_i) e_j)_k = Σ_p d2[p][i] c[p][j][k]
                    m[(row, n2 + p + n * i)] -= a.constant(p, j, k);
                    // (e_i d3(e_j))_k = Σ_p d3[p][j] c[i][p][k]
                    m[(row, 2 * n2 + p + n * j)] -= a.constant(i, p, k);
                }
            }
        }
    }
    m
}

fn rank(m: &DMatrix<f64>) -> usize {
    if m.ncols() == 0 || m.nrows() == 0 {
        return 0;
    }
    m.ncols() - linalg::nullspace(m, RANK_CUTOFF).dim()
}

pub fn tder(a: &Algebra) -> TderBasis {
    let n = a.dim();
    let n2 = n * n;
    let ns = linalg::nullspace(&tder_system(a), RANK_CUTOFF);
    let dim = ns.dim();
    let triples = (0..dim)
        .map(|c| {
            let col = ns.basis.column(c);
            let block = |b: usize| LinearMap::from_column_slice(n, n, &col.as_slice()[b * n2..(b + 1) * n2]);
            (block(0), block(1), block(2))
        })
        .collect();
    let mut projections = [0; 3];
    let mut kernels = [0; 3];
    for b in 0..3 {
        let rows = ns.basis.rows(b * n2, n2).into_owned();
        projections[b] = rank(&rows);
        kernels[b] = dim - projections[b];
    }
    TderBasis { triples, dim, gap: ns.gap, projections, kernels }
}

/// Largest residual of the defining relation over basis pairs.
pub fn tder_residual(a: &Algebra, d: &(LinearMap, LinearMap, LinearMap)) -> f64 {
    let n = a.dim();
    let mut worst: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            let (ei, ej) = (a.basis(i), a.basis(j));
            let lhs = &d.0 * a.mul(&ei, &ej);
            let rhs = a.mul(&(&d.1 * &ei), &ej) + a.mul(&ei, &(&d.2 * &ej));
            worst = worst.max((lhs - rhs).norm());
        }
    }
    worst
}

// ---------------------------------------------------------------------------
// Nuclei
// ---------------------------------------------------------------------------

#[derive(Clone, Debug)]
pub struct Nuclei {
    pub left: Nullspace,
    pub middle: Nullspace,
    pub right: Nullspace,
}

impl Nuclei {
    pub fn dims(&self) -> (usize, usize, usize) {
        (self.left.dim(), self.middle.dim(), self.right.dim())
    }

    pub fn min_gap(&self) -> f64 {
        self.left.gap.min(self.middle.gap).min(self.right.gap)
    }
}

fn nucleus(a: &Algebra, assoc: impl Fn(&Element, &Element, &Element) -> Element) -> Nullspace {
    let n = a.dim();
    let mut m = DMatrix::zeros(n * n * n, n);
    for p in 0..n {
        let ep = a.basis(p);
        for i in 0..n {
            for j in 0..n {
                let v = assoc(&ep, &a.basis(i), &a.basis(j));
                for k in 0..n {
                    m[((i * n + j) * n + k, p)] = v[k];
                }
            }
        }
    }
    let c = constant_scale(a);
    linalg::nullspace_with_floor(&m, RANK_CUTOFF, c * c * n as f64)
}

fn constant_scale(a: &Algebra) -> f64 {
    a.constants().iter().fold(0.0_f64, |m, v| m.max(v.abs()))
}

/// Left, middle and right nuclei as orthonormal bases.
pub fn nuclei(a: &Algebra) -> Nuclei {
    let m = |x: &Element, y: &Element| a.mul(x, y);
    Nuclei {
        left: nucleus(a, |p, x, y| m(&m(p, x), y) - m(p, &m(x, y))),
        middle: nucleus(a, |p, x, y| m(&m(x, p), y) - m(x, &m(p, y))),
        right: nucleus(a, |p, x, y| m(&m(x, y), p) - m(x, &m(y, p))),
    }
}

// ---------------------------------------------------------------------------
// Inversion on the left
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, Serialize)]
pub struct InversionReport {
    pub has_left_inversion: bool,
    /// Largest `‖L_a L_{s(a)} − I‖` over the samples.
    pub max_witness_residual: f64,
    pub inversion_samples: Vec<(Vec<f64>, Vec<f64>)>,
    pub involutive: bool,
    /// Largest relative `‖s(ab) − s(b)s(a)‖`; zero when not tested.
    pub involutive_residual: f64,
}

/// Matrix whose column `k` is `vec(L_{e_k})`, so that `vec(L_b) = M b`.
fn left_operator_basis(a: &Algebra) -> DMatrix<f64> {
    let n = a.dim();
    let mut m = DMatrix::zeros(n * n, n);
    for k in 0..n {
        m.set_column(k, &linalg::vectorize(&a.left_mul(&a.basis(k))));
    }
    m
}

/// Best `b` with `L_b ≈ L_a⁻¹` and the residual `‖L_a L_b − I‖`.
pub fn inversion_element(alg: &Algebra, a: &Element) -> Result<(Element, f64)> {
    let basis = left_operator_basis(alg);
    inversion_with(alg, &basis, a)
}

fn inversion_with(alg: &Algebra, basis: &DMatrix<f64>, a: &Element) -> Result<(Element, f64)> {
    let n = alg.dim();
    let la = alg.left_mul(a);
    let inv = linalg::inverse(&la, alg.tol(), "L_a")?;
    let (b, _) = linalg::least_squares(basis, &linalg::vectorize(&inv));
    let residual = (&la * alg.left_mul(&b) - LinearMap::identity(n, n)).norm();
    Ok((b, residual))
}

fn gaussian(rng: &mut ChaCha20Rng, n: usize) -> Element {
    Element::from_fn(n, |_, _| StandardNormal.sample(rng))
}

fn well_conditioned(alg: &Algebra, rng: &mut ChaCha20Rng) -> Element {
    let n = alg.dim();
    loop {
        let x = gaussian(rng, n);
        if linalg::inverse_condition(&alg.left_mul(&x)) > 1e-6 {
            return x;
        }
    }
}

/// Test whether every sampled `L_a⁻¹` is again a left multiplication, and if so
/// whether `s(ab) = s(b)s(a)`.
pub fn left_inversion(alg: &Algebra, samples: usize, seed: u64) -> Result<InversionReport> {
    let n = alg.dim();
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let basis = left_operator_basis(alg);
    let mut max_res: f64 = 0.0;
    let mut pairs = Vec::with_capacity(samples);
    for _ in 0..samples {
        let a = well_conditioned(alg, &mut rng);
        let (b, r) = inversion_with(alg, &basis, &a)?;
        max_res = max_res.max(r / (n as f64).sqrt());
        pairs.push((a.as_slice().to_vec(), b.as_slice().to_vec()));
    }
    let has = max_res < INVERSION_TOL;
    let mut involutive = false;
    let mut inv_res: f64 = 0.0;
    if has {
        for _ in 0..samples {
            let a = well_conditioned(alg, &mut rng);
            let b = well_conditioned(alg, &mut rng);
            let ab = alg.mul(&a, &b);
            if linalg::inverse_condition(&alg.left_mul(&ab)) < 1e-8 {
                continue;
            }
            let s_ab = inversion_with(alg, &basis, &ab)?.0;
            let s_a = inversion_with(alg, &basis, &a)?.0;
            let s_b = inversion_with(alg, &basis, &b)?.0;
            let rhs = alg.mul(&s_b, &s_a);
            let r = (&s_ab - &rhs).norm() / s_ab.norm().max(rhs.norm()).max(1.0);
            inv_res = inv_res.max(r);
        }
        involutive = inv_res < INVERSION_TOL;
    }
    Ok(InversionReport {
        has_left_inversion: has,
        max_witness_residual: max_res,
        inversion_samples: pairs,
        involutive,
        involutive_residual: inv_res,
    })
}

// ---------------------------------------------------------------------------
// Factorization criterion on ℍ
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, Serialize)]
pub struct CriterionReport {
    /// `β = L_a R_u` with `u² ∈ ℝ1`.
    pub holds: bool,
    pub det_positive: bool,
    /// Relative distance of the positive factor from a scalar.
    pub scalar_residual: f64,
    pub rho: f64,
    pub a: Option<Vec<f64>>,
    pub u: Option<Vec<f64>>,
    /// `|u₀|·|Im u|`, zero exactly when `u² ∈ ℝ1`.
    pub u_square_residual: Option<f64>,
    /// Verdict of the direct inversion test on `ℍ_{α,β}`.
    pub direct: bool,
    pub agrees: bool,
}

fn normalize_sign(a: &mut Element, u: &mut Element) {
    if let Some(&first) = a.iter().find(|v| v.abs() > 1e-12) {
        if first < 0.0 {
            *a = -&*a;
            *u = -&*u;
        }
    }
}

/// Write a rotation of ℍ as `γ = L_a R_u` with unit `a, u`.
pub fn rotation_factors(gamma: &LinearMap) -> Result<(Element, Element, f64)> {
    let h = hurwitz(4)?;
    let mut sys = DMatrix::zeros(16, 16);
    for p in 0..4 {
        let lp = h.left_mul(&h.basis(p));
        for q in 0..4 {
            let op = &lp * h.right_mul(&h.basis(q));
            sys.set_column(p * 4 + q, &linalg::vectorize(&op));
        }
    }
    let coeffs = linalg::solve(&sys, &linalg::vectorize(gamma), 1e-12, "L_p R_q basis")?;
    let m = DMatrix::from_row_slice(4, 4, coeffs.as_slice());
    let svd = m.svd(true, true);
    let idx = svd.singular_values.imax();
    let s = svd.singular_values[idx];
    let u_mat = svd.u.expect("requested U");
    let v_t = svd.v_t.expect("requested V^T");
    let mut a = u_mat.column(idx).into_owned() * s.sqrt();
    let mut u = v_t.row(idx).transpose() * s.sqrt();
    normalize_sign(&mut a, &mut u);
    let residual = (gamma - h.left_mul(&a) * h.right_mul(&u)).norm();
    Ok((a, u, residual))
}

/// Decide whether `β = L_a R_u` with `u² ∈ ℝ1`, and compare with the direct
/// inversion test on `ℍ_{α,β}`.
pub fn criterion_check(alpha: &LinearMap, beta: &LinearMap, seed: u64) -> Result<CriterionReport> {
    for m in [alpha, beta] {
        if m.nrows() != 4 || m.ncols() != 4 {
            return Err(Error::DimensionMismatch { expected: 4, found: m.nrows() });
        }
    }
    let h = hurwitz(4)?;
    let iso = h.isotope(alpha, beta)?;
    let direct = left_inversion(&iso, 12, seed)?.has_left_inversion;

    let det_positive = beta.determinant() > 0.0;
    let mut report = CriterionReport {
        holds: false,
        det_positive,
        scalar_residual: f64::NAN,
        rho: f64::NAN,
        a: None,
        u: None,
        u_square_residual: None,
        direct,
        agrees: false,
    };
    if det_positive {
        let (gamma, delta) = polar_decompose(beta)?;
        let rho = delta.trace() / 4.0;
        let scalar_residual = (&delta - LinearMap::identity(4, 4) * rho).norm() / rho;
        report.rho = rho;
        report.scalar_residual = scalar_residual;
        if scalar_residual < 1e-8 {
            let (a, u, fit) = rotation_factors(&gamma)?;
            if fit > 1e-8 {
                return Err(Error::Canonicalization(format!("rotation factorization residual {fit:.3e}")));
            }
            let usq = u[0].abs() * u.rows(1, 3).norm();
            report.holds = usq < 1e-8;
            report.u_square_residual = Some(usq);
            report.a = Some((a * rho).as_slice().to_vec());
            report.u = Some(u.as_slice().to_vec());
        }
    }
    report.agrees = report.holds == direct;
    Ok(report)
}

// ---------------------------------------------------------------------------
// Morphisms and D6 data
// ---------------------------------------------------------------------------

/// `max_{i,j} ‖φ(e_i e_j) − φ(e_i)φ(e_j)‖` for `φ: A → B`.
pub fn morphism_residual(a: &Algebra, b: &Algebra, phi: &LinearMap) -> Result<f64> {
    if phi.ncols() != a.dim() || phi.nrows() != b.dim() {
        return Err(Error::DimensionMismatch { expected: a.dim(), found: phi.ncols() });
    }
    let mut worst: f64 = 0.0;
    for i in 0..a.dim() {
        for j in 0..a.dim() {
            let lhs = phi * a.mul(&a.basis(i), &a.basis(j));
            let rhs = b.mul(&phi.column(i).into_owned(), &phi.column(j).into_owned());
            worst = worst.max((lhs - rhs).norm());
        }
    }
    Ok(worst)
}

/// Multiplicities `(t, s, n)` of the trivial, sign and natural parts.
pub fn d6_dims(sigma: &LinearMap, tau: &LinearMap) -> Result<(usize, usize, usize)> {
    Ok(D6Decomposition::new(sigma, tau)?.dims())
}

// ---------------------------------------------------------------------------
// Fingerprints
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TriState {
    Yes,
    No,
    Undetermined,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Fingerprint {
    pub dim: usize,
    pub has_left_unit: bool,
    pub has_right_unit: bool,
    pub has_unit: bool,
    pub has_central_idempotent: TriState,
    pub nuclei_dims: (usize, usize, usize),
    pub tder_dim: usize,
    pub d6_dims: Option<(usize, usize, usize)>,
}

/// Solve `Σ e_k M_{e_k} = I` for `M = L` or `R` by least squares.
fn one_sided_unit(a: &Algebra, left: bool) -> Option<Element> {
    let n = a.dim();
    let mut m = DMatrix::zeros(n * n, n);
    for k in 0..n {
        let op = if left { a.left_mul(&a.basis(k)) } else { a.right_mul(&a.basis(k)) };
        m.set_column(k, &linalg::vectorize(&op));
    }
    let target = linalg::vectorize(&LinearMap::identity(n, n));
    let (e, r) = linalg::least_squares(&m, &target);
    (r < 1e-8 * (n as f64).sqrt()).then_some(e)
}

/// Basis of `{x : xy = yx for all y}`.
pub fn commuting_subspace(a: &Algebra) -> Nullspace {
    let n = a.dim();
    let mut m = DMatrix::zeros(n * n, n);
    for p in 0..n {
        let ep = a.basis(p);
        for j in 0..n {
            let ej = a.basis(j);
            let c = a.mul(&ep, &ej) - a.mul(&ej, &ep);
            for k in 0..n {
                m[(j * n + k, p)] = c[k];
            }
        }
    }
    linalg::nullspace_with_floor(&m, RANK_CUTOFF, constant_scale(a))
}

/// Search for a nonzero idempotent commuting with every element.
pub fn central_idempotent(a: &Algebra, seed: u64, restarts: usize) -> (TriState, Option<Element>) {
    let c = commuting_subspace(a).basis;
    let k = c.ncols();
    if k == 0 {
        return (TriState::No, None);
    }
    if k == 1 {
        // x = t q is idempotent iff q q = λ q with λ ≠ 0, and then t = 1/λ
        let q = c.column(0).into_owned();
        let qq = a.mul(&q, &q);
        let lambda = qq.dot(&q);
        let off = (&qq - &q * lambda).norm();
        if off < 1e-8 * linalg::scale(qq.norm()) && lambda.abs() > 1e-8 {
            return (TriState::Yes, Some(q / lambda));
        }
        return (TriState::No, None);
    }
    let n = a.dim();
    let eye = LinearMap::identity(n, n);
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    for _ in 0..restarts {
        let mut z = gaussian(&mut rng, k);
        z /= z.norm();
        let sq = a.mul(&(&c * &z), &(&c * &z)).norm();
        if sq > 0.0 {
            z /= sq;
        }
        for _ in 0..100 {
            let x = &c * &z;
            let f = a.mul(&x, &x) - &x;
            if f.norm() < 1e-13 * linalg::scale(x.norm()) {
                break;
            }
            let jac = (a.left_mul(&x) + a.right_mul(&x) - &eye) * &c;
            let (step, _) = linalg::least_squares(&jac, &(-f));
            z += step;
            if !z.iter().all(|v| v.is_finite()) {
                break;
            }
        }
        let x = &c * &z;
        if z.iter().all(|v| v.is_finite()) && x.norm() > 1e-6 && (a.mul(&x, &x) - &x).norm() < 1e-10 * linalg::scale(x.norm()) {
            return (TriState::Yes, Some(x));
        }
    }
    (TriState::Undetermined, None)
}

/// Isomorphism invariants of `a`; `spec` supplies the D6 data for invinv algebras.
pub fn fingerprint(a: &Algebra, seed: u64, spec: Option<&InvInvSpec>) -> Result<Fingerprint> {
    let left = one_sided_unit(a, true);
    let right = one_sided_unit(a, false);
    let has_unit = match (&left, &right) {
        (Some(l), Some(r)) => (l - r).norm() < 1e-8 * linalg::scale(l.norm()),
        _ => false,
    };
    let (central, _) = central_idempotent(a, seed, 50);
    let d6 = match spec {
        Some(s) => Some(s.decomposition()?.dims()),
        None => None,
    };
    Ok(Fingerprint {
        dim: a.dim(),
        has_left_unit: left.is_some(),
        has_right_unit: right.is_some(),
        has_unit,
        has_central_idempotent: central,
        nuclei_dims: nuclei(a).dims(),
        tder_dim: tder(a).dim,
        d6_dims: d6,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hurwitz::{hurwitz, invinv_algebra, InvInvLabel};

    #[test]
    fn tder_real_line() {
        let r = hurwitz(1).unwrap();
        let t = tder(&r);
        assert_eq!(t.dim, 2);
        for d in &t.triples {
            assert!(tder_residual(&r, d) < 1e-12);
        }
    }

    #[test]
    fn nuclei_of_associative_and_octonions() {
        assert_eq!(nuclei(&hurwitz(4).unwrap()).dims(), (4, 4, 4));
        let o = nuclei(&hurwitz(8).unwrap());
        assert_eq!(o.dims(), (1, 1, 1));
        assert!(o.min_gap() > 1e6);
    }

    #[test]
    fn tder_kernels_match_nuclei_for_unital() {
        let h = hurwitz(4).unwrap();
        let t = tder(&h);
        let n = nuclei(&h);
        assert_eq!(t.kernels[1], n.right.dim());
        assert_eq!(t.kernels[2], n.left.dim());
        assert_eq!(t.kernels[0], n.middle.dim());
    }

    #[test]
    fn octonion_inverse_is_inversion() {
        let o = hurwitz(8).unwrap();
        let r = left_inversion(&o, 10, 5).unwrap();
        assert!(r.has_left_inversion);
        assert!(r.involutive);
        for (a, b) in &r.inversion_samples {
            let a = Element::from_column_slice(a);
            let inv = o.inverse(&a).unwrap();
            assert!((Element::from_column_slice(b) - inv).norm() < 1e-9);
        }
    }

    #[test]
    fn pds_factor_breaks_inversion() {
        let h = hurwitz(4).unwrap();
        let delta = LinearMap::from_diagonal(&Element::from_column_slice(&[1.0, 2.0, 1.0, 0.5]));
        let iso = h.isotope(&LinearMap::identity(4, 4), &delta).unwrap();
        assert!(!left_inversion(&iso, 5, 1).unwrap().has_left_inversion);
    }

    #[test]
    fn criterion_simple_cases() {
        let h = hurwitz(4).unwrap();
        let eye = LinearMap::identity(4, 4);
        let r = criterion_check(&eye, &eye, 0).unwrap();
        assert!(r.holds && r.direct && r.agrees);
        let a = Element::from_column_slice(&r.a.unwrap());
        assert!((a - h.basis(0)).norm() < 1e-14);

        let one_i = Element::from_column_slice(&[1.0, 1.0, 0.0, 0.0]);
        let beta = h.left_mul(&one_i) * h.right_mul(&h.basis(2));
        let r = criterion_check(&eye, &beta, 0).unwrap();
        assert!(r.holds && r.agrees, "{r:?}");
        let a = Element::from_column_slice(&r.a.unwrap());
        let u = Element::from_column_slice(&r.u.unwrap());
        assert!((h.left_mul(&a) * h.right_mul(&u) - &beta).norm() < 1e-10);

        let delta = LinearMap::from_diagonal(&Element::from_column_slice(&[1.0, 2.0, 1.0, 0.5]));
        let r = criterion_check(&eye, &(&beta * delta), 0).unwrap();
        assert!(!r.holds && !r.direct && r.agrees);

        // u = 1 + i has u² = 2i ∉ ℝ1
        let beta = h.right_mul(&one_i);
        let r = criterion_check(&eye, &beta, 0).unwrap();
        assert!(!r.holds && r.agrees);
    }

    #[test]
    fn morphisms() {
        let c = hurwitz(2).unwrap();
        assert_eq!(morphism_residual(&c, &c, &LinearMap::identity(2, 2)).unwrap(), 0.0);
        assert_eq!(morphism_residual(&c, &c, &c.conjugation()).unwrap(), 0.0);
        let o = hurwitz(8).unwrap();
        assert!(morphism_residual(&o, &o, &(LinearMap::identity(8, 8) * 2.0)).unwrap() > 1.0);
    }

    #[test]
    fn d6_dims_of_named_pairs() {
        let eye = LinearMap::identity(8, 8);
        assert_eq!(d6_dims(&eye, &eye).unwrap(), (8, 0, 0));
        let (_, spec) = invinv_algebra("O-222").unwrap();
        assert_eq!(d6_dims(&spec.sigma, &spec.tau).unwrap(), (2, 2, 4));
        let (_, spec) = invinv_algebra("O-113").unwrap();
        assert_eq!(d6_dims(&spec.sigma, &spec.tau).unwrap(), (1, 1, 6));
    }

    #[test]
    fn fingerprint_of_quaternions() {
        let f = fingerprint(&hurwitz(4).unwrap(), 0, None).unwrap();
        assert!(f.has_unit && f.has_left_unit && f.has_right_unit);
        assert_eq!(f.nuclei_dims, (4, 4, 4));
        assert_eq!(f.has_central_idempotent, TriState::Yes);
    }

    #[test]
    fn central_idempotent_without_unit() {
        let (a, spec) = invinv_algebra("O-44").unwrap();
        let f = fingerprint(&a, 0, Some(&spec)).unwrap();
        assert!(!f.has_unit);
        assert_eq!(f.has_central_idempotent, TriState::Yes);
        let (a, spec) = invinv_algebra("H-22").unwrap();
        let f = fingerprint(&a, 0, Some(&spec)).unwrap();
        assert!(!f.has_unit);
        assert_eq!(f.has_central_idempotent, TriState::Yes);
    }

    #[test]
    fn invinv_fingerprints_are_distinct() {
        let prints: Vec<_> = InvInvLabel::ALL
            .iter()
            .map(|l| {
                let (a, spec) = invinv_algebra(l.as_str()).unwrap();
                fingerprint(&a, 0, Some(&spec)).unwrap()
            })
            .collect();
        for i in 0..prints.len() {
            for j in i + 1..prints.len() {
                assert_ne!(prints[i], prints[j], "{} vs {}", InvInvLabel::ALL[i], InvInvLabel::ALL[j]);
            }
        }
    }
}
