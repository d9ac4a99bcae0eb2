//! Finite-dimensional real algebras given by structure constants.
//!
//! The product of basis vectors is `e_i e_j = Σ_k c[i][j][k] e_k`. Linear maps
//! are square matrices whose column `j` is the image of `e_j`.

use nalgebra::{DMatrix, DVector};
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::linalg;

pub type Element = DVector<f64>;
pub type LinearMap = DMatrix<f64>;

pub const DEFAULT_TOL: f64 = 1e-9;

/// Newton iterations per start in [`Algebra::find_idempotent`].
pub const NEWTON_ITERATIONS: usize = 100;
pub const DEFAULT_RESTARTS: usize = 50;

#[derive(Clone, Debug, PartialEq)]
pub struct Algebra {
    dim: usize,
    constants: Vec<f64>,
    labels: Option<Vec<String>>,
    tol: f64,
}

impl Algebra {
    /// Build an algebra from a flat constant array indexed `(i*dim + j)*dim + k`.
    pub fn new(dim: usize, constants: Vec<f64>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidDimension(0));
        }
        if constants.len() != dim * dim * dim {
            return Err(Error::DimensionMismatch { expected: dim * dim * dim, found: constants.len() });
        }
        if constants.iter().any(|c| !c.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Self { dim, constants, labels: None, tol: DEFAULT_TOL })
    }

    /// Build from `constants[i][j][k]`.
    pub fn from_nested(constants: &[Vec<Vec<f64>>]) -> Result<Self> {
        let dim = constants.len();
        let mut flat = Vec::with_capacity(dim * dim * dim);
        for row in constants {
            if row.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: row.len() });
            }
            for col in row {
                if col.len() != dim {
                    return Err(Error::DimensionMismatch { expected: dim, found: col.len() });
                }
                flat.extend_from_slice(col);
            }
        }
        Self::new(dim, flat)
    }

    /// Build from a bilinear product on coordinate vectors.
    pub fn from_product<F>(dim: usize, product: F) -> Result<Self>
    where
        F: Fn(&Element, &Element) -> Element,
    {
        let mut flat = vec![0.0; dim * dim * dim];
        for i in 0..dim {
            let ei = Element::from_fn(dim, |r, _| if r == i { 1.0 } else { 0.0 });
            for j in 0..dim {
                let ej = Element::from_fn(dim, |r, _| if r == j { 1.0 } else { 0.0 });
                let p = product(&ei, &ej);
                if p.len() != dim {
                    return Err(Error::DimensionMismatch { expected: dim, found: p.len() });
                }
                flat[(i * dim + j) * dim..(i * dim + j + 1) * dim].copy_from_slice(p.as_slice());
            }
        }
        Self::new(dim, flat)
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: labels.len() });
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn with_tol(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn constants(&self) -> &[f64] {
        &self.constants
    }

    #[inline]
    pub fn constant(&self, i: usize, j: usize, k: usize) -> f64 {
        self.constants[(i * self.dim + j) * self.dim + k]
    }

    /// `constants[i][j][k]` as nested vectors.
    pub fn nested_constants(&self) -> Vec<Vec<Vec<f64>>> {
        let n = self.dim;
        (0..n)
            .map(|i| (0..n).map(|j| (0..n).map(|k| self.constant(i, j, k)).collect()).collect())
            .collect()
    }

    /// Basis vector `e_i`.
    pub fn basis(&self, i: usize) -> Element {
        let mut e = Element::zeros(self.dim);
        e[i] = 1.0;
        e
    }

    fn check(&self, x: &Element) -> Result<()> {
        if x.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: x.len() });
        }
        Ok(())
    }

    fn check_map(&self, m: &LinearMap) -> Result<()> {
        if m.nrows() != self.dim || m.ncols() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: m.nrows().max(m.ncols()) });
        }
        Ok(())
    }

    /// `xy`, without dimension checks.
    pub fn mul(&self, x: &Element, y: &Element) -> Element {
        let n = self.dim;
        let mut out = Element::zeros(n);
        for i in 0..n {
            let xi = x[i];
            if xi == 0.0 {
                continue;
            }
            for j in 0..n {
                let w = xi * y[j];
                if w == 0.0 {
                    continue;
                }
                let base = (i * n + j) * n;
                for k in 0..n {
                    out[k] += w * self.constants[base + k];
                }
            }
        }
        out
    }

    pub fn multiply(&self, x: &Element, y: &Element) -> Result<Element> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.mul(x, y))
    }

    /// `L_a: y ↦ ay`.
    pub fn left_mul(&self, a: &Element) -> LinearMap {
        let n = self.dim;
        let mut m = LinearMap::zeros(n, n);
        for i in 0..n {
            if a[i] == 0.0 {
                continue;
            }
            for j in 0..n {
                for k in 0..n {
                    m[(k, j)] += a[i] * self.constant(i, j, k);
                }
            }
        }
        m
    }

    /// `R_a: x ↦ xa`.
    pub fn right_mul(&self, a: &Element) -> LinearMap {
        let n = self.dim;
        let mut m = LinearMap::zeros(n, n);
        for j in 0..n {
            if a[j] == 0.0 {
                continue;
            }
            for i in 0..n {
                for k in 0..n {
                    m[(k, i)] += a[j] * self.constant(i, j, k);
                }
            }
        }
        m
    }

    /// `a\y = L_a⁻¹ y`.
    pub fn left_divide(&self, a: &Element, y: &Element) -> Result<Element> {
        self.check(a)?;
        self.check(y)?;
        if a.iter().all(|&v| v == 0.0) {
            return Err(Error::ZeroDivisor);
        }
        linalg::solve(&self.left_mul(a), y, self.tol, "L_a")
    }

    /// `x/b = R_b⁻¹ x`.
    pub fn right_divide(&self, x: &Element, b: &Element) -> Result<Element> {
        self.check(x)?;
        self.check(b)?;
        if b.iter().all(|&v| v == 0.0) {
            return Err(Error::ZeroDivisor);
        }
        linalg::solve(&self.right_mul(b), x, self.tol, "R_b")
    }

    /// The isotope `x∘y = α(x)β(y)`.
    pub fn isotope(&self, alpha: &LinearMap, beta: &LinearMap) -> Result<Algebra> {
        self.check_map(alpha)?;
        self.check_map(beta)?;
        for (m, what) in [(alpha, "alpha"), (beta, "beta")] {
            let ratio = linalg::inverse_condition(m);
            if ratio < self.tol {
                return Err(Error::Singular { what, ratio });
            }
        }
        let n = self.dim;
        let mut flat = vec![0.0; n * n * n];
        for i in 0..n {
            let ai = alpha.column(i).into_owned();
            for j in 0..n {
                let bj = beta.column(j).into_owned();
                let p = self.mul(&ai, &bj);
                flat[(i * n + j) * n..(i * n + j + 1) * n].copy_from_slice(p.as_slice());
            }
        }
        Ok(Algebra { dim: n, constants: flat, labels: self.labels.clone(), tol: self.tol })
    }

    /// `A^op` with `x∘y = yx`.
    pub fn opposite(&self) -> Algebra {
        let n = self.dim;
        let mut flat = vec![0.0; n * n * n];
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    flat[(i * n + j) * n + k] = self.constant(j, i, k);
                }
            }
        }
        Algebra { dim: n, constants: flat, labels: self.labels.clone(), tol: self.tol }
    }

    /// Multiply every structure constant by `factor`.
    pub fn scaled(&self, factor: f64) -> Algebra {
        let mut out = self.clone();
        out.constants.iter_mut().for_each(|c| *c *= factor);
        out
    }

    /// The algebra on the same space for which `phi` is an isomorphism from `self`:
    /// `x ∘ y = φ(φ⁻¹x · φ⁻¹y)`.
    pub fn transport(&self, phi: &LinearMap) -> Result<Algebra> {
        self.check_map(phi)?;
        let inv = linalg::inverse(phi, self.tol, "phi")?;
        let n = self.dim;
        let mut flat = vec![0.0; n * n * n];
        for i in 0..n {
            let xi = inv.column(i).into_owned();
            for j in 0..n {
                let yj = inv.column(j).into_owned();
                let p = phi * self.mul(&xi, &yj);
                flat[(i * n + j) * n..(i * n + j + 1) * n].copy_from_slice(p.as_slice());
            }
        }
        Ok(Algebra { dim: n, constants: flat, labels: None, tol: self.tol })
    }

    /// Nonzero idempotent by Newton's method on `F(x) = xx − x`.
    ///
    /// The first start is `e_0`; further starts are seeded uniform points on the
    /// unit sphere.
    pub fn find_idempotent(&self, seed: u64, max_restarts: usize) -> Result<Element> {
        let n = self.dim;
        let mut rng = ChaCha20Rng::seed_from_u64(seed);
        let mut best = f64::INFINITY;
        for start in 0..=max_restarts {
            let x0 = if start == 0 {
                self.basis(0)
            } else {
                let mut v = Element::from_fn(n, |_, _| StandardNormal.sample(&mut rng));
                let norm = v.norm();
                if norm == 0.0 {
                    continue;
                }
                v /= norm;
                // rescaled so that ‖xx‖ = ‖x‖
                let sq = self.mul(&v, &v).norm();
                if sq > 0.0 {
                    v /= sq;
                }
                v
            };
            let (x, res) = self.newton_idempotent(x0);
            if x.norm() > self.tol.sqrt() && res < self.tol {
                return Ok(x);
            }
            best = best.min(res);
        }
        Err(Error::NoConvergence { restarts: max_restarts, best_residual: best })
    }

    fn newton_idempotent(&self, mut x: Element) -> (Element, f64) {
        let n = self.dim;
        let eye = LinearMap::identity(n, n);
        let mut res = (self.mul(&x, &x) - &x).norm();
        for _ in 0..NEWTON_ITERATIONS {
            if res < 1e-14 * linalg::scale(x.norm()) {
                break;
            }
            let f = self.mul(&x, &x) - &x;
            let jac = self.left_mul(&x) + self.right_mul(&x) - &eye;
            let step = match jac.clone().col_piv_qr().solve(&(-&f)) {
                Some(s) if s.iter().all(|v| v.is_finite()) => s,
                _ => linalg::least_squares(&jac, &(-&f)).0,
            };
            x += step;
            if !x.iter().all(|v| v.is_finite()) {
                return (x, f64::INFINITY);
            }
            res = (self.mul(&x, &x) - &x).norm();
        }
        (x, res)
    }

    /// `x*y = (x/e)(e\y)`, the isotope by `R_e⁻¹` and `L_e⁻¹`.
    pub fn star_product(&self, e: &Element) -> Result<Algebra> {
        self.check(e)?;
        if e.norm() <= self.tol {
            return Err(Error::ZeroDivisor);
        }
        let res = (self.mul(e, e) - e).norm();
        if res > self.tol * linalg::scale(e.norm()) {
            return Err(Error::NotIdempotent(res));
        }
        let r_inv = linalg::inverse(&self.right_mul(e), self.tol, "R_e")?;
        let l_inv = linalg::inverse(&self.left_mul(e), self.tol, "L_e")?;
        self.isotope(&r_inv, &l_inv)
    }

    /// Frobenius residual of `L_aL_bL_a = L_a + ((L_a − L_b⁻¹)⁻¹ − L_a⁻¹)⁻¹`.
    ///
    /// Returns 0 when `L_b = L_a⁻¹` within tolerance.
    pub fn hua_check(&self, a: &Element, b: &Element) -> Result<f64> {
        self.check(a)?;
        self.check(b)?;
        if a.iter().all(|&v| v == 0.0) || b.iter().all(|&v| v == 0.0) {
            return Err(Error::ZeroDivisor);
        }
        let n = self.dim;
        let la = self.left_mul(a);
        let lb = self.left_mul(b);
        if (&la * &lb - LinearMap::identity(n, n)).norm() < self.tol {
            return Ok(0.0);
        }
        let la_inv = linalg::inverse(&la, self.tol, "L_a")?;
        let lb_inv = linalg::inverse(&lb, self.tol, "L_b")?;
        let inner = linalg::inverse(&(&la - lb_inv), self.tol, "L_a - L_b^-1")?;
        let outer = linalg::inverse(&(inner - la_inv), self.tol, "(L_a - L_b^-1)^-1 - L_a^-1")?;
        let lhs = &la * &lb * &la;
        let rhs = la + outer;
        Ok((lhs - rhs).norm())
    }
}

/// Structure-constant comparison at absolute tolerance `tol`.
pub fn constants_close(a: &Algebra, b: &Algebra, tol: f64) -> bool {
    a.dim == b.dim && a.constants.iter().zip(&b.constants).all(|(x, y)| (x - y).abs() <= tol)
}

/// Largest absolute difference between structure constants.
pub fn constants_distance(a: &Algebra, b: &Algebra) -> f64 {
    assert_eq!(a.dim, b.dim);
    a.constants.iter().zip(&b.constants).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}
