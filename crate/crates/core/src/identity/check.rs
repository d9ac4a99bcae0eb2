use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::Serialize;

use super::{is_balanced, Compiled, Identity};
use crate::algebra::{Algebra, Element};
use crate::error::{Error, Result};

/// Sampled residuals below this hold.
pub const HOLD_THRESHOLD: f64 = 1e-8;
/// Sampled residuals above this fail.
pub const FAIL_THRESHOLD: f64 = 1e-4;
/// Draws whose division operators exceed this condition number are redrawn.
pub const MAX_CONDITION: f64 = 1e8;
const MAX_REDRAWS: usize = 32;
const MAX_EXACT_TUPLES: u128 = 50_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckMode {
    ExactMultilinear,
    Sampled,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Holds,
    Fails,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Witness {
    /// Variable name and assigned coordinates.
    pub assignment: Vec<(String, Vec<f64>)>,
    pub lhs: Vec<f64>,
    pub rhs: Vec<f64>,
    pub residual: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckReport {
    pub mode: CheckMode,
    pub trials: usize,
    pub rejected: usize,
    pub max_residual: f64,
    pub verdict: Verdict,
    pub witness: Option<Witness>,
}

struct Outcome {
    index: usize,
    residual: f64,
    vals: Vec<Element>,
    lhs: Element,
    rhs: Element,
}

fn better(a: Option<Outcome>, b: Option<Outcome>) -> Option<Outcome> {
    match (a, b) {
        (None, x) | (x, None) => x,
        (Some(a), Some(b)) => {
            if b.residual > a.residual || (b.residual == a.residual && b.index < a.index) {
                Some(b)
            } else {
                Some(a)
            }
        }
    }
}

fn witness(id: &Identity, o: &Outcome) -> Witness {
    Witness {
        assignment: id.variables.iter().cloned().zip(o.vals.iter().map(|v| v.as_slice().to_vec())).collect(),
        lhs: o.lhs.as_slice().to_vec(),
        rhs: o.rhs.as_slice().to_vec(),
        residual: o.residual,
    }
}

/// Exact check of a balanced identity on all basis assignments.
pub fn check_exact_multilinear(a: &Algebra, id: &Identity) -> Result<CheckReport> {
    if !is_balanced(id) {
        return Err(Error::NotBalanced);
    }
    let n = a.dim();
    let k = id.variables.len();
    if k > 6 && n > 8 {
        return Err(Error::Budget(format!("{k} variables on a {n}-dimensional algebra")));
    }
    let total = (n as u128).pow(k as u32);
    if total > MAX_EXACT_TUPLES {
        return Err(Error::Budget(format!("{total} basis assignments")));
    }
    let lhs = Compiled::new(&id.lhs, &id.variables)?;
    let rhs = Compiled::new(&id.rhs, &id.variables)?;
    let basis: Vec<Element> = (0..n).map(|i| a.basis(i)).collect();

    let worst = (0..total as usize)
        .into_par_iter()
        .map(|index| {
            let mut rest = index;
            let mut vals = Vec::with_capacity(k);
            for _ in 0..k {
                vals.push(basis[rest % n].clone());
                rest /= n;
            }
            vals.reverse();
            let mut cond = f64::INFINITY;
            let l = lhs.eval(a, &vals, &mut cond).expect("product-only terms cannot fail");
            let r = rhs.eval(a, &vals, &mut cond).expect("product-only terms cannot fail");
            let residual = (&l - &r).norm();
            Some(Outcome { index, residual, vals, lhs: l, rhs: r })
        })
        .reduce(|| None, better)
        .expect("at least one assignment");

    let holds = worst.residual < a.tol();
    Ok(CheckReport {
        mode: CheckMode::ExactMultilinear,
        trials: total as usize,
        rejected: 0,
        max_residual: worst.residual,
        verdict: if holds { Verdict::Holds } else { Verdict::Fails },
        witness: if holds { None } else { Some(witness(id, &worst)) },
    })
}

fn trial_rng(seed: u64, trial: usize) -> ChaCha20Rng {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    rng.set_stream(trial as u64);
    rng
}

/// Check `id` at `trials` seeded Gaussian assignments.
pub fn check_sampled(a: &Algebra, id: &Identity, trials: usize, seed: u64) -> Result<CheckReport> {
    let n = a.dim();
    let lhs = Compiled::new(&id.lhs, &id.variables)?;
    let rhs = Compiled::new(&id.rhs, &id.variables)?;
    let k = id.variables.len();

    let results: Vec<(usize, Option<Outcome>)> = (0..trials)
        .into_par_iter()
        .map(|index| {
            let mut rng = trial_rng(seed, index);
            let mut rejected = 0;
            for _ in 0..MAX_REDRAWS {
                let vals: Vec<Element> =
                    (0..k).map(|_| Element::from_fn(n, |_, _| StandardNormal.sample(&mut rng))).collect();
                let mut cond = f64::INFINITY;
                let sides = lhs
                    .eval(a, &vals, &mut cond)
                    .and_then(|l| rhs.eval(a, &vals, &mut cond).map(|r| (l, r)));
                match sides {
                    Ok((l, r)) if cond * MAX_CONDITION >= 1.0 => {
                        let denom = l.norm().max(r.norm()).max(1.0);
                        let residual = (&l - &r).norm() / denom;
                        return (rejected, Some(Outcome { index, residual, vals, lhs: l, rhs: r }));
                    }
                    Ok(_) | Err(Error::Singular { .. }) | Err(Error::ZeroDivisor) => rejected += 1,
                    Err(_) => rejected += 1,
                }
            }
            (rejected, None)
        })
        .collect();

    let rejected: usize = results.iter().map(|(r, _)| r).sum();
    let accepted = results.iter().filter(|(_, o)| o.is_some()).count();
    if accepted == 0 {
        return Err(Error::AllDrawsRejected(rejected));
    }
    let worst = results
        .into_iter()
        .map(|(_, o)| o)
        .fold(None, better)
        .expect("at least one accepted draw");

    let verdict = if worst.residual > FAIL_THRESHOLD {
        Verdict::Fails
    } else if worst.residual < HOLD_THRESHOLD {
        Verdict::Holds
    } else {
        Verdict::Inconclusive
    };
    Ok(CheckReport {
        mode: CheckMode::Sampled,
        trials: accepted,
        rejected,
        max_residual: worst.residual,
        verdict,
        witness: (verdict == Verdict::Fails).then(|| witness(id, &worst)),
    })
}
