//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.
//!
//! Tolerances are fixed here and printed with each line.

use std::process::ExitCode;
use std::time::Instant;

use nalgebra::{Matrix3, Vector3};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rand_distr::{Distribution, StandardNormal};

use divalg::algebra::constants_distance;
use divalg::hurwitz::{hurwitz, invinv_algebra, vector_product_algebra, InvInvLabel, InvInvSpec};
use divalg::identity::{
    catalog, catalog_list, check_exact_multilinear, check_sampled, generate_pn_identity, parse_identity, Verdict,
};
use divalg::normal_form::{membership, reduce, ClassDatum, Family};
use divalg::structure::{criterion_check, fingerprint, left_inversion, nuclei, tder};
use divalg::{Algebra, Element, LinearMap};

/// Dimension of `Tder(ℍ)` from the exact rational oracle in `tests/oracles.rs`.
const TDER_H_DIM: usize = 11;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn gauss(rng: &mut ChaCha20Rng, n: usize) -> Element {
    Element::from_fn(n, |_, _| StandardNormal.sample(rng))
}

fn gauss_map(rng: &mut ChaCha20Rng, n: usize) -> LinearMap {
    LinearMap::from_fn(n, n, |_, _| StandardNormal.sample(rng))
}

fn hurwitz_integrity() -> Outcome {
    let mut rng = ChaCha20Rng::seed_from_u64(1);
    let mut worst_norm: f64 = 0.0;
    let mut worst_quad: f64 = 0.0;
    for n in [1, 2, 4, 8] {
        let h = hurwitz(n).unwrap();
        for _ in 0..10_000 {
            let (x, y) = (gauss(&mut rng, n), gauss(&mut rng, n));
            let lhs = h.norm_form(&h.mul(&x, &y));
            let rhs = h.norm_form(&x) * h.norm_form(&y);
            worst_norm = worst_norm.max((lhs - rhs).abs() / rhs.max(1e-300));
            worst_quad = worst_quad.max(h.quadratic_residual(&x) / h.norm_form(&x).max(1.0));
        }
    }
    let pass = worst_norm < 1e-9 && worst_quad < 1e-9;
    outcome(pass, format!("R,C,H,O x 1e4: norm {worst_norm:.2e}, quadratic {worst_quad:.2e} (tol 1e-9)"))
}

fn moufang_bol() -> Outcome {
    let o = hurwitz(8).unwrap();
    let mut worst: f64 = 0.0;
    let mut all = true;
    for e in catalog_list("moufang-bol").unwrap() {
        let r = check_sampled(&o, &e.identity(), 1000, 2).unwrap();
        worst = worst.max(r.max_residual);
        all &= r.verdict == Verdict::Holds && r.max_residual < 1e-8;
    }
    let assoc = check_exact_multilinear(&o, &parse_identity("(xy)z = x(yz)").unwrap()).unwrap();
    let basis_witness = assoc.witness.as_ref().is_some_and(|w| {
        w.assignment.iter().all(|(_, v)| v.iter().filter(|&&c| c == 1.0).count() == 1 && v.iter().filter(|&&c| c == 0.0).count() == 7)
    });
    let witness = assoc.witness.as_ref().map(|w| {
        w.assignment.iter().map(|(name, v)| format!("{name}=e{}", v.iter().position(|&c| c == 1.0).unwrap_or(99))).collect::<Vec<_>>().join(",")
    });
    let pass = all && assoc.verdict == Verdict::Fails && basis_witness;
    outcome(pass, format!("5 identities on O max {worst:.2e} (tol 1e-8); associativity fails at {}", witness.unwrap_or_default()))
}

fn ternary_derivations() -> Outcome {
    let o = tder(&hurwitz(8).unwrap());
    let r = tder(&hurwitz(1).unwrap());
    let h = tder(&hurwitz(4).unwrap());
    let pass = o.dim == 30 && o.gap > 1e6 && r.dim == 2 && h.dim == TDER_H_DIM;
    outcome(pass, format!("O {} (gap {:.1e}), R {}, H {} (oracle {TDER_H_DIM})", o.dim, o.gap, r.dim, h.dim))
}

fn nuclei_dims() -> Outcome {
    let o = nuclei(&hurwitz(8).unwrap());
    let h = nuclei(&hurwitz(4).unwrap());
    let pass = o.dims() == (1, 1, 1) && h.dims() == (4, 4, 4) && o.min_gap() > 1e6 && h.min_gap() > 1e6;
    outcome(pass, format!("O {:?}, H {:?}, min gap {:.1e}", o.dims(), h.dims(), o.min_gap().min(h.min_gap())))
}

fn invinv_suite() -> Outcome {
    let identity = catalog("involutive-inversion:inversion").unwrap();
    let mut relations: f64 = 0.0;
    let mut worst: f64 = 0.0;
    let mut holds = true;
    let mut prints = Vec::new();
    let mut d6 = Vec::new();
    for label in InvInvLabel::ALL {
        let (a, spec) = invinv_algebra(label.as_str()).unwrap();
        relations = relations.max(spec.relation_residual());
        let r = check_sampled(&a, &identity, 1000, 5).unwrap();
        worst = worst.max(r.max_residual);
        holds &= r.verdict == Verdict::Holds && r.max_residual < 1e-8;
        let fp = fingerprint(&a, 5, Some(&spec)).unwrap();
        if label.base_dim() == 8 {
            d6.push(fp.d6_dims.unwrap());
        }
        prints.push(fp);
    }
    let distinct = (0..prints.len()).all(|i| (i + 1..prints.len()).all(|j| prints[i] != prints[j]));
    let d6_ok = d6 == [(8, 0, 0), (4, 4, 0), (2, 2, 4), (1, 1, 6)];
    let pass = relations < 1e-10 && holds && distinct && d6_ok;
    outcome(pass, format!("relations {relations:.1e}, identity max {worst:.2e}, fingerprints distinct {distinct}, O d6 {d6:?}"))
}

fn random_rotation4(rng: &mut ChaCha20Rng) -> (Element, Element) {
    let a = gauss(rng, 4);
    let a = &a / a.norm();
    let u = if rng.random_bool(0.5) {
        Element::from_column_slice(&[1.0, 0.0, 0.0, 0.0])
    } else {
        let mut v = gauss(rng, 4);
        v[0] = 0.0;
        &v / v.norm()
    };
    (a, u)
}

fn criterion_both_directions() -> Outcome {
    let h = hurwitz(4).unwrap();
    let mut rng = ChaCha20Rng::seed_from_u64(6);
    let (mut yes, mut no, mut agree) = (0, 0, 0);
    for k in 0..200 {
        let alpha = gauss_map(&mut rng, 4);
        let (a, u) = random_rotation4(&mut rng);
        let scale: f64 = rng.random_range(0.5..2.0);
        let mut beta = h.left_mul(&a) * h.right_mul(&u) * scale;
        if k >= 100 {
            // non-scalar positive factor
            let m = gauss_map(&mut rng, 4);
            let p = &m * m.transpose() + LinearMap::identity(4, 4);
            beta *= p;
        }
        let r = criterion_check(&alpha, &beta, k as u64).unwrap();
        if k < 100 && r.direct {
            yes += 1;
        }
        if k >= 100 && !r.direct {
            no += 1;
        }
        if r.agrees && r.holds == (k < 100) {
            agree += 1;
        }
    }
    outcome(yes == 100 && no == 100 && agree == 200, format!("inversion {yes}/100, no inversion {no}/100, criterion agrees {agree}/200"))
}

fn balanced_example() -> Outcome {
    let id = parse_identity("((ab)c)d = c((ba)d)").unwrap();
    let c = hurwitz(2).unwrap();
    let h = hurwitz(4).unwrap();
    // σ₀ = σ'₀κ with σ'₀ = diag(1,−1,−1,1): reflection in span{1, i, j}
    let sigma0 = LinearMap::from_diagonal(&Element::from_column_slice(&[1.0, 1.0, 1.0, -1.0]));
    let listed: Vec<(&str, Algebra)> = vec![
        ("R", hurwitz(1).unwrap().into_algebra()),
        ("C", c.algebra().clone()),
        ("C_{k,I}", c.isotope(&c.conjugation(), &LinearMap::identity(2, 2)).unwrap()),
        ("H_{k,I}", h.isotope(&h.conjugation(), &LinearMap::identity(4, 4)).unwrap()),
        ("H_{s0,I}", h.isotope(&sigma0, &LinearMap::identity(4, 4)).unwrap()),
    ];
    let mut worst: f64 = 0.0;
    let mut holds = true;
    for (_, a) in &listed {
        let r = check_exact_multilinear(a, &id).unwrap();
        worst = worst.max(r.max_residual);
        holds &= r.max_residual < 1e-10;
    }
    let o = check_exact_multilinear(&hurwitz(8).unwrap(), &id).unwrap();
    let plain_h = check_exact_multilinear(h.algebra(), &id).unwrap();
    let pass = holds && o.verdict == Verdict::Fails;
    outcome(
        pass,
        format!("five classes max {worst:.1e} (tol 1e-10); O {:?}; info: plain H {:?}, so the listed H is H_{{k,I}}", o.verdict, plain_h.verdict),
    )
}

fn pn_identities() -> Outcome {
    let ids: Vec<_> = (2..=4).map(|n| generate_pn_identity(n).unwrap()).collect();
    let mut even_pass = Vec::new();
    let mut even_fail = Vec::new();
    let mut odd_ok = true;
    for label in InvInvLabel::ALL {
        let (a, spec) = invinv_algebra(label.as_str()).unwrap();
        let v2 = check_sampled(&a, &ids[0], 1000, 8).unwrap();
        let v4 = check_sampled(&a, &ids[2], 1000, 8).unwrap();
        if v2.verdict == Verdict::Holds && v4.verdict == Verdict::Holds && v2.max_residual.max(v4.max_residual) < 1e-8 {
            even_pass.push(label.as_str());
        } else {
            even_fail.push(label.as_str());
        }
        if !sigma_equals_tau(&spec) {
            let v3 = check_sampled(&a, &ids[1], 1000, 8).unwrap();
            odd_ok &= v3.verdict == Verdict::Fails && v3.witness.is_some();
        }
    }
    let pass = even_fail.is_empty() && odd_ok;
    outcome(
        pass,
        format!(
            "n=2,4 hold on {}/10 (fail: {}); sigma!=tau classes fail n=3 with witness: {odd_ok}; octonion-based classes are not isotopes of an associative algebra",
            even_pass.len(),
            if even_fail.is_empty() { "none".to_string() } else { even_fail.join(" ") }
        ),
    )
}

fn sigma_equals_tau(spec: &InvInvSpec) -> bool {
    (&spec.sigma - &spec.tau).norm() < 1e-12
}

fn random_rotation3(rng: &mut ChaCha20Rng) -> Matrix3<f64> {
    let q = Matrix3::from_fn(|_, _| StandardNormal.sample(rng)).qr().q();
    if q.determinant() < 0.0 {
        -q
    } else {
        q
    }
}

fn random_datum(family: Family, rng: &mut ChaCha20Rng) -> ClassDatum {
    let base: f64 = rng.random_range(0.5..2.0);
    let gap = |rng: &mut ChaCha20Rng| rng.random_range(0.01..2.0);
    let d = match rng.random_range(1..=4) {
        1 => [base; 3],
        2 => [base, base, base + gap(rng)],
        3 => {
            let top = base + gap(rng);
            [base, top, top]
        }
        _ => {
            let mid = base + gap(rng);
            [base, mid, mid + gap(rng)]
        }
    };
    let g = random_rotation3(rng);
    let b = g * Matrix3::from_diagonal(&Vector3::from(d)) * g.transpose();
    let b = (b + b.transpose()) * 0.5;
    let v = |rng: &mut ChaCha20Rng| [0, 1, 2].map(|_| StandardNormal.sample(rng));
    let u = family.has_u().then(|| v(rng));
    let quad = [0, 1, 2].map(|i| [0, 1, 2].map(|j| b[(i, j)]));
    ClassDatum::new(family, u, v(rng), v(rng), quad, rng.random()).unwrap()
}

fn normal_forms() -> Outcome {
    let mut rng = ChaCha20Rng::seed_from_u64(9);
    let (mut idem, mut inv, mut member, mut total) = (0, 0, 0, 0);
    let mut worst: f64 = 0.0;
    for family in Family::ALL {
        for _ in 0..1000 {
            total += 1;
            let x = random_datum(family, &mut rng);
            let r = reduce(&x).unwrap();
            if membership(&r) {
                member += 1;
            }
            if reduce(&r.canonical).unwrap().canonical.distance(&r.canonical) < 1e-9 {
                idem += 1;
            }
            let moved = reduce(&x.act(&random_rotation3(&mut rng))).unwrap();
            let dist = moved.canonical.distance(&r.canonical);
            worst = worst.max(dist);
            if dist < 1e-7 && moved.stratum == r.stratum {
                inv += 1;
            }
        }
    }
    outcome(
        idem == total && inv == total && member == total,
        format!("{total} inputs: idempotent {idem}, invariant {inv} (max {worst:.1e}, tol 1e-7), member {member}"),
    )
}

fn vector_product() -> Outcome {
    let o = hurwitz(8).unwrap();
    let d = constants_distance(&vector_product_algebra(&o), &o);
    outcome(d < 1e-12, format!("max constant difference {d:.1e} (tol 1e-12)"))
}

/// `B_{α,σ}` with `α(1) = 1` random and `σ` an involutive automorphism.
fn real_unit_isotope(label: &str, rng: &mut ChaCha20Rng) -> Algebra {
    let spec = InvInvSpec::new(label.parse().unwrap());
    let n = spec.base;
    let mut alpha = LinearMap::identity(n, n) + gauss_map(rng, n) * 0.3;
    alpha.set_column(0, &hurwitz(n).unwrap().unit());
    hurwitz(n).unwrap().isotope(&alpha, &spec.sigma).unwrap()
}

fn hua() -> Outcome {
    let mut rng = ChaCha20Rng::seed_from_u64(11);
    let algebras: Vec<(&str, Algebra)> = vec![
        ("H", hurwitz(4).unwrap().into_algebra()),
        ("O", hurwitz(8).unwrap().into_algebra()),
        ("H_{a,s}", real_unit_isotope("H-22", &mut rng)),
        ("O_{a,s}", real_unit_isotope("O-44", &mut rng)),
    ];
    let mut parts = Vec::new();
    let mut pass = true;
    for (name, a) in &algebras {
        let mut worst: f64 = 0.0;
        for _ in 0..1000 {
            let (x, y) = (gauss(&mut rng, a.dim()), gauss(&mut rng, a.dim()));
            worst = worst.max(a.hua_check(&x, &y).unwrap());
        }
        let unit_free = name.contains('_') && !fingerprint(a, 0, None).unwrap().has_unit;
        let inversion = left_inversion(a, 8, 0).unwrap().has_left_inversion;
        pass &= worst < 1e-7 && inversion && (unit_free || !name.contains('_'));
        parts.push(format!("{name} {worst:.1e}"));
    }
    outcome(pass, format!("{} (tol 1e-7)", parts.join(", ")))
}

fn bol_moufang_catalog() -> Outcome {
    let h = hurwitz(4).unwrap();
    let o = hurwitz(8).unwrap();
    let mut on_h = 0;
    for e in catalog_list("bol-moufang").unwrap() {
        if check_sampled(&h, &e.identity(), 500, 12).unwrap().verdict == Verdict::Holds {
            on_h += 1;
        }
    }
    let lc3 = check_sampled(&o, &catalog("bol-moufang:LC3").unwrap(), 500, 12).unwrap().verdict;
    let mnq = check_sampled(&o, &catalog("bol-moufang:MNQ").unwrap(), 500, 12).unwrap().verdict;
    let pass = on_h == 26 && lc3 == Verdict::Fails && mnq == Verdict::Fails;
    outcome(pass, format!("{on_h}/26 hold on H; on O LC3 {lc3:?}, MNQ {mnq:?}"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 12] = [
        ("Hurwitz integrity", hurwitz_integrity),
        ("Moufang/Bol on O", moufang_bol),
        ("ternary derivations", ternary_derivations),
        ("nuclei", nuclei_dims),
        ("involutive-inversion suite", invinv_suite),
        ("factorization criterion on H", criterion_both_directions),
        ("balanced identity ((ab)c)d = c((ba)d)", balanced_example),
        ("p_n identities on the ten algebras", pn_identities),
        ("normal forms", normal_forms),
        ("vector product", vector_product),
        ("Hua identity", hua),
        ("Bol-Moufang catalog", bol_moufang_catalog),
    ];
    let mut failed = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = f();
        if !o.pass {
            failed += 1;
        }
        println!(
            "[{}] {:>2}. {name}: {} ({:.1}s)",
            if o.pass { "PASS" } else { "FAIL" },
            k + 1,
            o.detail,
            start.elapsed().as_secs_f64()
        );
    }
    println!("acceptance: {}/{} criteria pass", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
