//! The property suite behind `liediam verify`: every module invariant run
//! on seeded random data, reported as a pass/fail table.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};
use std::time::Instant;

use nalgebra::DVector;
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;
use serde::Serialize;

use crate::constants::{alpha, contraction_constant, solve_beta};
use crate::lie::{
    adjoint_matrix, distance, exp_map, haar_sample, log_map, op_norm_algebra, op_norm_group,
    op_norm_group_eigenphases, path_length, random_algebra_with_norm, rng_from_seed, split_seed,
    GroupElement, GroupKind,
};
use crate::linalg::{complexify, max_abs_entry, op_norm, CMatrix};
use crate::quotient::{
    coset_distance, diagonal_quotient_estimate, diagonal_sample, diameter_lower_estimate,
    icosahedral_group, killing_comparison, projection_monotonicity_check, SubgroupSample,
};
use crate::small_subgroups::{
    commutator, commutator_sequence, construct_witness_pair, perturbation_noncommutation_check,
    random_perturbation, witness_angle, DEFAULT_HALT_TOL,
};
use crate::subspace::{
    angle_between, find_large_angle, perp, representation_defect, schur_average, trace_of_product,
    AdjointRepresentation, DefiningRepresentation, Representation, Subspace,
};
use crate::universality::{generate_words, test_universality, GateSet, UniversalityConfig, Verdict};

/// Word length used for the two-rotation universality run. Calibrated by a
/// pre-run: length 10 (118 097 words) is the first to certify at spacing
/// 0.02; length 11 leaves a wider margin.
pub const TWO_ROTATIONS_MAX_LENGTH: usize = 11;

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub module: &'static str,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub seconds: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub seed: u64,
    pub passed: usize,
    pub failed: usize,
    pub checks: Vec<CheckResult>,
}

impl SuiteReport {
    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }

    /// One line per check.
    pub fn table(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            out.push_str(&format!(
                "{:4}  {:<16} {:<34} {:>7.2}s  {}\n",
                if c.passed { "PASS" } else { "FAIL" },
                c.module,
                c.name,
                c.seconds,
                c.detail
            ));
        }
        out.push_str(&format!("{} passed, {} failed\n", self.passed, self.failed));
        out
    }
}

type Outcome = std::result::Result<String, String>;
type Check = (&'static str, &'static str, fn(u64) -> Outcome);

fn ensure(cond: bool, detail: String) -> Outcome {
    if cond {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

const CHECKS: &[Check] = &[
    ("constants", "beta reproduction", beta_reproduction),
    ("constants", "contraction constant at alpha", contraction_at_alpha),
    ("lie_core", "norm cross-validation", norm_cross_validation),
    ("lie_core", "metric axioms", metric_axioms),
    ("lie_core", "exp/log norm preservation", exp_log),
    ("lie_core", "path length bound", path_length_bound),
    ("lie_core", "central phases invisible", central_phases),
    ("subspace", "angle symmetries", angle_symmetries),
    ("subspace", "trace bound", trace_bound),
    ("subspace", "adjoint moves by at most |g|", adjoint_angle_bound),
    ("subspace", "projection contraction", projection_contraction),
    ("subspace", "representation homomorphism", representation_homomorphism),
    ("subspace", "schur average", schur),
    ("subspace", "large angle search", large_angle),
    ("small_subgroups", "commutator contraction", contraction),
    ("small_subgroups", "geometric decay", geometric_decay),
    ("small_subgroups", "witness identity", witness_identity),
    ("small_subgroups", "witness perturbations", witness_perturbations),
    ("small_subgroups", "icosahedral commutators", icosahedral_commutators),
    ("quotient", "coset right invariance", coset_invariance),
    ("quotient", "diameter monotonicity", diameter_monotonicity),
    ("quotient", "icosahedral quotient", icosahedral_quotient),
    ("quotient", "diagonal example", diagonal_example),
    ("quotient", "projection monotonicity", projection_monotonicity),
    ("quotient", "killing comparison", killing),
    ("quotient", "distance to subalgebra", subalgebra_distance),
    ("universality", "icosahedral gates", icosahedral_gates),
    ("universality", "two rotations", two_rotations),
    ("universality", "phase blindness", phase_blindness),
    ("universality", "verdict monotonicity", verdict_monotonicity),
];

/// Runs every check with data derived from `seed`.
pub fn run_suite(seed: u64) -> SuiteReport {
    let checks: Vec<CheckResult> = CHECKS
        .iter()
        .enumerate()
        .map(|(i, &(module, name, f))| {
            let start = Instant::now();
            let outcome = f(split_seed(seed, i as u64));
            let (passed, detail) = match outcome {
                Ok(d) => (true, d),
                Err(d) => (false, d),
            };
            CheckResult {
                module,
                name,
                passed,
                detail,
                seconds: start.elapsed().as_secs_f64(),
            }
        })
        .collect();
    let passed = checks.iter().filter(|c| c.passed).count();
    SuiteReport {
        seed,
        passed,
        failed: checks.len() - passed,
        checks,
    }
}

fn groups() -> [GroupKind; 3] {
    [GroupKind::su(2), GroupKind::su(3), GroupKind::so(3)]
}

/// `exp(x)` with `x` uniformly oriented and `|x|_𝔤 = u·bound`, `u ∈ [0, 1)`.
fn random_ball_element<R: Rng>(kind: &GroupKind, bound: f64, rng: &mut R) -> GroupElement {
    let r = bound * rng.random::<f64>();
    exp_map(&random_algebra_with_norm(kind, r, rng))
}

fn random_subspace<R: Rng>(n: usize, k: usize, rng: &mut R) -> Subspace {
    let m = CMatrix::from_fn(n, k, |_, _| {
        Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
    });
    Subspace::span(&m).expect("Gaussian vectors are independent")
}

fn beta_reproduction(_: u64) -> Outcome {
    let start = Instant::now();
    let sol = solve_beta(1e-10).map_err(err)?;
    let t = start.elapsed().as_secs_f64();
    let residual = crate::constants::beta_equation_residual(sol.beta).abs();
    ensure(
        (sol.beta - 0.124332).abs() < 1e-5 && residual <= 1e-9 && t < 1.0,
        format!("beta = {:.10}, residual {residual:.1e}, {t:.4}s", sol.beta),
    )
}

fn contraction_at_alpha(_: u64) -> Outcome {
    let c = contraction_constant(alpha()).map_err(err)?;
    ensure((c - 1.0).abs() < 1e-12, format!("C(alpha) = {c:.15}"))
}

fn norm_cross_validation(seed: u64) -> Outcome {
    let mut worst = 0.0f64;
    for (gi, kind) in groups().iter().enumerate() {
        for i in 0..1000 {
            let g = haar_sample(kind, split_seed(seed, (gi * 1000 + i) as u64));
            worst = worst.max((op_norm_group(&g) - op_norm_group_eigenphases(&g)).abs());
        }
    }
    ensure(worst <= 1e-8, format!("max disagreement {worst:.2e} over 3000 samples"))
}

fn metric_axioms(seed: u64) -> Outcome {
    let mut rng = rng_from_seed(seed);
    let mut tri = f64::NEG_INFINITY;
    let mut inv = 0.0f64;
    for kind in groups() {
        for _ in 0..200 {
            let [a, b, c] = [0, 1, 2].map(|_| haar_sample(&kind, rng.random()));
            let dab = distance(&a, &b).map_err(err)?;
            let dbc = distance(&b, &c).map_err(err)?;
            let dac = distance(&a, &c).map_err(err)?;
            tri = tri.max(dac - dab - dbc);
            let left = distance(&(&c * &a), &(&c * &b)).map_err(err)?;
            let right = distance(&(&a * &c), &(&b * &c)).map_err(err)?;
            inv = inv.max((left - dab).abs()).max((right - dab).abs());
        }
    }
    ensure(
        tri <= 1e-9 && inv <= 1e-9,
        format!("triangle excess {tri:.2e}, bi-invariance defect {inv:.2e}"),
    )
}

fn exp_log(seed: u64) -> Outcome {
    let mut rng = rng_from_seed(seed);
    let (mut dn, mut dl) = (0.0f64, 0.0f64);
    for kind in groups() {
        for _ in 0..500 {
            let r = (2.0 * PI / 3.0 - 0.1) * rng.random::<f64>();
            let x = random_algebra_with_norm(&kind, r, &mut rng);
            let g = exp_map(&x);
            dn = dn.max((op_norm_group(&g) - op_norm_algebra(&x)).abs());
            let y = log_map(&g).map_err(err)?;
            dl = dl.max(max_abs_entry(&(y.matrix() - x.matrix())));
        }
    }
    ensure(
        dn <= 1e-8 && dl <= 1e-8,
        format!("norm defect {dn:.2e}, log(exp x) − x {dl:.2e}"),
    )
}

fn path_length_bound(seed: u64) -> Outcome {
    let mut rng = rng_from_seed(seed);
    let mut worst = f64::NEG_INFINITY;
    for kind in groups() {
        for _ in 0..50 {
            let mut path = vec![GroupElement::identity(&kind)];
            for _ in 0..20 {
                let step = random_ball_element(&kind, 0.5, &mut rng);
                path.push(path.last().expect("non-empty") * &step);
            }
            let len = path_length(&path).map_err(err)?;
            let end = op_norm_group(path.last().expect("non-empty"));
            worst = worst.max(end - len);
        }
    }
    ensure(worst <= 1e-9, format!("max |end| − length {worst:.3}"))
}

fn central_phases(seed: u64) -> Outcome {
    let mut worst = 0.0f64;
    for (i, kind) in [GroupKind::su(2), GroupKind::su(3), GroupKind::su(4)].iter().enumerate() {
        for j in 0..50 {
            let g = haar_sample(kind, split_seed(seed, (i * 50 + j) as u64));
            let h = g.with_global_phase(0.37 * (j as f64 + 1.0));
            worst = worst.max((op_norm_group(&g) - op_norm_group(&h)).abs());
        }
    }
    ensure(worst <= 1e-10, format!("max norm change {worst:.2e}"))
}

fn angle_symmetries(seed: u64) -> Outcome {
    let mut rng = rng_from_seed(seed);
    let (mut sym, mut perp_d, mut iso) = (0.0f64, 0.0f64, 0.0f64);
    for _ in 0..200 {
        let n = rng.random_range(2..=10);
        let (k, l) = (rng.random_range(1..n), rng.random_range(1..n));
        let u = random_subspace(n, k, &mut rng);
        let w = random_subspace(n, l, &mut rng);
        let a = angle_between(&u, &w).map_err(err)?;
        sym = sym.max((a - angle_between(&w, &u).map_err(err)?).abs());
        let b = angle_between(&perp(&u).map_err(err)?, &perp(&w).map_err(err)?).map_err(err)?;
        perp_d = perp_d.max((a - b).abs());
        let q = random_subspace(n + 1, n, &mut rng).basis().rows(0, n).into_owned();
        let q = q.qr().q();
        let c = angle_between(&u.transformed(&q).map_err(err)?, &w.transformed(&q).map_err(err)?).map_err(err)?;
        iso = iso.max((a - c).abs());
    }
    ensure(
        sym == 0.0 && perp_d <= 1e-8 && iso <= 1e-9,
        format!("symmetry {sym:.1e}, perp {perp_d:.2e}, isometry {iso:.2e}"),
    )
}

fn trace_bound(seed: u64) -> Outcome {
    let mut rng = rng_from_seed(seed);
    let mut worst = f64::NEG_INFINITY;
    for _ in 0..200 {
        let n = rng.random_range(2..=10);
        let k = rng.random_range(1..n);
        let mut g = |_, _| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal));
        let b = CMatrix::from_fn(n, k, &mut g);
        let c = CMatrix::from_fn(k, n, &mut g);
        let a = &b * &c;
        let tr = trace_of_product(&b, &c).map_err(err)?;
        if (tr - a.trace()).norm() > 1e-9 * (1.0 + tr.norm()) {
            return Err("tr(BC) differs from tr(CB)".into());
        }
        let bound = k as f64 * op_norm(&a).map_err(err)?;
        worst = worst.max(a.trace().norm() - bound);
    }
    ensure(worst <= 1e-9, format!("max |tr A| − k·|A| = {worst:.3}"))
}

fn adjoint_angle_bound(seed: u64) -> Outcome {
    let mut rng = rng_from_seed(seed);
    let mut worst = f64::NEG_INFINITY;
    for kind in groups() {
        let rep = AdjointRepresentation::new(kind.clone()).map_err(err)?;
        let n = rep.dim();
        for _ in 0..100 {
            let w = random_subspace(n, rng.random_range(1..n), &mut rng);
            let g = haar_sample(&kind, rng.random());
            let gw = w.transformed(&rep.action(&g)).map_err(err)?;
            worst = worst.max(angle_between(&w, &gw).map_err(err)? - op_norm_group(&g));
        }
    }
    ensure(worst <= 1e-9, format!("max angle − |g| = {worst:.3}"))
}

fn projection_contraction(seed: u64) -> Outcome {
    let mut rng = rng_from_seed(seed);
    let mut worst = f64::NEG_INFINITY;
    for kind in groups() {
        let rep = AdjointRepresentation::new(kind.clone()).map_err(err)?;
        let n = rep.dim();
        for _ in 0..100 {
            let w = random_subspace(n, rng.random_range(1..n), &mut rng);
            let gw = w.transformed(&rep.action(&haar_sample(&kind, rng.random()))).map_err(err)?;
            let q = perp(&w).map_err(err)?.projector();
            let m = &q * gw.projector() * &q;
            let s = angle_between(&w, &gw).map_err(err)?.sin();
            worst = worst.max(op_norm(&m).map_err(err)? - s * s);
        }
    }
    ensure(worst <= 1e-9, format!("max ‖Π⊥ Π_gW Π⊥‖ − sin² = {worst:.3}"))
}

fn representation_homomorphism(seed: u64) -> Outcome {
    let mut worst = 0.0f64;
    for kind in [GroupKind::su(2), GroupKind::su(3), GroupKind::so(3), GroupKind::so(4)] {
        let adj = AdjointRepresentation::new(kind.clone()).map_err(err)?;
        let def = DefiningRepresentation::new(kind).map_err(err)?;
        worst = worst
            .max(representation_defect(&adj, 50, seed))
            .max(representation_defect(&def, 50, seed));
    }
    ensure(worst <= 1e-8, format!("max defect {worst:.2e}"))
}

fn schur(seed: u64) -> Outcome {
    let rep = AdjointRepresentation::new(GroupKind::su(2)).map_err(err)?;
    let w = Subspace::span(&complexify(&nalgebra::DMatrix::from_column_slice(3, 1, &[1.0, 0.0, 0.0]))).map_err(err)?;
    let avg = schur_average(&rep, &w, 20_000, seed).map_err(err)?;
    ensure(
        avg.deviation <= 0.02 && (avg.trace - 1.0).abs() <= 0.02 * 3.0,
        format!("deviation {:.4}, trace {:.4}", avg.deviation, avg.trace),
    )
}

fn large_angle(seed: u64) -> Outcome {
    let mut rng = rng_from_seed(seed);
    let mut worst = f64::INFINITY;
    for kind in [GroupKind::su(2), GroupKind::su(3)] {
        let rep = AdjointRepresentation::new(kind).map_err(err)?;
        let n = rep.dim();
        for _ in 0..20 {
            let w = random_subspace(n, rng.random_range(1..n), &mut rng);
            let found = find_large_angle(&rep, &w, 5000, rng.random()).map_err(err)?;
            worst = worst.min(found.angle);
        }
    }
    ensure(worst >= FRAC_PI_4 - 1e-3, format!("smallest best angle {worst:.4}"))
}

fn random_contraction_pair<R: Rng>(kind: &GroupKind, rng: &mut R) -> (GroupElement, GroupElement) {
    let h = random_ball_element(kind, FRAC_PI_2 - 0.01, rng);
    let k = random_ball_element(kind, alpha() - 0.01, rng);
    (h, k)
}

fn contraction(seed: u64) -> Outcome {
    let mut rng = rng_from_seed(seed);
    let mut worst = f64::NEG_INFINITY;
    for kind in [GroupKind::su(2), GroupKind::so(3)] {
        for _ in 0..500 {
            let (h, k) = random_contraction_pair(&kind, &mut rng);
            let c = contraction_constant(op_norm_group(&k)).map_err(err)?;
            let hk = commutator(&h, &k).map_err(err)?;
            worst = worst.max(op_norm_group(&hk) - c * op_norm_group(&h));
        }
    }
    ensure(worst <= 1e-9, format!("max |[h,k]| − C·|h| = {worst:.3}"))
}

fn geometric_decay(seed: u64) -> Outcome {
    let mut rng = rng_from_seed(seed);
    for kind in [GroupKind::su(2), GroupKind::so(3)] {
        for _ in 0..50 {
            let (h, k) = random_contraction_pair(&kind, &mut rng);
            let t = commutator_sequence(&h, &k, 500, DEFAULT_HALT_TOL).map_err(err)?;
            if !t.within_bounds() {
                return Err(format!("ratios {:?} exceed C = {}", t.contraction_ratios, t.contraction_constant));
            }
        }
    }
    Ok("100 sequences within Cⁿ·π/2".into())
}

fn witness_identity(_: u64) -> Outcome {
    let sol = solve_beta(1e-12).map_err(err)?;
    let p = construct_witness_pair(&sol);
    let a = witness_angle(&p.h, &p.k, &p.v).map_err(err)?;
    ensure(
        (a - 4.0 * sol.beta).abs() <= 1e-6,
        format!("angle {a:.9} vs 4β = {:.9}", 4.0 * sol.beta),
    )
}

fn witness_perturbations(seed: u64) -> Outcome {
    let sol = solve_beta(1e-12).map_err(err)?;
    let p = construct_witness_pair(&sol);
    let mut rng = rng_from_seed(seed);
    let mut smallest = f64::INFINITY;
    for _ in 0..500 {
        let h = random_perturbation(&p.h, 0.9 * sol.beta, &mut rng);
        let k = random_perturbation(&p.k, 0.9 * sol.beta, &mut rng);
        smallest = smallest.min(perturbation_noncommutation_check(&sol, &p, &h, &k).map_err(err)?);
    }
    ensure(smallest > 0.0, format!("smallest angle {smallest:.4}"))
}

fn icosahedral_commutators(_: u64) -> Outcome {
    let ico = icosahedral_group().map_err(err)?;
    let mut pairs = 0;
    for h in ico.elements() {
        for k in ico.elements() {
            if op_norm_group(h) < FRAC_PI_2 - 0.01 && op_norm_group(k) < alpha() - 0.01 {
                let c = commutator(h, k).map_err(err)?;
                if op_norm_group(&c) > 1e-9 {
                    return Err("a qualifying pair does not commute".into());
                }
                pairs += 1;
            }
        }
    }
    Ok(format!("{pairs} qualifying pairs commute"))
}

fn coset_invariance(seed: u64) -> Outcome {
    let ico = icosahedral_group().map_err(err)?;
    let mut worst = 0.0f64;
    for i in 0..100 {
        let g = haar_sample(&GroupKind::so(3), split_seed(seed, i));
        let d = coset_distance(&g, &ico).map_err(err)?;
        for h in ico.elements().iter().step_by(7) {
            worst = worst.max((coset_distance(&(&g * h), &ico).map_err(err)? - d).abs());
        }
    }
    ensure(worst <= 1e-9, format!("max change {worst:.2e}"))
}

fn diameter_monotonicity(seed: u64) -> Outcome {
    let kind = GroupKind::so(3);
    let trivial = SubgroupSample::new(vec![GroupElement::identity(&kind)], true).map_err(err)?;
    let ico = icosahedral_group().map_err(err)?;
    let small = diameter_lower_estimate(&kind, &trivial, 300, seed).map_err(err)?;
    let large = diameter_lower_estimate(&kind, &ico, 300, seed).map_err(err)?;
    ensure(
        large.estimate <= small.estimate && (small.estimate - PI).abs() < 0.01,
        format!("{{e}}: {:.4}, I: {:.4}", small.estimate, large.estimate),
    )
}

fn icosahedral_quotient(seed: u64) -> Outcome {
    let beta = solve_beta(1e-12).map_err(err)?.beta;
    let ico = icosahedral_group().map_err(err)?;
    let est = diameter_lower_estimate(&GroupKind::so(3), &ico, 2000, seed).map_err(err)?;
    ensure(
        est.estimate >= beta - 0.01 && est.lower_bound,
        format!("diam(SO(3)/I) ≥ {:.6}", est.estimate),
    )
}

fn diagonal_example(seed: u64) -> Outcome {
    let est = diagonal_quotient_estimate(&GroupKind::so(3), 20_000, seed).map_err(err)?;
    ensure(
        est.value >= FRAC_PI_2 - 0.05 && (est.h_norm - PI).abs() < 1e-9,
        format!("min over h' = {:.5}", est.value),
    )
}

fn projection_monotonicity(seed: u64) -> Outcome {
    let mut rng = rng_from_seed(seed);
    let f = GroupKind::so(3);
    let kind = GroupKind::product(vec![f.clone(), f.clone()]);
    let diag = diagonal_sample(&f, 100, seed).map_err(err)?;
    let trivial = SubgroupSample::new(vec![GroupElement::identity(&kind)], true).map_err(err)?;
    let mut worst = f64::NEG_INFINITY;
    for i in 0..200 {
        let g = haar_sample(&kind, rng.random());
        let h = if i % 2 == 0 { &diag } else { &trivial };
        let (full, projected) = projection_monotonicity_check(&g, h).map_err(err)?;
        worst = worst.max(projected - full);
    }
    ensure(worst <= 1e-9, format!("max projected − full {worst:.3}"))
}

fn killing(seed: u64) -> Outcome {
    let mut rng = rng_from_seed(seed);
    let mut failures = 0;
    for kind in groups() {
        for _ in 0..500 {
            let g = random_ball_element(&kind, 2.0 * PI / 3.0 - 0.1, &mut rng);
            let k = killing_comparison(&g).map_err(err)?;
            if !(k.lower_holds && k.upper_holds) {
                failures += 1;
            }
        }
    }
    ensure(failures == 0, format!("{failures} violations in 1500 elements"))
}

fn subalgebra_distance(seed: u64) -> Outcome {
    let f = GroupKind::so(3);
    let kind = GroupKind::product(vec![f.clone(), f.clone()]);
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let basis: Vec<DVector<Complex64>> = (0..3)
        .map(|i| {
            DVector::from_fn(6, |r, _| Complex64::new(if r == i || r == i + 3 { s } else { 0.0 }, 0.0))
        })
        .collect();
    let h_alg = Subspace::from_vectors(&basis).map_err(err)?;
    let diag = diagonal_sample(&f, 500, seed).map_err(err)?;
    let mut worst = f64::NEG_INFINITY;
    for i in 0..50 {
        let g = haar_sample(&kind, split_seed(seed, 10_000 + i));
        let d = coset_distance(&g, &diag).map_err(err)?;
        let moved = h_alg.transformed(&complexify(&adjoint_matrix(&g).matrix)).map_err(err)?;
        worst = worst.max(angle_between(&moved, &h_alg).map_err(err)? - d);
    }
    ensure(worst <= 0.05, format!("max angle − distance {worst:.3}"))
}

fn icosahedral_gates(seed: u64) -> Outcome {
    let config = UniversalityConfig {
        max_length: 12,
        spot_checks: 100,
        seed,
        ..UniversalityConfig::default()
    };
    let report = test_universality(&GateSet::icosahedral(), &config).map_err(err)?;
    let store = generate_words(&GateSet::icosahedral(), 12, 1e-9).map_err(err)?;
    let closed = store.is_closed_under_products().map_err(err)?;
    ensure(
        report.verdict == Verdict::NotUniversal && report.group_order == Some(60) && closed,
        format!(
            "{:?}, order {:?}, longest word {}",
            report.verdict, report.group_order, report.words.max_length
        ),
    )
}

fn two_rotations(seed: u64) -> Outcome {
    let config = UniversalityConfig {
        max_length: TWO_ROTATIONS_MAX_LENGTH,
        seed,
        ..UniversalityConfig::default()
    };
    let report = test_universality(&GateSet::two_rotations(), &config).map_err(err)?;
    let spot = report.spot_check.clone().ok_or("spot check missing")?;
    let store = generate_words(&GateSet::two_rotations(), 6, 1e-9).map_err(err)?;
    let sample: Vec<usize> = (0..store.len()).step_by(13).collect();
    let reproduction = store.word_reproduction_error(&sample);
    ensure(
        report.verdict == Verdict::Universal && spot.all_within_beta && reproduction <= 1e-8,
        format!(
            "{:?}, margin {:.4}, {} words, spot max {:.4}",
            report.verdict, report.certified_margin, report.words.count, spot.max_distance
        ),
    )
}

fn phase_blindness(seed: u64) -> Outcome {
    let kind = GroupKind::su(2);
    let mut rng = rng_from_seed(seed);
    let gates = GateSet::new(
        kind.clone(),
        vec![haar_sample(&kind, rng.random()), haar_sample(&kind, rng.random())],
        vec!["A".into(), "B".into()],
        true,
    )
    .map_err(err)?;
    let phased = gates.with_global_phases(&[rng.random::<f64>() * 6.0, rng.random::<f64>() * 6.0]).map_err(err)?;
    let config = UniversalityConfig {
        max_length: 6,
        spacing: 0.05,
        spot_checks: 100,
        seed,
        ..UniversalityConfig::default()
    };
    let a = test_universality(&gates, &config).map_err(err)?;
    let b = test_universality(&phased, &config).map_err(err)?;
    let sa = a.spot_check.as_ref().map_or(0.0, |s| s.max_distance);
    let sb = b.spot_check.as_ref().map_or(0.0, |s| s.max_distance);
    let gap = (a.max_distance - b.max_distance).abs().max((sa - sb).abs());
    ensure(
        a.verdict == b.verdict && a.words.count == b.words.count && gap <= 1e-10,
        format!("distance change {gap:.1e}"),
    )
}

fn verdict_monotonicity(seed: u64) -> Outcome {
    let base = UniversalityConfig {
        spot_checks: 0,
        seed,
        ..UniversalityConfig::default()
    };
    let at = |gates: &GateSet, max_length| {
        test_universality(gates, &UniversalityConfig { max_length, ..base.clone() }).map(|r| r.verdict)
    };
    let ico = [at(&GateSet::icosahedral(), 12).map_err(err)?, at(&GateSet::icosahedral(), 14).map_err(err)?];
    let two = [
        at(&GateSet::two_rotations(), TWO_ROTATIONS_MAX_LENGTH - 1).map_err(err)?,
        at(&GateSet::two_rotations(), TWO_ROTATIONS_MAX_LENGTH).map_err(err)?,
    ];
    ensure(
        ico == [Verdict::NotUniversal; 2] && two == [Verdict::Universal; 2],
        format!("icosahedral {ico:?}, two rotations {two:?}"),
    )
}
