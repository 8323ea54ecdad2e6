//! Acceptance criteria, one PASS/FAIL line each. Runs without the libtest
//! harness so the lines are always printed; exits nonzero if any fails.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};
use std::process::ExitCode;
use std::time::Instant;

use liediam::constants::{alpha, contraction_constant, solve_beta};
use liediam::lie::{
    distance, exp_map, haar_sample, log_map, op_norm_algebra, op_norm_group,
    op_norm_group_eigenphases, random_algebra_with_norm, rng_from_seed, split_seed, AlgebraVector,
    GroupElement, GroupKind,
};
use liediam::quotient::{
    diagonal_quotient_estimate, diagonal_sample, diameter_lower_estimate, icosahedral_generators,
    icosahedral_group, killing_comparison, projection_monotonicity_check, so3_grid_diameter,
    SubgroupSample,
};
use liediam::small_subgroups::{
    commutator, commutator_sequence, construct_witness_pair, perturbation_noncommutation_check,
    random_perturbation, witness_angle, DEFAULT_HALT_TOL,
};
use liediam::subspace::{
    angle_between, find_large_angle, perp, schur_average, AdjointRepresentation, Representation,
    Subspace,
};
use liediam::universality::{test_universality, GateSet, UniversalityConfig, Verdict};
use liediam::verify::{run_suite, TWO_ROTATIONS_MAX_LENGTH};
use liediam::{op_norm, CMatrix};
use nalgebra::{DMatrix, Matrix3};
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn check(cond: bool, detail: String) -> Outcome {
    if cond {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn e<E: std::fmt::Display>(err: E) -> String {
    err.to_string()
}

/// `|g|_G` from the trace alone: SU(2) elements with eigenvalues `e^{±iθ}`
/// act on the algebra by rotation through `2θ`; SO(3) elements rotate by
/// `acos((tr − 1)/2)`.
fn closed_form_norm(g: &GroupElement) -> Option<f64> {
    let tr = g.matrix().trace();
    if *g.kind() == GroupKind::su(2) {
        let theta = (tr.re / 2.0).clamp(-1.0, 1.0).acos();
        Some(2.0 * theta.min(PI - theta))
    } else if *g.kind() == GroupKind::so(3) {
        Some(((tr.re - 1.0) / 2.0).clamp(-1.0, 1.0).acos())
    } else {
        None
    }
}

/// Scaling-and-squaring Taylor exponential.
fn taylor_exp(x: &CMatrix) -> CMatrix {
    let n = x.nrows();
    let s = 8;
    let y = x / Complex64::new(f64::from(1 << s), 0.0);
    let mut term = CMatrix::identity(n, n);
    let mut sum = term.clone();
    for k in 1..20 {
        term = &term * &y / Complex64::new(k as f64, 0.0);
        sum += &term;
    }
    for _ in 0..s {
        sum = &sum * &sum;
    }
    sum
}

fn random_ball<R: Rng>(kind: &GroupKind, bound: f64, rng: &mut R) -> (AlgebraVector, GroupElement) {
    let x = random_algebra_with_norm(kind, bound * rng.random::<f64>(), rng);
    let g = exp_map(&x);
    (x, g)
}

fn gaussian_subspace<R: Rng>(n: usize, k: usize, rng: &mut R) -> Subspace {
    let m = CMatrix::from_fn(n, k, |_, _| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)));
    Subspace::span(&m).expect("Gaussian columns are independent")
}

fn c1_beta() -> Outcome {
    let start = Instant::now();
    let sol = solve_beta(1e-10).map_err(e)?;
    let secs = start.elapsed().as_secs_f64();
    let a = (7.0f64 / 8.0).acos();
    let b = sol.beta;
    let residual = ((a - b).cos().powi(2) + (a - b).sin().powi(2) * b.sin() - (4.0 * b).cos()).abs();
    check(
        (b - 0.124332).abs() <= 1e-5 && residual <= 1e-9 && secs < 1.0,
        format!("beta = {b:.10}, residual {residual:.1e}, {secs:.4}s"),
    )
}

fn c2_norms() -> Outcome {
    let groups = [GroupKind::su(2), GroupKind::su(3), GroupKind::so(3)];
    let (mut cross, mut oracle) = (0.0f64, 0.0f64);
    for (gi, kind) in groups.iter().enumerate() {
        for i in 0..1000 {
            let g = haar_sample(kind, split_seed(100 + gi as u64, i));
            let ad = op_norm_group(&g);
            cross = cross.max((ad - op_norm_group_eigenphases(&g)).abs());
            if let Some(n) = closed_form_norm(&g) {
                oracle = oracle.max((ad - n).abs());
            }
        }
    }
    let mut rng = rng_from_seed(2);
    let (mut tri, mut inv) = (f64::NEG_INFINITY, 0.0f64);
    for kind in &groups {
        for _ in 0..200 {
            let [a, b, c] = [0; 3].map(|_| haar_sample(kind, rng.random()));
            let dab = distance(&a, &b).map_err(e)?;
            tri = tri.max(distance(&a, &c).map_err(e)? - dab - distance(&b, &c).map_err(e)?);
            inv = inv
                .max((distance(&(&c * &a), &(&c * &b)).map_err(e)? - dab).abs())
                .max((distance(&(&a * &c), &(&b * &c)).map_err(e)? - dab).abs());
        }
    }
    check(
        cross <= 1e-8 && oracle <= 1e-8 && tri <= 1e-9 && inv <= 1e-9,
        format!("Ad vs eigenphase {cross:.1e}, vs trace formula {oracle:.1e}, triangle excess {tri:.2e}, bi-invariance {inv:.1e}"),
    )
}

fn c3_exp_log() -> Outcome {
    let mut rng = rng_from_seed(3);
    let (mut norm_gap, mut log_gap, mut exp_gap) = (0.0f64, 0.0f64, 0.0f64);
    for kind in [GroupKind::su(2), GroupKind::su(3), GroupKind::so(3)] {
        for _ in 0..500 {
            let (x, g) = random_ball(&kind, 2.0 * PI / 3.0 - 0.1, &mut rng);
            norm_gap = norm_gap.max((op_norm_group(&g) - op_norm_algebra(&x)).abs());
            let y = log_map(&g).map_err(e)?;
            log_gap = log_gap.max((y.matrix() - x.matrix()).camax());
            exp_gap = exp_gap.max((taylor_exp(x.matrix()) - g.matrix()).camax());
        }
    }
    check(
        norm_gap <= 1e-8 && log_gap <= 1e-8 && exp_gap <= 1e-8,
        format!("norm {norm_gap:.1e}, log(exp x) − x {log_gap:.1e}, exp vs Taylor {exp_gap:.1e}"),
    )
}

fn c4_contraction() -> Outcome {
    let mut rng = rng_from_seed(4);
    let mut excess = f64::NEG_INFINITY;
    let mut sequences = 0;
    for kind in [GroupKind::su(2), GroupKind::so(3)] {
        for i in 0..500 {
            let (_, h) = random_ball(&kind, FRAC_PI_2 - 0.01, &mut rng);
            let (_, k) = random_ball(&kind, alpha() - 0.01, &mut rng);
            let c = contraction_constant(op_norm_group(&k)).map_err(e)?;
            let hk = commutator(&h, &k).map_err(e)?;
            excess = excess.max(op_norm_group(&hk) - c * op_norm_group(&h));
            if i % 10 == 0 {
                let t = commutator_sequence(&h, &k, 500, DEFAULT_HALT_TOL).map_err(e)?;
                let bound_ok = t.norms.iter().enumerate().all(|(n, &v)| v <= c.powi(n as i32) * FRAC_PI_2 + 1e-9);
                if !bound_ok {
                    return Err(format!("sequence exceeds Cⁿ·π/2: {:?}", t.norms));
                }
                sequences += 1;
            }
        }
    }
    let ico = icosahedral_group().map_err(e)?;
    let (mut pairs, mut worst) = (0, 0.0f64);
    for h in ico.elements() {
        for k in ico.elements() {
            if op_norm_group(h) < FRAC_PI_2 - 0.01 && op_norm_group(k) < alpha() - 0.01 {
                pairs += 1;
                worst = worst.max(op_norm_group(&commutator(h, k).map_err(e)?));
            }
        }
    }
    check(
        excess <= 1e-9 && worst <= 1e-9,
        format!("max |[h,k]| − C|h| = {excess:.2e}; {sequences} sequences within Cⁿπ/2; {pairs} icosahedral pairs, max |[h,k]| {worst:.1e}"),
    )
}

fn c5_witness() -> Outcome {
    let sol = solve_beta(1e-12).map_err(e)?;
    let p = construct_witness_pair(&sol);
    let angle = witness_angle(&p.h, &p.k, &p.v).map_err(e)?;
    let mut rng = rng_from_seed(5);
    let mut smallest = f64::INFINITY;
    for _ in 0..500 {
        let h = random_perturbation(&p.h, 0.99 * sol.beta, &mut rng);
        let k = random_perturbation(&p.k, 0.99 * sol.beta, &mut rng);
        smallest = smallest.min(perturbation_noncommutation_check(&sol, &p, &h, &k).map_err(e)?);
    }
    check(
        (angle - 4.0 * sol.beta).abs() <= 1e-6 && smallest > 0.0,
        format!("angle {angle:.9} vs 4β {:.9}; smallest perturbed angle {smallest:.4}", 4.0 * sol.beta),
    )
}

fn c6_subspaces() -> Outcome {
    let mut rng = rng_from_seed(6);
    let mut perp_gap = 0.0f64;
    for _ in 0..200 {
        let n = rng.random_range(2..=10);
        let u = gaussian_subspace(n, rng.random_range(1..n), &mut rng);
        let w = gaussian_subspace(n, rng.random_range(1..n), &mut rng);
        let a = angle_between(&u, &w).map_err(e)?;
        let b = angle_between(&perp(&u).map_err(e)?, &perp(&w).map_err(e)?).map_err(e)?;
        perp_gap = perp_gap.max((a - b).abs());
    }
    let mut trace_excess = f64::NEG_INFINITY;
    for _ in 0..200 {
        let n = rng.random_range(2..=10);
        let k = rng.random_range(1..n);
        let b = CMatrix::from_fn(n, k, |_, _| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)));
        let c = CMatrix::from_fn(k, n, |_, _| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)));
        let a = &b * &c;
        trace_excess = trace_excess.max(a.trace().norm() - k as f64 * op_norm(&a).map_err(e)?);
    }
    let rep = AdjointRepresentation::new(GroupKind::su(2)).map_err(e)?;
    let line = Subspace::span_real(&DMatrix::from_column_slice(3, 1, &[0.6, 0.0, 0.8])).map_err(e)?;
    let mut deviations = Vec::new();
    for seed in 0..4 {
        let avg = schur_average(&rep, &line, 20_000, seed).map_err(e)?;
        deviations.push(avg.deviation);
    }
    let schur_worst = deviations.iter().copied().fold(0.0, f64::max);
    let mut smallest = f64::INFINITY;
    for kind in [GroupKind::su(2), GroupKind::su(3)] {
        let rep = AdjointRepresentation::new(kind).map_err(e)?;
        let n = rep.dim();
        for _ in 0..20 {
            let w = gaussian_subspace(n, rng.random_range(1..n), &mut rng);
            smallest = smallest.min(find_large_angle(&rep, &w, 5000, rng.random()).map_err(e)?.angle);
        }
    }
    check(
        perp_gap <= 1e-8 && trace_excess <= 1e-9 && schur_worst <= 0.02 && smallest >= FRAC_PI_4 - 1e-3,
        format!(
            "perp {perp_gap:.1e}, trace excess {trace_excess:.3}, schur deviations {:?}, smallest large angle {smallest:.4}",
            deviations.iter().map(|d| format!("{d:.4}")).collect::<Vec<_>>()
        ),
    )
}

fn c7_quotients() -> Outcome {
    let beta = solve_beta(1e-12).map_err(e)?.beta;
    let so3 = GroupKind::so(3);
    let diag = diagonal_quotient_estimate(&so3, 20_000, 7).map_err(e)?;
    let ico = icosahedral_group().map_err(e)?;
    let est = diameter_lower_estimate(&so3, &ico, 2000, 7).map_err(e)?;
    let grid = so3_grid_diameter(&ico, 0.02).map_err(e)?;
    let pair = GroupKind::product(vec![so3.clone(), so3.clone()]);
    let sub = diagonal_sample(&so3, 100, 7).map_err(e)?;
    let trivial = SubgroupSample::new(vec![GroupElement::identity(&pair)], true).map_err(e)?;
    let mut proj_excess = f64::NEG_INFINITY;
    for i in 0..200 {
        let g = haar_sample(&pair, split_seed(70, i));
        let (full, projected) = projection_monotonicity_check(&g, if i % 2 == 0 { &sub } else { &trivial }).map_err(e)?;
        proj_excess = proj_excess.max(projected - full);
    }
    let mut rng = rng_from_seed(7);
    let mut violations = 0;
    for kind in [GroupKind::su(2), GroupKind::su(3), GroupKind::so(3), GroupKind::so(4)] {
        for _ in 0..500 {
            let (_, g) = random_ball(&kind, 2.0 * PI / 3.0 - 0.1, &mut rng);
            let k = killing_comparison(&g).map_err(e)?;
            violations += usize::from(!(k.lower_holds && k.upper_holds));
        }
    }
    check(
        diag.value >= FRAC_PI_2 - 0.05 && est.estimate >= beta && est.lower_bound && proj_excess <= 1e-9 && violations == 0,
        format!(
            "diagonal {:.5}; diam SO(3)/I ≥ {:.4} (probes), grid sup {grid:.4}; projection excess {proj_excess:.1e}; {violations} Killing violations",
            diag.value, est.estimate
        ),
    )
}

/// Closure of the generators as plain 3×3 matrices with a linear-scan
/// dedup, and the BFS depth at which it completes.
fn naive_closure(gens: &[Matrix3<f64>]) -> (usize, usize) {
    let mut all: Vec<Matrix3<f64>> = vec![Matrix3::identity()];
    let mut frontier = all.clone();
    let mut depth = 0;
    let letters: Vec<Matrix3<f64>> = gens.iter().flat_map(|g| [*g, g.transpose()]).collect();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for f in &frontier {
            for l in &letters {
                let p = f * l;
                if !all.iter().any(|q| (q - p).amax() < 1e-9) {
                    all.push(p);
                    next.push(p);
                }
            }
        }
        if !next.is_empty() {
            depth += 1;
        }
        frontier = next;
    }
    (all.len(), depth)
}

fn c8_universality() -> Outcome {
    let start = Instant::now();
    let gens: Vec<Matrix3<f64>> = icosahedral_generators()
        .iter()
        .map(|g| {
            let m = g.real_matrix();
            Matrix3::from_fn(|i, j| m[(i, j)])
        })
        .collect();
    let (oracle_order, oracle_depth) = naive_closure(&gens);
    let quick = UniversalityConfig {
        max_length: 12,
        spot_checks: 100,
        ..UniversalityConfig::default()
    };
    let ico = test_universality(&GateSet::icosahedral(), &quick).map_err(e)?;
    let ico_ok = ico.verdict == Verdict::NotUniversal
        && ico.group_order == Some(oracle_order)
        && oracle_order == 60
        && ico.words.max_length == oracle_depth
        && ico.words.max_length <= 12;

    let two = test_universality(
        &GateSet::two_rotations(),
        &UniversalityConfig {
            max_length: TWO_ROTATIONS_MAX_LENGTH,
            ..UniversalityConfig::default()
        },
    )
    .map_err(e)?;
    let spot = two.spot_check.as_ref().ok_or("spot check missing")?;
    let two_ok = two.verdict == Verdict::Universal && two.certified_margin > 0.0 && spot.all_within_beta;

    let su2 = GroupKind::su(2);
    let mut rng = rng_from_seed(8);
    let gates = GateSet::new(
        su2.clone(),
        vec![haar_sample(&su2, rng.random()), haar_sample(&su2, rng.random())],
        vec!["A".into(), "B".into()],
        true,
    )
    .map_err(e)?;
    let phased = gates.with_global_phases(&[1.234, 4.321]).map_err(e)?;
    let cfg = UniversalityConfig {
        max_length: 6,
        spacing: 0.05,
        spot_checks: 200,
        ..UniversalityConfig::default()
    };
    let a = test_universality(&gates, &cfg).map_err(e)?;
    let b = test_universality(&phased, &cfg).map_err(e)?;
    let spot_gap = match (&a.spot_check, &b.spot_check) {
        (Some(x), Some(y)) => (x.max_distance - y.max_distance).abs(),
        _ => return Err("spot check missing".into()),
    };
    let gap = (a.max_distance - b.max_distance).abs().max(spot_gap);
    let phase_ok = a.verdict == b.verdict && a.words.count == b.words.count && gap <= 1e-10;

    let suite_start = Instant::now();
    let suite = run_suite(0);
    let suite_secs = suite_start.elapsed().as_secs_f64();
    check(
        ico_ok && two_ok && phase_ok && suite.all_passed() && suite_secs < 600.0,
        format!(
            "icosahedral {:?} order {:?} (oracle {oracle_order}) longest word {}; two rotations {:?} at length {} \
             ({} words), margin {:.4}, spot max {:.4}; phase gap {gap:.1e}; verify {}/{} in {suite_secs:.1}s; {:.1}s total",
            ico.verdict,
            ico.group_order,
            ico.words.max_length,
            two.verdict,
            TWO_ROTATIONS_MAX_LENGTH,
            two.words.count,
            two.certified_margin,
            spot.max_distance,
            suite.passed,
            suite.checks.len(),
            start.elapsed().as_secs_f64()
        ),
    )
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("beta reproduction", c1_beta),
        ("norm cross-validation", c2_norms),
        ("exp/log norm preservation", c3_exp_log),
        ("commutator contraction", c4_contraction),
        ("witness pair identity", c5_witness),
        ("subspace angles and averaging", c6_subspaces),
        ("quotient diameters", c7_quotients),
        ("universality tester", c8_universality),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = f();
        let secs = start.elapsed().as_secs_f64();
        let (tag, detail) = match outcome {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        println!("criterion {}: {tag}  {name} ({secs:.1}s): {detail}", i + 1);
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
