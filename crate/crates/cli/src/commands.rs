use serde_json::{json, Value};

use liediam::constants::solve_beta;
use liediam::io::{read_element, read_elements, read_json, GateSetJson, MatrixJson, SubspaceJson};
use liediam::lie::{
    distance, exp_map, log_map, op_norm_algebra, op_norm_group, op_norm_group_eigenphases,
    rng_from_seed, GroupKind,
};
use liediam::quotient::{
    diagonal_quotient_estimate, diameter_lower_estimate, icosahedral_group, so3_grid_diameter,
    SubgroupSample,
};
use liediam::small_subgroups::{
    commutator_sequence, construct_witness_pair, perturbation_noncommutation_check,
    random_perturbation, witness_angle, DEFAULT_HALT_TOL,
};
use liediam::subspace::{angle_between, find_large_angle, schur_average, AdjointRepresentation, Representation};
use liediam::universality::{test_universality, GateSet, UniversalityConfig, DEFAULT_DEDUP_TOL, DEFAULT_WORD_CAP};
use liediam::verify::run_suite;

use crate::{Cli, Command, Failure, Output};

const BETA_TOL: f64 = 1e-10;
const WITNESS_PROBES: usize = 500;
const SCHUR_SAMPLES: usize = 20_000;
const LARGE_ANGLE_BUDGET: usize = 5000;
const DIAMETER_PROBES: usize = 2000;
const DIAGONAL_PROBES: usize = 20_000;
const SPACING: f64 = 0.02;

fn ok(result: Value, budgets: Value) -> Result<Output, Failure> {
    Ok(Output { result, budgets, failed: false })
}

fn to_value<T: serde::Serialize>(v: &T) -> Result<Value, Failure> {
    serde_json::to_value(v).map_err(|e| Failure::input(e.to_string()))
}

/// `su2`, `so(4)`, `su2xso3`.
pub fn parse_kind(s: &str) -> Result<GroupKind, Failure> {
    let simple = |p: &str| -> Result<GroupKind, Failure> {
        let p: String = p.chars().filter(|c| !matches!(c, '(' | ')' | ' ')).collect();
        let bad = || Failure::input(format!("cannot parse group {s:?}"));
        let (prefix, d) = p.split_at_checked(2).ok_or_else(bad)?;
        let d: usize = d.parse().map_err(|_| bad())?;
        match prefix.to_ascii_lowercase().as_str() {
            "su" => Ok(GroupKind::su(d)),
            "so" => Ok(GroupKind::so(d)),
            _ => Err(bad()),
        }
    };
    let parts: Vec<&str> = s.split('x').collect();
    let kind = if parts.len() == 1 {
        simple(parts[0])?
    } else {
        GroupKind::product(parts.into_iter().map(simple).collect::<Result<_, _>>()?)
    };
    kind.validate()?;
    Ok(kind)
}

pub fn dispatch(cli: &Cli) -> Result<(&'static str, Output), Failure> {
    let out = match &cli.command {
        Command::Beta => ("beta", beta(cli)?),
        Command::Norm { file, algebra } => ("norm", norm(file, *algebra)?),
        Command::Dist { a, b } => ("dist", dist(a, b)?),
        Command::Explog { file, log } => ("explog", explog(file, *log)?),
        Command::Witness => ("witness", witness(cli)?),
        Command::Contract { h, k, max_iter } => ("contract", contract(cli, h, k, *max_iter)?),
        Command::Angle { u, w } => ("angle", angle(u, w)?),
        Command::Schur { subspace, group, large_angle } => {
            ("schur", schur(cli, subspace.as_deref(), group, *large_angle)?)
        }
        Command::Diameter { file, sample, resolution } => {
            ("diameter", diameter(cli, file.as_deref(), *sample, *resolution)?)
        }
        Command::Universality { file, max_length, spot_checks } => {
            ("universality", universality(cli, file.as_deref(), *max_length, *spot_checks)?)
        }
        Command::Verify => ("verify", verify(cli)?),
    };
    Ok(out)
}

fn beta(cli: &Cli) -> Result<Output, Failure> {
    let tol = cli.tol.unwrap_or(BETA_TOL);
    let sol = solve_beta(tol)?;
    ok(to_value(&sol)?, json!({ "tol": tol }))
}

fn norm(file: &std::path::Path, algebra: bool) -> Result<Output, Failure> {
    let m: MatrixJson = read_json(file)?;
    let result = if algebra {
        let x = m.to_algebra()?;
        json!({ "kind": x.kind().to_string(), "algebra_norm": op_norm_algebra(&x) })
    } else {
        let g = m.to_element()?;
        json!({
            "kind": g.kind().to_string(),
            "norm": op_norm_group(&g),
            "norm_eigenphases": op_norm_group_eigenphases(&g),
        })
    };
    ok(result, json!({}))
}

fn dist(a: &std::path::Path, b: &std::path::Path) -> Result<Output, Failure> {
    let (g, h) = (read_element(a)?, read_element(b)?);
    ok(json!({ "kind": g.kind().to_string(), "distance": distance(&g, &h)? }), json!({}))
}

fn explog(file: &std::path::Path, log: bool) -> Result<Output, Failure> {
    let m: MatrixJson = read_json(file)?;
    let result = if log {
        let g = m.to_element()?;
        let x = log_map(&g)?;
        json!({
            "log": MatrixJson::from_algebra(&x),
            "group_norm": op_norm_group(&g),
            "algebra_norm": op_norm_algebra(&x),
        })
    } else {
        let x = m.to_algebra()?;
        let g = exp_map(&x);
        json!({
            "exp": MatrixJson::from_element(&g),
            "algebra_norm": op_norm_algebra(&x),
            "group_norm": op_norm_group(&g),
        })
    };
    ok(result, json!({}))
}

fn witness(cli: &Cli) -> Result<Output, Failure> {
    let probes = cli.budget_probes.unwrap_or(WITNESS_PROBES);
    let sol = solve_beta(1e-12)?;
    let pair = construct_witness_pair(&sol);
    let angle = witness_angle(&pair.h, &pair.k, &pair.v)?;
    let mut rng = rng_from_seed(cli.seed);
    let mut smallest = f64::INFINITY;
    for i in 0..probes {
        // Radii spread evenly over (0, β).
        let r = sol.beta * (i as f64 + 0.5) / probes as f64;
        let h = random_perturbation(&pair.h, r, &mut rng);
        let k = random_perturbation(&pair.k, r, &mut rng);
        smallest = smallest.min(perturbation_noncommutation_check(&sol, &pair, &h, &k)?);
    }
    let result = json!({
        "alpha": sol.alpha,
        "beta": sol.beta,
        "h": MatrixJson::from_element(&pair.h),
        "k": MatrixJson::from_element(&pair.k),
        "v": [pair.v.x, pair.v.y, pair.v.z],
        "angle": angle,
        "four_beta": 4.0 * sol.beta,
        "angle_error": (angle - 4.0 * sol.beta).abs(),
        "perturbations": probes,
        "smallest_perturbed_angle": if probes > 0 { json!(smallest) } else { Value::Null },
    });
    ok(result, json!({ "probes": probes }))
}

fn contract(cli: &Cli, h: &std::path::Path, k: &std::path::Path, max_iter: usize) -> Result<Output, Failure> {
    let tol = cli.tol.unwrap_or(DEFAULT_HALT_TOL);
    let trace = commutator_sequence(&read_element(h)?, &read_element(k)?, max_iter, tol)?;
    let mut result = to_value(&trace)?;
    result["max_ratio"] = json!(trace.max_ratio());
    result["within_bounds"] = json!(trace.within_bounds());
    ok(result, json!({ "tol": tol, "max_iter": max_iter }))
}

fn angle(u: &std::path::Path, w: &std::path::Path) -> Result<Output, Failure> {
    let u = read_json::<SubspaceJson>(u)?.to_subspace()?;
    let w = read_json::<SubspaceJson>(w)?.to_subspace()?;
    let a = angle_between(&u, &w)?;
    ok(
        json!({ "ambient": u.ambient_dim(), "dims": [u.dim(), w.dim()], "angle": a }),
        json!({}),
    )
}

fn schur(cli: &Cli, file: Option<&std::path::Path>, group: &str, large: bool) -> Result<Output, Failure> {
    let kind = parse_kind(group)?;
    let rep = AdjointRepresentation::new(kind.clone())?;
    let n = rep.dim();
    let given = match file {
        Some(p) => read_json::<SubspaceJson>(p)?,
        None => SubspaceJson {
            ambient: n,
            basis: vec![(0..n).map(|i| if i == 0 { 1.0 } else { 0.0 }).collect()],
            basis_im: None,
        },
    };
    let w = given.to_subspace()?;
    let samples = cli.budget_probes.unwrap_or(SCHUR_SAMPLES);
    let avg = schur_average(&rep, &w, samples, cli.seed)?;
    let mut result = json!({ "group": kind.to_string(), "subspace_dim": w.dim(), "average": avg });
    let mut budgets = json!({ "probes": samples });
    if large {
        let budget = cli.budget_probes.unwrap_or(LARGE_ANGLE_BUDGET);
        let found = find_large_angle(&rep, &w, budget, cli.seed)?;
        result["large_angle"] = json!({
            "angle": found.angle,
            "probe_angle": found.probe_angle,
            "element": MatrixJson::from_element(&found.element),
        });
        budgets["large_angle_probes"] = json!(budget);
    }
    ok(result, budgets)
}

fn diameter(cli: &Cli, file: Option<&std::path::Path>, sample: bool, resolution: Option<f64>) -> Result<Output, Failure> {
    let subgroup = match (file, cli.builtin.as_deref()) {
        (Some(_), Some(_)) => return Err(Failure::input("give either a subgroup file or --builtin, not both")),
        (None, Some("diagonal-so3")) => {
            let probes = cli.budget_probes.unwrap_or(DIAGONAL_PROBES);
            let est = diagonal_quotient_estimate(&GroupKind::so(3), probes, cli.seed)?;
            let result = json!({ "subgroup": "diagonal-so3", "estimate": est });
            return ok(result, json!({ "probes": probes }));
        }
        (None, Some("icosahedral")) => icosahedral_group()?,
        (None, Some(other)) => return Err(Failure::input(format!("unknown built-in subgroup {other:?}"))),
        (Some(p), None) => SubgroupSample::new(read_elements(p)?, !sample)?,
        (None, None) => return Err(Failure::input("diameter needs a subgroup file or --builtin")),
    };
    let probes = cli.budget_probes.unwrap_or(DIAMETER_PROBES);
    let kind = subgroup.kind().clone();
    let est = diameter_lower_estimate(&kind, &subgroup, probes, cli.seed)?;
    let mut result = json!({
        "subgroup": cli.builtin.clone().unwrap_or_else(|| "file".into()),
        "kind": kind.to_string(),
        "order": subgroup.len(),
        "estimate": est,
    });
    if let Some(r) = resolution {
        result["grid_diameter"] = json!(so3_grid_diameter(&subgroup, r)?);
    }
    ok(result, json!({ "probes": probes, "resolution": resolution }))
}

fn universality(cli: &Cli, file: Option<&std::path::Path>, max_length: usize, spot_checks: usize) -> Result<Output, Failure> {
    let gates = match (file, cli.builtin.as_deref()) {
        (Some(_), Some(_)) => return Err(Failure::input("give either a gate-set file or --builtin, not both")),
        (None, Some("two-rotations")) => GateSet::two_rotations(),
        (None, Some("icosahedral")) => GateSet::icosahedral(),
        (None, Some(other)) => return Err(Failure::input(format!("unknown built-in gate set {other:?}"))),
        (Some(p), None) => read_json::<GateSetJson>(p)?.to_gate_set()?,
        (None, None) => return Err(Failure::input("universality needs a gate-set file or --builtin")),
    };
    let config = UniversalityConfig {
        max_length,
        spacing: cli.spacing.unwrap_or(SPACING),
        dedup_tol: cli.tol.unwrap_or(DEFAULT_DEDUP_TOL),
        word_cap: cli.budget_words.unwrap_or(DEFAULT_WORD_CAP),
        spot_checks,
        seed: cli.seed,
    };
    let report = test_universality(&gates, &config)?;
    ok(to_value(&report)?, to_value(&config)?)
}

fn verify(cli: &Cli) -> Result<Output, Failure> {
    let report = run_suite(cli.seed);
    eprint!("{}", report.table());
    let mut result = to_value(&report)?;
    // Per-check timings would break output determinism.
    if let Some(checks) = result["checks"].as_array_mut() {
        for c in checks {
            if let Some(obj) = c.as_object_mut() {
                obj.remove("seconds");
            }
        }
    }
    Ok(Output { result, budgets: json!({}), failed: !report.all_passed() })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_names() {
        assert_eq!(parse_kind("su2").unwrap(), GroupKind::su(2));
        assert_eq!(parse_kind("so(4)").unwrap(), GroupKind::so(4));
        assert_eq!(
            parse_kind("su2xso3").unwrap(),
            GroupKind::product(vec![GroupKind::su(2), GroupKind::so(3)])
        );
        assert!(parse_kind("so2").is_err());
        assert!(parse_kind("u3").is_err());
    }
}
