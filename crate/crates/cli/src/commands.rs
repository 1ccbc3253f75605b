//! One function per subcommand; each returns a report.

use num_complex::Complex64 as C;
use serde_json::{json, Value};

use stripq_core::barnes::{
    build_integrand, display_shift_ratio, gaussian_symbolic_check, integrand_shift_check, numeric_report,
};
use stripq_core::dt::{classical_y_branch, product_decompose, refactor_check};
use stripq_core::geometry::{classical_curve, curve_residual, parametrize, saddle_potential, Param};
use stripq_core::quantization::{
    build_quantum_curve, check_annihilation, classical_factorization, closed_form_psi, closed_form_psi_in, dual_wave,
    frobenius_solve, verify_dual_difference,
};
use stripq_core::quiver::{quiver_eval, quiver_matrix, to_quiver};
use stripq_core::{Basepoint, Direction, Error, QLaurent, Rat, StripGeometry, XSeries};

use crate::config::JobConfig;
use crate::error::CliError;
use crate::render::{Report, Table};

/// Sample points for the parametrization table.
const Z_SAMPLES: [(f64, f64); 4] = [(0.3, 0.0), (0.0, 0.4), (-0.5, 0.0), (0.25, -0.35)];

/// Largest z-degree used by the Barnes shift check.
const SHIFT_Z_MAX: usize = 6;

fn c_json(c: C) -> Value {
    json!([c.re, c.im])
}

fn t_poly(c: &QLaurent) -> String {
    QLaurent::from_terms(c.iter().map(|(k, p)| (k, p.clone())), None).to_string()
}

fn direction_name(d: Direction) -> &'static str {
    match d {
        Direction::AscendingX => "X",
        Direction::AscendingXInverse => "1/X",
    }
}

fn param_json(p: &Param, name: String) -> Value {
    match p {
        Param::Symbolic => Value::String(name),
        Param::Exact(r) => Value::String(r.to_string()),
        Param::Numeric(c) if c.im == 0.0 => json!(c.re),
        Param::Numeric(c) => c_json(*c),
    }
}

fn geometry_json(g: &StripGeometry) -> Value {
    let alphas: Vec<Value> = g.alphas().iter().enumerate().map(|(j, p)| param_json(p, format!("a{}", j + 1))).collect();
    let betas: Vec<Value> = g.betas().iter().enumerate().map(|(j, p)| param_json(p, format!("b{}", j + 1))).collect();
    json!({ "label": g.label(), "alphas": alphas, "betas": betas, "framing": g.framing() })
}

fn header(cfg: &JobConfig, command: &str) -> serde_json::Map<String, Value> {
    let mut m = serde_json::Map::new();
    m.insert("command".into(), json!(command));
    m.insert("geometry".into(), geometry_json(&cfg.geometry));
    m.insert("basepoint".into(), json!(cfg.basepoint.to_string()));
    m.insert("x_order".into(), json!(cfg.x_order));
    m.insert("t_order".into(), json!(cfg.t_order));
    m
}

fn has_values(g: &StripGeometry) -> bool {
    g.values().is_ok()
}

/// Lattice sum and closed form agree below their shared truncation.
fn same_to_shared_order(a: &XSeries, b: &XSeries, cap: i64) -> bool {
    a.coeffs.len() == b.coeffs.len()
        && a.coeffs.iter().zip(&b.coeffs).all(|(x, y)| {
            let k = x.trunc().unwrap_or(cap).min(y.trunc().unwrap_or(cap)).min(cap);
            x.with_trunc(k) == y.with_trunc(k)
        })
}

pub fn solve(cfg: &JobConfig) -> Result<Report, CliError> {
    let g = cfg.geometry.to_symbolic();
    let psi = closed_form_psi(&g, cfg.basepoint, cfg.x_order, cfg.t_order)?;
    let op = build_quantum_curve(&g, cfg.basepoint);
    let ann = check_annihilation(&op, &psi)?;
    let mut table = Table::new(&["n", "x_exponent", "coefficient", "known_below"]);
    let mut rows = Vec::new();
    for (n, c) in psi.coeffs.iter().enumerate() {
        let known = c.trunc();
        table.push(vec![
            n.to_string(),
            psi.exponent(n).to_string(),
            t_poly(c),
            known.map_or("exact".into(), |k| k.to_string()),
        ]);
        rows.push(json!({
            "n": n,
            "x_exponent": psi.exponent(n),
            "coefficient": t_poly(c),
            "known_below": known,
        }));
    }
    let mut m = header(cfg, "solve");
    m.insert("direction".into(), json!(direction_name(psi.direction)));
    m.insert("operator".into(), json!(op.to_string()));
    m.insert("annihilated".into(), json!(ann.passed()));
    m.insert("indicial_value".into(), json!(ann.indicial_value.to_string()));
    m.insert("coefficients".into(), Value::Array(rows));
    Ok(Report { json: Value::Object(m), table })
}

pub fn quiver(cfg: &JobConfig) -> Result<Report, CliError> {
    let g = cfg.geometry.to_symbolic();
    let model = to_quiver(&g, cfg.basepoint)?;
    let lattice = quiver_eval(&model, cfg.x_order, cfg.t_order)?;
    let closed = closed_form_psi_in(&g, cfg.basepoint, Direction::AscendingX, cfg.x_order, cfg.t_order)?;
    let matches = same_to_shared_order(&lattice, &closed, cfg.t_order);
    let qm = quiver_matrix(&model);
    let mut head = vec!["label", "variable", "x_degree"];
    head.extend(qm.labels.iter().map(String::as_str));
    head.push("source");
    let mut table = Table::new(&head);
    for (node, row) in model.nodes.iter().zip(&qm.matrix) {
        let mut cells = vec![node.label.clone(), node.variable.to_string(), node.x_degree.to_string()];
        cells.extend(row.iter().map(|v| v.to_string()));
        cells.push(node.source.clone());
        table.push(cells);
    }
    let mut m = header(cfg, "quiver");
    m.insert("node_count".into(), json!(model.nodes.len()));
    m.insert("nodes".into(), serde_json::to_value(&model.nodes).expect("nodes serialize"));
    m.insert("matrix".into(), serde_json::to_value(&qm).expect("matrix serializes"));
    m.insert("principal_diagonal".into(), json!(model.matrix[0][0]));
    m.insert("symmetric".into(), json!(model.is_symmetric()));
    m.insert("matches_closed_form".into(), json!(matches));
    if !matches {
        return Err(Error::ResidualNonzero {
            order: format!("X^{}", cfg.x_order),
            detail: "quiver lattice sum differs from the closed form".into(),
        }
        .into());
    }
    Ok(Report { json: Value::Object(m), table })
}

pub fn dt(cfg: &JobConfig) -> Result<Report, CliError> {
    let g = cfg.geometry.to_symbolic();
    let psi = closed_form_psi(&g, cfg.basepoint, cfg.x_order, cfg.t_order)?;
    let fac = product_decompose(&psi, cfg.x_order, cfg.t_order)?;
    let back = refactor_check(&fac, cfg.x_order, cfg.t_order)?;
    let round_trip = back.eq_to_order(&psi)?;
    let mut table = Table::new(&["d", "monomial", "s", "e", "integral"]);
    let mut rows = Vec::new();
    for f in &fac.factors {
        table.push(vec![
            f.d.to_string(),
            f.multidegree.to_string(),
            f.s.to_string(),
            f.e.to_string(),
            f.integral.to_string(),
        ]);
        rows.push(json!({
            "d": f.d,
            "monomial": f.multidegree.to_string(),
            "s": f.s,
            "e": f.e.to_string(),
            "integral": f.integral,
        }));
    }
    let mut m = header(cfg, "dt");
    m.insert("direction".into(), json!(direction_name(fac.direction)));
    m.insert("factors".into(), Value::Array(rows));
    m.insert("known_below".into(), json!(fac.known_below));
    m.insert("all_integral".into(), json!(fac.all_integral()));
    m.insert("round_trip".into(), json!(round_trip));
    Ok(Report { json: Value::Object(m), table })
}

pub fn barnes(cfg: &JobConfig) -> Result<Report, CliError> {
    let g = &cfg.geometry;
    let ig = build_integrand(&g.to_symbolic(), cfg.basepoint)?;
    let z_max = cfg.x_order.min(SHIFT_Z_MAX) as i64;
    let shift = integrand_shift_check(&ig, z_max, cfg.t_order)?;
    let display_agrees = ig.shift_ratio().same_as(&display_shift_ratio(g, cfg.basepoint));
    let mut table = Table::new(&["quantity", "value"]);
    table.push(vec!["integrand".into(), ig.name.clone()]);
    table.push(vec!["shift_checked_degrees".into(), shift.checked.to_string()]);
    table.push(vec!["display_ratio_agrees".into(), display_agrees.to_string()]);
    let numeric = match (&cfg.numeric, has_values(g)) {
        (Some(nb), true) => {
            let rep = numeric_report(g, cfg.basepoint, nb.x, nb.q, nb.terms, nb.residues)?;
            table.push(vec!["series".into(), format!("{} {}", rep.series[0], rep.series[1])]);
            table.push(vec!["residue_sum".into(), format!("{} {}", rep.residue[0], rep.residue[1])]);
            table.push(vec!["abs_diff".into(), format!("{:e}", rep.abs_diff)]);
            serde_json::to_value(&rep).expect("report serializes")
        }
        _ => Value::Null,
    };
    let mut m = header(cfg, "barnes");
    m.insert("integrand".into(), serde_json::to_value(&ig).expect("integrand serializes"));
    m.insert("shift_check".into(), serde_json::to_value(&shift).expect("report serializes"));
    m.insert("display_ratio_agrees".into(), json!(display_agrees));
    m.insert("numeric".into(), numeric);
    Ok(Report { json: Value::Object(m), table })
}

pub fn classical(cfg: &JobConfig) -> Result<Report, CliError> {
    let g = &cfg.geometry;
    let curve = classical_curve(&g.to_symbolic());
    let fac = classical_factorization(&g.to_symbolic(), cfg.basepoint)?;
    let branch = match classical_y_branch(&g.to_symbolic(), cfg.x_order) {
        Ok(ys) => json!(ys.iter().map(|p| p.to_string()).collect::<Vec<_>>()),
        Err(Error::NoUnitBranch(why)) => json!({ "none": why }),
        Err(e) => return Err(e.into()),
    };
    let mut table = Table::new(&["z_re", "z_im", "x_re", "x_im", "y_re", "y_im", "residual"]);
    let mut samples = Vec::new();
    let mut saddle = Value::Null;
    if has_values(g) {
        for (re, im) in Z_SAMPLES {
            let z = C::new(re, im);
            let (x, y) = parametrize(g, z)?;
            let res = curve_residual(g, x, y)?.norm();
            table.push(
                [z.re, z.im, x.re, x.im, y.re, y.im, res]
                    .iter()
                    .map(|v| v.to_string())
                    .collect(),
            );
            samples.push(json!({ "z": c_json(z), "x": c_json(x), "y": c_json(y), "residual": res }));
        }
        if let Some(nb) = &cfg.numeric {
            let w = saddle_potential(g, nb.x)?;
            saddle = match w.critical_points() {
                Ok(zs) => {
                    let pts: Vec<Value> = zs
                        .iter()
                        .map(|z| -> Result<Value, CliError> {
                            let res = curve_residual(g, nb.x, -z.ln())?.norm();
                            Ok(json!({ "z": c_json(*z), "curve_residual": res }))
                        })
                        .collect::<Result<_, _>>()?;
                    json!({ "x": c_json(nb.x), "critical_points": pts })
                }
                Err(Error::CriticalPointCollision(d)) => json!({ "x": c_json(nb.x), "collision": d }),
                Err(e) => return Err(e.into()),
            };
        }
    }
    let mut m = header(cfg, "classical");
    m.insert("curve".into(), json!(curve.to_string()));
    m.insert("quantum_limit".into(), json!(fac.limit.to_string()));
    m.insert("limit_unit".into(), json!(fac.unit.to_string()));
    m.insert("y_branch".into(), branch);
    m.insert("samples".into(), Value::Array(samples));
    m.insert("saddle".into(), saddle);
    Ok(Report { json: Value::Object(m), table })
}

struct Check {
    name: &'static str,
    status: &'static str,
    detail: String,
}

fn run_check(name: &'static str, f: impl FnOnce() -> Result<(bool, String), CliError>) -> Check {
    match f() {
        Ok((true, detail)) => Check { name, status: "pass", detail },
        Ok((false, detail)) => Check { name, status: "fail", detail },
        Err(e) => Check { name, status: "fail", detail: e.to_string() },
    }
}

fn skip(name: &'static str, why: &str) -> Check {
    Check { name, status: "skip", detail: why.into() }
}

/// Runs the invariant suite for one configuration. `Ok` carries the
/// report even when a property fails; the caller maps that to exit 1.
pub fn verify(cfg: &JobConfig) -> Result<(Report, bool), CliError> {
    let g = cfg.geometry.to_symbolic();
    let bp = cfg.basepoint;
    let (n, t) = (cfg.x_order, cfg.t_order);
    let mut checks = Vec::new();
    let psi = closed_form_psi(&g, bp, n, t)?;
    let op = build_quantum_curve(&g, bp);
    checks.push(run_check("annihilation", || {
        let a = check_annihilation(&op, &psi)?;
        Ok((a.passed(), format!("first failure {:?}", a.first_failure)))
    }));
    checks.push(run_check("frobenius_equals_closed_form", || {
        let fr = frobenius_solve(&op, psi.direction, n, t)?;
        Ok((fr == psi, format!("{} coefficients", psi.coeffs.len())))
    }));
    checks.push(run_check("classical_limit", || {
        let fac = classical_factorization(&g, bp)?;
        let ok = match bp {
            Basepoint::Infinity => fac.unit == Rat::int(-1),
            Basepoint::One => fac.unit == Rat::ONE || fac.unit == Rat::int(-1),
        };
        Ok((ok, format!("unit {}", fac.unit)))
    }));
    checks.push(run_check("quiver_evaluation", || {
        let model = to_quiver(&g, bp)?;
        let lattice = quiver_eval(&model, n, t)?;
        let closed = closed_form_psi_in(&g, bp, Direction::AscendingX, n, t)?;
        Ok((
            same_to_shared_order(&lattice, &closed, t) && model.is_symmetric(),
            format!("{} nodes", model.nodes.len()),
        ))
    }));
    checks.push(run_check("dt_round_trip", || {
        let fac = product_decompose(&psi, n, t)?;
        let back = refactor_check(&fac, n, t)?;
        let again = product_decompose(&back, n, t)?;
        Ok((back.eq_to_order(&psi)? && again.factors == fac.factors, format!("{} factors", fac.factors.len())))
    }));
    checks.push(run_check("dt_integrality", || {
        let fac = product_decompose(&psi, n, t)?;
        let bad = fac.factors.iter().filter(|f| !f.integral).count();
        Ok((bad == 0, format!("{bad} non-integral exponents")))
    }));
    checks.push(run_check("barnes_shift_identity", || {
        let ig = build_integrand(&g, bp)?;
        let z_max = n.min(SHIFT_Z_MAX) as i64;
        let rep = integrand_shift_check(&ig, z_max, t)?;
        let display = ig.shift_ratio().same_as(&display_shift_ratio(&g, bp));
        Ok((display, format!("{} z-degrees of {}", rep.checked, ig.name)))
    }));
    checks.push(run_check("barnes_gaussian", || {
        let ig = build_integrand(&g, bp)?;
        Ok((gaussian_symbolic_check(&ig, g.framing(), 10), "poles n <= 10".into()))
    }));
    checks.push(run_check("dual_difference", || {
        let chk = verify_dual_difference(&dual_wave(&g), n, t)?;
        Ok((chk.passed(), format!("z-order {n}")))
    }));
    let numeric_geom = &cfg.geometry;
    match (&cfg.numeric, has_values(numeric_geom)) {
        (Some(nb), true) => {
            checks.push(run_check("residue_reconstruction", || {
                let rep = numeric_report(numeric_geom, bp, nb.x, nb.q, nb.terms, nb.residues)?;
                Ok((rep.abs_diff < 1e-8, format!("|diff| = {:e}", rep.abs_diff)))
            }));
            checks.push(run_check("saddle_on_curve", || {
                let w = saddle_potential(numeric_geom, nb.x)?;
                match w.critical_points() {
                    Ok(zs) => {
                        let worst = zs
                            .iter()
                            .map(|z| curve_residual(numeric_geom, nb.x, -z.ln()).map(|r| r.norm()))
                            .collect::<Result<Vec<f64>, _>>()?
                            .into_iter()
                            .fold(0.0, f64::max);
                        Ok((worst < 1e-10, format!("{} points, max residual {worst:e}", zs.len())))
                    }
                    Err(Error::CriticalPointCollision(d)) => Ok((true, format!("collision |dz| = {d:e}"))),
                    Err(e) => Err(e.into()),
                }
            }));
        }
        _ => {
            checks.push(skip("residue_reconstruction", "needs numeric parameters and a numeric block"));
            checks.push(skip("saddle_on_curve", "needs numeric parameters and a numeric block"));
        }
    }
    if has_values(numeric_geom) {
        checks.push(run_check("parametrization_on_curve", || {
            let mut worst: f64 = 0.0;
            for (re, im) in Z_SAMPLES {
                let (x, y) = parametrize(numeric_geom, C::new(re, im))?;
                worst = worst.max(curve_residual(numeric_geom, x, y)?.norm());
            }
            Ok((worst < 1e-12, format!("max residual {worst:e}")))
        }));
    } else {
        checks.push(skip("parametrization_on_curve", "needs numeric parameters"));
    }
    let passed = checks.iter().all(|c| c.status != "fail");
    let mut table = Table::new(&["property", "status", "detail"]);
    let mut rows = Vec::new();
    for c in &checks {
        table.push(vec![c.name.into(), c.status.into(), c.detail.clone()]);
        rows.push(json!({ "property": c.name, "status": c.status, "detail": c.detail }));
    }
    let mut m = header(cfg, "verify");
    m.insert("properties".into(), Value::Array(rows));
    m.insert("passed".into(), json!(passed));
    Ok((Report { json: Value::Object(m), table }, passed))
}
