use std::fs;
use std::io::Write;

use serde::Serialize;
use serde_json::{json, Value};

use super::specs;
use super::{Context, Failure};
use crate::boundary::{tamrazov_ratio_with_budget, BoundaryFunction};
use crate::error::Error;
use crate::factorization::{fpr1_profile_with, fpr2_sweep, inner_part, DEFAULT_DIRECTIONS};
use crate::ideal::{
    carleson_integral, carleson_quadrature, convergence_table, mollifier_family, standard_membership, Family,
    Scenario, Variant,
};
use crate::moduli::{condition3_estimate, condition_grid, eta_estimate, validate_modulus, Modulus};

type Outcome = Result<bool, Failure>;

/// Cells per half arc in the reference quadrature, and its refinement.
const QUAD_CELLS: usize = 4000;

fn io(e: std::io::Error) -> Failure {
    Failure::Runtime(Error::from(e).to_string())
}

fn write_json(ctx: &Context, name: &str, body: Value) -> Result<(), Failure> {
    let mut doc = serde_json::Map::new();
    doc.insert("config".into(), ctx.config());
    if let Value::Object(m) = body {
        doc.extend(m);
    } else {
        doc.insert("result".into(), body);
    }
    let text = serde_json::to_string_pretty(&Value::Object(doc)).map_err(|e| Failure::Runtime(e.to_string()))?;
    fs::write(ctx.out.join(name), text + "\n").map_err(io)
}

fn write_csv(
    ctx: &Context,
    name: &str,
    body: impl FnOnce(&mut Vec<u8>) -> crate::Result<()>,
) -> Result<(), Failure> {
    let mut buf = Vec::new();
    writeln!(buf, "# config: {}", ctx.config()).map_err(io)?;
    body(&mut buf)?;
    fs::write(ctx.out.join(name), buf).map_err(io)
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable report")
}

fn input(ctx: &mut Context, key: &str, v: impl Into<Value>) {
    ctx.inputs.insert(key.to_string(), v.into());
}

fn verdict(pass: bool) -> &'static str {
    if pass {
        "PASS"
    } else {
        "FAIL"
    }
}

pub fn modulus_check(ctx: &mut Context, spec: &str, rho: f64) -> Outcome {
    input(ctx, "modulus", spec);
    input(ctx, "rho", rho);
    if !(1.0..=2.0).contains(&rho) {
        return Err(Failure::Usage(format!("--rho {rho} is outside [1, 2]")));
    }
    let w = Modulus::parse(spec)?;
    // The log-type moduli turn over above t = 1, so the gate uses (0, 1] and
    // the full range is reported alongside.
    let axioms = validate_modulus(&w, &condition_grid(2.0))?;
    let axioms_unit = validate_modulus(&w, &condition_grid(1.0))?;
    let eta = eta_estimate(&w, rho, &condition_grid(2f64.powf(1.0 / rho)))?;
    let cond3 = condition3_estimate(&w, &condition_grid(2f64.sqrt()))?;
    let pass = axioms_unit.all_passed() && eta.eta > 0.0;
    write_json(
        ctx,
        "modulus_check.json",
        json!({
            "axioms": axioms,
            "axioms_unit_interval": axioms_unit,
            "eta": eta,
            "condition3": cond3,
            "pass": pass,
        }),
    )?;
    println!(
        "modulus-check {}: eta = {:.12} at t = {:.6e}, square-condition ratio = {:.6e}: {}",
        w.name(),
        eta.eta,
        eta.argmin_t,
        cond3.estimate.eta,
        verdict(pass)
    );
    Ok(pass)
}

pub fn factor(ctx: &mut Context, spec: &str) -> Outcome {
    input(ctx, "function", spec);
    let f = specs::function(spec, ctx.grid)?;
    let part = inner_part(&f, ctx.tol("exclusion"))?;
    let pass = part.max_deviation <= ctx.tol("unimodular");
    write_csv(ctx, "outer.csv", |b| part.outer.write_csv(b))?;
    write_csv(ctx, "inner.csv", |b| part.values.samples().write_csv(b))?;
    write_json(
        ctx,
        "factor.json",
        json!({
            "log_abs_outer_at_origin": part.outer.log_abs_at_origin(),
            "masked": part.flagged,
            "singularities": part.outer.singularities().iter()
                .map(|s| json!({"index": s.index, "coeff": s.coeff})).collect::<Vec<_>>(),
            "max_unimodular_deviation": part.max_deviation,
            "pass": pass,
        }),
    )?;
    println!(
        "factor {}: max ||U|-1| = {:.3e}, {} masked nodes: {}",
        f.name(),
        part.max_deviation,
        part.flagged.len(),
        verdict(pass)
    );
    Ok(pass)
}

pub fn carleson(ctx: &mut Context, spec: &str) -> Outcome {
    input(ctx, "set", spec);
    let e = specs::closed_set(spec)?;
    let value = carleson_integral(&e)?;
    let coarse = carleson_quadrature(&e, QUAD_CELLS)?;
    let fine = carleson_quadrature(&e, 2 * QUAD_CELLS)?;
    let tol = ctx.tol("stability");
    let (pass, agreement, refinement) = match (value.value(), coarse.value(), fine.value()) {
        (Some(v), Some(c), Some(f)) => {
            let agreement = (v - f).abs();
            let refinement = (f - c).abs();
            (agreement <= tol && refinement <= tol, Some(agreement), Some(refinement))
        }
        _ => (value.is_divergent() && fine.is_divergent(), None, None),
    };
    write_json(
        ctx,
        "carleson.json",
        json!({
            "integral": value,
            "quadrature": fine,
            "quadrature_agreement": agreement,
            "quadrature_refinement_change": refinement,
            "pass": pass,
        }),
    )?;
    match value.value() {
        Some(v) => println!("carleson: integral = {v:.10}: {}", verdict(pass)),
        None => println!("carleson: divergent (|E| = {:.6e}): {}", e.measure(), verdict(pass)),
    }
    Ok(pass)
}

pub fn verify_fpr2(ctx: &mut Context, trials: usize) -> Outcome {
    input(ctx, "trials", trials);
    let seed = ctx.seed()?;
    let sweep = fpr2_sweep(trials, seed)?;
    let evaluated = sweep.iter().filter(|t| t.check.holds().is_some()).count();
    let held = sweep.iter().filter(|t| t.check.holds() == Some(true)).count();
    let pass = evaluated == trials && held == trials;
    write_csv(ctx, "fpr2.csv", |b| {
        let mut wr = csv::Writer::from_writer(b);
        wr.write_record(["trial", "zeros", "atoms", "xi", "rho", "log_lhs", "log_rhs", "holds"])?;
        for t in &sweep {
            let (l, r, h) = match &t.check {
                crate::factorization::Fpr2Check::Evaluated {
                    log_lhs, log_rhs, holds, ..
                } => (format!("{log_lhs:.17e}"), format!("{log_rhs:.17e}"), holds.to_string()),
                crate::factorization::Fpr2Check::NotApplicable { .. } => {
                    (String::new(), String::new(), "n/a".to_string())
                }
            };
            wr.write_record(&[
                t.trial.to_string(),
                t.zeros.to_string(),
                t.atoms.to_string(),
                format!("{:.17e}", t.xi),
                format!("{:.17e}", t.rho),
                l,
                r,
                h,
            ])?;
        }
        wr.flush()?;
        Ok(())
    })?;
    write_json(
        ctx,
        "fpr2.json",
        json!({"trials": trials, "evaluated": evaluated, "held": held, "pass": pass}),
    )?;
    println!("verify-fpr2: {held}/{trials} hold ({evaluated} evaluated): {}", verdict(pass));
    Ok(pass)
}

pub fn verify_fpr1(ctx: &mut Context, function: &str, omega: &str, radii: &str, a: f64) -> Outcome {
    input(ctx, "function", function);
    input(ctx, "omega", omega);
    input(ctx, "radii", radii);
    input(ctx, "a", a);
    let f = specs::function(function, ctx.grid)?;
    let w = Modulus::parse(omega)?;
    let radii = specs::reals(radii)?;
    let table = fpr1_profile_with(&f, &w, &radii, a, DEFAULT_DIRECTIONS)?;
    let pass = table.decreasing();
    write_csv(ctx, "fpr1.csv", |b| table.write_csv(b))?;
    let maxima = table.row_maxima();
    println!("verify-fpr1 {}: row maxima {:?}: {}", f.name(), maxima, verdict(pass));
    Ok(pass)
}

pub fn verify_mollifier(
    ctx: &mut Context,
    function: &str,
    omega: &str,
    points: &str,
    deltas: &str,
    control: bool,
) -> Outcome {
    let function = if control { "const:1" } else { function };
    input(ctx, "function", function);
    input(ctx, "omega", omega);
    input(ctx, "points", points);
    input(ctx, "deltas", deltas);
    input(ctx, "control", control);
    let seed = ctx.seed()?;
    let f = specs::function(function, ctx.grid)?;
    let w = Modulus::parse(omega)?;
    let set = specs::closed_set(points)?;
    let pts = set.boundary_points();
    if pts.is_empty() || set.measure() > 0.0 {
        return Err(Failure::Usage(format!("--points `{points}` is not a finite point set")));
    }
    let deltas = specs::reals(deltas)?;
    let family = mollifier_family(&f, &pts, &deltas)?;
    let table = convergence_table(&family, &f, &w, seed)?;
    let pass = table.passes_gate() && table.strictly_decreasing();
    write_csv(ctx, "mollifier.csv", |b| table.write_csv(b))?;
    println!(
        "verify-mollifier {}: total gaps {:?}: {}",
        f.name(),
        table.total_gaps,
        verdict(pass)
    );
    Ok(pass)
}

pub fn verify_prop(ctx: &mut Context, spec: &str, family: Family, control: bool) -> Outcome {
    let mut scenario = match spec {
        "point" => Scenario::point(),
        "cluster" => Scenario::cluster(),
        _ => match spec.strip_prefix("json:") {
            Some(path) => serde_json::from_str::<Scenario>(&specs::read(path)?).map_err(Error::from)?,
            None => return Err(Failure::Usage(format!("unknown scenario `{spec}`"))),
        },
    };
    scenario.grid_n = ctx.grid;
    match ctx.seed {
        Some(s) => scenario.seed = s,
        None => ctx.seed = Some(scenario.seed),
    }
    input(ctx, "scenario", to_value(&scenario));
    input(ctx, "control", control);
    let variant = if control {
        Variant::SwappedComplement
    } else {
        Variant::Standard
    };
    let report = scenario.run(family, variant)?;
    let pass = report.passes();
    let stem = match family {
        Family::Product => "prop1",
        Family::Power => "prop3",
    };
    write_csv(ctx, &format!("{stem}.csv"), |b| report.table.write_csv(b))?;
    write_json(
        ctx,
        &format!("{stem}.json"),
        json!({
            "report": report,
            "pass": pass,
        }),
    )?;
    println!(
        "verify-{stem} {}{}: final/initial gap {:?} -> {:?}, profiles bounded: {}: {}",
        scenario.name,
        if control { " (control)" } else { "" },
        report.table.total_gaps.first(),
        report.table.total_gaps.last(),
        report.bounded,
        verdict(pass)
    );
    Ok(pass)
}

pub fn tamrazov(ctx: &mut Context, function: &str, omega: &str, budget: usize) -> Outcome {
    input(ctx, "function", function);
    input(ctx, "omega", omega);
    input(ctx, "budget", budget);
    let seed = ctx.seed()?;
    let f = specs::function(function, ctx.grid)?;
    let w = Modulus::parse(omega)?;
    let base = tamrazov_ratio_with_budget(&f, &w, budget, seed)?;
    let doubled = tamrazov_ratio_with_budget(&f, &w, 2 * budget, seed)?;
    let change = (doubled.ratio - base.ratio).abs() / base.ratio;
    let pass = base.ratio <= ctx.tol("tamrazov")
        && doubled.ratio <= ctx.tol("tamrazov")
        && change <= ctx.tol("stability");
    write_json(
        ctx,
        "tamrazov.json",
        json!({
            "base": base,
            "doubled": doubled,
            "relative_change": change,
            "pass": pass,
        }),
    )?;
    println!(
        "tamrazov {} under {}: ratio {:.6} (budget {budget}), {:.6} (budget {}): {}",
        f.name(),
        w.name(),
        base.ratio,
        doubled.ratio,
        2 * budget,
        verdict(pass)
    );
    Ok(pass)
}

pub fn membership(ctx: &mut Context, function: &str, set: &str, inner: &str) -> Outcome {
    input(ctx, "function", function);
    input(ctx, "set", set);
    input(ctx, "inner", inner);
    let f: BoundaryFunction = specs::function(function, ctx.grid)?;
    let e = specs::closed_set(set)?;
    let u = specs::inner(inner)?;
    let report = standard_membership(&f, &e, &u, ctx.tol("vanish"));
    let pass = report.member;
    write_json(ctx, "membership.json", json!({"report": report, "pass": pass}))?;
    if pass {
        println!("membership {}: member: PASS", f.name());
    } else {
        println!("membership {}: not a member ({}): FAIL", f.name(), report.failures.join("; "));
    }
    Ok(pass)
}
