use std::fmt::Write as _;

use serde_json::json;

use qk1_core::expr::parse_ratfun;
use qk1_core::genus0::{solve_tau, InputT};
use qk1_core::genus1::{
    direction_input, prop31_closed, prop31_rhs, reference_two_point, tau_series, theorem1_total, two_point_coefficient, CorrelatorTable,
};
use qk1_core::poly::Poly;
use qk1_core::ratfun::{
    cyclotomic_partial_fractions, partial_fractions, residue_at, residue_sum_over_part, Center, CyclotomicLift, RatFun,
};
use qk1_core::scalars::{Field, Rational};
use qk1_core::verify::{run_all, VerifyConfig};

use crate::{Cli, Output};

type CmdResult = Result<Output, String>;

fn require_multiple_of_12(n: u32) -> Result<(), String> {
    if n == 0 || n % 12 != 0 {
        return Err(format!("--cyclotomic-order {n} must be a positive multiple of 12 for the point correlators"));
    }
    Ok(())
}

fn require_positive(n: u32) -> Result<(), String> {
    if n == 0 {
        return Err("--cyclotomic-order must be positive".into());
    }
    Ok(())
}

pub fn verify(cli: &Cli) -> CmdResult {
    require_multiple_of_12(cli.cyclotomic_order)?;
    let cfg = VerifyConfig { order: cli.order, cyclotomic_order: cli.cyclotomic_order, convention: cli.convention };
    let bundle = run_all(&cfg);
    let mut text = bundle.lines().join("\n");
    let s = bundle.summary;
    let _ = write!(text, "\n{} checks, {} passed, {} failed", s.total, s.passed, s.failed);
    Ok(Output { ok: bundle.all_pass(), json: serde_json::to_value(&bundle).expect("serializable"), text })
}

pub fn tau(cli: &Cli) -> CmdResult {
    let d = cli.order;
    let input = InputT::coordinates(d as usize + 1, d, cli.convention);
    let tau = solve_tau(&input, d).map_err(|e| e.to_string())?;
    let json = json!({ "order": d, "convention": cli.convention, "tau": tau.to_string() });
    Ok(Output { text: tau.to_string(), json, ok: true })
}

pub fn two_point(cli: &Cli) -> CmdResult {
    require_multiple_of_12(cli.cyclotomic_order)?;
    let parts = theorem1_total(&direction_input(cli.order), cli.order, &CorrelatorTable::point(), cli.cyclotomic_order)
        .map_err(|e| e.to_string())?;
    let ours = two_point_coefficient(&parts.total);
    let reference = reference_two_point();
    let diff = ours.clone() - &reference;
    let text = format!("reconstruction: {ours}\nreference:      {reference}\ndifference:     {diff}");
    let json = json!({
        "order": cli.order,
        "reconstruction": ours.to_string(),
        "reference": reference.to_string(),
        "difference": diff.to_string(),
        "pass": diff.is_zero(),
    });
    Ok(Output { text, json, ok: diff.is_zero() })
}

fn parse(expr: &str) -> Result<RatFun<Rational>, String> {
    parse_ratfun(expr).map_err(|e| match e.offset() {
        Some(o) => format!("{e}\n  {expr}\n  {}^", " ".repeat(o)),
        None => e.to_string(),
    })
}

fn factor_label(p: &Poly<Rational>, var: &str) -> String {
    p.display_with(var)
}

pub fn pf(cli: &Cli, expr: &str) -> CmdResult {
    require_positive(cli.cyclotomic_order)?;
    let n = cli.cyclotomic_order;
    let f = parse(expr)?;
    let v = f.variable().name();
    let (poly, groups) = cyclotomic_partial_fractions(&f, n).map_err(|e| e.to_string())?;
    let mut text = format!("f = {f}\ngrouped over Q:\n");
    if !poly.is_zero() {
        let _ = writeln!(text, "  polynomial part: {}", poly.display_with(v));
    }
    for (p, g) in &groups {
        let _ = writeln!(text, "  [{}]  {g}", factor_label(p, v));
    }
    let split = partial_fractions(&f.lift(), n);
    let split_text = match &split {
        Ok(pf) => pf.to_string(),
        Err(e) => format!("does not split: {e}"),
    };
    let _ = writeln!(text, "split over Q(z{n}), z{n} = exp(2 pi i/{n}):\n  {split_text}");
    let recombined = groups.iter().fold(RatFun::from_poly(f.variable(), poly.clone()), |a, (_, g)| a + g);
    let json = json!({
        "expression": f.to_string(),
        "polynomial": poly.display_with(v),
        "groups": groups.iter().map(|(p, g)| json!({ "factor": factor_label(p, v), "part": g.to_string() })).collect::<Vec<_>>(),
        "split": split.as_ref().ok().map(|pf| pf.terms.iter().map(|t| json!({
            "pole": t.pole.to_string(), "multiplicity": t.multiplicity, "coefficient": t.coeff.to_string(),
        })).collect::<Vec<_>>()),
    });
    Ok(Output { text, json, ok: recombined == f })
}

pub fn residues(cli: &Cli, expr: &str) -> CmdResult {
    require_positive(cli.cyclotomic_order)?;
    let n = cli.cyclotomic_order;
    let f = parse(expr)?;
    let v = f.variable().name();
    let mut rows: Vec<(String, String)> = Vec::new();
    let lifted = f.lift();
    let total = match partial_fractions(&lifted, n) {
        Ok(pf) => {
            let mut poles: Vec<_> = pf.terms.iter().map(|t| t.pole.clone()).collect();
            poles.dedup();
            let mut sum = qk1_core::scalars::Cyc::zero();
            for p in poles {
                let r = residue_at(&lifted, Center::At(p.clone()));
                sum = sum + &r;
                rows.push((format!("{v} = {p}"), r.to_string()));
            }
            let inf = residue_at(&lifted, Center::Infinity);
            rows.push(("infinity".into(), inf.to_string()));
            sum + &inf
        }
        Err(_) => {
            // group the poles by irreducible-over-Q factor
            let (_, groups) = cyclotomic_partial_fractions(&f, n).map_err(|e| e.to_string())?;
            let mut sum = Rational::zero();
            for (p, _) in &groups {
                let r = residue_sum_over_part(&f, p);
                sum = sum + &r;
                rows.push((format!("roots of {}", p.display_with(v)), r.to_string()));
            }
            let inf = residue_at(&f, Center::Infinity);
            rows.push(("infinity".into(), inf.to_string()));
            (sum + &inf).lift()
        }
    };
    let mut text = format!("residues of ({f}) d{v}:\n");
    for (at, r) in &rows {
        let _ = writeln!(text, "  {at}: {r}");
    }
    let _ = writeln!(text, "sum: {total}");
    let json = json!({
        "expression": f.to_string(),
        "residues": rows.iter().map(|(at, r)| json!({ "at": at, "value": r })).collect::<Vec<_>>(),
        "sum": total.to_string(),
    });
    Ok(Output { text, json, ok: total.is_zero() })
}

pub fn prop31(cli: &Cli, m: u32) -> CmdResult {
    require_multiple_of_12(cli.cyclotomic_order)?;
    let n = cli.cyclotomic_order;
    let t = CorrelatorTable::point();
    let tau = tau_series(m);
    let rhs = prop31_rhs(&tau, &t, n).map_err(|e| e.to_string())?;
    let closed = prop31_closed(&tau, &t, n).map_err(|e| e.to_string())?;
    let diff = &rhs - &closed;
    let text = format!("residue side: {rhs}\nclosed form:  {closed}\ndifference:   {diff}");
    let json = json!({
        "tau_order": m,
        "residue_side": rhs.to_string(),
        "closed_form": closed.to_string(),
        "difference": diff.to_string(),
        "pass": diff.is_zero(),
    });
    Ok(Output { text, json, ok: diff.is_zero() })
}
