//! Browser bindings: partial fractions of a typed expression, the `τ` series,
//! and the one-point formula check. Each export is a thin wrapper over a plain
//! function so the logic is testable off the browser.

use wasm_bindgen::prelude::*;

use qk1_core::expr::parse_ratfun;
use qk1_core::genus0::{solve_tau, Convention, InputT};
use qk1_core::genus1::{prop31_closed, prop31_rhs, tau_series, CorrelatorTable};
use qk1_core::ratfun::{cyclotomic_partial_fractions, partial_fractions, CyclotomicLift};

/// Largest orders the page accepts; beyond these a request takes seconds.
pub const MAX_TAU_ORDER: u32 = 6;
pub const MAX_PROP31_ORDER: u32 = 8;

pub fn partial_fractions_text(expr: &str) -> Result<String, String> {
    let f = parse_ratfun(expr).map_err(|e| e.to_string())?;
    let v = f.variable().name();
    let (poly, groups) = cyclotomic_partial_fractions(&f, 12).map_err(|e| e.to_string())?;
    let mut lines = vec![format!("f = {f}")];
    if !poly.is_zero() {
        lines.push(format!("polynomial part: {}", poly.display_with(v)));
    }
    for (p, g) in &groups {
        lines.push(format!("[{}]  {g}", p.display_with(v)));
    }
    match partial_fractions(&f.lift(), 12) {
        Ok(pf) => lines.push(format!("over Q(z12): {pf}")),
        Err(e) => lines.push(format!("over Q(z12): does not split ({e})")),
    }
    Ok(lines.join("\n"))
}

pub fn tau_text(order: u32, divided_power: bool) -> Result<String, String> {
    if order == 0 || order > MAX_TAU_ORDER {
        return Err(format!("order must be between 1 and {MAX_TAU_ORDER}"));
    }
    let convention = if divided_power { Convention::DividedPower } else { Convention::Monomial };
    let input = InputT::coordinates(order as usize + 1, order, convention);
    solve_tau(&input, order).map(|t| t.to_string()).map_err(|e| e.to_string())
}

/// Both sides of the one-point formula and whether they agree.
pub fn prop31_text(order: u32) -> Result<(bool, String), String> {
    if order > MAX_PROP31_ORDER {
        return Err(format!("order must be at most {MAX_PROP31_ORDER}"));
    }
    let t = CorrelatorTable::point();
    let tau = tau_series(order);
    let rhs = prop31_rhs(&tau, &t, 12).map_err(|e| e.to_string())?;
    let closed = prop31_closed(&tau, &t, 12).map_err(|e| e.to_string())?;
    let diff = &rhs - &closed;
    Ok((diff.is_zero(), format!("residue side:\n{rhs}\n\nclosed form:\n{closed}\n\ndifference: {diff}")))
}

#[wasm_bindgen]
pub fn partial_fractions_of(expr: &str) -> Result<String, JsError> {
    partial_fractions_text(expr).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn tau(order: u32, divided_power: bool) -> Result<String, JsError> {
    tau_text(order, divided_power).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn prop31_check(order: u32) -> Result<String, JsError> {
    prop31_text(order).map(|(ok, s)| format!("{}\n\n{s}", if ok { "AGREE" } else { "DIFFER" })).map_err(|e| JsError::new(&e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tau_display() {
        assert_eq!(tau_text(3, false).unwrap(), "t0 + t0*t1 + 1/2*t0^2*t2 + t0*t1^2");
        assert!(tau_text(0, false).is_err());
    }

    #[test]
    fn parse_errors_are_reported() {
        assert!(partial_fractions_text("1/(1-q^5").unwrap_err().contains("byte 8"));
    }
}
