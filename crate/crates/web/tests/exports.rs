use qk1_web::{partial_fractions_text, prop31_text, tau_text, MAX_PROP31_ORDER};

#[test]
fn five_term_decomposition_groups() {
    let s = partial_fractions_text("1/((1+q)*(1-q^3)*(1-q^4))").unwrap();
    assert!(s.contains("[q + 1]  (3*q + 4)/(8*q^2 + 16*q + 8)"), "{s}");
    assert!(s.contains("[q^2 + 1]  -q/(4*q^2 + 4)"));
    assert!(s.contains("over Q(z12): "));
}

#[test]
fn non_split_denominator_is_reported_not_fatal() {
    let s = partial_fractions_text("1/(q^2 + 2)").unwrap();
    assert!(s.contains("does not split"));
}

#[test]
fn divided_power_tau() {
    assert_eq!(tau_text(3, true).unwrap(), "t0 + t0*t1 + 1/4*t0^2*t2 + t0*t1^2");
}

#[test]
fn one_point_formula_agrees() {
    let (ok, text) = prop31_text(3).unwrap();
    assert!(ok, "{text}");
    assert!(text.ends_with("difference: 0"));
    assert!(prop31_text(MAX_PROP31_ORDER + 1).is_err());
}
