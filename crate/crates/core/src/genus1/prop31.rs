use std::sync::Arc;

use crate::ratfun::RootsOfUnity;
use crate::ratfun::{partial_fractions, residue_at, residue_sum, Center, CyclotomicLift, PoleSet, RatFun, Var};
use crate::scalars::{rat, Field, Rational};
use crate::tseries::TSeries;

use super::{check_cyclotomic_order, lift_rational, roots_residue_sum, CorrelatorTable, Genus1Error};

type Over<F> = RatFun<RatFun<F>>;

/// The single formal variable `tau`, truncated above degree `m`.
pub fn tau_series(m: u32) -> TSeries<Rational> {
    let names: Arc<[String]> = Arc::from(vec!["tau".to_string()]);
    TSeries::var(names, m, 0)
}

fn q_const<F: Field>(s: &TSeries<F>) -> TSeries<RatFun<F>> {
    s.map_coeffs(|c| RatFun::constant(Var::Q, c.clone()))
}

fn xq_const<F: Field>(s: &TSeries<F>) -> TSeries<Over<F>> {
    s.map_coeffs(|c| RatFun::constant(Var::X, RatFun::constant(Var::Q, c.clone())))
}

/// `e^{qτ/(1-q)}`.
fn e_q<F: Field>(tau: &TSeries<F>) -> Result<TSeries<RatFun<F>>, Genus1Error> {
    let q = RatFun::<F>::var(Var::Q);
    let a = q.div(&(RatFun::one() - &q))?;
    Ok(q_const(tau).scale(&a).exp()?)
}

/// `e^{τ/(1-q)}` for `τ` already carried over `q`.
fn e_shift<F: Field>(t: &TSeries<RatFun<F>>) -> Result<TSeries<RatFun<F>>, Genus1Error> {
    let a = (RatFun::<F>::one() - &RatFun::var(Var::Q)).inv()?;
    Ok(t.scale(&a).exp()?)
}

/// `e^{(1-x)τ} g(x) / (x - q)` with `g = ⟨1/(1-xL)⟩_{1,1}`; the `e^{qτ/(1-q)} dx`
/// factor is constant in `x` and applied after taking residues.
fn prop31_integrand<F: Field>(tau: &TSeries<F>, table: &CorrelatorTable) -> Result<TSeries<Over<F>>, Genus1Error> {
    let x = Over::<F>::var(Var::X);
    let one_minus_x = Over::<F>::one() - &x;
    let e = xq_const(tau).scale(&one_minus_x).exp()?;
    let g = lift_rational::<F>(&table.one_point, Var::Q).map_coeffs(|c| RatFun::constant(Var::Q, c.clone())).with_var(Var::X);
    let x_minus_q = x - &Over::<F>::constant(Var::X, RatFun::var(Var::Q));
    Ok(e.scale(&g.div(&x_minus_q)?))
}

/// `Σ_{a=0,∞,q} Res_a e^{(1-x)τ} e^{qτ/(1-q)} ⟨1/(1-xL)⟩_{1,1} / (1 - q/x) dx/x`,
/// i.e. `⟨⟨1/(1-qL)⟩⟩_{1,1}` along `𝐭 = τ`.
pub fn prop31_rhs<F: Field>(tau: &TSeries<F>, table: &CorrelatorTable, n: u32) -> Result<TSeries<RatFun<F>>, Genus1Error> {
    check_cyclotomic_order(n)?;
    let s = prop31_integrand(tau, table)?
        .map_coeffs(|c| residue_sum(c, PoleSet::NonRootsOfUnity { order: n, include_one: false }) + &residue_at(c, Center::Infinity));
    Ok(&s * &e_q(tau)?)
}

/// The same residue sum as minus the residues at all `n`-th roots of unity.
pub fn prop31_via_roots<F: CyclotomicLift>(tau: &TSeries<F>, table: &CorrelatorTable, n: u32) -> Result<TSeries<RatFun<F>>, Genus1Error> {
    check_cyclotomic_order(n)?;
    let s = prop31_integrand(tau, table)?.try_map_coeffs(|c| roots_residue_sum(c, n, true).map(|r| -r))?;
    Ok(&s * &e_q(tau)?)
}

/// Replace each partial fraction of `expr(x)` (coefficients in `q`) by its
/// genus-zero counterpart: `1/(1-xζ) ↦ e^{τ/(1-q) - ζτ}`,
/// `1/(1-xζ)^2 ↦ (1-ζτ) e^{τ/(1-q) - ζτ}`, `x^j ↦ e^{τ/(1-q)} (-τ)^j/j!`.
pub fn hodge_substitute<F: CyclotomicLift>(expr: &Over<F>, tau: &TSeries<F>, n: u32) -> Result<TSeries<RatFun<F>>, Genus1Error> {
    check_cyclotomic_order(n)?;
    let lifted = expr.lift();
    let pf = partial_fractions(&lifted, n)?;
    let t = tau.map_coeffs(|c| RatFun::constant(Var::Q, c.lift()));
    let one = t.constant_like(RatFun::one());
    let mut acc = t.zero_like();
    let mut p = one.clone();
    for (j, c) in pf.polynomial.coeffs().iter().enumerate() {
        acc = &acc + &p.scale(c);
        p = (&p * &t).scale(&RatFun::from_rational(&rat(-1, j as i64 + 1)));
    }
    for term in &pf.terms {
        if term.pole.is_zero() || term.multiplicity > 2 {
            return Err(Genus1Error::UnsupportedAtom(format!("({})/(x - {})^{}", term.coeff, term.pole, term.multiplicity)));
        }
        // c/(x-a)^k = c (-a^{-1})^k / (1 - x a^{-1})^k
        let zeta = term.pole.inv()?;
        let e = t.scale(&-zeta.clone()).exp()?;
        let piece = if term.multiplicity == 1 {
            e.scale(&-(term.coeff.clone() * &zeta))
        } else {
            &(&one - &t.scale(&zeta)).scale(&(term.coeff.clone() * &zeta * &zeta)) * &e
        };
        acc = &acc + &piece;
    }
    let full = &acc * &e_shift(&t)?;
    Ok(full.try_map_coeffs(|c| RatFun::<F>::contract(c))?)
}

/// `hodge_substitute` applied to the mixed Hodge-bundle correlator of the table.
pub fn prop31_closed<F: CyclotomicLift>(tau: &TSeries<F>, table: &CorrelatorTable, n: u32) -> Result<TSeries<RatFun<F>>, Genus1Error> {
    let h = table.hodge_mixed().map_coeffs(|c| c.map_coeffs(F::from_rational));
    hodge_substitute(&h, tau, n)
}

fn lifted_tau<F: CyclotomicLift>(tau: &TSeries<F>) -> TSeries<RatFun<F::Lifted>> {
    tau.map_coeffs(|c| RatFun::constant(Var::Q, c.lift()))
}

fn qc<L: Field>(a: L) -> RatFun<L> {
    RatFun::constant(Var::Q, a)
}

fn q_lin<L: Field>(a: L, b: L) -> RatFun<L> {
    RatFun::linear(Var::Q, a, b)
}

/// `e^{cτ}`.
fn ec<L: Field>(t: &TSeries<RatFun<L>>, c: &L) -> Result<TSeries<RatFun<L>>, Genus1Error> {
    Ok(t.scale(&qc(c.clone())).exp()?)
}

/// `ζ_12^k`.
fn z<L: RootsOfUnity>(k: i64) -> L {
    L::roots_of_unity(12)[k.rem_euclid(12) as usize].clone()
}

fn qi<L: Field>(n: i64) -> RatFun<L> {
    qc(L::from_int(n))
}

fn finish<F: CyclotomicLift>(acc: &TSeries<RatFun<F::Lifted>>, t: &TSeries<RatFun<F::Lifted>>) -> Result<TSeries<RatFun<F>>, Genus1Error> {
    let full = acc * &e_shift(t)?;
    Ok(full.try_map_coeffs(|c| RatFun::<F>::contract(c))?)
}

/// The "total contribution" of the Hodge substitution, written term by term
/// over `ζ_12`, with `ω = ζ_12^2`.
pub fn total_contribution_display<F: CyclotomicLift>(tau: &TSeries<F>) -> Result<TSeries<RatFun<F>>, Genus1Error> {
    let t = lifted_tau(tau);
    let one = t.constant_like(RatFun::one());
    let q = RatFun::<F::Lifted>::var(Var::Q);
    let l = F::Lifted::from_int;
    let (i, w, wi, w2, w2i) = (z::<F::Lifted>(3), z::<F::Lifted>(2), z::<F::Lifted>(10), z::<F::Lifted>(4), z::<F::Lifted>(8));
    let lin = |a: F::Lifted, b: F::Lifted| q_lin(a, b);
    let mut acc = t.zero_like();
    // ±1, simple poles
    let c = -(lin(l(5), l(-6))).div(&(lin(l(1), l(-1)).pow(2) * &qi(24)))?;
    acc = &acc + &ec(&t, &l(-1))?.scale(&c);
    let c = lin(l(5), l(6)).div(&(lin(l(1), l(1)).pow(2) * &qi(24)))?;
    acc = &acc + &ec(&t, &l(1))?.scale(&c);
    // ±1, double poles
    let c = (lin(l(1), l(-1)) * &qi(24)).inv()?;
    acc = &acc + &(&(&one - &t) * &ec(&t, &l(-1))?).scale(&c);
    let c = -(lin(l(1), l(1)) * &qi(24)).inv()?;
    acc = &acc + &(&(&one + &t) * &ec(&t, &l(1))?).scale(&c);
    // ±i
    let c = (q.pow(2) + &qi(1)).inv()?.div(&qi(8))?;
    let pair = &ec(&t, &-i.clone())?.scale(&lin(-i.clone(), l(1))) + &ec(&t, &i)?.scale(&lin(i.clone(), l(1)));
    acc = &acc + &pair.scale(&c);
    // primitive sixth roots
    let c = (q.pow(2) - &q + &qi(1)).inv()?.div(&qi(18))?;
    let pair = &ec(&t, &-w.clone())?.scale(&lin(-(l(1) + &w), l(2) - &w)) + &ec(&t, &-wi.clone())?.scale(&lin(-(l(1) + &wi), l(2) - &wi));
    acc = &acc + &pair.scale(&c);
    // primitive cube roots
    let c = (q.pow(2) + &q + &qi(1)).inv()?.div(&qi(18))?;
    let pair = &ec(&t, &-w2.clone())?.scale(&lin(l(1) - &w2, l(2) + &w2)) + &ec(&t, &-w2i.clone())?.scale(&lin(l(1) - &w2i, l(2) + &w2i));
    acc = &acc + &pair.scale(&c);
    finish::<F>(&acc, &t)
}

/// Which version of the simplified closed form to build.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SimplifiedForm {
    /// `Σ_{ζ=±1} (ζτ/(24(1-ζq)) + (5-4ζq)/(24(1-ζq)^2)) e^{-ζτ}
    ///  + Σ_{ζ=±i} e^{-ζ^{-1}τ}/(4(1-ζ^2)(1-ζq)) + Σ_{ζ=ω^{±1},ω^{±2}} e^{-ζ^{-1}τ}/(6(1-ζ^2)(1-ζq))`,
    /// all times `e^{τ/(1-q)}`.
    Corrected,
    /// The same with `τ` for `ζτ`, `e^{ζτ}` for `e^{-ζτ}` and `e^{ζ^{-1}τ}` for
    /// `e^{-ζ^{-1}τ}`; kept to show that this variant does not match.
    AsDisplayed,
}

/// The compact closed form of `⟨⟨1/(1-qL)⟩⟩_{1,1}` along `𝐭 = τ`.
pub fn simplified_display<F: CyclotomicLift>(tau: &TSeries<F>, form: SimplifiedForm) -> Result<TSeries<RatFun<F>>, Genus1Error> {
    let t = lifted_tau(tau);
    let l = F::Lifted::from_int;
    let sign = match form {
        SimplifiedForm::Corrected => l(-1),
        SimplifiedForm::AsDisplayed => l(1),
    };
    let mut acc = t.zero_like();
    for zeta in [l(1), l(-1)] {
        let one_minus = q_lin(-zeta.clone(), l(1));
        let tc = match form {
            SimplifiedForm::Corrected => zeta.clone(),
            SimplifiedForm::AsDisplayed => l(1),
        };
        let lin = t.scale(&qc(tc).div(&(one_minus.clone() * &qi(24)))?);
        let c = q_lin(zeta.clone() * &l(-4), l(5)).div(&(one_minus.pow(2) * &qi(24)))?;
        let e = ec(&t, &(sign.clone() * &zeta))?;
        acc = &acc + &(&(&lin + &t.constant_like(c)) * &e);
    }
    for (k, d) in [(3, 4), (9, 4), (2, 6), (10, 6), (4, 6), (8, 6)] {
        let zeta = z::<F::Lifted>(k);
        let c = (q_lin(-zeta.clone(), l(1)) * &qc((l(1) - &(zeta.clone() * &zeta)) * &l(d))).inv()?;
        acc = &acc + &ec(&t, &(sign.clone() * &zeta.inv()?))?.scale(&c);
    }
    finish::<F>(&acc, &t)
}
