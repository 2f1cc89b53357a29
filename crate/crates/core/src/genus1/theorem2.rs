use std::collections::BTreeMap;

use crate::genus0::{d_closed_forms, promote, tbar_family, tbar_scalar_coeff, DNewForm, InputT};
use crate::ratfun::{CyclotomicLift, RatFun, Var};
use crate::scalars::{rat, Field, Rational};
use crate::tseries::IdealOrder;
use crate::tseries::TSeries;

use super::{
    add_multi, check_cyclotomic_order, check_order, formal_residue_sum_of_products, power_survives, prop31_rhs, CorrelatorTable,
    Genus1Error, ProductSum,
};

type Over<F> = RatFun<RatFun<F>>;

/// How to assemble the derivative of the genus-one potential.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Theorem2Form {
    /// `F_1'(τ) Dτ` as the first term and the exact `D𝐭̄ⁿᵉʷ`.
    Exact,
    /// `⟨⟨1/(1-qL)⟩⟩_{1,1}` as the first term and `D𝐭̄ⁿᵉʷ` carrying an extra
    /// `Dτ`; this combination does not reproduce the one-point function.
    AsStated,
}

/// `D F^tw(y)` for `D y` given: `Σ Res [Dy(1/x) g(x) + Dy(1/x) y(1/x) h(x)] dx/x`
/// over every pole that is not a root of unity ≠ 1 (so including `x = q`), plus ∞.
fn d_ftw<F: CyclotomicLift>(
    y: &TSeries<RatFun<F>>,
    dy: &TSeries<Over<F>>,
    table: &CorrelatorTable,
    n: u32,
) -> Result<TSeries<RatFun<F>>, Genus1Error> {
    let inv = |c: &Over<F>| c.substitute_inverse(Var::X);
    let y = y.map_coeffs(|c| c.map_coeffs(|a| RatFun::constant(Var::Q, a.clone())).with_var(Var::X)).map_coeffs(inv);
    let dy = dy.map_coeffs(inv);
    if power_survives(&y, 2) && !dy.is_zero() {
        let (IdealOrder::Finite(a), IdealOrder::Finite(b)) = (y.ideal_order(), dy.ideal_order()) else { unreachable!() };
        if 2 * a + b <= dy.cutoff() {
            return Err(Genus1Error::MissingCorrelatorData(3));
        }
    }
    let lift = |r: &RatFun<Rational>| r.map_coeffs(|c| RatFun::constant(Var::Q, F::from_rational(c))).with_var(Var::X);
    let g = lift(&table.one_point);
    let h = lift(&table.two_point_unit);
    let dx_x = Over::<F>::var(Var::X).inv()?;
    let one = RatFun::<F>::one();
    let mut sums: BTreeMap<Vec<u32>, ProductSum<RatFun<F>>> = BTreeMap::new();
    for (m, d) in dy.terms() {
        sums.entry(m.clone()).or_default().push((one.clone(), vec![d.clone(), g.clone(), dx_x.clone()]));
        for (m2, c) in y.terms() {
            let mm = add_multi(m, m2);
            if mm.iter().sum::<u32>() <= dy.cutoff() {
                sums.entry(mm).or_default().push((one.clone(), vec![d.clone(), c.clone(), h.clone(), dx_x.clone()]));
            }
        }
    }
    let terms = sums.iter().map(|(m, t)| (m.clone(), formal_residue_sum_of_products(t, n)));
    Ok(TSeries::from_terms(dy.names().clone(), dy.cutoff(), terms))
}

/// The derivative `D = Σ_n w_n(q) ∂_{t_n}` of the genus-one potential,
/// modulo `I^{order-1}`:
/// `F_1'(τ) Dτ + (1/24)(t̄_2/(1-t̄_1) + q/(1-q)) Dτ + D F^tw(𝐭̄ⁿᵉʷ) - D F^tw(𝐭̄ᶠᵃᵏᵉ)`.
/// Requires `2 <= order <= 3`.
pub fn theorem2_rhs<F: CyclotomicLift>(
    input: &InputT<F>,
    order: u32,
    table: &CorrelatorTable,
    form: Theorem2Form,
    n: u32,
) -> Result<TSeries<RatFun<F>>, Genus1Error> {
    check_order(order)?;
    check_cyclotomic_order(n)?;
    if order < 2 {
        return Err(Genus1Error::UnsupportedOrder(order));
    }
    let d = order - 2;
    let fam = tbar_family(input, d)?;
    let tau = &fam.tau;
    let dform = match form {
        Theorem2Form::Exact => DNewForm::Exact,
        Theorem2Form::AsStated => DNewForm::WithSpuriousDTau,
    };
    let forms = d_closed_forms(input, tau, dform)?;
    let first = match form {
        Theorem2Form::Exact => {
            let (a, b) = &table.f1_constants;
            let f1p = &tau.constant_like(F::from_rational(a)) + &tau.scale(&F::from_rational(b));
            &promote(&f1p, Var::Q) * &forms.dtau
        }
        Theorem2Form::AsStated => prop31_rhs(tau, table, n)?,
    };
    let tb1 = tbar_scalar_coeff(input, tau, 1);
    let tb2 = tbar_scalar_coeff(input, tau, 2);
    let ratio = &tb2 * &(&tau.constant_like(F::one()) - &tb1).inv()?;
    let q = RatFun::<F>::var(Var::Q);
    let q_term = q.div(&(RatFun::one() - &q))?;
    let corr = (&(&promote(&ratio, Var::Q) + &promote(&ratio, Var::Q).constant_like(q_term)) * &forms.dtau)
        .scale(&RatFun::constant(Var::Q, F::from_rational(&rat(1, 24))));
    let new = d_ftw(&fam.tbar_new, &forms.dnew, table, n)?;
    let fake = d_ftw(&fam.tbar_fake, &forms.dfake, table, n)?;
    Ok(&(&(&first + &corr) + &new) - &fake)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::genus0::Convention;
    use crate::genus1::reference_first_order;

    fn at_zero(order: u32, form: Theorem2Form) -> TSeries<RatFun<Rational>> {
        let input = InputT::coordinates(4, order - 2, Convention::Monomial);
        theorem2_rhs(&input, order, &CorrelatorTable::point(), form, 12).unwrap()
    }

    #[test]
    fn at_zero_gives_one_point() {
        let t = CorrelatorTable::point();
        assert_eq!(at_zero(2, Theorem2Form::Exact).constant_term(), t.one_point);
        assert_eq!(at_zero(3, Theorem2Form::Exact).constant_term(), t.one_point);
    }

    #[test]
    fn stated_combination_does_not_reproduce_one_point() {
        let t = CorrelatorTable::point();
        assert_ne!(at_zero(2, Theorem2Form::AsStated).constant_term(), t.one_point);
    }

    #[test]
    fn first_order_matches_reference() {
        let r = at_zero(3, Theorem2Form::Exact);
        let refs = reference_first_order(3);
        for (k, expect) in refs.iter().enumerate() {
            let mut m = vec![0; 4];
            m[k] = 1;
            assert_eq!(&r.coefficient(&m).unwrap(), expect, "t{k}");
        }
    }

    #[test]
    fn order_bounds() {
        let input = InputT::coordinates(2, 1, Convention::Monomial);
        let t = CorrelatorTable::point();
        assert_eq!(theorem2_rhs(&input, 1, &t, Theorem2Form::Exact, 12).unwrap_err(), Genus1Error::UnsupportedOrder(1));
        assert_eq!(theorem2_rhs(&input, 4, &t, Theorem2Form::Exact, 12).unwrap_err(), Genus1Error::UnsupportedOrder(4));
    }
}
