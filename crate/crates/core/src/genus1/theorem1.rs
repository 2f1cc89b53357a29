use std::collections::BTreeMap;

use crate::genus0::{tbar_family, tbar_scalar_coeff, InputT};
use crate::ratfun::{CyclotomicLift, RatFun, Var};
use crate::scalars::{rat, Field, Rational};
use crate::tseries::TSeries;

use super::{
    add_multi, check_cyclotomic_order, check_order, formal_residue_sum_of_products, lift_rational, power_survives, roots_residue_sum,
    Bivariate, CorrelatorTable, Genus1Error, ProductSum,
};

/// `F_1(τ) = τ⟨1⟩_{1,1} + τ²/2 ⟨1,1⟩_{1,2}`, modulo `I^order`.
pub fn f1_primary<F: Field>(tau: &TSeries<F>, table: &CorrelatorTable, order: u32) -> Result<TSeries<F>, Genus1Error> {
    check_order(order)?;
    let tau = tau.with_cutoff(order - 1);
    let (a, b) = &table.f1_constants;
    let f = &tau.scale(&F::from_rational(a)) + &(&tau * &tau).scale(&F::from_rational(&(b.clone() * rat(1, 2))));
    Ok(f)
}

/// `(1/24) log(∂τ/∂t_0) = -(1/24) log(1 - t̄_1)`.
pub fn logdet_term<F: Field>(input: &InputT<F>, tau: &TSeries<F>) -> Result<TSeries<F>, Genus1Error> {
    let tb1 = tbar_scalar_coeff(input, tau, 1);
    let l = (&tau.constant_like(F::one()) - &tb1).log()?;
    Ok(l.scale(&F::from_rational(&rat(-1, 24))))
}

/// `(1/24) log(∂τ/∂t_0)` by differentiating τ directly; the coordinate `t_0`
/// must be variable 0. The result is exact one degree below `tau`.
pub fn logdet_by_derivative<F: Field>(tau: &TSeries<F>) -> Result<TSeries<F>, Genus1Error> {
    Ok(tau.partial_derivative(0).log()?.scale(&F::from_rational(&rat(1, 24))))
}

/// Which poles the twisted-sector residue sum runs over.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ResidueRoute {
    /// `Σ_{a=0,1,∞} Res_a`, read formally: every pole that is not a root of unity ≠ 1.
    Formal,
    /// `-Σ_{ζ^N=1, ζ≠1} Res_ζ`, each residue taken in `Q(ζ_N)`.
    RootsOfUnity,
}

/// Twisted-sector sum
/// `Σ Res [ y(1/x) ⟨1/(1-xL)⟩_{1,1} + ½ y(1/x)² ⟨1/(1-xL),1⟩_{1,2} ] dx/x`
/// for an input `y(x) ∈ I`, modulo `I^order`.
pub fn ftw1<F: CyclotomicLift>(
    input: &TSeries<RatFun<F>>,
    table: &CorrelatorTable,
    order: u32,
    route: ResidueRoute,
    n: u32,
) -> Result<TSeries<F>, Genus1Error> {
    check_order(order)?;
    check_cyclotomic_order(n)?;
    let y = input.with_cutoff(order - 1).map_coeffs(|c| c.clone().with_var(Var::X).substitute_inverse(Var::X));
    if power_survives(&y, 3) {
        return Err(Genus1Error::MissingCorrelatorData(3));
    }
    let g = lift_rational::<F>(&table.one_point, Var::X);
    let h = lift_rational::<F>(&table.two_point_unit, Var::X);
    let dx_x = RatFun::<F>::var(Var::X).inv()?;
    if route == ResidueRoute::RootsOfUnity {
        let half = RatFun::constant(Var::X, F::from_rational(&rat(1, 2)));
        let integrand = (&y.scale(&g) + &(&y * &y).scale(&(h * &half))).scale(&dx_x);
        return Ok(integrand.try_map_coeffs(|c| roots_residue_sum(c, n, false).map(|r| -r))?);
    }
    let mut sums: BTreeMap<Vec<u32>, ProductSum<F>> = BTreeMap::new();
    for (m, c) in y.terms() {
        sums.entry(m.clone()).or_default().push((F::one(), vec![c.clone(), g.clone(), dx_x.clone()]));
    }
    let half = F::from_rational(&rat(1, 2));
    for (m1, c1) in y.terms() {
        for (m2, c2) in y.terms() {
            let m = add_multi(m1, m2);
            if m.iter().sum::<u32>() <= y.cutoff() {
                sums.entry(m).or_default().push((half.clone(), vec![c1.clone(), c2.clone(), h.clone(), dx_x.clone()]));
            }
        }
    }
    let terms = sums.iter().map(|(m, t)| (m.clone(), formal_residue_sum_of_products(t, n)));
    Ok(TSeries::from_terms(y.names().clone(), y.cutoff(), terms))
}

/// The four pieces of the reconstruction and their sum.
#[derive(Clone, Debug)]
pub struct Theorem1Parts<F> {
    pub tau: TSeries<F>,
    pub f1: TSeries<F>,
    pub logdet: TSeries<F>,
    pub ftw_new: TSeries<F>,
    pub ftw_fake: TSeries<F>,
    pub total: TSeries<F>,
}

/// `F_1(τ) + (1/24) log det(∂τ/∂t_0) + F^tw(𝐭̄ⁿᵉʷ) - F^tw(𝐭̄ᶠᵃᵏᵉ)`, modulo `I^order`.
pub fn theorem1_total<F: CyclotomicLift>(
    input: &InputT<F>,
    order: u32,
    table: &CorrelatorTable,
    n: u32,
) -> Result<Theorem1Parts<F>, Genus1Error> {
    check_order(order)?;
    let fam = tbar_family(input, order - 1)?;
    let f1 = f1_primary(&fam.tau, table, order)?;
    let logdet = logdet_term(input, &fam.tau)?;
    let ftw_new = ftw1(&fam.tbar_new, table, order, ResidueRoute::Formal, n)?;
    let ftw_fake = ftw1(&fam.tbar_fake, table, order, ResidueRoute::Formal, n)?;
    let total = &(&(&f1 + &logdet) + &ftw_new) - &ftw_fake;
    Ok(Theorem1Parts { tau: fam.tau, f1, logdet, ftw_new, ftw_fake, total })
}

/// `𝐭 = s1/(1 - q1 q) + s2/(1 - q2 q)` over `Q(q2)(q1)`: the `s1 s2`
/// coefficient of any function of `𝐭` is its `D_1 D_2` derivative at 0.
pub fn direction_input(order: u32) -> InputT<Bivariate> {
    let q1 = RatFun::var(Var::Q1);
    let q2 = RatFun::constant(Var::Q1, RatFun::var(Var::Q2));
    InputT::directions(&[q1, q2], order.saturating_sub(1))
}

/// Coefficient of `s1 s2`.
pub fn two_point_coefficient<K: Field>(f: &TSeries<K>) -> K {
    f.coefficient(&[1, 1]).unwrap_or_else(|_| K::zero())
}

/// `w_n(q) = q^n / (1-q)^{n+1}`.
pub fn weight(n: usize, v: Var) -> RatFun<Rational> {
    let q = RatFun::<Rational>::var(v);
    q.pow(n as u32).div(&(RatFun::one() - q).pow(n as u32 + 1)).expect("nonzero")
}

/// `D_1 D_2 F |_{𝐭=0}` with `D_i = Σ_n w_n(q_i) ∂_{t_n}`, over the
/// coordinates present in `f`.
pub fn extract_two_point(f: &TSeries<Rational>) -> Bivariate {
    let mut acc = Bivariate::zero().with_var(Var::Q1);
    let w1 = |n| lift_rational::<Rational>(&weight(n, Var::Q1), Var::Q1).map_coeffs(|c| RatFun::constant(Var::Q2, c.clone()));
    let w2 = |n| Bivariate::constant(Var::Q1, weight(n, Var::Q2));
    for (m, c) in f.terms() {
        if m.iter().sum::<u32>() != 2 {
            continue;
        }
        let idx: Vec<usize> = m.iter().enumerate().flat_map(|(i, &e)| std::iter::repeat(i).take(e as usize)).collect();
        let (a, b) = (idx[0], idx[1]);
        let cc = Bivariate::from_rational(c);
        let pair = if a == b { w1(a) * &w2(a) * &Bivariate::from_int(2) } else { w1(a) * &w2(b) + &(w1(b) * &w2(a)) };
        acc = acc + &(cc * &pair);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::genus0::{solve_tau, Convention};
    use crate::scalars::int;

    fn a(v: Var) -> Bivariate {
        let q = weight(1, v).div(&weight(0, v)).unwrap();
        match v {
            Var::Q1 => q.map_coeffs(|c| RatFun::constant(Var::Q2, c.clone())),
            _ => Bivariate::constant(Var::Q1, q),
        }
    }

    fn w00() -> Bivariate {
        let w1 = weight(0, Var::Q1).map_coeffs(|c| RatFun::constant(Var::Q2, c.clone()));
        w1 * &Bivariate::constant(Var::Q1, weight(0, Var::Q2))
    }

    #[test]
    fn f1_at_order_three() {
        let t = CorrelatorTable::point();
        let input = InputT::coordinates(4, 2, Convention::Monomial);
        let tau = solve_tau(&input, 2).unwrap();
        let f1 = f1_primary(&tau, &t, 3).unwrap();
        assert_eq!(f1.to_string(), "t0 + 1/2*t0^2 + t0*t1");
        let two = extract_two_point(&f1);
        let (a1, a2) = (a(Var::Q1), a(Var::Q2));
        assert_eq!(two, (a1 + &a2 + &Bivariate::one()) * &w00());
        assert!(f1_primary(&tau.zero_like(), &t, 3).unwrap().is_zero());
        assert_eq!(f1_primary(&tau, &t, 4).unwrap_err(), Genus1Error::UnsupportedOrder(4));
    }

    #[test]
    fn logdet_two_ways() {
        let input = InputT::coordinates(4, 3, Convention::Monomial);
        let tau = solve_tau(&input, 3).unwrap();
        let direct = logdet_by_derivative(&tau).unwrap();
        let via = logdet_term(&input, &tau).unwrap();
        assert_eq!(via.truncate(2), direct);
        assert_eq!(direct.scale(&int(24)).to_string(), "t1 + t0*t2 + 1/2*t1^2");
        let two = extract_two_point(&direct);
        let (a1, a2) = (a(Var::Q1), a(Var::Q2));
        let expect = (a1.clone() * &a1 + &(a1 * &a2) + &(a2.clone() * &a2)) * &w00() * &Bivariate::from_rational(&rat(1, 24));
        assert_eq!(two, expect);
    }

    #[test]
    fn extraction_is_bilinear() {
        let names = crate::tseries::coordinate_names("t", 2);
        let t0 = TSeries::<Rational>::var(names.clone(), 2, 0);
        let t1 = TSeries::<Rational>::var(names, 2, 1);
        let w = |n, v| match v {
            Var::Q1 => weight(n, v).map_coeffs(|c| RatFun::constant(Var::Q2, c.clone())),
            _ => Bivariate::constant(Var::Q1, weight(n, v)),
        };
        assert_eq!(extract_two_point(&(&t0 * &t1)), w(0, Var::Q1) * &w(1, Var::Q2) + &(w(1, Var::Q1) * &w(0, Var::Q2)));
        assert_eq!(extract_two_point(&(&t0 * &t0).scale(&rat(1, 2))), w00());
    }

    #[test]
    fn zero_input_gives_zero_total() {
        let input = InputT::coordinates(3, 2, Convention::Monomial);
        let z = InputT::from_series(input.series().zero_like()).unwrap();
        let parts = theorem1_total(&z, 3, &CorrelatorTable::point(), 12).unwrap();
        assert!(parts.total.is_zero());
    }

    #[test]
    fn formal_and_root_routes_agree_on_coordinates() {
        let t = CorrelatorTable::point();
        let input = InputT::coordinates(4, 2, Convention::Monomial);
        let fam = crate::genus0::tbar_family(&input, 2).unwrap();
        for y in [&fam.tbar_new, &fam.tbar_fake] {
            let a = ftw1(y, &t, 3, ResidueRoute::Formal, 12).unwrap();
            let b = ftw1(y, &t, 3, ResidueRoute::RootsOfUnity, 12).unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn t0_coefficient_of_total_is_one() {
        let input = InputT::coordinates(3, 2, Convention::Monomial);
        let parts = theorem1_total(&input, 3, &CorrelatorTable::point(), 12).unwrap();
        assert_eq!(parts.total.coefficient(&[1, 0, 0]), Ok(int(1)));
    }

    #[test]
    fn bad_cyclotomic_order() {
        let input = InputT::coordinates(2, 1, Convention::Monomial);
        let r = theorem1_total(&input, 2, &CorrelatorTable::point(), 10);
        assert_eq!(r.unwrap_err(), Genus1Error::CyclotomicOrder(10));
    }
}
