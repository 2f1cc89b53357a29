use qk1_core::genus0::{solve_tau, tbar_family, Convention, InputT};
use qk1_core::genus1::{
    direction_input, ftw1, reference_two_point_at, theorem1_total, two_point_coefficient, Bivariate, CorrelatorTable, ResidueRoute,
};
use qk1_core::ratfun::{local_expansion, Center, RatFun, Var};
use qk1_core::scalars::{int, rat, Field, Rational};

#[test]
fn stored_table_is_consistent() {
    CorrelatorTable::point().verify_integrity().unwrap();
}

/// With `⟨1/(1-qL)⟩_{1,1}` switched off only the second-order term of the
/// twisted sum survives; for the fake input it is the new input's value at
/// `q1 = q2 = 0` (up to the `(1-q1)(1-q2)` from the `τ`-directions).
#[test]
fn second_order_fake_term_is_new_term_at_origin() {
    let input = direction_input(3);
    let fam = tbar_family(&input, 2).unwrap();
    let mut table = CorrelatorTable::point();
    table.one_point = RatFun::zero();
    let scale = (Bivariate::one() - &RatFun::var(Var::Q1)) * &(Bivariate::one() - &RatFun::constant(Var::Q1, RatFun::var(Var::Q2)));
    let fake = two_point_coefficient(&ftw1(&fam.tbar_fake, &table, 3, ResidueRoute::Formal, 12).unwrap()) * &scale;
    let new = two_point_coefficient(&ftw1(&fam.tbar_new, &table, 3, ResidueRoute::Formal, 12).unwrap()) * &scale;
    let at_origin = |f: &Bivariate| f.eval(&RatFun::zero()).unwrap().eval(&int(0)).unwrap();
    assert!(fake.is_constant());
    assert_eq!(at_origin(&fake), at_origin(&new));
    assert_eq!(at_origin(&fake), rat(9, 32) + rat(1, 8) + rat(2, 9));
}

/// Coordinate-mode reconstruction against the double Taylor expansion of the
/// reference in `a_i = q_i/(1-q_i)`: `R/((1+a1)(1+a2)) = Σ ∂_i ∂_j F · a1^i a2^j`.
#[test]
fn coordinate_reconstruction_matches_double_taylor_expansion() {
    const K: usize = 3;
    let input = InputT::coordinates(K, 2, Convention::Monomial);
    let total = theorem1_total(&input, 3, &CorrelatorTable::point(), 12).unwrap().total;

    type A = RatFun<RatFun<Rational>>;
    let a1 = A::var(Var::A);
    let a2 = A::constant(Var::A, RatFun::var(Var::Q2));
    let q_of = |a: &A| a.div(&(A::one() + a)).unwrap();
    let r = reference_two_point_at(&q_of(&a1), &q_of(&a2)).unwrap();
    let g = r.div(&((A::one() + &a1) * &(A::one() + &a2))).unwrap();
    let outer = local_expansion(&g, Center::Zero, K as i64);
    for i in 0..K {
        let inner = local_expansion(&outer.coeff(i as i64), Center::Zero, K as i64);
        for j in 0..K {
            let mut m = vec![0; K];
            m[i] += 1;
            m[j] += 1;
            let c = total.coefficient(&m).unwrap();
            let derivative = if i == j { c * &int(2) } else { c };
            assert_eq!(inner.coeff(j as i64), derivative, "d{i} d{j}");
        }
    }
}

#[test]
fn monomial_convention_is_the_arbitrated_default() {
    assert_eq!(Convention::default(), Convention::Monomial);
    let display = "t0 + t0*t1 + 1/2*t0^2*t2 + t0*t1^2";
    let tau = |c| solve_tau(&InputT::coordinates(4, 3, c), 3).unwrap().to_string();
    assert_eq!(tau(Convention::Monomial), display);
    assert_ne!(tau(Convention::DividedPower), display);
    // both conventions make tbar vanish at q = 1
    for c in [Convention::Monomial, Convention::DividedPower] {
        let fam = tbar_family(&InputT::coordinates(4, 3, c), 3).unwrap();
        assert!(fam.tbar.try_map_coeffs(|f| f.eval(&int(1))).unwrap().is_zero());
    }
}
