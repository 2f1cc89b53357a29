use proptest::prelude::*;

use num_bigint::BigInt;
use qk1_core::expr::Expr;
use qk1_core::genus0::{solve_tau, Convention, InputT};
use qk1_core::poly::Poly;
use qk1_core::ratfun::{
    cyclotomic_partial_fractions, laurent_part, laurent_part_by_residues, omega_pair, partial_fractions, residue_at, residue_sum, Center,
    CyclotomicLift, LaurentPoly, PoleSet, RatFun, Var,
};
use qk1_core::scalars::{int, rat, root_of_unity, Cyc, Field, Rational};
use qk1_core::tseries::{coordinate_names, TSeries};
use qk1_core::verify::lemma_expansion_holds;

type R = RatFun<Rational>;

fn poly(c: &[i64]) -> Poly<Rational> {
    Poly::new(c.iter().map(|&a| int(a)).collect())
}

/// Denominator: a random factor times cyclotomic-type factors and a power of `q`.
fn ratfun() -> impl Strategy<Value = R> {
    (
        prop::collection::vec(-5i64..=5, 1..6),
        prop::collection::vec(-5i64..=5, 1..4),
        prop::collection::vec(prop::sample::select(vec![1usize, 2, 3, 4, 6, 12]), 0..3),
        0usize..3,
    )
        .prop_filter_map("zero denominator", |(n, d, cyc, k)| {
            let mut den = poly(&d);
            for m in cyc {
                den = &den * &(&Poly::one() - &Poly::monomial(int(1), m));
            }
            RatFun::new(Var::Q, poly(&n), den.mul_xk(k)).ok()
        })
}

/// Like [`ratfun`] but with a denominator that splits over `Q(ζ_12)`.
fn split_ratfun() -> impl Strategy<Value = R> {
    (
        prop::collection::vec(-5i64..=5, 1..6),
        prop::collection::vec((-4i64..=4, 1i64..=3), 0..3),
        prop::collection::vec(prop::sample::select(vec![1usize, 2, 3, 4, 6, 12]), 0..3),
        0usize..3,
    )
        .prop_map(|(n, roots, cyc, k)| {
            let mut den = Poly::one();
            for (a, b) in roots {
                den = &den * &Poly::linear_root(&rat(a, b));
            }
            for m in cyc {
                den = &den * &(&Poly::one() - &Poly::monomial(int(1), m));
            }
            RatFun::new(Var::Q, poly(&n), den.mul_xk(k)).expect("nonzero")
        })
}

fn laurent() -> impl Strategy<Value = LaurentPoly<Rational>> {
    prop::collection::vec((-6i64..=6, -5i64..=5, 1i64..=3), 1..5)
        .prop_map(|t| LaurentPoly::from_terms(Var::Q, t.into_iter().map(|(e, n, d)| (e, rat(n, d)))))
}

fn series() -> impl Strategy<Value = TSeries<Rational>> {
    prop::collection::vec((prop::collection::vec(0u32..=2, 3), -4i64..=4, 1i64..=4), 0..6).prop_map(|terms| {
        let mut s = TSeries::zero(coordinate_names("t", 3), 4);
        for (m, n, d) in terms {
            if m.iter().sum::<u32>() > 0 {
                s.add_term(m, rat(n, d));
            }
        }
        s
    })
}

fn expr() -> impl Strategy<Value = Expr> {
    let leaf = prop_oneof![
        (0i64..20).prop_map(|n| Expr::Int(BigInt::from(n))),
        prop::sample::select(vec![Var::Q, Var::X, Var::Q1, Var::Q2]).prop_map(Expr::Var),
    ];
    leaf.prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(|a| Expr::Neg(Box::new(a))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Add(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Sub(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Mul(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Div(Box::new(a), Box::new(b))),
            (inner, -3i64..=3).prop_map(|(a, e)| Expr::Pow(Box::new(a), e)),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_operations_invert(f in ratfun(), g in ratfun()) {
        prop_assert_eq!((f.clone() + &g) - &g, f.clone());
        prop_assume!(!g.is_zero());
        prop_assert_eq!((f.clone() * &g).div(&g).unwrap(), f);
    }

    #[test]
    fn all_residues_sum_to_zero(f in ratfun()) {
        let finite = residue_sum(&f, PoleSet::NonRootsOfUnity { order: 12, include_one: true })
            + &residue_sum(&f, PoleSet::RootsOfUnity { order: 12, include_one: false });
        prop_assert_eq!(finite + &residue_at(&f, Center::Infinity), int(0));
    }

    #[test]
    fn laurent_part_routes_agree_and_are_idempotent(f in ratfun()) {
        let a = laurent_part(&f);
        prop_assert_eq!(laurent_part_by_residues(&f).unwrap(), a.clone());
        prop_assert_eq!(laurent_part(&a.to_ratfun()), a);
    }

    #[test]
    fn omega_is_antisymmetric(f in ratfun(), g in ratfun()) {
        prop_assert_eq!(omega_pair(&f, &g), -omega_pair(&g, &f));
    }

    #[test]
    fn laurent_expansion_identity(x in laurent()) {
        prop_assert!(lemma_expansion_holds(&x, 6));
    }

    #[test]
    fn exp_log_round_trip(s in series()) {
        prop_assert_eq!(s.exp().unwrap().log().unwrap(), s.clone());
        let one_plus = &s.constant_like(int(1)) + &s;
        prop_assert_eq!(one_plus.log().unwrap().exp().unwrap(), one_plus);
    }

    #[test]
    fn inverse_substitution_is_an_involution(f in ratfun()) {
        prop_assert_eq!(f.substitute_inverse(Var::Q).substitute_inverse(Var::Q), f);
    }

    #[test]
    fn partial_fractions_recombine(f in split_ratfun()) {
        let lifted = f.lift();
        let pf = partial_fractions(&lifted, 12).unwrap();
        prop_assert_eq!(pf.recombine(), lifted);
    }

    #[test]
    fn cyclotomic_groups_recombine(f in ratfun()) {
        let (p, groups) = cyclotomic_partial_fractions(&f, 12).unwrap();
        let sum = groups.iter().fold(RatFun::from_poly(Var::Q, p), |acc, (_, g)| acc + g);
        prop_assert_eq!(sum, f);
    }

    #[test]
    fn cyclotomic_contract_inverts_lift(n in -20i64..20, d in 1i64..20, k in 0i64..12) {
        let a = rat(n, d);
        prop_assert_eq!(<Rational as CyclotomicLift>::contract(&a.lift()).unwrap(), a.clone());
        let z = root_of_unity(k, 12);
        prop_assert_eq!(z.pow(12), Cyc::one());
        let s = z.clone() * &Cyc::rational(a) + &z.conj();
        prop_assert_eq!(s.conj().conj(), s);
    }

    #[test]
    fn print_parse_is_a_fixed_point(e in expr()) {
        let p = e.to_string();
        let back = Expr::parse(&p).unwrap();
        prop_assert_eq!(back.to_string(), p);
    }

    #[test]
    fn tau_truncates_consistently(lo in 1u32..4, extra in 1u32..3) {
        let hi = lo + extra;
        let a = solve_tau(&InputT::coordinates(hi as usize + 1, hi, Convention::Monomial), hi).unwrap();
        let b = solve_tau(&InputT::coordinates(hi as usize + 1, lo, Convention::Monomial), lo).unwrap();
        prop_assert_eq!(a.truncate(lo), b);
    }
}
