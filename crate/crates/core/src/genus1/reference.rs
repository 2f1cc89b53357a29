use crate::ratfun::{local_expansion, Center, RatFun, Var};
use crate::scalars::{rat, ArithError, Field, Rational};

use super::Bivariate;

/// The known closed form of `⟨1/(1-q1 L), 1/(1-q2 L)⟩_{1,2}` for the point,
/// evaluated at field elements `q1`, `q2`.
pub fn reference_two_point_at<K: Field>(q1: &K, q2: &K) -> Result<K, ArithError> {
    let one = K::one();
    let c = |a: i64, b: i64| K::from_rational(&rat(a, b));
    let om = |z: &K, k: u32| one.clone() - z.pow(k);
    let p = q1.clone() * q2;
    let mut acc = (om(q1, 1) * &om(q2, 2) * &om(q2, 3) * &om(q2, 4)).inv()?;
    acc = acc + &(om(q2, 1) * &om(q1, 2) * &om(q1, 3) * &om(q1, 4)).inv()?;
    acc = acc - (om(q1, 1) * &om(q2, 1)).inv()?;
    acc = acc + &(c(1, 24) * &p * &(om(q1, 1).pow(2) * &om(q2, 1).pow(2)).inv()?);
    let r1 = q1.clone() * &(one.clone() + q1).inv()?;
    let r2 = q2.clone() * &(one.clone() + q2).inv()?;
    let paren = c(11, 1) - (c(2, 1) * &r1) - (c(2, 1) * &r2);
    acc = acc + &(c(1, 8) * &p * &(om(q1, 2) * &om(q2, 2)).inv()? * &paren);
    let base = p.clone() * &(om(q1, 1) * &om(q2, 1)).inv()?;
    let s = q1.clone() + q2;
    let n4 = one.clone() + &s - p.clone();
    let d4 = (one.clone() + &q1.pow(2)) * &(one.clone() + &q2.pow(2));
    acc = acc + &(c(1, 4) * &base * &n4 * &d4.inv()?);
    let n3 = one.clone() + &(c(2, 1) * &s) + &p;
    let d3 = (one.clone() + q1 + &q1.pow(2)) * &(one.clone() + q2 + &q2.pow(2));
    acc = acc + &(c(1, 3) * &base * &n3 * &d3.inv()?);
    Ok(acc)
}

/// The reference two-point function in `Q(q2)(q1)`.
pub fn reference_two_point() -> Bivariate {
    let q1 = RatFun::var(Var::Q1);
    let q2 = RatFun::constant(Var::Q1, RatFun::var(Var::Q2));
    reference_two_point_at(&q1, &q2).expect("generic point")
}

/// `[a^n] R(q, a/(1+a)) / (1+a)` for `n = 0..=max`, i.e. the reference paired
/// with `∂/∂t_n` in the second slot.
pub fn reference_first_order(max: usize) -> Vec<RatFun<Rational>> {
    type A = RatFun<RatFun<Rational>>;
    let a = A::var(Var::A);
    let q = A::constant(Var::A, RatFun::var(Var::Q));
    let one_plus = A::one() + &a;
    let q2 = a.div(&one_plus).unwrap();
    let g = reference_two_point_at(&q, &q2).unwrap().div(&one_plus).unwrap();
    let e = local_expansion(&g, Center::Zero, max as i64);
    (0..=max as i64).map(|k| e.coeff(k)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::int;

    #[test]
    fn symmetric_and_normalized() {
        let r = reference_two_point();
        let swapped = reference_two_point_at(&RatFun::constant(Var::Q1, RatFun::var(Var::Q2)), &RatFun::var(Var::Q1)).unwrap();
        assert_eq!(r, swapped);
        let v = reference_two_point_at(&int(0), &int(0)).unwrap();
        assert_eq!(v, int(1));
    }

    #[test]
    fn second_slot_at_zero_is_the_unit_two_point_function() {
        let t = super::super::CorrelatorTable::point();
        let q = RatFun::<Rational>::var(Var::Q);
        assert_eq!(reference_two_point_at(&q, &RatFun::zero()).unwrap(), t.two_point_unit);
        assert_eq!(reference_two_point_at(&RatFun::zero(), &q).unwrap(), t.two_point_unit);
    }

    #[test]
    fn first_order_constant_term() {
        let v = reference_first_order(1);
        // a = 0 sets q2 = 0, leaving R(q, 0) = ⟨1/(1-qL), 1⟩-type data
        let direct = reference_two_point_at(&RatFun::var(Var::Q), &RatFun::zero()).unwrap();
        assert_eq!(v[0], direct);
    }
}
