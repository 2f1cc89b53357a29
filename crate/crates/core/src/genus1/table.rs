use crate::poly::Poly;
use crate::ratfun::{CyclotomicLift, RatFun, Var};
use crate::scalars::{int, root_of_unity, Cyc, Field, Rational};

use super::{Bivariate, Genus1Error};

/// Closed-form genus-one correlators of the point.
#[derive(Clone, Debug)]
pub struct CorrelatorTable {
    /// `⟨1/(1-qL)⟩_{1,1}`
    pub one_point: RatFun<Rational>,
    /// `⟨1/(1-qL), 1⟩_{1,2}`
    pub two_point_unit: RatFun<Rational>,
    /// Partial-fraction atoms of `χ(M_{1,1}, 1/(1-x𝓗*) · 1/(1-qL))`, in `x` over `Q(q)`.
    pub hodge_atoms: Vec<Bivariate>,
    /// `(⟨1⟩_{1,1}, ⟨1,1⟩_{1,2})`
    pub f1_constants: (Rational, Rational),
}

fn q_poly(c: &[i64]) -> RatFun<Rational> {
    RatFun::from_poly(Var::Q, Poly::from_ints(c))
}

fn x_poly(c: &[i64]) -> Bivariate {
    RatFun::from_poly(Var::X, Poly::new(c.iter().map(|&a| RatFun::from_int(a)).collect()))
}

/// `1 - q^k`
fn one_minus(k: usize) -> RatFun<Rational> {
    let mut c = vec![0; k + 1];
    c[0] = 1;
    c[k] = -1;
    q_poly(&c)
}

/// `(a / b) · (c / d)` with `a, b` in `q` and `c, d` in `x`.
fn atom(a: RatFun<Rational>, b: RatFun<Rational>, c: Bivariate, d: Bivariate) -> Bivariate {
    let qa = RatFun::constant(Var::X, a.div(&b).expect("nonzero"));
    qa * &c.div(&d).expect("nonzero")
}

impl CorrelatorTable {
    /// The point target.
    pub fn point() -> Self {
        let one_point = (one_minus(4) * &one_minus(6)).inv().expect("nonzero");
        let two_point_unit = (one_minus(2) * &one_minus(3) * &one_minus(4)).inv().expect("nonzero");
        let c = |n: i64| RatFun::<Rational>::from_int(n);
        let qm1 = q_poly(&[-1, 1]);
        let qp1 = q_poly(&[1, 1]);
        let hodge_atoms = vec![
            atom(q_poly(&[-6, 5]), c(24) * &qm1.pow(2), x_poly(&[1]), x_poly(&[-1, 1])),
            atom(q_poly(&[6, 5]), c(24) * &qp1.pow(2), x_poly(&[1]), x_poly(&[1, 1])),
            atom(c(1), c(24) * &qm1, x_poly(&[1]), x_poly(&[-1, 1]).pow(2)),
            atom(c(-1), c(24) * &qp1, x_poly(&[1]), x_poly(&[1, 1]).pow(2)),
            // (qx + 1) / (4(q²+1)(x²+1))
            {
                let qx = RatFun::constant(Var::X, RatFun::var(Var::Q)) * &RatFun::var(Var::X);
                let num = qx + &RatFun::one();
                atom(c(1), c(4) * &q_poly(&[1, 0, 1]), num, x_poly(&[1, 0, 1]))
            },
            {
                let qx = RatFun::constant(Var::X, RatFun::var(Var::Q)) * &RatFun::var(Var::X);
                let num = qx + &RatFun::constant(Var::X, q_poly(&[1, -1]));
                atom(c(1), c(6) * &q_poly(&[1, -1, 1]), num, x_poly(&[1, -1, 1]))
            },
            {
                let qx = RatFun::constant(Var::X, RatFun::var(Var::Q)) * &RatFun::var(Var::X);
                let num = qx + &RatFun::constant(Var::X, q_poly(&[1, 1]));
                atom(c(1), c(6) * &q_poly(&[1, 1, 1]), num, x_poly(&[1, 1, 1]))
            },
        ];
        CorrelatorTable { one_point, two_point_unit, hodge_atoms, f1_constants: (int(1), int(1)) }
    }

    pub fn hodge_mixed(&self) -> Bivariate {
        self.hodge_atoms.iter().fold(RatFun::zero().with_var(Var::X), |a, b| a + b)
    }

    /// Re-derives each stored value from an independent form.
    pub fn verify_integrity(&self) -> Result<(), Genus1Error> {
        let pf = one_point_from_partial_fractions(Var::Q);
        if pf != self.one_point {
            return Err(Genus1Error::TableIntegrity(format!("one_point {} != {}", self.one_point, pf)));
        }
        let five = five_term_display();
        let h = five.div(&one_minus(1))?;
        if h != self.two_point_unit {
            return Err(Genus1Error::TableIntegrity(format!("two_point_unit {} != {}", self.two_point_unit, h)));
        }
        let at_zero = self.hodge_mixed().eval(&RatFun::zero())?;
        if at_zero != self.one_point {
            return Err(Genus1Error::TableIntegrity(format!("hodge_mixed(0, q) = {at_zero}")));
        }
        let (a, b) = &self.f1_constants;
        if *a != self.one_point.eval(&int(0))? || *b != self.two_point_unit.eval(&int(0))? {
            return Err(Genus1Error::TableIntegrity("f1 constants".into()));
        }
        Ok(())
    }
}

/// `Σ_{ζ=±1} (5-4ζv)/(24(1-ζv)²) + Σ_{ζ=±i} 1/(4(1-ζ²)(1-ζv)) + Σ_{ζ=ω^{±1,±2}} 1/(6(1-ζ²)(1-ζv))`
/// summed in `Q(ζ_12)` and brought back to `Q`.
pub fn one_point_from_partial_fractions(v: Var) -> RatFun<Rational> {
    let one = RatFun::<Cyc>::one();
    let var = RatFun::<Cyc>::var(v);
    let k = |a: Cyc| RatFun::constant(v, a);
    let mut acc = RatFun::zero().with_var(v);
    for z in [Cyc::from_int(1), Cyc::from_int(-1)] {
        let l = one.clone() - &(k(z.clone()) * &var);
        let num = k(Cyc::from_int(5)) - &(k(z.clone() * &Cyc::from_int(4)) * &var);
        acc = acc + &num.div(&(k(Cyc::from_int(24)) * &l.pow(2))).unwrap();
    }
    let simple = |zs: &[i64], c: i64, acc: RatFun<Cyc>| {
        let mut acc = acc;
        for &j in zs {
            let z = root_of_unity(j, 12);
            let l = one.clone() - &(k(z.clone()) * &var);
            let pre = k(Cyc::from_int(c) * &(Cyc::one() - z.clone() * &z));
            acc = acc + &(pre * &l).inv().unwrap();
        }
        acc
    };
    acc = simple(&[3, 9], 4, acc);
    acc = simple(&[2, 10, 4, 8], 6, acc);
    <RatFun<Rational> as CyclotomicLift>::contract(&acc).expect("conjugate sums are rational")
}

/// `(3q+4)/(8(q+1)²) - q/(4(q²+1)) + 1/(3(q²+q+1)) + 1/(24(1-q)²) + 1/(8(1-q))`,
/// a decomposition of `1/((1+q)(1-q³)(1-q⁴))`.
pub fn five_term_display() -> RatFun<Rational> {
    let c = |a: i64| RatFun::<Rational>::from_int(a);
    let q = RatFun::<Rational>::var(Var::Q);
    let one_minus_q = c(1) - q.clone();
    [
        q_poly(&[4, 3]).div(&(c(8) * &q_poly(&[1, 1]).pow(2))).unwrap(),
        -(q.div(&(c(4) * &q_poly(&[1, 0, 1]))).unwrap()),
        (c(3) * &q_poly(&[1, 1, 1])).inv().unwrap(),
        (c(24) * &one_minus_q.pow(2)).inv().unwrap(),
        (c(8) * &one_minus_q).inv().unwrap(),
    ]
    .into_iter()
    .fold(RatFun::zero(), |a, b| a + &b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn point_table_is_consistent() {
        let t = CorrelatorTable::point();
        t.verify_integrity().unwrap();
        assert_eq!(t.one_point.canonical(), "1/(q^10 - q^6 - q^4 + 1)");
        assert_eq!(t.hodge_atoms.len(), 7);
    }

    #[test]
    fn flipping_the_second_order_pole_at_minus_one_breaks_the_constant_term() {
        let mut t = CorrelatorTable::point();
        t.hodge_atoms[3] = -t.hodge_atoms[3].clone();
        assert!(matches!(t.verify_integrity(), Err(Genus1Error::TableIntegrity(_))));
        // the defect is exactly 1/(12(q+1)(x+1)^2)
        let good = CorrelatorTable::point().hodge_mixed();
        let d = t.hodge_mixed() - &good;
        let expect = atom(RatFun::from_int(1), RatFun::from_int(12) * &q_poly(&[1, 1]), x_poly(&[1]), x_poly(&[1, 1]).pow(2));
        assert_eq!(d, expect);
    }

    #[test]
    fn five_term_decomposition_recombines() {
        let f = (q_poly(&[1, 1]) * &one_minus(3) * &one_minus(4)).inv().unwrap();
        assert_eq!(five_term_display(), f);
    }
}
