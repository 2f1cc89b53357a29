use crate::ratfun::RatFun;
use crate::scalars::{root_of_unity, ArithError, Cyc, Field, Rational};

/// Fields that can enumerate their roots of unity of a given order.
pub trait RootsOfUnity: Field {
    /// All `n`-th roots of unity that lie in the field.
    fn roots_of_unity(n: u32) -> Vec<Self>;
}

impl RootsOfUnity for Rational {
    fn roots_of_unity(n: u32) -> Vec<Self> {
        if n % 2 == 0 {
            vec![Rational::from_int(1), Rational::from_int(-1)]
        } else {
            vec![Rational::from_int(1)]
        }
    }
}

impl RootsOfUnity for Cyc {
    fn roots_of_unity(n: u32) -> Vec<Self> {
        (0..n as i64).map(|j| root_of_unity(j, n)).collect()
    }
}

impl<F: RootsOfUnity> RootsOfUnity for RatFun<F> {
    fn roots_of_unity(n: u32) -> Vec<Self> {
        F::roots_of_unity(n).into_iter().map(|z| RatFun::constant(Default::default(), z)).collect()
    }
}

/// Base change from a field over `Q` to the same field over `Q(ζ_N)`, and back.
pub trait CyclotomicLift: Field {
    type Lifted: Field + RootsOfUnity;
    fn lift(&self) -> Self::Lifted;
    /// Inverse of `lift`; `NotRational` if a cyclotomic coordinate survives.
    fn contract(v: &Self::Lifted) -> Result<Self, ArithError>;
}

impl CyclotomicLift for Rational {
    type Lifted = Cyc;
    fn lift(&self) -> Cyc {
        Cyc::rational(self.clone())
    }
    fn contract(v: &Cyc) -> Result<Self, ArithError> {
        v.as_rational()
    }
}

impl<F: CyclotomicLift> CyclotomicLift for RatFun<F> {
    type Lifted = RatFun<F::Lifted>;
    fn lift(&self) -> Self::Lifted {
        self.map_coeffs(|c| c.lift())
    }
    fn contract(v: &Self::Lifted) -> Result<Self, ArithError> {
        v.try_map_coeffs(|c| F::contract(c))
    }
}
