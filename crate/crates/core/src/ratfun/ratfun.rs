use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::poly::Poly;
use crate::scalars::{ArithError, Field, Rational};

/// Names of the univariate variables used across the crate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize, Default)]
pub enum Var {
    #[default]
    Q,
    X,
    Q1,
    Q2,
    L,
    W,
    A,
}

impl Var {
    pub fn name(self) -> &'static str {
        match self {
            Var::Q => "q",
            Var::X => "x",
            Var::Q1 => "q1",
            Var::Q2 => "q2",
            Var::L => "L",
            Var::W => "w",
            Var::A => "a",
        }
    }

    pub fn parse(s: &str) -> Option<Var> {
        Some(match s {
            "q" => Var::Q,
            "x" => Var::X,
            "q1" => Var::Q1,
            "q2" => Var::Q2,
            "L" => Var::L,
            "w" => Var::W,
            "a" => Var::A,
            _ => return None,
        })
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Rational function `num/den` in one variable over a coefficient field.
///
/// Canonical form: `gcd(num, den) = 1` and `den` monic. Constants carry a
/// variable too, but it is ignored by comparisons and overridden when a
/// constant meets a non-constant operand.
#[derive(Clone, Debug)]
pub struct RatFun<F> {
    var: Var,
    num: Poly<F>,
    den: Poly<F>,
}

impl<F: Field> RatFun<F> {
    pub fn new(var: Var, num: Poly<F>, den: Poly<F>) -> Result<Self, ArithError> {
        if den.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        Ok(Self::normalize(var, num, den))
    }

    fn normalize(var: Var, num: Poly<F>, den: Poly<F>) -> Self {
        if num.is_zero() {
            return RatFun { var, num, den: Poly::one() };
        }
        let (num, den) = if den.is_constant() {
            (num, den)
        } else {
            let g = Poly::gcd(&num, &den);
            if g.is_one() {
                (num, den)
            } else {
                (num.exact_div(&g).expect("gcd divides"), den.exact_div(&g).expect("gcd divides"))
            }
        };
        Self::make_monic(var, num, den)
    }

    fn make_monic(var: Var, num: Poly<F>, den: Poly<F>) -> Self {
        let l = den.lc().expect("nonzero denominator").clone();
        if l.is_one() {
            RatFun { var, num, den }
        } else {
            let li = l.inv().expect("nonzero");
            RatFun { var, num: num.scale(&li), den: den.scale(&li) }
        }
    }

    pub fn from_poly(var: Var, p: Poly<F>) -> Self {
        RatFun { var, num: p, den: Poly::one() }
    }

    pub fn constant(var: Var, a: F) -> Self {
        Self::from_poly(var, Poly::constant(a))
    }

    /// The variable itself.
    pub fn var(v: Var) -> Self {
        Self::from_poly(v, Poly::x())
    }

    /// `a*v + b`
    pub fn linear(v: Var, a: F, b: F) -> Self {
        Self::from_poly(v, Poly::new(vec![b, a]))
    }

    pub fn variable(&self) -> Var {
        self.var
    }

    pub fn num(&self) -> &Poly<F> {
        &self.num
    }

    pub fn den(&self) -> &Poly<F> {
        &self.den
    }

    pub fn with_var(mut self, v: Var) -> Self {
        self.var = v;
        self
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    pub fn constant_value(&self) -> Option<F> {
        self.is_constant().then(|| self.num.constant_term())
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    pub fn eval(&self, a: &F) -> Result<F, ArithError> {
        let d = self.den.eval(a);
        if d.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        Ok(self.num.eval(a) * &d.inv()?)
    }

    /// `f(1/v)` expressed in the variable `new_var`.
    pub fn substitute_inverse(&self, new_var: Var) -> Self {
        let dn = self.num.degree().unwrap_or(0);
        let dd = self.den.degree().unwrap_or(0);
        let n = dn.max(dd);
        Self::normalize(new_var, self.num.reversed(n), self.den.reversed(n))
    }

    /// Substitute `v -> a*v + b`.
    pub fn substitute_affine(&self, a: &F, b: &F) -> Self {
        let lin = Poly::new(vec![b.clone(), a.clone()]);
        Self::normalize(self.var, self.num.compose(&lin), self.den.compose(&lin))
    }

    pub fn derivative(&self) -> Self {
        let n = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        Self::normalize(self.var, n, &self.den * &self.den)
    }

    pub fn powi(&self, e: i64) -> Result<Self, ArithError> {
        let b = if e < 0 { self.inv()? } else { self.clone() };
        Ok(b.pow(e.unsigned_abs() as u32))
    }

    pub fn map_coeffs<G: Field>(&self, f: impl Fn(&F) -> G) -> RatFun<G> {
        RatFun::normalize(self.var, self.num.map(&f), self.den.map(&f))
    }

    pub fn try_map_coeffs<G: Field, E>(&self, f: impl Fn(&F) -> Result<G, E>) -> Result<RatFun<G>, E> {
        Ok(RatFun::normalize(self.var, self.num.try_map(&f)?, self.den.try_map(&f)?))
    }

    fn pick_var(&self, o: &Self) -> Var {
        if self.is_constant() {
            return o.var;
        }
        if !o.is_constant() && o.var != self.var {
            panic!("mixing rational functions in different variables: {} and {}", self.var, o.var);
        }
        self.var
    }

    /// Canonical string: numerator and denominator expanded, highest degree first.
    /// Over a rational coefficient field both are scaled to coprime integer coefficients.
    pub fn canonical(&self) -> String {
        let v = self.var.name();
        if let Some((n, d)) = self.integer_form() {
            let ns = n.display_with(v);
            if d.is_one() {
                return ns;
            }
            let ds = d.display_with(v);
            let ns = if n.coeffs().iter().filter(|c| !Field::is_zero(*c)).count() > 1 { format!("({ns})") } else { ns };
            let ds = if d.coeffs().iter().filter(|c| !Field::is_zero(*c)).count() > 1
                || d.degree() != Some(0) && !Field::is_one(d.lc().unwrap())
            {
                format!("({ds})")
            } else {
                ds
            };
            return format!("{ns}/{ds}");
        }
        let ns = self.num.display_with(v);
        if self.den.is_one() {
            return ns;
        }
        format!("({ns})/({})", self.den.display_with(v))
    }

    /// Scale numerator and denominator to coprime integer coefficients with positive
    /// leading denominator coefficient; `None` if a coefficient is not rational.
    fn integer_form(&self) -> Option<(Poly<Rational>, Poly<Rational>)> {
        let n: Vec<Rational> = self.num.coeffs().iter().map(|c| c.to_rational()).collect::<Option<_>>()?;
        let d: Vec<Rational> = self.den.coeffs().iter().map(|c| c.to_rational()).collect::<Option<_>>()?;
        let mut l = BigInt::one();
        let mut g = BigInt::zero();
        for c in n.iter().chain(d.iter()) {
            l = l.lcm(c.denom());
            g = g.gcd(c.numer());
        }
        if g.is_zero() {
            g = BigInt::one();
        }
        let s = Rational::new(l, g.abs());
        let scale = |v: &[Rational]| Poly::new(v.iter().map(|c| c * &s).collect());
        Some((scale(&n), scale(&d)))
    }
}

impl<F: Field> PartialEq for RatFun<F> {
    fn eq(&self, o: &Self) -> bool {
        self.num == o.num && self.den == o.den && (self.var == o.var || self.is_constant())
    }
}

impl<F: Field> fmt::Display for RatFun<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.canonical())
    }
}

impl<F: Field> Add<&RatFun<F>> for RatFun<F> {
    type Output = RatFun<F>;
    fn add(self, o: &RatFun<F>) -> RatFun<F> {
        let var = self.pick_var(o);
        if o.num.is_zero() {
            return self.with_var(var);
        }
        if self.num.is_zero() {
            return o.clone().with_var(var);
        }
        if self.den == o.den {
            return RatFun::normalize(var, &self.num + &o.num, self.den);
        }
        if o.den.is_one() {
            return RatFun { var, num: &self.num + &(&o.num * &self.den), den: self.den };
        }
        if self.den.is_one() {
            return RatFun { var, num: &o.num + &(&self.num * &o.den), den: o.den.clone() };
        }
        let g = Poly::gcd(&self.den, &o.den);
        if g.is_one() {
            let num = &(&self.num * &o.den) + &(&o.num * &self.den);
            let den = &self.den * &o.den;
            return RatFun::make_monic(var, num, den);
        }
        let b1 = self.den.exact_div(&g).expect("gcd divides");
        let d1 = o.den.exact_div(&g).expect("gcd divides");
        let num = &(&self.num * &d1) + &(&o.num * &b1);
        let h = Poly::gcd(&num, &g);
        let (num, g) = if h.is_one() || num.is_zero() { (num, g) } else { (num.exact_div(&h).unwrap(), g.exact_div(&h).unwrap()) };
        let den = &(&b1 * &d1) * &g;
        RatFun::normalize_light(var, num, den)
    }
}

impl<F: Field> RatFun<F> {
    fn normalize_light(var: Var, num: Poly<F>, den: Poly<F>) -> Self {
        if num.is_zero() {
            return RatFun { var, num, den: Poly::one() };
        }
        Self::make_monic(var, num, den)
    }
}

impl<F: Field> Mul<&RatFun<F>> for RatFun<F> {
    type Output = RatFun<F>;
    fn mul(self, o: &RatFun<F>) -> RatFun<F> {
        let var = self.pick_var(o);
        if self.num.is_zero() || o.num.is_zero() {
            return RatFun { var, num: Poly::zero(), den: Poly::one() };
        }
        if o.is_constant() {
            let c = o.num.constant_term() * &o.den.constant_term().inv().unwrap();
            return RatFun { var, num: self.num.scale(&c), den: self.den };
        }
        if self.is_constant() {
            let c = self.num.constant_term() * &self.den.constant_term().inv().unwrap();
            return RatFun { var, num: o.num.scale(&c), den: o.den.clone() };
        }
        let g1 = Poly::gcd(&self.num, &o.den);
        let g2 = Poly::gcd(&o.num, &self.den);
        let (a, d) =
            if g1.is_one() { (self.num, o.den.clone()) } else { (self.num.exact_div(&g1).unwrap(), o.den.exact_div(&g1).unwrap()) };
        let (c, b) =
            if g2.is_one() { (o.num.clone(), self.den) } else { (o.num.exact_div(&g2).unwrap(), self.den.exact_div(&g2).unwrap()) };
        RatFun::make_monic(var, &a * &c, &b * &d)
    }
}

impl<F: Field> Sub<&RatFun<F>> for RatFun<F> {
    type Output = RatFun<F>;
    fn sub(self, o: &RatFun<F>) -> RatFun<F> {
        self + &(-o.clone())
    }
}

impl<F: Field> Neg for RatFun<F> {
    type Output = RatFun<F>;
    fn neg(self) -> RatFun<F> {
        RatFun { var: self.var, num: -&self.num, den: self.den }
    }
}

impl<F: Field> Add for RatFun<F> {
    type Output = RatFun<F>;
    fn add(self, o: Self) -> Self {
        self + &o
    }
}
impl<F: Field> Sub for RatFun<F> {
    type Output = RatFun<F>;
    fn sub(self, o: Self) -> Self {
        self - &o
    }
}
impl<F: Field> Mul for RatFun<F> {
    type Output = RatFun<F>;
    fn mul(self, o: Self) -> Self {
        self * &o
    }
}

impl<F: Field> Field for RatFun<F> {
    fn zero() -> Self {
        RatFun { var: Var::default(), num: Poly::zero(), den: Poly::one() }
    }
    fn one() -> Self {
        RatFun { var: Var::default(), num: Poly::one(), den: Poly::one() }
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }
    fn inv(&self) -> Result<Self, ArithError> {
        if self.num.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        Ok(Self::make_monic(self.var, self.den.clone(), self.num.clone()))
    }
    fn from_rational(r: &Rational) -> Self {
        Self::constant(Var::default(), F::from_rational(r))
    }
    fn to_rational(&self) -> Option<Rational> {
        self.constant_value()?.to_rational()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{int, rat};

    type R = RatFun<Rational>;

    fn q() -> R {
        R::var(Var::Q)
    }
    fn c(n: i64) -> R {
        R::from_int(n)
    }

    #[test]
    fn sum_of_geometric_pieces() {
        let a = c(1).div(&(c(1) - q())).unwrap();
        let b = c(1).div(&(c(1) + q())).unwrap();
        let expect = c(2).div(&(c(1) - q() * q())).unwrap();
        assert_eq!(a + &b, expect);
    }

    #[test]
    fn geometric_factor_cancels() {
        let f = (c(1) - q().pow(4)).div(&(c(1) - q())).unwrap();
        assert_eq!(f, R::from_poly(Var::Q, Poly::from_ints(&[1, 1, 1, 1])));
        assert!(f.is_polynomial());
    }

    #[test]
    fn two_forms_of_the_minus_one_part_agree() {
        // (9q+7)/(32(q+1)^2) = 9/(32(q+1)) - 1/(16(q+1)^2)
        let p1 = q() + &c(1);
        let lhs = (q() * &R::from_rational(&int(9)) + &c(7)).div(&(c(32) * &p1 * &p1)).unwrap();
        let rhs = R::from_rational(&rat(9, 32)).div(&p1).unwrap() - &R::from_rational(&rat(1, 16)).div(&(p1.clone() * &p1)).unwrap();
        assert!((lhs - &rhs).is_zero());
    }

    #[test]
    fn inverse_substitution() {
        let x = R::var(Var::X);
        assert_eq!(q().substitute_inverse(Var::X), c(1).div(&x).unwrap());
        let f = c(1).div(&(c(1) - q().pow(4))).unwrap();
        let expect = x.pow(4).div(&(x.pow(4) - &c(1))).unwrap();
        assert_eq!(f.substitute_inverse(Var::X), expect);
        // 1/(q(1-q^-4)(1-q^-6)) -> x/((1-x^4)(1-x^6))
        let qi = c(1).div(&q()).unwrap();
        let g = c(1).div(&(q() * &(c(1) - qi.pow(4)) * &(c(1) - qi.pow(6)))).unwrap();
        let expect = x.div(&((c(1) - x.pow(4)) * &(c(1) - x.pow(6)))).unwrap();
        assert_eq!(g.substitute_inverse(Var::X), expect);
    }

    #[test]
    fn canonical_display() {
        let f = c(1).div(&((c(1) - q().pow(4)) * &(c(1) - q().pow(6)))).unwrap();
        assert_eq!(f.canonical(), "1/(q^10 - q^6 - q^4 + 1)");
        let g = (q() * &c(9) + &c(7)).div(&(c(32) * &(q() + &c(1)).pow(2))).unwrap();
        assert_eq!(g.canonical(), "(9*q + 7)/(32*q^2 + 64*q + 32)");
        assert_eq!(R::from_rational(&rat(-3, 4)).canonical(), "-3/4");
        assert_eq!(q().canonical(), "q");
    }

    #[test]
    fn division_by_zero() {
        assert_eq!(q().div(&R::zero()), Err(ArithError::DivisionByZero));
        assert!(R::new(Var::Q, Poly::one(), Poly::zero()).is_err());
    }

    #[test]
    fn evaluation() {
        let f = c(1).div(&(c(1) - q())).unwrap();
        assert_eq!(f.eval(&int(3)).unwrap(), rat(-1, 2));
        assert!(f.eval(&int(1)).is_err());
    }
}
