//! Dense univariate polynomials over a [`Field`].

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::scalars::{ArithError, Field};

/// Dense polynomial, coefficients stored low degree first, no trailing zeros.
///
/// The variable is not stored here; [`crate::ratfun::RatFun`] and
/// [`crate::ratfun::LaurentPoly`] carry the name.
#[derive(Clone, PartialEq, Debug)]
pub struct Poly<F> {
    c: Vec<F>,
}

impl<F: Field> Poly<F> {
    pub fn new(mut c: Vec<F>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        Poly { c }
    }

    pub fn zero() -> Self {
        Poly { c: Vec::new() }
    }

    pub fn one() -> Self {
        Poly { c: vec![F::one()] }
    }

    pub fn constant(a: F) -> Self {
        Self::new(vec![a])
    }

    /// `a * x^k`
    pub fn monomial(a: F, k: usize) -> Self {
        if a.is_zero() {
            return Self::zero();
        }
        let mut c = vec![F::zero(); k + 1];
        c[k] = a;
        Poly { c }
    }

    pub fn x() -> Self {
        Self::monomial(F::one(), 1)
    }

    /// `x - a`
    pub fn linear_root(a: &F) -> Self {
        Self::new(vec![-a.clone(), F::one()])
    }

    /// Polynomial with small integer coefficients, low degree first.
    pub fn from_ints(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&v| F::from_int(v)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.c.len() == 1 && self.c[0].is_one()
    }

    /// `None` is the degree of the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn is_constant(&self) -> bool {
        self.c.len() <= 1
    }

    pub fn coeffs(&self) -> &[F] {
        &self.c
    }

    pub fn into_coeffs(self) -> Vec<F> {
        self.c
    }

    pub fn coeff(&self, i: usize) -> F {
        self.c.get(i).cloned().unwrap_or_else(F::zero)
    }

    pub fn lc(&self) -> Option<&F> {
        self.c.last()
    }

    pub fn constant_term(&self) -> F {
        self.coeff(0)
    }

    pub fn scale(&self, a: &F) -> Self {
        if a.is_zero() {
            return Self::zero();
        }
        Self::new(self.c.iter().map(|x| x.clone() * a).collect())
    }

    pub fn monic(&self) -> Self {
        match self.lc() {
            None => Self::zero(),
            Some(l) if l.is_one() => self.clone(),
            Some(l) => self.scale(&l.inv().expect("nonzero leading coefficient")),
        }
    }

    pub fn mul_xk(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut c = vec![F::zero(); k];
        c.extend(self.c.iter().cloned());
        Poly { c }
    }

    /// Multiplicity of the root 0.
    pub fn valuation(&self) -> usize {
        self.c.iter().take_while(|a| a.is_zero()).count()
    }

    /// Drop the first `k` coefficients (exact division by `x^k` when valuation >= k).
    pub fn shift_down(&self, k: usize) -> Self {
        Self::new(self.c.iter().skip(k).cloned().collect())
    }

    /// Remainder modulo `x^n`.
    pub fn truncate(&self, n: usize) -> Self {
        Self::new(self.c.iter().take(n).cloned().collect())
    }

    pub fn eval(&self, a: &F) -> F {
        let mut acc = F::zero();
        for x in self.c.iter().rev() {
            acc = acc * a + x;
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        Self::new(self.c.iter().enumerate().skip(1).map(|(i, x)| x.clone() * &F::from_int(i as i64)).collect())
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// `x^n p(1/x)` for `n >= deg p`.
    pub fn reversed(&self, n: usize) -> Self {
        let mut c = vec![F::zero(); n + 1];
        for (i, x) in self.c.iter().enumerate() {
            c[n - i] = x.clone();
        }
        Self::new(c)
    }

    /// `p(x + a)`.
    pub fn taylor_shift(&self, a: &F) -> Self {
        // repeated synthetic division, O(n^2)
        let mut c = self.c.clone();
        let n = c.len();
        for i in 0..n {
            for j in (i..n.saturating_sub(1)).rev() {
                let t = c[j + 1].clone() * a;
                c[j] = c[j].clone() + &t;
            }
        }
        Self::new(c)
    }

    /// `p(q(x))`.
    pub fn compose(&self, q: &Self) -> Self {
        let mut acc = Self::zero();
        for x in self.c.iter().rev() {
            acc = &(&acc * q) + &Self::constant(x.clone());
        }
        acc
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> Poly<G> {
        Poly::new(self.c.iter().map(f).collect())
    }

    pub fn try_map<G: Field, E>(&self, f: impl Fn(&F) -> Result<G, E>) -> Result<Poly<G>, E> {
        Ok(Poly::new(self.c.iter().map(f).collect::<Result<_, _>>()?))
    }

    pub fn div_rem(&self, d: &Self) -> Result<(Self, Self), ArithError> {
        let dd = d.degree().ok_or(ArithError::DivisionByZero)?;
        let Some(nd) = self.degree() else {
            return Ok((Self::zero(), Self::zero()));
        };
        if nd < dd {
            return Ok((Self::zero(), self.clone()));
        }
        let linv = d.c[dd].inv()?;
        let mut r = self.c.clone();
        let mut q = vec![F::zero(); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let t = r[k + dd].clone() * &linv;
            if t.is_zero() {
                continue;
            }
            for (j, dj) in d.c.iter().enumerate() {
                r[k + j] = r[k + j].clone() - &(t.clone() * dj);
            }
            q[k] = t;
        }
        r.truncate(dd);
        Ok((Self::new(q), Self::new(r)))
    }

    pub fn rem(&self, d: &Self) -> Result<Self, ArithError> {
        Ok(self.div_rem(d)?.1)
    }

    /// Quotient if `d` divides `self` exactly.
    pub fn exact_div(&self, d: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(d).ok()?;
        r.is_zero().then_some(q)
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(a: &Self, b: &Self) -> Self {
        if b.degree() == Some(0) || a.degree() == Some(0) {
            return Self::one();
        }
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_zero() {
            let r = a.rem(&b).expect("b nonzero");
            a = b;
            b = r;
            if b.degree() == Some(0) {
                return Self::one();
            }
        }
        a.monic()
    }

    /// Returns `(g, s, t)` with `s*a + t*b = g = gcd(a, b)` monic.
    pub fn xgcd(a: &Self, b: &Self) -> (Self, Self, Self) {
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (Self::one(), Self::zero());
        let (mut t0, mut t1) = (Self::zero(), Self::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1).expect("r1 nonzero");
            r0 = std::mem::replace(&mut r1, r);
            let s = &s0 - &(&q * &s1);
            s0 = std::mem::replace(&mut s1, s);
            let t = &t0 - &(&q * &t1);
            t0 = std::mem::replace(&mut t1, t);
        }
        match r0.lc().cloned() {
            None => (r0, s0, t0),
            Some(l) => {
                let li = l.inv().expect("nonzero");
                (r0.scale(&li), s0.scale(&li), t0.scale(&li))
            }
        }
    }

    /// Inverse of `self` modulo `m`, if coprime.
    pub fn inv_mod(&self, m: &Self) -> Option<Self> {
        let (g, s, _) = Self::xgcd(self, m);
        g.is_one().then(|| s.rem(m).expect("m nonzero"))
    }

    pub fn squarefree_part(&self) -> Self {
        let d = self.derivative();
        if d.is_zero() {
            return self.monic();
        }
        let g = Self::gcd(self, &d);
        self.exact_div(&g).expect("gcd divides").monic()
    }

    /// Power-series quotient `a / b mod x^n`; requires `b(0) != 0`.
    pub fn series_div(a: &Self, b: &Self, n: usize) -> Result<Self, ArithError> {
        let b0inv = b.constant_term().inv()?;
        let mut out = Vec::with_capacity(n);
        let mut r: Vec<F> = (0..n).map(|i| a.coeff(i)).collect();
        for k in 0..n {
            let ck = r[k].clone() * &b0inv;
            if !ck.is_zero() {
                for (j, bj) in b.c.iter().enumerate().skip(1) {
                    if k + j >= n {
                        break;
                    }
                    r[k + j] = r[k + j].clone() - &(ck.clone() * bj);
                }
            }
            out.push(ck);
        }
        Ok(Self::new(out))
    }

    /// Display with the given variable name, highest degree first.
    pub fn display_with(&self, var: &str) -> String {
        let mut terms = Vec::new();
        for (i, a) in self.c.iter().enumerate().rev() {
            if a.is_zero() {
                continue;
            }
            let body = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            terms.push(crate::scalars::signed_term(a, &body));
        }
        crate::scalars::join_terms(&terms)
    }
}

impl<F: Field> fmt::Display for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with("x"))
    }
}

impl<'a, F: Field> Add<&'a Poly<F>> for &'a Poly<F> {
    type Output = Poly<F>;
    fn add(self, o: &Poly<F>) -> Poly<F> {
        let n = self.c.len().max(o.c.len());
        let mut c = Vec::with_capacity(n);
        for i in 0..n {
            c.push(match (self.c.get(i), o.c.get(i)) {
                (Some(a), Some(b)) => a.clone() + b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            });
        }
        Poly::new(c)
    }
}

impl<'a, F: Field> Sub<&'a Poly<F>> for &'a Poly<F> {
    type Output = Poly<F>;
    fn sub(self, o: &Poly<F>) -> Poly<F> {
        let n = self.c.len().max(o.c.len());
        let mut c = Vec::with_capacity(n);
        for i in 0..n {
            c.push(match (self.c.get(i), o.c.get(i)) {
                (Some(a), Some(b)) => a.clone() - b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => -b.clone(),
                (None, None) => unreachable!(),
            });
        }
        Poly::new(c)
    }
}

impl<'a, F: Field> Mul<&'a Poly<F>> for &'a Poly<F> {
    type Output = Poly<F>;
    fn mul(self, o: &Poly<F>) -> Poly<F> {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut c = vec![F::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                c[i + j] = c[i + j].clone() + &(a.clone() * b);
            }
        }
        Poly::new(c)
    }
}

impl<F: Field> Neg for &Poly<F> {
    type Output = Poly<F>;
    fn neg(self) -> Poly<F> {
        Poly { c: self.c.iter().map(|a| -a.clone()).collect() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{int, Rational};

    type P = Poly<Rational>;

    #[test]
    fn division_and_gcd() {
        // (x^2 - 1) = (x - 1)(x + 1)
        let a = P::from_ints(&[-1, 0, 1]);
        let b = P::from_ints(&[-1, 1]);
        let (q, r) = a.div_rem(&b).unwrap();
        assert_eq!(q, P::from_ints(&[1, 1]));
        assert!(r.is_zero());
        let c = P::from_ints(&[1, 2, 1]);
        assert_eq!(P::gcd(&a, &c), P::from_ints(&[1, 1]));
        assert!(a.div_rem(&P::zero()).is_err());
    }

    #[test]
    fn xgcd_bezout() {
        let a = P::from_ints(&[1, 0, 1]);
        let b = P::from_ints(&[-2, 1]);
        let (g, s, t) = P::xgcd(&a, &b);
        assert!(g.is_one());
        assert_eq!(&(&s * &a) + &(&t * &b), P::one());
    }

    #[test]
    fn taylor_shift_matches_compose() {
        let p = P::from_ints(&[3, -1, 4, 1, -5]);
        let a = int(2);
        let shifted = p.taylor_shift(&a);
        let composed = p.compose(&P::from_ints(&[2, 1]));
        assert_eq!(shifted, composed);
    }

    #[test]
    fn series_division() {
        // 1/(1-x) = 1 + x + x^2 + ...
        let q = P::series_div(&P::one(), &P::from_ints(&[1, -1]), 5).unwrap();
        assert_eq!(q, P::from_ints(&[1, 1, 1, 1, 1]));
    }

    #[test]
    fn zero_degree_sentinel() {
        assert_eq!(P::zero().degree(), None);
        assert_eq!(P::one().degree(), Some(0));
    }
}
