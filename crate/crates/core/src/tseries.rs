//! Truncated multivariate power series in named coordinates, with the
//! ideal-adic fixed-point solver used for τ.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use crate::scalars::{int, join_terms, signed_term, Field};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SeriesError {
    #[error("exp needs a series with zero constant term")]
    NonzeroConstantTerm,
    #[error("log needs a series with constant term 1")]
    ConstantTermNotOne,
    #[error("multi-index of degree {degree} is beyond cutoff {cutoff}")]
    IndexBeyondCutoff { degree: u32, cutoff: u32 },
    #[error("fixed-point iteration stalled at step {step}: ideal order did not increase")]
    NoContraction { step: usize },
    #[error("series have different coordinates")]
    IncompatibleVariables,
}

/// Order of a series in the ideal generated by its coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum IdealOrder {
    Finite(u32),
    Infinity,
}

impl fmt::Display for IdealOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IdealOrder::Finite(n) => write!(f, "{n}"),
            IdealOrder::Infinity => f.write_str("inf"),
        }
    }
}

/// Names `prefix0 … prefix{n-1}`.
pub fn coordinate_names(prefix: &str, n: usize) -> Arc<[String]> {
    (0..n).map(|i| format!("{prefix}{i}")).collect()
}

/// Power series in `names.len()` variables, exact modulo total degree `cutoff + 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct TSeries<C> {
    names: Arc<[String]>,
    cutoff: u32,
    terms: BTreeMap<Vec<u32>, C>,
}

fn degree(m: &[u32]) -> u32 {
    m.iter().sum()
}

impl<C: Field> TSeries<C> {
    pub fn zero(names: Arc<[String]>, cutoff: u32) -> Self {
        TSeries { names, cutoff, terms: BTreeMap::new() }
    }

    pub fn constant(names: Arc<[String]>, cutoff: u32, c: C) -> Self {
        let mut s = Self::zero(names, cutoff);
        let z = vec![0; s.nvars()];
        s.add_term(z, c);
        s
    }

    pub fn one(names: Arc<[String]>, cutoff: u32) -> Self {
        Self::constant(names, cutoff, C::one())
    }

    /// The coordinate `names[i]`.
    pub fn var(names: Arc<[String]>, cutoff: u32, i: usize) -> Self {
        let mut s = Self::zero(names, cutoff);
        let mut m = vec![0; s.nvars()];
        m[i] = 1;
        s.add_term(m, C::one());
        s
    }

    /// A zero series on the same coordinates and cutoff.
    pub fn zero_like(&self) -> Self {
        Self::zero(self.names.clone(), self.cutoff)
    }

    pub fn constant_like(&self, c: C) -> Self {
        Self::constant(self.names.clone(), self.cutoff, c)
    }

    pub fn from_terms(names: Arc<[String]>, cutoff: u32, it: impl IntoIterator<Item = (Vec<u32>, C)>) -> Self {
        let mut s = Self::zero(names, cutoff);
        for (m, c) in it {
            s.add_term(m, c);
        }
        s
    }

    /// Adds `c * t^m`; terms past the cutoff are dropped.
    pub fn add_term(&mut self, m: Vec<u32>, c: C) {
        assert_eq!(m.len(), self.nvars(), "multi-index length");
        if degree(&m) > self.cutoff || c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let v = e.get().clone() + &c;
                if v.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &Arc<[String]> {
        &self.names
    }

    pub fn cutoff(&self) -> u32 {
        self.cutoff
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, C> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn constant_term(&self) -> C {
        self.terms.get(&vec![0; self.nvars()]).cloned().unwrap_or_else(C::zero)
    }

    pub fn coefficient(&self, m: &[u32]) -> Result<C, SeriesError> {
        let d = degree(m);
        if d > self.cutoff {
            return Err(SeriesError::IndexBeyondCutoff { degree: d, cutoff: self.cutoff });
        }
        Ok(self.terms.get(m).cloned().unwrap_or_else(C::zero))
    }

    pub fn ideal_order(&self) -> IdealOrder {
        self.terms.keys().map(|m| degree(m)).min().map_or(IdealOrder::Infinity, IdealOrder::Finite)
    }

    pub fn truncate(&self, cutoff: u32) -> Self {
        let cutoff = cutoff.min(self.cutoff);
        let terms = self.terms.iter().filter(|(m, _)| degree(m) <= cutoff).map(|(m, c)| (m.clone(), c.clone())).collect();
        TSeries { names: self.names.clone(), cutoff, terms }
    }

    /// Same terms viewed at a larger or smaller cutoff (terms past it are dropped).
    pub fn with_cutoff(&self, cutoff: u32) -> Self {
        let mut s = self.truncate(cutoff);
        s.cutoff = cutoff;
        s
    }

    pub fn scale(&self, a: &C) -> Self {
        if a.is_zero() {
            return self.zero_like();
        }
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), c.clone() * a)).collect();
        TSeries { names: self.names.clone(), cutoff: self.cutoff, terms }
    }

    pub fn map_coeffs<D: Field>(&self, f: impl Fn(&C) -> D) -> TSeries<D> {
        TSeries::from_terms(self.names.clone(), self.cutoff, self.terms.iter().map(|(m, c)| (m.clone(), f(c))))
    }

    pub fn try_map_coeffs<D: Field, E>(&self, f: impl Fn(&C) -> Result<D, E>) -> Result<TSeries<D>, E> {
        let mut out = TSeries::zero(self.names.clone(), self.cutoff);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(c)?);
        }
        Ok(out)
    }

    fn check_compatible(&self, o: &Self) {
        assert!(self.names == o.names, "series over different coordinates");
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = self.constant_like(C::one());
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// `Σ_k a_k s^k` for a polynomial given by its coefficients.
    pub fn compose_poly(&self, a: &[C]) -> Self {
        let mut acc = self.zero_like();
        for c in a.iter().rev() {
            acc = &(&acc * self) + &self.constant_like(c.clone());
        }
        acc
    }

    /// `Σ_{k ≤ cutoff} s^k / k!`.
    pub fn exp(&self) -> Result<Self, SeriesError> {
        if !self.constant_term().is_zero() {
            return Err(SeriesError::NonzeroConstantTerm);
        }
        let mut acc = self.constant_like(C::one());
        let mut p = acc.clone();
        for k in 1..=self.cutoff {
            p = (&p * self).scale(&C::from_rational(&(int(1) / int(k as i64))));
            acc = &acc + &p;
        }
        Ok(acc)
    }

    /// `-Σ_{k ≤ cutoff} (1 - s)^k / k`.
    pub fn log(&self) -> Result<Self, SeriesError> {
        if !self.constant_term().is_one() {
            return Err(SeriesError::ConstantTermNotOne);
        }
        let u = &self.constant_like(C::one()) - self;
        let mut acc = self.zero_like();
        let mut p = self.constant_like(C::one());
        for k in 1..=self.cutoff {
            p = &p * &u;
            acc = &acc - &p.scale(&C::from_rational(&(int(1) / int(k as i64))));
        }
        Ok(acc)
    }

    /// Formal `∂/∂t_n`; the result is exact one degree lower.
    pub fn partial_derivative(&self, n: usize) -> Self {
        let cutoff = self.cutoff.saturating_sub(1);
        let mut out = Self::zero(self.names.clone(), cutoff);
        for (m, c) in &self.terms {
            if m[n] > 0 {
                let mut m2 = m.clone();
                m2[n] -= 1;
                out.add_term(m2, c.clone() * &C::from_int(m[n] as i64));
            }
        }
        out
    }

    /// Inverse of a series with invertible constant term.
    pub fn inv(&self) -> Result<Self, crate::scalars::ArithError> {
        let c0 = self.constant_term();
        let c0i = c0.inv()?;
        // 1/s = c0^{-1} Σ (1 - s/c0)^k
        let u = &self.constant_like(C::one()) - &self.scale(&c0i);
        let mut acc = self.constant_like(C::one());
        let mut p = acc.clone();
        for _ in 0..self.cutoff {
            p = &p * &u;
            acc = &acc + &p;
        }
        Ok(acc.scale(&c0i))
    }
}

/// Result of [`fixed_point`]: the limit and the iterates `τ_0 = seed, τ_1, …`.
#[derive(Clone, Debug)]
pub struct FixedPoint<C> {
    pub value: TSeries<C>,
    pub iterates: Vec<TSeries<C>>,
}

/// Iterates `phi` from `seed` until it stabilizes modulo degree `cutoff + 1`.
///
/// `phi` must raise the ideal order of differences; a step where
/// `ideal_order(τ_{n+1} - τ_n)` fails to increase is reported as `NoContraction`.
pub fn fixed_point<C: Field>(phi: impl Fn(&TSeries<C>) -> TSeries<C>, seed: TSeries<C>, cutoff: u32) -> Result<FixedPoint<C>, SeriesError> {
    let mut cur = seed.with_cutoff(cutoff);
    let mut iterates = vec![cur.clone()];
    let mut last = IdealOrder::Finite(0);
    for step in 0..=(cutoff as usize + 2) {
        let next = phi(&cur).with_cutoff(cutoff);
        let ord = (&next - &cur).ideal_order();
        iterates.push(next.clone());
        if ord == IdealOrder::Infinity {
            return Ok(FixedPoint { value: next, iterates });
        }
        if step > 0 && ord <= last {
            return Err(SeriesError::NoContraction { step });
        }
        last = ord;
        cur = next;
    }
    Err(SeriesError::NoContraction { step: cutoff as usize + 2 })
}

impl<'a, C: Field> Add<&'a TSeries<C>> for &'a TSeries<C> {
    type Output = TSeries<C>;
    fn add(self, o: &'a TSeries<C>) -> TSeries<C> {
        self.check_compatible(o);
        let cutoff = self.cutoff.min(o.cutoff);
        let mut out = self.truncate(cutoff);
        for (m, c) in &o.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl<'a, C: Field> Sub<&'a TSeries<C>> for &'a TSeries<C> {
    type Output = TSeries<C>;
    fn sub(self, o: &'a TSeries<C>) -> TSeries<C> {
        self.check_compatible(o);
        let cutoff = self.cutoff.min(o.cutoff);
        let mut out = self.truncate(cutoff);
        for (m, c) in &o.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl<C: Field> Neg for &TSeries<C> {
    type Output = TSeries<C>;
    fn neg(self) -> TSeries<C> {
        self.map_coeffs(|c| -c.clone())
    }
}

impl<'a, C: Field> Mul<&'a TSeries<C>> for &'a TSeries<C> {
    type Output = TSeries<C>;
    fn mul(self, o: &'a TSeries<C>) -> TSeries<C> {
        self.check_compatible(o);
        let cutoff = self.cutoff.min(o.cutoff);
        let mut out = TSeries::zero(self.names.clone(), cutoff);
        for (m1, c1) in &self.terms {
            let d1 = degree(m1);
            for (m2, c2) in &o.terms {
                if d1 + degree(m2) > cutoff {
                    continue;
                }
                let m: Vec<u32> = m1.iter().zip(m2).map(|(a, b)| a + b).collect();
                out.add_term(m, c1.clone() * c2);
            }
        }
        out
    }
}

impl<C: Field> TSeries<C> {
    fn monomial_body(&self, m: &[u32]) -> String {
        let mut parts = Vec::new();
        for (i, &e) in m.iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(self.names[i].clone()),
                _ => parts.push(format!("{}^{e}", self.names[i])),
            }
        }
        parts.join("*")
    }

    /// Terms by ascending total degree, then descending exponent vector.
    pub fn sorted_terms(&self) -> Vec<(&Vec<u32>, &C)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|(a, _), (b, _)| degree(a).cmp(&degree(b)).then_with(|| b.cmp(a)));
        v
    }
}

impl<C: Field> fmt::Display for TSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<_> = self.sorted_terms().into_iter().map(|(m, c)| signed_term(c, &self.monomial_body(m))).collect();
        f.write_str(&join_terms(&terms))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{rat, Rational};

    type S = TSeries<Rational>;

    fn t(i: usize, d: u32) -> S {
        S::var(coordinate_names("t", 4), d, i)
    }

    #[test]
    fn truncated_products() {
        assert_eq!((&t(0, 3) * &t(1, 3)).to_string(), "t0*t1");
        let s = &t(0, 2) + &t(1, 2);
        assert_eq!((&s * &s).to_string(), "t0^2 + 2*t0*t1 + t1^2");
        let a = &(&t(0, 3) * &t(0, 3)) * &t(2, 3);
        assert!((&a * &t(1, 3)).is_zero());
    }

    #[test]
    fn exp_and_log_examples() {
        let names = coordinate_names("t", 4);
        assert_eq!(S::zero(names.clone(), 3).exp().unwrap(), S::one(names.clone(), 3));
        let one = S::one(names.clone(), 2);
        let u = &(&t(1, 2) + &(&t(0, 2) * &t(2, 2))) + &(&t(1, 2) * &t(1, 2));
        let l = (&one + &u).log().unwrap();
        assert_eq!(l.to_string(), "t1 + t0*t2 + 1/2*t1^2");
        let s = &S::one(names.clone(), 4) + &t(0, 4);
        assert_eq!(s.log().unwrap().exp().unwrap(), s);
        assert_eq!(one.exp(), Err(SeriesError::NonzeroConstantTerm));
        assert_eq!(t(0, 2).log(), Err(SeriesError::ConstantTermNotOne));
    }

    #[test]
    fn derivatives_and_coefficients() {
        let s = (&(&t(0, 3) * &t(0, 3)) * &t(2, 3)).scale(&rat(1, 2));
        assert_eq!(s.partial_derivative(0).to_string(), "t0*t2");
        assert_eq!((&t(0, 3) * &t(1, 3)).partial_derivative(1).to_string(), "t0");
        assert_eq!((&t(0, 3) * &t(1, 3)).coefficient(&[1, 1, 0, 0]), Ok(rat(1, 1)));
        assert!(matches!(t(0, 1).coefficient(&[1, 1, 0, 0]), Err(SeriesError::IndexBeyondCutoff { .. })));
    }

    #[test]
    fn geometric_fixed_point() {
        let (t0, t1) = (t(0, 4), t(1, 4));
        let fp = fixed_point(|x| &t0 + &(&t1 * x), t0.zero_like(), 4).unwrap();
        let expect = &t0 * &t1.compose_poly(&[rat(1, 1), rat(1, 1), rat(1, 1), rat(1, 1)]);
        assert_eq!(fp.value, expect);
        for (n, w) in fp.iterates.windows(2).enumerate() {
            assert!((&w[1] - &w[0]).ideal_order() >= IdealOrder::Finite(n as u32 + 1));
        }
        let z = fixed_point(|x| x.zero_like(), t0.zero_like(), 4).unwrap();
        assert!(z.value.is_zero());
    }

    #[test]
    fn non_contraction_is_reported() {
        let t0 = t(0, 3);
        let r = fixed_point(|x| &t0 - x, t0.zero_like(), 3);
        assert!(matches!(r, Err(SeriesError::NoContraction { .. })));
    }

    #[test]
    fn inverse_of_one_minus_t() {
        let s = &S::one(coordinate_names("t", 4), 3) - &t(1, 3);
        assert_eq!(s.inv().unwrap().to_string(), "1 + t1 + t1^2 + t1^3");
    }
}
