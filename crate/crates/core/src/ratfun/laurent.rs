use std::collections::BTreeMap;
use std::fmt;

use crate::poly::Poly;
use crate::ratfun::{RatFun, Var};
use crate::scalars::{join_terms, signed_term, ArithError, Field};

/// Finite Laurent polynomial `Σ c_k v^k`, `k` possibly negative.
#[derive(Clone, Debug, PartialEq)]
pub struct LaurentPoly<F> {
    pub var: Var,
    terms: BTreeMap<i64, F>,
}

impl<F: Field> LaurentPoly<F> {
    pub fn zero(var: Var) -> Self {
        LaurentPoly { var, terms: BTreeMap::new() }
    }

    pub fn from_terms(var: Var, it: impl IntoIterator<Item = (i64, F)>) -> Self {
        let mut p = Self::zero(var);
        for (k, c) in it {
            p.add_term(k, c);
        }
        p
    }

    pub fn add_term(&mut self, k: i64, c: F) {
        let v = match self.terms.remove(&k) {
            Some(old) => old + &c,
            None => c,
        };
        if !v.is_zero() {
            self.terms.insert(k, v);
        }
    }

    pub fn terms(&self) -> &BTreeMap<i64, F> {
        &self.terms
    }

    pub fn coeff(&self, k: i64) -> F {
        self.terms.get(&k).cloned().unwrap_or_else(F::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn min_degree(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// Interpret a rational function whose denominator is `c * v^k`.
    pub fn from_ratfun(f: &RatFun<F>) -> Option<Self> {
        let d = f.den();
        let k = d.valuation();
        if d.degree() != Some(k) {
            return None;
        }
        let ci = d.lc()?.inv().ok()?;
        Some(Self::from_terms(f.variable(), f.num().coeffs().iter().enumerate().map(|(i, c)| (i as i64 - k as i64, c.clone() * &ci))))
    }

    pub fn to_ratfun(&self) -> RatFun<F> {
        let lo = self.min_degree().unwrap_or(0).min(0);
        let shift = (-lo) as usize;
        let hi = self.max_degree().unwrap_or(0);
        let mut c = vec![F::zero(); (hi - lo) as usize + 1];
        for (k, v) in &self.terms {
            c[(*k - lo) as usize] = v.clone();
        }
        RatFun::new(self.var, Poly::new(c), Poly::monomial(F::one(), shift)).expect("monomial denominator")
    }

    pub fn eval(&self, a: &F) -> Result<F, ArithError> {
        self.to_ratfun().eval(a)
    }
}

impl<F: Field> std::ops::Add<&LaurentPoly<F>> for LaurentPoly<F> {
    type Output = LaurentPoly<F>;
    fn add(mut self, o: &LaurentPoly<F>) -> LaurentPoly<F> {
        for (k, c) in &o.terms {
            self.add_term(*k, c.clone());
        }
        self
    }
}

impl<F: Field> fmt::Display for LaurentPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v = self.var.name();
        let terms: Vec<_> = self
            .terms
            .iter()
            .rev()
            .map(|(k, c)| {
                let body = match k {
                    0 => String::new(),
                    1 => v.to_string(),
                    _ => format!("{v}^{k}"),
                };
                signed_term(c, &body)
            })
            .collect();
        f.write_str(&join_terms(&terms))
    }
}
