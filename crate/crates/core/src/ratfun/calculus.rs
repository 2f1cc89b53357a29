use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::lift::RootsOfUnity;
use super::{LaurentPoly, RatFun, Var};
use crate::poly::Poly;
use crate::scalars::{cyclotomic_polynomial, ArithError, Field, Rational};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum CalcError {
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error("denominator factor {0} does not split over the configured cyclotomic field")]
    IrreducibleDenominator(String),
    #[error("[f]_+ is not a Laurent polynomial: {0}")]
    NotLaurent(String),
}

/// Expansion point of a local expansion or residue.
#[derive(Clone, Debug, PartialEq)]
pub enum Center<F> {
    Zero,
    Infinity,
    At(F),
}

impl<F: Field> fmt::Display for Center<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Center::Zero => f.write_str("0"),
            Center::Infinity => f.write_str("inf"),
            Center::At(a) => write!(f, "{a}"),
        }
    }
}

/// Laurent expansion at a point: `coeffs[k]` multiplies `(v-a)^k`, or `v^k`
/// at zero, or `v^{-k}` at infinity. Holds exactly the coefficients with
/// `k <= order`.
#[derive(Clone, Debug, PartialEq)]
pub struct LocalExpansion<F> {
    pub center: Center<F>,
    pub coeffs: BTreeMap<i64, F>,
    pub order: i64,
}

impl<F: Field> LocalExpansion<F> {
    pub fn coeff(&self, k: i64) -> F {
        self.coeffs.get(&k).cloned().unwrap_or_else(F::zero)
    }

    pub fn valuation(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }
}

/// Coefficients of `a(u)/b(u)` around `u = 0` as (valuation, series).
fn expand_at_zero<F: Field>(a: &Poly<F>, b: &Poly<F>, order: i64) -> BTreeMap<i64, F> {
    let mut out = BTreeMap::new();
    if a.is_zero() {
        return out;
    }
    let (va, vb) = (a.valuation(), b.valuation());
    let val = va as i64 - vb as i64;
    if order < val {
        return out;
    }
    let n = (order - val + 1) as usize;
    let s = Poly::series_div(&a.shift_down(va), &b.shift_down(vb), n).expect("unit constant term");
    for (i, c) in s.coeffs().iter().enumerate() {
        if !c.is_zero() {
            out.insert(val + i as i64, c.clone());
        }
    }
    out
}

/// Laurent expansion of `f` at `center`, keeping every coefficient with index `<= order`.
pub fn local_expansion<F: Field>(f: &RatFun<F>, center: Center<F>, order: i64) -> LocalExpansion<F> {
    let coeffs = match &center {
        Center::Zero => expand_at_zero(f.num(), f.den(), order),
        Center::At(a) => expand_at_zero(&f.num().taylor_shift(a), &f.den().taylor_shift(a), order),
        Center::Infinity => {
            let dn = f.num().degree().unwrap_or(0);
            let dd = f.den().degree().unwrap_or(0);
            let shift = dd as i64 - dn as i64;
            let inner = expand_at_zero(&f.num().reversed(dn), &f.den().reversed(dd), order - shift);
            inner.into_iter().map(|(k, c)| (k + shift, c)).collect()
        }
    };
    LocalExpansion { center, coeffs, order }
}

/// Residue of the differential `f dv` at `center`.
pub fn residue_at<F: Field>(f: &RatFun<F>, center: Center<F>) -> F {
    match center {
        Center::Infinity => -local_expansion(f, Center::Infinity, 1).coeff(1),
        c => {
            // skip the work when the point is not a pole
            if let Center::At(a) = &c {
                if !f.den().eval(a).is_zero() {
                    return F::zero();
                }
            } else if !f.den().constant_term().is_zero() {
                return F::zero();
            }
            local_expansion(f, c, -1).coeff(-1)
        }
    }
}

/// `f` in the local coordinate `u` at `center`, as `u^shift a(u)/b(u)`.
fn local_form<F: Field>(f: &RatFun<F>, center: &Center<F>) -> (i64, Poly<F>, Poly<F>) {
    match center {
        Center::Zero => (0, f.num().clone(), f.den().clone()),
        Center::At(a) => (0, f.num().taylor_shift(a), f.den().taylor_shift(a)),
        Center::Infinity => {
            let dn = f.num().degree().unwrap_or(0);
            let dd = f.den().degree().unwrap_or(0);
            (dd as i64 - dn as i64, f.num().reversed(dn), f.den().reversed(dd))
        }
    }
}

/// Residue at `center` of `(Π factors) dv`, computed from the local expansions
/// of the factors without ever forming (and reducing) the product.
pub fn product_residue<F: Field>(factors: &[&RatFun<F>], center: &Center<F>) -> F {
    if factors.iter().any(|f| f.num().is_zero()) {
        return F::zero();
    }
    // Res_∞ f dv = -[u^1] f(1/u)
    let target = if matches!(center, Center::Infinity) { 1 } else { -1 };
    let forms: Vec<_> = factors.iter().map(|f| local_form(f, center)).collect();
    let vals: Vec<i64> = forms.iter().map(|(s, a, b)| s + a.valuation() as i64 - b.valuation() as i64).collect();
    let total: i64 = vals.iter().sum();
    if total > target {
        return F::zero();
    }
    let mut acc: BTreeMap<i64, F> = BTreeMap::from([(0, F::one())]);
    for ((shift, a, b), v) in forms.iter().zip(&vals) {
        let order = target - (total - v) - shift;
        let e = expand_at_zero(a, b, order);
        let mut next = BTreeMap::new();
        for (i, x) in &acc {
            for (j, y) in &e {
                let slot = next.entry(i + j + shift).or_insert_with(F::zero);
                *slot = slot.clone() + &(x.clone() * y);
            }
        }
        acc = next;
    }
    let r = acc.remove(&target).unwrap_or_else(F::zero);
    if target == 1 {
        -r
    } else {
        r
    }
}

/// Principal part of `f` at `v = a`, as a rational function.
pub fn principal_part<F: Field>(f: &RatFun<F>, a: &F) -> RatFun<F> {
    let v = f.variable();
    let e = local_expansion(f, Center::At(a.clone()), -1);
    let mut acc = RatFun::zero().with_var(v);
    let shift = RatFun::linear(v, F::one(), -a.clone());
    for (k, c) in e.coeffs {
        acc = acc + &(RatFun::constant(v, c) * &shift.powi(k).expect("nonzero"));
    }
    acc
}

/// Sum of the residues of `f dv` over all roots of `part`, where `part`
/// divides the denominator and is coprime to the cofactor.
///
/// Poles at 0, at 1 and at any other single (possibly repeated) root are
/// handled by local expansion; whatever is left goes through a Bezout
/// identity modulo that piece.
pub fn residue_sum_over_part<F: Field>(f: &RatFun<F>, part: &Poly<F>) -> F {
    if part.degree().unwrap_or(0) == 0 || f.num().is_zero() {
        return F::zero();
    }
    let mut acc = F::zero();
    let mut rest = part.clone();
    for a in [F::zero(), F::one()] {
        let lin = Poly::linear_root(&a);
        let mut hit = false;
        while let Some(q) = rest.exact_div(&lin) {
            rest = q;
            hit = true;
        }
        if hit {
            acc = acc + &local_expansion(f, Center::At(a), -1).coeff(-1);
        }
    }
    if rest.degree().unwrap_or(0) == 0 {
        return acc;
    }
    let sq = rest.squarefree_part();
    if sq.degree() == Some(1) {
        let a = -sq.constant_term() * &sq.lc().unwrap().inv().expect("nonzero");
        return acc + &local_expansion(f, Center::At(a), -1).coeff(-1);
    }
    acc + &bezout_residue_sum(f, &rest)
}

fn bezout_residue_sum<F: Field>(f: &RatFun<F>, part: &Poly<F>) -> F {
    let cofactor = f.den().exact_div(part).expect("part divides the denominator");
    // work modulo `part` throughout: N/(A B) = N s / B + N t / A with t B ≡ 1 (mod A)
    let b = cofactor.rem(part).expect("nonzero");
    let (g, _s, t) = Poly::xgcd(part, &b);
    debug_assert!(g.is_one(), "part must be coprime to its cofactor");
    let n = f.num().rem(part).expect("nonzero");
    let r = (&n * &t).rem(part).expect("nonzero");
    let da = part.degree().unwrap();
    if r.degree() == Some(da - 1) {
        r.lc().unwrap().clone() * &part.lc().unwrap().inv().expect("nonzero")
    } else {
        F::zero()
    }
}

/// Splits a polynomial `d = ones * others * rest`, where `ones` collects the
/// root 1, `others` the remaining roots of unity of order dividing `n`, and
/// `rest` every other root.
pub fn split_roots_of_unity<F: Field>(d: &Poly<F>, n: u32) -> (Poly<F>, Poly<F>, Poly<F>) {
    let x1 = Poly::from_ints(&[-1, 1]);
    let mut rest = d.clone();
    let mut ones = Poly::one();
    while let Some(q) = rest.exact_div(&x1) {
        rest = q;
        ones = &ones * &x1;
    }
    let mut others = Poly::one();
    // one cyclotomic factor at a time, reducing `rest` modulo the small fixed
    // factor first so the Euclidean steps never see the full-degree cofactor
    for d in (2..=n).filter(|d| n % d == 0) {
        let phi = Poly::from_ints(&cyclotomic_polynomial(d));
        while rest.degree().unwrap_or(0) > 0 {
            let r = rest.rem(&phi).expect("nonzero");
            let g = if r.is_zero() { phi.clone() } else { Poly::gcd(&phi, &r) };
            if g.degree().unwrap_or(0) == 0 {
                break;
            }
            rest = rest.exact_div(&g).expect("gcd divides");
            others = &others * &g;
        }
    }
    let c = rest.lc().cloned().unwrap_or_else(F::one);
    (ones, others, rest.monic().scale(&c))
}

/// Which finite poles a residue sum runs over.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PoleSet {
    /// Every finite pole that is not a root of unity of order dividing `order`;
    /// `include_one` adds the pole at 1 back in.
    NonRootsOfUnity { order: u32, include_one: bool },
    /// Roots of unity of order dividing `order`, optionally including 1.
    RootsOfUnity { order: u32, include_one: bool },
}

/// Sum of residues of `f dv` over a pole set (finite poles only).
pub fn residue_sum<F: Field>(f: &RatFun<F>, poles: PoleSet) -> F {
    let (n, include_one, want_roots) = match poles {
        PoleSet::NonRootsOfUnity { order, include_one } => (order, include_one, false),
        PoleSet::RootsOfUnity { order, include_one } => (order, include_one, true),
    };
    let (ones, others, rest) = split_roots_of_unity(f.den(), n);
    let part = match (want_roots, include_one) {
        (true, true) => &ones * &others,
        (true, false) => others,
        (false, true) => &ones * &rest,
        (false, false) => rest,
    };
    residue_sum_over_part(f, &part)
}

/// One term `coeff / (v - pole)^multiplicity` of a partial-fraction decomposition.
#[derive(Clone, Debug, PartialEq)]
pub struct PfTerm<F> {
    pub pole: F,
    pub multiplicity: u32,
    pub coeff: F,
}

/// `f = polynomial + Σ coeff/(v - pole)^k`.
#[derive(Clone, Debug, PartialEq)]
pub struct PartialFractions<F> {
    pub var: Var,
    pub polynomial: Poly<F>,
    pub terms: Vec<PfTerm<F>>,
}

impl<F: Field> PartialFractions<F> {
    pub fn recombine(&self) -> RatFun<F> {
        let v = self.var;
        let mut acc = RatFun::from_poly(v, self.polynomial.clone());
        for t in &self.terms {
            let lin = RatFun::linear(v, F::one(), -t.pole.clone());
            acc = acc + &(RatFun::constant(v, t.coeff.clone()) * &lin.powi(-(t.multiplicity as i64)).expect("nonzero"));
        }
        acc
    }

    /// Terms at a given pole, by multiplicity.
    pub fn at(&self, pole: &F) -> Vec<&PfTerm<F>> {
        self.terms.iter().filter(|t| &t.pole == pole).collect()
    }
}

impl<F: Field> fmt::Display for PartialFractions<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v = self.var.name();
        let mut parts = Vec::new();
        if !self.polynomial.is_zero() {
            parts.push(self.polynomial.display_with(v));
        }
        for t in &self.terms {
            let ps = t.pole.to_string();
            let base = if t.pole.is_zero() {
                v.to_string()
            } else if t.pole.to_rational().is_none() {
                match ps.strip_prefix('-') {
                    _ if ps.contains(' ') => format!("({v} - ({ps}))"),
                    Some(s) => format!("({v} + {s})"),
                    None => format!("({v} - {ps})"),
                }
            } else {
                let p = RatFun::linear(self.var, F::one(), -t.pole.clone()).num().display_with(v);
                format!("({p})")
            };
            let den = if t.multiplicity == 1 { base } else { format!("{base}^{}", t.multiplicity) };
            parts.push(format!("({})/{den}", t.coeff));
        }
        if parts.is_empty() {
            return f.write_str("0");
        }
        f.write_str(&parts.join(" + "))
    }
}

fn small_divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let n = n.abs();
    let m = n.to_u64()?;
    if m > 1_000_000_000_000 {
        return None;
    }
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= m {
        if m % d == 0 {
            out.push(BigInt::from(d));
            if d * d != m {
                out.push(BigInt::from(m / d));
            }
        }
        d += 1;
    }
    Some(out)
}

/// Rational roots of a polynomial whose coefficients are all rational.
fn rational_roots<F: Field>(p: &Poly<F>) -> Option<Vec<F>> {
    let c: Vec<Rational> = p.coeffs().iter().map(|x| x.to_rational()).collect::<Option<_>>()?;
    let l = c.iter().fold(BigInt::one(), |a, x| a.lcm(x.denom()));
    let ints: Vec<BigInt> = c.iter().map(|x| (x * Rational::from_integer(l.clone())).to_integer()).collect();
    let v = ints.iter().take_while(|x| x.is_zero()).count();
    let ints = &ints[v..];
    if ints.len() <= 1 {
        return Some(Vec::new());
    }
    let a0 = small_divisors(&ints[0])?;
    let an = small_divisors(ints.last().unwrap())?;
    let mut roots = Vec::new();
    for pn in &a0 {
        for qd in &an {
            for s in [1i64, -1] {
                let r = Rational::new(pn * s, qd.clone());
                let fr = F::from_rational(&r);
                if p.eval(&fr).is_zero() && !roots.contains(&fr) {
                    roots.push(fr);
                }
            }
        }
    }
    Some(roots)
}

/// Complete partial fractions over `F`, using the `n`-th roots of unity in `F`,
/// the root 0, rational roots and any leftover linear factors as poles.
pub fn partial_fractions<F: RootsOfUnity>(f: &RatFun<F>, n: u32) -> Result<PartialFractions<F>, CalcError> {
    let v = f.variable();
    let (poly, rem) = f.num().div_rem(f.den())?;
    let proper = RatFun::new(v, rem, f.den().clone())?;
    let mut rest = f.den().clone();
    let mut poles: Vec<(F, u32)> = Vec::new();
    let mut take_root = |rest: &mut Poly<F>, a: F| {
        let lin = Poly::linear_root(&a);
        let mut m = 0;
        while let Some(q) = rest.exact_div(&lin) {
            *rest = q;
            m += 1;
        }
        if m > 0 {
            poles.push((a, m));
        }
    };
    take_root(&mut rest, F::zero());
    for z in F::roots_of_unity(n) {
        take_root(&mut rest, z);
    }
    while rest.degree().unwrap_or(0) > 0 {
        let sq = rest.squarefree_part();
        let cands = if sq.degree() == Some(1) {
            vec![-sq.constant_term() * &sq.lc().unwrap().inv()?]
        } else {
            match rational_roots(&sq) {
                Some(r) if !r.is_empty() => r,
                _ => return Err(CalcError::IrreducibleDenominator(rest.monic().display_with(v.name()))),
            }
        };
        for a in cands {
            take_root(&mut rest, a);
        }
    }
    let mut terms = Vec::new();
    for (a, m) in poles {
        let e = local_expansion(&proper, Center::At(a.clone()), -1);
        for k in 1..=m as i64 {
            let c = e.coeff(-k);
            if !c.is_zero() {
                terms.push(PfTerm { pole: a.clone(), multiplicity: k as u32, coeff: c });
            }
        }
    }
    Ok(PartialFractions { var: v, polynomial: poly, terms })
}

/// Decomposition `f = polynomial + Σ_i A_i / P_i^{e_i}` along pairwise coprime
/// factors `P_i` of the denominator (the grouping used when a factor does not
/// split, e.g. `q^2 + 1` over `Q`).
pub fn grouped_partial_fractions<F: Field>(f: &RatFun<F>, factors: &[Poly<F>]) -> Result<(Poly<F>, Vec<RatFun<F>>), CalcError> {
    let v = f.variable();
    let (poly, mut num) = f.num().div_rem(f.den())?;
    let mut den = f.den().clone();
    let mut groups = Vec::new();
    for p in factors {
        let mut pe = Poly::one();
        while let Some(q) = den.exact_div(p) {
            den = q;
            pe = &pe * p;
        }
        if pe.is_one() {
            groups.push(RatFun::zero().with_var(v));
            continue;
        }
        // num/(pe*den) = a/pe + b/den with a = num * den^{-1} mod pe
        let dinv = den.inv_mod(&pe).ok_or_else(|| CalcError::IrreducibleDenominator(p.display_with(v.name())))?;
        let a = (&num * &dinv).rem(&pe)?;
        let b = (&num - &(&a * &den)).exact_div(&pe).expect("exact by construction");
        groups.push(RatFun::new(v, a, pe)?);
        num = b;
    }
    if den.degree().unwrap_or(0) > 0 {
        return Err(CalcError::IrreducibleDenominator(den.monic().display_with(v.name())));
    }
    let poly = &poly + &num.scale(&den.constant_term().inv()?);
    Ok((poly, groups))
}

/// Partial fractions over the base field, one fraction per factor of the
/// denominator: `v`, each cyclotomic `Φ_d` with `d | n`, and whatever is left.
/// Returns the polynomial part and `(factor, A/factor^e)` pairs.
pub fn cyclotomic_partial_fractions<F: Field>(f: &RatFun<F>, n: u32) -> Result<(Poly<F>, Vec<(Poly<F>, RatFun<F>)>), CalcError> {
    let mut rest = f.den().clone();
    let mut factors = Vec::new();
    let v = rest.valuation();
    if v > 0 {
        factors.push(Poly::x());
        rest = rest.shift_down(v);
    }
    for d in (1..=n.max(1)).filter(|d| n % d == 0) {
        let phi = Poly::from_ints(&cyclotomic_polynomial(d));
        let mut hit = false;
        while let Some(q) = rest.exact_div(&phi) {
            rest = q;
            hit = true;
        }
        if hit {
            factors.push(phi);
        }
    }
    if rest.degree().unwrap_or(0) > 0 {
        factors.push(rest.monic());
    }
    let (poly, groups) = grouped_partial_fractions(f, &factors)?;
    Ok((poly, factors.into_iter().zip(groups).collect()))
}

/// Laurent-polynomial part `[f]_+`: polynomial quotient plus principal part at 0.
pub fn laurent_part<F: Field>(f: &RatFun<F>) -> LaurentPoly<F> {
    let v = f.variable();
    let k = f.den().valuation();
    let e = f.den().shift_down(k);
    let (quot, rem) = f.num().div_rem(&e).expect("nonzero");
    // f = quot / v^k + rem / (v^k e); the second term contributes its principal part at 0
    let mut out = LaurentPoly::zero(v);
    for (i, c) in quot.coeffs().iter().enumerate() {
        out.add_term(i as i64 - k as i64, c.clone());
    }
    if k > 0 {
        let s = Poly::series_div(&rem, &e, k).expect("e(0) != 0");
        for (i, c) in s.coeffs().iter().enumerate() {
            out.add_term(i as i64 - k as i64, c.clone());
        }
    }
    out
}

/// `[f]_+` computed as `-(Res_{w=0} + Res_{w=∞}) f(w)/(w - v) dw`.
pub fn laurent_part_by_residues<F: Field>(f: &RatFun<F>) -> Result<LaurentPoly<F>, CalcError> {
    let v = f.variable();
    let lift = |p: &Poly<F>| p.map(|c| RatFun::constant(v, c.clone()));
    let w_minus_v = Poly::new(vec![-RatFun::<F>::var(v), RatFun::one()]);
    let g = RatFun::new(Var::W, lift(f.num()), &lift(f.den()) * &w_minus_v)?;
    let total = -(residue_at(&g, Center::Zero) + &residue_at(&g, Center::Infinity));
    LaurentPoly::from_ratfun(&total).ok_or_else(|| CalcError::NotLaurent(total.to_string()))
}

/// The pairing `Ω(f, g) = (Res_0 + Res_∞) f(v^{-1}) g(v) dv/v`.
pub fn omega_pair<F: Field>(f: &RatFun<F>, g: &RatFun<F>) -> F {
    let v = g.variable();
    let fi = f.clone().with_var(v).substitute_inverse(v);
    let h = fi * g * &RatFun::var(v).inv().expect("v != 0");
    residue_at(&h, Center::Zero) + &residue_at(&h, Center::Infinity)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratfun::CyclotomicLift;
    use crate::scalars::{int, rat, root_of_unity, Cyc};

    type R = RatFun<Rational>;

    fn q() -> R {
        R::var(Var::Q)
    }
    fn c(n: i64) -> R {
        R::from_int(n)
    }
    fn r(n: i64, d: i64) -> R {
        R::from_rational(&rat(n, d))
    }

    /// 1/(q (1 - q^-4)(1 - q^-6))
    fn twisted_one_point_q() -> R {
        let qi = q().inv().unwrap();
        (q() * &(c(1) - qi.pow(4)) * &(c(1) - qi.pow(6))).inv().unwrap()
    }

    #[test]
    fn expansion_at_one_of_twisted_one_point() {
        let e = local_expansion(&twisted_one_point_q(), Center::At(int(1)), 0);
        assert_eq!(e.valuation(), Some(-2));
        assert_eq!(e.coeff(-2), rat(1, 24));
        assert_eq!(e.coeff(-1), rat(5, 24));
    }

    #[test]
    fn expansion_of_parameter_factor_at_minus_one() {
        // 1/(1 - q q1) at q = -1 over Q(q1)
        type RR = RatFun<R>;
        let q1 = R::var(Var::Q1);
        let f = RR::constant(Var::Q, c(1)).div(&(RR::one() - &(RR::var(Var::Q) * &RR::constant(Var::Q, q1.clone())))).unwrap();
        let e = local_expansion(&f, Center::At(R::from_int(-1)), 1);
        let one_plus = c(1) + &q1;
        assert_eq!(e.coeff(0), one_plus.inv().unwrap());
        assert_eq!(e.coeff(1), q1.clone() * &one_plus.pow(2).inv().unwrap());
    }

    #[test]
    fn expansion_at_infinity_of_q() {
        let e = local_expansion(&q(), Center::Infinity, 3);
        assert_eq!(e.coeffs.len(), 1);
        assert_eq!(e.coeff(-1), int(1));
    }

    #[test]
    fn golden_residues() {
        let f = (q() - &c(1)).inv().unwrap();
        assert_eq!(residue_at(&f, Center::At(int(1))), int(1));
        let g = twisted_one_point_q();
        assert_eq!(residue_at(&g, Center::Infinity), int(-1));
        assert_eq!(residue_at(&g, Center::At(int(1))), rat(5, 24));
        assert_eq!(residue_at(&g, Center::Zero), int(0));
    }

    #[test]
    fn five_term_decomposition() {
        let f = ((c(1) + q()) * &(c(1) - q().pow(3)) * &(c(1) - q().pow(4))).inv().unwrap();
        let factors = vec![Poly::from_ints(&[1, 1]), Poly::from_ints(&[1, 0, 1]), Poly::from_ints(&[1, 1, 1]), Poly::from_ints(&[-1, 1])];
        let (p, g) = grouped_partial_fractions(&f, &factors).unwrap();
        assert!(p.is_zero());
        let expect = [
            (q() * &c(3) + &c(4)).div(&(c(8) * &(q() + &c(1)).pow(2))).unwrap(),
            -(q().div(&(c(4) * &(q().pow(2) + &c(1))))).unwrap(),
            (c(3) * &(q().pow(2) + &q() + &c(1))).inv().unwrap(),
            (c(24) * &(c(1) - q()).pow(2)).inv().unwrap() + &(c(8) * &(c(1) - q())).inv().unwrap(),
        ];
        for (a, b) in g.iter().zip(expect.iter()) {
            assert_eq!(a, b);
        }
    }

    #[test]
    fn split_over_gaussian_rationals() {
        let f = (q() - &c(1)).div(&(c(8) * &(q().pow(2) + &c(1)))).unwrap();
        let pf = partial_fractions(&f.lift(), 12).unwrap();
        let i = root_of_unity(3, 12);
        let one = Cyc::one();
        let sixteenth = Cyc::rational(rat(1, 16));
        let at_i = pf.at(&i);
        assert_eq!(at_i.len(), 1);
        assert_eq!(at_i[0].coeff, (one.clone() + &i) * &sixteenth);
        let at_mi = pf.at(&-i.clone());
        assert_eq!(at_mi[0].coeff, (one - &i) * &sixteenth);
        assert_eq!(pf.recombine(), f.lift());
    }

    #[test]
    fn single_simple_pole() {
        let f = (q() - &c(2)).inv().unwrap();
        let pf = partial_fractions(&f, 12).unwrap();
        assert_eq!(pf.terms, vec![PfTerm { pole: int(2), multiplicity: 1, coeff: int(1) }]);
        assert!(pf.polynomial.is_zero());
    }

    #[test]
    fn laurent_part_examples() {
        let lp = LaurentPoly::from_terms(Var::Q, vec![(-2, int(3)), (1, int(-1)), (4, rat(1, 2))]);
        assert_eq!(laurent_part(&lp.to_ratfun()), lp);
        // [1/(q(q-2))]_+ = -1/(2q)
        let f = (q() * &(q() - &c(2))).inv().unwrap();
        let expect = LaurentPoly::from_terms(Var::Q, vec![(-1, rat(-1, 2))]);
        assert_eq!(laurent_part(&f), expect);
        assert_eq!(laurent_part_by_residues(&f).unwrap(), expect);
    }

    #[test]
    fn laurent_part_with_symbolic_l() {
        // [(1-q)/(1-L/q)]_+ = 1 - q - L
        type RL = RatFun<R>;
        let l = R::var(Var::L);
        let qv = RL::var(Var::Q);
        let lc = RL::constant(Var::Q, l.clone());
        let f = (RL::one() - &qv).div(&(RL::one() - &lc.div(&qv).unwrap())).unwrap();
        let expect = LaurentPoly::from_terms(Var::Q, vec![(0, c(1) - &l), (1, c(-1))]);
        assert_eq!(laurent_part(&f), expect);
        assert_eq!(laurent_part_by_residues(&f).unwrap(), expect);
    }

    #[test]
    fn omega_examples() {
        for (a, b) in [(0, 0), (2, -3), (-1, 5)] {
            assert_eq!(omega_pair(&q().powi(a).unwrap(), &q().powi(b).unwrap()), int(0));
        }
        let g = (c(1) - q()).inv().unwrap();
        assert_eq!(omega_pair(&c(1), &g), int(1));
        assert_eq!(omega_pair(&g, &c(1)), int(-1));
    }

    #[test]
    fn residue_sum_routes() {
        // 1/((q - 1/3)(1 - q^4)) : finite residues sum to -Res_inf = 0
        let f = ((q() - &r(1, 3)) * &(c(1) - q().pow(4))).inv().unwrap();
        let non = residue_sum(&f, PoleSet::NonRootsOfUnity { order: 12, include_one: true });
        let roots = residue_sum(&f, PoleSet::RootsOfUnity { order: 12, include_one: false });
        assert_eq!(non + &roots + &residue_at(&f, Center::Infinity), int(0));
        let direct = residue_at(&f, Center::At(rat(1, 3))) + &residue_at(&f, Center::At(int(1)));
        assert_eq!(residue_sum(&f, PoleSet::NonRootsOfUnity { order: 12, include_one: true }), direct);
    }

    #[test]
    fn principal_part_at_one() {
        let f = twisted_one_point_q();
        let pp = principal_part(&f, &int(1));
        let expect = (c(24) * &(q() - &c(1)).pow(2)).inv().unwrap() + &r(5, 24).div(&(q() - &c(1))).unwrap();
        assert_eq!(pp, expect);
    }
}
