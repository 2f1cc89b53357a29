//! Genus-zero ingredients at the point target: τ, the transformed input 𝐭̄,
//! the twisted inputs 𝐭̄ⁿᵉʷ / 𝐭̄ᶠᵃᵏᵉ, the J-function and the closed forms of
//! their D-derivatives.
//!
//! All genus-zero data comes from `J(τ) = (1-q) e^{τ/(1-q)}`.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::ratfun::{local_expansion, principal_part, CalcError, Center, RatFun, Var};
use crate::scalars::{int, ArithError, Field, Rational};
use crate::tseries::{coordinate_names, fixed_point, FixedPoint, SeriesError, TSeries};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Genus0Error {
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Calc(#[from] CalcError),
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error("input has a pole at q = 1")]
    SingularInput,
    #[error("tbar(1) does not vanish: {0}")]
    TauMismatch(String),
}

/// How the coordinates `t_n` assemble into `𝐭(q)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Convention {
    /// `𝐭 = Σ t_n (q-1)^n`
    #[default]
    Monomial,
    /// `𝐭 = Σ t_n (q-1)^n / n!`
    DividedPower,
}

impl Convention {
    pub fn name(self) -> &'static str {
        match self {
            Convention::Monomial => "monomial",
            Convention::DividedPower => "divided-power",
        }
    }
}

impl fmt::Display for Convention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Convention {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "monomial" => Ok(Convention::Monomial),
            "divided-power" => Ok(Convention::DividedPower),
            _ => Err(format!("unknown convention `{s}` (expected monomial or divided-power)")),
        }
    }
}

fn factorial(n: u32) -> Rational {
    (1..=n as i64).fold(int(1), |a, k| a * int(k))
}

fn inv_factorial<F: Field>(n: u32) -> F {
    F::from_rational(&(int(1) / factorial(n)))
}

fn binomial(n: u32, k: u32) -> Rational {
    factorial(n) / (factorial(k) * factorial(n - k))
}

/// Constant embedding of a scalar series into rational-function coefficients.
pub fn promote<F: Field>(s: &TSeries<F>, v: Var) -> TSeries<RatFun<F>> {
    s.map_coeffs(|c| RatFun::constant(v, c.clone()))
}

/// `exp(a · s)` for a rational function `a`.
pub fn exp_times<F: Field>(s: &TSeries<F>, a: &RatFun<F>) -> Result<TSeries<RatFun<F>>, SeriesError> {
    promote(s, a.variable()).scale(a).exp()
}

/// The input `𝐭(q)`: a series in the coordinates whose coefficients are
/// rational functions of `q`, regular at `q = 1`.
#[derive(Clone, Debug)]
pub struct InputT<F> {
    series: TSeries<RatFun<F>>,
}

impl InputT<Rational> {
    /// `𝐭 = Σ_{n<k} t_n e_n(q)` with `e_n` given by the convention.
    pub fn coordinates(k: usize, cutoff: u32, convention: Convention) -> Self {
        let names = coordinate_names("t", k);
        let mut s = TSeries::zero(names.clone(), cutoff);
        let qm1 = RatFun::linear(Var::Q, int(1), int(-1));
        for n in 0..k {
            let mut e = qm1.pow(n as u32);
            if convention == Convention::DividedPower {
                e = e * &RatFun::constant(Var::Q, int(1) / factorial(n as u32));
            }
            s = &s + &TSeries::var(names.clone(), cutoff, n).scale(&e);
        }
        InputT { series: s }
    }
}

impl<F: Field> InputT<F> {
    /// `𝐭 = Σ_i s_i / (1 - p_i q)`: the directions along which `D_i` differentiates.
    pub fn directions(params: &[F], cutoff: u32) -> Self {
        let names: Arc<[String]> = (1..=params.len()).map(|i| format!("s{i}")).collect();
        let mut s = TSeries::zero(names.clone(), cutoff);
        for (i, p) in params.iter().enumerate() {
            let e = RatFun::linear(Var::Q, -p.clone(), F::one()).inv().expect("nonzero");
            s = &s + &TSeries::var(names.clone(), cutoff, i).scale(&e);
        }
        InputT { series: s }
    }

    pub fn from_series(series: TSeries<RatFun<F>>) -> Result<Self, Genus0Error> {
        for c in series.terms().values() {
            if c.den().eval(&F::one()).is_zero() {
                return Err(Genus0Error::SingularInput);
            }
        }
        if !series.constant_term().is_zero() {
            return Err(Genus0Error::Series(SeriesError::NonzeroConstantTerm));
        }
        Ok(InputT { series })
    }

    pub fn series(&self) -> &TSeries<RatFun<F>> {
        &self.series
    }

    pub fn cutoff(&self) -> u32 {
        self.series.cutoff()
    }

    pub fn with_cutoff(&self, cutoff: u32) -> Self {
        InputT { series: self.series.with_cutoff(cutoff) }
    }

    /// `c_0, …, c_n` with `𝐭(q) = Σ c_k (q-1)^k`.
    pub fn taylor_coeffs(&self, n: usize) -> Vec<TSeries<F>> {
        let z = TSeries::zero(self.series.names().clone(), self.series.cutoff());
        let mut out = vec![z; n + 1];
        for (m, c) in self.series.terms() {
            let e = local_expansion(c, Center::At(F::one()), n as i64);
            for (k, a) in e.coeffs {
                if (0..=n as i64).contains(&k) {
                    out[k as usize].add_term(m.clone(), a);
                }
            }
        }
        out
    }
}

/// `J(τ) = (1-q) exp(τ/(1-q))`.
pub fn j_function<F: Field>(tau: &TSeries<F>) -> Result<TSeries<RatFun<F>>, SeriesError> {
    let one_minus_q = RatFun::linear(Var::Q, -F::one(), F::one());
    Ok(exp_times(tau, &one_minus_q.inv().expect("nonzero"))?.scale(&one_minus_q))
}

/// Genus-zero one-point descendants `γ_k(τ) = ⟨⟨(L-1)^k⟩⟩_{0,1}`, read off
/// from `⟨⟨1/(1-qL)⟩⟩_{0,1} = J(τ) - (1-q) - τ` in the basis `q^k/(1-q)^{k+1}`.
/// Returned as polynomials in τ (coefficient lists).
fn gamma_poly(k: u32, cutoff: u32) -> Vec<Rational> {
    let mut c = vec![int(0); cutoff as usize + 1];
    for m in (k + 2)..=cutoff {
        c[m as usize] = binomial(m - 2, k) / factorial(m);
    }
    c
}

fn poly_derivative(c: &[Rational]) -> Vec<Rational> {
    c.iter().enumerate().skip(1).map(|(i, a)| a * int(i as i64)).collect()
}

/// One step of the fixed-point map
/// `T(τ) = 𝐭(1) + e^{-τ} ∂_τ Σ_k f_k ⟨⟨(L-1)^k⟩⟩_{0,1}(τ)`, where
/// `L·D𝐭(L) = Σ_k f_k (L-1)^k` and `D𝐭(L) = (𝐭(1)-𝐭(L))/(1-L)`.
pub fn t_map<F: Field>(tau: &TSeries<F>, c: &[TSeries<F>]) -> TSeries<F> {
    let d = tau.cutoff();
    let mut acc = c[0].with_cutoff(d);
    let mut sum = tau.zero_like();
    for k in 0..=d {
        let fk = match k {
            0 => c.get(1).cloned(),
            _ => c.get(k as usize + 1).map(|a| a + &c[k as usize]).or_else(|| c.get(k as usize).cloned()),
        };
        let Some(fk) = fk else { continue };
        let g: Vec<F> = poly_derivative(&gamma_poly(k, d + 1)).iter().map(F::from_rational).collect();
        sum = &sum + &(&fk.with_cutoff(d) * &tau.compose_poly(&g));
    }
    let e = (-tau).exp().expect("tau has no constant term");
    acc = &acc + &(&e * &sum);
    acc
}

/// `𝐭̄(1) = Σ_k c_k τ^k/k! - τ`, as a series.
pub fn tbar_at_one<F: Field>(tau: &TSeries<F>, c: &[TSeries<F>]) -> TSeries<F> {
    let d = tau.cutoff();
    let mut acc = -tau;
    let mut p = tau.constant_like(F::one());
    for (k, ck) in c.iter().enumerate().take(d as usize + 1) {
        acc = &acc + &(&p * &ck.with_cutoff(d)).scale(&inv_factorial(k as u32));
        p = &p * tau;
    }
    acc
}

/// Iterates of `T` from 0, exact modulo degree `cutoff + 1`.
pub fn tau_iterates<F: Field>(input: &InputT<F>, cutoff: u32) -> Result<FixedPoint<F>, Genus0Error> {
    let input = input.with_cutoff(cutoff);
    let c = input.taylor_coeffs(cutoff as usize + 1);
    let seed = TSeries::zero(input.series.names().clone(), cutoff);
    Ok(fixed_point(|t| t_map(t, &c), seed, cutoff)?)
}

/// τ as the fixed point of `T`, checked against `𝐭̄(1) = 0`.
pub fn solve_tau<F: Field>(input: &InputT<F>, cutoff: u32) -> Result<TSeries<F>, Genus0Error> {
    let tau = tau_iterates(input, cutoff)?.value;
    let c = input.with_cutoff(cutoff).taylor_coeffs(cutoff as usize + 1);
    let r = tbar_at_one(&tau, &c);
    if !r.is_zero() {
        return Err(Genus0Error::TauMismatch(r.to_string()));
    }
    Ok(tau)
}

/// Independent route: iterate `τ ← Σ_n c_n τ^n/n!` until it stabilizes.
pub fn solve_tau_implicit<F: Field>(input: &InputT<F>, cutoff: u32) -> TSeries<F> {
    let input = input.with_cutoff(cutoff);
    let c = input.taylor_coeffs(cutoff as usize + 1);
    let mut tau = TSeries::zero(input.series.names().clone(), cutoff);
    loop {
        let mut next = tau.zero_like();
        let mut p = tau.constant_like(F::one());
        for (n, cn) in c.iter().enumerate().take(cutoff as usize + 1) {
            next = &next + &(&p * cn).scale(&inv_factorial(n as u32));
            p = &p * &tau;
        }
        if next == tau {
            return tau;
        }
        tau = next;
    }
}

/// `t̄_m = Σ_k c_{k+m} τ^k/k!`, the `(q-1)^m` coefficient of `𝐭̄` for `m ≥ 1`.
pub fn tbar_scalar_coeff<F: Field>(input: &InputT<F>, tau: &TSeries<F>, m: usize) -> TSeries<F> {
    let d = tau.cutoff();
    let c = input.with_cutoff(d).taylor_coeffs(d as usize + m + 1);
    let mut acc = tau.zero_like();
    let mut p = tau.constant_like(F::one());
    for k in 0..=d {
        if let Some(ck) = c.get(k as usize + m) {
            acc = &acc + &(&p * ck).scale(&inv_factorial(k));
        }
        p = &p * tau;
    }
    acc
}

fn regular_at_one<F: Field>(f: &RatFun<F>) -> RatFun<F> {
    if f.den().eval(&F::one()).is_zero() {
        f.clone() - &principal_part(f, &F::one())
    } else {
        f.clone()
    }
}

/// `𝐭̄(q) = [e^{τ/(q-1)} (𝐭(q) + 1 - q)]_+ - (1 - q)`.
///
/// `[·]_+` drops the principal part at `q = 1` term by term in the
/// coordinates, which is what the Laurent-polynomial part does to each
/// coordinate's coefficient.
pub fn sbar_transform<F: Field>(input: &InputT<F>, tau: &TSeries<F>) -> Result<TSeries<RatFun<F>>, Genus0Error> {
    let d = tau.cutoff();
    let base = {
        let one_minus_q = RatFun::linear(Var::Q, -F::one(), F::one());
        &input.series.with_cutoff(d) + &input.series.with_cutoff(d).constant_like(one_minus_q)
    };
    let qm1 = RatFun::linear(Var::Q, F::one(), -F::one());
    let mut acc = base.zero_like();
    let mut p = tau.constant_like(F::one());
    for k in 0..=d {
        let scale = qm1.powi(-(k as i64))?;
        let part = base.try_map_coeffs(|c| Ok::<_, Genus0Error>(regular_at_one(&(c.clone() * &scale))))?;
        acc = &acc + &(&promote(&p, Var::Q) * &part).scale(&RatFun::constant(Var::Q, inv_factorial(k)));
        p = &p * tau;
    }
    let tbar = &acc - &acc.constant_like(RatFun::linear(Var::Q, -F::one(), F::one()));
    let at_one = tbar.try_map_coeffs(|c| c.eval(&F::one()))?;
    if !at_one.is_zero() {
        return Err(Genus0Error::TauMismatch(at_one.to_string()));
    }
    Ok(tbar)
}

/// `(𝐭̄ⁿᵉʷ, 𝐭̄ᶠᵃᵏᵉ)` as functions of `x`:
/// `(𝐭̄(x) + 1 - x) e^{τ/(1-x)} - (1 - x)` and `(1 - x) e^{τ/(1-x)} - (1 - x)`.
pub fn tbar_new_fake<F: Field>(
    tbar: &TSeries<RatFun<F>>,
    tau: &TSeries<F>,
) -> Result<(TSeries<RatFun<F>>, TSeries<RatFun<F>>), SeriesError> {
    let one_minus_x = RatFun::linear(Var::X, -F::one(), F::one());
    let e = exp_times(tau, &one_minus_x.inv().expect("nonzero"))?;
    let tx = tbar.map_coeffs(|c| c.clone().with_var(Var::X));
    let shift = e.constant_like(one_minus_x.clone());
    let new = &(&(&tx + &shift) * &e) - &shift;
    let fake = &(&shift * &e) - &shift;
    Ok((new, fake))
}

/// Every genus-zero object the genus-one formulas consume.
#[derive(Clone, Debug)]
pub struct TBarFamily<F> {
    pub tau: TSeries<F>,
    pub tbar: TSeries<RatFun<F>>,
    pub tbar_new: TSeries<RatFun<F>>,
    pub tbar_fake: TSeries<RatFun<F>>,
}

pub fn tbar_family<F: Field>(input: &InputT<F>, cutoff: u32) -> Result<TBarFamily<F>, Genus0Error> {
    let tau = solve_tau(input, cutoff)?;
    let tbar = sbar_transform(input, &tau)?;
    let (tbar_new, tbar_fake) = tbar_new_fake(&tbar, &tau)?;
    Ok(TBarFamily { tau, tbar, tbar_new, tbar_fake })
}

/// Which form of `D𝐭̄ⁿᵉʷ` to use.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DNewForm {
    /// `e^{τ/(1-x)} e^{qτ/(1-q)} / (1 - qx)`: the derivative of `𝐭̄ⁿᵉʷ`.
    Exact,
    /// `e^{τ/(1-x)} (1/((1-t̄_1)(1-q)) + 1/(1-qx)) e^{qτ/(1-q)}`, which forgets
    /// that the constant term of `𝐭̄` in `(x-1)` is `-τ`; kept for comparison.
    WithSpuriousDTau,
}

/// The D-derivatives along `1/(1-qL)` in closed form. `dtau` lives in `q`;
/// `dnew` and `dfake` are functions of `x` over `Q(q)`.
#[derive(Clone, Debug)]
pub struct DClosedForms<F> {
    pub dtau: TSeries<RatFun<F>>,
    pub dnew: TSeries<RatFun<RatFun<F>>>,
    pub dfake: TSeries<RatFun<RatFun<F>>>,
}

/// Lift `q`-coefficients to constants of an `x`-function field.
pub fn over_q<F: Field>(s: &TSeries<RatFun<F>>) -> TSeries<RatFun<RatFun<F>>> {
    s.map_coeffs(|c| RatFun::constant(Var::X, c.clone()))
}

/// `Dτ = e^{qτ/(1-q)} / ((1-t̄_1)(1-q))`, `D𝐭̄ᶠᵃᵏᵉ = e^{τ/(1-x)} Dτ`, and `D𝐭̄ⁿᵉʷ` per `form`.
pub fn d_closed_forms<F: Field>(input: &InputT<F>, tau: &TSeries<F>, form: DNewForm) -> Result<DClosedForms<F>, Genus0Error> {
    let q = RatFun::<F>::var(Var::Q);
    let one_minus_q = RatFun::linear(Var::Q, -F::one(), F::one());
    let tb1 = tbar_scalar_coeff(input, tau, 1);
    let inv = (&tau.constant_like(F::one()) - &tb1).inv()?;
    let eq = exp_times(tau, &q.div(&one_minus_q)?)?;
    let dtau = (&eq * &promote(&inv, Var::Q)).scale(&one_minus_q.inv()?);

    type G<F> = RatFun<RatFun<F>>;
    let x = G::<F>::var(Var::X);
    let one_minus_x = G::<F>::one() - &x;
    let tau_xq = tau.map_coeffs(|c| G::<F>::constant(Var::X, RatFun::constant(Var::Q, c.clone())));
    let ex = tau_xq.scale(&one_minus_x.inv()?).exp()?;
    let dfake = &ex * &over_q(&dtau);
    let qx = G::<F>::constant(Var::X, q.clone()) * &x;
    let geom = (G::<F>::one() - &qx).inv()?;
    let dnew = match form {
        DNewForm::Exact => (&ex * &over_q(&eq)).scale(&geom),
        DNewForm::WithSpuriousDTau => &(&ex * &over_q(&eq)).scale(&geom) + &dfake,
    };
    Ok(DClosedForms { dtau, dnew, dfake })
}
