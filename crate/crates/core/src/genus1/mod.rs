//! Genus-one assembly at the point target.

mod prop31;
mod reference;
mod table;
mod theorem1;
mod theorem2;

pub use prop31::{
    hodge_substitute, prop31_closed, prop31_rhs, prop31_via_roots, simplified_display, tau_series, total_contribution_display,
    SimplifiedForm,
};
pub use reference::{reference_first_order, reference_two_point, reference_two_point_at};
pub use table::CorrelatorTable;
pub use theorem1::{
    direction_input, extract_two_point, f1_primary, ftw1, logdet_by_derivative, logdet_term, theorem1_total, two_point_coefficient, weight,
    ResidueRoute, Theorem1Parts,
};
pub use theorem2::{theorem2_rhs, Theorem2Form};

use crate::genus0::Genus0Error;
use crate::ratfun::{
    product_residue, residue_at, residue_sum, split_roots_of_unity, CalcError, Center, CyclotomicLift, PoleSet, RatFun, RootsOfUnity, Var,
};
use crate::scalars::{ArithError, Field, Rational};
use crate::tseries::{IdealOrder, SeriesError, TSeries};

/// Rational functions of two variables, as `Q(q2)(q1)` (or `Q(q)(x)`).
pub type Bivariate = RatFun<RatFun<Rational>>;

/// Highest genus-one order (modulo `I^order`) the stored correlators support.
pub const MAX_ORDER: u32 = 3;

pub const DEFAULT_CYCLOTOMIC_ORDER: u32 = 12;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Genus1Error {
    #[error(transparent)]
    Genus0(#[from] Genus0Error),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Calc(#[from] CalcError),
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error("order {0} is not supported (need 1 <= order <= {MAX_ORDER})")]
    UnsupportedOrder(u32),
    #[error("a term with {0} twisted insertions survives truncation but its correlator is not available")]
    MissingCorrelatorData(usize),
    #[error("cannot substitute atom {0}")]
    UnsupportedAtom(String),
    #[error("cyclotomic order {0} must be a multiple of 12 to contain the poles of the point correlators")]
    CyclotomicOrder(u32),
    #[error("correlator table check failed: {0}")]
    TableIntegrity(String),
}

pub(crate) fn check_cyclotomic_order(n: u32) -> Result<(), Genus1Error> {
    if n == 0 || n % 12 != 0 {
        return Err(Genus1Error::CyclotomicOrder(n));
    }
    Ok(())
}

pub(crate) fn check_order(order: u32) -> Result<(), Genus1Error> {
    if !(1..=MAX_ORDER).contains(&order) {
        return Err(Genus1Error::UnsupportedOrder(order));
    }
    Ok(())
}

/// A rational function over `Q` viewed over `F`, in variable `v`.
pub(crate) fn lift_rational<F: Field>(r: &RatFun<Rational>, v: Var) -> RatFun<F> {
    r.map_coeffs(F::from_rational).with_var(v)
}

/// Residues at every finite pole that is not a root of unity ≠ 1, plus ∞.
pub(crate) fn formal_residue_sum<F: Field>(f: &RatFun<F>, n: u32) -> F {
    residue_sum(f, PoleSet::NonRootsOfUnity { order: n, include_one: true }) + &residue_at(f, Center::Infinity)
}

/// `Σ Res_ζ` over `n`-th roots of unity, each computed in `Q(ζ_n)`.
pub(crate) fn roots_residue_sum<F: CyclotomicLift>(f: &RatFun<F>, n: u32, include_one: bool) -> Result<F, ArithError> {
    let lifted = f.map_coeffs(|c| c.lift());
    let mut acc = F::Lifted::zero();
    for z in F::Lifted::roots_of_unity(n) {
        if z.is_one() && !include_one {
            continue;
        }
        acc = acc + &residue_at(&lifted, Center::At(z));
    }
    F::contract(&acc)
}

/// `Σ_k c_k Π_j f_kj`, kept as unmultiplied factors.
pub(crate) type ProductSum<F> = Vec<(F, Vec<RatFun<F>>)>;

/// The poles of `f` that are not roots of unity ≠ 1, when each is explicit:
/// 1, 0, and at most one further (possibly repeated) root.
fn explicit_poles<F: Field>(f: &RatFun<F>, n: u32) -> Option<Vec<F>> {
    let (ones, _, rest) = split_roots_of_unity(f.den(), n);
    let mut out = Vec::new();
    if ones.degree().unwrap_or(0) > 0 {
        out.push(F::one());
    }
    let v = rest.valuation();
    if v > 0 {
        out.push(F::zero());
    }
    let rest = rest.shift_down(v);
    if rest.degree().unwrap_or(0) > 0 {
        let sq = rest.squarefree_part();
        if sq.degree() != Some(1) {
            return None;
        }
        out.push(-sq.constant_term() * &sq.lc()?.inv().ok()?);
    }
    Some(out)
}

/// [`formal_residue_sum`] of a sum of products, taking each residue from the
/// factors' local expansions so the products are never reduced.
pub(crate) fn formal_residue_sum_of_products<F: Field>(terms: &ProductSum<F>, n: u32) -> F {
    let mut acc = F::zero();
    for (c, fs) in terms {
        let refs: Vec<&RatFun<F>> = fs.iter().collect();
        let mut poles: Vec<F> = Vec::new();
        let mut explicit = true;
        for f in fs {
            match explicit_poles(f, n) {
                Some(ps) => {
                    for a in ps {
                        if !poles.contains(&a) {
                            poles.push(a);
                        }
                    }
                }
                None => explicit = false,
            }
        }
        let r = if explicit {
            poles.into_iter().fold(product_residue(&refs, &Center::Infinity), |s, a| s + &product_residue(&refs, &Center::At(a)))
        } else {
            let p = fs.iter().fold(RatFun::one(), |p, f| p * f);
            formal_residue_sum(&p, n)
        };
        acc = acc + &(c.clone() * &r);
    }
    acc
}

/// Whether `y^k` can survive truncation.
pub(crate) fn power_survives<C: Field>(y: &TSeries<C>, k: u32) -> bool {
    match y.ideal_order() {
        IdealOrder::Finite(o) => k * o <= y.cutoff(),
        IdealOrder::Infinity => false,
    }
}

pub(crate) fn add_multi(a: &[u32], b: &[u32]) -> Vec<u32> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}
