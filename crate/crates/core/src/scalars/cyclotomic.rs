use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_integer::Integer;

use super::field::{join_terms, signed_term, ArithError, Field, Rational};
use crate::poly::Poly;

/// Euler's totient.
pub fn euler_phi(n: u32) -> u32 {
    (1..=n).filter(|k| k.gcd(&n) == 1).count() as u32
}

/// Coefficients of the n-th cyclotomic polynomial, low degree first.
pub fn cyclotomic_polynomial(n: u32) -> Vec<i64> {
    assert!(n >= 1, "cyclotomic order must be positive");
    // x^n - 1 divided by Phi_d for every proper divisor d
    let mut p: Vec<i64> = vec![0; n as usize + 1];
    p[0] = -1;
    p[n as usize] = 1;
    for d in (1..n).filter(|d| n % d == 0) {
        p = div_exact_int(&p, &cyclotomic_polynomial(d));
    }
    p
}

fn div_exact_int(a: &[i64], b: &[i64]) -> Vec<i64> {
    // b is monic
    let mut r = a.to_vec();
    let (na, nb) = (a.len() - 1, b.len() - 1);
    let mut q = vec![0; na - nb + 1];
    for k in (0..=na - nb).rev() {
        let t = r[k + nb];
        q[k] = t;
        for (j, bj) in b.iter().enumerate() {
            r[k + j] -= t * bj;
        }
    }
    debug_assert!(r.iter().all(|&x| x == 0));
    q
}

/// Element of the cyclotomic field `Q(ζ_N)`, in the power basis
/// `1, ζ, …, ζ^{φ(N)-1}` reduced modulo `Φ_N`.
///
/// Binary operations between different orders embed both operands into
/// `Q(ζ_lcm)`; rationals live at order 1 and so mix freely.
#[derive(Clone)]
pub struct Cyc {
    order: u32,
    coords: Vec<Rational>,
    modulus: Arc<[i64]>,
}

impl fmt::Debug for Cyc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyc[{}]({})", self.order, self)
    }
}

fn reduce(mut c: Vec<Rational>, modulus: &[i64]) -> Vec<Rational> {
    let d = modulus.len() - 1;
    for k in (d..c.len()).rev() {
        let t = std::mem::replace(&mut c[k], Rational::zero());
        if t.is_zero() {
            continue;
        }
        for (j, mj) in modulus.iter().enumerate().take(d) {
            if *mj != 0 {
                c[k - d + j] -= &t * Rational::from_integer((*mj).into());
            }
        }
    }
    c.resize(d, Rational::zero());
    c
}

impl Cyc {
    fn with_order(order: u32, coords: Vec<Rational>) -> Self {
        let modulus: Arc<[i64]> = cyclotomic_polynomial(order).into();
        let coords = reduce(coords, &modulus);
        Cyc { order, coords, modulus }
    }

    /// Build from power-basis coefficients (any length; reduced on entry).
    pub fn from_coords(order: u32, coords: Vec<Rational>) -> Self {
        Self::with_order(order, coords)
    }

    pub fn rational(r: Rational) -> Self {
        Cyc { order: 1, coords: vec![r], modulus: Arc::from([-1i64, 1].as_slice()) }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// Coordinates in the power basis, length `φ(N)`.
    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    /// Embed into `Q(ζ_m)`; `m` must be a multiple of the current order.
    pub fn promote(&self, m: u32) -> Self {
        if m == self.order {
            return self.clone();
        }
        assert!(m % self.order == 0, "cannot embed Q(z{}) into Q(z{m})", self.order);
        let step = (m / self.order) as usize;
        let mut c = vec![Rational::zero(); (self.coords.len().max(1) - 1) * step + 1];
        for (j, a) in self.coords.iter().enumerate() {
            c[j * step] = a.clone();
        }
        Self::with_order(m, c)
    }

    fn common(&self, o: &Self) -> (Cyc, Cyc) {
        if self.order == o.order {
            return (self.clone(), o.clone());
        }
        let m = self.order.lcm(&o.order);
        (self.promote(m), o.promote(m))
    }

    /// Addition that refuses to promote between distinct orders.
    pub fn checked_add(&self, o: &Self) -> Result<Self, ArithError> {
        if self.order != o.order {
            return Err(ArithError::IncompatibleOrder(self.order, o.order));
        }
        Ok(self.clone() + o)
    }

    /// Multiplication that refuses to promote between distinct orders.
    pub fn checked_mul(&self, o: &Self) -> Result<Self, ArithError> {
        if self.order != o.order {
            return Err(ArithError::IncompatibleOrder(self.order, o.order));
        }
        Ok(self.clone() * o)
    }

    /// The rational value, or `NotRational` if any non-constant coordinate survives.
    pub fn as_rational(&self) -> Result<Rational, ArithError> {
        if self.coords.iter().skip(1).all(|c| c.is_zero()) {
            Ok(self.coords.first().cloned().unwrap_or_else(Rational::zero))
        } else {
            Err(ArithError::NotRational(self.to_string()))
        }
    }

    /// Reduce again modulo `Φ_N` (a no-op on canonical values).
    pub fn reduced(&self) -> Self {
        Self::with_order(self.order, self.coords.clone())
    }

    /// Complex conjugate (`ζ -> ζ^{-1}`).
    pub fn conj(&self) -> Self {
        let n = self.order;
        let mut acc = Cyc::zero();
        for (j, a) in self.coords.iter().enumerate() {
            if !a.is_zero() {
                acc = acc + root_of_unity(-(j as i64), n) * &Cyc::rational(a.clone());
            }
        }
        acc.promote(n)
    }

    fn as_poly(&self) -> Poly<Rational> {
        Poly::new(self.coords.clone())
    }
}

/// `ζ_N^k` in canonical coordinates.
pub fn root_of_unity(k: i64, n: u32) -> Cyc {
    assert!(n >= 1, "cyclotomic order must be positive");
    let e = k.rem_euclid(n as i64) as usize;
    let mut c = vec![Rational::zero(); e + 1];
    c[e] = Rational::one();
    Cyc::with_order(n, c)
}

impl PartialEq for Cyc {
    fn eq(&self, o: &Self) -> bool {
        let (a, b) = self.common(o);
        a.coords == b.coords
    }
}

impl Add<&Cyc> for Cyc {
    type Output = Cyc;
    fn add(self, o: &Cyc) -> Cyc {
        let (mut a, b) = self.common(o);
        for (x, y) in a.coords.iter_mut().zip(b.coords.iter()) {
            *x += y;
        }
        a
    }
}

impl Sub<&Cyc> for Cyc {
    type Output = Cyc;
    fn sub(self, o: &Cyc) -> Cyc {
        let (mut a, b) = self.common(o);
        for (x, y) in a.coords.iter_mut().zip(b.coords.iter()) {
            *x -= y;
        }
        a
    }
}

impl Mul<&Cyc> for Cyc {
    type Output = Cyc;
    fn mul(self, o: &Cyc) -> Cyc {
        if self.order == 1 && o.order == 1 {
            return Cyc::rational(&self.coords[0] * &o.coords[0]);
        }
        let (a, b) = self.common(o);
        let mut c = vec![Rational::zero(); a.coords.len() + b.coords.len()];
        for (i, x) in a.coords.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coords.iter().enumerate() {
                if !y.is_zero() {
                    c[i + j] += x * y;
                }
            }
        }
        let coords = reduce(c, &a.modulus);
        Cyc { order: a.order, coords, modulus: a.modulus }
    }
}

impl Add for Cyc {
    type Output = Cyc;
    fn add(self, o: Cyc) -> Cyc {
        self + &o
    }
}
impl Sub for Cyc {
    type Output = Cyc;
    fn sub(self, o: Cyc) -> Cyc {
        self - &o
    }
}
impl Mul for Cyc {
    type Output = Cyc;
    fn mul(self, o: Cyc) -> Cyc {
        self * &o
    }
}
impl Neg for Cyc {
    type Output = Cyc;
    fn neg(mut self) -> Cyc {
        for x in self.coords.iter_mut() {
            *x = -x.clone();
        }
        self
    }
}

impl Field for Cyc {
    fn zero() -> Self {
        Cyc::rational(Rational::zero())
    }
    fn one() -> Self {
        Cyc::rational(Rational::one())
    }
    fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }
    fn inv(&self) -> Result<Self, ArithError> {
        if self.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        if self.order == 1 {
            return Ok(Cyc::rational(self.coords[0].recip()));
        }
        let m = Poly::new(self.modulus.iter().map(|&v| Rational::from_integer(v.into())).collect());
        let s = self.as_poly().inv_mod(&m).ok_or(ArithError::DivisionByZero)?;
        Ok(Cyc::with_order(self.order, s.into_coeffs()))
    }
    fn from_rational(r: &Rational) -> Self {
        Cyc::rational(r.clone())
    }
    fn to_rational(&self) -> Option<Rational> {
        self.as_rational().ok()
    }
}

impl fmt::Display for Cyc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let z = format!("z{}", self.order);
        let mut terms = Vec::new();
        for (j, a) in self.coords.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let body = match j {
                0 => String::new(),
                1 => z.clone(),
                _ => format!("{z}^{j}"),
            };
            terms.push(signed_term(a, &body));
        }
        f.write_str(&join_terms(&terms))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{int, rat};

    #[test]
    fn known_cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(euler_phi(12), 4);
    }

    #[test]
    fn invert_zeta4() {
        let i = root_of_unity(1, 4);
        assert_eq!(i.inv().unwrap(), root_of_unity(3, 4));
        assert_eq!(i.inv().unwrap(), -root_of_unity(1, 4));
    }

    #[test]
    fn invert_one_plus_i() {
        let i = root_of_unity(1, 4);
        let a = Cyc::one() + &i;
        let expected = (Cyc::one() - &i) * &Cyc::rational(rat(1, 2));
        let inv = a.inv().unwrap();
        assert_eq!(inv, expected);
        assert!((inv * &a).is_one());
    }

    #[test]
    fn twelfth_roots() {
        let z2 = root_of_unity(2, 12);
        assert_eq!(z2.clone() * &z2 * &z2, Cyc::from_int(-1));
        assert!(root_of_unity(0, 12).is_one());
        assert_eq!(root_of_unity(6, 12), Cyc::from_int(-1));
        // ω = ζ12^2 is a primitive sixth root: ω^2 - ω + 1 = 0
        let w = root_of_unity(2, 12);
        assert!((w.clone() * &w - &w + &Cyc::one()).is_zero());
    }

    #[test]
    fn as_rational_cases() {
        let i = root_of_unity(1, 4);
        assert_eq!((i.clone() + &(-i.clone())).as_rational().unwrap(), int(0));
        let w = root_of_unity(1, 6);
        assert_eq!((w.clone() + &w.inv().unwrap()).as_rational().unwrap(), int(1));
        assert!(matches!(i.as_rational(), Err(ArithError::NotRational(_))));
    }

    #[test]
    fn mixed_orders_promote() {
        let i = root_of_unity(1, 4);
        let w = root_of_unity(1, 6);
        let s = i.clone() + &w;
        assert_eq!(s.order(), 12);
        assert_eq!(s - &w, i.clone());
        assert!(matches!(i.checked_add(&w), Err(ArithError::IncompatibleOrder(4, 6))));
    }

    #[test]
    fn conjugation() {
        let z = root_of_unity(5, 12);
        assert_eq!(z.conj(), root_of_unity(7, 12));
        assert!((z.clone() * &z.conj()).is_one());
    }
}
