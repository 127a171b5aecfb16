//! Truncated Taylor series ("jets") over any [`Scalar`].
//!
//! A jet of order `N` about `x₀` stores `f^{(j)}(x₀)/j!` for `j ≤ N`. Elementary
//! functions are propagated with the series recurrences that follow from their
//! differential equations, so every coefficient is exact whenever the scalar type
//! is. Over [`BasisValue`] the constant terms keep `exp u₀`, `sin u₀`, `cos u₀`
//! and similar as symbols, which is what keeps oracle comparisons exact.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use crate::basis::{BasisValue, Monomial};
use crate::combinatorics::factorial;
use crate::error::{invalid, Error, Result};
use crate::scalar::{Elementary, Scalar, SpecialFn};
use crate::Rational;

/// Order of constant jets: they are exact to every order.
pub const UNBOUNDED: usize = usize::MAX;

#[derive(Debug, Clone)]
pub struct Jet<T> {
    // Coefficients past the end are zero; never longer than order + 1.
    coeffs: Vec<T>,
    order: usize,
}

fn recip_k(k: usize) -> Rational {
    Rational::new(BigInt::one(), BigInt::from(k))
}

impl<T: Scalar> Jet<T> {
    pub fn constant(c: T) -> Self {
        Jet { coeffs: vec![c], order: UNBOUNDED }.trimmed()
    }

    /// The identity function `x` expanded about `x0`.
    pub fn variable(x0: T, order: usize) -> Self {
        let mut coeffs = vec![x0];
        if order >= 1 {
            coeffs.push(T::one());
        }
        Jet { coeffs, order }.trimmed()
    }

    pub fn from_coeffs(coeffs: Vec<T>, order: usize) -> Result<Self> {
        if order != UNBOUNDED && coeffs.len() > order + 1 {
            return Err(invalid(format!(
                "{} coefficients do not fit a jet of order {order}",
                coeffs.len()
            )));
        }
        Ok(Jet { coeffs, order }.trimmed())
    }

    fn trimmed(mut self) -> Self {
        if self.order != UNBOUNDED {
            self.coeffs.truncate(self.order + 1);
        }
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
        self
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Taylor coefficient `k` (zero past the stored terms).
    pub fn coeff(&self, k: usize) -> T {
        self.coeffs.get(k).cloned().unwrap_or_else(T::zero)
    }

    pub fn value(&self) -> T {
        self.coeff(0)
    }

    /// All coefficients up to the order of the jet.
    pub fn coeffs(&self) -> Result<Vec<T>> {
        if self.order == UNBOUNDED {
            return Err(invalid("an unbounded jet has no finite coefficient list"));
        }
        Ok((0..=self.order).map(|k| self.coeff(k)).collect())
    }

    /// `f^{(n)}(x₀) = n! · coeff(n)`.
    pub fn derivative(&self, n: usize) -> Result<T> {
        if n > self.order {
            return Err(invalid(format!("order {n} exceeds jet order {}", self.order)));
        }
        let n32 = u32::try_from(n).map_err(|_| invalid("order too large"))?;
        let f = Rational::from_integer(BigInt::from(factorial(n32)));
        Ok(self.coeff(n).scale(&f))
    }

    /// `d/dx`, one order lower.
    pub fn differentiate(&self) -> Self {
        let order = match self.order {
            UNBOUNDED => UNBOUNDED,
            0 => 0,
            n => n - 1,
        };
        let coeffs = (1..self.coeffs.len())
            .map(|k| self.coeffs[k].scale(&Rational::from_integer(BigInt::from(k))))
            .collect();
        Jet { coeffs, order }.trimmed()
    }

    /// Antiderivative with constant term `c0`, one order higher.
    pub fn integrate(&self, c0: T) -> Self {
        let order = self.order.saturating_add(1);
        let mut coeffs = vec![c0];
        coeffs.extend(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| c.scale(&recip_k(k + 1))),
        );
        Jet { coeffs, order }.trimmed()
    }

    /// Number of coefficients a non-polynomial result needs.
    fn series_len(&self, what: &str) -> Result<usize> {
        if self.order == UNBOUNDED {
            if self.is_constant() {
                return Ok(1);
            }
            return Err(invalid(format!("{what} of a polynomial with unbounded order")));
        }
        Ok(self.order + 1)
    }

    pub fn recip(&self) -> Result<Self> {
        let u0 = self.value();
        let inv = u0
            .try_recip()
            .ok_or_else(|| Error::Singular(format!("reciprocal of a jet with constant term {u0:?}")))?;
        let len = self.series_len("reciprocal")?;
        let mut y = vec![inv.clone()];
        for k in 1..len {
            let mut acc = T::zero();
            for j in 1..=k.min(self.coeffs.len().saturating_sub(1)) {
                acc = acc + self.coeffs[j].clone() * y[k - j].clone();
            }
            y.push(-(inv.clone() * acc));
        }
        Ok(Jet { coeffs: y, order: self.order }.trimmed())
    }

    pub fn try_div(&self, other: &Self) -> Result<Self> {
        Ok(self.clone() * other.recip()?)
    }

    /// `self^alpha` for rational `alpha`.
    pub fn pow_rational(&self, alpha: &Rational) -> Result<Self>
    where
        T: Elementary,
    {
        if alpha.is_integer() {
            let e = alpha
                .to_i64()
                .ok_or_else(|| invalid(format!("exponent {alpha} out of range")))?;
            return self.powi(e);
        }
        let u0 = self.value();
        let y0 = u0.pow_value(alpha)?;
        let len = self.series_len("power")?;
        if len == 1 || self.is_constant() {
            return Ok(Jet { coeffs: vec![y0], order: self.order }.trimmed());
        }
        let inv = u0
            .try_recip()
            .ok_or_else(|| Error::Singular(format!("power {alpha} at a zero constant term")))?;
        let mut y = vec![y0];
        for k in 1..len {
            let mut acc = T::zero();
            for j in 1..=k.min(self.coeffs.len() - 1) {
                let w = alpha * Rational::from_integer(BigInt::from(j))
                    - Rational::from_integer(BigInt::from(k - j));
                acc = acc + (self.coeffs[j].clone() * y[k - j].clone()).scale(&w);
            }
            y.push((inv.clone() * acc).scale(&recip_k(k)));
        }
        Ok(Jet { coeffs: y, order: self.order }.trimmed())
    }

    pub fn sqrt(&self) -> Result<Self>
    where
        T: Elementary,
    {
        self.pow_rational(&Rational::new(1.into(), 2.into()))
    }
}

impl<T: Elementary> Jet<T> {
    pub fn exp(&self) -> Result<Self> {
        let y0 = self.value().exp_value()?;
        let len = self.series_len("exp")?;
        let mut y = vec![y0];
        for k in 1..len {
            let mut acc = T::zero();
            for j in 1..=k.min(self.coeffs.len().saturating_sub(1)) {
                acc = acc
                    + (self.coeffs[j].clone() * y[k - j].clone())
                        .scale(&Rational::from_integer(BigInt::from(j)));
            }
            y.push(acc.scale(&recip_k(k)));
        }
        Ok(Jet { coeffs: y, order: self.order }.trimmed())
    }

    pub fn sin_cos(&self) -> Result<(Self, Self)> {
        let (s0, c0) = self.value().sin_cos_value()?;
        let len = self.series_len("sin/cos")?;
        let (mut s, mut c) = (vec![s0], vec![c0]);
        for k in 1..len {
            let (mut sa, mut ca) = (T::zero(), T::zero());
            for j in 1..=k.min(self.coeffs.len().saturating_sub(1)) {
                let ju = self.coeffs[j].scale(&Rational::from_integer(BigInt::from(j)));
                sa = sa + ju.clone() * c[k - j].clone();
                ca = ca + ju * s[k - j].clone();
            }
            s.push(sa.scale(&recip_k(k)));
            c.push(-ca.scale(&recip_k(k)));
        }
        Ok((
            Jet { coeffs: s, order: self.order }.trimmed(),
            Jet { coeffs: c, order: self.order }.trimmed(),
        ))
    }

    pub fn sin(&self) -> Result<Self> {
        Ok(self.sin_cos()?.0)
    }

    pub fn cos(&self) -> Result<Self> {
        Ok(self.sin_cos()?.1)
    }

    pub fn ln(&self) -> Result<Self> {
        let u0 = self.value();
        let y0 = u0.special_value(SpecialFn::Ln)?;
        let len = self.series_len("ln")?;
        if len == 1 || self.is_constant() {
            return Ok(Jet { coeffs: vec![y0], order: self.order }.trimmed());
        }
        let inv = u0
            .try_recip()
            .ok_or_else(|| Error::Singular("ln at a zero constant term".into()))?;
        let mut y = vec![y0];
        for k in 1..len {
            let mut acc = T::zero();
            for j in 1..k {
                acc = acc
                    + (y[j].clone() * self.coeff(k - j))
                        .scale(&Rational::from_integer(BigInt::from(j)));
            }
            let yk = inv.clone() * (self.coeff(k) - acc.scale(&recip_k(k)));
            y.push(yk);
        }
        Ok(Jet { coeffs: y, order: self.order }.trimmed())
    }

    fn integrate_derivative(&self, y0: T, dy: impl FnOnce(&Self) -> Result<Self>) -> Result<Self> {
        if self.series_len("inverse function")? == 1 || self.is_constant() || self.order == 0 {
            return Ok(Jet { coeffs: vec![y0], order: self.order }.trimmed());
        }
        Ok(dy(self)?.integrate(y0))
    }

    /// Through `(arctan u)' = u' / (1 + u²)`.
    pub fn arctan(&self) -> Result<Self> {
        let y0 = self.value().special_value(SpecialFn::Arctan)?;
        self.integrate_derivative(y0, |u| {
            let d = u.differentiate();
            let den = Self::one() + u.clone() * u.clone();
            Ok(d * den.recip()?)
        })
    }

    /// Through `(arcsin u)' = u' (1 − u²)^{−1/2}`.
    pub fn arcsin(&self) -> Result<Self> {
        let y0 = self.value().special_value(SpecialFn::Arcsin)?;
        self.integrate_derivative(y0, |u| {
            let d = u.differentiate();
            let base = Self::one() - u.clone() * u.clone();
            Ok(d * base.pow_rational(&Rational::new((-1).into(), 2.into()))?)
        })
    }

    pub fn arccos(&self) -> Result<Self> {
        let y0 = self.value().special_value(SpecialFn::Arccos)?;
        self.integrate_derivative(y0, |u| {
            let d = u.differentiate();
            let base = Self::one() - u.clone() * u.clone();
            Ok(-(d * base.pow_rational(&Rational::new((-1).into(), 2.into()))?))
        })
    }
}

impl Jet<BasisValue> {
    /// Splits the jet into one rational coefficient list per transcendental basis monomial.
    pub fn split_basis(&self) -> BTreeMap<Monomial, Vec<Rational>> {
        let mut out: BTreeMap<Monomial, Vec<Rational>> = BTreeMap::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            for (m, q) in c.terms() {
                let row = out.entry(m.clone()).or_default();
                row.resize(self.coeffs.len(), Rational::zero());
                row[k] = q.clone();
            }
        }
        out
    }
}

impl<T: Scalar> PartialEq for Jet<T> {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.coeffs == other.coeffs
    }
}

impl<T: Scalar> Zero for Jet<T> {
    fn zero() -> Self {
        Jet { coeffs: Vec::new(), order: UNBOUNDED }
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl<T: Scalar> One for Jet<T> {
    fn one() -> Self {
        Self::constant(T::one())
    }
}

impl<T: Scalar> Add for Jet<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let order = self.order.min(rhs.order);
        let (mut long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self.coeffs, rhs.coeffs)
        } else {
            (rhs.coeffs, self.coeffs)
        };
        for (a, b) in long.iter_mut().zip(short) {
            *a = a.clone() + b;
        }
        Jet { coeffs: long, order }.trimmed()
    }
}

impl<T: Scalar> Neg for Jet<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Jet {
            coeffs: self.coeffs.into_iter().map(|c| -c).collect(),
            order: self.order,
        }
    }
}

impl<T: Scalar> Sub for Jet<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<T: Scalar> Mul for Jet<T> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let order = self.order.min(rhs.order);
        if self.coeffs.is_empty() || rhs.coeffs.is_empty() {
            return Jet { coeffs: Vec::new(), order };
        }
        let mut len = self.coeffs.len() + rhs.coeffs.len() - 1;
        if order != UNBOUNDED {
            len = len.min(order + 1);
        }
        let mut out = vec![T::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate().take(len) {
            for (j, b) in rhs.coeffs.iter().enumerate().take(len - i) {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Jet { coeffs: out, order }.trimmed()
    }
}

impl<T: Scalar> Scalar for Jet<T> {
    fn from_rational(q: &Rational) -> Self {
        Self::constant(T::from_rational(q))
    }

    fn try_recip(&self) -> Option<Self> {
        self.recip().ok()
    }

    fn to_rational(&self) -> Option<Rational> {
        if self.is_constant() {
            self.value().to_rational()
        } else {
            None
        }
    }

    fn scale(&self, q: &Rational) -> Self {
        Jet {
            coeffs: self.coeffs.iter().map(|c| c.scale(q)).collect(),
            order: self.order,
        }
        .trimmed()
    }
}

impl<T: Elementary> Elementary for Jet<T> {
    fn exp_value(&self) -> Result<Self> {
        self.exp()
    }

    fn sin_cos_value(&self) -> Result<(Self, Self)> {
        self.sin_cos()
    }

    fn pow_value(&self, alpha: &Rational) -> Result<Self> {
        self.pow_rational(alpha)
    }

    fn special_value(&self, f: SpecialFn) -> Result<Self> {
        match f {
            SpecialFn::Ln => self.ln(),
            SpecialFn::Arcsin => self.arcsin(),
            SpecialFn::Arccos => self.arccos(),
            SpecialFn::Arctan => self.arctan(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::double_factorial;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn x(x0: Rational, n: usize) -> Jet<Rational> {
        Jet::variable(x0, n)
    }

    #[test]
    fn geometric_series() {
        let t = x(q(0, 1), 3);
        let one = Jet::<Rational>::one();
        let r = (one.clone() + t.clone()).try_div(&(one - t)).unwrap();
        assert_eq!(r.coeffs().unwrap(), vec![q(1, 1), q(2, 1), q(2, 1), q(2, 1)]);
    }

    #[test]
    fn sqrt_of_constant_and_binomial_series() {
        let c = Jet::from_coeffs(vec![q(9, 1)], 2).unwrap();
        assert_eq!(c.sqrt().unwrap().coeffs().unwrap(), vec![q(3, 1), q(0, 1), q(0, 1)]);
        let t = x(q(0, 1), 4);
        let base = Jet::one() - t.clone() * t;
        let r = base.pow_rational(&q(-1, 2)).unwrap();
        assert_eq!(
            r.coeffs().unwrap(),
            vec![q(1, 1), q(0, 1), q(1, 2), q(0, 1), q(3, 8)]
        );
    }

    #[test]
    fn reciprocal_of_zero_is_singular() {
        assert!(matches!(x(q(0, 1), 3).recip(), Err(Error::Singular(_))));
    }

    #[test]
    fn exp_series() {
        let e = x(q(0, 1), 4).exp().unwrap();
        assert_eq!(
            e.coeffs().unwrap(),
            vec![q(1, 1), q(1, 1), q(1, 2), q(1, 6), q(1, 24)]
        );
    }

    #[test]
    fn sin_cos_series() {
        let (s, c) = x(q(0, 1), 5).sin_cos().unwrap();
        assert_eq!(s.coeffs().unwrap()[5], q(1, 120));
        assert_eq!(c.coeffs().unwrap()[4], q(1, 24));
    }

    #[test]
    fn ln_series() {
        let one = Jet::<Rational>::one();
        let l = (one + x(q(0, 1), 4)).ln().unwrap();
        assert_eq!(
            l.coeffs().unwrap(),
            vec![q(0, 1), q(1, 1), q(-1, 2), q(1, 3), q(-1, 4)]
        );
        assert!(matches!(x(q(-1, 1), 2).ln(), Err(Error::Domain(_))));
    }

    #[test]
    fn arcsin_about_zero() {
        let a = x(q(0, 1), 15).arcsin().unwrap();
        for j in 0..=7i64 {
            let odd = double_factorial(2 * j - 1).unwrap();
            let want = Rational::new(
                BigInt::from(odd.clone() * odd),
                BigInt::from(factorial(2 * j as u32 + 1)),
            );
            assert_eq!(a.coeff(2 * j as usize + 1), want);
            assert!(a.coeff(2 * j as usize).is_zero());
        }
    }

    #[test]
    fn arctan_about_zero() {
        let a = x(q(0, 1), 7).arctan().unwrap();
        assert_eq!(a.coeff(7), q(-1, 7));
        assert_eq!(a.coeff(5), q(1, 5));
    }

    #[test]
    fn derivative_scaling() {
        let t = x(q(5, 1), 3);
        assert_eq!((t.clone() * t).derivative(2).unwrap(), q(2, 1));
    }

    #[test]
    fn exact_basis_exp_of_square() {
        let t = Jet::variable(BasisValue::from(q(1, 2)), 2);
        let e = (t.clone() * t).exp().unwrap();
        let want = BasisValue::exp_atom(q(1, 4).into()).scale(&q(3, 1));
        assert_eq!(e.derivative(2).unwrap(), want);
    }

    #[test]
    fn float_jets() {
        let t = Jet::variable(0.5f64, 3);
        let s = t.sin().unwrap();
        assert!((s.derivative(3).unwrap() + 0.5f64.cos()).abs() < 1e-12);
    }

    #[test]
    fn split_basis_separates_sin_and_cos() {
        let u0 = BasisValue::from(q(1, 3));
        let (s, _) = Jet::variable(u0.clone(), 2).sin_cos().unwrap();
        let parts = s.split_basis();
        assert_eq!(parts.len(), 2);
        let sin_m = BasisValue::trig_power(&u0, 1, 0);
        let (m, _) = sin_m.terms().next().unwrap();
        assert_eq!(parts[m], vec![q(1, 1), q(0, 1), q(-1, 2)]);
    }
}
