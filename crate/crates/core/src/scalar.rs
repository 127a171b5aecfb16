//! Scalar abstractions shared by jets, Bell polynomials and closed-form evaluation.
//!
//! [`Scalar`] is a commutative ring that contains the rationals and can report
//! whether an element is invertible. [`Elementary`] adds the values of the
//! elementary functions at an element; exact types either produce the value
//! exactly or return [`Error::NotExact`].

use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{domain, Error, Result};
use crate::Rational;

pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
{
    fn from_rational(q: &Rational) -> Self;

    fn from_i64(n: i64) -> Self {
        Self::from_rational(&Rational::from_integer(BigInt::from(n)))
    }

    /// Multiplicative inverse, or `None` when the element is not a unit
    /// (or the type cannot represent the inverse).
    fn try_recip(&self) -> Option<Self>;

    /// The element as an exact rational, when it is one.
    fn to_rational(&self) -> Option<Rational>;

    fn scale(&self, q: &Rational) -> Self {
        self.clone() * Self::from_rational(q)
    }

    fn powi(&self, e: i64) -> Result<Self> {
        let base = if e < 0 {
            self.try_recip()
                .ok_or_else(|| Error::Singular(format!("{self:?} raised to {e}")))?
        } else {
            self.clone()
        };
        let mut n = e.unsigned_abs();
        let mut acc = Self::one();
        let mut sq = base;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc * sq.clone();
            }
            n >>= 1;
            if n > 0 {
                sq = sq.clone() * sq;
            }
        }
        Ok(acc)
    }
}

/// Inverse and logarithmic functions whose values at a point may be kept symbolic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SpecialFn {
    Ln,
    Arcsin,
    Arccos,
    Arctan,
}

impl SpecialFn {
    pub fn name(self) -> &'static str {
        match self {
            SpecialFn::Ln => "ln",
            SpecialFn::Arcsin => "arcsin",
            SpecialFn::Arccos => "arccos",
            SpecialFn::Arctan => "arctan",
        }
    }
}

pub trait Elementary: Scalar {
    fn exp_value(&self) -> Result<Self>;
    /// `(sin self, cos self)`.
    fn sin_cos_value(&self) -> Result<(Self, Self)>;
    /// Real power `self^alpha`; non-integer exponents need a positive base.
    fn pow_value(&self, alpha: &Rational) -> Result<Self>;
    fn special_value(&self, f: SpecialFn) -> Result<Self>;
}

/// Exact rational `c^(1/s)` when `c` is a perfect `s`-th power.
pub fn exact_root(c: &Rational, s: u32) -> Option<Rational> {
    if c.is_negative() {
        return None;
    }
    let root = |n: &BigInt| {
        let r = n.nth_root(s);
        (num_traits::pow(r.clone(), s as usize) == *n).then_some(r)
    };
    Some(Rational::new(root(c.numer())?, root(c.denom())?))
}

/// Integer power of a rational, inverting for negative exponents.
pub(crate) fn rational_powi(c: &Rational, e: &BigInt) -> Result<Rational> {
    let n = e
        .to_i32()
        .ok_or_else(|| Error::InvalidArgument(format!("exponent {e} out of range")))?;
    if n < 0 && c.is_zero() {
        return Err(Error::Singular("zero raised to a negative power".into()));
    }
    Ok(num_traits::Pow::pow(c, n))
}

impl Scalar for Rational {
    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }
    fn try_recip(&self) -> Option<Self> {
        (!self.is_zero()).then(|| self.recip())
    }
    fn to_rational(&self) -> Option<Rational> {
        Some(self.clone())
    }
}

impl Elementary for Rational {
    fn exp_value(&self) -> Result<Self> {
        if self.is_zero() {
            Ok(Rational::one())
        } else {
            Err(Error::NotExact(format!("exp({self})")))
        }
    }

    fn sin_cos_value(&self) -> Result<(Self, Self)> {
        if self.is_zero() {
            Ok((Rational::zero(), Rational::one()))
        } else {
            Err(Error::NotExact(format!("sin/cos({self})")))
        }
    }

    fn pow_value(&self, alpha: &Rational) -> Result<Self> {
        if alpha.is_integer() {
            return rational_powi(self, alpha.numer());
        }
        if self.is_negative() {
            return Err(domain(format!("({self})^({alpha}) with negative base")));
        }
        if self.is_zero() {
            return if alpha.is_positive() {
                Ok(Rational::zero())
            } else {
                Err(Error::Singular(format!("0^({alpha})")))
            };
        }
        let s = alpha
            .denom()
            .to_u32()
            .ok_or_else(|| Error::InvalidArgument(format!("exponent {alpha} out of range")))?;
        match exact_root(self, s) {
            Some(r) => rational_powi(&r, alpha.numer()),
            None => Err(Error::NotExact(format!("({self})^({alpha})"))),
        }
    }

    fn special_value(&self, f: SpecialFn) -> Result<Self> {
        let one = Rational::one();
        match f {
            SpecialFn::Ln if !self.is_positive() => Err(domain(format!("ln({self})"))),
            SpecialFn::Ln if self.is_one() => Ok(Rational::zero()),
            SpecialFn::Arcsin | SpecialFn::Arccos if self.abs() > one => {
                Err(domain(format!("{}({self})", f.name())))
            }
            SpecialFn::Arcsin | SpecialFn::Arctan if self.is_zero() => Ok(Rational::zero()),
            SpecialFn::Arccos if self.is_one() => Ok(Rational::zero()),
            _ => Err(Error::NotExact(format!("{}({self})", f.name()))),
        }
    }
}

macro_rules! float_scalar {
    ($t:ty) => {
        impl Scalar for $t {
            fn from_rational(q: &Rational) -> Self {
                let n = q.numer().to_f64().unwrap_or(f64::NAN);
                let d = q.denom().to_f64().unwrap_or(f64::NAN);
                if n.is_finite() && d.is_finite() {
                    (n / d) as $t
                } else {
                    // Very large parts: divide in the exponent domain.
                    let (ln_n, ln_d) = (log2_big(q.numer()), log2_big(q.denom()));
                    let sign = if q.is_negative() { -1.0 } else { 1.0 };
                    (sign * (ln_n - ln_d).exp2()) as $t
                }
            }
            fn try_recip(&self) -> Option<Self> {
                (*self != 0.0).then(|| 1.0 / *self)
            }
            fn to_rational(&self) -> Option<Rational> {
                Rational::from_float(*self)
            }
        }

        impl Elementary for $t {
            fn exp_value(&self) -> Result<Self> {
                Ok(self.exp())
            }
            fn sin_cos_value(&self) -> Result<(Self, Self)> {
                Ok(self.sin_cos())
            }
            fn pow_value(&self, alpha: &Rational) -> Result<Self> {
                if alpha.is_integer() {
                    if let Some(e) = alpha.to_i32() {
                        if e < 0 && *self == 0.0 {
                            return Err(Error::Singular("zero raised to a negative power".into()));
                        }
                        return Ok(<$t>::powi(*self, e));
                    }
                }
                if *self < 0.0 {
                    return Err(domain(format!("({self})^({alpha}) with negative base")));
                }
                Ok(self.powf(<$t as Scalar>::from_rational(alpha)))
            }
            fn special_value(&self, f: SpecialFn) -> Result<Self> {
                let v = match f {
                    SpecialFn::Ln if *self <= 0.0 => return Err(domain(format!("ln({self})"))),
                    SpecialFn::Ln => self.ln(),
                    SpecialFn::Arcsin | SpecialFn::Arccos if self.abs() > 1.0 => {
                        return Err(domain(format!("{}({self})", f.name())))
                    }
                    SpecialFn::Arcsin => self.asin(),
                    SpecialFn::Arccos => self.acos(),
                    SpecialFn::Arctan => self.atan(),
                };
                Ok(v)
            }
        }
    };
}

fn log2_big(n: &BigInt) -> f64 {
    let bits = n.bits();
    if bits <= 1000 {
        return n.abs().to_f64().unwrap_or(f64::INFINITY).log2();
    }
    let shift = bits - 64;
    let top: BigInt = n.abs() >> shift;
    top.to_f64().unwrap_or(f64::NAN).log2() + shift as f64
}

float_scalar!(f64);
float_scalar!(f32);
