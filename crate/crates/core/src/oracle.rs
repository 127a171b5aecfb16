//! Reference derivatives that do not use any closed form.
//!
//! [`nth_derivative_via_jet`] pushes a Taylor jet through a [`Func`] tree;
//! [`faa_di_bruno`] assembles a composite derivative from Bell polynomials.

use std::fmt;

use num_traits::One;

use crate::basis::BasisValue;
use crate::bell::bell_general;
use crate::error::{invalid, Result};
use crate::jet::Jet;
use crate::scalar::{Elementary, Scalar, SpecialFn};
use crate::Rational;

/// An expression in one variable built from the elementary vocabulary.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Func {
    X,
    Const(Rational),
    Add(Box<Func>, Box<Func>),
    Sub(Box<Func>, Box<Func>),
    Mul(Box<Func>, Box<Func>),
    Div(Box<Func>, Box<Func>),
    Neg(Box<Func>),
    Pow(Box<Func>, Rational),
    Exp(Box<Func>),
    Ln(Box<Func>),
    Sin(Box<Func>),
    Cos(Box<Func>),
    Arctan(Box<Func>),
    Arcsin(Box<Func>),
    Arccos(Box<Func>),
}

impl Func {
    pub fn konst(q: Rational) -> Func {
        Func::Const(q)
    }

    pub fn int(n: i64) -> Func {
        Func::Const(Rational::from_integer(n.into()))
    }

    pub fn exp(self) -> Func {
        Func::Exp(Box::new(self))
    }

    pub fn ln(self) -> Func {
        Func::Ln(Box::new(self))
    }

    pub fn sin(self) -> Func {
        Func::Sin(Box::new(self))
    }

    pub fn cos(self) -> Func {
        Func::Cos(Box::new(self))
    }

    pub fn arctan(self) -> Func {
        Func::Arctan(Box::new(self))
    }

    pub fn arcsin(self) -> Func {
        Func::Arcsin(Box::new(self))
    }

    pub fn arccos(self) -> Func {
        Func::Arccos(Box::new(self))
    }

    pub fn pow(self, e: Rational) -> Func {
        Func::Pow(Box::new(self), e)
    }

    /// Replaces every `X` by `inner`.
    pub fn compose(&self, inner: &Func) -> Func {
        let c = |f: &Func| Box::new(f.compose(inner));
        match self {
            Func::X => inner.clone(),
            Func::Const(q) => Func::Const(q.clone()),
            Func::Add(a, b) => Func::Add(c(a), c(b)),
            Func::Sub(a, b) => Func::Sub(c(a), c(b)),
            Func::Mul(a, b) => Func::Mul(c(a), c(b)),
            Func::Div(a, b) => Func::Div(c(a), c(b)),
            Func::Neg(a) => Func::Neg(c(a)),
            Func::Pow(a, e) => Func::Pow(c(a), e.clone()),
            Func::Exp(a) => Func::Exp(c(a)),
            Func::Ln(a) => Func::Ln(c(a)),
            Func::Sin(a) => Func::Sin(c(a)),
            Func::Cos(a) => Func::Cos(c(a)),
            Func::Arctan(a) => Func::Arctan(c(a)),
            Func::Arcsin(a) => Func::Arcsin(c(a)),
            Func::Arccos(a) => Func::Arccos(c(a)),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Func::X | Func::Const(_) => 0,
            Func::Add(a, b) | Func::Sub(a, b) | Func::Mul(a, b) | Func::Div(a, b) => {
                1 + a.depth().max(b.depth())
            }
            Func::Neg(a)
            | Func::Pow(a, _)
            | Func::Exp(a)
            | Func::Ln(a)
            | Func::Sin(a)
            | Func::Cos(a)
            | Func::Arctan(a)
            | Func::Arcsin(a)
            | Func::Arccos(a) => 1 + a.depth(),
        }
    }

    pub fn eval<T: Elementary>(&self, x: &T) -> Result<T> {
        Ok(match self {
            Func::X => x.clone(),
            Func::Const(q) => T::from_rational(q),
            Func::Add(a, b) => a.eval(x)? + b.eval(x)?,
            Func::Sub(a, b) => a.eval(x)? - b.eval(x)?,
            Func::Mul(a, b) => a.eval(x)? * b.eval(x)?,
            Func::Div(a, b) => {
                let d = b.eval(x)?;
                let inv = d
                    .try_recip()
                    .ok_or_else(|| crate::Error::Singular(format!("division by {d:?}")))?;
                a.eval(x)? * inv
            }
            Func::Neg(a) => -a.eval(x)?,
            Func::Pow(a, e) => a.eval(x)?.pow_value(e)?,
            Func::Exp(a) => a.eval(x)?.exp_value()?,
            Func::Ln(a) => a.eval(x)?.special_value(SpecialFn::Ln)?,
            Func::Sin(a) => a.eval(x)?.sin_cos_value()?.0,
            Func::Cos(a) => a.eval(x)?.sin_cos_value()?.1,
            Func::Arctan(a) => a.eval(x)?.special_value(SpecialFn::Arctan)?,
            Func::Arcsin(a) => a.eval(x)?.special_value(SpecialFn::Arcsin)?,
            Func::Arccos(a) => a.eval(x)?.special_value(SpecialFn::Arccos)?,
        })
    }

    /// Jet of order `n` about the exact point `x0`.
    pub fn jet_at(&self, x0: &BasisValue, n: usize) -> Result<Jet<BasisValue>> {
        self.eval(&Jet::variable(x0.clone(), n))
    }
}

/// `f^{(n)}(x0)` as an exact combination on the transcendental basis.
pub fn nth_derivative_via_jet(f: &Func, x0: &Rational, n: usize) -> Result<BasisValue> {
    f.jet_at(&BasisValue::from(x0.clone()), n)?.derivative(n)
}

/// `(f∘h)^{(n)} = Σ_k f^{(k)}(h) B_{n,k}(h′, …, h^{(n−k+1)})`.
///
/// `outer[k−1]` is `f^{(k)}(h(x0))` and `inner[j−1]` is `h^{(j)}(x0)`.
pub fn faa_di_bruno<T: Scalar>(outer: &[T], inner: &[T], n: u32) -> Result<T> {
    let need = n as usize;
    if n == 0 || outer.len() < need || inner.len() < need {
        return Err(invalid(format!(
            "order {n} needs {need} outer and inner derivatives, got {} and {}",
            outer.len(),
            inner.len()
        )));
    }
    let mut acc = T::zero();
    for k in 1..=n {
        let b = bell_general(n, k)?.evaluate(inner)?;
        acc = acc + outer[k as usize - 1].clone() * b;
    }
    Ok(acc)
}

/// Faà di Bruno for `outer ∘ inner` at `x0`, with both derivative lists taken from jets.
pub fn composite_via_bell(outer: &Func, inner: &Func, x0: &Rational, n: u32) -> Result<BasisValue> {
    let h = inner.jet_at(&BasisValue::from(x0.clone()), n as usize)?;
    let hd: Vec<BasisValue> = (1..=n as usize).map(|j| h.derivative(j)).collect::<Result<_>>()?;
    let f = outer.jet_at(&h.value(), n as usize)?;
    let fd: Vec<BasisValue> = (1..=n as usize).map(|k| f.derivative(k)).collect::<Result<_>>()?;
    faa_di_bruno(&fd, &hd, n)
}

impl fmt::Display for Func {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Func::X => write!(f, "x"),
            Func::Const(q) if q.is_integer() && *q >= Rational::from_integer(0.into()) => {
                write!(f, "{q}")
            }
            Func::Const(q) => write!(f, "({q})"),
            Func::Add(a, b) => write!(f, "({a} + {b})"),
            Func::Sub(a, b) => write!(f, "({a} - {b})"),
            Func::Mul(a, b) => write!(f, "{a}*{b}"),
            Func::Div(a, b) => write!(f, "{a}/({b})"),
            Func::Neg(a) => write!(f, "-{a}"),
            Func::Pow(a, e) if e.is_one() => write!(f, "{a}"),
            Func::Pow(a, e) => write!(f, "({a})^({e})"),
            Func::Exp(a) => write!(f, "exp({a})"),
            Func::Ln(a) => write!(f, "ln({a})"),
            Func::Sin(a) => write!(f, "sin({a})"),
            Func::Cos(a) => write!(f, "cos({a})"),
            Func::Arctan(a) => write!(f, "arctan({a})"),
            Func::Arcsin(a) => write!(f, "arcsin({a})"),
            Func::Arccos(a) => write!(f, "arccos({a})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closed_forms::{exp_sq_nth, inv_sqrt_one_minus_sq_nth, Sign};

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn sq() -> Func {
        Func::Mul(Box::new(Func::X), Box::new(Func::X))
    }

    #[test]
    fn spec_examples() {
        assert_eq!(nth_derivative_via_jet(&sq(), &q(5, 1), 2).unwrap(), q(2, 1).into());
        let e = sq().exp();
        let want = BasisValue::exp_atom(q(1, 4).into()).scale(&q(3, 1));
        assert_eq!(nth_derivative_via_jet(&e, &q(1, 2), 2).unwrap(), want);
        let f = Func::Sub(Box::new(Func::int(1)), Box::new(sq())).pow(q(-1, 2));
        let got = nth_derivative_via_jet(&f, &q(1, 3), 4).unwrap();
        assert_eq!(got, inv_sqrt_one_minus_sq_nth(4).evaluate_exact(&q(1, 3)).unwrap());
        let got = nth_derivative_via_jet(&sq().exp(), &q(1, 2), 3).unwrap();
        assert_eq!(got, exp_sq_nth(Sign::Plus, 3).evaluate_exact(&q(1, 2)).unwrap());
    }

    #[test]
    fn faa_di_bruno_examples() {
        // f = h = identity
        for n in 2..=6u32 {
            let mut ones = vec![q(0, 1); n as usize];
            ones[0] = q(1, 1);
            assert_eq!(faa_di_bruno(&ones, &ones, n).unwrap(), q(0, 1));
        }
        // f(u) = u², h(x) = x², x0 = 1
        let got = composite_via_bell(&sq(), &sq(), &q(1, 1), 4).unwrap();
        assert_eq!(got, q(24, 1).into());
        assert!(faa_di_bruno(&[q(1, 1)], &[q(1, 1)], 2).is_err());
    }

    #[test]
    fn bell_matches_jet_on_transcendental_composite() {
        let outer = Func::X.sin();
        let inner = sq().exp();
        let direct = nth_derivative_via_jet(&outer.compose(&inner), &q(1, 3), 6).unwrap();
        let bell = composite_via_bell(&outer, &inner, &q(1, 3), 6).unwrap();
        assert_eq!(direct, bell);
    }

    #[test]
    fn display() {
        let f = Func::Sub(Box::new(Func::int(1)), Box::new(sq())).pow(q(-1, 2));
        assert_eq!(f.to_string(), "((1 - x*x))^(-1/2)");
        assert_eq!(f.depth(), 3);
    }
}
