//! Explicit nth-derivative formulas as structured expressions.
//!
//! Every builder returns the formula for order `n`; order 0 gives the function
//! itself. Coefficients `a_{m,k}` always come from the recurrence-built table.

mod expr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

pub use expr::{phase_shift, Atom, Base, ClosedFormExpr, Domain, Factors, Inner, Sign, Trig};

use crate::coeffs::shared_table;
use crate::combinatorics::{alpha_pq, beta_pq, double_factorial, factorial, lah, stirling2};
use crate::error::{invalid, Result};
use crate::scalar::Scalar;
use crate::Rational;

fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

fn big(n: impl Into<BigInt>) -> Rational {
    Rational::from_integer(n.into())
}

fn half(n: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(2))
}

fn dfact(n: i64) -> Rational {
    big(double_factorial(n).expect("argument ≥ −1"))
}

/// `a_{m,k}` from the canonical table (zero outside it).
fn a(m: i64, k: i64) -> Rational {
    if m < 1 || k < 0 {
        return Rational::zero();
    }
    big(shared_table(m as usize).get(m as usize, k as usize))
}

fn sgn(e: i64) -> Rational {
    if e.rem_euclid(2) == 0 {
        Rational::one()
    } else {
        -Rational::one()
    }
}

fn pow(b: i64, e: i64) -> Rational {
    num_traits::Pow::pow(&int(b), e as i32)
}

const X: Atom = Atom::Alg(Base::X);
const ONE_MINUS_SQ: Atom = Atom::Alg(Base::OneMinusXSq);
const ONE_PLUS_SQ: Atom = Atom::Alg(Base::OnePlusXSq);

/// `sin(x + nπ/2)` or `cos(x + nπ/2)`.
pub fn sincos_nth(which: Trig, n: u32) -> ClosedFormExpr {
    let (s, t) = phase_shift(which, i64::from(n));
    let mut e = ClosedFormExpr::new(Domain::Real);
    e.add_term(int(s), [(Atom::trig(t, Inner::Linear(1)), int(1))]);
    e
}

fn tan_cot(n: u32, tangent: bool, even_weight: Rational) -> Result<ClosedFormExpr> {
    let domain = if tangent { Domain::Real } else { Domain::NonZero };
    let mut e = ClosedFormExpr::new(domain);
    let (num, den) = if tangent { (Trig::Sin, Trig::Cos) } else { (Trig::Cos, Trig::Sin) };
    let lin = |j: i64| Inner::Linear(j);
    if n == 0 {
        e.add_term(int(1), [(Atom::trig(num, lin(1)), int(1)), (Atom::trig(den, lin(1)), int(-1))]);
        return Ok(e);
    }
    let ni = i64::from(n);
    let even = n % 2 == 0;
    let pre = (Atom::trig(den, lin(1)), int(-(ni + 1)));
    let coeff = |q: i64| -> Result<Rational> {
        let v = if tangent { alpha_pq(n, q as u32)? } else { beta_pq(n, q as u32)? };
        Ok(big(v))
    };
    // For odd n the tangent's sines carry a quarter-turn and become cosines.
    let shifted = |j: i64| -> Option<Atom> {
        if j == 0 {
            return None;
        }
        Some(if tangent && !even {
            Atom::Cos(lin(j))
        } else if tangent {
            Atom::Sin(lin(j))
        } else {
            Atom::Cos(lin(j))
        })
    };
    let first = if even { 1 } else { 0 };
    let w = if even { even_weight } else { half(1) };
    let head = w * coeff(first)?;
    match shifted(first) {
        Some(at) => e.add_term(head, [pre.clone(), (at, int(1))]),
        None => e.add_term(head, [pre.clone()]),
    }
    let top = (ni - 1 - first) / 2;
    for i in 1..=top {
        let j = 2 * i + first;
        let at = shifted(j).expect("j ≥ 2");
        e.add_term(coeff(j)?, [pre.clone(), (at, int(1))]);
    }
    Ok(e)
}

/// `tan^{(n)}` as a cosine-power times a multiple-angle sum.
pub fn tan_nth(n: u32) -> Result<ClosedFormExpr> {
    tan_cot(n, true, int(1))
}

/// `tan^{(n)}` with the half weight on the first term for every `n`, as
/// originally published; wrong for even `n`.
pub fn tan_nth_as_published(n: u32) -> Result<ClosedFormExpr> {
    tan_cot(n, true, half(1))
}

pub fn cot_nth(n: u32) -> Result<ClosedFormExpr> {
    tan_cot(n, false, int(1))
}

pub fn cot_nth_as_published(n: u32) -> Result<ClosedFormExpr> {
    tan_cot(n, false, half(1))
}

/// `(e^{±1/t})^{(n)}` through Lah numbers.
pub fn exp_recip_nth(sign: Sign, n: u32) -> Result<ClosedFormExpr> {
    let mut e = ClosedFormExpr::new(Domain::NonZero);
    let ex = (Atom::Exp(Inner::Recip(sign)), int(1));
    let t = Atom::Alg(Base::T);
    if n == 0 {
        e.add_term(int(1), [ex]);
        return Ok(e);
    }
    let ni = i64::from(n);
    let s = sign.value();
    for k in 0..ni {
        let c = sgn(ni) * pow(s, ni - k) * big(lah(n, n - k as u32)?);
        e.add_term(c, [ex.clone(), (t, int(k - 2 * ni))]);
    }
    Ok(e)
}

/// `arcsin^{(n)}`, split by the parity of `n`.
pub fn arcsin_nth(n: u32) -> ClosedFormExpr {
    let mut e = ClosedFormExpr::new(Domain::OpenUnit);
    if n == 0 {
        e.add_term(int(1), [(Atom::Arcsin, int(1))]);
        return e;
    }
    let ni = i64::from(n);
    if n % 2 == 1 {
        let k = (ni + 1) / 2;
        for i in 0..k {
            let ex = -(int(k + i) - half(1));
            e.add_term(a(2 * k - 1, 2 * i), [(X, int(2 * i)), (ONE_MINUS_SQ, ex)]);
        }
    } else {
        let k = ni / 2;
        for i in 0..k {
            let ex = -(int(k + i) + half(1));
            e.add_term(a(2 * k, 2 * i + 1), [(X, int(2 * i + 1)), (ONE_MINUS_SQ, ex)]);
        }
    }
    e
}

/// `arcsin^{(n)}` from the single parity-free sum.
pub fn arcsin_nth_unified(n: u32) -> ClosedFormExpr {
    let mut e = ClosedFormExpr::new(Domain::OpenUnit);
    if n == 0 {
        e.add_term(int(1), [(Atom::Arcsin, int(1))]);
        return e;
    }
    let ni = i64::from(n);
    let ev = 1 - ni % 2;
    let od = 1 - ev;
    let h = (ni + od) / 2;
    for i in 0..h {
        let ex = -(int(i + h) + sgn(ni) * half(1));
        e.add_term(a(ni, 2 * i + ev), [(X, int(2 * i + ev)), (ONE_MINUS_SQ, ex)]);
    }
    e
}

pub fn arccos_nth(n: u32) -> ClosedFormExpr {
    if n == 0 {
        let mut e = ClosedFormExpr::new(Domain::OpenUnit);
        e.add_term(int(1), [(Atom::Arccos, int(1))]);
        return e;
    }
    arcsin_nth(n).negated()
}

/// `((1−x²)^{−1/2})^{(n)}`.
pub fn inv_sqrt_one_minus_sq_nth(n: u32) -> ClosedFormExpr {
    let mut e = ClosedFormExpr::new(Domain::OpenUnit);
    let ni = i64::from(n);
    let od = ni % 2;
    let ev = 1 - od;
    for k in 0..=(ni - od) / 2 {
        let ex = -(int(k + od) + half(ni + ev));
        e.add_term(a(ni + 1, 2 * k + od), [(X, int(2 * k + od)), (ONE_MINUS_SQ, ex)]);
    }
    e
}

pub fn arctan_nth(n: u32) -> ClosedFormExpr {
    let mut e = ClosedFormExpr::new(Domain::Real);
    if n == 0 {
        e.add_term(int(1), [(Atom::Arctan, int(1))]);
        return e;
    }
    let ni = i64::from(n);
    if n % 2 == 0 {
        let l = ni / 2;
        for k in 0..l {
            let c = sgn(l + k) * dfact(2 * (k + l)) / dfact(2 * (k + l) - 1) * a(2 * l, 2 * k + 1);
            e.add_term(c, [(X, int(2 * k + 1)), (ONE_PLUS_SQ, int(-(l + 1 + k)))]);
        }
    } else {
        let l = (ni + 1) / 2;
        for k in 0..l {
            let c = sgn(l - 1 + k) * dfact(2 * (k + l - 1)) / dfact(2 * (k + l - 1) - 1)
                * a(2 * l - 1, 2 * k);
            e.add_term(c, [(X, int(2 * k)), (ONE_PLUS_SQ, int(-(l + k)))]);
        }
    }
    e
}

/// `(e^{±x²})^{(n)}`.
pub fn exp_sq_nth(sign: Sign, n: u32) -> ClosedFormExpr {
    let mut e = ClosedFormExpr::new(Domain::Real);
    let ex = (Atom::Exp(Inner::Square(sign)), int(1));
    if n == 0 {
        e.add_term(int(1), [ex]);
        return e;
    }
    let ni = i64::from(n);
    let two = 2 * sign.value();
    if n % 2 == 0 {
        let l = ni / 2;
        for k in 0..=l {
            let c = pow(two, l + k) / dfact(2 * (k + l) - 1) * a(2 * l + 1, 2 * k);
            e.add_term(c, [ex.clone(), (X, int(2 * k))]);
        }
    } else {
        let l = (ni + 1) / 2;
        for k in 0..l {
            let c = pow(two, l + k) / dfact(2 * (k + l) - 1) * a(2 * l, 2 * k + 1);
            e.add_term(c, [ex.clone(), (X, int(2 * k + 1))]);
        }
    }
    e
}

/// `(sin x²)^{(n)}` or `(cos x²)^{(n)}`, phases reduced.
pub fn trig_sq_nth(which: Trig, n: u32) -> ClosedFormExpr {
    let mut e = ClosedFormExpr::new(Domain::Real);
    let inner = Inner::Square(Sign::Plus);
    if n == 0 {
        e.add_term(int(1), [(Atom::trig(which, inner), int(1))]);
        return e;
    }
    let ni = i64::from(n);
    let (l, ks, m, off) = if n % 2 == 0 {
        let l = ni / 2;
        (l, 0..=l, 2 * l + 1, 0)
    } else {
        let l = (ni + 1) / 2;
        (l, 0..=l - 1, 2 * l, 1)
    };
    for k in ks {
        let (s, t) = phase_shift(which, k + l);
        let c = int(s) * pow(2, l + k) / dfact(2 * (k + l) - 1) * a(m, 2 * k + off);
        e.add_term(c, [(X, int(2 * k + off)), (Atom::trig(t, inner), int(1))]);
    }
    e
}

fn log_ratio_zero() -> ClosedFormExpr {
    let mut e = ClosedFormExpr::new(Domain::OpenUnit);
    e.add_term(int(1), [(Atom::Ln(Base::XPlusOne), int(1))]);
    e.add_term(int(-1), [(Atom::Ln(Base::OneMinusX), int(1))]);
    e
}

/// `(ln((1+x)/(1−x)))^{(n)}` through the coefficient triangle, with base `1 − x²`.
pub fn log_ratio_nth(n: u32) -> ClosedFormExpr {
    if n == 0 {
        return log_ratio_zero();
    }
    let mut e = ClosedFormExpr::new(Domain::OpenUnit);
    let ni = i64::from(n);
    if n % 2 == 0 {
        let l = ni / 2;
        for k in 0..l {
            let c = int(2) * dfact(2 * (k + l)) / dfact(2 * (k + l) - 1) * a(2 * l, 2 * k + 1);
            e.add_term(c, [(X, int(2 * k + 1)), (ONE_MINUS_SQ, int(-(l + 1 + k)))]);
        }
    } else {
        let l = (ni + 1) / 2;
        // Stated range runs to 2ℓ−2; entries past the triangle are zero.
        for k in 0..=2 * l - 2 {
            let c = int(2) * dfact(2 * (k + l - 1)) / dfact(2 * (k + l - 1) - 1)
                * a(2 * l - 1, 2 * k);
            e.add_term(c, [(X, int(2 * k)), (ONE_MINUS_SQ, int(-(l + k)))]);
        }
    }
    e
}

fn partial_fractions(n: u32, sign: i64, zero: ClosedFormExpr) -> ClosedFormExpr {
    if n == 0 {
        return zero;
    }
    let mut e = ClosedFormExpr::new(Domain::OpenUnit);
    let ni = i64::from(n);
    let c = sgn(ni - 1) * big(factorial(n - 1));
    e.add_term(c.clone(), [(Atom::Alg(Base::XPlusOne), int(-ni))]);
    e.add_term(c * int(sign), [(Atom::Alg(Base::XMinusOne), int(-ni))]);
    e
}

/// `(−1)^{n−1}(n−1)! [(x+1)^{−n} − (x−1)^{−n}]`.
pub fn log_ratio_direct(n: u32) -> ClosedFormExpr {
    partial_fractions(n, -1, log_ratio_zero())
}

/// `(−1)^{n−1}(n−1)! [(x+1)^{−n} + (x−1)^{−n}]`, the derivatives of `ln(1 − x²)`.
pub fn log_one_minus_sq_direct(n: u32) -> ClosedFormExpr {
    let mut zero = ClosedFormExpr::new(Domain::OpenUnit);
    zero.add_term(int(1), [(Atom::Ln(Base::OneMinusXSq), int(1))]);
    partial_fractions(n, 1, zero)
}

pub fn log_one_plus_sq_nth(n: u32) -> ClosedFormExpr {
    let mut e = ClosedFormExpr::new(Domain::Real);
    if n == 0 {
        e.add_term(int(1), [(Atom::Ln(Base::OnePlusXSq), int(1))]);
        return e;
    }
    let ni = i64::from(n);
    if n % 2 == 0 {
        let l = ni / 2;
        for k in 0..=l {
            let c = sgn(l - 1 + k) * int(2) * dfact(2 * (k + l - 1)) / dfact(2 * (k + l) - 1)
                * a(2 * l + 1, 2 * k);
            e.add_term(c, [(X, int(2 * k)), (ONE_PLUS_SQ, int(-(l + k)))]);
        }
    } else {
        let l = (ni + 1) / 2;
        for k in 0..l {
            let c = sgn(l - 1 + k) * int(2) * dfact(2 * (k + l - 1)) / dfact(2 * (k + l) - 1)
                * a(2 * l, 2 * k + 1);
            e.add_term(c, [(X, int(2 * k + 1)), (ONE_PLUS_SQ, int(-(l + k)))]);
        }
    }
    e
}

/// `Π_{m=1}^{j} (α − m + 1)`.
fn falling(alpha: &Rational, j: i64) -> Rational {
    (1..=j).fold(Rational::one(), |acc, m| acc * (alpha - int(m - 1)))
}

/// `((1 ± x²)^α)^{(n)}` for rational `α ∉ {0} ∪ ℕ`.
pub fn power_one_pm_sq_nth(sign: Sign, alpha: &Rational, n: u32) -> Result<ClosedFormExpr> {
    if alpha.is_integer() && !alpha.is_negative() {
        return Err(invalid(format!("exponent {alpha} must not be 0 or a positive integer")));
    }
    let (base, domain) = match sign {
        Sign::Plus => (ONE_PLUS_SQ, Domain::Real),
        Sign::Minus if alpha.is_integer() => (ONE_MINUS_SQ, Domain::Real),
        Sign::Minus => (ONE_MINUS_SQ, Domain::OpenUnit),
    };
    let mut e = ClosedFormExpr::new(domain);
    if n == 0 {
        e.add_term(int(1), [(base, alpha.clone())]);
        return Ok(e);
    }
    let ni = i64::from(n);
    let two = 2 * sign.value();
    let (l, ks, m, off) = if n % 2 == 0 {
        let l = ni / 2;
        (l, 0..=l, 2 * l + 1, 0)
    } else {
        let l = (ni + 1) / 2;
        (l, 0..=l - 1, 2 * l, 1)
    };
    for k in ks {
        let c = pow(two, l + k) * falling(alpha, k + l) / dfact(2 * (k + l) - 1) * a(m, 2 * k + off);
        e.add_term(c, [(X, int(2 * k + off)), (base, alpha - int(l + k))]);
    }
    Ok(e)
}

fn f_of_square(fjets: &[Rational], n: u32, x0: &Rational, with_powers: bool) -> Result<Rational> {
    let ni = i64::from(n);
    if fjets.len() <= n as usize {
        return Err(invalid(format!(
            "order {n} needs f, f', …, f^({n}); got {} values",
            fjets.len()
        )));
    }
    if n == 0 {
        return Ok(fjets[0].clone());
    }
    let (l, ks, m, off) = if n % 2 == 0 {
        let l = ni / 2;
        (l, 0..=l, 2 * l + 1, 0)
    } else {
        let l = (ni + 1) / 2;
        (l, 0..=l - 1, 2 * l, 1)
    };
    let mut acc = Rational::zero();
    for k in ks {
        let mut c = a(m, 2 * k + off) / dfact(2 * (k + l) - 1);
        if with_powers {
            c *= pow(2, k + l);
        }
        acc += c * x0.powi(2 * k + off)? * &fjets[(k + l) as usize];
    }
    Ok(acc)
}

/// `(f(x²))^{(n)}` at `x0` from `f^{(j)}(x0²)`, `j = 0..=n`.
pub fn f_of_square_nth(fjets: &[Rational], n: u32, x0: &Rational) -> Result<Rational> {
    f_of_square(fjets, n, x0, true)
}

/// The same sum without the `2^{k+ℓ}` factor, as originally published; wrong
/// whenever a derivative of `f` beyond the zeroth contributes.
pub fn f_of_square_nth_as_published(fjets: &[Rational], n: u32, x0: &Rational) -> Result<Rational> {
    f_of_square(fjets, n, x0, false)
}

/// `(sin(e^{±x}))^{(n)}` or `(cos(e^{±x}))^{(n)}` through Stirling numbers.
pub fn trig_exp_nth(which: Trig, sign: Sign, n: u32) -> Result<ClosedFormExpr> {
    let mut e = ClosedFormExpr::new(Domain::Real);
    let inner = Inner::ExpLinear(sign);
    if n == 0 {
        e.add_term(int(1), [(Atom::trig(which, inner), int(1))]);
        return Ok(e);
    }
    let ni = i64::from(n);
    let pre = pow(sign.value(), ni);
    for k in 1..=ni {
        let (s, t) = phase_shift(which, k);
        let c = pre.clone() * int(s) * big(stirling2(n, k as u32)?);
        e.add_term(
            c,
            [(Atom::trig(t, inner), int(1)), (Atom::Exp(Inner::Linear(sign.value())), int(k))],
        );
    }
    Ok(e)
}

/// Named derivative families, as exposed on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    Sin,
    Cos,
    Arcsin,
    Arccos,
    InvSqrt,
    Tan,
    Cot,
    Arctan,
    ExpRecip(Sign),
    ExpSq(Sign),
    TrigSq(Trig),
    LogRatio,
    LogOnePlusSq,
    LogOneMinusSq,
    PowOnePlusSq,
    PowOneMinusSq,
    TrigExp(Trig, Sign),
}

impl Family {
    pub const ALL: [Family; 23] = [
        Family::Sin,
        Family::Cos,
        Family::Arcsin,
        Family::Arccos,
        Family::InvSqrt,
        Family::Tan,
        Family::Cot,
        Family::Arctan,
        Family::ExpRecip(Sign::Plus),
        Family::ExpRecip(Sign::Minus),
        Family::ExpSq(Sign::Plus),
        Family::ExpSq(Sign::Minus),
        Family::TrigSq(Trig::Sin),
        Family::TrigSq(Trig::Cos),
        Family::LogRatio,
        Family::LogOnePlusSq,
        Family::LogOneMinusSq,
        Family::PowOnePlusSq,
        Family::PowOneMinusSq,
        Family::TrigExp(Trig::Sin, Sign::Plus),
        Family::TrigExp(Trig::Sin, Sign::Minus),
        Family::TrigExp(Trig::Cos, Sign::Plus),
        Family::TrigExp(Trig::Cos, Sign::Minus),
    ];

    pub fn name(self) -> &'static str {
        use Sign::{Minus, Plus};
        match self {
            Family::Sin => "sin",
            Family::Cos => "cos",
            Family::Arcsin => "arcsin",
            Family::Arccos => "arccos",
            Family::InvSqrt => "invsqrt1mx2",
            Family::Tan => "tan",
            Family::Cot => "cot",
            Family::Arctan => "arctan",
            Family::ExpRecip(Plus) => "exp_recip_plus",
            Family::ExpRecip(Minus) => "exp_recip_minus",
            Family::ExpSq(Plus) => "exp_sq_plus",
            Family::ExpSq(Minus) => "exp_sq_minus",
            Family::TrigSq(Trig::Sin) => "sin_sq",
            Family::TrigSq(Trig::Cos) => "cos_sq",
            Family::LogRatio => "log_ratio",
            Family::LogOnePlusSq => "log_1px2",
            Family::LogOneMinusSq => "log_1mx2",
            Family::PowOnePlusSq => "pow_1px2",
            Family::PowOneMinusSq => "pow_1mx2",
            Family::TrigExp(Trig::Sin, Plus) => "sin_exp_plus",
            Family::TrigExp(Trig::Sin, Minus) => "sin_exp_minus",
            Family::TrigExp(Trig::Cos, Plus) => "cos_exp_plus",
            Family::TrigExp(Trig::Cos, Minus) => "cos_exp_minus",
        }
    }

    pub fn from_name(name: &str) -> Option<Family> {
        Family::ALL.into_iter().find(|f| f.name() == name)
    }

    pub fn needs_alpha(self) -> bool {
        matches!(self, Family::PowOnePlusSq | Family::PowOneMinusSq)
    }

    /// The `n`th derivative; `alpha` is required by the power families only.
    pub fn build(self, n: u32, alpha: Option<&Rational>) -> Result<ClosedFormExpr> {
        let need_alpha = || alpha.ok_or_else(|| invalid(format!("{} needs an exponent", self.name())));
        Ok(match self {
            Family::Sin => sincos_nth(Trig::Sin, n),
            Family::Cos => sincos_nth(Trig::Cos, n),
            Family::Arcsin => arcsin_nth(n),
            Family::Arccos => arccos_nth(n),
            Family::InvSqrt => inv_sqrt_one_minus_sq_nth(n),
            Family::Tan => tan_nth(n)?,
            Family::Cot => cot_nth(n)?,
            Family::Arctan => arctan_nth(n),
            Family::ExpRecip(s) => exp_recip_nth(s, n)?,
            Family::ExpSq(s) => exp_sq_nth(s, n),
            Family::TrigSq(t) => trig_sq_nth(t, n),
            Family::LogRatio => log_ratio_nth(n),
            Family::LogOnePlusSq => log_one_plus_sq_nth(n),
            Family::LogOneMinusSq => log_one_minus_sq_direct(n),
            Family::PowOnePlusSq => power_one_pm_sq_nth(Sign::Plus, need_alpha()?, n)?,
            Family::PowOneMinusSq => power_one_pm_sq_nth(Sign::Minus, need_alpha()?, n)?,
            Family::TrigExp(t, s) => trig_exp_nth(t, s, n)?,
        })
    }
}
