//! Exact numbers over a transcendental basis.
//!
//! A [`BasisValue`] is a finite rational combination of [`Monomial`]s. A monomial
//! is a product of
//!
//! * one exponential `exp(a)` (exponentials multiply by adding arguments),
//! * powers `sin(a)^s cos(a)^c` per argument `a`, kept in the normal form of the
//!   ring `Q[sin a, cos a, 1/sin a, 1/cos a] / (sin² + cos² − 1)`,
//! * radicals `b^e` of positive rationals with `0 < e < 1`,
//! * positive powers of opaque values such as `ln(b)` or `arcsin(b)`.
//!
//! Arguments are themselves `BasisValue`s, so `sin(exp(1/3))` is representable.
//! Two values built along different routes compare equal iff they agree as
//! elements of that ring, which is what the oracle cross-checks rely on.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{domain, Error, Result};
use crate::scalar::{exact_root, rational_powi, Elementary, Scalar, SpecialFn};
use crate::Rational;

#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    exp_arg: Option<Box<BasisValue>>,
    trig: BTreeMap<BasisValue, (i32, i32)>,
    radicals: BTreeMap<Rational, Rational>,
    special: BTreeMap<(SpecialFn, BasisValue), u32>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BasisValue {
    terms: BTreeMap<Monomial, Rational>,
}

impl Monomial {
    pub fn is_one(&self) -> bool {
        self.exp_arg.is_none()
            && self.trig.is_empty()
            && self.radicals.is_empty()
            && self.special.is_empty()
    }

    pub fn exp_arg(&self) -> Option<&BasisValue> {
        self.exp_arg.as_deref()
    }

    /// `(sin exponent, cos exponent)` per trigonometric argument.
    pub fn trig(&self) -> impl Iterator<Item = (&BasisValue, i32, i32)> {
        self.trig.iter().map(|(a, &(s, c))| (a, s, c))
    }

    pub fn radicals(&self) -> impl Iterator<Item = (&Rational, &Rational)> {
        self.radicals.iter()
    }

    pub fn special(&self) -> impl Iterator<Item = (SpecialFn, &BasisValue, u32)> {
        self.special.iter().map(|((f, a), &e)| (*f, a, e))
    }

    fn inverse(&self) -> Option<BasisValue> {
        if !self.special.is_empty() {
            return None;
        }
        let mut acc = BasisValue::one();
        if let Some(arg) = &self.exp_arg {
            acc = acc * BasisValue::exp_atom(-(**arg).clone());
        }
        for (base, e) in &self.radicals {
            acc = acc * BasisValue::radical(base, &-e.clone());
        }
        for (arg, &(s, c)) in &self.trig {
            acc = acc * BasisValue::trig_power(arg, -s, -c);
        }
        Some(acc)
    }
}

/// Rewrites `sin^s cos^c` into normal form: `s ∈ {0, 1}`, or `s < 0` with `c ∈ {0, 1}`.
fn reduce_trig(s: i32, c: i32) -> BTreeMap<(i32, i32), BigInt> {
    let normal = |s: i32, c: i32| (0..=1).contains(&s) || (s < 0 && (0..=1).contains(&c));
    let mut done = BTreeMap::new();
    let mut work: BTreeMap<(i32, i32), BigInt> = BTreeMap::new();
    work.insert((s, c), BigInt::one());
    while let Some(((s, c), v)) = work.pop_last() {
        if v.is_zero() {
            continue;
        }
        if normal(s, c) {
            *done.entry((s, c)).or_insert_with(BigInt::zero) += v;
            continue;
        }
        let mut push = |k: (i32, i32), v: BigInt| *work.entry(k).or_insert_with(BigInt::zero) += v;
        if s >= 2 {
            push((s - 2, c), v.clone());
            push((s - 2, c + 2), -v);
        } else if c < 0 {
            push((s + 2, c), v.clone());
            push((s, c + 2), v);
        } else {
            push((s, c - 2), v.clone());
            push((s + 2, c - 2), -v);
        }
    }
    done.retain(|_, v| !v.is_zero());
    done
}

/// Splits `base^e` into a rational factor and a residual exponent in `(0, 1)`.
fn radical_parts(base: &Rational, e: &Rational) -> (Rational, Option<Rational>) {
    let whole = e.floor();
    let frac = e - &whole;
    let factor = rational_powi(base, whole.numer()).expect("radical base is positive");
    if frac.is_zero() {
        return (factor, None);
    }
    match frac.denom().to_u32().and_then(|s| exact_root(base, s)) {
        Some(root) => (
            factor * rational_powi(&root, frac.numer()).expect("positive root"),
            None,
        ),
        None => (factor, Some(frac)),
    }
}

fn mul_monomials(a: &Monomial, b: &Monomial) -> BasisValue {
    let mut coeff = Rational::one();
    let mut base = Monomial::default();

    base.exp_arg = match (&a.exp_arg, &b.exp_arg) {
        (None, None) => None,
        (Some(x), None) | (None, Some(x)) => Some(x.clone()),
        (Some(x), Some(y)) => {
            let s = (**x).clone() + (**y).clone();
            (!s.is_zero()).then(|| Box::new(s))
        }
    };

    base.special = a.special.clone();
    for (k, e) in &b.special {
        *base.special.entry(k.clone()).or_insert(0) += e;
    }

    base.radicals = a.radicals.clone();
    for (r, e) in &b.radicals {
        let total = base.radicals.remove(r).unwrap_or_else(Rational::zero) + e;
        let (f, rest) = radical_parts(r, &total);
        coeff *= f;
        if let Some(rest) = rest {
            base.radicals.insert(r.clone(), rest);
        }
    }

    let mut trig = a.trig.clone();
    for (arg, (s, c)) in &b.trig {
        let e = trig.entry(arg.clone()).or_insert((0, 0));
        e.0 += s;
        e.1 += c;
    }

    let mut partial: Vec<(Monomial, Rational)> = vec![(base, coeff)];
    for (arg, (s, c)) in trig {
        let reduced = reduce_trig(s, c);
        let mut next = Vec::with_capacity(partial.len() * reduced.len());
        for (m, k) in &partial {
            for (&(s, c), v) in &reduced {
                let mut m = m.clone();
                if (s, c) != (0, 0) {
                    m.trig.insert(arg.clone(), (s, c));
                }
                next.push((m, k * Rational::from_integer(v.clone())));
            }
        }
        partial = next;
    }

    let mut out = BasisValue::zero();
    for (m, k) in partial {
        out.add_term(m, k);
    }
    out
}

impl BasisValue {
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of a basis monomial (zero when absent).
    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn single(m: Monomial) -> Self {
        let mut v = Self::zero();
        v.add_term(m, Rational::one());
        v
    }

    /// `exp(arg)`.
    pub fn exp_atom(arg: BasisValue) -> Self {
        if arg.is_zero() {
            return Self::one();
        }
        Self::single(Monomial {
            exp_arg: Some(Box::new(arg)),
            ..Monomial::default()
        })
    }

    /// `sin(arg)^s · cos(arg)^c` in normal form.
    pub fn trig_power(arg: &BasisValue, s: i32, c: i32) -> Self {
        let mut out = Self::zero();
        for ((s, c), v) in reduce_trig(s, c) {
            let mut m = Monomial::default();
            if (s, c) != (0, 0) {
                m.trig.insert(arg.clone(), (s, c));
            }
            out.add_term(m, Rational::from_integer(v));
        }
        out
    }

    /// `base^e` for a positive rational base.
    pub fn radical(base: &Rational, e: &Rational) -> Self {
        let (f, rest) = radical_parts(base, e);
        let mut m = Monomial::default();
        if let Some(rest) = rest {
            m.radicals.insert(base.clone(), rest);
        }
        let mut v = Self::zero();
        v.add_term(m, f);
        v
    }

    pub fn special_atom(f: SpecialFn, arg: BasisValue) -> Self {
        let mut m = Monomial::default();
        m.special.insert((f, arg), 1);
        Self::single(m)
    }

    /// Groups the value by everything except the trigonometric factors of `arg`,
    /// returning the coefficient multiplying `sin(arg)^s cos(arg)^c` for each `(s, c)`.
    pub fn split_trig(&self, arg: &BasisValue) -> BTreeMap<(i32, i32), BasisValue> {
        let mut out: BTreeMap<(i32, i32), BasisValue> = BTreeMap::new();
        for (m, c) in &self.terms {
            let key = m.trig.get(arg).copied().unwrap_or((0, 0));
            let mut rest = m.clone();
            rest.trig.remove(arg);
            out.entry(key).or_default().add_term(rest, c.clone());
        }
        out
    }

    /// Collapses the value into another scalar type by evaluating every atom there.
    pub fn collapse<T: Elementary>(&self) -> Result<T> {
        let mut acc = T::zero();
        for (m, c) in &self.terms {
            let mut t = T::from_rational(c);
            if let Some(arg) = &m.exp_arg {
                t = t * arg.collapse::<T>()?.exp_value()?;
            }
            for (arg, &(s, cexp)) in &m.trig {
                let (sv, cv) = arg.collapse::<T>()?.sin_cos_value()?;
                t = t * sv.powi(s as i64)? * cv.powi(cexp as i64)?;
            }
            for (b, e) in &m.radicals {
                t = t * T::from_rational(b).pow_value(e)?;
            }
            for ((f, arg), e) in &m.special {
                t = t * arg.collapse::<T>()?.special_value(*f)?.powi(*e as i64)?;
            }
            acc = acc + t;
        }
        Ok(acc)
    }
}

impl Zero for BasisValue {
    fn zero() -> Self {
        Self::default()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for BasisValue {
    fn one() -> Self {
        Self::from_rational(&Rational::one())
    }
}

impl From<Rational> for BasisValue {
    fn from(q: Rational) -> Self {
        let mut v = Self::zero();
        v.add_term(Monomial::default(), q);
        v
    }
}

impl Add for BasisValue {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        for (m, c) in rhs.terms {
            self.add_term(m, c);
        }
        self
    }
}

impl Sub for BasisValue {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Neg for BasisValue {
    type Output = Self;
    fn neg(mut self) -> Self {
        for c in self.terms.values_mut() {
            *c = -c.clone();
        }
        self
    }
}

impl Mul for BasisValue {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let mut out = Self::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let k = ca * cb;
                if ma.is_one() {
                    out.add_term(mb.clone(), k);
                } else if mb.is_one() {
                    out.add_term(ma.clone(), k);
                } else {
                    for (m, c) in mul_monomials(ma, mb).terms {
                        out.add_term(m, c * &k);
                    }
                }
            }
        }
        out
    }
}

impl Scalar for BasisValue {
    fn from_rational(q: &Rational) -> Self {
        q.clone().into()
    }

    fn try_recip(&self) -> Option<Self> {
        if self.terms.len() != 1 {
            return None;
        }
        let (m, c) = self.terms.iter().next()?;
        let inv = m.inverse()?;
        Some(inv * Self::from_rational(&c.recip()))
    }

    fn to_rational(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next()?;
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    fn scale(&self, q: &Rational) -> Self {
        if q.is_zero() {
            return Self::zero();
        }
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c *= q;
        }
        out
    }
}

impl Elementary for BasisValue {
    fn exp_value(&self) -> Result<Self> {
        Ok(Self::exp_atom(self.clone()))
    }

    fn sin_cos_value(&self) -> Result<(Self, Self)> {
        if self.is_zero() {
            return Ok((Self::zero(), Self::one()));
        }
        Ok((Self::trig_power(self, 1, 0), Self::trig_power(self, 0, 1)))
    }

    fn pow_value(&self, alpha: &Rational) -> Result<Self> {
        if alpha.is_integer() {
            let e = alpha
                .to_i64()
                .ok_or_else(|| Error::InvalidArgument(format!("exponent {alpha}")))?;
            return self.powi(e);
        }
        if self.is_zero() {
            return Rational::zero().pow_value(alpha).map(Self::from);
        }
        let not_exact = || Error::NotExact(format!("({self})^({alpha})"));
        if self.terms.len() != 1 {
            return Err(not_exact());
        }
        let (m, c) = self.terms.iter().next().expect("one term");
        if c.is_negative() {
            return Err(domain(format!("({self})^({alpha}) with negative base")));
        }
        if !m.trig.is_empty() || !m.special.is_empty() {
            return Err(not_exact());
        }
        let mut out = Self::radical(c, alpha);
        if let Some(arg) = &m.exp_arg {
            out = out * Self::exp_atom(arg.scale(alpha));
        }
        for (b, e) in &m.radicals {
            out = out * Self::radical(b, &(e * alpha));
        }
        Ok(out)
    }

    fn special_value(&self, f: SpecialFn) -> Result<Self> {
        if let Some(q) = self.to_rational() {
            match q.special_value(f) {
                Ok(v) => return Ok(v.into()),
                Err(Error::NotExact(_)) => {}
                Err(e) => return Err(e),
            }
        }
        Ok(Self::special_atom(f, self.clone()))
    }
}

fn fmt_arg(v: &BasisValue, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    write!(f, "{v}")
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        let mut sep = |f: &mut fmt::Formatter<'_>| {
            if first {
                first = false;
                Ok(())
            } else {
                write!(f, "*")
            }
        };
        if self.is_one() {
            return write!(f, "1");
        }
        if let Some(arg) = &self.exp_arg {
            sep(f)?;
            write!(f, "exp(")?;
            fmt_arg(arg, f)?;
            write!(f, ")")?;
        }
        for (arg, &(s, c)) in &self.trig {
            for (name, e) in [("sin", s), ("cos", c)] {
                if e != 0 {
                    sep(f)?;
                    write!(f, "{name}(")?;
                    fmt_arg(arg, f)?;
                    write!(f, ")")?;
                    if e != 1 {
                        write!(f, "^{e}")?;
                    }
                }
            }
        }
        for (b, e) in &self.radicals {
            sep(f)?;
            write!(f, "({b})^({e})")?;
        }
        for ((fun, arg), e) in &self.special {
            sep(f)?;
            write!(f, "{}(", fun.name())?;
            fmt_arg(arg, f)?;
            write!(f, ")")?;
            if *e != 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for BasisValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            if i > 0 {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            } else if neg {
                write!(f, "-")?;
            }
            let a = c.abs();
            if m.is_one() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{a}*{m}")?;
            }
        }
        Ok(())
    }
}
