use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::basis::BasisValue;
use crate::error::{domain, invalid, Result};
use crate::scalar::{Elementary, SpecialFn};
use crate::Rational;

/// Sign selector for the `±` families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn rational(self) -> Rational {
        Rational::from_integer(self.value().into())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Trig {
    Sin,
    Cos,
}

/// Argument of a transcendental atom.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Inner {
    /// `j·x`
    Linear(i64),
    /// `±x²`
    Square(Sign),
    /// `e^{±x}`
    ExpLinear(Sign),
    /// `±1/t`
    Recip(Sign),
}

/// Algebraic bases; all are rational at rational points.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Base {
    X,
    T,
    OneMinusXSq,
    OnePlusXSq,
    XPlusOne,
    XMinusOne,
    OneMinusX,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Atom {
    Alg(Base),
    Sin(Inner),
    Cos(Inner),
    Exp(Inner),
    Arcsin,
    Arccos,
    Arctan,
    Ln(Base),
}

impl Atom {
    pub fn trig(which: Trig, inner: Inner) -> Atom {
        match which {
            Trig::Sin => Atom::Sin(inner),
            Trig::Cos => Atom::Cos(inner),
        }
    }
}

/// `sin`/`cos` of `u + qπ/2` as a sign and a plain `sin`/`cos` of `u`.
pub fn phase_shift(which: Trig, q: i64) -> (i64, Trig) {
    let q = q.rem_euclid(4);
    match (which, q) {
        (Trig::Sin, 0) => (1, Trig::Sin),
        (Trig::Sin, 1) => (1, Trig::Cos),
        (Trig::Sin, 2) => (-1, Trig::Sin),
        (Trig::Sin, _) => (-1, Trig::Cos),
        (Trig::Cos, 0) => (1, Trig::Cos),
        (Trig::Cos, 1) => (-1, Trig::Sin),
        (Trig::Cos, 2) => (-1, Trig::Cos),
        (Trig::Cos, _) => (1, Trig::Sin),
    }
}

/// Set of points where an expression may be evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Domain {
    Real,
    /// `|x| < 1`
    OpenUnit,
    /// `x ≠ 0`
    NonZero,
}

impl Domain {
    pub fn check(self, x: &Rational) -> Result<()> {
        let ok = match self {
            Domain::Real => true,
            Domain::OpenUnit => x.abs() < Rational::one(),
            Domain::NonZero => !x.is_zero(),
        };
        if ok {
            Ok(())
        } else {
            Err(domain(match self {
                Domain::OpenUnit => format!("{x} lies outside (-1, 1)"),
                _ => format!("{x} is not an admissible point"),
            }))
        }
    }
}

pub type Factors = BTreeMap<Atom, Rational>;

/// A finite sum of rational multiples of products of atoms raised to rational powers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosedFormExpr {
    terms: BTreeMap<Factors, Rational>,
    domain: Domain,
}

impl ClosedFormExpr {
    pub fn new(domain: Domain) -> Self {
        ClosedFormExpr { terms: BTreeMap::new(), domain }
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Factors, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Adds `coeff · Π atom^exp`, merging repeated atoms and collecting like terms.
    pub fn add_term<I>(&mut self, coeff: Rational, factors: I)
    where
        I: IntoIterator<Item = (Atom, Rational)>,
    {
        if coeff.is_zero() {
            return;
        }
        let mut merged = Factors::new();
        for (atom, e) in factors {
            *merged.entry(atom).or_insert_with(Rational::zero) += e;
        }
        merged.retain(|_, e| !e.is_zero());
        let slot = self.terms.entry(merged).or_insert_with(Rational::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.terms.retain(|_, c| !c.is_zero());
        }
    }

    pub fn negated(&self) -> Self {
        ClosedFormExpr {
            terms: self.terms.iter().map(|(f, c)| (f.clone(), -c)).collect(),
            domain: self.domain,
        }
    }

    /// Evaluates at `x` in any elementary scalar type (no domain check).
    pub fn eval<T: Elementary>(&self, x: &T) -> Result<T> {
        let mut ev = Evaluator { x, atoms: HashMap::new(), sc: None, multiples: Vec::new() };
        let mut acc = T::zero();
        for (factors, c) in &self.terms {
            let mut t = T::from_rational(c);
            for (atom, e) in factors {
                let base = ev.atom(*atom)?;
                t = t * power(&base, e)?;
            }
            acc = acc + t;
        }
        Ok(acc)
    }

    /// Exact value at a rational point inside the domain.
    pub fn evaluate_exact(&self, x: &Rational) -> Result<BasisValue> {
        self.domain.check(x)?;
        self.eval(&BasisValue::from(x.clone()))
    }
}

fn power<T: Elementary>(base: &T, e: &Rational) -> Result<T> {
    if e.is_one() {
        return Ok(base.clone());
    }
    if e.is_integer() {
        let n = e.to_i64().ok_or_else(|| invalid(format!("exponent {e} out of range")))?;
        return base.powi(n);
    }
    base.pow_value(e)
}

struct Evaluator<'a, T> {
    x: &'a T,
    atoms: HashMap<Atom, T>,
    sc: Option<(T, T)>,
    // (sin jx, cos jx) for j = 0, 1, 2, …
    multiples: Vec<(T, T)>,
}

impl<T: Elementary> Evaluator<'_, T> {
    fn base(&self, b: Base) -> T {
        let x = self.x.clone();
        let one = T::one();
        match b {
            Base::X | Base::T => x,
            Base::OneMinusXSq => one - x.clone() * x,
            Base::OnePlusXSq => one + x.clone() * x,
            Base::XPlusOne => x + one,
            Base::XMinusOne => x - one,
            Base::OneMinusX => one - x,
        }
    }

    fn multiple(&mut self, j: u64) -> Result<(T, T)> {
        if self.sc.is_none() {
            self.sc = Some(self.x.sin_cos_value()?);
            self.multiples.push((T::zero(), T::one()));
        }
        let (s, c) = self.sc.clone().expect("set above");
        while self.multiples.len() as u64 <= j {
            let (sm, cm) = self.multiples.last().expect("nonempty").clone();
            let next = (
                sm.clone() * c.clone() + cm.clone() * s.clone(),
                cm * c.clone() - sm * s.clone(),
            );
            self.multiples.push(next);
        }
        Ok(self.multiples[j as usize].clone())
    }

    fn inner_sin_cos(&mut self, inner: Inner) -> Result<(T, T)> {
        match inner {
            Inner::Linear(j) => {
                let (s, c) = self.multiple(j.unsigned_abs())?;
                Ok(if j < 0 { (-s, c) } else { (s, c) })
            }
            other => self.inner_value(other)?.sin_cos_value(),
        }
    }

    fn inner_value(&self, inner: Inner) -> Result<T> {
        let x = self.x.clone();
        Ok(match inner {
            Inner::Linear(j) => x.scale(&Rational::from_integer(BigInt::from(j))),
            Inner::Square(s) => (x.clone() * x).scale(&s.rational()),
            Inner::ExpLinear(s) => x.scale(&s.rational()).exp_value()?,
            Inner::Recip(s) => x
                .try_recip()
                .ok_or_else(|| domain("1/t at t = 0"))?
                .scale(&s.rational()),
        })
    }

    fn atom(&mut self, atom: Atom) -> Result<T> {
        if let Some(v) = self.atoms.get(&atom) {
            return Ok(v.clone());
        }
        let v = match atom {
            Atom::Alg(b) => self.base(b),
            Atom::Sin(i) => self.inner_sin_cos(i)?.0,
            Atom::Cos(i) => self.inner_sin_cos(i)?.1,
            Atom::Exp(i) => self.inner_value(i)?.exp_value()?,
            Atom::Arcsin => self.x.special_value(SpecialFn::Arcsin)?,
            Atom::Arccos => self.x.special_value(SpecialFn::Arccos)?,
            Atom::Arctan => self.x.special_value(SpecialFn::Arctan)?,
            Atom::Ln(b) => self.base(b).special_value(SpecialFn::Ln)?,
        };
        self.atoms.insert(atom, v.clone());
        Ok(v)
    }
}

impl fmt::Display for Inner {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let minus = |s: &Sign| if *s == Sign::Minus { "-" } else { "" };
        match self {
            Inner::Linear(1) => write!(f, "x"),
            Inner::Linear(-1) => write!(f, "-x"),
            Inner::Linear(j) => write!(f, "{j}x"),
            Inner::Square(s) => write!(f, "{}x^2", minus(s)),
            Inner::ExpLinear(s) => write!(f, "exp({}x)", minus(s)),
            Inner::Recip(s) => write!(f, "{}1/t", minus(s)),
        }
    }
}

impl fmt::Display for Base {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Base::X => "x",
            Base::T => "t",
            Base::OneMinusXSq => "(1-x^2)",
            Base::OnePlusXSq => "(1+x^2)",
            Base::XPlusOne => "(x+1)",
            Base::XMinusOne => "(x-1)",
            Base::OneMinusX => "(1-x)",
        })
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::Alg(b) => write!(f, "{b}"),
            Atom::Sin(i) => write!(f, "sin({i})"),
            Atom::Cos(i) => write!(f, "cos({i})"),
            Atom::Exp(i) => write!(f, "exp({i})"),
            Atom::Arcsin => write!(f, "arcsin(x)"),
            Atom::Arccos => write!(f, "arccos(x)"),
            Atom::Arctan => write!(f, "arctan(x)"),
            Atom::Ln(b) => {
                let s = b.to_string();
                let inner = s.strip_prefix('(').and_then(|s| s.strip_suffix(')')).unwrap_or(&s);
                write!(f, "ln({inner})")
            }
        }
    }
}

pub(crate) fn fmt_power(atom: &Atom, e: &Rational) -> String {
    if e.is_one() {
        atom.to_string()
    } else if e.is_integer() && e.is_positive() {
        format!("{atom}^{e}")
    } else {
        format!("{atom}^({e})")
    }
}

impl fmt::Display for ClosedFormExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (factors, c)) in self.terms.iter().enumerate() {
            let mag = c.abs();
            match (idx, c.is_negative()) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mut parts = Vec::new();
            if !mag.is_one() || factors.is_empty() {
                parts.push(mag.to_string());
            }
            parts.extend(factors.iter().map(|(a, e)| fmt_power(a, e)));
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}
