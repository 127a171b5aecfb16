//! Arbitrary-precision floating rendering of exact values, for display only.

use astro_float::{BigFloat, Consts, Radix, RoundingMode};

use crate::basis::{BasisValue, Monomial};
use crate::error::{Error, Result};
use crate::scalar::SpecialFn;
use crate::Rational;

pub const DEFAULT_BITS: usize = 256;

const RM: RoundingMode = RoundingMode::ToEven;

/// Evaluates exact values at a fixed binary precision.
pub struct Numeric {
    bits: usize,
    cc: Consts,
}

impl Numeric {
    pub fn new(bits: usize) -> Result<Self> {
        if bits < 8 {
            return Err(Error::InvalidArgument(format!("precision {bits} is below 8 bits")));
        }
        let cc = Consts::new().map_err(|e| Error::NotExact(e.to_string()))?;
        Ok(Numeric { bits, cc })
    }

    pub fn bits(&self) -> usize {
        self.bits
    }

    pub fn rational(&mut self, q: &Rational) -> BigFloat {
        let p = self.bits;
        let n = BigFloat::parse(&q.numer().to_string(), Radix::Dec, p, RM, &mut self.cc);
        let d = BigFloat::parse(&q.denom().to_string(), Radix::Dec, p, RM, &mut self.cc);
        n.div(&d, p, RM)
    }

    pub fn value(&mut self, v: &BasisValue) -> Result<BigFloat> {
        let p = self.bits;
        let mut acc = BigFloat::from_word(0, p);
        for (m, c) in v.terms() {
            let t = self.monomial(m)?.mul(&self.rational(c), p, RM);
            acc = acc.add(&t, p, RM);
        }
        check(acc)
    }

    fn monomial(&mut self, m: &Monomial) -> Result<BigFloat> {
        let p = self.bits;
        let mut acc = BigFloat::from_word(1, p);
        if let Some(a) = m.exp_arg() {
            let a = self.value(a)?;
            acc = acc.mul(&a.exp(p, RM, &mut self.cc), p, RM);
        }
        for (a, s, c) in m.trig() {
            let a = self.value(a)?;
            let sv = a.sin(p, RM, &mut self.cc);
            let cv = a.cos(p, RM, &mut self.cc);
            acc = acc.mul(&self.ipow(&sv, s), p, RM).mul(&self.ipow(&cv, c), p, RM);
        }
        for (b, e) in m.radicals() {
            let b = self.rational(b);
            let e = self.rational(e);
            acc = acc.mul(&b.pow(&e, p, RM, &mut self.cc), p, RM);
        }
        for (f, a, e) in m.special() {
            let a = self.value(a)?;
            let v = match f {
                SpecialFn::Ln => a.ln(p, RM, &mut self.cc),
                SpecialFn::Arcsin => a.asin(p, RM, &mut self.cc),
                SpecialFn::Arccos => a.acos(p, RM, &mut self.cc),
                SpecialFn::Arctan => a.atan(p, RM, &mut self.cc),
            };
            acc = acc.mul(&self.ipow(&v, e as i32), p, RM);
        }
        check(acc)
    }

    fn ipow(&self, b: &BigFloat, e: i32) -> BigFloat {
        let p = self.bits;
        let r = b.powi(e.unsigned_abs() as usize, p, RM);
        if e < 0 {
            BigFloat::from_word(1, p).div(&r, p, RM)
        } else {
            r
        }
    }

    /// Decimal rendering of `v`.
    pub fn render(&mut self, v: &BasisValue) -> Result<String> {
        let x = self.value(v)?;
        x.format(Radix::Dec, RM, &mut self.cc).map_err(|e| Error::NotExact(e.to_string()))
    }
}

fn check(x: BigFloat) -> Result<BigFloat> {
    if x.is_nan() || x.is_inf() {
        Err(Error::Singular("value is not finite".into()))
    } else {
        Ok(x)
    }
}
