//! Partial Bell polynomials `B_{n,k}(x_1, …, x_{n−k+1})`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::coeffs::shared_table;
use crate::combinatorics::{double_factorial, factorial};
use crate::error::{invalid, Result};
use crate::scalar::Scalar;
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BellPoly {
    n: u32,
    k: u32,
    // exponent vector (ℓ_1, …, ℓ_{n−k+1}) → n! / (Π ℓ_i! (i!)^{ℓ_i})
    terms: BTreeMap<Vec<u32>, BigUint>,
}

fn check_nk(n: u32, k: u32) -> Result<()> {
    if k < 1 || k > n {
        return Err(invalid(format!("B_{{n,k}} needs 1 ≤ k ≤ n, got n={n}, k={k}")));
    }
    Ok(())
}

/// Enumerates `B_{n,k}` over all multi-indices with `Σ iℓ_i = n`, `Σ ℓ_i = k`.
pub fn bell_general(n: u32, k: u32) -> Result<BellPoly> {
    check_nk(n, k)?;
    let width = (n - k + 1) as usize;
    let fact: Vec<BigUint> = (0..=n).map(factorial).collect();
    let mut terms = BTreeMap::new();
    let mut ell = vec![0u32; width];

    // Fill ℓ_i from the largest part size down; the smallest size takes the rest.
    fn dfs(
        i: usize,
        weight: u32,
        count: u32,
        ell: &mut Vec<u32>,
        fact: &[BigUint],
        n: u32,
        terms: &mut BTreeMap<Vec<u32>, BigUint>,
    ) {
        if i == 1 {
            if weight == count {
                ell[0] = count;
                let mut den = BigUint::one();
                for (j, &l) in ell.iter().enumerate() {
                    den *= &fact[l as usize] * num_traits::pow(fact[j + 1].clone(), l as usize);
                }
                terms.insert(ell.clone(), &fact[n as usize] / den);
                ell[0] = 0;
            }
            return;
        }
        let size = i as u32;
        // Each of the other `count − l` parts has size ≥ 1.
        let mut l = 0;
        while l <= count && l * size <= weight {
            if weight - l * size >= count - l {
                ell[i - 1] = l;
                dfs(i - 1, weight - l * size, count - l, ell, fact, n, terms);
            }
            l += 1;
        }
        ell[i - 1] = 0;
    }

    dfs(width, n, k, &mut ell, &fact, n, &mut terms);
    Ok(BellPoly { n, k, terms })
}

impl BellPoly {
    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    /// Number of variables, `n − k + 1`.
    pub fn arity(&self) -> usize {
        (self.n - self.k + 1) as usize
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &BigUint)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    pub fn coefficient(&self, exponents: &[u32]) -> BigUint {
        self.terms.get(exponents).cloned().unwrap_or_default()
    }

    pub fn evaluate<T: Scalar>(&self, args: &[T]) -> Result<T> {
        let arity = self.arity();
        if args.len() < arity {
            return Err(invalid(format!(
                "B_{{{},{}}} needs {arity} arguments, got {}",
                self.n,
                self.k,
                args.len()
            )));
        }
        let mut powers: Vec<Vec<T>> = Vec::with_capacity(arity);
        for x in &args[..arity] {
            let mut row = vec![T::one()];
            for _ in 0..self.k {
                let next = row.last().expect("nonempty").clone() * x.clone();
                row.push(next);
            }
            powers.push(row);
        }
        let mut acc = T::zero();
        for (exps, c) in &self.terms {
            let mut term = T::from_rational(&Rational::from_integer(BigInt::from(c.clone())));
            for (j, &l) in exps.iter().enumerate() {
                if l > 0 {
                    term = term * powers[j][l as usize].clone();
                }
            }
            acc = acc + term;
        }
        Ok(acc)
    }

    /// `B_{n,k}(x, 1, 0, …, 0)` as a map from power of `x` to coefficient.
    pub fn at_x_one_zero(&self) -> BTreeMap<u32, BigUint> {
        let mut out: BTreeMap<u32, BigUint> = BTreeMap::new();
        for (exps, c) in &self.terms {
            if exps.iter().skip(2).all(|&l| l == 0) {
                *out.entry(exps[0]).or_default() += c;
            }
        }
        out
    }
}

impl fmt::Display for BellPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (idx, (exps, c)) in self.terms.iter().rev().enumerate() {
            if idx > 0 {
                f.write_str(" + ")?;
            }
            let mut factors = Vec::new();
            if !c.is_one() {
                factors.push(c.to_string());
            }
            for (j, &l) in exps.iter().enumerate() {
                match l {
                    0 => {}
                    1 => factors.push(format!("x{}", j + 1)),
                    _ => factors.push(format!("x{}^{l}", j + 1)),
                }
            }
            f.write_str(&factors.join("*"))?;
        }
        Ok(())
    }
}

/// The two sides of `B_{n,k}(abx_1, ab²x_2, …) = a^k b^n B_{n,k}(x_1, x_2, …)`.
#[derive(Debug, Clone)]
pub struct ScaleWitness<'a> {
    poly: &'a BellPoly,
    a: Rational,
    b: Rational,
}

pub fn bell_scale<'a>(poly: &'a BellPoly, a: &Rational, b: &Rational) -> ScaleWitness<'a> {
    ScaleWitness { poly, a: a.clone(), b: b.clone() }
}

impl ScaleWitness<'_> {
    /// `(scaled evaluation, a^k b^n · plain evaluation)`.
    pub fn sides<T: Scalar>(&self, args: &[T]) -> Result<(T, T)> {
        let mut scaled = Vec::with_capacity(args.len());
        let mut factor = self.a.clone();
        for x in args {
            factor *= &self.b;
            scaled.push(x.scale(&factor));
        }
        let lhs = self.poly.evaluate(&scaled)?;
        let pre = num_traits::pow(self.a.clone(), self.poly.k as usize)
            * num_traits::pow(self.b.clone(), self.poly.n as usize);
        let rhs = self.poly.evaluate(args)?.scale(&pre);
        Ok((lhs, rhs))
    }
}

/// `c · x^p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnivariateMonomialForm {
    pub coefficient: Rational,
    pub x_power: u32,
}

impl UnivariateMonomialForm {
    pub fn is_zero(&self) -> bool {
        self.coefficient.is_zero()
    }
}

impl fmt::Display for UnivariateMonomialForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = &self.coefficient;
        match self.x_power {
            _ if c.is_zero() => write!(f, "0"),
            0 => write!(f, "{c}"),
            p => {
                if !c.is_one() {
                    write!(f, "{c}*")?;
                }
                if p == 1 {
                    write!(f, "x")
                } else {
                    write!(f, "x^{p}")
                }
            }
        }
    }
}

/// Closed form of `B_{n,k}(x, 1, 0, …, 0)`: zero when `2k < n`, otherwise
/// `a_{n+1,2k−n} / (2k−1)!! · x^{2k−n}`.
pub fn bell_special(n: u32, k: u32) -> Result<UnivariateMonomialForm> {
    check_nk(n, k)?;
    if 2 * k < n {
        return Ok(UnivariateMonomialForm { coefficient: Rational::zero(), x_power: 0 });
    }
    let p = 2 * k - n;
    let a = shared_table(n as usize + 1).get(n as usize + 1, p as usize);
    let d = double_factorial(2 * i64::from(k) - 1)?;
    Ok(UnivariateMonomialForm {
        coefficient: Rational::new(a.into(), d.into()),
        x_power: p,
    })
}

/// `B_{n,k}(1, …, 1)`.
pub fn bell_ones(n: u32, k: u32) -> Result<BigUint> {
    let p = bell_general(n, k)?;
    let ones = vec![Rational::one(); p.arity()];
    let v = p.evaluate(&ones)?;
    debug_assert!(v.is_integer());
    Ok(v.to_integer().to_biguint().expect("nonnegative"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn small_polynomials() {
        assert_eq!(bell_general(1, 1).unwrap().to_string(), "x1");
        assert_eq!(bell_general(4, 2).unwrap().to_string(), "4*x1*x3 + 3*x2^2");
        let p = bell_general(6, 3).unwrap();
        assert_eq!(p.coefficient(&[2, 0, 0, 1]), BigUint::from(15u32));
        assert_eq!(p.coefficient(&[1, 1, 1, 0]), BigUint::from(60u32));
        assert_eq!(p.coefficient(&[0, 3, 0, 0]), BigUint::from(15u32));
        assert_eq!(p.terms().count(), 3);
        assert!(bell_general(2, 3).is_err());
        assert!(bell_general(2, 0).is_err());
    }

    #[test]
    fn evaluation() {
        let p = bell_general(4, 2).unwrap();
        assert_eq!(p.evaluate(&[q(2, 1), q(1, 1), q(0, 1)]).unwrap(), q(3, 1));
        assert!(p.evaluate(&[q(2, 1)]).is_err());
        let p = bell_general(3, 3).unwrap();
        assert_eq!(p.evaluate(&[q(5, 1)]).unwrap(), q(125, 1));
        let p = bell_general(5, 2).unwrap();
        assert_eq!(p.evaluate(&vec![q(1, 1); 4]).unwrap(), q(15, 1));
        assert_eq!(p.evaluate(&[1.0f64; 4]).unwrap(), 15.0);
    }

    #[test]
    fn scaling_examples() {
        let p = bell_general(4, 2).unwrap();
        let (l, r) = bell_scale(&p, &q(-2, 1), &q(1, 1))
            .sides(&[q(7, 1), q(1, 1), q(0, 1)])
            .unwrap();
        assert_eq!(l, q(12, 1));
        assert_eq!(r, q(12, 1));
        let p = bell_general(5, 3).unwrap();
        let (l, r) = bell_scale(&p, &q(2, 1), &q(3, 1)).sides(&vec![q(1, 1); 3]).unwrap();
        assert_eq!(l, r);
        assert_eq!(r, q(8 * 243 * 25, 1));
    }

    #[test]
    fn special_values() {
        assert!(bell_special(3, 1).unwrap().is_zero());
        assert_eq!(bell_special(8, 4).unwrap().to_string(), "105");
        assert_eq!(bell_special(3, 2).unwrap().to_string(), "3*x");
        assert_eq!(bell_special(5, 5).unwrap().to_string(), "x^5");
        assert!(bell_special(3, 4).is_err());
    }

    #[test]
    fn special_matches_enumeration() {
        for n in 1..=20 {
            for k in 1..=n {
                let poly = bell_general(n, k).unwrap().at_x_one_zero();
                let s = bell_special(n, k).unwrap();
                if s.is_zero() {
                    assert!(poly.is_empty(), "B_{n},{k}");
                } else {
                    assert_eq!(poly.len(), 1);
                    let (p, c) = poly.iter().next().unwrap();
                    assert_eq!(*p, s.x_power);
                    assert_eq!(Rational::from_integer(c.clone().into()), s.coefficient);
                }
            }
        }
    }

    #[test]
    fn ones_and_coefficient_sum() {
        assert_eq!(bell_ones(4, 2).unwrap(), BigUint::from(7u32));
        assert_eq!(bell_ones(6, 3).unwrap(), BigUint::from(90u32));
        assert_eq!(bell_ones(7, 7).unwrap(), BigUint::one());
        let p = bell_general(6, 3).unwrap();
        let sum = p.terms().fold(BigUint::zero(), |acc, (_, c)| acc + c);
        assert_eq!(sum, BigUint::from(90u32));
    }
}
