use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Dense univariate polynomial over Q, coefficients from degree 0 upward.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct UPoly {
    coeffs: Vec<BigRational>,
}

impl UPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UPoly { coeffs }
    }

    pub fn zero() -> Self {
        UPoly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        UPoly { coeffs: vec![BigRational::one()] }
    }

    /// `x - a`
    pub fn linear(a: &BigRational) -> Self {
        UPoly::new(vec![-a, BigRational::one()])
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with `-1` for the zero polynomial.
    pub fn degree(&self) -> isize {
        self.coeffs.len() as isize - 1
    }

    pub fn leading(&self) -> BigRational {
        self.coeffs.last().cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn scale(&self, c: &BigRational) -> UPoly {
        UPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn monic(&self) -> UPoly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.leading().recip())
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> UPoly {
        UPoly::new(
            self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c * BigRational::from_integer(i.into())).collect(),
        )
    }

    pub fn div_rem(&self, d: &UPoly) -> (UPoly, UPoly) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let mut r = self.coeffs.clone();
        let dd = d.coeffs.len();
        if r.len() < dd {
            return (UPoly::zero(), self.clone());
        }
        let lead_inv = d.leading().recip();
        let mut q = vec![BigRational::zero(); r.len() - dd + 1];
        for k in (0..q.len()).rev() {
            let c = &r[k + dd - 1] * &lead_inv;
            if c.is_zero() {
                continue;
            }
            for (j, dj) in d.coeffs.iter().enumerate() {
                r[k + j] -= &c * dj;
            }
            q[k] = c;
        }
        (UPoly::new(q), UPoly::new(r))
    }

    /// Monic gcd.
    pub fn gcd(&self, other: &UPoly) -> UPoly {
        // monic remainders keep the coefficients from exploding
        let (mut a, mut b) = (self.monic(), other.monic());
        while !b.is_zero() {
            let r = a.div_rem(&b).1.monic();
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Coefficients scaled by a common denominator to integers.
    fn integer_coeffs(&self) -> Vec<BigInt> {
        let d = self.coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        self.coeffs.iter().map(|c| c.numer() * (&d / c.denom())).collect()
    }

    /// Monic squarefree part.
    pub fn squarefree(&self) -> UPoly {
        if self.degree() <= 1 || super::modular::certainly_coprime(&self.integer_coeffs(), &self.derivative().integer_coeffs()) {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0.monic()
    }
}

impl Add for &UPoly {
    type Output = UPoly;
    fn add(self, o: &UPoly) -> UPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        let z = BigRational::zero();
        UPoly::new((0..n).map(|i| self.coeffs.get(i).unwrap_or(&z) + o.coeffs.get(i).unwrap_or(&z)).collect())
    }
}

impl Sub for &UPoly {
    type Output = UPoly;
    fn sub(self, o: &UPoly) -> UPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        let z = BigRational::zero();
        UPoly::new((0..n).map(|i| self.coeffs.get(i).unwrap_or(&z) - o.coeffs.get(i).unwrap_or(&z)).collect())
    }
}

impl Mul for &UPoly {
    type Output = UPoly;
    fn mul(self, o: &UPoly) -> UPoly {
        if self.is_zero() || o.is_zero() {
            return UPoly::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UPoly::new(out)
    }
}

impl fmt::Debug for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> =
            self.coeffs.iter().enumerate().rev().filter(|(_, c)| !c.is_zero()).map(|(i, c)| format!("({c})t^{i}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;

    fn p(c: &[i64]) -> UPoly {
        UPoly::new(c.iter().map(|&a| rat(a)).collect())
    }

    #[test]
    fn gcd_and_squarefree() {
        // (t-1)^2 (t+2)
        let f = &(&p(&[-1, 1]) * &p(&[-1, 1])) * &p(&[2, 1]);
        assert_eq!(f.squarefree(), &p(&[-1, 1]) * &p(&[2, 1]));
        assert_eq!(f.gcd(&p(&[-1, 1])), p(&[-1, 1]));
        assert_eq!(p(&[1, 0, 1]).gcd(&p(&[-1, 1])), UPoly::one());
    }

    #[test]
    fn division() {
        let f = p(&[1, 2, 3, 4]);
        let d = p(&[1, 1]);
        let (q, r) = f.div_rem(&d);
        assert_eq!(&(&q * &d) + &r, f);
        assert!(r.degree() < d.degree());
        assert_eq!(f.eval(&rat(2)), rat(49));
    }
}
