//! Sparse Laurent polynomials over the rationals.
//!
//! A [`LaurentPoly`] is a list of `(coefficient, exponent)` pairs kept in
//! descending grevlex order with no zero coefficients and no repeated
//! exponents, so structural equality is polynomial equality. Exponents may be
//! negative; a polynomial with nonnegative exponents is an ordinary
//! polynomial.

mod order;
mod parse;

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Deref, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub use order::{grevlex, lex, MonomialOrder};
pub use parse::parse_poly;

pub type Coeff = BigRational;

pub fn rat(n: i64) -> Coeff {
    BigRational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Coeff {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Integer exponent vector `a` of the monomial `x^a = x_1^a_1 ... x_n^a_n`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Exponent(Vec<i64>);

impl Exponent {
    pub fn new(entries: Vec<i64>) -> Self {
        Exponent(entries)
    }

    pub fn zero(n: usize) -> Self {
        Exponent(vec![0; n])
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        Exponent(e)
    }

    pub fn into_vec(self) -> Vec<i64> {
        self.0
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|&e| e >= 0)
    }

    pub fn add(&self, other: &Exponent) -> Exponent {
        Exponent(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Exponent) -> Exponent {
        Exponent(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self) -> Exponent {
        Exponent(self.0.iter().map(|a| -a).collect())
    }

    pub fn scale(&self, k: i64) -> Exponent {
        Exponent(self.0.iter().map(|a| a * k).collect())
    }

    /// Componentwise `self <= other`, i.e. `x^self` divides `x^other`.
    pub fn divides(&self, other: &Exponent) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn lcm(&self, other: &Exponent) -> Exponent {
        Exponent(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn meet(&self, other: &Exponent) -> Exponent {
        Exponent(self.0.iter().zip(&other.0).map(|(a, b)| *a.min(b)).collect())
    }

    /// Positive and negative parts: `self = plus - minus` with disjoint support.
    pub fn split_signs(&self) -> (Exponent, Exponent) {
        let plus = self.0.iter().map(|&a| a.max(0)).collect();
        let minus = self.0.iter().map(|&a| (-a).max(0)).collect();
        (Exponent(plus), Exponent(minus))
    }
}

impl Deref for Exponent {
    type Target = [i64];
    fn deref(&self) -> &[i64] {
        &self.0
    }
}

impl From<Vec<i64>> for Exponent {
    fn from(v: Vec<i64>) -> Self {
        Exponent(v)
    }
}

impl fmt::Debug for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// Variable names of a (Laurent) polynomial ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ring {
    names: Vec<String>,
    laurent: bool,
}

impl Ring {
    pub fn new<S: AsRef<str>>(names: &[S], laurent: bool) -> Result<Self> {
        let names: Vec<String> = names.iter().map(|s| s.as_ref().trim().to_string()).collect();
        for (i, n) in names.iter().enumerate() {
            let valid = n.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
                && n.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !valid {
                return Err(Error::Syntax { pos: i, msg: format!("invalid variable name `{n}`") });
            }
            if names[..i].contains(n) {
                return Err(Error::Syntax { pos: i, msg: format!("duplicate variable name `{n}`") });
            }
        }
        Ok(Ring { names, laurent })
    }

    pub fn polynomial<S: AsRef<str>>(names: &[S]) -> Result<Self> {
        Ring::new(names, false)
    }

    pub fn laurent<S: AsRef<str>>(names: &[S]) -> Result<Self> {
        Ring::new(names, true)
    }

    /// Ring with variables `x1, ..., xn`.
    pub fn generic(n: usize, laurent: bool) -> Self {
        Ring { names: (1..=n).map(|i| format!("x{i}")).collect(), laurent }
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn is_laurent(&self) -> bool {
        self.laurent
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn as_laurent(&self) -> Ring {
        Ring { names: self.names.clone(), laurent: true }
    }
}

/// A binomial `x^u - lambda x^v` with `lambda != 0` and `u != v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Binomial {
    pub u: Exponent,
    pub v: Exponent,
    pub lambda: Coeff,
}

impl Binomial {
    pub fn to_poly(&self) -> LaurentPoly {
        let n = self.u.len();
        LaurentPoly::from_terms(n, vec![(rat(1), self.u.clone()), (-self.lambda.clone(), self.v.clone())])
    }

    /// Exponent difference `u - v`, the lattice element of this binomial.
    pub fn direction(&self) -> Exponent {
        self.u.sub(&self.v)
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    nvars: usize,
    terms: Vec<(Coeff, Exponent)>,
}

impl LaurentPoly {
    pub fn zero(nvars: usize) -> Self {
        LaurentPoly { nvars, terms: Vec::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, rat(1))
    }

    pub fn constant(nvars: usize, c: Coeff) -> Self {
        Self::monomial(nvars, c, Exponent::zero(nvars))
    }

    pub fn monomial(nvars: usize, c: Coeff, exp: Exponent) -> Self {
        assert_eq!(exp.len(), nvars);
        if c.is_zero() {
            return Self::zero(nvars);
        }
        LaurentPoly { nvars, terms: vec![(c, exp)] }
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        Self::monomial(nvars, rat(1), Exponent::unit(nvars, i))
    }

    /// Builds the canonical form of `sum c * x^e`, merging repeated exponents.
    pub fn from_terms<I>(nvars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Coeff, Exponent)>,
    {
        let mut acc: HashMap<Exponent, Coeff> = HashMap::new();
        for (c, e) in terms {
            assert_eq!(e.len(), nvars, "exponent length does not match ring");
            if c.is_zero() {
                continue;
            }
            *acc.entry(e).or_insert_with(Coeff::zero) += c;
        }
        let mut terms: Vec<(Coeff, Exponent)> =
            acc.into_iter().filter(|(_, c)| !c.is_zero()).map(|(e, c)| (c, e)).collect();
        terms.sort_by(|a, b| grevlex(&b.1, &a.1));
        LaurentPoly { nvars, terms }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &[(Coeff, Exponent)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Coeff, Exponent)> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(_, e)| e.is_zero())
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// Whether all exponents are nonnegative.
    pub fn is_polynomial(&self) -> bool {
        self.terms.iter().all(|(_, e)| e.is_nonnegative())
    }

    pub fn total_degree(&self) -> i64 {
        self.terms.iter().map(|(_, e)| e.degree()).max().unwrap_or(0)
    }

    /// The term that is largest under `order`.
    pub fn leading_term(&self, order: &MonomialOrder) -> Option<&(Coeff, Exponent)> {
        self.terms.iter().max_by(|a, b| order.cmp(&a.1, &b.1))
    }

    pub fn coefficient(&self, exp: &Exponent) -> Coeff {
        self.terms.iter().find(|(_, e)| e == exp).map(|(c, _)| c.clone()).unwrap_or_else(Coeff::zero)
    }

    pub fn scale(&self, c: &Coeff) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        LaurentPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(a, e)| (a * c, e.clone())).collect(),
        }
    }

    /// Multiplication by the monomial `x^shift`; grevlex is translation
    /// invariant so the term order is preserved.
    pub fn shift(&self, shift: &Exponent) -> Self {
        LaurentPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(c, e)| (c.clone(), e.add(shift))).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.nvars);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Divides by the leading coefficient of the canonical (grevlex) order.
    pub fn monic(&self) -> Self {
        match self.terms.first() {
            None => self.clone(),
            Some((c, _)) => self.scale(&c.recip()),
        }
    }

    /// Componentwise minimum of all exponents.
    pub fn min_exponent(&self) -> Exponent {
        let mut m = match self.terms.first() {
            None => return Exponent::zero(self.nvars),
            Some((_, e)) => e.clone(),
        };
        for (_, e) in &self.terms[1..] {
            m = m.meet(e);
        }
        m
    }

    /// Multiplies by the smallest monomial that makes every exponent
    /// nonnegative. Polynomials are returned unchanged.
    pub fn clear_denominators(&self) -> Self {
        let m = self.min_exponent();
        let shift = Exponent::new(m.iter().map(|&a| (-a).max(0)).collect());
        self.shift(&shift)
    }

    /// The unique monomial multiple whose exponents are nonnegative and
    /// which is not divisible by any variable. Generates the same ideal in a
    /// Laurent ring.
    pub fn monomial_normalize(&self) -> Self {
        self.shift(&self.min_exponent().neg())
    }

    /// Applies an arbitrary exponent map (e.g. a monomial change of
    /// coordinates) to every term, landing in a ring with `nvars` variables.
    pub fn map_exponents<F>(&self, nvars: usize, f: F) -> Self
    where
        F: Fn(&Exponent) -> Exponent,
    {
        Self::from_terms(nvars, self.terms.iter().map(|(c, e)| (c.clone(), f(e))))
    }

    /// Sum of the terms `c_v x^v` for which `<w, v>` is maximal.
    pub fn initial_form(&self, w: &[Coeff]) -> Result<Self> {
        if w.len() != self.nvars {
            return Err(Error::DimensionMismatch { expected: self.nvars, got: w.len() });
        }
        let pair = |e: &Exponent| -> Coeff {
            w.iter().zip(e.iter()).map(|(a, &b)| a * BigInt::from(b)).fold(Coeff::zero(), |s, x| s + x)
        };
        let Some(best) = self.terms.iter().map(|(_, e)| pair(e)).max() else {
            return Ok(self.clone());
        };
        let terms = self.terms.iter().filter(|(_, e)| pair(e) == best).cloned().collect();
        Ok(LaurentPoly { nvars: self.nvars, terms })
    }

    /// [`LaurentPoly::initial_form`] for an integer weight.
    pub fn initial_form_int(&self, w: &[i64]) -> Result<Self> {
        let w: Vec<Coeff> = w.iter().map(|&a| rat(a)).collect();
        self.initial_form(&w)
    }

    /// Decomposes `f = c (x^u - lambda x^v)` with `x^u` the canonical leading
    /// term. Monomials, zero and polynomials with three or more terms give
    /// `None`.
    pub fn is_binomial(&self) -> Option<Binomial> {
        if self.terms.len() != 2 {
            return None;
        }
        let (c1, u) = &self.terms[0];
        let (c2, v) = &self.terms[1];
        Some(Binomial { u: u.clone(), v: v.clone(), lambda: -(c2 / c1) })
    }

    /// Formats with the given variable names.
    pub fn display<'a>(&'a self, ring: &'a Ring) -> DisplayPoly<'a> {
        DisplayPoly { poly: self, names: ring.names() }
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ring = Ring::generic(self.nvars, true);
        write!(f, "{}", self.display(&ring))
    }
}

pub struct DisplayPoly<'a> {
    poly: &'a LaurentPoly,
    names: &'a [String],
}

impl fmt::Display for DisplayPoly<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        for (k, (c, e)) in self.poly.terms.iter().enumerate() {
            let negative = c.is_negative();
            let mag = c.abs();
            if k == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut factors: Vec<String> = Vec::new();
            if !mag.is_one() || e.is_zero() {
                factors.push(mag.to_string());
            }
            for (name, &a) in self.names.iter().zip(e.iter()) {
                match a {
                    0 => {}
                    1 => factors.push(name.clone()),
                    _ => factors.push(format!("{name}^{a}")),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

fn merge_add(a: &LaurentPoly, b: &LaurentPoly, negate_b: bool) -> LaurentPoly {
    assert_eq!(a.nvars, b.nvars, "polynomials from different rings");
    let mut out = Vec::with_capacity(a.terms.len() + b.terms.len());
    let (mut i, mut j) = (0, 0);
    while i < a.terms.len() || j < b.terms.len() {
        let ord = if i == a.terms.len() {
            std::cmp::Ordering::Less
        } else if j == b.terms.len() {
            std::cmp::Ordering::Greater
        } else {
            grevlex(&a.terms[i].1, &b.terms[j].1)
        };
        match ord {
            std::cmp::Ordering::Greater => {
                out.push(a.terms[i].clone());
                i += 1;
            }
            std::cmp::Ordering::Less => {
                let (c, e) = &b.terms[j];
                out.push((if negate_b { -c } else { c.clone() }, e.clone()));
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                let c = if negate_b { &a.terms[i].0 - &b.terms[j].0 } else { &a.terms[i].0 + &b.terms[j].0 };
                if !c.is_zero() {
                    out.push((c, a.terms[i].1.clone()));
                }
                i += 1;
                j += 1;
            }
        }
    }
    LaurentPoly { nvars: a.nvars, terms: out }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        merge_add(self, rhs, false)
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        merge_add(self, rhs, true)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly { nvars: self.nvars, terms: self.terms.iter().map(|(c, e)| (-c, e.clone())).collect() }
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        assert_eq!(self.nvars, rhs.nvars, "polynomials from different rings");
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero(self.nvars);
        }
        let products = self
            .terms
            .iter()
            .flat_map(|(a, ea)| rhs.terms.iter().map(move |(b, eb)| (a * b, ea.add(eb))));
        LaurentPoly::from_terms(self.nvars, products)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str, vars: &[&str]) -> LaurentPoly {
        parse_poly(s, &Ring::laurent(vars).unwrap()).unwrap()
    }

    #[test]
    fn initial_form_examples() {
        let f = p("x^2+x+1", &["x"]);
        assert_eq!(f.initial_form_int(&[1]).unwrap(), p("x^2", &["x"]));
        let g = p("x+y+1", &["x", "y"]);
        assert_eq!(g.initial_form_int(&[0, 0]).unwrap(), g);
        let h = p("x-2*y", &["x", "y"]);
        assert_eq!(h.initial_form_int(&[1, 1]).unwrap(), h);
        assert!(LaurentPoly::zero(2).initial_form_int(&[1, 2]).unwrap().is_zero());
        assert!(matches!(h.initial_form_int(&[1]), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn rational_weight() {
        let f = p("x^2*y + x*y^3 + 1", &["x", "y"]);
        let w = vec![ratio(1, 2), ratio(1, 3)];
        // <w,(2,1)> = 4/3, <w,(1,3)> = 3/2
        assert_eq!(f.initial_form(&w).unwrap(), p("x*y^3", &["x", "y"]));
    }

    #[test]
    fn binomial_detection() {
        let b = p("x^3-1", &["x"]).is_binomial().unwrap();
        assert_eq!((b.u.to_vec(), b.v.to_vec(), b.lambda), (vec![3], vec![0], rat(1)));
        assert!(p("x^2-2*x*z+z^2", &["x", "y", "z"]).is_binomial().is_none());
        let b = p("5*x-10*y", &["x", "y"]).is_binomial().unwrap();
        assert_eq!((b.u.to_vec(), b.v.to_vec(), b.lambda.clone()), (vec![1, 0], vec![0, 1], rat(2)));
        assert!(p("3*x", &["x"]).is_binomial().is_none());
        assert!(LaurentPoly::zero(1).is_binomial().is_none());
        assert_eq!(b.to_poly(), p("x-2*y", &["x", "y"]));
    }

    #[test]
    fn clearing_and_normalizing() {
        let f = p("x*y^-1 - 2", &["x", "y"]);
        assert_eq!(f.clear_denominators(), p("x - 2*y", &["x", "y"]));
        let g = p("x^2*y - x*y^3", &["x", "y"]);
        assert_eq!(g.monomial_normalize(), p("x - y^2", &["x", "y"]));
        assert_eq!(g.clear_denominators(), g);
    }

    #[test]
    fn display_format() {
        let ring = Ring::polynomial(&["x", "y", "z"]).unwrap();
        let f = parse_poly("(x-z)^2", &ring).unwrap();
        assert_eq!(f.display(&ring).to_string(), "x^2 - 2*x*z + z^2");
        let f = parse_poly("-3/2*x*y + 1", &ring).unwrap();
        assert_eq!(f.display(&ring).to_string(), "-3/2*x*y + 1");
        let lr = ring.as_laurent();
        let f = parse_poly("x*y^-1 - 2", &lr).unwrap();
        assert_eq!(f.display(&lr).to_string(), "x*y^-1 - 2");
        assert_eq!(LaurentPoly::zero(3).display(&ring).to_string(), "0");
    }

    #[test]
    fn pow_matches_repeated_product() {
        let f = p("x - y + 2", &["x", "y"]);
        assert_eq!(f.pow(3), &(&f * &f) * &f);
        assert_eq!(f.pow(0), LaurentPoly::one(2));
    }
}
