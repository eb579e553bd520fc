//! Multiprecision complex arithmetic and polynomial roots.
//!
//! Used only for discovering candidate relations; every result derived from
//! these approximations is re-checked in exact arithmetic.

use astro_float::{BigFloat, Consts, RoundingMode, Sign, Word};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::linalg::UPoly;

const RM: RoundingMode = RoundingMode::ToEven;
const WORD_BITS: usize = Word::BITS as usize;

/// Working precision plus the constant cache needed by `ln`, `atan`, `π`.
pub struct Mp {
    p: usize,
    cc: Consts,
}

#[derive(Clone, Debug)]
pub struct Cx {
    pub re: BigFloat,
    pub im: BigFloat,
}

impl Mp {
    pub fn new(bits: usize) -> Self {
        Mp { p: bits, cc: Consts::new().expect("constant cache") }
    }

    pub fn bits(&self) -> usize {
        self.p
    }

    pub fn int(&self, n: &BigInt) -> BigFloat {
        if n.is_zero() {
            return BigFloat::from_word(0, self.p);
        }
        let (sign, words) = n.to_u64_digits();
        let words: Vec<Word> = words.into_iter().map(|w| w as Word).collect();
        let s = if sign == num_bigint::Sign::Minus { Sign::Neg } else { Sign::Pos };
        let e = (words.len() * WORD_BITS) as i32;
        let mut f = BigFloat::from_words(&words, s, e);
        f.set_precision(self.p, RM).expect("precision");
        f
    }

    pub fn small(&self, n: i64) -> BigFloat {
        BigFloat::from_i64(n, self.p)
    }

    pub fn rat(&self, q: &BigRational) -> BigFloat {
        self.int(q.numer()).div(&self.int(q.denom()), self.p, RM)
    }

    /// `2^k` for any sign of `k`.
    pub fn pow2(&self, k: i64) -> BigFloat {
        let two = self.small(2);
        let m = two.powi(k.unsigned_abs() as usize, self.p, RM);
        if k >= 0 {
            m
        } else {
            self.small(1).div(&m, self.p, RM)
        }
    }

    pub fn pi(&mut self) -> BigFloat {
        self.cc.pi(self.p, RM)
    }

    pub fn ln(&mut self, x: &BigFloat) -> BigFloat {
        x.ln(self.p, RM, &mut self.cc)
    }

    pub fn add(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.add(b, self.p, RM)
    }

    pub fn sub(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.sub(b, self.p, RM)
    }

    pub fn mul(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.mul(b, self.p, RM)
    }

    pub fn div(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.div(b, self.p, RM)
    }

    pub fn cx(&self, re: BigFloat, im: BigFloat) -> Cx {
        Cx { re, im }
    }

    pub fn cx_rat(&self, q: &BigRational) -> Cx {
        Cx { re: self.rat(q), im: self.small(0) }
    }

    pub fn cadd(&self, a: &Cx, b: &Cx) -> Cx {
        Cx { re: self.add(&a.re, &b.re), im: self.add(&a.im, &b.im) }
    }

    pub fn csub(&self, a: &Cx, b: &Cx) -> Cx {
        Cx { re: self.sub(&a.re, &b.re), im: self.sub(&a.im, &b.im) }
    }

    pub fn cmul(&self, a: &Cx, b: &Cx) -> Cx {
        let re = self.sub(&self.mul(&a.re, &b.re), &self.mul(&a.im, &b.im));
        let im = self.add(&self.mul(&a.re, &b.im), &self.mul(&a.im, &b.re));
        Cx { re, im }
    }

    pub fn cdiv(&self, a: &Cx, b: &Cx) -> Cx {
        let den = self.norm2(b);
        let re = self.add(&self.mul(&a.re, &b.re), &self.mul(&a.im, &b.im));
        let im = self.sub(&self.mul(&a.im, &b.re), &self.mul(&a.re, &b.im));
        Cx { re: self.div(&re, &den), im: self.div(&im, &den) }
    }

    pub fn norm2(&self, a: &Cx) -> BigFloat {
        self.add(&self.mul(&a.re, &a.re), &self.mul(&a.im, &a.im))
    }

    pub fn abs(&self, a: &Cx) -> BigFloat {
        self.norm2(a).sqrt(self.p, RM)
    }

    /// `ln |z|`
    pub fn ln_abs(&mut self, a: &Cx) -> BigFloat {
        let n = self.norm2(a);
        let l = self.ln(&n);
        self.div(&l, &self.small(2))
    }

    /// Principal argument in `(-π, π]`.
    pub fn arg(&mut self, a: &Cx) -> BigFloat {
        let pi = self.pi();
        if a.re.is_zero() {
            return match (a.im.is_positive(), a.im.is_zero()) {
                (_, true) => self.small(0),
                (true, _) => self.div(&pi, &self.small(2)),
                (false, _) => self.div(&pi, &self.small(-2)),
            };
        }
        let t = self.div(&a.im, &a.re).atan(self.p, RM, &mut self.cc);
        if a.re.is_positive() {
            t
        } else if a.im.is_negative() {
            self.sub(&t, &pi)
        } else {
            self.add(&t, &pi)
        }
    }

    /// Nearest integer.
    pub fn round(&self, x: &BigFloat) -> BigInt {
        let r = x.round(0, RoundingMode::ToEven);
        to_bigint(&r)
    }

    /// Evaluates a rational polynomial at a complex point.
    pub fn eval(&self, f: &UPoly, z: &Cx) -> Cx {
        let coeffs: Vec<Cx> = f.coeffs().iter().map(|c| self.cx_rat(c)).collect();
        self.horner(&coeffs, z)
    }

    fn horner(&self, coeffs: &[Cx], z: &Cx) -> Cx {
        let mut acc = Cx { re: self.small(0), im: self.small(0) };
        for c in coeffs.iter().rev() {
            acc = self.cadd(&self.cmul(&acc, z), c);
        }
        acc
    }

    /// All complex roots of a squarefree polynomial by Aberth iteration.
    ///
    /// Returns `None` if the iteration fails to settle to the working
    /// precision within the iteration budget.
    pub fn roots(&mut self, f: &UPoly) -> Option<Vec<Cx>> {
        let d = f.degree();
        if d < 1 {
            return Some(vec![]);
        }
        let d = d as usize;
        let f = f.monic();
        if d == 1 {
            let r = -f.coeffs()[0].clone();
            return Some(vec![self.cx_rat(&r)]);
        }
        // most iterations happen far from the roots; do them in f64 when possible
        let start: Vec<Cx> = match coarse_roots(&f) {
            Some(z) => z
                .into_iter()
                .map(|(re, im)| Cx { re: BigFloat::from_f64(re, self.p), im: BigFloat::from_f64(im, self.p) })
                .collect(),
            None => {
                circle(d, root_radius(&f))
                    .into_iter()
                    .map(|(re, im)| Cx { re: BigFloat::from_f64(re, self.p), im: BigFloat::from_f64(im, self.p) })
                    .collect()
            }
        };
        self.aberth(&f, start)
    }

    fn aberth(&mut self, f: &UPoly, mut z: Vec<Cx>) -> Option<Vec<Cx>> {
        let d = z.len();
        let coeffs: Vec<Cx> = f.coeffs().iter().map(|c| self.cx_rat(c)).collect();
        let dcoeffs: Vec<Cx> = f.derivative().coeffs().iter().map(|c| self.cx_rat(c)).collect();
        let tol = self.pow2(-(self.p as i64 - 12));
        let one = Cx { re: self.small(1), im: self.small(0) };
        // a root stays frozen once its correction drops below tolerance
        let mut settled = vec![false; d];
        for _ in 0..(200 + 40 * d) {
            for k in 0..d {
                if settled[k] {
                    continue;
                }
                let fz = self.horner(&coeffs, &z[k]);
                if fz.re.is_zero() && fz.im.is_zero() {
                    settled[k] = true;
                    continue;
                }
                let dz = self.horner(&dcoeffs, &z[k]);
                let ratio = self.cdiv(&fz, &dz);
                let mut s = Cx { re: self.small(0), im: self.small(0) };
                for j in 0..d {
                    if j != k {
                        let diff = self.csub(&z[k], &z[j]);
                        s = self.cadd(&s, &self.cdiv(&one, &diff));
                    }
                }
                let denom = self.csub(&one, &self.cmul(&ratio, &s));
                let w = self.cdiv(&ratio, &denom);
                let scale = self.add(&one.re, &self.abs(&z[k]));
                if self.abs(&w).cmp(&self.mul(&tol, &scale)).unwrap_or(1) <= 0 {
                    settled[k] = true;
                }
                z[k] = self.csub(&z[k], &w);
                if z[k].re.is_nan() || z[k].im.is_nan() {
                    return None;
                }
            }
            if settled.iter().all(|&b| b) {
                return Some(z);
            }
        }
        None
    }
}

/// `d` starting points on a circle, rotated off the real axis.
fn circle(d: usize, radius: f64) -> Vec<(f64, f64)> {
    (0..d)
        .map(|k| {
            let t = 2.0 * std::f64::consts::PI * k as f64 / d as f64 + 0.4;
            (radius * t.cos(), radius * t.sin())
        })
        .collect()
}

/// Fujiwara's bound `2 max |c_k|^{1/(d-k)}` on the roots of a monic polynomial.
fn root_radius(f: &UPoly) -> f64 {
    let d = f.degree() as usize;
    let r = f.coeffs()[..d]
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| {
            let log2 = rational_log2(&c.abs());
            (log2 / (d - k) as f64).exp2()
        })
        .fold(0.0, f64::max);
    (2.0 * r).clamp(1e-300, 1e300)
}

/// `log2 |q|` for a positive rational, without overflowing.
fn rational_log2(q: &BigRational) -> f64 {
    let top = q.numer().bits() as i64;
    let bot = q.denom().bits() as i64;
    let shift = top.max(bot) - 60;
    use num_traits::ToPrimitive;
    let scale = |x: &BigInt| if shift > 0 { (x >> shift as usize).to_f64().unwrap() } else { x.to_f64().unwrap() };
    let (n, m) = (scale(q.numer()), scale(q.denom()));
    if m == 0.0 {
        return top as f64 - bot as f64;
    }
    if n == 0.0 {
        return top as f64 - bot as f64;
    }
    n.log2() - m.log2()
}

type C64 = (f64, f64);

fn c_mul(a: C64, b: C64) -> C64 {
    (a.0 * b.0 - a.1 * b.1, a.0 * b.1 + a.1 * b.0)
}

fn c_div(a: C64, b: C64) -> C64 {
    let n = b.0 * b.0 + b.1 * b.1;
    ((a.0 * b.0 + a.1 * b.1) / n, (a.1 * b.0 - a.0 * b.1) / n)
}

fn c_horner(coeffs: &[C64], z: C64) -> C64 {
    coeffs.iter().rev().fold((0.0, 0.0), |acc, &c| {
        let m = c_mul(acc, z);
        (m.0 + c.0, m.1 + c.1)
    })
}

/// Aberth iteration in double precision, as starting points for the
/// multiprecision pass. `None` if the coefficients do not fit in an f64.
fn coarse_roots(f: &UPoly) -> Option<Vec<C64>> {
    let coeffs: Vec<C64> = f.coeffs().iter().map(|c| (rational_to_f64(c), 0.0)).collect();
    if coeffs.iter().any(|c| !c.0.is_finite() || c.0.abs() > 1e150) {
        return None;
    }
    let d = coeffs.len() - 1;
    let dcoeffs: Vec<C64> = coeffs.iter().enumerate().skip(1).map(|(k, c)| (c.0 * k as f64, 0.0)).collect();
    let mut z = circle(d, root_radius(f));
    for _ in 0..(100 + 20 * d) {
        let mut moved = false;
        for k in 0..d {
            let fz = c_horner(&coeffs, z[k]);
            let dz = c_horner(&dcoeffs, z[k]);
            let ratio = c_div(fz, dz);
            let mut s = (0.0, 0.0);
            for j in 0..d {
                if j != k {
                    let inv = c_div((1.0, 0.0), (z[k].0 - z[j].0, z[k].1 - z[j].1));
                    s = (s.0 + inv.0, s.1 + inv.1);
                }
            }
            let rs = c_mul(ratio, s);
            let w = c_div(ratio, (1.0 - rs.0, -rs.1));
            if !(w.0.is_finite() && w.1.is_finite()) {
                moved = true;
                continue;
            }
            if w.0.hypot(w.1) > 1e-13 * (1.0 + z[k].0.hypot(z[k].1)) {
                moved = true;
            }
            z[k] = (z[k].0 - w.0, z[k].1 - w.1);
        }
        if !moved {
            break;
        }
    }
    z.iter().all(|c| c.0.is_finite() && c.1.is_finite()).then_some(z)
}

fn to_bigint(x: &BigFloat) -> BigInt {
    let Some((words, _, sign, e, _)) = x.as_raw_parts() else {
        return BigInt::zero();
    };
    if x.is_zero() {
        return BigInt::zero();
    }
    let digits: Vec<u64> = words.iter().map(|&w| w as u64).collect();
    let mant = BigInt::from_biguint(num_bigint::Sign::Plus, num_bigint::BigUint::new(to_u32_digits(&digits)));
    let shift = e as i64 - (words.len() * WORD_BITS) as i64;
    let v = if shift >= 0 { mant << shift as usize } else { mant >> (-shift) as usize };
    if sign == Sign::Neg {
        -v
    } else {
        v
    }
}

fn to_u32_digits(words: &[u64]) -> Vec<u32> {
    words.iter().flat_map(|&w| [w as u32, (w >> 32) as u32]).collect()
}

fn rational_to_f64(q: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    q.to_f64().unwrap_or(f64::MAX)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{rat, ratio};

    #[test]
    fn integer_round_trip() {
        let mp = Mp::new(256);
        for s in ["0", "5", "-7", "123456789012345678901234567890", "-18446744073709551616"] {
            let n: BigInt = s.parse().unwrap();
            assert_eq!(mp.round(&mp.int(&n)), n, "{s}");
        }
        assert_eq!(mp.round(&mp.rat(&ratio(7, 2))), BigInt::from(4));
        assert_eq!(mp.round(&mp.rat(&ratio(-10, 3))), BigInt::from(-3));
    }

    #[test]
    fn pi_and_args() {
        let mut mp = Mp::new(128);
        let pi = mp.pi();
        let scaled = mp.mul(&pi, &mp.pow2(40));
        assert_eq!(mp.round(&scaled), BigInt::from(3454217652358u64));
        let z = mp.cx(mp.small(-1), mp.small(0));
        let a = mp.arg(&z);
        assert_eq!(a.cmp(&pi), Some(0));
        let z = mp.cx(mp.small(0), mp.small(-3));
        let a = mp.arg(&z);
        let a = mp.mul(&a, &mp.small(2));
        assert_eq!(mp.round(&mp.div(&a, &pi)), BigInt::from(-1));
    }

    #[test]
    fn roots_of_cyclotomic() {
        let mut mp = Mp::new(128);
        let f = UPoly::new(vec![rat(1), rat(1), rat(1)]);
        let roots = mp.roots(&f).unwrap();
        assert_eq!(roots.len(), 2);
        for r in &roots {
            let v = mp.eval(&f, r);
            let err = mp.abs(&v);
            assert!(err.cmp(&mp.pow2(-100)).unwrap() < 0);
            // cube is 1
            let c = mp.cmul(&mp.cmul(r, r), r);
            assert_eq!(mp.round(&c.re), BigInt::from(1));
        }
    }

    #[test]
    fn roots_with_large_spread() {
        let mut mp = Mp::new(192);
        // (t - 1/1000)(t - 3)(t + 1000)(t^2 + 2)
        let f = &(&(&UPoly::linear(&ratio(1, 1000)) * &UPoly::linear(&rat(3))) * &UPoly::linear(&rat(-1000)))
            * &UPoly::new(vec![rat(2), rat(0), rat(1)]);
        let roots = mp.roots(&f).unwrap();
        assert_eq!(roots.len(), 5);
        let big = mp.pow2(60);
        let mut reals: Vec<BigInt> = roots.iter().map(|r| mp.round(&mp.mul(&r.re, &big))).collect();
        reals.sort();
        assert_eq!(reals[0], BigInt::from(-1000) << 60);
        assert_eq!(reals[4], BigInt::from(3) << 60);
    }
}
