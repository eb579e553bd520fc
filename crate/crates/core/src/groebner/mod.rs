//! Ideals, reduced Gröbner bases and the derived operations: normal forms,
//! saturation, elimination, Krull dimension and initial ideals.

mod buchberger;

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use crate::error::{Error, Result};
use crate::poly::{Exponent, LaurentPoly, MonomialOrder};

/// An ideal of `Q[x_1..x_n]` given by generators, with a cache of reduced
/// Gröbner bases per monomial order.
///
/// Generators with negative exponents are multiplied by the smallest monomial
/// that clears them.
pub struct IdealHandle {
    nvars: usize,
    generators: Vec<LaurentPoly>,
    cache: Mutex<HashMap<MonomialOrder, Arc<Vec<LaurentPoly>>>>,
}

impl Clone for IdealHandle {
    fn clone(&self) -> Self {
        let cache = self.cache.lock().map(|c| c.clone()).unwrap_or_default();
        IdealHandle { nvars: self.nvars, generators: self.generators.clone(), cache: Mutex::new(cache) }
    }
}

impl std::fmt::Debug for IdealHandle {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("IdealHandle").field("nvars", &self.nvars).field("generators", &self.generators).finish()
    }
}

impl IdealHandle {
    pub fn new(nvars: usize, generators: Vec<LaurentPoly>) -> Self {
        let generators = generators
            .into_iter()
            .filter(|g| !g.is_zero())
            .map(|g| {
                assert_eq!(g.nvars(), nvars, "generator from a different ring");
                g.clear_denominators()
            })
            .collect();
        IdealHandle { nvars, generators, cache: Mutex::new(HashMap::new()) }
    }

    /// Generators interpreted in the Laurent ring: each is replaced by its
    /// monomial-normalized representative (same Laurent ideal).
    pub fn from_laurent(nvars: usize, generators: Vec<LaurentPoly>) -> Self {
        Self::new(nvars, generators.into_iter().map(|g| g.monomial_normalize()).collect())
    }

    pub fn zero(nvars: usize) -> Self {
        Self::new(nvars, Vec::new())
    }

    pub fn unit(nvars: usize) -> Self {
        Self::new(nvars, vec![LaurentPoly::one(nvars)])
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn generators(&self) -> &[LaurentPoly] {
        &self.generators
    }

    pub fn reduced_gb(&self, ord: &MonomialOrder) -> Arc<Vec<LaurentPoly>> {
        if let Some(gb) = self.cache.lock().unwrap().get(ord) {
            return gb.clone();
        }
        let gb = Arc::new(buchberger::groebner_basis(self.nvars, &self.generators, ord));
        self.cache.lock().unwrap().insert(ord.clone(), gb.clone());
        gb
    }

    /// Normal form modulo the grevlex basis.
    pub fn reduce(&self, f: &LaurentPoly) -> LaurentPoly {
        let gb = self.reduced_gb(&MonomialOrder::Grevlex);
        normal_form(f, &gb, &MonomialOrder::Grevlex)
    }

    /// Ideal membership of the polynomial `f` (negative exponents are
    /// cleared first).
    pub fn contains(&self, f: &LaurentPoly) -> bool {
        self.reduce(f).is_zero()
    }

    pub fn contains_ideal(&self, other: &IdealHandle) -> bool {
        other.generators.iter().all(|g| self.contains(g))
    }

    pub fn same_ideal(&self, other: &IdealHandle) -> bool {
        self.nvars == other.nvars
            && self.reduced_gb(&MonomialOrder::Grevlex) == other.reduced_gb(&MonomialOrder::Grevlex)
    }

    pub fn is_unit(&self) -> bool {
        let gb = self.reduced_gb(&MonomialOrder::Grevlex);
        gb.len() == 1 && gb[0].is_constant()
    }

    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }

    /// The sum `self + <extra>`.
    pub fn extend(&self, extra: &[LaurentPoly]) -> IdealHandle {
        let mut gens = self.generators.clone();
        gens.extend(extra.iter().cloned());
        IdealHandle::new(self.nvars, gens)
    }

    /// Generators rescaled by a nonzero constant; same ideal, fresh cache.
    pub fn scaled(&self, c: &crate::poly::Coeff) -> IdealHandle {
        IdealHandle::new(self.nvars, self.generators.iter().map(|g| g.scale(c)).collect())
    }
}

pub fn reduced_gb(ideal: &IdealHandle, ord: &MonomialOrder) -> Arc<Vec<LaurentPoly>> {
    ideal.reduced_gb(ord)
}

/// Remainder of `f` modulo the reduced Gröbner basis `gb` for `ord`.
/// Zero exactly when `f` lies in the ideal of `gb`.
pub fn normal_form(f: &LaurentPoly, gb: &[LaurentPoly], ord: &MonomialOrder) -> LaurentPoly {
    buchberger::normal_form(&f.clear_denominators(), gb, ord)
}

/// Embeds `f` into a ring with one extra variable placed first.
fn prepend_var(f: &LaurentPoly) -> LaurentPoly {
    f.map_exponents(f.nvars() + 1, |e| {
        let mut v = Vec::with_capacity(e.len() + 1);
        v.push(0);
        v.extend_from_slice(e);
        Exponent::new(v)
    })
}

/// `(I : f^inf)`, computed as `(I + <t f - 1>) ∩ Q[x]`.
pub fn saturate(ideal: &IdealHandle, f: &LaurentPoly) -> IdealHandle {
    assert!(!f.is_zero(), "saturation by zero");
    let n = ideal.nvars;
    if ideal.is_zero() {
        return IdealHandle::zero(n);
    }
    if ideal.is_unit() {
        return IdealHandle::unit(n);
    }
    let f = f.clear_denominators();
    let mut gens: Vec<LaurentPoly> = ideal.reduced_gb(&MonomialOrder::Grevlex).iter().map(prepend_var).collect();
    let t = LaurentPoly::var(n + 1, 0);
    gens.push(&(&t * &prepend_var(&f)) - &LaurentPoly::one(n + 1));
    let ord = MonomialOrder::Elimination(1);
    let gb = buchberger::groebner_basis(n + 1, &gens, &ord);
    let kept: Vec<LaurentPoly> = gb
        .into_iter()
        .filter(|g| g.terms().iter().all(|(_, e)| e[0] == 0))
        .map(|g| g.map_exponents(n, |e| Exponent::new(e[1..].to_vec())))
        .collect();
    IdealHandle::new(n, kept)
}

/// `(I : (x_1 ... x_n)^inf)`, one variable at a time.
pub fn saturate_by_variables(ideal: &IdealHandle) -> IdealHandle {
    let n = ideal.nvars;
    let mut cur = ideal.clone();
    for i in 0..n {
        if cur.is_unit() || cur.is_zero() {
            break;
        }
        // skip variables that cannot be zero divisors: no generator of the
        // grevlex basis has a leading monomial or tail involving x_i at all
        let involved = cur.reduced_gb(&MonomialOrder::Grevlex).iter().any(|g| g.terms().iter().any(|(_, e)| e[i] != 0));
        if !involved {
            continue;
        }
        cur = saturate(&cur, &LaurentPoly::var(n, i));
    }
    cur
}

/// The Laurent extension `I Q[x^±]` represented by its contraction to the
/// polynomial ring.
pub fn laurent_closure(ideal: &IdealHandle) -> IdealHandle {
    saturate_by_variables(ideal)
}

/// `I ∩ Q[x_keep]`, returned in the same ambient ring.
pub fn eliminate(ideal: &IdealHandle, keep: &[usize]) -> IdealHandle {
    let n = ideal.nvars;
    let gb = eliminate_basis(ideal, keep);
    IdealHandle::new(n, gb)
}

fn eliminate_basis(ideal: &IdealHandle, keep: &[usize]) -> Vec<LaurentPoly> {
    let n = ideal.nvars;
    let dropped: Vec<usize> = (0..n).filter(|i| !keep.contains(i)).collect();
    if dropped.is_empty() {
        return ideal.reduced_gb(&MonomialOrder::Grevlex).to_vec();
    }
    // new position of every old variable: dropped block first
    let perm: Vec<usize> = dropped.iter().chain(keep.iter()).copied().collect();
    let to_new = |e: &Exponent| Exponent::new(perm.iter().map(|&old| e[old]).collect());
    let gens: Vec<LaurentPoly> = ideal.generators.iter().map(|g| g.map_exponents(n, to_new)).collect();
    let ord = MonomialOrder::Elimination(dropped.len());
    let gb = buchberger::groebner_basis(n, &gens, &ord);
    let k = dropped.len();
    gb.into_iter()
        .filter(|g| g.terms().iter().all(|(_, e)| e[..k].iter().all(|&a| a == 0)))
        .map(|g| {
            g.map_exponents(n, |e| {
                let mut old = vec![0; n];
                for (pos, &o) in perm.iter().enumerate() {
                    old[o] = e[pos];
                }
                Exponent::new(old)
            })
        })
        .collect()
}

/// `I ∩ Q[x_keep]` as an ideal of the smaller ring whose variables are
/// `keep` in the given order.
pub fn eliminate_to_subring(ideal: &IdealHandle, keep: &[usize]) -> IdealHandle {
    let gb = eliminate_basis(ideal, keep);
    let m = keep.len();
    let gens = gb
        .into_iter()
        .map(|g| g.map_exponents(m, |e| Exponent::new(keep.iter().map(|&i| e[i]).collect())))
        .collect();
    IdealHandle::new(m, gens)
}

/// Krull dimension of `Q[x]/I` from the leading monomials of the grevlex
/// basis; `-1` for the unit ideal.
pub fn krull_dimension(ideal: &IdealHandle) -> i64 {
    let n = ideal.nvars;
    if ideal.is_unit() {
        return -1;
    }
    let gb = ideal.reduced_gb(&MonomialOrder::Grevlex);
    let supports: Vec<u64> = gb
        .iter()
        .map(|g| {
            let (_, lt) = g.leading_term(&MonomialOrder::Grevlex).unwrap();
            lt.iter().enumerate().filter(|(_, &a)| a > 0).fold(0u64, |m, (i, _)| m | (1 << i))
        })
        .collect();
    assert!(n < 64, "too many variables");
    let mut best = 0i64;
    // a set S is independent when no leading monomial is supported inside S
    for mask in 0u64..(1u64 << n) {
        let size = mask.count_ones() as i64;
        if size <= best {
            continue;
        }
        if supports.iter().all(|&s| s & !mask != 0) {
            best = size;
        }
    }
    best
}

/// Homogenizes with a new last variable.
pub fn homogenize(f: &LaurentPoly) -> LaurentPoly {
    let d = f.total_degree();
    f.map_exponents(f.nvars() + 1, |e| {
        let mut v = e.to_vec();
        v.push(d - e.degree());
        Exponent::new(v)
    })
}

/// Sets the last variable to one.
pub fn dehomogenize(f: &LaurentPoly) -> LaurentPoly {
    let n = f.nvars() - 1;
    f.map_exponents(n, |e| Exponent::new(e[..n].to_vec()))
}

/// Generators of `in_w(I)` for an ideal `I` of the polynomial ring, using the
/// homogenization of a grevlex basis and a weight order refined by grevlex.
pub fn initial_ideal(ideal: &IdealHandle, w: &[i64]) -> Result<IdealHandle> {
    let n = ideal.nvars;
    if w.len() != n {
        return Err(Error::DimensionMismatch { expected: n, got: w.len() });
    }
    let gb = ideal.reduced_gb(&MonomialOrder::Grevlex);
    if gb.is_empty() {
        return Ok(IdealHandle::zero(n));
    }
    let homog: Vec<LaurentPoly> = gb.iter().map(homogenize).collect();
    // shifting every weight by the same constant does not change the order
    // on homogeneous polynomials but makes it a well-order
    let shift = w.iter().map(|&a| -a).max().unwrap_or(0).max(0) + 1;
    let mut weights: Vec<i64> = w.iter().map(|&a| a + shift).collect();
    weights.push(shift);
    let ord = MonomialOrder::Weight(weights.clone());
    let hgb = buchberger::groebner_basis(n + 1, &homog, &ord);
    let mut initial = Vec::with_capacity(hgb.len());
    for g in &hgb {
        initial.push(dehomogenize(&g.initial_form_int(&weights)?));
    }
    Ok(IdealHandle::new(n, initial))
}

/// Whether `in_w(I)` generates a proper ideal of the Laurent ring. `I` must
/// already be saturated by the product of the variables.
pub fn initial_ideal_proper_on_torus(ideal: &IdealHandle, w: &[i64]) -> Result<bool> {
    let n = ideal.nvars;
    if w.len() != n {
        return Err(Error::DimensionMismatch { expected: n, got: w.len() });
    }
    if ideal.is_zero() {
        return Ok(true);
    }
    if ideal.is_unit() {
        return Ok(false);
    }
    let init = initial_ideal(ideal, w)?;
    if init.generators().iter().any(|g| g.is_monomial()) {
        return Ok(false);
    }
    Ok(!saturate_by_variables(&init).is_unit())
}

/// Standard monomials (exponents outside the leading-term ideal) of a
/// zero-dimensional ideal, in ascending grevlex order.
pub fn standard_monomials(ideal: &IdealHandle) -> Result<Vec<Exponent>> {
    let n = ideal.nvars;
    if ideal.is_unit() {
        return Err(Error::UnitIdeal);
    }
    let dim = krull_dimension(ideal);
    if dim != 0 {
        return Err(Error::NotArtinian(dim));
    }
    let gb = ideal.reduced_gb(&MonomialOrder::Grevlex);
    let lts: Vec<Exponent> =
        gb.iter().map(|g| g.leading_term(&MonomialOrder::Grevlex).unwrap().1.clone()).collect();
    let is_standard = |e: &Exponent| !lts.iter().any(|l| l.divides(e));
    // breadth-first over the order ideal of standard monomials
    let mut out = vec![Exponent::zero(n)];
    let mut frontier = vec![Exponent::zero(n)];
    while let Some(e) = frontier.pop() {
        for i in 0..n {
            let mut v = e.to_vec();
            v[i] += 1;
            let next = Exponent::new(v);
            if is_standard(&next) && !out.contains(&next) {
                out.push(next.clone());
                frontier.push(next);
            }
        }
    }
    out.sort_by(|a, b| crate::poly::grevlex(a, b));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_poly, Ring};

    fn ideal(gens: &[&str], vars: &[&str]) -> (Ring, IdealHandle) {
        let ring = Ring::polynomial(vars).unwrap();
        let g = gens.iter().map(|s| parse_poly(s, &ring).unwrap()).collect();
        let h = IdealHandle::new(ring.nvars(), g);
        (ring, h)
    }

    fn p(ring: &Ring, s: &str) -> LaurentPoly {
        parse_poly(s, ring).unwrap()
    }

    fn example_1_2(n: i64) -> (Ring, IdealHandle) {
        let g2 = format!("{n}*x - y - {}*z", n - 1);
        ideal(&["(x-z)^2", &g2], &["x", "y", "z"])
    }

    #[test]
    fn normal_form_examples() {
        let (r, i) = ideal(&["x^2+x+1"], &["x"]);
        assert!(i.reduce(&p(&r, "x^3-1")).is_zero());
        assert_eq!(i.reduce(&p(&r, "x")), p(&r, "x"));
        let (r, i) = example_1_2(3);
        assert!(i.reduce(&p(&r, "x^3 - y*z^2")).is_zero());
        assert!(!i.contains(&p(&r, "x^2 - y*z")));
    }

    #[test]
    fn saturation_examples() {
        let (r, i) = ideal(&["x-y", "x^2", "x*y", "y^2"], &["x", "y"]);
        assert!(saturate(&i, &p(&r, "x*y")).is_unit());
        let (r, i) = ideal(&["x^2+x+1"], &["x"]);
        let s = saturate(&i, &p(&r, "x"));
        assert!(s.same_ideal(&i));
        let u = IdealHandle::unit(2);
        assert!(saturate(&u, &LaurentPoly::var(2, 0)).is_unit());
    }

    #[test]
    fn saturation_is_idempotent() {
        let (r, i) = ideal(&["x^2*y - x*y^2", "x^3 - x^2"], &["x", "y"]);
        let f = p(&r, "x");
        let s1 = saturate(&i, &f);
        let s2 = saturate(&s1, &f);
        assert!(s1.same_ideal(&s2));
        // <xy(x-y), x^2(x-1)> : x^inf = <x-1, y(y-1)>
        assert!(s1.contains(&p(&r, "x - 1")));
        assert!(s1.contains(&p(&r, "y^2 - y")));
        assert!(!s1.contains(&p(&r, "y - 1")));
    }

    #[test]
    fn elimination_examples() {
        let (r, i) = ideal(&["x-2*y"], &["x", "y"]);
        let s = saturate_by_variables(&i);
        assert!(eliminate(&s, &[0]).is_zero());
        let (r2, i2) = ideal(&["x-2", "y-3"], &["x", "y"]);
        let e = eliminate(&i2, &[1]);
        assert!(e.same_ideal(&IdealHandle::new(2, vec![p(&r2, "y-3")])));
        let (_, i3) = ideal(&["(x-1)*(x-2)"], &["x", "y"]);
        assert!(eliminate(&i3, &[0]).same_ideal(&i3));
        let _ = r;
    }

    #[test]
    fn krull_dimension_examples() {
        let (_, i) = ideal(&["x^2+x+1"], &["x"]);
        assert_eq!(krull_dimension(&i), 0);
        let (_, i) = example_1_2(3);
        assert_eq!(krull_dimension(&i), 1);
        assert_eq!(krull_dimension(&IdealHandle::zero(2)), 2);
        assert_eq!(krull_dimension(&IdealHandle::unit(2)), -1);
    }

    #[test]
    fn initial_ideal_examples() {
        let (_, i) = ideal(&["x-2*y"], &["x", "y"]);
        assert!(initial_ideal_proper_on_torus(&i, &[1, 1]).unwrap());
        assert!(!initial_ideal_proper_on_torus(&i, &[1, 0]).unwrap());
        assert!(initial_ideal_proper_on_torus(&IdealHandle::zero(2), &[5, -3]).unwrap());
        assert!(initial_ideal_proper_on_torus(&i, &[1]).is_err());
    }

    #[test]
    fn zero_weight_detects_unit_extension() {
        let (_, i) = ideal(&["x-y", "x^2", "x*y", "y^2"], &["x", "y"]);
        let sat = saturate_by_variables(&i);
        assert!(!initial_ideal_proper_on_torus(&sat, &[0, 0]).unwrap());
        let (_, j) = ideal(&["x^2+x+1"], &["x"]);
        assert!(initial_ideal_proper_on_torus(&j, &[0]).unwrap());
    }

    #[test]
    fn standard_monomial_count() {
        let (_, i) = ideal(&["y^2-2"], &["y"]);
        assert_eq!(standard_monomials(&i).unwrap().len(), 2);
        let (_, i) = ideal(&["x^2-y", "y^2-1"], &["x", "y"]);
        assert_eq!(standard_monomials(&i).unwrap().len(), 4);
        assert!(matches!(standard_monomials(&IdealHandle::zero(1)), Err(Error::NotArtinian(1))));
        assert!(matches!(standard_monomials(&IdealHandle::unit(1)), Err(Error::UnitIdeal)));
    }
}
