//! Buchberger's algorithm over Q with primitive integer coefficients.
//!
//! Pairs are selected by sugar degree, then by the monomial order on the lcm.
//! Useless pairs are dropped with the Gebauer-Möller installation of both
//! Buchberger criteria.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::poly::{Coeff, Exponent, LaurentPoly, MonomialOrder};

#[derive(Clone, Debug)]
struct IPoly {
    /// Descending under the active order; primitive with positive leading
    /// coefficient.
    terms: Vec<(BigInt, Exponent)>,
    sugar: i64,
}

impl IPoly {
    fn lt(&self) -> &Exponent {
        &self.terms[0].1
    }

    fn lc(&self) -> &BigInt {
        &self.terms[0].0
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn is_constant(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].1.is_zero()
    }

    fn make_primitive(&mut self) {
        let Some(first) = self.terms.first() else { return };
        let mut g = first.0.abs();
        for (c, _) in &self.terms[1..] {
            if g.is_one() {
                break;
            }
            g = g.gcd(c);
        }
        if self.terms[0].0.is_negative() {
            g = -g;
        }
        if !g.is_one() {
            for (c, _) in &mut self.terms {
                *c /= &g;
            }
        }
    }
}

fn to_ipoly(f: &LaurentPoly, ord: &MonomialOrder) -> IPoly {
    let denom = f.terms().iter().fold(BigInt::one(), |acc, (c, _)| acc.lcm(c.denom()));
    let mut terms: Vec<(BigInt, Exponent)> = f
        .terms()
        .iter()
        .map(|(c, e)| ((c.numer() * &denom) / c.denom(), e.clone()))
        .collect();
    terms.sort_by(|a, b| ord.cmp(&b.1, &a.1));
    let sugar = f.total_degree();
    let mut p = IPoly { terms, sugar };
    p.make_primitive();
    p
}

fn to_monic_laurent(p: &IPoly, nvars: usize) -> LaurentPoly {
    let lc = BigRational::from_integer(p.lc().clone());
    LaurentPoly::from_terms(nvars, p.terms.iter().map(|(c, e)| (BigRational::from_integer(c.clone()) / &lc, e.clone())))
}

/// `a * f - b * x^shift * g`, dropping the first term of both operands
/// (their leading terms cancel by construction).
fn cancel_leading(
    f: &[(BigInt, Exponent)],
    a: &BigInt,
    g: &[(BigInt, Exponent)],
    b: &BigInt,
    shift: &Exponent,
    ord: &MonomialOrder,
) -> Vec<(BigInt, Exponent)> {
    let mut out = Vec::with_capacity(f.len() + g.len());
    let (mut i, mut j) = (1, 1);
    let a_one = a.is_one();
    let mut gshift: Option<Exponent> = None;
    while i < f.len() || j < g.len() {
        if j < g.len() && gshift.is_none() {
            gshift = Some(g[j].1.add(shift));
        }
        let o = if i == f.len() {
            Ordering::Less
        } else if j == g.len() {
            Ordering::Greater
        } else {
            ord.cmp(&f[i].1, gshift.as_ref().unwrap())
        };
        match o {
            Ordering::Greater => {
                let c = if a_one { f[i].0.clone() } else { &f[i].0 * a };
                out.push((c, f[i].1.clone()));
                i += 1;
            }
            Ordering::Less => {
                out.push((-(&g[j].0 * b), gshift.take().unwrap()));
                j += 1;
            }
            Ordering::Equal => {
                let lhs = if a_one { f[i].0.clone() } else { &f[i].0 * a };
                let c = lhs - &g[j].0 * b;
                if !c.is_zero() {
                    out.push((c, gshift.take().unwrap()));
                } else {
                    gshift = None;
                }
                i += 1;
                j += 1;
            }
        }
    }
    out
}

/// Full reduction of `f` by `reducers`; the result is primitive.
fn reduce(f: IPoly, reducers: &[IPoly], ord: &MonomialOrder) -> IPoly {
    let sugar = f.sugar;
    let mut cur = f.terms;
    let mut rem: Vec<(BigInt, Exponent)> = Vec::new();
    let mut steps = 0usize;
    while !cur.is_empty() {
        let t = &cur[0].1;
        let red = reducers.iter().find(|g| g.lt().divides(t));
        match red {
            None => {
                // move the head to the remainder
                let head = cur.remove(0);
                rem.push(head);
            }
            Some(g) => {
                let c = &cur[0].0;
                let a = g.lc();
                let d = a.gcd(c);
                let ma = a / &d;
                let mc = c / &d;
                let shift = t.sub(g.lt());
                cur = cancel_leading(&cur, &ma, &g.terms, &mc, &shift, ord);
                if !ma.is_one() {
                    for (c, _) in &mut rem {
                        *c *= &ma;
                    }
                }
                steps += 1;
                if steps % 32 == 0 {
                    strip_content(&mut cur, &mut rem);
                }
            }
        }
    }
    let mut p = IPoly { terms: rem, sugar };
    p.make_primitive();
    p
}

fn strip_content(cur: &mut [(BigInt, Exponent)], rem: &mut [(BigInt, Exponent)]) {
    let mut g = BigInt::zero();
    for (c, _) in cur.iter().chain(rem.iter()) {
        g = g.gcd(c);
        if g.is_one() {
            return;
        }
    }
    if g.is_zero() || g.is_one() {
        return;
    }
    for (c, _) in cur.iter_mut().chain(rem.iter_mut()) {
        *c /= &g;
    }
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Exponent,
    sugar: i64,
}

fn spoly(f: &IPoly, g: &IPoly, lcm: &Exponent, ord: &MonomialOrder) -> IPoly {
    let d = f.lc().gcd(g.lc());
    let a = g.lc() / &d;
    let b = f.lc() / &d;
    let sf = lcm.sub(f.lt());
    let sg = lcm.sub(g.lt());
    let sugar = (f.sugar + sf.degree()).max(g.sugar + sg.degree());
    // a * x^sf * f - b * x^sg * g
    let fs: Vec<(BigInt, Exponent)> = f.terms.iter().map(|(c, e)| (c.clone(), e.add(&sf))).collect();
    let terms = cancel_leading(&fs, &a, &g.terms, &b, &sg, ord);
    IPoly { terms, sugar }
}

fn disjoint(a: &Exponent, b: &Exponent) -> bool {
    a.iter().zip(b.iter()).all(|(x, y)| *x == 0 || *y == 0)
}

struct Engine<'a> {
    ord: &'a MonomialOrder,
    polys: Vec<IPoly>,
    active: Vec<bool>,
    pairs: Vec<Pair>,
}

impl<'a> Engine<'a> {
    fn pair(&self, i: usize, j: usize) -> Pair {
        let (pi, pj) = (&self.polys[i], &self.polys[j]);
        let lcm = pi.lt().lcm(pj.lt());
        let sugar = (pi.sugar + lcm.degree() - pi.lt().degree()).max(pj.sugar + lcm.degree() - pj.lt().degree());
        Pair { i, j, lcm, sugar }
    }

    /// Gebauer-Möller update for a new basis element at index `h`.
    fn install(&mut self, h: usize) {
        let th = self.polys[h].lt().clone();
        let candidates: Vec<Pair> =
            (0..h).filter(|&g| self.active[g]).map(|g| self.pair(g, h)).collect();

        // chain criterion among the new pairs, keeping coprime ones as witnesses
        let mut kept: Vec<Pair> = Vec::new();
        for (k, p) in candidates.iter().enumerate() {
            let coprime = disjoint(self.polys[p.i].lt(), &th);
            let dominated = candidates.iter().enumerate().any(|(l, q)| {
                l != k && q.lcm.divides(&p.lcm) && (q.lcm != p.lcm || l < k)
            });
            if coprime || !dominated {
                kept.push(p.clone());
            }
        }
        // drop pairs sharing an lcm with a coprime pair, then the coprime ones
        let coprime_lcms: Vec<Exponent> =
            kept.iter().filter(|p| disjoint(self.polys[p.i].lt(), &th)).map(|p| p.lcm.clone()).collect();
        kept.retain(|p| !disjoint(self.polys[p.i].lt(), &th) && !coprime_lcms.contains(&p.lcm));

        // old pairs made redundant by the new leading term
        let polys = &self.polys;
        self.pairs.retain(|p| {
            if !th.divides(&p.lcm) {
                return true;
            }
            let l1 = polys[p.i].lt().lcm(&th);
            let l2 = polys[p.j].lt().lcm(&th);
            l1 == p.lcm || l2 == p.lcm
        });
        self.pairs.extend(kept);

        for g in 0..h {
            if self.active[g] && th.divides(self.polys[g].lt()) {
                self.active[g] = false;
            }
        }
    }

    fn add(&mut self, p: IPoly) {
        self.polys.push(p);
        self.active.push(true);
        let h = self.polys.len() - 1;
        self.install(h);
    }

    fn next_pair(&mut self) -> Option<Pair> {
        if self.pairs.is_empty() {
            return None;
        }
        let ord = self.ord;
        let mut best = 0;
        for k in 1..self.pairs.len() {
            let (a, b) = (&self.pairs[k], &self.pairs[best]);
            let better = a.sugar.cmp(&b.sugar).then_with(|| ord.cmp(&a.lcm, &b.lcm)) == Ordering::Less;
            if better {
                best = k;
            }
        }
        Some(self.pairs.swap_remove(best))
    }
}

/// Reduced Gröbner basis of the ideal generated by `gens` (polynomials with
/// nonnegative exponents), monic, sorted by ascending leading monomial.
pub(crate) fn groebner_basis(nvars: usize, gens: &[LaurentPoly], ord: &MonomialOrder) -> Vec<LaurentPoly> {
    let unit = || vec![LaurentPoly::one(nvars)];
    let mut input: Vec<IPoly> = gens.iter().filter(|g| !g.is_zero()).map(|g| to_ipoly(g, ord)).collect();
    if input.iter().any(|p| p.is_constant()) {
        return unit();
    }
    if input.is_empty() {
        return Vec::new();
    }
    // small generators first keeps the early basis sparse
    input.sort_by(|a, b| ord.cmp(a.lt(), b.lt()).then(a.terms.len().cmp(&b.terms.len())));

    let mut eng = Engine { ord, polys: Vec::new(), active: Vec::new(), pairs: Vec::new() };
    for p in input {
        let r = reduce(p, &eng.polys, ord);
        if r.is_zero() {
            continue;
        }
        if r.is_constant() {
            return unit();
        }
        eng.add(r);
    }
    while let Some(pair) = eng.next_pair() {
        let s = spoly(&eng.polys[pair.i], &eng.polys[pair.j], &pair.lcm, ord);
        let r = reduce(s, &eng.polys, ord);
        if r.is_zero() {
            continue;
        }
        if r.is_constant() {
            return unit();
        }
        eng.add(r);
    }

    // minimal basis, then inter-reduce tails
    let mut basis: Vec<IPoly> =
        eng.polys.into_iter().zip(eng.active).filter(|(_, a)| *a).map(|(p, _)| p).collect();
    basis.sort_by(|a, b| ord.cmp(a.lt(), b.lt()));
    for k in 0..basis.len() {
        let head = basis[k].terms[0].clone();
        let tail = IPoly { terms: basis[k].terms[1..].to_vec(), sugar: basis[k].sugar };
        let others: Vec<IPoly> =
            basis.iter().enumerate().filter(|(l, _)| *l != k).map(|(_, p)| p.clone()).collect();
        // scale head to stay consistent with the tail's content removal
        let reduced_tail = reduce_keep_scale(tail, &others, ord);
        let (scale, mut terms) = reduced_tail;
        let mut all = vec![(&head.0 * &scale, head.1)];
        all.append(&mut terms);
        let mut p = IPoly { terms: all, sugar: basis[k].sugar };
        p.make_primitive();
        basis[k] = p;
    }
    basis.iter().map(|p| to_monic_laurent(p, nvars)).collect()
}

/// Reduces `f` completely, returning `(s, r)` with `s * f = r` modulo the
/// ideal, i.e. without normalizing content so the caller can rescale.
fn reduce_keep_scale(f: IPoly, reducers: &[IPoly], ord: &MonomialOrder) -> (BigInt, Vec<(BigInt, Exponent)>) {
    let mut scale = BigInt::one();
    let mut cur = f.terms;
    let mut rem: Vec<(BigInt, Exponent)> = Vec::new();
    while !cur.is_empty() {
        let t = &cur[0].1;
        match reducers.iter().find(|g| g.lt().divides(t)) {
            None => {
                let head = cur.remove(0);
                rem.push(head);
            }
            Some(g) => {
                let c = &cur[0].0;
                let a = g.lc();
                let d = a.gcd(c);
                let ma = a / &d;
                let mc = c / &d;
                let shift = t.sub(g.lt());
                cur = cancel_leading(&cur, &ma, &g.terms, &mc, &shift, ord);
                if !ma.is_one() {
                    for (c, _) in &mut rem {
                        *c *= &ma;
                    }
                    scale *= &ma;
                }
            }
        }
    }
    (scale, rem)
}

/// Unique remainder of `f` modulo a reduced Gröbner basis `gb` (monic,
/// rational) under `ord`.
pub(crate) fn normal_form(f: &LaurentPoly, gb: &[LaurentPoly], ord: &MonomialOrder) -> LaurentPoly {
    let n = f.nvars();
    if gb.iter().any(|g| g.is_constant() && !g.is_zero()) {
        return LaurentPoly::zero(n);
    }
    let sorted = |p: &LaurentPoly| {
        let mut t: Vec<(Coeff, Exponent)> = p.terms().to_vec();
        t.sort_by(|a, b| ord.cmp(&b.1, &a.1));
        t
    };
    let basis: Vec<Vec<(Coeff, Exponent)>> = gb.iter().map(sorted).collect();
    let mut cur = sorted(f);
    let mut rem: Vec<(Coeff, Exponent)> = Vec::new();
    while !cur.is_empty() {
        let t = cur[0].1.clone();
        match basis.iter().find(|g| g[0].1.divides(&t)) {
            None => rem.push(cur.remove(0)),
            Some(g) => {
                let c = cur[0].0.clone() / &g[0].0;
                let shift = t.sub(&g[0].1);
                cur = sub_scaled(&cur, g, &c, &shift, ord);
            }
        }
    }
    LaurentPoly::from_terms(n, rem)
}

fn sub_scaled(
    f: &[(Coeff, Exponent)],
    g: &[(Coeff, Exponent)],
    c: &Coeff,
    shift: &Exponent,
    ord: &MonomialOrder,
) -> Vec<(Coeff, Exponent)> {
    let mut out = Vec::with_capacity(f.len() + g.len());
    let (mut i, mut j) = (1, 1);
    while i < f.len() || j < g.len() {
        let gs = if j < g.len() { Some(g[j].1.add(shift)) } else { None };
        let o = match (i < f.len(), &gs) {
            (false, _) => Ordering::Less,
            (true, None) => Ordering::Greater,
            (true, Some(e)) => ord.cmp(&f[i].1, e),
        };
        match o {
            Ordering::Greater => {
                out.push(f[i].clone());
                i += 1;
            }
            Ordering::Less => {
                out.push((-(&g[j].0 * c), gs.unwrap()));
                j += 1;
            }
            Ordering::Equal => {
                let v = &f[i].0 - &g[j].0 * c;
                if !v.is_zero() {
                    out.push((v, gs.unwrap()));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out
}
