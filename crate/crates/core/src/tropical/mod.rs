//! Tropical varieties of Laurent ideals (max convention): membership, rays
//! of tropical curves, a primitive tropical vector, and the linear span.

mod newton;
mod span;

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::groebner::{
    eliminate_to_subring, initial_ideal_proper_on_torus, krull_dimension, saturate_by_variables, IdealHandle,
};
use crate::intlat::kernel_lattice;
use crate::linalg::QMatrix;
use crate::poly::{rat, MonomialOrder};

pub use newton::newton_normals;
pub use span::{find_primitive_tropical_vector, tropical_span, SpanBasis};

/// Parameters shared by the tropical algorithms.
#[derive(Debug, Clone)]
pub struct TropicalConfig {
    /// Registered name of the ray finder.
    pub ray_finder: String,
    /// Entry bound for exhaustive ray search.
    pub fallback_bound: i64,
    /// Attempts at cutting a variety down to a curve.
    pub retry_budget: usize,
    pub seed: u64,
}

impl Default for TropicalConfig {
    fn default() -> Self {
        TropicalConfig { ray_finder: "projection".into(), fallback_bound: 10, retry_budget: 64, seed: 0 }
    }
}

/// Primitive ray generators of a tropical curve, sorted in decreasing
/// lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RaySet {
    pub rays: Vec<Vec<i64>>,
    /// False when the rays came from a bounded exhaustive search.
    pub complete: bool,
}

/// Whether `w` lies in the tropical variety of an ideal already saturated by
/// the product of the variables.
pub fn in_tropical_variety(ideal: &IdealHandle, w: &[i64]) -> Result<bool> {
    initial_ideal_proper_on_torus(ideal, w)
}

pub trait RayFinder: Send + Sync {
    fn name(&self) -> &'static str;
    /// Rays of the tropical curve of `curve`, which is saturated and one-dimensional.
    fn rays(&self, curve: &IdealHandle, cfg: &TropicalConfig) -> Result<RaySet>;
}

/// Pairwise eliminations, Newton polygon normals and assembly of
/// candidates, each verified by membership.
pub struct Projection;

/// Every primitive vector in a box, verified by membership.
pub struct Exhaustive;

static RAY_FINDERS: [&dyn RayFinder; 2] = [&Projection, &Exhaustive];

pub fn ray_finders() -> impl Iterator<Item = &'static str> {
    RAY_FINDERS.iter().map(|f| f.name())
}

pub fn ray_finder(name: &str) -> Result<&'static dyn RayFinder> {
    RAY_FINDERS.iter().copied().find(|f| f.name() == name).ok_or_else(|| Error::UnknownStrategy {
        kind: "ray finder".into(),
        name: name.into(),
        known: ray_finders().collect::<Vec<_>>().join(", "),
    })
}

/// Rays of `T(I)` for an ideal whose Laurent extension is one-dimensional.
pub fn tropical_curve_rays(ideal: &IdealHandle, cfg: &TropicalConfig) -> Result<RaySet> {
    let curve = saturate_by_variables(ideal);
    let d = krull_dimension(&curve);
    if d != 1 {
        return Err(Error::Precondition(format!("tropical curve rays need a one-dimensional ideal, got dimension {d}")));
    }
    ray_finder(&cfg.ray_finder)?.rays(&curve, cfg)
}

fn sort_rays(mut rays: Vec<Vec<i64>>) -> Vec<Vec<i64>> {
    rays.sort_by(|a, b| b.cmp(a));
    rays.dedup();
    rays
}

fn verified(curve: &IdealHandle, candidates: impl IntoIterator<Item = Vec<i64>>) -> Result<Vec<Vec<i64>>> {
    let mut out = Vec::new();
    for c in candidates {
        if in_tropical_variety(curve, &c)? {
            out.push(c);
        }
    }
    Ok(sort_rays(out))
}

/// Allowed projections of a ray to the coordinate pair `(i, j)`.
struct PairConstraint {
    i: usize,
    j: usize,
    /// `None` when the elimination ideal is zero and says nothing.
    normals: Option<Vec<(i64, i64)>>,
}

impl PairConstraint {
    fn admits(&self, v: &[i64]) -> bool {
        let Some(normals) = &self.normals else {
            return true;
        };
        let (x, y) = (v[self.i], v[self.j]);
        (x == 0 && y == 0) || normals.iter().any(|&(a, b)| b * x - a * y == 0 && a * x + b * y > 0)
    }
}

impl RayFinder for Projection {
    fn name(&self) -> &'static str {
        "projection"
    }

    fn rays(&self, curve: &IdealHandle, cfg: &TropicalConfig) -> Result<RaySet> {
        let n = curve.nvars();
        if n == 1 {
            return Ok(RaySet { rays: verified(curve, [vec![1], vec![-1]])?, complete: true });
        }
        let mut pairs = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let e = eliminate_to_subring(curve, &[i, j]);
                let gb = e.reduced_gb(&MonomialOrder::Grevlex);
                let normals = if gb.is_empty() {
                    None
                } else {
                    // a ray direction of T(E) lies in T(h) for every h in E
                    let mut common: Option<BTreeSet<(i64, i64)>> = None;
                    for g in gb.iter() {
                        let s: BTreeSet<(i64, i64)> = newton_normals(g).into_iter().collect();
                        common = Some(match common {
                            None => s,
                            Some(c) => c.intersection(&s).copied().collect(),
                        });
                    }
                    Some(common.unwrap_or_default().into_iter().collect())
                };
                pairs.push(PairConstraint { i, j, normals });
            }
        }
        let mut candidates = BTreeSet::new();
        let mut underdetermined = false;
        assemble(n, &pairs, 0, &mut Vec::new(), &mut candidates, &mut underdetermined);
        if !underdetermined {
            return Ok(RaySet { rays: verified(curve, candidates)?, complete: true });
        }
        let boxed = primitive_box(n, cfg.fallback_bound).into_iter().filter(|v| pairs.iter().all(|p| p.admits(v)));
        let rays = verified(curve, boxed)?;
        if rays.is_empty() {
            return Err(Error::FallbackExhausted(cfg.fallback_bound));
        }
        Ok(RaySet { rays, complete: false })
    }
}

/// Fixes the projection of the candidate to one pair at a time; once the
/// linear conditions leave a single direction, checks it against the rest.
fn assemble(
    n: usize,
    pairs: &[PairConstraint],
    idx: usize,
    eqs: &mut Vec<Vec<i64>>,
    out: &mut BTreeSet<Vec<i64>>,
    underdetermined: &mut bool,
) {
    let kernel = if eqs.is_empty() {
        None
    } else {
        let a = QMatrix::from_rows(n, eqs.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect());
        Some(kernel_lattice(&a))
    };
    if let Some(k) = &kernel {
        if k.is_zero() {
            return;
        }
        if k.rank() == 1 {
            let v = k.rows_i64().remove(0);
            for s in [v.clone(), v.iter().map(|x| -x).collect()] {
                if pairs.iter().all(|p| p.admits(&s)) {
                    out.insert(s);
                }
            }
            return;
        }
    }
    if idx == pairs.len() {
        *underdetermined = true;
        return;
    }
    let p = &pairs[idx];
    let Some(normals) = &p.normals else {
        assemble(n, pairs, idx + 1, eqs, out, underdetermined);
        return;
    };
    let mut zero_i = vec![0; n];
    zero_i[p.i] = 1;
    let mut zero_j = vec![0; n];
    zero_j[p.j] = 1;
    eqs.push(zero_i);
    eqs.push(zero_j);
    assemble(n, pairs, idx + 1, eqs, out, underdetermined);
    eqs.truncate(eqs.len() - 2);
    for &(a, b) in normals {
        let mut row = vec![0; n];
        row[p.i] = b;
        row[p.j] = -a;
        eqs.push(row);
        assemble(n, pairs, idx + 1, eqs, out, underdetermined);
        eqs.pop();
    }
}

/// Primitive integer vectors with entries in `[-b, b]`.
fn primitive_box(n: usize, b: i64) -> Vec<Vec<i64>> {
    use num_integer::Integer;
    let mut out = Vec::new();
    let mut v = vec![-b; n];
    loop {
        if v.iter().fold(0i64, |g, &x| g.gcd(&x)) == 1 {
            out.push(v.clone());
        }
        let mut i = 0;
        loop {
            if i == n {
                return out;
            }
            if v[i] < b {
                v[i] += 1;
                break;
            }
            v[i] = -b;
            i += 1;
        }
    }
}

impl RayFinder for Exhaustive {
    fn name(&self) -> &'static str {
        "exhaustive"
    }

    fn rays(&self, curve: &IdealHandle, cfg: &TropicalConfig) -> Result<RaySet> {
        let rays = verified(curve, primitive_box(curve.nvars(), cfg.fallback_bound))?;
        if rays.is_empty() {
            return Err(Error::FallbackExhausted(cfg.fallback_bound));
        }
        Ok(RaySet { rays, complete: false })
    }
}
