use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{ray_finder, TropicalConfig};
use crate::error::{Error, Result};
use crate::groebner::{eliminate_to_subring, krull_dimension, saturate_by_variables, IdealHandle};
use crate::intlat::unimodular_extension_i64;
use crate::linalg::QMatrix;
use crate::poly::{rat, Exponent, LaurentPoly, MonomialOrder};

/// Linearly independent integer vectors spanning `span T(I)` over Q.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpanBasis {
    pub vectors: Vec<Vec<i64>>,
    pub ambient: usize,
}

impl SpanBasis {
    pub fn rank(&self) -> usize {
        self.vectors.len()
    }

    pub fn as_qmatrix(&self) -> QMatrix {
        QMatrix::from_rows(
            self.ambient,
            self.vectors.iter().map(|v| v.iter().map(|&x| rat(x)).collect()).collect(),
        )
    }
}

/// A primitive nonzero vector of `T(I)`: cut the variety down to a curve
/// with random affine hyperplanes and take one of the curve's rays.
pub fn find_primitive_tropical_vector(ideal: &IdealHandle, cfg: &TropicalConfig) -> Result<Vec<i64>> {
    let j = saturate_by_variables(ideal);
    let d = krull_dimension(&j);
    if d <= 0 {
        return Err(Error::Precondition(format!("no nonzero tropical vector in dimension {d}")));
    }
    let finder = ray_finder(&cfg.ray_finder)?;
    if d == 1 {
        return first_ray(finder.rays(&j, cfg)?.rays);
    }
    let n = j.nvars();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let budget = cfg.retry_budget.max(1);
    for attempt in 0..budget {
        let range = 2 + attempt as i64;
        let forms: Vec<LaurentPoly> = if attempt < budget / 2 {
            // hyperplanes x_v = a through random points
            let mut vars: Vec<usize> = (0..n).collect();
            for k in 0..vars.len() {
                let r = rng.gen_range(k..vars.len());
                vars.swap(k, r);
            }
            vars[..(d - 1) as usize]
                .iter()
                .map(|&v| {
                    let a = rng.gen_range(1..=range);
                    &LaurentPoly::var(n, v) - &LaurentPoly::constant(n, rat(a))
                })
                .collect()
        } else {
            (0..d - 1)
                .map(|_| {
                    let mut f = LaurentPoly::constant(n, rat(rng.gen_range(-range..=range)));
                    for v in 0..n {
                        f = &f + &LaurentPoly::var(n, v).scale(&rat(rng.gen_range(-range..=range)));
                    }
                    f
                })
                .collect()
        };
        let cut = saturate_by_variables(&j.extend(&forms));
        if krull_dimension(&cut) != 1 {
            continue;
        }
        match finder.rays(&cut, cfg) {
            Ok(r) if !r.rays.is_empty() => return first_ray(r.rays),
            Ok(_) | Err(Error::FallbackExhausted(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::RetryBudgetExhausted(budget))
}

fn first_ray(rays: Vec<Vec<i64>>) -> Result<Vec<i64>> {
    rays.into_iter().next().ok_or_else(|| Error::Precondition("tropical curve without rays".into()))
}

/// Basis of the linear span of `T(I)`, by repeatedly finding a tropical
/// vector, moving it to the last coordinate axis and projecting it away.
pub fn tropical_span(ideal: &IdealHandle, cfg: &TropicalConfig) -> Result<SpanBasis> {
    let n = ideal.nvars();
    let j = saturate_by_variables(ideal);
    let vectors = span_rec(&j, cfg, 0)?;
    Ok(SpanBasis { vectors, ambient: n })
}

fn span_rec(j: &IdealHandle, cfg: &TropicalConfig, depth: u64) -> Result<Vec<Vec<i64>>> {
    let n = j.nvars();
    let d = krull_dimension(j);
    if d <= 0 {
        return Ok(vec![]);
    }
    if d as usize == n {
        // the zero ideal: T(I) is everything
        return Ok((0..n).map(|i| Exponent::unit(n, i).into_vec()).collect());
    }
    let level_cfg = TropicalConfig { seed: cfg.seed.wrapping_add(depth), ..cfg.clone() };
    let v = find_primitive_tropical_vector(j, &level_cfg)?;
    let m = unimodular_extension_i64(&v)?;
    let minv = m.unimodular_inverse().expect("unimodular");
    // y = x^M, so x^a = y^b with b = M^{-T} a
    let to_y = |e: &Exponent| {
        Exponent::new((0..n).map(|i| (0..n).map(|k| to_i64(&minv[(k, i)]) * e[k]).sum()).collect())
    };
    let gb = j.reduced_gb(&MonomialOrder::Grevlex);
    let moved: Vec<LaurentPoly> = gb.iter().map(|g| g.map_exponents(n, to_y)).collect();
    let moved = saturate_by_variables(&IdealHandle::from_laurent(n, moved));
    let keep: Vec<usize> = (0..n - 1).collect();
    let projected = saturate_by_variables(&eliminate_to_subring(&moved, &keep));
    let rest = span_rec(&projected, cfg, depth + 1)?;
    let mut out = vec![v];
    for u in rest {
        let mut ext: Vec<BigInt> = u.iter().map(|&x| BigInt::from(x)).collect();
        ext.push(BigInt::from(0));
        out.push(minv.mul_vec(&ext).iter().map(to_i64).collect());
    }
    Ok(out)
}

fn to_i64(a: &BigInt) -> i64 {
    i64::try_from(a).expect("coordinate change exceeds i64")
}
