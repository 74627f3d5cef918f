//! Brute-force ground truth from Riemann-Roch dimensions.
//!
//! # Dimension formula
//!
//! Every function of `F = K(x, y)` is `sum_{j=0}^{m-1} h_j(x) y^j` with
//! `h_j in K(x)`. At a totally ramified place `P_i` the valuation of
//! `h_j y^j` is `m*ord_{alpha_i}(h_j) + j*lambda`, and at `P_inf` it is
//! `-m*deg(h_j) - j*r*lambda`. Because `gcd(lambda, m) = gcd(r*lambda, m) = 1`
//! these are pairwise distinct modulo `m` as `j` varies, so the valuation of
//! the sum is the minimum over its terms. Above any other point of the line
//! the extension is unramified and `1, y, ..., y^{m-1}` is a local integral
//! basis, so regularity there is regularity of every `h_j`.
//!
//! Hence `f in L(D)` for `D = n_inf P_inf + sum n_i P_i` iff each `h_j` lies
//! in the genus-zero space of rational functions with
//! `ord_{alpha_i}(h_j) >= a_ij = ceil((-n_i - j*lambda)/m)` and
//! `deg(h_j) <= -b_j`, `b_j = ceil((j*r*lambda - n_inf)/m)`. That space has
//! dimension `max(0, 1 - b_j - sum_i a_ij)`, and
//!
//! ```text
//! l(D) = sum_{j=0}^{m-1} max(0, 1 - b_j - sum_i a_ij).
//! ```
//!
//! No field elements are built. The formula is checked against
//! `l(D) = deg D + 1 - g` for `deg D >= 2g - 1` in the test suite.

use std::collections::HashMap;
use std::sync::RwLock;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::ceil_div;
use crate::curve::{CurveParams, DivisorSpec, PlaceId};
use crate::error::{Error, Result};
use crate::gamma::GammaSet;
use crate::lattice::{box_size, BoxPoints};
use crate::onepoint::GapList;
use crate::tuple::{PlaceTuple, PoleVector};

/// Largest box (in points) the scans will materialize.
pub const MAX_SCAN_POINTS: usize = 1 << 26;

pub fn rr_dimension(params: &CurveParams, d: &DivisorSpec) -> Result<u64> {
    let r = params.r() as usize;
    if d.coeff_finite.len() != r {
        return Err(Error::UnsupportedSupport {
            expected: r,
            got: d.coeff_finite.len(),
        });
    }
    let (m, lambda, rr) = (params.m() as i128, params.lambda() as i128, params.r() as i128);
    let mut total: u128 = 0;
    for j in 0..m {
        let b = ceil_div_i128(j * rr * lambda - d.coeff_infinity as i128, m);
        let a: i128 = d
            .coeff_finite
            .iter()
            .map(|&n| ceil_div_i128(-(n as i128) - j * lambda, m))
            .sum();
        let dim = 1 - b - a;
        if dim > 0 {
            total += dim as u128;
        }
    }
    u64::try_from(total).map_err(|_| Error::Overflow("rr_dimension"))
}

fn ceil_div_i128(a: i128, b: i128) -> i128 {
    -((-a).div_euclid(b))
}

/// Memoized [`rr_dimension`], safe to share between threads.
#[derive(Debug)]
pub struct DimensionTable {
    params: CurveParams,
    capacity: usize,
    cache: RwLock<HashMap<DivisorSpec, u64>>,
}

impl DimensionTable {
    pub fn new(params: CurveParams, capacity: usize) -> Self {
        DimensionTable {
            params,
            capacity,
            cache: RwLock::new(HashMap::new()),
        }
    }

    pub fn params(&self) -> &CurveParams {
        &self.params
    }

    pub fn dimension(&self, d: &DivisorSpec) -> Result<u64> {
        if let Some(&hit) = self.cache.read().expect("cache poisoned").get(d) {
            return Ok(hit);
        }
        let value = rr_dimension(&self.params, d)?;
        let mut cache = self.cache.write().expect("cache poisoned");
        if cache.len() < self.capacity {
            cache.insert(d.clone(), value);
        }
        Ok(value)
    }

    pub fn cached(&self) -> usize {
        self.cache.read().expect("cache poisoned").len()
    }
}

/// `l(sum v_c Q_c)` for vectors on a fixed tuple, with the contribution of
/// the places outside the tuple folded into per-`j` constants.
#[derive(Debug, Clone)]
struct TupleDimension {
    m: i64,
    r_lambda: i64,
    lambda: i64,
    places: Vec<PlaceId>,
    /// `1 - (terms of places outside the tuple)` for each `j`.
    base: Vec<i64>,
}

impl TupleDimension {
    fn new(params: &CurveParams, tuple: &PlaceTuple) -> Self {
        let (m, lambda) = (params.m() as i64, params.lambda() as i64);
        let r_lambda = params.r() as i64 * lambda;
        let outside_finite = (params.r() as usize - tuple.finite_indices().len()) as i64;
        let base = (0..m)
            .map(|j| {
                let mut b = 1 - outside_finite * ceil_div(-j * lambda, m);
                if !tuple.includes_infinity() {
                    b -= ceil_div(j * r_lambda, m);
                }
                b
            })
            .collect();
        TupleDimension {
            m,
            r_lambda,
            lambda,
            places: tuple.places(),
            base,
        }
    }

    fn dimension(&self, v: &[u64]) -> u64 {
        let mut total = 0u64;
        for j in 0..self.m {
            let mut t = self.base[j as usize];
            for (place, &n) in self.places.iter().zip(v) {
                let n = n as i64;
                t -= match place {
                    PlaceId::Infinity => ceil_div(j * self.r_lambda - n, self.m),
                    PlaceId::Finite(_) => ceil_div(-n - j * self.lambda, self.m),
                };
            }
            if t > 0 {
                total += t as u64;
            }
        }
        total
    }
}

fn check_coords(v: &PoleVector) -> Result<()> {
    if v.coords().iter().any(|&c| c > i64::MAX as u64 / 4) {
        return Err(Error::Overflow("oracle coordinates"));
    }
    Ok(())
}

/// `v in H` iff `l(D) > l(D - Q_i)` for every `i` with `v_i > 0`.
pub fn member_oracle(params: &CurveParams, tuple: &PlaceTuple, v: &PoleVector) -> Result<bool> {
    tuple.check_vector(v)?;
    check_coords(v)?;
    let dim = TupleDimension::new(params, tuple);
    let top = dim.dimension(v.coords());
    let mut below = v.coords().to_vec();
    for i in 0..v.len() {
        if v[i] == 0 {
            continue;
        }
        below[i] -= 1;
        let drops = dim.dimension(&below) < top;
        below[i] += 1;
        if !drops {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `l(D) = l(D - Q_i)` for every `i`; only defined for strictly positive `v`.
pub fn pure_gap_oracle(params: &CurveParams, tuple: &PlaceTuple, v: &PoleVector) -> Result<bool> {
    tuple.check_vector(v)?;
    check_coords(v)?;
    if !v.is_strictly_positive() {
        return Err(Error::NotStrictlyPositive(v.to_string()));
    }
    let dim = TupleDimension::new(params, tuple);
    let top = dim.dimension(v.coords());
    let mut below = v.coords().to_vec();
    for i in 0..v.len() {
        below[i] -= 1;
        let same = dim.dimension(&below) == top;
        below[i] += 1;
        if !same {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `{ n in [1, 2g] : l(nP) = l((n-1)P) }`.
pub fn gaps_oracle(params: &CurveParams, place: PlaceId) -> Result<GapList> {
    let place = place.check(params)?;
    let tuple = match place {
        PlaceId::Infinity => PlaceTuple::new(params, true, vec![])?,
        PlaceId::Finite(i) => PlaceTuple::new(params, false, vec![i])?,
    };
    let dim = TupleDimension::new(params, &tuple);
    let top = 2 * params.genus();
    let dims: Vec<u64> = (0..=top).map(|n| dim.dimension(&[n])).collect();
    let gaps = (1..=top as usize)
        .filter(|&n| dims[n] == dims[n - 1])
        .map(|n| n as u64)
        .collect();
    Ok(GapList { place, gaps })
}

/// Dimensions over the box `prod_c [0, upper_c]`, row-major.
struct DimensionGrid {
    upper: Vec<u64>,
    strides: Vec<usize>,
    dims: Vec<u64>,
}

impl DimensionGrid {
    fn build(params: &CurveParams, tuple: &PlaceTuple, upper: Vec<u64>) -> Result<Self> {
        let size = box_size(&upper)
            .filter(|&s| s <= MAX_SCAN_POINTS)
            .ok_or(Error::Overflow("oracle scan box"))?;
        let l = upper.len();
        let mut strides = vec![1usize; l];
        for c in (0..l.saturating_sub(1)).rev() {
            strides[c] = strides[c + 1] * (upper[c + 1] as usize + 1);
        }
        let dim = TupleDimension::new(params, tuple);
        // one slab per value of the first coordinate
        let slab = size / (upper[0] as usize + 1);
        let mut dims = vec![0u64; size];
        dims.par_chunks_mut(slab).enumerate().for_each(|(first, chunk)| {
            let mut rest_upper = upper.clone();
            rest_upper[0] = 0;
            for (slot, mut p) in chunk.iter_mut().zip(BoxPoints::new(rest_upper)) {
                p[0] = first as u64;
                *slot = dim.dimension(&p);
            }
        });
        Ok(DimensionGrid { upper, strides, dims })
    }

    fn index(&self, v: &[u64]) -> usize {
        v.iter().zip(&self.strides).map(|(&c, &s)| c as usize * s).sum()
    }

    fn is_member(&self, v: &[u64]) -> bool {
        let idx = self.index(v);
        v.iter()
            .zip(&self.strides)
            .all(|(&c, &s)| c == 0 || self.dims[idx - s] < self.dims[idx])
    }

    fn is_pure_gap(&self, v: &[u64]) -> bool {
        let idx = self.index(v);
        v.iter()
            .zip(&self.strides)
            .all(|(&c, &s)| c > 0 && self.dims[idx - s] == self.dims[idx])
    }
}

fn gap_lists(params: &CurveParams, tuple: &PlaceTuple) -> Result<Vec<GapList>> {
    tuple
        .places()
        .into_iter()
        .map(|q| gaps_oracle(params, q))
        .collect()
}

fn require_multi(tuple: &PlaceTuple) -> Result<()> {
    if tuple.len() < 2 {
        return Err(Error::InvalidTupleLength {
            len: tuple.len(),
            expected: "at least 2 places".into(),
        });
    }
    Ok(())
}

/// Exhaustive `Gamma`: members of `prod G(Q_i)` that are minimal in the
/// fiber of coordinate 0.
pub fn gamma_oracle(params: &CurveParams, tuple: &PlaceTuple) -> Result<GammaSet> {
    gamma_oracle_in_fiber(params, tuple, 0)
}

/// As [`gamma_oracle`] with the minimality fiber taken at coordinate `fiber`.
pub fn gamma_oracle_in_fiber(params: &CurveParams, tuple: &PlaceTuple, fiber: usize) -> Result<GammaSet> {
    require_multi(tuple)?;
    let l = tuple.len();
    if fiber >= l {
        return Err(Error::CoordinateOutOfRange { index: fiber, len: l });
    }
    let gaps = gap_lists(params, tuple)?;
    let upper: Vec<u64> = gaps.iter().map(|g| g.max().unwrap_or(0)).collect();
    let grid = DimensionGrid::build(params, tuple, upper)?;

    // members dominated-or-equal counts within each fiber: prefix sums over
    // every coordinate except `fiber`
    let mut counts: Vec<u32> = BoxPoints::new(grid.upper.clone())
        .map(|p| u32::from(grid.is_member(&p)))
        .collect();
    for d in (0..l).filter(|&d| d != fiber) {
        let stride = grid.strides[d];
        let extent = grid.upper[d] as usize + 1;
        for idx in 0..counts.len() {
            if (idx / stride) % extent != 0 {
                counts[idx] += counts[idx - stride];
            }
        }
    }

    let mut elements = Vec::new();
    for v in candidates(&gaps) {
        let idx = grid.index(&v);
        if grid.is_member(&v) && counts[idx] == 1 {
            elements.push(PoleVector::new(v));
        }
    }
    elements.sort_unstable();
    Ok(GammaSet {
        params: *params,
        shape: tuple.shape(),
        elements,
        truncated_at: None,
    })
}

fn candidates(gaps: &[GapList]) -> impl Iterator<Item = Vec<u64>> + '_ {
    let sizes: Vec<u64> = gaps.iter().map(|g| g.len() as u64 - 1).collect();
    BoxPoints::new(sizes).map(move |ix| ix.iter().zip(gaps).map(|(&k, g)| g.gaps[k as usize]).collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PureGapSet {
    /// Every coordinate of every scanned vector is at most this.
    pub bound: u64,
    pub elements: Vec<PoleVector>,
}

/// All pure gaps; the scan covers `prod G(Q_i)`, inside `[1, 2g-1]^l`.
pub fn pure_gaps_box(params: &CurveParams, tuple: &PlaceTuple) -> Result<PureGapSet> {
    require_multi(tuple)?;
    let gaps = gap_lists(params, tuple)?;
    let upper: Vec<u64> = gaps.iter().map(|g| g.max().unwrap_or(0)).collect();
    let grid = DimensionGrid::build(params, tuple, upper)?;
    let mut elements: Vec<PoleVector> = candidates(&gaps)
        .filter(|v| grid.is_pure_gap(v))
        .map(PoleVector::new)
        .collect();
    elements.sort_unstable();
    Ok(PureGapSet {
        bound: (2 * params.genus()).saturating_sub(1),
        elements,
    })
}

/// Oracle membership for every point of `[0, bound]^l`.
pub fn member_box(params: &CurveParams, tuple: &PlaceTuple, bound: u64) -> Result<Vec<PoleVector>> {
    let upper = vec![bound; tuple.len()];
    let grid = DimensionGrid::build(params, tuple, upper.clone())?;
    Ok(BoxPoints::new(upper)
        .filter(|p| grid.is_member(p))
        .map(PoleVector::new)
        .collect())
}
