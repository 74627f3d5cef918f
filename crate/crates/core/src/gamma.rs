//! Closed-form minimal generating sets `Gamma` for every tuple shape.
//!
//! For `l` finite places the elements are `(m*k_1 + j, ..., m*k_l + j)` with
//! `1 <= j <= m-1-floor(m/r)`, `k_i >= 0` and `sum k_i = r-l-floor(r*j/m)`;
//! the set is empty once `l > r - floor(r/m)`.
//!
//! With `P_inf` in front the elements are `(m*k_0 - r*j, m*k_1 + j, ...)`
//! with `k_0 >= ceil(r*j/m)` and `k_0 + ... + k_l = r - l`; empty once
//! `l > r - ceil(r/m)`.
//!
//! Both families only depend on how many finite places there are, never on
//! which ones: the defining equation treats all roots alike.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::arith::{ceil_div, floor_div};
use crate::compositions::WeakCompositions;
use crate::curve::{CurveParams, PlaceId};
use crate::error::{Error, Result};
use crate::onepoint;
use crate::tuple::{PlaceTuple, PoleVector, TupleShape};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GammaSet {
    pub params: CurveParams,
    pub shape: TupleShape,
    /// Sorted lexicographically, no duplicates.
    pub elements: Vec<PoleVector>,
    /// Set for one-place tuples, whose `Gamma` is the infinite `H(Q)`.
    pub truncated_at: Option<u64>,
}

impl GammaSet {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, v: &PoleVector) -> bool {
        self.elements.binary_search(v).is_ok()
    }

    fn finish(params: &CurveParams, shape: TupleShape, mut elements: Vec<PoleVector>) -> Self {
        elements.sort_unstable();
        elements.dedup();
        GammaSet {
            params: *params,
            shape,
            elements,
            truncated_at: None,
        }
    }
}

/// Largest `j` in the parametric families.
pub(crate) fn j_max(params: &CurveParams) -> i64 {
    params.mi() - 1 - floor_div(params.mi(), params.ri())
}

/// Largest `l` with a nonempty `Gamma(P_1, ..., P_l)`.
pub fn finite_threshold(params: &CurveParams) -> usize {
    (params.ri() - floor_div(params.ri(), params.mi())) as usize
}

/// Largest `l` with a nonempty `Gamma(P_inf, P_1, ..., P_l)`.
pub fn infinity_threshold(params: &CurveParams) -> usize {
    (params.ri() - ceil_div(params.ri(), params.mi())) as usize
}

/// Truncation used for one-place `Gamma` when no bound is given.
pub fn default_truncation(params: &CurveParams) -> u64 {
    2 * params.genus() + u64::from(params.m().max(params.r()))
}

pub fn gamma_finite(params: &CurveParams, l: usize) -> Result<GammaSet> {
    let r = params.r() as usize;
    if l < 2 || l > r {
        return Err(Error::InvalidTupleLength {
            len: l,
            expected: format!("2..={r} finite places"),
        });
    }
    let shape = TupleShape {
        finite_len: l,
        includes_infinity: false,
    };
    if l > finite_threshold(params) {
        return Ok(GammaSet::finish(params, shape, Vec::new()));
    }
    let (r, m) = (params.ri(), params.mi());
    let mut elements = Vec::new();
    for j in 1..=j_max(params) {
        let budget = r - l as i64 - floor_div(r * j, m);
        if budget < 0 {
            continue;
        }
        for ks in WeakCompositions::new(budget as u32, l) {
            elements.push(PoleVector::new(
                ks.iter().map(|&k| (m * k as i64 + j) as u64).collect(),
            ));
        }
    }
    Ok(GammaSet::finish(params, shape, elements))
}

pub fn gamma_with_infinity(params: &CurveParams, l: usize) -> Result<GammaSet> {
    let r = params.r() as usize;
    if l < 1 || l > r {
        return Err(Error::InvalidTupleLength {
            len: l,
            expected: format!("1..={r} finite places after P_inf"),
        });
    }
    let shape = TupleShape {
        finite_len: l,
        includes_infinity: true,
    };
    if l > infinity_threshold(params) {
        return Ok(GammaSet::finish(params, shape, Vec::new()));
    }
    let (r, m) = (params.ri(), params.mi());
    let mut elements = Vec::new();
    for j in 1..=j_max(params) {
        // k_0 = k_0' + ceil(rj/m) turns the lower bound into a plain composition
        let offset = ceil_div(r * j, m);
        let budget = r - l as i64 - offset;
        if budget < 0 {
            continue;
        }
        for ks in WeakCompositions::new(budget as u32, l + 1) {
            let k0 = ks[0] as i64 + offset;
            let coords = std::iter::once((m * k0 - r * j) as u64)
                .chain(ks[1..].iter().map(|&k| (m * k as i64 + j) as u64))
                .collect();
            elements.push(PoleVector::new(coords));
        }
    }
    Ok(GammaSet::finish(params, shape, elements))
}

/// `Gamma(P_inf, P_1)` straight from its two-parameter description:
/// `(m*k_0 - r*j, m*k_1 + j)` with `k_0 + k_1 = r - 1`, `k_0 >= ceil(r*j/m)`.
pub fn gamma_infinity_pair_direct(params: &CurveParams) -> GammaSet {
    let (r, m) = (params.ri(), params.mi());
    let mut elements = Vec::new();
    for j in 1..=j_max(params) {
        for k0 in ceil_div(r * j, m)..=(r - 1) {
            let k1 = r - 1 - k0;
            elements.push(PoleVector::new(vec![
                (m * k0 - r * j) as u64,
                (m * k1 + j) as u64,
            ]));
        }
    }
    GammaSet::finish(
        params,
        TupleShape {
            finite_len: 1,
            includes_infinity: true,
        },
        elements,
    )
}

/// `H(Q) ∩ [0, bound]` for a single place.
pub fn gamma_single(params: &CurveParams, place: PlaceId, bound: u64) -> GammaSet {
    let gaps = onepoint::gaps_at(params, place);
    let elements = gaps
        .nongaps_up_to(bound)
        .into_iter()
        .map(|n| PoleVector::new(vec![n]))
        .collect();
    let shape = TupleShape {
        finite_len: usize::from(place != PlaceId::Infinity),
        includes_infinity: place == PlaceId::Infinity,
    };
    GammaSet {
        truncated_at: Some(bound),
        ..GammaSet::finish(params, shape, elements)
    }
}

/// Dispatches on the tuple's shape only.
pub fn gamma(params: &CurveParams, tuple: &PlaceTuple) -> Result<GammaSet> {
    gamma_by_shape(params, tuple.shape())
}

pub fn gamma_by_shape(params: &CurveParams, shape: TupleShape) -> Result<GammaSet> {
    match (shape.includes_infinity, shape.finite_len) {
        (false, 0) => Err(Error::InvalidTupleLength {
            len: 0,
            expected: "at least one place".into(),
        }),
        (true, 0) => Ok(gamma_single(
            params,
            PlaceId::Infinity,
            default_truncation(params),
        )),
        (false, 1) => Ok(gamma_single(
            params,
            PlaceId::Finite(1),
            default_truncation(params),
        )),
        (false, l) => gamma_finite(params, l),
        (true, l) => gamma_with_infinity(params, l),
    }
}

/// The embedded generators `Gamma~` restricted to `[0, bound]^l`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GammaTilde {
    pub bound: u64,
    /// Sorted; always contains the zero vector.
    pub elements: Vec<PoleVector>,
}

/// Union over every nonempty coordinate subset `S` of `Gamma(tuple|S)`,
/// padded with zeros off `S`. One-place pieces are `H(Q) ∩ [0, bound]`.
pub fn gamma_tilde(params: &CurveParams, tuple: &PlaceTuple, bound: u64) -> Result<GammaTilde> {
    let l = tuple.len();
    if l == 0 {
        return Err(Error::InvalidTupleLength {
            len: 0,
            expected: "at least one place".into(),
        });
    }
    if l >= usize::BITS as usize - 1 {
        return Err(Error::InvalidTupleLength {
            len: l,
            expected: "fewer than 63 places".into(),
        });
    }
    let mut by_shape: BTreeMap<TupleShape, Vec<PoleVector>> = BTreeMap::new();
    let mut elements = vec![PoleVector::zeros(l)];
    for mask in 1usize..(1 << l) {
        let coords: Vec<usize> = (0..l).filter(|&c| mask & (1 << c) != 0).collect();
        let shape = tuple.sub_tuple(&coords).shape();
        if let Entry::Vacant(slot) = by_shape.entry(shape) {
            let set = if shape.len() == 1 {
                let place = if shape.includes_infinity {
                    PlaceId::Infinity
                } else {
                    PlaceId::Finite(1)
                };
                gamma_single(params, place, bound)
            } else {
                gamma_by_shape(params, shape)?
            };
            slot.insert(
                set.elements
                    .into_iter()
                    .filter(|v| v.max_coord() <= bound && v.is_strictly_positive())
                    .collect(),
            );
        }
        let pieces = &by_shape[&shape];
        for piece in pieces {
            let mut full = vec![0u64; l];
            for (&c, &x) in coords.iter().zip(piece.coords()) {
                full[c] = x;
            }
            elements.push(PoleVector::new(full));
        }
    }
    elements.sort_unstable();
    elements.dedup();
    Ok(GammaTilde { bound, elements })
}

/// The `(j, k)` parameters of a closed-form element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Parametrization {
    pub j: u64,
    /// `k_0` first when the tuple contains `P_inf`.
    pub ks: Vec<u64>,
}

/// Recovers `(j, k)` for an element of the closed-form family of `shape`,
/// or `None` when `v` is not such an element.
pub fn parametrize(params: &CurveParams, shape: TupleShape, v: &PoleVector) -> Option<Parametrization> {
    if v.len() != shape.len() || shape.finite_len == 0 {
        return None;
    }
    let (r, m) = (params.ri() as i128, params.mi() as i128);
    let l = shape.finite_len as i128;
    let offset = usize::from(shape.includes_infinity);
    let finite: Vec<i128> = v.coords()[offset..].iter().map(|&c| c as i128).collect();
    let j = finite[0].rem_euclid(m);
    if j < 1 || j > j_max(params) as i128 || finite.iter().any(|&c| c.rem_euclid(m) != j) {
        return None;
    }
    let mut ks: Vec<i128> = finite.iter().map(|&c| (c - j) / m).collect();
    let sum: i128;
    if shape.includes_infinity {
        let num = v[0] as i128 + r * j;
        if num % m != 0 {
            return None;
        }
        let k0 = num / m;
        // ceil(rj/m) for positive operands
        if k0 < (r * j + m - 1) / m {
            return None;
        }
        ks.insert(0, k0);
        sum = ks.iter().sum();
        if sum != r - l {
            return None;
        }
    } else {
        sum = ks.iter().sum();
        if shape.finite_len < 2 || sum != r - l - (r * j) / m {
            return None;
        }
    }
    Some(Parametrization {
        j: j as u64,
        ks: ks.into_iter().map(|k| k as u64).collect(),
    })
}
