//! Ordered tuples of ramified places and the pole-order vectors aligned with them.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::curve::{CurveParams, DivisorSpec, PlaceId};
use crate::error::{Error, Result};

/// Distinct ramified places; `P_inf`, when present, is coordinate 0.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PlaceTuple {
    includes_infinity: bool,
    finite_indices: Vec<u32>,
}

/// What the closed forms depend on: the number of finite places and whether
/// `P_inf` is present.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TupleShape {
    pub finite_len: usize,
    pub includes_infinity: bool,
}

impl TupleShape {
    pub fn len(&self) -> usize {
        self.finite_len + usize::from(self.includes_infinity)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

impl fmt::Display for TupleShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.includes_infinity && self.finite_len == 0 {
            f.write_str("inf")
        } else if self.includes_infinity {
            write!(f, "inf+{}", self.finite_len)
        } else {
            write!(f, "{}", self.finite_len)
        }
    }
}

impl PlaceTuple {
    pub fn new(params: &CurveParams, includes_infinity: bool, finite_indices: Vec<u32>) -> Result<Self> {
        if !includes_infinity && finite_indices.is_empty() {
            return Err(Error::InvalidTuple("empty tuple".into()));
        }
        for (k, &i) in finite_indices.iter().enumerate() {
            PlaceId::Finite(i).check(params)?;
            if finite_indices[..k].contains(&i) {
                return Err(Error::InvalidTuple(format!("duplicate place {i}")));
            }
        }
        Ok(PlaceTuple {
            includes_infinity,
            finite_indices,
        })
    }

    /// `(P_1, ..., P_l)`, optionally preceded by `P_inf`.
    pub fn initial(params: &CurveParams, includes_infinity: bool, finite_len: usize) -> Result<Self> {
        Self::new(params, includes_infinity, (1..=finite_len as u32).collect())
    }

    /// Parses `inf,1,2,...`; `inf` may only appear first.
    pub fn parse(params: &CurveParams, spec: &str) -> Result<Self> {
        let mut includes_infinity = false;
        let mut finite = Vec::new();
        for (k, token) in spec.split(',').map(str::trim).enumerate() {
            if token.eq_ignore_ascii_case("inf") {
                if k != 0 {
                    return Err(Error::InvalidTuple("'inf' is only allowed first".into()));
                }
                includes_infinity = true;
            } else {
                let i: u32 = token
                    .parse()
                    .map_err(|_| Error::InvalidTuple(format!("bad place token {token:?}")))?;
                finite.push(i);
            }
        }
        Self::new(params, includes_infinity, finite)
    }

    pub fn includes_infinity(&self) -> bool {
        self.includes_infinity
    }

    pub fn finite_indices(&self) -> &[u32] {
        &self.finite_indices
    }

    pub fn shape(&self) -> TupleShape {
        TupleShape {
            finite_len: self.finite_indices.len(),
            includes_infinity: self.includes_infinity,
        }
    }

    pub fn len(&self) -> usize {
        self.shape().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn places(&self) -> Vec<PlaceId> {
        let inf = self.includes_infinity.then_some(PlaceId::Infinity);
        inf.into_iter()
            .chain(self.finite_indices.iter().map(|&i| PlaceId::Finite(i)))
            .collect()
    }

    pub fn place(&self, coord: usize) -> PlaceId {
        match (self.includes_infinity, coord) {
            (true, 0) => PlaceId::Infinity,
            (true, c) => PlaceId::Finite(self.finite_indices[c - 1]),
            (false, c) => PlaceId::Finite(self.finite_indices[c]),
        }
    }

    /// Sub-tuple on the coordinates in `coords` (ascending).
    pub fn sub_tuple(&self, coords: &[usize]) -> PlaceTuple {
        let mut includes_infinity = false;
        let mut finite = Vec::new();
        for &c in coords {
            match self.place(c) {
                PlaceId::Infinity => includes_infinity = true,
                PlaceId::Finite(i) => finite.push(i),
            }
        }
        PlaceTuple {
            includes_infinity,
            finite_indices: finite,
        }
    }

    pub fn check_vector(&self, v: &PoleVector) -> Result<()> {
        if v.len() != self.len() {
            return Err(Error::LengthMismatch {
                expected: self.len(),
                got: v.len(),
            });
        }
        Ok(())
    }

    /// `D = sum v_i Q_i`.
    pub fn divisor(&self, params: &CurveParams, v: &PoleVector) -> Result<DivisorSpec> {
        self.check_vector(v)?;
        let mut d = DivisorSpec::zero(params);
        for (c, &n) in v.coords().iter().enumerate() {
            *d.coeff_mut(self.place(c)) =
                i64::try_from(n).map_err(|_| Error::Overflow("PlaceTuple::divisor"))?;
        }
        Ok(d)
    }
}

impl fmt::Display for PlaceTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.places().iter().map(|p| p.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

/// A vector in `N_0^l`; ordered lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PoleVector(Vec<u64>);

impl PoleVector {
    pub fn new(coords: Vec<u64>) -> Self {
        PoleVector(coords)
    }

    pub fn zeros(len: usize) -> Self {
        PoleVector(vec![0; len])
    }

    pub fn coords(&self) -> &[u64] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<u64> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn max_coord(&self) -> u64 {
        self.0.iter().copied().max().unwrap_or(0)
    }

    pub fn is_strictly_positive(&self) -> bool {
        self.0.iter().all(|&c| c > 0)
    }

    /// The product order: `self <= other` in every coordinate.
    pub fn precedes(&self, other: &PoleVector) -> bool {
        self.0.len() == other.0.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// Parses `1,21` or `(1, 21)`.
    pub fn parse(s: &str) -> Result<Self> {
        let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
        inner
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<u64>()
                    .map_err(|_| Error::InvalidTuple(format!("bad vector coordinate {t:?}")))
            })
            .collect::<Result<Vec<_>>>()
            .map(PoleVector)
    }
}

impl From<Vec<u64>> for PoleVector {
    fn from(v: Vec<u64>) -> Self {
        PoleVector(v)
    }
}

impl std::ops::Index<usize> for PoleVector {
    type Output = u64;

    fn index(&self, i: usize) -> &u64 {
        &self.0[i]
    }
}

impl fmt::Display for PoleVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}
