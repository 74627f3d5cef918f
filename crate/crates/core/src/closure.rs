//! The multi-point semigroup `H(Q_1, ..., Q_l)` rebuilt from `Gamma~`.
//!
//! A vector `v` is in `H` iff it is the least upper bound of `l` elements of
//! `Gamma~`, which happens iff every coordinate `i` has a witness
//! `u in Gamma~` with `u <= v` and `u_i = v_i`: the lub of those witnesses is
//! below `v` and attains every coordinate. Checking the per-coordinate
//! criterion costs `l * |Gamma~|` instead of `|Gamma~|^l`.

use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::curve::CurveParams;
use crate::error::{Error, Result};
use crate::gamma::gamma_tilde;
use crate::lattice::BoxPoints;
use crate::onepoint::{self, GapList};
use crate::tuple::{PlaceTuple, PoleVector, TupleShape};

/// Coordinatewise maximum.
pub fn lub(vectors: &[PoleVector]) -> Result<PoleVector> {
    let first = vectors.first().ok_or(Error::EmptyInput("lub"))?;
    let mut out = first.coords().to_vec();
    for v in &vectors[1..] {
        if v.len() != out.len() {
            return Err(Error::LengthMismatch {
                expected: out.len(),
                got: v.len(),
            });
        }
        for (o, &c) in out.iter_mut().zip(v.coords()) {
            *o = (*o).max(c);
        }
    }
    Ok(PoleVector::new(out))
}

/// Membership tester for vectors with every coordinate `<= bound`.
#[derive(Debug, Clone)]
pub struct Membership {
    len: usize,
    bound: u64,
    inner: Tester,
}

#[derive(Debug, Clone)]
enum Tester {
    OnePlace(GapList),
    Lub {
        generators: Vec<PoleVector>,
        /// `by_coord[i][n]`: generators whose coordinate `i` equals `n`.
        by_coord: Vec<HashMap<u64, Vec<usize>>>,
    },
}

impl Membership {
    pub fn new(params: &CurveParams, tuple: &PlaceTuple, bound: u64) -> Result<Self> {
        let len = tuple.len();
        let inner = if len == 1 {
            Tester::OnePlace(onepoint::gaps_at(params, tuple.place(0)))
        } else {
            let generators = gamma_tilde(params, tuple, bound)?.elements;
            let mut by_coord = vec![HashMap::<u64, Vec<usize>>::new(); len];
            for (idx, u) in generators.iter().enumerate() {
                for (i, &c) in u.coords().iter().enumerate() {
                    by_coord[i].entry(c).or_default().push(idx);
                }
            }
            Tester::Lub { generators, by_coord }
        };
        Ok(Membership { len, bound, inner })
    }

    pub fn bound(&self) -> u64 {
        self.bound
    }

    pub fn contains(&self, v: &PoleVector) -> Result<bool> {
        if v.len() != self.len {
            return Err(Error::LengthMismatch {
                expected: self.len,
                got: v.len(),
            });
        }
        if v.max_coord() > self.bound {
            return Err(Error::InvalidTuple(format!(
                "vector {v} exceeds the membership bound {}",
                self.bound
            )));
        }
        Ok(self.contains_coords(v.coords()))
    }

    pub(crate) fn contains_coords(&self, v: &[u64]) -> bool {
        match &self.inner {
            Tester::OnePlace(gaps) => !gaps.contains(v[0]),
            Tester::Lub { generators, by_coord } => v.iter().enumerate().all(|(i, &vi)| {
                by_coord[i].get(&vi).is_some_and(|cands| {
                    cands
                        .iter()
                        .any(|&idx| generators[idx].coords().iter().zip(v).all(|(a, b)| a <= b))
                })
            }),
        }
    }
}

pub fn contains(params: &CurveParams, tuple: &PlaceTuple, v: &PoleVector) -> Result<bool> {
    tuple.check_vector(v)?;
    Membership::new(params, tuple, v.max_coord())?.contains(v)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SemigroupBox {
    pub shape: TupleShape,
    pub bound: u64,
    /// `H ∩ [0, bound]^l`, sorted.
    pub members: Vec<PoleVector>,
}

impl SemigroupBox {
    pub fn contains(&self, v: &PoleVector) -> bool {
        self.members.binary_search(v).is_ok()
    }

    pub fn is_lub_closed(&self) -> bool {
        self.members.iter().all(|a| {
            self.members
                .iter()
                .all(|b| self.contains(&lub(&[a.clone(), b.clone()]).expect("same length")))
        })
    }

    /// Closure under `+` for sums that stay in the box.
    pub fn is_sum_closed(&self) -> bool {
        self.members.iter().all(|a| {
            self.members.iter().all(|b| {
                let sum: Vec<u64> = a.coords().iter().zip(b.coords()).map(|(x, y)| x + y).collect();
                sum.iter().any(|&c| c > self.bound) || self.contains(&PoleVector::new(sum))
            })
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BoxStrategy {
    /// Test every lattice point with the per-coordinate criterion.
    LatticeScan,
    /// Close `Gamma~ ∩ box` under lub.
    #[default]
    LubClosure,
}

pub fn semigroup_box(params: &CurveParams, tuple: &PlaceTuple, bound: u64) -> Result<SemigroupBox> {
    semigroup_box_with(params, tuple, bound, BoxStrategy::default())
}

pub fn semigroup_box_with(
    params: &CurveParams,
    tuple: &PlaceTuple,
    bound: u64,
    strategy: BoxStrategy,
) -> Result<SemigroupBox> {
    let l = tuple.len();
    let mut members = if l == 1 {
        onepoint::gaps_at(params, tuple.place(0))
            .nongaps_up_to(bound)
            .into_iter()
            .map(|n| PoleVector::new(vec![n]))
            .collect()
    } else {
        match strategy {
            BoxStrategy::LatticeScan => {
                let mem = Membership::new(params, tuple, bound)?;
                BoxPoints::new(vec![bound; l])
                    .filter(|p| mem.contains_coords(p))
                    .map(PoleVector::new)
                    .collect()
            }
            BoxStrategy::LubClosure => lub_closure(&gamma_tilde(params, tuple, bound)?.elements),
        }
    };
    members.sort_unstable();
    Ok(SemigroupBox {
        shape: tuple.shape(),
        bound,
        members,
    })
}

fn lub_closure(generators: &[PoleVector]) -> Vec<PoleVector> {
    let mut seen: HashSet<Vec<u64>> = generators.iter().map(|g| g.coords().to_vec()).collect();
    let mut frontier: Vec<Vec<u64>> = seen.iter().cloned().collect();
    while !frontier.is_empty() {
        let mut fresh = Vec::new();
        for s in &frontier {
            for g in generators {
                let joined: Vec<u64> = s.iter().zip(g.coords()).map(|(&a, &b)| a.max(b)).collect();
                if seen.insert(joined.clone()) {
                    fresh.push(joined);
                }
            }
        }
        frontier = fresh;
    }
    seen.into_iter().map(PoleVector::new).collect()
}

/// Whether no `u in H` with `u <= v`, `u != v`, `u_i = v_i` exists.
pub fn is_minimal_in_fiber(
    params: &CurveParams,
    tuple: &PlaceTuple,
    v: &PoleVector,
    i: usize,
) -> Result<bool> {
    tuple.check_vector(v)?;
    if i >= v.len() {
        return Err(Error::CoordinateOutOfRange {
            index: i,
            len: v.len(),
        });
    }
    let mem = Membership::new(params, tuple, v.max_coord())?;
    if !mem.contains_coords(v.coords()) {
        return Err(Error::NotAMember(v.to_string()));
    }
    let mut upper = v.coords().to_vec();
    upper[i] = 0;
    let dominated = BoxPoints::new(upper).any(|mut u| {
        u[i] = v[i];
        u.as_slice() != v.coords() && mem.contains_coords(&u)
    });
    Ok(!dominated)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gamma::gamma;

    fn p(r: i64, m: i64) -> CurveParams {
        CurveParams::new(r, m, 1, None).unwrap()
    }

    fn pv(c: &[u64]) -> PoleVector {
        PoleVector::new(c.to_vec())
    }

    #[test]
    fn lub_examples() {
        assert_eq!(lub(&[pv(&[1, 21]), pv(&[21, 1])]).unwrap(), pv(&[21, 21]));
        assert_eq!(lub(&[pv(&[3, 4])]).unwrap(), pv(&[3, 4]));
        assert_eq!(lub(&[pv(&[4, 1, 19]), pv(&[2, 5, 5])]).unwrap(), pv(&[4, 5, 19]));
        assert!(matches!(
            lub(&[pv(&[1]), pv(&[1, 2])]),
            Err(Error::LengthMismatch { .. })
        ));
        assert!(matches!(lub(&[]), Err(Error::EmptyInput(_))));
    }

    #[test]
    fn contains_examples() {
        let params = p(7, 5);
        let t = PlaceTuple::parse(&params, "1,2").unwrap();
        assert!(contains(&params, &t, &pv(&[1, 21])).unwrap());
        assert!(contains(&params, &t, &pv(&[21, 21])).unwrap());
        assert!(!contains(&params, &t, &pv(&[1, 1])).unwrap());
        assert!(contains(&params, &t, &pv(&[0, 0])).unwrap());
        assert!(contains(&params, &t, &pv(&[5, 0])).unwrap());
        assert!(!contains(&params, &t, &pv(&[4, 0])).unwrap());
    }

    #[test]
    fn box_examples() {
        let params = p(7, 5);
        let t = PlaceTuple::parse(&params, "1").unwrap();
        let b = semigroup_box(&params, &t, 30).unwrap();
        let gaps = onepoint::gaps_at_finite(&params);
        let want: Vec<_> = gaps.nongaps_up_to(30).into_iter().map(|n| pv(&[n])).collect();
        assert_eq!(b.members, want);

        let t = PlaceTuple::parse(&params, "2,4,6").unwrap();
        let b = semigroup_box(&params, &t, 0).unwrap();
        assert_eq!(b.members, vec![pv(&[0, 0, 0])]);
    }

    #[test]
    fn smallest_curve_box() {
        // g = 1, G(P_i) = {1} and (1, 1) is the only element of Gamma, so
        // only the axis points with a 1 are missing
        let params = p(3, 2);
        let t = PlaceTuple::parse(&params, "1,2").unwrap();
        let b = semigroup_box(&params, &t, 3).unwrap();
        let missing: Vec<_> = BoxPoints::new(vec![3, 3])
            .map(PoleVector::new)
            .filter(|v| !b.contains(v))
            .collect();
        assert_eq!(missing, vec![pv(&[0, 1]), pv(&[1, 0])]);
    }

    #[test]
    fn strategies_agree() {
        for (r, m) in [(3, 2), (4, 3), (5, 3), (7, 5), (4, 5)] {
            let params = p(r, m);
            for spec in ["1,2", "inf,1", "inf,1,2", "1,2,3"] {
                let t = PlaceTuple::parse(&params, spec).unwrap();
                let bound = 2 * params.genus() + 5;
                let a = semigroup_box_with(&params, &t, bound, BoxStrategy::LatticeScan).unwrap();
                let b = semigroup_box_with(&params, &t, bound, BoxStrategy::LubClosure).unwrap();
                assert_eq!(a, b, "{params} {spec}");
            }
        }
    }

    #[test]
    fn box_is_closed() {
        let params = p(4, 3);
        let t = PlaceTuple::parse(&params, "inf,1").unwrap();
        let b = semigroup_box(&params, &t, 12).unwrap();
        assert!(b.is_lub_closed());
        assert!(b.is_sum_closed());
    }

    #[test]
    fn fiber_minimality_examples() {
        let params = p(7, 5);
        let t = PlaceTuple::parse(&params, "1,2").unwrap();
        assert!(is_minimal_in_fiber(&params, &t, &pv(&[1, 21]), 0).unwrap());
        assert!(is_minimal_in_fiber(&params, &t, &pv(&[1, 21]), 1).unwrap());
        assert!(!is_minimal_in_fiber(&params, &t, &pv(&[21, 21]), 0).unwrap());
        assert!(matches!(
            is_minimal_in_fiber(&params, &t, &pv(&[1, 1]), 0),
            Err(Error::NotAMember(_))
        ));
        assert!(matches!(
            is_minimal_in_fiber(&params, &t, &pv(&[1, 21]), 2),
            Err(Error::CoordinateOutOfRange { .. })
        ));
    }

    #[test]
    fn gamma_recovered_from_box() {
        for (r, m) in [(4, 3), (5, 3), (5, 2), (7, 5)] {
            let params = p(r, m);
            for spec in ["1,2", "inf,1", "1,2,3", "inf,1,2"] {
                let t = PlaceTuple::parse(&params, spec).unwrap();
                let bound = 2 * params.genus() + 5;
                let b = semigroup_box(&params, &t, bound).unwrap();
                let gap_lists: Vec<_> = t
                    .places()
                    .iter()
                    .map(|&q| onepoint::gaps_at(&params, q))
                    .collect();
                let recovered: Vec<_> = b
                    .members
                    .iter()
                    .filter(|v| v.coords().iter().zip(&gap_lists).all(|(&c, g)| g.contains(c)))
                    .filter(|v| is_minimal_in_fiber(&params, &t, v, 0).unwrap())
                    .cloned()
                    .collect();
                assert_eq!(recovered, gamma(&params, &t).unwrap().elements, "{params} {spec}");
            }
        }
    }
}
