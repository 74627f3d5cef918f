//! One-place Weierstrass semigroups `H(P_i)` and `H(P_inf) = <m, r>`.

use serde::{Deserialize, Serialize};

use crate::arith::floor_div;
use crate::curve::{CurveParams, PlaceId};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GapList {
    pub place: PlaceId,
    /// Strictly increasing, length `g`.
    pub gaps: Vec<u64>,
}

impl GapList {
    pub fn contains(&self, n: u64) -> bool {
        self.gaps.binary_search(&n).is_ok()
    }

    pub fn len(&self) -> usize {
        self.gaps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gaps.is_empty()
    }

    pub fn max(&self) -> Option<u64> {
        self.gaps.last().copied()
    }

    /// Nongaps in `[0, bound]`, ascending.
    pub fn nongaps_up_to(&self, bound: u64) -> Vec<u64> {
        (0..=bound).filter(|&n| !self.contains(n)).collect()
    }
}

/// `{ m*k + j : 1 <= j <= m-1-floor(m/r), 0 <= k <= r-2-floor(r*j/m) }`.
///
/// Every finite ramified place has the same gap set; the result is tagged
/// with `P_1`.
pub fn gaps_at_finite(params: &CurveParams) -> GapList {
    let (r, m) = (params.ri(), params.mi());
    let mut gaps = Vec::with_capacity(params.genus() as usize);
    for j in 1..=(m - 1 - floor_div(m, r)) {
        let k_max = r - 2 - floor_div(r * j, m);
        for k in 0..=k_max {
            gaps.push((m * k + j) as u64);
        }
    }
    gaps.sort_unstable();
    GapList {
        place: PlaceId::Finite(1),
        gaps,
    }
}

/// Gaps of the numerical semigroup `<m, r>`, found by sieving `[0, m*r]`.
pub fn gaps_at_infinity(params: &CurveParams) -> GapList {
    let (r, m) = (params.r() as usize, params.m() as usize);
    let bound = m * r;
    let mut reachable = vec![false; bound + 1];
    reachable[0] = true;
    for n in 1..=bound {
        reachable[n] = (n >= m && reachable[n - m]) || (n >= r && reachable[n - r]);
    }
    let gaps = (1..=bound).filter(|&n| !reachable[n]).map(|n| n as u64).collect();
    GapList {
        place: PlaceId::Infinity,
        gaps,
    }
}

pub fn gaps_at(params: &CurveParams, place: PlaceId) -> GapList {
    match place {
        PlaceId::Infinity => gaps_at_infinity(params),
        PlaceId::Finite(_) => GapList {
            place,
            ..gaps_at_finite(params)
        },
    }
}

pub fn is_gap(params: &CurveParams, place: PlaceId, n: u64) -> bool {
    n != 0 && gaps_at(params, place).contains(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::gcd;

    fn p(r: i64, m: i64) -> CurveParams {
        CurveParams::new(r, m, 1, None).unwrap()
    }

    #[test]
    fn finite_gaps_example_one() {
        // by hand from the double loop: j = 1..=4 with k <= 4, 3, 1, 0;
        // also the first coordinates of the 12 pairs of Gamma(P_1, P_2)
        let g = gaps_at_finite(&p(7, 5));
        assert_eq!(g.gaps, vec![1, 2, 3, 4, 6, 7, 8, 11, 12, 16, 17, 21]);
    }

    #[test]
    fn smallest_curve() {
        assert_eq!(gaps_at_finite(&p(3, 2)).gaps, vec![1]);
        assert_eq!(gaps_at_infinity(&p(3, 2)).gaps, vec![1]);
    }

    #[test]
    fn infinity_gaps_example_two() {
        let g = gaps_at_infinity(&p(5, 9));
        assert_eq!(g.len(), 16);
        assert_eq!(g.max(), Some(31));
        assert_eq!(
            g.gaps,
            vec![1, 2, 3, 4, 6, 7, 8, 11, 12, 13, 16, 17, 21, 22, 26, 31]
        );
        let g = gaps_at_infinity(&p(7, 5));
        assert_eq!(g.len(), 12);
        assert_eq!(g.max(), Some(23));
    }

    #[test]
    fn is_gap_examples() {
        assert!(is_gap(&p(5, 9), PlaceId::Infinity, 31));
        assert!(!is_gap(&p(5, 9), PlaceId::Infinity, 0));
        assert!(!is_gap(&p(7, 5), PlaceId::Finite(3), 0));
        // j = 1 allows k <= 4 only, so 26 = 5*5 + 1 is a nongap
        assert!(!is_gap(&p(7, 5), PlaceId::Finite(1), 26));
        assert!(is_gap(&p(7, 5), PlaceId::Finite(1), 21));
    }

    fn admissible(max_r: i64, max_m: i64) -> impl Iterator<Item = CurveParams> {
        (3..=max_r).flat_map(move |r| (2..=max_m).filter(move |&m| gcd(m, r) == 1).map(move |m| p(r, m)))
    }

    #[test]
    fn counts_match_genus() {
        for params in admissible(12, 12) {
            let g = params.genus() as usize;
            let fin = gaps_at_finite(&params);
            let inf = gaps_at_infinity(&params);
            assert_eq!(fin.len(), g, "{params}");
            assert_eq!(inf.len(), g, "{params}");
            let (r, m) = (params.r() as u64, params.m() as u64);
            assert_eq!(inf.max(), Some(m * r - m - r), "{params}");
            assert!(fin.gaps.iter().all(|&n| n >= 1 && n < 2 * g as u64));
            assert!(fin.gaps.windows(2).all(|w| w[0] < w[1]));
        }
    }

    #[test]
    fn complements_are_semigroups() {
        for params in admissible(12, 12) {
            let bound = 4 * params.genus();
            for list in [gaps_at_finite(&params), gaps_at_infinity(&params)] {
                let h = list.nongaps_up_to(bound);
                assert_eq!(h[0], 0);
                for &a in &h {
                    for &b in &h {
                        if a + b <= bound {
                            assert!(!list.contains(a + b), "{params}: {a}+{b}");
                        }
                    }
                }
            }
        }
    }
}
