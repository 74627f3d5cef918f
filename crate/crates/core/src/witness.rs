//! Explicit functions realizing generating-set elements as pole divisors.
//!
//! For `(m*k_1 + j, ..., m*k_l + j)` on `(Q_1, ..., Q_l)` the function is
//!
//! ```text
//! prod_{P_i not in tuple} (x - alpha_i)^(k_1 + 1)
//! -----------------------------------------------------------
//! z^(m*k_1 + j) * prod_{s >= 2} (x - alpha_{Q_s})^(k_s - k_1)
//! ```
//!
//! and the same expression with `k_0` absorbed covers tuples led by `P_inf`.

use crate::curve::{monomial_divisor, CurveParams, DivisorSpec, Monomial, PlaceId};
use crate::error::{Error, Result};
use crate::gamma::parametrize;
use crate::onepoint;
use crate::tuple::{PlaceTuple, PoleVector};

pub fn witness_function(params: &CurveParams, tuple: &PlaceTuple, v: &PoleVector) -> Result<Monomial> {
    tuple.check_vector(v)?;
    let not_gamma = || Error::NotAGammaElement(v.to_string());
    let shape = tuple.shape();
    let m = params.m() as u64;
    let mut mono = Monomial::one(params);
    match (shape.includes_infinity, shape.finite_len) {
        (true, 0) => {
            // n = a*m + b*r  ->  (x - alpha_1)^a * z^b
            let n = v[0];
            let r = params.r() as u64;
            let (a, b) = (0..m)
                .filter(|&b| b * r <= n && (n - b * r).is_multiple_of(m))
                .map(|b| ((n - b * r) / m, b))
                .next()
                .ok_or_else(not_gamma)?;
            mono.linear_exps[0] = a as i64;
            mono.z_exp = b as i64;
        }
        (false, 1) => {
            let place = tuple.place(0);
            let n = v[0];
            if onepoint::is_gap(params, place, n) {
                return Err(not_gamma());
            }
            let (k, j) = ((n / m) as i64, (n % m) as i64);
            let t = tuple.finite_indices()[0] as usize - 1;
            mono.z_exp = -j;
            for (i, e) in mono.linear_exps.iter_mut().enumerate() {
                *e = if i == t { -k } else { i64::from(j > 0) };
            }
        }
        _ => {
            if !v.is_strictly_positive() {
                return Err(not_gamma());
            }
            let pz = parametrize(params, shape, v).ok_or_else(not_gamma)?;
            let offset = usize::from(shape.includes_infinity);
            let ks: Vec<i64> = pz.ks[offset..].iter().map(|&k| k as i64).collect();
            let k1 = ks[0];
            mono.z_exp = -(m as i64 * k1 + pz.j as i64);
            for e in mono.linear_exps.iter_mut() {
                *e = k1 + 1;
            }
            for (s, &idx) in tuple.finite_indices().iter().enumerate() {
                mono.linear_exps[idx as usize - 1] = k1 - ks[s];
            }
        }
    }
    Ok(mono)
}

/// True iff `d` has pole part exactly `sum v_i Q_i`: coefficient `-v_i` on
/// each tuple place with `v_i > 0` and nonnegative everywhere else.
pub fn pole_part_matches(tuple: &PlaceTuple, v: &PoleVector, d: &DivisorSpec) -> bool {
    if tuple.check_vector(v).is_err() {
        return false;
    }
    let in_tuple = |place: PlaceId| tuple.places().iter().position(|&p| p == place);
    d.iter().all(|(place, c)| match in_tuple(place) {
        Some(coord) if v[coord] > 0 => c == -(v[coord] as i64),
        _ => c >= 0,
    })
}

/// Builds the witness and checks its divisor.
pub fn verify_witness(
    params: &CurveParams,
    tuple: &PlaceTuple,
    v: &PoleVector,
) -> Result<(Monomial, DivisorSpec)> {
    let mono = witness_function(params, tuple, v)?;
    let d = monomial_divisor(params, &mono)?;
    if !pole_part_matches(tuple, v, &d) {
        return Err(Error::NotAGammaElement(v.to_string()));
    }
    Ok((mono, d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gamma::{gamma_finite, gamma_with_infinity};

    fn p(r: i64, m: i64) -> CurveParams {
        CurveParams::new(r, m, 1, None).unwrap()
    }

    #[test]
    fn two_place_example() {
        let params = p(7, 5);
        let t = PlaceTuple::parse(&params, "1,2").unwrap();
        let v = PoleVector::new(vec![1, 21]);
        let mono = witness_function(&params, &t, &v).unwrap();
        assert_eq!(mono.z_exp, -1);
        assert_eq!(mono.linear_exps, vec![0, -4, 1, 1, 1, 1, 1]);
        let d = monomial_divisor(&params, &mono).unwrap();
        assert_eq!(d.coeff_finite, vec![-1, -21, 4, 4, 4, 4, 4]);
        // r*j - m*floor(r*j/m) = 7 - 5
        assert_eq!(d.coeff_infinity, 2);
        assert_eq!(d.degree(), 0);
    }

    #[test]
    fn six_places_example() {
        let params = p(7, 5);
        let t = PlaceTuple::initial(&params, false, 6).unwrap();
        let v = PoleVector::new(vec![1; 6]);
        let (_, d) = verify_witness(&params, &t, &v).unwrap();
        assert_eq!(&d.coeff_finite[..6], &[-1; 6]);
        assert!(d.coeff_finite[6] >= 0 && d.coeff_infinity >= 0);
    }

    #[test]
    fn infinity_example() {
        let params = p(5, 9);
        let t = PlaceTuple::parse(&params, "inf,1").unwrap();
        let (_, d) = verify_witness(&params, &t, &PoleVector::new(vec![31, 1])).unwrap();
        assert_eq!(d.coeff_infinity, -31);
        assert_eq!(d.coeff_finite[0], -1);
    }

    #[test]
    fn relabeled_tuples() {
        let params = p(7, 5);
        for spec in ["3,5", "7,1", "2,6,4", "inf,6,2"] {
            let t = PlaceTuple::parse(&params, spec).unwrap();
            let set = crate::gamma::gamma(&params, &t).unwrap();
            for v in &set.elements {
                verify_witness(&params, &t, v).unwrap_or_else(|e| panic!("{spec} {v}: {e}"));
            }
        }
    }

    #[test]
    fn rejects_non_elements() {
        let params = p(7, 5);
        let t = PlaceTuple::parse(&params, "1,2").unwrap();
        for v in [vec![1, 1], vec![5, 5], vec![0, 21], vec![21, 21]] {
            assert!(matches!(
                witness_function(&params, &t, &PoleVector::new(v)),
                Err(Error::NotAGammaElement(_))
            ));
        }
        assert!(witness_function(&params, &t, &PoleVector::new(vec![1])).is_err());
    }

    #[test]
    fn one_place_nongaps() {
        for (r, m) in [(7, 5), (5, 9), (3, 2), (4, 7)] {
            let params = p(r, m);
            let bound = 4 * params.genus();
            for spec in ["inf", "1", "3"] {
                let t = PlaceTuple::parse(&params, spec).unwrap();
                let gaps = onepoint::gaps_at(&params, t.place(0));
                for n in 0..=bound {
                    let v = PoleVector::new(vec![n]);
                    let res = verify_witness(&params, &t, &v);
                    assert_eq!(res.is_ok(), !gaps.contains(n), "{params} {spec} {n}");
                }
            }
        }
    }

    #[test]
    fn all_closed_form_elements_round_trip() {
        for (r, m) in [(7, 5), (5, 9), (3, 2), (6, 7), (8, 3)] {
            let params = p(r, m);
            for l in 2..=params.r() as usize {
                let t = PlaceTuple::initial(&params, false, l).unwrap();
                for v in gamma_finite(&params, l).unwrap().elements {
                    verify_witness(&params, &t, &v).unwrap();
                }
            }
            for l in 1..=params.r() as usize {
                let t = PlaceTuple::initial(&params, true, l).unwrap();
                for v in gamma_with_infinity(&params, l).unwrap().elements {
                    verify_witness(&params, &t, &v).unwrap();
                }
            }
        }
    }
}
