use proptest::prelude::*;

use kummer_core::arith::gcd;
use kummer_core::oracle::{gamma_oracle, gamma_oracle_in_fiber, member_oracle, pure_gaps_box, rr_dimension};
use kummer_core::{
    contains, gamma, gaps_at, verify_witness, CurveParams, DivisorSpec, PlaceId, PlaceTuple, PoleVector,
};

fn admissible() -> impl Strategy<Value = CurveParams> {
    (3i64..=7, 2i64..=7, 1i64..=4)
        .prop_filter("coprime", |&(r, m, l)| gcd(m, r * l) == 1)
        .prop_map(|(r, m, l)| CurveParams::new(r, m, l, None).unwrap())
}

/// A tuple of `len` distinct places drawn from a shuffled index list.
fn tuple_for(params: &CurveParams, with_inf: bool, len: usize, seed: &[u32]) -> Option<PlaceTuple> {
    let r = params.r();
    let finite_len = len - usize::from(with_inf);
    if finite_len > r as usize {
        return None;
    }
    let mut indices: Vec<u32> = (1..=r).collect();
    for (i, s) in seed.iter().enumerate().take(indices.len()) {
        let j = i + (*s as usize) % (indices.len() - i);
        indices.swap(i, j);
    }
    indices.truncate(finite_len);
    PlaceTuple::new(params, with_inf, indices).ok()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn gamma_agrees_with_oracle_on_relabeled_tuples(
        params in admissible(),
        with_inf in any::<bool>(),
        len in 2usize..=3,
        seed in prop::collection::vec(any::<u32>(), 8),
    ) {
        let Some(tuple) = tuple_for(&params, with_inf, len, &seed) else { return Ok(()) };
        let formula = gamma(&params, &tuple).unwrap();
        let oracle = gamma_oracle(&params, &tuple).unwrap();
        prop_assert_eq!(&formula.elements, &oracle.elements);
        let other_fiber = gamma_oracle_in_fiber(&params, &tuple, 1).unwrap();
        prop_assert_eq!(&formula.elements, &other_fiber.elements);
        for v in &formula.elements {
            prop_assert!(verify_witness(&params, &tuple, v).is_ok());
        }
    }

    #[test]
    fn closure_membership_agrees_with_oracle(
        params in admissible(),
        with_inf in any::<bool>(),
        len in 1usize..=3,
        seed in prop::collection::vec(any::<u32>(), 8),
        coords in prop::collection::vec(0u64..40, 3),
    ) {
        let Some(tuple) = tuple_for(&params, with_inf, len, &seed) else { return Ok(()) };
        let v = PoleVector::new(coords[..tuple.len()].to_vec());
        prop_assert_eq!(
            contains(&params, &tuple, &v).unwrap(),
            member_oracle(&params, &tuple, &v).unwrap()
        );
    }

    #[test]
    fn dimension_steps_are_zero_or_one(
        params in admissible(),
        finite in prop::collection::vec(-20i64..=20, 7),
        infinity in -40i64..=40,
    ) {
        let d = DivisorSpec {
            coeff_infinity: infinity,
            coeff_finite: finite[..params.r() as usize].to_vec(),
        };
        let top = rr_dimension(&params, &d).unwrap();
        let g = params.genus() as i128;
        if d.degree() < 0 {
            prop_assert_eq!(top, 0);
        }
        if d.degree() >= 2 * g - 1 {
            prop_assert_eq!(top as i128, d.degree() + 1 - g);
        }
        for (place, _) in d.iter().collect::<Vec<_>>() {
            let mut below = d.clone();
            *below.coeff_mut(place) -= 1;
            let lower = rr_dimension(&params, &below).unwrap();
            prop_assert!(lower <= top && top - lower <= 1);
        }
    }
}

#[test]
fn gap_counts_equal_genus() {
    for r in 3..=7 {
        for m in 2..=9 {
            for lambda in [1, 2] {
                let Ok(params) = CurveParams::new(r, m, lambda, None) else {
                    continue;
                };
                for place in [PlaceId::Infinity, PlaceId::Finite(1), PlaceId::Finite(r as u32)] {
                    let gaps = kummer_core::oracle::gaps_oracle(&params, place).unwrap();
                    assert_eq!(gaps.len() as u64, params.genus(), "{params} {place}");
                    assert_eq!(gaps.gaps, gaps_at(&params, place).gaps);
                }
            }
        }
    }
}

#[test]
fn pure_gaps_are_symmetric_gaps() {
    for (r, m, lambda) in [(7, 5, 1), (5, 4, 1), (4, 5, 2), (5, 3, 2)] {
        let params = CurveParams::new(r, m, lambda, None).unwrap();
        for spec in ["1,2", "inf,1", "1,2,3"] {
            let tuple = PlaceTuple::parse(&params, spec).unwrap();
            let pure = pure_gaps_box(&params, &tuple).unwrap();
            assert_eq!(pure.bound, 2 * params.genus() - 1);
            for v in &pure.elements {
                assert!(!member_oracle(&params, &tuple, v).unwrap(), "{params} {spec} {v}");
                assert!(v.max_coord() <= pure.bound);
            }
            if !tuple.includes_infinity() {
                for v in &pure.elements {
                    let mut swapped = v.coords().to_vec();
                    swapped.swap(0, 1);
                    assert!(
                        pure.elements.contains(&PoleVector::new(swapped)),
                        "{params} {spec} {v}"
                    );
                }
            }
        }
    }
}
