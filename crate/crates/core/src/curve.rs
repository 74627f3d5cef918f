//! Parameters of the Kummer extension `y^m = f(x)^lambda` with `deg f = r`,
//! and divisor bookkeeping for monomials in `z` and the linear factors
//! `x - alpha_i`.
//!
//! The roots `alpha_i` never appear as numbers: only their count matters.
//! Valuations at the `r + 1` totally ramified places are
//!
//! | function      | `P_i` (`i` in the product) | other `P_k` | `P_inf`  |
//! |---------------|----------------------------|-------------|----------|
//! | `x - alpha_i` | `m`                        | `0`         | `-m`     |
//! | `y`           | `lambda`                   | `lambda`    | `-r*lambda` |
//! | `f(x)`        | `m`                        | `m`         | `-r*m`   |
//! | `z`           | `1`                        | `1`         | `-r`     |
//!
//! where `z = y^A f^B` with `A*lambda + B*m = 1`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::{ext_gcd, gcd, is_prime};
use crate::error::{Error, RejectReason, RejectedParams, Result};

/// Upper bound on each of `r`, `m`, `lambda`; keeps every product used in
/// this crate inside `i64`.
pub const MAX_PARAM: i64 = 1 << 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CurveParams {
    r: u32,
    m: u32,
    lambda: u32,
    characteristic: Option<u64>,
}

impl CurveParams {
    /// Shorthand for [`validate_params`].
    pub fn new(r: i64, m: i64, lambda: i64, characteristic: Option<i64>) -> Result<Self> {
        Ok(validate_params(r, m, lambda, characteristic)?)
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn lambda(&self) -> u32 {
        self.lambda
    }

    /// Recorded only; no computation depends on it.
    pub fn characteristic(&self) -> Option<u64> {
        self.characteristic
    }

    pub fn genus(&self) -> u64 {
        genus(self)
    }

    pub(crate) fn ri(&self) -> i64 {
        self.r as i64
    }

    pub(crate) fn mi(&self) -> i64 {
        self.m as i64
    }

    pub(crate) fn li(&self) -> i64 {
        self.lambda as i64
    }
}

impl fmt::Display for CurveParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(r={}, m={}, lambda={})", self.r, self.m, self.lambda)
    }
}

/// Checks every invariant and reports all violations at once.
pub fn validate_params(
    r: i64,
    m: i64,
    lambda: i64,
    characteristic: Option<i64>,
) -> Result<CurveParams, RejectedParams> {
    let mut reasons = Vec::new();
    if r <= 2 {
        reasons.push(RejectReason::RTooSmall { r });
    }
    if m < 2 {
        reasons.push(RejectReason::MTooSmall { m });
    }
    if lambda < 1 {
        reasons.push(RejectReason::LambdaTooSmall { lambda });
    }
    let in_range = [r, m, lambda].iter().all(|&v| v <= MAX_PARAM);
    if !in_range {
        reasons.push(RejectReason::OutOfRange);
    }
    if in_range && r > 0 && m > 0 && lambda > 0 {
        let g = gcd(m, r * lambda);
        if g != 1 {
            reasons.push(RejectReason::NotCoprime { gcd: g });
        }
    }
    if let Some(p) = characteristic {
        if !is_prime(p) {
            reasons.push(RejectReason::CharacteristicNotPrime { p });
        } else if m > 0 && m % p == 0 {
            reasons.push(RejectReason::CharacteristicDividesM { p });
        }
    }
    if !reasons.is_empty() {
        return Err(RejectedParams { reasons });
    }
    Ok(CurveParams {
        r: r as u32,
        m: m as u32,
        lambda: lambda as u32,
        characteristic: characteristic.map(|p| p as u64),
    })
}

/// `(r - 1)(m - 1) / 2`. Exact: `gcd(m, r) = 1` makes one factor even.
pub fn genus(params: &CurveParams) -> u64 {
    let r = params.r as u64;
    let m = params.m as u64;
    (r - 1) * (m - 1) / 2
}

/// `A` and `B` with `A*lambda + B*m = 1` and `0 <= A < m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ZExponents {
    pub a_exp: i64,
    pub b_exp: i64,
}

pub fn z_exponents(params: &CurveParams) -> ZExponents {
    let (lambda, m) = (params.li(), params.mi());
    let (g, x, _) = ext_gcd(lambda, m);
    debug_assert_eq!(g, 1);
    let a_exp = x.rem_euclid(m);
    // a_exp * lambda == 1 (mod m), so the quotient is exact
    let b_exp = (1 - a_exp * lambda) / m;
    ZExponents { a_exp, b_exp }
}

/// One of the `r + 1` totally ramified places.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum PlaceId {
    Infinity,
    /// 1-based root index.
    Finite(u32),
}

impl PlaceId {
    pub fn check(self, params: &CurveParams) -> Result<Self> {
        match self {
            PlaceId::Finite(i) if i == 0 || i > params.r => Err(Error::InvalidTuple(format!(
                "place index {i} outside 1..={}",
                params.r
            ))),
            _ => Ok(self),
        }
    }
}

impl fmt::Display for PlaceId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PlaceId::Infinity => f.write_str("inf"),
            PlaceId::Finite(i) => write!(f, "{i}"),
        }
    }
}

/// A divisor supported on `{P_inf, P_1, ..., P_r}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DivisorSpec {
    pub coeff_infinity: i64,
    /// `coeff_finite[i - 1]` is the coefficient of `P_i`.
    pub coeff_finite: Vec<i64>,
}

impl DivisorSpec {
    pub fn zero(params: &CurveParams) -> Self {
        DivisorSpec {
            coeff_infinity: 0,
            coeff_finite: vec![0; params.r as usize],
        }
    }

    pub fn degree(&self) -> i128 {
        self.coeff_infinity as i128 + self.coeff_finite.iter().map(|&c| c as i128).sum::<i128>()
    }

    pub fn coeff(&self, place: PlaceId) -> i64 {
        match place {
            PlaceId::Infinity => self.coeff_infinity,
            PlaceId::Finite(i) => self.coeff_finite[i as usize - 1],
        }
    }

    pub fn coeff_mut(&mut self, place: PlaceId) -> &mut i64 {
        match place {
            PlaceId::Infinity => &mut self.coeff_infinity,
            PlaceId::Finite(i) => &mut self.coeff_finite[i as usize - 1],
        }
    }

    /// All places with their coefficient, `P_inf` first.
    pub fn iter(&self) -> impl Iterator<Item = (PlaceId, i64)> + '_ {
        std::iter::once((PlaceId::Infinity, self.coeff_infinity)).chain(
            self.coeff_finite
                .iter()
                .enumerate()
                .map(|(i, &c)| (PlaceId::Finite(i as u32 + 1), c)),
        )
    }
}

impl fmt::Display for DivisorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (place, c) in self.iter().filter(|&(_, c)| c != 0) {
            let name = match place {
                PlaceId::Infinity => "P_inf".to_string(),
                PlaceId::Finite(i) => format!("P_{i}"),
            };
            if first {
                if c < 0 {
                    f.write_str("-")?;
                }
                first = false;
            } else {
                f.write_str(if c < 0 { " - " } else { " + " })?;
            }
            let a = c.unsigned_abs();
            if a == 1 {
                f.write_str(&name)?;
            } else {
                write!(f, "{a}*{name}")?;
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// `z^z_exp * prod_i (x - alpha_i)^linear_exps[i - 1]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Monomial {
    pub z_exp: i64,
    pub linear_exps: Vec<i64>,
}

impl Monomial {
    pub fn one(params: &CurveParams) -> Self {
        Monomial {
            z_exp: 0,
            linear_exps: vec![0; params.r as usize],
        }
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut factors = Vec::new();
        if self.z_exp != 0 {
            factors.push(format!("z^{}", self.z_exp));
        }
        for (i, &e) in self.linear_exps.iter().enumerate() {
            if e != 0 {
                factors.push(format!("(x-a{})^{}", i + 1, e));
            }
        }
        if factors.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&factors.join(" * "))
        }
    }
}

/// Principal divisor of a monomial.
pub fn monomial_divisor(params: &CurveParams, mono: &Monomial) -> Result<DivisorSpec> {
    let r = params.r as usize;
    if mono.linear_exps.len() != r {
        return Err(Error::LengthMismatch {
            expected: r,
            got: mono.linear_exps.len(),
        });
    }
    let overflow = || Error::Overflow("monomial_divisor");
    let m = params.mi();
    let coeff_finite = mono
        .linear_exps
        .iter()
        .map(|&e| m.checked_mul(e).and_then(|v| v.checked_add(mono.z_exp)))
        .collect::<Option<Vec<i64>>>()
        .ok_or_else(overflow)?;
    let linear_sum = mono
        .linear_exps
        .iter()
        .try_fold(0i64, |acc, &e| acc.checked_add(e))
        .ok_or_else(overflow)?;
    let coeff_infinity = params
        .ri()
        .checked_mul(mono.z_exp)
        .and_then(|a| m.checked_mul(linear_sum).and_then(|b| a.checked_add(b)))
        .and_then(i64::checked_neg)
        .ok_or_else(overflow)?;
    Ok(DivisorSpec {
        coeff_infinity,
        coeff_finite,
    })
}
