//! Closed forms against the oracle over a grid of parameters.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::gcd;
use crate::curve::{CurveParams, PlaceId};
use crate::error::Result;
use crate::gamma::{self, GammaSet};
use crate::onepoint;
use crate::oracle;
use crate::tuple::{PlaceTuple, TupleShape};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepConfig {
    pub max_r: u32,
    pub max_m: u32,
    pub lambdas: Vec<u32>,
    /// Largest tuple length (counting `P_inf`) compared against the oracle.
    pub max_len: usize,
    /// Worker threads; `0` uses the rayon default.
    pub jobs: usize,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            max_r: 8,
            max_m: 8,
            lambdas: vec![1],
            max_len: 3,
            jobs: 0,
        }
    }
}

/// One comparison: a parameter triple and a tuple shape.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepRow {
    pub r: u32,
    pub m: u32,
    pub lambda: u32,
    pub shape: String,
    pub l: usize,
    pub expected: usize,
    pub got: usize,
    pub ok: bool,
    pub detail: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepReport {
    pub cases: usize,
    pub rows: Vec<SweepRow>,
}

impl SweepReport {
    pub fn mismatches(&self) -> impl Iterator<Item = &SweepRow> {
        self.rows.iter().filter(|row| !row.ok)
    }

    pub fn all_ok(&self) -> bool {
        self.rows.iter().all(|row| row.ok)
    }
}

/// Admissible triples with `3 <= r <= max_r` and `2 <= m <= max_m`.
pub fn cases(config: &SweepConfig) -> Vec<CurveParams> {
    let mut out = Vec::new();
    for r in 3..=config.max_r {
        for m in 2..=config.max_m {
            for &lambda in &config.lambdas {
                if gcd(m as i64, r as i64 * lambda as i64) == 1 {
                    if let Ok(params) = CurveParams::new(r as i64, m as i64, lambda as i64, None) {
                        out.push(params);
                    }
                }
            }
        }
    }
    out
}

/// Tuples of length `2..=max_len` starting at `P_1` or `P_inf`.
pub fn tuples(params: &CurveParams, max_len: usize) -> Vec<PlaceTuple> {
    let r = params.r() as usize;
    let mut out = Vec::new();
    for len in 2..=max_len {
        if len <= r {
            out.extend(PlaceTuple::initial(params, false, len).ok());
        }
        if len - 1 <= r {
            out.extend(PlaceTuple::initial(params, true, len - 1).ok());
        }
    }
    out
}

pub type GammaProvider = dyn Fn(&CurveParams, &PlaceTuple) -> Result<GammaSet> + Sync;

pub fn run(config: &SweepConfig) -> Result<SweepReport> {
    run_with(config, &gamma::gamma)
}

/// As [`run`] with the closed-form side supplied by `provider`.
pub fn run_with(config: &SweepConfig, provider: &GammaProvider) -> Result<SweepReport> {
    let cases = cases(config);
    let work = || -> Result<Vec<Vec<SweepRow>>> {
        cases
            .par_iter()
            .map(|params| check_case(params, config.max_len, provider))
            .collect()
    };
    let per_case = if config.jobs == 0 {
        work()?
    } else {
        rayon::ThreadPoolBuilder::new()
            .num_threads(config.jobs)
            .build()
            .map_err(|_| crate::Error::EmptyInput("thread pool"))?
            .install(work)?
    };
    Ok(SweepReport {
        cases: cases.len(),
        rows: per_case.into_iter().flatten().collect(),
    })
}

fn row(
    params: &CurveParams,
    shape: &str,
    l: usize,
    expected: usize,
    got: usize,
    detail: Option<String>,
) -> SweepRow {
    SweepRow {
        r: params.r(),
        m: params.m(),
        lambda: params.lambda(),
        shape: shape.to_string(),
        l,
        expected,
        got,
        ok: detail.is_none(),
        detail,
    }
}

fn check_case(params: &CurveParams, max_len: usize, provider: &GammaProvider) -> Result<Vec<SweepRow>> {
    let mut rows = Vec::new();
    for place in [PlaceId::Finite(1), PlaceId::Infinity] {
        let want = oracle::gaps_oracle(params, place)?;
        let got = onepoint::gaps_at(params, place);
        let detail = (want.gaps != got.gaps)
            .then(|| format!("gaps differ: oracle {:?}, closed form {:?}", want.gaps, got.gaps));
        let shape = TupleShape {
            finite_len: usize::from(place != PlaceId::Infinity),
            includes_infinity: place == PlaceId::Infinity,
        };
        rows.push(row(params, &shape.to_string(), 1, want.len(), got.len(), detail));
    }
    for tuple in tuples(params, max_len) {
        let want = oracle::gamma_oracle(params, &tuple)?;
        let got = provider(params, &tuple)?;
        let detail = (want.elements != got.elements).then(|| {
            let missing = want.elements.iter().find(|v| !got.elements.contains(v));
            let extra = got.elements.iter().find(|v| !want.elements.contains(v));
            match (missing, extra) {
                (Some(v), _) => format!("missing {v}"),
                (None, Some(v)) => format!("unexpected {v}"),
                (None, None) => "order differs".to_string(),
            }
        });
        rows.push(row(
            params,
            &tuple.shape().to_string(),
            tuple.shape().finite_len,
            want.len(),
            got.len(),
            detail,
        ));
    }
    Ok(rows)
}
