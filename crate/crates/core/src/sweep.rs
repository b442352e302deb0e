//! Whole-range verification of the main identity, optionally with the
//! whole-rank AMR comparison.

use serde::Serialize;

use crate::par::{self, Execution};
use crate::relations::{HowePair, Sign};
use crate::uniform::{special_pairs, verify_amr_consistency, verify_theorem, UniformEntry};

/// Largest rank a sweep may request unless overridden.
pub const DEFAULT_MAX_RANK: u32 = 5;

/// Environment variable that overrides [`DEFAULT_MAX_RANK`].
pub const MAX_RANK_VAR: &str = "HOWE_MAX_RANK";

/// The configured envelope: `HOWE_MAX_RANK` if it parses, else the default.
pub fn max_rank_envelope() -> u32 {
    std::env::var(MAX_RANK_VAR)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_MAX_RANK)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepParams {
    pub nmax: u32,
    pub npmax: u32,
    pub signs: Vec<Sign>,
    pub amr: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct Verdict {
    #[serde(rename = "Z")]
    pub z: String,
    #[serde(rename = "Zp")]
    pub zp: String,
    pub sign: Sign,
    pub equal: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct Failure {
    #[serde(rename = "Z")]
    pub z: String,
    #[serde(rename = "Zp")]
    pub zp: String,
    pub sign: Sign,
    /// Left side minus right side.
    pub diff: Vec<UniformEntry>,
}

#[derive(Debug, Clone, Serialize)]
pub struct AmrVerdict {
    pub n: u32,
    pub n_prime: u32,
    pub sign: Sign,
    pub equal: bool,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub diff: Vec<UniformEntry>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepReport {
    pub parameters: SweepParams,
    pub pairs_checked: usize,
    pub verdicts: Vec<Verdict>,
    pub failures: Vec<Failure>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub amr: Vec<AmrVerdict>,
}

impl SweepReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.amr.iter().all(|a| a.equal)
    }
}

/// Every special pair with `rank(Z) ≤ nmax` and `rank(Z′) ≤ npmax`.
pub fn all_pairs(nmax: u32, npmax: u32) -> Vec<HowePair> {
    (0..=nmax)
        .flat_map(|n| (0..=npmax).flat_map(move |np| special_pairs(n, np)))
        .collect()
}

pub fn run(params: &SweepParams, exec: Execution) -> SweepReport {
    let pairs = all_pairs(params.nmax, params.npmax);
    let tasks: Vec<(&HowePair, Sign)> = pairs
        .iter()
        .flat_map(|p| params.signs.iter().map(move |&s| (p, s)))
        .collect();
    let checked = par::map(exec, &tasks, |&(p, s)| (p, s, verify_theorem(p, s)));

    let mut verdicts = Vec::with_capacity(checked.len());
    let mut failures = Vec::new();
    for (p, sign, check) in checked {
        let (z, zp) = (p.z().to_string(), p.zp().to_string());
        if !check.equal {
            failures.push(Failure { z: z.clone(), zp: zp.clone(), sign, diff: check.diff.to_entries() });
        }
        verdicts.push(Verdict { z, zp, sign, equal: check.equal });
    }
    verdicts.sort_by(|a, b| (&a.z, &a.zp, a.sign).cmp(&(&b.z, &b.zp, b.sign)));
    failures.sort_by(|a, b| (&a.z, &a.zp, a.sign).cmp(&(&b.z, &b.zp, b.sign)));

    let mut amr = Vec::new();
    if params.amr {
        let ranks: Vec<(u32, u32, Sign)> = (0..=params.nmax)
            .flat_map(|n| (0..=params.npmax).flat_map(move |np| params.signs.iter().map(move |&s| (n, np, s))))
            .collect();
        amr = par::map(exec, &ranks, |&(n, n_prime, sign)| {
            let check = verify_amr_consistency(n, n_prime, sign);
            AmrVerdict { n, n_prime, sign, equal: check.equal, diff: check.diff.to_entries() }
        });
    }

    SweepReport { parameters: params.clone(), pairs_checked: pairs.len(), verdicts, failures, amr }
}
