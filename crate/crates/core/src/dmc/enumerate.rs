use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{lemma1_eval, lemma2_eval, AuxJoint, DmcSpec};
use crate::error::{Error, Result};
use crate::model::RatePoint;

pub const MAX_CANDIDATES: u128 = 100_000_000;
const DENOMINATORS: [u32; 3] = [4, 8, 16];
const CHUNK: usize = 4096;

/// Which region formula to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Region {
    /// State known at source and relay.
    InformedBoth,
    /// State known at the source only.
    InformedSource,
}

impl std::str::FromStr for Region {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "informed-both" => Ok(Self::InformedBoth),
            "informed-source" => Ok(Self::InformedSource),
            other => Err(Error::InvalidSpec(format!(
                "unknown region {other:?} (informed-both|informed-source)"
            ))),
        }
    }
}

/// Scalarization used to rank candidates. Each variant ranks by a primary
/// score and breaks exact ties by a secondary one.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum Objective {
    /// `r02`, ties by `r1`.
    #[default]
    R02,
    /// `r1`, ties by `r02`.
    R1,
    /// `r1 + r02`, ties by `r1`.
    SumRate,
    /// `w1 r1 + w02 r02`, ties by `r1`.
    Weighted { w1: f64, w02: f64 },
}

impl Objective {
    fn key(&self, p: &RatePoint) -> (f64, f64) {
        match *self {
            Self::R02 => (p.r02, p.r1),
            Self::R1 => (p.r1, p.r02),
            Self::SumRate => (p.r1 + p.r02, p.r1),
            Self::Weighted { w1, w02 } => (w1 * p.r1 + w02 * p.r02, p.r1),
        }
    }
}

/// Result of an exhaustive search.
#[derive(Debug, Clone, Serialize)]
pub struct DmcOptimum {
    pub best: AuxJoint,
    pub value: RatePoint,
    pub objective: Objective,
    pub candidates: u64,
}

fn binomial(n: u128, k: u128) -> u128 {
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul(n - i) / (i + 1);
    }
    acc
}

/// Number of candidate input laws on the grid with the given denominator.
pub fn candidate_count(spec: &DmcSpec, denominator: u32) -> u128 {
    let z = spec.sizes();
    let k = z.input_cells() as u128;
    let d = denominator as u128;
    let per_state = binomial(d + k - 1, k - 1);
    per_state.checked_pow(z.s as u32).unwrap_or(u128::MAX)
}

/// All compositions of `total` into `parts` nonnegative parts, lexicographically ascending.
fn compositions(parts: usize, total: u32) -> Vec<Vec<u32>> {
    fn rec(parts: usize, total: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if parts == 1 {
            prefix.push(total);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for first in 0..=total {
            prefix.push(first);
            rec(parts - 1, total - first, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(parts, total, &mut Vec::with_capacity(parts), &mut out);
    out
}

#[derive(Clone, Copy)]
struct Best {
    key: (f64, f64),
    index: u64,
    value: RatePoint,
}

// Exact comparisons keep the reduction associative, so the parallel split
// cannot change the answer.
fn better(a: Best, b: Best) -> Best {
    use std::cmp::Ordering::*;
    let ord = a
        .key
        .0
        .total_cmp(&b.key.0)
        .then(a.key.1.total_cmp(&b.key.1));
    match ord {
        Greater => a,
        Less => b,
        Equal => {
            if a.index <= b.index {
                a
            } else {
                b
            }
        }
    }
}

/// Exhaustive maximization of an arbitrary region evaluator.
pub fn dmc_maximize_by<F>(
    spec: &DmcSpec,
    denominator: u32,
    objective: Objective,
    eval: F,
) -> Result<DmcOptimum>
where
    F: Fn(&DmcSpec, &AuxJoint) -> Result<RatePoint> + Sync,
{
    if !DENOMINATORS.contains(&denominator) {
        return Err(Error::InvalidGrid(format!(
            "grid denominator {denominator} not in {{4, 8, 16}}"
        )));
    }
    let total = candidate_count(spec, denominator);
    if total > MAX_CANDIDATES {
        return Err(Error::TooLarge {
            candidates: total,
            cap: MAX_CANDIDATES,
        });
    }
    let z = spec.sizes();
    let cells = z.input_cells();
    let comps = compositions(cells, denominator);
    let radix = comps.len() as u64;
    let d = denominator as f64;

    let build = |index: u64| -> Result<AuxJoint> {
        let mut digits = vec![0usize; z.s];
        let mut rest = index;
        for s in (0..z.s).rev() {
            digits[s] = (rest % radix) as usize;
            rest /= radix;
        }
        let probs = digits
            .iter()
            .zip(spec.p_s())
            .flat_map(|(&digit, &ps)| comps[digit].iter().map(move |&c| ps * c as f64 / d))
            .collect();
        AuxJoint::new(spec, probs)
    };

    let total = total as u64;
    let chunks: Vec<(u64, u64)> = (0..total)
        .step_by(CHUNK)
        .map(|lo| (lo, (lo + CHUNK as u64).min(total)))
        .collect();
    let bests = chunks
        .par_iter()
        .map(|&(lo, hi)| -> Result<Best> {
            let mut best: Option<Best> = None;
            for index in lo..hi {
                let value = eval(spec, &build(index)?)?;
                let cand = Best {
                    key: objective.key(&value),
                    index,
                    value,
                };
                best = Some(match best {
                    None => cand,
                    Some(b) => better(b, cand),
                });
            }
            Ok(best.expect("chunks are nonempty"))
        })
        .collect::<Result<Vec<_>>>()?;
    let best = bests
        .into_iter()
        .reduce(better)
        .expect("at least one candidate");
    Ok(DmcOptimum {
        best: build(best.index)?,
        value: best.value,
        objective,
        candidates: total,
    })
}

/// Exhaustive maximization over input laws on the `1/denominator` grid.
pub fn dmc_maximize(
    spec: &DmcSpec,
    region: Region,
    denominator: u32,
    objective: Objective,
) -> Result<DmcOptimum> {
    match region {
        Region::InformedBoth => dmc_maximize_by(spec, denominator, objective, lemma1_eval),
        Region::InformedSource => dmc_maximize_by(spec, denominator, objective, lemma2_eval),
    }
}
