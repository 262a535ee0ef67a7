use std::time::Duration;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::compiler::{compile, Theorem};
use crate::model::{Action, PartitionInstance};
use crate::oracle::balanced_partition;
use crate::solver::{solve, MateMode, SolverConfig};

use super::{replay, HarnessError};

/// Campaigns larger than this are refused.
pub const MAX_VERIFY_INSTANCES: u64 = 100_000;

fn binomial(n: u64, k: u64) -> u64 {
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

/// Number of multisets with even size 2..=max_n over 1..=max_value.
pub fn campaign_size(max_n: usize, max_value: u64) -> u64 {
    if max_value == 0 {
        return 0;
    }
    (2..=max_n as u64)
        .step_by(2)
        .map(|n| binomial(max_value + n - 1, n))
        .fold(0u64, u64::saturating_add)
}

/// Every multiset with even size 2..=max_n over 1..=max_value, as
/// non-decreasing value lists, smallest size first then lexicographic.
pub fn campaign_instances(
    max_n: usize,
    max_value: u64,
) -> Result<Vec<PartitionInstance>, HarnessError> {
    let count = campaign_size(max_n, max_value);
    if count > MAX_VERIFY_INSTANCES {
        return Err(HarnessError::TooManyInstances {
            count,
            limit: MAX_VERIFY_INSTANCES,
        });
    }
    let mut out = Vec::with_capacity(count as usize);
    for n in (2..=max_n).step_by(2) {
        let mut values = vec![1u64; n];
        loop {
            out.push(PartitionInstance::new(values.clone()).expect("positive values"));
            // Next non-decreasing sequence.
            let Some(pos) = (0..n).rev().find(|&i| values[i] < max_value) else {
                break;
            };
            let v = values[pos] + 1;
            for x in &mut values[pos..] {
                *x = v;
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifyRow {
    pub values: Vec<u64>,
    pub oracle: bool,
    pub solver: bool,
    /// Whether the solver's witness replays to the prover's win (`None`
    /// when there is no witness).
    pub witness_replays: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<Action>>,
    pub nodes: u64,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl VerifyRow {
    pub fn agrees(&self) -> bool {
        self.oracle == self.solver && self.witness_replays != Some(false)
    }
}

pub fn theorem_for(mode: MateMode) -> Theorem {
    match mode {
        MateMode::RunnerMate1 => Theorem::RunnerMate1,
        MateMode::CorpMate2 => Theorem::CorpMate2,
    }
}

/// Compiles, solves and checks one instance against the oracle.
pub fn check_instance(
    instance: &PartitionInstance,
    mode: MateMode,
    config: &SolverConfig,
) -> Result<VerifyRow, HarnessError> {
    let (state, _) = compile(theorem_for(mode), instance)?;
    let result = solve(&state, mode, config)?;
    let witness_replays = match &result.witness {
        Some(w) => {
            let report = replay::replay(&state, w)?;
            Some(report.outcome().map(|o| o.winner()) == Some(mode.prover()))
        }
        None => None,
    };
    Ok(VerifyRow {
        values: instance.values().to_vec(),
        oracle: balanced_partition(instance).exists,
        solver: result.winnable,
        witness_replays,
        witness: result.witness,
        nodes: result.nodes_explored,
        elapsed: result.elapsed,
    })
}

/// Runs the whole campaign in parallel; rows come back in instance order.
pub fn verify(
    max_n: usize,
    max_value: u64,
    mode: MateMode,
    config: &SolverConfig,
) -> Result<Vec<VerifyRow>, HarnessError> {
    let instances = campaign_instances(max_n, max_value)?;
    instances
        .par_iter()
        .map(|inst| check_instance(inst, mode, config))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn campaign_counts() {
        assert_eq!(campaign_size(4, 4), 45);
        assert_eq!(campaign_size(2, 3), 6);
        assert_eq!(campaign_size(4, 3), 21);
        assert_eq!(campaign_instances(4, 4).unwrap().len(), 45);
        assert!(campaign_instances(20, 50).is_err());
    }
}
