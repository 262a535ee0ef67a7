//! Ground truth for the equal-cardinality 2-Partition variant: split the
//! values into two halves of equal size and equal sum.
//!
//! Two independent methods are provided and must agree; both return the
//! lexicographically least qualifying index subset.

use serde::{Deserialize, Serialize};

use crate::model::PartitionInstance;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionAnswer {
    pub exists: bool,
    /// Indices (ascending) of one half; present iff `exists`.
    pub witness: Option<Vec<usize>>,
}

impl PartitionAnswer {
    fn none() -> Self {
        Self {
            exists: false,
            witness: None,
        }
    }

    fn found(witness: Vec<usize>) -> Self {
        Self {
            exists: true,
            witness: Some(witness),
        }
    }
}

/// Default method: the (count, sum) table.
pub fn balanced_partition(instance: &PartitionInstance) -> PartitionAnswer {
    balanced_partition_table(instance)
}

fn trivially_impossible(instance: &PartitionInstance) -> bool {
    instance.len() % 2 == 1 || instance.sum() % 2 == 1
}

/// Exhaustive enumeration of size-n/2 index subsets in lexicographic order.
pub fn balanced_partition_enumerate(instance: &PartitionInstance) -> PartitionAnswer {
    if trivially_impossible(instance) {
        return PartitionAnswer::none();
    }
    let values = instance.values();
    let n = values.len();
    let k = n / 2;
    let target = instance.sum() / 2;
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        if idx.iter().map(|&i| values[i]).sum::<u64>() == target {
            return PartitionAnswer::found(idx);
        }
        // Next k-combination in lexicographic order.
        let Some(pos) = (0..k).rev().find(|&p| idx[p] < n - k + p) else {
            return PartitionAnswer::none();
        };
        idx[pos] += 1;
        for p in pos + 1..k {
            idx[p] = idx[p - 1] + 1;
        }
    }
}

/// Suffix-reachability table over (items used, sum), then greedy
/// lexicographic reconstruction.
pub fn balanced_partition_table(instance: &PartitionInstance) -> PartitionAnswer {
    if trivially_impossible(instance) {
        return PartitionAnswer::none();
    }
    let values = instance.values();
    let n = values.len();
    let k = n / 2;
    let target = (instance.sum() / 2) as usize;
    // reach[i][c][s]: some c-subset of values[i..] sums to s.
    let mut reach = vec![vec![vec![false; target + 1]; k + 1]; n + 1];
    reach[n][0][0] = true;
    for i in (0..n).rev() {
        let a = values[i] as usize;
        for c in 0..=k {
            for s in 0..=target {
                let skip = reach[i + 1][c][s];
                let take = c > 0 && s >= a && reach[i + 1][c - 1][s - a];
                reach[i][c][s] = skip || take;
            }
        }
    }
    if !reach[0][k][target] {
        return PartitionAnswer::none();
    }
    let (mut c, mut s) = (k, target);
    let mut witness = Vec::with_capacity(k);
    for (i, &a) in values.iter().enumerate() {
        let a = a as usize;
        if c > 0 && s >= a && reach[i + 1][c - 1][s - a] {
            witness.push(i);
            c -= 1;
            s -= a;
        }
    }
    PartitionAnswer::found(witness)
}

/// Whether `subset` is a valid balanced half of `instance`.
pub fn is_balanced_half(instance: &PartitionInstance, subset: &[usize]) -> bool {
    let values = instance.values();
    let mut sorted = subset.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    sorted.len() == subset.len()
        && subset.iter().all(|&i| i < values.len())
        && 2 * subset.len() == values.len()
        && 2 * subset.iter().map(|&i| values[i]).sum::<u64>() == instance.sum()
}
