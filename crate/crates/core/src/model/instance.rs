use serde::{Deserialize, Serialize};

use super::ModelError;

/// A 2-Partition instance: the multiset `A` of positive integers.
///
/// The target sum `t` may be half-integral, so only the exact total `2t` is
/// stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u64>", into = "Vec<u64>")]
pub struct PartitionInstance {
    values: Vec<u64>,
    sum: u64,
}

impl PartitionInstance {
    pub fn new(values: Vec<u64>) -> Result<Self, ModelError> {
        if values.is_empty() {
            return Err(ModelError::EmptyInstance);
        }
        if values.len() < 2 {
            return Err(ModelError::TooFewValues(values.len()));
        }
        if let Some(pos) = values.iter().position(|&v| v == 0) {
            return Err(ModelError::NonPositiveValue { index: pos });
        }
        let sum = values
            .iter()
            .try_fold(0u64, |acc, &v| acc.checked_add(v))
            .ok_or(ModelError::Overflow)?;
        Ok(Self { values, sum })
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `2t`, the total of all values.
    pub fn sum(&self) -> u64 {
        self.sum
    }

    pub fn twice_target(&self) -> u64 {
        self.sum
    }
}

impl TryFrom<Vec<u64>> for PartitionInstance {
    type Error = ModelError;

    fn try_from(values: Vec<u64>) -> Result<Self, Self::Error> {
        Self::new(values)
    }
}

impl From<PartitionInstance> for Vec<u64> {
    fn from(instance: PartitionInstance) -> Self {
        instance.values
    }
}
