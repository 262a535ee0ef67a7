use netmate::model::PartitionInstance;
use netmate::oracle::*;
use proptest::prelude::*;

fn inst(v: &[u64]) -> PartitionInstance {
    PartitionInstance::new(v.to_vec()).unwrap()
}

#[test]
fn examples() {
    let a = balanced_partition(&inst(&[1, 1]));
    assert!(a.exists);
    assert_eq!(a.witness, Some(vec![0]));
    assert!(!balanced_partition(&inst(&[1, 3])).exists);
    let a = balanced_partition(&inst(&[1, 2, 3, 4]));
    assert_eq!(a.witness, Some(vec![0, 3]));
    assert!(!balanced_partition(&inst(&[1, 1, 1, 3])).exists);
}

#[test]
fn odd_length_or_sum_is_false() {
    assert!(!balanced_partition(&inst(&[2, 2, 2])).exists);
    assert!(!balanced_partition_enumerate(&inst(&[2, 2, 2])).exists);
    assert!(!balanced_partition(&inst(&[1, 2])).exists);
}

#[test]
fn empty_instance_is_rejected() {
    assert!(PartitionInstance::new(vec![]).is_err());
    assert!(PartitionInstance::new(vec![0, 1]).is_err());
}

proptest! {
    #[test]
    fn methods_agree(values in prop::collection::vec(1u64..=20, 2..=12)) {
        let a = inst(&values);
        let table = balanced_partition_table(&a);
        let brute = balanced_partition_enumerate(&a);
        prop_assert_eq!(&table, &brute);
        if let Some(w) = &table.witness {
            prop_assert!(is_balanced_half(&a, w));
        }
    }

    #[test]
    fn invariant_under_permutation_and_scaling(
        values in prop::collection::vec(1u64..=20, 2..=10),
        seed in any::<u64>(),
        k in 1u64..=5,
    ) {
        use rand::{seq::SliceRandom, SeedableRng};
        let base = balanced_partition(&inst(&values)).exists;
        let mut shuffled = values.clone();
        shuffled.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
        prop_assert_eq!(balanced_partition(&inst(&shuffled)).exists, base);
        let scaled: Vec<u64> = values.iter().map(|v| v * k).collect();
        prop_assert_eq!(balanced_partition(&inst(&scaled)).exists, base);
    }
}
