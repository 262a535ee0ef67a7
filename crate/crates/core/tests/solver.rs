use std::collections::HashSet;

use netmate::compiler::{compile_corp_mate2, compile_runner_mate1};
use netmate::engine::{self, apply_plan};
use netmate::harness::replay;
use netmate::model::*;
use netmate::oracle::balanced_partition;
use netmate::solver::*;

fn inst(v: &[u64]) -> PartitionInstance {
    PartitionInstance::new(v.to_vec()).unwrap()
}

fn config(memo: bool, ordering: MoveOrdering) -> SolverConfig {
    SolverConfig {
        memo,
        ordering,
        ..SolverConfig::default()
    }
}

#[test]
fn runner_mate1_examples() {
    let (s, _) = compile_runner_mate1(&inst(&[1, 1])).unwrap();
    let r = solve_runner_mate1(&s).unwrap();
    assert!(r.winnable);
    let witness = r.witness.unwrap();
    assert_eq!(
        witness[0],
        Action::PlayCard {
            card: CardId::Escher,
            target: None
        }
    );
    let report = replay(&s, &witness).unwrap();
    assert_eq!(report.outcome(), Some(Outcome::RunnerWin));

    let (s, _) = compile_runner_mate1(&inst(&[1, 3])).unwrap();
    let r = solve_runner_mate1(&s).unwrap();
    assert!(!r.winnable);
    assert!(r.witness.is_none());
    assert!(r.refutation_note.is_some());
}

#[test]
fn corp_mate2_examples() {
    let (s, _) = compile_corp_mate2(&inst(&[1, 1])).unwrap();
    let r = solve_corp_mate2(&s).unwrap();
    assert!(r.winnable);
    let report = replay(&s, &r.witness.unwrap()).unwrap();
    assert_eq!(report.outcome().map(Outcome::winner), Some(Side::Corp));

    let (s, _) = compile_corp_mate2(&inst(&[1, 3])).unwrap();
    assert!(!solve_corp_mate2(&s).unwrap().winnable);
}

#[test]
fn already_won_positions() {
    let (mut s, _) = compile_runner_mate1(&inst(&[2, 2])).unwrap();
    s.phase = Phase::Terminal(Outcome::RunnerWin);
    let r = solve_runner_mate1(&s).unwrap();
    assert!(r.winnable);
    assert_eq!(r.witness, Some(vec![]));

    let (mut s, _) = compile_corp_mate2(&inst(&[2, 2])).unwrap();
    s.phase = Phase::Terminal(Outcome::CorpWin);
    let r = solve_corp_mate2(&s).unwrap();
    assert!(r.winnable);
    assert_eq!(r.witness, Some(vec![]));
}

#[test]
fn wrong_side_is_rejected() {
    let (s, _) = compile_corp_mate2(&inst(&[2, 2])).unwrap();
    assert!(matches!(
        solve_runner_mate1(&s),
        Err(SolveError::WrongTurn { .. })
    ));
    let (s, _) = compile_runner_mate1(&inst(&[2, 2])).unwrap();
    assert!(matches!(
        solve_corp_mate2(&s),
        Err(SolveError::WrongTurn { .. })
    ));
    let (s, _) = compile_corp_mate2(&inst(&[2, 2])).unwrap();
    let mid_turn = engine::turn_start(&s).unwrap().next_state;
    assert!(matches!(
        solve_corp_mate2(&mid_turn),
        Err(SolveError::NotTurnStart)
    ));
}

#[test]
fn decision_is_independent_of_ordering_and_memo() {
    let cases: &[(&[u64], bool)] = &[
        (&[1, 1], true),
        (&[1, 3], false),
        (&[2, 2], true),
        (&[1, 2], false),
    ];
    let orderings = [
        MoveOrdering::Heuristic,
        MoveOrdering::Reversed,
        MoveOrdering::Engine,
    ];
    for &(values, _) in cases {
        let a = inst(values);
        let expected = balanced_partition(&a).exists;
        let (s1, _) = compile_runner_mate1(&a).unwrap();
        let (s2, _) = compile_corp_mate2(&a).unwrap();
        for ordering in orderings {
            for memo in [true, false] {
                let cfg = config(memo, ordering);
                let r1 = solve(&s1, MateMode::RunnerMate1, &cfg).unwrap();
                assert_eq!(
                    r1.winnable, expected,
                    "{values:?} thm1 {ordering:?} memo={memo}"
                );
                let r2 = solve(&s2, MateMode::CorpMate2, &cfg).unwrap();
                assert_eq!(
                    r2.winnable, expected,
                    "{values:?} thm2 {ordering:?} memo={memo}"
                );
            }
        }
    }
}

/// A compiled Theorem-1 position with only `keep` Enigmas left on each deep
/// stack, small enough to search without the turn-horizon reduction.
fn trimmed(values: &[u64], keep: usize) -> GameState {
    let (mut s, _) = compile_runner_mate1(&inst(values)).unwrap();
    for id in [ServerId::Rnd, ServerId::Remote(1)] {
        s.server_mut(id).unwrap().ice.truncate(1 + keep);
    }
    s
}

#[test]
fn reductions_do_not_change_the_answer() {
    let full = SolverConfig {
        reductions: false,
        ..SolverConfig::default()
    };
    for values in [&[1u64, 1][..], &[1, 3], &[2, 2]] {
        for keep in [1, 2] {
            let s = trimmed(values, keep);
            let reduced = solve_runner_mate1(&s).unwrap();
            let plain = solve(&s, MateMode::RunnerMate1, &full).unwrap();
            assert_eq!(plain.winnable, reduced.winnable, "{values:?} keep {keep}");
        }
    }
}

#[test]
fn repeated_solves_are_identical() {
    let (s, _) = compile_corp_mate2(&inst(&[1, 2, 3, 2])).unwrap();
    let a = solve_corp_mate2(&s).unwrap();
    let b = solve_corp_mate2(&s).unwrap();
    assert_eq!(a.winnable, b.winnable);
    assert_eq!(a.witness, b.witness);
    assert_eq!(a.nodes_explored, b.nodes_explored);
}

fn in_rearrangement(mut s: GameState) -> GameState {
    if s.phase == Phase::TurnStart {
        s = engine::turn_start(&s).unwrap().next_state;
    }
    s.phase = Phase::Rearrange;
    s
}

/// Distinct layouts over every labeled placement of the ice pieces into the
/// fixed slots, found by brute force over all permutations.
fn brute_force_classes(s: &GameState) -> usize {
    let slots: Vec<IceSlot> = s
        .ice_in_play()
        .map(|(server, position, _)| IceSlot { server, position })
        .collect();
    let mut seen = HashSet::new();
    let mut perm: Vec<usize> = (0..slots.len()).collect();
    permute(&mut perm, 0, &mut |p| {
        let mut rest = p.iter().map(|&i| slots[i]);
        let layout: Vec<(ServerId, Vec<IceSlot>)> = s
            .corp
            .servers
            .iter()
            .map(|srv| (srv.id, rest.by_ref().take(srv.ice.len()).collect()))
            .collect();
        let mut next = s.clone();
        apply_plan(&mut next, &RearrangementPlan::from_layout(&layout)).unwrap();
        seen.insert(canonical_key(&next));
    });
    seen.len()
}

fn permute(v: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == v.len() {
        f(v);
        return;
    }
    for i in k..v.len() {
        v.swap(k, i);
        permute(v, k + 1, f);
        v.swap(k, i);
    }
}

fn plan_classes(s: &GameState) -> usize {
    let plans = enumerate_rearrangement_plans(s);
    let keys: HashSet<CanonicalKey> = plans
        .iter()
        .map(|p| {
            let mut next = s.clone();
            apply_plan(&mut next, p).unwrap();
            canonical_key(&next)
        })
        .collect();
    assert_eq!(keys.len(), plans.len(), "one plan per class");
    plans.len()
}

#[test]
fn plan_classes_theorem2_identical_walls() {
    let (s, _) = compile_corp_mate2(&inst(&[1, 1])).unwrap();
    let s = in_rearrangement(s);
    assert_eq!(plan_classes(&s), 1);
    assert_eq!(brute_force_classes(&s), 1);
}

#[test]
fn plan_classes_theorem2_reference() {
    let (s, _) = compile_corp_mate2(&inst(&[1, 2, 3, 2])).unwrap();
    let s = in_rearrangement(s);
    assert_eq!(brute_force_classes(&s), 12);
    assert_eq!(plan_classes(&s), 12);
}

#[test]
fn plan_classes_theorem1_two_twos() {
    let (s, _) = compile_runner_mate1(&inst(&[2, 2])).unwrap();
    let s = in_rearrangement(s);
    // 14 pieces: 2 Archers, 2 equal walls, 10 Enigmas; 14!/(2!2!10!).
    assert_eq!(plan_classes(&s), 6006);
}

#[test]
fn canonical_key_examples() {
    let (s, _) = compile_runner_mate1(&inst(&[2, 2])).unwrap();
    let mut swapped = s.clone();
    swapped.server_mut(ServerId::Rnd).unwrap().ice.swap(1, 2);
    assert_eq!(canonical_key(&s), canonical_key(&swapped));

    let mut richer = s.clone();
    richer.runner.credits += 1;
    assert_ne!(canonical_key(&s), canonical_key(&richer));

    let (s, _) = compile_corp_mate2(&inst(&[2, 2])).unwrap();
    let mut reordered = s.clone();
    reordered.corp.rnd.swap(0, 1);
    assert_ne!(canonical_key(&s), canonical_key(&reordered));

    let mut hand = s.clone();
    hand.corp.hq = vec![CardId::HedgeFund, CardId::MedicalBreakthrough];
    let mut hand2 = s.clone();
    hand2.corp.hq = vec![CardId::MedicalBreakthrough, CardId::HedgeFund];
    assert_eq!(canonical_key(&hand), canonical_key(&hand2));
}

#[test]
fn corp_turn_leaves_end_the_corp_turn() {
    let (s, _) = compile_corp_mate2(&inst(&[1, 3])).unwrap();
    let leaves = corp_turn_leaves(&s, DEFAULT_MAX_ACTIONS_PER_TURN).unwrap();
    assert!(!leaves.is_empty());
    let start = engine::turn_start(&s).unwrap().next_state;
    for (line, leaf) in &leaves {
        assert!(leaf.is_terminal() || leaf.turn_owner == Side::Runner);
        let report = replay(&start, line).unwrap();
        assert_eq!(canonical_key(&report.final_state), canonical_key(leaf));
    }
}
