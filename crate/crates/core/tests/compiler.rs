use netmate::compiler::*;
use netmate::engine::{self, aurora_cost_to_break};
use netmate::model::*;
use netmate::oracle::balanced_partition;
use proptest::prelude::*;

fn inst(v: &[u64]) -> PartitionInstance {
    PartitionInstance::new(v.to_vec()).unwrap()
}

fn ice(s: &GameState, id: ServerId) -> Vec<IcePiece> {
    s.server(id).unwrap().ice.clone()
}

fn count(ice: &[IcePiece], card: CardId) -> usize {
    ice.iter().filter(|i| i.card == card).count()
}

#[test]
fn encoding_examples() {
    assert_eq!(wall_strength(1).unwrap(), 1);
    assert_eq!(wall_strength(2).unwrap(), 4);
    assert_eq!(wall_strength(5).unwrap(), 13);
    assert_eq!(subboost_count(1).unwrap(), 0);
    assert_eq!(subboost_count(3).unwrap(), 2);
    assert_eq!(subboost_count(7).unwrap(), 6);
    assert!(wall_strength(0).is_err());
    assert!(subboost_count(0).is_err());
    assert!(matches!(
        ice_wall(MAX_VALUE + 1),
        Err(CompileError::ValueTooLarge { .. })
    ));
}

#[test]
fn runner_mate1_two_twos() {
    let (s, m) = compile_runner_mate1(&inst(&[2, 2])).unwrap();
    assert_eq!((m.t_times_2, m.c, m.per_server_target), (4, Some(0), 4));
    let rnd = ice(&s, ServerId::Rnd);
    assert_eq!(count(&rnd, CardId::Enigma), 5);
    assert_eq!(rnd[0].card, CardId::IceWall);
    assert_eq!(rnd[0].strength(), 4);
    let hq = ice(&s, ServerId::Hq);
    assert_eq!(hq.len(), 1);
    assert_eq!(hq[0].card, CardId::Archer);
    assert_eq!(s.runner.rig.pheromones_counters(), 10);
    assert_eq!(s.runner.rig.pheromones_credits(), 10);
    assert_eq!(s.runner.credits, 7);
}

#[test]
fn runner_mate1_reference_instance() {
    let (s, m) = compile_runner_mate1(&inst(&[1, 2, 3, 2])).unwrap();
    assert_eq!(m.t_times_2, 8);
    assert_eq!(m.c, Some(6));
    let strengths: Vec<u32> = (0..4)
        .map(|i| {
            let id = m.wall_servers[i];
            let walls: Vec<IcePiece> = ice(&s, id)
                .into_iter()
                .filter(|p| p.card == CardId::IceWall)
                .collect();
            let k = m.wall_servers[..i].iter().filter(|x| **x == id).count();
            walls[k].strength()
        })
        .collect();
    assert_eq!(strengths, vec![1, 4, 7, 4]);
    let hq = ice(&s, ServerId::Hq);
    assert_eq!(hq[0].card, CardId::Archer);
    assert_eq!(hq[1].strength(), 7);
    assert_eq!(s.runner.rig.pheromones_counters(), 24);
    assert_eq!(s.runner.credits, 11);
    let r2 = s.server(ServerId::Remote(2)).unwrap();
    assert_eq!(r2.ice[0].card, CardId::Archer);
    let root: Vec<CardId> = r2.root.iter().map(|c| c.card).collect();
    assert_eq!(root, vec![CardId::PriorityRequisition, CardId::KpLynn]);
    let r1 = s.server(ServerId::Remote(1)).unwrap();
    assert_eq!(count(&r1.ice, CardId::Enigma), 7);
    assert!(r1.has_rezzed(CardId::DedicatedResponseTeam));
    assert_eq!(
        s.server(ServerId::Hq)
            .unwrap()
            .count_rezzed(CardId::Strongbox),
        2
    );
    assert_eq!(s.corp.hq, vec![CardId::PriorityRequisition]);
    assert_eq!(s.runner.grip, vec![CardId::Escher]);
    assert_eq!(s.runner.heap, vec![CardId::Infiltration]);
    assert!(s.runner.stack.is_empty());
    assert_eq!(s.runner_points(), 3);
    assert!(s
        .corp
        .archives
        .iter()
        .any(|a| a.card == CardId::FastTrack && a.faceup));
    assert!(s.ice_in_play().all(|(_, _, p)| p.rezzed));
}

#[test]
fn runner_mate1_unbalanced_still_compiles() {
    let a = inst(&[1, 3]);
    let (s, m) = compile_runner_mate1(&a).unwrap();
    assert_eq!(m.c, Some(0));
    assert_eq!(s.runner.rig.pheromones_counters(), 10);
    assert_eq!(s.runner.credits, 7);
    assert!(!balanced_partition(&a).exists);
}

#[test]
fn corp_mate2_examples() {
    let (s, m) = compile_corp_mate2(&inst(&[2, 2])).unwrap();
    assert_eq!(m.per_server_target, 6);
    assert_eq!(s.runner.credits, 2);
    for id in [ServerId::Remote(1), ServerId::Remote(2)] {
        let walls = ice(&s, id);
        assert_eq!(walls.len(), 1);
        assert_eq!(walls[0].card, CardId::WallOfStatic);
        assert_eq!(walls[0].sub_boosts, 1);
    }

    let (s, m) = compile_corp_mate2(&inst(&[1, 2, 3, 2])).unwrap();
    assert_eq!(m.per_server_target, 12);
    assert_eq!(s.runner.credits, 8);
    let boosts = |id| ice(&s, id).iter().map(|p| p.sub_boosts).collect::<Vec<_>>();
    assert_eq!(boosts(ServerId::Remote(1)), vec![0, 1]);
    assert_eq!(boosts(ServerId::Remote(2)), vec![2, 1]);
    let msr = s.server(ServerId::Remote(1)).unwrap().root[0];
    assert_eq!(msr.card, CardId::MandatorySeedReplacement);
    assert_eq!(msr.advancement, 3);
    assert!(s.server(ServerId::Remote(2)).unwrap().root.is_empty());
    assert_eq!(s.corp.hq, vec![CardId::MedicalBreakthrough]);
    assert_eq!(
        s.corp.rnd,
        vec![CardId::MedicalBreakthrough, CardId::HedgeFund]
    );
    assert_eq!(s.corp.credits, 4);
    assert_eq!(s.corp_points(), 3);
    assert_eq!(s.runner_points(), 5);
    assert_eq!(s.phase, Phase::TurnStart);
    assert_eq!(s.turn_owner, Side::Corp);

    let (s, m) = compile_corp_mate2(&inst(&[1, 1])).unwrap();
    assert_eq!(s.runner.credits, 0);
    assert_eq!(m.per_server_target, 4);
}

#[test]
fn odd_cardinality_is_rejected_by_both() {
    for theorem in [Theorem::RunnerMate1, Theorem::CorpMate2] {
        assert!(matches!(
            compile(theorem, &inst(&[1, 2, 3])),
            Err(CompileError::OddCardinality(3))
        ));
    }
}

#[test]
fn compilation_is_deterministic() {
    let a = inst(&[3, 1, 4, 1, 5, 9]);
    for theorem in [Theorem::RunnerMate1, Theorem::CorpMate2] {
        assert_eq!(compile(theorem, &a).unwrap(), compile(theorem, &a).unwrap());
    }
}

#[test]
fn scripted_line_on_the_reference_instance() {
    let a = inst(&[1, 2, 3, 2]);
    let (s, m) = compile_runner_mate1(&a).unwrap();
    let hq_side = balanced_partition(&a).witness.unwrap();
    let mut state = s;
    for action in runner_mate1_line(&state, &m, &hq_side) {
        state = engine::apply(&state, &action).unwrap().next_state;
    }
    assert_eq!(state.outcome(), Some(Outcome::RunnerWin));
}

fn even_instance() -> impl Strategy<Value = Vec<u64>> {
    (1usize..=4).prop_flat_map(|half| prop::collection::vec(1u64..=12, 2 * half))
}

proptest! {
    #[test]
    fn theorem1_structure(values in even_instance()) {
        let a = inst(&values);
        let n = values.len();
        let (s, m) = compile_runner_mate1(&a).unwrap();
        prop_assert!(s.check_invariants().is_ok());
        let sum: u64 = values.iter().sum();
        prop_assert_eq!(m.t_times_2, sum);
        let rnd = ice(&s, ServerId::Rnd);
        prop_assert_eq!(rnd.len(), n + 4);
        prop_assert_eq!(count(&rnd, CardId::Enigma), n + 3);
        let non_enigma = s.ice_in_play().filter(|(_, _, p)| p.card != CardId::Enigma).count();
        prop_assert_eq!(non_enigma, n + 2);
        prop_assert_eq!(ice(&s, ServerId::Hq).len(), (n - 2) / 2 + 1);
        prop_assert_eq!(ice(&s, ServerId::Remote(2)).len(), (n - 2) / 2 + 1);
        // c is the break cost of HQ's walls; Pheromones and pool follow it.
        let hq_cost = server_break_cost(&ice(&s, ServerId::Hq)[1..]).unwrap();
        prop_assert_eq!(m.c, Some(hq_cost));
        prop_assert_eq!(u64::from(s.runner.rig.pheromones_counters()), 2 * sum + hq_cost + 2);
        prop_assert_eq!(u64::from(s.runner.credits), sum + 3);
        for (i, &v) in values.iter().enumerate() {
            let w = ice_wall(v).unwrap();
            prop_assert_eq!(aurora_cost_to_break(&w).unwrap(), Some(2 * v as u32));
            prop_assert!(s.ice_in_play().any(|(id, _, p)| *p == w && id == m.wall_servers[i]));
        }
    }

    #[test]
    fn theorem2_structure(values in even_instance()) {
        let a = inst(&values);
        let n = values.len();
        let sum: u64 = values.iter().sum();
        match compile_corp_mate2(&a) {
            Err(CompileError::NegativeRunnerPool(p)) => {
                prop_assert!(sum + (n as u64) < 4);
                prop_assert!(p < 0);
            }
            Err(e) => prop_assert!(false, "{}", e),
            Ok((s, m)) => {
                prop_assert!(s.check_invariants().is_ok());
                prop_assert_eq!(m.per_server_target, sum + n as u64);
                prop_assert_eq!(u64::from(s.runner.credits) + 4, sum + n as u64);
                let half = n / 2;
                for (id, part) in [(ServerId::Remote(1), &values[..half]), (ServerId::Remote(2), &values[half..])] {
                    let walls = ice(&s, id);
                    let expect: Vec<IcePiece> = part.iter().map(|&v| wall_of_static(v).unwrap()).collect();
                    prop_assert_eq!(&walls, &expect);
                    let cost = server_break_cost(&walls).unwrap();
                    prop_assert_eq!(cost, part.iter().map(|v| 2 * v + 2).sum::<u64>());
                }
            }
        }
    }

    #[test]
    fn scripted_line_wins_on_balanced_instances(values in even_instance()) {
        let a = inst(&values);
        let answer = balanced_partition(&a);
        prop_assume!(answer.exists);
        let (s, m) = compile_runner_mate1(&a).unwrap();
        let mut state = s;
        for action in runner_mate1_line(&state, &m, &answer.witness.unwrap()) {
            state = engine::apply(&state, &action).unwrap().next_state;
        }
        prop_assert_eq!(state.outcome(), Some(Outcome::RunnerWin));
    }
}
