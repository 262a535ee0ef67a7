//! Builds the two reduction positions from a Partition instance.
//!
//! Both constructions are pure functions of the value list: the same input
//! always yields the same state, byte for byte once serialized.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::engine::aurora_cost_to_break;
use crate::model::{
    Action, ArchivedCard, CardId, GameState, IcePiece, IceSlot, InstalledCard, InstalledProgram,
    KpLynnChoice, PartitionInstance, PaymentSource, Phase, RearrangementPlan, Server, ServerId,
    Side, RUNNER_CLICKS_PER_TURN,
};

/// Largest value either construction accepts. Sub Boost subroutines must fit
/// the encounter's 64-bit broken mask, and credit totals must fit `u32`.
pub const MAX_VALUE: u64 = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CompileError {
    #[error("value {0} is not a positive integer")]
    NonPositive(u64),
    #[error("value {value} exceeds the supported maximum {max}")]
    ValueTooLarge { value: u64, max: u64 },
    #[error("odd cardinality {0}: the construction splits the walls into two equal halves")]
    OddCardinality(usize),
    #[error("Runner credit pool 2t+|A|-4 = {0} is negative")]
    NegativeRunnerPool(i64),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Theorem {
    /// Runner mate-in-1.
    #[serde(rename = "1")]
    RunnerMate1,
    /// Corp mate-in-2.
    #[serde(rename = "2")]
    CorpMate2,
}

impl Theorem {
    pub fn number(self) -> u8 {
        match self {
            Theorem::RunnerMate1 => 1,
            Theorem::CorpMate2 => 2,
        }
    }

    pub fn from_number(n: u8) -> Option<Self> {
        match n {
            1 => Some(Theorem::RunnerMate1),
            2 => Some(Theorem::CorpMate2),
            _ => None,
        }
    }
}

/// Bookkeeping for a compiled position.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScenarioManifest {
    pub theorem: Theorem,
    pub instance: PartitionInstance,
    /// 2t, the instance sum.
    pub t_times_2: u64,
    /// Cost to break the walls initially on HQ (Theorem 1 only).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c: Option<u64>,
    /// Break cost each agenda server must reach: 2t (Theorem 1) or 2t+|A|
    /// (Theorem 2).
    pub per_server_target: u64,
    /// Enigmas on each of R&D and the Dedicated Response Team remote.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub enigma_per_stack: Option<usize>,
    /// Ice Walls initially on each of HQ and the agenda remote.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hq_initial_walls: Option<usize>,
    /// Initial server of the wall encoding each value, in input order.
    pub wall_servers: Vec<ServerId>,
}

/// Ice Wall strength encoding `a`.
pub fn wall_strength(a: u64) -> Result<u32, CompileError> {
    check_value(a)?;
    Ok(3 * (a as u32 - 1) + 1)
}

/// Sub Boost counters on the Wall of Static encoding `a`.
pub fn subboost_count(a: u64) -> Result<u32, CompileError> {
    check_value(a)?;
    Ok(a as u32 - 1)
}

fn check_value(a: u64) -> Result<(), CompileError> {
    if a == 0 {
        return Err(CompileError::NonPositive(a));
    }
    if a > MAX_VALUE {
        return Err(CompileError::ValueTooLarge {
            value: a,
            max: MAX_VALUE,
        });
    }
    Ok(())
}

fn check_instance(instance: &PartitionInstance) -> Result<(), CompileError> {
    if instance.len() % 2 == 1 {
        return Err(CompileError::OddCardinality(instance.len()));
    }
    instance.values().iter().try_for_each(|&a| check_value(a))
}

/// The Ice Wall piece encoding `a`: advanced 3(a-1) times, rezzed.
pub fn ice_wall(a: u64) -> Result<IcePiece, CompileError> {
    Ok(IcePiece {
        advancement: wall_strength(a)? - 1,
        ..IcePiece::rezzed(CardId::IceWall)
    })
}

/// The Wall of Static piece encoding `a`: a-1 Sub Boosts, rezzed.
pub fn wall_of_static(a: u64) -> Result<IcePiece, CompileError> {
    Ok(IcePiece {
        sub_boosts: subboost_count(a)?,
        ..IcePiece::rezzed(CardId::WallOfStatic)
    })
}

/// Initial server of each Theorem-1 wall: a1 on R&D, a2 on the Dedicated
/// Response Team remote, then alternately HQ and the agenda remote.
pub fn runner_mate1_assignment(n: usize) -> Vec<ServerId> {
    (0..n)
        .map(|i| match i {
            0 => ServerId::Rnd,
            1 => ServerId::Remote(1),
            i if i % 2 == 0 => ServerId::Hq,
            _ => ServerId::Remote(2),
        })
        .collect()
}

/// Theorem 1: the Runner to move with four clicks; the Runner can win this
/// turn iff the instance has a balanced partition.
pub fn compile_runner_mate1(
    instance: &PartitionInstance,
) -> Result<(GameState, ScenarioManifest), CompileError> {
    check_instance(instance)?;
    let n = instance.len();
    let sum = instance.sum();
    let assignment = runner_mate1_assignment(n);
    let walls: Vec<IcePiece> = instance
        .values()
        .iter()
        .map(|&a| ice_wall(a))
        .collect::<Result<_, _>>()?;
    let walls_on = |server: ServerId| -> Vec<IcePiece> {
        assignment
            .iter()
            .zip(&walls)
            .filter(|(s, _)| **s == server)
            .map(|(_, w)| *w)
            .collect()
    };
    let c: u64 = instance
        .values()
        .iter()
        .zip(&assignment)
        .filter(|(_, s)| **s == ServerId::Hq)
        .map(|(&a, _)| 2 * a)
        .sum();
    let enigmas = n + 3;

    let mut s = GameState::empty(CardId::WeylandBbw, CardId::Exile);
    s.corp.rnd = vec![CardId::HedgeFund; enigmas];
    s.corp.hq = vec![CardId::PriorityRequisition];
    s.corp.archives = vec![ArchivedCard {
        card: CardId::FastTrack,
        faceup: true,
    }];

    let deep_stack = |wall: Vec<IcePiece>| -> Vec<IcePiece> {
        let mut ice = wall;
        ice.extend(std::iter::repeat_n(
            IcePiece::rezzed(CardId::Enigma),
            enigmas,
        ));
        ice
    };
    let shallow_stack = |server: ServerId| -> Vec<IcePiece> {
        let mut ice = vec![IcePiece::rezzed(CardId::Archer)];
        ice.extend(walls_on(server));
        ice
    };

    let rnd = s.server_mut(ServerId::Rnd).expect("R&D");
    rnd.ice = deep_stack(walls_on(ServerId::Rnd));
    let hq = s.server_mut(ServerId::Hq).expect("HQ");
    hq.ice = shallow_stack(ServerId::Hq);
    hq.root = vec![InstalledCard::rezzed(CardId::Strongbox); 2];

    let mut drt = Server::new(ServerId::Remote(1));
    drt.ice = deep_stack(walls_on(ServerId::Remote(1)));
    drt.root = vec![InstalledCard::rezzed(CardId::DedicatedResponseTeam)];
    s.add_server(drt);
    let mut agenda = Server::new(ServerId::Remote(2));
    agenda.ice = shallow_stack(ServerId::Remote(2));
    agenda.root = vec![
        InstalledCard::unrezzed(CardId::PriorityRequisition),
        InstalledCard::rezzed(CardId::KpLynn),
    ];
    s.add_server(agenda);

    let pheromones = 2 * sum + c + 2;
    let r = &mut s.runner;
    r.credits = (sum + 3) as u32;
    r.clicks = RUNNER_CLICKS_PER_TURN;
    r.grip = vec![CardId::Escher];
    r.heap = vec![CardId::Infiltration];
    r.rig.programs = vec![
        InstalledProgram::new(CardId::Aurora),
        InstalledProgram::new(CardId::GrapplingHook),
        InstalledProgram {
            card: CardId::Pheromones,
            virus_counters: pheromones as u32,
            recurring_credits: pheromones as u32,
        },
    ];
    r.score_area = vec![CardId::PriorityRequisition];
    s.turn_owner = Side::Runner;
    s.phase = Phase::Action;

    let manifest = ScenarioManifest {
        theorem: Theorem::RunnerMate1,
        instance: instance.clone(),
        t_times_2: sum,
        c: Some(c),
        per_server_target: sum,
        enigma_per_stack: Some(enigmas),
        hq_initial_walls: Some((n - 2) / 2),
        wall_servers: assignment,
    };
    Ok((s, manifest))
}

/// Theorem 2: the Corp at turn start (mandatory draw pending); the Corp can
/// win within two of its turns iff the instance has a balanced partition.
pub fn compile_corp_mate2(
    instance: &PartitionInstance,
) -> Result<(GameState, ScenarioManifest), CompileError> {
    check_instance(instance)?;
    let n = instance.len();
    let sum = instance.sum();
    let pool = sum as i64 + n as i64 - 4;
    if pool < 0 {
        return Err(CompileError::NegativeRunnerPool(pool));
    }
    let walls: Vec<IcePiece> = instance
        .values()
        .iter()
        .map(|&a| wall_of_static(a))
        .collect::<Result<_, _>>()?;

    let mut s = GameState::empty(CardId::NiseiDivision, CardId::Exile);
    s.corp.credits = 4;
    s.corp.hq = vec![CardId::MedicalBreakthrough];
    s.corp.rnd = vec![CardId::MedicalBreakthrough, CardId::HedgeFund];
    s.corp.archives = vec![ArchivedCard {
        card: CardId::HedgeFund,
        faceup: true,
    }];
    s.corp.score_area = vec![CardId::PriorityRequisition];
    let mut msr = Server::new(ServerId::Remote(1));
    msr.ice = walls[..n / 2].to_vec();
    msr.root = vec![InstalledCard {
        advancement: 3,
        ..InstalledCard::unrezzed(CardId::MandatorySeedReplacement)
    }];
    s.add_server(msr);
    let mut empty = Server::new(ServerId::Remote(2));
    empty.ice = walls[n / 2..].to_vec();
    s.add_server(empty);

    let r = &mut s.runner;
    r.credits = pool as u32;
    r.heap = vec![CardId::TheShadowNet];
    r.rig.programs = vec![InstalledProgram::new(CardId::Aurora)];
    r.score_area = vec![CardId::PriorityRequisition, CardId::MedicalBreakthrough];
    s.turn_owner = Side::Corp;
    s.phase = Phase::TurnStart;

    let wall_servers = (0..n)
        .map(|i| ServerId::Remote(if i < n / 2 { 1 } else { 2 }))
        .collect();
    let manifest = ScenarioManifest {
        theorem: Theorem::CorpMate2,
        instance: instance.clone(),
        t_times_2: sum,
        c: None,
        per_server_target: sum + n as u64,
        enigma_per_stack: None,
        hq_initial_walls: None,
        wall_servers,
    };
    Ok((s, manifest))
}

pub fn compile(
    theorem: Theorem,
    instance: &PartitionInstance,
) -> Result<(GameState, ScenarioManifest), CompileError> {
    match theorem {
        Theorem::RunnerMate1 => compile_runner_mate1(instance),
        Theorem::CorpMate2 => compile_corp_mate2(instance),
    }
}

/// Boosts then per-subroutine breaks that get Aurora through `ice`.
pub fn break_actions(ice: &IcePiece, source: PaymentSource) -> Vec<Action> {
    let base = CardId::Aurora.def().strength.unwrap_or(0);
    let boosts = ice.strength().saturating_sub(base).div_ceil(3);
    let mut out = vec![Action::BoostAurora { source }; boosts as usize];
    out.extend((0..ice.subroutine_count()).map(|index| Action::BreakSubroutine { index, source }));
    out
}

/// Break cost of a server's ice with Aurora; `None` if any piece is not a
/// rezzed barrier.
pub fn server_break_cost(ice: &[IcePiece]) -> Option<u64> {
    ice.iter()
        .map(|p| aurora_cost_to_break(p).ok().flatten().map(u64::from))
        .sum()
}

/// The Runner's winning line on a compiled Theorem-1 state, given a balanced
/// subset `hq_side` (value indices whose walls end up on HQ).
///
/// Play Escher, pass Archer with Grappling Hook, break HQ's walls from
/// Pheromones; rearrange so HQ holds the subset and the agenda remote its
/// complement with the Archers swapped onto the deep stacks; run HQ to trash
/// both Strongboxes, again to steal, then run the agenda remote through
/// K. P. Lynn.
pub fn runner_mate1_line(
    state: &GameState,
    manifest: &ScenarioManifest,
    hq_side: &[usize],
) -> Vec<Action> {
    let values = manifest.instance.values();
    let ice_of = |id: ServerId| state.server(id).map(|s| s.ice.clone()).unwrap_or_default();
    let pher = PaymentSource::Pheromones;
    let mut line = vec![Action::PlayCard {
        card: CardId::Escher,
        target: None,
    }];
    line.push(Action::UseGrapplingHook { keep: 0 });
    line.push(Action::ContinueRun);
    for wall in ice_of(ServerId::Hq).iter().skip(1) {
        line.push(Action::ContinueRun);
        line.extend(break_actions(wall, pher));
        line.push(Action::PassIce);
    }
    line.push(Action::ContinueRun);

    // Current slot of the wall encoding each value index.
    let mut wall_slot = Vec::with_capacity(values.len());
    let mut seen_on = std::collections::BTreeMap::<ServerId, usize>::new();
    for &server in &manifest.wall_servers {
        let first = match server {
            ServerId::Hq | ServerId::Remote(2) => 1,
            _ => 0,
        };
        let k = seen_on.entry(server).or_insert(first);
        wall_slot.push(IceSlot {
            server,
            position: *k,
        });
        *k += 1;
    }
    let hq_archer = IceSlot {
        server: ServerId::Hq,
        position: 0,
    };
    let remote_archer = IceSlot {
        server: ServerId::Remote(2),
        position: 0,
    };
    let mut layout = Vec::new();
    for (server, archer) in [
        (ServerId::Rnd, hq_archer),
        (ServerId::Remote(1), remote_archer),
    ] {
        let n = ice_of(server).len();
        let mut slots = vec![archer];
        slots.extend((1..n).map(|position| IceSlot { server, position }));
        layout.push((server, slots));
    }
    let hq_walls: Vec<IceSlot> = hq_side.iter().map(|&i| wall_slot[i]).collect();
    let other_walls: Vec<IceSlot> = (0..values.len())
        .filter(|i| !hq_side.contains(i))
        .map(|i| wall_slot[i])
        .collect();
    layout.push((ServerId::Hq, hq_walls));
    layout.push((ServerId::Remote(2), other_walls));
    line.push(Action::Rearrange {
        plan: RearrangementPlan::from_layout(&layout),
    });

    let hq_ice: Vec<IcePiece> = hq_side
        .iter()
        .map(|&i| ice_wall(values[i]).expect("compiled value"))
        .collect();
    let remote_ice: Vec<IcePiece> = (0..values.len())
        .filter(|i| !hq_side.contains(i))
        .map(|i| ice_wall(values[i]).expect("compiled value"))
        .collect();
    let run_through = |line: &mut Vec<Action>, ice: &[IcePiece], source| {
        for (k, wall) in ice.iter().enumerate() {
            if k > 0 {
                line.push(Action::ContinueRun);
            }
            line.extend(break_actions(wall, source));
            line.push(Action::PassIce);
        }
    };

    line.push(Action::InitiateRun {
        server: ServerId::Hq,
    });
    run_through(&mut line, &hq_ice, pher);
    line.push(Action::ContinueRun);
    for _ in 0..2 {
        line.push(Action::TrashAccessed {
            card: CardId::Strongbox,
            pool: 0,
            pheromones: 1,
        });
    }
    line.push(Action::DeclineAccess);

    line.push(Action::InitiateRun {
        server: ServerId::Hq,
    });
    run_through(&mut line, &hq_ice, pher);
    line.push(Action::ContinueRun);
    line.push(Action::Steal {
        card: CardId::PriorityRequisition,
    });

    line.push(Action::InitiateRun {
        server: ServerId::Remote(2),
    });
    run_through(&mut line, &remote_ice, PaymentSource::Pool);
    line.push(Action::KpLynnChoice {
        choice: KpLynnChoice::TakeTag,
    });
    // K. P. Lynn's trash cost is out of reach with the pool spent; its
    // access resolves on its own.
    line.push(Action::ContinueRun);
    line.push(Action::Steal {
        card: CardId::PriorityRequisition,
    });
    line
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inst(v: &[u64]) -> PartitionInstance {
        PartitionInstance::new(v.to_vec()).unwrap()
    }

    #[test]
    fn wall_encodings() {
        assert_eq!(wall_strength(1), Ok(1));
        assert_eq!(wall_strength(2), Ok(4));
        assert_eq!(wall_strength(5), Ok(13));
        assert_eq!(subboost_count(1), Ok(0));
        assert_eq!(subboost_count(3), Ok(2));
        assert_eq!(subboost_count(7), Ok(6));
        assert!(wall_strength(0).is_err());
        assert!(subboost_count(0).is_err());
    }

    #[test]
    fn assignment_alternates_after_the_deep_stacks() {
        use ServerId::*;
        assert_eq!(
            runner_mate1_assignment(6),
            vec![Rnd, Remote(1), Hq, Remote(2), Hq, Remote(2)]
        );
    }

    #[test]
    fn runner_mate1_numbers() {
        let (s, m) = compile_runner_mate1(&inst(&[1, 2, 3, 2])).unwrap();
        assert_eq!(m.c, Some(6));
        assert_eq!(s.runner.rig.pheromones_counters(), 24);
        assert_eq!(s.runner.credits, 11);
        let hq = s.server(ServerId::Hq).unwrap();
        assert_eq!(hq.ice.len(), 2);
        assert_eq!(hq.ice[1].strength(), 7);
        s.check_invariants().unwrap();
    }

    #[test]
    fn odd_cardinality_rejected() {
        assert_eq!(
            compile_runner_mate1(&inst(&[1, 2, 3])).unwrap_err(),
            CompileError::OddCardinality(3)
        );
        assert!(compile_corp_mate2(&inst(&[1, 2, 3])).is_err());
    }
}
