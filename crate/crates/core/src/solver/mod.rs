//! Exhaustive AND-OR search for Runner mate-in-1 and Corp mate-in-2.
//!
//! The prover's decisions are OR nodes; the opponent's decisions and random
//! events are AND nodes (resolved worst-case for the prover). Results are
//! memoized on the canonical key per turn stratum.

mod key;
mod plans;

use std::collections::{BTreeSet, HashMap};
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::engine::{self, EngineError};
use crate::model::{Action, Decider, GameState, Phase, ServerId, Side};

pub use key::{canonical_key, CanonicalKey};
pub use plans::enumerate_rearrangement_plans;

pub const DEFAULT_MAX_ACTIONS_PER_TURN: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MateMode {
    /// Can the Runner win before their current turn ends?
    #[serde(rename = "1")]
    RunnerMate1,
    /// Can the Corp win by the end of its second turn, starting now?
    #[serde(rename = "2")]
    CorpMate2,
}

impl MateMode {
    pub fn prover(self) -> Side {
        match self {
            MateMode::RunnerMate1 => Side::Runner,
            MateMode::CorpMate2 => Side::Corp,
        }
    }

    /// Turn boundaries the line may cross.
    fn boundaries(self) -> u8 {
        match self {
            MateMode::RunnerMate1 => 0,
            MateMode::CorpMate2 => 2,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum MoveOrdering {
    /// Steals, scores and advances first; ending the turn last.
    Heuristic,
    /// The heuristic order reversed (for ordering-independence tests).
    Reversed,
    /// Engine order.
    Engine,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolverConfig {
    pub memo: bool,
    /// Turn-horizon reduction for Runner mate-in-1 (dead-server collapse).
    pub reductions: bool,
    pub ordering: MoveOrdering,
    pub max_actions_per_turn: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            memo: true,
            reductions: true,
            ordering: MoveOrdering::Heuristic,
            max_actions_per_turn: DEFAULT_MAX_ACTIONS_PER_TURN,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolveResult {
    pub mode: MateMode,
    pub winnable: bool,
    /// The prover's line, with opponent and random choices filled in by the
    /// first (all equally refuted) alternative; present iff `winnable`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<Action>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub refutation_note: Option<String>,
    pub nodes_explored: u64,
    #[serde(with = "secs")]
    pub elapsed: Duration,
}

mod secs {
    use std::time::Duration;

    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(d: &Duration, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_f64(d.as_secs_f64())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Duration, D::Error> {
        let secs = f64::deserialize(d)?;
        Duration::try_from_secs_f64(secs).map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolveError {
    #[error("{mode:?} needs the {expected:?} to move, found {found:?}")]
    WrongTurn {
        mode: MateMode,
        expected: Side,
        found: Side,
    },
    #[error("Corp mate-in-2 starts at the Corp's turn start")]
    NotTurnStart,
    #[error("more than {0} actions in one turn")]
    ActionCap(usize),
    #[error("no legal decision in a non-terminal position")]
    Stuck,
    #[error(transparent)]
    Engine(#[from] EngineError),
}

pub fn solve_runner_mate1(state: &GameState) -> Result<SolveResult, SolveError> {
    solve(state, MateMode::RunnerMate1, &SolverConfig::default())
}

pub fn solve_corp_mate2(state: &GameState) -> Result<SolveResult, SolveError> {
    solve(state, MateMode::CorpMate2, &SolverConfig::default())
}

pub fn solve(
    state: &GameState,
    mode: MateMode,
    config: &SolverConfig,
) -> Result<SolveResult, SolveError> {
    let started = Instant::now();
    let prover = mode.prover();
    if let Some(outcome) = state.outcome() {
        let winnable = outcome.winner() == prover;
        return Ok(SolveResult {
            mode,
            winnable,
            witness: winnable.then(Vec::new),
            refutation_note: (!winnable).then(|| format!("position is already over ({outcome})")),
            nodes_explored: 0,
            elapsed: started.elapsed(),
        });
    }
    if state.turn_owner != prover {
        return Err(SolveError::WrongTurn {
            mode,
            expected: prover,
            found: state.turn_owner,
        });
    }
    let root = match (mode, &state.phase) {
        (MateMode::CorpMate2, Phase::TurnStart) => engine::turn_start(state)?.next_state,
        (MateMode::CorpMate2, _) => return Err(SolveError::NotTurnStart),
        (MateMode::RunnerMate1, Phase::TurnStart) => engine::turn_start(state)?.next_state,
        _ => state.clone(),
    };
    let mut search = Search {
        prover,
        config: config.clone(),
        memo: HashMap::new(),
        nodes: 0,
    };
    let boundaries = mode.boundaries();
    let winnable = search.win(&root, boundaries, 0)?;
    let (witness, refutation_note) = if winnable {
        (Some(search.principal_variation(&root, boundaries)?), None)
    } else {
        (None, Some(search.refutation_note(&root, boundaries)?))
    };
    Ok(SolveResult {
        mode,
        winnable,
        witness,
        refutation_note,
        nodes_explored: search.nodes,
        elapsed: started.elapsed(),
    })
}

struct Search {
    prover: Side,
    config: SolverConfig,
    memo: HashMap<(u8, CanonicalKey), bool>,
    nodes: u64,
}

struct Child {
    action: Action,
    next: GameState,
    boundary: bool,
}

impl Search {
    fn horizon(&self, state: &GameState) -> Option<BTreeSet<ServerId>> {
        (self.config.reductions && key::horizon_applies(state, self.prover))
            .then(|| key::dead_servers(state))
    }

    fn key(&self, state: &GameState, boundaries: u8) -> (u8, CanonicalKey) {
        let key = match self.horizon(state) {
            Some(dead) => key::reduced_key(state, &dead),
            None => canonical_key(state),
        };
        (boundaries, key)
    }

    fn actions(&self, state: &GameState) -> Result<Vec<Action>, SolveError> {
        let horizon = self.horizon(state);
        let mut actions = if state.awaiting_rearrangement() {
            let plans = if horizon.is_some() {
                plans::reduced_rearrangement_plans(state)
            } else {
                enumerate_rearrangement_plans(state)
            };
            plans
                .into_iter()
                .map(|plan| Action::Rearrange { plan })
                .collect()
        } else {
            engine::legal_actions(state)?
        };
        if let Some(dead) = horizon {
            actions
                .retain(|a| !matches!(a, Action::InitiateRun { server } if dead.contains(server)));
        }
        match self.config.ordering {
            MoveOrdering::Engine => {}
            MoveOrdering::Heuristic => actions.sort_by_key(priority),
            MoveOrdering::Reversed => {
                actions.sort_by_key(priority);
                actions.reverse();
            }
        }
        Ok(actions)
    }

    fn children(&self, state: &GameState) -> Result<Vec<Child>, SolveError> {
        self.actions(state)?
            .into_iter()
            .map(|action| {
                let next = engine::apply(state, &action)?.next_state;
                let boundary = next.turn_owner != state.turn_owner;
                Ok(Child {
                    action,
                    next,
                    boundary,
                })
            })
            .collect()
    }

    fn is_or(&self, state: &GameState) -> bool {
        state.decider() == Some(Decider::Side(self.prover))
    }

    /// Value of a child reached from a node with `boundaries` left.
    fn child_value(
        &mut self,
        child: &Child,
        boundaries: u8,
        depth: usize,
    ) -> Result<bool, SolveError> {
        if child.boundary {
            if boundaries == 0 {
                return Ok(false);
            }
            self.win(&child.next, boundaries - 1, 0)
        } else {
            self.win(&child.next, boundaries, depth + 1)
        }
    }

    fn win(&mut self, state: &GameState, boundaries: u8, depth: usize) -> Result<bool, SolveError> {
        if let Some(outcome) = state.outcome() {
            return Ok(outcome.winner() == self.prover);
        }
        if depth > self.config.max_actions_per_turn {
            return Err(SolveError::ActionCap(self.config.max_actions_per_turn));
        }
        let key = self.config.memo.then(|| self.key(state, boundaries));
        if let Some(&v) = key.as_ref().and_then(|k| self.memo.get(k)) {
            return Ok(v);
        }
        self.nodes += 1;
        let or = self.is_or(state);
        let children = self.children(state)?;
        if children.is_empty() {
            return Err(SolveError::Stuck);
        }
        let mut value = !or;
        for child in &children {
            if self.child_value(child, boundaries, depth)? == or {
                value = or;
                break;
            }
        }
        if let Some(k) = key {
            self.memo.insert(k, value);
        }
        Ok(value)
    }

    /// Walks a winning line: the first winning move at prover nodes, the
    /// first move elsewhere (every opponent move loses for the opponent).
    fn principal_variation(
        &mut self,
        root: &GameState,
        mut boundaries: u8,
    ) -> Result<Vec<Action>, SolveError> {
        let mut line = Vec::new();
        let mut state = root.clone();
        let mut depth = 0;
        while !state.is_terminal() {
            let or = self.is_or(&state);
            let children = self.children(&state)?;
            let mut chosen = None;
            for child in children {
                if !or || self.child_value(&child, boundaries, depth)? {
                    chosen = Some(child);
                    break;
                }
            }
            let child = chosen.ok_or(SolveError::Stuck)?;
            if child.boundary {
                boundaries -= 1;
                depth = 0;
            } else {
                depth += 1;
            }
            line.push(child.action);
            state = child.next;
        }
        Ok(line)
    }

    fn refutation_note(&mut self, root: &GameState, boundaries: u8) -> Result<String, SolveError> {
        let children = self.children(root)?;
        let total = children.len();
        let who = match self.prover {
            Side::Runner => "Runner",
            Side::Corp => "Corp",
        };
        let mut refuted = 0;
        for child in &children {
            if !self.child_value(child, boundaries, 0)? {
                refuted += 1;
            }
        }
        Ok(format!(
            "no forced win for the {who}: all {refuted} of {total} root moves are refuted"
        ))
    }
}

/// Lower sorts first.
fn priority(action: &Action) -> u8 {
    match action {
        Action::Steal { .. } | Action::Score { .. } => 0,
        Action::Advance { .. } => 1,
        Action::KpLynnChoice { .. } | Action::TrashAccessed { .. } => 2,
        Action::PlayCard { .. } | Action::InstallCard { .. } => 3,
        Action::UseGrapplingHook { .. }
        | Action::BoostAurora { .. }
        | Action::BreakSubroutine { .. }
        | Action::PassIce
        | Action::ContinueRun => 4,
        Action::InitiateRun { .. } | Action::Rearrange { .. } => 5,
        Action::GainCredit | Action::DrawCard | Action::RemoveTag => 6,
        Action::AccessCard { .. }
        | Action::TrashProgram { .. }
        | Action::DiscardCard { .. }
        | Action::RezIce { .. }
        | Action::Decline
        | Action::DeclineAccess => 7,
        Action::JackOut => 8,
        Action::EndTurn => 9,
    }
}

/// Distinct Runner-turn states the Corp can reach by ending its current
/// turn, with the Corp line reaching each (first found). Terminal positions
/// reached during the Corp turn are returned too.
pub fn corp_turn_leaves(
    state: &GameState,
    max_actions: usize,
) -> Result<Vec<(Vec<Action>, GameState)>, SolveError> {
    let start = match state.phase {
        Phase::TurnStart => engine::turn_start(state)?.next_state,
        _ => state.clone(),
    };
    if start.turn_owner != Side::Corp {
        return Err(SolveError::WrongTurn {
            mode: MateMode::CorpMate2,
            expected: Side::Corp,
            found: start.turn_owner,
        });
    }
    let mut seen = std::collections::HashSet::new();
    let mut leaves = Vec::new();
    let mut leaf_keys = std::collections::HashSet::new();
    let mut stack = vec![(Vec::new(), start)];
    while let Some((line, s)) = stack.pop() {
        if s.is_terminal() || s.turn_owner != Side::Corp {
            if leaf_keys.insert(canonical_key(&s)) {
                leaves.push((line, s));
            }
            continue;
        }
        if line.len() > max_actions {
            return Err(SolveError::ActionCap(max_actions));
        }
        if !seen.insert(canonical_key(&s)) {
            continue;
        }
        let actions = if s.awaiting_rearrangement() {
            enumerate_rearrangement_plans(&s)
                .into_iter()
                .map(|plan| Action::Rearrange { plan })
                .collect()
        } else {
            engine::legal_actions(&s)?
        };
        for action in actions.into_iter().rev() {
            let next = engine::apply(&s, &action)?.next_state;
            let mut l = line.clone();
            l.push(action);
            stack.push((l, next));
        }
    }
    Ok(leaves)
}
