use std::collections::BTreeSet;

use crate::model::{AccessTarget, CardId, GameState, IcePiece, Phase, ServerId, Side};

/// Comparable encoding of a position with order-irrelevant zones sorted.
///
/// R&D and the stack keep their order (draw order matters) and ice keeps its
/// order (approach order matters); identical pieces are equal values, so
/// swapping them already yields the same key.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CanonicalKey {
    state: GameState,
    /// Servers collapsed as unpassable for the rest of the turn (empty
    /// unless the solver's turn-horizon reduction is active).
    dead: Vec<ServerId>,
}

pub fn canonical_key(state: &GameState) -> CanonicalKey {
    CanonicalKey {
        state: normalize(state),
        dead: Vec::new(),
    }
}

/// Key with the ice of `dead` servers erased.
pub(crate) fn reduced_key(state: &GameState, dead: &BTreeSet<ServerId>) -> CanonicalKey {
    let mut s = normalize(state);
    for server in &mut s.corp.servers {
        if dead.contains(&server.id) {
            server.ice.clear();
        }
    }
    CanonicalKey {
        state: s,
        dead: dead.iter().copied().collect(),
    }
}

fn normalize(state: &GameState) -> GameState {
    let mut s = state.clone();
    s.corp.hq.sort();
    s.corp.score_area.sort();
    let archive_access_pending = s.run().is_some_and(|r| {
        r.pending_accesses
            .iter()
            .any(|t| matches!(t, AccessTarget::Archives(_)))
    });
    if !archive_access_pending {
        s.corp.archives.sort();
    }
    let r = &mut s.runner;
    r.grip.sort();
    r.heap.sort();
    r.resources.sort();
    r.score_area.sort();
    r.rig.programs.sort();
    s
}

/// Whether `ice` stops every run for the rest of the Runner's turn.
pub(crate) fn impassable(state: &GameState, ice: &IcePiece) -> bool {
    ice.rezzed && ice.ends_run() && !state.runner.rig.can_break(ice)
}

/// The turn-horizon reduction applies when the Runner is the prover, it is
/// the Runner's turn, and nothing can change which ice the Runner passes:
/// no Grappling Hook, nothing left in grip or stack to install.
pub(crate) fn horizon_applies(state: &GameState, prover: Side) -> bool {
    prover == Side::Runner
        && state.turn_owner == Side::Runner
        && !state.runner.rig.has(CardId::GrapplingHook)
        && state.runner.grip.is_empty()
        && state.runner.stack.is_empty()
        && !matches!(state.phase, Phase::Terminal(_) | Phase::TurnStart)
}

/// Servers holding a piece the Runner can no longer pass. The server of the
/// run in progress is never reported: its position is past some of its ice.
pub(crate) fn dead_servers(state: &GameState) -> BTreeSet<ServerId> {
    let running = state.run().map(|r| r.server);
    state
        .corp
        .servers
        .iter()
        .filter(|s| Some(s.id) != running)
        .filter(|s| s.ice.iter().any(|ice| impassable(state, ice)))
        .map(|s| s.id)
        .collect()
}
