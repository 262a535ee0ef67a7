use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::model::{GameState, IcePiece, IceSlot, RearrangementPlan, ServerId};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PlanError {
    #[error("no ice at {0:?}")]
    UnknownSource(IceSlot),
    #[error("ice at {0:?} is assigned twice")]
    DuplicateSource(IceSlot),
    #[error("ice at {0:?} is not assigned")]
    MissingSource(IceSlot),
    #[error("no server {0}")]
    UnknownServer(ServerId),
    #[error("positions in {0} are not 0..k without gaps")]
    GappedPositions(ServerId),
    #[error("{server} would hold {after} ice instead of {before}")]
    CountChanged {
        server: ServerId,
        before: usize,
        after: usize,
    },
}

/// Checks that `plan` is a bijection from the ice in play onto gap-free
/// positions of existing servers, leaving every server with as many ice as
/// it had.
pub fn validate_plan(state: &GameState, plan: &RearrangementPlan) -> Result<(), PlanError> {
    let in_play: BTreeSet<IceSlot> = state
        .ice_in_play()
        .map(|(server, position, _)| IceSlot { server, position })
        .collect();
    let mut seen = BTreeSet::new();
    let mut targets: BTreeMap<ServerId, BTreeSet<usize>> = BTreeMap::new();
    for m in &plan.assignment {
        if !in_play.contains(&m.from) {
            return Err(PlanError::UnknownSource(m.from));
        }
        if !seen.insert(m.from) {
            return Err(PlanError::DuplicateSource(m.from));
        }
        if state.server(m.to.server).is_none() {
            return Err(PlanError::UnknownServer(m.to.server));
        }
        if !targets
            .entry(m.to.server)
            .or_default()
            .insert(m.to.position)
        {
            return Err(PlanError::GappedPositions(m.to.server));
        }
    }
    if let Some(missing) = in_play.difference(&seen).next() {
        return Err(PlanError::MissingSource(*missing));
    }
    for (server, positions) in &targets {
        if positions.iter().enumerate().any(|(i, &p)| i != p) {
            return Err(PlanError::GappedPositions(*server));
        }
    }
    for server in &state.corp.servers {
        let after = targets.get(&server.id).map_or(0, |p| p.len());
        if after != server.ice.len() {
            return Err(PlanError::CountChanged {
                server: server.id,
                before: server.ice.len(),
                after,
            });
        }
    }
    Ok(())
}

/// Moves every piece (with its hosted counters and conditions) to the
/// position the plan gives it.
pub fn apply_plan(state: &mut GameState, plan: &RearrangementPlan) -> Result<(), PlanError> {
    validate_plan(state, plan)?;
    let pieces: BTreeMap<IceSlot, IcePiece> = state
        .ice_in_play()
        .map(|(server, position, ice)| (IceSlot { server, position }, *ice))
        .collect();
    let mut layout: BTreeMap<ServerId, Vec<(usize, IcePiece)>> = BTreeMap::new();
    for m in &plan.assignment {
        layout
            .entry(m.to.server)
            .or_default()
            .push((m.to.position, pieces[&m.from]));
    }
    for server in &mut state.corp.servers {
        let mut ice = layout.remove(&server.id).unwrap_or_default();
        ice.sort_by_key(|(p, _)| *p);
        server.ice = ice.into_iter().map(|(_, piece)| piece).collect();
    }
    Ok(())
}
