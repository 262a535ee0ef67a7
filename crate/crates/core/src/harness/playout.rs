use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

use crate::engine::{self, TransitionOutcome};
use crate::model::{Action, GameState, IceSlot, Phase, RearrangementPlan, ServerId};

use super::HarnessError;

/// A uniformly random labeled placement of every ice piece into the fixed
/// per-server slots.
pub fn random_plan<R: Rng + ?Sized>(state: &GameState, rng: &mut R) -> RearrangementPlan {
    let mut sources: Vec<IceSlot> = state
        .ice_in_play()
        .map(|(server, position, _)| IceSlot { server, position })
        .collect();
    sources.shuffle(rng);
    let mut layout: Vec<(ServerId, Vec<IceSlot>)> = Vec::new();
    let mut rest = sources.into_iter();
    for server in &state.corp.servers {
        let slots: Vec<IceSlot> = rest.by_ref().take(server.ice.len()).collect();
        layout.push((server.id, slots));
    }
    RearrangementPlan::from_layout(&layout)
}

/// One step of a random playout.
#[derive(Clone, Debug)]
pub struct PlayoutStep {
    /// `None` for turn-start processing.
    pub action: Option<Action>,
    pub before: GameState,
    pub outcome: TransitionOutcome,
}

/// Plays uniformly random legal actions (random plans at rearrangement
/// windows) for up to `max_len` actions or until the game ends.
pub fn random_playout(
    start: &GameState,
    seed: u64,
    max_len: usize,
) -> Result<Vec<PlayoutStep>, HarnessError> {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut state = start.clone();
    let mut steps = Vec::new();
    let mut actions = 0;
    while actions < max_len && !state.is_terminal() {
        let (action, outcome) = if state.phase == Phase::TurnStart {
            (None, engine::turn_start(&state)?)
        } else {
            let action = if state.awaiting_rearrangement() {
                Action::Rearrange {
                    plan: random_plan(&state, &mut rng),
                }
            } else {
                let legal = engine::legal_actions(&state)?;
                legal
                    .choose(&mut rng)
                    .cloned()
                    .ok_or_else(|| HarnessError::Stuck(format!("{:?}", state.phase)))?
            };
            actions += 1;
            let outcome = engine::apply(&state, &action)?;
            (Some(action), outcome)
        };
        let next = outcome.next_state.clone();
        steps.push(PlayoutStep {
            action,
            before: std::mem::replace(&mut state, next),
            outcome,
        });
    }
    Ok(steps)
}
