//! Legal-move generation and deterministic state transitions.
//!
//! Every transition is a pure function of `(state, action)`. After the
//! chosen action is applied the engine settles all automatic steps (passing
//! unrezzed ice, single-outcome random picks, turn start), so every state it
//! returns is either terminal or waiting on a decision.

mod legal;
mod rearrange;
mod transition;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::model::{
    Action, CardId, GameState, IcePiece, KpLynnChoice, Outcome, PaymentSource, Phase,
    RearrangeSource, RearrangementPlan, RunStep, ServerId, Side, Subroutine, Subtype,
};

pub use legal::legal_actions;
pub use rearrange::{apply_plan, validate_plan, PlanError};

/// Why an action was rejected.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IllegalReason {
    WrongPhase,
    InsufficientClicks,
    InsufficientCredits,
    InsufficientStrength,
    PheromonesOutsideHq,
    GrapplingHookAbsent,
    NoBreaker,
    NotAvailable,
    InvalidPlan(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EngineError {
    #[error("game is over ({0})")]
    Terminal(Outcome),
    #[error("turn start has not been processed")]
    TurnStartPending,
    #[error("illegal action {action}: {reason:?}")]
    IllegalAction {
        action: String,
        reason: IllegalReason,
    },
    #[error("{0}")]
    Contract(String),
}

impl EngineError {
    pub fn reason(&self) -> Option<&IllegalReason> {
        match self {
            EngineError::IllegalAction { reason, .. } => Some(reason),
            _ => None,
        }
    }
}

/// One audit record emitted by a transition.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Event {
    TurnStarted {
        side: Side,
    },
    TurnEnded {
        side: Side,
    },
    ClicksSpent {
        side: Side,
        clicks: u32,
    },
    CreditsPaid {
        side: Side,
        pool: u32,
        pheromones: u32,
    },
    CreditsGained {
        side: Side,
        amount: u32,
    },
    RecurringCreditsRefreshed {
        card: CardId,
        credits: u32,
    },
    CardDrawn {
        side: Side,
        card: CardId,
    },
    CardPlayed {
        card: CardId,
    },
    CardInstalled {
        card: CardId,
    },
    CardAdvanced {
        card: CardId,
        tokens: u32,
    },
    AgendaScored {
        card: CardId,
    },
    AgendaStolen {
        card: CardId,
    },
    RunStarted {
        server: ServerId,
    },
    IceEncountered {
        card: CardId,
    },
    AuroraBoosted {
        strength: u32,
    },
    SubroutineBroken {
        card: CardId,
        index: usize,
    },
    SubroutineFired {
        card: CardId,
        index: usize,
        subroutine: Subroutine,
    },
    ClickLost,
    IcePassed {
        card: CardId,
    },
    RunSuccessful {
        server: ServerId,
    },
    RunEnded {
        server: ServerId,
        successful: bool,
    },
    VirusCounterPlaced {
        card: CardId,
        counters: u32,
    },
    CardAccessed {
        card: CardId,
    },
    CardTrashed {
        card: CardId,
    },
    ProgramTrashed {
        card: CardId,
    },
    CardDiscarded {
        card: CardId,
    },
    TagTaken,
    TagRemoved,
    MeatDamage {
        amount: u32,
    },
    IceRearranged {
        source: RearrangeSource,
    },
    IceRezzed {
        card: CardId,
    },
    GameOver {
        outcome: Outcome,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransitionOutcome {
    pub next_state: GameState,
    pub events: Vec<Event>,
}

/// Applies one action. The action must be legal in `state`; rearrangement
/// plans are validated structurally instead of being looked up.
pub fn apply(state: &GameState, action: &Action) -> Result<TransitionOutcome, EngineError> {
    match &state.phase {
        Phase::Terminal(o) => return Err(EngineError::Terminal(*o)),
        Phase::TurnStart => return Err(EngineError::TurnStartPending),
        _ => {}
    }
    if let Action::Rearrange { plan } = action {
        if !state.awaiting_rearrangement() {
            return Err(illegal(action, IllegalReason::WrongPhase));
        }
        validate_plan(state, plan)
            .map_err(|e| illegal(action, IllegalReason::InvalidPlan(e.to_string())))?;
    } else {
        let legal = legal_actions(state)?;
        if !legal.contains(action) {
            return Err(illegal(action, legal::diagnose(state, action)));
        }
    }
    let mut next = state.clone();
    let mut events = Vec::new();
    transition::step(&mut next, action, &mut events);
    transition::settle(&mut next, &mut events);
    Ok(TransitionOutcome {
        next_state: next,
        events,
    })
}

fn illegal(action: &Action, reason: IllegalReason) -> EngineError {
    EngineError::IllegalAction {
        action: action.to_string(),
        reason,
    }
}

/// Processes a pending turn start: the Corp's mandatory draw (or decking
/// out), click refill, and recurring-credit refresh.
pub fn turn_start(state: &GameState) -> Result<TransitionOutcome, EngineError> {
    if state.phase != Phase::TurnStart {
        return Err(EngineError::Contract("not at turn start".into()));
    }
    let mut next = state.clone();
    let mut events = Vec::new();
    transition::settle(&mut next, &mut events);
    Ok(TransitionOutcome {
        next_state: next,
        events,
    })
}

/// Credits Aurora needs to fully break `ice` from its base strength, or
/// `None` when Aurora cannot break it at all.
pub fn aurora_cost_to_break(ice: &IcePiece) -> Result<Option<u32>, EngineError> {
    if !ice.rezzed {
        return Err(EngineError::Contract(format!("{} is not rezzed", ice.card)));
    }
    if !ice.has_subtype(Subtype::Barrier) {
        return Ok(None);
    }
    let base = CardId::Aurora.def().strength.unwrap_or(0);
    let boosts = ice.strength().saturating_sub(base).div_ceil(3);
    Ok(Some(2 * boosts + 2 * ice.subroutine_count() as u32))
}

/// Applies an encounter action (boost, break, Grappling Hook, continue).
pub fn resolve_encounter_step(
    state: &GameState,
    action: &Action,
) -> Result<TransitionOutcome, EngineError> {
    let in_encounter = matches!(state.run().map(|r| r.step), Some(RunStep::Encounter(_)));
    let encounter_action = matches!(
        action,
        Action::BoostAurora { .. }
            | Action::BreakSubroutine { .. }
            | Action::UseGrapplingHook { .. }
            | Action::ContinueRun
            | Action::PassIce
    );
    if !in_encounter || !encounter_action {
        return Err(illegal(action, IllegalReason::WrongPhase));
    }
    apply(state, action)
}

/// Fires one subroutine of the ice being encountered, in isolation. Returns
/// one branch per Corp choice when the subroutine needs one.
pub fn fire_subroutine(
    state: &GameState,
    sub_index: usize,
) -> Result<Vec<TransitionOutcome>, EngineError> {
    let ctx = state
        .run()
        .ok_or_else(|| EngineError::Contract("no run in progress".into()))?;
    let RunStep::Encounter(enc) = ctx.step else {
        return Err(EngineError::Contract("not encountering ice".into()));
    };
    let ice = state
        .server(ctx.server)
        .and_then(|s| s.ice.get(ctx.ice_index))
        .copied()
        .ok_or_else(|| EngineError::Contract("no ice at run position".into()))?;
    let sub = ice
        .subroutine(sub_index)
        .ok_or_else(|| EngineError::Contract(format!("no subroutine {sub_index}")))?;
    if enc.is_broken(sub_index) {
        return Err(EngineError::Contract(format!(
            "subroutine {sub_index} is broken"
        )));
    }
    let mut base = state.clone();
    let mut events = Vec::new();
    if sub == Subroutine::TrashProgram && !state.runner.rig.programs.is_empty() {
        let mut programs: Vec<CardId> = state.runner.rig.programs.iter().map(|p| p.card).collect();
        programs.sort();
        programs.dedup();
        return Ok(programs
            .into_iter()
            .map(|card| {
                let mut next = state.clone();
                let mut events = vec![Event::SubroutineFired {
                    card: ice.card,
                    index: sub_index,
                    subroutine: sub,
                }];
                transition::trash_program(&mut next, card, &mut events);
                TransitionOutcome {
                    next_state: next,
                    events,
                }
            })
            .collect());
    }
    transition::fire_one(&mut base, ice.card, sub_index, sub, &mut events);
    Ok(vec![TransitionOutcome {
        next_state: base,
        events,
    }])
}

/// Passes the current ice once its encounter is resolved, then settles the
/// approach to the next ice or to the server (K. P. Lynn fires here).
pub fn pass_ice_and_approach(state: &GameState) -> Result<TransitionOutcome, EngineError> {
    match state.run().map(|r| r.step) {
        Some(RunStep::Encounter(_)) => apply(state, &Action::PassIce),
        _ => Err(EngineError::Contract("not at a resolved encounter".into())),
    }
}

/// Declares the run successful from the server approach and begins the
/// breach (or Escher's rearrangement window).
pub fn breach_server(state: &GameState) -> Result<TransitionOutcome, EngineError> {
    match state.run().map(|r| r.step) {
        Some(RunStep::ApproachServer) => apply(state, &Action::ContinueRun),
        _ => Err(EngineError::Contract(
            "run has not reached the server".into(),
        )),
    }
}

/// Resolves a pending rearrangement from `source`.
pub fn rearrange_ice(
    state: &GameState,
    plan: &RearrangementPlan,
    source: RearrangeSource,
) -> Result<TransitionOutcome, EngineError> {
    let pending = match (&state.phase, source) {
        (Phase::Rearrange, RearrangeSource::MandatorySeedReplacement) => true,
        (Phase::Run(ctx), RearrangeSource::Escher) => ctx.step == RunStep::EscherRearrange,
        _ => false,
    };
    if !pending {
        return Err(EngineError::Contract(format!(
            "no {source:?} rearrangement pending"
        )));
    }
    apply(state, &Action::Rearrange { plan: plan.clone() })
}

/// Pheromones bookkeeping for a successful run on `server`.
pub fn successful_run_bookkeeping(state: &GameState, server: ServerId) -> TransitionOutcome {
    let mut next = state.clone();
    let mut events = Vec::new();
    transition::successful_run_bookkeeping(&mut next, server, &mut events);
    TransitionOutcome {
        next_state: next,
        events,
    }
}

/// Whether a payment of `amount` can come from `source` right now.
pub fn can_pay(state: &GameState, source: PaymentSource, amount: u32) -> bool {
    match source {
        PaymentSource::Pool => state.runner.credits >= amount,
        PaymentSource::Pheromones => {
            state.run().is_some_and(|r| r.server == ServerId::Hq)
                && state.runner.rig.pheromones_credits() >= amount
        }
    }
}

pub(crate) fn kp_lynn_actions() -> [Action; 2] {
    [
        Action::KpLynnChoice {
            choice: KpLynnChoice::TakeTag,
        },
        Action::KpLynnChoice {
            choice: KpLynnChoice::EndRun,
        },
    ]
}
