use std::collections::HashSet;

use crate::model::{
    advancement_requirement, AccessTarget, Action, CardId, CardKind, CardSlot, GameState,
    InstallDestination, PaymentSource, Phase, RunContext, RunStep, ServerId, Side, MAX_HAND_SIZE,
};

use super::{can_pay, kp_lynn_actions, EngineError, IllegalReason};

pub(crate) const BREAK_COST: u32 = 2;
pub(crate) const BOOST_COST: u32 = 2;
pub(crate) const BOOST_STRENGTH: u32 = 3;
pub(crate) const REMOVE_TAG_COST: u32 = 2;

/// Exactly the legal actions for whoever decides next, deduplicated and in a
/// fixed order. Rearrangement windows return an empty list: any plan that
/// passes [`super::validate_plan`] is legal there.
pub fn legal_actions(state: &GameState) -> Result<Vec<Action>, EngineError> {
    let actions = match &state.phase {
        Phase::Terminal(o) => return Err(EngineError::Terminal(*o)),
        Phase::TurnStart => return Err(EngineError::TurnStartPending),
        Phase::Action => match state.turn_owner {
            Side::Corp => corp_actions(state),
            Side::Runner => runner_actions(state),
        },
        Phase::Discard => {
            let hand = match state.turn_owner {
                Side::Corp => &state.corp.hq,
                Side::Runner => &state.runner.grip,
            };
            if hand.len() > MAX_HAND_SIZE {
                distinct(hand)
                    .into_iter()
                    .map(|card| Action::DiscardCard { card })
                    .collect()
            } else {
                Vec::new()
            }
        }
        Phase::Damage { .. } => distinct(&state.runner.grip)
            .into_iter()
            .map(|card| Action::DiscardCard { card })
            .collect(),
        Phase::Rearrange => Vec::new(),
        Phase::PriorityRez => {
            let mut out: Vec<Action> = state
                .ice_in_play()
                .filter(|(_, _, ice)| !ice.rezzed)
                .map(|(server, index, _)| Action::RezIce { server, index })
                .collect();
            out.push(Action::Decline);
            out
        }
        Phase::Run(ctx) => run_actions(state, ctx),
    };
    Ok(dedup(actions))
}

fn dedup(actions: Vec<Action>) -> Vec<Action> {
    let mut seen = HashSet::with_capacity(actions.len());
    actions
        .into_iter()
        .filter(|a| seen.insert(a.clone()))
        .collect()
}

fn distinct(cards: &[CardId]) -> Vec<CardId> {
    let mut out = cards.to_vec();
    out.sort();
    out.dedup();
    out
}

fn corp_actions(state: &GameState) -> Vec<Action> {
    let corp = &state.corp;
    let mut out = Vec::new();
    for server in &corp.servers {
        for (index, card) in server.root.iter().enumerate() {
            if card.card.is_agenda()
                && card.advancement >= advancement_requirement(state, card.card)
            {
                out.push(Action::Score {
                    server: server.id,
                    index,
                });
            }
        }
    }
    if corp.clicks > 0 {
        out.push(Action::GainCredit);
        if !corp.rnd.is_empty() {
            out.push(Action::DrawCard);
        }
        for card in distinct(&corp.hq) {
            corp_card_actions(state, card, &mut out);
        }
        if corp.credits >= 1 {
            for server in &corp.servers {
                for (index, c) in server.root.iter().enumerate() {
                    if c.card.is_agenda() {
                        out.push(Action::Advance {
                            target: CardSlot::Root {
                                server: server.id,
                                index,
                            },
                        });
                    }
                }
                for (index, ice) in server.ice.iter().enumerate() {
                    if ice.card.is_advanceable_ice() {
                        out.push(Action::Advance {
                            target: CardSlot::Ice {
                                server: server.id,
                                index,
                            },
                        });
                    }
                }
            }
        }
    }
    out.push(Action::EndTurn);
    out
}

fn corp_card_actions(state: &GameState, card: CardId, out: &mut Vec<Action>) {
    let corp = &state.corp;
    let remotes = corp.servers.iter().filter(|s| s.id.is_remote());
    match card.kind() {
        CardKind::Operation => match card {
            CardId::HedgeFund if corp.credits >= card.def().cost => {
                out.push(Action::PlayCard { card, target: None })
            }
            CardId::SubBoost => {
                for (server, index, ice) in state.ice_in_play() {
                    if ice.rezzed {
                        out.push(Action::PlayCard {
                            card,
                            target: Some(CardSlot::Ice { server, index }),
                        });
                    }
                }
            }
            // Fast Track and other operations are inert in this fragment.
            _ => {}
        },
        CardKind::Agenda | CardKind::Asset => {
            for server in remotes {
                out.push(Action::InstallCard {
                    card,
                    destination: InstallDestination::Server(server.id),
                });
            }
            out.push(Action::InstallCard {
                card,
                destination: InstallDestination::NewRemote,
            });
        }
        CardKind::Upgrade => {
            for server in &corp.servers {
                out.push(Action::InstallCard {
                    card,
                    destination: InstallDestination::Server(server.id),
                });
            }
            out.push(Action::InstallCard {
                card,
                destination: InstallDestination::NewRemote,
            });
        }
        CardKind::Ice => {
            for server in &corp.servers {
                if corp.credits as usize >= server.ice.len() {
                    out.push(Action::InstallCard {
                        card,
                        destination: InstallDestination::Server(server.id),
                    });
                }
            }
            out.push(Action::InstallCard {
                card,
                destination: InstallDestination::NewRemote,
            });
        }
        _ => {}
    }
}

fn runner_actions(state: &GameState) -> Vec<Action> {
    let runner = &state.runner;
    if runner.clicks == 0 {
        return vec![Action::EndTurn];
    }
    let mut out = vec![Action::GainCredit];
    if !runner.stack.is_empty() {
        out.push(Action::DrawCard);
    }
    for card in distinct(&runner.grip) {
        let cost = card.def().cost;
        match card.kind() {
            // Heap-history events (Infiltration) are inert.
            CardKind::Event if card == CardId::Escher && runner.credits >= cost => {
                out.push(Action::PlayCard { card, target: None })
            }
            CardKind::Program if runner.credits >= cost => out.push(Action::InstallCard {
                card,
                destination: InstallDestination::Rig,
            }),
            _ => {}
        }
    }
    if runner.tags > 0 && runner.credits >= REMOVE_TAG_COST {
        out.push(Action::RemoveTag);
    }
    for server in &state.corp.servers {
        out.push(Action::InitiateRun { server: server.id });
    }
    out.push(Action::EndTurn);
    out
}

fn run_actions(state: &GameState, ctx: &RunContext) -> Vec<Action> {
    let Some(server) = state.server(ctx.server) else {
        return Vec::new();
    };
    match ctx.step {
        RunStep::Approach | RunStep::ApproachServer => vec![Action::ContinueRun, Action::JackOut],
        RunStep::KpLynn => kp_lynn_actions().to_vec(),
        RunStep::EscherRearrange => Vec::new(),
        RunStep::Firing { .. } => distinct(
            &state
                .runner
                .rig
                .programs
                .iter()
                .map(|p| p.card)
                .collect::<Vec<_>>(),
        )
        .into_iter()
        .map(|card| Action::TrashProgram { card })
        .collect(),
        RunStep::SelectHqCard => distinct(&state.corp.hq)
            .into_iter()
            .map(|card| Action::AccessCard { card })
            .collect(),
        RunStep::Encounter(enc) => {
            let Some(ice) = server.ice.get(ctx.ice_index) else {
                return Vec::new();
            };
            let unbroken: Vec<usize> = (0..ice.subroutine_count())
                .filter(|&i| !enc.is_broken(i))
                .collect();
            let mut out = Vec::new();
            let sources = [PaymentSource::Pool, PaymentSource::Pheromones];
            if !unbroken.is_empty() && state.runner.rig.can_break(ice) {
                if enc.aurora_strength < ice.strength() {
                    for source in sources {
                        if can_pay(state, source, BOOST_COST) {
                            out.push(Action::BoostAurora { source });
                        }
                    }
                } else {
                    for &index in &unbroken {
                        for source in sources {
                            if can_pay(state, source, BREAK_COST) {
                                out.push(Action::BreakSubroutine { index, source });
                            }
                        }
                    }
                }
            }
            if unbroken.len() >= 2 && state.runner.rig.has(CardId::GrapplingHook) {
                for &keep in &unbroken {
                    out.push(Action::UseGrapplingHook { keep });
                }
            }
            out.push(if unbroken.is_empty() {
                Action::PassIce
            } else {
                Action::ContinueRun
            });
            out
        }
        RunStep::Access => {
            let Some(&target) = ctx.pending_accesses.first() else {
                return Vec::new();
            };
            let Some(card) = accessed_card(state, ctx.server, target) else {
                return vec![Action::DeclineAccess];
            };
            access_actions(state, ctx, target, card)
        }
    }
}

pub(crate) fn accessed_card(
    state: &GameState,
    server: ServerId,
    target: AccessTarget,
) -> Option<CardId> {
    match target {
        AccessTarget::Root(i) => state.server(server)?.root.get(i).map(|c| c.card),
        AccessTarget::Hand(card) => state.corp.hq.contains(&card).then_some(card),
        AccessTarget::RndTop => state.corp.rnd.first().copied(),
        AccessTarget::Archives(i) => state.corp.archives.get(i).map(|a| a.card),
    }
}

pub(crate) fn access_actions(
    state: &GameState,
    ctx: &RunContext,
    target: AccessTarget,
    card: CardId,
) -> Vec<Action> {
    if card.is_agenda() {
        let cost = ctx.steal_click_cost;
        return if cost == 0 {
            vec![Action::Steal { card }]
        } else if state.runner.clicks >= cost {
            vec![Action::Steal { card }, Action::DeclineAccess]
        } else {
            vec![Action::DeclineAccess]
        };
    }
    let mut out = Vec::new();
    let trash_cost = card.def().trash_cost;
    if let (Some(cost), false) = (trash_cost, matches!(target, AccessTarget::Archives(_))) {
        let pheromones = if ctx.server == ServerId::Hq {
            state.runner.rig.pheromones_credits()
        } else {
            0
        };
        for from_pheromones in (0..=cost.min(pheromones)).rev() {
            let pool = cost - from_pheromones;
            if pool <= state.runner.credits {
                out.push(Action::TrashAccessed {
                    card,
                    pool,
                    pheromones: from_pheromones,
                });
            }
        }
    }
    out.push(Action::DeclineAccess);
    out
}

/// Best-effort reason code for an action missing from the legal list.
pub(crate) fn diagnose(state: &GameState, action: &Action) -> IllegalReason {
    let runner = &state.runner;
    match (action, state.run()) {
        (Action::BreakSubroutine { source, .. }, Some(ctx))
        | (Action::BoostAurora { source }, Some(ctx)) => {
            let RunStep::Encounter(enc) = ctx.step else {
                return IllegalReason::WrongPhase;
            };
            let ice = state
                .server(ctx.server)
                .and_then(|s| s.ice.get(ctx.ice_index));
            let Some(ice) = ice else {
                return IllegalReason::WrongPhase;
            };
            if !runner.rig.can_break(ice) {
                return IllegalReason::NoBreaker;
            }
            if *source == PaymentSource::Pheromones && ctx.server != ServerId::Hq {
                return IllegalReason::PheromonesOutsideHq;
            }
            if !can_pay(state, *source, BREAK_COST) {
                return IllegalReason::InsufficientCredits;
            }
            if matches!(action, Action::BreakSubroutine { .. })
                && enc.aurora_strength < ice.strength()
            {
                return IllegalReason::InsufficientStrength;
            }
            IllegalReason::NotAvailable
        }
        (Action::UseGrapplingHook { .. }, Some(ctx)) => {
            if !matches!(ctx.step, RunStep::Encounter(_)) {
                IllegalReason::WrongPhase
            } else if !runner.rig.has(CardId::GrapplingHook) {
                IllegalReason::GrapplingHookAbsent
            } else {
                IllegalReason::NotAvailable
            }
        }
        (Action::TrashAccessed { pheromones, .. }, Some(ctx))
            if *pheromones > 0 && ctx.server != ServerId::Hq =>
        {
            IllegalReason::PheromonesOutsideHq
        }
        (Action::TrashAccessed { .. }, Some(_)) => IllegalReason::InsufficientCredits,
        (Action::Steal { .. }, Some(ctx)) if runner.clicks < ctx.steal_click_cost => {
            IllegalReason::InsufficientClicks
        }
        (_, _) if state.phase == Phase::Action => {
            let clicks = match state.turn_owner {
                Side::Corp => state.corp.clicks,
                Side::Runner => runner.clicks,
            };
            let needs_click = !matches!(action, Action::EndTurn | Action::Score { .. });
            if needs_click && clicks == 0 {
                IllegalReason::InsufficientClicks
            } else {
                match action {
                    Action::PlayCard { .. }
                    | Action::RemoveTag
                    | Action::Advance { .. }
                    | Action::InstallCard { .. } => IllegalReason::InsufficientCredits,
                    _ => IllegalReason::NotAvailable,
                }
            }
        }
        _ => IllegalReason::WrongPhase,
    }
}
