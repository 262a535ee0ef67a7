use crate::model::{
    AccessTarget, Action, ArchivedCard, CardId, CardKind, CardSlot, Encounter, GameState, IcePiece,
    InstallDestination, InstalledCard, InstalledProgram, KpLynnChoice, Outcome, PaymentSource,
    Phase, RearrangeSource, RunContext, RunStep, Server, ServerId, Side, Subroutine,
    CORP_CLICKS_PER_TURN, MAX_HAND_SIZE, RUNNER_CLICKS_PER_TURN, WINNING_POINTS,
};

use super::legal::{
    access_actions, accessed_card, BOOST_COST, BOOST_STRENGTH, BREAK_COST, REMOVE_TAG_COST,
};
use super::rearrange::apply_plan;
use super::Event;

const DRT_MEAT_DAMAGE: u32 = 2;

/// Applies a legal action. Automatic follow-ups are left to [`settle`].
pub(super) fn step(state: &mut GameState, action: &Action, ev: &mut Vec<Event>) {
    let side = state.turn_owner;
    match action {
        Action::GainCredit => {
            spend_click(state, side, 1, ev);
            gain(state, side, 1, ev);
        }
        Action::DrawCard => {
            spend_click(state, side, 1, ev);
            let card = match side {
                Side::Corp => {
                    let card = state.corp.rnd.remove(0);
                    state.corp.hq.push(card);
                    card
                }
                Side::Runner => {
                    let card = state.runner.stack.remove(0);
                    state.runner.grip.push(card);
                    card
                }
            };
            ev.push(Event::CardDrawn { side, card });
        }
        Action::PlayCard { card, target } => play_card(state, *card, *target, ev),
        Action::InstallCard { card, destination } => install(state, *card, *destination, ev),
        Action::Advance { target } => {
            spend_click(state, Side::Corp, 1, ev);
            pay_corp(state, 1, ev);
            let tokens = match *target {
                CardSlot::Root { server, index } => {
                    let c = &mut state.server_mut(server).expect("server").root[index];
                    c.advancement += 1;
                    (c.card, c.advancement)
                }
                CardSlot::Ice { server, index } => {
                    let c = &mut state.server_mut(server).expect("server").ice[index];
                    c.advancement += 1;
                    (c.card, c.advancement)
                }
            };
            ev.push(Event::CardAdvanced {
                card: tokens.0,
                tokens: tokens.1,
            });
        }
        Action::Score { server, index } => score(state, *server, *index, ev),
        Action::RemoveTag => {
            spend_click(state, Side::Runner, 1, ev);
            pay_runner(state, REMOVE_TAG_COST, 0, ev);
            state.runner.tags -= 1;
            ev.push(Event::TagRemoved);
        }
        Action::InitiateRun { server } => {
            spend_click(state, Side::Runner, 1, ev);
            start_run(state, *server, false, ev);
        }
        Action::BoostAurora { source } => {
            pay_from(state, *source, BOOST_COST, ev);
            if let Some(RunStep::Encounter(enc)) = state.run_mut().map(|r| &mut r.step) {
                enc.aurora_strength += BOOST_STRENGTH;
                ev.push(Event::AuroraBoosted {
                    strength: enc.aurora_strength,
                });
            }
        }
        Action::BreakSubroutine { index, source } => {
            pay_from(state, *source, BREAK_COST, ev);
            let card = current_ice(state).map(|i| i.card);
            if let Some(RunStep::Encounter(enc)) = state.run_mut().map(|r| &mut r.step) {
                enc.broken |= 1 << index;
            }
            if let Some(card) = card {
                ev.push(Event::SubroutineBroken {
                    card,
                    index: *index,
                });
            }
        }
        Action::UseGrapplingHook { keep } => {
            trash_program(state, CardId::GrapplingHook, ev);
            let ice = current_ice(state).expect("encountered ice");
            if let Some(RunStep::Encounter(enc)) = state.run_mut().map(|r| &mut r.step) {
                for i in 0..ice.subroutine_count() {
                    if i != *keep && !enc.is_broken(i) {
                        enc.broken |= 1 << i;
                        ev.push(Event::SubroutineBroken {
                            card: ice.card,
                            index: i,
                        });
                    }
                }
            }
        }
        Action::ContinueRun => {
            let ctx = state.run().expect("run").clone();
            match ctx.step {
                RunStep::Approach => begin_encounter(state, ev),
                RunStep::Encounter(enc) => fire_from(state, 0, enc.broken, ev),
                RunStep::ApproachServer => declare_success(state, ev),
                _ => unreachable!("ContinueRun offered outside approach/encounter"),
            }
        }
        Action::PassIce => pass_ice(state, ev),
        Action::JackOut => end_run(state, false, ev),
        Action::AccessCard { card } => {
            let ctx = state.run_mut().expect("run");
            ctx.pending_accesses.push(AccessTarget::Hand(*card));
            ctx.step = RunStep::Access;
        }
        Action::TrashAccessed {
            card,
            pool,
            pheromones,
        } => {
            pay_runner(state, *pool, *pheromones, ev);
            let target = pop_access(state);
            let server = state.run().expect("run").server;
            take_accessed(state, server, target);
            state.corp.archives.push(ArchivedCard {
                card: *card,
                faceup: true,
            });
            ev.push(Event::CardTrashed { card: *card });
        }
        Action::Steal { card } => {
            let cost = state.run().expect("run").steal_click_cost;
            if cost > 0 {
                spend_click(state, Side::Runner, cost, ev);
            }
            let target = pop_access(state);
            let server = state.run().expect("run").server;
            take_accessed(state, server, target);
            state.runner.score_area.push(*card);
            ev.push(Event::AgendaStolen { card: *card });
            check_points(state, ev);
        }
        Action::DeclineAccess => {
            pop_access(state);
        }
        Action::KpLynnChoice { choice } => match choice {
            KpLynnChoice::TakeTag => {
                state.runner.tags += 1;
                ev.push(Event::TagTaken);
                state.run_mut().expect("run").step = RunStep::ApproachServer;
            }
            KpLynnChoice::EndRun => end_run(state, false, ev),
        },
        Action::TrashProgram { card } => {
            trash_program(state, *card, ev);
            if let Some(RunStep::Firing { next_sub, broken }) = state.run().map(|r| r.step) {
                fire_from(state, next_sub + 1, broken, ev);
            }
        }
        Action::DiscardCard { card } => match state.phase {
            Phase::Damage { meat } => {
                remove_one(&mut state.runner.grip, *card);
                state.runner.heap.push(*card);
                ev.push(Event::CardDiscarded { card: *card });
                state.phase = Phase::Damage { meat: meat - 1 };
            }
            _ => match side {
                Side::Corp => {
                    remove_one(&mut state.corp.hq, *card);
                    state.corp.archives.push(ArchivedCard {
                        card: *card,
                        faceup: false,
                    });
                    ev.push(Event::CardDiscarded { card: *card });
                }
                Side::Runner => {
                    remove_one(&mut state.runner.grip, *card);
                    state.runner.heap.push(*card);
                    ev.push(Event::CardDiscarded { card: *card });
                }
            },
        },
        Action::RezIce { server, index } => {
            let ice = &mut state.server_mut(*server).expect("server").ice[*index];
            ice.rezzed = true;
            ev.push(Event::IceRezzed { card: ice.card });
            state.phase = Phase::Action;
        }
        Action::Decline => state.phase = Phase::Action,
        Action::Rearrange { plan } => {
            apply_plan(state, plan).expect("plan validated before apply");
            match state.phase {
                Phase::Run(_) => {
                    ev.push(Event::IceRearranged {
                        source: RearrangeSource::Escher,
                    });
                    end_run(state, true, ev);
                }
                _ => {
                    ev.push(Event::IceRearranged {
                        source: RearrangeSource::MandatorySeedReplacement,
                    });
                    state.phase = Phase::Action;
                }
            }
        }
        Action::EndTurn => {
            ev.push(Event::TurnEnded { side });
            state.phase = Phase::Discard;
        }
    }
}

/// Runs every automatic step until a decision or the end of the game.
pub(super) fn settle(state: &mut GameState, ev: &mut Vec<Event>) {
    loop {
        match &state.phase {
            Phase::Terminal(_) | Phase::Action | Phase::Rearrange | Phase::PriorityRez => return,
            Phase::TurnStart => begin_turn(state, ev),
            Phase::Discard => {
                let hand = match state.turn_owner {
                    Side::Corp => state.corp.hq.len(),
                    Side::Runner => state.runner.grip.len(),
                };
                if hand > MAX_HAND_SIZE {
                    return;
                }
                pass_turn(state);
            }
            Phase::Damage { meat } => {
                let meat = *meat;
                let grip = &state.runner.grip;
                if meat == 0 {
                    state.phase = Phase::Action;
                } else if meat as usize > grip.len() {
                    let lost: Vec<CardId> = state.runner.grip.drain(..).collect();
                    state.runner.heap.extend(lost);
                    finish(state, Outcome::RunnerFlatline, ev);
                } else if grip.iter().all(|&c| c == grip[0]) {
                    let card = state.runner.grip.pop().expect("non-empty grip");
                    state.runner.heap.push(card);
                    ev.push(Event::CardDiscarded { card });
                    state.phase = Phase::Damage { meat: meat - 1 };
                } else {
                    return;
                }
            }
            Phase::Run(ctx) => {
                let ctx = ctx.clone();
                let server = state.server(ctx.server).expect("run server").clone();
                match ctx.step {
                    RunStep::Approach => {
                        if ctx.ice_index >= server.ice.len() {
                            after_all_ice(state, &server);
                        } else if !server.ice[ctx.ice_index].rezzed {
                            let run = state.run_mut().expect("run");
                            run.ice_index += 1;
                            ev.push(Event::IcePassed {
                                card: server.ice[ctx.ice_index].card,
                            });
                        } else if ctx.ice_index == 0 {
                            begin_encounter(state, ev);
                        } else {
                            return;
                        }
                    }
                    RunStep::ApproachServer => {
                        if server.ice.is_empty() {
                            declare_success(state, ev);
                        } else {
                            return;
                        }
                    }
                    RunStep::SelectHqCard => {
                        let mut hand = state.corp.hq.clone();
                        hand.sort();
                        hand.dedup();
                        let run = state.run_mut().expect("run");
                        match hand.as_slice() {
                            [] => run.step = RunStep::Access,
                            [only] => {
                                run.pending_accesses.push(AccessTarget::Hand(*only));
                                run.step = RunStep::Access;
                            }
                            _ => return,
                        }
                    }
                    RunStep::Access => {
                        if ctx.pending_accesses.is_empty() {
                            end_run(state, true, ev);
                        } else {
                            let target = ctx.pending_accesses[0];
                            match accessed_card(state, ctx.server, target) {
                                Some(card) => {
                                    ev.push(Event::CardAccessed { card });
                                    let run = state.run().expect("run");
                                    let choices = access_actions(state, run, target, card);
                                    if choices != [Action::DeclineAccess] {
                                        return;
                                    }
                                    pop_access(state);
                                }
                                None => {
                                    pop_access(state);
                                }
                            }
                        }
                    }
                    RunStep::Encounter(_)
                    | RunStep::Firing { .. }
                    | RunStep::KpLynn
                    | RunStep::EscherRearrange => return,
                }
            }
        }
    }
}

fn begin_turn(state: &mut GameState, ev: &mut Vec<Event>) {
    let side = state.turn_owner;
    ev.push(Event::TurnStarted { side });
    match side {
        Side::Corp => {
            state.corp.clicks = CORP_CLICKS_PER_TURN;
            if state.corp.rnd.is_empty() {
                finish(state, Outcome::CorpDecksOut, ev);
                return;
            }
            let card = state.corp.rnd.remove(0);
            state.corp.hq.push(card);
            ev.push(Event::CardDrawn {
                side: Side::Corp,
                card,
            });
        }
        Side::Runner => {
            state.runner.clicks = RUNNER_CLICKS_PER_TURN;
            if let Some(p) = state.runner.rig.pheromones_mut() {
                p.recurring_credits = p.virus_counters;
                let credits = p.recurring_credits;
                ev.push(Event::RecurringCreditsRefreshed {
                    card: CardId::Pheromones,
                    credits,
                });
            }
        }
    }
    state.phase = Phase::Action;
}

fn pass_turn(state: &mut GameState) {
    match state.turn_owner {
        Side::Corp => state.corp.clicks = 0,
        Side::Runner => state.runner.clicks = 0,
    }
    state.turn_owner = state.turn_owner.opponent();
    state.phase = Phase::TurnStart;
}

fn finish(state: &mut GameState, outcome: Outcome, ev: &mut Vec<Event>) {
    state.phase = Phase::Terminal(outcome);
    ev.push(Event::GameOver { outcome });
}

fn check_points(state: &mut GameState, ev: &mut Vec<Event>) {
    if state.runner_points() >= WINNING_POINTS {
        finish(state, Outcome::RunnerWin, ev);
    } else if state.corp_points() >= WINNING_POINTS {
        finish(state, Outcome::CorpWin, ev);
    }
}

fn spend_click(state: &mut GameState, side: Side, clicks: u32, ev: &mut Vec<Event>) {
    match side {
        Side::Corp => state.corp.clicks -= clicks,
        Side::Runner => state.runner.clicks -= clicks,
    }
    ev.push(Event::ClicksSpent { side, clicks });
}

fn gain(state: &mut GameState, side: Side, amount: u32, ev: &mut Vec<Event>) {
    match side {
        Side::Corp => state.corp.credits += amount,
        Side::Runner => state.runner.credits += amount,
    }
    ev.push(Event::CreditsGained { side, amount });
}

fn pay_corp(state: &mut GameState, amount: u32, ev: &mut Vec<Event>) {
    state.corp.credits -= amount;
    ev.push(Event::CreditsPaid {
        side: Side::Corp,
        pool: amount,
        pheromones: 0,
    });
}

fn pay_runner(state: &mut GameState, pool: u32, pheromones: u32, ev: &mut Vec<Event>) {
    state.runner.credits -= pool;
    if pheromones > 0 {
        let p = state
            .runner
            .rig
            .pheromones_mut()
            .expect("Pheromones installed");
        p.recurring_credits -= pheromones;
    }
    ev.push(Event::CreditsPaid {
        side: Side::Runner,
        pool,
        pheromones,
    });
}

fn pay_from(state: &mut GameState, source: PaymentSource, amount: u32, ev: &mut Vec<Event>) {
    match source {
        PaymentSource::Pool => pay_runner(state, amount, 0, ev),
        PaymentSource::Pheromones => pay_runner(state, 0, amount, ev),
    }
}

fn remove_one(cards: &mut Vec<CardId>, card: CardId) {
    if let Some(pos) = cards.iter().position(|&c| c == card) {
        cards.remove(pos);
    }
}

fn play_card(state: &mut GameState, card: CardId, target: Option<CardSlot>, ev: &mut Vec<Event>) {
    let side = card.side();
    spend_click(state, side, 1, ev);
    ev.push(Event::CardPlayed { card });
    match card {
        CardId::HedgeFund => {
            pay_corp(state, card.def().cost, ev);
            remove_one(&mut state.corp.hq, card);
            gain(state, Side::Corp, 9, ev);
            state
                .corp
                .archives
                .push(ArchivedCard { card, faceup: true });
        }
        CardId::SubBoost => {
            remove_one(&mut state.corp.hq, card);
            if let Some(CardSlot::Ice { server, index }) = target {
                state.server_mut(server).expect("server").ice[index].sub_boosts += 1;
            }
        }
        CardId::Escher => {
            pay_runner(state, card.def().cost, 0, ev);
            remove_one(&mut state.runner.grip, card);
            state.runner.heap.push(card);
            start_run(state, ServerId::Hq, true, ev);
        }
        _ => unreachable!("{card} is not playable"),
    }
}

fn install(
    state: &mut GameState,
    card: CardId,
    destination: InstallDestination,
    ev: &mut Vec<Event>,
) {
    ev.push(Event::CardInstalled { card });
    if destination == InstallDestination::Rig {
        spend_click(state, Side::Runner, 1, ev);
        pay_runner(state, card.def().cost, 0, ev);
        remove_one(&mut state.runner.grip, card);
        state.runner.rig.programs.push(InstalledProgram::new(card));
        return;
    }
    spend_click(state, Side::Corp, 1, ev);
    remove_one(&mut state.corp.hq, card);
    let id = match destination {
        InstallDestination::Server(id) => id,
        _ => {
            let id = ServerId::Remote(state.next_remote_id());
            state.add_server(Server::new(id));
            id
        }
    };
    if card.kind() == CardKind::Ice {
        let tax = state.server(id).expect("server").ice.len() as u32;
        if tax > 0 {
            pay_corp(state, tax, ev);
        }
        let server = state.server_mut(id).expect("server");
        server.ice.insert(
            0,
            IcePiece {
                rezzed: false,
                ..IcePiece::rezzed(card)
            },
        );
        return;
    }
    let server = state.server_mut(id).expect("server");
    let mut displaced = Vec::new();
    if matches!(card.kind(), CardKind::Agenda | CardKind::Asset) {
        server.root.retain(|c| {
            let occupies = matches!(c.card.kind(), CardKind::Agenda | CardKind::Asset);
            if occupies {
                displaced.push(c.card);
            }
            !occupies
        });
    }
    server.root.push(InstalledCard::unrezzed(card));
    for old in displaced {
        state.corp.archives.push(ArchivedCard {
            card: old,
            faceup: true,
        });
        ev.push(Event::CardTrashed { card: old });
    }
}

fn score(state: &mut GameState, server: ServerId, index: usize, ev: &mut Vec<Event>) {
    let card = state
        .server_mut(server)
        .expect("server")
        .root
        .remove(index)
        .card;
    state.corp.score_area.push(card);
    ev.push(Event::AgendaScored { card });
    check_points(state, ev);
    if state.is_terminal() {
        return;
    }
    match card {
        CardId::MandatorySeedReplacement => state.phase = Phase::Rearrange,
        CardId::PriorityRequisition if state.ice_in_play().any(|(_, _, i)| !i.rezzed) => {
            state.phase = Phase::PriorityRez
        }
        _ => {}
    }
}

fn start_run(state: &mut GameState, server: ServerId, escher: bool, ev: &mut Vec<Event>) {
    ev.push(Event::RunStarted { server });
    state.phase = Phase::Run(RunContext::new(server, escher));
}

fn current_ice(state: &GameState) -> Option<IcePiece> {
    let ctx = state.run()?;
    state.server(ctx.server)?.ice.get(ctx.ice_index).copied()
}

fn begin_encounter(state: &mut GameState, ev: &mut Vec<Event>) {
    let aurora = if state.runner.rig.has(CardId::Aurora) {
        CardId::Aurora.def().strength.unwrap_or(0)
    } else {
        0
    };
    if let Some(ice) = current_ice(state) {
        ev.push(Event::IceEncountered { card: ice.card });
    }
    state.run_mut().expect("run").step = RunStep::Encounter(Encounter {
        broken: 0,
        aurora_strength: aurora,
    });
}

/// Fires one subroutine without Corp choices; `TrashProgram` on an empty rig
/// does nothing.
pub(super) fn fire_one(
    state: &mut GameState,
    card: CardId,
    index: usize,
    sub: Subroutine,
    ev: &mut Vec<Event>,
) {
    ev.push(Event::SubroutineFired {
        card,
        index,
        subroutine: sub,
    });
    match sub {
        Subroutine::GainCorpCredits(n) => gain(state, Side::Corp, n, ev),
        Subroutine::LoseClick => {
            if state.runner.clicks > 0 {
                state.runner.clicks -= 1;
                ev.push(Event::ClickLost);
            }
        }
        Subroutine::EndTheRun => end_run(state, false, ev),
        Subroutine::TrashProgram => {}
    }
}

/// Fires every unbroken subroutine from `start` in printed order, pausing
/// for the Corp's program choice, and passes the ice if the run survives.
fn fire_from(state: &mut GameState, start: usize, broken: u64, ev: &mut Vec<Event>) {
    let ice = current_ice(state).expect("encountered ice");
    for index in start..ice.subroutine_count() {
        if index < 64 && broken & (1 << index) != 0 {
            continue;
        }
        let sub = ice.subroutine(index).expect("subroutine");
        if sub == Subroutine::TrashProgram && !state.runner.rig.programs.is_empty() {
            ev.push(Event::SubroutineFired {
                card: ice.card,
                index,
                subroutine: sub,
            });
            state.run_mut().expect("run").step = RunStep::Firing {
                next_sub: index,
                broken,
            };
            return;
        }
        fire_one(state, ice.card, index, sub, ev);
        if state.run().is_none() {
            return;
        }
    }
    pass_ice(state, ev);
}

pub(super) fn trash_program(state: &mut GameState, card: CardId, ev: &mut Vec<Event>) {
    let programs = &mut state.runner.rig.programs;
    if let Some(pos) = programs.iter().position(|p| p.card == card) {
        programs.remove(pos);
        state.runner.heap.push(card);
        ev.push(Event::ProgramTrashed { card });
    }
}

fn pass_ice(state: &mut GameState, ev: &mut Vec<Event>) {
    if let Some(ice) = current_ice(state) {
        ev.push(Event::IcePassed { card: ice.card });
    }
    let run = state.run_mut().expect("run");
    run.ice_index += 1;
    run.step = RunStep::Approach;
}

fn after_all_ice(state: &mut GameState, server: &Server) {
    let run = state.run_mut().expect("run");
    run.step = if server.has_rezzed(CardId::KpLynn) {
        RunStep::KpLynn
    } else {
        RunStep::ApproachServer
    };
}

pub(super) fn successful_run_bookkeeping(
    state: &mut GameState,
    server: ServerId,
    ev: &mut Vec<Event>,
) {
    if server != ServerId::Hq {
        return;
    }
    // The new counter adds no spendable credit until the next refresh.
    if let Some(p) = state.runner.rig.pheromones_mut() {
        p.virus_counters += 1;
        ev.push(Event::VirusCounterPlaced {
            card: CardId::Pheromones,
            counters: p.virus_counters,
        });
    }
}

fn declare_success(state: &mut GameState, ev: &mut Vec<Event>) {
    let ctx = state.run().expect("run").clone();
    ev.push(Event::RunSuccessful { server: ctx.server });
    successful_run_bookkeeping(state, ctx.server, ev);
    let strongboxes = state
        .server(ctx.server)
        .expect("server")
        .count_rezzed(CardId::Strongbox) as u32;
    let roots = state.server(ctx.server).expect("server").root.len();
    let run = state.run_mut().expect("run");
    run.successful = true;
    if ctx.escher {
        run.step = RunStep::EscherRearrange;
        return;
    }
    run.steal_click_cost = strongboxes;
    run.pending_accesses = (0..roots).rev().map(AccessTarget::Root).collect();
    run.step = RunStep::Access;
    match ctx.server {
        ServerId::Hq => {
            if !state.corp.hq.is_empty() {
                state.run_mut().expect("run").step = RunStep::SelectHqCard;
            }
        }
        ServerId::Rnd => {
            if !state.corp.rnd.is_empty() {
                state
                    .run_mut()
                    .expect("run")
                    .pending_accesses
                    .push(AccessTarget::RndTop);
            }
        }
        ServerId::Archives => {
            let n = state.corp.archives.len();
            let run = state.run_mut().expect("run");
            run.pending_accesses
                .extend((0..n).rev().map(AccessTarget::Archives));
        }
        ServerId::Remote(_) => {}
    }
}

fn pop_access(state: &mut GameState) -> AccessTarget {
    state.run_mut().expect("run").pending_accesses.remove(0)
}

fn take_accessed(state: &mut GameState, server: ServerId, target: AccessTarget) {
    match target {
        AccessTarget::Root(i) => {
            state.server_mut(server).expect("server").root.remove(i);
        }
        AccessTarget::Hand(card) => remove_one(&mut state.corp.hq, card),
        AccessTarget::RndTop => {
            state.corp.rnd.remove(0);
        }
        AccessTarget::Archives(i) => {
            state.corp.archives.remove(i);
        }
    }
}

fn end_run(state: &mut GameState, successful: bool, ev: &mut Vec<Event>) {
    let Some(ctx) = state.run() else {
        return;
    };
    ev.push(Event::RunEnded {
        server: ctx.server,
        successful,
    });
    state.phase = Phase::Action;
    if successful && state.runner.tags > 0 {
        let teams = state
            .corp
            .servers
            .iter()
            .map(|s| s.count_rezzed(CardId::DedicatedResponseTeam) as u32)
            .sum::<u32>();
        let meat = teams * DRT_MEAT_DAMAGE;
        if meat > 0 {
            ev.push(Event::MeatDamage { amount: meat });
            state.phase = Phase::Damage { meat };
        }
    }
}
