use std::fmt::Write;

use crate::engine::aurora_cost_to_break;
use crate::model::{CardId, GameState, IcePiece, InstalledCard, Phase};

fn ice_label(ice: &IcePiece) -> String {
    let mut label = format!("{} [str {}", ice.card, ice.strength());
    if ice.advancement > 0 {
        let _ = write!(label, ", adv {}", ice.advancement);
    }
    if ice.sub_boosts > 0 {
        let _ = write!(label, ", boost {}", ice.sub_boosts);
    }
    if ice.rezzed {
        if let Ok(Some(cost)) = aurora_cost_to_break(ice) {
            let _ = write!(label, ", break {cost}");
        }
    } else {
        label.push_str(", unrezzed");
    }
    label.push(']');
    label
}

fn root_label(card: &InstalledCard) -> String {
    let mut label = card.card.to_string();
    if card.advancement > 0 {
        let _ = write!(label, " ({} adv)", card.advancement);
    }
    if !card.rezzed && !card.card.is_agenda() {
        label.push_str(" (unrezzed)");
    }
    label
}

fn list(cards: &[CardId]) -> String {
    if cards.is_empty() {
        "-".into()
    } else {
        cards
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(", ")
    }
}

/// Text diagram of a position: each server's ice outermost first, then its
/// root, followed by both players' zones and pools.
pub fn render(state: &GameState) -> String {
    let mut out = String::new();
    let corp = &state.corp;
    let _ = writeln!(
        out,
        "Corp: {}  credits {}  clicks {}  points {}",
        corp.identity,
        corp.credits,
        corp.clicks,
        state.corp_points()
    );
    for server in &corp.servers {
        let _ = writeln!(out, "  {}", server.id);
        if server.ice.is_empty() {
            let _ = writeln!(out, "    (no ice)");
        }
        for (i, ice) in server.ice.iter().enumerate() {
            let _ = writeln!(out, "    {i:>2}. {}", ice_label(ice));
        }
        let root: Vec<String> = server.root.iter().map(root_label).collect();
        if !root.is_empty() {
            let _ = writeln!(out, "    root: {}", root.join(", "));
        }
        match server.id {
            crate::model::ServerId::Hq => {
                let _ = writeln!(out, "    hand: {}", list(&corp.hq));
            }
            crate::model::ServerId::Rnd => {
                let _ = writeln!(out, "    deck (top first): {}", list(&corp.rnd));
            }
            crate::model::ServerId::Archives => {
                let cards: Vec<String> = corp
                    .archives
                    .iter()
                    .map(|a| {
                        if a.faceup {
                            a.card.to_string()
                        } else {
                            format!("{} (facedown)", a.card)
                        }
                    })
                    .collect();
                let shown = if cards.is_empty() {
                    "-".into()
                } else {
                    cards.join(", ")
                };
                let _ = writeln!(out, "    discard: {shown}");
            }
            _ => {}
        }
    }
    let _ = writeln!(out, "  score area: {}", list(&corp.score_area));
    let r = &state.runner;
    let _ = writeln!(
        out,
        "Runner: {}  credits {}  clicks {}  tags {}  points {}",
        r.identity,
        r.credits,
        r.clicks,
        r.tags,
        state.runner_points()
    );
    let rig: Vec<String> = r
        .rig
        .programs
        .iter()
        .map(|p| {
            if p.card == CardId::Pheromones {
                format!(
                    "{} ({} counters, {} credits)",
                    p.card, p.virus_counters, p.recurring_credits
                )
            } else {
                p.card.to_string()
            }
        })
        .collect();
    let rig = if rig.is_empty() {
        "-".into()
    } else {
        rig.join(", ")
    };
    let _ = writeln!(out, "  rig: {rig}");
    let _ = writeln!(out, "  grip: {}", list(&r.grip));
    let _ = writeln!(out, "  stack: {}", list(&r.stack));
    let _ = writeln!(out, "  heap: {}", list(&r.heap));
    let _ = writeln!(out, "  score area: {}", list(&r.score_area));
    let phase = match &state.phase {
        Phase::Run(ctx) => format!(
            "run on {} (ice {}, {:?})",
            ctx.server, ctx.ice_index, ctx.step
        ),
        Phase::Terminal(o) => format!("over: {o}"),
        other => format!("{other:?}"),
    };
    let _ = writeln!(out, "{:?} to move; phase: {phase}", state.turn_owner);
    out
}
