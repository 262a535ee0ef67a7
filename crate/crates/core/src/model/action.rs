use std::fmt;

use serde::{Deserialize, Serialize};

use super::cards::CardId;
use super::state::ServerId;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PaymentSource {
    Pool,
    /// Recurring credits on Pheromones; only spendable during runs on HQ.
    Pheromones,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum KpLynnChoice {
    TakeTag,
    EndRun,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InstallDestination {
    Server(ServerId),
    NewRemote,
    Rig,
}

/// A card position a Corp ability can target.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CardSlot {
    Root { server: ServerId, index: usize },
    Ice { server: ServerId, index: usize },
}

/// Position of one ice piece.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct IceSlot {
    pub server: ServerId,
    pub position: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct IceMove {
    pub from: IceSlot,
    pub to: IceSlot,
}

/// A total mapping from every ice piece in play to its new position.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RearrangementPlan {
    pub assignment: Vec<IceMove>,
}

impl RearrangementPlan {
    /// Builds a plan from the new ice list of every server, each entry naming
    /// the slot the piece currently occupies.
    pub fn from_layout(layout: &[(ServerId, Vec<IceSlot>)]) -> Self {
        let mut assignment: Vec<IceMove> = layout
            .iter()
            .flat_map(|(server, slots)| {
                slots
                    .iter()
                    .enumerate()
                    .map(move |(position, &from)| IceMove {
                        from,
                        to: IceSlot {
                            server: *server,
                            position,
                        },
                    })
            })
            .collect();
        assignment.sort();
        Self { assignment }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Action {
    GainCredit,
    DrawCard,
    PlayCard {
        card: CardId,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        target: Option<CardSlot>,
    },
    InstallCard {
        card: CardId,
        destination: InstallDestination,
    },
    Advance {
        target: CardSlot,
    },
    Score {
        server: ServerId,
        index: usize,
    },
    RemoveTag,
    InitiateRun {
        server: ServerId,
    },
    BoostAurora {
        source: PaymentSource,
    },
    BreakSubroutine {
        index: usize,
        source: PaymentSource,
    },
    UseGrapplingHook {
        keep: usize,
    },
    PassIce,
    JackOut,
    ContinueRun,
    /// The HQ card that gets accessed.
    AccessCard {
        card: CardId,
    },
    TrashAccessed {
        card: CardId,
        pool: u32,
        pheromones: u32,
    },
    Steal {
        card: CardId,
    },
    DeclineAccess,
    KpLynnChoice {
        choice: KpLynnChoice,
    },
    /// The Corp's pick for an Archer "Trash 1 program." subroutine.
    TrashProgram {
        card: CardId,
    },
    /// A card lost to hand-size discard or meat damage.
    DiscardCard {
        card: CardId,
    },
    RezIce {
        server: ServerId,
        index: usize,
    },
    /// Decline an optional effect.
    Decline,
    Rearrange {
        plan: RearrangementPlan,
    },
    EndTurn,
}

impl fmt::Display for Action {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Action::GainCredit => f.write_str("GainCredit"),
            Action::DrawCard => f.write_str("DrawCard"),
            Action::PlayCard { card, target: None } => write!(f, "PlayCard({card})"),
            Action::PlayCard {
                card,
                target: Some(t),
            } => write!(f, "PlayCard({card} -> {t:?})"),
            Action::InstallCard { card, destination } => {
                write!(f, "InstallCard({card} -> {destination:?})")
            }
            Action::Advance { target } => write!(f, "Advance({target:?})"),
            Action::Score { server, index } => write!(f, "Score({server} #{index})"),
            Action::RemoveTag => f.write_str("RemoveTag"),
            Action::InitiateRun { server } => write!(f, "InitiateRun({server})"),
            Action::BoostAurora { source } => write!(f, "BoostAurora({source:?})"),
            Action::BreakSubroutine { index, source } => {
                write!(f, "BreakSubroutine({index}, {source:?})")
            }
            Action::UseGrapplingHook { keep } => write!(f, "UseGrapplingHook(keep {keep})"),
            Action::PassIce => f.write_str("PassIce"),
            Action::JackOut => f.write_str("JackOut"),
            Action::ContinueRun => f.write_str("ContinueRun"),
            Action::AccessCard { card } => write!(f, "AccessCard({card})"),
            Action::TrashAccessed {
                card,
                pool,
                pheromones,
            } => write!(
                f,
                "TrashAccessed({card}, pool {pool}, pheromones {pheromones})"
            ),
            Action::Steal { card } => write!(f, "Steal({card})"),
            Action::DeclineAccess => f.write_str("DeclineAccess"),
            Action::KpLynnChoice { choice } => write!(f, "KPLynnChoice({choice:?})"),
            Action::TrashProgram { card } => write!(f, "TrashProgram({card})"),
            Action::DiscardCard { card } => write!(f, "DiscardCard({card})"),
            Action::RezIce { server, index } => write!(f, "RezIce({server} #{index})"),
            Action::Decline => f.write_str("Decline"),
            Action::Rearrange { plan } => {
                let moved = plan.assignment.iter().filter(|m| m.from != m.to).count();
                write!(
                    f,
                    "Rearrange({moved} of {} pieces moved)",
                    plan.assignment.len()
                )
            }
            Action::EndTurn => f.write_str("EndTurn"),
        }
    }
}
