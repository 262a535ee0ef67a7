//! Domain types shared by the engine, compiler, solver and harness.

mod action;
mod cards;
mod instance;
mod state;

pub use action::{
    Action, CardSlot, IceMove, IceSlot, InstallDestination, KpLynnChoice, PaymentSource,
    RearrangementPlan,
};
pub use cards::{CardDef, CardId, CardKind, Side, Subroutine, Subtype};
pub use instance::PartitionInstance;
pub use state::{
    advancement_requirement, agenda_points, medical_breakthrough_requirement, AccessTarget,
    ArchivedCard, CorpState, Decider, Encounter, GameState, IcePiece, InstalledCard,
    InstalledProgram, Outcome, Phase, RearrangeSource, RunContext, RunStep, RunnerRig, RunnerState,
    Server, ServerId, CORP_CLICKS_PER_TURN, MAX_HAND_SIZE, RUNNER_CLICKS_PER_TURN, WINNING_POINTS,
};

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ModelError {
    #[error("instance is empty")]
    EmptyInstance,
    #[error("instance needs at least two values, got {0}")]
    TooFewValues(usize),
    #[error("value #{index} is not a positive integer")]
    NonPositiveValue { index: usize },
    #[error("instance sum overflows")]
    Overflow,
}

impl GameState {
    /// A bare table: empty central servers, no credits, the given identities,
    /// Corp to move at turn start.
    pub fn empty(corp_identity: CardId, runner_identity: CardId) -> Self {
        GameState {
            corp: CorpState {
                identity: corp_identity,
                credits: 0,
                clicks: 0,
                hq: Vec::new(),
                rnd: Vec::new(),
                archives: Vec::new(),
                servers: vec![
                    Server::new(ServerId::Hq),
                    Server::new(ServerId::Rnd),
                    Server::new(ServerId::Archives),
                ],
                score_area: Vec::new(),
            },
            runner: RunnerState {
                identity: runner_identity,
                credits: 0,
                clicks: 0,
                link: runner_identity.def().link,
                grip: Vec::new(),
                stack: Vec::new(),
                heap: Vec::new(),
                resources: Vec::new(),
                rig: RunnerRig::default(),
                tags: 0,
                score_area: Vec::new(),
            },
            turn_owner: Side::Corp,
            phase: Phase::TurnStart,
        }
    }

    /// Adds a server, keeping server order sorted.
    pub fn add_server(&mut self, server: Server) {
        let pos = self
            .corp
            .servers
            .binary_search_by(|s| s.id.cmp(&server.id))
            .unwrap_or_else(|p| p);
        self.corp.servers.insert(pos, server);
    }
}
