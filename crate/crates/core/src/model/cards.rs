//! The closed card catalog: every card either construction places on the
//! table, with its printed numbers.

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Corp,
    Runner,
}

impl Side {
    pub fn opponent(self) -> Side {
        match self {
            Side::Corp => Side::Runner,
            Side::Runner => Side::Corp,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CardKind {
    Identity,
    Agenda,
    Asset,
    Upgrade,
    Operation,
    Ice,
    Event,
    Program,
    Resource,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Subtype {
    Barrier,
    CodeGate,
    Sentry,
    Destroyer,
    Icebreaker,
    Fracter,
    Virus,
    Hostile,
    Executive,
    Security,
    Research,
    Transaction,
    Condition,
    Run,
    Megacorp,
    Division,
    Natural,
    Virtual,
}

/// A printed ice subroutine.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Subroutine {
    GainCorpCredits(u32),
    TrashProgram,
    LoseClick,
    EndTheRun,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CardId {
    Archer,
    DedicatedResponseTeam,
    Enigma,
    FastTrack,
    HedgeFund,
    IceWall,
    KpLynn,
    MandatorySeedReplacement,
    MedicalBreakthrough,
    NiseiDivision,
    PriorityRequisition,
    Strongbox,
    SubBoost,
    WallOfStatic,
    WeylandBbw,
    Aurora,
    Escher,
    Exile,
    GrapplingHook,
    Infiltration,
    Pheromones,
    TheShadowNet,
}

/// Printed data for one card. `cost` is the rez cost for rezzable Corp cards,
/// the play cost for operations and events, and the install cost for programs.
#[derive(Debug, PartialEq, Eq)]
pub struct CardDef {
    pub id: CardId,
    pub name: &'static str,
    pub side: Side,
    pub kind: CardKind,
    pub subtypes: &'static [Subtype],
    pub cost: u32,
    pub strength: Option<u32>,
    pub trash_cost: Option<u32>,
    pub agenda_points: u32,
    pub advancement_requirement: u32,
    pub subroutines: &'static [Subroutine],
    pub memory: u32,
    pub link: u32,
}

const BASE: CardDef = CardDef {
    id: CardId::HedgeFund,
    name: "",
    side: Side::Corp,
    kind: CardKind::Operation,
    subtypes: &[],
    cost: 0,
    strength: None,
    trash_cost: None,
    agenda_points: 0,
    advancement_requirement: 0,
    subroutines: &[],
    memory: 0,
    link: 0,
};

use CardKind as K;
use Subroutine as R;
use Subtype as S;

static ARCHER: CardDef = CardDef {
    id: CardId::Archer,
    name: "Archer",
    kind: K::Ice,
    subtypes: &[S::Sentry, S::Destroyer],
    cost: 4,
    strength: Some(6),
    subroutines: &[
        R::GainCorpCredits(2),
        R::TrashProgram,
        R::TrashProgram,
        R::EndTheRun,
    ],
    ..BASE
};
static DEDICATED_RESPONSE_TEAM: CardDef = CardDef {
    id: CardId::DedicatedResponseTeam,
    name: "Dedicated Response Team",
    kind: K::Asset,
    subtypes: &[S::Hostile],
    cost: 2,
    trash_cost: Some(3),
    ..BASE
};
static ENIGMA: CardDef = CardDef {
    id: CardId::Enigma,
    name: "Enigma",
    kind: K::Ice,
    subtypes: &[S::CodeGate],
    cost: 3,
    strength: Some(2),
    subroutines: &[R::LoseClick, R::EndTheRun],
    ..BASE
};
static FAST_TRACK: CardDef = CardDef {
    id: CardId::FastTrack,
    name: "Fast Track",
    kind: K::Operation,
    ..BASE
};
static HEDGE_FUND: CardDef = CardDef {
    id: CardId::HedgeFund,
    name: "Hedge Fund",
    kind: K::Operation,
    subtypes: &[S::Transaction],
    cost: 5,
    ..BASE
};
static ICE_WALL: CardDef = CardDef {
    id: CardId::IceWall,
    name: "Ice Wall",
    kind: K::Ice,
    subtypes: &[S::Barrier],
    cost: 1,
    strength: Some(1),
    subroutines: &[R::EndTheRun],
    ..BASE
};
static KP_LYNN: CardDef = CardDef {
    id: CardId::KpLynn,
    name: "K. P. Lynn",
    kind: K::Upgrade,
    subtypes: &[S::Executive],
    cost: 1,
    trash_cost: Some(3),
    ..BASE
};
static MANDATORY_SEED_REPLACEMENT: CardDef = CardDef {
    id: CardId::MandatorySeedReplacement,
    name: "Mandatory Seed Replacement",
    kind: K::Agenda,
    subtypes: &[S::Security],
    agenda_points: 2,
    advancement_requirement: 4,
    ..BASE
};
static MEDICAL_BREAKTHROUGH: CardDef = CardDef {
    id: CardId::MedicalBreakthrough,
    name: "Medical Breakthrough",
    kind: K::Agenda,
    subtypes: &[S::Research],
    agenda_points: 2,
    advancement_requirement: 4,
    ..BASE
};
static NISEI_DIVISION: CardDef = CardDef {
    id: CardId::NiseiDivision,
    name: "Nisei Division: The Next Generation",
    kind: K::Identity,
    subtypes: &[S::Division],
    ..BASE
};
static PRIORITY_REQUISITION: CardDef = CardDef {
    id: CardId::PriorityRequisition,
    name: "Priority Requisition",
    kind: K::Agenda,
    subtypes: &[S::Security],
    agenda_points: 3,
    advancement_requirement: 5,
    ..BASE
};
static STRONGBOX: CardDef = CardDef {
    id: CardId::Strongbox,
    name: "Strongbox",
    kind: K::Upgrade,
    cost: 3,
    trash_cost: Some(1),
    ..BASE
};
static SUB_BOOST: CardDef = CardDef {
    id: CardId::SubBoost,
    name: "Sub Boost",
    kind: K::Operation,
    subtypes: &[S::Condition],
    ..BASE
};
static WALL_OF_STATIC: CardDef = CardDef {
    id: CardId::WallOfStatic,
    name: "Wall of Static",
    kind: K::Ice,
    subtypes: &[S::Barrier],
    cost: 3,
    strength: Some(3),
    subroutines: &[R::EndTheRun],
    ..BASE
};
static WEYLAND_BBW: CardDef = CardDef {
    id: CardId::WeylandBbw,
    name: "Weyland Consortium: Building a Better World",
    kind: K::Identity,
    subtypes: &[S::Megacorp],
    ..BASE
};
static AURORA: CardDef = CardDef {
    id: CardId::Aurora,
    name: "Aurora",
    side: Side::Runner,
    kind: K::Program,
    subtypes: &[S::Icebreaker, S::Fracter],
    cost: 3,
    strength: Some(1),
    memory: 1,
    ..BASE
};
static ESCHER: CardDef = CardDef {
    id: CardId::Escher,
    name: "Escher",
    side: Side::Runner,
    kind: K::Event,
    subtypes: &[S::Run],
    cost: 3,
    ..BASE
};
static EXILE: CardDef = CardDef {
    id: CardId::Exile,
    name: "Exile: Streethawk",
    side: Side::Runner,
    kind: K::Identity,
    subtypes: &[S::Natural],
    link: 1,
    ..BASE
};
static GRAPPLING_HOOK: CardDef = CardDef {
    id: CardId::GrapplingHook,
    name: "Grappling Hook",
    side: Side::Runner,
    kind: K::Program,
    cost: 2,
    memory: 1,
    ..BASE
};
static INFILTRATION: CardDef = CardDef {
    id: CardId::Infiltration,
    name: "Infiltration",
    side: Side::Runner,
    kind: K::Event,
    ..BASE
};
static PHEROMONES: CardDef = CardDef {
    id: CardId::Pheromones,
    name: "Pheromones",
    side: Side::Runner,
    kind: K::Program,
    subtypes: &[S::Virus],
    cost: 2,
    memory: 1,
    ..BASE
};
static THE_SHADOW_NET: CardDef = CardDef {
    id: CardId::TheShadowNet,
    name: "The Shadow Net",
    side: Side::Runner,
    kind: K::Resource,
    subtypes: &[S::Virtual],
    ..BASE
};

impl CardId {
    pub const ALL: [CardId; 22] = [
        CardId::Archer,
        CardId::DedicatedResponseTeam,
        CardId::Enigma,
        CardId::FastTrack,
        CardId::HedgeFund,
        CardId::IceWall,
        CardId::KpLynn,
        CardId::MandatorySeedReplacement,
        CardId::MedicalBreakthrough,
        CardId::NiseiDivision,
        CardId::PriorityRequisition,
        CardId::Strongbox,
        CardId::SubBoost,
        CardId::WallOfStatic,
        CardId::WeylandBbw,
        CardId::Aurora,
        CardId::Escher,
        CardId::Exile,
        CardId::GrapplingHook,
        CardId::Infiltration,
        CardId::Pheromones,
        CardId::TheShadowNet,
    ];

    pub fn def(self) -> &'static CardDef {
        match self {
            CardId::Archer => &ARCHER,
            CardId::DedicatedResponseTeam => &DEDICATED_RESPONSE_TEAM,
            CardId::Enigma => &ENIGMA,
            CardId::FastTrack => &FAST_TRACK,
            CardId::HedgeFund => &HEDGE_FUND,
            CardId::IceWall => &ICE_WALL,
            CardId::KpLynn => &KP_LYNN,
            CardId::MandatorySeedReplacement => &MANDATORY_SEED_REPLACEMENT,
            CardId::MedicalBreakthrough => &MEDICAL_BREAKTHROUGH,
            CardId::NiseiDivision => &NISEI_DIVISION,
            CardId::PriorityRequisition => &PRIORITY_REQUISITION,
            CardId::Strongbox => &STRONGBOX,
            CardId::SubBoost => &SUB_BOOST,
            CardId::WallOfStatic => &WALL_OF_STATIC,
            CardId::WeylandBbw => &WEYLAND_BBW,
            CardId::Aurora => &AURORA,
            CardId::Escher => &ESCHER,
            CardId::Exile => &EXILE,
            CardId::GrapplingHook => &GRAPPLING_HOOK,
            CardId::Infiltration => &INFILTRATION,
            CardId::Pheromones => &PHEROMONES,
            CardId::TheShadowNet => &THE_SHADOW_NET,
        }
    }

    pub fn name(self) -> &'static str {
        self.def().name
    }

    pub fn kind(self) -> CardKind {
        self.def().kind
    }

    pub fn side(self) -> Side {
        self.def().side
    }

    pub fn is_agenda(self) -> bool {
        self.kind() == CardKind::Agenda
    }

    pub fn has_subtype(self, subtype: Subtype) -> bool {
        self.def().subtypes.contains(&subtype)
    }

    /// Only Ice Wall carries "can be advanced" in this catalog.
    pub fn is_advanceable_ice(self) -> bool {
        self == CardId::IceWall
    }
}

impl std::fmt::Display for CardId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}
