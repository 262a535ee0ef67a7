use std::fmt;

use serde::{Deserialize, Serialize};

use super::cards::{CardId, CardKind, Side, Subroutine, Subtype};

/// Points needed to win.
pub const WINNING_POINTS: u32 = 7;
pub const CORP_CLICKS_PER_TURN: u32 = 3;
pub const RUNNER_CLICKS_PER_TURN: u32 = 4;
pub const MAX_HAND_SIZE: usize = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ServerId {
    Hq,
    Rnd,
    Archives,
    Remote(u32),
}

impl ServerId {
    pub fn is_remote(self) -> bool {
        matches!(self, ServerId::Remote(_))
    }
}

impl fmt::Display for ServerId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ServerId::Hq => f.write_str("HQ"),
            ServerId::Rnd => f.write_str("R&D"),
            ServerId::Archives => f.write_str("Archives"),
            ServerId::Remote(k) => write!(f, "Remote {k}"),
        }
    }
}

/// One installed piece of ice. Hosted counters ride with the piece when ice
/// is rearranged.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct IcePiece {
    pub card: CardId,
    pub rezzed: bool,
    #[serde(default)]
    pub advancement: u32,
    /// Hosted Sub Boost conditions.
    #[serde(default)]
    pub sub_boosts: u32,
}

impl IcePiece {
    pub fn rezzed(card: CardId) -> Self {
        Self {
            card,
            rezzed: true,
            advancement: 0,
            sub_boosts: 0,
        }
    }

    pub fn strength(&self) -> u32 {
        let base = self.card.def().strength.unwrap_or(0);
        if self.card.is_advanceable_ice() {
            base + self.advancement
        } else {
            base
        }
    }

    pub fn has_subtype(&self, subtype: Subtype) -> bool {
        self.card.has_subtype(subtype) || (subtype == Subtype::Barrier && self.sub_boosts > 0)
    }

    pub fn subroutine_count(&self) -> usize {
        self.card.def().subroutines.len() + self.sub_boosts as usize
    }

    /// Printed subroutines first, then one "End the run." per Sub Boost.
    pub fn subroutine(&self, index: usize) -> Option<Subroutine> {
        let printed = self.card.def().subroutines;
        if index < printed.len() {
            Some(printed[index])
        } else if index < self.subroutine_count() {
            Some(Subroutine::EndTheRun)
        } else {
            None
        }
    }

    pub fn subroutines(&self) -> impl Iterator<Item = Subroutine> + '_ {
        (0..self.subroutine_count()).filter_map(|i| self.subroutine(i))
    }

    pub fn ends_run(&self) -> bool {
        self.subroutines().any(|s| s == Subroutine::EndTheRun)
    }
}

/// An installed card in a server root.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct InstalledCard {
    pub card: CardId,
    pub rezzed: bool,
    #[serde(default)]
    pub advancement: u32,
}

impl InstalledCard {
    pub fn rezzed(card: CardId) -> Self {
        Self {
            card,
            rezzed: true,
            advancement: 0,
        }
    }

    pub fn unrezzed(card: CardId) -> Self {
        Self {
            card,
            rezzed: false,
            advancement: 0,
        }
    }
}

/// A server's ice (index 0 = outermost, approached first) and root.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Server {
    pub id: ServerId,
    pub ice: Vec<IcePiece>,
    pub root: Vec<InstalledCard>,
}

impl Server {
    pub fn new(id: ServerId) -> Self {
        Self {
            id,
            ice: Vec::new(),
            root: Vec::new(),
        }
    }

    pub fn has_rezzed(&self, card: CardId) -> bool {
        self.root.iter().any(|c| c.card == card && c.rezzed)
    }

    pub fn count_rezzed(&self, card: CardId) -> usize {
        self.root
            .iter()
            .filter(|c| c.card == card && c.rezzed)
            .count()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ArchivedCard {
    pub card: CardId,
    pub faceup: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CorpState {
    pub identity: CardId,
    pub credits: u32,
    pub clicks: u32,
    /// Cards in HQ (the Corp's hand); unordered.
    pub hq: Vec<CardId>,
    /// R&D, index 0 on top.
    pub rnd: Vec<CardId>,
    pub archives: Vec<ArchivedCard>,
    /// Always sorted by server id; HQ, R&D and Archives are always present.
    pub servers: Vec<Server>,
    pub score_area: Vec<CardId>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct InstalledProgram {
    pub card: CardId,
    #[serde(default)]
    pub virus_counters: u32,
    /// Unspent recurring credits hosted on the program.
    #[serde(default)]
    pub recurring_credits: u32,
}

impl InstalledProgram {
    pub fn new(card: CardId) -> Self {
        Self {
            card,
            virus_counters: 0,
            recurring_credits: 0,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RunnerRig {
    pub programs: Vec<InstalledProgram>,
}

impl RunnerRig {
    pub fn has(&self, card: CardId) -> bool {
        self.programs.iter().any(|p| p.card == card)
    }

    pub fn pheromones(&self) -> Option<&InstalledProgram> {
        self.programs.iter().find(|p| p.card == CardId::Pheromones)
    }

    pub fn pheromones_mut(&mut self) -> Option<&mut InstalledProgram> {
        self.programs
            .iter_mut()
            .find(|p| p.card == CardId::Pheromones)
    }

    pub fn pheromones_credits(&self) -> u32 {
        self.pheromones().map_or(0, |p| p.recurring_credits)
    }

    pub fn pheromones_counters(&self) -> u32 {
        self.pheromones().map_or(0, |p| p.virus_counters)
    }

    /// Whether some installed breaker can break subroutines on `ice`.
    pub fn can_break(&self, ice: &IcePiece) -> bool {
        self.has(CardId::Aurora) && ice.has_subtype(Subtype::Barrier)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RunnerState {
    pub identity: CardId,
    pub credits: u32,
    pub clicks: u32,
    /// Carried for completeness; no rule in the fragment reads it.
    #[serde(default)]
    pub link: u32,
    pub grip: Vec<CardId>,
    /// Stack, index 0 on top.
    pub stack: Vec<CardId>,
    pub heap: Vec<CardId>,
    #[serde(default)]
    pub resources: Vec<CardId>,
    pub rig: RunnerRig,
    pub tags: u32,
    pub score_area: Vec<CardId>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    RunnerWin,
    CorpWin,
    RunnerFlatline,
    CorpDecksOut,
}

impl Outcome {
    pub fn winner(self) -> Side {
        match self {
            Outcome::RunnerWin | Outcome::CorpDecksOut => Side::Runner,
            Outcome::CorpWin | Outcome::RunnerFlatline => Side::Corp,
        }
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Outcome::RunnerWin => "RunnerWin",
            Outcome::CorpWin => "CorpWin",
            Outcome::RunnerFlatline => "RunnerFlatline",
            Outcome::CorpDecksOut => "CorpDecksOut",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RearrangeSource {
    Escher,
    MandatorySeedReplacement,
}

/// A card waiting to be accessed during a breach.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AccessTarget {
    Root(usize),
    Hand(CardId),
    RndTop,
    Archives(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Encounter {
    /// Bit `i` set when subroutine `i` is broken.
    pub broken: u64,
    /// Aurora's strength for this encounter only.
    pub aurora_strength: u32,
}

impl Encounter {
    pub fn is_broken(&self, index: usize) -> bool {
        index < 64 && self.broken & (1 << index) != 0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RunStep {
    /// Approaching the ice at `ice_index`; the Runner may continue or jack out.
    Approach,
    Encounter(Encounter),
    /// Subroutines are firing; the Corp must pick a program for the one at
    /// `next_sub`.
    Firing {
        next_sub: usize,
        broken: u64,
    },
    KpLynn,
    /// All ice passed; the Runner may jack out before the run succeeds.
    ApproachServer,
    /// HQ breach: the accessed hand card is not yet chosen.
    SelectHqCard,
    Access,
    EscherRearrange,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RunContext {
    pub server: ServerId,
    pub ice_index: usize,
    pub step: RunStep,
    #[serde(default)]
    pub escher: bool,
    #[serde(default)]
    pub successful: bool,
    /// Extra clicks to steal an agenda, fixed when the breach begins.
    #[serde(default)]
    pub steal_click_cost: u32,
    #[serde(default)]
    pub pending_accesses: Vec<AccessTarget>,
}

impl RunContext {
    pub fn new(server: ServerId, escher: bool) -> Self {
        Self {
            server,
            ice_index: 0,
            step: RunStep::Approach,
            escher,
            successful: false,
            steal_click_cost: 0,
            pending_accesses: Vec::new(),
        }
    }

    pub fn passed_all_ice(&self, state: &GameState) -> bool {
        self.ice_index >= state.server(self.server).map_or(0, |s| s.ice.len())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Phase {
    TurnStart,
    Action,
    Run(RunContext),
    /// Mandatory Seed Replacement's rearrangement, chosen by the Corp.
    Rearrange,
    /// Priority Requisition's optional free rez.
    PriorityRez,
    Discard,
    Damage {
        meat: u32,
    },
    Terminal(Outcome),
}

/// Who makes the next decision.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Decider {
    Side(Side),
    /// A random event (HQ access, damage discards); solvers resolve it
    /// against the side trying to force a win.
    Chance,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GameState {
    pub corp: CorpState,
    pub runner: RunnerState,
    pub turn_owner: Side,
    pub phase: Phase,
}

impl GameState {
    pub fn server(&self, id: ServerId) -> Option<&Server> {
        self.corp
            .servers
            .binary_search_by(|s| s.id.cmp(&id))
            .ok()
            .map(|i| &self.corp.servers[i])
    }

    pub fn server_mut(&mut self, id: ServerId) -> Option<&mut Server> {
        match self.corp.servers.binary_search_by(|s| s.id.cmp(&id)) {
            Ok(i) => Some(&mut self.corp.servers[i]),
            Err(_) => None,
        }
    }

    pub fn run(&self) -> Option<&RunContext> {
        match &self.phase {
            Phase::Run(ctx) => Some(ctx),
            _ => None,
        }
    }

    pub fn run_mut(&mut self) -> Option<&mut RunContext> {
        match &mut self.phase {
            Phase::Run(ctx) => Some(ctx),
            _ => None,
        }
    }

    pub fn outcome(&self) -> Option<Outcome> {
        match self.phase {
            Phase::Terminal(o) => Some(o),
            _ => None,
        }
    }

    pub fn is_terminal(&self) -> bool {
        matches!(self.phase, Phase::Terminal(_))
    }

    pub fn decider(&self) -> Option<Decider> {
        match &self.phase {
            Phase::TurnStart | Phase::Terminal(_) => None,
            Phase::Action | Phase::Discard => Some(Decider::Side(self.turn_owner)),
            Phase::Rearrange | Phase::PriorityRez => Some(Decider::Side(Side::Corp)),
            Phase::Damage { .. } => Some(Decider::Chance),
            Phase::Run(ctx) => Some(match ctx.step {
                RunStep::Firing { .. } => Decider::Side(Side::Corp),
                RunStep::SelectHqCard => Decider::Chance,
                _ => Decider::Side(Side::Runner),
            }),
        }
    }

    /// Whether the next decision is an ice rearrangement.
    pub fn awaiting_rearrangement(&self) -> bool {
        match &self.phase {
            Phase::Rearrange => true,
            Phase::Run(ctx) => ctx.step == RunStep::EscherRearrange,
            _ => false,
        }
    }

    pub fn runner_points(&self) -> u32 {
        agenda_points(&self.runner.score_area)
    }

    pub fn corp_points(&self) -> u32 {
        agenda_points(&self.corp.score_area)
    }

    /// Every ice piece in play as `(server, position, piece)`, servers in id
    /// order and ice outermost first.
    pub fn ice_in_play(&self) -> impl Iterator<Item = (ServerId, usize, &IcePiece)> + '_ {
        self.corp
            .servers
            .iter()
            .flat_map(|s| s.ice.iter().enumerate().map(move |(i, p)| (s.id, i, p)))
    }

    pub fn next_remote_id(&self) -> u32 {
        self.corp
            .servers
            .iter()
            .filter_map(|s| match s.id {
                ServerId::Remote(k) => Some(k),
                _ => None,
            })
            .max()
            .map_or(1, |k| k + 1)
    }

    /// Multiset of every card instance on the table or in any zone, sorted.
    /// Hosted Sub Boost conditions count as Sub Boost cards.
    pub fn card_multiset(&self) -> Vec<CardId> {
        let c = &self.corp;
        let r = &self.runner;
        let mut all = vec![c.identity, r.identity];
        all.extend(c.hq.iter().copied());
        all.extend(c.rnd.iter().copied());
        all.extend(c.archives.iter().map(|a| a.card));
        all.extend(c.score_area.iter().copied());
        for server in &c.servers {
            for ice in &server.ice {
                all.push(ice.card);
                all.extend(std::iter::repeat_n(
                    CardId::SubBoost,
                    ice.sub_boosts as usize,
                ));
            }
            all.extend(server.root.iter().map(|x| x.card));
        }
        all.extend(r.grip.iter().copied());
        all.extend(r.stack.iter().copied());
        all.extend(r.heap.iter().copied());
        all.extend(r.resources.iter().copied());
        all.extend(r.rig.programs.iter().map(|p| p.card));
        all.extend(r.score_area.iter().copied());
        all.sort();
        all
    }

    /// Structural invariants a well-formed state must satisfy.
    pub fn check_invariants(&self) -> Result<(), String> {
        let ids: Vec<ServerId> = self.corp.servers.iter().map(|s| s.id).collect();
        if !ids.windows(2).all(|w| w[0] < w[1]) {
            return Err("servers not sorted by id".into());
        }
        for central in [ServerId::Hq, ServerId::Rnd, ServerId::Archives] {
            if self.server(central).is_none() {
                return Err(format!("missing central server {central}"));
            }
        }
        for (server, idx, ice) in self.ice_in_play() {
            if ice.card.kind() != CardKind::Ice {
                return Err(format!("{} is not ice ({server} #{idx})", ice.card));
            }
            if ice.advancement > 0 && !ice.card.is_advanceable_ice() {
                return Err(format!("advancement on non-advanceable {}", ice.card));
            }
            if ice.sub_boosts > 0 && !ice.rezzed {
                return Err(format!("Sub Boost on unrezzed {}", ice.card));
            }
            if ice.subroutine_count() > 64 {
                return Err("more than 64 subroutines".into());
            }
        }
        for server in &self.corp.servers {
            for card in &server.root {
                match card.card.kind() {
                    CardKind::Agenda | CardKind::Asset if !server.id.is_remote() => {
                        return Err(format!("{} in central root", card.card));
                    }
                    CardKind::Agenda | CardKind::Asset | CardKind::Upgrade => {}
                    _ => return Err(format!("{} cannot be installed in a root", card.card)),
                }
            }
        }
        for p in &self.runner.rig.programs {
            if p.card.kind() != CardKind::Program {
                return Err(format!("{} is not a program", p.card));
            }
            if p.recurring_credits > p.virus_counters && p.card == CardId::Pheromones {
                return Err("Pheromones credits exceed virus counters".into());
            }
        }
        for card in self.corp.score_area.iter().chain(&self.runner.score_area) {
            if !card.is_agenda() {
                return Err(format!("{card} in a score area"));
            }
        }
        if let Phase::Run(ctx) = &self.phase {
            let server = self
                .server(ctx.server)
                .ok_or_else(|| format!("run on missing server {}", ctx.server))?;
            if ctx.ice_index > server.ice.len() {
                return Err("run position beyond the server's ice".into());
            }
            if let RunStep::Encounter(enc) = ctx.step {
                let ice = server
                    .ice
                    .get(ctx.ice_index)
                    .ok_or("encounter without ice")?;
                let n = ice.subroutine_count();
                if n < 64 && enc.broken >> n != 0 {
                    return Err("broken subroutine outside the encountered ice".into());
                }
            }
        }
        Ok(())
    }
}

/// Sum of printed agenda points.
pub fn agenda_points(score_area: &[CardId]) -> u32 {
    score_area.iter().map(|c| c.def().agenda_points).sum()
}

/// Medical Breakthrough's requirement: 4 lowered by one per copy in either
/// score area.
pub fn medical_breakthrough_requirement(state: &GameState) -> u32 {
    let scored = state
        .corp
        .score_area
        .iter()
        .chain(&state.runner.score_area)
        .filter(|&&c| c == CardId::MedicalBreakthrough)
        .count() as u32;
    CardId::MedicalBreakthrough
        .def()
        .advancement_requirement
        .saturating_sub(scored)
}

pub fn advancement_requirement(state: &GameState, card: CardId) -> u32 {
    if card == CardId::MedicalBreakthrough {
        medical_breakthrough_requirement(state)
    } else {
        card.def().advancement_requirement
    }
}
