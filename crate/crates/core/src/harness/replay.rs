use serde::{Deserialize, Serialize};

use crate::engine::{self, Event};
use crate::model::{Action, GameState, Outcome, Phase};

use super::HarnessError;

/// Resource snapshot after one step of a replay.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LedgerRow {
    /// 0 for the starting position.
    pub step: usize,
    pub action: Option<String>,
    pub runner_clicks: u32,
    pub runner_credits: u32,
    pub pheromones: u32,
    pub tags: u32,
    pub runner_points: u32,
    pub corp_credits: u32,
    pub corp_clicks: u32,
    pub corp_points: u32,
}

impl LedgerRow {
    fn of(step: usize, action: Option<&Action>, s: &GameState) -> Self {
        Self {
            step,
            action: action.map(|a| a.to_string()),
            runner_clicks: s.runner.clicks,
            runner_credits: s.runner.credits,
            pheromones: s.runner.rig.pheromones_credits(),
            tags: s.runner.tags,
            runner_points: s.runner_points(),
            corp_credits: s.corp.credits,
            corp_clicks: s.corp.clicks,
            corp_points: s.corp_points(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReplayReport {
    pub rows: Vec<LedgerRow>,
    /// Events per step; index 0 holds any turn-start processing.
    pub events: Vec<Vec<Event>>,
    pub final_state: GameState,
}

impl ReplayReport {
    pub fn outcome(&self) -> Option<Outcome> {
        self.final_state.outcome()
    }

    /// "in progress" or the terminal outcome.
    pub fn status(&self) -> String {
        self.outcome()
            .map_or_else(|| "in progress".to_string(), |o| o.to_string())
    }
}

/// Applies `actions` in order from `start`, processing a pending turn start
/// first. Fails at the first illegal step.
pub fn replay(start: &GameState, actions: &[Action]) -> Result<ReplayReport, HarnessError> {
    let mut state = start.clone();
    let mut events = vec![Vec::new()];
    if state.phase == Phase::TurnStart {
        let o = engine::turn_start(&state)?;
        state = o.next_state;
        events[0] = o.events;
    }
    let mut rows = vec![LedgerRow::of(0, None, &state)];
    for (i, action) in actions.iter().enumerate() {
        let o = engine::apply(&state, action).map_err(|source| HarnessError::Replay {
            index: i,
            action: action.to_string(),
            source,
        })?;
        state = o.next_state;
        rows.push(LedgerRow::of(i + 1, Some(action), &state));
        events.push(o.events);
    }
    Ok(ReplayReport {
        rows,
        events,
        final_state: state,
    })
}

/// Fixed-width table of ledger rows.
pub fn format_ledger(rows: &[LedgerRow]) -> String {
    let mut out = format!(
        "{:>4}  {:<48} {:>6} {:>6} {:>6} {:>4} {:>4} | {:>6} {:>6} {:>4}\n",
        "step", "action", "clicks", "pool", "pher", "tags", "pts", "corp$", "cclk", "cpts"
    );
    for r in rows {
        let action = r.action.as_deref().unwrap_or("(start)");
        let action: String = action.chars().take(48).collect();
        out.push_str(&format!(
            "{:>4}  {:<48} {:>6} {:>6} {:>6} {:>4} {:>4} | {:>6} {:>6} {:>4}\n",
            r.step,
            action,
            r.runner_clicks,
            r.runner_credits,
            r.pheromones,
            r.tags,
            r.runner_points,
            r.corp_credits,
            r.corp_clicks,
            r.corp_points
        ));
    }
    out
}
