//! On-disk formats: the instance text file, and JSON state and witness
//! files carrying a `schema_version`.

use serde::{Deserialize, Serialize};

use crate::compiler::ScenarioManifest;
use crate::model::{Action, GameState, PartitionInstance};
use crate::solver::MateMode;

use super::HarnessError;

pub const SCHEMA_VERSION: u32 = 1;

/// Parses whitespace-separated positive integers; `#` starts a comment that
/// runs to the end of the line.
pub fn parse_instance(text: &str) -> Result<PartitionInstance, HarnessError> {
    let mut values = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("");
        for token in line.split_whitespace() {
            let value: u64 = token.parse().map_err(|_| HarnessError::Parse {
                what: "instance",
                detail: format!("line {}: {token:?} is not a positive integer", lineno + 1),
            })?;
            values.push(value);
        }
    }
    PartitionInstance::new(values).map_err(|e| HarnessError::Parse {
        what: "instance",
        detail: e.to_string(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateFile {
    pub schema_version: u32,
    pub state: GameState,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub manifest: Option<ScenarioManifest>,
}

impl StateFile {
    pub fn new(state: GameState, manifest: Option<ScenarioManifest>) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            state,
            manifest,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WitnessFile {
    pub schema_version: u32,
    pub mode: MateMode,
    pub actions: Vec<Action>,
}

impl WitnessFile {
    pub fn new(mode: MateMode, actions: Vec<Action>) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            mode,
            actions,
        }
    }
}

fn check_version(what: &'static str, found: u32) -> Result<(), HarnessError> {
    if found != SCHEMA_VERSION {
        return Err(HarnessError::Parse {
            what,
            detail: format!("schema_version {found}, expected {SCHEMA_VERSION}"),
        });
    }
    Ok(())
}

/// Parses and validates a state file.
pub fn parse_state(text: &str) -> Result<StateFile, HarnessError> {
    let file: StateFile = serde_json::from_str(text).map_err(|e| HarnessError::Parse {
        what: "state",
        detail: e.to_string(),
    })?;
    check_version("state", file.schema_version)?;
    file.state
        .check_invariants()
        .map_err(|detail| HarnessError::Parse {
            what: "state",
            detail,
        })?;
    Ok(file)
}

pub fn parse_witness(text: &str) -> Result<WitnessFile, HarnessError> {
    let file: WitnessFile = serde_json::from_str(text).map_err(|e| HarnessError::Parse {
        what: "witness",
        detail: e.to_string(),
    })?;
    check_version("witness", file.schema_version)?;
    Ok(file)
}

/// Pretty JSON with a trailing newline. Field and list order are fixed by
/// the types, so equal values always give equal bytes.
pub fn to_canonical_json<T: Serialize>(value: &T) -> String {
    let mut out = serde_json::to_string_pretty(value).expect("in-memory types serialize");
    out.push('\n');
    out
}
