//! Step logs shared by the three evaluators.

use std::fmt;

use serde::Serialize;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Machine {
    Smallstep,
    Refocus,
    Krivine,
}

impl Machine {
    pub fn as_str(self) -> &'static str {
        match self {
            Machine::Smallstep => "smallstep",
            Machine::Refocus => "refocus",
            Machine::Krivine => "krivine",
        }
    }
}

impl fmt::Display for Machine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// What a single logged step did: which redex was contracted (small-step and
/// refocus machines) or which transition fired (Krivine machine).
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum StepKind {
    Lookup,
    Rapp,
    Beta,
    App,
}

impl StepKind {
    pub fn as_str(self) -> &'static str {
        match self {
            StepKind::Lookup => "lookup",
            StepKind::Rapp => "rapp",
            StepKind::Beta => "beta",
            StepKind::App => "app",
        }
    }
}

impl fmt::Display for StepKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, PartialEq, Debug, Serialize)]
pub struct StepRecord {
    pub n: usize,
    #[serde(rename = "redex")]
    pub kind: StepKind,
    /// Serialized machine state before the step; only recorded in verbose
    /// traces.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub state: Option<serde_json::Value>,
}

#[derive(Clone, PartialEq, Debug, Serialize)]
pub struct StepLog {
    pub machine: Machine,
    pub steps: Vec<StepRecord>,
    pub total: usize,
    pub fuel_used: u64,
}

impl StepLog {
    pub fn new(machine: Machine) -> StepLog {
        StepLog {
            machine,
            steps: Vec::new(),
            total: 0,
            fuel_used: 0,
        }
    }

    pub fn push(&mut self, kind: StepKind, state: Option<serde_json::Value>) {
        self.steps.push(StepRecord {
            n: self.steps.len(),
            kind,
            state,
        });
        self.total = self.steps.len();
        self.fuel_used = self.steps.len() as u64;
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn kinds(&self) -> Vec<StepKind> {
        self.steps.iter().map(|s| s.kind).collect()
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("step log serializes")
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum EvalError {
    #[error("fuel budget must be positive")]
    ZeroFuel,
    #[error("fuel exhausted after {fuel} steps")]
    FuelExhausted { fuel: u64, log: StepLog },
}
