//! Differential testing of the three evaluators.
//!
//! Every machine must produce structurally equal values, and the small-step
//! and refocus machines must additionally agree on their whole redex
//! sequence. The Krivine machine compresses application handling into a
//! single transition, so its step count is not compared.

use serde::Serialize;

use crate::closed::{Closed, Env};
use crate::krivine::evaluate_krivine;
use crate::reduction::evaluate_smallstep;
use crate::refocus::evaluate_refocus;
use crate::term::Term;
use crate::trace::{EvalError, StepLog};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PerMachine<T> {
    pub smallstep: T,
    pub refocus: T,
    pub krivine: T,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AgreementFlags {
    /// Values of the small-step and refocus evaluators are structurally
    /// equal.
    pub value_smallstep_refocus: bool,
    /// Values of the refocus evaluator and the Krivine machine are
    /// structurally equal.
    pub value_refocus_krivine: bool,
    /// Redex sequences of the small-step and refocus evaluators are
    /// identical.
    pub steplog_smallstep_refocus: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct DiffEntry {
    pub term: String,
    pub values: PerMachine<String>,
    pub steps: PerMachine<u64>,
    pub flags: AgreementFlags,
    pub agree: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct DiffReport {
    pub entries: Vec<DiffEntry>,
    pub passed: usize,
    pub failed: usize,
}

impl DiffReport {
    pub fn all_agree(&self) -> bool {
        self.failed == 0
    }

    pub fn any_fuel_exhausted(&self) -> bool {
        self.entries.iter().any(|e| e.error.is_some())
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("diff report serializes")
    }
}

/// Runs all three evaluators on each closed term. Fuel exhaustion is
/// recorded as a per-term failure and does not abort the batch.
pub fn run_diff(terms: &[Term], fuel: u64) -> DiffReport {
    let mut entries = Vec::with_capacity(terms.len());
    for term in terms {
        entries.push(diff_one(term, fuel));
    }
    let passed = entries.iter().filter(|e| e.agree).count();
    let failed = entries.len() - passed;
    DiffReport {
        entries,
        passed,
        failed,
    }
}

fn render(result: &Result<(crate::closed::Value, StepLog), EvalError>) -> (String, u64) {
    match result {
        Ok((value, log)) => (crate::print::value_string(value), log.fuel_used),
        Err(EvalError::FuelExhausted { fuel, log }) => (
            format!("<fuel exhausted after {fuel} steps>"),
            log.fuel_used,
        ),
        Err(EvalError::ZeroFuel) => ("<no fuel>".to_string(), 0),
    }
}

pub fn diff_one(term: &Term, fuel: u64) -> DiffEntry {
    let closure = Closed::closure(term.clone(), Env::nil());
    let smallstep = evaluate_smallstep(&closure, fuel);
    let refocus = evaluate_refocus(&closure, fuel);
    let krivine = evaluate_krivine(term, fuel);

    let flags = AgreementFlags {
        value_smallstep_refocus: match (&smallstep, &refocus) {
            (Ok((a, _)), Ok((b, _))) => a == b,
            _ => false,
        },
        value_refocus_krivine: match (&refocus, &krivine) {
            (Ok((a, _)), Ok((b, _))) => a == b,
            _ => false,
        },
        steplog_smallstep_refocus: match (&smallstep, &refocus) {
            (Ok((_, a)), Ok((_, b))) => a.kinds() == b.kinds(),
            _ => false,
        },
    };
    let agree = flags.value_smallstep_refocus
        && flags.value_refocus_krivine
        && flags.steplog_smallstep_refocus;
    let error = [&smallstep, &refocus, &krivine]
        .into_iter()
        .find_map(|r| r.as_ref().err().map(|e| e.to_string()));

    let (ss_value, ss_steps) = render(&smallstep);
    let (rf_value, rf_steps) = render(&refocus);
    let (kr_value, kr_steps) = render(&krivine);
    DiffEntry {
        term: crate::print::term_string(term, false),
        values: PerMachine {
            smallstep: ss_value,
            refocus: rf_value,
            krivine: kr_value,
        },
        steps: PerMachine {
            smallstep: ss_steps,
            refocus: rf_steps,
            krivine: kr_steps,
        },
        flags,
        agree,
        error,
    }
}
