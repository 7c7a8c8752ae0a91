//! Browser bindings: check a term, trace it step by step on a chosen
//! machine, or cross-run all three machines. Every function takes source
//! text and returns a JSON string so the page stays plain JavaScript.

use wasm_bindgen::prelude::*;

use serde_json::json;
use stlc_machines::print::{term_string, value_string};
use stlc_machines::{
    check_source, contract, decompose, diff::diff_one, krivine_step, plug, refocus, Closed, Env,
    EvalContext, KrivineOutcome, MachineState, SourceError, Split, Term, Value,
};

#[wasm_bindgen]
pub fn check_term(src: &str) -> String {
    match check_source(src) {
        Ok(term) => json!({
            "ok": true,
            "type": term.ty().to_string(),
            "term": term_string(&term, false),
        }),
        Err(e) => source_error(&e),
    }
    .to_string()
}

#[wasm_bindgen]
pub fn trace_machine(src: &str, machine: &str, fuel: u32) -> String {
    let term = match check_source(src) {
        Ok(term) => term,
        Err(e) => return source_error(&e).to_string(),
    };
    let result = match machine {
        "smallstep" => trace_head_reduction(&term, fuel, false),
        "refocus" => trace_head_reduction(&term, fuel, true),
        "krivine" => trace_krivine(&term, fuel),
        other => json!({
            "ok": false,
            "error": { "message": format!("unknown machine `{other}`") },
        }),
    };
    result.to_string()
}

#[wasm_bindgen]
pub fn diff_machines(src: &str, fuel: u32) -> String {
    match check_source(src) {
        Ok(term) => {
            let entry = diff_one(&term, u64::from(fuel.max(1)));
            json!({ "ok": true, "entry": serde_json::to_value(&entry).unwrap() })
        }
        Err(e) => source_error(&e),
    }
    .to_string()
}

fn source_error(e: &SourceError) -> serde_json::Value {
    let span = e.span();
    json!({
        "ok": false,
        "error": {
            "message": e.to_string(),
            "start": span.start,
            "end": span.end,
        },
    })
}

fn exhausted(steps: Vec<serde_json::Value>) -> serde_json::Value {
    json!({
        "ok": false,
        "error": { "message": format!("fuel exhausted after {} steps", steps.len()) },
        "steps": steps,
    })
}

/// Drives head reduction, either re-decomposing the re-plugged term from
/// the root each step or refocusing from the contraction site; the steps
/// shown are the same, which is rather the point.
fn trace_head_reduction(term: &Term, fuel: u32, refocused: bool) -> serde_json::Value {
    let mut steps = Vec::new();
    let mut cur = Closed::closure(term.clone(), Env::nil());
    let mut ctx = EvalContext::empty(cur.ty().clone());
    loop {
        let d = if refocused {
            refocus(ctx, cur)
        } else {
            decompose(&plug(&ctx, &cur))
        };
        match d.into_parts() {
            (subject, Split::Val { .. }) => {
                let value = Value::new(subject).expect("a Val decomposition is a lambda closure");
                return json!({
                    "ok": true,
                    "machine": if refocused { "refocus" } else { "smallstep" },
                    "value": value_string(&value),
                    "steps": steps,
                    "total": steps.len(),
                });
            }
            (subject, Split::Redex { redex, ctx: rest }) => {
                if steps.len() as u32 >= fuel {
                    return exhausted(steps);
                }
                steps.push(json!({
                    "n": steps.len(),
                    "kind": redex.kind().as_str(),
                    "display": subject.to_string(),
                }));
                cur = contract(&redex);
                ctx = rest;
            }
        }
    }
}

fn trace_krivine(term: &Term, fuel: u32) -> serde_json::Value {
    let mut steps = Vec::new();
    let mut state = MachineState::initial(term);
    loop {
        match krivine_step(&state).expect("machine invariant holds on reachable states") {
            KrivineOutcome::Final(value) => {
                return json!({
                    "ok": true,
                    "machine": "krivine",
                    "value": value_string(&value),
                    "steps": steps,
                    "total": steps.len(),
                });
            }
            KrivineOutcome::Continue { next, transition } => {
                if steps.len() as u32 >= fuel {
                    return exhausted(steps);
                }
                steps.push(json!({
                    "n": steps.len(),
                    "kind": transition.step_kind().as_str(),
                    "display": format!(
                        "{}  |  env: {}  |  ctx: {} pending",
                        term_string(state.term(), false),
                        state.env().summary(),
                        state.ctx().len(),
                    ),
                }));
                state = next;
            }
        }
    }
}
