//! The Krivine machine.
//!
//! A first-order transition system over (term, environment, context)
//! states. Application pushes its argument as a closure and keeps reducing
//! the function in one transition, so closed applications never enter an
//! environment or a context frame; the validity predicates make that
//! invariant checkable.

use crate::closed::{Closed, ClosedNode, Env, Value};
use crate::reduction::EvalContext;
use crate::term::{Term, TermNode};
use crate::trace::{EvalError, Machine, StepKind, StepLog};
use crate::ty::{Context, Ref};

/// A closed term is valid when no `Clapp` occurs in it or in any
/// environment hanging off it.
pub fn is_valid_closure(c: &Closed) -> bool {
    match c.node() {
        ClosedNode::Closure { env, .. } => is_valid_env(env),
        ClosedNode::Clapp { .. } => false,
    }
}

pub fn is_valid_env(env: &Env) -> bool {
    env.iter().all(is_valid_closure)
}

pub fn is_valid_context(ctx: &EvalContext) -> bool {
    ctx.iter().all(is_valid_closure)
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum KrivineError {
    #[error("environment entry {index} is missing or not a valid closure")]
    InvalidEnvironment { index: usize },
    #[error("context frame holds a closed application")]
    InvalidContext,
}

/// A closure (never a `Clapp`) whose environment is valid; established once
/// at construction.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ValidClosure(Closed);

impl ValidClosure {
    pub fn new(c: Closed) -> Result<ValidClosure, KrivineError> {
        if is_valid_closure(&c) {
            Ok(ValidClosure(c))
        } else {
            Err(KrivineError::InvalidContext)
        }
    }

    pub fn term(&self) -> &Term {
        match self.0.node() {
            ClosedNode::Closure { term, .. } => term,
            ClosedNode::Clapp { .. } => unreachable!("validated at construction"),
        }
    }

    pub fn env(&self) -> &Env {
        match self.0.node() {
            ClosedNode::Closure { env, .. } => env,
            ClosedNode::Clapp { .. } => unreachable!("validated at construction"),
        }
    }

    /// The typing context of the underlying closure's environment.
    pub fn context(&self) -> Context {
        self.env().context()
    }

    pub fn closed(&self) -> &Closed {
        &self.0
    }

    pub fn into_closed(self) -> Closed {
        self.0
    }
}

/// Looks a variable up in a valid environment; always yields a closure.
/// An error signals a breach of the machine invariant, which cannot happen
/// for states reached from an elaborated term.
pub fn valid_lookup(r: Ref, env: &Env) -> Result<ValidClosure, KrivineError> {
    let entry = env
        .get(r.index())
        .ok_or(KrivineError::InvalidEnvironment { index: r.index() })?;
    ValidClosure::new(entry.clone())
        .map_err(|_| KrivineError::InvalidEnvironment { index: r.index() })
}

/// Machine configuration: the focused term, its environment and the pending
/// arguments.
#[derive(Clone, PartialEq, Debug)]
pub struct MachineState {
    term: Term,
    env: Env,
    ctx: EvalContext,
}

impl MachineState {
    /// The initial state for a closed term: empty environment, empty context.
    pub fn initial(term: &Term) -> MachineState {
        debug_assert!(
            term.check_annotations(&Context::empty()).is_ok(),
            "initial term must be closed and well typed"
        );
        MachineState {
            term: term.clone(),
            env: Env::nil(),
            ctx: EvalContext::empty(term.ty().clone()),
        }
    }

    pub fn term(&self) -> &Term {
        &self.term
    }

    pub fn env(&self) -> &Env {
        &self.env
    }

    pub fn ctx(&self) -> &EvalContext {
        &self.ctx
    }

    /// No `Clapp` anywhere in the environment or the context.
    pub fn check_invariant(&self) -> bool {
        is_valid_env(&self.env) && is_valid_context(&self.ctx)
    }

    /// Typing metadata re-check: the focus is well typed in the
    /// environment's context and matches the context source type.
    pub fn check_types(&self) -> bool {
        self.term.check_annotations(&self.env.context()).is_ok()
            && self.ctx.source_ty() == *self.term.ty()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "term": crate::print::term_string(&self.term, false),
            "env": self.env.to_json(),
            "ctx": self.ctx.iter().map(Closed::to_json).collect::<Vec<_>>(),
        })
    }
}

/// The three transitions of the machine.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Transition {
    Lookup,
    App,
    Beta,
}

impl Transition {
    pub fn step_kind(self) -> StepKind {
        match self {
            Transition::Lookup => StepKind::Lookup,
            Transition::App => StepKind::App,
            Transition::Beta => StepKind::Beta,
        }
    }
}

#[derive(Clone, PartialEq, Debug)]
pub enum KrivineOutcome {
    Continue {
        next: MachineState,
        transition: Transition,
    },
    Final(Value),
}

/// One machine transition.
///
/// Variables continue with the looked-up closure; applications push the
/// argument as a closure over the current environment; a lambda either
/// consumes the top context frame (beta) or, under an empty context, is the
/// final value. Errors can only arise from states that violate the machine
/// invariant.
pub fn krivine_step(state: &MachineState) -> Result<KrivineOutcome, KrivineError> {
    debug_assert!(state.check_invariant(), "machine invariant violated");
    debug_assert!(state.check_types(), "machine state is ill typed");
    match state.term.node() {
        TermNode::Var(r) => {
            let c = valid_lookup(*r, &state.env)?;
            Ok(KrivineOutcome::Continue {
                next: MachineState {
                    term: c.term().clone(),
                    env: c.env().clone(),
                    ctx: state.ctx.clone(),
                },
                transition: Transition::Lookup,
            })
        }
        TermNode::App { fun, arg } => {
            let mut ctx = state.ctx.clone();
            ctx.push_arg(Closed::closure(arg.clone(), state.env.clone()));
            Ok(KrivineOutcome::Continue {
                next: MachineState {
                    term: fun.clone(),
                    env: state.env.clone(),
                    ctx,
                },
                transition: Transition::App,
            })
        }
        TermNode::Lam { body, .. } => {
            let mut ctx = state.ctx.clone();
            match ctx.pop_arg() {
                Some(arg) => {
                    let arg = ValidClosure::new(arg)?;
                    Ok(KrivineOutcome::Continue {
                        next: MachineState {
                            term: body.clone(),
                            env: state.env.extended(arg.into_closed()),
                            ctx,
                        },
                        transition: Transition::Beta,
                    })
                }
                None => {
                    let value = Closed::closure(state.term.clone(), state.env.clone());
                    Ok(KrivineOutcome::Final(
                        Value::new(value).expect("a lambda closure is a value"),
                    ))
                }
            }
        }
    }
}

pub fn evaluate_krivine(term: &Term, fuel: u64) -> Result<(Value, StepLog), EvalError> {
    evaluate_krivine_traced(term, fuel, false)
}

/// Runs the machine from the initial state of a closed term, spending one
/// unit of fuel per transition.
pub fn evaluate_krivine_traced(
    term: &Term,
    fuel: u64,
    verbose: bool,
) -> Result<(Value, StepLog), EvalError> {
    if fuel == 0 {
        return Err(EvalError::ZeroFuel);
    }
    let mut log = StepLog::new(Machine::Krivine);
    let mut state = MachineState::initial(term);
    loop {
        match krivine_step(&state).expect("machine invariant violated") {
            KrivineOutcome::Final(value) => return Ok((value, log)),
            KrivineOutcome::Continue { next, transition } => {
                if log.fuel_used == fuel {
                    return Err(EvalError::FuelExhausted { fuel, log });
                }
                let recorded = verbose.then(|| state.to_json());
                log.push(transition.step_kind(), recorded);
                state = next;
            }
        }
    }
}
