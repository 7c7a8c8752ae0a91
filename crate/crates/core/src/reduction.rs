//! Plug/decompose small-step evaluation.
//!
//! A closed term decomposes uniquely into either a value or a redex inside
//! an evaluation context. One head-reduction step contracts the redex and
//! plugs the result back in; the evaluator iterates that to a value.

use crate::closed::{env_lookup, Closed, ClosedNode, Env, Value};
use crate::term::{Term, TermNode};
use crate::trace::{EvalError, Machine, StepKind, StepLog};
use crate::ty::{Ref, Ty};

/// The three contractible shapes: a variable under an environment, an
/// application under an environment, and an applied lambda closure.
#[derive(Clone, PartialEq, Debug)]
pub enum Redex {
    Lookup { var: Ref, env: Env },
    Rapp { fun: Term, arg: Term, env: Env },
    Beta { body: Term, env: Env, arg: Closed },
}

impl Redex {
    pub fn kind(&self) -> StepKind {
        match self {
            Redex::Lookup { .. } => StepKind::Lookup,
            Redex::Rapp { .. } => StepKind::Rapp,
            Redex::Beta { .. } => StepKind::Beta,
        }
    }

    /// The type of the closed term this redex stands for.
    pub fn ty(&self) -> Ty {
        match self {
            Redex::Lookup { var, env } => env
                .get(var.index())
                .expect("lookup redex reference is in range")
                .ty()
                .clone(),
            Redex::Rapp { fun, .. } => fun
                .ty()
                .codomain()
                .expect("rapp redex function is an arrow")
                .clone(),
            Redex::Beta { body, .. } => body.ty().clone(),
        }
    }
}

/// Maps a redex back to the closed term it stands for.
pub fn from_redex(redex: &Redex) -> Closed {
    match redex {
        Redex::Lookup { var, env } => {
            let ty = env
                .get(var.index())
                .expect("lookup redex reference is in range")
                .ty()
                .clone();
            Closed::closure(Term::var(*var, ty), env.clone())
        }
        Redex::Rapp { fun, arg, env } => {
            Closed::closure(Term::app(fun.clone(), arg.clone()), env.clone())
        }
        Redex::Beta { body, env, arg } => Closed::clapp(
            Closed::closure(Term::lam("x", arg.ty().clone(), body.clone()), env.clone()),
            arg.clone(),
        ),
    }
}

/// Contracts a single redex: look the variable up, distribute the
/// environment over an application, or extend the environment with the
/// argument of a beta step.
pub fn contract(redex: &Redex) -> Closed {
    match redex {
        Redex::Lookup { var, env } => {
            env_lookup(env, *var).expect("lookup redex reference is in range")
        }
        Redex::Rapp { fun, arg, env } => Closed::clapp(
            Closed::closure(fun.clone(), env.clone()),
            Closed::closure(arg.clone(), env.clone()),
        ),
        Redex::Beta { body, env, arg } => Closed::closure(body.clone(), env.extended(arg.clone())),
    }
}

/// The pending arguments along a term's application spine, innermost
/// (next-applied) argument on top. Carries the destination type; the source
/// type is determined by the frames.
#[derive(Clone, PartialEq, Debug)]
pub struct EvalContext {
    /// Stored outermost-first so pushing and popping the innermost argument
    /// stay O(1).
    frames: Vec<Closed>,
    dest: Ty,
}

impl EvalContext {
    pub fn empty(dest: Ty) -> EvalContext {
        EvalContext {
            frames: Vec::new(),
            dest,
        }
    }

    /// Pushes a new innermost argument frame. A context from `t` to `r`
    /// becomes a context from `arg.ty() -> t` to `r`.
    pub fn push_arg(&mut self, arg: Closed) {
        self.frames.push(arg);
    }

    /// Pops the innermost argument frame.
    pub fn pop_arg(&mut self) -> Option<Closed> {
        self.frames.pop()
    }

    pub fn peek_arg(&self) -> Option<&Closed> {
        self.frames.last()
    }

    pub fn is_empty(&self) -> bool {
        self.frames.is_empty()
    }

    pub fn len(&self) -> usize {
        self.frames.len()
    }

    pub fn dest_ty(&self) -> &Ty {
        &self.dest
    }

    /// The type a term must have to be plugged into this context.
    pub fn source_ty(&self) -> Ty {
        let mut ty = self.dest.clone();
        for frame in &self.frames {
            ty = Ty::arrow(frame.ty().clone(), ty);
        }
        ty
    }

    /// Iterates arguments innermost first, the order in which `plug`
    /// applies them.
    pub fn iter(&self) -> impl Iterator<Item = &Closed> + '_ {
        self.frames.iter().rev()
    }
}

/// Applies the arguments of the evaluation context around a closed term.
pub fn plug(ctx: &EvalContext, c: &Closed) -> Closed {
    debug_assert_eq!(
        ctx.source_ty(),
        *c.ty(),
        "plugged term does not match the context source type"
    );
    let mut cur = c.clone();
    for arg in ctx.iter() {
        cur = Closed::clapp(cur, arg.clone());
    }
    cur
}

/// Either a value (the closure of a lambda) or a redex in an evaluation
/// context. Retains the subject term it decomposes so the defining
/// equations can be re-checked at runtime.
#[derive(Clone, PartialEq, Debug)]
pub struct Decomposition {
    subject: Closed,
    split: Split,
}

#[derive(Clone, PartialEq, Debug)]
pub enum Split {
    Val { body: Term, env: Env },
    Redex { redex: Redex, ctx: EvalContext },
}

impl Decomposition {
    pub(crate) fn from_parts(subject: Closed, split: Split) -> Decomposition {
        let d = Decomposition { subject, split };
        debug_assert!(d.check_subject(), "decomposition subject invariant");
        d
    }

    pub fn subject(&self) -> &Closed {
        &self.subject
    }

    pub fn split(&self) -> &Split {
        &self.split
    }

    pub fn into_parts(self) -> (Closed, Split) {
        (self.subject, self.split)
    }

    pub fn is_val(&self) -> bool {
        matches!(self.split, Split::Val { .. })
    }

    /// Re-checks the defining equations: a `Val` subject is the lambda
    /// closure itself, a `Redex` subject is `plug(ctx, from_redex(redex))`.
    pub fn check_subject(&self) -> bool {
        match &self.split {
            Split::Val { body, env } => match self.subject.ty().domain() {
                Some(dom) => {
                    let lam = Term::lam("x", dom.clone(), body.clone());
                    self.subject == Closed::closure(lam, env.clone())
                }
                None => false,
            },
            Split::Redex { redex, ctx } => self.subject == plug(ctx, &from_redex(redex)),
        }
    }
}

/// Walks the spine of `c`, accumulating arguments in the evaluation context
/// until a redex or a lambda closure is found. The lambda case inspects the
/// accumulated context the way `unload` does: an empty context means the
/// term is a value, otherwise the top argument forms a beta redex.
pub fn load(ctx: EvalContext, c: Closed) -> Decomposition {
    let subject = plug(&ctx, &c);
    load_with_subject(subject, ctx, c)
}

fn load_with_subject(subject: Closed, mut ctx: EvalContext, c: Closed) -> Decomposition {
    let mut cur = c;
    loop {
        let next = match cur.node() {
            ClosedNode::Closure { term, env } => {
                let split = match term.node() {
                    TermNode::Lam { body, .. } => match ctx.pop_arg() {
                        None => Split::Val {
                            body: body.clone(),
                            env: env.clone(),
                        },
                        Some(arg) => Split::Redex {
                            redex: Redex::Beta {
                                body: body.clone(),
                                env: env.clone(),
                                arg,
                            },
                            ctx,
                        },
                    },
                    TermNode::App { fun, arg } => Split::Redex {
                        redex: Redex::Rapp {
                            fun: fun.clone(),
                            arg: arg.clone(),
                            env: env.clone(),
                        },
                        ctx,
                    },
                    TermNode::Var(r) => Split::Redex {
                        redex: Redex::Lookup {
                            var: *r,
                            env: env.clone(),
                        },
                        ctx,
                    },
                };
                return Decomposition::from_parts(subject, split);
            }
            ClosedNode::Clapp { fun, arg } => {
                ctx.push_arg(arg.clone());
                fun.clone()
            }
        };
        cur = next;
    }
}

/// Inspects an evaluation context accumulated for a lambda closure
/// `Closure(\_. body, env)`: empty means value, otherwise the top argument
/// is consumed by a beta redex.
pub fn unload(mut ctx: EvalContext, body: Term, env: Env) -> Decomposition {
    let source = ctx.source_ty();
    let bound = source
        .domain()
        .expect("unload context source is an arrow type")
        .clone();
    let closure = Closed::closure(Term::lam("x", bound, body.clone()), env.clone());
    let subject = plug(&ctx, &closure);
    let split = match ctx.pop_arg() {
        None => Split::Val { body, env },
        Some(arg) => Split::Redex {
            redex: Redex::Beta { body, env, arg },
            ctx,
        },
    };
    Decomposition::from_parts(subject, split)
}

/// Decomposes a closed term, starting from an empty evaluation context.
pub fn decompose(c: &Closed) -> Decomposition {
    load(EvalContext::empty(c.ty().clone()), c.clone())
}

/// A single head-reduction step: decompose, contract, plug. Values are
/// returned unchanged.
pub fn head_reduce(c: &Closed) -> Closed {
    match decompose(c).into_parts() {
        (subject, Split::Val { .. }) => subject,
        (_, Split::Redex { redex, ctx }) => plug(&ctx, &contract(&redex)),
    }
}

pub fn evaluate_smallstep(c: &Closed, fuel: u64) -> Result<(Value, StepLog), EvalError> {
    evaluate_smallstep_traced(c, fuel, false)
}

/// Iterates head reduction until a value is reached, spending one unit of
/// fuel per contraction. `verbose` records the decomposed term before each
/// step in the log.
pub fn evaluate_smallstep_traced(
    c: &Closed,
    fuel: u64,
    verbose: bool,
) -> Result<(Value, StepLog), EvalError> {
    if fuel == 0 {
        return Err(EvalError::ZeroFuel);
    }
    let mut log = StepLog::new(Machine::Smallstep);
    let mut current = c.clone();
    loop {
        match decompose(&current).into_parts() {
            (subject, Split::Val { .. }) => {
                let value = Value::new(subject).expect("a Val decomposition is a lambda closure");
                return Ok((value, log));
            }
            (subject, Split::Redex { redex, ctx }) => {
                if log.fuel_used == fuel {
                    return Err(EvalError::FuelExhausted { fuel, log });
                }
                let state = verbose.then(|| subject.to_json());
                log.push(redex.kind(), state);
                current = plug(&ctx, &contract(&redex));
            }
        }
    }
}
