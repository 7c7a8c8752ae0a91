//! The refocused small-step abstract machine.
//!
//! Instead of plugging a contracted term back into its context and
//! re-decomposing from the root, `refocus` continues the search for the next
//! redex from the contraction site, carrying the current evaluation context.
//! It agrees with `decompose . plug` on every context/term pair; the
//! equality is checked as a runtime property by the test suites.

use crate::closed::{Closed, ClosedNode, Value};
use crate::reduction::{contract, plug, Decomposition, EvalContext, Redex, Split};
use crate::term::TermNode;
use crate::trace::{EvalError, Machine, StepLog};

/// Navigates directly to the next redex of `plug(ctx, c)`, if any.
///
/// The five cases: a lambda closure is a value under an empty context and a
/// beta redex under a nonempty one; variable and application closures are
/// redexes in the current context; a closed application descends into its
/// function, pushing the argument.
pub fn refocus(ctx: EvalContext, c: Closed) -> Decomposition {
    let subject = plug(&ctx, &c);
    let mut ctx = ctx;
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
                    TermNode::Var(r) => Split::Redex {
                        redex: Redex::Lookup {
                            var: *r,
                            env: env.clone(),
                        },
                        ctx,
                    },
                    TermNode::App { fun, arg } => Split::Redex {
                        redex: Redex::Rapp {
                            fun: fun.clone(),
                            arg: arg.clone(),
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

pub fn evaluate_refocus(c: &Closed, fuel: u64) -> Result<(Value, StepLog), EvalError> {
    evaluate_refocus_traced(c, fuel, false)
}

/// Repeatedly refocuses and contracts until a value is reached, spending one
/// unit of fuel per contraction.
pub fn evaluate_refocus_traced(
    c: &Closed,
    fuel: u64,
    verbose: bool,
) -> Result<(Value, StepLog), EvalError> {
    if fuel == 0 {
        return Err(EvalError::ZeroFuel);
    }
    let mut log = StepLog::new(Machine::Refocus);
    let mut d = refocus(EvalContext::empty(c.ty().clone()), c.clone());
    loop {
        match d.into_parts() {
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
                d = refocus(ctx, contract(&redex));
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closed::Env;
    use crate::elaborate::elaborate_closed;
    use crate::parse::parse_term;
    use crate::reduction::{decompose, evaluate_smallstep};
    use crate::term::Term;
    use crate::trace::StepKind;
    use crate::ty::{Ref, Ty};

    fn closure(src: &str) -> Closed {
        Closed::closure(
            elaborate_closed(&parse_term(src).unwrap()).unwrap(),
            Env::nil(),
        )
    }

    fn id_o() -> Closed {
        closure("\\x:o. x")
    }

    fn id_oo() -> Closed {
        closure("\\p:o->o. p")
    }

    #[test]
    fn lambda_closure_under_empty_context_is_a_value() {
        let c = id_o();
        let d = refocus(EvalContext::empty(c.ty().clone()), c.clone());
        assert!(d.is_val());
        assert_eq!(d.subject(), &c);
        assert!(d.check_subject());
    }

    #[test]
    fn lambda_closure_under_nonempty_context_is_a_beta_redex() {
        let v = id_o();
        let mut ctx = EvalContext::empty(Ty::arrow(Ty::Base, Ty::Base));
        ctx.push_arg(v.clone());
        let d = refocus(ctx, id_oo());
        assert!(d.check_subject());
        match d.split() {
            Split::Redex { redex, ctx } => {
                assert_eq!(
                    redex,
                    &Redex::Beta {
                        body: Term::var(Ref(0), Ty::arrow(Ty::Base, Ty::Base)),
                        env: Env::nil(),
                        arg: v,
                    }
                );
                assert!(ctx.is_empty());
            }
            _ => panic!("expected a redex"),
        }
    }

    #[test]
    fn clapp_descends_then_splits_at_the_variable() {
        // refocus(MT, Clapp(Closure(Var 0, [f]), x)) finds the lookup with
        // ARG x left in the context.
        let f = closure("\\q:o->o. q");
        let env = Env::nil().extended(f.clone());
        let head = Closed::closure(Term::var(Ref(0), f.ty().clone()), env.clone());
        let x = id_o();
        let c = Closed::clapp(head, x.clone());
        let d = refocus(EvalContext::empty(c.ty().clone()), c.clone());
        assert!(d.check_subject());
        match d.split() {
            Split::Redex { redex, ctx } => {
                assert_eq!(redex, &Redex::Lookup { var: Ref(0), env });
                assert_eq!(ctx.len(), 1);
                assert_eq!(ctx.peek_arg(), Some(&x));
            }
            _ => panic!("expected a redex"),
        }
        // Same decomposition as the plug/decompose route.
        assert_eq!(d, decompose(&c));
    }

    #[test]
    fn evaluate_value_takes_no_steps() {
        let v = id_o();
        let (value, log) = evaluate_refocus(&v, 10).unwrap();
        assert_eq!(value.closed(), &v);
        assert!(log.is_empty());
    }

    #[test]
    fn evaluate_applied_identity_matches_smallstep() {
        let c = closure("(\\x:o->o. x) (\\y:o. y)");
        let (value, log) = evaluate_refocus(&c, 100).unwrap();
        assert_eq!(log.machine, Machine::Refocus);
        assert_eq!(value.closed(), &closure("\\y:o. y"));
        assert_eq!(
            log.kinds(),
            vec![StepKind::Rapp, StepKind::Beta, StepKind::Lookup]
        );
        let (sv, slog) = evaluate_smallstep(&c, 100).unwrap();
        assert_eq!(value.closed(), sv.closed());
        assert_eq!(log.kinds(), slog.kinds());
    }

    #[test]
    fn evaluate_two_stage_application() {
        // ((\f:(o->o)->o->o. f) (\g:o->o. g)) (\z:o. z) : o -> o
        let c = closure("((\\f:(o->o)->o->o. f) (\\g:o->o. g)) (\\z:o. z)");
        let (value, log) = evaluate_refocus(&c, 100).unwrap();
        assert_eq!(value.closed(), &closure("\\z:o. z"));
        let (sv, slog) = evaluate_smallstep(&c, 100).unwrap();
        assert_eq!(value.closed(), sv.closed());
        assert_eq!(log.kinds(), slog.kinds());
        assert_eq!(
            log.kinds(),
            vec![
                StepKind::Rapp,
                StepKind::Rapp,
                StepKind::Beta,
                StepKind::Lookup,
                StepKind::Beta,
                StepKind::Lookup,
            ]
        );
    }

    #[test]
    fn zero_fuel_is_rejected() {
        assert_eq!(evaluate_refocus(&id_o(), 0), Err(EvalError::ZeroFuel));
    }

    #[test]
    fn refocus_agrees_with_decompose_plug_on_hand_cases() {
        let v = id_o();
        // (ctx, c) pairs with compatible types.
        let cases: Vec<(EvalContext, Closed)> = vec![
            (EvalContext::empty(v.ty().clone()), v.clone()),
            (
                {
                    let mut ctx = EvalContext::empty(Ty::arrow(Ty::Base, Ty::Base));
                    ctx.push_arg(v.clone());
                    ctx
                },
                id_oo(),
            ),
            (
                EvalContext::empty(Ty::arrow(Ty::Base, Ty::Base)),
                Closed::clapp(id_oo(), v.clone()),
            ),
        ];
        for (ctx, c) in cases {
            let direct = refocus(ctx.clone(), c.clone());
            let via_plug = decompose(&plug(&ctx, &c));
            assert_eq!(direct, via_plug);
            assert!(direct.check_subject());
        }
    }
}
