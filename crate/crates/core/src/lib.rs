//! A workbench for the simply typed lambda calculus over one base type.
//!
//! Three provably equivalent ways to reduce a closed term to its weak head
//! normal form:
//!
//! * [`reduction::evaluate_smallstep`] — repeatedly decompose into a redex
//!   and evaluation context, contract, and plug back in;
//! * [`refocus::evaluate_refocus`] — the same reduction relation driven by
//!   a refocused navigation that resumes the redex search at the
//!   contraction site;
//! * [`krivine::evaluate_krivine`] — the Krivine machine, a first-order
//!   transition system whose environments and contexts never contain
//!   closed applications.
//!
//! The agreement of the three evaluators, and the equations relating
//! `decompose`, `plug`, `load` and `refocus`, are executable properties
//! exercised by the test suites and by the [`diff`] harness.

pub mod closed;
pub mod diff;
pub mod elaborate;
pub mod generate;
pub mod krivine;
pub mod parse;
pub mod print;
pub mod reduction;
pub mod refocus;
pub mod surface;
pub mod term;
pub mod trace;
pub mod ty;

pub use closed::{env_lookup, Closed, ClosedNode, Env, Value};
pub use diff::{run_diff, DiffEntry, DiffReport};
pub use elaborate::{elaborate, elaborate_closed, ElabError};
pub use generate::{generate_terms, GenConfig, GenError};
pub use krivine::{
    evaluate_krivine, evaluate_krivine_traced, krivine_step, valid_lookup, KrivineOutcome,
    MachineState, Transition, ValidClosure,
};
pub use parse::{parse_term, parse_type, SyntaxError};
pub use reduction::{
    contract, decompose, evaluate_smallstep, evaluate_smallstep_traced, from_redex, head_reduce,
    load, plug, unload, Decomposition, EvalContext, Redex, Split,
};
pub use refocus::{evaluate_refocus, evaluate_refocus_traced, refocus};
pub use surface::{Span, SurfaceTerm};
pub use term::{infer_type, Term, TermNode, TypeError};
pub use trace::{EvalError, Machine, StepKind, StepLog};
pub use ty::{Context, Ref, Ty};

/// The default contraction budget; generous for anything the generator or a
/// person will write, finite so a bug cannot loop forever.
pub const DEFAULT_FUEL: u64 = 1_000_000;

/// A parse or elaboration failure, with its source span.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SourceError {
    #[error(transparent)]
    Syntax(#[from] SyntaxError),
    #[error(transparent)]
    Elab(#[from] ElabError),
}

impl SourceError {
    pub fn span(&self) -> Span {
        match self {
            SourceError::Syntax(e) => e.span,
            SourceError::Elab(e) => e.span(),
        }
    }
}

/// Parses and elaborates a closed term.
pub fn check_source(src: &str) -> Result<Term, SourceError> {
    let surface = parse_term(src)?;
    Ok(elaborate_closed(&surface)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn check_source_reports_both_error_kinds() {
        assert_eq!(
            check_source("(\\x:o->o. x) (\\y:o. y)")
                .unwrap()
                .ty()
                .to_string(),
            "o -> o"
        );
        assert!(matches!(
            check_source("\\x:o. (").unwrap_err(),
            SourceError::Syntax(_)
        ));
        let err = check_source("\\x:o. y").unwrap_err();
        assert!(matches!(err, SourceError::Elab(_)));
        assert_eq!(err.span(), Span::new(6, 7));
    }
}
