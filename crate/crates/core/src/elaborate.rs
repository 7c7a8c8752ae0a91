//! Elaboration of named surface terms into annotated de Bruijn terms.

use crate::surface::{Span, SurfaceTerm};
use crate::term::Term;
use crate::ty::{Ref, Ty};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ElabError {
    #[error("unbound variable `{name}` at {span}")]
    UnboundVariable { name: String, span: Span },
    #[error("type mismatch at {span}: expected {expected}, found {found}")]
    TypeMismatch { expected: Ty, found: Ty, span: Span },
    #[error("cannot apply a term of type {found} at {span}")]
    NonArrowApplication { found: Ty, span: Span },
}

impl ElabError {
    pub fn span(&self) -> Span {
        match self {
            ElabError::UnboundVariable { span, .. }
            | ElabError::TypeMismatch { span, .. }
            | ElabError::NonArrowApplication { span, .. } => *span,
        }
    }
}

/// Resolves names to de Bruijn indices and checks application types.
///
/// `ctx` lists the enclosing binders innermost first. Shadowed names resolve
/// to the nearest enclosing binder.
pub fn elaborate(surface: &SurfaceTerm, ctx: &[(String, Ty)]) -> Result<Term, ElabError> {
    // The recursion keeps the stack innermost-last so extension is a push.
    let mut scope: Vec<(String, Ty)> = ctx.iter().rev().cloned().collect();
    elab(surface, &mut scope)
}

/// Elaborates a term with no free variables.
pub fn elaborate_closed(surface: &SurfaceTerm) -> Result<Term, ElabError> {
    elaborate(surface, &[])
}

fn elab(surface: &SurfaceTerm, scope: &mut Vec<(String, Ty)>) -> Result<Term, ElabError> {
    match surface {
        SurfaceTerm::Var { name, span } => {
            let slot = scope.iter().rev().position(|(n, _)| n == name);
            match slot {
                Some(i) => {
                    let ty = scope[scope.len() - 1 - i].1.clone();
                    Ok(Term::var(Ref(i), ty))
                }
                None => Err(ElabError::UnboundVariable {
                    name: name.clone(),
                    span: *span,
                }),
            }
        }
        SurfaceTerm::Lam {
            name, ann, body, ..
        } => {
            scope.push((name.clone(), ann.clone()));
            let body = elab(body, scope);
            scope.pop();
            Ok(Term::lam(name.clone(), ann.clone(), body?))
        }
        SurfaceTerm::App { fun, arg, .. } => {
            let fun_span = fun.span();
            let arg_span = arg.span();
            let fun = elab(fun, scope)?;
            let arg = elab(arg, scope)?;
            match fun.ty() {
                Ty::Arrow(dom, _) => {
                    if dom.as_ref() == arg.ty() {
                        Ok(Term::app(fun, arg))
                    } else {
                        Err(ElabError::TypeMismatch {
                            expected: (**dom).clone(),
                            found: arg.ty().clone(),
                            span: arg_span,
                        })
                    }
                }
                Ty::Base => Err(ElabError::NonArrowApplication {
                    found: fun.ty().clone(),
                    span: fun_span,
                }),
            }
        }
    }
}
