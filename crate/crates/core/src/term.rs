use std::fmt;
use std::sync::Arc;

use crate::ty::{Context, Ref, Ty};

/// A well-scoped de Bruijn term annotated with its type at every node.
///
/// Nodes are reference counted so closures and environments can share
/// subterms without copying. Binder names are kept as display hints only;
/// equality ignores them.
#[derive(Clone)]
pub struct Term(Arc<TermData>);

struct TermData {
    node: TermNode,
    ty: Ty,
}

pub enum TermNode {
    Lam { name: String, bound: Ty, body: Term },
    App { fun: Term, arg: Term },
    Var(Ref),
}

impl Term {
    pub fn lam(name: impl Into<String>, bound: Ty, body: Term) -> Term {
        let ty = Ty::arrow(bound.clone(), body.ty().clone());
        Term(Arc::new(TermData {
            node: TermNode::Lam {
                name: name.into(),
                bound,
                body,
            },
            ty,
        }))
    }

    pub fn app(fun: Term, arg: Term) -> Term {
        let ty = match fun.ty() {
            Ty::Arrow(dom, cod) => {
                debug_assert_eq!(
                    dom.as_ref(),
                    arg.ty(),
                    "application domain does not match argument type"
                );
                (**cod).clone()
            }
            Ty::Base => panic!("applied a term of base type"),
        };
        Term(Arc::new(TermData {
            node: TermNode::App { fun, arg },
            ty,
        }))
    }

    /// Builds an application with an explicit result annotation and no
    /// checking. Exists so the dynamic type checker can be exercised on
    /// deliberately ill-typed trees.
    pub fn app_unchecked(fun: Term, arg: Term, ty: Ty) -> Term {
        Term(Arc::new(TermData {
            node: TermNode::App { fun, arg },
            ty,
        }))
    }

    pub fn var(r: Ref, ty: Ty) -> Term {
        Term(Arc::new(TermData {
            node: TermNode::Var(r),
            ty,
        }))
    }

    pub fn node(&self) -> &TermNode {
        &self.0.node
    }

    /// The cached type annotation of this node.
    pub fn ty(&self) -> &Ty {
        &self.0.ty
    }

    pub fn ptr_eq(&self, other: &Term) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }

    pub fn is_lam(&self) -> bool {
        matches!(self.node(), TermNode::Lam { .. })
    }

    /// Number of AST nodes.
    pub fn node_count(&self) -> usize {
        match self.node() {
            TermNode::Lam { body, .. } => 1 + body.node_count(),
            TermNode::App { fun, arg } => 1 + fun.node_count() + arg.node_count(),
            TermNode::Var(_) => 1,
        }
    }

    /// Maximum nesting depth of lambda binders.
    pub fn binder_depth(&self) -> usize {
        match self.node() {
            TermNode::Lam { body, .. } => 1 + body.binder_depth(),
            TermNode::App { fun, arg } => fun.binder_depth().max(arg.binder_depth()),
            TermNode::Var(_) => 0,
        }
    }

    /// Verifies every cached annotation against a bottom-up re-inference.
    pub fn check_annotations(&self, ctx: &Context) -> Result<(), TypeError> {
        let computed = match self.node() {
            TermNode::Var(r) => ctx.get(*r).cloned().ok_or(TypeError::IllScoped {
                index: r.index(),
                depth: ctx.len(),
            })?,
            TermNode::Lam { bound, body, .. } => {
                body.check_annotations(&ctx.extended(bound.clone()))?;
                Ty::arrow(bound.clone(), body.ty().clone())
            }
            TermNode::App { fun, arg } => {
                fun.check_annotations(ctx)?;
                arg.check_annotations(ctx)?;
                match fun.ty() {
                    Ty::Arrow(dom, cod) if dom.as_ref() == arg.ty() => (**cod).clone(),
                    _ => {
                        return Err(TypeError::IllTyped {
                            fun_ty: fun.ty().clone(),
                            arg_ty: arg.ty().clone(),
                        })
                    }
                }
            }
        };
        if &computed == self.ty() {
            Ok(())
        } else {
            Err(TypeError::AnnotationMismatch {
                computed,
                cached: self.ty().clone(),
            })
        }
    }
}

impl PartialEq for Term {
    fn eq(&self, other: &Term) -> bool {
        if Arc::ptr_eq(&self.0, &other.0) {
            return true;
        }
        if self.ty() != other.ty() {
            return false;
        }
        match (self.node(), other.node()) {
            (
                TermNode::Lam {
                    bound: b1,
                    body: t1,
                    ..
                },
                TermNode::Lam {
                    bound: b2,
                    body: t2,
                    ..
                },
            ) => b1 == b2 && t1 == t2,
            (TermNode::App { fun: f1, arg: a1 }, TermNode::App { fun: f2, arg: a2 }) => {
                f1 == f2 && a1 == a2
            }
            (TermNode::Var(r1), TermNode::Var(r2)) => r1 == r2,
            _ => false,
        }
    }
}

impl Eq for Term {}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::print::term_string(self, false))
    }
}

impl fmt::Debug for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} : {}", self, self.ty())
    }
}

/// Re-inference errors raised by the dynamic type checker.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TypeError {
    #[error("variable index {index} out of scope (context has {depth} entries)")]
    IllScoped { index: usize, depth: usize },
    #[error("ill-typed application: function has type {fun_ty}, argument has type {arg_ty}")]
    IllTyped { fun_ty: Ty, arg_ty: Ty },
    #[error("cached annotation {cached} disagrees with inferred type {computed}")]
    AnnotationMismatch { computed: Ty, cached: Ty },
}

/// Recomputes the type of `term` under `ctx` from the leaves up, using only
/// binder annotations. Agrees with the cached annotations on any term built
/// through the checked constructors.
pub fn infer_type(term: &Term, ctx: &Context) -> Result<Ty, TypeError> {
    match term.node() {
        TermNode::Var(r) => ctx.get(*r).cloned().ok_or(TypeError::IllScoped {
            index: r.index(),
            depth: ctx.len(),
        }),
        TermNode::Lam { bound, body, .. } => {
            let body_ty = infer_type(body, &ctx.extended(bound.clone()))?;
            Ok(Ty::arrow(bound.clone(), body_ty))
        }
        TermNode::App { fun, arg } => {
            let fun_ty = infer_type(fun, ctx)?;
            let arg_ty = infer_type(arg, ctx)?;
            match fun_ty {
                Ty::Arrow(ref dom, ref cod) if dom.as_ref() == &arg_ty => Ok((**cod).clone()),
                _ => Err(TypeError::IllTyped { fun_ty, arg_ty }),
            }
        }
    }
}
