//! Closed terms: closures, environments and values.
//!
//! A closure pairs a term with an environment supplying a closed term for
//! every free variable; closed terms are additionally closed under
//! application. Environments are persistent cons lists, so extending one
//! shares the tail with every closure already holding it.

use std::fmt;
use std::sync::Arc;

use crate::term::{Term, TypeError};
use crate::ty::{Context, Ref, Ty};

#[derive(Clone)]
pub struct Closed(Arc<ClosedData>);

struct ClosedData {
    node: ClosedNode,
    ty: Ty,
}

pub enum ClosedNode {
    Closure { term: Term, env: Env },
    Clapp { fun: Closed, arg: Closed },
}

impl Closed {
    pub fn closure(term: Term, env: Env) -> Closed {
        debug_assert!(
            term.check_annotations(&env.context()).is_ok(),
            "closure term is not well typed in its environment's context"
        );
        let ty = term.ty().clone();
        Closed(Arc::new(ClosedData {
            node: ClosedNode::Closure { term, env },
            ty,
        }))
    }

    pub fn clapp(fun: Closed, arg: Closed) -> Closed {
        let ty = match fun.ty() {
            Ty::Arrow(dom, cod) => {
                debug_assert_eq!(
                    dom.as_ref(),
                    arg.ty(),
                    "closed application domain does not match argument type"
                );
                (**cod).clone()
            }
            Ty::Base => panic!("closed application of a base-typed term"),
        };
        Closed(Arc::new(ClosedData {
            node: ClosedNode::Clapp { fun, arg },
            ty,
        }))
    }

    pub fn node(&self) -> &ClosedNode {
        &self.0.node
    }

    pub fn ty(&self) -> &Ty {
        &self.0.ty
    }

    pub fn ptr_eq(&self, other: &Closed) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }

    /// Closed lambda expressions are the only values.
    pub fn is_val(&self) -> bool {
        match self.node() {
            ClosedNode::Closure { term, .. } => term.is_lam(),
            ClosedNode::Clapp { .. } => false,
        }
    }

    /// Recursively re-checks every cached type, including those inside
    /// environments, against re-inference.
    pub fn check_types(&self) -> Result<(), TypeError> {
        match self.node() {
            ClosedNode::Closure { term, env } => {
                term.check_annotations(&env.context())?;
                if term.ty() != self.ty() {
                    return Err(TypeError::AnnotationMismatch {
                        computed: term.ty().clone(),
                        cached: self.ty().clone(),
                    });
                }
                for entry in env.iter() {
                    entry.check_types()?;
                }
                Ok(())
            }
            ClosedNode::Clapp { fun, arg } => {
                fun.check_types()?;
                arg.check_types()?;
                match fun.ty() {
                    Ty::Arrow(dom, cod)
                        if dom.as_ref() == arg.ty() && cod.as_ref() == self.ty() =>
                    {
                        Ok(())
                    }
                    _ => Err(TypeError::IllTyped {
                        fun_ty: fun.ty().clone(),
                        arg_ty: arg.ty().clone(),
                    }),
                }
            }
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        match self.node() {
            ClosedNode::Closure { term, env } => serde_json::json!({
                "kind": "closure",
                "term": crate::print::term_string(term, false),
                "env": env.to_json(),
            }),
            ClosedNode::Clapp { fun, arg } => serde_json::json!({
                "kind": "clapp",
                "fun": fun.to_json(),
                "arg": arg.to_json(),
            }),
        }
    }
}

/// Structural equality over the whole tree, environments included.
impl PartialEq for Closed {
    fn eq(&self, other: &Closed) -> bool {
        if Arc::ptr_eq(&self.0, &other.0) {
            return true;
        }
        if self.ty() != other.ty() {
            return false;
        }
        match (self.node(), other.node()) {
            (
                ClosedNode::Closure { term: t1, env: e1 },
                ClosedNode::Closure { term: t2, env: e2 },
            ) => t1 == t2 && e1 == e2,
            (ClosedNode::Clapp { fun: f1, arg: a1 }, ClosedNode::Clapp { fun: f2, arg: a2 }) => {
                f1 == f2 && a1 == a2
            }
            _ => false,
        }
    }
}

impl Eq for Closed {}

impl fmt::Display for Closed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.node() {
            ClosedNode::Closure { term, env } => {
                write!(f, "{} [env: {}]", term, env.summary())
            }
            ClosedNode::Clapp { fun, arg } => write!(f, "({} @ {})", fun, arg),
        }
    }
}

impl fmt::Debug for Closed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Environment of closed terms; entry `i` is the binding of de Bruijn
/// index `i`.
#[derive(Clone, Default)]
pub struct Env(Option<Arc<EnvNode>>);

struct EnvNode {
    head: Closed,
    tail: Env,
}

impl Env {
    pub fn nil() -> Env {
        Env(None)
    }

    /// Prepends a binding for the new innermost variable; the tail is shared.
    pub fn extended(&self, head: Closed) -> Env {
        Env(Some(Arc::new(EnvNode {
            head,
            tail: self.clone(),
        })))
    }

    pub fn get(&self, index: usize) -> Option<&Closed> {
        let mut cur = self;
        let mut i = index;
        loop {
            let node = cur.0.as_deref()?;
            if i == 0 {
                return Some(&node.head);
            }
            i -= 1;
            cur = &node.tail;
        }
    }

    pub fn len(&self) -> usize {
        self.iter().count()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_none()
    }

    /// Iterates entries innermost first.
    pub fn iter(&self) -> EnvIter<'_> {
        EnvIter(self)
    }

    /// The typing context this environment realizes.
    pub fn context(&self) -> Context {
        Context::from_types(self.iter().map(|c| c.ty().clone()).collect())
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(self.iter().map(Closed::to_json).collect())
    }

    /// Short human-readable description: entry count and entry types.
    pub fn summary(&self) -> String {
        if self.is_empty() {
            return "<empty>".to_string();
        }
        let tys: Vec<String> = self.iter().map(|c| c.ty().to_string()).collect();
        let noun = if tys.len() == 1 { "entry" } else { "entries" };
        format!("{} {}: {}", tys.len(), noun, tys.join(", "))
    }
}

pub struct EnvIter<'a>(&'a Env);

impl<'a> Iterator for EnvIter<'a> {
    type Item = &'a Closed;

    fn next(&mut self) -> Option<&'a Closed> {
        let node = self.0 .0.as_deref()?;
        self.0 = &node.tail;
        Some(&node.head)
    }
}

impl PartialEq for Env {
    fn eq(&self, other: &Env) -> bool {
        match (&self.0, &other.0) {
            (None, None) => true,
            (Some(a), Some(b)) => Arc::ptr_eq(a, b) || (a.head == b.head && a.tail == b.tail),
            _ => false,
        }
    }
}

impl Eq for Env {}

impl fmt::Debug for Env {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.iter()).finish()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EnvError {
    #[error("reference {index} out of range for environment of length {len}")]
    IndexOutOfRange { index: usize, len: usize },
}

/// Looks up the closed term bound to a reference. Elaborated terms can never
/// go out of range; an error here signals a hand-built ill-scoped input.
pub fn env_lookup(env: &Env, r: Ref) -> Result<Closed, EnvError> {
    env.get(r.index())
        .cloned()
        .ok_or_else(|| EnvError::IndexOutOfRange {
            index: r.index(),
            len: env.len(),
        })
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("closed term is not a value: {found}")]
pub struct NotAValue {
    pub found: String,
}

/// A closed term known to satisfy `is_val`; [`Value::new`] is the only
/// constructor.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Value(Closed);

impl Value {
    pub fn new(c: Closed) -> Result<Value, NotAValue> {
        if c.is_val() {
            Ok(Value(c))
        } else {
            Err(NotAValue {
                found: c.to_string(),
            })
        }
    }

    pub fn closed(&self) -> &Closed {
        &self.0
    }

    pub fn into_closed(self) -> Closed {
        self.0
    }

    pub fn to_json(&self) -> serde_json::Value {
        self.0.to_json()
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}
