//! Printers for types and terms.
//!
//! Every printer has a minimally parenthesized mode (the default) and a
//! fully parenthesized mode. De Bruijn terms are rendered back to surface
//! syntax using the binder name hints recorded during elaboration; names
//! that would shadow an enclosing binder are freshened with primes so the
//! output elaborates back to the same de Bruijn term.

use crate::surface::SurfaceTerm;
use crate::term::{Term, TermNode};
use crate::ty::Ty;

pub fn type_string(ty: &Ty, full_parens: bool) -> String {
    let mut out = String::new();
    write_type(&mut out, ty, full_parens, false);
    out
}

fn write_type(out: &mut String, ty: &Ty, full: bool, domain_position: bool) {
    match ty {
        Ty::Base => out.push('o'),
        Ty::Arrow(dom, cod) => {
            let parens = full || domain_position;
            if parens {
                out.push('(');
            }
            write_type(out, dom, full, true);
            out.push_str(" -> ");
            write_type(out, cod, full, false);
            if parens {
                out.push(')');
            }
        }
    }
}

#[derive(Clone, Copy, PartialEq)]
enum Pos {
    Top,
    AppFun,
    AppArg,
}

pub fn surface_string(term: &SurfaceTerm, full_parens: bool) -> String {
    let mut out = String::new();
    write_surface(&mut out, term, full_parens, Pos::Top);
    out
}

fn write_surface(out: &mut String, term: &SurfaceTerm, full: bool, pos: Pos) {
    match term {
        SurfaceTerm::Var { name, .. } => out.push_str(name),
        SurfaceTerm::Lam {
            name, ann, body, ..
        } => {
            // A lambda in application position must be parenthesized or the
            // body would swallow the surrounding arguments.
            let parens = full || pos != Pos::Top;
            if parens {
                out.push('(');
            }
            out.push('\\');
            out.push_str(name);
            out.push(':');
            write_type(out, ann, full, false);
            out.push_str(". ");
            write_surface(out, body, full, Pos::Top);
            if parens {
                out.push(')');
            }
        }
        SurfaceTerm::App { fun, arg, .. } => {
            let parens = full || pos == Pos::AppArg;
            if parens {
                out.push('(');
            }
            write_surface(out, fun, full, Pos::AppFun);
            out.push(' ');
            write_surface(out, arg, full, Pos::AppArg);
            if parens {
                out.push(')');
            }
        }
    }
}

/// Renders a de Bruijn term back to named surface syntax.
///
/// Free variables (indices pointing past the printed binders, i.e. into the
/// closure environment) are shown as `$k` where `k` is the environment slot;
/// such output is for display only and is not part of the term grammar.
pub fn term_to_surface(term: &Term) -> SurfaceTerm {
    let mut scope = Vec::new();
    to_surface(term, &mut scope)
}

fn to_surface(term: &Term, scope: &mut Vec<String>) -> SurfaceTerm {
    use crate::surface::Span;
    match term.node() {
        TermNode::Var(r) => {
            let i = r.index();
            let name = if i < scope.len() {
                scope[scope.len() - 1 - i].clone()
            } else {
                format!("${}", i - scope.len())
            };
            SurfaceTerm::Var {
                name,
                span: Span::dummy(),
            }
        }
        TermNode::Lam { name, bound, body } => {
            let mut fresh = if name.is_empty() {
                "x".to_string()
            } else {
                name.clone()
            };
            while scope.contains(&fresh) {
                fresh.push('\'');
            }
            scope.push(fresh.clone());
            let body = to_surface(body, scope);
            scope.pop();
            SurfaceTerm::Lam {
                name: fresh,
                ann: bound.clone(),
                body: Box::new(body),
                span: Span::dummy(),
            }
        }
        TermNode::App { fun, arg } => SurfaceTerm::App {
            fun: Box::new(to_surface(fun, scope)),
            arg: Box::new(to_surface(arg, scope)),
            span: Span::dummy(),
        },
    }
}

pub fn term_string(term: &Term, full_parens: bool) -> String {
    surface_string(&term_to_surface(term), full_parens)
}

/// Renders a value: the lambda in surface syntax plus a summary of its
/// captured environment (entry count and types).
pub fn value_string(value: &crate::closed::Value) -> String {
    use crate::closed::ClosedNode;
    match value.closed().node() {
        ClosedNode::Closure { term, env } => {
            format!("{}  [in env: {}]", term_string(term, false), env.summary())
        }
        ClosedNode::Clapp { .. } => unreachable!("values are lambda closures"),
    }
}

/// Like [`value_string`] but lists every environment entry recursively, one
/// indented line per entry.
pub fn value_string_verbose(value: &crate::closed::Value) -> String {
    let mut out = String::new();
    describe_closed(&mut out, value.closed(), 0);
    out
}

fn describe_closed(out: &mut String, c: &crate::closed::Closed, indent: usize) {
    use crate::closed::ClosedNode;
    match c.node() {
        ClosedNode::Closure { term, env } => {
            out.push_str(&term_string(term, false));
            out.push_str("  [in env: ");
            out.push_str(&env.summary());
            out.push(']');
            for (i, entry) in env.iter().enumerate() {
                out.push('\n');
                out.push_str(&"  ".repeat(indent + 1));
                out.push_str(&format!("env[{i}] = "));
                describe_closed(out, entry, indent + 1);
            }
        }
        ClosedNode::Clapp { .. } => {
            // Pending applications render on one line.
            out.push_str(&c.to_string());
        }
    }
}
