use std::fmt;

use crate::ty::Ty;

/// Byte range in the source text.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub struct Span {
    pub start: usize,
    pub end: usize,
}

impl Span {
    pub fn new(start: usize, end: usize) -> Span {
        Span { start, end }
    }

    pub fn dummy() -> Span {
        Span::default()
    }

    pub fn merge(self, other: Span) -> Span {
        Span {
            start: self.start.min(other.start),
            end: self.end.max(other.end),
        }
    }
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.start, self.end)
    }
}

/// Named-variable syntax tree as written in source.
#[derive(Clone, Debug)]
pub enum SurfaceTerm {
    Lam {
        name: String,
        ann: Ty,
        body: Box<SurfaceTerm>,
        span: Span,
    },
    App {
        fun: Box<SurfaceTerm>,
        arg: Box<SurfaceTerm>,
        span: Span,
    },
    Var {
        name: String,
        span: Span,
    },
}

impl SurfaceTerm {
    pub fn span(&self) -> Span {
        match self {
            SurfaceTerm::Lam { span, .. }
            | SurfaceTerm::App { span, .. }
            | SurfaceTerm::Var { span, .. } => *span,
        }
    }
}

/// Spans are positional metadata; equality compares names, annotations and
/// shape only, so a reparse of printed output compares equal.
impl PartialEq for SurfaceTerm {
    fn eq(&self, other: &SurfaceTerm) -> bool {
        match (self, other) {
            (
                SurfaceTerm::Lam {
                    name: n1,
                    ann: a1,
                    body: b1,
                    ..
                },
                SurfaceTerm::Lam {
                    name: n2,
                    ann: a2,
                    body: b2,
                    ..
                },
            ) => n1 == n2 && a1 == a2 && b1 == b2,
            (
                SurfaceTerm::App {
                    fun: f1, arg: x1, ..
                },
                SurfaceTerm::App {
                    fun: f2, arg: x2, ..
                },
            ) => f1 == f2 && x1 == x2,
            (SurfaceTerm::Var { name: n1, .. }, SurfaceTerm::Var { name: n2, .. }) => n1 == n2,
            _ => false,
        }
    }
}

impl Eq for SurfaceTerm {}

impl fmt::Display for SurfaceTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::print::surface_string(self, false))
    }
}
