use std::fmt;
use std::sync::Arc;

/// Simple types over a single base type `o`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Ty {
    Base,
    Arrow(Arc<Ty>, Arc<Ty>),
}

impl Ty {
    pub fn arrow(domain: Ty, codomain: Ty) -> Ty {
        Ty::Arrow(Arc::new(domain), Arc::new(codomain))
    }

    pub fn is_arrow(&self) -> bool {
        matches!(self, Ty::Arrow(..))
    }

    pub fn domain(&self) -> Option<&Ty> {
        match self {
            Ty::Arrow(d, _) => Some(d),
            Ty::Base => None,
        }
    }

    pub fn codomain(&self) -> Option<&Ty> {
        match self {
            Ty::Arrow(_, c) => Some(c),
            Ty::Base => None,
        }
    }
}

impl fmt::Display for Ty {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::print::type_string(self, false))
    }
}

impl fmt::Debug for Ty {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// De Bruijn index; 0 refers to the innermost binder.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Ref(pub usize);

impl Ref {
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Debug for Ref {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ref({})", self.0)
    }
}

/// Types of the enclosing binders, innermost binder first.
#[derive(Clone, PartialEq, Eq, Default, Debug)]
pub struct Context(Vec<Ty>);

impl Context {
    pub fn empty() -> Context {
        Context(Vec::new())
    }

    /// Builds a context from types listed innermost first.
    pub fn from_types(tys: Vec<Ty>) -> Context {
        Context(tys)
    }

    /// The context under one more binder of type `ty`.
    pub fn extended(&self, ty: Ty) -> Context {
        let mut tys = Vec::with_capacity(self.0.len() + 1);
        tys.push(ty);
        tys.extend(self.0.iter().cloned());
        Context(tys)
    }

    pub fn get(&self, r: Ref) -> Option<&Ty> {
        self.0.get(r.index())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Iterates innermost binder first.
    pub fn iter(&self) -> std::slice::Iter<'_, Ty> {
        self.0.iter()
    }
}
