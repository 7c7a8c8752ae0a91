//! Corpus builders shared by the property and acceptance suites.
#![allow(dead_code)] // each suite uses its own subset

use stlc_machines::{
    check_source, contract, generate_terms, head_reduce, refocus, Closed, Env, EvalContext,
    GenConfig, Split, Term, Ty,
};

/// Hand-written corpus: identity chains, K/S-style combinators at concrete
/// types, nested redexes, shadowing, arguments that are themselves redexes.
pub const HAND_CORPUS: &[&str] = &[
    "\\x:o. x",
    "\\x:o->o. x",
    "\\f:o->o. \\x:o. f x",
    "\\f:o->o. \\x:o. f (f x)",
    "(\\x:o->o. x) (\\y:o. y)",
    "(\\x:o->o. x) ((\\y:o->o. y) (\\z:o. z))",
    "(\\x:o->o. \\y:o->o. x) (\\a:o. a)",
    "((\\x:o->o. \\y:o->o. x) (\\a:o. a)) (\\b:o. b)",
    "((\\x:o->o. \\y:o->o. y) (\\a:o. a)) (\\b:o. b)",
    "(\\f:o->o. \\x:o. f (f x)) (\\y:o. y)",
    "(\\x:o->o. (\\y:o->o. y) x) (\\z:o. z)",
    "(\\f:(o->o)->o->o. f (\\x:o. x)) (\\g:o->o. \\y:o. g y)",
    "\\x:o->o. \\y:o. x y",
    "(\\x:o->o. \\y:o. x y) (\\z:o. z)",
    "(\\x:o->o. \\x:o->o. x) (\\a:o. a)",
    "\\x:o. (\\y:o. y) x",
    "(((\\a:o->o. \\b:o->o. \\c:o->o. a) (\\x:o. x)) (\\y:o. y)) (\\z:o. z)",
    "(\\h:((o->o)->o->o)->o->o. h (\\g:o->o. g)) (\\k:(o->o)->o->o. k (\\w:o. w))",
    "(\\f:o->o. f) ((\\g:o->o. g) (\\x:o. x))",
    "((\\f:o->o. \\g:o->o. \\x:o. f (g x)) (\\a:o. a)) (\\b:o. b)",
    "((\\f:(o->o)->o->o. \\x:o->o. f (f x)) (\\g:o->o. g)) (\\y:o. y)",
    "((\\f:(o->o)->o->o. f) (\\g:o->o. g)) (\\z:o. z)",
    // S-combinator shape at concrete types, fully applied.
    "(((\\f:(o->o)->(o->o)->o->o. \\g:(o->o)->o->o. \\x:o->o. (f x) (g x)) \
      (\\a:o->o. \\b:o->o. a)) (\\c:o->o. c)) (\\d:o. d)",
];

pub fn hand_corpus() -> Vec<Term> {
    HAND_CORPUS
        .iter()
        .map(|src| check_source(src).expect("hand corpus parses and elaborates"))
        .collect()
}

pub fn oo() -> Ty {
    Ty::arrow(Ty::Base, Ty::Base)
}

pub fn generated_corpus(seed: u64, count: usize, depth: usize) -> Vec<Term> {
    let cfg = GenConfig::new(seed, depth, oo(), count);
    generate_terms(&cfg).expect("generation at an arrow goal succeeds")
}

/// The full acceptance corpus: the hand-written terms plus 1000 generated
/// ones (seed 42, depth 5, goal o -> o).
pub fn full_corpus() -> Vec<Term> {
    let mut corpus = hand_corpus();
    corpus.extend(generated_corpus(42, 1000, 5));
    corpus
}

/// Drives the refocus machine from `Closure(term, Nil)` and hands every
/// (context, closed term) argument pair of a `refocus` call to `visit`.
pub fn drive_refocus_pairs(term: &Term, mut visit: impl FnMut(&EvalContext, &Closed)) {
    let c = Closed::closure(term.clone(), Env::nil());
    let mut ctx = EvalContext::empty(c.ty().clone());
    let mut cur = c;
    loop {
        visit(&ctx, &cur);
        match refocus(ctx, cur).into_parts() {
            (_, Split::Val { .. }) => return,
            (_, Split::Redex { redex, ctx: rest }) => {
                cur = contract(&redex);
                ctx = rest;
            }
        }
    }
}

/// Goal types whose domains are arrows, so evaluation contexts over them can
/// be populated with generable closed arguments.
pub fn pair_goals() -> Vec<Ty> {
    let a = oo();
    vec![
        Ty::arrow(a.clone(), a.clone()),
        Ty::arrow(a.clone(), Ty::arrow(a.clone(), a.clone())),
        Ty::arrow(Ty::arrow(a.clone(), a.clone()), a.clone()),
        Ty::arrow(Ty::arrow(a.clone(), a.clone()), Ty::arrow(a.clone(), a)),
    ]
}

/// Independently generated (context, closed term) pairs: a generated subject
/// (optionally advanced a few head-reduction steps so closed applications
/// appear) under a context of generated closed arguments peeled from its
/// arrow type.
pub fn adversarial_pairs(seed: u64, count: usize) -> Vec<(EvalContext, Closed)> {
    let goals = pair_goals();
    let mut pairs = Vec::with_capacity(count);
    let mut salt = seed;
    while pairs.len() < count {
        let goal = goals[pairs.len() % goals.len()].clone();
        let subject_term = generate_terms(&GenConfig::new(salt, 4, goal.clone(), 1))
            .expect("pair subject generates")
            .remove(0);
        let mut subject = Closed::closure(subject_term, Env::nil());
        // Advance 0..=2 steps to reach intermediate shapes, Clapps included.
        for _ in 0..(pairs.len() % 3) {
            if subject.is_val() {
                break;
            }
            subject = head_reduce(&subject);
        }
        // Peel up to `pairs.len() % 3` arrow-typed domains into ARG frames.
        let mut frames = Vec::new();
        let mut dest = subject.ty().clone();
        for _ in 0..(pairs.len() % 3) {
            match dest.clone() {
                Ty::Arrow(dom, cod) if dom.is_arrow() => {
                    let arg_term =
                        generate_terms(&GenConfig::new(salt ^ 0x9E37, 3, (*dom).clone(), 1))
                            .expect("pair argument generates")
                            .remove(0);
                    let mut arg = Closed::closure(arg_term, Env::nil());
                    if pairs.len() % 2 == 0 && !arg.is_val() {
                        arg = head_reduce(&arg);
                    }
                    frames.push(arg);
                    dest = (*cod).clone();
                }
                _ => break,
            }
        }
        let mut ctx = EvalContext::empty(dest);
        for frame in frames.into_iter().rev() {
            ctx.push_arg(frame);
        }
        debug_assert_eq!(ctx.source_ty(), *subject.ty());
        pairs.push((ctx, subject));
        salt = salt
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
    }
    pairs
}
