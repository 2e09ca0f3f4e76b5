//! Seeded generators shared by the property suites and the acceptance run.
#![allow(dead_code)]

use contsem_core::lambda::{SemType, Signature, Term};
use contsem_core::logic::{EntityTerm, EnvExpr, Formula};
use rand::seq::SliceRandom;
use rand::Rng;

pub fn term_signature() -> Signature {
    Signature::new()
        .entity("j")
        .entity("m")
        .predicate("p", 1)
        .predicate("r", 2)
        .predicate("q", 0)
}

fn pred_ty() -> SemType {
    SemType::arrow(SemType::E, SemType::T)
}

/// Argument types tried when building an application.
fn arg_types() -> Vec<SemType> {
    vec![
        SemType::E,
        SemType::T,
        SemType::G,
        pred_ty(),
        SemType::arrow(SemType::T, SemType::T),
    ]
}

/// A closed, well-typed term of type `ty` with roughly `budget` nodes.
pub fn random_term<R: Rng>(rng: &mut R, ty: &SemType, budget: usize) -> Term {
    let mut ctx = Vec::new();
    gen(rng, &mut ctx, ty, budget)
}

fn leaf<R: Rng>(rng: &mut R, ctx: &mut Vec<SemType>, ty: &SemType) -> Term {
    let vars: Vec<usize> = (0..ctx.len()).filter(|&i| &ctx[ctx.len() - 1 - i] == ty).collect();
    if !vars.is_empty() && rng.gen_bool(0.7) {
        return Term::var(*vars.choose(rng).unwrap());
    }
    match ty {
        SemType::E => Term::constant(if rng.gen() { "j" } else { "m" }, SemType::E),
        SemType::T => match rng.gen_range(0..3) {
            0 => Term::top(),
            1 => Term::bot(),
            _ => Term::constant("q", SemType::T),
        },
        SemType::G => Term::nil(),
        SemType::Arrow(a, b) => {
            if *ty == pred_ty() && rng.gen_bool(0.5) {
                return Term::constant("p", pred_ty());
            }
            ctx.push((**a).clone());
            let body = leaf(rng, ctx, b);
            ctx.pop();
            Term::lam((**a).clone(), body)
        }
    }
}

fn gen<R: Rng>(rng: &mut R, ctx: &mut Vec<SemType>, ty: &SemType, budget: usize) -> Term {
    if budget <= 1 {
        return leaf(rng, ctx, ty);
    }
    let choice = rng.gen_range(0..10);
    if let SemType::Arrow(a, b) = ty {
        if choice < 6 {
            ctx.push((**a).clone());
            let body = gen(rng, ctx, b, budget - 1);
            ctx.pop();
            return Term::lam((**a).clone(), body);
        }
    }
    match (ty, choice) {
        (SemType::T, 0) => Term::not(gen(rng, ctx, ty, budget - 1)),
        (SemType::T, 1 | 2) => {
            let k = (budget - 1) / 2;
            let (l, r) = (gen(rng, ctx, ty, k), gen(rng, ctx, ty, budget - 1 - k));
            if choice == 1 {
                Term::and(l, r)
            } else {
                Term::or(l, r)
            }
        }
        (SemType::T, 3) => {
            ctx.push(SemType::E);
            let body = gen(rng, ctx, ty, budget - 1);
            ctx.pop();
            Term::exists(body)
        }
        (SemType::T, 4) => Term::apps(
            Term::constant("r", SemType::func([SemType::E, SemType::E], SemType::T)),
            [gen(rng, ctx, &SemType::E, 1), gen(rng, ctx, &SemType::E, 1)],
        ),
        (SemType::E, 0..=2) => Term::sel(gen(rng, ctx, &SemType::G, budget - 1)),
        (SemType::G, 0..=2) => {
            let k = (budget - 1) / 2;
            Term::cons(gen(rng, ctx, &SemType::E, k.max(1)), gen(rng, ctx, ty, budget - 1 - k))
        }
        (SemType::G, 3) => {
            let k = (budget - 1) / 2;
            Term::union(gen(rng, ctx, ty, k), gen(rng, ctx, ty, budget - 1 - k))
        }
        _ => {
            // Application; a generated function is usually an abstraction,
            // so this is the main source of redexes.
            let arg_ty = arg_types().choose(rng).unwrap().clone();
            let k = (budget - 1) / 2;
            let f = gen(rng, ctx, &SemType::arrow(arg_ty.clone(), ty.clone()), budget - 1 - k);
            let a = gen(rng, ctx, &arg_ty, k);
            Term::app(f, a)
        }
    }
}

/// A random term of a random small type, retried until its size is at
/// most `max_size`.
pub fn random_small_term<R: Rng>(rng: &mut R, max_size: usize) -> Term {
    let types = [
        SemType::T,
        SemType::T,
        SemType::E,
        SemType::G,
        pred_ty(),
        SemType::arrow(SemType::T, SemType::T),
    ];
    loop {
        let ty = types.choose(rng).unwrap().clone();
        let budget = rng.gen_range(1..=max_size);
        let t = random_term(rng, &ty, budget);
        if t.size() <= max_size {
            return t;
        }
    }
}

const VARS: [&str; 2] = ["x", "z"];

/// A random formula over `p/1`, `r/2` and `q/0`, constants `a` and `b`,
/// with occasional `sel` sites.
pub fn random_formula<R: Rng>(rng: &mut R, depth: usize) -> Formula {
    let mut bound = Vec::new();
    let f = fgen(rng, &mut bound, depth);
    f.renumber_sites()
}

fn entity<R: Rng>(rng: &mut R, bound: &[String], allow_sel: bool) -> EntityTerm {
    if allow_sel && rng.gen_bool(0.15) {
        let mut items = Vec::new();
        for _ in 0..rng.gen_range(0..3) {
            items.push(entity(rng, bound, false));
        }
        let env = if rng.gen_bool(0.3) && !items.is_empty() {
            let tail = items.split_off(items.len() / 2);
            EnvExpr::union(EnvExpr::from_list(items), EnvExpr::from_list(tail))
        } else {
            EnvExpr::from_list(items)
        };
        return EntityTerm::sel(env, 0);
    }
    if !bound.is_empty() && rng.gen_bool(0.6) {
        return EntityTerm::var(bound.choose(rng).unwrap().clone());
    }
    EntityTerm::constant(if rng.gen() { "a" } else { "b" })
}

fn fgen<R: Rng>(rng: &mut R, bound: &mut Vec<String>, depth: usize) -> Formula {
    let atom_choice = rng.gen_range(0..8);
    if depth == 0 || atom_choice == 0 {
        return match rng.gen_range(0..8) {
            0 => Formula::Top,
            1 => Formula::Bot,
            2 => Formula::atom("q", []),
            3..=5 => Formula::atom("p", [entity(rng, bound, true)]),
            _ => Formula::atom("r", [entity(rng, bound, true), entity(rng, bound, true)]),
        };
    }
    match rng.gen_range(0..6) {
        0 => Formula::not(fgen(rng, bound, depth - 1)),
        1 | 2 => Formula::and(fgen(rng, bound, depth - 1), fgen(rng, bound, depth - 1)),
        3 | 4 => Formula::or(fgen(rng, bound, depth - 1), fgen(rng, bound, depth - 1)),
        _ => {
            let v = VARS[bound.len().min(VARS.len() - 1)].to_string();
            bound.push(v.clone());
            let body = fgen(rng, bound, depth - 1);
            bound.pop();
            Formula::exists(v, body)
        }
    }
}

/// Closed environment terms built from `::`, `++` and `nil`.
pub fn random_env_term<R: Rng>(rng: &mut R, depth: usize) -> Term {
    if depth == 0 || rng.gen_bool(0.3) {
        return Term::nil();
    }
    if rng.gen() {
        let e = Term::constant(if rng.gen() { "j" } else { "m" }, SemType::E);
        Term::cons(e, random_env_term(rng, depth - 1))
    } else {
        Term::union(random_env_term(rng, depth - 1), random_env_term(rng, depth - 1))
    }
}
