//! First-order logical forms read off normal-form terms of type `t`.

mod equiv;
mod parse;
mod reify;
mod simplify;

use std::collections::BTreeSet;
use std::fmt;

use serde_json::{json, Value};

pub use equiv::{logically_equiv, logically_equiv_with, EquivError, EquivMode, EquivOptions};
pub use parse::{parse_formula, FormulaParseError};
pub use reify::{reify, ReifyError};
pub use simplify::simplify;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Formula {
    Top,
    Bot,
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Exists(String, Box<Formula>),
    Atom(String, Vec<EntityTerm>),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EntityTerm {
    Const(String),
    Var(String),
    /// An anaphoric selection site.
    Sel(EnvExpr, usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EnvExpr {
    Nil,
    Cons(Box<EntityTerm>, Box<EnvExpr>),
    Union(Box<EnvExpr>, Box<EnvExpr>),
}

impl Formula {
    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn exists(var: impl Into<String>, body: Formula) -> Formula {
        Formula::Exists(var.into(), Box::new(body))
    }

    pub fn atom<I: IntoIterator<Item = EntityTerm>>(pred: impl Into<String>, args: I) -> Formula {
        Formula::Atom(pred.into(), args.into_iter().collect())
    }

    pub fn size(&self) -> usize {
        match self {
            Formula::Top | Formula::Bot | Formula::Atom(..) => 1,
            Formula::Not(a) | Formula::Exists(_, a) => 1 + a.size(),
            Formula::And(a, b) | Formula::Or(a, b) => 1 + a.size() + b.size(),
        }
    }

    /// Variables occurring free, including inside `sel` environments.
    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free(&self, bound: &mut Vec<String>, out: &mut BTreeSet<String>) {
        match self {
            Formula::Top | Formula::Bot => {}
            Formula::Not(a) => a.collect_free(bound, out),
            Formula::And(a, b) | Formula::Or(a, b) => {
                a.collect_free(bound, out);
                b.collect_free(bound, out);
            }
            Formula::Exists(v, body) => {
                bound.push(v.clone());
                body.collect_free(bound, out);
                bound.pop();
            }
            Formula::Atom(_, args) => {
                for a in args {
                    a.collect_free(bound, out);
                }
            }
        }
    }

    pub fn has_free_var(&self, name: &str) -> bool {
        self.free_vars().contains(name)
    }

    /// Selection sites in left-to-right order.
    pub fn sel_sites(&self) -> Vec<(usize, &EnvExpr)> {
        let mut out = Vec::new();
        self.visit_entities(&mut |e| {
            if let EntityTerm::Sel(env, id) = e {
                out.push((*id, env));
            }
        });
        out
    }

    fn visit_entities<'a>(&'a self, visit: &mut impl FnMut(&'a EntityTerm)) {
        match self {
            Formula::Top | Formula::Bot => {}
            Formula::Not(a) | Formula::Exists(_, a) => a.visit_entities(visit),
            Formula::And(a, b) | Formula::Or(a, b) => {
                a.visit_entities(visit);
                b.visit_entities(visit);
            }
            Formula::Atom(_, args) => args.iter().for_each(&mut *visit),
        }
    }

    /// Rewrites every entity term bottom-up through `f`.
    pub fn map_entities(&self, f: &mut impl FnMut(&EntityTerm) -> EntityTerm) -> Formula {
        match self {
            Formula::Top => Formula::Top,
            Formula::Bot => Formula::Bot,
            Formula::Not(a) => Formula::not(a.map_entities(f)),
            Formula::And(a, b) => Formula::and(a.map_entities(f), b.map_entities(f)),
            Formula::Or(a, b) => Formula::or(a.map_entities(f), b.map_entities(f)),
            Formula::Exists(v, a) => Formula::exists(v.clone(), a.map_entities(f)),
            Formula::Atom(p, args) => Formula::Atom(p.clone(), args.iter().map(&mut *f).collect()),
        }
    }

    /// Renumbers selection sites `0, 1, ...` in left-to-right order.
    pub fn renumber_sites(&self) -> Formula {
        let mut next = 0;
        self.map_entities(&mut |e| match e {
            EntityTerm::Sel(env, _) => {
                let id = next;
                next += 1;
                EntityTerm::Sel(env.clone(), id)
            }
            other => other.clone(),
        })
    }

    /// Equality up to renaming of bound variables, ignoring `sel` site ids.
    pub fn alpha_eq(&self, other: &Formula) -> bool {
        alpha_formula(self, other, &mut Vec::new())
    }

    pub fn to_json(&self) -> Value {
        match self {
            Formula::Top => json!({ "node": "top" }),
            Formula::Bot => json!({ "node": "bot" }),
            Formula::Not(a) => json!({ "node": "not", "arg": a.to_json() }),
            Formula::And(a, b) => json!({ "node": "and", "left": a.to_json(), "right": b.to_json() }),
            Formula::Or(a, b) => json!({ "node": "or", "left": a.to_json(), "right": b.to_json() }),
            Formula::Exists(v, body) => json!({ "node": "exists", "var": v, "body": body.to_json() }),
            Formula::Atom(p, args) => json!({
                "node": "atom",
                "pred": p,
                "args": args.iter().map(EntityTerm::to_json).collect::<Vec<_>>(),
            }),
        }
    }
}

fn alpha_formula(a: &Formula, b: &Formula, bound: &mut Vec<(String, String)>) -> bool {
    match (a, b) {
        (Formula::Top, Formula::Top) | (Formula::Bot, Formula::Bot) => true,
        (Formula::Not(x), Formula::Not(y)) => alpha_formula(x, y, bound),
        (Formula::And(x1, x2), Formula::And(y1, y2)) | (Formula::Or(x1, x2), Formula::Or(y1, y2)) => {
            alpha_formula(x1, y1, bound) && alpha_formula(x2, y2, bound)
        }
        (Formula::Exists(v, x), Formula::Exists(w, y)) => {
            bound.push((v.clone(), w.clone()));
            let r = alpha_formula(x, y, bound);
            bound.pop();
            r
        }
        (Formula::Atom(p, xs), Formula::Atom(q, ys)) => {
            p == q && xs.len() == ys.len() && xs.iter().zip(ys).all(|(x, y)| alpha_entity(x, y, bound))
        }
        _ => false,
    }
}

fn alpha_entity(a: &EntityTerm, b: &EntityTerm, bound: &[(String, String)]) -> bool {
    let lookup = |name: &str, left: bool| {
        bound
            .iter()
            .rposition(|(l, r)| if left { l == name } else { r == name })
    };
    match (a, b) {
        (EntityTerm::Sel(x, _), EntityTerm::Sel(y, _)) => alpha_env(x, y, bound),
        (EntityTerm::Sel(..), _) | (_, EntityTerm::Sel(..)) => false,
        _ => {
            let (na, nb) = (a.name().unwrap_or_default(), b.name().unwrap_or_default());
            match (lookup(na, true), lookup(nb, false)) {
                (Some(i), Some(k)) => i == k,
                (None, None) => a == b,
                _ => false,
            }
        }
    }
}

fn alpha_env(a: &EnvExpr, b: &EnvExpr, bound: &[(String, String)]) -> bool {
    match (a, b) {
        (EnvExpr::Nil, EnvExpr::Nil) => true,
        (EnvExpr::Cons(h1, t1), EnvExpr::Cons(h2, t2)) => {
            alpha_entity(h1, h2, bound) && alpha_env(t1, t2, bound)
        }
        (EnvExpr::Union(a1, a2), EnvExpr::Union(b1, b2)) => {
            alpha_env(a1, b1, bound) && alpha_env(a2, b2, bound)
        }
        _ => false,
    }
}

impl EntityTerm {
    pub fn constant(name: impl Into<String>) -> EntityTerm {
        EntityTerm::Const(name.into())
    }

    pub fn var(name: impl Into<String>) -> EntityTerm {
        EntityTerm::Var(name.into())
    }

    pub fn sel(env: EnvExpr, site_id: usize) -> EntityTerm {
        EntityTerm::Sel(env, site_id)
    }

    /// Name of a constant or variable.
    pub fn name(&self) -> Option<&str> {
        match self {
            EntityTerm::Const(n) | EntityTerm::Var(n) => Some(n),
            EntityTerm::Sel(..) => None,
        }
    }

    fn collect_free(&self, bound: &[String], out: &mut BTreeSet<String>) {
        match self {
            EntityTerm::Const(_) => {}
            EntityTerm::Var(v) => {
                if !bound.contains(v) {
                    out.insert(v.clone());
                }
            }
            EntityTerm::Sel(env, _) => env.collect_free(bound, out),
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            EntityTerm::Const(n) => json!({ "kind": "const", "name": n }),
            EntityTerm::Var(n) => json!({ "kind": "var", "name": n }),
            EntityTerm::Sel(env, id) => json!({ "kind": "sel", "site_id": id, "env": env.to_json() }),
        }
    }

    fn is_simple(&self) -> bool {
        !matches!(self, EntityTerm::Sel(..))
    }
}

impl EnvExpr {
    pub fn cons(head: EntityTerm, tail: EnvExpr) -> EnvExpr {
        EnvExpr::Cons(Box::new(head), Box::new(tail))
    }

    pub fn union(a: EnvExpr, b: EnvExpr) -> EnvExpr {
        EnvExpr::Union(Box::new(a), Box::new(b))
    }

    /// `r1::r2::...::nil`
    pub fn from_list<I>(items: I) -> EnvExpr
    where
        I: IntoIterator<Item = EntityTerm>,
        I::IntoIter: DoubleEndedIterator,
    {
        items
            .into_iter()
            .rev()
            .fold(EnvExpr::Nil, |tail, head| EnvExpr::cons(head, tail))
    }

    fn collect_free(&self, bound: &[String], out: &mut BTreeSet<String>) {
        match self {
            EnvExpr::Nil => {}
            EnvExpr::Cons(h, t) => {
                h.collect_free(bound, out);
                t.collect_free(bound, out);
            }
            EnvExpr::Union(a, b) => {
                a.collect_free(bound, out);
                b.collect_free(bound, out);
            }
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            EnvExpr::Nil => json!({ "kind": "nil" }),
            EnvExpr::Cons(h, t) => json!({ "kind": "cons", "head": h.to_json(), "tail": t.to_json() }),
            EnvExpr::Union(a, b) => json!({ "kind": "union", "left": a.to_json(), "right": b.to_json() }),
        }
    }
}

impl fmt::Display for EnvExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EnvExpr::Nil => f.write_str("nil"),
            EnvExpr::Cons(h, t) => write!(f, "{h}::{t}"),
            EnvExpr::Union(a, b) => {
                let operand = |e: &EnvExpr| match e {
                    EnvExpr::Nil => e.to_string(),
                    _ => format!("({e})"),
                };
                write!(f, "{} ++ {}", operand(a), operand(b))
            }
        }
    }
}

impl fmt::Display for EntityTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EntityTerm::Const(n) | EntityTerm::Var(n) => f.write_str(n),
            EntityTerm::Sel(env, _) => write!(f, "sel({env})"),
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // Connective operands are parenthesized unless atomic; bodies of
        // `~` and `Ex` only when they are connectives.
        let operand = |g: &Formula| match g {
            Formula::Top | Formula::Bot | Formula::Atom(..) => g.to_string(),
            _ => format!("({g})"),
        };
        let body = |g: &Formula| match g {
            Formula::And(..) | Formula::Or(..) => format!("({g})"),
            _ => g.to_string(),
        };
        match self {
            Formula::Top => f.write_str("top"),
            Formula::Bot => f.write_str("bot"),
            Formula::Not(a) => write!(f, "~ {}", body(a)),
            Formula::And(a, b) => write!(f, "{} & {}", operand(a), operand(b)),
            Formula::Or(a, b) => write!(f, "{} | {}", operand(a), operand(b)),
            Formula::Exists(v, a) => write!(f, "Ex {v}. {}", body(a)),
            Formula::Atom(p, args) => {
                f.write_str(p)?;
                if args.iter().all(EntityTerm::is_simple) {
                    for a in args {
                        write!(f, " {a}")?;
                    }
                    Ok(())
                } else {
                    let parts: Vec<String> = args.iter().map(ToString::to_string).collect();
                    write!(f, "({})", parts.join(", "))
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(n: &str) -> EntityTerm {
        EntityTerm::constant(n)
    }

    fn v(n: &str) -> EntityTerm {
        EntityTerm::var(n)
    }

    #[test]
    fn renders_like_the_derivations() {
        let body = Formula::and(Formula::atom("car", [v("y")]), Formula::atom("own", [c("j"), v("y")]));
        let env = EnvExpr::cons(c("j"), EnvExpr::Nil);
        let f = Formula::and(
            Formula::not(Formula::exists("y", body)),
            Formula::atom("red", [EntityTerm::sel(env, 0)]),
        );
        assert_eq!(f.to_string(), "(~ Ex y. (car y & own j y)) & red(sel(j::nil))");
    }

    #[test]
    fn union_operands_are_parenthesized() {
        let env = EnvExpr::union(EnvExpr::cons(c("j"), EnvExpr::Nil), EnvExpr::Nil);
        assert_eq!(env.to_string(), "(j::nil) ++ nil");
    }

    #[test]
    fn alpha_eq_ignores_bound_names_and_site_ids() {
        let a = Formula::exists("y", Formula::atom("p", [v("y"), EntityTerm::sel(EnvExpr::from_list([v("y")]), 3)]));
        let b = Formula::exists("z", Formula::atom("p", [v("z"), EntityTerm::sel(EnvExpr::from_list([v("z")]), 0)]));
        assert!(a.alpha_eq(&b));
        let free = Formula::exists("z", Formula::atom("p", [v("y"), EntityTerm::sel(EnvExpr::from_list([v("z")]), 0)]));
        assert!(!a.alpha_eq(&free));
    }

    #[test]
    fn free_vars_look_inside_sel() {
        let f = Formula::exists("y", Formula::atom("p", [EntityTerm::sel(EnvExpr::from_list([v("y"), v("x")]), 0)]));
        assert_eq!(f.free_vars().into_iter().collect::<Vec<_>>(), vec!["x".to_string()]);
    }

    #[test]
    fn json_has_tags_and_site_ids() {
        let f = Formula::atom("red", [EntityTerm::sel(EnvExpr::Nil, 2)]);
        let j = f.to_json();
        assert_eq!(j["node"], "atom");
        assert_eq!(j["args"][0]["kind"], "sel");
        assert_eq!(j["args"][0]["site_id"], 2);
        assert_eq!(j["args"][0]["env"]["kind"], "nil");
    }
}
