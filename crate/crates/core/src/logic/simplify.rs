use super::{EntityTerm, Formula};
use crate::resolver::normalize_env;

/// Rewrites to a fixed point, innermost first:
///
/// * unit laws for `&`, `|` and `~` over `top`/`bot`;
/// * double negation;
/// * De Morgan for `~` over `&`/`|` (never across `Ex`);
/// * shared-tail fusion `(A|K) & (B|K) -> (A&B) | K` and
///   `(A&K) & (B&K) -> (A&B) & K`, tails compared up to bound renaming and
///   site ids;
/// * vacuous quantifiers dropped (`Ex y. A -> A` when `y` is not free in
///   `A`; domains are nonempty);
/// * quantifier scope narrowing `Ex y. (A op B) -> (Ex y. A) op B` when `y`
///   is not free in `B` (and symmetrically);
/// * `sel` environments evaluated to plain `::` chains.
///
/// Site ids of the result are renumbered left to right.
pub fn simplify(f: &Formula) -> Formula {
    let mut cur = f.clone();
    loop {
        let next = simp(cur.clone());
        if next == cur {
            return cur.renumber_sites();
        }
        cur = next;
    }
}

fn simp(f: Formula) -> Formula {
    let f = match f {
        Formula::Top | Formula::Bot => f,
        Formula::Atom(p, args) => Formula::Atom(p, args.iter().map(normalize_entity).collect()),
        Formula::Not(a) => Formula::not(simp(*a)),
        Formula::And(a, b) => Formula::and(simp(*a), simp(*b)),
        Formula::Or(a, b) => Formula::or(simp(*a), simp(*b)),
        Formula::Exists(v, a) => Formula::exists(v, simp(*a)),
    };
    match rewrite(&f) {
        Some(g) => simp(g),
        None => f,
    }
}

fn normalize_entity(e: &EntityTerm) -> EntityTerm {
    match e {
        EntityTerm::Sel(env, id) => EntityTerm::Sel(normalize_env(env), *id),
        other => other.clone(),
    }
}

/// One rewrite at the root, if any rule applies.
fn rewrite(f: &Formula) -> Option<Formula> {
    use Formula::*;
    match f {
        Not(a) => match a.as_ref() {
            Top => Some(Bot),
            Bot => Some(Top),
            Not(inner) => Some((**inner).clone()),
            Or(x, y) => Some(Formula::and(Formula::not((**x).clone()), Formula::not((**y).clone()))),
            And(x, y) => Some(Formula::or(Formula::not((**x).clone()), Formula::not((**y).clone()))),
            _ => None,
        },
        And(a, b) => match (a.as_ref(), b.as_ref()) {
            (x, Top) | (Top, x) => Some(x.clone()),
            (_, Bot) | (Bot, _) => Some(Bot),
            (Or(x, k1), Or(y, k2)) if k1.alpha_eq(k2) => {
                Some(Formula::or(Formula::and((**x).clone(), (**y).clone()), (**k1).clone()))
            }
            (And(x, k1), And(y, k2)) if k1.alpha_eq(k2) => {
                Some(Formula::and(Formula::and((**x).clone(), (**y).clone()), (**k1).clone()))
            }
            _ => None,
        },
        Or(a, b) => match (a.as_ref(), b.as_ref()) {
            (x, Bot) | (Bot, x) => Some(x.clone()),
            (_, Top) | (Top, _) => Some(Top),
            _ => None,
        },
        Exists(v, body) if !body.has_free_var(v) => Some((**body).clone()),
        Exists(v, body) => {
            let rebuild = |x: &Formula, y: &Formula, left_scoped: bool, is_and: bool| {
                let (l, r) = if left_scoped {
                    (Formula::exists(v.clone(), x.clone()), y.clone())
                } else {
                    (x.clone(), Formula::exists(v.clone(), y.clone()))
                };
                if is_and {
                    Formula::and(l, r)
                } else {
                    Formula::or(l, r)
                }
            };
            let (x, y, is_and) = match body.as_ref() {
                And(x, y) => (x, y, true),
                Or(x, y) => (x, y, false),
                _ => return None,
            };
            if !y.has_free_var(v) {
                Some(rebuild(x, y, true, is_and))
            } else if !x.has_free_var(v) {
                Some(rebuild(x, y, false, is_and))
            } else {
                None
            }
        }
        Top | Bot | Atom(..) => None,
    }
}
