use std::collections::BTreeSet;

use thiserror::Error;

use super::{EntityTerm, EnvExpr, Formula};
use crate::lambda::{pretty, type_of, Builtin, Path, SemType, Step, Term, TypeError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReifyError {
    #[error(transparent)]
    Type(#[from] TypeError),
    #[error("term has type {0}, not t")]
    NotAProposition(SemType),
    #[error("subterm at {position} is not in the reifiable fragment: {subterm}")]
    NotReifiable { position: Path, subterm: String },
}

/// Reads a closed beta-normal term of type `t` as a formula. Existential
/// binders get fresh names `y, y1, y2, ...`; `sel` sites are numbered in
/// left-to-right order.
pub fn reify(term: &Term) -> Result<Formula, ReifyError> {
    let ty = type_of(term)?;
    if ty != SemType::T {
        return Err(ReifyError::NotAProposition(ty));
    }
    let mut r = Reifier {
        taken: term.constants().into_keys().collect(),
        next_var: 0,
        next_site: 0,
        scope: Vec::new(),
    };
    r.prop(term, &Path::root())
}

struct Reifier {
    taken: BTreeSet<String>,
    next_var: usize,
    next_site: usize,
    scope: Vec<String>,
}

/// Path to argument `k` of a spine with `n` arguments rooted at `base`.
fn arg_path(base: &Path, k: usize, n: usize) -> Path {
    let mut p = base.clone();
    for _ in 0..(n - 1 - k) {
        p = p.child(Step::Fun);
    }
    p.child(Step::Arg)
}

impl Reifier {
    fn fresh(&mut self) -> String {
        loop {
            let name = match self.next_var {
                0 => "y".to_string(),
                n => format!("y{n}"),
            };
            self.next_var += 1;
            if !self.taken.contains(&name) {
                return name;
            }
        }
    }

    fn stuck(t: &Term, position: &Path) -> ReifyError {
        ReifyError::NotReifiable {
            position: position.clone(),
            subterm: pretty(t),
        }
    }

    fn prop(&mut self, t: &Term, pos: &Path) -> Result<Formula, ReifyError> {
        let (head, args) = t.spine();
        let n = args.len();
        let arg = |k: usize| arg_path(pos, k, n);
        match (head.as_builtin(), args.as_slice()) {
            (Some(Builtin::Top), []) => Ok(Formula::Top),
            (Some(Builtin::Bot), []) => Ok(Formula::Bot),
            (Some(Builtin::Not), [a]) => Ok(Formula::not(self.prop(a, &arg(0))?)),
            (Some(Builtin::And), [a, b]) => Ok(Formula::and(self.prop(a, &arg(0))?, self.prop(b, &arg(1))?)),
            (Some(Builtin::Or), [a, b]) => Ok(Formula::or(self.prop(a, &arg(0))?, self.prop(b, &arg(1))?)),
            (Some(Builtin::Exists), [Term::Lam(SemType::E, body)]) => {
                let name = self.fresh();
                self.scope.push(name.clone());
                let body = self.prop(body, &arg(0).child(Step::Body));
                self.scope.pop();
                Ok(Formula::exists(name, body?))
            }
            (None, _) => match head {
                Term::Const(name, ty) => {
                    let (params, result) = ty.uncurry();
                    let is_predicate = *result == SemType::T
                        && params.len() == n
                        && params.iter().all(|p| **p == SemType::E);
                    if !is_predicate {
                        return Err(Self::stuck(t, pos));
                    }
                    let ents = args
                        .iter()
                        .enumerate()
                        .map(|(k, a)| self.entity(a, &arg(k)))
                        .collect::<Result<Vec<_>, _>>()?;
                    Ok(Formula::Atom(name.clone(), ents))
                }
                _ => Err(Self::stuck(t, pos)),
            },
            _ => Err(Self::stuck(t, pos)),
        }
    }

    fn entity(&mut self, t: &Term, pos: &Path) -> Result<EntityTerm, ReifyError> {
        match t {
            Term::Var(i) => match self.scope.iter().rev().nth(*i) {
                Some(name) => Ok(EntityTerm::Var(name.clone())),
                None => Err(Self::stuck(t, pos)),
            },
            Term::Const(name, SemType::E) if t.as_builtin().is_none() => Ok(EntityTerm::Const(name.clone())),
            Term::App(f, env) if f.as_builtin() == Some(Builtin::Sel) => {
                let id = self.next_site;
                self.next_site += 1;
                let env = self.env(env, &pos.child(Step::Arg))?;
                Ok(EntityTerm::Sel(env, id))
            }
            _ => Err(Self::stuck(t, pos)),
        }
    }

    fn env(&mut self, t: &Term, pos: &Path) -> Result<EnvExpr, ReifyError> {
        let (head, args) = t.spine();
        let arg = |k: usize| arg_path(pos, k, args.len());
        match (head.as_builtin(), args.as_slice()) {
            (Some(Builtin::Nil), []) => Ok(EnvExpr::Nil),
            (Some(Builtin::Cons), [h, tail]) => {
                let head = self.entity(h, &arg(0))?;
                if matches!(head, EntityTerm::Sel(..)) {
                    return Err(Self::stuck(h, &arg(0)));
                }
                Ok(EnvExpr::cons(head, self.env(tail, &arg(1))?))
            }
            (Some(Builtin::Union), [a, b]) => Ok(EnvExpr::union(self.env(a, &arg(0))?, self.env(b, &arg(1))?)),
            _ => Err(Self::stuck(t, pos)),
        }
    }
}
