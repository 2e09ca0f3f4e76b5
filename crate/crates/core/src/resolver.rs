//! Accessible referents at `sel` sites.

use std::fmt;

use serde_json::{json, Value};
use thiserror::Error;

use crate::logic::{EntityTerm, EnvExpr, Formula};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ResolveError {
    #[error("sel#{0} has no accessible referent")]
    EmptyEnvironment(usize),
}

/// Evaluates an environment to an ordered list: `::` prepends, `++`
/// concatenates left then right, and only the first occurrence of a
/// referent is kept.
pub fn eval_env(env: &EnvExpr) -> Vec<EntityTerm> {
    fn go(env: &EnvExpr, out: &mut Vec<EntityTerm>) {
        match env {
            EnvExpr::Nil => {}
            EnvExpr::Cons(h, t) => {
                out.push((**h).clone());
                go(t, out);
            }
            EnvExpr::Union(a, b) => {
                go(a, out);
                go(b, out);
            }
        }
    }
    let mut all = Vec::new();
    go(env, &mut all);
    let mut out: Vec<EntityTerm> = Vec::with_capacity(all.len());
    for r in all {
        if !out.contains(&r) {
            out.push(r);
        }
    }
    out
}

/// The environment rebuilt as a plain `::` chain of its evaluation.
pub fn normalize_env(env: &EnvExpr) -> EnvExpr {
    EnvExpr::from_list(eval_env(env))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AccessReport {
    pub site_id: usize,
    pub env: EnvExpr,
    /// Indefinite (bound) referents first, then proper-noun constants;
    /// environment order within each group.
    pub candidates: Vec<EntityTerm>,
}

impl AccessReport {
    pub fn to_json(&self) -> Value {
        json!({
            "site_id": self.site_id,
            "env": self.env.to_string(),
            "candidates": self.candidates.iter().map(ToString::to_string).collect::<Vec<_>>(),
        })
    }
}

impl fmt::Display for AccessReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = self.candidates.iter().map(ToString::to_string).collect();
        write!(f, "sel#{} env={} candidates=[{}]", self.site_id, self.env, names.join(", "))
    }
}

/// Candidate order for one environment.
pub fn candidates(env: &EnvExpr) -> Vec<EntityTerm> {
    let (mut vars, consts): (Vec<_>, Vec<_>) = eval_env(env)
        .into_iter()
        .partition(|r| matches!(r, EntityTerm::Var(_)));
    vars.extend(consts);
    vars
}

/// One report per `sel` site, in site-id order.
pub fn report(f: &Formula) -> Vec<AccessReport> {
    let mut out: Vec<AccessReport> = f
        .sel_sites()
        .into_iter()
        .map(|(site_id, env)| AccessReport {
            site_id,
            env: env.clone(),
            candidates: candidates(env),
        })
        .collect();
    out.sort_by_key(|r| r.site_id);
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ResolveStrategy {
    /// Leave `sel` terms in place.
    #[default]
    Symbolic,
    /// Replace each `sel` by its first candidate.
    Recency,
}

pub fn resolve(f: &Formula, strategy: ResolveStrategy) -> Result<Formula, ResolveError> {
    match strategy {
        ResolveStrategy::Symbolic => Ok(f.clone()),
        ResolveStrategy::Recency => {
            let mut failure = None;
            let out = f.map_entities(&mut |e| match e {
                EntityTerm::Sel(env, id) => match candidates(env).into_iter().next() {
                    Some(first) => first,
                    None => {
                        failure.get_or_insert(*id);
                        e.clone()
                    }
                },
                other => other.clone(),
            });
            match failure {
                Some(id) => Err(ResolveError::EmptyEnvironment(id)),
                None => Ok(out),
            }
        }
    }
}
