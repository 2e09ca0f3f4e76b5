//! Beta reduction: substitution, single leftmost-outermost steps, full
//! normalization under normal or applicative order, and reduction traces.

use thiserror::Error;

use super::term::{Path, Step, Term};

pub const DEFAULT_MAX_STEPS: usize = 100_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReduceError {
    #[error("normalization exceeded the budget of {0} beta steps")]
    StepBudgetExceeded(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Strategy {
    /// Leftmost-outermost.
    #[default]
    NormalOrder,
    /// Arguments are normalized before being substituted.
    ApplicativeOrder,
}

/// Adds `by` to every free index `>= cutoff`.
fn shift(term: &Term, by: usize, cutoff: usize) -> Term {
    if by == 0 {
        return term.clone();
    }
    match term {
        Term::Var(i) if *i >= cutoff => Term::Var(i + by),
        Term::Var(_) | Term::Const(..) => term.clone(),
        Term::Lam(ty, b) => Term::lam(ty.clone(), shift(b, by, cutoff + 1)),
        Term::App(f, a) => Term::app(shift(f, by, cutoff), shift(a, by, cutoff)),
    }
}

/// `body[0 := arg]`, with the remaining free indices of `body` lowered by one.
pub fn instantiate(body: &Term, arg: &Term) -> Term {
    fn go(t: &Term, arg: &Term, depth: usize) -> Term {
        match t {
            Term::Var(i) if *i == depth => shift(arg, depth, 0),
            Term::Var(i) if *i > depth => Term::Var(i - 1),
            Term::Var(_) | Term::Const(..) => t.clone(),
            Term::Lam(ty, b) => Term::lam(ty.clone(), go(b, arg, depth + 1)),
            Term::App(f, a) => Term::app(go(f, arg, depth), go(a, arg, depth)),
        }
    }
    go(body, arg, 0)
}

/// Contracts the leftmost-outermost redex, returning the new term and the
/// position of the contracted redex.
pub fn step(term: &Term) -> Option<(Term, Path)> {
    fn go(t: &Term, pos: &Path) -> Option<(Term, Path)> {
        match t {
            Term::App(f, a) => {
                if let Term::Lam(_, body) = f.as_ref() {
                    return Some((instantiate(body, a), pos.clone()));
                }
                if let Some((f2, p)) = go(f, &pos.child(Step::Fun)) {
                    return Some((Term::App(Box::new(f2), a.clone()), p));
                }
                go(a, &pos.child(Step::Arg)).map(|(a2, p)| (Term::App(f.clone(), Box::new(a2)), p))
            }
            Term::Lam(ty, b) => {
                go(b, &pos.child(Step::Body)).map(|(b2, p)| (Term::lam(ty.clone(), b2), p))
            }
            Term::Var(_) | Term::Const(..) => None,
        }
    }
    go(term, &Path::root())
}

struct Budget {
    used: usize,
    max: usize,
}

impl Budget {
    fn tick(&mut self) -> Result<(), ReduceError> {
        if self.used >= self.max {
            return Err(ReduceError::StepBudgetExceeded(self.max));
        }
        self.used += 1;
        Ok(())
    }
}

/// Beta-normal form by normal-order reduction.
pub fn normalize(term: &Term, max_steps: usize) -> Result<Term, ReduceError> {
    normalize_with(term, Strategy::NormalOrder, max_steps)
}

pub fn normalize_with(term: &Term, strategy: Strategy, max_steps: usize) -> Result<Term, ReduceError> {
    let mut budget = Budget {
        used: 0,
        max: max_steps,
    };
    match strategy {
        Strategy::NormalOrder => nf(term, &mut budget),
        Strategy::ApplicativeOrder => nf_applicative(term, &mut budget),
    }
}

/// Number of beta steps normal-order reduction takes on `term`.
pub fn count_steps(term: &Term, max_steps: usize) -> Result<usize, ReduceError> {
    let mut budget = Budget {
        used: 0,
        max: max_steps,
    };
    nf(term, &mut budget)?;
    Ok(budget.used)
}

fn whnf(term: &Term, budget: &mut Budget) -> Result<Term, ReduceError> {
    let mut cur = term.clone();
    // Pending arguments of the spine, innermost last.
    let mut args: Vec<Term> = Vec::new();
    loop {
        match cur {
            Term::App(f, a) => {
                args.push(*a);
                cur = *f;
            }
            Term::Lam(ty, body) => match args.pop() {
                Some(arg) => {
                    budget.tick()?;
                    cur = instantiate(&body, &arg);
                }
                None => return Ok(Term::Lam(ty, body)),
            },
            head => {
                return Ok(args.into_iter().rev().fold(head, Term::app));
            }
        }
    }
}

fn nf(term: &Term, budget: &mut Budget) -> Result<Term, ReduceError> {
    match whnf(term, budget)? {
        Term::Lam(ty, body) => Ok(Term::lam(ty, nf(&body, budget)?)),
        other => {
            // Head is a variable or constant: normalize arguments left to right.
            let (head, args) = other.spine();
            let head = head.clone();
            let mut out = head;
            for a in args {
                out = Term::app(out, nf(a, budget)?);
            }
            Ok(out)
        }
    }
}

fn nf_applicative(term: &Term, budget: &mut Budget) -> Result<Term, ReduceError> {
    match term {
        Term::Var(_) | Term::Const(..) => Ok(term.clone()),
        Term::Lam(ty, b) => Ok(Term::lam(ty.clone(), nf_applicative(b, budget)?)),
        Term::App(f, a) => {
            let f = nf_applicative(f, budget)?;
            let a = nf_applicative(a, budget)?;
            match f {
                Term::Lam(_, body) => {
                    budget.tick()?;
                    nf_applicative(&instantiate(&body, &a), budget)
                }
                f => Ok(Term::app(f, a)),
            }
        }
    }
}

/// One entry of a reduction trace.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceStep {
    /// 1-based.
    pub index: usize,
    pub redex: Path,
    pub result: Term,
}

/// The normal-order reduction sequence of `term`. Empty when the term is
/// already normal.
pub fn trace(term: &Term, max_steps: usize) -> Result<Vec<TraceStep>, ReduceError> {
    let mut steps = Vec::new();
    let mut cur = term.clone();
    while let Some((next, redex)) = step(&cur) {
        if steps.len() >= max_steps {
            return Err(ReduceError::StepBudgetExceeded(max_steps));
        }
        steps.push(TraceStep {
            index: steps.len() + 1,
            redex,
            result: next.clone(),
        });
        cur = next;
    }
    Ok(steps)
}
