use thiserror::Error;

use super::term::{Path, Step, Term};
use super::types::SemType;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TypeError {
    #[error("unbound variable #{index} at {position}")]
    UnboundVariable { index: usize, position: Path },
    #[error("type mismatch at {position}: expected {expected}, found {found}")]
    TypeMismatch {
        expected: String,
        found: SemType,
        position: Path,
    },
}

/// Binder types, innermost first.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TypingContext {
    stack: Vec<SemType>,
}

impl TypingContext {
    pub fn new() -> TypingContext {
        TypingContext::default()
    }

    pub fn depth(&self) -> usize {
        self.stack.len()
    }

    pub fn lookup(&self, index: usize) -> Option<&SemType> {
        self.stack.iter().rev().nth(index)
    }

    pub fn push(&mut self, ty: SemType) {
        self.stack.push(ty);
    }

    pub fn pop(&mut self) -> Option<SemType> {
        self.stack.pop()
    }
}

/// Type of a closed term.
pub fn type_of(term: &Term) -> Result<SemType, TypeError> {
    typecheck(term, &mut TypingContext::new())
}

pub fn typecheck(term: &Term, ctx: &mut TypingContext) -> Result<SemType, TypeError> {
    check_at(term, ctx, &Path::root())
}

fn check_at(term: &Term, ctx: &mut TypingContext, pos: &Path) -> Result<SemType, TypeError> {
    match term {
        Term::Var(i) => ctx
            .lookup(*i)
            .cloned()
            .ok_or_else(|| TypeError::UnboundVariable {
                index: *i,
                position: pos.clone(),
            }),
        Term::Const(_, ty) => Ok(ty.clone()),
        Term::Lam(ty, body) => {
            ctx.push(ty.clone());
            let body_ty = check_at(body, ctx, &pos.child(Step::Body));
            ctx.pop();
            Ok(SemType::arrow(ty.clone(), body_ty?))
        }
        Term::App(f, a) => {
            let fun_ty = check_at(f, ctx, &pos.child(Step::Fun))?;
            let arg_ty = check_at(a, ctx, &pos.child(Step::Arg))?;
            match fun_ty {
                SemType::Arrow(dom, cod) => {
                    if *dom == arg_ty {
                        Ok(*cod)
                    } else {
                        Err(TypeError::TypeMismatch {
                            expected: dom.to_string(),
                            found: arg_ty,
                            position: pos.child(Step::Arg),
                        })
                    }
                }
                other => Err(TypeError::TypeMismatch {
                    expected: format!("{arg_ty}>?"),
                    found: other,
                    position: pos.child(Step::Fun),
                }),
            }
        }
    }
}
