//! Simply-typed lambda calculus with constants.

mod reduce;
mod syntax;
mod term;
mod typecheck;
mod types;

pub use reduce::{
    count_steps, instantiate, normalize, normalize_with, step, trace, ReduceError, Strategy,
    TraceStep, DEFAULT_MAX_STEPS,
};
pub use syntax::{coord_term, parse_term, parse_type, pretty, sub_term, ParseError};
pub use term::{alpha_eq, Builtin, Path, Signature, Step, Term};
pub use typecheck::{type_of, typecheck, TypeError, TypingContext};
pub use types::SemType;
