//! Continuation-based discourse semantics.
//!
//! Lexical entries are closed, simply-typed lambda terms. Sentences are
//! composed into discourse interpretations that take a connective, two
//! referent environments and a continuation; normalizing and reifying the
//! result yields a first-order logical form whose `sel` sites record which
//! discourse referents an anaphor may pick up.

pub mod discourse;
pub mod lambda;
pub mod lexicon;
pub mod logic;
pub mod resolver;

pub use discourse::{compose, expand_symbolic, interpret, DiscourseTree, InitialArgs, Interpretation};
pub use lambda::{alpha_eq, normalize, parse_term, pretty, SemType, Signature, Term};
pub use lexicon::{Category, LexEntry, Lexicon, Profile};
pub use logic::{logically_equiv, reify, simplify, Formula};
