//! Sentences, discourse trees and the interpretation pipeline.

mod dsl;

use std::fmt;

use thiserror::Error;

use crate::lambda::{
    normalize, parse_term, type_of, ParseError, ReduceError, SemType, Signature, Term, TypeError,
};
use crate::lexicon::{replace_const, Category, LexiconError, Lexicon, Profile};
use crate::logic::{reify, simplify, Formula, ReifyError};

pub use dsl::{parse_document, Document, SentenceDef};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Np {
    ProperN(String),
    Det(String, String),
    Pron(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Predicate {
    Verb { word: String, object: Option<Np> },
    /// `is` followed by an adjective.
    CopulaAdj(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SentenceAst {
    pub subject: Np,
    pub predicate: Predicate,
    pub negated: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DiscourseTree {
    Leaf(SentenceAst),
    /// A free sentence constant, for symbolic expansion.
    SymLeaf(String),
    Seq(Box<DiscourseTree>, Box<DiscourseTree>),
    CoordN(Box<DiscourseTree>, Box<DiscourseTree>),
    SubN(Box<DiscourseTree>, Box<DiscourseTree>),
}

impl DiscourseTree {
    pub fn seq(a: DiscourseTree, b: DiscourseTree) -> DiscourseTree {
        DiscourseTree::Seq(Box::new(a), Box::new(b))
    }

    pub fn coord(a: DiscourseTree, b: DiscourseTree) -> DiscourseTree {
        DiscourseTree::CoordN(Box::new(a), Box::new(b))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn sub(a: DiscourseTree, b: DiscourseTree) -> DiscourseTree {
        DiscourseTree::SubN(Box::new(a), Box::new(b))
    }

    pub fn sym(name: impl Into<String>) -> DiscourseTree {
        DiscourseTree::SymLeaf(name.into())
    }

    fn kind(&self) -> &'static str {
        match self {
            DiscourseTree::Leaf(_) => "leaf",
            DiscourseTree::SymLeaf(_) => "symbolic leaf",
            DiscourseTree::Seq(..) => "sequence",
            DiscourseTree::CoordN(..) => "coordination",
            DiscourseTree::SubN(..) => "subordination",
        }
    }

    fn leaves(&self) -> Vec<&DiscourseTree> {
        match self {
            DiscourseTree::Leaf(_) | DiscourseTree::SymLeaf(_) => vec![self],
            DiscourseTree::Seq(a, b) | DiscourseTree::CoordN(a, b) | DiscourseTree::SubN(a, b) => {
                let mut out = a.leaves();
                out.extend(b.leaves());
                out
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiscourseError {
    #[error(transparent)]
    Lexicon(#[from] LexiconError),
    #[error("`{word}` is a {category} and cannot be used as {expected}")]
    CategoryMismatch {
        word: String,
        category: Category,
        expected: &'static str,
    },
    #[error("`{word}` {}", if *.takes_object { "needs an object" } else { "takes no object" })]
    ArityMismatch { word: String, takes_object: bool },
    #[error("{node} is not available in profile {profile}")]
    ProfileMismatch { node: &'static str, profile: Profile },
    #[error("sentence `{0}` is symbolic and cannot be interpreted")]
    SymbolicLeaf(String),
    #[error("symbolic expansion needs every sentence to be symbolic")]
    NotSymbolic,
    #[error("initial arguments: {0}")]
    InitialArgs(String),
    #[error(transparent)]
    Reduce(#[from] ReduceError),
    #[error(transparent)]
    Reify(#[from] ReifyError),
    #[error("line {line}: {message}")]
    Dsl { line: usize, message: String },
}

fn np_term(np: &Np, lexicon: &Lexicon) -> Result<Term, DiscourseError> {
    let expect = |word: &str, cats: &[Category], expected: &'static str| -> Result<Term, DiscourseError> {
        let e = lexicon.lookup(word)?;
        if cats.contains(&e.category) {
            Ok(e.term.clone())
        } else {
            Err(DiscourseError::CategoryMismatch {
                word: word.to_string(),
                category: e.category,
                expected,
            })
        }
    };
    match np {
        Np::ProperN(w) => expect(w, &[Category::ProperNoun], "a proper noun"),
        Np::Pron(w) => expect(w, &[Category::Pronoun], "a pronoun"),
        Np::Det(d, n) => Ok(Term::app(
            expect(d, &[Category::Determiner], "a determiner")?,
            expect(n, &[Category::CommonNoun], "a common noun")?,
        )),
    }
}

fn function_word(lexicon: &Lexicon, category: Category) -> Result<Term, DiscourseError> {
    lexicon
        .entries()
        .find(|e| e.category == category)
        .map(|e| e.term.clone())
        .ok_or_else(|| {
            DiscourseError::Lexicon(LexiconError::UnsupportedCategory {
                category,
                profile: lexicon.profile(),
            })
        })
}

/// Assembles a closed term of the profile's sentence type. Verbs take the
/// object, then the subject; negation takes `\S'. VP S'`, then the subject.
pub fn build_sentence(ast: &SentenceAst, lexicon: &Lexicon) -> Result<Term, DiscourseError> {
    let profile = lexicon.profile();
    let subject = np_term(&ast.subject, lexicon)?;
    // Verb phrase as a function of the subject.
    let vp = match &ast.predicate {
        Predicate::Verb { word, object } => {
            let e = lexicon.lookup_inflected(word)?;
            match (e.category, object) {
                (Category::TransitiveVerb, Some(o)) => Term::app(e.term.clone(), np_term(o, lexicon)?),
                (Category::IntransitiveVerb, None) => e.term.clone(),
                (Category::TransitiveVerb, None) | (Category::IntransitiveVerb, Some(_)) => {
                    return Err(DiscourseError::ArityMismatch {
                        word: word.clone(),
                        takes_object: e.category == Category::TransitiveVerb,
                    })
                }
                (category, _) => {
                    return Err(DiscourseError::CategoryMismatch {
                        word: word.clone(),
                        category,
                        expected: "a verb",
                    })
                }
            }
        }
        Predicate::CopulaAdj(adj) => {
            let e = lexicon.lookup(adj)?;
            if e.category != Category::Adjective {
                return Err(DiscourseError::CategoryMismatch {
                    word: adj.clone(),
                    category: e.category,
                    expected: "an adjective",
                });
            }
            Term::app(function_word(lexicon, Category::Copula)?, e.term.clone())
        }
    };
    if ast.negated {
        let neg = function_word(lexicon, Category::NegationAux)?;
        let vp_abs = Term::lam(profile.np_type(), Term::app(vp, Term::var(0)));
        Ok(Term::apps(neg, [vp_abs, subject]))
    } else {
        Ok(Term::app(vp, subject))
    }
}

const LEFT: &str = "__left";
const RIGHT: &str = "__right";

const SEQ_A: &str = r"\e:g. \phi:g>t. __left e (\e':g. __right e' phi)";
const SEQ_B: &str = r"\c:kB. \e1:g. \e2:g. \phi:kB>g>g>t.
    __left c e1 e2 (\c':kB. \e1':g. \e2':g. __right c' e1' e2' phi)";
const REL_C: &str = r"\c:kC. \e1:g. \e2:g. \phi:kC>g>g>t.
    __left c e1 e2 (\c':kC. \e1':g. \e2':g. __right REL e1' (c e1 e2) phi)";
/// A concrete unit starts its own referent list and sees the incoming
/// context through `e2`; the continuation gets the unit's own referents as
/// its first environment.
const LEAF_C: &str = r"\c:kC. \e1:g. \e2:g. \phi:kC>g>g>t.
    __left c nil (e1 ++ e2) (\c':kC. \e1':g. \e2':g. phi c' e1' e2)";

fn plug(template: &str, profile: Profile, parts: &[(&str, Term)]) -> Term {
    let s = profile.sentence_type();
    let sig = Signature::new().with(LEFT, s.clone()).with(RIGHT, s);
    let mut t = parse_term(template, &sig).expect("composition templates parse");
    for (name, part) in parts {
        t = replace_const(&t, name, part);
    }
    t
}

/// Builds the composed interpretation of a tree. Symbolic leaves become
/// free constants of the sentence type.
pub fn compose(tree: &DiscourseTree, lexicon: &Lexicon) -> Result<Term, DiscourseError> {
    let profile = lexicon.profile();
    match tree {
        DiscourseTree::Leaf(ast) => {
            let t = build_sentence(ast, lexicon)?;
            if profile == Profile::C {
                Ok(plug(LEAF_C, profile, &[(LEFT, t)]))
            } else {
                Ok(t)
            }
        }
        DiscourseTree::SymLeaf(name) => Ok(Term::constant(name.clone(), profile.sentence_type())),
        DiscourseTree::Seq(a, b) => {
            let template = match profile {
                Profile::A => SEQ_A,
                Profile::B => SEQ_B,
                Profile::C => return Err(mismatch(tree, profile)),
            };
            let (l, r) = (compose(a, lexicon)?, compose(b, lexicon)?);
            Ok(plug(template, profile, &[(LEFT, l), (RIGHT, r)]))
        }
        DiscourseTree::CoordN(a, b) | DiscourseTree::SubN(a, b) => {
            if profile != Profile::C {
                return Err(mismatch(tree, profile));
            }
            let rel = if matches!(tree, DiscourseTree::CoordN(..)) { "Coord" } else { "Sub" };
            let (l, r) = (compose(a, lexicon)?, compose(b, lexicon)?);
            Ok(plug(&REL_C.replace("REL", rel), profile, &[(LEFT, l), (RIGHT, r)]))
        }
    }
}

fn mismatch(tree: &DiscourseTree, profile: Profile) -> DiscourseError {
    DiscourseError::ProfileMismatch {
        node: tree.kind(),
        profile,
    }
}

/// Normal form of a profile C tree whose leaves are all symbolic.
pub fn expand_symbolic(tree: &DiscourseTree, lexicon: &Lexicon, max_steps: usize) -> Result<Term, DiscourseError> {
    if lexicon.profile() != Profile::C {
        return Err(DiscourseError::ProfileMismatch {
            node: "symbolic expansion",
            profile: lexicon.profile(),
        });
    }
    if tree.leaves().iter().any(|l| matches!(l, DiscourseTree::Leaf(_))) {
        return Err(DiscourseError::NotSymbolic);
    }
    Ok(normalize(&compose(tree, lexicon)?, max_steps)?)
}

/// The arguments a composed discourse is applied to.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InitialArgs {
    profile: Profile,
    args: Vec<Term>,
}

impl InitialArgs {
    /// Profile A: environment `nil`, continuation `\e. top`.
    /// Profile B: `&`, `nil`, `nil`, `\c e1 e2. ~ (c top bot)`.
    /// Profile C: `Coord`, `nil`, `nil`, `\c e1 e2. top`.
    pub fn default_for(profile: Profile) -> InitialArgs {
        let texts: &[&str] = match profile {
            Profile::A => &["nil", r"\e:g. top"],
            Profile::B => &["(&)", "nil", "nil", r"\c:kB. \e1:g. \e2:g. ~ (c top bot)"],
            Profile::C => &["Coord", "nil", "nil", r"\c:kC. \e1:g. \e2:g. top"],
        };
        InitialArgs::parse(profile, texts, &Signature::new()).expect("default arguments are well-typed")
    }

    /// Checks arity, closedness and types against the profile.
    pub fn new(profile: Profile, args: Vec<Term>) -> Result<InitialArgs, DiscourseError> {
        let (params, result) = {
            let s = profile.sentence_type();
            let (ps, r) = s.uncurry();
            (ps.into_iter().cloned().collect::<Vec<_>>(), r.clone())
        };
        debug_assert_eq!(result, SemType::T);
        if args.len() != params.len() {
            return Err(DiscourseError::InitialArgs(format!(
                "profile {profile} takes {} arguments, got {}",
                params.len(),
                args.len()
            )));
        }
        for (i, (arg, expected)) in args.iter().zip(&params).enumerate() {
            if !arg.is_closed() {
                return Err(DiscourseError::InitialArgs(format!("argument {} is not closed", i + 1)));
            }
            let found = type_of(arg).map_err(|e: TypeError| DiscourseError::InitialArgs(format!("argument {}: {e}", i + 1)))?;
            if &found != expected {
                return Err(DiscourseError::InitialArgs(format!(
                    "argument {} has type {found}, expected {expected}",
                    i + 1
                )));
            }
        }
        Ok(InitialArgs { profile, args })
    }

    pub fn parse(profile: Profile, texts: &[&str], sig: &Signature) -> Result<InitialArgs, DiscourseError> {
        let args = texts
            .iter()
            .enumerate()
            .map(|(i, t)| {
                parse_term(t, sig)
                    .map_err(|e: ParseError| DiscourseError::InitialArgs(format!("argument {}: {e}", i + 1)))
            })
            .collect::<Result<Vec<_>, _>>()?;
        InitialArgs::new(profile, args)
    }

    pub fn profile(&self) -> Profile {
        self.profile
    }

    pub fn args(&self) -> &[Term] {
        &self.args
    }
}

/// Every stage of one run of the pipeline.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Interpretation {
    pub composed: Term,
    /// `composed` applied to the initial arguments.
    pub applied: Term,
    pub normal: Term,
    pub raw: Formula,
    pub simplified: Formula,
}

pub fn interpret(
    tree: &DiscourseTree,
    lexicon: &Lexicon,
    init: &InitialArgs,
    max_steps: usize,
) -> Result<Interpretation, DiscourseError> {
    if init.profile != lexicon.profile() {
        return Err(DiscourseError::InitialArgs(format!(
            "arguments are for profile {}, lexicon is profile {}",
            init.profile,
            lexicon.profile()
        )));
    }
    if let Some(DiscourseTree::SymLeaf(name)) = tree.leaves().into_iter().find(|l| matches!(l, DiscourseTree::SymLeaf(_))) {
        return Err(DiscourseError::SymbolicLeaf(name.clone()));
    }
    let composed = compose(tree, lexicon)?;
    let applied = Term::apps(composed.clone(), init.args.iter().cloned());
    let normal = normalize(&applied, max_steps)?;
    let raw = reify(&normal)?;
    let simplified = simplify(&raw);
    Ok(Interpretation {
        composed,
        applied,
        normal,
        raw,
        simplified,
    })
}

impl fmt::Display for Np {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Np::ProperN(w) | Np::Pron(w) => f.write_str(w),
            Np::Det(d, n) => write!(f, "({d} {n})"),
        }
    }
}

impl fmt::Display for SentenceAst {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.subject)?;
        match &self.predicate {
            Predicate::Verb { word, object } => {
                if self.negated {
                    f.write_str(" doesnt")?;
                }
                write!(f, " {word}")?;
                if let Some(o) = object {
                    write!(f, " {o}")?;
                }
                Ok(())
            }
            Predicate::CopulaAdj(adj) => write!(f, " {} {adj}", if self.negated { "isnt" } else { "is" }),
        }
    }
}
