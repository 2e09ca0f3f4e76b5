use std::collections::BTreeMap;
use std::fmt;

use super::types::SemType;

/// Lambda terms with De Bruijn indices (`Var(0)` is the nearest binder).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Term {
    Var(usize),
    Lam(SemType, Box<Term>),
    App(Box<Term>, Box<Term>),
    Const(String, SemType),
}

/// Logical and environment constants with fixed types.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Builtin {
    Not,
    And,
    Or,
    Top,
    Bot,
    Exists,
    Cons,
    Union,
    Nil,
    Sel,
}

impl Builtin {
    pub const ALL: [Builtin; 10] = [
        Builtin::Not,
        Builtin::And,
        Builtin::Or,
        Builtin::Top,
        Builtin::Bot,
        Builtin::Exists,
        Builtin::Cons,
        Builtin::Union,
        Builtin::Nil,
        Builtin::Sel,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Builtin::Not => "~",
            Builtin::And => "&",
            Builtin::Or => "|",
            Builtin::Top => "top",
            Builtin::Bot => "bot",
            Builtin::Exists => "Ex",
            Builtin::Cons => "::",
            Builtin::Union => "++",
            Builtin::Nil => "nil",
            Builtin::Sel => "sel",
        }
    }

    pub fn from_name(name: &str) -> Option<Builtin> {
        Builtin::ALL.into_iter().find(|b| b.name() == name)
    }

    pub fn ty(self) -> SemType {
        use SemType::{E, G, T};
        match self {
            Builtin::Not => SemType::arrow(T, T),
            Builtin::And | Builtin::Or => SemType::kappa_b(),
            Builtin::Top | Builtin::Bot => T,
            Builtin::Exists => SemType::arrow(SemType::arrow(E, T), T),
            Builtin::Cons => SemType::func([E, G], G),
            Builtin::Union => SemType::kappa_c(),
            Builtin::Nil => G,
            Builtin::Sel => SemType::arrow(G, E),
        }
    }

    pub fn term(self) -> Term {
        Term::Const(self.name().to_string(), self.ty())
    }
}

/// One step from a term to one of its immediate subterms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Step {
    Fun,
    Arg,
    Body,
}

/// Position of a subterm, as a sequence of steps from the root.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Path(pub Vec<Step>);

impl Path {
    pub fn root() -> Path {
        Path(Vec::new())
    }

    pub fn child(&self, step: Step) -> Path {
        let mut steps = self.0.clone();
        steps.push(step);
        Path(steps)
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("root");
        }
        for (i, step) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(".")?;
            }
            f.write_str(match step {
                Step::Fun => "fun",
                Step::Arg => "arg",
                Step::Body => "body",
            })?;
        }
        Ok(())
    }
}

impl Term {
    pub fn var(index: usize) -> Term {
        Term::Var(index)
    }

    pub fn lam(ty: SemType, body: Term) -> Term {
        Term::Lam(ty, Box::new(body))
    }

    pub fn app(fun: Term, arg: Term) -> Term {
        Term::App(Box::new(fun), Box::new(arg))
    }

    /// `f a1 a2 ...`, left-nested.
    pub fn apps<I: IntoIterator<Item = Term>>(fun: Term, args: I) -> Term {
        args.into_iter().fold(fun, Term::app)
    }

    pub fn constant(name: impl Into<String>, ty: SemType) -> Term {
        Term::Const(name.into(), ty)
    }

    pub fn builtin(b: Builtin) -> Term {
        b.term()
    }

    pub fn top() -> Term {
        Builtin::Top.term()
    }

    pub fn bot() -> Term {
        Builtin::Bot.term()
    }

    pub fn nil() -> Term {
        Builtin::Nil.term()
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(a: Term) -> Term {
        Term::app(Builtin::Not.term(), a)
    }

    pub fn and(a: Term, b: Term) -> Term {
        Term::apps(Builtin::And.term(), [a, b])
    }

    pub fn or(a: Term, b: Term) -> Term {
        Term::apps(Builtin::Or.term(), [a, b])
    }

    pub fn cons(head: Term, tail: Term) -> Term {
        Term::apps(Builtin::Cons.term(), [head, tail])
    }

    pub fn union(a: Term, b: Term) -> Term {
        Term::apps(Builtin::Union.term(), [a, b])
    }

    pub fn sel(env: Term) -> Term {
        Term::app(Builtin::Sel.term(), env)
    }

    /// `Ex (\x:e. body)`.
    pub fn exists(body: Term) -> Term {
        Term::app(Builtin::Exists.term(), Term::lam(SemType::E, body))
    }

    /// The builtin this constant denotes, if any. A constant only counts as
    /// a builtin when both its name and its type match.
    pub fn as_builtin(&self) -> Option<Builtin> {
        match self {
            Term::Const(name, ty) => Builtin::from_name(name).filter(|b| &b.ty() == ty),
            _ => None,
        }
    }

    /// Head and arguments of an application spine.
    pub fn spine(&self) -> (&Term, Vec<&Term>) {
        let mut args = Vec::new();
        let mut cur = self;
        while let Term::App(f, a) = cur {
            args.push(a.as_ref());
            cur = f;
        }
        args.reverse();
        (cur, args)
    }

    /// Number of nodes.
    pub fn size(&self) -> usize {
        match self {
            Term::Var(_) | Term::Const(..) => 1,
            Term::Lam(_, b) => 1 + b.size(),
            Term::App(f, a) => 1 + f.size() + a.size(),
        }
    }

    pub fn is_closed(&self) -> bool {
        self.free_above(0)
    }

    fn free_above(&self, depth: usize) -> bool {
        match self {
            Term::Var(i) => *i < depth,
            Term::Const(..) => true,
            Term::Lam(_, b) => b.free_above(depth + 1),
            Term::App(f, a) => f.free_above(depth) && a.free_above(depth),
        }
    }

    /// Whether `Var(index)` (relative to this term's root) occurs free.
    pub fn has_free_var(&self, index: usize) -> bool {
        match self {
            Term::Var(i) => *i == index,
            Term::Const(..) => false,
            Term::Lam(_, b) => b.has_free_var(index + 1),
            Term::App(f, a) => f.has_free_var(index) || a.has_free_var(index),
        }
    }

    pub fn is_redex(&self) -> bool {
        matches!(self, Term::App(f, _) if matches!(**f, Term::Lam(..)))
    }

    /// Whether the term contains no beta redex.
    pub fn is_normal(&self) -> bool {
        match self {
            Term::Var(_) | Term::Const(..) => true,
            Term::Lam(_, b) => b.is_normal(),
            Term::App(f, a) => !self.is_redex() && f.is_normal() && a.is_normal(),
        }
    }

    pub fn subterm(&self, path: &Path) -> Option<&Term> {
        let mut cur = self;
        for step in &path.0 {
            cur = match (step, cur) {
                (Step::Fun, Term::App(f, _)) => f,
                (Step::Arg, Term::App(_, a)) => a,
                (Step::Body, Term::Lam(_, b)) => b,
                _ => return None,
            };
        }
        Some(cur)
    }

    /// Names of non-builtin constants, with their types.
    pub fn constants(&self) -> BTreeMap<String, SemType> {
        let mut out = BTreeMap::new();
        self.collect_constants(&mut out);
        out
    }

    fn collect_constants(&self, out: &mut BTreeMap<String, SemType>) {
        match self {
            Term::Var(_) => {}
            Term::Const(name, ty) => {
                if self.as_builtin().is_none() {
                    out.insert(name.clone(), ty.clone());
                }
            }
            Term::Lam(_, b) => b.collect_constants(out),
            Term::App(f, a) => {
                f.collect_constants(out);
                a.collect_constants(out);
            }
        }
    }
}

/// Alpha-equivalence. With De Bruijn indices this is structural equality,
/// binder annotations included.
pub fn alpha_eq(t1: &Term, t2: &Term) -> bool {
    t1 == t2
}

/// Declared constants available to the parser, builtins aside.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Signature {
    consts: BTreeMap<String, SemType>,
}

impl Signature {
    pub fn new() -> Signature {
        Signature::default()
    }

    pub fn declare(&mut self, name: impl Into<String>, ty: SemType) -> &mut Self {
        self.consts.insert(name.into(), ty);
        self
    }

    pub fn with(mut self, name: impl Into<String>, ty: SemType) -> Self {
        self.declare(name, ty);
        self
    }

    /// Declares an `arity`-place predicate `e>...>e>t`.
    pub fn predicate(self, name: impl Into<String>, arity: usize) -> Self {
        let ty = SemType::func(vec![SemType::E; arity], SemType::T);
        self.with(name, ty)
    }

    pub fn entity(self, name: impl Into<String>) -> Self {
        self.with(name, SemType::E)
    }

    pub fn lookup(&self, name: &str) -> Option<&SemType> {
        self.consts.get(name)
    }

    pub fn contains(&self, name: &str) -> bool {
        self.consts.contains_key(name)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&String, &SemType)> {
        self.consts.iter()
    }

    pub fn extend(&mut self, other: &Signature) {
        for (name, ty) in other.iter() {
            self.declare(name.clone(), ty.clone());
        }
    }
}
