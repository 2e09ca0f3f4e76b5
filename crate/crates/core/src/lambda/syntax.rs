//! Named ASCII syntax for types and terms.
//!
//! ```text
//! type  ::= tatom ('>' type)?               right-associative arrow
//! tatom ::= 'e' | 't' | 'g' | 'kB' | 'kC' | 'sA' | 'sB' | 'sC' | '(' type ')'
//!
//! term  ::= '\' IDENT ':' type '.' term     abstraction
//!         | 'Ex' IDENT '.' term             Ex (\IDENT:e. term)
//!         | or
//! or    ::= and ('|' or)?
//! and   ::= not ('&' and)?
//! not   ::= '~' not | union
//! union ::= cons ('++' union)?
//! cons  ::= app ('::' cons)?
//! app   ::= atom atom*                      left-associative application
//! atom  ::= IDENT | '(' term ')' | '(' OP ')' | abstraction
//! OP    ::= '~' | '&' | '|' | '::' | '++'
//! ```
//!
//! Reserved identifiers: `nil sel top bot Ex` (builtins) and `Coord Sub`,
//! which abbreviate `\a:g. \b:g. b` and `\a:g. \b:g. a ++ b`. Identifiers
//! match `[A-Za-z_][A-Za-z0-9_']*`; bound names shadow everything else.
//! A binder extends as far right as possible. `#` starts a line comment.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use thiserror::Error;

use super::term::{Builtin, Signature, Term};
use super::types::SemType;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at offset {position}: {message}")]
    SyntaxError { position: usize, message: String },
    #[error("unknown identifier `{name}` at offset {position}")]
    UnknownIdentifier { name: String, position: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Backslash,
    Colon,
    Dot,
    LParen,
    RParen,
    Gt,
    Tilde,
    Amp,
    Bar,
    ColonColon,
    PlusPlus,
}

fn describe(tok: Option<&Tok>) -> String {
    match tok {
        None => "end of input".to_string(),
        Some(Tok::Ident(s)) => format!("`{s}`"),
        Some(t) => format!(
            "`{}`",
            match t {
                Tok::Backslash => "\\",
                Tok::Colon => ":",
                Tok::Dot => ".",
                Tok::LParen => "(",
                Tok::RParen => ")",
                Tok::Gt => ">",
                Tok::Tilde => "~",
                Tok::Amp => "&",
                Tok::Bar => "|",
                Tok::ColonColon => "::",
                Tok::PlusPlus => "++",
                Tok::Ident(_) => unreachable!(),
            }
        ),
    }
}

fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '\''
}

fn lex(src: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let mut out = Vec::new();
    let bytes: Vec<(usize, char)> = src.char_indices().collect();
    let mut i = 0;
    while i < bytes.len() {
        let (pos, c) = bytes[i];
        let next = bytes.get(i + 1).map(|&(_, c)| c);
        let single = match c {
            '\\' => Some(Tok::Backslash),
            '.' => Some(Tok::Dot),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            '>' => Some(Tok::Gt),
            '~' => Some(Tok::Tilde),
            '&' => Some(Tok::Amp),
            '|' => Some(Tok::Bar),
            _ => None,
        };
        if c.is_whitespace() {
            i += 1;
        } else if c == '#' {
            while i < bytes.len() && bytes[i].1 != '\n' {
                i += 1;
            }
        } else if let Some(tok) = single {
            out.push((tok, pos));
            i += 1;
        } else if c == ':' {
            if next == Some(':') {
                out.push((Tok::ColonColon, pos));
                i += 2;
            } else {
                out.push((Tok::Colon, pos));
                i += 1;
            }
        } else if c == '+' && next == Some('+') {
            out.push((Tok::PlusPlus, pos));
            i += 2;
        } else if is_ident_start(c) {
            let start = i;
            while i < bytes.len() && is_ident_char(bytes[i].1) {
                i += 1;
            }
            let end = bytes.get(i).map_or(src.len(), |&(p, _)| p);
            out.push((Tok::Ident(src[bytes[start].0..end].to_string()), pos));
        } else {
            return Err(ParseError::SyntaxError {
                position: pos,
                message: format!("unexpected character `{c}`"),
            });
        }
    }
    Ok(out)
}

/// `\a:g. \b:g. b`
pub fn coord_term() -> Term {
    Term::lam(SemType::G, Term::lam(SemType::G, Term::var(0)))
}

/// `\a:g. \b:g. a ++ b`
pub fn sub_term() -> Term {
    Term::lam(
        SemType::G,
        Term::lam(SemType::G, Term::union(Term::var(1), Term::var(0))),
    )
}

fn macro_term(name: &str) -> Option<Term> {
    match name {
        "Coord" => Some(coord_term()),
        "Sub" => Some(sub_term()),
        _ => None,
    }
}

const RESERVED: [&str; 7] = ["nil", "sel", "top", "bot", "Ex", "Coord", "Sub"];

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end: usize,
    sig: &'a Signature,
    scope: Vec<String>,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn peek_at(&self, k: usize) -> Option<&Tok> {
        self.toks.get(self.pos + k).map(|(t, _)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |&(_, p)| p)
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError::SyntaxError {
            position: self.offset(),
            message: message.into(),
        })
    }

    fn expect(&mut self, tok: Tok) -> Result<(), ParseError> {
        if self.peek() == Some(&tok) {
            self.pos += 1;
            Ok(())
        } else {
            self.error(format!(
                "expected {}, found {}",
                describe(Some(&tok)),
                describe(self.peek())
            ))
        }
    }

    fn ident(&mut self) -> Result<String, ParseError> {
        match self.peek() {
            Some(Tok::Ident(s)) => {
                let s = s.clone();
                self.pos += 1;
                Ok(s)
            }
            other => self.error(format!("expected identifier, found {}", describe(other))),
        }
    }

    fn binder_name(&mut self) -> Result<String, ParseError> {
        let at = self.offset();
        let name = self.ident()?;
        if RESERVED.contains(&name.as_str()) {
            return Err(ParseError::SyntaxError {
                position: at,
                message: format!("`{name}` is reserved and cannot be bound"),
            });
        }
        Ok(name)
    }

    fn ty(&mut self) -> Result<SemType, ParseError> {
        let dom = match self.peek() {
            Some(Tok::LParen) => {
                self.pos += 1;
                let ty = self.ty()?;
                self.expect(Tok::RParen)?;
                ty
            }
            Some(Tok::Ident(name)) => {
                let ty = match name.as_str() {
                    "e" => SemType::E,
                    "t" => SemType::T,
                    "g" => SemType::G,
                    other => match SemType::alias(other) {
                        Some(ty) => ty,
                        None => return self.error(format!("unknown type `{other}`")),
                    },
                };
                self.pos += 1;
                ty
            }
            other => return self.error(format!("expected a type, found {}", describe(other))),
        };
        if self.peek() == Some(&Tok::Gt) {
            self.pos += 1;
            Ok(SemType::arrow(dom, self.ty()?))
        } else {
            Ok(dom)
        }
    }

    fn starts_binder(&self) -> bool {
        match self.peek() {
            Some(Tok::Backslash) => true,
            Some(Tok::Ident(s)) if s == "Ex" && !self.scope.iter().any(|n| n == "Ex") => {
                matches!(self.peek_at(1), Some(Tok::Ident(_))) && self.peek_at(2) == Some(&Tok::Dot)
            }
            _ => false,
        }
    }

    fn binder(&mut self) -> Result<Term, ParseError> {
        if self.peek() == Some(&Tok::Backslash) {
            self.pos += 1;
            let name = self.binder_name()?;
            self.expect(Tok::Colon)?;
            let ty = self.ty()?;
            self.expect(Tok::Dot)?;
            self.scope.push(name);
            let body = self.term();
            self.scope.pop();
            Ok(Term::lam(ty, body?))
        } else {
            // Ex x. body
            self.pos += 1;
            let name = self.binder_name()?;
            self.expect(Tok::Dot)?;
            self.scope.push(name);
            let body = self.term();
            self.scope.pop();
            Ok(Term::exists(body?))
        }
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        if self.starts_binder() {
            self.binder()
        } else {
            self.infix_or()
        }
    }

    fn infix_or(&mut self) -> Result<Term, ParseError> {
        let left = self.infix_and()?;
        if self.peek() == Some(&Tok::Bar) {
            self.pos += 1;
            Ok(Term::or(left, self.infix_or_rhs()?))
        } else {
            Ok(left)
        }
    }

    // Right operands may be binders extending to the end.
    fn infix_or_rhs(&mut self) -> Result<Term, ParseError> {
        if self.starts_binder() {
            self.binder()
        } else {
            self.infix_or()
        }
    }

    fn infix_and(&mut self) -> Result<Term, ParseError> {
        let left = self.prefix_not()?;
        if self.peek() == Some(&Tok::Amp) {
            self.pos += 1;
            let right = if self.starts_binder() {
                self.binder()?
            } else {
                self.infix_and()?
            };
            Ok(Term::and(left, right))
        } else {
            Ok(left)
        }
    }

    fn prefix_not(&mut self) -> Result<Term, ParseError> {
        if self.peek() == Some(&Tok::Tilde) {
            self.pos += 1;
            let operand = if self.starts_binder() {
                self.binder()?
            } else {
                self.prefix_not()?
            };
            Ok(Term::not(operand))
        } else {
            self.infix_union()
        }
    }

    fn infix_union(&mut self) -> Result<Term, ParseError> {
        let left = self.infix_cons()?;
        if self.peek() == Some(&Tok::PlusPlus) {
            self.pos += 1;
            let right = if self.starts_binder() {
                self.binder()?
            } else {
                self.infix_union()?
            };
            Ok(Term::union(left, right))
        } else {
            Ok(left)
        }
    }

    fn infix_cons(&mut self) -> Result<Term, ParseError> {
        let left = self.application()?;
        if self.peek() == Some(&Tok::ColonColon) {
            self.pos += 1;
            let right = if self.starts_binder() {
                self.binder()?
            } else {
                self.infix_cons()?
            };
            Ok(Term::cons(left, right))
        } else {
            Ok(left)
        }
    }

    fn application(&mut self) -> Result<Term, ParseError> {
        let mut fun = self.atom()?;
        loop {
            match self.peek() {
                Some(Tok::Ident(_)) | Some(Tok::LParen) | Some(Tok::Backslash) => {
                    if self.starts_binder() {
                        let arg = self.binder()?;
                        return Ok(Term::app(fun, arg));
                    }
                    let arg = self.atom()?;
                    fun = Term::app(fun, arg);
                }
                _ => return Ok(fun),
            }
        }
    }

    fn atom(&mut self) -> Result<Term, ParseError> {
        if self.starts_binder() {
            return self.binder();
        }
        match self.peek().cloned() {
            Some(Tok::LParen) => {
                let op = match self.peek_at(1) {
                    Some(Tok::Tilde) => Some(Builtin::Not),
                    Some(Tok::Amp) => Some(Builtin::And),
                    Some(Tok::Bar) => Some(Builtin::Or),
                    Some(Tok::ColonColon) => Some(Builtin::Cons),
                    Some(Tok::PlusPlus) => Some(Builtin::Union),
                    _ => None,
                };
                if let Some(b) = op.filter(|_| self.peek_at(2) == Some(&Tok::RParen)) {
                    self.pos += 3;
                    return Ok(b.term());
                }
                self.pos += 1;
                let t = self.term()?;
                self.expect(Tok::RParen)?;
                Ok(t)
            }
            Some(Tok::Ident(name)) => {
                let at = self.offset();
                self.pos += 1;
                if let Some(depth) = self.scope.iter().rev().position(|n| *n == name) {
                    return Ok(Term::var(depth));
                }
                if let Some(b) = Builtin::from_name(&name) {
                    return Ok(b.term());
                }
                if let Some(t) = macro_term(&name) {
                    return Ok(t);
                }
                match self.sig.lookup(&name) {
                    Some(ty) => Ok(Term::constant(name, ty.clone())),
                    None => Err(ParseError::UnknownIdentifier { name, position: at }),
                }
            }
            other => self.error(format!("expected a term, found {}", describe(other.as_ref()))),
        }
    }
}

/// Parses a term in the named syntax, resolving free identifiers against
/// the builtins and `sig`.
pub fn parse_term(src: &str, sig: &Signature) -> Result<Term, ParseError> {
    let mut p = Parser {
        toks: lex(src)?,
        pos: 0,
        end: src.len(),
        sig,
        scope: Vec::new(),
    };
    let t = p.term()?;
    if p.peek().is_some() {
        return p.error(format!("unexpected {}", describe(p.peek())));
    }
    Ok(t)
}

pub fn parse_type(src: &str) -> Result<SemType, ParseError> {
    let sig = Signature::new();
    let mut p = Parser {
        toks: lex(src)?,
        pos: 0,
        end: src.len(),
        sig: &sig,
        scope: Vec::new(),
    };
    let ty = p.ty()?;
    if p.peek().is_some() {
        return p.error(format!("unexpected {}", describe(p.peek())));
    }
    Ok(ty)
}

// Printing precedence levels; a subterm printed below the level its
// context demands gets parentheses.
const BINDER: u8 = 0;
const OR: u8 = 1;
const AND: u8 = 2;
const NOT: u8 = 3;
const UNION: u8 = 4;
const CONS: u8 = 5;
const APP: u8 = 6;
const ATOM: u8 = 7;

struct Printer {
    taken: BTreeSet<String>,
    counter: usize,
    names: Vec<String>,
}

impl Printer {
    fn fresh(&mut self) -> String {
        loop {
            self.counter += 1;
            let name = format!("x{}", self.counter);
            if !self.taken.contains(&name) {
                return name;
            }
        }
    }

    fn wrap(out: &mut String, need: u8, have: u8, body: impl FnOnce(&mut String)) {
        if have < need {
            out.push('(');
            body(out);
            out.push(')');
        } else {
            body(out);
        }
    }

    fn binder(&mut self, out: &mut String, prefix: &str, ty: Option<&SemType>, body: &Term) {
        let name = self.fresh();
        out.push_str(prefix);
        out.push_str(&name);
        if let Some(ty) = ty {
            let _ = write!(out, ":{ty}");
        }
        out.push_str(". ");
        self.names.push(name);
        self.print(out, body, BINDER);
        self.names.pop();
    }

    fn print(&mut self, out: &mut String, t: &Term, need: u8) {
        if *t == coord_term() {
            out.push_str("Coord");
            return;
        }
        if *t == sub_term() {
            out.push_str("Sub");
            return;
        }
        match t {
            Term::Var(i) => match self.names.iter().rev().nth(*i) {
                Some(name) => out.push_str(name),
                None => {
                    let _ = write!(out, "?{i}");
                }
            },
            Term::Const(name, _) => match t.as_builtin() {
                Some(Builtin::Not) => out.push_str("(~)"),
                Some(Builtin::And) => out.push_str("(&)"),
                Some(Builtin::Or) => out.push_str("(|)"),
                Some(Builtin::Cons) => out.push_str("(::)"),
                Some(Builtin::Union) => out.push_str("(++)"),
                _ => out.push_str(name),
            },
            Term::Lam(ty, body) => {
                Self::wrap(out, need, BINDER, |out| self.binder(out, "\\", Some(ty), body));
            }
            Term::App(..) => self.print_app(out, t, need),
        }
    }

    fn print_app(&mut self, out: &mut String, t: &Term, need: u8) {
        let (head, args) = t.spine();
        let infix = |level: u8, op: &'static str, right_level: u8| (level, op, right_level);
        let binary = match (head.as_builtin(), args.len()) {
            (Some(Builtin::Or), 2) => Some(infix(OR, " | ", OR)),
            (Some(Builtin::And), 2) => Some(infix(AND, " & ", AND)),
            (Some(Builtin::Union), 2) => Some(infix(UNION, " ++ ", UNION)),
            (Some(Builtin::Cons), 2) => Some(infix(CONS, "::", CONS)),
            _ => None,
        };
        if let Some((level, op, right)) = binary {
            Self::wrap(out, need, level, |out| {
                self.print(out, args[0], level + 1);
                out.push_str(op);
                self.print(out, args[1], right);
            });
            return;
        }
        match (head.as_builtin(), args.as_slice()) {
            (Some(Builtin::Not), [a]) => {
                Self::wrap(out, need, NOT, |out| {
                    out.push_str("~ ");
                    self.print(out, a, NOT);
                });
            }
            (Some(Builtin::Exists), [Term::Lam(SemType::E, body)]) => {
                Self::wrap(out, need, BINDER, |out| self.binder(out, "Ex ", None, body));
            }
            _ => {
                Self::wrap(out, need, APP, |out| {
                    self.print(out, head, APP);
                    for a in &args {
                        out.push(' ');
                        self.print(out, a, ATOM);
                    }
                });
            }
        }
    }
}

/// Prints a term with canonical binder names `x1, x2, ...` in binder order,
/// skipping any name already used by a constant of the term.
pub fn pretty(term: &Term) -> String {
    let mut taken: BTreeSet<String> = term.constants().into_keys().collect();
    taken.extend(RESERVED.iter().map(|s| s.to_string()));
    let mut p = Printer {
        taken,
        counter: 0,
        names: Vec::new(),
    };
    let mut out = String::new();
    p.print(&mut out, term, BINDER);
    out
}
