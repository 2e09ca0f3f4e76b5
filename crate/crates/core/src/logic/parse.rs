//! Reader for the formula text syntax produced by `Display`.
//!
//! ```text
//! form  ::= 'Ex' IDENT '.' form | or
//! or    ::= and ('|' or)?
//! and   ::= unary ('&' and)?
//! unary ::= '~' unary | 'Ex' IDENT '.' form | 'top' | 'bot' | '(' form ')' | atom
//! atom  ::= IDENT ( '(' ent (',' ent)* ')' | ent* )
//! ent   ::= 'sel' '(' env ')' | IDENT
//! env   ::= cons ('++' env)?
//! cons  ::= 'nil' | '(' env ')' | ent '::' cons
//! ```
//!
//! Identifiers bound by an enclosing `Ex` are variables, all others are
//! constants. `sel` sites are numbered in reading order.

use thiserror::Error;

use super::{EntityTerm, EnvExpr, Formula};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("formula syntax error at offset {position}: {message}")]
pub struct FormulaParseError {
    pub position: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Tilde,
    Amp,
    Bar,
    Dot,
    Comma,
    LParen,
    RParen,
    ColonColon,
    PlusPlus,
}

fn lex(src: &str) -> Result<Vec<(Tok, usize)>, FormulaParseError> {
    let chars: Vec<(usize, char)> = src.char_indices().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        let next = chars.get(i + 1).map(|&(_, c)| c);
        let tok = match c {
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '~' => Tok::Tilde,
            '&' => Tok::Amp,
            '|' => Tok::Bar,
            '.' => Tok::Dot,
            ',' => Tok::Comma,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            ':' if next == Some(':') => {
                i += 1;
                Tok::ColonColon
            }
            '+' if next == Some('+') => {
                i += 1;
                Tok::PlusPlus
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].1.is_ascii_alphanumeric() || matches!(chars[i].1, '_' | '\'')) {
                    i += 1;
                }
                let end = chars.get(i).map_or(src.len(), |&(p, _)| p);
                out.push((Tok::Ident(src[chars[start].0..end].to_string()), pos));
                continue;
            }
            other => {
                return Err(FormulaParseError {
                    position: pos,
                    message: format!("unexpected character `{other}`"),
                })
            }
        };
        out.push((tok, pos));
        i += 1;
    }
    Ok(out)
}

const KEYWORDS: [&str; 5] = ["Ex", "top", "bot", "sel", "nil"];

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end: usize,
    bound: Vec<String>,
    next_site: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn peek_ident(&self) -> Option<&str> {
        match self.peek() {
            Some(Tok::Ident(s)) => Some(s),
            _ => None,
        }
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T, FormulaParseError> {
        Err(FormulaParseError {
            position: self.toks.get(self.pos).map_or(self.end, |&(_, p)| p),
            message: message.into(),
        })
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == Some(tok) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: Tok) -> Result<(), FormulaParseError> {
        if self.eat(&tok) {
            Ok(())
        } else {
            self.err(format!("expected {tok:?}, found {:?}", self.peek()))
        }
    }

    fn name(&mut self) -> Result<String, FormulaParseError> {
        match self.peek_ident() {
            Some(s) if !KEYWORDS.contains(&s) => {
                let s = s.to_string();
                self.pos += 1;
                Ok(s)
            }
            _ => self.err(format!("expected a name, found {:?}", self.peek())),
        }
    }

    fn form(&mut self) -> Result<Formula, FormulaParseError> {
        if self.peek_ident() == Some("Ex") {
            return self.exists();
        }
        self.or()
    }

    fn exists(&mut self) -> Result<Formula, FormulaParseError> {
        self.pos += 1;
        let v = self.name()?;
        self.expect(Tok::Dot)?;
        self.bound.push(v.clone());
        let body = self.form();
        self.bound.pop();
        Ok(Formula::exists(v, body?))
    }

    fn or(&mut self) -> Result<Formula, FormulaParseError> {
        let left = self.and()?;
        if self.eat(&Tok::Bar) {
            Ok(Formula::or(left, self.or()?))
        } else {
            Ok(left)
        }
    }

    fn and(&mut self) -> Result<Formula, FormulaParseError> {
        let left = self.unary()?;
        if self.eat(&Tok::Amp) {
            Ok(Formula::and(left, self.and()?))
        } else {
            Ok(left)
        }
    }

    fn unary(&mut self) -> Result<Formula, FormulaParseError> {
        if self.eat(&Tok::Tilde) {
            return Ok(Formula::not(self.unary()?));
        }
        if self.eat(&Tok::LParen) {
            let f = self.form()?;
            self.expect(Tok::RParen)?;
            return Ok(f);
        }
        match self.peek_ident() {
            Some("Ex") => self.exists(),
            Some("top") => {
                self.pos += 1;
                Ok(Formula::Top)
            }
            Some("bot") => {
                self.pos += 1;
                Ok(Formula::Bot)
            }
            _ => self.atom(),
        }
    }

    fn atom(&mut self) -> Result<Formula, FormulaParseError> {
        let pred = self.name()?;
        let mut args = Vec::new();
        if self.eat(&Tok::LParen) {
            loop {
                args.push(self.entity()?);
                if !self.eat(&Tok::Comma) {
                    break;
                }
            }
            self.expect(Tok::RParen)?;
        } else {
            while matches!(self.peek_ident(), Some(s) if s == "sel" || !KEYWORDS.contains(&s)) {
                args.push(self.entity()?);
            }
        }
        Ok(Formula::Atom(pred, args))
    }

    fn entity(&mut self) -> Result<EntityTerm, FormulaParseError> {
        if self.peek_ident() == Some("sel") {
            self.pos += 1;
            self.expect(Tok::LParen)?;
            let id = self.next_site;
            self.next_site += 1;
            let env = self.env()?;
            self.expect(Tok::RParen)?;
            return Ok(EntityTerm::Sel(env, id));
        }
        let n = self.name()?;
        if self.bound.contains(&n) {
            Ok(EntityTerm::Var(n))
        } else {
            Ok(EntityTerm::Const(n))
        }
    }

    fn env(&mut self) -> Result<EnvExpr, FormulaParseError> {
        let left = self.env_cons()?;
        if self.eat(&Tok::PlusPlus) {
            Ok(EnvExpr::union(left, self.env()?))
        } else {
            Ok(left)
        }
    }

    fn env_cons(&mut self) -> Result<EnvExpr, FormulaParseError> {
        if self.peek_ident() == Some("nil") {
            self.pos += 1;
            return Ok(EnvExpr::Nil);
        }
        if self.eat(&Tok::LParen) {
            let e = self.env()?;
            self.expect(Tok::RParen)?;
            return Ok(e);
        }
        if self.peek_ident() == Some("sel") {
            return self.err("a `sel` term cannot head an environment");
        }
        let head = self.entity()?;
        self.expect(Tok::ColonColon)?;
        Ok(EnvExpr::cons(head, self.env_cons()?))
    }
}

pub fn parse_formula(src: &str) -> Result<Formula, FormulaParseError> {
    let mut p = Parser {
        toks: lex(src)?,
        pos: 0,
        end: src.len(),
        bound: Vec::new(),
        next_site: 0,
    };
    let f = p.form()?;
    if p.peek().is_some() {
        return p.err(format!("unexpected {:?}", p.peek()));
    }
    Ok(f)
}
