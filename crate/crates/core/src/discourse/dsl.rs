//! The discourse file format.
//!
//! ```text
//! # comment
//! profile B
//! sentence s1 = John doesn't own (a car)
//! sentence s2 = it is red
//! discourse = s1 . s2
//! ```
//!
//! Words are lowercased and apostrophes dropped, so `doesn't` reads as
//! `doesnt`. Noun phrases are a single word or `(det noun)`. In the
//! discourse expression `.` is sequencing, `.c` coordination and `.s`
//! subordination; all three group to the right. With a `symbolic` line,
//! ids that name no sentence become symbolic leaves.

use super::{DiscourseError, DiscourseTree, Np, Predicate, SentenceAst};
use crate::lexicon::{Category, Lexicon, Profile};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SentenceDef {
    pub id: String,
    pub text: String,
    pub line: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Op {
    Seq,
    Coord,
    Sub,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Expr {
    Id(String),
    Bin(Op, Box<Expr>, Box<Expr>),
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Document {
    pub profile: Option<Profile>,
    pub sentences: Vec<SentenceDef>,
    pub symbolic: bool,
    discourse: Option<(Expr, usize)>,
}

fn dsl_err<T>(line: usize, message: impl Into<String>) -> Result<T, DiscourseError> {
    Err(DiscourseError::Dsl {
        line,
        message: message.into(),
    })
}

fn is_id(s: &str) -> bool {
    let mut cs = s.chars();
    cs.next().is_some_and(|c| c.is_ascii_alphabetic()) && cs.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

pub fn parse_document(src: &str) -> Result<Document, DiscourseError> {
    let mut doc = Document::default();
    for (idx, raw) in src.lines().enumerate() {
        let line = idx + 1;
        let text = raw.split('#').next().unwrap_or("").trim();
        if text.is_empty() {
            continue;
        }
        let (kw, rest) = text.split_once(char::is_whitespace).unwrap_or((text, ""));
        let rest = rest.trim();
        match kw {
            "profile" => {
                if doc.profile.is_some() {
                    return dsl_err(line, "profile given twice");
                }
                doc.profile = Some(rest.parse().or_else(|m: String| dsl_err(line, m))?);
            }
            "symbolic" if rest.is_empty() => doc.symbolic = true,
            "sentence" => {
                let Some((id, words)) = rest.split_once('=') else {
                    return dsl_err(line, "expected `sentence <id> = <words>`");
                };
                let id = id.trim();
                if !is_id(id) {
                    return dsl_err(line, format!("`{id}` is not a valid sentence id"));
                }
                if doc.sentences.iter().any(|s| s.id == id) {
                    return dsl_err(line, format!("sentence `{id}` defined twice"));
                }
                doc.sentences.push(SentenceDef {
                    id: id.to_string(),
                    text: words.trim().to_string(),
                    line,
                });
            }
            "discourse" => {
                let Some(expr) = rest.strip_prefix('=') else {
                    return dsl_err(line, "expected `discourse = <expr>`");
                };
                if doc.discourse.is_some() {
                    return dsl_err(line, "discourse given twice");
                }
                doc.discourse = Some((parse_expr(expr, line)?, line));
            }
            other => return dsl_err(line, format!("unknown directive `{other}`")),
        }
    }
    Ok(doc)
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum ETok {
    Id(String),
    Op(Op),
    LParen,
    RParen,
}

fn lex_expr(src: &str, line: usize) -> Result<Vec<ETok>, DiscourseError> {
    let cs: Vec<char> = src.chars().collect();
    let ident = |c: char| c.is_ascii_alphanumeric() || c == '_';
    let mut out = Vec::new();
    let mut i = 0;
    while i < cs.len() {
        match cs[i] {
            c if c.is_whitespace() => i += 1,
            '(' => {
                out.push(ETok::LParen);
                i += 1;
            }
            ')' => {
                out.push(ETok::RParen);
                i += 1;
            }
            '.' => {
                let op = match cs.get(i + 1) {
                    Some('c') if !cs.get(i + 2).is_some_and(|&c| ident(c)) => Some(Op::Coord),
                    Some('s') if !cs.get(i + 2).is_some_and(|&c| ident(c)) => Some(Op::Sub),
                    _ => None,
                };
                match op {
                    Some(op) => {
                        out.push(ETok::Op(op));
                        i += 2;
                    }
                    None => {
                        out.push(ETok::Op(Op::Seq));
                        i += 1;
                    }
                }
            }
            c if ident(c) => {
                let start = i;
                while i < cs.len() && ident(cs[i]) {
                    i += 1;
                }
                out.push(ETok::Id(cs[start..i].iter().collect()));
            }
            other => return dsl_err(line, format!("unexpected `{other}` in discourse expression")),
        }
    }
    Ok(out)
}

fn parse_expr(src: &str, line: usize) -> Result<Expr, DiscourseError> {
    let toks = lex_expr(src, line)?;
    let mut pos = 0;
    let e = expr(&toks, &mut pos, line)?;
    if pos != toks.len() {
        return dsl_err(line, "trailing input in discourse expression");
    }
    Ok(e)
}

fn expr(toks: &[ETok], pos: &mut usize, line: usize) -> Result<Expr, DiscourseError> {
    let left = match toks.get(*pos) {
        Some(ETok::Id(id)) => {
            *pos += 1;
            Expr::Id(id.clone())
        }
        Some(ETok::LParen) => {
            *pos += 1;
            let e = expr(toks, pos, line)?;
            if toks.get(*pos) != Some(&ETok::RParen) {
                return dsl_err(line, "missing `)` in discourse expression");
            }
            *pos += 1;
            e
        }
        _ => return dsl_err(line, "expected a sentence id or `(`"),
    };
    match toks.get(*pos) {
        Some(ETok::Op(op)) => {
            *pos += 1;
            let right = expr(toks, pos, line)?;
            Ok(Expr::Bin(*op, Box::new(left), Box::new(right)))
        }
        _ => Ok(left),
    }
}

impl Document {
    /// The discourse tree, reading sentences against `lexicon`. Without a
    /// `discourse` line a single sentence stands alone.
    pub fn tree(&self, lexicon: &Lexicon) -> Result<DiscourseTree, DiscourseError> {
        match &self.discourse {
            Some((e, line)) => self.build(e, *line, lexicon),
            None => match self.sentences.as_slice() {
                [only] => Ok(DiscourseTree::Leaf(parse_sentence(&only.text, lexicon, only.line)?)),
                _ => dsl_err(self.sentences.last().map_or(1, |s| s.line), "missing `discourse = ...` line"),
            },
        }
    }

    fn build(&self, e: &Expr, line: usize, lexicon: &Lexicon) -> Result<DiscourseTree, DiscourseError> {
        match e {
            Expr::Id(id) => match self.sentences.iter().find(|s| &s.id == id) {
                Some(def) => Ok(DiscourseTree::Leaf(parse_sentence(&def.text, lexicon, def.line)?)),
                None if self.symbolic => Ok(DiscourseTree::SymLeaf(id.clone())),
                None => dsl_err(line, format!("no sentence named `{id}`")),
            },
            Expr::Bin(op, a, b) => {
                let (a, b) = (self.build(a, line, lexicon)?, self.build(b, line, lexicon)?);
                Ok(match op {
                    Op::Seq => DiscourseTree::seq(a, b),
                    Op::Coord => DiscourseTree::coord(a, b),
                    Op::Sub => DiscourseTree::sub(a, b),
                })
            }
        }
    }
}

fn words(text: &str) -> Vec<String> {
    let text = text.trim().trim_end_matches('.');
    let mut out = Vec::new();
    for chunk in text.replace('(', " ( ").replace(')', " ) ").split_whitespace() {
        let w: String = chunk.chars().filter(|&c| c != '\'' && c != '\u{2019}').collect();
        out.push(w.to_lowercase());
    }
    out
}

/// Reads `subject [doesnt] verb [object]` or `subject is|isnt adjective`.
pub(super) fn parse_sentence(text: &str, lexicon: &Lexicon, line: usize) -> Result<SentenceAst, DiscourseError> {
    let ws = words(text);
    let mut pos = 0;
    let category = |w: &str| lexicon.get(w).map(|e| e.category);
    let lex_err = |e: crate::lexicon::LexiconError| DiscourseError::Dsl {
        line,
        message: e.to_string(),
    };

    let subject = parse_np(&ws, &mut pos, lexicon, line)?;
    let Some(w) = ws.get(pos) else {
        return dsl_err(line, "sentence has no verb");
    };
    pos += 1;
    let copula_neg = w.strip_suffix("nt").is_some_and(|stem| category(stem) == Some(Category::Copula));
    let predicate_and_neg = if category(w) == Some(Category::Copula) || copula_neg {
        let Some(adj) = ws.get(pos) else {
            return dsl_err(line, format!("expected an adjective after `{w}`"));
        };
        pos += 1;
        (Predicate::CopulaAdj(adj.clone()), copula_neg)
    } else {
        let negated = category(w) == Some(Category::NegationAux);
        let verb = if negated {
            let Some(v) = ws.get(pos) else {
                return dsl_err(line, format!("expected a verb after `{w}`"));
            };
            pos += 1;
            v
        } else {
            w
        };
        lexicon.lookup_inflected(verb).map_err(lex_err)?;
        let object = if pos < ws.len() {
            Some(parse_np(&ws, &mut pos, lexicon, line)?)
        } else {
            None
        };
        (
            Predicate::Verb {
                word: verb.clone(),
                object,
            },
            negated,
        )
    };
    if pos != ws.len() {
        return dsl_err(line, format!("unexpected `{}`", ws[pos]));
    }
    let (predicate, negated) = predicate_and_neg;
    Ok(SentenceAst {
        subject,
        predicate,
        negated,
    })
}

fn parse_np(ws: &[String], pos: &mut usize, lexicon: &Lexicon, line: usize) -> Result<Np, DiscourseError> {
    let next = |pos: &mut usize| {
        let w = ws.get(*pos).cloned();
        *pos += 1;
        w
    };
    let Some(first) = next(pos) else {
        return dsl_err(line, "expected a noun phrase");
    };
    if first == "(" {
        let mut inner = Vec::new();
        loop {
            match next(pos) {
                Some(w) if w == ")" => break,
                Some(w) if w == "(" => return dsl_err(line, "nested parentheses in a noun phrase"),
                Some(w) => inner.push(w),
                None => return dsl_err(line, "missing `)`"),
            }
        }
        return match inner.as_slice() {
            [w] => single_np(w, lexicon, line),
            [d, n] => Ok(Np::Det(d.clone(), n.clone())),
            _ => dsl_err(line, "a noun phrase is one word or `(det noun)`"),
        };
    }
    if lexicon.get(&first).map(|e| e.category) == Some(Category::Determiner) {
        let Some(noun) = next(pos) else {
            return dsl_err(line, format!("expected a noun after `{first}`"));
        };
        return Ok(Np::Det(first, noun));
    }
    single_np(&first, lexicon, line)
}

fn single_np(w: &str, lexicon: &Lexicon, line: usize) -> Result<Np, DiscourseError> {
    match lexicon.get(w).map(|e| e.category) {
        Some(Category::Pronoun) => Ok(Np::Pron(w.to_string())),
        Some(Category::ProperNoun) => Ok(Np::ProperN(w.to_string())),
        Some(other) => dsl_err(line, format!("`{w}` is a {other}, not a noun phrase")),
        None => dsl_err(line, format!("unknown word `{w}` in profile {}", lexicon.profile())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const DOC: &str = "\
# the negation example
profile B
sentence s1 = John doesn't own (a car).
sentence s2 = it is red
discourse = s1 . s2
";

    #[test]
    fn reads_a_document() {
        let doc = parse_document(DOC).unwrap();
        assert_eq!(doc.profile, Some(Profile::B));
        assert_eq!(doc.sentences.len(), 2);
        let tree = doc.tree(&Lexicon::standard(Profile::B)).unwrap();
        let DiscourseTree::Seq(a, _) = tree else { panic!() };
        assert_eq!(
            *a,
            DiscourseTree::Leaf(SentenceAst {
                subject: Np::ProperN("john".into()),
                predicate: Predicate::Verb {
                    word: "own".into(),
                    object: Some(Np::Det("a".into(), "car".into())),
                },
                negated: true,
            })
        );
    }

    #[test]
    fn operators_group_right() {
        let e = parse_expr("s1 .s s2 .c s3", 1).unwrap();
        let id = |s: &str| Box::new(Expr::Id(s.into()));
        assert_eq!(
            e,
            Expr::Bin(Op::Sub, id("s1"), Box::new(Expr::Bin(Op::Coord, id("s2"), id("s3"))))
        );
        assert_eq!(parse_expr("(s1 . c2) . s3", 1).unwrap(), Expr::Bin(
            Op::Seq,
            Box::new(Expr::Bin(Op::Seq, id("s1"), id("c2"))),
            id("s3")
        ));
    }

    #[test]
    fn symbolic_ids() {
        let doc = parse_document("profile C\nsymbolic\ndiscourse = s1 .c (s2 .s s3)\n").unwrap();
        let tree = doc.tree(&Lexicon::standard(Profile::C)).unwrap();
        assert_eq!(
            tree,
            DiscourseTree::coord(
                DiscourseTree::sym("s1"),
                DiscourseTree::sub(DiscourseTree::sym("s2"), DiscourseTree::sym("s3"))
            )
        );
        let doc = parse_document("profile C\ndiscourse = s1 .c s2\n").unwrap();
        assert!(matches!(doc.tree(&Lexicon::standard(Profile::C)), Err(DiscourseError::Dsl { line: 2, .. })));
    }

    #[test]
    fn negated_copula_and_bare_determiner() {
        let lex = Lexicon::standard(Profile::B);
        let s = parse_sentence("it isnt red", &lex, 1).unwrap();
        assert_eq!(s.predicate, Predicate::CopulaAdj("red".into()));
        assert!(s.negated);
        let s = parse_sentence("john owns a car", &lex, 1).unwrap();
        assert_eq!(
            s.predicate,
            Predicate::Verb {
                word: "owns".into(),
                object: Some(Np::Det("a".into(), "car".into()))
            }
        );
    }

    #[test]
    fn errors_carry_lines() {
        for (src, line) in [
            ("profile Q", 1),
            ("profile B\nsentence = x", 2),
            ("profile B\n\nfrobnicate", 3),
            ("profile B\ndiscourse = s1 .", 2),
        ] {
            match parse_document(src) {
                Err(DiscourseError::Dsl { line: l, .. }) => assert_eq!(l, line, "{src}"),
                other => panic!("{src}: {other:?}"),
            }
        }
        let lex = Lexicon::standard(Profile::B);
        assert!(matches!(parse_sentence("john sings", &lex, 4), Err(DiscourseError::Dsl { line: 4, .. })));
        assert!(matches!(parse_sentence("car owns it", &lex, 4), Err(DiscourseError::Dsl { line: 4, .. })));
    }
}
