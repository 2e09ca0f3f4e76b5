//! Lexical entries for the three calculi, stored as closed typed terms.
//!
//! Templates are written in the named term syntax with a placeholder
//! constant (`PRED` for predicates, `NAME` for proper-noun referents) that
//! is replaced by the word's own constant after parsing.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::lambda::{parse_term, type_of, ParseError, SemType, Signature, Term, TypeError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Profile {
    /// Single environment, sentences of type `g>(g>t)>t`.
    A,
    /// Logical connective plus proper-noun and existential environments.
    B,
    /// Environment combinators for the right frontier.
    C,
}

impl Profile {
    pub const ALL: [Profile; 3] = [Profile::A, Profile::B, Profile::C];

    pub fn sentence_type(self) -> SemType {
        match self {
            Profile::A => SemType::sent_a(),
            Profile::B => SemType::sent_b(),
            Profile::C => SemType::sent_c(),
        }
    }

    /// Type of the first sentence argument in profiles B and C.
    pub fn connective_type(self) -> Option<SemType> {
        match self {
            Profile::A => None,
            Profile::B => Some(SemType::kappa_b()),
            Profile::C => Some(SemType::kappa_c()),
        }
    }

    /// `(e>S)>S`
    pub fn np_type(self) -> SemType {
        let s = self.sentence_type();
        SemType::arrow(SemType::arrow(SemType::E, s.clone()), s)
    }
}

impl fmt::Display for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Profile::A => "A",
            Profile::B => "B",
            Profile::C => "C",
        })
    }
}

impl FromStr for Profile {
    type Err = String;

    fn from_str(s: &str) -> Result<Profile, String> {
        match s {
            "A" | "a" => Ok(Profile::A),
            "B" | "b" => Ok(Profile::B),
            "C" | "c" => Ok(Profile::C),
            other => Err(format!("unknown profile `{other}` (expected A, B or C)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Category {
    ProperNoun,
    CommonNoun,
    TransitiveVerb,
    IntransitiveVerb,
    Determiner,
    Pronoun,
    Copula,
    Adjective,
    NegationAux,
}

impl Category {
    /// Keyword used in lexicon extension files.
    pub fn keyword(self) -> &'static str {
        match self {
            Category::ProperNoun => "pnoun",
            Category::CommonNoun => "noun",
            Category::TransitiveVerb => "tverb",
            Category::IntransitiveVerb => "iverb",
            Category::Determiner => "det",
            Category::Pronoun => "pron",
            Category::Copula => "copula",
            Category::Adjective => "adj",
            Category::NegationAux => "neg",
        }
    }

    pub fn from_keyword(s: &str) -> Option<Category> {
        [
            Category::ProperNoun,
            Category::CommonNoun,
            Category::TransitiveVerb,
            Category::IntransitiveVerb,
            Category::Determiner,
            Category::Pronoun,
            Category::Copula,
            Category::Adjective,
            Category::NegationAux,
        ]
        .into_iter()
        .find(|c| c.keyword() == s)
    }

    /// The semantic type of the category under `profile`.
    pub fn semantic_type(self, profile: Profile) -> SemType {
        let s = profile.sentence_type();
        let np = profile.np_type();
        let pred = SemType::arrow(SemType::E, s.clone());
        let vp = SemType::arrow(np.clone(), s.clone());
        let adj = SemType::arrow(pred.clone(), pred.clone());
        match self {
            Category::ProperNoun | Category::Pronoun => np,
            Category::CommonNoun => pred,
            Category::TransitiveVerb => SemType::arrow(np, vp),
            Category::IntransitiveVerb => vp,
            Category::Determiner => SemType::arrow(pred.clone(), SemType::arrow(pred, s)),
            Category::Copula => SemType::arrow(adj, vp),
            Category::Adjective => adj,
            Category::NegationAux => SemType::arrow(vp.clone(), vp),
        }
    }
}

impl fmt::Display for Category {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.keyword())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LexiconError {
    #[error("no entry for `{word}` in profile {profile}")]
    UnknownWord { word: String, profile: Profile },
    #[error("no template for category {category} in profile {profile}")]
    UnsupportedCategory { category: Category, profile: Profile },
    #[error("`{0}` cannot be used as a word (lowercase letters, digits and `_`, not a reserved name)")]
    InvalidWord(String),
    #[error("lexicon line {line}: {message}")]
    Extension { line: usize, message: String },
    #[error("template for {category} does not parse: {source}")]
    Template {
        category: Category,
        #[source]
        source: ParseError,
    },
    #[error("entry `{word}` is ill-typed: {source}")]
    IllTyped {
        word: String,
        #[source]
        source: TypeError,
    },
    #[error("entry `{word}` has type {found}, expected {expected}")]
    WrongType {
        word: String,
        expected: SemType,
        found: SemType,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LexEntry {
    pub word: String,
    pub category: Category,
    pub profile: Profile,
    pub term: Term,
}

impl LexEntry {
    /// Checks closedness and that the term has the category's type.
    pub fn validate(&self) -> Result<(), LexiconError> {
        let found = type_of(&self.term).map_err(|source| LexiconError::IllTyped {
            word: self.word.clone(),
            source,
        })?;
        let expected = self.category.semantic_type(self.profile);
        if found != expected {
            return Err(LexiconError::WrongType {
                word: self.word.clone(),
                expected,
                found,
            });
        }
        Ok(())
    }
}

const PRED: &str = "PRED";
const NAME: &str = "NAME";

// Profile A: one environment.

const A_PNOUN: &str = r"\P:e>sA. \e:g. \phi:g>t. P NAME e phi";
const A_NOUN: &str = r"\x:e. \e:g. \phi:g>t. PRED x & phi e";
const A_TVERB: &str = r"\O:(e>sA)>sA. \S:(e>sA)>sA. S (\x:e. O (\y:e. \e:g. \phi:g>t. PRED x y & phi e))";
const A_IVERB: &str = r"\S:(e>sA)>sA. S (\x:e. \e:g. \phi:g>t. PRED x & phi e)";
const A_ADJ: &str = r"\P:e>sA. \x:e. \e:g. \phi:g>t. P x e phi & PRED x";
const A_DET_A: &str = r"\P:e>sA. \Q:e>sA. \e:g. \phi:g>t. Ex x. P x e (\e':g. Q x (x::e') phi)";
const A_PRON: &str = r"\P:e>sA. \e:g. \phi:g>t. P (sel e) e phi";
const A_IS: &str = r"\A:(e>sA)>e>sA. \S:(e>sA)>sA.
    S (\x:e. \e:g. \phi:g>t. A (\y:e. \e':g. \phi':g>t. top) x e phi & phi e)";
const A_DOESNT: &str = r"\V:((e>sA)>sA)>sA. \S:(e>sA)>sA. \e:g. \phi:g>t.
    ~ (V S e (\e':g. top)) & phi e";
/// Negation that leaves the continuation inside its scope.
const A_DOESNT_REJECTED: &str = r"\V:((e>sA)>sA)>sA. \S:(e>sA)>sA. \e:g. \phi:g>t.
    ~ (V S e (\e':g. phi e'))";

// Profile B: connective c, proper nouns in e1, existentials in e2.

const B_PNOUN: &str = r"\P:e>sB. \c:kB. \e1:g. \e2:g. \phi:kB>g>g>t. P NAME c (NAME::e1) e2 phi";
const B_NOUN: &str = r"\x:e. \c:kB. \e1:g. \e2:g. \phi:kB>g>g>t. c (PRED x) (phi c e1 e2)";
const B_TVERB: &str = r"\O:(e>sB)>sB. \S:(e>sB)>sB.
    S (\x:e. O (\y:e. \c':kB. \e1':g. \e2':g. \phi':kB>g>g>t. c' (PRED x y) (phi' c' e1' e2')))";
const B_IVERB: &str = r"\S:(e>sB)>sB.
    S (\x:e. \c':kB. \e1':g. \e2':g. \phi':kB>g>g>t. c' (PRED x) (phi' c' e1' e2'))";
const B_ADJ: &str = r"\P:e>sB. \x:e. \c:kB. \e1:g. \e2:g. \phi:kB>g>g>t. P x c e1 e2 phi & PRED x";
const B_DET_A: &str = r"\P:e>sB. \Q:e>sB. \c:kB. \e1:g. \e2:g. \phi:kB>g>g>t.
    Ex x. (\phi':kB>g>g>t. P x c e1 e2 phi' & Q x c e1 e2 phi')
          (\c':kB. \e1':g. \e2':g. phi c e1' (x::e2'))";
const B_PRON: &str = r"\P:e>sB. \c:kB. \e1:g. \e2:g. \phi:kB>g>g>t. P (sel (e1 ++ e2)) c e1 e2 phi";
const B_IS: &str = r"\A:(e>sB)>e>sB. \S:(e>sB)>sB.
    S (\x:e. \c':kB. \e1':g. \e2':g. \phi':kB>g>g>t.
        c' (A (\y:e. \c'':kB. \e1'':g. \e2'':g. \phi'':kB>g>g>t. top) x c' e1' e2' phi')
           (phi' c' e1' e2'))";
/// The connective handed to the negated VP is the dual of `c`,
/// `\a b. ~ (c (~ a) (~ b))`; the continuation sees the outer `e2`.
const B_DOESNT: &str = r"\V:((e>sB)>sB)>sB. \S:(e>sB)>sB. \c:kB. \e1:g. \e2:g. \phi:kB>g>g>t.
    ~ (V S (\a:t. \b:t. ~ (c (~ a) (~ b))) e1 e2
           (\c':kB. \e1':g. \e2':g. ~ (phi c' e1' e2)))";
/// Rejected form: the whole continuation is negated along with the VP.
const B_DOESNT_REJECTED: &str = r"\V:((e>sB)>sB)>sB. \S:(e>sB)>sB. \c:kB. \e1:g. \e2:g. \phi:kB>g>g>t.
    ~ (V S c e1 e2 (\c':kB. \e1':g. \e2':g. phi c' e1' e2'))";

// Profile C: environment combinator c, a unit's own referents in e1.

const C_PNOUN: &str = r"\P:e>sC. \c:kC. \e1:g. \e2:g. \phi:kC>g>g>t. P NAME c (NAME::e1) e2 phi";
const C_NOUN: &str = r"\x:e. \c:kC. \e1:g. \e2:g. \phi:kC>g>g>t. PRED x & phi c e1 e2";
const C_TVERB: &str = r"\O:(e>sC)>sC. \S:(e>sC)>sC.
    S (\x:e. O (\y:e. \c:kC. \e1:g. \e2:g. \phi:kC>g>g>t. PRED x y & phi c e1 e2))";
const C_IVERB: &str = r"\S:(e>sC)>sC. S (\x:e. \c:kC. \e1:g. \e2:g. \phi:kC>g>g>t. PRED x & phi c e1 e2)";
const C_ADJ: &str = r"\P:e>sC. \x:e. \c:kC. \e1:g. \e2:g. \phi:kC>g>g>t. P x c e1 e2 phi & PRED x";
const C_DET_A: &str = r"\P:e>sC. \Q:e>sC. \c:kC. \e1:g. \e2:g. \phi:kC>g>g>t.
    Ex x. P x c e1 e2 (\c':kC. \e1':g. \e2':g. Q x c' (x::e1') e2' phi)";
const C_PRON: &str = r"\P:e>sC. \c:kC. \e1:g. \e2:g. \phi:kC>g>g>t. P (sel (e1 ++ e2)) c e1 e2 phi";
const C_IS: &str = r"\A:(e>sC)>e>sC. \S:(e>sC)>sC.
    S (\x:e. \c:kC. \e1:g. \e2:g. \phi:kC>g>g>t.
        A (\y:e. \c':kC. \e1':g. \e2':g. \phi':kC>g>g>t. top) x c e1 e2 phi & phi c e1 e2)";

/// Template text for a content-word category.
fn template(category: Category, profile: Profile) -> Option<&'static str> {
    use Category::*;
    use Profile::*;
    Some(match (category, profile) {
        (ProperNoun, A) => A_PNOUN,
        (ProperNoun, B) => B_PNOUN,
        (ProperNoun, C) => C_PNOUN,
        (CommonNoun, A) => A_NOUN,
        (CommonNoun, B) => B_NOUN,
        (CommonNoun, C) => C_NOUN,
        (TransitiveVerb, A) => A_TVERB,
        (TransitiveVerb, B) => B_TVERB,
        (TransitiveVerb, C) => C_TVERB,
        (IntransitiveVerb, A) => A_IVERB,
        (IntransitiveVerb, B) => B_IVERB,
        (IntransitiveVerb, C) => C_IVERB,
        (Adjective, A) => A_ADJ,
        (Adjective, B) => B_ADJ,
        (Adjective, C) => C_ADJ,
        (Pronoun, A) => A_PRON,
        (Pronoun, B) => B_PRON,
        (Pronoun, C) => C_PRON,
        _ => return None,
    })
}

/// Fixed function words of a profile: (word, category, text).
fn function_words(profile: Profile) -> Vec<(&'static str, Category, &'static str)> {
    match profile {
        Profile::A => vec![
            ("a", Category::Determiner, A_DET_A),
            ("is", Category::Copula, A_IS),
            ("doesnt", Category::NegationAux, A_DOESNT),
        ],
        Profile::B => vec![
            ("a", Category::Determiner, B_DET_A),
            ("is", Category::Copula, B_IS),
            ("doesnt", Category::NegationAux, B_DOESNT),
        ],
        Profile::C => vec![("a", Category::Determiner, C_DET_A), ("is", Category::Copula, C_IS)],
    }
}

/// Content words shipped with each profile: (word, category, constant).
fn content_words(profile: Profile) -> Vec<(&'static str, Category, &'static str)> {
    use Category::*;
    match profile {
        Profile::A => vec![
            ("john", ProperNoun, "j"),
            ("mary", ProperNoun, "m"),
            ("woman", CommonNoun, "woman"),
            ("car", CommonNoun, "car"),
            ("love", TransitiveVerb, "love"),
            ("own", TransitiveVerb, "own"),
            ("red", Adjective, "red"),
            ("it", Pronoun, "it"),
        ],
        // Exactly the entries of the negation calculus: john, own, car,
        // it, red, with a, is and doesnt as function words.
        Profile::B => vec![
            ("john", ProperNoun, "j"),
            ("car", CommonNoun, "car"),
            ("own", TransitiveVerb, "own"),
            ("red", Adjective, "red"),
            ("it", Pronoun, "it"),
        ],
        Profile::C => vec![
            ("john", ProperNoun, "j"),
            ("mary", ProperNoun, "m"),
            ("car", CommonNoun, "car"),
            ("dog", CommonNoun, "dog"),
            ("woman", CommonNoun, "woman"),
            ("own", TransitiveVerb, "own"),
            ("love", TransitiveVerb, "love"),
            ("red", Adjective, "red"),
            ("it", Pronoun, "it"),
        ],
    }
}

fn placeholder_sig() -> Signature {
    Signature::new()
        .entity(NAME)
        .predicate(PRED, 0)
        .predicate(format!("{PRED}1"), 1)
        .predicate(format!("{PRED}2"), 2)
}

/// Parses a template whose placeholder `PRED` has the given arity.
fn instantiate(text: &str, category: Category, constant: &str) -> Result<Term, LexiconError> {
    let arity = match category {
        Category::TransitiveVerb => 2,
        _ => 1,
    };
    let text = text.replace(PRED, &format!("{PRED}{arity}"));
    let term = parse_term(&text, &placeholder_sig())
        .map_err(|source| LexiconError::Template { category, source })?;
    let pred_ty = SemType::func(vec![SemType::E; arity], SemType::T);
    let term = replace_const(&term, &format!("{PRED}{arity}"), &Term::constant(constant, pred_ty));
    Ok(replace_const(&term, NAME, &Term::constant(constant, SemType::E)))
}

/// Replaces every occurrence of constant `name` by the closed term `with`.
pub fn replace_const(term: &Term, name: &str, with: &Term) -> Term {
    match term {
        Term::Const(n, _) if n == name => with.clone(),
        Term::Var(_) | Term::Const(..) => term.clone(),
        Term::Lam(ty, b) => Term::lam(ty.clone(), replace_const(b, name, with)),
        Term::App(f, a) => Term::app(replace_const(f, name, with), replace_const(a, name, with)),
    }
}

fn check_word(word: &str) -> Result<(), LexiconError> {
    let mut chars = word.chars();
    let ok = chars.next().is_some_and(|c| c.is_ascii_lowercase())
        && chars.all(|c| c.is_ascii_lowercase() || c.is_ascii_digit() || c == '_')
        && !["nil", "sel", "top", "bot"].contains(&word);
    if ok {
        Ok(())
    } else {
        Err(LexiconError::InvalidWord(word.to_string()))
    }
}

/// Builds an entry for a content word from its category's template. The
/// word doubles as its predicate (or referent) constant.
pub fn make_entry(category: Category, word: &str, profile: Profile) -> Result<LexEntry, LexiconError> {
    check_word(word)?;
    make_entry_with_constant(category, word, word, profile)
}

fn make_entry_with_constant(
    category: Category,
    word: &str,
    constant: &str,
    profile: Profile,
) -> Result<LexEntry, LexiconError> {
    let text = template(category, profile).ok_or(LexiconError::UnsupportedCategory { category, profile })?;
    let entry = LexEntry {
        word: word.to_string(),
        category,
        profile,
        term: instantiate(text, category, constant)?,
    };
    entry.validate()?;
    Ok(entry)
}

/// The negation entry of a profile. `rejected` selects the variant that
/// keeps the rest of the discourse under the negation. Profile C has no
/// negation.
pub fn negation_variant(profile: Profile, rejected: bool) -> Result<Term, LexiconError> {
    let text = match (profile, rejected) {
        (Profile::A, false) => A_DOESNT,
        (Profile::A, true) => A_DOESNT_REJECTED,
        (Profile::B, false) => B_DOESNT,
        (Profile::B, true) => B_DOESNT_REJECTED,
        _ => {
            return Err(LexiconError::UnsupportedCategory {
                category: Category::NegationAux,
                profile,
            })
        }
    };
    instantiate(text, Category::NegationAux, "")
}

/// The shipped entry for `word` in `profile`.
pub fn entry(word: &str, profile: Profile) -> Result<Term, LexiconError> {
    Ok(Lexicon::standard(profile).lookup(word)?.term.clone())
}

/// Words of one profile. Immutable once built; extensions produce a new
/// store.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lexicon {
    profile: Profile,
    entries: BTreeMap<String, LexEntry>,
}

impl Lexicon {
    pub fn empty(profile: Profile) -> Lexicon {
        Lexicon {
            profile,
            entries: BTreeMap::new(),
        }
    }

    pub fn standard(profile: Profile) -> Lexicon {
        let mut lex = Lexicon::empty(profile);
        for (word, category, constant) in content_words(profile) {
            let e = make_entry_with_constant(category, word, constant, profile)
                .expect("shipped content entries are well-typed");
            lex.entries.insert(word.to_string(), e);
        }
        for (word, category, text) in function_words(profile) {
            let e = LexEntry {
                word: word.to_string(),
                category,
                profile,
                term: instantiate(text, category, "").expect("shipped templates parse"),
            };
            e.validate().expect("shipped function words are well-typed");
            lex.entries.insert(word.to_string(), e);
        }
        lex
    }

    /// Same store with the negation entry swapped for the rejected variant.
    pub fn with_rejected_negation(&self) -> Result<Lexicon, LexiconError> {
        let term = negation_variant(self.profile, true)?;
        Ok(self.with_entry(LexEntry {
            word: "doesnt".into(),
            category: Category::NegationAux,
            profile: self.profile,
            term,
        }))
    }

    pub fn profile(&self) -> Profile {
        self.profile
    }

    pub fn with_entry(&self, entry: LexEntry) -> Lexicon {
        let mut out = self.clone();
        out.entries.insert(entry.word.clone(), entry);
        out
    }

    /// Adds entries from an extension file: one `category word` per line,
    /// `#` comments and blank lines ignored.
    pub fn extended(&self, text: &str) -> Result<Lexicon, LexiconError> {
        let mut out = self.clone();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let fail = |message: String| LexiconError::Extension { line: idx + 1, message };
            let parts: Vec<&str> = line.split_whitespace().collect();
            let [kw, word] = parts.as_slice() else {
                return Err(fail(format!("expected `category word`, found `{line}`")));
            };
            let category =
                Category::from_keyword(kw).ok_or_else(|| fail(format!("unknown category `{kw}`")))?;
            let entry = make_entry(category, word, self.profile).map_err(|e| fail(e.to_string()))?;
            out.entries.insert(entry.word.clone(), entry);
        }
        Ok(out)
    }

    pub fn get(&self, word: &str) -> Option<&LexEntry> {
        self.entries.get(word)
    }

    pub fn lookup(&self, word: &str) -> Result<&LexEntry, LexiconError> {
        self.get(word).ok_or_else(|| LexiconError::UnknownWord {
            word: word.to_string(),
            profile: self.profile,
        })
    }

    /// Like `lookup`, but an unknown verb form ending in `s` falls back to
    /// its stem (`owns` -> `own`).
    pub fn lookup_inflected(&self, word: &str) -> Result<&LexEntry, LexiconError> {
        if let Some(e) = self.get(word) {
            return Ok(e);
        }
        word.strip_suffix('s')
            .and_then(|stem| self.get(stem))
            .filter(|e| matches!(e.category, Category::TransitiveVerb | Category::IntransitiveVerb))
            .ok_or_else(|| LexiconError::UnknownWord {
                word: word.to_string(),
                profile: self.profile,
            })
    }

    pub fn entries(&self) -> impl Iterator<Item = &LexEntry> {
        self.entries.values()
    }

    /// Every non-builtin constant used by the entries.
    pub fn signature(&self) -> Signature {
        let mut sig = Signature::new();
        for e in self.entries.values() {
            for (name, ty) in e.term.constants() {
                sig.declare(name, ty);
            }
        }
        sig
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lambda::{normalize, parse_term, pretty};

    fn b_sig() -> Signature {
        Signature::new()
            .predicate("car", 1)
            .predicate("dog", 1)
            .predicate("own", 2)
            .predicate("sees", 2)
            .entity("j")
    }

    #[test]
    fn car_entry_matches_table() {
        let expected = parse_term(
            r"\x:e. \c:kB. \e1:g. \e2:g. \phi:kB>g>g>t. c (car x) (phi c e1 e2)",
            &b_sig(),
        )
        .unwrap();
        assert_eq!(entry("car", Profile::B).unwrap(), expected);
    }

    #[test]
    fn john_has_np_type() {
        let t = entry("john", Profile::B).unwrap();
        assert_eq!(type_of(&t).unwrap(), Profile::B.np_type());
        assert_eq!(type_of(&t).unwrap().to_string(), "(e>sB)>sB");
    }

    #[test]
    fn pronoun_in_profile_a() {
        let expected = parse_term(r"\P:e>sA. \e:g. \phi:g>t. P (sel e) e phi", &Signature::new()).unwrap();
        assert_eq!(entry("it", Profile::A).unwrap(), expected);
    }

    #[test]
    fn profile_b_ships_the_eight_entries() {
        let words: Vec<String> = Lexicon::standard(Profile::B).entries().map(|e| e.word.clone()).collect();
        assert_eq!(words, vec!["a", "car", "doesnt", "is", "it", "john", "own", "red"]);
    }

    #[test]
    fn every_shipped_entry_typechecks() {
        for p in Profile::ALL {
            for e in Lexicon::standard(p).entries() {
                assert!(e.term.is_closed(), "{} {p}", e.word);
                e.validate().unwrap();
            }
        }
    }

    #[test]
    fn templated_noun_is_shaped_like_car() {
        let dog = make_entry(Category::CommonNoun, "dog", Profile::B).unwrap();
        let expected = parse_term(
            r"\x:e. \c:kB. \e1:g. \e2:g. \phi:kB>g>g>t. c (dog x) (phi c e1 e2)",
            &b_sig(),
        )
        .unwrap();
        assert_eq!(dog.term, expected);
        let sees = make_entry(Category::TransitiveVerb, "sees", Profile::B).unwrap();
        let own = entry("own", Profile::B).unwrap();
        assert_eq!(replace_const(&sees.term, "sees", &own_const()), own);
    }

    fn own_const() -> Term {
        Term::constant("own", SemType::func([SemType::E, SemType::E], SemType::T))
    }

    #[test]
    fn no_universal_determiner() {
        assert_eq!(
            make_entry(Category::Determiner, "every", Profile::B),
            Err(LexiconError::UnsupportedCategory {
                category: Category::Determiner,
                profile: Profile::B
            })
        );
    }

    #[test]
    fn invalid_words_are_rejected() {
        assert!(matches!(make_entry(Category::CommonNoun, "Dog", Profile::B), Err(LexiconError::InvalidWord(_))));
        assert!(matches!(make_entry(Category::CommonNoun, "nil", Profile::B), Err(LexiconError::InvalidWord(_))));
    }

    #[test]
    fn negation_passes_outer_existential_environment() {
        // The continuation argument is \c' e1' e2'. ~ (phi c' e1' e2), where
        // e2 is bound by the entry itself (four binders out), not by the
        // continuation.
        let neg = negation_variant(Profile::B, false).unwrap();
        let sig = Signature::new();
        let expected = parse_term(
            r"\V:((e>sB)>sB)>sB. \S:(e>sB)>sB. \c:kB. \e1:g. \e2:g. \phi:kB>g>g>t.
              ~ (V S (\a:t. \b:t. ~ (c (~ a) (~ b))) e1 e2 (\c':kB. \e1':g. \e2':g. ~ (phi c' e1' e2)))",
            &sig,
        )
        .unwrap();
        assert_eq!(neg, expected);
    }

    #[test]
    fn no_negation_in_profile_c() {
        assert!(negation_variant(Profile::A, true).is_ok());
        assert!(negation_variant(Profile::B, true).is_ok());
        assert!(negation_variant(Profile::C, true).is_err());
        assert!(negation_variant(Profile::C, false).is_err());
    }

    #[test]
    fn accepted_negation_with_empty_continuation() {
        let neg = negation_variant(Profile::A, false).unwrap();
        let np_ty = Profile::A.np_type();
        let sig = Signature::new()
            .with("vp", SemType::arrow(np_ty.clone(), SemType::sent_a()))
            .with("np", np_ty);
        let vp = parse_term("vp", &sig).unwrap();
        let np = parse_term("np", &sig).unwrap();
        let applied = Term::apps(neg, [vp, np, Term::nil(), parse_term(r"\e:g. top", &sig).unwrap()]);
        let nf = normalize(&applied, 1000).unwrap();
        assert_eq!(pretty(&nf), r"~ vp np nil (\x1:g. top) & top");
    }

    #[test]
    fn extension_file() {
        let lex = Lexicon::standard(Profile::B)
            .extended("# extra words\nnoun dog\ntverb sees\npnoun mary\n")
            .unwrap();
        assert_eq!(lex.lookup("dog").unwrap().category, Category::CommonNoun);
        assert_eq!(lex.lookup_inflected("sees").unwrap().word, "sees");
        assert_eq!(lex.lookup_inflected("owns").unwrap().word, "own");
        assert!(lex.lookup_inflected("cars").is_err());
        let err = Lexicon::standard(Profile::B).extended("noun\n").unwrap_err();
        assert!(matches!(err, LexiconError::Extension { line: 1, .. }));
        let err = Lexicon::standard(Profile::B).extended("\nquux dog").unwrap_err();
        assert!(matches!(err, LexiconError::Extension { line: 2, .. }));
    }

    #[test]
    fn templates_accept_fresh_names() {
        for p in Profile::ALL {
            for cat in [
                Category::ProperNoun,
                Category::CommonNoun,
                Category::TransitiveVerb,
                Category::IntransitiveVerb,
                Category::Adjective,
                Category::Pronoun,
            ] {
                for word in ["x", "c", "phi", "e1", "zebra_2"] {
                    let e = make_entry(cat, word, p).unwrap();
                    assert!(e.term.is_closed());
                }
            }
        }
    }
}
