//! Model-checking oracle for logical equivalence over small finite domains.
//!
//! Predicates are interpreted by arbitrary truth tables, constants (and free
//! variables) by arbitrary domain elements. A `sel` term is interpreted by
//! an uninterpreted function per distinct evaluated environment, applied to
//! the values of the environment's variable members. Syntactically distinct
//! environments get independent functions, so the oracle only ever admits
//! more models than the intended semantics: it may miss an equivalence,
//! never invent one.

use std::cell::Cell;
use std::collections::{BTreeMap, BTreeSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use super::{EntityTerm, Formula};
use crate::resolver::eval_env;

/// Interpretation spaces up to this size are enumerated exhaustively.
pub const EXHAUSTIVE_LIMIT: u128 = 1 << 20;
pub const DEFAULT_SAMPLES: usize = 10_000;
pub const MAX_DOMAIN: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EquivError {
    #[error("domain size must be in 1..={MAX_DOMAIN}, got {0}")]
    InvalidDomain(usize),
    #[error("predicate `{0}` is used with arities {1} and {2}")]
    SignatureMismatch(String, usize, usize),
    #[error("exhaustive check needs {0} interpretations (limit {EXHAUSTIVE_LIMIT})")]
    SignatureTooLarge(u128),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EquivMode {
    /// Exhaustive when the space fits the limit, otherwise sampled.
    Auto,
    Exhaustive,
    Sampled { samples: usize, seed: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EquivOptions {
    pub domain_size: usize,
    pub mode: EquivMode,
}

impl EquivOptions {
    pub fn new(domain_size: usize) -> EquivOptions {
        EquivOptions {
            domain_size,
            mode: EquivMode::Auto,
        }
    }
}

/// True iff no interpretation over `domain_size` elements tells the two
/// formulas apart.
pub fn logically_equiv(f1: &Formula, f2: &Formula, domain_size: usize) -> Result<bool, EquivError> {
    logically_equiv_with(f1, f2, &EquivOptions::new(domain_size))
}

pub fn logically_equiv_with(f1: &Formula, f2: &Formula, opts: &EquivOptions) -> Result<bool, EquivError> {
    let d = opts.domain_size;
    if d == 0 || d > MAX_DOMAIN {
        return Err(EquivError::InvalidDomain(d));
    }
    let sig = Sig::build(&[f1, f2])?;
    let layout = Layout::new(&sig, d);
    let c1 = compile(f1, &sig, &layout, &mut Vec::new());
    let c2 = compile(f2, &sig, &layout, &mut Vec::new());
    let space = layout.space();

    let exhaustive = match opts.mode {
        EquivMode::Exhaustive => {
            if space > EXHAUSTIVE_LIMIT {
                return Err(EquivError::SignatureTooLarge(space));
            }
            true
        }
        EquivMode::Auto => space <= EXHAUSTIVE_LIMIT,
        EquivMode::Sampled { .. } => false,
    };

    let mut stack = Vec::new();
    let mut differs = |digits: &[u8]| {
        let m = Model { d, digits, low: Cell::new(digits.len()) };
        let differ = eval(&c1, &m, &mut stack) != eval(&c2, &m, &mut stack);
        (differ, m.low.get())
    };

    let mut digits = vec![0u8; layout.radices.len()];
    if exhaustive {
        // Digits below the lowest one read cannot change either result,
        // so the walk skips straight past them.
        loop {
            let (differ, low) = differs(&digits);
            if differ {
                return Ok(false);
            }
            if low == digits.len() || !layout.increment(&mut digits, low) {
                return Ok(true);
            }
        }
    }
    let (samples, seed) = match opts.mode {
        EquivMode::Sampled { samples, seed } => (samples.max(1), seed),
        _ => (DEFAULT_SAMPLES, 0x5eed),
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        for (digit, &radix) in digits.iter_mut().zip(&layout.radices) {
            *digit = rng.gen_range(0..radix);
        }
        if differs(&digits).0 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Key of a `sel` interpretation: the evaluated environment.
type SelKey = Vec<EntityTerm>;

#[derive(Default)]
struct Sig {
    preds: BTreeMap<String, usize>,
    consts: BTreeSet<String>,
    /// Names bound somewhere in either formula.
    bound: BTreeSet<String>,
    sels: BTreeMap<SelKey, Vec<String>>,
}

impl Sig {
    fn build(formulas: &[&Formula]) -> Result<Sig, EquivError> {
        let mut sig = Sig::default();
        for f in formulas {
            sig.scan_bound(f);
        }
        for f in formulas {
            sig.scan_rest(f, &mut Vec::new())?;
        }
        Ok(sig)
    }

    fn scan_bound(&mut self, f: &Formula) {
        match f {
            Formula::Exists(v, b) => {
                self.bound.insert(v.clone());
                self.scan_bound(b);
            }
            Formula::Not(a) => self.scan_bound(a),
            Formula::And(a, b) | Formula::Or(a, b) => {
                self.scan_bound(a);
                self.scan_bound(b);
            }
            Formula::Top | Formula::Bot | Formula::Atom(..) => {}
        }
    }

    fn scan_rest(&mut self, f: &Formula, scope: &mut Vec<String>) -> Result<(), EquivError> {
        match f {
            Formula::Top | Formula::Bot => Ok(()),
            Formula::Not(a) => self.scan_rest(a, scope),
            Formula::And(a, b) | Formula::Or(a, b) => {
                self.scan_rest(a, scope)?;
                self.scan_rest(b, scope)
            }
            Formula::Exists(v, b) => {
                scope.push(v.clone());
                let r = self.scan_rest(b, scope);
                scope.pop();
                r
            }
            Formula::Atom(p, args) => {
                match self.preds.get(p) {
                    Some(&k) if k != args.len() => {
                        return Err(EquivError::SignatureMismatch(p.clone(), k, args.len()))
                    }
                    _ => {
                        self.preds.insert(p.clone(), args.len());
                    }
                }
                for a in args {
                    self.scan_entity(a, scope);
                }
                Ok(())
            }
        }
    }

    fn scan_entity(&mut self, e: &EntityTerm, scope: &[String]) {
        match e {
            EntityTerm::Const(n) => {
                self.consts.insert(n.clone());
            }
            EntityTerm::Var(n) => {
                if !scope.contains(n) {
                    self.consts.insert(n.clone());
                }
            }
            EntityTerm::Sel(env, _) => {
                let key = eval_env(env);
                for member in &key {
                    self.scan_entity(member, scope);
                }
                if !self.sels.contains_key(&key) {
                    let params = self.sel_params(&key);
                    self.sels.insert(key, params);
                }
            }
        }
    }

    /// Members whose value can vary within one interpretation.
    fn sel_params(&self, key: &SelKey) -> Vec<String> {
        let mut params: Vec<String> = Vec::new();
        for member in key {
            if let Some(n) = member.name() {
                if self.bound.contains(n) && !params.iter().any(|p| p == n) {
                    params.push(n.to_string());
                }
            }
        }
        params
    }
}

/// Positions of every symbol's table inside the digit vector.
struct Layout {
    preds: BTreeMap<String, (usize, usize)>,
    consts: BTreeMap<String, usize>,
    sels: BTreeMap<SelKey, (usize, Vec<String>)>,
    radices: Vec<u8>,
}

impl Layout {
    fn new(sig: &Sig, d: usize) -> Layout {
        // Sparsely read tables take the low positions, where the walk can
        // skip them.
        let mut radices = Vec::new();
        let mut sels = BTreeMap::new();
        for (key, params) in &sig.sels {
            sels.insert(key.clone(), (radices.len(), params.clone()));
            radices.extend(std::iter::repeat_n(d as u8, d.pow(params.len() as u32)));
        }
        let mut preds = BTreeMap::new();
        for (p, &arity) in &sig.preds {
            preds.insert(p.clone(), (radices.len(), arity));
            radices.extend(std::iter::repeat_n(2u8, d.pow(arity as u32)));
        }
        // Up to a permutation of the domain, the i-th constant can be
        // taken to denote one of the first i + 1 individuals.
        let mut consts = BTreeMap::new();
        for (i, c) in sig.consts.iter().enumerate() {
            consts.insert(c.clone(), radices.len());
            radices.push(d.min(i + 1) as u8);
        }
        Layout {
            preds,
            consts,
            sels,
            radices,
        }
    }

    fn space(&self) -> u128 {
        self.radices
            .iter()
            .try_fold(1u128, |acc, &r| acc.checked_mul(r as u128))
            .unwrap_or(u128::MAX)
    }

    /// Mixed-radix increment at position `from`, zeroing the digits below
    /// it; false after the last interpretation.
    fn increment(&self, digits: &mut [u8], from: usize) -> bool {
        digits[..from].fill(0);
        for (digit, &radix) in digits.iter_mut().zip(&self.radices).skip(from) {
            *digit += 1;
            if *digit < radix {
                return true;
            }
            *digit = 0;
        }
        false
    }
}

/// Formula with names resolved to digit offsets and stack slots.
enum CForm {
    Top,
    Bot,
    Not(Box<CForm>),
    And(Box<CForm>, Box<CForm>),
    Or(Box<CForm>, Box<CForm>),
    Exists(Box<CForm>),
    /// Offset of the predicate's table.
    Atom(usize, Vec<CEnt>),
}

enum CEnt {
    /// Offset of the constant's digit.
    Const(usize),
    /// Depth from the innermost binder.
    Var(usize),
    /// Offset of the selection table, and its arguments.
    Sel(usize, Vec<CEnt>),
}

fn compile(f: &Formula, sig: &Sig, layout: &Layout, scope: &mut Vec<String>) -> CForm {
    let rec = |a: &Formula, scope: &mut Vec<String>| Box::new(compile(a, sig, layout, scope));
    match f {
        Formula::Top => CForm::Top,
        Formula::Bot => CForm::Bot,
        Formula::Not(a) => CForm::Not(rec(a, scope)),
        Formula::And(a, b) => CForm::And(rec(a, scope), rec(b, scope)),
        Formula::Or(a, b) => CForm::Or(rec(a, scope), rec(b, scope)),
        Formula::Exists(v, b) => {
            scope.push(v.clone());
            let body = rec(b, scope);
            scope.pop();
            CForm::Exists(body)
        }
        Formula::Atom(p, args) => CForm::Atom(
            layout.preds[p].0,
            args.iter().map(|a| compile_ent(a, sig, layout, scope)).collect(),
        ),
    }
}

fn compile_name(n: &str, layout: &Layout, scope: &[String]) -> CEnt {
    match scope.iter().rev().position(|s| s == n) {
        Some(depth) => CEnt::Var(depth),
        None => CEnt::Const(layout.consts[n]),
    }
}

fn compile_ent(e: &EntityTerm, sig: &Sig, layout: &Layout, scope: &[String]) -> CEnt {
    match e {
        EntityTerm::Const(n) => CEnt::Const(layout.consts[n]),
        EntityTerm::Var(n) => compile_name(n, layout, scope),
        EntityTerm::Sel(env, _) => {
            let key = eval_env(env);
            let args = sig.sels[&key].iter().map(|p| compile_name(p, layout, scope)).collect();
            CEnt::Sel(layout.sels[&key].0, args)
        }
    }
}

struct Model<'a> {
    d: usize,
    digits: &'a [u8],
    /// Lowest digit position read so far.
    low: Cell<usize>,
}

impl Model<'_> {
    fn digit(&self, i: usize) -> u8 {
        if i < self.low.get() {
            self.low.set(i);
        }
        self.digits[i]
    }

    fn value(&self, e: &CEnt, stack: &[u8]) -> u8 {
        match e {
            CEnt::Var(depth) => stack[stack.len() - 1 - depth],
            CEnt::Const(offset) => self.digit(*offset),
            CEnt::Sel(offset, args) => self.digit(offset + self.index(args, stack)),
        }
    }

    fn index(&self, args: &[CEnt], stack: &[u8]) -> usize {
        args.iter()
            .fold(0, |acc, a| acc * self.d + self.value(a, stack) as usize)
    }
}

fn eval(f: &CForm, m: &Model<'_>, stack: &mut Vec<u8>) -> bool {
    match f {
        CForm::Top => true,
        CForm::Bot => false,
        CForm::Not(a) => !eval(a, m, stack),
        CForm::And(a, b) => eval(a, m, stack) && eval(b, m, stack),
        CForm::Or(a, b) => eval(a, m, stack) || eval(b, m, stack),
        CForm::Exists(body) => (0..m.d as u8).any(|v| {
            stack.push(v);
            let r = eval(body, m, stack);
            stack.pop();
            r
        }),
        CForm::Atom(offset, args) => m.digit(offset + m.index(args, stack)) == 1,
    }
}
