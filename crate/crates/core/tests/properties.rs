mod common;

use contsem_core::discourse::{interpret, parse_document, InitialArgs};
use contsem_core::lambda::{
    coord_term, normalize, normalize_with, parse_term, pretty, step, sub_term, trace, type_of, Strategy, Term,
    DEFAULT_MAX_STEPS,
};
use contsem_core::lexicon::{Lexicon, Profile};
use contsem_core::logic::{logically_equiv, parse_formula, simplify, Formula};
use contsem_core::resolver::report;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn normalization_terminates_and_preserves_types(seed in any::<u64>()) {
        let t = common::random_small_term(&mut rng(seed), 30);
        let ty = type_of(&t).unwrap();
        let nf = normalize(&t, DEFAULT_MAX_STEPS).unwrap();
        prop_assert!(nf.is_normal());
        prop_assert_eq!(type_of(&nf).unwrap(), ty.clone());
        if let Some((next, _)) = step(&t) {
            prop_assert_eq!(type_of(&next).unwrap(), ty);
        }
    }

    #[test]
    fn strategies_agree(seed in any::<u64>()) {
        let t = common::random_small_term(&mut rng(seed), 30);
        let normal = normalize_with(&t, Strategy::NormalOrder, DEFAULT_MAX_STEPS).unwrap();
        let applicative = normalize_with(&t, Strategy::ApplicativeOrder, DEFAULT_MAX_STEPS).unwrap();
        prop_assert_eq!(normal, applicative);
    }

    #[test]
    fn trace_ends_at_the_normal_form(seed in any::<u64>()) {
        let t = common::random_small_term(&mut rng(seed), 30);
        let steps = trace(&t, DEFAULT_MAX_STEPS).unwrap();
        let last = steps.last().map_or(t.clone(), |s| s.result.clone());
        prop_assert_eq!(last, normalize(&t, DEFAULT_MAX_STEPS).unwrap());
        for (i, s) in steps.iter().enumerate() {
            prop_assert_eq!(s.index, i + 1);
        }
    }

    #[test]
    fn pretty_printing_round_trips(seed in any::<u64>()) {
        let t = common::random_small_term(&mut rng(seed), 30);
        let text = pretty(&t);
        prop_assert_eq!(parse_term(&text, &common::term_signature()).unwrap(), t, "{}", text);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn simplify_preserves_meaning(seed in any::<u64>()) {
        let f = common::random_formula(&mut rng(seed), 4);
        let s = simplify(&f);
        prop_assert!(logically_equiv(&f, &s, 3).unwrap(), "{} vs {}", f, s);
    }

    #[test]
    fn simplify_is_idempotent(seed in any::<u64>()) {
        let f = common::random_formula(&mut rng(seed), 4);
        let s = simplify(&f);
        prop_assert_eq!(simplify(&s), s);
    }

    #[test]
    fn formula_text_round_trips(seed in any::<u64>()) {
        let f = common::random_formula(&mut rng(seed), 4);
        let back = parse_formula(&f.to_string()).unwrap();
        prop_assert!(back.alpha_eq(&f), "{} vs {}", f, back);
    }

    #[test]
    fn simplified_formulas_have_no_stray_units(seed in any::<u64>()) {
        let s = simplify(&common::random_formula(&mut rng(seed), 4));
        fn inner_units(f: &Formula, root: bool) -> bool {
            match f {
                Formula::Top | Formula::Bot => !root,
                Formula::Atom(..) => false,
                Formula::Not(a) | Formula::Exists(_, a) => inner_units(a, false),
                Formula::And(a, b) | Formula::Or(a, b) => inner_units(a, false) || inner_units(b, false),
            }
        }
        prop_assert!(!inner_units(&s, true), "{}", s);
    }

    #[test]
    fn coord_and_sub_laws(seed in any::<u64>()) {
        let mut r = rng(seed);
        let e1 = common::random_env_term(&mut r, 3);
        let e2 = common::random_env_term(&mut r, 3);
        let coord = normalize(&Term::apps(coord_term(), [e1.clone(), e2.clone()]), 1000).unwrap();
        prop_assert_eq!(coord, e2.clone());
        let sub = normalize(&Term::apps(sub_term(), [e1.clone(), e2.clone()]), 1000).unwrap();
        prop_assert_eq!(sub, Term::union(e1, e2));
    }
}

#[test]
fn fusion_truth_table() {
    for c in [|a: bool, b: bool| a && b, |a: bool, b: bool| a || b] {
        for row in 0..8u8 {
            let (phi, psi, k) = (row & 1 != 0, row & 2 != 0, row & 4 != 0);
            assert_eq!(c(phi, k) && c(psi, k), c(phi && psi, k));
        }
    }
}

const NOUNS: [&str; 3] = ["car", "dog", "bike"];
const VERBS: [&str; 2] = ["own", "see"];
const NAMES: [(&str, &str); 2] = [("john", "j"), ("mary", "mary")];

fn extended(profile: Profile) -> Lexicon {
    Lexicon::standard(profile)
        .extended("noun dog\nnoun bike\ntverb see\npnoun mary\n")
        .unwrap()
}

fn last_candidates(src: &str, lexicon: &Lexicon) -> Vec<String> {
    let tree = parse_document(src).unwrap().tree(lexicon).unwrap();
    let init = InitialArgs::default_for(lexicon.profile());
    let out = interpret(&tree, lexicon, &init, DEFAULT_MAX_STEPS).unwrap();
    let reports = report(&out.simplified);
    reports.last().unwrap().candidates.iter().map(ToString::to_string).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// Proper nouns survive negation; indefinites under it do not.
    #[test]
    fn negation_blocks_only_the_indefinite(
        name in 0..2usize, verb in 0..2usize, noun in 0..3usize, negated in any::<bool>(),
    ) {
        let lex = extended(Profile::B);
        let (pn, constant) = NAMES[name];
        let verb = if negated { VERBS[verb].to_string() } else { format!("{}s", VERBS[verb]) };
        let neg = if negated { "doesnt " } else { "" };
        let src = format!(
            "profile B\nsentence s1 = {pn} {neg}{verb} (a {})\nsentence s2 = it is red\ndiscourse = s1 . s2\n",
            NOUNS[noun]
        );
        let cands = last_candidates(&src, &lex);
        prop_assert!(cands.contains(&constant.to_string()));
        prop_assert_eq!(cands.contains(&"y".to_string()), !negated, "{:?}", cands);
    }

    /// A third unit sees the first unit's referents only through
    /// subordination.
    #[test]
    fn right_frontier_accessibility(
        n1 in 0..2usize, n2 in 0..2usize, k1 in 0..3usize, k2 in 0..3usize,
        outer_sub in any::<bool>(), inner_sub in any::<bool>(),
    ) {
        let lex = extended(Profile::C);
        let op = |sub: bool| if sub { ".s" } else { ".c" };
        let src = format!(
            "profile C\nsentence s1 = {} owns (a {})\nsentence s2 = {} sees (a {})\nsentence s3 = it is red\n\
             discourse = s1 {} (s2 {} s3)\n",
            NAMES[n1].0, NOUNS[k1], NAMES[n2].0, NOUNS[k2], op(outer_sub), op(inner_sub)
        );
        let cands = last_candidates(&src, &lex);
        // s1's indefinite is reified as `y`, s2's as `y1`.
        prop_assert!(cands.contains(&"y1".to_string()));
        prop_assert!(cands.contains(&NAMES[n2].1.to_string()));
        prop_assert_eq!(cands.contains(&"y".to_string()), outer_sub, "{:?}", cands);
        if n1 != n2 {
            prop_assert_eq!(cands.contains(&NAMES[n1].1.to_string()), outer_sub);
        }
    }
}
