//! Fixtures shared by the benchmarks under `benches/`.

use contsem_core::discourse::parse_document;
use contsem_core::{DiscourseTree, Lexicon};

pub const NEGATED_B: &str = "profile B
sentence s1 = John doesn't own (a car)
sentence s2 = it is red
discourse = s1 . s2
";

pub const LOVES_A: &str = "profile A
sentence s1 = John loves (a woman)
sentence s2 = Mary owns (a car)
sentence s3 = it is red
discourse = s1 . s2 . s3
";

pub const RFC_C: &str = "profile C
sentence s1 = John owns (a car)
sentence s2 = Mary owns (a dog)
sentence s3 = it is red
discourse = s1 .s (s2 .c s3)
";

pub const SYMBOLIC_C: &str = "profile C
symbolic
discourse = s1 .s (s2 .c (s3 .s s4))
";

/// Named discourses used by the pipeline benchmarks.
pub const DISCOURSES: [(&str, &str); 3] = [("negated_b", NEGATED_B), ("loves_a", LOVES_A), ("rfc_c", RFC_C)];

/// Parses `src` and builds its tree against the standard lexicon of its
/// profile. Panics on bad input; fixtures are fixed.
pub fn load(src: &str) -> (DiscourseTree, Lexicon) {
    let doc = parse_document(src).expect("fixture parses");
    let lexicon = Lexicon::standard(doc.profile.expect("fixture names a profile"));
    let tree = doc.tree(&lexicon).expect("fixture builds");
    (tree, lexicon)
}
