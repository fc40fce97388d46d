//! Bundled verification suites.
//!
//! Every suite is exact and deterministic given its [`SuiteParams`]; the
//! only random suite (`identity`) draws from a seeded ChaCha stream.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value as Json};

use crate::diagram::{enumerate_leaves, Placement, Step};
use crate::error::{Error, Result};
use crate::identities::{admissible_tuples, first_level_pairs, verify_boxplus_with, BoxplusVariant, FirstLevelKind};
use crate::representation::{incomparability_witness, Embedding, ImageTuple, LeafRepresentation, Value};
use crate::rewriting::{eq_oracle_with_cap, partition_words, CongruencePairs, DEFAULT_CLASS_CAP};
use crate::staircase::{count_classes, Normalizer, StaircaseForm};
use crate::tribonacci::{tribonacci, u_sequence};
use crate::word::{all_words, words_up_to, Word};

pub const DEFAULT_SEED: u64 = 20_170_101;
/// Failures beyond this many are counted but not described.
pub const MAX_LISTED_FAILURES: usize = 50;
/// Class cap for the oracle cross-check in the identity suite.
pub const IDENTITY_ORACLE_CAP: usize = 50_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Suite {
    Counts,
    Faithfulness,
    Boxplus,
    Identity,
    Centrality,
    Incomparability,
    Schema,
}

impl Suite {
    pub const ALL: [Suite; 7] = [
        Suite::Counts,
        Suite::Faithfulness,
        Suite::Boxplus,
        Suite::Identity,
        Suite::Centrality,
        Suite::Incomparability,
        Suite::Schema,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Counts => "counts",
            Suite::Faithfulness => "faithfulness",
            Suite::Boxplus => "boxplus",
            Suite::Identity => "identity",
            Suite::Centrality => "centrality",
            Suite::Incomparability => "incomparability",
            Suite::Schema => "schema",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL.into_iter().find(|suite| suite.name() == s).ok_or_else(|| Error::UnknownSuite(s.to_string()))
    }
}

/// Optional overrides; `None` selects the suite's default.
///
/// `n` is the largest rank checked, except for `faithfulness` and
/// `incomparability` where it is the exact rank.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteParams {
    pub n: Option<usize>,
    pub max_len: Option<usize>,
    pub samples: Option<usize>,
    pub seed: u64,
    /// Corrupt one generator image before checking the embedding.
    pub inject_fault: bool,
}

impl Default for SuiteParams {
    fn default() -> Self {
        SuiteParams { n: None, max_len: None, samples: None, seed: DEFAULT_SEED, inject_fault: false }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteReport {
    pub suite: Suite,
    pub instances: u64,
    pub failure_count: u64,
    /// The first [`MAX_LISTED_FAILURES`] counterexamples.
    pub failures: Vec<String>,
    /// Searches that ran out of bound without a verdict.
    pub inconclusive: Vec<String>,
    /// Informational lines (tables, skipped cross-checks).
    pub details: Vec<String>,
    pub elapsed: Duration,
}

impl SuiteReport {
    pub fn empty(suite: Suite) -> Self {
        SuiteReport {
            suite,
            instances: 0,
            failure_count: 0,
            failures: Vec::new(),
            inconclusive: Vec::new(),
            details: Vec::new(),
            elapsed: Duration::ZERO,
        }
    }

    pub fn passed(&self) -> bool {
        self.failure_count == 0
    }

    fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.instances += 1;
        if !ok {
            self.fail(describe());
        }
    }

    fn fail(&mut self, description: String) {
        self.failure_count += 1;
        if self.failures.len() < MAX_LISTED_FAILURES {
            self.failures.push(description);
        }
    }

    /// One JSON object; elapsed time only on request so the default output
    /// is byte-stable.
    pub fn to_json(&self, with_timing: bool) -> Json {
        let mut obj = json!({
            "format": 1,
            "suite": self.suite.name(),
            "passed": self.passed(),
            "instances": self.instances,
            "failure_count": self.failure_count,
            "failures": self.failures,
            "inconclusive": self.inconclusive,
            "details": self.details,
        });
        if with_timing {
            obj["elapsed_ms"] = json!(self.elapsed.as_millis() as u64);
        }
        obj
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for line in &self.details {
            writeln!(f, "{line}")?;
        }
        for line in &self.failures {
            writeln!(f, "FAIL {line}")?;
        }
        if self.failure_count > self.failures.len() as u64 {
            writeln!(f, "... {} more failures", self.failure_count - self.failures.len() as u64)?;
        }
        for line in &self.inconclusive {
            writeln!(f, "INCONCLUSIVE {line}")?;
        }
        write!(
            f,
            "{}: {} ({} instances, {} failures, {} inconclusive)",
            self.suite,
            if self.passed() { "pass" } else { "FAIL" },
            self.instances,
            self.failure_count,
            self.inconclusive.len()
        )
    }
}

pub fn run_suite_named(name: &str, params: &SuiteParams) -> Result<SuiteReport> {
    run_suite(name.parse()?, params)
}

pub fn run_suite(suite: Suite, params: &SuiteParams) -> Result<SuiteReport> {
    let start = Instant::now();
    let mut report = SuiteReport::empty(suite);
    match suite {
        Suite::Counts => counts(params, &mut report)?,
        Suite::Faithfulness => faithfulness(params, &mut report)?,
        Suite::Boxplus => boxplus(params, &mut report)?,
        Suite::Identity => identity(params, &mut report)?,
        Suite::Centrality => centrality(params, &mut report)?,
        Suite::Incomparability => incomparability(params, &mut report)?,
        Suite::Schema => schema(params, &mut report)?,
    }
    report.elapsed = start.elapsed();
    Ok(report)
}

fn bound(name: &str, value: usize, lo: usize, hi: usize) -> Result<usize> {
    if (lo..=hi).contains(&value) {
        Ok(value)
    } else {
        Err(Error::BoundsExceeded(format!("{name}={value} outside {lo}..={hi}")))
    }
}

fn word_count(n: usize, max_len: usize) -> u64 {
    (0..=max_len as u32).map(|l| (n as u64).saturating_pow(l)).fold(0u64, u64::saturating_add)
}

fn counts(params: &SuiteParams, report: &mut SuiteReport) -> Result<()> {
    let max_n = bound("n", params.n.unwrap_or(12), 3, 20)?;
    report.details.push(format!("{:>3} {:>8} {:>8} {:>8}", "n", "leaves", "T_n", "U_n"));
    for n in 3..=max_n {
        let leaves = enumerate_leaves(n)?.len() as u128;
        let (t, u) = (tribonacci(n), u_sequence(n));
        report.details.push(format!("{n:>3} {leaves:>8} {t:>8} {u:>8}"));
        report.check(leaves == t && u == t, || format!("n={n}: {leaves} leaves, T_n={t}, U_n={u}"));
    }
    Ok(())
}

/// Checks that every congruence class of words of length `1..=max_len`
/// holds exactly one staircase word and that the classes number
/// `count_classes(n, len)`. Returns the number of classes examined.
pub fn staircase_uniqueness(n: usize, max_len: usize, report: &mut SuiteReport) -> Result<u64> {
    let none = CongruencePairs::none(n);
    let mut examined = 0;
    for len in 0..=max_len {
        let words: Vec<Vec<u8>> = all_words(n, len).collect();
        let (class_of, classes) = partition_words(n, len, &none, DEFAULT_CLASS_CAP)?;
        let mut members = vec![0usize; classes];
        for (w, &c) in words.iter().zip(&class_of) {
            if StaircaseForm::match_pattern(n, w).is_some() {
                members[c] += 1;
            }
        }
        for (c, &count) in members.iter().enumerate() {
            report.check(count == 1, || {
                let rep = &words[class_of.iter().position(|&x| x == c).unwrap()];
                format!("n={n}: class of {} has {count} staircase members", Word::from_raw(n, rep.clone()))
            });
        }
        let expected = count_classes(n, len);
        report.check(classes as u128 == expected, || {
            format!("n={n} len={len}: {classes} classes, staircase count {expected}")
        });
        examined += classes as u64;
    }
    Ok(examined)
}

/// `(length, class id)` as produced by [`partition_words`].
type OracleClass = (usize, usize);
type ImageKey = Vec<ImageTuple>;

/// Compares the oracle partition of all words of length `<= max_len` with
/// the grouping by embedding images; each disagreement is one failure.
/// Counts one instance per unordered pair of words.
pub fn faithfulness_check(embedding: &Embedding, max_len: usize, report: &mut SuiteReport) -> Result<()> {
    let n = embedding.rank();
    let none = CongruencePairs::none(n);
    // each side remembers the other side's value and a representative word
    let mut key_of_class: HashMap<OracleClass, (ImageKey, Vec<u8>)> = HashMap::new();
    let mut class_of_key: HashMap<ImageKey, (OracleClass, Vec<u8>)> = HashMap::new();
    let mut total = 0u64;
    for len in 0..=max_len {
        let (class_of, _) = partition_words(n, len, &none, DEFAULT_CLASS_CAP)?;
        for (w, &c) in all_words(n, len).zip(&class_of) {
            total += 1;
            let key = embedding.key_raw(&w);
            let class = (len, c);
            match key_of_class.get(&class) {
                Some((k, rep)) if *k != key => report.fail(format!(
                    "n={n}: {} = {} in the monoid but the embedding separates them",
                    Word::from_raw(n, rep.clone()),
                    Word::from_raw(n, w.clone())
                )),
                Some(_) => {}
                None => {
                    key_of_class.insert(class, (key.clone(), w.clone()));
                }
            }
            match class_of_key.get(&key) {
                Some((cl, rep)) if *cl != class => report.fail(format!(
                    "n={n}: {} != {} in the monoid but the embedding identifies them",
                    Word::from_raw(n, rep.clone()),
                    Word::from_raw(n, w.clone())
                )),
                Some(_) => {}
                None => {
                    class_of_key.insert(key, (class, w));
                }
            }
        }
    }
    report.instances += total * total.saturating_sub(1) / 2;
    Ok(())
}

/// The first leaf and generator whose p/q swap breaks a defining relation,
/// applied to `embedding`.
pub fn corrupt_embedding(embedding: &Embedding) -> Option<(Embedding, String)> {
    let reps = embedding.representations();
    for (idx, r) in reps.iter().enumerate() {
        for g in 1..=r.rank() {
            let bad = r.with_swapped_generator(g);
            if !bad.respects_relations() {
                let mut corrupted = reps.to_vec();
                corrupted[idx] = bad;
                let what = format!("swapped p/q in the image of a{g} under leaf \"{}\"", r.leaf().id());
                return Some((Embedding::from_representations(embedding.rank(), corrupted), what));
            }
        }
    }
    None
}

fn prepare_embedding(n: usize, params: &SuiteParams, report: &mut SuiteReport) -> Result<Embedding> {
    let embedding = Embedding::new(n)?;
    if !params.inject_fault {
        return Ok(embedding);
    }
    let (bad, what) = corrupt_embedding(&embedding)
        .ok_or_else(|| Error::BoundsExceeded(format!("no corruptible generator at rank {n}")))?;
    report.details.push(format!("fault injected at n={n}: {what}"));
    Ok(bad)
}

fn faithfulness(params: &SuiteParams, report: &mut SuiteReport) -> Result<()> {
    let cases: Vec<(usize, usize)> = match (params.n, params.max_len) {
        (None, None) => vec![(3, 5), (4, 4)],
        (n, l) => vec![(n.unwrap_or(3), l.unwrap_or(4))],
    };
    for (n, max_len) in cases {
        bound("n", n, 3, 8)?;
        bound("max_len", max_len, 0, 12)?;
        if word_count(n, max_len) > 50_000 {
            return Err(Error::BoundsExceeded(format!("n={n} max_len={max_len}: more than 50000 words")));
        }
        let classes = staircase_uniqueness(n, max_len, report)?;
        let embedding = prepare_embedding(n, params, report)?;
        faithfulness_check(&embedding, max_len, report)?;
        report.details.push(format!(
            "n={n} max_len={max_len}: {} words, {classes} classes",
            word_count(n, max_len)
        ));
    }
    Ok(())
}

fn boxplus(params: &SuiteParams, report: &mut SuiteReport) -> Result<()> {
    let max_n = bound("n", params.n.unwrap_or(5), 3, 6)?;
    let max_len = bound("max_len", params.max_len.unwrap_or(3), 0, 4)?;
    for n in 3..=max_n {
        let words: Vec<Word> = words_up_to(n, max_len).map(|w| Word::from_raw(n, w)).collect();
        let mut normalizer = Normalizer::new(n);
        for variant in BoxplusVariant::ALL {
            let tuples = admissible_tuples(n, variant);
            for idx in &tuples {
                for w in &words {
                    let ok = verify_boxplus_with(&mut normalizer, variant, *idx, w)?;
                    report.check(ok, || format!("n={n} ({variant}) {idx:?} w={w}"));
                }
            }
            report.details.push(format!("n={n} ({variant}): {} index tuples x {} words", tuples.len(), words.len()));
        }
    }
    Ok(())
}

fn random_word(rng: &mut ChaCha8Rng, n: usize, max_len: usize) -> Word {
    let len = rng.gen_range(1..=max_len);
    Word::from_raw(n, (0..len).map(|_| rng.gen_range(1..=n as u8)).collect())
}

/// Both sides of `xy²x·xy·xy²x = xy²x·yx·xy²x`.
pub fn adjan_sides(x: &Word, y: &Word) -> (Word, Word) {
    let n = x.rank();
    let outer: Vec<u8> = [x.letters(), y.letters(), y.letters(), x.letters()].concat();
    let left = [&outer[..], x.letters(), y.letters(), &outer[..]].concat();
    let right = [&outer[..], y.letters(), x.letters(), &outer[..]].concat();
    (Word::from_raw(n, left), Word::from_raw(n, right))
}

fn identity(params: &SuiteParams, report: &mut SuiteReport) -> Result<()> {
    let max_n = bound("n", params.n.unwrap_or(5), 3, 8)?;
    let max_len = bound("max_len", params.max_len.unwrap_or(4), 1, 6)?;
    let samples = bound("samples", params.samples.unwrap_or(200), 1, 10_000)?;
    let mut embeddings = HashMap::new();
    for n in 3..=max_n {
        embeddings.insert(n, prepare_embedding(n, params, report)?);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let (mut cross_checked, mut skipped) = (0, 0);
    for _ in 0..samples {
        let n = rng.gen_range(3..=max_n);
        let x = random_word(&mut rng, n, max_len);
        let y = random_word(&mut rng, n, max_len);
        let (left, right) = adjan_sides(&x, &y);
        let ok = embeddings[&n].eq(&left, &right)?;
        report.check(ok, || format!("n={n} x={x} y={y}: embedding separates the two sides"));
        match eq_oracle_with_cap(&left, &right, &CongruencePairs::none(n), IDENTITY_ORACLE_CAP) {
            Ok(oracle) => {
                cross_checked += 1;
                if !oracle {
                    report.fail(format!("n={n} x={x} y={y}: oracle separates the two sides"));
                }
            }
            Err(Error::ClassCapExceeded { .. }) => skipped += 1,
            Err(e) => return Err(e),
        }
    }
    report.details.push(format!(
        "seed={} samples={samples}: oracle cross-checked {cross_checked}, skipped {skipped} (class above {IDENTITY_ORACLE_CAP})",
        params.seed
    ));
    Ok(())
}

fn centrality(params: &SuiteParams, report: &mut SuiteReport) -> Result<()> {
    let max_n = bound("n", params.n.unwrap_or(4), 3, 5)?;
    let max_len = bound("max_len", params.max_len.unwrap_or(4), 0, 5)?;
    for n in 3..=max_n {
        let words: Vec<Vec<u8>> = words_up_to(n, max_len).collect();
        let cases = (2..n).map(|s| (FirstLevelKind::Heart, s)).chain((2..=n).map(|s| (FirstLevelKind::Diamond, s)));
        for (kind, s) in cases {
            let pairs = first_level_pairs(kind, s, n)?;
            let element: Vec<u8> = match kind {
                FirstLevelKind::Heart => vec![s as u8],
                FirstLevelKind::Diamond => vec![s as u8, s as u8 - 1],
            };
            for w in &words {
                let left = Word::from_raw(n, [&element[..], w].concat());
                let right = Word::from_raw(n, [&w[..], &element[..]].concat());
                let ok = eq_oracle_with_cap(&left, &right, &pairs, DEFAULT_CLASS_CAP)?;
                report.check(ok, || format!("n={n} {kind} s={s}: {left} != {right}"));
            }
        }
    }
    Ok(())
}

fn incomparability(params: &SuiteParams, report: &mut SuiteReport) -> Result<()> {
    let n = bound("n", params.n.unwrap_or(4), 3, 6)?;
    let max_len = bound("max_len", params.max_len.unwrap_or(6), 1, 10)?;
    if (n as u64).saturating_pow(max_len as u32) > 2_000_000 {
        return Err(Error::BoundsExceeded(format!("n={n} max_len={max_len}: search space too large")));
    }
    let embedding = Embedding::new(n)?;
    let reps = embedding.representations();
    for r1 in reps {
        for r2 in reps {
            if r1.leaf() == r2.leaf() {
                continue;
            }
            let (a, b) = (r1.leaf().id(), r2.leaf().id());
            match incomparability_witness(r1, r2, max_len)? {
                Some((w, v)) => {
                    let ok = r1.image(&w)? == r1.image(&v)? && r2.image(&w)? != r2.image(&v)?;
                    report.check(ok, || format!("\"{a}\" vs \"{b}\": bad witness ({w}, {v})"));
                    report.details.push(format!("\"{a}\" vs \"{b}\": ({w}, {v})"));
                }
                None => {
                    report.instances += 1;
                    report.inconclusive.push(format!("\"{a}\" vs \"{b}\": no witness up to length {max_len}"));
                }
            }
        }
    }
    Ok(())
}

/// Shape checks for one leaf representation: `c + 2d = n`, the defining
/// relations, the arc elements and the first-level dot.
pub fn representation_shape(r: &LeafRepresentation, report: &mut SuiteReport) {
    let n = r.rank();
    let id = r.leaf().id();
    let (c, d) = r.counts();
    report.check(c + 2 * d == n && r.leaf().schema_counts() == (c, d), || {
        format!("\"{id}\": c={c} d={d} at rank {n}")
    });
    report.check(r.respects_relations(), || format!("\"{id}\": a defining relation is violated"));
    for (step, placement) in r.leaf().placements().iter().enumerate() {
        if !matches!(placement, Placement::Arc { .. }) {
            continue;
        }
        let image = r.arc_element_image(step).expect("arc step");
        let own = r.int_component_of(step);
        let shape_ok = image.values().iter().enumerate().all(|(pos, &v)| {
            if Some(pos) == own {
                v == Value::Int(1)
            } else {
                v.is_identity()
            }
        });
        report.check(shape_ok, || format!("\"{id}\" {placement}: arc element image {image}"));
        for g in 1..=n {
            let gen = r.generator_image(g);
            report.check(image.mul(gen) == gen.mul(&image), || {
                format!("\"{id}\" {placement}: arc element does not commute with a{g}")
            });
        }
    }
    if let Some(Step::InitialDot(s)) = r.leaf().steps().first() {
        let dot = r.generator_image(*s);
        for g in 1..=n {
            let gen = r.generator_image(g);
            report.check(dot.mul(gen) == gen.mul(dot), || format!("\"{id}\": a{s} does not commute with a{g}"));
        }
    }
}

fn schema(params: &SuiteParams, report: &mut SuiteReport) -> Result<()> {
    let max_n = bound("n", params.n.unwrap_or(10), 3, 14)?;
    for n in 3..=max_n {
        let embedding = Embedding::new(n)?;
        let mut total = 0u128;
        for r in embedding.representations() {
            representation_shape(r, report);
            let (c, d) = r.counts();
            total += (c + 2 * d) as u128;
        }
        let expected = n as u128 * tribonacci(n);
        report.check(total == expected, || format!("n={n}: sum of c+2d is {total}, n*T_n is {expected}"));
        report.details.push(format!("n={n}: {} leaves, sum of c+2d = {total}", embedding.representations().len()));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(n: Option<usize>, max_len: Option<usize>) -> SuiteParams {
        SuiteParams { n, max_len, ..SuiteParams::default() }
    }

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!(matches!("bogus".parse::<Suite>(), Err(Error::UnknownSuite(_))));
    }

    #[test]
    fn small_suites_pass() {
        for suite in Suite::ALL {
            let p = match suite {
                Suite::Identity => SuiteParams { n: Some(4), max_len: Some(2), samples: Some(20), ..SuiteParams::default() },
                Suite::Faithfulness | Suite::Incomparability => params(Some(3), Some(3)),
                _ => params(Some(4), Some(2)),
            };
            let report = run_suite(suite, &p).unwrap();
            assert!(report.passed(), "{report}");
            assert!(report.instances > 0, "{suite}");
        }
    }

    #[test]
    fn fault_injection_breaks_faithfulness() {
        let p = SuiteParams { inject_fault: true, ..params(Some(3), Some(3)) };
        let report = run_suite(Suite::Faithfulness, &p).unwrap();
        assert!(!report.passed());
        assert!(report.failures.len() <= MAX_LISTED_FAILURES);
    }

    #[test]
    fn bounds_are_enforced() {
        assert!(matches!(run_suite(Suite::Counts, &params(Some(40), None)), Err(Error::BoundsExceeded(_))));
        assert!(matches!(run_suite(Suite::Faithfulness, &params(Some(6), Some(7))), Err(Error::BoundsExceeded(_))));
    }

    #[test]
    fn identity_is_deterministic() {
        let p = SuiteParams { n: Some(4), max_len: Some(2), samples: Some(10), seed: 7, inject_fault: false };
        let a = run_suite(Suite::Identity, &p).unwrap();
        let b = run_suite(Suite::Identity, &p).unwrap();
        assert_eq!(a.to_json(false), b.to_json(false));
    }

    #[test]
    fn adjan_sides_shape() {
        let x = Word::parse(3, "1").unwrap();
        let y = Word::parse(3, "2").unwrap();
        let (l, r) = adjan_sides(&x, &y);
        assert_eq!(l.to_string(), "1 2 2 1 1 2 1 2 2 1");
        assert_eq!(r.to_string(), "1 2 2 1 2 1 1 2 2 1");
    }
}
