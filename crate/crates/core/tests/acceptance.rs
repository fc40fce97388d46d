//! Acceptance battery: one line per criterion, non-zero exit on any failure.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use chinese_monoid::diagram::enumerate_leaves;
use chinese_monoid::harness::{
    faithfulness_check, representation_shape, run_suite, staircase_uniqueness, Suite, SuiteParams, SuiteReport,
};
use chinese_monoid::representation::Embedding;

const LEAF_COUNTS: [usize; 10] = [3, 5, 9, 17, 31, 57, 105, 193, 355, 653];
const LEAF_COUNT_LIMIT: Duration = Duration::from_secs(5);
const UNIQUENESS_LIMIT: Duration = Duration::from_secs(30);
const FAITHFULNESS_LIMIT: Duration = Duration::from_secs(60);
const BOXPLUS_LIMIT: Duration = Duration::from_secs(60);
const INCOMPARABILITY_PAIRS_N4: u64 = 20;

type Criterion = (&'static str, Option<Duration>, Box<dyn FnOnce() -> Outcome>);

struct Outcome {
    passed: bool,
    summary: String,
}

fn timed(limit: Option<Duration>, f: impl FnOnce() -> Outcome) -> (Outcome, Duration) {
    let start = Instant::now();
    let mut out = f();
    let elapsed = start.elapsed();
    if let Some(limit) = limit {
        if elapsed > limit {
            out.passed = false;
            out.summary.push_str(&format!("; exceeded {}s", limit.as_secs()));
        }
    }
    (out, elapsed)
}

fn from_report(report: &SuiteReport) -> Outcome {
    let mut summary = format!("{} instances, {} failures", report.instances, report.failure_count);
    if let Some(first) = report.failures.first() {
        summary.push_str(&format!("; first: {first}"));
    }
    Outcome { passed: report.passed(), summary }
}

fn suite(s: Suite) -> Outcome {
    match run_suite(s, &SuiteParams::default()) {
        Ok(report) => from_report(&report),
        Err(e) => Outcome { passed: false, summary: format!("error: {e}") },
    }
}

fn leaf_counts() -> Outcome {
    let got: Vec<usize> = (3..=12).map(|n| enumerate_leaves(n).map(|l| l.len()).unwrap_or(0)).collect();
    Outcome { passed: got == LEAF_COUNTS, summary: format!("n=3..12: {got:?}") }
}

fn uniqueness() -> Outcome {
    let mut report = SuiteReport::empty(Suite::Faithfulness);
    let mut classes = 0;
    for (n, max_len) in [(3, 5), (4, 4)] {
        match staircase_uniqueness(n, max_len, &mut report) {
            Ok(c) => classes += c,
            Err(e) => return Outcome { passed: false, summary: format!("error: {e}") },
        }
    }
    let mut out = from_report(&report);
    out.summary = format!("{classes} classes; {}", out.summary);
    out
}

fn faithfulness() -> Outcome {
    let mut report = SuiteReport::empty(Suite::Faithfulness);
    for (n, max_len) in [(3, 5), (4, 4)] {
        let result = Embedding::new(n).and_then(|e| faithfulness_check(&e, max_len, &mut report));
        if let Err(e) = result {
            return Outcome { passed: false, summary: format!("error: {e}") };
        }
    }
    let mut out = from_report(&report);
    out.summary = format!("word pairs: {}", out.summary);
    out
}

fn arc_elements() -> Outcome {
    let mut report = SuiteReport::empty(Suite::Schema);
    for n in 3..=6 {
        match Embedding::new(n) {
            Ok(e) => e.representations().iter().for_each(|r| representation_shape(r, &mut report)),
            Err(e) => return Outcome { passed: false, summary: format!("error: {e}") },
        }
    }
    from_report(&report)
}

fn incomparability() -> Outcome {
    match run_suite(Suite::Incomparability, &SuiteParams::default()) {
        Ok(report) => {
            let mut out = from_report(&report);
            let pairs = report.instances;
            out.passed &= report.inconclusive.is_empty() && pairs == INCOMPARABILITY_PAIRS_N4;
            out.summary = format!("{pairs} ordered pairs, {} inconclusive; {}", report.inconclusive.len(), out.summary);
            out
        }
        Err(e) => Outcome { passed: false, summary: format!("error: {e}") },
    }
}

fn main() -> ExitCode {
    let criteria: Vec<Criterion> = vec![
        ("leaf counts equal Tribonacci", Some(LEAF_COUNT_LIMIT), Box::new(leaf_counts)),
        ("canonical form uniqueness", Some(UNIQUENESS_LIMIT), Box::new(uniqueness)),
        ("faithfulness of the embedding", Some(FAITHFULNESS_LIMIT), Box::new(faithfulness)),
        ("boxplus identities", Some(BOXPLUS_LIMIT), Box::new(|| suite(Suite::Boxplus))),
        ("Adjan identity", None, Box::new(|| suite(Suite::Identity))),
        ("arc element image shape", None, Box::new(arc_elements)),
        ("schema arithmetic", None, Box::new(|| suite(Suite::Schema))),
        ("incomparability witnesses", None, Box::new(incomparability)),
        ("first-level centrality", None, Box::new(|| suite(Suite::Centrality))),
    ];
    let mut all = true;
    for (number, (name, limit, check)) in criteria.into_iter().enumerate() {
        let (out, elapsed) = timed(limit, check);
        all &= out.passed;
        println!(
            "criterion {} {}: {} ({}) [{:.2}s]",
            number + 1,
            name,
            if out.passed { "PASS" } else { "FAIL" },
            out.summary,
            elapsed.as_secs_f64()
        );
    }
    if all {
        println!("acceptance: all criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: FAILED");
        ExitCode::FAILURE
    }
}
