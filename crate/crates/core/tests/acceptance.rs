//! One line per acceptance criterion. Runs without the libtest harness so the
//! table is always printed; the process fails on any unexpected red.

use std::time::{Duration, Instant};

use rba::suites::{self, Outcome, SuiteConfig};
use rba::Result;

struct Criterion {
    id: u32,
    title: &'static str,
    /// Wall-clock ceiling, `None` where no runtime is required.
    limit: Option<Duration>,
    run: fn(&SuiteConfig) -> Result<Outcome>,
}

const fn secs(s: u64) -> Option<Duration> {
    Some(Duration::from_secs(s))
}

const CRITERIA: [Criterion; 10] = [
    Criterion { id: 1, title: "algebra laws on fixtures, 20 mutations detected", limit: secs(5), run: suites::rba_axioms },
    Criterion { id: 2, title: "domains Boolean, projections homomorphic", limit: secs(5), run: suites::local_boolean },
    Criterion { id: 3, title: "order lemma on fixtures and 50 glued algebras", limit: None, run: suites::order_lemma },
    Criterion { id: 4, title: "embedding into F^RB pairs", limit: secs(30), run: suites::stone },
    Criterion { id: 5, title: "filter extension against brute force", limit: secs(60), run: suites::filter_extension },
    Criterion { id: 6, title: "classical tautologies = algebraic validities", limit: secs(600), run: suites::classical },
    Criterion { id: 7, title: "soundness of K, D, AGP, A0, Nec_AK", limit: None, run: suites::soundness },
    Criterion { id: 8, title: "frame correspondences T, 4, 5A, KA", limit: None, run: suites::correspondence },
    Criterion { id: 9, title: "both translations; dual of example2 vs figure3", limit: secs(120), run: suites::duality },
    Criterion { id: 10, title: "validity agreement with the dual model", limit: None, run: suites::dual_validity },
];

/// Criterion 9 asks for an isomorphism that does not hold: the dual relation
/// links the blue x, y worlds to both red worlds. Anything else failing, or
/// the diagnostic changing, is unexpected.
fn known_red(id: u32, out: &Outcome) -> bool {
    if id != 9 {
        return false;
    }
    let red: Vec<_> = out.lines.iter().filter(|l| !l.passed).collect();
    red.len() == 1
        && red[0].name == "dual(example2) ≅ figure3"
        && red[0].detail.contains("≥ differs on 0 pairs")
        && red[0].detail.contains("L and V agree")
        && red[0].detail.contains("R differs on 4 edges (bx→rx, bx→ry, by→rx, by→ry)")
        && red[0].detail.contains("battery extensions differ on 0 of")
}

fn main() {
    let cfg = SuiteConfig::default();
    let filter: Vec<u32> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let mut unexpected = Vec::new();
    let mut details = Vec::new();
    for c in CRITERIA.iter().filter(|c| filter.is_empty() || filter.contains(&c.id)) {
        let start = Instant::now();
        let result = (c.run)(&cfg);
        let elapsed = start.elapsed();
        let (passed, note) = match &result {
            Ok(out) => {
                let in_time = c.limit.is_none_or(|l| elapsed < l);
                let checks = out.lines.len();
                let bad = out.lines.iter().filter(|l| !l.passed).count();
                if !out.passed() {
                    details.push(format!("criterion {}:\n{}", c.id, out.failures()));
                }
                let time = if in_time { String::new() } else { format!(", over the {:?} limit", c.limit.unwrap()) };
                (out.passed() && in_time, format!("{checks} checks, {bad} red{time}"))
            }
            Err(e) => (false, format!("error: {e}")),
        };
        let expected = !passed && result.as_ref().is_ok_and(|o| c.limit.is_none_or(|l| elapsed < l) && known_red(c.id, o));
        let limit = c.limit.map_or("-".to_string(), |l| format!("<{}s", l.as_secs()));
        println!(
            "criterion {:>2}  {}  {:>9.3}s {:>6}  {}: {note}{}",
            c.id,
            if passed { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            limit,
            c.title,
            if expected { " (known, see diagnostic)" } else { "" }
        );
        if !passed && !expected {
            unexpected.push(c.id);
        }
    }
    for d in &details {
        println!("{d}");
    }
    if !unexpected.is_empty() {
        eprintln!("unexpected failures: {unexpected:?}");
        std::process::exit(1);
    }
}
