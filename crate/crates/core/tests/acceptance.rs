//! One line per acceptance criterion. Exits nonzero if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use fci_core::bruteforce::OrderCap;
use fci_core::corpus;
use fci_core::extension::{classify, FciGroupSpec};
use fci_core::suites::{self, SurveyEntry};

struct Line {
    passed: bool,
    detail: String,
}

fn run(n: u32, budget: Duration, f: impl FnOnce() -> Line) -> bool {
    let start = Instant::now();
    let line = f();
    let elapsed = start.elapsed();
    let passed = line.passed && elapsed <= budget;
    let over = if elapsed > budget { format!(" (over the {}s budget)", budget.as_secs()) } else { String::new() };
    println!(
        "criterion {n}: {} {} [{:.2}s]{over}",
        if passed { "PASS" } else { "FAIL" },
        line.detail,
        elapsed.as_secs_f64()
    );
    passed
}

fn fixed_points() -> Line {
    let mut passed = true;
    let mut parts = Vec::new();
    for (p, e) in [(2, 10), (3, 6), (5, 4), (7, 4)] {
        let r = suites::fixed_points(p, e).expect("fixed-point scan");
        passed &= r.passed;
        parts.push(format!("p={p}: {} groups, {} triples, {} mismatches", r.groups, r.triples, r.mismatch_count));
    }
    Line { passed, detail: parts.join("; ") }
}

fn q8() -> Line {
    let r = suites::q8_power_automorphisms();
    let a = &r.automorphisms;
    Line {
        passed: r.passed,
        detail: format!(
            "{} automorphisms, {} power, power = inner: {}",
            a.aut_count,
            a.power_automorphisms.len(),
            a.power_equals_inner
        ),
    }
}

fn quotient_bound() -> Line {
    let catalog = suites::default_quotient_catalog();
    let r = suites::quotient_bound(&catalog).expect("quotient scan");
    Line {
        passed: r.passed && r.groups >= 30,
        detail: format!(
            "{} groups, {} (G, N) pairs, {} triples, worst ratio {:.3}, failures {:?}",
            r.groups, r.pairs, r.triples, r.worst_ratio, r.failures
        ),
    }
}

fn dihedral() -> Line {
    let r = suites::dihedral(64).expect("dihedral scan");
    Line {
        passed: r.passed,
        detail: format!("{} abelian groups, {} of exponent <= 2 skipped, failures {:?}", r.groups, r.skipped, r.failures),
    }
}

fn centralizer_bound(entries: &[SurveyEntry], fci: usize) -> Line {
    let c = suites::centralizer_bound(entries, &[("z5_teichmuller2", 4)]);
    Line {
        passed: c.passed && fci >= 5 && c.faithful > 0,
        detail: format!(
            "{fci} FCI specs, {} truncations ({} faithful, {} over the cap), failures {:?}",
            c.truncations, c.faithful, c.skipped, c.failures
        ),
    }
}

fn structure(entries: &[SurveyEntry]) -> Line {
    let k = suites::kernel_set(entries);
    let m = suites::metabelian(entries);
    Line {
        passed: k.passed && m.passed,
        detail: format!("kernel set and quotient on {} faithful truncations, failures {:?} / {:?}", k.faithful, k.failures, m.failures),
    }
}

fn certificates(specs: &[(String, FciGroupSpec)], entries: &[SurveyEntry]) -> Line {
    let finite = specs.iter().all(|(_, s)| {
        classify(s).ok().and_then(|c| c.certificate().map(|c| c.bound.finite().is_some())).unwrap_or(false)
    });
    let exceeding: Vec<String> = entries
        .iter()
        .filter(|e| e.report.as_ref().is_some_and(|r| r.within_bound != Some(true)))
        .map(|e| format!("{}@{}/{}", e.spec, e.params.quasicyclic_depth, e.params.tail_count))
        .collect();
    Line {
        passed: finite && exceeding.is_empty(),
        detail: format!("all certificates finite: {finite}, truncations over their bound: {exceeding:?}"),
    }
}

fn well_formed(specs: &[(String, FciGroupSpec)], entries: &[SurveyEntry]) -> Line {
    let axioms = suites::extension_axioms(entries, specs);
    let involution: Vec<_> =
        entries.iter().filter(|e| e.spec == "z2_inversion_involution").filter_map(|e| e.report.as_ref()).collect();
    let fiber_ok = !involution.is_empty()
        && involution.iter().all(|r| r.generator_power_is_fiber && r.fiber_nontrivial && r.empirical_max_centralizer <= 4);
    Line {
        passed: axioms.passed && fiber_ok,
        detail: format!(
            "{} truncations built and validated, failures {:?}; involution fiber: g^2 = n != 1 and max centralizer <= 4 at {} depths: {fiber_ok}",
            axioms.truncations,
            axioms.failures,
            involution.len()
        ),
    }
}

fn pq_elements() -> Line {
    let catalog = suites::default_pq_catalog();
    let r = suites::pq_elements(&catalog);
    Line {
        passed: r.passed && r.applicable > 0,
        detail: format!("{} groups, {} applicable, failures {:?}", r.groups, r.applicable, r.failures),
    }
}

fn main() -> ExitCode {
    let secs = Duration::from_secs;
    let mut ok = true;
    ok &= run(1, secs(120), fixed_points);
    ok &= run(2, secs(1), q8);
    ok &= run(3, secs(120), quotient_bound);
    ok &= run(4, secs(60), dihedral);

    let specs: Vec<(String, FciGroupSpec)> = corpus::fci_specs().into_iter().map(|(n, s)| (n.to_string(), s)).collect();
    let start = Instant::now();
    let entries = suites::survey(&specs, &[1, 2, 3], &[0, 1, 2], OrderCap::default()).expect("truncation survey");
    let survey_time = start.elapsed();
    // The survey is shared by criteria 5 to 8 and charged to criterion 5.
    ok &= run(5, secs(120).saturating_sub(survey_time), || centralizer_bound(&entries, specs.len()));
    ok &= run(6, secs(120), || structure(&entries));
    ok &= run(7, secs(120), || certificates(&specs, &entries));
    ok &= run(8, secs(120), || well_formed(&specs, &entries));
    ok &= run(9, secs(60), pq_elements);
    println!("survey of {} truncations took {:.2}s", entries.len(), survey_time.as_secs_f64());
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
