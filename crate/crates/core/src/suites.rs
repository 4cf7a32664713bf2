//! Verification suites shared by the CLI and the acceptance tests. Each
//! returns a serializable report with a single pass/fail verdict.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::abelian::{fixed_subgroup_order, units, FiniteAbelianPGroup};
use crate::bruteforce::catalog::{abelian_types, pq_catalog, partitions, quotient_catalog, Entry};
use crate::bruteforce::constructors::abelian;
use crate::bruteforce::{check_dihedral, check_pq_elements, check_quotient_bound, q8_automorphisms, PqOutcome, OrderCap, Q8AutReport};
use crate::dedekind::TruncationParams;
use crate::error::{Error, Result};
use crate::extension::{classify, survey_truncation, FciGroupSpec, TruncationReport};

/// Suite names accepted by `fci verify`.
pub const SUITES: &[&str] = &[
    "fixed-points",
    "q8-automorphisms",
    "quotient-bound",
    "dihedral",
    "centralizer-bound",
    "metabelian",
    "kernel-set",
    "extension-axioms",
    "pq-elements",
];

/// How many counterexamples a report keeps.
const KEEP: usize = 5;

#[derive(Debug, Clone, Serialize)]
pub struct FixedPointMismatch {
    pub exponents: Vec<u32>,
    pub t: u64,
    pub k: u64,
    pub formula: u128,
    pub scanned: u128,
}

#[derive(Debug, Clone, Serialize)]
pub struct FixedPointsReport {
    pub p: u64,
    pub max_exponent: u32,
    pub groups: usize,
    /// `(A, t, k)` triples compared.
    pub triples: usize,
    pub mismatches: Vec<FixedPointMismatch>,
    pub mismatch_count: usize,
    /// `(A, t)` pairs checked against each case predicate.
    pub trivial_fixed_cases: usize,
    pub some_k_contains_omega1_cases: usize,
    pub every_k_contains_omega1_cases: usize,
    /// `(exponents, t)` pairs where a case predicate failed.
    pub case_failures: Vec<(Vec<u32>, u64)>,
    pub passed: bool,
}

struct GroupOutcome {
    triples: usize,
    mismatches: Vec<FixedPointMismatch>,
    cases: [usize; 3],
    case_failures: Vec<(Vec<u32>, u64)>,
}

fn scan_group(group: &FiniteAbelianPGroup) -> Result<GroupOutcome> {
    let p = group.p();
    let e1 = group.exponent_log();
    let elements: Vec<_> = group.elements().collect();
    let order_p: Vec<usize> = (0..elements.len()).filter(|&i| group.element_order(&elements[i]) == p).collect();
    // s -> (|{a : s a = a}|, Omega_1 fixed)
    let mut cache: HashMap<u64, (u128, bool)> = HashMap::new();
    let mut scan = |s: u64| {
        *cache.entry(s).or_insert_with(|| {
            let fixed: Vec<bool> = elements.iter().map(|a| group.scale(a, s) == *a).collect();
            (fixed.iter().filter(|&&f| f).count() as u128, order_p.iter().all(|&i| fixed[i]))
        })
    };
    let mut out = GroupOutcome { triples: 0, mismatches: Vec::new(), cases: [0; 3], case_failures: Vec::new() };
    for t in units(p, e1)? {
        let m = t.order();
        if m == 1 {
            continue;
        }
        let mut omega_each = Vec::new();
        let mut trivial_each = Vec::new();
        for k in 1..m {
            let formula = fixed_subgroup_order(group, &t, k)?;
            let (scanned, omega_fixed) = scan(t.pow(k).value());
            out.triples += 1;
            if formula != scanned {
                out.mismatches.push(FixedPointMismatch { exponents: group.exponents().to_vec(), t: t.value(), k, formula, scanned });
            }
            omega_each.push(omega_fixed);
            trivial_each.push(scanned == 1);
        }
        let ok = if p == 2 {
            out.cases[2] += 1;
            omega_each.iter().all(|&f| f)
        } else if (p - 1).is_multiple_of(m) {
            out.cases[0] += 1;
            trivial_each.iter().all(|&f| f)
        } else {
            out.cases[1] += 1;
            omega_each.iter().any(|&f| f)
        };
        if !ok {
            out.case_failures.push((group.exponents().to_vec(), t.value()));
        }
    }
    Ok(out)
}

/// Every abelian `p`-group of order at most `p^max_exponent`, every unit `t`
/// modulo its exponent of order `m > 1`, every `k < m`: the fixed-point
/// formula against a scan, and the case predicates on the scanned sets.
pub fn fixed_points(p: u64, max_exponent: u32) -> Result<FixedPointsReport> {
    let groups: Vec<FiniteAbelianPGroup> = (1..=max_exponent)
        .flat_map(partitions)
        .map(|parts| FiniteAbelianPGroup::new(p, parts))
        .collect::<Result<_>>()?;
    let outcomes: Vec<GroupOutcome> = groups.par_iter().map(scan_group).collect::<Result<_>>()?;
    let mut report = FixedPointsReport {
        p,
        max_exponent,
        groups: groups.len(),
        triples: 0,
        mismatches: Vec::new(),
        mismatch_count: 0,
        trivial_fixed_cases: 0,
        some_k_contains_omega1_cases: 0,
        every_k_contains_omega1_cases: 0,
        case_failures: Vec::new(),
        passed: false,
    };
    for o in outcomes {
        report.triples += o.triples;
        report.mismatch_count += o.mismatches.len();
        report.mismatches.extend(o.mismatches);
        report.trivial_fixed_cases += o.cases[0];
        report.some_k_contains_omega1_cases += o.cases[1];
        report.every_k_contains_omega1_cases += o.cases[2];
        report.case_failures.extend(o.case_failures);
    }
    report.mismatches.truncate(KEEP);
    report.passed = report.mismatch_count == 0 && report.case_failures.is_empty();
    Ok(report)
}

#[derive(Debug, Clone, Serialize)]
pub struct Q8Report {
    #[serde(flatten)]
    pub automorphisms: Q8AutReport,
    pub passed: bool,
}

pub fn q8_power_automorphisms() -> Q8Report {
    let r = q8_automorphisms();
    let passed = r.aut_count == 24 && r.power_automorphisms.len() == 4 && r.power_equals_inner;
    Q8Report { automorphisms: r, passed }
}

#[derive(Debug, Clone, Serialize)]
pub struct QuotientFailure {
    pub group: String,
    pub normal_order: usize,
    pub element: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct QuotientBoundReport {
    pub groups: usize,
    pub pairs: usize,
    /// `(G, N, x)` triples with `<xN>` not normal in `G/N`.
    pub triples: usize,
    pub worst_ratio: f64,
    /// The inequality also held for every element, normal image or not.
    pub holds_for_all_elements: bool,
    pub failures: Vec<QuotientFailure>,
    pub passed: bool,
}

pub fn quotient_bound(catalog: &[Entry]) -> Result<QuotientBoundReport> {
    let per_group: Vec<Vec<(usize, crate::bruteforce::QuotientBoundCheck)>> = catalog
        .par_iter()
        .map(|e| {
            e.group
                .normal_subgroups()
                .iter()
                .map(|n| check_quotient_bound(&e.group, n).map(|r| (n.len(), r)))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    let mut report = QuotientBoundReport {
        groups: catalog.len(),
        pairs: 0,
        triples: 0,
        worst_ratio: 0.0,
        holds_for_all_elements: true,
        failures: Vec::new(),
        passed: true,
    };
    for (entry, rows) in catalog.iter().zip(per_group) {
        for (normal_order, r) in rows {
            report.pairs += 1;
            report.triples += r.checked;
            report.worst_ratio = report.worst_ratio.max(r.worst_ratio);
            report.holds_for_all_elements &= r.holds_for_all_elements;
            if !r.holds {
                report.passed = false;
                if report.failures.len() < KEEP {
                    report.failures.push(QuotientFailure {
                        group: entry.name.clone(),
                        normal_order,
                        element: r.counterexample.unwrap_or(0),
                    });
                }
            }
        }
    }
    Ok(report)
}

#[derive(Debug, Clone, Serialize)]
pub struct DihedralReport {
    pub max_order: u64,
    pub groups: usize,
    /// Groups of exponent at most 2, where `Dih(A)` is abelian.
    pub skipped: usize,
    pub failures: Vec<Vec<u64>>,
    pub passed: bool,
}

pub fn dihedral(max_order: u64) -> Result<DihedralReport> {
    let types: Vec<Vec<u64>> = (1..=max_order).flat_map(abelian_types).collect();
    let rows: Vec<(Vec<u64>, bool, bool)> = types
        .into_par_iter()
        .map(|moduli| {
            let r = check_dihedral(&abelian(&moduli)?)?;
            Ok((moduli, r.skipped, r.holds()))
        })
        .collect::<Result<_>>()?;
    let mut report = DihedralReport { max_order, groups: rows.len(), skipped: 0, failures: Vec::new(), passed: true };
    for (moduli, skipped, holds) in rows {
        report.skipped += skipped as usize;
        if !holds {
            report.passed = false;
            report.failures.push(moduli);
        }
    }
    Ok(report)
}

/// One truncation of one spec, or why it was not built.
#[derive(Debug, Clone, Serialize)]
pub struct SurveyEntry {
    pub spec: String,
    pub bound: Option<u128>,
    pub params: TruncationParams,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub report: Option<TruncationReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub skipped: Option<String>,
}

/// Truncations at every requested depth and tail count (tail counts only for
/// specs with a tail). Over-cap truncations are recorded as skipped.
pub fn survey(specs: &[(String, FciGroupSpec)], depths: &[u32], tails: &[usize], cap: OrderCap) -> Result<Vec<SurveyEntry>> {
    let mut jobs = Vec::new();
    for (name, spec) in specs {
        let bound = classify(spec)?.certificate().and_then(|c| c.bound.finite());
        let tail_counts: &[usize] = if spec.dedekind.tail.is_some() { tails } else { &[0] };
        for &j in depths {
            for &t in tail_counts {
                jobs.push((name.clone(), spec, bound, TruncationParams::new(j, t)));
            }
        }
    }
    jobs.into_iter()
        .map(|(name, spec, bound, params)| {
            let (report, skipped) = match survey_truncation(spec, params, cap) {
                Ok(r) => (Some(r), None),
                Err(Error::ResourceLimit { order, cap }) => (None, Some(format!("order {order} exceeds cap {cap}"))),
                Err(Error::InvalidArgument(msg)) if spec.n.depth() > params.quasicyclic_depth => (None, Some(msg)),
                Err(e) => return Err(e),
            };
            Ok(SurveyEntry { spec: name, bound, params, report, skipped })
        })
        .collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct SurveyCheck {
    pub truncations: usize,
    pub faithful: usize,
    pub skipped: usize,
    /// `spec@depth/tail` labels of failing truncations.
    pub failures: Vec<String>,
    pub passed: bool,
}

fn label(e: &SurveyEntry) -> String {
    format!("{}@{}/{}", e.spec, e.params.quasicyclic_depth, e.params.tail_count)
}

fn survey_check(entries: &[SurveyEntry], faithful_only: bool, ok: impl Fn(&SurveyEntry, &TruncationReport) -> bool) -> SurveyCheck {
    let mut check = SurveyCheck { truncations: 0, faithful: 0, skipped: 0, failures: Vec::new(), passed: true };
    for e in entries {
        let Some(r) = &e.report else {
            check.skipped += 1;
            continue;
        };
        check.truncations += 1;
        check.faithful += r.faithful as usize;
        if (r.faithful || !faithful_only) && !ok(e, r) {
            check.passed = false;
            check.failures.push(label(e));
        }
    }
    check
}

/// Empirical centralizer orders and indices within the certified bound on
/// faithful truncations, and exact maxima where `expected` names them.
pub fn centralizer_bound(entries: &[SurveyEntry], expected: &[(&str, usize)]) -> SurveyCheck {
    survey_check(entries, true, |e, r| {
        let within = e.bound.is_some_and(|b| r.empirical_max_centralizer as u128 <= b && r.empirical_max_index as u128 <= b);
        let exact = expected.iter().filter(|(n, _)| *n == e.spec).all(|&(_, v)| r.empirical_max_centralizer == v);
        within && exact
    })
}

/// Every truncation (faithful or not) is metabelian.
pub fn metabelian(entries: &[SurveyEntry]) -> SurveyCheck {
    survey_check(entries, false, |_, r| r.metabelian)
}

/// Faithful truncations: the normal-cyclic elements form exactly `D`, and
/// `G/D` is cyclic of order `m`.
pub fn kernel_set(entries: &[SurveyEntry]) -> SurveyCheck {
    survey_check(entries, true, |_, r| r.kernel_set_is_d && r.kernel_set_is_subgroup && r.quotient_cyclic_of_order_m)
}

/// Every truncation was built and validated as a group of order `m |D|`,
/// and nontrivial fibers satisfy `g^m = n`.
pub fn extension_axioms(entries: &[SurveyEntry], specs: &[(String, FciGroupSpec)]) -> SurveyCheck {
    survey_check(entries, false, |e, r| {
        let spec = &specs.iter().find(|(n, _)| *n == e.spec).expect("entry from these specs").1;
        let order_ok = r.group_order as u64 == spec.m * r.d_order as u64;
        let fiber_ok = spec.n.is_identity() || (r.generator_power_is_fiber && r.fiber_nontrivial);
        order_ok && fiber_ok && r.generator_power_is_fiber
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct PqReport {
    pub groups: usize,
    pub applicable: usize,
    pub not_applicable: Vec<String>,
    pub failures: Vec<String>,
    pub passed: bool,
}

pub fn pq_elements(catalog: &[Entry]) -> PqReport {
    let outcomes: Vec<PqOutcome> = catalog.par_iter().map(|e| check_pq_elements(&e.group)).collect();
    let mut report = PqReport { groups: catalog.len(), applicable: 0, not_applicable: Vec::new(), failures: Vec::new(), passed: true };
    for (e, o) in catalog.iter().zip(outcomes) {
        match o {
            PqOutcome::Holds { .. } => report.applicable += 1,
            PqOutcome::Fails { .. } => {
                report.applicable += 1;
                report.passed = false;
                report.failures.push(e.name.clone());
            }
            PqOutcome::NotApplicable { .. } => report.not_applicable.push(e.name.clone()),
        }
    }
    report
}

/// Default catalogs, re-exported for callers that do not build their own.
pub fn default_quotient_catalog() -> Vec<Entry> {
    quotient_catalog()
}

pub fn default_pq_catalog() -> Vec<Entry> {
    pq_catalog()
}
