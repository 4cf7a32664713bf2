//! `fci`: classify, bound, truncate and verify cyclic extensions of periodic
//! Dedekind groups.

use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use fci_core::bruteforce::OrderCap;
use fci_core::corpus;
use fci_core::dedekind::TruncationParams;
use fci_core::document::{Report, SpecDocument};
use fci_core::extension::{classify, validate_extension, Classification, FciGroupSpec, TruncatedExtension};
use fci_core::power_aut::symbolic_centralizer_order;
use fci_core::suites;
use fci_core::Error;

#[derive(Parser)]
#[command(name = "fci", version, about = "Finite centralizer index groups: classification and finite checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a spec and print the JSON report.
    Classify {
        /// Spec file, or `bundled:NAME`.
        spec: String,
    },
    /// Print m, pi_0, pi_1, M, the centralizer orders of phi^k and both bounds.
    Bound { spec: String },
    /// Build a finite truncation and write its Cayley table.
    Truncate {
        spec: String,
        #[arg(long, default_value_t = 1)]
        depth: u32,
        #[arg(long = "tail-primes", default_value_t = 0)]
        tail_primes: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run a verification suite and print a JSON pass/fail report.
    Verify {
        /// One of: fixed-points, q8-automorphisms, quotient-bound, dihedral,
        /// centralizer-bound, metabelian, kernel-set, extension-axioms, pq-elements.
        suite: String,
        /// Prime for fixed-points (default: 2, 3, 5 and 7).
        #[arg(long)]
        p: Option<u64>,
        /// Largest group order for fixed-points and dihedral.
        #[arg(long = "max-order")]
        max_order: Option<u64>,
        /// Specs for the truncation suites: files, `bundled:NAME`, or `bundled` for every bundled FCI spec.
        #[arg(long = "spec", default_value = "bundled")]
        specs: Vec<String>,
        /// Truncation depths 1..=max-depth.
        #[arg(long = "max-depth", default_value_t = 3)]
        max_depth: u32,
    },
}

/// Exit codes.
const FAIL: u8 = 1;
const INPUT: u8 = 2;
const INTERNAL: u8 = 3;
const RESOURCE: u8 = 4;

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::InvalidArgument(_) | Error::Unsupported(_) | Error::InvalidSpec(_) => INPUT,
        Error::ResourceLimit { .. } => RESOURCE,
        Error::Overflow(_) | Error::Internal(_) => INTERNAL,
    }
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure { code: exit_code(&e), message: e.to_string() }
    }
}

type Outcome = Result<u8, Failure>;

/// Writes to stdout, ignoring a closed pipe.
fn say(text: &str) {
    let mut stdout = std::io::stdout().lock();
    let _ = stdout.write_all(text.as_bytes()).and_then(|_| stdout.flush());
}

fn read_spec(source: &str) -> Result<FciGroupSpec, Failure> {
    let text = match source.strip_prefix("bundled:") {
        Some(name) => corpus::text(name)
            .ok_or_else(|| Failure { code: INPUT, message: format!("no bundled spec named {name:?}") })?
            .to_string(),
        None => fs::read_to_string(source).map_err(|e| Failure { code: INPUT, message: format!("{source}: {e}") })?,
    };
    Ok(SpecDocument::parse(&text)?.to_spec()?)
}

fn classify_cmd(source: &str) -> Outcome {
    let report = Report::classify(&read_spec(source)?)?;
    say(&format!("{}\n", report.to_json()));
    Ok(if report.classification == "invalid" { INPUT } else { 0 })
}

fn set(primes: &[u64]) -> String {
    let items: Vec<String> = primes.iter().map(u64::to_string).collect();
    format!("{{{}}}", items.join(", "))
}

fn bound_cmd(source: &str) -> Outcome {
    let spec = read_spec(source)?;
    let mut out = String::new();
    match classify(&spec)? {
        Classification::Dedekind => {
            writeln!(out, "classification = dedekind").unwrap();
            writeln!(out, "m = 1").unwrap();
            writeln!(out, "bound = none (every cyclic subgroup is normal)").unwrap();
        }
        Classification::NotFci { reason } => {
            writeln!(out, "classification = not_fci").unwrap();
            writeln!(out, "reason = {reason}").unwrap();
            writeln!(out, "m = {}", spec.m).unwrap();
            for k in 1..spec.m {
                let c = symbolic_centralizer_order(&spec.phi, &spec.dedekind, k)?;
                writeln!(out, "|C_D(phi^{k})| = {c}").unwrap();
            }
            writeln!(out, "bound = infinite").unwrap();
        }
        Classification::Fci(c) => {
            writeln!(out, "classification = fci").unwrap();
            writeln!(out, "m = {}", c.m).unwrap();
            writeln!(out, "pi0 = {}", set(&c.pi0)).unwrap();
            writeln!(out, "pi1 = {}", set(&c.pi1)).unwrap();
            writeln!(out, "M = {}", c.big_m).unwrap();
            writeln!(out, "|Omega_1(D_2)| = {}", c.omega1_d2).unwrap();
            for k in 1..c.m {
                let o = symbolic_centralizer_order(&spec.phi, &spec.dedekind, k)?;
                writeln!(out, "|C_D(phi^{k})| = {o}").unwrap();
            }
            writeln!(out, "lemma bound = {}", c.lemma_bound).unwrap();
            writeln!(out, "bound = {}", c.bound).unwrap();
        }
    }
    say(&out);
    Ok(0)
}

fn truncate_cmd(source: &str, depth: u32, tail_primes: usize, out: &PathBuf, cap: OrderCap) -> Outcome {
    let spec = read_spec(source)?;
    let violations = validate_extension(&spec);
    if !violations.is_empty() {
        say(&format!("{}\n", Report::invalid(violations.iter().map(ToString::to_string).collect()).to_json()));
        return Ok(INPUT);
    }
    let ext = TruncatedExtension::new(&spec, TruncationParams::new(depth, tail_primes), cap)?;
    let group = ext.to_cayley()?;
    fs::write(out, group.to_text()).map_err(|e| Failure { code: INPUT, message: format!("{}: {e}", out.display()) })?;
    say(&format!(
        "order {} (m = {}, |D| = {}), phi order preserved: {}, faithful: {}\n",
        group.order(),
        ext.m(),
        ext.instance().order(),
        ext.phi_order_preserved(),
        ext.faithful()
    ));
    Ok(0)
}

fn load_specs(sources: &[String]) -> Result<Vec<(String, FciGroupSpec)>, Failure> {
    let mut specs = Vec::new();
    for s in sources {
        if s == "bundled" || s == "bundled/all" {
            specs.extend(corpus::fci_specs().into_iter().map(|(n, spec)| (n.to_string(), spec)));
        } else {
            specs.push((s.clone(), read_spec(s)?));
        }
    }
    Ok(specs)
}

fn largest_exponent(p: u64, max_order: u64) -> u32 {
    let mut e = 0;
    let mut q = p;
    while q <= max_order {
        e += 1;
        q = q.saturating_mul(p);
    }
    e
}

fn emit(suite: &str, passed: bool, report: serde_json::Value) -> u8 {
    let out = serde_json::json!({ "suite": suite, "passed": passed, "report": report });
    say(&format!("{}\n", serde_json::to_string_pretty(&out).expect("reports serialize")));
    if passed {
        0
    } else {
        FAIL
    }
}

macro_rules! to_value {
    ($v:expr) => {
        serde_json::to_value($v).expect("reports serialize")
    };
}

fn verify_cmd(suite: &str, p: Option<u64>, max_order: Option<u64>, sources: &[String], max_depth: u32, cap: OrderCap) -> Outcome {
    let code = match suite {
        "fixed-points" => {
            let runs: Vec<(u64, u32)> = match (p, max_order) {
                (Some(p), Some(n)) => vec![(p, largest_exponent(p, n))],
                (Some(p), None) => vec![(p, [(2, 10), (3, 6), (5, 4), (7, 4)].iter().find(|r| r.0 == p).map_or(3, |r| r.1))],
                (None, n) => [(2, 1024), (3, 729), (5, 625), (7, 2401)]
                    .iter()
                    .map(|&(p, d)| (p, largest_exponent(p, n.unwrap_or(d))))
                    .collect(),
            };
            if let Some(&(p, _)) = runs.iter().find(|&&(p, _)| !fci_core::arith::is_prime(p)) {
                return Err(Failure { code: INPUT, message: format!("--p {p} is not prime") });
            }
            let reports = runs.iter().map(|&(p, e)| suites::fixed_points(p, e)).collect::<Result<Vec<_>, _>>()?;
            emit(suite, reports.iter().all(|r| r.passed), to_value!(&reports))
        }
        "q8-automorphisms" => {
            let r = suites::q8_power_automorphisms();
            emit(suite, r.passed, to_value!(&r))
        }
        "quotient-bound" => {
            let r = suites::quotient_bound(&suites::default_quotient_catalog())?;
            emit(suite, r.passed, to_value!(&r))
        }
        "dihedral" => {
            let r = suites::dihedral(max_order.unwrap_or(64))?;
            emit(suite, r.passed, to_value!(&r))
        }
        "pq-elements" => {
            let r = suites::pq_elements(&suites::default_pq_catalog());
            emit(suite, r.passed, to_value!(&r))
        }
        "centralizer-bound" | "metabelian" | "kernel-set" | "extension-axioms" => {
            let specs = load_specs(sources)?;
            let depths: Vec<u32> = (1..=max_depth).collect();
            let entries = suites::survey(&specs, &depths, &[0, 1, 2], cap)?;
            let check = match suite {
                "centralizer-bound" => suites::centralizer_bound(&entries, &[("z5_teichmuller2", 4)]),
                "metabelian" => suites::metabelian(&entries),
                "kernel-set" => suites::kernel_set(&entries),
                _ => suites::extension_axioms(&entries, &specs),
            };
            let passed = check.passed;
            emit(suite, passed, serde_json::json!({ "check": to_value!(&check), "truncations": to_value!(&entries) }))
        }
        other => {
            return Err(Failure {
                code: INPUT,
                message: format!("unknown suite {other:?}; expected one of {}", suites::SUITES.join(", ")),
            })
        }
    };
    Ok(code)
}

fn run(cli: Cli) -> Outcome {
    let cap = OrderCap::from_env()?;
    match cli.command {
        Command::Classify { spec } => classify_cmd(&spec),
        Command::Bound { spec } => bound_cmd(&spec),
        Command::Truncate { spec, depth, tail_primes, out } => truncate_cmd(&spec, depth, tail_primes, &out, cap),
        Command::Verify { suite, p, max_order, specs, max_depth } => verify_cmd(&suite, p, max_order, &specs, max_depth, cap),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { INPUT } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
