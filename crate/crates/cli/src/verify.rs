//! Verification suites run by `renner verify`.
//!
//! Each suite sweeps every orbit of `R_1, …, R_n` for `n ≤ 4` and reduces to
//! one report. Violations are emitted as JSON certificates.

use std::fmt::Write as _;

use clap::ValueEnum;
use renner::analysis::{self, all_orbits, OrbitData};
use renner::order::check_graded;
use renner::Report;
use serde::Serialize;
use serde_json::Value;

use crate::{to_json, Cli, CmdResult, Format, Outcome, UsageError};

/// Largest rank for the exhaustive suites.
pub const MAX_VERIFY_N: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    All,
    /// Descent sets from standard forms agree with the definition; nonempty descents.
    Descents,
    /// Both clauses of the lifting property, left and right.
    Lifting,
    /// μ = (-1)^ℓ when every length-2 subinterval is a diamond, 0 otherwise.
    Putcha,
    /// The δ identity for R-polynomials, every pair.
    Delta,
    /// Bar-involution expansion against the recurrence.
    Hecke,
    /// Degree, monic and constant-term properties of R.
    Rpoly,
    /// R(0) equals the Möbius function of the order.
    Mobius,
    /// Linear length-2 subintervals exist iff R(0) = 0; length-2 intervals have 3 or 4 elements.
    Linear,
    /// Fixed points and subintervals of intervals with R(0) ≠ 0.
    Subinterval,
    /// Orbit of the identity against the classical symmetric group.
    Specialization,
    /// Coset factorization in parabolic subgroups of S_n.
    Cosets,
    /// ℓ is the rank function of each orbit poset.
    Graded,
}

impl Suite {
    pub fn members() -> Vec<Suite> {
        Suite::value_variants().iter().copied().filter(|s| *s != Suite::All).collect()
    }

    pub fn name(&self) -> String {
        self.to_possible_value().unwrap().get_name().to_string()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteResult {
    pub suite: Suite,
    pub n: usize,
    #[serde(flatten)]
    pub report: Report<Value>,
}

fn erase<V: Serialize>(r: Report<V>) -> Report<Value> {
    Report {
        checked: r.checked,
        violations: r.violations.iter().map(|v| serde_json::to_value(v).unwrap()).collect(),
        runtime_ms: r.runtime_ms,
    }
}

/// Orbit data for every orbit of `R_1, …, R_n`, built once per run.
pub struct Workspace {
    pub n: usize,
    pub orbits: Vec<OrbitData>,
}

impl Workspace {
    pub fn new(n: usize) -> Self {
        Workspace { n, orbits: all_orbits(n).into_iter().map(OrbitData::new).collect() }
    }

    fn sweep<V: Serialize>(&self, f: impl Fn(&OrbitData) -> Report<V>) -> Report<Value> {
        let mut total = Report::default();
        for data in &self.orbits {
            total.absorb(erase(f(data)));
        }
        total
    }

    pub fn run(&self, suite: Suite) -> SuiteResult {
        let report = match suite {
            Suite::All => unreachable!("expanded by the caller"),
            Suite::Descents => self.sweep(|d| analysis::check_nonempty_descent(d.poset.elements())),
            Suite::Lifting => self.sweep(|d| analysis::check_lifting_orbit(&d.poset)),
            Suite::Putcha => self.sweep(analysis::verify_putcha_conjecture),
            Suite::Delta => self.sweep(analysis::check_delta_identity),
            Suite::Hecke => self.sweep(analysis::check_hecke_agreement),
            Suite::Rpoly => self.sweep(analysis::check_rpoly_trichotomy),
            Suite::Mobius => self.sweep(analysis::check_mobius_identity),
            Suite::Linear => {
                let mut r = self.sweep(analysis::check_linear_criterion);
                r.absorb(self.sweep(analysis::check_length2_dichotomy));
                r
            }
            Suite::Subinterval => self.sweep(analysis::check_subinterval_constant_terms),
            Suite::Graded => self.sweep(|d| check_graded(&d.poset)),
            Suite::Specialization => {
                let mut r = Report::default();
                for n in 1..=self.n {
                    r.absorb(erase(analysis::check_specialization(n).expect("valid rank")));
                }
                r
            }
            Suite::Cosets => {
                let mut r = Report::default();
                for n in 1..=self.n {
                    r.absorb(erase(analysis::check_coset_factorization(n)));
                }
                r
            }
        };
        SuiteResult { suite, n: self.n, report }
    }
}

pub(crate) fn cmd_verify(cli: &Cli, suite: Suite) -> CmdResult {
    let n = cli.n.unwrap_or(MAX_VERIFY_N);
    if !(1..=MAX_VERIFY_N).contains(&n) {
        return Err(UsageError(format!("verify is exhaustive and limited to n ≤ {MAX_VERIFY_N}, got {n}")));
    }
    let suites = if suite == Suite::All { Suite::members() } else { vec![suite] };
    let workspace = Workspace::new(n);
    let results: Vec<SuiteResult> = suites.into_iter().map(|s| workspace.run(s)).collect();
    let violations = results.iter().any(|r| !r.report.passed());
    for r in &results {
        eprintln!("{}: {} ms", r.suite.name(), r.report.runtime_ms);
    }
    let output = match cli.format {
        Format::Json => to_json(&results),
        Format::Tsv => {
            let mut out = String::from("suite\tn\tchecked\tviolations\n");
            for r in &results {
                writeln!(out, "{}\t{}\t{}\t{}", r.suite.name(), n, r.report.checked, r.report.violations.len())
                    .unwrap();
            }
            out
        }
        Format::Text => {
            let mut out = String::new();
            for r in &results {
                let status = if r.report.passed() { "ok" } else { "FAILED" };
                writeln!(
                    out,
                    "{:<15} n≤{}  checked {:>7}  violations {:>3}  {status}",
                    r.suite.name(),
                    n,
                    r.report.checked,
                    r.report.violations.len()
                )
                .unwrap();
            }
            for r in results.iter().filter(|r| !r.report.passed()) {
                for v in &r.report.violations {
                    writeln!(out, "{}", serde_json::json!({ "suite": r.suite, "certificate": v })).unwrap();
                }
            }
            out
        }
        Format::Dot => return Err(crate::unsupported(cli)),
    };
    Ok(Outcome { output, violations })
}
