//! Reports printed by the CLI, as JSON or as labelled text.
//!
//! Every JSON field appears in the text form under the same name.

use std::fmt::Write as _;

use conductor_core::crossval::CrossvalReport;
use conductor_core::props::SuiteReport;
use conductor_core::{Criterion, Decision, PrimeReport, Witness};
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Crosscheck {
    pub oracle: Decision,
    pub agrees: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub command: String,
    pub d: i64,
    pub base: String,
    pub ideal: String,
    #[serde(with = "conductor_core::serde_big::matrix")]
    pub basis: Vec<Vec<BigInt>>,
    #[serde(with = "conductor_core::serde_big::scalar")]
    pub index: BigInt,
    pub criterion: Criterion,
    pub decision: Decision,
    pub primes: Vec<PrimeReport>,
    pub witness: Option<Witness>,
    pub note: Option<String>,
    pub crosscheck: Option<Crosscheck>,
    pub elapsed_ms: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConductorEntry {
    /// HNF matrix expression, accepted by `--ideal`
    pub ideal: String,
    #[serde(with = "conductor_core::serde_big::matrix")]
    pub basis: Vec<Vec<BigInt>>,
    #[serde(with = "conductor_core::serde_big::scalar")]
    pub index: BigInt,
    /// `R + I`, whose conductor is the ideal
    #[serde(with = "conductor_core::serde_big::matrix")]
    pub realizing: Vec<Vec<BigInt>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnumerateReport {
    pub command: String,
    pub d: i64,
    pub base: String,
    pub max_index: u64,
    pub ideals_scanned: usize,
    pub conductors: Vec<ConductorEntry>,
    pub elapsed_ms: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PrimeEntry {
    pub k: usize,
    pub ideal: String,
    #[serde(with = "conductor_core::serde_big::matrix")]
    pub basis: Vec<Vec<BigInt>>,
    pub e: u32,
    pub f: u32,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SplitEntry {
    pub p: u64,
    pub splitting: conductor_core::Splitting,
    pub primes: Vec<PrimeEntry>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SplitReport {
    pub command: String,
    pub d: i64,
    pub discriminant: i64,
    pub split: Vec<SplitEntry>,
    pub elapsed_ms: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CrossvalSummary {
    pub command: String,
    pub clean: bool,
    pub ideals: usize,
    pub report: CrossvalReport,
    pub elapsed_ms: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PropsSummary {
    pub command: String,
    pub seed: u64,
    pub passed: bool,
    pub suites: Vec<SuiteReport>,
    pub elapsed_ms: f64,
}

fn matrix(m: &[Vec<BigInt>]) -> String {
    let rows: Vec<String> = m
        .iter()
        .map(|r| {
            r.iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(", ")
        })
        .collect();
    format!("[{}]", rows.join("; "))
}

fn opt<T: std::fmt::Display>(x: &Option<T>) -> String {
    x.as_ref()
        .map_or_else(|| "none".to_string(), |v| v.to_string())
}

impl CheckReport {
    pub fn text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "command: {}", self.command);
        let _ = writeln!(s, "d: {}", self.d);
        let _ = writeln!(s, "base: {}", self.base);
        let _ = writeln!(s, "ideal: {}", self.ideal);
        let _ = writeln!(s, "basis: {}", matrix(&self.basis));
        let _ = writeln!(s, "index: {}", self.index);
        let _ = writeln!(s, "criterion: {}", self.criterion);
        let _ = writeln!(s, "decision: {}", self.decision);
        let _ = writeln!(s, "primes:");
        for p in &self.primes {
            let _ = writeln!(
                s,
                "  p: {}  basis: {}  e: {}  f: {}  v: {}  condition: {}",
                p.p,
                matrix(&p.basis),
                p.e,
                p.f,
                p.v,
                opt(&p.condition)
            );
        }
        let _ = writeln!(s, "witness: {}", opt(&self.witness));
        let _ = writeln!(s, "note: {}", opt(&self.note));
        match &self.crosscheck {
            Some(c) => {
                let _ = writeln!(s, "crosscheck: oracle: {}  agrees: {}", c.oracle, c.agrees);
            }
            None => {
                let _ = writeln!(s, "crosscheck: none");
            }
        }
        let _ = writeln!(s, "elapsed_ms: {:.3}", self.elapsed_ms);
        s
    }
}

impl EnumerateReport {
    pub fn text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "command: {}", self.command);
        let _ = writeln!(
            s,
            "d: {}  base: {}  max_index: {}",
            self.d, self.base, self.max_index
        );
        let _ = writeln!(s, "ideals_scanned: {}", self.ideals_scanned);
        let _ = writeln!(s, "conductors: {}", self.conductors.len());
        for c in &self.conductors {
            let _ = writeln!(
                s,
                "  ideal: {}  index: {}  basis: {}  realizing: {}",
                c.ideal,
                c.index,
                matrix(&c.basis),
                matrix(&c.realizing)
            );
        }
        let _ = writeln!(s, "elapsed_ms: {:.3}", self.elapsed_ms);
        s
    }
}

impl SplitReport {
    pub fn text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "command: {}", self.command);
        let _ = writeln!(s, "d: {}  discriminant: {}", self.d, self.discriminant);
        for e in &self.split {
            let _ = writeln!(s, "p: {}  splitting: {}", e.p, e.splitting);
            for m in &e.primes {
                let _ = writeln!(
                    s,
                    "  P({},{}) = {}  basis: {}  e: {}  f: {}",
                    e.p,
                    m.k,
                    m.ideal,
                    matrix(&m.basis),
                    m.e,
                    m.f
                );
            }
        }
        let _ = writeln!(s, "elapsed_ms: {:.3}", self.elapsed_ms);
        s
    }
}

impl CrossvalSummary {
    pub fn text(&self) -> String {
        let r = &self.report;
        let mut s = String::new();
        let _ = writeln!(s, "command: {}", self.command);
        let _ = writeln!(s, "max_index: {}  mutation: {}", r.max_index, r.mutation);
        for sw in &r.sweeps {
            let compared: Vec<String> = sw
                .compared
                .iter()
                .map(|(c, n)| format!("{c}={n}"))
                .collect();
            let failed: Vec<String> = sw
                .hypothesis_failed
                .iter()
                .map(|(c, n)| format!("{c}={n}"))
                .collect();
            let _ = writeln!(
                s,
                "  d: {}  base: {}  ideals: {}  oracle_conductors: {}  compared: {}  hypothesis_failed: {}  prop29_certified: {}",
                sw.d,
                sw.base,
                sw.ideals,
                sw.oracle_conductors,
                compared.join(","),
                if failed.is_empty() { "0".to_string() } else { failed.join(",") },
                sw.prop29_certified
            );
        }
        for c in &r.scalar_pattern {
            let _ = writeln!(
                s,
                "  scalar pattern d={}: {} (n up to {})",
                c.d,
                if c.holds() { "holds" } else { "VIOLATED" },
                c.expected_n.last().copied().unwrap_or(0)
            );
        }
        let _ = writeln!(s, "ideals: {}", self.ideals);
        let _ = writeln!(s, "mismatches: {}", r.mismatches.len());
        let _ = writeln!(s, "unsound: {}", r.unsound.len());
        if let Some(first) = r.first_counterexample() {
            let _ = writeln!(s, "first counterexample: {first}");
            if !first.detail.is_empty() {
                let _ = writeln!(s, "  detail: {}", first.detail);
            }
        }
        let _ = writeln!(s, "clean: {}", self.clean);
        let _ = writeln!(s, "elapsed_ms: {:.3}", self.elapsed_ms);
        s
    }
}

impl PropsSummary {
    pub fn text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "command: {}", self.command);
        let _ = writeln!(s, "seed: {}", self.seed);
        for r in &self.suites {
            let _ = writeln!(
                s,
                "  {} {}: cases {}  rejected {}  failures {}",
                if r.passed() { "PASS" } else { "FAIL" },
                r.name,
                r.cases,
                r.rejected,
                r.failures.len()
            );
            for f in r.failures.iter().take(3) {
                let _ = writeln!(s, "      {f}");
            }
        }
        let _ = writeln!(s, "passed: {}", self.passed);
        let _ = writeln!(s, "elapsed_ms: {:.3}", self.elapsed_ms);
        s
    }
}
