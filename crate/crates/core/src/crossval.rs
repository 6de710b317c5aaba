//! Sweeps comparing the fast criteria with the brute-force oracle over
//! every ideal of bounded index.
//!
//! Work is spread over rayon workers, but results are collected in
//! enumeration order, so reports do not depend on scheduling.

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::quad::{Base, Bounds, Mutation, Prop29Outcome, QuadField, Result};
use crate::ring::IdealHandle;
use crate::verdict::{Criterion, Decision, Verdict};

pub const DEFAULT_FIELDS: [i64; 8] = [-1, 2, -2, 3, 5, -5, 13, -23];
pub const DEFAULT_ORDER_FIELDS: [i64; 3] = [5, -3, 13];
pub const DEFAULT_ORDERS: [u64; 3] = [2, 3, 6];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealRecord {
    pub d: i64,
    pub base: String,
    #[serde(with = "crate::serde_big::matrix")]
    pub basis: Vec<Vec<BigInt>>,
    #[serde(with = "crate::serde_big::scalar")]
    pub index: BigInt,
}

impl IdealRecord {
    fn new(field: &QuadField, base: &Base, i: &IdealHandle) -> Self {
        IdealRecord {
            d: field.d(),
            base: base.label(),
            basis: i.lattice().basis().to_vec(),
            index: i.index(),
        }
    }
}

impl std::fmt::Display for IdealRecord {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let rows: Vec<String> = self
            .basis
            .iter()
            .map(|r| {
                r.iter()
                    .map(|x| x.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .collect();
        write!(
            f,
            "d={} base={} I=[[{}]] index={}",
            self.d,
            self.base,
            rows.join(";"),
            self.index
        )
    }
}

/// A criterion disagreeing with the oracle, or failing outright.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mismatch {
    pub ideal: IdealRecord,
    pub criterion: Criterion,
    /// `None` when the criterion raised an error
    pub got: Option<Decision>,
    pub oracle: Decision,
    pub detail: String,
}

impl std::fmt::Display for Mismatch {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.got {
            Some(got) => write!(
                f,
                "{}: {} says {got}, oracle says {}",
                self.ideal, self.criterion, self.oracle
            ),
            None => write!(
                f,
                "{}: {} failed: {}",
                self.ideal, self.criterion, self.detail
            ),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepSummary {
    pub d: i64,
    pub base: String,
    pub ideals: usize,
    pub oracle_conductors: usize,
    /// per criterion: comparisons made (HypothesisFailed excluded)
    pub compared: Vec<(Criterion, usize)>,
    pub hypothesis_failed: Vec<(Criterion, usize)>,
    pub prop29_certified: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScalarPatternCheck {
    pub d: i64,
    pub max_index: u64,
    /// `n` with `n² ≤ max_index`
    pub expected_n: Vec<u64>,
    /// oracle conductors that are not `nS`
    pub unexpected: Vec<IdealRecord>,
    /// `nS` the oracle rejected
    pub missing_n: Vec<u64>,
}

impl ScalarPatternCheck {
    pub fn holds(&self) -> bool {
        self.unexpected.is_empty() && self.missing_n.is_empty()
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossvalReport {
    pub max_index: u64,
    pub mutation: Mutation,
    pub sweeps: Vec<SweepSummary>,
    pub mismatches: Vec<Mismatch>,
    /// prop29 certificates on oracle-negative ideals
    pub unsound: Vec<Mismatch>,
    pub scalar_pattern: Vec<ScalarPatternCheck>,
}

impl CrossvalReport {
    pub fn is_clean(&self) -> bool {
        self.mismatches.is_empty()
            && self.unsound.is_empty()
            && self.scalar_pattern.iter().all(|f| f.holds())
    }

    /// Smallest counterexample by index, then by field and basis.
    pub fn first_counterexample(&self) -> Option<&Mismatch> {
        self.mismatches.iter().chain(&self.unsound).min_by(|a, b| {
            (&a.ideal.index, a.ideal.d, &a.ideal.basis).cmp(&(
                &b.ideal.index,
                b.ideal.d,
                &b.ideal.basis,
            ))
        })
    }

    pub fn total_ideals(&self) -> usize {
        self.sweeps.iter().map(|s| s.ideals).sum()
    }

    fn absorb(&mut self, other: CrossvalReport) {
        self.sweeps.extend(other.sweeps);
        self.mismatches.extend(other.mismatches);
        self.unsound.extend(other.unsound);
        self.scalar_pattern.extend(other.scalar_pattern);
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossvalConfig {
    pub fields: Vec<i64>,
    pub max_index: u64,
    /// fields swept over proper orders
    pub order_fields: Vec<i64>,
    pub orders: Vec<u64>,
    pub mutation: Mutation,
    pub bounds: Bounds,
}

impl Default for CrossvalConfig {
    fn default() -> Self {
        CrossvalConfig {
            fields: DEFAULT_FIELDS.to_vec(),
            max_index: 500,
            order_fields: DEFAULT_ORDER_FIELDS.to_vec(),
            orders: DEFAULT_ORDERS.to_vec(),
            mutation: Mutation::None,
            bounds: Bounds::default(),
        }
    }
}

/// Outcome of every check on one ideal.
struct IdealOutcome {
    oracle: Decision,
    results: Vec<(Criterion, std::result::Result<Verdict, String>)>,
    prop29: Option<std::result::Result<Prop29Outcome, String>>,
}

fn check_ideal(
    field: &QuadField,
    base: &Base,
    i: &IdealHandle,
    mutation: Mutation,
) -> Result<IdealOutcome> {
    let oracle = field.brute_verdict(base, i)?.decision;
    let mut results = Vec::new();
    let s = |r: crate::quad::Result<Verdict>| r.map_err(|e| e.to_string());
    match base {
        Base::Integers(_) => {
            results.push((Criterion::Cor212, s(field.cor212_verdict_with(i, mutation))));
            results.push((Criterion::Thm27, s(field.thm27_verdict(base, i))));
        }
        Base::Order(_) => {
            let radical = field.factor(i)?.is_radical();
            if radical {
                results.push((Criterion::Cor213, s(field.cor213_verdict(base, i))));
            }
            results.push((Criterion::Thm27, s(field.thm27_verdict(base, i))));
            results.push((Criterion::Cor28, s(field.cor28_verdict(base, i))));
        }
    }
    let prop29 = Some(field.prop29_sufficient(base, i).map_err(|e| e.to_string()));
    Ok(IdealOutcome {
        oracle,
        results,
        prop29,
    })
}

/// Every criterion applicable to `base` against the oracle, for all ideals
/// of index at most `max_index`.
pub fn sweep(
    field: &QuadField,
    base: &Base,
    max_index: u64,
    mutation: Mutation,
) -> Result<CrossvalReport> {
    let ideals: Vec<IdealHandle> = field.ring().enumerate_ideals(max_index).collect();
    let outcomes: Vec<Result<IdealOutcome>> = ideals
        .par_iter()
        .map(|i| check_ideal(field, base, i, mutation))
        .collect();

    let mut summary = SweepSummary {
        d: field.d(),
        base: base.label(),
        ideals: ideals.len(),
        ..Default::default()
    };
    let mut report = CrossvalReport {
        max_index,
        mutation,
        ..Default::default()
    };
    let mut conductors = Vec::new();
    let bump =
        |v: &mut Vec<(Criterion, usize)>, c: Criterion| match v.iter_mut().find(|(k, _)| *k == c) {
            Some((_, n)) => *n += 1,
            None => v.push((c, 1)),
        };
    for (i, outcome) in ideals.iter().zip(outcomes) {
        let outcome = outcome?;
        let record = || IdealRecord::new(field, base, i);
        if outcome.oracle == Decision::Conductor {
            summary.oracle_conductors += 1;
            conductors.push(i.clone());
        }
        for (criterion, result) in outcome.results {
            match result {
                Ok(v) if v.decision == Decision::HypothesisFailed => {
                    bump(&mut summary.hypothesis_failed, criterion)
                }
                Ok(v) => {
                    bump(&mut summary.compared, criterion);
                    if v.decision != outcome.oracle {
                        report.mismatches.push(Mismatch {
                            ideal: record(),
                            criterion,
                            got: Some(v.decision),
                            oracle: outcome.oracle,
                            detail: v.witness.map(|w| w.to_string()).unwrap_or_default(),
                        });
                    }
                }
                Err(e) => report.mismatches.push(Mismatch {
                    ideal: record(),
                    criterion,
                    got: None,
                    oracle: outcome.oracle,
                    detail: e,
                }),
            }
        }
        match outcome.prop29 {
            Some(Ok(Prop29Outcome::Inconclusive)) | None => {}
            Some(Ok(certificate)) => {
                summary.prop29_certified += 1;
                if outcome.oracle != Decision::Conductor {
                    report.unsound.push(Mismatch {
                        ideal: record(),
                        criterion: Criterion::Prop29,
                        got: Some(Decision::Conductor),
                        oracle: outcome.oracle,
                        detail: format!("{certificate:?}"),
                    });
                }
            }
            Some(Err(e)) => report.mismatches.push(Mismatch {
                ideal: record(),
                criterion: Criterion::Prop29,
                got: None,
                oracle: outcome.oracle,
                detail: e,
            }),
        }
    }
    if let Base::Integers(_) = base {
        report
            .scalar_pattern
            .push(scalar_pattern(field, base, max_index, &conductors));
    }
    report.sweeps.push(summary);
    Ok(report)
}

/// Over Z the conductor ideals of bounded index should be exactly the `nS`.
fn scalar_pattern(
    field: &QuadField,
    base: &Base,
    max_index: u64,
    conductors: &[IdealHandle],
) -> ScalarPatternCheck {
    let expected_n: Vec<u64> = (1..).take_while(|n| n * n <= max_index).collect();
    let expected: Vec<IdealHandle> = expected_n.iter().map(|&n| field.scalar_ideal(n)).collect();
    let unexpected = conductors
        .iter()
        .filter(|i| !expected.contains(i))
        .map(|i| IdealRecord::new(field, base, i))
        .collect();
    let missing_n = expected_n
        .iter()
        .zip(&expected)
        .filter(|(_, e)| !conductors.contains(e))
        .map(|(n, _)| *n)
        .collect();
    ScalarPatternCheck {
        d: field.d(),
        max_index,
        expected_n,
        unexpected,
        missing_n,
    }
}

/// The full harness: base Z over `fields`, then each order over
/// `order_fields`.
pub fn run(config: &CrossvalConfig) -> Result<CrossvalReport> {
    let mut report = CrossvalReport {
        max_index: config.max_index,
        mutation: config.mutation,
        ..Default::default()
    };
    for &d in &config.fields {
        let field = QuadField::with_bounds(d, config.bounds)?;
        report.absorb(sweep(
            &field,
            &field.integers(),
            config.max_index,
            config.mutation,
        )?);
    }
    for &d in &config.order_fields {
        let field = QuadField::with_bounds(d, config.bounds)?;
        for &f in &config.orders {
            let base = field.order_base(f)?;
            report.absorb(sweep(&field, &base, config.max_index, config.mutation)?);
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian_small_sweep_is_clean() {
        let g = QuadField::new(-1).unwrap();
        let r = sweep(&g, &g.integers(), 60, Mutation::None).unwrap();
        assert!(r.is_clean(), "{:?}", r.first_counterexample());
        assert_eq!(r.scalar_pattern[0].expected_n, vec![1, 2, 3, 4, 5, 6, 7]);
        assert_eq!(r.sweeps[0].oracle_conductors, 7);
    }

    #[test]
    fn trivial_bound() {
        let g = QuadField::new(-1).unwrap();
        let r = sweep(&g, &g.integers(), 1, Mutation::None).unwrap();
        assert!(r.is_clean());
        assert_eq!(r.total_ideals(), 1);
    }

    #[test]
    fn flipped_b_is_caught() {
        let g = QuadField::new(-1).unwrap();
        let r = sweep(&g, &g.integers(), 4, Mutation::FlipDivisibility).unwrap();
        let first = r.first_counterexample().unwrap();
        assert_eq!(first.ideal.index, BigInt::from(2));
        assert!(r
            .mismatches
            .iter()
            .any(|m| m.ideal.index == BigInt::from(4)));
    }

    #[test]
    fn order_sweep_is_clean() {
        let k = QuadField::new(5).unwrap();
        let r = sweep(&k, &k.order_base(2).unwrap(), 40, Mutation::None).unwrap();
        assert!(r.is_clean(), "{:?}", r.first_counterexample());
        assert!(r.scalar_pattern.is_empty());
    }

    #[test]
    fn deterministic() {
        let k = QuadField::new(-5).unwrap();
        let a = sweep(&k, &k.integers(), 50, Mutation::NonStrictInequality).unwrap();
        let b = sweep(&k, &k.integers(), 50, Mutation::NonStrictInequality).unwrap();
        assert_eq!(a, b);
    }
}
