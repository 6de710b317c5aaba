//! Tri-state decisions with per-prime explanations and witnesses.

use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Decision {
    Conductor,
    NotConductor,
    /// The criterion's hypotheses do not hold, so it says nothing.
    HypothesisFailed,
}

impl Decision {
    pub fn from_bool(is_conductor: bool) -> Self {
        if is_conductor {
            Decision::Conductor
        } else {
            Decision::NotConductor
        }
    }
}

impl fmt::Display for Decision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Decision::Conductor => "conductor",
            Decision::NotConductor => "not_conductor",
            Decision::HypothesisFailed => "hypothesis_failed",
        })
    }
}

/// Which local condition a prime satisfied.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Condition {
    /// residue degree at least 2
    A,
    /// `e_M` does not divide `v_M(I) - 1`
    B,
    /// `(v_M(I) - 1)/e_M < v_Q(I)/e_Q` for another `Q` over the same prime
    C,
    /// `R + M` is a proper subring of `S`
    ProperSum,
    /// `(I :_R M) ⊆ I`
    ColonContained,
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Condition::A => "a",
            Condition::B => "b",
            Condition::C => "c",
            Condition::ProperSum => "proper_sum",
            Condition::ColonContained => "colon_contained",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Criterion {
    Cor212,
    Thm27,
    Cor28,
    Cor213,
    Prop29,
    Prop26,
    Brute,
}

impl Criterion {
    pub const ALL: [Criterion; 7] = [
        Criterion::Cor212,
        Criterion::Thm27,
        Criterion::Cor28,
        Criterion::Cor213,
        Criterion::Prop29,
        Criterion::Prop26,
        Criterion::Brute,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Criterion::Cor212 => "cor212",
            Criterion::Thm27 => "thm27",
            Criterion::Cor28 => "cor28",
            Criterion::Cor213 => "cor213",
            Criterion::Prop29 => "prop29",
            Criterion::Prop26 => "prop26",
            Criterion::Brute => "brute",
        }
    }
}

impl fmt::Display for Criterion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Criterion {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Criterion::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| format!("unknown criterion `{s}`"))
    }
}

/// One maximal ideal `M ⊇ I` with its local data.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeReport {
    pub p: u64,
    #[serde(with = "crate::serde_big::matrix")]
    pub basis: Vec<Vec<BigInt>>,
    pub e: u32,
    pub f: u32,
    pub v: u32,
    pub condition: Option<Condition>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    Element {
        #[serde(with = "crate::serde_big::vec")]
        coords: Vec<BigInt>,
        note: String,
    },
    Lattice {
        #[serde(with = "crate::serde_big::matrix")]
        basis: Vec<Vec<BigInt>>,
        note: String,
    },
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[BigInt]| {
            v.iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(", ")
        };
        match self {
            Witness::Element { coords, note } => write!(f, "element ({}): {note}", join(coords)),
            Witness::Lattice { basis, note } => {
                let rows: Vec<String> = basis.iter().map(|r| join(r)).collect();
                write!(f, "lattice [{}]: {note}", rows.join("; "))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub criterion: Criterion,
    pub decision: Decision,
    pub primes: Vec<PrimeReport>,
    pub witness: Option<Witness>,
    pub note: Option<String>,
}

impl Verdict {
    pub fn is_conductor(&self) -> bool {
        self.decision == Decision::Conductor
    }
}
