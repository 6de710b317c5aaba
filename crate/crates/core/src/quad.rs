//! Quadratic number rings: the maximal order `S = Z[ω]` of `Q(√d)`, its
//! orders, prime splitting, factorization of ideals, and the local
//! criteria deciding whether an ideal of `S` is an R-conductor ideal.
//!
//! Every criterion here reasons prime by prime over `V(I)`. The brute-force
//! route in [`crate::ring`] never looks at primes, which is what makes the
//! two useful as checks on each other.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith;
use crate::lattice::{IntLattice, LatticeError};
use crate::ring::{Element, IdealHandle, RingError, RingTable, SubringHandle, DEFAULT_COSET_BOUND};
use crate::verdict::{Condition, Criterion, Decision, PrimeReport, Verdict, Witness};

pub const DEFAULT_FACTOR_BOUND: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuadError {
    #[error("d = {0} is not squarefree")]
    NotSquarefree(i64),
    #[error("d = {0} does not define a quadratic field")]
    DegenerateD(i64),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("there is no prime number {k} above {p}")]
    NoSuchPrime { p: u64, k: usize },
    #[error("order conductor index must be positive, got {0}")]
    InvalidOrder(u64),
    #[error("index {index} has a prime factor above the trial-division bound {bound}")]
    FactorBoundExceeded { index: BigInt, bound: u64 },
    #[error("internal cross-check failed: {0}")]
    CrossCheckMismatch(String),
    #[error("ideal is not radical: exponent {v} at a prime above {p}")]
    RadicalRequired { p: u64, v: u32 },
    #[error("base ring {0} is not a Dedekind domain")]
    BaseNotDedekind(String),
    #[error("{0}")]
    NotMaximal(String),
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

pub type Result<T> = std::result::Result<T, QuadError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bounds {
    /// Largest trial divisor used when factoring ideal indexes.
    pub factor_bound: u64,
    /// Largest quotient `|S/I|` that may be enumerated coset by coset.
    pub coset_bound: u64,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            factor_bound: DEFAULT_FACTOR_BOUND,
            coset_bound: DEFAULT_COSET_BOUND,
        }
    }
}

/// Deliberate defects in the local conditions, used to show that the
/// cross-validation harness notices wrong arithmetic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mutation {
    #[default]
    None,
    /// condition b tests `e | v - 1` instead of `e ∤ v - 1`
    FlipDivisibility,
    /// condition c uses `≤` instead of `<`
    NonStrictInequality,
}

impl fmt::Display for Mutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mutation::None => "none",
            Mutation::FlipDivisibility => "flip-b",
            Mutation::NonStrictInequality => "flip-c",
        })
    }
}

impl std::str::FromStr for Mutation {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "none" => Ok(Mutation::None),
            "flip-b" => Ok(Mutation::FlipDivisibility),
            "flip-c" => Ok(Mutation::NonStrictInequality),
            _ => Err(format!(
                "unknown mutation `{s}` (expected none, flip-b, flip-c)"
            )),
        }
    }
}

/// Condition b: `e_M ∤ (v_M(I) - 1)`.
pub fn condition_b(e: u32, v: u32, mutation: Mutation) -> bool {
    let divides = (v - 1).is_multiple_of(e);
    match mutation {
        Mutation::FlipDivisibility => divides,
        _ => !divides,
    }
}

/// Condition c for one competitor `Q`: `(v_M - 1)/e_M < v_Q/e_Q`.
pub fn condition_c(v_m: u32, e_m: u32, v_q: u32, e_q: u32, mutation: Mutation) -> bool {
    let lhs = u64::from(v_m - 1) * u64::from(e_q);
    let rhs = u64::from(v_q) * u64::from(e_m);
    match mutation {
        Mutation::NonStrictInequality => lhs <= rhs,
        _ => lhs < rhs,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Splitting {
    Split,
    Inert,
    Ramified,
}

impl Splitting {
    pub fn from_kronecker(k: i32) -> Self {
        match k {
            1 => Splitting::Split,
            -1 => Splitting::Inert,
            _ => Splitting::Ramified,
        }
    }

    /// Ramification index of each prime above p.
    pub fn e(self) -> u32 {
        if self == Splitting::Ramified {
            2
        } else {
            1
        }
    }

    /// Residue degree of each prime above p.
    pub fn f(self) -> u32 {
        if self == Splitting::Inert {
            2
        } else {
            1
        }
    }

    pub fn prime_count(self) -> usize {
        if self == Splitting::Split {
            2
        } else {
            1
        }
    }
}

impl std::fmt::Display for Splitting {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Splitting::Split => "split",
            Splitting::Inert => "inert",
            Splitting::Ramified => "ramified",
        })
    }
}

/// A maximal ideal of `S` with its data over Z.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QPrime {
    pub p: u64,
    pub e: u32,
    pub f_res: u32,
    /// `r` when the prime is `(p, ω - r)`; `None` for inert primes.
    pub root: Option<u64>,
    pub ideal: IdealHandle,
}

impl QPrime {
    pub fn lattice(&self) -> &IntLattice {
        self.ideal.lattice()
    }
}

/// `I = ∏ M^{v_M}` over the primes with positive exponent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdealFactorization {
    factors: Vec<(QPrime, u32)>,
}

impl IdealFactorization {
    pub fn factors(&self) -> &[(QPrime, u32)] {
        &self.factors
    }

    /// The primes of `V(I)`.
    pub fn primes(&self) -> impl Iterator<Item = &QPrime> {
        self.factors.iter().map(|(m, _)| m)
    }

    pub fn valuation_at(&self, m: &QPrime) -> u32 {
        self.factors
            .iter()
            .find(|(q, _)| q == m)
            .map_or(0, |(_, v)| *v)
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn is_radical(&self) -> bool {
        self.factors.iter().all(|(_, v)| *v <= 1)
    }

    pub fn product(&self, ring: &RingTable) -> IdealHandle {
        let mut acc = ring.unit_ideal();
        for (m, v) in &self.factors {
            acc = ring.ideal_product(&acc, &ring.ideal_power(&m.ideal, *v));
        }
        acc
    }
}

/// The order `Z + fS` of conductor `fS`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadOrder {
    f: u64,
    ring: SubringHandle,
}

impl QuadOrder {
    pub fn conductor_index(&self) -> u64 {
        self.f
    }

    pub fn subring(&self) -> &SubringHandle {
        &self.ring
    }
}

/// The base ring `R` of a criterion: the rational integers (rank one,
/// never an order) or an order of `S`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Base {
    Integers(SubringHandle),
    Order(QuadOrder),
}

impl Base {
    pub fn subring(&self) -> &SubringHandle {
        match self {
            Base::Integers(r) => r,
            Base::Order(o) => &o.ring,
        }
    }

    pub fn lattice(&self) -> &IntLattice {
        self.subring().lattice()
    }

    /// Z and the maximal order are Dedekind; proper orders are not.
    pub fn is_dedekind(&self) -> bool {
        match self {
            Base::Integers(_) => true,
            Base::Order(o) => o.f == 1,
        }
    }

    pub fn label(&self) -> String {
        match self {
            Base::Integers(_) => "z".to_string(),
            Base::Order(o) => format!("order-f{}", o.f),
        }
    }
}

/// Sufficient-condition outcome of the two-branch criterion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Prop29Outcome {
    /// every `M ∈ V(I)` has `(I :_R M) ⊆ I`
    SufficientVia1,
    /// `R/(I∩R)` is a principal ideal ring and every `R + M ⊊ S`
    SufficientVia2,
    Inconclusive,
}

/// `Q(√d)` with its maximal order on the basis `1, ω`.
#[derive(Debug, Clone)]
pub struct QuadField {
    d: i64,
    disc: i64,
    ring: RingTable,
    bounds: Bounds,
}

impl QuadField {
    pub fn new(d: i64) -> Result<Self> {
        Self::with_bounds(d, Bounds::default())
    }

    pub fn with_bounds(d: i64, bounds: Bounds) -> Result<Self> {
        if d == 0 || d == 1 {
            return Err(QuadError::DegenerateD(d));
        }
        if !arith::is_squarefree(d) {
            return Err(QuadError::NotSquarefree(d));
        }
        let one_mod_4 = d.rem_euclid(4) == 1;
        let disc = if one_mod_4 { d } else { 4 * d };
        // ω² = (d-1)/4 + ω  or  ω² = d
        let ww = if one_mod_4 {
            vec![(d - 1) / 4, 1]
        } else {
            vec![d, 0]
        };
        let table = vec![vec![vec![1, 0], vec![0, 1]], vec![vec![0, 1], ww]];
        let ring = RingTable::from_i64(&table, &[1, 0])?;
        Ok(QuadField {
            d,
            disc,
            ring,
            bounds,
        })
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    pub fn discriminant(&self) -> i64 {
        self.disc
    }

    pub fn ring(&self) -> &RingTable {
        &self.ring
    }

    pub fn bounds(&self) -> Bounds {
        self.bounds
    }

    pub fn set_bounds(&mut self, bounds: Bounds) {
        self.bounds = bounds;
    }

    /// `a + bω`.
    pub fn element(&self, a: i64, b: i64) -> Element {
        Element::from_i64(&[a, b])
    }

    pub fn omega(&self) -> Element {
        self.element(0, 1)
    }

    pub fn sqrt_d(&self) -> Element {
        if self.d.rem_euclid(4) == 1 {
            self.element(-1, 2)
        } else {
            self.element(0, 1)
        }
    }

    /// `(b, c)` with `ω² + bω + c = 0`.
    pub fn min_poly(&self) -> (i64, i64) {
        if self.d.rem_euclid(4) == 1 {
            (-1, -(self.d - 1) / 4)
        } else {
            (0, -self.d)
        }
    }

    /// The ideal `nS`.
    pub fn scalar_ideal(&self, n: u64) -> IdealHandle {
        let n = i64::try_from(n).expect("scalar fits in i64");
        self.ring
            .ideal_from_generators(&[self.element(n, 0)])
            .expect("nonzero scalar")
    }

    pub fn ideal(&self, gens: &[Element]) -> Result<IdealHandle> {
        Ok(self.ring.ideal_from_generators(gens)?)
    }

    pub fn integers(&self) -> Base {
        Base::Integers(self.ring.integers())
    }

    pub fn order(&self, f: u64) -> Result<QuadOrder> {
        if f == 0 {
            return Err(QuadError::InvalidOrder(f));
        }
        let fb = BigInt::from(f);
        let lattice = IntLattice::span(
            2,
            vec![
                vec![BigInt::one(), BigInt::zero()],
                vec![BigInt::zero(), fb],
            ],
        );
        let ring = self.ring.subring(lattice)?;
        let cond = self.ring.conductor_of(&ring)?;
        if cond != self.scalar_ideal(f) {
            return Err(QuadError::CrossCheckMismatch(format!(
                "conductor of Z + {f}S is {cond}"
            )));
        }
        Ok(QuadOrder { f, ring })
    }

    pub fn order_base(&self, f: u64) -> Result<Base> {
        Ok(Base::Order(self.order(f)?))
    }

    /// Splitting type of `p` from the Kronecker symbol `(D/p)`.
    pub fn splitting(&self, p: u64) -> Result<Splitting> {
        if !arith::is_prime(p) {
            return Err(QuadError::NotPrime(p));
        }
        Ok(Splitting::from_kronecker(arith::kronecker(self.disc, p)))
    }

    /// Roots of the minimal polynomial of ω modulo p, ascending.
    fn roots_mod(&self, p: u64) -> Vec<u64> {
        let (b, c) = self.min_poly();
        if p == 2 {
            return (0..2u64)
                .filter(|&r| {
                    let r = r as i64;
                    (r * r + b * r + c).rem_euclid(2) == 0
                })
                .collect();
        }
        let Some(s) = arith::sqrt_mod(arith::residue(self.disc, p), p) else {
            return Vec::new();
        };
        let half = arith::inv_mod(2, p);
        let minus_b = arith::residue(-b, p);
        let mut roots: Vec<u64> = [s, (p - s) % p]
            .iter()
            .map(|&t| ((minus_b + t) % p) as u128 * half as u128 % p as u128)
            .map(|x| x as u64)
            .collect();
        roots.sort_unstable();
        roots.dedup();
        roots
    }

    /// Maximal ideals above `p`, in order of increasing root.
    pub fn primes_above(&self, p: u64) -> Result<Vec<QPrime>> {
        let split = self.splitting(p)?;
        let (e, f_res) = (split.e(), split.f());
        let pi = i64::try_from(p).expect("prime fits in i64");
        let primes = match split {
            Splitting::Inert => {
                vec![QPrime {
                    p,
                    e,
                    f_res,
                    root: None,
                    ideal: self.ideal(&[self.element(pi, 0)])?,
                }]
            }
            _ => {
                let roots = self.roots_mod(p);
                if roots.len() != split.prime_count() {
                    return Err(QuadError::CrossCheckMismatch(format!(
                        "found {} roots mod {p} for a {split} prime",
                        roots.len()
                    )));
                }
                roots
                    .into_iter()
                    .map(|r| {
                        let ideal =
                            self.ideal(&[self.element(pi, 0), self.element(-(r as i64), 1)])?;
                        Ok(QPrime {
                            p,
                            e,
                            f_res,
                            root: Some(r),
                            ideal,
                        })
                    })
                    .collect::<Result<Vec<_>>>()?
            }
        };
        for m in &primes {
            let want = BigInt::from(p).pow(m.f_res);
            if m.ideal.index() != want {
                return Err(QuadError::CrossCheckMismatch(format!(
                    "prime {} has index {}",
                    m.ideal,
                    m.ideal.index()
                )));
            }
        }
        Ok(primes)
    }

    /// The `k`-th prime above `p`, counting from 1.
    pub fn prime(&self, p: u64, k: usize) -> Result<QPrime> {
        let mut primes = self.primes_above(p)?;
        if k == 0 || k > primes.len() {
            return Err(QuadError::NoSuchPrime { p, k });
        }
        Ok(primes.swap_remove(k - 1))
    }

    /// Largest `l` with `I ⊆ M^l`.
    pub fn valuation(&self, m: &QPrime, i: &IdealHandle) -> u32 {
        let mut l = 0;
        let mut power = m.ideal.clone();
        while i.is_subset_of(&power) {
            l += 1;
            power = self.ring.ideal_product(&power, &m.ideal);
        }
        l
    }

    pub fn factor(&self, i: &IdealHandle) -> Result<IdealFactorization> {
        let index = i.index();
        let bound = self.bounds.factor_bound;
        let ps =
            arith::trial_factor(&index, bound).map_err(|_| QuadError::FactorBoundExceeded {
                index: index.clone(),
                bound,
            })?;
        let mut factors = Vec::new();
        for (p, _) in ps {
            for m in self.primes_above(p)? {
                let v = self.valuation(&m, i);
                if v > 0 {
                    factors.push((m, v));
                }
            }
        }
        let fact = IdealFactorization { factors };
        let norm: BigInt = fact
            .factors
            .iter()
            .map(|(m, v)| BigInt::from(m.p).pow(m.f_res * v))
            .product();
        if norm != index || fact.product(&self.ring) != *i {
            return Err(QuadError::CrossCheckMismatch(format!(
                "factorization of {i} does not multiply back"
            )));
        }
        Ok(fact)
    }

    /// `⌈l / e_M⌉`, the exponent of `p` in `M^l ∩ Z`.
    pub fn exponent_formula(&self, m: &QPrime, l: u32) -> u32 {
        l.div_ceil(m.e)
    }

    /// Exponent of `p` in `M^l ∩ Z`, computed on lattices.
    pub fn exponent_direct(&self, m: &QPrime, l: u32) -> Result<u32> {
        let power = self.ring.ideal_power(&m.ideal, l);
        self.integer_exponent(power.lattice(), m.p)
    }

    /// `⌈l / e_M⌉` after confirming it against the lattice computation.
    pub fn exponent_formula_checked(&self, m: &QPrime, l: u32) -> Result<u32> {
        let formula = self.exponent_formula(m, l);
        let direct = self.exponent_direct(m, l)?;
        if formula != direct {
            return Err(QuadError::CrossCheckMismatch(format!(
                "exponent of {} in M^{l} ∩ Z: formula {formula}, lattice {direct}",
                m.p
            )));
        }
        Ok(formula)
    }

    /// Exponent of `p` in the generator of `L ∩ Z`.
    pub fn integer_exponent(&self, l: &IntLattice, p: u64) -> Result<u32> {
        let contracted = l.intersect(self.ring.integers().lattice())?;
        let gen = contracted
            .basis()
            .first()
            .ok_or(LatticeError::RankDeficient { rank: 0, dim: 1 })?;
        Ok(arith::p_valuation(&gen[0], p))
    }

    /// `L ∩ R`.
    pub fn contract(&self, base: &Base, l: &IntLattice) -> Result<IntLattice> {
        Ok(l.intersect(base.lattice())?)
    }

    /// `e_M = v_M((M ∩ R)S)`.
    pub fn ramification_over(&self, base: &Base, m: &QPrime) -> Result<u32> {
        let contracted = self.contract(base, m.lattice())?;
        let extended = self.ring.extend_to_ideal(&contracted)?;
        Ok(self.valuation(m, &extended))
    }

    /// `dim_{R/(M∩R)} (S/M)`, from `|S/M| = |R/(M∩R)|^dim`.
    pub fn residue_degree_over(&self, base: &Base, m: &QPrime) -> Result<u32> {
        let contracted = self.contract(base, m.lattice())?;
        let q = base.lattice().relative_index(&contracted)?;
        let target = m.ideal.index();
        exact_log(&q, &target).ok_or_else(|| {
            QuadError::CrossCheckMismatch(format!(
                "|S/M| = {target} is not a power of |R/(M∩R)| = {q}"
            ))
        })
    }

    fn sum_is_whole(&self, base: &Base, m: &IntLattice) -> Result<bool> {
        Ok(base.lattice().sum(m)? == self.ring.whole())
    }

    /// `(I :_R M)` and an element of it outside `I`, if any.
    fn colon_excess(
        &self,
        base: &Base,
        i: &IdealHandle,
        m: &IntLattice,
    ) -> Result<(IntLattice, Option<Element>)> {
        let colon = self.ring.colon(i.lattice(), base.lattice(), m)?;
        let outside = colon
            .basis()
            .iter()
            .find(|v| !i.lattice().contains(v).unwrap_or(true))
            .cloned();
        Ok((colon, outside.map(Element)))
    }

    /// Whether `(I :_R M) ⊆ I`, by the exponent formula over a Dedekind
    /// base, confirmed against the lattice colon.
    pub fn colon_condition(
        &self,
        m: &QPrime,
        i: &IdealHandle,
        factz: &IdealFactorization,
        base: &Base,
    ) -> Result<bool> {
        if !base.is_dedekind() {
            return Err(QuadError::BaseNotDedekind(base.label()));
        }
        let v_m = factz.valuation_at(m);
        if v_m == 0 {
            return Err(QuadError::NotMaximal(format!(
                "{} does not contain the ideal",
                m.ideal
            )));
        }
        let e_m = self.ramification_over(base, m)?;
        let below = self.contract(base, m.lattice())?;
        let mut formula = condition_b(e_m, v_m, Mutation::None);
        if !formula {
            for (q, v_q) in factz.factors() {
                if q == m || self.contract(base, q.lattice())? != below {
                    continue;
                }
                let e_q = self.ramification_over(base, q)?;
                if condition_c(v_m, e_m, *v_q, e_q, Mutation::None) {
                    formula = true;
                    break;
                }
            }
        }
        let (_, outside) = self.colon_excess(base, i, m.lattice())?;
        let direct = outside.is_none();
        if direct != formula {
            return Err(QuadError::CrossCheckMismatch(format!(
                "(I :_R M) ⊆ I for I = {i}, M = {}: formula says {formula}, lattices say {direct}",
                m.ideal
            )));
        }
        Ok(formula)
    }

    /// Decision over the rational integers via conditions a, b, c.
    pub fn cor212_verdict(&self, i: &IdealHandle) -> Result<Verdict> {
        self.cor212_verdict_with(i, Mutation::None)
    }

    pub fn cor212_verdict_with(&self, i: &IdealHandle, mutation: Mutation) -> Result<Verdict> {
        let factz = self.factor(i)?;
        let base = self.integers();
        let mut primes = Vec::new();
        let mut failing: Option<&QPrime> = None;
        for (m, v) in factz.factors() {
            let (e, f) = (m.e, m.f_res);
            let condition = if f >= 2 {
                Some(Condition::A)
            } else if condition_b(e, *v, mutation) {
                Some(Condition::B)
            } else if factz
                .factors()
                .iter()
                .any(|(q, v_q)| q != m && q.p == m.p && condition_c(*v, e, *v_q, q.e, mutation))
            {
                Some(Condition::C)
            } else {
                None
            };
            if condition.is_none() && failing.is_none() {
                failing = Some(m);
            }
            primes.push(prime_row(m, e, f, *v, condition));
        }
        let witness = match failing {
            None => None,
            Some(m) => Some(self.failing_prime_witness(&base, i, m)?),
        };
        Ok(Verdict {
            criterion: Criterion::Cor212,
            decision: Decision::from_bool(failing.is_none()),
            primes,
            witness,
            note: None,
        })
    }

    /// `x ∈ (I :_R M) \ I` when one exists, else the prime itself.
    fn failing_prime_witness(&self, base: &Base, i: &IdealHandle, m: &QPrime) -> Result<Witness> {
        let (_, outside) = self.colon_excess(base, i, m.lattice())?;
        Ok(match outside {
            Some(x) => Witness::Element {
                coords: x.0,
                note: format!(
                    "R + M = S for M = {} and this element lies in (I :_R M) but not in I",
                    m.ideal
                ),
            },
            None => Witness::Lattice {
                basis: m.lattice().basis().to_vec(),
                note: "maximal ideal meeting no local condition".to_string(),
            },
        })
    }

    /// Three routes to whether a maximal ideal is an R-conductor ideal:
    /// `R + M ≠ S`, non-cyclicity of `S/M` over `R`, and the residue degree
    /// of `M` over `R`. They must agree.
    pub fn prop26_verdict(&self, base: &Base, m: &QPrime) -> Result<Verdict> {
        let proper = !self.sum_is_whole(base, m.lattice())?;
        let cyclic =
            self.ring
                .is_cyclic_quotient(base.subring(), &m.ideal, self.bounds.coset_bound)?;
        let f = self.residue_degree_over(base, m)?;
        let by_degree = f >= 2;
        if proper == cyclic || proper != by_degree {
            return Err(QuadError::CrossCheckMismatch(format!(
                "maximal ideal {}: R+M≠S is {proper}, S/M cyclic is {cyclic}, residue degree {f}",
                m.ideal
            )));
        }
        let e = self.ramification_over(base, m).unwrap_or(m.e);
        let witness = if proper {
            None
        } else {
            let gen =
                self.ring
                    .cyclic_generator(base.subring(), &m.ideal, self.bounds.coset_bound)?;
            gen.map(|x| Witness::Element {
                coords: x.0,
                note: "generates S/M as an R-module".to_string(),
            })
        };
        Ok(Verdict {
            criterion: Criterion::Prop26,
            decision: Decision::from_bool(proper),
            primes: vec![prime_row(
                m,
                e,
                f,
                1,
                proper.then_some(Condition::ProperSum),
            )],
            witness,
            note: None,
        })
    }

    /// Non-principal maximal ideal of `R/N`, if `R/N` is not a PIR.
    ///
    /// A finite commutative ring is a principal ideal ring iff each maximal
    /// ideal `m` has `dim_{R/m} m/(m² + N) ≤ 1`.
    pub fn pir_obstruction(
        &self,
        base: &Base,
        n: &IntLattice,
    ) -> Result<Option<(IntLattice, u32)>> {
        let Base::Order(_) = base else {
            return Ok(None);
        };
        let r = base.lattice();
        let size = r.relative_index(n)?;
        let bound = self.bounds.factor_bound;
        let ps = arith::trial_factor(&size, bound).map_err(|_| QuadError::FactorBoundExceeded {
            index: size.clone(),
            bound,
        })?;
        let mut seen: Vec<IntLattice> = Vec::new();
        for (p, _) in ps {
            for q in self.primes_above(p)? {
                let m = q.lattice().intersect(r)?;
                if seen.contains(&m) || !n.is_subset_of(&m)? {
                    continue;
                }
                let residue = r.relative_index(&m)?;
                let m2n = self.ring.lattice_product(&m, &m).sum(n)?;
                let quotient = m.relative_index(&m2n)?;
                let dim = exact_log(&residue, &quotient).ok_or_else(|| {
                    QuadError::CrossCheckMismatch(format!(
                        "[m : m²+N] = {quotient} is not a power of {residue}"
                    ))
                })?;
                if dim > 1 {
                    return Ok(Some((m, dim)));
                }
                seen.push(m);
            }
        }
        Ok(None)
    }

    /// Whether `R/N` is a principal ideal ring.
    pub fn is_pir_quotient(&self, base: &Base, n: &IntLattice) -> Result<bool> {
        Ok(self.pir_obstruction(base, n)?.is_none())
    }

    /// Per-prime rows for the test `R + M ⊊ S` or `(I :_R M) ⊆ I`.
    fn local_proper_or_colon(
        &self,
        base: &Base,
        i: &IdealHandle,
        factz: &IdealFactorization,
    ) -> Result<(Vec<PrimeReport>, Option<Witness>)> {
        let mut rows = Vec::new();
        let mut witness = None;
        for (m, v) in factz.factors() {
            let condition = if !self.sum_is_whole(base, m.lattice())? {
                Some(Condition::ProperSum)
            } else if self.colon_excess(base, i, m.lattice())?.1.is_none() {
                Some(Condition::ColonContained)
            } else {
                None
            };
            if condition.is_none() && witness.is_none() {
                witness = Some(self.failing_prime_witness(base, i, m)?);
            }
            rows.push(self.row_over(base, m, *v, condition)?);
        }
        Ok((rows, witness))
    }

    fn row_over(
        &self,
        base: &Base,
        m: &QPrime,
        v: u32,
        condition: Option<Condition>,
    ) -> Result<PrimeReport> {
        let e = self.ramification_over(base, m)?;
        let f = self.residue_degree_over(base, m)?;
        Ok(prime_row(m, e, f, v, condition))
    }

    fn pir_failure(&self, criterion: Criterion, m: IntLattice, dim: u32, what: &str) -> Verdict {
        Verdict {
            criterion,
            decision: Decision::HypothesisFailed,
            primes: Vec::new(),
            witness: Some(Witness::Lattice {
                basis: m.basis().to_vec(),
                note: format!("maximal ideal m of R with dim m/(m² + N) = {dim}, so R/N is not a principal ideal ring"),
            }),
            note: Some(format!("{what} is not a principal ideal ring")),
        }
    }

    /// Decision under the hypothesis that `R/(I∩R)` is a principal ideal
    /// ring (`S/I` is finite, hence Noetherian).
    pub fn thm27_verdict(&self, base: &Base, i: &IdealHandle) -> Result<Verdict> {
        let below = self.contract(base, i.lattice())?;
        if let Some((m, dim)) = self.pir_obstruction(base, &below)? {
            return Ok(self.pir_failure(Criterion::Thm27, m, dim, "R/(I ∩ R)"));
        }
        let factz = self.factor(i)?;
        let (primes, witness) = self.local_proper_or_colon(base, i, &factz)?;
        Ok(Verdict {
            criterion: Criterion::Thm27,
            decision: Decision::from_bool(witness.is_none()),
            primes,
            witness,
            note: None,
        })
    }

    /// Conductor precheck `(R :_S S) ⊆ I`, then the local test.
    pub fn cor28_verdict(&self, base: &Base, i: &IdealHandle) -> Result<Verdict> {
        let Base::Order(order) = base else {
            return Ok(Verdict {
                criterion: Criterion::Cor28,
                decision: Decision::HypothesisFailed,
                primes: Vec::new(),
                witness: None,
                note: Some("S/(R :_S S) is infinite for R = Z".to_string()),
            });
        };
        let conductor = self.ring.conductor_of(&order.ring)?;
        if let Some(x) = conductor
            .lattice()
            .basis()
            .iter()
            .find(|v| !i.lattice().contains(v).unwrap_or(true))
        {
            return Ok(Verdict {
                criterion: Criterion::Cor28,
                decision: Decision::NotConductor,
                primes: Vec::new(),
                witness: Some(Witness::Element {
                    coords: x.clone(),
                    note: format!("lies in (R :_S S) = {conductor} but not in I"),
                }),
                note: Some("(R :_S S) is not contained in I".to_string()),
            });
        }
        if let Some((m, dim)) = self.pir_obstruction(base, conductor.lattice())? {
            return Ok(self.pir_failure(Criterion::Cor28, m, dim, "R/(R :_S S)"));
        }
        let factz = self.factor(i)?;
        let (primes, witness) = self.local_proper_or_colon(base, i, &factz)?;
        Ok(Verdict {
            criterion: Criterion::Cor28,
            decision: Decision::from_bool(witness.is_none()),
            primes,
            witness,
            note: None,
        })
    }

    /// Two sufficient conditions; never a negative claim.
    pub fn prop29_sufficient(&self, base: &Base, i: &IdealHandle) -> Result<Prop29Outcome> {
        let factz = self.factor(i)?;
        let mut all_colon = true;
        let mut all_proper = true;
        for m in factz.primes() {
            if all_colon && self.colon_excess(base, i, m.lattice())?.1.is_some() {
                all_colon = false;
            }
            if all_proper && self.sum_is_whole(base, m.lattice())? {
                all_proper = false;
            }
        }
        if all_colon {
            return Ok(Prop29Outcome::SufficientVia1);
        }
        if all_proper {
            let below = self.contract(base, i.lattice())?;
            if self.is_pir_quotient(base, &below)? {
                return Ok(Prop29Outcome::SufficientVia2);
            }
        }
        Ok(Prop29Outcome::Inconclusive)
    }

    pub fn prop29_verdict(&self, base: &Base, i: &IdealHandle) -> Result<Verdict> {
        let outcome = self.prop29_sufficient(base, i)?;
        let factz = self.factor(i)?;
        let primes = factz
            .factors()
            .iter()
            .map(|(m, v)| self.row_over(base, m, *v, None))
            .collect::<Result<Vec<_>>>()?;
        let (decision, note) = match outcome {
            Prop29Outcome::SufficientVia1 => (
                Decision::Conductor,
                "sufficient: (I :_R M) ⊆ I for every M ⊇ I",
            ),
            Prop29Outcome::SufficientVia2 => (
                Decision::Conductor,
                "sufficient: R/(I∩R) is a principal ideal ring and R + M ⊊ S for every M ⊇ I",
            ),
            Prop29Outcome::Inconclusive => (
                Decision::HypothesisFailed,
                "neither sufficient condition holds",
            ),
        };
        Ok(Verdict {
            criterion: Criterion::Prop29,
            decision,
            primes,
            witness: None,
            note: Some(note.to_string()),
        })
    }

    /// Radical ideals over a one-dimensional Noetherian base: conductor iff
    /// each `M ⊇ I` has residue degree ≥ 2 over `R` or `(I :_R M) ⊆ I`.
    pub fn cor213_verdict(&self, base: &Base, i: &IdealHandle) -> Result<Verdict> {
        let factz = self.factor(i)?;
        if let Some((m, v)) = factz.factors().iter().find(|(_, v)| *v > 1) {
            return Err(QuadError::RadicalRequired { p: m.p, v: *v });
        }
        let mut primes = Vec::new();
        let mut witness = None;
        for (m, v) in factz.factors() {
            let f = self.residue_degree_over(base, m)?;
            let condition = if f >= 2 {
                Some(Condition::A)
            } else if self.colon_excess(base, i, m.lattice())?.1.is_none() {
                Some(Condition::ColonContained)
            } else {
                None
            };
            if condition.is_none() && witness.is_none() {
                witness = Some(self.failing_prime_witness(base, i, m)?);
            }
            let e = self.ramification_over(base, m)?;
            primes.push(prime_row(m, e, f, *v, condition));
        }
        Ok(Verdict {
            criterion: Criterion::Cor213,
            decision: Decision::from_bool(witness.is_none()),
            primes,
            witness,
            note: None,
        })
    }

    /// The lattice oracle `(R+I :_S S) = I`, reported as a verdict.
    pub fn brute_verdict(&self, base: &Base, i: &IdealHandle) -> Result<Verdict> {
        let check = self.ring.is_conductor_bruteforce(base.subring(), i)?;
        let factz = self.factor(i)?;
        let primes = factz
            .factors()
            .iter()
            .map(|(m, v)| self.row_over(base, m, *v, None))
            .collect::<Result<Vec<_>>>()?;
        let witness = check.witness.map(|x| Witness::Element {
            coords: x.0,
            note: "lies in (R + I :_S S) but not in I".to_string(),
        });
        let note = if check.is_conductor {
            format!("realized by V = R + I = {}", check.realizing.lattice())
        } else {
            format!("(R + I :_S S) = {} strictly contains I", check.conductor)
        };
        Ok(Verdict {
            criterion: Criterion::Brute,
            decision: Decision::from_bool(check.is_conductor),
            primes,
            witness,
            note: Some(note),
        })
    }

    /// The cheapest complete criterion for this base: cor212 over Z, cor213
    /// for radical ideals over an order, the oracle otherwise.
    pub fn default_criterion(&self, base: &Base, i: &IdealHandle) -> Result<Criterion> {
        Ok(match base {
            Base::Integers(_) => Criterion::Cor212,
            Base::Order(_) if self.factor(i)?.is_radical() => Criterion::Cor213,
            Base::Order(_) => Criterion::Brute,
        })
    }

    /// Dispatch by criterion. `prop26` requires `i` to be maximal.
    pub fn verdict(&self, criterion: Criterion, base: &Base, i: &IdealHandle) -> Result<Verdict> {
        match criterion {
            Criterion::Cor212 => {
                if !matches!(base, Base::Integers(_)) {
                    return Err(QuadError::BaseNotDedekind(format!(
                        "cor212 runs over Z only, got {}",
                        base.label()
                    )));
                }
                self.cor212_verdict(i)
            }
            Criterion::Thm27 => self.thm27_verdict(base, i),
            Criterion::Cor28 => self.cor28_verdict(base, i),
            Criterion::Cor213 => self.cor213_verdict(base, i),
            Criterion::Prop29 => self.prop29_verdict(base, i),
            Criterion::Brute => self.brute_verdict(base, i),
            Criterion::Prop26 => {
                let factz = self.factor(i)?;
                match factz.factors() {
                    [(m, 1)] => self.prop26_verdict(base, m),
                    _ => Err(QuadError::NotMaximal(format!("{i} is not a maximal ideal"))),
                }
            }
        }
    }
}

fn prime_row(m: &QPrime, e: u32, f: u32, v: u32, condition: Option<Condition>) -> PrimeReport {
    PrimeReport {
        p: m.p,
        basis: m.lattice().basis().to_vec(),
        e,
        f,
        v,
        condition,
    }
}

/// `k` with `base^k = n`, if it exists.
fn exact_log(base: &BigInt, n: &BigInt) -> Option<u32> {
    if n.is_one() {
        return Some(0);
    }
    if base <= &BigInt::one() {
        return None;
    }
    let mut acc = BigInt::one();
    let mut k = 0;
    while &acc < n {
        acc *= base;
        k += 1;
    }
    (&acc == n).then_some(k)
}

impl std::fmt::Display for QuadField {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Q(sqrt({})) with D = {}", self.d, self.disc)
    }
}

/// `p` as `u64` for small rational primes read from lattices.
pub fn small_prime(n: &BigInt) -> Option<u64> {
    n.to_u64().filter(|&p| arith::is_prime(p))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lat(rows: &[Vec<i64>]) -> IntLattice {
        IntLattice::span_i64(2, rows)
    }

    #[test]
    fn make_field() {
        let g = QuadField::new(-1).unwrap();
        assert_eq!(g.discriminant(), -4);
        assert_eq!(g.ring().mul(&g.omega(), &g.omega()), g.element(-1, 0));
        let f = QuadField::new(5).unwrap();
        assert_eq!(f.discriminant(), 5);
        assert_eq!(f.ring().mul(&f.omega(), &f.omega()), f.element(1, 1));
        assert_eq!(f.ring().mul(&f.sqrt_d(), &f.sqrt_d()), f.element(5, 0));
        assert_eq!(
            QuadField::new(12).unwrap_err(),
            QuadError::NotSquarefree(12)
        );
        assert_eq!(QuadField::new(1).unwrap_err(), QuadError::DegenerateD(1));
        assert_eq!(QuadField::new(0).unwrap_err(), QuadError::DegenerateD(0));
        assert_eq!(QuadField::new(-3).unwrap().discriminant(), -3);
        assert_eq!(QuadField::new(2).unwrap().discriminant(), 8);
    }

    #[test]
    fn splitting_examples() {
        let g = QuadField::new(-1).unwrap();
        assert_eq!(g.splitting(5).unwrap(), Splitting::Split);
        assert_eq!(g.splitting(2).unwrap(), Splitting::Ramified);
        assert_eq!(g.splitting(3).unwrap(), Splitting::Inert);
        assert_eq!(
            QuadField::new(5).unwrap().splitting(2).unwrap(),
            Splitting::Inert
        );
        assert_eq!(g.splitting(9), Err(QuadError::NotPrime(9)));
        // d = -7 ≡ 1 mod 4: 2 splits although -7 is not a square mod 8 naively
        assert_eq!(
            QuadField::new(-7).unwrap().splitting(2).unwrap(),
            Splitting::Split
        );
    }

    #[test]
    fn primes_above_examples() {
        let g = QuadField::new(-1).unwrap();
        let five = g.primes_above(5).unwrap();
        assert_eq!(five.len(), 2);
        assert_eq!(
            five[0].ideal,
            g.ideal(&[g.element(5, 0), g.element(-2, 1)]).unwrap()
        );
        assert_eq!(
            five[1].ideal,
            g.ideal(&[g.element(5, 0), g.element(-3, 1)]).unwrap()
        );
        assert!(five.iter().all(|m| m.ideal.index() == BigInt::from(5)));

        let two = g.primes_above(2).unwrap();
        assert_eq!(two.len(), 1);
        assert_eq!((two[0].e, two[0].f_res), (2, 1));
        assert_eq!(two[0].ideal, g.ideal(&[g.element(1, 1)]).unwrap());
        assert_eq!(two[0].ideal.index(), BigInt::from(2));

        let f = QuadField::new(5).unwrap();
        let two = f.primes_above(2).unwrap();
        assert_eq!(two.len(), 1);
        assert_eq!(two[0].ideal, f.scalar_ideal(2));
        assert_eq!(two[0].ideal.index(), BigInt::from(4));
    }

    #[test]
    fn fundamental_identity() {
        for d in [-1, 2, -2, 3, 5, -5, 13, -23, -3, 6] {
            let k = QuadField::new(d).unwrap();
            for p in arith::primes_up_to(60) {
                let ps = k.primes_above(p).unwrap();
                let total: u32 = ps.iter().map(|m| m.e * m.f_res).sum();
                assert_eq!(total, 2, "d={d} p={p}");
                // each prime ideal contains p and is maximal: S/M has prime-power size
                for m in &ps {
                    assert!(m.ideal.contains(&k.element(p as i64, 0)));
                    // e agrees with the lattice computation
                    assert_eq!(k.ramification_over(&k.integers(), m).unwrap(), m.e);
                    assert_eq!(k.residue_degree_over(&k.integers(), m).unwrap(), m.f_res);
                }
            }
        }
    }

    #[test]
    fn valuation_examples() {
        let g = QuadField::new(-1).unwrap();
        let m2 = g.prime(2, 1).unwrap();
        assert_eq!(g.valuation(&m2, &g.ring().unit_ideal()), 0);
        assert_eq!(g.valuation(&m2, &g.scalar_ideal(4)), 4);
        let m5 = g.prime(5, 1).unwrap();
        assert_eq!(g.valuation(&m5, &g.scalar_ideal(5)), 1);
    }

    #[test]
    fn factor_examples() {
        let g = QuadField::new(-1).unwrap();
        let f12 = g.factor(&g.scalar_ideal(12)).unwrap();
        let m2 = g.prime(2, 1).unwrap();
        let m3 = g.prime(3, 1).unwrap();
        assert_eq!(f12.factors(), &[(m2, 4), (m3, 1)]);
        assert!(g.factor(&g.ring().unit_ideal()).unwrap().is_empty());
        let p = g.prime(5, 1).unwrap();
        let sq = g.ring().ideal_power(&p.ideal, 2);
        let fs = g.factor(&sq).unwrap();
        assert_eq!(fs.factors(), &[(p.clone(), 2)]);
        assert_eq!(fs.valuation_at(&g.prime(5, 2).unwrap()), 0);

        let mut tight = g.clone();
        tight.set_bounds(Bounds {
            factor_bound: 3,
            ..Bounds::default()
        });
        assert!(matches!(
            tight.factor(&p.ideal),
            Err(QuadError::FactorBoundExceeded { .. })
        ));
    }

    #[test]
    fn exponent_formula_examples() {
        let g = QuadField::new(-1).unwrap();
        let m2 = g.prime(2, 1).unwrap();
        assert_eq!(g.exponent_formula_checked(&m2, 0).unwrap(), 0);
        assert_eq!(g.exponent_formula_checked(&m2, 3).unwrap(), 2);
        let m5 = g.prime(5, 1).unwrap();
        assert_eq!(g.exponent_formula_checked(&m5, 2).unwrap(), 2);
        // M^3 ∩ Z = 4Z
        let cube = g.ring().ideal_power(&m2.ideal, 3);
        let below = cube
            .lattice()
            .intersect(g.ring().integers().lattice())
            .unwrap();
        assert_eq!(below, IntLattice::span_i64(2, &[vec![4, 0]]));
    }

    #[test]
    fn colon_condition_examples() {
        let g = QuadField::new(-1).unwrap();
        let z = g.integers();
        let m2 = g.prime(2, 1).unwrap();
        let two = g.scalar_ideal(2);
        assert!(g
            .colon_condition(&m2, &two, &g.factor(&two).unwrap(), &z)
            .unwrap());
        assert!(!g
            .colon_condition(&m2, &m2.ideal, &g.factor(&m2.ideal).unwrap(), &z)
            .unwrap());
        let five = g.scalar_ideal(5);
        let m5 = g.prime(5, 1).unwrap();
        assert!(g
            .colon_condition(&m5, &five, &g.factor(&five).unwrap(), &z)
            .unwrap());
        // over S itself (I :_S M) is never inside I
        let s = g.order_base(1).unwrap();
        assert!(!g
            .colon_condition(&m5, &five, &g.factor(&five).unwrap(), &s)
            .unwrap());
        let r2 = g.order_base(2).unwrap();
        assert!(matches!(
            g.colon_condition(&m5, &five, &g.factor(&five).unwrap(), &r2),
            Err(QuadError::BaseNotDedekind(_))
        ));
    }

    #[test]
    fn cor212_examples() {
        let g = QuadField::new(-1).unwrap();
        let v = g.cor212_verdict(&g.scalar_ideal(3)).unwrap();
        assert_eq!(v.decision, Decision::Conductor);
        assert_eq!(v.primes[0].condition, Some(Condition::A));
        assert_eq!(v.primes[0].p, 3);

        let m2 = g.prime(2, 1).unwrap();
        let v = g.cor212_verdict(&m2.ideal).unwrap();
        assert_eq!(v.decision, Decision::NotConductor);
        assert!(matches!(v.witness, Some(Witness::Element { .. })));

        let cube = g.ring().ideal_power(&m2.ideal, 3);
        assert_eq!(
            g.cor212_verdict(&cube).unwrap().decision,
            Decision::NotConductor
        );
        let sq = g.ring().ideal_power(&m2.ideal, 2);
        let v = g.cor212_verdict(&sq).unwrap();
        assert_eq!(v.decision, Decision::Conductor);
        assert_eq!(v.primes[0].condition, Some(Condition::B));

        let v = g.cor212_verdict(&g.scalar_ideal(5)).unwrap();
        assert_eq!(v.decision, Decision::Conductor);
        assert!(v.primes.iter().all(|r| r.condition == Some(Condition::C)));
    }

    #[test]
    fn prop26_examples() {
        let g = QuadField::new(-1).unwrap();
        let z = g.integers();
        let v = g.prop26_verdict(&z, &g.prime(3, 1).unwrap()).unwrap();
        assert_eq!(v.decision, Decision::Conductor);
        assert_eq!(v.primes[0].f, 2);
        let v = g.prop26_verdict(&z, &g.prime(5, 1).unwrap()).unwrap();
        assert_eq!(v.decision, Decision::NotConductor);
        assert!(v.witness.is_some());

        let k = QuadField::new(5).unwrap();
        let r = k.order_base(2).unwrap();
        let m = k.prime(2, 1).unwrap();
        assert_eq!(r.lattice().sum(m.lattice()).unwrap(), *r.lattice());
        assert_eq!(
            k.prop26_verdict(&r, &m).unwrap().decision,
            Decision::Conductor
        );
    }

    #[test]
    fn pir_examples() {
        let k = QuadField::new(5).unwrap();
        let r = k.order_base(2).unwrap();
        let four = k.scalar_ideal(4);
        let n = k.contract(&r, four.lattice()).unwrap();
        assert!(!k.is_pir_quotient(&r, &n).unwrap());
        let two = k.scalar_ideal(2);
        let n = k.contract(&r, two.lattice()).unwrap();
        assert!(k.is_pir_quotient(&r, &n).unwrap());
        let z = k.integers();
        let n = k.contract(&z, four.lattice()).unwrap();
        assert!(k.is_pir_quotient(&z, &n).unwrap());
    }

    #[test]
    fn thm27_examples() {
        let g = QuadField::new(-1).unwrap();
        assert_eq!(
            g.thm27_verdict(&g.integers(), &g.scalar_ideal(2))
                .unwrap()
                .decision,
            Decision::Conductor
        );
        assert_eq!(
            g.thm27_verdict(&g.integers(), &g.ring().unit_ideal())
                .unwrap()
                .decision,
            Decision::Conductor
        );
        let k = QuadField::new(5).unwrap();
        let r = k.order_base(2).unwrap();
        let v = k.thm27_verdict(&r, &k.scalar_ideal(4)).unwrap();
        assert_eq!(v.decision, Decision::HypothesisFailed);
        assert!(matches!(v.witness, Some(Witness::Lattice { .. })));
    }

    #[test]
    fn cor28_examples() {
        let k = QuadField::new(5).unwrap();
        let r = k.order_base(2).unwrap();
        let v = k.cor28_verdict(&r, &k.scalar_ideal(4)).unwrap();
        assert_eq!(v.decision, Decision::NotConductor);
        assert!(v.note.unwrap().contains("not contained"));
        assert_eq!(
            k.cor28_verdict(&r, &k.scalar_ideal(2)).unwrap().decision,
            Decision::Conductor
        );
        assert_eq!(
            k.cor28_verdict(&k.integers(), &k.scalar_ideal(2))
                .unwrap()
                .decision,
            Decision::HypothesisFailed
        );
    }

    #[test]
    fn prop29_examples() {
        let g = QuadField::new(-1).unwrap();
        let z = g.integers();
        assert_eq!(
            g.prop29_sufficient(&z, &g.scalar_ideal(3)).unwrap(),
            Prop29Outcome::SufficientVia2
        );
        let m2 = g.prime(2, 1).unwrap();
        assert_eq!(
            g.prop29_sufficient(&z, &m2.ideal).unwrap(),
            Prop29Outcome::Inconclusive
        );
        let k = QuadField::new(5).unwrap();
        let r = k.order_base(2).unwrap();
        assert_eq!(
            k.prop29_sufficient(&r, &k.scalar_ideal(2)).unwrap(),
            Prop29Outcome::SufficientVia2
        );
    }

    #[test]
    fn cor213_examples() {
        let k = QuadField::new(5).unwrap();
        let r = k.order_base(2).unwrap();
        let v = k.cor213_verdict(&r, &k.scalar_ideal(2)).unwrap();
        assert_eq!(v.decision, Decision::Conductor);
        assert_eq!(v.primes[0].f, 2);
        let root5 = k.ideal(&[k.sqrt_d()]).unwrap();
        let v = k.cor213_verdict(&r, &root5).unwrap();
        assert_eq!(v.decision, Decision::NotConductor);
        assert_eq!(v.primes[0].f, 1);
        let g = QuadField::new(-1).unwrap();
        assert!(matches!(
            g.cor213_verdict(&g.integers(), &g.scalar_ideal(4)),
            Err(QuadError::RadicalRequired { p: 2, v: 4 })
        ));
    }

    #[test]
    fn orders() {
        let k = QuadField::new(5).unwrap();
        let o = k.order(2).unwrap();
        // Z[sqrt 5] = span(1, sqrt 5)
        assert_eq!(o.subring().lattice(), &lat(&[vec![1, 0], vec![-1, 2]]));
        assert_eq!(k.order(0), Err(QuadError::InvalidOrder(0)));
        assert_eq!(k.order(1).unwrap().subring(), &k.ring().whole_subring());
    }

    #[test]
    fn mutation_parsing() {
        assert_eq!(
            "flip-b".parse::<Mutation>().unwrap(),
            Mutation::FlipDivisibility
        );
        assert_eq!(
            "flip-c".parse::<Mutation>().unwrap(),
            Mutation::NonStrictInequality
        );
        assert!("x".parse::<Mutation>().is_err());
        assert!(condition_b(2, 2, Mutation::None));
        assert!(!condition_b(2, 2, Mutation::FlipDivisibility));
        assert!(!condition_c(2, 1, 1, 1, Mutation::None));
        assert!(condition_c(2, 1, 1, 1, Mutation::NonStrictInequality));
    }

    #[test]
    fn exact_logs() {
        assert_eq!(exact_log(&BigInt::from(2), &BigInt::from(8)), Some(3));
        assert_eq!(exact_log(&BigInt::from(5), &BigInt::from(1)), Some(0));
        assert_eq!(exact_log(&BigInt::from(4), &BigInt::from(8)), None);
    }
}
