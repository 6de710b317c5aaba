//! Seeded randomized checks of the closure laws for conductor ideals.
//!
//! Each suite draws fields, base rings and ideals from a ChaCha stream and
//! checks one law against the brute-force oracle. Cases whose hypotheses
//! fail are redrawn, so `cases` counts only cases that test something.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::One;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::arith;
use crate::quad::{Base, QuadError, QuadField, Result};
use crate::ring::IdealHandle;

pub const DEFAULT_SEED: u64 = 20_240_601;
pub const DEFAULT_CASES: usize = 200;

const FIELDS: [i64; 8] = [-1, 2, -2, 3, 5, -5, 13, -23];
const ORDERS: [u64; 2] = [2, 3];
const POOL_INDEX: u64 = 150;
const MAX_DRAWS_PER_CASE: usize = 400;

pub const SUITES: [&str; 11] = [
    "conductor_fixed_point",
    "double_colon",
    "colon_necessity",
    "prime_colon",
    "intersection_closure",
    "modular_identity",
    "coprime_product",
    "cyclic_sum",
    "maximal_routes",
    "exponent_formula",
    "contraction_max",
];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub name: String,
    pub seed: u64,
    pub cases: usize,
    /// draws rejected because a hypothesis failed
    pub rejected: usize,
    pub failures: Vec<String>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

struct Pool {
    field: QuadField,
    ideals: Vec<IdealHandle>,
}

struct Ctx {
    rng: ChaCha8Rng,
    pools: Vec<Pool>,
    /// conductor ideals of each pool, keyed by base label
    conductors: HashMap<(usize, String), Vec<IdealHandle>>,
}

impl Ctx {
    fn new(seed: u64) -> Result<Self> {
        let pools = FIELDS
            .iter()
            .map(|&d| {
                let field = QuadField::new(d)?;
                let ideals = field.ring().enumerate_ideals(POOL_INDEX).collect();
                Ok(Pool { field, ideals })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Ctx {
            rng: ChaCha8Rng::seed_from_u64(seed),
            pools,
            conductors: HashMap::new(),
        })
    }

    fn pool(&mut self) -> usize {
        self.rng.gen_range(0..self.pools.len())
    }

    fn base(&mut self, field: &QuadField) -> Result<Base> {
        let k = self.rng.gen_range(0..=ORDERS.len());
        if k == 0 {
            Ok(field.integers())
        } else {
            field.order_base(ORDERS[k - 1])
        }
    }

    fn ideal(&mut self, pool: usize, max_index: u64) -> IdealHandle {
        let candidates: Vec<&IdealHandle> = self.pools[pool]
            .ideals
            .iter()
            .filter(|i| i.index() <= BigInt::from(max_index))
            .collect();
        (*candidates.choose(&mut self.rng).expect("pool holds S")).clone()
    }

    /// A random conductor ideal of the pool over `base`.
    fn conductor(&mut self, pool: usize, base: &Base) -> IdealHandle {
        let key = (pool, base.label());
        let p = &self.pools[pool];
        let list = self.conductors.entry(key).or_insert_with(|| {
            p.ideals
                .iter()
                .filter(|i| {
                    p.field
                        .ring()
                        .is_conductor_bruteforce(base.subring(), i)
                        .is_ok_and(|c| c.is_conductor)
                })
                .cloned()
                .collect()
        });
        list.choose(&mut self.rng)
            .expect("S is always a conductor")
            .clone()
    }
}

fn show(i: &IdealHandle) -> String {
    i.lattice().to_string()
}

/// Outcome of one draw: a tested case, a rejected draw, or a failure.
enum Case {
    Pass,
    Reject,
    Fail(String),
}

type CaseFn = fn(&mut Ctx) -> Result<Case>;

fn suite_fn(name: &str) -> Option<CaseFn> {
    Some(match name {
        "conductor_fixed_point" => conductor_fixed_point,
        "double_colon" => double_colon,
        "colon_necessity" => colon_necessity,
        "prime_colon" => prime_colon,
        "intersection_closure" => intersection_closure,
        "modular_identity" => modular_identity,
        "coprime_product" => coprime_product,
        "cyclic_sum" => cyclic_sum,
        "maximal_routes" => maximal_routes,
        "exponent_formula" => exponent_formula,
        "contraction_max" => contraction_max,
        _ => return None,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PropsError {
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
    #[error(transparent)]
    Quad(#[from] QuadError),
}

pub fn run_suite(
    name: &str,
    seed: u64,
    cases: usize,
) -> std::result::Result<SuiteReport, PropsError> {
    let case = suite_fn(name).ok_or_else(|| PropsError::UnknownSuite(name.to_string()))?;
    let mut ctx = Ctx::new(seed)?;
    let mut report = SuiteReport {
        name: name.to_string(),
        seed,
        cases: 0,
        rejected: 0,
        failures: Vec::new(),
    };
    let mut draws = 0;
    while report.cases < cases {
        draws += 1;
        if draws > cases * MAX_DRAWS_PER_CASE {
            report.failures.push(format!(
                "only {} usable cases after {draws} draws",
                report.cases
            ));
            break;
        }
        match case(&mut ctx) {
            Ok(Case::Pass) => report.cases += 1,
            Ok(Case::Reject) => report.rejected += 1,
            Ok(Case::Fail(msg)) => {
                report.cases += 1;
                report.failures.push(msg);
            }
            Err(e) => {
                report.cases += 1;
                report.failures.push(format!("error: {e}"));
            }
        }
    }
    Ok(report)
}

pub fn run_all(seed: u64, cases: usize) -> std::result::Result<Vec<SuiteReport>, PropsError> {
    SUITES
        .iter()
        .map(|name| run_suite(name, seed, cases))
        .collect()
}

fn check(ok: bool, msg: impl FnOnce() -> String) -> Case {
    if ok {
        Case::Pass
    } else {
        Case::Fail(msg())
    }
}

/// `(R + (V :_S S) :_S S) = (V :_S S)` for intermediate rings `V`.
fn conductor_fixed_point(ctx: &mut Ctx) -> Result<Case> {
    let k = ctx.pool();
    let field = ctx.pools[k].field.clone();
    let base = ctx.base(&field)?;
    let j = ctx.ideal(k, POOL_INDEX);
    let ring = field.ring();
    let v = ring.adjoin(base.subring(), &j)?;
    let cond = ring.conductor_of(&v)?;
    let again = ring.conductor_of(&ring.adjoin(base.subring(), &cond)?)?;
    Ok(check(again == cond, || {
        format!(
            "d={} V={} conductor {} but got {}",
            field.d(),
            v.lattice(),
            show(&cond),
            show(&again)
        )
    }))
}

/// Conductor iff `(I :_R (I :_S (R+I :_S S))) ⊆ I`, and any `J` strictly
/// between `I` and `(R+I :_S S)` has `(I :_R (I :_S J)) ⊄ I`.
fn double_colon(ctx: &mut Ctx) -> Result<Case> {
    let k = ctx.pool();
    let field = ctx.pools[k].field.clone();
    let base = ctx.base(&field)?;
    let i = ctx.ideal(k, POOL_INDEX);
    let ring = field.ring();
    let s = ring.whole();
    let check_ = ring.is_conductor_bruteforce(base.subring(), &i)?;
    let l = &check_.conductor;
    let inner = ring.colon(i.lattice(), &s, l)?;
    let outer = ring.colon(i.lattice(), base.lattice(), &inner)?;
    let contained = outer.is_subset_of(i.lattice())?;
    if contained != check_.is_conductor {
        return Ok(Case::Fail(format!(
            "d={} base={} I={}: oracle {} but double colon contained = {contained}",
            field.d(),
            base.label(),
            show(&i),
            check_.is_conductor
        )));
    }
    if !check_.is_conductor {
        // J = I + xS for a basis vector x of L outside I
        let x = l
            .basis()
            .iter()
            .find(|v| !i.lattice().contains(v).unwrap_or(true))
            .expect("L ⊋ I");
        let j = ring.ideal_sum(
            &i,
            &ring.ideal_from_generators(&[crate::ring::Element(x.clone())])?,
        )?;
        let inner = ring.colon(i.lattice(), &s, j.lattice())?;
        let outer = ring.colon(i.lattice(), base.lattice(), &inner)?;
        if outer.is_subset_of(i.lattice())? {
            return Ok(Case::Fail(format!(
                "d={} I={} J={}: (I :_R (I :_S J)) ⊆ I",
                field.d(),
                show(&i),
                show(&j)
            )));
        }
    }
    Ok(Case::Pass)
}

/// A conductor `I` has `R + J ≠ S` or `(I :_R J) ⊆ I` for every `J`.
fn colon_necessity(ctx: &mut Ctx) -> Result<Case> {
    let k = ctx.pool();
    let field = ctx.pools[k].field.clone();
    let base = ctx.base(&field)?;
    let i = ctx.conductor(k, &base);
    let ring = field.ring();
    let j = ctx.ideal(k, POOL_INDEX);
    let proper = base.lattice().sum(j.lattice())? != ring.whole();
    let colon = ring.colon(i.lattice(), base.lattice(), j.lattice())?;
    let ok = proper || colon.is_subset_of(i.lattice())?;
    Ok(check(ok, || {
        format!(
            "d={} base={} I={} J={}",
            field.d(),
            base.label(),
            show(&i),
            show(&j)
        )
    }))
}

/// For `I ⊊ J` some `L` with `I ⊊ L ⊆ J` has `(I :_S L)` prime.
fn prime_colon(ctx: &mut Ctx) -> Result<Case> {
    let k = ctx.pool();
    let field = ctx.pools[k].field.clone();
    let i = ctx.ideal(k, POOL_INDEX);
    let j = ctx.ideal(k, POOL_INDEX);
    let ring = field.ring();
    let j = ring.ideal_sum(&i, &j)?;
    if j == i {
        return Ok(Case::Reject);
    }
    let n = i.index_u64().expect("pool index is small");
    let mut found = false;
    'outer: for size in (1..=n).filter(|m| n.is_multiple_of(*m)) {
        for l in ring.ideals_of_index(size) {
            if l == i || !i.is_subset_of(&l) || !l.is_subset_of(&j) {
                continue;
            }
            let colon = ring.ideal(ring.colon(i.lattice(), &ring.whole(), l.lattice())?)?;
            if matches!(field.factor(&colon)?.factors(), [(_, 1)]) {
                found = true;
                break 'outer;
            }
        }
    }
    Ok(check(found, || {
        format!(
            "d={} I={} J={}: no L with prime colon",
            field.d(),
            show(&i),
            show(&j)
        )
    }))
}

/// The intersection of two conductor ideals is a conductor ideal.
fn intersection_closure(ctx: &mut Ctx) -> Result<Case> {
    let k = ctx.pool();
    let field = ctx.pools[k].field.clone();
    let base = ctx.base(&field)?;
    let ring = field.ring();
    let a = ctx.conductor(k, &base);
    let b = ctx.conductor(k, &base);
    let both = ring.ideal_intersect(&a, &b)?;
    let ok = ring
        .is_conductor_bruteforce(base.subring(), &both)?
        .is_conductor;
    Ok(check(ok, || {
        format!(
            "d={} base={} {} ∩ {}",
            field.d(),
            base.label(),
            show(&a),
            show(&b)
        )
    }))
}

fn coprime_in_base(
    field: &QuadField,
    base: &Base,
    a: &IdealHandle,
    b: &IdealHandle,
) -> Result<bool> {
    let ca = field.contract(base, a.lattice())?;
    let cb = field.contract(base, b.lattice())?;
    Ok(ca.sum(&cb)? == *base.lattice())
}

/// With `(I∩R) + (J∩R) = R`: `(R+I) ∩ (R+J) = R+IJ`, the product of the
/// two conductors lies in that of `R+IJ`, and `(R+IJ :_S S) = IJ` forces
/// `I·(R+J :_S S) = IJ`.
fn modular_identity(ctx: &mut Ctx) -> Result<Case> {
    let k = ctx.pool();
    let field = ctx.pools[k].field.clone();
    let base = ctx.base(&field)?;
    let i = ctx.ideal(k, POOL_INDEX);
    let j = ctx.ideal(k, POOL_INDEX);
    if !coprime_in_base(&field, &base, &i, &j)? {
        return Ok(Case::Reject);
    }
    let ring = field.ring();
    let r = base.lattice();
    let ij = ring.ideal_product(&i, &j);
    let lhs = r.sum(i.lattice())?.intersect(&r.sum(j.lattice())?)?;
    let rhs = r.sum(ij.lattice())?;
    if lhs != rhs {
        return Ok(Case::Fail(format!(
            "d={} I={} J={}: (R+I)∩(R+J) = {lhs} but R+IJ = {rhs}",
            field.d(),
            show(&i),
            show(&j)
        )));
    }
    let ci = ring.conductor_of(&ring.adjoin(base.subring(), &i)?)?;
    let cj = ring.conductor_of(&ring.adjoin(base.subring(), &j)?)?;
    let cij = ring.conductor_of(&ring.adjoin(base.subring(), &ij)?)?;
    if !ring.ideal_product(&ci, &cj).is_subset_of(&cij) {
        return Ok(Case::Fail(format!(
            "d={} I={} J={}: conductor product not contained",
            field.d(),
            show(&i),
            show(&j)
        )));
    }
    if cij == ij && ring.ideal_product(&i, &cj) != ij {
        return Ok(Case::Fail(format!(
            "d={} I={} J={}: I(R+J :_S S) ≠ IJ",
            field.d(),
            show(&i),
            show(&j)
        )));
    }
    Ok(Case::Pass)
}

/// Pairwise coprime (in `R`) nonzero ideals of a domain: the product is a
/// conductor iff every factor is.
fn coprime_product(ctx: &mut Ctx) -> Result<Case> {
    let k = ctx.pool();
    let field = ctx.pools[k].field.clone();
    let base = ctx.base(&field)?;
    let n = ctx.rng.gen_range(2..=3);
    let factors: Vec<IdealHandle> = (0..n).map(|_| ctx.ideal(k, 40)).collect();
    for (x, a) in factors.iter().enumerate() {
        for b in &factors[x + 1..] {
            if !coprime_in_base(&field, &base, a, b)? {
                return Ok(Case::Reject);
            }
        }
    }
    let ring = field.ring();
    let product = factors
        .iter()
        .fold(ring.unit_ideal(), |acc, f| ring.ideal_product(&acc, f));
    let whole = ring
        .is_conductor_bruteforce(base.subring(), &product)?
        .is_conductor;
    let mut each = true;
    for f in &factors {
        each &= ring
            .is_conductor_bruteforce(base.subring(), f)?
            .is_conductor;
    }
    Ok(check(whole == each, || {
        let shown: Vec<String> = factors.iter().map(show).collect();
        format!(
            "d={} base={} factors {}: product {whole}, factors {each}",
            field.d(),
            base.label(),
            shown.join(" ")
        )
    }))
}

/// `S = R + I` iff `S/I` is a cyclic `R`-module.
fn cyclic_sum(ctx: &mut Ctx) -> Result<Case> {
    let k = ctx.pool();
    let field = ctx.pools[k].field.clone();
    let base = ctx.base(&field)?;
    let i = ctx.ideal(k, POOL_INDEX);
    let ring = field.ring();
    let sum = base.lattice().sum(i.lattice())? == ring.whole();
    let cyclic = ring.is_cyclic_quotient(base.subring(), &i, field.bounds().coset_bound)?;
    Ok(check(sum == cyclic, || {
        format!(
            "d={} base={} I={}: sum {sum}, cyclic {cyclic}",
            field.d(),
            base.label(),
            show(&i)
        )
    }))
}

/// For maximal `M` the three routes agree with each other and the oracle.
fn maximal_routes(ctx: &mut Ctx) -> Result<Case> {
    let k = ctx.pool();
    let field = ctx.pools[k].field.clone();
    let base = ctx.base(&field)?;
    let primes = arith::primes_up_to(50);
    let p = *primes.choose(&mut ctx.rng).expect("primes");
    let above = field.primes_above(p)?;
    let m = above.choose(&mut ctx.rng).expect("a prime above p");
    let verdict = field.prop26_verdict(&base, m)?;
    let oracle = field
        .ring()
        .is_conductor_bruteforce(base.subring(), &m.ideal)?
        .is_conductor;
    Ok(check(verdict.is_conductor() == oracle, || {
        format!(
            "d={} base={} M={}: routes say {}, oracle {oracle}",
            field.d(),
            base.label(),
            show(&m.ideal),
            verdict.decision
        )
    }))
}

/// `⌈l/e_M⌉` equals the exponent of `p` in `M^l ∩ Z`.
fn exponent_formula(ctx: &mut Ctx) -> Result<Case> {
    let k = ctx.pool();
    let field = ctx.pools[k].field.clone();
    let primes = arith::primes_up_to(50);
    let p = *primes.choose(&mut ctx.rng).expect("primes");
    let above = field.primes_above(p)?;
    let m = above.choose(&mut ctx.rng).expect("a prime above p");
    let l = ctx.rng.gen_range(0..=12);
    let direct = field.exponent_direct(m, l)?;
    let formula = field.exponent_formula(m, l);
    Ok(check(direct == formula, || {
        format!(
            "d={} M={} l={l}: formula {formula}, lattice {direct}",
            field.d(),
            show(&m.ideal)
        )
    }))
}

/// For `L ⊇ I` and `p | [S:I]`:
/// `v_p(L ∩ Z) = max over Q above p of ⌈v_Q(L)/e_Q⌉`.
fn contraction_max(ctx: &mut Ctx) -> Result<Case> {
    let k = ctx.pool();
    let field = ctx.pools[k].field.clone();
    let i = ctx.ideal(k, POOL_INDEX);
    if i.index().is_one() {
        return Ok(Case::Reject);
    }
    let j = ctx.ideal(k, POOL_INDEX);
    let l = field.ring().ideal_sum(&i, &j)?;
    let n = i.index_u64().expect("pool index is small");
    let ps = arith::trial_factor(&BigInt::from(n), n).expect("small index");
    for (p, _) in ps {
        let direct = field.integer_exponent(l.lattice(), p)?;
        let mut best = 0;
        for q in field.primes_above(p)? {
            best = best.max(field.valuation(&q, &l).div_ceil(q.e));
        }
        if best != direct {
            return Ok(Case::Fail(format!(
                "d={} L={} p={p}: max formula {best}, lattice {direct}",
                field.d(),
                show(&l)
            )));
        }
    }
    Ok(Case::Pass)
}
