//! Commutative rings of finite rank over the integers, given by structure
//! constants, together with their subrings, finite-index ideals, colon
//! lattices and the brute-force conductor test.

use std::collections::VecDeque;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lattice::{IntLattice, IntMatrix, LatticeError};

/// Default cap on `|S/I|` for coset enumeration.
pub const DEFAULT_COSET_BOUND: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("structure constants not commutative at basis pair ({i}, {j})")]
    NotCommutative { i: usize, j: usize },
    #[error("structure constants not associative at basis triple ({i}, {j}, {k})")]
    NotAssociative { i: usize, j: usize, k: usize },
    #[error("identity vector fails one * b_{i} = b_{i}")]
    BadIdentity { i: usize },
    #[error("structure constant table has wrong shape for rank {rank}")]
    BadShape { rank: usize },
    #[error("element has {got} coordinates, ring has rank {rank}")]
    DimensionMismatch { rank: usize, got: usize },
    #[error("generated ideal has infinite index")]
    InfiniteIndex,
    #[error("lattice is not closed: {0}")]
    ClosureViolation(String),
    #[error("quotient has {index} elements, enumeration bound is {bound}")]
    QuotientTooLarge { index: BigInt, bound: u64 },
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

pub type Result<T> = std::result::Result<T, RingError>;

/// Coordinates of a ring element in the ring basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Element(#[serde(with = "crate::serde_big::vec")] pub Vec<BigInt>);

impl Element {
    pub fn from_i64(coords: &[i64]) -> Self {
        Element(coords.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }
}

/// A commutative ring with identity, free of rank `n` over Z.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingTable {
    rank: usize,
    // c[(i*n + j)*n + k]: coefficient of b_k in b_i * b_j
    constants: Vec<BigInt>,
    one: Element,
    // row i of mult_basis[j] is b_i * b_j
    mult_basis: Vec<IntMatrix>,
}

impl RingTable {
    /// `table[i][j]` is the coordinate vector of `b_i * b_j`.
    pub fn new(table: Vec<Vec<Vec<BigInt>>>, one: Element) -> Result<Self> {
        let n = table.len();
        if n == 0 || one.0.len() != n {
            return Err(RingError::BadShape { rank: n });
        }
        let mut constants = Vec::with_capacity(n * n * n);
        for row in &table {
            if row.len() != n {
                return Err(RingError::BadShape { rank: n });
            }
            for prod in row {
                if prod.len() != n {
                    return Err(RingError::BadShape { rank: n });
                }
                constants.extend(prod.iter().cloned());
            }
        }
        let mut ring = RingTable {
            rank: n,
            constants,
            one,
            mult_basis: Vec::new(),
        };
        ring.validate()?;
        ring.mult_basis = (0..n)
            .map(|j| ring.mult_matrix(&ring.basis_element(j)))
            .collect();
        Ok(ring)
    }

    pub fn from_i64(table: &[Vec<Vec<i64>>], one: &[i64]) -> Result<Self> {
        let t = table
            .iter()
            .map(|row| {
                row.iter()
                    .map(|p| p.iter().map(|&x| BigInt::from(x)).collect())
                    .collect()
            })
            .collect();
        Self::new(t, Element::from_i64(one))
    }

    fn c(&self, i: usize, j: usize, k: usize) -> &BigInt {
        &self.constants[(i * self.rank + j) * self.rank + k]
    }

    fn validate(&self) -> Result<()> {
        let n = self.rank;
        for i in 0..n {
            for j in i + 1..n {
                if (0..n).any(|k| self.c(i, j, k) != self.c(j, i, k)) {
                    return Err(RingError::NotCommutative { i, j });
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let (bi, bj, bk) = (
                        self.basis_element(i),
                        self.basis_element(j),
                        self.basis_element(k),
                    );
                    let left = self.mul_raw(&self.mul_raw(&bi, &bj), &bk);
                    let right = self.mul_raw(&bi, &self.mul_raw(&bj, &bk));
                    if left != right {
                        return Err(RingError::NotAssociative { i, j, k });
                    }
                }
            }
        }
        for i in 0..n {
            let bi = self.basis_element(i);
            if self.mul_raw(&self.one, &bi) != bi {
                return Err(RingError::BadIdentity { i });
            }
        }
        Ok(())
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn one(&self) -> &Element {
        &self.one
    }

    pub fn basis_element(&self, i: usize) -> Element {
        let mut v = vec![BigInt::zero(); self.rank];
        v[i] = BigInt::one();
        Element(v)
    }

    pub fn element(&self, coords: Vec<BigInt>) -> Result<Element> {
        if coords.len() != self.rank {
            return Err(RingError::DimensionMismatch {
                rank: self.rank,
                got: coords.len(),
            });
        }
        Ok(Element(coords))
    }

    fn mul_raw(&self, x: &Element, y: &Element) -> Element {
        let n = self.rank;
        let mut out = vec![BigInt::zero(); n];
        for (i, xi) in x.0.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.0.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let xy = xi * yj;
                for (k, o) in out.iter_mut().enumerate() {
                    let c = self.c(i, j, k);
                    if !c.is_zero() {
                        *o += &xy * c;
                    }
                }
            }
        }
        Element(out)
    }

    /// Bilinear product through the structure constants.
    pub fn mul(&self, x: &Element, y: &Element) -> Element {
        assert_eq!(x.0.len(), self.rank);
        assert_eq!(y.0.len(), self.rank);
        self.mul_raw(x, y)
    }

    fn mul_vec_by_basis(&self, v: &[BigInt], j: usize) -> Vec<BigInt> {
        self.mult_basis[j].apply_row(v)
    }

    /// Matrix of `v ↦ v·x` acting on row vectors.
    pub fn mult_matrix(&self, x: &Element) -> IntMatrix {
        let n = self.rank;
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            let p = self.mul_raw(&self.basis_element(i), x);
            for (k, v) in p.0.into_iter().enumerate() {
                m.set(i, k, v);
            }
        }
        m
    }

    /// The whole ring as a lattice.
    pub fn whole(&self) -> IntLattice {
        IntLattice::ambient(self.rank)
    }

    /// The rank-one subring generated by the identity.
    pub fn integers(&self) -> SubringHandle {
        SubringHandle {
            lattice: IntLattice::span(self.rank, vec![self.one.0.clone()]),
        }
    }

    pub fn whole_subring(&self) -> SubringHandle {
        SubringHandle {
            lattice: self.whole(),
        }
    }

    pub fn unit_ideal(&self) -> IdealHandle {
        IdealHandle {
            lattice: self.whole(),
        }
    }

    fn is_ideal_lattice(&self, l: &IntLattice) -> Result<bool> {
        for v in l.basis() {
            for j in 0..self.rank {
                if !l.contains(&self.mul_vec_by_basis(v, j))? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Validates a full-rank lattice as an ideal of the ring.
    pub fn ideal(&self, lattice: IntLattice) -> Result<IdealHandle> {
        if lattice.dim() != self.rank {
            return Err(LatticeError::RankMismatch {
                left: self.rank,
                right: lattice.dim(),
            }
            .into());
        }
        if !lattice.is_full_rank() {
            return Err(RingError::InfiniteIndex);
        }
        if !self.is_ideal_lattice(&lattice)? {
            return Err(RingError::ClosureViolation(format!(
                "{lattice} is not an ideal"
            )));
        }
        Ok(IdealHandle { lattice })
    }

    /// Validates a lattice (any rank) as a unitary subring.
    pub fn subring(&self, lattice: IntLattice) -> Result<SubringHandle> {
        if lattice.dim() != self.rank {
            return Err(LatticeError::RankMismatch {
                left: self.rank,
                right: lattice.dim(),
            }
            .into());
        }
        if !lattice.contains(&self.one.0)? {
            return Err(RingError::ClosureViolation(format!(
                "{lattice} does not contain 1"
            )));
        }
        let b = lattice.basis();
        for (i, v) in b.iter().enumerate() {
            for w in &b[i..] {
                let p = self.mul_raw(&Element(v.clone()), &Element(w.clone()));
                if !lattice.contains(&p.0)? {
                    return Err(RingError::ClosureViolation(format!(
                        "{lattice} is not closed under multiplication"
                    )));
                }
            }
        }
        Ok(SubringHandle { lattice })
    }

    /// The ideal generated by `gens`, i.e. the span of all `g·b_i`.
    pub fn ideal_from_generators(&self, gens: &[Element]) -> Result<IdealHandle> {
        let mut rows = Vec::with_capacity(gens.len() * self.rank);
        for g in gens {
            if g.0.len() != self.rank {
                return Err(RingError::DimensionMismatch {
                    rank: self.rank,
                    got: g.0.len(),
                });
            }
            for j in 0..self.rank {
                rows.push(self.mul_vec_by_basis(&g.0, j));
            }
        }
        let lattice = IntLattice::span(self.rank, rows);
        if !lattice.is_full_rank() {
            return Err(RingError::InfiniteIndex);
        }
        Ok(IdealHandle { lattice })
    }

    /// The ideal of the whole ring generated by an arbitrary lattice.
    pub fn extend_to_ideal(&self, l: &IntLattice) -> Result<IdealHandle> {
        let gens: Vec<Element> = l.basis().iter().map(|r| Element(r.clone())).collect();
        self.ideal_from_generators(&gens)
    }

    /// Additive span of all pairwise products.
    pub fn lattice_product(&self, a: &IntLattice, b: &IntLattice) -> IntLattice {
        let mut rows = Vec::with_capacity(a.rank() * b.rank());
        for v in a.basis() {
            for w in b.basis() {
                rows.push(self.mul_raw(&Element(v.clone()), &Element(w.clone())).0);
            }
        }
        IntLattice::span(self.rank, rows)
    }

    pub fn ideal_product(&self, a: &IdealHandle, b: &IdealHandle) -> IdealHandle {
        IdealHandle {
            lattice: self.lattice_product(&a.lattice, &b.lattice),
        }
    }

    pub fn ideal_power(&self, a: &IdealHandle, k: u32) -> IdealHandle {
        let mut acc = self.unit_ideal();
        for _ in 0..k {
            acc = self.ideal_product(&acc, a);
        }
        acc
    }

    pub fn ideal_sum(&self, a: &IdealHandle, b: &IdealHandle) -> Result<IdealHandle> {
        Ok(IdealHandle {
            lattice: a.lattice.sum(&b.lattice)?,
        })
    }

    pub fn ideal_intersect(&self, a: &IdealHandle, b: &IdealHandle) -> Result<IdealHandle> {
        Ok(IdealHandle {
            lattice: a.lattice.intersect(&b.lattice)?,
        })
    }

    /// `(X :_Y Z) = {y ∈ Y : yZ ⊆ X}`.
    ///
    /// `Z` enters through its basis. The result may have lower rank than the
    /// ring, e.g. whenever `Y` does.
    pub fn colon(&self, x: &IntLattice, y: &IntLattice, z: &IntLattice) -> Result<IntLattice> {
        let mut acc = y.clone();
        for g in z.basis() {
            if acc.rank() == 0 {
                break;
            }
            let pre = x.preimage(&self.mult_matrix(&Element(g.clone())))?;
            acc = acc.intersect(&pre)?;
        }
        Ok(acc)
    }

    /// `R + I`; a subring because `I` is an ideal.
    pub fn adjoin(&self, r: &SubringHandle, i: &IdealHandle) -> Result<SubringHandle> {
        self.subring(r.lattice.sum(&i.lattice)?)
    }

    /// `(V :_S S)`, the largest ideal of the ring inside `V`.
    pub fn conductor_lattice(&self, v: &SubringHandle) -> Result<IntLattice> {
        self.colon(&v.lattice, &self.whole(), &self.whole())
    }

    pub fn conductor_of(&self, v: &SubringHandle) -> Result<IdealHandle> {
        let l = self.conductor_lattice(v)?;
        l.require_full_rank()?;
        Ok(IdealHandle { lattice: l })
    }

    /// Brute-force test of `(R+I :_S S) = I`.
    pub fn is_conductor_bruteforce(
        &self,
        r: &SubringHandle,
        i: &IdealHandle,
    ) -> Result<ConductorCheck> {
        let realizing = self.adjoin(r, i)?;
        let conductor = self.conductor_lattice(&realizing)?;
        // I ⊆ (R+I :_S S) always holds, so a witness is any basis vector of
        // the conductor that falls outside I
        let mut witness = None;
        for v in conductor.basis() {
            if !i.lattice.contains(v)? {
                witness = Some(Element(v.clone()));
                break;
            }
        }
        Ok(ConductorCheck {
            is_conductor: witness.is_none(),
            realizing,
            conductor,
            witness,
        })
    }

    /// `{0}` is an R-conductor ideal iff `(R :_S S) = {0}`; for finite-rank
    /// lattices that is the case iff the conductor lattice is rank deficient.
    pub fn zero_ideal_is_conductor(&self, r: &SubringHandle) -> Result<bool> {
        let l = self.conductor_lattice(r)?;
        Ok(l.rank() == 0)
    }

    /// Searches the quotient `S/I` for an element generating it as an
    /// R-module, i.e. some `x` with `Rx + I = S`.
    pub fn cyclic_generator(
        &self,
        r: &SubringHandle,
        i: &IdealHandle,
        bound: u64,
    ) -> Result<Option<Element>> {
        let index = i.lattice.index()?;
        if index > BigInt::from(bound) {
            return Err(RingError::QuotientTooLarge { index, bound });
        }
        let whole = self.whole();
        for x in i.lattice.coset_representatives()? {
            let mut rows: Vec<Vec<BigInt>> = r
                .lattice
                .basis()
                .iter()
                .map(|rv| self.mul_raw(&Element(rv.clone()), &Element(x.clone())).0)
                .collect();
            rows.extend(i.lattice.basis().iter().cloned());
            if IntLattice::span(self.rank, rows) == whole {
                return Ok(Some(Element(x)));
            }
        }
        Ok(None)
    }

    pub fn is_cyclic_quotient(
        &self,
        r: &SubringHandle,
        i: &IdealHandle,
        bound: u64,
    ) -> Result<bool> {
        Ok(self.cyclic_generator(r, i, bound)?.is_some())
    }

    /// All full-rank ideals of index at most `max_index`, ordered by index
    /// and then lexicographically by HNF basis.
    pub fn enumerate_ideals(&self, max_index: u64) -> IdealEnumerator<'_> {
        IdealEnumerator {
            ring: self,
            max_index,
            next_index: 1,
            pending: VecDeque::new(),
        }
    }

    /// Ideals of index `k`, sorted.
    pub fn ideals_of_index(&self, k: u64) -> Vec<IdealHandle> {
        let mut out = Vec::new();
        for diag in diagonal_factorizations(k, self.rank) {
            let mut basis: Vec<Vec<BigInt>> = (0..self.rank)
                .map(|i| {
                    let mut row = vec![BigInt::zero(); self.rank];
                    row[i] = BigInt::from(diag[i]);
                    row
                })
                .collect();
            // slots above the diagonal; slot (i, j) ranges over [0, d_j)
            let slots: Vec<(usize, usize)> = (0..self.rank)
                .flat_map(|i| (i + 1..self.rank).map(move |j| (i, j)))
                .collect();
            let mut counters = vec![0u64; slots.len()];
            loop {
                for (s, &(i, j)) in slots.iter().enumerate() {
                    basis[i][j] = BigInt::from(counters[s]);
                }
                let cand = IntLattice::from_hnf_unchecked(self.rank, basis.clone());
                if self.is_ideal_lattice(&cand).unwrap_or(false) {
                    out.push(IdealHandle { lattice: cand });
                }
                // odometer, last slot fastest
                let mut s = slots.len();
                let mut done = true;
                while s > 0 {
                    s -= 1;
                    counters[s] += 1;
                    if counters[s] < diag[slots[s].1] {
                        done = false;
                        break;
                    }
                    counters[s] = 0;
                }
                if done {
                    break;
                }
            }
        }
        out.sort();
        out
    }

    /// Ideals of index ≤ `max_index` that are R-conductor ideals.
    pub fn enumerate_conductor_ideals<'a>(
        &'a self,
        r: &'a SubringHandle,
        max_index: u64,
    ) -> impl Iterator<Item = IdealHandle> + 'a {
        self.enumerate_ideals(max_index).filter(move |i| {
            self.is_conductor_bruteforce(r, i)
                .map(|c| c.is_conductor)
                .unwrap_or(false)
        })
    }
}

/// Ordered tuples `(d_0, …, d_{n-1})` of positive integers with product `k`.
fn diagonal_factorizations(k: u64, n: usize) -> Vec<Vec<u64>> {
    if n == 1 {
        return vec![vec![k]];
    }
    let mut out = Vec::new();
    for d in 1..=k {
        if k.is_multiple_of(d) {
            for mut rest in diagonal_factorizations(k / d, n - 1) {
                rest.insert(0, d);
                out.push(rest);
            }
        }
    }
    out
}

/// Restartable stream over the ideals of bounded index.
pub struct IdealEnumerator<'a> {
    ring: &'a RingTable,
    max_index: u64,
    next_index: u64,
    pending: VecDeque<IdealHandle>,
}

impl Iterator for IdealEnumerator<'_> {
    type Item = IdealHandle;

    fn next(&mut self) -> Option<IdealHandle> {
        while self.pending.is_empty() {
            if self.next_index > self.max_index {
                return None;
            }
            self.pending
                .extend(self.ring.ideals_of_index(self.next_index));
            self.next_index += 1;
        }
        self.pending.pop_front()
    }
}

/// A validated unitary subring (any rank).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SubringHandle {
    lattice: IntLattice,
}

impl SubringHandle {
    pub fn lattice(&self) -> &IntLattice {
        &self.lattice
    }
}

/// A validated ideal of finite index.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IdealHandle {
    lattice: IntLattice,
}

impl IdealHandle {
    pub fn lattice(&self) -> &IntLattice {
        &self.lattice
    }

    pub fn index(&self) -> BigInt {
        self.lattice.index().expect("ideal handles have full rank")
    }

    /// Index as a machine integer, when it fits.
    pub fn index_u64(&self) -> Option<u64> {
        self.index().to_u64()
    }

    pub fn is_unit(&self) -> bool {
        self.index().is_one()
    }

    pub fn contains(&self, x: &Element) -> bool {
        self.lattice.contains(&x.0).unwrap_or(false)
    }

    pub fn is_subset_of(&self, other: &IdealHandle) -> bool {
        self.lattice.is_subset_of(&other.lattice).unwrap_or(false)
    }
}

impl std::fmt::Display for IdealHandle {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.lattice.fmt(f)
    }
}

/// Outcome of the brute-force conductor test.
#[derive(Debug, Clone)]
pub struct ConductorCheck {
    pub is_conductor: bool,
    /// `V = R + I`, the ring whose conductor is compared against `I`.
    pub realizing: SubringHandle,
    /// `(R+I :_S S)`.
    pub conductor: IntLattice,
    /// An element of the conductor outside `I`, when the test fails.
    pub witness: Option<Element>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gaussian() -> RingTable {
        RingTable::from_i64(
            &[vec![vec![1, 0], vec![0, 1]], vec![vec![0, 1], vec![-1, 0]]],
            &[1, 0],
        )
        .unwrap()
    }

    fn golden() -> RingTable {
        RingTable::from_i64(
            &[vec![vec![1, 0], vec![0, 1]], vec![vec![0, 1], vec![1, 1]]],
            &[1, 0],
        )
        .unwrap()
    }

    fn el(c: &[i64]) -> Element {
        Element::from_i64(c)
    }

    fn lat(rows: &[Vec<i64>]) -> IntLattice {
        IntLattice::span_i64(rows[0].len(), rows)
    }

    /// Sizes of S/I counted directly: distinct residues of the box
    /// [0, 2N)^2 modulo the lattice.
    fn coset_count(i: &IdealHandle) -> usize {
        let n = i.index_u64().unwrap() as i64;
        let mut reps: Vec<Vec<BigInt>> = Vec::new();
        for a in 0..2 * n {
            for b in 0..2 * n {
                let v = vec![BigInt::from(a), BigInt::from(b)];
                let seen = reps.iter().any(|r| {
                    let diff: Vec<BigInt> = r.iter().zip(&v).map(|(x, y)| x - y).collect();
                    i.lattice().contains(&diff).unwrap()
                });
                if !seen {
                    reps.push(v);
                }
            }
        }
        reps.len()
    }

    #[test]
    fn ring_validation() {
        gaussian();
        golden();
        let bad = RingTable::from_i64(
            &[vec![vec![1, 0], vec![0, 1]], vec![vec![1, 1], vec![-1, 0]]],
            &[1, 0],
        );
        assert_eq!(bad, Err(RingError::NotCommutative { i: 0, j: 1 }));
        let bad_one = RingTable::from_i64(
            &[vec![vec![1, 0], vec![0, 1]], vec![vec![0, 1], vec![-1, 0]]],
            &[0, 1],
        );
        assert!(matches!(bad_one, Err(RingError::BadIdentity { .. })));
        // a rank-3 table that is commutative but not associative:
        // b1*b1 = b2, b1*b2 = 0, b2*b2 = b1
        let t = vec![
            vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]],
            vec![vec![0, 1, 0], vec![0, 0, 1], vec![0, 0, 0]],
            vec![vec![0, 0, 1], vec![0, 0, 0], vec![0, 1, 0]],
        ];
        assert!(matches!(
            RingTable::from_i64(&t, &[1, 0, 0]),
            Err(RingError::NotAssociative { .. })
        ));
    }

    #[test]
    fn golden_associativity_by_hand() {
        let s = golden();
        let w = el(&[0, 1]);
        let ww = s.mul(&w, &w);
        assert_eq!(ww, el(&[1, 1]));
        assert_eq!(s.mul(&ww, &w), el(&[1, 2]));
        assert_eq!(s.mul(&w, &ww), el(&[1, 2]));
    }

    #[test]
    fn multiplication() {
        let s = gaussian();
        let x = el(&[3, -7]);
        assert_eq!(s.mul(&x, s.one()), x);
        assert_eq!(s.mul(&el(&[1, 1]), &el(&[1, -1])), el(&[2, 0]));
    }

    #[test]
    fn ideals_from_generators() {
        let s = gaussian();
        assert_eq!(
            s.ideal_from_generators(&[el(&[1, 0])]).unwrap(),
            s.unit_ideal()
        );
        let two = s.ideal_from_generators(&[el(&[2, 0])]).unwrap();
        assert_eq!(two.index(), BigInt::from(4));
        assert_eq!(coset_count(&two), 4);
        let p = s
            .ideal_from_generators(&[el(&[5, 0]), el(&[-2, 1])])
            .unwrap();
        assert_eq!(p.index(), BigInt::from(5));
        assert_eq!(coset_count(&p), 5);
        assert_eq!(
            s.ideal_from_generators(&[el(&[0, 0])]),
            Err(RingError::InfiniteIndex)
        );
    }

    #[test]
    fn ideal_products() {
        let s = gaussian();
        let a = s
            .ideal_from_generators(&[el(&[5, 0]), el(&[-2, 1])])
            .unwrap();
        let b = s
            .ideal_from_generators(&[el(&[5, 0]), el(&[-3, 1])])
            .unwrap();
        assert_eq!(s.ideal_product(&a, &s.unit_ideal()), a);
        assert_eq!(s.ideal_sum(&a, &b).unwrap(), s.unit_ideal());
        let five = s.ideal_from_generators(&[el(&[5, 0])]).unwrap();
        assert_eq!(s.ideal_product(&a, &b), five);
        assert_eq!(s.ideal_intersect(&a, &b).unwrap(), five);
        assert_eq!(s.ideal_intersect(&a, &a).unwrap(), a);
    }

    #[test]
    fn colon_examples() {
        let s = gaussian();
        let whole = s.whole();
        assert_eq!(s.colon(&whole, &whole, &whole).unwrap(), whole);
        let four = lat(&[vec![4, 0], vec![0, 4]]);
        let two = lat(&[vec![2, 0], vec![0, 2]]);
        assert_eq!(s.colon(&four, &whole, &two).unwrap(), two);

        let g = golden();
        // Z[sqrt 5] = span(1, 2w - 1)
        let r = g.subring(lat(&[vec![1, 0], vec![-1, 2]])).unwrap();
        assert_eq!(g.conductor_of(&r).unwrap().lattice(), &two);
    }

    #[test]
    fn colon_against_integers_is_rank_deficient() {
        let s = gaussian();
        let z = s.integers();
        assert_eq!(s.conductor_lattice(&z).unwrap().rank(), 0);
        assert!(matches!(
            s.conductor_of(&z),
            Err(RingError::Lattice(LatticeError::RankDeficient { .. }))
        ));
        assert!(s.zero_ideal_is_conductor(&z).unwrap());
    }

    #[test]
    fn adjoin_examples() {
        let s = gaussian();
        let z = s.integers();
        assert_eq!(s.adjoin(&z, &s.unit_ideal()).unwrap(), s.whole_subring());
        let two = s.ideal_from_generators(&[el(&[2, 0])]).unwrap();
        let order = s.adjoin(&z, &two).unwrap();
        assert_eq!(order.lattice(), &lat(&[vec![1, 0], vec![0, 2]]));
        assert_eq!(
            s.adjoin(&order, &s.ideal_from_generators(&[el(&[4, 0])]).unwrap())
                .unwrap(),
            order
        );
        assert_eq!(s.conductor_of(&order).unwrap(), two);
        assert_eq!(s.conductor_of(&s.whole_subring()).unwrap(), s.unit_ideal());
    }

    #[test]
    fn subring_validation() {
        let s = gaussian();
        assert!(matches!(
            s.subring(lat(&[vec![2, 0], vec![0, 1]])),
            Err(RingError::ClosureViolation(_))
        ));
        // span(1, 2i) is a subring, span(1, 3i) too, span(i) is not
        s.subring(lat(&[vec![1, 0], vec![0, 3]])).unwrap();
        assert!(s.subring(IntLattice::span_i64(2, &[vec![0, 1]])).is_err());
    }

    #[test]
    fn bruteforce_examples() {
        let s = gaussian();
        let z = s.integers();
        let two = s.ideal_from_generators(&[el(&[2, 0])]).unwrap();
        let c = s.is_conductor_bruteforce(&z, &two).unwrap();
        assert!(c.is_conductor);
        assert_eq!(c.realizing.lattice(), &lat(&[vec![1, 0], vec![0, 2]]));
        assert!(
            s.is_conductor_bruteforce(&z, &s.unit_ideal())
                .unwrap()
                .is_conductor
        );

        let m2 = s.ideal_from_generators(&[el(&[1, 1])]).unwrap();
        let c = s.is_conductor_bruteforce(&z, &m2).unwrap();
        assert!(!c.is_conductor);
        let w = c.witness.unwrap();
        assert!(!m2.contains(&w));
        assert!(c.conductor.contains(w.coords()).unwrap());

        let g = golden();
        let r = g.subring(lat(&[vec![1, 0], vec![-1, 2]])).unwrap();
        let four = g.ideal_from_generators(&[el(&[4, 0])]).unwrap();
        assert!(!g.is_conductor_bruteforce(&r, &four).unwrap().is_conductor);
        assert!(!g.zero_ideal_is_conductor(&r).unwrap());
    }

    #[test]
    fn cyclic_quotient_examples() {
        let s = gaussian();
        let z = s.integers();
        assert!(s
            .is_cyclic_quotient(&z, &s.unit_ideal(), DEFAULT_COSET_BOUND)
            .unwrap());
        let p = s
            .ideal_from_generators(&[el(&[5, 0]), el(&[-2, 1])])
            .unwrap();
        assert!(s.is_cyclic_quotient(&z, &p, DEFAULT_COSET_BOUND).unwrap());
        assert_eq!(s.adjoin(&z, &p).unwrap(), s.whole_subring());
        let three = s.ideal_from_generators(&[el(&[3, 0])]).unwrap();
        assert!(!s
            .is_cyclic_quotient(&z, &three, DEFAULT_COSET_BOUND)
            .unwrap());
        assert!(matches!(
            s.is_cyclic_quotient(&z, &three, 8),
            Err(RingError::QuotientTooLarge { .. })
        ));
    }

    #[test]
    fn enumerate_examples() {
        let s = gaussian();
        let all: Vec<_> = s.enumerate_ideals(5).collect();
        let want: Vec<IdealHandle> = vec![
            s.unit_ideal(),
            s.ideal_from_generators(&[el(&[1, 1])]).unwrap(),
            s.ideal_from_generators(&[el(&[2, 0])]).unwrap(),
            s.ideal_from_generators(&[el(&[5, 0]), el(&[-3, 1])])
                .unwrap(),
            s.ideal_from_generators(&[el(&[5, 0]), el(&[-2, 1])])
                .unwrap(),
        ];
        let mut sorted_want = want.clone();
        sorted_want.sort_by_key(|i| (i.index(), i.clone()));
        assert_eq!(all.len(), 5);
        assert_eq!(all, sorted_want);
        assert_eq!(
            s.enumerate_ideals(1).collect::<Vec<_>>(),
            vec![s.unit_ideal()]
        );

        let g = golden();
        let all: Vec<_> = g.enumerate_ideals(4).collect();
        assert_eq!(
            all,
            vec![
                g.unit_ideal(),
                g.ideal_from_generators(&[el(&[2, 0])]).unwrap()
            ]
        );
    }

    #[test]
    fn enumerate_conductors() {
        let s = gaussian();
        let z = s.integers();
        let got: Vec<_> = s.enumerate_conductor_ideals(&z, 5).collect();
        assert_eq!(
            got,
            vec![
                s.unit_ideal(),
                s.ideal_from_generators(&[el(&[2, 0])]).unwrap()
            ]
        );
        assert_eq!(
            s.enumerate_conductor_ideals(&z, 1).collect::<Vec<_>>(),
            vec![s.unit_ideal()]
        );

        let g = golden();
        let r = g.subring(lat(&[vec![1, 0], vec![-1, 2]])).unwrap();
        let got: Vec<_> = g.enumerate_conductor_ideals(&r, 4).collect();
        assert_eq!(
            got,
            vec![
                g.unit_ideal(),
                g.ideal_from_generators(&[el(&[2, 0])]).unwrap()
            ]
        );
    }

    #[test]
    fn enumeration_matches_norm_count() {
        // number of ideals of norm n in Z[i] is sum over d | n of chi_{-4}(d)
        let s = gaussian();
        let chi = |d: u64| match d % 4 {
            1 => 1i64,
            3 => -1,
            _ => 0,
        };
        for n in 1..=60u64 {
            let want: i64 = (1..=n).filter(|d| n % d == 0).map(chi).sum();
            assert_eq!(s.ideals_of_index(n).len() as i64, want, "norm {n}");
        }
    }
}
