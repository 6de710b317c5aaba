//! Integer lattices in canonical Hermite normal form.
//!
//! Lattices live in a fixed ambient `Z^n` and are stored by the rows of
//! their row-style HNF: pivots strictly increase left to right, every pivot
//! is positive and every entry above a pivot is reduced into `[0, pivot)`.
//! Two lattices are equal iff their stored bases are identical.
//!
//! Most lattices in this crate have full rank (finite index), but a few
//! natural objects do not (the rational integers inside a quadratic ring,
//! colon ideals taken inside them), so the type carries its rank.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("lattice has rank {rank} but ambient rank {dim} is required")]
    RankDeficient { rank: usize, dim: usize },
    #[error("ambient rank mismatch: {left} vs {right}")]
    RankMismatch { left: usize, right: usize },
    #[error("sublattice is not contained in the given superlattice")]
    NotASublattice,
}

/// Dense integer matrix, row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    /// Panics if the rows are ragged.
    pub fn from_rows<T: Into<BigInt> + Clone>(cols: usize, rows: &[Vec<T>]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix row");
            data.extend(r.iter().cloned().map(Into::into));
        }
        IntMatrix {
            rows: rows.len(),
            cols,
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    /// Row vector times matrix.
    pub fn apply_row(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.rows);
        let mut out = vec![BigInt::zero(); self.cols];
        for (i, vi) in v.iter().enumerate() {
            if vi.is_zero() {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                let m = self.get(i, j);
                if !m.is_zero() {
                    *o += vi * m;
                }
            }
        }
        out
    }
}

/// A lattice in `Z^dim`, stored in canonical row-style HNF.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntLattice {
    dim: usize,
    basis: Vec<Vec<BigInt>>,
}

impl IntLattice {
    /// Canonical HNF of the row span of `gens`; the span must have full rank.
    pub fn hnf(gens: &IntMatrix) -> Result<Self, LatticeError> {
        let l = Self::span(gens.cols(), gens.to_rows());
        l.require_full_rank()?;
        Ok(l)
    }

    /// Canonical HNF of the row span of arbitrary generators (any rank).
    pub fn span(dim: usize, gens: Vec<Vec<BigInt>>) -> Self {
        for g in &gens {
            assert_eq!(g.len(), dim, "generator length does not match ambient rank");
        }
        let (basis, _) = echelon(dim, gens);
        IntLattice { dim, basis }
    }

    pub fn span_i64(dim: usize, gens: &[Vec<i64>]) -> Self {
        Self::span(
            dim,
            gens.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }

    /// Wraps rows that the caller guarantees are already a canonical HNF.
    pub(crate) fn from_hnf_unchecked(dim: usize, basis: Vec<Vec<BigInt>>) -> Self {
        debug_assert!(is_canonical(dim, &basis));
        IntLattice { dim, basis }
    }

    /// The standard lattice `Z^dim`.
    pub fn ambient(dim: usize) -> Self {
        let basis = (0..dim)
            .map(|i| {
                (0..dim)
                    .map(|j| {
                        if i == j {
                            BigInt::one()
                        } else {
                            BigInt::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        IntLattice { dim, basis }
    }

    pub fn zero(dim: usize) -> Self {
        IntLattice {
            dim,
            basis: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn is_full_rank(&self) -> bool {
        self.basis.len() == self.dim
    }

    pub fn require_full_rank(&self) -> Result<(), LatticeError> {
        if self.is_full_rank() {
            Ok(())
        } else {
            Err(LatticeError::RankDeficient {
                rank: self.rank(),
                dim: self.dim,
            })
        }
    }

    pub fn basis(&self) -> &[Vec<BigInt>] {
        &self.basis
    }

    pub fn basis_matrix(&self) -> IntMatrix {
        IntMatrix::from_rows(self.dim, &self.basis)
    }

    fn pivot_col(row: &[BigInt]) -> usize {
        row.iter()
            .position(|x| !x.is_zero())
            .expect("HNF rows are nonzero")
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.basis.iter().map(|r| Self::pivot_col(r)).collect()
    }

    /// `|Z^dim / self|`, defined for full rank only.
    pub fn index(&self) -> Result<BigInt, LatticeError> {
        self.require_full_rank()?;
        Ok(self
            .basis
            .iter()
            .enumerate()
            .map(|(i, r)| r[i].clone())
            .product())
    }

    /// `[self : sub]` for a sublattice of the same rank.
    pub fn relative_index(&self, sub: &IntLattice) -> Result<BigInt, LatticeError> {
        self.check_dim(sub)?;
        if sub.rank() != self.rank() || !sub.is_subset_of(self)? {
            return Err(LatticeError::NotASublattice);
        }
        let covol = |l: &IntLattice| -> BigInt {
            l.basis
                .iter()
                .map(|r| r[Self::pivot_col(r)].clone())
                .product()
        };
        let (big, small) = (covol(sub), covol(self));
        debug_assert!(big.is_multiple_of(&small));
        Ok(big / small)
    }

    fn check_dim(&self, other: &IntLattice) -> Result<(), LatticeError> {
        if self.dim != other.dim {
            Err(LatticeError::RankMismatch {
                left: self.dim,
                right: other.dim,
            })
        } else {
            Ok(())
        }
    }

    pub fn sum(&self, other: &IntLattice) -> Result<Self, LatticeError> {
        self.check_dim(other)?;
        let gens = self
            .basis
            .iter()
            .chain(other.basis.iter())
            .cloned()
            .collect();
        Ok(Self::span(self.dim, gens))
    }

    /// Largest lattice contained in both.
    ///
    /// Echelon form of `[[A, A], [B, 0]]`: the rows whose pivot falls in the
    /// right block span exactly `{xA : xA = -yB}`.
    pub fn intersect(&self, other: &IntLattice) -> Result<Self, LatticeError> {
        self.check_dim(other)?;
        if self.is_full_rank() && self.basis == Self::ambient(self.dim).basis {
            return Ok(other.clone());
        }
        if other.is_full_rank() && other.basis == Self::ambient(self.dim).basis {
            return Ok(self.clone());
        }
        let n = self.dim;
        let mut rows = Vec::with_capacity(self.rank() + other.rank());
        for a in &self.basis {
            let mut r = a.clone();
            r.extend(a.iter().cloned());
            rows.push(r);
        }
        for b in &other.basis {
            let mut r = b.clone();
            r.extend(std::iter::repeat_n(BigInt::zero(), n));
            rows.push(r);
        }
        Ok(Self::right_block_kernel(n, rows))
    }

    /// `{x : x·m ∈ self}` where `m` acts on row vectors.
    ///
    /// Uses the echelon form of `[[m, I], [L, 0]]`.
    pub fn preimage(&self, m: &IntMatrix) -> Result<Self, LatticeError> {
        let n = self.dim;
        if m.rows() != n || m.cols() != n {
            return Err(LatticeError::RankMismatch {
                left: n,
                right: m.cols().max(m.rows()),
            });
        }
        let mut rows = Vec::with_capacity(n + self.rank());
        for i in 0..n {
            let mut r = m.row(i).to_vec();
            r.extend((0..n).map(|j| {
                if i == j {
                    BigInt::one()
                } else {
                    BigInt::zero()
                }
            }));
            rows.push(r);
        }
        for l in &self.basis {
            let mut r = l.clone();
            r.extend(std::iter::repeat_n(BigInt::zero(), n));
            rows.push(r);
        }
        Ok(Self::right_block_kernel(n, rows))
    }

    fn right_block_kernel(n: usize, rows: Vec<Vec<BigInt>>) -> Self {
        let (ech, pivots) = echelon(2 * n, rows);
        let basis: Vec<Vec<BigInt>> = ech
            .into_iter()
            .zip(pivots)
            .filter(|(_, p)| *p >= n)
            .map(|(r, _)| r[n..].to_vec())
            .collect();
        // rows with a right-block pivot only ever get reduced against each
        // other, so the block is already canonical
        Self::from_hnf_unchecked(n, basis)
    }

    pub fn contains(&self, v: &[BigInt]) -> Result<bool, LatticeError> {
        if v.len() != self.dim {
            return Err(LatticeError::RankMismatch {
                left: self.dim,
                right: v.len(),
            });
        }
        let mut rem = v.to_vec();
        for row in &self.basis {
            let c = Self::pivot_col(row);
            // everything left of this pivot must already be cleared
            if rem[..c].iter().any(|x| !x.is_zero()) {
                return Ok(false);
            }
            if rem[c].is_zero() {
                continue;
            }
            let (q, r) = rem[c].div_rem(&row[c]);
            if !r.is_zero() {
                return Ok(false);
            }
            for j in c..self.dim {
                if !row[j].is_zero() {
                    rem[j] -= &q * &row[j];
                }
            }
        }
        Ok(rem.iter().all(Zero::is_zero))
    }

    pub fn is_subset_of(&self, other: &IntLattice) -> Result<bool, LatticeError> {
        self.check_dim(other)?;
        for r in &self.basis {
            if !other.contains(r)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return Self::zero(self.dim);
        }
        Self::span(
            self.dim,
            self.basis
                .iter()
                .map(|r| r.iter().map(|x| x * k).collect())
                .collect(),
        )
    }

    /// Coset representatives of `Z^dim / self` in the HNF box, in
    /// lexicographic order. Full rank only.
    pub fn coset_representatives(&self) -> Result<CosetIter, LatticeError> {
        self.require_full_rank()?;
        let bounds = (0..self.dim).map(|i| self.basis[i][i].clone()).collect();
        Ok(CosetIter {
            bounds,
            next: Some(vec![BigInt::zero(); self.dim]),
        })
    }
}

impl fmt::Display for IntLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, r) in self.basis.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            for (j, x) in r.iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{x}")?;
            }
        }
        write!(f, "]")
    }
}

pub struct CosetIter {
    bounds: Vec<BigInt>,
    next: Option<Vec<BigInt>>,
}

impl Iterator for CosetIter {
    type Item = Vec<BigInt>;

    fn next(&mut self) -> Option<Vec<BigInt>> {
        let cur = self.next.take()?;
        let mut succ = cur.clone();
        let mut i = succ.len();
        loop {
            if i == 0 {
                break;
            }
            i -= 1;
            succ[i] += 1;
            if succ[i] < self.bounds[i] {
                self.next = Some(succ);
                break;
            }
            succ[i] = BigInt::zero();
        }
        Some(cur)
    }
}

fn egcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    let e = a.extended_gcd(b);
    if e.gcd.is_negative() {
        (-e.gcd, -e.x, -e.y)
    } else {
        (e.gcd, e.x, e.y)
    }
}

/// Row echelon HNF over Z. Returns the nonzero rows and their pivot columns.
fn echelon(dim: usize, mut rows: Vec<Vec<BigInt>>) -> (Vec<Vec<BigInt>>, Vec<usize>) {
    rows.retain(|r| r.iter().any(|x| !x.is_zero()));
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..dim {
        if r == rows.len() {
            break;
        }
        for i in r + 1..rows.len() {
            if rows[i][c].is_zero() {
                continue;
            }
            if rows[r][c].is_zero() {
                rows.swap(r, i);
                continue;
            }
            let (a, b) = (rows[r][c].clone(), rows[i][c].clone());
            if b.is_multiple_of(&a) {
                let q = &b / &a;
                let (top, bot) = rows.split_at_mut(i);
                let (pr, pi) = (&top[r], &mut bot[0]);
                for j in c..dim {
                    if !pr[j].is_zero() {
                        pi[j] -= &q * &pr[j];
                    }
                }
                continue;
            }
            let (g, s, t) = egcd(&a, &b);
            let (ag, bg) = (&a / &g, &b / &g);
            let (top, bot) = rows.split_at_mut(i);
            let (pr, pi) = (&mut top[r], &mut bot[0]);
            for j in c..dim {
                let x = pr[j].clone();
                let y = pi[j].clone();
                pr[j] = &s * &x + &t * &y;
                pi[j] = &bg * &x - &ag * &y;
            }
        }
        if rows[r][c].is_zero() {
            continue;
        }
        if rows[r][c].is_negative() {
            for x in rows[r][c..].iter_mut() {
                *x = -&*x;
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    for (k, &c) in pivots.iter().enumerate() {
        let (top, bot) = rows.split_at_mut(k);
        let pr = &bot[0];
        for row in top.iter_mut() {
            let q = row[c].div_floor(&pr[c]);
            if q.is_zero() {
                continue;
            }
            for j in c..dim {
                if !pr[j].is_zero() {
                    row[j] -= &q * &pr[j];
                }
            }
        }
    }
    (rows, pivots)
}

/// Checks the canonical-form invariants on a candidate basis.
pub fn is_canonical(dim: usize, basis: &[Vec<BigInt>]) -> bool {
    let mut last: Option<usize> = None;
    for (k, row) in basis.iter().enumerate() {
        if row.len() != dim {
            return false;
        }
        let Some(c) = row.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        if last.is_some_and(|l| c <= l) || !row[c].is_positive() {
            return false;
        }
        for above in &basis[..k] {
            if above[c].is_negative() || above[c] >= row[c] {
                return false;
            }
        }
        last = Some(c);
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lat(rows: &[Vec<i64>]) -> IntLattice {
        IntLattice::span_i64(rows[0].len(), rows)
    }

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    /// Points of the span inside the box [-r, r]^2, by brute force over
    /// small coefficient vectors.
    fn box_points(rows: &[Vec<i64>], r: i64) -> std::collections::BTreeSet<(i64, i64)> {
        let mut out = std::collections::BTreeSet::new();
        let c = 4 * r;
        for a in -c..=c {
            for b in -c..=c {
                let x = a * rows[0][0] + b * rows[1][0];
                let y = a * rows[0][1] + b * rows[1][1];
                if x.abs() <= r && y.abs() <= r {
                    out.insert((x, y));
                }
            }
        }
        out
    }

    #[test]
    fn hnf_examples() {
        let id = IntMatrix::from_rows(2, &[vec![1, 0], vec![0, 1]]);
        assert_eq!(IntLattice::hnf(&id).unwrap(), IntLattice::ambient(2));

        let g = IntMatrix::from_rows(2, &[vec![2, 0], vec![1, 1]]);
        let h = IntLattice::hnf(&g).unwrap();
        assert_eq!(h.basis(), &[big(&[1, 1]), big(&[0, 2])]);
        assert_eq!(
            box_points(&[vec![2, 0], vec![1, 1]], 6),
            box_points(&[vec![1, 1], vec![0, 2]], 6)
        );

        let g = IntMatrix::from_rows(2, &[vec![0, 3], vec![3, 0]]);
        assert_eq!(
            IntLattice::hnf(&g).unwrap().basis(),
            &[big(&[3, 0]), big(&[0, 3])]
        );
    }

    #[test]
    fn hnf_rank_deficient() {
        let g = IntMatrix::from_rows(2, &[vec![2, 4], vec![1, 2]]);
        assert_eq!(
            IntLattice::hnf(&g),
            Err(LatticeError::RankDeficient { rank: 1, dim: 2 })
        );
        assert_eq!(
            IntLattice::span_i64(2, &[vec![2, 4], vec![1, 2]]).basis(),
            &[big(&[1, 2])]
        );
    }

    #[test]
    fn sum_examples() {
        let l = lat(&[vec![1, 1], vec![0, 2]]);
        assert_eq!(l.sum(&l).unwrap(), l);
        let m = lat(&[vec![2, 0], vec![0, 1]]);
        assert_eq!(l.sum(&m).unwrap(), IntLattice::ambient(2));
        assert_eq!(
            l.sum(&IntLattice::ambient(2)).unwrap(),
            IntLattice::ambient(2)
        );
        assert!(matches!(
            l.sum(&IntLattice::ambient(3)),
            Err(LatticeError::RankMismatch { .. })
        ));
    }

    #[test]
    fn intersect_examples() {
        let l = lat(&[vec![1, 1], vec![0, 2]]);
        assert_eq!(l.intersect(&l).unwrap(), l);
        assert_eq!(l.intersect(&IntLattice::ambient(2)).unwrap(), l);
        let three = lat(&[vec![3, 0], vec![0, 3]]);
        let got = three.intersect(&l).unwrap();
        assert_eq!(got.basis(), &[big(&[3, 3]), big(&[0, 6])]);
        // oracle: membership in the box agrees with both defining conditions
        let pts = box_points(&[vec![3, 3], vec![0, 6]], 12);
        for x in -12i64..=12 {
            for y in -12i64..=12 {
                let want = x % 3 == 0 && y % 3 == 0 && (x - y) % 2 == 0;
                assert_eq!(pts.contains(&(x, y)), want, "({x},{y})");
            }
        }
    }

    #[test]
    fn intersect_partial_rank() {
        let line = IntLattice::span_i64(2, &[vec![1, 0]]);
        let l = lat(&[vec![1, 1], vec![0, 2]]);
        assert_eq!(line.intersect(&l).unwrap().basis(), &[big(&[2, 0])]);
        let other = IntLattice::span_i64(2, &[vec![0, 1]]);
        assert_eq!(line.intersect(&other).unwrap().rank(), 0);
    }

    #[test]
    fn index_examples() {
        assert_eq!(IntLattice::ambient(2).index().unwrap(), BigInt::from(1));
        assert_eq!(
            lat(&[vec![1, 1], vec![0, 2]]).index().unwrap(),
            BigInt::from(2)
        );
        assert_eq!(
            lat(&[vec![3, 3], vec![0, 6]]).index().unwrap(),
            BigInt::from(18)
        );
        // coset count cross-check
        assert_eq!(
            lat(&[vec![3, 3], vec![0, 6]])
                .coset_representatives()
                .unwrap()
                .count(),
            18
        );
        assert!(IntLattice::zero(2).index().is_err());
    }

    #[test]
    fn membership_examples() {
        let l = lat(&[vec![1, 1], vec![0, 2]]);
        assert!(l.contains(&big(&[1, 1])).unwrap());
        assert!(!l.contains(&big(&[1, 0])).unwrap());
        assert!(l.is_subset_of(&l).unwrap());
        assert!(l.contains(&big(&[1])).is_err());
    }

    #[test]
    fn preimage_examples() {
        let l = lat(&[vec![1, 1], vec![0, 2]]);
        assert_eq!(l.preimage(&IntMatrix::identity(2)).unwrap(), l);
        let m = IntMatrix::from_rows(2, &[vec![3, 1], vec![-2, 5]]);
        assert_eq!(
            IntLattice::ambient(2).preimage(&m).unwrap(),
            IntLattice::ambient(2)
        );
        let two = IntMatrix::from_rows(2, &[vec![2, 0], vec![0, 2]]);
        assert_eq!(l.preimage(&two).unwrap(), IntLattice::ambient(2));
    }

    #[test]
    fn relative_index_rank_one() {
        let a = IntLattice::span_i64(2, &[vec![1, 0]]);
        let b = IntLattice::span_i64(2, &[vec![6, 0]]);
        assert_eq!(a.relative_index(&b).unwrap(), BigInt::from(6));
        assert_eq!(b.relative_index(&a), Err(LatticeError::NotASublattice));
    }

    #[test]
    fn canonical_check() {
        assert!(is_canonical(2, lat(&[vec![5, 7], vec![2, 9]]).basis()));
        assert!(!is_canonical(2, &[big(&[1, 2]), big(&[0, 2])]));
    }
}
