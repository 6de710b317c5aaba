use conductor_core::lattice::{is_canonical, IntLattice, IntMatrix};
use num_bigint::BigInt;
use proptest::prelude::*;

fn full_rank(dim: usize) -> impl Strategy<Value = IntLattice> {
    prop::collection::vec(prop::collection::vec(-12i64..=12, dim), dim..dim + 3)
        .prop_map(move |rows| IntLattice::span_i64(dim, &rows))
        .prop_filter("full rank", |l| l.is_full_rank())
}

/// Random unimodular row operations applied to a basis.
fn scramble(basis: &[Vec<BigInt>], ops: &[(usize, usize, i64)]) -> Vec<Vec<BigInt>> {
    let mut rows = basis.to_vec();
    let n = rows.len();
    for &(i, j, k) in ops {
        let (i, j) = (i % n, j % n);
        if i == j {
            rows[i] = rows[i].iter().map(|x| -x).collect();
        } else {
            let add: Vec<BigInt> = rows[j].iter().map(|x| x * k).collect();
            for (a, b) in rows[i].iter_mut().zip(add) {
                *a += b;
            }
        }
    }
    rows
}

proptest! {
    #[test]
    fn hnf_is_canonical(l in full_rank(3), ops in prop::collection::vec((0usize..3, 0usize..3, -5i64..=5), 0..12)) {
        prop_assert!(is_canonical(3, l.basis()));
        let again = IntLattice::span(3, scramble(l.basis(), &ops));
        prop_assert_eq!(&again, &l);
        let m = IntMatrix::from_rows(3, l.basis());
        prop_assert_eq!(IntLattice::hnf(&m).unwrap(), l);
    }

    #[test]
    fn second_isomorphism(a in full_rank(2), b in full_rank(2)) {
        let meet = a.intersect(&b).unwrap();
        let join = a.sum(&b).unwrap();
        prop_assert_eq!(meet.index().unwrap() * join.index().unwrap(), a.index().unwrap() * b.index().unwrap());
        prop_assert!(meet.is_subset_of(&a).unwrap() && meet.is_subset_of(&b).unwrap());
        prop_assert!(a.is_subset_of(&join).unwrap() && b.is_subset_of(&join).unwrap());
    }

    #[test]
    fn sum_and_meet_laws(a in full_rank(2), b in full_rank(2), c in full_rank(2)) {
        prop_assert_eq!(a.sum(&b).unwrap(), b.sum(&a).unwrap());
        prop_assert_eq!(a.intersect(&b).unwrap(), b.intersect(&a).unwrap());
        prop_assert_eq!(a.sum(&b).unwrap().sum(&c).unwrap(), a.sum(&b.sum(&c).unwrap()).unwrap());
        prop_assert_eq!(
            a.intersect(&b).unwrap().intersect(&c).unwrap(),
            a.intersect(&b.intersect(&c).unwrap()).unwrap()
        );
    }

    #[test]
    fn mutual_containment_is_equality(a in full_rank(2), b in full_rank(2)) {
        let both = a.is_subset_of(&b).unwrap() && b.is_subset_of(&a).unwrap();
        prop_assert_eq!(both, a == b);
    }

    #[test]
    fn preimage_contains_invariant_lattice(l in full_rank(2), k in 1i64..6) {
        // multiplication by k maps every lattice into itself
        let m = IntMatrix::from_rows(2, &[vec![k, 0], vec![0, k]]);
        let pre = l.preimage(&m).unwrap();
        prop_assert!(l.is_subset_of(&pre).unwrap());
        for v in pre.basis() {
            prop_assert!(l.contains(&m.apply_row(v)).unwrap());
        }
    }

    #[test]
    fn membership_matches_triangular_solve(l in full_rank(2), x in -15i64..=15, y in -15i64..=15) {
        let b = l.basis();
        let (a, off, c) = (b[0][0].clone(), b[0][1].clone(), b[1][1].clone());
        let (x, y) = (BigInt::from(x), BigInt::from(y));
        let in_l = if (&x % &a) == BigInt::from(0) {
            let k = &x / &a;
            ((&y - &k * &off) % &c) == BigInt::from(0)
        } else {
            false
        };
        prop_assert_eq!(l.contains(&[x, y]).unwrap(), in_l);
    }
}
