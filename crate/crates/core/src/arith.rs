//! Small rational-integer helpers: primality, Kronecker symbols, square
//! roots modulo primes and bounded trial division.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) || n.is_multiple_of(3) {
        return false;
    }
    let mut k = 5u64;
    while k.saturating_mul(k) <= n {
        if n.is_multiple_of(k) || n.is_multiple_of(k + 2) {
            return false;
        }
        k += 6;
    }
    true
}

pub fn primes_up_to(n: u64) -> Vec<u64> {
    (2..=n).filter(|&p| is_prime(p)).collect()
}

pub fn is_squarefree(d: i64) -> bool {
    let mut n = d.unsigned_abs();
    if n == 0 {
        return false;
    }
    let mut k = 2u64;
    while k * k <= n {
        if n.is_multiple_of(k * k) {
            return false;
        }
        if n.is_multiple_of(k) {
            n /= k;
        }
        k += 1;
    }
    true
}

pub fn pow_mod(base: u64, mut exp: u64, m: u64) -> u64 {
    let m128 = m as u128;
    let mut b = (base % m) as u128;
    let mut acc = 1u128 % m128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m128;
        }
        b = b * b % m128;
        exp >>= 1;
    }
    acc as u64
}

/// `a mod p` in `[0, p)`.
pub fn residue(a: i64, p: u64) -> u64 {
    a.rem_euclid(p as i64) as u64
}

/// Kronecker symbol `(D/p)` for a prime `p`. At `p = 2` it depends on
/// `D mod 8` only.
pub fn kronecker(disc: i64, p: u64) -> i32 {
    if p == 2 {
        return match disc.rem_euclid(8) {
            1 | 7 => 1,
            3 | 5 => -1,
            _ => 0,
        };
    }
    let a = residue(disc, p);
    if a == 0 {
        return 0;
    }
    if pow_mod(a, (p - 1) / 2, p) == 1 {
        1
    } else {
        -1
    }
}

/// A square root of `a` modulo an odd prime `p` (Tonelli–Shanks), if any.
pub fn sqrt_mod(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    if a == 0 {
        return Some(0);
    }
    if pow_mod(a, (p - 1) / 2, p) != 1 {
        return None;
    }
    if p % 4 == 3 {
        return Some(pow_mod(a, (p + 1) / 4, p));
    }
    let (mut q, mut s) = (p - 1, 0u32);
    while q % 2 == 0 {
        q /= 2;
        s += 1;
    }
    let z = (2..p)
        .find(|&z| pow_mod(z, (p - 1) / 2, p) == p - 1)
        .expect("non-residue exists");
    let mulm = |x: u64, y: u64| ((x as u128 * y as u128) % p as u128) as u64;
    let mut m = s;
    let mut c = pow_mod(z, q, p);
    let mut t = pow_mod(a, q, p);
    let mut r = pow_mod(a, q.div_ceil(2), p);
    while t != 1 {
        let mut i = 0;
        let mut tt = t;
        while tt != 1 {
            tt = mulm(tt, tt);
            i += 1;
        }
        let b = pow_mod(c, 1u64 << (m - i - 1), p);
        m = i;
        c = mulm(b, b);
        t = mulm(t, c);
        r = mulm(r, b);
    }
    Some(r)
}

/// Inverse of `a` modulo `p`, for `gcd(a, p) = 1`.
pub fn inv_mod(a: u64, p: u64) -> u64 {
    let e = (a as i128).extended_gcd(&(p as i128));
    debug_assert_eq!(e.gcd.abs(), 1);
    e.x.rem_euclid(p as i128) as u64
}

/// Exponent of `p` in `n`.
pub fn p_valuation(n: &BigInt, p: u64) -> u32 {
    assert!(!n.is_zero());
    let p = BigInt::from(p);
    let mut n = n.abs();
    let mut v = 0;
    loop {
        let (q, r) = n.div_rem(&p);
        if !r.is_zero() {
            return v;
        }
        n = q;
        v += 1;
    }
}

/// Trial division by every candidate up to `bound`. Returns the prime
/// factorization, or the unfactored cofactor when it still holds a prime
/// above the bound.
pub fn trial_factor(n: &BigInt, bound: u64) -> Result<Vec<(u64, u32)>, BigInt> {
    let mut n = n.abs();
    let mut out = Vec::new();
    if n.is_zero() {
        return Err(n);
    }
    let mut k = 2u64;
    while !n.is_one() {
        let kb = BigInt::from(k);
        if &kb * &kb > n {
            // n is prime now
            let last = n
                .to_u64()
                .filter(|&p| p <= bound)
                .ok_or_else(|| n.clone())?;
            out.push((last, 1));
            break;
        }
        if k > bound {
            return Err(n);
        }
        let mut e = 0;
        loop {
            let (q, r) = n.div_rem(&kb);
            if !r.is_zero() {
                break;
            }
            n = q;
            e += 1;
        }
        if e > 0 {
            out.push((k, e));
        }
        k += if k == 2 { 1 } else { 2 };
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes() {
        assert_eq!(primes_up_to(30), vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert!(is_prime(9_999_991));
        assert!(!is_prime(1));
    }

    #[test]
    fn squarefree() {
        assert!(is_squarefree(-1));
        assert!(is_squarefree(5));
        assert!(is_squarefree(-23));
        assert!(!is_squarefree(12));
        assert!(!is_squarefree(-9));
        assert!(!is_squarefree(0));
    }

    #[test]
    fn kronecker_matches_root_count() {
        // for odd p not dividing D, (D/p) = +1 iff x^2 = D has a root mod p
        for disc in [-4i64, 5, 8, -8, 12, -20, 13, -23, -3] {
            for p in primes_up_to(60) {
                let k = kronecker(disc, p);
                if p == 2 {
                    continue;
                }
                let roots = (0..p).filter(|&x| (x * x) % p == residue(disc, p)).count();
                let want = match roots {
                    0 => -1,
                    1 => 0,
                    _ => 1,
                };
                assert_eq!(k, want, "D={disc} p={p}");
            }
        }
        assert_eq!(kronecker(-4, 2), 0);
        assert_eq!(kronecker(5, 2), -1);
        assert_eq!(kronecker(-23, 2), 1);
        assert_eq!(kronecker(-3, 2), -1);
    }

    #[test]
    fn tonelli_shanks() {
        for p in primes_up_to(200).into_iter().skip(1) {
            for a in 0..p {
                match sqrt_mod(a, p) {
                    Some(r) => assert_eq!(r * r % p, a),
                    None => assert!((0..p).all(|x| x * x % p != a)),
                }
            }
        }
    }

    #[test]
    fn factoring() {
        assert_eq!(
            trial_factor(&BigInt::from(360), 100).unwrap(),
            vec![(2, 3), (3, 2), (5, 1)]
        );
        assert_eq!(trial_factor(&BigInt::from(1), 100).unwrap(), vec![]);
        assert_eq!(trial_factor(&BigInt::from(49), 7).unwrap(), vec![(7, 2)]);
        assert_eq!(
            trial_factor(&BigInt::from(2 * 101), 50),
            Err(BigInt::from(101))
        );
        assert_eq!(p_valuation(&BigInt::from(-48), 2), 4);
        assert_eq!(inv_mod(2, 5), 3);
    }
}
