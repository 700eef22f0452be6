//! Modular helpers over machine words. Every modulus used in this crate fits
//! in a `u64`; products are taken in `u128`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::ToPrimitive;

pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Inverse modulo a prime `p`, or `None` for zero.
pub fn inv_mod(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    if a == 0 {
        None
    } else {
        Some(pow_mod(a, p - 2, p))
    }
}

/// Deterministic Miller–Rabin for the full `u64` range.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const SMALL: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &s in &SMALL {
        if n.is_multiple_of(s) {
            return n == s;
        }
    }
    let mut d = n - 1;
    let mut r = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        r += 1;
    }
    'witness: for &w in &SMALL {
        let mut x = pow_mod(w, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..r {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Legendre symbol `(n | p)` for an odd prime `p`, by Euler's criterion.
pub fn legendre(n: i128, p: u64) -> i32 {
    let r = n.rem_euclid(p as i128) as u64;
    match pow_mod(r, (p - 1) / 2, p) {
        0 => 0,
        1 => 1,
        _ => -1,
    }
}

/// Reduces a signed integer to its canonical residue in `0..p`.
pub fn reduce_i128(n: i128, p: u64) -> u64 {
    n.rem_euclid(p as i128) as u64
}

pub fn reduce_big(n: &BigInt, p: u64) -> u64 {
    n.mod_floor(&BigInt::from(p))
        .to_u64()
        .expect("residue fits in u64")
}

/// Reduces a rational number modulo `p`; `None` when `p` divides the denominator.
pub fn reduce_rational(x: &BigRational, p: u64) -> Option<u64> {
    let den = reduce_big(x.denom(), p);
    let num = reduce_big(x.numer(), p);
    inv_mod(den, p).map(|d| mul_mod(num, d, p))
}

pub fn neg_mod(a: u64, p: u64) -> u64 {
    if a.is_multiple_of(p) {
        0
    } else {
        p - a % p
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trial_division(n: u64) -> bool {
        n >= 2
            && (2..)
                .take_while(|d| d * d <= n)
                .all(|d| !n.is_multiple_of(d))
    }

    #[test]
    fn primality_matches_trial_division() {
        for n in 0..5000 {
            assert_eq!(is_prime(n), trial_division(n), "n = {n}");
        }
        assert!(is_prime(1_000_000_007));
        assert!(!is_prime(3_215_031_751)); // strong pseudoprime to bases 2, 3, 5, 7
        assert!(is_prime(18_446_744_073_709_551_557));
    }

    #[test]
    fn legendre_matches_square_enumeration() {
        for p in [3u64, 5, 7, 11, 13, 97] {
            let squares: Vec<u64> = (1..p).map(|x| x * x % p).collect();
            for n in 0..p as i128 {
                let expected = if n == 0 {
                    0
                } else if squares.contains(&(n as u64)) {
                    1
                } else {
                    -1
                };
                assert_eq!(legendre(n, p), expected);
                assert_eq!(legendre(n - p as i128, p), expected);
            }
        }
    }

    #[test]
    fn inverse_and_rational_reduction() {
        assert_eq!(inv_mod(0, 7), None);
        for a in 1..7 {
            assert_eq!(mul_mod(a, inv_mod(a, 7).unwrap(), 7), 1);
        }
        let x = BigRational::new(BigInt::from(-5), BigInt::from(4));
        // -5/4 mod 3 = 1 * 1 = 1
        assert_eq!(reduce_rational(&x, 3), Some(1));
        let y = BigRational::new(BigInt::from(1), BigInt::from(3));
        assert_eq!(reduce_rational(&y, 3), None);
    }
}
