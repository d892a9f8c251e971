//! Rational-integer number theory: sieving, deterministic primality,
//! Legendre and Jacobi symbols, CRT and prime search in progressions.

use std::fmt;

use crate::error::{invalid, Error, Result};

/// An odd rational prime (so at least 3).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OddPrime(u64);

impl OddPrime {
    pub fn new(value: u64) -> Result<Self> {
        if value % 2 == 1 && is_prime(value) {
            Ok(OddPrime(value))
        } else {
            Err(invalid(format!("{value} is not an odd prime")))
        }
    }

    pub fn get(self) -> u64 {
        self.0
    }

    /// Residue mod 4 (1 or 3).
    pub fn mod4(self) -> u64 {
        self.0 % 4
    }
}

impl fmt::Display for OddPrime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Primes `<= bound`, ascending (sieve of Eratosthenes over odd numbers).
pub fn sieve_primes(bound: u64) -> Vec<u64> {
    if bound < 2 {
        return Vec::new();
    }
    let bound = usize::try_from(bound).expect("sieve bound fits in memory");
    // index k stands for 2k+1
    let half = bound.div_ceil(2);
    let mut composite = vec![false; half];
    let mut k = 1;
    while (2 * k + 1) * (2 * k + 1) <= bound {
        if !composite[k] {
            let p = 2 * k + 1;
            let mut j = p * p / 2;
            while j < half {
                composite[j] = true;
                j += p;
            }
        }
        k += 1;
    }
    let mut primes = vec![2];
    primes.extend(
        composite
            .iter()
            .enumerate()
            .skip(1)
            .filter(|(_, &c)| !c)
            .map(|(k, _)| (2 * k + 1) as u64),
    );
    primes
}

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

/// Deterministic Miller–Rabin. The first twelve prime bases are exact
/// for every 64-bit input.
pub fn is_prime(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &p in &BASES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut r = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        r += 1;
    }
    'witness: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
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

/// Legendre symbol `(a/p)` by Euler's criterion.
pub fn legendre(a: i64, p: OddPrime) -> i8 {
    let p = p.get();
    let a = a.rem_euclid(p as i64) as u64;
    match pow_mod(a, (p - 1) / 2, p) {
        0 => 0,
        1 => 1,
        _ => -1,
    }
}

/// Jacobi symbol `(a/n)` for odd positive `n`, by the binary reciprocity
/// algorithm (no factoring).
pub fn jacobi(a: i64, n: u64) -> Result<i8> {
    if n.is_multiple_of(2) {
        return Err(invalid(format!(
            "Jacobi symbol needs an odd positive modulus, got {n}"
        )));
    }
    let mut a = (a as i128).rem_euclid(n as i128) as u64;
    let mut n = n;
    let mut acc = 1i8;
    while a != 0 {
        while a.is_multiple_of(2) {
            a /= 2;
            if matches!(n % 8, 3 | 5) {
                acc = -acc;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            acc = -acc;
        }
        a %= n;
    }
    Ok(if n == 1 { acc } else { 0 })
}

pub fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Inverse of `a` mod `m`, if it exists.
fn inv_mod(a: u128, m: u128) -> Option<u128> {
    let (mut old_r, mut r) = (a as i128 % m as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    (old_r == 1).then(|| old_s.rem_euclid(m as i128) as u128)
}

/// The unique `x` in `[0, ∏ moduli)` with `x ≡ residues[k] (mod moduli[k])`.
pub fn crt(residues: &[i128], moduli: &[u128]) -> Result<u128> {
    if residues.len() != moduli.len() {
        return Err(invalid("residue and modulus lists differ in length"));
    }
    let mut x: u128 = 0;
    let mut modulus: u128 = 1;
    for (&r, &m) in residues.iter().zip(moduli) {
        if m == 0 {
            return Err(invalid("modulus 0"));
        }
        if gcd(modulus, m) != 1 {
            return Err(invalid(format!("modulus {m} is not coprime to the others")));
        }
        let r = r.rem_euclid(m as i128) as u128;
        let next = modulus
            .checked_mul(m)
            .filter(|&v| v < 1 << 126)
            .ok_or_else(|| invalid("product of moduli exceeds 2^126"))?;
        // x + modulus * t ≡ r (mod m)
        let inv = inv_mod(modulus % m, m).ok_or_else(|| Error::Internal("no inverse".into()))?;
        let diff = (r + m - x % m) % m;
        let t = mulmod_u128(diff, inv, m);
        x += modulus * t;
        modulus = next;
    }
    Ok(x % modulus)
}

fn mulmod_u128(a: u128, b: u128, m: u128) -> u128 {
    if let Some(p) = a.checked_mul(b) {
        return p % m;
    }
    // double-and-add; only reached for moduli beyond 64 bits
    let (mut a, mut b, mut acc) = (a % m, b, 0u128);
    while b > 0 {
        if b & 1 == 1 {
            acc = (acc + a) % m;
        }
        a = (a << 1) % m;
        b >>= 1;
    }
    acc
}

/// The smallest prime `p ≡ residue (mod modulus)` with
/// `max(modulus, 2) < p <= limit`.
pub fn prime_in_progression(residue: i128, modulus: u128, limit: u64) -> Result<OddPrime> {
    if modulus == 0 {
        return Err(invalid("modulus 0"));
    }
    let r = residue.rem_euclid(modulus as i128) as u128;
    if gcd(r, modulus) != 1 {
        return Err(invalid(format!(
            "gcd({residue}, {modulus}) != 1: progression holds at most one prime"
        )));
    }
    let exhausted = || Error::SearchExhausted {
        residue: r,
        modulus,
        limit,
    };
    let floor = modulus.max(2);
    let mut candidate = r;
    if candidate <= floor {
        candidate += ((floor - candidate) / modulus + 1) * modulus;
    }
    while candidate <= limit as u128 {
        let c = candidate as u64;
        if c % 2 == 1 && is_prime(c) {
            return Ok(OddPrime(c));
        }
        candidate = candidate.checked_add(modulus).ok_or_else(exhausted)?;
    }
    Err(exhausted())
}
