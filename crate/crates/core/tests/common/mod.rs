//! Reference computations for the integration tests. Everything here is
//! deliberately naive and shares no code with the library.

#![allow(dead_code)]

use resmat::matrix::{Permutation, RootMatrix};

pub fn is_prime_td(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub fn odd_primes_below(bound: u64) -> Vec<u64> {
    (3..bound).filter(|&n| is_prime_td(n)).collect()
}

/// Legendre symbol by listing the squares mod `p`.
pub fn legendre_by_squares(a: i64, p: u64) -> i8 {
    let r = a.rem_euclid(p as i64) as u64;
    if r == 0 {
        return 0;
    }
    if (1..p).any(|x| x * x % p == r) {
        1
    } else {
        -1
    }
}

pub fn factorize(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        while n.is_multiple_of(d) {
            out.push(d);
            n /= d;
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Squares mod each odd prime up to `bound`, indexed by prime.
pub struct SquareTable {
    squares: Vec<Vec<bool>>,
}

impl SquareTable {
    pub fn new(bound: u64) -> Self {
        let mut squares = vec![Vec::new(); bound as usize + 1];
        for p in odd_primes_below(bound + 1) {
            let mut t = vec![false; p as usize];
            for x in 1..p {
                t[(x * x % p) as usize] = true;
            }
            squares[p as usize] = t;
        }
        SquareTable { squares }
    }

    pub fn legendre(&self, a: i64, p: u64) -> i8 {
        let r = a.rem_euclid(p as i64) as usize;
        if r == 0 {
            0
        } else if self.squares[p as usize][r] {
            1
        } else {
            -1
        }
    }

    /// Product of Legendre symbols over the factorization of odd `n`.
    pub fn jacobi(&self, a: i64, factors: &[u64]) -> i8 {
        factors.iter().map(|&p| self.legendre(a, p)).product()
    }
}

/// QR matrix computed directly from the definition with the square oracle.
pub fn qr_matrix_oracle(primes: &[u64]) -> Vec<Vec<i8>> {
    let n = primes.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        0
                    } else {
                        legendre_by_squares(primes[i] as i64, primes[j])
                    }
                })
                .collect()
        })
        .collect()
}

/// Whether some simultaneous permutation puts `m` into the shape
/// `[[A, S'], [S'^t, S]]` with `A` skew-symmetric of size `s >= 1`, `S`
/// symmetric, and the off-diagonal blocks related by transposition.
pub fn has_block_form(m: &RootMatrix) -> bool {
    let n = m.n();
    let signs = m.to_signs();
    Permutation::all(n).any(|perm| {
        let img = perm.image();
        let at = |i: usize, j: usize| signs[img[i]][img[j]];
        (1..=n).any(|s| {
            (0..n).all(|i| {
                (0..n).all(|j| {
                    if i == j {
                        return true;
                    }
                    if i < s && j < s {
                        at(i, j) == -at(j, i)
                    } else {
                        at(i, j) == at(j, i)
                    }
                })
            })
        })
    })
}

/// Ring data for `Z[g]` with `g² = c0 + c1·g`.
#[derive(Clone, Copy)]
pub struct Ring {
    pub c0: i64,
    pub c1: i64,
    /// Symbol order (4 for `Z[i]`, 3 for `Z[ω]`).
    pub m: u64,
}

pub const GAUSSIAN: Ring = Ring {
    c0: -1,
    c1: 0,
    m: 4,
};
pub const EISENSTEIN: Ring = Ring {
    c0: -1,
    c1: -1,
    m: 3,
};

impl Ring {
    pub fn norm(self, (a, b): (i64, i64)) -> i64 {
        // N(a + bg) = a² + c1·ab - c0·b²
        a * a + self.c1 * a * b - self.c0 * b * b
    }

    /// Primary congruence, written out from the definitions.
    pub fn is_primary(self, (a, b): (i64, i64)) -> bool {
        if self.m == 4 {
            let (a4, b4) = (a.rem_euclid(4), b.rem_euclid(4));
            (a4, b4) == (1, 0) || (a4, b4) == (3, 2)
        } else {
            a.rem_euclid(3) == 1 && b.rem_euclid(3) == 0
        }
    }

    fn ramified(self) -> u64 {
        if self.m == 4 {
            2
        } else {
            3
        }
    }

    fn inert(self, p: u64) -> bool {
        if self.m == 4 {
            p % 4 == 3
        } else {
            p % 3 == 2
        }
    }

    /// Every primary prime element with norm below `bound`: split primes
    /// of prime norm, and `-p` for inert `p`.
    pub fn primary_primes(self, bound: i64) -> Vec<(i64, i64)> {
        let r = (2.0 * bound as f64).sqrt() as i64 + 2;
        let mut out = Vec::new();
        for a in -r..=r {
            for b in -r..=r {
                let n = self.norm((a, b));
                if n <= 1 || n >= bound || !self.is_primary((a, b)) {
                    continue;
                }
                let n = n as u64;
                let split = is_prime_td(n) && !n.is_multiple_of(self.ramified());
                let inert = b == 0
                    && a < 0
                    && is_prime_td(a.unsigned_abs())
                    && self.inert(a.unsigned_abs());
                if split || inert {
                    out.push((a, b));
                }
            }
        }
        out.sort_by_key(|&(a, b)| (self.norm((a, b)), a, b));
        out
    }

    fn mul_mod(self, x: (u64, u64), y: (u64, u64), p: u64) -> (u64, u64) {
        let p128 = p as i128;
        let (a, b) = (x.0 as i128, x.1 as i128);
        let (c, d) = (y.0 as i128, y.1 as i128);
        // (a + bg)(c + dg) = ac + (ad + bc)g + bd·g²
        let bd = b * d;
        let re = (a * c + bd * self.c0 as i128).rem_euclid(p128);
        let im = (a * d + b * c + bd * self.c1 as i128).rem_euclid(p128);
        (re as u64, im as u64)
    }

    fn pow_mod(self, mut x: (u64, u64), mut e: u64, p: u64) -> (u64, u64) {
        let mut acc = (1, 0);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_mod(acc, x, p);
            }
            x = self.mul_mod(x, x, p);
            e >>= 1;
        }
        acc
    }

    /// Power residue symbol `(x/q)` as an exponent of `g`, or `None` when
    /// `q` divides `x`. For split `q` of norm `p` the residue field is
    /// `F_p` with `g` sent to the root killing `q`; for `q = -p` inert it
    /// is `F_p[g]` itself.
    pub fn symbol(self, x: (i64, i64), q: (i64, i64)) -> Option<u8> {
        let nq = self.norm(q) as u64;
        if is_prime_td(nq) {
            let p = nq;
            let pi = p as i64;
            let r = (0..p)
                .find(|&r| {
                    let r = r as i64;
                    (q.0 + q.1 * r).rem_euclid(pi) == 0
                        && (r * r - self.c0 - self.c1 * r).rem_euclid(pi) == 0
                })
                .expect("a root exists for a split prime");
            let reduce = |(a, b): (i64, i64)| ((a + b * r as i64).rem_euclid(pi)) as u64;
            let xf = reduce(x);
            if xf == 0 {
                return None;
            }
            let t = self.pow_mod((xf, 0), (p - 1) / self.m, p).0;
            let mut z = 1u64;
            for e in 0..self.m {
                if z == t {
                    return Some(e as u8);
                }
                z = z * r % p;
            }
            panic!("no root of unity matched");
        }
        let p = q.0.unsigned_abs();
        assert_eq!(q.1, 0);
        let pi = p as i64;
        let xr = (x.0.rem_euclid(pi) as u64, x.1.rem_euclid(pi) as u64);
        if xr == (0, 0) {
            return None;
        }
        let t = self.pow_mod(xr, (p * p - 1) / self.m, p);
        let mut z = (1u64, 0u64);
        for e in 0..self.m {
            if z == t {
                return Some(e as u8);
            }
            z = self.mul_mod(z, (0, 1), p);
        }
        panic!("no root of unity matched");
    }
}
