//! Exact arithmetic in `Z[i]` and `Z[ω]` (with `ω² + ω + 1 = 0`), primary
//! generators, and the quartic and cubic residue symbols.
//!
//! Residue symbols are returned as exponents: the cubic symbol `e` stands
//! for `ω^e`, the quartic symbol `e` for `i^e`.

use std::fmt;
use std::hash::Hash;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use serde::Serialize;

use crate::error::{invalid, Error, Result};
use crate::rational::{is_prime, mul_mod, pow_mod};

/// Shared interface of the two imaginary quadratic rings. Elements are
/// `a + b·g` with `g = i` or `g = ω`.
pub trait QuadInt:
    'static
    + Copy
    + Eq
    + Hash
    + fmt::Debug
    + fmt::Display
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    /// Order of the residue symbol carried by this ring (4 or 3).
    const SYMBOL_ORDER: u8;
    /// The rational prime that ramifies (2 or 3).
    const RAMIFIED: u64;
    /// Suffix used in the textual syntax (`i` or `w`).
    const SUFFIX: char;

    fn new(a: i64, b: i64) -> Self;
    fn parts(self) -> (i64, i64);
    fn norm(self) -> i64;
    fn conj(self) -> Self;
    /// All units, starting with 1.
    fn units() -> &'static [Self];
    /// The primitive root of unity of order `SYMBOL_ORDER`.
    fn zeta() -> Self;
    /// The primary congruence condition, without a primality check.
    fn is_primary_form(self) -> bool;
    /// Whether the rational prime `p` stays prime in this ring.
    fn is_inert(p: u64) -> bool;
    /// Reduction of `g²` in the basis: `g² = c0 + c1·g`.
    const GEN_SQUARE: (i64, i64);

    fn zero() -> Self {
        Self::new(0, 0)
    }

    fn one() -> Self {
        Self::new(1, 0)
    }

    fn is_zero(self) -> bool {
        self.parts() == (0, 0)
    }

    fn is_unit(self) -> bool {
        self.norm() == 1
    }

    /// `ζ^e`.
    fn zeta_pow(e: u8) -> Self {
        (0..e).fold(Self::one(), |acc, _| acc * Self::zeta())
    }
}

/// `a + b i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct GaussianInt {
    pub a: i64,
    pub b: i64,
}

/// `a + b ω`, `ω² = -1 - ω`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct EisensteinInt {
    pub a: i64,
    pub b: i64,
}

impl GaussianInt {
    pub const fn new(a: i64, b: i64) -> Self {
        GaussianInt { a, b }
    }
}

impl EisensteinInt {
    pub const fn new(a: i64, b: i64) -> Self {
        EisensteinInt { a, b }
    }
}

macro_rules! ring_ops {
    ($t:ident) => {
        impl Add for $t {
            type Output = $t;
            fn add(self, o: $t) -> $t {
                $t::new(self.a + o.a, self.b + o.b)
            }
        }

        impl Sub for $t {
            type Output = $t;
            fn sub(self, o: $t) -> $t {
                $t::new(self.a - o.a, self.b - o.b)
            }
        }

        impl Neg for $t {
            type Output = $t;
            fn neg(self) -> $t {
                $t::new(-self.a, -self.b)
            }
        }

        impl Mul for $t {
            type Output = $t;
            fn mul(self, o: $t) -> $t {
                let (c0, c1) = <$t as QuadInt>::GEN_SQUARE;
                let bd = self.b * o.b;
                $t::new(
                    self.a * o.a + c0 * bd,
                    self.a * o.b + self.b * o.a + c1 * bd,
                )
            }
        }

        impl fmt::Display for $t {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                let sign = if self.b < 0 { '-' } else { '+' };
                write!(
                    f,
                    "{}{}{}{}",
                    self.a,
                    sign,
                    self.b.unsigned_abs(),
                    <$t as QuadInt>::SUFFIX
                )
            }
        }

        impl FromStr for $t {
            type Err = Error;
            fn from_str(s: &str) -> Result<$t> {
                parse_element(s, <$t as QuadInt>::SUFFIX).map(|(a, b)| $t::new(a, b))
            }
        }
    };
}

ring_ops!(GaussianInt);
ring_ops!(EisensteinInt);

const GAUSSIAN_UNITS: [GaussianInt; 4] = [
    GaussianInt::new(1, 0),
    GaussianInt::new(0, 1),
    GaussianInt::new(-1, 0),
    GaussianInt::new(0, -1),
];

const EISENSTEIN_UNITS: [EisensteinInt; 6] = [
    EisensteinInt::new(1, 0),
    EisensteinInt::new(1, 1),
    EisensteinInt::new(0, 1),
    EisensteinInt::new(-1, 0),
    EisensteinInt::new(-1, -1),
    EisensteinInt::new(0, -1),
];

impl QuadInt for GaussianInt {
    const SYMBOL_ORDER: u8 = 4;
    const RAMIFIED: u64 = 2;
    const SUFFIX: char = 'i';
    const GEN_SQUARE: (i64, i64) = (-1, 0);

    fn new(a: i64, b: i64) -> Self {
        GaussianInt { a, b }
    }

    fn parts(self) -> (i64, i64) {
        (self.a, self.b)
    }

    fn norm(self) -> i64 {
        self.a * self.a + self.b * self.b
    }

    fn conj(self) -> Self {
        GaussianInt::new(self.a, -self.b)
    }

    fn units() -> &'static [Self] {
        &GAUSSIAN_UNITS
    }

    fn zeta() -> Self {
        GaussianInt::new(0, 1)
    }

    fn is_primary_form(self) -> bool {
        matches!(
            (self.a.rem_euclid(4), self.b.rem_euclid(4)),
            (1, 0) | (3, 2)
        )
    }

    fn is_inert(p: u64) -> bool {
        p % 4 == 3
    }
}

impl QuadInt for EisensteinInt {
    const SYMBOL_ORDER: u8 = 3;
    const RAMIFIED: u64 = 3;
    const SUFFIX: char = 'w';
    const GEN_SQUARE: (i64, i64) = (-1, -1);

    fn new(a: i64, b: i64) -> Self {
        EisensteinInt { a, b }
    }

    fn parts(self) -> (i64, i64) {
        (self.a, self.b)
    }

    fn norm(self) -> i64 {
        self.a * self.a - self.a * self.b + self.b * self.b
    }

    fn conj(self) -> Self {
        // conj(ω) = ω² = -1 - ω
        EisensteinInt::new(self.a - self.b, -self.b)
    }

    fn units() -> &'static [Self] {
        &EISENSTEIN_UNITS
    }

    fn zeta() -> Self {
        EisensteinInt::new(0, 1)
    }

    fn is_primary_form(self) -> bool {
        self.a.rem_euclid(3) == 1 && self.b.rem_euclid(3) == 0
    }

    fn is_inert(p: u64) -> bool {
        p % 3 == 2
    }
}

impl GaussianInt {
    /// Residue class of `a + bi` modulo 4, as `(a mod 4, b mod 4)`.
    pub fn class_mod4(self) -> (i64, i64) {
        (self.a.rem_euclid(4), self.b.rem_euclid(4))
    }

    /// Primary and congruent to `3 + 2i` mod 4.
    pub fn is_three_plus_two_i_class(self) -> bool {
        self.class_mod4() == (3, 2)
    }
}

pub fn norm<T: QuadInt>(x: T) -> i64 {
    x.norm()
}

/// Euclidean division with each coordinate of `x / q` rounded to the
/// nearest integer; the remainder has norm strictly below `N(q)`.
pub fn div_rem<T: QuadInt>(x: T, q: T) -> (T, T) {
    assert!(!q.is_zero(), "division by zero");
    let n = q.norm() as i128;
    let (u, v) = (x * q.conj()).parts();
    let round = |t: i64| -> i64 {
        let t = t as i128;
        // floor((2t + n) / 2n)
        (2 * t + n).div_euclid(2 * n) as i64
    };
    let quot = T::new(round(u), round(v));
    (quot, x - quot * q)
}

pub fn rem<T: QuadInt>(x: T, q: T) -> T {
    div_rem(x, q).1
}

pub fn divides<T: QuadInt>(q: T, x: T) -> bool {
    rem(x, q).is_zero()
}

/// A greatest common divisor (defined up to units).
pub fn gcd<T: QuadInt>(mut x: T, mut y: T) -> T {
    while !y.is_zero() {
        let r = rem(x, y);
        x = y;
        y = r;
    }
    x
}

/// True iff `x` generates a prime ideal.
pub fn is_prime_element<T: QuadInt>(x: T) -> Result<bool> {
    if x.is_zero() || x.is_unit() {
        return Err(invalid(format!("{x} is zero or a unit")));
    }
    let n = x.norm() as u64;
    if is_prime(n) {
        return Ok(true);
    }
    let p = isqrt(n);
    if p * p != n || !is_prime(p) || !T::is_inert(p) {
        return Ok(false);
    }
    let (a, b) = x.parts();
    let p = p as i64;
    Ok(a % p == 0 && b % p == 0)
}

fn isqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

/// A prime element in its primary normalization: `≡ 1 mod 3` in `Z[ω]`,
/// `≡ 1` or `3 + 2i mod 4` in `Z[i]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimaryPrime<T> {
    element: T,
}

impl<T: QuadInt> PrimaryPrime<T> {
    /// Accepts `x` only if it is already a primary prime element.
    pub fn new(x: T) -> Result<Self> {
        let p = primary_generator(x)?;
        if p.element != x {
            return Err(invalid(format!(
                "{x} is not primary (its primary associate is {})",
                p.element
            )));
        }
        Ok(p)
    }

    pub fn element(self) -> T {
        self.element
    }

    pub fn norm(self) -> i64 {
        self.element.norm()
    }

    /// Whether `self` and `other` generate the same ideal.
    pub fn same_ideal(self, other: PrimaryPrime<T>) -> bool {
        self.element == other.element
    }
}

impl<T: QuadInt> fmt::Display for PrimaryPrime<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.element, f)
    }
}

/// The unique primary associate of the prime element `x`.
pub fn primary_generator<T: QuadInt>(x: T) -> Result<PrimaryPrime<T>> {
    if !is_prime_element(x)? {
        return Err(invalid(format!("{x} is not a prime element")));
    }
    if (x.norm() as u64).is_multiple_of(T::RAMIFIED) {
        return Err(Error::RamifiedPrime);
    }
    let mut found = T::units()
        .iter()
        .map(|&u| u * x)
        .filter(|y| y.is_primary_form());
    match (found.next(), found.next()) {
        (Some(element), None) => Ok(PrimaryPrime { element }),
        _ => Err(Error::Internal(format!(
            "{x}: expected exactly one primary associate"
        ))),
    }
}

/// `x^e mod q`, reducing by Euclidean division after every product.
pub fn pow_mod_elem<T: QuadInt>(x: T, mut e: u64, q: T) -> T {
    let mut base = rem(x, q);
    let mut acc = rem(T::one(), q);
    while e > 0 {
        if e & 1 == 1 {
            acc = rem(acc * base, q);
        }
        base = rem(base * base, q);
        e >>= 1;
    }
    acc
}

/// For a prime `q` of prime norm `p`, the image `r` of the generator under
/// the map `Z[g]/(q) -> F_p`.
fn residue_field_root<T: QuadInt>(q: T) -> Option<(u64, u64)> {
    let p = q.norm() as u64;
    if !is_prime(p) || p.is_multiple_of(T::RAMIFIED) {
        return None;
    }
    let (a, b) = q.parts();
    let pi = p as i64;
    let (a, b) = (a.rem_euclid(pi) as u64, b.rem_euclid(pi) as u64);
    // a + b r ≡ 0  =>  r ≡ -a / b
    let b_inv = pow_mod(b, p - 2, p);
    let r = mul_mod((p - a) % p, b_inv, p);
    // r must be a root of the minimal polynomial g² - c1 g - c0
    let (c0, c1) = T::GEN_SQUARE;
    let lhs = mul_mod(r, r, p) as i128;
    let rhs = (c0 as i128 + c1 as i128 * r as i128).rem_euclid(p as i128);
    debug_assert_eq!(lhs, rhs);
    Some((p, r))
}

fn reduce_to_field<T: QuadInt>(x: T, p: u64, r: u64) -> u64 {
    let (a, b) = x.parts();
    let pi = p as i64;
    let a = a.rem_euclid(pi) as u64;
    let b = b.rem_euclid(pi) as u64;
    (a + mul_mod(b, r, p)) % p
}

/// General power residue symbol `x^{(Nq-1)/m} mod q`, matched against
/// `ζ^e` by divisibility. Works for every prime `q` coprime to the
/// ramified prime, inert ones included.
pub fn power_residue_general<T: QuadInt>(x: T, q: T) -> Result<u8> {
    if divides(q, x) {
        return Err(Error::NotCoprime);
    }
    let m = T::SYMBOL_ORDER;
    let exp = (q.norm() as u64 - 1) / m as u64;
    let t = pow_mod_elem(x, exp, q);
    (0..m)
        .find(|&e| divides(q, t - T::zeta_pow(e)))
        .ok_or_else(|| Error::Internal(format!("no root of unity matches {x}^{exp} mod {q}")))
}

/// Power residue symbol through the residue field `F_p` when `N(q) = p`
/// is prime; falls back to [`power_residue_general`] otherwise.
pub fn power_residue<T: QuadInt>(x: T, q: T) -> Result<u8> {
    let Some((p, r)) = residue_field_root(q) else {
        return power_residue_general(x, q);
    };
    let xf = reduce_to_field(x, p, r);
    if xf == 0 {
        return Err(Error::NotCoprime);
    }
    let m = T::SYMBOL_ORDER as u64;
    let t = pow_mod(xf, (p - 1) / m, p);
    let mut zeta_e = 1u64;
    for e in 0..m {
        if zeta_e == t {
            return Ok(e as u8);
        }
        zeta_e = mul_mod(zeta_e, r, p);
    }
    Err(Error::Internal(format!(
        "no root of unity matches {x} mod {q}"
    )))
}

/// Cubic residue symbol `(x/q)_3` as an exponent of `ω`.
pub fn cubic_symbol(x: EisensteinInt, q: PrimaryPrime<EisensteinInt>) -> Result<u8> {
    power_residue(x, q.element)
}

/// Quartic residue symbol `(x/q)_4` as an exponent of `i`.
pub fn quartic_symbol(x: GaussianInt, q: PrimaryPrime<GaussianInt>) -> Result<u8> {
    power_residue(x, q.element)
}

/// Checks `(p/q)_4 · conj((q/p)_4) = (-1)^{((Np-1)/4)((Nq-1)/4)}`.
pub fn check_quartic_reciprocity(
    p: PrimaryPrime<GaussianInt>,
    q: PrimaryPrime<GaussianInt>,
) -> Result<bool> {
    if p.same_ideal(q) {
        return Err(invalid(
            "quartic reciprocity needs two distinct prime ideals",
        ));
    }
    let lhs = (4 + quartic_symbol(p.element, q)? - quartic_symbol(q.element, p)?) % 4;
    let e = ((p.norm() - 1) / 4) * ((q.norm() - 1) / 4);
    let rhs = if e % 2 == 0 { 0 } else { 2 };
    Ok(lhs == rhs)
}

/// Checks `(p/q)_3 = (q/p)_3`.
pub fn check_cubic_reciprocity(
    p: PrimaryPrime<EisensteinInt>,
    q: PrimaryPrime<EisensteinInt>,
) -> Result<bool> {
    if p.same_ideal(q) {
        return Err(invalid("cubic reciprocity needs two distinct prime ideals"));
    }
    Ok(cubic_symbol(p.element, q)? == cubic_symbol(q.element, p)?)
}

/// The two primary primes above a split rational prime `p`, ordered by
/// ascending `a` then descending `b`. `None` if `p` does not split.
pub fn split_primes<T: QuadInt>(p: u64) -> Option<[PrimaryPrime<T>; 2]> {
    let m = T::SYMBOL_ORDER as u64;
    if !is_prime(p) || p.is_multiple_of(T::RAMIFIED) || p % m != 1 || T::is_inert(p) {
        return None;
    }
    // a primitive m-th root of unity mod p is a root of the minimal
    // polynomial of the generator
    let r = (2..p).find_map(|c| {
        let r = pow_mod(c, (p - 1) / m, p);
        let primitive = (1..m).all(|k| pow_mod(r, k, p) != 1);
        primitive.then_some(r)
    })?;
    let (c0, c1) = T::GEN_SQUARE;
    debug_assert_eq!(
        mul_mod(r, r, p) as i128,
        (c0 as i128 + c1 as i128 * r as i128).rem_euclid(p as i128)
    );
    let pi = T::new(p as i64, 0);
    let g = gcd(pi, T::new(-(r as i64), 1));
    if g.norm() as u64 != p {
        return None;
    }
    let first = primary_generator(g).ok()?;
    let second = primary_generator(g.conj()).ok()?;
    let mut pair = [first, second];
    pair.sort_by_key(|x| {
        let (a, b) = x.element.parts();
        (a, std::cmp::Reverse(b))
    });
    Some(pair)
}

/// Parses `a+bG`, `a-bG`, `a`, `bG`, `G`, `-G` with optional spaces, where
/// `G` is the suffix character.
fn parse_element(s: &str, suffix: char) -> Result<(i64, i64)> {
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let err = |msg: &str| Error::Parse {
        line: 1,
        column: 1,
        message: format!("{msg}: {s:?}"),
    };
    if compact.is_empty() {
        return Err(err("empty element"));
    }
    // split into signed terms
    let mut terms = Vec::new();
    let mut start = 0;
    for (k, c) in compact.char_indices() {
        if k > 0 && (c == '+' || c == '-') {
            terms.push(&compact[start..k]);
            start = k;
        }
    }
    terms.push(&compact[start..]);
    if terms.len() > 2 {
        return Err(err("too many terms"));
    }
    let (mut a, mut b) = (None, None);
    for term in terms {
        let (neg, body) = match term.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, term.strip_prefix('+').unwrap_or(term)),
        };
        let (imaginary, digits) = match body.strip_suffix(suffix) {
            Some(d) => (true, d),
            None => (false, body),
        };
        let magnitude: i64 = if digits.is_empty() && imaginary {
            1
        } else if digits.bytes().all(|c| c.is_ascii_digit()) {
            digits.parse().map_err(|_| err("malformed number"))?
        } else {
            return Err(err("malformed number"));
        };
        let slot = if imaginary { &mut b } else { &mut a };
        if slot.is_some() {
            return Err(err("repeated term"));
        }
        *slot = Some(if neg { -magnitude } else { magnitude });
    }
    Ok((a.unwrap_or(0), b.unwrap_or(0)))
}
