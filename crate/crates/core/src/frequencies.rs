//! Configuration types of prime triples: each triple `(p, q, r)` of
//! distinct odd primes falls into one of the 10 permutation classes of
//! 3 x 3 QR matrices. Exact model frequencies come from the 64
//! equiprobable outcomes (each prime `1` or `3 mod 4`, one free symbol per
//! pair); empirical ones from scanning all triples below a product bound.

use std::sync::OnceLock;

use num_rational::Ratio;
use rayon::prelude::*;

use crate::enumerate::PackedLayout;
use crate::error::{invalid, Result};
use crate::matrix::{all_sign_matrices, canonical_form, RootMatrix};
use crate::qr::{is_qr_matrix, qr_matrix};
use crate::rational::{legendre, sieve_primes, OddPrime};

/// Number of configuration classes for three primes.
pub const CLASS_COUNT: usize = 10;

/// Smallest admissible product bound (`3·5·7`).
pub const MIN_PRODUCT_BOUND: u64 = 105;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigClass {
    /// 1-based index in ascending canonical-form order.
    pub class_id: usize,
    pub representative: RootMatrix,
}

struct ClassTable {
    classes: Vec<ConfigClass>,
    /// class index (0-based) for each packed 3 x 3 code; `u8::MAX` for
    /// non-QR codes
    by_code: [u8; 64],
}

fn table() -> &'static ClassTable {
    static TABLE: OnceLock<ClassTable> = OnceLock::new();
    TABLE.get_or_init(|| {
        let layout = PackedLayout::new(3);
        let mut reps: Vec<RootMatrix> = all_sign_matrices(3)
            .into_iter()
            .filter(|m| is_qr_matrix(m).map(|d| d.verdict).unwrap_or(false))
            .map(|m| canonical_form(&m).expect("n = 3"))
            .collect();
        reps.sort();
        reps.dedup();
        let mut by_code = [u8::MAX; 64];
        for m in all_sign_matrices(3) {
            let c = canonical_form(&m).expect("n = 3");
            if let Ok(k) = reps.binary_search(&c) {
                by_code[layout.encode(&m) as usize] = k as u8;
            }
        }
        let classes = reps
            .into_iter()
            .enumerate()
            .map(|(k, representative)| ConfigClass {
                class_id: k + 1,
                representative,
            })
            .collect();
        ClassTable { classes, by_code }
    })
}

/// The 10 classes in ascending canonical-form order.
pub fn config_classes() -> &'static [ConfigClass] {
    &table().classes
}

fn class_of_code(code: u64) -> usize {
    let k = table().by_code[code as usize];
    assert!(k != u8::MAX, "QR matrix outside the class table");
    k as usize
}

/// The class of the QR matrix of `(p, q, r)`; independent of order.
pub fn configuration_class(p: u64, q: u64, r: u64) -> Result<&'static ConfigClass> {
    let primes = [p, q, r]
        .iter()
        .map(|&x| OddPrime::new(x))
        .collect::<Result<Vec<_>>>()?;
    let m = qr_matrix(&primes)?;
    let layout = PackedLayout::new(3);
    Ok(&config_classes()[class_of_code(layout.encode(&m))])
}

/// Packed code of the QR matrix of three distinct odd primes.
fn triple_code(p: OddPrime, q: OddPrime, r: OddPrime) -> u64 {
    // pairs (0,1), (0,2), (1,2); bit set means -1
    let bit = |a: OddPrime, b: OddPrime| (legendre(a.get() as i64, b) == -1) as u64;
    bit(p, q) | bit(p, r) << 1 | bit(q, r) << 2 | bit(q, p) << 3 | bit(r, p) << 4 | bit(r, q) << 5
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassFrequency {
    pub class_id: usize,
    pub representative: RootMatrix,
    pub count: u64,
    /// `count / total`.
    pub empirical: Ratio<u64>,
    /// Model frequency (denominator divides 64).
    pub exact: Ratio<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrequencyReport {
    pub total: u64,
    pub classes: Vec<ClassFrequency>,
}

impl FrequencyReport {
    fn from_counts(counts: &[u64; CLASS_COUNT], exact: &[u64; CLASS_COUNT]) -> Self {
        let total: u64 = counts.iter().sum();
        let classes = config_classes()
            .iter()
            .zip(counts.iter().zip(exact))
            .map(|(c, (&count, &e))| ClassFrequency {
                class_id: c.class_id,
                representative: c.representative.clone(),
                count,
                empirical: if total == 0 {
                    Ratio::new(0, 1)
                } else {
                    Ratio::new(count, total)
                },
                exact: Ratio::new(e, 64),
            })
            .collect();
        FrequencyReport { total, classes }
    }

    /// Empirical frequencies, ascending.
    pub fn sorted_empirical(&self) -> Vec<Ratio<u64>> {
        let mut v: Vec<_> = self.classes.iter().map(|c| c.empirical).collect();
        v.sort();
        v
    }

    /// Exact frequencies, ascending.
    pub fn sorted_exact(&self) -> Vec<Ratio<u64>> {
        let mut v: Vec<_> = self.classes.iter().map(|c| c.exact).collect();
        v.sort();
        v
    }
}

fn exact_outcome_counts() -> [u64; CLASS_COUNT] {
    let layout = PackedLayout::new(3);
    let pairs = [(0usize, 1usize), (0, 2), (1, 2)];
    let mut counts = [0u64; CLASS_COUNT];
    for residues in 0u32..8 {
        let skew = |i: usize| residues >> i & 1 == 1;
        for symbols in 0u32..8 {
            let mut signs = vec![vec![0i8; 3]; 3];
            for (k, &(i, j)) in pairs.iter().enumerate() {
                let v = if symbols >> k & 1 == 1 { -1 } else { 1 };
                signs[i][j] = v;
                signs[j][i] = if skew(i) && skew(j) { -v } else { v };
            }
            let m = RootMatrix::from_signs(&signs).expect("sign matrix");
            counts[class_of_code(layout.encode(&m))] += 1;
        }
    }
    counts
}

/// Model frequencies from the 64 equiprobable outcomes.
pub fn exact_frequencies() -> FrequencyReport {
    let exact = exact_outcome_counts();
    FrequencyReport::from_counts(&exact, &exact)
}

/// Classifies every triple `p < q < r` of odd primes with
/// `p·q·r <= product_bound`. Work is split by the smallest prime; counts do
/// not depend on the split.
pub fn empirical_scan(product_bound: u64) -> Result<FrequencyReport> {
    if product_bound < MIN_PRODUCT_BOUND {
        return Err(invalid(format!(
            "product bound must be at least {MIN_PRODUCT_BOUND}"
        )));
    }
    // r <= bound / (3·5)
    let primes: Vec<OddPrime> = sieve_primes(product_bound / 15)
        .into_iter()
        .skip(1)
        .map(|p| OddPrime::new(p).expect("sieve output is prime"))
        .collect();
    let bound = product_bound as u128;
    let counts = (0..primes.len())
        .into_par_iter()
        .map(|a| {
            let mut local = [0u64; CLASS_COUNT];
            let p = primes[a];
            for b in a + 1..primes.len() {
                let q = primes[b];
                let pq = p.get() as u128 * q.get() as u128;
                match primes.get(b + 1) {
                    Some(r) if pq * r.get() as u128 <= bound => {}
                    _ => break,
                }
                for &r in &primes[b + 1..] {
                    if pq * r.get() as u128 > bound {
                        break;
                    }
                    local[class_of_code(triple_code(p, q, r))] += 1;
                }
            }
            local
        })
        .reduce(
            || [0u64; CLASS_COUNT],
            |mut x, y| {
                for (a, b) in x.iter_mut().zip(y) {
                    *a += b;
                }
                x
            },
        );
    Ok(FrequencyReport::from_counts(
        &counts,
        &exact_outcome_counts(),
    ))
}

/// `num / den` rounded half-to-even to 6 decimal places.
pub fn decimal6(value: Ratio<u64>) -> String {
    let (num, den) = (*value.numer() as u128, *value.denom() as u128);
    let scaled = num * 1_000_000;
    let mut q = scaled / den;
    let r = scaled % den;
    if 2 * r > den || (2 * r == den && q % 2 == 1) {
        q += 1;
    }
    format!("{}.{:06}", q / 1_000_000, q % 1_000_000)
}
