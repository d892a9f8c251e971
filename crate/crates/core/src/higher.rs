//! Cubic and quartic residue matrices over `Z[ω]` and `Z[i]`: construction
//! from primary primes, membership tests, block form, and witnesses found
//! by ascending-norm search over split primes.

use serde::Serialize;

use crate::cyclotomic::{
    cubic_symbol, quartic_symbol, split_primes, EisensteinInt, GaussianInt, PrimaryPrime, QuadInt,
};
use crate::error::{invalid, Error, Result};
use crate::matrix::{conjugate, BlockDecomposition, RootMatrix};
use crate::qr::{block_permutation, split_size};
use crate::rational::is_prime;

/// Default norm bound for witness searches.
pub const DEFAULT_NORM_LIMIT: u64 = 1_000_000;

/// Outcome of the quartic membership test.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuarticDecision {
    pub verdict: bool,
    pub s: Option<usize>,
    /// `m_jk = ±m_kj` for every pair.
    pub pairwise_ok: bool,
    /// Diagonal of `M·conj(M)` as Gaussian integers (real when
    /// `pairwise_ok`).
    pub diag: Vec<GaussianInt>,
}

fn require_modulus(m: &RootMatrix, modulus: u8) -> Result<()> {
    if m.m() == modulus {
        Ok(())
    } else {
        Err(invalid(format!(
            "expected a matrix of {modulus}th roots of unity, got m = {}",
            m.m()
        )))
    }
}

fn residue_matrix<T: QuadInt>(
    primes: &[PrimaryPrime<T>],
    symbol: impl Fn(T, PrimaryPrime<T>) -> Result<u8>,
) -> Result<RootMatrix> {
    for (k, p) in primes.iter().enumerate() {
        if primes[..k].iter().any(|q| q.same_ideal(*p)) {
            return Err(invalid(format!("prime ideal ({p}) repeated")));
        }
    }
    let n = primes.len();
    let mut exps = vec![vec![None; n]; n];
    for i in 0..n {
        for j in 0..n {
            if i != j {
                exps[i][j] = Some(symbol(primes[i].element(), primes[j])?);
            }
        }
    }
    RootMatrix::from_exponents(T::SYMBOL_ORDER, &exps)
}

/// Entry `(i, j)` is `(π_i / π_j)_3`.
pub fn cubic_matrix(primes: &[PrimaryPrime<EisensteinInt>]) -> Result<RootMatrix> {
    residue_matrix(primes, cubic_symbol)
}

/// Entry `(j, k)` is `(π_j / π_k)_4`.
pub fn quartic_matrix(primes: &[PrimaryPrime<GaussianInt>]) -> Result<RootMatrix> {
    residue_matrix(primes, quartic_symbol)
}

/// A cubic sign matrix is a cubic residue matrix iff it is symmetric.
pub fn is_cubic_residue_matrix(m: &RootMatrix) -> Result<bool> {
    require_modulus(m, 3)?;
    Ok(m.is_symmetric())
}

pub fn is_quartic_residue_matrix(m: &RootMatrix) -> Result<QuarticDecision> {
    require_modulus(m, 4)?;
    let n = m.n();
    let mut pairwise_ok = true;
    let mut diag = vec![GaussianInt::new(0, 0); n];
    for j in 0..n {
        for k in 0..n {
            if j == k {
                continue;
            }
            let (a, b) = (m.exponent(j, k).unwrap_or(0), m.exponent(k, j).unwrap_or(0));
            let d = (4 + a - b) % 4;
            if d % 2 != 0 {
                pairwise_ok = false;
            }
            diag[j] = diag[j] + GaussianInt::zeta_pow(d);
        }
    }
    let s = if pairwise_ok {
        split_size(&diag.iter().map(|g| g.a).collect::<Vec<_>>())
    } else {
        None
    };
    Ok(QuarticDecision {
        verdict: s.is_some(),
        s,
        pairwise_ok,
        diag,
    })
}

pub fn quartic_block_form(m: &RootMatrix) -> Result<BlockDecomposition> {
    let decision = is_quartic_residue_matrix(m)?;
    let s = decision.s.ok_or(Error::NotQuarticResidueMatrix)?;
    let diag: Vec<i64> = decision.diag.iter().map(|g| g.a).collect();
    Ok(BlockDecomposition {
        perm: block_permutation(&diag, s),
        s,
    })
}

/// Primary primes of prime norm, in ascending norm (ties: ascending `a`,
/// then descending `b`), with norms up to `norm_limit`. Extends lazily.
struct SplitPrimeScan<T: QuadInt> {
    found: Vec<PrimaryPrime<T>>,
    next_p: u64,
    norm_limit: u64,
}

impl<T: QuadInt> SplitPrimeScan<T> {
    fn new(norm_limit: u64) -> Self {
        SplitPrimeScan {
            found: Vec::new(),
            next_p: 2,
            norm_limit,
        }
    }

    fn get(&mut self, k: usize) -> Option<PrimaryPrime<T>> {
        let modulus = T::SYMBOL_ORDER as u64;
        while self.found.len() <= k {
            if self.next_p > self.norm_limit {
                return None;
            }
            let p = self.next_p;
            self.next_p += 1;
            if p % modulus == 1 && is_prime(p) {
                if let Some(pair) = split_primes::<T>(p) {
                    self.found.extend(pair);
                }
            }
        }
        Some(self.found[k])
    }

    /// First candidate (in scan order) not in `taken` and accepted by `ok`.
    fn first_matching(
        &mut self,
        taken: &[PrimaryPrime<T>],
        mut ok: impl FnMut(PrimaryPrime<T>) -> Result<bool>,
    ) -> Result<Option<PrimaryPrime<T>>> {
        let mut k = 0;
        while let Some(c) = self.get(k) {
            k += 1;
            if taken.iter().any(|t| t.same_ideal(c)) {
                continue;
            }
            if ok(c)? {
                return Ok(Some(c));
            }
        }
        Ok(None)
    }
}

/// Distinct primary Eisenstein primes whose cubic residue matrix is `m`.
/// Position `l` takes the first split prime (ascending norm) whose symbols
/// against the already chosen primes match column `l` of `m`.
pub fn cubic_witness(m: &RootMatrix, norm_limit: u64) -> Result<Vec<PrimaryPrime<EisensteinInt>>> {
    if !is_cubic_residue_matrix(m)? {
        return Err(Error::NotCubicResidueMatrix);
    }
    let mut scan = SplitPrimeScan::<EisensteinInt>::new(norm_limit);
    let mut chosen: Vec<PrimaryPrime<EisensteinInt>> = Vec::new();
    for l in 0..m.n() {
        let found = scan.first_matching(&chosen, |c| {
            for (j, &pj) in chosen.iter().enumerate() {
                if Some(cubic_symbol(pj.element(), c)?) != m.exponent(j, l) {
                    return Ok(false);
                }
            }
            Ok(true)
        })?;
        match found {
            Some(c) => chosen.push(c),
            None => {
                return Err(Error::NormSearchExhausted {
                    index: l,
                    norm_limit,
                })
            }
        }
    }
    if cubic_matrix(&chosen)? != *m {
        return Err(Error::Internal(
            "cubic witness does not reproduce the matrix".into(),
        ));
    }
    Ok(chosen)
}

/// Distinct primary Gaussian primes whose quartic residue matrix is `m`.
///
/// Works on the block form: positions in the skew block need generators
/// `≡ 3 + 2i (mod 4)`, the others `≡ 1 (mod 4)`; each position takes the
/// first split prime of the right class whose symbols against the earlier
/// choices match its column.
pub fn quartic_witness(m: &RootMatrix, norm_limit: u64) -> Result<Vec<PrimaryPrime<GaussianInt>>> {
    let BlockDecomposition { perm, s } = quartic_block_form(m)?;
    let b = conjugate(m, &perm)?;
    let mut scan = SplitPrimeScan::<GaussianInt>::new(norm_limit);
    let mut chosen: Vec<PrimaryPrime<GaussianInt>> = Vec::new();
    for l in 0..b.n() {
        let want_skew = l < s;
        let found = scan.first_matching(&chosen, |c| {
            if c.element().is_three_plus_two_i_class() != want_skew {
                return Ok(false);
            }
            for (j, &pj) in chosen.iter().enumerate() {
                if Some(quartic_symbol(pj.element(), c)?) != b.exponent(j, l) {
                    return Ok(false);
                }
            }
            Ok(true)
        })?;
        match found {
            Some(c) => chosen.push(c),
            None => {
                return Err(Error::NormSearchExhausted {
                    index: perm.apply(l),
                    norm_limit,
                })
            }
        }
    }
    let mut out = chosen.clone();
    for (l, c) in chosen.into_iter().enumerate() {
        out[perm.apply(l)] = c;
    }
    if quartic_matrix(&out)? != *m {
        return Err(Error::Internal(
            "quartic witness does not reproduce the matrix".into(),
        ));
    }
    Ok(out)
}
