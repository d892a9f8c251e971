//! Bit-packed exhaustive enumeration of sign matrices.
//!
//! An `n x n` sign matrix is packed into `2N` bits, `N = n(n-1)/2`: bit `k`
//! holds the sign of the upper entry `M[i][j]` of the `k`-th pair `i < j`
//! (row-major pair order), bit `N + k` the sign of the lower entry
//! `M[j][i]`. A set bit means `-1`. Symmetric and skew-symmetric matrices
//! are packed into the `N` upper bits alone.
//!
//! The diagonal of `M²` is `(M²)_{ii} = n - 1 - 2 d_i`, where `d_i` counts
//! the `j` with `M[i][j] != M[j][i]`; the kernel gets every `d_i` as a
//! popcount of `upper ^ lower` against a per-vertex incidence mask.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::matrix::{next_permutation, Entry, RootMatrix};

/// Largest dimension the packed layout supports (2N must fit in 64 bits).
pub const MAX_PACKED_DIM: usize = 6;

/// Which family of sign matrices to enumerate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    /// Matrices passing the quadratic-residue criterion.
    Qr,
    Symmetric,
    SkewSymmetric,
}

#[derive(Debug, Clone)]
pub struct PackedLayout {
    n: usize,
    pairs: Vec<(usize, usize)>,
    /// `pair_index[i * n + j]` for `i != j`.
    pair_index: Vec<usize>,
    /// Bits of the pairs touching each vertex.
    incidence: Vec<u64>,
}

impl PackedLayout {
    pub fn new(n: usize) -> Self {
        let mut pairs = Vec::new();
        let mut pair_index = vec![usize::MAX; n * n];
        for i in 0..n {
            for j in i + 1..n {
                pair_index[i * n + j] = pairs.len();
                pair_index[j * n + i] = pairs.len();
                pairs.push((i, j));
            }
        }
        let mut incidence = vec![0u64; n];
        for (k, &(i, j)) in pairs.iter().enumerate() {
            incidence[i] |= 1 << k;
            incidence[j] |= 1 << k;
        }
        PackedLayout {
            n,
            pairs,
            pair_index,
            incidence,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of unordered pairs `N`.
    pub fn pair_count(&self) -> usize {
        self.pairs.len()
    }

    /// Bit position of entry `(i, j)`, `i != j`, in the full layout.
    fn full_bit(&self, i: usize, j: usize) -> usize {
        let k = self.pair_index[i * self.n + j];
        if i < j {
            k
        } else {
            k + self.pairs.len()
        }
    }

    pub fn encode(&self, m: &RootMatrix) -> u64 {
        debug_assert_eq!(m.n(), self.n);
        let mut code = 0u64;
        for i in 0..self.n {
            for j in 0..self.n {
                if i != j && m.get(i, j) != Entry::Root(0) {
                    code |= 1 << self.full_bit(i, j);
                }
            }
        }
        code
    }

    pub fn decode(&self, code: u64) -> RootMatrix {
        RootMatrix::from_fn(self.n, 2, |i, j| ((code >> self.full_bit(i, j)) & 1) as u8)
            .expect("packed code decodes to a sign matrix")
    }

    /// Expands an upper-triangle code into the full layout; the lower half
    /// equals the upper (symmetric) or its complement (skew).
    pub fn expand_upper(&self, upper: u64, skew: bool) -> u64 {
        let n_pairs = self.pairs.len();
        let mask = (1u64 << n_pairs) - 1;
        let lower = if skew { !upper & mask } else { upper };
        upper | (lower << n_pairs)
    }

    /// `d_i` for every vertex given the disagreement set `upper ^ lower`.
    #[inline]
    pub fn disagreement_degrees(&self, disagree: u64, out: &mut [u32]) {
        for (d, &mask) in out.iter_mut().zip(&self.incidence) {
            *d = (disagree & mask).count_ones();
        }
    }

    /// Packed form of the diagonal test: `Some(s)` iff the diagonal of
    /// `M²` consists of `s` copies of `n+1-2s` and `n-s` copies of `n-1`.
    #[inline]
    pub fn qr_split(&self, disagree: u64) -> Option<usize> {
        let mut degrees = [0u32; 64];
        let degrees = &mut degrees[..self.n];
        self.disagreement_degrees(disagree, degrees);
        split_from_degrees(degrees)
    }

    /// Source bits for the conjugate by `image`: target bit `t` of
    /// `conjugate(M, σ)` is source bit `src[t]` of `M`, xor `flip`.
    fn permutation_map(&self, image: &[usize], family: Family) -> (Vec<u8>, u64) {
        let n_pairs = self.pairs.len();
        match family {
            Family::Qr => {
                let mut src = vec![0u8; 2 * n_pairs];
                for (k, &(i, j)) in self.pairs.iter().enumerate() {
                    src[k] = self.full_bit(image[i], image[j]) as u8;
                    src[k + n_pairs] = self.full_bit(image[j], image[i]) as u8;
                }
                (src, 0)
            }
            Family::Symmetric | Family::SkewSymmetric => {
                let mut src = vec![0u8; n_pairs];
                let mut flip = 0u64;
                for (k, &(i, j)) in self.pairs.iter().enumerate() {
                    let (a, b) = (image[i], image[j]);
                    src[k] = self.pair_index[a * self.n + b] as u8;
                    if family == Family::SkewSymmetric && a > b {
                        flip |= 1 << k;
                    }
                }
                (src, flip)
            }
        }
    }
}

/// Shared diagonal-pattern test on disagreement degrees. With `d_i = 0`
/// for the symmetric part and `d_i = s - 1` on the skew block, the pattern
/// holds iff all nonzero degrees equal some `t` and exactly `t + 1`
/// vertices carry it; the all-zero case is `s = 1`.
pub(crate) fn split_from_degrees(degrees: &[u32]) -> Option<usize> {
    let mut t = 0u32;
    let mut count = 0usize;
    for &d in degrees {
        if d == 0 {
            continue;
        }
        if t == 0 {
            t = d;
        } else if d != t {
            return None;
        }
        count += 1;
    }
    if count == 0 {
        Some(1)
    } else if count == t as usize + 1 {
        Some(count)
    } else {
        None
    }
}

#[inline]
fn apply_map(code: u64, src: &[u8], flip: u64) -> u64 {
    let mut out = 0u64;
    for (t, &s) in src.iter().enumerate() {
        out |= ((code >> s) & 1) << t;
    }
    out ^ flip
}

fn check_range(n: usize, min: usize, max: usize) -> Result<()> {
    if (min..=max).contains(&n) {
        Ok(())
    } else {
        Err(Error::UnsupportedDimension { n, min, max })
    }
}

/// Number of `n x n` sign matrices passing the diagonal criterion, by
/// scanning all `2^{n(n-1)}` packed codes. The outer loop over the lower
/// half is split across the current rayon pool; the total does not depend
/// on the number of workers.
pub fn count_qr_matrices(n: usize) -> Result<u64> {
    check_range(n, 1, MAX_PACKED_DIM)?;
    let layout = PackedLayout::new(n);
    let half = 1u64 << layout.pair_count();
    Ok((0..half)
        .into_par_iter()
        .map(|lower| {
            let mut degrees = [0u32; MAX_PACKED_DIM];
            let degrees = &mut degrees[..n];
            let mut hits = 0u64;
            for upper in 0..half {
                layout.disagreement_degrees(upper ^ lower, degrees);
                if split_from_degrees(degrees).is_some() {
                    hits += 1;
                }
            }
            hits
        })
        .sum())
}

/// All packed QR codes, ascending.
pub fn qr_codes(n: usize) -> Result<Vec<u64>> {
    check_range(n, 1, MAX_PACKED_DIM)?;
    let layout = PackedLayout::new(n);
    let n_pairs = layout.pair_count();
    let half = 1u64 << n_pairs;
    let chunks: Vec<Vec<u64>> = (0..half)
        .into_par_iter()
        .map(|lower| {
            (0..half)
                .filter(|&upper| layout.qr_split(upper ^ lower).is_some())
                .map(|upper| upper | (lower << n_pairs))
                .collect()
        })
        .collect();
    Ok(chunks.into_iter().flatten().collect())
}

/// A permutation-equivalence class found by orbit enumeration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitClass {
    /// Smallest packed code in the orbit.
    pub first_code: u64,
    pub orbit_size: u64,
}

fn all_images(n: usize) -> Vec<Vec<usize>> {
    let mut image: Vec<usize> = (0..n).collect();
    let mut out = vec![image.clone()];
    while next_permutation(&mut image) {
        out.push(image.clone());
    }
    out
}

/// Orbits of the symmetric group on the given family, found by marking:
/// scan members in ascending code order and, for each unmarked one, mark
/// its whole orbit. Codes are in the full layout for [`Family::Qr`] and
/// in the upper-triangle layout otherwise.
pub fn orbit_classes(n: usize, family: Family) -> Result<Vec<OrbitClass>> {
    let max = match family {
        Family::Qr => MAX_PACKED_DIM,
        // upper-triangle codes for n = 7 fit in 21 bits
        Family::Symmetric | Family::SkewSymmetric => 7,
    };
    check_range(n, 1, max)?;
    let layout = PackedLayout::new(n);
    let maps: Vec<(Vec<u8>, u64)> = all_images(n)
        .iter()
        .map(|img| layout.permutation_map(img, family))
        .collect();

    let members: Vec<u64> = match family {
        Family::Qr => qr_codes(n)?,
        _ => (0..1u64 << layout.pair_count()).collect(),
    };
    let mut marked = vec![false; members.len()];
    let index_of = |code: u64| -> usize {
        match family {
            Family::Qr => members
                .binary_search(&code)
                .expect("conjugate of a QR matrix is a QR matrix"),
            _ => code as usize,
        }
    };

    let mut classes = Vec::new();
    for (k, &code) in members.iter().enumerate() {
        if marked[k] {
            continue;
        }
        let mut orbit_size = 0u64;
        for (src, flip) in &maps {
            let image = apply_map(code, src, *flip);
            let idx = index_of(image);
            if !marked[idx] {
                marked[idx] = true;
                orbit_size += 1;
            }
        }
        classes.push(OrbitClass {
            first_code: code,
            orbit_size,
        });
    }
    Ok(classes)
}

/// Number of permutation-equivalence classes in the family.
pub fn count_classes(n: usize, family: Family) -> Result<u64> {
    Ok(orbit_classes(n, family)?.len() as u64)
}

/// Number of matrices in the family.
pub fn count_family(n: usize, family: Family) -> Result<u64> {
    match family {
        Family::Qr => count_qr_matrices(n),
        Family::Symmetric | Family::SkewSymmetric => {
            check_range(n, 1, 7)?;
            Ok(1u64 << (n * (n - 1) / 2))
        }
    }
}

/// Decodes an orbit representative into a matrix.
pub fn decode_family(n: usize, family: Family, code: u64) -> RootMatrix {
    let layout = PackedLayout::new(n);
    let full = match family {
        Family::Qr => code,
        Family::Symmetric => return decode_upper(n, code, false),
        Family::SkewSymmetric => return decode_upper(n, code, true),
    };
    layout.decode(full)
}

fn decode_upper(n: usize, code: u64, skew: bool) -> RootMatrix {
    let layout = PackedLayout::new(n);
    RootMatrix::from_fn(n, 2, |i, j| {
        let bit = ((code >> layout.pair_index[i * n + j]) & 1) as u8;
        if i > j && skew {
            bit ^ 1
        } else {
            bit
        }
    })
    .expect("valid sign matrix")
}
