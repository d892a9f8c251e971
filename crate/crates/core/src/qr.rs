//! Quadratic residue matrices: construction from primes, the diagonal
//! criterion on `M²`, block-form recovery, prime witnesses built by CRT and
//! progression search, counting, and the colored-graph encoding.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::enumerate::{self, Family};
use crate::error::{invalid, Error, Result};
use crate::matrix::{conjugate, BlockDecomposition, Permutation, RootMatrix};
use crate::rational::{crt, jacobi, legendre, prime_in_progression, OddPrime};

/// Outcome of the diagonal test.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QrDecision {
    pub verdict: bool,
    /// The smallest matching skew-block size when `verdict` holds.
    pub s: Option<usize>,
    /// Diagonal of `M²`.
    pub diag: Vec<i64>,
}

fn require_sign_matrix(m: &RootMatrix) -> Result<()> {
    if m.is_sign_matrix() {
        Ok(())
    } else {
        Err(invalid(format!(
            "expected a sign matrix, got m = {}",
            m.m()
        )))
    }
}

/// The QR matrix of distinct odd primes: entry `(i, j)` is `(p_i / p_j)`.
pub fn qr_matrix_from_primes(primes: &[u64]) -> Result<RootMatrix> {
    let primes = primes
        .iter()
        .map(|&p| OddPrime::new(p))
        .collect::<Result<Vec<_>>>()?;
    qr_matrix(&primes)
}

pub fn qr_matrix(primes: &[OddPrime]) -> Result<RootMatrix> {
    for (k, p) in primes.iter().enumerate() {
        if primes[..k].contains(p) {
            return Err(invalid(format!("prime {p} repeated")));
        }
    }
    RootMatrix::from_fn(primes.len(), 2, |i, j| {
        if legendre(primes[i].get() as i64, primes[j]) == 1 {
            0
        } else {
            1
        }
    })
}

/// The matrix of Jacobi symbols `(P_i / P_j)` for pairwise coprime odd
/// integers `P_i > 1`.
pub fn jacobi_matrix(values: &[u64]) -> Result<RootMatrix> {
    for (k, &v) in values.iter().enumerate() {
        if v < 3 || v % 2 == 0 {
            return Err(invalid(format!("{v} is not an odd integer > 1")));
        }
        if let Some(&w) = values[..k]
            .iter()
            .find(|&&w| crate::rational::gcd(v as u128, w as u128) != 1)
        {
            return Err(invalid(format!("{w} and {v} are not coprime")));
        }
    }
    let mut err = None;
    let m = RootMatrix::from_fn(values.len(), 2, |i, j| {
        match jacobi(values[i] as i64, values[j]) {
            Ok(1) => 0,
            Ok(_) => 1,
            Err(e) => {
                err = Some(e);
                0
            }
        }
    })?;
    match err {
        Some(e) => Err(e),
        None => Ok(m),
    }
}

/// Diagonal of `M²` computed over the integers.
pub fn square_diagonal(m: &RootMatrix) -> Vec<i64> {
    (0..m.n())
        .map(|i| {
            (0..m.n())
                .map(|j| m.sign(i, j) as i64 * m.sign(j, i) as i64)
                .sum()
        })
        .collect()
}

/// Smallest `s` in `1..=n` such that `diag` is `s` copies of `n+1-2s`
/// and `n-s` copies of `n-1`.
pub fn split_size(diag: &[i64]) -> Option<usize> {
    let n = diag.len() as i64;
    (1..=n).find_map(|s| {
        let skew = diag.iter().filter(|&&d| d == n + 1 - 2 * s).count() as i64;
        let sym = diag.iter().filter(|&&d| d == n - 1).count() as i64;
        let ok = if s == 1 {
            // n+1-2s = n-1: every entry must be n-1
            sym == n
        } else {
            skew == s && sym == n - s
        };
        ok.then_some(s as usize)
    })
}

/// Decides membership by the diagonal criterion on `M²`.
pub fn is_qr_matrix(m: &RootMatrix) -> Result<QrDecision> {
    require_sign_matrix(m)?;
    let diag = square_diagonal(m);
    let s = split_size(&diag);
    Ok(QrDecision {
        verdict: s.is_some(),
        s,
        diag,
    })
}

/// Permutation putting the indices whose diagonal value is `n+1-2s` first
/// (in their original order) and the rest after. When `s = 1` the first
/// index is the designated skew block.
pub(crate) fn block_permutation(diag: &[i64], s: usize) -> Permutation {
    let n = diag.len();
    if s == 1 {
        return Permutation::identity(n);
    }
    let target = n as i64 + 1 - 2 * s as i64;
    let (skew, sym): (Vec<usize>, Vec<usize>) = (0..n).partition(|&i| diag[i] == target);
    Permutation::new(skew.into_iter().chain(sym).collect()).expect("partition of 0..n")
}

/// Recovers the block form: conjugating `m` by `perm` yields a leading
/// skew-symmetric `s x s` block and a trailing symmetric block.
pub fn block_form(m: &RootMatrix) -> Result<BlockDecomposition> {
    let decision = is_qr_matrix(m)?;
    let s = decision.s.ok_or(Error::NotQrMatrix)?;
    Ok(BlockDecomposition {
        perm: block_permutation(&decision.diag, s),
        s,
    })
}

/// Smallest `u` in `1..p` with `(u/p) = target`.
fn smallest_residue_with_symbol(p: OddPrime, target: i8) -> u64 {
    (1..p.get())
        .find(|&u| legendre(u as i64, p) == target)
        .expect("both symbol classes are nonempty mod an odd prime")
}

/// Distinct odd primes whose QR matrix is exactly `m`.
///
/// Works on the block form `B = conjugate(m, σ)`: the first prime is the
/// smallest prime `≡ 3 mod 4`; each next prime `q_{k+1}` solves, by CRT,
/// `q ≡ 3 or 1 (mod 4)` (skew block or not) and `q ≡ u_j (mod q_j)` with
/// `u_j` the smallest residue of symbol `B[k+1][j]`, and is the smallest
/// prime above the modulus in that progression.
pub fn witness_primes(m: &RootMatrix, limit: u64) -> Result<Vec<OddPrime>> {
    let BlockDecomposition { perm, s } = block_form(m)?;
    let b = conjugate(m, &perm)?;
    let n = b.n();

    let first = if limit >= 3 {
        OddPrime::new(3)?
    } else {
        return Err(Error::SearchExhausted {
            residue: 3,
            modulus: 4,
            limit,
        });
    };
    let mut primes = vec![first];
    for k in 1..n {
        let mut residues = vec![if k < s { 3 } else { 1 }];
        let mut moduli = vec![4u128];
        for (j, &pj) in primes.iter().enumerate() {
            residues.push(smallest_residue_with_symbol(pj, b.sign(k, j)) as i128);
            moduli.push(pj.get() as u128);
        }
        let x = crt(&residues, &moduli)?;
        let modulus: u128 = moduli.iter().product();
        primes.push(prime_in_progression(x as i128, modulus, limit)?);
    }

    let mut out = vec![first; n];
    for (i, q) in primes.into_iter().enumerate() {
        out[perm.apply(i)] = q;
    }
    debug_assert_eq!(qr_matrix(&out).ok().as_ref(), Some(m));
    Ok(out)
}

/// Number of `n x n` QR matrices, `2 <= n <= 6`, by exhaustive scan.
pub fn count_qr_matrices(n: usize) -> Result<u64> {
    check_count_range(n)?;
    enumerate::count_qr_matrices(n)
}

/// Number of permutation-equivalence classes of `n x n` QR matrices.
pub fn count_qr_classes(n: usize) -> Result<u64> {
    check_count_range(n)?;
    enumerate::count_classes(n, Family::Qr)
}

fn check_count_range(n: usize) -> Result<()> {
    if (2..=6).contains(&n) {
        Ok(())
    } else {
        Err(Error::UnsupportedDimension { n, min: 2, max: 6 })
    }
}

/// Canonical representatives of all QR classes with orbit sizes, ascending.
pub fn qr_classes(n: usize) -> Result<Vec<crate::matrix::EquivalenceClass>> {
    check_count_range(n)?;
    let mut classes = enumerate::orbit_classes(n, Family::Qr)?
        .into_iter()
        .map(|c| {
            let m = enumerate::decode_family(n, Family::Qr, c.first_code);
            Ok(crate::matrix::EquivalenceClass {
                representative: crate::matrix::canonical_form(&m)?,
                count: c.orbit_size as usize,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    classes.sort_by(|a, b| a.representative.cmp(&b.representative));
    Ok(classes)
}

/// Vertex color: red for the skew block (primes `≡ 3 mod 4`), blue
/// otherwise.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Color {
    Red,
    Blue,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum EdgeKind {
    /// `(p_from / p_to) = +1` and `(p_to / p_from) = -1`.
    Directed { from: usize, to: usize },
    /// Common value of both symbols.
    Labeled(i8),
}

/// Partially directed, vertex-colored complete graph. Exactly one edge per
/// unordered pair: red–red pairs are directed, all others labeled `±1`.
///
/// A graph with a single red vertex encodes the same matrix as the
/// all-blue graph, so it is not well formed; symmetric matrices map to the
/// all-blue graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConfigGraph {
    colors: Vec<Color>,
    edges: BTreeMap<(usize, usize), EdgeKind>,
}

impl ConfigGraph {
    pub fn new(colors: Vec<Color>, edges: BTreeMap<(usize, usize), EdgeKind>) -> Result<Self> {
        let n = colors.len();
        if n == 0 {
            return Err(invalid("graph needs at least one vertex"));
        }
        if colors.iter().filter(|&&c| c == Color::Red).count() == 1 {
            return Err(invalid("a lone red vertex is indistinguishable from blue"));
        }
        if edges.len() != n * (n - 1) / 2 {
            return Err(invalid("graph must have one edge per vertex pair"));
        }
        for (&(u, v), kind) in &edges {
            if u >= v || v >= n {
                return Err(invalid(format!(
                    "edge key ({u},{v}) is not a pair u < v < n"
                )));
            }
            let both_red = colors[u] == Color::Red && colors[v] == Color::Red;
            match (*kind, both_red) {
                (EdgeKind::Directed { from, to }, true)
                    if (from, to) == (u, v) || (from, to) == (v, u) => {}
                (EdgeKind::Labeled(1 | -1), false) => {}
                _ => return Err(invalid(format!("edge ({u},{v}) has the wrong kind"))),
            }
        }
        Ok(ConfigGraph { colors, edges })
    }

    pub fn colors(&self) -> &[Color] {
        &self.colors
    }

    pub fn edges(&self) -> &BTreeMap<(usize, usize), EdgeKind> {
        &self.edges
    }

    pub fn n(&self) -> usize {
        self.colors.len()
    }
}

pub fn to_config_graph(m: &RootMatrix) -> Result<ConfigGraph> {
    let BlockDecomposition { perm, s } = block_form(m)?;
    let n = m.n();
    let mut colors = vec![Color::Blue; n];
    if s >= 2 {
        for &i in &perm.image()[..s] {
            colors[i] = Color::Red;
        }
    }
    let mut edges = BTreeMap::new();
    for u in 0..n {
        for v in u + 1..n {
            let kind = if colors[u] == Color::Red && colors[v] == Color::Red {
                if m.sign(u, v) == 1 {
                    EdgeKind::Directed { from: u, to: v }
                } else {
                    EdgeKind::Directed { from: v, to: u }
                }
            } else {
                EdgeKind::Labeled(m.sign(u, v))
            };
            edges.insert((u, v), kind);
        }
    }
    ConfigGraph::new(colors, edges)
}

pub fn from_config_graph(g: &ConfigGraph) -> Result<RootMatrix> {
    let n = g.n();
    let mut signs = vec![vec![0i8; n]; n];
    for (&(u, v), &kind) in &g.edges {
        match kind {
            EdgeKind::Directed { from, to } => {
                signs[from][to] = 1;
                signs[to][from] = -1;
            }
            EdgeKind::Labeled(x) => {
                signs[u][v] = x;
                signs[v][u] = x;
            }
        }
    }
    RootMatrix::from_signs(&signs)
}

/// Every well-formed graph on `n` labeled vertices.
pub fn all_config_graphs(n: usize) -> Vec<ConfigGraph> {
    let mut out = Vec::new();
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    for coloring in 0u32..1 << n {
        if coloring.count_ones() == 1 {
            continue;
        }
        let colors: Vec<Color> = (0..n)
            .map(|i| {
                if coloring >> i & 1 == 1 {
                    Color::Red
                } else {
                    Color::Blue
                }
            })
            .collect();
        for choice in 0u64..1 << pairs.len() {
            let edges = pairs
                .iter()
                .enumerate()
                .map(|(k, &(u, v))| {
                    let bit = choice >> k & 1 == 1;
                    let kind = if colors[u] == Color::Red && colors[v] == Color::Red {
                        if bit {
                            EdgeKind::Directed { from: v, to: u }
                        } else {
                            EdgeKind::Directed { from: u, to: v }
                        }
                    } else {
                        EdgeKind::Labeled(if bit { -1 } else { 1 })
                    };
                    ((u, v), kind)
                })
                .collect();
            out.push(ConfigGraph::new(colors.clone(), edges).expect("well-formed by construction"));
        }
    }
    out
}
