//! Sign matrices over roots of unity and the symmetric-group action on them.
//!
//! Entries are stored as exponents: `Entry::Root(e)` is `ζ_m^e`, so for
//! `m = 2` the exponent 0 is `+1` and 1 is `-1`; for `m = 4` the exponents
//! 0..4 are `1, i, -1, -i`; for `m = 3` they are `1, ω, ω²`.

use std::fmt;

use crate::error::{invalid, Error, Result};

/// Largest dimension accepted by [`canonical_form`] (n! scan).
pub const MAX_CANONICAL_DIM: usize = 8;

/// One matrix entry. The derived order is `Zero < Root(0) < Root(1) < ...`,
/// which is the order used for canonical forms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Entry {
    Zero,
    Root(u8),
}

impl Entry {
    pub fn exponent(self) -> Option<u8> {
        match self {
            Entry::Zero => None,
            Entry::Root(e) => Some(e),
        }
    }

    /// Complex conjugation: exponent negation mod `m`.
    pub fn conj(self, m: u8) -> Entry {
        match self {
            Entry::Zero => Entry::Zero,
            Entry::Root(e) => Entry::Root((m - e) % m),
        }
    }

    pub fn mul(self, other: Entry, m: u8) -> Entry {
        match (self, other) {
            (Entry::Root(a), Entry::Root(b)) => Entry::Root((a + b) % m),
            _ => Entry::Zero,
        }
    }

    /// Text token for the entry in the given modulus.
    pub fn token(self, m: u8) -> &'static str {
        match (m, self) {
            (_, Entry::Zero) => "0",
            (_, Entry::Root(0)) => "1",
            (2, Entry::Root(1)) => "-1",
            (3, Entry::Root(1)) => "w",
            (3, Entry::Root(2)) => "w2",
            (4, Entry::Root(1)) => "i",
            (4, Entry::Root(2)) => "-1",
            (4, Entry::Root(3)) => "-i",
            _ => "?",
        }
    }
}

fn check_modulus(m: u8) -> Result<()> {
    if (2..=4).contains(&m) {
        Ok(())
    } else {
        Err(invalid(format!("modulus {m} not in {{2,3,4}}")))
    }
}

/// An `n x n` matrix with zero diagonal and `m`-th roots of unity off the
/// diagonal. With `m = 2` this is a sign matrix.
///
/// The derived ordering compares the row-major entry sequence, which is the
/// order minimized by [`canonical_form`] for matrices of equal shape.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RootMatrix {
    n: usize,
    m: u8,
    entries: Vec<Entry>,
}

impl RootMatrix {
    /// Builds a matrix from rows, checking the zero-diagonal and
    /// nonzero-off-diagonal invariants.
    pub fn new(m: u8, rows: Vec<Vec<Entry>>) -> Result<Self> {
        check_modulus(m)?;
        let n = rows.len();
        if n == 0 {
            return Err(invalid("matrix must have dimension at least 1"));
        }
        let mut entries = Vec::with_capacity(n * n);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != n {
                return Err(invalid(format!(
                    "row {} has {} entries, expected {n}",
                    i + 1,
                    row.len()
                )));
            }
            for (j, e) in row.into_iter().enumerate() {
                match (i == j, e) {
                    (true, Entry::Zero) => {}
                    (true, _) => {
                        return Err(invalid(format!("diagonal entry ({0},{0}) is not 0", i + 1)))
                    }
                    (false, Entry::Zero) => {
                        return Err(invalid(format!(
                            "off-diagonal entry ({},{}) is 0",
                            i + 1,
                            j + 1
                        )))
                    }
                    (false, Entry::Root(x)) if x >= m => {
                        return Err(invalid(format!("exponent {x} out of range for m = {m}")))
                    }
                    _ => {}
                }
                entries.push(e);
            }
        }
        Ok(RootMatrix { n, m, entries })
    }

    /// Builds a sign matrix from `0/+1/-1` rows.
    pub fn from_signs(rows: &[Vec<i8>]) -> Result<Self> {
        let rows = rows
            .iter()
            .map(|row| {
                row.iter()
                    .map(|&v| match v {
                        0 => Ok(Entry::Zero),
                        1 => Ok(Entry::Root(0)),
                        -1 => Ok(Entry::Root(1)),
                        other => Err(invalid(format!("{other} is not a sign"))),
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        RootMatrix::new(2, rows)
    }

    /// Builds a matrix from exponent rows; `None` stands for the zero entry.
    pub fn from_exponents(m: u8, rows: &[Vec<Option<u8>>]) -> Result<Self> {
        let rows = rows
            .iter()
            .map(|row| {
                row.iter()
                    .map(|e| e.map_or(Entry::Zero, Entry::Root))
                    .collect()
            })
            .collect();
        RootMatrix::new(m, rows)
    }

    /// Builds an `n x n` matrix whose off-diagonal exponents come from `f`.
    pub fn from_fn(n: usize, m: u8, mut f: impl FnMut(usize, usize) -> u8) -> Result<Self> {
        check_modulus(m)?;
        if n == 0 {
            return Err(invalid("matrix must have dimension at least 1"));
        }
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    entries.push(Entry::Zero);
                } else {
                    let e = f(i, j);
                    if e >= m {
                        return Err(invalid(format!("exponent {e} out of range for m = {m}")));
                    }
                    entries.push(Entry::Root(e));
                }
            }
        }
        Ok(RootMatrix { n, m, entries })
    }

    /// The 1 x 1 zero matrix.
    pub fn zero(m: u8) -> Result<Self> {
        check_modulus(m)?;
        Ok(RootMatrix {
            n: 1,
            m,
            entries: vec![Entry::Zero],
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> u8 {
        self.m
    }

    pub fn get(&self, i: usize, j: usize) -> Entry {
        self.entries[i * self.n + j]
    }

    /// Off-diagonal exponent at `(i, j)`; `None` on the diagonal.
    pub fn exponent(&self, i: usize, j: usize) -> Option<u8> {
        self.get(i, j).exponent()
    }

    /// Entry as `0/+1/-1`. Only meaningful for sign matrices.
    pub fn sign(&self, i: usize, j: usize) -> i8 {
        match self.get(i, j) {
            Entry::Zero => 0,
            Entry::Root(0) => 1,
            Entry::Root(_) => -1,
        }
    }

    pub fn entries(&self) -> &[Entry] {
        &self.entries
    }

    pub fn rows(&self) -> Vec<Vec<Entry>> {
        self.entries.chunks(self.n).map(<[Entry]>::to_vec).collect()
    }

    pub fn to_signs(&self) -> Vec<Vec<i8>> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.sign(i, j)).collect())
            .collect()
    }

    pub fn is_sign_matrix(&self) -> bool {
        self.m == 2
    }

    pub fn transpose(&self) -> RootMatrix {
        let n = self.n;
        let entries = (0..n * n).map(|k| self.get(k % n, k / n)).collect();
        RootMatrix {
            n,
            m: self.m,
            entries,
        }
    }

    /// Entrywise complex conjugate.
    pub fn conj(&self) -> RootMatrix {
        RootMatrix {
            n: self.n,
            m: self.m,
            entries: self.entries.iter().map(|e| e.conj(self.m)).collect(),
        }
    }

    /// Multiplies every off-diagonal entry by `-1`. Requires even `m`.
    pub fn negated(&self) -> Result<RootMatrix> {
        if !self.m.is_multiple_of(2) {
            return Err(invalid("-1 is not a root of unity of odd order"));
        }
        let half = self.m / 2;
        Ok(RootMatrix {
            n: self.n,
            m: self.m,
            entries: self
                .entries
                .iter()
                .map(|e| e.mul(Entry::Root(half), self.m))
                .collect(),
        })
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    /// `m_ij = -m_ji` for all `i != j`. Always false for odd `m` with `n > 1`.
    pub fn is_skew_symmetric(&self) -> bool {
        if !self.m.is_multiple_of(2) {
            return self.n == 1;
        }
        let half = self.m / 2;
        (0..self.n).all(|i| {
            (0..i).all(|j| self.get(i, j) == self.get(j, i).mul(Entry::Root(half), self.m))
        })
    }

    /// The principal submatrix on `indices`, in the given order.
    pub fn submatrix(&self, indices: &[usize]) -> RootMatrix {
        let entries = indices
            .iter()
            .flat_map(|&i| indices.iter().map(move |&j| (i, j)))
            .map(|(i, j)| self.get(i, j))
            .collect();
        RootMatrix {
            n: indices.len(),
            m: self.m,
            entries,
        }
    }

    pub fn conjugate(&self, perm: &Permutation) -> Result<RootMatrix> {
        conjugate(self, perm)
    }
}

impl fmt::Display for RootMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.entries.chunks(self.n).enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            let tokens: Vec<&str> = row.iter().map(|e| e.token(self.m)).collect();
            write!(f, "{}", tokens.join(" "))?;
        }
        Ok(())
    }
}

/// A permutation of `0..n` stored as its image array.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    image: Vec<usize>,
}

impl Permutation {
    pub fn new(image: Vec<usize>) -> Result<Self> {
        let n = image.len();
        let mut seen = vec![false; n];
        for &x in &image {
            if x >= n || seen[x] {
                return Err(invalid(format!("{image:?} is not a permutation of 0..{n}")));
            }
            seen[x] = true;
        }
        Ok(Permutation { image })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            image: (0..n).collect(),
        }
    }

    /// The transposition of `a` and `b`.
    pub fn swap(n: usize, a: usize, b: usize) -> Result<Self> {
        if a >= n || b >= n {
            return Err(invalid(format!("swap({a},{b}) out of range for n = {n}")));
        }
        let mut image: Vec<usize> = (0..n).collect();
        image.swap(a, b);
        Ok(Permutation { image })
    }

    pub fn len(&self) -> usize {
        self.image.len()
    }

    pub fn is_empty(&self) -> bool {
        self.image.is_empty()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.image[i]
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    pub fn inverse(&self) -> Permutation {
        let mut image = vec![0; self.image.len()];
        for (i, &x) in self.image.iter().enumerate() {
            image[x] = i;
        }
        Permutation { image }
    }

    /// `self.compose(other)` maps `i` to `other(self(i))`.
    ///
    /// With this convention conjugation is a left action:
    /// `conjugate(M, σ.compose(τ)) == conjugate(conjugate(M, τ), σ)`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.len() != other.len() {
            return Err(invalid("permutations of different length"));
        }
        Ok(Permutation {
            image: self.image.iter().map(|&i| other.image[i]).collect(),
        })
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// All permutations of `0..n` in lexicographic order of image arrays.
    pub fn all(n: usize) -> AllPermutations {
        AllPermutations {
            next: Some((0..n).collect()),
        }
    }
}

/// Iterator over all permutations of `0..n`, lexicographic.
pub struct AllPermutations {
    next: Option<Vec<usize>>,
}

impl Iterator for AllPermutations {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        if next_permutation(&mut succ) {
            self.next = Some(succ);
        }
        Some(Permutation { image: current })
    }
}

pub(crate) fn next_permutation(a: &mut [usize]) -> bool {
    if a.len() < 2 {
        return false;
    }
    let mut i = a.len() - 1;
    while i > 0 && a[i - 1] >= a[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = a.len() - 1;
    while a[j] <= a[i - 1] {
        j -= 1;
    }
    a.swap(i - 1, j);
    a[i..].reverse();
    true
}

/// A permutation together with the skew-block size `s`: conjugating the
/// source matrix by `perm` gives the block form whose leading `s x s` block
/// is skew-symmetric and whose trailing block is symmetric.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockDecomposition {
    pub perm: Permutation,
    pub s: usize,
}

/// Simultaneous row/column relabeling: `result[i][j] = M[σ(i)][σ(j)]`.
pub fn conjugate(m: &RootMatrix, perm: &Permutation) -> Result<RootMatrix> {
    if perm.len() != m.n {
        return Err(invalid(format!(
            "permutation of length {} applied to {}x{} matrix",
            perm.len(),
            m.n,
            m.n
        )));
    }
    let n = m.n;
    let mut entries = Vec::with_capacity(n * n);
    for i in 0..n {
        let row = perm.image[i] * n;
        for j in 0..n {
            entries.push(m.entries[row + perm.image[j]]);
        }
    }
    Ok(RootMatrix { n, m: m.m, entries })
}

/// Compares the conjugate `M[σ(i)][σ(j)]` against `best` row-major and
/// returns true when it is strictly smaller, stopping at the first
/// differing entry.
fn conjugate_is_smaller(m: &RootMatrix, image: &[usize], best: &[Entry]) -> bool {
    let n = m.n;
    for i in 0..n {
        let row = image[i] * n;
        for j in 0..n {
            let e = m.entries[row + image[j]];
            let b = best[i * n + j];
            if e != b {
                return e < b;
            }
        }
    }
    false
}

/// The lexicographically least row-major conjugate of `m` over all `n!`
/// permutations. Constant on orbits; idempotent.
pub fn canonical_form(m: &RootMatrix) -> Result<RootMatrix> {
    canonical_form_with_perm(m).map(|(c, _)| c)
}

/// Like [`canonical_form`], also returning a permutation `σ` with
/// `conjugate(m, σ) == canonical`.
pub fn canonical_form_with_perm(m: &RootMatrix) -> Result<(RootMatrix, Permutation)> {
    if m.n > MAX_CANONICAL_DIM {
        return Err(Error::UnsupportedDimension {
            n: m.n,
            min: 1,
            max: MAX_CANONICAL_DIM,
        });
    }
    let mut image: Vec<usize> = (0..m.n).collect();
    let mut best = m.entries.clone();
    let mut best_image = image.clone();
    while next_permutation(&mut image) {
        if conjugate_is_smaller(m, &image, &best) {
            let n = m.n;
            for i in 0..n {
                for j in 0..n {
                    best[i * n + j] = m.entries[image[i] * n + image[j]];
                }
            }
            best_image.copy_from_slice(&image);
        }
    }
    Ok((
        RootMatrix {
            n: m.n,
            m: m.m,
            entries: best,
        },
        Permutation { image: best_image },
    ))
}

/// One permutation-equivalence class: its canonical representative and the
/// number of input matrices that fell into it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivalenceClass {
    pub representative: RootMatrix,
    pub count: usize,
}

/// Partitions `matrices` by canonical form. Classes are returned in
/// ascending order of representative.
pub fn equivalence_classes(matrices: &[RootMatrix]) -> Result<Vec<EquivalenceClass>> {
    use std::collections::BTreeMap;

    let Some(first) = matrices.first() else {
        return Ok(Vec::new());
    };
    if matrices.iter().any(|x| x.n != first.n || x.m != first.m) {
        return Err(invalid("matrices of mixed dimension or modulus"));
    }
    let mut classes: BTreeMap<RootMatrix, usize> = BTreeMap::new();
    for x in matrices {
        *classes.entry(canonical_form(x)?).or_default() += 1;
    }
    Ok(classes
        .into_iter()
        .map(|(representative, count)| EquivalenceClass {
            representative,
            count,
        })
        .collect())
}

/// Every symmetric `n x n` sign matrix, in binary-counter order over the
/// upper triangle.
pub fn all_symmetric_sign_matrices(n: usize) -> Vec<RootMatrix> {
    let pairs = n * n.saturating_sub(1) / 2;
    (0u64..1 << pairs)
        .map(|code| sign_matrix_from_upper(n, code, |bit| bit))
        .collect()
}

/// Every skew-symmetric `n x n` sign matrix.
pub fn all_skew_sign_matrices(n: usize) -> Vec<RootMatrix> {
    let pairs = n * n.saturating_sub(1) / 2;
    (0u64..1 << pairs)
        .map(|code| sign_matrix_from_upper(n, code, |bit| bit ^ 1))
        .collect()
}

/// Every `n x n` sign matrix (`2^{n(n-1)}` of them).
pub fn all_sign_matrices(n: usize) -> Vec<RootMatrix> {
    let bits = n * n.saturating_sub(1);
    (0u64..1 << bits)
        .map(|code| {
            let mut k = 0;
            RootMatrix::from_fn(n, 2, |_, _| {
                let e = ((code >> k) & 1) as u8;
                k += 1;
                e
            })
            .expect("valid sign matrix")
        })
        .collect()
}

fn sign_matrix_from_upper(n: usize, code: u64, lower: impl Fn(u8) -> u8) -> RootMatrix {
    let mut upper = vec![0u8; n * n];
    let mut k = 0;
    for i in 0..n {
        for j in i + 1..n {
            upper[i * n + j] = ((code >> k) & 1) as u8;
            k += 1;
        }
    }
    RootMatrix::from_fn(n, 2, |i, j| {
        if i < j {
            upper[i * n + j]
        } else {
            lower(upper[j * n + i])
        }
    })
    .expect("valid sign matrix")
}

/// Parses one entry token in the alphabet of `m`.
pub fn parse_entry(token: &str, m: u8) -> Option<Entry> {
    let e = match (m, token) {
        (_, "0") => Entry::Zero,
        (_, "1") => Entry::Root(0),
        (2, "-1") => Entry::Root(1),
        (3, "w") => Entry::Root(1),
        (3, "w2") => Entry::Root(2),
        (4, "i") => Entry::Root(1),
        (4, "-1") => Entry::Root(2),
        (4, "-i") => Entry::Root(3),
        _ => return None,
    };
    Some(e)
}

/// Parses matrix text: one row per line, entries separated by whitespace
/// or commas. Blank lines and lines starting with `#` are skipped. Errors
/// carry 1-based line and column positions.
pub fn parse_matrix(text: &str, m: u8) -> Result<RootMatrix> {
    check_modulus(m)?;
    let perr = |line: usize, column: usize, message: String| Error::Parse {
        line,
        column,
        message,
    };
    let mut rows: Vec<Vec<Entry>> = Vec::new();
    let mut positions: Vec<(usize, Vec<usize>)> = Vec::new();
    for (ln, raw) in text.lines().enumerate() {
        let line = ln + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let mut row = Vec::new();
        let mut cols = Vec::new();
        let mut start: Option<usize> = None;
        let chars: Vec<char> = raw.chars().collect();
        for k in 0..=chars.len() {
            let sep = k == chars.len() || chars[k].is_whitespace() || chars[k] == ',';
            match (sep, start) {
                (false, None) => start = Some(k),
                (true, Some(b)) => {
                    let token: String = chars[b..k].iter().collect();
                    let e = parse_entry(&token, m).ok_or_else(|| {
                        perr(line, b + 1, format!("invalid entry {token:?} for m = {m}"))
                    })?;
                    row.push(e);
                    cols.push(b + 1);
                    start = None;
                }
                _ => {}
            }
        }
        rows.push(row);
        positions.push((line, cols));
    }
    if rows.is_empty() {
        return Err(perr(1, 1, "empty matrix".into()));
    }
    let n = rows.len();
    for (i, row) in rows.iter().enumerate() {
        let (line, cols) = &positions[i];
        if row.len() != n {
            let column = cols.get(n).copied().unwrap_or(1);
            return Err(perr(
                *line,
                column,
                format!("row has {} entries, expected {n}", row.len()),
            ));
        }
        for (j, e) in row.iter().enumerate() {
            if (i == j) != (*e == Entry::Zero) {
                let what = if i == j {
                    "diagonal entry must be 0"
                } else {
                    "off-diagonal entry must be nonzero"
                };
                return Err(perr(*line, cols[j], what.into()));
            }
        }
    }
    RootMatrix::new(m, rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m3713() -> RootMatrix {
        RootMatrix::from_signs(&[vec![0, -1, 1], vec![1, 0, -1], vec![1, -1, 0]]).unwrap()
    }

    #[test]
    fn rejects_bad_diagonal_and_zero_off_diagonal() {
        assert!(RootMatrix::from_signs(&[vec![1, 1], vec![1, 0]]).is_err());
        assert!(RootMatrix::from_signs(&[vec![0, 0], vec![1, 0]]).is_err());
        assert!(RootMatrix::from_signs(&[vec![0, 1], vec![1]]).is_err());
        assert!(
            RootMatrix::from_exponents(3, &[vec![None, Some(3)], vec![Some(0), None]]).is_err()
        );
        assert!(RootMatrix::zero(5).is_err());
    }

    #[test]
    fn identity_conjugation_is_noop() {
        let m = m3713();
        assert_eq!(conjugate(&m, &Permutation::identity(3)).unwrap(), m);
    }

    #[test]
    fn swap_first_two_indices() {
        let m = m3713();
        let c = conjugate(&m, &Permutation::swap(3, 0, 1).unwrap()).unwrap();
        let expected =
            RootMatrix::from_signs(&[vec![0, 1, -1], vec![-1, 0, 1], vec![-1, 1, 0]]).unwrap();
        assert_eq!(c, expected);
    }

    #[test]
    fn dimension_mismatch_is_rejected() {
        let m = m3713();
        assert!(matches!(
            conjugate(&m, &Permutation::identity(2)),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn inverse_undoes_conjugation() {
        let m = m3713();
        for p in Permutation::all(3) {
            let back = conjugate(&conjugate(&m, &p).unwrap(), &p.inverse()).unwrap();
            assert_eq!(back, m);
        }
    }

    #[test]
    fn all_permutations_counts() {
        assert_eq!(Permutation::all(0).count(), 1);
        assert_eq!(Permutation::all(1).count(), 1);
        assert_eq!(Permutation::all(4).count(), 24);
        assert_eq!(Permutation::all(5).count(), 120);
    }

    #[test]
    fn permutation_validation() {
        assert!(Permutation::new(vec![0, 0]).is_err());
        assert!(Permutation::new(vec![2, 0]).is_err());
        assert!(Permutation::new(vec![1, 2, 0]).is_ok());
    }

    #[test]
    fn canonical_form_rejects_large_n() {
        let m = RootMatrix::from_fn(9, 2, |_, _| 0).unwrap();
        assert!(matches!(
            canonical_form(&m),
            Err(Error::UnsupportedDimension { n: 9, .. })
        ));
    }

    #[test]
    fn canonical_form_with_perm_is_consistent() {
        let m = m3713();
        let (c, p) = canonical_form_with_perm(&m).unwrap();
        assert_eq!(conjugate(&m, &p).unwrap(), c);
        assert_eq!(canonical_form(&c).unwrap(), c);
    }

    #[test]
    fn reduced_symmetric_three_by_three_classes() {
        // Symmetric 3x3 matrices with the 1x1 zero block first and a 2x2
        // symmetric block S: 2 choices of S, 4 of B.
        let mut ms = Vec::new();
        for s in [0u8, 1] {
            for b in 0u8..4 {
                let m = RootMatrix::from_fn(3, 2, |i, j| match (i.min(j), i.max(j)) {
                    (1, 2) => s,
                    (0, 1) => b & 1,
                    (0, 2) => b >> 1,
                    _ => unreachable!(),
                })
                .unwrap();
                ms.push(m);
            }
        }
        let classes = equivalence_classes(&ms).unwrap();
        let mut sizes: Vec<usize> = classes.iter().map(|c| c.count).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 1, 3, 3]);
    }

    #[test]
    fn three_by_three_class_counts() {
        assert_eq!(
            equivalence_classes(&all_symmetric_sign_matrices(3))
                .unwrap()
                .len(),
            4
        );
        assert_eq!(
            equivalence_classes(&all_skew_sign_matrices(3))
                .unwrap()
                .len(),
            2
        );
    }

    #[test]
    fn singleton_and_mixed_inputs() {
        let m = m3713();
        let classes = equivalence_classes(std::slice::from_ref(&m)).unwrap();
        assert_eq!(classes.len(), 1);
        assert_eq!(classes[0].count, 1);
        let other = RootMatrix::zero(2).unwrap();
        assert!(equivalence_classes(&[m, other]).is_err());
    }

    #[test]
    fn one_by_one_matrix() {
        let z = RootMatrix::zero(2).unwrap();
        assert_eq!(canonical_form(&z).unwrap(), z);
        assert!(z.is_symmetric());
        assert!(z.is_skew_symmetric());
    }

    #[test]
    fn negation_and_transpose() {
        let m = m3713();
        assert_eq!(m.transpose().transpose(), m);
        assert_eq!(m.negated().unwrap().negated().unwrap(), m);
        let cubic = RootMatrix::from_fn(2, 3, |_, _| 1).unwrap();
        assert!(cubic.negated().is_err());
    }

    #[test]
    fn display_uses_alphabet() {
        let q = RootMatrix::from_exponents(4, &[vec![None, Some(1)], vec![Some(3), None]]).unwrap();
        assert_eq!(q.to_string(), "0 i\n-i 0");
        let c = RootMatrix::from_exponents(3, &[vec![None, Some(2)], vec![Some(2), None]]).unwrap();
        assert_eq!(c.to_string(), "0 w2\nw2 0");
    }

    #[test]
    fn parse_text() {
        let m = parse_matrix("0 -1 1\n1, 0, -1\n\n# c\n1 -1 0\n", 2).unwrap();
        assert_eq!(
            m.to_signs(),
            vec![vec![0, -1, 1], vec![1, 0, -1], vec![1, -1, 0]]
        );
        let w = parse_matrix("0 w2\nw 0", 3).unwrap();
        assert_eq!(w.exponent(0, 1), Some(2));
        let q = parse_matrix("0 -i\n-1 0", 4).unwrap();
        assert_eq!(q.exponent(0, 1), Some(3));
        assert_eq!(q.exponent(1, 0), Some(2));
    }

    #[test]
    fn parse_diagnostics() {
        let pos = |text: &str, m: u8| match parse_matrix(text, m) {
            Err(Error::Parse { line, column, .. }) => (line, column),
            other => panic!("{other:?}"),
        };
        assert_eq!(pos("0 1\n1 2", 2), (2, 3));
        assert_eq!(pos("0 1\n1 0 1", 2), (2, 5));
        assert_eq!(pos("1 1\n1 0", 2), (1, 1));
        assert_eq!(pos("0 0\n1 0", 2), (1, 3));
        assert_eq!(pos("0 i\ni 0", 3), (1, 3));
        assert_eq!(pos("", 2), (1, 1));
        assert!(parse_matrix("0", 5).is_err());
    }
}
