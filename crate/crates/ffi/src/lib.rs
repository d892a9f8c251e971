//! C ABI for `resmat`.
//!
//! Matrices cross the boundary as opaque [`ResmatMatrix`] handles. Every
//! function returns a [`ResmatStatus`]; on failure a message is available
//! from [`resmat_last_error_message`] on the same thread. Panics are caught
//! and reported as [`ResmatStatus::Panic`].
//!
//! Entries are exponents: `-1` stands for the zero diagonal entry and
//! `e` in `0..m` for `ζ_m^e`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use resmat::cyclotomic::{
    cubic_symbol, quartic_symbol, EisensteinInt, GaussianInt, PrimaryPrime, QuadInt,
};
use resmat::enumerate::{self, Family};
use resmat::frequencies::{empirical_scan, exact_frequencies, CLASS_COUNT};
use resmat::higher::{
    cubic_witness, is_cubic_residue_matrix, is_quartic_residue_matrix, quartic_witness,
};
use resmat::matrix::{canonical_form, conjugate, parse_matrix, Entry, Permutation, RootMatrix};
use resmat::qr::{is_qr_matrix, witness_primes};
use resmat::rational::{jacobi, legendre, OddPrime};
use resmat::Error;

/// Result codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ResmatStatus {
    Ok = 0,
    /// The matrix is not a residue matrix of the requested kind.
    NotMember = 1,
    InvalidArgument = 2,
    Parse = 3,
    SearchExhausted = 4,
    UnsupportedDimension = 5,
    RamifiedPrime = 6,
    NotCoprime = 7,
    NullPointer = 8,
    BufferTooSmall = 9,
    Panic = 10,
    Internal = 11,
}

/// Matrix family for counting.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ResmatFamily {
    Qr = 0,
    Symmetric = 1,
    Skew = 2,
}

/// Opaque matrix handle.
pub struct ResmatMatrix {
    inner: RootMatrix,
}

/// Number of configuration classes of prime triples.
pub const RESMAT_CLASS_COUNT: usize = 10;

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("interior nul removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

struct Fail(ResmatStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        let status = match &e {
            Error::InvalidArgument(_) => ResmatStatus::InvalidArgument,
            Error::UnsupportedDimension { .. } => ResmatStatus::UnsupportedDimension,
            Error::SearchExhausted { .. } | Error::NormSearchExhausted { .. } => {
                ResmatStatus::SearchExhausted
            }
            Error::NotQrMatrix | Error::NotCubicResidueMatrix | Error::NotQuarticResidueMatrix => {
                ResmatStatus::NotMember
            }
            Error::RamifiedPrime => ResmatStatus::RamifiedPrime,
            Error::NotCoprime => ResmatStatus::NotCoprime,
            Error::Parse { .. } => ResmatStatus::Parse,
            _ => ResmatStatus::Internal,
        };
        Fail(status, e.to_string())
    }
}

fn null(what: &str) -> Fail {
    Fail(ResmatStatus::NullPointer, format!("{what} is null"))
}

fn guard(f: impl FnOnce() -> Result<ResmatStatus, Fail>) -> ResmatStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(status)) => status,
        Ok(Err(Fail(status, msg))) => {
            set_error(msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(format!("panic: {msg}"));
            ResmatStatus::Panic
        }
    }
}

unsafe fn matrix_ref<'a>(m: *const ResmatMatrix) -> Result<&'a RootMatrix, Fail> {
    m.as_ref().map(|h| &h.inner).ok_or_else(|| null("matrix"))
}

unsafe fn out_mut<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, Fail> {
    p.as_mut().ok_or_else(|| null(what))
}

unsafe fn out_slice<'a, T>(
    p: *mut T,
    len: usize,
    need: usize,
    what: &str,
) -> Result<&'a mut [T], Fail> {
    if need == 0 {
        return Ok(&mut []);
    }
    if p.is_null() {
        return Err(null(what));
    }
    if len < need {
        return Err(Fail(
            ResmatStatus::BufferTooSmall,
            format!("{what} holds {len} values, {need} needed"),
        ));
    }
    Ok(std::slice::from_raw_parts_mut(p, need))
}

fn boxed(m: RootMatrix) -> *mut ResmatMatrix {
    Box::into_raw(Box::new(ResmatMatrix { inner: m }))
}

/// Message for the last failed call on this thread, or null. The pointer
/// stays valid until the next `resmat_*` call on the same thread.
#[no_mangle]
pub extern "C" fn resmat_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Builds an `n x n` matrix of `m`th roots of unity from `n*n` row-major
/// exponents (`-1` on the diagonal).
///
/// # Safety
/// `exponents` must point to `n*n` readable values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn resmat_matrix_new(
    m: u8,
    n: usize,
    exponents: *const i32,
    out: *mut *mut ResmatMatrix,
) -> ResmatStatus {
    guard(|| {
        let out = out_mut(out, "out")?;
        if n == 0 {
            return Err(Fail(
                ResmatStatus::InvalidArgument,
                "n must be positive".into(),
            ));
        }
        if exponents.is_null() {
            return Err(null("exponents"));
        }
        let len = n
            .checked_mul(n)
            .ok_or_else(|| Fail(ResmatStatus::InvalidArgument, "dimension overflows".into()))?;
        let raw = std::slice::from_raw_parts(exponents, len);
        let rows = raw
            .chunks(n)
            .map(|r| {
                r.iter()
                    .map(|&e| match e {
                        -1 => Ok(Entry::Zero),
                        e if (0..m as i32).contains(&e) => Ok(Entry::Root(e as u8)),
                        e => Err(Fail(
                            ResmatStatus::InvalidArgument,
                            format!("exponent {e} outside -1..{m}"),
                        )),
                    })
                    .collect::<Result<Vec<_>, Fail>>()
            })
            .collect::<Result<Vec<_>, Fail>>()?;
        *out = boxed(RootMatrix::new(m, rows)?);
        Ok(ResmatStatus::Ok)
    })
}

/// Parses matrix text (rows on lines, entries separated by spaces or
/// commas; alphabet `0 1 -1`, `0 1 w w2` or `0 1 i -1 -i`).
///
/// # Safety
/// `text` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn resmat_matrix_parse(
    text: *const c_char,
    m: u8,
    out: *mut *mut ResmatMatrix,
) -> ResmatStatus {
    guard(|| {
        let out = out_mut(out, "out")?;
        if text.is_null() {
            return Err(null("text"));
        }
        let text = CStr::from_ptr(text)
            .to_str()
            .map_err(|_| Fail(ResmatStatus::Parse, "text is not UTF-8".into()))?;
        *out = boxed(parse_matrix(text, m)?);
        Ok(ResmatStatus::Ok)
    })
}

/// Releases a handle. Null is ignored.
///
/// # Safety
/// `matrix` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn resmat_matrix_free(matrix: *mut ResmatMatrix) {
    if !matrix.is_null() {
        drop(Box::from_raw(matrix));
    }
}

/// Dimension of the matrix, 0 for null.
///
/// # Safety
/// `matrix` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn resmat_matrix_dim(matrix: *const ResmatMatrix) -> usize {
    matrix.as_ref().map_or(0, |h| h.inner.n())
}

/// Root-of-unity order `m`, 0 for null.
///
/// # Safety
/// `matrix` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn resmat_matrix_modulus(matrix: *const ResmatMatrix) -> u8 {
    matrix.as_ref().map_or(0, |h| h.inner.m())
}

/// Exponent at `(i, j)`, `-1` for the diagonal.
///
/// # Safety
/// `matrix` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn resmat_matrix_get(
    matrix: *const ResmatMatrix,
    i: usize,
    j: usize,
    out: *mut i32,
) -> ResmatStatus {
    guard(|| {
        let m = matrix_ref(matrix)?;
        let out = out_mut(out, "out")?;
        if i >= m.n() || j >= m.n() {
            return Err(Fail(
                ResmatStatus::InvalidArgument,
                format!("index ({i}, {j}) out of range for n = {}", m.n()),
            ));
        }
        *out = m.exponent(i, j).map_or(-1, i32::from);
        Ok(ResmatStatus::Ok)
    })
}

/// Canonical representative of the permutation class.
///
/// # Safety
/// `matrix` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn resmat_canonical_form(
    matrix: *const ResmatMatrix,
    out: *mut *mut ResmatMatrix,
) -> ResmatStatus {
    guard(|| {
        let m = matrix_ref(matrix)?;
        let out = out_mut(out, "out")?;
        *out = boxed(canonical_form(m)?);
        Ok(ResmatStatus::Ok)
    })
}

/// `result[i][j] = M[perm[i]][perm[j]]`, with a 0-based image array.
///
/// # Safety
/// `perm` must point to `len` readable values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn resmat_conjugate(
    matrix: *const ResmatMatrix,
    perm: *const usize,
    len: usize,
    out: *mut *mut ResmatMatrix,
) -> ResmatStatus {
    guard(|| {
        let m = matrix_ref(matrix)?;
        let out = out_mut(out, "out")?;
        if perm.is_null() && len > 0 {
            return Err(null("perm"));
        }
        let image = if len == 0 {
            Vec::new()
        } else {
            std::slice::from_raw_parts(perm, len).to_vec()
        };
        *out = boxed(conjugate(m, &Permutation::new(image)?)?);
        Ok(ResmatStatus::Ok)
    })
}

/// Quadratic membership test. Writes `s` (0 when not a member) and the
/// diagonal of `M²` into `diag` (`n` values; may be null when `diag_len`
/// is 0). Returns `Ok` or `NotMember`.
///
/// # Safety
/// Pointers must be valid for the stated lengths.
#[no_mangle]
pub unsafe extern "C" fn resmat_qr_check(
    matrix: *const ResmatMatrix,
    out_s: *mut usize,
    diag: *mut i64,
    diag_len: usize,
) -> ResmatStatus {
    guard(|| {
        let m = matrix_ref(matrix)?;
        let d = is_qr_matrix(m)?;
        if !out_s.is_null() {
            *out_s = d.s.unwrap_or(0);
        }
        if !diag.is_null() || diag_len > 0 {
            out_slice(diag, diag_len, d.diag.len(), "diag")?.copy_from_slice(&d.diag);
        }
        Ok(if d.verdict {
            ResmatStatus::Ok
        } else {
            ResmatStatus::NotMember
        })
    })
}

/// Cubic membership test.
///
/// # Safety
/// `matrix` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn resmat_cubic_check(matrix: *const ResmatMatrix) -> ResmatStatus {
    guard(|| {
        let m = matrix_ref(matrix)?;
        Ok(if is_cubic_residue_matrix(m)? {
            ResmatStatus::Ok
        } else {
            ResmatStatus::NotMember
        })
    })
}

/// Quartic membership test; writes `s` (0 when not a member).
///
/// # Safety
/// `matrix` must be a live handle; `out_s` may be null.
#[no_mangle]
pub unsafe extern "C" fn resmat_quartic_check(
    matrix: *const ResmatMatrix,
    out_s: *mut usize,
) -> ResmatStatus {
    guard(|| {
        let m = matrix_ref(matrix)?;
        let d = is_quartic_residue_matrix(m)?;
        if !out_s.is_null() {
            *out_s = d.s.unwrap_or(0);
        }
        Ok(if d.verdict {
            ResmatStatus::Ok
        } else {
            ResmatStatus::NotMember
        })
    })
}

/// Distinct odd primes below `limit` whose QR matrix is `matrix`, written
/// to `primes` (`n` values).
///
/// # Safety
/// `primes` must be writable for `len` values.
#[no_mangle]
pub unsafe extern "C" fn resmat_qr_witness(
    matrix: *const ResmatMatrix,
    limit: u64,
    primes: *mut u64,
    len: usize,
) -> ResmatStatus {
    guard(|| {
        let m = matrix_ref(matrix)?;
        let out = out_slice(primes, len, m.n(), "primes")?;
        for (o, p) in out.iter_mut().zip(witness_primes(m, limit)?) {
            *o = p.get();
        }
        Ok(ResmatStatus::Ok)
    })
}

fn write_elements<T: QuadInt>(ps: &[PrimaryPrime<T>], a: &mut [i64], b: &mut [i64]) {
    for (k, p) in ps.iter().enumerate() {
        let (x, y) = p.element().parts();
        a[k] = x;
        b[k] = y;
    }
}

/// Primary Eisenstein primes `a[k] + b[k]ω` realizing a cubic matrix.
///
/// # Safety
/// `a` and `b` must be writable for `len` values.
#[no_mangle]
pub unsafe extern "C" fn resmat_cubic_witness(
    matrix: *const ResmatMatrix,
    norm_limit: u64,
    a: *mut i64,
    b: *mut i64,
    len: usize,
) -> ResmatStatus {
    guard(|| {
        let m = matrix_ref(matrix)?;
        let oa = out_slice(a, len, m.n(), "a")?;
        let ob = out_slice(b, len, m.n(), "b")?;
        write_elements(&cubic_witness(m, norm_limit)?, oa, ob);
        Ok(ResmatStatus::Ok)
    })
}

/// Primary Gaussian primes `a[k] + b[k]i` realizing a quartic matrix.
///
/// # Safety
/// `a` and `b` must be writable for `len` values.
#[no_mangle]
pub unsafe extern "C" fn resmat_quartic_witness(
    matrix: *const ResmatMatrix,
    norm_limit: u64,
    a: *mut i64,
    b: *mut i64,
    len: usize,
) -> ResmatStatus {
    guard(|| {
        let m = matrix_ref(matrix)?;
        let oa = out_slice(a, len, m.n(), "a")?;
        let ob = out_slice(b, len, m.n(), "b")?;
        write_elements(&quartic_witness(m, norm_limit)?, oa, ob);
        Ok(ResmatStatus::Ok)
    })
}

/// Legendre symbol `(a/p)`: -1, 0 or 1.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn resmat_legendre(a: i64, p: u64, out: *mut i32) -> ResmatStatus {
    guard(|| {
        let out = out_mut(out, "out")?;
        *out = legendre(a, OddPrime::new(p)?).into();
        Ok(ResmatStatus::Ok)
    })
}

/// Jacobi symbol `(a/n)` for odd positive `n`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn resmat_jacobi(a: i64, n: u64, out: *mut i32) -> ResmatStatus {
    guard(|| {
        let out = out_mut(out, "out")?;
        *out = jacobi(a, n)?.into();
        Ok(ResmatStatus::Ok)
    })
}

/// Cubic symbol `((xa + xb ω) / (qa + qb ω))_3` as an exponent of `ω`. The
/// denominator must be a primary prime.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn resmat_cubic_symbol(
    xa: i64,
    xb: i64,
    qa: i64,
    qb: i64,
    out: *mut u8,
) -> ResmatStatus {
    guard(|| {
        let out = out_mut(out, "out")?;
        let q = PrimaryPrime::new(EisensteinInt::new(qa, qb))?;
        *out = cubic_symbol(EisensteinInt::new(xa, xb), q)?;
        Ok(ResmatStatus::Ok)
    })
}

/// Quartic symbol `((xa + xb i) / (qa + qb i))_4` as an exponent of `i`.
/// The denominator must be a primary prime.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn resmat_quartic_symbol(
    xa: i64,
    xb: i64,
    qa: i64,
    qb: i64,
    out: *mut u8,
) -> ResmatStatus {
    guard(|| {
        let out = out_mut(out, "out")?;
        let q = PrimaryPrime::new(GaussianInt::new(qa, qb))?;
        *out = quartic_symbol(GaussianInt::new(xa, xb), q)?;
        Ok(ResmatStatus::Ok)
    })
}

fn family(f: ResmatFamily) -> Family {
    match f {
        ResmatFamily::Qr => Family::Qr,
        ResmatFamily::Symmetric => Family::Symmetric,
        ResmatFamily::Skew => Family::SkewSymmetric,
    }
}

/// Number of `n x n` matrices in a family.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn resmat_count_matrices(
    n: usize,
    kind: ResmatFamily,
    out: *mut u64,
) -> ResmatStatus {
    guard(|| {
        let out = out_mut(out, "out")?;
        *out = enumerate::count_family(n, family(kind))?;
        Ok(ResmatStatus::Ok)
    })
}

/// Number of permutation classes in a family.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn resmat_count_classes(
    n: usize,
    kind: ResmatFamily,
    out: *mut u64,
) -> ResmatStatus {
    guard(|| {
        let out = out_mut(out, "out")?;
        *out = enumerate::count_classes(n, family(kind))?;
        Ok(ResmatStatus::Ok)
    })
}

/// Exact model frequencies `num[k] / den[k]` of the 10 configuration
/// classes, in class order.
///
/// # Safety
/// `num` and `den` must be writable for `len` values.
#[no_mangle]
pub unsafe extern "C" fn resmat_exact_frequencies(
    num: *mut u64,
    den: *mut u64,
    len: usize,
) -> ResmatStatus {
    guard(|| {
        let on = out_slice(num, len, CLASS_COUNT, "num")?;
        let od = out_slice(den, len, CLASS_COUNT, "den")?;
        for (k, c) in exact_frequencies().classes.iter().enumerate() {
            on[k] = *c.exact.numer();
            od[k] = *c.exact.denom();
        }
        Ok(ResmatStatus::Ok)
    })
}

/// Per-class counts of prime triples `p < q < r` with `p·q·r <= bound`.
///
/// # Safety
/// `counts` must be writable for `len` values; `total` may be null.
#[no_mangle]
pub unsafe extern "C" fn resmat_empirical_scan(
    bound: u64,
    counts: *mut u64,
    len: usize,
    total: *mut u64,
) -> ResmatStatus {
    guard(|| {
        let oc = out_slice(counts, len, CLASS_COUNT, "counts")?;
        let report = empirical_scan(bound)?;
        for (k, c) in report.classes.iter().enumerate() {
            oc[k] = c.count;
        }
        if !total.is_null() {
            *total = report.total;
        }
        Ok(ResmatStatus::Ok)
    })
}

/// Library version as a static nul-terminated string.
#[no_mangle]
pub extern "C" fn resmat_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

const _: () = assert!(RESMAT_CLASS_COUNT == CLASS_COUNT);
