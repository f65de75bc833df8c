//! C ABI for the `twosided` engine.
//!
//! Matrices cross the boundary as opaque `TsMatrix` handles. Every fallible
//! call returns a [`TsStatus`]; on failure a message is available from
//! [`ts_last_error_message`] until the next failing call on the same thread.
//! Strings returned by this library must be released with [`ts_string_free`],
//! handles with [`ts_matrix_free`].

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::ptr;

use twosided::format::{parse_matrix_file, render_matrix_file};
use twosided::report::{ReportBody, ReportDocument, SolveResult};
use twosided::{
    imt_report_with, right_inverse, rref, solve, two_sided_check, Error, GenConfig, ImtOptions,
    Matrix, Rational, RightInverse,
};

/// Result codes. Zero is success.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TsStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    DimensionMismatch = 4,
    NotSquare = 5,
    ZeroDenominator = 6,
    /// A correctly detected negative answer: no inverse, no solution.
    Singular = 7,
    InvalidArgument = 8,
    /// Two computations that must agree did not.
    Disagreement = 9,
    Panic = 10,
}

/// Opaque matrix handle.
pub struct TsMatrix(Matrix);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: impl Into<String>) {
    let c = CString::new(message.into().replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(c));
}

fn fail(status: TsStatus, message: impl Into<String>) -> TsStatus {
    set_error(message);
    status
}

fn from_engine(err: Error) -> TsStatus {
    let status = match err {
        Error::ZeroDenominator => TsStatus::ZeroDenominator,
        Error::DimensionMismatch { .. } => TsStatus::DimensionMismatch,
        Error::NotSquare { .. } => TsStatus::NotSquare,
        Error::Parse { .. } | Error::InvalidRational(_) => TsStatus::ParseError,
        Error::RowOutOfRange { .. }
        | Error::ZeroScale
        | Error::SelfAddition { .. }
        | Error::RankTooLarge { .. } => TsStatus::InvalidArgument,
    };
    fail(status, err.to_string())
}

/// Runs `f`, converting panics into [`TsStatus::Panic`].
fn guard(f: impl FnOnce() -> TsStatus) -> TsStatus {
    std::panic::catch_unwind(std::panic::AssertUnwindSafe(f))
        .unwrap_or_else(|_| fail(TsStatus::Panic, "internal panic"))
}

unsafe fn matrix_ref<'a>(m: *const TsMatrix) -> Result<&'a Matrix, TsStatus> {
    m.as_ref()
        .map(|h| &h.0)
        .ok_or_else(|| fail(TsStatus::NullPointer, "null matrix handle"))
}

unsafe fn str_arg<'a>(s: *const c_char) -> Result<&'a str, TsStatus> {
    if s.is_null() {
        return Err(fail(TsStatus::NullPointer, "null string"));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| fail(TsStatus::InvalidUtf8, "string is not valid UTF-8"))
}

unsafe fn put_matrix(out: *mut *mut TsMatrix, m: Matrix) -> TsStatus {
    *out = Box::into_raw(Box::new(TsMatrix(m)));
    TsStatus::Ok
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> TsStatus {
    match CString::new(s) {
        Ok(c) => {
            *out = c.into_raw();
            TsStatus::Ok
        }
        Err(_) => fail(TsStatus::InvalidArgument, "output contains a nul byte"),
    }
}

macro_rules! try_ffi {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(status) => return status,
        }
    };
}

macro_rules! check_out {
    ($($p:ident),+) => {
        $(if $p.is_null() {
            return fail(TsStatus::NullPointer, concat!("null output pointer `", stringify!($p), "`"));
        })+
    };
}

/// Message for the most recent failure on this thread, or NULL. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn ts_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `s` must be NULL or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ts_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// # Safety
/// `m` must be NULL or a handle returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ts_matrix_free(m: *mut TsMatrix) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// Parses the text matrix format (`rows cols` header, then rows of rational
/// literals).
///
/// # Safety
/// `text` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ts_matrix_parse(text: *const c_char, out: *mut *mut TsMatrix) -> TsStatus {
    guard(|| {
        check_out!(out);
        let text = try_ffi!(str_arg(text));
        match parse_matrix_file(text) {
            Ok(m) => put_matrix(out, m),
            Err(e) => from_engine(e),
        }
    })
}

/// Builds a matrix from row-major numerator and denominator arrays of
/// length `rows * cols`. `denominators` may be NULL for integer matrices.
///
/// # Safety
/// The arrays must hold `rows * cols` readable elements; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ts_matrix_from_i64(
    rows: usize,
    cols: usize,
    numerators: *const i64,
    denominators: *const i64,
    out: *mut *mut TsMatrix,
) -> TsStatus {
    guard(|| {
        check_out!(out);
        let Some(len) = rows.checked_mul(cols) else {
            return fail(TsStatus::InvalidArgument, "rows * cols overflows");
        };
        if numerators.is_null() && len > 0 {
            return fail(TsStatus::NullPointer, "null numerator array");
        }
        let nums: &[i64] = if len == 0 {
            &[]
        } else {
            std::slice::from_raw_parts(numerators, len)
        };
        let dens: Option<&[i64]> = (!denominators.is_null() && len > 0)
            .then(|| std::slice::from_raw_parts(denominators, len));
        let mut entries = Vec::with_capacity(len);
        for (k, &n) in nums.iter().enumerate() {
            let d = dens.map_or(1, |d| d[k]);
            entries.push(try_ffi!(Rational::new(n, d).map_err(from_engine)));
        }
        match Matrix::from_entries(rows, cols, entries) {
            Ok(m) => put_matrix(out, m),
            Err(e) => from_engine(e),
        }
    })
}

/// The `n x n` identity. Never fails.
#[no_mangle]
pub extern "C" fn ts_matrix_identity(n: usize) -> *mut TsMatrix {
    Box::into_raw(Box::new(TsMatrix(Matrix::identity(n))))
}

/// # Safety
/// `m` must be a live handle or NULL (which yields 0).
#[no_mangle]
pub unsafe extern "C" fn ts_matrix_rows(m: *const TsMatrix) -> usize {
    m.as_ref().map_or(0, |h| h.0.rows())
}

/// # Safety
/// `m` must be a live handle or NULL (which yields 0).
#[no_mangle]
pub unsafe extern "C" fn ts_matrix_cols(m: *const TsMatrix) -> usize {
    m.as_ref().map_or(0, |h| h.0.cols())
}

/// Canonical string of entry `(i, j)`, e.g. `"-1/2"`.
///
/// # Safety
/// `m` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ts_matrix_entry(
    m: *const TsMatrix,
    i: usize,
    j: usize,
    out: *mut *mut c_char,
) -> TsStatus {
    guard(|| {
        check_out!(out);
        let m = try_ffi!(matrix_ref(m));
        match m.get(i, j) {
            Some(v) => put_string(out, v.to_string()),
            None => fail(
                TsStatus::InvalidArgument,
                format!("entry ({i}, {j}) outside {}x{}", m.rows(), m.cols()),
            ),
        }
    })
}

/// Renders the matrix in the text file format.
///
/// # Safety
/// `m` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ts_matrix_to_string(
    m: *const TsMatrix,
    out: *mut *mut c_char,
) -> TsStatus {
    guard(|| {
        check_out!(out);
        let m = try_ffi!(matrix_ref(m));
        put_string(out, render_matrix_file(m))
    })
}

/// Entrywise equality; false if either handle is NULL.
///
/// # Safety
/// Handles must be live or NULL.
#[no_mangle]
pub unsafe extern "C" fn ts_matrix_equal(a: *const TsMatrix, b: *const TsMatrix) -> bool {
    match (a.as_ref(), b.as_ref()) {
        (Some(a), Some(b)) => a.0 == b.0,
        _ => false,
    }
}

/// # Safety
/// `a`, `b` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ts_matrix_mul(
    a: *const TsMatrix,
    b: *const TsMatrix,
    out: *mut *mut TsMatrix,
) -> TsStatus {
    guard(|| {
        check_out!(out);
        let (a, b) = (try_ffi!(matrix_ref(a)), try_ffi!(matrix_ref(b)));
        match a.mul(b) {
            Ok(m) => put_matrix(out, m),
            Err(e) => from_engine(e),
        }
    })
}

/// # Safety
/// `a`, `b` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ts_matrix_sub(
    a: *const TsMatrix,
    b: *const TsMatrix,
    out: *mut *mut TsMatrix,
) -> TsStatus {
    guard(|| {
        check_out!(out);
        let (a, b) = (try_ffi!(matrix_ref(a)), try_ffi!(matrix_ref(b)));
        match a.sub(b) {
            Ok(m) => put_matrix(out, m),
            Err(e) => from_engine(e),
        }
    })
}

/// Reduced row-echelon form and rank. `out_reduced` may be NULL when only
/// the rank is wanted.
///
/// # Safety
/// `m` must be a live handle; `out_rank` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ts_rref(
    m: *const TsMatrix,
    out_reduced: *mut *mut TsMatrix,
    out_rank: *mut usize,
) -> TsStatus {
    guard(|| {
        check_out!(out_rank);
        let m = try_ffi!(matrix_ref(m));
        let d = rref(m);
        *out_rank = d.rank;
        if !out_reduced.is_null() {
            put_matrix(out_reduced, d.reduced);
        }
        TsStatus::Ok
    })
}

/// Right inverse `X` with `AX = I`. Returns [`TsStatus::Singular`] when
/// none exists, with `*out_first_infeasible` (if non-NULL) set to the
/// smallest `i` for which `Ax = e_i` has no solution.
///
/// # Safety
/// `a` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ts_right_inverse(
    a: *const TsMatrix,
    out: *mut *mut TsMatrix,
    out_first_infeasible: *mut usize,
) -> TsStatus {
    guard(|| {
        check_out!(out);
        let a = try_ffi!(matrix_ref(a));
        match right_inverse(a) {
            Ok(RightInverse::Exists { inverse }) => put_matrix(out, inverse),
            Ok(RightInverse::Missing { first_infeasible }) => {
                if !out_first_infeasible.is_null() {
                    *out_first_infeasible = first_infeasible;
                }
                fail(
                    TsStatus::Singular,
                    format!(
                        "no right inverse; Ax = e{} infeasible",
                        first_infeasible + 1
                    ),
                )
            }
            Err(e) => from_engine(e),
        }
    })
}

/// Computes `AB == I` and `BA == I` independently.
///
/// # Safety
/// `a`, `b` must be live handles; both output pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn ts_two_sided_check(
    a: *const TsMatrix,
    b: *const TsMatrix,
    out_ab_is_identity: *mut bool,
    out_ba_is_identity: *mut bool,
) -> TsStatus {
    guard(|| {
        check_out!(out_ab_is_identity, out_ba_is_identity);
        let (a, b) = (try_ffi!(matrix_ref(a)), try_ffi!(matrix_ref(b)));
        match two_sided_check(a, b) {
            Ok(r) => {
                *out_ab_is_identity = r.ab_is_identity;
                *out_ba_is_identity = r.ba_is_identity;
                TsStatus::Ok
            }
            Err(e) => from_engine(e),
        }
    })
}

/// Solves `Ax = b` where `b` is a single-column matrix. Writes the JSON
/// report (same schema as the CLI's `solve --json`). Returns
/// [`TsStatus::Singular`] for an infeasible system, still writing the report.
///
/// # Safety
/// `a`, `b` must be live handles; `out_json` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ts_solve_json(
    a: *const TsMatrix,
    b: *const TsMatrix,
    out_json: *mut *mut c_char,
) -> TsStatus {
    guard(|| {
        check_out!(out_json);
        let (a, b) = (try_ffi!(matrix_ref(a)), try_ffi!(matrix_ref(b)));
        if b.cols() != 1 {
            return fail(
                TsStatus::DimensionMismatch,
                "right-hand side must be a single column",
            );
        }
        let outcome = match solve(a, &b.column(0)) {
            Ok(o) => o,
            Err(e) => return from_engine(e),
        };
        let feasible = outcome.is_feasible();
        let doc = ReportDocument::new(&[a, b], ReportBody::Solve(SolveResult { outcome }));
        let status = put_string(out_json, doc.to_json());
        if status == TsStatus::Ok && !feasible {
            return fail(TsStatus::Singular, "system is infeasible");
        }
        status
    })
}

/// Evaluates the invertible matrix theorem statements. Writes the JSON
/// report (same schema as the CLI's `imt --json`) when `out_json` is
/// non-NULL, and whether the matrix is invertible when `out_invertible` is
/// non-NULL. Returns [`TsStatus::Disagreement`] if the statements disagree.
///
/// # Safety
/// `a` must be a live handle; non-NULL outputs must be writable.
#[no_mangle]
pub unsafe extern "C" fn ts_imt_report_json(
    a: *const TsMatrix,
    probes: usize,
    seed: u64,
    out_invertible: *mut bool,
    out_json: *mut *mut c_char,
) -> TsStatus {
    guard(|| {
        let a = try_ffi!(matrix_ref(a));
        let opts = ImtOptions {
            probes,
            seed,
            parallel: false,
        };
        let report = match imt_report_with(a, &opts) {
            Ok(r) => r,
            Err(e) => return from_engine(e),
        };
        let consistent = report.consistent();
        if !out_invertible.is_null() {
            *out_invertible = report.invertible;
        }
        if !out_json.is_null() {
            let doc = ReportDocument::new(&[a], ReportBody::Imt(Box::new(report)));
            let status = put_string(out_json, doc.to_json());
            if status != TsStatus::Ok {
                return status;
            }
        }
        if consistent {
            TsStatus::Ok
        } else {
            fail(
                TsStatus::Disagreement,
                "invertible matrix theorem statements disagree",
            )
        }
    })
}

/// Seeded random invertible `n x n` matrix with default generator settings.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ts_generate_invertible(
    seed: u64,
    n: usize,
    out: *mut *mut TsMatrix,
) -> TsStatus {
    guard(|| {
        check_out!(out);
        put_matrix(out, twosided::random_invertible(&GenConfig::new(seed, n)))
    })
}

/// Seeded random `n x n` matrix of rank exactly `rank`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ts_generate_with_rank(
    seed: u64,
    n: usize,
    rank: usize,
    out: *mut *mut TsMatrix,
) -> TsStatus {
    guard(|| {
        check_out!(out);
        match twosided::random_with_rank(&GenConfig::new(seed, n), rank) {
            Ok(m) => put_matrix(out, m),
            Err(e) => from_engine(e),
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn engine_errors_map_to_codes() {
        let cases = [
            (Error::ZeroDenominator, TsStatus::ZeroDenominator),
            (
                Error::NotSquare {
                    op: "x",
                    rows: 1,
                    cols: 2,
                },
                TsStatus::NotSquare,
            ),
            (Error::InvalidRational("q".into()), TsStatus::ParseError),
            (
                Error::RankTooLarge { rank: 3, n: 2 },
                TsStatus::InvalidArgument,
            ),
        ];
        for (err, code) in cases {
            let message = err.to_string();
            assert_eq!(from_engine(err), code);
            let last = unsafe { CStr::from_ptr(ts_last_error_message()) };
            assert_eq!(last.to_str().unwrap(), message);
        }
    }

    #[test]
    fn panics_become_status() {
        assert_eq!(guard(|| panic!("boom")), TsStatus::Panic);
    }

    #[test]
    fn interior_nul_is_stripped_from_messages() {
        set_error("a\0b");
        let last = unsafe { CStr::from_ptr(ts_last_error_message()) };
        assert_eq!(last.to_str().unwrap(), "a b");
    }
}
