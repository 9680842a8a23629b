//! C ABI for the degenexp library.
//!
//! Conventions:
//! - Every fallible call returns a [`DgxStatus`]; outputs go through
//!   out-pointers that are written only on `DGX_STATUS_OK`.
//! - Exact rationals cross the boundary as NUL-terminated `"p/q"`
//!   strings (integers bare), the same canonical form the CLI uses.
//! - Strings returned through `char**` outputs are owned by the library
//!   and must be released with [`dgx_string_free`].
//! - [`DgxStirlingTable`] is an opaque handle; release it with
//!   [`dgx_stirling_table_free`].

use degenexp::exact::{
    bell_degenerate, degen_exp_exact, format_rat, gen_falling_factorial, parse_rat,
    stirling2_degenerate_explicit, StirlingTable,
};
use degenexp::identities::{self, CaseConfig, SuiteSummary};
use degenexp::numeric::{self, NumericError, SumResult};
use std::ffi::{c_char, CStr, CString};

/// Status codes for every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DgxStatus {
    Ok = 0,
    /// A required pointer argument was NULL.
    NullPointer = 1,
    /// A string argument was not valid UTF-8.
    Utf8Error = 2,
    /// A rational literal or JSON document failed to parse.
    ParseError = 3,
    /// The input lies outside the function's mathematical domain.
    DomainError = 4,
    /// The series does not converge for this input.
    NonConvergence = 5,
    /// The term budget ran out before the remainder bound was met.
    BudgetExceeded = 6,
    /// The requested quantity has no exact rational value.
    NoExactValue = 7,
    /// Arguments are structurally invalid (missing parameter, bad mode).
    InvalidArgument = 8,
}

/// Result of an adaptively truncated summation.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct DgxSumResult {
    pub value: f64,
    /// Bound on the magnitude of the discarded remainder.
    pub tail_bound: f64,
    pub terms_used: u32,
    /// 1 when the stopping rule certified the tail bound, else 0.
    pub converged: u8,
}

/// Opaque triangle of degenerate Stirling numbers of the second kind.
pub struct DgxStirlingTable {
    inner: StirlingTable,
}

fn numeric_status(err: &NumericError) -> DgxStatus {
    match err {
        NumericError::Domain(_) => DgxStatus::DomainError,
        NumericError::NonConvergence(_) => DgxStatus::NonConvergence,
        NumericError::Budget { .. } => DgxStatus::BudgetExceeded,
    }
}

fn identity_status(err: &identities::IdentityError) -> DgxStatus {
    match err {
        identities::IdentityError::Numeric(e) => numeric_status(e),
        identities::IdentityError::Series(_) => DgxStatus::InvalidArgument,
        identities::IdentityError::InvalidCase(_) => DgxStatus::InvalidArgument,
    }
}

/// # Safety
/// `p` must be NULL or a valid NUL-terminated string.
unsafe fn str_arg<'a>(p: *const c_char) -> Result<&'a str, DgxStatus> {
    if p.is_null() {
        return Err(DgxStatus::NullPointer);
    }
    unsafe { CStr::from_ptr(p) }
        .to_str()
        .map_err(|_| DgxStatus::Utf8Error)
}

unsafe fn rat_arg(p: *const c_char) -> Result<degenexp::Rat, DgxStatus> {
    let s = unsafe { str_arg(p) }?;
    parse_rat(s).map_err(|_| DgxStatus::ParseError)
}

/// # Safety
/// `out` must be a valid pointer.
unsafe fn write_out<T>(out: *mut T, value: T) -> DgxStatus {
    if out.is_null() {
        return DgxStatus::NullPointer;
    }
    unsafe { *out = value };
    DgxStatus::Ok
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> DgxStatus {
    match CString::new(s) {
        Ok(c) => unsafe { write_out(out, c.into_raw()) },
        Err(_) => DgxStatus::InvalidArgument,
    }
}

fn to_c_sum(sum: SumResult) -> DgxSumResult {
    DgxSumResult {
        value: sum.value,
        tail_bound: sum.tail_bound,
        terms_used: sum.terms_used as u32,
        converged: u8::from(sum.converged),
    }
}

/// Library version as a static string; do not free.
#[no_mangle]
pub extern "C" fn dgx_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Release a string returned by this library.
///
/// # Safety
/// `s` must be NULL or a pointer previously returned through a `char**`
/// output of this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn dgx_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(unsafe { CString::from_raw(s) });
    }
}

/// Degenerate exponential `e_lambda^x(t)` as a double.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dgx_exp(x: f64, lambda: f64, t: f64, out: *mut f64) -> DgxStatus {
    match numeric::degen_exp(x, lambda, t) {
        Ok(v) => unsafe { write_out(out, v) },
        Err(e) => numeric_status(&e),
    }
}

/// Partial sum of the degenerate exponential series up to degree `n`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dgx_exp_partial(
    x: f64,
    lambda: f64,
    t: f64,
    n: u32,
    out: *mut f64,
) -> DgxStatus {
    unsafe { write_out(out, numeric::degen_exp_partial(x, lambda, t, n as usize)) }
}

/// Degenerate hyperbolic cosine `(e_lambda(-x) + e_lambda(x))/2`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dgx_cosh(lambda: f64, x: f64, out: *mut f64) -> DgxStatus {
    match numeric::cosh_deg(lambda, x) {
        Ok(v) => unsafe { write_out(out, v) },
        Err(e) => numeric_status(&e),
    }
}

/// Tail `T_n(y)` of the degenerate exponential series, summed forward
/// with a ratio-test remainder bound.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dgx_tail(
    lambda: f64,
    y: f64,
    n: u32,
    tol: f64,
    max_terms: u32,
    out: *mut DgxSumResult,
) -> DgxStatus {
    match numeric::tail(lambda, y, n as usize, tol, max_terms as usize) {
        Ok(sum) => unsafe { write_out(out, to_c_sum(sum)) },
        Err(e) => numeric_status(&e),
    }
}

/// Degenerate Bell polynomial value via its Dobinski-style series.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dgx_bell_dobinski(
    n: u32,
    lambda: f64,
    x: f64,
    tol: f64,
    max_terms: u32,
    out: *mut DgxSumResult,
) -> DgxStatus {
    match numeric::bell_degenerate_dobinski(n as usize, lambda, x, tol, max_terms as usize) {
        Ok(sum) => unsafe { write_out(out, to_c_sum(sum)) },
        Err(e) => numeric_status(&e),
    }
}

/// Exact rational value of `e_lambda^x(y)`, when one exists
/// (`DGX_STATUS_NO_EXACT_VALUE` otherwise). All rationals are "p/q"
/// strings.
///
/// # Safety
/// String arguments must be NUL-terminated; `out` must be valid. The
/// result string must be freed with `dgx_string_free`.
#[no_mangle]
pub unsafe extern "C" fn dgx_exp_exact(
    x: *const c_char,
    lambda: *const c_char,
    y: *const c_char,
    out: *mut *mut c_char,
) -> DgxStatus {
    let (x, lambda, y) = unsafe {
        match (rat_arg(x), rat_arg(lambda), rat_arg(y)) {
            (Ok(a), Ok(b), Ok(c)) => (a, b, c),
            (Err(e), _, _) | (_, Err(e), _) | (_, _, Err(e)) => return e,
        }
    };
    match degen_exp_exact(&x, &lambda, &y) {
        Ok(Some(v)) => unsafe { write_string(out, format_rat(&v)) },
        Ok(None) => DgxStatus::NoExactValue,
        Err(_) => DgxStatus::DomainError,
    }
}

/// Generalized falling factorial `(x)_{n,lambda}` as an exact rational.
///
/// # Safety
/// As for `dgx_exp_exact`.
#[no_mangle]
pub unsafe extern "C" fn dgx_falling_factorial(
    x: *const c_char,
    n: u32,
    lambda: *const c_char,
    out: *mut *mut c_char,
) -> DgxStatus {
    let (x, lambda) = unsafe {
        match (rat_arg(x), rat_arg(lambda)) {
            (Ok(a), Ok(b)) => (a, b),
            (Err(e), _) | (_, Err(e)) => return e,
        }
    };
    let v = gen_falling_factorial(&x, n as usize, &lambda);
    unsafe { write_string(out, format_rat(&v)) }
}

/// Degenerate Bell polynomial `phi_{n,lambda}(x)` as an exact rational.
///
/// # Safety
/// As for `dgx_exp_exact`.
#[no_mangle]
pub unsafe extern "C" fn dgx_bell(
    n: u32,
    lambda: *const c_char,
    x: *const c_char,
    out: *mut *mut c_char,
) -> DgxStatus {
    let (lambda, x) = unsafe {
        match (rat_arg(lambda), rat_arg(x)) {
            (Ok(a), Ok(b)) => (a, b),
            (Err(e), _) | (_, Err(e)) => return e,
        }
    };
    let v = bell_degenerate(n as usize, &lambda, &x);
    unsafe { write_string(out, format_rat(&v)) }
}

/// Single degenerate Stirling number `S_{2,lambda}(n, k)` by the
/// explicit alternating sum.
///
/// # Safety
/// As for `dgx_exp_exact`.
#[no_mangle]
pub unsafe extern "C" fn dgx_stirling2(
    n: u32,
    k: u32,
    lambda: *const c_char,
    out: *mut *mut c_char,
) -> DgxStatus {
    let lambda = match unsafe { rat_arg(lambda) } {
        Ok(v) => v,
        Err(e) => return e,
    };
    let v = stirling2_degenerate_explicit(n as usize, k as usize, &lambda);
    unsafe { write_string(out, format_rat(&v)) }
}

/// Build the triangle of `S_{2,lambda}(n, k)` for n ≤ n_max by the
/// recurrence. Free the handle with `dgx_stirling_table_free`.
///
/// # Safety
/// `lambda` must be NUL-terminated; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn dgx_stirling_table_new(
    lambda: *const c_char,
    n_max: u32,
    out: *mut *mut DgxStirlingTable,
) -> DgxStatus {
    let lambda = match unsafe { rat_arg(lambda) } {
        Ok(v) => v,
        Err(e) => return e,
    };
    let table = Box::new(DgxStirlingTable {
        inner: StirlingTable::new(lambda, n_max as usize),
    });
    unsafe { write_out(out, Box::into_raw(table)) }
}

/// Entry `S_{2,lambda}(n, k)` of a table as an exact rational string;
/// entries with k > n are "0". Fails with `DGX_STATUS_INVALID_ARGUMENT`
/// when n exceeds the table size.
///
/// # Safety
/// `table` must be a live handle from `dgx_stirling_table_new`.
#[no_mangle]
pub unsafe extern "C" fn dgx_stirling_table_entry(
    table: *const DgxStirlingTable,
    n: u32,
    k: u32,
    out: *mut *mut c_char,
) -> DgxStatus {
    if table.is_null() {
        return DgxStatus::NullPointer;
    }
    let table = unsafe { &*table };
    if n as usize > table.inner.n_max() {
        return DgxStatus::InvalidArgument;
    }
    let v = table.inner.entry(n as usize, k as usize);
    unsafe { write_string(out, format_rat(&v)) }
}

/// Number of rows in the table minus one.
///
/// # Safety
/// `table` must be a live handle; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn dgx_stirling_table_n_max(
    table: *const DgxStirlingTable,
    out: *mut u32,
) -> DgxStatus {
    if table.is_null() {
        return DgxStatus::NullPointer;
    }
    let n_max = unsafe { &*table }.inner.n_max() as u32;
    unsafe { write_out(out, n_max) }
}

/// Release a table handle.
///
/// # Safety
/// `table` must be NULL or a live handle from `dgx_stirling_table_new`,
/// not yet freed.
#[no_mangle]
pub unsafe extern "C" fn dgx_stirling_table_free(table: *mut DgxStirlingTable) {
    if !table.is_null() {
        drop(unsafe { Box::from_raw(table) });
    }
}

/// Verify one identity case described as a JSON object with the same
/// keys as the CLI flags, e.g.
/// `{"identity":"thm2.1b","lambda":"1/2","y":"1","mode":"both"}`.
/// Writes the full report JSON and the pass flag.
///
/// # Safety
/// `case_json` must be NUL-terminated; `out_report` and `out_passed`
/// must be valid. The report string must be freed with
/// `dgx_string_free`.
#[no_mangle]
pub unsafe extern "C" fn dgx_verify_json(
    case_json: *const c_char,
    out_report: *mut *mut c_char,
    out_passed: *mut u8,
) -> DgxStatus {
    let text = match unsafe { str_arg(case_json) } {
        Ok(s) => s,
        Err(e) => return e,
    };
    let config: CaseConfig = match serde_json::from_str(text) {
        Ok(c) => c,
        Err(_) => return DgxStatus::ParseError,
    };
    let case = match config.into_case() {
        Ok(c) => c,
        Err(_) => return DgxStatus::ParseError,
    };
    let report = match identities::verify(&case) {
        Ok(r) => r,
        Err(e) => return identity_status(&e),
    };
    if out_passed.is_null() {
        return DgxStatus::NullPointer;
    }
    unsafe { *out_passed = u8::from(report.passed) };
    let json = serde_json::to_string(&report).expect("report serializes");
    unsafe { write_string(out_report, json) }
}

/// Run a suite: `config_json` is either NULL (default verification grid)
/// or `{"cases":[...]}`. Writes the aggregated summary JSON and whether
/// every case passed.
///
/// # Safety
/// As for `dgx_verify_json`.
#[no_mangle]
pub unsafe extern "C" fn dgx_suite_json(
    config_json: *const c_char,
    out_report: *mut *mut c_char,
    out_all_passed: *mut u8,
) -> DgxStatus {
    let cases = if config_json.is_null() {
        identities::default_grid()
    } else {
        let text = match unsafe { str_arg(config_json) } {
            Ok(s) => s,
            Err(e) => return e,
        };
        match identities::parse_suite_config(text) {
            Ok(c) => c,
            Err(_) => return DgxStatus::ParseError,
        }
    };
    let summary = SuiteSummary::from_reports(identities::run_suite(&cases));
    if out_all_passed.is_null() {
        return DgxStatus::NullPointer;
    }
    unsafe { *out_all_passed = u8::from(summary.all_passed) };
    let json = serde_json::to_string(&summary).expect("summary serializes");
    unsafe { write_string(out_report, json) }
}
