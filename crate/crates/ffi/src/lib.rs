//! C ABI over `muclab`.
//!
//! Formulas cross the boundary as opaque `MuclabCnf` handles. Every fallible
//! call returns a `MuclabStatus`; on failure the message is available from
//! `muclab_last_error` until the next call on the same thread.
//!
//! Strings returned to the caller are owned by the library and must be
//! released with `muclab_string_free`.

use std::cell::RefCell;
use std::ffi::{CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use libc::{c_char, c_int, size_t};
use muclab::constructions;
use muclab::dimacs;
use muclab::geometry;
use muclab::orthogonalize;
use muclab::sat::{self, SolverChoice};
use muclab::semantics;
use muclab::{Budget, Cnf, Error};

/// Opaque formula handle.
pub struct MuclabCnf {
    inner: Cnf,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MuclabStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    VariableOutOfRange = 4,
    BudgetExceeded = 5,
    ClauseCapExceeded = 6,
    NotHorn = 7,
    NotMuc = 8,
    InputSatisfiable = 9,
    IndexOutOfRange = 10,
    InvalidArgument = 11,
    Internal = 12,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MuclabMucMethod {
    Deletion = 0,
    Classification = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MuclabOrthoMode {
    Horn = 0,
    Generic = 1,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn status_of(err: &Error) -> MuclabStatus {
    match err {
        Error::Parse { .. } | Error::Json(_) | Error::Csv(_) | Error::Replay { .. } => {
            MuclabStatus::Parse
        }
        Error::VariableOutOfRange { .. } => MuclabStatus::VariableOutOfRange,
        Error::BudgetExceeded { .. } => MuclabStatus::BudgetExceeded,
        Error::ClauseCapExceeded { .. } => MuclabStatus::ClauseCapExceeded,
        Error::NotHorn { .. } => MuclabStatus::NotHorn,
        Error::NotMuc { .. } | Error::DuplicateClause { .. } | Error::CyclicOrder { .. } => {
            MuclabStatus::NotMuc
        }
        Error::InputSatisfiable => MuclabStatus::InputSatisfiable,
        Error::ClauseIndexOutOfRange { .. } => MuclabStatus::IndexOutOfRange,
        _ => MuclabStatus::InvalidArgument,
    }
}

/// Runs `body`, translating errors and panics into a status code.
fn guard(body: impl FnOnce() -> Result<(), (MuclabStatus, String)>) -> MuclabStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => MuclabStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            MuclabStatus::Internal
        }
    }
}

trait IntoFfi<T> {
    fn ffi(self) -> Result<T, (MuclabStatus, String)>;
}

impl<T> IntoFfi<T> for muclab::Result<T> {
    fn ffi(self) -> Result<T, (MuclabStatus, String)> {
        self.map_err(|e| (status_of(&e), e.to_string()))
    }
}

fn null(what: &str) -> (MuclabStatus, String) {
    (MuclabStatus::NullPointer, format!("{what} is null"))
}

unsafe fn cnf_ref<'a>(p: *const MuclabCnf) -> Result<&'a Cnf, (MuclabStatus, String)> {
    p.as_ref()
        .map(|h| &h.inner)
        .ok_or_else(|| null("formula handle"))
}

unsafe fn out_ref<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, (MuclabStatus, String)> {
    p.as_mut().ok_or_else(|| null(what))
}

fn budget_or_default(budget: u64) -> Budget {
    if budget == 0 {
        Budget::from_env()
    } else {
        Budget(budget)
    }
}

fn into_handle(cnf: Cnf) -> *mut MuclabCnf {
    Box::into_raw(Box::new(MuclabCnf { inner: cnf }))
}

fn into_c_string(s: String) -> Result<*mut c_char, (MuclabStatus, String)> {
    CString::new(s)
        .map(CString::into_raw)
        .map_err(|_| (MuclabStatus::Internal, "interior nul in output".into()))
}

fn as_flag(b: bool) -> c_int {
    b as c_int
}

/// Message for the most recent failure on this thread, or null.
///
/// The pointer stays valid until the next library call on this thread.
#[no_mangle]
pub extern "C" fn muclab_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Parses DIMACS text (nul-terminated) into a new handle.
///
/// # Safety
/// `text` must be a valid nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn muclab_cnf_parse_dimacs(
    text: *const c_char,
    out: *mut *mut MuclabCnf,
) -> MuclabStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        *out = ptr::null_mut();
        if text.is_null() {
            return Err(null("text"));
        }
        let text = CStr::from_ptr(text)
            .to_str()
            .map_err(|e| (MuclabStatus::InvalidUtf8, e.to_string()))?;
        *out = into_handle(dimacs::parse_dimacs_str(text).ffi()?);
        Ok(())
    })
}

/// Releases a handle. Null is ignored.
///
/// # Safety
/// `cnf` must be null or a handle returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn muclab_cnf_free(cnf: *mut MuclabCnf) {
    if !cnf.is_null() {
        drop(Box::from_raw(cnf));
    }
}

/// Number of declared variables, or 0 for a null handle.
///
/// # Safety
/// `cnf` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn muclab_cnf_num_vars(cnf: *const MuclabCnf) -> u32 {
    cnf.as_ref().map_or(0, |h| h.inner.num_vars())
}

/// Number of clauses, or 0 for a null handle.
///
/// # Safety
/// `cnf` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn muclab_cnf_num_clauses(cnf: *const MuclabCnf) -> size_t {
    cnf.as_ref().map_or(0, |h| h.inner.len())
}

/// Serializes to DIMACS. Free the result with `muclab_string_free`.
///
/// # Safety
/// `cnf` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn muclab_cnf_write_dimacs(
    cnf: *const MuclabCnf,
    out: *mut *mut c_char,
) -> MuclabStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        *out = ptr::null_mut();
        *out = into_c_string(dimacs::write_dimacs(cnf_ref(cnf)?))?;
        Ok(())
    })
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must be null or a string returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn muclab_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Writes 1 to `out` when every clause is Horn, else 0.
///
/// # Safety
/// `cnf` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn muclab_cnf_is_horn(
    cnf: *const MuclabCnf,
    out: *mut c_int,
) -> MuclabStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        *out = as_flag(cnf_ref(cnf)?.is_horn());
        Ok(())
    })
}

/// Minimal-unsatisfiability check. `budget` of 0 means the default.
///
/// On success `is_muc` receives 0 or 1. If `verdict_json` is non-null it
/// receives the full verdict as JSON, to be freed with `muclab_string_free`.
///
/// # Safety
/// `cnf` must be a live handle, `is_muc` valid, `verdict_json` null or valid.
#[no_mangle]
pub unsafe extern "C" fn muclab_is_muc(
    cnf: *const MuclabCnf,
    method: MuclabMucMethod,
    budget: u64,
    is_muc: *mut c_int,
    verdict_json: *mut *mut c_char,
) -> MuclabStatus {
    guard(|| {
        let flag = out_ref(is_muc, "is_muc")?;
        let f = cnf_ref(cnf)?;
        let verdict = match method {
            MuclabMucMethod::Deletion => sat::is_muc_deletion(f, SolverChoice::Dpll),
            MuclabMucMethod::Classification => {
                sat::is_muc_classification(f, budget_or_default(budget))
            }
        }
        .ffi()?;
        *flag = as_flag(verdict.is_muc);
        if let Some(json) = verdict_json.as_mut() {
            let text = serde_json::to_string(&verdict)
                .map_err(|e| (MuclabStatus::Internal, e.to_string()))?;
            *json = into_c_string(text)?;
        }
        Ok(())
    })
}

/// Classification report as JSON. `budget` of 0 means the default.
///
/// # Safety
/// `cnf` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn muclab_classify_json(
    cnf: *const MuclabCnf,
    budget: u64,
    out: *mut *mut c_char,
) -> MuclabStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        *out = ptr::null_mut();
        let report = semantics::classify(cnf_ref(cnf)?, budget_or_default(budget)).ffi()?;
        *out = into_c_string(report.to_json().to_string())?;
        Ok(())
    })
}

/// Phase difference between clauses `i` and `j` (0-based).
///
/// # Safety
/// `cnf` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn muclab_phase_difference(
    cnf: *const MuclabCnf,
    i: size_t,
    j: size_t,
    out: *mut size_t,
) -> MuclabStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        let f = cnf_ref(cnf)?;
        *out = geometry::phase_difference(f.clause(i).ffi()?, f.clause(j).ffi()?);
        Ok(())
    })
}

/// Orthogonalizes a formula into a new handle.
///
/// `clause_cap` bounds the working clause count in generic mode; 0 means
/// the default. It is ignored in Horn mode.
///
/// # Safety
/// `cnf` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn muclab_orthogonalize(
    cnf: *const MuclabCnf,
    mode: MuclabOrthoMode,
    clause_cap: size_t,
    out: *mut *mut MuclabCnf,
) -> MuclabStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        *out = ptr::null_mut();
        let f = cnf_ref(cnf)?;
        let (result, _) = match mode {
            MuclabOrthoMode::Horn => orthogonalize::orthogonalize_horn_muc(f),
            MuclabOrthoMode::Generic => {
                let cap = if clause_cap == 0 {
                    orthogonalize::DEFAULT_CLAUSE_CAP
                } else {
                    clause_cap
                };
                orthogonalize::orthogonalize_cnf(f, cap)
            }
        }
        .ffi()?;
        *out = into_handle(result);
        Ok(())
    })
}

/// Writes 1 when every assignment falsifies exactly one clause.
///
/// # Safety
/// `cnf` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn muclab_verify_orthogonal_muc(
    cnf: *const MuclabCnf,
    budget: u64,
    out: *mut c_int,
) -> MuclabStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        let ok =
            orthogonalize::verify_orthogonal_muc(cnf_ref(cnf)?, budget_or_default(budget)).ffi()?;
        *out = as_flag(ok);
        Ok(())
    })
}

/// Horn chain of length `k`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn muclab_gen_horn_chain(k: u32, out: *mut *mut MuclabCnf) -> MuclabStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        *out = into_handle(constructions::gen_horn_chain(k));
        Ok(())
    })
}

/// Odd and even parity of `n` variables conjoined. Nonzero `disjoint` puts
/// the two halves on separate variables.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn muclab_gen_parity_contradiction(
    n: u32,
    disjoint: c_int,
    out: *mut *mut MuclabCnf,
) -> MuclabStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        *out = ptr::null_mut();
        *out = into_handle(constructions::gen_parity_contradiction(n, disjoint != 0).ffi()?);
        Ok(())
    })
}
