//! C ABI over the analysis pipelines: opaque handles, status codes, and
//! JSON passthrough so any language with a C FFI can drive the toolkit.
//!
//! Ownership rules: every `*_parse`/`*_analyze` output is owned by the
//! caller and must be released with the matching `*_free`; strings returned
//! through `enc_report_to_json` are released with `enc_string_free`. The
//! pointer from `enc_last_error_message` stays valid until the next failing
//! call on the same thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};

use encuniv::error::Error;
use encuniv::group::{group_algebra_analyze, group_closure};
use encuniv::problem::ProblemFile;
use encuniv::report::{to_json, ReportDoc};
use encuniv::universality::{analyze, UniversalityReport};
use encuniv::Tolerances;

/// Status code returned by every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EncStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullArgument = 1,
    /// An input string was not valid UTF-8.
    InvalidUtf8 = 2,
    /// Malformed input: JSON, schema, shapes, or non-Hermitian matrices.
    Schema = 3,
    /// The numerical pipeline failed (genericity, convergence, invariance).
    Numerical = 4,
    /// A closure budget was exhausted.
    Budget = 5,
    /// Index out of range.
    OutOfRange = 6,
}

/// Parsed problem file (opaque).
pub struct EncProblem {
    inner: ProblemFile,
}

/// Analysis outcome (opaque).
pub struct EncReport {
    inner: UniversalityReport,
}

/// Per-component verdict, plain-old-data for direct C consumption.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct EncComponent {
    pub label: u64,
    pub d: u64,
    pub n: u64,
    pub restricted_dim: u64,
    pub deficiency: u64,
    pub universal: bool,
    pub trivial_code: bool,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(e: &Error) -> EncStatus {
    let text = CString::new(e.to_string()).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = text);
    match e.exit_code() {
        2 => EncStatus::Schema,
        4 => EncStatus::Budget,
        _ => EncStatus::Numerical,
    }
}

/// Returns the message of the last error raised on this thread, or an empty
/// string when no error has occurred.
#[no_mangle]
pub extern "C" fn enc_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn enc_version() -> *const c_char {
    static VERSION: &str = concat!(env!("CARGO_PKG_VERSION"), "\0");
    VERSION.as_ptr() as *const c_char
}

/// Parses and validates a problem-file JSON document.
///
/// # Safety
/// `json` must be a valid NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn enc_problem_parse_json(
    json: *const c_char,
    out: *mut *mut EncProblem,
) -> EncStatus {
    if json.is_null() || out.is_null() {
        return EncStatus::NullArgument;
    }
    let text = match CStr::from_ptr(json).to_str() {
        Ok(t) => t,
        Err(_) => return EncStatus::InvalidUtf8,
    };
    match ProblemFile::from_json(text) {
        Ok(inner) => {
            *out = Box::into_raw(Box::new(EncProblem { inner }));
            EncStatus::Ok
        }
        Err(e) => set_error(&e),
    }
}

/// Releases a problem handle. A null pointer is a no-op.
///
/// # Safety
/// `p` must come from `enc_problem_parse_json` and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn enc_problem_free(p: *mut EncProblem) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Runs the Hamiltonian analysis pipeline with default tolerances.
///
/// # Safety
/// `problem` and `out` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn enc_analyze(
    problem: *const EncProblem,
    seed: u64,
    out: *mut *mut EncReport,
) -> EncStatus {
    if problem.is_null() || out.is_null() {
        return EncStatus::NullArgument;
    }
    let file = &(*problem).inner;
    let result = file.hamiltonian_matrices().and_then(|gens| {
        if gens.is_empty() {
            Err(Error::Schema("hamiltonians: must not be empty".into()))
        } else {
            analyze(&gens, seed, &Tolerances::default())
        }
    });
    match result {
        Ok(inner) => {
            *out = Box::into_raw(Box::new(EncReport { inner }));
            EncStatus::Ok
        }
        Err(e) => set_error(&e),
    }
}

/// Closes the finite group from the problem's `group_generators` and runs
/// the generic group-algebra pipeline.
///
/// # Safety
/// `problem` and `out` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn enc_group_analyze(
    problem: *const EncProblem,
    seed: u64,
    samples: u32,
    max_order: u64,
    out: *mut *mut EncReport,
) -> EncStatus {
    if problem.is_null() || out.is_null() {
        return EncStatus::NullArgument;
    }
    let file = &(*problem).inner;
    let result = file.group_matrices().and_then(|gens| {
        let rep = group_closure(&gens, None, max_order as usize)?;
        group_algebra_analyze(&rep, seed, samples, &Tolerances::default())
    });
    match result {
        Ok(inner) => {
            *out = Box::into_raw(Box::new(EncReport { inner }));
            EncStatus::Ok
        }
        Err(e) => set_error(&e),
    }
}

/// Releases a report handle. A null pointer is a no-op.
///
/// # Safety
/// `r` must come from an analyze call and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn enc_report_free(r: *mut EncReport) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}

/// Dimension of the generated dynamical Lie algebra.
///
/// # Safety
/// `r` must be a valid report handle.
#[no_mangle]
pub unsafe extern "C" fn enc_report_closure_dim(r: *const EncReport) -> u64 {
    if r.is_null() {
        return 0;
    }
    (*r).inner.closure_dim as u64
}

/// Number of isotypic components in the decomposition.
///
/// # Safety
/// `r` must be a valid report handle.
#[no_mangle]
pub unsafe extern "C" fn enc_report_component_count(r: *const EncReport) -> u64 {
    if r.is_null() {
        return 0;
    }
    (*r).inner.verdicts.len() as u64
}

/// Copies the verdict for component `index` into `out`.
///
/// # Safety
/// `r` and `out` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn enc_report_component(
    r: *const EncReport,
    index: u64,
    out: *mut EncComponent,
) -> EncStatus {
    if r.is_null() || out.is_null() {
        return EncStatus::NullArgument;
    }
    let verdicts = &(*r).inner.verdicts;
    match verdicts.get(index as usize) {
        Some(v) => {
            *out = EncComponent {
                label: v.label as u64,
                d: v.dim as u64,
                n: v.multiplicity as u64,
                restricted_dim: v.restricted_dim as u64,
                deficiency: v.deficiency as u64,
                universal: v.universal,
                trivial_code: v.trivial_code,
            };
            EncStatus::Ok
        }
        None => EncStatus::OutOfRange,
    }
}

/// Whether the closure is dense in the full (special) unitary group.
///
/// # Safety
/// `r` must be a valid report handle.
#[no_mangle]
pub unsafe extern "C" fn enc_report_globally_universal(r: *const EncReport) -> bool {
    !r.is_null() && (*r).inner.globally_universal
}

/// Group order recorded by the group pipeline, or 0 for plain analysis.
///
/// # Safety
/// `r` must be a valid report handle.
#[no_mangle]
pub unsafe extern "C" fn enc_report_group_order(r: *const EncReport) -> u64 {
    if r.is_null() {
        return 0;
    }
    (*r).inner.group_order.unwrap_or(0) as u64
}

/// Serializes the report document; the returned string is owned by the
/// caller and released with `enc_string_free`.
///
/// # Safety
/// `r` and `out` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn enc_report_to_json(
    r: *const EncReport,
    out: *mut *mut c_char,
) -> EncStatus {
    if r.is_null() || out.is_null() {
        return EncStatus::NullArgument;
    }
    let json = to_json(&ReportDoc::from(&(*r).inner));
    match CString::new(json) {
        Ok(s) => {
            *out = s.into_raw();
            EncStatus::Ok
        }
        Err(_) => EncStatus::InvalidUtf8,
    }
}

/// Releases a string returned by this library. A null pointer is a no-op.
///
/// # Safety
/// `s` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn enc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
