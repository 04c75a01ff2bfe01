//! C ABI over `k0cert`.
//!
//! Documents live behind an opaque `K0Document` handle. Every entry point
//! returns a `K0Status`; on failure the message is available from
//! `k0c_last_error` on the same thread. Strings handed out by the library
//! are owned by the caller and must be released with `k0c_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use k0cert::bratteli::{self, SystemDocument};
use k0cert::certify::{SearchParams, VerdictKind};
use k0cert::cli;

/// Parsed, validated document.
pub struct K0Document {
    inner: SystemDocument,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum K0Status {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InvalidDocument = 3,
    InvalidArgument = 4,
    Internal = 5,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum K0Verdict {
    Violation = 0,
    Consistent = 1,
    Unknown = 2,
}

impl From<VerdictKind> for K0Verdict {
    fn from(k: VerdictKind) -> Self {
        match k {
            VerdictKind::Violation => K0Verdict::Violation,
            VerdictKind::Consistent => K0Verdict::Consistent,
            VerdictKind::Unknown => K0Verdict::Unknown,
        }
    }
}

/// Search box for `k0c_check_mf` and `k0c_chain_recurrence`.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct K0Params {
    pub max_stage: usize,
    pub word_length: usize,
    pub height_bound: u64,
}

impl From<K0Params> for SearchParams {
    fn from(p: K0Params) -> Self {
        SearchParams {
            max_stage: p.max_stage,
            word_length: p.word_length,
            height_bound: p.height_bound,
        }
    }
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure(K0Status, String);

impl Failure {
    fn document(e: k0cert::Error) -> Self {
        Failure(K0Status::InvalidDocument, e.to_string())
    }
    fn argument(e: impl ToString) -> Self {
        Failure(K0Status::InvalidArgument, e.to_string())
    }
    fn null(what: &str) -> Self {
        Failure(K0Status::NullPointer, format!("{what} is null"))
    }
}

fn set_last_error(msg: Option<String>) {
    let c = msg.map(|m| CString::new(m.replace('\0', " ")).expect("interior nul removed"));
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

/// Runs `f`, recording its error and turning panics into `Internal`.
fn guard(f: impl FnOnce() -> Result<(), Failure>) -> K0Status {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_last_error(None);
            K0Status::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_last_error(Some(msg));
            status
        }
        Err(_) => {
            set_last_error(Some("internal error (panic)".into()));
            K0Status::Internal
        }
    }
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure::null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(K0Status::InvalidUtf8, format!("{what} is not valid UTF-8")))
}

unsafe fn doc_ref<'a>(doc: *const K0Document) -> Result<&'a SystemDocument, Failure> {
    doc.as_ref().map(|d| &d.inner).ok_or_else(|| Failure::null("document"))
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    if !out.is_null() {
        let c = CString::new(s).map_err(|_| Failure(K0Status::Internal, "output contains a nul byte".into()))?;
        *out = c.into_raw();
    }
    Ok(())
}

/// Default search box.
#[no_mangle]
pub extern "C" fn k0c_params_default() -> K0Params {
    let d = SearchParams::default();
    K0Params {
        max_stage: d.max_stage,
        word_length: d.word_length,
        height_bound: d.height_bound,
    }
}

/// Parses a NUL-terminated JSON document into `*out`.
///
/// # Safety
/// `json` must be a valid C string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn k0c_document_parse(json: *const c_char, out: *mut *mut K0Document) -> K0Status {
    guard(|| {
        if out.is_null() {
            return Err(Failure::null("out"));
        }
        *out = ptr::null_mut();
        let text = read_str(json, "json")?;
        let inner = bratteli::parse(text.as_bytes()).map_err(Failure::document)?;
        *out = Box::into_raw(Box::new(K0Document { inner }));
        Ok(())
    })
}

/// # Safety
/// `doc` must come from `k0c_document_parse` and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn k0c_document_free(doc: *mut K0Document) {
    if !doc.is_null() {
        drop(Box::from_raw(doc));
    }
}

/// Canonical JSON of the document.
///
/// # Safety
/// `doc` must be a live handle; `out_json` must be writable.
#[no_mangle]
pub unsafe extern "C" fn k0c_document_serialize(doc: *const K0Document, out_json: *mut *mut c_char) -> K0Status {
    guard(|| {
        if out_json.is_null() {
            return Err(Failure::null("out_json"));
        }
        write_string(out_json, bratteli::serialize(doc_ref(doc)?))
    })
}

/// Number of action generators.
///
/// # Safety
/// `doc` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn k0c_document_generators(doc: *const K0Document, out: *mut usize) -> K0Status {
    guard(|| {
        let d = doc_ref(doc)?;
        if out.is_null() {
            return Err(Failure::null("out"));
        }
        *out = d.action().generators();
        Ok(())
    })
}

/// Checks the action up to `horizon`. `*out_valid` receives the outcome;
/// `out_report` (nullable) receives one line per check.
///
/// # Safety
/// `doc` must be a live handle; output pointers must be writable or null
/// where allowed.
#[no_mangle]
pub unsafe extern "C" fn k0c_validate(
    doc: *const K0Document,
    horizon: usize,
    out_valid: *mut bool,
    out_report: *mut *mut c_char,
) -> K0Status {
    guard(|| {
        let d = doc_ref(doc)?;
        if out_valid.is_null() {
            return Err(Failure::null("out_valid"));
        }
        let report = d.action().verify(d.system(), horizon);
        *out_valid = report.all_passed();
        let lines: String = report.items.iter().map(|i| format!("{i}\n")).collect();
        write_string(out_report, lines)
    })
}

/// Runs the full check. `sets_json` (nullable) holds state requests;
/// `out_json` (nullable) receives the canonical verdict.
///
/// # Safety
/// Pointers must be valid as described; `params` must not be null.
#[no_mangle]
pub unsafe extern "C" fn k0c_check_mf(
    doc: *const K0Document,
    params: *const K0Params,
    sets_json: *const c_char,
    out_verdict: *mut K0Verdict,
    out_json: *mut *mut c_char,
) -> K0Status {
    guard(|| {
        let d = doc_ref(doc)?;
        let params = *params.as_ref().ok_or_else(|| Failure::null("params"))?;
        if out_verdict.is_null() {
            return Err(Failure::null("out_verdict"));
        }
        let sets = if sets_json.is_null() {
            None
        } else {
            Some(read_str(sets_json, "sets_json")?)
        };
        let (verdict, text) =
            cli::check_mf_document(d, sets.map(str::as_bytes), params.into()).map_err(Failure::document)?;
        *out_verdict = verdict.kind.into();
        write_string(out_json, text)
    })
}

/// Compression search for one-generator actions. `*out_found` is true when
/// a proved witness exists.
///
/// # Safety
/// Pointers must be valid as described; `params` must not be null.
#[no_mangle]
pub unsafe extern "C" fn k0c_chain_recurrence(
    doc: *const K0Document,
    params: *const K0Params,
    out_found: *mut bool,
    out_json: *mut *mut c_char,
) -> K0Status {
    guard(|| {
        let d = doc_ref(doc)?;
        let params = *params.as_ref().ok_or_else(|| Failure::null("params"))?;
        if out_found.is_null() {
            return Err(Failure::null("out_found"));
        }
        let (report, text) = cli::chain_recurrence_document(d, params.into()).map_err(Failure::argument)?;
        *out_found = report.is_violation();
        write_string(out_json, text)
    })
}

/// Builds a document from whitespace-separated `points=N perms=...` arguments.
///
/// # Safety
/// `args` must be a valid C string; `out_json` must be writable.
#[no_mangle]
pub unsafe extern "C" fn k0c_convert_finite(args: *const c_char, out_json: *mut *mut c_char) -> K0Status {
    guard(|| {
        if out_json.is_null() {
            return Err(Failure::null("out_json"));
        }
        let specs: Vec<String> = read_str(args, "args")?.split_whitespace().map(String::from).collect();
        let text = cli::convert_finite(&specs).map_err(Failure::argument)?;
        write_string(out_json, text)
    })
}

/// # Safety
/// `s` must come from this library, or be null.
#[no_mangle]
pub unsafe extern "C" fn k0c_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message of the last failed call on this thread, or null. Valid until the
/// next call into the library from the same thread.
#[no_mangle]
pub extern "C" fn k0c_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Static description of a status code.
#[no_mangle]
pub extern "C" fn k0c_status_message(status: K0Status) -> *const c_char {
    let s: &'static CStr = match status {
        K0Status::Ok => c"ok",
        K0Status::NullPointer => c"null pointer argument",
        K0Status::InvalidUtf8 => c"string is not valid UTF-8",
        K0Status::InvalidDocument => c"invalid document",
        K0Status::InvalidArgument => c"invalid argument",
        K0Status::Internal => c"internal error",
    };
    s.as_ptr()
}

/// Library version as a static C string.
#[no_mangle]
pub extern "C" fn k0c_version() -> *const c_char {
    const V: &str = concat!(env!("CARGO_PKG_VERSION"), "\0");
    V.as_ptr().cast()
}
