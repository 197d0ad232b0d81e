//! C ABI over `hypermotive`.
//!
//! Every function returns an [`HmStatus`]. On failure the message is kept per
//! thread and can be read with [`hm_last_error_message`]. Strings handed out by
//! the library must be released with [`hm_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use hypermotive::cli::{execute, ArrangementDocument, Command, Options};
use hypermotive::motive::{module_basis, poincare_polynomial};
use hypermotive::{Arrangement, Error, Field};
use serde::Deserialize;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HmStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Precondition = 4,
    CrossCheck = 5,
    BufferTooSmall = 6,
    Panic = 7,
}

/// Opaque arrangement handle.
pub struct HmArrangement {
    doc: ArrangementDocument,
    arrangement: Arrangement,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: impl Into<String>) {
    let text = message.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(text).ok());
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn fail(status: HmStatus, message: impl Into<String>) -> HmStatus {
    set_error(message);
    status
}

fn from_error(e: &Error) -> HmStatus {
    let status = match e {
        Error::Parse { .. } | Error::InvalidField(_) => HmStatus::Parse,
        _ => HmStatus::Precondition,
    };
    fail(status, e.to_string())
}

fn guarded(body: impl FnOnce() -> HmStatus) -> HmStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(status) => status,
        Err(_) => fail(HmStatus::Panic, "internal panic"),
    }
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, HmStatus> {
    if p.is_null() {
        return Err(fail(HmStatus::NullPointer, "null string argument"));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| fail(HmStatus::InvalidUtf8, "argument is not valid UTF-8"))
}

/// Optional run settings, all keys optional.
#[derive(Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RunOptions {
    order: Option<Vec<usize>>,
    seed: Option<u64>,
    trials: Option<usize>,
    backend: Option<String>,
    word: Option<String>,
    right: Option<String>,
}

impl RunOptions {
    fn into_options(self) -> Result<Options, Error> {
        let backend = match self.backend {
            Some(b) => Some(b.parse::<Field>()?),
            None => None,
        };
        Ok(Options {
            order: self.order,
            seed: self.seed.unwrap_or(0),
            trials: self.trials.unwrap_or(100),
            backend,
            word: self.word,
            right: self.right,
        })
    }
}

/// Parses an arrangement document. On success `*out` owns a new handle.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hm_arrangement_from_json(json: *const c_char, out: *mut *mut HmArrangement) -> HmStatus {
    guarded(|| {
        if out.is_null() {
            return fail(HmStatus::NullPointer, "null output pointer");
        }
        *out = ptr::null_mut();
        let text = match read_str(json) {
            Ok(t) => t,
            Err(s) => return s,
        };
        let doc = match ArrangementDocument::from_json(text) {
            Ok(d) => d,
            Err(e) => return from_error(&e),
        };
        match doc.build(None, None) {
            Ok(arrangement) => {
                *out = Box::into_raw(Box::new(HmArrangement { doc, arrangement }));
                HmStatus::Ok
            }
            Err(e) => from_error(&e),
        }
    })
}

/// Releases a handle. Null is ignored.
///
/// # Safety
/// `arr` must come from [`hm_arrangement_from_json`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn hm_arrangement_free(arr: *mut HmArrangement) {
    if !arr.is_null() {
        drop(Box::from_raw(arr));
    }
}

/// Number of hyperplanes.
///
/// # Safety
/// `arr` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hm_arrangement_len(arr: *const HmArrangement, out: *mut usize) -> HmStatus {
    guarded(|| {
        if arr.is_null() || out.is_null() {
            return fail(HmStatus::NullPointer, "null argument");
        }
        *out = (*arr).arrangement.len();
        HmStatus::Ok
    })
}

/// Total rank of the cohomology module.
///
/// # Safety
/// `arr` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hm_rank(arr: *const HmArrangement, out: *mut usize) -> HmStatus {
    guarded(|| {
        if arr.is_null() || out.is_null() {
            return fail(HmStatus::NullPointer, "null argument");
        }
        *out = module_basis(&(*arr).arrangement).len();
        HmStatus::Ok
    })
}

/// Writes the Poincaré coefficients into `buf`. `*written` receives the
/// needed length even when the buffer is too small.
///
/// # Safety
/// `buf` must hold `capacity` values (may be null when `capacity` is 0).
#[no_mangle]
pub unsafe extern "C" fn hm_poincare(
    arr: *const HmArrangement,
    buf: *mut usize,
    capacity: usize,
    written: *mut usize,
) -> HmStatus {
    guarded(|| {
        if arr.is_null() || written.is_null() {
            return fail(HmStatus::NullPointer, "null argument");
        }
        let p = poincare_polynomial(&(*arr).arrangement);
        *written = p.len();
        if capacity < p.len() {
            return fail(HmStatus::BufferTooSmall, format!("need {} slots", p.len()));
        }
        if buf.is_null() {
            return fail(HmStatus::NullPointer, "null buffer");
        }
        ptr::copy_nonoverlapping(p.as_ptr(), buf, p.len());
        HmStatus::Ok
    })
}

/// Runs a CLI command (`rank`, `reduce`, `verify`, ...) and returns its JSON
/// report in `*out`. `options_json` may be null. A report is still returned
/// with [`HmStatus::CrossCheck`] when a cross-check disagreed.
///
/// # Safety
/// String arguments must be NUL-terminated; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hm_run(
    arr: *const HmArrangement,
    command: *const c_char,
    options_json: *const c_char,
    out: *mut *mut c_char,
) -> HmStatus {
    guarded(|| {
        if arr.is_null() || out.is_null() {
            return fail(HmStatus::NullPointer, "null argument");
        }
        *out = ptr::null_mut();
        let name = match read_str(command) {
            Ok(t) => t,
            Err(s) => return s,
        };
        let command: Command = match name.parse() {
            Ok(c) => c,
            Err(e) => return from_error(&e),
        };
        let raw = if options_json.is_null() {
            RunOptions::default()
        } else {
            let text = match read_str(options_json) {
                Ok(t) => t,
                Err(s) => return s,
            };
            match serde_json::from_str::<RunOptions>(text) {
                Ok(o) => o,
                Err(e) => return fail(HmStatus::Parse, format!("options: {e}")),
            }
        };
        let options = match raw.into_options() {
            Ok(o) => o,
            Err(e) => return from_error(&e),
        };
        match execute(command, &(*arr).doc, &options) {
            Ok(report) => {
                let text = serde_json::to_string(&report.value).expect("json");
                *out = CString::new(text).expect("no interior NUL").into_raw();
                if report.mismatch {
                    fail(HmStatus::CrossCheck, "cross-check disagreed")
                } else {
                    HmStatus::Ok
                }
            }
            Err(e) => from_error(&e),
        }
    })
}

/// Releases a string returned by the library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn hm_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message of the last failure on this thread, or null. Valid until the next
/// library call on the same thread.
#[no_mangle]
pub extern "C" fn hm_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}
