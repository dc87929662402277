//! C ABI over the `todorov` crate.
//!
//! Configurations cross the boundary as opaque `TdvConfig` handles. Every
//! fallible call returns a `TdvStatus`; on failure the message is available
//! from `tdv_last_error_message` on the same thread. Strings returned by the
//! library are owned by the caller and released with `tdv_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::ptr;

use todorov::config::{self, BranchConfiguration};
use todorov::cover::{canonical_resolution, double_plane_invariants, PlaneBranchCurve};
use todorov::descent::descend;
use todorov::examples::{self, Fixture};

/// Opaque branch configuration.
pub struct TdvConfig {
    inner: BranchConfiguration,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TdvStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    ValidationFailed = 4,
    DescentFailed = 5,
    UnknownExample = 6,
    ResolutionFailed = 7,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct TdvInvariants {
    pub q: i64,
    pub p_g: i64,
    pub k2: i64,
    pub chi: i64,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct TdvDoublePlane {
    pub chi: i64,
    pub kv2: i64,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn fail(status: TdvStatus, msg: impl ToString) -> TdvStatus {
    let text = msg.to_string().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(text).ok());
    status
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, TdvStatus> {
    if s.is_null() {
        return Err(fail(TdvStatus::NullPointer, "null string argument"));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|e| fail(TdvStatus::InvalidUtf8, e))
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s).map_or(ptr::null_mut(), CString::into_raw)
}

fn boxed(cfg: BranchConfiguration) -> *mut TdvConfig {
    Box::into_raw(Box::new(TdvConfig { inner: cfg }))
}

macro_rules! try_status {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(status) => return status,
        }
    };
}

macro_rules! require {
    ($p:expr) => {
        if $p.is_null() {
            return fail(TdvStatus::NullPointer, concat!(stringify!($p), " is null"));
        }
    };
}

/// Parses a configuration document. On success `*out` owns a new handle.
///
/// # Safety
/// `json` must be a valid NUL-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn tdv_config_from_json(
    json: *const c_char,
    out: *mut *mut TdvConfig,
) -> TdvStatus {
    require!(out);
    let text = try_status!(read_str(json));
    match serde_json::from_str::<BranchConfiguration>(text) {
        Ok(cfg) => {
            *out = boxed(cfg);
            TdvStatus::Ok
        }
        Err(e) => fail(TdvStatus::ParseError, e),
    }
}

/// Builds a named configuration fixture. `j` is used only by `kummer`;
/// pass a negative value to take the default.
///
/// # Safety
/// `name` must be a valid NUL-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn tdv_config_from_example(
    name: *const c_char,
    j: i32,
    out: *mut *mut TdvConfig,
) -> TdvStatus {
    require!(out);
    let name = try_status!(read_str(name));
    let j = usize::try_from(j).ok();
    match examples::build(name, j) {
        Ok(Fixture::Configuration(cfg)) => {
            *out = boxed(cfg);
            TdvStatus::Ok
        }
        Ok(_) => fail(
            TdvStatus::UnknownExample,
            format!("{name} is not a configuration fixture"),
        ),
        Err(e) => fail(TdvStatus::UnknownExample, e),
    }
}

/// # Safety
/// `cfg` must be null or a handle returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn tdv_config_free(cfg: *mut TdvConfig) {
    if !cfg.is_null() {
        drop(Box::from_raw(cfg));
    }
}

/// Writes 1 to `*passed` if every clause holds, 0 otherwise. The failing
/// clauses are reported through `tdv_last_error_message`.
///
/// # Safety
/// `cfg` must be a live handle and `passed` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn tdv_config_validate(cfg: *const TdvConfig, passed: *mut i32) -> TdvStatus {
    require!(cfg);
    require!(passed);
    let report = config::validate(&(*cfg).inner);
    *passed = i32::from(report.passed);
    if !report.passed {
        fail(TdvStatus::Ok, report.summary());
    }
    TdvStatus::Ok
}

/// # Safety
/// `cfg` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn tdv_config_invariants(
    cfg: *const TdvConfig,
    out: *mut TdvInvariants,
) -> TdvStatus {
    require!(cfg);
    require!(out);
    match config::invariants(&(*cfg).inner) {
        Ok(inv) => {
            *out = TdvInvariants {
                q: inv.q,
                p_g: inv.p_g,
                k2: inv.k2,
                chi: inv.chi,
            };
            TdvStatus::Ok
        }
        Err(e) => fail(TdvStatus::ValidationFailed, e),
    }
}

/// Number of branch curves `t`, or 0 for a null handle.
///
/// # Safety
/// `cfg` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn tdv_config_branch_count(cfg: *const TdvConfig) -> usize {
    if cfg.is_null() {
        0
    } else {
        (*cfg).inner.t()
    }
}

/// Runs up to `max_steps` descent steps and returns the final configuration
/// as a new handle. The input handle is left untouched.
///
/// # Safety
/// `cfg` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn tdv_config_descend(
    cfg: *const TdvConfig,
    max_steps: usize,
    out: *mut *mut TdvConfig,
) -> TdvStatus {
    require!(cfg);
    require!(out);
    match descend(&(*cfg).inner, max_steps) {
        Ok(chain) => {
            *out = boxed(chain.last().clone());
            TdvStatus::Ok
        }
        Err(e) => fail(TdvStatus::DescentFailed, e),
    }
}

/// Serializes the configuration. Free the result with `tdv_string_free`.
///
/// # Safety
/// `cfg` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn tdv_config_to_json(
    cfg: *const TdvConfig,
    out: *mut *mut c_char,
) -> TdvStatus {
    require!(cfg);
    require!(out);
    match serde_json::to_string(&(*cfg).inner) {
        Ok(s) => {
            *out = into_c_string(s);
            TdvStatus::Ok
        }
        Err(e) => fail(TdvStatus::ParseError, e),
    }
}

/// Resolves a plane branch curve given as JSON and reports the invariants
/// of the double cover.
///
/// # Safety
/// `json` must be a valid NUL-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn tdv_resolve_plane_json(
    json: *const c_char,
    out: *mut TdvDoublePlane,
) -> TdvStatus {
    require!(out);
    let text = try_status!(read_str(json));
    let curve: PlaneBranchCurve = match serde_json::from_str(text) {
        Ok(c) => c,
        Err(e) => return fail(TdvStatus::ParseError, e),
    };
    let inv = canonical_resolution(&curve).and_then(|st| double_plane_invariants(&st));
    match inv {
        Ok(inv) => {
            *out = TdvDoublePlane {
                chi: inv.chi,
                kv2: inv.kv2,
            };
            TdvStatus::Ok
        }
        Err(e) => fail(TdvStatus::ResolutionFailed, e),
    }
}

/// # Safety
/// `s` must be null or a string returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn tdv_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message for the most recent failure on this thread, or null. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn tdv_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn tdv_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}
