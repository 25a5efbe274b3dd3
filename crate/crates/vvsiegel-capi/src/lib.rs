//! C ABI for the vvsiegel toolkit.
//!
//! Sessions are opaque handles created from a lattice JSON and destroyed with
//! `vvs_session_free`. Every fallible entry point returns a `VvsStatus` and
//! writes its result through an out-pointer; string results are heap copies
//! released with `vvs_string_free`. The most recent failure message is kept
//! per thread and fetched with `vvs_last_error_message`. No call unwinds
//! across the boundary.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use vvsiegel::jsonio::{c64_matrix_json, cyc_matrix_json, expansion_to_json, word_from_value};
use vvsiegel::metaplectic::word_to_element;
use vvsiegel::rat::parse_rat;
use vvsiegel::series::{eisenstein_coeffs_genus1, SeriesConfig};
use vvsiegel::weilrep::WeilData;

/// Opaque session handle tied to one lattice.
pub struct VvsSession {
    weil: WeilData,
}

/// Status codes shared by every entry point.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VvsStatus {
    /// success
    Ok = 0,
    /// a required pointer argument was null
    NullArgument = 1,
    /// a string argument was not valid UTF-8
    InvalidUtf8 = 2,
    /// the library rejected the input; see `vvs_last_error_message`
    Domain = 3,
    /// an internal panic was caught at the boundary
    Panic = 4,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let cleaned = msg.replace('\0', " ");
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = CString::new(cleaned).ok();
    });
}

fn to_c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " "))
        .map(CString::into_raw)
        .unwrap_or(std::ptr::null_mut())
}

/// # Safety
/// `ptr` must be null or a valid nul-terminated string.
unsafe fn utf8_arg<'a>(ptr: *const c_char) -> Result<&'a str, VvsStatus> {
    if ptr.is_null() {
        return Err(VvsStatus::NullArgument);
    }
    CStr::from_ptr(ptr).to_str().map_err(|_| {
        set_error("argument is not valid UTF-8".into());
        VvsStatus::InvalidUtf8
    })
}

fn guarded(f: impl FnOnce() -> VvsStatus) -> VvsStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => status,
        Err(_) => {
            set_error("internal panic caught at the FFI boundary".into());
            VvsStatus::Panic
        }
    }
}

fn domain(e: vvsiegel::Error) -> VvsStatus {
    set_error(format!("{}: {e}", e.kind()));
    VvsStatus::Domain
}

/// Create a session from lattice JSON (`{"gram": [[...]], "name": "..."}`).
///
/// # Safety
/// `lattice_json` must be a valid nul-terminated string and `out` a valid
/// pointer; the result must be released with `vvs_session_free`.
#[no_mangle]
pub unsafe extern "C" fn vvs_session_new_from_json(
    lattice_json: *const c_char,
    out: *mut *mut VvsSession,
) -> VvsStatus {
    guarded(|| {
        if out.is_null() {
            return VvsStatus::NullArgument;
        }
        let text = match utf8_arg(lattice_json) {
            Ok(t) => t,
            Err(s) => return s,
        };
        match vvsiegel::jsonio::lattice_from_str(text).and_then(WeilData::new) {
            Ok(weil) => {
                *out = Box::into_raw(Box::new(VvsSession { weil }));
                VvsStatus::Ok
            }
            Err(e) => domain(e),
        }
    })
}

/// Destroy a session; a null handle is a no-op.
///
/// # Safety
/// `session` must be null or a pointer from `vvs_session_new_from_json` that
/// has not been freed yet.
#[no_mangle]
pub unsafe extern "C" fn vvs_session_free(session: *mut VvsSession) {
    if !session.is_null() {
        drop(Box::from_raw(session));
    }
}

/// Lattice and discriminant-form summary as JSON.
///
/// # Safety
/// `session` must be a live session handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn vvs_session_info_json(
    session: *const VvsSession,
    out: *mut *mut c_char,
) -> VvsStatus {
    guarded(|| {
        if session.is_null() || out.is_null() {
            return VvsStatus::NullArgument;
        }
        let s = &*session;
        let lat = &s.weil.lat;
        let (p, q) = lat.signature();
        let body = serde_json::json!({
            "name": lat.name(),
            "rank": lat.rank(),
            "det": lat.det().to_string(),
            "signature": [p, q],
            "disc_order": s.weil.dg.order().to_string(),
            "disc_orders": s.weil.dg.orders(),
            "level": s.weil.dg.level(),
        });
        *out = to_c_string(body.to_string());
        VvsStatus::Ok
    })
}

/// Weil matrix of a word (JSON as in the CLI), exact when `as_float` is 0.
///
/// # Safety
/// `session` must be a live handle, `word_json` a valid nul-terminated
/// string, `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn vvs_weil_matrix_json(
    session: *const VvsSession,
    genus: u32,
    word_json: *const c_char,
    as_float: i32,
    out: *mut *mut c_char,
) -> VvsStatus {
    guarded(|| {
        if session.is_null() || out.is_null() {
            return VvsStatus::NullArgument;
        }
        let s = &*session;
        let text = match utf8_arg(word_json) {
            Ok(t) => t,
            Err(st) => return st,
        };
        let run = || -> vvsiegel::Result<String> {
            let v: serde_json::Value = serde_json::from_str(text)?;
            let word = word_from_value(&v)?;
            word_to_element(genus as usize, &word)?;
            let rho = s.weil.rho_of_word(genus as usize, &word)?;
            Ok(if as_float != 0 {
                c64_matrix_json(&rho.map(|e| s.weil.field.embed(e)))
            } else {
                cyc_matrix_json(&s.weil.field, &rho)
            })
        };
        match run() {
            Ok(body) => {
                *out = to_c_string(body);
                VvsStatus::Ok
            }
            Err(e) => domain(e),
        }
    })
}

/// Genus-1 Eisenstein coefficient table (weight and cutoff as "p/q" strings).
///
/// # Safety
/// `session` must be a live handle, `weight`/`mmax` valid nul-terminated
/// strings, `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn vvs_eisenstein_coeffs_json(
    session: *const VvsSession,
    weight: *const c_char,
    mmax: *const c_char,
    height: i64,
    quad_points: usize,
    out: *mut *mut c_char,
) -> VvsStatus {
    guarded(|| {
        if session.is_null() || out.is_null() {
            return VvsStatus::NullArgument;
        }
        let s = &*session;
        let (weight, mmax) = match (utf8_arg(weight), utf8_arg(mmax)) {
            (Ok(a), Ok(b)) => (a, b),
            (Err(st), _) | (_, Err(st)) => return st,
        };
        let run = || -> vvsiegel::Result<String> {
            let cfg = SeriesConfig { height, quad_points, ..SeriesConfig::default() };
            let coeffs =
                eisenstein_coeffs_genus1(&s.weil, &parse_rat(weight)?, &cfg, &parse_rat(mmax)?)?;
            Ok(expansion_to_json(&s.weil.dg, &coeffs.exp))
        };
        match run() {
            Ok(body) => {
                *out = to_c_string(body);
                VvsStatus::Ok
            }
            Err(e) => domain(e),
        }
    })
}

/// Copy of the last failure message on this thread (empty string if none).
///
/// # Safety
/// `out` must be a valid pointer; release the string with `vvs_string_free`.
#[no_mangle]
pub unsafe extern "C" fn vvs_last_error_message(out: *mut *mut c_char) -> VvsStatus {
    if out.is_null() {
        return VvsStatus::NullArgument;
    }
    let msg = LAST_ERROR.with(|slot| {
        slot.borrow().as_ref().map(|c| c.to_string_lossy().into_owned()).unwrap_or_default()
    });
    *out = to_c_string(msg);
    VvsStatus::Ok
}

/// Release a string returned by this library; null is a no-op.
///
/// # Safety
/// `s` must be null or an unreleased string produced by this library.
#[no_mangle]
pub unsafe extern "C" fn vvs_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
