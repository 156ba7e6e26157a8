//! C ABI for the gorinv library.
//!
//! Every pipeline is exposed as JSON-in / JSON-out over C strings, plus an
//! opaque group handle for repeated queries against one group. All returned
//! strings are heap-allocated by Rust and must be released with
//! [`gorinv_string_free`]. Functions never unwind across the boundary; on
//! failure they return a status code and store a message retrievable with
//! [`gorinv_last_error_message`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use gorinv::action::GAction;
use gorinv::api;
use gorinv::error::Error;
use gorinv::group::{has_nontrivial_onedim_rep, MatrixGroup, DEFAULT_CLOSURE_CAP};
use gorinv::schema::GroupJson;

/// Result of every C-API call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GorinvStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    DomainError = 3,
    Panic = 4,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(message: &str) {
    let sanitized = message.replace('\0', " ");
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = CString::new(sanitized).ok();
    });
}

fn clear_last_error() {
    LAST_ERROR.with(|slot| slot.borrow_mut().take());
}

/// The message from the most recent failing call on this thread, or NULL.
/// The caller owns the returned string.
#[no_mangle]
pub extern "C" fn gorinv_last_error_message() -> *mut c_char {
    LAST_ERROR.with(|slot| match &*slot.borrow() {
        Some(msg) => msg.clone().into_raw(),
        None => ptr::null_mut(),
    })
}

/// Releases a string allocated by this library.
///
/// # Safety
/// `s` must be NULL or a pointer previously returned by a gorinv function and
/// not yet freed.
#[no_mangle]
pub unsafe extern "C" fn gorinv_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

unsafe fn read_c_str<'a>(ptr: *const c_char) -> Result<&'a str, GorinvStatus> {
    if ptr.is_null() {
        set_last_error("null pointer argument");
        return Err(GorinvStatus::NullPointer);
    }
    CStr::from_ptr(ptr).to_str().map_err(|_| {
        set_last_error("argument is not valid UTF-8");
        GorinvStatus::InvalidUtf8
    })
}

fn write_out(out: *mut *mut c_char, text: String) -> GorinvStatus {
    if out.is_null() {
        set_last_error("null output pointer");
        return GorinvStatus::NullPointer;
    }
    match CString::new(text.replace('\0', " ")) {
        Ok(cs) => {
            unsafe { *out = cs.into_raw() };
            clear_last_error();
            GorinvStatus::Ok
        }
        Err(_) => {
            set_last_error("output contained an interior NUL");
            GorinvStatus::Panic
        }
    }
}

fn domain_error(e: &Error) -> GorinvStatus {
    set_last_error(&format!("{}: {e}", e.kind()));
    GorinvStatus::DomainError
}

fn guarded<F: FnOnce() -> GorinvStatus>(f: F) -> GorinvStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => status,
        Err(_) => {
            set_last_error("internal panic");
            GorinvStatus::Panic
        }
    }
}

fn run_json_pipeline(
    input: *const c_char,
    out_json: *mut *mut c_char,
    f: impl FnOnce(&str) -> Result<String, Error>,
) -> GorinvStatus {
    guarded(|| {
        let input = match unsafe { read_c_str(input) } {
            Ok(s) => s,
            Err(status) => return status,
        };
        match f(input) {
            Ok(json) => write_out(out_json, json),
            Err(e) => domain_error(&e),
        }
    })
}

/// Lemma checker: group spec JSON -> verdict JSON.
///
/// # Safety
/// `group_json` must be a valid NUL-terminated string and `out_json` a valid
/// location to store a pointer.
#[no_mangle]
pub unsafe extern "C" fn gorinv_check_group(
    group_json: *const c_char,
    out_json: *mut *mut c_char,
) -> GorinvStatus {
    run_json_pipeline(group_json, out_json, |s| {
        api::run_check_group(s, DEFAULT_CLOSURE_CAP)
    })
}

/// Inverse-system construction: input JSON -> graded ideal JSON.
///
/// # Safety
/// `input_json` must be a valid NUL-terminated string and `out_json` a valid
/// location to store a pointer.
#[no_mangle]
pub unsafe extern "C" fn gorinv_construct(
    input_json: *const c_char,
    out_json: *mut *mut c_char,
) -> GorinvStatus {
    run_json_pipeline(input_json, out_json, |s| {
        api::run_construct(s, DEFAULT_CLOSURE_CAP)
    })
}

/// Invariant subspace dimensions and bases. Pass a negative `max_degree` to
/// use the input's own setting.
///
/// # Safety
/// `input_json` must be a valid NUL-terminated string and `out_json` a valid
/// location to store a pointer.
#[no_mangle]
pub unsafe extern "C" fn gorinv_invariants(
    input_json: *const c_char,
    max_degree: i64,
    out_json: *mut *mut c_char,
) -> GorinvStatus {
    run_json_pipeline(input_json, out_json, |s| {
        let md = usize::try_from(max_degree).ok();
        api::run_invariants(s, md, DEFAULT_CLOSURE_CAP)
    })
}

/// Full pipeline on one instance spec JSON.
///
/// # Safety
/// `instance_json` must be a valid NUL-terminated string and `out_json` a
/// valid location to store a pointer.
#[no_mangle]
pub unsafe extern "C" fn gorinv_verify(
    instance_json: *const c_char,
    out_json: *mut *mut c_char,
) -> GorinvStatus {
    run_json_pipeline(instance_json, out_json, |s| {
        api::run_verify(s, DEFAULT_CLOSURE_CAP)
    })
}

/// Seed-deterministic sweep over a config JSON.
///
/// # Safety
/// `config_json` must be a valid NUL-terminated string and `out_json` a valid
/// location to store a pointer.
#[no_mangle]
pub unsafe extern "C" fn gorinv_sweep(
    config_json: *const c_char,
    out_json: *mut *mut c_char,
) -> GorinvStatus {
    run_json_pipeline(config_json, out_json, |s| api::run_sweep(s, None, None, None))
}

/// Reruns a bundled reference instance ("ex34" or "ex35"). `out_matched`
/// reports whether every recorded value was reproduced.
///
/// # Safety
/// `id` must be a valid NUL-terminated string; `out_json` and `out_matched`
/// must be NULL or valid locations to write through.
#[no_mangle]
pub unsafe extern "C" fn gorinv_replicate(
    id: *const c_char,
    out_json: *mut *mut c_char,
    out_matched: *mut bool,
) -> GorinvStatus {
    guarded(|| {
        let id = match unsafe { read_c_str(id) } {
            Ok(s) => s,
            Err(status) => return status,
        };
        match api::run_replicate(id) {
            Ok((json, matched)) => {
                if !out_matched.is_null() {
                    unsafe { *out_matched = matched };
                }
                write_out(out_json, json)
            }
            Err(e) => domain_error(&e),
        }
    })
}

/// A closed matrix group held behind the FFI boundary.
pub struct GorinvGroup {
    action: GAction,
}

/// Parses and closes a group from its spec JSON. `closure_cap` of 0 selects
/// the default cap. Returns NULL on failure (see
/// [`gorinv_last_error_message`]).
///
/// # Safety
/// `group_json` must be a valid NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn gorinv_group_new(
    group_json: *const c_char,
    closure_cap: u64,
) -> *mut GorinvGroup {
    let result = catch_unwind(AssertUnwindSafe(|| {
        let input = match unsafe { read_c_str(group_json) } {
            Ok(s) => s,
            Err(_) => return ptr::null_mut(),
        };
        let cap = if closure_cap == 0 {
            DEFAULT_CLOSURE_CAP
        } else {
            closure_cap as usize
        };
        let spec: GroupJson = match serde_json::from_str(input) {
            Ok(s) => s,
            Err(e) => {
                set_last_error(&format!("invalid_input: malformed JSON: {e}"));
                return ptr::null_mut();
            }
        };
        match spec.build(None, cap) {
            Ok(group) => {
                clear_last_error();
                Box::into_raw(Box::new(GorinvGroup {
                    action: GAction::new(group),
                }))
            }
            Err(e) => {
                domain_error(&e);
                ptr::null_mut()
            }
        }
    }));
    match result {
        Ok(handle) => handle,
        Err(_) => {
            set_last_error("internal panic");
            ptr::null_mut()
        }
    }
}

/// Releases a group handle.
///
/// # Safety
/// `group` must be NULL or a pointer from [`gorinv_group_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn gorinv_group_free(group: *mut GorinvGroup) {
    if !group.is_null() {
        drop(Box::from_raw(group));
    }
}

fn group_of(handle: &GorinvGroup) -> &MatrixGroup {
    handle.action.group()
}

/// Number of elements, or 0 for a null handle.
///
/// # Safety
/// `group` must be NULL or a live handle from [`gorinv_group_new`].
#[no_mangle]
pub unsafe extern "C" fn gorinv_group_order(group: *const GorinvGroup) -> u64 {
    if group.is_null() {
        return 0;
    }
    catch_unwind(AssertUnwindSafe(|| {
        group_of(unsafe { &*group }).order() as u64
    }))
    .unwrap_or(0)
}

/// Lemma verdict for the held group, as JSON.
///
/// # Safety
/// `group` must be NULL or a live handle from [`gorinv_group_new`];
/// `out_json` must be a valid location to store a pointer.
#[no_mangle]
pub unsafe extern "C" fn gorinv_group_check(
    group: *const GorinvGroup,
    out_json: *mut *mut c_char,
) -> GorinvStatus {
    guarded(|| {
        if group.is_null() {
            set_last_error("null group handle");
            return GorinvStatus::NullPointer;
        }
        let handle = unsafe { &*group };
        match has_nontrivial_onedim_rep(group_of(handle)) {
            Ok(verdict) => {
                let json: gorinv::schema::RepVerdictJson = verdict.into();
                write_out(
                    out_json,
                    serde_json::to_string(&json).expect("verdicts serialize"),
                )
            }
            Err(e) => domain_error(&e),
        }
    })
}

/// Dimension of the degree-d invariant subspace. Returns a negative value on
/// error.
///
/// # Safety
/// `group` must be NULL or a live handle from [`gorinv_group_new`].
#[no_mangle]
pub unsafe extern "C" fn gorinv_group_invariant_dim(group: *const GorinvGroup, degree: u64) -> i64 {
    if group.is_null() {
        set_last_error("null group handle");
        return -1;
    }
    catch_unwind(AssertUnwindSafe(|| {
        let handle = unsafe { &*group };
        match handle.action.fixed_subspace(degree as usize) {
            Ok(s) => s.dim() as i64,
            Err(e) => {
                domain_error(&e);
                -1
            }
        }
    }))
    .unwrap_or(-1)
}
