//! C ABI over the nilfield engine.
//!
//! Fields live behind an opaque `NfField` handle. Every fallible call returns
//! an `NfStatus`; on failure `nf_last_error` holds a message for the calling
//! thread. Strings handed out by the library must be released with
//! `nf_string_free`, handles with `nf_field_free`.

use nilfield::bases::{decompose, membership_b, GenIndex, Membership};
use nilfield::geometry::{clebsch_form, gauge_difference, vector_potential_delta, vector_potential_radial};
use nilfield::liealg::bracket_in_basis;
use nilfield::normalform::normalize;
use nilfield::parse::{parse_field, parse_poly};
use nilfield::poisson::poisson_bracket;
use nilfield::{Error, VField};
use serde_json::json;
use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NfStatus {
    Ok = 0,
    ParseError = 1,
    PreconditionFailed = 2,
    Internal = 3,
    NullArgument = 4,
    InvalidUtf8 = 5,
    Panic = 6,
}

/// Opaque polynomial vector field.
pub struct NfField {
    inner: VField,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

enum Fail {
    Engine(Error),
    Null(&'static str),
    Utf8,
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail::Engine(e)
    }
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn run<F: FnOnce() -> Result<(), Fail>>(f: F) -> NfStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => NfStatus::Ok,
        Ok(Err(Fail::Engine(e))) => {
            set_error(e.to_string());
            match e {
                Error::Parse { .. } => NfStatus::ParseError,
                Error::Precondition(_) => NfStatus::PreconditionFailed,
                Error::Internal(_) => NfStatus::Internal,
            }
        }
        Ok(Err(Fail::Null(what))) => {
            set_error(format!("null pointer passed for {what}"));
            NfStatus::NullArgument
        }
        Ok(Err(Fail::Utf8)) => {
            set_error("input is not valid UTF-8".into());
            NfStatus::InvalidUtf8
        }
        Err(_) => {
            set_error("panic inside the engine".into());
            NfStatus::Panic
        }
    }
}

unsafe fn read_str<'a>(p: *const c_char, what: &'static str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(Fail::Null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Fail::Utf8)
}

unsafe fn field_ref<'a>(p: *const NfField) -> Result<&'a VField, Fail> {
    p.as_ref().map(|f| &f.inner).ok_or(Fail::Null("field"))
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail::Null("output"));
    }
    *out = CString::new(s).unwrap().into_raw();
    Ok(())
}

/// Parses `dx = ...; dy = ...; dz = ...` or `(p1, p2, p3)` into a new handle.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nf_field_parse(text: *const c_char, out: *mut *mut NfField) -> NfStatus {
    run(|| {
        let t = read_str(text, "text")?;
        if out.is_null() {
            return Err(Fail::Null("output"));
        }
        let inner = parse_field(t)?;
        *out = Box::into_raw(Box::new(NfField { inner }));
        Ok(())
    })
}

/// # Safety
/// `field` must come from `nf_field_parse` and not be freed twice; null is
/// ignored.
#[no_mangle]
pub unsafe extern "C" fn nf_field_free(field: *mut NfField) {
    if !field.is_null() {
        drop(Box::from_raw(field));
    }
}

/// Canonical text `dx = ...; dy = ...; dz = ...`.
///
/// # Safety
/// `field` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nf_field_to_string(field: *const NfField, out: *mut *mut c_char) -> NfStatus {
    run(|| write_string(out, field_ref(field)?.to_named()))
}

/// Sets `*is_member` to 1 or 0. When not a member and `witness` is non-null,
/// `*witness` receives the failing quantity; otherwise it is set to null.
///
/// # Safety
/// `field` must be a live handle; `is_member` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nf_field_verify(
    field: *const NfField,
    is_member: *mut i32,
    witness: *mut *mut c_char,
) -> NfStatus {
    run(|| {
        let v = field_ref(field)?;
        if is_member.is_null() {
            return Err(Fail::Null("is_member"));
        }
        let m = membership_b(v);
        *is_member = matches!(m, Membership::Yes) as i32;
        if !witness.is_null() {
            *witness = match m {
                Membership::Yes => ptr::null_mut(),
                Membership::No(w) => CString::new(w.to_string()).unwrap().into_raw(),
            };
        }
        Ok(())
    })
}

/// JSON expansion over the A, B, C generators.
///
/// # Safety
/// `field` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nf_field_decompose_json(field: *const NfField, out: *mut *mut c_char) -> NfStatus {
    run(|| {
        let e = decompose(field_ref(field)?)?;
        write_string(out, json!({"terms": e.records(), "text": e.to_string()}).to_string())
    })
}

/// JSON normal form through `max_grade`.
///
/// # Safety
/// `field` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nf_field_normal_form_json(
    field: *const NfField,
    max_grade: u32,
    out: *mut *mut c_char,
) -> NfStatus {
    run(|| {
        let nf = normalize(field_ref(field)?, max_grade)?;
        write_string(out, nf.to_json().to_string())
    })
}

/// JSON Clebsch pair `{primary, secondary}`.
///
/// # Safety
/// `field` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nf_field_clebsch_json(field: *const NfField, out: *mut *mut c_char) -> NfStatus {
    run(|| {
        let p = clebsch_form(field_ref(field)?)?;
        write_string(out, json!({"primary": p.primary.to_string(), "secondary": p.secondary.to_string()}).to_string())
    })
}

/// JSON with both vector potentials and f such that radial + ∇f = delta form.
///
/// # Safety
/// `field` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nf_field_vector_potential_json(field: *const NfField, out: *mut *mut c_char) -> NfStatus {
    run(|| {
        let v = field_ref(field)?;
        let d = vector_potential_delta(v)?;
        let r = vector_potential_radial(v)?;
        let f = gauge_difference(&r, &d)?;
        write_string(
            out,
            json!({"deltaForm": d.field.to_named(), "radialForm": r.field.to_named(), "gaugeDifference": f.to_string()}).to_string(),
        )
    })
}

/// JSON expansion of [B^{l1}_{i1,k1}, B^{l2}_{i2,k2}].
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nf_bracket_json(
    l1: i32,
    i1: i32,
    k1: u32,
    l2: i32,
    i2: i32,
    k2: u32,
    out: *mut *mut c_char,
) -> NfStatus {
    run(|| {
        let e = bracket_in_basis(GenIndex::b(l1, i1, k1), GenIndex::b(l2, i2, k2))?;
        write_string(out, json!({"terms": e.records(), "text": e.to_string()}).to_string())
    })
}

/// Poisson bracket {f, g} as canonical text.
///
/// # Safety
/// `f` and `g` must be NUL-terminated strings; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nf_poisson_bracket(f: *const c_char, g: *const c_char, out: *mut *mut c_char) -> NfStatus {
    run(|| {
        let r = poisson_bracket(&parse_poly(read_str(f, "f")?)?, &parse_poly(read_str(g, "g")?)?);
        write_string(out, r.to_string())
    })
}

/// # Safety
/// `s` must come from this library and not be freed twice; null is ignored.
#[no_mangle]
pub unsafe extern "C" fn nf_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message of the last failed call on this thread, or null. Valid until the
/// next call into the library from the same thread.
#[no_mangle]
pub extern "C" fn nf_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}
