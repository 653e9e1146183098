//! C ABI over `rba`. Handles are opaque and owned by the caller, who frees
//! them with the matching `*_free`. Every fallible call returns an
//! [`RbaStatus`]; on failure `rba_last_error` holds a message for the calling
//! thread. Strings returned through out-parameters are freed with
//! `rba_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use rba::filters::enumerate_frb;
use rba::frames::AwarenessModel;
use rba::io::{filters_to_json, parse_algebra, parse_model, parse_mrba};
use rba::modal::{evaluate, Assignment, Mrba};
use rba::syntax::parse;
use rba::{Algebra, ElementId, Error};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RbaStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    /// Malformed JSON, formula or assignment text.
    Parse = 3,
    /// Well-formed input describing an ill-formed structure.
    Invalid = 4,
    /// Element index, name or size cap out of range.
    OutOfRange = 5,
    Internal = 6,
}

pub struct RbaAlgebra {
    inner: Algebra,
}

pub struct RbaMrba {
    inner: Mrba,
}

pub struct RbaModel {
    inner: AwarenessModel,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

struct Fail(RbaStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        let status = match &e {
            Error::Parse(_) | Error::Json(_) | Error::Input(_) => RbaStatus::Parse,
            Error::UnknownElement(_) | Error::UnknownWorld(_) | Error::CapExceeded { .. } | Error::TableOutOfRange { .. } => {
                RbaStatus::OutOfRange
            }
            _ => RbaStatus::Invalid,
        };
        Fail(status, e.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> RbaStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            RbaStatus::Ok
        }
        Ok(Err(Fail(status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            RbaStatus::Internal
        }
    }
}

fn null() -> Fail {
    Fail(RbaStatus::NullPointer, "null pointer argument".into())
}

unsafe fn text<'a>(p: *const c_char) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(null());
    }
    CStr::from_ptr(p).to_str().map_err(|e| Fail(RbaStatus::InvalidUtf8, e.to_string()))
}

unsafe fn reference<'a, T>(p: *const T) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(null)
}

unsafe fn write<T>(out: *mut T, value: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null());
    }
    out.write(value);
    Ok(())
}

fn element(alg: &Algebra, x: u32) -> Result<ElementId, Fail> {
    if (x as usize) < alg.size() {
        Ok(ElementId(x))
    } else {
        Err(Fail(RbaStatus::OutOfRange, format!("element {x} out of range for {} elements", alg.size())))
    }
}

fn owned_string(s: String) -> Result<*mut c_char, Fail> {
    CString::new(s).map(CString::into_raw).map_err(|e| Fail(RbaStatus::Internal, e.to_string()))
}

/// Message of the last failed call on this thread; empty after a success.
/// Valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn rba_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// # Safety
/// `s` is null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn rba_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses an algebra file (tables, glued blocks or a concrete universe).
/// Laws are not checked.
///
/// # Safety
/// `json` is a NUL-terminated string; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn rba_algebra_from_json(json: *const c_char, out: *mut *mut RbaAlgebra) -> RbaStatus {
    guard(|| {
        let alg = parse_algebra(text(json)?)?;
        write(out, Box::into_raw(Box::new(RbaAlgebra { inner: alg })))
    })
}

/// # Safety
/// `a` is null or a live handle from `rba_algebra_from_json`.
#[no_mangle]
pub unsafe extern "C" fn rba_algebra_free(a: *mut RbaAlgebra) {
    if !a.is_null() {
        drop(Box::from_raw(a));
    }
}

/// # Safety
/// `a` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn rba_algebra_size(a: *const RbaAlgebra, out: *mut usize) -> RbaStatus {
    guard(|| write(out, reference(a)?.inner.size()))
}

/// Runs the algebra laws. When `report` is non-null it receives the text
/// report, to be freed with `rba_string_free`.
///
/// # Safety
/// `a` is a live handle; `passed` is writable; `report` is null or writable.
#[no_mangle]
pub unsafe extern "C" fn rba_algebra_check(a: *const RbaAlgebra, passed: *mut bool, report: *mut *mut c_char) -> RbaStatus {
    guard(|| {
        let r = reference(a)?.inner.check_rba();
        if !report.is_null() {
            report.write(owned_string(r.to_string())?);
        }
        write(passed, r.passed())
    })
}

/// # Safety
/// `a` is a live handle; `name` is a NUL-terminated string; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn rba_algebra_find(a: *const RbaAlgebra, name: *const c_char, out: *mut u32) -> RbaStatus {
    guard(|| {
        let x = reference(a)?.inner.element(text(name)?)?;
        write(out, x.0)
    })
}

/// # Safety
/// `a` is a live handle; `out` is writable. Free the result with
/// `rba_string_free`.
#[no_mangle]
pub unsafe extern "C" fn rba_algebra_label(a: *const RbaAlgebra, x: u32, out: *mut *mut c_char) -> RbaStatus {
    guard(|| {
        let alg = &reference(a)?.inner;
        let s = owned_string(alg.label(element(alg, x)?).to_string())?;
        write(out, s)
    })
}

/// # Safety
/// `a` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn rba_algebra_meet(a: *const RbaAlgebra, x: u32, y: u32, out: *mut u32) -> RbaStatus {
    guard(|| {
        let alg = &reference(a)?.inner;
        write(out, alg.meet(element(alg, x)?, element(alg, y)?).0)
    })
}

/// # Safety
/// `a` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn rba_algebra_join(a: *const RbaAlgebra, x: u32, y: u32, out: *mut u32) -> RbaStatus {
    guard(|| {
        let alg = &reference(a)?.inner;
        write(out, alg.join(element(alg, x)?, element(alg, y)?).0)
    })
}

/// # Safety
/// `a` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn rba_algebra_neg(a: *const RbaAlgebra, x: u32, out: *mut u32) -> RbaStatus {
    guard(|| {
        let alg = &reference(a)?.inner;
        write(out, alg.neg(element(alg, x)?).0)
    })
}

/// # Safety
/// `a` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn rba_algebra_relative_top(a: *const RbaAlgebra, x: u32, out: *mut u32) -> RbaStatus {
    guard(|| {
        let alg = &reference(a)?.inner;
        write(out, alg.relative_top(element(alg, x)?).0)
    })
}

/// The `F^RB` filters as a JSON array of element-name arrays.
///
/// # Safety
/// `a` is a live handle; `out` is writable. Free the result with
/// `rba_string_free`.
#[no_mangle]
pub unsafe extern "C" fn rba_algebra_filters_json(a: *const RbaAlgebra, out: *mut *mut c_char) -> RbaStatus {
    guard(|| {
        let alg = &reference(a)?.inner;
        let fam = enumerate_frb(alg)?;
        let s = owned_string(filters_to_json(alg, &fam.filters).to_string())?;
        write(out, s)
    })
}

/// Parses a modal algebra file; it must carry `fk`. Laws are not checked.
///
/// # Safety
/// `json` is a NUL-terminated string; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn rba_mrba_from_json(json: *const c_char, out: *mut *mut RbaMrba) -> RbaStatus {
    guard(|| {
        let m = parse_mrba(text(json)?)?;
        write(out, Box::into_raw(Box::new(RbaMrba { inner: m })))
    })
}

/// # Safety
/// `m` is null or a live handle from `rba_mrba_from_json`.
#[no_mangle]
pub unsafe extern "C" fn rba_mrba_free(m: *mut RbaMrba) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// Algebra laws plus f1, f2, f3 and, when `require_fd`, fD.
///
/// # Safety
/// `m` is a live handle; `passed` is writable; `report` is null or writable.
#[no_mangle]
pub unsafe extern "C" fn rba_mrba_check(m: *const RbaMrba, require_fd: bool, passed: *mut bool, report: *mut *mut c_char) -> RbaStatus {
    guard(|| {
        let r = reference(m)?.inner.check(require_fd);
        if !report.is_null() {
            report.write(owned_string(r.to_string())?);
        }
        write(passed, r.passed())
    })
}

/// Value of `formula` under `assignment` (`p=X_B,q=X_R`), as an element index.
///
/// # Safety
/// `m` is a live handle; `formula` and `assignment` are NUL-terminated
/// strings; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn rba_mrba_evaluate(m: *const RbaMrba, formula: *const c_char, assignment: *const c_char, out: *mut u32) -> RbaStatus {
    guard(|| {
        let m = &reference(m)?.inner;
        let f = parse(text(formula)?).map_err(Error::from)?;
        let h = Assignment::parse(&m.algebra, text(assignment)?)?;
        write(out, evaluate(m, &h, &f)?.0)
    })
}

/// True when the value of `formula` is its own relative top.
///
/// # Safety
/// As for `rba_mrba_evaluate`.
#[no_mangle]
pub unsafe extern "C" fn rba_mrba_valid(m: *const RbaMrba, formula: *const c_char, assignment: *const c_char, out: *mut bool) -> RbaStatus {
    guard(|| {
        let m = &reference(m)?.inner;
        let f = parse(text(formula)?).map_err(Error::from)?;
        let h = Assignment::parse(&m.algebra, text(assignment)?)?;
        let x = evaluate(m, &h, &f)?;
        write(out, m.algebra.relative_top(x) == x)
    })
}

/// # Safety
/// `json` is a NUL-terminated string; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn rba_model_from_json(json: *const c_char, out: *mut *mut RbaModel) -> RbaStatus {
    guard(|| {
        let m = parse_model(text(json)?)?;
        write(out, Box::into_raw(Box::new(RbaModel { inner: m })))
    })
}

/// # Safety
/// `m` is null or a live handle from `rba_model_from_json`.
#[no_mangle]
pub unsafe extern "C" fn rba_model_free(m: *mut RbaModel) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// Seriality, the preorder, upward-closed languages and `V ⊆ L`.
///
/// # Safety
/// `m` is a live handle; `passed` is writable; `report` is null or writable.
#[no_mangle]
pub unsafe extern "C" fn rba_model_check(m: *const RbaModel, passed: *mut bool, report: *mut *mut c_char) -> RbaStatus {
    guard(|| {
        let r = reference(m)?.inner.check();
        if !report.is_null() {
            report.write(owned_string(r.to_string())?);
        }
        write(passed, r.passed())
    })
}

/// True at every world where `formula` is defined. Propositions the model
/// does not interpret are an error.
///
/// # Safety
/// `m` is a live handle; `formula` is a NUL-terminated string; `out` is
/// writable.
#[no_mangle]
pub unsafe extern "C" fn rba_model_valid(m: *const RbaModel, formula: *const c_char, out: *mut bool) -> RbaStatus {
    guard(|| {
        let m = &reference(m)?.inner;
        let f = parse(text(formula)?).map_err(Error::from)?;
        if let Some(p) = rba::syntax::props_of(&f).into_iter().find(|p| !m.props().any(|q| q == p)) {
            return Err(Error::UnboundProp(p.to_string()).into());
        }
        write(out, m.valid(&f))
    })
}
