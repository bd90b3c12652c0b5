//! C ABI over `kha-core`.
//!
//! Every fallible call returns a [`KhaStatus`]; results come back through out-pointers.
//! Strings handed out by the library must be released with [`kha_string_free`], handles
//! with their matching `*_free`. The message for the most recent failure on the calling
//! thread is available from [`kha_last_error_message`].

use kha_core::arith::{delta_coefficient, parse_rf, RationalFunction, VarId};
use kha_core::fixedpoint::{relation_suite, Rel5Scope};
use kha_core::quiver::{DimVector, Quiver};
use kha_core::shuffle::{shuffle_mul, word_to_shuffle};
use kha_core::KhaError;
use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KhaStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Config = 4,
    Unsupported = 5,
    DivisionByZero = 6,
    Pole = 7,
    Divergent = 8,
    Integrity = 9,
    DegenerateFixedPoint = 10,
    OutOfRange = 11,
    Io = 12,
    Panic = 13,
}

/// Opaque quiver handle.
pub struct KhaQuiver(Quiver);

/// Opaque rational function handle.
pub struct KhaRational(RationalFunction);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &KhaError) -> KhaStatus {
    match e {
        KhaError::DivisionByZero => KhaStatus::DivisionByZero,
        KhaError::Pole { .. } => KhaStatus::Pole,
        KhaError::Divergent { .. } => KhaStatus::Divergent,
        KhaError::Parse(_) => KhaStatus::Parse,
        KhaError::Integrity(_) => KhaStatus::Integrity,
        KhaError::Unsupported(_) => KhaStatus::Unsupported,
        KhaError::Config(_) => KhaStatus::Config,
        KhaError::DegenerateFixedPoint(_) => KhaStatus::DegenerateFixedPoint,
        KhaError::OutOfRange(_) => KhaStatus::OutOfRange,
        KhaError::Io(_) => KhaStatus::Io,
    }
}

enum Failure {
    Null,
    Utf8,
    Core(KhaError),
}

impl From<KhaError> for Failure {
    fn from(e: KhaError) -> Self {
        Failure::Core(e)
    }
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> KhaStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            KhaStatus::Ok
        }
        Ok(Err(Failure::Null)) => {
            set_error("null pointer argument".into());
            KhaStatus::NullPointer
        }
        Ok(Err(Failure::Utf8)) => {
            set_error("string argument is not valid UTF-8".into());
            KhaStatus::InvalidUtf8
        }
        Ok(Err(Failure::Core(e))) => {
            set_error(e.to_string());
            status_of(&e)
        }
        Err(_) => {
            set_error("internal panic".into());
            KhaStatus::Panic
        }
    }
}

unsafe fn text<'a>(p: *const c_char) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure::Null);
    }
    CStr::from_ptr(p).to_str().map_err(|_| Failure::Utf8)
}

unsafe fn put<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure::Null);
    }
    *out = value;
    Ok(())
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    put(out, CString::new(s).map_err(|_| Failure::Utf8)?.into_raw())
}

unsafe fn quiver<'a>(q: *const KhaQuiver) -> Result<&'a Quiver, Failure> {
    q.as_ref().map(|q| &q.0).ok_or(Failure::Null)
}

unsafe fn rational<'a>(r: *const KhaRational) -> Result<&'a RationalFunction, Failure> {
    r.as_ref().map(|r| &r.0).ok_or(Failure::Null)
}

fn boxed_rational(r: RationalFunction) -> *mut KhaRational {
    Box::into_raw(Box::new(KhaRational(r)))
}

/// Message for the last failed call on this thread, or null. Valid until the next call.
#[no_mangle]
pub extern "C" fn kha_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `s` must be null or a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn kha_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a quiver from its JSON description.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn kha_quiver_from_json(json: *const c_char, out: *mut *mut KhaQuiver) -> KhaStatus {
    guard(|| {
        let q = Quiver::from_json(text(json)?)?;
        put(out, Box::into_raw(Box::new(KhaQuiver(q))))
    })
}

/// # Safety
/// `q` must be null or a handle from [`kha_quiver_from_json`].
#[no_mangle]
pub unsafe extern "C" fn kha_quiver_free(q: *mut KhaQuiver) {
    if !q.is_null() {
        drop(Box::from_raw(q));
    }
}

/// # Safety
/// `q` must be a live quiver handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn kha_quiver_vertex_count(q: *const KhaQuiver, out: *mut usize) -> KhaStatus {
    guard(|| put(out, quiver(q)?.n_vertices()))
}

/// Parses a rational function such as `(1 - z[1,1]/z[1,2])/(qh - qh^-1)`.
///
/// # Safety
/// `src` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn kha_rational_parse(src: *const c_char, out: *mut *mut KhaRational) -> KhaStatus {
    guard(|| put(out, boxed_rational(parse_rf(text(src)?)?)))
}

/// # Safety
/// `r` must be null or a rational function handle.
#[no_mangle]
pub unsafe extern "C" fn kha_rational_free(r: *mut KhaRational) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}

/// Canonical text form; free the result with [`kha_string_free`].
///
/// # Safety
/// `r` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn kha_rational_to_string(r: *const KhaRational, out: *mut *mut c_char) -> KhaStatus {
    guard(|| put_string(out, rational(r)?.to_string()))
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KhaBinaryOp {
    Add = 0,
    Sub = 1,
    Mul = 2,
    Div = 3,
}

/// `out = a op b`.
///
/// # Safety
/// `a`, `b` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn kha_rational_binary(op: KhaBinaryOp, a: *const KhaRational, b: *const KhaRational, out: *mut *mut KhaRational) -> KhaStatus {
    guard(|| {
        let (a, b) = (rational(a)?, rational(b)?);
        let r = match op {
            KhaBinaryOp::Add => a.add(b),
            KhaBinaryOp::Sub => a.sub(b),
            KhaBinaryOp::Mul => a.mul(b),
            KhaBinaryOp::Div => a.div(b)?,
        };
        put(out, boxed_rational(r))
    })
}

/// Exact equality of two rational functions.
///
/// # Safety
/// `a`, `b` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn kha_rational_equal(a: *const KhaRational, b: *const KhaRational, out: *mut bool) -> KhaStatus {
    guard(|| put(out, rational(a)?.rf_eq(rational(b)?)))
}

fn single_var(name: &str) -> Result<VarId, Failure> {
    let f = parse_rf(name)?;
    match f.vars().as_slice() {
        [v] if f.rf_eq(&RationalFunction::var(*v)) => Ok(*v),
        _ => Err(KhaError::Parse(format!("`{name}` is not a single variable")).into()),
    }
}

/// Coefficient of `var^d` in the expansion at infinity minus the one at zero.
///
/// # Safety
/// `r` must be a live handle, `var` a NUL-terminated variable name; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn kha_rational_delta_coefficient(r: *const KhaRational, var: *const c_char, d: i32, out: *mut *mut KhaRational) -> KhaStatus {
    guard(|| {
        let v = single_var(text(var)?)?;
        put(out, boxed_rational(delta_coefficient(rational(r)?, v, d)?))
    })
}

fn word(q: &Quiver, s: &str) -> Result<Vec<(usize, i32)>, Failure> {
    Ok(kha_core::cli::parse_word(q, s)?)
}

/// Shuffle product of two words `vertex:d,...`; writes the canonical text of the product.
///
/// # Safety
/// `q` must be a live handle, `left`/`right` NUL-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn kha_shuffle_mul_words(q: *const KhaQuiver, left: *const c_char, right: *const c_char, out: *mut *mut c_char) -> KhaStatus {
    guard(|| {
        let q = quiver(q)?;
        let l = word_to_shuffle(q, &word(q, text(left)?)?)?;
        let r = word_to_shuffle(q, &word(q, text(right)?)?)?;
        put_string(out, shuffle_mul(q, &l, &r)?.value.to_string())
    })
}

/// Runs the relation suite on the framing `w` (e.g. `"1,1"`) for sectors up to `vmax`.
/// `all_passed` reports the verdict; `report_json`, if not null, receives the JSON report.
///
/// # Safety
/// `q` must be a live handle, `w`/`vmax` NUL-terminated; `all_passed` must be writable.
#[no_mangle]
pub unsafe extern "C" fn kha_verify_relations(
    q: *const KhaQuiver,
    w: *const c_char,
    vmax: *const c_char,
    dmin: i32,
    dmax: i32,
    all_passed: *mut bool,
    report_json: *mut *mut c_char,
) -> KhaStatus {
    guard(|| {
        let q = quiver(q)?;
        let w = DimVector::parse(text(w)?)?;
        let vmax = DimVector::parse(text(vmax)?)?;
        let report = relation_suite(q, &w, &vmax, dmin, dmax, Rel5Scope::Auto)?;
        put(all_passed, report.ok())?;
        if !report_json.is_null() {
            put_string(report_json, report.to_json("verify-relations").to_string())?;
        }
        Ok(())
    })
}
