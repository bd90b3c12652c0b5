use kha_ffi::*;
use std::ffi::{CStr, CString};
use std::ptr;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

unsafe fn take_string(p: *mut std::ffi::c_char) -> String {
    let s = CStr::from_ptr(p).to_str().unwrap().to_owned();
    kha_string_free(p);
    s
}

unsafe fn parse(s: &str) -> *mut KhaRational {
    let mut r = ptr::null_mut();
    assert_eq!(kha_rational_parse(c(s).as_ptr(), &mut r), KhaStatus::Ok);
    r
}

#[test]
fn quiver_roundtrip_and_shuffle() {
    unsafe {
        let mut q = ptr::null_mut();
        let json = c(r#"{"vertices":["1"],"edges":[]}"#);
        assert_eq!(kha_quiver_from_json(json.as_ptr(), &mut q), KhaStatus::Ok);
        let mut n = 0usize;
        assert_eq!(kha_quiver_vertex_count(q, &mut n), KhaStatus::Ok);
        assert_eq!(n, 1);
        let mut out = ptr::null_mut();
        assert_eq!(kha_shuffle_mul_words(q, c("1:0").as_ptr(), c("1:0").as_ptr(), &mut out), KhaStatus::Ok);
        assert_eq!(take_string(out), "qh^1 + qh^-1");
        kha_quiver_free(q);
    }
}

#[test]
fn rational_arithmetic() {
    unsafe {
        let a = parse("1/(1 - l/z)");
        let b = parse("l/z");
        let mut s = ptr::null_mut();
        assert_eq!(kha_rational_binary(KhaBinaryOp::Mul, a, b, &mut s), KhaStatus::Ok);
        let mut sum = ptr::null_mut();
        assert_eq!(kha_rational_binary(KhaBinaryOp::Add, s, parse("1"), &mut sum), KhaStatus::Ok);
        let mut eq = false;
        assert_eq!(kha_rational_equal(sum, a, &mut eq), KhaStatus::Ok);
        assert!(eq);

        let mut d = ptr::null_mut();
        assert_eq!(kha_rational_delta_coefficient(a, c("z").as_ptr(), -1, &mut d), KhaStatus::Ok);
        let mut txt = ptr::null_mut();
        assert_eq!(kha_rational_to_string(d, &mut txt), KhaStatus::Ok);
        assert_eq!(take_string(txt), "l^1");
        for r in [a, b, s, sum, d] {
            kha_rational_free(r);
        }
    }
}

#[test]
fn errors_carry_status_and_message() {
    unsafe {
        let mut r = ptr::null_mut();
        assert_eq!(kha_rational_parse(c("1 +").as_ptr(), &mut r), KhaStatus::Parse);
        assert!(r.is_null());
        assert!(!kha_last_error_message().is_null());

        let a = parse("z");
        let zero = parse("0");
        let mut out = ptr::null_mut();
        assert_eq!(kha_rational_binary(KhaBinaryOp::Div, a, zero, &mut out), KhaStatus::DivisionByZero);
        assert_eq!(CStr::from_ptr(kha_last_error_message()).to_str().unwrap(), "division by zero");
        assert_eq!(kha_rational_to_string(ptr::null(), &mut ptr::null_mut()), KhaStatus::NullPointer);
        assert_eq!(kha_rational_parse(c("z").as_ptr(), &mut out), KhaStatus::Ok);
        assert!(kha_last_error_message().is_null());
        kha_rational_free(out);
        kha_rational_free(a);
        kha_rational_free(zero);
    }
}

#[test]
fn relation_suite_through_ffi() {
    unsafe {
        let mut q = ptr::null_mut();
        assert_eq!(kha_quiver_from_json(c(r#"{"vertices":["1"],"edges":[]}"#).as_ptr(), &mut q), KhaStatus::Ok);
        let mut ok = false;
        let mut json = ptr::null_mut();
        assert_eq!(kha_verify_relations(q, c("1").as_ptr(), c("1").as_ptr(), -1, 1, &mut ok, &mut json), KhaStatus::Ok);
        assert!(ok);
        let v: serde_json::Value = serde_json::from_str(&take_string(json)).unwrap();
        assert_eq!(v["schema"], 1);
        assert_eq!(v["ok"], true);
        kha_quiver_free(q);

        let mut j = ptr::null_mut();
        let src = c(r#"{"vertices":["1","2"],"edges":[{"src":"1","dst":"2","id":"a"}]}"#);
        assert_eq!(kha_quiver_from_json(src.as_ptr(), &mut j), KhaStatus::Ok);
        let mut ok = false;
        let st = kha_verify_relations(j, c("1,1").as_ptr(), c("1,1").as_ptr(), 0, 0, &mut ok, ptr::null_mut());
        assert_eq!(st, KhaStatus::Ok);
        kha_quiver_free(j);
    }
}

#[test]
fn header_is_valid_c() {
    let header = concat!(env!("CARGO_MANIFEST_DIR"), "/include/kha.h");
    let src = std::env::temp_dir().join(format!("kha_header_check_{}.c", std::process::id()));
    std::fs::write(&src, format!("#include \"{header}\"\nint main(void) {{ return KHA_STATUS_OK; }}\n")).unwrap();
    match std::process::Command::new("cc").args(["-fsyntax-only", "-Wall", "-Werror"]).arg(&src).status() {
        Ok(s) => assert!(s.success()),
        Err(_) => eprintln!("no C compiler; header syntax not checked"),
    }
    let _ = std::fs::remove_file(src);
}
