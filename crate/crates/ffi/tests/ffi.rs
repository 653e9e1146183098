use std::ffi::{c_char, CStr, CString};
use std::ptr;

use rba_ffi::*;

const EX1: &str = include_str!("../../core/fixtures/example1.rba.json");
const EX2: &str = include_str!("../../core/fixtures/example2.mrba.json");
const FIG3: &str = include_str!("../../core/fixtures/figure3.model.json");

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(rba_last_error()) }.to_string_lossy().into_owned()
}

unsafe fn take(s: *mut c_char) -> String {
    let out = CStr::from_ptr(s).to_string_lossy().into_owned();
    rba_string_free(s);
    out
}

#[test]
fn algebra_round_trip() {
    unsafe {
        let mut a = ptr::null_mut();
        assert_eq!(rba_algebra_from_json(c(EX1).as_ptr(), &mut a), RbaStatus::Ok);
        let mut n = 0usize;
        assert_eq!(rba_algebra_size(a, &mut n), RbaStatus::Ok);
        assert_eq!(n, 12);
        let (mut passed, mut report) = (false, ptr::null_mut());
        assert_eq!(rba_algebra_check(a, &mut passed, &mut report), RbaStatus::Ok);
        assert!(passed);
        assert_eq!(take(report).trim(), "passed");
        let (mut x, mut y, mut z) = (0u32, 0u32, 0u32);
        assert_eq!(rba_algebra_find(a, c("X_B").as_ptr(), &mut x), RbaStatus::Ok);
        assert_eq!(rba_algebra_find(a, c("X_R").as_ptr(), &mut y), RbaStatus::Ok);
        assert_eq!(rba_algebra_meet(a, x, y, &mut z), RbaStatus::Ok);
        let mut label = ptr::null_mut();
        assert_eq!(rba_algebra_label(a, z, &mut label), RbaStatus::Ok);
        assert_eq!(take(label), "X_R");
        assert_eq!(rba_algebra_neg(a, x, &mut z), RbaStatus::Ok);
        assert_eq!(rba_algebra_relative_top(a, z, &mut z), RbaStatus::Ok);
        assert_eq!(rba_algebra_label(a, z, &mut label), RbaStatus::Ok);
        assert_eq!(take(label), "1_B");
        assert_eq!(rba_algebra_join(a, x, 99, &mut z), RbaStatus::OutOfRange);
        assert!(last_error().contains("out of range"));
        let mut json = ptr::null_mut();
        assert_eq!(rba_algebra_filters_json(a, &mut json), RbaStatus::Ok);
        let v: serde_json::Value = serde_json::from_str(&take(json)).unwrap();
        assert_eq!(v.as_array().unwrap().len(), 5);
        rba_algebra_free(a);
    }
}

#[test]
fn errors_are_reported() {
    unsafe {
        let mut a = ptr::null_mut();
        assert_eq!(rba_algebra_from_json(ptr::null(), &mut a), RbaStatus::NullPointer);
        assert_eq!(rba_algebra_from_json(c("{").as_ptr(), &mut a), RbaStatus::Parse);
        assert!(!last_error().is_empty());
        let bad = [0xffu8, 0];
        assert_eq!(rba_algebra_from_json(bad.as_ptr() as *const c_char, &mut a), RbaStatus::InvalidUtf8);
        assert_eq!(rba_algebra_from_json(c(EX1).as_ptr(), ptr::null_mut()), RbaStatus::NullPointer);
        let mut m = ptr::null_mut();
        assert_eq!(rba_mrba_from_json(c(EX1).as_ptr(), &mut m), RbaStatus::Parse);
        rba_algebra_free(ptr::null_mut());
        rba_string_free(ptr::null_mut());
    }
}

#[test]
fn modal_algebra_evaluation() {
    unsafe {
        let mut m = ptr::null_mut();
        assert_eq!(rba_mrba_from_json(c(EX2).as_ptr(), &mut m), RbaStatus::Ok);
        let mut passed = false;
        assert_eq!(rba_mrba_check(m, true, &mut passed, ptr::null_mut()), RbaStatus::Ok);
        assert!(passed);
        let h = c("p=X_B,q=X_R");
        let mut valid = false;
        assert_eq!(rba_mrba_valid(m, c("q -> p").as_ptr(), h.as_ptr(), &mut valid), RbaStatus::Ok);
        assert!(valid);
        assert_eq!(rba_mrba_valid(m, c("p").as_ptr(), h.as_ptr(), &mut valid), RbaStatus::Ok);
        assert!(!valid);
        let mut x = 0u32;
        assert_eq!(rba_mrba_evaluate(m, c("p &").as_ptr(), h.as_ptr(), &mut x), RbaStatus::Parse);
        assert_eq!(rba_mrba_evaluate(m, c("p").as_ptr(), c("p=nope").as_ptr(), &mut x), RbaStatus::OutOfRange);
        rba_mrba_free(m);
    }
}

#[test]
fn model_validity() {
    unsafe {
        let mut m = ptr::null_mut();
        assert_eq!(rba_model_from_json(c(FIG3).as_ptr(), &mut m), RbaStatus::Ok);
        let mut passed = false;
        assert_eq!(rba_model_check(m, &mut passed, ptr::null_mut()), RbaStatus::Ok);
        assert!(passed);
        let mut valid = true;
        assert_eq!(rba_model_valid(m, c("K 0").as_ptr(), &mut valid), RbaStatus::Ok);
        assert!(!valid);
        assert_eq!(rba_model_valid(m, c("~K 0").as_ptr(), &mut valid), RbaStatus::Ok);
        assert!(valid);
        assert_eq!(rba_model_valid(m, c("r").as_ptr(), &mut valid), RbaStatus::Invalid);
        rba_model_free(m);
    }
}

#[test]
fn header_declares_every_export() {
    let h = include_str!("../include/rba.h");
    for name in ["rba_last_error", "rba_string_free", "rba_algebra_from_json", "rba_mrba_valid", "rba_model_valid", "typedef struct RbaAlgebra RbaAlgebra"] {
        assert!(h.contains(name), "{name}");
    }
}
