//! Exercises the C ABI exactly as a foreign caller would: through the
//! exported symbols, with C strings and out-pointers.

use std::ffi::{c_char, CStr, CString};
use std::ptr;

use zetavals_ffi::*;

fn take_string(ptr: *mut c_char) -> String {
    assert!(!ptr.is_null());
    let s = unsafe { CStr::from_ptr(ptr) }.to_str().unwrap().to_string();
    unsafe { zv_string_free(ptr) };
    s
}

#[test]
fn version_and_status_names() {
    let v = unsafe { CStr::from_ptr(zv_version()) }.to_str().unwrap();
    assert!(!v.is_empty());
    let name = unsafe { CStr::from_ptr(zv_status_name(ZvStatus::BudgetExceeded)) };
    assert_eq!(name.to_str().unwrap(), "budget exceeded");
}

#[test]
fn catalog_lifecycle_and_counting() {
    let name = CString::new("P2").unwrap();
    let mut scheme: *mut ZvScheme = ptr::null_mut();
    let st = unsafe { zv_scheme_from_catalog(name.as_ptr(), &mut scheme) };
    assert_eq!(st, ZvStatus::Ok);
    assert!(!scheme.is_null());

    let mut out: *mut c_char = ptr::null_mut();
    let st = unsafe { zv_count_points(scheme, 2, 2, 0, &mut out) };
    assert_eq!(st, ZvStatus::Ok);
    assert_eq!(take_string(out), "21");

    let mut json: *mut c_char = ptr::null_mut();
    let st = unsafe { zv_scheme_to_json(scheme, &mut json) };
    assert_eq!(st, ZvStatus::Ok);
    let text = take_string(json);
    assert!(text.contains("projective_space"));

    // round-trip the descriptor JSON back into a handle
    let ctext = CString::new(text).unwrap();
    let mut again: *mut ZvScheme = ptr::null_mut();
    let st = unsafe { zv_scheme_from_json(ctext.as_ptr(), &mut again) };
    assert_eq!(st, ZvStatus::Ok);
    unsafe {
        zv_scheme_free(again);
        zv_scheme_free(scheme);
    }
}

#[test]
fn unknown_name_and_null_arguments() {
    let name = CString::new("nosuch").unwrap();
    let mut scheme: *mut ZvScheme = ptr::null_mut();
    let st = unsafe { zv_scheme_from_catalog(name.as_ptr(), &mut scheme) };
    assert_eq!(st, ZvStatus::InvalidArgument);

    let st = unsafe { zv_scheme_from_catalog(ptr::null(), &mut scheme) };
    assert_eq!(st, ZvStatus::NullPointer);

    let good = CString::new("P1").unwrap();
    let st = unsafe { zv_scheme_from_catalog(good.as_ptr(), ptr::null_mut()) };
    assert_eq!(st, ZvStatus::NullPointer);

    let mut out: *mut c_char = ptr::null_mut();
    let st = unsafe { zv_count_points(ptr::null(), 5, 1, 0, &mut out) };
    assert_eq!(st, ZvStatus::NullPointer);
}

#[test]
fn zeta_and_special_value_json() {
    let name = CString::new("E:1,0").unwrap();
    let mut scheme: *mut ZvScheme = ptr::null_mut();
    assert_eq!(unsafe { zv_scheme_from_catalog(name.as_ptr(), &mut scheme) }, ZvStatus::Ok);

    let mut out: *mut c_char = ptr::null_mut();
    assert_eq!(unsafe { zv_zeta_json(scheme, 5, 0, &mut out) }, ZvStatus::Ok);
    let zeta: serde_json::Value = serde_json::from_str(&take_string(out)).unwrap();
    assert_eq!(zeta["num"], serde_json::json!(["1", "-2", "5"]));
    assert_eq!(zeta["den"], serde_json::json!(["1", "-6", "5"]));
    assert!(zeta["weil_bounds"]["pass"].as_bool().unwrap());

    let mut out: *mut c_char = ptr::null_mut();
    assert_eq!(unsafe { zv_special_value_json(scheme, 5, 1, 0, &mut out) }, ZvStatus::Ok);
    let value: serde_json::Value = serde_json::from_str(&take_string(out)).unwrap();
    assert_eq!(value["value"], "1");
    assert_eq!(value["rho"], 1);

    unsafe { zv_scheme_free(scheme) };
}

#[test]
fn milne_verification_and_budget() {
    let name = CString::new("P2").unwrap();
    let mut scheme: *mut ZvScheme = ptr::null_mut();
    assert_eq!(unsafe { zv_scheme_from_catalog(name.as_ptr(), &mut scheme) }, ZvStatus::Ok);
    let mut out: *mut c_char = ptr::null_mut();
    assert_eq!(unsafe { zv_verify_milne_json(scheme, 3, 1, 0, &mut out) }, ZvStatus::Ok);
    let report: serde_json::Value = serde_json::from_str(&take_string(out)).unwrap();
    assert_eq!(report["consistent"], true);
    assert_eq!(report["inferred_syntomic_exp"], 0);
    unsafe { zv_scheme_free(scheme) };

    // a curve whose counts cannot fit the budget
    let name = CString::new("E:1,1").unwrap();
    let mut scheme: *mut ZvScheme = ptr::null_mut();
    assert_eq!(unsafe { zv_scheme_from_catalog(name.as_ptr(), &mut scheme) }, ZvStatus::Ok);
    let mut out: *mut c_char = ptr::null_mut();
    assert_eq!(unsafe { zv_verify_milne_json(scheme, 5, 1, 10, &mut out) }, ZvStatus::BudgetExceeded);
    unsafe { zv_scheme_free(scheme) };
}

#[test]
fn lemma21_suite_from_ffi() {
    let mut out: *mut c_char = ptr::null_mut();
    let st = unsafe { zv_lemma21_suite_json(5, 50, 4, 42, &mut out) };
    assert_eq!(st, ZvStatus::Ok);
    let suite: serde_json::Value = serde_json::from_str(&take_string(out)).unwrap();
    assert_eq!(suite["all_hold"], true);
    assert_eq!(suite["holds"], 50);

    // identical seed, identical bytes
    let mut out1: *mut c_char = ptr::null_mut();
    let mut out2: *mut c_char = ptr::null_mut();
    unsafe {
        assert_eq!(zv_lemma21_suite_json(3, 20, 3, 7, &mut out1), ZvStatus::Ok);
        assert_eq!(zv_lemma21_suite_json(3, 20, 3, 7, &mut out2), ZvStatus::Ok);
    }
    assert_eq!(take_string(out1), take_string(out2));
}

#[test]
fn propagate_ledger_json() {
    let ledger = serde_json::json!({
        "known": ["empty", "pt"],
        "squares": [["empty", "pt", "empty", "dualnum"]],
        "triples": [],
    });
    let text = CString::new(ledger.to_string()).unwrap();
    let mut out: *mut c_char = ptr::null_mut();
    let st = unsafe { zv_propagate_json(text.as_ptr(), &mut out) };
    assert_eq!(st, ZvStatus::Ok);
    let closed: serde_json::Value = serde_json::from_str(&take_string(out)).unwrap();
    let known: Vec<&str> = closed["known"].as_array().unwrap().iter().map(|v| v.as_str().unwrap()).collect();
    assert!(known.contains(&"dualnum"));
}
