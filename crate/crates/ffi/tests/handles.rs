use std::ffi::{CStr, CString};
use std::ptr;

use abelfield_ffi::*;

fn take_string(s: *mut std::ffi::c_char) -> String {
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_string();
    unsafe { abel_string_free(s) };
    out
}

fn last_error() -> String {
    let p = abel_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_string()
}

#[test]
fn field_invariants() {
    let mut k = ptr::null_mut();
    let gens = [11i64];
    assert_eq!(unsafe { abel_field_new(12, gens.as_ptr(), 1, &mut k) }, AbelStatus::Ok);
    let (mut c, mut d) = (0u64, 0u64);
    assert_eq!(unsafe { abel_field_conductor(k, &mut c) }, AbelStatus::Ok);
    assert_eq!(unsafe { abel_field_degree(k, &mut d) }, AbelStatus::Ok);
    assert_eq!((c, d), (12, 2));
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { abel_field_discriminant(k, &mut s) }, AbelStatus::Ok);
    assert_eq!(take_string(s), "12");
    assert_eq!(unsafe { abel_field_to_json(k, &mut s) }, AbelStatus::Ok);
    let json = CString::new(take_string(s)).unwrap();
    let mut back = ptr::null_mut();
    assert_eq!(unsafe { abel_field_from_json(json.as_ptr(), &mut back) }, AbelStatus::Ok);
    let mut eq = false;
    assert_eq!(unsafe { abel_field_equal(k, back, &mut eq) }, AbelStatus::Ok);
    assert!(eq);
    unsafe {
        abel_field_free(k);
        abel_field_free(back);
    }
}

#[test]
fn dump_reconstruct_report() {
    let mut k = ptr::null_mut();
    assert_eq!(unsafe { abel_field_new(7, [6i64].as_ptr(), 1, &mut k) }, AbelStatus::Ok);
    let mut d = ptr::null_mut();
    assert_eq!(unsafe { abel_oracle_dump(k, 100, &mut d) }, AbelStatus::Ok);
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { abel_dump_to_json(d, &mut s) }, AbelStatus::Ok);
    let text = take_string(s);
    assert!(!text.contains("modulus"));
    let json = CString::new(text).unwrap();
    let mut reloaded = ptr::null_mut();
    assert_eq!(unsafe { abel_dump_from_json(json.as_ptr(), &mut reloaded) }, AbelStatus::Ok);

    let mut r = ptr::null_mut();
    assert_eq!(unsafe { abel_reconstruct(reloaded, &mut r) }, AbelStatus::Ok);
    let mut n_g = 0;
    let mut certified = false;
    assert_eq!(unsafe { abel_report_n_g(r, &mut n_g) }, AbelStatus::Ok);
    assert_eq!(unsafe { abel_report_certified(r, &mut certified) }, AbelStatus::Ok);
    assert_eq!((n_g, certified), (7, true));
    let mut rebuilt = ptr::null_mut();
    assert_eq!(unsafe { abel_report_field(r, &mut rebuilt) }, AbelStatus::Ok);
    let mut eq = false;
    assert_eq!(unsafe { abel_field_equal(k, rebuilt, &mut eq) }, AbelStatus::Ok);
    assert!(eq);
    assert_eq!(unsafe { abel_report_to_json(r, &mut s) }, AbelStatus::Ok);
    assert!(take_string(s).contains("\"verdict\""));

    let mut v = AbelVerdict::Mismatch;
    assert_eq!(unsafe { abel_roundtrip(k, 100, &mut v) }, AbelStatus::Ok);
    assert_eq!(v, AbelVerdict::Match);
    assert_eq!(unsafe { abel_roundtrip(k, 3, &mut v) }, AbelStatus::Ok);
    assert_eq!(v, AbelVerdict::Uncertified);
    unsafe {
        abel_report_free(r);
        abel_field_free(rebuilt);
        abel_dump_free(d);
        abel_dump_free(reloaded);
        abel_field_free(k);
    }
}

#[test]
fn errors_are_reported() {
    let mut k = ptr::null_mut();
    assert_eq!(unsafe { abel_field_new(0, ptr::null(), 0, &mut k) }, AbelStatus::InvalidInput);
    assert!(k.is_null());
    assert!(!last_error().is_empty());

    assert_eq!(unsafe { abel_field_new(5, ptr::null(), 2, &mut k) }, AbelStatus::NullPointer);
    let mut c = 0;
    assert_eq!(unsafe { abel_field_conductor(ptr::null(), &mut c) }, AbelStatus::NullPointer);

    let bad = CString::new(r#"{"modulus": 5}"#).unwrap();
    assert_eq!(unsafe { abel_field_from_json(bad.as_ptr(), &mut k) }, AbelStatus::Schema);
    let mut d = ptr::null_mut();
    let foreign = CString::new(r#"{"modulus": 5, "subgroup_generators": []}"#).unwrap();
    assert_eq!(unsafe { abel_dump_from_json(foreign.as_ptr(), &mut d) }, AbelStatus::Schema);

    let invalid = [0xffu8, 0];
    assert_eq!(
        unsafe { abel_field_from_json(invalid.as_ptr().cast(), &mut k) },
        AbelStatus::InvalidUtf8
    );

    // success clears the message
    assert_eq!(unsafe { abel_field_new(5, ptr::null(), 0, &mut k) }, AbelStatus::Ok);
    assert!(abel_last_error_message().is_null());
    unsafe {
        abel_field_free(k);
        abel_field_free(ptr::null_mut());
        abel_string_free(ptr::null_mut());
    }
}

#[test]
fn header_declares_the_api() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/abelfield.h")).unwrap();
    for name in [
        "typedef struct AbelField AbelField;",
        "typedef struct AbelDump AbelDump;",
        "typedef struct AbelReport AbelReport;",
        "ABEL_STATUS_ORACLE_CORRUPTION = 5",
        "ABEL_VERDICT_UNCERTIFIED = 2",
        "abel_field_new(",
        "abel_oracle_dump(",
        "abel_reconstruct(",
        "abel_roundtrip(",
        "abel_last_error_message(void)",
    ] {
        assert!(header.contains(name), "missing {name}");
    }
}
