use std::ffi::{CStr, CString};
use std::ptr;

use fano_wps_ffi::*;

unsafe fn take(s: *mut std::ffi::c_char) -> String {
    let out = CStr::from_ptr(s).to_str().unwrap().to_owned();
    fw_string_free(s);
    out
}

unsafe fn last_error() -> String {
    let p = fw_last_error_message();
    assert!(!p.is_null());
    CStr::from_ptr(p).to_str().unwrap().to_owned()
}

#[test]
fn analyze_round_trip() {
    unsafe {
        let text = CString::new("33,22,6,5").unwrap();
        let mut w = ptr::null_mut();
        assert_eq!(fw_weights_parse(text.as_ptr(), &mut w), FwStatus::Ok);
        let mut wf = false;
        assert_eq!(fw_weights_is_well_formed(w, &mut wf), FwStatus::Ok);
        assert!(wf);

        let mut r = ptr::null_mut();
        assert_eq!(fw_analyze(w, 1_000_000, &mut r), FwStatus::Ok);
        let mut class = FwClass::Smooth;
        assert_eq!(fw_report_class(r, &mut class), FwStatus::Ok);
        assert_eq!(class, FwClass::CanonicalNotTerminal);
        let mut g = true;
        assert_eq!(fw_report_gorenstein(r, &mut g), FwStatus::Ok);
        assert!(!g);

        let mut s = ptr::null_mut();
        assert_eq!(fw_report_fano_index(r, &mut s), FwStatus::Ok);
        assert_eq!(take(s), "66");
        assert_eq!(fw_report_volume(r, &mut s), FwStatus::Ok);
        assert_eq!(take(s), "66/5");
        assert_eq!(fw_report_json(r, &mut s), FwStatus::Ok);
        let v: serde_json::Value = serde_json::from_str(&take(s)).unwrap();
        assert_eq!(v["name"], "P^3(33,22,6,5)");

        fw_report_free(r);
        fw_weights_free(w);
    }
}

#[test]
fn error_codes() {
    unsafe {
        let mut w = ptr::null_mut();
        let bad = CString::new("3,x,1").unwrap();
        assert_eq!(fw_weights_parse(bad.as_ptr(), &mut w), FwStatus::InvalidInput);
        assert!(last_error().contains("x"));
        assert!(w.is_null());

        assert_eq!(fw_weights_parse(ptr::null(), &mut w), FwStatus::NullPointer);

        let xs = [2u64, 2, 1];
        assert_eq!(fw_weights_new(xs.as_ptr(), xs.len(), &mut w), FwStatus::Ok);
        let mut r = ptr::null_mut();
        assert_eq!(fw_analyze(w, 1_000_000, &mut r), FwStatus::Precondition);
        fw_weights_free(w);

        let xs = [7u64, 5, 3, 2];
        assert_eq!(fw_weights_new(xs.as_ptr(), xs.len(), &mut w), FwStatus::Ok);
        assert_eq!(fw_analyze(w, 5, &mut r), FwStatus::Undecided);
        fw_weights_free(w);

        let mut class = FwClass::Smooth;
        let res = [5u64, 3, 2];
        assert_eq!(fw_classify_singularity(7, res.as_ptr(), 3, 3, &mut class), FwStatus::CostCapExceeded);
        assert_eq!(fw_report_class(ptr::null(), &mut class), FwStatus::NullPointer);
    }
}

#[test]
fn success_clears_last_error() {
    unsafe {
        let mut s = ptr::null_mut();
        assert_eq!(fw_sylvester(99, &mut s), FwStatus::InvalidInput);
        assert!(!fw_last_error_message().is_null());
        assert_eq!(fw_sylvester(4, &mut s), FwStatus::Ok);
        assert!(fw_last_error_message().is_null());
        assert_eq!(take(s), "1807");
    }
}

#[test]
fn singularity_classes() {
    unsafe {
        let mut class = FwClass::Smooth;
        let res = [5u64, 3, 2];
        assert_eq!(fw_classify_singularity(7, res.as_ptr(), 3, 1_000_000, &mut class), FwStatus::Ok);
        assert_eq!(class, FwClass::Terminal);
        let res = [1u64, 1];
        assert_eq!(fw_classify_singularity(3, res.as_ptr(), 2, 1_000_000, &mut class), FwStatus::Ok);
        assert_eq!(class, FwClass::NonCanonical);
    }
}

#[test]
fn family_json() {
    unsafe {
        let name = CString::new("terminal-max-index").unwrap();
        let mut s = ptr::null_mut();
        assert_eq!(fw_family_json(name.as_ptr(), 4, &mut s), FwStatus::Ok);
        let v: serde_json::Value = serde_json::from_str(&take(s)).unwrap();
        assert_eq!(v["weights"], serde_json::json!(["430", "287", "123", "21", "20"]));

        let name = CString::new("nope").unwrap();
        assert_eq!(fw_family_json(name.as_ptr(), 4, &mut s), FwStatus::InvalidInput);
    }
}

#[test]
fn header_declares_api() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/fano_wps.h")).unwrap();
    for f in [
        "fw_weights_parse",
        "fw_weights_new",
        "fw_weights_free",
        "fw_analyze",
        "fw_report_class",
        "fw_report_json",
        "fw_report_free",
        "fw_string_free",
        "fw_last_error_message",
        "fw_classify_singularity",
        "fw_family_json",
        "fw_sylvester",
    ] {
        assert!(header.contains(&format!("{}(", f)), "{} missing from header", f);
    }
    assert!(header.contains("typedef struct FwWeights FwWeights;"));
}
