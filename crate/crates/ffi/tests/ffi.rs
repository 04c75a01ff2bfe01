use std::ffi::{c_char, CStr, CString};
use std::path::PathBuf;
use std::ptr;

use k0cert_ffi::*;

fn data(name: &str) -> CString {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../core/data")
        .join(name);
    CString::new(std::fs::read(p).unwrap()).unwrap()
}

unsafe fn take(s: *mut c_char) -> String {
    assert!(!s.is_null());
    let out = CStr::from_ptr(s).to_str().unwrap().to_owned();
    k0c_string_free(s);
    out
}

fn last_error() -> String {
    let p = k0c_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_owned()
}

unsafe fn parse(name: &str) -> *mut K0Document {
    let mut doc = ptr::null_mut();
    assert_eq!(k0c_document_parse(data(name).as_ptr(), &mut doc), K0Status::Ok);
    assert!(!doc.is_null());
    doc
}

#[test]
fn shift_is_a_violation_with_identical_json_across_calls() {
    unsafe {
        let doc = parse("compactified_shift.json");
        let params = k0c_params_default();
        let mut kind = K0Verdict::Unknown;
        let mut a = ptr::null_mut();
        let mut b = ptr::null_mut();
        assert_eq!(k0c_check_mf(doc, &params, ptr::null(), &mut kind, &mut a), K0Status::Ok);
        assert_eq!(kind, K0Verdict::Violation);
        assert_eq!(k0c_check_mf(doc, &params, ptr::null(), &mut kind, &mut b), K0Status::Ok);
        let (a, b) = (take(a), take(b));
        assert_eq!(a, b);
        assert!(a.contains("\"kind\": \"VIOLATION\""));
        k0c_document_free(doc);
    }
}

#[test]
fn identity_actions_are_consistent() {
    for name in ["car.json", "fibonacci.json", "minimal.json"] {
        unsafe {
            let doc = parse(name);
            let mut kind = K0Verdict::Violation;
            let params = k0c_params_default();
            assert_eq!(
                k0c_check_mf(doc, &params, ptr::null(), &mut kind, ptr::null_mut()),
                K0Status::Ok
            );
            assert_eq!(kind, K0Verdict::Consistent, "{name}");
            k0c_document_free(doc);
        }
    }
}

#[test]
fn validate_reports_checks() {
    unsafe {
        let doc = parse("three_cycle.json");
        let mut ok = false;
        let mut report = ptr::null_mut();
        assert_eq!(k0c_validate(doc, 3, &mut ok, &mut report), K0Status::Ok);
        assert!(ok);
        let report = take(report);
        assert!(report.lines().all(|l| l.starts_with("ok: ")), "{report}");
        let mut n = 0;
        assert_eq!(k0c_document_generators(doc, &mut n), K0Status::Ok);
        assert_eq!(n, 1);
        k0c_document_free(doc);
    }
}

#[test]
fn serialize_round_trips() {
    unsafe {
        let text = data("diamond.json");
        let doc = parse("diamond.json");
        let mut out = ptr::null_mut();
        assert_eq!(k0c_document_serialize(doc, &mut out), K0Status::Ok);
        assert_eq!(take(out).as_bytes(), text.as_bytes());
        k0c_document_free(doc);
    }
}

#[test]
fn malformed_document_sets_last_error() {
    let bad =
        CString::new(r#"{"schema_version": 1, "system": {"ranks": [2], "connecting_maps": [], "unit": [1]}}"#).unwrap();
    let mut doc = ptr::null_mut();
    let status = unsafe { k0c_document_parse(bad.as_ptr(), &mut doc) };
    assert_eq!(status, K0Status::InvalidDocument);
    assert!(doc.is_null());
    assert!(last_error().starts_with("$.system"), "{}", last_error());
}

#[test]
fn null_arguments_are_rejected() {
    unsafe {
        let mut doc = ptr::null_mut();
        assert_eq!(k0c_document_parse(ptr::null(), &mut doc), K0Status::NullPointer);
        assert!(last_error().contains("json"));
        let mut kind = K0Verdict::Unknown;
        assert_eq!(
            k0c_check_mf(
                ptr::null(),
                &k0c_params_default(),
                ptr::null(),
                &mut kind,
                ptr::null_mut()
            ),
            K0Status::NullPointer
        );
        k0c_document_free(ptr::null_mut());
        k0c_string_free(ptr::null_mut());
    }
}

#[test]
fn invalid_utf8_is_rejected() {
    let bytes = CString::new(vec![0xff, 0xfe]).unwrap();
    let mut doc = ptr::null_mut();
    assert_eq!(
        unsafe { k0c_document_parse(bytes.as_ptr(), &mut doc) },
        K0Status::InvalidUtf8
    );
}

#[test]
fn chain_recurrence_on_shift_and_multi_generator_error() {
    unsafe {
        let doc = parse("compactified_shift.json");
        let mut found = false;
        let params = k0c_params_default();
        assert_eq!(
            k0c_chain_recurrence(doc, &params, &mut found, ptr::null_mut()),
            K0Status::Ok
        );
        assert!(found);
        k0c_document_free(doc);

        let doc = parse("two_swaps.json");
        assert_eq!(
            k0c_chain_recurrence(doc, &params, &mut found, ptr::null_mut()),
            K0Status::InvalidArgument
        );
        assert!(!last_error().is_empty());
        k0c_document_free(doc);
    }
}

#[test]
fn convert_then_parse() {
    unsafe {
        let args = CString::new("points=3 perms=2,3,1").unwrap();
        let mut out = ptr::null_mut();
        assert_eq!(k0c_convert_finite(args.as_ptr(), &mut out), K0Status::Ok);
        let text = CString::new(take(out)).unwrap();
        let mut doc = ptr::null_mut();
        assert_eq!(k0c_document_parse(text.as_ptr(), &mut doc), K0Status::Ok);
        k0c_document_free(doc);

        let args = CString::new("points=3 perms=1,1,2").unwrap();
        assert_eq!(k0c_convert_finite(args.as_ptr(), &mut out), K0Status::InvalidArgument);
    }
}

#[test]
fn status_messages_and_version() {
    for s in [
        K0Status::Ok,
        K0Status::NullPointer,
        K0Status::InvalidUtf8,
        K0Status::InvalidDocument,
        K0Status::InvalidArgument,
        K0Status::Internal,
    ] {
        let m = unsafe { CStr::from_ptr(k0c_status_message(s)) };
        assert!(!m.to_bytes().is_empty());
    }
    let v = unsafe { CStr::from_ptr(k0c_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}

#[test]
fn header_declares_every_entry_point() {
    let header = std::fs::read_to_string(PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("include/k0cert.h")).unwrap();
    for name in [
        "k0c_params_default",
        "k0c_document_parse",
        "k0c_document_free",
        "k0c_document_serialize",
        "k0c_document_generators",
        "k0c_validate",
        "k0c_check_mf",
        "k0c_chain_recurrence",
        "k0c_convert_finite",
        "k0c_string_free",
        "k0c_last_error",
        "k0c_status_message",
        "k0c_version",
        "typedef struct K0Document K0Document;",
        "K0_STATUS_INVALID_DOCUMENT = 3",
        "K0_VERDICT_CONSISTENT = 1",
    ] {
        assert!(header.contains(name), "header lacks {name}");
    }
}
