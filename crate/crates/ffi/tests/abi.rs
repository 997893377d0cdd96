use std::ffi::{c_int, CStr, CString};
use std::ptr;

use ricf_ffi::*;

const DUMP: &str = "# comment\na b a c\nb e\na f f f\n";

fn matrix() -> *mut RicfMatrix {
    let text = CString::new(DUMP).unwrap();
    let mut m = ptr::null_mut();
    assert_eq!(unsafe { ricf_matrix_from_dump(text.as_ptr(), &mut m) }, RicfStatus::Ok);
    assert!(!m.is_null());
    m
}

fn last_error() -> String {
    let p = ricf_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn sizes_terms_and_free() {
    let m = matrix();
    let (mut t, mut d, mut n) = (0usize, 0usize, 0u64);
    assert_eq!(unsafe { ricf_matrix_sizes(m, &mut t, &mut d, &mut n) }, RicfStatus::Ok);
    assert_eq!((t, d, n), (5, 3, 10));

    let name = CString::new("f").unwrap();
    let mut id = usize::MAX;
    assert_eq!(unsafe { ricf_matrix_term_id(m, name.as_ptr(), &mut id) }, RicfStatus::Ok);
    let mut buf = [0 as std::ffi::c_char; 8];
    let mut len = 0usize;
    assert_eq!(
        unsafe { ricf_matrix_term(m, id, buf.as_mut_ptr(), buf.len(), &mut len) },
        RicfStatus::Ok
    );
    assert_eq!(unsafe { CStr::from_ptr(buf.as_ptr()) }.to_str().unwrap(), "f");
    assert_eq!(len, 1);

    // exactly len bytes leaves no room for the terminator
    assert_eq!(
        unsafe { ricf_matrix_term(m, id, buf.as_mut_ptr(), 1, &mut len) },
        RicfStatus::BufferTooSmall
    );
    assert_eq!(len, 1);
    assert_eq!(
        unsafe { ricf_matrix_term(m, 99, buf.as_mut_ptr(), buf.len(), &mut len) },
        RicfStatus::OutOfRange
    );

    let missing = CString::new("zzz").unwrap();
    assert_eq!(
        unsafe { ricf_matrix_term_id(m, missing.as_ptr(), &mut id) },
        RicfStatus::OutOfRange
    );
    assert!(last_error().contains("zzz"));
    unsafe { ricf_matrix_free(m) };
    unsafe { ricf_matrix_free(ptr::null_mut()) };
}

#[test]
fn scores_match_library() {
    let m = matrix();
    let lib = ricf::build_matrix(vec![
        vec!["a", "b", "a", "c"],
        vec!["b", "e"],
        vec!["a", "f", "f", "f"],
    ])
    .unwrap();
    for name in ["chi_sq", "cg", "icb", "dop", "ricf"] {
        let measure: ricf::Measure = name.parse().unwrap();
        let want = ricf::measures::score_measure(&lib, measure).unwrap();
        let mut got = vec![0.0; 5];
        let c = CString::new(name).unwrap();
        assert_eq!(
            unsafe { ricf_score(m, c.as_ptr(), got.as_mut_ptr(), got.len()) },
            RicfStatus::Ok
        );
        assert_eq!(got, want.scores(), "{name}");
    }
    let bogus = CString::new("tfidf").unwrap();
    let mut out = vec![0.0; 5];
    assert_eq!(
        unsafe { ricf_score(m, bogus.as_ptr(), out.as_mut_ptr(), 5) },
        RicfStatus::UnknownMeasure
    );
    let cg = CString::new("cg").unwrap();
    assert_eq!(
        unsafe { ricf_score(m, cg.as_ptr(), out.as_mut_ptr(), 4) },
        RicfStatus::BufferTooSmall
    );
    unsafe { ricf_matrix_free(m) };
}

#[test]
fn model_functions() {
    let mut v = 0.0;
    assert_eq!(unsafe { ricf_expected_icf(0.1, 100, &mut v) }, RicfStatus::Ok);
    assert_eq!(v, ricf::stats::expected_icf(0.1, 100).unwrap());
    assert_eq!(unsafe { ricf_expected_icf(1.5, 100, &mut v) }, RicfStatus::Domain);

    let sizes = [3u64, 4, 5];
    assert_eq!(unsafe { ricf_expected_idf(0.2, sizes.as_ptr(), 3, &mut v) }, RicfStatus::Ok);
    assert_eq!(v, ricf::stats::expected_idf_exact(0.2, &sizes).unwrap());

    let m = matrix();
    let (mut theta, mut clamped) = (0.0, -1 as c_int);
    assert_eq!(
        unsafe { ricf_estimate_theta(m, v, &mut theta, &mut clamped) },
        RicfStatus::Ok
    );
    assert!(theta > 0.0 && theta < 1.0);
    assert!(clamped == 0 || clamped == 1);
    unsafe { ricf_matrix_free(m) };
}

#[test]
fn exact_tail_and_infeasible() {
    let thetas = [0.5, 0.5];
    let sizes = [2u64, 2];
    let mut p = 0.0;
    assert_eq!(
        unsafe { ricf_exact_tail(thetas.as_ptr(), 2, sizes.as_ptr(), 2, 0, 2, 1, 1000, &mut p) },
        RicfStatus::Ok
    );
    let want = ricf::exact::exact_tail(
        &ricf::exact::ToyConfig::new(thetas.to_vec(), sizes.to_vec(), 0).unwrap(),
        2,
        1,
        1000,
    )
    .unwrap();
    assert_eq!(p, want);
    assert_eq!(
        unsafe { ricf_exact_tail(thetas.as_ptr(), 2, sizes.as_ptr(), 2, 0, 2, 1, 1, &mut p) },
        RicfStatus::Infeasible
    );
    assert!(!last_error().is_empty());
}

#[test]
fn null_and_bad_input() {
    let mut m = ptr::null_mut();
    assert_eq!(
        unsafe { ricf_matrix_from_dump(ptr::null(), &mut m) },
        RicfStatus::NullPointer
    );
    assert!(m.is_null());
    let empty = CString::new("# only a comment\n").unwrap();
    assert_eq!(
        unsafe { ricf_matrix_from_dump(empty.as_ptr(), &mut m) },
        RicfStatus::EmptyCorpus
    );
    let bad = [0xffu8, 0xfe, 0];
    assert_eq!(
        unsafe { ricf_matrix_from_dump(bad.as_ptr().cast(), &mut m) },
        RicfStatus::InvalidUtf8
    );
    let (mut t, mut d, mut n) = (0usize, 0usize, 0u64);
    assert_eq!(
        unsafe { ricf_matrix_sizes(ptr::null(), &mut t, &mut d, &mut n) },
        RicfStatus::NullPointer
    );
    assert!(last_error().contains("matrix"));
}

#[test]
fn header_declares_every_export() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/ricf.h"))
        .expect("header is generated by the build script");
    for name in [
        "ricf_last_error_message",
        "ricf_matrix_from_dump",
        "ricf_matrix_free",
        "ricf_matrix_sizes",
        "ricf_matrix_term_id",
        "ricf_matrix_term",
        "ricf_score",
        "ricf_expected_icf",
        "ricf_expected_idf",
        "ricf_estimate_theta",
        "ricf_exact_tail",
        "RICF_STATUS_INFEASIBLE",
    ] {
        assert!(header.contains(name), "{name} missing from header");
    }
}
