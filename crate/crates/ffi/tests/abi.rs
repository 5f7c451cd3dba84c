use std::ffi::{c_char, CStr, CString};
use std::ptr;

use homlie_ffi::*;

const EXAMPLE1: &str = include_str!("../../../data/example1.json");
const LIE: &str = include_str!("../../../data/lie_example.json");
const AFF1: &str = include_str!("../../../data/aff1_bialgebra.json");
const BROKEN: &str = include_str!("../../../data/broken.json");

fn last_message() -> String {
    let p = homlie_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

fn algebra(json: &str) -> *mut HomlieAlgebra {
    let text = CString::new(json).unwrap();
    let mut g = ptr::null_mut();
    assert_eq!(unsafe { homlie_algebra_from_json(text.as_ptr(), &mut g) }, HomlieStatus::Ok);
    assert!(!g.is_null());
    g
}

fn rows(g: *const HomlieAlgebra, max: usize) -> Vec<(usize, usize, usize, usize)> {
    unsafe {
        let mut c = ptr::null_mut();
        assert_eq!(homlie_cohomology(g, max, &mut c), HomlieStatus::Ok);
        let mut len = 0;
        assert_eq!(homlie_cohomology_len(c, &mut len), HomlieStatus::Ok);
        let out = (0..len)
            .map(|i| {
                let mut r = HomlieRow::default();
                assert_eq!(homlie_cohomology_row(c, i, &mut r), HomlieStatus::Ok);
                assert_eq!(r.degree, i + 1);
                (r.dim_cochains, r.dim_image, r.dim_kernel, r.dim_cohomology)
            })
            .collect();
        let mut r = HomlieRow::default();
        assert_eq!(homlie_cohomology_row(c, len, &mut r), HomlieStatus::OutOfRange);
        homlie_cohomology_free(c);
        out
    }
}

#[test]
fn cohomology_table_through_the_abi() {
    let g = algebra(EXAMPLE1);
    assert_eq!(rows(g, 4), [(9, 8, 1, 1), (18, 8, 10, 2), (12, 2, 10, 2), (3, 0, 3, 1)]);
    let mut n = 0;
    assert_eq!(unsafe { homlie_algebra_dim(g, &mut n) }, HomlieStatus::Ok);
    assert_eq!(n, 3);
    unsafe { homlie_algebra_free(g) };
}

#[test]
fn twist_through_the_abi() {
    let g = algebra(LIE);
    let gamma = CString::new(include_str!("../../../data/lie_gamma.json")).unwrap();
    let mut tw = ptr::null_mut();
    assert_eq!(unsafe { homlie_algebra_yau_twist(g, gamma.as_ptr(), &mut tw) }, HomlieStatus::Ok);
    assert_eq!(rows(tw, 4), [(9, 6, 3, 3), (18, 7, 11, 5), (12, 2, 10, 3), (3, 0, 3, 1)]);
    let mut s: *mut c_char = ptr::null_mut();
    assert_eq!(unsafe { homlie_algebra_to_json(tw, &mut s) }, HomlieStatus::Ok);
    let text = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_owned();
    unsafe { homlie_string_free(s) };
    let back = algebra(&text);
    assert_eq!(rows(back, 4), rows(tw, 4));
    unsafe {
        homlie_algebra_free(back);
        homlie_algebra_free(tw);
        homlie_algebra_free(g);
    }
}

#[test]
fn errors_are_reported_per_thread() {
    let bad = CString::new(r#"{"format_version": 1, "dim": 3, "bracket": {"1,2": {"3": "1/0"}}}"#).unwrap();
    let mut g = ptr::null_mut();
    assert_eq!(unsafe { homlie_algebra_from_json(bad.as_ptr(), &mut g) }, HomlieStatus::Parse);
    assert!(g.is_null());
    assert_eq!(homlie_last_error_code(), HomlieStatus::Parse);
    assert!(last_message().contains(r#"$."bracket"."1,2"."3""#));

    std::thread::spawn(|| {
        assert_eq!(homlie_last_error_code(), HomlieStatus::Ok);
        assert!(homlie_last_error_message().is_null());
    })
    .join()
    .unwrap();

    let ok = algebra(EXAMPLE1);
    assert_eq!(homlie_last_error_code(), HomlieStatus::Ok);
    unsafe { homlie_algebra_free(ok) };
}

#[test]
fn null_and_bad_arguments() {
    unsafe {
        let mut g = ptr::null_mut();
        assert_eq!(homlie_algebra_from_json(ptr::null(), &mut g), HomlieStatus::NullPointer);
        let text = CString::new(EXAMPLE1).unwrap();
        assert_eq!(homlie_algebra_from_json(text.as_ptr(), ptr::null_mut()), HomlieStatus::NullPointer);
        let bytes = b"\xff\0";
        assert_eq!(homlie_algebra_from_json(bytes.as_ptr().cast(), &mut g), HomlieStatus::InvalidUtf8);
        let mut n = 0;
        assert_eq!(homlie_algebra_dim(ptr::null(), &mut n), HomlieStatus::NullPointer);
        let g = algebra(EXAMPLE1);
        let mut c = ptr::null_mut();
        assert_eq!(homlie_cohomology(g, 0, &mut c), HomlieStatus::Degree);
        let wrong = CString::new(r#"[["1", "0"], ["0", "1"]]"#).unwrap();
        let mut tw = ptr::null_mut();
        assert_ne!(homlie_algebra_yau_twist(g, wrong.as_ptr(), &mut tw), HomlieStatus::Ok);
        assert!(tw.is_null());
        homlie_algebra_free(g);
        homlie_algebra_free(ptr::null_mut());
        homlie_cohomology_free(ptr::null_mut());
        homlie_bialgebra_free(ptr::null_mut());
        homlie_string_free(ptr::null_mut());
    }
}

#[test]
fn validation_reports_the_witness() {
    let broken = algebra(BROKEN);
    let mut valid = true;
    assert_eq!(unsafe { homlie_algebra_validate(broken, &mut valid) }, HomlieStatus::Ok);
    assert!(!valid);
    assert!(last_message().contains("[1, 2, 3]"), "{}", last_message());
    let g = algebra(EXAMPLE1);
    assert_eq!(unsafe { homlie_algebra_validate(g, &mut valid) }, HomlieStatus::Ok);
    assert!(valid);
    assert_eq!(homlie_last_error_code(), HomlieStatus::Ok);
    unsafe {
        homlie_algebra_free(g);
        homlie_algebra_free(broken);
    }
}

#[test]
fn bialgebra_complex_through_the_abi() {
    unsafe {
        let text = CString::new(AFF1).unwrap();
        let mut b = ptr::null_mut();
        assert_eq!(homlie_bialgebra_from_json(text.as_ptr(), &mut b), HomlieStatus::Ok);
        let mut valid = false;
        assert_eq!(homlie_bialgebra_validate(b, &mut valid), HomlieStatus::Ok);
        assert!(valid);
        let mut failures = usize::MAX;
        assert_eq!(homlie_bialgebra_d_squared_failures(b, 4, &mut failures), HomlieStatus::Ok);
        assert_eq!(failures, 0);
        homlie_bialgebra_free(b);

        let plain = CString::new(EXAMPLE1).unwrap();
        assert_eq!(homlie_bialgebra_from_json(plain.as_ptr(), &mut b), HomlieStatus::Invalid);
        assert!(last_message().contains("cobracket"));
    }
}

#[test]
fn version_is_static() {
    let v = unsafe { CStr::from_ptr(homlie_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}

/// Builds tests/c/smoke.c against the generated header and the static library.
/// Skipped when no C compiler or static archive is available.
#[test]
fn c_program_links_against_the_header() {
    let Ok(exe) = std::env::current_exe() else { return };
    let Some(profile_dir) = exe.parent().and_then(|deps| deps.parent()) else { return };
    let archive = profile_dir.join("libhomlie_ffi.a");
    let manifest = std::path::Path::new(env!("CARGO_MANIFEST_DIR"));
    if !archive.exists() || std::process::Command::new("cc").arg("--version").output().is_err() {
        eprintln!("skipping: no C compiler or {}", archive.display());
        return;
    }
    let dir = tempfile::tempdir().unwrap();
    let bin = dir.path().join("smoke");
    let status = std::process::Command::new("cc")
        .args(["-std=c99", "-Wall", "-Werror", "-I"])
        .arg(manifest.join("include"))
        .arg(manifest.join("tests/c/smoke.c"))
        .arg(&archive)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&bin)
        .status()
        .unwrap();
    assert!(status.success(), "C compile failed");
    let out = std::process::Command::new(&bin).output().unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text, "1 9 8 1 1\n2 18 8 10 2\n3 12 2 10 2\n4 3 0 3 1\nstatus 3 null\nmessage located\n");
}
