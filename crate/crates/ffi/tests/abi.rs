use std::ffi::{CStr, CString};
use std::ptr;

use tenscalc_ffi::*;

fn take(s: *mut std::ffi::c_char) -> String {
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_string();
    unsafe { tc_string_free(s) };
    out
}

fn last_error() -> String {
    let p = tc_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn schwarzschild_round_trip() {
    let name = CString::new("exteriorschwarzschild").unwrap();
    let mut m = ptr::null_mut();
    assert_eq!(unsafe { tc_metric_from_catalog(name.as_ptr(), true, &mut m) }, TcStatus::Ok);
    assert_eq!(unsafe { tc_metric_dim(m) }, 4);
    let mut ty = TcPetrov::O;
    assert_eq!(unsafe { tc_metric_petrov(m, &mut ty) }, TcStatus::Ok);
    assert_eq!(ty, TcPetrov::D);
    let t = CString::new("ricci").unwrap();
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { tc_metric_compute(m, t.as_ptr(), &mut s) }, TcStatus::Ok);
    assert_eq!(take(s), "{}");
    let t = CString::new("christoffel2").unwrap();
    assert_eq!(unsafe { tc_metric_compute(m, t.as_ptr(), &mut s) }, TcStatus::Ok);
    assert!(take(s).contains("\"t,r,t\""));
    unsafe { tc_metric_free(m) };
}

#[test]
fn metric_text_and_show() {
    let name = CString::new("polar").unwrap();
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { tc_catalog_show(name.as_ptr(), &mut s) }, TcStatus::Ok);
    let text = CString::new(take(s)).unwrap();
    let mut m = ptr::null_mut();
    assert_eq!(unsafe { tc_metric_from_text(text.as_ptr(), false, &mut m) }, TcStatus::Ok);
    let t = CString::new("scalar").unwrap();
    assert_eq!(unsafe { tc_metric_compute(m, t.as_ptr(), &mut s) }, TcStatus::Ok);
    assert_eq!(take(s), "\"0\"");
    // not four-dimensional
    let mut ty = TcPetrov::O;
    assert_eq!(unsafe { tc_metric_petrov(m, &mut ty) }, TcStatus::ComputeFailed);
    unsafe { tc_metric_free(m) };
}

#[test]
fn errors() {
    let mut m = ptr::null_mut();
    let name = CString::new("nowhere").unwrap();
    assert_eq!(unsafe { tc_metric_from_catalog(name.as_ptr(), false, &mut m) }, TcStatus::InvalidInput);
    assert!(last_error().contains("nowhere"));
    assert!(m.is_null());
    assert_eq!(unsafe { tc_metric_from_catalog(ptr::null(), false, &mut m) }, TcStatus::NullPointer);
    let bad = CString::new("[chart]\ncoords = x, y\n[metric]\nrow = 1, 0\nrow = 0, (\n").unwrap();
    assert_eq!(unsafe { tc_metric_from_text(bad.as_ptr(), false, &mut m) }, TcStatus::InvalidInput);
    assert!(last_error().contains("line 5"));
    let raw = [0xffu8, 0];
    assert_eq!(unsafe { tc_metric_from_text(raw.as_ptr().cast(), false, &mut m) }, TcStatus::InvalidUtf8);
    let mut s = ptr::null_mut();
    let t = CString::new("ricci").unwrap();
    assert_eq!(unsafe { tc_metric_compute(ptr::null(), t.as_ptr(), &mut s) }, TcStatus::NullPointer);
    assert_eq!(unsafe { tc_metric_dim(ptr::null()) }, 0);
    unsafe {
        tc_metric_free(ptr::null_mut());
        tc_string_free(ptr::null_mut());
    }
}

#[test]
fn algebra() {
    let kind = CString::new("clifford").unwrap();
    let dims = [0usize, 0, 2];
    let mut a = ptr::null_mut();
    assert_eq!(unsafe { tc_algebra_new(kind.as_ptr(), dims.as_ptr(), 3, &mut a) }, TcStatus::Ok);
    let e = CString::new("v1.v2.v1.v2").unwrap();
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { tc_algebra_simplify(a, e.as_ptr(), &mut s) }, TcStatus::Ok);
    assert_eq!(take(s), "-1");
    unsafe { tc_algebra_free(a) };
    let kind = CString::new("lie_envelop").unwrap();
    assert_eq!(unsafe { tc_algebra_new(kind.as_ptr(), ptr::null(), 0, &mut a) }, TcStatus::InvalidInput);
}

#[test]
fn indicial() {
    let e = CString::new("g([-d,-c],[])*g([b,c],[])*T([a,-b],[])").unwrap();
    let g = CString::new("g").unwrap();
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { tc_indicial_contract(e.as_ptr(), g.as_ptr(), &mut s) }, TcStatus::Ok);
    assert_eq!(take(s), "T([a,-d],[])");
}

#[test]
fn errors_are_per_thread() {
    let name = CString::new("nowhere").unwrap();
    let mut m = ptr::null_mut();
    unsafe { tc_metric_from_catalog(name.as_ptr(), false, &mut m) };
    std::thread::spawn(|| assert!(tc_last_error().is_null())).join().unwrap();
}

#[test]
fn header_compiles_as_c() {
    let dir = env!("CARGO_MANIFEST_DIR");
    let Ok(status) = std::process::Command::new("cc")
        .args(["-fsyntax-only", "-Wall", "-Werror", "-x", "c", &format!("{dir}/include/tenscalc.h")])
        .status()
    else {
        eprintln!("no C compiler, skipped");
        return;
    };
    assert!(status.success());
}
