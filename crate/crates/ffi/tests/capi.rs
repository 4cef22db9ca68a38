//! Exercises the C ABI from Rust and from an actual C translation unit
//! compiled against the generated header.

use std::ffi::{CStr, CString};
use std::os::raw::c_char;
use std::path::PathBuf;
use std::ptr;

use cherednik_ffi::{
    chk_hull_contains, chk_jack_poly_json, chk_last_error_message, chk_limit_table_csv,
    chk_nonsym_poly_json, chk_spectral_vector, chk_string_free, chk_sym_poly_json,
    chk_sym_value_at_zero, chk_system_dim, chk_system_free, chk_system_new, chk_verify_suite,
    ChkStatus, ChkSystem,
};

fn cstring(s: &str) -> CString {
    CString::new(s).unwrap()
}

unsafe fn take_string(ptr: *mut c_char) -> String {
    let s = CStr::from_ptr(ptr).to_str().unwrap().to_owned();
    chk_string_free(ptr);
    s
}

unsafe fn new_system(family: &str, rank: usize, kappa: &str) -> *mut ChkSystem {
    let mut handle: *mut ChkSystem = ptr::null_mut();
    let status = chk_system_new(
        cstring(family).as_ptr(),
        rank,
        cstring(kappa).as_ptr(),
        &mut handle,
    );
    assert_eq!(status, ChkStatus::Ok);
    assert!(!handle.is_null());
    handle
}

#[test]
fn nonsym_polynomial_round_trip() {
    unsafe {
        let handle = new_system("BC", 1, "1,0");
        assert_eq!(chk_system_dim(handle), 1);
        let weight = [-1i64];
        let mut out: *mut c_char = ptr::null_mut();
        let status = chk_nonsym_poly_json(handle, weight.as_ptr(), 1, &mut out);
        assert_eq!(status, ChkStatus::Ok);
        let text = take_string(out);
        let value: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(value["spectral"][0], "-3/2");
        assert_eq!(value["terms"][2]["c"], "1/3");
        chk_system_free(handle);
    }
}

#[test]
fn spectral_vector_and_value_at_zero() {
    unsafe {
        let handle = new_system("BC", 2, "1,1,1");
        let weight = [1i64, 0];
        let mut out: *mut c_char = ptr::null_mut();
        assert_eq!(
            chk_spectral_vector(handle, weight.as_ptr(), 2, &mut out),
            ChkStatus::Ok
        );
        let spectral = take_string(out);
        assert_eq!(spectral.split(',').count(), 2);
        let mut out: *mut c_char = ptr::null_mut();
        assert_eq!(
            chk_sym_value_at_zero(handle, weight.as_ptr(), 2, &mut out),
            ChkStatus::Ok
        );
        let value = take_string(out);
        // Cross-check through the symmetric polynomial payload.
        let mut out: *mut c_char = ptr::null_mut();
        assert_eq!(
            chk_sym_poly_json(handle, weight.as_ptr(), 2, &mut out),
            ChkStatus::Ok
        );
        let poly: serde_json::Value = serde_json::from_str(&take_string(out)).unwrap();
        let total = poly["terms"]
            .as_array()
            .unwrap()
            .iter()
            .map(|t| {
                let c = t["c"].as_str().unwrap();
                let (num, den) = match c.split_once('/') {
                    Some((n, d)) => (n.parse::<f64>().unwrap(), d.parse::<f64>().unwrap()),
                    None => (c.parse::<f64>().unwrap(), 1.0),
                };
                num / den
            })
            .sum::<f64>();
        let expected = match value.split_once('/') {
            Some((n, d)) => n.parse::<f64>().unwrap() / d.parse::<f64>().unwrap(),
            None => value.parse::<f64>().unwrap(),
        };
        assert!((total - expected).abs() < 1e-9);
        chk_system_free(handle);
    }
}

#[test]
fn jack_payload() {
    unsafe {
        let eta = [1i64, 0];
        let mut out: *mut c_char = ptr::null_mut();
        let status = chk_jack_poly_json(eta.as_ptr(), 2, cstring("1").as_ptr(), &mut out);
        assert_eq!(status, ChkStatus::Ok);
        let value: serde_json::Value = serde_json::from_str(&take_string(out)).unwrap();
        assert_eq!(value["kind"], "jack");
        assert_eq!(value["terms"][0]["c"], "1/2");
    }
}

#[test]
fn hull_and_limit() {
    unsafe {
        let handle = new_system("BC", 1, "1,0");
        let mut inside: i32 = -1;
        assert_eq!(
            chk_hull_contains(handle, cstring("1/2").as_ptr(), &mut inside),
            ChkStatus::Ok
        );
        assert_eq!(inside, 1);
        assert_eq!(
            chk_hull_contains(handle, cstring("2/3").as_ptr(), &mut inside),
            ChkStatus::Ok
        );
        assert_eq!(inside, 0);
        chk_system_free(handle);

        let weight = [1i64];
        let mut out: *mut c_char = ptr::null_mut();
        let status = chk_limit_table_csv(
            1,
            weight.as_ptr(),
            1,
            cstring("0").as_ptr(),
            cstring("default").as_ptr(),
            cstring("1").as_ptr(),
            cstring("1/2").as_ptr(),
            &mut out,
        );
        assert_eq!(status, ChkStatus::Ok);
        let csv = take_string(out);
        assert!(csv.starts_with("k1,k2,sup_error_poly,sup_error_kernel\n"));
        assert_eq!(csv.trim_end().lines().count(), 4);
    }
}

#[test]
fn verify_suite_through_ffi() {
    unsafe {
        let mut out: *mut c_char = ptr::null_mut();
        let status = chk_verify_suite(cstring("hecke").as_ptr(), 1, ptr::null(), &mut out);
        assert_eq!(status, ChkStatus::Ok);
        let report: serde_json::Value = serde_json::from_str(&take_string(out)).unwrap();
        assert_eq!(report["failed"], 0);
    }
}

#[test]
fn error_paths_and_messages() {
    unsafe {
        let mut handle: *mut ChkSystem = ptr::null_mut();
        // Unknown family.
        let status = chk_system_new(
            cstring("E8").as_ptr(),
            8,
            cstring("1").as_ptr(),
            &mut handle,
        );
        assert_eq!(status, ChkStatus::ParseError);
        let msg = CStr::from_ptr(chk_last_error_message()).to_str().unwrap();
        assert!(msg.contains("E8"), "message was '{msg}'");
        // Negative multiplicity is a domain error.
        let status = chk_system_new(
            cstring("BC").as_ptr(),
            1,
            cstring("-1,0").as_ptr(),
            &mut handle,
        );
        assert_eq!(status, ChkStatus::Ok, "construction alone is fine");
        let weight = [1i64];
        let mut out: *mut c_char = ptr::null_mut();
        let status = chk_nonsym_poly_json(handle, weight.as_ptr(), 1, &mut out);
        assert_eq!(status, ChkStatus::DomainError);
        chk_system_free(handle);
        // Null arguments.
        let status = chk_nonsym_poly_json(ptr::null(), weight.as_ptr(), 1, &mut out);
        assert_eq!(status, ChkStatus::NullArgument);
        // Wrong arity.
        let h = new_system("BC", 2, "1,1,1");
        let status = chk_nonsym_poly_json(h, weight.as_ptr(), 1, &mut out);
        assert_eq!(status, ChkStatus::ParseError);
        chk_system_free(h);
        // Unknown suite.
        let status = chk_verify_suite(cstring("nope").as_ptr(), 0, ptr::null(), &mut out);
        assert_eq!(status, ChkStatus::ParseError);
    }
}

/// Compiles and runs a genuine C client against the generated header and
/// the produced static library.
#[test]
fn c_client_smoke_test() {
    let test_exe = std::env::current_exe().unwrap();
    let deps_dir = test_exe.parent().unwrap();
    let lib_dir = deps_dir.parent().unwrap();
    let static_lib = lib_dir.join("libcherednik_ffi.a");
    assert!(
        static_lib.exists(),
        "staticlib missing at {}",
        static_lib.display()
    );
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let include_dir = manifest.join("include");
    assert!(include_dir.join("cherednik.h").exists());

    let c_source = r#"
#include <assert.h>
#include <stdio.h>
#include <string.h>
#include "cherednik.h"

int main(void) {
    ChkSystem *sys = NULL;
    ChkStatus status = chk_system_new("BC", 1, "1,0", &sys);
    assert(status == CHK_STATUS_OK);
    int64_t weight[1] = {-1};
    char *json = NULL;
    status = chk_nonsym_poly_json(sys, weight, 1, &json);
    assert(status == CHK_STATUS_OK);
    assert(strstr(json, "\"-3/2\"") != NULL);
    assert(strstr(json, "\"1/3\"") != NULL);
    chk_string_free(json);
    int inside = -1;
    status = chk_hull_contains(sys, "1/2", &inside);
    assert(status == CHK_STATUS_OK && inside == 1);
    status = chk_hull_contains(sys, "1", &inside);
    assert(status == CHK_STATUS_OK && inside == 0);
    chk_system_free(sys);
    status = chk_system_new("E8", 8, "1", &sys);
    assert(status == CHK_STATUS_PARSE_ERROR);
    printf("c client ok\n");
    return 0;
}
"#;
    let work = std::env::temp_dir().join(format!("chk_capi_{}", std::process::id()));
    std::fs::create_dir_all(&work).unwrap();
    let c_path = work.join("client.c");
    std::fs::write(&c_path, c_source).unwrap();
    let exe_path = work.join("client");
    let compile = std::process::Command::new("cc")
        .arg(&c_path)
        .arg("-I")
        .arg(&include_dir)
        .arg(&static_lib)
        .arg("-lpthread")
        .arg("-ldl")
        .arg("-lm")
        .arg("-o")
        .arg(&exe_path)
        .output()
        .expect("cc is available");
    assert!(
        compile.status.success(),
        "compile failed: {}",
        String::from_utf8_lossy(&compile.stderr)
    );
    let run = std::process::Command::new(&exe_path).output().unwrap();
    assert!(
        run.status.success(),
        "client failed: {}",
        String::from_utf8_lossy(&run.stderr)
    );
    assert_eq!(String::from_utf8_lossy(&run.stdout), "c client ok\n");
    std::fs::remove_dir_all(&work).ok();
}
