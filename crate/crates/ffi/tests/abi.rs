use std::ffi::{c_char, CStr, CString};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::ptr;

use twosided::report::{ReportBody, ReportDocument};
use twosided::{random_with_rank, GenConfig, SolveOutcome};
use twosided_ffi::*;

fn parse(text: &str) -> *mut TsMatrix {
    let c = CString::new(text).unwrap();
    let mut m = ptr::null_mut();
    assert_eq!(unsafe { ts_matrix_parse(c.as_ptr(), &mut m) }, TsStatus::Ok);
    m
}

unsafe fn take_string(s: *mut c_char) -> String {
    let owned = CStr::from_ptr(s).to_str().unwrap().to_owned();
    ts_string_free(s);
    owned
}

fn last_error() -> String {
    let p = ts_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_owned()
}

fn entry(m: *const TsMatrix, i: usize, j: usize) -> String {
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { ts_matrix_entry(m, i, j, &mut s) }, TsStatus::Ok);
    unsafe { take_string(s) }
}

#[test]
fn inverse_round_trip() {
    let a = parse("2 2\n1 2\n3 4\n");
    let mut x = ptr::null_mut();
    unsafe {
        assert_eq!(ts_right_inverse(a, &mut x, ptr::null_mut()), TsStatus::Ok);
        assert_eq!((ts_matrix_rows(x), ts_matrix_cols(x)), (2, 2));
        let got: Vec<String> = (0..4).map(|k| entry(x, k / 2, k % 2)).collect();
        assert_eq!(got, ["-2", "1", "3/2", "-1/2"]);

        let (mut ab, mut ba) = (false, false);
        assert_eq!(ts_two_sided_check(a, x, &mut ab, &mut ba), TsStatus::Ok);
        assert!(ab && ba);

        let mut xa = ptr::null_mut();
        assert_eq!(ts_matrix_mul(x, a, &mut xa), TsStatus::Ok);
        let id = ts_matrix_identity(2);
        assert!(ts_matrix_equal(xa, id));
        let mut diff = ptr::null_mut();
        assert_eq!(ts_matrix_sub(xa, id, &mut diff), TsStatus::Ok);
        let mut rank = usize::MAX;
        assert_eq!(ts_rref(diff, ptr::null_mut(), &mut rank), TsStatus::Ok);
        assert_eq!(rank, 0);

        for m in [a, x, xa, id, diff] {
            ts_matrix_free(m);
        }
    }
}

#[test]
fn from_i64_with_denominators() {
    let nums = [1i64, -1, 0, 6];
    let dens = [2i64, 3, 5, 4];
    let mut m = ptr::null_mut();
    unsafe {
        assert_eq!(
            ts_matrix_from_i64(2, 2, nums.as_ptr(), dens.as_ptr(), &mut m),
            TsStatus::Ok
        );
        let mut s = ptr::null_mut();
        assert_eq!(ts_matrix_to_string(m, &mut s), TsStatus::Ok);
        assert_eq!(take_string(s), "2 2\n1/2 -1/3\n0 3/2\n");
        ts_matrix_free(m);

        let zero_den = [1i64, 0, 1, 1];
        let mut bad = ptr::null_mut();
        assert_eq!(
            ts_matrix_from_i64(2, 2, nums.as_ptr(), zero_den.as_ptr(), &mut bad),
            TsStatus::ZeroDenominator
        );
        assert!(bad.is_null());

        let mut empty = ptr::null_mut();
        assert_eq!(
            ts_matrix_from_i64(0, 0, ptr::null(), ptr::null(), &mut empty),
            TsStatus::Ok
        );
        assert_eq!(ts_matrix_rows(empty), 0);
        ts_matrix_free(empty);
    }
}

#[test]
fn error_codes() {
    let wide = parse("2 3\n1 2 3\n4 5 6\n");
    let square = parse("2 2\n1 0\n0 1\n");
    let mut out = ptr::null_mut();
    unsafe {
        assert_eq!(
            ts_right_inverse(wide, &mut out, ptr::null_mut()),
            TsStatus::NotSquare
        );
        assert_eq!(
            ts_matrix_mul(wide, square, &mut out),
            TsStatus::DimensionMismatch
        );
        assert_eq!(
            last_error(),
            "mat_mul: dimension mismatch between 2x3 and 2x2"
        );
        assert_eq!(
            ts_matrix_sub(wide, square, &mut out),
            TsStatus::DimensionMismatch
        );
        assert!(out.is_null());

        assert_eq!(
            ts_matrix_mul(ptr::null(), square, &mut out),
            TsStatus::NullPointer
        );
        assert_eq!(
            ts_matrix_mul(square, square, ptr::null_mut()),
            TsStatus::NullPointer
        );
        assert_eq!(
            ts_matrix_parse(ptr::null(), &mut out),
            TsStatus::NullPointer
        );

        let bad_utf8 = [0xffu8, 0xfe, 0];
        assert_eq!(
            ts_matrix_parse(bad_utf8.as_ptr().cast(), &mut out),
            TsStatus::InvalidUtf8
        );

        let mut s = ptr::null_mut();
        assert_eq!(
            ts_matrix_entry(square, 2, 0, &mut s),
            TsStatus::InvalidArgument
        );
        assert!(s.is_null());

        assert_eq!(
            ts_generate_with_rank(1, 3, 4, &mut out),
            TsStatus::InvalidArgument
        );
        assert_eq!(ts_matrix_rows(ptr::null()), 0);
        assert!(!ts_matrix_equal(ptr::null(), square));
        ts_matrix_free(ptr::null_mut());
        ts_string_free(ptr::null_mut());

        ts_matrix_free(wide);
        ts_matrix_free(square);
    }
}

#[test]
fn parse_error_carries_location() {
    let c = CString::new("2 2\n1 2\n3\n").unwrap();
    let mut m = ptr::null_mut();
    assert_eq!(
        unsafe { ts_matrix_parse(c.as_ptr(), &mut m) },
        TsStatus::ParseError
    );
    let msg = last_error();
    assert!(
        msg.contains("line 3") && msg.contains("expected 2 entries"),
        "{msg}"
    );
}

#[test]
fn singular_reports_first_infeasible_unit() {
    let a = parse("2 2\n1 0\n0 0\n");
    let mut x = ptr::null_mut();
    let mut first = usize::MAX;
    unsafe {
        assert_eq!(ts_right_inverse(a, &mut x, &mut first), TsStatus::Singular);
        assert!(x.is_null());
        assert_eq!(first, 1);
        assert!(last_error().contains("e2"));
        ts_matrix_free(a);
    }
}

#[test]
fn solve_json_matches_engine_schema() {
    let a = parse("2 2\n1 1\n1 1\n");
    let feasible = parse("2 1\n2\n2\n");
    let infeasible = parse("2 1\n1\n2\n");
    unsafe {
        let mut s = ptr::null_mut();
        assert_eq!(ts_solve_json(a, feasible, &mut s), TsStatus::Ok);
        let doc = ReportDocument::from_json(&take_string(s)).unwrap();
        let ReportBody::Solve(r) = doc.body else {
            panic!("wrong body")
        };
        assert!(matches!(r.outcome, SolveOutcome::Infinite { .. }));

        let mut s = ptr::null_mut();
        assert_eq!(ts_solve_json(a, infeasible, &mut s), TsStatus::Singular);
        let doc = ReportDocument::from_json(&take_string(s)).unwrap();
        let ReportBody::Solve(r) = doc.body else {
            panic!("wrong body")
        };
        assert!(!r.outcome.is_feasible());

        let mut s = ptr::null_mut();
        assert_eq!(ts_solve_json(a, a, &mut s), TsStatus::DimensionMismatch);
        for m in [a, feasible, infeasible] {
            ts_matrix_free(m);
        }
    }
}

#[test]
fn imt_over_generated_matrices() {
    for seed in 0..10u64 {
        for n in 1..6 {
            unsafe {
                let mut m = ptr::null_mut();
                assert_eq!(ts_generate_invertible(seed, n, &mut m), TsStatus::Ok);
                let mut invertible = false;
                let mut json = ptr::null_mut();
                assert_eq!(
                    ts_imt_report_json(m, 5, seed, &mut invertible, &mut json),
                    TsStatus::Ok
                );
                assert!(invertible);
                let doc = ReportDocument::from_json(&take_string(json)).unwrap();
                let ReportBody::Imt(r) = doc.body else {
                    panic!("wrong body")
                };
                assert!(r.consistent() && r.invertible);
                ts_matrix_free(m);

                let r = seed as usize % n;
                let mut m = ptr::null_mut();
                assert_eq!(ts_generate_with_rank(seed, n, r, &mut m), TsStatus::Ok);
                let expected = random_with_rank(&GenConfig::new(seed, n), r).unwrap();
                let mut text = ptr::null_mut();
                assert_eq!(ts_matrix_to_string(m, &mut text), TsStatus::Ok);
                assert_eq!(
                    take_string(text),
                    twosided::format::render_matrix_file(&expected)
                );
                let mut invertible = true;
                assert_eq!(
                    ts_imt_report_json(m, 5, seed, &mut invertible, ptr::null_mut()),
                    TsStatus::Ok
                );
                assert!(!invertible);
                ts_matrix_free(m);
            }
        }
    }
}

#[test]
fn errors_are_thread_local() {
    let c = CString::new("oops").unwrap();
    let mut m = ptr::null_mut();
    assert_eq!(
        unsafe { ts_matrix_parse(c.as_ptr(), &mut m) },
        TsStatus::ParseError
    );
    std::thread::spawn(|| assert!(ts_last_error_message().is_null()))
        .join()
        .unwrap();
    assert!(!ts_last_error_message().is_null());
}

fn ffi_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

#[test]
fn header_declares_every_export() {
    let header = std::fs::read_to_string(ffi_dir().join("include/twosided.h")).unwrap();
    let source = std::fs::read_to_string(ffi_dir().join("src/lib.rs")).unwrap();
    let exports: Vec<&str> = source
        .split("extern \"C\" fn ")
        .skip(1)
        .map(|rest| rest.split('(').next().unwrap())
        .collect();
    assert!(exports.len() >= 18, "{exports:?}");
    for name in exports {
        assert!(
            header.contains(&format!("{name}(")),
            "{name} missing from header"
        );
    }
    assert!(header.contains("typedef struct TsMatrix TsMatrix;"));
    assert!(header.contains("TS_STATUS_SINGULAR = 7"));
}

/// Directory holding `libtwosided_ffi.a` for the profile this test was built in.
fn artifact_dir() -> PathBuf {
    let exe = std::env::current_exe().unwrap();
    // target/<profile>/deps/abi-<hash>
    exe.parent().and_then(Path::parent).unwrap().to_path_buf()
}

#[test]
fn c_program_links_against_static_library() {
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    if Command::new(&cc).arg("--version").output().is_err() {
        eprintln!("skipping: no C compiler `{cc}`");
        return;
    }
    let lib = artifact_dir().join("libtwosided_ffi.a");
    assert!(lib.exists(), "{} not built", lib.display());
    let out_dir = std::env::temp_dir().join(format!("twosided-ffi-smoke-{}", std::process::id()));
    std::fs::create_dir_all(&out_dir).unwrap();
    let exe = out_dir.join("smoke");
    let status = Command::new(&cc)
        .arg("-std=c99")
        .arg("-Wall")
        .arg("-Werror")
        .arg("-I")
        .arg(ffi_dir().join("include"))
        .arg(ffi_dir().join("tests/c/smoke.c"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .unwrap();
    assert!(status.success(), "C compilation failed");
    let run = Command::new(&exe).output().unwrap();
    let _ = std::fs::remove_dir_all(&out_dir);
    assert!(
        run.status.success(),
        "{}",
        String::from_utf8_lossy(&run.stderr)
    );
    assert_eq!(String::from_utf8_lossy(&run.stdout), "ok\n");
}
