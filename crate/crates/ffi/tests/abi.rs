use std::ffi::{c_char, CStr, CString};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::ptr;

use pmatroid_ffi::*;

const EXAMPLE: &str = include_str!("../../core/tests/data/example.json");
const BRIDGE: &str = include_str!("../../core/tests/data/bridge.json");

fn parse(json: &str) -> *mut PmInstance {
    let c = CString::new(json).unwrap();
    let mut inst = ptr::null_mut();
    assert_eq!(
        unsafe { pm_instance_parse(c.as_ptr(), &mut inst) },
        PmStatus::Ok
    );
    inst
}

unsafe fn take(s: *mut c_char) -> String {
    let out = CStr::from_ptr(s).to_str().unwrap().to_owned();
    pm_string_free(s);
    out
}

fn coords(xs: &[&str]) -> (Vec<CString>, Vec<*const c_char>) {
    let owned: Vec<CString> = xs.iter().map(|x| CString::new(*x).unwrap()).collect();
    let ptrs = owned.iter().map(|c| c.as_ptr()).collect();
    (owned, ptrs)
}

#[test]
fn solve_and_evaluate() {
    let inst = parse(EXAMPLE);
    unsafe {
        let mut size = 0;
        assert_eq!(pm_instance_size(inst, &mut size), PmStatus::Ok);
        assert_eq!(size, 4);
        let mut sol = ptr::null_mut();
        assert_eq!(pm_solve(inst, PmAlgorithm::PerCell, &mut sol), PmStatus::Ok);
        let mut n = 0;
        assert_eq!(pm_solution_region_count(sol, &mut n), PmStatus::Ok);
        assert_eq!(n, 4);
        let (_keep, pt) = coords(&["-3/5", "-3/5"]);
        let (mut value, mut basis) = (ptr::null_mut(), ptr::null_mut());
        assert_eq!(
            pm_solution_evaluate(sol, pt.as_ptr(), 2, &mut value, &mut basis),
            PmStatus::Ok
        );
        assert_eq!(take(value), "-48/5");
        assert_eq!(take(basis), "e,h");
        let mut passed = false;
        assert_eq!(pm_solution_audit(sol, 40, 3, &mut passed), PmStatus::Ok);
        assert!(passed);
        let mut json = ptr::null_mut();
        assert_eq!(pm_solution_to_json(sol, &mut json), PmStatus::Ok);
        assert!(take(json).contains("\"regions\""));
        pm_solution_free(sol);
        pm_instance_free(inst);
    }
}

#[test]
fn interdiction_and_weight_set() {
    let inst = parse(EXAMPLE);
    unsafe {
        let mut vit = ptr::null_mut();
        assert_eq!(
            pm_interdict(inst, PmRankDrop::Strict, &mut vit),
            PmStatus::Ok
        );
        let (_keep, pt) = coords(&["2", "2"]);
        let (mut e, mut v) = (ptr::null_mut(), ptr::null_mut());
        assert_eq!(
            pm_interdiction_evaluate(vit, pt.as_ptr(), 2, &mut e, &mut v),
            PmStatus::Ok
        );
        assert_eq!((take(e), take(v)), ("f".to_string(), "58".to_string()));
        pm_interdiction_free(vit);

        let mut dec = ptr::null_mut();
        assert_eq!(pm_weight_set(inst, &mut dec), PmStatus::Ok);
        let mut n = 0;
        assert_eq!(pm_weight_set_extreme_count(dec, &mut n), PmStatus::Ok);
        assert_eq!(n, 2);
        let mut json = ptr::null_mut();
        assert_eq!(pm_weight_set_to_json(dec, &mut json), PmStatus::Ok);
        assert!(take(json).contains("\"extreme_points\""));
        pm_weight_set_free(dec);
        pm_instance_free(inst);
    }
}

#[test]
fn rank_drop_marker_and_errors() {
    let inst = parse(BRIDGE);
    unsafe {
        let mut vit = ptr::null_mut();
        assert_eq!(
            pm_interdict(inst, PmRankDrop::Strict, &mut vit),
            PmStatus::RankDrop
        );
        assert!(vit.is_null());
        assert!(!pm_last_error().is_null());
        assert_eq!(
            pm_interdict(inst, PmRankDrop::Permissive, &mut vit),
            PmStatus::Ok
        );
        let (_keep, pt) = coords(&["1/2"]);
        let (mut e, mut v) = (ptr::null_mut(), ptr::null_mut());
        assert_eq!(
            pm_interdiction_evaluate(vit, pt.as_ptr(), 1, &mut e, &mut v),
            PmStatus::Ok
        );
        assert_eq!(
            (take(e), take(v)),
            ("bridge".to_string(), "inf".to_string())
        );
        let (_keep, far) = coords(&["9"]);
        assert_eq!(
            pm_interdiction_evaluate(vit, far.as_ptr(), 1, &mut e, &mut v),
            PmStatus::OutsideBox
        );
        pm_interdiction_free(vit);

        let mut sol = ptr::null_mut();
        assert_eq!(
            pm_solve(ptr::null(), PmAlgorithm::Pivot, &mut sol),
            PmStatus::NullArgument
        );
        let mut dec = ptr::null_mut();
        assert_eq!(pm_weight_set(inst, &mut dec), PmStatus::Input);
        let eps = CString::new("2^-20").unwrap();
        assert_eq!(pm_instance_perturb(inst, eps.as_ptr(), 1), PmStatus::Ok);
        pm_instance_free(inst);
    }
    let bad = CString::new("{\"p\": 1}").unwrap();
    let mut inst = ptr::null_mut();
    assert_eq!(
        unsafe { pm_instance_parse(bad.as_ptr(), &mut inst) },
        PmStatus::Input
    );
    let msg = unsafe { CStr::from_ptr(pm_last_error()) }.to_str().unwrap();
    assert!(msg.contains("matroid"), "{msg}");
}

fn find_static_lib() -> Option<PathBuf> {
    let exe = std::env::current_exe().ok()?;
    // target/<profile>/deps/abi-<hash>
    let profile_dir = exe.parent()?.parent()?;
    let lib = profile_dir.join("libpmatroid_ffi.a");
    lib.exists().then_some(lib)
}

fn c_compiler() -> Option<String> {
    ["cc", "clang", "gcc"]
        .into_iter()
        .find(|c| {
            Command::new(c)
                .arg("--version")
                .output()
                .is_ok_and(|o| o.status.success())
        })
        .map(str::to_string)
}

#[test]
fn c_program_links_against_header() {
    let (Some(cc), Some(lib)) = (c_compiler(), find_static_lib()) else {
        eprintln!("skipping: no C compiler or static library");
        return;
    };
    let root = Path::new(env!("CARGO_MANIFEST_DIR"));
    let out = Path::new(env!("CARGO_TARGET_TMPDIR")).join("pm_smoke");
    let status = Command::new(cc)
        .arg(root.join("tests/c/smoke.c"))
        .arg("-I")
        .arg(root.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success(), "C compilation failed");
    let run = Command::new(&out).output().unwrap();
    assert!(
        run.status.success(),
        "{}",
        String::from_utf8_lossy(&run.stderr)
    );
    assert_eq!(String::from_utf8_lossy(&run.stdout).trim(), "ok");
}
