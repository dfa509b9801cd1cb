//! C ABI over the pmatroid solvers.
//!
//! Every handle is opaque and owned by the caller, who releases it with the
//! matching `*_free` function. Functions return a [`PmStatus`]; on failure the
//! message is available from [`pm_last_error`] on the same thread. Strings
//! returned through out-parameters are freed with [`pm_string_free`].
//! Rationals cross the boundary as strings such as `"-3/5"`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use pmatroid::geometry::perturb_costs;
use pmatroid::geometry::perturb_weights;
use pmatroid::interdiction::{
    evaluate_interdiction, solve_interdiction, InterdictionSolution, RankDropPolicy,
};
use pmatroid::io::{
    emit_solution, interdiction_document, parametric_document, parse_instance, weight_set_document,
    Instance,
};
use pmatroid::oracle::{sample_audit, AuditTarget};
use pmatroid::param::{evaluate_solution, solve, Algorithm, ParametricSolution};
use pmatroid::rational::{format_rational, parse_rational, ExtRational, Rational};
use pmatroid::wsd::{decompose_weight_set, WeightSetDecomposition};
use pmatroid::Error;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PmStatus {
    Ok = 0,
    NullArgument = 1,
    Input = 2,
    Degenerate = 3,
    OutsideBox = 4,
    RankDrop = 5,
    CapExceeded = 6,
    Internal = 7,
    Panic = 8,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PmAlgorithm {
    Pivot = 0,
    PerCell = 1,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PmRankDrop {
    Permissive = 0,
    Strict = 1,
}

/// A parsed, validated instance.
pub struct PmInstance {
    inner: Instance,
}

/// A parametric solution together with its instance.
pub struct PmSolution {
    instance: Instance,
    inner: ParametricSolution,
}

pub struct PmInterdiction {
    instance: Instance,
    inner: InterdictionSolution,
}

pub struct PmWeightSet {
    instance: Instance,
    inner: WeightSetDecomposition,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(err: &Error) -> PmStatus {
    match err {
        Error::Input(_) | Error::Io(_) | Error::EmptyBox(_) => PmStatus::Input,
        Error::Degenerate(_) | Error::NoInteriorPoint => PmStatus::Degenerate,
        Error::OutsideBox => PmStatus::OutsideBox,
        Error::RankDrop(_) => PmStatus::RankDrop,
        Error::CapExceeded { .. } => PmStatus::CapExceeded,
        Error::Internal(_) => PmStatus::Internal,
    }
}

enum Failure {
    Null(&'static str),
    Core(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

/// Runs `f`, recording any error or panic for [`pm_last_error`].
fn guard(f: impl FnOnce() -> Result<(), Failure>) -> PmStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => PmStatus::Ok,
        Ok(Err(Failure::Null(name))) => {
            set_error(format!("null argument: {name}"));
            PmStatus::NullArgument
        }
        Ok(Err(Failure::Core(e))) => {
            set_error(e.to_string());
            status_of(&e)
        }
        Err(_) => {
            set_error("panic inside pmatroid".into());
            PmStatus::Panic
        }
    }
}

unsafe fn arg<'a, T>(p: *const T, name: &'static str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or(Failure::Null(name))
}

unsafe fn out<'a, T>(p: *mut T, name: &'static str) -> Result<&'a mut T, Failure> {
    p.as_mut().ok_or(Failure::Null(name))
}

unsafe fn text<'a>(p: *const c_char, name: &'static str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure::Null(name));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure::Core(Error::Input(format!("{name} is not UTF-8"))))
}

unsafe fn point(coords: *const *const c_char, len: usize) -> Result<Vec<Rational>, Failure> {
    if len == 0 {
        return Ok(Vec::new());
    }
    if coords.is_null() {
        return Err(Failure::Null("point"));
    }
    std::slice::from_raw_parts(coords, len)
        .iter()
        .map(|&c| Ok(parse_rational(text(c, "point coordinate")?)?))
        .collect()
}

fn c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " "))
        .unwrap_or_default()
        .into_raw()
}

/// The message of the last failed call on this thread, or null. The pointer
/// stays valid until the next failing call on this thread.
#[no_mangle]
pub extern "C" fn pm_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Frees a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn pm_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a JSON instance document.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out_instance` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pm_instance_parse(
    json: *const c_char,
    out_instance: *mut *mut PmInstance,
) -> PmStatus {
    guard(|| {
        let slot = out(out_instance, "out_instance")?;
        *slot = ptr::null_mut();
        let inner = parse_instance(text(json, "json")?)?;
        *slot = Box::into_raw(Box::new(PmInstance { inner }));
        Ok(())
    })
}

/// # Safety
/// `instance` must come from [`pm_instance_parse`] or be null.
#[no_mangle]
pub unsafe extern "C" fn pm_instance_free(instance: *mut PmInstance) {
    if !instance.is_null() {
        drop(Box::from_raw(instance));
    }
}

/// Number of ground set elements.
///
/// # Safety
/// `instance` must be a live handle; `out_size` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pm_instance_size(
    instance: *const PmInstance,
    out_size: *mut usize,
) -> PmStatus {
    guard(|| {
        *out(out_size, "out_size")? = arg(instance, "instance")?.inner.matroid.ground_size();
        Ok(())
    })
}

/// Perturbs weights and costs in place by `epsilon` (a rational string).
///
/// # Safety
/// `instance` must be a live handle; `epsilon` a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn pm_instance_perturb(
    instance: *mut PmInstance,
    epsilon: *const c_char,
    seed: u64,
) -> PmStatus {
    guard(|| {
        let inst = &mut out(instance, "instance")?.inner;
        let eps = parse_rational(text(epsilon, "epsilon")?)?;
        inst.weights = inst.weights.take().map(|w| perturb_weights(&w, seed, &eps));
        inst.costs = inst.costs.take().map(|c| perturb_costs(&c, seed, &eps));
        Ok(())
    })
}

/// Decomposes the instance's parameter box.
///
/// # Safety
/// `instance` must be a live handle; `out_solution` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pm_solve(
    instance: *const PmInstance,
    algorithm: PmAlgorithm,
    out_solution: *mut *mut PmSolution,
) -> PmStatus {
    guard(|| {
        let slot = out(out_solution, "out_solution")?;
        *slot = ptr::null_mut();
        let inst = &arg(instance, "instance")?.inner;
        let algorithm = match algorithm {
            PmAlgorithm::Pivot => Algorithm::Pivot,
            PmAlgorithm::PerCell => Algorithm::PerCell,
        };
        let inner = solve(&inst.matroid, inst.weights()?, &inst.bbox, algorithm)?;
        *slot = Box::into_raw(Box::new(PmSolution {
            instance: inst.clone(),
            inner,
        }));
        Ok(())
    })
}

/// # Safety
/// `solution` must come from [`pm_solve`] or be null.
#[no_mangle]
pub unsafe extern "C" fn pm_solution_free(solution: *mut PmSolution) {
    if !solution.is_null() {
        drop(Box::from_raw(solution));
    }
}

/// # Safety
/// `solution` must be a live handle; `out_count` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pm_solution_region_count(
    solution: *const PmSolution,
    out_count: *mut usize,
) -> PmStatus {
    guard(|| {
        *out(out_count, "out_count")? = arg(solution, "solution")?.inner.regions.len();
        Ok(())
    })
}

/// The optimal value at a point and a minimum basis as comma-separated labels.
///
/// # Safety
/// `coords` must point to `len` NUL-terminated strings; out-parameters must be
/// writable. Returned strings are freed with [`pm_string_free`].
#[no_mangle]
pub unsafe extern "C" fn pm_solution_evaluate(
    solution: *const PmSolution,
    coords: *const *const c_char,
    len: usize,
    out_value: *mut *mut c_char,
    out_basis: *mut *mut c_char,
) -> PmStatus {
    guard(|| {
        let value_slot = out(out_value, "out_value")?;
        let basis_slot = out(out_basis, "out_basis")?;
        let sol = arg(solution, "solution")?;
        let x = point(coords, len)?;
        let (basis, value) = evaluate_solution(&sol.inner, &x)?;
        let m = &sol.instance.matroid;
        let labels: Vec<&str> = basis.elements().iter().map(|&e| m.label(e)).collect();
        *value_slot = c_string(format_rational(&value));
        *basis_slot = c_string(labels.join(","));
        Ok(())
    })
}

/// Canonical JSON of the solution.
///
/// # Safety
/// `solution` must be a live handle; `out_json` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pm_solution_to_json(
    solution: *const PmSolution,
    out_json: *mut *mut c_char,
) -> PmStatus {
    guard(|| {
        let slot = out(out_json, "out_json")?;
        let sol = arg(solution, "solution")?;
        *slot = c_string(emit_solution(&parametric_document(
            &sol.instance.matroid,
            &sol.inner,
        )));
        Ok(())
    })
}

/// Compares the solution with brute force at `samples` seeded points.
///
/// # Safety
/// `solution` must be a live handle; `out_passed` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pm_solution_audit(
    solution: *const PmSolution,
    samples: usize,
    seed: u64,
    out_passed: *mut bool,
) -> PmStatus {
    guard(|| {
        let passed = out(out_passed, "out_passed")?;
        let sol = arg(solution, "solution")?;
        let inst = &sol.instance;
        let report = sample_audit(
            &inst.matroid,
            inst.weights()?,
            AuditTarget::Parametric(&sol.inner),
            samples,
            seed,
        )?;
        *passed = report.passed;
        Ok(())
    })
}

/// Computes the most vital element over the parameter box.
///
/// # Safety
/// `instance` must be a live handle; `out_solution` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pm_interdict(
    instance: *const PmInstance,
    rank_drop: PmRankDrop,
    out_solution: *mut *mut PmInterdiction,
) -> PmStatus {
    guard(|| {
        let slot = out(out_solution, "out_solution")?;
        *slot = ptr::null_mut();
        let inst = &arg(instance, "instance")?.inner;
        let policy = match rank_drop {
            PmRankDrop::Permissive => RankDropPolicy::Permissive,
            PmRankDrop::Strict => RankDropPolicy::Strict,
        };
        let inner = solve_interdiction(&inst.matroid, inst.weights()?, &inst.bbox, policy)?;
        *slot = Box::into_raw(Box::new(PmInterdiction {
            instance: inst.clone(),
            inner,
        }));
        Ok(())
    })
}

/// # Safety
/// `solution` must come from [`pm_interdict`] or be null.
#[no_mangle]
pub unsafe extern "C" fn pm_interdiction_free(solution: *mut PmInterdiction) {
    if !solution.is_null() {
        drop(Box::from_raw(solution));
    }
}

/// The most vital element's label and the interdicted value (`"inf"` when
/// deleting it drops the rank).
///
/// # Safety
/// As for [`pm_solution_evaluate`].
#[no_mangle]
pub unsafe extern "C" fn pm_interdiction_evaluate(
    solution: *const PmInterdiction,
    coords: *const *const c_char,
    len: usize,
    out_element: *mut *mut c_char,
    out_value: *mut *mut c_char,
) -> PmStatus {
    guard(|| {
        let element_slot = out(out_element, "out_element")?;
        let value_slot = out(out_value, "out_value")?;
        let sol = arg(solution, "solution")?;
        let x = point(coords, len)?;
        let (e, v) = evaluate_interdiction(&sol.inner, &x)?;
        *element_slot = c_string(sol.instance.matroid.label(e).to_string());
        *value_slot = c_string(match v {
            ExtRational::Finite(q) => format_rational(&q),
            other => other.to_string(),
        });
        Ok(())
    })
}

/// # Safety
/// `solution` must be a live handle; `out_json` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pm_interdiction_to_json(
    solution: *const PmInterdiction,
    out_json: *mut *mut c_char,
) -> PmStatus {
    guard(|| {
        let slot = out(out_json, "out_json")?;
        let sol = arg(solution, "solution")?;
        *slot = c_string(emit_solution(&interdiction_document(
            &sol.instance.matroid,
            &sol.inner,
        )));
        Ok(())
    })
}

/// Weight set decomposition of the instance's cost vectors.
///
/// # Safety
/// `instance` must be a live handle; `out_decomposition` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pm_weight_set(
    instance: *const PmInstance,
    out_decomposition: *mut *mut PmWeightSet,
) -> PmStatus {
    guard(|| {
        let slot = out(out_decomposition, "out_decomposition")?;
        *slot = ptr::null_mut();
        let inst = &arg(instance, "instance")?.inner;
        let inner = decompose_weight_set(&inst.matroid, inst.costs()?)?;
        *slot = Box::into_raw(Box::new(PmWeightSet {
            instance: inst.clone(),
            inner,
        }));
        Ok(())
    })
}

/// # Safety
/// `decomposition` must come from [`pm_weight_set`] or be null.
#[no_mangle]
pub unsafe extern "C" fn pm_weight_set_free(decomposition: *mut PmWeightSet) {
    if !decomposition.is_null() {
        drop(Box::from_raw(decomposition));
    }
}

/// Number of extreme supported nondominated points.
///
/// # Safety
/// `decomposition` must be a live handle; `out_count` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pm_weight_set_extreme_count(
    decomposition: *const PmWeightSet,
    out_count: *mut usize,
) -> PmStatus {
    guard(|| {
        *out(out_count, "out_count")? = arg(decomposition, "decomposition")?
            .inner
            .extreme_points
            .len();
        Ok(())
    })
}

/// # Safety
/// `decomposition` must be a live handle; `out_json` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pm_weight_set_to_json(
    decomposition: *const PmWeightSet,
    out_json: *mut *mut c_char,
) -> PmStatus {
    guard(|| {
        let slot = out(out_json, "out_json")?;
        let dec = arg(decomposition, "decomposition")?;
        *slot = c_string(emit_solution(&weight_set_document(
            &dec.instance.matroid,
            &dec.inner,
        )));
        Ok(())
    })
}
