//! C interface. Instances and results are opaque handles owned by the caller
//! and released with the matching `*_free` function. Every fallible call
//! returns an [`FmStatus`]; on failure [`fm_last_error_message`] describes
//! the error for the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use fair_matroid::algorithms::RunConfig;
use fair_matroid::harness::{self, AlgoSpec, GenParams, Instance, InstanceKind, Outcome};
use fair_matroid::{ElementSet, Error};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FmStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Malformed = 3,
    Precondition = 4,
    Infeasible = 5,
    Config = 6,
    Invariant = 7,
    Io = 8,
    TooLarge = 9,
    Panic = 10,
}

/// Opaque problem instance.
pub struct FmInstance(Instance);

/// Opaque result of one run.
pub struct FmResult {
    elements: Vec<usize>,
    f_value: f64,
    fav: usize,
    iterations: usize,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> FmStatus {
    match e {
        Error::Malformed(_) | Error::Json(_) | Error::Csv(_) => FmStatus::Malformed,
        Error::Precondition(_) => FmStatus::Precondition,
        Error::TooLarge { .. } => FmStatus::TooLarge,
        Error::Infeasible(_) => FmStatus::Infeasible,
        Error::Config(_) => FmStatus::Config,
        Error::Invariant(_) => FmStatus::Invariant,
        Error::Io(_) => FmStatus::Io,
    }
}

enum Failure {
    Status(FmStatus, String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

/// Runs `f`, converting errors and panics into a status code.
fn guard(f: impl FnOnce() -> Result<(), Failure>) -> FmStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => FmStatus::Ok,
        Ok(Err(Failure::Lib(e))) => {
            set_error(e.to_string());
            status_of(&e)
        }
        Ok(Err(Failure::Status(s, msg))) => {
            set_error(msg);
            s
        }
        Err(_) => {
            set_error("panic inside fair_matroid".into());
            FmStatus::Panic
        }
    }
}

fn null(what: &str) -> Failure {
    Failure::Status(FmStatus::NullPointer, format!("{what} is null"))
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure::Status(FmStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn out_ptr<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, Failure> {
    p.as_mut().ok_or_else(|| null(what))
}

/// Message for the last failed call on this thread, or null. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn fm_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Parses and validates an instance from a JSON string.
///
/// # Safety
/// `json` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fm_instance_from_json(
    json: *const c_char,
    out: *mut *mut FmInstance,
) -> FmStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        let inst = Instance::from_json(read_str(json, "json")?)?;
        *out = Box::into_raw(Box::new(FmInstance(inst)));
        Ok(())
    })
}

/// Canonical JSON for an instance; release with [`fm_string_free`].
///
/// # Safety
/// `inst` must come from this library; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fm_instance_to_json(
    inst: *const FmInstance,
    out: *mut *mut c_char,
) -> FmStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        let inst = inst.as_ref().ok_or_else(|| null("instance"))?;
        let text = inst.0.to_json()?;
        *out = CString::new(text).expect("JSON has no nul").into_raw();
        Ok(())
    })
}

/// Number of elements in the instance, or 0 for a null handle.
///
/// # Safety
/// `inst` must be null or come from this library.
#[no_mangle]
pub unsafe extern "C" fn fm_instance_universe_size(inst: *const FmInstance) -> usize {
    inst.as_ref().map_or(0, |i| i.0.universe_size())
}

/// # Safety
/// `inst` must be null or come from this library, and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn fm_instance_free(inst: *mut FmInstance) {
    if !inst.is_null() {
        drop(Box::from_raw(inst));
    }
}

/// Generates a synthetic instance. `kind` is "coverage", "clustering" or
/// "recommender"; `n` and `colors` of 0 select the kind's defaults.
///
/// # Safety
/// `kind` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fm_generate(
    kind: *const c_char,
    n: usize,
    colors: usize,
    r: usize,
    seed: u64,
    out: *mut *mut FmInstance,
) -> FmStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        let kind: InstanceKind = read_str(kind, "kind")?.parse()?;
        let mut params = GenParams::new(kind, r, seed);
        if n > 0 {
            params.n = n;
        }
        if colors > 0 {
            params.colors = colors;
        }
        *out = Box::into_raw(Box::new(FmInstance(harness::gen_instance(&params)?)));
        Ok(())
    })
}

/// Runs `algo` ("our", "our:0.3", "det:0.5", "twopass", "lbmi", "ubmi",
/// "random"). `epsilon` applies when the tag carries none.
///
/// # Safety
/// `inst` must come from this library, `algo` must be a nul-terminated
/// string and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fm_run(
    inst: *const FmInstance,
    algo: *const c_char,
    epsilon: f64,
    seed: u64,
    out: *mut *mut FmResult,
) -> FmStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        let inst = inst.as_ref().ok_or_else(|| null("instance"))?;
        let algo: AlgoSpec = read_str(algo, "algo")?.parse()?;
        let cfg = RunConfig::new(algo.algorithm, epsilon, seed);
        let rec = match harness::run_once(&inst.0, &algo, &cfg, None)? {
            Outcome::Done(rec) => rec,
            Outcome::Infeasible(msg) => return Err(Error::Infeasible(msg).into()),
        };
        *out = Box::into_raw(Box::new(FmResult {
            f_value: rec.f_value,
            fav: rec.fav,
            iterations: rec.iterations,
            elements: rec.solution.into_vec(),
        }));
        Ok(())
    })
}

/// # Safety
/// `res` must be null or come from [`fm_run`].
#[no_mangle]
pub unsafe extern "C" fn fm_result_size(res: *const FmResult) -> usize {
    res.as_ref().map_or(0, |r| r.elements.len())
}

/// # Safety
/// `res` must be null or come from [`fm_run`].
#[no_mangle]
pub unsafe extern "C" fn fm_result_f_value(res: *const FmResult) -> f64 {
    res.as_ref().map_or(f64::NAN, |r| r.f_value)
}

/// # Safety
/// `res` must be null or come from [`fm_run`].
#[no_mangle]
pub unsafe extern "C" fn fm_result_fav(res: *const FmResult) -> usize {
    res.as_ref().map_or(0, |r| r.fav)
}

/// # Safety
/// `res` must be null or come from [`fm_run`].
#[no_mangle]
pub unsafe extern "C" fn fm_result_iterations(res: *const FmResult) -> usize {
    res.as_ref().map_or(0, |r| r.iterations)
}

/// Copies up to `cap` solution elements (ascending) into `buf` and returns
/// the total number of elements.
///
/// # Safety
/// `res` must be null or come from [`fm_run`]; `buf` must hold `cap` values
/// or be null with `cap == 0`.
#[no_mangle]
pub unsafe extern "C" fn fm_result_elements(res: *const FmResult, buf: *mut usize, cap: usize) -> usize {
    let Some(r) = res.as_ref() else { return 0 };
    if !buf.is_null() {
        let k = cap.min(r.elements.len());
        ptr::copy_nonoverlapping(r.elements.as_ptr(), buf, k);
    }
    r.elements.len()
}

/// # Safety
/// `res` must be null or come from [`fm_run`], and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn fm_result_free(res: *mut FmResult) {
    if !res.is_null() {
        drop(Box::from_raw(res));
    }
}

/// Checks that `elements` is independent and within every upper bound.
/// Writes the fairness violation to `fav` when it is non-null.
///
/// # Safety
/// `inst` must come from this library; `elements` must hold `len` values
/// (or be null with `len == 0`); `passed` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fm_verify(
    inst: *const FmInstance,
    elements: *const usize,
    len: usize,
    passed: *mut bool,
    fav: *mut usize,
) -> FmStatus {
    guard(|| {
        let passed = out_ptr(passed, "passed")?;
        let inst = inst.as_ref().ok_or_else(|| null("instance"))?;
        let ids = match (elements.is_null(), len) {
            (_, 0) => Vec::new(),
            (true, _) => return Err(null("elements")),
            (false, _) => std::slice::from_raw_parts(elements, len).to_vec(),
        };
        let report = harness::verify(&inst.0, &ElementSet::from_unsorted(ids))?;
        *passed = report.passed();
        if let Some(f) = fav.as_mut() {
            *f = report.fav;
        }
        Ok(())
    })
}

/// Releases a string returned by this library.
///
/// # Safety
/// `s` must be null or come from this library, and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn fm_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
