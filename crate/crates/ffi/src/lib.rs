//! C ABI over `fano_wps`. Objects are opaque handles freed by their matching
//! `*_free` function; strings returned through `char **` out-parameters are
//! owned by the caller and released with `fw_string_free`. Every function
//! returns an `FwStatus`; on failure `fw_last_error_message` describes it.

use std::cell::RefCell;
use std::collections::BTreeMap;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use fano_wps::arith::{sylvester, Nat};
use fano_wps::error::Error;
use fano_wps::families::{generate, FamilyId};
use fano_wps::report::{analyze, VerifyMode, WpsReport};
use fano_wps::singularity::{CyclicQuotientSingularity, SingularityClass};
use fano_wps::wps::Weights;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FwStatus {
    Ok = 0,
    InvalidInput = 1,
    Precondition = 2,
    CostCapExceeded = 3,
    Undecided = 4,
    CertificateRejected = 5,
    NullPointer = 6,
    Panic = 7,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FwClass {
    NonCanonical = 0,
    CanonicalNotTerminal = 1,
    Terminal = 2,
    Smooth = 3,
}

impl From<SingularityClass> for FwClass {
    fn from(c: SingularityClass) -> Self {
        match c {
            SingularityClass::NonCanonical => FwClass::NonCanonical,
            SingularityClass::CanonicalNotTerminal => FwClass::CanonicalNotTerminal,
            SingularityClass::Terminal => FwClass::Terminal,
            SingularityClass::Smooth => FwClass::Smooth,
        }
    }
}

/// Opaque tuple of weights.
pub struct FwWeights(Weights);

/// Opaque analysis report.
pub struct FwReport(WpsReport);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn status_of(e: &Error) -> FwStatus {
    match e {
        Error::InvalidInput(_) => FwStatus::InvalidInput,
        Error::Precondition(_) => FwStatus::Precondition,
        Error::CostCapExceeded { .. } => FwStatus::CostCapExceeded,
        Error::Undecided { .. } => FwStatus::Undecided,
        Error::CertificateRejected { .. } => FwStatus::CertificateRejected,
    }
}

/// Runs `f`, recording errors and converting panics.
fn guard(f: impl FnOnce() -> Result<(), FwStatus>) -> FwStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => FwStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => {
            set_error("internal panic");
            FwStatus::Panic
        }
    }
}

fn fail(e: Error) -> FwStatus {
    set_error(e.to_string());
    status_of(&e)
}

fn null(what: &str) -> FwStatus {
    set_error(format!("{} is null", what));
    FwStatus::NullPointer
}

unsafe fn read_str<'a>(s: *const c_char, what: &str) -> Result<&'a str, FwStatus> {
    if s.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(s).to_str().map_err(|_| {
        set_error(format!("{} is not valid UTF-8", what));
        FwStatus::InvalidInput
    })
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), FwStatus> {
    if out.is_null() {
        return Err(null("out"));
    }
    let c = CString::new(s).map_err(|_| {
        set_error("string contains NUL");
        FwStatus::InvalidInput
    })?;
    *out = c.into_raw();
    Ok(())
}

/// Message for the last failed call on this thread, or NULL. The pointer is
/// valid until the next `fw_*` call on the same thread.
#[no_mangle]
pub extern "C" fn fw_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Parses a comma-separated weight list such as "33,22,6,5".
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn fw_weights_parse(text: *const c_char, out: *mut *mut FwWeights) -> FwStatus {
    guard(|| {
        let s = read_str(text, "text")?;
        if out.is_null() {
            return Err(null("out"));
        }
        let w: Weights = s.parse().map_err(fail)?;
        *out = Box::into_raw(Box::new(FwWeights(w)));
        Ok(())
    })
}

/// Builds weights from an array of `len` integers.
///
/// # Safety
/// `weights` must point to `len` readable values and `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn fw_weights_new(weights: *const u64, len: usize, out: *mut *mut FwWeights) -> FwStatus {
    guard(|| {
        if weights.is_null() || out.is_null() {
            return Err(null("weights or out"));
        }
        let xs = std::slice::from_raw_parts(weights, len);
        let w = Weights::from_u64s(xs).map_err(fail)?;
        *out = Box::into_raw(Box::new(FwWeights(w)));
        Ok(())
    })
}

/// # Safety
/// `w` must come from `fw_weights_parse`/`fw_weights_new` or be NULL.
#[no_mangle]
pub unsafe extern "C" fn fw_weights_free(w: *mut FwWeights) {
    if !w.is_null() {
        drop(Box::from_raw(w));
    }
}

/// # Safety
/// `w` must be a live handle and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn fw_weights_is_well_formed(w: *const FwWeights, out: *mut bool) -> FwStatus {
    guard(|| {
        let w = w.as_ref().ok_or_else(|| null("weights"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        *out = w.0.is_well_formed();
        Ok(())
    })
}

/// Analyzes a well-formed space, brute-forcing points up to `cost_cap`.
///
/// # Safety
/// `w` must be a live handle and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn fw_analyze(w: *const FwWeights, cost_cap: u64, out: *mut *mut FwReport) -> FwStatus {
    guard(|| {
        let w = w.as_ref().ok_or_else(|| null("weights"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        let r = analyze(&w.0, &BTreeMap::new(), &Nat::from(cost_cap), VerifyMode::Auto).map_err(fail)?;
        *out = Box::into_raw(Box::new(FwReport(r)));
        Ok(())
    })
}

/// # Safety
/// `r` must come from `fw_analyze` or be NULL.
#[no_mangle]
pub unsafe extern "C" fn fw_report_free(r: *mut FwReport) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}

/// # Safety
/// `r` must be a live handle and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn fw_report_class(r: *const FwReport, out: *mut FwClass) -> FwStatus {
    guard(|| {
        let r = r.as_ref().ok_or_else(|| null("report"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        *out = r.0.overall_class.into();
        Ok(())
    })
}

/// # Safety
/// `r` must be a live handle and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn fw_report_gorenstein(r: *const FwReport, out: *mut bool) -> FwStatus {
    guard(|| {
        let r = r.as_ref().ok_or_else(|| null("report"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        *out = r.0.gorenstein;
        Ok(())
    })
}

/// Fano index as a decimal string.
///
/// # Safety
/// `r` must be a live handle and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn fw_report_fano_index(r: *const FwReport, out: *mut *mut c_char) -> FwStatus {
    guard(|| {
        let r = r.as_ref().ok_or_else(|| null("report"))?;
        write_string(out, r.0.fano_index.to_string())
    })
}

/// Anticanonical volume as "a" or "a/b".
///
/// # Safety
/// `r` must be a live handle and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn fw_report_volume(r: *const FwReport, out: *mut *mut c_char) -> FwStatus {
    guard(|| {
        let r = r.as_ref().ok_or_else(|| null("report"))?;
        write_string(out, r.0.volume.to_string())
    })
}

/// # Safety
/// `r` must be a live handle and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn fw_report_json(r: *const FwReport, out: *mut *mut c_char) -> FwStatus {
    guard(|| {
        let r = r.as_ref().ok_or_else(|| null("report"))?;
        write_string(out, r.0.to_json())
    })
}

/// # Safety
/// `s` must come from this library or be NULL.
#[no_mangle]
pub unsafe extern "C" fn fw_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// The k-th Sylvester number as a decimal string.
///
/// # Safety
/// `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn fw_sylvester(k: u32, out: *mut *mut c_char) -> FwStatus {
    guard(|| {
        if k > 30 {
            set_error(format!("k = {} is too large", k));
            return Err(FwStatus::InvalidInput);
        }
        write_string(out, sylvester(k as usize).to_string())
    })
}

/// JSON description of a family member or sporadic example.
///
/// # Safety
/// `name` must be a NUL-terminated string and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn fw_family_json(name: *const c_char, dim: usize, out: *mut *mut c_char) -> FwStatus {
    guard(|| {
        let name = read_str(name, "name")?;
        let id: FamilyId = name.parse().map_err(fail)?;
        let inst = generate(&id, dim).map_err(fail)?;
        write_string(out, serde_json::to_string(&inst).expect("family serializes"))
    })
}

/// Reid-Tai class of 1/r(b_1,...,b_len) by brute force.
///
/// # Safety
/// `residues` must point to `len` readable values and `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn fw_classify_singularity(
    r: u64,
    residues: *const u64,
    len: usize,
    cost_cap: u64,
    out: *mut FwClass,
) -> FwStatus {
    guard(|| {
        if residues.is_null() || out.is_null() {
            return Err(null("residues or out"));
        }
        let b = std::slice::from_raw_parts(residues, len);
        let s = CyclicQuotientSingularity::from_u64s(r, b).map_err(fail)?;
        *out = s.classify_brute(&Nat::from(cost_cap)).map_err(fail)?.into();
        Ok(())
    })
}
