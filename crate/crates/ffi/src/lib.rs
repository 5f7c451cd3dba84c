//! C ABI over `homlie_core`.
//!
//! Objects cross the boundary as opaque handles owned by the caller and
//! released with the matching `*_free`. Every entry point returns a
//! [`HomlieStatus`]; on failure the message is kept per thread and read with
//! [`homlie_last_error_message`]. Panics are caught and reported as
//! `HOMLIE_STATUS_PANIC`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use homlie_core::alpha_ce::{cohomology, DegreeRow};
use homlie_core::bialgebra_alpha::{verify_d_squared, BialgSigns};
use homlie_core::cli_io::{parse_matrix_document, AlgebraDocument};
use homlie_core::hom::{HomLieAlgebra, HomLieBialgebra};
use homlie_core::Error;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HomlieStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Invalid = 4,
    Shape = 5,
    Degree = 6,
    OutOfRange = 7,
    Panic = 8,
}

/// A parsed Hom-Lie algebra.
pub struct HomlieAlgebra(HomLieAlgebra);

/// A parsed Hom-Lie bialgebra.
pub struct HomlieBialgebra(HomLieBialgebra);

/// Per-degree rows of an α-type cohomology computation.
pub struct HomlieCohomology(Vec<DegreeRow>);

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct HomlieRow {
    pub degree: usize,
    pub dim_cochains: usize,
    pub dim_image: usize,
    pub dim_kernel: usize,
    pub dim_cohomology: usize,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<(HomlieStatus, CString)>> = const { RefCell::new(None) };
}

fn set_error(status: HomlieStatus, message: &str) -> HomlieStatus {
    let text = CString::new(message.replace('\0', " ")).expect("interior nuls removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some((status, text)));
    status
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn status_of(e: &Error) -> HomlieStatus {
    match e {
        Error::Parse { .. } => HomlieStatus::Parse,
        Error::Shape(_) => HomlieStatus::Shape,
        Error::Degree(_) => HomlieStatus::Degree,
        _ => HomlieStatus::Invalid,
    }
}

type FfiResult<T> = Result<T, (HomlieStatus, String)>;

fn core<T>(r: homlie_core::Result<T>) -> FfiResult<T> {
    r.map_err(|e| (status_of(&e), e.to_string()))
}

/// Runs `f`, records its error or panic, and stores nothing on success.
fn guard(f: impl FnOnce() -> FfiResult<()>) -> HomlieStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => HomlieStatus::Ok,
        Ok(Err((status, msg))) => set_error(status, &msg),
        Err(p) => {
            let msg = p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
            set_error(HomlieStatus::Panic, &format!("internal panic: {}", msg.unwrap_or_default()))
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char, name: &str) -> FfiResult<&'a str> {
    if p.is_null() {
        return Err((HomlieStatus::NullPointer, format!("{name} is null")));
    }
    CStr::from_ptr(p).to_str().map_err(|e| (HomlieStatus::InvalidUtf8, format!("{name}: {e}")))
}

unsafe fn ref_arg<'a, T>(p: *const T, name: &str) -> FfiResult<&'a T> {
    p.as_ref().ok_or_else(|| (HomlieStatus::NullPointer, format!("{name} is null")))
}

unsafe fn write_out<T>(out: *mut T, value: T, name: &str) -> FfiResult<()> {
    if out.is_null() {
        return Err((HomlieStatus::NullPointer, format!("{name} is null")));
    }
    out.write(value);
    Ok(())
}

fn invalid(msg: impl Into<String>) -> (HomlieStatus, String) {
    (HomlieStatus::Invalid, msg.into())
}

/// Status of the last failed call on this thread, or `HOMLIE_STATUS_OK`.
#[no_mangle]
pub extern "C" fn homlie_last_error_code() -> HomlieStatus {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(HomlieStatus::Ok, |(s, _)| *s))
}

/// Message of the last failed call on this thread, or null. The pointer stays
/// valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn homlie_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |(_, m)| m.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn homlie_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Parses an algebra document (JSON). `*out` receives a new handle.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn homlie_algebra_from_json(json: *const c_char, out: *mut *mut HomlieAlgebra) -> HomlieStatus {
    guard(|| {
        let text = str_arg(json, "json")?;
        let g = core(AlgebraDocument::parse(text).and_then(|d| d.algebra()))?;
        write_out(out, Box::into_raw(Box::new(HomlieAlgebra(g))), "out")
    })
}

/// # Safety
/// `g` must be null or a handle from this library that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn homlie_algebra_free(g: *mut HomlieAlgebra) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// # Safety
/// `g` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn homlie_algebra_dim(g: *const HomlieAlgebra, out: *mut usize) -> HomlieStatus {
    guard(|| write_out(out, ref_arg(g, "algebra")?.0.n, "out"))
}

/// Writes whether every Hom-Lie axiom holds. A failing axiom is not an error;
/// its name and witness are available through the last-error message.
///
/// # Safety
/// `g` must be a live handle and `valid` writable.
#[no_mangle]
pub unsafe extern "C" fn homlie_algebra_validate(g: *const HomlieAlgebra, valid: *mut bool) -> HomlieStatus {
    guard(|| {
        let rep = ref_arg(g, "algebra")?.0.validate();
        write_out(valid, rep.passed(), "valid")?;
        if let Some(f) = rep.failures().next() {
            let witness: Vec<usize> = f.witness.iter().flatten().map(|i| i + 1).collect();
            set_error(HomlieStatus::Invalid, &format!("{} fails at {witness:?}", f.axiom));
        }
        Ok(())
    })
}

/// Yau twist by an endomorphism given as a JSON matrix (array of rows or
/// `{"gamma": rows}`). `*out` receives a new handle.
///
/// # Safety
/// `g` must be a live handle, `gamma_json` NUL-terminated and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn homlie_algebra_yau_twist(g: *const HomlieAlgebra, gamma_json: *const c_char, out: *mut *mut HomlieAlgebra) -> HomlieStatus {
    guard(|| {
        let g = &ref_arg(g, "algebra")?.0;
        let gamma = core(parse_matrix_document(str_arg(gamma_json, "gamma_json")?, g.n))?;
        let tw = core(g.yau_twist(&gamma))?;
        write_out(out, Box::into_raw(Box::new(HomlieAlgebra(tw))), "out")
    })
}

/// Canonical JSON document for the algebra. Release with [`homlie_string_free`].
///
/// # Safety
/// `g` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn homlie_algebra_to_json(g: *const HomlieAlgebra, out: *mut *mut c_char) -> HomlieStatus {
    guard(|| {
        let text = AlgebraDocument::from_algebra(&ref_arg(g, "algebra")?.0).to_json();
        let c = CString::new(text).map_err(|e| invalid(e.to_string()))?;
        write_out(out, c.into_raw(), "out")
    })
}

/// # Safety
/// `s` must be null or a string returned by this library that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn homlie_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Adjoint α-type cohomology in degrees 1..=max_degree. `*out` receives a new handle.
///
/// # Safety
/// `g` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn homlie_cohomology(g: *const HomlieAlgebra, max_degree: usize, out: *mut *mut HomlieCohomology) -> HomlieStatus {
    guard(|| {
        let g = &ref_arg(g, "algebra")?.0;
        if max_degree == 0 {
            return Err((HomlieStatus::Degree, "max_degree must be at least 1".into()));
        }
        let rep = core(cohomology(g, &g.adjoint(), max_degree))?;
        write_out(out, Box::into_raw(Box::new(HomlieCohomology(rep.rows))), "out")
    })
}

/// # Safety
/// `c` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn homlie_cohomology_len(c: *const HomlieCohomology, out: *mut usize) -> HomlieStatus {
    guard(|| write_out(out, ref_arg(c, "cohomology")?.0.len(), "out"))
}

/// Row `index` (0-based; row i describes degree i + 1).
///
/// # Safety
/// `c` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn homlie_cohomology_row(c: *const HomlieCohomology, index: usize, out: *mut HomlieRow) -> HomlieStatus {
    guard(|| {
        let rows = &ref_arg(c, "cohomology")?.0;
        let r = rows
            .get(index)
            .ok_or_else(|| (HomlieStatus::OutOfRange, format!("row {index} out of range 0..{}", rows.len())))?;
        let row = HomlieRow {
            degree: r.degree,
            dim_cochains: r.dim_c,
            dim_image: r.dim_im,
            dim_kernel: r.dim_ker,
            dim_cohomology: r.dim_h,
        };
        write_out(out, row, "out")
    })
}

/// # Safety
/// `c` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn homlie_cohomology_free(c: *mut HomlieCohomology) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

/// Parses a document that carries a cobracket. `*out` receives a new handle.
///
/// # Safety
/// `json` must be NUL-terminated and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn homlie_bialgebra_from_json(json: *const c_char, out: *mut *mut HomlieBialgebra) -> HomlieStatus {
    guard(|| {
        let doc = core(AlgebraDocument::parse(str_arg(json, "json")?))?;
        let b = core(doc.bialgebra())?.ok_or_else(|| invalid("document has no cobracket"))?;
        write_out(out, Box::into_raw(Box::new(HomlieBialgebra(b))), "out")
    })
}

/// # Safety
/// `b` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn homlie_bialgebra_free(b: *mut HomlieBialgebra) {
    if !b.is_null() {
        drop(Box::from_raw(b));
    }
}

/// Writes whether every bialgebra axiom holds.
///
/// # Safety
/// `b` must be a live handle and `valid` writable.
#[no_mangle]
pub unsafe extern "C" fn homlie_bialgebra_validate(b: *const HomlieBialgebra, valid: *mut bool) -> HomlieStatus {
    guard(|| write_out(valid, ref_arg(b, "bialgebra")?.0.validate().passed(), "valid"))
}

/// Number of nonzero blocks of ∂∘∂ on the bialgebra complex up to `max_degree`.
///
/// # Safety
/// `b` must be a live handle and `failures` writable.
#[no_mangle]
pub unsafe extern "C" fn homlie_bialgebra_d_squared_failures(b: *const HomlieBialgebra, max_degree: usize, failures: *mut usize) -> HomlieStatus {
    guard(|| {
        let rep = core(verify_d_squared(&ref_arg(b, "bialgebra")?.0, max_degree, &BialgSigns::default()))?;
        write_out(failures, rep.failures.len(), "failures")
    })
}
