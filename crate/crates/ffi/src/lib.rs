//! C ABI for the numrad toolkit.
//!
//! Matrices cross the boundary as opaque `NumradMatrix` handles created by
//! `numrad_matrix_new`, `numrad_matrix_read` or `numrad_generate` and
//! released with `numrad_matrix_free`. Every fallible call returns a
//! `NumradStatus`; on failure a message for the calling thread is available
//! from `numrad_last_error_message` until the next failing call. Panics are
//! caught at the boundary and reported as `NUMRAD_STATUS_PANIC`.
//!
//! Complex data is exchanged as interleaved `(re, im)` doubles, row-major.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::ptr;

use numrad::cli::io::{read_matrix, write_matrix, MatrixFormat};
use numrad::genmat::{generate, GeneratorSpec};
use numrad::inequalities::{self as ineq, CheckOptions, InequalityId, InequalityReport, Operands, Verdict};
use numrad::matcore::{classify, default_class_tol, op_norm, ComplexMatrix, Interval, OperatorClass, C64};
use numrad::numrange::{default_radius_tol, numerical_radius};
use numrad::Error;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NumradStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    NotSquare = 3,
    DimensionMismatch = 4,
    NonFinite = 5,
    ClassViolation = 6,
    NoConvergence = 7,
    Io = 8,
    Parse = 9,
    BufferTooSmall = 10,
    Panic = 11,
}

/// Operator classes; the values are the bit positions used by `numrad_classify`.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NumradClass {
    General = 0,
    SelfAdjoint = 1,
    Positive = 2,
    Normal = 3,
    AccretiveDissipative = 4,
    Unitary = 5,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NumradInequality {
    NormRadiusSandwich = 0,
    ScalarRotation = 1,
    Kittaneh = 2,
    MixedSchwarz = 3,
    SaJensen = 4,
    NormRotationPositive = 5,
    CartesianSandwich = 6,
    SumRotationV1 = 7,
    RadiusKittanehRefine = 8,
    SumRotationV2 = 9,
    NormalSumRotation = 10,
    AdNormLower = 11,
    Submult = 12,
    ReverseKittanehRefine = 13,
    TriangleRefine = 14,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NumradVerdict {
    Confirmed = 0,
    Violated = 1,
    Inconclusive = 2,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NumradFormat {
    MatrixMarket = 0,
    Json = 1,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct NumradInterval {
    pub lo: f64,
    pub hi: f64,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct NumradBracket {
    pub enclosure: NumradInterval,
    pub angles_used: usize,
    pub refinement_rounds: usize,
    pub converged: bool,
}

/// One inequality report. `link` is a NUL-terminated suffix such as
/// `"left"`, or empty for unlinked reports.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NumradReport {
    pub inequality: NumradInequality,
    pub link: [c_char; 16],
    pub lhs: NumradInterval,
    pub rhs: NumradInterval,
    pub slack: f64,
    pub tolerance: f64,
    pub verdict: NumradVerdict,
}

/// Opaque matrix handle.
pub struct NumradMatrix {
    inner: ComplexMatrix,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("interior NULs removed");
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> NumradStatus {
    match e {
        Error::NotSquare { .. } => NumradStatus::NotSquare,
        Error::DimensionMismatch { .. } => NumradStatus::DimensionMismatch,
        Error::NonFinite { .. } | Error::NonFiniteValue { .. } => NumradStatus::NonFinite,
        Error::ClassViolation { .. } => NumradStatus::ClassViolation,
        Error::NoConvergence { .. } | Error::IdentityCheck { .. } => NumradStatus::NoConvergence,
        Error::Io(_) => NumradStatus::Io,
        Error::MalformedHeader(_) | Error::EntryCount { .. } | Error::Parse { .. } | Error::Json(_) => {
            NumradStatus::Parse
        }
        Error::DataLength { .. }
        | Error::EmptyDimension
        | Error::NotUnit { .. }
        | Error::InvalidArgument(_) => NumradStatus::InvalidArgument,
    }
}

struct Fail(NumradStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

fn null_arg(name: &str) -> Fail {
    Fail(NumradStatus::NullPointer, format!("`{name}` is null"))
}

/// Runs `f`, converting errors and panics into a status code.
fn guard(f: impl FnOnce() -> Result<(), Fail>) -> NumradStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => NumradStatus::Ok,
        Ok(Err(Fail(status, msg))) => {
            set_last_error(msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_last_error(format!("panic: {msg}"));
            NumradStatus::Panic
        }
    }
}

/// # Safety
/// `m` must be null or a live handle from this library.
unsafe fn matrix_ref<'a>(m: *const NumradMatrix, name: &str) -> Result<&'a ComplexMatrix, Fail> {
    m.as_ref().map(|h| &h.inner).ok_or_else(|| null_arg(name))
}

fn store_matrix(out: *mut *mut NumradMatrix, m: ComplexMatrix) {
    let h = Box::into_raw(Box::new(NumradMatrix { inner: m }));
    // SAFETY: callers checked `out` for null before computing `m`.
    unsafe { *out = h };
}

fn to_c(i: Interval) -> NumradInterval {
    NumradInterval { lo: i.lo(), hi: i.hi() }
}

fn class_from_c(c: NumradClass) -> OperatorClass {
    OperatorClass::ALL[c as usize]
}

fn id_from_c(id: NumradInequality) -> InequalityId {
    InequalityId::ALL[id as usize]
}

fn report_to_c(r: &InequalityReport) -> NumradReport {
    let mut link = [0 as c_char; 16];
    for (dst, b) in link.iter_mut().zip(r.link.unwrap_or("").bytes().take(15)) {
        *dst = b as c_char;
    }
    let inequality = NumradInequality::from_index(InequalityId::ALL.iter().position(|&i| i == r.id).unwrap_or(0));
    NumradReport {
        inequality,
        link,
        lhs: to_c(r.lhs),
        rhs: to_c(r.rhs),
        slack: r.slack,
        tolerance: r.tolerance,
        verdict: match r.verdict {
            Verdict::Confirmed => NumradVerdict::Confirmed,
            Verdict::Violated => NumradVerdict::Violated,
            Verdict::Inconclusive => NumradVerdict::Inconclusive,
        },
    }
}

impl NumradInequality {
    fn from_index(i: usize) -> Self {
        use NumradInequality::*;
        [
            NormRadiusSandwich,
            ScalarRotation,
            Kittaneh,
            MixedSchwarz,
            SaJensen,
            NormRotationPositive,
            CartesianSandwich,
            SumRotationV1,
            RadiusKittanehRefine,
            SumRotationV2,
            NormalSumRotation,
            AdNormLower,
            Submult,
            ReverseKittanehRefine,
            TriangleRefine,
        ][i]
    }
}

/// # Safety
/// `path` must be null or a NUL-terminated string.
unsafe fn path_arg<'a>(path: *const c_char) -> Result<&'a Path, Fail> {
    if path.is_null() {
        return Err(null_arg("path"));
    }
    let s = CStr::from_ptr(path)
        .to_str()
        .map_err(|_| Fail(NumradStatus::InvalidArgument, "path is not UTF-8".into()))?;
    Ok(Path::new(s))
}

/// Message describing the calling thread's most recent failure, or null.
/// The pointer stays valid until the next failing call on this thread.
#[no_mangle]
pub extern "C" fn numrad_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn numrad_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Creates a `rows` x `cols` matrix from `2 * rows * cols` interleaved doubles.
///
/// # Safety
/// `data` must point to `2 * rows * cols` readable doubles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn numrad_matrix_new(
    rows: usize,
    cols: usize,
    data: *const f64,
    out: *mut *mut NumradMatrix,
) -> NumradStatus {
    guard(|| {
        if out.is_null() {
            return Err(null_arg("out"));
        }
        if data.is_null() {
            return Err(null_arg("data"));
        }
        let len = rows
            .checked_mul(cols)
            .and_then(|k| k.checked_mul(2))
            .ok_or_else(|| Fail(NumradStatus::InvalidArgument, "dimensions overflow".into()))?;
        let raw = std::slice::from_raw_parts(data, len);
        let entries = raw.chunks_exact(2).map(|p| C64::new(p[0], p[1])).collect();
        store_matrix(out, ComplexMatrix::new(rows, cols, entries)?);
        Ok(())
    })
}

/// Releases a handle. Null is ignored.
///
/// # Safety
/// `m` must be null or a handle from this library that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn numrad_matrix_free(m: *mut NumradMatrix) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// # Safety
/// `m` must be a live handle; `rows` and `cols` must be writable.
#[no_mangle]
pub unsafe extern "C" fn numrad_matrix_shape(
    m: *const NumradMatrix,
    rows: *mut usize,
    cols: *mut usize,
) -> NumradStatus {
    guard(|| {
        let a = matrix_ref(m, "m")?;
        if rows.is_null() || cols.is_null() {
            return Err(null_arg("rows/cols"));
        }
        *rows = a.rows();
        *cols = a.cols();
        Ok(())
    })
}

/// Copies all entries into `data` as interleaved row-major doubles;
/// `len` is the capacity of `data` in doubles.
///
/// # Safety
/// `m` must be a live handle; `data` must hold `len` writable doubles.
#[no_mangle]
pub unsafe extern "C" fn numrad_matrix_data(m: *const NumradMatrix, data: *mut f64, len: usize) -> NumradStatus {
    guard(|| {
        let a = matrix_ref(m, "m")?;
        if data.is_null() {
            return Err(null_arg("data"));
        }
        let need = 2 * a.rows() * a.cols();
        if len < need {
            return Err(Fail(
                NumradStatus::BufferTooSmall,
                format!("buffer holds {len} doubles, need {need}"),
            ));
        }
        let dst = std::slice::from_raw_parts_mut(data, need);
        for (pair, z) in dst.chunks_exact_mut(2).zip(a.as_slice()) {
            pair[0] = z.re;
            pair[1] = z.im;
        }
        Ok(())
    })
}

/// Reads a Matrix Market or JSON matrix file (format from the extension).
///
/// # Safety
/// `path` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn numrad_matrix_read(path: *const c_char, out: *mut *mut NumradMatrix) -> NumradStatus {
    guard(|| {
        let path = path_arg(path)?;
        if out.is_null() {
            return Err(null_arg("out"));
        }
        store_matrix(out, read_matrix(path, None)?);
        Ok(())
    })
}

/// # Safety
/// `m` must be a live handle; `path` a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn numrad_matrix_write(
    m: *const NumradMatrix,
    path: *const c_char,
    format: NumradFormat,
) -> NumradStatus {
    guard(|| {
        let a = matrix_ref(m, "m")?;
        let path = path_arg(path)?;
        let format = match format {
            NumradFormat::MatrixMarket => MatrixFormat::MatrixMarket,
            NumradFormat::Json => MatrixFormat::Json,
        };
        write_matrix(path, a, format)?;
        Ok(())
    })
}

/// Seeded random matrix of the given class.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn numrad_generate(
    class: NumradClass,
    n: usize,
    seed: u64,
    scale: f64,
    out: *mut *mut NumradMatrix,
) -> NumradStatus {
    guard(|| {
        if out.is_null() {
            return Err(null_arg("out"));
        }
        let spec = GeneratorSpec::new(class_from_c(class), n, seed).with_scale(scale);
        store_matrix(out, generate(&spec)?);
        Ok(())
    })
}

/// # Safety
/// `m` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn numrad_op_norm(m: *const NumradMatrix, out: *mut NumradInterval) -> NumradStatus {
    guard(|| {
        let a = matrix_ref(m, "m")?;
        if out.is_null() {
            return Err(null_arg("out"));
        }
        *out = to_c(op_norm(a)?);
        Ok(())
    })
}

/// Numerical radius bracket. `tol <= 0` selects the default tolerance.
///
/// # Safety
/// `m` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn numrad_numerical_radius(
    m: *const NumradMatrix,
    tol: f64,
    out: *mut NumradBracket,
) -> NumradStatus {
    guard(|| {
        let a = matrix_ref(m, "m")?;
        if out.is_null() {
            return Err(null_arg("out"));
        }
        let tol = if tol > 0.0 { tol } else { default_radius_tol(a) };
        let b = numerical_radius(a, tol)?;
        *out = NumradBracket {
            enclosure: to_c(b.enclosure),
            angles_used: b.angles_used,
            refinement_rounds: b.refinement_rounds,
            converged: b.converged,
        };
        Ok(())
    })
}

/// Class tags as a bit mask indexed by `NumradClass`. `tol <= 0` selects the default.
///
/// # Safety
/// `m` must be a live handle; `mask` must be writable.
#[no_mangle]
pub unsafe extern "C" fn numrad_classify(m: *const NumradMatrix, tol: f64, mask: *mut u8) -> NumradStatus {
    guard(|| {
        let a = matrix_ref(m, "m")?;
        if mask.is_null() {
            return Err(null_arg("mask"));
        }
        let tol = if tol > 0.0 { tol } else { default_class_tol(a) };
        *mask = classify(a, tol)?.bits();
        Ok(())
    })
}

fn emit(reports: &[InequalityReport], out: *mut NumradReport, cap: usize, count: *mut usize) -> Result<(), Fail> {
    if count.is_null() {
        return Err(null_arg("count"));
    }
    // SAFETY: checked non-null above.
    unsafe { *count = reports.len() };
    if cap < reports.len() {
        return Err(Fail(
            NumradStatus::BufferTooSmall,
            format!("report buffer holds {cap}, need {}", reports.len()),
        ));
    }
    if out.is_null() {
        return Err(null_arg("out"));
    }
    for (k, r) in reports.iter().enumerate() {
        // SAFETY: the caller provides `cap >= reports.len()` slots.
        unsafe { *out.add(k) = report_to_c(r) };
    }
    Ok(())
}

/// Runs a matrix checker. Single-operand checkers ignore `b`; pair
/// checkers need both. Writes up to `cap` reports to `out` and the number
/// produced to `count` (also on `NUMRAD_STATUS_BUFFER_TOO_SMALL`). At most
/// three reports are produced by any checker.
///
/// # Safety
/// `a` (and `b` for pair checkers) must be live handles; `out` must have
/// `cap` writable slots; `count` must be writable.
#[no_mangle]
pub unsafe extern "C" fn numrad_check(
    id: NumradInequality,
    a: *const NumradMatrix,
    b: *const NumradMatrix,
    out: *mut NumradReport,
    cap: usize,
    count: *mut usize,
) -> NumradStatus {
    guard(|| {
        let id = id_from_c(id);
        let a = matrix_ref(a, "a")?.clone();
        let operands = match id.arity() {
            ineq::Arity::Single => Operands::Single(a),
            ineq::Arity::Pair => Operands::Pair(a, matrix_ref(b, "b")?.clone()),
            arity => {
                return Err(Fail(
                    NumradStatus::InvalidArgument,
                    format!("{id} takes {arity:?} operands; use the dedicated entry point"),
                ))
            }
        };
        let reports = ineq::run_check(id, &operands, &CheckOptions::default())?;
        emit(&reports, out, cap, count)
    })
}

/// Runs a pointwise checker (MIXED_SCHWARZ or SA_JENSEN) for one unit
/// vector `x` of `2 * n` interleaved doubles.
///
/// # Safety
/// `a` must be a live handle, `x` must hold `2 * n` doubles, `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn numrad_check_pointwise(
    id: NumradInequality,
    a: *const NumradMatrix,
    x: *const f64,
    n: usize,
    out: *mut NumradReport,
) -> NumradStatus {
    guard(|| {
        let id = id_from_c(id);
        let a = matrix_ref(a, "a")?;
        if x.is_null() {
            return Err(null_arg("x"));
        }
        if out.is_null() {
            return Err(null_arg("out"));
        }
        let x: Vec<C64> = std::slice::from_raw_parts(x, 2 * n)
            .chunks_exact(2)
            .map(|p| C64::new(p[0], p[1]))
            .collect();
        let opts = CheckOptions::default();
        let r = match id {
            InequalityId::MixedSchwarz => ineq::check_mixed_schwarz(a, &x, &opts)?,
            InequalityId::SaJensen => ineq::check_sa_jensen(a, &x, &opts)?,
            _ => {
                return Err(Fail(
                    NumradStatus::InvalidArgument,
                    format!("{id} is not a pointwise checker"),
                ))
            }
        };
        *out = report_to_c(&r);
        Ok(())
    })
}

/// `|a + b| <= sqrt(2) |a + ib|` for real scalars.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn numrad_check_scalar_rotation(a: f64, b: f64, out: *mut NumradReport) -> NumradStatus {
    guard(|| {
        if out.is_null() {
            return Err(null_arg("out"));
        }
        *out = report_to_c(&ineq::check_scalar_rotation(a, b, &CheckOptions::default())?);
        Ok(())
    })
}
