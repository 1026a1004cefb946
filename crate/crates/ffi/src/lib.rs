//! C ABI over `grd-core`.
//!
//! Every function returns a [`GrdStatus`]. Results come back through out
//! pointers; strings are NUL-terminated, owned by the caller and released with
//! [`grd_string_free`]. Handles are released with their own `*_free`
//! function. On failure the message is available from [`grd_last_error`] on
//! the same thread until the next call.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use grd_core::families::ClassLabel;
use grd_core::invariants::GrdParams;
use grd_core::picard::{DivisorClass, Symbol};
use grd_core::pushforward::{assemble_via_families, eta_closed_form};
use grd_core::schubert::{special_power_integral, BoxPartition, GrassShape};
use grd_core::slope::{m_family, slope_report, SlopeReport};
use grd_core::verify::{full_class_json, run_all};
use grd_core::{Error, Rational};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GrdStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidArgument = 2,
    Precondition = 3,
    Inconsistent = 4,
    Mismatch = 5,
    Panic = 6,
}

/// Values accepted by the `label` parameters.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GrdClassLabel {
    Alpha = 0,
    Beta = 1,
    Gamma = 2,
}

/// Values accepted by the `method` parameter of [`grd_eta_push`].
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GrdMethod {
    Closed = 0,
    Assembled = 1,
}

/// A divisor class.
pub struct GrdClass(DivisorClass);

/// Slope data for the quadric divisor of one triple.
pub struct GrdSlopeReport(SlopeReport);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_last_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

struct Failure(GrdStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::Precondition(_) | Error::DivisionByZero | Error::Pole(_) => GrdStatus::Precondition,
            Error::Parse(_)
            | Error::InvalidPartition { .. }
            | Error::WrongSpace { .. }
            | Error::UnknownSymbol { .. } => GrdStatus::InvalidArgument,
            Error::Inconsistent { .. } | Error::RankDeficient { .. } => GrdStatus::Inconsistent,
            Error::Mismatch(_) => GrdStatus::Mismatch,
        };
        Failure(status, e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(GrdStatus::NullArgument, format!("{what} is null"))
}

fn invalid(msg: String) -> Failure {
    Failure(GrdStatus::InvalidArgument, msg)
}

fn run<F>(f: F) -> GrdStatus
where
    F: FnOnce() -> Result<(), Failure>,
{
    set_last_error("");
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => GrdStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_last_error(&msg);
            status
        }
        Err(_) => {
            set_last_error("internal panic");
            GrdStatus::Panic
        }
    }
}

unsafe fn write_out<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("out"));
    }
    out.write(value);
    Ok(())
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    let c = CString::new(s).map_err(|e| invalid(e.to_string()))?;
    write_out(out, c.into_raw())
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| invalid(format!("{what} is not UTF-8")))
}

unsafe fn handle<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| null(what))
}

fn label_of(label: u32) -> Result<ClassLabel, Failure> {
    match label {
        0 => Ok(ClassLabel::Alpha),
        1 => Ok(ClassLabel::Beta),
        2 => Ok(ClassLabel::Gamma),
        other => Err(invalid(format!("unknown class label {other}"))),
    }
}

fn rational_string(q: &Rational) -> String {
    q.to_string()
}

/// Message for the last failed call on this thread, or an empty string.
/// The pointer stays valid until the next call on this thread.
#[no_mangle]
pub extern "C" fn grd_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// # Safety
/// `s` must be null or a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn grd_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Castelnuovo number `N(g, r, d)` as a decimal string; requires ρ = 0.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn grd_castelnuovo_number(g: u32, r: u32, d: u32, out: *mut *mut c_char) -> GrdStatus {
    run(|| {
        let n = GrdParams::rho_zero(g, r, d)?.n()?;
        write_string(out, rational_string(&n))
    })
}

/// `ξ(g, r, d)` as `"p"` or `"p/q"`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn grd_xi(g: u32, r: u32, d: u32, out: *mut *mut c_char) -> GrdStatus {
    run(|| {
        let xi = GrdParams::new(g, r, d).xi()?;
        write_string(out, rational_string(&xi))
    })
}

/// `∫ ζ^k σ_b` on `G(r, P^d)`; `b` holds `r + 1` weakly increasing parts.
///
/// # Safety
/// `b` must point to `b_len` readable values; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn grd_schubert_integral(
    r: u32,
    d: u32,
    k: u32,
    b: *const u32,
    b_len: usize,
    out: *mut *mut c_char,
) -> GrdStatus {
    run(|| {
        if b.is_null() && b_len > 0 {
            return Err(null("b"));
        }
        let parts = if b_len == 0 {
            Vec::new()
        } else {
            std::slice::from_raw_parts(b, b_len).to_vec()
        };
        let shape = GrassShape::new(r, d)?;
        let value = special_power_integral(shape, k, &BoxPartition::new(shape, parts)?)?;
        write_string(out, rational_string(&value))
    })
}

/// `η_*` of the class `label` (a `GrdClassLabel` value) on `M̃_{g,1}`, by the
/// closed form or by solving the family system (`method`, a `GrdMethod`).
///
/// # Safety
/// `out` must be a valid pointer; the handle is freed with [`grd_class_free`].
#[no_mangle]
pub unsafe extern "C" fn grd_eta_push(
    g: u32,
    r: u32,
    d: u32,
    label: u32,
    method: u32,
    out: *mut *mut GrdClass,
) -> GrdStatus {
    run(|| {
        let p = GrdParams::rho_zero(g, r, d)?;
        let label = label_of(label)?;
        let class = match method {
            0 => eta_closed_form(&p, label)?,
            1 => assemble_via_families(&p, label)?.to_class(),
            other => return Err(invalid(format!("unknown method {other}"))),
        };
        write_out(out, Box::into_raw(Box::new(GrdClass(class))))
    })
}

/// Coefficient of `symbol` (e.g. `"lambda"`, `"delta_0"`, `"psi"`).
///
/// # Safety
/// `class` must be a live handle, `symbol` a NUL-terminated string and `out`
/// a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn grd_class_coefficient(
    class: *const GrdClass,
    symbol: *const c_char,
    out: *mut *mut c_char,
) -> GrdStatus {
    run(|| {
        let class = handle(class, "class")?;
        let sym: Symbol = read_str(symbol, "symbol")?.parse()?;
        if !class.0.space().contains(sym) {
            return Err(Error::UnknownSymbol {
                symbol: sym.to_string(),
                space: class.0.space().to_string(),
            }
            .into());
        }
        write_string(out, rational_string(&class.0.coeff(sym)))
    })
}

/// All coefficients as a JSON object with sorted keys and string values.
///
/// # Safety
/// `class` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn grd_class_to_json(class: *const GrdClass, out: *mut *mut c_char) -> GrdStatus {
    run(|| {
        let class = handle(class, "class")?;
        write_string(out, full_class_json(&class.0).to_string())
    })
}

/// # Safety
/// `class` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn grd_class_free(class: *mut GrdClass) {
    if !class.is_null() {
        drop(Box::from_raw(class));
    }
}

/// # Safety
/// `out` must be a valid pointer; the handle is freed with [`grd_slope_free`].
#[no_mangle]
pub unsafe extern "C" fn grd_slope_report(g: u32, r: u32, d: u32, out: *mut *mut GrdSlopeReport) -> GrdStatus {
    run(|| {
        let report = slope_report(&GrdParams::new(g, r, d))?;
        write_out(out, Box::into_raw(Box::new(GrdSlopeReport(report))))
    })
}

/// Report for `(m(2m+1), 2m, 2m(m+1))`.
///
/// # Safety
/// `out` must be a valid pointer; the handle is freed with [`grd_slope_free`].
#[no_mangle]
pub unsafe extern "C" fn grd_slope_m_family(m: u32, out: *mut *mut GrdSlopeReport) -> GrdStatus {
    run(|| {
        let report = m_family(m)?;
        write_out(out, Box::into_raw(Box::new(GrdSlopeReport(report))))
    })
}

/// # Safety
/// `report` must be a live handle; `g`, `r`, `d` valid pointers.
#[no_mangle]
pub unsafe extern "C" fn grd_slope_triple(
    report: *const GrdSlopeReport,
    g: *mut u32,
    r: *mut u32,
    d: *mut u32,
) -> GrdStatus {
    run(|| {
        let s = &handle(report, "report")?.0;
        if g.is_null() || r.is_null() || d.is_null() {
            return Err(null("g, r or d"));
        }
        write_out(g, s.g)?;
        write_out(r, s.r)?;
        write_out(d, s.d)
    })
}

unsafe fn slope_field(
    report: *const GrdSlopeReport,
    out: *mut *mut c_char,
    field: fn(&SlopeReport) -> &Rational,
) -> GrdStatus {
    run(|| {
        let s = &handle(report, "report")?.0;
        write_string(out, rational_string(field(s)))
    })
}

/// λ coefficient of `[E]/N`.
///
/// # Safety
/// `report` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn grd_slope_lambda(report: *const GrdSlopeReport, out: *mut *mut c_char) -> GrdStatus {
    slope_field(report, out, |s| &s.lambda_coeff)
}

/// δ_0 coefficient of `[E]/N`.
///
/// # Safety
/// `report` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn grd_slope_delta0(report: *const GrdSlopeReport, out: *mut *mut c_char) -> GrdStatus {
    slope_field(report, out, |s| &s.delta0_coeff)
}

/// `λ / (−δ_0)`.
///
/// # Safety
/// `report` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn grd_slope_ratio(report: *const GrdSlopeReport, out: *mut *mut c_char) -> GrdStatus {
    slope_field(report, out, |s| &s.ratio)
}

/// `6 + 12/(g+1)`.
///
/// # Safety
/// `report` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn grd_slope_bound(report: *const GrdSlopeReport, out: *mut *mut c_char) -> GrdStatus {
    slope_field(report, out, |s| &s.bound)
}

/// `bound − ratio`.
///
/// # Safety
/// `report` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn grd_slope_gap(report: *const GrdSlopeReport, out: *mut *mut c_char) -> GrdStatus {
    slope_field(report, out, |s| &s.gap)
}

/// # Safety
/// `report` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn grd_slope_violates(report: *const GrdSlopeReport, out: *mut bool) -> GrdStatus {
    run(|| {
        let s = &handle(report, "report")?.0;
        write_out(out, s.violates)
    })
}

/// # Safety
/// `report` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn grd_slope_free(report: *mut GrdSlopeReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}

/// Runs every cross-check for `g ≤ g_max`, `m ≤ m_max`. Returns
/// `GRD_STATUS_OK` when all pass, otherwise the status of the first failure.
#[no_mangle]
pub extern "C" fn grd_verify(g_max: u32, m_max: u32) -> GrdStatus {
    run(|| {
        for outcome in run_all(g_max, m_max)? {
            if let Some(e) = outcome.failure {
                let Failure(status, msg) = Failure::from(e);
                return Err(Failure(status, format!("{}: {msg}", outcome.name)));
            }
        }
        Ok(())
    })
}
