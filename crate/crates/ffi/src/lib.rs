//! C ABI for `hecke-farey`.
//!
//! Contexts and sweeps are opaque handles created by `*_new` and released by
//! the matching `*_free`. Every fallible call returns an [`HfStatus`]; on
//! failure [`hf_last_error`] describes the error for the calling thread.
//! Exact numbers cross the boundary as strings in the coefficient-tuple
//! format `c0,c1,.../den` (integers, `p/q`, decimals and `lambda` are also
//! accepted as input). Strings returned by the library must be released
//! with [`hf_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::sync::Arc;

use hecke_farey::bcz::{bcz_step, TrianglePoint};
use hecke_farey::cli::parse_num;
use hecke_farey::nextterm::NextTermState;
use hecke_farey::stats::mean_roof::mean_roof_quadrature;
use hecke_farey::sternbrocot::{enumerate_strip, ExtSlope, StripSpec};
use hecke_farey::{AlgNum, Error, HeckeContext, PlaneVec};

/// Result codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HfStatus {
    Ok = 0,
    /// A sweep has no further vectors.
    Done = 1,
    NullPointer = 2,
    InvalidQ = 3,
    InvalidArgument = 4,
    Parse = 5,
    OutsideTriangle = 6,
    UnboundedStrip = 7,
    EmptySweep = 8,
    NoConvergence = 9,
    Overflow = 10,
    Internal = 11,
    Panic = 12,
}

impl From<&Error> for HfStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::InvalidQ(_) => HfStatus::InvalidQ,
            Error::Parse { .. } => HfStatus::Parse,
            Error::OutsideTriangle { .. } => HfStatus::OutsideTriangle,
            Error::UnboundedStrip(_) => HfStatus::UnboundedStrip,
            Error::EmptySweep(_) => HfStatus::EmptySweep,
            Error::NoConvergence { .. } => HfStatus::NoConvergence,
            Error::InvalidArgument(_) | Error::InconsistentSeed(_) | Error::NotInOrbit(_) | Error::DivisionByZero => {
                HfStatus::InvalidArgument
            }
            _ => HfStatus::Internal,
        }
    }
}

/// A Hecke group `G_q` with its coordinate field.
pub struct HfContext {
    inner: Arc<HeckeContext>,
}

/// A slope-ordered sweep of a strip.
pub struct HfSweep {
    ctx: Arc<HeckeContext>,
    state: NextTermState,
    hi: AlgNum,
    last: Option<PlaneVec>,
    done: bool,
}

/// One vector of a sweep in floating point, with the gap to the next one.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct HfSweepItem {
    pub x: f64,
    pub y: f64,
    pub slope: f64,
    /// `tau^2` times the slope gap to the next vector.
    pub roof: f64,
    pub region: u32,
}

/// One step of the BCZ map. `next_a` and `next_b` are owned strings.
#[repr(C)]
#[derive(Debug)]
pub struct HfBczStep {
    pub region: u32,
    pub k: i64,
    pub roof: f64,
    pub next_a: *mut c_char,
    pub next_b: *mut c_char,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

struct Fail(HfStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(HfStatus::from(&e), e.to_string())
    }
}

fn null() -> Fail {
    Fail(HfStatus::NullPointer, "null pointer argument".into())
}

fn guard(f: impl FnOnce() -> Result<HfStatus, Fail>) -> HfStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(s)) => s,
        Ok(Err(Fail(s, msg))) => {
            set_error(msg);
            s
        }
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(format!("panic: {msg}"));
            HfStatus::Panic
        }
    }
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(null());
    }
    CStr::from_ptr(p).to_str().map_err(|_| Fail(HfStatus::Parse, "string is not UTF-8".into()))
}

unsafe fn read_num(ctx: &HeckeContext, p: *const c_char) -> Result<AlgNum, Fail> {
    Ok(parse_num(ctx, read_str(p)?)?)
}

unsafe fn context<'a>(p: *const HfContext) -> Result<&'a HeckeContext, Fail> {
    p.as_ref().map(|c| &*c.inner).ok_or_else(null)
}

fn owned_string(s: String) -> *mut c_char {
    CString::new(s).map(CString::into_raw).unwrap_or(ptr::null_mut())
}

/// Message of the last failed call on this thread, or null. The pointer is
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn hf_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn hf_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Creates the context for `G_q`, `q >= 3`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hf_context_new(q: u32, out: *mut *mut HfContext) -> HfStatus {
    guard(|| {
        if out.is_null() {
            return Err(null());
        }
        let ctx = HeckeContext::new(q as usize)?;
        *out = Box::into_raw(Box::new(HfContext { inner: Arc::new(ctx) }));
        Ok(HfStatus::Ok)
    })
}

/// # Safety
/// `ctx` must come from [`hf_context_new`] and not have been freed. Sweeps
/// created from it stay valid.
#[no_mangle]
pub unsafe extern "C" fn hf_context_free(ctx: *mut HfContext) {
    if !ctx.is_null() {
        drop(Box::from_raw(ctx));
    }
}

/// Degree of the coordinate field over the rationals, or 0 for null.
///
/// # Safety
/// `ctx` must be null or a live context.
#[no_mangle]
pub unsafe extern "C" fn hf_context_degree(ctx: *const HfContext) -> usize {
    ctx.as_ref().map_or(0, |c| c.inner.degree())
}

/// `lambda_q = 2 cos(pi / q)` rounded to double.
///
/// # Safety
/// `ctx` must be a live context and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hf_context_lambda(ctx: *const HfContext, out: *mut f64) -> HfStatus {
    guard(|| {
        let c = context(ctx)?;
        let out = out.as_mut().ok_or_else(null)?;
        *out = c.lambda_f64();
        Ok(HfStatus::Ok)
    })
}

/// Starts a sweep over orbit vectors with `0 < x <= tau` and slope in
/// `[lo, hi]`, `0 <= lo < hi`.
///
/// # Safety
/// `ctx` must be a live context, the strings valid C strings and `out` a
/// valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hf_sweep_new(
    ctx: *const HfContext,
    tau: *const c_char,
    lo: *const c_char,
    hi: *const c_char,
    out: *mut *mut HfSweep,
) -> HfStatus {
    guard(|| {
        let arc = ctx.as_ref().map(|c| c.inner.clone()).ok_or_else(null)?;
        if out.is_null() {
            return Err(null());
        }
        let c = &*arc;
        let tau = read_num(c, tau)?;
        let lo = read_num(c, lo)?;
        let hi = read_num(c, hi)?;
        if c.sign(&lo) < 0 || c.cmp(&lo, &hi).is_ge() {
            return Err(Fail(HfStatus::InvalidArgument, "slope range must satisfy 0 <= lo < hi".into()));
        }
        let state = NextTermState::seed_at_slope(c, &tau, &lo)?;
        let done = c.cmp(state.slope(), &hi).is_gt();
        *out = Box::into_raw(Box::new(HfSweep { ctx: arc, state, hi, last: None, done }));
        Ok(HfStatus::Ok)
    })
}

/// Writes the next vector to `item` and returns `Ok`, or returns `Done`.
///
/// # Safety
/// `sweep` must be a live sweep and `item` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hf_sweep_next(sweep: *mut HfSweep, item: *mut HfSweepItem) -> HfStatus {
    guard(|| {
        let s = sweep.as_mut().ok_or_else(null)?;
        let item = item.as_mut().ok_or_else(null)?;
        if s.done {
            return Ok(HfStatus::Done);
        }
        let c = &*s.ctx;
        let v = s.state.current().clone();
        let slope = c.to_f64(s.state.slope());
        let (_, step) = s.state.advance(c)?;
        s.done = c.cmp(s.state.slope(), &s.hi).is_gt();
        let (x, y) = c.vec_to_f64(&v);
        *item = HfSweepItem { x, y, slope, roof: c.to_f64(&step.roof), region: step.region as u32 };
        s.last = Some(v);
        Ok(HfStatus::Ok)
    })
}

/// Exact coordinates of the vector last returned by [`hf_sweep_next`].
///
/// # Safety
/// `sweep` must be a live sweep; `x` and `y` valid pointers. The strings
/// written must be released with [`hf_string_free`].
#[no_mangle]
pub unsafe extern "C" fn hf_sweep_current_exact(
    sweep: *const HfSweep,
    x: *mut *mut c_char,
    y: *mut *mut c_char,
) -> HfStatus {
    guard(|| {
        let s = sweep.as_ref().ok_or_else(null)?;
        if x.is_null() || y.is_null() {
            return Err(null());
        }
        let v = s
            .last
            .as_ref()
            .ok_or_else(|| Fail(HfStatus::InvalidArgument, "hf_sweep_next has not returned a vector yet".into()))?;
        *x = owned_string(v.x.to_string());
        *y = owned_string(v.y.to_string());
        Ok(HfStatus::Ok)
    })
}

/// # Safety
/// `sweep` must come from [`hf_sweep_new`] and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn hf_sweep_free(sweep: *mut HfSweep) {
    if !sweep.is_null() {
        drop(Box::from_raw(sweep));
    }
}

/// Applies the BCZ map once to the exact point `(a, b)` of the Farey
/// triangle. Release `out.next_a` and `out.next_b` with [`hf_string_free`].
///
/// # Safety
/// `ctx` must be a live context, `a` and `b` valid C strings and `out` a
/// valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hf_bcz_step(
    ctx: *const HfContext,
    a: *const c_char,
    b: *const c_char,
    out: *mut HfBczStep,
) -> HfStatus {
    guard(|| {
        let c = context(ctx)?;
        let out = out.as_mut().ok_or_else(null)?;
        let p = TrianglePoint::new(c, read_num(c, a)?, read_num(c, b)?)?;
        let step = bcz_step(c, &p)?;
        let k = i64::try_from(&step.k).map_err(|_| Fail(HfStatus::Overflow, format!("k = {} exceeds 64 bits", step.k)))?;
        *out = HfBczStep {
            region: step.region as u32,
            k,
            roof: c.to_f64(&step.roof),
            next_a: owned_string(step.next.a().to_string()),
            next_b: owned_string(step.next.b().to_string()),
        };
        Ok(HfStatus::Ok)
    })
}

/// Mean of the roof function by adaptive quadrature.
///
/// # Safety
/// `ctx` must be a live context; `value` and `error` valid pointers.
#[no_mangle]
pub unsafe extern "C" fn hf_mean_roof_quadrature(
    ctx: *const HfContext,
    tol: f64,
    value: *mut f64,
    error: *mut f64,
) -> HfStatus {
    guard(|| {
        let c = context(ctx)?;
        if value.is_null() || error.is_null() {
            return Err(null());
        }
        let m = mean_roof_quadrature(c, tol)?;
        *value = m.value;
        *error = m.error_bound;
        Ok(HfStatus::Ok)
    })
}

/// Number of orbit vectors with `0 < x <= tau` and slope in `[lo, hi]`.
///
/// # Safety
/// `ctx` must be a live context, the strings valid C strings and `out` a
/// valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hf_count_strip(
    ctx: *const HfContext,
    tau: *const c_char,
    lo: *const c_char,
    hi: *const c_char,
    out: *mut u64,
) -> HfStatus {
    guard(|| {
        let c = context(ctx)?;
        let out = out.as_mut().ok_or_else(null)?;
        let spec = StripSpec::new(
            c,
            read_num(c, tau)?,
            ExtSlope::Finite(read_num(c, lo)?),
            ExtSlope::Finite(read_num(c, hi)?),
        )?;
        *out = enumerate_strip(c, &spec)?.len() as u64;
        Ok(HfStatus::Ok)
    })
}
