//! C interface to quadlab.
//!
//! Rules are opaque handles created by `quadlab_rule_new` and released with
//! `quadlab_rule_free`. Every fallible call returns a `QuadlabStatus`; on
//! failure `quadlab_last_error` describes the most recent error on the calling
//! thread.

use std::cell::RefCell;
use std::ffi::{c_char, c_void, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use quadlab::cubature::inefficiency_ratio;
use quadlab::experiments::{RuleSpec, Target};
use quadlab::oracle::exactness_degree;
use quadlab::{apply_rule, IntegrandId, QuadratureRule};

/// Result of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QuadlabStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Construction = 3,
    Evaluation = 4,
    Oracle = 5,
    BufferTooSmall = 6,
    Panic = 7,
}

/// Rule families that can be built from a node count alone.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QuadlabFamily {
    NewtonCotes = 0,
    ClenshawCurtis = 1,
    GaussLegendre = 2,
    GaussHermite = 3,
    GaussLaguerre = 4,
    Trapezoid = 5,
}

impl QuadlabFamily {
    fn spec(self) -> RuleSpec {
        match self {
            QuadlabFamily::NewtonCotes => RuleSpec::NewtonCotes,
            QuadlabFamily::ClenshawCurtis => RuleSpec::ClenshawCurtis,
            QuadlabFamily::GaussLegendre => RuleSpec::GaussLegendre,
            QuadlabFamily::GaussHermite => RuleSpec::GaussHermite,
            QuadlabFamily::GaussLaguerre => RuleSpec::GaussLaguerre,
            QuadlabFamily::Trapezoid => RuleSpec::Trapezoid,
        }
    }
}

/// Opaque quadrature rule.
pub struct QuadlabRule {
    rule: QuadratureRule,
}

/// Scalar integrand called once per node.
pub type QuadlabIntegrand = Option<unsafe extern "C" fn(x: f64, user_data: *mut c_void) -> f64>;

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_last_error(message: &str) {
    let text = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = text);
}

struct Failure(QuadlabStatus, String);

impl Failure {
    fn new(status: QuadlabStatus, message: impl ToString) -> Self {
        Failure(status, message.to_string())
    }
}

fn guard(body: impl FnOnce() -> Result<(), Failure>) -> QuadlabStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => {
            set_last_error("");
            QuadlabStatus::Ok
        }
        Ok(Err(Failure(status, message))) => {
            set_last_error(&message);
            status
        }
        Err(_) => {
            set_last_error("internal panic");
            QuadlabStatus::Panic
        }
    }
}

unsafe fn rule_ref<'a>(rule: *const QuadlabRule) -> Result<&'a QuadratureRule, Failure> {
    rule.as_ref()
        .map(|r| &r.rule)
        .ok_or_else(|| Failure::new(QuadlabStatus::NullPointer, "rule handle is null"))
}

unsafe fn out_ref<'a, T>(out: *mut T, what: &str) -> Result<&'a mut T, Failure> {
    out.as_mut()
        .ok_or_else(|| Failure::new(QuadlabStatus::NullPointer, format!("{what} is null")))
}

fn publish(rule: QuadratureRule, out: &mut *mut QuadlabRule) {
    *out = Box::into_raw(Box::new(QuadlabRule { rule }));
}

/// Builds an `n`-point rule of `family`. On success `*out` owns the new rule.
///
/// # Safety
/// `out` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn quadlab_rule_new(family: QuadlabFamily, n: usize, out: *mut *mut QuadlabRule) -> QuadlabStatus {
    guard(|| {
        let out = out_ref(out, "output pointer")?;
        *out = ptr::null_mut();
        let rule = family.spec().build(n).map_err(|e| Failure::new(QuadlabStatus::Construction, e))?;
        publish(rule, out);
        Ok(())
    })
}

/// Builds the `n`-point Gauss-Legendre rule transplanted through the strip map
/// of the Bernstein ellipse with parameter `rho > 1`.
///
/// # Safety
/// `out` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn quadlab_strip_rule_new(n: usize, rho: f64, out: *mut *mut QuadlabRule) -> QuadlabStatus {
    guard(|| {
        let out = out_ref(out, "output pointer")?;
        *out = ptr::null_mut();
        let rule = RuleSpec::StripTransformed { rho }
            .build(n)
            .map_err(|e| Failure::new(QuadlabStatus::Construction, e))?;
        publish(rule, out);
        Ok(())
    })
}

/// Releases a rule. Null is ignored.
///
/// # Safety
/// `rule` must be null or a handle returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn quadlab_rule_free(rule: *mut QuadlabRule) {
    if !rule.is_null() {
        drop(Box::from_raw(rule));
    }
}

/// Number of nodes, or 0 for a null handle.
///
/// # Safety
/// `rule` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn quadlab_rule_len(rule: *const QuadlabRule) -> usize {
    rule.as_ref().map_or(0, |r| r.rule.n())
}

unsafe fn copy_out(values: &[f64], buf: *mut f64, len: usize) -> Result<(), Failure> {
    if buf.is_null() {
        return Err(Failure::new(QuadlabStatus::NullPointer, "buffer is null"));
    }
    if len < values.len() {
        return Err(Failure::new(
            QuadlabStatus::BufferTooSmall,
            format!("buffer holds {len} values, rule has {}", values.len()),
        ));
    }
    ptr::copy_nonoverlapping(values.as_ptr(), buf, values.len());
    Ok(())
}

/// Copies the nodes into `buf`, which must hold at least `quadlab_rule_len` values.
///
/// # Safety
/// `rule` must be a live handle and `buf` valid for `len` writes.
#[no_mangle]
pub unsafe extern "C" fn quadlab_rule_nodes(rule: *const QuadlabRule, buf: *mut f64, len: usize) -> QuadlabStatus {
    guard(|| copy_out(rule_ref(rule)?.nodes(), buf, len))
}

/// Copies the weights into `buf`, which must hold at least `quadlab_rule_len` values.
///
/// # Safety
/// `rule` must be a live handle and `buf` valid for `len` writes.
#[no_mangle]
pub unsafe extern "C" fn quadlab_rule_weights(rule: *const QuadlabRule, buf: *mut f64, len: usize) -> QuadlabStatus {
    guard(|| copy_out(rule_ref(rule)?.weights(), buf, len))
}

/// `Σ w_j f(x_j)` with `f(x) = callback(x, user_data)`.
///
/// # Safety
/// `rule` must be a live handle, `out` valid for writes, and `callback` safe
/// to call with `user_data`.
#[no_mangle]
pub unsafe extern "C" fn quadlab_rule_apply(
    rule: *const QuadlabRule,
    callback: QuadlabIntegrand,
    user_data: *mut c_void,
    out: *mut f64,
) -> QuadlabStatus {
    guard(|| {
        let rule = rule_ref(rule)?;
        let out = out_ref(out, "output pointer")?;
        let f = callback.ok_or_else(|| Failure::new(QuadlabStatus::NullPointer, "callback is null"))?;
        *out = rule
            .apply_fn(|x| f(x, user_data))
            .map_err(|e| Failure::new(QuadlabStatus::Evaluation, e))?;
        Ok(())
    })
}

/// Signed error `I_n(f) - I(f)` for a named integrand such as `"runge"` or
/// `"cos-x3"`, against the reference integral for the rule's own weight.
///
/// # Safety
/// `rule` must be a live handle, `integrand` a NUL-terminated string and
/// `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn quadlab_rule_error(
    rule: *const QuadlabRule,
    integrand: *const c_char,
    out: *mut f64,
) -> QuadlabStatus {
    guard(|| {
        let rule = rule_ref(rule)?;
        let out = out_ref(out, "output pointer")?;
        if integrand.is_null() {
            return Err(Failure::new(QuadlabStatus::NullPointer, "integrand name is null"));
        }
        let name = CStr::from_ptr(integrand)
            .to_str()
            .map_err(|e| Failure::new(QuadlabStatus::InvalidArgument, e))?;
        let id: IntegrandId = name.parse().map_err(|e| Failure::new(QuadlabStatus::InvalidArgument, e))?;
        let target = Target::new(id, rule.weight_function());
        let reference = target.reference().map_err(|e| Failure::new(QuadlabStatus::Oracle, e))?;
        let f = target.integrand_for(rule).map_err(|e| Failure::new(QuadlabStatus::InvalidArgument, e))?;
        *out = apply_rule(rule, &f).map_err(|e| Failure::new(QuadlabStatus::Evaluation, e))? - reference;
        Ok(())
    })
}

/// Largest `d` such that every monomial of degree `<= d` is integrated to
/// relative accuracy `tol`.
///
/// # Safety
/// `rule` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn quadlab_exactness_degree(rule: *const QuadlabRule, tol: f64, out: *mut usize) -> QuadlabStatus {
    guard(|| {
        let rule = rule_ref(rule)?;
        let out = out_ref(out, "output pointer")?;
        if !(tol > 0.0) {
            return Err(Failure::new(QuadlabStatus::InvalidArgument, format!("tolerance {tol} is not positive")));
        }
        *out = exactness_degree(rule, tol).map_err(|e| Failure::new(QuadlabStatus::Oracle, e))?;
        Ok(())
    })
}

/// Ratio of total-degree to Euclidean-degree monomial counts in dimension `s`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn quadlab_inefficiency_ratio(s: u32, out: *mut f64) -> QuadlabStatus {
    guard(|| {
        let out = out_ref(out, "output pointer")?;
        *out = inefficiency_ratio(s).map_err(|e| Failure::new(QuadlabStatus::InvalidArgument, e))?;
        Ok(())
    })
}

/// Message for the last failed call on this thread, empty after a success.
/// The pointer stays valid until the next call into the library on this thread.
#[no_mangle]
pub extern "C" fn quadlab_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}
