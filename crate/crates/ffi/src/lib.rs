//! C interface. Objects are opaque handles created by `tc_*_new` or
//! `tc_*_from_*` and released with the matching `tc_*_free`. Every call
//! returns a [`TcStatus`]; on failure the message is available from
//! [`tc_last_error`] on the same thread. Strings handed out by the library
//! are freed with [`tc_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use tenscalc::atensor::{atensimp, init_atensor, parse_mvec, AlgebraConfig, AlgebraType};
use tenscalc::catalog;
use tenscalc::component::{Components, MetricContext};
use tenscalc::indicial::{self, IndexContext};
use tenscalc::metricfile::MetricDef;
use tenscalc::petrov::{self, PetrovError, PetrovType};
use tenscalc::symkernel::render;

/// Result of every call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TcStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InvalidInput = 3,
    ComputeFailed = 4,
    Unclassifiable = 5,
    Panic = 6,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TcPetrov {
    I = 0,
    II = 1,
    III = 2,
    D = 3,
    N = 4,
    O = 5,
}

/// Metric or frame with cached curvature.
pub struct TcMetric {
    ctx: MetricContext,
    coords: Vec<String>,
}

/// Configured abstract algebra.
pub struct TcAlgebra {
    cfg: AlgebraConfig,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

type Res<T> = Result<T, (TcStatus, String)>;

fn guard(f: impl FnOnce() -> Res<()>) -> TcStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => TcStatus::Ok,
        Ok(Err((s, m))) => {
            set_error(&m);
            s
        }
        Err(_) => {
            set_error("internal panic");
            TcStatus::Panic
        }
    }
}

unsafe fn text<'a>(p: *const c_char) -> Res<&'a str> {
    if p.is_null() {
        return Err((TcStatus::NullPointer, "null string argument".into()));
    }
    CStr::from_ptr(p).to_str().map_err(|_| (TcStatus::InvalidUtf8, "argument is not UTF-8".into()))
}

fn bad(e: impl std::fmt::Display) -> (TcStatus, String) {
    (TcStatus::InvalidInput, e.to_string())
}

fn failed(e: impl std::fmt::Display) -> (TcStatus, String) {
    (TcStatus::ComputeFailed, e.to_string())
}

unsafe fn put<T>(out: *mut *mut T, v: T) -> Res<()> {
    if out.is_null() {
        return Err((TcStatus::NullPointer, "null output pointer".into()));
    }
    *out = Box::into_raw(Box::new(v));
    Ok(())
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Res<()> {
    if out.is_null() {
        return Err((TcStatus::NullPointer, "null output pointer".into()));
    }
    *out = CString::new(s).map_err(failed)?.into_raw();
    Ok(())
}

unsafe fn handle<'a, T>(p: *const T) -> Res<&'a T> {
    p.as_ref().ok_or((TcStatus::NullPointer, "null handle".into()))
}

/// Message of the last failed call on this thread, or NULL. Owned by the
/// library and valid until the next failing call.
#[no_mangle]
pub extern "C" fn tc_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `s` must come from this library or be NULL.
#[no_mangle]
pub unsafe extern "C" fn tc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Metric from a catalog entry; `use_frame` selects frame mode.
///
/// # Safety
/// `name` is a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tc_metric_from_catalog(name: *const c_char, use_frame: bool, out: *mut *mut TcMetric) -> TcStatus {
    guard(|| {
        let name = text(name)?;
        let ctx = catalog::load(name, None, use_frame).map_err(|e| match e {
            catalog::CatalogError::Build(b) => failed(b),
            other => bad(other),
        })?;
        let coords = ctx.chart().coords().to_vec();
        put(out, TcMetric { ctx, coords })
    })
}

/// Metric from the text of a metric definition file.
///
/// # Safety
/// `src` is a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tc_metric_from_text(src: *const c_char, use_frame: bool, out: *mut *mut TcMetric) -> TcStatus {
    guard(|| {
        let def = MetricDef::parse(text(src)?).map_err(bad)?;
        let ctx = def.build(use_frame).map_err(failed)?;
        put(out, TcMetric { ctx, coords: def.coords })
    })
}

/// # Safety
/// `m` comes from this library or is NULL; it is not used afterwards.
#[no_mangle]
pub unsafe extern "C" fn tc_metric_free(m: *mut TcMetric) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// Number of coordinates, 0 for a NULL handle.
///
/// # Safety
/// `m` is a live handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn tc_metric_dim(m: *const TcMetric) -> usize {
    m.as_ref().map_or(0, |m| m.ctx.dim())
}

fn to_json(c: &Components, labels: &[String]) -> String {
    let mut map = serde_json::Map::new();
    for (ix, v) in c.nonzero() {
        let k = ix.iter().map(|&i| labels[i].as_str()).collect::<Vec<_>>().join(",");
        map.insert(k, serde_json::Value::String(render(v)));
    }
    serde_json::Value::Object(map).to_string()
}

/// Nonzero components of `tensor` (christoffel1, christoffel2, riemann,
/// ricci, einstein, weyl, scalar) as a JSON object keyed "t,r,...".
///
/// # Safety
/// Live handle, NUL-terminated `tensor`, valid `out`.
#[no_mangle]
pub unsafe extern "C" fn tc_metric_compute(m: *const TcMetric, tensor: *const c_char, out: *mut *mut c_char) -> TcStatus {
    guard(|| {
        let m = handle(m)?;
        let c = &m.ctx;
        let json = match text(tensor)? {
            "christoffel1" => to_json(&c.christoffel1().map_err(failed)?, &m.coords),
            "christoffel2" => to_json(&c.christoffel2().map_err(failed)?, &m.coords),
            "riemann" => to_json(&c.riemann().map_err(failed)?, &m.coords),
            "ricci" => to_json(&c.ricci().map_err(failed)?, &m.coords),
            "einstein" => to_json(&c.einstein().map_err(failed)?, &m.coords),
            "weyl" => to_json(&c.weyl().map_err(failed)?, &m.coords),
            "scalar" => serde_json::Value::String(render(&c.scalar().map_err(failed)?)).to_string(),
            other => return Err(bad(format!("unknown tensor '{other}'"))),
        };
        put_string(out, json)
    })
}

/// Petrov type of a 4-dimensional Lorentzian frame.
///
/// # Safety
/// Live handle and valid `out`.
#[no_mangle]
pub unsafe extern "C" fn tc_metric_petrov(m: *const TcMetric, out: *mut TcPetrov) -> TcStatus {
    guard(|| {
        let m = handle(m)?;
        if out.is_null() {
            return Err((TcStatus::NullPointer, "null output pointer".into()));
        }
        let t = petrov::petrov_of_metric(&m.ctx).map_err(|e| match e {
            PetrovError::Unclassifiable(x) => (TcStatus::Unclassifiable, format!("undecided: {}", render(&x))),
            other => failed(other),
        })?;
        *out = match t {
            PetrovType::I => TcPetrov::I,
            PetrovType::II => TcPetrov::II,
            PetrovType::III => TcPetrov::III,
            PetrovType::D => TcPetrov::D,
            PetrovType::N => TcPetrov::N,
            PetrovType::O => TcPetrov::O,
        };
        Ok(())
    })
}

/// Metric definition text of a catalog entry.
///
/// # Safety
/// NUL-terminated `name`, valid `out`.
#[no_mangle]
pub unsafe extern "C" fn tc_catalog_show(name: *const c_char, out: *mut *mut c_char) -> TcStatus {
    guard(|| put_string(out, catalog::show(text(name)?).map_err(bad)?))
}

/// Algebra of type `kind` ("clifford", "lie_envelop", ...) with `ndims`
/// dimension counts.
///
/// # Safety
/// NUL-terminated `kind`; `dims` points to `ndims` values (may be NULL
/// when `ndims` is 0); valid `out`.
#[no_mangle]
pub unsafe extern "C" fn tc_algebra_new(
    kind: *const c_char,
    dims: *const usize,
    ndims: usize,
    out: *mut *mut TcAlgebra,
) -> TcStatus {
    guard(|| {
        let kind: AlgebraType = text(kind)?.parse().map_err(bad)?;
        let d: &[usize] = if ndims == 0 {
            &[]
        } else if dims.is_null() {
            return Err((TcStatus::NullPointer, "null dims".into()));
        } else {
            std::slice::from_raw_parts(dims, ndims)
        };
        put(out, TcAlgebra { cfg: init_atensor(kind, d).map_err(bad)? })
    })
}

/// # Safety
/// `a` comes from this library or is NULL; it is not used afterwards.
#[no_mangle]
pub unsafe extern "C" fn tc_algebra_free(a: *mut TcAlgebra) {
    if !a.is_null() {
        drop(Box::from_raw(a));
    }
}

/// Reduce an expression such as "v2.v1.v1".
///
/// # Safety
/// Live handle, NUL-terminated `expr`, valid `out`.
#[no_mangle]
pub unsafe extern "C" fn tc_algebra_simplify(a: *const TcAlgebra, expr: *const c_char, out: *mut *mut c_char) -> TcStatus {
    guard(|| {
        let a = handle(a)?;
        let e = parse_mvec(text(expr)?).map_err(bad)?;
        put_string(out, atensimp(&a.cfg, &e).map_err(bad)?.to_string())
    })
}

/// Contract an indexed expression against metric `metric` and return it
/// in canonical form.
///
/// # Safety
/// NUL-terminated strings, valid `out`.
#[no_mangle]
pub unsafe extern "C" fn tc_indicial_contract(expr: *const c_char, metric: *const c_char, out: *mut *mut c_char) -> TcStatus {
    guard(|| {
        let ctx = IndexContext::with_metric(text(metric)?);
        let e = indicial::parse_index_expr(text(expr)?).map_err(bad)?;
        put_string(out, indicial::contract(&ctx, &e).map_err(failed)?.to_string())
    })
}
