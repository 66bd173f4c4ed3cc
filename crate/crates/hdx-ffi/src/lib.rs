//! C ABI over the experiment library: opaque handles, integer status codes,
//! and caller-freed strings. The contract lives in include/hdx.h; every
//! entry point catches panics so unwinding never crosses the boundary.
//!
//! Ownership rules: `*_new`/`*_build`/functions with an out-string allocate,
//! the matching `*_free`/`hdx_string_free` releases. The last-error message
//! is thread local and stays valid until the next failing call on the same
//! thread.

use hdx_algebra::Rng;
use hdx_dpcode::HypergraphSystemAccess;
use hdx_harness::{run_experiment, ExperimentConfig};
use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

pub const HDX_OK: i32 = 0;
pub const HDX_ERR_NULL: i32 = 1;
pub const HDX_ERR_UTF8: i32 = 2;
pub const HDX_ERR_PARSE: i32 = 3;
pub const HDX_ERR_RUNTIME: i32 = 4;
pub const HDX_ERR_PANIC: i32 = 5;

/// Opaque experiment configuration.
pub struct HdxConfig(ExperimentConfig);

/// Opaque hypergraph system plus its own random stream.
pub struct HdxSystem {
    sys: Box<dyn HypergraphSystemAccess>,
    rng: Rng,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::new("").unwrap());
}

fn fail(code: i32, msg: &str) -> i32 {
    // Interior NULs cannot come from our error types; replace defensively.
    let clean = msg.replace('\0', "?");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(clean).unwrap());
    code
}

fn guard(body: impl FnOnce() -> i32) -> i32 {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(code) => code,
        Err(_) => fail(HDX_ERR_PANIC, "internal panic"),
    }
}

/// Reads a required C string argument, or returns the failure code.
unsafe fn read_str<'a>(ptr: *const c_char) -> Result<&'a str, i32> {
    if ptr.is_null() {
        return Err(fail(HDX_ERR_NULL, "null string argument"));
    }
    CStr::from_ptr(ptr)
        .to_str()
        .map_err(|_| fail(HDX_ERR_UTF8, "argument is not valid UTF-8"))
}

fn give_string(out: *mut *mut c_char, s: String) -> i32 {
    if out.is_null() {
        return fail(HDX_ERR_NULL, "null output pointer");
    }
    let Ok(c) = CString::new(s) else {
        return fail(HDX_ERR_RUNTIME, "result contains an interior NUL");
    };
    unsafe { *out = c.into_raw() };
    HDX_OK
}

/// Borrowed pointer to the last error message on this thread. Valid until
/// the next failing call on the same thread; never NULL.
#[no_mangle]
pub extern "C" fn hdx_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Static library version string; never freed by the caller.
#[no_mangle]
pub extern "C" fn hdx_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Frees a string returned through an out-parameter. NULL is a no-op.
#[no_mangle]
pub unsafe extern "C" fn hdx_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a flat key = value experiment configuration.
#[no_mangle]
pub unsafe extern "C" fn hdx_config_parse(
    text: *const c_char,
    out: *mut *mut HdxConfig,
) -> i32 {
    guard(|| {
        let text = match read_str(text) {
            Ok(t) => t,
            Err(code) => return code,
        };
        if out.is_null() {
            return fail(HDX_ERR_NULL, "null output pointer");
        }
        match ExperimentConfig::parse(text) {
            Ok(cfg) => {
                *out = Box::into_raw(Box::new(HdxConfig(cfg)));
                HDX_OK
            }
            Err(e) => fail(HDX_ERR_PARSE, &e.to_string()),
        }
    })
}

#[no_mangle]
pub unsafe extern "C" fn hdx_config_free(cfg: *mut HdxConfig) {
    if !cfg.is_null() {
        drop(Box::from_raw(cfg));
    }
}

/// Writes the configured system identifier (e.g. "subspace-q4-d3").
#[no_mangle]
pub unsafe extern "C" fn hdx_config_system_id(
    cfg: *const HdxConfig,
    out: *mut *mut c_char,
) -> i32 {
    guard(|| {
        let Some(cfg) = cfg.as_ref() else {
            return fail(HDX_ERR_NULL, "null config");
        };
        give_string(out, cfg.0.system_id())
    })
}

/// Builds the configured hypergraph system with its own stream split off
/// the given seed.
#[no_mangle]
pub unsafe extern "C" fn hdx_system_build(
    cfg: *const HdxConfig,
    seed: u64,
    out: *mut *mut HdxSystem,
) -> i32 {
    guard(|| {
        let Some(cfg) = cfg.as_ref() else {
            return fail(HDX_ERR_NULL, "null config");
        };
        if out.is_null() {
            return fail(HDX_ERR_NULL, "null output pointer");
        }
        match cfg.0.build_system() {
            Ok(sys) => {
                *out = Box::into_raw(Box::new(HdxSystem { sys, rng: Rng::new(seed) }));
                HDX_OK
            }
            Err(e) => fail(HDX_ERR_PARSE, &e.to_string()),
        }
    })
}

#[no_mangle]
pub unsafe extern "C" fn hdx_system_free(sys: *mut HdxSystem) {
    if !sys.is_null() {
        drop(Box::from_raw(sys));
    }
}

/// Vertices per hyperedge. Returns 0 on a NULL handle.
#[no_mangle]
pub unsafe extern "C" fn hdx_system_degree(sys: *const HdxSystem) -> u64 {
    sys.as_ref().map_or(0, |s| s.sys.degree())
}

/// Hyperedges per vertex. Returns 0 on a NULL handle.
#[no_mangle]
pub unsafe extern "C" fn hdx_system_up_degree(sys: *const HdxSystem) -> u64 {
    sys.as_ref().map_or(0, |s| s.sys.up_degree())
}

/// Index-space size of edge intersections. Returns 0 on a NULL handle.
#[no_mangle]
pub unsafe extern "C" fn hdx_system_edge_degree(sys: *const HdxSystem) -> u64 {
    sys.as_ref().map_or(0, |s| s.sys.edge_degree())
}

/// Samples a uniform hyperedge name from the system's stream.
#[no_mangle]
pub unsafe extern "C" fn hdx_system_random_edge(
    sys: *mut HdxSystem,
    out: *mut *mut c_char,
) -> i32 {
    guard(|| {
        let Some(sys) = sys.as_mut() else {
            return fail(HDX_ERR_NULL, "null system");
        };
        match sys.sys.random_edge(&mut sys.rng) {
            Ok(name) => give_string(out, name),
            Err(e) => fail(HDX_ERR_RUNTIME, &e.to_string()),
        }
    })
}

/// Routes between two hyperedges; the path is written as a JSON array of
/// hyperedge names.
#[no_mangle]
pub unsafe extern "C" fn hdx_system_route(
    sys: *mut HdxSystem,
    from: *const c_char,
    to: *const c_char,
    out: *mut *mut c_char,
) -> i32 {
    guard(|| {
        let Some(sys) = sys.as_mut() else {
            return fail(HDX_ERR_NULL, "null system");
        };
        let (from, to) = match (read_str(from), read_str(to)) {
            (Ok(a), Ok(b)) => (a, b),
            (Err(code), _) | (_, Err(code)) => return code,
        };
        match sys.sys.route(from, to, &mut sys.rng) {
            Ok(path) => {
                let json: Vec<String> =
                    path.iter().map(|s| format!("{s:?}")).collect();
                give_string(out, format!("[{}]", json.join(",")))
            }
            Err(e) => fail(HDX_ERR_RUNTIME, &e.to_string()),
        }
    })
}

/// Runs the configured campaign and writes the JSON-lines report (one
/// record per trial, then a summary line). Deterministic in the config.
#[no_mangle]
pub unsafe extern "C" fn hdx_config_run(
    cfg: *const HdxConfig,
    out: *mut *mut c_char,
) -> i32 {
    guard(|| {
        let Some(cfg) = cfg.as_ref() else {
            return fail(HDX_ERR_NULL, "null config");
        };
        match run_experiment(&cfg.0) {
            Ok(report) => give_string(out, report.to_jsonl()),
            Err(e) => fail(HDX_ERR_RUNTIME, &e.to_string()),
        }
    })
}
