//! C interface to the kecs solver.
//!
//! Graphs and solutions are opaque heap handles released with their `_free`
//! function. Every fallible call returns a [`KecsStatus`]; on failure
//! `kecs_last_error` describes the most recent error on the calling thread.
//! Strings returned through `char **` are released with `kecs_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use kecs::genio::{gen_named, parse_edge_list, parse_graph6, verify_certificate, Certificate};
use kecs::graph::{bipartition, MultiGraph};
use kecs::solver::{solve, Method, SolveError, SolveResult};
use kecs::spectrum::{default_method, spectrum};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KecsStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    InvalidGraph = 3,
    ParseError = 4,
    NotBipartite = 5,
    TooLarge = 6,
    /// The oracle ran out of budget; the result is a lower bound.
    BudgetExhausted = 7,
    BufferTooSmall = 8,
    Panic = 9,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KecsMethod {
    /// Flow on bipartite graphs, oracle otherwise.
    Auto = 0,
    Augmenting = 1,
    Flow = 2,
    Oracle = 3,
}

pub struct KecsGraph {
    g: MultiGraph,
}

pub struct KecsSolution {
    g: MultiGraph,
    r: SolveResult,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let s = CString::new(msg.into().replace('\0', " ")).unwrap();
    LAST_ERROR.with(|e| *e.borrow_mut() = s);
}

fn fail(status: KecsStatus, msg: impl Into<String>) -> KecsStatus {
    set_error(msg);
    status
}

fn guard(f: impl FnOnce() -> KecsStatus) -> KecsStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => fail(KecsStatus::Panic, "internal panic"),
    }
}

unsafe fn c_str<'a>(s: *const c_char) -> Result<&'a str, KecsStatus> {
    if s.is_null() {
        return Err(fail(KecsStatus::NullPointer, "null string"));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| fail(KecsStatus::InvalidArgument, "string is not UTF-8"))
}

fn put_graph(g: MultiGraph, out: *mut *mut KecsGraph) -> KecsStatus {
    unsafe { *out = Box::into_raw(Box::new(KecsGraph { g })) };
    KecsStatus::Ok
}

/// Message of the last failed call on this thread. Valid until the next
/// call into the library from the same thread.
#[no_mangle]
pub extern "C" fn kecs_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Builds a graph on `n` vertices from `m` edges given as `2 * m` vertex
/// indices.
///
/// # Safety
/// `endpoints` must point to `2 * m` readable values (it may be null when
/// `m` is 0) and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn kecs_graph_from_edges(
    n: usize,
    endpoints: *const usize,
    m: usize,
    out: *mut *mut KecsGraph,
) -> KecsStatus {
    guard(|| {
        if out.is_null() || (endpoints.is_null() && m > 0) {
            return fail(KecsStatus::NullPointer, "null argument");
        }
        let flat = if m == 0 {
            &[][..]
        } else {
            std::slice::from_raw_parts(endpoints, 2 * m)
        };
        let edges: Vec<(usize, usize)> = flat.chunks_exact(2).map(|p| (p[0], p[1])).collect();
        match MultiGraph::from_edges(n, &edges) {
            Ok(g) => put_graph(g, out),
            Err(e) => fail(KecsStatus::InvalidGraph, e.to_string()),
        }
    })
}

/// Parses the `p el` edge-list format.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn kecs_graph_parse_edge_list(text: *const c_char, out: *mut *mut KecsGraph) -> KecsStatus {
    guard(|| {
        if out.is_null() {
            return fail(KecsStatus::NullPointer, "null output");
        }
        let s = match c_str(text) {
            Ok(s) => s,
            Err(st) => return st,
        };
        match parse_edge_list(s) {
            Ok(g) => put_graph(g, out),
            Err(e) => fail(KecsStatus::ParseError, e.to_string()),
        }
    })
}

/// Parses one graph6 string (short form).
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn kecs_graph_parse_graph6(text: *const c_char, out: *mut *mut KecsGraph) -> KecsStatus {
    guard(|| {
        if out.is_null() {
            return fail(KecsStatus::NullPointer, "null output");
        }
        let s = match c_str(text) {
            Ok(s) => s,
            Err(st) => return st,
        };
        match parse_graph6(s) {
            Ok(g) => put_graph(g, out),
            Err(e) => fail(KecsStatus::ParseError, e.to_string()),
        }
    })
}

/// Named fixture such as `petersen`, `k33` or `cycle:5`.
///
/// # Safety
/// `name` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn kecs_graph_named(name: *const c_char, out: *mut *mut KecsGraph) -> KecsStatus {
    guard(|| {
        if out.is_null() {
            return fail(KecsStatus::NullPointer, "null output");
        }
        let s = match c_str(name) {
            Ok(s) => s,
            Err(st) => return st,
        };
        match gen_named(s) {
            Ok(g) => put_graph(g, out),
            Err(e) => fail(KecsStatus::InvalidArgument, e.to_string()),
        }
    })
}

/// # Safety
/// `g` must be null or a live graph handle.
#[no_mangle]
pub unsafe extern "C" fn kecs_graph_vertex_count(g: *const KecsGraph) -> usize {
    g.as_ref().map_or(0, |g| g.g.n())
}

/// # Safety
/// `g` must be null or a live graph handle.
#[no_mangle]
pub unsafe extern "C" fn kecs_graph_edge_count(g: *const KecsGraph) -> usize {
    g.as_ref().map_or(0, |g| g.g.m())
}

/// # Safety
/// `g` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn kecs_graph_free(g: *mut KecsGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

fn solve_status(e: &SolveError) -> KecsStatus {
    match e {
        SolveError::NotBipartite { .. } => KecsStatus::NotBipartite,
        SolveError::TooLarge(_) => KecsStatus::TooLarge,
        _ => KecsStatus::InvalidArgument,
    }
}

fn resolve_method(g: &MultiGraph, m: KecsMethod) -> Method {
    match m {
        KecsMethod::Auto => default_method(g),
        KecsMethod::Augmenting => Method::Augmenting,
        KecsMethod::Flow => Method::Flow,
        KecsMethod::Oracle => Method::Oracle,
    }
}

/// Computes a maximum `k`-edge-colorable subgraph. `budget` caps oracle
/// search nodes, 0 meaning unlimited. On `BudgetExhausted` the solution is
/// still stored and holds the best subgraph found.
///
/// # Safety
/// `g` must be a live graph handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn kecs_solve(
    g: *const KecsGraph,
    k: usize,
    method: KecsMethod,
    budget: u64,
    out: *mut *mut KecsSolution,
) -> KecsStatus {
    guard(|| {
        let (Some(g), false) = (g.as_ref(), out.is_null()) else {
            return fail(KecsStatus::NullPointer, "null argument");
        };
        let m = resolve_method(&g.g, method);
        if m.requires_bipartite() && !bipartition(&g.g).is_present() {
            return fail(
                KecsStatus::NotBipartite,
                format!("the {m} method needs a bipartite graph"),
            );
        }
        let budget = (budget > 0).then_some(budget);
        match solve(&g.g, k, m, budget) {
            Ok(r) => {
                let exact = r.stats.exact;
                *out = Box::into_raw(Box::new(KecsSolution { g: g.g.clone(), r }));
                if exact {
                    KecsStatus::Ok
                } else {
                    fail(KecsStatus::BudgetExhausted, "oracle budget exhausted")
                }
            }
            Err(e) => fail(solve_status(&e), e.to_string()),
        }
    })
}

/// # Safety
/// `s` must be null or a live solution handle.
#[no_mangle]
pub unsafe extern "C" fn kecs_solution_nu(s: *const KecsSolution) -> usize {
    s.as_ref().map_or(0, |s| s.r.nu)
}

/// # Safety
/// `s` must be null or a live solution handle.
#[no_mangle]
pub unsafe extern "C" fn kecs_solution_is_exact(s: *const KecsSolution) -> bool {
    s.as_ref().is_some_and(|s| s.r.stats.exact)
}

/// Writes the color of each edge (1..=k, 0 when the edge is left out) into
/// `colors`, which must hold one entry per edge.
///
/// # Safety
/// `s` must be a live solution handle and `colors` must point to `len`
/// writable values.
#[no_mangle]
pub unsafe extern "C" fn kecs_solution_colors(s: *const KecsSolution, colors: *mut u32, len: usize) -> KecsStatus {
    guard(|| {
        let (Some(s), false) = (s.as_ref(), colors.is_null()) else {
            return fail(KecsStatus::NullPointer, "null argument");
        };
        let src = s.r.coloring.as_slice();
        if len < src.len() {
            return fail(KecsStatus::BufferTooSmall, format!("need {} entries", src.len()));
        }
        let dst = std::slice::from_raw_parts_mut(colors, len);
        for (d, c) in dst.iter_mut().zip(src) {
            *d = c.map_or(0, |c| c as u32);
        }
        KecsStatus::Ok
    })
}

/// Certificate JSON for the solution. Release with `kecs_string_free`.
///
/// # Safety
/// `s` must be a live solution handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn kecs_solution_certificate(s: *const KecsSolution, out: *mut *mut c_char) -> KecsStatus {
    guard(|| {
        let (Some(s), false) = (s.as_ref(), out.is_null()) else {
            return fail(KecsStatus::NullPointer, "null argument");
        };
        let text = Certificate::new(&s.r, &s.g, None).to_text();
        *out = CString::new(text).expect("JSON has no NUL").into_raw();
        KecsStatus::Ok
    })
}

/// # Safety
/// `s` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn kecs_solution_free(s: *mut KecsSolution) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// Checks a certificate without solving. `valid` receives the verdict; the
/// first violation, if any, is available from `kecs_last_error`.
///
/// # Safety
/// `json` must be a NUL-terminated string and `valid` writable.
#[no_mangle]
pub unsafe extern "C" fn kecs_verify_certificate(json: *const c_char, valid: *mut bool) -> KecsStatus {
    guard(|| {
        if valid.is_null() {
            return fail(KecsStatus::NullPointer, "null output");
        }
        let s = match c_str(json) {
            Ok(s) => s,
            Err(st) => return st,
        };
        let chk = verify_certificate(s);
        *valid = chk.is_valid();
        if let Some(v) = chk.violations.first() {
            set_error(v.to_string());
        }
        KecsStatus::Ok
    })
}

/// Writes nu_0, nu_1, ... into `values` until every edge fits, and the
/// number written into `len`. `BufferTooSmall` reports the needed length in
/// `len`.
///
/// # Safety
/// `g` must be a live graph handle, `values` must point to `cap` writable
/// values and `len` must be writable.
#[no_mangle]
pub unsafe extern "C" fn kecs_spectrum(
    g: *const KecsGraph,
    budget: u64,
    values: *mut usize,
    cap: usize,
    len: *mut usize,
) -> KecsStatus {
    guard(|| {
        let (Some(g), false) = (g.as_ref(), len.is_null()) else {
            return fail(KecsStatus::NullPointer, "null argument");
        };
        let s = match spectrum(&g.g, default_method(&g.g), (budget > 0).then_some(budget)) {
            Ok(s) => s,
            Err(e) => return fail(solve_status(&e), e.to_string()),
        };
        *len = s.values.len();
        if cap < s.values.len() || values.is_null() {
            return fail(KecsStatus::BufferTooSmall, format!("need {} entries", s.values.len()));
        }
        ptr::copy_nonoverlapping(s.values.as_ptr(), values, s.values.len());
        if s.exact {
            KecsStatus::Ok
        } else {
            fail(KecsStatus::BudgetExhausted, "oracle budget exhausted")
        }
    })
}

/// # Safety
/// `s` must be null or a string returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn kecs_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
