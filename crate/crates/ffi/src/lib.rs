//! C ABI over the cherednik crate: opaque system handles, integer status
//! codes, and JSON/CSV string payloads matching the CLI formats.
//!
//! Ownership rules: every `char*` handed out by this library is released
//! with `chk_string_free`, every handle with `chk_system_free`. All entry
//! points are panic-safe and record a thread-local message retrievable via
//! `chk_last_error_message`.

// Pointer-safety contracts live in the ownership rules above and on each
// entry point's documentation.
#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use cherednik::hopoly::{p_at_zero, HoBuilder};
use cherednik::jack::nonsym_jack;
use cherednik::limits::{convergence_table, grid_points, rows_to_csv, LimitSchedule};
use cherednik::rational::{format_rat, parse_rat};
use cherednik::rootsys::{Family, Multiplicity, Point, RootSystem, Weight};
use cherednik::spectra::in_convex_hull_of_orbit;
use cherednik::verify::{run_suite, Suite, SuiteParams};
use cherednik::Error;

/// Status codes returned by every fallible entry point.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ChkStatus {
    /// Success.
    Ok = 0,
    /// A verification suite ran to completion and found counterexamples.
    SuiteFailed = 1,
    /// Malformed input (bad rational, wrong arity, unknown name).
    ParseError = 2,
    /// Structurally valid input outside the supported domain.
    DomainError = 3,
    /// A required pointer argument was null.
    NullArgument = 4,
    /// Internal panic; the message carries details.
    Internal = 5,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::new("").unwrap());
}

fn set_error(msg: &str) {
    let sanitized = msg.replace('\0', " ");
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = CString::new(sanitized).unwrap_or_default();
    });
}

fn status_of(err: &Error) -> ChkStatus {
    match err {
        Error::Parse(_) => ChkStatus::ParseError,
        _ => ChkStatus::DomainError,
    }
}

/// Opaque pairing of a root system with a multiplicity function.
pub struct ChkSystem {
    sys: RootSystem,
    kappa: Multiplicity,
}

unsafe fn cstr<'a>(ptr: *const c_char) -> Option<&'a str> {
    if ptr.is_null() {
        return None;
    }
    CStr::from_ptr(ptr).to_str().ok()
}

fn hand_out(s: String, out: *mut *mut c_char) -> ChkStatus {
    match CString::new(s) {
        Ok(cs) => {
            unsafe { *out = cs.into_raw() };
            ChkStatus::Ok
        }
        Err(_) => {
            set_error("payload contained an interior NUL");
            ChkStatus::Internal
        }
    }
}

fn guarded<F: FnOnce() -> ChkStatus>(f: F) -> ChkStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => status,
        Err(_) => {
            set_error("internal panic");
            ChkStatus::Internal
        }
    }
}

fn parse_family(name: &str) -> Option<Family> {
    match name.to_ascii_uppercase().as_str() {
        "A" => Some(Family::A),
        "B" => Some(Family::B),
        "BC" => Some(Family::BC),
        _ => None,
    }
}

fn parse_kappa(family: Family, rank: usize, csv: &str) -> Result<Multiplicity, Error> {
    let values: Result<Vec<_>, _> = csv.split(',').map(parse_rat).collect();
    let values = values?;
    match (family, values.len()) {
        (Family::A, 1) => Ok(Multiplicity::a(values[0].clone())),
        (Family::B, 2) => Ok(Multiplicity::b(values[0].clone(), values[1].clone())),
        (Family::BC, 3) => Ok(Multiplicity::bc(
            values[0].clone(),
            values[1].clone(),
            values[2].clone(),
        )),
        (Family::BC, 2) if rank == 1 => Ok(Multiplicity::bc(
            values[0].clone(),
            values[1].clone(),
            cherednik::rational::rat(0),
        )),
        (f, n) => Err(Error::Parse(format!(
            "family {f} does not take {n} multiplicities"
        ))),
    }
}

unsafe fn weight_from(parts: *const i64, len: usize, dim: usize) -> Result<Weight, Error> {
    if len != dim {
        return Err(Error::Parse(format!(
            "weight has {len} coordinates, expected {dim}"
        )));
    }
    Ok(Weight(std::slice::from_raw_parts(parts, len).to_vec()))
}

/// Last error message for this thread; the pointer stays valid until the
/// next failing call from the same thread. Do not free it.
#[no_mangle]
pub extern "C" fn chk_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// Releases a string produced by this library.
#[no_mangle]
pub unsafe extern "C" fn chk_string_free(ptr: *mut c_char) {
    if !ptr.is_null() {
        drop(CString::from_raw(ptr));
    }
}

/// Creates a root-system handle. `family` is "A", "B" or "BC"; `kappa_csv`
/// carries the orbit multiplicities as comma-separated rationals in the CLI
/// convention.
#[no_mangle]
pub unsafe extern "C" fn chk_system_new(
    family: *const c_char,
    rank: usize,
    kappa_csv: *const c_char,
    out: *mut *mut ChkSystem,
) -> ChkStatus {
    guarded(|| {
        let (Some(family_str), Some(kappa_str)) = (cstr(family), cstr(kappa_csv)) else {
            set_error("family/kappa must be valid UTF-8 and non-null");
            return ChkStatus::NullArgument;
        };
        if out.is_null() {
            set_error("out pointer is null");
            return ChkStatus::NullArgument;
        }
        let Some(family) = parse_family(family_str) else {
            set_error(&format!("unknown family '{family_str}'"));
            return ChkStatus::ParseError;
        };
        let sys = match RootSystem::new(family, rank) {
            Ok(s) => s,
            Err(e) => {
                set_error(&e.to_string());
                return status_of(&e);
            }
        };
        let kappa = match parse_kappa(family, rank, kappa_str) {
            Ok(k) => k,
            Err(e) => {
                set_error(&e.to_string());
                return status_of(&e);
            }
        };
        *out = Box::into_raw(Box::new(ChkSystem { sys, kappa }));
        ChkStatus::Ok
    })
}

/// Releases a system handle.
#[no_mangle]
pub unsafe extern "C" fn chk_system_free(handle: *mut ChkSystem) {
    if !handle.is_null() {
        drop(Box::from_raw(handle));
    }
}

/// Ambient coordinate dimension of the handle's root system.
#[no_mangle]
pub unsafe extern "C" fn chk_system_dim(handle: *const ChkSystem) -> usize {
    if handle.is_null() {
        return 0;
    }
    (*handle).sys.dim()
}

/// Non-symmetric polynomial of the weight, as canonical JSON.
#[no_mangle]
pub unsafe extern "C" fn chk_nonsym_poly_json(
    handle: *const ChkSystem,
    weight: *const i64,
    weight_len: usize,
    out_json: *mut *mut c_char,
) -> ChkStatus {
    guarded(|| {
        if handle.is_null() || weight.is_null() || out_json.is_null() {
            set_error("null argument");
            return ChkStatus::NullArgument;
        }
        let state = &*handle;
        let lambda = match weight_from(weight, weight_len, state.sys.dim()) {
            Ok(w) => w,
            Err(e) => {
                set_error(&e.to_string());
                return status_of(&e);
            }
        };
        let mut builder = match HoBuilder::new(&state.sys, state.kappa.clone()) {
            Ok(b) => b,
            Err(e) => {
                set_error(&e.to_string());
                return status_of(&e);
            }
        };
        match builder.nonsym_e(&lambda) {
            Ok(e) => match serde_json::to_string(&e.to_json()) {
                Ok(text) => hand_out(text, out_json),
                Err(e) => {
                    set_error(&e.to_string());
                    ChkStatus::Internal
                }
            },
            Err(e) => {
                set_error(&e.to_string());
                status_of(&e)
            }
        }
    })
}

/// Symmetric polynomial of a dominant weight, as canonical TrigPoly JSON.
#[no_mangle]
pub unsafe extern "C" fn chk_sym_poly_json(
    handle: *const ChkSystem,
    weight: *const i64,
    weight_len: usize,
    out_json: *mut *mut c_char,
) -> ChkStatus {
    guarded(|| {
        if handle.is_null() || weight.is_null() || out_json.is_null() {
            set_error("null argument");
            return ChkStatus::NullArgument;
        }
        let state = &*handle;
        let lambda = match weight_from(weight, weight_len, state.sys.dim()) {
            Ok(w) => w,
            Err(e) => {
                set_error(&e.to_string());
                return status_of(&e);
            }
        };
        let mut builder = match HoBuilder::new(&state.sys, state.kappa.clone()) {
            Ok(b) => b,
            Err(e) => {
                set_error(&e.to_string());
                return status_of(&e);
            }
        };
        match builder.sym_p(&lambda) {
            Ok(p) => match serde_json::to_string(&p.to_json()) {
                Ok(text) => hand_out(text, out_json),
                Err(e) => {
                    set_error(&e.to_string());
                    ChkStatus::Internal
                }
            },
            Err(e) => {
                set_error(&e.to_string());
                status_of(&e)
            }
        }
    })
}

/// Exact value of the symmetric polynomial at the origin, as a "p/q" string.
#[no_mangle]
pub unsafe extern "C" fn chk_sym_value_at_zero(
    handle: *const ChkSystem,
    weight: *const i64,
    weight_len: usize,
    out_rational: *mut *mut c_char,
) -> ChkStatus {
    guarded(|| {
        if handle.is_null() || weight.is_null() || out_rational.is_null() {
            set_error("null argument");
            return ChkStatus::NullArgument;
        }
        let state = &*handle;
        let lambda = match weight_from(weight, weight_len, state.sys.dim()) {
            Ok(w) => w,
            Err(e) => {
                set_error(&e.to_string());
                return status_of(&e);
            }
        };
        match p_at_zero(&state.sys, &state.kappa, &lambda) {
            Ok(v) => hand_out(format_rat(&v), out_rational),
            Err(e) => {
                set_error(&e.to_string());
                status_of(&e)
            }
        }
    })
}

/// Spectral (tilde) vector of a weight as comma-separated "p/q" entries.
#[no_mangle]
pub unsafe extern "C" fn chk_spectral_vector(
    handle: *const ChkSystem,
    weight: *const i64,
    weight_len: usize,
    out_csv: *mut *mut c_char,
) -> ChkStatus {
    guarded(|| {
        if handle.is_null() || weight.is_null() || out_csv.is_null() {
            set_error("null argument");
            return ChkStatus::NullArgument;
        }
        let state = &*handle;
        let lambda = match weight_from(weight, weight_len, state.sys.dim()) {
            Ok(w) => w,
            Err(e) => {
                set_error(&e.to_string());
                return status_of(&e);
            }
        };
        let spectral = cherednik::cherednik::tilde(&state.sys, &state.kappa, &lambda);
        let text = spectral
            .0
            .iter()
            .map(format_rat)
            .collect::<Vec<_>>()
            .join(",");
        hand_out(text, out_csv)
    })
}

/// Non-symmetric Jack polynomial of a composition, as canonical JSON.
/// Standalone: Jack polynomials take only the single parameter `k`.
#[no_mangle]
pub unsafe extern "C" fn chk_jack_poly_json(
    eta: *const i64,
    eta_len: usize,
    k: *const c_char,
    out_json: *mut *mut c_char,
) -> ChkStatus {
    guarded(|| {
        if eta.is_null() || out_json.is_null() {
            set_error("null argument");
            return ChkStatus::NullArgument;
        }
        let Some(k_str) = cstr(k) else {
            set_error("k must be valid UTF-8 and non-null");
            return ChkStatus::NullArgument;
        };
        let k = match parse_rat(k_str) {
            Ok(k) => k,
            Err(e) => {
                set_error(&e.to_string());
                return status_of(&e);
            }
        };
        let eta = std::slice::from_raw_parts(eta, eta_len).to_vec();
        match nonsym_jack(&eta, &k) {
            Ok(p) => match serde_json::to_string(&p.to_json()) {
                Ok(text) => hand_out(text, out_json),
                Err(e) => {
                    set_error(&e.to_string());
                    ChkStatus::Internal
                }
            },
            Err(e) => {
                set_error(&e.to_string());
                status_of(&e)
            }
        }
    })
}

/// Membership of a rational point (comma-separated "p/q" coordinates) in
/// the convex hull of the Weyl orbit of rho. Writes 1 or 0 to `out`.
#[no_mangle]
pub unsafe extern "C" fn chk_hull_contains(
    handle: *const ChkSystem,
    point_csv: *const c_char,
    out: *mut i32,
) -> ChkStatus {
    guarded(|| {
        if handle.is_null() || out.is_null() {
            set_error("null argument");
            return ChkStatus::NullArgument;
        }
        let Some(point_str) = cstr(point_csv) else {
            set_error("point must be valid UTF-8 and non-null");
            return ChkStatus::NullArgument;
        };
        let state = &*handle;
        let coords: Result<Vec<_>, _> = point_str.split(',').map(parse_rat).collect();
        let coords = match coords {
            Ok(c) => c,
            Err(e) => {
                set_error(&e.to_string());
                return status_of(&e);
            }
        };
        if coords.len() != state.sys.dim() {
            set_error(&format!(
                "point has {} coordinates, expected {}",
                coords.len(),
                state.sys.dim()
            ));
            return ChkStatus::ParseError;
        }
        match in_convex_hull_of_orbit(&state.sys, &state.kappa, &Point(coords)) {
            Ok(v) => {
                *out = v as i32;
                ChkStatus::Ok
            }
            Err(e) => {
                set_error(&e.to_string());
                status_of(&e)
            }
        }
    })
}

/// Convergence table of the BC-to-A degeneration for one weight, as CSV.
/// `schedule` accepts "default", "sqrt", or "k1,k2;k1,k2;...".
#[no_mangle]
pub unsafe extern "C" fn chk_limit_table_csv(
    rank: usize,
    weight: *const i64,
    weight_len: usize,
    k3: *const c_char,
    schedule: *const c_char,
    grid_max: *const c_char,
    grid_step: *const c_char,
    out_csv: *mut *mut c_char,
) -> ChkStatus {
    guarded(|| {
        if weight.is_null() || out_csv.is_null() {
            set_error("null argument");
            return ChkStatus::NullArgument;
        }
        let (Some(k3), Some(schedule), Some(grid_max), Some(grid_step)) =
            (cstr(k3), cstr(schedule), cstr(grid_max), cstr(grid_step))
        else {
            set_error("string arguments must be valid UTF-8 and non-null");
            return ChkStatus::NullArgument;
        };
        let run = || -> Result<String, Error> {
            let sys = RootSystem::new(Family::BC, rank)?;
            let lambda = weight_from(weight, weight_len, sys.dim())?;
            let schedule = LimitSchedule::parse(schedule)?;
            let grid = grid_points(sys.dim(), &parse_rat(grid_max)?, &parse_rat(grid_step)?)?;
            let rows = convergence_table(&sys, &lambda, &parse_rat(k3)?, &schedule, &grid)?;
            Ok(rows_to_csv(&rows))
        };
        match run() {
            Ok(text) => hand_out(text, out_csv),
            Err(e) => {
                set_error(&e.to_string());
                status_of(&e)
            }
        }
    })
}

/// Runs a named verification suite; the JSON report is written regardless
/// of the verdict, and the status distinguishes pass from fail.
/// `rank` restricts the box when positive; `kappa3` may be null.
#[no_mangle]
pub unsafe extern "C" fn chk_verify_suite(
    suite: *const c_char,
    rank: i32,
    kappa3: *const c_char,
    out_json: *mut *mut c_char,
) -> ChkStatus {
    guarded(|| {
        if out_json.is_null() {
            set_error("out pointer is null");
            return ChkStatus::NullArgument;
        }
        let Some(suite_str) = cstr(suite) else {
            set_error("suite must be valid UTF-8 and non-null");
            return ChkStatus::NullArgument;
        };
        let suite = match suite_str.parse::<Suite>() {
            Ok(s) => s,
            Err(e) => {
                set_error(&e.to_string());
                return ChkStatus::ParseError;
            }
        };
        let kappa3 = match cstr(kappa3) {
            None => None,
            Some(text) => match parse_rat(text) {
                Ok(k) => Some(k),
                Err(e) => {
                    set_error(&e.to_string());
                    return ChkStatus::ParseError;
                }
            },
        };
        let params = SuiteParams {
            rank: if rank > 0 { Some(rank as usize) } else { None },
            kappa3,
        };
        match run_suite(suite, &params) {
            Ok(report) => {
                let passed = report.passed();
                match serde_json::to_string(&report) {
                    Ok(text) => {
                        let status = hand_out(text, out_json);
                        if status != ChkStatus::Ok {
                            return status;
                        }
                        if passed {
                            ChkStatus::Ok
                        } else {
                            set_error("suite reported failures");
                            ChkStatus::SuiteFailed
                        }
                    }
                    Err(e) => {
                        set_error(&e.to_string());
                        ChkStatus::Internal
                    }
                }
            }
            Err(e) => {
                set_error(&e.to_string());
                status_of(&e)
            }
        }
    })
}
