//! C ABI for the zetavals workbench.
//!
//! Conventions: every function returns a [`ZvStatus`]; results come back
//! through out-parameters. Schemes are opaque handles created from catalog
//! names or descriptor JSON and released with [`zv_scheme_free`]. All
//! computed results are UTF-8 JSON strings allocated by this library and
//! released with [`zv_string_free`]; rationals inside the JSON are decimal
//! strings, never floats. Passing `budget = 0` selects the default
//! enumeration budget.

use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, UnwindSafe};

use zetavals::catalog;
use zetavals::devissage::{propagate_property_p, PropertyPLedger};
use zetavals::error::Error;
use zetavals::lattice::{lemma21_check, sampling};
use zetavals::schemes::{count_points, CountBudget, GroundField, SchemeDescriptor};
use zetavals::special::{special_value, verify_milne};
use zetavals::zeta::{weight_factorization, weil_bound_check};

/// Status codes for every entry point.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ZvStatus {
    Ok = 0,
    /// A pointer argument was null or not valid UTF-8.
    NullPointer = 1,
    /// Malformed request: unknown name, bad JSON, bad flag value.
    InvalidArgument = 2,
    /// Input outside an operation's mathematical domain.
    DomainError = 3,
    /// Arithmetically inconsistent input data.
    ValidationError = 4,
    /// The enumeration budget would be exceeded.
    BudgetExceeded = 5,
    /// The request is outside what the catalog supports.
    Unsupported = 6,
    /// A mathematical check ran and failed.
    CheckFailed = 7,
    /// Internal invariant violation; a bug, not bad input.
    InternalError = 8,
}

fn status_of(err: &Error) -> ZvStatus {
    match err {
        Error::Argument(_) | Error::Json(_) => ZvStatus::InvalidArgument,
        Error::Domain(_) => ZvStatus::DomainError,
        Error::Validation(_) | Error::Precondition(_) => ZvStatus::ValidationError,
        Error::Budget(_) => ZvStatus::BudgetExceeded,
        Error::Unsupported(_) => ZvStatus::Unsupported,
        Error::Factorization(_) => ZvStatus::CheckFailed,
        Error::Internal(_) => ZvStatus::InternalError,
    }
}

/// Opaque scheme handle.
pub struct ZvScheme {
    desc: SchemeDescriptor,
}

fn run_guarded<F: FnOnce() -> ZvStatus + UnwindSafe>(f: F) -> ZvStatus {
    match catch_unwind(f) {
        Ok(status) => status,
        Err(_) => ZvStatus::InternalError,
    }
}

unsafe fn read_str<'a>(ptr: *const c_char) -> Result<&'a str, ZvStatus> {
    if ptr.is_null() {
        return Err(ZvStatus::NullPointer);
    }
    CStr::from_ptr(ptr).to_str().map_err(|_| ZvStatus::NullPointer)
}

fn write_string(out: *mut *mut c_char, s: String) -> ZvStatus {
    if out.is_null() {
        return ZvStatus::NullPointer;
    }
    match CString::new(s) {
        Ok(cs) => {
            unsafe { *out = cs.into_raw() };
            ZvStatus::Ok
        }
        Err(_) => ZvStatus::InternalError,
    }
}

fn budget_from(raw: u64) -> CountBudget {
    if raw == 0 {
        CountBudget::default()
    } else {
        CountBudget { limit: raw }
    }
}

/// Library version as a static string; do not free.
#[no_mangle]
pub extern "C" fn zv_version() -> *const c_char {
    static VERSION: &str = concat!(env!("CARGO_PKG_VERSION"), "\0");
    VERSION.as_ptr() as *const c_char
}

/// Human-readable name for a status code; static, do not free.
#[no_mangle]
pub extern "C" fn zv_status_name(status: ZvStatus) -> *const c_char {
    let name: &'static str = match status {
        ZvStatus::Ok => "ok\0",
        ZvStatus::NullPointer => "null pointer\0",
        ZvStatus::InvalidArgument => "invalid argument\0",
        ZvStatus::DomainError => "domain error\0",
        ZvStatus::ValidationError => "validation error\0",
        ZvStatus::BudgetExceeded => "budget exceeded\0",
        ZvStatus::Unsupported => "unsupported\0",
        ZvStatus::CheckFailed => "check failed\0",
        ZvStatus::InternalError => "internal error\0",
    };
    name.as_ptr() as *const c_char
}

/// Frees a string allocated by this library.
///
/// # Safety
/// `s` must be a string returned by this library (or null) and must not
/// be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn zv_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Creates a scheme handle from a catalog name (`P2`, `E:1,0`, ...).
///
/// # Safety
/// `name` must be a valid NUL-terminated string; `out` must be a valid
/// pointer.
#[no_mangle]
pub unsafe extern "C" fn zv_scheme_from_catalog(
    name: *const c_char,
    out: *mut *mut ZvScheme,
) -> ZvStatus {
    run_guarded(|| {
        let name = match read_str(name) {
            Ok(s) => s,
            Err(st) => return st,
        };
        if out.is_null() {
            return ZvStatus::NullPointer;
        }
        match catalog::resolve(name) {
            Ok(desc) => {
                *out = Box::into_raw(Box::new(ZvScheme { desc }));
                ZvStatus::Ok
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Creates a scheme handle from descriptor JSON (the same schema the CLI
/// and the library use).
///
/// # Safety
/// `json` must be a valid NUL-terminated string; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn zv_scheme_from_json(
    json: *const c_char,
    out: *mut *mut ZvScheme,
) -> ZvStatus {
    run_guarded(|| {
        let json = match read_str(json) {
            Ok(s) => s,
            Err(st) => return st,
        };
        if out.is_null() {
            return ZvStatus::NullPointer;
        }
        match serde_json::from_str::<SchemeDescriptor>(json) {
            Ok(desc) => {
                *out = Box::into_raw(Box::new(ZvScheme { desc }));
                ZvStatus::Ok
            }
            Err(_) => ZvStatus::InvalidArgument,
        }
    })
}

/// Serializes a scheme handle back to descriptor JSON.
///
/// # Safety
/// `scheme` must be a live handle from this library; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn zv_scheme_to_json(
    scheme: *const ZvScheme,
    out: *mut *mut c_char,
) -> ZvStatus {
    run_guarded(|| {
        if scheme.is_null() {
            return ZvStatus::NullPointer;
        }
        let desc = &(*scheme).desc;
        match serde_json::to_string_pretty(desc) {
            Ok(s) => write_string(out, s),
            Err(_) => ZvStatus::InternalError,
        }
    })
}

/// Releases a scheme handle.
///
/// # Safety
/// `scheme` must be a handle from this library or null; it must not be
/// used afterwards.
#[no_mangle]
pub unsafe extern "C" fn zv_scheme_free(scheme: *mut ZvScheme) {
    if !scheme.is_null() {
        drop(Box::from_raw(scheme));
    }
}

/// Exact `#X(F_{p^k})` as a decimal string.
///
/// # Safety
/// `scheme` must be a live handle; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn zv_count_points(
    scheme: *const ZvScheme,
    p: u64,
    k: u32,
    budget: u64,
    out: *mut *mut c_char,
) -> ZvStatus {
    run_guarded(|| {
        if scheme.is_null() {
            return ZvStatus::NullPointer;
        }
        let desc = &(*scheme).desc;
        let field = match GroundField::new(p) {
            Ok(f) => f,
            Err(e) => return status_of(&e),
        };
        match count_points(desc, &field, k, &budget_from(budget)) {
            Ok(n) => write_string(out, n.to_string()),
            Err(e) => status_of(&e),
        }
    })
}

/// Zeta function as JSON: counts used, numerator and denominator
/// coefficient arrays, and (for smooth proper schemes) the weight
/// factorization with its Weil bound report.
///
/// # Safety
/// `scheme` must be a live handle; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn zv_zeta_json(
    scheme: *const ZvScheme,
    p: u64,
    budget: u64,
    out: *mut *mut c_char,
) -> ZvStatus {
    run_guarded(|| {
        if scheme.is_null() {
            return ZvStatus::NullPointer;
        }
        let desc = &(*scheme).desc;
        let field = match GroundField::new(p) {
            Ok(f) => f,
            Err(e) => return status_of(&e),
        };
        let budget = budget_from(budget);
        let computation = match catalog::zeta_of_scheme(desc, &field, &budget) {
            Ok(c) => c,
            Err(e) => return status_of(&e),
        };
        let mut value = serde_json::json!({
            "scheme": desc.short_name(),
            "p": p,
            "counts": computation.counts.counts.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
            "num": computation.zeta.num,
            "den": computation.zeta.den,
        });
        if matches!(
            catalog::smooth_proper_status(desc, &field, &budget),
            Ok(catalog::SmoothProperStatus::Certified)
                | Ok(catalog::SmoothProperStatus::Heuristic { .. })
        ) {
            if let Ok(f) =
                weight_factorization(&computation.zeta, p, desc.dimension().max(0) as usize)
            {
                if let Ok(bounds) = weil_bound_check(&f, p) {
                    value["factorization"] = serde_json::to_value(&f).unwrap_or_default();
                    value["weil_bounds"] = serde_json::to_value(&bounds).unwrap_or_default();
                }
            }
        }
        match serde_json::to_string_pretty(&value) {
            Ok(s) => write_string(out, s),
            Err(_) => ZvStatus::InternalError,
        }
    })
}

/// Exact special value report at integer `n` as JSON.
///
/// # Safety
/// `scheme` must be a live handle; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn zv_special_value_json(
    scheme: *const ZvScheme,
    p: u64,
    n: i64,
    budget: u64,
    out: *mut *mut c_char,
) -> ZvStatus {
    run_guarded(|| {
        if scheme.is_null() {
            return ZvStatus::NullPointer;
        }
        let desc = &(*scheme).desc;
        let field = match GroundField::new(p) {
            Ok(f) => f,
            Err(e) => return status_of(&e),
        };
        let computation = match catalog::zeta_of_scheme(desc, &field, &budget_from(budget)) {
            Ok(c) => c,
            Err(e) => return status_of(&e),
        };
        match special_value(&computation.zeta, p, n, &[]) {
            Ok(report) => match serde_json::to_string_pretty(&report) {
                Ok(s) => write_string(out, s),
                Err(_) => ZvStatus::InternalError,
            },
            Err(e) => status_of(&e),
        }
    })
}

/// Full verification pipeline as JSON. Returns `CheckFailed` when the
/// report is inconsistent (the JSON is still written).
///
/// # Safety
/// `scheme` must be a live handle; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn zv_verify_milne_json(
    scheme: *const ZvScheme,
    p: u64,
    n: i64,
    budget: u64,
    out: *mut *mut c_char,
) -> ZvStatus {
    run_guarded(|| {
        if scheme.is_null() {
            return ZvStatus::NullPointer;
        }
        let desc = &(*scheme).desc;
        let field = match GroundField::new(p) {
            Ok(f) => f,
            Err(e) => return status_of(&e),
        };
        match verify_milne(desc, &field, n, &[], &budget_from(budget)) {
            Ok(report) => {
                let consistent = report.consistent;
                match serde_json::to_string_pretty(&report) {
                    Ok(s) => {
                        let st = write_string(out, s);
                        if st == ZvStatus::Ok && !consistent {
                            ZvStatus::CheckFailed
                        } else {
                            st
                        }
                    }
                    Err(_) => ZvStatus::InternalError,
                }
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Seed-fixed randomized suite for the determinant/cokernel identity.
/// Returns `CheckFailed` if any instance fails (the JSON reports it).
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn zv_lemma21_suite_json(
    p: u64,
    trials: u32,
    rank_max: u32,
    seed: u64,
    out: *mut *mut c_char,
) -> ZvStatus {
    run_guarded(|| {
        if rank_max == 0 {
            return ZvStatus::InvalidArgument;
        }
        if GroundField::new(p).is_err() {
            return ZvStatus::InvalidArgument;
        }
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut holds = 0u32;
        for _ in 0..trials {
            let inst = sampling::random_instance(&mut rng, p, rank_max as usize);
            match lemma21_check(&inst) {
                Ok(report) if report.holds => holds += 1,
                Ok(_) => {}
                Err(e) => return status_of(&e),
            }
        }
        let value = serde_json::json!({
            "p": p,
            "trials": trials,
            "seed": seed,
            "rank_max": rank_max,
            "holds": holds,
            "all_hold": holds == trials,
        });
        match serde_json::to_string_pretty(&value) {
            Ok(s) => {
                let st = write_string(out, s);
                if st == ZvStatus::Ok && holds != trials {
                    ZvStatus::CheckFailed
                } else {
                    st
                }
            }
            Err(_) => ZvStatus::InternalError,
        }
    })
}

/// Property propagation: takes a ledger JSON document and returns the
/// closed ledger as JSON.
///
/// # Safety
/// `ledger_json` must be a valid NUL-terminated string; `out` must be
/// valid.
#[no_mangle]
pub unsafe extern "C" fn zv_propagate_json(
    ledger_json: *const c_char,
    out: *mut *mut c_char,
) -> ZvStatus {
    run_guarded(|| {
        let text = match read_str(ledger_json) {
            Ok(s) => s,
            Err(st) => return st,
        };
        let ledger: PropertyPLedger = match serde_json::from_str(text) {
            Ok(l) => l,
            Err(_) => return ZvStatus::InvalidArgument,
        };
        let closed = propagate_property_p(&ledger);
        match serde_json::to_string_pretty(&closed) {
            Ok(s) => write_string(out, s),
            Err(_) => ZvStatus::InternalError,
        }
    })
}
