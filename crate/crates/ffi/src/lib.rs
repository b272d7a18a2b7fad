//! C ABI over `abelfield`. Every handle is opaque and owned by the caller
//! until passed to its `_free` function. Every fallible call returns an
//! `AbelStatus`; on failure the message is available from
//! `abel_last_error_message` on the same thread.

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use abelfield::cyclotomic::AbelianFieldSpec;
use abelfield::oracle::{dump, OracleDump};
use abelfield::reconstruct::{reconstruct_global, roundtrip_check, ReconstructionReport, Verdict};
use abelfield::verify::discriminant;
use abelfield::Error;

/// A field `Q(zeta_n)^H`.
pub struct AbelField(AbelianFieldSpec);

/// Oracle output for one field.
pub struct AbelDump(OracleDump);

/// Result of a reconstruction.
pub struct AbelReport(ReconstructionReport);

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AbelStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InvalidInput = 3,
    Schema = 4,
    OracleCorruption = 5,
    Overflow = 6,
    Panic = 7,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AbelVerdict {
    Match = 0,
    Mismatch = 1,
    Uncertified = 2,
}

impl From<Verdict> for AbelVerdict {
    fn from(v: Verdict) -> Self {
        match v {
            Verdict::Match => AbelVerdict::Match,
            Verdict::Mismatch => AbelVerdict::Mismatch,
            Verdict::Uncertified => AbelVerdict::Uncertified,
        }
    }
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("interior nuls removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> AbelStatus {
    match e {
        Error::Schema(_) => AbelStatus::Schema,
        Error::OracleCorruption(_) | Error::Level(_) => AbelStatus::OracleCorruption,
        Error::Overflow(_) | Error::DegreeCap { .. } => AbelStatus::Overflow,
        _ => AbelStatus::InvalidInput,
    }
}

/// Runs `f`, recording any error or panic.
fn guard(f: impl FnOnce() -> Result<(), (AbelStatus, String)>) -> AbelStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => AbelStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            AbelStatus::Panic
        }
    }
}

fn lib(e: Error) -> (AbelStatus, String) {
    (status_of(&e), e.to_string())
}

fn null(what: &str) -> (AbelStatus, String) {
    (AbelStatus::NullPointer, format!("{what} is null"))
}

unsafe fn as_ref<'a, T>(p: *const T, what: &str) -> Result<&'a T, (AbelStatus, String)> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn read_str<'a>(s: *const c_char, what: &str) -> Result<&'a str, (AbelStatus, String)> {
    if s.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|e| (AbelStatus::InvalidUtf8, format!("{what}: {e}")))
}

unsafe fn write_out<T>(out: *mut T, value: T) -> Result<(), (AbelStatus, String)> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    out.write(value);
    Ok(())
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), (AbelStatus, String)> {
    let c = CString::new(s).map_err(|e| (AbelStatus::InvalidInput, e.to_string()))?;
    write_out(out, c.into_raw())
}

/// Message of the last failed call on this thread, or null. Valid until the
/// next call into this library.
#[no_mangle]
pub extern "C" fn abel_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Frees a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn abel_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// `Q(zeta_modulus)^H` with `H` generated by `generators[0..len]`.
#[no_mangle]
pub unsafe extern "C" fn abel_field_new(
    modulus: u64,
    generators: *const i64,
    len: usize,
    out: *mut *mut AbelField,
) -> AbelStatus {
    guard(|| {
        let gens = if len == 0 {
            &[][..]
        } else {
            if generators.is_null() {
                return Err(null("generators"));
            }
            std::slice::from_raw_parts(generators, len)
        };
        let spec = AbelianFieldSpec::new(modulus, gens).map_err(lib)?;
        write_out(out, Box::into_raw(Box::new(AbelField(spec))))
    })
}

/// Parses `{"modulus": n, "subgroup_generators": [...]}`.
#[no_mangle]
pub unsafe extern "C" fn abel_field_from_json(json: *const c_char, out: *mut *mut AbelField) -> AbelStatus {
    guard(|| {
        let spec = AbelianFieldSpec::from_json(read_str(json, "json")?).map_err(lib)?;
        write_out(out, Box::into_raw(Box::new(AbelField(spec))))
    })
}

#[no_mangle]
pub unsafe extern "C" fn abel_field_to_json(field: *const AbelField, out: *mut *mut c_char) -> AbelStatus {
    guard(|| write_string(out, as_ref(field, "field")?.0.to_json()))
}

#[no_mangle]
pub unsafe extern "C" fn abel_field_free(field: *mut AbelField) {
    if !field.is_null() {
        drop(Box::from_raw(field));
    }
}

#[no_mangle]
pub unsafe extern "C" fn abel_field_conductor(field: *const AbelField, out: *mut u64) -> AbelStatus {
    guard(|| write_out(out, as_ref(field, "field")?.0.conductor().map_err(lib)?))
}

#[no_mangle]
pub unsafe extern "C" fn abel_field_degree(field: *const AbelField, out: *mut u64) -> AbelStatus {
    guard(|| write_out(out, as_ref(field, "field")?.0.degree()))
}

/// `|disc K|` in decimal.
#[no_mangle]
pub unsafe extern "C" fn abel_field_discriminant(field: *const AbelField, out: *mut *mut c_char) -> AbelStatus {
    guard(|| {
        let d = discriminant(&as_ref(field, "field")?.0).map_err(lib)?;
        write_string(out, d.to_string())
    })
}

/// Local data at every prime up to `bound`.
#[no_mangle]
pub unsafe extern "C" fn abel_oracle_dump(field: *const AbelField, bound: u64, out: *mut *mut AbelDump) -> AbelStatus {
    guard(|| {
        let d = dump(&as_ref(field, "field")?.0, bound).map_err(lib)?;
        write_out(out, Box::into_raw(Box::new(AbelDump(d))))
    })
}

#[no_mangle]
pub unsafe extern "C" fn abel_dump_from_json(json: *const c_char, out: *mut *mut AbelDump) -> AbelStatus {
    guard(|| {
        let d = OracleDump::from_json(read_str(json, "json")?).map_err(lib)?;
        write_out(out, Box::into_raw(Box::new(AbelDump(d))))
    })
}

#[no_mangle]
pub unsafe extern "C" fn abel_dump_to_json(dump: *const AbelDump, out: *mut *mut c_char) -> AbelStatus {
    guard(|| write_string(out, as_ref(dump, "dump")?.0.to_json()))
}

#[no_mangle]
pub unsafe extern "C" fn abel_dump_free(dump: *mut AbelDump) {
    if !dump.is_null() {
        drop(Box::from_raw(dump));
    }
}

/// Rebuilds the field from the dump alone.
#[no_mangle]
pub unsafe extern "C" fn abel_reconstruct(dump: *const AbelDump, out: *mut *mut AbelReport) -> AbelStatus {
    guard(|| {
        let r = reconstruct_global(&as_ref(dump, "dump")?.0).map_err(lib)?;
        write_out(out, Box::into_raw(Box::new(AbelReport(r))))
    })
}

#[no_mangle]
pub unsafe extern "C" fn abel_report_n_g(report: *const AbelReport, out: *mut u64) -> AbelStatus {
    guard(|| write_out(out, as_ref(report, "report")?.0.n_g))
}

#[no_mangle]
pub unsafe extern "C" fn abel_report_certified(report: *const AbelReport, out: *mut bool) -> AbelStatus {
    guard(|| write_out(out, as_ref(report, "report")?.0.certified))
}

/// A new handle to the rebuilt field.
#[no_mangle]
pub unsafe extern "C" fn abel_report_field(report: *const AbelReport, out: *mut *mut AbelField) -> AbelStatus {
    guard(|| {
        let field = as_ref(report, "report")?.0.field.clone();
        write_out(out, Box::into_raw(Box::new(AbelField(field))))
    })
}

#[no_mangle]
pub unsafe extern "C" fn abel_report_to_json(report: *const AbelReport, out: *mut *mut c_char) -> AbelStatus {
    guard(|| write_string(out, as_ref(report, "report")?.0.to_json()))
}

#[no_mangle]
pub unsafe extern "C" fn abel_report_free(report: *mut AbelReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}

/// Whether two handles describe the same field.
#[no_mangle]
pub unsafe extern "C" fn abel_field_equal(a: *const AbelField, b: *const AbelField, out: *mut bool) -> AbelStatus {
    guard(|| {
        let a = as_ref(a, "a")?.0.normalize().map_err(lib)?;
        let b = as_ref(b, "b")?.0.normalize().map_err(lib)?;
        write_out(out, a == b)
    })
}

/// Dump, reload, rebuild and compare in one call.
#[no_mangle]
pub unsafe extern "C" fn abel_roundtrip(field: *const AbelField, bound: u64, out: *mut AbelVerdict) -> AbelStatus {
    guard(|| {
        let r = roundtrip_check(&as_ref(field, "field")?.0, bound).map_err(lib)?;
        write_out(out, r.verdict.unwrap_or(Verdict::Uncertified).into())
    })
}
