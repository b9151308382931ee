//! C interface to matroidkit.
//!
//! Instances live behind opaque [`MkInstance`] handles. Every fallible call
//! returns an [`MkStatus`]; on failure [`mk_last_error`] describes the error
//! for the calling thread. Strings handed out by the library are released
//! with [`mk_string_free`], handles with [`mk_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::ptr;

use matroidkit::degeneracy::largest_k_degenerate;
use matroidkit::flats::flat_size_stats;
use matroidkit::generators;
use matroidkit::instance::{Instance, InstanceMeta, Representability};
use matroidkit::io::{self, Format};
use matroidkit::report::{verify_section, ReportDocument};
use matroidkit::verify::{CheckName, CheckOptions};
use matroidkit::Error;

/// Opaque matroid instance.
pub struct MkInstance {
    inner: Instance,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MkStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidArgument = 2,
    Parse = 3,
    Io = 4,
    Precondition = 5,
    SearchLimit = 6,
    Unserializable = 7,
    Panic = 8,
}

/// Rank-k flat counts; the average size is `average_num / average_den` in lowest terms.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct MkFlatStats {
    pub count: u64,
    pub total_size: u64,
    pub average_num: u64,
    pub average_den: u64,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

struct Fail(MkStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        let status = match &e {
            Error::Parse(_) | Error::ParseAt { .. } => MkStatus::Parse,
            Error::Io(_) => MkStatus::Io,
            Error::Precondition(_) | Error::NotAFlat | Error::BadBasepoint(_) => MkStatus::Precondition,
            Error::SearchLimit(_) => MkStatus::SearchLimit,
            Error::Unserializable(_) => MkStatus::Unserializable,
            _ => MkStatus::InvalidArgument,
        };
        Fail(status, e.to_string())
    }
}

fn null(what: &str) -> Fail {
    Fail(MkStatus::NullArgument, format!("{what} is null"))
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> MkStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            MkStatus::Ok
        }
        Ok(Err(Fail(status, message))) => {
            set_error(message);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            MkStatus::Panic
        }
    }
}

unsafe fn text<'a>(s: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if s.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| Fail(MkStatus::InvalidArgument, format!("{what} is not UTF-8")))
}

unsafe fn handle<'a>(h: *const MkInstance) -> Result<&'a Instance, Fail> {
    h.as_ref().map(|h| &h.inner).ok_or_else(|| null("instance handle"))
}

unsafe fn give(out: *mut *mut MkInstance, inst: Instance) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    *out = Box::into_raw(Box::new(MkInstance { inner: inst }));
    Ok(())
}

unsafe fn give_string(out: *mut *mut c_char, s: String) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    let c = CString::new(s).map_err(|_| Fail(MkStatus::InvalidArgument, "string contains NUL".into()))?;
    *out = c.into_raw();
    Ok(())
}

/// Message for the last failed call on this thread, or null. Valid until
/// the next call into the library from this thread.
#[no_mangle]
pub extern "C" fn mk_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn mk_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Reads an instance file; the extension picks the format.
///
/// # Safety
/// `path` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mk_load(path: *const c_char, out: *mut *mut MkInstance) -> MkStatus {
    guard(|| {
        let path = text(path, "path")?;
        give(out, io::read_instance(Path::new(path))?)
    })
}

/// Parses instance text in the format named by its file extension
/// (`mtx`, `gg`, `inc` or `rk`).
///
/// # Safety
/// `source`, `format` and `name` must be NUL-terminated strings; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mk_parse(
    source: *const c_char,
    format: *const c_char,
    name: *const c_char,
    out: *mut *mut MkInstance,
) -> MkStatus {
    guard(|| {
        let body = text(source, "source")?;
        let ext = text(format, "format")?;
        let name = text(name, "name")?;
        let format = Format::from_extension(ext)
            .ok_or_else(|| Fail(MkStatus::InvalidArgument, format!("unknown format `{ext}`")))?;
        give(out, io::parse_instance(body, format, name, name, None)?)
    })
}

/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mk_dowling(rank: usize, group_order: u32, delete_joints: bool, out: *mut *mut MkInstance) -> MkStatus {
    guard(|| give(out, generators::dowling_instance(rank, group_order, delete_joints)?))
}

/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mk_uniform(rank: usize, size: usize, out: *mut *mut MkInstance) -> MkStatus {
    guard(|| give(out, generators::uniform_instance(rank, size)?))
}

/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mk_figure1(a: usize, out: *mut *mut MkInstance) -> MkStatus {
    guard(|| give(out, generators::figure1_instance(a)?))
}

/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mk_graphic_k4(out: *mut *mut MkInstance) -> MkStatus {
    guard(|| {
        let meta = InstanceMeta::new("k4", Representability::REAL);
        give(out, Instance::new(meta, generators::graphic_k4()?))
    })
}

/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mk_random(rank: usize, size: usize, seed: u64, out: *mut *mut MkInstance) -> MkStatus {
    guard(|| give(out, generators::random_instance(rank, size, seed)?))
}

/// Releases a handle; null is ignored.
///
/// # Safety
/// `h` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn mk_free(h: *mut MkInstance) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// Number of elements, or 0 for a null handle.
///
/// # Safety
/// `h` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn mk_size(h: *const MkInstance) -> usize {
    h.as_ref().map_or(0, |h| h.inner.matroid.len())
}

/// Rank of the whole ground set, or 0 for a null handle.
///
/// # Safety
/// `h` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn mk_full_rank(h: *const MkInstance) -> usize {
    h.as_ref().map_or(0, |h| h.inner.matroid.full_rank())
}

/// Rank of the set of `len` element indices at `elements`.
///
/// # Safety
/// `elements` must point to `len` readable values (or be null when `len` is 0);
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mk_rank(h: *const MkInstance, elements: *const usize, len: usize, out: *mut usize) -> MkStatus {
    guard(|| {
        let inst = handle(h)?;
        if out.is_null() || (elements.is_null() && len > 0) {
            return Err(null("argument"));
        }
        let slice = if len == 0 { &[][..] } else { std::slice::from_raw_parts(elements, len) };
        let set = inst.matroid.set_from(slice)?;
        *out = inst.matroid.try_rank(set)?;
        Ok(())
    })
}

/// Count, total size and exact average size of the rank-k flats.
///
/// # Safety
/// `h` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn mk_flat_stats(h: *const MkInstance, k: usize, out: *mut MkFlatStats) -> MkStatus {
    guard(|| {
        let inst = handle(h)?;
        let out = out.as_mut().ok_or_else(|| null("output pointer"))?;
        let s = flat_size_stats(&inst.matroid, k)?;
        let small = |x: &matroidkit::algebra::Rational| -> Result<(u64, u64), Fail> {
            let n = u64::try_from(x.numer()).map_err(|_| Fail(MkStatus::InvalidArgument, "average overflows".into()))?;
            let d = u64::try_from(x.denom()).map_err(|_| Fail(MkStatus::InvalidArgument, "average overflows".into()))?;
            Ok((n, d))
        };
        let (average_num, average_den) = small(&s.average)?;
        *out = MkFlatStats { count: s.count as u64, total_size: s.total_size as u64, average_num, average_den };
        Ok(())
    })
}

/// Size of a largest k-degenerate subset; optionally its element indices,
/// written as a 128-bit mask split into `mask_lo` and `mask_hi`.
///
/// # Safety
/// `h` must be a live handle; `out_size` writable; `mask_lo` and `mask_hi`
/// may be null.
#[no_mangle]
pub unsafe extern "C" fn mk_largest_degenerate(
    h: *const MkInstance,
    k: usize,
    node_limit: u64,
    out_size: *mut usize,
    mask_lo: *mut u64,
    mask_hi: *mut u64,
) -> MkStatus {
    guard(|| {
        let inst = handle(h)?;
        let out_size = out_size.as_mut().ok_or_else(|| null("output pointer"))?;
        let d = largest_k_degenerate(&inst.matroid, k, None, node_limit)?;
        *out_size = d.len();
        let bits: u128 = d.elements.bits();
        if let Some(lo) = mask_lo.as_mut() {
            *lo = bits as u64;
        }
        if let Some(hi) = mask_hi.as_mut() {
            *hi = (bits >> 64) as u64;
        }
        Ok(())
    })
}

/// Runs checks and returns the report document as JSON. `checks` is a
/// comma-separated list of check names, or null for every check.
/// `violation` (optional) is set when a theorem check fails.
///
/// # Safety
/// `h` must be a live handle; `checks` null or NUL-terminated; `out_json`
/// writable; `violation` null or writable.
#[no_mangle]
pub unsafe extern "C" fn mk_verify_json(
    h: *const MkInstance,
    checks: *const c_char,
    node_limit: u64,
    out_json: *mut *mut c_char,
    violation: *mut bool,
) -> MkStatus {
    guard(|| {
        let inst = handle(h)?;
        let names: Vec<CheckName> = if checks.is_null() {
            CheckName::ALL.to_vec()
        } else {
            text(checks, "checks")?
                .split(',')
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .map(str::parse)
                .collect::<Result<_, Error>>()?
        };
        let opts = CheckOptions { node_limit, ..Default::default() };
        let doc = ReportDocument::new(vec![verify_section(inst, &names, &opts)?]);
        if let Some(v) = violation.as_mut() {
            *v = doc.has_violation();
        }
        give_string(out_json, doc.to_json())
    })
}

/// Serializes the instance in the format named by `format` (a file extension).
///
/// # Safety
/// `h` must be a live handle; `format` NUL-terminated; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn mk_serialize(h: *const MkInstance, format: *const c_char, out: *mut *mut c_char) -> MkStatus {
    guard(|| {
        let inst = handle(h)?;
        let ext = text(format, "format")?;
        let format = Format::from_extension(ext)
            .ok_or_else(|| Fail(MkStatus::InvalidArgument, format!("unknown format `{ext}`")))?;
        give_string(out, io::serialize(inst, format)?)
    })
}

/// Releases a string returned by the library; null is ignored.
///
/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn mk_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
