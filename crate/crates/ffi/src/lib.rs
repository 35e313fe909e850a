//! C bindings for rmckit.
//!
//! Objects cross the boundary as opaque handles created by `*_load`,
//! `*_parse` or `rmck_check` and released by the matching `*_free`. Every
//! fallible function returns an [`RmckStatus`]; on failure the message is
//! available from [`rmck_last_error_message`] on the same thread. Strings
//! returned to the caller are owned by the caller and released with
//! [`rmck_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::ptr;

use rmckit::cli::{self, CheckKind, CheckOptions, Engine, Report, SliceRange};
use rmckit::format::{parse_aut, serialize_aut, AutFile, AutValue};
use rmckit::load::LoadedSystem;
use rmckit::{Error, Status, UpWord};

/// Result codes of fallible calls.
#[repr(C)]
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum RmckStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullArgument = 1,
    /// A string argument was not valid UTF-8.
    InvalidUtf8 = 2,
    /// Malformed files, unknown symbols, bad options.
    InputError = 3,
    /// The operation is not defined for this kind of system or automaton.
    Unsupported = 4,
    /// A size or alphabet cap was exceeded.
    CapExceeded = 5,
    Io = 6,
    /// A bug in the library; the message names the panic.
    Internal = 7,
}

/// Outcome of a check.
#[repr(C)]
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum RmckVerdict {
    Holds = 0,
    Violated = 1,
    Unknown = 2,
}

#[repr(C)]
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum RmckCheckKind {
    Reach = 0,
    Gsp = 1,
    Losp = 2,
    Closure = 3,
    ClosureStar = 4,
    Sim = 5,
}

#[repr(C)]
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum RmckEngine {
    Loop = 0,
    Sim = 1,
}

/// Options of [`rmck_check`]. Start from [`rmck_check_options_default`].
#[repr(C)]
#[derive(Copy, Clone, Debug)]
pub struct RmckCheckOptions {
    /// Declared property name or automaton file path, or null for the first
    /// declared property the check can use.
    pub property: *const c_char,
    pub slice_lo: usize,
    pub slice_hi: usize,
    pub unsliced: bool,
    pub budget: usize,
    pub engine: RmckEngine,
}

/// A loaded system file with its properties.
pub struct RmckSystem(LoadedSystem);

/// The result of a check.
pub struct RmckReport(Report);

/// A parsed automaton or transducer.
pub struct RmckAutomaton(AutFile);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn fail(status: RmckStatus, msg: impl Into<String>) -> RmckStatus {
    set_error(msg.into());
    status
}

fn error_status(e: &Error) -> RmckStatus {
    match e {
        Error::Unsupported(_) | Error::ModeMismatch(_) => RmckStatus::Unsupported,
        Error::AlphabetCapExceeded { .. } | Error::SizeCap { .. } => RmckStatus::CapExceeded,
        Error::Io(_) => RmckStatus::Io,
        _ => RmckStatus::InputError,
    }
}

/// Runs `f`, turning library errors and panics into status codes.
fn guard(f: impl FnOnce() -> Result<(), RmckStatus>) -> RmckStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => RmckStatus::Ok,
        Ok(Err(s)) => s,
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            fail(RmckStatus::Internal, format!("internal error: {msg}"))
        }
    }
}

fn lib<T>(r: rmckit::Result<T>) -> Result<T, RmckStatus> {
    r.map_err(|e| fail(error_status(&e), e.to_string()))
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, RmckStatus> {
    if p.is_null() {
        return Err(fail(RmckStatus::NullArgument, format!("{what} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| fail(RmckStatus::InvalidUtf8, format!("{what} is not valid UTF-8")))
}

unsafe fn ref_arg<'a, T>(p: *const T, what: &str) -> Result<&'a T, RmckStatus> {
    p.as_ref()
        .ok_or_else(|| fail(RmckStatus::NullArgument, format!("{what} is null")))
}

fn out_arg<T>(p: *mut T, what: &str) -> Result<(), RmckStatus> {
    if p.is_null() {
        Err(fail(RmckStatus::NullArgument, format!("{what} is null")))
    } else {
        Ok(())
    }
}

fn owned_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).unwrap_or_default().into_raw()
}

/// The library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn rmck_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// The message of the last failed call on this thread, or null. Valid
/// until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn rmck_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn rmck_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Fills `opts` with the command line defaults: slices 2..8, budget 64,
/// loop engine.
///
/// # Safety
/// `opts` must be null or point to writable memory for the struct.
#[no_mangle]
pub unsafe extern "C" fn rmck_check_options_default(opts: *mut RmckCheckOptions) -> RmckStatus {
    guard(|| {
        out_arg(opts, "opts")?;
        let d = CheckOptions::default();
        opts.write(RmckCheckOptions {
            property: ptr::null(),
            slice_lo: d.slice.lo,
            slice_hi: d.slice.hi,
            unsliced: d.unsliced,
            budget: d.budget,
            engine: RmckEngine::Loop,
        });
        Ok(())
    })
}

/// Loads a system file; referenced automata are read relative to its
/// directory.
///
/// # Safety
/// `path` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn rmck_system_load(path: *const c_char, out: *mut *mut RmckSystem) -> RmckStatus {
    guard(|| {
        out_arg(out, "out")?;
        let path = str_arg(path, "path")?;
        let sys = lib(LoadedSystem::load(Path::new(path)))?;
        *out = Box::into_raw(Box::new(RmckSystem(sys)));
        Ok(())
    })
}

/// # Safety
/// `sys` must be null or a live handle from [`rmck_system_load`].
#[no_mangle]
pub unsafe extern "C" fn rmck_system_free(sys: *mut RmckSystem) {
    if !sys.is_null() {
        drop(Box::from_raw(sys));
    }
}

/// Runs a check. `opts` may be null for the defaults.
///
/// # Safety
/// `sys` must be a live handle, `opts` null or valid, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn rmck_check(
    sys: *const RmckSystem,
    kind: RmckCheckKind,
    opts: *const RmckCheckOptions,
    out: *mut *mut RmckReport,
) -> RmckStatus {
    guard(|| {
        out_arg(out, "out")?;
        let sys = ref_arg(sys, "sys")?;
        let mut options = CheckOptions::default();
        if let Some(o) = opts.as_ref() {
            if o.slice_lo > o.slice_hi {
                return Err(fail(
                    RmckStatus::InputError,
                    format!("empty slice range {}..{}", o.slice_lo, o.slice_hi),
                ));
            }
            options.property = if o.property.is_null() {
                None
            } else {
                Some(str_arg(o.property, "property")?.to_string())
            };
            options.slice = SliceRange {
                lo: o.slice_lo,
                hi: o.slice_hi,
            };
            options.unsliced = o.unsliced;
            options.budget = o.budget;
            options.engine = match o.engine {
                RmckEngine::Loop => Engine::Loop,
                RmckEngine::Sim => Engine::Sim,
            };
        }
        let kind = match kind {
            RmckCheckKind::Reach => CheckKind::Reach,
            RmckCheckKind::Gsp => CheckKind::Gsp,
            RmckCheckKind::Losp => CheckKind::Losp,
            RmckCheckKind::Closure => CheckKind::Closure,
            RmckCheckKind::ClosureStar => CheckKind::ClosureStar,
            RmckCheckKind::Sim => CheckKind::Sim,
        };
        let report = lib(cli::check_loaded(&sys.0, kind, &options))?;
        *out = Box::into_raw(Box::new(RmckReport(report)));
        Ok(())
    })
}

/// The overall verdict: violated if any slice is, else unknown if any
/// slice is, else holds.
///
/// # Safety
/// `report` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn rmck_report_verdict(report: *const RmckReport, out: *mut RmckVerdict) -> RmckStatus {
    guard(|| {
        out_arg(out, "out")?;
        let r = ref_arg(report, "report")?;
        *out = match r.0.result {
            Status::Holds => RmckVerdict::Holds,
            Status::Violated => RmckVerdict::Violated,
            Status::Unknown => RmckVerdict::Unknown,
        };
        Ok(())
    })
}

/// The report in the command line's JSON layout. Free the result with
/// [`rmck_string_free`]. Returns null when `report` is null.
///
/// # Safety
/// `report` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn rmck_report_json(report: *const RmckReport) -> *mut c_char {
    match report.as_ref() {
        Some(r) => owned_string(cli::report_json(&r.0)),
        None => {
            set_error("report is null".into());
            ptr::null_mut()
        }
    }
}

/// # Safety
/// `report` must be null or a live handle from [`rmck_check`].
#[no_mangle]
pub unsafe extern "C" fn rmck_report_free(report: *mut RmckReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}

/// Parses an automaton in the `.aut` text format.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn rmck_automaton_parse(text: *const c_char, out: *mut *mut RmckAutomaton) -> RmckStatus {
    guard(|| {
        out_arg(out, "out")?;
        let text = str_arg(text, "text")?;
        let a = lib(parse_aut(text, "<input>"))?;
        *out = Box::into_raw(Box::new(RmckAutomaton(a)));
        Ok(())
    })
}

/// The canonical minimal form, as a new handle.
///
/// # Safety
/// `a` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn rmck_automaton_minimize(a: *const RmckAutomaton, out: *mut *mut RmckAutomaton) -> RmckStatus {
    guard(|| {
        out_arg(out, "out")?;
        let a = ref_arg(a, "automaton")?;
        let m = lib(cli::minimized(a.0.clone()))?;
        *out = Box::into_raw(Box::new(RmckAutomaton(m)));
        Ok(())
    })
}

/// The automaton in the `.aut` text format. Free the result with
/// [`rmck_string_free`]. Returns null when `a` is null.
///
/// # Safety
/// `a` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn rmck_automaton_serialize(a: *const RmckAutomaton) -> *mut c_char {
    match a.as_ref() {
        Some(a) => owned_string(serialize_aut(&a.0)),
        None => {
            set_error("automaton is null".into());
            ptr::null_mut()
        }
    }
}

/// Membership of a word. Finite words are written as in the system files
/// (`N T N`, or `N/T T/N` for transducers); ultimately periodic words as
/// `prefix | period`.
///
/// # Safety
/// `a` must be a live handle, `word` a NUL-terminated string, `out`
/// writable.
#[no_mangle]
pub unsafe extern "C" fn rmck_automaton_accepts(
    a: *const RmckAutomaton,
    word: *const c_char,
    out: *mut bool,
) -> RmckStatus {
    guard(|| {
        out_arg(out, "out")?;
        let a = ref_arg(a, "automaton")?;
        let word = str_arg(word, "word")?;
        let finite = |n: &rmckit::Nfa| lib(n.alphabet().parse_word(word).and_then(|w| n.accepts(&w)));
        let omega = |b: &rmckit::Buchi| {
            let (u, v) = word
                .split_once('|')
                .ok_or_else(|| fail(RmckStatus::InputError, "ultimately periodic words are written `prefix | period`"))?;
            let s = b.alphabet();
            lib(s.parse_word(u)
                .and_then(|u| Ok((u, s.parse_word(v)?)))
                .and_then(|(u, v)| UpWord::new(u, v))
                .and_then(|w| b.accepts_up_word(&w)))
        };
        *out = match &a.0.value {
            AutValue::Finite(n) => finite(n)?,
            AutValue::Transducer(t) => finite(t.inner())?,
            AutValue::Omega(b) => omega(b)?,
            AutValue::OmegaTransducer(t) => omega(t.inner())?,
        };
        Ok(())
    })
}

/// # Safety
/// `a` must be null or a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn rmck_automaton_free(a: *mut RmckAutomaton) {
    if !a.is_null() {
        drop(Box::from_raw(a));
    }
}
