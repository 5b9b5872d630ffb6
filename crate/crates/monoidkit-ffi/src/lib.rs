//! C ABI over monoidkit: opaque handles, status codes, caller-owned strings.
//!
//! Every function returns an [`MkStatus`]; on failure [`mk_last_error`] holds the message
//! until the next call on the same thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::ptr;

use monoidkit::io::{Bounds, Object, Workspace};
use monoidkit::linalg::AbelianGroup;
use monoidkit::monoid::MonoidValue;
use monoidkit::{spectra, torreal, Error};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MkStatus {
    Ok = 0,
    NullPointer = 1,
    Utf8 = 2,
    Parse = 3,
    Invalid = 4,
    BoundExceeded = 5,
    Unsupported = 6,
    WrongKind = 7,
    BufferTooSmall = 8,
    Panic = 9,
}

/// Loaded monoids and bounds.
pub struct MkWorkspace {
    inner: Workspace,
}

/// A validated document: monoid, A-set, sequence, complex, simplicial A-set or scheme.
pub struct MkObject {
    inner: Object,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let s = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(s));
}

fn status_of(e: &Error) -> MkStatus {
    match e {
        Error::Parse(_) => MkStatus::Parse,
        Error::BoundExceeded(_) | Error::CapExceeded(_) => MkStatus::BoundExceeded,
        Error::UnsupportedBackend(_) => MkStatus::Unsupported,
        _ => MkStatus::Invalid,
    }
}

fn guard(f: impl FnOnce() -> Result<(), (MkStatus, String)>) -> MkStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => MkStatus::Ok,
        Ok(Err((s, msg))) => {
            set_error(msg);
            s
        }
        Err(_) => {
            set_error("panic inside monoidkit");
            MkStatus::Panic
        }
    }
}

fn lib(e: Error) -> (MkStatus, String) {
    (status_of(&e), e.to_string())
}

fn null(what: &str) -> (MkStatus, String) {
    (MkStatus::NullPointer, format!("{what} is null"))
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, (MkStatus, String)> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| (MkStatus::Utf8, format!("{what} is not UTF-8")))
}

/// Message for the last failure on this thread, or null. Owned by the library.
#[no_mangle]
pub extern "C" fn mk_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// New workspace; `carrier_bound == 0` keeps the default.
#[no_mangle]
pub extern "C" fn mk_workspace_new(carrier_bound: usize) -> *mut MkWorkspace {
    let mut bounds = Bounds::default();
    if carrier_bound > 0 {
        bounds.carrier = carrier_bound;
    }
    Box::into_raw(Box::new(MkWorkspace { inner: Workspace::new(bounds) }))
}

/// # Safety
/// `ws` must come from [`mk_workspace_new`] and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn mk_workspace_free(ws: *mut MkWorkspace) {
    if !ws.is_null() {
        drop(Box::from_raw(ws));
    }
}

/// Parse and validate a JSON document. Relative references resolve against `dir`, which may be null.
///
/// # Safety
/// Pointers must be valid; `json` and `dir` NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn mk_load_json(ws: *mut MkWorkspace, json: *const c_char, dir: *const c_char, out: *mut *mut MkObject) -> MkStatus {
    guard(|| {
        let ws = ws.as_mut().ok_or_else(|| null("workspace"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        let json = text(json, "json")?;
        let dir = if dir.is_null() { "." } else { text(dir, "dir")? };
        let o = ws.inner.load_str(json, Path::new(dir)).map_err(lib)?;
        *out = Box::into_raw(Box::new(MkObject { inner: o }));
        Ok(())
    })
}

/// # Safety
/// `obj` must come from [`mk_load_json`] and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn mk_object_free(obj: *mut MkObject) {
    if !obj.is_null() {
        drop(Box::from_raw(obj));
    }
}

/// Static kind name: `monoid`, `aset`, `aes`, `dacomplex`, `simplicial` or `scheme`.
///
/// # Safety
/// `obj` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn mk_object_kind(obj: *const MkObject) -> *const c_char {
    let s: &'static CStr = match obj.as_ref().map(|o| o.inner.kind()) {
        Some("monoid") => c"monoid",
        Some("aset") => c"aset",
        Some("aes") => c"aes",
        Some("dacomplex") => c"dacomplex",
        Some("simplicial") => c"simplicial",
        Some("scheme") => c"scheme",
        _ => return ptr::null(),
    };
    s.as_ptr()
}

/// Number of elements of a finite monoid, or points of an A-set.
///
/// # Safety
/// `obj` and `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn mk_size(obj: *const MkObject, out: *mut usize) -> MkStatus {
    guard(|| {
        let o = obj.as_ref().ok_or_else(|| null("object"))?;
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        *out = match &o.inner {
            Object::Monoid(MonoidValue::Finite(m)) => m.len(),
            Object::ASet(x) => x.len(),
            _ => return Err((MkStatus::WrongKind, "expected a finite monoid or an A-set".into())),
        };
        Ok(())
    })
}

/// Number of primes and the Krull dimension of a finite monoid.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn mk_mspec(obj: *const MkObject, primes: *mut usize, dimension: *mut usize) -> MkStatus {
    guard(|| {
        let o = obj.as_ref().ok_or_else(|| null("object"))?;
        let (primes, dimension) = (primes.as_mut().ok_or_else(|| null("primes"))?, dimension.as_mut().ok_or_else(|| null("dimension"))?);
        let Object::Monoid(MonoidValue::Finite(m)) = &o.inner else {
            return Err((MkStatus::WrongKind, "expected a finite monoid".into()));
        };
        *primes = spectra::mspec(m).len();
        *dimension = spectra::dimension(m);
        Ok(())
    })
}

/// Rank of `Tor_1(F1[t]/(t^k), X)` for an `F1[t]`-set.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn mk_tor1_rank(obj: *const MkObject, k: usize, out: *mut usize) -> MkStatus {
    guard(|| {
        let o = obj.as_ref().ok_or_else(|| null("object"))?;
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        let Object::ASet(x) = &o.inner else {
            return Err((MkStatus::WrongKind, "expected an A-set".into()));
        };
        *out = torreal::tor1_monogenic(x, k).map_err(lib)?.formula_rank;
        Ok(())
    })
}

fn write_group(g: &AbelianGroup, free_rank: *mut usize, torsion: *mut u64, cap: usize, len: *mut usize) -> Result<(), (MkStatus, String)> {
    unsafe {
        *free_rank.as_mut().ok_or_else(|| null("free_rank"))? = g.free_rank;
        *len.as_mut().ok_or_else(|| null("len"))? = g.torsion.len();
        if g.torsion.len() > cap {
            return Err((MkStatus::BufferTooSmall, format!("{} torsion factors, buffer holds {cap}", g.torsion.len())));
        }
        if !g.torsion.is_empty() {
            if torsion.is_null() {
                return Err(null("torsion"));
            }
            for (i, &t) in g.torsion.iter().enumerate() {
                *torsion.add(i) = t as u64;
            }
        }
    }
    Ok(())
}

/// `Pic` of a scheme as free rank plus invariant factors written to `torsion[..cap]`.
///
/// # Safety
/// Pointers must be valid; `torsion` must hold `cap` entries.
#[no_mangle]
pub unsafe extern "C" fn mk_pic(obj: *const MkObject, free_rank: *mut usize, torsion: *mut u64, cap: usize, len: *mut usize) -> MkStatus {
    guard(|| {
        let o = obj.as_ref().ok_or_else(|| null("object"))?;
        let Object::Scheme(s) = &o.inner else {
            return Err((MkStatus::WrongKind, "expected a scheme".into()));
        };
        write_group(&s.pic().map_err(lib)?.pic, free_rank, torsion, cap, len)
    })
}

/// `Cl` of a normal scheme, in the same layout as [`mk_pic`].
///
/// # Safety
/// Pointers must be valid; `torsion` must hold `cap` entries.
#[no_mangle]
pub unsafe extern "C" fn mk_class_group(obj: *const MkObject, free_rank: *mut usize, torsion: *mut u64, cap: usize, len: *mut usize) -> MkStatus {
    guard(|| {
        let o = obj.as_ref().ok_or_else(|| null("object"))?;
        let Object::Scheme(s) = &o.inner else {
            return Err((MkStatus::WrongKind, "expected a scheme".into()));
        };
        write_group(&s.class_group().map_err(lib)?, free_rank, torsion, cap, len)
    })
}

/// Run the command line with `argv[0..argc]` (no program name). Output is freed with [`mk_string_free`].
///
/// # Safety
/// `argv` must hold `argc` NUL-terminated strings; `out` and `exit_code` must be valid.
#[no_mangle]
pub unsafe extern "C" fn mk_run(argv: *const *const c_char, argc: usize, out: *mut *mut c_char, exit_code: *mut i32) -> MkStatus {
    guard(|| {
        if out.is_null() || exit_code.is_null() || (argv.is_null() && argc > 0) {
            return Err(null("argument"));
        }
        let mut args = vec!["monoidkit".to_string()];
        for i in 0..argc {
            args.push(text(*argv.add(i), "argv")?.to_string());
        }
        let o = monoidkit::cli::run(&args);
        *exit_code = o.exit;
        let s = if o.stdout.is_empty() { o.stderr } else { o.stdout };
        *out = CString::new(s.replace('\0', " ")).unwrap_or_default().into_raw();
        Ok(())
    })
}

/// # Safety
/// `s` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn mk_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
