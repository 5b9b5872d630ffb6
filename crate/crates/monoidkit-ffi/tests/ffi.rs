use std::ffi::{CStr, CString};
use std::ptr;

use monoidkit_ffi::*;

const IDEM2: &str = r#"{"kind":"finite-table","name":"idem2","generators":["x","y"],"relations":["x^2=x","y^2=y"]}"#;
const CHAIN: &str = r#"{"kind":"aset","base":"F1[t]","carrier":["*","a","b","c"],"action":{"t":["*","b","c","*"]}}"#;
const QUADRIC: &str = r#"{"kind":"scheme","lattice_rank":2,"charts":[{"generators":[[1,0],[1,2],[1,1]]}]}"#;

fn load(ws: *mut MkWorkspace, json: &str) -> (MkStatus, *mut MkObject) {
    let text = CString::new(json).unwrap();
    let mut obj = ptr::null_mut();
    let st = unsafe { mk_load_json(ws, text.as_ptr(), ptr::null(), &mut obj) };
    (st, obj)
}

fn last_error() -> String {
    let p = mk_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn spectrum_through_handles() {
    let ws = mk_workspace_new(0);
    let (st, m) = load(ws, IDEM2);
    assert_eq!(st, MkStatus::Ok);
    let kind = unsafe { CStr::from_ptr(mk_object_kind(m)) };
    assert_eq!(kind.to_str().unwrap(), "monoid");
    let (mut primes, mut dim, mut size) = (0usize, 0usize, 0usize);
    unsafe {
        assert_eq!(mk_mspec(m, &mut primes, &mut dim), MkStatus::Ok);
        assert_eq!(mk_size(m, &mut size), MkStatus::Ok);
        mk_object_free(m);
        mk_workspace_free(ws);
    }
    assert_eq!((primes, dim, size), (4, 2, 5));
}

#[test]
fn tor_and_groups() {
    let ws = mk_workspace_new(0);
    let (_, x) = load(ws, CHAIN);
    let mut r = 0usize;
    assert_eq!(unsafe { mk_tor1_rank(x, 2, &mut r) }, MkStatus::Ok);
    assert_eq!(r, 2);
    assert_eq!(unsafe { mk_tor1_rank(x, 0, &mut r) }, MkStatus::Invalid);

    let (_, s) = load(ws, QUADRIC);
    let (mut free, mut len) = (9usize, 0usize);
    let mut tors = [0u64; 4];
    assert_eq!(unsafe { mk_class_group(s, &mut free, tors.as_mut_ptr(), 4, &mut len) }, MkStatus::Ok);
    assert_eq!((free, len, tors[0]), (0, 1, 2));
    assert_eq!(unsafe { mk_class_group(s, &mut free, tors.as_mut_ptr(), 0, &mut len) }, MkStatus::BufferTooSmall);
    assert_eq!(unsafe { mk_pic(s, &mut free, tors.as_mut_ptr(), 4, &mut len) }, MkStatus::Ok);
    assert_eq!((free, len), (0, 0));
    assert_eq!(unsafe { mk_pic(x, &mut free, tors.as_mut_ptr(), 4, &mut len) }, MkStatus::WrongKind);
    unsafe {
        mk_object_free(x);
        mk_object_free(s);
        mk_workspace_free(ws);
    }
}

#[test]
fn errors_are_reported() {
    let ws = mk_workspace_new(0);
    let (st, obj) = load(ws, "{not json");
    assert_eq!(st, MkStatus::Parse);
    assert!(obj.is_null());
    assert!(last_error().contains("parse"));
    let (st, _) = load(ws, r#"{"kind":"finite-table","name":"big","generators":["x"],"relations":["x^40=0"]}"#);
    assert_eq!(st, MkStatus::BoundExceeded);
    let mut out = 0usize;
    assert_eq!(unsafe { mk_size(ptr::null(), &mut out) }, MkStatus::NullPointer);
    assert!(unsafe { mk_object_kind(ptr::null()) }.is_null());
    unsafe { mk_workspace_free(ws) };
}

#[test]
fn command_line_through_ffi() {
    let args: Vec<CString> = ["--json", "validate", "/nonexistent/doc.json"].iter().map(|s| CString::new(*s).unwrap()).collect();
    let ptrs: Vec<*const std::ffi::c_char> = args.iter().map(|a| a.as_ptr()).collect();
    let mut out = ptr::null_mut();
    let mut code = 0;
    assert_eq!(unsafe { mk_run(ptrs.as_ptr(), ptrs.len(), &mut out, &mut code) }, MkStatus::Ok);
    assert_eq!(code, 2);
    let text = unsafe { CStr::from_ptr(out) }.to_string_lossy().into_owned();
    assert!(text.contains("\"error\""));
    unsafe { mk_string_free(out) };
}

#[test]
fn header_is_generated() {
    let h = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/monoidkit.h")).unwrap();
    for name in ["mk_workspace_new", "mk_load_json", "mk_pic", "mk_run", "MkStatus_BufferTooSmall", "typedef struct MkObject MkObject"] {
        assert!(h.contains(name), "{name} missing from header");
    }
}

#[test]
fn c_program_links_against_the_static_library() {
    let manifest = std::path::Path::new(env!("CARGO_MANIFEST_DIR"));
    let target = std::env::var_os("CARGO_TARGET_DIR").map(std::path::PathBuf::from).unwrap_or_else(|| manifest.join("../../target"));
    let profile = if cfg!(debug_assertions) { "debug" } else { "release" };
    let lib = target.join(profile).join("libmonoidkit_ffi.a");
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    if !lib.exists() || std::process::Command::new(&cc).arg("--version").output().is_err() {
        eprintln!("skipping: no C compiler or static library");
        return;
    }
    let exe = std::env::temp_dir().join(format!("monoidkit_smoke_{}", std::process::id()));
    let status = std::process::Command::new(&cc)
        .arg(manifest.join("tests/smoke.c"))
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .unwrap();
    assert!(status.success());
    let out = std::process::Command::new(&exe).output().unwrap();
    let _ = std::fs::remove_file(&exe);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "ok");
}
