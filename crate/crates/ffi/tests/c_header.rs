//! Compiles and runs a C program against the generated header and the static
//! library.

use std::path::{Path, PathBuf};
use std::process::Command;

fn staticlib() -> PathBuf {
    let exe = std::env::current_exe().unwrap();
    let deps = exe.parent().unwrap();
    [
        deps.join("libtorified_ffi.a"),
        deps.parent().unwrap().join("libtorified_ffi.a"),
    ]
    .into_iter()
    .find(|p| p.exists())
    .expect("libtorified_ffi.a next to the test binary")
}

#[test]
fn header_declares_the_api() {
    let h = std::fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("include/torified.h")).unwrap();
    for name in [
        "typedef struct TvTorification TvTorification",
        "TV_STATUS_OK = 0",
        "tv_torification_family",
        "tv_torification_free",
        "tv_torification_delta",
        "tv_count",
        "tv_zeta",
        "tv_cc_cardinality_check",
        "tv_soule_count",
        "tv_last_error",
        "tv_string_free",
    ] {
        assert!(h.contains(name), "header lacks {name}");
    }
}

#[test]
fn c_program_links_and_runs() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR"));
    let out = tempfile::tempdir().unwrap();
    let exe = out.path().join("smoke");
    let status = Command::new("cc")
        .arg("-std=c99")
        .arg("-Wall")
        .arg("-Werror")
        .arg("-I")
        .arg(dir.join("include"))
        .arg(dir.join("tests/c/smoke.c"))
        .arg(staticlib())
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .expect("a C compiler named cc");
    assert!(status.success());
    let run = Command::new(&exe).output().unwrap();
    assert!(run.status.success(), "{}", String::from_utf8_lossy(&run.stderr));
    assert!(String::from_utf8_lossy(&run.stdout).starts_with("ok "));
}
