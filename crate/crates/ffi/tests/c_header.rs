//! Compiles a C program against the generated header and links it with the
//! static library. Skipped when no C compiler is on PATH.

#![allow(clippy::excessive_precision, clippy::needless_range_loop)]

use std::path::{Path, PathBuf};
use std::process::Command;

fn compiler() -> Option<String> {
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    Command::new(&cc)
        .arg("--version")
        .output()
        .ok()
        .filter(|o| o.status.success())
        .map(|_| cc)
}

/// `target/<profile>`, found from the test executable in `target/<profile>/deps`.
fn profile_dir() -> PathBuf {
    let exe = std::env::current_exe().unwrap();
    exe.parent().and_then(Path::parent).unwrap().to_path_buf()
}

#[test]
fn header_compiles_and_links() {
    let Some(cc) = compiler() else {
        eprintln!("skipping: no C compiler");
        return;
    };
    let manifest = Path::new(env!("CARGO_MANIFEST_DIR"));
    let staticlib = profile_dir().join("libdescm_ffi.a");
    if !staticlib.exists() {
        eprintln!("skipping: {} not built", staticlib.display());
        return;
    }
    let out_dir = std::env::temp_dir().join(format!("descm-ffi-smoke-{}", std::process::id()));
    std::fs::create_dir_all(&out_dir).unwrap();
    let exe = out_dir.join("smoke");

    let status = Command::new(&cc)
        .args(["-std=c99", "-Wall", "-Werror", "-o"])
        .arg(&exe)
        .arg(manifest.join("tests/c/smoke.c"))
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(&staticlib)
        .args(["-lm", "-lpthread", "-ldl"])
        .status()
        .unwrap();
    assert!(status.success(), "C smoke program failed to build");

    let run = Command::new(&exe).output().unwrap();
    let _ = std::fs::remove_dir_all(&out_dir);
    assert!(run.status.success(), "smoke exited with {:?}", run.status.code());
    let stdout = String::from_utf8_lossy(&run.stdout);
    let energy: f64 = stdout.split_whitespace().next().unwrap().parse().unwrap();
    assert!((energy - 1.392351641530291855).abs() < 2e-11);
}
