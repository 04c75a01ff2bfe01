//! Compiles a C program against the generated header and the shared
//! library built alongside this test.

use std::path::PathBuf;
use std::process::Command;

#[test]
fn c_program_links_and_runs() {
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let exe = std::env::current_exe().unwrap();
    // <target>/<profile>/deps/<test binary>
    let lib_dir = exe.parent().and_then(|d| d.parent()).unwrap().to_path_buf();
    let target_dir = lib_dir.parent().unwrap();
    // Test builds do not produce the cdylib, so build it explicitly.
    let mut build = Command::new(env!("CARGO"));
    build
        .args(["build", "-q", "-p", "k0cert-ffi", "--lib", "--target-dir"])
        .arg(target_dir);
    if lib_dir.file_name().is_some_and(|n| n == "release") {
        build.arg("--release");
    }
    assert!(
        build.status().unwrap().success(),
        "cargo build of the shared library failed"
    );
    assert!(
        lib_dir.join("libk0cert_ffi.so").exists() || lib_dir.join("libk0cert_ffi.dylib").exists(),
        "shared library not found in {}",
        lib_dir.display()
    );
    let out_dir = tempfile::tempdir().unwrap();
    let bin = out_dir.path().join("smoke");
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    let status = Command::new(&cc)
        .arg(manifest.join("tests/c/smoke.c"))
        .arg("-I")
        .arg(manifest.join("include"))
        .arg("-L")
        .arg(&lib_dir)
        .arg(format!("-Wl,-rpath,{}", lib_dir.display()))
        .args(["-lk0cert_ffi", "-Wall", "-Werror", "-o"])
        .arg(&bin)
        .status()
        .unwrap_or_else(|e| panic!("cannot run {cc}: {e}"));
    assert!(status.success(), "C compilation failed");
    let run = Command::new(&bin).output().unwrap();
    assert!(run.status.success(), "smoke exited with {:?}", run.status.code());
    assert_eq!(String::from_utf8_lossy(&run.stdout).trim(), "ok");
}
