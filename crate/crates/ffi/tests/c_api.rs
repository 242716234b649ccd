use std::path::{Path, PathBuf};
use std::process::Command;

/// Directory holding `libquadlab_ffi.a`, next to the `deps` directory of this
/// test executable.
fn artifact_dir() -> PathBuf {
    let exe = std::env::current_exe().unwrap();
    exe.parent().and_then(Path::parent).unwrap().to_path_buf()
}

#[test]
fn c_program_links_against_static_library() {
    let manifest = Path::new(env!("CARGO_MANIFEST_DIR"));
    let lib = artifact_dir().join("libquadlab_ffi.a");
    assert!(lib.exists(), "{} missing", lib.display());
    let dir = tempfile::tempdir().unwrap();
    let exe = dir.path().join("c_program");
    let compiler = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    let build = Command::new(compiler)
        .args(["-std=c99", "-Wall", "-Wextra", "-Werror", "-I"])
        .arg(manifest.join("include"))
        .arg(manifest.join("tests/c_program.c"))
        .arg(&lib)
        .args(["-lm", "-lpthread", "-ldl", "-o"])
        .arg(&exe)
        .output()
        .unwrap();
    assert!(build.status.success(), "{}", String::from_utf8_lossy(&build.stderr));
    let run = Command::new(&exe).output().unwrap();
    assert!(run.status.success(), "{}", String::from_utf8_lossy(&run.stderr));
    assert_eq!(String::from_utf8_lossy(&run.stdout), "ok\n");
}

#[test]
fn header_declares_every_export() {
    let header = std::fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("include/quadlab.h")).unwrap();
    for name in [
        "quadlab_rule_new",
        "quadlab_strip_rule_new",
        "quadlab_rule_free",
        "quadlab_rule_len",
        "quadlab_rule_nodes",
        "quadlab_rule_weights",
        "quadlab_rule_apply",
        "quadlab_rule_error",
        "quadlab_exactness_degree",
        "quadlab_inefficiency_ratio",
        "quadlab_last_error",
        "typedef struct QuadlabRule QuadlabRule;",
        "QUADLAB_STATUS_OK = 0",
    ] {
        assert!(header.contains(name), "{name}");
    }
}
