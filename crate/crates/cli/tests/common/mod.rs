use std::fs;
use std::path::Path;
use std::process::{Command, Output};

pub struct RunResult {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

/// Runs the binary with `dir` as the working directory so reports echo
/// stable relative paths.
pub fn tpaths(dir: &Path, args: &[&str]) -> RunResult {
    let out: Output = Command::new(env!("CARGO_BIN_EXE_tpaths"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs");
    RunResult {
        stdout: String::from_utf8(out.stdout).expect("stdout is UTF-8"),
        stderr: String::from_utf8(out.stderr).expect("stderr is UTF-8"),
        code: out.status.code().expect("no signal"),
    }
}

pub fn write(dir: &Path, name: &str, contents: &str) {
    fs::write(dir.join(name), contents).expect("write input");
}

pub fn half_kernel(m: usize) -> String {
    let mut s = format!("{m}\n");
    for _ in 0..m {
        let row = vec!["1/2"; m].join(" ");
        s.push_str(&row);
        s.push('\n');
    }
    s
}
