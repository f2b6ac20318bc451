#![allow(dead_code)]

use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

pub const INPUTS: &[&str] = &["identity.json", "swap.json", "periodic_example.json", "evens.json"];

/// One CLI run: arguments, expected exit code, files it must produce.
pub struct Case {
    pub name: &'static str,
    pub args: &'static [&'static str],
    pub exit: i32,
    pub files: &'static [&'static str],
}

/// Runs in order; later cases read handles written by earlier ones.
pub const DEMO_SUITE: &[Case] = &[
    Case { name: "identity_check3pc", args: &["check3pc", "--in", "identity.json", "--horizon", "40"], exit: 0, files: &[] },
    Case {
        name: "identity_extend",
        args: &["extend-auto", "--in", "identity.json", "--verify", "--out", "identity_expr.json"],
        exit: 0,
        files: &["identity_expr.json"],
    },
    Case {
        name: "identity_grid",
        args: &["grid", "--in", "identity_expr.json", "--grid", "-3:3:7,-1:1:5", "--out", "identity_grid"],
        exit: 0,
        files: &["identity_grid.csv", "identity_grid.svg"],
    },
    Case { name: "swap_check3pc", args: &["check3pc", "--in", "swap.json", "--horizon", "50"], exit: 0, files: &[] },
    Case { name: "swap_split", args: &["split", "--in", "swap.json"], exit: 0, files: &[] },
    Case {
        name: "swap_extend",
        args: &["extend-auto", "--in", "swap.json", "--delta", "1", "--verify", "--out", "swap_expr.json"],
        exit: 0,
        files: &["swap_expr.json"],
    },
    Case {
        name: "swap_grid",
        args: &["grid", "--in", "swap_expr.json", "--grid", "-2:3:11,-1:1:9", "--out", "swap_grid"],
        exit: 0,
        files: &["swap_grid.csv", "swap_grid.svg"],
    },
    Case { name: "swap_eval", args: &["eval", "--in", "swap_expr.json", "--at", "0,0"], exit: 0, files: &[] },
    Case { name: "swap_explattice", args: &["explattice", "--in", "swap.json", "--verify"], exit: 0, files: &[] },
    Case { name: "periodic_check3pc", args: &["check3pc", "--in", "periodic_example.json", "--horizon", "60"], exit: 0, files: &[] },
    Case { name: "periodic_split", args: &["split", "--in", "periodic_example.json"], exit: 1, files: &[] },
    Case { name: "periodic_extend", args: &["extend-auto", "--in", "periodic_example.json"], exit: 1, files: &[] },
    Case {
        name: "evens_embed",
        args: &["extend-embed", "--in", "evens.json", "--verify", "--out", "evens_map.json"],
        exit: 0,
        files: &["evens_map.json"],
    },
    Case { name: "evens_eval", args: &["eval", "--in", "evens_map.json", "--at", "1.5,-0.5"], exit: 0, files: &[] },
    Case {
        name: "evens_grid",
        args: &["grid", "--in", "evens_map.json", "--grid", "-2:2:5,-1:1:3", "--out", "evens_grid"],
        exit: 0,
        files: &["evens_grid.csv", "evens_grid.svg"],
    },
];

pub fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

pub fn qcx(dir: &Path, args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_qcx"))
        .args(args)
        .current_dir(dir)
        .env_remove("QCX_SEED")
        .output()
        .expect("qcx runs")
}

/// Runs the suite in a scratch directory and compares stdout and written
/// files byte for byte against the golden copies. With `bless` the golden
/// copies are rewritten instead.
pub fn run_demo_suite(bless: bool) -> Vec<(&'static str, Result<(), String>)> {
    let tmp = tempfile::tempdir().unwrap();
    let gold = golden_dir();
    for f in INPUTS {
        fs::copy(gold.join(f), tmp.path().join(f)).unwrap();
    }
    let mut results = Vec::new();
    for case in DEMO_SUITE {
        let out = qcx(tmp.path(), case.args);
        let mut produced = vec![(format!("{}.stdout.json", case.name), out.stdout.clone())];
        for f in case.files {
            produced.push((f.to_string(), fs::read(tmp.path().join(f)).unwrap_or_default()));
        }
        let code = out.status.code().unwrap_or(-1);
        let mut res = if code == case.exit {
            Ok(())
        } else {
            Err(format!("exit {code}, expected {}: {}", case.exit, String::from_utf8_lossy(&out.stderr)))
        };
        for (name, bytes) in produced {
            let path = gold.join(&name);
            if bless {
                fs::write(&path, &bytes).unwrap();
            } else if res.is_ok() && fs::read(&path).ok().as_deref() != Some(bytes.as_slice()) {
                res = Err(format!("{name} differs from the golden copy"));
            }
        }
        results.push((case.name, res));
    }
    results
}
