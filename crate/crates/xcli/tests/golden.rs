// SPDX-License-Identifier: Apache-2.0

//! Byte-for-byte comparison against the checked-in CSV files.
//! Set `SCX_UPDATE_GOLDEN=1` to rewrite them.

mod common;

use common::{golden_cases, golden_dir, scx};

#[test]
fn golden_outputs_match() {
    let update = std::env::var_os("SCX_UPDATE_GOLDEN").is_some();
    let dir = tempfile::tempdir().unwrap();
    let mut mismatches = Vec::new();
    for case in golden_cases() {
        let out = dir.path().join(case.file);
        let status = scx(&case.argv(&out));
        assert!(status.status.success(), "{}: {}", case.file, String::from_utf8_lossy(&status.stderr));
        let produced = std::fs::read(&out).unwrap();
        let golden = golden_dir().join(case.file);
        if update {
            std::fs::write(&golden, &produced).unwrap();
            continue;
        }
        let expected = std::fs::read(&golden).unwrap_or_else(|_| panic!("missing golden file {}", golden.display()));
        if produced != expected {
            mismatches.push(case.file);
        }
    }
    assert!(mismatches.is_empty(), "golden mismatch: {mismatches:?}");
}
