//! Malformed HTML fixtures and the trees they must parse to.
//!
//! Each `tests/fixtures/<name>.html` has a hand-written `<name>.tree`
//! outline: one node per line, two spaces of indent per level, elements as
//! `tag name="value"`, text as a quoted string.

use std::fs;
use std::path::PathBuf;

use corex::parse_html_bytes;

fn fixture_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures")
}

fn fixtures() -> Vec<(String, Vec<u8>, String)> {
    let mut out = Vec::new();
    for entry in fs::read_dir(fixture_dir()).unwrap() {
        let path = entry.unwrap().path();
        if path.extension().is_some_and(|x| x == "html") {
            let name = path.file_stem().unwrap().to_string_lossy().into_owned();
            let tree = fs::read_to_string(path.with_extension("tree"))
                .unwrap_or_else(|e| panic!("{name}: missing .tree file: {e}"));
            out.push((name, fs::read(&path).unwrap(), tree));
        }
    }
    out.sort();
    out
}

#[test]
fn fixtures_parse_to_documented_trees() {
    let all = fixtures();
    assert!(all.len() >= 15, "only {} fixtures", all.len());
    let mut failures = Vec::new();
    for (name, html, expected) in &all {
        let tree = parse_html_bytes(html, name);
        if let Err(e) = tree.validate() {
            failures.push(format!("{name}: invalid tree: {e}"));
        }
        let got = tree.outline();
        if &got != expected {
            failures.push(format!("{name}:\n--- expected\n{expected}--- got\n{got}"));
        }
    }
    assert!(failures.is_empty(), "{}", failures.join("\n"));
}

#[test]
fn reparsing_is_stable() {
    for (name, html, _) in fixtures() {
        let a = parse_html_bytes(&html, &name);
        let b = parse_html_bytes(&html, &name);
        assert_eq!(a, b, "{name}");
    }
}
