use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn corex(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_corex"))
        .args(args)
        .env_remove("COREX_LOG")
        .output()
        .unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, body: &str) -> String {
    let path = dir.join(name);
    fs::write(&path, body).unwrap();
    path.display().to_string()
}

#[test]
fn extract_text_of_one_paragraph() {
    let dir = tempfile::tempdir().unwrap();
    let page = write(dir.path(), "page.html", "<p>Hi there, friend.</p>");
    let out = corex(&[
        "extract",
        "--strategy",
        "econ",
        "--input",
        &page,
        "--format",
        "text",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "Hi there, friend.\n");
}

#[test]
fn extract_json_is_field_stable() {
    let dir = tempfile::tempdir().unwrap();
    let page = write(
        dir.path(),
        "page.html",
        "<body><div><a href=/>Home</a></div><div><p>One, two.</p><p>Three.</p></div></body>",
    );
    let out = corex(&["extract", "--strategy", "econ", "--input", &page]);
    assert_eq!(out.status.code(), Some(0));
    let expected = r#"{
  "source_name": "page.html",
  "strategy": "econ",
  "node_path": [
    0,
    1,
    5
  ],
  "text": "One, two. Three.",
  "word_count": 3,
  "punc_num": 3,
  "score": null,
  "trace": [
    {
      "child": 6,
      "parent": 5,
      "distance": 1
    },
    {
      "child": 5,
      "parent": 1,
      "distance": 0
    }
  ]
}
"#;
    assert_eq!(stdout(&out), expected);

    let out = corex(&[
        "extract",
        "--strategy",
        "coreex",
        "--input",
        &page,
        "--min-words",
        "1",
    ]);
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json["strategy"], "coreex");
    assert_eq!(json["text"], "One, two. Three.");
    assert_eq!(json["trace"], serde_json::Value::Null);
    assert!(stdout(&out).contains("\"score\": 0.997500"));
}

#[test]
fn extract_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let missing = dir.path().join("missing.html").display().to_string();
    let out = corex(&["extract", "--strategy", "econ", "--input", &missing]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("missing.html"));
    assert!(out.stdout.is_empty());

    let nav = write(
        dir.path(),
        "nav.html",
        "<ul><li><a href=/a>alpha beta</a></li></ul>",
    );
    let out = corex(&["extract", "--strategy", "coreex", "--input", &nav]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());

    let out = corex(&[
        "extract",
        "--strategy",
        "econ",
        "--input",
        &nav,
        "--frobnicate",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("Usage"));

    let out = corex(&["extract", "--strategy", "magic", "--input", &nav]);
    assert_eq!(out.status.code(), Some(1));
    let out = corex(&[
        "extract",
        "--strategy",
        "coreex",
        "--input",
        &nav,
        "--alpha",
        "2",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let out = corex(&[
        "extract",
        "--strategy",
        "econ",
        "--input",
        &nav,
        "--alpha",
        "0.5",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(corex(&["--help"]).status.code(), Some(0));
    assert_eq!(corex(&[]).status.code(), Some(1));
}

#[test]
fn big_tags_flag_changes_candidates() {
    let dir = tempfile::tempdir().unwrap();
    let page = write(
        dir.path(),
        "p.html",
        "<div>Plain, text.</div><h2>Head, line.</h2>",
    );
    let out = corex(&[
        "extract",
        "--strategy",
        "econ",
        "--input",
        &page,
        "--big-tags",
        "div",
        "--format",
        "text",
    ]);
    assert_eq!(stdout(&out), "Plain, text.\n");
    let out = corex(&[
        "extract",
        "--strategy",
        "econ",
        "--input",
        &page,
        "--big-tags",
        "p",
        "--format",
        "text",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn sim_examples() {
    let dir = tempfile::tempdir().unwrap();
    let abc = write(dir.path(), "abc.html", "<a><b></b><c></c></a>");
    let ab = write(dir.path(), "ab.html", "<a><b></b></a>");
    let run = |args: &[&str]| {
        let out = corex(args);
        assert_eq!(out.status.code(), Some(0), "{args:?}");
        stdout(&out)
    };
    assert_eq!(
        run(&[
            "sim",
            "--algo",
            "stm",
            "--a",
            &abc,
            "--b",
            &abc,
            "--normalized"
        ]),
        "1.000000\n"
    );
    assert_eq!(
        run(&["sim", "--algo", "rtdm", "--a", &abc, "--b", &abc]),
        "0.000000\n"
    );
    assert_eq!(
        run(&["sim", "--algo", "rtdm", "--a", &abc, "--b", &ab]),
        "1.000000\n"
    );
    assert_eq!(
        run(&["sim", "--algo", "stm", "--a", &abc, "--b", &ab]),
        "3.000000\n"
    );
    assert_eq!(
        run(&[
            "sim",
            "--algo",
            "stm",
            "--a",
            &abc,
            "--b",
            &ab,
            "--normalized"
        ]),
        "0.857143\n"
    );
    assert_eq!(
        run(&[
            "sim",
            "--algo",
            "rtdm",
            "--a",
            &abc,
            "--b",
            &ab,
            "--normalized"
        ]),
        "0.142857\n"
    );
    assert_eq!(
        run(&[
            "sim",
            "--algo",
            "rtdm",
            "--a",
            &abc,
            "--b",
            &ab,
            "--epsilon",
            "0"
        ]),
        "1.000000\n"
    );

    let missing = dir.path().join("nope.html").display().to_string();
    assert_eq!(
        corex(&["sim", "--algo", "stm", "--a", &abc, "--b", &missing])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        corex(&[
            "sim",
            "--algo",
            "stm",
            "--a",
            &abc,
            "--b",
            &ab,
            "--epsilon",
            "1"
        ])
        .status
        .code(),
        Some(1)
    );
}

#[test]
fn cluster_and_eval_on_generated_corpus() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = dir.path().join("c").display().to_string();
    let gen = corex(&[
        "eval",
        "--generate",
        "--seed",
        "1",
        "--n",
        "6",
        "--dir",
        &corpus,
        "--templates",
        "2",
    ]);
    assert_eq!(gen.status.code(), Some(0));
    let listing: serde_json::Value = serde_json::from_slice(&gen.stdout).unwrap();
    assert_eq!(listing["pairs"].as_array().unwrap().len(), 6);

    let out = corex(&[
        "cluster",
        "--dir",
        &corpus,
        "--algo",
        "rtdm",
        "--threshold",
        "0.2",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let clusters = report["clusters"].as_array().unwrap();
    assert_eq!(clusters.len(), 2);
    assert!(clusters[0][0].as_str().unwrap().ends_with("page_000.html"));
    assert!(clusters[1][0].as_str().unwrap().ends_with("page_001.html"));
    assert_eq!(report["diameters"].as_array().unwrap().len(), 2);
    assert!(stdout(&out).contains("\"threshold\": 0.200000"));

    let out = corex(&[
        "cluster",
        "--dir",
        &corpus,
        "--algo",
        "stm",
        "--threshold",
        "1.0",
    ]);
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["clusters"].as_array().unwrap().len(), 1);

    for strategy in ["econ", "coreex"] {
        let out = corex(&["eval", "--dir", &corpus, "--strategy", strategy]);
        assert_eq!(out.status.code(), Some(0));
        let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
        assert_eq!(report["strategy"], strategy);
        assert_eq!(report["document_count"], 6);
        assert!(report["macro"]["f1"].as_f64().unwrap() >= 0.95);
        assert_eq!(report["documents"].as_array().unwrap().len(), 6);
    }
    let out = corex(&[
        "eval",
        "--dir",
        &corpus,
        "--strategy",
        "econ",
        "--gold-suffix",
        ".txt.gold",
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn cluster_and_eval_errors() {
    let dir = tempfile::tempdir().unwrap();
    let empty = dir.path().display().to_string();
    let missing = dir.path().join("nope").display().to_string();
    assert_eq!(
        corex(&[
            "cluster",
            "--dir",
            &empty,
            "--algo",
            "rtdm",
            "--threshold",
            "0.2"
        ])
        .status
        .code(),
        Some(1)
    );
    assert_eq!(
        corex(&[
            "cluster",
            "--dir",
            &missing,
            "--algo",
            "rtdm",
            "--threshold",
            "0.2"
        ])
        .status
        .code(),
        Some(1)
    );
    assert_eq!(
        corex(&[
            "cluster",
            "--dir",
            &empty,
            "--algo",
            "rtdm",
            "--threshold",
            "1.5"
        ])
        .status
        .code(),
        Some(1)
    );
    assert_eq!(
        corex(&["eval", "--dir", &empty, "--strategy", "econ"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(corex(&["eval", "--dir", &empty]).status.code(), Some(1));
    assert_eq!(
        corex(&["eval", "--generate", "--dir", &empty])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        corex(&[
            "eval",
            "--generate",
            "--seed",
            "1",
            "--n",
            "0",
            "--dir",
            &empty
        ])
        .status
        .code(),
        Some(1)
    );
}

#[test]
fn single_perfect_document_scores_one() {
    let dir = tempfile::tempdir().unwrap();
    write(
        dir.path(),
        "one.html",
        "<p>Exactly this, and only this.</p>",
    );
    write(dir.path(), "one.gold.txt", "Exactly this, and only this.\n");
    let out = corex(&[
        "eval",
        "--dir",
        &dir.path().display().to_string(),
        "--strategy",
        "econ",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("\"f1\": 1.000000"));
}

#[test]
fn logging_goes_to_stderr_only() {
    let dir = tempfile::tempdir().unwrap();
    let page = write(dir.path(), "page.html", "<p>Hi there, friend.</p>");
    let args = [
        "extract",
        "--strategy",
        "econ",
        "--input",
        &page,
        "--format",
        "text",
    ];
    let quiet = corex(&args);
    let loud = Command::new(env!("CARGO_BIN_EXE_corex"))
        .args(args)
        .env("COREX_LOG", "debug")
        .output()
        .unwrap();
    assert_eq!(quiet.stdout, loud.stdout);
    assert!(quiet.stderr.is_empty());
    assert!(!loud.stderr.is_empty());
}

#[test]
fn deeply_nested_page_does_not_overflow() {
    let dir = tempfile::tempdir().unwrap();
    let depth = 20_000;
    let body = format!("{}<p>Deep, text.</p>", "<div>".repeat(depth));
    let page = write(dir.path(), "deep.html", &body);
    let out = corex(&["sim", "--algo", "rtdm", "--a", &page, "--b", &page]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "0.000000\n");
    let out = corex(&[
        "extract",
        "--strategy",
        "econ",
        "--input",
        &page,
        "--format",
        "text",
    ]);
    assert_eq!(stdout(&out), "Deep, text.\n");
}
