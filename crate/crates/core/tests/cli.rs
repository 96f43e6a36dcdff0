mod common;

use common::data_path;
use tcres::cli::run;

fn tcres(args: &[&str]) -> (i32, String, String) {
    run(std::iter::once("tcres").chain(args.iter().copied()))
}

#[test]
fn resolve_prints_proof_and_derivation() {
    let (code, out, _) = tcres(&[
        "resolve",
        &data_path("pair"),
        "--query",
        "eq(pair(int,int))",
        "--mode",
        "ind",
    ]);
    assert_eq!(code, 0);
    assert!(out.contains("outcome: PROVED"));
    assert!(out.contains("proof: k1 k2 k2"));
    assert!(out.contains("LP_M k2 : eq(int)  by k2"));
}

#[test]
fn resolve_json_is_parseable() {
    let (code, out, _) = tcres(&[
        "resolve",
        &data_path("evenodd"),
        "--query",
        "eq(evenList(int))",
        "--mode",
        "coind",
        "--json",
    ]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["outcome"], "PROVED");
    assert_eq!(v["proof"], "nu a. k2 k3 (k1 k3 a)");
    assert_eq!(v["derivation"]["rule"], "NU_PRIME");
    assert!(v.get("timings_ms").is_none());
}

#[test]
fn unicode_output() {
    let (_, out, _) = tcres(&[
        "resolve",
        &data_path("bush"),
        "--query",
        "eq(bush(int))",
        "--mode",
        "ext",
        "--lemma",
        "eq(X) => eq(bush(X))",
        "--unicode",
    ]);
    assert!(out.contains("proof: (νa. λb. k2 b (a (a b))) k1"), "{out}");
    assert!(out.contains("eq(X) ⇒ eq(bush(X))"));
}

#[test]
fn resolve_exit_codes() {
    let p6 = data_path("p6");
    assert_eq!(
        tcres(&["resolve", &p6, "--query", "A(X)", "--mode", "ind"]).0,
        1
    );
    let p11 = data_path("p11");
    let (code, out, _) = tcres(&[
        "resolve", &p11, "--query", "D(z,z)", "--mode", "coind", "--depth", "12",
    ]);
    assert_eq!(code, 2);
    assert!(out.contains("EXHAUSTED"));
    let (code, _, err) = tcres(&["resolve", &p6, "--query", "A(", "--mode", "ind"]);
    assert_eq!(code, 64);
    assert!(err.contains("query"));
    assert_eq!(
        tcres(&[
            "resolve",
            "/nonexistent.hc",
            "--query",
            "A",
            "--mode",
            "ind"
        ])
        .0,
        66
    );
    assert_eq!(tcres(&["resolve", &p6, "--query", "A(X)"]).0, 64);
    assert_eq!(tcres(&["--help"]).0, 0);
}

#[test]
fn invalid_program_is_an_input_error() {
    let dir = std::env::temp_dir().join(format!("tcres-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("overlap.hc");
    std::fs::write(&path, "k1 : => p(X).\nk2 : => p(a).\n").unwrap();
    let (code, _, err) = tcres(&[
        "resolve",
        path.to_str().unwrap(),
        "--query",
        "p(a)",
        "--mode",
        "ind",
    ]);
    assert_eq!(code, 66);
    assert!(err.contains("overlap"), "{err}");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn trace_lists_attempts() {
    let (_, out, _) = tcres(&[
        "resolve",
        &data_path("p6"),
        "--query",
        "A(X)",
        "--mode",
        "ind",
        "--trace",
    ]);
    assert!(out.contains("trace:"));
    assert!(out.contains("x k1"));
    assert!(out.contains("x k2"));
}

#[test]
fn auto_lemma_reports_proposal() {
    let (code, out, _) = tcres(&[
        "resolve",
        &data_path("bush"),
        "--query",
        "eq(bush(int))",
        "--mode",
        "ext",
        "--auto-lemma",
    ]);
    assert_eq!(code, 0);
    assert!(
        out.contains("proposed lemma: nu a. \\b -> k2 b (a (a b)) : eq(Y) => eq(bush(Y))"),
        "{out}"
    );
}

#[test]
fn check_accepts_and_rejects() {
    let chain = data_path("chain");
    let (code, out, _) = tcres(&[
        "check",
        &chain,
        "--proof",
        "\\b -> k2 (k1 b)",
        "--formula",
        "A => C",
    ]);
    assert_eq!(code, 0);
    assert!(out.contains("outcome: VALID"));
    let (code, out, _) = tcres(&[
        "check",
        &chain,
        "--proof",
        "\\b -> k1 b",
        "--formula",
        "A => C",
    ]);
    assert_eq!(code, 1);
    assert!(out.contains("REJECTED"));
    assert!(out.contains("NO_MATCH"), "{out}");
    let (code, out, _) = tcres(&[
        "check",
        &data_path("evenodd"),
        "--proof",
        "nu a. k2 k3 (k1 k3 a)",
        "--formula",
        "eq(evenList(int))",
        "--mode",
        "ind",
    ]);
    assert_eq!(code, 1);
    assert!(out.contains("MODE"), "{out}");
}

#[test]
fn check_with_compound_head_lemma() {
    let (code, out, _) = tcres(&[
        "check",
        &data_path("bush"),
        "--proof",
        "(nu a. \\b -> k2 b (a (a b))) k1",
        "--formula",
        "eq(bush(int))",
        "--lemma",
        "eq(X) => eq(bush(X))",
    ]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("lemma: nu a. \\b -> k2 b (a (a b)) : eq(X) => eq(bush(X))"));
}

#[test]
fn model_command_labels_bounds() {
    let (code, out, _) = tcres(&[
        "model",
        &data_path("p6"),
        "--semantics",
        "least",
        "--depth",
        "3",
    ]);
    assert_eq!(code, 0);
    assert!(out.contains("atoms: {A(g), A(f(g)), A(f(f(g)))}"));
    assert!(out.contains("lower bound"));
    let (_, out, _) = tcres(&[
        "model",
        &data_path("evenodd"),
        "--semantics",
        "greatest",
        "--depth",
        "2",
        "--json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["model"]["policy"], "optimistic");
    assert!(v["notes"][0].as_str().unwrap().contains("upper bound"));
}

#[test]
fn certify_ground_and_pattern() {
    let (code, out, _) = tcres(&[
        "certify",
        &data_path("evenodd"),
        "--atom",
        "eq(evenList(int))",
    ]);
    assert_eq!(code, 0);
    assert!(out.contains("ground certificate: {eq(int), eq(evenList(int)), eq(oddList(int))}"));
    let (code, out, _) = tcres(&["certify", &data_path("p11"), "--atom", "D(z,z)", "--json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["certificate"]["kind"], "pattern");
    let (code, out, _) = tcres(&["certify", &data_path("p6"), "--atom", "A(h)"]);
    assert_eq!(code, 1);
    assert!(out.contains("NO_CERTIFICATE"));
    assert!(out.contains("no certificate within bound"));
    assert_eq!(
        tcres(&["certify", &data_path("p6"), "--atom", "A(X)"]).0,
        64
    );
}

#[test]
fn verify_soundness_reports_verdicts() {
    let (code, out, _) = tcres(&[
        "verify-soundness",
        &data_path("evenodd"),
        "--query",
        "eq(evenList(int))",
        "--mode",
        "coind",
        "--base-depth",
        "2",
    ]);
    assert_eq!(code, 0);
    assert!(out.contains("outcome: SOUND"));
    assert!(out.contains("VALID"));
}

#[test]
fn output_is_deterministic() {
    let args = [
        "resolve",
        &data_path("bush"),
        "--query",
        "eq(bush(int))",
        "--mode",
        "ext",
        "--auto-lemma",
        "--trace",
        "--json",
    ];
    let first = tcres(&args);
    for _ in 0..3 {
        assert_eq!(tcres(&args), first);
    }
    let (_, out, _) = tcres(&[
        "resolve",
        &data_path("pair"),
        "--query",
        "eq(int)",
        "--mode",
        "ind",
        "--timings",
        "--json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert!(v["timings_ms"]["resolve"].is_number());
}
