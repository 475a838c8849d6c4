//! End-to-end tests that drive the compiled binary: every verb, both
//! output modes, and each exit code.

use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

use loopforge::groups::{cyclic, symmetric3};
use loopforge::table::LoopTable;
use loopforge::{enumerate_loops, verify_theorem, TheoremId, TheoremInstance};

fn write_fixture(name: &str, contents: &str) -> PathBuf {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    fs::write(&path, contents).expect("fixture write");
    path
}

fn loopforge_env(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_loopforge"));
    cmd.args(args).env_remove("LOOPFORGE_MAX_ORDER");
    for (key, value) in env {
        cmd.env(key, value);
    }
    cmd.output().expect("binary runs")
}

fn loopforge(args: &[&str]) -> Output {
    loopforge_env(args, &[])
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn permutation_line(p: &loopforge::Permutation) -> String {
    (0..p.degree())
        .map(|x| p.apply(x).to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

/// The smaller of the two order-5 loops on which the vanishing premise
/// admits non-automorphisms (all six transpositions fixing 0).
const NON_AUT_TABLE: &str =
    "5\n0 1 2 3 4\n1 0 3 4 2\n2 4 0 1 3\n3 2 4 0 1\n4 3 1 2 0\nidentity 0\n";

#[test]
fn classify_prints_flag_lines() {
    let table = write_fixture("classify_z3.tbl", &cyclic(3).to_string());
    let out = loopforge(&["classify", table.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let text = stdout(&out);
    for line in [
        "order 3",
        "identity 0",
        "group true",
        "commutative true",
        "cc true",
        "extra true",
        "inn_size 1",
    ] {
        assert!(text.contains(line), "missing `{line}` in:\n{text}");
    }
}

#[test]
fn classify_json_mirrors_the_report() {
    let table = write_fixture("classify_json_z3.tbl", &cyclic(3).to_string());
    let out = loopforge(&["classify", "--json", table.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let v: Value = serde_json::from_str(&stdout(&out)).expect("valid JSON");
    assert_eq!(v["order"], 3);
    assert_eq!(v["is_group"], true);
    assert_eq!(v["is_commutative"], true);
    assert_eq!(v["inn_size"], 1);
}

#[test]
fn malformed_table_is_rejected_with_location() {
    let table = write_fixture("broken.tbl", "0 1\n1 1\n");
    let out = loopforge(&["classify", table.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    let err = stderr(&out);
    assert!(err.contains("broken.tbl"), "{err}");
    assert!(err.contains("line"), "{err}");
}

#[test]
fn check_quantifies_over_identity_fixing_mappings() {
    let table = write_fixture("check_z3.tbl", &cyclic(3).to_string());
    let out = loopforge(&[
        "check",
        table.to_str().unwrap(),
        "--theorem",
        "p-implies-exp2",
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("theorem p-implies-exp2"), "{text}");
    assert!(
        text.contains("summary instances=2 violated=0 failed-clauses=0"),
        "{text}"
    );
}

#[test]
fn check_exit_three_when_premise_always_fails() {
    // x -> 2x on the cyclic loop of order 5 has order 4, so the vanishing
    // premise cannot hold everywhere.
    let table = write_fixture("check_z5.tbl", &cyclic(5).to_string());
    let phi = write_fixture("doubling.perm", "0 2 4 1 3\n");
    let out = loopforge(&[
        "check",
        table.to_str().unwrap(),
        "--theorem",
        "p-implies-exp2",
        "--phi",
        phi.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 3, "{}", stdout(&out));
    let text = stdout(&out);
    assert!(text.contains("VIOLATED"), "{text}");
    assert!(
        text.contains("summary instances=1 violated=1 failed-clauses=0"),
        "{text}"
    );
}

#[test]
fn check_detects_non_automorphism_counterexamples() {
    let table = write_fixture("non_aut.tbl", NON_AUT_TABLE);
    let out = loopforge(&[
        "check",
        table.to_str().unwrap(),
        "--theorem",
        "p-implies-aut",
    ]);
    assert_eq!(code(&out), 1, "{}", stdout(&out));
    let text = stdout(&out);
    // 24 identity-fixing mappings: 14 violate the premise, 10 grade, and
    // the six transpositions fail the automorphism clause.
    assert!(
        text.contains("summary instances=24 violated=14 failed-clauses=6"),
        "{text}"
    );
    assert!(text.contains("automorphism FAIL"), "{text}");
}

#[test]
fn check_rita_iso_quantifies_over_principal_isotopes() {
    let table = write_fixture("rita_z3.tbl", &cyclic(3).to_string());
    let out = loopforge(&["check", table.to_str().unwrap(), "--theorem", "rita-iso"]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    assert!(
        stdout(&out).contains("summary instances=9 violated=0 failed-clauses=0"),
        "{}",
        stdout(&out)
    );
}

#[test]
fn check_large_order_requires_explicit_phi() {
    let table = write_fixture("check_z7.tbl", &cyclic(7).to_string());
    let out = loopforge(&[
        "check",
        table.to_str().unwrap(),
        "--theorem",
        "p-implies-aut",
    ]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("provide --phi"), "{}", stderr(&out));
}

#[test]
fn check_rejects_mismatched_arguments() {
    let table = write_fixture("mismatch_z3.tbl", &cyclic(3).to_string());
    let phi = write_fixture("mismatch.perm", "0 2 1\n");

    let out = loopforge(&[
        "check",
        table.to_str().unwrap(),
        "--theorem",
        "p-implies-aut",
        "--triple",
        phi.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("takes --phi"), "{}", stderr(&out));

    let out = loopforge(&[
        "check",
        table.to_str().unwrap(),
        "--theorem",
        "rita-iso",
        "--phi",
        phi.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 2);
    assert!(
        stderr(&out).contains("takes --target/--triple"),
        "{}",
        stderr(&out)
    );
}

#[test]
fn isotopism_accepts_principal_isotope_triple() {
    let z4 = cyclic(4);
    let (isotope, triple) = z4.principal_isotope(1, 2).unwrap();
    let source = write_fixture("iso_src.tbl", &z4.to_string());
    let target = write_fixture("iso_tgt.tbl", &isotope.to_string());
    let triple = write_fixture(
        "iso.triple",
        &format!(
            "{}\n{}\n{}\n",
            permutation_line(&triple.a),
            permutation_line(&triple.b),
            permutation_line(&triple.c)
        ),
    );
    let out = loopforge(&[
        "isotopism",
        source.to_str().unwrap(),
        target.to_str().unwrap(),
        "--triple",
        triple.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    assert!(stdout(&out).starts_with("true"), "{}", stdout(&out));
}

#[test]
fn isotopism_rejects_identity_triple_with_counterexample() {
    let z4 = cyclic(4);
    let (isotope, _) = z4.principal_isotope(1, 2).unwrap();
    let source = write_fixture("noniso_src.tbl", &z4.to_string());
    let target = write_fixture("noniso_tgt.tbl", &isotope.to_string());
    let triple = write_fixture("noniso.triple", "0 1 2 3\n0 1 2 3\n0 1 2 3\n");
    let out = loopforge(&[
        "isotopism",
        source.to_str().unwrap(),
        target.to_str().unwrap(),
        "--triple",
        triple.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 1, "{}", stdout(&out));
    let text = stdout(&out);
    assert!(text.starts_with("false"), "{text}");
    assert!(text.contains("counterexample x="), "{text}");
}

#[test]
fn enumerate_streams_tables_and_count() {
    let out = loopforge(&["enumerate", "--order", "4"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let text = stdout(&out);
    let mut blocks: Vec<&str> = text.split("\n\n").map(str::trim).collect();
    let footer = blocks.pop().expect("count footer");
    assert_eq!(footer, "# count 4");
    let parsed: Vec<LoopTable> = blocks
        .iter()
        .map(|b| LoopTable::parse_str(b).expect("table round-trips"))
        .collect();
    assert_eq!(parsed, enumerate_loops(4).unwrap());
}

#[test]
fn enumerate_collapses_isomorphism_classes() {
    let out = loopforge(&["enumerate", "--order", "4", "--up-to-iso"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("# classes 2"), "{text}");
    assert!(text.contains("# size 1"), "{text}");
    assert!(text.contains("# size 3"), "{text}");
}

#[test]
fn enumerate_json_lists_tables() {
    let out = loopforge(&["enumerate", "--order", "3", "--json"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let v: Value = serde_json::from_str(&stdout(&out)).expect("valid JSON");
    assert_eq!(v["count"], 1);
    assert_eq!(v["tables"].as_array().map(Vec::len), Some(1));
}

#[test]
fn witness_counts_groups_below_order_five() {
    let out = loopforge(&["witness", "--orders", "1..4", "--require", "group"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert!(stdout(&out).contains("# witnesses 7"), "{}", stdout(&out));
}

#[test]
fn witness_empty_result_reports_zero() {
    let out = loopforge(&[
        "witness",
        "--orders",
        "4",
        "--require",
        "group,!commutative",
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert!(stdout(&out).contains("# witnesses 0"), "{}", stdout(&out));
}

#[test]
fn witness_inner_conditions_and_arrangement_parse() {
    let out = loopforge(&[
        "witness",
        "--orders",
        "5",
        "--require",
        "a_rho,!cc,!extra",
        "--inner-order",
        "rho=2",
        "--arrangement",
        "RLT",
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert!(stdout(&out).contains("# witnesses 0"), "{}", stdout(&out));

    let out = loopforge(&["witness", "--orders", "3", "--p-vanishes", "mu"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert!(stdout(&out).contains("# witnesses 1"), "{}", stdout(&out));
}

#[test]
fn witness_rejects_unknown_flag() {
    let out = loopforge(&["witness", "--orders", "4", "--require", "bogus"]);
    assert_eq!(code(&out), 2);
    assert!(
        stderr(&out).contains("unknown loop flag"),
        "{}",
        stderr(&out)
    );
}

#[test]
fn enumeration_cap_env_var_lowers_the_limit() {
    let out = loopforge_env(
        &["enumerate", "--order", "4"],
        &[("LOOPFORGE_MAX_ORDER", "3")],
    );
    assert_eq!(code(&out), 2);
    assert!(
        stderr(&out).contains("exceeds the supported cap"),
        "{}",
        stderr(&out)
    );
}

#[test]
fn inner_group_of_symmetric_fixture() {
    let table = write_fixture("inner_s3.tbl", &symmetric3().to_string());
    for kind_args in [&["--kind", "mu"][..], &[][..]] {
        let mut args = vec!["inner", table.to_str().unwrap()];
        args.extend_from_slice(kind_args);
        let out = loopforge(&args);
        assert_eq!(code(&out), 0, "{}", stderr(&out));
        assert!(stdout(&out).contains("size 6"), "{}", stdout(&out));
    }
}

#[test]
fn check_triple_instance_matches_library_grading() {
    // Dual-path check of the CLI plumbing: grade one two-loop instance
    // directly through the library, then assert the binary reports the
    // same clause outcomes and maps them to the right exit code.
    let z3 = cyclic(3);
    let (isotope, triple) = z3.principal_isotope(0, 1).unwrap();
    let report = verify_theorem(&TheoremInstance::with_triple(
        TheoremId::CorollaryIdentities,
        z3.clone(),
        isotope.clone(),
        triple.clone(),
    ))
    .unwrap();
    let failed = report
        .clauses
        .iter()
        .filter(|c| c.status == loopforge::ClauseStatus::Fail)
        .count();
    let violated = usize::from(report.clauses.is_empty());
    let expected_code = if failed > 0 {
        1
    } else if violated == 1 {
        3
    } else {
        0
    };

    let source = write_fixture("corr_src.tbl", &z3.to_string());
    let target = write_fixture("corr_tgt.tbl", &isotope.to_string());
    let triple = write_fixture(
        "corr.triple",
        &format!(
            "{}\n{}\n{}\n",
            permutation_line(&triple.a),
            permutation_line(&triple.b),
            permutation_line(&triple.c)
        ),
    );
    let out = loopforge(&[
        "check",
        source.to_str().unwrap(),
        "--theorem",
        "corollary-identities",
        "--target",
        target.to_str().unwrap(),
        "--triple",
        triple.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), expected_code, "{}", stdout(&out));
    assert!(
        stdout(&out).contains(&format!(
            "summary instances=1 violated={violated} failed-clauses={failed}"
        )),
        "{}",
        stdout(&out)
    );
}

#[test]
fn check_json_mirror_summarizes() {
    let table = write_fixture("json_z3.tbl", &cyclic(3).to_string());
    let out = loopforge(&[
        "check",
        table.to_str().unwrap(),
        "--theorem",
        "p-implies-exp2",
        "--json",
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let v: Value = serde_json::from_str(&stdout(&out)).expect("valid JSON");
    assert_eq!(v["theorem"], "p-implies-exp2");
    assert_eq!(v["summary"]["instances"], 2);
    assert_eq!(v["summary"]["failed_clauses"], 0);
    assert_eq!(v["instances"].as_array().map(Vec::len), Some(2));
}
