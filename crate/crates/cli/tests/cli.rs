//! End-to-end tests of the command driver: exact output bytes and exit
//! codes for every subcommand.

use crcoh_cli::commands::run;
use crcoh_cli::table::{check_against_live, TableDocument};

fn invoke(args: &[&str]) -> (i32, String, String) {
    let argv: Vec<String> = std::iter::once("crcoh")
        .chain(args.iter().copied())
        .map(String::from)
        .collect();
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(&argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

#[test]
fn betti_csv_is_byte_exact() {
    let (code, out, err) = invoke(&["betti", "--genus", "2"]);
    assert_eq!(code, 0);
    assert_eq!(out, "1,0,16,4,16,0,1\n");
    assert!(err.is_empty());

    let (code, out, _) = invoke(&["betti", "--genus", "3", "--format", "csv"]);
    assert_eq!(code, 0);
    assert_eq!(out, "1,0,1,6,65,6,394,6,65,6,1,0,1\n");
}

#[test]
fn betti_json_and_latex() {
    let (code, out, _) = invoke(&["betti", "--genus", "2", "--format", "json"]);
    assert_eq!(code, 0);
    let doc: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(doc["genus"], 2);
    assert_eq!(doc["euler_characteristic"], "30");
    assert_eq!(doc["betti"][2], "16");

    let (code, out, _) = invoke(&["betti", "--genus", "2", "--format", "latex"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("\\begin{tabular}{c|ccccccc}\n"));
    assert!(out.contains("b_i & 1 & 0 & 16 & 4 & 16 & 0 & 1 \\\\\n"));
    assert!(out.ends_with("\\end{tabular}\n"));
}

#[test]
fn constants_output() {
    let (code, out, _) = invoke(&["constants", "--genus", "2"]);
    assert_eq!(code, 0);
    assert_eq!(out, "thaddeus_number = 4\nv = 1/4\n");

    let (code, out, _) = invoke(&["constants", "--genus", "3"]);
    assert_eq!(code, 0);
    assert_eq!(out, "thaddeus_number = 224\nv = 7/2\n");
}

#[test]
fn product_pair_triple() {
    let (code, out, _) = invoke(&[
        "product", "--genus", "2", "--lhs", "[1000]", "--rhs", "[1000]",
    ]);
    assert_eq!(code, 0);
    assert_eq!(out, "8*k^2\n");

    let (code, out, _) = invoke(&["pair", "--genus", "2", "--lhs", "k", "--rhs", "k^2"]);
    assert_eq!(code, 0);
    assert_eq!(out, "1/4\n");

    let (code, out, _) = invoke(&["triple", "--genus", "2", "[1000]", "[1000]", "k"]);
    assert_eq!(code, 0);
    assert_eq!(out, "2\n");

    // Distinct labels with trivial Weil pairing multiply to zero.
    let (code, out, _) = invoke(&[
        "product", "--genus", "2", "--lhs", "[1000]", "--rhs", "[0010]",
    ]);
    assert_eq!(code, 0);
    assert_eq!(out, "0\n");
}

#[test]
fn product_accepts_full_expressions() {
    let (code, out, _) = invoke(&[
        "product",
        "--genus",
        "2",
        "--lhs",
        "k + [1000]",
        "--rhs",
        "k - [1000]",
    ]);
    assert_eq!(code, 0);
    // (k + [1000])(k - [1000]) = k^2 - 8 k^2.
    assert_eq!(out, "-7*k^2\n");
}

#[test]
fn sector_command() {
    let (code, out, _) = invoke(&["sector", "--genus", "2", "--label", "1000"]);
    assert_eq!(code, 0);
    assert_eq!(
        out,
        "label = 1000\nshift = 1\nfixed_locus_complex_dim = 1\ncovering_genus = 3\nprym_dim = 1\nw0_dim = 2\ndims = 1,0,1\n"
    );

    let (code, out, _) = invoke(&["sector", "--genus", "2", "--label", "O"]);
    assert_eq!(code, 0);
    assert_eq!(out, "label = O\nshift = 0\nfixed_locus_complex_dim = 3\n");
}

#[test]
fn verify_exhaustive_passes() {
    let (code, out, err) = invoke(&["verify", "--genus", "2", "--suite", "all"]);
    assert_eq!(code, 0);
    assert!(err.is_empty());
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 4);
    assert_eq!(
        lines[0],
        "PASS associativity (genus 2, exhaustive): 39304 checks, 0 violations"
    );
    assert_eq!(
        lines[3],
        "PASS pairing-rank (genus 2, exhaustive): 17 checks, 0 violations"
    );
}

#[test]
fn verify_seeded_when_requested() {
    let (code, out, _) = invoke(&[
        "verify", "--genus", "2", "--suite", "assoc", "--samples", "25", "--seed", "9",
    ]);
    assert_eq!(code, 0);
    assert_eq!(
        out,
        "PASS associativity (genus 2, seeded(samples=25, seed=9)): 25 checks, 0 violations\n"
    );
}

#[test]
fn verify_large_genus_skips_pairing_rank() {
    let (code, out, _) = invoke(&[
        "verify", "--genus", "6", "--suite", "all", "--samples", "5",
    ]);
    assert_eq!(code, 0);
    assert!(out.starts_with("SKIP pairing-rank (genus 6)"));
    assert_eq!(out.matches("PASS").count(), 3);
}

#[test]
fn usage_errors_exit_one() {
    let (code, out, err) = invoke(&["frobnicate"]);
    assert_eq!(code, 1);
    assert!(out.is_empty());
    assert!(err.contains("unrecognized subcommand"));

    let (code, _, err) = invoke(&["betti"]);
    assert_eq!(code, 1);
    assert!(err.contains("--genus"));

    let (code, _, err) = invoke(&["verify", "--genus", "2", "--suite", "bogus"]);
    assert_eq!(code, 1);
    assert!(err.contains("bogus"));
}

#[test]
fn domain_errors_exit_one() {
    let (code, _, err) = invoke(&["betti", "--genus", "1"]);
    assert_eq!(code, 1);
    assert!(err.contains("genus must be at least 2"));

    let (code, _, err) = invoke(&[
        "product", "--genus", "2", "--lhs", "[01; e1]", "--rhs", "k",
    ]);
    assert_eq!(code, 1);
    assert!(err.contains("at position 1"));

    let (code, _, err) = invoke(&["sector", "--genus", "2", "--label", "10x0"]);
    assert_eq!(code, 1);
    assert!(err.contains("'x'"));

    let (code, _, err) = invoke(&["table", "--genus", "4", "--out", "/tmp/never.json"]);
    assert_eq!(code, 1);
    assert!(err.contains("genus <= 3"));
}

#[test]
fn help_and_version_exit_zero() {
    let (code, out, err) = invoke(&["--help"]);
    assert_eq!(code, 0);
    assert!(err.is_empty());
    assert!(out.contains("Usage: crcoh"));

    let (code, out, _) = invoke(&["--version"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("crcoh "));
}

#[test]
fn output_is_deterministic() {
    for args in [
        vec!["betti", "--genus", "3", "--format", "json"],
        vec!["product", "--genus", "2", "--lhs", "k + [1000]", "--rhs", "k + [0100]"],
        vec!["verify", "--genus", "2", "--suite", "frobenius"],
    ] {
        let first = invoke(&args);
        let second = invoke(&args);
        assert_eq!(first, second);
    }
}

#[test]
fn table_round_trip() {
    let path = std::env::temp_dir().join(format!("crcoh-cli-table-{}.json", std::process::id()));
    let path_text = path.to_str().unwrap();
    let (code, out, _) = invoke(&["table", "--genus", "2", "--out", path_text]);
    assert_eq!(code, 0);
    assert!(out.contains("34 basis elements"));

    let text = std::fs::read_to_string(&path).unwrap();
    let doc: TableDocument = serde_json::from_str(&text).unwrap();
    assert_eq!(doc.genus, 2);
    check_against_live(&doc).unwrap();
    std::fs::remove_file(&path).unwrap();
}
