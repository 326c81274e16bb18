use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn rnadist(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rnadist"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn temp_file(name: &str, contents: &str) -> PathBuf {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    fs::write(&path, contents).unwrap();
    path
}

fn arg(p: &PathBuf) -> &str {
    p.to_str().unwrap()
}

#[test]
fn validate_reports_adjacent_contact() {
    let bad = temp_file("adjacent.txt", "n 6\n1 5\n3 4\n");
    let o = rnadist(&["validate", arg(&bad)]);
    assert_eq!(o.status.code(), Some(4));
    let text = stdout(&o);
    assert!(text.contains("AdjacentContact at record 1, line 3"), "{text}");
    assert!(text.ends_with("0 of 1 records valid\n"));
}

#[test]
fn validate_accepts_well_formed_files() {
    let good = temp_file("good.txt", "((.))\n.[[..]]\n");
    let o = rnadist(&["validate", arg(&good)]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        "record 1: valid (n=5, contacts=2)\nrecord 2: valid (n=7, contacts=2)\n2 of 2 records valid\n"
    );
}

#[test]
fn validate_exit_codes() {
    let syntax = temp_file("syntax.txt", "((.)\n");
    let o = rnadist(&["validate", arg(&syntax)]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stdout(&o).contains("UnbalancedBracket at record 1"));

    let o = rnadist(&["validate", "/nonexistent/structures.txt"]);
    assert_eq!(o.status.code(), Some(6));
    assert!(stderr(&o).starts_with("rnadist: "));

    let o = rnadist(&["validate"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn dist_examples() {
    let o = rnadist(&["dist", "(.).(.)", "..(.).."]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "3\n");
    assert_eq!(stdout(&rnadist(&["dist", "--metric", "sgr2", "(.).(.)", "..(.).."])), "3\n");
    assert_eq!(stdout(&rnadist(&["dist", "--metric", "mag", "(.).(.)", "..(.).."])), "3\n");
    assert_eq!(stdout(&rnadist(&["dist", "--metric", "sgr", "(.).(.)", "..(.).."])), "2.079441542\n");

    // 1·3, 4·6 against 3·6, 1·4: one cyclic orbit of size 4
    let o = rnadist(&["dist", "--metric", "mag", "-v", "(.)(.)", "[.(].)"]);
    assert_eq!(
        stdout(&o),
        "2\nmetric=mag\nsymdiff=4\nomega=1\nmatrix_dim=6\nrank(T-Id)=2\n"
    );
}

#[test]
fn dist_errors() {
    let o = rnadist(&["dist", "((.))", "(...)."]);
    assert_eq!(o.status.code(), Some(5));
    assert!(stderr(&o).contains("LengthMismatch"));
    let o = rnadist(&["dist", "(()).", "....."]);
    assert_eq!(o.status.code(), Some(4));
    assert!(stderr(&o).contains("AdjacentContact"));
    let o = rnadist(&["dist", "((.", "..."]);
    assert_eq!(o.status.code(), Some(3));
    let o = rnadist(&["dist", "--metric", "hamming", "...", "..."]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn dist_reads_files() {
    let a = temp_file("dist_a.txt", "n 7\n1 3\n5 7\n");
    let b = temp_file("dist_b.txt", "..(.)..\n");
    assert_eq!(stdout(&rnadist(&["dist", arg(&a), arg(&b)])), "3\n");
}

#[test]
fn orbits_listing() {
    let o = rnadist(&["orbits", "(.)(.)", "[.(].)"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        "cyclic [1,3,6,4] size=4\nlinear [2] size=1\nlinear [5] size=1\nomega=1 symdiff=4 d_inv=2\n"
    );
    let o = rnadist(&["orbits", "(.).(.)", "..(.).."]);
    assert_eq!(
        stdout(&o),
        "linear [1,3,5,7] size=4\nlinear [2] size=1\nlinear [4] size=1\nlinear [6] size=1\nomega=0 symdiff=3 d_inv=3\n"
    );
}

fn parse_tsv(text: &str) -> Vec<Vec<String>> {
    text.lines().map(|l| l.split('\t').map(String::from).collect()).collect()
}

#[test]
fn matrix_is_symmetric_with_zero_diagonal() {
    let one = temp_file("one.txt", "((..))\n");
    assert_eq!(stdout(&rnadist(&["matrix", arg(&one)])), "\t1\n1\t0\n");

    let same = temp_file("same.txt", "(..)\n(..)\n");
    assert_eq!(stdout(&rnadist(&["matrix", arg(&same)])), "\t1\t2\n1\t0\t0\n2\t0\t0\n");

    let gen = rnadist(&["gen", "-n", "40", "-k", "12", "--count", "6", "--seed", "9"]);
    let file = temp_file("many.txt", &stdout(&gen));
    for metric in ["inv", "sgr", "sgr2", "mag"] {
        let o = rnadist(&["matrix", "--metric", metric, arg(&file)]);
        assert_eq!(o.status.code(), Some(0));
        let rows = parse_tsv(&stdout(&o));
        assert_eq!(rows.len(), 7);
        assert_eq!(rows[0], ["", "1", "2", "3", "4", "5", "6"]);
        for r in 1..=6 {
            assert_eq!(rows[r][0], r.to_string());
            for c in 1..=6 {
                assert_eq!(rows[r][c], rows[c][r], "{metric} ({r},{c})");
            }
            assert!(rows[r][r].parse::<f64>().unwrap() == 0.0);
        }
    }
}

#[test]
fn matrix_rejects_mixed_lengths() {
    let mixed = temp_file("mixed.txt", "(..)\n(...)\n");
    let o = rnadist(&["matrix", arg(&mixed)]);
    assert_eq!(o.status.code(), Some(5));
    assert!(stderr(&o).contains("record 2"));
}

#[test]
fn gen_is_reproducible_and_valid() {
    let args = ["gen", "-n", "50", "-k", "20", "--count", "10", "--seed", "7"];
    let first = stdout(&rnadist(&args));
    assert_eq!(first, stdout(&rnadist(&args)));
    assert_eq!(first.lines().count(), 10);
    assert!(first.lines().all(|l| l.chars().count() == 50));
    let other = stdout(&rnadist(&["gen", "-n", "50", "-k", "20", "--count", "10", "--seed", "8"]));
    assert_ne!(first, other);

    let file = temp_file("generated.txt", &first);
    let o = rnadist(&["validate", arg(&file)]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).ends_with("10 of 10 records valid\n"));

    let pl = stdout(&rnadist(&["gen", "-n", "12", "-k", "4", "--count", "3", "--format", "pairlist"]));
    assert!(pl.starts_with("n 12\n"));
    let file = temp_file("generated_pl.txt", &pl);
    assert!(stdout(&rnadist(&["validate", arg(&file)])).ends_with("3 of 3 records valid\n"));
}

#[test]
fn gen_reports_infeasible_requests() {
    let o = rnadist(&["gen", "-n", "5", "-k", "3"]);
    assert_eq!(o.status.code(), Some(7));
    assert!(stderr(&o).contains("Infeasible"));
}

#[test]
fn mag_agrees_with_inv_on_generated_pairs() {
    let text = stdout(&rnadist(&["gen", "-n", "30", "-k", "10", "--count", "200", "--seed", "3"]));
    let lines: Vec<&str> = text.lines().collect();
    for pair in lines.chunks(2) {
        let inv = stdout(&rnadist(&["dist", pair[0], pair[1]]));
        let mag = stdout(&rnadist(&["dist", "--metric", "mag", pair[0], pair[1]]));
        assert_eq!(inv, mag, "{} / {}", pair[0], pair[1]);
    }
}
