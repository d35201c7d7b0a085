//! Acceptance suite. Each test covers one release criterion, checks it at
//! its stated tolerance, and prints a PASS line (run with --nocapture to see
//! them). Timings are wall-clock bounds on a debug build.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use assert_cmd::Command;

use curveideal_cli::textform::{parse_series, SSeries};
use curveideal_core::{
    brute_force_ordersets, classify_ideals, enumerate_up_to, verify_family, Semigroup,
};

fn cli_stdout(args: &[&str]) -> String {
    let out = Command::cargo_bin("curveideal")
        .unwrap()
        .args(args)
        .output()
        .expect("binary runs");
    assert!(out.status.success(), "{args:?} failed");
    String::from_utf8(out.stdout).unwrap()
}

/// Parses the `order sets` column of a table row into generator sets.
fn parse_row_gens(line: &str) -> Vec<Vec<u64>> {
    let column = line.split(" | ").nth(1).expect("order sets column");
    column
        .split(", ")
        .map(|entry| {
            entry
                .trim_start_matches('<')
                .trim_end_matches('>')
                .split(',')
                .map(|n| n.parse().unwrap())
                .collect()
        })
        .collect()
}

fn order_set_table(semigroup: &str) -> Vec<Vec<Vec<u64>>> {
    let table = cli_stdout(&["ordersets", "--semigroup", semigroup, "--codim", "6"]);
    table.lines().skip(1).map(parse_row_gens).collect()
}

fn assert_within(elapsed: Duration, limit: Duration, what: &str) {
    assert!(
        elapsed <= limit,
        "{what} took {elapsed:?}, over the {limit:?} budget"
    );
}

fn structural(generators: &[String]) -> Vec<SSeries> {
    generators
        .iter()
        .map(|g| parse_series(g).expect("family generators parse"))
        .collect()
}

fn expected_structural(generators: &[&str]) -> Vec<SSeries> {
    generators
        .iter()
        .map(|g| parse_series(g).expect("expected generators parse"))
        .collect()
}

#[test]
fn criterion_1_order_sets_of_the_double_point_ring() {
    let start = Instant::now();
    let rows = order_set_table("2,7");
    let elapsed = start.elapsed();

    let expected: Vec<Vec<Vec<u64>>> = vec![
        vec![vec![2, 7]],
        vec![vec![4, 7], vec![2]],
        vec![vec![6, 7], vec![4, 9]],
        vec![vec![7, 8], vec![6, 9], vec![4]],
        vec![vec![8, 9], vec![7, 10], vec![6, 11]],
        vec![vec![9, 10], vec![8, 11], vec![7, 12], vec![6]],
    ];
    assert_eq!(rows.len(), 6);
    let sizes: Vec<usize> = rows.iter().map(|r| r.len()).collect();
    assert_eq!(sizes, vec![1, 2, 2, 3, 3, 4]);
    assert_eq!(rows.iter().flatten().count(), 15);
    for (tau, (got, want)) in rows.iter().zip(&expected).enumerate() {
        let got: BTreeSet<_> = got.iter().collect();
        let want: BTreeSet<_> = want.iter().collect();
        assert_eq!(got, want, "row tau={}", tau + 1);
    }
    assert_within(elapsed, Duration::from_secs(1), "ordersets 2,7");
    println!("acceptance 1 PASS: 15 order sets over <2,7> reproduced in {elapsed:?}");
}

#[test]
fn criterion_2_order_sets_of_the_cusp_ring() {
    let start = Instant::now();
    let rows = order_set_table("3,4");
    let elapsed = start.elapsed();

    let expected: Vec<Vec<Vec<u64>>> = vec![
        vec![vec![3, 4]],
        vec![vec![4, 6], vec![3, 8]],
        vec![vec![6, 7, 8], vec![4, 9], vec![3]],
        vec![vec![7, 8, 9], vec![6, 8], vec![6, 7], vec![4]],
        vec![vec![8, 9, 10], vec![7, 9], vec![7, 8], vec![6, 11]],
        vec![
            vec![9, 10, 11],
            vec![8, 10],
            vec![8, 9],
            vec![7, 12],
            vec![6],
        ],
    ];
    let sizes: Vec<usize> = rows.iter().map(|r| r.len()).collect();
    assert_eq!(sizes, vec![1, 2, 3, 4, 4, 5]);
    assert_eq!(rows.iter().flatten().count(), 19);
    for (tau, (got, want)) in rows.iter().zip(&expected).enumerate() {
        let got: BTreeSet<_> = got.iter().collect();
        let want: BTreeSet<_> = want.iter().collect();
        assert_eq!(got, want, "row tau={}", tau + 1);
    }
    // the three-generator entries are present
    for triple in [
        vec![6u64, 7, 8],
        vec![7, 8, 9],
        vec![8, 9, 10],
        vec![9, 10, 11],
    ] {
        assert!(rows.iter().flatten().any(|g| *g == triple));
    }
    assert_within(elapsed, Duration::from_secs(1), "ordersets 3,4");
    println!("acceptance 2 PASS: 19 order sets over <3,4> reproduced in {elapsed:?}");
}

#[test]
fn criterion_3_ideal_families_of_the_double_point_ring() {
    let expected: Vec<Vec<Vec<&str>>> = vec![
        vec![vec!["t^2", "t^7"]],
        vec![vec!["t^4", "t^7"], vec!["t^2 + a*t^7"]],
        vec![vec!["t^6", "t^7"], vec!["t^4 + a*t^7", "t^9"]],
        vec![
            vec!["t^7", "t^8"],
            vec!["t^6 + a*t^7", "t^9"],
            vec!["t^4 + a*t^7 + b*t^9"],
        ],
        vec![
            vec!["t^8", "t^9"],
            vec!["t^7 + a*t^8", "t^10"],
            vec!["t^6 + a*t^7 + b*t^9", "t^11"],
        ],
        vec![
            vec!["t^9", "t^10"],
            vec!["t^8 + a*t^9", "t^11"],
            vec!["t^7 + a*t^8 + b*t^10", "t^12"],
            vec!["t^6 + a*t^7 + b*t^9 + c*t^11"],
        ],
    ];

    let start = Instant::now();
    let s = Semigroup::from_generators(&[2, 7]).unwrap();
    for (row, expected_row) in expected.iter().enumerate() {
        let families = classify_ideals(&s, row + 1);
        assert_eq!(families.len(), expected_row.len(), "tau={}", row + 1);
        for (fam, want) in families.iter().zip(expected_row) {
            assert_eq!(
                structural(&fam.generator_strings()),
                expected_structural(want),
                "tau={} family {want:?}",
                row + 1
            );
            // two-generator normal form with a monomial second generator
            assert!(fam.generators.len() <= 2);
            if let Some(second) = fam.generators.get(1) {
                assert_eq!(second.terms().count(), 1);
            }
        }
    }
    let elapsed = start.elapsed();
    assert_within(elapsed, Duration::from_secs(5), "ideals 2,7");
    println!("acceptance 3 PASS: every <2,7> family matches in {elapsed:?}");
}

#[test]
fn criterion_4_ideal_families_of_the_cusp_ring() {
    let expected: Vec<Vec<Vec<&str>>> = vec![
        vec![vec!["t^3", "t^4"]],
        vec![vec!["t^4", "t^6"], vec!["t^3 + a*t^4", "t^8"]],
        vec![
            vec!["t^6", "t^7", "t^8"],
            vec!["t^4 + a*t^6", "t^9"],
            vec!["t^3 + a*t^4 + b*t^8", "t^6 - a^2*t^8"],
        ],
        vec![
            vec!["t^7", "t^8", "t^9"],
            vec!["t^6 + a*t^7", "t^8"],
            vec!["t^6 + a*t^8", "t^7 + b*t^8"],
            vec!["t^4 + a*t^6 + b*t^9"],
        ],
        vec![
            vec!["t^8", "t^9", "t^10"],
            vec!["t^7 + a*t^8", "t^9"],
            vec!["t^7 + a*t^9", "t^8 + b*t^9"],
            vec!["t^6 + a*t^7 + b*t^8", "t^11"],
        ],
        vec![
            vec!["t^9", "t^10", "t^11"],
            vec!["t^8 + a*t^9", "t^10"],
            vec!["t^8 + a*t^10", "t^9 + b*t^10"],
            vec!["t^7 + a*t^8 + b*t^9", "t^12"],
            vec!["t^6 + a*t^7 + b*t^8 + c*t^11", "t^9 + (b - a^2)*t^11"],
        ],
    ];

    let start = Instant::now();
    let s = Semigroup::from_generators(&[3, 4]).unwrap();
    for (row, expected_row) in expected.iter().enumerate() {
        let families = classify_ideals(&s, row + 1);
        assert_eq!(families.len(), expected_row.len(), "tau={}", row + 1);
        for (fam, want) in families.iter().zip(expected_row) {
            assert_eq!(
                structural(&fam.generator_strings()),
                expected_structural(want),
                "tau={} family {want:?}",
                row + 1
            );
        }
    }
    // the walkthrough's solved conditions
    let last = classify_ideals(&s, 6).pop().unwrap();
    assert_eq!(last.solved_strings(), vec!["d = b - a^2", "e = a"]);
    assert!(last.conditions.residual.is_empty());
    let elapsed = start.elapsed();
    assert_within(elapsed, Duration::from_secs(10), "ideals 3,4");
    println!("acceptance 4 PASS: every <3,4> family matches in {elapsed:?}");
}

#[test]
fn criterion_5_enumeration_equals_brute_force() {
    let start = Instant::now();
    for gens in [
        &[2u64, 7][..],
        &[3, 4],
        &[3, 5],
        &[4, 5],
        &[2, 9],
        &[4, 5, 6],
    ] {
        let s = Semigroup::from_generators(gens).unwrap();
        let chain = enumerate_up_to(&s, 8);
        for family in &chain {
            let brute = brute_force_ordersets(&s, family.codim, 10_000_000).unwrap();
            let chain_gaps: BTreeSet<Vec<u64>> =
                family.members.iter().map(|m| m.gaps().to_vec()).collect();
            let brute_gaps: BTreeSet<Vec<u64>> =
                brute.members.iter().map(|m| m.gaps().to_vec()).collect();
            assert_eq!(chain_gaps, brute_gaps, "{s} codim {}", family.codim);
        }
    }
    let elapsed = start.elapsed();
    assert_within(elapsed, Duration::from_secs(60), "oracle equivalence");
    println!("acceptance 5 PASS: chain = brute force for 6 semigroups, r <= 8, in {elapsed:?}");
}

#[test]
fn criterion_6_every_family_survives_seeded_verification() {
    let start = Instant::now();
    let mut families_checked = 0;
    for gens in [&[2u64, 7][..], &[3, 4]] {
        let s = Semigroup::from_generators(gens).unwrap();
        for tau in 1..=6 {
            for fam in classify_ideals(&s, tau) {
                let report = verify_family(&fam, 20, 42);
                assert!(
                    report.all_ok(),
                    "{s} tau={tau} family {:?}: {} mismatches",
                    fam.generator_strings(),
                    report.mismatches()
                );
                families_checked += 1;
            }
        }
    }
    assert_eq!(families_checked, 15 + 19);
    let elapsed = start.elapsed();
    assert_within(elapsed, Duration::from_secs(60), "family verification");
    println!(
        "acceptance 6 PASS: {families_checked} families, 20 seeded trials each plus zero probes, \
         0 mismatches, in {elapsed:?}"
    );
}

#[test]
fn criterion_7_property_suites_run_standalone() {
    let cargo = std::env::var("CARGO").unwrap_or_else(|_| "cargo".into());
    let out = std::process::Command::new(cargo)
        .args(["test", "-p", "curveideal-core", "--test", "properties"])
        .output()
        .expect("nested cargo test runs");
    assert!(
        out.status.success(),
        "property suite failed:\n{}\n{}",
        String::from_utf8_lossy(&out.stdout),
        String::from_utf8_lossy(&out.stderr)
    );
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("8 passed"), "stdout: {stdout}");
    println!("acceptance 7 PASS: standalone property suites green (128 cases per property)");
}
