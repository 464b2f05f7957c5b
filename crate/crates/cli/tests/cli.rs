use std::process::{Command, Output};

fn goldilocks(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_goldilocks"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

/// Rows of a CSV as header-keyed maps.
fn csv_rows(text: &str) -> Vec<std::collections::HashMap<String, String>> {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    let header: Vec<String> = r.headers().unwrap().iter().map(str::to_string).collect();
    r.records()
        .map(|rec| {
            header
                .iter()
                .cloned()
                .zip(rec.unwrap().iter().map(str::to_string))
                .collect()
        })
        .collect()
}

fn num(s: &str) -> f64 {
    s.parse().unwrap()
}

#[test]
fn unitary_ground_level_is_sixfold() {
    let o = goldilocks(&[
        "spectrum",
        "--delta",
        "unitary",
        "--stats",
        "distinguishable",
        "--emax",
        "5",
        "--levels",
    ]);
    assert!(o.status.success());
    let rows = csv_rows(&stdout(&o));
    assert_eq!(rows.len(), 1);
    assert_eq!(num(&rows[0]["energy"]), 4.0);
    assert_eq!(rows[0]["multiplicity"], "6");
}

#[test]
fn rounded_unitary_float_needs_a_looser_grouping() {
    let strict = goldilocks(&["spectrum", "--delta", "1.5707963", "--emax", "5", "--levels"]);
    assert!(csv_rows(&stdout(&strict)).len() > 1);
    let loose = goldilocks(&[
        "spectrum",
        "--delta",
        "1.5707963",
        "--emax",
        "5",
        "--levels",
        "--group-tol",
        "1e-6",
    ]);
    let rows = csv_rows(&stdout(&loose));
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0]["multiplicity"], "6");
}

#[test]
fn free_oscillator_levels() {
    let o = goldilocks(&["spectrum", "--delta", "0", "--emax", "3", "--levels"]);
    let rows = csv_rows(&stdout(&o));
    let got: Vec<(f64, &str)> = rows
        .iter()
        .map(|r| (num(&r["energy"]), r["multiplicity"].as_str()))
        .collect();
    assert_eq!(got, vec![(1.0, "1"), (2.0, "2"), (3.0, "3")]);
}

#[test]
fn state_table_columns() {
    let o = goldilocks(&["spectrum", "--delta", "0.4", "--emax", "6"]);
    let text = stdout(&o);
    assert!(text.starts_with("family,branch,kind,irrep,m,lambda,nu,energy,multiplicity,level\r\n"));
    let o = goldilocks(&["spectrum", "--delta", "0.4", "--emax", "6", "--include-cm"]);
    assert!(stdout(&o).starts_with("family,branch,kind,irrep,m,lambda,nu,n,energy,multiplicity,level\r\n"));
}

#[test]
fn json_envelope_matches_schema() {
    let schema: serde_json::Value =
        serde_json::from_str(include_str!("../../../schemas/output_record.schema.json")).unwrap();
    let runs: [&[&str]; 6] = [
        &["spectrum", "--delta", "0", "--emax", "3"],
        &["levels", "--grid", "0:unitary:3", "--lambda-max", "3"],
        &["wavefunction", "--family", "2", "--delta", "0.7", "--samples", "4"],
        &["slopes", "--regime", "weak", "--lambda-max", "2"],
        &["ladder-check", "--nu-max", "1"],
        &["contact-ed", "--g", "1", "--emax", "5,7"],
    ];
    let required: Vec<&str> = schema["required"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_str().unwrap())
        .collect();
    let commands = schema["properties"]["command"]["enum"].as_array().unwrap();
    for args in runs {
        let mut a = args.to_vec();
        a.extend(["--format", "json"]);
        let o = goldilocks(&a);
        assert!(o.status.success(), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
        let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
        let obj = v.as_object().unwrap();
        assert_eq!(obj.len(), required.len());
        for k in &required {
            assert!(obj.contains_key(*k), "{k} missing for {args:?}");
        }
        assert_eq!(v["schema_version"], "1");
        assert_eq!(v["command"], args[0]);
        assert!(commands.contains(&v["command"]));
        assert!(v["parameters"].as_object().unwrap().values().all(|p| p.is_string()));
        let width = v["columns"].as_array().unwrap().len();
        for row in v["rows"].as_array().unwrap() {
            let row = row.as_array().unwrap();
            assert_eq!(row.len(), width);
            assert!(row.iter().all(|c| c.is_number() || c.is_string() || c.is_null()));
        }
    }
}

#[test]
fn repeated_runs_are_byte_identical() {
    let args = ["levels", "--grid", "0:unitary:9", "--lambda-max", "6"];
    let run = |threads: &str| {
        Command::new(env!("CARGO_BIN_EXE_goldilocks"))
            .args(args)
            .env("GOLDILOCKS_THREADS", threads)
            .output()
            .unwrap()
            .stdout
    };
    let a = run("1");
    assert_eq!(a, run("1"));
    assert_eq!(a, run("4"));
}

#[test]
fn usage_errors_exit_with_two() {
    let cases: [&[&str]; 7] = [
        &["spectrum", "--delta", "1.6", "--emax", "3"],
        &["spectrum", "--delta", "-0.1", "--emax", "3"],
        &["levels", "--grid", "0:1"],
        &["levels", "--grid", "a:b:c"],
        &["wavefunction", "--family", "1", "--kind", "flat", "--delta", "0.3"],
        &["wavefunction", "--family", "0", "--delta", "0.3", "--samples", "1"],
        &["contact-ed", "--g", "1", "--basis", "goldilocks", "--emax", "5"],
    ];
    for args in cases {
        let o = goldilocks(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(o.stdout.is_empty());
        assert!(!o.stderr.is_empty());
    }
    let o = Command::new(env!("CARGO_BIN_EXE_goldilocks"))
        .args(["ladder-check", "--nu-max", "0"])
        .env("GOLDILOCKS_THREADS", "many")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn invariant_violation_exits_with_three() {
    // finite differences cannot meet a 1e-12 relative tolerance
    let o = goldilocks(&["slopes", "--regime", "unitary", "--tolerance", "1e-12"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(!o.stdout.is_empty());
    assert!(String::from_utf8_lossy(&o.stderr).contains("invariant violated"));
}

#[test]
fn levels_structure() {
    let o = goldilocks(&["levels", "--grid", "0:unitary:17", "--lambda-max", "9"]);
    assert!(o.status.success());
    let rows = csv_rows(&stdout(&o));
    let mut by_branch: std::collections::BTreeMap<(String, String, String), Vec<f64>> = Default::default();
    for r in &rows {
        by_branch
            .entry((r["family"].clone(), r["kind"].clone(), r["branch"].clone()))
            .or_default()
            .push(num(&r["lambda"]));
    }
    for ((_, kind, _), lam) in &by_branch {
        assert_eq!(lam.len(), 17);
        if kind == "flat" {
            assert!(lam.iter().all(|&l| l == lam[0]));
        } else {
            assert!(lam.windows(2).all(|w| w[1] >= w[0]));
        }
    }
}

#[test]
fn unitary_wavefunction_vanishes_on_lines() {
    let o = goldilocks(&["wavefunction", "--family", "1", "--delta", "unitary", "--samples", "13"]);
    assert!(o.status.success());
    for r in csv_rows(&stdout(&o)).iter().filter(|r| !r["line"].is_empty()) {
        assert!(num(&r["re"]).hypot(num(&r["im"])) < 1e-12);
    }
}

#[test]
fn free_ground_state_is_flat_and_real() {
    let o = goldilocks(&["wavefunction", "--family", "0", "--delta", "0", "--samples", "25"]);
    let rows = csv_rows(&stdout(&o));
    let c = 1.0 / (2.0 * std::f64::consts::PI).sqrt();
    for r in rows {
        assert!((num(&r["re"]) - c).abs() < 1e-14);
        assert_eq!(num(&r["im"]), 0.0);
    }
}

#[test]
fn intermediate_wavefunction_residual_columns() {
    let o = goldilocks(&[
        "wavefunction",
        "--family",
        "1",
        "--delta",
        "1.1780972450961724",
        "--samples",
        "50",
    ]);
    assert!(o.status.success());
    let rows = csv_rows(&stdout(&o));
    let lines: Vec<_> = rows.iter().filter(|r| !r["line"].is_empty()).collect();
    assert_eq!(lines.len(), 6);
    for r in lines {
        assert!(num(&r["kink_residual"]) < 1e-8);
        assert!(num(&r["continuity_residual"]) < 1e-10);
    }
}

#[test]
fn ladder_check_passes() {
    let o = goldilocks(&["ladder-check"]);
    assert!(o.status.success());
    let rows = csv_rows(&stdout(&o));
    assert_eq!(rows.len(), 18);
    for r in rows {
        assert!(num(&r["w_plus_map"]) < 1e-8);
        assert!(num(&r["casimir_abs_diff"]) < 1e-12 * num(&r["casimir_analytic"]).abs().max(1.0));
    }
}

#[test]
fn slope_tables_have_side_by_side_columns() {
    let o = goldilocks(&["slopes", "--regime", "unitary", "--lambda-max", "6"]);
    assert!(o.status.success());
    let rows = csv_rows(&stdout(&o));
    for r in &rows {
        let (a, n) = (num(&r["analytic"]), num(&r["numeric"]));
        assert!((num(&r["abs_diff"]) - (a - n).abs()).abs() < 1e-15);
        let unit = 3.0 / std::f64::consts::PI * num(&r["lambda"]);
        let pattern = a / unit;
        assert!(
            [0.0, 0.5, 1.5, 2.0].iter().any(|p| (pattern - p).abs() < 1e-12),
            "{pattern}"
        );
    }
}

#[test]
fn contact_ed_column_is_monotone() {
    let o = goldilocks(&[
        "contact-ed",
        "--g",
        "20",
        "--sector",
        "A1",
        "--basis",
        "harmonic",
        "--emax",
        "10,20,30",
    ]);
    assert!(o.status.success());
    let rows = csv_rows(&stdout(&o));
    let e0: Vec<f64> = rows
        .iter()
        .filter(|r| r["row"] == "cutoff")
        .map(|r| num(&r["e0"]))
        .collect();
    assert_eq!(e0.len(), 3);
    assert!(e0.windows(2).all(|w| w[1] <= w[0]));
    assert!(rows.iter().any(|r| r["row"] == "inverse_size_fit"));
}
