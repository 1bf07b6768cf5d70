//! Config round-trip, runner determinism, and CSV formatting checks driven
//! through the public `cli` module.

use casimir_media::cli::{emit_csv, run, RunConfig, Scenario, Sweep, SweepVariable};

fn small_example() -> RunConfig {
    let mut config = RunConfig::example();
    config.sweep = Some(Sweep {
        points: 4,
        ..config.sweep.unwrap()
    });
    // Keep the test fast: a loose tolerance is plenty for determinism checks.
    config.quadrature.rel_tol = 1e-5;
    config
}

#[test]
fn example_config_parses_and_runs() {
    let config = small_example();
    let reparsed = RunConfig::from_json(&config.to_json()).unwrap();
    assert_eq!(config, reparsed);

    let output = run(&config).unwrap();
    assert_eq!(output.rows.len(), 4);
    assert_eq!(output.sweep_name, "d");
    for row in &output.rows {
        assert_eq!(row.values.len(), output.columns.len());
        assert!(row.converged, "row at {} did not converge", row.sweep_value);
        for v in &row.values {
            assert!(v.is_finite());
        }
    }
    // Attraction toward a perfect mirror across a vacuum gap: the total force
    // (positive = attractive) decreases with distance.
    let total_idx = output
        .columns
        .iter()
        .position(|c| *c == "total")
        .expect("total column");
    let totals: Vec<f64> = output.rows.iter().map(|r| r.values[total_idx]).collect();
    for pair in totals.windows(2) {
        assert!(pair[0] > pair[1] && pair[1] > 0.0, "totals: {totals:?}");
    }
}

#[test]
fn csv_output_is_deterministic() {
    let config = small_example();
    let render = || {
        let output = run(&config).unwrap();
        let mut buf = Vec::new();
        emit_csv(&output, &mut buf).unwrap();
        String::from_utf8(buf).unwrap()
    };
    let first = render();
    let second = render();
    assert_eq!(first, second, "repeated runs must emit identical CSV");

    let header = first
        .lines()
        .find(|l| !l.starts_with('#'))
        .expect("header line");
    assert!(header.starts_with("d,"), "header: {header}");
    let data_rows = first
        .lines()
        .filter(|l| !l.starts_with('#') && *l != header && !l.is_empty())
        .count();
    assert_eq!(data_rows, 4);
    assert!(first.contains("# units:"));
    assert!(first.contains("# summary:"));
}

#[test]
fn file_round_trip_with_atom_scenarios() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.json");

    let mut config = small_example();
    config.scenario = Scenario::AtomMirror {
        host: "weak_magnetodielectric".to_string(),
        atom: "electric_atom".to_string(),
        mirror: casimir_media::cli::MirrorConfig::Perfect,
        d: 1.0,
    };
    std::fs::write(&path, config.to_json()).unwrap();
    let loaded = RunConfig::from_file(&path).unwrap();
    assert_eq!(config, loaded);

    let output = run(&loaded).unwrap();
    assert!(output.columns.iter().any(|c| *c == "potential"));
    assert_eq!(output.rows.len(), 4);
}

#[test]
fn unknown_names_are_rejected_with_field_context() {
    let mut config = small_example();
    config.scenario = Scenario::AtomAtom {
        host: "vacuum".to_string(),
        atom_a: "no_such_atom".to_string(),
        atom_b: "electric_atom".to_string(),
        r: 1.0,
    };
    config.sweep = Some(Sweep {
        variable: SweepVariable::R,
        ..config.sweep.unwrap()
    });
    let err = RunConfig::from_json(&config.to_json()).unwrap_err();
    let message = err.to_string();
    assert!(message.contains("no_such_atom"), "message: {message}");
    assert!(message.contains("atom_a"), "message: {message}");
}
