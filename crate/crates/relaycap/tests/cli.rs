use std::fs;
use std::process::{Command, Output};

use relaycap::sweep::{CSV_HEADER, GAIN_HEADER};
use relaycap::{run_sweep, Preset, SweepSpec};
use relaycap_core::analytic::capacity_gain_iid;
use relaycap_core::{Method, Scheme};

fn relaycap(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_relaycap"))
        .args(args)
        .output()
        .expect("failed to launch relaycap")
}

fn stdout(out: &Output) -> String {
    assert!(
        out.status.success(),
        "status {:?}: {}",
        out.status,
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn data_rows(csv: &str) -> Vec<Vec<String>> {
    csv.lines()
        .skip(1)
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

#[test]
fn fig3_grid_has_one_row_per_point_scheme_and_method() {
    let out = relaycap(&[
        "--preset",
        "fig3",
        "--relays",
        "2",
        "--snr-db",
        "0:30:5",
        "--scheme",
        "all",
        "--method",
        "analytic,montecarlo",
        "--samples",
        "2000",
    ]);
    let csv = stdout(&out);
    assert_eq!(csv.lines().next(), Some(CSV_HEADER));
    let rows = data_rows(&csv);
    assert_eq!(rows.len(), 42);
    assert!(rows.iter().all(|r| r.len() == 9));
    // grid order: snr, then scheme, then method
    assert_eq!(&rows[0][..5], ["0", "fig3", "2", "full", "analytic"]);
    assert_eq!(&rows[1][..5], ["0", "fig3", "2", "full", "montecarlo"]);
    assert_eq!(&rows[5][..5], ["0", "fig3", "2", "direct", "montecarlo"]);
    assert_eq!(&rows[41][..5], ["30", "fig3", "2", "direct", "montecarlo"]);
    for r in &rows {
        if r[4] == "analytic" {
            assert_eq!((r[6].as_str(), r[7].as_str(), r[8].as_str()), ("", "0", ""));
        } else {
            assert!(r[6].parse::<f64>().unwrap() > 0.0);
            assert_eq!((r[7].as_str(), r[8].as_str()), ("2000", "1"));
        }
    }
}

#[test]
fn non_positive_step_is_rejected_without_writing() {
    let dir = tempfile::tempdir().unwrap();
    for range in ["0:30:0", "0:30:-5", "10:0:5"] {
        let path = dir.path().join("out.csv");
        let out = relaycap(&["--snr-db", range, "--output", path.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(2), "{range}");
        assert!(!out.stderr.is_empty());
        assert!(!path.exists(), "{range}");
    }
}

#[test]
fn other_validation_failures_exit_with_2() {
    for args in [
        &["--preset", "rician"][..],
        &["--scheme", "best"],
        &["--method", "exact"],
        &["--relays", "0"],
        &["--relays", "21"],
        &["--snr-db", "0:10"],
        &["--preset", "custom", "--first-hop", "1"],
        &["--method", "montecarlo", "--samples", "0"],
        &["--gain", "--preset", "fig3"],
        &["--workers", "0"],
    ] {
        assert_eq!(relaycap(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn unwritable_output_exits_with_4() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("missing").join("out.csv");
    let out = relaycap(&["--output", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(4));
    let out = relaycap(&["--config", dir.path().join("none.cfg").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn config_file_with_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("sweep.cfg");
    let csv = dir.path().join("sweep.csv");
    fs::write(
        &cfg,
        format!(
            "# partial CSI only\npreset = fig3\nrelay_count = 3\nsnr_db_start = 0\n\
             snr_db_stop = 20\nsnr_db_step = 10\nschemes = partial\nmethods = analytic\n\
             output_path = {}\n",
            csv.display()
        ),
    )
    .unwrap();
    let out = relaycap(&["--config", cfg.to_str().unwrap(), "--relays", "2"]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let rows = data_rows(&fs::read_to_string(&csv).unwrap());
    let keys: Vec<_> = rows
        .iter()
        .map(|r| (r[0].as_str(), r[2].as_str(), r[3].as_str()))
        .collect();
    assert_eq!(
        keys,
        [
            ("0", "2", "partial"),
            ("10", "2", "partial"),
            ("20", "2", "partial")
        ]
    );
}

#[test]
fn csv_round_trips_module_values() {
    let out = relaycap(&[
        "--preset",
        "custom",
        "--first-hop",
        "1,0.25",
        "--second-hop",
        "2,5",
        "--direct",
        "0.03",
        "--snr-db",
        "-3:12:7.5",
        "--method",
        "all",
        "--samples",
        "3000",
        "--seed",
        "11",
    ]);
    let rows = data_rows(&stdout(&out));
    let spec = SweepSpec {
        snr_db_start: -3.0,
        snr_db_stop: 12.0,
        snr_db_step: 7.5,
        preset: Preset::Custom {
            first_hop: vec![1.0, 0.25],
            second_hop: vec![2.0, 5.0],
            direct: 0.03,
        },
        relay_count: 2,
        schemes: Scheme::ALL.to_vec(),
        methods: vec![Method::Analytic, Method::MonteCarlo, Method::Quadrature],
        samples: 3000,
        seed: 11,
        ..SweepSpec::default()
    };
    let expected = run_sweep(&spec).unwrap();
    assert_eq!(rows.len(), expected.len());
    assert_eq!(rows.len(), 3 * 3 * 3);
    for (r, e) in rows.iter().zip(&expected) {
        assert_eq!(r[0].parse::<f64>().unwrap(), e.snr_db);
        assert_eq!(r[3], e.scheme.as_str());
        assert_eq!(r[4], e.estimate.method.as_str());
        let value: f64 = r[5].parse().unwrap();
        assert_eq!(value.to_bits(), e.estimate.value.to_bits(), "{r:?}");
        if e.estimate.method == Method::MonteCarlo {
            let se: f64 = r[6].parse().unwrap();
            assert_eq!(se.to_bits(), e.estimate.std_error.to_bits());
        }
    }
}

#[test]
fn gain_table_increases_and_matches_closed_form() {
    let out = relaycap(&["--gain", "--snr-db", "0:40:5"]);
    let csv = stdout(&out);
    assert_eq!(csv.lines().next(), Some(GAIN_HEADER));
    let rows: Vec<[f64; 3]> = csv
        .lines()
        .skip(1)
        .map(|l| {
            let v: Vec<f64> = l.split(',').map(|x| x.parse().unwrap()).collect();
            [v[0], v[1], v[2]]
        })
        .collect();
    assert_eq!(rows.len(), 9);
    assert_eq!(rows[0][1], capacity_gain_iid(1.0).unwrap());
    assert!(rows.windows(2).all(|w| w[1][1] > w[0][1]));
    let at25 = rows.iter().find(|r| r[0] == 25.0).unwrap();
    assert!((at25[1] - 0.779064).abs() < 1e-6, "{}", at25[1]);
}

#[test]
fn negative_snr_range_is_accepted() {
    let csv = stdout(&relaycap(&["--snr-db", "-10:-5:5", "--scheme", "direct"]));
    let rows = data_rows(&csv);
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[0][0], "-10");
}
