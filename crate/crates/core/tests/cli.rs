use std::fs;
use std::path::Path;
use std::process::{Command, Output};

const BIN: &str = env!("CARGO_BIN_EXE_dualpol");

fn dualpol(args: &[&str]) -> Output {
    Command::new(BIN).args(args).output().expect("spawn dualpol")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

const SCENARIO: &str = r#"
seed = 11
trials_per_user = 200

[generator]
count = 12

[[users]]
id = "desk"
path_loss_db = 75.0
mean_aod_deg = 10.0

[sweep]
xpd_db = [3, 10, 30]
"#;

fn write_scenario(dir: &Path, body: &str) -> String {
    let path = dir.join("scenario.toml");
    fs::write(&path, body).unwrap();
    path.to_str().unwrap().to_owned()
}

#[test]
fn table1_prints_csv() {
    let o = dualpol(&["table1", "--xpd", "10"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("xpd_db,rho_exact,rho_approx,d_iso_lambda,d_lap_lambda,spread_deg"));
    let row: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(row[0], "10");
    assert_eq!(row[1], "0.574960");
    assert_eq!(row[2], "0.632456");
    assert!((row[3].parse::<f64>().unwrap() - 0.2204).abs() < 5e-4);
    assert_eq!(row[5], "26.000");
}

#[test]
fn spacing_subcommand() {
    let o = dualpol(&["spacing", "--rho", "0.5750"]);
    assert!(o.status.success());
    let d: f64 = stdout(&o).trim().parse().unwrap();
    assert!((d - 0.220).abs() < 2e-3);
}

#[test]
fn unreachable_spacing_is_numerical_error() {
    let o = dualpol(&["spacing", "--rho", "0.01", "--dist", "lap", "--spread", "26"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn xpd_from_pattern() {
    let dir = tempfile::tempdir().unwrap();
    let mut csv = String::from("azimuth_deg,p1_co,p1_cross,p2_co,p2_cross\n");
    for i in 0..36 {
        let az = -180 + 10 * i;
        csv.push_str(&format!("{az},5,-5,4,-11\n"));
    }
    let path = dir.path().join("pattern.csv");
    fs::write(&path, csv).unwrap();
    let o = dualpol(&["xpd-from-pattern", "--file", path.to_str().unwrap(), "--azimuth", "-35"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    let rows: Vec<Vec<&str>> = text.lines().skip(1).map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 2);
    // Co over cross of the same port.
    assert_eq!(rows[0][2], "10.000000");
    assert_eq!(rows[1][2], "15.000000");
}

#[test]
fn malformed_pattern_is_config_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("pattern.csv");
    fs::write(&path, "az,a,b,c,d\n0,1,2,3\n").unwrap();
    let o = dualpol(&["xpd-from-pattern", "--file", path.to_str().unwrap(), "--azimuth", "0"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn bad_config_exit_code() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out");
    let out = out.to_str().unwrap();
    for body in ["seed = 1\n[sweep]\nxpd_db = [10]\n", "seed = 1\nbogus = 2\n", "not toml at all ["] {
        let cfg = write_scenario(dir.path(), body);
        let o = dualpol(&["cdf", "--config", &cfg, "--out", out]);
        assert_eq!(o.status.code(), Some(2), "{body}");
    }
    let o = dualpol(&["cdf", "--config", "/nonexistent/scenario.toml", "--out", out]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn model_iii_without_spacing_is_numerical_error() {
    // 40 dB XPD has ρ ≈ 0.02, below the σ = 26° Laplacian floor.
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_scenario(dir.path(), "seed = 1\ntrials_per_user = 10\n[generator]\ncount = 2\n[sweep]\nxpd_db = [40]\n");
    let o = dualpol(&["cdf", "--config", &cfg, "--models", "iii", "--out", dir.path().join("o").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn cdf_runs_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_scenario(dir.path(), SCENARIO);
    let outs = ["a", "b"].map(|n| dir.path().join(n));
    for out in &outs {
        let o = dualpol(&["cdf", "--config", &cfg, "--out", out.to_str().unwrap()]);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    }
    let mut names: Vec<String> =
        fs::read_dir(&outs[0]).unwrap().map(|e| e.unwrap().file_name().into_string().unwrap()).collect();
    names.sort();
    let csvs: Vec<&String> = names.iter().filter(|n| n.ends_with(".csv")).collect();
    // table1 plus 4 models x 3 XPDs
    assert_eq!(csvs.len(), 13, "{names:?}");
    assert!(names.iter().any(|n| n == "run_metadata.txt"));
    for name in csvs {
        let a = fs::read(outs[0].join(name)).unwrap();
        let b = fs::read(outs[1].join(name)).unwrap();
        assert_eq!(a, b, "{name}");
    }
    let cdf = fs::read_to_string(outs[0].join("cdf_ii_10.csv")).unwrap();
    let lines: Vec<&str> = cdf.lines().collect();
    assert_eq!(lines[0], "throughput_bps,cum_prob");
    // 12 generated users plus one explicit.
    assert_eq!(lines.len(), 14);
    assert!(lines.last().unwrap().ends_with(",1"));
}

#[test]
fn model_subset() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_scenario(dir.path(), SCENARIO);
    let out = dir.path().join("o");
    let o = dualpol(&["cdf", "--config", &cfg, "--models", "i,iv", "--out", out.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(out.join("cdf_iv_30.csv").exists());
    assert!(!out.join("cdf_ii_30.csv").exists());
}
