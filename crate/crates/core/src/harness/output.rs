//! CSV and metadata writers.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use super::run::{CdfSeries, RunReport, Table1Row};

pub const TABLE1_HEADER: &str = "xpd_db,rho_exact,rho_approx,d_iso_lambda,d_lap_lambda,spread_deg";
pub const CDF_HEADER: &str = "throughput_bps,cum_prob";
pub const METADATA_FILE: &str = "run_metadata.txt";

fn opt(v: Option<f64>) -> String {
    v.map(|x| format!("{x:.6}")).unwrap_or_default()
}

pub fn table1_csv(rows: &[Table1Row]) -> String {
    let mut s = String::from(TABLE1_HEADER);
    s.push('\n');
    for r in rows {
        let _ = writeln!(
            s,
            "{},{:.6},{:.6},{},{},{:.3}",
            r.xpd_db,
            r.rho_exact,
            r.rho_approx,
            opt(r.d_iso),
            opt(r.d_lap),
            r.spread_deg
        );
    }
    s
}

pub fn cdf_csv(series: &CdfSeries) -> String {
    let mut s = String::from(CDF_HEADER);
    s.push('\n');
    for (x, p) in &series.points {
        let _ = writeln!(s, "{x},{p}");
    }
    s
}

/// `cdf_<model>_<xpd>.csv`
pub fn cdf_file_name(series: &CdfSeries) -> String {
    format!("cdf_{}_{}.csv", series.model.tag(), series.xpd_db)
}

pub fn metadata_text(report: &RunReport) -> String {
    let m = &report.metadata;
    let mut s = String::new();
    let _ = writeln!(s, "version = {}", m.version);
    let _ = writeln!(s, "seed = {}", m.seed);
    let _ = writeln!(s, "users = {}", m.users);
    let _ = writeln!(s, "trials_per_user = {}", m.trials_per_user);
    let models: Vec<&str> = m.models.iter().map(|m| m.tag()).collect();
    let _ = writeln!(s, "models = {}", models.join(","));
    let _ = writeln!(s, "pattern_file = {}", m.pattern_file.as_deref().unwrap_or("none"));
    if let Some(row) = report.table1.first() {
        let _ = writeln!(s, "d_lap_spread_deg = {:.3} (configured spread, not a site measurement)", row.spread_deg);
    }
    let _ = writeln!(s, "started_unix = {}", m.started_unix);
    let _ = writeln!(s, "finished_unix = {}", m.finished_unix);
    for series in &report.series {
        let _ = writeln!(
            s,
            "mean_throughput_bps[{}][{}] = {} (rank-deficient fraction {})",
            series.model, series.xpd_db, series.mean_throughput, series.rank_deficient_fraction
        );
    }
    s
}

/// Writes `table1.csv`, one CDF file per series and the metadata file into
/// `dir` (created if needed). Returns the paths written.
pub fn write_report(report: &RunReport, dir: &Path) -> std::io::Result<Vec<PathBuf>> {
    fs::create_dir_all(dir)?;
    let mut written = Vec::new();
    let path = dir.join("table1.csv");
    fs::write(&path, table1_csv(&report.table1))?;
    written.push(path);
    for series in &report.series {
        let path = dir.join(cdf_file_name(series));
        fs::write(&path, cdf_csv(series))?;
        written.push(path);
    }
    let path = dir.join(METADATA_FILE);
    fs::write(&path, metadata_text(report))?;
    written.push(path);
    Ok(written)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::link::Model;

    #[test]
    fn table_formatting() {
        let rows = vec![Table1Row {
            xpd_db: 10.0,
            rho_exact: 0.574_960_7,
            rho_approx: 0.632_455_6,
            d_iso: Some(0.220_4),
            d_lap: None,
            spread_deg: 26.0,
        }];
        assert_eq!(table1_csv(&rows), format!("{TABLE1_HEADER}\n10,0.574961,0.632456,0.220400,,26.000\n"));
    }

    #[test]
    fn cdf_file_layout() {
        let s = CdfSeries {
            model: Model::III,
            xpd_db: 2.5,
            points: vec![(1.0, 0.5), (3.0, 1.0)],
            mean_throughput: 2.0,
            rank_deficient_fraction: 0.0,
        };
        assert_eq!(cdf_file_name(&s), "cdf_iii_2.5.csv");
        assert_eq!(cdf_csv(&s), "throughput_bps,cum_prob\n1,0.5\n3,1\n");
    }
}
