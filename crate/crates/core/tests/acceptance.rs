//! Acceptance criteria. Runs as a plain binary (`harness = false`) so that
//! every criterion prints exactly one PASS/FAIL line.

use std::f64::consts::PI;
use std::path::Path;
use std::time::{Duration, Instant};

use dualpol_mimo::chanmodel::{build_effective, draw_fading, kronecker_effective, substream, PropagationGains};
use dualpol_mimo::correlation::{
    bessel_j0, dualpole_corr_exact, equivalent_spacing, matrix_sqrt_psd, spatial_corr, AodDistribution,
    CorrelationMatrix, GaussLegendre, SpacingQuery,
};
use dualpol_mimo::harness::{parse_scenario, run};
use dualpol_mimo::link::{evaluate_user, mean_throughput, zf_weights, LinkParams, Model, UserLink};
use dualpol_mimo::mat2::Mat2;
use dualpol_mimo::Complex64;
use rand::Rng;

const XPD_DB: [f64; 5] = [3.0, 5.0, 10.0, 20.0, 30.0];
const TABLE_RHO: [f64; 5] = [0.9432, 0.8545, 0.5750, 0.1980, 0.0632];
const TABLE_D_ISO: [f64; 5] = [0.076, 0.124, 0.220, 0.326, 0.364];

fn db(x: f64) -> f64 {
    10f64.powf(x / 10.0)
}

type Outcome = Result<String, String>;

fn check(cond: bool, ok: String, fail: String) -> Outcome {
    if cond {
        Ok(ok)
    } else {
        Err(fail)
    }
}

fn within_budget(elapsed: Duration, budget: Duration, detail: String) -> Outcome {
    check(
        elapsed < budget,
        format!("{detail}; {elapsed:?} < {budget:?}"),
        format!("{detail}; runtime {elapsed:?} exceeds {budget:?}"),
    )
}

/// 1. Table ρ row within ±5e-4, < 1 ms.
fn table_rho_row() -> Outcome {
    let start = Instant::now();
    let rho: Vec<f64> = XPD_DB.iter().map(|&x| dualpole_corr_exact(db(x), db(x)).unwrap().rho().re).collect();
    let elapsed = start.elapsed();
    let worst = rho.iter().zip(TABLE_RHO).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
    if worst > 5e-4 {
        return Err(format!("rho {rho:?}, worst error {worst:.2e} > 5e-4"));
    }
    within_budget(elapsed, Duration::from_millis(1), format!("worst |rho - table| = {worst:.2e}"))
}

/// Independent route to `J₀`: composite Gauss–Legendre of `(1/π)∫₀^π cos(x sin θ) dθ`.
fn j0_by_quadrature(x: f64) -> f64 {
    GaussLegendre::sixteen().integrate(0.0, PI, 64, |t| (x * t.sin()).cos()) / PI
}

/// 2. Table d_iso row within ±0.002λ, Bessel vs quadrature to 1e-8, < 100 ms.
fn table_d_iso_row() -> Outcome {
    let mut worst_bessel = 0.0f64;
    let mut rng = substream(2024, 0);
    for _ in 0..100 {
        let d: f64 = 2.0 * rng.random::<f64>();
        let x = 2.0 * PI * d;
        worst_bessel = worst_bessel.max((bessel_j0(x) - j0_by_quadrature(x)).abs());
    }
    if worst_bessel > 1e-8 {
        return Err(format!("Bessel vs quadrature error {worst_bessel:.2e} > 1e-8"));
    }
    let start = Instant::now();
    let d: Vec<f64> = TABLE_RHO
        .iter()
        .map(|&rho| {
            equivalent_spacing(&SpacingQuery { target_rho: rho, wavelength: 1.0, distribution: AodDistribution::Isotropic })
                .unwrap()
        })
        .collect();
    let elapsed = start.elapsed();
    let worst = d.iter().zip(TABLE_D_ISO).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
    if worst > 0.002 {
        return Err(format!("d_iso {d:?}, worst error {worst:.4} > 0.002"));
    }
    within_budget(
        elapsed,
        Duration::from_millis(100),
        format!("worst |d_iso - table| = {worst:.4} lambda, Bessel/quadrature gap {worst_bessel:.1e}"),
    )
}

/// 3. Empirical transmit correlation of 10^5 realizations within ±0.02.
fn kronecker_fidelity() -> Outcome {
    let start = Instant::now();
    let n = 100_000;
    let mut worst_ii = 0.0f64;
    let mut worst_i = 0.0f64;
    for (k, &x) in [3.0, 10.0, 20.0].iter().enumerate() {
        let chi = db(x);
        let r = dualpole_corr_exact(chi, chi).unwrap();
        // Model ii: (1/N) Σ H^H H / 2 against R.
        let mut rng = substream(31, k as u64);
        let mut acc = Mat2::zeros();
        for _ in 0..n {
            let c = kronecker_effective(&draw_fading(&mut rng), [1.0, 1.0], &r).unwrap();
            acc = acc + c.h_eff.adjoint() * c.h_eff;
        }
        let est = acc.scale(1.0 / (2.0 * n as f64));
        let target = r.matrix();
        for i in 0..2 {
            for j in 0..2 {
                let e = est.get(i, j) - target.get(i, j);
                worst_ii = worst_ii.max(e.re.abs()).max(e.im.abs());
            }
        }
        // Model i: normalised column correlation against 2√χ/(χ+1).
        let gains = PropagationGains::equal_power(chi, 1.0).unwrap();
        let mut rng = substream(32, k as u64);
        let (mut c01, mut p0, mut p1) = (Complex64::new(0.0, 0.0), 0.0, 0.0);
        for _ in 0..n {
            let h = build_effective(&gains, &draw_fading(&mut rng)).h_eff;
            for row in 0..2 {
                c01 += h.get(row, 0).conj() * h.get(row, 1);
                p0 += h.get(row, 0).norm_sqr();
                p1 += h.get(row, 1).norm_sqr();
            }
        }
        let rho_emp = c01.norm() / (p0 * p1).sqrt();
        let rho_theory = 2.0 * chi.sqrt() / (chi + 1.0);
        worst_i = worst_i.max((rho_emp - rho_theory).abs());
    }
    let elapsed = start.elapsed();
    if worst_ii > 0.02 || worst_i > 0.02 {
        return Err(format!("model ii worst {worst_ii:.4}, model i worst {worst_i:.4} (limit 0.02)"));
    }
    within_budget(
        elapsed,
        Duration::from_secs(30),
        format!("model ii worst {worst_ii:.4}, model i worst {worst_i:.4} over 3 XPDs x 1e5"),
    )
}

/// 4. Mean throughput of models i and ii within 5 % at 10^4 trials.
fn model_agreement() -> Outcome {
    let params = LinkParams::default();
    let mut worst = 0.0f64;
    let mut detail = Vec::new();
    for (k, &pl_db) in [70.0, 85.0, 95.0].iter().enumerate() {
        let user = UserLink {
            gains: PropagationGains::equal_power(db(10.0), db(pl_db)).unwrap(),
            omni_gain: 1.0 / db(pl_db),
            tap_powers: vec![1.0],
            aod: AodDistribution::Isotropic,
            spacing: 0.0,
        };
        // Separate streams: the two models see independent fading.
        let a = mean_throughput(&evaluate_user(&user, Model::I, &mut substream(41, 2 * k as u64), 10_000, &params).unwrap());
        let b = mean_throughput(&evaluate_user(&user, Model::II, &mut substream(41, 2 * k as u64 + 1), 10_000, &params).unwrap());
        let rel = (a - b).abs() / a;
        worst = worst.max(rel);
        detail.push(format!("{pl_db} dB: {:.2}/{:.2} Mbps", a / 1e6, b / 1e6));
    }
    check(
        worst < 0.05,
        format!("worst relative gap {:.2}% ({})", worst * 100.0, detail.join(", ")),
        format!("worst relative gap {:.2}% >= 5% ({})", worst * 100.0, detail.join(", ")),
    )
}

/// 5. 100 users x 1000 trials: mean throughput nondecreasing in XPD and
/// gap(20→30) < gap(10→20).
fn xpd_sweep_shape() -> Outcome {
    let start = Instant::now();
    let src = "seed = 2016\ntrials_per_user = 1000\n[generator]\ncount = 100\n[sweep]\nxpd_db = [3, 5, 10, 20, 30]\n";
    let scenario = parse_scenario(src, Path::new(".")).map_err(|e| e.to_string())?;
    let report = run(&scenario, &[Model::I, Model::II]).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    let mut lines = Vec::new();
    for model in [Model::I, Model::II] {
        let means: Vec<f64> =
            report.series.iter().filter(|s| s.model == model).map(|s| s.mean_throughput).collect();
        let monotone = means.windows(2).all(|w| w[0] <= w[1]);
        let high_gap = means[4] - means[3];
        let mid_gap = means[3] - means[2];
        let mbps: Vec<String> = means.iter().map(|m| format!("{:.2}", m / 1e6)).collect();
        if !monotone || high_gap >= mid_gap {
            return Err(format!("model {model}: means [{}] Mbps, gaps 10-20 {mid_gap:.0}, 20-30 {high_gap:.0}", mbps.join(", ")));
        }
        lines.push(format!("model {model} [{}] Mbps", mbps.join(", ")));
    }
    within_budget(elapsed, Duration::from_secs(300), lines.join("; "))
}

/// 6. 0 dB XPD: R = [[1,1],[1,1]] with λ_min < 1e-12 and all model-ii samples
/// rank-deficient.
fn degenerate_physics() -> Outcome {
    let r = dualpole_corr_exact(1.0, 1.0).unwrap();
    let all_ones = Mat2::from_real(1.0, 1.0, 1.0, 1.0);
    if r.matrix() != all_ones {
        return Err(format!("R = {:?}", r.matrix()));
    }
    let min_eig = r.eigenvalues().0;
    if !(min_eig < 1e-12) {
        return Err(format!("smallest eigenvalue {min_eig:e}"));
    }
    let user = UserLink {
        gains: PropagationGains::equal_power(1.0, db(80.0)).unwrap(),
        omni_gain: 1.0 / db(80.0),
        tap_powers: vec![1.0],
        aod: AodDistribution::Isotropic,
        spacing: 0.0,
    };
    let results = evaluate_user(&user, Model::II, &mut substream(6, 0), 10_000, &LinkParams::default()).unwrap();
    let zero = results.iter().filter(|r| r.rank_deficient && r.throughput == 0.0).count();
    check(
        zero == results.len(),
        format!("lambda_min = {min_eig:e}, {zero}/{} samples rank-deficient", results.len()),
        format!("only {zero}/{} samples rank-deficient", results.len()),
    )
}

/// 7. ‖S·S − R‖_F ≤ 1e-12 and ‖WᵀH − I‖_F ≤ 1e-10 over 1000 instances each.
fn numerical_plumbing() -> Outcome {
    let mut rng = substream(7, 0);
    let mut worst_sqrt = 0.0f64;
    for _ in 0..1000 {
        let mag: f64 = rng.random();
        let phase = PI * (2.0 * rng.random::<f64>() - 1.0);
        let r = CorrelationMatrix::new(Complex64::from_polar(mag, phase)).unwrap();
        let s = matrix_sqrt_psd(&r).unwrap();
        worst_sqrt = worst_sqrt.max((s * s - r.matrix()).frobenius());
    }
    let mut worst_zf = 0.0f64;
    let mut tested = 0;
    while tested < 1000 {
        let h = draw_fading(&mut rng).h;
        // Well-conditioned instances only.
        if h.condition_number() > 1e4 {
            continue;
        }
        let w = zf_weights(&h).map_err(|e| e.to_string())?;
        worst_zf = worst_zf.max((w.transpose() * h - Mat2::identity()).frobenius());
        tested += 1;
    }
    check(
        worst_sqrt <= 1e-12 && worst_zf <= 1e-10,
        format!("sqrt residual {worst_sqrt:.1e}, ZF residual {worst_zf:.1e}"),
        format!("sqrt residual {worst_sqrt:.1e} (limit 1e-12), ZF residual {worst_zf:.1e} (limit 1e-10)"),
    )
}

/// 8. σ = 26°: Laplacian spacing exceeds isotropic spacing at every table ρ.
fn laplacian_ordering() -> Outcome {
    let lap = AodDistribution::laplacian(0.0, 26f64.to_radians()).unwrap();
    let mut pairs = Vec::new();
    for rho in TABLE_RHO {
        let q = |distribution| SpacingQuery { target_rho: rho, wavelength: 1.0, distribution };
        let d_iso = equivalent_spacing(&q(AodDistribution::Isotropic)).map_err(|e| e.to_string())?;
        let d_lap = equivalent_spacing(&q(lap)).map_err(|e| format!("rho {rho}: {e}"))?;
        if !(d_lap > d_iso) {
            return Err(format!("rho {rho}: d_lap {d_lap:.4} <= d_iso {d_iso:.4}"));
        }
        // Round trip through the forward map.
        let back = spatial_corr(d_lap, &lap, 1.0).norm();
        if (back - rho).abs() > 1e-6 {
            return Err(format!("rho {rho}: |rho(d_lap)| = {back}"));
        }
        pairs.push(format!("{d_iso:.3}/{d_lap:.3}"));
    }
    Ok(format!("d_iso/d_lap = {}", pairs.join(", ")))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("1 table rho row", table_rho_row),
        ("2 table d_iso row", table_d_iso_row),
        ("3 kronecker fidelity", kronecker_fidelity),
        ("4 model i/ii agreement", model_agreement),
        ("5 XPD sweep shape", xpd_sweep_shape),
        ("6 degenerate 0 dB XPD", degenerate_physics),
        ("7 numerical plumbing", numerical_plumbing),
        ("8 laplacian ordering", laplacian_ordering),
    ];
    let mut failed = 0;
    for (name, f) in criteria {
        match f() {
            Ok(detail) => println!("PASS criterion {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {name}: {detail}");
            }
        }
    }
    if failed > 0 {
        eprintln!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
