//! One function per subcommand; each returns the text it writes.

use serde::Serialize;

use qwalk_core::analysis::{self, SweepGrid, SweepResult};
use qwalk_core::kspace::{
    asymptotic_moments, characteristic, closed_delta, extract_f, ProfileClass,
};
use qwalk_core::lattice::{build_initial, position_distribution, Evolution};
use qwalk_core::{entropy_from_delta, spin_from_angles, BlochAngles};

use crate::config::{FormatArg, ModeArg, RunConfig};
use crate::error::CliResult;
use crate::output::{emit, json, num, Csv};

fn angles(cfg: &RunConfig) -> CliResult<BlochAngles> {
    Ok(BlochAngles::new(cfg.alpha, cfg.beta)?)
}

#[derive(Serialize)]
struct StepRow {
    t: u64,
    #[serde(rename = "A")]
    a: f64,
    #[serde(rename = "B_re")]
    b_re: f64,
    #[serde(rename = "B_im")]
    b_im: f64,
    entropy: f64,
}

pub fn evolve(cfg: &RunConfig) -> CliResult<()> {
    let spin = spin_from_angles(angles(cfg)?);
    let initial = build_initial(cfg.initial_profile(), spin)?;
    let mut run = Evolution::new(&initial, &cfg.coin_kind().operator(), cfg.steps, cfg.max_window)?;
    let mut rows = Vec::with_capacity(cfg.steps as usize + 1);
    loop {
        let r = run.record()?;
        rows.push(StepRow {
            t: r.t,
            a: r.moments.a,
            b_re: r.moments.b.re,
            b_im: r.moments.b.im,
            entropy: r.entropy,
        });
        if run.t() == initial.t + cfg.steps {
            break;
        }
        run.advance()?;
    }
    let dist = position_distribution(&run.state());

    let (records, dist_text) = match cfg.format {
        FormatArg::Csv => {
            let mut c = Csv::new(&["t", "A", "B_re", "B_im", "entropy"]);
            for r in &rows {
                c.row(&[r.t.to_string(), num(r.a), num(r.b_re), num(r.b_im), num(r.entropy)]);
            }
            let mut d = Csv::new(&["j", "prob"]);
            for (j, p) in &dist {
                d.row(&[j.to_string(), num(*p)]);
            }
            (c.into_string(), d.into_string())
        }
        FormatArg::Json => {
            #[derive(Serialize)]
            struct Site {
                j: i64,
                prob: f64,
            }
            let sites: Vec<Site> = dist.iter().map(|&(j, prob)| Site { j, prob }).collect();
            (json(&rows), json(&sites))
        }
    };
    emit(cfg.out.as_deref(), &records)?;
    match &cfg.out {
        Some(path) => emit(Some(&format!("{path}.dist")), &dist_text),
        None => {
            eprintln!("evolve: no --out given, position distribution not written");
            Ok(())
        }
    }
}

#[derive(Serialize)]
struct AsymptoticRecord {
    method: &'static str,
    #[serde(rename = "A_bar", skip_serializing_if = "Option::is_none")]
    a_bar: Option<f64>,
    #[serde(rename = "B_bar_re", skip_serializing_if = "Option::is_none")]
    b_bar_re: Option<f64>,
    #[serde(rename = "B_bar_im", skip_serializing_if = "Option::is_none")]
    b_bar_im: Option<f64>,
    delta: f64,
    entropy: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    f: Option<f64>,
}

#[derive(Serialize)]
struct AbsDiff {
    delta: f64,
    entropy: f64,
}

#[derive(Serialize)]
struct AsymptoticReport {
    results: [AsymptoticRecord; 2],
    abs_diff: AbsDiff,
}

pub fn asymptotic(cfg: &RunConfig) -> CliResult<()> {
    let ang = angles(cfg)?;
    let coin = cfg.coin_kind();
    let profile = cfg.initial_profile();
    let quad = cfg.quadrature();

    let m = asymptotic_moments(profile, spin_from_angles(ang), coin, &quad)?;
    let q = characteristic(&m)?;
    let (class, f) = if profile.is_local() {
        (ProfileClass::Local, None)
    } else {
        let f = extract_f(coin, profile, &quad)?.f;
        (ProfileClass::Delocalized { f }, Some(f))
    };
    let closed = closed_delta(coin, class, ang)?;
    let closed_entropy = entropy_from_delta(closed)?;

    let report = AsymptoticReport {
        results: [
            AsymptoticRecord {
                method: "quadrature",
                a_bar: Some(m.a_bar),
                b_bar_re: Some(m.b_bar.re),
                b_bar_im: Some(m.b_bar.im),
                delta: q.delta,
                entropy: q.entropy,
                f,
            },
            AsymptoticRecord {
                method: "closed_form",
                a_bar: None,
                b_bar_re: None,
                b_bar_im: None,
                delta: closed,
                entropy: closed_entropy,
                f,
            },
        ],
        abs_diff: AbsDiff {
            delta: (q.delta - closed).abs(),
            entropy: (q.entropy - closed_entropy).abs(),
        },
    };
    let text = match cfg.format {
        FormatArg::Json => json(&report),
        FormatArg::Csv => {
            let opt = |x: Option<f64>| x.map(num).unwrap_or_default();
            let mut c = Csv::new(&["method", "A_bar", "B_bar_re", "B_bar_im", "delta", "entropy", "f"]);
            for r in &report.results {
                c.row(&[
                    r.method.to_string(),
                    opt(r.a_bar),
                    opt(r.b_bar_re),
                    opt(r.b_bar_im),
                    num(r.delta),
                    num(r.entropy),
                    opt(r.f),
                ]);
            }
            c.into_string()
        }
    };
    emit(cfg.out.as_deref(), &text)
}

fn stats_line(r: &SweepResult) -> String {
    format!(
        "mean={},min={},max={},argmin=({};{}),argmax=({};{})",
        num(r.mean),
        num(r.min),
        num(r.max),
        num(r.argmin.0),
        num(r.argmin.1),
        num(r.argmax.0),
        num(r.argmax.1)
    )
}

pub fn sweep(cfg: &RunConfig) -> CliResult<()> {
    let grid = SweepGrid::with_step(cfg.grid_step)?;
    let coin = cfg.coin_kind();
    let profile = cfg.initial_profile();
    eprintln!("sweep: {} grid points", grid.len());
    let r = match cfg.mode {
        ModeArg::Asymptotic => analysis::sweep_asymptotic(coin, profile, &grid, &cfg.quadrature())?,
        ModeArg::Simulated => {
            analysis::sweep_simulated(coin, profile, &grid, cfg.steps, cfg.max_window)?
        }
    };
    let text = match cfg.format {
        FormatArg::Csv => {
            let mut c = Csv::new(&["alpha", "beta", "entropy"]);
            for (i, (a, b)) in grid.points().enumerate() {
                c.row(&[num(a), num(b), num(r.values[i])]);
            }
            c.comment(&stats_line(&r));
            c.into_string()
        }
        FormatArg::Json => {
            #[derive(Serialize)]
            struct Point {
                alpha: f64,
                beta: f64,
                entropy: f64,
            }
            #[derive(Serialize)]
            struct Report {
                points: Vec<Point>,
                mean: f64,
                min: f64,
                max: f64,
                argmin: (f64, f64),
                argmax: (f64, f64),
            }
            json(&Report {
                points: grid
                    .points()
                    .zip(&r.values)
                    .map(|((alpha, beta), &entropy)| Point { alpha, beta, entropy })
                    .collect(),
                mean: r.mean,
                min: r.min,
                max: r.max,
                argmin: r.argmin,
                argmax: r.argmax,
            })
        }
    };
    emit(cfg.out.as_deref(), &text)
}

pub fn compare(cfg: &RunConfig) -> CliResult<()> {
    let grid = SweepGrid::with_step(cfg.grid_step)?;
    let mut reports = Vec::with_capacity(cfg.sigmas.len());
    for &s in &cfg.sigmas {
        let r = analysis::compare(
            cfg.coin_kind(),
            cfg.family(),
            &[s],
            &grid,
            cfg.steps,
            &cfg.quadrature(),
            cfg.max_window,
        )?;
        eprintln!("compare: sigma0 = {s} done, delta = {:.4}%", r[0].delta_pct);
        reports.extend(r);
    }
    let text = match cfg.format {
        FormatArg::Csv => {
            let mut c = Csv::new(&["sigma0", "mean_sim", "mean_asym", "delta_pct"]);
            for r in &reports {
                c.row(&[num(r.sigma0), num(r.mean_simulated), num(r.mean_asymptotic), num(r.delta_pct)]);
            }
            c.into_string()
        }
        FormatArg::Json => {
            #[derive(Serialize)]
            struct Row {
                sigma0: f64,
                mean_sim: f64,
                mean_asym: f64,
                delta_pct: f64,
            }
            json(
                &reports
                    .iter()
                    .map(|r| Row {
                        sigma0: r.sigma0,
                        mean_sim: r.mean_simulated,
                        mean_asym: r.mean_asymptotic,
                        delta_pct: r.delta_pct,
                    })
                    .collect::<Vec<_>>(),
            )
        }
    };
    emit(cfg.out.as_deref(), &text)
}

pub fn fit(cfg: &RunConfig) -> CliResult<()> {
    let grid = SweepGrid::with_step(cfg.grid_step)?;
    let fit = analysis::fit_decay(
        cfg.coin_kind(),
        cfg.family(),
        &cfg.sigmas,
        &grid,
        cfg.decay_quantity(),
        &cfg.quadrature(),
    )?;
    #[derive(Serialize)]
    struct Report {
        amplitude: f64,
        exponent: f64,
        offset: f64,
        rms_residual: f64,
    }
    let report = Report {
        amplitude: fit.amplitude,
        exponent: fit.exponent,
        offset: fit.offset,
        rms_residual: fit.rms_residual,
    };
    let text = match cfg.format {
        FormatArg::Json => json(&report),
        FormatArg::Csv => {
            let mut c = Csv::new(&["amplitude", "exponent", "offset", "rms_residual"]);
            c.row(&[num(report.amplitude), num(report.exponent), num(report.offset), num(report.rms_residual)]);
            c.into_string()
        }
    };
    emit(cfg.out.as_deref(), &text)
}
