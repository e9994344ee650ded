mod args;

use std::io::Write;
use std::path::Path;
use std::process::ExitCode;

use clap::Parser;
use serde::Serialize;
use volpow::asymptotics::{
    clt_rate_bound, limiting_sigma, normalizer_q, rank_prediction, Estimate, Predictor, RankPrediction, Regime,
    SigmaFamily,
};
use volpow::complex::ComplexKind;
use volpow::experiment::{
    clt_sweep, compare_predictions, run_experiment, run_sandwich, to_json, write_rows_csv, ExperimentConfig,
    ExperimentReport,
};
use volpow::functionals::AdmissibleSequence;
use volpow::moments::MomentTable;
use volpow::rng::replication_seed;
use volpow::Error;

use args::{Cli, Command, Common, Format};

enum Failure {
    /// Bad flags or inconsistent inputs: exit code 2.
    Usage(String),
    /// Anything that went wrong while running: exit code 1.
    Runtime(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Config { .. } | Error::Parameter(_) | Error::Admissibility { .. } | Error::Parse { .. } => {
                Failure::Usage(e.to_string())
            }
            _ => Failure::Runtime(e.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Runtime(e.to_string())
    }
}

type Outcome = Result<bool, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Simulate(c) => simulate(&c),
        Command::Moments { common, samples } => moments(&common, samples),
        Command::Predict(c) => predict(&c),
        Command::Clt(c) => clt(&c),
        Command::Compare(c) => compare(&c),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Runtime(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(m)) => {
            eprintln!("usage error: {m}");
            ExitCode::from(2)
        }
    }
}

fn single_t(c: &Common) -> Result<f64, Failure> {
    match c.t[..] {
        [t] => Ok(t),
        [] => Err(Failure::Usage("--t is required".into())),
        _ => Err(Failure::Usage("this subcommand takes a single --t".into())),
    }
}

fn delta_for(c: &Common, t: f64) -> Result<f64, Failure> {
    match (c.delta, c.regime) {
        (Some(d), None) => Ok(d),
        (None, Some(r)) => Ok(r.delta(t)),
        _ => Err(Failure::Usage("give exactly one of --delta or --regime".into())),
    }
}

fn config(c: &Common, t: f64) -> Result<ExperimentConfig, Failure> {
    let mut cfg = ExperimentConfig::new(c.dim, t, delta_for(c, t)?, &c.spec, c.reps, c.seed);
    cfg.window = c.window.into();
    cfg.complexes = c.complex.kinds();
    cfg.moments_cache = c.moments_cache.clone();
    if let Some(r) = c.regime {
        cfg = cfg.with_regime(r);
    }
    cfg.validate()?;
    Ok(cfg)
}

fn table(c: &Common) -> Result<MomentTable, Failure> {
    Ok(match &c.moments_cache {
        Some(p) => MomentTable::load_or_default(p)?,
        None => MomentTable::new(),
    })
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(p) => std::fs::write(p, text)?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn csv_line(fields: &[String]) -> String {
    let mut s = fields.join(",");
    s.push('\n');
    s
}

fn simulate(c: &Common) -> Outcome {
    let cfg = config(c, single_t(c)?)?;
    let res = run_experiment(&cfg)?;
    let predictions = match compare_predictions(&res, &table(c)?) {
        Ok(p) => Some(p),
        Err(Error::TableMiss(key)) => {
            eprintln!("note: no predictions, constant {key} is not cached; run `volpow moments` first");
            None
        }
        Err(e) => return Err(e.into()),
    };
    for f in &res.failures {
        eprintln!("replication {} (seed {}) failed: {}", f.rep, f.seed, f.message);
    }
    let report = ExperimentReport::new(&res, predictions);
    for p in report.predictions.iter().flatten() {
        let passed = p.checks.iter().filter(|c| c.pass).count();
        eprintln!("{}: {passed}/{} prediction checks passed", p.complex.name(), p.checks.len());
    }
    match c.format {
        Format::Json => emit(c.out.as_deref(), &to_json(&report)?)?,
        Format::Csv => {
            let mut buf = Vec::new();
            write_rows_csv(&mut buf, &res)?;
            emit(c.out.as_deref(), &String::from_utf8_lossy(&buf))?;
        }
    }
    Ok(report.all_pass())
}

fn moments(c: &Common, samples: u64) -> Outcome {
    let seq = AdmissibleSequence::parse(&c.spec, c.dim)?;
    let mut table = table(c)?;
    let mut n = 0u64;
    for kind in c.complex.kinds() {
        let keys = Predictor::new(&table, kind, c.dim).required_keys(&seq);
        for key in keys {
            let e = table.ensure(&key, samples, replication_seed(c.seed, n))?;
            n += 1;
            eprintln!("{key} = {} ± {}", e.value, e.std_error);
        }
    }
    match &c.moments_cache {
        Some(p) => table.save(p)?,
        None => emit(c.out.as_deref(), &table.to_json())?,
    }
    Ok(true)
}

#[derive(Serialize)]
struct PredictInputs<'a> {
    dim: usize,
    t: f64,
    delta: f64,
    specs: &'a str,
    complex: ComplexKind,
    regime: Regime,
}

#[derive(Serialize)]
struct PredictReport<'a> {
    inputs: PredictInputs<'a>,
    expectations: Vec<Estimate>,
    covariance: Vec<Vec<f64>>,
    covariance_se: Vec<Vec<f64>>,
    normalizers: Vec<f64>,
    limit_sigma: Vec<Vec<f64>>,
    limit_family: SigmaFamily,
    rank: RankPrediction,
    rate_shapes: Vec<f64>,
    multivariate_rate_shape: f64,
}

fn rows(m: &nalgebra::DMatrix<f64>) -> Vec<Vec<f64>> {
    (0..m.nrows()).map(|i| m.row(i).iter().copied().collect()).collect()
}

fn predict(c: &Common) -> Outcome {
    let t = single_t(c)?;
    let delta = delta_for(c, t)?;
    let seq = AdmissibleSequence::parse(&c.spec, c.dim)?;
    let regime = match c.regime {
        Some(r) => r.classify(c.dim),
        None => Regime::at(t, delta, c.dim),
    };
    let table = table(c)?;
    let mut reports = Vec::new();
    for kind in c.complex.kinds() {
        let p = Predictor::new(&table, kind, c.dim);
        let expectations = seq
            .specs()
            .iter()
            .map(|s| p.expected_functional(t, delta, *s))
            .collect::<volpow::Result<Vec<_>>>()?;
        let cov = p.covariance_prediction(t, delta, &seq)?;
        let sigma = limiting_sigma(&p, regime, &seq)?;
        reports.push(PredictReport {
            inputs: PredictInputs { dim: c.dim, t, delta, specs: &c.spec, complex: kind, regime },
            expectations,
            covariance: rows(&cov.matrix),
            covariance_se: rows(&cov.std_errors),
            normalizers: seq.specs().iter().map(|s| normalizer_q(t, delta, s.k, s.alpha, c.dim)).collect(),
            limit_sigma: rows(&sigma.matrix),
            limit_family: sigma.family,
            rank: rank_prediction(regime, &seq),
            rate_shapes: seq.specs().iter().map(|s| clt_rate_bound(t, delta, s.k, c.dim)).collect(),
            multivariate_rate_shape: clt_rate_bound(t, delta, seq.k_max(), c.dim),
        });
    }
    let text = match c.format {
        Format::Json => to_json(&reports)?,
        Format::Csv => {
            let mut s = csv_line(&["complex", "quantity", "i", "j", "value"].map(String::from));
            for r in &reports {
                let name = r.inputs.complex.name();
                let mut put = |q: &str, i: usize, j: usize, v: f64| {
                    s += &csv_line(&[name.into(), q.into(), i.to_string(), j.to_string(), v.to_string()]);
                };
                for (i, e) in r.expectations.iter().enumerate() {
                    put("expectation", i, i, e.value);
                    put("normalizer", i, i, r.normalizers[i]);
                    put("rate_shape", i, i, r.rate_shapes[i]);
                }
                for (i, row) in r.covariance.iter().enumerate() {
                    for (j, v) in row.iter().enumerate() {
                        put("covariance", i, j, *v);
                        put("limit_sigma", i, j, r.limit_sigma[i][j]);
                    }
                }
            }
            s
        }
    };
    emit(c.out.as_deref(), &text)?;
    Ok(true)
}

fn clt(c: &Common) -> Outcome {
    let regime = c.regime.ok_or_else(|| Failure::Usage("clt needs --regime a,beta".into()))?;
    let ts = c.t.clone();
    if ts.is_empty() {
        return Err(Failure::Usage("--t is required".into()));
    }
    if c.complex.kinds().len() != 1 {
        return Err(Failure::Usage("clt runs one complex kind at a time".into()));
    }
    let base = config(c, ts[0])?;
    let report = clt_sweep(&base, regime, &ts)?;
    eprintln!("note: {}", report.note);
    let text = match c.format {
        Format::Json => to_json(&report)?,
        Format::Csv => {
            let seq = AdmissibleSequence::parse(&c.spec, c.dim)?;
            let mut s = csv_line(&["t", "delta", "spec", "ks", "rate_shape"].map(String::from));
            for p in &report.points {
                for (spec, ks) in seq.specs().iter().zip(&p.ks) {
                    let ks = ks.map(|x| x.to_string()).unwrap_or_default();
                    s += &csv_line(&[
                        p.t.to_string(),
                        p.delta.to_string(),
                        spec.to_string(),
                        ks,
                        p.rate_shape.to_string(),
                    ]);
                }
            }
            s
        }
    };
    emit(c.out.as_deref(), &text)?;
    Ok(true)
}

fn compare(c: &Common) -> Outcome {
    let cfg = config(c, single_t(c)?)?;
    let report = run_sandwich(&cfg)?;
    eprintln!(
        "{} faces checked, {} sandwich violations",
        report.counts.faces_checked, report.counts.violations
    );
    let text = match c.format {
        Format::Json => to_json(&report)?,
        Format::Csv => {
            let mut s = csv_line(&["complex", "scale", "k", "mean_f_k"].map(String::from));
            let r = report.scale_factor.to_string();
            for (name, scale, fv) in [
                ("cech", "1", &report.mean_f_cech),
                ("rips", "1", &report.mean_f_rips),
                ("cech", r.as_str(), &report.mean_f_cech_scaled),
            ] {
                for (k, v) in fv.iter().enumerate() {
                    s += &csv_line(&[name.into(), scale.into(), k.to_string(), v.to_string()]);
                }
            }
            s
        }
    };
    emit(c.out.as_deref(), &text)?;
    Ok(report.counts.violations == 0)
}
