//! Manifest-driven batch scoring.

use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context};
use bleedmeter_core::metrics::{KernelSpec, Psnr};
use rayon::prelude::*;

use crate::job::{run_score, JobSpec, Settings};
use crate::report::{fmt_num, psnr_text};

const COLUMNS: [&str; 6] = ["gt", "pred", "init", "scribble", "kernel", "seed"];

/// Parses a CSV manifest. Relative paths resolve against the manifest's directory.
pub fn read_manifest(path: &Path, default_kernel: KernelSpec, base_seed: u64, out_dir: &Path) -> anyhow::Result<Vec<JobSpec>> {
    let mut rdr = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_path(path)
        .with_context(|| format!("cannot read manifest {}", path.display()))?;
    let headers = rdr.headers()?.clone();
    let col = |name: &str| headers.iter().position(|h| h == name);
    for h in headers.iter() {
        if !COLUMNS.contains(&h) {
            bail!("manifest has unknown column {h:?}");
        }
    }
    let (gt_col, pred_col) = match (col("gt"), col("pred")) {
        (Some(g), Some(p)) => (g, p),
        _ => bail!("manifest header must contain gt and pred columns"),
    };
    let base = path.parent().unwrap_or(Path::new(""));
    let resolve = |s: &str| -> Option<PathBuf> { (!s.is_empty()).then(|| base.join(s)) };

    let mut jobs = Vec::new();
    for (i, rec) in rdr.records().enumerate() {
        let rec = rec.with_context(|| format!("manifest row {i}"))?;
        let field = |c: Option<usize>| c.and_then(|c| rec.get(c)).unwrap_or("");
        let gt = resolve(field(Some(gt_col))).ok_or_else(|| anyhow!("manifest row {i}: empty gt"))?;
        let pred = resolve(field(Some(pred_col))).ok_or_else(|| anyhow!("manifest row {i}: empty pred"))?;
        let kernel = match field(col("kernel")) {
            "" => default_kernel,
            k => k.parse().map_err(|e| anyhow!("manifest row {i}: {e}"))?,
        };
        let seed = match field(col("seed")) {
            "" => base_seed.wrapping_add(i as u64),
            s => s.parse().with_context(|| format!("manifest row {i}: bad seed {s:?}"))?,
        };
        jobs.push(JobSpec {
            gt,
            pred: Some(pred),
            init: resolve(field(col("init"))),
            scribble: resolve(field(col("scribble"))),
            kernel,
            seed,
            out_dir: out_dir.join(format!("row_{i:04}")),
        });
    }
    if jobs.is_empty() {
        bail!("manifest {} has no rows", path.display());
    }
    Ok(jobs)
}

struct Row {
    psnr_global: Option<Psnr>,
    psnr_local: Option<Psnr>,
    values: [Option<f64>; 3],
    error: Option<String>,
}

fn db(p: Option<Psnr>) -> Option<f64> {
    p.and_then(|p| p.db())
}

fn mean(xs: impl Iterator<Item = Option<f64>>) -> String {
    let (sum, n) = xs.flatten().fold((0.0, 0usize), |(s, n), x| (s + x, n + 1));
    if n == 0 { String::new() } else { fmt_num(sum / n as f64) }
}

/// Runs every job on a pool of `workers` threads and writes `summary.csv`.
/// Returns the number of rows that succeeded.
pub fn run_batch(jobs: &[JobSpec], settings: &Settings, workers: usize, out_dir: &Path) -> anyhow::Result<usize> {
    std::fs::create_dir_all(out_dir).with_context(|| format!("cannot create {}", out_dir.display()))?;
    let pool = rayon::ThreadPoolBuilder::new().num_threads(workers.max(1)).build()?;
    let rows: Vec<Row> = pool.install(|| {
        jobs.par_iter()
            .map(|job| match run_score(job, settings) {
                Ok(s) => Row {
                    psnr_global: Some(s.report.psnr_global),
                    psnr_local: s.report.psnr_local,
                    values: [s.report.cdr, s.report.edge_fidelity, s.report.consistency],
                    error: None,
                },
                Err(e) => Row {
                    psnr_global: None,
                    psnr_local: None,
                    values: [None; 3],
                    error: Some(e.to_string()),
                },
            })
            .collect()
    });

    let path = out_dir.join("summary.csv");
    let mut w = csv::Writer::from_path(&path).with_context(|| format!("cannot write {}", path.display()))?;
    w.write_record([
        "row", "status", "gt", "pred", "psnr_global_db", "psnr_local_db", "cdr", "edge_fidelity", "consistency", "error",
    ])?;
    let opt = |v: Option<f64>| v.map(fmt_num).unwrap_or_default();
    let opt_psnr = |p: Option<Psnr>| p.map(psnr_text).unwrap_or_default();
    for (i, (job, r)) in jobs.iter().zip(&rows).enumerate() {
        let pred = job.pred.as_deref().map(|p| p.display().to_string()).unwrap_or_default();
        w.write_record([
            i.to_string(),
            if r.error.is_some() { "error" } else { "ok" }.to_string(),
            job.gt.display().to_string(),
            pred,
            opt_psnr(r.psnr_global),
            opt_psnr(r.psnr_local),
            opt(r.values[0]),
            opt(r.values[1]),
            opt(r.values[2]),
            r.error.clone().unwrap_or_default(),
        ])?;
    }
    let ok: Vec<&Row> = rows.iter().filter(|r| r.error.is_none()).collect();
    w.write_record([
        "mean".to_string(),
        format!("{}/{}", ok.len(), rows.len()),
        String::new(),
        String::new(),
        mean(ok.iter().map(|r| db(r.psnr_global))),
        mean(ok.iter().map(|r| db(r.psnr_local))),
        mean(ok.iter().map(|r| r.values[0])),
        mean(ok.iter().map(|r| r.values[1])),
        mean(ok.iter().map(|r| r.values[2])),
        String::new(),
    ])?;
    w.flush()?;
    Ok(ok.len())
}
