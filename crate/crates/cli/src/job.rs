//! One scoring or scribble job: decode, run the core, write outputs.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, Context};
use bleedmeter_core::imaging::{rgb_to_lab, RgbImage};
use bleedmeter_core::metrics::{cdr_detail, s_diff, score_pair, KernelSpec, MetricsReport, ScoreParams, SlicParams};
use bleedmeter_core::scribble::{generate_pseudo_scribble, Scribble, ScribbleParams};
use bleedmeter_core::Error as CoreError;

use crate::io::{load_mask, load_rgb, resize_mask, resize_rgb, save_mask, save_rgb};
use crate::overlay;
use crate::profile::Profile;
use crate::report::{self, ScribbleOrigin};

/// Settings shared by every job of an invocation.
#[derive(Debug, Clone)]
pub struct Settings {
    pub profile: Profile,
    pub width_range: (u32, u32),
    pub region_radius: usize,
    pub resize: bool,
    pub overlays: bool,
    pub slic: SlicParams,
}

#[derive(Debug, Clone)]
pub struct JobSpec {
    pub gt: PathBuf,
    pub pred: Option<PathBuf>,
    pub init: Option<PathBuf>,
    pub scribble: Option<PathBuf>,
    pub kernel: KernelSpec,
    pub seed: u64,
    pub out_dir: PathBuf,
}

#[derive(Debug)]
pub enum JobError {
    /// I/O, decoding or usage problems (exit 1).
    Failed(anyhow::Error),
    /// Nothing to measure: no edges or no bleeding (exit 2).
    Degenerate(String),
}

impl JobError {
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Failed(_) => 1,
            Self::Degenerate(_) => 2,
        }
    }
}

impl std::fmt::Display for JobError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::Failed(e) => write!(f, "{e:#}"),
            Self::Degenerate(m) => f.write_str(m),
        }
    }
}

impl From<anyhow::Error> for JobError {
    fn from(e: anyhow::Error) -> Self {
        Self::Failed(e)
    }
}

impl From<CoreError> for JobError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::NoEdges | CoreError::NoBleedingEdge | CoreError::DegenerateInput => {
                Self::Degenerate(e.to_string())
            }
            other => Self::Failed(other.into()),
        }
    }
}

type JobResult<T> = Result<T, JobError>;

fn load(path: &Path, resize: bool) -> anyhow::Result<RgbImage> {
    let img = load_rgb(path)?;
    Ok(if resize { resize_rgb(&img) } else { img })
}

fn same_dims(a: &RgbImage, b: &RgbImage, what: &str) -> anyhow::Result<()> {
    if a.dims() != b.dims() {
        return Err(anyhow!(
            "{what} is {}x{} but the ground truth is {}x{}",
            b.width(),
            b.height(),
            a.width(),
            a.height()
        ));
    }
    Ok(())
}

fn write(path: &Path, bytes: &[u8]) -> anyhow::Result<()> {
    fs::write(path, bytes).with_context(|| format!("cannot write {}", path.display()))
}

impl Settings {
    pub fn scribble_params(&self, seed: u64) -> ScribbleParams {
        ScribbleParams {
            canny_gt: self.profile.canny(),
            width_range: self.width_range,
            seed,
            ..Default::default()
        }
    }
}

fn skeleton_path(scribble: &Path) -> PathBuf {
    let stem = scribble.file_stem().and_then(|s| s.to_str()).unwrap_or("scribble");
    scribble.with_file_name(format!("{stem}_skeleton.png"))
}

/// Writes `scribble.png`, `scribble_skeleton.png` and `scribble.json` into `dir`.
pub fn write_scribble(dir: &Path, s: &Scribble, params: &ScribbleParams) -> anyhow::Result<()> {
    fs::create_dir_all(dir).with_context(|| format!("cannot create {}", dir.display()))?;
    save_mask(&s.mask, &dir.join("scribble.png"))?;
    save_mask(&s.skeleton, &dir.join("scribble_skeleton.png"))?;
    write(
        &dir.join("scribble.json"),
        &report::to_bytes(&report::scribble_sidecar(s, params)),
    )
}

/// Reads a scribble PNG plus its optional sidecar and skeleton.
pub fn read_scribble(path: &Path, resize: bool) -> anyhow::Result<Scribble> {
    let fit = |m| if resize { resize_mask(&m) } else { m };
    let mask = fit(load_mask(path)?);
    let sidecar = path.with_extension("json");
    let width = if sidecar.exists() {
        let v: serde_json::Value = serde_json::from_slice(
            &fs::read(&sidecar).with_context(|| format!("cannot read {}", sidecar.display()))?,
        )
        .with_context(|| format!("malformed sidecar {}", sidecar.display()))?;
        v["width"].as_u64().unwrap_or(1) as u32
    } else {
        1
    };
    let mut s = Scribble::from_mask(mask, width).with_context(|| format!("scribble {}", path.display()))?;
    let skel = skeleton_path(path);
    if skel.exists() {
        let skeleton = fit(load_mask(&skel)?);
        if skeleton.dims() == s.mask.dims() && !skeleton.is_empty() {
            s.skeleton = skeleton;
        }
    }
    Ok(s)
}

pub fn run_scribble(job: &JobSpec, settings: &Settings) -> JobResult<Scribble> {
    let init_path = job
        .init
        .as_ref()
        .ok_or_else(|| JobError::Failed(anyhow!("--init is required to synthesize a scribble")))?;
    let gt = load(&job.gt, settings.resize)?;
    let init = load(init_path, settings.resize)?;
    same_dims(&gt, &init, "init")?;
    let params = settings.scribble_params(job.seed);
    let s = generate_pseudo_scribble(&rgb_to_lab(&gt), &rgb_to_lab(&init), &params)?;
    write_scribble(&job.out_dir, &s, &params)?;
    Ok(s)
}

pub struct Scored {
    pub report: MetricsReport,
    pub json: Vec<u8>,
}

pub fn run_score(job: &JobSpec, settings: &Settings) -> JobResult<Scored> {
    let pred_path = job
        .pred
        .as_ref()
        .ok_or_else(|| JobError::Failed(anyhow!("a prediction image is required")))?;
    let gt = load(&job.gt, settings.resize)?;
    let pred = load(pred_path, settings.resize)?;
    same_dims(&gt, &pred, "prediction")?;
    let init = match &job.init {
        Some(p) => {
            let img = load(p, settings.resize)?;
            same_dims(&gt, &img, "init")?;
            Some(img)
        }
        None => None,
    };

    let scribble_params = settings.scribble_params(job.seed);
    let mut seed = None;
    let (scribble, origin_reason) = match (&job.scribble, &init) {
        (Some(path), _) => {
            let s = read_scribble(path, settings.resize).map_err(JobError::Failed)?;
            if s.mask.dims() != gt.dims() {
                return Err(JobError::Failed(anyhow!("scribble {} does not match the image size", path.display())));
            }
            (Some(s), None)
        }
        (None, Some(init)) => {
            seed = Some(job.seed);
            match generate_pseudo_scribble(&rgb_to_lab(&gt), &rgb_to_lab(init), &scribble_params) {
                Ok(s) => (Some(s), None),
                Err(CoreError::NoBleedingEdge) => (None, Some(CoreError::NoBleedingEdge.to_string())),
                Err(e) => return Err(e.into()),
            }
        }
        (None, None) => (None, Some("no scribble or init image given".to_string())),
    };

    let params = ScoreParams {
        kernel: job.kernel,
        canny: settings.profile.canny(),
        slic: settings.slic,
        region_radius: settings.region_radius,
        seed,
    };
    let report = score_pair(&pred, &gt, init.as_ref(), scribble.as_ref(), &params)?;
    let origin = match (&scribble, &job.scribble) {
        (Some(_), Some(path)) => ScribbleOrigin::File {
            path: path.display().to_string(),
            width: scribble.as_ref().map_or(1, |s| s.width),
        },
        (Some(s), None) => ScribbleOrigin::Generated {
            scribble: s,
            params: &scribble_params,
        },
        (None, _) => ScribbleOrigin::Unavailable {
            reason: origin_reason.unwrap_or_default(),
        },
    };
    let json = report::to_bytes(&report::report_value(
        &report,
        settings.profile.name(),
        settings.resize,
        &origin,
    ));

    fs::create_dir_all(&job.out_dir).with_context(|| format!("cannot create {}", job.out_dir.display()))?;
    write(&job.out_dir.join("report.json"), &json)?;
    if let (Some(s), None) = (&scribble, &job.scribble) {
        write_scribble(&job.out_dir, s, &scribble_params)?;
    }
    if settings.overlays {
        write_overlays(&job.out_dir, &gt, &pred, init.as_ref(), scribble.as_ref(), &params)?;
    }
    Ok(Scored { report, json })
}

fn write_overlays(
    dir: &Path,
    gt: &RgbImage,
    pred: &RgbImage,
    init: Option<&RgbImage>,
    scribble: Option<&Scribble>,
    params: &ScoreParams,
) -> JobResult<()> {
    if let Some(s) = scribble {
        save_rgb(&overlay::scribble_overlay(pred, s), &dir.join("scribble_overlay.png"))?;
    }
    let pred_lab = rgb_to_lab(pred);
    if let Some(init) = init {
        let (da, db) = s_diff(&pred_lab, &rgb_to_lab(init))?;
        save_rgb(&overlay::sdiff_heatmap(&da), &dir.join("sdiff_a.png"))?;
        save_rgb(&overlay::sdiff_heatmap(&db), &dir.join("sdiff_b.png"))?;
    }
    if params.kernel != KernelSpec::Full {
        let b = cdr_detail(&rgb_to_lab(gt), &pred_lab, params.kernel, &params.canny, &params.slic)?;
        save_rgb(&overlay::cdr_markers(gt, &b), &dir.join("cdr_edges.png"))?;
    }
    Ok(())
}
