//! JSON encodings: metrics reports and scribble sidecars.
//!
//! Keys come out sorted (serde_json's default map) and every float is rounded
//! to 9 significant digits, so equal inputs give byte-equal files.

use bleedmeter_core::imaging::CannyParams;
use bleedmeter_core::metrics::{KernelSpec, MetricsReport, Psnr, SlicParams};
use bleedmeter_core::scribble::{Scribble, ScribbleParams};
use serde_json::{json, Value};

pub fn round_sig(v: f64) -> f64 {
    if !v.is_finite() || v == 0.0 {
        return v;
    }
    format!("{v:.8e}").parse().expect("formatted float parses")
}

pub fn num(v: f64) -> Value {
    serde_json::Number::from_f64(round_sig(v)).map_or(Value::Null, Value::Number)
}

/// Text form used in CSV cells.
pub fn fmt_num(v: f64) -> String {
    round_sig(v).to_string()
}

pub fn psnr_value(p: Psnr) -> Value {
    match p {
        Psnr::Db(v) => num(v),
        Psnr::Identical => Value::String("identical".into()),
    }
}

pub fn psnr_text(p: Psnr) -> String {
    match p {
        Psnr::Db(v) => fmt_num(v),
        Psnr::Identical => "identical".into(),
    }
}

pub fn kernel_value(k: KernelSpec) -> Value {
    match k {
        KernelSpec::Size(s) => json!(s),
        KernelSpec::Full => json!("full"),
    }
}

pub fn canny_value(c: &CannyParams) -> Value {
    json!({
        "sigma": num(c.sigma),
        "th_high": num(c.th_high),
        "th_low": num(c.th_low),
        "th_gap": num(c.th_gap),
    })
}

pub fn slic_value(s: &SlicParams) -> Value {
    json!({
        "n_clusters": s.n_clusters,
        "compactness": num(s.compactness),
        "sigma": num(s.sigma),
        "max_iterations": s.max_iterations,
    })
}

pub fn scribble_params_value(p: &ScribbleParams) -> Value {
    json!({
        "canny_gt": canny_value(&p.canny_gt),
        "canny_init": canny_value(&p.canny_init()),
        "width_range": [p.width_range.0, p.width_range.1],
        "min_component_length": p.min_component_length,
        "init_edge_dilation_radius": p.init_edge_dilation_radius,
    })
}

/// Sidecar written next to a scribble PNG.
pub fn scribble_sidecar(s: &Scribble, params: &ScribbleParams) -> Value {
    json!({
        "width": s.width,
        "seed": params.seed,
        "source_component_id": s.source_component_id,
        "params": scribble_params_value(params),
    })
}

/// Where the scribble of a report came from.
pub enum ScribbleOrigin<'a> {
    File { path: String, width: u32 },
    Generated { scribble: &'a Scribble, params: &'a ScribbleParams },
    Unavailable { reason: String },
}

fn origin_value(o: &ScribbleOrigin<'_>) -> Value {
    match o {
        ScribbleOrigin::File { path, width } => json!({"source": "file", "path": path, "width": width}),
        ScribbleOrigin::Generated { scribble, params } => json!({
            "source": "generated",
            "width": scribble.width,
            "source_component_id": scribble.source_component_id,
            "params": scribble_params_value(params),
        }),
        ScribbleOrigin::Unavailable { reason } => json!({"source": "none", "reason": reason}),
    }
}

fn opt(v: Option<f64>) -> Value {
    v.map_or(Value::Null, num)
}

pub fn report_value(r: &MetricsReport, profile: &str, resized: bool, origin: &ScribbleOrigin<'_>) -> Value {
    json!({
        "psnr_global_db": psnr_value(r.psnr_global),
        "psnr_local_db": r.psnr_local.map_or(Value::Null, psnr_value),
        "cdr": opt(r.cdr),
        "edge_fidelity": opt(r.edge_fidelity),
        "consistency": opt(r.consistency),
        "kernel": kernel_value(r.kernel),
        "skipped": r.skipped,
        "seed": r.params.seed,
        "params": {
            "profile": profile,
            "canny": canny_value(&r.params.canny),
            "slic": slic_value(&r.params.slic),
            "region_radius": r.params.region_radius,
            "psnr_space": "rgb8",
            "local_pooling": "union_of_windows",
            "resize_256": resized,
            "scribble": origin_value(origin),
        },
    })
}

pub fn to_bytes(v: &Value) -> Vec<u8> {
    let mut out = serde_json::to_vec_pretty(v).expect("json values serialize");
    out.push(b'\n');
    out
}
