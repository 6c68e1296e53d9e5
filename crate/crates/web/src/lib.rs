//! Browser bindings: circuit generation, walk spectra and multiplexor
//! expansion, each returning JSON.

use serde::Serialize;
use wasm_bindgen::prelude::*;

use qsann::densesim::{eig_unitary, to_matrix};
use qsann::markov::{boltzmann, metropolis, spectral, AnnealingSchedule, ProblemSpec};
use qsann::mux_expander::expand_file;
use qsann::qsa_codegen::{emit_full, log_text, GeneratorConfig, PeParams};
use qsann::seo_ir::{write_english, write_picture};
use qsann::szegedy::{emit_w, WalkLayout};
use qsann::verify::expected_walk_phases;

/// Generated files are cut to this many lines for display.
const MAX_LINES: usize = 400;

#[derive(Serialize)]
struct Generated {
    log: String,
    english: String,
    picture: String,
    num_qubits: usize,
    num_elementary_ops: u64,
    num_lines: usize,
    truncated: bool,
}

#[derive(Serialize)]
struct Spectrum {
    eigenvalues: Vec<f64>,
    gap: f64,
    expected_phases: Vec<f64>,
    simulated_phases: Vec<f64>,
}

#[derive(Serialize)]
struct Expanded {
    log: String,
    english: String,
    picture: String,
}

fn head(text: &str) -> (String, bool) {
    let mut lines = text.lines();
    let mut out: String = lines
        .by_ref()
        .take(MAX_LINES)
        .flat_map(|l| [l, "\n"])
        .collect();
    let truncated = lines.next().is_some();
    if truncated {
        out.push_str("...\n");
    }
    (out, truncated)
}

fn json<T: Serialize>(v: &T) -> Result<String, String> {
    serde_json::to_string(v).map_err(|e| e.to_string())
}

#[allow(clippy::too_many_arguments)]
pub fn generate_json(
    nb: usize,
    a: usize,
    c: usize,
    d_f: usize,
    num_betas: usize,
    delta_beta: f64,
    prep: bool,
    conjugate_q: bool,
) -> Result<String, String> {
    if !(1..=4).contains(&nb) {
        return Err("the demo supports 1 to 4 state bits".into());
    }
    if d_f == 0 {
        return Err("Grover Depth must be ≥ 1".into());
    }
    let spec = ProblemSpec::qusann_default(nb, 3.0).map_err(|e| e.to_string())?;
    let schedule = AnnealingSchedule::new(delta_beta, num_betas).map_err(|e| e.to_string())?;
    let mut cfg =
        GeneratorConfig::new(spec, PeParams { a, c, d_f }, schedule).map_err(|e| e.to_string())?;
    cfg.file_prefix = "web".into();
    cfg.prep = prep;
    cfg.conjugate_q = conjugate_q;
    let g = emit_full(&cfg).map_err(|e| e.to_string())?;
    let (english, truncated) = head(&write_english(&g.circuit));
    let (picture, _) = head(&write_picture(&g.circuit));
    json(&Generated {
        log: log_text(&cfg, &g),
        english,
        picture,
        num_qubits: g.num_qubits,
        num_elementary_ops: g.num_elementary_ops,
        num_lines: g.circuit.len(),
        truncated,
    })
}

pub fn walk_spectrum_json(nb: usize, beta: f64) -> Result<String, String> {
    if !(1..=3).contains(&nb) {
        return Err("the spectrum view supports 1 to 3 state bits".into());
    }
    let spec = ProblemSpec::qusann_default(nb, 3.0).map_err(|e| e.to_string())?;
    let m = metropolis(&spec, beta).map_err(|e| e.to_string())?;
    let data = spectral(&m, &boltzmann(&spec, beta)).map_err(|e| e.to_string())?;
    let w = to_matrix(&emit_w(&m, &WalkLayout::new(nb))).map_err(|e| e.to_string())?;
    let simulated_phases = eig_unitary(&w).map_err(|e| e.to_string())?;
    let mut expected_phases = expected_walk_phases(&data);
    expected_phases.sort_by(f64::total_cmp);
    json(&Spectrum {
        gap: data.gap,
        eigenvalues: data.eigenvalues,
        expected_phases,
        simulated_phases,
    })
}

pub fn expand_json(english: &str, picture: &str) -> Result<String, String> {
    let out = expand_file(english, picture).map_err(|e| e.to_string())?;
    json(&Expanded {
        log: out.log_text("input", "output"),
        english: out.english,
        picture: out.picture,
    })
}

#[wasm_bindgen]
#[allow(clippy::too_many_arguments)]
pub fn generate(
    nb: usize,
    a: usize,
    c: usize,
    d_f: usize,
    num_betas: usize,
    delta_beta: f64,
    prep: bool,
    conjugate_q: bool,
) -> Result<String, JsValue> {
    generate_json(nb, a, c, d_f, num_betas, delta_beta, prep, conjugate_q)
        .map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn walk_spectrum(nb: usize, beta: f64) -> Result<String, JsValue> {
    walk_spectrum_json(nb, beta).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn expand(english: &str, picture: &str) -> Result<String, JsValue> {
    expand_json(english, picture).map_err(|e| JsValue::from_str(&e))
}
