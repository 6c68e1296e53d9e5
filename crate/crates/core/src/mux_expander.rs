//! Exact expansion of `MP_Y` multiplexors into `ROTY` and CNOT.
//!
//! A k-control y-multiplexor `exp(i Σ_b θ_b σy P_b)` becomes `2^k` pairs
//! `ROTY(2φ_i)`, `SIGX` controlled by one mux bit, walking the reflected Gray
//! code `g(i)`, with
//!
//! ```text
//! φ_i = 2^{−k} Σ_b (−1)^{popcount(b & g(i))} θ_b
//! ```
//!
//! Each ROTY is half-angle, so it carries `2φ_i`. The last CNOT flips the
//! top Gray bit back, which restores every control.

use thiserror::Error;

use crate::seo_ir::{
    parse_english, picture_width_qubits, write_english, write_picture, Circuit, Control, Gate,
    IrError, Operation, ParseError,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ExpandError {
    #[error("multiplexor with {controls} controls carries {angles} angles")]
    AngleCount { controls: usize, angles: usize },
    #[error("English file: {0}")]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Ir(#[from] IrError),
    #[error("English file has {english} lines but Picture file has {picture}")]
    LineCount { english: usize, picture: usize },
}

fn gray(i: usize) -> usize {
    i ^ (i >> 1)
}

/// Expands one operation; non-multiplexors are returned unchanged.
pub fn expand_mux(op: &Operation) -> Result<Vec<Operation>, ExpandError> {
    let Gate::MpY {
        target,
        mux,
        angles,
    } = &op.gate
    else {
        return Ok(vec![op.clone()]);
    };
    let k = mux.len();
    if angles.len() != 1 << k {
        return Err(ExpandError::AngleCount {
            controls: k,
            angles: angles.len(),
        });
    }
    let mut bit_of_name = vec![0; k];
    for m in mux {
        bit_of_name[m.name] = m.bit;
    }
    let n = 1usize << k;
    let scale = 1.0 / n as f64;
    let mut out = Vec::with_capacity(2 * n);
    for i in 0..n {
        let g = gray(i);
        let phi: f64 = angles
            .iter()
            .enumerate()
            .map(|(b, &t)| {
                if (b & g).count_ones().is_multiple_of(2) {
                    t
                } else {
                    -t
                }
            })
            .sum::<f64>()
            * scale;
        out.push(Operation::with_controls(
            Gate::Rot {
                axis: crate::seo_ir::Axis::Y,
                target: *target,
                angle: normalize_zero(2.0 * phi),
            },
            op.controls.clone(),
        ));
        let flipped = (g ^ gray((i + 1) % n)).trailing_zeros() as usize;
        let mut controls = vec![Control::on(bit_of_name[flipped])];
        controls.extend_from_slice(&op.controls);
        out.push(Operation::with_controls(
            Gate::Fixed {
                kind: crate::seo_ir::Fixed::X,
                target: *target,
            },
            controls,
        ));
    }
    Ok(out)
}

fn normalize_zero(v: f64) -> f64 {
    if v == 0.0 {
        0.0
    } else {
        v
    }
}

/// Expands every multiplexor of `circuit`, keeping loops.
pub fn expand_circuit(circuit: &Circuit) -> Result<Circuit, ExpandError> {
    let mut err = None;
    let out = circuit.map_ops(|op| match expand_mux(op) {
        Ok(v) => v,
        Err(e) => {
            err.get_or_insert(e);
            Vec::new()
        }
    });
    if let Some(e) = err {
        return Err(e);
    }
    Ok(out?)
}

/// Result of expanding an English/Picture file pair.
#[derive(Debug, Clone, PartialEq)]
pub struct ExpandOutput {
    pub circuit: Circuit,
    pub english: String,
    pub picture: String,
    /// Elementary operations with loops unrolled.
    pub num_elementary_ops: u64,
    pub num_multiplexors_in: usize,
}

impl ExpandOutput {
    pub fn log_text(&self, input_prefix: &str, output_prefix: &str) -> String {
        format!(
            "Input File Prefix: {input_prefix}\n\
             Output File Prefix: {output_prefix}\n\
             Expansion Mode: exact\n\
             Number of Multiplexors Expanded: {}\n\
             Number of Qubits: {}\n\
             Number of Elementary Operations: {}\n",
            self.num_multiplexors_in,
            self.circuit.num_qubits(),
            self.num_elementary_ops
        )
    }
}

fn count_lines(text: &str) -> usize {
    text.lines().filter(|l| !l.trim().is_empty()).count()
}

/// Reads an English file (with its Picture companion for the qubit count)
/// and produces the expanded pair.
pub fn expand_file(english: &str, picture: &str) -> Result<ExpandOutput, ExpandError> {
    let (e, p) = (count_lines(english), count_lines(picture));
    if e != p {
        return Err(ExpandError::LineCount {
            english: e,
            picture: p,
        });
    }
    let inferred = parse_english(english, None)?.num_qubits();
    let circuit = parse_english(english, Some(inferred.max(picture_width_qubits(picture))))?;
    let expanded = expand_circuit(&circuit)?;
    Ok(ExpandOutput {
        english: write_english(&expanded),
        picture: write_picture(&expanded),
        num_elementary_ops: expanded.count_elementary_ops(),
        num_multiplexors_in: circuit.num_multiplexors(),
        circuit: expanded,
    })
}
