//! Full annealing circuit: phase estimation `V_β` of the walk operator, the
//! reflection `R̃_β = V_β† (I ⊗ Q) V_β`, the fixed-point Grover recursion
//! `U_{β_t;d}` and the product over the schedule.
//!
//! Qubit layout: walk registers on `0..2nb` (see [`WalkLayout`]), then `c`
//! probe blocks of `a` bits each, block-major. Probe bit `j` of a block
//! controls `W^{2^j}`.

use std::fmt::Write as _;

use thiserror::Error;

use crate::markov::{boltzmann, metropolis, spectral, AnnealingSchedule, MarkovError, ProblemSpec};
use crate::seo_ir::{
    format_angle, BitIndex, Circuit, CircuitBuilder, Control, Gate, IrError, Operation,
};
use crate::szegedy::{emit_w, WalkLayout};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CodegenError {
    #[error(transparent)]
    Markov(#[from] MarkovError),
    #[error(transparent)]
    Ir(#[from] IrError),
    #[error("number of probe bits must be at least 1")]
    NoProbeBits,
    #[error("number of phase estimation steps must be at least 1")]
    NoPeSteps,
    #[error("schedule index {t} out of range (t_f = {t_f})")]
    TimeOutOfRange { t: usize, t_f: usize },
    #[error("recursion depth {d} exceeds Grover depth {d_f}")]
    DepthOutOfRange { d: usize, d_f: usize },
}

/// Phase-estimation and recursion sizes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PeParams {
    /// Probe bits per phase-estimation step.
    pub a: usize,
    /// Number of phase-estimation steps.
    pub c: usize,
    /// Grover depth.
    pub d_f: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorConfig {
    pub file_prefix: String,
    pub spec: ProblemSpec,
    pub pe: PeParams,
    pub schedule: AnnealingSchedule,
    /// Prepend Hadamards on the β register (uniform `√π_{β_0}`).
    pub prep: bool,
    /// Use `e^{−iπ/3}` in the source reflection `R̃_{β_t}`.
    pub conjugate_q: bool,
}

impl GeneratorConfig {
    pub fn new(
        spec: ProblemSpec,
        pe: PeParams,
        schedule: AnnealingSchedule,
    ) -> Result<Self, CodegenError> {
        if pe.a == 0 {
            return Err(CodegenError::NoProbeBits);
        }
        if pe.c == 0 {
            return Err(CodegenError::NoPeSteps);
        }
        Ok(GeneratorConfig {
            file_prefix: String::new(),
            spec,
            pe,
            schedule,
            prep: false,
            conjugate_q: false,
        })
    }

    pub fn nb(&self) -> usize {
        self.spec.nb()
    }

    pub fn layout(&self) -> WalkLayout {
        WalkLayout::new(self.nb())
    }

    /// `2nb + ac`.
    pub fn num_qubits(&self) -> usize {
        2 * self.nb() + self.pe.a * self.pe.c
    }

    pub fn probe_bits(&self) -> Vec<BitIndex> {
        (2 * self.nb()..self.num_qubits()).collect()
    }

    fn probe_block(&self, i: usize) -> Vec<BitIndex> {
        let base = 2 * self.nb() + i * self.pe.a;
        (base..base + self.pe.a).collect()
    }
}

/// Adds `control` to every operation of `circuit`.
pub fn emit_controlled(circuit: &Circuit, control: Control) -> Result<Circuit, CodegenError> {
    Ok(circuit.controlled(control)?)
}

fn cphase(control: BitIndex, target: BitIndex, angle: f64) -> Operation {
    Operation::with_controls(Gate::P1Ph { target, angle }, vec![Control::on(control)])
}

/// Quantum Fourier transform on `bits` (bit 0 least significant):
/// `|y⟩ ↦ 2^{−a/2} Σ_x e^{2πi xy/2^a} |x⟩`.
pub fn emit_qft(bits: &[BitIndex], num_qubits: usize) -> Circuit {
    let a = bits.len();
    let mut b = CircuitBuilder::new(num_qubits);
    for i in (0..a).rev() {
        b.push(Operation::had2(bits[i]));
        for j in (0..i).rev() {
            b.push(cphase(bits[j], bits[i], 180.0 / (1u64 << (i - j)) as f64));
        }
    }
    for k in 0..a / 2 {
        b.push(Operation::swap(bits[k], bits[a - 1 - k]));
    }
    b.finish().expect("distinct probe bits")
}

/// Inverse Fourier transform; its phases are `−180/2^m` degrees.
pub fn emit_inverse_qft(bits: &[BitIndex], num_qubits: usize) -> Circuit {
    emit_qft(bits, num_qubits).inverse()
}

/// `c` phase-estimation blocks of `W(M_β)` on their own probe bits.
pub fn emit_v(beta: f64, config: &GeneratorConfig) -> Result<Circuit, CodegenError> {
    let n = config.num_qubits();
    let m = metropolis(&config.spec, beta)?;
    let w = emit_w(&m, &config.layout()).widened(n);
    let mut b = CircuitBuilder::new(n);
    for i in 0..config.pe.c {
        let probes = config.probe_block(i);
        for &p in &probes {
            b.push(Operation::had2(p));
        }
        for (j, &p) in probes.iter().enumerate() {
            let cw = emit_controlled(&w, Control::on(p))?;
            b.repeat(1u64 << j, |b| {
                b.append(&cw);
            });
        }
        b.append(&emit_inverse_qft(&probes, n));
    }
    Ok(b.finish()?)
}

/// `V_β`, then `phase_deg` on the all-false probe subspace, then `V_β†`.
pub fn emit_r_tilde_with_phase(
    beta: f64,
    phase_deg: f64,
    config: &GeneratorConfig,
) -> Result<Circuit, CodegenError> {
    let v = emit_v(beta, config)?;
    let mut b = CircuitBuilder::new(config.num_qubits());
    b.append(&v);
    b.push(Operation::phas(
        phase_deg,
        config.probe_bits().into_iter().map(Control::off).collect(),
    ));
    b.append(&v.inverse());
    Ok(b.finish()?)
}

/// `R̃_β` with `Q = (e^{iπ/3})^{P_0^{⊗ac}}`.
pub fn emit_r_tilde(beta: f64, config: &GeneratorConfig) -> Result<Circuit, CodegenError> {
    emit_r_tilde_with_phase(beta, 60.0, config)
}

/// Memoizes the two reflections of one schedule step.
struct StepReflections {
    source: Circuit,
    target: Circuit,
}

impl StepReflections {
    fn new(t: usize, config: &GeneratorConfig) -> Result<Self, CodegenError> {
        let source_phase = if config.conjugate_q { -60.0 } else { 60.0 };
        Ok(StepReflections {
            source: emit_r_tilde_with_phase(config.schedule.beta(t), source_phase, config)?,
            target: emit_r_tilde(config.schedule.beta(t + 1), config)?,
        })
    }

    fn grover(&self, d: usize, n: usize) -> Circuit {
        if d == 0 {
            return Circuit::empty(n);
        }
        let prev = self.grover(d - 1, n);
        let prev_inv = prev.inverse();
        let mut b = CircuitBuilder::new(n);
        b.append(&prev)
            .append(&self.target)
            .append(&prev_inv)
            .append(&self.source)
            .append(&prev);
        b.finish().expect("valid by construction")
    }
}

/// `U_{β_t;d}`:
/// `U_{β_t;0} = I`, `U_{β_t;d+1} = U_{β_t;d} R̃_{β_t} U†_{β_t;d} R̃_{β_{t+1}} U_{β_t;d}`.
pub fn emit_u_grover(
    t: usize,
    d: usize,
    config: &GeneratorConfig,
) -> Result<Circuit, CodegenError> {
    let t_f = config.schedule.t_f();
    if t >= t_f {
        return Err(CodegenError::TimeOutOfRange { t, t_f });
    }
    if d > config.pe.d_f {
        return Err(CodegenError::DepthOutOfRange {
            d,
            d_f: config.pe.d_f,
        });
    }
    let n = config.num_qubits();
    if d == 0 {
        return Ok(Circuit::empty(n));
    }
    Ok(StepReflections::new(t, config)?.grover(d, n))
}

/// Generated circuit with its reported sizes.
#[derive(Debug, Clone, PartialEq)]
pub struct Generated {
    pub circuit: Circuit,
    pub num_qubits: usize,
    pub num_elementary_ops: u64,
}

/// Rejects schedules with a zero-gap chain at any β.
pub fn check_gaps(config: &GeneratorConfig) -> Result<(), CodegenError> {
    for beta in config.schedule.betas() {
        let m = metropolis(&config.spec, beta)?;
        spectral(&m, &boltzmann(&config.spec, beta))?;
    }
    Ok(())
}

/// `𝒰 = U_{β_{t_f−1};d_f} ⋯ U_{β_0;d_f}`, `t = 0` first in time.
pub fn emit_full(config: &GeneratorConfig) -> Result<Generated, CodegenError> {
    check_gaps(config)?;
    let n = config.num_qubits();
    let mut b = CircuitBuilder::new(n);
    if config.prep {
        for &bit in config.layout().beta_bits() {
            b.push(Operation::had2(bit));
        }
    }
    for t in 0..config.schedule.t_f() {
        b.append(&emit_u_grover(t, config.pe.d_f, config)?);
    }
    let circuit = b.finish()?;
    Ok(Generated {
        num_elementary_ops: circuit.count_elementary_ops(),
        num_qubits: n,
        circuit,
    })
}

/// Log file contents, one `key: value` line per Control Panel field.
pub fn log_text(config: &GeneratorConfig, generated: &Generated) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "File Prefix: {}", config.file_prefix);
    let _ = writeln!(s, "Number of State Bits: {}", config.nb());
    let _ = writeln!(
        s,
        "Number of Probe Bits (for each PE step): {}",
        config.pe.a
    );
    let _ = writeln!(s, "Number of Phase Estimation (PE) Steps: {}", config.pe.c);
    let _ = writeln!(s, "Grover Depth: {}", config.pe.d_f);
    let _ = writeln!(
        s,
        "Upper Bound on Number of Neighbors: {}",
        format_angle(config.spec.up_bd_neig())
    );
    let _ = writeln!(s, "Number of Betas: {}", config.schedule.num_betas());
    let _ = writeln!(
        s,
        "Delta Beta Per Unit Time: {}",
        format_angle(config.schedule.delta_beta())
    );
    let _ = writeln!(
        s,
        "State Preparation: {}",
        if config.prep { "yes" } else { "no" }
    );
    let _ = writeln!(
        s,
        "Conjugate Q: {}",
        if config.conjugate_q { "yes" } else { "no" }
    );
    let _ = writeln!(s, "Number of Qubits: {}", generated.num_qubits);
    let _ = writeln!(
        s,
        "Number of Elementary Operations: {}",
        generated.num_elementary_ops
    );
    s
}
