//! Self-checks of generated circuits against their defining identities,
//! used by `qsann verify`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::densesim::{apply, eig_unitary, to_matrix, StateVector, MAX_QUBITS};
use crate::markov::{boltzmann, metropolis, spectral, SpectralData, TransitionMatrix};
use crate::mux_expander::expand_circuit;
use crate::qembed::qembed_circuit;
use crate::qsa_codegen::{emit_v, GeneratorConfig};
use crate::seo_ir::{Circuit, Gate};
use crate::szegedy::{emit_w_from, WalkLayout};

#[derive(Debug, Clone, PartialEq)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    /// Largest deviation found.
    pub error: f64,
    pub tolerance: f64,
}

impl CheckResult {
    fn new(name: String, error: f64, tolerance: f64) -> Self {
        CheckResult {
            name,
            passed: error <= tolerance,
            error,
            tolerance,
        }
    }
}

/// Test hook: an angle offset (degrees) added to the first multiplexor
/// angle of the q-embedding before checking it.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Corruption {
    pub qembed_angle_deg: f64,
}

/// Circular distance between two phases.
pub fn phase_distance(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(2.0 * PI);
    d.min(2.0 * PI - d)
}

/// Largest distance of a greedy nearest-neighbour pairing of two phase
/// multisets; infinite if their sizes differ.
pub fn match_phases(expected: &[f64], actual: &[f64]) -> f64 {
    if expected.len() != actual.len() {
        return f64::INFINITY;
    }
    let mut used = vec![false; actual.len()];
    let mut worst = 0.0f64;
    for &e in expected {
        let (best, dist) = actual
            .iter()
            .enumerate()
            .filter(|(i, _)| !used[*i])
            .map(|(i, &a)| (i, phase_distance(e, a)))
            .min_by(|x, y| x.1.total_cmp(&y.1))
            .expect("sizes match");
        used[best] = true;
        worst = worst.max(dist);
    }
    worst
}

/// Eigenphases of `W(M)`: `0` repeated `NS² − 2NS + 2` times and `±2φ_j`
/// for `j ≥ 1`.
pub fn expected_walk_phases(data: &SpectralData) -> Vec<f64> {
    let ns = data.eigenvalues.len();
    let mut out = vec![0.0; ns * ns - 2 * ns + 2];
    for &phi in &data.phis[1..] {
        out.push(2.0 * phi);
        out.push(-2.0 * phi);
    }
    out
}

/// `max |⟨y x|Ǔ|0 x⟩ − √M(y|x)|` for the given embedding.
pub fn qembed_error(check: &Circuit, m: &TransitionMatrix, layout: &WalkLayout) -> f64 {
    let nb = layout.nb();
    let ns = m.dim();
    let n = layout.num_qubits();
    let mut worst = 0.0f64;
    for x in 0..ns {
        let out = apply(check, &StateVector::basis(n, x)).expect("sized circuit");
        for y in 0..ns {
            let expected = m.get(y, x).sqrt();
            worst = worst.max((out.amplitude(y << nb | x) - expected).norm());
        }
    }
    worst
}

fn corrupt(circuit: &Circuit, delta: f64) -> Circuit {
    let mut done = false;
    circuit
        .map_ops(|op| {
            let mut op = op.clone();
            if let Gate::MpY { angles, .. } = &mut op.gate {
                if !done {
                    angles[0] += delta;
                    done = true;
                }
            }
            vec![op]
        })
        .expect("same shape")
}

/// Probability that phase estimation leaves every probe bit at 0 when
/// started from `|m_0 0⟩|0⟩`.
pub fn pe_stationary_probability(beta: f64, config: &GeneratorConfig, data: &SpectralData) -> f64 {
    let n = config.num_qubits();
    let nb = config.nb();
    let mut amps = vec![Complex64::new(0.0, 0.0); 1 << n];
    for (y, &v) in data.eigenvectors[0].iter().enumerate() {
        amps[y << nb] = Complex64::new(v, 0.0);
    }
    let v = emit_v(beta, config).expect("validated config");
    let out = apply(&v, &StateVector::from_amplitudes(amps)).expect("sized");
    let walk_dim = 1usize << (2 * nb);
    out.amplitudes()[..walk_dim]
        .iter()
        .map(|z| z.norm_sqr())
        .sum()
}

/// Runs every check for each β of the schedule. Fails if the configuration
/// exceeds the dense simulator's cap.
pub fn verify_config(
    config: &GeneratorConfig,
    corruption: Corruption,
) -> Result<Vec<CheckResult>, String> {
    let nb = config.nb();
    if nb > 2 {
        return Err(format!("{nb} state bits exceeds simulation cap of 2"));
    }
    if config.num_qubits() > MAX_QUBITS {
        return Err(format!(
            "{} qubits exceeds simulation cap of {MAX_QUBITS}",
            config.num_qubits()
        ));
    }
    let layout = config.layout();
    let mut results = Vec::new();
    for beta in config.schedule.betas() {
        let tag = |s: &str| format!("{s} (beta = {beta})");
        let m = metropolis(&config.spec, beta).map_err(|e| e.to_string())?;
        let pi = boltzmann(&config.spec, beta);
        let data = match spectral(&m, &pi) {
            Ok(d) => {
                results.push(CheckResult::new(tag("detailed balance"), 0.0, 1e-9));
                d
            }
            Err(e) => {
                results.push(CheckResult::new(
                    tag(&format!("detailed balance: {e}")),
                    f64::INFINITY,
                    1e-9,
                ));
                continue;
            }
        };

        let mut check = qembed_circuit(&m, &layout);
        if corruption.qembed_angle_deg != 0.0 {
            check = corrupt(&check, corruption.qembed_angle_deg);
        }
        results.push(CheckResult::new(
            tag("q-embedding amplitudes"),
            qembed_error(&check, &m, &layout),
            1e-10,
        ));

        let w = emit_w_from(&check, &layout);
        let w_mat = to_matrix(&w).map_err(|e| e.to_string())?;
        let phases = eig_unitary(&w_mat).map_err(|e| e.to_string())?;
        results.push(CheckResult::new(
            tag("walk spectrum"),
            match_phases(&expected_walk_phases(&data), &phases),
            1e-8,
        ));

        let expanded = expand_circuit(&w).map_err(|e| e.to_string())?;
        let e_mat = to_matrix(&expanded).map_err(|e| e.to_string())?;
        results.push(CheckResult::new(
            tag("multiplexor expansion"),
            w_mat.max_diff(&e_mat),
            1e-10,
        ));

        if corruption.qembed_angle_deg == 0.0 {
            let p = pe_stationary_probability(beta, config, &data);
            results.push(CheckResult::new(
                tag("phase estimation of stationary state"),
                (1.0 - p).abs(),
                1e-9,
            ));
        }
    }
    Ok(results)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::markov::{AnnealingSchedule, ProblemSpec};
    use crate::qsa_codegen::PeParams;

    fn config(nb: usize, a: usize) -> GeneratorConfig {
        GeneratorConfig::new(
            ProblemSpec::qusann_default(nb, 3.0).unwrap(),
            PeParams { a, c: 1, d_f: 1 },
            AnnealingSchedule::new(0.5, 3).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn default_passes() {
        for (nb, a) in [(1, 1), (1, 2), (2, 1)] {
            let r = verify_config(&config(nb, a), Corruption::default()).unwrap();
            for c in &r {
                assert!(c.passed, "{c:?}");
            }
            assert_eq!(r.len(), 3 * 5);
        }
    }

    #[test]
    fn corruption_detected() {
        let r = verify_config(
            &config(1, 1),
            Corruption {
                qembed_angle_deg: 1.0,
            },
        )
        .unwrap();
        assert!(r.iter().any(|c| !c.passed));
    }

    #[test]
    fn too_large_rejected() {
        assert!(verify_config(&config(3, 1), Corruption::default()).is_err());
    }

    #[test]
    fn phase_matching() {
        assert!(match_phases(&[PI, 0.0], &[0.0, -PI + 1e-9]) < 1e-8);
        assert!(match_phases(&[0.0], &[0.0, 0.0]).is_infinite());
    }

    #[test]
    fn expected_phases_nb1_beta0() {
        let spec = ProblemSpec::qusann_default(1, 3.0).unwrap();
        let m = metropolis(&spec, 0.0).unwrap();
        let data = spectral(&m, &boltzmann(&spec, 0.0)).unwrap();
        let ph = expected_walk_phases(&data);
        assert_eq!(ph.len(), 4);
        assert!(((ph[2]).cos() + 7.0 / 9.0).abs() < 1e-12);
    }
}
