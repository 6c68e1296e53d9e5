//! Dense state-vector simulator for small circuits (at most 12 qubits).
//!
//! Basis index bit `k` is the value of qubit `k`. Loops are unrolled while
//! executing. Angles are converted from degrees once, when the gate matrix is
//! built.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use thiserror::Error;

use crate::seo_ir::{Axis, Circuit, Control, Fixed, Gate, Instruction, Operation};

pub const MAX_QUBITS: usize = 12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SimError {
    #[error("circuit has {circuit} qubits but the state has {state}")]
    DimensionMismatch { circuit: usize, state: usize },
    #[error("{0} qubits exceeds the simulation cap of {MAX_QUBITS}")]
    TooManyQubits(usize),
    #[error("operator is not unitary (deviation {0:e})")]
    NotUnitary(f64),
}

type Mat2 = [[Complex64; 2]; 2];

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

fn deg(a: f64) -> f64 {
    a.to_radians()
}

/// `exp(i·θ·σy)` with θ in radians: `[[cos θ, sin θ], [−sin θ, cos θ]]`.
pub fn exp_i_sigy(theta: f64) -> Mat2 {
    let (s, c) = theta.sin_cos();
    [
        [Complex64::new(c, 0.0), Complex64::new(s, 0.0)],
        [Complex64::new(-s, 0.0), Complex64::new(c, 0.0)],
    ]
}

fn pauli(kind: Fixed) -> Mat2 {
    match kind {
        Fixed::X => [[ZERO, ONE], [ONE, ZERO]],
        Fixed::Y => [[ZERO, -I], [I, ZERO]],
        Fixed::Z => [[ONE, ZERO], [ZERO, -ONE]],
        Fixed::H => {
            let h = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
            [[h, h], [h, -h]]
        }
    }
}

/// `exp(i·(v·σ))` for a real 3-vector `v` in radians.
fn exp_i_sigma(v: [f64; 3]) -> Mat2 {
    let norm = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
    if norm == 0.0 {
        return [[ONE, ZERO], [ZERO, ONE]];
    }
    let (s, c) = norm.sin_cos();
    let [x, y, z] = v.map(|t| t / norm);
    // cos|v| + i sin|v| (n̂·σ)
    [
        [Complex64::new(c, s * z), Complex64::new(s * y, s * x)],
        [Complex64::new(-s * y, s * x), Complex64::new(c, -s * z)],
    ]
}

/// 2×2 matrix of a single-target gate, or `None` for gates handled specially.
pub fn gate_matrix(gate: &Gate) -> Option<Mat2> {
    Some(match gate {
        Gate::Fixed { kind, .. } => pauli(*kind),
        Gate::Rot { axis, angle, .. } => {
            let half = deg(*angle) / 2.0;
            let v = match axis {
                Axis::X => [half, 0.0, 0.0],
                Axis::Y => [0.0, half, 0.0],
                Axis::Z => [0.0, 0.0, half],
            };
            exp_i_sigma(v)
        }
        Gate::RotN { angles, .. } => exp_i_sigma(angles.map(|a| deg(a) / 2.0)),
        Gate::P0Ph { angle, .. } => [[Complex64::from_polar(1.0, deg(*angle)), ZERO], [ZERO, ONE]],
        Gate::P1Ph { angle, .. } => [[ONE, ZERO], [ZERO, Complex64::from_polar(1.0, deg(*angle))]],
        Gate::Phas { .. } | Gate::Swap { .. } | Gate::MpY { .. } => return None,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    num_qubits: usize,
    amplitudes: Vec<Complex64>,
}

impl StateVector {
    pub fn basis(num_qubits: usize, index: usize) -> Self {
        let mut amplitudes = vec![ZERO; 1 << num_qubits];
        amplitudes[index] = ONE;
        StateVector {
            num_qubits,
            amplitudes,
        }
    }

    /// Panics unless `amplitudes.len()` is a power of two.
    pub fn from_amplitudes(amplitudes: Vec<Complex64>) -> Self {
        assert!(amplitudes.len().is_power_of_two());
        StateVector {
            num_qubits: amplitudes.len().trailing_zeros() as usize,
            amplitudes,
        }
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn amplitude(&self, index: usize) -> Complex64 {
        self.amplitudes[index]
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes
            .iter()
            .map(|a| a.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &StateVector) -> Complex64 {
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    fn apply_op(&mut self, op: &Operation) {
        let (cmask, cval) = control_mask(&op.controls);
        let amps = &mut self.amplitudes;
        let dim = amps.len();
        match &op.gate {
            Gate::Phas { angle } => {
                let f = Complex64::from_polar(1.0, deg(*angle));
                for (i, a) in amps.iter_mut().enumerate() {
                    if i & cmask == cval {
                        *a *= f;
                    }
                }
            }
            Gate::Swap { a, b } => {
                let (ma, mb) = (1usize << a, 1usize << b);
                for i in 0..dim {
                    if i & cmask == cval && i & ma != 0 && i & mb == 0 {
                        amps.swap(i, (i & !ma) | mb);
                    }
                }
            }
            Gate::MpY {
                target,
                mux,
                angles,
            } => {
                let kernels: Vec<Mat2> = angles.iter().map(|&a| exp_i_sigy(deg(a))).collect();
                let t = 1usize << target;
                for i in 0..dim {
                    if i & t != 0 || i & cmask != cval {
                        continue;
                    }
                    let sel = mux
                        .iter()
                        .filter(|m| i >> m.bit & 1 == 1)
                        .fold(0usize, |acc, m| acc | 1 << m.name);
                    apply_pair(amps, i, i | t, &kernels[sel]);
                }
            }
            gate => {
                let m = gate_matrix(gate).expect("single-target gate");
                let target = gate.operand_bits()[0];
                let t = 1usize << target;
                for i in 0..dim {
                    if i & t == 0 && i & cmask == cval {
                        apply_pair(amps, i, i | t, &m);
                    }
                }
            }
        }
    }
}

fn control_mask(controls: &[Control]) -> (usize, usize) {
    controls.iter().fold((0, 0), |(m, v), c| {
        (m | 1 << c.bit, if c.polarity { v | 1 << c.bit } else { v })
    })
}

fn apply_pair(amps: &mut [Complex64], i0: usize, i1: usize, m: &Mat2) {
    let (a0, a1) = (amps[i0], amps[i1]);
    amps[i0] = m[0][0] * a0 + m[0][1] * a1;
    amps[i1] = m[1][0] * a0 + m[1][1] * a1;
}

/// Applies `circuit` to `state`, unrolling loops.
pub fn apply(circuit: &Circuit, state: &StateVector) -> Result<StateVector, SimError> {
    if circuit.num_qubits() != state.num_qubits {
        return Err(SimError::DimensionMismatch {
            circuit: circuit.num_qubits(),
            state: state.num_qubits,
        });
    }
    let mut out = state.clone();
    run(circuit.body(), &mut out);
    Ok(out)
}

fn run(body: &[Instruction], state: &mut StateVector) {
    let mut pc = 0;
    // (loop start, repetitions left)
    let mut stack: Vec<(usize, u64)> = Vec::new();
    while pc < body.len() {
        match &body[pc] {
            Instruction::Loop { reps, .. } => stack.push((pc, *reps)),
            Instruction::Next { .. } => {
                let top = stack.last_mut().expect("validated");
                top.1 -= 1;
                if top.1 > 0 {
                    pc = top.0;
                } else {
                    stack.pop();
                }
            }
            Instruction::Op(op) => state.apply_op(op),
        }
        pc += 1;
    }
}

/// Dense `2^n × 2^n` operator.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseOperator {
    num_qubits: usize,
    matrix: DMatrix<Complex64>,
}

impl DenseOperator {
    pub fn from_matrix(matrix: DMatrix<Complex64>) -> Self {
        assert!(matrix.is_square() && matrix.nrows().is_power_of_two());
        DenseOperator {
            num_qubits: matrix.nrows().trailing_zeros() as usize,
            matrix,
        }
    }

    pub fn identity(num_qubits: usize) -> Self {
        let d = 1 << num_qubits;
        DenseOperator {
            num_qubits,
            matrix: DMatrix::identity(d, d),
        }
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.matrix
    }

    /// `⟨row|O|col⟩`.
    pub fn element(&self, row: usize, col: usize) -> Complex64 {
        self.matrix[(row, col)]
    }

    pub fn adjoint(&self) -> DenseOperator {
        DenseOperator {
            num_qubits: self.num_qubits,
            matrix: self.matrix.adjoint(),
        }
    }

    /// Operator product `self · rhs` (rhs acts first).
    pub fn mul(&self, rhs: &DenseOperator) -> DenseOperator {
        DenseOperator {
            num_qubits: self.num_qubits,
            matrix: &self.matrix * &rhs.matrix,
        }
    }

    /// Largest entry of `|self − other|`.
    pub fn max_diff(&self, other: &DenseOperator) -> f64 {
        self.matrix
            .iter()
            .zip(other.matrix.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn unitarity_error(&self) -> f64 {
        let d = self.matrix.nrows();
        let p = self.matrix.adjoint() * &self.matrix;
        DenseOperator {
            num_qubits: self.num_qubits,
            matrix: p,
        }
        .max_diff(&DenseOperator {
            num_qubits: self.num_qubits,
            matrix: DMatrix::identity(d, d),
        })
    }

    pub fn apply(&self, state: &StateVector) -> StateVector {
        let v = nalgebra::DVector::from_column_slice(state.amplitudes());
        StateVector::from_amplitudes((&self.matrix * v).iter().cloned().collect())
    }
}

/// Column `k` of the result is `apply(circuit, |k⟩)`.
pub fn to_matrix(circuit: &Circuit) -> Result<DenseOperator, SimError> {
    let n = circuit.num_qubits();
    if n > MAX_QUBITS {
        return Err(SimError::TooManyQubits(n));
    }
    let d = 1usize << n;
    let mut matrix = DMatrix::zeros(d, d);
    for k in 0..d {
        let mut s = StateVector::basis(n, k);
        run(circuit.body(), &mut s);
        matrix.set_column(k, &nalgebra::DVector::from_column_slice(s.amplitudes()));
    }
    Ok(DenseOperator {
        num_qubits: n,
        matrix,
    })
}

/// Eigenphases in `(−π, π]` of a unitary operator, sorted ascending.
///
/// Uses the commuting Hermitian parts `(U+U†)/2` and `(U−U†)/2i`: the first
/// is diagonalized, each of its degenerate clusters is split by the second,
/// and each resulting eigenvector's phase is read off `v†Uv`.
pub fn eig_unitary(op: &DenseOperator) -> Result<Vec<f64>, SimError> {
    let err = op.unitarity_error();
    if err.is_nan() || err > 1e-8 {
        return Err(SimError::NotUnitary(err));
    }
    let u = &op.matrix;
    let ud = u.adjoint();
    let re = (u + &ud).map(|z| z * 0.5);
    let im = (u - &ud).map(|z| z * Complex64::new(0.0, -0.5));
    let eig = SymmetricEigen::new(re);
    let d = u.nrows();
    let mut order: Vec<usize> = (0..d).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));

    let mut phases = Vec::with_capacity(d);
    let mut start = 0;
    while start < d {
        let mut end = start + 1;
        while end < d && eig.eigenvalues[order[end]] - eig.eigenvalues[order[end - 1]] < 1e-7 {
            end += 1;
        }
        let cols: Vec<_> = order[start..end]
            .iter()
            .map(|&i| eig.eigenvectors.column(i).into_owned())
            .collect();
        let p = DMatrix::from_columns(&cols);
        let k = p.adjoint() * &im * &p;
        let sub = SymmetricEigen::new(k);
        for j in 0..sub.eigenvectors.ncols() {
            let v = &p * sub.eigenvectors.column(j);
            let lambda = (v.adjoint() * u * &v)[(0, 0)];
            phases.push(lambda.arg());
        }
        start = end;
    }
    for p in phases.iter_mut() {
        if *p <= -std::f64::consts::PI + 1e-12 {
            *p = std::f64::consts::PI;
        }
    }
    phases.sort_by(f64::total_cmp);
    Ok(phases)
}
