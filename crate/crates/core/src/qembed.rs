//! Q-embedding of a probability matrix as a cascade of y-multiplexors.
//!
//! For `q(y|x)` on `nb` bits, stage `s` rotates output bit `s` (qubit
//! `beta[s]`) controlled by all input bits and the output bits already
//! written. With `θ` the stage angle for input `x` and output prefix `p`,
//!
//! ```text
//! cos²θ = q(bit s = 0, prefix p | x) / q(prefix p | x)
//! sin²θ = q(bit s = 1, prefix p | x) / q(prefix p | x)
//! ```
//!
//! so that the product of the `e^{−iσyθ}` first-column amplitudes telescopes
//! to `√q(y|x)`.

use crate::markov::TransitionMatrix;
use crate::seo_ir::{BitIndex, Circuit, CircuitBuilder, Gate, MuxControl, Operation};
use crate::szegedy::WalkLayout;

/// Rotation angles of one multiplexor. `angles_rad[i]` applies when control
/// `k` (i.e. `control_bits[k]`) holds bit `k` of `i`.
#[derive(Debug, Clone, PartialEq)]
pub struct MuxAngleTable {
    pub target: BitIndex,
    pub control_bits: Vec<BitIndex>,
    /// θ for the kernel `e^{−iσyθ}`; each in `[0, π/2]`.
    pub angles_rad: Vec<f64>,
}

impl MuxAngleTable {
    /// The table as an `MP_Y` operation. The file kernel is `e^{+iσyθ}` in
    /// degrees, hence the sign flip.
    pub fn to_operation(&self) -> Operation {
        let mux = self
            .control_bits
            .iter()
            .enumerate()
            .map(|(name, &bit)| MuxControl { bit, name })
            .collect();
        Operation::new(Gate::MpY {
            target: self.target,
            mux,
            angles: self.angles_rad.iter().map(|&t| file_angle_deg(t)).collect(),
        })
    }
}

/// Converts a `e^{−iσyθ}` angle (radians) to the `MP_Y` file convention.
pub fn file_angle_deg(theta: f64) -> f64 {
    let d = -theta.to_degrees();
    if d == 0.0 {
        0.0
    } else {
        d
    }
}

/// Angle tables for the default layout: inputs on bits `0..nb`, outputs on
/// `nb..2nb`.
pub fn qembed_angles(q: &TransitionMatrix) -> Vec<MuxAngleTable> {
    qembed_angles_on(q, &WalkLayout::new(q.nb()))
}

pub fn qembed_angles_on(q: &TransitionMatrix, layout: &WalkLayout) -> Vec<MuxAngleTable> {
    let nb = layout.nb();
    let ns = q.dim();
    (0..nb)
        .map(|s| {
            let prefixes = 1usize << s;
            let mut angles = vec![0.0; ns * prefixes];
            for x in 0..ns {
                for p in 0..prefixes {
                    let mut num = [0.0f64; 2];
                    for y in (0..ns).filter(|y| y & (prefixes - 1) == p) {
                        num[(y >> s) & 1] += q.get(y, x);
                    }
                    // atan2(0, 0) == 0 covers zero-probability branches.
                    angles[x | (p << nb)] = num[1].sqrt().atan2(num[0].sqrt());
                }
            }
            let mut control_bits = layout.alpha_bits().to_vec();
            control_bits.extend_from_slice(&layout.beta_bits()[..s]);
            MuxAngleTable {
                target: layout.beta_bits()[s],
                control_bits,
                angles_rad: angles,
            }
        })
        .collect()
}

/// The embedding `Ǔ`, stage 0 first in time.
pub fn qembed_circuit(q: &TransitionMatrix, layout: &WalkLayout) -> Circuit {
    let mut b = CircuitBuilder::new(layout.num_qubits());
    for table in qembed_angles_on(q, layout) {
        b.push(table.to_operation());
    }
    b.finish().expect("layout bits are distinct")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::densesim::to_matrix;
    use crate::seo_ir::{write_english, Instruction};
    use approx::assert_abs_diff_eq;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};

    #[test]
    fn identity_angles() {
        let t = qembed_angles(&TransitionMatrix::identity(2));
        assert_eq!(t.len(), 1);
        assert_eq!(t[0].target, 1);
        assert_eq!(t[0].control_bits, vec![0]);
        assert_abs_diff_eq!(t[0].angles_rad[0], 0.0);
        assert_abs_diff_eq!(t[0].angles_rad[1], FRAC_PI_2, epsilon = 1e-15);
    }

    #[test]
    fn uniform_angles() {
        let q = TransitionMatrix::new(2, vec![0.5; 4]).unwrap();
        for a in &qembed_angles(&q)[0].angles_rad {
            assert_abs_diff_eq!(*a, FRAC_PI_4, epsilon = 1e-15);
        }
    }

    #[test]
    fn identity_file_line() {
        let c = qembed_circuit(&TransitionMatrix::identity(2), &WalkLayout::new(1));
        assert_eq!(write_english(&c), "MP_Y  AT  1 IF 0(0 BY 0.0 -90.0\n");
    }

    #[test]
    fn nb2_has_two_multiplexors() {
        let q = TransitionMatrix::new(4, vec![0.25; 16]).unwrap();
        let c = qembed_circuit(&q, &WalkLayout::new(2));
        let sizes: Vec<usize> = c
            .body()
            .iter()
            .map(|i| match i {
                Instruction::Op(Operation {
                    gate: Gate::MpY { angles, .. },
                    ..
                }) => angles.len(),
                other => panic!("unexpected {other:?}"),
            })
            .collect();
        assert_eq!(sizes, vec![4, 8]);
    }

    #[test]
    fn uniform_first_column_is_hadamard_like() {
        let q = TransitionMatrix::new(2, vec![0.5; 4]).unwrap();
        let u = to_matrix(&qembed_circuit(&q, &WalkLayout::new(1))).unwrap();
        // ⟨y x|Ǔ|0 x⟩ with x on bit 0, y on bit 1.
        for x in 0..2 {
            for y in 0..2 {
                assert_abs_diff_eq!(u.element(y << 1 | x, x).re, 0.5f64.sqrt(), epsilon = 1e-15);
            }
        }
    }

    #[test]
    fn zero_branches_get_zero_angle() {
        // Column 0 puts all mass on y = 0, so stage 1 prefix 1 is unreachable.
        let mut e = vec![0.0; 16];
        e[..4].fill(1.0);
        let q = TransitionMatrix::new(4, e).unwrap();
        let t = qembed_angles(&q);
        assert!(t[1].angles_rad.iter().all(|&a| a == 0.0));
    }
}
