//! Szegedy walk operator `W(M) = U (−1)^{π̌} U† (−1)^{π̂}` as a gate sequence.
//!
//! Register α (the walk's "current state", the embedding's input) lives on
//! bits `0..nb`, register β (the embedding's output) on bits `nb..2nb`. The
//! stationary state `|m_0 0⟩` holds `√π` on β and zero on α.

use crate::markov::TransitionMatrix;
use crate::qembed::qembed_circuit;
use crate::seo_ir::{BitIndex, Circuit, CircuitBuilder, Control, Operation};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WalkLayout {
    alpha: Vec<BitIndex>,
    beta: Vec<BitIndex>,
}

impl WalkLayout {
    pub fn new(nb: usize) -> Self {
        WalkLayout {
            alpha: (0..nb).collect(),
            beta: (nb..2 * nb).collect(),
        }
    }

    pub fn nb(&self) -> usize {
        self.alpha.len()
    }

    pub fn alpha_bits(&self) -> &[BitIndex] {
        &self.alpha
    }

    pub fn beta_bits(&self) -> &[BitIndex] {
        &self.beta
    }

    pub fn num_qubits(&self) -> usize {
        self.alpha
            .iter()
            .chain(&self.beta)
            .max()
            .map_or(1, |b| b + 1)
    }

    fn swaps(&self, b: &mut CircuitBuilder) {
        for (&a, &bb) in self.alpha.iter().zip(&self.beta) {
            b.push(Operation::swap(a, bb));
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Register {
    Alpha,
    Beta,
}

/// `U = swap · Ǔ† · swap · Ǔ`: the embedding, the register swap, the
/// reversed embedding with negated angles, the swap again.
pub fn emit_u(q: &TransitionMatrix, layout: &WalkLayout) -> Circuit {
    emit_u_from(&qembed_circuit(q, layout), layout)
}

/// `U` around an already built embedding `Ǔ`.
pub fn emit_u_from(check: &Circuit, layout: &WalkLayout) -> Circuit {
    let mut b = CircuitBuilder::new(layout.num_qubits());
    b.append(check);
    layout.swaps(&mut b);
    b.append(&check.inverse());
    layout.swaps(&mut b);
    b.finish().expect("valid by construction")
}

/// `(−1)^{P_0}` on the chosen register: a 180° phase under all-false controls.
pub fn emit_reflection(layout: &WalkLayout, which: Register) -> Circuit {
    let bits = match which {
        Register::Alpha => layout.alpha_bits(),
        Register::Beta => layout.beta_bits(),
    };
    let mut b = CircuitBuilder::new(layout.num_qubits());
    b.push(Operation::phas(
        180.0,
        bits.iter().map(|&bit| Control::off(bit)).collect(),
    ));
    b.finish().expect("valid by construction")
}

/// `W(M)` in time order: `(−1)^{π̂}`, `U†`, `(−1)^{π̌}`, `U`.
pub fn emit_w(q: &TransitionMatrix, layout: &WalkLayout) -> Circuit {
    emit_w_from(&qembed_circuit(q, layout), layout)
}

pub fn emit_w_from(check: &Circuit, layout: &WalkLayout) -> Circuit {
    let u = emit_u_from(check, layout);
    let mut b = CircuitBuilder::new(layout.num_qubits());
    b.append(&emit_reflection(layout, Register::Alpha));
    b.append(&u.inverse());
    b.append(&emit_reflection(layout, Register::Beta));
    b.append(&u);
    b.finish().expect("valid by construction")
}
