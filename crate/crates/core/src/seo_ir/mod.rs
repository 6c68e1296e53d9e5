//! Gate-level circuit representation shared by every generator, plus the
//! English and Picture text formats.
//!
//! A [`Circuit`] is a flat list of [`Instruction`]s, exactly as they appear
//! line by line in an English file. Loops are delimited by `LOOP`/`NEXT`
//! markers whose label is the 0-based line index of the `LOOP` line. Circuits
//! are validated on construction and immutable afterwards; use
//! [`CircuitBuilder`] to assemble them without tracking labels by hand.

mod english;
mod picture;

pub use english::{format_angle, parse_english, write_english, ParseError};
pub use picture::{picture_width_qubits, write_picture};

use std::cmp::Reverse;
use std::collections::HashSet;

use thiserror::Error;

/// Qubit position. Bit 0 is the rightmost column of a Picture file and the
/// least significant bit of a basis-state index.
pub type BitIndex = usize;

/// Plain control: `polarity == true` is `n(α)` (`T`/`@`), false is `n̄(α)`
/// (`F`/`0`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Control {
    pub bit: BitIndex,
    pub polarity: bool,
}

impl Control {
    pub fn on(bit: BitIndex) -> Self {
        Control {
            bit,
            polarity: true,
        }
    }

    pub fn off(bit: BitIndex) -> Self {
        Control {
            bit,
            polarity: false,
        }
    }
}

/// Multiplexor control at `bit`. The control named `k` contributes bit `k` of
/// the angle index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct MuxControl {
    pub bit: BitIndex,
    pub name: usize,
}

/// The four-letter mnemonics of the English file.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Opcode {
    SigX,
    SigY,
    SigZ,
    Had2,
    RotX,
    RotY,
    RotZ,
    RotN,
    Phas,
    P0Ph,
    P1Ph,
    Swap,
    MpY,
    Loop,
    Next,
}

impl Opcode {
    pub fn mnemonic(self) -> &'static str {
        match self {
            Opcode::SigX => "SIGX",
            Opcode::SigY => "SIGY",
            Opcode::SigZ => "SIGZ",
            Opcode::Had2 => "HAD2",
            Opcode::RotX => "ROTX",
            Opcode::RotY => "ROTY",
            Opcode::RotZ => "ROTZ",
            Opcode::RotN => "ROTN",
            Opcode::Phas => "PHAS",
            Opcode::P0Ph => "P0PH",
            Opcode::P1Ph => "P1PH",
            Opcode::Swap => "SWAP",
            Opcode::MpY => "MP_Y",
            Opcode::Loop => "LOOP",
            Opcode::Next => "NEXT",
        }
    }

    pub fn from_mnemonic(s: &str) -> Option<Self> {
        Some(match s {
            "SIGX" => Opcode::SigX,
            "SIGY" => Opcode::SigY,
            "SIGZ" => Opcode::SigZ,
            "HAD2" => Opcode::Had2,
            "ROTX" => Opcode::RotX,
            "ROTY" => Opcode::RotY,
            "ROTZ" => Opcode::RotZ,
            "ROTN" => Opcode::RotN,
            "PHAS" => Opcode::Phas,
            "P0PH" => Opcode::P0Ph,
            "P1PH" => Opcode::P1Ph,
            "SWAP" => Opcode::Swap,
            "MP_Y" => Opcode::MpY,
            "LOOP" => Opcode::Loop,
            "NEXT" => Opcode::Next,
            _ => return None,
        })
    }
}

/// Single-qubit Pauli or Hadamard.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Fixed {
    X,
    Y,
    Z,
    H,
}

/// Axis of a one-angle rotation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axis {
    X,
    Y,
    Z,
}

/// The gate part of an operation. All angles are in degrees.
///
/// Kernel conventions:
/// - `Rot { axis, angle }` is `exp(i/2 · angle · σ_axis)`;
/// - `RotN { angles }` is `exp(i/2 · (a·σx + b·σy + c·σz))`;
/// - `Phas` is the global factor `exp(i·angle)` (restricted by the controls);
/// - `P0Ph`/`P1Ph` are `exp(i·angle·P_0)` / `exp(i·angle·P_1)` on the target;
/// - `MpY` is `exp(i · Σ_b angle_b · σy(target) · P_b(mux))`, with `b` the
///   integer whose bit `k` is the value of the control named `k`.
#[derive(Debug, Clone, PartialEq)]
pub enum Gate {
    Fixed {
        kind: Fixed,
        target: BitIndex,
    },
    Rot {
        axis: Axis,
        target: BitIndex,
        angle: f64,
    },
    RotN {
        target: BitIndex,
        angles: [f64; 3],
    },
    Phas {
        angle: f64,
    },
    P0Ph {
        target: BitIndex,
        angle: f64,
    },
    P1Ph {
        target: BitIndex,
        angle: f64,
    },
    Swap {
        a: BitIndex,
        b: BitIndex,
    },
    MpY {
        target: BitIndex,
        mux: Vec<MuxControl>,
        angles: Vec<f64>,
    },
}

impl Gate {
    pub fn opcode(&self) -> Opcode {
        match self {
            Gate::Fixed { kind, .. } => match kind {
                Fixed::X => Opcode::SigX,
                Fixed::Y => Opcode::SigY,
                Fixed::Z => Opcode::SigZ,
                Fixed::H => Opcode::Had2,
            },
            Gate::Rot { axis, .. } => match axis {
                Axis::X => Opcode::RotX,
                Axis::Y => Opcode::RotY,
                Axis::Z => Opcode::RotZ,
            },
            Gate::RotN { .. } => Opcode::RotN,
            Gate::Phas { .. } => Opcode::Phas,
            Gate::P0Ph { .. } => Opcode::P0Ph,
            Gate::P1Ph { .. } => Opcode::P1Ph,
            Gate::Swap { .. } => Opcode::Swap,
            Gate::MpY { .. } => Opcode::MpY,
        }
    }

    /// Bits the gate acts on, excluding plain controls.
    pub fn operand_bits(&self) -> Vec<BitIndex> {
        match self {
            Gate::Fixed { target, .. }
            | Gate::Rot { target, .. }
            | Gate::RotN { target, .. }
            | Gate::P0Ph { target, .. }
            | Gate::P1Ph { target, .. } => vec![*target],
            Gate::Phas { .. } => vec![],
            Gate::Swap { a, b } => vec![*a, *b],
            Gate::MpY { target, mux, .. } => {
                let mut v = vec![*target];
                v.extend(mux.iter().map(|m| m.bit));
                v
            }
        }
    }

    /// The inverse gate.
    pub fn inverse(&self) -> Gate {
        match self {
            Gate::Fixed { .. } | Gate::Swap { .. } => self.clone(),
            Gate::Rot {
                axis,
                target,
                angle,
            } => Gate::Rot {
                axis: *axis,
                target: *target,
                angle: -angle,
            },
            Gate::RotN { target, angles } => Gate::RotN {
                target: *target,
                angles: angles.map(|a| -a),
            },
            Gate::Phas { angle } => Gate::Phas { angle: -angle },
            Gate::P0Ph { target, angle } => Gate::P0Ph {
                target: *target,
                angle: -angle,
            },
            Gate::P1Ph { target, angle } => Gate::P1Ph {
                target: *target,
                angle: -angle,
            },
            Gate::MpY {
                target,
                mux,
                angles,
            } => Gate::MpY {
                target: *target,
                mux: mux.clone(),
                angles: angles.iter().map(|a| -a).collect(),
            },
        }
    }

    fn angles(&self) -> Vec<f64> {
        match self {
            Gate::Fixed { .. } | Gate::Swap { .. } => vec![],
            Gate::Rot { angle, .. }
            | Gate::Phas { angle }
            | Gate::P0Ph { angle, .. }
            | Gate::P1Ph { angle, .. } => vec![*angle],
            Gate::RotN { angles, .. } => angles.to_vec(),
            Gate::MpY { angles, .. } => angles.clone(),
        }
    }
}

/// A gate together with its plain controls.
#[derive(Debug, Clone, PartialEq)]
pub struct Operation {
    pub gate: Gate,
    pub controls: Vec<Control>,
}

impl Operation {
    pub fn new(gate: Gate) -> Self {
        Self::with_controls(gate, Vec::new())
    }

    /// Controls and multiplexor controls are stored by descending bit, the
    /// order the English file lists them in.
    pub fn with_controls(mut gate: Gate, mut controls: Vec<Control>) -> Self {
        controls.sort_by_key(|c| Reverse(c.bit));
        if let Gate::MpY { mux, .. } = &mut gate {
            mux.sort_by_key(|m| Reverse(m.bit));
        }
        Operation { gate, controls }
    }

    pub fn sigx(target: BitIndex) -> Self {
        Self::new(Gate::Fixed {
            kind: Fixed::X,
            target,
        })
    }

    pub fn had2(target: BitIndex) -> Self {
        Self::new(Gate::Fixed {
            kind: Fixed::H,
            target,
        })
    }

    pub fn roty(target: BitIndex, angle: f64) -> Self {
        Self::new(Gate::Rot {
            axis: Axis::Y,
            target,
            angle,
        })
    }

    pub fn swap(a: BitIndex, b: BitIndex) -> Self {
        Self::new(Gate::Swap { a, b })
    }

    pub fn phas(angle: f64, controls: Vec<Control>) -> Self {
        Self::with_controls(Gate::Phas { angle }, controls)
    }

    pub fn inverse(&self) -> Operation {
        Operation {
            gate: self.gate.inverse(),
            controls: self.controls.clone(),
        }
    }

    /// Every bit touched by the operation, controls included.
    pub fn bits(&self) -> Vec<BitIndex> {
        let mut v = self.gate.operand_bits();
        v.extend(self.controls.iter().map(|c| c.bit));
        v
    }

    fn validate(&self, num_qubits: usize) -> Result<(), IrError> {
        let bits = self.bits();
        if let Some(&b) = bits.iter().find(|&&b| b >= num_qubits) {
            return Err(IrError::BitOutOfRange { bit: b, num_qubits });
        }
        let mut seen = HashSet::new();
        for &b in &bits {
            if !seen.insert(b) {
                return Err(IrError::DuplicateBit(b));
            }
        }
        if let Some(a) = self.gate.angles().into_iter().find(|a| !a.is_finite()) {
            return Err(IrError::NonFiniteAngle(a));
        }
        if let Gate::MpY { mux, angles, .. } = &self.gate {
            if mux.is_empty() {
                return Err(IrError::EmptyMultiplexor);
            }
            let expected = 1usize << mux.len();
            if angles.len() != expected {
                return Err(IrError::AngleCount {
                    expected,
                    found: angles.len(),
                });
            }
            let mut names: Vec<usize> = mux.iter().map(|m| m.name).collect();
            names.sort_unstable();
            if names.iter().enumerate().any(|(i, &n)| i != n) {
                return Err(IrError::MuxNames(names));
            }
        }
        Ok(())
    }
}

/// One line of an English file.
#[derive(Debug, Clone, PartialEq)]
pub enum Instruction {
    Loop { label: usize, reps: u64 },
    Next { label: usize },
    Op(Operation),
}

impl Instruction {
    pub fn opcode(&self) -> Opcode {
        match self {
            Instruction::Loop { .. } => Opcode::Loop,
            Instruction::Next { .. } => Opcode::Next,
            Instruction::Op(op) => op.gate.opcode(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum IrError {
    #[error("bit {bit} out of range for a {num_qubits}-qubit circuit")]
    BitOutOfRange { bit: BitIndex, num_qubits: usize },
    #[error("bit {0} used more than once in one instruction")]
    DuplicateBit(BitIndex),
    #[error("multiplexor needs 2^k angles: expected {expected}, found {found}")]
    AngleCount { expected: usize, found: usize },
    #[error("multiplexor has no controls")]
    EmptyMultiplexor,
    #[error("multiplexor control names must be 0..k-1, found {0:?}")]
    MuxNames(Vec<usize>),
    #[error("angle {0} is not finite")]
    NonFiniteAngle(f64),
    #[error("LOOP at line {line} is labelled {label}")]
    LoopLabel { line: usize, label: usize },
    #[error("LOOP at line {0} has zero repetitions")]
    ZeroReps(usize),
    #[error("NEXT {found} at line {line} does not close LOOP {expected:?}")]
    UnmatchedNext {
        line: usize,
        found: usize,
        expected: Option<usize>,
    },
    #[error("LOOP {0} is never closed")]
    UnclosedLoop(usize),
    #[error("circuit must have at least one qubit")]
    NoQubits,
}

/// A validated gate sequence over `num_qubits` qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct Circuit {
    num_qubits: usize,
    body: Vec<Instruction>,
}

impl Circuit {
    pub fn new(num_qubits: usize, body: Vec<Instruction>) -> Result<Self, IrError> {
        if num_qubits == 0 {
            return Err(IrError::NoQubits);
        }
        let mut open = Vec::new();
        for (line, ins) in body.iter().enumerate() {
            match ins {
                Instruction::Loop { label, reps } => {
                    if *label != line {
                        return Err(IrError::LoopLabel {
                            line,
                            label: *label,
                        });
                    }
                    if *reps == 0 {
                        return Err(IrError::ZeroReps(line));
                    }
                    open.push(*label);
                }
                Instruction::Next { label } => {
                    let top = open.pop();
                    if top != Some(*label) {
                        return Err(IrError::UnmatchedNext {
                            line,
                            found: *label,
                            expected: top,
                        });
                    }
                }
                Instruction::Op(op) => op.validate(num_qubits)?,
            }
        }
        if let Some(label) = open.pop() {
            return Err(IrError::UnclosedLoop(label));
        }
        Ok(Circuit { num_qubits, body })
    }

    pub fn empty(num_qubits: usize) -> Self {
        Circuit {
            num_qubits: num_qubits.max(1),
            body: Vec::new(),
        }
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn body(&self) -> &[Instruction] {
        &self.body
    }

    pub fn len(&self) -> usize {
        self.body.len()
    }

    pub fn is_empty(&self) -> bool {
        self.body.is_empty()
    }

    /// Same instructions, declared over more qubits.
    pub fn widened(&self, num_qubits: usize) -> Circuit {
        Circuit {
            num_qubits: num_qubits.max(self.num_qubits),
            body: self.body.clone(),
        }
    }

    /// Number of elementary operations: LOOP/NEXT lines are free, loop bodies
    /// count once per repetition (nested loops multiply), a multiplexor line
    /// counts as one.
    pub fn count_elementary_ops(&self) -> u64 {
        let mut stack: Vec<u64> = Vec::new();
        let mut factor = 1u64;
        let mut total = 0u64;
        for ins in &self.body {
            match ins {
                Instruction::Loop { reps, .. } => {
                    stack.push(factor);
                    factor = factor.saturating_mul(*reps);
                }
                Instruction::Next { .. } => {
                    factor = stack.pop().unwrap_or(1);
                }
                Instruction::Op(_) => total = total.saturating_add(factor),
            }
        }
        total
    }

    pub fn num_multiplexors(&self) -> usize {
        self.body
            .iter()
            .filter(|i| i.opcode() == Opcode::MpY)
            .count()
    }

    /// The inverse circuit: reversed order, each operation inverted, loops
    /// kept as loops around the inverted body.
    pub fn inverse(&self) -> Circuit {
        let tree = to_tree(&self.body);
        let mut b = CircuitBuilder::new(self.num_qubits);
        push_tree_inverse(&mut b, &tree);
        b.finish_unchecked()
    }

    /// Adds `control` to every operation. LOOP/NEXT pass through unchanged.
    pub fn controlled(&self, control: Control) -> Result<Circuit, IrError> {
        let body = self
            .body
            .iter()
            .map(|ins| match ins {
                Instruction::Op(op) => {
                    let mut controls = op.controls.clone();
                    controls.push(control);
                    Instruction::Op(Operation::with_controls(op.gate.clone(), controls))
                }
                other => other.clone(),
            })
            .collect();
        Circuit::new(self.num_qubits.max(control.bit + 1), body)
    }

    /// Applies `f` to every operation, keeping loop structure, and re-validates.
    pub fn map_ops<F>(&self, mut f: F) -> Result<Circuit, IrError>
    where
        F: FnMut(&Operation) -> Vec<Operation>,
    {
        let mut b = CircuitBuilder::new(self.num_qubits);
        for ins in &self.body {
            match ins {
                Instruction::Loop { reps, .. } => {
                    b.begin_loop(*reps);
                }
                Instruction::Next { .. } => {
                    b.end_loop();
                }
                Instruction::Op(op) => {
                    for new_op in f(op) {
                        b.push(new_op);
                    }
                }
            }
        }
        b.finish()
    }
}

enum Node<'a> {
    Op(&'a Operation),
    Loop(u64, Vec<Node<'a>>),
}

fn to_tree(body: &[Instruction]) -> Vec<Node<'_>> {
    let mut stack: Vec<(u64, Vec<Node>)> = vec![(1, Vec::new())];
    for ins in body {
        match ins {
            Instruction::Loop { reps, .. } => stack.push((*reps, Vec::new())),
            Instruction::Next { .. } => {
                let (reps, nodes) = stack.pop().expect("validated nesting");
                stack
                    .last_mut()
                    .expect("validated nesting")
                    .1
                    .push(Node::Loop(reps, nodes));
            }
            Instruction::Op(op) => stack.last_mut().expect("root").1.push(Node::Op(op)),
        }
    }
    stack.pop().map(|(_, n)| n).unwrap_or_default()
}

fn push_tree_inverse(b: &mut CircuitBuilder, nodes: &[Node]) {
    for node in nodes.iter().rev() {
        match node {
            Node::Op(op) => {
                b.push(op.inverse());
            }
            Node::Loop(reps, body) => {
                b.begin_loop(*reps);
                push_tree_inverse(b, body);
                b.end_loop();
            }
        }
    }
}

/// Accumulates instructions and assigns loop labels from line positions.
#[derive(Debug, Clone)]
pub struct CircuitBuilder {
    num_qubits: usize,
    body: Vec<Instruction>,
    open: Vec<usize>,
}

impl CircuitBuilder {
    pub fn new(num_qubits: usize) -> Self {
        CircuitBuilder {
            num_qubits,
            body: Vec::new(),
            open: Vec::new(),
        }
    }

    pub fn push(&mut self, op: Operation) -> &mut Self {
        self.body.push(Instruction::Op(op));
        self
    }

    pub fn begin_loop(&mut self, reps: u64) -> &mut Self {
        let label = self.body.len();
        self.open.push(label);
        self.body.push(Instruction::Loop { label, reps });
        self
    }

    pub fn end_loop(&mut self) -> &mut Self {
        let label = self.open.pop().expect("end_loop without begin_loop");
        self.body.push(Instruction::Next { label });
        self
    }

    /// Wraps `f`'s output in a loop, or emits it inline when `reps == 1`.
    pub fn repeat(&mut self, reps: u64, f: impl FnOnce(&mut Self)) -> &mut Self {
        if reps == 1 {
            f(self);
        } else {
            self.begin_loop(reps);
            f(self);
            self.end_loop();
        }
        self
    }

    /// Appends another circuit, shifting its loop labels.
    pub fn append(&mut self, other: &Circuit) -> &mut Self {
        self.num_qubits = self.num_qubits.max(other.num_qubits);
        let offset = self.body.len();
        self.body.extend(other.body.iter().map(|ins| match ins {
            Instruction::Loop { label, reps } => Instruction::Loop {
                label: label + offset,
                reps: *reps,
            },
            Instruction::Next { label } => Instruction::Next {
                label: label + offset,
            },
            Instruction::Op(op) => Instruction::Op(op.clone()),
        }));
        self
    }

    pub fn len(&self) -> usize {
        self.body.len()
    }

    pub fn is_empty(&self) -> bool {
        self.body.is_empty()
    }

    pub fn finish(self) -> Result<Circuit, IrError> {
        Circuit::new(self.num_qubits, self.body)
    }

    fn finish_unchecked(self) -> Circuit {
        debug_assert!(self.open.is_empty());
        Circuit {
            num_qubits: self.num_qubits,
            body: self.body,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn looped(reps: &[u64], inner: usize) -> Circuit {
        let mut b = CircuitBuilder::new(2);
        for &r in reps {
            b.begin_loop(r);
        }
        for _ in 0..inner {
            b.push(Operation::sigx(0));
        }
        for _ in reps {
            b.end_loop();
        }
        b.finish().unwrap()
    }

    #[test]
    fn counts_loop_body_per_rep() {
        let mut b = CircuitBuilder::new(2);
        b.begin_loop(3);
        b.push(Operation::sigx(1));
        b.push(Operation::had2(0));
        b.end_loop();
        assert_eq!(b.finish().unwrap().count_elementary_ops(), 6);
    }

    #[test]
    fn counts_nested_loops() {
        assert_eq!(looped(&[2, 3], 1).count_elementary_ops(), 6);
        assert_eq!(Circuit::empty(1).count_elementary_ops(), 0);
    }

    #[test]
    fn loop_labels_are_line_indices() {
        let mut b = CircuitBuilder::new(2);
        b.push(Operation::had2(0));
        b.begin_loop(2);
        b.push(Operation::sigx(1));
        b.end_loop();
        let c = b.finish().unwrap();
        assert_eq!(c.body()[1], Instruction::Loop { label: 1, reps: 2 });
        assert_eq!(c.body()[3], Instruction::Next { label: 1 });
    }

    #[test]
    fn rejects_bad_loop_label() {
        let body = vec![
            Instruction::Loop { label: 3, reps: 2 },
            Instruction::Next { label: 3 },
        ];
        assert_eq!(
            Circuit::new(1, body),
            Err(IrError::LoopLabel { line: 0, label: 3 })
        );
    }

    #[test]
    fn rejects_mismatched_next() {
        let body = vec![
            Instruction::Loop { label: 0, reps: 2 },
            Instruction::Next { label: 4 },
        ];
        assert!(matches!(
            Circuit::new(1, body),
            Err(IrError::UnmatchedNext { .. })
        ));
        let body = vec![Instruction::Loop { label: 0, reps: 2 }];
        assert_eq!(Circuit::new(1, body), Err(IrError::UnclosedLoop(0)));
    }

    #[test]
    fn rejects_control_on_target() {
        let op = Operation::with_controls(
            Gate::Fixed {
                kind: Fixed::X,
                target: 1,
            },
            vec![Control::on(1)],
        );
        assert_eq!(
            Circuit::new(2, vec![Instruction::Op(op)]),
            Err(IrError::DuplicateBit(1))
        );
    }

    #[test]
    fn rejects_wrong_mux_angle_count() {
        let op = Operation::new(Gate::MpY {
            target: 2,
            mux: vec![
                MuxControl { bit: 0, name: 0 },
                MuxControl { bit: 1, name: 1 },
            ],
            angles: vec![1.0, 2.0, 3.0],
        });
        assert_eq!(
            Circuit::new(3, vec![Instruction::Op(op)]),
            Err(IrError::AngleCount {
                expected: 4,
                found: 3
            })
        );
    }

    #[test]
    fn inverse_reverses_loop_bodies() {
        let mut b = CircuitBuilder::new(2);
        b.push(Operation::had2(0));
        b.begin_loop(4);
        b.push(Operation::roty(1, 10.0));
        b.push(Operation::sigx(0));
        b.end_loop();
        let inv = b.finish().unwrap().inverse();
        let mut e = CircuitBuilder::new(2);
        e.begin_loop(4);
        e.push(Operation::sigx(0));
        e.push(Operation::roty(1, -10.0));
        e.end_loop();
        e.push(Operation::had2(0));
        assert_eq!(inv, e.finish().unwrap());
    }

    #[test]
    fn controlled_adds_control_everywhere() {
        let mut b = CircuitBuilder::new(2);
        b.begin_loop(2);
        b.push(Operation::sigx(1));
        b.end_loop();
        let c = b.finish().unwrap().controlled(Control::on(5)).unwrap();
        assert_eq!(c.num_qubits(), 6);
        match &c.body()[1] {
            Instruction::Op(op) => assert_eq!(op.controls, vec![Control::on(5)]),
            other => panic!("unexpected {other:?}"),
        }
        assert!(Circuit::empty(2)
            .controlled(Control::on(1))
            .unwrap()
            .is_empty());
    }

    #[test]
    fn controlled_rejects_collision() {
        let mut b = CircuitBuilder::new(2);
        b.push(Operation::sigx(1));
        let c = b.finish().unwrap();
        assert_eq!(c.controlled(Control::on(1)), Err(IrError::DuplicateBit(1)));
    }
}
