//! ASCII Picture file writer.
//!
//! Qubit `α` of an `n`-qubit circuit sits at 0-based column `4·(n−1−α)`.
//! Qubits not involved in an operation show a wordline `|`; a horizontal wire
//! of `-` joins the leftmost and rightmost active symbols, turning into `+`
//! where it crosses an idle wordline.

use std::fmt::Write as _;

use super::{Axis, BitIndex, Circuit, Fixed, Gate, Instruction, Operation};

struct Row {
    n: usize,
    cells: Vec<char>,
    used: Vec<bool>,
    busy_bits: Vec<bool>,
}

impl Row {
    fn new(n: usize) -> Self {
        let width = 4 * n + 4;
        Row {
            n,
            cells: vec![' '; width],
            used: vec![false; width],
            busy_bits: vec![false; n],
        }
    }

    fn col(&self, bit: BitIndex) -> usize {
        4 * (self.n - 1 - bit)
    }

    fn put_at(&mut self, start: usize, sym: &str) {
        for (i, ch) in sym.chars().enumerate() {
            if start + i >= self.cells.len() {
                self.cells.resize(start + i + 1, ' ');
                self.used.resize(start + i + 1, false);
            }
            self.cells[start + i] = ch;
            self.used[start + i] = true;
        }
    }

    fn put(&mut self, bit: BitIndex, sym: &str) {
        self.busy_bits[bit] = true;
        self.put_at(self.col(bit), sym);
    }

    fn render(mut self) -> String {
        let first = self.used.iter().position(|&u| u);
        let last = self.used.iter().rposition(|&u| u);
        if let (Some(lo), Some(hi)) = (first, last) {
            for c in lo..=hi {
                if !self.used[c] {
                    self.cells[c] = '-';
                }
            }
        }
        for bit in 0..self.n {
            if self.busy_bits[bit] {
                continue;
            }
            let c = self.col(bit);
            let inside = matches!((first, last), (Some(lo), Some(hi)) if lo < c && c < hi);
            if !self.used[c] {
                self.cells[c] = if inside { '+' } else { '|' };
            }
        }
        let s: String = self.cells.into_iter().collect();
        s.trim_end().to_string()
    }
}

fn op_row(n: usize, op: &Operation) -> String {
    let mut row = Row::new(n);
    for c in &op.controls {
        row.put(c.bit, if c.polarity { "@" } else { "0" });
    }
    match &op.gate {
        Gate::Fixed { kind, target } => {
            let sym = match kind {
                Fixed::X => "X",
                Fixed::Y => "Y",
                Fixed::Z => "Z",
                Fixed::H => "H",
            };
            row.put(*target, sym);
        }
        Gate::Rot { axis, target, .. } => {
            let sym = match axis {
                Axis::X => "Rx",
                Axis::Y => "Ry",
                Axis::Z => "Rz",
            };
            row.put(*target, sym);
        }
        Gate::RotN { target, .. } => row.put(*target, "R"),
        Gate::P0Ph { target, .. } => row.put(*target, "0P"),
        Gate::P1Ph { target, .. } => row.put(*target, "@P"),
        Gate::Swap { a, b } => {
            let (hi, lo) = if a > b { (*a, *b) } else { (*b, *a) };
            row.put(hi, "<");
            row.put(lo, ">");
        }
        Gate::MpY { target, mux, .. } => {
            row.put(*target, "Ry");
            for m in mux {
                row.put(m.bit, &format!("({}", m.name));
            }
        }
        Gate::Phas { .. } => {
            // `Ph` goes on the lowest bit free of controls, ending on that
            // bit's column; with every bit controlled it trails the row.
            match (0..n).find(|&b| !row.busy_bits[b]) {
                Some(bit) => {
                    let c = row.col(bit);
                    row.busy_bits[bit] = true;
                    if c == 0 {
                        row.put_at(0, "Ph");
                    } else {
                        row.put_at(c - 1, "Ph");
                    }
                }
                None => row.put_at(4 * (n - 1) + 1, "Ph"),
            }
        }
    }
    row.render()
}

/// One line per instruction, in one-to-one correspondence with the English
/// file.
pub fn write_picture(circuit: &Circuit) -> String {
    let n = circuit.num_qubits();
    let mut out = String::new();
    for ins in circuit.body() {
        match ins {
            Instruction::Loop { label, reps } => {
                let _ = write!(out, "LOOP {label} REPS:{reps}");
            }
            Instruction::Next { label } => {
                let _ = write!(out, "NEXT {label}");
            }
            Instruction::Op(op) => out.push_str(&op_row(n, op)),
        }
        out.push('\n');
    }
    out
}

/// Qubit count implied by the widest operation row of a Picture file.
pub fn picture_width_qubits(text: &str) -> usize {
    text.lines()
        .filter(|l| !l.starts_with("LOOP") && !l.starts_with("NEXT"))
        .map(|l| l.chars().count().div_ceil(4))
        .max()
        .unwrap_or(0)
}
