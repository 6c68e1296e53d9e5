#![allow(dead_code)]

use qsann::seo_ir::{Axis, Fixed};
use qsann::{Circuit, CircuitBuilder, Control, Gate, Instruction, MuxControl, Operation};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::Rng;

fn angle(rng: &mut StdRng) -> f64 {
    if rng.random::<bool>() {
        (rng.random_range(-3600.0..3600.0f64)).round() / 10.0
    } else {
        rng.random_range(-360.0..360.0)
    }
}

fn controls(rng: &mut StdRng, free: &[usize]) -> Vec<Control> {
    let k = rng.random_range(0..=free.len().min(3));
    free[..k]
        .iter()
        .map(|&bit| Control {
            bit,
            polarity: rng.random(),
        })
        .collect()
}

/// A random operation on `n` qubits using every opcode.
pub fn random_op(rng: &mut StdRng, n: usize) -> Operation {
    let mut bits: Vec<usize> = (0..n).collect();
    bits.shuffle(rng);
    let t = bits[0];
    let choice = rng.random_range(0..if n >= 2 { 14 } else { 12 });
    let (gate, used) = match choice {
        0..=3 => {
            let kind = [Fixed::X, Fixed::Y, Fixed::Z, Fixed::H][choice];
            (Gate::Fixed { kind, target: t }, 1)
        }
        4..=6 => {
            let axis = [Axis::X, Axis::Y, Axis::Z][choice - 4];
            (
                Gate::Rot {
                    axis,
                    target: t,
                    angle: angle(rng),
                },
                1,
            )
        }
        7 => (
            Gate::RotN {
                target: t,
                angles: [angle(rng), angle(rng), angle(rng)],
            },
            1,
        ),
        8 => (Gate::Phas { angle: angle(rng) }, 0),
        9 => (
            Gate::P0Ph {
                target: t,
                angle: angle(rng),
            },
            1,
        ),
        10 | 11 => (
            Gate::P1Ph {
                target: t,
                angle: angle(rng),
            },
            1,
        ),
        12 => (Gate::Swap { a: t, b: bits[1] }, 2),
        _ => {
            let k = rng.random_range(1..=(n - 1).min(3));
            let mut names: Vec<usize> = (0..k).collect();
            names.shuffle(rng);
            let mux = bits[1..=k]
                .iter()
                .zip(names)
                .map(|(&bit, name)| MuxControl { bit, name })
                .collect();
            (
                Gate::MpY {
                    target: t,
                    mux,
                    angles: (0..1 << k).map(|_| angle(rng)).collect(),
                },
                k + 1,
            )
        }
    };
    let controls = controls(rng, &bits[used..]);
    Operation::with_controls(gate, controls)
}

/// A random circuit with loops nested up to `max_depth`.
pub fn random_circuit(rng: &mut StdRng, max_depth: usize) -> Circuit {
    let n = rng.random_range(1..=6);
    let mut b = CircuitBuilder::new(n);
    let len = rng.random_range(1..=8);
    fill(rng, &mut b, n, max_depth, len);
    b.finish().expect("random circuit is valid")
}

fn fill(rng: &mut StdRng, b: &mut CircuitBuilder, n: usize, depth: usize, len: usize) {
    for _ in 0..len {
        if depth > 0 && rng.random_range(0..4) == 0 {
            b.begin_loop(rng.random_range(1..=5));
            let inner = rng.random_range(1..=4);
            fill(rng, b, n, depth - 1, inner);
            b.end_loop();
        } else {
            b.push(random_op(rng, n));
        }
    }
}

/// Operations with every loop textually unrolled.
pub fn unroll(body: &[Instruction]) -> Vec<Operation> {
    fn go(body: &[Instruction], i: &mut usize, out: &mut Vec<Operation>) {
        while *i < body.len() {
            match &body[*i] {
                Instruction::Op(op) => {
                    out.push(op.clone());
                    *i += 1;
                }
                Instruction::Loop { reps, .. } => {
                    *i += 1;
                    let mut once = Vec::new();
                    go(body, i, &mut once);
                    for _ in 0..*reps {
                        out.extend(once.iter().cloned());
                    }
                    *i += 1;
                }
                Instruction::Next { .. } => return,
            }
        }
    }
    let mut out = Vec::new();
    let mut i = 0;
    go(body, &mut i, &mut out);
    out
}

/// Random column-stochastic entries, row-major `[y * ns + x]`.
pub fn random_stochastic(rng: &mut StdRng, ns: usize) -> Vec<f64> {
    let mut e = vec![0.0; ns * ns];
    for x in 0..ns {
        let mut col: Vec<f64> = (0..ns)
            .map(|_| {
                if rng.random_range(0..5) == 0 {
                    0.0
                } else {
                    rng.random()
                }
            })
            .collect();
        if col.iter().sum::<f64>() == 0.0 {
            col[x] = 1.0;
        }
        let s: f64 = col.iter().sum();
        for y in 0..ns {
            e[y * ns + x] = col[y] / s;
        }
    }
    e
}
