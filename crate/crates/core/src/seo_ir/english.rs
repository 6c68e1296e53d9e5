//! English file writer and parser.
//!
//! Spacing follows the translation table of the original tool verbatim, which
//! is not uniform across opcodes (e.g. `PHAS 42.7 IF  3F  2T` versus
//! `P0PH 42.7 AT  3 IF 2T`). The parser splits on whitespace and accepts any
//! spacing.

use std::cmp::Reverse;
use std::fmt::Write as _;

use thiserror::Error;

use super::{
    Axis, BitIndex, Circuit, Control, Fixed, Gate, Instruction, IrError, MuxControl, Opcode,
    Operation,
};

/// Shortest round-tripping decimal with at least one fractional digit.
pub fn format_angle(v: f64) -> String {
    if v == 0.0 {
        return "0.0".to_string();
    }
    let s = v.to_string();
    if s.contains('.') || s.contains("inf") || s.contains("NaN") {
        s
    } else {
        s + ".0"
    }
}

fn sorted_desc(controls: &[Control]) -> Vec<Control> {
    let mut v = controls.to_vec();
    v.sort_by_key(|c| Reverse(c.bit));
    v
}

fn control_token(c: &Control) -> String {
    format!("{}{}", c.bit, if c.polarity { 'T' } else { 'F' })
}

fn controls_joined(controls: &[Control], sep: &str) -> String {
    sorted_desc(controls)
        .iter()
        .map(control_token)
        .collect::<Vec<_>>()
        .join(sep)
}

fn wide_if(controls: &[Control]) -> String {
    if controls.is_empty() {
        String::new()
    } else {
        format!("  IF  {}", controls_joined(controls, "  "))
    }
}

fn write_op(out: &mut String, op: &Operation) {
    let ctrls = &op.controls;
    let mnemonic = op.gate.opcode().mnemonic();
    match &op.gate {
        Gate::Fixed { target, .. } => {
            let _ = write!(out, "{mnemonic}  AT  {target}{}", wide_if(ctrls));
        }
        Gate::Rot { target, angle, .. } => {
            let _ = write!(
                out,
                "{mnemonic}  {}  AT  {target}{}",
                format_angle(*angle),
                wide_if(ctrls)
            );
        }
        Gate::RotN { target, angles } => {
            let a: Vec<String> = angles.iter().map(|&x| format_angle(x)).collect();
            let _ = write!(
                out,
                "{mnemonic}  {}  AT  {target}{}",
                a.join(" "),
                wide_if(ctrls)
            );
        }
        Gate::Phas { angle } => {
            let _ = write!(out, "{mnemonic} {}", format_angle(*angle));
            if !ctrls.is_empty() {
                let _ = write!(out, " IF  {}", controls_joined(ctrls, "  "));
            }
        }
        Gate::P0Ph { target, angle } | Gate::P1Ph { target, angle } => {
            let _ = write!(out, "{mnemonic} {} AT  {target}", format_angle(*angle));
            if !ctrls.is_empty() {
                let _ = write!(out, " IF {}", controls_joined(ctrls, " "));
            }
        }
        Gate::Swap { a, b } => {
            let _ = write!(out, "{mnemonic}  {a}  {b}{}", wide_if(ctrls));
        }
        Gate::MpY {
            target,
            mux,
            angles,
        } => {
            let mut m = mux.clone();
            m.sort_by_key(|c| Reverse(c.bit));
            let mut toks: Vec<String> = m.iter().map(|c| format!("{}({}", c.bit, c.name)).collect();
            toks.extend(sorted_desc(ctrls).iter().map(control_token));
            let a: Vec<String> = angles.iter().map(|&x| format_angle(x)).collect();
            let _ = write!(
                out,
                "{mnemonic}  AT  {target} IF {} BY {}",
                toks.join(" "),
                a.join(" ")
            );
        }
    }
}

/// One line per instruction, each terminated by `\n`.
pub fn write_english(circuit: &Circuit) -> String {
    let mut out = String::new();
    for ins in circuit.body() {
        match ins {
            Instruction::Loop { label, reps } => {
                let _ = write!(out, "LOOP {label} REPS: {reps}");
            }
            Instruction::Next { label } => {
                let _ = write!(out, "NEXT {label}");
            }
            Instruction::Op(op) => write_op(&mut out, op),
        }
        out.push('\n');
    }
    out
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParseError {
    #[error("line {line}: unknown opcode `{token}`")]
    UnknownOpcode { line: usize, token: String },
    #[error("line {line}: unexpected token `{token}` ({expected})")]
    Unexpected {
        line: usize,
        token: String,
        expected: &'static str,
    },
    #[error("line {line}: unexpected end of line ({expected})")]
    EndOfLine { line: usize, expected: &'static str },
    #[error("line {line}: {source}")]
    Structure {
        line: usize,
        #[source]
        source: IrError,
    },
}

impl ParseError {
    pub fn line(&self) -> usize {
        match self {
            ParseError::UnknownOpcode { line, .. }
            | ParseError::Unexpected { line, .. }
            | ParseError::EndOfLine { line, .. }
            | ParseError::Structure { line, .. } => *line,
        }
    }
}

struct Tokens<'a> {
    line: usize,
    toks: Vec<&'a str>,
    pos: usize,
}

impl<'a> Tokens<'a> {
    fn next(&mut self, expected: &'static str) -> Result<&'a str, ParseError> {
        let t = self
            .toks
            .get(self.pos)
            .copied()
            .ok_or(ParseError::EndOfLine {
                line: self.line,
                expected,
            })?;
        self.pos += 1;
        Ok(t)
    }

    fn peek(&self) -> Option<&'a str> {
        self.toks.get(self.pos).copied()
    }

    fn err(&self, token: &str, expected: &'static str) -> ParseError {
        ParseError::Unexpected {
            line: self.line,
            token: token.to_string(),
            expected,
        }
    }

    fn keyword(&mut self, kw: &'static str) -> Result<(), ParseError> {
        let t = self.next(kw)?;
        if t == kw {
            Ok(())
        } else {
            Err(self.err(t, kw))
        }
    }

    fn uint<T: std::str::FromStr>(&mut self, expected: &'static str) -> Result<T, ParseError> {
        let t = self.next(expected)?;
        t.parse().map_err(|_| self.err(t, expected))
    }

    fn angle(&mut self) -> Result<f64, ParseError> {
        let t = self.next("angle in degrees")?;
        match t.parse::<f64>() {
            Ok(v) if v.is_finite() => Ok(v),
            _ => Err(self.err(t, "angle in degrees")),
        }
    }

    fn finish(&self) -> Result<(), ParseError> {
        match self.peek() {
            None => Ok(()),
            Some(t) => Err(self.err(t, "end of line")),
        }
    }

    fn control(&self, t: &str) -> Result<Control, ParseError> {
        let (num, polarity) = if let Some(n) = t.strip_suffix('T') {
            (n, true)
        } else if let Some(n) = t.strip_suffix('F') {
            (n, false)
        } else {
            return Err(self.err(t, "control like `3T` or `2F`"));
        };
        let bit = num
            .parse()
            .map_err(|_| self.err(t, "control like `3T` or `2F`"))?;
        Ok(Control { bit, polarity })
    }

    fn optional_controls(&mut self) -> Result<Vec<Control>, ParseError> {
        if self.peek().is_none() {
            return Ok(Vec::new());
        }
        self.keyword("IF")?;
        let mut v = Vec::new();
        while let Some(t) = self.peek() {
            self.pos += 1;
            v.push(self.control(t)?);
        }
        if v.is_empty() {
            return Err(ParseError::EndOfLine {
                line: self.line,
                expected: "controls after IF",
            });
        }
        Ok(v)
    }

    fn target(&mut self) -> Result<BitIndex, ParseError> {
        self.keyword("AT")?;
        self.uint("target bit")
    }
}

fn parse_op(t: &mut Tokens, opcode: Opcode) -> Result<Operation, ParseError> {
    let fixed = |kind, t: &mut Tokens| -> Result<Gate, ParseError> {
        Ok(Gate::Fixed {
            kind,
            target: t.target()?,
        })
    };
    let rot = |axis, t: &mut Tokens| -> Result<Gate, ParseError> {
        let angle = t.angle()?;
        Ok(Gate::Rot {
            axis,
            angle,
            target: t.target()?,
        })
    };
    let gate = match opcode {
        Opcode::SigX => fixed(Fixed::X, t)?,
        Opcode::SigY => fixed(Fixed::Y, t)?,
        Opcode::SigZ => fixed(Fixed::Z, t)?,
        Opcode::Had2 => fixed(Fixed::H, t)?,
        Opcode::RotX => rot(Axis::X, t)?,
        Opcode::RotY => rot(Axis::Y, t)?,
        Opcode::RotZ => rot(Axis::Z, t)?,
        Opcode::RotN => {
            let angles = [t.angle()?, t.angle()?, t.angle()?];
            Gate::RotN {
                angles,
                target: t.target()?,
            }
        }
        Opcode::Phas => Gate::Phas { angle: t.angle()? },
        Opcode::P0Ph => {
            let angle = t.angle()?;
            Gate::P0Ph {
                angle,
                target: t.target()?,
            }
        }
        Opcode::P1Ph => {
            let angle = t.angle()?;
            Gate::P1Ph {
                angle,
                target: t.target()?,
            }
        }
        Opcode::Swap => Gate::Swap {
            a: t.uint("first swapped bit")?,
            b: t.uint("second swapped bit")?,
        },
        Opcode::MpY => return parse_mux(t),
        Opcode::Loop | Opcode::Next => unreachable!("loop markers handled by caller"),
    };
    let controls = t.optional_controls()?;
    t.finish()?;
    Ok(Operation::with_controls(gate, controls))
}

fn parse_mux(t: &mut Tokens) -> Result<Operation, ParseError> {
    let target = t.target()?;
    t.keyword("IF")?;
    let mut mux = Vec::new();
    let mut controls = Vec::new();
    loop {
        let tok = t.next("multiplexor controls then BY")?;
        if tok == "BY" {
            break;
        }
        if let Some((bit, name)) = tok.split_once('(') {
            match (bit.parse(), name.parse()) {
                (Ok(bit), Ok(name)) => mux.push(MuxControl { bit, name }),
                _ => return Err(t.err(tok, "multiplexor control like `2(1`")),
            }
        } else {
            controls.push(t.control(tok)?);
        }
    }
    let mut angles = Vec::new();
    while t.peek().is_some() {
        angles.push(t.angle()?);
    }
    Ok(Operation::with_controls(
        Gate::MpY {
            target,
            mux,
            angles,
        },
        controls,
    ))
}

fn parse_loop(t: &mut Tokens) -> Result<Instruction, ParseError> {
    let label = t.uint("loop label")?;
    let tok = t.next("REPS:")?;
    let reps_text = match tok.strip_prefix("REPS:") {
        Some("") => t.next("repetition count")?,
        Some(rest) => rest,
        None => return Err(t.err(tok, "REPS:")),
    };
    let reps = reps_text
        .parse()
        .map_err(|_| t.err(reps_text, "repetition count"))?;
    t.finish()?;
    Ok(Instruction::Loop { label, reps })
}

/// Parses an English file. Without `num_qubits` the count is inferred as one
/// more than the largest bit index used.
///
/// Blank lines are skipped; loop labels refer to the index among non-blank
/// lines.
pub fn parse_english(text: &str, num_qubits: Option<usize>) -> Result<Circuit, ParseError> {
    let mut body = Vec::new();
    let mut lines = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let toks: Vec<&str> = raw.split_whitespace().collect();
        if toks.is_empty() {
            continue;
        }
        let mut t = Tokens { line, toks, pos: 0 };
        let head = t.next("opcode")?;
        let opcode = Opcode::from_mnemonic(head).ok_or_else(|| ParseError::UnknownOpcode {
            line,
            token: head.to_string(),
        })?;
        let ins = match opcode {
            Opcode::Loop => parse_loop(&mut t)?,
            Opcode::Next => {
                let label = t.uint("loop label")?;
                t.finish()?;
                Instruction::Next { label }
            }
            _ => Instruction::Op(parse_op(&mut t, opcode)?),
        };
        body.push(ins);
        lines.push(line);
    }
    let inferred = body
        .iter()
        .filter_map(|ins| match ins {
            Instruction::Op(op) => op.bits().into_iter().max(),
            _ => None,
        })
        .max()
        .map_or(1, |b| b + 1);
    let n = num_qubits.unwrap_or(inferred);
    Circuit::new(n, body).map_err(|source| {
        let line = error_line(&source, &lines);
        ParseError::Structure { line, source }
    })
}

fn error_line(err: &IrError, lines: &[usize]) -> usize {
    let idx = match err {
        IrError::LoopLabel { line, .. } | IrError::UnmatchedNext { line, .. } => Some(*line),
        IrError::ZeroReps(line) | IrError::UnclosedLoop(line) => Some(*line),
        _ => None,
    };
    idx.and_then(|i| lines.get(i).copied()).unwrap_or(0)
}
