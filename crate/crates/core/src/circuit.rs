//! Trotter circuits over `{H, RX, RZ, CNOT}`, gate metrics and OpenQASM 2.0 text.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::apply::QubitHamiltonian;
use crate::error::{Error, Result};
use crate::fermion::HERMITIAN_TOL;
use crate::pauli::{Pauli, PauliString};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Gate {
    H(usize),
    /// `exp(-i θ X / 2)`
    RX(usize, f64),
    /// `exp(-i θ Z / 2)`
    RZ(usize, f64),
    CNOT { control: usize, target: usize },
}

impl Gate {
    pub fn qubits(&self) -> Vec<usize> {
        match *self {
            Gate::H(q) | Gate::RX(q, _) | Gate::RZ(q, _) => vec![q],
            Gate::CNOT { control, target } => vec![control, target],
        }
    }

    pub fn is_two_qubit(&self) -> bool {
        matches!(self, Gate::CNOT { .. })
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Circuit {
    n_qubits: usize,
    gates: Vec<Gate>,
}

impl Circuit {
    pub fn new(n_qubits: usize) -> Self {
        Self { n_qubits, gates: Vec::new() }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn push(&mut self, g: Gate) -> Result<()> {
        let qs = g.qubits();
        if let Some(&q) = qs.iter().find(|&&q| q >= self.n_qubits) {
            return Err(Error::InvalidArgument(format!("gate on qubit {q} in a {}-qubit circuit", self.n_qubits)));
        }
        if qs.len() == 2 && qs[0] == qs[1] {
            return Err(Error::InvalidArgument("CNOT control equals target".into()));
        }
        self.gates.push(g);
        Ok(())
    }

    pub fn extend(&mut self, gates: impl IntoIterator<Item = Gate>) -> Result<()> {
        gates.into_iter().try_for_each(|g| self.push(g))
    }
}

/// Gates for `exp(-i θ S)`.
///
/// The target is the lowest involved qubit. `Y` positions are rotated with
/// `RX(π/2)` before the CNOT ladder and `RX(-π/2)` after, which maps `Z` onto
/// `+Y`. A `-1` phase on `S` flips the sign of `θ`.
pub fn trotter_term(s: &PauliString, theta: f64) -> Result<Vec<Gate>> {
    let theta = match s.phase_exp() {
        0 => theta,
        2 => -theta,
        _ => return Err(Error::NonHermitian(format!("string {s} has an imaginary phase"))),
    };
    let support: Vec<usize> = s.support().collect();
    let Some(&target) = support.first() else {
        return Err(Error::InvalidArgument("identity string has no rotation circuit".into()));
    };
    // highest qubit first, as in the usual ladder drawing
    let others: Vec<usize> = support[1..].iter().rev().copied().collect();
    let mut pre = Vec::new();
    let mut post = Vec::new();
    for &q in support.iter().rev() {
        match s.get(q) {
            Pauli::X => {
                pre.push(Gate::H(q));
                post.push(Gate::H(q));
            }
            Pauli::Y => {
                pre.push(Gate::RX(q, std::f64::consts::FRAC_PI_2));
                post.push(Gate::RX(q, -std::f64::consts::FRAC_PI_2));
            }
            _ => {}
        }
    }
    post.reverse();
    let ladder: Vec<Gate> = others.iter().map(|&c| Gate::CNOT { control: c, target }).collect();
    let mut gates = pre;
    gates.extend(ladder.iter().copied());
    gates.push(Gate::RZ(target, 2.0 * theta));
    gates.extend(ladder.iter().rev().copied());
    gates.extend(post);
    Ok(gates)
}

/// `n_steps` first-order Trotter steps of `exp(-i H t)`; identity terms are
/// skipped since they only add a global phase.
pub fn trotterize(q: &QubitHamiltonian, t: f64, n_steps: usize) -> Result<Circuit> {
    if n_steps == 0 {
        return Err(Error::InvalidArgument("n_steps must be at least 1".into()));
    }
    if let Some((s, c)) = q.terms().find(|(_, c)| c.im.abs() > HERMITIAN_TOL) {
        return Err(Error::NonHermitian(format!("coefficient {c} on {s}")));
    }
    let mut block = Vec::new();
    for (s, c) in q.terms() {
        if s.is_identity() {
            continue;
        }
        block.extend(trotter_term(s, c.re * t / n_steps as f64)?);
    }
    let mut circuit = Circuit::new(q.n_qubits());
    for _ in 0..n_steps {
        circuit.extend(block.iter().copied())?;
    }
    Ok(circuit)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct CircuitMetrics {
    pub cnot_count: usize,
    pub single_qubit_count: usize,
    pub depth: usize,
}

impl CircuitMetrics {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("metrics serialize")
    }
}

/// Counts by kind; depth from ASAP scheduling in gate order, one slot per gate.
pub fn metrics(c: &Circuit) -> CircuitMetrics {
    let mut level = vec![0usize; c.n_qubits()];
    let mut m = CircuitMetrics::default();
    for g in c.gates() {
        if g.is_two_qubit() {
            m.cnot_count += 1;
        } else {
            m.single_qubit_count += 1;
        }
        let qs = g.qubits();
        let slot = qs.iter().map(|&q| level[q]).max().unwrap_or(0) + 1;
        for q in qs {
            level[q] = slot;
        }
        m.depth = m.depth.max(slot);
    }
    m
}

/// `Σ 2(w - 1)` over non-identity terms: the CNOT count of one Trotter step.
pub fn expected_cnots_per_step(q: &QubitHamiltonian) -> usize {
    q.terms().map(|(s, _)| s.weight()).filter(|&w| w >= 1).map(|w| 2 * (w - 1)).sum()
}

pub fn emit_qasm(c: &Circuit) -> String {
    let mut out = String::from("OPENQASM 2.0;\ninclude \"qelib1.inc\";\n");
    writeln!(out, "qreg q[{}];", c.n_qubits()).unwrap();
    for g in c.gates() {
        match *g {
            Gate::H(q) => writeln!(out, "h q[{q}];"),
            Gate::RX(q, a) => writeln!(out, "rx({a:?}) q[{q}];"),
            Gate::RZ(q, a) => writeln!(out, "rz({a:?}) q[{q}];"),
            Gate::CNOT { control, target } => writeln!(out, "cx q[{control}],q[{target}];"),
        }
        .unwrap();
    }
    out
}

/// Reads the subset of OpenQASM 2.0 written by [`emit_qasm`].
pub fn parse_qasm(text: &str) -> Result<Circuit> {
    let mut circuit: Option<Circuit> = None;
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split("//").next().unwrap_or("").trim();
        if line.is_empty() || line.starts_with("OPENQASM") || line.starts_with("include") {
            continue;
        }
        let err = |message: &str| Error::Parse { line: i + 1, message: format!("{message}: {line:?}") };
        let body = line.strip_suffix(';').ok_or_else(|| err("missing ';'"))?;
        if let Some(rest) = body.strip_prefix("qreg ") {
            let n = parse_qubit(rest).ok_or_else(|| err("bad register"))?;
            circuit = Some(Circuit::new(n));
            continue;
        }
        let c = circuit.as_mut().ok_or_else(|| err("gate before qreg"))?;
        let (head, args) = body.split_once(' ').ok_or_else(|| err("missing operands"))?;
        let (name, angle) = match head.split_once('(') {
            Some((n, a)) => {
                let a = a.strip_suffix(')').ok_or_else(|| err("bad angle"))?;
                (n, Some(a.trim().parse::<f64>().map_err(|_| err("bad angle"))?))
            }
            None => (head, None),
        };
        let qubits = args.split(',').map(|a| parse_qubit(a.trim())).collect::<Option<Vec<_>>>().ok_or_else(|| err("bad operand"))?;
        let gate = match (name, angle, qubits.as_slice()) {
            ("h", None, &[q]) => Gate::H(q),
            ("rx", Some(a), &[q]) => Gate::RX(q, a),
            ("rz", Some(a), &[q]) => Gate::RZ(q, a),
            ("cx", None, &[control, target]) => Gate::CNOT { control, target },
            _ => return Err(err("unsupported gate")),
        };
        c.push(gate).map_err(|e| err(&e.to_string()))?;
    }
    Ok(circuit.unwrap_or_default())
}

fn parse_qubit(s: &str) -> Option<usize> {
    s.strip_prefix("q[")?.strip_suffix(']')?.parse().ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;
    use std::f64::consts::FRAC_PI_2;

    fn s(text: &str) -> PauliString {
        text.parse().unwrap()
    }

    #[test]
    fn four_qubit_snippet() {
        let g = trotter_term(&s("XYIZ"), 0.3).unwrap();
        let cx = |c| Gate::CNOT { control: c, target: 0 };
        assert_eq!(
            g,
            vec![
                Gate::H(3),
                Gate::RX(2, FRAC_PI_2),
                cx(3),
                cx(2),
                Gate::RZ(0, 0.6),
                cx(2),
                cx(3),
                Gate::RX(2, -FRAC_PI_2),
                Gate::H(3),
            ]
        );
        let mut c = Circuit::new(4);
        c.extend(g).unwrap();
        let m = metrics(&c);
        assert_eq!((m.cnot_count, m.single_qubit_count), (4, 5));
        // H/RX in parallel, then 2 CNOTs, RZ, 2 CNOTs, RX/H in parallel
        assert_eq!(m.depth, 7);
    }

    #[test]
    fn small_snippets() {
        assert_eq!(trotter_term(&s("Z"), 0.5).unwrap(), vec![Gate::RZ(0, 1.0)]);
        let cx = Gate::CNOT { control: 1, target: 0 };
        assert_eq!(trotter_term(&s("ZZ"), 0.5).unwrap(), vec![cx, Gate::RZ(0, 1.0), cx]);
        assert!(trotter_term(&s("II"), 0.5).is_err());
        assert_eq!(trotter_term(&s("-Z"), 0.5).unwrap(), vec![Gate::RZ(0, -1.0)]);
        assert!(trotter_term(&s("iZ"), 0.5).is_err());
    }

    #[test]
    fn trotterize_examples() {
        let empty = QubitHamiltonian::new(2);
        assert!(trotterize(&empty, 1.0, 1).unwrap().gates().is_empty());

        let z = QubitHamiltonian::from_terms(1, [(Complex64::new(1.0, 0.0), s("Z"))], 0.0).unwrap();
        let c = trotterize(&z, std::f64::consts::PI, 1).unwrap();
        assert_eq!(c.gates(), &[Gate::RZ(0, 2.0 * std::f64::consts::PI)]);
        assert!(trotterize(&z, 1.0, 0).is_err());

        let bad = QubitHamiltonian::from_terms(1, [(Complex64::new(0.0, 1.0), s("Z"))], 0.0).unwrap();
        assert!(trotterize(&bad, 1.0, 1).is_err());
    }

    #[test]
    fn cnot_identity_over_steps() {
        let terms = ["II", "IZ", "ZI", "ZZ"].map(|t| (Complex64::new(0.5, 0.0), s(t)));
        let q = QubitHamiltonian::from_terms(2, terms, 0.0).unwrap();
        for n in 1..4 {
            let m = metrics(&trotterize(&q, 1.0, n).unwrap());
            assert_eq!(m.cnot_count, n * expected_cnots_per_step(&q));
        }
        assert_eq!(expected_cnots_per_step(&q), 2);
    }

    #[test]
    fn metrics_edge_cases() {
        assert_eq!(metrics(&Circuit::new(3)), CircuitMetrics::default());
        let mut c = Circuit::new(2);
        c.extend([Gate::RZ(0, 1.0), Gate::RZ(1, 1.0)]).unwrap();
        assert_eq!(metrics(&c).depth, 1);
        assert!(c.push(Gate::CNOT { control: 1, target: 1 }).is_err());
        assert!(c.push(Gate::H(2)).is_err());
    }

    #[test]
    fn qasm_round_trip() {
        let mut c = Circuit::new(4);
        c.extend(trotter_term(&s("XYIZ"), 0.123456789).unwrap()).unwrap();
        let text = emit_qasm(&c);
        assert!(text.contains("qreg q[4];"));
        assert!(text.contains("cx q[3],q[0];"));
        assert!(text.contains("rz(0.246913578) q[0];"));
        assert_eq!(parse_qasm(&text).unwrap(), c);
        assert!(parse_qasm("qreg q[1];\nfoo q[0];\n").is_err());
    }
}
