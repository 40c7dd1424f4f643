//! Pauli strings in symplectic form.
//!
//! A string on `n` qubits is stored as two bitvectors, `x` and `z`, plus a
//! global phase `i^phase`. Qubit `k` carries
//!
//! | x | z | operator |
//! |---|---|----------|
//! | 0 | 0 | I |
//! | 1 | 0 | X |
//! | 1 | 1 | Y |
//! | 0 | 1 | Z |
//!
//! so weight is a popcount of `x | z` and commutation is the parity of the
//! symplectic form. The dense text form lists qubit `n-1` first, e.g. `XYIZ`
//! is `X3 Y2 Z0` in compact form.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

const WORD: usize = 64;

/// A single-qubit Pauli operator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

/// How a single-qubit Pauli acts on `|0⟩`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ZeroAction {
    /// `I|0⟩ = Z|0⟩ = |0⟩`
    KeepZero,
    /// `X|0⟩ = |1⟩`
    FlipToOne,
    /// `Y|0⟩ = i|1⟩`
    FlipToOneWithPhaseI,
}

impl Pauli {
    pub const ALL: [Pauli; 4] = [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z];

    pub fn from_bits(x: bool, z: bool) -> Self {
        match (x, z) {
            (false, false) => Pauli::I,
            (true, false) => Pauli::X,
            (true, true) => Pauli::Y,
            (false, true) => Pauli::Z,
        }
    }

    /// `(x, z)` symplectic bits.
    pub fn bits(self) -> (bool, bool) {
        match self {
            Pauli::I => (false, false),
            Pauli::X => (true, false),
            Pauli::Y => (true, true),
            Pauli::Z => (false, true),
        }
    }

    /// Product `self · other = i^phase · result`.
    pub fn product(self, other: Pauli) -> (u8, Pauli) {
        use Pauli::*;
        match (self, other) {
            (I, p) | (p, I) => (0, p),
            (a, b) if a == b => (0, I),
            (X, Y) => (1, Z),
            (Y, Z) => (1, X),
            (Z, X) => (1, Y),
            (Y, X) => (3, Z),
            (Z, Y) => (3, X),
            (X, Z) => (3, Y),
            _ => unreachable!(),
        }
    }

    pub fn action_on_zero(self) -> ZeroAction {
        match self {
            Pauli::I | Pauli::Z => ZeroAction::KeepZero,
            Pauli::X => ZeroAction::FlipToOne,
            Pauli::Y => ZeroAction::FlipToOneWithPhaseI,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }

    pub fn from_char(c: char) -> Option<Self> {
        match c {
            'I' => Some(Pauli::I),
            'X' => Some(Pauli::X),
            'Y' => Some(Pauli::Y),
            'Z' => Some(Pauli::Z),
            _ => None,
        }
    }
}

/// Tensor product of single-qubit Paulis times a power of `i`.
///
/// Ordering (used for canonical term order) compares the qubit count, then
/// the z bits, then the x bits, then the phase.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PauliString {
    n_qubits: usize,
    z: Vec<u64>,
    x: Vec<u64>,
    phase: u8,
}

fn words_for(n: usize) -> usize {
    n.div_ceil(WORD)
}

impl PauliString {
    pub fn identity(n_qubits: usize) -> Self {
        let w = words_for(n_qubits);
        Self { n_qubits, z: vec![0; w], x: vec![0; w], phase: 0 }
    }

    /// A string with `op` on `qubit` and identity elsewhere.
    pub fn single(n_qubits: usize, qubit: usize, op: Pauli) -> Self {
        let mut s = Self::identity(n_qubits);
        s.set(qubit, op);
        s
    }

    /// Builds a string from `(qubit, op)` pairs; later entries overwrite earlier ones.
    pub fn from_ops<I>(n_qubits: usize, ops: I) -> Self
    where
        I: IntoIterator<Item = (usize, Pauli)>,
    {
        let mut s = Self::identity(n_qubits);
        for (q, p) in ops {
            s.set(q, p);
        }
        s
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    /// Global phase as a power of `i`, in `0..4`.
    pub fn phase_exp(&self) -> u8 {
        self.phase
    }

    pub fn with_phase(mut self, phase_exp: u8) -> Self {
        self.phase = phase_exp % 4;
        self
    }

    /// The same operator content with the phase reset to `i^0`.
    pub fn without_phase(&self) -> Self {
        Self { phase: 0, ..self.clone() }
    }

    pub fn x_words(&self) -> &[u64] {
        &self.x
    }

    pub fn z_words(&self) -> &[u64] {
        &self.z
    }

    pub fn get(&self, qubit: usize) -> Pauli {
        assert!(qubit < self.n_qubits, "qubit {qubit} out of range for {} qubits", self.n_qubits);
        let (w, b) = (qubit / WORD, qubit % WORD);
        Pauli::from_bits((self.x[w] >> b) & 1 == 1, (self.z[w] >> b) & 1 == 1)
    }

    pub fn set(&mut self, qubit: usize, op: Pauli) {
        assert!(qubit < self.n_qubits, "qubit {qubit} out of range for {} qubits", self.n_qubits);
        let (w, b) = (qubit / WORD, qubit % WORD);
        let (x, z) = op.bits();
        let mask = 1u64 << b;
        self.x[w] = (self.x[w] & !mask) | if x { mask } else { 0 };
        self.z[w] = (self.z[w] & !mask) | if z { mask } else { 0 };
    }

    /// Number of non-identity positions. Phase is ignored.
    pub fn weight(&self) -> usize {
        self.x.iter().zip(&self.z).map(|(x, z)| (x | z).count_ones() as usize).sum()
    }

    /// True when every position is `I` (the phase may be anything).
    pub fn is_identity(&self) -> bool {
        self.x.iter().chain(&self.z).all(|&w| w == 0)
    }

    /// Qubits holding a non-identity operator, ascending.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.x.iter().zip(&self.z).enumerate().flat_map(|(wi, (x, z))| {
            let mut bits = x | z;
            std::iter::from_fn(move || {
                if bits == 0 {
                    return None;
                }
                let b = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(wi * WORD + b)
            })
        })
    }

    /// `(qubit, op)` for each non-identity position, ascending by qubit.
    pub fn ops(&self) -> impl Iterator<Item = (usize, Pauli)> + '_ {
        self.support().map(move |q| (q, self.get(q)))
    }

    fn check_len(&self, other: &Self) -> Result<()> {
        if self.n_qubits != other.n_qubits {
            return Err(Error::LengthMismatch { left: self.n_qubits, right: other.n_qubits });
        }
        Ok(())
    }

    /// Group product `self · other` with exact phase.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.check_len(other)?;
        let mut phase = i64::from(self.phase) + i64::from(other.phase);
        let mut x = Vec::with_capacity(self.x.len());
        let mut z = Vec::with_capacity(self.z.len());
        for i in 0..self.x.len() {
            let (ax, az, bx, bz) = (self.x[i], self.z[i], other.x[i], other.z[i]);
            let (a_x, a_y, a_z) = (ax & !az, ax & az, !ax & az);
            let (b_x, b_y, b_z) = (bx & !bz, bx & bz, !bx & bz);
            // XY = iZ, YZ = iX, ZX = iY and the reversed products carry -i.
            let pos = (a_x & b_y) | (a_y & b_z) | (a_z & b_x);
            let neg = (a_y & b_x) | (a_z & b_y) | (a_x & b_z);
            phase += i64::from(pos.count_ones()) - i64::from(neg.count_ones());
            x.push(ax ^ bx);
            z.push(az ^ bz);
        }
        Ok(Self { n_qubits: self.n_qubits, z, x, phase: phase.rem_euclid(4) as u8 })
    }

    /// Parity of the symplectic inner product.
    pub fn anticommutes(&self, other: &Self) -> Result<bool> {
        self.check_len(other)?;
        let mut parity = 0u32;
        for i in 0..self.x.len() {
            parity ^= ((self.x[i] & other.z[i]) ^ (self.z[i] & other.x[i])).count_ones() & 1;
        }
        Ok(parity == 1)
    }

    /// Dense form without phase, highest qubit first.
    pub fn to_dense(&self) -> String {
        (0..self.n_qubits).rev().map(|q| self.get(q).as_char()).collect()
    }

    /// Compact form without phase, e.g. `X3 Y2 Z0`. The identity renders as `I`.
    pub fn to_compact(&self) -> String {
        if self.is_identity() {
            return "I".to_string();
        }
        let mut ops: Vec<_> = self.ops().collect();
        ops.reverse();
        ops.iter().map(|(q, p)| format!("{}{}", p.as_char(), q)).collect::<Vec<_>>().join(" ")
    }

    /// Parses the dense form. An optional phase prefix (`+`, `-`, `i`, `+i`, `-i`) is accepted.
    pub fn parse_dense(text: &str) -> Result<Self> {
        let t = text.trim();
        let (phase, body) = split_phase(t);
        if body.is_empty() {
            return Err(syntax(text, "empty string"));
        }
        let n = body.chars().count();
        let mut s = Self::identity(n);
        for (i, c) in body.chars().enumerate() {
            let p = Pauli::from_char(c).ok_or_else(|| syntax(text, &format!("unexpected character {c:?}")))?;
            s.set(n - 1 - i, p);
        }
        Ok(s.with_phase(phase))
    }

    /// Parses the compact form (`X3 Y2 Z0`, `I` for identity) on `n_qubits` qubits.
    pub fn parse_compact(text: &str, n_qubits: usize) -> Result<Self> {
        let t = text.trim();
        let (phase, body) = split_phase(t);
        let mut s = Self::identity(n_qubits);
        let mut seen = vec![false; n_qubits];
        for tok in body.split_whitespace() {
            if tok == "I" {
                continue;
            }
            let mut chars = tok.chars();
            let p = chars
                .next()
                .and_then(Pauli::from_char)
                .ok_or_else(|| syntax(text, &format!("bad token {tok:?}")))?;
            let q: usize = chars.as_str().parse().map_err(|_| syntax(text, &format!("bad qubit index in {tok:?}")))?;
            if q >= n_qubits {
                return Err(syntax(text, &format!("qubit {q} out of range for {n_qubits} qubits")));
            }
            if std::mem::replace(&mut seen[q], true) {
                return Err(syntax(text, &format!("qubit {q} listed twice")));
            }
            s.set(q, p);
        }
        Ok(s.with_phase(phase))
    }
}

fn syntax(text: &str, reason: &str) -> Error {
    Error::PauliSyntax { text: text.to_string(), reason: reason.to_string() }
}

fn split_phase(t: &str) -> (u8, &str) {
    for (prefix, phase) in [("+i", 1), ("-i", 3), ("i", 1), ("+", 0), ("-", 2)] {
        if let Some(rest) = t.strip_prefix(prefix) {
            return (phase, rest.trim_start());
        }
    }
    (0, t)
}

impl PartialOrd for PauliString {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for PauliString {
    fn cmp(&self, other: &Self) -> Ordering {
        self.n_qubits
            .cmp(&other.n_qubits)
            .then_with(|| self.z.cmp(&other.z))
            .then_with(|| self.x.cmp(&other.x))
            .then_with(|| self.phase.cmp(&other.phase))
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let prefix = ["", "i", "-", "-i"][usize::from(self.phase)];
        write!(f, "{prefix}{}", self.to_dense())
    }
}

impl fmt::Debug for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PauliString({self})")
    }
}

impl FromStr for PauliString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse_dense(s)
    }
}
