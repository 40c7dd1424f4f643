//! Dense-matrix oracles and exhaustive searches used by the test suites.
//!
//! Everything here is deliberately naive: it rebuilds operators as explicit
//! matrices or enumerates every tree, so it can check the fast paths.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::seq::index::sample;
use rand::Rng;

use crate::apply::{map_hamiltonian, weight_report, QubitHamiltonian};
use crate::circuit::{Circuit, Gate};
use crate::error::{Error, Result};
use crate::fermion::{MajoranaHamiltonian, HERMITIAN_TOL};
use crate::mapping::{Mapping, Method};
use crate::pauli::{Pauli, PauliString};
use crate::tree::TernaryTree;

pub type DenseOperator = DMatrix<Complex64>;

/// Largest register turned into a dense matrix.
pub const MAX_DENSE_QUBITS: usize = 12;
/// Largest register handed to the eigensolver.
pub const MAX_SPECTRUM_QUBITS: usize = 10;
/// Largest mode count for the exhaustive tree search.
pub const MAX_BRUTE_FORCE_MODES: usize = 3;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

fn guard(n: usize, limit: usize, what: &'static str) -> Result<()> {
    if n > limit {
        return Err(Error::TooLarge { what, limit });
    }
    Ok(())
}

fn single(p: Pauli) -> DenseOperator {
    let m = match p {
        Pauli::I => [ONE, ZERO, ZERO, ONE],
        Pauli::X => [ZERO, ONE, ONE, ZERO],
        Pauli::Y => [ZERO, -I, I, ZERO],
        Pauli::Z => [ONE, ZERO, ZERO, -ONE],
    };
    DMatrix::from_row_slice(2, 2, &m)
}

/// `i^phase · σ_{n-1} ⊗ … ⊗ σ_0`, so qubit `k` is bit `k` of the basis index.
pub fn string_to_matrix(s: &PauliString) -> Result<DenseOperator> {
    guard(s.n_qubits(), MAX_DENSE_QUBITS, "qubits for a dense matrix")?;
    let mut m = DMatrix::from_element(1, 1, I.powu(u32::from(s.phase_exp())));
    for q in (0..s.n_qubits()).rev() {
        m = m.kronecker(&single(s.get(q)));
    }
    Ok(m)
}

pub fn hamiltonian_to_matrix(q: &QubitHamiltonian) -> Result<DenseOperator> {
    guard(q.n_qubits(), MAX_DENSE_QUBITS, "qubits for a dense matrix")?;
    let dim = 1usize << q.n_qubits();
    let mut h = DMatrix::zeros(dim, dim);
    for (s, c) in q.terms() {
        h += string_to_matrix(s)? * c;
    }
    Ok(h)
}

/// Applies one gate in place to a state vector.
pub fn apply_gate(state: &mut [Complex64], g: &Gate) {
    let pair = |q: usize, state: &mut [Complex64], u: [Complex64; 4]| {
        let bit = 1 << q;
        for i in 0..state.len() {
            if i & bit == 0 {
                let (a, b) = (state[i], state[i | bit]);
                state[i] = u[0] * a + u[1] * b;
                state[i | bit] = u[2] * a + u[3] * b;
            }
        }
    };
    match *g {
        Gate::H(q) => {
            let h = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
            pair(q, state, [h, h, h, -h]);
        }
        Gate::RX(q, a) => {
            let (c, s) = (Complex64::new((a / 2.0).cos(), 0.0), Complex64::new(0.0, -(a / 2.0).sin()));
            pair(q, state, [c, s, s, c]);
        }
        Gate::RZ(q, a) => {
            let e = Complex64::from_polar(1.0, -a / 2.0);
            pair(q, state, [e, ZERO, ZERO, e.conj()]);
        }
        Gate::CNOT { control, target } => {
            let (cb, tb) = (1 << control, 1 << target);
            for i in 0..state.len() {
                if i & cb != 0 && i & tb == 0 {
                    state.swap(i, i | tb);
                }
            }
        }
    }
}

/// The unitary of a circuit, built column by column.
pub fn circuit_unitary(c: &Circuit) -> Result<DenseOperator> {
    guard(c.n_qubits(), MAX_DENSE_QUBITS, "qubits for a dense matrix")?;
    let dim = 1usize << c.n_qubits();
    let mut u = DMatrix::zeros(dim, dim);
    for col in 0..dim {
        let mut state = vec![ZERO; dim];
        state[col] = ONE;
        for g in c.gates() {
            apply_gate(&mut state, g);
        }
        for (row, v) in state.into_iter().enumerate() {
            u[(row, col)] = v;
        }
    }
    Ok(u)
}

/// `exp(-i θ S) = cos θ · I - i sin θ · S` for a Hermitian string `S`.
pub fn pauli_exponential(s: &PauliString, theta: f64) -> Result<DenseOperator> {
    let m = string_to_matrix(s)?;
    let dim = m.nrows();
    Ok(DMatrix::identity(dim, dim) * Complex64::new(theta.cos(), 0.0) + m * Complex64::new(0.0, -theta.sin()))
}

pub fn max_abs_diff(a: &DenseOperator, b: &DenseOperator) -> f64 {
    (a - b).iter().map(|z| z.norm()).fold(0.0, f64::max)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AlgebraCheck {
    /// Pairwise anticommutation, no identity, no duplicates, on bit vectors.
    Symplectic,
    /// `{S_i, S_j} = 2 δ_ij I` on dense matrices.
    Matrix,
}

pub fn check_majorana_algebra(m: &Mapping, mode: AlgebraCheck) -> Result<bool> {
    let s = m.strings();
    match mode {
        AlgebraCheck::Symplectic => {
            for (i, a) in s.iter().enumerate() {
                if a.is_identity() || a.phase_exp() % 2 == 1 {
                    return Ok(false);
                }
                for b in &s[i + 1..] {
                    if a.without_phase() == b.without_phase() || !a.anticommutes(b)? {
                        return Ok(false);
                    }
                }
            }
            Ok(true)
        }
        AlgebraCheck::Matrix => {
            let mats = s.iter().map(string_to_matrix).collect::<Result<Vec<_>>>()?;
            let dim = 1usize << m.n_modes();
            let two_i = DMatrix::<Complex64>::identity(dim, dim) * Complex64::new(2.0, 0.0);
            let zero = DMatrix::<Complex64>::zeros(dim, dim);
            for i in 0..mats.len() {
                for j in i..mats.len() {
                    let anti = &mats[i] * &mats[j] + &mats[j] * &mats[i];
                    let want = if i == j { &two_i } else { &zero };
                    if max_abs_diff(&anti, want) > 1e-10 {
                        return Ok(false);
                    }
                }
            }
            Ok(true)
        }
    }
}

/// Whether `(S_{2j} + i S_{2j+1}) / 2` annihilates `|0…0⟩` for every mode.
pub fn check_vacuum(m: &Mapping) -> Result<bool> {
    for j in 0..m.n_modes() {
        let a = string_to_matrix(m.string(2 * j))?;
        let b = string_to_matrix(m.string(2 * j + 1))?;
        let annihilator = (a + b * I) * Complex64::new(0.5, 0.0);
        if annihilator.column(0).norm() >= 1e-10 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Ascending eigenvalues of a Hermitian qubit Hamiltonian.
pub fn spectrum(q: &QubitHamiltonian) -> Result<Vec<f64>> {
    guard(q.n_qubits(), MAX_SPECTRUM_QUBITS, "qubits for the eigensolver")?;
    if !q.is_hermitian(HERMITIAN_TOL) {
        return Err(Error::NonHermitian("qubit Hamiltonian has complex coefficients".into()));
    }
    let h = hamiltonian_to_matrix(q)?;
    let mut ev: Vec<f64> = h.symmetric_eigen().eigenvalues.iter().copied().collect();
    ev.sort_by(f64::total_cmp);
    Ok(ev)
}

#[derive(Debug, Clone)]
enum Shape {
    Leaf,
    Node(Box<[Shape; 3]>),
}

/// All complete ternary tree shapes with `k` internal nodes.
fn shapes(k: usize) -> Vec<Shape> {
    if k == 0 {
        return vec![Shape::Leaf];
    }
    let mut out = Vec::new();
    for a in 0..k {
        for b in 0..k - a {
            let c = k - 1 - a - b;
            for sa in shapes(a) {
                for sb in shapes(b) {
                    for sc in shapes(c) {
                        out.push(Shape::Node(Box::new([sa.clone(), sb.clone(), sc])));
                    }
                }
            }
        }
    }
    out
}

fn shape_sexpr(s: &Shape, leaf: &mut usize, qubit: &mut usize, out: &mut String) {
    match s {
        Shape::Leaf => {
            out.push_str(&format!("leaf{leaf}"));
            *leaf += 1;
        }
        Shape::Node(children) => {
            out.push_str(&format!("(q{qubit}"));
            *qubit += 1;
            for (branch, child) in ["X", "Y", "Z"].iter().zip(children.iter()) {
                out.push_str(&format!(" ({branch} "));
                shape_sexpr(child, leaf, qubit, out);
                out.push(')');
            }
            out.push(')');
        }
    }
}

/// Every injective assignment of `k` Majoranas to `n` leaves.
fn for_each_assignment(n: usize, k: usize, f: &mut impl FnMut(&[usize])) {
    fn rec(n: usize, k: usize, used: &mut Vec<bool>, cur: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
        if cur.len() == k {
            f(cur);
            return;
        }
        for leaf in 0..n {
            if !used[leaf] {
                used[leaf] = true;
                cur.push(leaf);
                rec(n, k, used, cur, f);
                cur.pop();
                used[leaf] = false;
            }
        }
    }
    rec(n, k, &mut vec![false; n], &mut Vec::with_capacity(k), f);
}

/// Minimum total Pauli weight over every tree shape and leaf assignment.
///
/// With `require_vacuum`, only assignments passing the pair predicate count.
/// The returned mapping is tagged `hatt-unopt` since no method name fits an
/// exhaustive search; the first minimum in enumeration order wins.
pub fn brute_force_best_tree(h: &MajoranaHamiltonian, require_vacuum: bool) -> Result<(Mapping, usize)> {
    let n = h.n_modes();
    guard(n, MAX_BRUTE_FORCE_MODES, "modes for exhaustive tree search")?;
    if n == 0 {
        return Err(Error::InvalidArgument("a mapping needs at least one mode".into()));
    }
    let mut best: Option<(usize, Vec<PauliString>)> = None;
    for shape in shapes(n) {
        let mut text = String::new();
        shape_sexpr(&shape, &mut 0, &mut 0, &mut text);
        let leaves = TernaryTree::from_sexpr(&text)?.extract_strings()?;
        let mut failure = None;
        for_each_assignment(2 * n + 1, 2 * n, &mut |assign| {
            if failure.is_some() {
                return;
            }
            let strings: Vec<PauliString> = assign.iter().map(|&l| leaves[l].clone()).collect();
            let mapping = match Mapping::new(n, Method::HattUnopt, require_vacuum, strings) {
                Ok(m) => m,
                Err(e) => return failure = Some(e),
            };
            if require_vacuum && !crate::apply::vacuum_pair_predicate(&mapping) {
                return;
            }
            let w = match map_hamiltonian(h, &mapping) {
                Ok(q) => weight_report(&q).total_pauli_weight,
                Err(e) => return failure = Some(e),
            };
            if best.as_ref().is_none_or(|(b, _)| w < *b) {
                best = Some((w, mapping.strings().to_vec()));
            }
        });
        if let Some(e) = failure {
            return Err(e);
        }
    }
    let (w, strings) = best.ok_or_else(|| Error::Construction("no admissible tree".into()))?;
    Ok((Mapping::new(n, Method::HattUnopt, require_vacuum, strings)?, w))
}

/// Random Hermitian Majorana Hamiltonian with `n_terms` monomials of degree
/// 1 to 4 and coefficients in `[-1, 1)` (times `i` where Hermiticity needs it).
pub fn random_hermitian_majorana<R: Rng + ?Sized>(n_modes: usize, n_terms: usize, rng: &mut R) -> MajoranaHamiltonian {
    let m = 2 * n_modes;
    let mut products = Vec::with_capacity(n_terms);
    for _ in 0..n_terms {
        let k = rng.random_range(1..=m.min(4));
        let mut idx = sample(rng, m, k).into_vec();
        idx.sort_unstable();
        let x: f64 = rng.random_range(-1.0..1.0);
        let c = if (k * (k - 1) / 2) % 2 == 0 { Complex64::new(x, 0.0) } else { Complex64::new(0.0, x) };
        products.push((c, idx));
    }
    MajoranaHamiltonian::from_products(n_modes, products).expect("indices in range")
}

/// Uniformly random string over `{I, X, Y, Z}`, phase 0.
pub fn random_pauli_string<R: Rng + ?Sized>(n_qubits: usize, rng: &mut R) -> PauliString {
    let ops = [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z];
    PauliString::from_ops(n_qubits, (0..n_qubits).map(|q| (q, ops[rng.random_range(0..4)])))
}
