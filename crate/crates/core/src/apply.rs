//! Applying a mapping to a Majorana Hamiltonian, and weight statistics.

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fermion::{MajoranaHamiltonian, DEFAULT_TOL};
use crate::mapping::Mapping;
use crate::pauli::{Pauli, PauliString};

/// `Σ c_j S_j` with phase-free keys in canonical order.
#[derive(Debug, Clone, PartialEq)]
pub struct QubitHamiltonian {
    n_qubits: usize,
    terms: BTreeMap<PauliString, Complex64>,
}

fn phase_factor(exp: u8) -> Complex64 {
    [Complex64::new(1.0, 0.0), Complex64::new(0.0, 1.0), Complex64::new(-1.0, 0.0), Complex64::new(0.0, -1.0)]
        [usize::from(exp % 4)]
}

impl QubitHamiltonian {
    pub fn new(n_qubits: usize) -> Self {
        Self { n_qubits, terms: BTreeMap::new() }
    }

    /// Sums `(coefficient, string)` pairs, folding string phases into the
    /// coefficients and dropping anything below `tol`.
    pub fn from_terms<I>(n_qubits: usize, terms: I, tol: f64) -> Result<Self>
    where
        I: IntoIterator<Item = (Complex64, PauliString)>,
    {
        let mut acc: BTreeMap<PauliString, Complex64> = BTreeMap::new();
        for (c, s) in terms {
            if s.n_qubits() != n_qubits {
                return Err(Error::LengthMismatch { left: s.n_qubits(), right: n_qubits });
            }
            *acc.entry(s.without_phase()).or_default() += c * phase_factor(s.phase_exp());
        }
        acc.retain(|_, c| c.norm() >= tol);
        Ok(Self { n_qubits, terms: acc })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&PauliString, Complex64)> {
        self.terms.iter().map(|(s, c)| (s, *c))
    }

    pub fn coefficient(&self, s: &PauliString) -> Complex64 {
        self.terms.get(&s.without_phase()).copied().unwrap_or_default()
    }

    /// All coefficients real within `tol`.
    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.terms.values().all(|c| c.im.abs() <= tol)
    }

    pub fn to_json(&self) -> String {
        let file = QubitHamiltonianFile {
            n_qubits: self.n_qubits,
            terms: self.terms.iter().map(|(s, c)| TermEntry { string: s.to_dense(), re: c.re, im: c.im }).collect(),
        };
        serde_json::to_string_pretty(&file).expect("Hamiltonian serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: QubitHamiltonianFile = serde_json::from_str(text)?;
        let terms = file
            .terms
            .iter()
            .map(|t| Ok((Complex64::new(t.re, t.im), PauliString::parse_dense(&t.string)?)))
            .collect::<Result<Vec<_>>>()?;
        Self::from_terms(file.n_qubits, terms, 0.0)
    }
}

#[derive(Serialize, Deserialize)]
struct QubitHamiltonianFile {
    n_qubits: usize,
    terms: Vec<TermEntry>,
}

#[derive(Serialize, Deserialize)]
struct TermEntry {
    string: String,
    re: f64,
    im: f64,
}

pub fn map_hamiltonian(h: &MajoranaHamiltonian, m: &Mapping) -> Result<QubitHamiltonian> {
    map_hamiltonian_with_tol(h, m, DEFAULT_TOL)
}

/// Replaces each `M_j` by `S_j` and multiplies out every monomial in order.
pub fn map_hamiltonian_with_tol(h: &MajoranaHamiltonian, m: &Mapping, tol: f64) -> Result<QubitHamiltonian> {
    if h.n_modes() != m.n_modes() {
        return Err(Error::ModeMismatch { hamiltonian: h.n_modes(), mapping: m.n_modes() });
    }
    let n = m.n_modes();
    let mut products = Vec::with_capacity(h.len());
    for t in h.terms() {
        let mut s = PauliString::identity(n);
        for &j in &t.indices {
            s = s.multiply(m.string(j))?;
        }
        products.push((t.coefficient, s));
    }
    QubitHamiltonian::from_terms(n, products, tol)
}

/// Pauli-weight statistics of a qubit Hamiltonian.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightReport {
    pub total_pauli_weight: usize,
    pub term_count: usize,
    pub max_term_weight: usize,
    pub per_qubit_weight: Vec<usize>,
}

pub fn weight_report(q: &QubitHamiltonian) -> WeightReport {
    let mut per_qubit = vec![0; q.n_qubits()];
    let mut max = 0;
    for (s, _) in q.terms() {
        max = max.max(s.weight());
        for k in s.support() {
            per_qubit[k] += 1;
        }
    }
    WeightReport {
        total_pauli_weight: per_qubit.iter().sum(),
        term_count: q.len(),
        max_term_weight: max,
        per_qubit_weight: per_qubit,
    }
}

/// Whether `a` and `b` share exactly one `(X, Y)` position, in that order, and
/// act alike on `|0⟩` everywhere else.
///
/// This is sufficient for `(a + i b)/2` to annihilate `|0…0⟩`; for strings
/// taken from a ternary tree it is also necessary.
pub fn is_valid_pair(a: &PauliString, b: &PauliString) -> bool {
    if a.n_qubits() != b.n_qubits() {
        return false;
    }
    let mut xy = 0;
    for q in 0..a.n_qubits() {
        let (pa, pb) = (a.get(q), b.get(q));
        if (pa, pb) == (Pauli::X, Pauli::Y) {
            xy += 1;
        } else if pa.action_on_zero() != pb.action_on_zero() {
            return false;
        }
    }
    xy == 1
}

/// Every Majorana pair `(S_{2j}, S_{2j+1})` is a valid pair.
pub fn vacuum_pair_predicate(m: &Mapping) -> bool {
    (0..m.n_modes()).all(|j| is_valid_pair(m.string(2 * j), m.string(2 * j + 1)))
}

/// Lower-is-better cost of a mapped Hamiltonian; see [`weight_report`].
pub fn total_weight(h: &MajoranaHamiltonian, m: &Mapping) -> Result<usize> {
    Ok(weight_report(&map_hamiltonian(h, m)?).total_pauli_weight)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::baselines::{balanced_ternary_tree_leaf_order, jordan_wigner};
    use crate::mapping::Method;
    use crate::tree::TernaryTree;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn two_mode_example_under_jw() {
        // c0 a0†a0 + c1 a1†a1 + c2 a0†a1†a0a1
        let (c0, c1, c2) = (0.7, -1.3, 2.9);
        let text = format!("modes 2\n({c0},0) : 0^ 0\n({c1},0) : 1^ 1\n({c2},0) : 0^ 1^ 0 1\n");
        let h = crate::fermion::parse_fermionic(&text).unwrap().to_majorana();
        let q = map_hamiltonian(&h, &jordan_wigner(2).unwrap()).unwrap();
        let get = |s: &str| q.coefficient(&s.parse().unwrap());
        assert!((get("II") - c((2.0 * c0 + 2.0 * c1 - c2) / 4.0)).norm() < 1e-12);
        assert!((get("IZ") - c((c2 - 2.0 * c0) / 4.0)).norm() < 1e-12);
        assert!((get("ZI") - c((c2 - 2.0 * c1) / 4.0)).norm() < 1e-12);
        assert!((get("ZZ") - c(-c2 / 4.0)).norm() < 1e-12);
        assert_eq!(q.len(), 4);
    }

    fn toy() -> MajoranaHamiltonian {
        MajoranaHamiltonian::from_products(3, [(Complex64::new(0.0, 1.0), vec![0, 5]), (Complex64::new(0.0, 2.0), vec![1, 3])])
            .unwrap()
    }

    #[test]
    fn balanced_tree_toy_weight() {
        let q = map_hamiltonian(&toy(), &balanced_ternary_tree_leaf_order(3).unwrap()).unwrap();
        let strings: Vec<String> = q.terms().map(|(s, _)| s.to_compact()).collect();
        assert!(strings.contains(&"Z2 X1 Z0".to_string()));
        assert!(strings.contains(&"X2 Y1 Z0".to_string()));
        assert_eq!(weight_report(&q).total_pauli_weight, 6);
    }

    #[test]
    fn unbalanced_tree_toy_weight() {
        let t = TernaryTree::from_sexpr(
            "(q0 (X leaf0) (Y (q1 (X (q2 (X leaf1) (Y leaf2) (Z leaf3))) (Y leaf4) (Z leaf5))) (Z leaf6))",
        )
        .unwrap();
        let mut strings = t.extract_strings().unwrap();
        strings.truncate(6);
        let m = Mapping::new(3, Method::HattUnopt, false, strings).unwrap();
        let q = map_hamiltonian(&toy(), &m).unwrap();
        let terms: Vec<String> = q.terms().map(|(s, _)| s.to_compact()).collect();
        assert_eq!(terms, ["Z1 Z0", "Y2"]);
        let r = weight_report(&q);
        assert_eq!(r.total_pauli_weight, 3);
        assert_eq!(r.per_qubit_weight, vec![1, 1, 1]);
        assert_eq!(r.max_term_weight, 2);
    }

    #[test]
    fn empty_and_identity_hamiltonians() {
        let m = jordan_wigner(2).unwrap();
        let q = map_hamiltonian(&MajoranaHamiltonian::empty(2), &m).unwrap();
        assert!(q.is_empty());
        let id = MajoranaHamiltonian::from_products(2, [(c(3.0), vec![])]).unwrap();
        let q = map_hamiltonian(&id, &m).unwrap();
        assert_eq!(q.len(), 1);
        assert_eq!(weight_report(&q).total_pauli_weight, 0);
    }

    #[test]
    fn mode_mismatch() {
        assert!(map_hamiltonian(&toy(), &jordan_wigner(2).unwrap()).is_err());
    }

    #[test]
    fn report_examples() {
        let q = QubitHamiltonian::from_terms(
            3,
            [(c(1.0), PauliString::parse_compact("Z0 X1 Z2", 3).unwrap()), (c(2.0), PauliString::parse_compact("Z0 Y1 X2", 3).unwrap())],
            DEFAULT_TOL,
        )
        .unwrap();
        assert_eq!(weight_report(&q).total_pauli_weight, 6);
    }

    #[test]
    fn pair_predicate() {
        assert!(vacuum_pair_predicate(&jordan_wigner(2).unwrap()));
        let swapped = Mapping::new(1, Method::JordanWigner, true, vec!["Y".parse().unwrap(), "X".parse().unwrap()]).unwrap();
        assert!(!vacuum_pair_predicate(&swapped));
        assert!(is_valid_pair(&"ZX".parse().unwrap(), &"IY".parse().unwrap()));
        assert!(!is_valid_pair(&"XX".parse().unwrap(), &"YY".parse().unwrap()));
        assert!(!is_valid_pair(&"XX".parse().unwrap(), &"ZY".parse().unwrap()));
    }

    #[test]
    fn json_round_trip() {
        let h = toy();
        let q = map_hamiltonian(&h, &jordan_wigner(3).unwrap()).unwrap();
        let back = QubitHamiltonian::from_json(&q.to_json()).unwrap();
        assert_eq!(back, q);
    }
}
