//! Second-quantized Hamiltonians and their Majorana form.
//!
//! Ladder operators are rewritten with
//! `a†_j = (M_{2j} - i M_{2j+1}) / 2` and `a_j = (M_{2j} + i M_{2j+1}) / 2`,
//! after which every product is brought to normal order (strictly increasing
//! Majorana indices) using `M_i M_j = -M_j M_i` for `i != j` and `M_i² = I`.

mod hubbard;
mod text;

use std::collections::BTreeMap;

use num_complex::Complex64;

pub use hubbard::gen_fermi_hubbard;
pub use text::{parse_fermionic, parse_majorana, write_fermionic, write_majorana};

use crate::error::{Error, Result};

/// Coefficients below this magnitude are dropped after combining terms.
pub const DEFAULT_TOL: f64 = 1e-12;

/// Tolerance used by the Hermiticity checks.
pub const HERMITIAN_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct LadderOp {
    pub mode: usize,
    pub dagger: bool,
}

impl LadderOp {
    pub fn create(mode: usize) -> Self {
        Self { mode, dagger: true }
    }

    pub fn annihilate(mode: usize) -> Self {
        Self { mode, dagger: false }
    }
}

/// `coefficient · op_0 op_1 …` in the order written.
#[derive(Debug, Clone, PartialEq)]
pub struct LadderTerm {
    pub coefficient: Complex64,
    pub ops: Vec<LadderOp>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FermionicHamiltonian {
    n_modes: usize,
    terms: Vec<LadderTerm>,
}

impl FermionicHamiltonian {
    pub fn new(n_modes: usize) -> Self {
        Self { n_modes, terms: Vec::new() }
    }

    pub fn n_modes(&self) -> usize {
        self.n_modes
    }

    pub fn terms(&self) -> &[LadderTerm] {
        &self.terms
    }

    /// Appends a term, rejecting out-of-range modes.
    pub fn push(&mut self, coefficient: Complex64, ops: Vec<LadderOp>) -> Result<()> {
        if let Some(op) = ops.iter().find(|op| op.mode >= self.n_modes) {
            return Err(Error::InvalidArgument(format!(
                "mode {} out of range for {} modes",
                op.mode, self.n_modes
            )));
        }
        self.terms.push(LadderTerm { coefficient, ops });
        Ok(())
    }

    pub fn to_majorana(&self) -> MajoranaHamiltonian {
        self.to_majorana_with_tol(DEFAULT_TOL)
    }

    /// Substitutes every ladder operator by its Majorana pair and expands.
    pub fn to_majorana_with_tol(&self, tol: f64) -> MajoranaHamiltonian {
        let half = Complex64::new(0.5, 0.0);
        let half_i = Complex64::new(0.0, 0.5);
        let mut acc: BTreeMap<Vec<usize>, Complex64> = BTreeMap::new();
        for term in &self.terms {
            // Each ladder op expands into two Majorana monomials, so a k-op
            // product yields 2^k raw products.
            let mut partial: Vec<(Complex64, Vec<usize>)> = vec![(term.coefficient, Vec::new())];
            for op in &term.ops {
                let imag = if op.dagger { -half_i } else { half_i };
                let mut next = Vec::with_capacity(partial.len() * 2);
                for (c, idx) in &partial {
                    let mut even = idx.clone();
                    even.push(2 * op.mode);
                    next.push((c * half, even));
                    let mut odd = idx.clone();
                    odd.push(2 * op.mode + 1);
                    next.push((c * imag, odd));
                }
                partial = next;
            }
            for (c, idx) in partial {
                let (sign, ordered) = normal_order(&idx);
                *acc.entry(ordered).or_default() += c * sign;
            }
        }
        MajoranaHamiltonian::from_map(self.n_modes, acc, tol)
    }

    pub fn is_hermitian(&self) -> bool {
        self.to_majorana().is_hermitian()
    }
}

/// Sorts a Majorana product into strictly increasing order.
///
/// Returns the sign picked up by the anticommuting swaps and the surviving
/// indices after cancelling `M_i M_i = I`.
pub fn normal_order(indices: &[usize]) -> (f64, Vec<usize>) {
    let mut v = indices.to_vec();
    let mut swaps = 0usize;
    // insertion sort; equal neighbours are never swapped
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            swaps += 1;
            j -= 1;
        }
    }
    let mut out = Vec::with_capacity(v.len());
    for x in v {
        if out.last() == Some(&x) {
            out.pop();
        } else {
            out.push(x);
        }
    }
    (if swaps.is_multiple_of(2) { 1.0 } else { -1.0 }, out)
}

/// `coefficient · M_{i0} M_{i1} …` with strictly increasing indices.
#[derive(Debug, Clone, PartialEq)]
pub struct MajoranaMonomial {
    pub coefficient: Complex64,
    pub indices: Vec<usize>,
}

impl MajoranaMonomial {
    /// Whether `c · M_{i1}…M_{ik}` equals its own adjoint.
    ///
    /// Reversing `k` distinct anticommuting factors costs `(-1)^{k(k-1)/2}`.
    pub fn is_hermitian(&self, tol: f64) -> bool {
        let k = self.indices.len();
        let sign = if (k * k.saturating_sub(1) / 2).is_multiple_of(2) { 1.0 } else { -1.0 };
        (self.coefficient - self.coefficient.conj() * sign).norm() <= tol
    }
}

/// A Hamiltonian in normal-ordered Majorana form, one entry per index list,
/// sorted by index list.
#[derive(Debug, Clone, PartialEq)]
pub struct MajoranaHamiltonian {
    n_modes: usize,
    terms: Vec<MajoranaMonomial>,
}

impl MajoranaHamiltonian {
    pub fn empty(n_modes: usize) -> Self {
        Self { n_modes, terms: Vec::new() }
    }

    /// Normal-orders and combines arbitrary Majorana products.
    pub fn from_products<I>(n_modes: usize, products: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Complex64, Vec<usize>)>,
    {
        let mut acc: BTreeMap<Vec<usize>, Complex64> = BTreeMap::new();
        for (c, idx) in products {
            if let Some(&bad) = idx.iter().find(|&&i| i >= 2 * n_modes) {
                return Err(Error::InvalidArgument(format!(
                    "Majorana index {bad} out of range for {n_modes} modes"
                )));
            }
            let (sign, ordered) = normal_order(&idx);
            *acc.entry(ordered).or_default() += c * sign;
        }
        Ok(Self::from_map(n_modes, acc, DEFAULT_TOL))
    }

    fn from_map(n_modes: usize, acc: BTreeMap<Vec<usize>, Complex64>, tol: f64) -> Self {
        let terms = acc
            .into_iter()
            .filter(|(_, c)| c.norm() >= tol)
            .map(|(indices, coefficient)| MajoranaMonomial { coefficient, indices })
            .collect();
        Self { n_modes, terms }
    }

    pub fn n_modes(&self) -> usize {
        self.n_modes
    }

    pub fn terms(&self) -> &[MajoranaMonomial] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of the identity monomial, zero if absent.
    pub fn constant(&self) -> Complex64 {
        self.terms.first().filter(|t| t.indices.is_empty()).map(|t| t.coefficient).unwrap_or_default()
    }

    pub fn coefficient(&self, indices: &[usize]) -> Complex64 {
        self.terms
            .binary_search_by(|t| t.indices.as_slice().cmp(indices))
            .map(|i| self.terms[i].coefficient)
            .unwrap_or_default()
    }

    pub fn is_hermitian(&self) -> bool {
        self.terms.iter().all(|t| t.is_hermitian(HERMITIAN_TOL))
    }
}
