//! Hamiltonian-independent mappings: Jordan-Wigner, Bravyi-Kitaev and the
//! balanced ternary tree.

use crate::error::{Error, Result};
use crate::mapping::{Mapping, Method};
use crate::pauli::{Pauli, PauliString};
use crate::tree::TernaryTree;

fn check_modes(n_modes: usize) -> Result<()> {
    if n_modes == 0 {
        return Err(Error::InvalidArgument("a mapping needs at least one mode".into()));
    }
    Ok(())
}

/// `M_{2j} = Z…Z X_j`, `M_{2j+1} = Z…Z Y_j` with `Z` on every qubit below `j`.
pub fn jordan_wigner(n_modes: usize) -> Result<Mapping> {
    check_modes(n_modes)?;
    let mut strings = Vec::with_capacity(2 * n_modes);
    for j in 0..n_modes {
        for top in [Pauli::X, Pauli::Y] {
            strings.push(PauliString::from_ops(n_modes, (0..j).map(|k| (k, Pauli::Z)).chain([(j, top)])));
        }
    }
    Mapping::new(n_modes, Method::JordanWigner, true, strings)
}

// Fenwick-tree index sets, 0-based.

/// Qubits whose stored parity includes mode `j` (including `j` itself).
fn update_set(j: usize, n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut i = j + 1;
    while i <= n {
        out.push(i - 1);
        i += i & i.wrapping_neg();
    }
    out
}

/// Qubits whose combined value is the parity of modes `0..j`.
fn parity_set(j: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut i = j;
    while i > 0 {
        out.push(i - 1);
        i &= i - 1;
    }
    out
}

/// Qubits whose combined value is the occupation of mode `j`.
fn occupation_set(j: usize) -> Vec<usize> {
    let mut out = vec![j];
    let idx = j + 1;
    let parent = idx & (idx - 1);
    let mut i = idx - 1;
    while i != parent {
        out.push(i - 1);
        i &= i - 1;
    }
    out
}

/// Bravyi-Kitaev in the Fenwick-tree formulation, valid for any `N`:
/// `M_{2j} = X_{U(j)} Z_{P(j)}` and `M_{2j+1} = Y_j X_{U(j)∖j} Z_{(P(j) △ F(j))∖j}`
/// with update set `U`, parity set `P` and occupation set `F`.
pub fn bravyi_kitaev(n_modes: usize) -> Result<Mapping> {
    check_modes(n_modes)?;
    let mut strings = Vec::with_capacity(2 * n_modes);
    for j in 0..n_modes {
        let update = update_set(j, n_modes);
        let parity = parity_set(j);
        let occupation = occupation_set(j);

        let mut even = PauliString::identity(n_modes);
        for &q in &parity {
            even.set(q, Pauli::Z);
        }
        for &q in &update {
            even.set(q, Pauli::X);
        }

        let mut odd = PauliString::identity(n_modes);
        for &q in parity.iter().chain(&occupation) {
            if q == j {
                continue;
            }
            let flipped = if odd.get(q) == Pauli::Z { Pauli::I } else { Pauli::Z };
            odd.set(q, flipped);
        }
        for &q in &update {
            if q != j {
                odd.set(q, Pauli::X);
            }
        }
        odd.set(j, Pauli::Y);

        strings.push(even);
        strings.push(odd);
    }
    Mapping::new(n_modes, Method::BravyiKitaev, true, strings)
}

/// Balanced tree with leaves assigned in left-to-right order (`M_i ↦ S_{leaf i}`).
/// Not vacuum-preserving in general.
pub fn balanced_ternary_tree_leaf_order(n_modes: usize) -> Result<Mapping> {
    let tree = TernaryTree::build_balanced(n_modes)?;
    let mut strings = tree.extract_strings()?;
    strings.truncate(2 * n_modes);
    Ok(Mapping::new(n_modes, Method::BalancedTernaryTree, false, strings)?.with_tree(tree))
}

/// Balanced tree with the vacuum-preserving assignment: for internal node `k`
/// (breadth-first), `desc_Z` of its X child becomes `M_{2k}` and `desc_Z` of its
/// Y child becomes `M_{2k+1}`. The root's `desc_Z` is the discarded string.
pub fn balanced_ternary_tree(n_modes: usize) -> Result<Mapping> {
    let tree = TernaryTree::build_balanced(n_modes)?;
    let mut perm = vec![usize::MAX; tree.n_leaves()];
    for k in 0..n_modes {
        let [x, y, _] = tree.children(tree.internal_id(k)).expect("balanced tree is complete");
        perm[tree.desc_z(x)] = 2 * k;
        perm[tree.desc_z(y)] = 2 * k + 1;
    }
    perm[tree.desc_z(tree.root()?)] = 2 * n_modes;
    let tree = tree.relabel_leaves(&perm)?;
    let mut strings = tree.extract_strings()?;
    strings.truncate(2 * n_modes);
    Ok(Mapping::new(n_modes, Method::BalancedTernaryTree, true, strings)?.with_tree(tree))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dense(m: &Mapping) -> Vec<String> {
        m.strings().iter().map(PauliString::to_dense).collect()
    }

    fn all_anticommute(m: &Mapping) -> bool {
        let s = m.strings();
        (0..s.len()).all(|i| (i + 1..s.len()).all(|j| s[i].anticommutes(&s[j]).unwrap()))
    }

    #[test]
    fn jordan_wigner_two_modes() {
        assert_eq!(dense(&jordan_wigner(2).unwrap()), ["IX", "IY", "XZ", "YZ"]);
        assert_eq!(dense(&jordan_wigner(1).unwrap()), ["X", "Y"]);
        let m = jordan_wigner(7).unwrap();
        for j in 0..7 {
            assert_eq!(m.string(2 * j).weight(), j + 1);
        }
    }

    #[test]
    fn bravyi_kitaev_matches_jw_on_one_mode() {
        assert_eq!(dense(&bravyi_kitaev(1).unwrap()), dense(&jordan_wigner(1).unwrap()));
    }

    #[test]
    fn bravyi_kitaev_four_modes() {
        // worked by hand from the Fenwick update, parity and occupation sets
        let m = bravyi_kitaev(4).unwrap();
        assert_eq!(dense(&m), ["XIXX", "XIXY", "XIXZ", "XIYI", "XXZI", "XYZI", "XZZI", "YIII"]);
        assert!(all_anticommute(&m));
    }

    #[test]
    fn bravyi_kitaev_is_logarithmic() {
        let m = bravyi_kitaev(8).unwrap();
        assert!(all_anticommute(&m));
        assert!(m.strings().iter().all(|s| s.weight() <= 1 + 3 * 2));
        for n in 1..=16 {
            assert!(all_anticommute(&bravyi_kitaev(n).unwrap()), "n={n}");
        }
    }

    #[test]
    fn balanced_tree_single_mode() {
        assert_eq!(dense(&balanced_ternary_tree(1).unwrap()), ["X", "Y"]);
    }

    #[test]
    fn balanced_tree_constructors_anticommute() {
        for n in 1..=16 {
            assert!(all_anticommute(&balanced_ternary_tree(n).unwrap()));
            assert!(all_anticommute(&balanced_ternary_tree_leaf_order(n).unwrap()));
        }
    }

    #[test]
    fn zero_modes_rejected() {
        assert!(jordan_wigner(0).is_err());
        assert!(bravyi_kitaev(0).is_err());
        assert!(balanced_ternary_tree(0).is_err());
    }
}
