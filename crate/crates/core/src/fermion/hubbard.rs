use num_complex::Complex64;

use super::{FermionicHamiltonian, LadderOp};
use crate::error::{Error, Result};

/// Fermi-Hubbard model on a `rows × cols` square lattice.
///
/// Mode `2·site + spin` with spin up = 0 and sites numbered row-major.
/// Hopping `t (a†_{iσ} a_{jσ} + a†_{jσ} a_{iσ})` runs over nearest-neighbour
/// bonds; with `periodic`, wrap-around bonds are added along any side longer
/// than two sites. The on-site term is `U n_{i↑} n_{i↓}` written as
/// `a†_{i↑} a_{i↑} a†_{i↓} a_{i↓}`, and is omitted when `u == 0`.
pub fn gen_fermi_hubbard(rows: usize, cols: usize, t: f64, u: f64, periodic: bool) -> Result<FermionicHamiltonian> {
    if rows == 0 || cols == 0 {
        return Err(Error::InvalidArgument(format!("lattice {rows}x{cols} has no sites")));
    }
    let site = |r: usize, c: usize| r * cols + c;
    let mut bonds = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            if c + 1 < cols {
                bonds.push((site(r, c), site(r, c + 1)));
            } else if periodic && cols > 2 {
                bonds.push((site(r, c), site(r, 0)));
            }
            if r + 1 < rows {
                bonds.push((site(r, c), site(r + 1, c)));
            } else if periodic && rows > 2 {
                bonds.push((site(r, c), site(0, c)));
            }
        }
    }

    let n_sites = rows * cols;
    let mode = |s: usize, spin: usize| 2 * s + spin;
    let mut h = FermionicHamiltonian::new(2 * n_sites);
    let hop = Complex64::new(t, 0.0);
    for &(i, j) in &bonds {
        for spin in 0..2 {
            h.push(hop, vec![LadderOp::create(mode(i, spin)), LadderOp::annihilate(mode(j, spin))])?;
            h.push(hop, vec![LadderOp::create(mode(j, spin)), LadderOp::annihilate(mode(i, spin))])?;
        }
    }
    if u != 0.0 {
        for s in 0..n_sites {
            h.push(
                Complex64::new(u, 0.0),
                vec![
                    LadderOp::create(mode(s, 0)),
                    LadderOp::annihilate(mode(s, 0)),
                    LadderOp::create(mode(s, 1)),
                    LadderOp::annihilate(mode(s, 1)),
                ],
            )?;
        }
    }
    Ok(h)
}
