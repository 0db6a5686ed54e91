//! Dense 2^N × 2^N spin Hamiltonian of the open chain,
//! H = -Σ_i [(1+γ) Sˣ_i Sˣ_{i+1} + (1-γ) Sʸ_i Sʸ_{i+1}] - α Σ_i Sᶻ_i, S = σ/2.
//!
//! Basis state bit i is site i; a clear bit is spin up.

use nalgebra::{DMatrix, SymmetricEigen};

use crate::closedform::ModelParams;
use crate::error::{Error, Result};
use crate::parallel::Execution;

pub const MAX_SITES: usize = 14;

#[derive(Debug, Clone, PartialEq)]
pub struct SpinHamiltonian {
    pub n_sites: usize,
    pub matrix: DMatrix<f64>,
}

impl SpinHamiltonian {
    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }
}

fn check_sites(n: usize) -> Result<()> {
    if !(2..=MAX_SITES).contains(&n) {
        return Err(Error::InvalidChain(format!("exact diagonalization needs 2 <= N <= {MAX_SITES}, got {n}")));
    }
    Ok(())
}

/// Nonzero entries of row `s`. A bond flips both spins with amplitude
/// -γ/2 for parallel spins and -1/2 for antiparallel spins.
fn row(p: ModelParams, n: usize, s: usize) -> Vec<(usize, f64)> {
    let ups = n as i32 - 2 * s.count_ones() as i32;
    let mut out = Vec::with_capacity(n);
    out.push((s, -0.5 * p.alpha * ups as f64));
    for i in 0..n - 1 {
        let pair = 0b11 << i;
        let parallel = ((s >> i) & 1) == ((s >> (i + 1)) & 1);
        let amp = if parallel { -0.5 * p.gamma } else { -0.5 };
        if amp != 0.0 {
            out.push((s ^ pair, amp));
        }
    }
    out
}

/// Builds H row by row from bit operations on basis states.
pub fn build(p: ModelParams, n: usize, exec: Execution) -> Result<SpinHamiltonian> {
    check_sites(n)?;
    let dim = 1usize << n;
    let rows = exec.map_range(dim, |s| row(p, n, s));
    let mut matrix = DMatrix::zeros(dim, dim);
    for (s, entries) in rows.into_iter().enumerate() {
        for (c, v) in entries {
            matrix[(s, c)] += v;
        }
    }
    Ok(SpinHamiltonian { n_sites: n, matrix })
}

/// Same operator from Kronecker products of single-site matrices; slower,
/// kept as an independent construction.
pub fn build_kronecker(p: ModelParams, n: usize) -> Result<SpinHamiltonian> {
    check_sites(n)?;
    let id = DMatrix::<f64>::identity(2, 2);
    let sx = DMatrix::from_row_slice(2, 2, &[0.0, 0.5, 0.5, 0.0]);
    // i·Sʸ is real; Sʸ⊗Sʸ = -(iSʸ)⊗(iSʸ).
    let isy = DMatrix::from_row_slice(2, 2, &[0.0, 0.5, -0.5, 0.0]);
    let sz = DMatrix::from_row_slice(2, 2, &[0.5, 0.0, 0.0, -0.5]);
    // Site 0 is the least significant bit, i.e. the last Kronecker factor.
    let embed = |ops: &[(usize, &DMatrix<f64>)]| -> DMatrix<f64> {
        let mut acc = DMatrix::<f64>::identity(1, 1);
        for site in (0..n).rev() {
            let op = ops.iter().find(|(s, _)| *s == site).map_or(&id, |(_, m)| *m);
            acc = acc.kronecker(op);
        }
        acc
    };
    let dim = 1usize << n;
    let mut h = DMatrix::zeros(dim, dim);
    for i in 0..n - 1 {
        h -= embed(&[(i, &sx), (i + 1, &sx)]) * (1.0 + p.gamma);
        h += embed(&[(i, &isy), (i + 1, &isy)]) * (1.0 - p.gamma);
    }
    for i in 0..n {
        h -= embed(&[(i, &sz)]) * p.alpha;
    }
    Ok(SpinHamiltonian { n_sites: n, matrix: h })
}

fn eigenvalues(m: DMatrix<f64>) -> Result<Vec<f64>> {
    let dim = m.nrows();
    let eig = SymmetricEigen::try_new(m, f64::EPSILON, 0)
        .ok_or_else(|| Error::Eigensolver(format!("symmetric eigensolver failed at dimension {dim}")))?;
    Ok(eig.eigenvalues.iter().copied().collect())
}

/// All 2^N eigenvalues, ascending. H only couples states whose numbers of
/// down spins have equal parity, so the two parity blocks are diagonalized
/// separately.
pub fn full_spectrum(h: &SpinHamiltonian) -> Result<Vec<f64>> {
    let dim = h.dim();
    let (even, odd): (Vec<usize>, Vec<usize>) = (0..dim).partition(|s| s.count_ones() % 2 == 0);
    let block = |idx: &[usize]| DMatrix::from_fn(idx.len(), idx.len(), |r, c| h.matrix[(idx[r], idx[c])]);
    let coupled = even.iter().any(|&r| odd.iter().any(|&c| h.matrix[(r, c)] != 0.0));
    let mut levels = if coupled {
        eigenvalues(h.matrix.clone())?
    } else {
        let mut v = eigenvalues(block(&even))?;
        v.extend(eigenvalues(block(&odd))?);
        v
    };
    levels.sort_by(f64::total_cmp);
    Ok(levels)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(a: f64, g: f64) -> ModelParams {
        ModelParams::new(a, g).unwrap()
    }

    fn spectrum(a: f64, g: f64, n: usize) -> Vec<f64> {
        full_spectrum(&build(p(a, g), n, Execution::Sequential).unwrap()).unwrap()
    }

    #[test]
    fn two_site_ising() {
        let e = spectrum(0.0, 1.0, 2);
        for (x, y) in e.iter().zip([-0.5, -0.5, 0.5, 0.5]) {
            assert!((x - y).abs() < 1e-14);
        }
    }

    #[test]
    fn two_site_xx() {
        let e = spectrum(0.0, 0.0, 2);
        for (x, y) in e.iter().zip([-0.5, 0.0, 0.0, 0.5]) {
            assert!((x - y).abs() < 1e-14);
        }
    }

    #[test]
    fn field_only_is_magnetization_ladder() {
        let h = build(p(0.7, 0.0), 3, Execution::Sequential).unwrap();
        for s in 0..8usize {
            let ups = 3 - 2 * s.count_ones() as i32;
            assert_eq!(h.matrix[(s, s)], -0.35 * ups as f64);
        }
    }

    #[test]
    fn kronecker_matches_bit_builder() {
        for &(a, g) in &[(0.3, 0.7), (1.2, -0.4), (0.0, 1.0)] {
            let b = build(p(a, g), 5, Execution::Parallel).unwrap();
            let k = build_kronecker(p(a, g), 5).unwrap();
            assert!((b.matrix - k.matrix).amax() < 1e-15);
        }
    }

    #[test]
    fn symmetric_and_traceless() {
        let h = build(p(0.6, 0.3), 6, Execution::Parallel).unwrap();
        assert_eq!(h.matrix, h.matrix.transpose());
        assert!(h.matrix.trace().abs() < 1e-13);
        let e = full_spectrum(&h).unwrap();
        assert!(e.iter().sum::<f64>().abs() < 1e-9 * 64.0);
    }

    #[test]
    fn gamma_mirror_symmetry() {
        let a = spectrum(0.4, 0.6, 6);
        let b = spectrum(0.4, -0.6, 6);
        for (x, y) in a.iter().zip(&b) {
            assert!((x - y).abs() < 1e-10);
        }
    }

    #[test]
    fn parity_split_matches_dense() {
        let h = build(p(0.9, 0.2), 5, Execution::Sequential).unwrap();
        let mut dense = eigenvalues(h.matrix.clone()).unwrap();
        dense.sort_by(f64::total_cmp);
        for (x, y) in full_spectrum(&h).unwrap().iter().zip(&dense) {
            assert!((x - y).abs() < 1e-12);
        }
    }

    #[test]
    fn size_bounds() {
        assert!(build(p(0.1, 0.1), 1, Execution::Sequential).is_err());
        assert!(build(p(0.1, 0.1), 15, Execution::Sequential).is_err());
    }
}
