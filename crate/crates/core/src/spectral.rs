//! Dense Hermitian diagonalization and level bookkeeping.
//!
//! Levels are counted by degeneracy cluster, not by multiplicity: the "second
//! excited state" is the third distinct level, index 2.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::pauli::{apply, hermitian_deviation, PauliOperator};
use crate::state::PureState;

/// Largest matrix accepted by [`eigh`] (12 qubits).
pub const MAX_DIM: usize = 4096;

/// Relative gap below which neighbouring eigenvalues share a level.
pub const DEFAULT_DEGENERACY_TOL: f64 = 1e-8;

/// Relative residual below which a state counts as an eigenstate.
pub const EIGENSTATE_TOL: f64 = 1e-9;

const HERMITIAN_TOL: f64 = 1e-9;

/// Ascending eigenvalues, column eigenvectors and degeneracy clusters.
#[derive(Debug, Clone)]
pub struct Spectrum {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: DMatrix<Complex64>,
    pub clusters: Vec<Vec<usize>>,
}

impl Spectrum {
    pub fn ground_energy(&self) -> f64 {
        self.eigenvalues[0]
    }

    pub fn width(&self) -> f64 {
        match (self.eigenvalues.first(), self.eigenvalues.last()) {
            (Some(lo), Some(hi)) => hi - lo,
            _ => 0.0,
        }
    }

    /// Column `i` of the eigenvector matrix as a state.
    pub fn eigenstate(&self, i: usize) -> Result<PureState> {
        let dim = self.eigenvectors.nrows();
        let n = dim.trailing_zeros() as usize;
        let col = self.eigenvectors.column(i).iter().copied().collect();
        PureState::from_amplitudes(n, col, true)
    }
}

fn check_hermitian(matrix: &DMatrix<Complex64>) -> Result<()> {
    if !matrix.is_square() {
        return Err(Error::Dimension {
            expected: matrix.nrows(),
            got: matrix.ncols(),
        });
    }
    if matrix.nrows() > MAX_DIM {
        return Err(Error::TooLarge(matrix.nrows()));
    }
    let dev = hermitian_deviation(matrix);
    if dev > HERMITIAN_TOL {
        return Err(Error::NotHermitian(dev));
    }
    Ok(())
}

fn is_real(matrix: &DMatrix<Complex64>) -> bool {
    matrix.iter().all(|z| z.im == 0.0)
}

fn symmetrized(matrix: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    (matrix + matrix.adjoint()) * Complex64::new(0.5, 0.0)
}

/// Full eigendecomposition of a Hermitian matrix.
///
/// Real symmetric input is diagonalized in real arithmetic, so its eigenvectors
/// are real. Within a degenerate level that makes the returned basis a real one.
pub fn eigh(matrix: &DMatrix<Complex64>) -> Result<Spectrum> {
    check_hermitian(matrix)?;
    let h = symmetrized(matrix);
    let (values, vectors): (Vec<f64>, DMatrix<Complex64>) = if is_real(&h) {
        let eig = SymmetricEigen::new(h.map(|z| z.re));
        (
            eig.eigenvalues.iter().copied().collect(),
            eig.eigenvectors.map(|x| Complex64::new(x, 0.0)),
        )
    } else {
        let eig = SymmetricEigen::new(h);
        (eig.eigenvalues.iter().copied().collect(), eig.eigenvectors)
    };

    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    let eigenvalues: Vec<f64> = order.iter().map(|&i| values[i]).collect();
    let mut eigenvectors = DMatrix::zeros(vectors.nrows(), vectors.ncols());
    for (dst, &src) in order.iter().enumerate() {
        eigenvectors.set_column(dst, &vectors.column(src));
    }
    let clusters = degeneracy_clusters(&eigenvalues, DEFAULT_DEGENERACY_TOL);
    Ok(Spectrum {
        eigenvalues,
        eigenvectors,
        clusters,
    })
}

/// Ascending eigenvalues only.
pub fn eigvalsh(matrix: &DMatrix<Complex64>) -> Result<Vec<f64>> {
    check_hermitian(matrix)?;
    let h = symmetrized(matrix);
    let mut values: Vec<f64> = if is_real(&h) {
        h.map(|z| z.re)
            .symmetric_eigenvalues()
            .iter()
            .copied()
            .collect()
    } else {
        h.symmetric_eigenvalues().iter().copied().collect()
    };
    values.sort_by(f64::total_cmp);
    Ok(values)
}

/// Groups ascending eigenvalues into maximal runs whose consecutive gaps are
/// below `tol * max(1, spectral width)`.
pub fn degeneracy_clusters(eigs: &[f64], tol: f64) -> Vec<Vec<usize>> {
    let Some((first, last)) = eigs.first().zip(eigs.last()) else {
        return vec![];
    };
    let gap = tol * (last - first).max(1.0);
    let mut clusters: Vec<Vec<usize>> = vec![vec![0]];
    for i in 1..eigs.len() {
        if eigs[i] - eigs[i - 1] < gap {
            clusters.last_mut().expect("non-empty").push(i);
        } else {
            clusters.push(vec![i]);
        }
    }
    clusters
}

/// Rayleigh quotient and residual of a candidate eigenstate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenCheck {
    pub eigenvalue: f64,
    pub residual: f64,
    /// `max(1, sum |c|)`, the scale the residual is judged against.
    pub scale: f64,
}

impl EigenCheck {
    pub fn is_eigenstate(&self) -> bool {
        self.residual <= EIGENSTATE_TOL * self.scale
    }
}

/// `eigenvalue = <psi|H|psi>`, `residual = ||H psi - eigenvalue psi||`.
pub fn eigenstate_check(op: &PauliOperator, state: &PureState) -> Result<EigenCheck> {
    let h_psi = apply(op, state)?;
    let eigenvalue = state
        .amplitudes()
        .iter()
        .zip(&h_psi)
        .map(|(a, b)| a.conj() * b)
        .sum::<Complex64>()
        .re;
    let residual = h_psi
        .iter()
        .zip(state.amplitudes())
        .map(|(hp, a)| (hp - a * eigenvalue).norm_sqr())
        .sum::<f64>()
        .sqrt();
    Ok(EigenCheck {
        eigenvalue,
        residual,
        scale: op.coefficient_norm().max(1.0),
    })
}

/// Where a value sits among the distinct levels of a spectrum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LevelPosition {
    /// Rank of the level from the ground (0).
    pub index: usize,
    /// `index / (levels - 1)`; 0 when there is a single level.
    pub normalized: f64,
    pub degenerate: bool,
    pub levels: usize,
}

/// Locates `value` among the levels of `spec`. The match tolerance is
/// `tol * max(1, spectral width)`.
pub fn level_position(spec: &Spectrum, value: f64, tol: f64) -> Result<LevelPosition> {
    locate_level(&spec.eigenvalues, &spec.clusters, value, tol)
}

pub(crate) fn locate_level(
    eigs: &[f64],
    clusters: &[Vec<usize>],
    value: f64,
    tol: f64,
) -> Result<LevelPosition> {
    let width = match (eigs.first(), eigs.last()) {
        (Some(lo), Some(hi)) => hi - lo,
        _ => return Err(Error::NoMatchingLevel(value)),
    };
    let window = tol * width.max(1.0);
    let (nearest, dist) = eigs
        .iter()
        .enumerate()
        .map(|(i, e)| (i, (e - value).abs()))
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .expect("non-empty spectrum");
    if dist > window {
        return Err(Error::NoMatchingLevel(value));
    }
    let index = clusters
        .iter()
        .position(|c| c.contains(&nearest))
        .expect("clusters cover every index");
    let levels = clusters.len();
    Ok(LevelPosition {
        index,
        normalized: if levels > 1 {
            index as f64 / (levels - 1) as f64
        } else {
            0.0
        },
        degenerate: clusters[index].len() > 1,
        levels,
    })
}
