//! Local Hamiltonians admitting a given state as an eigenstate, and seeded
//! random-coupling experiments over such families.
//!
//! For candidate strings `T_1..T_m` and a state `phi`, `T(c) = sum c_k T_k` has
//! `phi` as an eigenstate iff `(1 - |phi><phi|) T(c) |phi> = 0`. With real `c`
//! this is a real-linear system of `2 * 2^n` equations (real and imaginary
//! parts); its null space is the family of stabilizing Hamiltonians.

use nalgebra::{DMatrix, SVD};
use num_complex::Complex64;
use rand::distr::{Distribution, Uniform};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::pauli::{sum_matrix, PauliOperator, PauliTerm};
use crate::spectral::{degeneracy_clusters, eigvalsh, locate_level, DEFAULT_DEGENERACY_TOL};
use crate::state::PureState;

/// Relative singular-value cutoff of the null-space search.
pub const DEFAULT_NULL_TOL: f64 = 1e-9;

/// Residual above which a basis operator is rejected.
pub const BASIS_RESIDUAL_TOL: f64 = 1e-8;

/// Orthonormal basis (in coefficient space) of the candidate combinations that
/// keep `state` an eigenstate.
#[derive(Debug, Clone)]
pub struct StabilizerBasis {
    state: PureState,
    candidates: Vec<PauliTerm>,
    basis: Vec<Vec<f64>>,
}

impl StabilizerBasis {
    /// Wraps externally built coefficient vectors; only shapes are checked.
    pub fn from_parts(
        state: PureState,
        candidates: Vec<PauliTerm>,
        basis: Vec<Vec<f64>>,
    ) -> Result<Self> {
        check_candidates(&state, &candidates)?;
        if let Some(bad) = basis.iter().find(|v| v.len() != candidates.len()) {
            return Err(Error::Length {
                expected: candidates.len(),
                got: bad.len(),
            });
        }
        Ok(Self {
            state,
            candidates,
            basis,
        })
    }

    pub fn state(&self) -> &PureState {
        &self.state
    }

    pub fn candidates(&self) -> &[PauliTerm] {
        &self.candidates
    }

    pub fn basis(&self) -> &[Vec<f64>] {
        &self.basis
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    /// `sum_k c_k T_k` for basis vector `i`, with entries below `1e-12` dropped.
    pub fn operator(&self, i: usize) -> PauliOperator {
        combine(self.state.n(), &self.candidates, &self.basis[i]).chop(1e-12)
    }

    pub fn operators(&self) -> Vec<PauliOperator> {
        (0..self.dimension()).map(|i| self.operator(i)).collect()
    }
}

fn check_candidates(state: &PureState, candidates: &[PauliTerm]) -> Result<()> {
    if let Some(bad) = candidates.iter().find(|t| t.n() != state.n()) {
        return Err(Error::QubitMismatch {
            left: state.n(),
            right: bad.n(),
        });
    }
    Ok(())
}

fn combine(n: usize, candidates: &[PauliTerm], coefficients: &[f64]) -> PauliOperator {
    PauliOperator::from_terms(
        n,
        candidates
            .iter()
            .zip(coefficients)
            .map(|(t, &c)| t.with_coefficient(t.coefficient() * c)),
    )
    .expect("candidates share the state's register")
}

/// Column `k` holds `(1 - P) T_k |phi>` split into real and imaginary halves.
fn constraint_matrix(state: &PureState, candidates: &[PauliTerm]) -> DMatrix<f64> {
    let dim = state.dim();
    let psi = state.amplitudes();
    let mut a = DMatrix::<f64>::zeros(2 * dim, candidates.len());
    for (col, t) in candidates.iter().enumerate() {
        let op = PauliOperator::from_terms(state.n(), [t.clone()]).expect("checked register");
        let v = op.apply_vec(psi).expect("matching length");
        let overlap: Complex64 = psi.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
        for k in 0..dim {
            let r = v[k] - psi[k] * overlap;
            a[(k, col)] = r.re;
            a[(dim + k, col)] = r.im;
        }
    }
    a
}

/// Null space of the eigenstate constraints over `candidates`.
///
/// Singular values at or below `tol * sigma_max` count as zero. Each returned
/// vector is sign-fixed so its largest-magnitude entry is positive.
pub fn stabilizer_search(
    state: &PureState,
    candidates: &[PauliTerm],
    tol: f64,
) -> Result<StabilizerBasis> {
    if candidates.is_empty() {
        return Err(Error::InvalidArgument("no candidate terms".into()));
    }
    check_candidates(state, candidates)?;
    let m = candidates.len();
    let mut a = constraint_matrix(state, candidates);
    // pad to at least m rows so the SVD returns a full right basis
    if a.nrows() < m {
        a = a.resize_vertically(m, 0.0);
    }
    let svd = SVD::new(a, false, true);
    let v_t = svd.v_t.expect("requested V^T");
    let sigma_max = svd.singular_values.max();
    let cutoff = if sigma_max > 0.0 {
        tol * sigma_max
    } else {
        f64::INFINITY
    };

    let mut basis = Vec::new();
    for (i, &s) in svd.singular_values.iter().enumerate() {
        if s <= cutoff {
            let mut v: Vec<f64> = v_t.row(i).iter().copied().collect();
            let lead = v
                .iter()
                .copied()
                .max_by(|a, b| a.abs().total_cmp(&b.abs()))
                .unwrap_or(1.0);
            if lead < 0.0 {
                v.iter_mut().for_each(|x| *x = -*x);
            }
            basis.push(v);
        }
    }
    StabilizerBasis::from_parts(state.clone(), candidates.to_vec(), basis)
}

/// One verified basis operator.
#[derive(Debug, Clone)]
pub struct BasisEntry {
    pub index: usize,
    pub eigenvalue: f64,
    pub residual: f64,
    /// Canonical Hamiltonian-file text.
    pub text: String,
}

#[derive(Debug, Clone)]
pub struct BasisReport {
    pub entries: Vec<BasisEntry>,
    /// Largest `|<c_i, c_j> - delta_ij|` over the basis.
    pub orthonormality_error: f64,
}

/// Re-checks every basis vector (eigenstate residual and orthonormality).
/// The first vector whose residual exceeds `tol` fails verification.
pub fn verify_basis(sb: &StabilizerBasis, tol: f64) -> Result<BasisReport> {
    let mut entries = Vec::with_capacity(sb.dimension());
    for i in 0..sb.dimension() {
        let op = combine(sb.state.n(), &sb.candidates, &sb.basis[i]);
        let chk = crate::spectral::eigenstate_check(&op, &sb.state)?;
        if !(chk.residual <= tol) {
            return Err(Error::Verification {
                index: i,
                residual: chk.residual,
            });
        }
        entries.push(BasisEntry {
            index: i,
            eigenvalue: chk.eigenvalue,
            residual: chk.residual,
            text: sb.operator(i).to_string(),
        });
    }
    let mut orthonormality_error = 0.0f64;
    for (i, a) in sb.basis.iter().enumerate() {
        for (j, b) in sb.basis.iter().enumerate().skip(i) {
            let dot: f64 = a.iter().zip(b).map(|(x, y)| x * y).sum();
            let target = if i == j { 1.0 } else { 0.0 };
            orthonormality_error = orthonormality_error.max((dot - target).abs());
        }
    }
    if orthonormality_error > tol {
        return Err(Error::InvalidArgument(format!(
            "basis not orthonormal (error {orthonormality_error:e})"
        )));
    }
    Ok(BasisReport {
        entries,
        orthonormality_error,
    })
}

/// Linear family `sum_i c_i G_i` sampled by the random experiments.
#[derive(Debug, Clone)]
pub struct CouplingFamily {
    n: usize,
    generators: Vec<PauliOperator>,
}

impl CouplingFamily {
    pub fn new(n: usize, generators: Vec<PauliOperator>) -> Result<Self> {
        if generators.is_empty() {
            return Err(Error::InvalidArgument("empty coupling family".into()));
        }
        if let Some(bad) = generators.iter().find(|g| g.n() != n) {
            return Err(Error::QubitMismatch {
                left: n,
                right: bad.n(),
            });
        }
        Ok(Self { n, generators })
    }

    /// One generator per basis vector.
    pub fn from_basis(sb: &StabilizerBasis) -> Result<Self> {
        Self::new(sb.state.n(), sb.operators())
    }

    /// `(J, k)` family of [`crate::models::hjk4`].
    pub fn hjk4() -> Self {
        use crate::models::hjk4;
        Self::new(4, vec![hjk4(1.0, 0.0), hjk4(0.0, 1.0)]).expect("four-site generators")
    }

    /// `(J, k)` family of [`crate::models::hjk3`].
    pub fn hjk3() -> Self {
        use crate::models::hjk3;
        Self::new(3, vec![hjk3(1.0, 0.0), hjk3(0.0, 1.0)]).expect("three-site generators")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[PauliOperator] {
        &self.generators
    }

    pub fn operator(&self, coefficients: &[f64]) -> PauliOperator {
        self.generators
            .iter()
            .zip(coefficients)
            .fold(PauliOperator::zero(self.n), |acc, (g, &c)| {
                acc + c * g.clone()
            })
    }
}

/// Closed interval each coupling is drawn from, uniformly.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoefficientRange {
    pub lo: f64,
    pub hi: f64,
}

impl Default for CoefficientRange {
    fn default() -> Self {
        Self { lo: -1.0, hi: 1.0 }
    }
}

/// Outcome of one random coupling draw.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleRecord {
    pub index: usize,
    pub coefficients: Vec<f64>,
    pub eigenvalue: f64,
    pub level: usize,
    pub normalized: f64,
    pub degenerate: bool,
}

/// Independent generator for sample `index`: stream `index` of the ChaCha
/// generator keyed by `seed`.
pub fn sample_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Draws `n_samples` coupling vectors, diagonalizes each Hamiltonian and
/// locates the eigenvalue of `state`. Samples run in parallel; records come
/// back in index order and depend only on `seed`.
pub fn sample_levels(
    state: &PureState,
    family: &CouplingFamily,
    n_samples: usize,
    range: CoefficientRange,
    seed: u64,
) -> Result<Vec<SampleRecord>> {
    if family.n != state.n() {
        return Err(Error::QubitMismatch {
            left: family.n,
            right: state.n(),
        });
    }
    if !(range.lo <= range.hi) || !range.lo.is_finite() || !range.hi.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "bad coefficient range [{}, {}]",
            range.lo, range.hi
        )));
    }
    let mats = family
        .generators
        .iter()
        .map(sum_matrix)
        .collect::<Result<Vec<_>>>()?;
    let scales: Vec<f64> = family
        .generators
        .iter()
        .map(PauliOperator::coefficient_norm)
        .collect();
    let psi = nalgebra::DVector::from_column_slice(state.amplitudes());
    let dist = Uniform::new_inclusive(range.lo, range.hi)
        .map_err(|e| Error::InvalidArgument(e.to_string()))?;

    (0..n_samples)
        .into_par_iter()
        .map(|index| {
            let mut rng = sample_rng(seed, index as u64);
            let coefficients: Vec<f64> = (0..mats.len()).map(|_| dist.sample(&mut rng)).collect();
            let mut h = DMatrix::<Complex64>::zeros(psi.len(), psi.len());
            for (m, &c) in mats.iter().zip(&coefficients) {
                h += m * Complex64::new(c, 0.0);
            }
            let h_psi = &h * &psi;
            let eigenvalue = psi.dotc(&h_psi).re;
            let residual = (&h_psi - &psi * Complex64::new(eigenvalue, 0.0)).norm();
            let scale: f64 = scales
                .iter()
                .zip(&coefficients)
                .map(|(s, c)| s * c.abs())
                .sum::<f64>()
                .max(1.0);
            if residual > BASIS_RESIDUAL_TOL * scale {
                return Err(Error::Verification { index, residual });
            }
            let eigs = eigvalsh(&h)?;
            let clusters = degeneracy_clusters(&eigs, DEFAULT_DEGENERACY_TOL);
            let pos = locate_level(&eigs, &clusters, eigenvalue, DEFAULT_DEGENERACY_TOL)?;
            Ok(SampleRecord {
                index,
                coefficients,
                eigenvalue,
                level: pos.index,
                normalized: pos.normalized,
                degenerate: pos.degenerate,
            })
        })
        .collect()
}

/// Aggregate of a random-coupling run. Position statistics cover only samples
/// where the state's level is non-degenerate.
#[derive(Debug, Clone, PartialEq)]
pub struct SamplingReport {
    pub seed: u64,
    pub samples: usize,
    pub nondegenerate: usize,
    pub mean_normalized_position: f64,
    /// Lowest level reached by a non-degenerate sample, if any.
    pub min_level_index: Option<usize>,
    pub degenerate_fraction: f64,
}

impl SamplingReport {
    pub fn from_records(seed: u64, records: &[SampleRecord]) -> Self {
        let clean: Vec<&SampleRecord> = records.iter().filter(|r| !r.degenerate).collect();
        let mean = if clean.is_empty() {
            f64::NAN
        } else {
            clean.iter().map(|r| r.normalized).sum::<f64>() / clean.len() as f64
        };
        let degenerate = records.len() - clean.len();
        Self {
            seed,
            samples: records.len(),
            nondegenerate: clean.len(),
            mean_normalized_position: mean,
            min_level_index: clean.iter().map(|r| r.level).min(),
            degenerate_fraction: if records.is_empty() {
                0.0
            } else {
                degenerate as f64 / records.len() as f64
            },
        }
    }
}

/// Random-coupling experiment with couplings uniform in `[-1, 1]`.
pub fn random_coupling_experiment(
    state: &PureState,
    family: &CouplingFamily,
    n_samples: usize,
    seed: u64,
) -> Result<SamplingReport> {
    let records = sample_levels(state, family, n_samples, CoefficientRange::default(), seed)?;
    Ok(SamplingReport::from_records(seed, &records))
}

/// How often the state was the ground level.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NogoReport {
    pub samples: usize,
    pub ground_nondegenerate: usize,
    pub ground_degenerate: usize,
    pub excited: usize,
}

/// Counts samples where `state` is (a) the non-degenerate ground level, (b) a
/// degenerate ground level, (c) an excited level.
pub fn nogo_probe_with(
    state: &PureState,
    family: &CouplingFamily,
    n_samples: usize,
    range: CoefficientRange,
    seed: u64,
) -> Result<NogoReport> {
    let records = sample_levels(state, family, n_samples, range, seed)?;
    let mut report = NogoReport {
        samples: records.len(),
        ground_nondegenerate: 0,
        ground_degenerate: 0,
        excited: 0,
    };
    for r in &records {
        match (r.level, r.degenerate) {
            (0, false) => report.ground_nondegenerate += 1,
            (0, true) => report.ground_degenerate += 1,
            _ => report.excited += 1,
        }
    }
    Ok(report)
}

/// [`nogo_probe_with`] over couplings uniform in `[-1, 1]`.
pub fn nogo_probe(
    state: &PureState,
    family: &CouplingFamily,
    n_samples: usize,
    seed: u64,
) -> Result<NogoReport> {
    nogo_probe_with(state, family, n_samples, CoefficientRange::default(), seed)
}
