//! Reduced density matrices, purity and the potential of multipartite
//! entanglement.
//!
//! For a pure state and a party `A`, `pi_A = Tr(rho_A^2)` lies in
//! `[2^-|A|, 1]`. The potential `pi_ME` averages `pi_A` over every balanced
//! party (`|A| = floor(n/2)`); a state reaching `2^-floor(n/2)` is a perfect
//! MMES.

use std::collections::BTreeMap;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::state::{bit_position, Bipartition, PureState};

/// Exact-arithmetic identities (trace, Hermiticity) are checked at this level.
pub const EXACT_TOL: f64 = 1e-12;

/// A reduced density matrix `rho_A`.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    matrix: DMatrix<Complex64>,
}

impl DensityMatrix {
    /// Validates a square matrix as a density matrix: Hermitian and of unit
    /// trace within `1e-12`, with eigenvalues no lower than `-1e-12`.
    pub fn new(matrix: DMatrix<Complex64>) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::Dimension {
                expected: matrix.nrows(),
                got: matrix.ncols(),
            });
        }
        let dev = crate::pauli::hermitian_deviation(&matrix);
        if dev > EXACT_TOL {
            return Err(Error::NotHermitian(dev));
        }
        let trace = matrix.trace();
        if (trace.re - 1.0).abs() > EXACT_TOL || trace.im.abs() > EXACT_TOL {
            return Err(Error::InvalidArgument(format!("trace {trace} is not 1")));
        }
        let lowest = crate::spectral::eigvalsh(&matrix)?
            .first()
            .copied()
            .unwrap_or(0.0);
        if lowest < -EXACT_TOL {
            return Err(Error::InvalidArgument(format!(
                "negative eigenvalue {lowest:e}"
            )));
        }
        Ok(Self { matrix })
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.matrix
    }

    pub fn trace(&self) -> Complex64 {
        self.matrix.trace()
    }
}

/// Index maps splitting a computational index into its party and complement
/// parts. `party[k]` reads the bits of `members` in order (first member most
/// significant); `rest[k]` does the same for the complement.
pub(crate) struct IndexSplit {
    pub party: Vec<usize>,
    pub rest: Vec<usize>,
    pub party_dim: usize,
    pub rest_dim: usize,
}

pub(crate) fn split_indices(n: usize, members: &[usize]) -> IndexSplit {
    let complement: Vec<usize> = (1..=n).filter(|q| !members.contains(q)).collect();
    let gather = |qubits: &[usize], k: usize| {
        qubits.iter().fold(0usize, |acc, &q| {
            (acc << 1) | ((k >> bit_position(n, q)) & 1)
        })
    };
    let dim = 1usize << n;
    IndexSplit {
        party: (0..dim).map(|k| gather(members, k)).collect(),
        rest: (0..dim).map(|k| gather(&complement, k)).collect(),
        party_dim: 1 << members.len(),
        rest_dim: 1 << complement.len(),
    }
}

/// `rho_A = Tr_{complement} |psi><psi|`.
pub fn reduced_density(state: &PureState, part: &Bipartition) -> Result<DensityMatrix> {
    if part.n() != state.n() {
        return Err(Error::QubitMismatch {
            left: state.n(),
            right: part.n(),
        });
    }
    let split = split_indices(state.n(), part.members());
    // reshape psi into a party x rest matrix, then rho = M M^dagger
    let mut m = DMatrix::<Complex64>::zeros(split.party_dim, split.rest_dim);
    for (k, amp) in state.amplitudes().iter().enumerate() {
        m[(split.party[k], split.rest[k])] = *amp;
    }
    let mut matrix = &m * m.adjoint();
    // the product is Hermitian up to rounding; make it exactly so
    for i in 0..matrix.nrows() {
        matrix[(i, i)].im = 0.0;
        for j in 0..i {
            let avg = (matrix[(i, j)] + matrix[(j, i)].conj()) * 0.5;
            matrix[(i, j)] = avg;
            matrix[(j, i)] = avg.conj();
        }
    }
    Ok(DensityMatrix { matrix })
}

/// `Tr(rho^2)`, computed as the squared Frobenius norm of the Hermitian `rho`.
pub fn purity(rho: &DensityMatrix) -> f64 {
    rho.matrix.iter().map(|z| z.norm_sqr()).sum()
}

/// Every party of size `floor(n/2)`, in lexicographic order.
///
/// For even `n` a party and its complement both appear, matching the binomial
/// normalisation of the average.
pub fn balanced_bipartitions(n: usize) -> Result<Vec<Bipartition>> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!(
            "balanced bipartitions need n >= 2, got {n}"
        )));
    }
    crate::state::check_qubits(n)?;
    let size = n / 2;
    let mut out = Vec::new();
    let mut combo: Vec<usize> = (1..=size).collect();
    loop {
        out.push(Bipartition::new(n, combo.iter().copied())?);
        // advance to the next combination in lexicographic order
        let mut i = size;
        while i > 0 && combo[i - 1] == n - size + i {
            i -= 1;
        }
        if i == 0 {
            break;
        }
        combo[i - 1] += 1;
        for j in i..size {
            combo[j] = combo[j - 1] + 1;
        }
    }
    Ok(out)
}

/// Purity of every balanced bipartition.
pub fn purity_table(state: &PureState) -> Result<BTreeMap<Bipartition, f64>> {
    balanced_bipartitions(state.n())?
        .into_iter()
        .map(|part| {
            let p = purity(&reduced_density(state, &part)?);
            Ok((part, p))
        })
        .collect()
}

/// Potential of multipartite entanglement: mean balanced purity.
pub fn pme(state: &PureState) -> Result<f64> {
    let table = purity_table(state)?;
    Ok(table.values().sum::<f64>() / table.len() as f64)
}

/// Lower bound `2^-floor(n/2)` of `pi_ME`.
pub fn pme_lower_bound(n: usize) -> f64 {
    0.5f64.powi((n / 2) as i32)
}

/// True iff every balanced purity equals `2^-floor(n/2)` within `tol`.
pub fn is_perfect_mmes(state: &PureState, tol: f64) -> Result<bool> {
    let bound = pme_lower_bound(state.n());
    Ok(purity_table(state)?
        .values()
        .all(|p| (p - bound).abs() <= tol))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models;

    fn ghz3() -> PureState {
        PureState::from_real(3, &[1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0], true).unwrap()
    }

    #[test]
    fn ghz_single_qubit_marginal_is_maximally_mixed() {
        let rho = reduced_density(&ghz3(), &Bipartition::new(3, [1]).unwrap()).unwrap();
        assert_eq!(rho.dim(), 2);
        let m = rho.matrix();
        assert!((m[(0, 0)].re - 0.5).abs() < 1e-15);
        assert!((m[(1, 1)].re - 0.5).abs() < 1e-15);
        assert!(m[(0, 1)].norm() < 1e-15);
    }

    #[test]
    fn product_state_marginal_is_pure() {
        let s = PureState::basis(3, 0).unwrap();
        let rho = reduced_density(&s, &Bipartition::new(3, [1, 2]).unwrap()).unwrap();
        assert_eq!(rho.dim(), 4);
        assert!((rho.matrix()[(0, 0)].re - 1.0).abs() < 1e-15);
        assert!((purity(&rho) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn m5_pair_marginal_has_quarter_purity() {
        let rho = reduced_density(&models::m5(), &Bipartition::new(5, [1, 2]).unwrap()).unwrap();
        assert!((purity(&rho) - 0.25).abs() < 1e-12);
    }

    #[test]
    fn mismatched_party_is_rejected() {
        let part = Bipartition::new(4, [1, 2]).unwrap();
        assert!(matches!(
            reduced_density(&ghz3(), &part),
            Err(Error::QubitMismatch { .. })
        ));
    }

    #[test]
    fn purity_of_diagonal_matrices() {
        let c = |x: f64| Complex64::new(x, 0.0);
        let mixed = DensityMatrix::new(DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![
            c(0.5),
            c(0.5),
        ])))
        .unwrap();
        assert!((purity(&mixed) - 0.5).abs() < 1e-15);
        let skewed =
            DensityMatrix::new(DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![
                c(0.75),
                c(0.25),
            ])))
            .unwrap();
        // 9/16 + 1/16
        assert!((purity(&skewed) - 0.625).abs() < 1e-15);
        let pure = DensityMatrix::new(DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![
            c(1.0),
            c(0.0),
        ])))
        .unwrap();
        assert!((purity(&pure) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn density_matrix_validation() {
        let c = |x: f64| Complex64::new(x, 0.0);
        assert!(
            DensityMatrix::new(DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![
                c(0.7),
                c(0.7)
            ])))
            .is_err()
        );
        assert!(
            DensityMatrix::new(DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![
                c(1.5),
                c(-0.5)
            ])))
            .is_err()
        );
        let skew = DMatrix::from_row_slice(2, 2, &[c(0.5), c(0.1), c(0.2), c(0.5)]);
        assert!(matches!(
            DensityMatrix::new(skew),
            Err(Error::NotHermitian(_))
        ));
    }

    #[test]
    fn balanced_bipartition_counts_and_order() {
        let three = balanced_bipartitions(3).unwrap();
        let members: Vec<_> = three.iter().map(|b| b.members().to_vec()).collect();
        assert_eq!(members, vec![vec![1], vec![2], vec![3]]);
        assert_eq!(balanced_bipartitions(4).unwrap().len(), 6);
        let five = balanced_bipartitions(5).unwrap();
        assert_eq!(five.len(), 10);
        assert_eq!(five[0].members(), &[1, 2]);
        assert_eq!(five[9].members(), &[4, 5]);
        assert!(five.windows(2).all(|w| w[0] < w[1]));
        assert!(balanced_bipartitions(1).is_err());
    }

    #[test]
    fn pme_reference_values() {
        assert!((pme(&PureState::basis(3, 0).unwrap()).unwrap() - 1.0).abs() < 1e-12);
        assert!((pme(&ghz3()).unwrap() - 0.5).abs() < 1e-12);
        assert!((pme(&models::m4()).unwrap() - 1.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn purity_tables() {
        let t = purity_table(&ghz3()).unwrap();
        assert_eq!(t.len(), 3);
        assert!(t.values().all(|p| (p - 0.5).abs() < 1e-12));

        let t = purity_table(&models::m5()).unwrap();
        assert_eq!(t.len(), 10);
        assert!(t.values().all(|p| (p - 0.25).abs() < 1e-12));

        let t = purity_table(&PureState::basis(4, 0).unwrap()).unwrap();
        assert_eq!(t.len(), 6);
        assert!(t.values().all(|p| (p - 1.0).abs() < 1e-12));
    }

    #[test]
    fn perfect_mmes_verdicts() {
        assert!(is_perfect_mmes(&ghz3(), 1e-10).unwrap());
        assert!(!is_perfect_mmes(&models::m4(), 1e-10).unwrap());
        assert!(is_perfect_mmes(&models::m5(), 1e-10).unwrap());
    }
}
