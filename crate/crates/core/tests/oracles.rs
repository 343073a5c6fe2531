//! Library results checked against independent brute-force constructions.

mod common;

use common::*;
use mmes_core::entanglement::reduced_density;
use mmes_core::models::{self, hjk3, hjk3_ground_energy_formula, hjk4};
use mmes_core::optimize::pme_gradient;
use mmes_core::pauli::{decompose, projector, sum_matrix, term_matrix};
use mmes_core::spectral::eigvalsh;
use mmes_core::{
    balanced_bipartitions, pme, Bipartition, Complex64, DMatrix, Pauli, PauliOperator, PauliTerm,
    PureState,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn all_strings(n: usize) -> Vec<Vec<Pauli>> {
    (0..4usize.pow(n as u32))
        .map(|mut idx| {
            let mut letters = vec![Pauli::I; n];
            for slot in (0..n).rev() {
                letters[slot] = Pauli::ALL[idx % 4];
                idx /= 4;
            }
            letters
        })
        .collect()
}

#[test]
fn term_matrices_match_kronecker_products() {
    for n in 1..=3 {
        for letters in all_strings(n) {
            let m = term_matrix(&PauliTerm::new(letters.clone(), 1.0)).unwrap();
            assert!(
                max_abs_diff(&m, &kron_string(&letters)) < 1e-15,
                "{letters:?}"
            );
        }
    }
}

#[test]
fn pauli_strings_are_trace_orthogonal() {
    for n in 1..=3 {
        let mats: Vec<_> = all_strings(n).iter().map(|l| kron_string(l)).collect();
        let dim = (1usize << n) as f64;
        for (i, a) in mats.iter().enumerate() {
            for (j, b) in mats.iter().enumerate() {
                let tr = (a * b).trace();
                let want = if i == j { dim } else { 0.0 };
                assert!((tr - Complex64::new(want, 0.0)).norm() < 1e-12);
            }
        }
    }
}

#[test]
fn reduced_density_matches_explicit_partial_trace() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for n in 2..=4 {
        for _ in 0..20 {
            let s = random_state(&mut rng, n);
            for size in 1..n {
                for part in subsets(n, size) {
                    let got =
                        reduced_density(&s, &Bipartition::new(n, part.clone()).unwrap()).unwrap();
                    let want = brute_partial_trace(&s, &part);
                    assert!(max_abs_diff(got.matrix(), &want) < 1e-12);
                }
            }
        }
    }
}

fn subsets(n: usize, size: usize) -> Vec<Vec<usize>> {
    (0u32..1 << n)
        .filter(|m| m.count_ones() as usize == size)
        .map(|m| (1..=n).filter(|q| m >> (n - q) & 1 == 1).collect())
        .collect()
}

#[test]
fn pme_matches_brute_force_average() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for n in 2..=5 {
        let s = random_state(&mut rng, n);
        let parts = subsets(n, n / 2);
        let mean: f64 = parts
            .iter()
            .map(|p| {
                let rho = brute_partial_trace(&s, p);
                (&rho * &rho).trace().re
            })
            .sum::<f64>()
            / parts.len() as f64;
        assert_eq!(balanced_bipartitions(n).unwrap().len(), parts.len());
        assert!((pme(&s).unwrap() - mean).abs() < 1e-12);
    }
}

#[test]
fn decomposition_matches_trace_formula() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let s = random_state(&mut rng, 3);
    let psi = s.amplitudes();
    let proj = DMatrix::from_fn(8, 8, |r, c| psi[r] * psi[c].conj());
    let op = decompose(&proj, 3).unwrap();
    for letters in all_strings(3) {
        let want = (kron_string(&letters) * &proj).trace() / 8.0;
        assert!(want.im.abs() < 1e-15);
        assert!((op.coefficient_of(&letters) - want.re).abs() < 1e-12);
    }
}

#[test]
fn m4_projector_is_the_stabilizer_group_average() {
    // generators of the four-qubit state's stabilizer group, written out
    let g = |s: &str| -> DMatrix<Complex64> {
        let letters: Vec<Pauli> = s.chars().map(|ch| Pauli::from_char(ch).unwrap()).collect();
        kron_string(&letters)
    };
    let p = projector(&models::m4()).unwrap();
    let dense = sum_matrix(&p).unwrap();
    for stab in ["ZIIX", "IZXI", "XIXZ"] {
        let m = g(stab);
        assert!(max_abs_diff(&(&m * &dense), &dense) < 1e-12, "{stab}");
    }
}

#[test]
fn hamiltonians_match_dense_construction() {
    let (j, k) = (0.37, -1.21);
    let ring3 = [(1, 2), (2, 3), (3, 1)];
    let site = |n: usize, pairs: &[(usize, Pauli)]| {
        let mut letters = vec![Pauli::I; n];
        for &(s, p) in pairs {
            letters[s - 1] = p;
        }
        kron_string(&letters)
    };
    let mut want = DMatrix::<Complex64>::zeros(8, 8);
    for &(a, b) in &ring3 {
        want += site(3, &[(a, Pauli::Z), (b, Pauli::Z)]) * Complex64::new(j, 0.0);
        want += site(3, &[(a, Pauli::X), (b, Pauli::X)]) * Complex64::new(k, 0.0);
        want -= site(3, &[(a, Pauli::X)]) * Complex64::new(k, 0.0);
    }
    assert!(max_abs_diff(&sum_matrix(&hjk3(j, k)).unwrap(), &want) < 1e-14);

    // four-qubit family checked through its action on the target state
    let h = sum_matrix(&hjk4(j, k)).unwrap();
    let psi = nalgebra::DVector::from_column_slice(models::m4().amplitudes());
    let out = &h * &psi - &psi * Complex64::new(2.0 * j, 0.0);
    assert!(out.norm() < 1e-12);
}

#[test]
fn hjk3_ground_energy_matches_closed_form() {
    for &(j, k) in &[(-1.0, 1.0), (1.0, -1.0), (-0.5, -0.25), (2.0, -1.3)] {
        let eigs = eigvalsh(&sum_matrix(&hjk3(j, k)).unwrap()).unwrap();
        assert!((eigs[0] - hjk3_ground_energy_formula(j, k)).abs() < 1e-9);
    }
    // (J, k) = (-1, 1): 1 - 2 sqrt(7)
    let eigs = eigvalsh(&sum_matrix(&hjk3(-1.0, 1.0)).unwrap()).unwrap();
    assert!((eigs[0] - (1.0 - 2.0 * 7f64.sqrt())).abs() < 1e-12);
}

#[test]
fn single_term_spectra() {
    // a Pauli string has eigenvalues +-c, each with multiplicity 2^(n-1)
    for (n, letters) in [(1, vec![Pauli::Y]), (2, vec![Pauli::X, Pauli::Z])] {
        let op = PauliOperator::from_terms(n, [PauliTerm::new(letters, 1.5)]).unwrap();
        let eigs = eigvalsh(&sum_matrix(&op).unwrap()).unwrap();
        let half = eigs.len() / 2;
        assert!(eigs[..half].iter().all(|e| (e + 1.5).abs() < 1e-12));
        assert!(eigs[half..].iter().all(|e| (e - 1.5).abs() < 1e-12));
    }
    // a X + b Z has eigenvalues +-sqrt(a^2 + b^2)
    let op = PauliOperator::from_terms(
        1,
        [
            PauliTerm::new(vec![Pauli::X], 0.6),
            PauliTerm::new(vec![Pauli::Z], -0.8),
        ],
    )
    .unwrap();
    let eigs = eigvalsh(&sum_matrix(&op).unwrap()).unwrap();
    assert!((eigs[0] + 1.0).abs() < 1e-12 && (eigs[1] - 1.0).abs() < 1e-12);
}

#[test]
fn gradient_matches_differences_of_public_pme() {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for n in 3..=4 {
        let s = random_state(&mut rng, n);
        let grad = pme_gradient(&s).unwrap();
        let d = s.dim();
        let eps = 1e-6;
        let shifted = |i: usize, h: f64| {
            let mut amps = s.amplitudes().to_vec();
            if i < d {
                amps[i].re += h;
            } else {
                amps[i - d].im += h;
            }
            pme(&PureState::from_amplitudes(n, amps, true).unwrap()).unwrap()
        };
        for i in 0..2 * d {
            let fd = (shifted(i, eps) - shifted(i, -eps)) / (2.0 * eps);
            assert!((fd - grad[i]).abs() < 1e-6, "n={n} i={i}");
        }
    }
}
