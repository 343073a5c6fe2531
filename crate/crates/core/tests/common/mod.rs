//! Independent reference implementations shared by the integration tests.
#![allow(dead_code)]

use mmes_core::models::H2Params;
use mmes_core::{Complex64, DMatrix, Pauli, PureState};
use rand::Rng;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// 2x2 Pauli matrix written out by hand.
pub fn pauli_2x2(p: Pauli) -> DMatrix<Complex64> {
    let z = c(0.0, 0.0);
    let one = c(1.0, 0.0);
    let i = c(0.0, 1.0);
    let entries = match p {
        Pauli::I => [one, z, z, one],
        Pauli::X => [z, one, one, z],
        Pauli::Y => [z, -i, i, z],
        Pauli::Z => [one, z, z, -one],
    };
    DMatrix::from_row_slice(2, 2, &entries)
}

/// Dense Pauli string by explicit Kronecker products, site 1 leftmost.
pub fn kron_string(letters: &[Pauli]) -> DMatrix<Complex64> {
    letters
        .iter()
        .fold(DMatrix::from_element(1, 1, c(1.0, 0.0)), |acc, &p| {
            acc.kronecker(&pauli_2x2(p))
        })
}

/// `rho_A` from the full projector by summing over the complement explicitly.
pub fn brute_partial_trace(state: &PureState, members: &[usize]) -> DMatrix<Complex64> {
    let n = state.n();
    let psi = state.amplitudes();
    let rest: Vec<usize> = (1..=n).filter(|q| !members.contains(q)).collect();
    let full = DMatrix::from_fn(psi.len(), psi.len(), |r, s| psi[r] * psi[s].conj());
    // compose a full index from party bits a and complement bits b
    let index = |a: usize, b: usize| {
        let mut k = 0usize;
        for (pos, &q) in members.iter().enumerate() {
            let bit = (a >> (members.len() - 1 - pos)) & 1;
            k |= bit << (n - q);
        }
        for (pos, &q) in rest.iter().enumerate() {
            let bit = (b >> (rest.len() - 1 - pos)) & 1;
            k |= bit << (n - q);
        }
        k
    };
    let da = 1 << members.len();
    let db = 1 << rest.len();
    DMatrix::from_fn(da, da, |a1, a2| {
        (0..db).map(|b| full[(index(a1, b), index(a2, b))]).sum()
    })
}

pub fn random_state<R: Rng>(rng: &mut R, n: usize) -> PureState {
    let amps = (0..1usize << n)
        .map(|_| c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
        .collect();
    PureState::from_amplitudes(n, amps, true).unwrap()
}

/// Random couplings projected onto the 13 conditions that make `G_1^+` an
/// eigenstate: the last coupling in each constrained sum absorbs the rest.
pub fn constrained_h2<R: Rng>(rng: &mut R) -> H2Params {
    let mut p = H2Params::random(rng);
    p.hz[2] = -p.hz[0] - p.hz[1];
    // ordered pairs (1,2),(1,3),(2,1),(2,3),(3,1),(3,2): rows are consecutive
    for row in 0..3 {
        p.x[2 * row + 1] = -p.x[2 * row];
        p.y[2 * row + 1] = -p.y[2 * row];
    }
    let pair = |a: usize, b: usize| match (a.min(b), a.max(b)) {
        (1, 2) => 0,
        (1, 3) => 1,
        _ => 2,
    };
    for i in 1..=3usize {
        let others: Vec<usize> = (1..=3).filter(|&j| j != i).collect();
        let (j, k) = (others[0], others[1]);
        let s = pair(j, k);
        p.hx[i - 1] = p.jy[s] - p.jx[s];
        p.hy[i - 1] = p.k_at(j, k) + p.k_at(k, j);
    }
    p
}

pub fn max_abs_diff(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> f64 {
    (a - b).iter().map(|z| z.norm()).fold(0.0, f64::max)
}
