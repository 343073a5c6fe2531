//! Pauli-string operators.
//!
//! A [`PauliOperator`] is a real-weighted sum of `n`-site Pauli strings and is
//! therefore Hermitian. Strings act matrix-free: with `x` the mask of X/Y sites,
//! `z` the mask of Z/Y sites and `y` the number of Y letters,
//!
//! ```text
//! P|k> = i^y (-1)^popcount(k & z) |k ^ x>
//! ```
//!
//! which follows from `Y = iXZ`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::DMatrix;
use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::state::{bit_position, PureState, MAX_QUBITS};

/// Largest register for [`decompose`], which enumerates all `4^n` strings.
pub const MAX_DECOMPOSE_QUBITS: usize = 8;

/// Coefficients below this magnitude are dropped by [`decompose`].
pub const DECOMPOSE_CUTOFF: f64 = 1e-12;

/// Hermiticity tolerance for matrices handed to [`decompose`].
pub const HERMITIAN_INPUT_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub const ALL: [Pauli; 4] = [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z];

    pub fn as_char(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }

    pub fn from_char(c: char) -> Option<Self> {
        match c.to_ascii_uppercase() {
            'I' => Some(Pauli::I),
            'X' => Some(Pauli::X),
            'Y' => Some(Pauli::Y),
            'Z' => Some(Pauli::Z),
            _ => None,
        }
    }

    /// The 2x2 matrix, row-major.
    pub fn matrix(self) -> [[Complex64; 2]; 2] {
        let o = Complex64::new(0.0, 0.0);
        let r = |x: f64| Complex64::new(x, 0.0);
        let i = |x: f64| Complex64::new(0.0, x);
        match self {
            Pauli::I => [[r(1.0), o], [o, r(1.0)]],
            Pauli::X => [[o, r(1.0)], [r(1.0), o]],
            Pauli::Y => [[o, i(-1.0)], [i(1.0), o]],
            Pauli::Z => [[r(1.0), o], [o, r(-1.0)]],
        }
    }
}

impl fmt::Display for Pauli {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

/// A weighted Pauli string `coefficient * (P_1 (x) ... (x) P_n)`.
#[derive(Debug, Clone, PartialEq)]
pub struct PauliTerm {
    letters: Vec<Pauli>,
    coefficient: f64,
}

impl PauliTerm {
    /// # Panics
    /// If `coefficient` is not finite.
    pub fn new(letters: Vec<Pauli>, coefficient: f64) -> Self {
        assert!(coefficient.is_finite(), "non-finite Pauli coefficient");
        Self {
            letters,
            coefficient,
        }
    }

    /// Builds a term from `(site, letter)` pairs with 1-based sites.
    pub fn from_sites(n: usize, sites: &[(usize, Pauli)], coefficient: f64) -> Result<Self> {
        let mut letters = vec![Pauli::I; n];
        for &(site, p) in sites {
            if site == 0 || site > n {
                return Err(Error::InvalidArgument(format!(
                    "site {site} outside 1..={n}"
                )));
            }
            if letters[site - 1] != Pauli::I {
                return Err(Error::InvalidArgument(format!("site {site} repeated")));
            }
            letters[site - 1] = p;
        }
        Ok(Self::new(letters, coefficient))
    }

    pub fn identity(n: usize, coefficient: f64) -> Self {
        Self::new(vec![Pauli::I; n], coefficient)
    }

    pub fn n(&self) -> usize {
        self.letters.len()
    }

    pub fn letters(&self) -> &[Pauli] {
        &self.letters
    }

    pub fn coefficient(&self) -> f64 {
        self.coefficient
    }

    pub fn with_coefficient(&self, coefficient: f64) -> Self {
        Self::new(self.letters.clone(), coefficient)
    }

    /// Number of non-identity letters.
    pub fn weight(&self) -> usize {
        self.letters.iter().filter(|&&p| p != Pauli::I).count()
    }

    /// 1-based sites carrying a non-identity letter.
    pub fn support(&self) -> Vec<usize> {
        self.letters
            .iter()
            .enumerate()
            .filter(|(_, &p)| p != Pauli::I)
            .map(|(i, _)| i + 1)
            .collect()
    }

    pub(crate) fn action(&self) -> StringAction {
        StringAction::new(&self.letters)
    }
}

impl fmt::Display for PauliTerm {
    /// Hamiltonian-file line: `<coefficient> X1 Z2`, or `<coefficient> I`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.coefficient)?;
        let support = self.support();
        if support.is_empty() {
            return write!(f, " I");
        }
        for site in support {
            write!(f, " {}{}", self.letters[site - 1], site)?;
        }
        Ok(())
    }
}

/// Bit-level action of a Pauli string.
#[derive(Debug, Clone, Copy)]
pub(crate) struct StringAction {
    x_mask: usize,
    z_mask: usize,
    y_phase: Complex64,
}

impl StringAction {
    fn new(letters: &[Pauli]) -> Self {
        let n = letters.len();
        let (mut x_mask, mut z_mask, mut ys) = (0usize, 0usize, 0u32);
        for (i, &p) in letters.iter().enumerate() {
            let bit = 1usize << bit_position(n, i + 1);
            match p {
                Pauli::I => {}
                Pauli::X => x_mask |= bit,
                Pauli::Z => z_mask |= bit,
                Pauli::Y => {
                    x_mask |= bit;
                    z_mask |= bit;
                    ys += 1;
                }
            }
        }
        let y_phase = match ys % 4 {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        };
        Self {
            x_mask,
            z_mask,
            y_phase,
        }
    }

    /// `(target, phase)` with `P|k> = phase |target>`.
    #[inline]
    pub(crate) fn image(&self, k: usize) -> (usize, Complex64) {
        let phase = if (k & self.z_mask).count_ones() % 2 == 0 {
            self.y_phase
        } else {
            -self.y_phase
        };
        (k ^ self.x_mask, phase)
    }
}

/// A canonical real-weighted sum of Pauli strings on `n` sites.
///
/// Canonical form: no repeated letter patterns, no zero coefficients, terms
/// sorted lexicographically with `I < X < Y < Z`.
#[derive(Debug, Clone, PartialEq)]
pub struct PauliOperator {
    n: usize,
    terms: Vec<PauliTerm>,
}

impl PauliOperator {
    pub fn zero(n: usize) -> Self {
        Self { n, terms: vec![] }
    }

    /// Sums `terms` into canonical form. Every term must have `n` sites.
    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = PauliTerm>) -> Result<Self> {
        let mut acc: BTreeMap<Vec<Pauli>, f64> = BTreeMap::new();
        for t in terms {
            if t.n() != n {
                return Err(Error::QubitMismatch {
                    left: n,
                    right: t.n(),
                });
            }
            *acc.entry(t.letters).or_insert(0.0) += t.coefficient;
        }
        Ok(Self::from_map(n, acc))
    }

    fn from_map(n: usize, acc: BTreeMap<Vec<Pauli>, f64>) -> Self {
        let terms = acc
            .into_iter()
            .filter(|(_, c)| *c != 0.0)
            .map(|(letters, c)| PauliTerm::new(letters, c))
            .collect();
        Self { n, terms }
    }

    /// Single-term operator built from 1-based `(site, letter)` pairs.
    pub fn term(n: usize, sites: &[(usize, Pauli)], coefficient: f64) -> Result<Self> {
        Self::from_terms(n, [PauliTerm::from_sites(n, sites, coefficient)?])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &[PauliTerm] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient_of(&self, letters: &[Pauli]) -> f64 {
        self.terms
            .binary_search_by(|t| t.letters.as_slice().cmp(letters))
            .map(|i| self.terms[i].coefficient)
            .unwrap_or(0.0)
    }

    /// Sum of absolute coefficients, an upper bound on the spectral norm.
    pub fn coefficient_norm(&self) -> f64 {
        self.terms.iter().map(|t| t.coefficient.abs()).sum()
    }

    /// Terms whose weight satisfies `keep`.
    pub fn filter_weight(&self, keep: impl Fn(usize) -> bool) -> Self {
        Self {
            n: self.n,
            terms: self
                .terms
                .iter()
                .filter(|t| keep(t.weight()))
                .cloned()
                .collect(),
        }
    }

    /// Drops terms with `|c| < cutoff`.
    pub fn chop(&self, cutoff: f64) -> Self {
        Self {
            n: self.n,
            terms: self
                .terms
                .iter()
                .filter(|t| t.coefficient.abs() >= cutoff)
                .cloned()
                .collect(),
        }
    }

    pub fn scaled(&self, factor: f64) -> Self {
        let acc = self
            .terms
            .iter()
            .map(|t| (t.letters.clone(), t.coefficient * factor))
            .collect();
        Self::from_map(self.n, acc)
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::QubitMismatch {
                left: self.n,
                right: other.n,
            });
        }
        Self::from_terms(self.n, self.terms.iter().chain(&other.terms).cloned())
    }

    /// Matrix-free action on a raw amplitude vector of length `2^n`.
    pub fn apply_vec(&self, amplitudes: &[Complex64]) -> Result<Vec<Complex64>> {
        let dim = 1usize << self.n;
        if amplitudes.len() != dim {
            return Err(Error::Length {
                expected: dim,
                got: amplitudes.len(),
            });
        }
        let mut out = vec![Complex64::new(0.0, 0.0); dim];
        for t in &self.terms {
            let act = t.action();
            for (k, a) in amplitudes.iter().enumerate() {
                let (target, phase) = act.image(k);
                out[target] += phase * a * t.coefficient;
            }
        }
        Ok(out)
    }
}

impl fmt::Display for PauliOperator {
    /// Hamiltonian-file text, one term per line.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for t in &self.terms {
            writeln!(f, "{t}")?;
        }
        Ok(())
    }
}

/// # Panics
/// If the site counts differ.
impl Add for PauliOperator {
    type Output = PauliOperator;
    fn add(self, rhs: PauliOperator) -> PauliOperator {
        self.try_add(&rhs)
            .expect("adding operators on different registers")
    }
}

/// # Panics
/// If the site counts differ.
impl Sub for PauliOperator {
    type Output = PauliOperator;
    fn sub(self, rhs: PauliOperator) -> PauliOperator {
        self.try_add(&rhs.scaled(-1.0))
            .expect("subtracting operators on different registers")
    }
}

impl Neg for PauliOperator {
    type Output = PauliOperator;
    fn neg(self) -> PauliOperator {
        self.scaled(-1.0)
    }
}

impl Mul<PauliOperator> for f64 {
    type Output = PauliOperator;
    fn mul(self, rhs: PauliOperator) -> PauliOperator {
        rhs.scaled(self)
    }
}

fn check_matrix_qubits(n: usize) -> Result<()> {
    if n > MAX_QUBITS {
        Err(Error::TooLarge(1usize << n.min(63)))
    } else {
        Ok(())
    }
}

/// Dense `2^n x 2^n` matrix of a single weighted string.
pub fn term_matrix(term: &PauliTerm) -> Result<DMatrix<Complex64>> {
    check_matrix_qubits(term.n())?;
    let dim = 1usize << term.n();
    let mut m = DMatrix::zeros(dim, dim);
    let act = term.action();
    for k in 0..dim {
        let (target, phase) = act.image(k);
        m[(target, k)] = phase * term.coefficient;
    }
    Ok(m)
}

/// Dense matrix of an operator.
pub fn sum_matrix(op: &PauliOperator) -> Result<DMatrix<Complex64>> {
    check_matrix_qubits(op.n)?;
    let dim = 1usize << op.n;
    let mut m = DMatrix::zeros(dim, dim);
    for t in &op.terms {
        let act = t.action();
        for k in 0..dim {
            let (target, phase) = act.image(k);
            m[(target, k)] += phase * t.coefficient;
        }
    }
    Ok(m)
}

/// `H|psi>` without materializing `H`.
pub fn apply(op: &PauliOperator, state: &PureState) -> Result<Vec<Complex64>> {
    if op.n != state.n() {
        return Err(Error::QubitMismatch {
            left: op.n,
            right: state.n(),
        });
    }
    op.apply_vec(state.amplitudes())
}

/// `<psi|H|psi>`; the imaginary part vanishes for real coefficients.
pub fn expectation(op: &PauliOperator, state: &PureState) -> Result<f64> {
    let h_psi = apply(op, state)?;
    Ok(state
        .amplitudes()
        .iter()
        .zip(&h_psi)
        .map(|(a, b)| a.conj() * b)
        .sum::<Complex64>()
        .re)
}

/// Largest entry of `|M - M^dagger|`.
pub fn hermitian_deviation(m: &DMatrix<Complex64>) -> f64 {
    let mut dev = 0.0f64;
    for i in 0..m.nrows() {
        for j in 0..=i.min(m.ncols().saturating_sub(1)) {
            dev = dev.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    dev
}

fn letters_from_index(n: usize, mut index: usize) -> Vec<Pauli> {
    let mut letters = vec![Pauli::I; n];
    for slot in letters.iter_mut().rev() {
        *slot = Pauli::ALL[index & 3];
        index >>= 2;
    }
    letters
}

/// Expands a Hermitian matrix in Pauli strings: `c_P = Tr(P M) / 2^n`.
///
/// All `4^n` strings are evaluated (in parallel, assembled in canonical order);
/// coefficients below `1e-12` are dropped.
pub fn decompose(matrix: &DMatrix<Complex64>, n: usize) -> Result<PauliOperator> {
    if n > MAX_DECOMPOSE_QUBITS {
        return Err(Error::TooLarge(1 << n.min(63)));
    }
    let dim = 1usize << n;
    if matrix.nrows() != dim || matrix.ncols() != dim {
        return Err(Error::Dimension {
            expected: dim,
            got: matrix.nrows().max(matrix.ncols()),
        });
    }
    let dev = hermitian_deviation(matrix);
    if dev > HERMITIAN_INPUT_TOL {
        return Err(Error::NotHermitian(dev));
    }
    let scale = 1.0 / dim as f64;
    let terms: Vec<PauliTerm> = (0..1usize << (2 * n))
        .into_par_iter()
        .filter_map(|index| {
            let letters = letters_from_index(n, index);
            let act = StringAction::new(&letters);
            // Tr(P M) = sum_c <c ^ x| P |c> M[c, c ^ x]
            let trace: Complex64 = (0..dim)
                .map(|c| {
                    let (r, phase) = act.image(c);
                    phase * matrix[(c, r)]
                })
                .sum();
            let coefficient = trace.re * scale;
            (coefficient.abs() >= DECOMPOSE_CUTOFF).then(|| PauliTerm::new(letters, coefficient))
        })
        .collect();
    Ok(PauliOperator { n, terms })
}

/// Pauli expansion of `|phi><phi|`.
pub fn projector(state: &PureState) -> Result<PauliOperator> {
    let psi = nalgebra::DVector::from_column_slice(state.amplitudes());
    decompose(&(&psi * psi.adjoint()), state.n())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TopologyKind {
    Ring,
    Chain,
    Complete,
}

impl std::str::FromStr for TopologyKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ring" => Ok(TopologyKind::Ring),
            "chain" => Ok(TopologyKind::Chain),
            "complete" => Ok(TopologyKind::Complete),
            other => Err(Error::UnknownName(other.to_string())),
        }
    }
}

/// Interaction graph on sites `1..=n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Topology {
    pub kind: TopologyKind,
    pub n: usize,
}

impl Topology {
    pub fn ring(n: usize) -> Self {
        Self {
            kind: TopologyKind::Ring,
            n,
        }
    }

    pub fn chain(n: usize) -> Self {
        Self {
            kind: TopologyKind::Chain,
            n,
        }
    }

    pub fn complete(n: usize) -> Self {
        Self {
            kind: TopologyKind::Complete,
            n,
        }
    }

    /// Undirected edges `(i, j)` with `i < j`, deduplicated, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let n = self.n;
        let mut edges: Vec<(usize, usize)> = match self.kind {
            TopologyKind::Chain => (1..n).map(|i| (i, i + 1)).collect(),
            TopologyKind::Ring if n >= 2 => (1..=n).map(|i| (i, i % n + 1)).collect(),
            TopologyKind::Ring => vec![],
            TopologyKind::Complete => (1..=n)
                .flat_map(|i| (i + 1..=n).map(move |j| (i, j)))
                .collect(),
        };
        for e in edges.iter_mut() {
            if e.0 > e.1 {
                *e = (e.1, e.0);
            }
        }
        edges.sort_unstable();
        edges.dedup();
        edges
    }

    pub fn adjacent(&self, a: usize, b: usize) -> bool {
        let e = if a < b { (a, b) } else { (b, a) };
        self.edges().contains(&e)
    }

    /// Few-body and nearest-neighbour: weight at most one, or weight two on an
    /// edge.
    pub fn is_local(&self, term: &PauliTerm) -> bool {
        if term.n() != self.n {
            return false;
        }
        match term.support().as_slice() {
            [] | [_] => true,
            [a, b] => self.adjacent(*a, *b),
            _ => false,
        }
    }

    /// All unit-weight local strings: `3n` fields, then nine letter pairs per
    /// edge (mixed pairs such as XY and YX are distinct strings).
    pub fn candidate_local_terms(&self) -> Vec<PauliTerm> {
        let n = self.n;
        let axes = [Pauli::X, Pauli::Y, Pauli::Z];
        let mut out = Vec::with_capacity(3 * n + 9 * self.edges().len());
        for site in 1..=n {
            for &p in &axes {
                out.push(PauliTerm::from_sites(n, &[(site, p)], 1.0).expect("site in range"));
            }
        }
        for (a, b) in self.edges() {
            for &p in &axes {
                for &q in &axes {
                    out.push(
                        PauliTerm::from_sites(n, &[(a, p), (b, q)], 1.0).expect("sites in range"),
                    );
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models;
    use Pauli::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn single_letter_matrices() {
        let z = term_matrix(&PauliTerm::new(vec![Z], 1.0)).unwrap();
        assert_eq!(
            z,
            DMatrix::from_row_slice(2, 2, &[c(1., 0.), c(0., 0.), c(0., 0.), c(-1., 0.)])
        );

        let xi = term_matrix(&PauliTerm::new(vec![X, I], 2.0)).unwrap();
        // 2 (X (x) 1): rows 0,1 couple to rows 2,3
        for (r, col) in [(0, 2), (1, 3), (2, 0), (3, 1)] {
            assert_eq!(xi[(r, col)], c(2.0, 0.0));
        }
        assert_eq!(xi.iter().filter(|z| z.norm() > 0.0).count(), 4);
    }

    #[test]
    fn yy_is_signed_antidiagonal() {
        let yy = term_matrix(&PauliTerm::new(vec![Y, Y], 1.0)).unwrap();
        // <0|YY|3> = (-i)(-i)
        let expected = [-1.0, 1.0, 1.0, -1.0];
        for (row, sign) in expected.iter().enumerate() {
            assert_eq!(yy[(row, 3 - row)], c(*sign, 0.0));
        }
        assert_eq!(yy.iter().filter(|z| z.norm() > 0.0).count(), 4);
    }

    #[test]
    fn canonical_form_merges_and_sorts() {
        let op = PauliOperator::from_terms(
            2,
            [
                PauliTerm::new(vec![Z, I], 1.0),
                PauliTerm::new(vec![I, X], 0.5),
                PauliTerm::new(vec![Z, I], -1.0),
                PauliTerm::new(vec![I, I], 2.0),
            ],
        )
        .unwrap();
        assert_eq!(op.len(), 2);
        assert_eq!(op.terms()[0].letters(), &[I, I]);
        assert_eq!(op.terms()[1].letters(), &[I, X]);
        assert_eq!(op.coefficient_of(&[Z, I]), 0.0);
        assert!(PauliOperator::from_terms(3, [PauliTerm::new(vec![Z], 1.0)]).is_err());
    }

    #[test]
    fn apply_basics() {
        let z1 = PauliOperator::term(1, &[(1, Z)], 1.0).unwrap();
        let x1 = PauliOperator::term(1, &[(1, X)], 1.0).unwrap();
        let zero = PureState::basis(1, 0).unwrap();
        assert_eq!(apply(&z1, &zero).unwrap(), vec![c(1., 0.), c(0., 0.)]);
        assert_eq!(apply(&x1, &zero).unwrap(), vec![c(0., 0.), c(1., 0.)]);
        assert_eq!(expectation(&z1, &zero).unwrap(), 1.0);
        assert!(apply(&z1, &PureState::basis(2, 0).unwrap()).is_err());
    }

    #[test]
    fn hjk3_maps_ghz_to_three_ghz() {
        let g = models::g1_plus();
        let out = apply(&models::hjk3(1.0, 1.0), &g).unwrap();
        for (o, a) in out.iter().zip(g.amplitudes()) {
            assert!((o - a * 3.0).norm() < 1e-12);
        }
    }

    #[test]
    fn sum_matrix_edge_cases() {
        let empty = sum_matrix(&PauliOperator::zero(2)).unwrap();
        assert!(empty.iter().all(|z| z.norm() == 0.0));
        let id = sum_matrix(&PauliOperator::term(2, &[], 1.0).unwrap()).unwrap();
        assert_eq!(id, DMatrix::identity(4, 4));
        let h = sum_matrix(&models::hjk3(1.0, 1.0)).unwrap();
        assert!(hermitian_deviation(&h) < 1e-14);
        let eigs = crate::spectral::eigvalsh(&h).unwrap();
        assert!(eigs.iter().any(|e| (e - 3.0).abs() < 1e-10));
        assert!(sum_matrix(&PauliOperator::zero(13)).is_err());
    }

    #[test]
    fn decompose_identity_and_errors() {
        let op = decompose(&DMatrix::identity(8, 8), 3).unwrap();
        assert_eq!(op.len(), 1);
        assert_eq!(op.terms()[0].letters(), &[I, I, I]);
        assert!((op.terms()[0].coefficient() - 1.0).abs() < 1e-15);

        assert!(matches!(
            decompose(&DMatrix::identity(4, 4), 3),
            Err(Error::Dimension { .. })
        ));
        let mut skew = DMatrix::<Complex64>::zeros(2, 2);
        skew[(0, 1)] = c(1.0, 0.0);
        assert!(matches!(decompose(&skew, 1), Err(Error::NotHermitian(_))));
    }

    #[test]
    fn projector_of_zero_state() {
        let p = projector(&PureState::basis(1, 0).unwrap()).unwrap();
        assert_eq!(p.len(), 2);
        assert!((p.coefficient_of(&[I]) - 0.5).abs() < 1e-15);
        assert!((p.coefficient_of(&[Z]) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn projector_of_ghz_has_printed_expansion() {
        let p = projector(&models::g1_plus()).unwrap();
        let e = 1.0 / 8.0;
        let expected: &[(&[Pauli], f64)] = &[
            (&[I, I, I], e),
            (&[Z, Z, I], e),
            (&[I, Z, Z], e),
            (&[Z, I, Z], e),
            (&[X, X, X], e),
            (&[X, Y, Y], -e),
            (&[Y, X, Y], -e),
            (&[Y, Y, X], -e),
        ];
        assert_eq!(p.len(), expected.len());
        for (letters, coef) in expected {
            assert!(
                (p.coefficient_of(letters) - coef).abs() < 1e-12,
                "{letters:?}"
            );
        }
        assert!((expectation(&p, &models::g1_plus()).unwrap() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn locality() {
        let ring = Topology::ring(4);
        let chain = Topology::chain(4);
        let t = |sites: &[(usize, Pauli)]| PauliTerm::from_sites(4, sites, 1.0).unwrap();
        assert!(ring.is_local(&t(&[(1, X), (2, Z)])));
        assert!(!ring.is_local(&t(&[(1, X), (3, Z)])));
        assert!(ring.is_local(&t(&[(1, X), (4, Z)])));
        assert!(!chain.is_local(&t(&[(1, X), (4, Z)])));
        assert!(ring.is_local(&t(&[(3, Y)])));
        assert!(ring.is_local(&t(&[])));
        assert!(!Topology::complete(4).is_local(&t(&[(1, X), (2, X), (3, X)])));
    }

    #[test]
    fn candidate_counts() {
        assert_eq!(Topology::complete(3).candidate_local_terms().len(), 36);
        assert_eq!(Topology::ring(4).candidate_local_terms().len(), 48);
        assert_eq!(Topology::chain(2).candidate_local_terms().len(), 15);
        assert_eq!(Topology::ring(2).candidate_local_terms().len(), 15);
        assert_eq!(Topology::ring(3).edges(), Topology::complete(3).edges());
        let ring = Topology::ring(5);
        assert!(ring
            .candidate_local_terms()
            .iter()
            .all(|t| ring.is_local(t)));
    }

    #[test]
    fn term_display_matches_file_format() {
        let t = PauliTerm::from_sites(3, &[(1, X), (2, Z)], 1.5).unwrap();
        assert_eq!(t.to_string(), "1.5 X1 Z2");
        assert_eq!(PauliTerm::identity(2, -0.5).to_string(), "-0.5 I");
    }
}
