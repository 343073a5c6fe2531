//! Named states and Hamiltonians.
//!
//! - the three-qubit GHZ basis `|G_i^±>` and the split of its projectors into
//!   two-body (`Q_i`) and three-body (`C_i`) parts,
//! - the general two-body three-qubit Hamiltonian and the linear conditions
//!   under which `|G_1^+>` is one of its eigenstates,
//! - the `H_Jk` families on three and four qubits,
//! - the uniform real MMES `M4` and the perfect MMES `M5`.

use std::f64::consts::FRAC_1_SQRT_2;

use rand::Rng;

use crate::entanglement::pme;
use crate::error::{Error, Result};
use crate::pauli::{projector, sum_matrix, Pauli, PauliOperator, PauliTerm};
use crate::spectral::{eigh, level_position, LevelPosition, DEFAULT_DEGENERACY_TOL};
use crate::state::PureState;

/// Sign pattern of the four-qubit uniform MMES (amplitudes `zeta / 4`).
pub const ZETA4: [i8; 16] = [1, 1, 1, 1, 1, 1, -1, -1, 1, -1, 1, -1, -1, 1, 1, -1];

/// Sign pattern of the five-qubit uniform perfect MMES (amplitudes
/// `zeta / (4 sqrt 2)`).
pub const ZETA5: [i8; 32] = [
    1, 1, 1, 1, 1, -1, -1, 1, 1, -1, -1, 1, 1, 1, 1, 1, 1, 1, -1, -1, 1, -1, 1, -1, -1, 1, -1, 1,
    -1, -1, 1, 1,
];

/// Basis-index pairs `(a, b)` of `|G_i^±> = (|a> ± |b>)/sqrt 2`, i = 1..4.
///
/// The fourth pair is `(|011>, |100>)`. Pairing `|011>` with `|110>` would
/// collide with `|G_2^±>` and not give a basis.
const GHZ_PAIRS: [(usize, usize); 4] = [
    (0b000, 0b111),
    (0b001, 0b110),
    (0b010, 0b101),
    (0b011, 0b100),
];

fn signed_state(n: usize, signs: &[i8]) -> PureState {
    let raw: Vec<f64> = signs.iter().map(|&s| f64::from(s)).collect();
    PureState::from_real(n, &raw, true).expect("valid sign vector")
}

/// `|G_i^+>` (`plus`) or `|G_i^->` for `i` in `1..=4`.
pub fn ghz(i: usize, plus: bool) -> Result<PureState> {
    let &(a, b) = i
        .checked_sub(1)
        .and_then(|j| GHZ_PAIRS.get(j))
        .ok_or_else(|| Error::InvalidArgument(format!("GHZ index {i} outside 1..=4")))?;
    let mut raw = [0.0; 8];
    raw[a] = FRAC_1_SQRT_2;
    raw[b] = if plus { FRAC_1_SQRT_2 } else { -FRAC_1_SQRT_2 };
    PureState::from_real(3, &raw, false)
}

/// `(|000> + |111>)/sqrt 2`.
pub fn g1_plus() -> PureState {
    ghz(1, true).expect("index in range")
}

/// The eight GHZ basis states ordered `G1+, G1-, G2+, ..., G4-`.
pub fn ghz_basis() -> Vec<PureState> {
    (1..=4)
        .flat_map(|i| [true, false].map(|plus| ghz(i, plus).expect("index in range")))
        .collect()
}

/// `(Q_i, C_i)` with `P_i^± = Q_i ± C_i`: `Q_i` holds the strings of weight at
/// most two, `C_i` the three-body strings.
pub fn ghz_projector_parts(i: usize) -> Result<(PauliOperator, PauliOperator)> {
    let p = projector(&ghz(i, true)?)?;
    Ok((p.filter_weight(|w| w <= 2), p.filter_weight(|w| w == 3)))
}

pub fn m4() -> PureState {
    signed_state(4, &ZETA4)
}

pub fn m5() -> PureState {
    signed_state(5, &ZETA5)
}

/// Unordered pairs for the diagonal couplings `J^a_ij`.
pub const PAIRS: [(usize, usize); 3] = [(1, 2), (1, 3), (2, 3)];

/// Ordered pairs for the mixed couplings `K_ij`, `X_ij`, `Y_ij`.
pub const ORDERED_PAIRS: [(usize, usize); 6] = [(1, 2), (1, 3), (2, 1), (2, 3), (3, 1), (3, 2)];

/// Couplings of the most general two-body three-qubit Hamiltonian
///
/// ```text
/// H2 = sum_{i<j} (Jx XiXj + Jy YiYj + Jz ZiZj)
///    + sum_{i!=j} (K_ij XiYj + X_ij XiZj + Y_ij YiZj)
///    + sum_i (hx Xi + hy Yi + hz Zi)
/// ```
///
/// Diagonal couplings are indexed by [`PAIRS`], mixed ones by
/// [`ORDERED_PAIRS`], fields by site.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct H2Params {
    pub jx: [f64; 3],
    pub jy: [f64; 3],
    pub jz: [f64; 3],
    pub k: [f64; 6],
    pub x: [f64; 6],
    pub y: [f64; 6],
    pub hx: [f64; 3],
    pub hy: [f64; 3],
    pub hz: [f64; 3],
}

pub const H2_PARAM_COUNT: usize = 36;

fn pair_slot(i: usize, j: usize) -> usize {
    let key = if i < j { (i, j) } else { (j, i) };
    PAIRS.iter().position(|&p| p == key).expect("valid pair")
}

fn ordered_slot(i: usize, j: usize) -> usize {
    ORDERED_PAIRS
        .iter()
        .position(|&p| p == (i, j))
        .expect("valid ordered pair")
}

impl H2Params {
    /// Flattened as `jx, jy, jz, k, x, y, hx, hy, hz`.
    pub fn to_vec(&self) -> Vec<f64> {
        [
            &self.jx[..],
            &self.jy,
            &self.jz,
            &self.k,
            &self.x,
            &self.y,
            &self.hx,
            &self.hy,
            &self.hz,
        ]
        .concat()
    }

    pub fn from_slice(v: &[f64]) -> Result<Self> {
        if v.len() != H2_PARAM_COUNT {
            return Err(Error::Length {
                expected: H2_PARAM_COUNT,
                got: v.len(),
            });
        }
        let mut p = Self::default();
        let mut it = v.iter().copied();
        for slot in [
            &mut p.jx[..],
            &mut p.jy,
            &mut p.jz,
            &mut p.k,
            &mut p.x,
            &mut p.y,
            &mut p.hx,
            &mut p.hy,
            &mut p.hz,
        ] {
            for s in slot.iter_mut() {
                *s = it.next().expect("length checked");
            }
        }
        Ok(p)
    }

    /// Every coupling uniform in `[-1, 1]`.
    pub fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        let v: Vec<f64> = (0..H2_PARAM_COUNT)
            .map(|_| rng.random_range(-1.0..=1.0))
            .collect();
        Self::from_slice(&v).expect("length matches")
    }

    pub fn k_at(&self, i: usize, j: usize) -> f64 {
        self.k[ordered_slot(i, j)]
    }

    pub fn x_at(&self, i: usize, j: usize) -> f64 {
        self.x[ordered_slot(i, j)]
    }

    pub fn y_at(&self, i: usize, j: usize) -> f64 {
        self.y[ordered_slot(i, j)]
    }

    /// Reads an operator back into couplings. Fails if the operator has an
    /// identity component or a three-body string.
    pub fn from_operator(op: &PauliOperator) -> Result<Self> {
        if op.n() != 3 {
            return Err(Error::QubitMismatch {
                left: 3,
                right: op.n(),
            });
        }
        let mut p = Self::default();
        for t in op.terms() {
            let support = t.support();
            let l = t.letters();
            let c = t.coefficient();
            match support.as_slice() {
                [s] => match l[s - 1] {
                    Pauli::X => p.hx[s - 1] += c,
                    Pauli::Y => p.hy[s - 1] += c,
                    Pauli::Z => p.hz[s - 1] += c,
                    Pauli::I => unreachable!(),
                },
                [a, b] => {
                    let (a, b) = (*a, *b);
                    match (l[a - 1], l[b - 1]) {
                        (Pauli::X, Pauli::X) => p.jx[pair_slot(a, b)] += c,
                        (Pauli::Y, Pauli::Y) => p.jy[pair_slot(a, b)] += c,
                        (Pauli::Z, Pauli::Z) => p.jz[pair_slot(a, b)] += c,
                        (Pauli::X, Pauli::Y) => p.k[ordered_slot(a, b)] += c,
                        (Pauli::Y, Pauli::X) => p.k[ordered_slot(b, a)] += c,
                        (Pauli::X, Pauli::Z) => p.x[ordered_slot(a, b)] += c,
                        (Pauli::Z, Pauli::X) => p.x[ordered_slot(b, a)] += c,
                        (Pauli::Y, Pauli::Z) => p.y[ordered_slot(a, b)] += c,
                        (Pauli::Z, Pauli::Y) => p.y[ordered_slot(b, a)] += c,
                        _ => unreachable!(),
                    }
                }
                _ => {
                    return Err(Error::InvalidArgument(format!(
                        "term `{t}` is not a one- or two-body coupling"
                    )))
                }
            }
        }
        Ok(p)
    }
}

/// The two-body Hamiltonian for `params`.
pub fn h2_general(params: &H2Params) -> PauliOperator {
    let mut terms = Vec::with_capacity(H2_PARAM_COUNT);
    let mut push = |sites: &[(usize, Pauli)], c: f64| {
        terms.push(PauliTerm::from_sites(3, sites, c).expect("sites in range"));
    };
    for (slot, &(i, j)) in PAIRS.iter().enumerate() {
        push(&[(i, Pauli::X), (j, Pauli::X)], params.jx[slot]);
        push(&[(i, Pauli::Y), (j, Pauli::Y)], params.jy[slot]);
        push(&[(i, Pauli::Z), (j, Pauli::Z)], params.jz[slot]);
    }
    for (slot, &(i, j)) in ORDERED_PAIRS.iter().enumerate() {
        push(&[(i, Pauli::X), (j, Pauli::Y)], params.k[slot]);
        push(&[(i, Pauli::X), (j, Pauli::Z)], params.x[slot]);
        push(&[(i, Pauli::Y), (j, Pauli::Z)], params.y[slot]);
    }
    for site in 1..=3 {
        push(&[(site, Pauli::X)], params.hx[site - 1]);
        push(&[(site, Pauli::Y)], params.hy[site - 1]);
        push(&[(site, Pauli::Z)], params.hz[site - 1]);
    }
    PauliOperator::from_terms(3, terms).expect("three-site terms")
}

/// Residuals of the 13 linear conditions making `|G_1^+>` an eigenstate of
/// [`h2_general`]:
///
/// - `hz_1 + hz_2 + hz_3 = 0`,
/// - `sum_{j != i} X_ij = 0` and `sum_{j != i} Y_ij = 0` for each `i`,
/// - `hx_i = Jy_jk - Jx_jk` and `hy_i = K_jk + K_kj` with `{j, k}` the other
///   two sites.
///
/// The field condition on site 2 uses `K_13 + K_31`.
pub fn g1_condition_residuals(p: &H2Params) -> [f64; 13] {
    let mut r = [0.0; 13];
    r[0] = p.hz.iter().sum();
    for i in 1..=3 {
        let others: Vec<usize> = (1..=3).filter(|&j| j != i).collect();
        r[i] = others.iter().map(|&j| p.x_at(i, j)).sum();
        r[3 + i] = others.iter().map(|&j| p.y_at(i, j)).sum();
        let (j, k) = (others[0], others[1]);
        let slot = pair_slot(j, k);
        r[6 + i] = p.hx[i - 1] - (p.jy[slot] - p.jx[slot]);
        r[9 + i] = p.hy[i - 1] - (p.k_at(j, k) + p.k_at(k, j));
    }
    r
}

/// Absolute tolerance on each of the 13 conditions.
pub const G1_CONDITION_TOL: f64 = 1e-10;

pub fn check_g1_conditions(p: &H2Params) -> bool {
    g1_condition_residuals(p)
        .iter()
        .all(|r| r.abs() <= G1_CONDITION_TOL)
}

fn three_site(sites: &[(usize, Pauli)]) -> PauliOperator {
    PauliOperator::term(3, sites, 1.0).expect("sites in range")
}

fn four_site(sites: &[(usize, Pauli)]) -> PauliOperator {
    PauliOperator::term(4, sites, 1.0).expect("sites in range")
}

/// `J sum Z_i Z_{i+1} + k sum (X_i X_{i+1} - X_i)` on a three-site ring.
pub fn hjk3(j: f64, k: f64) -> PauliOperator {
    let mut zz = PauliOperator::zero(3);
    let mut xx = PauliOperator::zero(3);
    for i in 1..=3 {
        let next = i % 3 + 1;
        zz = zz + three_site(&[(i, Pauli::Z), (next, Pauli::Z)]);
        xx = xx + three_site(&[(i, Pauli::X), (next, Pauli::X)]) - three_site(&[(i, Pauli::X)]);
    }
    j * zz + k * xx
}

/// `J (X4 Z1 + X3 Z2) + k (X1 Z4 + X2 Z3 + X2 Z1 + X1 Z2 - sum Z_i)`.
///
/// Qubits 3 and 4 are never coupled, so the model lives on an open chain.
pub fn hjk4(j: f64, k: f64) -> PauliOperator {
    use Pauli::{X, Z};
    let j_part = four_site(&[(4, X), (1, Z)]) + four_site(&[(3, X), (2, Z)]);
    let mut k_part = four_site(&[(1, X), (4, Z)])
        + four_site(&[(2, X), (3, Z)])
        + four_site(&[(2, X), (1, Z)])
        + four_site(&[(1, X), (2, Z)]);
    for i in 1..=4 {
        k_part = k_part - four_site(&[(i, Z)]);
    }
    j * j_part + k * k_part
}

/// Ground-state data of [`hjk3`] at one `(J, k)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GroundFacts {
    pub ground_energy: f64,
    /// `pi_ME` of the ground eigenvector. When the ground level is degenerate
    /// this is the first (real) eigenvector the solver returns.
    pub gs_pme: f64,
    pub ground_degenerate: bool,
    /// Level of the GHZ eigenvalue `3J`.
    pub ghz_level: LevelPosition,
}

/// Diagonalizes `hjk3(J, k)` and reports its ground energy, the `pi_ME` of
/// the ground state and where `3J` sits in the spectrum.
///
/// `H_Jk` is a real matrix, so the ground eigenvector is real. On the plateau
/// `J, k > 0` the ground level is doubly degenerate and every real state in it
/// has `pi_ME = 2/3`; `ground_degenerate` flags this.
pub fn hjk3_ground_facts(j: f64, k: f64) -> Result<GroundFacts> {
    let spec = eigh(&sum_matrix(&hjk3(j, k))?)?;
    let gs = spec.eigenstate(0)?;
    Ok(GroundFacts {
        ground_energy: spec.ground_energy(),
        gs_pme: pme(&gs)?,
        ground_degenerate: spec.clusters[0].len() > 1,
        ghz_level: level_position(&spec, 3.0 * j, DEFAULT_DEGENERACY_TOL)?,
    })
}

/// Closed form `J + 2k - 2 sqrt(J^2 - 2Jk + 4k^2)` of the `hjk3` ground energy
/// outside the quadrant `J, k > 0` (where it is `-(J + 2k)`).
pub fn hjk3_ground_energy_formula(j: f64, k: f64) -> f64 {
    j + 2.0 * k - 2.0 * (j * j - 2.0 * j * k + 4.0 * k * k).sqrt()
}

/// Resolves `ghz3`, `g1plus` ... `g4minus`, `m4`, `m5`.
pub fn named_state(name: &str) -> Result<PureState> {
    match name {
        "ghz3" => Ok(g1_plus()),
        "m4" => Ok(m4()),
        "m5" => Ok(m5()),
        _ => {
            let parsed = name
                .strip_prefix('g')
                .and_then(|rest| {
                    let (digit, sign) = rest.split_at(1.min(rest.len()));
                    let i: usize = digit.parse().ok()?;
                    match sign {
                        "plus" => Some((i, true)),
                        "minus" => Some((i, false)),
                        _ => None,
                    }
                })
                .filter(|(i, _)| (1..=4).contains(i));
            match parsed {
                Some((i, plus)) => ghz(i, plus),
                None => Err(Error::UnknownName(name.to_string())),
            }
        }
    }
}

/// Resolves `hjk3:J,k` and `hjk4:J,k`.
pub fn named_hamiltonian(spec: &str) -> Result<PauliOperator> {
    let (family, args) = spec
        .split_once(':')
        .ok_or_else(|| Error::UnknownName(spec.to_string()))?;
    let values: Vec<f64> = args
        .split(',')
        .map(|s| s.trim().parse::<f64>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| Error::InvalidArgument(format!("bad couplings in `{spec}`")))?;
    let [j, k] = values[..] else {
        return Err(Error::InvalidArgument(format!(
            "`{spec}` needs exactly two couplings J,k"
        )));
    };
    if !j.is_finite() || !k.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "non-finite coupling in `{spec}`"
        )));
    }
    match family {
        "hjk3" => Ok(hjk3(j, k)),
        "hjk4" => Ok(hjk4(j, k)),
        _ => Err(Error::UnknownName(spec.to_string())),
    }
}
