//! Numerical minimization of `pi_ME` over pure states.
//!
//! A state is parameterized by `x = (Re u, Im u)` in `R^(2^(n+1))`; the
//! objective is `pi_ME(u / |u|) = P(u) / |u|^4`, where `P` is the purity average
//! of the unnormalized vector. Each restart runs gradient descent with Armijo
//! backtracking and renormalizes after every step.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;

use crate::entanglement::{balanced_bipartitions, pme, split_indices, IndexSplit};
use crate::error::{Error, Result};
use crate::search::sample_rng;
use crate::state::PureState;

const ARMIJO: f64 = 1e-4;
const MIN_STEP: f64 = 1e-14;

#[derive(Debug, Clone, PartialEq)]
pub struct OptimizerConfig {
    pub restarts: usize,
    pub max_iterations: usize,
    pub initial_step: f64,
    /// Convergence window: stop once the objective improves by less than
    /// `tolerance` over this many accepted steps.
    pub patience: usize,
    pub tolerance: f64,
    pub seed: u64,
}

impl OptimizerConfig {
    /// Defaults for `n` qubits: 50 restarts up to four qubits, 200 above.
    pub fn for_qubits(n: usize, seed: u64) -> Self {
        Self {
            restarts: if n <= 4 { 50 } else { 200 },
            max_iterations: 20_000,
            initial_step: 1.0,
            patience: 100,
            tolerance: 1e-10,
            seed,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.restarts == 0 || self.max_iterations == 0 || self.patience == 0 {
            return Err(Error::InvalidArgument(
                "optimizer counts must be positive".into(),
            ));
        }
        if !(self.tolerance > 0.0) || !(self.initial_step > 0.0) {
            return Err(Error::InvalidArgument(
                "optimizer tolerance and step must be positive".into(),
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct OptimizeResult {
    pub best_state: PureState,
    pub best_value: f64,
    /// `(iteration, value)` at every accepted step of the winning restart,
    /// starting with the initial point at iteration 0.
    pub trace: Vec<(usize, f64)>,
    pub best_restart: usize,
}

/// Objective and gradient evaluator with precomputed index maps.
struct PmeEvaluator {
    n: usize,
    splits: Vec<IndexSplit>,
}

impl PmeEvaluator {
    fn new(n: usize) -> Result<Self> {
        let splits = balanced_bipartitions(n)?
            .iter()
            .map(|b| split_indices(n, b.members()))
            .collect();
        Ok(Self { n, splits })
    }

    fn dim(&self) -> usize {
        1 << self.n
    }

    /// Objective and its gradient with respect to `x`.
    fn value_and_gradient(&self, x: &[f64]) -> (f64, Vec<f64>) {
        let d = self.dim();
        let u: Vec<Complex64> = (0..d).map(|k| Complex64::new(x[k], x[d + k])).collect();
        let norm_sqr: f64 = x.iter().map(|v| v * v).sum();
        let mut p = 0.0;
        let mut g = vec![Complex64::new(0.0, 0.0); d];
        for s in &self.splits {
            let mut m = DMatrix::<Complex64>::zeros(s.party_dim, s.rest_dim);
            for k in 0..d {
                m[(s.party[k], s.rest[k])] = u[k];
            }
            let rho = &m * m.adjoint();
            p += rho.iter().map(|z| z.norm_sqr()).sum::<f64>();
            let rm = &rho * &m;
            for k in 0..d {
                g[k] += rm[(s.party[k], s.rest[k])];
            }
        }
        let count = self.splits.len() as f64;
        p /= count;
        let n4 = norm_sqr * norm_sqr;
        let value = p / n4;
        let scale = 4.0 / count / n4;
        let radial = 4.0 * p / (n4 * norm_sqr);
        let mut grad = vec![0.0; 2 * d];
        for k in 0..d {
            grad[k] = scale * g[k].re - radial * x[k];
            grad[d + k] = scale * g[k].im - radial * x[d + k];
        }
        (value, grad)
    }

    fn value(&self, x: &[f64]) -> f64 {
        self.value_and_gradient(x).0
    }
}

fn to_params(state: &PureState) -> Vec<f64> {
    let amps = state.amplitudes();
    amps.iter()
        .map(|z| z.re)
        .chain(amps.iter().map(|z| z.im))
        .collect()
}

fn to_state(n: usize, x: &[f64]) -> Result<PureState> {
    let d = 1 << n;
    let amps = (0..d).map(|k| Complex64::new(x[k], x[d + k])).collect();
    PureState::from_amplitudes(n, amps, true)
}

fn normalize(x: &mut [f64]) {
    let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
    x.iter_mut().for_each(|v| *v /= norm);
}

/// Gradient of `pi_ME` in the `(Re, Im)` coordinates of the state.
pub fn pme_gradient(state: &PureState) -> Result<Vec<f64>> {
    let eval = PmeEvaluator::new(state.n())?;
    Ok(eval.value_and_gradient(&to_params(state)).1)
}

/// Steepest-descent direction, `-grad pi_ME`.
pub fn descent_direction(state: &PureState) -> Result<Vec<f64>> {
    Ok(pme_gradient(state)?.into_iter().map(|g| -g).collect())
}

/// Largest deviation between the analytic gradient and central differences of
/// `pi_ME(x / |x|)` with step `epsilon`.
pub fn gradient_check(state: &PureState, epsilon: f64) -> Result<f64> {
    if !(1e-8..=1e-4).contains(&epsilon) {
        return Err(Error::InvalidArgument(format!(
            "epsilon {epsilon:e} outside [1e-8, 1e-4]"
        )));
    }
    let eval = PmeEvaluator::new(state.n())?;
    let x = to_params(state);
    let (_, grad) = eval.value_and_gradient(&x);
    let mut worst = 0.0f64;
    let mut probe = x.clone();
    for i in 0..x.len() {
        probe[i] = x[i] + epsilon;
        let up = eval.value(&probe);
        probe[i] = x[i] - epsilon;
        let down = eval.value(&probe);
        probe[i] = x[i];
        worst = worst.max(((up - down) / (2.0 * epsilon) - grad[i]).abs());
    }
    Ok(worst)
}

struct RestartOutcome {
    x: Vec<f64>,
    value: f64,
    trace: Vec<(usize, f64)>,
}

fn descend(eval: &PmeEvaluator, config: &OptimizerConfig, restart: usize) -> RestartOutcome {
    let mut rng = sample_rng(config.seed, restart as u64);
    let mut x: Vec<f64> = (0..2 * eval.dim())
        .map(|_| StandardNormal.sample(&mut rng))
        .collect();
    normalize(&mut x);
    let (mut value, mut grad) = eval.value_and_gradient(&x);
    let mut trace = vec![(0, value)];
    let mut step = config.initial_step;

    'outer: for it in 1..=config.max_iterations {
        let slope: f64 = grad.iter().map(|g| g * g).sum();
        loop {
            let mut next: Vec<f64> = x.iter().zip(&grad).map(|(a, g)| a - step * g).collect();
            normalize(&mut next);
            let (v, g) = eval.value_and_gradient(&next);
            if v <= value - ARMIJO * step * slope {
                x = next;
                value = v;
                grad = g;
                step *= 2.0;
                break;
            }
            step *= 0.5;
            if step < MIN_STEP {
                break 'outer;
            }
        }
        trace.push((it, value));
        if trace.len() > config.patience
            && trace[trace.len() - 1 - config.patience].1 - value < config.tolerance
        {
            break;
        }
    }
    RestartOutcome { x, value, trace }
}

/// Multi-restart minimization of `pi_ME` for `n` qubits. Restarts run in
/// parallel and are seeded independently; the lowest value wins, ties going to
/// the lower restart index.
pub fn minimize_pme(n: usize, config: &OptimizerConfig) -> Result<OptimizeResult> {
    if !(2..=6).contains(&n) {
        return Err(Error::QubitCount(n));
    }
    config.validate()?;
    let eval = PmeEvaluator::new(n)?;
    let outcomes: Vec<RestartOutcome> = (0..config.restarts)
        .into_par_iter()
        .map(|r| descend(&eval, config, r))
        .collect();
    let (best_restart, best) = outcomes
        .into_iter()
        .enumerate()
        .min_by(|(i, a), (j, b)| a.value.total_cmp(&b.value).then(i.cmp(j)))
        .expect("at least one restart");
    let best_state = to_state(n, &best.x)?;
    let best_value = pme(&best_state)?;
    Ok(OptimizeResult {
        best_state,
        best_value,
        trace: best.trace,
        best_restart,
    })
}
