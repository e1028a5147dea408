//! The 3-query dictatorship test over Gⁿ.
//!
//! The test draws a, b uniformly, sets cᵢ = bᵢ⁻¹ ⊙ aᵢ⁻¹, and checks
//! f(a) ⊙ f(b) ⊙ f(c) = 1. With noise ε each coordinate triple is resampled
//! uniformly from G³ with probability ε. Pass probabilities come either
//! from exact weighted enumeration or from seeded Monte Carlo with
//! per-sample counter-based streams, and the per-irrep decomposition
//! Pr = (1/|G|) Σ_ρ dim(ρ)·E[χ_ρ(f(a)f(b)f(c))] is available in exact mode.

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::fourier::{
    fourier_transform, index_to_tuple, orbit_reps, point_count, tuple_to_index, FourierError,
    GroupTable, IrrepIndex,
};
use crate::group::{commutator_subgroup, quotient, ElemId, FiniteGroup, GroupError};
use crate::rep::IrrepSet;

/// Budget on the number of enumerated tuples in exact mode.
pub const EXACT_BUDGET: usize = 100_000_000;
/// 99% normal quantile for Monte Carlo confidence intervals.
const Z_99: f64 = 2.5758293035489004;

#[derive(Debug, Error)]
pub enum DictError {
    #[error("exact enumeration needs {needed} tuples, over the budget {EXACT_BUDGET}")]
    BudgetExceeded { needed: u128 },
    #[error("dictator coordinate {0} out of range for n = {1}")]
    IndexOutOfRange(usize, usize),
    #[error("noise level must lie in [0, 1], got {0}")]
    BadEpsilon(f64),
    #[error("monte carlo mode needs a positive sample count")]
    NoSamples,
    #[error(transparent)]
    Fourier(#[from] FourierError),
    #[error(transparent)]
    Group(#[from] GroupError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EvalMode {
    Exact,
    MonteCarlo,
}

/// Test configuration: noise level, evaluation mode, and sampling budget.
#[derive(Debug, Clone)]
pub struct DictTestConfig {
    pub epsilon: f64,
    pub mode: EvalMode,
    pub samples: usize,
    pub seed: u64,
}

impl DictTestConfig {
    pub fn exact(epsilon: f64) -> Self {
        DictTestConfig {
            epsilon,
            mode: EvalMode::Exact,
            samples: 0,
            seed: 0,
        }
    }

    pub fn monte_carlo(epsilon: f64, samples: usize, seed: u64) -> Self {
        DictTestConfig {
            epsilon,
            mode: EvalMode::MonteCarlo,
            samples,
            seed,
        }
    }

    fn validate(&self, order: usize, n: usize) -> Result<(), DictError> {
        if !(0.0..=1.0).contains(&self.epsilon) {
            return Err(DictError::BadEpsilon(self.epsilon));
        }
        match self.mode {
            EvalMode::Exact => {
                let copies = if self.epsilon > 0.0 { 3 } else { 2 };
                let needed = (order as u128).pow((copies * n) as u32);
                if needed > EXACT_BUDGET as u128 {
                    return Err(DictError::BudgetExceeded { needed });
                }
            }
            EvalMode::MonteCarlo => {
                if self.samples == 0 {
                    return Err(DictError::NoSamples);
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy)]
pub struct PassProbability {
    pub p: f64,
    /// 99% confidence halfwidth; 0 in exact mode.
    pub ci_halfwidth: f64,
}

// ---------------------------------------------------------------------------
// Test input constructions
// ---------------------------------------------------------------------------

/// The i-th dictator f(x) = xᵢ; dictators satisfy the folding identity.
pub fn make_dictator(i: usize, n: usize, g: &FiniteGroup) -> Result<GroupTable, DictError> {
    if i >= n {
        return Err(DictError::IndexOutOfRange(i, n));
    }
    let points = point_count(g.order(), n, crate::fourier::POINT_BUDGET)?;
    let values = (0..points)
        .map(|idx| index_to_tuple(idx, g.order(), n)[i])
        .collect();
    Ok(GroupTable::new(g.clone(), n, values, true)?)
}

/// A uniformly random folded function: one uniform value per orbit
/// representative, extended by the folding rule. Deterministic per seed.
pub fn make_random_folded(n: usize, g: &FiniteGroup, seed: u64) -> Result<GroupTable, DictError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let reps = orbit_reps(g, n)?;
    let rep_values: Vec<ElemId> = reps
        .iter()
        .map(|_| rng.random_range(0..g.order()))
        .collect();
    Ok(GroupTable::from_rep_values(g.clone(), n, &rep_values)?)
}

/// A folded function that passes the test with probability close to the
/// 1/|[G,G]| floor: its quotient part is the first-coordinate dictator (so
/// the abelianized check always holds) while the commutator part of each
/// orbit value is drawn uniformly.
pub fn make_tightness_witness(
    n: usize,
    g: &FiniteGroup,
    seed: u64,
) -> Result<GroupTable, DictError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let comm = commutator_subgroup(g);
    let q = quotient(g, &comm)?;
    let reps = orbit_reps(g, n)?;
    let mut rep_values = Vec::with_capacity(reps.len());
    for &rep_idx in &reps {
        let rep = index_to_tuple(rep_idx, g.order(), n);
        let coset = &q.cosets[q.project(rep[0])];
        rep_values.push(coset[rng.random_range(0..coset.len())]);
    }
    Ok(GroupTable::from_rep_values(g.clone(), n, &rep_values)?)
}

// ---------------------------------------------------------------------------
// Pass probability
// ---------------------------------------------------------------------------

struct Kahan {
    sum: f64,
    c: f64,
}

impl Kahan {
    fn new() -> Self {
        Kahan { sum: 0.0, c: 0.0 }
    }

    fn add(&mut self, v: f64) {
        let y = v - self.c;
        let t = self.sum + y;
        self.c = (t - self.sum) - y;
        self.sum = t;
    }
}

/// Visits every weighted test triple (a, b, c): with ε = 0 only the
/// deterministic c pattern (uniform weight), otherwise all of G^{3n} with
/// the product noise-mixture weight.
fn enumerate_exact(f: &GroupTable, epsilon: f64, mut visit: impl FnMut(f64, ElemId)) {
    let g = &f.group;
    let ord = g.order();
    let n = f.n;
    let points = f.values.len();
    if epsilon == 0.0 {
        let w = 1.0 / (points * points) as f64;
        for a_idx in 0..points {
            let a = index_to_tuple(a_idx, ord, n);
            let fa = f.values[a_idx];
            for b_idx in 0..points {
                let b = index_to_tuple(b_idx, ord, n);
                let c: Vec<ElemId> = a
                    .iter()
                    .zip(&b)
                    .map(|(&ai, &bi)| g.mul(g.inv(bi), g.inv(ai)))
                    .collect();
                let fc = f.values[tuple_to_index(&c, ord)];
                visit(w, g.word(&[fa, f.values[b_idx], fc]));
            }
        }
    } else {
        // per-coordinate mixture weight table over (x, y, z)
        let ord_f = ord as f64;
        let mut mu = vec![0.0f64; ord * ord * ord];
        for x in 0..ord {
            for y in 0..ord {
                for z in 0..ord {
                    let mut w = epsilon / (ord_f * ord_f * ord_f);
                    if g.word(&[x, y, z]) == 0 {
                        w += (1.0 - epsilon) / (ord_f * ord_f);
                    }
                    mu[(x * ord + y) * ord + z] = w;
                }
            }
        }
        for a_idx in 0..points {
            let a = index_to_tuple(a_idx, ord, n);
            let fa = f.values[a_idx];
            for b_idx in 0..points {
                let b = index_to_tuple(b_idx, ord, n);
                let fab = g.mul(fa, f.values[b_idx]);
                for c_idx in 0..points {
                    let c = index_to_tuple(c_idx, ord, n);
                    let mut w = 1.0;
                    for i in 0..n {
                        w *= mu[(a[i] * ord + b[i]) * ord + c[i]];
                    }
                    visit(w, g.mul(fab, f.values[c_idx]));
                }
            }
        }
    }
}

/// Probability that the test accepts f, exact or Monte Carlo per the
/// configuration.
pub fn test_pass_probability(
    f: &GroupTable,
    cfg: &DictTestConfig,
) -> Result<PassProbability, DictError> {
    cfg.validate(f.group.order(), f.n)?;
    match cfg.mode {
        EvalMode::Exact => {
            if cfg.epsilon == 0.0 {
                // pure counting keeps the probability exact
                let mut hits = 0usize;
                let mut total = 0usize;
                enumerate_exact(f, 0.0, |_, product| {
                    total += 1;
                    if product == 0 {
                        hits += 1;
                    }
                });
                Ok(PassProbability {
                    p: hits as f64 / total as f64,
                    ci_halfwidth: 0.0,
                })
            } else {
                let mut acc = Kahan::new();
                enumerate_exact(f, cfg.epsilon, |w, product| {
                    if product == 0 {
                        acc.add(w);
                    }
                });
                Ok(PassProbability {
                    p: acc.sum,
                    ci_halfwidth: 0.0,
                })
            }
        }
        EvalMode::MonteCarlo => {
            let g = &f.group;
            let ord = g.order();
            let n = f.n;
            let mut hits = 0usize;
            for i in 0..cfg.samples {
                let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
                rng.set_stream(i as u64);
                let mut a: Vec<ElemId> = (0..n).map(|_| rng.random_range(0..ord)).collect();
                let mut b: Vec<ElemId> = (0..n).map(|_| rng.random_range(0..ord)).collect();
                let mut c: Vec<ElemId> = a
                    .iter()
                    .zip(&b)
                    .map(|(&ai, &bi)| g.mul(g.inv(bi), g.inv(ai)))
                    .collect();
                for coord in 0..n {
                    if cfg.epsilon > 0.0 && rng.random::<f64>() < cfg.epsilon {
                        a[coord] = rng.random_range(0..ord);
                        b[coord] = rng.random_range(0..ord);
                        c[coord] = rng.random_range(0..ord);
                    }
                }
                let fa = f.values[tuple_to_index(&a, ord)];
                let fb = f.values[tuple_to_index(&b, ord)];
                let fc = f.values[tuple_to_index(&c, ord)];
                if g.word(&[fa, fb, fc]) == 0 {
                    hits += 1;
                }
            }
            let p = hits as f64 / cfg.samples as f64;
            let ci_halfwidth = Z_99 * (p * (1.0 - p) / cfg.samples as f64).sqrt();
            Ok(PassProbability { p, ci_halfwidth })
        }
    }
}

/// Per-irrep contributions T_ρ = (dim ρ/|G|)·E[χ_ρ(f(a)f(b)f(c))]; their sum
/// is the exact pass probability. Exact mode only.
pub fn pass_prob_irrep_decomposition(
    f: &GroupTable,
    cfg: &DictTestConfig,
    set: &IrrepSet,
) -> Result<Vec<Complex64>, DictError> {
    let mut exact_cfg = cfg.clone();
    exact_cfg.mode = EvalMode::Exact;
    exact_cfg.validate(f.group.order(), f.n)?;
    let chars: Vec<Vec<Complex64>> = set.irreps.iter().map(|r| r.character().values).collect();
    let ord = f.group.order() as f64;
    let mut sums: Vec<(Kahan, Kahan)> = (0..set.irreps.len())
        .map(|_| (Kahan::new(), Kahan::new()))
        .collect();
    enumerate_exact(f, exact_cfg.epsilon, |w, product| {
        for (k, chi) in chars.iter().enumerate() {
            let v = chi[product];
            sums[k].0.add(w * v.re);
            sums[k].1.add(w * v.im);
        }
    });
    Ok(sums
        .into_iter()
        .enumerate()
        .map(|(k, (re, im))| Complex64::new(re.sum, im.sum) * (set.irreps[k].dim as f64 / ord))
        .collect())
}

/// Exploratory diagnostic for the soundness direction: over all matrix
/// entries of a dim ≥ 2 irrep, the Fourier coefficient of ρ(f(·))_{ij} with
/// the largest HS norm among α of dimension ≥ 2, with its weight-2 count.
#[derive(Debug, Clone)]
pub struct SoundnessDiagnostic {
    pub entry: (usize, usize),
    pub alpha: Vec<usize>,
    pub hs_norm: f64,
    pub w2: usize,
}

pub fn soundness_diagnostic(
    f: &GroupTable,
    rho_id: usize,
    set: &IrrepSet,
) -> Result<SoundnessDiagnostic, DictError> {
    let rho = &set.irreps[rho_id];
    let mut best = SoundnessDiagnostic {
        entry: (0, 0),
        alpha: vec![0; f.n],
        hs_norm: -1.0,
        w2: 0,
    };
    for i in 0..rho.dim {
        for j in 0..rho.dim {
            let gij = crate::fourier::entry_function(f, rho, i, j)?;
            let table = fourier_transform(&gij, set)?;
            for (alpha, coeff) in table.iter() {
                if alpha.dim(set) < 2 {
                    continue;
                }
                let norm = crate::cmat::hs_norm(coeff);
                if norm > best.hs_norm {
                    best = SoundnessDiagnostic {
                        entry: (i, j),
                        alpha: alpha.0.clone(),
                        hs_norm: norm,
                        w2: IrrepIndex(alpha.0.clone()).w2(set),
                    };
                }
            }
        }
    }
    Ok(best)
}
