//! Solvers: exhaustive search, linear systems over abelian quotients, and
//! the abelianize–solve–lift approximation pipeline with exact expectations
//! and a conditional-expectation derandomization.

use std::time::{Duration, Instant};

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::group::{
    abelian_decomposition, commutator_subgroup, quotient, ElemId, GroupError, QuotientGroup,
};
use crate::lin::{evaluate, AbelianSystem, Assignment, CosetAssignment, LinError, LinInstance};

/// Most distinct variables per constraint the exact lift expectation will
/// enumerate over.
pub const MAX_DISTINCT_VARS: usize = 6;

#[derive(Debug, Error)]
pub enum SolveError {
    #[error("search space of {needed} assignments exceeds the cap {cap}")]
    BudgetExceeded { needed: u128, cap: u128 },
    #[error("constraint has {0} distinct variables, above the exact-expectation cap {MAX_DISTINCT_VARS}")]
    TooManyDistinctVars(usize),
    #[error("solver invariant failure: {0}")]
    InvariantFailure(String),
    #[error(transparent)]
    Lin(#[from] LinError),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// Outcome of a solve run.
#[derive(Debug, Clone)]
pub struct SolveReport {
    pub method: &'static str,
    pub best_value: f64,
    pub best_assignment: Assignment,
    /// Some(true)/Some(false) when satisfiability was decided, None when
    /// unknown.
    pub satisfiable: Option<bool>,
    /// Exact expectation of the randomized lift, for pipeline methods.
    pub expectation: Option<f64>,
    /// The 1/|[G,G]| guarantee, for pipeline methods.
    pub guarantee: Option<f64>,
    pub elapsed: Duration,
}

/// Exhaustive optimum by enumerating all |G|^n assignments (within `cap`).
pub fn brute_force(inst: &LinInstance, cap: u128) -> Result<SolveReport, SolveError> {
    let start = Instant::now();
    let order = inst.group.order() as u128;
    let mut needed: u128 = 1;
    for _ in 0..inst.num_vars {
        needed = needed.saturating_mul(order);
    }
    if needed > cap {
        return Err(SolveError::BudgetExceeded { needed, cap });
    }
    let mut assignment: Assignment = vec![0; inst.num_vars];
    let mut best = evaluate(inst, &assignment)?;
    let mut best_assignment = assignment.clone();
    let ord = inst.group.order();
    'outer: loop {
        // mixed-radix increment
        let mut i = inst.num_vars;
        loop {
            if i == 0 {
                break 'outer;
            }
            i -= 1;
            assignment[i] += 1;
            if assignment[i] < ord {
                break;
            }
            assignment[i] = 0;
        }
        let v = evaluate(inst, &assignment)?;
        if v > best {
            best = v;
            best_assignment = assignment.clone();
        }
    }
    Ok(SolveReport {
        method: "brute",
        best_value: best,
        best_assignment,
        satisfiable: Some(best >= 1.0 - 1e-12),
        expectation: None,
        guarantee: None,
        elapsed: start.elapsed(),
    })
}

// ---------------------------------------------------------------------------
// Linear systems modulo the invariant factors
// ---------------------------------------------------------------------------

fn egcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        (a.abs(), a.signum(), 0)
    } else {
        let (g, s, t) = egcd(b, a.rem_euclid(b));
        (g, t, s - (a.div_euclid(b)) * t)
    }
}

/// Solves a·x ≡ v (mod d); returns the least non-negative solution.
fn solve_congruence(a: i64, v: i64, d: i64) -> Option<i64> {
    let a = a.rem_euclid(d);
    let v = v.rem_euclid(d);
    if a == 0 {
        return if v == 0 { Some(0) } else { None };
    }
    let (g, s, _) = egcd(a, d);
    if v % g != 0 {
        return None;
    }
    let dd = d / g;
    Some(((v / g) % dd * (s.rem_euclid(dd)) % dd).rem_euclid(dd))
}

fn prime_power_factors(mut d: i64) -> Vec<i64> {
    let mut out = vec![];
    let mut p = 2;
    while p * p <= d {
        if d % p == 0 {
            let mut q = 1;
            while d % p == 0 {
                q *= p;
                d /= p;
            }
            out.push(q);
        }
        p += 1;
    }
    if d > 1 {
        out.push(d);
    }
    out
}

fn valuation(x: i64, p: i64, cap: u32) -> u32 {
    let mut x = x;
    for v in 0..cap {
        if x % p != 0 {
            return v;
        }
        x /= p;
    }
    cap
}

/// Solves A·x ≡ b (mod p^k) by minimum-valuation pivoting: developing row
/// echelon form where each pivot has the smallest p-adic valuation in the
/// remaining submatrix makes the zero assignment valid for free variables.
fn solve_mod_prime_power(
    a: &[Vec<i64>],
    b: &[i64],
    p: i64,
    k: u32,
    num_vars: usize,
) -> Option<Vec<i64>> {
    let d = p.pow(k);
    let m = a.len();
    let mut rows: Vec<Vec<i64>> = a
        .iter()
        .zip(b)
        .map(|(row, &t)| {
            let mut r: Vec<i64> = row.iter().map(|&x| x.rem_euclid(d)).collect();
            r.push(t.rem_euclid(d));
            r
        })
        .collect();
    let mut col_used = vec![false; num_vars];
    let mut pivots: Vec<(usize, usize)> = vec![];
    for rank in 0..m {
        // minimal-valuation entry among untouched columns in rows ≥ rank
        let mut best: Option<(u32, usize, usize)> = None;
        for r in rank..m {
            for c in (0..num_vars).filter(|&c| !col_used[c]) {
                let v = valuation(rows[r][c], p, k);
                if v < k && best.map_or(true, |(bv, _, _)| v < bv) {
                    best = Some((v, r, c));
                }
            }
        }
        let Some((_, r, col)) = best else { break };
        rows.swap(rank, r);
        col_used[col] = true;
        pivots.push((rank, col));
        let pivot = rows[rank][col];
        // clear the pivot column from the rows below; their entries have
        // valuation ≥ the pivot's, so the quotient congruence is solvable
        for r2 in rank + 1..m {
            if rows[r2][col] % d == 0 {
                continue;
            }
            let q = solve_congruence(pivot, rows[r2][col], d)?;
            for c in 0..=num_vars {
                rows[r2][c] = (rows[r2][c] - q * rows[rank][c]).rem_euclid(d);
            }
        }
    }
    // rows without pivots are all-zero on the left; their targets must vanish
    for r in pivots.len()..m {
        if rows[r][num_vars] % d != 0 {
            return None;
        }
    }
    // back substitution in reverse pivot order, free variables at 0. A pivot
    // row's entries right of its pivot all carry at least the pivot's
    // p-power, so the target's residue class modulo that power is fixed and
    // the congruence is solvable exactly when the system is.
    let mut x = vec![0i64; num_vars];
    for &(r, col) in pivots.iter().rev() {
        let mut v = rows[r][num_vars];
        for c in (0..num_vars).filter(|&c| c != col) {
            v -= rows[r][c] * x[c];
        }
        x[col] = solve_congruence(rows[r][col], v, d)?;
    }
    // substitution check against the original system
    for (row, &t) in a.iter().zip(b) {
        let lhs: i64 = row.iter().zip(&x).map(|(&c, &v)| c * v).sum();
        if (lhs - t).rem_euclid(d) != 0 {
            return None;
        }
    }
    Some(x)
}

/// Solves A·x ≡ b (mod d) by splitting d into prime powers and recombining
/// the solutions with the Chinese remainder theorem; every returned solution
/// is substitution-verified.
fn solve_mod(a: &[Vec<i64>], b: &[i64], d: i64, num_vars: usize) -> Option<Vec<i64>> {
    let mut x = vec![0i64; num_vars];
    let mut modulus = 1i64;
    for q in prime_power_factors(d) {
        let p = (2..).find(|&p| q % p == 0).unwrap();
        let k = valuation(q, p, 32);
        let part = solve_mod_prime_power(a, b, p, k, num_vars)?;
        // CRT combine: x ≡ x (mod modulus), x ≡ part (mod q)
        let (g, s, _) = egcd(modulus, q);
        debug_assert_eq!(g, 1);
        let new_mod = modulus * q;
        for v in 0..num_vars {
            let diff = (part[v] - x[v]).rem_euclid(q);
            x[v] = (x[v] + modulus * ((diff * s).rem_euclid(q))).rem_euclid(new_mod);
        }
        modulus = new_mod;
    }
    // final substitution check over the composite modulus
    for (row, &t) in a.iter().zip(b) {
        let lhs: i64 = row.iter().zip(&x).map(|(&c, &v)| c * v).sum();
        if (lhs - t).rem_euclid(d) != 0 {
            return None;
        }
    }
    Some(x)
}

/// Solves the abelianized system per invariant factor and combines the
/// residues into per-variable coordinate tuples. `None` means unsatisfiable.
pub fn abelian_solve(sys: &AbelianSystem) -> Result<Option<Vec<Vec<usize>>>, SolveError> {
    let m = sys.factors.len();
    let mut coords = vec![vec![0usize; m]; sys.num_vars];
    for j in 0..m {
        let d = sys.factors[j] as i64;
        let col: Vec<i64> = sys.rhs.iter().map(|r| r[j]).collect();
        match solve_mod(&sys.coeffs, &col, d, sys.num_vars) {
            None => return Ok(None),
            Some(x) => {
                for v in 0..sys.num_vars {
                    coords[v][j] = x[v] as usize;
                }
            }
        }
    }
    // verify once more over the combined structure
    for (i, row) in sys.coeffs.iter().enumerate() {
        for j in 0..m {
            let d = sys.factors[j] as i64;
            let lhs: i64 = row.iter().zip(&coords).map(|(&c, v)| c * v[j] as i64).sum();
            if (lhs - sys.rhs[i][j]).rem_euclid(d) != 0 {
                return Err(SolveError::InvariantFailure(format!(
                    "abelian solution fails substitution on row {i}, factor {j}"
                )));
            }
        }
    }
    Ok(Some(coords))
}

// ---------------------------------------------------------------------------
// Lifts from coset assignments
// ---------------------------------------------------------------------------

/// Exact probability that each constraint is satisfied when every variable
/// is drawn uniformly from its assigned coset, by direct enumeration of the
/// |N|^k lift combinations; weighted sum over constraints.
pub fn lift_expectation(
    inst: &LinInstance,
    q: &QuotientGroup,
    cosets: &CosetAssignment,
) -> Result<f64, SolveError> {
    if cosets.len() != inst.num_vars {
        return Err(LinError::LengthMismatch(cosets.len(), inst.num_vars).into());
    }
    let fixed: Vec<Option<ElemId>> = vec![None; inst.num_vars];
    conditional_expectation(inst, q, cosets, &fixed)
}

/// Expected satisfied weight when some variables are pinned and the rest
/// are uniform in their cosets.
fn conditional_expectation(
    inst: &LinInstance,
    q: &QuotientGroup,
    cosets: &CosetAssignment,
    fixed: &[Option<ElemId>],
) -> Result<f64, SolveError> {
    let g = &inst.group;
    let nn = q.normal.size();
    let mut total = 0.0;
    let mut assignment: Assignment = fixed
        .iter()
        .enumerate()
        .map(|(v, f)| f.unwrap_or_else(|| q.cosets[cosets[v]][0]))
        .collect();
    for c in &inst.constraints {
        let free: Vec<usize> = c
            .distinct_vars()
            .into_iter()
            .filter(|&v| fixed[v].is_none())
            .collect();
        if free.len() > MAX_DISTINCT_VARS {
            return Err(SolveError::TooManyDistinctVars(free.len()));
        }
        let combos = nn.pow(free.len() as u32);
        let mut hits = 0usize;
        let mut pick = vec![0usize; free.len()];
        loop {
            for (slot, &v) in free.iter().enumerate() {
                assignment[v] = q.cosets[cosets[v]][pick[slot]];
            }
            if c.is_satisfied(g, &assignment) {
                hits += 1;
            }
            // mixed-radix increment over the free slots
            let mut i = free.len();
            let done = loop {
                if i == 0 {
                    break true;
                }
                i -= 1;
                pick[i] += 1;
                if pick[i] < nn {
                    break false;
                }
                pick[i] = 0;
            };
            if done {
                break;
            }
        }
        total += c.weight * hits as f64 / combos as f64;
    }
    Ok(total)
}

/// One uniform lift: every variable gets an independent uniform element of
/// its coset. Deterministic per seed.
pub fn random_lift(q: &QuotientGroup, cosets: &CosetAssignment, seed: u64) -> Assignment {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    cosets
        .iter()
        .map(|&c| q.cosets[c][rng.random_range(0..q.cosets[c].len())])
        .collect()
}

/// Derandomized lift by the method of conditional expectations: fixes the
/// variables one by one, always choosing the value that maximizes the exact
/// conditional expectation. The per-step expectation trace never decreases.
pub fn derandomized_lift(
    inst: &LinInstance,
    q: &QuotientGroup,
    cosets: &CosetAssignment,
) -> Result<(Assignment, Vec<f64>), SolveError> {
    let mut fixed: Vec<Option<ElemId>> = vec![None; inst.num_vars];
    let mut trace = vec![conditional_expectation(inst, q, cosets, &fixed)?];
    for v in 0..inst.num_vars {
        let mut best_e = f64::NEG_INFINITY;
        let mut best_elem = q.cosets[cosets[v]][0];
        for &cand in &q.cosets[cosets[v]] {
            fixed[v] = Some(cand);
            let e = conditional_expectation(inst, q, cosets, &fixed)?;
            if e > best_e {
                best_e = e;
                best_elem = cand;
            }
        }
        fixed[v] = Some(best_elem);
        let prev = *trace.last().unwrap();
        if best_e < prev - 1e-12 {
            return Err(SolveError::InvariantFailure(format!(
                "conditional expectation decreased: {prev} → {best_e}"
            )));
        }
        trace.push(best_e);
    }
    let assignment: Assignment = fixed.into_iter().map(Option::unwrap).collect();
    Ok((assignment, trace))
}

/// Full pipeline report for the abelianization algorithm.
#[derive(Debug, Clone)]
pub struct FolkloreOutcome {
    pub report: SolveReport,
    pub commutator_size: usize,
    pub quotient_order: usize,
    /// true when the abelian image was satisfiable (the satisfiable-case
    /// pipeline ran), false when the instance is unsatisfiable over G.
    pub abelian_satisfiable: bool,
    /// Conditional expectations along the derandomization, one entry per
    /// fixed variable after the initial expectation; non-decreasing.
    pub expectation_trace: Vec<f64>,
}

/// The approximation pipeline: commutator subgroup → quotient → abelianize
/// → solve over the quotient → derandomized lift. An unsatisfiable abelian
/// image proves the instance unsatisfiable over G; the report then falls
/// back to the best constant assignment.
pub fn folklore_approx(inst: &LinInstance) -> Result<FolkloreOutcome, SolveError> {
    let start = Instant::now();
    let g = &inst.group;
    let comm = commutator_subgroup(g);
    let q = quotient(g, &comm)?;
    let dec = abelian_decomposition(&q.table)?;
    let sys = crate::lin::abelianize(inst, &q, &dec);
    let guarantee = 1.0 / comm.size() as f64;
    match abelian_solve(&sys)? {
        None => {
            // best constant assignment fallback
            let mut best_value = f64::NEG_INFINITY;
            let mut best_assignment = vec![0; inst.num_vars];
            for e in 0..g.order() {
                let a = vec![e; inst.num_vars];
                let v = evaluate(inst, &a)?;
                if v > best_value {
                    best_value = v;
                    best_assignment = a;
                }
            }
            Ok(FolkloreOutcome {
                report: SolveReport {
                    method: "folklore",
                    best_value,
                    best_assignment,
                    satisfiable: Some(false),
                    expectation: None,
                    guarantee: Some(guarantee),
                    elapsed: start.elapsed(),
                },
                commutator_size: comm.size(),
                quotient_order: q.table.order(),
                abelian_satisfiable: false,
                expectation_trace: vec![],
            })
        }
        Some(coords) => {
            let cosets: CosetAssignment =
                coords.iter().map(|c| dec.element_of(&q.table, c)).collect();
            let expectation = lift_expectation(inst, &q, &cosets)?;
            let (assignment, trace) = derandomized_lift(inst, &q, &cosets)?;
            let best_value = *trace.last().unwrap();
            debug_assert!((evaluate(inst, &assignment)? - best_value).abs() < 1e-9);
            Ok(FolkloreOutcome {
                report: SolveReport {
                    method: "folklore",
                    best_value,
                    best_assignment: assignment,
                    satisfiable: None,
                    expectation: Some(expectation),
                    guarantee: Some(guarantee),
                    elapsed: start.elapsed(),
                },
                commutator_size: comm.size(),
                quotient_order: q.table.order(),
                abelian_satisfiable: true,
                expectation_trace: trace,
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{load_group, subgroup_closure};
    use crate::lin::{generate_planted, LinConstraint, Term};

    #[test]
    fn brute_force_on_planted_instances() {
        let g = load_group("Z4").unwrap();
        let (inst, _) = generate_planted(&g, 4, 10, 2, 1).unwrap();
        let rep = brute_force(&inst, 1 << 20).unwrap();
        assert!((rep.best_value - 1.0).abs() < 1e-12);
        assert_eq!(rep.satisfiable, Some(true));
    }

    #[test]
    fn brute_force_single_constraint() {
        let g = load_group("Z4").unwrap();
        let c = LinConstraint {
            weight: 1.0,
            rhs: 2,
            consts: vec![0, 0],
            terms: vec![Term {
                var: 0,
                inverse: false,
            }],
        };
        let inst = LinInstance::new(g, 2, vec![c]).unwrap();
        let rep = brute_force(&inst, 100).unwrap();
        assert!((rep.best_value - 1.0).abs() < 1e-12);
        assert_eq!(rep.best_assignment[0], 2);
    }

    #[test]
    fn brute_force_respects_budget() {
        let g = load_group("S3").unwrap();
        let (inst, _) = generate_planted(&g, 10, 5, 2, 1).unwrap();
        assert!(matches!(
            brute_force(&inst, 1000),
            Err(SolveError::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn congruence_solving() {
        // x₁+x₂ ≡ 1, x₂ ≡ 1 (mod 2) → (0, 1)
        let sys = AbelianSystem {
            factors: vec![2],
            coeffs: vec![vec![1, 1], vec![0, 1]],
            rhs: vec![vec![1], vec![1]],
            num_vars: 2,
        };
        let sol = abelian_solve(&sys).unwrap().unwrap();
        assert_eq!(sol, vec![vec![0], vec![1]]);

        // 0·x ≡ 1 (mod 2) is unsatisfiable
        let sys = AbelianSystem {
            factors: vec![2],
            coeffs: vec![vec![0]],
            rhs: vec![vec![1]],
            num_vars: 1,
        };
        assert!(abelian_solve(&sys).unwrap().is_none());

        // 2x ≡ 2 (mod 4) has solutions {1, 3}
        let sys = AbelianSystem {
            factors: vec![4],
            coeffs: vec![vec![2]],
            rhs: vec![vec![2]],
            num_vars: 1,
        };
        let sol = abelian_solve(&sys).unwrap().unwrap();
        assert!(sol[0][0] == 1 || sol[0][0] == 3);
    }

    #[test]
    fn abelian_solver_agrees_with_brute_force() {
        use rand::Rng;
        use rand::SeedableRng;
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        for trial in 0..200 {
            let d = *[2usize, 3, 4, 6].get(rng.random_range(0..4)).unwrap() as i64;
            let vars = rng.random_range(1..=4);
            let rows = rng.random_range(1..=4);
            let coeffs: Vec<Vec<i64>> = (0..rows)
                .map(|_| (0..vars).map(|_| rng.random_range(-3..=3)).collect())
                .collect();
            let rhs: Vec<Vec<i64>> = (0..rows).map(|_| vec![rng.random_range(0..d)]).collect();
            let sys = AbelianSystem {
                factors: vec![d as usize],
                coeffs: coeffs.clone(),
                rhs: rhs.clone(),
                num_vars: vars,
            };
            let solved = abelian_solve(&sys).unwrap();
            // brute force over d^vars coordinate tuples
            let mut any = false;
            let mut x = vec![0i64; vars];
            'bf: loop {
                let ok = (0..rows).all(|i| {
                    let lhs: i64 = (0..vars).map(|v| coeffs[i][v] * x[v]).sum();
                    (lhs - rhs[i][0]).rem_euclid(d) == 0
                });
                if ok {
                    any = true;
                    break;
                }
                let mut i = vars;
                loop {
                    if i == 0 {
                        break 'bf;
                    }
                    i -= 1;
                    x[i] += 1;
                    if x[i] < d {
                        break;
                    }
                    x[i] = 0;
                }
            }
            assert_eq!(
                solved.is_some(),
                any,
                "trial {trial}: solver and brute force disagree (d={d})"
            );
        }
    }

    #[test]
    fn multi_factor_systems() {
        // simultaneous congruences over Z2 × Z4
        let sys = AbelianSystem {
            factors: vec![2, 4],
            coeffs: vec![vec![1, 1]],
            rhs: vec![vec![1, 3]],
            num_vars: 2,
        };
        let sol = abelian_solve(&sys).unwrap().unwrap();
        assert_eq!((sol[0][0] as i64 + sol[1][0] as i64).rem_euclid(2), 1);
        assert_eq!((sol[0][1] as i64 + sol[1][1] as i64).rem_euclid(4), 3);
    }

    #[test]
    fn lift_expectation_on_planted_s3() {
        let g = load_group("S3").unwrap();
        let (inst, _) = generate_planted(&g, 8, 40, 3, 21).unwrap();
        let outcome = folklore_approx(&inst).unwrap();
        assert_eq!(outcome.commutator_size, 3);
        let e = outcome.report.expectation.unwrap();
        assert!((e - 1.0 / 3.0).abs() < 1e-12, "expectation {e}");
        assert!(outcome.report.best_value >= e - 1e-12);
    }

    #[test]
    fn abelian_instance_lifts_to_value_one() {
        let g = load_group("Z6").unwrap();
        let (inst, _) = generate_planted(&g, 5, 15, 3, 8).unwrap();
        let outcome = folklore_approx(&inst).unwrap();
        assert_eq!(outcome.commutator_size, 1);
        assert!((outcome.report.expectation.unwrap() - 1.0).abs() < 1e-12);
        assert!((outcome.report.best_value - 1.0).abs() < 1e-12);
    }

    #[test]
    fn random_lift_stays_in_cosets_and_matches_expectation() {
        let g = load_group("S3").unwrap();
        let (inst, _) = generate_planted(&g, 6, 20, 3, 5).unwrap();
        let comm = commutator_subgroup(&g);
        let q = quotient(&g, &comm).unwrap();
        let dec = abelian_decomposition(&q.table).unwrap();
        let sys = crate::lin::abelianize(&inst, &q, &dec);
        let coords = abelian_solve(&sys).unwrap().unwrap();
        let cosets: CosetAssignment = coords.iter().map(|c| dec.element_of(&q.table, c)).collect();
        let e = lift_expectation(&inst, &q, &cosets).unwrap();

        let n_draws = 10_000;
        let mut sum = 0.0;
        let mut sum_sq = 0.0;
        for seed in 0..n_draws {
            let lift = random_lift(&q, &cosets, seed);
            for (v, &elem) in lift.iter().enumerate() {
                assert_eq!(q.project(elem), cosets[v]);
            }
            let val = evaluate(&inst, &lift).unwrap();
            sum += val;
            sum_sq += val * val;
        }
        let mean = sum / n_draws as f64;
        let var = (sum_sq / n_draws as f64 - mean * mean).max(0.0);
        let sigma = (var / n_draws as f64).sqrt();
        assert!(
            (mean - e).abs() <= 3.0 * sigma + 1e-9,
            "mean {mean} vs expectation {e}"
        );
    }

    #[test]
    fn trivial_quotient_lift_is_uniform_over_g() {
        let g = load_group("S3").unwrap();
        let whole = subgroup_closure(&g, &(0..6).collect::<Vec<_>>());
        let q = quotient(&g, &whole).unwrap();
        assert_eq!(q.table.order(), 1);
        let cosets = vec![0usize; 3];
        let mut counts = vec![0usize; 6];
        for seed in 0..6000 {
            let lift = random_lift(&q, &cosets, seed);
            counts[lift[0]] += 1;
        }
        // all six elements reachable, roughly uniformly
        assert!(counts.iter().all(|&c| c > 800));
    }

    #[test]
    fn derandomized_trace_is_monotone_and_beats_expectation() {
        let g = load_group("Q8").unwrap();
        let (inst, _) = generate_planted(&g, 6, 25, 3, 77).unwrap();
        let outcome = folklore_approx(&inst).unwrap();
        assert_eq!(outcome.commutator_size, 2);
        let e = outcome.report.expectation.unwrap();
        assert!((e - 0.5).abs() < 1e-12);
        assert!(outcome.report.best_value >= 0.5 - 1e-12);
        assert!(outcome
            .expectation_trace
            .windows(2)
            .all(|w| w[1] >= w[0] - 1e-12));
        assert_eq!(
            outcome.expectation_trace.len(),
            inst.num_vars + 1,
            "one trace entry per fixed variable plus the start"
        );
    }

    #[test]
    fn repeated_variable_expectation_via_enumeration() {
        // x₀ ⊙ x₀ = b over S3: expectation by exact enumeration matches a
        // direct count over the coset
        let g = load_group("S3").unwrap();
        let comm = commutator_subgroup(&g);
        let q = quotient(&g, &comm).unwrap();
        let c = LinConstraint {
            weight: 1.0,
            rhs: 0,
            consts: vec![0, 0, 0],
            terms: vec![
                Term {
                    var: 0,
                    inverse: false,
                },
                Term {
                    var: 0,
                    inverse: false,
                },
            ],
        };
        let inst = LinInstance::new(g.clone(), 1, vec![c]).unwrap();
        for coset in 0..q.num_cosets() {
            let e = lift_expectation(&inst, &q, &vec![coset]).unwrap();
            let members = &q.cosets[coset];
            let direct =
                members.iter().filter(|&&x| g.mul(x, x) == 0).count() as f64 / members.len() as f64;
            assert!((e - direct).abs() < 1e-12);
        }
    }

    #[test]
    fn brute_force_dominates_derandomized() {
        let g = load_group("S3").unwrap();
        for seed in 0..5 {
            let (inst, _) = generate_planted(&g, 5, 12, 3, seed).unwrap();
            let brute = brute_force(&inst, 1 << 20).unwrap();
            let folk = folklore_approx(&inst).unwrap();
            assert!(
                brute.best_value >= folk.report.best_value - 1e-12,
                "seed {seed}"
            );
            assert!(folk.report.best_value >= folk.report.expectation.unwrap() - 1e-12);
        }
    }

    #[test]
    fn unsatisfiable_instance_reports_and_falls_back() {
        // x₀ = a and x₀ = b with proj(a) ≠ proj(b) is unsatisfiable over G,
        // and its abelian image is unsatisfiable too
        let g = load_group("S3").unwrap();
        let transposition = (1..6).find(|&e| g.element_order(e) == 2).unwrap();
        let mk = |rhs| LinConstraint {
            weight: 1.0,
            rhs,
            consts: vec![0, 0],
            terms: vec![Term {
                var: 0,
                inverse: false,
            }],
        };
        let inst = LinInstance::new(g.clone(), 1, vec![mk(0), mk(transposition)]).unwrap();
        let outcome = folklore_approx(&inst).unwrap();
        assert!(!outcome.abelian_satisfiable);
        assert_eq!(outcome.report.satisfiable, Some(false));
        // best constant assignment still satisfies half the weight
        assert!((outcome.report.best_value - 0.5).abs() < 1e-12);
    }

    #[cfg(feature = "a5-irreps")]
    #[test]
    fn a5_guarantee_degenerates_to_one_over_sixty() {
        let g = load_group("A5").unwrap();
        let (inst, _) = generate_planted(&g, 4, 5, 2, 3).unwrap();
        let outcome = folklore_approx(&inst).unwrap();
        assert_eq!(outcome.commutator_size, 60);
        assert_eq!(outcome.quotient_order, 1);
        assert!((outcome.report.guarantee.unwrap() - 1.0 / 60.0).abs() < 1e-15);
        assert!(outcome.report.best_value >= 1.0 / 60.0 - 1e-12);
    }
}
