//! Fourier analysis on G and Gⁿ.
//!
//! Functions on Gⁿ are stored as dense tables indexed mixed-radix with
//! coordinate 1 most significant. The transform is computed by direct
//! summation, f̂(α) = E_x f(x)·α(x) with α(x) = ⊗ᵢ ρᵢ(xᵢ), under an explicit
//! point budget; Parseval balance is verified on every transform.

use ndarray::Array2;
use num_complex::Complex64;
use thiserror::Error;

use crate::cmat::{hs_norm, mat_inner};
use crate::group::{ElemId, FiniteGroup};
use crate::rep::{Irrep, IrrepSet};

/// Residual tolerance for the analytic identities (Parseval, Plancherel,
/// inversion, convolution theorem).
pub const FOURIER_TOL: f64 = 1e-8;
/// Cap on |G|^n for full-table transforms.
pub const POINT_BUDGET: usize = 100_000;
/// Cap on |G|^{2n} for direct convolution.
pub const CONV_BUDGET: usize = 100_000_000;

#[derive(Debug, Error)]
pub enum FourierError {
    #[error("table has {points} points, exceeding the budget {budget}")]
    BudgetExceeded { points: usize, budget: usize },
    #[error("tables have mismatched group or arity")]
    ShapeMismatch,
    #[error("neither function has mean zero (|mean| ≤ 1e-10 required)")]
    MeanNotZero,
    #[error("function table is not folded")]
    NotFolded,
    #[error("representation must have dimension at least 2")]
    DimOne,
    #[error("matrix entry index out of range")]
    IndexOutOfRange,
    #[error("function file parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("fourier invariant failure: {0}")]
    InvariantFailure(String),
}

// ---------------------------------------------------------------------------
// Mixed-radix indexing of Gⁿ
// ---------------------------------------------------------------------------

/// |G|^n with an explicit budget check.
pub fn point_count(order: usize, n: usize, budget: usize) -> Result<usize, FourierError> {
    let mut p: usize = 1;
    for _ in 0..n {
        p = p
            .checked_mul(order)
            .filter(|&p| p <= budget)
            .ok_or(FourierError::BudgetExceeded {
                points: usize::MAX,
                budget,
            })?;
    }
    Ok(p)
}

/// Decodes a table index into the element tuple (coordinate 1 most
/// significant).
pub fn index_to_tuple(mut idx: usize, order: usize, n: usize) -> Vec<ElemId> {
    let mut t = vec![0; n];
    for i in (0..n).rev() {
        t[i] = idx % order;
        idx /= order;
    }
    t
}

pub fn tuple_to_index(tuple: &[ElemId], order: usize) -> usize {
    tuple.iter().fold(0, |acc, &x| acc * order + x)
}

/// The diagonal translate c·x with (c·x)ᵢ = c ⊙ xᵢ.
pub fn translate(g: &FiniteGroup, c: ElemId, tuple: &[ElemId]) -> Vec<ElemId> {
    tuple.iter().map(|&x| g.mul(c, x)).collect()
}

// ---------------------------------------------------------------------------
// Function tables
// ---------------------------------------------------------------------------

/// A complex-valued function on Gⁿ as a dense table.
#[derive(Debug, Clone)]
pub struct ScalarTable {
    pub group: FiniteGroup,
    pub n: usize,
    pub values: Vec<Complex64>,
}

impl ScalarTable {
    pub fn new(group: FiniteGroup, n: usize, values: Vec<Complex64>) -> Result<Self, FourierError> {
        let points = point_count(group.order(), n, usize::MAX)?;
        if values.len() != points {
            return Err(FourierError::ShapeMismatch);
        }
        Ok(ScalarTable { group, n, values })
    }

    pub fn mean(&self) -> Complex64 {
        self.values.iter().sum::<Complex64>() / self.values.len() as f64
    }

    /// L²(Gⁿ) norm, sqrt(E|f|²).
    pub fn l2_norm(&self) -> f64 {
        (self.values.iter().map(|v| v.norm_sqr()).sum::<f64>() / self.values.len() as f64).sqrt()
    }

    /// Hermitian inner product E[f(x) conj(g(x))].
    pub fn l2_inner(&self, other: &ScalarTable) -> Complex64 {
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a * b.conj())
            .sum::<Complex64>()
            / self.values.len() as f64
    }

    /// The symmetric bilinear form ⟨f₁|f₂⟩ = E[f₁(x) f₂(x⁻¹)], which differs
    /// from the Hermitian inner product.
    pub fn bilinear_form(&self, other: &ScalarTable) -> Result<Complex64, FourierError> {
        if self.group.order() != other.group.order() || self.n != other.n {
            return Err(FourierError::ShapeMismatch);
        }
        let ord = self.group.order();
        let mut acc = Complex64::new(0.0, 0.0);
        for (idx, v) in self.values.iter().enumerate() {
            let t = index_to_tuple(idx, ord, self.n);
            let tinv: Vec<ElemId> = t.iter().map(|&x| self.group.inv(x)).collect();
            acc += v * other.values[tuple_to_index(&tinv, ord)];
        }
        Ok(acc / self.values.len() as f64)
    }
}

/// A G-valued function on Gⁿ, used as a dictatorship-test or long-code
/// table. `folded` asserts f(c·x) = c ⊙ f(x) for all c.
#[derive(Debug, Clone)]
pub struct GroupTable {
    pub group: FiniteGroup,
    pub n: usize,
    pub values: Vec<ElemId>,
    pub folded: bool,
}

impl GroupTable {
    /// Wraps a value table, verifying the folding identity exhaustively when
    /// claimed (tables within the point budget only).
    pub fn new(
        group: FiniteGroup,
        n: usize,
        values: Vec<ElemId>,
        folded: bool,
    ) -> Result<Self, FourierError> {
        let points = point_count(group.order(), n, usize::MAX)?;
        if values.len() != points {
            return Err(FourierError::ShapeMismatch);
        }
        let t = GroupTable {
            group,
            n,
            values,
            folded,
        };
        if folded && points <= POINT_BUDGET && !t.folding_holds() {
            return Err(FourierError::NotFolded);
        }
        Ok(t)
    }

    pub fn folding_holds(&self) -> bool {
        let ord = self.group.order();
        for idx in 0..self.values.len() {
            let t = index_to_tuple(idx, ord, self.n);
            for c in 1..ord {
                let shifted = tuple_to_index(&translate(&self.group, c, &t), ord);
                if self.values[shifted] != self.group.mul(c, self.values[idx]) {
                    return false;
                }
            }
        }
        true
    }

    /// Builds a folded table from one value per orbit representative;
    /// `rep_values[k]` is the value at the k-th representative (in the order
    /// of [`orbit_reps`]).
    pub fn from_rep_values(
        group: FiniteGroup,
        n: usize,
        rep_values: &[ElemId],
    ) -> Result<Self, FourierError> {
        let ord = group.order();
        let points = point_count(ord, n, POINT_BUDGET)?;
        let reps = orbit_reps(&group, n)?;
        if rep_values.len() != reps.len() {
            return Err(FourierError::ShapeMismatch);
        }
        let mut values = vec![usize::MAX; points];
        for (k, &rep_idx) in reps.iter().enumerate() {
            let rep = index_to_tuple(rep_idx, ord, n);
            for c in 0..ord {
                let idx = tuple_to_index(&translate(&group, c, &rep), ord);
                values[idx] = group.mul(c, rep_values[k]);
            }
        }
        debug_assert!(values.iter().all(|&v| v != usize::MAX));
        GroupTable::new(group, n, values, true)
    }
}

/// Indices of the orbit representatives (lexicographically minimal tuple of
/// each diagonal-translation orbit), ascending. There are |G|^{n-1} orbits.
pub fn orbit_reps(g: &FiniteGroup, n: usize) -> Result<Vec<usize>, FourierError> {
    let ord = g.order();
    let points = point_count(ord, n, POINT_BUDGET)?;
    let mut seen = vec![false; points];
    let mut reps = vec![];
    for idx in 0..points {
        if seen[idx] {
            continue;
        }
        reps.push(idx);
        let t = index_to_tuple(idx, ord, n);
        for c in 0..ord {
            seen[tuple_to_index(&translate(g, c, &t), ord)] = true;
        }
    }
    Ok(reps)
}

/// Writes a point as c·rep: returns (position of the representative in the
/// [`orbit_reps`] order, the constant c).
pub fn orbit_decompose(g: &FiniteGroup, n: usize, reps: &[usize], idx: usize) -> (usize, ElemId) {
    let ord = g.order();
    let t = index_to_tuple(idx, ord, n);
    let mut best = usize::MAX;
    let mut best_c = 0;
    for c in 0..ord {
        let shifted = tuple_to_index(&translate(g, c, &t), ord);
        if shifted < best {
            best = shifted;
            best_c = c;
        }
    }
    let pos = reps
        .binary_search(&best)
        .expect("orbit representative missing");
    // best = best_c·x, so x = best_c⁻¹·rep
    (pos, g.inv(best_c))
}

// ---------------------------------------------------------------------------
// Irrep tuples over Gⁿ
// ---------------------------------------------------------------------------

/// An irrep of Gⁿ as the tuple of its factor irrep ids.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IrrepIndex(pub Vec<usize>);

impl IrrepIndex {
    pub fn dim(&self, set: &IrrepSet) -> usize {
        self.0.iter().map(|&i| set.irreps[i].dim).product()
    }

    /// Number of non-trivial components.
    pub fn weight(&self, set: &IrrepSet) -> usize {
        self.0
            .iter()
            .filter(|&&i| !set.irreps[i].is_trivial)
            .count()
    }

    /// Number of components of dimension ≥ 2.
    pub fn w2(&self, set: &IrrepSet) -> usize {
        self.0.iter().filter(|&&i| set.irreps[i].dim >= 2).count()
    }
}

/// α(x) = ⊗ᵢ ρ_{αᵢ}(xᵢ), built entrywise (Kronecker convention: coordinate 1
/// most significant in both row and column indices).
pub fn alpha_matrix(set: &IrrepSet, alpha: &[usize], tuple: &[ElemId]) -> Array2<Complex64> {
    let mats: Vec<&Array2<Complex64>> = alpha
        .iter()
        .zip(tuple)
        .map(|(&a, &x)| set.irreps[a].mat(x))
        .collect();
    let dims: Vec<usize> = mats.iter().map(|m| m.nrows()).collect();
    let total: usize = dims.iter().product();
    Array2::from_shape_fn((total, total), |(mut bi, mut bj)| {
        let mut v = Complex64::new(1.0, 0.0);
        for k in (0..mats.len()).rev() {
            let d = dims[k];
            v *= mats[k][[bi % d, bj % d]];
            bi /= d;
            bj /= d;
        }
        v
    })
}

/// The complete Fourier transform of a function on Gⁿ: one coefficient
/// matrix per irrep tuple, stored densely in mixed-radix tuple order.
#[derive(Debug, Clone)]
pub struct FourierTable {
    pub n: usize,
    pub num_irreps: usize,
    coeffs: Vec<Array2<Complex64>>,
}

impl FourierTable {
    pub fn get(&self, alpha: &[usize]) -> &Array2<Complex64> {
        &self.coeffs[tuple_to_index(alpha, self.num_irreps)]
    }

    pub fn get_mut(&mut self, alpha: &[usize]) -> &mut Array2<Complex64> {
        &mut self.coeffs[tuple_to_index(alpha, self.num_irreps)]
    }

    /// Iterates (α, coefficient) in a deterministic order.
    pub fn iter(&self) -> impl Iterator<Item = (IrrepIndex, &Array2<Complex64>)> {
        let num = self.num_irreps;
        let n = self.n;
        self.coeffs
            .iter()
            .enumerate()
            .map(move |(rank, m)| (IrrepIndex(index_to_tuple(rank, num, n)), m))
    }

    /// Parseval sum Σ_α dim(α)·‖f̂(α)‖²_HS.
    pub fn parseval_sum(&self, set: &IrrepSet) -> f64 {
        self.iter()
            .map(|(alpha, m)| alpha.dim(set) as f64 * hs_norm(m).powi(2))
            .sum()
    }

    /// Zero table with the right shapes.
    pub fn zeros(set: &IrrepSet, n: usize) -> Self {
        let num = set.irreps.len();
        let ranks = num.pow(n as u32);
        let coeffs = (0..ranks)
            .map(|rank| {
                let alpha = index_to_tuple(rank, num, n);
                let d: usize = alpha.iter().map(|&a| set.irreps[a].dim).product();
                Array2::zeros((d, d))
            })
            .collect();
        FourierTable {
            n,
            num_irreps: num,
            coeffs,
        }
    }
}

/// f̂(α) = E_x f(x)·α(x) for every irrep tuple α of Gⁿ; verifies Parseval
/// balance before returning.
pub fn fourier_transform(f: &ScalarTable, set: &IrrepSet) -> Result<FourierTable, FourierError> {
    let ord = f.group.order();
    let points = point_count(ord, f.n, POINT_BUDGET)?;
    let mut table = FourierTable::zeros(set, f.n);
    let num = set.irreps.len();
    let ranks = num.pow(f.n as u32);
    for rank in 0..ranks {
        let alpha = index_to_tuple(rank, num, f.n);
        let acc = &mut table.coeffs[rank];
        for (idx, &fx) in f.values.iter().enumerate() {
            if fx.norm_sqr() == 0.0 {
                continue;
            }
            let x = index_to_tuple(idx, ord, f.n);
            let ax = alpha_matrix(set, &alpha, &x);
            acc.zip_mut_with(&ax, |a, &b| *a += fx * b);
        }
        acc.mapv_inplace(|v| v / points as f64);
    }
    let lhs = f.l2_norm().powi(2);
    let rhs = table.parseval_sum(set);
    if (lhs - rhs).abs() > FOURIER_TOL * (1.0 + lhs.abs()) {
        return Err(FourierError::InvariantFailure(format!(
            "Parseval balance violated: E|f|² = {lhs}, Σ dim‖f̂‖² = {rhs}"
        )));
    }
    Ok(table)
}

/// Fourier inversion: f(x) = Σ_α dim(α)·⟨f̂(α), α(x)⟩.
pub fn inverse_transform(t: &FourierTable, set: &IrrepSet) -> Result<ScalarTable, FourierError> {
    let g = set.group.clone();
    let ord = g.order();
    let points = point_count(ord, t.n, POINT_BUDGET)?;
    let num = set.irreps.len();
    let ranks = num.pow(t.n as u32);
    let mut values = vec![Complex64::new(0.0, 0.0); points];
    for rank in 0..ranks {
        let alpha = index_to_tuple(rank, num, t.n);
        let coeff = &t.coeffs[rank];
        if hs_norm(coeff) == 0.0 {
            continue;
        }
        let dim: usize = alpha.iter().map(|&a| set.irreps[a].dim).product();
        for (idx, v) in values.iter_mut().enumerate() {
            let x = index_to_tuple(idx, ord, t.n);
            let ax = alpha_matrix(set, &alpha, &x);
            *v += dim as f64 * mat_inner(coeff, &ax);
        }
    }
    ScalarTable::new(g, t.n, values)
}

/// (f∗g)(x) = E_y f(y)·g(y⁻¹x), componentwise on Gⁿ.
pub fn convolve(f: &ScalarTable, g: &ScalarTable) -> Result<ScalarTable, FourierError> {
    if f.group.order() != g.group.order() || f.n != g.n {
        return Err(FourierError::ShapeMismatch);
    }
    let ord = f.group.order();
    let points = f.values.len();
    if points.saturating_mul(points) > CONV_BUDGET {
        return Err(FourierError::BudgetExceeded {
            points: points * points,
            budget: CONV_BUDGET,
        });
    }
    let grp = &f.group;
    let tuples: Vec<Vec<ElemId>> = (0..points).map(|i| index_to_tuple(i, ord, f.n)).collect();
    let mut values = vec![Complex64::new(0.0, 0.0); points];
    for (yi, fy) in f.values.iter().enumerate() {
        if fy.norm_sqr() == 0.0 {
            continue;
        }
        let y = &tuples[yi];
        let yinv: Vec<ElemId> = y.iter().map(|&e| grp.inv(e)).collect();
        for (xi, out) in values.iter_mut().enumerate() {
            let x = &tuples[xi];
            let z: Vec<ElemId> = yinv.iter().zip(x).map(|(&a, &b)| grp.mul(a, b)).collect();
            *out += fy * g.values[tuple_to_index(&z, ord)];
        }
    }
    for v in &mut values {
        *v /= points as f64;
    }
    ScalarTable::new(f.group.clone(), f.n, values)
}

/// Outcome of the convolution-norm check ‖f∗g‖ ≤ (1/√D)‖f‖‖g‖.
#[derive(Debug, Clone)]
pub struct BnpReport {
    pub lhs: f64,
    pub rhs: f64,
    pub min_nontrivial_dim: usize,
    pub ok: bool,
    /// True when D = 1 and the bound is plain Cauchy–Schwarz.
    pub trivial_bound: bool,
}

/// Checks the convolution-norm gain for single-coordinate functions; at
/// least one input must have mean zero.
pub fn bnp_check(
    f: &ScalarTable,
    g: &ScalarTable,
    set: &IrrepSet,
) -> Result<BnpReport, FourierError> {
    if f.n != 1 || g.n != 1 {
        return Err(FourierError::ShapeMismatch);
    }
    if f.mean().norm() > 1e-10 && g.mean().norm() > 1e-10 {
        return Err(FourierError::MeanNotZero);
    }
    let d = set.min_nontrivial_dim;
    let lhs = convolve(f, g)?.l2_norm();
    let rhs = f.l2_norm() * g.l2_norm() / (d as f64).sqrt();
    Ok(BnpReport {
        lhs,
        rhs,
        min_nontrivial_dim: d,
        ok: lhs <= rhs + 1e-9,
        trivial_bound: d == 1,
    })
}

/// The matrix-entry function g_{ij}(x) = ρ(f(x))_{ij}.
pub fn entry_function(
    f: &GroupTable,
    rho: &Irrep,
    i: usize,
    j: usize,
) -> Result<ScalarTable, FourierError> {
    if i >= rho.dim || j >= rho.dim {
        return Err(FourierError::IndexOutOfRange);
    }
    let values = f.values.iter().map(|&e| rho.mat(e)[[i, j]]).collect();
    ScalarTable::new(f.group.clone(), f.n, values)
}

/// For folded f and dim(ρ) ≥ 2: the largest HS norm of any dimension-1
/// Fourier coefficient of ρ(f(·))_{ij}, over all entries (i,j). Zero (up to
/// tolerance) by the folding identity.
pub fn folded_dim1_mass(f: &GroupTable, rho: &Irrep, set: &IrrepSet) -> Result<f64, FourierError> {
    if !f.folded {
        return Err(FourierError::NotFolded);
    }
    if rho.dim < 2 {
        return Err(FourierError::DimOne);
    }
    let mut max = 0.0f64;
    for i in 0..rho.dim {
        for j in 0..rho.dim {
            let gij = entry_function(f, rho, i, j)?;
            let table = fourier_transform(&gij, set)?;
            for (alpha, coeff) in table.iter() {
                if alpha.dim(set) == 1 {
                    max = max.max(hs_norm(coeff));
                }
            }
        }
    }
    Ok(max)
}

// ---------------------------------------------------------------------------
// Function table files
// ---------------------------------------------------------------------------

fn parse_fn_header<'a>(
    lines: &mut impl Iterator<Item = (usize, &'a str)>,
) -> Result<(String, usize), FourierError> {
    let mut next = |what: &str| {
        lines.next().ok_or_else(|| FourierError::Parse {
            line: 0,
            msg: format!("missing {what}"),
        })
    };
    let (ln, header) = next("header")?;
    if header != "fn v1" {
        return Err(FourierError::Parse {
            line: ln,
            msg: "expected `fn v1`".into(),
        });
    }
    let (ln, group_line) = next("group line")?;
    let gname = group_line
        .strip_prefix("group")
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .ok_or_else(|| FourierError::Parse {
            line: ln,
            msg: "expected `group <name>`".into(),
        })?;
    let (ln, n_line) = next("n line")?;
    let n: usize = n_line
        .strip_prefix("n")
        .map(str::trim)
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| FourierError::Parse {
            line: ln,
            msg: "expected `n <k>`".into(),
        })?;
    Ok((gname.to_string(), n))
}

fn fn_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty())
}

/// Parses a complex-valued function table (`index re,im` lines).
pub fn parse_scalar_table(
    text: &str,
    load: impl Fn(&str) -> Result<FiniteGroup, crate::group::GroupError>,
) -> Result<ScalarTable, FourierError> {
    let mut lines = fn_lines(text);
    let (gname, n) = parse_fn_header(&mut lines)?;
    let group = load(&gname).map_err(|e| FourierError::Parse {
        line: 0,
        msg: format!("unknown group `{gname}`: {e}"),
    })?;
    let points = point_count(group.order(), n, POINT_BUDGET)?;
    let mut values = vec![None; points];
    for (ln, l) in lines {
        let mut it = l.split_whitespace();
        let (idx, val) = (it.next(), it.next());
        let (idx, val) = match (idx, val, it.next()) {
            (Some(i), Some(v), None) => (i, v),
            _ => {
                return Err(FourierError::Parse {
                    line: ln,
                    msg: "expected `index re,im`".into(),
                })
            }
        };
        let idx: usize =
            idx.parse()
                .ok()
                .filter(|&i| i < points)
                .ok_or_else(|| FourierError::Parse {
                    line: ln,
                    msg: "bad index".into(),
                })?;
        let (re, im) = val.split_once(',').ok_or_else(|| FourierError::Parse {
            line: ln,
            msg: "expected re,im".into(),
        })?;
        let re: f64 = re.parse().map_err(|_| FourierError::Parse {
            line: ln,
            msg: "bad real part".into(),
        })?;
        let im: f64 = im.parse().map_err(|_| FourierError::Parse {
            line: ln,
            msg: "bad imaginary part".into(),
        })?;
        values[idx] = Some(Complex64::new(re, im));
    }
    let values: Option<Vec<Complex64>> = values.into_iter().collect();
    let values = values.ok_or_else(|| FourierError::Parse {
        line: 0,
        msg: "table is missing entries".into(),
    })?;
    ScalarTable::new(group, n, values)
}

/// Parses a group-valued function table (`index elem` lines); the folded
/// flag is set from the table contents.
pub fn parse_group_table(
    text: &str,
    load: impl Fn(&str) -> Result<FiniteGroup, crate::group::GroupError>,
) -> Result<GroupTable, FourierError> {
    let mut lines = fn_lines(text);
    let (gname, n) = parse_fn_header(&mut lines)?;
    let group = load(&gname).map_err(|e| FourierError::Parse {
        line: 0,
        msg: format!("unknown group `{gname}`: {e}"),
    })?;
    let points = point_count(group.order(), n, POINT_BUDGET)?;
    let mut values = vec![None; points];
    for (ln, l) in lines {
        let mut it = l.split_whitespace();
        let (idx, val) = match (it.next(), it.next(), it.next()) {
            (Some(i), Some(v), None) => (i, v),
            _ => {
                return Err(FourierError::Parse {
                    line: ln,
                    msg: "expected `index elem`".into(),
                })
            }
        };
        let idx: usize =
            idx.parse()
                .ok()
                .filter(|&i| i < points)
                .ok_or_else(|| FourierError::Parse {
                    line: ln,
                    msg: "bad index".into(),
                })?;
        let v: usize = val
            .parse()
            .ok()
            .filter(|&v| v < group.order())
            .ok_or_else(|| FourierError::Parse {
                line: ln,
                msg: "bad element id".into(),
            })?;
        values[idx] = Some(v);
    }
    let values: Option<Vec<ElemId>> = values.into_iter().collect();
    let values = values.ok_or_else(|| FourierError::Parse {
        line: 0,
        msg: "table is missing entries".into(),
    })?;
    let mut t = GroupTable::new(group, n, values, false)?;
    t.folded = t.folding_holds();
    Ok(t)
}

pub fn serialize_scalar_table(t: &ScalarTable) -> String {
    let mut out = format!("fn v1\ngroup {}\nn {}\n", t.group.name, t.n);
    for (i, v) in t.values.iter().enumerate() {
        out.push_str(&format!("{i} {},{}\n", v.re, v.im));
    }
    out
}

pub fn serialize_group_table(t: &GroupTable) -> String {
    let mut out = format!("fn v1\ngroup {}\nn {}\n", t.group.name, t.n);
    for (i, v) in t.values.iter().enumerate() {
        out.push_str(&format!("{i} {v}\n"));
    }
    out
}
