//! Label Cover and its reduction to 3-LIN over a group through folded long
//! codes.
//!
//! The reduction's test picks an edge (u, v), draws a over G^R and b over
//! G^L, sets cᵢ = (b∘π)ᵢ⁻¹ ⊙ aᵢ⁻¹ and emits the constraint
//! f_v(a) ⊙ f_u(b) ⊙ f_v(c) = 1. All tables are folded, so the emitted
//! constraints live on one variable per folding orbit, with the folding
//! constants interleaved into the word. Decoding draws an irrep tuple α
//! with probability dim(α)·‖ĝ(α)‖² and keeps a uniformly random coordinate
//! carrying a component of dimension ≥ 2.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::fourier::{
    entry_function, fourier_transform, index_to_tuple, orbit_decompose, orbit_reps, tuple_to_index,
    FourierError, GroupTable,
};
use crate::group::{ElemId, FiniteGroup, GroupError};
use crate::lin::{Assignment, LinConstraint, LinError, LinInstance, Term};
use crate::rep::IrrepSet;

/// Cap on the number of constraints a full-mode reduction may enumerate.
pub const FULL_MODE_BUDGET: u128 = 1_000_000;

#[derive(Debug, Error)]
pub enum ReduceError {
    #[error("bad Label Cover shape: {0}")]
    BadShape(String),
    #[error("projection on edge {0} is not surjective")]
    NotSurjective(usize),
    #[error("label out of range: {0}")]
    LabelOutOfRange(String),
    #[error("full reduction needs {needed} constraints, over the budget {FULL_MODE_BUDGET}")]
    BudgetExceeded { needed: u128 },
    #[error("alpha set must be nonempty")]
    EmptyAlphaSet,
    #[error("decode requires folded tables")]
    NotFolded,
    #[error("matrix entry index out of range for the chosen representation")]
    EntryOutOfRange,
    #[error("label cover parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Lin(#[from] LinError),
    #[error(transparent)]
    Fourier(#[from] FourierError),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// A bipartite projection CSP: edges carry surjections π : [R] → [L].
#[derive(Debug, Clone)]
pub struct LabelCover {
    pub u_size: usize,
    pub v_size: usize,
    pub l: usize,
    pub r: usize,
    pub edges: Vec<LcEdge>,
}

#[derive(Debug, Clone)]
pub struct LcEdge {
    pub u: usize,
    pub v: usize,
    /// π[j] ∈ [L] for j ∈ [R].
    pub pi: Vec<usize>,
}

impl LabelCover {
    pub fn validate(&self) -> Result<(), ReduceError> {
        if self.l == 0 || self.r < self.l {
            return Err(ReduceError::BadShape(format!(
                "alphabets L={} R={} need 1 ≤ L ≤ R",
                self.l, self.r
            )));
        }
        for (i, e) in self.edges.iter().enumerate() {
            if e.u >= self.u_size || e.v >= self.v_size {
                return Err(ReduceError::BadShape(format!(
                    "edge {i} endpoint out of range"
                )));
            }
            if e.pi.len() != self.r {
                return Err(ReduceError::BadShape(format!(
                    "edge {i} projection has wrong length"
                )));
            }
            let mut covered = vec![false; self.l];
            for &p in &e.pi {
                if p >= self.l {
                    return Err(ReduceError::BadShape(format!(
                        "edge {i} projection value {p} out of range"
                    )));
                }
                covered[p] = true;
            }
            if !covered.iter().all(|&c| c) {
                return Err(ReduceError::NotSurjective(i));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Labeling {
    pub u_labels: Vec<usize>,
    pub v_labels: Vec<usize>,
}

/// Fraction of edges e = (u, v) with π_e(ℓ(v)) = ℓ(u).
pub fn lc_value(lc: &LabelCover, lab: &Labeling) -> Result<f64, ReduceError> {
    if lab.u_labels.len() != lc.u_size || lab.v_labels.len() != lc.v_size {
        return Err(ReduceError::LabelOutOfRange(
            "labeling length mismatch".into(),
        ));
    }
    for &l in &lab.u_labels {
        if l >= lc.l {
            return Err(ReduceError::LabelOutOfRange(format!("u label {l}")));
        }
    }
    for &l in &lab.v_labels {
        if l >= lc.r {
            return Err(ReduceError::LabelOutOfRange(format!("v label {l}")));
        }
    }
    let satisfied = lc
        .edges
        .iter()
        .filter(|e| e.pi[lab.v_labels[e.v]] == lab.u_labels[e.u])
        .count();
    Ok(satisfied as f64 / lc.edges.len() as f64)
}

#[derive(Debug, Clone, Copy)]
pub enum ToyLcKind {
    Planted,
    Random,
}

#[derive(Debug, Clone, Copy)]
pub struct ToyLcSizes {
    pub u: usize,
    pub v: usize,
    pub l: usize,
    pub r: usize,
}

/// Generates a complete-bipartite toy Label Cover. The planted kind picks a
/// labeling first and makes every projection consistent with it (and
/// surjective); the random kind just draws surjective projections.
/// Deterministic per seed.
pub fn generate_toy_lc(
    kind: ToyLcKind,
    sizes: ToyLcSizes,
    seed: u64,
) -> Result<(LabelCover, Option<Labeling>), ReduceError> {
    if sizes.u == 0 || sizes.v == 0 || sizes.l == 0 || sizes.r < sizes.l {
        return Err(ReduceError::BadShape(format!(
            "sizes U={} V={} L={} R={} are impossible",
            sizes.u, sizes.v, sizes.l, sizes.r
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let labeling = Labeling {
        u_labels: (0..sizes.u).map(|_| rng.random_range(0..sizes.l)).collect(),
        v_labels: (0..sizes.v).map(|_| rng.random_range(0..sizes.r)).collect(),
    };
    let mut edges = vec![];
    for u in 0..sizes.u {
        for v in 0..sizes.v {
            let mut pi = vec![usize::MAX; sizes.r];
            let (pinned_pos, pinned_label) = match kind {
                ToyLcKind::Planted => (labeling.v_labels[v], labeling.u_labels[u]),
                ToyLcKind::Random => (rng.random_range(0..sizes.r), rng.random_range(0..sizes.l)),
            };
            pi[pinned_pos] = pinned_label;
            // cover the remaining labels on shuffled free positions, then
            // fill uniformly
            let mut free: Vec<usize> = (0..sizes.r).filter(|&j| j != pinned_pos).collect();
            for i in (1..free.len()).rev() {
                free.swap(i, rng.random_range(0..=i));
            }
            let missing: Vec<usize> = (0..sizes.l).filter(|&x| x != pinned_label).collect();
            for (slot, &label) in free.iter().zip(&missing) {
                pi[*slot] = label;
            }
            for &slot in free.iter().skip(missing.len()) {
                pi[slot] = rng.random_range(0..sizes.l);
            }
            edges.push(LcEdge { u, v, pi });
        }
    }
    let lc = LabelCover {
        u_size: sizes.u,
        v_size: sizes.v,
        l: sizes.l,
        r: sizes.r,
        edges,
    };
    lc.validate()?;
    match kind {
        ToyLcKind::Planted => {
            debug_assert_eq!(lc_value(&lc, &labeling)?, 1.0);
            Ok((lc, Some(labeling)))
        }
        ToyLcKind::Random => Ok((lc, None)),
    }
}

#[derive(Debug, Clone)]
pub struct SmoothnessReport {
    /// E_u over neighbors of v of 1/|π_{uv}(α)|.
    pub stat: f64,
    /// |α|^{-2·d0}.
    pub bound: f64,
    pub ok: bool,
}

/// The smoothness statistic of a vertex–set pair against a supplied d₀.
pub fn smoothness_stat(
    lc: &LabelCover,
    v: usize,
    alpha_set: &[usize],
    d0: f64,
) -> Result<SmoothnessReport, ReduceError> {
    if alpha_set.is_empty() {
        return Err(ReduceError::EmptyAlphaSet);
    }
    for &j in alpha_set {
        if j >= lc.r {
            return Err(ReduceError::LabelOutOfRange(format!("alpha member {j}")));
        }
    }
    let incident: Vec<&LcEdge> = lc.edges.iter().filter(|e| e.v == v).collect();
    if incident.is_empty() {
        return Err(ReduceError::BadShape(format!("vertex v={v} has no edges")));
    }
    let mut total = 0.0;
    for e in &incident {
        let mut image = vec![false; lc.l];
        for &j in alpha_set {
            image[e.pi[j]] = true;
        }
        let size = image.iter().filter(|&&b| b).count();
        total += 1.0 / size as f64;
    }
    let stat = total / incident.len() as f64;
    let bound = (alpha_set.len() as f64).powf(-2.0 * d0);
    Ok(SmoothnessReport {
        stat,
        bound,
        ok: stat <= bound,
    })
}

// ---------------------------------------------------------------------------
// The reduction
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy)]
pub enum ReduceMode {
    /// Enumerate the complete constraint distribution with uniform weights.
    Full,
    /// Sample this many (edge, a, b) draws.
    Sampled { samples: usize },
}

/// The 3-LIN image of a Label Cover: one variable per folding orbit of each
/// node's long-code table.
#[derive(Debug, Clone)]
pub struct ReducedInstance {
    pub lc: LabelCover,
    pub group: FiniteGroup,
    pub instance: LinInstance,
    /// Orbit representative indices of G^L (u side).
    pub reps_l: Vec<usize>,
    /// Orbit representative indices of G^R (v side).
    pub reps_r: Vec<usize>,
}

impl ReducedInstance {
    pub fn var_for_u(&self, u: usize, rep_pos: usize) -> usize {
        u * self.reps_l.len() + rep_pos
    }

    pub fn var_for_v(&self, v: usize, rep_pos: usize) -> usize {
        self.lc.u_size * self.reps_l.len() + v * self.reps_r.len() + rep_pos
    }

    pub fn num_vars(&self) -> usize {
        self.lc.u_size * self.reps_l.len() + self.lc.v_size * self.reps_r.len()
    }
}

/// Builds the reduced instance. Every (edge, a, b) choice becomes one
/// 3-term constraint c_a ⊙ z_{v,rep(a)} ⊙ c_b ⊙ z_{u,rep(b)} ⊙ c_c ⊙
/// z_{v,rep(c)} = 1 over orbit-representative variables.
pub fn reduce(
    lc: &LabelCover,
    g: &FiniteGroup,
    mode: ReduceMode,
    seed: u64,
) -> Result<ReducedInstance, ReduceError> {
    lc.validate()?;
    let ord = g.order();
    let points_l = crate::fourier::point_count(ord, lc.l, crate::fourier::POINT_BUDGET)?;
    let points_r = crate::fourier::point_count(ord, lc.r, crate::fourier::POINT_BUDGET)?;
    let reps_l = orbit_reps(g, lc.l)?;
    let reps_r = orbit_reps(g, lc.r)?;
    let num_vars = lc.u_size * reps_l.len() + lc.v_size * reps_r.len();
    let var_u = |u: usize, pos: usize| u * reps_l.len() + pos;
    let var_v = |v: usize, pos: usize| lc.u_size * reps_l.len() + v * reps_r.len() + pos;

    let make_constraint = |edge: &LcEdge, a_idx: usize, b_idx: usize| {
        let a = index_to_tuple(a_idx, ord, lc.r);
        let b = index_to_tuple(b_idx, ord, lc.l);
        let c: Vec<ElemId> = (0..lc.r)
            .map(|i| g.mul(g.inv(b[edge.pi[i]]), g.inv(a[i])))
            .collect();
        let c_idx = tuple_to_index(&c, ord);
        let (pa, ca) = orbit_decompose(g, lc.r, &reps_r, a_idx);
        let (pb, cb) = orbit_decompose(g, lc.l, &reps_l, b_idx);
        let (pc, cc) = orbit_decompose(g, lc.r, &reps_r, c_idx);
        LinConstraint {
            weight: 1.0,
            rhs: 0,
            consts: vec![ca, cb, cc, 0],
            terms: vec![
                Term {
                    var: var_v(edge.v, pa),
                    inverse: false,
                },
                Term {
                    var: var_u(edge.u, pb),
                    inverse: false,
                },
                Term {
                    var: var_v(edge.v, pc),
                    inverse: false,
                },
            ],
        }
    };

    let constraints = match mode {
        ReduceMode::Full => {
            let needed = lc.edges.len() as u128 * points_r as u128 * points_l as u128;
            if needed > FULL_MODE_BUDGET {
                return Err(ReduceError::BudgetExceeded { needed });
            }
            let mut out = Vec::with_capacity(needed as usize);
            for edge in &lc.edges {
                for a_idx in 0..points_r {
                    for b_idx in 0..points_l {
                        out.push(make_constraint(edge, a_idx, b_idx));
                    }
                }
            }
            out
        }
        ReduceMode::Sampled { samples } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..samples)
                .map(|_| {
                    let edge = &lc.edges[rng.random_range(0..lc.edges.len())];
                    let a_idx = rng.random_range(0..points_r);
                    let b_idx = rng.random_range(0..points_l);
                    make_constraint(edge, a_idx, b_idx)
                })
                .collect()
        }
    };
    let instance = LinInstance::new(g.clone(), num_vars, constraints)?;
    Ok(ReducedInstance {
        lc: lc.clone(),
        group: g.clone(),
        instance,
        reps_l,
        reps_r,
    })
}

/// The long-code assignment of a labeling: each orbit-representative
/// variable takes the representative's coordinate at the node's label.
pub fn longcode_assignment(
    lc: &LabelCover,
    lab: &Labeling,
    red: &ReducedInstance,
) -> Result<Assignment, ReduceError> {
    if lab.u_labels.len() != lc.u_size || lab.v_labels.len() != lc.v_size {
        return Err(ReduceError::LabelOutOfRange(
            "labeling length mismatch".into(),
        ));
    }
    let ord = red.group.order();
    let mut assignment = vec![0; red.num_vars()];
    for u in 0..lc.u_size {
        let label = lab.u_labels[u];
        if label >= lc.l {
            return Err(ReduceError::LabelOutOfRange(format!("u label {label}")));
        }
        for (pos, &rep_idx) in red.reps_l.iter().enumerate() {
            assignment[red.var_for_u(u, pos)] = index_to_tuple(rep_idx, ord, lc.l)[label];
        }
    }
    for v in 0..lc.v_size {
        let label = lab.v_labels[v];
        if label >= lc.r {
            return Err(ReduceError::LabelOutOfRange(format!("v label {label}")));
        }
        for (pos, &rep_idx) in red.reps_r.iter().enumerate() {
            assignment[red.var_for_v(v, pos)] = index_to_tuple(rep_idx, ord, lc.r)[label];
        }
    }
    Ok(assignment)
}

// ---------------------------------------------------------------------------
// Fourier decoding
// ---------------------------------------------------------------------------

/// One decoding trial: a label or ⊥ per node.
#[derive(Debug, Clone)]
pub struct DecodedTrial {
    pub u_labels: Vec<Option<usize>>,
    pub v_labels: Vec<Option<usize>>,
    /// Satisfied fraction among edges whose endpoints are both labeled, if
    /// any.
    pub value: Option<f64>,
}

#[derive(Debug, Clone)]
pub struct DecodeReport {
    pub trials: Vec<DecodedTrial>,
    /// Fraction of node decodings that returned ⊥.
    pub bottom_rate: f64,
    /// Best conditioned Label Cover value over trials.
    pub best_lc_value: Option<f64>,
    /// Selection probability mass per node (u nodes then v nodes); bounded
    /// by ‖g‖² ≤ 1.
    pub node_mass: Vec<f64>,
}

/// The randomized Fourier decoding: per node draw an irrep tuple α with
/// probability dim(α)·‖ĝ(α)‖² (entry (r,p) of ρ(f_v(·)) on the v side,
/// entry (q,r) of ρ(f_u(·)) on the u side), then keep a uniformly random
/// coordinate whose component has dimension ≥ 2; leftover mass decodes ⊥.
#[allow(clippy::too_many_arguments)]
pub fn fourier_decode(
    red: &ReducedInstance,
    u_tables: &[GroupTable],
    v_tables: &[GroupTable],
    rho_id: usize,
    set: &IrrepSet,
    pqr: (usize, usize, usize),
    seed: u64,
    num_trials: usize,
) -> Result<DecodeReport, ReduceError> {
    let lc = &red.lc;
    if u_tables.len() != lc.u_size || v_tables.len() != lc.v_size {
        return Err(ReduceError::BadShape("one table per node required".into()));
    }
    let rho = &set.irreps[rho_id];
    let (p, q, r) = pqr;
    if p >= rho.dim || q >= rho.dim || r >= rho.dim {
        return Err(ReduceError::EntryOutOfRange);
    }
    for t in u_tables.iter().chain(v_tables) {
        if !t.folded {
            return Err(ReduceError::NotFolded);
        }
    }

    // per node: cumulative (probability, alpha, eligible coordinates)
    struct NodeDist {
        items: Vec<(f64, Vec<usize>, Vec<usize>)>,
        mass: f64,
        arity: usize,
    }
    let build = |table: &GroupTable, i: usize, j: usize| -> Result<NodeDist, ReduceError> {
        let gij = entry_function(table, rho, i, j)?;
        let ft = fourier_transform(&gij, set)?;
        let mut items = vec![];
        let mut mass = 0.0;
        for (alpha, coeff) in ft.iter() {
            let w = alpha.dim(set) as f64 * crate::cmat::hs_norm(coeff).powi(2);
            if w <= 0.0 {
                continue;
            }
            let eligible: Vec<usize> = alpha
                .0
                .iter()
                .enumerate()
                .filter(|&(_, &a)| set.irreps[a].dim >= 2)
                .map(|(c, _)| c)
                .collect();
            mass += w;
            items.push((w, alpha.0.clone(), eligible));
        }
        Ok(NodeDist {
            items,
            mass,
            arity: table.n,
        })
    };
    let mut dists: Vec<NodeDist> = Vec::with_capacity(lc.u_size + lc.v_size);
    for t in u_tables {
        dists.push(build(t, q, r)?);
    }
    for t in v_tables {
        dists.push(build(t, r, p)?);
    }
    let node_mass: Vec<f64> = dists.iter().map(|d| d.mass).collect();

    let num_nodes = lc.u_size + lc.v_size;
    let mut trials = Vec::with_capacity(num_trials);
    let mut bottoms = 0usize;
    let mut best_lc_value: Option<f64> = None;
    for trial in 0..num_trials {
        let mut labels: Vec<Option<usize>> = Vec::with_capacity(num_nodes);
        for (node, dist) in dists.iter().enumerate() {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream((trial * num_nodes + node) as u64);
            let draw: f64 = rng.random();
            let mut acc = 0.0;
            let mut chosen = None;
            for (w, _, eligible) in &dist.items {
                acc += w;
                if draw < acc {
                    if eligible.is_empty() {
                        break; // numerically negligible dim-1 leftovers
                    }
                    chosen = Some(eligible[rng.random_range(0..eligible.len())]);
                    break;
                }
            }
            debug_assert!(chosen.map_or(true, |c| c < dist.arity));
            if chosen.is_none() {
                bottoms += 1;
            }
            labels.push(chosen);
        }
        let (u_labels, v_labels) = labels.split_at(lc.u_size);
        let mut labeled = 0usize;
        let mut satisfied = 0usize;
        for e in &lc.edges {
            if let (Some(lu), Some(lv)) = (u_labels[e.u], v_labels[e.v]) {
                labeled += 1;
                if e.pi[lv] == lu {
                    satisfied += 1;
                }
            }
        }
        let value = (labeled > 0).then(|| satisfied as f64 / labeled as f64);
        if let Some(v) = value {
            if best_lc_value.map_or(true, |b| v > b) {
                best_lc_value = Some(v);
            }
        }
        trials.push(DecodedTrial {
            u_labels: u_labels.to_vec(),
            v_labels: v_labels.to_vec(),
            value,
        });
    }
    Ok(DecodeReport {
        trials,
        bottom_rate: bottoms as f64 / (num_trials * num_nodes) as f64,
        best_lc_value,
        node_mass,
    })
}

// ---------------------------------------------------------------------------
// Soundness parameter calculator
// ---------------------------------------------------------------------------

/// The constants the soundness statement demands of the Label Cover
/// instance for given (δ, |G|, d₀), in log10 because they are astronomically
/// small at any interesting scale.
#[derive(Debug, Clone, Copy)]
pub struct SoundnessParams {
    pub delta: f64,
    pub group_order: usize,
    pub d0: f64,
    /// log₁₀ of the required constant C with C^{-d₀/2} ≤ δ²/(12|G|⁶).
    pub c_log10: f64,
    /// log₁₀ of the required Label Cover soundness δ²/(10|G|^{10C}).
    pub lc_soundness_log10: f64,
}

pub fn soundness_params(delta: f64, group_order: usize, d0: f64) -> SoundnessParams {
    let log_g = (group_order as f64).log10();
    let c_log10 = (2.0 / d0) * (12f64.log10() + 6.0 * log_g - 2.0 * delta.log10());
    let c = 10f64.powf(c_log10);
    let lc_soundness_log10 = 2.0 * delta.log10() - 1.0 - 10.0 * c * log_g;
    SoundnessParams {
        delta,
        group_order,
        d0,
        c_log10,
        lc_soundness_log10,
    }
}

// ---------------------------------------------------------------------------
// LC file format
// ---------------------------------------------------------------------------

/// Parses the `lc v1` format: sides, alphabets, then `edge u v : π…` lines.
pub fn parse_label_cover(text: &str) -> Result<LabelCover, ReduceError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let mut expect = |what: &str| {
        lines.next().ok_or_else(|| ReduceError::Parse {
            line: 0,
            msg: format!("missing {what}"),
        })
    };
    let (ln, header) = expect("header")?;
    if header != "lc v1" {
        return Err(ReduceError::Parse {
            line: ln,
            msg: "expected `lc v1`".into(),
        });
    }
    let parse_pair =
        |line: usize, text: &str, prefix: &str| -> Result<(usize, usize), ReduceError> {
            let rest = text
                .strip_prefix(prefix)
                .ok_or_else(|| ReduceError::Parse {
                    line,
                    msg: format!("expected `{prefix} <a> <b>`"),
                })?;
            let nums: Vec<usize> = rest
                .split_whitespace()
                .map(|t| t.parse())
                .collect::<Result<_, _>>()
                .map_err(|_| ReduceError::Parse {
                    line,
                    msg: "expected two integers".into(),
                })?;
            if nums.len() != 2 {
                return Err(ReduceError::Parse {
                    line,
                    msg: "expected two integers".into(),
                });
            }
            Ok((nums[0], nums[1]))
        };
    let (ln, sides_line) = expect("sides line")?;
    let (u_size, v_size) = parse_pair(ln, sides_line, "sides")?;
    let (ln, alpha_line) = expect("alphabets line")?;
    let (l, r) = parse_pair(ln, alpha_line, "alphabets")?;
    let mut edges = vec![];
    for (ln, line) in lines {
        let rest = line
            .strip_prefix("edge")
            .ok_or_else(|| ReduceError::Parse {
                line: ln,
                msg: format!("expected `edge u v : …`, got `{line}`"),
            })?;
        let (head, proj) = rest.split_once(':').ok_or_else(|| ReduceError::Parse {
            line: ln,
            msg: "edge line is missing `:`".into(),
        })?;
        let ends: Vec<usize> = head
            .split_whitespace()
            .map(|t| t.parse())
            .collect::<Result<_, _>>()
            .map_err(|_| ReduceError::Parse {
                line: ln,
                msg: "bad edge endpoints".into(),
            })?;
        if ends.len() != 2 {
            return Err(ReduceError::Parse {
                line: ln,
                msg: "expected `edge u v`".into(),
            });
        }
        let pi: Vec<usize> = proj
            .split_whitespace()
            .map(|t| t.parse())
            .collect::<Result<_, _>>()
            .map_err(|_| ReduceError::Parse {
                line: ln,
                msg: "bad projection values".into(),
            })?;
        edges.push(LcEdge {
            u: ends[0],
            v: ends[1],
            pi,
        });
    }
    let lc = LabelCover {
        u_size,
        v_size,
        l,
        r,
        edges,
    };
    lc.validate()?;
    Ok(lc)
}

pub fn serialize_label_cover(lc: &LabelCover) -> String {
    let mut out = String::from("lc v1\n");
    out.push_str(&format!("sides {} {}\n", lc.u_size, lc.v_size));
    out.push_str(&format!("alphabets {} {}\n", lc.l, lc.r));
    for e in &lc.edges {
        let pi: Vec<String> = e.pi.iter().map(|p| p.to_string()).collect();
        out.push_str(&format!("edge {} {} : {}\n", e.u, e.v, pi.join(" ")));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::load_group;
    use crate::lin::evaluate;
    use crate::rep::irreps_of;

    fn toy(seed: u64) -> (LabelCover, Labeling) {
        let sizes = ToyLcSizes {
            u: 1,
            v: 1,
            l: 1,
            r: 2,
        };
        let (lc, lab) = generate_toy_lc(ToyLcKind::Planted, sizes, seed).unwrap();
        (lc, lab.unwrap())
    }

    #[test]
    fn planted_label_cover_has_value_one() {
        for seed in 0..5 {
            let sizes = ToyLcSizes {
                u: 2,
                v: 3,
                l: 2,
                r: 3,
            };
            let (lc, lab) = generate_toy_lc(ToyLcKind::Planted, sizes, seed).unwrap();
            assert_eq!(lc_value(&lc, &lab.unwrap()).unwrap(), 1.0);
            assert_eq!(lc.edges.len(), 6);
        }
    }

    #[test]
    fn adversarial_labeling_scores_zero() {
        let sizes = ToyLcSizes {
            u: 2,
            v: 3,
            l: 2,
            r: 3,
        };
        let (lc, lab) = generate_toy_lc(ToyLcKind::Planted, sizes, 3).unwrap();
        let lab = lab.unwrap();
        let flipped = Labeling {
            u_labels: lab.u_labels.iter().map(|&l| (l + 1) % lc.l).collect(),
            v_labels: lab.v_labels.clone(),
        };
        assert_eq!(lc_value(&lc, &flipped).unwrap(), 0.0);
    }

    #[test]
    fn uniform_labeling_on_identity_projections_scores_one_over_l() {
        use rand::Rng;
        use rand::SeedableRng;
        // L = R with identity projections on every edge
        let l = 4;
        let lc = LabelCover {
            u_size: 2,
            v_size: 2,
            l,
            r: l,
            edges: (0..4)
                .map(|i| LcEdge {
                    u: i / 2,
                    v: i % 2,
                    pi: (0..l).collect(),
                })
                .collect(),
        };
        lc.validate().unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let draws = 20_000;
        let mut sum = 0.0;
        for _ in 0..draws {
            let lab = Labeling {
                u_labels: (0..2).map(|_| rng.random_range(0..l)).collect(),
                v_labels: (0..2).map(|_| rng.random_range(0..l)).collect(),
            };
            sum += lc_value(&lc, &lab).unwrap();
        }
        let mean = sum / draws as f64;
        assert!((mean - 1.0 / l as f64).abs() < 0.01, "mean {mean}");
    }

    #[test]
    fn seed_determinism_and_surjectivity() {
        let sizes = ToyLcSizes {
            u: 2,
            v: 2,
            l: 2,
            r: 4,
        };
        let (a, _) = generate_toy_lc(ToyLcKind::Random, sizes, 9).unwrap();
        let (b, _) = generate_toy_lc(ToyLcKind::Random, sizes, 9).unwrap();
        assert_eq!(serialize_label_cover(&a), serialize_label_cover(&b));
        assert!(generate_toy_lc(
            ToyLcKind::Planted,
            ToyLcSizes {
                u: 1,
                v: 1,
                l: 3,
                r: 2
            },
            0
        )
        .is_err());
    }

    #[test]
    fn smoothness_statistic_cases() {
        let l = 3;
        let identity_lc = LabelCover {
            u_size: 2,
            v_size: 1,
            l,
            r: l,
            edges: (0..2)
                .map(|u| LcEdge {
                    u,
                    v: 0,
                    pi: (0..l).collect(),
                })
                .collect(),
        };
        let rep = smoothness_stat(&identity_lc, 0, &[0, 1], 0.2).unwrap();
        assert!((rep.stat - 0.5).abs() < 1e-12); // 1/|α|

        let rep = smoothness_stat(&identity_lc, 0, &[2], 0.2).unwrap();
        assert!((rep.stat - 1.0).abs() < 1e-12); // singleton

        // colliding projections: both of {0,1} map to 0
        let collide = LabelCover {
            u_size: 1,
            v_size: 1,
            l: 2,
            r: 3,
            edges: vec![LcEdge {
                u: 0,
                v: 0,
                pi: vec![0, 0, 1],
            }],
        };
        let rep = smoothness_stat(&collide, 0, &[0, 1], 0.2).unwrap();
        assert!((rep.stat - 1.0).abs() < 1e-12);
        assert!(matches!(
            smoothness_stat(&collide, 0, &[], 0.2),
            Err(ReduceError::EmptyAlphaSet)
        ));
    }

    #[test]
    fn full_reduction_counts_for_single_edge() {
        let g = load_group("S3").unwrap();
        let (lc, _) = toy(1);
        let red = reduce(&lc, &g, ReduceMode::Full, 0).unwrap();
        assert_eq!(red.instance.num_constraints(), 216); // 6^{R+L} = 6³
        assert_eq!(red.num_vars(), 7); // 6^{L-1} + 6^{R-1}
        assert_eq!(red.instance.num_vars, 7);
        assert!(red.instance.constraints.iter().all(|c| c.arity() == 3));
        let w = red.instance.constraints[0].weight;
        assert!(red
            .instance
            .constraints
            .iter()
            .all(|c| (c.weight - w).abs() < 1e-15));
        let total: f64 = red.instance.constraints.iter().map(|c| c.weight).sum();
        assert!((total - 1.0).abs() < 1e-9);
    }

    #[test]
    fn longcode_assignment_is_perfect_on_planted_instances() {
        let g = load_group("S3").unwrap();
        for seed in 0..3 {
            let sizes = ToyLcSizes {
                u: 2,
                v: 2,
                l: 1,
                r: 2,
            };
            let (lc, lab) = generate_toy_lc(ToyLcKind::Planted, sizes, seed).unwrap();
            let lab = lab.unwrap();
            let red = reduce(&lc, &g, ReduceMode::Full, 0).unwrap();
            let assignment = longcode_assignment(&lc, &lab, &red).unwrap();
            let value = evaluate(&red.instance, &assignment).unwrap();
            assert!((value - 1.0).abs() < 1e-12, "seed {seed}: value {value}");
        }
    }

    #[test]
    fn violating_one_edge_costs_the_expected_fraction() {
        let g = load_group("S3").unwrap();
        // 2 u-nodes, 1 v-node, L=R=2 so u-labels can be flipped independently
        let sizes = ToyLcSizes {
            u: 2,
            v: 1,
            l: 2,
            r: 2,
        };
        let (lc, lab) = generate_toy_lc(ToyLcKind::Planted, sizes, 4).unwrap();
        let mut lab = lab.unwrap();
        lab.u_labels[0] = 1 - lab.u_labels[0]; // breaks exactly the edges at u=0
        let broken = lc
            .edges
            .iter()
            .filter(|e| e.pi[lab.v_labels[e.v]] != lab.u_labels[e.u])
            .count();
        assert_eq!(broken, 1);
        let red = reduce(&lc, &g, ReduceMode::Full, 0).unwrap();
        let assignment = longcode_assignment(&lc, &lab, &red).unwrap();
        let value = evaluate(&red.instance, &assignment).unwrap();
        let e_count = lc.edges.len() as f64;
        let expected = 1.0 - (1.0 / e_count) * (1.0 - 1.0 / 6.0);
        assert!(
            (value - expected).abs() < 1e-12,
            "value {value}, expected {expected}"
        );
    }

    #[test]
    fn reduced_evaluation_matches_direct_test_on_folded_tables() {
        use crate::dictatorship::make_random_folded;
        let g = load_group("S3").unwrap();
        let (lc, _) = toy(2);
        let red = reduce(&lc, &g, ReduceMode::Full, 0).unwrap();
        let fu = make_random_folded(lc.l, &g, 31).unwrap();
        let fv = make_random_folded(lc.r, &g, 32).unwrap();
        // assignment = tables restricted to orbit representatives
        let mut assignment = vec![0; red.num_vars()];
        for (pos, &rep) in red.reps_l.iter().enumerate() {
            assignment[red.var_for_u(0, pos)] = fu.values[rep];
        }
        for (pos, &rep) in red.reps_r.iter().enumerate() {
            assignment[red.var_for_v(0, pos)] = fv.values[rep];
        }
        let via_instance = evaluate(&red.instance, &assignment).unwrap();
        // direct enumeration of the reduction test over (a, b)
        let ord = g.order();
        let mut hits = 0usize;
        let mut total = 0usize;
        let e = &lc.edges[0];
        for a_idx in 0..ord.pow(lc.r as u32) {
            let a = index_to_tuple(a_idx, ord, lc.r);
            for b_idx in 0..ord.pow(lc.l as u32) {
                let b = index_to_tuple(b_idx, ord, lc.l);
                let c: Vec<ElemId> = (0..lc.r)
                    .map(|i| g.mul(g.inv(b[e.pi[i]]), g.inv(a[i])))
                    .collect();
                let fa = fv.values[a_idx];
                let fb = fu.values[b_idx];
                let fc = fv.values[tuple_to_index(&c, ord)];
                total += 1;
                if g.word(&[fa, fb, fc]) == 0 {
                    hits += 1;
                }
            }
        }
        let direct = hits as f64 / total as f64;
        assert!(
            (via_instance - direct).abs() < 1e-12,
            "instance {via_instance} vs direct {direct}"
        );
    }

    #[test]
    fn sampled_mode_produces_requested_constraints() {
        let g = load_group("S3").unwrap();
        let (lc, _) = toy(5);
        let red = reduce(&lc, &g, ReduceMode::Sampled { samples: 500 }, 7).unwrap();
        assert_eq!(red.instance.num_constraints(), 500);
        let red2 = reduce(&lc, &g, ReduceMode::Sampled { samples: 500 }, 7).unwrap();
        assert_eq!(
            crate::lin::serialize_instance(&red.instance),
            crate::lin::serialize_instance(&red2.instance)
        );
    }

    #[test]
    fn decode_recovers_planted_labels_from_longcode_tables() {
        let g = load_group("S3").unwrap();
        let set = irreps_of(&g).unwrap();
        let std_id = set.irreps.iter().find(|r| r.dim == 2).unwrap().id;
        let sizes = ToyLcSizes {
            u: 1,
            v: 2,
            l: 2,
            r: 2,
        };
        let (lc, lab) = generate_toy_lc(ToyLcKind::Planted, sizes, 6).unwrap();
        let lab = lab.unwrap();
        let red = reduce(&lc, &g, ReduceMode::Full, 0).unwrap();
        let dictator = |n: usize, coord: usize| {
            let points = g.order().pow(n as u32);
            let values: Vec<ElemId> = (0..points)
                .map(|idx| index_to_tuple(idx, g.order(), n)[coord])
                .collect();
            GroupTable::new(g.clone(), n, values, true).unwrap()
        };
        let u_tables: Vec<GroupTable> = (0..lc.u_size)
            .map(|u| dictator(lc.l, lab.u_labels[u]))
            .collect();
        let v_tables: Vec<GroupTable> = (0..lc.v_size)
            .map(|v| dictator(lc.r, lab.v_labels[v]))
            .collect();
        let report =
            fourier_decode(&red, &u_tables, &v_tables, std_id, &set, (0, 0, 0), 13, 400).unwrap();
        // decoded labels are the planted ones whenever they are not ⊥
        for t in &report.trials {
            for (u, lu) in t.u_labels.iter().enumerate() {
                if let Some(lu) = lu {
                    assert_eq!(*lu, lab.u_labels[u]);
                }
            }
            for (v, lv) in t.v_labels.iter().enumerate() {
                if let Some(lv) = lv {
                    assert_eq!(*lv, lab.v_labels[v]);
                }
            }
        }
        assert_eq!(report.best_lc_value, Some(1.0));
        // the long-code mass at the planted tuple is exactly 1/dim
        for m in &report.node_mass {
            assert!((m - 0.5).abs() < 1e-9, "node mass {m}");
        }
        assert!((report.bottom_rate - 0.5).abs() < 0.1);
    }

    #[test]
    fn decode_mass_is_parseval_bounded_on_random_tables() {
        use crate::dictatorship::make_random_folded;
        let g = load_group("S3").unwrap();
        let set = irreps_of(&g).unwrap();
        let std_id = set.irreps.iter().find(|r| r.dim == 2).unwrap().id;
        let (lc, _) = toy(8);
        let red = reduce(&lc, &g, ReduceMode::Full, 0).unwrap();
        let u_tables = vec![make_random_folded(lc.l, &g, 41).unwrap()];
        let v_tables = vec![make_random_folded(lc.r, &g, 42).unwrap()];
        let report =
            fourier_decode(&red, &u_tables, &v_tables, std_id, &set, (0, 1, 1), 3, 100).unwrap();
        for m in &report.node_mass {
            assert!(*m <= 1.0 + 1e-9);
        }
        // unfolded tables are rejected
        let unfolded = vec![GroupTable::new(g.clone(), lc.l, vec![2; 6], false).unwrap()];
        assert!(matches!(
            fourier_decode(&red, &unfolded, &v_tables, std_id, &set, (0, 0, 0), 3, 10),
            Err(ReduceError::NotFolded)
        ));
    }

    #[test]
    fn soundness_params_scale_as_expected() {
        let p = soundness_params(0.1, 6, 0.2);
        // C^{-d0/2} ≤ δ²/(12|G|⁶) rearranged
        let rhs_log10 = 2.0 * 0.1f64.log10() - 12f64.log10() - 6.0 * 6f64.log10();
        assert!(-p.c_log10 * 0.1 <= rhs_log10 + 1e-9);
        assert!(p.lc_soundness_log10 < -1e9); // astronomically small
        let tighter = soundness_params(0.01, 6, 0.2);
        assert!(tighter.c_log10 > p.c_log10);
    }

    #[test]
    fn lc_file_round_trip() {
        let sizes = ToyLcSizes {
            u: 2,
            v: 2,
            l: 2,
            r: 3,
        };
        let (lc, _) = generate_toy_lc(ToyLcKind::Planted, sizes, 11).unwrap();
        let text = serialize_label_cover(&lc);
        let back = parse_label_cover(&text).unwrap();
        assert_eq!(serialize_label_cover(&back), text);

        let bad = "lc v1\nsides 1 1\nalphabets 2 2\nedge 0 0 : 0 0\n";
        assert!(matches!(
            parse_label_cover(bad),
            Err(ReduceError::NotSurjective(0))
        ));
    }
}
