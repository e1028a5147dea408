//! Complete unitary irreducible representations of the catalog groups.
//!
//! One-dimensional irreps come from the abelianization (every multiplicative
//! character of G/[G,G] lifts along the projection). Higher-dimensional
//! irreps are built from permutation actions (sum-zero complement of the
//! natural action) or from hand-specified generator images extended by BFS
//! word products over the Cayley graph, and every set is validated against
//! the full invariant suite: dimension sum, orthogonality of characters and
//! matrix entries, vanishing sums, and the homomorphism property.

use std::f64::consts::PI;

use ndarray::linalg::kron;
use ndarray::Array2;
use num_complex::Complex64;
use thiserror::Error;

use crate::cmat::{identity, max_abs, max_abs_diff, trace, unitarity_residual};
use crate::group::{
    abelian_decomposition, commutator_subgroup, conjugacy_classes, quotient, ElemId, FiniteGroup,
    GroupError, Recipe,
};

/// Tolerance for algebraic identities (orthogonality, homomorphism,
/// unitarity residuals).
pub const ALGEBRA_TOL: f64 = 1e-9;
/// Tolerance when rounding character inner products to integer
/// multiplicities.
pub const INTEGRALITY_TOL: f64 = 1e-6;

#[derive(Debug, Error)]
pub enum RepError {
    #[error(
        "irreducible representations unsupported for `{0}` (not in catalog, no generator images)"
    )]
    Unsupported(String),
    #[error("representation invariant failure: {0}")]
    InvariantFailure(String),
    #[error("non-integer multiplicity {0} in tensor decomposition")]
    NonIntegerMultiplicity(f64),
    #[error("no conjugate partner found for 1-dimensional irrep {0}")]
    NoPartner(usize),
    #[error("tensor product has dimension 1; multiplicity bound hypothesis violated")]
    HypothesisViolated,
    #[error("projection map is not surjective onto the smaller alphabet")]
    NotSurjective,
    #[error("generator images do not generate the group")]
    GeneratorsDontGenerate,
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// A unitary irreducible representation given by one matrix per element.
#[derive(Debug, Clone)]
pub struct Irrep {
    pub id: usize,
    pub dim: usize,
    pub matrices: Vec<Array2<Complex64>>,
    pub is_trivial: bool,
}

impl Irrep {
    pub fn mat(&self, e: ElemId) -> &Array2<Complex64> {
        &self.matrices[e]
    }

    /// The character: trace of the representing matrix per element.
    pub fn character(&self) -> Character {
        Character {
            values: self.matrices.iter().map(trace).collect(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Character {
    pub values: Vec<Complex64>,
}

impl Character {
    /// Hermitian inner product (1/|G|) Σ_g χ₁(g) conj(χ₂(g)).
    pub fn inner(&self, other: &Character) -> Complex64 {
        let n = self.values.len() as f64;
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a * b.conj())
            .sum::<Complex64>()
            / n
    }

    /// Pointwise product, the character of the tensor product.
    pub fn pointwise_mul(&self, other: &Character) -> Character {
        Character {
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a * b)
                .collect(),
        }
    }
}

/// The complete list of irreps of a group, trivial first.
#[derive(Debug, Clone)]
pub struct IrrepSet {
    pub group: FiniteGroup,
    pub irreps: Vec<Irrep>,
    /// Smallest dimension of a non-trivial irrep (1 for every group with a
    /// proper commutator subgroup; 3 for A5).
    pub min_nontrivial_dim: usize,
}

impl IrrepSet {
    pub fn len(&self) -> usize {
        self.irreps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.irreps.is_empty()
    }

    pub fn dims(&self) -> Vec<usize> {
        self.irreps.iter().map(|r| r.dim).collect()
    }

    pub fn one_dim_count(&self) -> usize {
        self.irreps.iter().filter(|r| r.dim == 1).count()
    }

    /// Runs the whole invariant suite; any residual above tolerance is an
    /// error naming the failed identity.
    pub fn validate(&self) -> Result<(), RepError> {
        let g = &self.group;
        let n = g.order();
        let fail = |msg: String| Err(RepError::InvariantFailure(msg));

        if self.irreps.is_empty() || !self.irreps[0].is_trivial {
            return fail("irrep 0 must be the trivial representation".into());
        }
        let dim_sq: usize = self.irreps.iter().map(|r| r.dim * r.dim).sum();
        if dim_sq != n {
            return fail(format!("Σ dim² = {dim_sq} ≠ |G| = {n}"));
        }
        let classes = conjugacy_classes(g);
        if self.irreps.len() != classes.len() {
            return fail(format!(
                "irrep count {} ≠ class count {}",
                self.irreps.len(),
                classes.len()
            ));
        }
        for r in &self.irreps {
            if r.matrices.len() != n {
                return fail(format!("irrep {} has wrong matrix count", r.id));
            }
            if max_abs_diff(r.mat(0), &identity(r.dim)) > ALGEBRA_TOL {
                return fail(format!("irrep {}: ρ(1) ≠ I", r.id));
            }
            for e in 0..n {
                if unitarity_residual(r.mat(e)) > ALGEBRA_TOL {
                    return fail(format!("irrep {}: ρ({e}) not unitary", r.id));
                }
            }
            for a in 0..n {
                for b in 0..n {
                    let prod = r.mat(a).dot(r.mat(b));
                    if max_abs_diff(&prod, r.mat(g.mul(a, b))) > ALGEBRA_TOL {
                        return fail(format!("irrep {}: ρ({a})ρ({b}) ≠ ρ({a}⊙{b})", r.id));
                    }
                }
            }
        }
        let chars: Vec<Character> = self.irreps.iter().map(|r| r.character()).collect();
        for (i, ci) in chars.iter().enumerate() {
            // class function
            for class in &classes {
                let v = ci.values[class[0]];
                for &e in class {
                    if (ci.values[e] - v).norm() > ALGEBRA_TOL {
                        return fail(format!("irrep {i}: character not a class function"));
                    }
                }
            }
            for (j, cj) in chars.iter().enumerate() {
                let inner = ci.inner(cj);
                let expected = if i == j { 1.0 } else { 0.0 };
                let tol = if i == j { INTEGRALITY_TOL } else { ALGEBRA_TOL };
                if (inner - Complex64::new(expected, 0.0)).norm() > tol {
                    return fail(format!(
                        "character orthogonality fails for irreps ({i},{j}): got {inner}"
                    ));
                }
            }
        }
        // Σ_g ρ(g) = 0 for non-trivial ρ
        for r in self.irreps.iter().filter(|r| !r.is_trivial) {
            let mut sum = Array2::<Complex64>::zeros((r.dim, r.dim));
            for e in 0..n {
                sum += r.mat(e);
            }
            if max_abs(&sum) > ALGEBRA_TOL * n as f64 {
                return fail(format!("irrep {}: Σ_g ρ(g) ≠ 0", r.id));
            }
        }
        self.check_entry_orthogonality()?;
        Ok(())
    }

    /// Orthogonality of matrix entries under the symmetric bilinear form
    /// ⟨f₁|f₂⟩ = (1/|G|) Σ_g f₁(g) f₂(g⁻¹).
    fn check_entry_orthogonality(&self) -> Result<(), RepError> {
        let g = &self.group;
        let n = g.order() as f64;
        for r1 in &self.irreps {
            for r2 in &self.irreps {
                for i in 0..r1.dim {
                    for j in 0..r1.dim {
                        for k in 0..r2.dim {
                            for l in 0..r2.dim {
                                let mut v = Complex64::new(0.0, 0.0);
                                for e in 0..g.order() {
                                    v += r1.mat(e)[[i, j]] * r2.mat(g.inv(e))[[k, l]];
                                }
                                v /= n;
                                let expected = if r1.id == r2.id && i == l && j == k {
                                    Complex64::new(1.0 / r1.dim as f64, 0.0)
                                } else {
                                    Complex64::new(0.0, 0.0)
                                };
                                if (v - expected).norm() > ALGEBRA_TOL {
                                    return Err(RepError::InvariantFailure(format!(
                                        "matrix-entry orthogonality fails: irreps ({},{}) entries ({i}{j},{k}{l})",
                                        r1.id, r2.id
                                    )));
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Construction machinery
// ---------------------------------------------------------------------------

fn cx(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// All 1-dimensional irreps: the characters of G/[G,G] lifted along the
/// projection. The trivial character comes first.
fn one_dim_matrices(g: &FiniteGroup) -> Result<Vec<Vec<Array2<Complex64>>>, RepError> {
    let comm = commutator_subgroup(g);
    let q = quotient(g, &comm)?;
    let dec = abelian_decomposition(&q.table)?;
    let m = dec.factors.len();
    let mut out = vec![];
    let mut k = vec![0usize; m];
    loop {
        let mut mats = Vec::with_capacity(g.order());
        for e in 0..g.order() {
            let coords = &dec.coords[q.project(e)];
            let phase: f64 = (0..m)
                .map(|j| 2.0 * PI * (k[j] * coords[j]) as f64 / dec.factors[j] as f64)
                .sum();
            mats.push(Array2::from_elem((1, 1), cx(phase.cos(), phase.sin())));
        }
        out.push(mats);
        let mut j = m;
        loop {
            if j == 0 {
                return Ok(out);
            }
            j -= 1;
            k[j] += 1;
            if k[j] < dec.factors[j] {
                break;
            }
            k[j] = 0;
        }
    }
}

/// Orthonormal basis of the sum-zero subspace of R^m (the complement of the
/// all-ones vector), as an m×(m−1) matrix of columns.
fn sum_zero_basis(m: usize) -> Array2<f64> {
    let mut b = Array2::<f64>::zeros((m, m - 1));
    for k in 1..m {
        let norm = ((k * (k + 1)) as f64).sqrt();
        for i in 0..k {
            b[[i, k - 1]] = 1.0 / norm;
        }
        b[[k, k - 1]] = -(k as f64) / norm;
    }
    b
}

/// The (m−1)-dimensional complement of the trivial part of a permutation
/// action: ρ(g) = Bᵀ P_g B with B the sum-zero basis. Irreducible whenever
/// the action is 2-transitive; the invariant suite verifies this.
fn perm_complement(actions: &[Vec<usize>]) -> Vec<Array2<Complex64>> {
    let m = actions[0].len();
    let b = sum_zero_basis(m);
    actions
        .iter()
        .map(|p| {
            // (P_g B)[i][c] = B[g^{-1}(i)][c]; build P_g B directly
            let mut pb = Array2::<f64>::zeros((m, m - 1));
            for (i, &gi) in p.iter().enumerate() {
                for c in 0..m - 1 {
                    pb[[gi, c]] = b[[i, c]];
                }
            }
            let rho = b.t().dot(&pb);
            rho.mapv(|x| cx(x, 0.0))
        })
        .collect()
}

/// Extends generator images to the whole group by BFS word products along
/// the Cayley graph. Well-definedness is established downstream by the
/// homomorphism invariant.
pub fn rep_from_generator_images(
    g: &FiniteGroup,
    gens: &[ElemId],
    images: &[Array2<Complex64>],
) -> Result<Vec<Array2<Complex64>>, RepError> {
    assert_eq!(gens.len(), images.len());
    let d = images.first().map_or(1, |m| m.nrows());
    let mut mats: Vec<Option<Array2<Complex64>>> = vec![None; g.order()];
    mats[0] = Some(identity(d));
    let mut queue = vec![0];
    let mut head = 0;
    while head < queue.len() {
        let x = queue[head];
        head += 1;
        for (&s, img) in gens.iter().zip(images) {
            let y = g.mul(x, s);
            if mats[y].is_none() {
                let mx = mats[x].as_ref().unwrap();
                mats[y] = Some(mx.dot(img));
                queue.push(y);
            }
        }
    }
    mats.into_iter()
        .collect::<Option<Vec<_>>>()
        .ok_or(RepError::GeneratorsDontGenerate)
}

/// Multiplies a representation pointwise by a 1-dimensional character.
fn twist(mats: &[Array2<Complex64>], character: &[Complex64]) -> Vec<Array2<Complex64>> {
    mats.iter()
        .zip(character)
        .map(|(m, &c)| m.mapv(|z| z * c))
        .collect()
}

// --- permutation bookkeeping for the S/A catalog groups -------------------

fn all_perms_sorted(n: usize) -> Vec<Vec<usize>> {
    fn rec(rest: &mut Vec<usize>, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest.is_empty() {
            out.push(cur.clone());
            return;
        }
        for i in 0..rest.len() {
            let v = rest.remove(i);
            cur.push(v);
            rec(rest, cur, out);
            cur.pop();
            rest.insert(i, v);
        }
    }
    let mut out = vec![];
    rec(&mut (0..n).collect(), &mut vec![], &mut out);
    out
}

fn perm_is_even(p: &[usize]) -> bool {
    let mut seen = vec![false; p.len()];
    let mut t = 0;
    for s in 0..p.len() {
        if seen[s] {
            continue;
        }
        let mut i = s;
        let mut len = 0;
        while !seen[i] {
            seen[i] = true;
            i = p[i];
            len += 1;
        }
        t += len - 1;
    }
    t % 2 == 0
}

/// The one-line permutations backing an S_n or A_n catalog group, in element
/// id order.
fn perm_elements(recipe: &Recipe) -> Option<Vec<Vec<usize>>> {
    match recipe {
        Recipe::Sym(n) => Some(all_perms_sorted(*n)),
        Recipe::Alt(n) => Some(
            all_perms_sorted(*n)
                .into_iter()
                .filter(|p| perm_is_even(p))
                .collect(),
        ),
        _ => None,
    }
}

/// S4 acts on the three pair-partitions of {0,1,2,3}; partition j pairs 0
/// with j+1.
fn s4_partition_action(perms: &[Vec<usize>]) -> Vec<Vec<usize>> {
    perms
        .iter()
        .map(|p| {
            (0..3)
                .map(|j| {
                    let a = p[0];
                    let b = p[j + 1];
                    // partner of 0 in the image partition {a,b} ∪ rest
                    let partner = if a == 0 {
                        b
                    } else if b == 0 {
                        a
                    } else {
                        // 0 lies in the other pair; its partner is the
                        // remaining element
                        (1..4).find(|&x| x != a && x != b).unwrap()
                    };
                    partner - 1
                })
                .collect()
        })
        .collect()
}

// --- A5: the icosahedral rotation representations --------------------------

#[cfg(feature = "a5-irreps")]
mod icosahedral {
    use super::*;

    type V3 = [f64; 3];

    fn golden() -> f64 {
        (1.0 + 5.0_f64.sqrt()) / 2.0
    }

    fn vertices() -> Vec<V3> {
        let phi = golden();
        let mut vs = vec![];
        for &a in &[1.0, -1.0] {
            for &b in &[phi, -phi] {
                vs.push([0.0, a, b]);
                vs.push([a, b, 0.0]);
                vs.push([b, 0.0, a]);
            }
        }
        vs
    }

    fn sub(a: V3, b: V3) -> V3 {
        [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
    }

    fn norm2(a: V3) -> f64 {
        a.iter().map(|x| x * x).sum()
    }

    fn scale(a: V3, s: f64) -> V3 {
        [a[0] * s, a[1] * s, a[2] * s]
    }

    fn matvec(m: &Array2<f64>, v: V3) -> V3 {
        let mut out = [0.0; 3];
        for i in 0..3 {
            out[i] = (0..3).map(|j| m[[i, j]] * v[j]).sum();
        }
        out
    }

    /// Rotation by `theta` about the unit axis `n` (Rodrigues).
    fn rotation(n: V3, theta: f64) -> Array2<f64> {
        let (s, c) = theta.sin_cos();
        let k = 1.0 - c;
        let (x, y, z) = (n[0], n[1], n[2]);
        ndarray::arr2(&[
            [c + x * x * k, x * y * k - z * s, x * z * k + y * s],
            [y * x * k + z * s, c + y * y * k, y * z * k - x * s],
            [z * x * k - y * s, z * y * k + x * s, c + z * z * k],
        ])
    }

    /// π-rotation about the unit axis `m`: 2mmᵀ − I.
    fn half_turn(m: V3) -> Array2<f64> {
        let mut out = Array2::<f64>::zeros((3, 3));
        for i in 0..3 {
            for j in 0..3 {
                out[[i, j]] = 2.0 * m[i] * m[j] - if i == j { 1.0 } else { 0.0 };
            }
        }
        out
    }

    fn mat_close(a: &Array2<f64>, b: &Array2<f64>, tol: f64) -> bool {
        a.iter().zip(b.iter()).all(|(x, y)| (x - y).abs() < tol)
    }

    /// Generator images (rot_c, rot_t) realizing the pair (5-cycle c,
    /// involution t with (c⊙t)³ = 1) as icosahedral rotations. `turns`
    /// selects rotation by `2π·turns/5` about the vertex axis, which picks
    /// between the two conjugate 3-dimensional representations.
    pub(super) fn generator_rotations(
        turns: usize,
    ) -> Result<(Array2<f64>, Array2<f64>), RepError> {
        let vs = vertices();
        let axis_v = [0.0, 1.0, golden()];
        let axis = scale(axis_v, 1.0 / norm2(axis_v).sqrt());
        let rot_c = rotation(axis, 2.0 * PI * turns as f64 / 5.0);
        // candidate involutions: π-rotations about edge midpoints
        let eye = ndarray::Array2::<f64>::eye(3);
        for i in 0..vs.len() {
            for j in (i + 1)..vs.len() {
                if (norm2(sub(vs[i], vs[j])) - 4.0).abs() > 1e-9 {
                    continue;
                }
                let mid = [
                    (vs[i][0] + vs[j][0]) / 2.0,
                    (vs[i][1] + vs[j][1]) / 2.0,
                    (vs[i][2] + vs[j][2]) / 2.0,
                ];
                let m = scale(mid, 1.0 / norm2(mid).sqrt());
                let rot_t = half_turn(m);
                let ct = rot_c.dot(&rot_t);
                let ct3 = ct.dot(&ct).dot(&ct);
                if mat_close(&ct3, &eye, 1e-9) {
                    return Ok((rot_c, rot_t));
                }
            }
        }
        Err(RepError::InvariantFailure(
            "no icosahedral involution satisfies the (5,2,3) relations".into(),
        ))
    }

    /// Permutation action on the six 5-fold axes induced by a 3-dimensional
    /// rotation representation.
    pub(super) fn axis_action(mats: &[Array2<Complex64>]) -> Result<Vec<Vec<usize>>, RepError> {
        let vs = vertices();
        // pick one representative vertex per antipodal pair
        let mut axes: Vec<V3> = vec![];
        for &v in &vs {
            if !axes
                .iter()
                .any(|&a| norm2(sub(a, v)) < 1e-9 || norm2(sub(a, scale(v, -1.0))) < 1e-9)
            {
                axes.push(v);
            }
        }
        if axes.len() != 6 {
            return Err(RepError::InvariantFailure("expected 6 axes".into()));
        }
        let mut actions = Vec::with_capacity(mats.len());
        for m in mats {
            let mr = m.mapv(|z| z.re);
            let mut perm = vec![usize::MAX; 6];
            for (k, &a) in axes.iter().enumerate() {
                let img = matvec(&mr, a);
                let pos = axes.iter().position(|&b| {
                    norm2(sub(b, img)) < 1e-6 || norm2(sub(b, scale(img, -1.0))) < 1e-6
                });
                perm[k] = pos.ok_or_else(|| {
                    RepError::InvariantFailure("rotation does not permute the axes".into())
                })?;
            }
            actions.push(perm);
        }
        Ok(actions)
    }
}

// ---------------------------------------------------------------------------
// irreps_of
// ---------------------------------------------------------------------------

/// Builds the complete irrep set of a catalog group and validates it.
///
/// Abelian groups (from any source) get their characters from the abelian
/// decomposition. Non-abelian groups outside the catalog are unsupported;
/// use [`rep_from_generator_images`] and assemble a set manually for those.
pub fn irreps_of(g: &FiniteGroup) -> Result<IrrepSet, RepError> {
    let raw: Vec<Vec<Array2<Complex64>>> = match &g.recipe {
        Recipe::Product(g1, g2) => {
            let s1 = irreps_of(g1)?;
            let s2 = irreps_of(g2)?;
            let n2 = g2.order();
            let mut out = vec![];
            for r1 in &s1.irreps {
                for r2 in &s2.irreps {
                    let mats = (0..g.order())
                        .map(|e| kron(r1.mat(e / n2), r2.mat(e % n2)))
                        .collect();
                    out.push(mats);
                }
            }
            out
        }
        _ if g.is_abelian() => one_dim_matrices(g)?,
        Recipe::Sym(3) => {
            let perms = perm_elements(&g.recipe).unwrap();
            let mut out = one_dim_matrices(g)?;
            out.push(perm_complement(&perms));
            out
        }
        Recipe::Sym(4) => {
            let perms = perm_elements(&g.recipe).unwrap();
            let mut out = one_dim_matrices(g)?;
            let sign: Vec<Complex64> = out[1].iter().map(|m| m[[0, 0]]).collect();
            let std3 = perm_complement(&perms);
            out.push(perm_complement(&s4_partition_action(&perms)));
            out.push(std3.clone());
            out.push(twist(&std3, &sign));
            out
        }
        Recipe::Alt(4) => {
            let perms = perm_elements(&g.recipe).unwrap();
            let mut out = one_dim_matrices(g)?;
            out.push(perm_complement(&perms));
            out
        }
        #[cfg(feature = "a5-irreps")]
        Recipe::Alt(5) => {
            let perms = perm_elements(&g.recipe).unwrap();
            let mut out = one_dim_matrices(g)?;
            // the (5,2,3) generating pair on the permutation side
            let five_cycle = vec![1usize, 2, 3, 4, 0];
            let c_id = perms
                .iter()
                .position(|p| *p == five_cycle)
                .ok_or_else(|| RepError::InvariantFailure("5-cycle not found in A5".into()))?;
            let t_id = (0..g.order())
                .find(|&t| g.element_order(t) == 2 && g.element_order(g.mul(c_id, t)) == 3)
                .ok_or_else(|| {
                    RepError::InvariantFailure("no involution completes the (5,2,3) pair".into())
                })?;
            for turns in [1, 2] {
                let (rc, rt) = icosahedral::generator_rotations(turns)?;
                let images = [rc.mapv(|x| cx(x, 0.0)), rt.mapv(|x| cx(x, 0.0))];
                out.push(rep_from_generator_images(g, &[c_id, t_id], &images)?);
            }
            out.push(perm_complement(&perms));
            let axes = icosahedral::axis_action(&out[1])?;
            out.push(perm_complement(&axes));
            out
        }
        #[cfg(not(feature = "a5-irreps"))]
        Recipe::Alt(5) => {
            return Err(RepError::Unsupported(
                "A5 (enable the `a5-irreps` feature)".into(),
            ))
        }
        Recipe::Dihedral4 => {
            let mut out = one_dim_matrices(g)?;
            // r (id 1) ↦ quarter turn, s (id 4) ↦ reflection
            let r_img =
                ndarray::arr2(&[[cx(0.0, 0.0), cx(-1.0, 0.0)], [cx(1.0, 0.0), cx(0.0, 0.0)]]);
            let s_img =
                ndarray::arr2(&[[cx(1.0, 0.0), cx(0.0, 0.0)], [cx(0.0, 0.0), cx(-1.0, 0.0)]]);
            out.push(rep_from_generator_images(g, &[1, 4], &[r_img, s_img])?);
            out
        }
        Recipe::Quaternion8 => {
            let mut out = one_dim_matrices(g)?;
            // i (id 2) and j (id 4) as the standard 2×2 quaternion units
            let i_img =
                ndarray::arr2(&[[cx(0.0, 1.0), cx(0.0, 0.0)], [cx(0.0, 0.0), cx(0.0, -1.0)]]);
            let j_img =
                ndarray::arr2(&[[cx(0.0, 0.0), cx(1.0, 0.0)], [cx(-1.0, 0.0), cx(0.0, 0.0)]]);
            out.push(rep_from_generator_images(g, &[2, 4], &[i_img, j_img])?);
            out
        }
        _ => return Err(RepError::Unsupported(g.name.clone())),
    };
    assemble_irrep_set(g, raw)
}

/// Assembles matrices-per-element lists into a validated [`IrrepSet`]; the
/// entry point for caller-supplied representations (for instance from
/// [`rep_from_generator_images`]) of groups outside the catalog.
pub fn assemble_irrep_set(
    g: &FiniteGroup,
    raw: Vec<Vec<Array2<Complex64>>>,
) -> Result<IrrepSet, RepError> {
    let irreps: Vec<Irrep> = raw
        .into_iter()
        .enumerate()
        .map(|(id, matrices)| {
            let dim = matrices[0].nrows();
            let is_trivial = dim == 1
                && matrices
                    .iter()
                    .all(|m| (m[[0, 0]] - cx(1.0, 0.0)).norm() < ALGEBRA_TOL);
            Irrep {
                id,
                dim,
                matrices,
                is_trivial,
            }
        })
        .collect();
    let min_nontrivial_dim = irreps
        .iter()
        .filter(|r| !r.is_trivial)
        .map(|r| r.dim)
        .min()
        .unwrap_or(1);
    let set = IrrepSet {
        group: g.clone(),
        irreps,
        min_nontrivial_dim,
    };
    set.validate()?;
    Ok(set)
}

// ---------------------------------------------------------------------------
// Tensor decomposition and the multiplicity bound
// ---------------------------------------------------------------------------

/// Decomposition of a tensor product of irreps into irreducible components
/// with multiplicities.
#[derive(Debug, Clone)]
pub struct TensorDecomposition {
    pub factors: Vec<usize>,
    /// (irrep id, multiplicity ≥ 1), ascending by id.
    pub parts: Vec<(usize, usize)>,
    pub tensor_dim: usize,
}

/// Multiplicities via character inner products: n_m = ⟨Πχ_f, χ_m⟩.
pub fn tensor_decompose(
    set: &IrrepSet,
    factors: &[usize],
) -> Result<TensorDecomposition, RepError> {
    assert!(!factors.is_empty(), "factor list must be nonempty");
    let chars: Vec<Character> = set.irreps.iter().map(|r| r.character()).collect();
    let mut tensor_char = Character {
        values: vec![cx(1.0, 0.0); set.group.order()],
    };
    let mut tensor_dim = 1;
    for &f in factors {
        tensor_char = tensor_char.pointwise_mul(&chars[f]);
        tensor_dim *= set.irreps[f].dim;
    }
    let mut parts = vec![];
    let mut total = 0;
    for (m, cm) in chars.iter().enumerate() {
        let inner = tensor_char.inner(cm);
        let n = inner.re.round();
        if (inner - cx(n, 0.0)).norm() > INTEGRALITY_TOL {
            return Err(RepError::NonIntegerMultiplicity(inner.re));
        }
        let n = n as i64;
        if n < 0 {
            return Err(RepError::NonIntegerMultiplicity(inner.re));
        }
        if n > 0 {
            parts.push((m, n as usize));
            total += n as usize * set.irreps[m].dim;
        }
    }
    if total != tensor_dim {
        return Err(RepError::InvariantFailure(format!(
            "tensor dimensions unbalanced: Σ n·dim = {total} ≠ {tensor_dim}"
        )));
    }
    Ok(TensorDecomposition {
        factors: factors.to_vec(),
        parts,
        tensor_dim,
    })
}

#[derive(Debug, Clone)]
pub struct MultiplicityReport {
    pub max_mult: usize,
    pub bound: f64,
    pub ok: bool,
}

/// Checks that no irreducible component of ⊗factors has multiplicity above
/// (1 − 1/|G|)·dim(⊗factors). Requires the tensor dimension to be ≥ 2.
pub fn check_multiplicity_bound(
    set: &IrrepSet,
    factors: &[usize],
) -> Result<MultiplicityReport, RepError> {
    let dec = tensor_decompose(set, factors)?;
    if dec.tensor_dim < 2 {
        return Err(RepError::HypothesisViolated);
    }
    let max_mult = dec.parts.iter().map(|&(_, n)| n).max().unwrap_or(0);
    let bound = (1.0 - 1.0 / set.group.order() as f64) * dec.tensor_dim as f64;
    Ok(MultiplicityReport {
        max_mult,
        bound,
        ok: (max_mult as f64) <= bound,
    })
}

/// Pairs every 1-dimensional irrep with its complex conjugate; the pairing
/// is an involution on the 1-dimensional ids.
pub fn dim1_pairing(set: &IrrepSet) -> Result<Vec<(usize, usize)>, RepError> {
    let one_dims: Vec<&Irrep> = set.irreps.iter().filter(|r| r.dim == 1).collect();
    let mut pairs = vec![];
    for r in &one_dims {
        let chi = r.character();
        let partner = one_dims.iter().find(|s| {
            let chis = s.character();
            chi.values
                .iter()
                .zip(&chis.values)
                .all(|(a, b)| (a - b.conj()).norm() <= ALGEBRA_TOL)
        });
        match partner {
            Some(p) => pairs.push((r.id, p.id)),
            None => return Err(RepError::NoPartner(r.id)),
        }
    }
    for &(a, b) in &pairs {
        let back = pairs
            .iter()
            .find(|&&(x, _)| x == b)
            .map(|&(_, y)| y)
            .ok_or(RepError::NoPartner(b))?;
        if back != a {
            return Err(RepError::InvariantFailure(
                "conjugate pairing is not an involution".into(),
            ));
        }
    }
    Ok(pairs)
}

// ---------------------------------------------------------------------------
// Restriction through a projection
// ---------------------------------------------------------------------------

/// Outcome of decomposing an irrep of G^R over the projected subgroup
/// {x∘π | x ∈ G^L} ≅ G^L.
#[derive(Debug, Clone)]
pub struct RestrictionReport {
    /// dim(B_ℓ) per coordinate of [L], where B_ℓ = ⊗_{j ∈ π⁻¹(ℓ)} α_j.
    pub block_dims: Vec<usize>,
    /// (β tuple over G^L, multiplicity), every multiplicity ≥ 1.
    pub parts: Vec<(Vec<usize>, usize)>,
    pub alpha_dim: usize,
    /// Whether #{ℓ : dim(B_ℓ) ≥ 2} ≥ c.
    pub hypothesis_met: bool,
    /// The dichotomy: hypothesis implies every part has dim(β) ≥ c or
    /// n ≤ eps0²·dim(α).
    pub dichotomy_ok: bool,
}

/// Decomposes α = ⊗_{j∈[R]} ρ_j over the subgroup of G^R picked out by a
/// surjection π : [R] → [L], blockwise per fiber, and evaluates the
/// large-dimension-or-small-multiplicity dichotomy for parameters (c, eps0).
pub fn restrict_through_projection(
    set: &IrrepSet,
    alpha: &[usize],
    pi: &[usize],
    l: usize,
    c: usize,
    eps0: f64,
) -> Result<RestrictionReport, RepError> {
    let mut covered = vec![false; l];
    for &p in pi {
        if p >= l {
            return Err(RepError::NotSurjective);
        }
        covered[p] = true;
    }
    if !covered.iter().all(|&b| b) {
        return Err(RepError::NotSurjective);
    }
    assert_eq!(alpha.len(), pi.len());

    let num_irreps = set.irreps.len();
    let mut block_dims = vec![0usize; l];
    // per block, multiplicity of each irrep of G in its decomposition
    let mut block_mults: Vec<Vec<usize>> = Vec::with_capacity(l);
    for ell in 0..l {
        let fiber: Vec<usize> = (0..pi.len())
            .filter(|&j| pi[j] == ell)
            .map(|j| alpha[j])
            .collect();
        let dec = tensor_decompose(set, &fiber)?;
        block_dims[ell] = dec.tensor_dim;
        let mut mults = vec![0usize; num_irreps];
        for &(m, n) in &dec.parts {
            mults[m] = n;
        }
        block_mults.push(mults);
    }
    let alpha_dim: usize = block_dims.iter().product();

    // enumerate β tuples with positive multiplicity n_β = Π_ℓ m_ℓ[β_ℓ]
    let mut parts = vec![];
    let mut beta = vec![0usize; l];
    'outer: loop {
        let n: usize = (0..l).map(|ell| block_mults[ell][beta[ell]]).product();
        if n > 0 {
            parts.push((beta.clone(), n));
        }
        let mut j = l;
        loop {
            if j == 0 {
                break 'outer;
            }
            j -= 1;
            beta[j] += 1;
            if beta[j] < num_irreps {
                break;
            }
            beta[j] = 0;
        }
    }

    let big_blocks = block_dims.iter().filter(|&&d| d >= 2).count();
    let hypothesis_met = big_blocks >= c;
    let dichotomy_ok = !hypothesis_met
        || parts.iter().all(|(beta, n)| {
            let beta_dim: usize = beta.iter().map(|&b| set.irreps[b].dim).product();
            beta_dim >= c || (*n as f64) <= eps0 * eps0 * alpha_dim as f64
        });
    Ok(RestrictionReport {
        block_dims,
        parts,
        alpha_dim,
        hypothesis_met,
        dichotomy_ok,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cmat::hs_norm;
    use crate::group::load_group;
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn set_of(name: &str) -> IrrepSet {
        irreps_of(&load_group(name).unwrap()).unwrap()
    }

    #[test]
    fn z4_characters_are_powers_of_i() {
        let set = set_of("Z4");
        assert_eq!(set.dims(), vec![1, 1, 1, 1]);
        for k in 0..4 {
            for e in 0..4usize {
                let expected = Complex64::new(0.0, 1.0).powu((k * e) as u32);
                let got = set.irreps[k].mat(e)[[0, 0]];
                assert!((got - expected).norm() < 1e-9, "χ_{k}({e})");
            }
        }
    }

    #[test]
    fn s3_dims_and_characters() {
        let set = set_of("S3");
        let mut dims = set.dims();
        dims.sort_unstable();
        assert_eq!(dims, vec![1, 1, 2]);
        let g = &set.group;
        let std = set.irreps.iter().find(|r| r.dim == 2).unwrap();
        let chi = std.character();
        assert_eq!(chi.values[0], Complex64::new(2.0, 0.0));
        for e in 1..6 {
            if g.element_order(e) == 2 {
                assert!(chi.values[e].norm() < 1e-9, "χ_std on a transposition");
            }
        }
    }

    #[test]
    fn q8_dims() {
        let set = set_of("Q8");
        let mut dims = set.dims();
        dims.sort_unstable();
        assert_eq!(dims, vec![1, 1, 1, 1, 2]);
    }

    #[test]
    fn s4_and_a4_dims() {
        let mut dims = set_of("S4").dims();
        dims.sort_unstable();
        assert_eq!(dims, vec![1, 1, 2, 3, 3]);

        let mut dims = set_of("A4").dims();
        dims.sort_unstable();
        assert_eq!(dims, vec![1, 1, 1, 3]);
    }

    #[test]
    fn d4_dims() {
        let mut dims = set_of("D4").dims();
        dims.sort_unstable();
        assert_eq!(dims, vec![1, 1, 1, 1, 2]);
    }

    #[test]
    fn product_set_validates() {
        let set = set_of("S3×Z2");
        let mut dims = set.dims();
        dims.sort_unstable();
        assert_eq!(dims, vec![1, 1, 1, 1, 2, 2]);
    }

    #[cfg(feature = "a5-irreps")]
    #[test]
    fn a5_dims_and_min_dim() {
        let set = set_of("A5");
        let mut dims = set.dims();
        dims.sort_unstable();
        assert_eq!(dims, vec![1, 3, 3, 4, 5]);
        assert_eq!(set.min_nontrivial_dim, 3);
    }

    #[test]
    fn opaque_nonabelian_is_unsupported() {
        let s3 = load_group("S3").unwrap();
        let text = crate::group::serialize_group_file(&s3);
        let g = crate::group::parse_group_file(&text).unwrap();
        assert!(matches!(irreps_of(&g), Err(RepError::Unsupported(_))));
    }

    #[test]
    fn trivial_character_is_all_ones() {
        let set = set_of("S3");
        let chi = set.irreps[0].character();
        assert!(chi
            .values
            .iter()
            .all(|v| (v - Complex64::new(1.0, 0.0)).norm() < 1e-12));
        for r in &set.irreps {
            assert!((r.character().values[0].re - r.dim as f64).abs() < 1e-9);
        }
    }

    #[test]
    fn tensor_with_trivial_is_identity_operation() {
        let set = set_of("S3");
        for r in &set.irreps {
            let dec = tensor_decompose(&set, &[r.id, 0]).unwrap();
            assert_eq!(dec.parts, vec![(r.id, 1)]);
        }
    }

    #[test]
    fn s3_std_squared_decomposes_into_all_irreps() {
        let set = set_of("S3");
        let std = set.irreps.iter().find(|r| r.dim == 2).unwrap().id;
        let dec = tensor_decompose(&set, &[std, std]).unwrap();
        let mut parts = dec.parts.clone();
        parts.sort_unstable();
        assert_eq!(parts.len(), 3);
        assert!(parts.iter().all(|&(_, n)| n == 1));
    }

    #[test]
    fn q8_two_dim_squared_is_all_one_dims() {
        let set = set_of("Q8");
        let two = set.irreps.iter().find(|r| r.dim == 2).unwrap().id;
        let dec = tensor_decompose(&set, &[two, two]).unwrap();
        let one_dim_ids: Vec<usize> = set
            .irreps
            .iter()
            .filter(|r| r.dim == 1)
            .map(|r| r.id)
            .collect();
        assert_eq!(
            dec.parts.iter().map(|&(m, _)| m).collect::<Vec<_>>(),
            one_dim_ids
        );
        assert!(dec.parts.iter().all(|&(_, n)| n == 1));
    }

    #[test]
    fn multiplicity_bound_cases() {
        let s3 = set_of("S3");
        let std = s3.irreps.iter().find(|r| r.dim == 2).unwrap().id;
        let rep = check_multiplicity_bound(&s3, &[std, std]).unwrap();
        assert!(rep.ok);
        assert_eq!(rep.max_mult, 1);
        assert!((rep.bound - (5.0 / 6.0) * 4.0).abs() < 1e-12);

        let q8 = set_of("Q8");
        let two = q8.irreps.iter().find(|r| r.dim == 2).unwrap().id;
        let rep = check_multiplicity_bound(&q8, &[two, two]).unwrap();
        assert!(rep.ok && rep.max_mult == 1);

        let rep = check_multiplicity_bound(&s3, &[std]).unwrap();
        assert!(rep.ok && rep.max_mult == 1);

        // all-1-dim tuple violates the hypothesis
        assert!(matches!(
            check_multiplicity_bound(&s3, &[0, 0]),
            Err(RepError::HypothesisViolated)
        ));
    }

    #[test]
    fn dim1_pairing_cases() {
        let s3 = set_of("S3");
        let pairs = dim1_pairing(&s3).unwrap();
        // trivial and sign are both real-valued, so each is self-paired
        assert!(pairs.iter().all(|&(a, b)| a == b));

        let z3 = set_of("Z3");
        let pairs = dim1_pairing(&z3).unwrap();
        let omega_pair = pairs.iter().find(|&&(a, _)| a == 1).unwrap();
        assert_eq!(omega_pair.1, 2);
    }

    #[test]
    fn restriction_identity_projection() {
        let set = set_of("S3");
        let std = set.irreps.iter().find(|r| r.dim == 2).unwrap().id;
        let alpha = vec![std, 1];
        let pi = vec![0, 1];
        let rep = restrict_through_projection(&set, &alpha, &pi, 2, 2, 0.5).unwrap();
        assert_eq!(rep.parts, vec![(alpha.clone(), 1)]);
        assert_eq!(rep.alpha_dim, 2);
    }

    #[test]
    fn restriction_collapsing_projection_matches_tensor_decompose() {
        let set = set_of("S3");
        let std = set.irreps.iter().find(|r| r.dim == 2).unwrap().id;
        let rep = restrict_through_projection(&set, &[std, std], &[0, 0], 1, 1, 0.5).unwrap();
        let dec = tensor_decompose(&set, &[std, std]).unwrap();
        let as_parts: Vec<(Vec<usize>, usize)> =
            dec.parts.iter().map(|&(m, n)| (vec![m], n)).collect();
        assert_eq!(rep.parts, as_parts);
        assert!(rep.hypothesis_met);
        assert!(rep.dichotomy_ok);
    }

    #[test]
    fn restriction_rejects_non_surjective() {
        let set = set_of("S3");
        assert!(matches!(
            restrict_through_projection(&set, &[0, 0], &[0, 0], 2, 1, 0.5),
            Err(RepError::NotSurjective)
        ));
    }

    #[test]
    fn hs_norm_submultiplicative_and_unitary_invariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let set = set_of("S3");
        let std = set.irreps.iter().find(|r| r.dim == 2).unwrap();
        for _ in 0..100 {
            let d = 3;
            let a = Array2::from_shape_fn((d, d), |_| {
                Complex64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5)
            });
            let b = Array2::from_shape_fn((d, d), |_| {
                Complex64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5)
            });
            assert!(hs_norm(&a.dot(&b)) <= hs_norm(&a) * hs_norm(&b) + 1e-12);

            let e = rng.random_range(0..6);
            let u = std.mat(e);
            let m = Array2::from_shape_fn((2, 2), |_| {
                Complex64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5)
            });
            assert!((hs_norm(&u.dot(&m)) - hs_norm(&m)).abs() < 1e-12);
        }
    }

    #[test]
    fn generator_images_must_generate() {
        let s3 = load_group("S3").unwrap();
        let img = identity(1);
        assert!(matches!(
            rep_from_generator_images(&s3, &[0], &[img]),
            Err(RepError::GeneratorsDontGenerate)
        ));
    }

    #[test]
    fn caller_supplied_images_assemble_into_a_set() {
        // an external table has no recipe, but hand-specified generator
        // images extended over the Cayley graph still assemble into a
        // fully validated set
        let s3 = load_group("S3").unwrap();
        let text = crate::group::serialize_group_file(&s3);
        let external = crate::group::parse_group_file(&text).unwrap();
        assert!(matches!(
            irreps_of(&external),
            Err(RepError::Unsupported(_))
        ));

        let t = (1..6).find(|&e| external.element_order(e) == 2).unwrap();
        let c = (1..6).find(|&e| external.element_order(e) == 3).unwrap();
        let gens = [t, c];
        let one = |v: f64| Array2::from_elem((1, 1), cx(v, 0.0));
        let trivial = rep_from_generator_images(&external, &gens, &[one(1.0), one(1.0)]).unwrap();
        let sign = rep_from_generator_images(&external, &gens, &[one(-1.0), one(1.0)]).unwrap();
        let theta = 2.0 * PI / 3.0;
        let rot = ndarray::arr2(&[
            [cx(theta.cos(), 0.0), cx(-theta.sin(), 0.0)],
            [cx(theta.sin(), 0.0), cx(theta.cos(), 0.0)],
        ]);
        let refl = ndarray::arr2(&[[cx(1.0, 0.0), cx(0.0, 0.0)], [cx(0.0, 0.0), cx(-1.0, 0.0)]]);
        let std = rep_from_generator_images(&external, &gens, &[refl, rot]).unwrap();
        let set = assemble_irrep_set(&external, vec![trivial, sign, std]).unwrap();
        let mut dims = set.dims();
        dims.sort_unstable();
        assert_eq!(dims, vec![1, 1, 2]);
    }
}
