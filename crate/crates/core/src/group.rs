//! Finite groups as explicit multiplication tables.
//!
//! A [`FiniteGroup`] stores the full Cayley table with element 0 as the
//! identity. The catalog (cyclic, symmetric, alternating, dihedral,
//! quaternion groups and direct products) is constructed programmatically
//! and every table is validated against the group axioms before use.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

/// Index of a group element in `[0, order)`; id 0 is the identity.
pub type ElemId = usize;

/// Largest group order admitted to the catalog.
pub const MAX_CATALOG_ORDER: usize = 1000;

/// Orders up to this bound get exhaustive associativity checking; larger
/// tables get 10^6 seeded random triples.
const EXHAUSTIVE_ASSOC_BOUND: usize = 200;

#[derive(Debug, Error)]
pub enum GroupError {
    #[error("unknown group name `{0}`")]
    UnknownName(String),
    #[error("group order {0} exceeds catalog bound {MAX_CATALOG_ORDER}")]
    TooLarge(usize),
    #[error("row {0} of the Cayley table is not a permutation of the elements")]
    RowNotPermutation(usize),
    #[error("column {0} of the Cayley table is not a permutation of the elements")]
    ColNotPermutation(usize),
    #[error("element 0 does not act as the identity")]
    BadIdentity,
    #[error("inverse law fails for element {0}")]
    BadInverse(usize),
    #[error("associativity fails on triple ({0}, {1}, {2})")]
    NotAssociative(usize, usize, usize),
    #[error("subgroup is not normal: conjugation by element {0} leaves it")]
    NotNormal(usize),
    #[error("group is not abelian (elements {0} and {1} do not commute)")]
    NonAbelian(usize, usize),
    #[error("group file parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("internal invariant failure: {0}")]
    InvariantFailure(String),
}

/// How a group was constructed; drives irrep construction downstream.
#[derive(Debug, Clone)]
pub(crate) enum Recipe {
    /// External table with no known structure.
    Opaque,
    Cyclic,
    Sym(usize),
    Alt(usize),
    Dihedral4,
    Quaternion8,
    Product(Box<FiniteGroup>, Box<FiniteGroup>),
}

/// A finite group given by its full multiplication table.
#[derive(Debug, Clone)]
pub struct FiniteGroup {
    pub name: String,
    order: usize,
    /// Row-major: `cayley[a * order + b] = a ⊙ b`.
    cayley: Vec<ElemId>,
    inverse: Vec<ElemId>,
    pub labels: Vec<String>,
    pub(crate) recipe: Recipe,
}

impl FiniteGroup {
    /// Builds a group from a raw table, computes inverses and validates all
    /// axioms.
    pub fn from_table(
        name: impl Into<String>,
        order: usize,
        cayley: Vec<ElemId>,
        labels: Option<Vec<String>>,
    ) -> Result<Self, GroupError> {
        Self::from_table_with_recipe(name, order, cayley, labels, Recipe::Opaque)
    }

    pub(crate) fn from_table_with_recipe(
        name: impl Into<String>,
        order: usize,
        cayley: Vec<ElemId>,
        labels: Option<Vec<String>>,
        recipe: Recipe,
    ) -> Result<Self, GroupError> {
        if order == 0 || cayley.len() != order * order {
            return Err(GroupError::InvariantFailure(format!(
                "table size {} does not match order {}",
                cayley.len(),
                order
            )));
        }
        let labels = labels.unwrap_or_else(|| (0..order).map(|i| i.to_string()).collect());
        if labels.len() != order {
            return Err(GroupError::InvariantFailure(
                "label count does not match order".into(),
            ));
        }
        let mut inverse = vec![usize::MAX; order];
        for a in 0..order {
            for b in 0..order {
                if cayley[a * order + b] == 0 {
                    inverse[a] = b;
                }
            }
            if inverse[a] == usize::MAX {
                return Err(GroupError::BadInverse(a));
            }
        }
        let g = FiniteGroup {
            name: name.into(),
            order,
            cayley,
            inverse,
            labels,
            recipe,
        };
        g.validate()?;
        Ok(g)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// The group operation `a ⊙ b`.
    #[inline]
    pub fn mul(&self, a: ElemId, b: ElemId) -> ElemId {
        self.cayley[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: ElemId) -> ElemId {
        self.inverse[a]
    }

    pub fn identity(&self) -> ElemId {
        0
    }

    /// Product of a word of elements, left to right; empty word gives 1.
    pub fn word(&self, elems: &[ElemId]) -> ElemId {
        elems.iter().fold(0, |acc, &e| self.mul(acc, e))
    }

    pub fn pow(&self, a: ElemId, k: i64) -> ElemId {
        let base = if k < 0 { self.inv(a) } else { a };
        let mut acc = 0;
        for _ in 0..k.unsigned_abs() {
            acc = self.mul(acc, base);
        }
        acc
    }

    pub fn element_order(&self, a: ElemId) -> usize {
        let mut x = a;
        let mut n = 1;
        while x != 0 {
            x = self.mul(x, a);
            n += 1;
        }
        n
    }

    pub fn is_abelian(&self) -> bool {
        self.check_abelian().is_ok()
    }

    fn check_abelian(&self) -> Result<(), GroupError> {
        for a in 0..self.order {
            for b in (a + 1)..self.order {
                if self.mul(a, b) != self.mul(b, a) {
                    return Err(GroupError::NonAbelian(a, b));
                }
            }
        }
        Ok(())
    }

    /// Checks every `FiniteGroup` invariant: identity row/column, Latin
    /// square rows and columns, the inverse law, and associativity
    /// (exhaustive up to order 200, sampled above that).
    pub fn validate(&self) -> Result<(), GroupError> {
        let n = self.order;
        for b in 0..n {
            if self.mul(0, b) != b || self.mul(b, 0) != b {
                return Err(GroupError::BadIdentity);
            }
        }
        let mut seen = vec![false; n];
        for a in 0..n {
            seen.fill(false);
            for b in 0..n {
                let p = self.mul(a, b);
                if p >= n || seen[p] {
                    return Err(GroupError::RowNotPermutation(a));
                }
                seen[p] = true;
            }
        }
        for b in 0..n {
            seen.fill(false);
            for a in 0..n {
                let p = self.mul(a, b);
                if seen[p] {
                    return Err(GroupError::ColNotPermutation(b));
                }
                seen[p] = true;
            }
        }
        for a in 0..n {
            if self.mul(a, self.inverse[a]) != 0 || self.mul(self.inverse[a], a) != 0 {
                return Err(GroupError::BadInverse(a));
            }
        }
        if n <= EXHAUSTIVE_ASSOC_BOUND {
            for a in 0..n {
                for b in 0..n {
                    let ab = self.mul(a, b);
                    for c in 0..n {
                        if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                            return Err(GroupError::NotAssociative(a, b, c));
                        }
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0x61_5550_C1A7);
            for _ in 0..1_000_000 {
                let a = rng.random_range(0..n);
                let b = rng.random_range(0..n);
                let c = rng.random_range(0..n);
                if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                    return Err(GroupError::NotAssociative(a, b, c));
                }
            }
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Catalog construction
// ---------------------------------------------------------------------------

fn cyclic(n: usize) -> Result<FiniteGroup, GroupError> {
    if n == 0 || n > MAX_CATALOG_ORDER {
        return Err(GroupError::TooLarge(n));
    }
    let mut cayley = vec![0; n * n];
    for a in 0..n {
        for b in 0..n {
            cayley[a * n + b] = (a + b) % n;
        }
    }
    FiniteGroup::from_table_with_recipe(format!("Z{n}"), n, cayley, None, Recipe::Cyclic)
}

/// Composition of one-line permutations: `(p ∘ q)(i) = p(q(i))`.
fn perm_compose(p: &[usize], q: &[usize]) -> Vec<usize> {
    q.iter().map(|&i| p[i]).collect()
}

fn perm_parity(p: &[usize]) -> bool {
    // true = even
    let mut seen = vec![false; p.len()];
    let mut transpositions = 0;
    for start in 0..p.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = p[i];
            len += 1;
        }
        transpositions += len - 1;
    }
    transpositions % 2 == 0
}

fn perm_cycle_label(p: &[usize]) -> String {
    let mut seen = vec![false; p.len()];
    let mut out = String::new();
    for start in 0..p.len() {
        if seen[start] || p[start] == start {
            seen[start] = true;
            continue;
        }
        out.push('(');
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            out.push_str(&i.to_string());
            i = p[i];
        }
        out.push(')');
    }
    if out.is_empty() {
        out.push('e');
    }
    out
}

fn all_perms(n: usize) -> Vec<Vec<usize>> {
    let mut perms = vec![];
    let mut cur: Vec<usize> = (0..n).collect();
    // Heap's algorithm produces all n! permutations; sort afterwards so that
    // the identity is element 0 and ordering is lexicographic.
    fn heap(k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k <= 1 {
            out.push(cur.clone());
            return;
        }
        for i in 0..k {
            heap(k - 1, cur, out);
            if k % 2 == 0 {
                cur.swap(i, k - 1);
            } else {
                cur.swap(0, k - 1);
            }
        }
    }
    heap(n, &mut cur, &mut perms);
    perms.sort();
    perms
}

fn group_from_perms(
    name: String,
    perms: Vec<Vec<usize>>,
    recipe: Recipe,
) -> Result<FiniteGroup, GroupError> {
    let order = perms.len();
    let index_of = |p: &[usize]| -> Result<usize, GroupError> {
        perms
            .binary_search_by(|q| q.as_slice().cmp(p))
            .map_err(|_| GroupError::InvariantFailure("permutation set not closed".into()))
    };
    let mut cayley = vec![0; order * order];
    for a in 0..order {
        for b in 0..order {
            cayley[a * order + b] = index_of(&perm_compose(&perms[a], &perms[b]))?;
        }
    }
    let labels = perms.iter().map(|p| perm_cycle_label(p)).collect();
    FiniteGroup::from_table_with_recipe(name, order, cayley, Some(labels), recipe)
}

fn symmetric(n: usize) -> Result<FiniteGroup, GroupError> {
    group_from_perms(format!("S{n}"), all_perms(n), Recipe::Sym(n))
}

fn alternating(n: usize) -> Result<FiniteGroup, GroupError> {
    let perms = all_perms(n)
        .into_iter()
        .filter(|p| perm_parity(p))
        .collect();
    group_from_perms(format!("A{n}"), perms, Recipe::Alt(n))
}

/// Dihedral group of the square from the presentation r^4 = s^2 = 1,
/// s r s = r^{-1}; element `a + 4b` is `r^a s^b`.
fn dihedral4() -> Result<FiniteGroup, GroupError> {
    let order = 8;
    let mut cayley = vec![0; order * order];
    let mut labels = vec![String::new(); order];
    for a1 in 0..4 {
        for b1 in 0..2 {
            let x = a1 + 4 * b1;
            labels[x] = match (a1, b1) {
                (0, 0) => "e".into(),
                (a, 0) => format!("r{a}"),
                (0, _) => "s".into(),
                (a, _) => format!("r{a}s"),
            };
            for a2 in 0..4 {
                for b2 in 0..2 {
                    let y = a2 + 4 * b2;
                    let a = if b1 == 1 {
                        (a1 + 4 - a2) % 4
                    } else {
                        (a1 + a2) % 4
                    };
                    cayley[x * order + y] = a + 4 * ((b1 + b2) % 2);
                }
            }
        }
    }
    FiniteGroup::from_table_with_recipe("D4", order, cayley, Some(labels), Recipe::Dihedral4)
}

/// Quaternion group {±1, ±i, ±j, ±k}; element `2u + s` is `(-1)^s · unit_u`
/// with units ordered 1, i, j, k.
fn quaternion8() -> Result<FiniteGroup, GroupError> {
    // unit_mul[a][b] = (sign, unit) for unit_a * unit_b
    const UNIT_MUL: [[(usize, usize); 4]; 4] = [
        [(0, 0), (0, 1), (0, 2), (0, 3)],
        [(0, 1), (1, 0), (0, 3), (1, 2)],
        [(0, 2), (1, 3), (1, 0), (0, 1)],
        [(0, 3), (0, 2), (1, 1), (1, 0)],
    ];
    let order = 8;
    let mut cayley = vec![0; order * order];
    for x in 0..order {
        for y in 0..order {
            let (s1, u1) = (x % 2, x / 2);
            let (s2, u2) = (y % 2, y / 2);
            let (s, u) = UNIT_MUL[u1][u2];
            cayley[x * order + y] = 2 * u + (s1 + s2 + s) % 2;
        }
    }
    let labels = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    FiniteGroup::from_table_with_recipe("Q8", order, cayley, Some(labels), Recipe::Quaternion8)
}

/// Direct product with componentwise operation; element `(x, y)` gets id
/// `x * |g2| + y`.
pub fn direct_product(g1: &FiniteGroup, g2: &FiniteGroup) -> Result<FiniteGroup, GroupError> {
    let n1 = g1.order();
    let n2 = g2.order();
    let order = n1 * n2;
    let mut cayley = vec![0; order * order];
    for x1 in 0..n1 {
        for y1 in 0..n2 {
            let a = x1 * n2 + y1;
            for x2 in 0..n1 {
                for y2 in 0..n2 {
                    let b = x2 * n2 + y2;
                    cayley[a * order + b] = g1.mul(x1, x2) * n2 + g2.mul(y1, y2);
                }
            }
        }
    }
    let labels = (0..order)
        .map(|e| format!("({},{})", g1.labels[e / n2], g2.labels[e % n2]))
        .collect();
    FiniteGroup::from_table_with_recipe(
        format!("{}×{}", g1.name, g2.name),
        order,
        cayley,
        Some(labels),
        Recipe::Product(Box::new(g1.clone()), Box::new(g2.clone())),
    )
}

fn catalog_atom(name: &str) -> Result<FiniteGroup, GroupError> {
    match name {
        "S3" => symmetric(3),
        "S4" => symmetric(4),
        "A4" => alternating(4),
        "A5" => alternating(5),
        "D4" => dihedral4(),
        "Q8" => quaternion8(),
        _ => {
            if let Some(rest) = name.strip_prefix('Z') {
                let n: usize = rest
                    .parse()
                    .map_err(|_| GroupError::UnknownName(name.to_string()))?;
                cyclic(n)
            } else {
                Err(GroupError::UnknownName(name.to_string()))
            }
        }
    }
}

/// Loads a group from a catalog name (`Z{n}`, `S3`, `S4`, `A4`, `A5`, `D4`,
/// `Q8`, products via `×` or `x`) or from group-file text.
pub fn load_group(spec: &str) -> Result<FiniteGroup, GroupError> {
    let spec = spec.trim();
    if spec.starts_with("group v1") || spec.contains('\n') {
        return parse_group_file(spec);
    }
    let parts: Vec<&str> = spec.split(['×', 'x']).map(str::trim).collect();
    let mut g = catalog_atom(parts[0])?;
    for part in &parts[1..] {
        let h = catalog_atom(part)?;
        if g.order() * h.order() > MAX_CATALOG_ORDER {
            return Err(GroupError::TooLarge(g.order() * h.order()));
        }
        g = direct_product(&g, &h)?;
    }
    Ok(g)
}

// ---------------------------------------------------------------------------
// Group file format
// ---------------------------------------------------------------------------

/// Parses the `group v1` table format: a header, `order <n>`, an optional
/// `labels` line, then n rows of n whitespace-separated element ids.
pub fn parse_group_file(text: &str) -> Result<FiniteGroup, GroupError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let mut next = |what: &str| {
        lines.next().ok_or_else(|| GroupError::Parse {
            line: 0,
            msg: format!("missing {what}"),
        })
    };
    let (ln, header) = next("header")?;
    if header != "group v1" {
        return Err(GroupError::Parse {
            line: ln,
            msg: "expected `group v1`".into(),
        });
    }
    let (ln, order_line) = next("order line")?;
    let order: usize = order_line
        .strip_prefix("order")
        .map(str::trim)
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| GroupError::Parse {
            line: ln,
            msg: "expected `order <n>`".into(),
        })?;
    let (mut ln, mut row_line) = next("table rows")?;
    let mut labels = None;
    if let Some(rest) = row_line.strip_prefix("labels") {
        let toks: Vec<String> = rest.split_whitespace().map(String::from).collect();
        if toks.len() != order {
            return Err(GroupError::Parse {
                line: ln,
                msg: format!("expected {order} labels, got {}", toks.len()),
            });
        }
        labels = Some(toks);
        let (l2, r2) = next("table rows")?;
        ln = l2;
        row_line = r2;
    }
    let mut cayley = Vec::with_capacity(order * order);
    let parse_row = |line: usize, text: &str, cayley: &mut Vec<ElemId>| {
        let row: Result<Vec<ElemId>, _> = text
            .split_whitespace()
            .map(|t| t.parse::<ElemId>())
            .collect();
        let row = row.map_err(|_| GroupError::Parse {
            line,
            msg: "row entries must be integers".into(),
        })?;
        if row.len() != order {
            return Err(GroupError::Parse {
                line,
                msg: format!("expected {order} entries, got {}", row.len()),
            });
        }
        cayley.extend(row);
        Ok(())
    };
    parse_row(ln, row_line, &mut cayley)?;
    for _ in 1..order {
        let (ln, row) = next("table row")?;
        parse_row(ln, row, &mut cayley)?;
    }
    FiniteGroup::from_table("external", order, cayley, labels)
}

/// Writes a group in the `group v1` table format.
pub fn serialize_group_file(g: &FiniteGroup) -> String {
    let mut out = String::from("group v1\n");
    out.push_str(&format!("order {}\n", g.order()));
    out.push_str(&format!("labels {}\n", g.labels.join(" ")));
    for a in 0..g.order() {
        let row: Vec<String> = (0..g.order()).map(|b| g.mul(a, b).to_string()).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

// ---------------------------------------------------------------------------
// Subgroups, quotients, abelian structure
// ---------------------------------------------------------------------------

/// A subgroup given by its sorted member list.
#[derive(Debug, Clone)]
pub struct Subgroup {
    pub members: Vec<ElemId>,
    pub normal: bool,
}

impl Subgroup {
    pub fn size(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, e: ElemId) -> bool {
        self.members.binary_search(&e).is_ok()
    }
}

/// Smallest subgroup containing `gens`, by BFS closure under the operation.
pub fn subgroup_closure(g: &FiniteGroup, gens: &[ElemId]) -> Subgroup {
    let mut member = vec![false; g.order()];
    member[0] = true;
    let mut queue: Vec<ElemId> = vec![0];
    for &s in gens {
        if !member[s] {
            member[s] = true;
            queue.push(s);
        }
    }
    let mut head = 0;
    while head < queue.len() {
        let x = queue[head];
        head += 1;
        for &s in gens {
            for y in [g.mul(x, s), g.mul(s, x), g.inv(x)] {
                if !member[y] {
                    member[y] = true;
                    queue.push(y);
                }
            }
        }
    }
    let members: Vec<ElemId> = (0..g.order()).filter(|&e| member[e]).collect();
    let normal = is_normal(g, &members);
    Subgroup { members, normal }
}

fn is_normal(g: &FiniteGroup, members: &[ElemId]) -> bool {
    let mut member = vec![false; g.order()];
    for &m in members {
        member[m] = true;
    }
    (0..g.order()).all(|x| {
        members
            .iter()
            .all(|&s| member[g.mul(g.mul(x, s), g.inv(x))])
    })
}

/// The commutator subgroup [G,G]: closure of all g⁻¹h⁻¹gh.
pub fn commutator_subgroup(g: &FiniteGroup) -> Subgroup {
    let mut comms = vec![];
    for a in 0..g.order() {
        for b in 0..g.order() {
            let c = g.word(&[g.inv(a), g.inv(b), a, b]);
            if c != 0 {
                comms.push(c);
            }
        }
    }
    comms.sort_unstable();
    comms.dedup();
    let sub = subgroup_closure(g, &comms);
    debug_assert!(sub.normal);
    sub
}

/// Quotient of a group by a normal subgroup, together with the coset
/// structure used to map elements back and forth.
#[derive(Debug, Clone)]
pub struct QuotientGroup {
    pub normal: Subgroup,
    /// Partition of the element ids into cosets; coset 0 is the subgroup.
    pub cosets: Vec<Vec<ElemId>>,
    /// Minimal-id representative of each coset.
    pub reps: Vec<ElemId>,
    /// Element id → coset id.
    pub projection: Vec<usize>,
    /// The quotient group on coset ids.
    pub table: FiniteGroup,
}

impl QuotientGroup {
    pub fn num_cosets(&self) -> usize {
        self.cosets.len()
    }

    #[inline]
    pub fn project(&self, e: ElemId) -> usize {
        self.projection[e]
    }
}

/// Builds G/N. Fails with `NotNormal` if `n` is not normal, and checks
/// exhaustively that the coset product is independent of representatives.
pub fn quotient(g: &FiniteGroup, n: &Subgroup) -> Result<QuotientGroup, GroupError> {
    for x in 0..g.order() {
        for &s in &n.members {
            if !n.contains(g.mul(g.mul(x, s), g.inv(x))) {
                return Err(GroupError::NotNormal(x));
            }
        }
    }
    let mut projection = vec![usize::MAX; g.order()];
    let mut cosets: Vec<Vec<ElemId>> = vec![];
    let mut reps = vec![];
    for x in 0..g.order() {
        if projection[x] != usize::MAX {
            continue;
        }
        let id = cosets.len();
        let mut coset: Vec<ElemId> = n.members.iter().map(|&s| g.mul(x, s)).collect();
        coset.sort_unstable();
        for &y in &coset {
            projection[y] = id;
        }
        reps.push(x); // ascending scan makes x the minimum of its coset
        cosets.push(coset);
    }
    let m = cosets.len();
    let mut cayley = vec![0; m * m];
    for a in 0..m {
        for b in 0..m {
            cayley[a * m + b] = projection[g.mul(reps[a], reps[b])];
        }
    }
    // Well-definedness: the product coset must not depend on representatives.
    for x in 0..g.order() {
        for y in 0..g.order() {
            if projection[g.mul(x, y)] != cayley[projection[x] * m + projection[y]] {
                return Err(GroupError::InvariantFailure(
                    "coset product depends on representatives".into(),
                ));
            }
        }
    }
    let labels = reps.iter().map(|&r| format!("[{}]", g.labels[r])).collect();
    let table =
        FiniteGroup::from_table(format!("{}/N{}", g.name, n.size()), m, cayley, Some(labels))?;
    Ok(QuotientGroup {
        normal: n.clone(),
        cosets,
        reps,
        projection,
        table,
    })
}

/// Invariant-factor decomposition of a finite abelian group, with an
/// explicit coordinate bijection.
#[derive(Debug, Clone)]
pub struct AbelianDecomposition {
    /// Invariant factors d₁ | d₂ | … | d_m with ∏ d_j = order.
    pub factors: Vec<usize>,
    /// Independent generators, `generators[j]` of order `factors[j]`.
    pub generators: Vec<ElemId>,
    /// Per element its coordinate tuple, `coords[e][j] ∈ [0, factors[j])`.
    pub coords: Vec<Vec<usize>>,
}

impl AbelianDecomposition {
    /// Reconstructs the element with the given coordinates.
    pub fn element_of(&self, g: &FiniteGroup, coords: &[usize]) -> ElemId {
        let mut x = 0;
        for (j, &v) in coords.iter().enumerate() {
            x = g.mul(x, g.pow(self.generators[j], v as i64));
        }
        x
    }
}

/// Decomposes an abelian group into invariant factors by repeatedly
/// extracting an element of maximal order and recursing on the quotient.
pub fn abelian_decomposition(h: &FiniteGroup) -> Result<AbelianDecomposition, GroupError> {
    h.check_abelian()?;
    let generators = peel_generators(h)?;
    let factors: Vec<usize> = generators.iter().map(|&a| h.element_order(a)).collect();
    if factors.iter().product::<usize>() != h.order() {
        return Err(GroupError::InvariantFailure(
            "invariant factors do not multiply to the order".into(),
        ));
    }
    // Enumerate all coordinate tuples and invert the product map; the map
    // must be a bijection, which doubles as a correctness check.
    let m = factors.len();
    let mut coords = vec![Vec::new(); h.order()];
    let mut hit = vec![false; h.order()];
    let mut tuple = vec![0usize; m];
    loop {
        let e = {
            let mut x = 0;
            for j in 0..m {
                x = h.mul(x, h.pow(generators[j], tuple[j] as i64));
            }
            x
        };
        if hit[e] {
            return Err(GroupError::InvariantFailure(
                "generator coordinates are not a bijection".into(),
            ));
        }
        hit[e] = true;
        coords[e] = tuple.clone();
        // mixed-radix increment
        let mut j = m;
        loop {
            if j == 0 {
                return Ok(AbelianDecomposition {
                    factors,
                    generators,
                    coords,
                });
            }
            j -= 1;
            tuple[j] += 1;
            if tuple[j] < factors[j] {
                break;
            }
            tuple[j] = 0;
        }
    }
}

/// Returns generators of an abelian group whose orders form the invariant
/// factor chain d₁ | … | d_m (ascending).
fn peel_generators(h: &FiniteGroup) -> Result<Vec<ElemId>, GroupError> {
    if h.order() == 1 {
        return Ok(vec![]);
    }
    // Element of maximal order generates a direct summand Z_e with e the
    // exponent of the group.
    let a1 = (0..h.order())
        .max_by_key(|&x| (h.element_order(x), std::cmp::Reverse(x)))
        .unwrap();
    let e = h.element_order(a1);
    if e == h.order() {
        return Ok(vec![a1]);
    }
    let cyc = subgroup_closure(h, &[a1]);
    let q = quotient(h, &cyc)?;
    let q_gens = peel_generators(&q.table)?;
    let mut gens = Vec::with_capacity(q_gens.len() + 1);
    // powers_of_a1[t] = a1^t for t in [0, e)
    let powers_of_a1: Vec<ElemId> = {
        let mut v = Vec::with_capacity(e);
        let mut x = 0;
        for _ in 0..e {
            v.push(x);
            x = h.mul(x, a1);
        }
        v
    };
    for &gq in &q_gens {
        let d = q.table.element_order(gq);
        let lift = q.reps[gq];
        // lift^d lands in ⟨a1⟩; adjust by a power of a1 so the lift has
        // order exactly d.
        let ld = h.pow(lift, d as i64);
        let t = powers_of_a1
            .iter()
            .position(|&p| p == ld)
            .ok_or_else(|| GroupError::InvariantFailure("lift power outside ⟨a1⟩".into()))?;
        if t % d != 0 {
            return Err(GroupError::InvariantFailure(
                "maximal-order splitting failed".into(),
            ));
        }
        let adjusted = h.mul(lift, h.pow(a1, -((t / d) as i64)));
        if h.element_order(adjusted) != d {
            return Err(GroupError::InvariantFailure(
                "adjusted lift has wrong order".into(),
            ));
        }
        gens.push(adjusted);
    }
    gens.push(a1);
    Ok(gens)
}

/// Partition of the elements into conjugacy classes, each sorted, classes
/// ordered by their minimal element (identity class first).
pub fn conjugacy_classes(g: &FiniteGroup) -> Vec<Vec<ElemId>> {
    let mut assigned = vec![false; g.order()];
    let mut classes = vec![];
    for x in 0..g.order() {
        if assigned[x] {
            continue;
        }
        let mut class: Vec<ElemId> = (0..g.order())
            .map(|c| g.mul(g.mul(c, x), g.inv(c)))
            .collect();
        class.sort_unstable();
        class.dedup();
        for &y in &class {
            assigned[y] = true;
        }
        classes.push(class);
    }
    classes
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_groups_validate() {
        for name in [
            "Z1", "Z2", "Z4", "Z8", "S3", "S4", "A4", "A5", "D4", "Q8", "S3×Z2",
        ] {
            let g = load_group(name).unwrap_or_else(|e| panic!("{name}: {e}"));
            g.validate().unwrap();
        }
    }

    #[test]
    fn z4_is_cyclic_with_trivial_commutators() {
        let g = load_group("Z4").unwrap();
        assert_eq!(g.order(), 4);
        assert_eq!(commutator_subgroup(&g).size(), 1);
    }

    #[test]
    fn s3_has_order_6() {
        let g = load_group("S3").unwrap();
        assert_eq!(g.order(), 6);
        assert!(!g.is_abelian());
    }

    #[test]
    fn q8_center_has_size_2() {
        let g = load_group("Q8").unwrap();
        assert_eq!(g.order(), 8);
        let singletons = conjugacy_classes(&g)
            .iter()
            .filter(|c| c.len() == 1)
            .count();
        assert_eq!(singletons, 2);
    }

    #[test]
    fn product_order_and_exponent() {
        let z2z2 = load_group("Z2×Z2").unwrap();
        assert_eq!(z2z2.order(), 4);
        assert!((1..4).all(|e| z2z2.element_order(e) == 2));

        let s3_copy = load_group("Z1×S3").unwrap();
        let s3 = load_group("S3").unwrap();
        assert_eq!(s3_copy.order(), 6);
        for a in 0..6 {
            for b in 0..6 {
                assert_eq!(s3_copy.mul(a, b), s3.mul(a, b));
            }
        }

        let s3z2 = load_group("S3xZ2").unwrap();
        assert_eq!(s3z2.order(), 12);
        assert_eq!(commutator_subgroup(&s3z2).size(), 3);
    }

    #[test]
    fn subgroup_closure_cases() {
        let s3 = load_group("S3").unwrap();
        assert_eq!(subgroup_closure(&s3, &[]).members, vec![0]);
        let three_cycle = (0..6).find(|&e| s3.element_order(e) == 3).unwrap();
        assert_eq!(subgroup_closure(&s3, &[three_cycle]).size(), 3);
        let all: Vec<ElemId> = (0..6).collect();
        assert_eq!(subgroup_closure(&s3, &all).size(), 6);
    }

    #[test]
    fn commutator_subgroups() {
        let s3 = load_group("S3").unwrap();
        let c = commutator_subgroup(&s3);
        assert_eq!(c.size(), 3);
        assert!(c.normal);
        // the commutator subgroup of S3 is the 3-cycles plus identity
        for &m in &c.members {
            assert!(m == 0 || s3.element_order(m) == 3);
        }
        let a5 = load_group("A5").unwrap();
        assert_eq!(commutator_subgroup(&a5).size(), 60);
    }

    #[test]
    fn quotient_cases() {
        let s3 = load_group("S3").unwrap();
        let trivial = subgroup_closure(&s3, &[]);
        let q = quotient(&s3, &trivial).unwrap();
        assert_eq!(q.table.order(), 6);

        let q2 = quotient(&s3, &commutator_subgroup(&s3)).unwrap();
        assert_eq!(q2.table.order(), 2);
        assert!(q2.table.is_abelian());

        let q8 = load_group("Q8").unwrap();
        let center = subgroup_closure(&q8, &[1]); // -1 has id 1
        let q3 = quotient(&q8, &center).unwrap();
        assert_eq!(q3.table.order(), 4);
        assert!((1..4).all(|e| q3.table.element_order(e) == 2));
    }

    #[test]
    fn quotient_rejects_non_normal() {
        let s3 = load_group("S3").unwrap();
        let transposition = (1..6).find(|&e| s3.element_order(e) == 2).unwrap();
        let sub = subgroup_closure(&s3, &[transposition]);
        assert!(!sub.normal);
        assert!(matches!(quotient(&s3, &sub), Err(GroupError::NotNormal(_))));
    }

    #[test]
    fn abelian_decompositions() {
        let z2z2 = load_group("Z2×Z2").unwrap();
        assert_eq!(abelian_decomposition(&z2z2).unwrap().factors, vec![2, 2]);

        let z6 = load_group("Z6").unwrap();
        assert_eq!(abelian_decomposition(&z6).unwrap().factors, vec![6]);

        let s3 = load_group("S3").unwrap();
        let q = quotient(&s3, &commutator_subgroup(&s3)).unwrap();
        assert_eq!(abelian_decomposition(&q.table).unwrap().factors, vec![2]);

        let z2z4 = load_group("Z2×Z4").unwrap();
        assert_eq!(abelian_decomposition(&z2z4).unwrap().factors, vec![2, 4]);

        let s3 = load_group("S3").unwrap();
        assert!(matches!(
            abelian_decomposition(&s3),
            Err(GroupError::NonAbelian(_, _))
        ));
    }

    #[test]
    fn coords_are_additive() {
        for name in ["Z6", "Z2×Z4", "Z2×Z2×Z3", "Z12"] {
            let g = load_group(name).unwrap();
            let dec = abelian_decomposition(&g).unwrap();
            for a in 0..g.order() {
                for b in 0..g.order() {
                    let ab = g.mul(a, b);
                    for j in 0..dec.factors.len() {
                        assert_eq!(
                            dec.coords[ab][j],
                            (dec.coords[a][j] + dec.coords[b][j]) % dec.factors[j],
                            "{name}: additivity at ({a},{b}) factor {j}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn conjugacy_class_shapes() {
        let z5 = load_group("Z5").unwrap();
        assert!(conjugacy_classes(&z5).iter().all(|c| c.len() == 1));

        let s3 = load_group("S3").unwrap();
        let mut sizes: Vec<usize> = conjugacy_classes(&s3).iter().map(|c| c.len()).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 2, 3]);
    }

    #[test]
    fn quotient_size_times_commutator_is_order() {
        for name in ["S3", "S4", "A4", "D4", "Q8", "Z6", "S3×Z2"] {
            let g = load_group(name).unwrap();
            let c = commutator_subgroup(&g);
            let q = quotient(&g, &c).unwrap();
            assert_eq!(q.table.order() * c.size(), g.order(), "{name}");
            assert!(q.table.is_abelian(), "{name}");
        }
    }

    #[test]
    fn group_file_round_trip() {
        let s3 = load_group("S3").unwrap();
        let text = serialize_group_file(&s3);
        let back = parse_group_file(&text).unwrap();
        assert_eq!(back.order(), 6);
        for a in 0..6 {
            for b in 0..6 {
                assert_eq!(back.mul(a, b), s3.mul(a, b));
            }
        }
        assert_eq!(serialize_group_file(&back), text);
    }

    #[test]
    fn group_file_rejects_bad_tables() {
        // a row that is not a permutation
        let bad = "group v1\norder 2\n0 1\n1 1\n";
        assert!(parse_group_file(bad).is_err());
        // non-associative Latin square (order 5 loop)
        let loop5 = "group v1\norder 5\n0 1 2 3 4\n1 0 3 4 2\n2 4 0 1 3\n3 2 4 0 1\n4 3 1 2 0\n";
        assert!(matches!(
            parse_group_file(loop5),
            Err(GroupError::NotAssociative(_, _, _)) | Err(GroupError::BadInverse(_))
        ));
        assert!(matches!(
            load_group("FooBar"),
            Err(GroupError::UnknownName(_))
        ));
    }

    #[test]
    fn load_group_accepts_file_text() {
        let z3_text = "group v1\norder 3\n0 1 2\n1 2 0\n2 0 1\n";
        let g = load_group(z3_text).unwrap();
        assert_eq!(g.order(), 3);
    }
}
