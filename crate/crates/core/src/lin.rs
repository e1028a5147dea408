//! Weighted Max-k-LIN instances over a finite group.
//!
//! A constraint is a word c₀ ⊙ x^{e₁} ⊙ c₁ ⊙ … ⊙ x^{e_k} ⊙ c_k = b with
//! group constants interleaved between signed variable occurrences.
//! Instance weights are normalized to sum 1 on construction.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::group::{AbelianDecomposition, ElemId, FiniteGroup, GroupError, QuotientGroup};

pub const WEIGHT_TOL: f64 = 1e-12;

#[derive(Debug, Error)]
pub enum LinError {
    #[error("variable index {0} out of range (instance has {1} variables)")]
    VarOutOfRange(usize, usize),
    #[error("group element {0} out of range for group of order {1}")]
    ElemOutOfRange(usize, usize),
    #[error("constraint must involve at least one variable")]
    EmptyConstraint,
    #[error("constraint needs exactly k+1 constants for k terms")]
    BadConstantCount,
    #[error("weights must be non-negative and not all zero")]
    BadWeights,
    #[error("assignment length {0} does not match variable count {1}")]
    LengthMismatch(usize, usize),
    #[error("k = {0} exceeds variable count {1}")]
    TooFewVariables(usize, usize),
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// A signed variable occurrence x or x⁻¹.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Term {
    pub var: usize,
    /// true for exponent −1.
    pub inverse: bool,
}

#[derive(Debug, Clone)]
pub struct LinConstraint {
    pub weight: f64,
    pub rhs: ElemId,
    /// k+1 constants c₀ … c_k interleaved around the k terms.
    pub consts: Vec<ElemId>,
    pub terms: Vec<Term>,
}

impl LinConstraint {
    pub fn arity(&self) -> usize {
        self.terms.len()
    }

    /// Evaluates the word c₀ x^{e₁} c₁ … x^{e_k} c_k at an assignment.
    pub fn word_value(&self, g: &FiniteGroup, assignment: &[ElemId]) -> ElemId {
        let mut acc = self.consts[0];
        for (t, &c) in self.terms.iter().zip(&self.consts[1..]) {
            let x = assignment[t.var];
            let x = if t.inverse { g.inv(x) } else { x };
            acc = g.mul(g.mul(acc, x), c);
        }
        acc
    }

    pub fn is_satisfied(&self, g: &FiniteGroup, assignment: &[ElemId]) -> bool {
        self.word_value(g, assignment) == self.rhs
    }

    /// The distinct variables of the constraint, ascending.
    pub fn distinct_vars(&self) -> Vec<usize> {
        let mut vars: Vec<usize> = self.terms.iter().map(|t| t.var).collect();
        vars.sort_unstable();
        vars.dedup();
        vars
    }
}

/// An assignment of group elements to variables.
pub type Assignment = Vec<ElemId>;
/// An assignment of quotient cosets to variables.
pub type CosetAssignment = Vec<usize>;

#[derive(Debug, Clone)]
pub struct LinInstance {
    pub group: FiniteGroup,
    pub num_vars: usize,
    pub constraints: Vec<LinConstraint>,
    /// Total weight of the input before normalization, when it was not
    /// already 1.
    pub scale: Option<f64>,
}

impl LinInstance {
    /// Validates ranges and normalizes weights to sum 1.
    pub fn new(
        group: FiniteGroup,
        num_vars: usize,
        mut constraints: Vec<LinConstraint>,
    ) -> Result<Self, LinError> {
        let order = group.order();
        for c in &constraints {
            if c.terms.is_empty() {
                return Err(LinError::EmptyConstraint);
            }
            if c.consts.len() != c.terms.len() + 1 {
                return Err(LinError::BadConstantCount);
            }
            if c.rhs >= order {
                return Err(LinError::ElemOutOfRange(c.rhs, order));
            }
            for &k in &c.consts {
                if k >= order {
                    return Err(LinError::ElemOutOfRange(k, order));
                }
            }
            for t in &c.terms {
                if t.var >= num_vars {
                    return Err(LinError::VarOutOfRange(t.var, num_vars));
                }
            }
            if c.weight.is_nan() || c.weight < 0.0 {
                return Err(LinError::BadWeights);
            }
        }
        let total: f64 = constraints.iter().map(|c| c.weight).sum();
        if total <= 0.0 {
            return Err(LinError::BadWeights);
        }
        let scale = if (total - 1.0).abs() > WEIGHT_TOL {
            for c in &mut constraints {
                c.weight /= total;
            }
            Some(total)
        } else {
            None
        };
        Ok(LinInstance {
            group,
            num_vars,
            constraints,
            scale,
        })
    }

    pub fn num_constraints(&self) -> usize {
        self.constraints.len()
    }
}

/// Satisfied weight of an assignment, in [0, 1]. Compensated summation
/// keeps the value exact enough for the value-1 checks on instances with
/// tens of thousands of constraints.
pub fn evaluate(inst: &LinInstance, assignment: &[ElemId]) -> Result<f64, LinError> {
    if assignment.len() != inst.num_vars {
        return Err(LinError::LengthMismatch(assignment.len(), inst.num_vars));
    }
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for c in &inst.constraints {
        if c.is_satisfied(&inst.group, assignment) {
            let y = c.weight - comp;
            let t = sum + y;
            comp = (t - sum) - y;
            sum = t;
        }
    }
    Ok(sum)
}

/// Generates a satisfiable instance: k distinct variables per constraint,
/// uniform constants, exponents +1, and the right-hand side chosen so a
/// planted assignment satisfies everything. Deterministic per seed.
pub fn generate_planted(
    g: &FiniteGroup,
    num_vars: usize,
    num_constraints: usize,
    k: usize,
    seed: u64,
) -> Result<(LinInstance, Assignment), LinError> {
    if k > num_vars {
        return Err(LinError::TooFewVariables(k, num_vars));
    }
    if k == 0 {
        return Err(LinError::EmptyConstraint);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let order = g.order();
    let planted: Assignment = (0..num_vars).map(|_| rng.random_range(0..order)).collect();
    let mut constraints = Vec::with_capacity(num_constraints);
    for _ in 0..num_constraints {
        // k distinct variables by partial Fisher–Yates
        let mut pool: Vec<usize> = (0..num_vars).collect();
        let mut vars = Vec::with_capacity(k);
        for _ in 0..k {
            let i = rng.random_range(0..pool.len());
            vars.push(pool.swap_remove(i));
        }
        let consts: Vec<ElemId> = (0..=k).map(|_| rng.random_range(0..order)).collect();
        let terms: Vec<Term> = vars
            .iter()
            .map(|&var| Term {
                var,
                inverse: false,
            })
            .collect();
        let mut c = LinConstraint {
            weight: 1.0 / num_constraints as f64,
            rhs: 0,
            consts,
            terms,
        };
        c.rhs = c.word_value(g, &planted);
        constraints.push(c);
    }
    let inst = LinInstance::new(g.clone(), num_vars, constraints)?;
    Ok((inst, planted))
}

/// The image of an instance over an abelian quotient: integer coefficient
/// rows and per-invariant-factor residue targets.
#[derive(Debug, Clone)]
pub struct AbelianSystem {
    /// Invariant factors d₁ | … | d_m of the quotient.
    pub factors: Vec<usize>,
    /// m_constraints × num_vars net exponents.
    pub coeffs: Vec<Vec<i64>>,
    /// m_constraints × m_factors residues.
    pub rhs: Vec<Vec<i64>>,
    pub num_vars: usize,
}

/// Projects every constraint into the abelian quotient H = G/N: the
/// coefficient of a variable is the sum of its exponents, and the target is
/// coords(proj(b)) − Σ coords(proj(c_t)) componentwise mod d_j.
pub fn abelianize(
    inst: &LinInstance,
    q: &QuotientGroup,
    dec: &AbelianDecomposition,
) -> AbelianSystem {
    let m = dec.factors.len();
    let mut coeffs = Vec::with_capacity(inst.constraints.len());
    let mut rhs = Vec::with_capacity(inst.constraints.len());
    for c in &inst.constraints {
        let mut row = vec![0i64; inst.num_vars];
        for t in &c.terms {
            row[t.var] += if t.inverse { -1 } else { 1 };
        }
        let mut target = vec![0i64; m];
        for j in 0..m {
            let d = dec.factors[j] as i64;
            let mut v = dec.coords[q.project(c.rhs)][j] as i64;
            for &k in &c.consts {
                v -= dec.coords[q.project(k)][j] as i64;
            }
            target[j] = v.rem_euclid(d);
        }
        coeffs.push(row);
        rhs.push(target);
    }
    AbelianSystem {
        factors: dec.factors.clone(),
        coeffs,
        rhs,
        num_vars: inst.num_vars,
    }
}

// ---------------------------------------------------------------------------
// LIN file format
// ---------------------------------------------------------------------------

/// Parses the `lin v1` format. Constants are `g<id>`, terms `x<idx>` or
/// `x<idx>'` (apostrophe for the inverse); weights are renormalized to sum 1
/// with the original total recorded.
pub fn parse_instance(
    text: &str,
    load: impl Fn(&str) -> Result<FiniteGroup, GroupError>,
) -> Result<LinInstance, LinError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let mut expect = |what: &str| {
        lines.next().ok_or_else(|| LinError::Parse {
            line: 0,
            msg: format!("missing {what}"),
        })
    };
    let (ln, header) = expect("header")?;
    if header != "lin v1" {
        return Err(LinError::Parse {
            line: ln,
            msg: "expected `lin v1`".into(),
        });
    }
    let (ln, group_line) = expect("group line")?;
    let gname = group_line
        .strip_prefix("group")
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .ok_or_else(|| LinError::Parse {
            line: ln,
            msg: "expected `group <name>`".into(),
        })?;
    let group = load(gname).map_err(|e| LinError::Parse {
        line: ln,
        msg: format!("unknown group `{gname}`: {e}"),
    })?;
    let (ln, vars_line) = expect("vars line")?;
    let num_vars: usize = vars_line
        .strip_prefix("vars")
        .map(str::trim)
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| LinError::Parse {
            line: ln,
            msg: "expected `vars <n>`".into(),
        })?;

    let parse_elem = |line: usize, tok: &str| -> Result<ElemId, LinError> {
        tok.strip_prefix('g')
            .and_then(|s| s.parse::<ElemId>().ok())
            .ok_or_else(|| LinError::Parse {
                line,
                msg: format!("expected group constant `g<id>`, got `{tok}`"),
            })
    };
    let mut constraints = vec![];
    for (ln, l) in lines {
        let rest = l.strip_prefix("c ").ok_or_else(|| LinError::Parse {
            line: ln,
            msg: format!("expected constraint line `c …`, got `{l}`"),
        })?;
        let (head, word) = rest.split_once(':').ok_or_else(|| LinError::Parse {
            line: ln,
            msg: "constraint is missing `:`".into(),
        })?;
        let mut head_toks = head.split_whitespace();
        let weight: f64 = head_toks
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| LinError::Parse {
                line: ln,
                msg: "bad weight".into(),
            })?;
        let rhs = parse_elem(ln, head_toks.next().unwrap_or(""))?;
        if head_toks.next().is_some() {
            return Err(LinError::Parse {
                line: ln,
                msg: "extra tokens before `:`".into(),
            });
        }
        let mut consts = vec![];
        let mut terms = vec![];
        let mut expect_const = true;
        for tok in word.split_whitespace() {
            if expect_const {
                consts.push(parse_elem(ln, tok)?);
            } else {
                let body = tok.strip_prefix('x').ok_or_else(|| LinError::Parse {
                    line: ln,
                    msg: format!("expected term `x<idx>`, got `{tok}`"),
                })?;
                let (idx, inverse) = match body.strip_suffix('\'') {
                    Some(i) => (i, true),
                    None => (body, false),
                };
                let var: usize = idx.parse().map_err(|_| LinError::Parse {
                    line: ln,
                    msg: format!("bad variable index in `{tok}`"),
                })?;
                terms.push(Term { var, inverse });
            }
            expect_const = !expect_const;
        }
        if expect_const {
            return Err(LinError::Parse {
                line: ln,
                msg: "constraint word must end with a constant".into(),
            });
        }
        constraints.push(LinConstraint {
            weight,
            rhs,
            consts,
            terms,
        });
    }
    LinInstance::new(group, num_vars, constraints)
}

/// Writes the `lin v1` format; emits the recorded normalization factor as a
/// header comment when the input weights did not sum to 1.
pub fn serialize_instance(inst: &LinInstance) -> String {
    let mut out = String::from("lin v1\n");
    if let Some(s) = inst.scale {
        out.push_str(&format!("# scale {s}\n"));
    }
    out.push_str(&format!("group {}\n", inst.group.name));
    out.push_str(&format!("vars {}\n", inst.num_vars));
    for c in &inst.constraints {
        out.push_str(&format!("c {} g{} :", c.weight, c.rhs));
        out.push_str(&format!(" g{}", c.consts[0]));
        for (t, &k) in c.terms.iter().zip(&c.consts[1..]) {
            let tick = if t.inverse { "'" } else { "" };
            out.push_str(&format!(" x{}{} g{}", t.var, tick, k));
        }
        out.push('\n');
    }
    out
}
