//! Command-line surface: scriptable experiments with one TSV report stream
//! on stdout and a human-readable summary on stderr.
//!
//! Every randomized run prints its seed. Reports are byte-identical across
//! runs for identical arguments, seeds, and input files; wall-clock timings
//! go to the TSV only with `--timings` (the column reads 0 otherwise).

use std::fmt::Write as _;
use std::io::Write;
use std::path::Path;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::dictatorship::{
    make_dictator, make_random_folded, make_tightness_witness, pass_prob_irrep_decomposition,
    test_pass_probability, DictTestConfig,
};
use crate::fourier::{
    bnp_check, convolve, fourier_transform, inverse_transform, parse_scalar_table, ScalarTable,
};
use crate::group::{
    abelian_decomposition, commutator_subgroup, conjugacy_classes, load_group, quotient,
    FiniteGroup,
};
use crate::lin::{evaluate, generate_planted, parse_instance, serialize_instance};
use crate::reduction::{
    fourier_decode, generate_toy_lc, longcode_assignment, parse_label_cover, reduce,
    soundness_params, ReduceMode, ToyLcKind, ToyLcSizes,
};
use crate::rep::irreps_of;
use crate::solvers::{brute_force, folklore_approx};

#[derive(Parser)]
#[command(
    name = "grouplin",
    version,
    about = "Max-k-LIN over finite groups: representation theory, Fourier analysis, \
             the abelianization pipeline, dictatorship tests, and Label Cover reductions",
    after_help = "Reports are TSV on stdout; summaries go to stderr. Randomized runs print their seed."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Group facts: order, commutator subgroup, abelianization, classes,
    /// irrep dimensions.
    Group {
        /// Catalog name (Z{n}, S3, S4, A4, A5, D4, Q8, products via ×/x) or
        /// a path to a `group v1` table file.
        name: String,
        /// What to show (only `info` for now).
        #[arg(default_value = "info")]
        action: String,
    },
    /// Build the complete irrep set and run its invariant suite.
    CheckIrreps {
        #[arg(long)]
        group: String,
    },
    /// Fourier identity checks (inversion, Parseval, Plancherel, the
    /// convolution theorem, the convolution-norm gain) on one function.
    Fourier {
        #[arg(long)]
        group: String,
        /// Arity n of the function table over G^n.
        #[arg(long, default_value_t = 1)]
        n: usize,
        /// Read the function from an `fn v1` file instead of generating it.
        #[arg(long)]
        input: Option<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<String>,
        #[arg(long, default_value_t = false)]
        timings: bool,
    },
    /// Max-k-LIN instances: generate, evaluate, solve, approximate.
    Lin {
        #[command(subcommand)]
        action: LinAction,
    },
    /// The 3-query dictatorship test.
    DictTest {
        #[arg(long)]
        group: String,
        #[arg(long, default_value_t = 2)]
        n: usize,
        /// `dictator:<i>`, `random`, or `witness`.
        #[arg(long, default_value = "dictator:0")]
        function: String,
        #[arg(long, default_value_t = 0.0)]
        epsilon: f64,
        #[arg(long, value_enum, default_value_t = CliMode::Exact)]
        mode: CliMode,
        #[arg(long, default_value_t = 100_000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<String>,
    },
    /// Label Cover → 3-LIN reduction: build, verify completeness, decode.
    Reduce {
        #[command(subcommand)]
        action: ReduceAction,
    },
    /// The soundness-constant calculator: Label Cover requirements implied
    /// by (δ, |G|, d₀).
    Params {
        #[arg(long)]
        delta: f64,
        #[arg(long)]
        group: String,
        #[arg(long, default_value_t = 0.2)]
        d0: f64,
        #[arg(long)]
        out: Option<String>,
    },
}

#[derive(Subcommand)]
enum LinAction {
    /// Generate a planted satisfiable instance.
    Gen {
        #[arg(long)]
        group: String,
        #[arg(long)]
        vars: usize,
        #[arg(long)]
        cons: usize,
        #[arg(long, default_value_t = 3)]
        arity: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write the instance here (default: stdout).
        #[arg(long)]
        out: Option<String>,
    },
    /// Evaluate an assignment against an instance.
    Eval {
        #[arg(long)]
        instance: String,
        /// Comma-separated element ids, one per variable.
        #[arg(long)]
        assignment: String,
        #[arg(long)]
        out: Option<String>,
        #[arg(long, default_value_t = false)]
        timings: bool,
    },
    /// Exhaustive optimum (within budget).
    Solve {
        #[arg(long)]
        instance: String,
        #[arg(long, default_value_t = 100_000_000)]
        budget: u128,
        #[arg(long)]
        out: Option<String>,
        #[arg(long, default_value_t = false)]
        timings: bool,
    },
    /// The abelianization approximation pipeline.
    Approx {
        #[arg(long)]
        instance: String,
        #[arg(long)]
        out: Option<String>,
        #[arg(long, default_value_t = false)]
        timings: bool,
    },
}

#[derive(Args, Clone)]
struct ToySizesArg {
    /// Toy Label Cover sizes as U,V,L,R.
    #[arg(long, value_parser = parse_sizes)]
    sizes: ToySizes,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Clone, Copy)]
struct ToySizes(ToyLcSizes);

fn parse_sizes(s: &str) -> Result<ToySizes, String> {
    let parts: Vec<usize> = s
        .split(',')
        .map(|t| t.trim().parse::<usize>())
        .collect::<Result<_, _>>()
        .map_err(|_| "expected U,V,L,R as integers".to_string())?;
    if parts.len() != 4 {
        return Err("expected exactly four values U,V,L,R".into());
    }
    Ok(ToySizes(ToyLcSizes {
        u: parts[0],
        v: parts[1],
        l: parts[2],
        r: parts[3],
    }))
}

#[derive(Subcommand)]
enum ReduceAction {
    /// Build the reduced 3-LIN instance from a Label Cover file or a seeded
    /// planted toy instance.
    Build {
        #[arg(long)]
        group: String,
        /// `lc v1` file; omit to generate a planted toy instance.
        #[arg(long)]
        lc: Option<String>,
        #[command(flatten)]
        toy: Option<ToySizesArg>,
        #[arg(long, value_enum, default_value_t = CliReduceMode::Full)]
        mode: CliReduceMode,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        /// Write the reduced instance here (default: stdout).
        #[arg(long)]
        out: Option<String>,
    },
    /// Generate a planted toy Label Cover, reduce it, and check that the
    /// long-code assignment has value exactly 1.
    Verify {
        #[arg(long)]
        group: String,
        #[command(flatten)]
        toy: ToySizesArg,
        #[arg(long)]
        out: Option<String>,
        #[arg(long, default_value_t = false)]
        timings: bool,
    },
    /// Fourier-decode the long-code tables of a planted toy instance.
    Decode {
        #[arg(long)]
        group: String,
        #[command(flatten)]
        toy: ToySizesArg,
        #[arg(long, default_value_t = 400)]
        trials: usize,
        #[arg(long)]
        out: Option<String>,
    },
}

#[derive(ValueEnum, Clone, Copy, PartialEq, Eq)]
enum CliMode {
    Exact,
    Mc,
}

#[derive(ValueEnum, Clone, Copy, PartialEq, Eq)]
enum CliReduceMode {
    Full,
    Sampled,
}

// ---------------------------------------------------------------------------

struct Report {
    text: String,
    out_path: Option<String>,
}

impl Report {
    fn new(out_path: Option<String>) -> Self {
        Report {
            text: String::new(),
            out_path,
        }
    }

    fn row(&mut self, cells: &[String]) {
        let _ = writeln!(self.text, "{}", cells.join("\t"));
    }

    fn header(&mut self, cells: &[&str]) {
        let _ = writeln!(self.text, "{}", cells.join("\t"));
    }

    fn finish(self, out: &mut dyn Write) -> Result<(), CliError> {
        match self.out_path {
            Some(path) => std::fs::write(&path, self.text)
                .map_err(|e| CliError(format!("cannot write {path}: {e}"))),
            None => out
                .write_all(self.text.as_bytes())
                .map_err(|e| CliError(format!("cannot write report: {e}"))),
        }
    }
}

#[derive(Debug)]
struct CliError(String);

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.0.fmt(f)
    }
}

impl<E: std::error::Error> From<E> for CliError {
    fn from(e: E) -> Self {
        CliError(e.to_string())
    }
}

fn fmt_f64(v: f64) -> String {
    if v != 0.0 && (v.abs() < 1e-3 || v.abs() >= 1e6) {
        format!("{v:e}")
    } else {
        format!("{v}")
    }
}

fn load_group_or_file(spec: &str) -> Result<FiniteGroup, CliError> {
    match load_group(spec) {
        Ok(g) => Ok(g),
        Err(e) => {
            if Path::new(spec).is_file() {
                let text = std::fs::read_to_string(spec)
                    .map_err(|io| CliError(format!("cannot read {spec}: {io}")))?;
                Ok(crate::group::parse_group_file(&text)?)
            } else {
                Err(e.into())
            }
        }
    }
}

fn elapsed_cell(timings: bool, elapsed_ms: u128) -> String {
    if timings {
        elapsed_ms.to_string()
    } else {
        "0".to_string()
    }
}

/// Parses argv, dispatches, and returns the process exit code: 0 success,
/// 1 domain error, 2 usage error.
pub fn main_dispatch<I>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = String>,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let rendered = e.render().to_string();
            return if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = out.write_all(rendered.as_bytes());
                0
            } else {
                let _ = err.write_all(rendered.as_bytes());
                2
            };
        }
    };
    match run(cli, out, err) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}

fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    match cli.command {
        Command::Group { name, action } => {
            if action != "info" {
                return Err(CliError(format!("unknown group action `{action}`")));
            }
            let g = load_group_or_file(&name)?;
            let comm = commutator_subgroup(&g);
            let q = quotient(&g, &comm)?;
            let dec = abelian_decomposition(&q.table)?;
            let mut class_sizes: Vec<usize> =
                conjugacy_classes(&g).iter().map(|c| c.len()).collect();
            class_sizes.sort_unstable();
            let irrep_dims = match irreps_of(&g) {
                Ok(set) => {
                    let mut dims = set.dims();
                    dims.sort_unstable();
                    dims.iter()
                        .map(|d| d.to_string())
                        .collect::<Vec<_>>()
                        .join(",")
                }
                Err(_) => "-".to_string(),
            };
            let mut report = Report::new(None);
            report.header(&[
                "name",
                "order",
                "abelian",
                "commutator_size",
                "abelianization",
                "class_sizes",
                "irrep_dims",
            ]);
            report.row(&[
                g.name.clone(),
                g.order().to_string(),
                if g.is_abelian() { "yes" } else { "no" }.to_string(),
                comm.size().to_string(),
                format!(
                    "[{}]",
                    dec.factors
                        .iter()
                        .map(|d| d.to_string())
                        .collect::<Vec<_>>()
                        .join(",")
                ),
                class_sizes
                    .iter()
                    .map(|s| s.to_string())
                    .collect::<Vec<_>>()
                    .join("/"),
                irrep_dims,
            ]);
            report.finish(out)?;
            let _ = writeln!(
                err,
                "# {}: order {}, |[G,G]| = {}",
                g.name,
                g.order(),
                comm.size()
            );
            Ok(())
        }
        Command::CheckIrreps { group } => {
            let g = load_group_or_file(&group)?;
            let set = irreps_of(&g)?;
            let mut report = Report::new(None);
            report.header(&[
                "group",
                "irreps",
                "dims",
                "sum_dim_sq",
                "classes",
                "min_nontrivial_dim",
                "validated",
            ]);
            let mut dims = set.dims();
            dims.sort_unstable();
            report.row(&[
                g.name.clone(),
                set.len().to_string(),
                dims.iter()
                    .map(|d| d.to_string())
                    .collect::<Vec<_>>()
                    .join(","),
                dims.iter().map(|d| d * d).sum::<usize>().to_string(),
                conjugacy_classes(&g).len().to_string(),
                set.min_nontrivial_dim.to_string(),
                "yes".to_string(),
            ]);
            report.finish(out)?;
            let _ = writeln!(
                err,
                "# {}: {} irreps pass the invariant suite",
                g.name,
                set.len()
            );
            Ok(())
        }
        Command::Fourier {
            group,
            n,
            input,
            seed,
            out: out_path,
            timings,
        } => {
            let g = load_group_or_file(&group)?;
            let set = irreps_of(&g)?;
            let start = std::time::Instant::now();
            let f = match &input {
                Some(path) => {
                    let text = std::fs::read_to_string(path)
                        .map_err(|e| CliError(format!("cannot read {path}: {e}")))?;
                    parse_scalar_table(&text, load_group)?
                }
                None => random_scalar(&g, n, seed),
            };
            let f2 = random_scalar(&g, f.n, seed.wrapping_add(1));
            let table = fourier_transform(&f, &set)?;
            let back = inverse_transform(&table, &set)?;
            let inversion_res = f
                .values
                .iter()
                .zip(&back.values)
                .map(|(a, b)| (a - b).norm())
                .fold(0.0, f64::max);
            let parseval_res = (f.l2_norm().powi(2) - table.parseval_sum(&set)).abs();
            let t2 = fourier_transform(&f2, &set)?;
            let plancherel_lhs = f.l2_inner(&f2);
            let plancherel_rhs: num_complex::Complex64 = table
                .iter()
                .map(|(alpha, cf)| {
                    alpha.dim(&set) as f64 * crate::cmat::mat_inner(cf, t2.get(&alpha.0))
                })
                .sum();
            let plancherel_res = (plancherel_lhs - plancherel_rhs).norm();
            let conv = convolve(&f, &f2)?;
            let t_conv = fourier_transform(&conv, &set)?;
            let conv_res = t_conv
                .iter()
                .map(|(alpha, c)| {
                    crate::cmat::max_abs_diff(c, &table.get(&alpha.0).dot(t2.get(&alpha.0)))
                })
                .fold(0.0, f64::max);
            let elapsed = start.elapsed().as_millis();
            let mut report = Report::new(out_path);
            report.header(&["check", "residual", "ok", "seed", "elapsed_ms"]);
            let tol = crate::fourier::FOURIER_TOL;
            for (name, res) in [
                ("inversion", inversion_res),
                ("parseval", parseval_res),
                ("plancherel", plancherel_res),
                ("convolution", conv_res),
            ] {
                report.row(&[
                    name.to_string(),
                    fmt_f64(res),
                    (res <= tol).to_string(),
                    seed.to_string(),
                    elapsed_cell(timings, elapsed),
                ]);
            }
            // convolution-norm gain on mean-zero single-coordinate functions
            if f.n == 1 {
                let m = f.mean();
                let f0 = ScalarTable::new(g.clone(), 1, f.values.iter().map(|v| v - m).collect())?;
                let bnp = bnp_check(&f0, &f2, &set)?;
                report.row(&[
                    if bnp.trivial_bound {
                        "conv_norm_gain (trivial bound)".to_string()
                    } else {
                        format!("conv_norm_gain (D={})", bnp.min_nontrivial_dim)
                    },
                    fmt_f64(bnp.lhs - bnp.rhs),
                    bnp.ok.to_string(),
                    seed.to_string(),
                    elapsed_cell(timings, elapsed),
                ]);
            }
            report.finish(out)?;
            let _ = writeln!(
                err,
                "# fourier checks on {} (n={}), seed {}",
                g.name, f.n, seed
            );
            Ok(())
        }
        Command::Lin { action } => run_lin(action, out, err),
        Command::DictTest {
            group,
            n,
            function,
            epsilon,
            mode,
            samples,
            seed,
            out: out_path,
        } => {
            let g = load_group_or_file(&group)?;
            let f = match function.as_str() {
                "random" => make_random_folded(n, &g, seed)?,
                "witness" => make_tightness_witness(n, &g, seed)?,
                other => match other.strip_prefix("dictator:") {
                    Some(i) => {
                        let i: usize = i
                            .parse()
                            .map_err(|_| CliError(format!("bad dictator index in `{other}`")))?;
                        make_dictator(i, n, &g)?
                    }
                    None => {
                        return Err(CliError(format!(
                            "unknown function `{other}` (use dictator:<i>, random, witness)"
                        )))
                    }
                },
            };
            let cfg = match mode {
                CliMode::Exact => DictTestConfig::exact(epsilon),
                CliMode::Mc => DictTestConfig::monte_carlo(epsilon, samples, seed),
            };
            let pp = test_pass_probability(&f, &cfg)?;
            let decomposition = if mode == CliMode::Exact {
                irreps_of(&g)
                    .ok()
                    .map(|set| pass_prob_irrep_decomposition(&f, &cfg, &set))
                    .transpose()?
            } else {
                None
            };
            let mut header = vec![
                "function".to_string(),
                "epsilon".to_string(),
                "mode".to_string(),
                "p".to_string(),
                "ci".to_string(),
                "seed".to_string(),
            ];
            let mut row = vec![
                function.clone(),
                fmt_f64(epsilon),
                match mode {
                    CliMode::Exact => "exact",
                    CliMode::Mc => "mc",
                }
                .to_string(),
                fmt_f64(pp.p),
                fmt_f64(pp.ci_halfwidth),
                seed.to_string(),
            ];
            if let Some(t) = &decomposition {
                for (k, v) in t.iter().enumerate() {
                    header.push(format!("T_{k}"));
                    row.push(fmt_f64(v.re));
                }
            }
            let mut report = Report::new(out_path);
            report.header(&header.iter().map(String::as_str).collect::<Vec<_>>());
            report.row(&row);
            report.finish(out)?;
            let _ = writeln!(
                err,
                "# dict-test {} over {} (n={n}), ε={epsilon}, seed {seed}: p = {}",
                function, g.name, pp.p
            );
            Ok(())
        }
        Command::Reduce { action } => run_reduce(action, out, err),
        Command::Params {
            delta,
            group,
            d0,
            out: out_path,
        } => {
            let g = load_group_or_file(&group)?;
            let p = soundness_params(delta, g.order(), d0);
            let mut report = Report::new(out_path);
            report.header(&[
                "delta",
                "group_order",
                "d0",
                "c_log10",
                "lc_soundness_log10",
            ]);
            report.row(&[
                fmt_f64(p.delta),
                p.group_order.to_string(),
                fmt_f64(p.d0),
                fmt_f64(p.c_log10),
                fmt_f64(p.lc_soundness_log10),
            ]);
            report.finish(out)?;
            let _ = writeln!(
                err,
                "# soundness constants for δ={delta}, |G|={}, d₀={d0}",
                g.order()
            );
            Ok(())
        }
    }
}

fn random_scalar(g: &FiniteGroup, n: usize, seed: u64) -> ScalarTable {
    use rand::Rng;
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let points = g.order().pow(n as u32);
    let values = (0..points)
        .map(|_| num_complex::Complex64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5))
        .collect();
    ScalarTable::new(g.clone(), n, values).expect("sized by construction")
}

fn read_instance(path: &str) -> Result<crate::lin::LinInstance, CliError> {
    let text =
        std::fs::read_to_string(path).map_err(|e| CliError(format!("cannot read {path}: {e}")))?;
    Ok(parse_instance(&text, load_group)?)
}

fn solve_row(report: &mut Report, r: &crate::solvers::SolveReport, timings: bool) {
    report.header(&[
        "method",
        "value",
        "expectation",
        "guarantee",
        "satisfiable",
        "elapsed_ms",
    ]);
    report.row(&[
        r.method.to_string(),
        fmt_f64(r.best_value),
        r.expectation.map_or("-".to_string(), fmt_f64),
        r.guarantee.map_or("-".to_string(), fmt_f64),
        match r.satisfiable {
            Some(true) => "yes",
            Some(false) => "no",
            None => "unknown",
        }
        .to_string(),
        elapsed_cell(timings, r.elapsed.as_millis()),
    ]);
}

fn run_lin(action: LinAction, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    match action {
        LinAction::Gen {
            group,
            vars,
            cons,
            arity,
            seed,
            out: out_path,
        } => {
            let g = load_group_or_file(&group)?;
            let (inst, planted) = generate_planted(&g, vars, cons, arity, seed)?;
            let text = serialize_instance(&inst);
            match &out_path {
                Some(path) => std::fs::write(path, &text)
                    .map_err(|e| CliError(format!("cannot write {path}: {e}")))?,
                None => out
                    .write_all(text.as_bytes())
                    .map_err(|e| CliError(format!("cannot write instance: {e}")))?,
            }
            let planted_str: Vec<String> = planted.iter().map(|e| e.to_string()).collect();
            let _ = writeln!(
                err,
                "# planted {}-LIN over {}: {} vars, {} constraints, seed {}; planted assignment {}",
                arity,
                g.name,
                vars,
                cons,
                seed,
                planted_str.join(",")
            );
            Ok(())
        }
        LinAction::Eval {
            instance,
            assignment,
            out: out_path,
            timings,
        } => {
            let inst = read_instance(&instance)?;
            let a: Vec<usize> = assignment
                .split(',')
                .map(|t| t.trim().parse())
                .collect::<Result<_, _>>()
                .map_err(|_| CliError("assignment must be comma-separated element ids".into()))?;
            let start = std::time::Instant::now();
            let value = evaluate(&inst, &a)?;
            let mut report = Report::new(out_path);
            report.header(&["method", "value", "elapsed_ms"]);
            report.row(&[
                "eval".to_string(),
                fmt_f64(value),
                elapsed_cell(timings, start.elapsed().as_millis()),
            ]);
            report.finish(out)?;
            let _ = writeln!(err, "# value {value}");
            Ok(())
        }
        LinAction::Solve {
            instance,
            budget,
            out: out_path,
            timings,
        } => {
            let inst = read_instance(&instance)?;
            let r = brute_force(&inst, budget)?;
            let mut report = Report::new(out_path);
            solve_row(&mut report, &r, timings);
            report.finish(out)?;
            let _ = writeln!(err, "# brute force optimum {}", r.best_value);
            Ok(())
        }
        LinAction::Approx {
            instance,
            out: out_path,
            timings,
        } => {
            let inst = read_instance(&instance)?;
            let outcome = folklore_approx(&inst)?;
            let mut report = Report::new(out_path);
            solve_row(&mut report, &outcome.report, timings);
            report.finish(out)?;
            let _ = writeln!(
                err,
                "# |[G,G]| = {}, quotient order {}, value {} ≥ guarantee {}",
                outcome.commutator_size,
                outcome.quotient_order,
                outcome.report.best_value,
                outcome.report.guarantee.unwrap_or(f64::NAN)
            );
            Ok(())
        }
    }
}

fn run_reduce(
    action: ReduceAction,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<(), CliError> {
    match action {
        ReduceAction::Build {
            group,
            lc,
            toy,
            mode,
            samples,
            out: out_path,
        } => {
            let g = load_group_or_file(&group)?;
            let (label_cover, seed) = match (&lc, &toy) {
                (Some(path), _) => {
                    let text = std::fs::read_to_string(path)
                        .map_err(|e| CliError(format!("cannot read {path}: {e}")))?;
                    (parse_label_cover(&text)?, 0)
                }
                (None, Some(t)) => {
                    let (lc, _) = generate_toy_lc(ToyLcKind::Planted, t.sizes.0, t.seed)?;
                    (lc, t.seed)
                }
                (None, None) => return Err(CliError("pass --lc FILE or --sizes U,V,L,R".into())),
            };
            let red_mode = match mode {
                CliReduceMode::Full => ReduceMode::Full,
                CliReduceMode::Sampled => ReduceMode::Sampled { samples },
            };
            let red = reduce(&label_cover, &g, red_mode, seed)?;
            let text = serialize_instance(&red.instance);
            match &out_path {
                Some(path) => std::fs::write(path, &text)
                    .map_err(|e| CliError(format!("cannot write {path}: {e}")))?,
                None => out
                    .write_all(text.as_bytes())
                    .map_err(|e| CliError(format!("cannot write instance: {e}")))?,
            }
            let _ = writeln!(
                err,
                "# reduced {} edges over {}: {} variables, {} constraints, seed {}",
                label_cover.edges.len(),
                g.name,
                red.num_vars(),
                red.instance.num_constraints(),
                seed,
            );
            Ok(())
        }
        ReduceAction::Verify {
            group,
            toy,
            out: out_path,
            timings,
        } => {
            let g = load_group_or_file(&group)?;
            let start = std::time::Instant::now();
            let (lc, lab) = generate_toy_lc(ToyLcKind::Planted, toy.sizes.0, toy.seed)?;
            let lab = lab.expect("planted generation returns a labeling");
            let red = reduce(&lc, &g, ReduceMode::Full, toy.seed)?;
            let assignment = longcode_assignment(&lc, &lab, &red)?;
            let value = evaluate(&red.instance, &assignment)?;
            let ok = (value - 1.0).abs() < 1e-12;
            let mut report = Report::new(out_path);
            report.header(&[
                "edges",
                "vars",
                "constraints",
                "longcode_value",
                "ok",
                "seed",
                "elapsed_ms",
            ]);
            report.row(&[
                lc.edges.len().to_string(),
                red.num_vars().to_string(),
                red.instance.num_constraints().to_string(),
                fmt_f64(value),
                ok.to_string(),
                toy.seed.to_string(),
                elapsed_cell(timings, start.elapsed().as_millis()),
            ]);
            report.finish(out)?;
            let _ = writeln!(
                err,
                "# completeness over {}: long-code value {value}",
                g.name
            );
            if ok {
                Ok(())
            } else {
                Err(CliError(format!("long-code value {value} is not 1")))
            }
        }
        ReduceAction::Decode {
            group,
            toy,
            trials,
            out: out_path,
        } => {
            let g = load_group_or_file(&group)?;
            let set = irreps_of(&g)?;
            let rho = set
                .irreps
                .iter()
                .find(|r| r.dim >= 2)
                .ok_or_else(|| CliError(format!("{} has no irrep of dimension ≥ 2", g.name)))?;
            let (lc, lab) = generate_toy_lc(ToyLcKind::Planted, toy.sizes.0, toy.seed)?;
            let lab = lab.expect("planted generation returns a labeling");
            let red = reduce(&lc, &g, ReduceMode::Full, toy.seed)?;
            let u_tables: Vec<_> = (0..lc.u_size)
                .map(|u| make_dictator(lab.u_labels[u], lc.l, &g))
                .collect::<Result<_, _>>()?;
            let v_tables: Vec<_> = (0..lc.v_size)
                .map(|v| make_dictator(lab.v_labels[v], lc.r, &g))
                .collect::<Result<_, _>>()?;
            let report_data = fourier_decode(
                &red,
                &u_tables,
                &v_tables,
                rho.id,
                &set,
                (0, 0, 0),
                toy.seed,
                trials,
            )?;
            let recovered = report_data.trials.iter().all(|t| {
                t.u_labels
                    .iter()
                    .enumerate()
                    .all(|(u, l)| l.map_or(true, |l| l == lab.u_labels[u]))
                    && t.v_labels
                        .iter()
                        .enumerate()
                        .all(|(v, l)| l.map_or(true, |l| l == lab.v_labels[v]))
            });
            let mut report = Report::new(out_path);
            report.header(&[
                "trials",
                "bottom_rate",
                "best_lc_value",
                "recovered_planted",
                "rho_dim",
                "seed",
            ]);
            report.row(&[
                trials.to_string(),
                fmt_f64(report_data.bottom_rate),
                report_data.best_lc_value.map_or("-".to_string(), fmt_f64),
                recovered.to_string(),
                rho.dim.to_string(),
                toy.seed.to_string(),
            ]);
            report.finish(out)?;
            let _ = writeln!(
                err,
                "# decode over {}: ⊥ rate {}, best value {:?}",
                g.name, report_data.bottom_rate, report_data.best_lc_value
            );
            Ok(())
        }
    }
}
