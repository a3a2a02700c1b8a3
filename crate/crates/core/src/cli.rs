//! Batch front end: argument parsing, the subcommands and their documents.

use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand, ValueEnum};
use indexmap::IndexMap;
use serde::Serialize;

use crate::meander::{fkl_by_cofactor, MeanderSystem};
use crate::model::StepModel;
use crate::oracle::{verify_series, SeriesTarget};
use crate::ring::{rational_series, reduce_fraction, Grading, MPoly};
use crate::symmetric::{self, SymmetricError, Verdict};
use crate::transfer::{TransferError, TransferMatrix};
use crate::{binomial, Error};

/// Environment variable capping every series order.
pub const MAX_DEGREE_ENV: &str = "BOUNDED_PATHS_MAX_DEGREE";

pub const EXIT_OK: i32 = 0;
pub const EXIT_FALSIFIED: i32 = 1;
pub const EXIT_INVALID: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "bounded-paths",
    version,
    about = "Generating functions of height-bounded excursions and meanders"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[arg(long, value_enum, default_value_t = OutputFormat::Text, global = true)]
    pub output: OutputFormat,
    /// Cross-check results against the independent oracles.
    #[arg(long, global = true)]
    pub verify: bool,
    /// Cancel common factors of printed fractions.
    #[arg(long, global = true)]
    pub reduce: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
    Dot,
}

#[derive(Debug, Clone, Args)]
pub struct StepsArg {
    /// Step set, e.g. "1:t,-1:t" (a bare step gets the weight `w<s>`).
    #[arg(long)]
    pub steps: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GraphKind {
    /// The transfer graph of `T`.
    Transfer,
    /// `T`, the shifted `T̃` and the arcs of `U`.
    Meander,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// List F_0 .. F_kmax.
    Fk {
        #[command(flatten)]
        steps: StepsArg,
        #[arg(long, default_value_t = 10)]
        kmax: usize,
    },
    /// D(z), N(z), their degrees and det(T).
    Recurrence {
        #[command(flatten)]
        steps: StepsArg,
    },
    /// F_{k,l} table, shifted denominator and numerator, G_k and M_k.
    Meander {
        #[command(flatten)]
        steps: StepsArg,
        #[arg(long, default_value_t = 6)]
        kmax: usize,
    },
    /// Factorisation for symmetric step sets.
    Symmetric {
        #[command(flatten)]
        steps: StepsArg,
        #[arg(long, default_value_t = 8)]
        kmax: usize,
    },
    /// Expand a generating function and compare it with path counts.
    Series {
        #[command(flatten)]
        steps: StepsArg,
        #[arg(long)]
        k: usize,
        /// Final height; all meanders with --meanders, excursions otherwise.
        #[arg(long, conflicts_with = "meanders")]
        l: Option<usize>,
        #[arg(long)]
        meanders: bool,
        #[arg(long, default_value_t = 10)]
        nmax: usize,
    },
    /// DOT export of the transfer graphs.
    Graph {
        #[command(flatten)]
        steps: StepsArg,
        #[arg(long, value_enum, default_value_t = GraphKind::Transfer)]
        kind: GraphKind,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Fk { .. } => "fk",
            Command::Recurrence { .. } => "recurrence",
            Command::Meander { .. } => "meander",
            Command::Symmetric { .. } => "symmetric",
            Command::Series { .. } => "series",
            Command::Graph { .. } => "graph",
        }
    }

    fn steps(&self) -> &str {
        match self {
            Command::Fk { steps, .. }
            | Command::Recurrence { steps }
            | Command::Meander { steps, .. }
            | Command::Symmetric { steps, .. }
            | Command::Series { steps, .. }
            | Command::Graph { steps, .. } => &steps.steps,
        }
    }
}

/// Everything one run needs.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: Command,
    pub output: OutputFormat,
    pub verify: bool,
    pub reduce: bool,
    /// Cap on series orders, normally read from [`MAX_DEGREE_ENV`].
    pub max_degree: Option<usize>,
}

impl RunConfig {
    pub fn from_cli(cli: Cli) -> Self {
        let max_degree = std::env::var(MAX_DEGREE_ENV)
            .ok()
            .and_then(|v| v.trim().parse().ok());
        RunConfig {
            command: cli.command,
            output: cli.output,
            verify: cli.verify,
            reduce: cli.reduce,
            max_degree,
        }
    }

    fn cap(&self, order: usize) -> usize {
        match self.max_degree {
            Some(m) if m < order => {
                log::warn!("series order {order} capped at {m} by {MAX_DEGREE_ENV}");
                m
            }
            _ => order,
        }
    }
}

/// The stable output schema.
#[derive(Debug, Clone, Serialize)]
pub struct Document {
    pub steps: String,
    pub command: String,
    pub polynomials: IndexMap<String, String>,
    pub verdicts: Vec<Verdict>,
    #[serde(skip)]
    graph: Option<String>,
    #[serde(skip)]
    json: Option<serde_json::Value>,
    #[serde(skip)]
    list: bool,
}

impl Document {
    fn new(model: &StepModel, command: &str) -> Self {
        Document {
            steps: model.to_string(),
            command: command.to_string(),
            polynomials: IndexMap::new(),
            verdicts: Vec::new(),
            graph: None,
            json: None,
            list: false,
        }
    }

    fn put(&mut self, name: impl Into<String>, p: &MPoly) {
        self.polynomials.insert(name.into(), p.to_string());
    }

    fn verdict(&mut self, identity: &str, holds: bool) {
        self.verdicts.push(Verdict {
            identity: identity.to_string(),
            holds,
        });
    }

    pub fn all_hold(&self) -> bool {
        self.verdicts.iter().all(|v| v.holds)
    }

    pub fn to_json(&self) -> String {
        let mut s = match &self.json {
            Some(v) => serde_json::to_string_pretty(v),
            None => serde_json::to_string_pretty(self),
        }
        .expect("serialisable");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        if self.list {
            let values: Vec<&str> = self.polynomials.values().map(String::as_str).collect();
            let _ = writeln!(out, "{}", values.join(", "));
        } else {
            for (name, value) in &self.polynomials {
                let _ = writeln!(out, "{name} = {value}");
            }
        }
        for v in &self.verdicts {
            let _ = writeln!(
                out,
                "{}: {}",
                v.identity,
                if v.holds { "holds" } else { "FAILS" }
            );
        }
        out
    }
}

/// What `run` hands back: the exit code and the text to print, or a
/// diagnostic for standard error.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn run(config: &RunConfig) -> Outcome {
    let model: StepModel = match config.command.steps().parse() {
        Ok(m) => m,
        Err(e) => return invalid(format!("invalid step set: {e}")),
    };
    match build(config, &model) {
        Ok(doc) => {
            let stdout = match config.output {
                OutputFormat::Json => doc.to_json(),
                OutputFormat::Dot => match &doc.graph {
                    Some(g) => g.clone(),
                    None => {
                        return invalid(format!(
                            "--output dot is only available for `graph`, not `{}`",
                            doc.command
                        ))
                    }
                },
                OutputFormat::Text => match &doc.graph {
                    Some(g) => g.clone(),
                    None => doc.to_text(),
                },
            };
            let code = if doc.all_hold() {
                EXIT_OK
            } else {
                EXIT_FALSIFIED
            };
            let stderr = if code == EXIT_OK {
                String::new()
            } else {
                let failed: Vec<&str> = doc
                    .verdicts
                    .iter()
                    .filter(|v| !v.holds)
                    .map(|v| v.identity.as_str())
                    .collect();
                format!("falsified: {}\n", failed.join(", "))
            };
            Outcome {
                code,
                stdout,
                stderr,
            }
        }
        Err(Failure::Invalid(msg)) => invalid(msg),
        Err(Failure::Falsified(msg)) => Outcome {
            code: EXIT_FALSIFIED,
            stdout: String::new(),
            stderr: format!("falsified: {msg}\n"),
        },
    }
}

fn invalid(msg: String) -> Outcome {
    Outcome {
        code: EXIT_INVALID,
        stdout: String::new(),
        stderr: format!("error: {msg}\n"),
    }
}

enum Failure {
    Invalid(String),
    Falsified(String),
}

macro_rules! failure_from {
    ($($t:ty),*) => {$(
        impl From<$t> for Failure {
            fn from(e: $t) -> Self {
                Error::from(e).into()
            }
        }
    )*};
}

failure_from!(
    crate::ring::RingError,
    crate::model::ModelError,
    crate::linalg::LinalgError,
    TransferError,
    SymmetricError,
    crate::oracle::OracleError
);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let falsified = match &e {
            Error::Transfer(t) => !matches!(t, TransferError::Model(_)),
            Error::Symmetric(s) => matches!(
                s,
                SymmetricError::IdentityFailed { .. }
                    | SymmetricError::TailNotZero { .. }
                    | SymmetricError::Transfer(_)
            ),
            Error::Linalg(_) | Error::Ring(_) => true,
            Error::Model(_) | Error::Oracle(_) => false,
        };
        if falsified {
            Failure::Falsified(e.to_string())
        } else {
            Failure::Invalid(e.to_string())
        }
    }
}

fn build(config: &RunConfig, model: &StepModel) -> Result<Document, Failure> {
    let mut doc = Document::new(model, config.command.name());
    match &config.command {
        Command::Fk { kmax, .. } => fk(config, model, *kmax, &mut doc)?,
        Command::Recurrence { .. } => recurrence(config, model, &mut doc)?,
        Command::Meander { kmax, .. } => meander(config, model, *kmax, &mut doc)?,
        Command::Symmetric { kmax, .. } => sym(config, model, *kmax, &mut doc)?,
        Command::Series {
            k,
            l,
            meanders,
            nmax,
            ..
        } => {
            let target = match (l, meanders) {
                (Some(l), _) => SeriesTarget::FinalHeight(*l),
                (None, true) => SeriesTarget::AllMeanders,
                (None, false) => SeriesTarget::Excursions,
            };
            series(config, model, *k, target, *nmax, &mut doc)?
        }
        Command::Graph { kind, .. } => graph(config, model, *kind, &mut doc)?,
    }
    Ok(doc)
}

fn fk(
    config: &RunConfig,
    model: &StepModel,
    kmax: usize,
    doc: &mut Document,
) -> Result<(), Failure> {
    let t = TransferMatrix::from_model(model)?;
    let f = t.f_sequence(kmax);
    for (k, p) in f.iter().enumerate() {
        doc.put(format!("F_{k}"), p);
    }
    doc.list = true;
    if config.verify {
        let by_det = (0..=kmax).all(|k| {
            let d = if k == 0 {
                MPoly::one()
            } else {
                model.one_minus_a(k - 1).det()
            };
            d == f[k]
        });
        doc.verdict("transfer_equals_determinant", by_det);
        let nmax = config.cap(10);
        let mut excursions = true;
        for k in 0..kmax {
            excursions &= verify_series(model, k, SeriesTarget::Excursions, nmax)?.agrees();
        }
        doc.verdict("excursion_series_matches_path_counts", excursions);
    }
    Ok(())
}

fn recurrence(config: &RunConfig, model: &StepModel, doc: &mut Document) -> Result<(), Failure> {
    let (a, b) = model.require_two_sided()?;
    let t = TransferMatrix::from_model(model)?;
    let z = crate::transfer::z_var();
    let d = t.d_of_z()?;
    let n = t.n_of_z()?;
    doc.put("D", &d);
    doc.put("N", &n);
    if config.reduce {
        let (rn, rd) = reduce_fraction(&n, &d);
        doc.put("N_reduced", &rn);
        doc.put("D_reduced", &rd);
    }
    doc.put("deg_z_D", &MPoly::constant(d.degree_in(&z) as i64));
    doc.put("deg_z_N", &MPoly::constant(n.degree_in(&z) as i64));
    let det = t.det_t();
    let closed = t.det_closed_form();
    doc.put("det_T", &det);
    doc.put("det_T_closed_form", &closed);
    if config.verify {
        let dim = binomial(a + b, a);
        doc.verdict("deg_D_equals_subset_count", d.degree_in(&z) as usize == dim);
        doc.verdict(
            "deg_N_equals_subset_count_minus_a_minus_b",
            n.degree_in(&z) as usize + a + b == dim,
        );
        doc.verdict(
            "det_T_matches_closed_form",
            det == closed || det == -&closed,
        );
        doc.verdict("single_arcs_at_extremes", t.check_single_arcs().is_ok());
        doc.verdict("forced_cycle", t.check_forced_cycle().is_ok());
        let order = config.cap(dim + 4);
        let expanded = rational_series(&n, &d, Grading::PowerOf(z), order)?;
        let f = t.f_sequence(order);
        let by_det = (0..=order.min(8)).all(|k| {
            let det_k = if k == 0 {
                MPoly::one()
            } else {
                model.one_minus_a(k - 1).det()
            };
            det_k == f[k]
        });
        doc.verdict("N_over_D_expands_to_F", expanded.coeffs == f);
        doc.verdict("transfer_equals_determinant", by_det);
    }
    Ok(())
}

fn meander(
    config: &RunConfig,
    model: &StepModel,
    kmax: usize,
    doc: &mut Document,
) -> Result<(), Failure> {
    let sys = MeanderSystem::from_model(model)?;
    let table = sys.iterate_fkl(kmax);
    for (k, row) in table.rows.iter().enumerate() {
        for (l, p) in row.iter().enumerate() {
            doc.put(format!("F_{{{k},{l}}}"), p);
        }
    }
    let (d_tilde, n_tilde) = sys.d_tilde_and_n_tilde()?;
    doc.put("D_tilde", &d_tilde);
    doc.put("N_tilde", &n_tilde);
    let sums = sys.meander_sums(kmax)?;
    for s in &sums {
        doc.put(format!("G_{}", s.k), &s.g);
    }
    for s in &sums {
        let (num, den) = if config.reduce {
            s.reduced()
        } else {
            (s.g.clone(), s.f_next.clone())
        };
        doc.put(format!("M_{}_numerator", s.k), &num);
        doc.put(format!("M_{}_denominator", s.k), &den);
    }
    if config.verify {
        let mut by_cofactor = true;
        for (k, row) in table.rows.iter().enumerate() {
            for (l, p) in row.iter().enumerate() {
                by_cofactor &= fkl_by_cofactor(model, k, l)? == *p;
            }
        }
        doc.verdict("transfer_equals_cofactor", by_cofactor);
        doc.verdict("graph_structure", sys.check_structure().is_ok());
        let nmax = config.cap(10);
        let mut agree = true;
        for k in 0..=kmax.min(6) {
            for l in 0..=k {
                agree &= verify_series(model, k, SeriesTarget::FinalHeight(l), nmax)?.agrees();
            }
            agree &= verify_series(model, k, SeriesTarget::AllMeanders, nmax)?.agrees();
        }
        doc.verdict("meander_series_matches_path_counts", agree);
    }
    Ok(())
}

fn sym(
    config: &RunConfig,
    model: &StepModel,
    kmax: usize,
    doc: &mut Document,
) -> Result<(), Failure> {
    let report = symmetric::sym_meander_identities(model, kmax)?;
    for (k, p) in report.f_plus.iter().enumerate() {
        doc.put(format!("F_plus_{k}"), p);
    }
    for (k, p) in report.f_minus.iter().enumerate() {
        doc.put(format!("F_minus_{k}"), p);
    }
    for (k, row) in report.cof_plus.iter().enumerate() {
        for (l, p) in row.iter().enumerate() {
            doc.put(format!("F_plus_{{{k},{l}}}"), p);
        }
    }
    for (k, row) in report.cof_minus.iter().enumerate() {
        for (l, p) in row.iter().enumerate() {
            doc.put(format!("F_minus_{{{k},{l}}}"), p);
        }
    }
    for (k, p) in report.meander_numerators.iter().enumerate() {
        doc.put(format!("G_plus_{k}"), p);
    }
    doc.verdicts.extend(report.verdicts.iter().cloned());
    if config.verify {
        let nums = symmetric::sym_numerators(model);
        doc.verdict("tails_vanish", nums.is_ok());
        if let Ok(nums) = nums {
            doc.put("D_z2", &nums.d_z2);
            doc.put("D_tilde_uz2", &nums.d_tilde_uz2);
            doc.put("N_plus", &nums.n_plus);
            doc.put("N_minus", &nums.n_minus);
            doc.put("N_tilde_plus", &nums.n_tilde_plus);
            doc.put("N_tilde_minus", &nums.n_tilde_minus);
        }
        let nmax = config.cap(10);
        let mut agree = true;
        for (k, g) in report
            .meander_numerators
            .iter()
            .enumerate()
            .take(kmax.min(6) + 1)
        {
            let folded =
                rational_series(g, &report.f_plus[k + 1], Grading::TotalWeightDegree, nmax)?;
            let full = verify_series(model, k, SeriesTarget::AllMeanders, nmax)?;
            agree &= full.agrees() && folded.coeffs == full.counts;
        }
        doc.verdict("folded_meander_series_matches_path_counts", agree);
    }
    Ok(())
}

fn series(
    config: &RunConfig,
    model: &StepModel,
    k: usize,
    target: SeriesTarget,
    nmax: usize,
    doc: &mut Document,
) -> Result<(), Failure> {
    let report = verify_series(model, k, target, config.cap(nmax))?;
    for (d, c) in report.series.iter().enumerate() {
        doc.put(format!("degree_{d}"), c);
    }
    if let Some(d) = report.first_disagreement {
        doc.put("path_count_at_first_disagreement", &report.counts[d]);
        doc.put("first_disagreement", &MPoly::constant(d as i64));
    }
    doc.verdict("series_matches_path_counts", report.agrees());
    Ok(())
}

fn graph(
    config: &RunConfig,
    model: &StepModel,
    kind: GraphKind,
    doc: &mut Document,
) -> Result<(), Failure> {
    match kind {
        GraphKind::Transfer => {
            let t = TransferMatrix::from_model(model)?;
            doc.graph = Some(t.export_graph());
            doc.json = Some(t.to_json());
            if config.verify {
                doc.verdict("single_arcs_at_extremes", t.check_single_arcs().is_ok());
                doc.verdict("forced_cycle", t.check_forced_cycle().is_ok());
            }
        }
        GraphKind::Meander => {
            let sys = MeanderSystem::from_model(model)?;
            doc.graph = Some(sys.export_graph());
            doc.json = Some(serde_json::json!({
                "base": sys.base().to_json(),
                "tilde": sys.tilde().to_json(),
            }));
            if config.verify {
                doc.verdict("graph_structure", sys.check_structure().is_ok());
            }
        }
    }
    Ok(())
}
