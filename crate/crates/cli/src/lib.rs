//! Job files, command dispatch and report rendering for the `whitney` binary.

use std::fmt::Write as _;
use std::io::Read;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;
use whitney_core::budget::{self, Budget};
use whitney_core::ring::DUAL_PREFIX;
use whitney_core::strat::{affine_view, at_infinity, AffineComponent};
use whitney_core::{
    boundary_candidates, conormal_ideal, dual_variety, minimal_primes, parse_polynomial, singular_locus,
    whitney_a_holds, whitney_a_irregular, whitney_a_stratify_with, AlgebraError, Ideal, MonomialOrder, Polynomial,
    PrimeComponent, Rational, Ring, RingContext, StratificationLevels, StratifyOptions,
};

/// Default per-pair budget for Algorithm 1 calls inside a stratification.
pub const DEFAULT_PAIR_BUDGET_SECONDS: u64 = 300;

pub const EXIT_OK: i32 = 0;
pub const EXIT_PRECONDITION: i32 = 1;
pub const EXIT_RESOURCE: i32 = 2;
pub const EXIT_INPUT: i32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("invalid job file: {0}")]
    Format(String),
    #[error("invalid job: {0}")]
    Invalid(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Gb,
    Decompose,
    Singular,
    Conormal,
    Dual,
    WhitneyPair,
    Stratify,
    Boundary,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Gb => "gb",
            Command::Decompose => "decompose",
            Command::Singular => "singular",
            Command::Conormal => "conormal",
            Command::Dual => "dual",
            Command::WhitneyPair => "whitney-pair",
            Command::Stratify => "stratify",
            Command::Boundary => "boundary",
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum OrderName {
    #[default]
    Grevlex,
    Lex,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Format {
    #[default]
    Text,
    Json,
}

/// Options that may appear in the job file; command-line flags override them.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobOptions {
    pub order: Option<OrderName>,
    /// Overall wall-clock budget.
    pub budget_seconds: Option<u64>,
    /// Budget of each Algorithm 1 pair inside `stratify` and `boundary`.
    pub pair_budget_seconds: Option<u64>,
    pub affine: Option<bool>,
    pub format: Option<Format>,
    pub seed: Option<u64>,
    pub parallel: Option<bool>,
}

/// A job: a ring, generators and options.
///
/// `subvariety` holds the generators of `Y` for `whitney-pair`, and
/// `excluded` an optional locus for the pair check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobSpec {
    pub vars: Vec<String>,
    #[serde(default)]
    pub homogenizing_var: Option<String>,
    pub generators: Vec<String>,
    #[serde(default)]
    pub subvariety: Vec<String>,
    #[serde(default)]
    pub excluded: Vec<String>,
    #[serde(default)]
    pub command: Option<Command>,
    #[serde(default)]
    pub options: JobOptions,
}

impl JobSpec {
    pub fn ring(&self) -> Result<Ring, CliError> {
        let r = match &self.homogenizing_var {
            Some(w) => RingContext::with_homogenizing(&self.vars, w),
            None => RingContext::new(&self.vars),
        };
        r.map_err(|e| CliError::Invalid(format!("vars: {e}")))
    }

    /// Checks the ring, that every generator parses and the budgets.
    pub fn validate(&self) -> Result<(), CliError> {
        if self.generators.is_empty() {
            return Err(CliError::Invalid("no generators".into()));
        }
        let ring = self.ring()?;
        for (field, list) in [("generators", &self.generators), ("subvariety", &self.subvariety), ("excluded", &self.excluded)] {
            parse_all(&ring, field, list)?;
        }
        if self.options.budget_seconds == Some(0) || self.options.pair_budget_seconds == Some(0) {
            return Err(CliError::Invalid("budgets must be positive".into()));
        }
        Ok(())
    }
}

fn parse_all(ring: &Ring, field: &str, list: &[String]) -> Result<Vec<Polynomial>, CliError> {
    list.iter()
        .enumerate()
        .map(|(i, s)| parse_polynomial(s, ring).map_err(|e| CliError::Invalid(format!("{field}[{i}]: {e}"))))
        .collect()
}

/// Parses a job document: JSON when it starts with `{`, TOML otherwise.
pub fn parse_job(text: &str) -> Result<JobSpec, CliError> {
    let spec: JobSpec = if text.trim_start().starts_with('{') {
        serde_json::from_str(text).map_err(|e| CliError::Format(e.to_string()))?
    } else {
        toml::from_str(text).map_err(|e| CliError::Format(e.to_string()))?
    };
    spec.validate()?;
    Ok(spec)
}

/// Reads a job from a file, or from standard input for `None` or `-`.
pub fn load_job(path: Option<&Path>) -> Result<JobSpec, CliError> {
    let mut text = String::new();
    match path {
        Some(p) if p != Path::new("-") => {
            text = std::fs::read_to_string(p).map_err(|source| CliError::Io { path: p.display().to_string(), source })?;
        }
        _ => {
            std::io::stdin()
                .read_to_string(&mut text)
                .map_err(|source| CliError::Io { path: "<stdin>".into(), source })?;
        }
    }
    parse_job(&text)
}

/// One prime in a report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentView {
    pub generators: Vec<String>,
    /// Projective dimension (affine dimension in the affine view).
    pub dimension: i64,
    pub certified: bool,
    pub at_infinity: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub point: Option<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Body {
    Basis { order: String, generators: Vec<String> },
    Components { components: Vec<ComponentView> },
    Conormal { ideals: Vec<ConormalView> },
    Pair { regular: bool, irregular: Vec<ComponentView>, holds: Option<bool> },
    Levels { affine: bool, levels: Vec<Vec<ComponentView>> },
    Error { message: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConormalView {
    pub source: Vec<String>,
    pub generators: Vec<String>,
    pub dimension: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub command: Command,
    pub truncated: bool,
    pub warnings: Vec<String>,
    #[serde(flatten)]
    pub body: Body,
}

/// Effective settings after merging flags into the job options.
#[derive(Clone, Copy, Debug, Default)]
pub struct Settings {
    pub order: OrderName,
    pub budget_seconds: Option<u64>,
    pub pair_budget_seconds: Option<u64>,
    pub affine: bool,
    pub format: Format,
    pub seed: Option<u64>,
    pub parallel: bool,
}

impl Settings {
    pub fn from_options(o: &JobOptions) -> Settings {
        Settings {
            order: o.order.unwrap_or_default(),
            budget_seconds: o.budget_seconds,
            pair_budget_seconds: o.pair_budget_seconds,
            affine: o.affine.unwrap_or(false),
            format: o.format.unwrap_or_default(),
            seed: o.seed,
            parallel: o.parallel.unwrap_or(false),
        }
    }
}

/// Result of [`run`]: the exit code and the report to print.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub code: i32,
    pub report: Report,
}

fn exit_code(e: &AlgebraError) -> i32 {
    match e {
        AlgebraError::ResourceLimit(_) => EXIT_RESOURCE,
        AlgebraError::Syntax { .. } | AlgebraError::UnknownVariable(_) | AlgebraError::DuplicateVariable(_) => {
            EXIT_INPUT
        }
        _ => EXIT_PRECONDITION,
    }
}

/// Runs `command` on the job under the settings' budget and seed.
pub fn run(spec: &JobSpec, command: Command, settings: &Settings) -> Outcome {
    let mut b = Budget::default();
    b.max_seconds = settings.budget_seconds;
    if let Some(seed) = settings.seed {
        b.seed = seed;
    }
    let result = budget::scoped(b, || dispatch(spec, command, settings));
    match result {
        Ok(report) => {
            let code = if report.truncated { EXIT_RESOURCE } else { EXIT_OK };
            Outcome { code, report }
        }
        Err(Failure::Input(e)) => Outcome { code: EXIT_INPUT, report: error_report(command, e.to_string()) },
        Err(Failure::Algebra(e)) => Outcome { code: exit_code(&e), report: error_report(command, e.to_string()) },
    }
}

fn error_report(command: Command, message: String) -> Report {
    Report { command, truncated: false, warnings: Vec::new(), body: Body::Error { message } }
}

enum Failure {
    Input(CliError),
    Algebra(AlgebraError),
}

impl From<CliError> for Failure {
    fn from(e: CliError) -> Self {
        Failure::Input(e)
    }
}

impl From<AlgebraError> for Failure {
    fn from(e: AlgebraError) -> Self {
        Failure::Algebra(e)
    }
}

fn dispatch(spec: &JobSpec, command: Command, settings: &Settings) -> Result<Report, Failure> {
    let ring = spec.ring()?;
    let gens = parse_all(&ring, "generators", &spec.generators)?;
    let ideal = Ideal::new(&ring, gens.clone())?;
    let report = |body| Report { command, truncated: false, warnings: Vec::new(), body };
    let stratify_options = StratifyOptions {
        pair_budget_seconds: Some(settings.pair_budget_seconds.unwrap_or(DEFAULT_PAIR_BUDGET_SECONDS)),
        parallel: settings.parallel,
    };
    match command {
        Command::Gb => {
            let ord = match settings.order {
                OrderName::Grevlex => MonomialOrder::Grevlex,
                OrderName::Lex => MonomialOrder::Lex,
            };
            let gb = ideal.groebner_basis(&ord)?;
            let generators = gb.elements().iter().map(|g| g.display_in(&ord).to_string()).collect();
            let order = match settings.order {
                OrderName::Grevlex => "grevlex",
                OrderName::Lex => "lex",
            };
            Ok(report(Body::Basis { order: order.into(), generators }))
        }
        Command::Decompose => {
            let primes = minimal_primes(&ideal)?;
            Ok(report(Body::Components { components: component_list(&primes, settings.affine)? }))
        }
        Command::Singular => {
            let primes = minimal_primes(&ideal)?;
            let sing = singular_locus(&primes)?;
            Ok(report(Body::Components { components: component_list(&sing, settings.affine)? }))
        }
        Command::Conormal => {
            let mut ideals = Vec::new();
            for p in minimal_primes(&ideal)? {
                let c = conormal_ideal(&p)?;
                ideals.push(ConormalView {
                    source: canonical_generators(p.ideal())?,
                    generators: canonical_generators(c.ideal())?,
                    dimension: c.ideal().dimension()?,
                });
            }
            Ok(report(Body::Conormal { ideals }))
        }
        Command::Dual => {
            let mut components = Vec::new();
            for p in minimal_primes(&ideal)? {
                let d = dual_variety(&p)?;
                let d = if settings.affine { affine_dual(&d, &ring)? } else { d };
                components.push(ComponentView {
                    generators: canonical_generators(&d)?,
                    dimension: d.dimension()? - if settings.affine { 0 } else { 1 },
                    certified: p.is_certified(),
                    at_infinity: false,
                    point: None,
                });
            }
            sort_views(&mut components);
            Ok(report(Body::Components { components }))
        }
        Command::WhitneyPair => {
            if spec.subvariety.is_empty() {
                return Err(CliError::Invalid("whitney-pair needs `subvariety` generators".into()).into());
            }
            let x = single_prime(&ideal, "generators")?;
            let y_ideal = Ideal::new(&ring, parse_all(&ring, "subvariety", &spec.subvariety)?)?;
            let y = single_prime(&y_ideal, "subvariety")?;
            let rep = whitney_a_irregular(&x, &y)?;
            let holds = if spec.excluded.is_empty() {
                None
            } else {
                let excluded = Ideal::new(&ring, parse_all(&ring, "excluded", &spec.excluded)?)?;
                Some(whitney_a_holds(&x, &y, &excluded)?)
            };
            let irregular = component_list(&rep.irregular_primes, settings.affine)?;
            Ok(report(Body::Pair { regular: rep.regular, irregular, holds }))
        }
        Command::Stratify => {
            let levels = whitney_a_stratify_with(&ideal, &stratify_options)?;
            levels_report(command, &levels, settings.affine)
        }
        Command::Boundary => {
            let rep = boundary_candidates(&gens, &stratify_options)?;
            let mut levels = Vec::new();
            for level in &rep.levels {
                levels.push(affine_list(level)?);
            }
            Ok(Report {
                command,
                truncated: rep.projective.truncated,
                warnings: rep.projective.warnings.clone(),
                body: Body::Levels { affine: true, levels },
            })
        }
    }
}

fn single_prime(ideal: &Ideal, field: &str) -> Result<PrimeComponent, Failure> {
    let mut primes = minimal_primes(ideal)?;
    if primes.len() != 1 {
        return Err(AlgebraError::Precondition(format!("`{field}` must define an irreducible variety, found {} components", primes.len())).into());
    }
    Ok(primes.remove(0))
}

fn levels_report(command: Command, levels: &StratificationLevels, affine: bool) -> Result<Report, Failure> {
    let mut out = Vec::new();
    for level in &levels.levels {
        out.push(if affine { affine_list(&affine_view(level)?)? } else { component_list(level, false)? });
    }
    Ok(Report {
        command,
        truncated: levels.truncated,
        warnings: levels.warnings.clone(),
        body: Body::Levels { affine, levels: out },
    })
}

/// Reduced grevlex basis as strings.
pub fn canonical_generators(ideal: &Ideal) -> Result<Vec<String>, AlgebraError> {
    Ok(ideal.gb()?.elements().iter().map(|g| g.to_string()).collect())
}

fn component_list(primes: &[PrimeComponent], affine: bool) -> Result<Vec<ComponentView>, AlgebraError> {
    if affine {
        return affine_list(&affine_view(primes)?);
    }
    let mut out = Vec::new();
    for p in primes {
        out.push(ComponentView {
            generators: canonical_generators(p.ideal())?,
            dimension: p.projective_dimension(),
            certified: p.is_certified(),
            at_infinity: at_infinity(p)?,
            point: None,
        });
    }
    sort_views(&mut out);
    Ok(out)
}

fn affine_list(comps: &[AffineComponent]) -> Result<Vec<ComponentView>, AlgebraError> {
    let mut out = Vec::new();
    for c in comps {
        out.push(ComponentView {
            generators: canonical_generators(&c.ideal)?,
            dimension: c.dimension(),
            certified: c.projective.is_certified(),
            at_infinity: false,
            point: c.point.as_ref().map(|pt| pt.iter().map(Rational::to_string).collect()),
        });
    }
    sort_views(&mut out);
    Ok(out)
}

/// Descending dimension, then lexicographic on the generator text.
fn sort_views(v: &mut [ComponentView]) {
    v.sort_by(|a, b| b.dimension.cmp(&a.dimension).then_with(|| a.generators.cmp(&b.generators)));
}

/// Sets the dual of the homogenizing variable to 1 and renames the other
/// duals `v_0, v_1, ...` in ring order.
fn affine_dual(dual: &Ideal, primal: &Ring) -> Result<Ideal, AlgebraError> {
    let w = primal
        .homogenizing()
        .ok_or_else(|| AlgebraError::NotHomogenizing("the affine dual needs a homogenizing variable".into()))?;
    let ring = dual.ring();
    let wd = ring.var(&format!("{DUAL_PREFIX}{}", primal.name(w)))?;
    let names: Vec<String> = (0..ring.nvars() - 1).map(|k| format!("v_{k}")).collect();
    let target = RingContext::new(&names)?;
    let map: Vec<usize> = (0..ring.nvars()).map(|i| if i < wd { i } else if i == wd { 0 } else { i - 1 }).collect();
    let one = Rational::from_integer(1.into());
    Ideal::new(&target, dual.generators().iter().map(|g| g.evaluate_var(wd, &one).map_ring(&target, &map)))
}

/// Renders a report as text or JSON.
pub fn write_report(report: &Report, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(report).expect("serializable") + "\n",
        Format::Text => text_report(report),
    }
}

fn ideal_text(gens: &[String]) -> String {
    format!("<{}>", gens.join(", "))
}

fn component_line(c: &ComponentView) -> String {
    let mut s = format!("  {}  dim {}", ideal_text(&c.generators), c.dimension);
    if let Some(pt) = &c.point {
        let _ = write!(s, "  point ({})", pt.join(", "));
    }
    if c.at_infinity {
        s.push_str("  at infinity");
    }
    if !c.certified {
        s.push_str("  (not certified prime)");
    }
    s
}

fn text_report(report: &Report) -> String {
    let mut out = String::new();
    match &report.body {
        Body::Basis { order, generators } => {
            let _ = writeln!(out, "reduced Groebner basis ({order}):");
            for g in generators {
                let _ = writeln!(out, "  {g}");
            }
        }
        Body::Components { components } => {
            let _ = writeln!(out, "{} component(s):", components.len());
            for c in components {
                let _ = writeln!(out, "{}", component_line(c));
            }
        }
        Body::Conormal { ideals } => {
            for c in ideals {
                let _ = writeln!(out, "C({}):  dim {}", ideal_text(&c.source), c.dimension);
                for g in &c.generators {
                    let _ = writeln!(out, "  {g}");
                }
            }
        }
        Body::Pair { regular, irregular, holds } => {
            let _ = writeln!(out, "regular: {regular}");
            let _ = writeln!(out, "irregular primes:");
            for c in irregular {
                let _ = writeln!(out, "{}", component_line(c));
            }
            if let Some(h) = holds {
                let _ = writeln!(out, "condition (a) holds off the excluded locus: {h}");
            }
        }
        Body::Levels { affine, levels } => {
            let tag = if *affine { "F" } else { "L" };
            for (i, level) in levels.iter().enumerate() {
                let _ = writeln!(out, "{tag}_{i}:");
                for c in level {
                    let _ = writeln!(out, "{}", component_line(c));
                }
            }
        }
        Body::Error { message } => {
            let _ = writeln!(out, "error: {message}");
        }
    }
    if report.truncated {
        out.push_str("output truncated: resource budget exceeded\n");
    }
    for w in &report.warnings {
        let _ = writeln!(out, "warning: {w}");
    }
    out
}
