//! Command-line front end: flag parsing and the subcommand runners.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser};
use num_bigint::BigInt;
use num_traits::Zero;
use serde_json::json;

use crate::adic::embed_poly;
use crate::config::{
    parse_beta, parse_config, parse_i64s, parse_terms, validate, CommandName, ExperimentConfig, Overrides, Validated,
};
use crate::duality::reduce_phase;
use crate::ergodic::{compare, empirical_average, predicted_limit, CylinderFunction, FunctionFile};
use crate::error::{Error, Result};
use crate::multipliers::{complete_exp_sum, multiplier, wiener_energy, MultiplierKind};
use crate::report::{complex_json, fmt_complex, fmt_real, sci, Report};
use crate::torus::{torus_average, torus_mean};
use crate::weyl::adic_weyl_sum;

#[derive(Debug, Parser)]
#[command(name = "adicergo", version, about = "Ergodic averages of polynomials in primes on a-adic integers")]
pub struct Cli {
    /// Subcommand; may instead come from the config file.
    #[arg(value_enum)]
    pub command: Option<CommandName>,
    #[command(flatten)]
    pub flags: Flags,
}

#[derive(Debug, Default, Args)]
pub struct Flags {
    /// JSON config (or a previous run's JSON summary); flags override it.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// `const:<c>`, `cycle:<c0>,<c1>,..` or `list:<a0>,..`, optionally `@offset:<k>`.
    #[arg(long, allow_hyphen_values = true)]
    pub basis: Option<String>,
    /// Coefficients of ρ, constant term first.
    #[arg(long, allow_hyphen_values = true)]
    pub rho: Option<String>,
    /// Working precision.
    #[arg(long, allow_hyphen_values = true)]
    pub r: Option<i64>,
    /// Character `<l>/<A>` or `<l>@level:<r>`; repeatable.
    #[arg(long = "char", value_name = "CHAR")]
    pub chars: Option<Vec<String>>,
    /// Comma-separated N schedule; `1e6` notation is accepted.
    #[arg(long = "N", alias = "n", value_name = "N,..")]
    pub n: Option<String>,
    /// `primes` or `naturals`.
    #[arg(long)]
    pub source: Option<String>,
    /// `prime` or `natural`; defaults to the kind matching the source.
    #[arg(long)]
    pub kind: Option<String>,
    /// Modulus of the complete exponential sum.
    #[arg(long)]
    pub q: Option<u64>,
    /// Integer coefficients of ψ, constant term first.
    #[arg(long, allow_hyphen_values = true)]
    pub psi: Option<String>,
    /// Real coefficients of the torus polynomial; `;` separates components.
    #[arg(long, allow_hyphen_values = true)]
    pub beta: Option<String>,
    /// Trigonometric term `<m1,..>=<re>,<im>`; repeatable.
    #[arg(long = "term", allow_hyphen_values = true)]
    pub terms: Option<Vec<String>>,
    /// Torus evaluation point, comma-separated.
    #[arg(long, allow_hyphen_values = true)]
    pub x: Option<String>,
    /// Highest level for `wiener`
    #[arg(long = "r-max", allow_hyphen_values = true)]
    pub r_max: Option<i64>,
    /// Cylinder function file.
    #[arg(long)]
    pub function: Option<PathBuf>,
    /// Output base name; writes `<out>.csv` and `<out>.json`.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Worker threads; results do not depend on it
    #[arg(long)]
    pub threads: Option<usize>,
    /// Budget for N and q
    #[arg(long = "max-n", env = "ADICERGO_MAX_N")]
    pub max_n: Option<u64>,
    /// Budget for moduli A(r) and D
    #[arg(long = "max-modulus")]
    pub max_modulus: Option<u64>,
    /// Budget for characters enumerated in one run
    #[arg(long = "max-characters")]
    pub max_characters: Option<u64>,
}

fn parse_schedule(s: &str) -> Result<Vec<u64>> {
    s.split(',')
        .map(str::trim)
        .filter(|v| !v.is_empty())
        .map(|v| {
            let bad = || Error::invalid("N", format!("bad value {v:?}"));
            v.parse::<u64>().or_else(|_| {
                let f: f64 = v.parse().map_err(|_| bad())?;
                if f >= 0.0 && f.fract() == 0.0 && f <= (1u64 << 53) as f64 {
                    Ok(f as u64)
                } else {
                    Err(bad())
                }
            })
        })
        .collect()
}

fn parse_reals(field: &str, s: &str) -> Result<Vec<f64>> {
    s.split(',')
        .map(str::trim)
        .filter(|v| !v.is_empty())
        .map(|v| v.parse::<f64>().map_err(|_| Error::invalid(field, format!("bad number {v:?}"))))
        .collect()
}

impl Cli {
    pub fn into_config(self) -> Result<ExperimentConfig> {
        let f = self.flags;
        let overrides = Overrides {
            command: self.command,
            basis: f.basis,
            rho: f.rho,
            r: f.r,
            characters: f.chars,
            n: f.n.as_deref().map(parse_schedule).transpose()?,
            source: f.source.map(|s| s.parse()).transpose()?,
            kind: f.kind.map(|s| s.parse()).transpose()?,
            q: f.q,
            psi: f.psi,
            beta: f.beta,
            terms: f.terms,
            x: f.x.as_deref().map(|s| parse_reals("x", s)).transpose()?,
            r_max: f.r_max,
            function: f.function,
            output: f.out,
            max_n: f.max_n,
            max_modulus: f.max_modulus,
            max_characters: f.max_characters,
            threads: f.threads,
        };
        parse_config(f.config.as_deref(), overrides)
    }
}

/// Parses command-line arguments (program name first) into a config.
pub fn config_from_args<I, T>(args: I) -> std::result::Result<ExperimentConfig, CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = Cli::try_parse_from(args).map_err(CliError::Usage)?;
    cli.into_config().map_err(CliError::Run)
}

#[derive(Debug)]
pub enum CliError {
    Usage(clap::Error),
    Run(Error),
}

/// Validates the config and runs its subcommand, on a dedicated pool when `threads` is set.
pub fn run_command(config: &ExperimentConfig) -> Result<Report> {
    let command = config.command.ok_or_else(|| Error::invalid("command", "no subcommand given"))?;
    let v = validate(config)?;
    match config.threads {
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .map_err(|e| Error::invalid("threads", e.to_string()))?
            .install(|| dispatch(command, config, &v)),
        None => dispatch(command, config, &v),
    }
}

fn dispatch(command: CommandName, config: &ExperimentConfig, v: &Validated) -> Result<Report> {
    match command {
        CommandName::Gauss => run_gauss(config),
        CommandName::Multiplier => run_multiplier(config, v),
        CommandName::Weyl => run_weyl(config, v),
        CommandName::Average => run_average(config, v),
        CommandName::Limit => run_limit(config, v),
        CommandName::Compare => run_compare(config, v),
        CommandName::Torus => run_torus(config),
        CommandName::Wiener => run_wiener(config, v),
    }
}

fn degree(rho: &[BigInt]) -> usize {
    rho.iter().rposition(|c| !c.is_zero()).unwrap_or(0)
}

fn degree_notice(report: &mut Report, v: &Validated, kind: MultiplierKind) {
    if kind == MultiplierKind::Prime && degree(&v.rho) < 2 {
        report.notices.push(format!(
            "notice: ρ has degree {} < 2; the prime multiplier is still computed, but the convergence theorems assume degree ≥ 2",
            degree(&v.rho)
        ));
    }
}

fn non_increasing(v: &[f64]) -> bool {
    v.windows(2).all(|w| w[1] <= w[0])
}

fn run_gauss(config: &ExperimentConfig) -> Result<Report> {
    let q = config.q.ok_or_else(|| Error::invalid("q", "required"))?;
    if q == 0 {
        return Err(Error::invalid("q", "must be positive"));
    }
    if q > config.limits.max_n {
        return Err(Error::invalid("q", format!("{q} exceeds the budget of {}", config.limits.max_n)));
    }
    let psi = parse_i64s("psi", &config.psi)?;
    let s = complete_exp_sum(&psi, q);
    let mut report = Report::new(CommandName::Gauss, config, &["q", "re", "im", "abs"]);
    report.rows.push(vec![q.to_string(), sci(s.re), sci(s.im), sci(s.norm())]);
    report.lines.push(format!("S = {}  |S| = {}  sqrt(q) = {}", fmt_complex(s), s.norm(), (q as f64).sqrt()));
    report.results = json!({ "q": q, "psi": psi, "sum": complex_json(s), "sqrt_q": (q as f64).sqrt() });
    Ok(report)
}

fn run_multiplier(config: &ExperimentConfig, v: &Validated) -> Result<Report> {
    if v.characters.is_empty() {
        return Err(Error::invalid("characters", "at least one --char is required"));
    }
    let kind = config.effective_kind();
    let mut report = Report::new(CommandName::Multiplier, config, &["character", "D", "re", "im", "abs"]);
    degree_notice(&mut report, v, kind);
    let mut entries = Vec::new();
    for chi in &v.characters {
        let rho = v.rho_at(chi.level())?;
        let phase = reduce_phase(chi, &rho)?;
        let m = multiplier(&phase, kind)?;
        report.rows.push(vec![chi.to_string(), m.modulus.to_string(), sci(m.value.re), sci(m.value.im), sci(m.value.norm())]);
        report.lines.push(format!("{chi}\tD={}\t{}", m.modulus, fmt_complex(m.value)));
        entries.push(json!({
            "character": chi.to_string(),
            "D": m.modulus,
            "constant": phase.constant().to_string(),
            "value": complex_json(m.value),
        }));
    }
    report.results = json!({ "kind": kind, "multipliers": entries });
    Ok(report)
}

fn run_weyl(config: &ExperimentConfig, v: &Validated) -> Result<Report> {
    let chi = match v.characters.as_slice() {
        [chi] => chi,
        _ => return Err(Error::invalid("characters", "weyl takes exactly one --char")),
    };
    let kind = config.effective_kind();
    let mut report = Report::new(CommandName::Weyl, config, &["N", "re", "im", "abs_err"]);
    degree_notice(&mut report, v, kind);
    let rho = v.rho_at(chi.level())?;
    let m = multiplier(&reduce_phase(chi, &rho)?, kind)?;
    let mut series = Vec::new();
    let mut errors = Vec::new();
    for &n in &config.n {
        let s = adic_weyl_sum(chi, &rho, n, config.source, &config.limits)?;
        let err = (s - m.value).norm();
        report.rows.push(vec![n.to_string(), sci(s.re), sci(s.im), sci(err)]);
        report.lines.push(format!("N={n}\t{}\t|S-m|={}", fmt_complex(s), fmt_real(err)));
        series.push(json!({ "N": n, "re": s.re, "im": s.im, "abs_err": err }));
        errors.push(err);
    }
    report.results = json!({
        "character": chi.to_string(),
        "kind": kind,
        "multiplier": complex_json(m.value),
        "D": m.modulus,
        "series": series,
        "abs_err_non_increasing": non_increasing(&errors),
    });
    Ok(report)
}

/// The function for `average`, `limit` and `compare`: a file, else the sum of the given characters.
fn load_function(config: &ExperimentConfig, v: &Validated) -> Result<CylinderFunction> {
    if let Some(path) = &config.function {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        let file: FunctionFile =
            serde_json::from_str(&text).map_err(|e| Error::invalid("function", e.to_string()))?;
        let f = CylinderFunction::try_from(&file)?;
        if config.r.is_some_and(|r| r != f.precision()) {
            return Err(Error::invalid("r", format!("function file has precision {}", f.precision())));
        }
        return Ok(f);
    }
    if v.characters.is_empty() {
        return Err(Error::invalid("function", "give --function or at least one --char"));
    }
    let r = v.require_r()?;
    let mut acc: Option<CylinderFunction> = None;
    for chi in &v.characters {
        let g = CylinderFunction::character(&chi.raise(r)?, config.limits.max_modulus)?;
        acc = Some(match acc {
            None => g,
            Some(f) => f.add(&g)?,
        });
    }
    Ok(acc.expect("non-empty"))
}

fn function_rows(report: &mut Report, f: &CylinderFunction) {
    for (x, z) in f.values().iter().enumerate() {
        report.rows.push(vec![x.to_string(), sci(z.re), sci(z.im)]);
    }
}

fn sup(f: &CylinderFunction) -> f64 {
    f.values().iter().map(|z| z.norm()).fold(0.0, f64::max)
}

fn run_average(config: &ExperimentConfig, v: &Validated) -> Result<Report> {
    let n = match config.n.as_slice() {
        [n] => *n,
        _ => return Err(Error::invalid("N", "average takes exactly one N")),
    };
    let f = load_function(config, v)?;
    let rho = embed_poly(&v.rho, f.basis(), f.precision())?;
    let avg = empirical_average(&f, &rho, n, config.source, &config.limits)?;
    let mut report = Report::new(CommandName::Average, config, &["x", "re", "im"]);
    function_rows(&mut report, &avg);
    report.lines.push(format!("A_N f on {} points, N = {n}, sup |A_N f| = {}", avg.modulus(), sup(&avg)));
    report.results = json!({ "N": n, "source": config.source, "average": FunctionFile::from(&avg) });
    Ok(report)
}

fn run_limit(config: &ExperimentConfig, v: &Validated) -> Result<Report> {
    let kind = config.effective_kind();
    let f = load_function(config, v)?;
    let rho = embed_poly(&v.rho, f.basis(), f.precision())?;
    let mut report = Report::new(CommandName::Limit, config, &["x", "re", "im"]);
    degree_notice(&mut report, v, kind);
    let lim = predicted_limit(&f, &rho, kind, &config.limits)?;
    function_rows(&mut report, &lim);
    report.lines.push(format!("limit on {} points ({kind} multipliers), sup = {}", lim.modulus(), sup(&lim)));
    report.results = json!({ "kind": kind, "limit": FunctionFile::from(&lim) });
    Ok(report)
}

fn run_compare(config: &ExperimentConfig, v: &Validated) -> Result<Report> {
    let f = load_function(config, v)?;
    let rho = embed_poly(&v.rho, f.basis(), f.precision())?;
    let mut report = Report::new(CommandName::Compare, config, &["N", "sup_norm", "l2_norm"]);
    degree_notice(&mut report, v, config.source.kind());
    let cmp = compare(&f, &rho, &config.n, config.source, &config.limits)?;
    for ((n, s), l) in cmp.n.iter().zip(&cmp.sup_norm).zip(&cmp.l2_norm) {
        report.rows.push(vec![n.to_string(), sci(*s), sci(*l)]);
        report.lines.push(format!("N={n}\tsup={}\tl2={}", fmt_real(*s), fmt_real(*l)));
    }
    report.lines.push(format!("sup non-increasing: {}, l2 non-increasing: {}", cmp.sup_non_increasing, cmp.l2_non_increasing));
    report.results = serde_json::to_value(&cmp).map_err(|e| Error::Io(e.to_string()))?;
    Ok(report)
}

fn run_torus(config: &ExperimentConfig) -> Result<Report> {
    let poly = parse_beta(config)?;
    let terms = parse_terms(config)?;
    let x = if config.x.is_empty() { vec![0.0; poly.dimension()] } else { config.x.clone() };
    let mean = torus_mean(&terms);
    let mut report = Report::new(CommandName::Torus, config, &["N", "re", "im", "abs_err"]);
    let mut series = Vec::new();
    let mut errors = Vec::new();
    for &n in &config.n {
        let a = torus_average(&terms, &poly, &x, n, config.source, &config.limits)?;
        let err = (a - mean).norm();
        report.rows.push(vec![n.to_string(), sci(a.re), sci(a.im), sci(err)]);
        report.lines.push(format!("N={n}\t{}\t|avg-mean|={}", fmt_complex(a), fmt_real(err)));
        series.push(json!({ "N": n, "re": a.re, "im": a.im, "abs_err": err }));
        errors.push(err);
    }
    report.results = json!({
        "x": x,
        "mean": complex_json(mean),
        "series": series,
        "abs_err_non_increasing": non_increasing(&errors),
    });
    Ok(report)
}

fn run_wiener(config: &ExperimentConfig, v: &Validated) -> Result<Report> {
    let r_max = config.r_max.ok_or_else(|| Error::invalid("r_max", "required"))?;
    v.basis.check_precision(r_max).map_err(|e| Error::invalid("r_max", e.to_string()))?;
    let kind = config.effective_kind();
    let mut report = Report::new(CommandName::Wiener, config, &["r", "A_r", "W_r"]);
    degree_notice(&mut report, v, kind);
    let rho = v.rho_at(r_max)?;
    let points = wiener_energy(&v.basis, &rho, r_max, kind, config.limits.max_characters)?;
    for p in &points {
        report.rows.push(vec![p.r.to_string(), p.modulus.to_string(), sci(p.energy)]);
        report.lines.push(format!("r={}\tA_r={}\tW_r={}", p.r, p.modulus, p.energy));
    }
    let tail: Vec<f64> = points.iter().filter(|p| p.r >= 1).map(|p| p.energy).collect();
    let strictly = tail.windows(2).all(|w| w[1] < w[0]);
    report.results = json!({ "kind": kind, "points": points, "strictly_decreasing_from_r1": strictly });
    Ok(report)
}
