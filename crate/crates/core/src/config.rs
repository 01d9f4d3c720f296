//! Experiment configuration: the JSON file format, flag merging and validation.

use std::path::{Path, PathBuf};
use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::adic::{embed_poly, AdicInt};
use crate::basis::Basis;
use crate::duality::Character;
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::multipliers::MultiplierKind;
use crate::torus::{TorusPolynomial, TrigTerm};
use crate::weyl::Source;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum CommandName {
    Gauss,
    Multiplier,
    Weyl,
    Average,
    Limit,
    Compare,
    Torus,
    Wiener,
}

impl CommandName {
    pub fn as_str(self) -> &'static str {
        match self {
            CommandName::Gauss => "gauss",
            CommandName::Multiplier => "multiplier",
            CommandName::Weyl => "weyl",
            CommandName::Average => "average",
            CommandName::Limit => "limit",
            CommandName::Compare => "compare",
            CommandName::Torus => "torus",
            CommandName::Wiener => "wiener",
        }
    }
}

/// Everything a run needs. Strings keep the textual grammars so that the
/// config echoed in a JSON summary parses back to the same value.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    pub command: Option<CommandName>,
    /// Basis spec, e.g. `const:2` or `cycle:2,3,5@offset:-1`.
    pub basis: String,
    /// Coefficients of `ρ`, constant term first.
    pub rho: String,
    pub r: Option<i64>,
    pub characters: Vec<String>,
    #[serde(rename = "N")]
    pub n: Vec<u64>,
    pub source: Source,
    pub kind: Option<MultiplierKind>,
    pub q: Option<u64>,
    pub psi: String,
    pub beta: String,
    pub terms: Vec<String>,
    pub x: Vec<f64>,
    pub r_max: Option<i64>,
    pub function: Option<PathBuf>,
    pub output: Option<PathBuf>,
    pub limits: Limits,
    pub threads: Option<usize>,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            command: None,
            basis: "const:2".into(),
            rho: "0,0,1".into(),
            r: None,
            characters: Vec::new(),
            n: Vec::new(),
            source: Source::Primes,
            kind: None,
            q: None,
            psi: "0,0,1".into(),
            beta: format!("0,0,{}", std::f64::consts::SQRT_2),
            terms: vec!["1=1,0".into()],
            x: Vec::new(),
            r_max: None,
            function: None,
            output: None,
            limits: Limits::default(),
            threads: None,
        }
    }
}

/// Flag values; `None` leaves the file (or default) value in place.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Overrides {
    pub command: Option<CommandName>,
    pub basis: Option<String>,
    pub rho: Option<String>,
    pub r: Option<i64>,
    pub characters: Option<Vec<String>>,
    pub n: Option<Vec<u64>>,
    pub source: Option<Source>,
    pub kind: Option<MultiplierKind>,
    pub q: Option<u64>,
    pub psi: Option<String>,
    pub beta: Option<String>,
    pub terms: Option<Vec<String>>,
    pub x: Option<Vec<f64>>,
    pub r_max: Option<i64>,
    pub function: Option<PathBuf>,
    pub output: Option<PathBuf>,
    pub max_n: Option<u64>,
    pub max_modulus: Option<u64>,
    pub max_characters: Option<u64>,
    pub threads: Option<usize>,
}

impl ExperimentConfig {
    /// Accepts a bare config object or a report summary carrying one under `config`.
    pub fn from_json(text: &str) -> Result<Self> {
        let err = |e: serde_json::Error| Error::invalid("config", e.to_string());
        let mut value: serde_json::Value = serde_json::from_str(text).map_err(err)?;
        if let Some(inner) = value.get_mut("config").filter(|v| v.is_object()) {
            value = inner.take();
        }
        serde_json::from_value(value).map_err(err)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::invalid("config", format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn apply(mut self, o: Overrides) -> Self {
        macro_rules! set {
            ($($f:ident),*) => { $( if let Some(v) = o.$f { self.$f = v; } )* };
        }
        macro_rules! set_opt {
            ($($f:ident),*) => { $( if o.$f.is_some() { self.$f = o.$f; } )* };
        }
        set!(basis, rho, characters, n, source, psi, beta, terms, x);
        set_opt!(command, r, kind, q, r_max, function, output, threads);
        if let Some(v) = o.max_n {
            self.limits.max_n = v;
        }
        if let Some(v) = o.max_modulus {
            self.limits.max_modulus = v;
        }
        if let Some(v) = o.max_characters {
            self.limits.max_characters = v;
        }
        self
    }

    /// Multiplier kind: explicit, else the one matching the source.
    pub fn effective_kind(&self) -> MultiplierKind {
        self.kind.unwrap_or(self.source.kind())
    }
}

/// Loads the optional config file and applies flag overrides on top.
pub fn parse_config(path: Option<&Path>, overrides: Overrides) -> Result<ExperimentConfig> {
    let base = match path {
        Some(p) => ExperimentConfig::load(p)?,
        None => ExperimentConfig::default(),
    };
    Ok(base.apply(overrides))
}

pub fn parse_integers(field: &str, s: &str) -> Result<Vec<BigInt>> {
    let out: Vec<BigInt> = s
        .split(',')
        .filter(|v| !v.trim().is_empty())
        .map(|v| BigInt::from_str(v.trim()).map_err(|_| Error::invalid(field, format!("bad integer {v:?}"))))
        .collect::<Result<_>>()?;
    if out.is_empty() {
        return Err(Error::invalid(field, "needs at least one coefficient"));
    }
    Ok(out)
}

pub fn parse_i64s(field: &str, s: &str) -> Result<Vec<i64>> {
    s.split(',')
        .filter(|v| !v.trim().is_empty())
        .map(|v| v.trim().parse().map_err(|_| Error::invalid(field, format!("bad integer {v:?}"))))
        .collect()
}

/// Typed, validated view of an [`ExperimentConfig`].
#[derive(Clone, Debug)]
pub struct Validated {
    pub basis: Basis,
    pub rho: Vec<BigInt>,
    pub characters: Vec<Character>,
    /// Working precision: `--r`, else the highest character level.
    pub r: Option<i64>,
}

impl Validated {
    pub fn rho_at(&self, r: i64) -> Result<Vec<AdicInt>> {
        embed_poly(&self.rho, &self.basis, r)
    }

    pub fn require_r(&self) -> Result<i64> {
        self.r.ok_or_else(|| Error::invalid("r", "a precision (--r) or a character (--char) is required"))
    }
}

pub fn validate(config: &ExperimentConfig) -> Result<Validated> {
    let basis: Basis = config.basis.parse().map_err(|e: Error| Error::invalid("basis", e.to_string().replace("invalid basis: ", "")))?;
    let rho = parse_integers("rho", &config.rho)?;
    let characters = config
        .characters
        .iter()
        .map(|c| Character::parse(c, &basis).map_err(|e| Error::invalid("characters", e.to_string())))
        .collect::<Result<Vec<_>>>()?;
    let top = characters.iter().map(Character::level).max();
    let r = match (config.r, top) {
        (Some(r), Some(t)) if r < t => {
            return Err(Error::invalid("r", format!("precision {r} is below character level {t}")));
        }
        (Some(r), _) => Some(r),
        (None, t) => t,
    };
    if let Some(r) = r {
        basis.check_precision(r).map_err(|e| Error::invalid("r", e.to_string()))?;
    }
    if let Some(&n) = config.n.iter().find(|&&n| n > config.limits.max_n) {
        return Err(Error::invalid("N", format!("{n} exceeds the budget of {}", config.limits.max_n)));
    }
    if config.threads == Some(0) {
        return Err(Error::invalid("threads", "must be at least 1"));
    }
    Ok(Validated { basis, rho, characters, r })
}

pub fn parse_terms(config: &ExperimentConfig) -> Result<Vec<TrigTerm>> {
    config.terms.iter().map(|t| TrigTerm::parse(t)).collect()
}

pub fn parse_beta(config: &ExperimentConfig) -> Result<TorusPolynomial> {
    TorusPolynomial::parse(&config.beta)
}
