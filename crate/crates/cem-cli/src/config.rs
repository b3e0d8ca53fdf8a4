//! Run configuration: flat key-value text with optional sections, plus the
//! command-line overrides. All keys are optional; defaults give the full
//! suite on the exact channel.
//!
//! ```text
//! # verification run
//! suites  = identities maxwell
//! channel = exact
//! seed    = 7
//! c       = 1.0
//! grid_n  = 5
//! format  = json
//!
//! [tolerances]
//! B19 = 1e-11
//! ```

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Identities,
    Maxwell,
    Balance,
    Angular,
    Boost,
    Media,
    Potentials,
    Lagrangian,
}

impl Suite {
    pub const ALL: [Suite; 8] = [
        Suite::Identities,
        Suite::Maxwell,
        Suite::Balance,
        Suite::Angular,
        Suite::Boost,
        Suite::Media,
        Suite::Potentials,
        Suite::Lagrangian,
    ];
}

impl FromStr for Suite {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "identities" => Ok(Suite::Identities),
            "maxwell" => Ok(Suite::Maxwell),
            "balance" => Ok(Suite::Balance),
            "angular" => Ok(Suite::Angular),
            "boost" => Ok(Suite::Boost),
            "media" => Ok(Suite::Media),
            "potentials" => Ok(Suite::Potentials),
            "lagrangian" => Ok(Suite::Lagrangian),
            other => Err(format!("unknown suite '{other}'")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ChannelKind {
    Exact,
    Fd2,
    Fd4,
}

impl FromStr for ChannelKind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "exact" => Ok(ChannelKind::Exact),
            "fd2" => Ok(ChannelKind::Fd2),
            "fd4" => Ok(ChannelKind::Fd4),
            other => Err(format!("unknown channel '{other}'")),
        }
    }
}

impl fmt::Display for ChannelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ChannelKind::Exact => "exact",
            ChannelKind::Fd2 => "fd2",
            ChannelKind::Fd4 => "fd4",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

impl FromStr for Format {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            other => Err(format!("unknown format '{other}'")),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RunConfig {
    pub suites: Vec<Suite>,
    /// Scenario-name filter; empty means every scenario a suite defines.
    pub scenarios: Vec<String>,
    pub channel: ChannelKind,
    pub seed: u64,
    pub c: f64,
    /// Samples per grid axis for grid-sampled checks.
    pub grid_n: usize,
    /// Finite-difference step override (otherwise the scenario's own `h`).
    pub fd_h: Option<f64>,
    pub format: Format,
    #[serde(skip)]
    pub out: Option<std::path::PathBuf>,
    /// Per-tag absolute tolerance overrides.
    pub tolerances: BTreeMap<String, f64>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            suites: Suite::ALL.to_vec(),
            scenarios: Vec::new(),
            channel: ChannelKind::Exact,
            seed: 0,
            c: 1.0,
            grid_n: 5,
            fd_h: None,
            format: Format::Json,
            out: None,
            tolerances: BTreeMap::new(),
        }
    }
}

#[derive(Debug)]
pub struct ConfigError(pub String);

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "config error: {}", self.0)
    }
}

impl std::error::Error for ConfigError {}

impl RunConfig {
    /// Parse the flat key-value format. Unknown keys and malformed lines
    /// are errors.
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let mut cfg = RunConfig::default();
        let mut suites_set = false;
        let mut section = String::new();

        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            if let Some(name) = line.strip_prefix('[') {
                let name = name.strip_suffix(']').ok_or_else(|| {
                    ConfigError(format!("line {}: unterminated section", lineno + 1))
                })?;
                section = name.trim().to_string();
                if section != "tolerances" {
                    return Err(ConfigError(format!(
                        "line {}: unknown section '[{section}]'",
                        lineno + 1
                    )));
                }
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                ConfigError(format!("line {}: expected 'key = value'", lineno + 1))
            })?;
            let key = key.trim();
            let value = value.trim();
            let err = |msg: String| ConfigError(format!("line {}: {msg}", lineno + 1));

            if section == "tolerances" {
                let tol: f64 = value
                    .parse()
                    .map_err(|_| err(format!("bad tolerance '{value}'")))?;
                if !(tol > 0.0) {
                    return Err(err("tolerances must be positive".into()));
                }
                cfg.tolerances.insert(key.to_string(), tol);
                continue;
            }

            match key {
                "suites" | "suite" => {
                    let mut suites = Vec::new();
                    for word in value.split_whitespace() {
                        if word == "all" {
                            suites.extend_from_slice(&Suite::ALL);
                        } else {
                            suites.push(word.parse().map_err(|e: String| err(e))?);
                        }
                    }
                    if suites.is_empty() {
                        return Err(err("at least one suite is required".into()));
                    }
                    suites.sort();
                    suites.dedup();
                    cfg.suites = suites;
                    suites_set = true;
                }
                "scenarios" | "scenario" => {
                    cfg.scenarios = value.split_whitespace().map(String::from).collect();
                }
                "channel" => cfg.channel = value.parse().map_err(|e: String| err(e))?,
                "seed" => {
                    cfg.seed = value
                        .parse()
                        .map_err(|_| err(format!("bad seed '{value}'")))?
                }
                "c" => {
                    cfg.c = value.parse().map_err(|_| err(format!("bad c '{value}'")))?;
                    if !(cfg.c > 0.0) {
                        return Err(err("c must be positive".into()));
                    }
                }
                "grid_n" => {
                    cfg.grid_n = value
                        .parse()
                        .map_err(|_| err(format!("bad grid_n '{value}'")))?;
                    if cfg.grid_n < 2 {
                        return Err(err("grid_n must be at least 2".into()));
                    }
                }
                "fd_h" => {
                    let h: f64 = value
                        .parse()
                        .map_err(|_| err(format!("bad fd_h '{value}'")))?;
                    if !(h > 0.0) {
                        return Err(err("fd_h must be positive".into()));
                    }
                    cfg.fd_h = Some(h);
                }
                "format" => cfg.format = value.parse().map_err(|e: String| err(e))?,
                "out" => cfg.out = Some(value.into()),
                other => return Err(err(format!("unknown key '{other}'"))),
            }
        }
        let _ = suites_set;
        Ok(cfg)
    }

    /// Absolute tolerance for a tag, with the given default.
    pub fn tol(&self, tag: &str, default: f64) -> f64 {
        self.tolerances.get(tag).copied().unwrap_or(default)
    }
}
