use std::collections::BTreeMap;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};

use qfun::qderiv::DEFAULT_GRID_POINTS;
use qfun::{ClaimId, OrderRange, Spacing};

pub const CONFIG_ENV: &str = "QFUN_CONFIG";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Evaluate a function at --x for each --q
    Eval,
    /// Locate the positive zero of the q-digamma function
    Zero,
    /// Run the selected claims
    Verify,
    /// Tabulate a function over the x grid
    Scan,
    /// Run every claim over the default q sweep
    All,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Eval => "eval",
            Command::Zero => "zero",
            Command::Verify => "verify",
            Command::Scan => "scan",
            Command::All => "all",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Function {
    Gamma,
    LnGamma,
    Digamma,
    Polygamma,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "qfun", version, about = "q-gamma, q-digamma and monotonicity claim verification")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub flags: Flags,
}

/// Flags as typed on the command line; unset ones may come from the config file.
#[derive(Debug, Clone, Default, Args)]
pub struct Flags {
    #[arg(long = "fn", global = true, value_enum)]
    pub function: Option<Function>,
    /// q parameter (repeatable)
    #[arg(long, global = true)]
    pub q: Vec<f64>,
    /// single evaluation point; overrides the grid
    #[arg(long, global = true)]
    pub x: Option<f64>,
    #[arg(long, global = true)]
    pub x_min: Option<f64>,
    #[arg(long, global = true)]
    pub x_max: Option<f64>,
    #[arg(long, global = true)]
    pub points: Option<usize>,
    /// linear | geometric
    #[arg(long, global = true)]
    pub spacing: Option<String>,
    /// claim id (repeatable)
    #[arg(long, global = true)]
    pub claim: Vec<String>,
    #[arg(long, global = true)]
    pub a: Option<f64>,
    #[arg(long, global = true)]
    pub b: Option<f64>,
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub alpha: Option<f64>,
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub beta: Option<f64>,
    /// highest derivative order or index
    #[arg(long, global = true)]
    pub n_max: Option<usize>,
    /// order range "n", "lo..hi" or "lo..=hi"; overrides --n-max
    #[arg(long, global = true)]
    pub orders: Option<String>,
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    #[arg(long, global = true)]
    pub rel_tol: Option<f64>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// accept q within 1e-4 of 1
    #[arg(long, global = true)]
    pub allow_near_one: bool,
    /// base point of the ratio inequality (c-555)
    #[arg(long, global = true)]
    pub x1: Option<f64>,
    /// second coordinate for two-point claims (c-ineq-1, gamma-lcm-superadd)
    #[arg(long, global = true)]
    pub y: Option<f64>,
}

#[derive(Debug)]
pub struct ConfigError(pub String);

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for ConfigError {}

fn bad(msg: impl Into<String>) -> ConfigError {
    ConfigError(msg.into())
}

/// Parses `key = value` lines; `#` starts a comment.
pub fn parse_config_file(text: &str) -> Result<BTreeMap<String, String>, ConfigError> {
    let mut map = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| bad(format!("config line {}: expected key = value", i + 1)))?;
        map.insert(k.trim().replace('_', "-"), v.trim().to_string());
    }
    Ok(map)
}

fn parse<T: FromStr>(key: &str, v: &str) -> Result<T, ConfigError> {
    v.parse()
        .map_err(|_| bad(format!("config key {key}: cannot parse {v:?}")))
}

fn parse_list<T: FromStr>(key: &str, v: &str) -> Result<Vec<T>, ConfigError> {
    v.split(',').map(|s| parse(key, s.trim())).collect()
}

impl Flags {
    /// Fills flags left unset on the command line from config-file entries.
    pub fn merge_file(&mut self, file: &BTreeMap<String, String>) -> Result<(), ConfigError> {
        fn fill<T: FromStr>(slot: &mut Option<T>, key: &str, v: &str) -> Result<(), ConfigError> {
            if slot.is_none() {
                *slot = Some(parse(key, v)?);
            }
            Ok(())
        }
        for (key, v) in file {
            match key.as_str() {
                "fn" => {
                    if self.function.is_none() {
                        self.function = Some(
                            Function::from_str(v, true).map_err(|_| bad(format!("config key fn: {v:?}")))?,
                        );
                    }
                }
                "q" => {
                    if self.q.is_empty() {
                        self.q = parse_list(key, v)?;
                    }
                }
                "claim" => {
                    if self.claim.is_empty() {
                        self.claim = v.split(',').map(|s| s.trim().to_string()).collect();
                    }
                }
                "x" => fill(&mut self.x, key, v)?,
                "x-min" => fill(&mut self.x_min, key, v)?,
                "x-max" => fill(&mut self.x_max, key, v)?,
                "points" => fill(&mut self.points, key, v)?,
                "spacing" => fill(&mut self.spacing, key, v)?,
                "a" => fill(&mut self.a, key, v)?,
                "b" => fill(&mut self.b, key, v)?,
                "alpha" => fill(&mut self.alpha, key, v)?,
                "beta" => fill(&mut self.beta, key, v)?,
                "n-max" => fill(&mut self.n_max, key, v)?,
                "orders" => fill(&mut self.orders, key, v)?,
                "tol" => fill(&mut self.tol, key, v)?,
                "rel-tol" => fill(&mut self.rel_tol, key, v)?,
                "out" => fill(&mut self.out, key, v)?,
                "x1" => fill(&mut self.x1, key, v)?,
                "y" => fill(&mut self.y, key, v)?,
                "format" => {
                    if self.format.is_none() {
                        self.format = Some(
                            Format::from_str(v, true).map_err(|_| bad(format!("config key format: {v:?}")))?,
                        );
                    }
                }
                "allow-near-one" => {
                    self.allow_near_one |= parse::<bool>(key, v)?;
                }
                other => return Err(bad(format!("unknown config key {other:?}"))),
            }
        }
        Ok(())
    }
}

/// Fully resolved settings for one invocation.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub function: Function,
    /// Empty means the default sweep.
    pub qs: Vec<f64>,
    pub x: Option<f64>,
    pub x_min: f64,
    pub x_max: f64,
    pub points: usize,
    pub spacing: Spacing,
    /// Empty means every claim.
    pub claims: Vec<ClaimId>,
    pub a: Option<f64>,
    pub b: Option<f64>,
    pub alpha: Option<f64>,
    pub beta: Option<f64>,
    pub n_max: Option<usize>,
    pub orders: Option<OrderRange>,
    pub tol: f64,
    pub rel_tol: f64,
    pub format: Format,
    pub out: Option<PathBuf>,
    pub allow_near_one: bool,
    pub x1: Option<f64>,
    pub y: Option<f64>,
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        Self {
            command,
            function: Function::Digamma,
            qs: Vec::new(),
            x: None,
            x_min: 0.05,
            x_max: 20.0,
            points: DEFAULT_GRID_POINTS,
            spacing: Spacing::Geometric,
            claims: Vec::new(),
            a: None,
            b: None,
            alpha: None,
            beta: None,
            n_max: None,
            orders: None,
            tol: qfun::qderiv::DEFAULT_SIGN_TOL,
            rel_tol: 1e-13,
            format: Format::Text,
            out: None,
            allow_near_one: false,
            x1: None,
            y: None,
        }
    }

    pub fn from_flags(command: Command, f: Flags) -> Result<Self, ConfigError> {
        let mut c = Self::new(command);
        c.function = f.function.unwrap_or(c.function);
        c.qs = f.q;
        c.x = f.x;
        c.x_min = f.x_min.unwrap_or(c.x_min);
        c.x_max = f.x_max.unwrap_or(c.x_max);
        c.points = f.points.unwrap_or(c.points);
        if let Some(s) = f.spacing {
            c.spacing = s.parse().map_err(|e| bad(format!("{e}")))?;
        }
        c.claims = f
            .claim
            .iter()
            .map(|s| s.parse::<ClaimId>().map_err(|e| bad(format!("{e}"))))
            .collect::<Result<_, _>>()?;
        c.a = f.a;
        c.b = f.b;
        c.alpha = f.alpha;
        c.beta = f.beta;
        c.n_max = f.n_max;
        if let Some(o) = f.orders {
            c.orders = Some(o.parse().map_err(|e| bad(format!("{e}")))?);
        }
        c.tol = f.tol.unwrap_or(c.tol);
        c.rel_tol = f.rel_tol.unwrap_or(c.rel_tol);
        c.format = f.format.unwrap_or(c.format);
        c.out = f.out;
        c.allow_near_one = f.allow_near_one;
        c.x1 = f.x1;
        c.y = f.y;
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if !(self.x_min < self.x_max) {
            return Err(bad(format!("x-min {} must be below x-max {}", self.x_min, self.x_max)));
        }
        if self.points < 2 {
            return Err(bad("points must be at least 2"));
        }
        if !(self.tol > 0.0) || !(self.rel_tol > 0.0) {
            return Err(bad("tolerances must be positive"));
        }
        if self.command == Command::Eval && self.x.is_none() {
            return Err(bad("eval needs --x"));
        }
        if self.n_max == Some(0) {
            return Err(bad("n-max must be at least 1"));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn file_fills_unset_flags_only() {
        let file = parse_config_file("q = 0.2, 0.8  # two\ntol=1e-6\nx_min = 0.5\n\nformat = csv\n").unwrap();
        let mut f = Flags {
            tol: Some(1e-3),
            ..Flags::default()
        };
        f.merge_file(&file).unwrap();
        assert_eq!(f.q, vec![0.2, 0.8]);
        assert_eq!(f.tol, Some(1e-3));
        assert_eq!(f.x_min, Some(0.5));
        assert_eq!(f.format, Some(Format::Csv));
    }

    #[test]
    fn rejects_bad_files_and_configs() {
        assert!(parse_config_file("novalue").is_err());
        let mut f = Flags::default();
        assert!(f.merge_file(&parse_config_file("colour = red").unwrap()).is_err());
        let f = Flags {
            x_min: Some(3.0),
            x_max: Some(1.0),
            ..Flags::default()
        };
        assert!(RunConfig::from_flags(Command::Scan, f).is_err());
        assert!(RunConfig::from_flags(Command::Eval, Flags::default()).is_err());
        let f = Flags {
            claim: vec!["t99".into()],
            ..Flags::default()
        };
        assert!(RunConfig::from_flags(Command::Verify, f).is_err());
    }
}
