//! Flat `key = value` run configuration with command-line overrides.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};

use crate::error::CliError;

/// Every key the configuration accepts.
pub const KNOWN_KEYS: &[&str] = &[
    "potential",
    "file",
    "v0",
    "width",
    "center",
    "gap",
    "x_min",
    "x_max",
    "mass",
    "hbar",
    "junctions",
    "delta_x",
    "e_min",
    "e_max",
    "points",
    "scan_points",
    "ode_points",
    "level",
    "grid_min",
    "grid_max",
    "x_points",
    "s",
    "s_im",
    "packet_center",
    "packet_width",
    "packet_k0",
    "format",
    "output",
];

#[derive(Debug, Clone, PartialEq)]
enum Origin {
    File { path: PathBuf, line: usize },
    CommandLine,
}

impl fmt::Display for Origin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Origin::File { path, line } => write!(f, "{}:{line}", path.display()),
            Origin::CommandLine => write!(f, "command line"),
        }
    }
}

#[derive(Debug, Clone)]
struct Entry {
    value: String,
    origin: Origin,
}

#[derive(Debug, Clone, Default)]
pub struct RunConfig {
    entries: BTreeMap<String, Entry>,
    base_dir: Option<PathBuf>,
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read config file {}: {e}", path.display())))?;
        let mut cfg = Self::parse(&text, path)?;
        cfg.base_dir = path.parent().map(Path::to_path_buf);
        Ok(cfg)
    }

    pub fn parse(text: &str, path: &Path) -> Result<Self, CliError> {
        let mut cfg = Self::default();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let origin = Origin::File { path: path.to_path_buf(), line: i + 1 };
            let Some((key, value)) = line.split_once('=') else {
                return Err(CliError::Config(format!("{origin}: expected `key = value`, found `{line}`")));
            };
            cfg.insert(key.trim(), value.trim(), origin)?;
        }
        Ok(cfg)
    }

    fn insert(&mut self, key: &str, value: &str, origin: Origin) -> Result<(), CliError> {
        if !KNOWN_KEYS.contains(&key) {
            return Err(CliError::Config(format!("{origin}: unknown key `{key}`")));
        }
        if value.is_empty() {
            return Err(CliError::Config(format!("{origin}: key `{key}` has an empty value")));
        }
        self.entries.insert(key.to_string(), Entry { value: value.to_string(), origin });
        Ok(())
    }

    /// Applies a `key=value` override from the command line.
    pub fn set(&mut self, assignment: &str) -> Result<(), CliError> {
        let Some((key, value)) = assignment.split_once('=') else {
            return Err(CliError::Config(format!("--set expects key=value, got `{assignment}`")));
        };
        self.insert(key.trim(), value.trim(), Origin::CommandLine)
    }

    pub fn set_value(&mut self, key: &str, value: impl ToString) -> Result<(), CliError> {
        self.insert(key, &value.to_string(), Origin::CommandLine)
    }

    pub fn contains(&self, key: &str) -> bool {
        self.entries.contains_key(key)
    }

    pub fn str(&self, key: &str) -> Option<&str> {
        self.entries.get(key).map(|e| e.value.as_str())
    }

    pub fn f64(&self, key: &str) -> Result<Option<f64>, CliError> {
        match self.entries.get(key) {
            None => Ok(None),
            Some(e) => match e.value.parse::<f64>() {
                Ok(v) if v.is_finite() => Ok(Some(v)),
                _ => Err(CliError::Config(format!("{}: key `{key}` must be a finite number, got `{}`", e.origin, e.value))),
            },
        }
    }

    pub fn usize(&self, key: &str) -> Result<Option<usize>, CliError> {
        match self.entries.get(key) {
            None => Ok(None),
            Some(e) => e.value.parse::<usize>().map(Some).map_err(|_| {
                CliError::Config(format!("{}: key `{key}` must be a non-negative integer, got `{}`", e.origin, e.value))
            }),
        }
    }

    pub fn f64_or(&self, key: &str, default: f64) -> Result<f64, CliError> {
        Ok(self.f64(key)?.unwrap_or(default))
    }

    pub fn require_f64(&self, key: &str) -> Result<f64, CliError> {
        self.f64(key)?.ok_or_else(|| missing(key))
    }

    pub fn require_usize(&self, key: &str) -> Result<usize, CliError> {
        self.usize(key)?.ok_or_else(|| missing(key))
    }

    /// Strictly positive number, or `default` when absent.
    pub fn positive(&self, key: &str, default: Option<f64>) -> Result<f64, CliError> {
        let v = match (self.f64(key)?, default) {
            (Some(v), _) => v,
            (None, Some(d)) => return Ok(d),
            (None, None) => return Err(missing(key)),
        };
        if v > 0.0 {
            Ok(v)
        } else {
            Err(self.invalid(key, "must be positive"))
        }
    }

    /// Error for `key` carrying its origin.
    pub fn invalid(&self, key: &str, why: &str) -> CliError {
        match self.entries.get(key) {
            Some(e) => CliError::Config(format!("{}: key `{key}` = {} {why}", e.origin, e.value)),
            None => CliError::Config(format!("key `{key}` {why}")),
        }
    }

    /// Resolves a path value relative to the config file's directory.
    pub fn path(&self, key: &str) -> Option<PathBuf> {
        let raw = PathBuf::from(self.str(key)?);
        match (&self.base_dir, raw.is_absolute()) {
            (Some(dir), false) => match self.entries.get(key).map(|e| &e.origin) {
                Some(Origin::File { .. }) => Some(dir.join(raw)),
                _ => Some(raw),
            },
            _ => Some(raw),
        }
    }
}

fn missing(key: &str) -> CliError {
    CliError::Config(format!("missing required key `{key}`"))
}
