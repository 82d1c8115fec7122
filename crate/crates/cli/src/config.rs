//! Run configuration: defaults, an optional TOML file, then command-line
//! overrides, validated once before any computation.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use ddc_core::optimize::ScalarSearch;
use ddc_core::SeriesSpec;
use serde::{Deserialize, Serialize};

use crate::Failure;

/// Environment variable naming the default config file.
pub const CONFIG_ENV: &str = "DDCAP_CONFIG";

/// Equispaced grid `start:stop:count`, both ends included.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GridSpec {
    pub start: f64,
    pub stop: f64,
    pub count: usize,
}

impl GridSpec {
    pub fn points(&self) -> Vec<f64> {
        if self.count == 1 {
            return vec![self.start];
        }
        let step = (self.stop - self.start) / (self.count - 1) as f64;
        (0..self.count)
            .map(|k| {
                if k + 1 == self.count {
                    self.stop
                } else {
                    self.start + k as f64 * step
                }
            })
            .collect()
    }

    fn validate(&self) -> Result<(), String> {
        if self.count == 0 {
            return Err("grid needs at least one point".into());
        }
        if !(0.0..1.0).contains(&self.start) || !(0.0..1.0).contains(&self.stop) {
            return Err(format!("grid {self} leaves [0, 1)"));
        }
        if self.count > 1 && self.start >= self.stop {
            return Err(format!("grid {self} is not increasing"));
        }
        Ok(())
    }
}

impl FromStr for GridSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parts: Vec<&str> = s.split(':').collect();
        let bad = || format!("expected start:stop:count, got {s:?}");
        match parts.as_slice() {
            [single] => {
                let p = single.trim().parse().map_err(|_| bad())?;
                Ok(Self {
                    start: p,
                    stop: p,
                    count: 1,
                })
            }
            [a, b, c] => Ok(Self {
                start: a.trim().parse().map_err(|_| bad())?,
                stop: b.trim().parse().map_err(|_| bad())?,
                count: c.trim().parse().map_err(|_| bad())?,
            }),
            _ => Err(bad()),
        }
    }
}

impl std::fmt::Display for GridSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.count == 1 {
            write!(f, "{}", self.start)
        } else {
            write!(f, "{}:{}:{}", self.start, self.stop, self.count)
        }
    }
}

/// Everything that affects a run's numbers.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    /// p-grid as `start:stop:count`; commands pick their own when unset.
    pub p: Option<String>,
    pub tail_tol: f64,
    pub alpha_tol: f64,
    pub alpha_grid: usize,
    pub i_max: usize,
    /// Deepest rung of the Lemma-1 ladder in the oracle suite.
    pub ladder_i_max: usize,
    pub seed: u64,
    pub out: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        let search = ScalarSearch::default();
        Self {
            p: None,
            tail_tol: SeriesSpec::default().tail_tol,
            alpha_tol: search.tol,
            alpha_grid: search.grid,
            i_max: 512,
            ladder_i_max: 3,
            seed: 0,
            out: None,
        }
    }
}

impl RunConfig {
    pub fn from_toml(text: &str) -> Result<Self, Failure> {
        toml::from_str(text).map_err(|e| Failure::Usage(format!("config: {e}")))
    }

    pub fn load(path: &Path) -> Result<Self, Failure> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Failure::Usage(format!("reading {}: {e}", path.display())))?;
        Self::from_toml(&text)
    }

    pub fn validate(&self) -> Result<(), Failure> {
        let usage = |m: String| Err(Failure::Usage(m));
        if let Some(g) = &self.p {
            g.parse::<GridSpec>()
                .and_then(|g| g.validate())
                .or_else(usage)?;
        }
        if !(self.tail_tol > 0.0 && self.tail_tol < 1.0) {
            return usage(format!("tail_tol {} outside (0, 1)", self.tail_tol));
        }
        if !(self.alpha_tol > 0.0 && self.alpha_tol < 0.1) {
            return usage(format!("alpha_tol {} outside (0, 0.1)", self.alpha_tol));
        }
        if self.alpha_grid < 3 {
            return usage("alpha_grid must be at least 3".into());
        }
        if self.i_max == 0 {
            return usage("i_max must be at least 1".into());
        }
        if self.ladder_i_max == 0 {
            return usage("ladder_i_max must be at least 1".into());
        }
        Ok(())
    }

    pub fn grid(&self) -> Option<Vec<f64>> {
        self.p
            .as_deref()
            .map(|g| g.parse::<GridSpec>().expect("validated").points())
    }

    /// The configured grid, or `default` when none was given.
    pub fn grid_or(&self, default: &str) -> Vec<f64> {
        self.grid()
            .unwrap_or_else(|| default.parse::<GridSpec>().expect("valid default").points())
    }

    pub fn series(&self) -> SeriesSpec {
        SeriesSpec::with_tol(self.tail_tol)
    }

    pub fn search(&self) -> ScalarSearch {
        ScalarSearch {
            tol: self.alpha_tol,
            grid: self.alpha_grid,
            ..ScalarSearch::default()
        }
    }

    /// `key = value` lines in TOML syntax, for output metadata.
    pub fn echo(&self) -> String {
        let mut s = String::new();
        let text = toml::to_string(self).expect("config serializes");
        for line in text.lines() {
            let _ = writeln!(s, "{line}");
        }
        s
    }
}
