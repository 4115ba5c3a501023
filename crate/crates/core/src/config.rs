//! Enumeration limits and execution mode.

use crate::error::{Error, Result};
use crate::orientation::Strategy;

/// Environment variable overriding [`Config::max_edges`].
pub const MAX_EDGES_ENV: &str = "ORIENT_LATTICE_MAX_EDGES";

pub const DEFAULT_MAX_EDGES: usize = 24;
pub const DEFAULT_MAX_ELEMENTS: usize = 250_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    /// Uses rayon when the `parallel` feature is enabled, else sequential.
    Parallel,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Config {
    /// Largest number of free edges for brute-force enumeration.
    pub max_edges: usize,
    /// Largest lattice the breadth-first enumerations will build.
    pub max_elements: usize,
    pub execution: Execution,
    pub strategy: Strategy,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            max_edges: DEFAULT_MAX_EDGES,
            max_elements: DEFAULT_MAX_ELEMENTS,
            execution: Execution::Parallel,
            strategy: Strategy::Auto,
        }
    }
}

impl Config {
    /// Defaults, with `max_edges` read from [`MAX_EDGES_ENV`] when set.
    pub fn from_env() -> Result<Self> {
        let mut cfg = Config::default();
        if let Ok(v) = std::env::var(MAX_EDGES_ENV) {
            cfg.max_edges = parse_cap(&v)?;
        }
        Ok(cfg)
    }

    pub fn sequential(mut self) -> Self {
        self.execution = Execution::Sequential;
        self
    }

    pub fn with_strategy(mut self, strategy: Strategy) -> Self {
        self.strategy = strategy;
        self
    }
}

fn parse_cap(v: &str) -> Result<usize> {
    let cap: usize = v
        .trim()
        .parse()
        .map_err(|_| Error::BadParams(format!("{MAX_EDGES_ENV}={v:?} is not a non-negative integer")))?;
    if cap > 40 {
        return Err(Error::BadParams(format!("{MAX_EDGES_ENV}={cap} exceeds the hard limit 40")));
    }
    Ok(cap)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_caps() {
        assert_eq!(parse_cap("12").unwrap(), 12);
        assert_eq!(parse_cap(" 30 ").unwrap(), 30);
        assert!(parse_cap("x").is_err());
        assert!(parse_cap("-1").is_err());
        assert!(parse_cap("64").is_err());
    }
}
