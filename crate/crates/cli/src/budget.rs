//! Search budgets, overridable through `PERIODIC_MOTIF_BUDGET`.
//!
//! The variable holds comma-separated `key=value` pairs, for example
//! `depth=16,states=500000`. Keys: `bound` (largest cover degree tried for
//! solid-torus links), `depth` (moves over both sides of a diagram search,
//! zero allowed), `crossings` (largest intermediate diagram), `states`
//! (distinct diagrams per twist candidate).

use periodic_motif::diagram::SearchConfig;
use periodic_motif::{Error, Result};

pub const VAR: &str = "PERIODIC_MOTIF_BUDGET";

#[derive(Clone, Debug)]
pub struct Budget {
    pub bound: u64,
    pub search: SearchConfig,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { bound: 12, search: SearchConfig::default() }
    }
}

impl Budget {
    pub fn from_env() -> Result<Budget> {
        match std::env::var(VAR) {
            Ok(s) => Budget::parse(&s),
            Err(std::env::VarError::NotPresent) => Ok(Budget::default()),
            Err(e) => Err(Error::Parse(format!("{VAR}: {e}"))),
        }
    }

    pub fn parse(s: &str) -> Result<Budget> {
        let mut b = Budget::default();
        for pair in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let bad = || Error::Parse(format!("{VAR}: expected key=value with a positive integer, got `{pair}`"));
            let (key, value) = pair.split_once('=').ok_or_else(bad)?;
            let (key, n) = (key.trim(), value.trim().parse::<u64>().map_err(|_| bad())?);
            // a zero depth still compares the inputs themselves
            if n == 0 && key != "depth" {
                return Err(bad());
            }
            match key {
                "bound" => b.bound = n,
                "depth" => b.search.max_depth = n as usize,
                "crossings" => b.search.max_crossings = Some(n as usize),
                "states" => b.search.max_states = n as usize,
                other => return Err(Error::Parse(format!("{VAR}: unknown key `{other}`"))),
            }
        }
        Ok(b)
    }
}
