pub mod analyze;
pub mod eval;
pub mod icons;
pub mod motif;
pub mod serve;

use std::io::Write;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{CliError, Result};

/// A fixed seed, or `random` for one drawn from the OS.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeedArg {
    Fixed(u64),
    Random,
}

impl FromStr for SeedArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "random" {
            return Ok(SeedArg::Random);
        }
        let parsed = match s.strip_prefix("0x") {
            Some(hex) => u64::from_str_radix(hex, 16),
            None => s.parse(),
        };
        parsed.map(SeedArg::Fixed).map_err(|_| format!("`{s}` is not a 64-bit seed or `random`"))
    }
}

impl SeedArg {
    pub fn resolve(self) -> Result<u64> {
        match self {
            SeedArg::Fixed(n) => Ok(n),
            SeedArg::Random => getrandom::u64().map_err(|e| CliError::internal(format!("no entropy: {e}"))),
        }
    }
}

pub fn print_json(value: &impl Serialize) -> Result<()> {
    let text = serde_json::to_string_pretty(value).map_err(|e| CliError::internal(e.to_string()))?;
    let mut out = std::io::stdout().lock();
    writeln!(out, "{text}").map_err(|e| CliError::internal(format!("cannot write output: {e}")))
}
