//! Experiment configuration: field matrix, numeric mode, seed, caps, and
//! the constants behind soft (hidden-constant) checks. The full config is
//! echoed into every report so runs are reproducible from the output alone.

use fqlab::{Error, FieldSpec, Result};
use serde::Serialize;

/// Numeric mode selection; `Auto` resolves per field (exact for q ≤ 31).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ModeChoice {
    Exact,
    Float,
    Auto,
}

impl ModeChoice {
    pub fn resolve(self, q: u64) -> ResolvedMode {
        match self {
            ModeChoice::Exact => ResolvedMode::Exact,
            ModeChoice::Float => ResolvedMode::Float,
            ModeChoice::Auto => {
                if q <= 31 {
                    ResolvedMode::Exact
                } else {
                    ResolvedMode::Float
                }
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ResolvedMode {
    Exact,
    Float,
}

impl ResolvedMode {
    pub fn name(self) -> &'static str {
        match self {
            ResolvedMode::Exact => "exact",
            ResolvedMode::Float => "float",
        }
    }
}

/// Work-size caps. Grid caps bound q^d for transforms; the tuple cap
/// bounds enumerated tuples in censuses, k-star sweeps, and scans.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct Caps {
    pub grid_float: u64,
    pub grid_exact: u64,
    pub tuples: u64,
}

impl Default for Caps {
    fn default() -> Self {
        Caps { grid_float: 1 << 22, grid_exact: 1 << 14, tuples: 100_000_000 }
    }
}

impl Caps {
    pub fn grid(&self, mode: ResolvedMode) -> u64 {
        match mode {
            ResolvedMode::Exact => self.grid_exact,
            ResolvedMode::Float => self.grid_float,
        }
    }

    pub fn check_grid(&self, mode: ResolvedMode, needed: u64) -> Result<()> {
        let cap = self.grid(mode);
        if needed > cap {
            return Err(Error::CapExceeded { needed: needed as u128, cap: cap as u128 });
        }
        Ok(())
    }
}

/// Constants for checks whose statements hide a constant: moment-ratio
/// bounds accept ratios up to `moment_ratio`; proportion claims require at
/// least `proportion`; the restricted-energy ratio is allowed the guard
/// 1 + restriction_guard/q.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct SoftConstants {
    pub moment_ratio: f64,
    pub proportion: f64,
    pub restriction_guard: f64,
}

impl Default for SoftConstants {
    fn default() -> Self {
        SoftConstants { moment_ratio: 8.0, proportion: 0.25, restriction_guard: 5.0 }
    }
}

/// One fully resolved experiment configuration.
#[derive(Debug, Clone, Serialize)]
pub struct ExperimentConfig {
    /// Fields to sweep, as q = p^l values. An explicit (p, l) pair can be
    /// given instead for a single field.
    pub qs: Vec<u64>,
    pub pl: Option<(u64, u32)>,
    pub ds: Vec<u32>,
    /// Set specifier; empty string means each suite uses its own default
    /// seeded ensembles.
    pub set: String,
    pub mode: ModeChoice,
    pub seed: u64,
    /// Seeded samples per (q, d) cell in ensemble checks.
    pub samples: u64,
    pub k: Option<u32>,
    pub z: Option<u64>,
    pub caps: Caps,
    pub constants: SoftConstants,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            qs: vec![3, 5, 7, 9, 11, 13],
            pl: None,
            ds: vec![2, 3],
            set: String::new(),
            mode: ModeChoice::Auto,
            seed: 7,
            samples: 10,
            k: None,
            z: None,
            caps: Caps::default(),
            constants: SoftConstants::default(),
        }
    }
}

impl ExperimentConfig {
    /// Resolve the field list (honoring an explicit (p, l) if given).
    pub fn fields(&self) -> Result<Vec<FieldSpec>> {
        if let Some((p, l)) = self.pl {
            return Ok(vec![FieldSpec::new(p, l)?]);
        }
        self.qs.iter().map(|&q| FieldSpec::from_q(q)).collect()
    }

    /// Parse a `name=value` soft-constant override.
    pub fn set_constant(&mut self, spec: &str) -> Result<()> {
        let (name, value) = spec
            .split_once('=')
            .ok_or_else(|| Error::SpecifierParse(format!("expected name=value, got {spec}")))?;
        let v: f64 = value
            .parse()
            .map_err(|_| Error::SpecifierParse(format!("bad constant value {value}")))?;
        match name {
            "moment_ratio" => self.constants.moment_ratio = v,
            "proportion" => self.constants.proportion = v,
            "restriction_guard" => self.constants.restriction_guard = v,
            _ => {
                return Err(Error::SpecifierParse(format!(
                    "unknown constant {name} (moment_ratio, proportion, restriction_guard)"
                )))
            }
        }
        Ok(())
    }
}
