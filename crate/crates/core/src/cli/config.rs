//! Run configuration: command-line flags layered over an optional
//! `key = value` config file layered over built-in defaults.

use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::error::{invalid, Result};
use crate::params::{PhysicalConstants, PotentialKind, PotentialSpec, QuantumNumbers};

/// Environment variable naming a default config file.
pub const CONFIG_ENV: &str = "KRATZER2D_CONFIG";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Csv,
    Json,
}

impl std::str::FromStr for OutputFormat {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            other => Err(invalid(format!("unknown format '{other}' (expected csv or json)"))),
        }
    }
}

/// One layer of partially specified settings.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ConfigLayer {
    pub potential: Option<PotentialKind>,
    pub d0: Option<f64>,
    pub r0: Option<f64>,
    pub q: Option<f64>,
    pub g: Option<f64>,
    pub hbar: Option<f64>,
    pub mu: Option<f64>,
    pub n: Option<u32>,
    pub m: Option<i32>,
    pub n_max: Option<u32>,
    pub m_max: Option<u32>,
    pub format: Option<OutputFormat>,
    pub out: Option<PathBuf>,
    pub grid_points: Option<usize>,
    pub r_max: Option<f64>,
    pub tol: Option<f64>,
    pub nr: Option<usize>,
    pub nphi: Option<usize>,
}

fn parse_value<T: std::str::FromStr>(key: &str, value: &str, line: usize) -> Result<T> {
    value
        .parse()
        .map_err(|_| invalid(format!("config line {line}: bad value '{value}' for '{key}'")))
}

impl ConfigLayer {
    /// Parses `key = value` lines; `#` starts a comment, blank lines are ignored.
    pub fn parse(text: &str) -> Result<Self> {
        let mut layer = ConfigLayer::default();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| invalid(format!("config line {line_no}: expected 'key = value'")))?;
            let key = key.trim().to_ascii_lowercase().replace('-', "_");
            let value = value.trim();
            let k = key.as_str();
            match k {
                "potential" => layer.potential = Some(value.parse()?),
                "d0" => layer.d0 = Some(parse_value(k, value, line_no)?),
                "r0" => layer.r0 = Some(parse_value(k, value, line_no)?),
                "q" | "q_over_rho" => layer.q = Some(parse_value(k, value, line_no)?),
                "g" => layer.g = Some(parse_value(k, value, line_no)?),
                "hbar" => layer.hbar = Some(parse_value(k, value, line_no)?),
                "mu" => layer.mu = Some(parse_value(k, value, line_no)?),
                "n" => layer.n = Some(parse_value(k, value, line_no)?),
                "m" => layer.m = Some(parse_value(k, value, line_no)?),
                "n_max" => layer.n_max = Some(parse_value(k, value, line_no)?),
                "m_max" => layer.m_max = Some(parse_value(k, value, line_no)?),
                "format" => layer.format = Some(value.parse()?),
                "out" => layer.out = Some(PathBuf::from(value)),
                "grid_points" => layer.grid_points = Some(parse_value(k, value, line_no)?),
                "r_max" => layer.r_max = Some(parse_value(k, value, line_no)?),
                "tol" => layer.tol = Some(parse_value(k, value, line_no)?),
                "nr" => layer.nr = Some(parse_value(k, value, line_no)?),
                "nphi" => layer.nphi = Some(parse_value(k, value, line_no)?),
                other => return Err(invalid(format!("config line {line_no}: unknown key '{other}'"))),
            }
        }
        Ok(layer)
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| invalid(format!("cannot read config {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    /// Fills every unset field of `self` from `lower`.
    pub fn over(self, lower: ConfigLayer) -> ConfigLayer {
        ConfigLayer {
            potential: self.potential.or(lower.potential),
            d0: self.d0.or(lower.d0),
            r0: self.r0.or(lower.r0),
            q: self.q.or(lower.q),
            g: self.g.or(lower.g),
            hbar: self.hbar.or(lower.hbar),
            mu: self.mu.or(lower.mu),
            n: self.n.or(lower.n),
            m: self.m.or(lower.m),
            n_max: self.n_max.or(lower.n_max),
            m_max: self.m_max.or(lower.m_max),
            format: self.format.or(lower.format),
            out: self.out.or(lower.out),
            grid_points: self.grid_points.or(lower.grid_points),
            r_max: self.r_max.or(lower.r_max),
            tol: self.tol.or(lower.tol),
            nr: self.nr.or(lower.nr),
            nphi: self.nphi.or(lower.nphi),
        }
    }
}

/// Fully resolved settings for one command.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub potential: PotentialKind,
    pub d0: f64,
    pub r0: f64,
    pub q: f64,
    pub g: f64,
    pub hbar: f64,
    pub mu: f64,
    /// State for `wavefunction`, `density` and `oracle`; defaults to the
    /// `n = 3, m = 1` density-plot configuration.
    pub n: u32,
    pub m: i32,
    pub n_max: u32,
    pub m_max: u32,
    pub format: OutputFormat,
    pub out: Option<PathBuf>,
    pub grid_points: Option<usize>,
    pub r_max: Option<f64>,
    /// Relative tolerance for oracle/closed-form agreement.
    pub tol: f64,
    pub nr: usize,
    pub nphi: usize,
    /// Energy added to every closed-form state inside `verify` (negative control).
    pub energy_offset: f64,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            potential: PotentialKind::Kratzer,
            d0: 1.0,
            r0: 1.0,
            q: 1.0,
            g: 0.0,
            hbar: 1.0,
            mu: 1.0,
            n: 3,
            m: 1,
            n_max: 3,
            m_max: 3,
            format: OutputFormat::Csv,
            out: None,
            grid_points: None,
            r_max: None,
            tol: 1e-3,
            nr: 400,
            nphi: 72,
            energy_offset: 0.0,
        }
    }
}

impl RunConfig {
    /// Applies a merged layer on top of the defaults and validates the result.
    pub fn resolve(layer: ConfigLayer) -> Result<Self> {
        let d = RunConfig::default();
        let cfg = RunConfig {
            potential: layer.potential.unwrap_or(d.potential),
            d0: layer.d0.unwrap_or(d.d0),
            r0: layer.r0.unwrap_or(d.r0),
            q: layer.q.unwrap_or(d.q),
            g: layer.g.unwrap_or(d.g),
            hbar: layer.hbar.unwrap_or(d.hbar),
            mu: layer.mu.unwrap_or(d.mu),
            n: layer.n.unwrap_or(d.n),
            m: layer.m.unwrap_or(d.m),
            n_max: layer.n_max.unwrap_or(d.n_max),
            m_max: layer.m_max.unwrap_or(d.m_max),
            format: layer.format.unwrap_or(d.format),
            out: layer.out.or(d.out),
            grid_points: layer.grid_points.or(d.grid_points),
            r_max: layer.r_max.or(d.r_max),
            tol: layer.tol.unwrap_or(d.tol),
            nr: layer.nr.unwrap_or(d.nr),
            nphi: layer.nphi.unwrap_or(d.nphi),
            energy_offset: 0.0,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        self.potential_spec()?;
        self.constants()?;
        if let Some(r) = self.r_max {
            if !(r.is_finite() && r > 0.0) {
                return Err(invalid(format!("r-max must be positive, got {r}")));
            }
        }
        if !(self.tol.is_finite() && self.tol > 0.0) {
            return Err(invalid(format!("tol must be positive, got {}", self.tol)));
        }
        if self.nr < 2 {
            return Err(invalid(format!("nr must be at least 2, got {}", self.nr)));
        }
        if self.nphi < 1 {
            return Err(invalid("nphi must be at least 1"));
        }
        Ok(())
    }

    pub fn potential_spec(&self) -> Result<PotentialSpec> {
        match self.potential {
            PotentialKind::Kratzer => PotentialSpec::kratzer(self.d0, self.r0),
            PotentialKind::ModifiedKratzer1 => PotentialSpec::modified1(self.d0, self.r0),
            PotentialKind::ModifiedKratzer2 => PotentialSpec::modified2(self.q, self.r0, self.g),
        }
    }

    pub fn constants(&self) -> Result<PhysicalConstants> {
        PhysicalConstants::new(self.hbar, self.mu)
    }

    pub fn quantum_numbers(&self) -> QuantumNumbers {
        QuantumNumbers::new(self.n, self.m)
    }
}
