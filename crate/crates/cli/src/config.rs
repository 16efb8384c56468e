//! Run configuration: defaults, overlaid by a TOML file, overlaid by flags.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use blockade::quantities::{species_by_name, Species};
use blockade::{BasisParams, PhysicalConstants, Statistics, Unit};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Spacing {
    Linear,
    Log,
}

/// `min, max, count, spacing`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scan {
    pub min: f64,
    pub max: f64,
    pub count: usize,
    pub spacing: Spacing,
}

impl Scan {
    pub fn validate(&self, what: &str) -> Result<(), CliError> {
        if !(self.min.is_finite() && self.max.is_finite() && self.min < self.max) {
            return Err(CliError::config(format!("{what}: need min < max, got {} and {}", self.min, self.max)));
        }
        if self.count < 2 {
            return Err(CliError::config(format!("{what}: count must be at least 2")));
        }
        if self.spacing == Spacing::Log && self.min <= 0.0 {
            return Err(CliError::config(format!("{what}: log spacing needs min > 0")));
        }
        Ok(())
    }

    pub fn values(&self) -> Vec<f64> {
        let last = (self.count - 1) as f64;
        (0..self.count)
            .map(|i| {
                let t = i as f64 / last;
                match self.spacing {
                    Spacing::Linear => self.min + t * (self.max - self.min),
                    Spacing::Log => self.min * (self.max / self.min).powf(t),
                }
            })
            .collect()
    }
}

impl FromStr for Scan {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        if !(3..=4).contains(&parts.len()) {
            return Err(CliError::config(format!("scan `{s}`: expected min,max,count[,log|linear]")));
        }
        let num = |p: &str| p.parse::<f64>().map_err(|_| CliError::config(format!("scan `{s}`: `{p}` is not a number")));
        let count = parts[2]
            .parse::<usize>()
            .map_err(|_| CliError::config(format!("scan `{s}`: `{}` is not a count", parts[2])))?;
        let spacing = match parts.get(3).copied().unwrap_or("linear") {
            "log" => Spacing::Log,
            "lin" | "linear" => Spacing::Linear,
            other => return Err(CliError::config(format!("scan `{s}`: unknown spacing `{other}`"))),
        };
        let scan = Scan {
            min: num(parts[0])?,
            max: num(parts[1])?,
            count,
            spacing,
        };
        scan.validate("scan")?;
        Ok(scan)
    }
}

impl fmt::Display for Scan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let spacing = match self.spacing {
            Spacing::Linear => "linear",
            Spacing::Log => "log",
        };
        write!(f, "{},{},{},{}", self.min, self.max, self.count, spacing)
    }
}

/// A builtin species by name, or an inline definition.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SpeciesSpec {
    Builtin(String),
    Custom(CustomSpecies),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CustomSpecies {
    pub name: String,
    pub mass_u: f64,
    /// Shield range in Bohr radii.
    pub r6_a0: Option<f64>,
    /// `c6` in J·m⁶.
    pub c6: Option<f64>,
    #[serde(default)]
    pub dipole_debye: Option<f64>,
}

impl SpeciesSpec {
    pub fn resolve(&self) -> Result<Species, CliError> {
        match self {
            SpeciesSpec::Builtin(name) => species_by_name(name).map_err(CliError::from),
            SpeciesSpec::Custom(c) => {
                let mass = c.mass_u * PhysicalConstants::ATOMIC_MASS_UNIT;
                let s = match (c.r6_a0, c.c6) {
                    (Some(r6), None) => Species::from_r6(&c.name, mass, r6 * PhysicalConstants::BOHR_RADIUS)?,
                    (None, Some(c6)) => Species::from_c6(&c.name, mass, c6)?,
                    _ => {
                        return Err(CliError::config(format!(
                            "species `{}`: give exactly one of r6_a0 and c6",
                            c.name
                        )))
                    }
                };
                Ok(match c.dipole_debye {
                    Some(d) => s.with_dipole(d),
                    None => s,
                })
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct TweezerSection {
    pub waist_nm: f64,
    /// A single depth; takes precedence over `depth_scan`.
    pub depth_khz: Option<f64>,
    /// Depth scan in h·kHz.
    pub depth_scan: Scan,
}

impl Default for TweezerSection {
    fn default() -> Self {
        Self {
            waist_nm: 300.0,
            depth_khz: None,
            depth_scan: Scan {
                min: 1.0,
                max: 1000.0,
                count: 31,
                spacing: Spacing::Log,
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct BasisSection {
    pub l_max: i32,
    pub n_contractions: usize,
    pub spacing_nm: Option<f64>,
    pub r_max_nm: Option<f64>,
    pub j_max: i32,
    pub bosonic: bool,
    pub shield_in_reference: bool,
    pub wall_ratio: f64,
    pub bound_threshold: f64,
}

impl Default for BasisSection {
    fn default() -> Self {
        let p = BasisParams::default();
        Self {
            l_max: p.l_max,
            n_contractions: p.n_contractions,
            spacing_nm: None,
            r_max_nm: None,
            j_max: p.j_max,
            bosonic: p.bosonic,
            shield_in_reference: p.shield_in_reference,
            wall_ratio: p.wall_ratio,
            bound_threshold: p.bound_threshold,
        }
    }
}

impl BasisSection {
    pub fn params(&self) -> Result<BasisParams, CliError> {
        let nm = Unit::Nanometer.si_factor();
        let p = BasisParams {
            l_max: self.l_max,
            n_contractions: self.n_contractions,
            spacing: self.spacing_nm.map(|x| x * nm),
            r_max: self.r_max_nm.map(|x| x * nm),
            j_max: self.j_max,
            bosonic: self.bosonic,
            interacting: true,
            shield_in_reference: self.shield_in_reference,
            wall_ratio: self.wall_ratio,
            bound_threshold: self.bound_threshold,
        };
        p.validate()?;
        Ok(p)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ReservoirSection {
    pub statistics: Statistics,
    /// A single temperature; takes precedence over `temp_scan`.
    pub temperature_nk: Option<f64>,
    /// Temperature scan in nK.
    pub temp_scan: Scan,
    /// Number density in cm⁻³.
    pub density_cm3: f64,
    /// Phase-space density; replaces `density_cm3` when set.
    pub psd: Option<f64>,
}

impl Default for ReservoirSection {
    fn default() -> Self {
        Self {
            statistics: Statistics::Bose,
            temperature_nk: None,
            temp_scan: Scan {
                min: 50.0,
                max: 2000.0,
                count: 17,
                spacing: Spacing::Log,
            },
            density_cm3: 1e12,
            psd: None,
        }
    }
}

impl ReservoirSection {
    pub fn temperatures_nk(&self) -> Vec<f64> {
        match self.temperature_nk {
            Some(t) => vec![t],
            None => self.temp_scan.values(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(CliError::config(format!("unknown format `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
#[serde(default, deny_unknown_fields)]
pub struct OutputSection {
    pub format: Format,
    pub path: Option<PathBuf>,
    /// Worker threads; 0 uses every core.
    pub jobs: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub species: Option<SpeciesSpec>,
    pub tweezer: TweezerSection,
    pub basis: BasisSection,
    pub reservoir: ReservoirSection,
    pub output: OutputSection,
}

/// Flag values that override the file.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub species: Option<String>,
    pub waist_nm: Option<f64>,
    pub depth_khz: Option<f64>,
    pub depth_scan: Option<Scan>,
    pub temp_scan: Option<Scan>,
    pub temperature_nk: Option<f64>,
    pub density_cm3: Option<f64>,
    pub psd: Option<f64>,
    pub statistics: Option<Statistics>,
    pub l_max: Option<i32>,
    pub j_max: Option<i32>,
    pub n_contractions: Option<usize>,
    pub format: Option<Format>,
    pub out: Option<PathBuf>,
    pub jobs: Option<usize>,
}

impl RunConfig {
    pub fn from_toml(text: &str) -> Result<Self, CliError> {
        toml::from_str(text).map_err(|e| CliError::config(format!("config: {}", e.message())))
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::config(format!("cannot read {}: {e}", path.display())))?;
        Self::from_toml(&text).map_err(|e| CliError::config(format!("{}: {e}", path.display())))
    }

    pub fn apply(&mut self, o: &Overrides) {
        if let Some(s) = &o.species {
            self.species = Some(SpeciesSpec::Builtin(s.clone()));
        }
        if let Some(w) = o.waist_nm {
            self.tweezer.waist_nm = w;
        }
        if let Some(scan) = o.depth_scan {
            self.tweezer.depth_scan = scan;
            self.tweezer.depth_khz = None;
        }
        if let Some(d) = o.depth_khz {
            self.tweezer.depth_khz = Some(d);
        }
        if let Some(scan) = o.temp_scan {
            self.reservoir.temp_scan = scan;
            self.reservoir.temperature_nk = None;
        }
        if let Some(t) = o.temperature_nk {
            self.reservoir.temperature_nk = Some(t);
        }
        if let Some(n) = o.density_cm3 {
            self.reservoir.density_cm3 = n;
            self.reservoir.psd = None;
        }
        if let Some(p) = o.psd {
            self.reservoir.psd = Some(p);
        }
        if let Some(s) = o.statistics {
            self.reservoir.statistics = s;
        }
        if let Some(l) = o.l_max {
            self.basis.l_max = l;
        }
        if let Some(j) = o.j_max {
            self.basis.j_max = j;
        }
        if let Some(n) = o.n_contractions {
            self.basis.n_contractions = n;
        }
        if let Some(f) = o.format {
            self.output.format = f;
        }
        if let Some(p) = &o.out {
            self.output.path = Some(p.clone());
        }
        if let Some(j) = o.jobs {
            self.output.jobs = j;
        }
    }

    pub fn validate(&self) -> Result<(), CliError> {
        if !(self.tweezer.waist_nm > 0.0) {
            return Err(CliError::config("tweezer.waist_nm must be positive"));
        }
        if let Some(d) = self.tweezer.depth_khz {
            if !(d > 0.0) {
                return Err(CliError::config("tweezer.depth_khz must be positive"));
            }
        }
        self.tweezer.depth_scan.validate("tweezer.depth_scan")?;
        self.reservoir.temp_scan.validate("reservoir.temp_scan")?;
        if let Some(t) = self.reservoir.temperature_nk {
            if !(t > 0.0) {
                return Err(CliError::config("reservoir.temperature_nk must be positive"));
            }
        }
        if !(self.reservoir.density_cm3 > 0.0) {
            return Err(CliError::config("reservoir.density_cm3 must be positive"));
        }
        if let Some(p) = self.reservoir.psd {
            if !(p > 0.0) {
                return Err(CliError::config("reservoir.psd must be positive"));
            }
        }
        self.basis.params()?;
        if let Some(s) = &self.species {
            s.resolve()?;
        }
        Ok(())
    }

    pub fn species(&self) -> Result<Species, CliError> {
        self.species
            .as_ref()
            .ok_or_else(|| CliError::config("no species selected (use --species or `species = ...`)"))?
            .resolve()
    }

    /// Depths in h·kHz.
    pub fn depths_khz(&self) -> Vec<f64> {
        match self.tweezer.depth_khz {
            Some(d) => vec![d],
            None => self.tweezer.depth_scan.values(),
        }
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config is always serializable")
    }
}
