//! Physical constants, unit conversion and the molecule registry.
//!
//! Everything downstream works in SI. Laboratory units (h·kHz, k_B·nK, a0,
//! cm⁻³, ...) only appear at the boundary through [`convert`] and [`Unit`].

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// CODATA 2018 values in SI units.
pub struct PhysicalConstants;

impl PhysicalConstants {
    /// Planck constant, J·s (exact).
    pub const H: f64 = 6.626_070_15e-34;
    /// Reduced Planck constant, J·s, stored as `H / 2π`.
    pub const HBAR: f64 = Self::H / (2.0 * PI);
    /// Boltzmann constant, J/K (exact).
    pub const K_B: f64 = 1.380_649e-23;
    /// Bohr radius, m.
    pub const BOHR_RADIUS: f64 = 5.291_772_109_03e-11;
    /// Atomic mass constant, kg.
    pub const ATOMIC_MASS_UNIT: f64 = 1.660_539_066_60e-27;
    /// One Debye in C·m.
    pub const DEBYE: f64 = 3.335_640_951_981_52e-30;
}

use PhysicalConstants as C;

/// Physical dimension of a [`Unit`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dimension {
    Energy,
    Length,
    Mass,
    NumberDensity,
    DipoleMoment,
}

/// Units accepted at the input/output boundary.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Unit {
    Joule,
    PlanckHertz,
    PlanckKiloHertz,
    BoltzmannNanoKelvin,
    BoltzmannMicroKelvin,
    Meter,
    Nanometer,
    Bohr,
    AtomicMassUnit,
    Kilogram,
    PerCubicCentimeter,
    PerCubicMeter,
    Debye,
}

impl Unit {
    pub const ALL: [Unit; 13] = [
        Unit::Joule,
        Unit::PlanckHertz,
        Unit::PlanckKiloHertz,
        Unit::BoltzmannNanoKelvin,
        Unit::BoltzmannMicroKelvin,
        Unit::Meter,
        Unit::Nanometer,
        Unit::Bohr,
        Unit::AtomicMassUnit,
        Unit::Kilogram,
        Unit::PerCubicCentimeter,
        Unit::PerCubicMeter,
        Unit::Debye,
    ];

    pub fn dimension(self) -> Dimension {
        match self {
            Unit::Joule
            | Unit::PlanckHertz
            | Unit::PlanckKiloHertz
            | Unit::BoltzmannNanoKelvin
            | Unit::BoltzmannMicroKelvin => Dimension::Energy,
            Unit::Meter | Unit::Nanometer | Unit::Bohr => Dimension::Length,
            Unit::AtomicMassUnit | Unit::Kilogram => Dimension::Mass,
            Unit::PerCubicCentimeter | Unit::PerCubicMeter => Dimension::NumberDensity,
            Unit::Debye => Dimension::DipoleMoment,
        }
    }

    /// Size of one of this unit in the SI unit of its dimension.
    pub fn si_factor(self) -> f64 {
        match self {
            Unit::Joule => 1.0,
            Unit::PlanckHertz => C::H,
            Unit::PlanckKiloHertz => C::H * 1e3,
            Unit::BoltzmannNanoKelvin => C::K_B * 1e-9,
            Unit::BoltzmannMicroKelvin => C::K_B * 1e-6,
            Unit::Meter => 1.0,
            Unit::Nanometer => 1e-9,
            Unit::Bohr => C::BOHR_RADIUS,
            Unit::AtomicMassUnit => C::ATOMIC_MASS_UNIT,
            Unit::Kilogram => 1.0,
            Unit::PerCubicCentimeter => 1e6,
            Unit::PerCubicMeter => 1.0,
            Unit::Debye => C::DEBYE,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Unit::Joule => "J",
            Unit::PlanckHertz => "h*Hz",
            Unit::PlanckKiloHertz => "h*kHz",
            Unit::BoltzmannNanoKelvin => "kB*nK",
            Unit::BoltzmannMicroKelvin => "kB*uK",
            Unit::Meter => "m",
            Unit::Nanometer => "nm",
            Unit::Bohr => "a0",
            Unit::AtomicMassUnit => "u",
            Unit::Kilogram => "kg",
            Unit::PerCubicCentimeter => "cm^-3",
            Unit::PerCubicMeter => "m^-3",
            Unit::Debye => "D",
        }
    }
}

impl fmt::Display for Unit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

impl FromStr for Unit {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key: String = s
            .chars()
            .filter(|c| !c.is_whitespace() && *c != '*' && *c != '·' && *c != '_')
            .collect();
        let unit = match key.as_str() {
            "J" => Unit::Joule,
            "hHz" | "Hz" => Unit::PlanckHertz,
            "hkHz" | "kHz" => Unit::PlanckKiloHertz,
            "kBnK" | "nK" => Unit::BoltzmannNanoKelvin,
            "kBuK" | "kBμK" | "uK" | "μK" => Unit::BoltzmannMicroKelvin,
            "m" => Unit::Meter,
            "nm" => Unit::Nanometer,
            "a0" | "bohr" => Unit::Bohr,
            "u" | "amu" | "Da" => Unit::AtomicMassUnit,
            "kg" => Unit::Kilogram,
            "cm^-3" | "cm-3" | "cm⁻³" => Unit::PerCubicCentimeter,
            "m^-3" | "m-3" | "m⁻³" => Unit::PerCubicMeter,
            "D" | "Debye" => Unit::Debye,
            _ => return Err(Error::UnknownUnit(s.to_string())),
        };
        Ok(unit)
    }
}

/// Converts `value` between two units of the same dimension.
pub fn convert(value: f64, from: Unit, to: Unit) -> Result<f64> {
    if from.dimension() != to.dimension() {
        return Err(Error::DimensionMismatch {
            from: from.to_string(),
            to: to.to_string(),
        });
    }
    if from == to {
        return Ok(value);
    }
    Ok(value * (from.si_factor() / to.si_factor()))
}

/// A molecular species with its isotropic shielding interaction `+c6/r⁶`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Species {
    pub name: String,
    /// Molecular mass, kg.
    pub mass: f64,
    /// Shield range `(m c6 / ħ²)^{1/4}`, m.
    pub r6: f64,
    /// Shield coefficient, J·m⁶.
    pub c6: f64,
    /// Permanent dipole moment in Debye. Informational only.
    #[serde(default)]
    pub dipole_debye: f64,
    /// Tweezer waists (m) the species is usually studied at.
    #[serde(default)]
    pub reference_waists: Vec<f64>,
}

impl Species {
    /// Builds a species from its shield range, deriving `c6`.
    pub fn from_r6(name: impl Into<String>, mass: f64, r6: f64) -> Result<Self> {
        check_positive("mass", mass)?;
        check_positive("r6", r6)?;
        let c6 = C::HBAR * C::HBAR * r6.powi(4) / mass;
        Ok(Self {
            name: name.into(),
            mass,
            r6,
            c6,
            dipole_debye: 0.0,
            reference_waists: Vec::new(),
        })
    }

    /// Builds a species from its shield coefficient, deriving `R6`.
    pub fn from_c6(name: impl Into<String>, mass: f64, c6: f64) -> Result<Self> {
        check_positive("mass", mass)?;
        check_positive("c6", c6)?;
        let r6 = (mass * c6 / (C::HBAR * C::HBAR)).powf(0.25);
        Ok(Self {
            name: name.into(),
            mass,
            r6,
            c6,
            dipole_debye: 0.0,
            reference_waists: Vec::new(),
        })
    }

    pub fn with_dipole(mut self, debye: f64) -> Self {
        self.dipole_debye = debye;
        self
    }

    pub fn with_reference_waists(mut self, waists: Vec<f64>) -> Self {
        self.reference_waists = waists;
        self
    }

    /// Re-derives `c6` and `R6` from one another and checks consistency.
    pub fn validate(&self) -> Result<()> {
        check_positive("mass", self.mass)?;
        check_positive("r6", self.r6)?;
        check_positive("c6", self.c6)?;
        let r6 = (self.mass * self.c6 / (C::HBAR * C::HBAR)).powf(0.25);
        if ((r6 - self.r6) / self.r6).abs() > 1e-10 {
            return Err(Error::Parameter(format!(
                "species {}: r6 = {:e} m inconsistent with c6 (implies {:e} m)",
                self.name, self.r6, r6
            )));
        }
        Ok(())
    }

    /// Van der Waals energy scale `ħ²/(2 m R6²)`.
    pub fn characteristic_energy(&self) -> f64 {
        characteristic_energy(self)
    }
}

fn check_positive(field: &str, value: f64) -> Result<()> {
    if value.is_finite() && value > 0.0 {
        Ok(())
    } else {
        Err(Error::Parameter(format!("{field} must be positive, got {value}")))
    }
}

/// `E6 = ħ² / (2 m R6²)`.
pub fn characteristic_energy(species: &Species) -> f64 {
    C::HBAR * C::HBAR / (2.0 * species.mass * species.r6 * species.r6)
}

/// Isotope masses in u (AME2020).
pub mod isotopes {
    pub const NA23: f64 = 22.989_769_282_0;
    pub const CS133: f64 = 132.905_451_961;
    pub const K39: f64 = 38.963_706_486_4;
    pub const AG107: f64 = 106.905_091_6;
    pub const FR223: f64 = 223.019_736_0;
}

fn builtin(name: &str, mass_u: f64, r6_bohr: f64, dipole: f64, waists_nm: &[f64]) -> Species {
    Species::from_r6(
        name,
        mass_u * C::ATOMIC_MASS_UNIT,
        r6_bohr * C::BOHR_RADIUS,
    )
    .expect("builtin species parameters are positive")
    .with_dipole(dipole)
    .with_reference_waists(waists_nm.iter().map(|w| w * 1e-9).collect())
}

/// ²³Na¹³³Cs, ³⁹K¹⁰⁷Ag and ²²³Fr¹⁰⁷Ag with their shield ranges.
pub fn builtin_species() -> Vec<Species> {
    use isotopes::*;
    vec![
        builtin("NaCs", NA23 + CS133, 3000.0, 4.6, &[420.0, 700.0]),
        builtin("KAg", K39 + AG107, 9000.0, 8.5, &[300.0]),
        builtin("FrAg", FR223 + AG107, 14_000.0, 9.2, &[300.0]),
    ]
}

/// Case-insensitive lookup in [`builtin_species`].
pub fn species_by_name(name: &str) -> Result<Species> {
    builtin_species()
        .into_iter()
        .find(|s| s.name.eq_ignore_ascii_case(name))
        .ok_or_else(|| Error::UnknownSpecies(name.to_string()))
}

/// Gaussian tweezer `V(r) = -D exp(-2 r² / w0²)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TweezerConfig {
    /// Waist w0, m.
    pub waist: f64,
    /// Depth D, J.
    pub depth: f64,
}

impl TweezerConfig {
    pub fn new(waist: f64, depth: f64) -> Result<Self> {
        check_positive("waist", waist)?;
        if !(depth.is_finite() && depth >= 0.0) {
            return Err(Error::Parameter(format!(
                "depth must be non-negative, got {depth}"
            )));
        }
        Ok(Self { waist, depth })
    }

    pub fn potential(&self, r: f64) -> f64 {
        -self.depth * (-2.0 * r * r / (self.waist * self.waist)).exp()
    }

    /// Harmonic frequency at the trap bottom, `sqrt(4 D / (m w0²))`.
    pub fn harmonic_frequency(&self, mass: f64) -> f64 {
        (4.0 * self.depth / (mass * self.waist * self.waist)).sqrt()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn hbar_is_h_over_two_pi() {
        assert_eq!(C::HBAR, C::H / (2.0 * PI));
        assert_relative_eq!(C::HBAR, 1.054_571_817e-34, max_relative = 1e-10);
    }

    #[test]
    fn builtin_r6_values() {
        let nacs = species_by_name("NaCs").unwrap();
        assert_relative_eq!(nacs.r6, 3000.0 * C::BOHR_RADIUS, max_relative = 1e-15);
        assert_relative_eq!(nacs.r6 * 1e9, 158.753, max_relative = 1e-5);
        let kag = species_by_name("kag").unwrap();
        assert_relative_eq!(kag.r6, 9000.0 * C::BOHR_RADIUS, max_relative = 1e-15);
        let frag = species_by_name("FrAg").unwrap();
        assert_relative_eq!(frag.r6, 14_000.0 * C::BOHR_RADIUS, max_relative = 1e-15);
    }

    #[test]
    fn nacs_mass_is_sum_of_isotopes() {
        // 22.98976928 + 132.90545196 by hand
        let nacs = species_by_name("NaCs").unwrap();
        let mass_u = convert(nacs.mass, Unit::Kilogram, Unit::AtomicMassUnit).unwrap();
        assert!((mass_u - 155.895_221_24).abs() < 1e-6);
        assert!((mass_u - 155.90).abs() < 0.01);
    }

    #[test]
    fn r6_c6_invariant_holds() {
        for s in builtin_species() {
            let r6 = (s.mass * s.c6 / (C::HBAR * C::HBAR)).powf(0.25);
            assert_relative_eq!(r6, s.r6, max_relative = 1e-12);
            s.validate().unwrap();
        }
    }

    #[test]
    fn nacs_characteristic_energy_about_1_3_khz() {
        let e6 = characteristic_energy(&species_by_name("NaCs").unwrap());
        let khz = convert(e6, Unit::Joule, Unit::PlanckKiloHertz).unwrap();
        // ħ²/(2 m R6²)/h with m = 155.895 u, R6 = 158.753 nm
        assert!((khz - 1.2855).abs() < 2e-3, "E6/h = {khz} kHz");
    }

    #[test]
    fn characteristic_energy_scales_inverse_square() {
        let s = species_by_name("FrAg").unwrap();
        let doubled = Species::from_r6("x", s.mass, 2.0 * s.r6).unwrap();
        assert_relative_eq!(
            characteristic_energy(&s) / characteristic_energy(&doubled),
            4.0,
            max_relative = 1e-14
        );
    }

    #[test]
    fn unit_examples() {
        let nk = convert(1.0, Unit::PlanckKiloHertz, Unit::BoltzmannNanoKelvin).unwrap();
        assert!((nk - 47.992_43).abs() < 1e-4, "{nk}");
        let nm = convert(3000.0, Unit::Bohr, Unit::Nanometer).unwrap();
        assert!((nm - 158.75).abs() < 0.01);
        for u in Unit::ALL {
            for v in Unit::ALL.iter().filter(|v| v.dimension() == u.dimension()) {
                assert_eq!(convert(0.0, u, *v).unwrap(), 0.0);
            }
        }
    }

    #[test]
    fn incompatible_units_rejected() {
        assert!(matches!(
            convert(1.0, Unit::Nanometer, Unit::Joule),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn parse_units() {
        assert_eq!("h*kHz".parse::<Unit>().unwrap(), Unit::PlanckKiloHertz);
        assert_eq!("cm^-3".parse::<Unit>().unwrap(), Unit::PerCubicCentimeter);
        assert_eq!("kB·nK".parse::<Unit>().unwrap(), Unit::BoltzmannNanoKelvin);
        assert!("furlong".parse::<Unit>().is_err());
    }

    #[test]
    fn invalid_tweezer_rejected() {
        assert!(TweezerConfig::new(0.0, 1.0).is_err());
        assert!(TweezerConfig::new(1e-7, -1.0).is_err());
        assert!(TweezerConfig::new(1e-7, 0.0).is_ok());
    }

    #[test]
    fn species_roundtrips_through_c6() {
        let s = species_by_name("KAg").unwrap();
        let t = Species::from_c6("KAg", s.mass, s.c6).unwrap();
        assert_relative_eq!(t.r6, s.r6, max_relative = 1e-13);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(256))]
            #[test]
            fn conversion_roundtrip(a in 0usize..13, b in 0usize..13, x in -1e6f64..1e6) {
                let (a, b) = (Unit::ALL[a], Unit::ALL[b]);
                if a.dimension() == b.dimension() {
                    let y = convert(convert(x, a, b).unwrap(), b, a).unwrap();
                    prop_assert!((y - x).abs() <= 1e-14 * x.abs());
                } else {
                    prop_assert!(convert(x, a, b).is_err());
                }
            }

            #[test]
            fn r6_c6_consistent(mass_u in 10.0f64..400.0, r6_bohr in 100.0f64..50_000.0) {
                let s = Species::from_r6("p", mass_u * C::ATOMIC_MASS_UNIT, r6_bohr * C::BOHR_RADIUS).unwrap();
                let r6 = (s.mass * s.c6 / (C::HBAR * C::HBAR)).powf(0.25);
                prop_assert!(((r6 - s.r6) / s.r6).abs() < 1e-12);
            }
        }
    }
}
