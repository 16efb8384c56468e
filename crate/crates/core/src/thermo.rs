//! Grand-canonical occupation of one tweezer in contact with a reservoir gas.
//!
//! The tweezer holds zero, one or two molecules. Relative to the empty
//! tweezer a single molecule in level `i` has weight `z g_i e^{ε_i/kT}` and a
//! pair in level `i` has weight `s z² (2J+1) e^{−E⁽²⁾_i/kT}`, with `s = 1/2`
//! for a classical reservoir and `s = 1` for bosons. All sums run in log space.

use std::fmt;
use std::str::FromStr;

use libm::lgamma;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::quantities::{PhysicalConstants, Species};
use crate::specfun::{polylog_3_2, ZETA_3_2};
use crate::spectrum::{PairSpectrum, SingleSpectrum};

/// Quantum statistics of the reservoir gas.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Statistics {
    Classical,
    #[default]
    Bose,
}

impl Statistics {
    /// Weight multiplying every pair term.
    pub fn pair_symmetry_factor(self) -> f64 {
        match self {
            Statistics::Classical => 0.5,
            Statistics::Bose => 1.0,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Statistics::Classical => "classical",
            Statistics::Bose => "bose",
        }
    }
}

impl fmt::Display for Statistics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for Statistics {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "classical" | "boltzmann" => Ok(Statistics::Classical),
            "bose" | "bose-einstein" => Ok(Statistics::Bose),
            other => Err(Error::Parameter(format!("unknown statistics `{other}`"))),
        }
    }
}

/// `Λ = h / √(2π m k_B T)`.
pub fn thermal_wavelength(mass: f64, temperature: f64) -> f64 {
    PhysicalConstants::H / (2.0 * std::f64::consts::PI * mass * PhysicalConstants::K_B * temperature).sqrt()
}

/// Fugacity for a given phase-space density. Bose gases solve
/// `Li_{3/2}(z) = ρ` by bisection on `(0, 1]`.
pub fn fugacity(phase_space_density: f64, statistics: Statistics) -> Result<f64> {
    let rho = phase_space_density;
    if !(rho >= 0.0) || !rho.is_finite() {
        return Err(domain("fugacity", format!("phase-space density must be ≥ 0, got {rho}")));
    }
    if rho == 0.0 {
        return Ok(0.0);
    }
    match statistics {
        Statistics::Classical => Ok(rho),
        Statistics::Bose => {
            if rho > ZETA_3_2 {
                return Err(Error::CondensedReservoir { psd: rho, max: ZETA_3_2 });
            }
            // Li_{3/2}(z) ≥ z, so the root lies below min(ρ, 1).
            let (mut lo, mut hi) = (0.0_f64, rho.min(1.0));
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                if polylog_3_2(mid)? < rho {
                    lo = mid;
                } else {
                    hi = mid;
                }
                if hi - lo <= 1e-15 * hi {
                    break;
                }
            }
            Ok(0.5 * (lo + hi))
        }
    }
}

/// Thermodynamic state of the reservoir seen by the tweezer.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ReservoirState {
    /// K.
    pub temperature: f64,
    /// m⁻³.
    pub density: f64,
    /// m.
    pub thermal_wavelength: f64,
    pub phase_space_density: f64,
    pub fugacity: f64,
    pub statistics: Statistics,
}

impl ReservoirState {
    /// Reservoir of number density `n` (m⁻³) at temperature `T` (K).
    pub fn from_density(mass: f64, temperature: f64, density: f64, statistics: Statistics) -> Result<Self> {
        check_temperature(temperature)?;
        if !(density >= 0.0) || !density.is_finite() {
            return Err(Error::Parameter(format!("density must be ≥ 0, got {density}")));
        }
        let lambda = thermal_wavelength(mass, temperature);
        let rho = density * lambda.powi(3);
        Ok(Self {
            temperature,
            density,
            thermal_wavelength: lambda,
            phase_space_density: rho,
            fugacity: fugacity(rho, statistics)?,
            statistics,
        })
    }

    /// Reservoir specified by its phase-space density directly.
    pub fn from_phase_space_density(mass: f64, temperature: f64, rho: f64, statistics: Statistics) -> Result<Self> {
        check_temperature(temperature)?;
        let lambda = thermal_wavelength(mass, temperature);
        Ok(Self {
            temperature,
            density: rho / lambda.powi(3),
            thermal_wavelength: lambda,
            phase_space_density: rho,
            fugacity: fugacity(rho, statistics)?,
            statistics,
        })
    }

    pub fn thermal_energy(&self) -> f64 {
        PhysicalConstants::K_B * self.temperature
    }
}

fn check_temperature(t: f64) -> Result<()> {
    if t > 0.0 && t.is_finite() {
        Ok(())
    } else {
        Err(Error::Parameter(format!("temperature must be positive, got {t}")))
    }
}

/// Occupation probabilities of the empty, singly and doubly occupied tweezer.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FidelityResult {
    pub p0: f64,
    pub p1: f64,
    pub p2: f64,
    /// Probability of exactly one molecule, any motional level.
    pub f_sp: f64,
    /// Probability of exactly one molecule in the motional ground state.
    pub f_gs: f64,
    /// `ln Q`; `Q` itself overflows at nK temperatures.
    pub log_partition: f64,
    /// Depth the probabilities refer to, J, when known.
    pub depth: Option<f64>,
    /// `2ε > U > ε` at this point.
    pub blockade_satisfied: bool,
}

impl FidelityResult {
    pub fn infidelity_sp(&self) -> f64 {
        1.0 - self.f_sp
    }

    pub fn infidelity_gs(&self) -> f64 {
        1.0 - self.f_gs
    }
}

/// `2ε > U > ε` with the ground-state `ε` and `U`.
pub fn blockade_satisfied(single: &SingleSpectrum, pair: &PairSpectrum) -> bool {
    match (single.ground_binding(), pair.ground_interaction()) {
        (Some(eps), Some(u)) => u > eps && u < 2.0 * eps,
        _ => false,
    }
}

/// Grand-canonical `p0`, `p1`, `p2` and the two fidelities.
///
/// Every single level carries `g_i = 2l + 1`, every pair level `2J + 1`.
pub fn occupation_probabilities(single: &SingleSpectrum, pair: &PairSpectrum, reservoir: &ReservoirState) -> FidelityResult {
    let kt = reservoir.thermal_energy();
    let z = reservoir.fugacity;
    let satisfied = blockade_satisfied(single, pair);
    if z == 0.0 || single.is_empty() {
        return FidelityResult {
            p0: 1.0,
            p1: 0.0,
            p2: 0.0,
            f_sp: 0.0,
            f_gs: 0.0,
            log_partition: 0.0,
            depth: None,
            blockade_satisfied: satisfied,
        };
    }
    let ln_z = z.ln();
    let singles: Vec<f64> = single
        .levels
        .iter()
        .map(|l| ln_z + f64::from(l.degeneracy).ln() + l.binding / kt)
        .collect();
    let ln_sym = reservoir.statistics.pair_symmetry_factor().ln();
    let pairs: Vec<f64> = pair
        .levels
        .iter()
        .map(|l| 2.0 * ln_z + ln_sym + f64::from(l.degeneracy).ln() - l.energy / kt)
        .collect();
    let ground = single.levels[0];
    let ln_ground = ln_z + ground.binding / kt;

    let ln_one = log_sum_exp(&singles);
    let ln_two = log_sum_exp(&pairs);
    let ln_q = log_sum_exp(&[0.0, ln_one, ln_two]);
    let p0 = (-ln_q).exp();
    let p1 = (ln_one - ln_q).exp();
    let p2 = (ln_two - ln_q).exp();
    // the three sectors sum to one by construction; renormalize rounding
    let total = p0 + p1 + p2;
    FidelityResult {
        p0: p0 / total,
        p1: p1 / total,
        p2: p2 / total,
        f_sp: p1 / total,
        f_gs: (ln_ground - ln_q).exp() / total,
        log_partition: ln_q,
        depth: None,
        blockade_satisfied: satisfied,
    }
}

/// `ln Σ e^{x_i}`, shifted by the largest term. Empty input gives `−∞`.
pub fn log_sum_exp(terms: &[f64]) -> f64 {
    let max = terms.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if !max.is_finite() {
        return max;
    }
    max + terms.iter().map(|&x| (x - max).exp()).sum::<f64>().ln()
}

/// `ln W(N, E, V)` for `N` free particles of mass `m` in a box of volume `V`
/// with total energy `E`:
/// `W = V^N / (N! h^{3N}) · 2π^{3N/2} / Γ(3N/2) · (2mE)^{(3N−1)/2}`.
pub fn log_microstates(n: f64, energy: f64, volume: f64, mass: f64) -> f64 {
    let h = PhysicalConstants::H;
    n * volume.ln() - lgamma(n + 1.0) - 3.0 * n * h.ln() + 1.5 * n * std::f64::consts::PI.ln() + std::f64::consts::LN_2
        - lgamma(1.5 * n)
        + 0.5 * (3.0 * n - 1.0) * (2.0 * mass * energy).ln()
}

/// `ln [W(N−1, E + ε, V) / W(N, E, V)]`.
pub fn log_microcanonical_ratio(n: u64, total_energy: f64, volume: f64, binding: f64, mass: f64) -> Result<f64> {
    if n < 2 {
        return Err(Error::Parameter(format!("need N ≥ 2 reservoir particles, got {n}")));
    }
    if !(total_energy > 0.0 && volume > 0.0 && mass > 0.0) {
        return Err(Error::Parameter("energy, volume and mass must be positive".into()));
    }
    if total_energy + binding <= 0.0 {
        return Err(Error::Parameter("E + ε must stay positive".into()));
    }
    let n = n as f64;
    Ok(log_microstates(n - 1.0, total_energy + binding, volume, mass) - log_microstates(n, total_energy, volume, mass))
}

/// Finite-reservoir `p1/p0 = W(N−1, E + ε, V) / W(N, E, V)`.
pub fn microcanonical_ratio(n: u64, total_energy: f64, volume: f64, binding: f64, mass: f64) -> Result<f64> {
    log_microcanonical_ratio(n, total_energy, volume, binding, mass).map(f64::exp)
}

/// Three-sector validity threshold on `p3/p2`.
pub const TRIPLE_OCCUPANCY_LIMIT: f64 = 1e-3;

/// `p3/p2 = z e^{(ε − 2U)/kT}` for pairwise-additive repulsion.
pub fn triple_occupancy_bound(reservoir: &ReservoirState, binding: f64, interaction: f64) -> f64 {
    let kt = reservoir.thermal_energy();
    reservoir.fugacity * ((binding - 2.0 * interaction) / kt).exp()
}

/// One depth of a scan with its spectra.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DepthSample {
    /// J.
    pub depth: f64,
    pub single: SingleSpectrum,
    pub pair: PairSpectrum,
}

impl DepthSample {
    /// `U − ε` of the ground states, when both exist.
    pub fn blockade_gap(&self) -> Option<f64> {
        Some(self.pair.ground_interaction()? - self.single.ground_binding()?)
    }
}

/// Best depth of a scan.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DepthOptimum {
    pub result: FidelityResult,
    /// Index of the optimum in the scan.
    pub index: usize,
    /// Depth maximizing `U − ε` among admissible points, J.
    pub max_gap_depth: f64,
}

/// Maximizes `F_sp` over the scan points with `2ε > U > ε`.
pub fn optimize_depth(samples: &[DepthSample], reservoir: &ReservoirState) -> Result<DepthOptimum> {
    let mut best: Option<(usize, FidelityResult)> = None;
    let mut gap: Option<(f64, f64)> = None;
    for (i, s) in samples.iter().enumerate() {
        if !blockade_satisfied(&s.single, &s.pair) {
            continue;
        }
        let mut r = occupation_probabilities(&s.single, &s.pair, reservoir);
        r.depth = Some(s.depth);
        if best.as_ref().map_or(true, |(_, b)| r.f_sp > b.f_sp) {
            best = Some((i, r));
        }
        let g = s.blockade_gap().unwrap_or(f64::NEG_INFINITY);
        if gap.map_or(true, |(_, v)| g > v) {
            gap = Some((s.depth, g));
        }
    }
    match (best, gap) {
        (Some((index, result)), Some((max_gap_depth, _))) => Ok(DepthOptimum {
            result,
            index,
            max_gap_depth,
        }),
        _ => Err(Error::NoBlockadeWindow),
    }
}

/// Elastic collision estimates for the reservoir gas.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ElasticRates {
    /// `σ = 4π R6²`, m².
    pub cross_section: f64,
    /// `v = √(2kT/m)`, m/s.
    pub velocity: f64,
    /// `β = vσ`, m³/s.
    pub rate_coefficient: f64,
    /// `τ = 1/(nβ)`, s.
    pub collision_time: f64,
}

pub fn elastic_rates(species: &Species, temperature: f64, density: f64) -> Result<ElasticRates> {
    check_temperature(temperature)?;
    if !(density > 0.0) {
        return Err(Error::Parameter(format!("density must be positive, got {density}")));
    }
    let sigma = 4.0 * std::f64::consts::PI * species.r6 * species.r6;
    let v = (2.0 * PhysicalConstants::K_B * temperature / species.mass).sqrt();
    let beta = v * sigma;
    Ok(ElasticRates {
        cross_section: sigma,
        velocity: v,
        rate_coefficient: beta,
        collision_time: 1.0 / (density * beta),
    })
}

/// One molecule per cubed oscillator length, `(ħ/2mω)^{−3/2}`, m⁻³.
pub fn intra_tweezer_density(mass: f64, omega: f64) -> Result<f64> {
    if !(omega > 0.0 && mass > 0.0) {
        return Err(Error::Parameter("trap frequency and mass must be positive".into()));
    }
    Ok((PhysicalConstants::HBAR / (2.0 * mass * omega)).powf(-1.5))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantities::{species_by_name, Unit};
    use crate::spectrum::{PairLevel, SingleLevel};

    fn kelvin(nk: f64) -> f64 {
        nk * 1e-9
    }

    /// Spectra with one single level `ε` and optionally one pair level `U`.
    fn toy(eps: f64, u: Option<f64>) -> (SingleSpectrum, PairSpectrum) {
        let single = SingleSpectrum {
            levels: vec![SingleLevel {
                binding: eps,
                l: 0,
                degeneracy: 1,
            }],
            pair_route_binding: Some(eps),
        };
        let mut pair = PairSpectrum::empty(eps);
        if let Some(u) = u {
            pair.levels.push(PairLevel {
                energy: u - 2.0 * eps,
                interaction: u,
                j: 0,
                degeneracy: 1,
            });
        }
        (single, pair)
    }

    fn classical(rho: f64, t: f64) -> ReservoirState {
        let m = species_by_name("KAg").unwrap().mass;
        ReservoirState::from_phase_space_density(m, t, rho, Statistics::Classical).unwrap()
    }

    #[test]
    fn bose_fugacity_small_rho_series() {
        // Li_{3/2}(z) = z + z²/2^{3/2} + … inverted to second order
        let rho = 0.01;
        let z = fugacity(rho, Statistics::Bose).unwrap();
        let series = rho * (1.0 - rho / 2f64.powf(1.5));
        // truncation error is O(ρ³) ≈ 6e-8
        assert!((z - series).abs() < 1e-6, "{z} vs {series}");
        assert!((z - series).abs() / series < 1e-5);
        assert_eq!(fugacity(0.0, Statistics::Bose).unwrap(), 0.0);
        assert_eq!(fugacity(0.3, Statistics::Classical).unwrap(), 0.3);
    }

    #[test]
    fn bose_fugacity_close_to_rho_when_dilute() {
        for rho in [1e-4, 1e-3, 0.01, 0.027] {
            let z = fugacity(rho, Statistics::Bose).unwrap();
            assert!((z - rho).abs() / rho < 0.01);
        }
    }

    #[test]
    fn bose_fugacity_inverts_polylog() {
        for rho in [0.1, 0.5, 1.0, 2.0, 2.6] {
            let z = fugacity(rho, Statistics::Bose).unwrap();
            assert!((polylog_3_2(z).unwrap() - rho).abs() < 1e-12);
        }
    }

    #[test]
    fn condensed_reservoir_rejected() {
        let err = fugacity(2.7, Statistics::Bose).unwrap_err();
        assert!(matches!(err, Error::CondensedReservoir { .. }));
        assert!(fugacity(2.7, Statistics::Classical).is_ok());
    }

    #[test]
    fn statistics_parse() {
        assert_eq!("Bose".parse::<Statistics>().unwrap(), Statistics::Bose);
        assert_eq!("classical".parse::<Statistics>().unwrap(), Statistics::Classical);
        assert!("fermi".parse::<Statistics>().is_err());
    }

    #[test]
    fn single_level_ratio() {
        let t = kelvin(100.0);
        let kt = PhysicalConstants::K_B * t;
        let res = classical(0.02, t);
        let (s, p) = toy(3.0 * kt, None);
        let r = occupation_probabilities(&s, &p, &res);
        let expect = 0.02 * 3f64.exp();
        assert!((r.p1 / r.p0 - expect).abs() / expect < 1e-12);
        assert_eq!(r.p2, 0.0);
    }

    #[test]
    fn pair_ratio_carries_two_factorial() {
        let t = kelvin(100.0);
        let kt = PhysicalConstants::K_B * t;
        let (eps, u) = (4.0 * kt, 5.5 * kt);
        let (s, p) = toy(eps, Some(u));
        let r = occupation_probabilities(&s, &p, &classical(0.05, t));
        let expect = 0.5 * 0.05 * ((eps - u) / kt).exp();
        assert!((r.p2 / r.p1 - expect).abs() / expect < 1e-12);

        let m = species_by_name("KAg").unwrap().mass;
        let bose = ReservoirState::from_phase_space_density(m, t, 0.05, Statistics::Bose).unwrap();
        let r = occupation_probabilities(&s, &p, &bose);
        let expect = bose.fugacity * ((eps - u) / kt).exp();
        assert!((r.p2 / r.p1 - expect).abs() / expect < 1e-12);
    }

    #[test]
    fn cold_limit_loads_one() {
        let t = kelvin(1e-3);
        let kt = PhysicalConstants::K_B * t;
        let (s, p) = toy(2000.0 * kt, Some(3000.0 * kt));
        let r = occupation_probabilities(&s, &p, &classical(0.01, t));
        assert!((r.p1 - 1.0).abs() < 1e-12);
        assert!(r.log_partition > 700.0);
    }

    #[test]
    fn degeneracies_enter_weights() {
        let t = kelvin(100.0);
        let kt = PhysicalConstants::K_B * t;
        let mut single = toy(2.0 * kt, None).0;
        single.levels.push(SingleLevel {
            binding: kt,
            l: 1,
            degeneracy: 3,
        });
        let res = classical(0.1, t);
        let r = occupation_probabilities(&single, &PairSpectrum::empty(2.0 * kt), &res);
        let one = 0.1 * (2f64.exp() + 3.0 * 1f64.exp());
        assert!((r.p1 / r.p0 - one).abs() / one < 1e-12);
        assert!((r.f_gs / r.p0 - 0.1 * 2f64.exp()).abs() < 1e-12);
        assert!(r.f_gs < r.f_sp);
    }

    #[test]
    fn empty_reservoir_leaves_tweezer_empty() {
        let (s, p) = toy(1e-30, None);
        let r = occupation_probabilities(&s, &p, &classical(0.0, 1e-7));
        assert_eq!(r.p0, 1.0);
    }

    #[test]
    fn microcanonical_matches_grand_canonical() {
        let m = species_by_name("NaCs").unwrap().mass;
        let t = 1e-7;
        let kt = PhysicalConstants::K_B * t;
        let n = 10_000u64;
        let lambda = thermal_wavelength(m, t);
        let v = 1e3 * n as f64 * lambda.powi(3);
        let rho = n as f64 * lambda.powi(3) / v;
        let e = 1.5 * n as f64 * kt;
        let r0 = microcanonical_ratio(n, e, v, 0.0, m).unwrap();
        assert!((r0 / rho - 1.0).abs() < 1e-3);
        let r3 = microcanonical_ratio(n, e, v, 3.0 * kt, m).unwrap();
        assert!((r3 / (rho * 3f64.exp()) - 1.0).abs() < 5e-3);
        assert!(microcanonical_ratio(1, e, v, 0.0, m).is_err());
    }

    #[test]
    fn triple_bound_arithmetic() {
        let t = kelvin(100.0);
        let kt = PhysicalConstants::K_B * t;
        let res = classical(0.01, t);
        let b = triple_occupancy_bound(&res, 10.0 * kt, 10.0 * kt);
        assert!((b - 0.01 * (-10f64).exp()).abs() < 1e-18);
        assert!((b - 4.54e-7).abs() < 1e-9);
        let free = triple_occupancy_bound(&res, 2.0 * kt, 0.0);
        assert!((free - 0.01 * 2f64.exp()).abs() < 1e-15);
    }

    #[test]
    fn triple_bound_is_pair_ratio_times_boltzmann() {
        let t = kelvin(50.0);
        let kt = PhysicalConstants::K_B * t;
        let (eps, u) = (5.0 * kt, 6.0 * kt);
        let res = classical(0.02, t);
        let (s, p) = toy(eps, Some(u));
        let r = occupation_probabilities(&s, &p, &res);
        // with the classical 2! removed from p2/p1
        let p2p1 = 2.0 * r.p2 / r.p1;
        let bound = triple_occupancy_bound(&res, eps, u);
        assert!((bound - p2p1 * (-u / kt).exp()).abs() / bound < 1e-12);
    }

    #[test]
    fn optimizer_respects_constraint() {
        let t = kelvin(100.0);
        let kt = PhysicalConstants::K_B * t;
        let res = classical(0.01, t);
        let sample = |d: f64, eps: f64, u: f64| {
            let (single, pair) = toy(eps, Some(u));
            DepthSample { depth: d, single, pair }
        };
        let scan = vec![
            sample(1.0, 2.0 * kt, 3.5 * kt),
            sample(2.0, 5.0 * kt, 8.0 * kt),
            // deeper but unblockaded
            sample(3.0, 20.0 * kt, 10.0 * kt),
        ];
        let best = optimize_depth(&scan, &res).unwrap();
        assert_eq!(best.index, 1);
        assert_eq!(best.result.depth, Some(2.0));
        assert_eq!(best.max_gap_depth, 2.0);
        assert!(best.result.blockade_satisfied);
        assert!(matches!(optimize_depth(&scan[2..], &res), Err(Error::NoBlockadeWindow)));
    }

    #[test]
    fn appendix_rates() {
        let um2 = 1e-12;
        let expect = [("NaCs", 0.3), ("KAg", 2.9), ("FrAg", 7.2)];
        for (name, sigma) in expect {
            let s = species_by_name(name).unwrap();
            let r = elastic_rates(&s, 1e-7, 1e18).unwrap();
            assert!((r.cross_section / um2 - sigma).abs() / sigma < 0.1, "{name}: {}", r.cross_section / um2);
        }
        let nacs = elastic_rates(&species_by_name("NaCs").unwrap(), 1e-9, 1e16).unwrap();
        assert!((0.5..2.0).contains(&nacs.collision_time));
        let kag = elastic_rates(&species_by_name("KAg").unwrap(), 1e-7, 1e18).unwrap();
        assert!((50e-6..200e-6).contains(&kag.collision_time));
    }

    #[test]
    fn intra_tweezer_density_scale() {
        let m = species_by_name("KAg").unwrap().mass;
        let omega = 2.0 * std::f64::consts::PI * 40e3;
        let n = intra_tweezer_density(m, omega).unwrap();
        let per_cm3 = n / Unit::PerCubicCentimeter.si_factor();
        assert!((1e15..1e17).contains(&per_cm3), "{per_cm3:e}");
        let quarter = intra_tweezer_density(m, omega / 4.0).unwrap();
        assert!((n / quarter - 8.0).abs() < 1e-12);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn spectra() -> impl Strategy<Value = (SingleSpectrum, PairSpectrum)> {
            (0.1f64..30.0, prop::collection::vec((0.0f64..30.0, 0i32..4), 0..6), prop::collection::vec((0.0f64..60.0, 0i32..3), 0..6))
                .prop_map(|(eps0, excited, pairs)| {
                    let kt = PhysicalConstants::K_B * 1e-7;
                    let mut levels = vec![SingleLevel {
                        binding: eps0 * kt,
                        l: 0,
                        degeneracy: 1,
                    }];
                    for (frac, l) in excited {
                        levels.push(SingleLevel {
                            binding: eps0 * kt * frac / 30.0,
                            l,
                            degeneracy: (2 * l + 1) as u32,
                        });
                    }
                    let single = SingleSpectrum {
                        levels,
                        pair_route_binding: Some(eps0 * kt),
                    };
                    let mut pair = PairSpectrum::empty(eps0 * kt);
                    for (u, j) in pairs {
                        let u = u * kt;
                        if u < 2.0 * eps0 * kt {
                            pair.levels.push(PairLevel {
                                energy: u - 2.0 * eps0 * kt,
                                interaction: u,
                                j,
                                degeneracy: (2 * j + 1) as u32,
                            });
                        }
                    }
                    pair.levels.sort_by(|a, b| a.energy.total_cmp(&b.energy));
                    (single, pair)
                })
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(300))]

            #[test]
            fn probabilities_normalized((single, pair) in spectra(), rho in 0.0f64..2.5, bose in any::<bool>()) {
                let stats = if bose { Statistics::Bose } else { Statistics::Classical };
                let m = species_by_name("KAg").unwrap().mass;
                let res = ReservoirState::from_phase_space_density(m, 1e-7, rho, stats).unwrap();
                let r = occupation_probabilities(&single, &pair, &res);
                prop_assert!((r.p0 + r.p1 + r.p2 - 1.0).abs() < 1e-12);
                prop_assert!(r.f_gs >= 0.0 && r.f_gs <= r.f_sp + 1e-15 && r.f_sp <= 1.0);
                prop_assert!(r.p0 >= 0.0 && r.p2 >= 0.0);
            }

            #[test]
            fn classical_ratios_single_level(eps in 0.0f64..40.0, du in 0.01f64..20.0, rho in 1e-6f64..0.1) {
                let t = 1e-7;
                let kt = PhysicalConstants::K_B * t;
                let (s, p) = toy(eps * kt, Some((eps + du) * kt));
                let r = occupation_probabilities(&s, &p, &classical(rho, t));
                let one = rho * eps.exp();
                let two = 0.5 * rho * (-du).exp();
                prop_assert!((r.p1 / r.p0 - one).abs() / one < 1e-10);
                prop_assert!((r.p2 / r.p1 - two).abs() / two < 1e-10);
            }

            #[test]
            fn pair_fraction_grows_with_temperature_at_fixed_psd(eps in 1.0f64..20.0, du in 0.1f64..20.0, rho in 1e-6f64..0.5, t_lo in 10.0f64..500.0, step in 1.01f64..3.0) {
                let m = species_by_name("KAg").unwrap().mass;
                let kt_ref = PhysicalConstants::K_B * 1e-7;
                let (single, pair) = toy(eps * kt_ref, Some((eps + du) * kt_ref));
                let ratio = |t_nk: f64| {
                    let res = ReservoirState::from_phase_space_density(m, t_nk * 1e-9, rho, Statistics::Classical).unwrap();
                    let r = occupation_probabilities(&single, &pair, &res);
                    r.p2 / r.p1
                };
                prop_assert!(ratio(t_lo * step) > ratio(t_lo));
            }

            #[test]
            fn pair_fraction_grows_with_temperature_at_fixed_density(eps in 1.0f64..20.0, du_nk in 1.0f64..5000.0, n_cm3 in 1e8f64..1e12, t_lo in 10.0f64..500.0, step in 1.01f64..3.0) {
                // at fixed n, ρ ∝ T^{-3/2}; p2/p1 rises only while U − ε > 3kT/2
                let t_hi = t_lo * step;
                prop_assume!(du_nk > 1.5 * t_hi);
                let s = species_by_name("KAg").unwrap();
                let nk = PhysicalConstants::K_B * 1e-9;
                let eps_e = eps * 100.0 * nk;
                let (single, pair) = toy(eps_e, Some(eps_e + du_nk * nk));
                let ratio = |t_nk: f64| {
                    let res = ReservoirState::from_density(s.mass, t_nk * 1e-9, n_cm3 * 1e6, Statistics::Classical).unwrap();
                    let r = occupation_probabilities(&single, &pair, &res);
                    r.p2 / r.p1
                };
                prop_assert!(ratio(t_hi) > ratio(t_lo));
            }

            #[test]
            fn bose_and_classical_agree_when_dilute(eps in 0.5f64..30.0, du in 0.0f64..20.0) {
                // blockaded operating regime: one level each, U ≥ ε
                let t = 1e-7;
                let kt = PhysicalConstants::K_B * t;
                let (single, pair) = toy(eps * kt, Some((eps + du) * kt));
                let m = species_by_name("KAg").unwrap().mass;
                let c = ReservoirState::from_phase_space_density(m, t, 1e-3, Statistics::Classical).unwrap();
                let b = ReservoirState::from_phase_space_density(m, t, 1e-3, Statistics::Bose).unwrap();
                let fc = occupation_probabilities(&single, &pair, &c).f_sp;
                let fb = occupation_probabilities(&single, &pair, &b).f_sp;
                prop_assume!(fc > 1e-3);
                prop_assert!((fc - fb).abs() / fc < 2e-3, "{} vs {}", fc, fb);
            }

            #[test]
            fn microcanonical_converges_as_one_over_n(x in 0.0f64..5.0) {
                let m = 1e-25;
                let t = 1e-7;
                let kt = PhysicalConstants::K_B * t;
                let lambda = thermal_wavelength(m, t);
                let gap = |n: u64| {
                    let v = 1e3 * n as f64 * lambda.powi(3);
                    let rho = n as f64 * lambda.powi(3) / v;
                    let r = log_microcanonical_ratio(n, 1.5 * n as f64 * kt, v, x * kt, m).unwrap();
                    (r - (rho.ln() + x)).abs()
                };
                let (g3, g6) = (gap(1_000), gap(1_000_000));
                let slope = (g3.ln() - g6.ln()) / (1e6f64.ln() - 1e3f64.ln());
                prop_assert!((0.8..=1.2).contains(&slope), "slope {}", slope);
            }
        }
    }
}
