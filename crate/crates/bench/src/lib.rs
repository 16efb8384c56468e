//! Shared fixtures for the benchmarks.

use blockade::{species_by_name, BasisParams, Species, TweezerConfig, Unit};

/// KAg in a 300 nm tweezer at the given depth in h·kHz.
pub fn kag_tweezer(depth_khz: f64) -> (Species, TweezerConfig) {
    let s = species_by_name("KAg").expect("builtin");
    let t = TweezerConfig::new(300e-9, depth_khz * Unit::PlanckKiloHertz.si_factor()).expect("valid tweezer");
    (s, t)
}

/// A reduced basis so one iteration stays well under a second.
pub fn small_basis() -> BasisParams {
    BasisParams {
        l_max: 2,
        n_contractions: 10,
        j_max: 0,
        ..BasisParams::default()
    }
}
