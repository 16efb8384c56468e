//! Prints ε, U and the loading regime of KAg in a 300 nm tweezer over a
//! depth scan, followed by the best loading fidelity at 100 nK.

use blockade::spectrum::{regime_classify, solve_point_with};
use blockade::thermo::{optimize_depth, DepthSample};
use blockade::{species_by_name, BasisParams, ReservoirState, Statistics, TweezerConfig, Unit};

fn main() -> blockade::Result<()> {
    let khz = Unit::PlanckKiloHertz.si_factor();
    let kag = species_by_name("KAg")?;
    let params = BasisParams::default();

    let mut samples = Vec::new();
    println!("{:>10} {:>12} {:>12}  regime", "D (kHz)", "ε (kHz)", "U (kHz)");
    for i in 0..12 {
        let depth = 2.0 * 30f64.powf(f64::from(i) / 11.0);
        let tweezer = TweezerConfig::new(300e-9, depth * khz)?;
        let (single, pair) = solve_point_with(&kag, &tweezer, &params, &[0])?;
        let show = |x: Option<f64>| x.map_or("-".to_string(), |v| format!("{:.4}", v / khz));
        println!(
            "{depth:>10.3} {:>12} {:>12}  {}",
            show(single.ground_binding()),
            show(pair.ground_interaction()),
            regime_classify(&single, &pair)
        );
        samples.push(DepthSample {
            depth: tweezer.depth,
            single,
            pair,
        });
    }

    let reservoir = ReservoirState::from_density(kag.mass, 100e-9, 1e12 * Unit::PerCubicCentimeter.si_factor(), Statistics::Bose)?;
    let best = optimize_depth(&samples, &reservoir)?;
    println!(
        "100 nK, 1e12 cm^-3: D* = {:.3} kHz, F_sp = {:.4}, F_gs = {:.4}",
        samples[best.index].depth / khz,
        best.result.f_sp,
        best.result.f_gs
    );
    Ok(())
}
