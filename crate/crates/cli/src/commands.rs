//! The five subcommands. Each returns a table; `main` writes it.

use blockade::quantities::Species;
use blockade::spectrum::{regime_classify, solve_point};
use blockade::thermo::{
    blockade_satisfied, elastic_rates, occupation_probabilities, optimize_depth, triple_occupancy_bound, DepthSample,
    ReservoirState,
};
use blockade::{builtin_species, BasisParams, Error, TweezerConfig, Unit};
use rayon::prelude::*;

use crate::config::RunConfig;
use crate::error::CliError;
use crate::output::{Cell, Table};

fn khz() -> f64 {
    Unit::PlanckKiloHertz.si_factor()
}

/// Solves every depth of the configured scan, in scan order.
pub fn depth_samples(species: &Species, waist: f64, depths_khz: &[f64], params: &BasisParams) -> Result<Vec<DepthSample>, CliError> {
    let total = depths_khz.len();
    depths_khz
        .par_iter()
        .enumerate()
        .map(|(i, &d)| {
            let tweezer = TweezerConfig::new(waist, d * khz())?;
            let (single, pair) = solve_point(species, &tweezer, params)?;
            eprintln!("solved D = {d:.4} kHz ({}/{total})", i + 1);
            Ok(DepthSample {
                depth: tweezer.depth,
                single,
                pair,
            })
        })
        .collect()
}

fn reservoir(cfg: &RunConfig, species: &Species, t_nk: f64) -> Result<ReservoirState, CliError> {
    let t = t_nk * 1e-9;
    let r = &cfg.reservoir;
    let state = match r.psd {
        Some(rho) => ReservoirState::from_phase_space_density(species.mass, t, rho, r.statistics)?,
        None => ReservoirState::from_density(species.mass, t, r.density_cm3 * Unit::PerCubicCentimeter.si_factor(), r.statistics)?,
    };
    Ok(state)
}

fn waist(cfg: &RunConfig) -> f64 {
    cfg.tweezer.waist_nm * Unit::Nanometer.si_factor()
}

pub fn spectrum(cfg: &RunConfig) -> Result<Table, CliError> {
    let species = cfg.species()?;
    let params = cfg.basis.params()?;
    let samples = depth_samples(&species, waist(cfg), &cfg.depths_khz(), &params)?;
    let k = khz();
    let mut t = Table::new(vec![
        "depth_khz", "regime", "eps0_khz", "U0_khz", "kind", "index", "epsilon_khz", "l1", "U_khz", "J", "g",
    ]);
    for s in &samples {
        let d = s.depth / k;
        let regime = regime_classify(&s.single, &s.pair).label();
        let eps0 = Cell::opt(s.single.ground_binding().map(|e| e / k));
        let u0 = Cell::opt(s.pair.ground_interaction().map(|u| u / k));
        let lead = |kind: &str, i: usize| -> Vec<Cell> {
            vec![d.into(), regime.into(), eps0.clone(), u0.clone(), kind.into(), Cell::Int(i as i64)]
        };
        if s.single.is_empty() {
            let mut row = lead("none", 0);
            row.extend([Cell::Empty, Cell::Empty, Cell::Empty, Cell::Empty, Cell::Empty]);
            t.push(row);
            continue;
        }
        for (i, l) in s.single.levels.iter().enumerate() {
            let mut row = lead("single", i);
            row.extend([
                Cell::Num(l.binding / k),
                Cell::Int(l.l.into()),
                Cell::Empty,
                Cell::Empty,
                Cell::Int(l.degeneracy.into()),
            ]);
            t.push(row);
        }
        for (i, l) in s.pair.levels.iter().enumerate() {
            let mut row = lead("pair", i);
            row.extend([
                Cell::Empty,
                Cell::Empty,
                Cell::Num(l.interaction / k),
                Cell::Int(l.j.into()),
                Cell::Int(l.degeneracy.into()),
            ]);
            t.push(row);
        }
    }
    Ok(t)
}

pub fn fidelity(cfg: &RunConfig) -> Result<Table, CliError> {
    let species = cfg.species()?;
    let params = cfg.basis.params()?;
    let reservoirs = cfg
        .reservoir
        .temperatures_nk()
        .into_iter()
        .map(|t_nk| Ok((t_nk, reservoir(cfg, &species, t_nk)?)))
        .collect::<Result<Vec<_>, CliError>>()?;
    let samples = depth_samples(&species, waist(cfg), &cfg.depths_khz(), &params)?;
    let k = khz();
    let mut t = Table::new(vec![
        "T_nK",
        "density_cm3",
        "psd",
        "fugacity",
        "status",
        "depth_khz",
        "max_gap_depth_khz",
        "eps0_khz",
        "U0_khz",
        "p0",
        "p1",
        "p2",
        "F_sp",
        "F_gs",
        "infidelity_sp",
        "infidelity_gs",
        "p3_over_p2",
    ]);
    for (t_nk, res) in reservoirs {
        let mut row = vec![
            Cell::Num(t_nk),
            Cell::Num(res.density / Unit::PerCubicCentimeter.si_factor()),
            Cell::Num(res.phase_space_density),
            Cell::Num(res.fugacity),
        ];
        match optimize_depth(&samples, &res) {
            Ok(best) => {
                let s = &samples[best.index];
                let eps = s.single.ground_binding().unwrap_or(f64::NAN);
                let u = s.pair.ground_interaction().unwrap_or(f64::NAN);
                let r = best.result;
                row.extend([
                    Cell::from("ok"),
                    Cell::Num(s.depth / k),
                    Cell::Num(best.max_gap_depth / k),
                    Cell::Num(eps / k),
                    Cell::Num(u / k),
                    Cell::Num(r.p0),
                    Cell::Num(r.p1),
                    Cell::Num(r.p2),
                    Cell::Num(r.f_sp),
                    Cell::Num(r.f_gs),
                    Cell::Num(r.infidelity_sp()),
                    Cell::Num(r.infidelity_gs()),
                    Cell::Num(triple_occupancy_bound(&res, eps, u)),
                ]);
            }
            Err(Error::NoBlockadeWindow) => {
                eprintln!("T = {t_nk} nK: no depth in the scan satisfies 2ε > U > ε");
                row.push("no-blockade-window".into());
                row.extend(std::iter::repeat(Cell::Empty).take(12));
            }
            Err(e) => return Err(e.into()),
        }
        t.push(row);
    }
    Ok(t)
}

/// Fidelity at every depth of the scan for the first configured temperature.
pub fn optimize(cfg: &RunConfig) -> Result<Table, CliError> {
    let species = cfg.species()?;
    let params = cfg.basis.params()?;
    let t_nk = cfg.reservoir.temperatures_nk()[0];
    let res = reservoir(cfg, &species, t_nk)?;
    let samples = depth_samples(&species, waist(cfg), &cfg.depths_khz(), &params)?;
    let best = match optimize_depth(&samples, &res) {
        Ok(b) => Some(b.index),
        Err(Error::NoBlockadeWindow) => {
            eprintln!("no depth in the scan satisfies 2ε > U > ε");
            None
        }
        Err(e) => return Err(e.into()),
    };
    let k = khz();
    let mut t = Table::new(vec![
        "depth_khz",
        "T_nK",
        "regime",
        "eps0_khz",
        "U0_khz",
        "U_minus_eps_khz",
        "admissible",
        "optimum",
        "p0",
        "p1",
        "p2",
        "F_sp",
        "F_gs",
    ]);
    for (i, s) in samples.iter().enumerate() {
        let r = occupation_probabilities(&s.single, &s.pair, &res);
        t.push(vec![
            Cell::Num(s.depth / k),
            Cell::Num(t_nk),
            regime_classify(&s.single, &s.pair).label().into(),
            Cell::opt(s.single.ground_binding().map(|e| e / k)),
            Cell::opt(s.pair.ground_interaction().map(|u| u / k)),
            Cell::opt(s.blockade_gap().map(|g| g / k)),
            Cell::Bool(blockade_satisfied(&s.single, &s.pair)),
            Cell::Bool(best == Some(i)),
            Cell::Num(r.p0),
            Cell::Num(r.p1),
            Cell::Num(r.p2),
            Cell::Num(r.f_sp),
            Cell::Num(r.f_gs),
        ]);
    }
    Ok(t)
}

pub fn rates(cfg: &RunConfig) -> Result<Table, CliError> {
    let species = match &cfg.species {
        Some(s) => vec![s.resolve()?],
        None => builtin_species(),
    };
    let mut t = Table::new(vec![
        "species",
        "T_nK",
        "density_cm3",
        "sigma_um2",
        "v_m_per_s",
        "beta_cm3_per_s",
        "tau_s",
    ]);
    let cm3 = Unit::PerCubicCentimeter.si_factor();
    for s in &species {
        for t_nk in cfg.reservoir.temperatures_nk() {
            let res = reservoir(cfg, s, t_nk)?;
            let r = elastic_rates(s, t_nk * 1e-9, res.density)?;
            t.push(vec![
                s.name.clone().into(),
                Cell::Num(t_nk),
                Cell::Num(res.density / cm3),
                Cell::Num(r.cross_section * 1e12),
                Cell::Num(r.velocity),
                Cell::Num(r.rate_coefficient * cm3),
                Cell::Num(r.collision_time),
            ]);
        }
    }
    Ok(t)
}

pub fn species(cfg: &RunConfig) -> Result<Table, CliError> {
    let list = match &cfg.species {
        Some(s) => vec![s.resolve()?],
        None => builtin_species(),
    };
    let mut t = Table::new(vec![
        "name", "mass_u", "r6_a0", "r6_nm", "c6_J_m6", "E6_khz", "dipole_D", "waists_nm",
    ]);
    for s in &list {
        let waists: Vec<String> = s.reference_waists.iter().map(|w| format!("{}", (w * 1e9).round())).collect();
        t.push(vec![
            s.name.clone().into(),
            Cell::Num(s.mass / Unit::AtomicMassUnit.si_factor()),
            Cell::Num(s.r6 / Unit::Bohr.si_factor()),
            Cell::Num(s.r6 / Unit::Nanometer.si_factor()),
            Cell::Num(s.c6),
            Cell::Num(s.characteristic_energy() / khz()),
            Cell::Num(s.dipole_debye),
            waists.join(";").into(),
        ]);
    }
    Ok(t)
}
