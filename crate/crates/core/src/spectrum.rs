//! One- and two-molecule tweezer spectra.
//!
//! The single molecule is solved per partial wave on the full DVR grid. The
//! pair is expanded in products of contracted radial functions for `r` and
//! `R` times coupled channels `|l L J M⟩`; the trap couples `r` and `R` through
//! its Legendre expansion and the shield `c6/r⁶` acts on `r` alone.
//!
//! Binding energies follow `E⁽¹⁾_i = −ε_i`, interaction energies
//! `E⁽²⁾_i = −2ε_0 + U_i`. The `ε_0` entering `U_i` is taken from the
//! non-interacting pair computed with the same product-basis machinery, so
//! basis errors common to both pair problems cancel.

use faer::Mat;
use serde::{Deserialize, Serialize};

use crate::angular::{enumerate_channels, trap_legendre_term, Channel, ChannelBasis};
use crate::error::{Error, Result};
use crate::quantities::{characteristic_energy, PhysicalConstants, Species, TweezerConfig};
use crate::radial::{contract, kinetic_matrix, reference_hamiltonian, symmetric_eigenvalues, ContractedBasis, GridSpec};
use crate::specfun::scaled_bessel_i_upto;

/// Truncation and convergence parameters of the bound-state solver.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct BasisParams {
    /// Largest `l` and `L` in the pair basis, and largest `l1` for one molecule.
    pub l_max: i32,
    /// Contracted radial functions per coordinate.
    pub n_contractions: usize,
    /// Grid spacing override, m.
    pub spacing: Option<f64>,
    /// Grid extent override, m.
    pub r_max: Option<f64>,
    /// Largest pair `J` included in thermodynamic sums.
    pub j_max: i32,
    /// Restrict the relative partial waves to even `l`.
    pub bosonic: bool,
    /// Include the shield `c6/r⁶` in the pair Hamiltonian.
    pub interacting: bool,
    /// Include the shield in the relative-coordinate reference potential.
    pub shield_in_reference: bool,
    /// Inner grid points with `c6/r⁶ > wall_ratio · D` are removed.
    pub wall_ratio: f64,
    /// Levels count as bound below `−bound_threshold · E6`.
    pub bound_threshold: f64,
}

impl Default for BasisParams {
    fn default() -> Self {
        Self {
            l_max: 6,
            n_contractions: 20,
            spacing: None,
            r_max: None,
            j_max: 2,
            bosonic: true,
            interacting: true,
            shield_in_reference: true,
            wall_ratio: 1e6,
            bound_threshold: 1e-3,
        }
    }
}

impl BasisParams {
    pub fn grid_spec(&self, species: &Species, waist: f64) -> GridSpec {
        let default = GridSpec::default_for(species, waist);
        GridSpec {
            spacing: self.spacing.unwrap_or(default.spacing),
            r_max: self.r_max.unwrap_or(default.r_max),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.l_max < 0 {
            return Err(Error::Parameter(format!("l_max must be ≥ 0, got {}", self.l_max)));
        }
        if self.n_contractions == 0 {
            return Err(Error::Parameter("n_contractions must be ≥ 1".into()));
        }
        if self.j_max < 0 {
            return Err(Error::Parameter(format!("j_max must be ≥ 0, got {}", self.j_max)));
        }
        if !(self.wall_ratio > 0.0) || !(self.bound_threshold >= 0.0) {
            return Err(Error::Parameter("wall_ratio and bound_threshold must be positive".into()));
        }
        Ok(())
    }

    fn threshold_energy(&self, species: &Species) -> f64 {
        -self.bound_threshold * characteristic_energy(species)
    }
}

/// A bound one-molecule level.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SingleLevel {
    /// Binding energy `ε_i > 0`, J.
    pub binding: f64,
    pub l: i32,
    pub degeneracy: u32,
}

/// Bound one-molecule levels, deepest first.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SingleSpectrum {
    pub levels: Vec<SingleLevel>,
    /// `ε_0 = −E⁽²'⁰⁾_0 / 2` from the non-interacting pair, J. `None` when no
    /// level is bound.
    pub pair_route_binding: Option<f64>,
}

impl SingleSpectrum {
    pub fn empty() -> Self {
        Self {
            levels: Vec::new(),
            pair_route_binding: None,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.levels.is_empty()
    }

    /// Ground-state binding `ε_0` from the direct one-molecule solve.
    pub fn ground_binding(&self) -> Option<f64> {
        self.levels.first().map(|l| l.binding)
    }

    /// `ε_0` used to extract interaction energies.
    pub fn reference_binding(&self) -> Option<f64> {
        self.pair_route_binding.or_else(|| self.ground_binding())
    }
}

/// A two-molecule level below the two-free-molecule threshold.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PairLevel {
    /// Total energy `E⁽²⁾_i`, J.
    pub energy: f64,
    /// `U_i = E⁽²⁾_i + 2ε_0`, J.
    pub interaction: f64,
    #[serde(rename = "J")]
    pub j: i32,
    pub degeneracy: u32,
}

/// Bound two-molecule levels sorted by ascending energy.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairSpectrum {
    pub levels: Vec<PairLevel>,
    /// `ε_0` used in `U_i`, J.
    pub reference_binding: f64,
    /// Channels included in each solved `J` block.
    pub channels: Vec<Channel>,
}

impl PairSpectrum {
    pub fn empty(reference_binding: f64) -> Self {
        Self {
            levels: Vec::new(),
            reference_binding,
            channels: Vec::new(),
        }
    }

    pub fn two_body_bound_exists(&self) -> bool {
        !self.levels.is_empty()
    }

    /// Lowest `J = 0` level, which carries `U ≡ U_0`; the lowest level of any
    /// `J` when no `J = 0` block was solved.
    pub fn ground(&self) -> Option<&PairLevel> {
        self.levels.iter().find(|l| l.j == 0).or_else(|| self.levels.first())
    }

    pub fn ground_interaction(&self) -> Option<f64> {
        self.ground().map(|l| l.interaction)
    }
}

/// Solves the one-molecule problem in the Gaussian trap for `l1 = 0..=l_max`.
///
/// The returned spectrum also carries the pair-route `ε_0`.
pub fn solve_single(species: &Species, tweezer: &TweezerConfig, params: &BasisParams) -> Result<SingleSpectrum> {
    params.validate()?;
    let mut levels = direct_single_levels(species, tweezer, params)?;
    if levels.is_empty() {
        return Ok(SingleSpectrum::empty());
    }
    levels.sort_by(|a, b| b.binding.total_cmp(&a.binding).then(a.l.cmp(&b.l)));
    let free = PairHamiltonian::build(species, tweezer, params, false)?;
    let basis = enumerate_channels(0, params.l_max, params.bosonic);
    let e0 = free.lowest_energy(&basis)?;
    Ok(SingleSpectrum {
        levels,
        pair_route_binding: Some(-0.5 * e0),
    })
}

/// Single-molecule levels from one DVR solve per partial wave.
pub fn direct_single_levels(species: &Species, tweezer: &TweezerConfig, params: &BasisParams) -> Result<Vec<SingleLevel>> {
    if tweezer.depth <= 0.0 {
        return Ok(Vec::new());
    }
    let grid = params.grid_spec(species, tweezer.waist).grid(species.mass)?;
    let threshold = params.threshold_energy(species);
    let mut levels = Vec::new();
    for l in 0..=params.l_max {
        let h = reference_hamiltonian(&grid, |r| tweezer.potential(r), l)?;
        let values = symmetric_eigenvalues(&h)?;
        let bound: Vec<f64> = values.into_iter().take_while(|&e| e < threshold).collect();
        if bound.is_empty() {
            // higher l only lies higher
            break;
        }
        levels.extend(bound.into_iter().map(|e| SingleLevel {
            binding: -e,
            l,
            degeneracy: (2 * l + 1) as u32,
        }));
    }
    Ok(levels)
}

/// Solves the pair for each requested `J`. Interaction energies use the
/// single spectrum's reference `ε_0`.
pub fn solve_pair(
    species: &Species,
    tweezer: &TweezerConfig,
    single: &SingleSpectrum,
    js: &[i32],
    params: &BasisParams,
) -> Result<PairSpectrum> {
    params.validate()?;
    let Some(eps0) = single.reference_binding() else {
        return Ok(PairSpectrum::empty(0.0));
    };
    if js.iter().any(|&j| j < 0) {
        return Err(Error::Parameter("J must be non-negative".into()));
    }
    let hamiltonian = PairHamiltonian::build(species, tweezer, params, params.interacting)?;
    let threshold = params.threshold_energy(species);
    let mut levels = Vec::new();
    let mut channels = Vec::new();
    for &j in js {
        let basis = enumerate_channels(j, params.l_max, params.bosonic);
        channels.extend(basis.channels.iter().copied());
        for block in basis.parity_blocks() {
            let values = hamiltonian.eigenvalues(&block)?;
            levels.extend(values.into_iter().take_while(|&e| e < threshold).map(|e| PairLevel {
                energy: e,
                interaction: e + 2.0 * eps0,
                j,
                degeneracy: (2 * j + 1) as u32,
            }));
        }
    }
    levels.sort_by(|a, b| a.energy.total_cmp(&b.energy));
    Ok(PairSpectrum {
        levels,
        reference_binding: eps0,
        channels,
    })
}

/// Both spectra at one depth: pair `J = 0..=j_max`.
pub fn solve_point(species: &Species, tweezer: &TweezerConfig, params: &BasisParams) -> Result<(SingleSpectrum, PairSpectrum)> {
    let js: Vec<i32> = (0..=params.j_max).collect();
    solve_point_with(species, tweezer, params, &js)
}

pub fn solve_point_with(
    species: &Species,
    tweezer: &TweezerConfig,
    params: &BasisParams,
    js: &[i32],
) -> Result<(SingleSpectrum, PairSpectrum)> {
    let single = solve_single(species, tweezer, params)?;
    if single.is_empty() {
        return Ok((single, PairSpectrum::empty(0.0)));
    }
    let pair = solve_pair(species, tweezer, &single, js, params)?;
    Ok((single, pair))
}

/// Loading regime at one trap depth.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Regime {
    /// The trap binds no molecule.
    NoSingleBound,
    /// No two-molecule level is bound (`U > 2ε`).
    NoPairBound,
    /// Pair levels exist but cost energy, `ε < U < 2ε`.
    Blockaded,
    /// `U < ε`: double occupancy is favored.
    Unblockaded,
}

impl Regime {
    pub fn label(self) -> &'static str {
        match self {
            Regime::NoSingleBound => "no-single-bound",
            Regime::NoPairBound => "no-pair-bound",
            Regime::Blockaded => "blockaded",
            Regime::Unblockaded => "unblockaded",
        }
    }
}

impl std::fmt::Display for Regime {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label())
    }
}

pub fn regime_classify(single: &SingleSpectrum, pair: &PairSpectrum) -> Regime {
    let Some(eps) = single.ground_binding() else {
        return Regime::NoSingleBound;
    };
    match pair.ground_interaction() {
        None => Regime::NoPairBound,
        Some(u) if u > eps => Regime::Blockaded,
        Some(_) => Regime::Unblockaded,
    }
}

/// Pair Hamiltonian pieces in the contracted product basis, reusable for
/// every `J` block at one depth.
pub struct PairHamiltonian {
    relative: ContractedBasis,
    center_of_mass: ContractedBasis,
    /// `⟨a| T_r + shield + ħ²l(l+1)/(2μr²) |a'⟩` for `l = 0..=l_max`.
    relative_blocks: Vec<Mat<f64>>,
    /// `⟨b| T_R + ħ²L(L+1)/(2M R²) |b'⟩` for `L = 0..=l_max`.
    center_of_mass_blocks: Vec<Mat<f64>>,
    /// `(ℓ, W_ℓ)` with `W_ℓ[(a b),(a' b')] = Σ φ_a φ_a' V_ℓ χ_b χ_b'`.
    trap_terms: Vec<(i32, Mat<f64>)>,
}

impl PairHamiltonian {
    pub fn build(species: &Species, tweezer: &TweezerConfig, params: &BasisParams, interacting: bool) -> Result<Self> {
        params.validate()?;
        if tweezer.depth <= 0.0 {
            return Err(Error::Parameter("pair Hamiltonian needs a positive depth".into()));
        }
        let spec = params.grid_spec(species, tweezer.waist);
        let (d, w0) = (tweezer.depth, tweezer.waist);
        let reduced = 0.5 * species.mass;
        let total = 2.0 * species.mass;
        let c6 = species.c6;
        let shield = move |r: f64| c6 / r.powi(6);

        let mut r_grid = spec.grid(reduced)?;
        if interacting {
            r_grid = r_grid.with_inner_wall(shield, params.wall_ratio * d)?;
        }
        let r_reference = |r: f64| {
            let trap = -d * (-r * r / (2.0 * w0 * w0)).exp();
            if interacting && params.shield_in_reference {
                trap + shield(r)
            } else {
                trap
            }
        };
        let relative = contract(&r_grid, r_reference, 0, params.n_contractions)?;

        let big_grid = spec.grid(total)?;
        let center_of_mass = contract(&big_grid, |x| -d * (-2.0 * x * x / (w0 * w0)).exp(), 0, params.n_contractions)?;

        let hb2 = PhysicalConstants::HBAR * PhysicalConstants::HBAR;
        let t_rel = kinetic_matrix(&relative.grid);
        let base_rel = relative.project(&t_rel);
        let shield_rel = if interacting {
            relative.diagonal_operator(shield)
        } else {
            Mat::zeros(relative.len(), relative.len())
        };
        let inv_r2_rel = relative.diagonal_operator(|r| hb2 / (2.0 * reduced * r * r));
        let relative_blocks = (0..=params.l_max)
            .map(|l| &base_rel + &shield_rel + f64::from(l * (l + 1)) * &inv_r2_rel)
            .collect();

        let t_com = kinetic_matrix(&center_of_mass.grid);
        let base_com = center_of_mass.project(&t_com);
        let inv_r2_com = center_of_mass.diagonal_operator(|r| hb2 / (2.0 * total * r * r));
        let center_of_mass_blocks = (0..=params.l_max)
            .map(|l| &base_com + f64::from(l * (l + 1)) * &inv_r2_com)
            .collect();

        let trap_terms = trap_projections(&relative, &center_of_mass, d, w0, 2 * params.l_max)?;

        Ok(Self {
            relative,
            center_of_mass,
            relative_blocks,
            center_of_mass_blocks,
            trap_terms,
        })
    }

    pub fn relative_basis(&self) -> &ContractedBasis {
        &self.relative
    }

    pub fn center_of_mass_basis(&self) -> &ContractedBasis {
        &self.center_of_mass
    }

    /// Dense Hamiltonian of one channel block; index `(c, a, b)`.
    pub fn block_matrix(&self, basis: &ChannelBasis) -> Mat<f64> {
        let na = self.relative.len();
        let nb = self.center_of_mass.len();
        let radial = na * nb;
        let nc = basis.len();
        let mut h = Mat::<f64>::zeros(nc * radial, nc * radial);

        for (c, ch) in basis.channels.iter().enumerate() {
            let rel = &self.relative_blocks[ch.l as usize];
            let com = &self.center_of_mass_blocks[ch.big_l as usize];
            let off = c * radial;
            for a in 0..na {
                for ap in 0..na {
                    let v = rel[(a, ap)];
                    for b in 0..nb {
                        h[(off + a * nb + b, off + ap * nb + b)] += v;
                    }
                }
                for b in 0..nb {
                    for bp in 0..nb {
                        h[(off + a * nb + b, off + a * nb + bp)] += com[(b, bp)];
                    }
                }
            }
        }

        for (ell, w) in &self.trap_terms {
            let coupling = basis.legendre_matrix(*ell);
            for c in 0..nc {
                for cp in 0..nc {
                    let g = coupling[c * nc + cp];
                    if g == 0.0 {
                        continue;
                    }
                    let (ro, co) = (c * radial, cp * radial);
                    for i in 0..radial {
                        for k in 0..radial {
                            h[(ro + i, co + k)] += g * w[(i, k)];
                        }
                    }
                }
            }
        }
        h
    }

    /// Ascending eigenvalues of one channel block.
    pub fn eigenvalues(&self, basis: &ChannelBasis) -> Result<Vec<f64>> {
        if basis.is_empty() {
            return Ok(Vec::new());
        }
        symmetric_eigenvalues(&self.block_matrix(basis))
    }

    /// Lowest eigenvalue across the parity blocks of `basis`.
    pub fn lowest_energy(&self, basis: &ChannelBasis) -> Result<f64> {
        let mut best = f64::INFINITY;
        for block in basis.parity_blocks() {
            if let Some(&e) = self.eigenvalues(&block)?.first() {
                best = best.min(e);
            }
        }
        if best.is_finite() {
            Ok(best)
        } else {
            Err(Error::Parameter("empty channel basis".into()))
        }
    }
}

/// `W_ℓ` for even `ℓ ≤ ell_max`, reindexed to the product basis `(a b)`.
fn trap_projections(
    relative: &ContractedBasis,
    center_of_mass: &ContractedBasis,
    depth: f64,
    waist: f64,
    ell_max: i32,
) -> Result<Vec<(i32, Mat<f64>)>> {
    let r_points = relative.grid.points();
    let big_points = center_of_mass.grid.points();
    let (na, nb) = (relative.len(), center_of_mass.len());
    let w2 = waist * waist;

    // Pair products of the contracted functions on their grids.
    let phi = &relative.vectors;
    let chi = &center_of_mass.vectors;
    let phi2 = Mat::from_fn(r_points.len(), na * na, |k, p| phi[(k, p / na)] * phi[(k, p % na)]);
    let chi2 = Mat::from_fn(big_points.len(), nb * nb, |k, p| chi[(k, p / nb)] * chi[(k, p % nb)]);

    let n_ell = (ell_max / 2 + 1) as usize;
    let mut grids: Vec<Mat<f64>> = (0..n_ell).map(|_| Mat::zeros(r_points.len(), big_points.len())).collect();
    for (i, &r) in r_points.iter().enumerate() {
        for (k, &big_r) in big_points.iter().enumerate() {
            let shift = std::f64::consts::SQRT_2 * big_r - r / std::f64::consts::SQRT_2;
            let envelope = -2.0 * depth * (-shift * shift / w2).exp();
            if envelope == 0.0 {
                continue;
            }
            let bessel = scaled_bessel_i_upto(ell_max, 2.0 * r * big_r / w2)?;
            for (e, grid) in grids.iter_mut().enumerate() {
                let ell = 2 * e;
                grid[(i, k)] = envelope * (2 * ell + 1) as f64 * bessel[ell];
            }
        }
    }
    debug_assert!({
        let (r, big_r) = (r_points[0], big_points[0]);
        let direct = trap_legendre_term(0, r, big_r, depth, waist).unwrap();
        (direct - grids[0][(0, 0)]).abs() <= 1e-12 * direct.abs()
    });

    let mut out = Vec::with_capacity(n_ell);
    for (e, grid) in grids.into_iter().enumerate() {
        // M[(a a'), (b b')] = Σ_{k K} φ_a φ_a'(k) V(k, K) χ_b χ_b'(K)
        let m = phi2.transpose() * (&grid * &chi2);
        let w = Mat::from_fn(na * nb, na * nb, |row, col| {
            let (a, b) = (row / nb, row % nb);
            let (ap, bp) = (col / nb, col % nb);
            m[(a * na + ap, b * nb + bp)]
        });
        out.push((2 * e as i32, w));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantities::{species_by_name, Unit};

    fn khz(x: f64) -> f64 {
        x * Unit::PlanckKiloHertz.si_factor()
    }

    fn small_params() -> BasisParams {
        BasisParams {
            l_max: 2,
            n_contractions: 8,
            j_max: 0,
            ..BasisParams::default()
        }
    }

    #[test]
    fn no_depth_no_levels() {
        let s = species_by_name("KAg").unwrap();
        let t = TweezerConfig::new(300e-9, 0.0).unwrap();
        let single = solve_single(&s, &t, &small_params()).unwrap();
        assert!(single.is_empty());
        let tiny = TweezerConfig::new(300e-9, 1e-6 * characteristic_energy(&s)).unwrap();
        assert!(solve_single(&s, &tiny, &small_params()).unwrap().is_empty());
    }

    #[test]
    fn regime_labels() {
        let single = SingleSpectrum {
            levels: vec![SingleLevel {
                binding: 1.0,
                l: 0,
                degeneracy: 1,
            }],
            pair_route_binding: Some(1.0),
        };
        let mut pair = PairSpectrum::empty(1.0);
        assert_eq!(regime_classify(&single, &pair), Regime::NoPairBound);
        pair.levels.push(PairLevel {
            energy: -0.5,
            interaction: 1.5,
            j: 0,
            degeneracy: 1,
        });
        assert_eq!(regime_classify(&single, &pair), Regime::Blockaded);
        pair.levels[0].interaction = 0.5;
        assert_eq!(regime_classify(&single, &pair), Regime::Unblockaded);
        assert_eq!(regime_classify(&SingleSpectrum::empty(), &pair), Regime::NoSingleBound);
    }

    #[test]
    fn single_levels_sorted_with_degeneracy() {
        let s = species_by_name("KAg").unwrap();
        let t = TweezerConfig::new(300e-9, khz(200.0)).unwrap();
        let levels = direct_single_levels(&s, &t, &small_params()).unwrap();
        assert!(levels.len() > 3);
        for l in &levels {
            assert_eq!(l.degeneracy, (2 * l.l + 1) as u32);
            assert!(l.binding > 0.0);
        }
        let single = solve_single(&s, &t, &small_params()).unwrap();
        assert!(single.levels.windows(2).all(|w| w[0].binding >= w[1].binding));
        assert_eq!(single.levels[0].l, 0);
    }

    #[test]
    fn binding_grows_with_depth() {
        let s = species_by_name("KAg").unwrap();
        let eps: Vec<f64> = [5.0, 10.0, 30.0, 100.0, 300.0]
            .iter()
            .map(|&d| {
                let t = TweezerConfig::new(300e-9, khz(d)).unwrap();
                direct_single_levels(&s, &t, &small_params()).unwrap()[0].binding
            })
            .collect();
        assert!(eps.windows(2).all(|w| w[1] > w[0]), "{eps:?}");
    }

    #[test]
    fn deep_trap_approaches_harmonic_ground_state() {
        let s = species_by_name("KAg").unwrap();
        let t = TweezerConfig::new(300e-9, khz(1000.0)).unwrap();
        let eps = direct_single_levels(&s, &t, &small_params()).unwrap()[0].binding;
        let hbar_omega = PhysicalConstants::HBAR * t.harmonic_frequency(s.mass);
        let expect = t.depth - 1.5 * hbar_omega;
        assert!(((eps - expect) / expect).abs() < 0.05, "{eps:e} vs {expect:e}");
    }

    #[test]
    fn interaction_off_gives_zero_u() {
        let s = species_by_name("NaCs").unwrap();
        let t = TweezerConfig::new(420e-9, khz(20.0)).unwrap();
        let params = BasisParams {
            interacting: false,
            ..small_params()
        };
        let (single, pair) = solve_point(&s, &t, &params).unwrap();
        assert!(!single.is_empty());
        let u = pair.ground_interaction().unwrap();
        assert!(u.abs() < 1e-3 * characteristic_energy(&s), "U0 = {u}");
    }

    #[test]
    fn bosonic_pair_has_only_even_l() {
        let s = species_by_name("KAg").unwrap();
        let t = TweezerConfig::new(300e-9, khz(100.0)).unwrap();
        let params = BasisParams {
            j_max: 2,
            ..small_params()
        };
        let (_, pair) = solve_point(&s, &t, &params).unwrap();
        assert!(!pair.channels.is_empty());
        assert!(pair.channels.iter().all(|c| c.l % 2 == 0));
    }

    #[test]
    fn block_matrix_is_symmetric() {
        let s = species_by_name("KAg").unwrap();
        let t = TweezerConfig::new(300e-9, khz(100.0)).unwrap();
        let h = PairHamiltonian::build(&s, &t, &small_params(), true).unwrap();
        let basis = enumerate_channels(2, 2, true);
        let m = h.block_matrix(&basis);
        let scale = m.norm_max();
        for i in 0..m.nrows() {
            for k in 0..i {
                assert!((m[(i, k)] - m[(k, i)]).abs() <= 1e-12 * scale);
            }
        }
    }
}
