//! Bound states of microwave-shielded polar molecules in optical tweezers and
//! the equilibrium statistics of loading exactly one of them.
//!
//! The layers build on each other:
//!
//! * [`quantities`]: constants, units, species registry.
//! * [`specfun`]: Legendre, scaled spherical Bessel, Wigner symbols, `Li_{3/2}`.
//! * [`angular`]: coupled `|l L J M⟩` channels and the Legendre-expanded trap.
//! * [`radial`]: sinc-DVR grids and contracted radial bases.
//! * [`spectrum`]: one- and two-molecule tweezer levels, `ε_i` and `U_i`.
//! * [`thermo`]: grand-canonical occupations, fidelities, collision rates.

pub mod angular;
pub mod error;
pub mod quantities;
pub mod radial;
pub mod specfun;
pub mod spectrum;
pub mod thermo;

pub use error::{Error, Result};
pub use quantities::{builtin_species, species_by_name, PhysicalConstants, Species, TweezerConfig, Unit};
pub use spectrum::{BasisParams, PairSpectrum, Regime, SingleSpectrum};
pub use thermo::{FidelityResult, ReservoirState, Statistics};
