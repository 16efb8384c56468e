//! Sinc-function discrete variable representation on the half-line and
//! contracted radial bases.
//!
//! Grid points sit at `r_k = kΔ` for `k = first..=last`. The kinetic matrix is
//! the Colbert–Miller radial form, so functions vanish at the origin and the
//! potential is diagonal.

use std::f64::consts::PI;

use faer::{Mat, Side};

use crate::error::{Error, Result};
use crate::quantities::{PhysicalConstants, Species};

/// Uniform radial grid for one coordinate with its kinetic mass.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DvrGrid {
    spacing: f64,
    /// Index of the innermost retained point (`≥ 1`).
    first: usize,
    /// Index of the outermost point.
    last: usize,
    mass: f64,
}

impl DvrGrid {
    /// Points `Δ, 2Δ, …, NΔ`.
    pub fn new(spacing: f64, n_points: usize, mass: f64) -> Result<Self> {
        if !(spacing > 0.0 && spacing.is_finite()) {
            return Err(Error::Parameter(format!("grid spacing must be positive, got {spacing}")));
        }
        if n_points == 0 {
            return Err(Error::Parameter("grid needs at least one point".into()));
        }
        if !(mass > 0.0) {
            return Err(Error::Parameter(format!("mass must be positive, got {mass}")));
        }
        Ok(Self {
            spacing,
            first: 1,
            last: n_points,
            mass,
        })
    }

    /// Grid covering `(0, r_max]` with the given spacing.
    pub fn covering(spacing: f64, r_max: f64, mass: f64) -> Result<Self> {
        let n = (r_max / spacing).ceil().max(1.0) as usize;
        Self::new(spacing, n, mass)
    }

    pub fn spacing(&self) -> f64 {
        self.spacing
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    pub fn len(&self) -> usize {
        self.last + 1 - self.first
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn first_index(&self) -> usize {
        self.first
    }

    pub fn r_max(&self) -> f64 {
        self.last as f64 * self.spacing
    }

    pub fn points(&self) -> Vec<f64> {
        (self.first..=self.last).map(|k| k as f64 * self.spacing).collect()
    }

    /// Drops inner points where `potential(r) > limit`, leaving a hard wall.
    pub fn with_inner_wall(&self, potential: impl Fn(f64) -> f64, limit: f64) -> Result<Self> {
        let mut first = self.first;
        while first <= self.last {
            let v = potential(first as f64 * self.spacing);
            if v.is_finite() && v <= limit {
                break;
            }
            first += 1;
        }
        if first > self.last {
            return Err(Error::Parameter("inner wall removes the whole grid".into()));
        }
        Ok(Self { first, ..*self })
    }

    pub fn with_mass(&self, mass: f64) -> Self {
        Self { mass, ..*self }
    }
}

/// Spacing and extent used for both radial coordinates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub spacing: f64,
    pub r_max: f64,
}

impl GridSpec {
    /// Eight points across `min(R6, w0)/4`; extent `max(6 w0, 3 R6)`.
    pub fn default_for(species: &Species, waist: f64) -> Self {
        Self {
            spacing: species.r6.min(waist) / 32.0,
            r_max: (6.0 * waist).max(3.0 * species.r6),
        }
    }

    pub fn grid(&self, mass: f64) -> Result<DvrGrid> {
        DvrGrid::covering(self.spacing, self.r_max, mass)
    }
}

/// Colbert–Miller kinetic energy matrix on `(0, ∞)`, in J.
///
/// `T_kk = ħ²/(2μΔ²) (π²/3 − 1/(2k²))`,
/// `T_kk' = ħ²/(2μΔ²) (−1)^{k−k'} [2/(k−k')² − 2/(k+k')²]`.
pub fn kinetic_matrix(grid: &DvrGrid) -> Mat<f64> {
    image_kinetic_matrix(grid, -1.0)
}

/// Kinetic matrix in the sinc basis symmetrized about the origin: the image
/// terms enter with `+` instead of `−`.
///
/// Radial functions behave as `r^{l+1}`. For odd `l` their odd extension has a
/// kink in a high derivative at `r = 0` and the antisymmetric basis converges
/// only algebraically, while the even extension stays smooth.
pub fn kinetic_matrix_even(grid: &DvrGrid) -> Mat<f64> {
    image_kinetic_matrix(grid, 1.0)
}

/// Kinetic matrix suited to partial wave `l`.
pub fn kinetic_matrix_for(grid: &DvrGrid, l: i32) -> Mat<f64> {
    if l % 2 == 0 {
        kinetic_matrix(grid)
    } else {
        kinetic_matrix_even(grid)
    }
}

fn image_kinetic_matrix(grid: &DvrGrid, image: f64) -> Mat<f64> {
    let hb = PhysicalConstants::HBAR;
    let scale = hb * hb / (2.0 * grid.mass * grid.spacing * grid.spacing);
    let first = grid.first;
    Mat::from_fn(grid.len(), grid.len(), |i, j| {
        let (k, kp) = ((first + i) as f64, (first + j) as f64);
        if i == j {
            scale * (PI * PI / 3.0 + image * 0.5 / (k * k))
        } else {
            let d = k - kp;
            let s = k + kp;
            let sign = if (i + j) % 2 == 0 { 1.0 } else { -1.0 };
            scale * sign * (2.0 / (d * d) + image * 2.0 / (s * s))
        }
    })
}

/// Colbert–Miller kinetic matrix on the full line for `n` points of spacing
/// `Δ`: `T_ii = ħ²π²/(6μΔ²)`, `T_ij = ħ²(−1)^{i−j}/(μΔ²(i−j)²)`.
pub fn kinetic_matrix_full_line(spacing: f64, n: usize, mass: f64) -> Mat<f64> {
    let hb = PhysicalConstants::HBAR;
    let scale = hb * hb / (2.0 * mass * spacing * spacing);
    Mat::from_fn(n, n, |i, j| {
        if i == j {
            scale * PI * PI / 3.0
        } else {
            let d = i as f64 - j as f64;
            let sign = if (i + j) % 2 == 0 { 1.0 } else { -1.0 };
            scale * sign * 2.0 / (d * d)
        }
    })
}

/// Kinetic energy plus diagonal `potential(r) + ħ² l(l+1)/(2μ r²)`, with
/// the image sign matched to the parity of `l`.
pub fn reference_hamiltonian(grid: &DvrGrid, potential: impl Fn(f64) -> f64, l: i32) -> Result<Mat<f64>> {
    let mut h = kinetic_matrix_for(grid, l);
    let hb = PhysicalConstants::HBAR;
    let centrifugal = hb * hb * f64::from(l * (l + 1)) / (2.0 * grid.mass);
    for (i, r) in grid.points().into_iter().enumerate() {
        let v = potential(r);
        if !v.is_finite() {
            return Err(Error::Singularity { radius: r });
        }
        h[(i, i)] += v + centrifugal / (r * r);
    }
    Ok(h)
}

/// Eigenvalues of a real symmetric matrix, ascending.
///
/// The matrix is rescaled to unit max-norm first: energies in J sit near
/// 1e-29, where the solver's absolute tolerances break down.
pub fn symmetric_eigenvalues(h: &Mat<f64>) -> Result<Vec<f64>> {
    let scale = unit_scale(h);
    let scaled = (1.0 / scale) * h;
    let mut values = scaled.self_adjoint_eigenvalues(Side::Lower).map_err(|_| Error::Eigensolver)?;
    values.sort_by(f64::total_cmp);
    values.iter_mut().for_each(|v| *v *= scale);
    Ok(values)
}

fn unit_scale(h: &Mat<f64>) -> f64 {
    let m = h.norm_max();
    if m > 0.0 && m.is_finite() {
        m
    } else {
        1.0
    }
}

/// Lowest `n` eigenpairs of a real symmetric matrix, ascending.
pub fn lowest_eigenpairs(h: &Mat<f64>, n: usize) -> Result<(Vec<f64>, Mat<f64>)> {
    let scale = unit_scale(h);
    let scaled = (1.0 / scale) * h;
    let evd = scaled.self_adjoint_eigen(Side::Lower).map_err(|_| Error::Eigensolver)?;
    let s = evd.S().column_vector();
    let u = evd.U();
    let mut order: Vec<usize> = (0..h.nrows()).collect();
    order.sort_by(|&a, &b| s[a].total_cmp(&s[b]));
    order.truncate(n);
    let values = order.iter().map(|&i| s[i] * scale).collect();
    let vectors = Mat::from_fn(h.nrows(), order.len(), |r, c| u[(r, order[c])]);
    Ok((values, vectors))
}

/// Lowest eigenvectors of a one-coordinate reference Hamiltonian, used as a
/// compact radial basis.
#[derive(Debug, Clone)]
pub struct ContractedBasis {
    pub grid: DvrGrid,
    /// Grid amplitudes, one column per contracted function.
    pub vectors: Mat<f64>,
    /// Reference energies, ascending, J.
    pub energies: Vec<f64>,
}

impl ContractedBasis {
    pub fn len(&self) -> usize {
        self.energies.len()
    }

    pub fn is_empty(&self) -> bool {
        self.energies.is_empty()
    }

    /// `⟨a| f(r) |b⟩` for a diagonal operator.
    pub fn diagonal_operator(&self, f: impl Fn(f64) -> f64) -> Mat<f64> {
        let weights: Vec<f64> = self.grid.points().into_iter().map(f).collect();
        let n = self.len();
        let v = &self.vectors;
        let weighted = Mat::from_fn(v.nrows(), n, |k, a| v[(k, a)] * weights[k]);
        v.transpose() * &weighted
    }

    /// Projects a grid-space matrix, `Φᵀ A Φ`.
    pub fn project(&self, a: &Mat<f64>) -> Mat<f64> {
        self.vectors.transpose() * (a * &self.vectors)
    }
}

/// Builds `n` contracted functions from the reference Hamiltonian.
pub fn contract(grid: &DvrGrid, potential: impl Fn(f64) -> f64, l: i32, n: usize) -> Result<ContractedBasis> {
    if n == 0 || n > grid.len() {
        return Err(Error::Parameter(format!(
            "cannot contract {n} functions on a grid of {} points",
            grid.len()
        )));
    }
    let h = reference_hamiltonian(grid, potential, l)?;
    let (energies, vectors) = lowest_eigenpairs(&h, n)?;
    Ok(ContractedBasis {
        grid: *grid,
        vectors,
        energies,
    })
}
