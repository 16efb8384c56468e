//! Coupled two-molecule angular basis `|l L J M⟩` and the Legendre expansion
//! of the Gaussian tweezer in relative (`r`) and center-of-mass (`R`)
//! coordinates.
//!
//! With `R = (r1 + r2)/2` and `r = r1 - r2` the two-center trap is
//!
//! ```text
//! V = -2D exp(-(2R² + r²/2)/w0²) Σ_{even ℓ} (2ℓ+1) i_ℓ(2rR/w0²) P_ℓ(cos θ)
//! ```
//!
//! where `θ` is the angle between `r` and `R`. The growing Bessel factor is
//! folded into the Gaussian so every radial coefficient stays finite.

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::specfun::{scaled_bessel_i, wigner_3j, wigner_6j, HalfInteger};

/// One coupled channel: relative partial wave `l`, center-of-mass partial
/// wave `L`, total angular momentum `J`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Channel {
    pub l: i32,
    #[serde(rename = "L")]
    pub big_l: i32,
    #[serde(rename = "J")]
    pub j: i32,
}

impl Channel {
    pub fn new(l: i32, big_l: i32, j: i32) -> Self {
        Self { l, big_l, j }
    }

    pub fn satisfies_triangle(&self) -> bool {
        self.l >= 0 && self.big_l >= 0 && self.j >= (self.l - self.big_l).abs() && self.j <= self.l + self.big_l
    }

    /// `(l mod 2, L mod 2)`. The even-`ℓ` trap never mixes different tags.
    pub fn parity_tag(&self) -> (i32, i32) {
        (self.l.rem_euclid(2), self.big_l.rem_euclid(2))
    }

    /// Spatial parity `(-1)^{l+L}`.
    pub fn parity(&self) -> i32 {
        if (self.l + self.big_l) % 2 == 0 {
            1
        } else {
            -1
        }
    }
}

/// All channels of one total `J`, ordered by `(l, L)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChannelBasis {
    pub j: i32,
    pub channels: Vec<Channel>,
}

impl ChannelBasis {
    pub fn len(&self) -> usize {
        self.channels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.channels.is_empty()
    }

    /// Splits the basis into sub-bases that the trap cannot couple.
    pub fn parity_blocks(&self) -> Vec<ChannelBasis> {
        let mut tags: Vec<(i32, i32)> = self.channels.iter().map(Channel::parity_tag).collect();
        tags.sort_unstable();
        tags.dedup();
        tags.into_iter()
            .map(|tag| ChannelBasis {
                j: self.j,
                channels: self.channels.iter().copied().filter(|c| c.parity_tag() == tag).collect(),
            })
            .collect()
    }

    /// Dense matrix of `P_ℓ(cos θ)` between the channels, row-major.
    pub fn legendre_matrix(&self, ell: i32) -> Vec<f64> {
        let n = self.len();
        let mut out = vec![0.0; n * n];
        for (i, a) in self.channels.iter().enumerate() {
            for (k, b) in self.channels.iter().enumerate().skip(i) {
                let v = legendre_matrix_element(a, b, ell);
                out[i * n + k] = v;
                out[k * n + i] = v;
            }
        }
        out
    }
}

/// Enumerates `(l, L)` with `l, L ≤ l_max` coupling to `J`; identical bosons
/// keep only even `l`.
pub fn enumerate_channels(j: i32, l_max: i32, bosonic: bool) -> ChannelBasis {
    let mut channels = Vec::new();
    for l in 0..=l_max {
        if bosonic && l % 2 != 0 {
            continue;
        }
        for big_l in 0..=l_max {
            let c = Channel::new(l, big_l, j);
            if c.satisfies_triangle() {
                channels.push(c);
            }
        }
    }
    ChannelBasis { j, channels }
}

/// Radial coefficient `V_ℓ(r, R)` of the Legendre-expanded two-center trap,
/// `-2D (2ℓ+1) exp(-(√2 R - r/√2)²/w0²) ĩ_ℓ(2rR/w0²)`.
pub fn trap_legendre_term(ell: i32, r: f64, big_r: f64, depth: f64, waist: f64) -> Result<f64> {
    if ell < 0 || ell % 2 != 0 {
        return Err(domain("trap_legendre_term", format!("ℓ = {ell} must be even and non-negative")));
    }
    if !(r >= 0.0 && big_r >= 0.0) {
        return Err(domain("trap_legendre_term", "radii must be non-negative"));
    }
    let w2 = waist * waist;
    let shift = std::f64::consts::SQRT_2 * big_r - r / std::f64::consts::SQRT_2;
    let bessel = scaled_bessel_i(ell, 2.0 * r * big_r / w2)?;
    Ok(-2.0 * depth * f64::from(2 * ell + 1) * (-shift * shift / w2).exp() * bessel)
}

/// `⟨l L J M| P_ℓ(r̂·R̂) |l' L' J M⟩`
/// `= (-1)^{l+l'+J} [l,l',L,L']^{1/2} {l l' ℓ; L' L J} (l ℓ l'; 0 0 0) (L ℓ L'; 0 0 0)`.
///
/// Zero when the channels differ in `J` or when `ℓ > l + l'` or `ℓ > L + L'`.
pub fn legendre_matrix_element(a: &Channel, b: &Channel, ell: i32) -> f64 {
    if a.j != b.j || ell < 0 || ell > a.l + b.l || ell > a.big_l + b.big_l {
        return 0.0;
    }
    let h = HalfInteger::integer;
    let zero = HalfInteger::ZERO;
    let three_small = wigner_3j(h(a.l), h(ell), h(b.l), zero, zero, zero);
    if three_small == 0.0 {
        return 0.0;
    }
    let three_big = wigner_3j(h(a.big_l), h(ell), h(b.big_l), zero, zero, zero);
    if three_big == 0.0 {
        return 0.0;
    }
    let six = wigner_6j(h(a.l), h(b.l), h(ell), h(b.big_l), h(a.big_l), h(a.j));
    let sign = if (a.l + b.l + a.j) % 2 == 0 { 1.0 } else { -1.0 };
    let dims = f64::from((2 * a.l + 1) * (2 * b.l + 1) * (2 * a.big_l + 1) * (2 * b.big_l + 1));
    sign * dims.sqrt() * six * three_small * three_big
}
