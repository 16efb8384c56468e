//! Special functions used by the angular and statistical layers.

mod bessel;
mod legendre;
mod polylog;
mod wigner;

pub use bessel::{scaled_bessel_i, scaled_bessel_i_upto};
pub use legendre::legendre_p;
pub use polylog::{polylog_3_2, ZETA_3_2};
pub use wigner::{wigner_3j, wigner_6j, HalfInteger};
