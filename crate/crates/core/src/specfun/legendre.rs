use crate::error::{domain, Result};

/// Legendre polynomial `P_ℓ(x)` by upward recurrence.
///
/// Arguments within `1e-12` outside `[-1, 1]` are clamped.
pub fn legendre_p(ell: i32, x: f64) -> Result<f64> {
    if ell < 0 {
        return Err(domain("legendre_p", format!("negative degree {ell}")));
    }
    if !(x.abs() <= 1.0 + 1e-12) {
        return Err(domain("legendre_p", format!("argument {x} outside [-1, 1]")));
    }
    let x = x.clamp(-1.0, 1.0);
    let (mut p_prev, mut p) = (1.0, x);
    if ell == 0 {
        return Ok(p_prev);
    }
    for n in 1..ell {
        let n = f64::from(n);
        let next = ((2.0 * n + 1.0) * x * p - n * p_prev) / (n + 1.0);
        p_prev = p;
        p = next;
    }
    Ok(p)
}
