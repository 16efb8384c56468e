use std::f64::consts::PI;

use crate::error::{domain, Result};

/// `ζ(3/2)`, the largest value of `Li_{3/2}` on `[0, 1]`.
pub const ZETA_3_2: f64 = 2.612_375_348_685_488_3;

const DIRECT_TERMS: usize = 100;

/// Polylogarithm `Li_{3/2}(z) = Σ_{k≥1} z^k / k^{3/2}` for `0 ≤ z ≤ 1`.
///
/// Small arguments are summed directly. Otherwise the first terms are summed
/// explicitly and the remainder is an Euler–Maclaurin tail built on the
/// closed-form integral of `e^{-a t} t^{-3/2}`.
pub fn polylog_3_2(z: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&z) {
        return Err(domain("polylog_3_2", format!("argument {z} outside [0, 1]")));
    }
    if z == 0.0 {
        return Ok(0.0);
    }
    if z == 1.0 {
        return Ok(ZETA_3_2);
    }
    if z <= 0.5 {
        let mut sum = 0.0;
        let mut power = 1.0;
        for k in 1..200 {
            power *= z;
            let term = power / (k as f64).powf(1.5);
            sum += term;
            if term < 1e-18 * sum {
                break;
            }
        }
        return Ok(sum);
    }

    let a = -z.ln();
    let mut head = 0.0;
    let mut power = 1.0;
    for k in 1..=DIRECT_TERMS {
        power *= z;
        head += power / (k as f64).powf(1.5);
    }
    Ok(head + tail(a, DIRECT_TERMS as f64))
}

/// `Σ_{k>n} e^{-a k} k^{-3/2}` by Euler–Maclaurin about `t = n`.
fn tail(a: f64, n: f64) -> f64 {
    let s = 1.5;
    // ∫_n^∞ e^{-at} t^{-3/2} dt = 2 e^{-an}/√n − 2 √(πa) erfc(√(an))
    let integral = 2.0 * (-a * n).exp() / n.sqrt() - 2.0 * (PI * a).sqrt() * libm::erfc((a * n).sqrt());
    let d = |order: u32| derivative(a, s, n, order);
    // Σ_{k=n+1}^∞ f(k) = ∫_n^∞ f − f(n)/2 − f'(n)/12 + f'''(n)/720 − f⁽⁵⁾(n)/30240
    integral - d(0) / 2.0 - d(1) / 12.0 + d(3) / 720.0 - d(5) / 30240.0
}

/// `dⁿ/dtⁿ [e^{-at} t^{-s}]` at `t`.
fn derivative(a: f64, s: f64, t: f64, order: u32) -> f64 {
    let mut total = 0.0;
    let mut binom = 1.0;
    for j in 0..=order {
        // falling factorial of (-s) of length j
        let mut falling = 1.0;
        for i in 0..j {
            falling *= -s - f64::from(i);
        }
        total += binom * (-a).powi((order - j) as i32) * falling * t.powf(-s - f64::from(j));
        binom *= f64::from(order - j) / f64::from(j + 1);
    }
    (-a * t).exp() * total
}
