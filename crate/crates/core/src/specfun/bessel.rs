use crate::error::{domain, Result};

/// Exponentially scaled modified spherical Bessel function of the first kind,
/// `ĩ_ℓ(x) = e^{-x} i_ℓ(x)` with `i_ℓ(x) = sqrt(π/2x) I_{ℓ+1/2}(x)`.
///
/// Finite for every `x ≥ 0`; `ĩ_0(0) = 1` and `ĩ_ℓ(0) = 0` for `ℓ > 0`.
pub fn scaled_bessel_i(ell: i32, x: f64) -> Result<f64> {
    if ell < 0 {
        return Err(domain("scaled_bessel_i", format!("negative order {ell}")));
    }
    if !(x >= 0.0) {
        return Err(domain("scaled_bessel_i", format!("negative argument {x}")));
    }
    if x == 0.0 {
        return Ok(if ell == 0 { 1.0 } else { 0.0 });
    }
    let l = f64::from(ell);
    // Below the switch the positive power series is used; above it the
    // terminating asymptotic sum has ratio ℓ(ℓ+1)/2x < 1 and no cancellation.
    if x <= (l * l).max(20.0) {
        Ok(power_series(ell, x))
    } else {
        Ok(closed_form(ell, x))
    }
}

/// `ĩ_0(x) … ĩ_{ℓmax}(x)` in one pass.
///
/// All orders follow from the downward recurrence
/// `i_{ℓ-1} = i_{ℓ+1} + (2ℓ+1) i_ℓ / x`, which is stable in that direction.
/// At large `x` it starts from the two highest orders evaluated directly;
/// otherwise it starts far above `ℓmax` (Miller) and is normalized to `ĩ_0`.
pub fn scaled_bessel_i_upto(l_max: i32, x: f64) -> Result<Vec<f64>> {
    if l_max < 0 {
        return Err(domain("scaled_bessel_i_upto", format!("negative order {l_max}")));
    }
    if !(x >= 0.0) {
        return Err(domain("scaled_bessel_i_upto", format!("negative argument {x}")));
    }
    if l_max < 2 || x < 1.0 {
        return (0..=l_max).map(|l| scaled_bessel_i(l, x)).collect();
    }
    let l = f64::from(l_max);
    if x > (l * l).max(20.0) {
        let mut out = vec![0.0; l_max as usize + 1];
        out[l_max as usize] = closed_form(l_max, x);
        out[l_max as usize - 1] = closed_form(l_max - 1, x);
        recur_down(&mut out, x);
        return Ok(out);
    }
    Ok(miller(l_max, x))
}

fn recur_down(out: &mut [f64], x: f64) {
    for l in (1..out.len() - 1).rev() {
        out[l - 1] = out[l + 1] + (2 * l + 1) as f64 * out[l] / x;
    }
}

/// Downward recurrence from order `N`, where the discarded dominant solution
/// has fallen below rounding: its weight decays like `exp(-(N² - ℓ²)/x)`.
fn miller(l_max: i32, x: f64) -> Vec<f64> {
    let start = l_max as usize + 20 + (40.0 * x).sqrt().ceil() as usize;
    let keep = l_max as usize + 1;
    let mut out = vec![0.0; keep];
    let (mut above, mut here) = (0.0, 1e-200);
    for l in (1..=start).rev() {
        if l < keep {
            out[l] = here;
        }
        let below = above + (2 * l + 1) as f64 * here / x;
        above = here;
        here = below;
        if here > 1e250 {
            above *= 1e-250;
            here *= 1e-250;
            for v in &mut out {
                *v *= 1e-250;
            }
        }
    }
    out[0] = here;
    let scale = -(-2.0 * x).exp_m1() / (2.0 * x) / here;
    for v in &mut out {
        *v *= scale;
    }
    out
}

/// `i_ℓ(x) = x^ℓ/(2ℓ+1)!! Σ_k (x²/2)^k / (k! (2ℓ+3)(2ℓ+5)…(2ℓ+2k+1))`.
fn power_series(ell: i32, x: f64) -> f64 {
    let l = f64::from(ell);
    let half_x2 = 0.5 * x * x;
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut k = 0.0;
    loop {
        k += 1.0;
        term *= half_x2 / (k * (2.0 * l + 2.0 * k + 1.0));
        sum += term;
        if term < 1e-17 * sum {
            break;
        }
    }
    let mut log_double_fact = 0.0;
    let mut n = 2.0 * l + 1.0;
    while n > 1.0 {
        log_double_fact += n.ln();
        n -= 2.0;
    }
    (l * x.ln() - log_double_fact - x + sum.ln()).exp()
}

/// `ĩ_ℓ(x) = [Σ_k (-1)^k a_k (2x)^{-k} - (-1)^ℓ e^{-2x} Σ_k a_k (2x)^{-k}] / 2x`,
/// `a_k = (ℓ+k)! / (k! (ℓ-k)!)`.
fn closed_form(ell: i32, x: f64) -> f64 {
    let inv_2x = 0.5 / x;
    let mut a = 1.0;
    let mut power = 1.0;
    let mut alternating = 0.0;
    let mut plain = 0.0;
    for k in 0..=ell {
        let t = a * power;
        alternating += if k % 2 == 0 { t } else { -t };
        plain += t;
        let kf = f64::from(k);
        let lf = f64::from(ell);
        a *= (lf + kf + 1.0) * (lf - kf) / (kf + 1.0);
        power *= inv_2x;
    }
    let sign = if ell % 2 == 0 { 1.0 } else { -1.0 };
    inv_2x * (alternating - sign * (-2.0 * x).exp() * plain)
}
