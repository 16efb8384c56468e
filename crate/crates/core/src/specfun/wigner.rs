use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

/// An angular momentum or projection, stored as twice its value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct HalfInteger(i32);

impl HalfInteger {
    pub const ZERO: Self = Self(0);

    pub const fn from_twice(twice: i32) -> Self {
        Self(twice)
    }

    pub const fn integer(value: i32) -> Self {
        Self(2 * value)
    }

    pub const fn twice(self) -> i32 {
        self.0
    }

    pub fn value(self) -> f64 {
        f64::from(self.0) / 2.0
    }

    pub const fn is_integer(self) -> bool {
        self.0 % 2 == 0
    }
}

impl From<i32> for HalfInteger {
    fn from(value: i32) -> Self {
        Self::integer(value)
    }
}

impl fmt::Display for HalfInteger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

const TABLE_SIZE: usize = 256;

fn ln_factorial(n: i32) -> f64 {
    static TABLE: OnceLock<Vec<f64>> = OnceLock::new();
    let table = TABLE.get_or_init(|| {
        let mut t = Vec::with_capacity(TABLE_SIZE);
        let mut acc = 0.0;
        t.push(0.0);
        for k in 1..TABLE_SIZE {
            acc += (k as f64).ln();
            t.push(acc);
        }
        t
    });
    debug_assert!(n >= 0);
    match table.get(n as usize) {
        Some(v) => *v,
        None => libm::lgamma(f64::from(n) + 1.0),
    }
}

/// Twice-valued triangle test `|a - b| ≤ c ≤ a + b` with integer perimeter.
fn triangle(a: i32, b: i32, c: i32) -> bool {
    a >= 0 && b >= 0 && c >= 0 && (a + b + c) % 2 == 0 && c <= a + b && c >= (a - b).abs()
}

/// `ln Δ(abc)` with twice-valued arguments.
fn ln_triangle_coefficient(a: i32, b: i32, c: i32) -> f64 {
    ln_factorial((a + b - c) / 2) + ln_factorial((a - b + c) / 2) + ln_factorial((-a + b + c) / 2)
        - ln_factorial((a + b + c) / 2 + 1)
}

fn projection_ok(j: i32, m: i32) -> bool {
    m.abs() <= j && (j + m) % 2 == 0
}

fn phase(twice_exponent: i32) -> f64 {
    debug_assert!(twice_exponent % 2 == 0);
    if (twice_exponent / 2) % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// Wigner 3j symbol from the Racah sum. Returns 0 for forbidden couplings.
pub fn wigner_3j(
    j1: HalfInteger,
    j2: HalfInteger,
    j3: HalfInteger,
    m1: HalfInteger,
    m2: HalfInteger,
    m3: HalfInteger,
) -> f64 {
    let (j1, j2, j3) = (j1.0, j2.0, j3.0);
    let (m1, m2, m3) = (m1.0, m2.0, m3.0);
    if m1 + m2 + m3 != 0
        || !triangle(j1, j2, j3)
        || !projection_ok(j1, m1)
        || !projection_ok(j2, m2)
        || !projection_ok(j3, m3)
    {
        return 0.0;
    }
    if m1 == 0 && m2 == 0 && (j1 + j2 + j3) % 4 != 0 {
        // odd j1 + j2 + j3 with vanishing projections
        return 0.0;
    }
    // all quantities below are twice-valued; halve when used as factorial args
    let prefactor = 0.5
        * (ln_triangle_coefficient(j1, j2, j3)
            + ln_factorial((j1 + m1) / 2)
            + ln_factorial((j1 - m1) / 2)
            + ln_factorial((j2 + m2) / 2)
            + ln_factorial((j2 - m2) / 2)
            + ln_factorial((j3 + m3) / 2)
            + ln_factorial((j3 - m3) / 2));

    let k_min = 0.max((j2 - j3 - m1) / 2).max((j1 - j3 + m2) / 2);
    let k_max = ((j1 + j2 - j3) / 2).min((j1 - m1) / 2).min((j2 + m2) / 2);
    let mut sum = 0.0;
    for k in k_min..=k_max {
        let denom = ln_factorial(k)
            + ln_factorial((j3 - j2 + m1) / 2 + k)
            + ln_factorial((j3 - j1 - m2) / 2 + k)
            + ln_factorial((j1 + j2 - j3) / 2 - k)
            + ln_factorial((j1 - m1) / 2 - k)
            + ln_factorial((j2 + m2) / 2 - k);
        let term = (prefactor - denom).exp();
        sum += if k % 2 == 0 { term } else { -term };
    }
    phase(j1 - j2 - m3) * sum
}

/// Wigner 6j symbol `{j1 j2 j3; j4 j5 j6}` from the Racah sum.
pub fn wigner_6j(
    j1: HalfInteger,
    j2: HalfInteger,
    j3: HalfInteger,
    j4: HalfInteger,
    j5: HalfInteger,
    j6: HalfInteger,
) -> f64 {
    let (j1, j2, j3, j4, j5, j6) = (j1.0, j2.0, j3.0, j4.0, j5.0, j6.0);
    if !triangle(j1, j2, j3) || !triangle(j1, j5, j6) || !triangle(j4, j2, j6) || !triangle(j4, j5, j3) {
        return 0.0;
    }
    let prefactor = 0.5
        * (ln_triangle_coefficient(j1, j2, j3)
            + ln_triangle_coefficient(j1, j5, j6)
            + ln_triangle_coefficient(j4, j2, j6)
            + ln_triangle_coefficient(j4, j5, j3));
    let a = [
        (j1 + j2 + j3) / 2,
        (j1 + j5 + j6) / 2,
        (j4 + j2 + j6) / 2,
        (j4 + j5 + j3) / 2,
    ];
    let b = [
        (j1 + j2 + j4 + j5) / 2,
        (j2 + j3 + j5 + j6) / 2,
        (j3 + j1 + j6 + j4) / 2,
    ];
    let t_min = *a.iter().max().unwrap();
    let t_max = *b.iter().min().unwrap();
    let mut sum = 0.0;
    for t in t_min..=t_max {
        let denom: f64 = a.iter().map(|&ai| ln_factorial(t - ai)).sum::<f64>()
            + b.iter().map(|&bi| ln_factorial(bi - t)).sum::<f64>();
        let term = (prefactor + ln_factorial(t + 1) - denom).exp();
        sum += if t % 2 == 0 { term } else { -term };
    }
    sum
}
