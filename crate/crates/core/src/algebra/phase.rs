//! Exact phases `x ∈ ℚ/ℤ` and the exponential `ε(x) = e^{2πix}`.
//!
//! Phases are kept as reduced fractions modulo one so that long sums of
//! phases never drift; a phase is turned into a complex number only when
//! a matrix entry is finally written.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_integer::Integer;

/// A rational phase `numerator / denominator` taken modulo 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Phase {
    num: u64,
    den: u64,
}

impl Phase {
    pub const ZERO: Phase = Phase { num: 0, den: 1 };

    /// Builds `num/den mod 1`.
    ///
    /// # Panics
    /// If `den == 0`.
    pub fn new(num: i64, den: u64) -> Self {
        assert!(den > 0, "phase denominator must be positive");
        let den_i = den as i128;
        let r = (num as i128).rem_euclid(den_i) as u64;
        let g = r.gcd(&den);
        Phase {
            num: r / g,
            den: den / g,
        }
    }

    pub fn numerator(&self) -> u64 {
        self.num
    }

    pub fn denominator(&self) -> u64 {
        self.den
    }

    pub fn is_integer(&self) -> bool {
        self.num == 0
    }

    pub fn to_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }

    /// `e^{2πi·self}`. Quarter turns are returned exactly.
    pub fn epsilon(&self) -> Complex64 {
        if (4 * self.num).is_multiple_of(self.den) {
            return match 4 * self.num / self.den {
                0 => Complex64::new(1.0, 0.0),
                1 => Complex64::new(0.0, 1.0),
                2 => Complex64::new(-1.0, 0.0),
                _ => Complex64::new(0.0, -1.0),
            };
        }
        let theta = std::f64::consts::TAU * self.to_f64();
        Complex64::new(theta.cos(), theta.sin())
    }
}

impl Default for Phase {
    fn default() -> Self {
        Phase::ZERO
    }
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl Add for Phase {
    type Output = Phase;
    fn add(self, rhs: Phase) -> Phase {
        let l = self.den.lcm(&rhs.den);
        let a = self.num as u128 * (l / self.den) as u128 + rhs.num as u128 * (l / rhs.den) as u128;
        Phase::new((a % l as u128) as i64, l)
    }
}

impl Neg for Phase {
    type Output = Phase;
    fn neg(self) -> Phase {
        Phase::new(-(self.num as i64), self.den)
    }
}

impl Sub for Phase {
    type Output = Phase;
    fn sub(self, rhs: Phase) -> Phase {
        self + (-rhs)
    }
}

impl Mul<i64> for Phase {
    type Output = Phase;
    fn mul(self, k: i64) -> Phase {
        let prod = (self.num as i128 * k as i128).rem_euclid(self.den as i128);
        Phase::new(prod as i64, self.den)
    }
}

/// `ε(x)`.
pub fn epsilon(x: Phase) -> Complex64 {
    x.epsilon()
}

/// `Σ_{j=0}^{k-1} ε(jx)`.
///
/// Summed term by term; the closed forms (`k` for integral `x`, zero when
/// `kx` is integral) fall out to rounding.
pub fn geometric_phase_sum(k: u64, x: Phase) -> Complex64 {
    assert!(k >= 1, "geometric_phase_sum needs k >= 1");
    (0..k).map(|j| (x * j as i64).epsilon()).sum()
}
