//! Exact spider phases, stored as rational multiples of π.

use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_complex::Complex64;
use num_integer::Integer;

use crate::error::ZxError;

/// A phase `(numer / denom) · π`, reduced and normalized into `[0, 2π)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Phase {
    numer: i64,
    denom: i64,
}

impl Phase {
    pub const ZERO: Phase = Phase { numer: 0, denom: 1 };
    pub const PI: Phase = Phase { numer: 1, denom: 1 };

    /// Builds `numer/denom · π`. Panics if `denom == 0`.
    pub fn new(numer: i64, denom: i64) -> Phase {
        assert!(denom != 0, "phase denominator must be nonzero");
        let (mut n, mut d) = if denom < 0 {
            (-numer, -denom)
        } else {
            (numer, denom)
        };
        let g = n.gcd(&d);
        if g > 1 {
            n /= g;
            d /= g;
        }
        // [0, 2) in units of π
        n = n.rem_euclid(2 * d);
        Phase { numer: n, denom: d }
    }

    pub fn from_int(k: i64) -> Phase {
        Phase::new(k, 1)
    }

    pub fn numer(&self) -> i64 {
        self.numer
    }

    pub fn denom(&self) -> i64 {
        self.denom
    }

    pub fn is_zero(&self) -> bool {
        self.numer == 0
    }

    pub fn is_pi(&self) -> bool {
        self.numer == 1 && self.denom == 1
    }

    /// True for 0 and π.
    pub fn is_pauli(&self) -> bool {
        self.denom == 1
    }

    /// The angle in radians, in `[0, 2π)`.
    pub fn radians(&self) -> f64 {
        self.numer as f64 / self.denom as f64 * std::f64::consts::PI
    }

    /// `e^{iθ}`.
    pub fn unit(&self) -> Complex64 {
        // exact values for the common Clifford angles
        match (self.numer, self.denom) {
            (0, 1) => Complex64::new(1.0, 0.0),
            (1, 1) => Complex64::new(-1.0, 0.0),
            (1, 2) => Complex64::new(0.0, 1.0),
            (3, 2) => Complex64::new(0.0, -1.0),
            _ => Complex64::from_polar(1.0, self.radians()),
        }
    }
}

impl Add for Phase {
    type Output = Phase;
    fn add(self, rhs: Phase) -> Phase {
        let l = self.denom.lcm(&rhs.denom);
        Phase::new(
            self.numer * (l / self.denom) + rhs.numer * (l / rhs.denom),
            l,
        )
    }
}

impl Neg for Phase {
    type Output = Phase;
    fn neg(self) -> Phase {
        Phase::new(-self.numer, self.denom)
    }
}

impl Sub for Phase {
    type Output = Phase;
    fn sub(self, rhs: Phase) -> Phase {
        self + (-rhs)
    }
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denom == 1 {
            write!(f, "{}", self.numer)
        } else {
            write!(f, "{}/{}", self.numer, self.denom)
        }
    }
}

impl fmt::Debug for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Phase({}π)", self)
    }
}

impl FromStr for Phase {
    type Err = ZxError;

    /// Parses `"k"` or `"n/d"`, in units of π.
    fn from_str(s: &str) -> Result<Phase, ZxError> {
        let bad = || ZxError::Phase(s.to_string());
        let s = s.trim();
        match s.split_once('/') {
            Some((n, d)) => {
                let n: i64 = n.trim().parse().map_err(|_| bad())?;
                let d: i64 = d.trim().parse().map_err(|_| bad())?;
                if d == 0 {
                    return Err(bad());
                }
                Ok(Phase::new(n, d))
            }
            None => s.parse::<i64>().map(Phase::from_int).map_err(|_| bad()),
        }
    }
}
