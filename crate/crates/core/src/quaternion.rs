//! Quaternion algebra.
//!
//! A quaternion `w + xi + yj + zk` is stored as `(w, x, y, z)` with `w` the
//! scalar part. The basis elements obey `i² = j² = k² = ijk = -1`, which fixes
//! the Hamilton product below. Values are immutable and always finite: every
//! operation that could overflow returns [`Error::NumericRange`] instead of
//! storing an infinity.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng::UnitStream;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "[f64; 4]", into = "[f64; 4]")]
pub struct Quaternion {
    w: f64,
    x: f64,
    y: f64,
    z: f64,
}

impl Quaternion {
    pub const ZERO: Self = Self::raw(0.0, 0.0, 0.0, 0.0);
    pub const ONE: Self = Self::raw(1.0, 0.0, 0.0, 0.0);
    pub const I: Self = Self::raw(0.0, 1.0, 0.0, 0.0);
    pub const J: Self = Self::raw(0.0, 0.0, 1.0, 0.0);
    pub const K: Self = Self::raw(0.0, 0.0, 0.0, 1.0);

    const fn raw(w: f64, x: f64, y: f64, z: f64) -> Self {
        Self { w, x, y, z }
    }

    pub fn new(w: f64, x: f64, y: f64, z: f64) -> Result<Self> {
        for value in [w, x, y, z] {
            if !value.is_finite() {
                return Err(Error::NonFinite {
                    context: "quaternion component",
                    value,
                });
            }
        }
        Ok(Self::raw(w, x, y, z))
    }

    /// Embeds a real number in the scalar slot.
    pub fn from_scalar(s: f64) -> Result<Self> {
        Self::new(s, 0.0, 0.0, 0.0)
    }

    fn checked(w: f64, x: f64, y: f64, z: f64, op: &'static str) -> Result<Self> {
        if w.is_finite() && x.is_finite() && y.is_finite() && z.is_finite() {
            Ok(Self::raw(w, x, y, z))
        } else {
            Err(Error::NumericRange { op })
        }
    }

    pub fn w(&self) -> f64 {
        self.w
    }
    pub fn x(&self) -> f64 {
        self.x
    }
    pub fn y(&self) -> f64 {
        self.y
    }
    pub fn z(&self) -> f64 {
        self.z
    }

    pub fn to_array(self) -> [f64; 4] {
        [self.w, self.x, self.y, self.z]
    }

    pub fn try_add(&self, rhs: &Self) -> Result<Self> {
        Self::checked(
            self.w + rhs.w,
            self.x + rhs.x,
            self.y + rhs.y,
            self.z + rhs.z,
            "add",
        )
    }

    pub fn try_sub(&self, rhs: &Self) -> Result<Self> {
        Self::checked(
            self.w - rhs.w,
            self.x - rhs.x,
            self.y - rhs.y,
            self.z - rhs.z,
            "sub",
        )
    }

    pub fn try_scale(&self, s: f64) -> Result<Self> {
        if !s.is_finite() {
            return Err(Error::NonFinite {
                context: "quaternion scale factor",
                value: s,
            });
        }
        Self::checked(s * self.w, s * self.x, s * self.y, s * self.z, "scale")
    }

    /// Hamilton product `self · rhs`. Associative, not commutative.
    pub fn try_mul(&self, rhs: &Self) -> Result<Self> {
        let (a, b) = (self, rhs);
        Self::checked(
            a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
            a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
            a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
            a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w,
            "mul",
        )
    }

    pub fn conj(&self) -> Self {
        Self::raw(self.w, -self.x, -self.y, -self.z)
    }

    /// Euclidean norm `sqrt(w² + x² + y² + z²)`.
    pub fn norm(&self) -> f64 {
        let sum = self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z;
        if sum.is_finite() && (sum == 0.0 || sum.is_normal()) {
            sum.sqrt()
        } else {
            // Squares overflowed or underflowed.
            self.w.hypot(self.x).hypot(self.y.hypot(self.z))
        }
    }

    /// Each component uniform on `[-scale, scale]`, consuming exactly four
    /// draws in `w, x, y, z` order.
    pub fn random<S: UnitStream + ?Sized>(rng: &mut S, scale: f64) -> Result<Self> {
        Self::random_masked(rng, scale, ComponentMask::ALL)
    }

    /// Like [`Quaternion::random`] but only active components are drawn; the
    /// others stay zero and consume no draws.
    pub fn random_masked<S: UnitStream + ?Sized>(
        rng: &mut S,
        scale: f64,
        mask: ComponentMask,
    ) -> Result<Self> {
        if !(scale > 0.0 && scale.is_finite()) {
            return Err(Error::InvalidConfig(format!(
                "quaternion random scale must be positive and finite, got {scale}"
            )));
        }
        let mut c = [0.0; 4];
        for (slot, active) in c.iter_mut().zip(mask.0) {
            if active {
                *slot = rng.uniform(-scale, scale);
            }
        }
        Ok(Self::raw(c[0], c[1], c[2], c[3]))
    }

    /// Zeroes the components the mask switches off.
    pub fn masked(&self, mask: ComponentMask) -> Self {
        let c = self.to_array();
        let pick = |k: usize| if mask.0[k] { c[k] } else { 0.0 };
        Self::raw(pick(0), pick(1), pick(2), pick(3))
    }
}

impl Default for Quaternion {
    fn default() -> Self {
        Self::ZERO
    }
}

impl TryFrom<[f64; 4]> for Quaternion {
    type Error = Error;

    fn try_from(c: [f64; 4]) -> Result<Self> {
        Self::new(c[0], c[1], c[2], c[3])
    }
}

impl From<Quaternion> for [f64; 4] {
    fn from(q: Quaternion) -> Self {
        q.to_array()
    }
}

impl fmt::Display for Quaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {}, {})", self.w, self.x, self.y, self.z)
    }
}

/// Selects which of the `(w, x, y, z)` components take part in random draws.
/// Restricting to `w` alone collapses quaternion arithmetic onto the reals.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ComponentMask(pub [bool; 4]);

impl ComponentMask {
    pub const ALL: Self = Self([true; 4]);
    pub const SCALAR: Self = Self([true, false, false, false]);

    pub fn active(&self) -> usize {
        self.0.iter().filter(|&&a| a).count()
    }
}

impl Default for ComponentMask {
    fn default() -> Self {
        Self::ALL
    }
}
