// Copyright 2026 The qaclab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

//! Scalar arithmetic shared by every other module.
//!
//! A [`Scalar`] is either an exact element of the ring ℤ[i, 1/√2], which is
//! closed under every gate built from H, X, Y, Z and CZ, or a double-precision
//! complex number. Exact values stay exact under `+`, `-` and `*`; anything
//! that mixes the two backends, or overflows the exact representation, falls
//! back to floating point.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use thiserror::Error;

/// The deterministic generator used everywhere randomness is needed.
pub type SeededRng = ChaCha8Rng;

/// Creates a [`SeededRng`] from a 64-bit seed.
pub fn seeded_rng(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Derives an independent child seed from `root` for stream number `stream`.
///
/// Uses two rounds of the SplitMix64 finalizer, so nearby `(root, stream)`
/// pairs map to unrelated seeds.
pub fn derive_seed(root: u64, stream: u64) -> u64 {
    fn mix(mut z: u64) -> u64 {
        z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }
    mix(mix(root) ^ stream.wrapping_mul(0xD6E8_FEB8_6659_FD93))
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum NumericsError {
    #[error("tolerance components must be finite and non-negative (abs_eps={abs_eps}, rel_eps={rel_eps})")]
    InvalidTolerance { abs_eps: f64, rel_eps: f64 },
}

/// Absolute/relative comparison thresholds for the floating backend.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerance {
    pub abs_eps: f64,
    pub rel_eps: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Self {
            abs_eps: 1e-10,
            rel_eps: 1e-9,
        }
    }
}

impl Tolerance {
    pub fn new(abs_eps: f64, rel_eps: f64) -> Result<Self, NumericsError> {
        let ok = |v: f64| v.is_finite() && v >= 0.0;
        if ok(abs_eps) && ok(rel_eps) {
            Ok(Self { abs_eps, rel_eps })
        } else {
            Err(NumericsError::InvalidTolerance { abs_eps, rel_eps })
        }
    }

    /// Same absolute and relative threshold.
    pub fn uniform(eps: f64) -> Result<Self, NumericsError> {
        Self::new(eps, eps)
    }

    /// The threshold below which a quantity of the given scale counts as zero.
    pub fn threshold(&self, scale: f64) -> f64 {
        self.abs_eps + self.rel_eps * scale
    }
}

/// An exact element `(a + b√2 + i(c + d√2)) / √2^k` of ℤ[i, 1/√2].
///
/// Always kept canonical: `k` is minimal, and zero is stored with `k = 0`.
/// Canonical representations are unique, so structural equality is value
/// equality.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ExactScalar {
    a: i64,
    b: i64,
    c: i64,
    d: i64,
    k: u32,
}

// Elements of ℤ[√2] as (integer part, √2 part), with overflow checks.
type Zr2 = (i128, i128);

fn zr2_mul(x: Zr2, y: Zr2) -> Option<Zr2> {
    let re =
        x.0.checked_mul(y.0)?
            .checked_add(x.1.checked_mul(y.1)?.checked_mul(2)?)?;
    let s = x.0.checked_mul(y.1)?.checked_add(x.1.checked_mul(y.0)?)?;
    Some((re, s))
}

fn zr2_add(x: Zr2, y: Zr2) -> Option<Zr2> {
    Some((x.0.checked_add(y.0)?, x.1.checked_add(y.1)?))
}

fn zr2_sub(x: Zr2, y: Zr2) -> Option<Zr2> {
    Some((x.0.checked_sub(y.0)?, x.1.checked_sub(y.1)?))
}

// Multiply a ℤ[√2] element by √2.
fn zr2_times_sqrt2(x: Zr2) -> Option<Zr2> {
    Some((x.1.checked_mul(2)?, x.0))
}

impl ExactScalar {
    pub const ZERO: Self = Self {
        a: 0,
        b: 0,
        c: 0,
        d: 0,
        k: 0,
    };
    pub const ONE: Self = Self {
        a: 1,
        b: 0,
        c: 0,
        d: 0,
        k: 0,
    };
    pub const I: Self = Self {
        a: 0,
        b: 0,
        c: 1,
        d: 0,
        k: 0,
    };
    /// 1/√2.
    pub const FRAC_1_SQRT_2: Self = Self {
        a: 1,
        b: 0,
        c: 0,
        d: 0,
        k: 1,
    };

    /// Builds `(a + b√2 + i(c + d√2)) / √2^k` and canonicalizes it.
    pub fn new(a: i64, b: i64, c: i64, d: i64, k: u32) -> Self {
        Self::from_wide((a as i128, b as i128), (c as i128, d as i128), k as i64)
            .expect("canonicalizing never grows the numerator")
    }

    pub fn from_int(v: i64) -> Self {
        Self {
            a: v,
            b: 0,
            c: 0,
            d: 0,
            k: 0,
        }
    }

    /// Gaussian integer `re + i·im`.
    pub fn gaussian(re: i64, im: i64) -> Self {
        Self {
            a: re,
            b: 0,
            c: im,
            d: 0,
            k: 0,
        }
    }

    /// The raw canonical components `(a, b, c, d, k)`.
    pub fn parts(&self) -> (i64, i64, i64, i64, u32) {
        (self.a, self.b, self.c, self.d, self.k)
    }

    pub fn is_zero(&self) -> bool {
        self.a == 0 && self.b == 0 && self.c == 0 && self.d == 0
    }

    // Canonical form from wide numerators and a possibly negative exponent.
    fn from_wide(mut re: Zr2, mut im: Zr2, mut k: i64) -> Option<Self> {
        while k < 0 {
            re = zr2_times_sqrt2(re)?;
            im = zr2_times_sqrt2(im)?;
            k += 1;
        }
        if re == (0, 0) && im == (0, 0) {
            return Some(Self::ZERO);
        }
        // (a + b√2)/√2 = b + (a/2)√2, valid when a is even.
        while k > 0 && re.0 % 2 == 0 && im.0 % 2 == 0 {
            re = (re.1, re.0 / 2);
            im = (im.1, im.0 / 2);
            k -= 1;
        }
        Some(Self {
            a: i64::try_from(re.0).ok()?,
            b: i64::try_from(re.1).ok()?,
            c: i64::try_from(im.0).ok()?,
            d: i64::try_from(im.1).ok()?,
            k: u32::try_from(k).ok()?,
        })
    }

    fn re(&self) -> Zr2 {
        (self.a as i128, self.b as i128)
    }

    fn im(&self) -> Zr2 {
        (self.c as i128, self.d as i128)
    }

    // Numerators of both operands raised to the larger exponent.
    fn aligned(&self, other: &Self) -> Option<(Zr2, Zr2, Zr2, Zr2, i64)> {
        let k = self.k.max(other.k);
        let lift = |x: &Self| -> Option<(Zr2, Zr2)> {
            let (mut re, mut im) = (x.re(), x.im());
            for _ in x.k..k {
                re = zr2_times_sqrt2(re)?;
                im = zr2_times_sqrt2(im)?;
            }
            Some((re, im))
        };
        let (r1, i1) = lift(self)?;
        let (r2, i2) = lift(other)?;
        Some((r1, i1, r2, i2, k as i64))
    }

    pub fn checked_add(&self, other: &Self) -> Option<Self> {
        let (r1, i1, r2, i2, k) = self.aligned(other)?;
        Self::from_wide(zr2_add(r1, r2)?, zr2_add(i1, i2)?, k)
    }

    pub fn checked_sub(&self, other: &Self) -> Option<Self> {
        let (r1, i1, r2, i2, k) = self.aligned(other)?;
        Self::from_wide(zr2_sub(r1, r2)?, zr2_sub(i1, i2)?, k)
    }

    pub fn checked_mul(&self, other: &Self) -> Option<Self> {
        let (p1, q1, p2, q2) = (self.re(), self.im(), other.re(), other.im());
        let re = zr2_sub(zr2_mul(p1, p2)?, zr2_mul(q1, q2)?)?;
        let im = zr2_add(zr2_mul(p1, q2)?, zr2_mul(q1, p2)?)?;
        Self::from_wide(re, im, self.k as i64 + other.k as i64)
    }

    /// Exact quotient when it lies in the ring, `None` otherwise (including
    /// division by zero and overflow).
    pub fn checked_div(&self, other: &Self) -> Option<Self> {
        if other.is_zero() {
            return None;
        }
        let (p, q) = (other.re(), other.im());
        // |num(other)|² = e + f√2
        let norm = zr2_add(zr2_mul(p, p)?, zr2_mul(q, q)?)?;
        let conj_norm = (norm.0, -norm.1);
        // D = e² - 2f², a rational integer.
        let denom = norm
            .0
            .checked_mul(norm.0)?
            .checked_sub(norm.1.checked_mul(norm.1)?.checked_mul(2)?)?;
        // x / y = x_num · conj(y_num) · conj_norm · √2^(ky - kx) / D
        let (xr, xi) = (self.re(), self.im());
        let tr = zr2_add(zr2_mul(xr, p)?, zr2_mul(xi, q)?)?;
        let ti = zr2_sub(zr2_mul(xi, p)?, zr2_mul(xr, q)?)?;
        let mut wr = zr2_mul(tr, conj_norm)?;
        let mut wi = zr2_mul(ti, conj_norm)?;
        let mut k = self.k as i64 - other.k as i64;
        let mut odd = denom;
        while odd % 2 == 0 {
            odd /= 2;
            k += 2;
        }
        if odd < 0 {
            odd = -odd;
            wr = (-wr.0, -wr.1);
            wi = (-wi.0, -wi.1);
        }
        if [wr.0, wr.1, wi.0, wi.1].iter().any(|v| v % odd != 0) {
            return None;
        }
        Self::from_wide((wr.0 / odd, wr.1 / odd), (wi.0 / odd, wi.1 / odd), k)
    }

    pub fn conj(&self) -> Self {
        Self {
            a: self.a,
            b: self.b,
            c: -self.c,
            d: -self.d,
            k: self.k,
        }
    }

    pub fn neg(&self) -> Self {
        Self {
            a: -self.a,
            b: -self.b,
            c: -self.c,
            d: -self.d,
            k: self.k,
        }
    }

    pub fn to_complex(&self) -> Complex64 {
        let part = |x: i64, y: i64| -> f64 {
            let (x, y) = (x as f64, y as f64);
            if self.k.is_multiple_of(2) {
                (x + y * std::f64::consts::SQRT_2) * 0.5f64.powi((self.k / 2) as i32)
            } else {
                // (x + y√2)/√2 = y + x/√2
                (y + x * std::f64::consts::FRAC_1_SQRT_2) * 0.5f64.powi((self.k / 2) as i32)
            }
        };
        Complex64::new(part(self.a, self.b), part(self.c, self.d))
    }
}

impl fmt::Display for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({} + {}√2 + i({} + {}√2))/√2^{}",
            self.a, self.b, self.c, self.d, self.k
        )
    }
}

/// A complex amplitude or polynomial coefficient.
///
/// Derived equality is structural: an `Exact` and a `Float` holding the same
/// number compare unequal. Use [`approx_eq`] for value comparisons.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Scalar {
    Exact(ExactScalar),
    Float(Complex64),
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::Exact(ExactScalar::ZERO)
    }

    pub fn one() -> Self {
        Scalar::Exact(ExactScalar::ONE)
    }

    pub fn i() -> Self {
        Scalar::Exact(ExactScalar::I)
    }

    pub fn frac_1_sqrt_2() -> Self {
        Scalar::Exact(ExactScalar::FRAC_1_SQRT_2)
    }

    pub fn int(v: i64) -> Self {
        Scalar::Exact(ExactScalar::from_int(v))
    }

    pub fn exact(a: i64, b: i64, c: i64, d: i64, k: u32) -> Self {
        Scalar::Exact(ExactScalar::new(a, b, c, d, k))
    }

    pub fn float(re: f64, im: f64) -> Self {
        Scalar::Float(Complex64::new(re, im))
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Scalar::Exact(_))
    }

    pub fn as_exact(&self) -> Option<ExactScalar> {
        match self {
            Scalar::Exact(e) => Some(*e),
            Scalar::Float(_) => None,
        }
    }

    pub fn to_complex(&self) -> Complex64 {
        match self {
            Scalar::Exact(e) => e.to_complex(),
            Scalar::Float(z) => *z,
        }
    }

    /// Exact zero test for exact values; `== 0.0` for floats.
    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Exact(e) => e.is_zero(),
            Scalar::Float(z) => z.re == 0.0 && z.im == 0.0,
        }
    }

    /// Zero within `tol.abs_eps` for floats, exactly zero for exact values.
    pub fn is_negligible(&self, tol: &Tolerance) -> bool {
        match self {
            Scalar::Exact(e) => e.is_zero(),
            Scalar::Float(z) => z.norm() <= tol.abs_eps,
        }
    }

    pub fn abs(&self) -> f64 {
        self.to_complex().norm()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.to_complex().norm_sqr()
    }

    pub fn conj(&self) -> Self {
        match self {
            Scalar::Exact(e) => Scalar::Exact(e.conj()),
            Scalar::Float(z) => Scalar::Float(z.conj()),
        }
    }

    fn combine(
        self,
        other: Self,
        exact: impl Fn(&ExactScalar, &ExactScalar) -> Option<ExactScalar>,
        float: impl Fn(Complex64, Complex64) -> Complex64,
    ) -> Self {
        if let (Scalar::Exact(x), Scalar::Exact(y)) = (&self, &other) {
            if let Some(r) = exact(x, y) {
                return Scalar::Exact(r);
            }
        }
        Scalar::Float(float(self.to_complex(), other.to_complex()))
    }
}

impl From<Complex64> for Scalar {
    fn from(z: Complex64) -> Self {
        Scalar::Float(z)
    }
}

impl From<ExactScalar> for Scalar {
    fn from(e: ExactScalar) -> Self {
        Scalar::Exact(e)
    }
}

impl From<i64> for Scalar {
    fn from(v: i64) -> Self {
        Scalar::int(v)
    }
}

impl From<f64> for Scalar {
    fn from(v: f64) -> Self {
        Scalar::float(v, 0.0)
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        self.combine(rhs, ExactScalar::checked_add, |x, y| x + y)
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        self.combine(rhs, ExactScalar::checked_sub, |x, y| x - y)
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        self.combine(rhs, ExactScalar::checked_mul, |x, y| x * y)
    }
}

/// Exact when the quotient lies in the ring, floating otherwise. Division by
/// an exact zero yields a non-finite float.
impl Div for Scalar {
    type Output = Scalar;
    fn div(self, rhs: Scalar) -> Scalar {
        self.combine(rhs, ExactScalar::checked_div, |x, y| x / y)
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Exact(e) => Scalar::Exact(e.neg()),
            Scalar::Float(z) => Scalar::Float(-z),
        }
    }
}

impl AddAssign for Scalar {
    fn add_assign(&mut self, rhs: Scalar) {
        *self = *self + rhs;
    }
}

impl SubAssign for Scalar {
    fn sub_assign(&mut self, rhs: Scalar) {
        *self = *self - rhs;
    }
}

impl MulAssign for Scalar {
    fn mul_assign(&mut self, rhs: Scalar) {
        *self = *self * rhs;
    }
}

impl Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |acc, x| acc + x)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Exact(e) => write!(f, "{e}"),
            Scalar::Float(z) => write!(f, "{} {}", z.re, z.im),
        }
    }
}

/// Maps exact values to their floating counterparts; floats pass through.
pub fn to_float(s: Scalar) -> Scalar {
    Scalar::Float(s.to_complex())
}

/// `|x − y| ≤ abs_eps + rel_eps·max(|x|, |y|)`; exact pairs compare exactly.
pub fn approx_eq(x: Scalar, y: Scalar, tol: &Tolerance) -> bool {
    if let (Scalar::Exact(a), Scalar::Exact(b)) = (x, y) {
        return a == b;
    }
    let (x, y) = (x.to_complex(), y.to_complex());
    (x - y).norm() <= tol.threshold(x.norm().max(y.norm()))
}

/// A complex number with independent standard-normal real and imaginary parts.
pub fn random_scalar(rng: &mut SeededRng) -> Scalar {
    Scalar::Float(random_complex(rng))
}

pub(crate) fn random_complex<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// Random unit-modulus phase other than 1.
pub fn random_phase(rng: &mut SeededRng) -> Scalar {
    loop {
        let theta: f64 = rng.random_range(0.0..std::f64::consts::TAU);
        let eta = Complex64::from_polar(1.0, theta);
        if (eta - 1.0).norm() > 1e-3 {
            return Scalar::Float(eta);
        }
    }
}
