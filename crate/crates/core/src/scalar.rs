//! Scalar abstraction for the numeric core.
//!
//! All series evaluation, free-algebra arithmetic and linear algebra are
//! generic over [`Scalar`], an extension of `nalgebra::ComplexField` (itself
//! built on `num-traits`). Concrete instances are `Complex<f32>` and
//! `Complex<f64>`; the crate root exports the aliases [`crate::C32`] and
//! [`crate::C64`].

use nalgebra::{ComplexField, RealField};
use num_complex::Complex;

/// Complex scalar with a fixed unit-phase constructor and printing rules.
pub trait Scalar: ComplexField + Send + Sync + 'static {
    /// The imaginary unit.
    fn i() -> Self;

    /// `e^{2πi·turns}` for a real number of turns.
    ///
    /// This is the single branch convention used everywhere: fractional powers
    /// of a unit `λ = e^{2πis}` are defined as `λ^r := unit_phase(r·s)` with
    /// `s` the stored representative in `[0,1)`.
    fn unit_phase(turns: Self::RealField) -> Self;

    /// Relative magnitude below which free-algebra coefficients are pruned.
    fn prune_ratio() -> Self::RealField;

    /// Print one real component with enough digits for exact round-trips.
    fn fmt_component(x: Self::RealField) -> String;

    fn to_f64_pair(&self) -> (f64, f64);
    fn from_f64_pair(re: f64, im: f64) -> Self;

    /// Shorthand for embedding an `f64` as a real scalar.
    fn from_re(x: f64) -> Self {
        Self::from_f64_pair(x, 0.0)
    }

    fn real_from_f64(x: f64) -> Self::RealField;
}

impl Scalar for Complex<f64> {
    fn i() -> Self {
        Complex::new(0.0, 1.0)
    }

    fn unit_phase(turns: f64) -> Self {
        let angle = 2.0 * std::f64::consts::PI * turns;
        Complex::new(angle.cos(), angle.sin())
    }

    fn prune_ratio() -> f64 {
        1e-14
    }

    fn fmt_component(x: f64) -> String {
        format!("{x:.16e}")
    }

    fn to_f64_pair(&self) -> (f64, f64) {
        (self.re, self.im)
    }

    fn from_f64_pair(re: f64, im: f64) -> Self {
        Complex::new(re, im)
    }

    fn real_from_f64(x: f64) -> f64 {
        x
    }
}

impl Scalar for Complex<f32> {
    fn i() -> Self {
        Complex::new(0.0, 1.0)
    }

    fn unit_phase(turns: f32) -> Self {
        let angle = 2.0 * std::f32::consts::PI * turns;
        Complex::new(angle.cos(), angle.sin())
    }

    fn prune_ratio() -> f32 {
        1e-5
    }

    fn fmt_component(x: f32) -> String {
        format!("{x:.8e}")
    }

    fn to_f64_pair(&self) -> (f64, f64) {
        (self.re as f64, self.im as f64)
    }

    fn from_f64_pair(re: f64, im: f64) -> Self {
        Complex::new(re as f32, im as f32)
    }

    fn real_from_f64(x: f64) -> f32 {
        x as f32
    }
}

/// Tolerance-based equality: `|a - b| <= tol · max(1, |a|, |b|)`.
pub fn approx_eq<S: Scalar>(a: S, b: S, tol: S::RealField) -> bool {
    let diff = (a.clone() - b.clone()).modulus();
    let scale = a.modulus().max(b.modulus()).max(S::RealField::one());
    diff <= tol * scale
}

use num_traits::One;
