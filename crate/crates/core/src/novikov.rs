//! Theta-type coefficient series at a fixed numeric Novikov specialization.
//!
//! The three series share one shape: summing over odd integers `m` in a fixed
//! residue class mod 6, each term is `λ^{(m+3t)/2} · q0^{(m+3t)²}` with
//! `λ^r := e^{2πi·r·s}`. The `a`, `b`, `c` components take `m ≡ 1, 5, 3
//! (mod 6)` respectively; truncation keeps `|k| ≤ K` where `m = 6k + δ`.

use crate::error::Error;
use crate::scalar::Scalar;
use serde::{Deserialize, Serialize};

/// Parameters of the coefficient series.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ThetaParams {
    /// Position parameter, in `(-1, 1)`.
    pub t: f64,
    /// Holonomy exponent: `λ = e^{2πis}`, `s ∈ [0, 1)`.
    pub s: f64,
    /// Novikov specialization, in `(0, 1)`.
    pub q0: f64,
    /// Truncation: terms with `|k| ≤ K` are kept.
    pub k_max: u32,
}

impl ThetaParams {
    pub fn new(t: f64, s: f64, q0: f64, k_max: u32) -> Result<Self, Error> {
        if !(t.is_finite() && s.is_finite() && q0.is_finite()) {
            return Err(Error::InvalidParams("non-finite theta parameter".into()));
        }
        if !(-1.0 < t && t < 1.0) {
            return Err(Error::InvalidParams(format!("t = {t} outside (-1, 1)")));
        }
        if !(0.0..1.0).contains(&s) {
            return Err(Error::InvalidParams(format!("s = {s} outside [0, 1)")));
        }
        if !(0.0 < q0 && q0 < 1.0) {
            return Err(Error::InvalidParams(format!("q0 = {q0} outside (0, 1)")));
        }
        Ok(ThetaParams { t, s, q0, k_max })
    }

    /// Upper bound on the magnitude of the first dropped term.
    ///
    /// The smallest exponent among all `|k| = K+1` terms of the three series
    /// is `(6(K+1) - 5 - 3|t|)²`, attained by the `b`-series at `k = -(K+1)`.
    pub fn tail_bound(&self) -> f64 {
        let base = 6.0 * (self.k_max as f64 + 1.0) - 5.0 - 3.0 * self.t.abs();
        self.q0.powf(base * base)
    }
}

/// Which term-wise derivative the primed series uses.
///
/// The series are functions of the single complex deformation coordinate only
/// through `(t, s)`; both partials are exposed and only the projective ratio
/// of the resulting triple is meaningful downstream.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum DerivativeConvention {
    /// `d/dt` holding `s`: term factor `3πi·s + 6·ln(q0)·(m+3t)`.
    #[default]
    TermwiseDt,
    /// `d/ds` holding `t`: term factor `πi·(m+3t)`.
    TermwiseDs,
}

impl DerivativeConvention {
    pub fn from_tag(tag: &str) -> Result<Self, Error> {
        match tag {
            "dt" => Ok(DerivativeConvention::TermwiseDt),
            "ds" => Ok(DerivativeConvention::TermwiseDs),
            other => Err(Error::UnknownConvention(other.to_string())),
        }
    }
}

/// The truncated coefficient triple together with its truncation certificate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThetaTriple<S> {
    pub a: S,
    pub b: S,
    pub c: S,
    /// Magnitude bound on the truncation error of each component.
    pub tail_bound: f64,
}

impl<S: Scalar> ThetaTriple<S> {
    pub fn components(&self) -> [S; 3] {
        [self.a.clone(), self.b.clone(), self.c.clone()]
    }
}

/// `λ^r = e^{2πi·r·s}` under the stored-representative branch convention.
pub fn lambda_power<S: Scalar>(params: &ThetaParams, r: f64) -> S {
    S::unit_phase(S::real_from_f64(r * params.s))
}

fn series_term<S: Scalar>(params: &ThetaParams, m: i64) -> S {
    let u = m as f64 + 3.0 * params.t;
    let magnitude = params.q0.powf(u * u);
    lambda_power::<S>(params, u / 2.0) * S::from_re(magnitude)
}

/// Truncated `(a, b, c)` series.
pub fn theta_coeffs<S: Scalar>(params: &ThetaParams) -> ThetaTriple<S> {
    let mut out = [S::zero(), S::zero(), S::zero()];
    for (slot, delta) in [(0usize, 1i64), (1, 5), (2, 3)] {
        let mut acc = S::zero();
        for k in -(params.k_max as i64)..=(params.k_max as i64) {
            acc = acc + series_term::<S>(params, 6 * k + delta);
        }
        out[slot] = acc;
    }
    let [a, b, c] = out;
    ThetaTriple {
        a,
        b,
        c,
        tail_bound: params.tail_bound(),
    }
}

/// Term-wise derivative of the truncated series under the chosen convention.
pub fn theta_prime_coeffs<S: Scalar>(
    params: &ThetaParams,
    convention: DerivativeConvention,
) -> ThetaTriple<S> {
    let ln_q0 = params.q0.ln();
    let mut out = [S::zero(), S::zero(), S::zero()];
    for (slot, delta) in [(0usize, 1i64), (1, 5), (2, 3)] {
        let mut acc = S::zero();
        for k in -(params.k_max as i64)..=(params.k_max as i64) {
            let m = 6 * k + delta;
            let u = m as f64 + 3.0 * params.t;
            let term = series_term::<S>(params, m);
            let factor = match convention {
                DerivativeConvention::TermwiseDt => {
                    S::i() * S::from_re(3.0 * std::f64::consts::PI * params.s)
                        + S::from_re(6.0 * ln_q0 * u)
                }
                DerivativeConvention::TermwiseDs => {
                    S::i() * S::from_re(std::f64::consts::PI * u)
                }
            };
            acc = acc + factor * term;
        }
        out[slot] = acc;
    }
    let [a, b, c] = out;
    ThetaTriple {
        a,
        b,
        c,
        // The derivative factors rescale the first dropped term by O(K);
        // keep the raw certificate and let callers fold in that factor.
        tail_bound: params.tail_bound(),
    }
}

/// Sine of the Fubini–Study angle between two projective vectors.
///
/// Zero iff the vectors are proportional; returns 1 for orthogonal ones.
pub fn projective_distance<S: Scalar>(u: &[S; 3], v: &[S; 3]) -> f64 {
    let dot = |p: &[S; 3], q: &[S; 3]| {
        p.iter()
            .zip(q)
            .fold(S::zero(), |acc, (x, y)| acc + x.clone().conjugate() * y.clone())
    };
    let (uu, vv, uv) = (dot(u, u), dot(v, v), dot(u, v));
    let (uu, _) = uu.to_f64_pair();
    let (vv, _) = vv.to_f64_pair();
    let (re, im) = uv.to_f64_pair();
    if uu == 0.0 || vv == 0.0 {
        return 1.0;
    }
    let cos2 = (re * re + im * im) / (uu * vv);
    (1.0 - cos2.min(1.0)).max(0.0).sqrt()
}
