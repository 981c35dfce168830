//! The point scheme of the algebra: the plane cubic `det M = 0` cut out by
//! the multilinearized relations, and the automorphism given by the kernel
//! direction of `M` along it.

use crate::error::Error;
use crate::freealg::Gen;
use crate::linalg::{self, NormF64};
use crate::scalar::Scalar;
use nalgebra::{DMatrix, DVector};
use std::collections::BTreeMap;

/// A point of the projective plane, stored with unit norm.
#[derive(Debug, Clone, PartialEq)]
pub struct ProjPoint<S>(pub [S; 3]);

impl<S: Scalar> ProjPoint<S> {
    /// Normalize to unit norm with the largest component made real positive.
    pub fn normalized(coords: [S; 3]) -> ProjPoint<S> {
        let norm = coords
            .iter()
            .map(|c| {
                let (re, im) = c.to_f64_pair();
                re * re + im * im
            })
            .sum::<f64>()
            .sqrt();
        let mut v: Vec<S> = coords
            .iter()
            .map(|c| c.clone() * S::from_re(1.0 / norm))
            .collect();
        let lead = v
            .iter()
            .enumerate()
            .max_by(|(_, a), (_, b)| {
                let am = {
                    let (re, im) = a.to_f64_pair();
                    re * re + im * im
                };
                let bm = {
                    let (re, im) = b.to_f64_pair();
                    re * re + im * im
                };
                am.partial_cmp(&bm).unwrap()
            })
            .map(|(i, _)| i)
            .unwrap();
        let m = v[lead].clone().modulus();
        let phase = v[lead].clone() / S::from_real(m);
        for c in v.iter_mut() {
            *c = c.clone() / phase.clone();
        }
        ProjPoint([v[0].clone(), v[1].clone(), v[2].clone()])
    }
}

/// The 3×3 matrix of linear forms whose determinant cuts out the point
/// scheme, with the determinant's four surviving cubic coefficients.
#[derive(Debug, Clone)]
pub struct PointScheme<S: Scalar> {
    /// `m[i][j] = (coefficient, variable)`.
    pub m: [[(S, Gen); 3]; 3],
    pub coeff_xyz: S,
    pub coeff_x3: S,
    pub coeff_y3: S,
    pub coeff_z3: S,
    /// Norm of all other monomials of `det M` (zero up to rounding).
    pub cancellation_residual: f64,
}

/// Assemble `M` for parameters `(a, b, c)` and expand its determinant over
/// commuting variables.
pub fn point_scheme<S: Scalar>(a: S, b: S, c: S) -> PointScheme<S> {
    let m = [
        [
            (c.clone(), Gen::X),
            (b.clone(), Gen::Z),
            (a.clone(), Gen::Y),
        ],
        [
            (a.clone(), Gen::Z),
            (c.clone(), Gen::Y),
            (b.clone(), Gen::X),
        ],
        [(b, Gen::Y), (a, Gen::X), (c, Gen::Z)],
    ];

    // Commutative determinant expansion over exponent triples.
    let mut det: BTreeMap<[u8; 3], S> = BTreeMap::new();
    const PERMS: [([usize; 3], f64); 6] = [
        ([0, 1, 2], 1.0),
        ([1, 2, 0], 1.0),
        ([2, 0, 1], 1.0),
        ([0, 2, 1], -1.0),
        ([1, 0, 2], -1.0),
        ([2, 1, 0], -1.0),
    ];
    for (perm, sign) in PERMS {
        let mut coeff = S::from_re(sign);
        let mut expo = [0u8; 3];
        for (i, &j) in perm.iter().enumerate() {
            let (ref c, g) = m[i][j];
            coeff = coeff * c.clone();
            expo[g.index()] += 1;
        }
        let entry = det.entry(expo).or_insert_with(S::zero);
        *entry = entry.clone() + coeff;
    }

    let take = |det: &BTreeMap<[u8; 3], S>, e: [u8; 3]| det.get(&e).cloned().unwrap_or_else(S::zero);
    let coeff_xyz = take(&det, [1, 1, 1]);
    let coeff_x3 = take(&det, [3, 0, 0]);
    let coeff_y3 = take(&det, [0, 3, 0]);
    let coeff_z3 = take(&det, [0, 0, 3]);
    let mut cancellation_residual = 0.0f64;
    for (e, c) in &det {
        if ![[1, 1, 1], [3, 0, 0], [0, 3, 0], [0, 0, 3]].contains(e) {
            let (re, im) = c.to_f64_pair();
            cancellation_residual += re * re + im * im;
        }
    }
    PointScheme {
        m,
        coeff_xyz,
        coeff_x3,
        coeff_y3,
        coeff_z3,
        cancellation_residual: cancellation_residual.sqrt(),
    }
}

impl<S: Scalar> PointScheme<S> {
    /// Evaluate the defining cubic at a point.
    pub fn cubic(&self, p: &ProjPoint<S>) -> S {
        let [x, y, z] = &p.0;
        self.coeff_xyz.clone() * x.clone() * y.clone() * z.clone()
            + self.coeff_x3.clone() * x.clone() * x.clone() * x.clone()
            + self.coeff_y3.clone() * y.clone() * y.clone() * y.clone()
            + self.coeff_z3.clone() * z.clone() * z.clone() * z.clone()
    }

    /// Relative residual of the cubic at a unit-norm point.
    pub fn cubic_residual(&self, p: &ProjPoint<S>) -> f64 {
        let scale = [
            &self.coeff_xyz,
            &self.coeff_x3,
            &self.coeff_y3,
            &self.coeff_z3,
        ]
        .iter()
        .map(|c| {
            let (re, im) = c.to_f64_pair();
            re * re + im * im
        })
        .sum::<f64>()
        .sqrt();
        let (re, im) = self.cubic(p).to_f64_pair();
        (re * re + im * im).sqrt() / scale.max(f64::MIN_POSITIVE)
    }

    /// Evaluate `M` at a point.
    pub fn m_at(&self, p: &ProjPoint<S>) -> DMatrix<S> {
        DMatrix::from_fn(3, 3, |i, j| {
            let (ref c, g) = self.m[i][j];
            c.clone() * p.0[g.index()].clone()
        })
    }

    /// A deterministic point on the cubic with `x = 1` and the given `y`.
    pub fn seed_point(&self, y: f64) -> Result<ProjPoint<S>, Error> {
        let yv = S::from_re(y);
        let c3 = self.coeff_z3.clone();
        let c1 = self.coeff_xyz.clone() * yv.clone();
        let c0 = self.coeff_x3.clone()
            + self.coeff_y3.clone() * yv.clone() * yv.clone() * yv.clone();
        let roots = linalg::cubic_roots(c3, S::zero(), c1, c0);
        if roots.is_empty() {
            return Err(Error::InvalidParams(
                "degenerate cubic; no seed point".into(),
            ));
        }
        let mut best: Option<(f64, ProjPoint<S>)> = None;
        for z in roots {
            let p = ProjPoint::normalized([S::one(), yv.clone(), z]);
            let r = self.cubic_residual(&p);
            let key = best.as_ref().map(|(b, _)| r < *b).unwrap_or(true);
            if key {
                best = Some((r, p));
            }
        }
        let (r, p) = best.unwrap();
        if r > 1e-8 {
            return Err(Error::NotOnCubic(r));
        }
        Ok(p)
    }
}

/// One step of the point-scheme automorphism: the kernel direction of `M(p)`.
pub fn sigma_step<S: Scalar>(
    ps: &PointScheme<S>,
    p: &ProjPoint<S>,
) -> Result<ProjPoint<S>, Error> {
    let residual = ps.cubic_residual(p);
    if residual > 1e-8 {
        return Err(Error::NotOnCubic(residual));
    }
    let m = ps.m_at(p);
    let parts = linalg::svd(&m);
    let sigma_ref = parts.singular_values.first().copied().unwrap_or(1.0);
    let sigma_ref = if sigma_ref > 0.0 { sigma_ref } else { 1.0 };
    let rank = linalg::rank_partition(&parts.singular_values, sigma_ref, 0)?;
    let kernel: DVector<S> = parts.v_t.row(2).adjoint();
    if rank < 2 {
        return Err(Error::SigmaUndefined {
            rank,
            kernel: kernel.iter().map(|c| c.to_f64_pair()).collect(),
        });
    }
    let out = ProjPoint::normalized([
        kernel[0].clone(),
        kernel[1].clone(),
        kernel[2].clone(),
    ]);
    let out_res = ps.cubic_residual(&out);
    if out_res > 1e-8 {
        return Err(Error::NotOnCubic(out_res));
    }
    let _ = m.norm_f64();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::C64;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    /// Independent oracle for the determinant: evaluate `M` numerically at
    /// random points and compare with the coefficient formula.
    #[test]
    fn determinant_matches_numeric_evaluation() {
        let (a, b, cc) = (c(0.9, 0.1), c(-0.55, 0.3), c(0.4, -0.2));
        let ps = point_scheme(a, b, cc);
        assert!(ps.cancellation_residual < 1e-14);
        let mut state = 1234567u64;
        let mut next = || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1);
            ((state >> 11) as f64 / (1u64 << 53) as f64) * 2.0 - 1.0
        };
        for _ in 0..20 {
            let p = [c(next(), next()), c(next(), next()), c(next(), next())];
            let m = DMatrix::<C64>::from_fn(3, 3, |i, j| {
                let (ref cf, g) = ps.m[i][j];
                *cf * p[g.index()]
            });
            let det = m.determinant();
            let formula = ps.coeff_xyz * p[0] * p[1] * p[2]
                + ps.coeff_x3 * p[0] * p[0] * p[0]
                + ps.coeff_y3 * p[1] * p[1] * p[1]
                + ps.coeff_z3 * p[2] * p[2] * p[2];
            assert!((det - formula).norm() < 1e-12 * det.norm().max(1.0));
        }
    }

    #[test]
    fn determinant_coefficient_identity() {
        // det M = (a³+b³+c³)·xyz − abc·(x³+y³+z³).
        let (a, b, cc) = (c(0.9, 0.1), c(-0.55, 0.3), c(0.4, -0.2));
        let ps = point_scheme(a, b, cc);
        let sum_cubes = a * a * a + b * b * b + cc * cc * cc;
        let abc = a * b * cc;
        assert!((ps.coeff_xyz - sum_cubes).norm() < 1e-12 * sum_cubes.norm());
        for got in [ps.coeff_x3, ps.coeff_y3, ps.coeff_z3] {
            assert!((got + abc).norm() < 1e-12 * abc.norm());
        }
    }

    #[test]
    fn commutative_point_has_vanishing_determinant() {
        // c = 0, b = -a makes M antisymmetric, so det M ≡ 0.
        let ps = point_scheme(c(0.8, 0.0), c(-0.8, 0.0), c(0.0, 0.0));
        for coeff in [ps.coeff_xyz, ps.coeff_x3, ps.coeff_y3, ps.coeff_z3] {
            assert!(coeff.norm() < 1e-14);
        }
    }

    #[test]
    fn triangle_of_lines_at_unit_a() {
        let ps = point_scheme(c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0));
        assert!((ps.coeff_xyz - c(1.0, 0.0)).norm() < 1e-14);
        for coeff in [ps.coeff_x3, ps.coeff_y3, ps.coeff_z3] {
            assert!(coeff.norm() < 1e-14);
        }
        // The vertex (1:0:0) is a singular point: rank of M drops below 2 and
        // the step reports the degeneracy, with the kernel containing the
        // fixed direction.
        let p = ProjPoint::normalized([c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]);
        match sigma_step(&ps, &p) {
            Err(Error::SigmaUndefined { rank, kernel }) => {
                assert!(rank < 2);
                let kv = DVector::from_vec(
                    kernel.iter().map(|&(re, im)| C64::new(re, im)).collect(),
                );
                let m = ps.m_at(&p);
                assert!((m * kv).norm() < 1e-12);
            }
            other => panic!("expected SigmaUndefined, got {other:?}"),
        }
    }

    #[test]
    fn sigma_iterates_stay_on_cubic() {
        let (a, b, cc) = (c(0.9, 0.1), c(-0.55, 0.3), c(0.4, -0.2));
        let ps = point_scheme(a, b, cc);
        let mut p = ps.seed_point(0.37).unwrap();
        for step in 0..20 {
            p = sigma_step(&ps, &p).unwrap_or_else(|e| panic!("step {step}: {e}"));
            assert!(ps.cubic_residual(&p) <= 1e-8, "step {step}");
        }
    }

    #[test]
    fn commutative_point_rank_fails_everywhere() {
        let ps = point_scheme(c(0.8, 0.0), c(-0.8, 0.0), c(0.0, 0.0));
        let p = ProjPoint::normalized([c(0.3, 0.0), c(0.5, 0.0), c(1.0, 0.0)]);
        assert!(sigma_step(&ps, &p).is_err());
    }
}
