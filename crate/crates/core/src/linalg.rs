//! Dense complex linear algebra helpers on top of nalgebra.
//!
//! Every rank decision in the crate goes through [`rank_partition`], which
//! refuses to decide when a singular value falls inside the ambiguity band
//! around the threshold.

use crate::error::Error;
use crate::scalar::Scalar;
use nalgebra::{DMatrix, DVector};

/// Relative singular-value threshold for rank decisions.
pub const RANK_REL_TOL: f64 = 1e-8;
/// Singular values within this factor of the threshold abort the computation.
pub const AMBIGUITY_BAND: f64 = 1e2;

pub struct SvdParts<S: Scalar> {
    pub u: DMatrix<S>,
    pub singular_values: Vec<f64>,
    pub v_t: DMatrix<S>,
}

/// Full SVD with singular values sorted descending.
pub fn svd<S: Scalar>(m: &DMatrix<S>) -> SvdParts<S> {
    let svd = m.clone().svd(true, true);
    let u = svd.u.expect("svd: U requested");
    let v_t = svd.v_t.expect("svd: V^T requested");
    let mut sv: Vec<(usize, f64)> = svd
        .singular_values
        .iter()
        .enumerate()
        .map(|(i, s)| (i, real_to_f64::<S>(s.clone())))
        .collect();
    sv.sort_by(|a, b| b.1.partial_cmp(&a.1).unwrap());
    let perm: Vec<usize> = sv.iter().map(|(i, _)| *i).collect();
    let singular_values: Vec<f64> = sv.iter().map(|(_, s)| *s).collect();
    let u = u.select_columns(&perm);
    let v_t_rows: Vec<_> = perm.iter().map(|&i| v_t.row(i).into_owned()).collect();
    let v_t = DMatrix::from_rows(&v_t_rows);
    SvdParts {
        u,
        singular_values,
        v_t,
    }
}

fn real_to_f64<S: Scalar>(x: S::RealField) -> f64 {
    let (re, _) = S::from_real(x).to_f64_pair();
    re
}

/// Split singular values into (above threshold, below threshold) against
/// `threshold = RANK_REL_TOL · sigma_ref`, failing on values inside
/// `[threshold/AMBIGUITY_BAND, threshold·AMBIGUITY_BAND]`.
pub fn rank_partition(
    singular_values: &[f64],
    sigma_ref: f64,
    degree: usize,
) -> Result<usize, Error> {
    let threshold = RANK_REL_TOL * sigma_ref;
    let mut rank = 0;
    for &s in singular_values {
        if s > threshold * AMBIGUITY_BAND {
            rank += 1;
        } else if s >= threshold / AMBIGUITY_BAND {
            return Err(Error::AmbiguousRank {
                degree,
                sigma: s,
                threshold,
                band: AMBIGUITY_BAND,
            });
        }
    }
    Ok(rank)
}

/// Numerical rank with the ambiguity-band policy; `sigma_ref` defaults to the
/// largest singular value (or 1 for a zero matrix).
pub fn rank<S: Scalar>(m: &DMatrix<S>, degree: usize) -> Result<usize, Error> {
    if m.nrows() == 0 || m.ncols() == 0 {
        return Ok(0);
    }
    let parts = svd(m);
    let sigma_ref = parts.singular_values.first().copied().unwrap_or(1.0);
    let sigma_ref = if sigma_ref > 0.0 { sigma_ref } else { 1.0 };
    rank_partition(&parts.singular_values, sigma_ref, degree)
}

/// Minimal-norm least-squares solution together with the residual norm and a
/// basis of the solution space of the homogeneous system.
pub struct LeastSquares<S: Scalar> {
    pub solution: DVector<S>,
    pub residual: f64,
    /// Columns span the nullspace of the matrix.
    pub nullspace: DMatrix<S>,
    pub rank: usize,
}

/// Solve `A·x ≈ b` by SVD with the crate-wide threshold policy.
pub fn solve_least_squares<S: Scalar>(
    a: &DMatrix<S>,
    b: &DVector<S>,
    degree: usize,
) -> Result<LeastSquares<S>, Error> {
    assert_eq!(a.nrows(), b.nrows());
    let n = a.ncols();
    if n == 0 {
        return Ok(LeastSquares {
            solution: DVector::zeros(0),
            residual: b.norm_f64(),
            nullspace: DMatrix::zeros(0, 0),
            rank: 0,
        });
    }
    // nalgebra's SVD is thin; pad wide systems with zero rows so the full
    // right factor (and hence the nullspace) is available.
    let (a_work, b_work) = if a.nrows() < a.ncols() {
        let mut ap = DMatrix::<S>::zeros(a.ncols(), a.ncols());
        ap.view_mut((0, 0), (a.nrows(), a.ncols())).copy_from(a);
        let mut bp = DVector::<S>::zeros(a.ncols());
        bp.rows_mut(0, b.nrows()).copy_from(b);
        (ap, bp)
    } else {
        (a.clone(), b.clone())
    };
    let parts = svd(&a_work);
    let sigma_ref = match parts.singular_values.first() {
        Some(&s) if s > 0.0 => s,
        _ => 1.0,
    };
    let rank = rank_partition(&parts.singular_values, sigma_ref, degree)?;
    // x = V Σ⁺ Uᴴ b
    let utb = parts.u.adjoint() * &b_work;
    let mut coeffs = DVector::<S>::zeros(parts.v_t.nrows());
    for i in 0..rank {
        coeffs[i] = utb[i].clone() * S::from_re(1.0 / parts.singular_values[i]);
    }
    let solution = parts.v_t.adjoint() * coeffs;
    let residual = norm_f64_vec::<S>(&(a * &solution - b));
    let null_cols: Vec<_> = (rank..parts.v_t.nrows())
        .map(|i| parts.v_t.row(i).adjoint())
        .collect();
    let nullspace = if null_cols.is_empty() {
        DMatrix::zeros(n, 0)
    } else {
        DMatrix::from_columns(&null_cols)
    };
    Ok(LeastSquares {
        solution,
        residual,
        nullspace,
        rank,
    })
}

pub trait NormF64 {
    fn norm_f64(&self) -> f64;
}

impl<S, R, C, St> NormF64 for nalgebra::Matrix<S, R, C, St>
where
    S: Scalar,
    R: nalgebra::Dim,
    C: nalgebra::Dim,
    St: nalgebra::storage::Storage<S, R, C>,
{
    fn norm_f64(&self) -> f64 {
        self.iter()
            .map(|c| {
                let (re, im) = c.to_f64_pair();
                re * re + im * im
            })
            .sum::<f64>()
            .sqrt()
    }
}

fn norm_f64_vec<S: Scalar>(v: &DVector<S>) -> f64 {
    v.norm_f64()
}

/// Unit coordinate vector.
pub fn unit_vector<S: Scalar>(len: usize, idx: usize) -> DVector<S> {
    let mut v = DVector::zeros(len);
    v[idx] = S::one();
    v
}


/// Roots of `c3·z³ + c2·z² + c1·z + c0` by Durand–Kerner with Newton polish.
pub fn cubic_roots<S: Scalar>(c3: S, c2: S, c1: S, c0: S) -> Vec<S> {
    if c3.clone().modulus() < S::real_from_f64(1e-300) {
        // Degenerate: quadratic or worse; callers only need the generic case.
        return Vec::new();
    }
    let inv = S::one() / c3;
    let (b, c, d) = (c2 * inv.clone(), c1 * inv.clone(), c0 * inv);
    let eval = |z: &S| {
        ((z.clone() + b.clone()) * z.clone() + c.clone()) * z.clone() + d.clone()
    };
    let dval = |z: &S| {
        (S::from_re(3.0) * z.clone() + S::from_re(2.0) * b.clone()) * z.clone() + c.clone()
    };
    // Deterministic non-real starting points.
    let seed = S::from_f64_pair(0.4, 0.9);
    let mut roots = [seed.clone(), seed.clone() * seed.clone(), {
        let s2 = seed.clone() * seed.clone();
        s2 * seed.clone()
    }];
    for _ in 0..200 {
        let mut max_step = 0.0f64;
        for i in 0..3 {
            let mut denom = S::one();
            for j in 0..3 {
                if i != j {
                    denom = denom * (roots[i].clone() - roots[j].clone());
                }
            }
            if denom.is_zero() {
                continue;
            }
            let step = eval(&roots[i]) / denom;
            let (re, im) = step.to_f64_pair();
            max_step = max_step.max((re * re + im * im).sqrt());
            roots[i] = roots[i].clone() - step;
        }
        if max_step < 1e-14 {
            break;
        }
    }
    for r in roots.iter_mut() {
        for _ in 0..3 {
            let f = eval(r);
            let df = dval(r);
            if df.clone().modulus() > S::real_from_f64(1e-300) {
                *r = r.clone() - f / df;
            }
        }
    }
    roots.to_vec()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::C64;

    #[test]
    fn rank_of_obvious_matrices() {
        let m = DMatrix::<C64>::from_row_slice(
            2,
            3,
            &[
                C64::new(1.0, 0.0),
                C64::new(0.0, 0.0),
                C64::new(0.0, 0.0),
                C64::new(2.0, 0.0),
                C64::new(0.0, 0.0),
                C64::new(0.0, 0.0),
            ],
        );
        assert_eq!(rank(&m, 0).unwrap(), 1);
    }

    #[test]
    fn ambiguity_band_triggers() {
        let m = DMatrix::<C64>::from_diagonal(&nalgebra::DVector::from_vec(vec![
            C64::new(1.0, 0.0),
            C64::new(1e-8, 0.0),
        ]));
        assert!(matches!(rank(&m, 5), Err(Error::AmbiguousRank { degree: 5, .. })));
    }

    #[test]
    fn least_squares_minimal_norm() {
        // x + y = 2 with minimal norm: x = y = 1.
        let a = DMatrix::<C64>::from_row_slice(1, 2, &[C64::new(1.0, 0.0), C64::new(1.0, 0.0)]);
        let b = DVector::from_vec(vec![C64::new(2.0, 0.0)]);
        let ls = solve_least_squares(&a, &b, 0).unwrap();
        assert!((ls.solution[0] - C64::new(1.0, 0.0)).norm() < 1e-12);
        assert!((ls.solution[1] - C64::new(1.0, 0.0)).norm() < 1e-12);
        assert_eq!(ls.nullspace.ncols(), 1);
        assert!(ls.residual < 1e-14);
    }

    #[test]
    fn cubic_roots_reconstruct_polynomial() {
        let roots = cubic_roots(
            C64::new(1.0, 0.0),
            C64::new(-6.0, 0.0),
            C64::new(11.0, 0.0),
            C64::new(-6.0, 0.0),
        );
        let mut sorted: Vec<f64> = roots.iter().map(|r| r.re).collect();
        sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
        for (got, want) in sorted.iter().zip([1.0, 2.0, 3.0]) {
            assert!((got - want).abs() < 1e-10);
        }
    }
}
