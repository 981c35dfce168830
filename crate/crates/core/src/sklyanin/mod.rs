//! The quadratic algebra `A = Λ⟨x,y,z⟩/(r_X, r_Y, r_Z)` realized degree by
//! degree, together with its central cubic, the quotient by it, and the
//! point scheme with its automorphism.
//!
//! Per degree `d` the two-sided ideal component is spanned by
//! `F_1·I_{d-1} + r·F_{d-2} (+ W·F_{d-3}` when a cubic generator is present).
//! The first summand has an exactly orthonormal spanning set obtained by
//! letter-prefixing an orthonormal basis of `I_{d-1}`, so only the freshly
//! placed generators need a rank decision: they are projected off the prefix
//! block and run through an SVD with the crate-wide ambiguity-band policy.

mod point_scheme;

pub use point_scheme::{point_scheme, sigma_step, PointScheme, ProjPoint};

use crate::error::Error;
use crate::freealg::{Gen, NcPoly, Word};
use crate::linalg::{self, NormF64};
use crate::scalar::Scalar;
use nalgebra::{ComplexField, DMatrix, DVector};
use num_traits::Zero;
use std::sync::OnceLock;

/// Maurer–Cartan relation triple for parameters `(a, b, c)`:
/// `h_X = a·yz + b·zy + c·x²` and its cyclic companions.
pub fn mc_relations<S: Scalar>(a: S, b: S, c: S) -> [NcPoly<S>; 3] {
    let w = |s: &[u8]| Word::from_indices(s);
    [
        NcPoly::from_terms([
            (w(&[1, 2]), a.clone()),
            (w(&[2, 1]), b.clone()),
            (w(&[0, 0]), c.clone()),
        ]),
        NcPoly::from_terms([
            (w(&[2, 0]), a.clone()),
            (w(&[0, 2]), b.clone()),
            (w(&[1, 1]), c.clone()),
        ]),
        NcPoly::from_terms([
            (w(&[0, 1]), a),
            (w(&[1, 0]), b),
            (w(&[2, 2]), c),
        ]),
    ]
}

/// The three symmetric cubic blocks spanning the central-element ansatz.
pub fn symmetric_blocks<S: Scalar>() -> [NcPoly<S>; 3] {
    let w = |s: &[u8]| Word::from_indices(s);
    let one = S::one;
    [
        NcPoly::from_terms([
            (w(&[0, 1, 2]), one()),
            (w(&[2, 0, 1]), one()),
            (w(&[1, 2, 0]), one()),
        ]),
        NcPoly::from_terms([
            (w(&[2, 1, 0]), one()),
            (w(&[0, 2, 1]), one()),
            (w(&[1, 0, 2]), one()),
        ]),
        NcPoly::from_terms([
            (w(&[0, 0, 0]), one()),
            (w(&[1, 1, 1]), one()),
            (w(&[2, 2, 2]), one()),
        ]),
    ]
}

/// Per-degree monomial basis and normal-form projection.
#[derive(Debug, Clone)]
pub struct Projection<S: Scalar> {
    pub basis_words: Vec<Word>,
    /// Row-major map from full degree-`d` coordinates to basis coordinates.
    pub matrix: DMatrix<S>,
}

struct Level<S: Scalar> {
    dim: usize,
    /// Orthonormal basis of the ideal's degree component (absent after a
    /// cache load; only needed while extending the construction).
    ideal_basis: Option<DMatrix<S>>,
    /// Smallest kept / largest dropped singular value of the fresh-generator
    /// block, for diagnostics.
    sigma_kept: f64,
    sigma_dropped: f64,
    proj: OnceLock<Result<Projection<S>, Error>>,
}

/// Graded quotient of the free algebra on `x, y, z` by the relation triple
/// (and optionally by a central cubic), built up to a degree cap.
pub struct SklyaninAlgebra<S: Scalar> {
    params: [S; 3],
    relations: Vec<NcPoly<S>>,
    cubic_gens: Vec<NcPoly<S>>,
    degree_cap: usize,
    levels: Vec<Level<S>>,
}

impl<S: Scalar> SklyaninAlgebra<S> {
    /// Build `Sky(a, b, c)` up to degree `cap`.
    pub fn build(a: S, b: S, c: S, cap: usize) -> Result<Self, Error> {
        if cap < 3 {
            return Err(Error::InvalidParams(format!(
                "degree cap {cap} < 3"
            )));
        }
        let norm = (a.clone().modulus().clone() * a.clone().modulus()
            + b.clone().modulus().clone() * b.clone().modulus()
            + c.clone().modulus().clone() * c.clone().modulus())
        .sqrt();
        if S::from_real(norm).to_f64_pair().0 < 1e-100 {
            return Err(Error::InvalidParams(
                "relation parameters (a, b, c) are all zero".into(),
            ));
        }
        let relations = mc_relations(a.clone(), b.clone(), c.clone()).to_vec();
        Self::build_from_generators([a, b, c], relations, Vec::new(), cap)
    }

    /// Same machinery with the ideal enlarged by a cubic (the quotient `B`).
    pub fn quotient_by_cubic(&self, w: &NcPoly<S>, cap: usize) -> Result<Self, Error> {
        Self::build_from_generators(
            self.params.clone(),
            self.relations.clone(),
            vec![w.clone()],
            cap,
        )
    }

    fn build_from_generators(
        params: [S; 3],
        relations: Vec<NcPoly<S>>,
        cubic_gens: Vec<NcPoly<S>>,
        cap: usize,
    ) -> Result<Self, Error> {
        let mut alg = SklyaninAlgebra {
            params,
            relations,
            cubic_gens,
            degree_cap: cap,
            levels: Vec::with_capacity(cap + 1),
        };
        // Degrees 0 and 1 have no ideal component.
        for d in 0..=1usize.min(cap) {
            alg.levels.push(Level {
                dim: 3usize.pow(d as u32),
                ideal_basis: Some(DMatrix::zeros(3usize.pow(d as u32), 0)),
                sigma_kept: f64::INFINITY,
                sigma_dropped: 0.0,
                proj: OnceLock::new(),
            });
        }
        for d in 2..=cap {
            let level = alg.extend_level(d)?;
            alg.levels.push(level);
        }
        Ok(alg)
    }

    fn extend_level(&self, d: usize) -> Result<Level<S>, Error> {
        let dim_full = 3usize.pow(d as u32);
        let dim_prev = 3usize.pow(d as u32 - 1);
        let q_prev = self.levels[d - 1]
            .ideal_basis
            .as_ref()
            .expect("extend_level requires construction data");
        let n_prev = q_prev.ncols();

        // Letter-prefix block: exactly orthonormal copies of Q_{d-1}.
        let mut prefix = DMatrix::<S>::zeros(dim_full, 3 * n_prev);
        for g in 0..3 {
            prefix
                .view_mut((g * dim_prev, g * n_prev), (dim_prev, n_prev))
                .copy_from(q_prev);
        }

        // Fresh generators: relations against degree d-2 words, cubics
        // against degree d-3 words, all columns normalized to unit length.
        let mut fresh_cols: Vec<DVector<S>> = Vec::new();
        for r in &self.relations {
            let scale = S::from_re(1.0 / poly_norm_f64(r));
            for w in Word::all_of_degree(d - 2) {
                let mut col = DVector::<S>::zeros(dim_full);
                for (rw, c) in r.terms() {
                    let idx = rw.lex_index() * 3usize.pow((d - 2) as u32) + w.lex_index();
                    col[idx] = c.clone() * scale.clone();
                }
                fresh_cols.push(col);
            }
        }
        if d >= 3 {
            for g in &self.cubic_gens {
                let scale = S::from_re(1.0 / poly_norm_f64(g));
                for w in Word::all_of_degree(d - 3) {
                    let mut col = DVector::<S>::zeros(dim_full);
                    for (gw, c) in g.terms() {
                        let idx = gw.lex_index() * 3usize.pow((d - 3) as u32) + w.lex_index();
                        col[idx] = c.clone() * scale.clone();
                    }
                    fresh_cols.push(col);
                }
            }
        }
        let mut fresh = DMatrix::<S>::from_columns(&fresh_cols);

        // Project the prefix block off twice (classical Gram-Schmidt needs
        // the second pass for orthogonality at the 1e-15 level).
        for _ in 0..2 {
            if n_prev > 0 {
                let coeffs = prefix.adjoint() * &fresh;
                fresh -= &prefix * coeffs;
            }
        }

        // Rank decision on the residual block. Generator columns are unit
        // length and the prefix block is orthonormal, so the largest singular
        // value of the assembled system is max(1, sigma_1(residual)) up to a
        // factor sqrt(2) absorbed by the ambiguity band.
        let parts = linalg::svd(&fresh);
        let sigma_ref = parts.singular_values.first().copied().unwrap_or(1.0).max(1.0);
        let rank = linalg::rank_partition(&parts.singular_values, sigma_ref, d)?;
        let sigma_kept = if rank > 0 {
            parts.singular_values[rank - 1]
        } else {
            f64::INFINITY
        };
        let sigma_dropped = parts.singular_values.get(rank).copied().unwrap_or(0.0);

        let mut q_new = parts.u.columns(0, rank).into_owned();
        if n_prev > 0 && rank > 0 {
            let coeffs = prefix.adjoint() * &q_new;
            q_new -= &prefix * coeffs;
            for j in 0..rank {
                let norm = q_new.column(j).norm_f64();
                let mut col = q_new.column_mut(j);
                col *= S::from_re(1.0 / norm);
            }
        }

        let ideal_rank = 3 * n_prev + rank;
        let mut q = DMatrix::<S>::zeros(dim_full, ideal_rank);
        q.view_mut((0, 0), (dim_full, 3 * n_prev)).copy_from(&prefix);
        q.view_mut((0, 3 * n_prev), (dim_full, rank)).copy_from(&q_new);

        Ok(Level {
            dim: dim_full - ideal_rank,
            ideal_basis: Some(q),
            sigma_kept,
            sigma_dropped,
            proj: OnceLock::new(),
        })
    }

    pub fn params(&self) -> &[S; 3] {
        &self.params
    }

    pub fn relations(&self) -> &[NcPoly<S>] {
        &self.relations
    }

    pub fn cubic_gens(&self) -> &[NcPoly<S>] {
        &self.cubic_gens
    }

    pub fn degree_cap(&self) -> usize {
        self.degree_cap
    }

    /// Dimension of the degree-`d` component of the quotient.
    pub fn dim(&self, d: usize) -> Result<usize, Error> {
        self.check_degree(d)?;
        Ok(self.levels[d].dim)
    }

    /// Diagnostics: (smallest kept, largest dropped) singular value per degree.
    pub fn rank_margins(&self, d: usize) -> Result<(f64, f64), Error> {
        self.check_degree(d)?;
        Ok((self.levels[d].sigma_kept, self.levels[d].sigma_dropped))
    }

    fn check_degree(&self, d: usize) -> Result<(), Error> {
        if d > self.degree_cap {
            return Err(Error::DegreeAboveCap {
                degree: d,
                cap: self.degree_cap,
            });
        }
        Ok(())
    }

    /// Monomial basis of the degree-`d` component (lexicographically earliest
    /// words with independent classes).
    pub fn basis_words(&self, d: usize) -> Result<&[Word], Error> {
        Ok(&self.projection(d)?.basis_words)
    }

    /// The normal-form projection table for degree `d`.
    pub fn projection(&self, d: usize) -> Result<&Projection<S>, Error> {
        self.check_degree(d)?;
        let level = &self.levels[d];
        level
            .proj
            .get_or_init(|| self.compute_projection(d))
            .as_ref()
            .map_err(|e| e.clone())
    }

    fn compute_projection(&self, d: usize) -> Result<Projection<S>, Error> {
        let dim_full = 3usize.pow(d as u32);
        let level = &self.levels[d];
        let q = level
            .ideal_basis
            .as_ref()
            .expect("projection of a cache-loaded level is precomputed");
        let n = q.ncols();
        let want = level.dim;

        // Greedy selection in word order. A candidate coordinate vector is
        // independent iff its residual against span(ideal ∪ accepted) clears
        // the threshold; the cheap Parseval form of the residual is only
        // trusted well above the ambiguity band.
        let mut u = DMatrix::<S>::zeros(dim_full, n + want);
        u.view_mut((0, 0), (dim_full, n)).copy_from(q);
        let mut cols = n;
        let mut basis_words = Vec::with_capacity(want);
        let threshold = linalg::RANK_REL_TOL;
        let band = linalg::AMBIGUITY_BAND;
        for idx in 0..dim_full {
            if basis_words.len() == want {
                break;
            }
            let active = u.view((0, 0), (dim_full, cols));
            let coeffs = active.adjoint() * linalg::unit_vector::<S>(dim_full, idx);
            let parseval = 1.0 - coeffs.norm_f64().powi(2);
            let residual_norm;
            let mut residual_vec = None;
            if parseval > 1e-11 {
                residual_norm = parseval.sqrt();
            } else {
                let mut r = linalg::unit_vector::<S>(dim_full, idx);
                r -= &active * coeffs;
                let c2 = active.adjoint() * &r;
                r -= &active * c2;
                residual_norm = r.norm_f64();
                residual_vec = Some(r);
            }
            if residual_norm > threshold * band {
                let mut r = match residual_vec {
                    Some(r) => r,
                    None => {
                        let mut r = linalg::unit_vector::<S>(dim_full, idx);
                        let c = active.adjoint() * &r;
                        r -= &active * c;
                        let c2 = active.adjoint() * &r;
                        r -= &active * c2;
                        r
                    }
                };
                let norm = r.norm_f64();
                r *= S::from_re(1.0 / norm);
                u.set_column(cols, &r);
                cols += 1;
                basis_words.push(Word::from_lex_index(d, idx));
            } else if residual_norm >= threshold / band {
                return Err(Error::AmbiguousRank {
                    degree: d,
                    sigma: residual_norm,
                    threshold,
                    band,
                });
            }
        }
        if basis_words.len() != want {
            return Err(Error::InvalidParams(format!(
                "degree {d}: found {} independent basis words, expected {want}",
                basis_words.len()
            )));
        }

        // Oblique projection along the ideal onto the selected words: solve
        // [Q | E_B]·(α; β) = v and keep β. The matrix is square by
        // construction; its inverse's bottom rows give the projection table.
        let mut square = DMatrix::<S>::zeros(dim_full, dim_full);
        square.view_mut((0, 0), (dim_full, n)).copy_from(q);
        for (j, w) in basis_words.iter().enumerate() {
            square[(w.lex_index(), n + j)] = S::one();
        }
        let inv = square
            .lu()
            .try_inverse()
            .ok_or_else(|| Error::InvalidParams(format!("degree {d}: projection solve failed")))?;
        let matrix = inv.rows(n, want).into_owned();
        Ok(Projection {
            basis_words,
            matrix,
        })
    }

    /// Coordinates of the degree-`d` homogeneous component of `p`.
    pub fn component_vector(&self, p: &NcPoly<S>, d: usize) -> DVector<S> {
        let mut v = DVector::<S>::zeros(3usize.pow(d as u32));
        for (w, c) in p.terms() {
            if w.degree() == d {
                v[w.lex_index()] = c.clone();
            }
        }
        v
    }

    /// Canonical representative supported on the per-degree basis words.
    pub fn normal_form(&self, p: &NcPoly<S>) -> Result<NcPoly<S>, Error> {
        let mut out = NcPoly::zero();
        for d in p.degrees() {
            self.check_degree(d)?;
            let proj = self.projection(d)?;
            let v = self.component_vector(p, d);
            let beta = &proj.matrix * v;
            let mut terms = Vec::new();
            for (j, w) in proj.basis_words.iter().enumerate() {
                if !beta[j].is_zero() {
                    terms.push((w.clone(), beta[j].clone()));
                }
            }
            out = out.add(&NcPoly::from_terms(terms));
        }
        Ok(out)
    }

    /// `normal_form(p · q)`.
    pub fn nf_mul(&self, p: &NcPoly<S>, q: &NcPoly<S>) -> Result<NcPoly<S>, Error> {
        self.normal_form(&p.mul(q))
    }

    /// Matrix of left multiplication by `f` from degree `m` to `m + deg f`,
    /// in basis-word coordinates.
    pub fn left_mult_matrix(&self, f: &NcPoly<S>, m: usize) -> Result<DMatrix<S>, Error> {
        let e = f.degree().unwrap_or(0);
        let src = self.projection(m)?.basis_words.clone();
        let tgt = self.projection(m + e)?;
        let mut out = DMatrix::<S>::zeros(tgt.basis_words.len(), src.len());
        for (j, w) in src.iter().enumerate() {
            let prod = f.mul(&NcPoly::monomial(w.clone(), S::one()));
            let v = self.component_vector(&prod, m + e);
            let beta = &tgt.matrix * v;
            out.set_column(j, &beta);
        }
        Ok(out)
    }

    /// Matrix of right multiplication by `f` from degree `m` to `m + deg f`.
    pub fn right_mult_matrix(&self, f: &NcPoly<S>, m: usize) -> Result<DMatrix<S>, Error> {
        let e = f.degree().unwrap_or(0);
        let src = self.projection(m)?.basis_words.clone();
        let tgt = self.projection(m + e)?;
        let mut out = DMatrix::<S>::zeros(tgt.basis_words.len(), src.len());
        for (j, w) in src.iter().enumerate() {
            let prod = NcPoly::monomial(w.clone(), S::one()).mul(f);
            let v = self.component_vector(&prod, m + e);
            let beta = &tgt.matrix * v;
            out.set_column(j, &beta);
        }
        Ok(out)
    }

    /// Rebuild a polynomial from basis coordinates in degree `d`.
    pub fn poly_from_basis_coords(&self, coords: &DVector<S>, d: usize) -> Result<NcPoly<S>, Error> {
        let proj = self.projection(d)?;
        assert_eq!(coords.len(), proj.basis_words.len());
        Ok(NcPoly::from_terms(
            proj.basis_words
                .iter()
                .cloned()
                .zip(coords.iter().cloned()),
        ))
    }
}

fn poly_norm_f64<S: Scalar>(p: &NcPoly<S>) -> f64 {
    p.terms()
        .map(|(_, c)| {
            let (re, im) = c.to_f64_pair();
            re * re + im * im
        })
        .sum::<f64>()
        .sqrt()
}

/// The solved central cubic of the algebra.
#[derive(Debug, Clone)]
pub struct CentralCubic<S: Scalar> {
    /// Unit-norm representative `α·(xyz+zxy+yzx) + β·(zyx+xzy+yxz) + γ·(x³+y³+z³)`.
    pub element: NcPoly<S>,
    pub ratio: [S; 3],
    /// Dimension of the space of central classes inside the symmetric ansatz,
    /// i.e. the commutator-system nullity modulo coefficient triples whose
    /// block combination already lies in the ideal (generically the single
    /// direction `(a, b, c)`, since `Σ vᵢ·hᵢ(a,b,c)` is a relation sum).
    pub ansatz_nullity: usize,
    /// Dimension of the kernel quotiented out above.
    pub ansatz_kernel: usize,
    /// Nullity of the centrality system over the whole degree-3 component.
    pub full_nullity: usize,
    /// `max_v ‖nf([g, v])‖ / ‖g‖` over the three generators.
    pub residual: f64,
}

/// Solve `nf([g, v]) = 0` for `g` in the symmetric cubic ansatz.
pub fn solve_central_cubic<S: Scalar>(
    alg: &SklyaninAlgebra<S>,
) -> Result<CentralCubic<S>, Error> {
    if alg.degree_cap() < 4 {
        return Err(Error::DegreeAboveCap {
            degree: 4,
            cap: alg.degree_cap(),
        });
    }
    let blocks = symmetric_blocks::<S>();
    let dim4 = alg.projection(4)?.basis_words.len();

    // Commutator columns for the 3-dimensional symmetric ansatz.
    let mut ansatz = DMatrix::<S>::zeros(3 * dim4, 3);
    for (j, blk) in blocks.iter().enumerate() {
        for (vi, g) in Gen::ALL.iter().enumerate() {
            let gen = NcPoly::gen(*g);
            let comm = alg.normal_form(&blk.commutator(&gen))?;
            let v = component_in_basis(alg, &comm, 4)?;
            ansatz.view_mut((vi * dim4, j), (dim4, 1)).copy_from(&v);
        }
    }
    let ansatz_parts = linalg::svd(&pad_tall(&ansatz));
    let sigma_ref = ansatz_parts.singular_values.first().copied().unwrap_or(1.0).max(1.0);
    let ansatz_rank = linalg::rank_partition(&ansatz_parts.singular_values, sigma_ref, 3)?;
    let raw_nullity = 3 - ansatz_rank;

    // Coefficient triples whose block combination is zero in the quotient;
    // they solve the commutator system vacuously and carry no information.
    let dim3 = alg.projection(3)?.basis_words.len();
    let mut class_map = DMatrix::<S>::zeros(dim3, 3);
    for (j, blk) in blocks.iter().enumerate() {
        let nf = alg.normal_form(blk)?;
        let v = component_in_basis(alg, &nf, 3)?;
        class_map.view_mut((0, j), (dim3, 1)).copy_from(&v);
    }
    let kernel_parts = linalg::svd(&pad_tall(&class_map));
    let kernel_ref = kernel_parts.singular_values.first().copied().unwrap_or(1.0).max(1.0);
    let kernel_rank = linalg::rank_partition(&kernel_parts.singular_values, kernel_ref, 3)?;
    let ansatz_kernel = 3 - kernel_rank;

    let ansatz_nullity = raw_nullity - ansatz_kernel;
    if ansatz_nullity == 0 {
        return Err(Error::NoCentralCubic {
            residual: ansatz_parts.singular_values.last().copied().unwrap_or(f64::NAN),
        });
    }

    // Nullity over the full degree-3 component.
    let basis3 = alg.projection(3)?.basis_words.clone();
    let mut full = DMatrix::<S>::zeros(3 * dim4, basis3.len());
    for (j, w) in basis3.iter().enumerate() {
        let mono = NcPoly::monomial(w.clone(), S::one());
        for (vi, g) in Gen::ALL.iter().enumerate() {
            let gen = NcPoly::gen(*g);
            let comm = alg.normal_form(&mono.commutator(&gen))?;
            let v = component_in_basis(alg, &comm, 4)?;
            full.view_mut((vi * dim4, j), (dim4, 1)).copy_from(&v);
        }
    }
    let full_parts = linalg::svd(&pad_tall(&full));
    let full_ref = full_parts.singular_values.first().copied().unwrap_or(1.0).max(1.0);
    let full_rank = linalg::rank_partition(&full_parts.singular_values, full_ref, 3)?;
    let full_nullity = basis3.len() - full_rank;

    // Nullspace of the ansatz system (orthonormal columns).
    let null_cols: Vec<_> = (ansatz_rank..3)
        .map(|i| ansatz_parts.v_t.row(i).adjoint())
        .collect();
    let nullspace = DMatrix::<S>::from_columns(&null_cols);

    // Tie-break inside the nullspace: maximize |γ|, then |α|, then make the
    // leading component's phase real positive.
    let mut ratio = pick_ratio(&nullspace);
    let phase_ref = if S::from_real(ratio[0].clone().modulus()).to_f64_pair().0 > 1e-8 {
        ratio[0].clone()
    } else {
        ratio[2].clone()
    };
    let phase = phase_ref.clone() / S::from_real(phase_ref.modulus());
    for r in ratio.iter_mut() {
        *r = r.clone() / phase.clone();
    }

    let element = blocks[0]
        .scale(ratio[0].clone())
        .add(&blocks[1].scale(ratio[1].clone()))
        .add(&blocks[2].scale(ratio[2].clone()));
    let gnorm = poly_norm_f64(&element);
    let element = element.scale(S::from_re(1.0 / gnorm));
    let mut ratio_unit = ratio.clone();
    for r in ratio_unit.iter_mut() {
        *r = r.clone() * S::from_re(1.0 / gnorm);
    }

    let mut residual = 0.0f64;
    for g in Gen::ALL {
        let comm = alg.normal_form(&element.commutator(&NcPoly::gen(g)))?;
        residual = residual.max(poly_norm_f64(&comm));
    }

    Ok(CentralCubic {
        element,
        ratio: ratio_unit,
        ansatz_nullity,
        full_nullity,
        residual,
    })
}

fn pick_ratio<S: Scalar>(nullspace: &DMatrix<S>) -> [S; 3] {
    let pick = |row: usize| -> (f64, DVector<S>) {
        let coeffs = nullspace.row(row).adjoint();
        let norm = coeffs.norm_f64();
        (norm, nullspace * coeffs)
    };
    let (gnorm, gvec) = pick(2);
    let chosen = if gnorm > 1e-8 {
        gvec
    } else {
        let (anorm, avec) = pick(0);
        if anorm > 1e-8 {
            avec
        } else {
            nullspace.column(0).into_owned()
        }
    };
    let norm = chosen.norm_f64();
    let chosen = chosen * S::from_re(1.0 / norm);
    [chosen[0].clone(), chosen[1].clone(), chosen[2].clone()]
}

fn component_in_basis<S: Scalar>(
    alg: &SklyaninAlgebra<S>,
    p: &NcPoly<S>,
    d: usize,
) -> Result<DVector<S>, Error> {
    let proj = alg.projection(d)?;
    let mut v = DVector::<S>::zeros(proj.basis_words.len());
    for (j, w) in proj.basis_words.iter().enumerate() {
        v[j] = p.coeff(w);
    }
    Ok(v)
}

fn pad_tall<S: Scalar>(m: &DMatrix<S>) -> DMatrix<S> {
    if m.nrows() >= m.ncols() {
        return m.clone();
    }
    let mut p = DMatrix::<S>::zeros(m.ncols(), m.ncols());
    p.view_mut((0, 0), (m.nrows(), m.ncols())).copy_from(m);
    p
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freealg::parse_with;
    use crate::freealg::Bindings;
    use crate::C64;

    fn generic() -> (C64, C64, C64) {
        // Arbitrary well-conditioned parameters.
        (
            C64::new(0.9, 0.1),
            C64::new(-0.55, 0.3),
            C64::new(0.4, -0.2),
        )
    }

    fn commutative() -> (C64, C64, C64) {
        (C64::new(0.8, 0.0), C64::new(-0.8, 0.0), C64::new(0.0, 0.0))
    }

    #[test]
    fn generic_dimensions_match_polynomial_growth() {
        let (a, b, c) = generic();
        let alg = SklyaninAlgebra::build(a, b, c, 5).unwrap();
        for (d, want) in [1usize, 3, 6, 10, 15, 21].iter().enumerate() {
            if d <= 5 {
                assert_eq!(alg.dim(d).unwrap(), *want, "degree {d}");
            }
        }
    }

    #[test]
    fn degree_two_rank_is_three() {
        // 9 words minus 3 independent relations.
        let (a, b, c) = generic();
        let alg = SklyaninAlgebra::build(a, b, c, 3).unwrap();
        assert_eq!(alg.dim(2).unwrap(), 6);
    }

    #[test]
    fn relations_project_to_zero() {
        let (a, b, c) = generic();
        let alg = SklyaninAlgebra::build(a, b, c, 4).unwrap();
        for r in alg.relations() {
            let nf = alg.normal_form(r).unwrap();
            assert!(nf.norm() < 1e-12, "relation residual {}", nf.norm());
        }
    }

    #[test]
    fn normal_form_is_idempotent_on_basis_words() {
        let (a, b, c) = generic();
        let alg = SklyaninAlgebra::build(a, b, c, 4).unwrap();
        for w in alg.basis_words(3).unwrap() {
            let p = NcPoly::monomial(w.clone(), C64::new(1.0, 0.0));
            let nf = alg.normal_form(&p).unwrap();
            assert_eq!(nf, p);
        }
    }

    #[test]
    fn commutative_point_sorts_letters() {
        let (a, b, c) = commutative();
        let alg = SklyaninAlgebra::build(a, b, c, 4).unwrap();
        let check = |input: &str, expect: &str| {
            let p = parse_with::<C64>(input, &Bindings::new()).unwrap();
            let q = parse_with::<C64>(expect, &Bindings::new()).unwrap();
            let diff = alg.normal_form(&p).unwrap().sub(&q);
            assert!(diff.norm() < 1e-12, "{input} -> {expect}");
        };
        check("y*x", "x*y");
        check("z*y", "y*z");
        check("z*x", "x*z");
        check("z*y*x", "x*y*z");
    }

    #[test]
    fn central_cubic_generic_has_ansatz_nullity_one() {
        let (a, b, c) = generic();
        let alg = SklyaninAlgebra::build(a, b, c, 4).unwrap();
        let central = solve_central_cubic(&alg).unwrap();
        assert_eq!(central.ansatz_nullity, 1);
        assert_eq!(central.full_nullity, 1);
        assert!(central.residual < 1e-10, "residual {}", central.residual);
    }

    #[test]
    fn central_cubic_commutative_has_full_nullity_ten() {
        let (a, b, c) = commutative();
        let alg = SklyaninAlgebra::build(a, b, c, 4).unwrap();
        let central = solve_central_cubic(&alg).unwrap();
        assert_eq!(central.full_nullity, 10);
        assert_eq!(central.ansatz_nullity, 3);
        // Tie-break favours |γ| i.e. the x³+y³+z³ direction.
        let g = central.ratio[2].norm();
        assert!(g > 0.5, "gamma component {g}");
        assert!(central.residual < 1e-12);
    }

    #[test]
    fn quotient_by_central_cubic_has_expected_dims() {
        let (a, b, c) = generic();
        let alg = SklyaninAlgebra::build(a, b, c, 4).unwrap();
        let central = solve_central_cubic(&alg).unwrap();
        let b_alg = alg.quotient_by_cubic(&central.element, 4).unwrap();
        for (d, want) in [1usize, 3, 6, 9, 12].iter().enumerate() {
            assert_eq!(b_alg.dim(d).unwrap(), *want, "degree {d}");
        }
    }

    #[test]
    fn degree_above_cap_is_an_error() {
        let (a, b, c) = generic();
        let alg = SklyaninAlgebra::build(a, b, c, 3).unwrap();
        let p = NcPoly::<C64>::monomial(Word::from_lex_index(4, 7), C64::new(1.0, 0.0));
        assert!(matches!(
            alg.normal_form(&p),
            Err(Error::DegreeAboveCap { degree: 4, cap: 3 })
        ));
    }
}
