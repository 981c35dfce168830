//! Noncommutative polynomials in three generators `x, y, z`.
//!
//! Words are ordered degree-first, then lexicographically with `x < y < z`;
//! this order is the canonical one used for basis selection, printing and
//! serialization everywhere downstream.

mod parser;

pub use parser::{parse, parse_with, Bindings};

use crate::error::Error;
use crate::scalar::Scalar;
use nalgebra::{ComplexField, RealField};
use num_traits::Zero;
use std::collections::BTreeMap;
use std::fmt;

/// One of the three generators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Gen {
    X = 0,
    Y = 1,
    Z = 2,
}

impl Gen {
    pub const ALL: [Gen; 3] = [Gen::X, Gen::Y, Gen::Z];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Gen {
        match i {
            0 => Gen::X,
            1 => Gen::Y,
            2 => Gen::Z,
            _ => panic!("generator index out of range: {i}"),
        }
    }

    pub fn letter(self) -> char {
        match self {
            Gen::X => 'x',
            Gen::Y => 'y',
            Gen::Z => 'z',
        }
    }
}

/// A monomial word over `{x, y, z}`, stored as letter indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(Vec<u8>);

impl Word {
    pub fn empty() -> Word {
        Word(Vec::new())
    }

    pub fn gen(g: Gen) -> Word {
        Word(vec![g.index() as u8])
    }

    pub fn from_indices(letters: &[u8]) -> Word {
        assert!(letters.iter().all(|&l| l < 3));
        Word(letters.to_vec())
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn letters(&self) -> impl Iterator<Item = Gen> + '_ {
        self.0.iter().map(|&l| Gen::from_index(l as usize))
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// Rotate left by `k` places.
    pub fn rotated(&self, k: usize) -> Word {
        if self.0.is_empty() {
            return self.clone();
        }
        let k = k % self.0.len();
        let mut v = Vec::with_capacity(self.0.len());
        v.extend_from_slice(&self.0[k..]);
        v.extend_from_slice(&self.0[..k]);
        Word(v)
    }

    /// Index of this word within the lexicographic enumeration of its degree.
    pub fn lex_index(&self) -> usize {
        self.0.iter().fold(0usize, |acc, &l| acc * 3 + l as usize)
    }

    /// The `i`-th word of the given degree in lexicographic order.
    pub fn from_lex_index(degree: usize, mut i: usize) -> Word {
        let mut v = vec![0u8; degree];
        for slot in (0..degree).rev() {
            v[slot] = (i % 3) as u8;
            i /= 3;
        }
        Word(v)
    }

    pub fn all_of_degree(degree: usize) -> impl Iterator<Item = Word> {
        (0..3usize.pow(degree as u32)).map(move |i| Word::from_lex_index(degree, i))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let mut first = true;
        let mut run_letter = self.0[0];
        let mut run_len = 0usize;
        let flush = |f: &mut fmt::Formatter<'_>, letter: u8, len: usize, first: &mut bool| {
            if len == 0 {
                return Ok(());
            }
            if !*first {
                write!(f, "*")?;
            }
            *first = false;
            let c = Gen::from_index(letter as usize).letter();
            if len == 1 {
                write!(f, "{c}")
            } else {
                write!(f, "{c}^{len}")
            }
        };
        for &l in &self.0 {
            if l == run_letter {
                run_len += 1;
            } else {
                flush(f, run_letter, run_len, &mut first)?;
                run_letter = l;
                run_len = 1;
            }
        }
        flush(f, run_letter, run_len, &mut first)
    }
}

/// Sparse noncommutative polynomial with scalar coefficients.
///
/// Coefficients smaller than `Scalar::prune_ratio()` times the largest stored
/// coefficient are dropped eagerly, so the zero polynomial is always the empty
/// map.
#[derive(Debug, Clone, PartialEq)]
pub struct NcPoly<S: Scalar> {
    terms: BTreeMap<Word, S>,
}

impl<S: Scalar> Default for NcPoly<S> {
    fn default() -> Self {
        NcPoly::zero()
    }
}

impl<S: Scalar> NcPoly<S> {
    pub fn zero() -> Self {
        NcPoly {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        NcPoly::monomial(Word::empty(), S::one())
    }

    pub fn gen(g: Gen) -> Self {
        NcPoly::monomial(Word::gen(g), S::one())
    }

    pub fn monomial(word: Word, coeff: S) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(word, coeff);
        }
        NcPoly { terms }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Word, S)>) -> Self {
        let mut p = NcPoly::zero();
        for (w, c) in terms {
            p.add_term(w, c);
        }
        p.prune();
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &S)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, w: &Word) -> S {
        self.terms.get(w).cloned().unwrap_or_else(S::zero)
    }

    /// Largest word degree present, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(|w| w.degree()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|w| w.degree());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    /// Distinct degrees present, ascending.
    pub fn degrees(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.terms.keys().map(|w| w.degree()).collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    pub fn homogeneous_component(&self, d: usize) -> NcPoly<S> {
        NcPoly {
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| w.degree() == d)
                .map(|(w, c)| (w.clone(), c.clone()))
                .collect(),
        }
    }

    fn add_term(&mut self, w: Word, c: S) {
        use std::collections::btree_map::Entry;
        match self.terms.entry(w) {
            Entry::Vacant(e) => {
                if !c.is_zero() {
                    e.insert(c);
                }
            }
            Entry::Occupied(mut e) => {
                let v = e.get().clone() + c;
                if v.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
        }
    }

    pub fn max_coeff_norm(&self) -> S::RealField {
        self.terms
            .values()
            .map(|c| c.clone().modulus())
            .fold(S::RealField::zero(), |a, b| a.max(b))
    }

    fn prune(&mut self) {
        if self.terms.is_empty() {
            return;
        }
        let cutoff = S::prune_ratio() * self.max_coeff_norm();
        self.terms.retain(|_, c| c.clone().modulus() > cutoff);
    }

    pub fn scale(&self, s: S) -> NcPoly<S> {
        if s.is_zero() {
            return NcPoly::zero();
        }
        let mut p = NcPoly {
            terms: self
                .terms
                .iter()
                .map(|(w, c)| (w.clone(), c.clone() * s.clone()))
                .collect(),
        };
        p.prune();
        p
    }

    pub fn add(&self, other: &NcPoly<S>) -> NcPoly<S> {
        let mut p = self.clone();
        for (w, c) in &other.terms {
            p.add_term(w.clone(), c.clone());
        }
        p.prune();
        p
    }

    pub fn sub(&self, other: &NcPoly<S>) -> NcPoly<S> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> NcPoly<S> {
        NcPoly {
            terms: self
                .terms
                .iter()
                .map(|(w, c)| (w.clone(), -c.clone()))
                .collect(),
        }
    }

    /// Free product: bilinear extension of word concatenation.
    pub fn mul(&self, other: &NcPoly<S>) -> NcPoly<S> {
        let mut p = NcPoly::zero();
        for (w1, c1) in &self.terms {
            for (w2, c2) in &other.terms {
                p.add_term(w1.concat(w2), c1.clone() * c2.clone());
            }
        }
        p.prune();
        p
    }

    pub fn commutator(&self, other: &NcPoly<S>) -> NcPoly<S> {
        self.mul(other).sub(&other.mul(self))
    }

    /// Euclidean norm of the coefficient vector.
    pub fn norm(&self) -> S::RealField {
        self.terms
            .values()
            .map(|c| {
                let m = c.clone().modulus();
                m.clone() * m
            })
            .fold(S::RealField::zero(), |a, b| a + b)
            .sqrt()
    }

    /// Cyclic partial derivative with respect to `v`: every occurrence
    /// `w = u·v·w'` contributes `coeff(w)·(w'·u)`.
    pub fn cyclic_derivative(&self, v: Gen) -> Result<NcPoly<S>, Error> {
        if !self.is_homogeneous() {
            return Err(Error::NotHomogeneous(self.degrees()));
        }
        if let Some(0) = self.degree() {
            return Err(Error::NotHomogeneous(vec![0]));
        }
        let target = v.index() as u8;
        let mut out = NcPoly::zero();
        for (w, c) in &self.terms {
            let letters = &w.0;
            for (i, &l) in letters.iter().enumerate() {
                if l == target {
                    let mut rest = Vec::with_capacity(letters.len() - 1);
                    rest.extend_from_slice(&letters[i + 1..]);
                    rest.extend_from_slice(&letters[..i]);
                    out.add_term(Word(rest), c.clone());
                }
            }
        }
        out.prune();
        Ok(out)
    }

    /// Canonical text form; see the module grammar. `parse(print(p)) == p`.
    pub fn print(&self) -> String {
        format!("{self}")
    }
}

impl<S: Scalar> fmt::Display for NcPoly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (w, c) in &self.terms {
            let (re, im) = (c.clone().real(), c.clone().imaginary());
            let coeff_str = if im.is_zero() {
                None2::Real(re.clone())
            } else if re.is_zero() {
                None2::Imag(im.clone())
            } else {
                None2::Full(re.clone(), im.clone())
            };
            // Pure-real negative coefficients print with a leading minus so the
            // output reads naturally; everything else joins with '+'.
            let (neg, body) = match coeff_str {
                None2::Real(r) => {
                    let neg = r < S::RealField::zero();
                    let mag = if neg { -r } else { r };
                    let is_one = mag == S::RealField::one();
                    let body = if is_one && w.degree() > 0 {
                        format!("{w}")
                    } else if w.degree() == 0 {
                        S::fmt_component(mag)
                    } else {
                        format!("{}*{w}", S::fmt_component(mag))
                    };
                    (neg, body)
                }
                None2::Imag(i) => {
                    let body = if w.degree() == 0 {
                        format!("{}*i", S::fmt_component(i))
                    } else {
                        format!("{}*i*{w}", S::fmt_component(i))
                    };
                    (false, body)
                }
                None2::Full(r, i) => {
                    let ims = S::fmt_component(i);
                    let sign = if ims.starts_with('-') { "" } else { "+" };
                    let body = if w.degree() == 0 {
                        format!("({}{}{}*i)", S::fmt_component(r), sign, ims)
                    } else {
                        format!("({}{}{}*i)*{w}", S::fmt_component(r), sign, ims)
                    };
                    (false, body)
                }
            };
            if first {
                if neg {
                    write!(f, "-{body}")?;
                } else {
                    write!(f, "{body}")?;
                }
                first = false;
            } else if neg {
                write!(f, " - {body}")?;
            } else {
                write!(f, " + {body}")?;
            }
        }
        Ok(())
    }
}

enum None2<R> {
    Real(R),
    Imag(R),
    Full(R, R),
}

use num_traits::One;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{C64, Scalar as _};

    fn c(x: f64) -> C64 {
        C64::new(x, 0.0)
    }

    fn w(s: &str) -> Word {
        Word::from_indices(
            &s.bytes()
                .map(|b| match b {
                    b'x' => 0,
                    b'y' => 1,
                    b'z' => 2,
                    _ => panic!("bad letter"),
                })
                .collect::<Vec<_>>(),
        )
    }

    #[test]
    fn word_order_is_degree_then_lex() {
        assert!(w("z") < w("xx"));
        assert!(w("xy") < w("xz"));
        assert!(w("xz") < w("yx"));
        assert!(Word::empty() < w("x"));
    }

    #[test]
    fn lex_index_round_trips() {
        for d in 0..4 {
            for (i, word) in Word::all_of_degree(d).enumerate() {
                assert_eq!(word.lex_index(), i);
                assert_eq!(Word::from_lex_index(d, i), word);
            }
        }
    }

    #[test]
    fn mul_concatenates_words() {
        let x = NcPoly::<C64>::gen(Gen::X);
        let y = NcPoly::gen(Gen::Y);
        let z = NcPoly::gen(Gen::Z);
        assert_eq!(x.mul(&y), NcPoly::monomial(w("xy"), c(1.0)));
        // unit
        let p = x.add(&y.scale(c(2.0)));
        assert_eq!(NcPoly::one().mul(&p), p);
        // bilinearity: (x+y)·z = xz + yz
        let lhs = x.add(&y).mul(&z);
        let rhs = NcPoly::from_terms([(w("xz"), c(1.0)), (w("yz"), c(1.0))]);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn grading_adds_on_homogeneous_inputs() {
        let p = NcPoly::<C64>::from_terms([(w("xy"), c(1.0)), (w("zz"), c(-2.0))]);
        let q = NcPoly::from_terms([(w("xyz"), c(3.0))]);
        assert_eq!(p.mul(&q).degree(), Some(5));
    }

    #[test]
    fn cyclic_derivative_of_cyclic_sum() {
        // ∂ₓ(xyz + zxy + yzx) = 3·yz, enumerating the rotations by hand.
        let p = NcPoly::<C64>::from_terms([
            (w("xyz"), c(1.0)),
            (w("zxy"), c(1.0)),
            (w("yzx"), c(1.0)),
        ]);
        let d = p.cyclic_derivative(Gen::X).unwrap();
        assert_eq!(d, NcPoly::monomial(w("yz"), c(3.0)));
    }

    #[test]
    fn cyclic_derivative_of_cube() {
        let p = NcPoly::<C64>::monomial(w("xxx"), c(1.0));
        let d = p.cyclic_derivative(Gen::X).unwrap();
        assert_eq!(d, NcPoly::monomial(w("xx"), c(3.0)));
    }

    #[test]
    fn cyclic_derivative_rejects_mixed_degrees() {
        let p = NcPoly::<C64>::from_terms([(w("x"), c(1.0)), (w("xy"), c(1.0))]);
        assert!(matches!(
            p.cyclic_derivative(Gen::X),
            Err(Error::NotHomogeneous(_))
        ));
    }

    #[test]
    fn cyclic_derivative_invariant_under_rotation() {
        let base = NcPoly::<C64>::from_terms([(w("xyzzy"), c(1.25)), (w("yxzyx"), c(-0.5))]);
        let rotated = NcPoly::from_terms(
            base.terms()
                .map(|(word, coeff)| (word.rotated(2), coeff.clone())),
        );
        for g in Gen::ALL {
            let a = base.cyclic_derivative(g).unwrap();
            let b = rotated.cyclic_derivative(g).unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn superpotential_derivatives_are_the_relations() {
        // Φ = a·xyz + b·xzy + (c/3)(x³+y³+z³); ∂ₓΦ = a·yz + b·zy + c·x².
        let (a, b, cc) = (c(0.7), c(-0.3), c(0.45));
        let third = c(1.0 / 3.0);
        let phi = NcPoly::<C64>::from_terms([
            (w("xyz"), a),
            (w("xzy"), b),
            (w("xxx"), cc * third),
            (w("yyy"), cc * third),
            (w("zzz"), cc * third),
        ]);
        let dx = phi.cyclic_derivative(Gen::X).unwrap();
        let expected =
            NcPoly::from_terms([(w("yz"), a), (w("zy"), b), (w("xx"), cc)]);
        let diff = dx.sub(&expected);
        assert!(diff.norm() < 1e-12);
    }

    #[test]
    fn pruning_drops_relative_dust() {
        let p = NcPoly::<C64>::from_terms([(w("x"), c(1.0)), (w("y"), c(1e-16))]);
        assert_eq!(p.num_terms(), 1);
    }

    #[test]
    fn display_canonical_forms() {
        let p = NcPoly::<C64>::from_terms([
            (w("xx"), c(1.0)),
            (w("xy"), c(-2.0)),
            (Word::empty(), C64::new(0.0, 1.0)),
        ]);
        let s = p.print();
        assert!(s.starts_with("1.0000000000000000e0*i"));
        assert!(s.contains("x^2"));
        assert!(s.contains(" - 2.0000000000000000e0*x*y"));
    }
}
