//! Workbench for three-generator Sklyanin algebras over a numeric Novikov
//! specialization.
//!
//! The crate builds, degree by degree, the quadratic algebras
//! `Sky(a, b, c) = Λ⟨x,y,z⟩ / (a·yz + b·zy + c·x², …)` whose coefficients come
//! from truncated theta-type series, solves for the central cubic `W`, folds
//! the Koszul resolution of the trivial module into 4×4 graded matrix
//! factorizations of `W`, unrolls the 2-periodic resolutions over the quotient
//! `B = A/(W)`, and independently reproduces the same coefficient series from
//! exact rational triangle counts on the torus `ℂ/(ℤ ⊕ e^{2πi/3}ℤ)`.
//!
//! Numeric modules are generic over the complex scalar (see [`Scalar`]);
//! lattice geometry in [`fukaya`] is exact over `Ratio<i64>`.

pub mod cache;
pub mod error;
pub mod freealg;
pub mod fukaya;
pub mod linalg;
pub mod mfact;
pub mod novikov;
pub mod scalar;
pub mod sklyanin;
pub mod verify;

// placeholder-alias-fix
pub use error::Error;
pub use scalar::Scalar;

/// Default complex scalar used by the CLI and the verification suite.
pub type C64 = num_complex::Complex<f64>;
/// Single-precision complex scalar.
pub type C32 = num_complex::Complex<f32>;
/// Exact rational scalar for lattice geometry.
pub type Rat = num_rational::Ratio<i64>;

/// Noncommutative polynomial over the default scalar.
pub type NcPoly64 = freealg::NcPoly<C64>;
/// Sklyanin-type graded quotient over the default scalar.
/// Sklyanin-type graded quotient over the default scalar.
pub type Algebra64 = sklyanin::SklyaninAlgebra<C64>;

/// Crate-wide result type.
pub type Result<T> = std::result::Result<T, Error>;
