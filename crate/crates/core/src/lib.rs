//! A laboratory for exact Fourier analysis on F_q^d, q = p^l odd.
//!
//! The crate builds finite fields with a fixed irreducible modulus, the
//! canonical additive character χ(a) = ζ_p^{Tr(a)} and quadratic character ψ,
//! Gauss sums, dense Fourier transforms of functions on the grid F_q^d, and
//! on top of those the counting apparatus of finite-field distance geometry:
//! spheres ‖x‖ = t and their spectra, distance and dot-product sets (plain,
//! pinned, and sliced), k-star moments, sum-product sets, and congruence
//! censuses of k-point simplices.
//!
//! Everything has two numeric modes. Exact mode stores spectral values as
//! elements of the cyclotomic field Q(ζ_p) with rational coordinates, so
//! identities are checked with genuine equality; float mode uses complex
//! doubles for larger scans. The Fourier machinery is generic over the
//! [`scalar::Scalar`] value type, with [`CycNum`] and [`num_complex::Complex64`]
//! as the two instances.
//!
//! ```
//! use fqlab::{construct, distlab, FieldSpec};
//!
//! let field = FieldSpec::from_q(13)?;
//! let e = construct::random_set(&field, 2, 31, 7)?;
//!
//! // the planar second-moment identity holds with zero defect
//! assert_eq!(distlab::lemma_main_check(&field, &e)?.defect, 0);
//!
//! // |E| = 31 ≥ 13^{4/3}, so the distance-set bound is in force
//! let wolff = distlab::wolff_check(&field, &e)?;
//! assert_eq!(wolff.status, distlab::CheckStatus::Pass);
//! # Ok::<(), fqlab::Error>(())
//! ```

pub mod construct;
pub mod cyclotomic;
pub mod distlab;
pub mod error;
pub mod field;
pub mod fourier;
pub mod gauss;
pub mod grid;
pub mod rng;
pub mod scalar;
pub mod simplex;
pub mod spectrum;
pub mod spheres;

pub use cyclotomic::{Cyc, CycNum};
pub use error::{Error, Result};
pub use field::{FieldSpec, Fq};
pub use fourier::{GridFunction, SpectralTable};
pub use grid::{GridPoint, PointSet};
pub use num_complex::Complex64;
pub use rng::DetRng;

/// Grid functions with exact cyclotomic values.
pub type ExactGrid = GridFunction<CycNum>;
/// Grid functions with complex double values.
pub type FloatGrid = GridFunction<Complex64>;
/// Spectra with exact cyclotomic values.
pub type ExactSpectrum = SpectralTable<CycNum>;
/// Spectra with complex double values.
pub type FloatSpectrum = SpectralTable<Complex64>;
