//! Groebner-basis calculator over prime fields GF(p), built around the
//! interaction of the Frobenius endomorphism with colon ideals.
//!
//! The library computes Frobenius bracket powers I^[q], colon ideals
//! (I : J), lengths, Hilbert-Kunz data and generator-growth series in
//! graded quotients R = GF(p)[x_1..x_n]/K, and uses them to probe two
//! structural properties at the origin: regularity (via Kunz's colength
//! criterion) and unique factorization (via commutation of Frobenius
//! with element colons).
//!
//! ```
//! use kunzite::field::PrimeField;
//! use kunzite::groebner::WorkBudget;
//! use kunzite::quotient::RingPresentation;
//! use kunzite::invariants::hk_series;
//!
//! // GF(2)[x, y] is regular: the colength of m^[q] is exactly q^2.
//! let ring = RingPresentation::polynomial_ring(
//!     PrimeField::new(2).unwrap(),
//!     &["x", "y"],
//! ).unwrap();
//! let series = hk_series(&ring, 3, &mut WorkBudget::default()).unwrap();
//! assert!(series.regular_flag);
//! assert_eq!(series.rows[2].lambda, 64);
//! ```

pub mod cache;
pub mod conditions;
pub mod dsl;
pub mod error;
pub mod field;
pub mod groebner;
pub mod ideal_ops;
pub mod invariants;
pub mod monomial;
pub mod poly;
pub mod quotient;
pub mod rational;
pub mod runner;

pub use error::{Error, Result};
