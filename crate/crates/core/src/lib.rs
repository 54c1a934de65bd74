//! Splitting types of monic integer polynomials modulo primes, and the
//! family-level statistics built on them: average Chebotarev densities,
//! centered moments, the normal limit of splitting counts, and the
//! ramified/index prime averages.
//!
//! Module map:
//!
//! * [`primes`]: sieve, `π(x)` and `Σ 1/p`.
//! * [`fp_poly`]: polynomials over prime fields, squarefree tests,
//!   distinct-degree splitting types and complete factorization.
//! * [`z_poly`]: monic integer polynomials, discriminants, the Dedekind
//!   p-maximality test and discriminant factorization.
//! * [`split_types`]: exact combinatorics of splitting types.
//! * [`family`]: generation and S_n certification of polynomial families.
//! * [`statistics`]: everything aggregated over a certified family.
//! * [`cli`]: the experiment runner behind the `splitstat` binary.

pub mod cli;
pub mod error;
pub mod family;
pub mod fp_poly;
pub mod primes;
pub mod split_types;
pub mod statistics;
pub mod z_poly;

pub use error::{Error, Result};
pub use family::{CertifiedFamily, FamilyMode, FamilySpec, GaloisCertificate, GaloisStatus};
pub use fp_poly::FieldPolynomial;
pub use primes::PrimeTable;
pub use split_types::{ExactRational, SplittingType};
pub use statistics::StatReport;
pub use z_poly::{DiscriminantReport, IntPolynomial};

/// Version string embedded in every report.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
