//! Exact symbolic computation of Frobenius-twisted homological invariants
//! for graded quotient rings of polynomial rings over prime fields:
//! Hilbert-Kunz multiplicities, higher Tor limits, empirical stably-phantom
//! homology, and the regularity verdicts they predict.

pub mod asymptotics;
pub mod cache;
pub mod complex;
pub mod descriptor;
pub mod error;
pub mod exec;
pub mod fp;
pub mod groebner;
pub mod homology;
pub mod jobspec;
pub mod monomial;
pub mod oracle;
pub mod parse;
pub mod poly;
pub mod quotient;
pub mod report;
pub mod resolution;
pub mod staircase;
pub mod vector;

pub use descriptor::{MonomialOrder, RingDescriptor};
pub use error::{Error, Result};
pub use groebner::{buchberger, module_syzygies, normal_form, GroebnerBasis};
pub use monomial::Monomial;
pub use parse::parse_polynomial;
pub use poly::Polynomial;
pub use quotient::{bracket_power, make_quotient_ring, QuotientRing};
pub use vector::VectorElement;
