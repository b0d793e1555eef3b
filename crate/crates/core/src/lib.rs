//! Exact symbolic computation kernel for forcing algebras and closure
//! operations on ideals: sparse multivariate polynomials over Q and F_p, a
//! Buchberger engine with cofactor tracking, ideal membership with
//! re-expandable certificates, paraclass-vanishing searches over forcing
//! presentations, a constructive vanishing certificate over polynomial rings,
//! characteristic-p tight-closure tests, and Newton-polyhedron membership for
//! monomial ideals.
//!
//! Every positive verdict carries a polynomial-identity certificate that can
//! be re-expanded and checked without trusting the Groebner machinery.

// Numeric kernels: `% == 0` and index loops over tableaux read better than
// the iterator forms clippy suggests.
#![allow(clippy::manual_is_multiple_of, clippy::needless_range_loop)]

pub mod closure;
pub mod error;
pub mod field;
pub mod forcing;
pub mod groebner;
mod newton;
pub mod poly;

pub use error::{Error, Result};
pub use field::{Coeff, Field, PrimeField, Rational};
pub use forcing::{
    AnisotropicWitness, CertificateJson, ForcingPresentation, LayoutRow, ParameterSystem,
    RingPresentation, SearchOutcome, TransportKind, UnitPartition, VanishingCertificate,
};
pub use groebner::{
    buchberger, colon_ideal, membership_with_certificate, normal_form, GroebnerBasis, Ideal,
    Membership, MembershipCertificate,
};
pub use poly::{Monomial, MonomialOrder, PolyRing, Polynomial};

pub use closure::{
    BrianconSkodaReport, ClosureStatus, ClosureVerdict, MonomialIdeal, MultiplierSpec,
    RegularCertificate, RegularOutcome, SeparatingFunctional,
};
