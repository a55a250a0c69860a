//! Exact algebra for Z₂ⁿ-graded Lie superalgebras and positive-definite
//! superfunctions on Harish-Chandra pairs.
//!
//! The crate is organized bottom-up:
//!
//! * [`grading`]: degrees in Z₂ⁿ, the bicharacter `B` and the phase `α`;
//! * [`liesuper`]: superalgebras by structure constants, the star on `g_ℂ`;
//! * [`enveloping`]: U(g_ℂ) in PBW normal form with its antiautomorphism;
//! * [`groupword`] and [`smonoid`]: G₀ as exponential words, the monoid `S`;
//! * [`superdomain`]: truncated graded formal power series;
//! * [`superfunc`]: local superfunctions, Gram certification, seminorms;
//! * [`gns`]: the reproducing-kernel space and its identity validators;
//! * [`extend`]: the global extension series and restriction checks;
//! * [`prerep`]: finite-dimensional graded Hilbert spaces and pre-representations.
//!
//! Numbers that can be exact are exact ([`scalar::Cx`]); everything else is
//! carried as [`scalar::Approx`] with an explicit error bound.

pub mod enveloping;
pub mod error;
pub mod extend;
pub mod fixtures;
pub mod gns;
pub mod grading;
pub mod groupword;
pub mod io;
pub mod liesuper;
pub mod linalg;
pub mod poly;
pub mod prerep;
pub mod scalar;
pub mod smonoid;
pub mod superdomain;
pub mod superfunc;

pub use enveloping::{EnvElement, Grading};
pub use error::{Error, Result};
pub use gns::KernelVector;
pub use grading::{Degree, Phase, Sign};
pub use groupword::GroupWord;
pub use liesuper::{GVector, LieSuperalgebra};
pub use linalg::CMatrix;
pub use prerep::{FiniteDimPreRep, GradedHermitianSpace};
pub use scalar::{Approx, Cx};
pub use smonoid::MonoidElement;
pub use superfunc::LocalSuperfunction;
