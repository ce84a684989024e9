//! Hardy spaces `H^p` of Dirichlet series, computed through the Bohr lift.
//!
//! The crate is organised bottom-up: [`arithmetic`] supplies the sieve and
//! multiplicative weights, [`series`] the polynomial types and the lift,
//! [`norms`] the quasi-norm engines. The remaining modules run experiments
//! on top of these: coefficient inequalities ([`hardy_littlewood`]),
//! extremal coefficient constants ([`extremals`]), partial sum operators
//! ([`operators`]) and the `φ_β` / `ψ_β` functionals ([`functionals`]).
//! [`verify`] bundles the checks into seeded suites with JSON reports, and
//! [`record`] holds the flat rows behind the CSV tables.

pub mod arithmetic;
pub mod error;
pub mod extremals;
pub mod functionals;
pub mod grid;
pub mod hardy_littlewood;
pub mod norms;
pub mod numeric;
pub mod operators;
pub mod random;
pub mod record;
pub mod rng;
pub mod series;
pub mod verify;

pub use arithmetic::{FactorizationTable, WeightKind};
pub use error::{Error, Result};
pub use series::{DirichletPolynomial, MultiIndex, MultivariatePolynomial, UnivariatePolynomial};
