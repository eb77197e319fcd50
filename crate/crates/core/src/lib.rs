//! Two-parameter analogues `K_{ν,μ}(p,q)` of Lusztig's q-analogue of weight
//! multiplicity, attached to a Levi subalgebra of a simple Lie algebra.
//!
//! Roots of the Levi subalgebra are weighted by `q` and the remaining
//! positive roots by `p`. Everything is exact: coefficients are big
//! integers, pairings are rationals, and identities are checked as
//! polynomial equalities.
//!
//! ```
//! use weylpq::{BiPoly, Context, Weight};
//!
//! let ctx = Context::parse("A2", "1")?;
//! let k = ctx.kpq(&Weight::parse("1,1")?, &Weight::parse("0,0")?)?;
//! assert_eq!(k.to_string(), "p + p*q");
//! assert_eq!(k.collapse_p_into_q().to_string(), "q + q^2");
//! assert_eq!(k.shift_vars().specialize(Some(1), Some(1)), BiPoly::constant(6));
//! # Ok::<(), weylpq::Error>(())
//! ```
//!
//! # Modules
//!
//! - [`poly`]: sparse polynomials in `p`, `q` over ℤ.
//! - [`rootsys`]: Cartan data, positive roots, Weyl groups, Levi splittings.
//! - [`kostant`]: memoized two-parameter partition functions.
//! - [`lusztig`]: `K_{ν,μ}(p,q)`, branching and parabolic analogues, and the
//!   decomposition through Levi highest weights.
//! - [`stable`]: translation by `ρ◇` (or any dominant `δ`) and the stable
//!   factorization.
//! - [`charge`]: colored-root statistics, `K(p+1,q+1)` as a weighted sum over
//!   weights, and Freudenthal multiplicities.
//! - [`hall`]: Weyl characters by series division and the Hall–Littlewood
//!   transition matrix.
//! - [`verify`]: exhaustive identity sweeps.
//! - [`cli`]: the `weylpq` command.
//!
//! # Examples
//!
//! The `examples/` directory has one program per capability:
//!
//! - `root_systems`: Cartan matrices and parabolic data.
//! - `two_parameter`: `K(p,q)` and its specializations for any input.
//! - `decomposition`: the branching × parabolic expansion term by term.
//! - `stabilization`: stable values and the `p`-power factorization.
//! - `colored_roots`: `N`, `R` and the weight-level sum for `K(p+1,q+1)`.
//! - `hall_littlewood`: the transition matrix as CSV and its inverse.
//! - `verify_suite`: a configurable run of the sweeps.

#![allow(clippy::needless_range_loop)]

pub mod charge;
pub mod cli;
pub mod error;
pub mod hall;
pub mod kostant;
pub mod lusztig;
pub mod poly;
pub mod rootsys;
pub mod stable;
pub mod verify;

pub use error::{Error, Result};
pub use lusztig::Context;
pub use poly::BiPoly;
pub use rootsys::{RootSystem, Weight};
