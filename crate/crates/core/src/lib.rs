//! Exact symbolic verification and numeric exploration of the unramified
//! local zeta integral for `Sp(2n) x GL(1)`.
//!
//! The crate is layered bottom-up:
//!
//! * [`symalg`]: exact Laurent polynomials over big rationals and truncated
//!   power series with Laurent-polynomial coefficients.
//! * [`rootdata`]: root data of types A, B, C with fully enumerated Weyl groups
//!   in doubled epsilon-coordinates.
//! * [`characters`]: Weyl characters by the alternant ratio, a Freudenthal
//!   oracle, complete homogeneous polynomials and a disk cache.
//! * [`whittaker`]: spherical Whittaker values on torus cocharacters.
//! * [`zeta`]: local zeta series, local L-factor polynomials, identity checks.
//! * [`euler`]: numeric local zetas and finite Euler products.
//! * [`cli`]: the command-line front end.

pub mod characters;
pub mod cli;
pub mod error;
pub mod euler;
pub mod rootdata;
pub mod symalg;
pub mod whittaker;
pub mod zeta;

pub use error::{Error, Result};
