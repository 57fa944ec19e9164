//! Sharp and historical constants for the Bohnenblust–Hille and
//! Littlewood-type multilinear inequalities, together with machinery to
//! verify the inequalities empirically on small multilinear forms.
//!
//! The crate is organized around five building blocks:
//!
//! * [`specfun`] — the real Gamma function, its logarithm and bracketed
//!   root finding, accurate enough (≤ 1e-12 relative) to reproduce every
//!   constant below to the precision the literature prints.
//! * [`khinchine`] — best lower constants in the Khinchine inequality for
//!   Rademacher signs and Steinhaus phases, including the Haagerup and
//!   Sawa critical exponents.
//! * [`constants`] — the Bohnenblust–Hille constant recursion for both
//!   variable families, the classical closed-form upper bounds, optimal
//!   Littlewood-variant constants for real scalars, interpolation and
//!   Blei-type bounds for complex scalars, and the growth asymptotics.
//! * [`forms`] — dense multilinear forms over real or complex scalars,
//!   exact sup norms over the cube for real forms, certified norm brackets
//!   over the polydisc for complex forms, coefficient norms, and ratio
//!   checks including the Steinhaus chaos inequality.
//! * [`search`] — extremal-ratio hill climbing that recovers the known
//!   real witnesses and probes the complex lower bounds.
//!
//! [`verify`] bundles the randomized invariant suites that the `bhlitt`
//! CLI exposes as `bhlitt verify --suite <name>`.

pub mod constants;
pub mod error;
pub mod forms;
pub mod khinchine;
pub mod search;
pub mod specfun;
pub mod util;
pub mod verify;

pub use error::{Error, Result};
pub use forms::{MultilinearForm, NormResult, RatioResult, ScalarField};
pub use khinchine::KhinchineFamily;
