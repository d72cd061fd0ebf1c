//! Periods of conservative nonlinear oscillators `u'' + f(u) = 0` with
//! `u(0) = A`, `u'(0) = 0`.
//!
//! The crate computes approximate periods from cosine trial functions fed
//! through the double-integration improvement map, closed-form period
//! formulas and period polynomials, and checks all of them against two
//! independent references: the energy-integral quadrature and an adaptive
//! Runge-Kutta integration of the equation of motion.
//!
//! ```
//! use oscper::{approx, models::ForceModel};
//!
//! let duffing = ForceModel::duffing(1.0).unwrap();
//! let first = approx::first_order_period(&duffing, 1.0, 1e-10).unwrap();
//! assert!((first.period - approx::duffing_t1_closed(1.0)).abs() < 1e-8);
//! ```

// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod approx;
pub mod error;
pub mod models;
pub mod numerics;
pub mod oracle;
pub mod validation;

pub use error::{Error, Result};
