//! Numerical kernels shared by the approximation and reference modules.

mod polynomial;
mod quadrature;
mod root;

pub use polynomial::{real_roots, EvenPolynomial, DEFLATION_THRESHOLD};
pub use quadrature::{integrate_adaptive, integrate_adaptive_with, QuadratureConfig};
pub use root::{find_root_bracketed, Bracket};
