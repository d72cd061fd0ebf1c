//! Restoring-force families and their potentials.

use std::fmt;

use crate::error::{Error, Result};

/// Absolute parity tolerance, scaled by `max(1, |f(u)|)`.
pub const PARITY_TOL: f64 = 1e-12;

/// A conservative restoring force `f(u)` with potential `V`, `dV/du = f`,
/// normalized so that `V(0) = 0`.
pub trait Force {
    fn force(&self, u: f64) -> f64;

    fn potential(&self, u: f64) -> f64;

    /// Smooth continuation of the force from the side `side` (±1) of
    /// `u = 0`, evaluated at `u`. Forces that are smooth through the origin
    /// keep the default.
    fn force_on_branch(&self, u: f64, side: f64) -> f64 {
        let _ = side;
        self.force(u)
    }

    /// Secant slope of the potential, `(V(a) - V(u)) / (a - u)`, for
    /// `0 <= u <= a`. Equals `f(a)` at `u = a`.
    ///
    /// Implementors with a closed form should override this: the energy
    /// integral divides by it near the turning point, where the naive
    /// difference cancels.
    fn potential_slope(&self, a: f64, u: f64) -> f64 {
        if a == u {
            self.force(a)
        } else {
            (self.potential(a) - self.potential(u)) / (a - u)
        }
    }
}

impl<F: Force + ?Sized> Force for &F {
    fn force(&self, u: f64) -> f64 {
        (**self).force(u)
    }

    fn potential(&self, u: f64) -> f64 {
        (**self).potential(u)
    }

    fn force_on_branch(&self, u: f64, side: f64) -> f64 {
        (**self).force_on_branch(u, side)
    }

    fn potential_slope(&self, a: f64, u: f64) -> f64 {
        (**self).potential_slope(a, u)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    /// `f(u) = u`
    Harmonic,
    /// `f(u) = u + eps u^3`
    Duffing,
    /// `f(u) = eps sgn(u)`
    Signum,
    /// `f(u) = omega0^2 u + eps u|u|`
    QuadraticAbs,
    /// `f(u) = eps u^3`, the strong-coupling limit of [`Family::Duffing`].
    PureCubic,
    /// `f(u) = eps u|u|`, the strong-coupling limit of [`Family::QuadraticAbs`].
    PureQuadraticAbs,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Harmonic => "harmonic",
            Family::Duffing => "duffing",
            Family::Signum => "signum",
            Family::QuadraticAbs => "quadratic-abs",
            Family::PureCubic => "pure-cubic",
            Family::PureQuadraticAbs => "pure-quadratic-abs",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One member of a force family. Construct through [`ForceModel::new`] or
/// the per-family helpers, which enforce the restoring-force invariants.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ForceModel {
    family: Family,
    epsilon: f64,
    omega0: f64,
}

/// Dimensionless combination of nonlinearity and amplitude on which the
/// period depends.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct ReducedParameter(pub f64);

impl ReducedParameter {
    pub fn value(self) -> f64 {
        self.0
    }
}

impl ForceModel {
    pub fn new(family: Family, epsilon: f64, omega0: f64) -> Result<Self> {
        if !epsilon.is_finite() || epsilon < 0.0 {
            return Err(Error::InvalidParameter(format!(
                "epsilon must be finite and non-negative, got {epsilon}"
            )));
        }
        let needs_positive_eps = matches!(
            family,
            Family::Signum | Family::PureCubic | Family::PureQuadraticAbs
        );
        if needs_positive_eps && epsilon == 0.0 {
            return Err(Error::InvalidParameter(format!(
                "the {family} family needs epsilon > 0"
            )));
        }
        let (epsilon, omega0) = match family {
            Family::Harmonic => (0.0, 1.0),
            Family::Duffing => (epsilon, 1.0),
            Family::QuadraticAbs => {
                if !omega0.is_finite() || omega0 <= 0.0 {
                    return Err(Error::InvalidParameter(format!(
                        "omega0 must be finite and positive, got {omega0}"
                    )));
                }
                (epsilon, omega0)
            }
            Family::Signum | Family::PureCubic | Family::PureQuadraticAbs => (epsilon, 0.0),
        };
        Ok(ForceModel {
            family,
            epsilon,
            omega0,
        })
    }

    pub fn harmonic() -> Self {
        ForceModel {
            family: Family::Harmonic,
            epsilon: 0.0,
            omega0: 1.0,
        }
    }

    pub fn duffing(epsilon: f64) -> Result<Self> {
        Self::new(Family::Duffing, epsilon, 1.0)
    }

    pub fn signum(epsilon: f64) -> Result<Self> {
        Self::new(Family::Signum, epsilon, 0.0)
    }

    pub fn quadratic_abs(omega0: f64, epsilon: f64) -> Result<Self> {
        Self::new(Family::QuadraticAbs, epsilon, omega0)
    }

    pub fn pure_cubic(epsilon: f64) -> Result<Self> {
        Self::new(Family::PureCubic, epsilon, 0.0)
    }

    pub fn pure_quadratic_abs(epsilon: f64) -> Result<Self> {
        Self::new(Family::PureQuadraticAbs, epsilon, 0.0)
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    /// Linear frequency. 1 for Harmonic and Duffing, 0 for the families
    /// without a linear term.
    pub fn omega0(&self) -> f64 {
        self.omega0
    }

    /// `rho = eps A^2` for the cubic families, `rho = eps A` for the
    /// quadratic ones, 0 for Harmonic. Signum has no such reduction; its
    /// period scales as `sqrt(A / eps)`.
    pub fn reduced_parameter(&self, amplitude: f64) -> Result<ReducedParameter> {
        if !(amplitude > 0.0 && amplitude.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "amplitude must be positive, got {amplitude}"
            )));
        }
        let rho = match self.family {
            Family::Harmonic => 0.0,
            Family::Duffing | Family::PureCubic => self.epsilon * amplitude * amplitude,
            Family::QuadraticAbs | Family::PureQuadraticAbs => self.epsilon * amplitude,
            Family::Signum => return Err(Error::NoReducedParameter(self.family.name())),
        };
        Ok(ReducedParameter(rho))
    }

    /// A representative `(model, amplitude)` pair for a reduced parameter:
    /// `eps = 1` and `A = sqrt(rho)` (cubic) or `A = rho` (quadratic). At
    /// `rho = 0` the nonlinearity is switched off and `A = 1`.
    pub fn from_reduced_parameter(family: Family, omega0: f64, rho: f64) -> Result<(Self, f64)> {
        if !(rho >= 0.0 && rho.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "rho must be finite and non-negative, got {rho}"
            )));
        }
        let (epsilon, amplitude) = if rho == 0.0 {
            (0.0, 1.0)
        } else {
            match family {
                Family::Duffing | Family::PureCubic => (1.0, rho.sqrt()),
                Family::QuadraticAbs | Family::PureQuadraticAbs => (1.0, rho),
                Family::Harmonic => {
                    return Err(Error::InvalidParameter(
                        "the harmonic family only has rho = 0".into(),
                    ))
                }
                Family::Signum => return Err(Error::NoReducedParameter(family.name())),
            }
        };
        Ok((Self::new(family, epsilon, omega0)?, amplitude))
    }

    pub fn parity_check(&self, amplitude: f64, n: usize) -> bool {
        parity_check(self, amplitude, n)
    }
}

impl Force for ForceModel {
    fn force(&self, u: f64) -> f64 {
        let eps = self.epsilon;
        match self.family {
            Family::Harmonic => u,
            Family::Duffing => u + eps * u * u * u,
            Family::Signum => {
                if u > 0.0 {
                    eps
                } else if u < 0.0 {
                    -eps
                } else {
                    0.0
                }
            }
            Family::QuadraticAbs => self.omega0 * self.omega0 * u + eps * u * u.abs(),
            Family::PureCubic => eps * u * u * u,
            Family::PureQuadraticAbs => eps * u * u.abs(),
        }
    }

    fn force_on_branch(&self, u: f64, side: f64) -> f64 {
        let eps = self.epsilon;
        let side = if side < 0.0 { -1.0 } else { 1.0 };
        match self.family {
            Family::Signum => side * eps,
            Family::QuadraticAbs => self.omega0 * self.omega0 * u + side * eps * u * u,
            Family::PureQuadraticAbs => side * eps * u * u,
            _ => self.force(u),
        }
    }

    fn potential(&self, u: f64) -> f64 {
        let eps = self.epsilon;
        let u2 = u * u;
        match self.family {
            Family::Harmonic => 0.5 * u2,
            Family::Duffing => 0.5 * u2 + 0.25 * eps * u2 * u2,
            Family::Signum => eps * u.abs(),
            Family::QuadraticAbs => 0.5 * self.omega0 * self.omega0 * u2 + eps * u2 * u.abs() / 3.0,
            Family::PureCubic => 0.25 * eps * u2 * u2,
            Family::PureQuadraticAbs => eps * u2 * u.abs() / 3.0,
        }
    }

    fn potential_slope(&self, a: f64, u: f64) -> f64 {
        if u < 0.0 || u > a {
            return if a == u {
                self.force(a)
            } else {
                (self.potential(a) - self.potential(u)) / (a - u)
            };
        }
        let eps = self.epsilon;
        let w2 = self.omega0 * self.omega0;
        match self.family {
            Family::Harmonic => 0.5 * (a + u),
            Family::Duffing => 0.5 * (a + u) * (1.0 + 0.5 * eps * (a * a + u * u)),
            Family::Signum => eps,
            Family::QuadraticAbs => 0.5 * w2 * (a + u) + eps * (a * a + a * u + u * u) / 3.0,
            Family::PureCubic => 0.25 * eps * (a + u) * (a * a + u * u),
            Family::PureQuadraticAbs => eps * (a * a + a * u + u * u) / 3.0,
        }
    }
}

/// Samples `n` points `u` in `(0, A]` and checks `|f(u) + f(-u)| <= tol *
/// max(1, |f(u)|)` at each of them.
pub fn parity_check<F: Force + ?Sized>(force: &F, amplitude: f64, n: usize) -> bool {
    let n = n.max(2);
    (1..=n).all(|i| {
        let u = amplitude * i as f64 / n as f64;
        let fu = force.force(u);
        let fm = force.force(-u);
        (fu + fm).abs() <= PARITY_TOL * fu.abs().max(1.0)
    })
}

/// True when `f(u) > 0` at `n` samples of `(0, A]`, i.e. `V` is increasing
/// there and `±A` are the only turning points.
pub fn is_restoring<F: Force + ?Sized>(force: &F, amplitude: f64, n: usize) -> bool {
    let n = n.max(2);
    (1..=n).all(|i| force.force(amplitude * i as f64 / n as f64) > 0.0)
}

/// Secant frequency `sqrt(f(A) / A)`: the frequency of the harmonic
/// oscillator with the same stiffness at the turning point.
pub fn secant_frequency<F: Force + ?Sized>(force: &F, amplitude: f64) -> f64 {
    (force.force(amplitude) / amplitude).sqrt()
}
