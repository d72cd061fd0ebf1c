//! Trial-function period approximations.
//!
//! A cosine trial `u(t)` is pushed through the improvement map
//!
//! ```text
//! u1(t) = A - ∫0^t ∫0^t' f(u(t'')) dt'' dt' = A - ∫0^t (t - s) f(u(s)) ds
//! ```
//!
//! and the frequency is fixed by requiring `u1(T/4) = 0`. That condition only
//! makes sense for odd forces, so every solver checks parity first.
//!
//! The Duffing and `u|u|` families also have closed forms: the first-order
//! period formulas and the second-order period polynomials in `s = T^2`.

use std::f64::consts::PI;
use std::fmt;

use crate::error::{Error, Result};
use crate::models::{is_restoring, parity_check, secant_frequency, Force};
use crate::numerics::{find_root_bracketed, integrate_adaptive, Bracket, EvenPolynomial};

/// Default tolerance on the quarter-period residual `u1(T/4) / A`.
pub const DEFAULT_RESIDUAL_TOL: f64 = 1e-10;

/// Strong-coupling limit `sqrt(rho) T(rho)` of the exact Duffing period, as
/// published.
pub const DUFFING_T_INF_EXACT: f64 = 7.416298709;

/// Strong-coupling limit of the exact period of `omega0^2 u + eps u|u|`, as
/// published. The energy integral gives 6.869261369; see
/// `oracle::exact_limit`.
pub const QUADRATIC_T_INF_EXACT: f64 = 6.868663935;

pub(crate) const PARITY_SAMPLES: usize = 64;
const MAX_DOUBLINGS: u32 = 60;
const OMEGA_TOL: f64 = 1e-15;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Order {
    First,
    Second,
}

/// `u(t) = A1 cos(wt) + A2 cos(3wt)` with `A1 + A2 = A`. First order has
/// `A2 = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrialFunction {
    order: Order,
    a1: f64,
    a2: f64,
    omega: f64,
}

impl TrialFunction {
    pub fn first(amplitude: f64, omega: f64) -> Self {
        TrialFunction {
            order: Order::First,
            a1: amplitude,
            a2: 0.0,
            omega,
        }
    }

    pub fn second(amplitude: f64, a2: f64, omega: f64) -> Self {
        TrialFunction {
            order: Order::Second,
            a1: amplitude - a2,
            a2,
            omega,
        }
    }

    pub fn order(&self) -> Order {
        self.order
    }

    pub fn amplitude(&self) -> f64 {
        self.a1 + self.a2
    }

    pub fn a1(&self) -> f64 {
        self.a1
    }

    pub fn a2(&self) -> f64 {
        self.a2
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    pub fn period(&self) -> f64 {
        2.0 * PI / self.omega
    }

    pub fn eval(&self, t: f64) -> f64 {
        let x = self.omega * t;
        match self.order {
            Order::First => self.a1 * x.cos(),
            Order::Second => self.a1 * x.cos() + self.a2 * (3.0 * x).cos(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    FirstOrder,
    SecondOrder,
    ClosedFormT1,
    PolynomialT2,
    SignumExact,
    EnergyIntegral,
    OdeCrossing,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::FirstOrder => "first",
            Method::SecondOrder => "second",
            Method::ClosedFormT1 => "closed-first",
            Method::PolynomialT2 => "polynomial-second",
            Method::SignumExact => "signum-exact",
            Method::EnergyIntegral => "energy",
            Method::OdeCrossing => "ode",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PeriodResult {
    pub period: f64,
    pub method: Method,
    /// Final residual of the defining condition: `u1(T/4) / A` for the
    /// trial solvers, `P(T^2) / max|c_k|` for the polynomials.
    pub residual: f64,
    /// Second-order coefficient actually used.
    pub a2: Option<f64>,
}

impl PeriodResult {
    fn exact(period: f64, method: Method) -> Self {
        PeriodResult {
            period,
            method,
            residual: 0.0,
            a2: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LimitFamily {
    Duffing,
    QuadraticAbs,
}

impl LimitFamily {
    pub fn name(self) -> &'static str {
        match self {
            LimitFamily::Duffing => "duffing",
            LimitFamily::QuadraticAbs => "quadratic-abs",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LimitMethod {
    FirstOrderClosed,
    SecondOrderPolynomial,
    Exact,
}

impl LimitMethod {
    pub fn name(self) -> &'static str {
        match self {
            LimitMethod::FirstOrderClosed => "first",
            LimitMethod::SecondOrderPolynomial => "second",
            LimitMethod::Exact => "exact",
        }
    }
}

/// `lim sqrt(rho) T(rho)` as `rho -> infinity`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AsymptoticResult {
    pub family: LimitFamily,
    pub method: LimitMethod,
    pub t_inf: f64,
}

fn check_amplitude(amplitude: f64) -> Result<()> {
    if amplitude > 0.0 && amplitude.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!(
            "amplitude must be positive, got {amplitude}"
        )))
    }
}

fn quad_tol(tol: f64) -> f64 {
    (tol * 1e-2).clamp(1e-14, 1e-11)
}

/// One application of the improvement map at time `t`:
/// `A - ∫0^t (t - s) f(u(s)) ds` where `u` is the trial.
pub fn improve_trajectory<F: Force + ?Sized>(
    force: &F,
    trial: &TrialFunction,
    t: f64,
    tol: f64,
) -> Result<f64> {
    if !(t >= 0.0) {
        return Err(Error::InvalidParameter(format!("t must be >= 0, got {t}")));
    }
    let integral = integrate_adaptive(|s| (t - s) * force.force(trial.eval(s)), 0.0, t, tol)?;
    Ok(trial.amplitude() - integral)
}

/// Scaled quarter-period residual `u1(T/4) / A` for the trial of frequency
/// `omega`.
fn quarter_period_residual<F: Force + ?Sized>(
    force: &F,
    trial: &TrialFunction,
    tol: f64,
) -> Result<f64> {
    let quarter = 0.5 * PI / trial.omega();
    Ok(improve_trajectory(force, trial, quarter, tol)? / trial.amplitude())
}

/// Preconditions of the quarter-period condition and the energy integral.
pub(crate) fn check_odd_restoring<F: Force + ?Sized>(force: &F, amplitude: f64) -> Result<()> {
    check_amplitude(amplitude)?;
    if !force.force(amplitude).is_finite() {
        return Err(Error::InvalidParameter(format!(
            "force is not finite at A = {amplitude:e}"
        )));
    }
    if !parity_check(force, amplitude, PARITY_SAMPLES) {
        return Err(Error::NotOdd);
    }
    if !is_restoring(force, amplitude, PARITY_SAMPLES) {
        return Err(Error::NonMonotonePotential);
    }
    Ok(())
}

/// Solves `residual(omega) = 0` given a bracket, surfacing the first
/// evaluation error.
fn solve_omega<R>(residual: &R, bracket: Bracket, tol: f64) -> Result<(f64, f64)>
where
    R: Fn(f64) -> Result<f64>,
{
    let failure = std::cell::RefCell::new(None);
    let h = |w: f64| match residual(w) {
        Ok(r) => r,
        Err(e) => {
            failure.borrow_mut().get_or_insert(e);
            f64::NAN
        }
    };
    let found = find_root_bracketed(h, bracket, OMEGA_TOL);
    if let Some(e) = failure.into_inner() {
        return Err(e);
    }
    let omega = found?;
    let r = residual(omega)?;
    if r.abs() > tol {
        return Err(Error::NoConvergence(
            "quarter-period residual above tolerance",
        ));
    }
    Ok((omega, r))
}

/// First-order period: trial `A cos(wt)`, `w` from `u1(T/4) = 0`.
///
/// The bracket starts at the secant frequency `sqrt(f(A)/A)` and doubles or
/// halves until the residual changes sign.
pub fn first_order_period<F: Force + ?Sized>(
    force: &F,
    amplitude: f64,
    tol: f64,
) -> Result<PeriodResult> {
    check_odd_restoring(force, amplitude)?;
    let qtol = quad_tol(tol);
    let residual =
        |w: f64| quarter_period_residual(force, &TrialFunction::first(amplitude, w), qtol);

    let seed = secant_frequency(force, amplitude);
    let r_seed = residual(seed)?;
    if r_seed == 0.0 {
        return Ok(PeriodResult {
            period: 2.0 * PI / seed,
            method: Method::FirstOrder,
            residual: 0.0,
            a2: None,
        });
    }
    // u1(T/4) > 0 means the quarter period is too short: lower the frequency.
    let factor = if r_seed > 0.0 { 0.5 } else { 2.0 };
    let mut near = (seed, r_seed);
    let mut bracket = None;
    for _ in 0..MAX_DOUBLINGS {
        let w = near.0 * factor;
        let r = residual(w)?;
        if r * r_seed <= 0.0 {
            let (lo, hi) = if w < near.0 {
                ((w, r), near)
            } else {
                (near, (w, r))
            };
            bracket = Some(Bracket {
                lo: lo.0,
                hi: hi.0,
                f_lo: lo.1,
                f_hi: hi.1,
            });
            break;
        }
        near = (w, r);
    }
    let bracket = bracket.ok_or(Error::NoBracket)?;
    let (omega, r) = solve_omega(&residual, bracket, tol)?;
    Ok(PeriodResult {
        period: 2.0 * PI / omega,
        method: Method::FirstOrder,
        residual: r,
        a2: None,
    })
}

/// `A2` from imposing `u''(0) + f(A) = 0` on the second-order trial, where
/// `u''(0) = -w^2 (A1 + 9 A2)` and `A1 = A - A2`.
pub fn second_order_a2<F: Force + ?Sized>(force: &F, amplitude: f64, omega: f64) -> f64 {
    (force.force(amplitude) / (omega * omega) - amplitude) / 8.0
}

/// Second-order period: trial `A1 cos(wt) + A2 cos(3wt)` with `A2(w)` from
/// [`second_order_a2`], `w` from `u1(T/4) = 0`.
///
/// The search starts at the first-order frequency and widens in both
/// directions with growing steps, so the bracket closes on the nearest
/// root. That root is the branch continuous with the linear period; the
/// second one sits near a third of the frequency.
pub fn second_order_period<F: Force + ?Sized>(
    force: &F,
    amplitude: f64,
    tol: f64,
) -> Result<PeriodResult> {
    let first = first_order_period(force, amplitude, tol)?;
    let qtol = quad_tol(tol);
    let trial = |w: f64| TrialFunction::second(amplitude, second_order_a2(force, amplitude, w), w);
    let residual = |w: f64| quarter_period_residual(force, &trial(w), qtol);

    let seed = 2.0 * PI / first.period;
    let r_seed = residual(seed)?;
    let finish = |omega: f64, r: f64| PeriodResult {
        period: 2.0 * PI / omega,
        method: Method::SecondOrder,
        residual: r,
        a2: Some(trial(omega).a2()),
    };
    if r_seed == 0.0 {
        return Ok(finish(seed, 0.0));
    }

    let mut step = 1e-2;
    let mut up = (seed, r_seed);
    let mut down = (seed, r_seed);
    let max_span = 2f64.powi(MAX_DOUBLINGS as i32);
    let mut bracket = None;
    while bracket.is_none() {
        if up.0 / seed > max_span {
            return Err(Error::NoBracket);
        }
        let hi = (up.0 * (1.0 + step), residual(up.0 * (1.0 + step))?);
        if hi.1 * r_seed <= 0.0 {
            bracket = Some((up, hi));
            break;
        }
        let lo = (down.0 / (1.0 + step), residual(down.0 / (1.0 + step))?);
        if lo.1 * r_seed <= 0.0 {
            bracket = Some((lo, down));
            break;
        }
        up = hi;
        down = lo;
        step *= 1.5;
    }
    let (lo, hi) = bracket.expect("loop exits with a bracket");
    let bracket = Bracket {
        lo: lo.0,
        hi: hi.0,
        f_lo: lo.1,
        f_hi: hi.1,
    };
    let (omega, r) = solve_omega(&residual, bracket, tol)?;
    Ok(finish(omega, r))
}

/// First-order Duffing period `2 pi / sqrt(1 + 7 rho / 9)`.
pub fn duffing_t1_closed(rho: f64) -> f64 {
    2.0 * PI / (1.0 + 7.0 * rho / 9.0).sqrt()
}

/// First-order period of `omega0^2 u + eps u|u|`,
/// `2 pi / sqrt(omega0^2 + (4 + pi^2) rho / 16)`.
pub fn quadratic_t1_closed(omega0: f64, rho: f64) -> f64 {
    2.0 * PI / (omega0 * omega0 + (4.0 + PI * PI) * rho / 16.0).sqrt()
}

/// Second-order Duffing period polynomial in `s = T^2`.
pub fn duffing_t2_polynomial(rho: f64) -> EvenPolynomial {
    let p2 = PI * PI;
    let r1 = rho + 1.0;
    EvenPolynomial::new(vec![
        12_700_800.0 * p2.powi(4),
        -64.0 * p2.powi(3) * (48_851.0 * rho + 55_125.0),
        120.0 * p2 * p2 * r1 * (1607.0 * rho + 735.0),
        -7656.0 * p2 * rho * r1 * r1,
        125.0 * rho * r1 * r1 * r1,
    ])
    .expect("constant term is nonzero")
}

/// Large-`rho` limit of [`duffing_t2_polynomial`] in `s = T_inf^2`.
pub fn duffing_t2_limit_polynomial() -> EvenPolynomial {
    let p2 = PI * PI;
    EvenPolynomial::new(vec![
        12_700_800.0 * p2.powi(4),
        -3_126_464.0 * p2.powi(3),
        192_840.0 * p2 * p2,
        -7656.0 * p2,
        125.0,
    ])
    .expect("constant term is nonzero")
}

/// Second-order period polynomial of `omega0^2 u + eps u|u|` in `s = T^2`.
pub fn quadratic_t2_polynomial(omega0: f64, rho: f64) -> EvenPolynomial {
    let p2 = PI * PI;
    let w2 = omega0 * omega0;
    let w4 = w2 * w2;
    EvenPolynomial::new(vec![
        -294_912.0 * p2.powi(3),
        16.0 * p2 * p2 * (5120.0 * w2 + rho * (369.0 * p2 + 1136.0)),
        -8.0 * p2
            * (256.0 * w4 + 15.0 * w2 * rho * (3.0 * p2 + 16.0) + rho * rho * (45.0 * p2 - 16.0)),
        rho * (w4 + 2.0 * w2 * rho + rho * rho) * (9.0 * p2 - 16.0),
    ])
    .expect("constant term is nonzero")
}

/// Large-`rho` limit of [`quadratic_t2_polynomial`] in `s = T_inf^2`.
pub fn quadratic_t2_limit_polynomial() -> EvenPolynomial {
    let p2 = PI * PI;
    EvenPolynomial::new(vec![
        -294_912.0 * p2.powi(3),
        16.0 * p2 * p2 * (369.0 * p2 + 1136.0),
        8.0 * p2 * (16.0 - 45.0 * p2),
        9.0 * p2 - 16.0,
    ])
    .expect("constant term is nonzero")
}

fn polynomial_period(p: &EvenPolynomial) -> Result<PeriodResult> {
    let t = p.smallest_positive_t_root()?;
    Ok(PeriodResult {
        period: t,
        method: Method::PolynomialT2,
        residual: p.eval_t(t) / p.max_abs_coeff(),
        a2: None,
    })
}

/// Smallest positive root of [`duffing_t2_polynomial`].
pub fn duffing_t2_period(rho: f64) -> Result<PeriodResult> {
    polynomial_period(&duffing_t2_polynomial(rho))
}

/// Smallest positive root of [`quadratic_t2_polynomial`].
pub fn quadratic_t2_period(omega0: f64, rho: f64) -> Result<PeriodResult> {
    polynomial_period(&quadratic_t2_polynomial(omega0, rho))
}

pub fn duffing_t1_limit() -> AsymptoticResult {
    AsymptoticResult {
        family: LimitFamily::Duffing,
        method: LimitMethod::FirstOrderClosed,
        t_inf: 6.0 * PI / 7f64.sqrt(),
    }
}

pub fn quadratic_t1_limit() -> AsymptoticResult {
    AsymptoticResult {
        family: LimitFamily::QuadraticAbs,
        method: LimitMethod::FirstOrderClosed,
        t_inf: 8.0 * PI / (4.0 + PI * PI).sqrt(),
    }
}

pub fn duffing_t2_limit() -> AsymptoticResult {
    AsymptoticResult {
        family: LimitFamily::Duffing,
        method: LimitMethod::SecondOrderPolynomial,
        t_inf: duffing_t2_limit_polynomial()
            .smallest_positive_t_root()
            .expect("limit polynomial has a positive root"),
    }
}

pub fn quadratic_t2_limit() -> AsymptoticResult {
    AsymptoticResult {
        family: LimitFamily::QuadraticAbs,
        method: LimitMethod::SecondOrderPolynomial,
        t_inf: quadratic_t2_limit_polynomial()
            .smallest_positive_t_root()
            .expect("limit polynomial has a positive root"),
    }
}

/// `sqrt(rho) T(rho)` of a closed form evaluated at a single large `rho`.
/// The numeric route to the limit constants.
pub fn scaled_closed_form(family: LimitFamily, method: LimitMethod, rho: f64) -> Result<f64> {
    let t = match (family, method) {
        (LimitFamily::Duffing, LimitMethod::FirstOrderClosed) => duffing_t1_closed(rho),
        (LimitFamily::QuadraticAbs, LimitMethod::FirstOrderClosed) => quadratic_t1_closed(1.0, rho),
        (LimitFamily::Duffing, LimitMethod::SecondOrderPolynomial) => {
            duffing_t2_period(rho)?.period
        }
        (LimitFamily::QuadraticAbs, LimitMethod::SecondOrderPolynomial) => {
            quadratic_t2_period(1.0, rho)?.period
        }
        (_, LimitMethod::Exact) => {
            return Err(Error::InvalidParameter(
                "the exact limit has no closed form; use the oracle".into(),
            ))
        }
    };
    Ok(rho.sqrt() * t)
}

/// Exact period of `f(u) = eps sgn(u)`: `4 sqrt(2A / eps)`.
pub fn signum_exact_period(epsilon: f64, amplitude: f64) -> PeriodResult {
    PeriodResult::exact(
        4.0 * (2.0 * amplitude / epsilon).sqrt(),
        Method::SignumExact,
    )
}

/// The six strong-coupling constants: first order, second order and exact,
/// for the Duffing and `u|u|` families. Exact entries are the published
/// values.
pub fn asymptotic_table() -> Vec<AsymptoticResult> {
    vec![
        duffing_t1_limit(),
        duffing_t2_limit(),
        AsymptoticResult {
            family: LimitFamily::Duffing,
            method: LimitMethod::Exact,
            t_inf: DUFFING_T_INF_EXACT,
        },
        quadratic_t1_limit(),
        quadratic_t2_limit(),
        AsymptoticResult {
            family: LimitFamily::QuadraticAbs,
            method: LimitMethod::Exact,
            t_inf: QUADRATIC_T_INF_EXACT,
        },
    ]
}
