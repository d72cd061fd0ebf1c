//! Exact references for the period: the energy integral and a direct
//! integration of the equation of motion.
//!
//! Energy conservation `v^2/2 + V(u) = V(A)` gives, for odd forces,
//!
//! ```text
//! T = 4 ∫0^A du / sqrt(2 (V(A) - V(u)))
//! ```
//!
//! With `u = A sin(theta)` and `V(A) - V(u) = (A - u) S(A, u)`, where `S` is
//! the secant slope of the potential, the integrand becomes
//! `sqrt(A (1 + sin theta) / (2 S))`, which is bounded and smooth on
//! `[0, pi/2]`.

use std::cell::Cell;
use std::f64::consts::{FRAC_PI_2, PI};

use crate::approx::{check_odd_restoring, LimitFamily};
use crate::error::{Error, Result};
use crate::models::{secant_frequency, Force, ForceModel};
use crate::numerics::{find_root_bracketed, integrate_adaptive, Bracket};

pub const DEFAULT_QUAD_TOL: f64 = 1e-12;
pub const DEFAULT_ODE_TOL: f64 = 1e-10;
pub const DEFAULT_CROSSING_TOL: f64 = 1e-10;

/// Default `rho` sequence for [`scaled_limit`].
pub const DEFAULT_LIMIT_RHOS: [f64; 3] = [1e4, 1e6, 1e8];

const MAX_STEPS: usize = 5_000_000;
const HORIZON_PERIODS: f64 = 10.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseSample {
    pub t: f64,
    pub u: f64,
    pub v: f64,
    /// `v^2/2 + V(u)`
    pub energy: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergySample {
    pub t: f64,
    pub energy: f64,
}

/// Sampled solution of `u'' + f(u) = 0`, `u(0) = A`, `u'(0) = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    amplitude: f64,
    samples: Vec<PhaseSample>,
}

impl Trajectory {
    pub fn amplitude(&self) -> f64 {
        self.amplitude
    }

    pub fn samples(&self) -> &[PhaseSample] {
        &self.samples
    }

    pub fn last(&self) -> &PhaseSample {
        self.samples
            .last()
            .expect("trajectory holds the initial sample")
    }

    pub fn energies(&self) -> impl Iterator<Item = EnergySample> + '_ {
        self.samples.iter().map(|s| EnergySample {
            t: s.t,
            energy: s.energy,
        })
    }
}

/// Integrand of the energy integral after `u = A sin(theta)`.
pub fn energy_integrand<F: Force + ?Sized>(force: &F, amplitude: f64, theta: f64) -> f64 {
    let sin = theta.sin();
    let slope = force.potential_slope(amplitude, amplitude * sin);
    (amplitude * (1.0 + sin) / (2.0 * slope)).sqrt()
}

/// Exact period from the energy integral.
pub fn exact_period_energy<F: Force + ?Sized>(force: &F, amplitude: f64, tol: f64) -> Result<f64> {
    check_odd_restoring(force, amplitude)?;
    let monotone = Cell::new(true);
    let integral = integrate_adaptive(
        |theta| {
            let g = energy_integrand(force, amplitude, theta);
            if !g.is_finite() {
                monotone.set(false);
                return 0.0;
            }
            g
        },
        0.0,
        FRAC_PI_2,
        tol,
    )?;
    if !monotone.get() {
        return Err(Error::NonMonotonePotential);
    }
    Ok(4.0 * integral)
}

/// Exact strong-coupling constant `lim sqrt(rho) T(rho)`, from the energy
/// integral of the pure power-law force with `eps = A = 1` (`rho = 1`).
pub fn exact_limit(family: LimitFamily, tol: f64) -> Result<f64> {
    let model = match family {
        LimitFamily::Duffing => ForceModel::pure_cubic(1.0)?,
        LimitFamily::QuadraticAbs => ForceModel::pure_quadratic_abs(1.0)?,
    };
    exact_period_energy(&model, 1.0, tol)
}

type State = [f64; 2];

// Forces that are non-smooth at the origin are integrated on the smooth
// branch of the current half-swing; the stepper switches branches at the
// located zero crossing.
fn rhs<F: Force + ?Sized>(force: &F, y: &State, side: f64) -> State {
    [y[1], -force.force_on_branch(y[0], side)]
}

// Dormand-Prince 5(4) tableau. The system is autonomous, so the stage
// times are not needed.
const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const B1: f64 = 35.0 / 384.0;
const B3: f64 = 500.0 / 1113.0;
const B4: f64 = 125.0 / 192.0;
const B5: f64 = -2187.0 / 6784.0;
const B6: f64 = 11.0 / 84.0;
// Fifth- minus fourth-order weights.
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;

struct StepOutcome {
    y: State,
    err: State,
    dydt: State,
}

fn dp_step<F: Force + ?Sized>(force: &F, y: &State, k1: &State, h: f64, side: f64) -> StepOutcome {
    let stage = |coef: &[(f64, &State)]| -> State {
        let mut out = *y;
        for (c, k) in coef {
            out[0] += h * c * k[0];
            out[1] += h * c * k[1];
        }
        out
    };
    let k2 = rhs(force, &stage(&[(A21, k1)]), side);
    let k3 = rhs(force, &stage(&[(A31, k1), (A32, &k2)]), side);
    let k4 = rhs(force, &stage(&[(A41, k1), (A42, &k2), (A43, &k3)]), side);
    let k5 = rhs(
        force,
        &stage(&[(A51, k1), (A52, &k2), (A53, &k3), (A54, &k4)]),
        side,
    );
    let k6 = rhs(
        force,
        &stage(&[(A61, k1), (A62, &k2), (A63, &k3), (A64, &k4), (A65, &k5)]),
        side,
    );
    let y5 = stage(&[(B1, k1), (B3, &k3), (B4, &k4), (B5, &k5), (B6, &k6)]);
    let k7 = rhs(force, &y5, side);
    let mut err = [0.0; 2];
    for i in 0..2 {
        err[i] = h * (E1 * k1[i] + E3 * k3[i] + E4 * k4[i] + E5 * k5[i] + E6 * k6[i] + E7 * k7[i]);
    }
    StepOutcome {
        y: y5,
        err,
        dydt: k7,
    }
}

/// Adaptive Dormand-Prince integrator state.
struct Stepper<'a, F: Force + ?Sized> {
    force: &'a F,
    t: f64,
    y: State,
    dydt: State,
    h: f64,
    /// Cap keeping several steps per swing, so that a step never spans
    /// two zero crossings even when the error estimate vanishes.
    h_max: f64,
    tol: f64,
    steps: usize,
    /// Sign of `u` on the current half-swing.
    side: f64,
}

impl<'a, F: Force + ?Sized> Stepper<'a, F> {
    fn new(force: &'a F, amplitude: f64, tol: f64) -> Self {
        let y = [amplitude, 0.0];
        let omega = secant_frequency(force, amplitude);
        Stepper {
            force,
            t: 0.0,
            y,
            dydt: rhs(force, &y, 1.0),
            h: 0.01 * 2.0 * PI / omega,
            h_max: 2.0 * PI / omega / 8.0,
            tol,
            steps: 0,
            side: 1.0,
        }
    }

    fn error_norm(&self, next: &State, err: &State) -> f64 {
        (0..2)
            .map(|i| {
                let scale = self.tol * 1f64.max(self.y[i].abs()).max(next[i].abs());
                err[i].abs() / scale
            })
            .fold(0.0, f64::max)
    }

    /// Takes one accepted step, never past `t_max`. A step over a zero
    /// crossing of `u` is cut short to end exactly on it; returns whether
    /// that happened.
    fn step(&mut self, t_max: f64) -> Result<bool> {
        const SAFETY: f64 = 0.9;
        let remaining = t_max - self.t;
        let mut h = self.h.min(self.h_max).min(remaining);
        loop {
            self.steps += 1;
            if self.steps > MAX_STEPS {
                return Err(Error::NoConvergence("ODE step limit reached"));
            }
            let out = dp_step(self.force, &self.y, &self.dydt, h, self.side);
            let norm = self.error_norm(&out.y, &out.err);
            if norm <= 1.0 {
                let grow = if norm == 0.0 {
                    5.0
                } else {
                    (SAFETY * norm.powf(-0.2)).clamp(0.2, 5.0)
                };
                if out.y[0] * self.side <= 0.0 {
                    return self.cross(h, out.y[0], h * grow);
                }
                let reached = h >= remaining;
                self.t = if reached { t_max } else { self.t + h };
                self.y = out.y;
                self.dydt = out.dydt;
                self.h = if reached {
                    self.h.max(h * grow)
                } else {
                    h * grow
                };
                return Ok(false);
            }
            h *= (SAFETY * norm.powf(-0.2)).clamp(0.2, 1.0);
            if !(h > 1e-14 * self.t.abs().max(1.0)) {
                return Err(Error::StepUnderflow(self.t));
            }
        }
    }

    /// Re-integrates the accepted step `h`, whose end value `u_end` is on
    /// the far side of zero, up to the crossing, and switches branch there.
    fn cross(&mut self, h: f64, u_end: f64, next_h: f64) -> Result<bool> {
        let (y0, k0, side) = (self.y, self.dydt, self.side);
        let dh = if u_end == 0.0 {
            h
        } else {
            let u_at = |dh: f64| dp_step(self.force, &y0, &k0, dh, side).y[0];
            let bracket = Bracket {
                lo: 0.0,
                hi: h,
                f_lo: y0[0],
                f_hi: u_end,
            };
            find_root_bracketed(u_at, bracket, DEFAULT_CROSSING_TOL.min(self.tol) * 1e-4)?
        };
        let mut y = dp_step(self.force, &y0, &k0, dh, side).y;
        y[0] = 0.0;
        self.side = -side;
        self.t += dh;
        self.y = y;
        self.dydt = rhs(self.force, &y, self.side);
        self.h = next_h;
        Ok(true)
    }

    fn sample(&self) -> PhaseSample {
        PhaseSample {
            t: self.t,
            u: self.y[0],
            v: self.y[1],
            energy: 0.5 * self.y[1] * self.y[1] + self.force.potential(self.y[0]),
        }
    }
}

fn check_ode_args(amplitude: f64, tol: f64) -> Result<()> {
    if !(amplitude > 0.0 && amplitude.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "amplitude must be positive, got {amplitude}"
        )));
    }
    if !(tol > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    Ok(())
}

/// Integrates `u'' + f(u) = 0` from `u(0) = A`, `u'(0) = 0` to `t_end`,
/// keeping every accepted step.
pub fn integrate_ode<F: Force + ?Sized>(
    force: &F,
    amplitude: f64,
    t_end: f64,
    tol: f64,
) -> Result<Trajectory> {
    check_ode_args(amplitude, tol)?;
    if !(t_end > 0.0 && t_end.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "t_end must be positive, got {t_end}"
        )));
    }
    let mut stepper = Stepper::new(force, amplitude, tol);
    let mut samples = vec![stepper.sample()];
    while stepper.t < t_end {
        stepper.step(t_end)?;
        samples.push(stepper.sample());
    }
    Ok(Trajectory { amplitude, samples })
}

/// Like [`integrate_ode`], but samples exactly at the given times, which
/// must be non-negative and increasing.
pub fn sample_ode<F: Force + ?Sized>(
    force: &F,
    amplitude: f64,
    times: &[f64],
    tol: f64,
) -> Result<Trajectory> {
    check_ode_args(amplitude, tol)?;
    if times.iter().any(|t| !(*t >= 0.0 && t.is_finite())) || times.windows(2).any(|w| w[1] < w[0])
    {
        return Err(Error::InvalidParameter(
            "sample times must be non-negative and increasing".into(),
        ));
    }
    let mut stepper = Stepper::new(force, amplitude, tol);
    let mut samples = Vec::with_capacity(times.len());
    for &t in times {
        while stepper.t < t {
            stepper.step(t)?;
        }
        samples.push(stepper.sample());
    }
    Ok(Trajectory { amplitude, samples })
}

/// Period from the first downward zero crossing of `u`, times four.
///
/// The crossing inside the step that changes sign is located by solving
/// `u(t_k + h) = 0` for `h`, re-integrating from the last accepted state
/// with a single step of size `h`.
pub fn period_from_ode<F: Force + ?Sized>(force: &F, amplitude: f64, tol: f64) -> Result<f64> {
    check_ode_args(amplitude, tol)?;
    check_odd_restoring(force, amplitude)?;
    let horizon = HORIZON_PERIODS * 2.0 * PI / secant_frequency(force, amplitude);
    let mut stepper = Stepper::new(force, amplitude, tol);
    while stepper.t < horizon {
        if stepper.step(horizon)? {
            return Ok(4.0 * stepper.t);
        }
    }
    Err(Error::NoCrossing(horizon))
}

/// `max |e(t) - e(0)| / max(1, |e(0)|)` over the samples.
pub fn energy_drift(trajectory: &Trajectory) -> f64 {
    let e0 = trajectory.samples[0].energy;
    let scale = e0.abs().max(1.0);
    trajectory
        .samples
        .iter()
        .map(|s| (s.energy - e0).abs() / scale)
        .fold(0.0, f64::max)
}

/// Estimates `lim sqrt(rho) T(rho)` from `period_fn` along an increasing
/// `rho` sequence.
///
/// When the last two scaled values differ by less than 1e-6 the last one is
/// returned. Otherwise the Duffing family is extrapolated assuming an
/// `O(1/rho)` correction; the quadratic family returns the tail value.
/// Tail differences above 1e-3 are reported as not converged.
pub fn scaled_limit<P>(family: LimitFamily, period_fn: P, rho_seq: &[f64]) -> Result<f64>
where
    P: Fn(f64) -> Result<f64>,
{
    if rho_seq.len() < 3
        || rho_seq.iter().any(|r| !(*r > 0.0 && r.is_finite()))
        || rho_seq.windows(2).any(|w| w[1] <= w[0])
    {
        return Err(Error::InvalidParameter(
            "rho sequence must hold at least 3 increasing positive values".into(),
        ));
    }
    let scaled = rho_seq
        .iter()
        .map(|&rho| period_fn(rho).map(|t| rho.sqrt() * t))
        .collect::<Result<Vec<_>>>()?;
    let n = scaled.len();
    let (r0, r1) = (rho_seq[n - 2], rho_seq[n - 1]);
    let (g0, g1) = (scaled[n - 2], scaled[n - 1]);
    let tail = (g1 - g0).abs();
    if !(tail <= 1e-3) {
        return Err(Error::NotConverged(tail));
    }
    if tail < 1e-6 {
        return Ok(g1);
    }
    Ok(match family {
        LimitFamily::Duffing => (r1 * g1 - r0 * g0) / (r1 - r0),
        LimitFamily::QuadraticAbs => g1,
    })
}

/// Exact period at reduced parameter `rho` (`omega0 = 1` for the quadratic
/// family), from the energy integral.
pub fn exact_period_for_rho(family: LimitFamily, rho: f64, tol: f64) -> Result<f64> {
    let family = match family {
        LimitFamily::Duffing => crate::models::Family::Duffing,
        LimitFamily::QuadraticAbs => crate::models::Family::QuadraticAbs,
    };
    let (model, amplitude) = ForceModel::from_reduced_parameter(family, 1.0, rho)?;
    exact_period_energy(&model, amplitude, tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::approx::{duffing_t1_closed, signum_exact_period};

    // Complete-elliptic/Beta-function values of the pure power-law periods.
    const PURE_CUBIC_PERIOD: f64 = 7.416_298_709_205_488;
    const PURE_QUADRATIC_PERIOD: f64 = 6.869_261_369_017_644;

    struct EvenForce;

    impl Force for EvenForce {
        fn force(&self, u: f64) -> f64 {
            1.0 + u * u
        }
        fn potential(&self, u: f64) -> f64 {
            u + u * u * u / 3.0
        }
    }

    struct SoftThenHard;

    impl Force for SoftThenHard {
        fn force(&self, u: f64) -> f64 {
            u * u * u - u
        }
        fn potential(&self, u: f64) -> f64 {
            0.25 * u.powi(4) - 0.5 * u * u
        }
    }

    #[test]
    fn energy_period_known_values() {
        let t = exact_period_energy(&ForceModel::harmonic(), 1.0, 1e-12).unwrap();
        assert!((t - 2.0 * PI).abs() < 1e-12);
        let t = exact_period_energy(&ForceModel::signum(2.0).unwrap(), 1.0, 1e-12).unwrap();
        assert!((t - 4.0).abs() < 1e-12);
        let t = exact_period_energy(&ForceModel::pure_cubic(1.0).unwrap(), 1.0, 1e-12).unwrap();
        assert!((t - PURE_CUBIC_PERIOD).abs() < 1e-11);
    }

    #[test]
    fn exact_limits() {
        let d = exact_limit(LimitFamily::Duffing, 1e-12).unwrap();
        assert!((d - PURE_CUBIC_PERIOD).abs() < 1e-11);
        let q = exact_limit(LimitFamily::QuadraticAbs, 1e-12).unwrap();
        assert!((q - PURE_QUADRATIC_PERIOD).abs() < 1e-11);
    }

    #[test]
    fn energy_period_errors() {
        assert_eq!(
            exact_period_energy(&EvenForce, 1.0, 1e-12),
            Err(Error::NotOdd)
        );
        assert_eq!(
            exact_period_energy(&SoftThenHard, 2.0, 1e-12),
            Err(Error::NonMonotonePotential)
        );
    }

    #[test]
    fn integrand_endpoint_value() {
        let models = [
            ForceModel::harmonic(),
            ForceModel::duffing(1.5).unwrap(),
            ForceModel::signum(2.0).unwrap(),
            ForceModel::quadratic_abs(1.0, 3.0).unwrap(),
        ];
        for m in models {
            let a = 1.3;
            let g = energy_integrand(&m, a, FRAC_PI_2);
            let limit = (a / m.force(a)).sqrt();
            assert!((g - limit).abs() < 1e-6 * limit, "{}", m.family());
            for k in 0..=100 {
                assert!(energy_integrand(&m, a, FRAC_PI_2 * k as f64 / 100.0).is_finite());
            }
        }
    }

    #[test]
    fn ode_harmonic_closed_orbit() {
        let traj = integrate_ode(&ForceModel::harmonic(), 1.0, 2.0 * PI, 1e-10).unwrap();
        let end = traj.last();
        assert_eq!(end.t, 2.0 * PI);
        assert!((end.u - 1.0).abs() < 1e-8);
        assert_eq!(traj.samples()[0].u, 1.0);
        assert_eq!(traj.samples()[0].v, 0.0);
        assert!(traj.samples().windows(2).all(|w| w[1].t > w[0].t));
    }

    #[test]
    fn ode_duffing_energy_drift() {
        let m = ForceModel::duffing(1.0).unwrap();
        let period = exact_period_energy(&m, 1.0, 1e-12).unwrap();
        let traj = integrate_ode(&m, 1.0, period, 1e-10).unwrap();
        assert!(energy_drift(&traj) <= 1e-8);
        let coarse = integrate_ode(&m, 1.0, period, 1e-3).unwrap();
        assert!(energy_drift(&coarse) > energy_drift(&traj));
    }

    #[test]
    fn ode_signum_parabola() {
        let m = ForceModel::signum(2.0).unwrap();
        let times: Vec<f64> = (0..=20).map(|i| i as f64 / 20.0).collect();
        let traj = sample_ode(&m, 1.0, &times, 1e-10).unwrap();
        for s in traj.samples() {
            assert!(
                (s.u - (1.0 - s.t * s.t)).abs() < 1e-12,
                "t={}: {}",
                s.t,
                s.u
            );
        }
    }

    #[test]
    fn non_smooth_forces_conserve_energy_across_crossings() {
        for m in [
            ForceModel::signum(1.0).unwrap(),
            ForceModel::quadratic_abs(1.0, 1.0).unwrap(),
            ForceModel::pure_quadratic_abs(1.0).unwrap(),
        ] {
            let period = exact_period_energy(&m, 2.0, 1e-12).unwrap();
            let traj = integrate_ode(&m, 2.0, 3.0 * period, 1e-10).unwrap();
            assert!(energy_drift(&traj) <= 1e-8, "{}", m.family());
            // every crossing is a step boundary with u = 0 exactly
            let zeros = traj.samples().iter().filter(|s| s.u == 0.0).count();
            assert_eq!(zeros, 6, "{}", m.family());
        }
    }

    #[test]
    fn signum_full_period_is_exact() {
        let m = ForceModel::signum(2.0).unwrap();
        let t = signum_exact_period(2.0, 1.0).period;
        let traj = integrate_ode(&m, 1.0, t, 1e-10).unwrap();
        let end = traj.last();
        assert!((end.u - 1.0).abs() < 1e-13 && end.v.abs() < 1e-13);
        assert!(energy_drift(&traj) < 1e-14);
    }

    #[test]
    fn exact_harmonic_samples_have_no_drift() {
        let samples = (0..50)
            .map(|i| {
                let t = i as f64 * 0.1;
                let (u, v) = (t.cos(), -t.sin());
                PhaseSample {
                    t,
                    u,
                    v,
                    energy: 0.5 * v * v + 0.5 * u * u,
                }
            })
            .collect();
        let traj = Trajectory {
            amplitude: 1.0,
            samples,
        };
        assert!(energy_drift(&traj) < 1e-15);
    }

    #[test]
    fn ode_period_matches_energy() {
        let t = period_from_ode(&ForceModel::harmonic(), 1.0, 1e-10).unwrap();
        assert!((t - 2.0 * PI).abs() < 1e-8);
        for m in [
            ForceModel::duffing(1.0).unwrap(),
            ForceModel::quadratic_abs(1.0, 1.0).unwrap(),
        ] {
            let ode = period_from_ode(&m, 1.0, 1e-10).unwrap();
            let energy = exact_period_energy(&m, 1.0, 1e-12).unwrap();
            assert!((ode - energy).abs() < 1e-7 * energy, "{}", m.family());
        }
    }

    #[test]
    fn ode_period_rejects_even_force() {
        assert_eq!(period_from_ode(&EvenForce, 1.0, 1e-10), Err(Error::NotOdd));
    }

    #[test]
    fn signum_scaling_from_both_oracles() {
        for (eps, a) in [(1.0, 1.0), (2.0, 1.0), (1.0, 4.0), (0.5, 3.0)] {
            let m = ForceModel::signum(eps).unwrap();
            let exact = signum_exact_period(eps, a).period;
            let e = exact_period_energy(&m, a, 1e-12).unwrap();
            let o = period_from_ode(&m, a, 1e-10).unwrap();
            assert!((e - exact).abs() < 1e-9 * exact);
            assert!((o - exact).abs() < 1e-9 * exact);
        }
    }

    #[test]
    fn half_period_reaches_negative_amplitude() {
        for m in [
            ForceModel::duffing(2.0).unwrap(),
            ForceModel::quadratic_abs(1.0, 2.0).unwrap(),
            ForceModel::signum(1.0).unwrap(),
        ] {
            let period = exact_period_energy(&m, 1.5, 1e-12).unwrap();
            let traj = sample_ode(&m, 1.5, &[0.0, 0.5 * period], 1e-10).unwrap();
            assert!((traj.last().u + 1.5).abs() < 1e-6, "{}", m.family());
        }
    }

    #[test]
    fn scaled_limit_closed_form() {
        let l = scaled_limit(
            LimitFamily::Duffing,
            |rho| Ok(duffing_t1_closed(rho)),
            &DEFAULT_LIMIT_RHOS,
        )
        .unwrap();
        assert!((l - 6.0 * PI / 7f64.sqrt()).abs() < 1e-8);
    }

    #[test]
    fn scaled_limit_of_exact_periods() {
        let d = scaled_limit(
            LimitFamily::Duffing,
            |rho| exact_period_for_rho(LimitFamily::Duffing, rho, 1e-12),
            &DEFAULT_LIMIT_RHOS,
        )
        .unwrap();
        assert!((d - PURE_CUBIC_PERIOD).abs() < 1e-5);
        let q = scaled_limit(
            LimitFamily::QuadraticAbs,
            |rho| exact_period_for_rho(LimitFamily::QuadraticAbs, rho, 1e-12),
            &DEFAULT_LIMIT_RHOS,
        )
        .unwrap();
        assert!((q - PURE_QUADRATIC_PERIOD).abs() < 1e-5);
    }

    #[test]
    fn scaled_limit_rejects_divergent_sequences() {
        let r = scaled_limit(LimitFamily::Duffing, |_| Ok(1.0), &[1.0, 2.0, 4.0]);
        assert!(matches!(r, Err(Error::NotConverged(_))));
        let r = scaled_limit(LimitFamily::Duffing, |_| Ok(1.0), &[1.0, 2.0]);
        assert!(r.is_err());
    }
}
