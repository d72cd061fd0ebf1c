//! Turning flags into a concrete model, amplitude and rho.

use oscper::models::{Family, ForceModel};
use oscper::Error;

use crate::Failure;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum ModelArg {
    Harmonic,
    Duffing,
    Signum,
    QuadraticAbs,
}

impl ModelArg {
    pub fn family(self) -> Family {
        match self {
            ModelArg::Harmonic => Family::Harmonic,
            ModelArg::Duffing => Family::Duffing,
            ModelArg::Signum => Family::Signum,
            ModelArg::QuadraticAbs => Family::QuadraticAbs,
        }
    }

    pub fn rho_reducible(self) -> bool {
        matches!(self, ModelArg::Duffing | ModelArg::QuadraticAbs)
    }
}

/// A fully specified oscillator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Setup {
    pub model: ForceModel,
    pub amplitude: f64,
    /// `None` for Signum, which has no reduced parameter.
    pub rho: Option<f64>,
}

fn usage(e: Error) -> Failure {
    Failure::Usage(e.to_string())
}

/// Amplitude for a given `rho` at fixed `eps > 0`.
fn amplitude_for(family: Family, epsilon: f64, rho: f64) -> f64 {
    match family {
        Family::Duffing => (rho / epsilon).sqrt(),
        _ => rho / epsilon,
    }
}

/// Model and amplitude for `rho`; `eps` defaults to 1, with `rho = 0`
/// meaning the linear oscillator at `A = 1`.
pub fn setup_for_rho(
    model: ModelArg,
    epsilon: Option<f64>,
    omega0: f64,
    rho: f64,
) -> Result<Setup, Failure> {
    let family = model.family();
    if !(rho >= 0.0 && rho.is_finite()) {
        return Err(Failure::Usage(format!(
            "rho must be finite and non-negative, got {rho}"
        )));
    }
    let (model, amplitude) = match epsilon {
        None => ForceModel::from_reduced_parameter(family, omega0, rho).map_err(usage)?,
        Some(eps) if !(eps >= 0.0 && eps.is_finite()) => {
            return Err(Failure::Usage(format!(
                "epsilon must be finite and non-negative, got {eps}"
            )))
        }
        Some(eps) if (eps == 0.0) != (rho == 0.0) => {
            return Err(Failure::Usage(format!(
                "--epsilon {eps} is inconsistent with --rho {rho}"
            )))
        }
        Some(0.0) => ForceModel::from_reduced_parameter(family, omega0, rho).map_err(usage)?,
        Some(eps) => (
            ForceModel::new(family, eps, omega0).map_err(usage)?,
            amplitude_for(family, eps, rho),
        ),
    };
    Ok(Setup {
        model,
        amplitude,
        rho: Some(rho),
    })
}

pub fn resolve(
    model: ModelArg,
    epsilon: Option<f64>,
    omega0: f64,
    amplitude: Option<f64>,
    rho: Option<f64>,
) -> Result<Setup, Failure> {
    let family = model.family();
    match model {
        ModelArg::Harmonic => {
            if rho.is_some_and(|r| r != 0.0) {
                return Err(Failure::Usage("the harmonic model only has rho = 0".into()));
            }
            if epsilon.is_some_and(|e| e != 0.0) {
                return Err(Failure::Usage(
                    "the harmonic model takes no --epsilon".into(),
                ));
            }
        }
        ModelArg::Signum => {
            if rho.is_some() {
                return Err(Failure::Usage(
                    "the signum model has no reduced parameter; give --amplitude".into(),
                ));
            }
        }
        ModelArg::Duffing | ModelArg::QuadraticAbs => match (amplitude, rho) {
            (Some(_), Some(_)) => {
                return Err(Failure::Usage(
                    "give exactly one of --amplitude and --rho".into(),
                ))
            }
            (None, None) => {
                return Err(Failure::Usage(format!(
                    "the {} model needs --amplitude or --rho",
                    family.name()
                )))
            }
            (None, Some(r)) => return setup_for_rho(model, epsilon, omega0, r),
            (Some(_), None) => {}
        },
    }
    let amplitude = amplitude.unwrap_or(1.0);
    let model = ForceModel::new(family, epsilon.unwrap_or(1.0), omega0).map_err(usage)?;
    let rho = match model.reduced_parameter(amplitude) {
        Ok(r) => Some(r.value()),
        Err(Error::NoReducedParameter(_)) => None,
        Err(e) => return Err(usage(e)),
    };
    Ok(Setup {
        model,
        amplitude,
        rho,
    })
}

/// Parses `lo:hi:n` or `lo:hi:n:log` into `n` increasing points.
pub fn parse_grid(spec: &str) -> Result<Vec<f64>, String> {
    let parts: Vec<&str> = spec.split(':').collect();
    let log = match parts.as_slice() {
        [_, _, _] => false,
        [_, _, _, "log"] => true,
        _ => return Err(format!("grid must be lo:hi:n or lo:hi:n:log, got '{spec}'")),
    };
    let num = |s: &str| {
        s.parse::<f64>()
            .ok()
            .filter(|x| x.is_finite())
            .ok_or_else(|| format!("bad grid bound '{s}'"))
    };
    let (lo, hi) = (num(parts[0])?, num(parts[1])?);
    let n: usize = parts[2]
        .parse()
        .map_err(|_| format!("bad grid size '{}'", parts[2]))?;
    if n == 0 {
        return Err("grid needs at least one point".into());
    }
    if lo < 0.0 {
        return Err(format!("grid values must be non-negative, got {lo}"));
    }
    if n == 1 {
        return if lo == hi {
            Ok(vec![lo])
        } else {
            Err("a one-point grid needs lo = hi".into())
        };
    }
    if !(hi > lo) {
        return Err(format!("grid must be increasing, got {lo}:{hi}"));
    }
    if log && lo <= 0.0 {
        return Err("a log grid needs lo > 0".into());
    }
    let last = (n - 1) as f64;
    Ok((0..n)
        .map(|i| {
            if i == 0 {
                lo
            } else if i == n - 1 {
                hi
            } else if log {
                (lo.ln() + (hi.ln() - lo.ln()) * i as f64 / last).exp()
            } else {
                lo + (hi - lo) * i as f64 / last
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grids() {
        assert_eq!(parse_grid("0:0:1").unwrap(), vec![0.0]);
        assert_eq!(parse_grid("0:1:3").unwrap(), vec![0.0, 0.5, 1.0]);
        let g = parse_grid("1:100:3:log").unwrap();
        assert_eq!(g[0], 1.0);
        assert!((g[1] - 10.0).abs() < 1e-12);
        assert_eq!(g[2], 100.0);
        for bad in [
            "",
            "1:2",
            "2:1:3",
            "0:1:3:log",
            "1:2:0",
            "-1:1:2",
            "1:2:1",
            "a:b:2",
            "1:2:2:lin",
        ] {
            assert!(parse_grid(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn rho_route_matches_amplitude_route() {
        let a = resolve(ModelArg::Duffing, Some(0.25), 1.0, Some(2.0), None).unwrap();
        let r = resolve(ModelArg::Duffing, Some(0.25), 1.0, None, Some(1.0)).unwrap();
        assert_eq!(a, r);
        let q = resolve(ModelArg::QuadraticAbs, None, 1.0, None, Some(3.0)).unwrap();
        assert_eq!(
            (q.model.epsilon(), q.amplitude, q.rho),
            (1.0, 3.0, Some(3.0))
        );
        let z = resolve(ModelArg::Duffing, None, 1.0, None, Some(0.0)).unwrap();
        assert_eq!((z.model.epsilon(), z.amplitude), (0.0, 1.0));
    }

    #[test]
    fn rejects_inconsistent_flags() {
        assert!(resolve(ModelArg::Duffing, None, 1.0, Some(1.0), Some(1.0)).is_err());
        assert!(resolve(ModelArg::Duffing, None, 1.0, None, None).is_err());
        assert!(resolve(ModelArg::Signum, None, 1.0, None, Some(1.0)).is_err());
        assert!(resolve(ModelArg::Harmonic, None, 1.0, None, Some(2.0)).is_err());
        assert!(resolve(ModelArg::Duffing, Some(0.0), 1.0, None, Some(2.0)).is_err());
        assert!(resolve(ModelArg::Duffing, None, 1.0, Some(-1.0), None).is_err());
        assert!(resolve(ModelArg::QuadraticAbs, None, 0.0, Some(1.0), None).is_err());
    }

    #[test]
    fn signum_has_no_rho() {
        let s = resolve(ModelArg::Signum, Some(2.0), 1.0, Some(1.0), None).unwrap();
        assert_eq!(s.rho, None);
        assert_eq!(s.amplitude, 1.0);
    }
}
