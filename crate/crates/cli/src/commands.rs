use std::f64::consts::PI;

use rayon::prelude::*;

use oscper::approx::{
    self, duffing_t1_closed, duffing_t2_period, first_order_period, improve_trajectory,
    quadratic_t1_closed, quadratic_t2_period, second_order_period, signum_exact_period,
    LimitFamily, PeriodResult, TrialFunction, DEFAULT_RESIDUAL_TOL, DUFFING_T_INF_EXACT,
    QUADRATIC_T_INF_EXACT,
};
use oscper::models::Family;
use oscper::oracle::{
    exact_limit, exact_period_energy, exact_period_for_rho, period_from_ode, sample_ode,
    scaled_limit, DEFAULT_LIMIT_RHOS, DEFAULT_ODE_TOL, DEFAULT_QUAD_TOL,
};
use oscper::validation::{
    self, CriterionReport, PRINTED_DUFFING_T1_INF, PRINTED_DUFFING_T2_INF,
    PRINTED_QUADRATIC_T1_INF, PRINTED_QUADRATIC_T2_INF,
};

use crate::output::{format_g, Field, Record};
use crate::params::{setup_for_rho, ModelArg, Setup};
use crate::Failure;

pub const SWEEP_HEADER: [&str; 6] = [
    "rho",
    "T_first",
    "T_second",
    "T_exact",
    "rel_err_first",
    "rel_err_second",
];

/// Largest accepted gap between the analytic and large-rho routes to a
/// limit constant.
pub const LIMIT_CONSISTENCY: f64 = 1e-4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum MethodArg {
    First,
    Second,
    ClosedFirst,
    PolynomialSecond,
    Energy,
    Ode,
}

fn numeric(e: oscper::Error) -> Failure {
    Failure::Numeric(e.to_string())
}

struct Period {
    result: PeriodResult,
    /// Defining condition or formula behind the number.
    anchor: &'static str,
    has_residual: bool,
}

fn period(setup: &Setup, method: MethodArg, tol: Option<f64>) -> Result<Period, Failure> {
    let Setup {
        model, amplitude, ..
    } = *setup;
    let family = model.family();
    let rho = setup.rho.unwrap_or(0.0);
    let exact = |period, method| PeriodResult {
        period,
        method,
        residual: 0.0,
        a2: None,
    };
    let (result, anchor, has_residual) = match method {
        MethodArg::First => (
            first_order_period(&model, amplitude, tol.unwrap_or(DEFAULT_RESIDUAL_TOL))
                .map_err(numeric)?,
            "u1(T/4) = 0 for the trial A cos(wt)",
            true,
        ),
        MethodArg::Second => (
            second_order_period(&model, amplitude, tol.unwrap_or(DEFAULT_RESIDUAL_TOL))
                .map_err(numeric)?,
            "u1(T/4) = 0 for the trial A1 cos(wt) + A2 cos(3wt), A2 = (f(A)/w^2 - A)/8",
            true,
        ),
        MethodArg::ClosedFirst => match family {
            Family::Harmonic | Family::Duffing => (
                exact(duffing_t1_closed(rho), approx::Method::ClosedFormT1),
                "T = 2 pi / sqrt(1 + 7 rho / 9)",
                false,
            ),
            Family::QuadraticAbs => (
                exact(
                    quadratic_t1_closed(model.omega0(), rho),
                    approx::Method::ClosedFormT1,
                ),
                "T = 2 pi / sqrt(omega0^2 + (4 + pi^2) rho / 16)",
                false,
            ),
            Family::Signum => (
                signum_exact_period(model.epsilon(), amplitude),
                "T = 4 sqrt(2 A / eps)",
                false,
            ),
            _ => unreachable!("the CLI exposes four families"),
        },
        MethodArg::PolynomialSecond => match family {
            Family::Harmonic | Family::Duffing => (
                duffing_t2_period(rho).map_err(numeric)?,
                "smallest positive root of the cubic second-order period polynomial in T^2",
                true,
            ),
            Family::QuadraticAbs => (
                quadratic_t2_period(model.omega0(), rho).map_err(numeric)?,
                "smallest positive root of the u|u| second-order period polynomial in T^2",
                true,
            ),
            _ => {
                return Err(Failure::Usage(format!(
                    "no period polynomial for the {} model",
                    family.name()
                )))
            }
        },
        MethodArg::Energy => (
            exact(
                exact_period_energy(&model, amplitude, tol.unwrap_or(DEFAULT_QUAD_TOL))
                    .map_err(numeric)?,
                approx::Method::EnergyIntegral,
            ),
            "T = 4 int_0^A du / sqrt(2 (V(A) - V(u)))",
            false,
        ),
        MethodArg::Ode => (
            exact(
                period_from_ode(&model, amplitude, tol.unwrap_or(DEFAULT_ODE_TOL))
                    .map_err(numeric)?,
                approx::Method::OdeCrossing,
            ),
            "T = 4 t*, u(t*) = 0 first zero of u'' + f(u) = 0",
            false,
        ),
    };
    Ok(Period {
        result,
        anchor,
        has_residual,
    })
}

pub fn cmd_period(
    setup: &Setup,
    method: MethodArg,
    tol: Option<f64>,
) -> Result<Vec<Record>, Failure> {
    let p = period(setup, method, tol)?;
    let model = setup.model;
    Ok(vec![Record(vec![
        ("model", model.family().name().into()),
        ("amplitude", setup.amplitude.into()),
        ("epsilon", model.epsilon().into()),
        ("omega0", model.omega0().into()),
        ("rho", setup.rho.into()),
        ("method", p.result.method.name().into()),
        ("T", p.result.period.into()),
        (
            "residual",
            if p.has_residual {
                Field::Num(p.result.residual)
            } else {
                Field::Null
            },
        ),
        ("paper_anchor", p.anchor.into()),
    ])])
}

struct SweepRow {
    rho: f64,
    first: Result<f64, String>,
    second: Result<f64, String>,
    exact: Result<f64, String>,
}

impl SweepRow {
    fn failed(&self) -> bool {
        self.first.is_err() || self.second.is_err() || self.exact.is_err()
    }

    fn record(&self) -> Record {
        let value = |r: &Result<f64, String>| *r.as_ref().unwrap_or(&f64::NAN);
        let (t1, t2, te) = (value(&self.first), value(&self.second), value(&self.exact));
        Record(vec![
            ("rho", self.rho.into()),
            ("T_first", t1.into()),
            ("T_second", t2.into()),
            ("T_exact", te.into()),
            ("rel_err_first", ((t1 - te).abs() / te).into()),
            ("rel_err_second", ((t2 - te).abs() / te).into()),
        ])
    }
}

fn sweep_row(setup: &Setup, tol: Option<f64>) -> SweepRow {
    let Setup {
        model, amplitude, ..
    } = *setup;
    let rtol = tol.unwrap_or(DEFAULT_RESIDUAL_TOL);
    let text = |e: oscper::Error| e.to_string();
    SweepRow {
        rho: setup.rho.unwrap_or(0.0),
        first: first_order_period(&model, amplitude, rtol)
            .map(|p| p.period)
            .map_err(text),
        second: second_order_period(&model, amplitude, rtol)
            .map(|p| p.period)
            .map_err(text),
        exact: exact_period_energy(&model, amplitude, DEFAULT_QUAD_TOL).map_err(text),
    }
}

/// Rows are computed in parallel and returned in grid order. Failed
/// quantities become NaN with a warning; the sweep fails only if every row
/// does.
pub fn cmd_sweep(
    model: ModelArg,
    epsilon: Option<f64>,
    omega0: f64,
    grid: &[f64],
    tol: Option<f64>,
) -> Result<Vec<Record>, Failure> {
    if !model.rho_reducible() {
        return Err(Failure::Usage(
            "sweep needs a rho-parameterized model (duffing or quadratic-abs)".into(),
        ));
    }
    let setups = grid
        .iter()
        .map(|&rho| setup_for_rho(model, epsilon, omega0, rho))
        .collect::<Result<Vec<_>, _>>()?;
    let rows: Vec<SweepRow> = setups.par_iter().map(|s| sweep_row(s, tol)).collect();
    for row in &rows {
        for (name, r) in [
            ("T_first", &row.first),
            ("T_second", &row.second),
            ("T_exact", &row.exact),
        ] {
            if let Err(e) = r {
                eprintln!("warning: rho = {}: {name}: {e}", format_g(row.rho, 12));
            }
        }
    }
    if rows.iter().all(SweepRow::failed) {
        return Err(Failure::Numeric("every sweep row failed".into()));
    }
    Ok(rows.iter().map(SweepRow::record).collect())
}

/// First-order, second-order and exact strong-coupling constants, each
/// from its analytic form and from `sqrt(rho) T(rho)` at large `rho`.
/// The records are returned even when the routes disagree.
pub fn cmd_limit(model: ModelArg, tol: Option<f64>) -> Result<(Vec<Record>, bool), Failure> {
    let (family, printed) = match model {
        ModelArg::Duffing => (
            LimitFamily::Duffing,
            [
                PRINTED_DUFFING_T1_INF,
                PRINTED_DUFFING_T2_INF,
                DUFFING_T_INF_EXACT,
            ],
        ),
        ModelArg::QuadraticAbs => (
            LimitFamily::QuadraticAbs,
            [
                PRINTED_QUADRATIC_T1_INF,
                PRINTED_QUADRATIC_T2_INF,
                QUADRATIC_T_INF_EXACT,
            ],
        ),
        _ => {
            return Err(Failure::Usage(
                "limits exist for the duffing and quadratic-abs models only".into(),
            ))
        }
    };
    let qtol = tol.unwrap_or(DEFAULT_QUAD_TOL);
    let (t1, t2) = match family {
        LimitFamily::Duffing => (approx::duffing_t1_limit(), approx::duffing_t2_limit()),
        LimitFamily::QuadraticAbs => (approx::quadratic_t1_limit(), approx::quadratic_t2_limit()),
    };
    let first = |rho: f64| -> oscper::Result<f64> {
        Ok(match family {
            LimitFamily::Duffing => duffing_t1_closed(rho),
            LimitFamily::QuadraticAbs => quadratic_t1_closed(1.0, rho),
        })
    };
    let second = |rho: f64| -> oscper::Result<f64> {
        Ok(match family {
            LimitFamily::Duffing => duffing_t2_period(rho)?.period,
            LimitFamily::QuadraticAbs => quadratic_t2_period(1.0, rho)?.period,
        })
    };
    let exact = |rho: f64| exact_period_for_rho(family, rho, qtol);
    let rows = [
        (
            "first",
            t1.t_inf,
            scaled_limit(family, first, &DEFAULT_LIMIT_RHOS),
        ),
        (
            "second",
            t2.t_inf,
            scaled_limit(family, second, &DEFAULT_LIMIT_RHOS),
        ),
        (
            "exact",
            exact_limit(family, qtol).map_err(numeric)?,
            scaled_limit(family, exact, &DEFAULT_LIMIT_RHOS),
        ),
    ];
    let mut consistent = true;
    let mut records = Vec::new();
    for ((quantity, analytic, numeric_value), printed) in rows.into_iter().zip(printed) {
        let numeric_value = numeric_value.map_err(numeric)?;
        let difference = (analytic - numeric_value).abs();
        consistent &= difference <= LIMIT_CONSISTENCY;
        records.push(Record(vec![
            ("family", family.name().into()),
            ("quantity", quantity.into()),
            ("printed", printed.into()),
            ("analytic", analytic.into()),
            ("numeric", numeric_value.into()),
            ("difference", difference.into()),
        ]));
    }
    Ok((records, consistent))
}

pub fn cmd_trajectory(
    setup: &Setup,
    method: MethodArg,
    t_end: Option<f64>,
    samples: usize,
    tol: Option<f64>,
) -> Result<Vec<Record>, Failure> {
    let Setup {
        model, amplitude, ..
    } = *setup;
    let rtol = tol.unwrap_or(DEFAULT_RESIDUAL_TOL);
    let trial = match method {
        MethodArg::First => {
            let p = first_order_period(&model, amplitude, rtol).map_err(numeric)?;
            TrialFunction::first(amplitude, 2.0 * PI / p.period)
        }
        MethodArg::Second => {
            let p = second_order_period(&model, amplitude, rtol).map_err(numeric)?;
            TrialFunction::second(amplitude, p.a2.unwrap_or(0.0), 2.0 * PI / p.period)
        }
        _ => {
            return Err(Failure::Usage(
                "trajectory takes --method first or --method second".into(),
            ))
        }
    };
    let t_end = t_end.unwrap_or_else(|| trial.period());
    if !(t_end > 0.0 && t_end.is_finite()) {
        return Err(Failure::Usage(format!(
            "--t-end must be positive, got {t_end}"
        )));
    }
    if samples < 2 {
        return Err(Failure::Usage("--samples must be at least 2".into()));
    }
    let last = (samples - 1) as f64;
    let times: Vec<f64> = (0..samples)
        .map(|i| {
            if i == samples - 1 {
                t_end
            } else {
                t_end * i as f64 / last
            }
        })
        .collect();
    let ode = sample_ode(&model, amplitude, &times, DEFAULT_ODE_TOL).map_err(numeric)?;
    times
        .iter()
        .zip(ode.samples())
        .map(|(&t, s)| {
            let improved =
                improve_trajectory(&model, &trial, t, DEFAULT_QUAD_TOL).map_err(numeric)?;
            Ok(Record(vec![
                ("t", t.into()),
                ("u_trial", trial.eval(t).into()),
                ("u_improved", improved.into()),
                ("u_ode", s.u.into()),
                ("energy_ode", s.energy.into()),
            ]))
        })
        .collect()
}

pub fn cmd_validate() -> Vec<CriterionReport> {
    validation::run_all()
}

pub fn criterion_record(r: &CriterionReport) -> Record {
    Record(vec![
        ("id", r.id.into()),
        ("title", r.title.into()),
        ("passed", r.passed.into()),
        ("detail", r.detail.clone().into()),
    ])
}
