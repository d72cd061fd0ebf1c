use super::root::{find_root_bracketed, Bracket};
use crate::error::{Error, Result};

/// Leading coefficients with `|c| <= DEFLATION_THRESHOLD * max|c_k|` are
/// treated as zero.
pub const DEFLATION_THRESHOLD: f64 = 1e-14;

const MAX_DEGREE: usize = 4;

/// A polynomial `P(s) = sum c_k s^k` in `s = T^2`, i.e. an even polynomial in
/// the period `T`.
#[derive(Debug, Clone, PartialEq)]
pub struct EvenPolynomial {
    coeffs: Vec<f64>,
}

impl EvenPolynomial {
    /// Coefficients in ascending order, `c_0` first.
    pub fn new(coeffs: Vec<f64>) -> Result<Self> {
        if coeffs.is_empty() || coeffs.len() > MAX_DEGREE + 1 {
            return Err(Error::InvalidParameter(format!(
                "expected 1..={} coefficients, got {}",
                MAX_DEGREE + 1,
                coeffs.len()
            )));
        }
        if coeffs.iter().any(|c| !c.is_finite()) {
            return Err(Error::InvalidParameter("non-finite coefficient".into()));
        }
        if coeffs.iter().all(|&c| c == 0.0) {
            return Err(Error::InvalidParameter("zero polynomial".into()));
        }
        Ok(EvenPolynomial { coeffs })
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |m, c| m.max(c.abs()))
    }

    /// Coefficients with negligible leading terms removed.
    pub fn deflated(&self) -> &[f64] {
        deflate(&self.coeffs)
    }

    /// Degree in `s` after deflation.
    pub fn degree(&self) -> usize {
        self.deflated().len() - 1
    }

    pub fn eval_s(&self, s: f64) -> f64 {
        horner(&self.coeffs, s)
    }

    pub fn eval_t(&self, t: f64) -> f64 {
        self.eval_s(t * t)
    }

    /// Largest acceptable `|P(T^2)|` at a returned root `T`.
    pub fn residual_bound(&self, t: f64) -> f64 {
        1e-9 * self.max_abs_coeff() * (t * t).max(1.0).powi(self.degree() as i32)
    }

    /// All positive real `T` with `P(T^2) = 0`, ascending. The first entry
    /// is the branch that connects to the linear period.
    pub fn positive_t_roots(&self) -> Result<Vec<f64>> {
        let roots: Vec<f64> = real_roots(&self.coeffs)
            .into_iter()
            .filter(|&s| s > 0.0)
            .map(f64::sqrt)
            .collect();
        if roots.is_empty() {
            Err(Error::NoPositiveRoot)
        } else {
            Ok(roots)
        }
    }

    pub fn smallest_positive_t_root(&self) -> Result<f64> {
        self.positive_t_roots().map(|r| r[0])
    }
}

fn deflate(coeffs: &[f64]) -> &[f64] {
    let scale = coeffs.iter().fold(0.0f64, |m, c| m.max(c.abs()));
    let mut n = coeffs.len();
    while n > 1 && coeffs[n - 1].abs() <= DEFLATION_THRESHOLD * scale {
        n -= 1;
    }
    &coeffs[..n]
}

fn horner(coeffs: &[f64], x: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
}

/// All distinct real roots of `sum c_k x^k`, ascending.
///
/// Degrees 1 and 2 use closed forms. Higher degrees isolate the roots
/// between consecutive real critical points (the real roots of the
/// derivative, found recursively) and polish each sign change with Brent's
/// method.
pub fn real_roots(coeffs: &[f64]) -> Vec<f64> {
    let c = deflate(coeffs);
    let degree = c.len() - 1;
    let mut roots = match degree {
        0 => Vec::new(),
        1 => vec![-c[0] / c[1]],
        2 => quadratic_roots(c[2], c[1], c[0]),
        _ => isolated_roots(c),
    };
    roots.sort_by(f64::total_cmp);
    roots.dedup_by(|a, b| (*a - *b).abs() <= 4.0 * f64::EPSILON * a.abs().max(b.abs()));
    roots
}

fn quadratic_roots(a: f64, b: f64, c: f64) -> Vec<f64> {
    let disc = b * b - 4.0 * a * c;
    if disc < 0.0 {
        // Treat rounding-level negatives as a double root.
        if disc.abs() <= 8.0 * f64::EPSILON * b * b {
            return vec![-b / (2.0 * a)];
        }
        return Vec::new();
    }
    if disc == 0.0 {
        return vec![-b / (2.0 * a)];
    }
    let q = -0.5 * (b + disc.sqrt().copysign(b));
    if q == 0.0 {
        return vec![0.0];
    }
    vec![q / a, c / q]
}

fn isolated_roots(c: &[f64]) -> Vec<f64> {
    let degree = c.len() - 1;
    let lead = c[degree];
    let bound = 1.0
        + c[..degree]
            .iter()
            .fold(0.0f64, |m, &ck| m.max((ck / lead).abs()));

    let derivative: Vec<f64> = c
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, &ck)| k as f64 * ck)
        .collect();
    let mut points = vec![-bound];
    points.extend(
        real_roots(&derivative)
            .into_iter()
            .filter(|x| x.abs() < bound),
    );
    points.push(bound);

    let p = |x: f64| horner(c, x);
    // Rounding level of P near x, for tangent (double) roots at critical points.
    let noise = |x: f64| {
        8.0 * f64::EPSILON
            * c.iter()
                .rev()
                .fold(0.0, |acc: f64, &ck| acc * x.abs() + ck.abs())
    };

    let values: Vec<f64> = points
        .iter()
        .enumerate()
        .map(|(i, &x)| {
            let v = p(x);
            let interior = i > 0 && i + 1 < points.len();
            if interior && v.abs() <= noise(x) {
                0.0
            } else {
                v
            }
        })
        .collect();

    let mut roots: Vec<f64> = points
        .iter()
        .zip(&values)
        .filter(|(_, &v)| v == 0.0)
        .map(|(&x, _)| x)
        .collect();
    for i in 0..points.len() - 1 {
        let (p0, p1) = (values[i], values[i + 1]);
        if p0 * p1 < 0.0 {
            let br = Bracket {
                lo: points[i],
                hi: points[i + 1],
                f_lo: p0,
                f_hi: p1,
            };
            if let Ok(x) = find_root_bracketed(p, br, 1e-16) {
                roots.push(x);
            }
        }
    }
    roots
}
