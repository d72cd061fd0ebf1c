use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};

// 15-point Kronrod extension of the 7-point Gauss rule. Odd-indexed
// abscissae (and the centre) are the Gauss nodes.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

#[derive(Debug, Clone, Copy)]
pub struct QuadratureConfig {
    /// Maximum bisection depth of any single subinterval.
    pub max_depth: u32,
    /// Maximum number of live subintervals.
    pub max_intervals: usize,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        QuadratureConfig {
            max_depth: 60,
            max_intervals: 10_000,
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct Segment {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
    round_off: f64,
    depth: u32,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}

impl Eq for Segment {}

impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn gauss_kronrod<G: Fn(f64) -> f64>(g: &G, a: f64, b: f64, depth: u32) -> Segment {
    let centre = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = g(centre);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    let mut abs_sum = fc.abs() * WGK[7];
    for (j, (&x, &w)) in XGK.iter().zip(WGK.iter()).take(7).enumerate() {
        let dx = half * x;
        let f1 = g(centre - dx);
        let f2 = g(centre + dx);
        kronrod += w * (f1 + f2);
        abs_sum += w * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            gauss += WG[j / 2] * (f1 + f2);
        }
    }
    let value = kronrod * half;
    let round_off = 50.0 * f64::EPSILON * abs_sum * half.abs();
    let error = ((kronrod - gauss) * half).abs();
    Segment {
        a,
        b,
        value,
        error,
        round_off,
        depth,
    }
}

/// Adaptive Gauss-Kronrod (7/15) quadrature of `g` over `[a, b]`.
///
/// Repeatedly bisects the subinterval with the largest error estimate until
/// the summed estimate is at most `tol * max(1, |I|)`, or until the largest
/// remaining estimate is at the rounding level of its subinterval.
pub fn integrate_adaptive<G: Fn(f64) -> f64>(g: G, a: f64, b: f64, tol: f64) -> Result<f64> {
    integrate_adaptive_with(g, a, b, tol, QuadratureConfig::default())
}

pub fn integrate_adaptive_with<G: Fn(f64) -> f64>(
    g: G,
    a: f64,
    b: f64,
    tol: f64,
    config: QuadratureConfig,
) -> Result<f64> {
    if !(tol > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    if !(a <= b) {
        return Err(Error::InvalidParameter(format!(
            "empty interval [{a}, {b}]"
        )));
    }
    if a == b {
        return Ok(0.0);
    }

    let first = gauss_kronrod(&g, a, b, 0);
    if !first.value.is_finite() {
        return Err(Error::NoConvergence("non-finite integrand"));
    }
    let mut total = first.value;
    let mut error = first.error;
    let mut heap = BinaryHeap::new();
    heap.push(first);

    while error > tol * total.abs().max(1.0) {
        let worst = *heap.peek().expect("heap holds at least one segment");
        if worst.error <= worst.round_off {
            // Everything left is rounding noise.
            break;
        }
        heap.pop();
        if worst.depth >= config.max_depth || heap.len() + 2 > config.max_intervals {
            return Err(Error::NoConvergence("quadrature subdivision limit reached"));
        }
        let mid = 0.5 * (worst.a + worst.b);
        let left = gauss_kronrod(&g, worst.a, mid, worst.depth + 1);
        let right = gauss_kronrod(&g, mid, worst.b, worst.depth + 1);
        if !(left.value.is_finite() && right.value.is_finite()) {
            return Err(Error::NoConvergence("non-finite integrand"));
        }
        total += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        // Re-sum occasionally so the running totals do not drift.
        if heap.len() % 64 == 0 {
            total = heap.iter().map(|s| s.value).sum();
            error = heap.iter().map(|s| s.error).sum();
        }
    }
    Ok(heap.iter().map(|s| s.value).sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, PI};

    #[test]
    fn analytic_integrals() {
        let v = integrate_adaptive(f64::cos, 0.0, FRAC_PI_2, 1e-12).unwrap();
        assert!((v - 1.0).abs() < 1e-13);
        let v = integrate_adaptive(|_| 1.0, 0.0, 3.0, 1e-3).unwrap();
        assert!((v - 3.0).abs() < 1e-14);
        let v = integrate_adaptive(|x| x * x * x, 0.0, 2.0, 1e-12).unwrap();
        assert!((v - 4.0).abs() < 1e-13);
    }

    #[test]
    fn empty_range() {
        assert_eq!(integrate_adaptive(|x| x, 1.5, 1.5, 1e-12).unwrap(), 0.0);
        assert!(integrate_adaptive(|x| x, 2.0, 1.0, 1e-12).is_err());
        assert!(integrate_adaptive(|x| x, 0.0, 1.0, 0.0).is_err());
    }

    #[test]
    fn jump_discontinuity() {
        let v = integrate_adaptive(|x| if x < 1.0 / 3.0 { 1.0 } else { -2.0 }, 0.0, 1.0, 1e-12)
            .unwrap();
        assert!((v - (1.0 / 3.0 - 4.0 / 3.0)).abs() < 1e-11);
    }

    #[test]
    fn oscillatory() {
        let v = integrate_adaptive(|x| (20.0 * x).sin().powi(2), 0.0, PI, 1e-12).unwrap();
        assert!((v - FRAC_PI_2).abs() < 1e-12);
    }

    #[test]
    fn reports_non_convergence() {
        let cfg = QuadratureConfig {
            max_depth: 3,
            max_intervals: 10_000,
        };
        let r = integrate_adaptive_with(|x: f64| x.abs().sqrt().recip(), -1.0, 1.0, 1e-12, cfg);
        assert!(matches!(r, Err(Error::NoConvergence(_))));
    }
}
