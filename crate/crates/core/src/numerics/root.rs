use crate::error::{Error, Result};

const MAX_ITER: usize = 200;

/// An interval `[lo, hi]` with the function values at its ends.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bracket {
    pub lo: f64,
    pub hi: f64,
    pub f_lo: f64,
    pub f_hi: f64,
}

impl Bracket {
    pub fn from_fn<H: Fn(f64) -> f64>(h: &H, lo: f64, hi: f64) -> Self {
        Bracket {
            lo,
            hi,
            f_lo: h(lo),
            f_hi: h(hi),
        }
    }

    pub fn is_valid(&self) -> bool {
        self.lo < self.hi && self.f_lo * self.f_hi <= 0.0
    }
}

/// Brent's method: inverse quadratic interpolation and secant steps,
/// falling back to bisection whenever they fail to shrink the bracket.
///
/// Returns `x` inside the bracket whose enclosing interval is narrower than
/// `tol * max(1, |x|)` (or where `h(x) == 0`).
pub fn find_root_bracketed<H: Fn(f64) -> f64>(h: H, bracket: Bracket, tol: f64) -> Result<f64> {
    let Bracket { lo, hi, f_lo, f_hi } = bracket;
    if !bracket.is_valid() || f_lo.is_nan() || f_hi.is_nan() {
        return Err(Error::InvalidBracket { lo, hi, f_lo, f_hi });
    }
    if f_lo == 0.0 {
        return Ok(lo);
    }
    if f_hi == 0.0 {
        return Ok(hi);
    }

    let (mut a, mut b, mut c) = (lo, hi, hi);
    let (mut fa, mut fb, mut fc) = (f_lo, f_hi, f_hi);
    let mut d = b - a;
    let mut e = d;

    for _ in 0..MAX_ITER {
        if (fb > 0.0) == (fc > 0.0) {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let tol1 = 2.0 * f64::EPSILON * b.abs() + 0.5 * tol * b.abs().max(1.0);
        let xm = 0.5 * (c - b);
        if xm.abs() <= tol1 || fb == 0.0 {
            return Ok(b.clamp(lo, hi));
        }
        if e.abs() >= tol1 && fa.abs() > fb.abs() {
            let s = fb / fa;
            let (mut p, mut q);
            if a == c {
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                let qa = fa / fc;
                let r = fb / fc;
                p = s * (2.0 * xm * qa * (qa - r) - (b - a) * (r - 1.0));
                q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if p > 0.0 {
                q = -q;
            }
            p = p.abs();
            let min1 = 3.0 * xm * q - (tol1 * q).abs();
            let min2 = (e * q).abs();
            if 2.0 * p < min1.min(min2) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        b += if d.abs() > tol1 { d } else { tol1.copysign(xm) };
        fb = h(b);
        if fb.is_nan() {
            return Err(Error::NoConvergence("root function returned NaN"));
        }
    }
    Err(Error::NoConvergence("root finder iteration limit"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::f64::consts::FRAC_PI_2;

    fn solve<H: Fn(f64) -> f64>(h: H, lo: f64, hi: f64) -> f64 {
        let br = Bracket::from_fn(&h, lo, hi);
        find_root_bracketed(h, br, 1e-14).unwrap()
    }

    #[test]
    fn known_roots() {
        assert!((solve(|x| x * x - 2.0, 1.0, 2.0) - 2f64.sqrt()).abs() < 1e-13);
        assert!((solve(f64::cos, 1.0, 2.0) - FRAC_PI_2).abs() < 1e-13);
        assert!((solve(|x| x - 5.0, 0.0, 10.0) - 5.0).abs() < 1e-13);
    }

    #[test]
    fn endpoint_root() {
        assert_eq!(solve(|x| x - 1.0, 1.0, 3.0), 1.0);
    }

    #[test]
    fn invalid_bracket() {
        let h = |x: f64| x * x + 1.0;
        let br = Bracket::from_fn(&h, -1.0, 1.0);
        assert!(matches!(
            find_root_bracketed(h, br, 1e-12),
            Err(Error::InvalidBracket { .. })
        ));
        let h = |x: f64| x;
        let br = Bracket::from_fn(&h, 1.0, -1.0);
        assert!(find_root_bracketed(h, br, 1e-12).is_err());
    }

    #[test]
    fn discontinuous_sign_change() {
        let x = solve(|x| if x < 0.3 { -1.0 } else { 1.0 }, 0.0, 1.0);
        assert!((x - 0.3).abs() < 1e-13);
    }

    proptest! {
        #[test]
        fn stays_inside_bracket(r in -10.0f64..10.0, lo_off in 0.01f64..5.0, hi_off in 0.01f64..5.0, k in 1u32..6) {
            let h = move |x: f64| (x - r).powi(2 * k as i32 - 1) + 0.1 * (x - r);
            let lo = r - lo_off;
            let hi = r + hi_off;
            let br = Bracket::from_fn(&h, lo, hi);
            let x = find_root_bracketed(h, br, 1e-12).unwrap();
            prop_assert!(x >= lo && x <= hi);
            prop_assert!((x - r).abs() <= 1e-9 * r.abs().max(1.0));
        }
    }
}
