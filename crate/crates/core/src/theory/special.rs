//! Numeric CDF evaluators used as the independent oracle for the tail
//! inequalities: the Gaussian upper tail via `erfc` and the chi-square
//! upper tail via the regularized incomplete gamma function (series for
//! small arguments, Lentz continued fraction otherwise).

use crate::math;

const MAX_ITER: usize = 500;
const EPS: f64 = 1e-14;
const TINY: f64 = 1e-300;

/// `P(Z >= t)` for standard normal `Z`.
pub fn normal_upper_tail(t: f64) -> f64 {
    0.5 * math::erfc(t / core::f64::consts::SQRT_2)
}

/// `P(X >= x)` for `X ~ chi-square(dof)`. `None` if the continued
/// fraction or series fails to converge.
pub fn chisq_upper_tail(dof: f64, x: f64) -> Option<f64> {
    if dof <= 0.0 || dof.is_nan() || x < 0.0 {
        return None;
    }
    gamma_q(dof / 2.0, x / 2.0)
}

/// Regularized upper incomplete gamma `Q(a, x) = Gamma(a, x) / Gamma(a)`.
fn gamma_q(a: f64, x: f64) -> Option<f64> {
    if x == 0.0 {
        return Some(1.0);
    }
    if x < a + 1.0 {
        gamma_p_series(a, x).map(|p| 1.0 - p)
    } else {
        gamma_q_continued_fraction(a, x)
    }
}

/// Lower regularized incomplete gamma by its power series.
fn gamma_p_series(a: f64, x: f64) -> Option<f64> {
    let mut ap = a;
    let mut term = 1.0 / a;
    let mut sum = term;
    for _ in 0..MAX_ITER {
        ap += 1.0;
        term *= x / ap;
        sum += term;
        if math::abs(term) < math::abs(sum) * EPS {
            let ln_prefactor = a * math::ln(x) - x - math::ln_gamma(a);
            return Some(sum * math::exp(ln_prefactor));
        }
    }
    None
}

/// Upper regularized incomplete gamma by the modified Lentz continued
/// fraction.
fn gamma_q_continued_fraction(a: f64, x: f64) -> Option<f64> {
    let mut b = x + 1.0 - a;
    let mut c = 1.0 / TINY;
    let mut d = 1.0 / b;
    let mut h = d;
    for i in 1..=MAX_ITER {
        let an = -(i as f64) * (i as f64 - a);
        b += 2.0;
        d = an * d + b;
        if math::abs(d) < TINY {
            d = TINY;
        }
        c = b + an / c;
        if math::abs(c) < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        let del = d * c;
        h *= del;
        if math::abs(del - 1.0) < EPS {
            let ln_prefactor = a * math::ln(x) - x - math::ln_gamma(a);
            return Some(math::exp(ln_prefactor) * h);
        }
    }
    None
}
