//! Sine integral and the oscillatory tail integral built on it.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;

/// Si(x) = ∫₀ˣ sin t / t dt.
pub fn sine_integral(x: f64) -> f64 {
    let t = x.abs();
    let si = if t == 0.0 {
        0.0
    } else if t <= 4.0 {
        // power series, alternating with fast decay for t ≤ 4
        let t2 = t * t;
        let mut term = t;
        let mut sum = t;
        let mut k = 0u32;
        loop {
            let a = (2 * k + 2) as f64;
            let b = (2 * k + 3) as f64;
            term *= -t2 / (a * b);
            let add = term / b;
            sum += add;
            if add.abs() <= 1e-17 * sum.abs() {
                break;
            }
            k += 1;
        }
        sum
    } else {
        // continued fraction for E1(i t), Lentz's method
        let tiny = 1e-300;
        let mut b = Complex64::new(1.0, t);
        let mut c = Complex64::new(1.0 / tiny, 0.0);
        let mut d = 1.0 / b;
        let mut h = d;
        for i in 2..200u32 {
            let a = -((i - 1) as f64).powi(2);
            b += 2.0;
            d = 1.0 / (a * d + b);
            c = b + a / c;
            let del = c * d;
            h *= del;
            if (del - 1.0).norm() < 1e-16 {
                break;
            }
        }
        h *= Complex64::new(t.cos(), -t.sin());
        FRAC_PI_2 + h.im
    };
    if x < 0.0 {
        -si
    } else {
        si
    }
}

/// ∫_T^∞ cos(a x)/x² dx for a ≥ 0, T > 0.
pub fn cosine_tail(a: f64, t: f64) -> f64 {
    let a = a.abs();
    (a * t).cos() / t - a * (FRAC_PI_2 - sine_integral(a * t))
}

/// ∫_{|x|>T} |Σ_k s_k e^{2πi x e_k}|² / (4π² x²) dx, the exact L₂ tail of the inverse Fourier
/// transform of a union of intervals whose signed endpoints are (e_k, s_k).
///
/// Pairwise endpoint differences are passed through `diff` so callers can supply them exactly.
pub fn interval_kernel_l2_tail(count: usize, sign: impl Fn(usize) -> f64, diff: impl Fn(usize, usize) -> f64, t: f64) -> f64 {
    let mut acc = 0.0;
    for k in 0..count {
        acc += cosine_tail(0.0, t);
        for l in (k + 1)..count {
            acc += 2.0 * sign(k) * sign(l) * cosine_tail(2.0 * PI * diff(k, l), t);
        }
    }
    acc * 2.0 / (4.0 * PI * PI)
}

#[cfg(test)]
mod tests {
    use super::*;

    // reference values of Si from standard tables
    #[test]
    fn matches_tabulated_values() {
        let table = [
            (0.5, 0.493_107_418_043_066_6),
            (1.0, 0.946_083_070_367_183_0),
            (2.0, 1.605_412_976_802_694_8),
            (4.0, 1.758_203_138_949_053_1),
            (5.0, 1.549_931_244_944_674_1),
            (10.0, 1.658_347_594_218_874_0),
            (100.0, 1.562_225_466_889_056_3),
        ];
        for (x, want) in table {
            assert!((sine_integral(x) - want).abs() < 1e-14, "Si({x})");
            assert!((sine_integral(-x) + want).abs() < 1e-14);
        }
    }

    #[test]
    fn continuous_across_the_branch_switch() {
        let below = sine_integral(4.0 - 1e-9);
        let above = sine_integral(4.0 + 1e-9);
        let slope = 4f64.sin() / 4.0;
        assert!((above - below - 2e-9 * slope).abs() < 1e-14);
    }

    #[test]
    fn cosine_tail_limits() {
        // a = 0 gives ∫_T^∞ x^{-2} = 1/T
        assert!((cosine_tail(0.0, 4.0) - 0.25).abs() < 1e-15);
        // large a·T: the tail is O(1/(a T²))
        assert!(cosine_tail(1e3, 10.0).abs() < 1e-4);
    }

    #[test]
    fn cosine_tail_against_quadrature() {
        let (a, t) = (1.7, 3.0);
        // Simpson on [T, 400] plus the asymptotic remainder sin(aL)/(aL²) estimate is negligible
        let upper = 400.0;
        let n = 400_000;
        let h = (upper - t) / n as f64;
        let f = |x: f64| (a * x).cos() / (x * x);
        let mut s = f(t) + f(upper);
        for i in 1..n {
            let x = t + i as f64 * h;
            s += if i % 2 == 1 { 4.0 * f(x) } else { 2.0 * f(x) };
        }
        s *= h / 3.0;
        let remainder = -(a * upper).sin() / (a * upper * upper);
        assert!((cosine_tail(a, t) - (s + remainder)).abs() < 1e-8);
    }
}
