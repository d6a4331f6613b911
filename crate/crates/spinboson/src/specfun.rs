//! Special functions behind the finite-cutoff spectral densities: the
//! hyperbolic sine integral, the cosine-integral structure, the complex
//! kernel `W(omega; omega_c)`, `Theta`, and the assembled `R(omega)`.
//!
//! All evaluation is double precision closed forms (series, continued
//! fractions, scaled exponential integrals); the quadrature oracles in
//! [`crate::oracle`] provide the independent cross-checks.

use crate::constants::W_IM_SINH_COEFF;
use crate::error::{Error, Result};
use crate::Complex;

pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Dimensionless ratio `m = omega / omega_c` of two angular frequencies.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CutoffRatio(f64);

impl CutoffRatio {
    pub fn new(m: f64) -> Result<Self> {
        if !m.is_finite() || m < 0.0 {
            return Err(Error::Domain(format!(
                "cutoff ratio must be finite and non-negative, got {m}"
            )));
        }
        Ok(Self(m))
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

fn check_positive(x: f64, name: &str) -> Result<()> {
    if !x.is_finite() || x <= 0.0 {
        return Err(Error::Domain(format!("{name} must be finite and > 0, got {x}")));
    }
    Ok(())
}

// sum of m^(2k+1) / ((2k+1)(2k+1)!), the defining series of Shi
fn shi_series(m: f64) -> f64 {
    let mut sum = 0.0;
    let mut pow = m; // m^(2k+1) / (2k+1)!
    let mut k = 0u32;
    loop {
        sum += pow / f64::from(2 * k + 1);
        k += 1;
        pow *= m * m / (f64::from(2 * k) * f64::from(2 * k + 1));
        if pow < 1e-18 * sum + 1e-300 || k > 80 {
            return sum;
        }
    }
}

// sum of m^(2k) / (2k (2k)!) for k >= 1, the series part of Chi
fn chi_series_part(m: f64) -> f64 {
    let mut sum = 0.0;
    let mut pow = 1.0; // m^(2k) / (2k)!
    for k in 1..90u32 {
        pow *= m * m / (f64::from(2 * k - 1) * f64::from(2 * k));
        let term = pow / f64::from(2 * k);
        sum += term;
        if term < 1e-18 * sum {
            break;
        }
    }
    sum
}

// sum of (-1)^k m^(2k) / (2k (2k)!) for k >= 1, the series part of Ci
fn ci_series_part(m: f64) -> f64 {
    let mut sum = 0.0;
    let mut pow = 1.0;
    for k in 1..90u32 {
        pow *= -m * m / (f64::from(2 * k - 1) * f64::from(2 * k));
        let term = pow / f64::from(2 * k);
        sum += term;
        if term.abs() < 1e-18 {
            break;
        }
    }
    sum
}

/// `exp(x) * E1(x)` for `x > 0`.
fn e1_scaled(x: f64) -> f64 {
    if x <= 1.0 {
        let mut sum = 0.0;
        let mut pow = 1.0;
        for k in 1..40u32 {
            pow *= -x / f64::from(k);
            let term = -pow / f64::from(k);
            sum += term;
            if term.abs() < 1e-18 * sum.abs().max(1e-30) {
                break;
            }
        }
        (-EULER_GAMMA - x.ln() + sum) * x.exp()
    } else {
        // modified Lentz on E1(x) = e^-x / (x + 1 - 1/(x + 3 - 4/(x + 5 - ...)))
        let mut b = x + 1.0;
        let mut c = 1e300;
        let mut d = 1.0 / b;
        let mut h = d;
        for i in 1..400u32 {
            let a = -f64::from(i) * f64::from(i);
            b += 2.0;
            d = 1.0 / (a * d + b);
            c = b + a / c;
            let del = c * d;
            h *= del;
            if (del - 1.0).abs() < 1e-16 {
                break;
            }
        }
        h
    }
}

/// `exp(-x) * Ei(x)` for `x > 0`.
fn ei_scaled(x: f64) -> f64 {
    if x <= 40.0 {
        let mut sum = 0.0;
        let mut pow = 1.0;
        for k in 1..180u32 {
            pow *= x / f64::from(k);
            let term = pow / f64::from(k);
            sum += term;
            if term < 1e-18 * sum {
                break;
            }
        }
        (EULER_GAMMA + x.ln() + sum) * (-x).exp()
    } else {
        // asymptotic sum of k! / x^(k+1), truncated at the smallest term
        let mut sum = 0.0;
        let mut term = 1.0 / x;
        let mut k = 0f64;
        loop {
            sum += term;
            k += 1.0;
            let next = term * k / x;
            if next >= term || next < 1e-18 * sum {
                break;
            }
            term = next;
        }
        sum
    }
}

/// Hyperbolic sine integral `Shi(m) = integral of sinh(t)/t over [0, m]`.
pub fn shi(m: CutoffRatio) -> Result<f64> {
    let m = m.value();
    if m == 0.0 {
        return Ok(0.0);
    }
    if m > 700.0 {
        return Err(Error::Domain(format!("shi({m}) overflows f64")));
    }
    if m <= 2.0 {
        Ok(shi_series(m))
    } else {
        // Shi = (Ei(m) + E1(m)) / 2
        Ok(0.5 * (m.exp() * ei_scaled(m) + (-m).exp() * e1_scaled(m)))
    }
}

/// Hyperbolic cosine integral `Chi(m)` (internal; enters `Re W`).
fn chi_hyp(m: f64) -> f64 {
    if m <= 2.0 {
        EULER_GAMMA + m.ln() + chi_series_part(m)
    } else {
        0.5 * (m.exp() * ei_scaled(m) - (-m).exp() * e1_scaled(m))
    }
}

/// The cosine-integral quantity `gamma + ln(m) + integral of (cos t - 1)/t over [0, m]`.
///
/// The leading constant is the Euler-Mascheroni constant, which makes this
/// the standard cosine integral `Ci(m)`.
pub fn chi_term(m: CutoffRatio) -> Result<f64> {
    let m = m.value();
    check_positive(m, "chi_term argument")?;
    if m <= 8.0 {
        Ok(EULER_GAMMA + m.ln() + ci_series_part(m))
    } else {
        // Ci(m) = -Re E1(i m), by complex continued fraction
        let z = Complex::new(0.0, m);
        let tiny = Complex::new(1e-300, 0.0);
        let mut b = z + 1.0;
        let mut c = Complex::new(1e300, 0.0);
        let mut d = 1.0 / b;
        let mut h = d;
        let mut converged = false;
        for i in 1..2000u32 {
            let a = Complex::new(-f64::from(i) * f64::from(i), 0.0);
            b += 2.0;
            d = a * d + b;
            if d.norm() < 1e-300 {
                d = tiny;
            }
            c = b + a / c;
            if c.norm() < 1e-300 {
                c = tiny;
            }
            d = 1.0 / d;
            let del = c * d;
            h *= del;
            if (del - 1.0).norm() < 1e-16 {
                converged = true;
                break;
            }
        }
        if !converged {
            return Err(Error::Domain(format!(
                "cosine integral continued fraction failed to converge at m = {m}"
            )));
        }
        // E1(i m) = e^{-i m} * h ; Ci = -Re E1(i m)
        let e1_im = Complex::new(0.0, -m).exp() * h;
        Ok(-e1_im.re)
    }
}

/// Real part of `W`: `-(1/pi) * integral of sin(m x)/(1+x^2) over [0, inf)`,
/// evaluated through its closed form `(Chi sinh - Shi cosh)/pi`.
pub fn w_real(m: f64) -> f64 {
    if m == 0.0 {
        return 0.0;
    }
    let f = if m <= 2.0 {
        shi_series(m) * m.cosh() - chi_hyp(m) * m.sinh()
    } else {
        // Shi cosh - Chi sinh = (e^-m Ei(m) + e^m E1(m)) / 2, no cancellation
        0.5 * (ei_scaled(m) + e1_scaled(m))
    };
    -f / std::f64::consts::PI
}

/// Imaginary part of `W` under the fixed branch: `Im(pi W) = (pi/2) sinh(m)`.
pub fn w_imag(m: f64) -> f64 {
    W_IM_SINH_COEFF * m.sinh()
}

/// The complex kernel `W(omega; omega_c)` with `m = omega/omega_c`.
pub fn w_function(omega: f64, omega_c: f64) -> Result<Complex> {
    check_positive(omega, "omega")?;
    check_positive(omega_c, "omega_c")?;
    let m = omega / omega_c;
    if m > 700.0 {
        return Err(Error::Domain(format!("w_function overflows at m = {m}")));
    }
    let w = Complex::new(w_real(m), w_imag(m));
    if !w.re.is_finite() || !w.im.is_finite() {
        return Err(Error::Domain(format!("w_function not finite at m = {m}")));
    }
    Ok(w)
}

/// `Theta(omega) = Im W(omega) + exp(-omega/omega_c)`.
///
/// With the fixed branch this equals `(3 exp(-m) + exp(m))/4 > 0`.
pub fn theta(omega: f64, omega_c: f64) -> Result<f64> {
    check_positive(omega, "omega")?;
    check_positive(omega_c, "omega_c")?;
    let m = omega / omega_c;
    theta_of_ratio(m)
}

pub(crate) fn theta_of_ratio(m: f64) -> Result<f64> {
    if m > 700.0 {
        return Err(Error::Domain(format!("theta overflows at m = {m}")));
    }
    Ok(w_imag(m) + (-m).exp())
}

/// `R(omega) = -(pi i / omega) exp(-omega/omega_c) - (pi/omega) W(omega)`.
pub fn r_function(omega: f64, omega_c: f64) -> Result<Complex> {
    let w = w_function(omega, omega_c)?;
    let m = omega / omega_c;
    let pi = std::f64::consts::PI;
    Ok(Complex::new(0.0, -pi * (-m).exp() / omega) - w * (pi / omega))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quad;
    use approx::{assert_abs_diff_eq, assert_relative_eq};
    use proptest::prelude::*;

    fn ratio(m: f64) -> CutoffRatio {
        CutoffRatio::new(m).unwrap()
    }

    #[test]
    fn shi_at_zero_and_leading_term() {
        assert_eq!(shi(ratio(0.0)).unwrap(), 0.0);
        let m = 1e-6;
        let v = shi(ratio(m)).unwrap();
        assert!((v - m).abs() < 1e-18, "shi({m}) - m = {}", v - m);
        assert!(v > m);
    }

    #[test]
    fn shi_rejects_bad_input() {
        assert!(CutoffRatio::new(-0.5).is_err());
        assert!(CutoffRatio::new(f64::NAN).is_err());
        assert!(shi(ratio(800.0)).is_err());
    }

    #[test]
    fn shi_one_matches_quadrature_oracle() {
        // independent oracle: adaptive quadrature of the defining integral
        let oracle = quad::adaptive(
            &|t: f64| if t == 0.0 { 1.0 } else { t.sinh() / t },
            0.0,
            1.0,
            1e-13,
            &[],
        )
        .unwrap();
        let v = shi(ratio(1.0)).unwrap();
        assert_relative_eq!(v, oracle, epsilon = 1e-12);
        // frozen from the oracle
        assert_relative_eq!(v, 1.057_250_875_375_729_5, epsilon = 1e-13);
    }

    #[test]
    fn shi_large_argument_consistent_with_quadrature() {
        for &m in &[2.5f64, 5.0, 12.0] {
            let oracle = quad::adaptive(
                &|t: f64| if t == 0.0 { 1.0 } else { t.sinh() / t },
                0.0,
                m,
                1e-11 * m.exp(),
                &[],
            )
            .unwrap();
            assert_relative_eq!(shi(ratio(m)).unwrap(), oracle, max_relative = 1e-11);
        }
    }

    #[test]
    fn chi_term_small_argument_gamma_limit() {
        let m = 1e-8;
        let v = chi_term(ratio(m)).unwrap();
        assert_abs_diff_eq!(v - m.ln(), EULER_GAMMA, epsilon = 1e-8);
    }

    #[test]
    fn chi_term_rejects_nonpositive() {
        assert!(chi_term(ratio(0.0)).is_err());
    }

    #[test]
    fn chi_term_one_matches_quadrature_pieces() {
        // gamma + 0 + quadrature of (cos t - 1)/t over [0, 1]
        let tail = quad::adaptive(
            &|t: f64| if t == 0.0 { 0.0 } else { (t.cos() - 1.0) / t },
            0.0,
            1.0,
            1e-13,
            &[],
        )
        .unwrap();
        let v = chi_term(ratio(1.0)).unwrap();
        assert_relative_eq!(v, EULER_GAMMA + tail, epsilon = 1e-12);
        // frozen from the oracle
        assert_relative_eq!(v, 0.337_403_922_900_968_35, epsilon = 1e-12);
    }

    #[test]
    fn chi_term_decomposition_between_half_and_two() {
        // chi_term(2) = chi_term(0.5) - ln(0.5) + ln(2) + quadrature over [0.5, 2]
        let bridge = quad::adaptive(&|t: f64| (t.cos() - 1.0) / t, 0.5, 2.0, 1e-13, &[]).unwrap();
        let lhs = chi_term(ratio(2.0)).unwrap();
        let rhs = chi_term(ratio(0.5)).unwrap() - 0.5f64.ln() + 2.0f64.ln() + bridge;
        assert_relative_eq!(lhs, rhs, epsilon = 1e-11);
    }

    #[test]
    fn chi_term_large_argument_matches_tail_integral() {
        // Ci(m) = -integral of cos(t)/t over [m, inf): independent oscillatory oracle
        for &m in &[9.0f64, 12.0, 25.0, 60.0] {
            let oracle = -quad::cos_over_t_tail(m, 1e-12).unwrap();
            assert_abs_diff_eq!(chi_term(ratio(m)).unwrap(), oracle, epsilon = 1e-10);
        }
    }

    #[test]
    fn w_vanishes_at_zero_ratio() {
        let w = w_function(1.0, 1e10).unwrap();
        assert!(w.norm() < 1e-9, "|W| = {}", w.norm());
    }

    #[test]
    fn w_real_matches_oscillatory_oracle() {
        // Re W = -(1/pi) * integral of sin(m x)/(1+x^2)
        for &m in &[0.05f64, 0.25, 1.0, 3.0, 5.0] {
            let oracle = -quad::sin_over_one_plus_x2(m, 1e-11).unwrap() / std::f64::consts::PI;
            assert_abs_diff_eq!(w_real(m), oracle, epsilon = 1e-9);
        }
        // frozen value at m = 1 from the oracle
        assert_relative_eq!(w_real(1.0), -0.205_870_459_379_925_57, epsilon = 1e-9);
    }

    #[test]
    fn w_imag_shrinks_with_cutoff() {
        let omega = 1.0;
        let cuts = [4.0, 5.0, 10.0, 25.0, 100.0];
        let mut last = f64::INFINITY;
        for &c in &cuts {
            let w = w_function(omega, c * omega).unwrap();
            assert!(w.im.abs() < last);
            last = w.im.abs();
        }
        // Fig-1-style pairwise statement
        let w4 = w_function(1.0, 4.0).unwrap();
        let w10 = w_function(1.0, 10.0).unwrap();
        assert!(w10.im.abs() < w4.im.abs());
    }

    #[test]
    fn theta_limits_and_composition() {
        let t = theta(1.0, 1e8).unwrap();
        assert!((t - 1.0).abs() < 1e-6);
        // composition at m = 0.25
        let w = w_function(0.25, 1.0).unwrap();
        let th = theta(0.25, 1.0).unwrap();
        assert_relative_eq!(th, w.im + (-0.25f64).exp(), epsilon = 1e-14);
    }

    #[test]
    fn theta_continuity_on_grid() {
        let delta = 1.0;
        let mut prev: Option<f64> = None;
        for i in 1..=2000 {
            let omega = 0.1 * delta + (20.0 - 0.1) * delta * f64::from(i) / 2000.0;
            let t = theta(omega, 4.0 * delta).unwrap();
            if let Some(p) = prev {
                assert!((t - p).abs() < 2e-1, "jump at omega = {omega}");
            }
            prev = Some(t);
        }
    }

    #[test]
    fn r_assembly_identity() {
        let pi = std::f64::consts::PI;
        for &(omega, omega_c) in &[(1.0, 4.0), (2.5, 4.0), (0.3, 11.0), (7.0, 3.0)] {
            let m: f64 = omega / omega_c;
            let r = r_function(omega, omega_c).unwrap();
            let w = w_function(omega, omega_c).unwrap();
            let residue = r + Complex::new(0.0, pi * (-m).exp() / omega) + w * (pi / omega);
            assert!(residue.norm() < 1e-14, "assembly residue {}", residue.norm());
            // two-term split of the imaginary part
            assert_relative_eq!(
                r.im,
                -pi * (-m).exp() / omega - pi * w.im / omega,
                max_relative = 1e-13
            );
        }
    }

    #[test]
    fn r_small_ratio_limit() {
        let omega = 1.0;
        let r = r_function(omega, 1e10).unwrap();
        let target = Complex::new(0.0, -std::f64::consts::PI / omega);
        assert!((r - target).norm() / target.norm() < 1e-8);
    }

    proptest! {
        #[test]
        fn shi_matches_series_below_two(m in 1e-6f64..2.0) {
            // independent in-test series evaluation
            let mut sum = 0.0;
            let mut pow = m;
            let mut k = 0u32;
            while k < 40 {
                sum += pow / f64::from(2 * k + 1);
                k += 1;
                pow *= m * m / (f64::from(2 * k) * f64::from(2 * k + 1));
            }
            let v = shi(CutoffRatio::new(m).unwrap()).unwrap();
            prop_assert!((v - sum).abs() <= 1e-12 * sum.abs().max(1.0));
        }

        #[test]
        fn w_components_finite(m in 1e-8f64..300.0) {
            let w = w_function(m, 1.0).unwrap();
            prop_assert!(w.re.is_finite() && w.im.is_finite());
            prop_assert!(w.re <= 0.0);
        }
    }
}
