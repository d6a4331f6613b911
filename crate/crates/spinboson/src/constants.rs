//! Physical constants and the small set of fixed numerical conventions.

/// Reduced Planck constant, J s (CODATA 2018 exact).
pub const HBAR: f64 = 1.054_571_817e-34;

/// Boltzmann constant, J/K (CODATA 2018 exact).
pub const KB: f64 = 1.380_649e-23;

/// Conversion from a frequency quoted in "Hz" to the internal angular unit.
///
/// All internal frequencies are angular (rad/s). Quoted "Hz" values in the
/// preset provenance are read as rad/s directly, so this constant is 1.0.
/// Set mentally to `2*PI` if a cycles-per-second reading is wanted instead;
/// every result depends only on frequency ratios and on `hbar*omega/(kB*T)`,
/// so the choice is quarantined here.
pub const HZ_TO_ANGULAR: f64 = 1.0;

/// Coefficient `c` in `Im(pi W) = c * pi * sinh(omega/omega_c)`.
///
/// The closed form of `W` leaves the branch of `Ci(-i m)` open. Taking the
/// cosine-integral structure as the real hyperbolic value `Chi(m)` leaves the
/// explicit `(i pi/2) sinh(m)` term as the only imaginary contribution, so
/// `c = 1/2`. This keeps `Theta(omega) = Im W + exp(-m) = (3 exp(-m) + exp(m))/4`
/// strictly positive for all `m >= 0` and makes `|Im W|` shrink as the cutoff
/// grows.
pub const W_IM_SINH_COEFF: f64 = 0.5;

/// Upper integration limit for bath integrals of a decaying density,
/// as a multiple of the cutoff frequency.
pub const DECAYING_SUPPORT_OVER_CUTOFF: f64 = 50.0;

/// Upper integration limit for bath integrals of finite-cutoff densities
/// whose direct-coupling term grows like `omega * cosh(omega/omega_c)`
/// (models A, C, D in the F variant), as a multiple of the cutoff.
///
/// The growing tail is an artifact of the effective-density inversion far
/// outside the original bath support; integrating it to 50 cutoffs would
/// diverge. Three cutoffs keeps every plotted and simulated band inside the
/// domain while the correlation integrals stay finite. The same limit is used
/// by the coefficient builder, the correlation function and the analytic
/// dephasing reference, so all comparisons are internally consistent.
pub const GROWING_SUPPORT_OVER_CUTOFF: f64 = 3.0;

/// Environment variable holding the memory budget in bytes for the augmented
/// tensor and the exact-diagonalisation oracle.
pub const MEMORY_BUDGET_ENV: &str = "SPINBOSON_MEMORY_BUDGET";

/// Default memory budget in bytes when the environment variable is unset.
pub const DEFAULT_MEMORY_BUDGET: usize = 2 * 1024 * 1024 * 1024;

/// Dimensionless `hbar / (kB T)` multiplied by an angular frequency scale.
pub fn beta_hbar_scaled(temperature_k: f64, scale: f64) -> f64 {
    HBAR * scale / (KB * temperature_k)
}

/// `hbar / (kB T)` in seconds.
pub fn beta_hbar_seconds(temperature_k: f64) -> f64 {
    HBAR / (KB * temperature_k)
}

/// Memory budget in bytes, from the environment or the default.
pub fn memory_budget_bytes() -> usize {
    std::env::var(MEMORY_BUDGET_ENV)
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .unwrap_or(DEFAULT_MEMORY_BUDGET)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn beta_hbar_at_room_temperature() {
        // 10^12 rad/s at 300 K sits deep in the high-temperature regime.
        let b = beta_hbar_scaled(300.0, 1.0e12);
        assert!((b - 2.5465e-2).abs() < 1e-5, "beta_hbar = {b}");
    }

    #[test]
    fn theta_positive_for_chosen_branch() {
        // (3 e^-m + e^m)/4 has minimum sqrt(3)/2 at m = ln(3)/2.
        for i in 0..2000 {
            let m = 0.01 * f64::from(i);
            let theta = W_IM_SINH_COEFF * m.sinh() + (-m).exp();
            assert!(theta > 0.86, "theta({m}) = {theta}");
        }
    }
}
