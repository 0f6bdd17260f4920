use crate::error::{Error, Result};

/// Stopping tolerance on `|f(α) - 1|` for the bisection solvers.
pub const ROOT_TOLERANCE: f64 = 1e-13;

/// Distance kept from open interval endpoints.
const NUDGE: f64 = 1e-15;

fn open_domain(name: &str, alpha: f64, lo: f64, hi: f64) -> Result<()> {
    if alpha > lo && alpha < hi {
        Ok(())
    } else {
        Err(Error::OutOfDomain(format!(
            "{name}: alpha = {alpha} outside ({lo}, {hi})"
        )))
    }
}

/// `2α / (1 - sqrt(α/(1-α))) + rα` on `(0, 1/2)`.
pub fn f_p(alpha: f64, r: usize) -> Result<f64> {
    open_domain("f_P", alpha, 0.0, 0.5)?;
    Ok(f_p_unchecked(alpha, r))
}

fn f_p_unchecked(alpha: f64, r: usize) -> f64 {
    let beta = (alpha / (1.0 - alpha)).sqrt();
    2.0 * alpha / (1.0 - beta) + r as f64 * alpha
}

/// `2α / (1 - sqrt(α/(1-(r+1)α)))` on `(0, 1/(r+2))`.
pub fn f_o(alpha: f64, r: usize) -> Result<f64> {
    open_domain("f_O", alpha, 0.0, 1.0 / (r as f64 + 2.0))?;
    Ok(f_o_unchecked(alpha, r))
}

fn f_o_unchecked(alpha: f64, r: usize) -> f64 {
    let beta = (alpha / (1.0 - (r as f64 + 1.0) * alpha)).sqrt();
    2.0 * alpha / (1.0 - beta)
}

/// `(1-α) / (1 + sqrt(α(1-α)))`.
pub fn gamma(alpha: f64) -> Result<f64> {
    open_domain("gamma", alpha, 0.0, 1.0)?;
    Ok((1.0 - alpha) / (1.0 + (alpha * (1.0 - alpha)).sqrt()))
}

/// `-1 + 2 sqrt(1-α) ((1-α)^{3/2} - α^{3/2})` on `[0, 1]`.
pub fn phi(alpha: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&alpha) {
        return Err(Error::OutOfDomain(format!("phi: alpha = {alpha} outside [0, 1]")));
    }
    let s = 1.0 - alpha;
    Ok(-1.0 + 2.0 * s.sqrt() * (s.powf(1.5) - alpha.powf(1.5)))
}

/// `(1-2α) sqrt(α(1-α)) - α` on `(0, 1/2)`.
pub fn psi(alpha: f64) -> Result<f64> {
    open_domain("psi", alpha, 0.0, 0.5)?;
    Ok((1.0 - 2.0 * alpha) * (alpha * (1.0 - alpha)).sqrt() - alpha)
}

/// Unique root of `f_P(α) = 1` in `(0, 1/2)`, for `r >= 1`.
pub fn solve_alpha_p(r: usize, tol: f64) -> Result<f64> {
    if r < 1 {
        return Err(Error::OutOfDomain("solve_alpha_P needs r >= 1".into()));
    }
    bisect_unit(|a| f_p_unchecked(a, r), NUDGE, 0.5 - NUDGE, tol)
}

/// Unique root of `f_O(α) = 1` in `(0, 1/(r+2))`.
///
/// `r = 0` (no pendent edges beyond the one at the attachment) is admitted.
pub fn solve_alpha_o(r: usize, tol: f64) -> Result<f64> {
    bisect_unit(|a| f_o_unchecked(a, r), NUDGE, 1.0 / (r as f64 + 2.0) - NUDGE, tol)
}

/// `α^{-1/k}`.
pub fn rho_from_alpha(alpha: f64, k: usize) -> Result<f64> {
    if !(alpha > 0.0) {
        return Err(Error::OutOfDomain(format!("alpha must be positive, got {alpha}")));
    }
    Ok(alpha.powf(-1.0 / k as f64))
}

/// Bisection for `f(α) = 1` with `f` increasing on `[lo, hi]`.
fn bisect_unit(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, tol: f64) -> Result<f64> {
    if !(tol > 0.0) {
        return Err(Error::OutOfDomain(format!("tolerance must be positive, got {tol}")));
    }
    if !(f(lo) < 1.0 && f(hi) > 1.0) {
        return Err(Error::OutOfDomain("root of f(α) = 1 is not bracketed".into()));
    }
    loop {
        let mid = 0.5 * (lo + hi);
        let value = f(mid) - 1.0;
        if value.abs() <= tol || mid <= lo || mid >= hi {
            return Ok(mid);
        }
        if value < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f_p_values() {
        assert!((f_p(0.2, 1).unwrap() - 1.0).abs() < 1e-15);
        assert!((f_p(0.2, 2).unwrap() - 1.2).abs() < 1e-15);
        assert!(f_p(1e-12, 3).unwrap() < 1e-11);
        assert!(f_p(0.5, 1).is_err());
        assert!(f_p(0.0, 1).is_err());
    }

    #[test]
    fn solve_p() {
        let a = solve_alpha_p(1, ROOT_TOLERANCE).unwrap();
        assert!((a - 0.2).abs() < 1e-13);
        let a2 = solve_alpha_p(2, ROOT_TOLERANCE).unwrap();
        assert!(a2 < a);
        assert!((f_p(a2, 2).unwrap() - 1.0).abs() <= ROOT_TOLERANCE);
        assert!(solve_alpha_p(0, ROOT_TOLERANCE).is_err());
    }

    #[test]
    fn solve_o_matches_cubic() {
        // at r = 1, f_O(α) = 1 reduces to α = (1 - 2α)^3
        let (mut lo, mut hi) = (0.0f64, 0.5f64);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid - (1.0 - 2.0 * mid).powi(3) < 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let a = solve_alpha_o(1, ROOT_TOLERANCE).unwrap();
        assert!((a - lo).abs() < 1e-12, "{a} vs {lo}");
        assert!((a - 0.205_122_7).abs() < 1e-7);
        assert!((rho_from_alpha(a, 3).unwrap() - 1.695_62).abs() < 1e-5);
        let identity = 1.0 - a - a / (1.0 - 2.0 * a).powi(2);
        assert!((a - identity).abs() < 1e-10);
        assert!(solve_alpha_o(3, ROOT_TOLERANCE).unwrap() < 0.2);
    }

    #[test]
    fn gamma_phi_psi() {
        assert!((gamma(0.2).unwrap() - 4.0 / 7.0).abs() < 1e-15);
        assert!((gamma(0.5).unwrap() - 1.0 / 3.0).abs() < 1e-15);
        assert!((gamma(1e-14).unwrap() - 1.0).abs() < 1e-6);
        assert!((phi(0.2).unwrap() - 0.12).abs() < 1e-14);
        assert_eq!(phi(0.0).unwrap(), 1.0);
        assert!(phi(1.5).is_err());
        assert!((psi(0.2).unwrap() - 0.04).abs() < 1e-15);
        assert!(psi(1e-6).unwrap() > 0.0);
        assert!(gamma(1.0).is_err() && psi(0.5).is_err());
    }

    #[test]
    fn rho_from_alpha_values() {
        assert_eq!(rho_from_alpha(1.0, 7).unwrap(), 1.0);
        assert!((rho_from_alpha(0.2, 3).unwrap() - 5f64.powf(1.0 / 3.0)).abs() < 1e-15);
        assert!((rho_from_alpha(0.25, 2).unwrap() - 2.0).abs() < 1e-15);
        assert!(rho_from_alpha(0.0, 3).is_err());
    }
}
