//! Continuum checks for the middle-row slice of the walk.
//!
//! The slice probability at integer position `x'` and time `t` extends to
//! positive real arguments through the gamma function:
//! `P(x, t) = exp(lnG(3t+1) - lnG(t+x+1) - lnG(t+1) - lnG(t-x+1) - 3t ln 3)`.
//! Two independent routes estimate its derivatives:
//!
//! * `fd`: central differences of the exact rational lattice values, with
//!   unit spacing in both `x'` and `t`; differences are taken in exact
//!   arithmetic and converted to `f64` afterwards, so there is no
//!   cancellation noise.
//! * `digamma`: closed-form logarithmic derivatives of the gamma expression,
//!   evaluated with [`crate::special`].
//!
//! The diffusion residual `dP/dt - 1/2 * d2P/dx2` shrinks relative to
//! `dP/dt` as `t` grows on both routes, which is the module's verdict
//! criterion.

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

use crate::ratio::ratio_to_f64;
use crate::special::{digamma, ln_gamma, trigamma};
use crate::walk::prob_slice;

/// Floor for the denominator of `relative_residual`, guarding the exact-zero
/// derivative case without disturbing any realistic magnitude.
const RESIDUAL_EPS: f64 = 1e-300;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum HeatError {
    #[error("continuum time must be positive and finite, got {0}")]
    BadTime(f64),
    #[error("position x={x} leaves the domain |x| < t + 1 at t={t}")]
    OutOfDomain { x: f64, t: f64 },
    #[error("position {x_prime} is outside the layer radius t={t}")]
    OutsideLayer { x_prime: i64, t: u64 },
    #[error("derivatives need t >= {min}, got t={t}")]
    TimeTooSmall { t: u64, min: u64 },
    #[error("finite differences need |x'| <= t - 1, got x'={x_prime} at t={t}")]
    FdBoundary { x_prime: i64, t: u64 },
    #[error("residual sweep needs at least one time value")]
    EmptyTimes,
    #[error("residual sweep times must be >= 2, got {0}")]
    SweepTimeTooSmall(u64),
    #[error("x window {window} must be smaller than the smallest time {t_min}")]
    WindowTooWide { window: u64, t_min: u64 },
}

/// Which route produced a derivative estimate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DerivMethod {
    FiniteDifference,
    Digamma,
}

/// Slice value and derivative estimates at one lattice point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivativeRecord {
    pub x_prime: i64,
    pub t: u64,
    pub p: f64,
    pub dpdt: f64,
    pub d2pdx2: f64,
    pub method: DerivMethod,
}

impl DerivativeRecord {
    /// Diffusion defect `dP/dt - 1/2 * d2P/dx2`.
    pub fn residual(&self) -> f64 {
        self.dpdt - 0.5 * self.d2pdx2
    }

    /// Defect relative to `|dP/dt|`, floored at 1e-300 in the denominator.
    pub fn relative_residual(&self) -> f64 {
        self.residual().abs() / self.dpdt.abs().max(RESIDUAL_EPS)
    }
}

/// The two routes' records at the same lattice point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResidualPair {
    pub fd: DerivativeRecord,
    pub digamma: DerivativeRecord,
}

impl ResidualPair {
    pub fn record(&self, method: DerivMethod) -> &DerivativeRecord {
        match method {
            DerivMethod::FiniteDifference => &self.fd,
            DerivMethod::Digamma => &self.digamma,
        }
    }
}

/// Per-time aggregates over the swept window, from the digamma route.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeSummary {
    pub t: u64,
    /// Least-squares slope of `dP/dt` against `d2P/dx2` through the origin;
    /// tends to the diffusion constant 1/2.
    pub fitted_d: f64,
    pub max_rel_residual: f64,
}

/// Output of [`residual_sweep`]: one [`ResidualPair`] per lattice point,
/// grouped by ascending `t`, plus per-time summaries.
#[derive(Debug, Clone, PartialEq)]
pub struct ResidualReport {
    pairs: Vec<ResidualPair>,
    summaries: Vec<TimeSummary>,
    x_window: u64,
}

impl ResidualReport {
    pub fn pairs(&self) -> &[ResidualPair] {
        &self.pairs
    }

    pub fn summaries(&self) -> &[TimeSummary] {
        &self.summaries
    }

    pub fn x_window(&self) -> u64 {
        self.x_window
    }

    /// Relative residual at the center `x' = 0` for each time, ascending.
    pub fn mode_relative_residuals(&self, method: DerivMethod) -> Vec<(u64, f64)> {
        self.pairs
            .iter()
            .filter(|pair| pair.record(method).x_prime == 0)
            .map(|pair| {
                let record = pair.record(method);
                (record.t, record.relative_residual())
            })
            .collect()
    }

    /// True when the center residual strictly shrinks along the time list.
    /// A single time counts as decreasing.
    pub fn is_mode_residual_strictly_decreasing(&self, method: DerivMethod) -> bool {
        self.mode_relative_residuals(method)
            .windows(2)
            .all(|w| w[1].1 < w[0].1)
    }
}

/// Continuum slice probability at real position `x` and time `t > 0`.
///
/// The domain is `|x| < t + 1`, where all gamma arguments stay positive.
pub fn p_continuous(x: f64, t: f64) -> Result<f64, HeatError> {
    if !t.is_finite() || t <= 0.0 {
        return Err(HeatError::BadTime(t));
    }
    if !x.is_finite() || t + x + 1.0 <= 0.0 || t - x + 1.0 <= 0.0 {
        return Err(HeatError::OutOfDomain { x, t });
    }
    let ln3 = 3.0_f64.ln();
    let log_p = ln_gamma(3.0 * t + 1.0)
        - ln_gamma(t + x + 1.0)
        - ln_gamma(t + 1.0)
        - ln_gamma(t - x + 1.0)
        - 3.0 * t * ln3;
    Ok(log_p.exp())
}

/// Closed-form derivatives of the gamma expression at a lattice point.
pub fn derivatives_digamma(x_prime: i64, t: u64) -> Result<DerivativeRecord, HeatError> {
    if t < 1 {
        return Err(HeatError::TimeTooSmall { t, min: 1 });
    }
    let t_signed = i64::try_from(t).expect("t fits in i64");
    if x_prime.abs() > t_signed {
        return Err(HeatError::OutsideLayer { x_prime, t });
    }
    let x = x_prime as f64;
    let tf = t as f64;
    let a = 3.0 * tf + 1.0;
    let plus = tf + x + 1.0;
    let center = tf + 1.0;
    let minus = tf - x + 1.0;
    let ln3 = 3.0_f64.ln();
    // The plus/minus terms are grouped with a commutative addition before
    // any subtraction, so every output is bit-identical under x -> -x.
    let p = (ln_gamma(a) - (ln_gamma(plus) + ln_gamma(minus)) - ln_gamma(center) - 3.0 * tf * ln3)
        .exp();
    let dpdt =
        p * (3.0 * digamma(a) - (digamma(plus) + digamma(minus)) - digamma(center) - 3.0 * ln3);
    let grad = digamma(minus) - digamma(plus);
    let d2pdx2 = p * (grad * grad - (trigamma(plus) + trigamma(minus)));
    Ok(DerivativeRecord {
        x_prime,
        t,
        p,
        dpdt,
        d2pdx2,
        method: DerivMethod::Digamma,
    })
}

/// First spatial derivative `P * (psi(t-x'+1) - psi(t+x'+1))` of the gamma
/// expression; exactly zero at the center by symmetry.
pub fn gradient_digamma(x_prime: i64, t: u64) -> Result<f64, HeatError> {
    if t < 1 {
        return Err(HeatError::TimeTooSmall { t, min: 1 });
    }
    let t_signed = i64::try_from(t).expect("t fits in i64");
    if x_prime.abs() > t_signed {
        return Err(HeatError::OutsideLayer { x_prime, t });
    }
    let x = x_prime as f64;
    let tf = t as f64;
    let plus = tf + x + 1.0;
    let minus = tf - x + 1.0;
    let ln3 = 3.0_f64.ln();
    let p = (ln_gamma(3.0 * tf + 1.0)
        - (ln_gamma(plus) + ln_gamma(minus))
        - ln_gamma(tf + 1.0)
        - 3.0 * tf * ln3)
        .exp();
    Ok(p * (digamma(minus) - digamma(plus)))
}

/// Central-difference derivatives from exact rational lattice values.
///
/// Requires `t >= 2` and `|x'| <= t - 1` so the five-point stencil stays on
/// the populated part of the lattice. Differences are formed over the
/// rationals and only the final values are rounded to `f64`.
pub fn derivatives_fd(x_prime: i64, t: u64) -> Result<DerivativeRecord, HeatError> {
    if t < 2 {
        return Err(HeatError::TimeTooSmall { t, min: 2 });
    }
    let t_signed = i64::try_from(t).expect("t fits in i64");
    if x_prime.abs() > t_signed - 1 {
        return Err(HeatError::FdBoundary { x_prime, t });
    }
    let p = prob_slice(x_prime, t).into_ratio();
    let p_next = prob_slice(x_prime, t + 1).into_ratio();
    let p_prev = prob_slice(x_prime, t - 1).into_ratio();
    let p_left = prob_slice(x_prime - 1, t).into_ratio();
    let p_right = prob_slice(x_prime + 1, t).into_ratio();
    let two = BigRational::from_integer(BigInt::from(2));
    let dpdt = (p_next - p_prev) / &two;
    let d2pdx2 = p_left + p_right - &two * &p;
    Ok(DerivativeRecord {
        x_prime,
        t,
        p: ratio_to_f64(&p),
        dpdt: ratio_to_f64(&dpdt),
        d2pdx2: ratio_to_f64(&d2pdx2),
        method: DerivMethod::FiniteDifference,
    })
}

/// Evaluate both routes over `x' in [-x_window, x_window]` for each time.
///
/// Times are sorted and deduplicated; every time must be at least 2 and the
/// window must stay strictly inside the smallest layer. Summaries come from
/// the digamma route.
pub fn residual_sweep(times: &[u64], x_window: u64) -> Result<ResidualReport, HeatError> {
    let mut ts = times.to_vec();
    ts.sort_unstable();
    ts.dedup();
    let Some(&t_min) = ts.first() else {
        return Err(HeatError::EmptyTimes);
    };
    if t_min < 2 {
        return Err(HeatError::SweepTimeTooSmall(t_min));
    }
    if x_window >= t_min {
        return Err(HeatError::WindowTooWide {
            window: x_window,
            t_min,
        });
    }
    let window = i64::try_from(x_window).expect("window fits in i64");
    let mut pairs = Vec::with_capacity(ts.len() * (2 * x_window as usize + 1));
    let mut summaries = Vec::with_capacity(ts.len());
    for &t in &ts {
        let mut slope_num = 0.0;
        let mut slope_den = 0.0;
        let mut max_rel = 0.0_f64;
        for x_prime in -window..=window {
            let fd = derivatives_fd(x_prime, t)?;
            let dg = derivatives_digamma(x_prime, t)?;
            slope_num += dg.dpdt * dg.d2pdx2;
            slope_den += dg.d2pdx2 * dg.d2pdx2;
            max_rel = max_rel.max(dg.relative_residual());
            pairs.push(ResidualPair { fd, digamma: dg });
        }
        summaries.push(TimeSummary {
            t,
            fitted_d: slope_num / slope_den,
            max_rel_residual: max_rel,
        });
    }
    Ok(ResidualReport {
        pairs,
        summaries,
        x_window,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel_diff(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
    }

    #[test]
    fn continuum_matches_exact_lattice_values() {
        for t in [1u64, 2, 5, 10, 40] {
            for x_prime in -(t.min(5) as i64)..=(t.min(5) as i64) {
                let exact = prob_slice(x_prime, t).to_f64();
                let cont = p_continuous(x_prime as f64, t as f64).unwrap();
                assert!(
                    rel_diff(cont, exact) < 1e-12,
                    "t={t}, x'={x_prime}: {cont} vs {exact}"
                );
            }
        }
    }

    #[test]
    fn continuum_point_examples() {
        // 6 / 27 and 720 / (6 * 2 * 1 * 729).
        assert!(rel_diff(p_continuous(0.0, 1.0).unwrap(), 2.0 / 9.0) < 1e-13);
        assert!(rel_diff(p_continuous(1.0, 2.0).unwrap(), 720.0 / 8748.0) < 1e-13);
    }

    #[test]
    fn continuum_domain_errors() {
        assert_eq!(p_continuous(0.0, 0.0), Err(HeatError::BadTime(0.0)));
        assert!(matches!(
            p_continuous(0.0, -3.0),
            Err(HeatError::BadTime(_))
        ));
        assert!(matches!(
            p_continuous(3.0, 2.0),
            Err(HeatError::OutOfDomain { .. })
        ));
        assert!(matches!(
            p_continuous(f64::NAN, 2.0),
            Err(HeatError::OutOfDomain { .. })
        ));
    }

    #[test]
    fn continuum_vanishes_toward_the_edge() {
        // Close to x = t + 1 the value collapses smoothly toward zero.
        let near_edge = p_continuous(2.999, 2.0).unwrap();
        assert!(near_edge > 0.0 && near_edge < 1e-3);
    }

    #[test]
    fn digamma_route_signs_at_the_center() {
        let record = derivatives_digamma(0, 100).unwrap();
        assert!(record.p > 0.0);
        assert!(record.dpdt < 0.0, "center mass decays in time");
        assert!(record.d2pdx2 < 0.0, "center is a maximum in x");
    }

    #[test]
    fn fd_route_reproduces_the_lattice_value() {
        let record = derivatives_fd(1, 3).unwrap();
        assert_eq!(record.p, prob_slice(1, 3).to_f64());
        assert_eq!(record.method, DerivMethod::FiniteDifference);
    }

    #[test]
    fn routes_agree_on_derivatives_at_large_t() {
        for t in [50u64, 100, 200, 400] {
            let fd = derivatives_fd(0, t).unwrap();
            let dg = derivatives_digamma(0, t).unwrap();
            let bound = (1e-2_f64).max(5.0 / t as f64);
            assert!(rel_diff(fd.p, dg.p) < 1e-12, "t={t}");
            assert!(rel_diff(fd.dpdt, dg.dpdt) < bound, "t={t}");
            assert!(rel_diff(fd.d2pdx2, dg.d2pdx2) < bound, "t={t}");
        }
    }

    #[test]
    fn digamma_route_asymptotics_at_large_t() {
        // At the center the log-derivatives behave like -1/t and -2/t.
        let record = derivatives_digamma(0, 10_000).unwrap();
        let dpdt_over_p = record.dpdt / record.p;
        assert!(
            (-1.001e-4..=-0.999e-4).contains(&dpdt_over_p),
            "dPdt/P = {dpdt_over_p}"
        );
        let d2_over_p = record.d2pdx2 / record.p;
        assert!(
            rel_diff(d2_over_p, -2.0e-4) < 2e-3,
            "d2Pdx2/P = {d2_over_p}"
        );
    }

    #[test]
    fn derivatives_are_even_in_position() {
        for t in [5u64, 50] {
            for x_prime in 1..=4i64 {
                let pos = derivatives_digamma(x_prime, t).unwrap();
                let neg = derivatives_digamma(-x_prime, t).unwrap();
                assert_eq!(pos.p, neg.p);
                assert_eq!(pos.dpdt, neg.dpdt);
                assert_eq!(pos.d2pdx2, neg.d2pdx2);
                let pos_fd = derivatives_fd(x_prime, t).unwrap();
                let neg_fd = derivatives_fd(-x_prime, t).unwrap();
                assert_eq!(pos_fd.dpdt, neg_fd.dpdt);
                assert_eq!(pos_fd.d2pdx2, neg_fd.d2pdx2);
            }
        }
    }

    #[test]
    fn gradient_matches_central_difference() {
        // Unit-step truncation for the first derivative scales like
        // 1/t - (2/3) x'^2 / t^2, about 2e-2 at t = 50, so the bound
        // tightens with t.
        let two = BigRational::from_integer(BigInt::from(2));
        for (t, bound) in [(50u64, 2.5e-2), (120, 1e-2), (400, 3e-3)] {
            for x_prime in -5..=5i64 {
                let analytic = gradient_digamma(x_prime, t).unwrap();
                let fd_ratio = (prob_slice(x_prime + 1, t).into_ratio()
                    - prob_slice(x_prime - 1, t).into_ratio())
                    / &two;
                let fd = ratio_to_f64(&fd_ratio);
                assert!(
                    rel_diff(analytic, fd) < bound || (analytic == 0.0 && fd == 0.0),
                    "t={t}, x'={x_prime}: {analytic} vs {fd}"
                );
            }
        }
    }

    #[test]
    fn residuals_shrink_with_time() {
        let report = residual_sweep(&[50, 100, 200], 1).unwrap();
        assert!(report.is_mode_residual_strictly_decreasing(DerivMethod::Digamma));
        assert!(report.is_mode_residual_strictly_decreasing(DerivMethod::FiniteDifference));
        let modes = report.mode_relative_residuals(DerivMethod::Digamma);
        assert_eq!(modes.len(), 3);
        assert!(modes[0].1 < 0.01, "t=50 residual {}", modes[0].1);
    }

    #[test]
    fn fitted_diffusion_constant_approaches_one_half() {
        let report = residual_sweep(&[200], 2).unwrap();
        let summary = report.summaries()[0];
        assert_eq!(summary.t, 200);
        assert!(
            (summary.fitted_d - 0.5).abs() < 0.01,
            "fitted D = {}",
            summary.fitted_d
        );
        // Away from the center the relative residual scales like x'^2 / t,
        // so the window edge dominates: about 4/200 here.
        assert!(summary.max_rel_residual < 0.03);
    }

    #[test]
    fn sweep_sorts_and_deduplicates_times() {
        let report = residual_sweep(&[100, 50, 100], 0).unwrap();
        let ts: Vec<u64> = report.summaries().iter().map(|s| s.t).collect();
        assert_eq!(ts, vec![50, 100]);
        assert_eq!(report.pairs().len(), 2);
    }

    #[test]
    fn sweep_validation_errors() {
        assert_eq!(residual_sweep(&[], 0), Err(HeatError::EmptyTimes));
        assert_eq!(
            residual_sweep(&[1, 50], 0),
            Err(HeatError::SweepTimeTooSmall(1))
        );
        assert_eq!(
            residual_sweep(&[10, 50], 10),
            Err(HeatError::WindowTooWide {
                window: 10,
                t_min: 10
            })
        );
    }

    #[test]
    fn lattice_domain_errors() {
        assert_eq!(
            derivatives_digamma(6, 5),
            Err(HeatError::OutsideLayer { x_prime: 6, t: 5 })
        );
        assert_eq!(
            derivatives_digamma(0, 0),
            Err(HeatError::TimeTooSmall { t: 0, min: 1 })
        );
        assert_eq!(
            derivatives_fd(0, 1),
            Err(HeatError::TimeTooSmall { t: 1, min: 2 })
        );
        assert_eq!(
            derivatives_fd(2, 2),
            Err(HeatError::FdBoundary { x_prime: 2, t: 2 })
        );
    }
}
