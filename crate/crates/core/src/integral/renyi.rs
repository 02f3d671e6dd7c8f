//! The Jensen-Rényi divergence as an integral of squared distances `δ_t²`.

use serde::Serialize;

use super::quadrature::{quad_improper, QuadratureConfig};
use crate::divergence::quantum::{check_renyi_divergence_order, is_unit_trace, power_traces};
use crate::error::{Error, Result};
use crate::hpd::matrix::HermitianMatrix;

/// `d_x = tr X^α`, `d_y = tr Y^α`, `d_xy = tr((X+Y)/2)^α`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RenyiTraceData {
    pub d_x: f64,
    pub d_y: f64,
    pub d_xy: f64,
}

impl RenyiTraceData {
    pub fn new(d_x: f64, d_y: f64, d_xy: f64) -> Result<Self> {
        for d in [d_x, d_y, d_xy] {
            if !(d > 0.0 && d.is_finite()) {
                return Err(Error::Input(format!(
                    "trace data must be positive, got {d}"
                )));
            }
        }
        Ok(Self { d_x, d_y, d_xy })
    }

    /// Trace data of a pair for `α ∈ (0,1)`, checking the concavity bound
    /// `d_xy ≥ ½(d_x + d_y)`.
    pub fn from_matrices(x: &HermitianMatrix, y: &HermitianMatrix, alpha: f64) -> Result<Self> {
        check_renyi_divergence_order(alpha)?;
        let (d_x, d_y, d_xy) = power_traces(x, y, alpha)?;
        let d = Self::new(d_x, d_y, d_xy)?;
        let avg = 0.5 * (d_x + d_y);
        if d_xy < avg - 1e-10 * avg.max(1.0) {
            return Err(Error::Domain(format!(
                "midpoint trace {d_xy} below average {avg}; concavity of tr(·^α) violated"
            )));
        }
        Ok(d)
    }

    /// `log d_xy - ½ log d_x - ½ log d_y`, the exact value of `∫₀^∞ δ_t² dt`.
    pub fn log_gap(&self) -> f64 {
        self.d_xy.ln() - 0.5 * self.d_x.ln() - 0.5 * self.d_y.ln()
    }
}

/// `δ_t² = ½(1/(t+d_x) + 1/(t+d_y)) - 1/(t+d_xy)`, written without cancellation.
pub fn renyi_delta_t(d: &RenyiTraceData, t: f64) -> f64 {
    let (a, b, c) = (d.d_x, d.d_y, d.d_xy);
    0.5 * (c - a) / ((t + a) * (t + c)) + 0.5 * (c - b) / ((t + b) * (t + c))
}

/// Result of [`qjrd_via_integral`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RenyiIntegral {
    /// `∫₀^∞ δ_t² dt`.
    pub raw: f64,
    /// `raw / (1-α)`, comparable to the directly evaluated divergence.
    pub scaled: f64,
    pub error_estimate: f64,
}

/// The Jensen-Rényi divergence of a unit-trace pair through `∫₀^∞ δ_t² dt`.
///
/// The integral equals `(1-α)` times the divergence, so both the raw integral
/// and the rescaled value are returned.
pub fn qjrd_via_integral(
    x: &HermitianMatrix,
    y: &HermitianMatrix,
    alpha: f64,
    cfg: &QuadratureConfig,
) -> Result<RenyiIntegral> {
    check_renyi_divergence_order(alpha)?;
    if !(is_unit_trace(x) && is_unit_trace(y)) {
        return Err(Error::Domain(format!(
            "integral form needs unit-trace inputs, got traces {} and {}",
            x.trace(),
            y.trace()
        )));
    }
    let d = RenyiTraceData::from_matrices(x, y, alpha)?;
    let r = quad_improper(|t| renyi_delta_t(&d, t), cfg, 0.0)?;
    Ok(RenyiIntegral {
        raw: r.value,
        scaled: r.value / (1.0 - alpha),
        error_estimate: r.error_estimate,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::divergence::qjrd_alpha;
    use crate::hpd::random::{random_hpd, HpdGenConfig};
    use approx::assert_relative_eq;

    #[test]
    fn delta_t_examples() {
        let d = RenyiTraceData::new(1.5, 1.5, 1.5).unwrap();
        assert_eq!(renyi_delta_t(&d, 0.0), 0.0);
        let d = RenyiTraceData::new(1.0, 1.0, 2.0).unwrap();
        assert_relative_eq!(renyi_delta_t(&d, 0.0), 0.5, epsilon = 1e-15);
        let naive = |t: f64| 0.5 * (1.0 / (t + 1.0) + 1.0 / (t + 1.0)) - 1.0 / (t + 2.0);
        assert_relative_eq!(renyi_delta_t(&d, 3.0), naive(3.0), max_relative = 1e-14);
        assert!(renyi_delta_t(&d, 1e8).abs() <= 1e-15);
        assert!(RenyiTraceData::new(0.0, 1.0, 1.0).is_err());
    }

    #[test]
    fn integral_examples() {
        let cfg = QuadratureConfig::default();
        let x = HermitianMatrix::diagonal(&[0.9, 0.1]).unwrap();
        let y = HermitianMatrix::diagonal(&[0.5, 0.5]).unwrap();
        let same = qjrd_via_integral(&x, &x, 0.5, &cfg).unwrap();
        assert_eq!(same.raw, 0.0);

        let r = qjrd_via_integral(&x, &y, 0.5, &cfg).unwrap();
        let direct = qjrd_alpha(&x, &y, 0.5).unwrap();
        assert_relative_eq!(r.scaled, direct, max_relative = 1e-6);
        let d = RenyiTraceData::from_matrices(&x, &y, 0.5).unwrap();
        assert!((r.raw - d.log_gap()).abs() < 1e-6);
        assert_relative_eq!(r.raw, 0.5 * direct, max_relative = 1e-6);

        let big = HermitianMatrix::identity(2);
        assert!(matches!(
            qjrd_via_integral(&big, &y, 0.5, &cfg),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            qjrd_via_integral(&x, &y, 1.0, &cfg),
            Err(Error::Parameter(_))
        ));
    }

    #[test]
    fn agrees_with_direct_path_on_random_pairs() {
        let cfg = QuadratureConfig::default();
        for seed in 0..10 {
            let g = |s| HpdGenConfig::new(2 + seed as usize % 4, s).with_unit_trace(true);
            let x = random_hpd(&g(seed)).unwrap();
            let y = random_hpd(&g(seed + 77)).unwrap();
            for a in [0.25, 0.5, 0.75] {
                let r = qjrd_via_integral(&x, &y, a, &cfg).unwrap();
                assert_relative_eq!(
                    r.scaled,
                    qjrd_alpha(&x, &y, a).unwrap(),
                    max_relative = 1e-6
                );
                let d = RenyiTraceData::from_matrices(&x, &y, a).unwrap();
                for t in [0.0, 0.1, 1.0, 10.0, 1e4] {
                    assert!(renyi_delta_t(&d, t) >= -1e-14);
                }
            }
        }
    }
}
