//! Tagged choice of divergence with its parameters.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::bregman::bregman_matrix;
use super::jensen::{jensen, s_divergence};
use super::quantum::{check_renyi_divergence_order, is_unit_trace, qjrd_alpha, qjsd, qjsd_alpha};
use super::tsallis::js_tsallis_relative;
use crate::error::{Error, Result};
use crate::hpd::entropy::check_tsallis_order;
use crate::hpd::functions::FunctionKind;
use crate::hpd::matrix::HermitianMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "param", rename_all = "kebab-case")]
pub enum DivergenceSpec {
    SDiv,
    Qjsd,
    QjsdAlpha(f64),
    QjrdAlpha(f64),
    DeltaAlpha(f64),
    BregmanVn,
    BregmanLogDet,
    BregmanFrobenius,
    Jensen(FunctionKind),
}

impl DivergenceSpec {
    /// Builds a spec from the command-line vocabulary (`sdiv`, `qjsd-alpha`, ...).
    pub fn parse(kind: &str, alpha: Option<f64>, fkind: Option<&str>) -> Result<Self> {
        let need_alpha = || {
            alpha.ok_or_else(|| Error::Parameter(format!("divergence kind '{kind}' needs --alpha")))
        };
        let spec = match kind {
            "sdiv" => Self::SDiv,
            "qjsd" => Self::Qjsd,
            "qjsd-alpha" => Self::QjsdAlpha(need_alpha()?),
            "qjrd" => Self::QjrdAlpha(need_alpha()?),
            "delta-alpha" => Self::DeltaAlpha(need_alpha()?),
            "bregman-vn" => Self::BregmanVn,
            "bregman-logdet" => Self::BregmanLogDet,
            "bregman-frob" => Self::BregmanFrobenius,
            "jensen" => {
                let name = fkind.ok_or_else(|| {
                    Error::Parameter("divergence kind 'jensen' needs --fkind".into())
                })?;
                let f = if name.contains(':') {
                    name.parse::<FunctionKind>()?
                } else {
                    FunctionKind::from_name(name, alpha)?
                };
                Self::Jensen(f)
            }
            other => {
                return Err(Error::Parameter(format!(
                    "unknown divergence kind '{other}'"
                )))
            }
        };
        spec.validate()
    }

    pub fn validate(self) -> Result<Self> {
        match self {
            Self::QjsdAlpha(a) => check_tsallis_order(a)?,
            Self::QjrdAlpha(a) => check_renyi_divergence_order(a)?,
            Self::DeltaAlpha(a) => {
                if !(a > 0.0 && a.is_finite() && a != 1.0) {
                    return Err(Error::Parameter(format!(
                        "Δ_α needs α > 0 and α ≠ 1 (use qjsd at α = 1), got {a}"
                    )));
                }
            }
            Self::Jensen(f) => {
                f.validate()?;
            }
            _ => {}
        }
        Ok(self)
    }

    pub fn evaluate(&self, x: &HermitianMatrix, y: &HermitianMatrix) -> Result<f64> {
        match *self {
            Self::SDiv => s_divergence(x, y),
            Self::Qjsd => qjsd(x, y),
            Self::QjsdAlpha(a) => qjsd_alpha(x, y, a),
            Self::QjrdAlpha(a) => qjrd_alpha(x, y, a),
            Self::DeltaAlpha(a) => js_tsallis_relative(x, y, a),
            Self::BregmanVn => bregman_matrix(FunctionKind::XLogX, x, y),
            Self::BregmanLogDet => bregman_matrix(FunctionKind::NegLog, x, y),
            Self::BregmanFrobenius => bregman_matrix(FunctionKind::Square, x, y),
            Self::Jensen(f) => jensen(f, x, y),
        }
    }

    /// Like [`evaluate`](Self::evaluate), but rejects non-density inputs where the
    /// divergence's metric properties assume unit trace.
    pub fn evaluate_checked(&self, x: &HermitianMatrix, y: &HermitianMatrix) -> Result<f64> {
        if self.requires_unit_trace() && !(is_unit_trace(x) && is_unit_trace(y)) {
            return Err(Error::Domain(format!(
                "{} needs unit-trace inputs, got traces {} and {}",
                self.label(),
                x.trace(),
                y.trace()
            )));
        }
        self.evaluate(x, y)
    }

    pub fn is_symmetric(&self) -> bool {
        !matches!(self, Self::BregmanVn | Self::BregmanLogDet)
    }

    pub fn requires_unit_trace(&self) -> bool {
        matches!(self, Self::QjrdAlpha(_))
    }

    pub fn alpha(&self) -> Option<f64> {
        match *self {
            Self::QjsdAlpha(a) | Self::QjrdAlpha(a) | Self::DeltaAlpha(a) => Some(a),
            Self::Jensen(f) => f.alpha(),
            _ => None,
        }
    }

    /// Command-line name of the kind.
    pub fn kind_name(&self) -> &'static str {
        match self {
            Self::SDiv => "sdiv",
            Self::Qjsd => "qjsd",
            Self::QjsdAlpha(_) => "qjsd-alpha",
            Self::QjrdAlpha(_) => "qjrd",
            Self::DeltaAlpha(_) => "delta-alpha",
            Self::BregmanVn => "bregman-vn",
            Self::BregmanLogDet => "bregman-logdet",
            Self::BregmanFrobenius => "bregman-frob",
            Self::Jensen(_) => "jensen",
        }
    }

    /// Human-readable label including parameters, e.g. `qjsd-alpha(1.5)`.
    pub fn label(&self) -> String {
        match self {
            Self::Jensen(f) => format!("jensen({f})"),
            _ => match self.alpha() {
                Some(a) => format!("{}({a})", self.kind_name()),
                None => self.kind_name().to_string(),
            },
        }
    }
}

impl fmt::Display for DivergenceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hpd::random::{random_hpd, HpdGenConfig};

    #[test]
    fn parse_kinds() {
        assert_eq!(
            DivergenceSpec::parse("sdiv", None, None).unwrap(),
            DivergenceSpec::SDiv
        );
        assert_eq!(
            DivergenceSpec::parse("qjsd-alpha", Some(1.5), None).unwrap(),
            DivergenceSpec::QjsdAlpha(1.5)
        );
        assert_eq!(
            DivergenceSpec::parse("jensen", Some(0.5), Some("power-low")).unwrap(),
            DivergenceSpec::Jensen(FunctionKind::PowerLow(0.5))
        );
        assert_eq!(
            DivergenceSpec::parse("jensen", None, Some("neglog")).unwrap(),
            DivergenceSpec::Jensen(FunctionKind::NegLog)
        );
        assert!(DivergenceSpec::parse("qjsd-alpha", None, None).is_err());
        assert!(DivergenceSpec::parse("qjrd", Some(1.5), None).is_err());
        assert!(DivergenceSpec::parse("delta-alpha", Some(1.0), None).is_err());
        assert!(DivergenceSpec::parse("nope", None, None).is_err());
    }

    #[test]
    fn qjsd_alpha_one_is_qjsd() {
        let x = random_hpd(&HpdGenConfig::new(3, 7)).unwrap();
        let y = random_hpd(&HpdGenConfig::new(3, 8)).unwrap();
        assert_eq!(
            DivergenceSpec::QjsdAlpha(1.0).evaluate(&x, &y).unwrap(),
            DivergenceSpec::Qjsd.evaluate(&x, &y).unwrap()
        );
    }

    #[test]
    fn unit_trace_gate() {
        let x = random_hpd(&HpdGenConfig::new(3, 7)).unwrap();
        let y = random_hpd(&HpdGenConfig::new(3, 8)).unwrap();
        let spec = DivergenceSpec::QjrdAlpha(0.5);
        assert!(matches!(
            spec.evaluate_checked(&x, &y),
            Err(Error::Domain(_))
        ));
        let x = random_hpd(&HpdGenConfig::new(3, 7).with_unit_trace(true)).unwrap();
        let y = random_hpd(&HpdGenConfig::new(3, 8).with_unit_trace(true)).unwrap();
        assert!(spec.evaluate_checked(&x, &y).unwrap() > 0.0);
    }

    #[test]
    fn serde_round_trip() {
        for spec in [
            DivergenceSpec::SDiv,
            DivergenceSpec::DeltaAlpha(0.75),
            DivergenceSpec::Jensen(FunctionKind::PowerHigh(1.5)),
        ] {
            let s = serde_json::to_string(&spec).unwrap();
            assert_eq!(serde_json::from_str::<DivergenceSpec>(&s).unwrap(), spec);
        }
    }
}
