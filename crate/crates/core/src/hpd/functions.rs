//! Spectral calculus: scalar functions lifted to Hermitian matrices.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::matrix::{HermitianMatrix, SquareMatrix};
use super::spectral::{spectral_decompose, SpectralDecomposition};
use crate::error::{Error, Result};

/// Matrices with `λ_min <= PD_THRESHOLD · λ_max` are rejected by the divergences.
pub const PD_THRESHOLD: f64 = 1e-12;

/// Scalar generators used by the Bregman and Jensen constructions.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "alpha", rename_all = "kebab-case")]
pub enum FunctionKind {
    /// `x²/2`
    Square,
    /// `x log x`
    XLogX,
    /// `-log x`
    NegLog,
    /// `x^α` with `α ∈ (0,1)`; concave.
    PowerLow(f64),
    /// `x^α` with `α ∈ (1,2)`; convex.
    PowerHigh(f64),
}

impl FunctionKind {
    pub fn power_low(alpha: f64) -> Result<Self> {
        if alpha > 0.0 && alpha < 1.0 {
            Ok(Self::PowerLow(alpha))
        } else {
            Err(Error::Parameter(format!(
                "power-low needs α in (0,1), got {alpha}"
            )))
        }
    }

    pub fn power_high(alpha: f64) -> Result<Self> {
        if alpha > 1.0 && alpha < 2.0 {
            Ok(Self::PowerHigh(alpha))
        } else {
            Err(Error::Parameter(format!(
                "power-high needs α in (1,2), got {alpha}"
            )))
        }
    }

    /// Re-checks the parameter range (variants are public, so this can be bypassed).
    pub fn validate(self) -> Result<Self> {
        match self {
            Self::PowerLow(a) => Self::power_low(a),
            Self::PowerHigh(a) => Self::power_high(a),
            k => Ok(k),
        }
    }

    pub fn is_concave(self) -> bool {
        matches!(self, Self::PowerLow(_))
    }

    /// Whether the generator needs strictly positive arguments.
    pub fn needs_positive(self) -> bool {
        !matches!(self, Self::Square)
    }

    pub fn value(self, x: f64) -> f64 {
        match self {
            Self::Square => 0.5 * x * x,
            Self::XLogX => {
                if x == 0.0 {
                    0.0
                } else if x < 0.0 {
                    f64::NAN
                } else {
                    x * x.ln()
                }
            }
            Self::NegLog => {
                if x > 0.0 {
                    -x.ln()
                } else {
                    f64::NAN
                }
            }
            Self::PowerLow(a) | Self::PowerHigh(a) => {
                if x >= 0.0 {
                    x.powf(a)
                } else {
                    f64::NAN
                }
            }
        }
    }

    pub fn derivative(self, x: f64) -> f64 {
        match self {
            Self::Square => x,
            Self::XLogX => x.ln() + 1.0,
            Self::NegLog => -1.0 / x,
            Self::PowerLow(a) | Self::PowerHigh(a) => a * x.powf(a - 1.0),
        }
    }

    /// The generator with the sign that makes it convex.
    pub fn convex_value(self, x: f64) -> f64 {
        if self.is_concave() {
            -self.value(x)
        } else {
            self.value(x)
        }
    }

    pub fn convex_derivative(self, x: f64) -> f64 {
        if self.is_concave() {
            -self.derivative(x)
        } else {
            self.derivative(x)
        }
    }

    pub fn alpha(self) -> Option<f64> {
        match self {
            Self::PowerLow(a) | Self::PowerHigh(a) => Some(a),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::Square => "square",
            Self::XLogX => "xlogx",
            Self::NegLog => "neglog",
            Self::PowerLow(_) => "power-low",
            Self::PowerHigh(_) => "power-high",
        }
    }

    /// Parses a name as printed by [`FunctionKind::name`]; power kinds take `alpha`.
    pub fn from_name(name: &str, alpha: Option<f64>) -> Result<Self> {
        let need_alpha =
            || alpha.ok_or_else(|| Error::Parameter(format!("function kind {name} needs an α")));
        match name {
            "square" => Ok(Self::Square),
            "xlogx" => Ok(Self::XLogX),
            "neglog" => Ok(Self::NegLog),
            "power-low" => Self::power_low(need_alpha()?),
            "power-high" => Self::power_high(need_alpha()?),
            other => Err(Error::Input(format!("unknown function kind {other:?}"))),
        }
    }
}

impl fmt::Display for FunctionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.alpha() {
            Some(a) => write!(f, "{}({a})", self.name()),
            None => f.write_str(self.name()),
        }
    }
}

impl FromStr for FunctionKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.split_once(':') {
            Some((name, a)) => {
                let a = a
                    .parse::<f64>()
                    .map_err(|e| Error::Input(format!("bad α in {s:?}: {e}")))?;
                Self::from_name(name, Some(a))
            }
            None => Self::from_name(s, None),
        }
    }
}

/// Result of [`validate_hpd`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct HpdDiagnostics {
    pub is_hermitian: bool,
    pub min_eigenvalue: f64,
    pub max_eigenvalue: f64,
    pub is_pd: bool,
}

/// Checks Hermitian symmetry and positive definiteness (`λ_min > tol · λ_max`).
pub fn validate_hpd(m: &SquareMatrix, tol: f64) -> Result<HpdDiagnostics> {
    if m.dim() == 0 {
        return Err(Error::Input("empty matrix".into()));
    }
    if !m.is_finite() {
        return Err(Error::Input("matrix has non-finite entries".into()));
    }
    let is_hermitian = m.hermitian_defect() <= super::matrix::HERMITIAN_TOL * m.max_abs();
    let spectrum = spectral_decompose(&HermitianMatrix::hermitian_part(m))?;
    let min_eigenvalue = spectrum.min_eigenvalue();
    let max_eigenvalue = spectrum.max_eigenvalue();
    Ok(HpdDiagnostics {
        is_hermitian,
        min_eigenvalue,
        max_eigenvalue,
        is_pd: is_hermitian && max_eigenvalue > 0.0 && min_eigenvalue > tol * max_eigenvalue,
    })
}

/// Spectral decomposition of an input required to be positive definite.
pub fn pd_spectrum(x: &HermitianMatrix) -> Result<SpectralDecomposition> {
    let s = spectral_decompose(x)?;
    let (lo, hi) = (s.min_eigenvalue(), s.max_eigenvalue());
    if !(hi > 0.0 && lo > PD_THRESHOLD * hi) {
        return Err(Error::Domain(format!(
            "matrix is not positive definite (eigenvalues in [{lo:e}, {hi:e}])"
        )));
    }
    Ok(s)
}

fn map_eigenvalues(values: &[f64], g: impl Fn(f64) -> f64) -> Result<Vec<f64>> {
    values
        .iter()
        .map(|&l| {
            let v = g(l);
            if v.is_finite() {
                Ok(v)
            } else {
                Err(Error::Domain(format!(
                    "function is undefined at eigenvalue {l:e}"
                )))
            }
        })
        .collect()
}

/// `Q diag(g(λ)) Q*` from an existing decomposition.
pub fn apply_to_spectrum(
    s: &SpectralDecomposition,
    g: impl Fn(f64) -> f64,
) -> Result<HermitianMatrix> {
    Ok(s.with_eigenvalues(&map_eigenvalues(&s.eigenvalues, g)?))
}

/// `Σ g(λ_i)` from an existing decomposition.
pub fn trace_of_spectrum(s: &SpectralDecomposition, g: impl Fn(f64) -> f64) -> Result<f64> {
    Ok(map_eigenvalues(&s.eigenvalues, g)?.iter().sum())
}

/// Lifts `g` to `X` through its spectral decomposition.
pub fn matrix_function(x: &HermitianMatrix, g: impl Fn(f64) -> f64) -> Result<HermitianMatrix> {
    apply_to_spectrum(&spectral_decompose(x)?, g)
}

/// `trace g(X) = Σ g(λ_i)`.
pub fn trace_function(x: &HermitianMatrix, g: impl Fn(f64) -> f64) -> Result<f64> {
    trace_of_spectrum(&spectral_decompose(x)?, g)
}
