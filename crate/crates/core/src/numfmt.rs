//! Seventeen-significant-digit number formatting for reports and matrix files.

use serde::{Serialize, Serializer};
use serde_json::value::RawValue;

/// Formats `x` with 17 significant digits (`d.dddddddddddddddde±x`), which round-trips any `f64`.
pub fn format17(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else if x.is_nan() {
        "NaN".to_string()
    } else if x > 0.0 {
        "inf".to_string()
    } else {
        "-inf".to_string()
    }
}

/// `f64` that serializes to JSON as a 17-significant-digit literal (`null` when non-finite).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Sig17(pub f64);

impl Serialize for Sig17 {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        if !self.0.is_finite() {
            return serializer.serialize_none();
        }
        let raw = RawValue::from_string(format17(self.0)).map_err(serde::ser::Error::custom)?;
        raw.serialize(serializer)
    }
}

/// Serializes a slice of `f64` as a JSON array of [`Sig17`].
pub fn sig17_vec<S: Serializer>(values: &[f64], serializer: S) -> Result<S::Ok, S::Error> {
    serializer.collect_seq(values.iter().map(|&v| Sig17(v)))
}

pub fn sig17<S: Serializer>(value: &f64, serializer: S) -> Result<S::Ok, S::Error> {
    Sig17(*value).serialize(serializer)
}
