//! Reals extended by `+∞`, with the arithmetic conventions used by the
//! cornerpoint pseudometric.

use std::cmp::Ordering;
use std::fmt;

use serde::de::{self, Deserializer, Visitor};
use serde::{Deserialize, Serialize, Serializer};

/// A finite real or `+∞`.
///
/// Conventions: `∞ − y = y − ∞ = ∞` for finite `y`, `∞ − ∞ = 0`, `∞/2 = ∞`,
/// `|∞| = ∞`, `min{∞, c} = c`, `max{∞, c} = ∞`.
///
/// Finite values are never NaN, so the type is totally ordered with `∞` above
/// every finite value. On the wire it is a JSON number, or the string `"inf"`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ExtendedReal {
    Finite(f64),
    Infinity,
}

use ExtendedReal::{Finite, Infinity};

impl ExtendedReal {
    pub const ZERO: ExtendedReal = Finite(0.0);

    pub fn is_finite(self) -> bool {
        matches!(self, Finite(_))
    }

    pub fn finite(self) -> Option<f64> {
        match self {
            Finite(v) => Some(v),
            Infinity => None,
        }
    }

    /// `self − other` under the ∞ conventions.
    pub fn sub(self, other: ExtendedReal) -> ExtendedReal {
        match (self, other) {
            (Finite(a), Finite(b)) => Finite(a - b),
            (Infinity, Infinity) => Finite(0.0),
            _ => Infinity,
        }
    }

    /// `self + other`, with `∞ + c = ∞`.
    pub fn add(self, other: ExtendedReal) -> ExtendedReal {
        match (self, other) {
            (Finite(a), Finite(b)) => Finite(a + b),
            _ => Infinity,
        }
    }

    pub fn abs(self) -> ExtendedReal {
        match self {
            Finite(a) => Finite(a.abs()),
            Infinity => Infinity,
        }
    }

    pub fn half(self) -> ExtendedReal {
        match self {
            Finite(a) => Finite(a / 2.0),
            Infinity => Infinity,
        }
    }

    pub fn min(self, other: ExtendedReal) -> ExtendedReal {
        if self <= other {
            self
        } else {
            other
        }
    }

    pub fn max(self, other: ExtendedReal) -> ExtendedReal {
        if self >= other {
            self
        } else {
            other
        }
    }
}

impl From<f64> for ExtendedReal {
    fn from(v: f64) -> Self {
        if v == f64::INFINITY {
            Infinity
        } else {
            Finite(v)
        }
    }
}

impl Eq for ExtendedReal {}

impl PartialOrd for ExtendedReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExtendedReal {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Finite(a), Finite(b)) => a.total_cmp(b),
            (Finite(_), Infinity) => Ordering::Less,
            (Infinity, Finite(_)) => Ordering::Greater,
            (Infinity, Infinity) => Ordering::Equal,
        }
    }
}

impl fmt::Display for ExtendedReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Finite(v) => write!(f, "{}", format_sig(*v, 12)),
            Infinity => f.write_str("inf"),
        }
    }
}

/// Formats `v` with `digits` significant digits, trimming trailing zeros.
pub fn format_sig(v: f64, digits: usize) -> String {
    if v == 0.0 || !v.is_finite() {
        return format!("{v}");
    }
    let magnitude = v.abs().log10().floor() as i32;
    let decimals = (digits as i32 - 1 - magnitude).max(0) as usize;
    let s = format!("{v:.decimals$}");
    if s.contains('.') {
        let s = s.trim_end_matches('0').trim_end_matches('.');
        if s == "-0" {
            "0".to_string()
        } else {
            s.to_string()
        }
    } else {
        s
    }
}

impl Serialize for ExtendedReal {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Finite(v) => serializer.serialize_f64(*v),
            Infinity => serializer.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for ExtendedReal {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct ExtVisitor;

        impl Visitor<'_> for ExtVisitor {
            type Value = ExtendedReal;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a finite number or \"inf\"")
            }

            fn visit_f64<E: de::Error>(self, v: f64) -> std::result::Result<Self::Value, E> {
                Ok(Finite(v))
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<Self::Value, E> {
                Ok(Finite(v as f64))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<Self::Value, E> {
                Ok(Finite(v as f64))
            }

            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<Self::Value, E> {
                match v {
                    "inf" | "+inf" | "infinity" => Ok(Infinity),
                    _ => Err(E::invalid_value(de::Unexpected::Str(v), &self)),
                }
            }
        }

        deserializer.deserialize_any(ExtVisitor)
    }
}
