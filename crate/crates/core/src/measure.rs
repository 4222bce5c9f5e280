use std::fmt;

use serde::{Deserialize, Serialize};

use crate::gtrig::{Characteristic, ExtendedReal};

/// How a measure relates to the characteristic it was asked for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MeasureClass {
    /// An ordinary finite, non-negative length or angle.
    Measurable,
    /// The boundary case between measurable and generalized (a limit bundle).
    Limit,
    /// A value exists but carries a different characteristic than requested.
    Generalized,
    /// No value of the requested kind exists.
    Immeasurable,
}

impl fmt::Display for MeasureClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MeasureClass::Measurable => "measurable",
            MeasureClass::Limit => "limit",
            MeasureClass::Generalized => "generalized",
            MeasureClass::Immeasurable => "immeasurable",
        })
    }
}

/// A length or angle together with its own characteristic.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Measure {
    pub value: ExtendedReal,
    pub characteristic: Characteristic,
    pub class: MeasureClass,
}

impl Measure {
    pub fn measurable(value: f64, characteristic: Characteristic) -> Self {
        debug_assert!(value.is_finite() && value >= 0.0, "measurable value {value}");
        Measure {
            value: ExtendedReal::Finite(value),
            characteristic,
            class: MeasureClass::Measurable,
        }
    }

    pub fn new(value: ExtendedReal, characteristic: Characteristic, class: MeasureClass) -> Self {
        Measure {
            value,
            characteristic,
            class,
        }
    }

    /// The finite value, if there is one.
    pub fn finite(&self) -> Option<f64> {
        self.value.finite()
    }

    /// The finite value; panics on the symbolic markers.
    pub fn get(&self) -> f64 {
        self.value
            .finite()
            .unwrap_or_else(|| panic!("measure has no finite value: {self:?}"))
    }
}

impl fmt::Display for Measure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (k={}, {})", self.value, self.characteristic, self.class)
    }
}
