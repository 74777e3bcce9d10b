use core::fmt;

/// An exact, unreduced ratio. Reports carry both parts so nothing is rounded
/// before it reaches a reader.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Ratio {
    pub numerator: u64,
    pub denominator: u64,
}

impl Ratio {
    pub const fn new(numerator: u64, denominator: u64) -> Self {
        Ratio { numerator, denominator }
    }

    /// `None` when the denominator is zero.
    pub fn value(&self) -> Option<f64> {
        (self.denominator != 0).then(|| self.numerator as f64 / self.denominator as f64)
    }

    /// `self > 1` without going through floating point.
    pub fn exceeds_one(&self) -> bool {
        self.denominator != 0 && self.numerator > self.denominator
    }

    /// Exact comparison `self == a / b` by cross multiplication.
    pub fn equals(&self, a: u64, b: u64) -> bool {
        u128::from(self.numerator) * u128::from(b) == u128::from(a) * u128::from(self.denominator)
    }
}

impl fmt::Display for Ratio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numerator, self.denominator)
    }
}
