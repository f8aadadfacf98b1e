//! Nonnegative reals carried as natural logarithms.
//!
//! Monomials `t^λ` with `λ ~ 10^40` underflow every fixed-exponent float long
//! before they stop mattering, so every moment and series in the crate is
//! accumulated through [`LogValue`] and [`LogSum`].

use std::fmt;
use std::ops::{Div, Mul};

use serde::{Deserialize, Serialize};

/// A nonnegative real number `exp(log_magnitude)`, or exactly zero.
#[derive(Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LogValue {
    log_magnitude: f64,
    is_zero: bool,
}

impl LogValue {
    pub const ZERO: LogValue = LogValue {
        log_magnitude: f64::NEG_INFINITY,
        is_zero: true,
    };
    pub const ONE: LogValue = LogValue {
        log_magnitude: 0.0,
        is_zero: false,
    };

    /// Builds a value from its natural logarithm. `-inf` maps to zero.
    pub fn from_ln(ln: f64) -> Self {
        if ln == f64::NEG_INFINITY {
            Self::ZERO
        } else {
            debug_assert!(!ln.is_nan(), "NaN logarithm");
            LogValue {
                log_magnitude: ln,
                is_zero: false,
            }
        }
    }

    /// Panics (debug) on negative input.
    pub fn from_f64(x: f64) -> Self {
        debug_assert!(x >= 0.0, "LogValue::from_f64 called with {x}");
        if x == 0.0 {
            Self::ZERO
        } else {
            Self::from_ln(x.ln())
        }
    }

    pub fn is_zero(&self) -> bool {
        self.is_zero
    }

    /// Natural logarithm; `-inf` for zero.
    pub fn ln(&self) -> f64 {
        if self.is_zero {
            f64::NEG_INFINITY
        } else {
            self.log_magnitude
        }
    }

    /// Plain value; underflows to 0 and overflows to `inf`.
    pub fn to_f64(&self) -> f64 {
        if self.is_zero {
            0.0
        } else {
            self.log_magnitude.exp()
        }
    }

    pub fn powf(&self, exponent: f64) -> Self {
        if self.is_zero {
            if exponent == 0.0 {
                Self::ONE
            } else {
                Self::ZERO
            }
        } else {
            Self::from_ln(self.log_magnitude * exponent)
        }
    }

    pub fn sqrt(&self) -> Self {
        self.powf(0.5)
    }

    /// `ln(a + b)` by the log-sum-exp rule.
    pub fn add(self, other: Self) -> Self {
        match (self.is_zero, other.is_zero) {
            (true, _) => other,
            (_, true) => self,
            _ => {
                let (hi, lo) = if self.log_magnitude >= other.log_magnitude {
                    (self.log_magnitude, other.log_magnitude)
                } else {
                    (other.log_magnitude, self.log_magnitude)
                };
                Self::from_ln(hi + (lo - hi).exp().ln_1p())
            }
        }
    }

    pub fn max(self, other: Self) -> Self {
        if self.ln() >= other.ln() {
            self
        } else {
            other
        }
    }
}

impl Mul for LogValue {
    type Output = LogValue;
    fn mul(self, rhs: LogValue) -> LogValue {
        if self.is_zero || rhs.is_zero {
            LogValue::ZERO
        } else {
            LogValue::from_ln(self.log_magnitude + rhs.log_magnitude)
        }
    }
}

impl Div for LogValue {
    type Output = LogValue;
    fn div(self, rhs: LogValue) -> LogValue {
        assert!(!rhs.is_zero, "division of LogValue by zero");
        if self.is_zero {
            LogValue::ZERO
        } else {
            LogValue::from_ln(self.log_magnitude - rhs.log_magnitude)
        }
    }
}

impl PartialOrd for LogValue {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        self.ln().partial_cmp(&other.ln())
    }
}

impl fmt::Debug for LogValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero {
            write!(f, "LogValue(0)")
        } else {
            write!(f, "LogValue(exp({}))", self.log_magnitude)
        }
    }
}

impl Default for LogValue {
    fn default() -> Self {
        Self::ZERO
    }
}

/// Neumaier-compensated running sum of plain floats.
#[derive(Clone, Copy, Debug, Default)]
pub struct CompensatedSum {
    sum: f64,
    comp: f64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }

    fn scale(&mut self, factor: f64) {
        self.sum *= factor;
        self.comp *= factor;
    }
}

impl std::iter::FromIterator<f64> for CompensatedSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut s = CompensatedSum::new();
        for x in iter {
            s.add(x);
        }
        s
    }
}

/// Streaming log-sum-exp accumulator with a compensated mantissa.
///
/// The running sum is stored relative to the largest log seen so far; a new
/// maximum rescales the mantissa. Summation order is the insertion order.
#[derive(Clone, Copy, Debug)]
pub struct LogSum {
    pivot: f64,
    scaled: CompensatedSum,
}

impl Default for LogSum {
    fn default() -> Self {
        Self::new()
    }
}

impl LogSum {
    pub fn new() -> Self {
        LogSum {
            pivot: f64::NEG_INFINITY,
            scaled: CompensatedSum::new(),
        }
    }

    pub fn add(&mut self, term: LogValue) {
        if term.is_zero() {
            return;
        }
        let ln = term.ln();
        if ln > self.pivot {
            if self.pivot > f64::NEG_INFINITY {
                self.scaled.scale((self.pivot - ln).exp());
            }
            self.pivot = ln;
        }
        self.scaled.add((ln - self.pivot).exp());
    }

    pub fn value(&self) -> LogValue {
        let m = self.scaled.value();
        if self.pivot == f64::NEG_INFINITY || m <= 0.0 {
            LogValue::ZERO
        } else {
            LogValue::from_ln(self.pivot + m.ln())
        }
    }
}

impl std::iter::FromIterator<LogValue> for LogSum {
    fn from_iter<I: IntoIterator<Item = LogValue>>(iter: I) -> Self {
        let mut s = LogSum::new();
        for x in iter {
            s.add(x);
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_is_absorbing_for_mul() {
        assert!((LogValue::ZERO * LogValue::from_f64(3.0)).is_zero());
        assert_eq!(LogValue::ZERO.add(LogValue::from_f64(2.0)).to_f64(), 2.0);
    }

    #[test]
    fn add_matches_plain_sum() {
        let a = LogValue::from_f64(1e-3);
        let b = LogValue::from_f64(5.0);
        assert!((a.add(b).to_f64() - 5.001).abs() < 1e-14);
    }

    #[test]
    fn extreme_exponents_survive() {
        // (1/2)^(1e300) * 2^(1e300) = 1
        let a = LogValue::from_ln(-1e300 * std::f64::consts::LN_2);
        let b = LogValue::from_ln(1e300 * std::f64::consts::LN_2);
        assert_eq!((a * b).ln(), 0.0);
        let huge: LogSum = [a, a, a].into_iter().collect();
        assert!((huge.value().ln() - a.ln() - 3f64.ln()).abs() <= 1e-12 * a.ln().abs());
    }

    #[test]
    fn logsum_rescales_on_new_maximum() {
        let terms = [1e-300, 1.0, 1e-20, 7.0];
        let s: LogSum = terms.iter().map(|&x| LogValue::from_f64(x)).collect();
        assert!((s.value().to_f64() - 8.0).abs() < 1e-14);
    }

    #[test]
    fn compensated_sum_recovers_cancellation() {
        let s: CompensatedSum = [1.0, 1e100, 1.0, -1e100].into_iter().collect();
        assert_eq!(s.value(), 2.0);
    }
}
