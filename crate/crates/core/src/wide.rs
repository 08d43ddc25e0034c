//! Reals outside the double-precision exponent range.

use std::cmp::Ordering;
use std::fmt;

use rug::float::Round;
use rug::Float;
use serde::{Serialize, Serializer};

const PREC: u32 = 160;

/// A positive or zero real kept in binary floating point with a wide exponent.
#[derive(Debug, Clone, PartialEq)]
pub struct WideReal(Float);

impl WideReal {
    pub fn from_f64(x: f64) -> Self {
        WideReal(Float::with_val(PREC, x))
    }

    pub(crate) fn from_float(f: &Float) -> Self {
        WideReal(Float::with_val(PREC, f))
    }

    /// Nearest double; underflows to 0 and overflows to ∞.
    pub fn to_f64(&self) -> f64 {
        self.0.to_f64()
    }

    pub fn log10(&self) -> f64 {
        let (m, e) = self.0.to_f64_exp();
        m.abs().log10() + e as f64 * std::f64::consts::LOG10_2
    }

    pub fn log2(&self) -> f64 {
        let (m, e) = self.0.to_f64_exp();
        m.abs().log2() + e as f64
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_sign_positive() && !self.0.is_zero()
    }

    pub fn recip(&self) -> Self {
        WideReal(Float::with_val(PREC, 1u32) / &self.0)
    }

    pub fn sqrt(&self) -> Self {
        WideReal(Float::with_val(PREC, self.0.sqrt_ref()))
    }

    pub fn powf(&self, e: f64) -> Self {
        if self.0.is_zero() {
            return self.clone();
        }
        let l = Float::with_val(PREC, self.0.ln_ref()) * e;
        WideReal(l.exp())
    }

    pub fn mul_f64(&self, x: f64) -> Self {
        WideReal(Float::with_val(PREC, &self.0 * x))
    }

    pub fn mul(&self, other: &WideReal) -> Self {
        WideReal(Float::with_val(PREC, &self.0 * &other.0))
    }

    pub fn div(&self, other: &WideReal) -> Self {
        WideReal(Float::with_val(PREC, &self.0 / &other.0))
    }

    /// |self − other| / |other|, as a double.
    pub fn rel_diff(&self, other: &WideReal) -> f64 {
        let d = Float::with_val(PREC, &self.0 - &other.0);
        Float::with_val(PREC, d / &other.0).abs().to_f64()
    }

    /// Scientific notation with the given number of significant digits.
    pub fn to_sci(&self, digits: usize) -> String {
        if self.0.is_zero() {
            return "0".into();
        }
        let s = self.0.to_string_radix_round(10, Some(digits), Round::Nearest);
        // normalize "1.23e-5" style exponents; rug prints the exponent after 'e'
        if s.contains('e') {
            s
        } else {
            format!("{s}e0")
        }
    }
}

impl PartialOrd for WideReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.0.partial_cmp(&other.0)
    }
}

impl fmt::Display for WideReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_sci(17))
    }
}

impl Serialize for WideReal {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_sci(17))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trips_doubles_and_formats() {
        let x = WideReal::from_f64(0.0023314311119821724);
        assert_eq!(x.to_f64(), 0.0023314311119821724);
        assert!(x.to_sci(17).starts_with("2.3314311119821724"));
        let tiny = WideReal::from_f64(1e-300).powf(11.0);
        assert_eq!(tiny.to_f64(), 0.0);
        assert!((tiny.log10() + 3300.0).abs() < 1e-9);
        assert!(tiny.to_sci(5).ends_with("e-3300"), "{}", tiny.to_sci(5));
        assert!((tiny.recip().sqrt().log10() - 1650.0).abs() < 1e-9);
    }
}
