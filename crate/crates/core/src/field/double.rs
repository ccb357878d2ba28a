use num_complex::Complex64;

use super::{sci, Field, NumericField};
use crate::error::{DcrError, Result};

/// Largest magnitude treated as representable; products of two such values
/// still fit in a double.
const SAFE_MAX: f64 = 1e150;
const SAFE_MIN: f64 = 1e-150;

/// Plain IEEE double complex arithmetic.
///
/// Values whose magnitude leaves `[1e-150, 1e150]` are reported as not
/// finite so callers can switch to [`super::ScaledField`] before an overflow
/// or a silent flush to zero happens.
#[derive(Clone, Copy, Debug, Default)]
pub struct DoubleField;

impl Field for DoubleField {
    type Elem = Complex64;

    fn zero(&self) -> Complex64 {
        Complex64::new(0.0, 0.0)
    }

    fn one(&self) -> Complex64 {
        Complex64::new(1.0, 0.0)
    }

    fn from_i64(&self, v: i64) -> Complex64 {
        Complex64::new(v as f64, 0.0)
    }

    fn add(&self, a: &Complex64, b: &Complex64) -> Complex64 {
        a + b
    }

    fn sub(&self, a: &Complex64, b: &Complex64) -> Complex64 {
        a - b
    }

    fn mul(&self, a: &Complex64, b: &Complex64) -> Complex64 {
        a * b
    }

    fn neg(&self, a: &Complex64) -> Complex64 {
        -a
    }

    fn inv(&self, a: &Complex64) -> Result<Complex64> {
        if self.is_zero(a) {
            return Err(DcrError::DivisionByZero("double precision inverse"));
        }
        Ok(a.inv())
    }

    fn is_zero(&self, a: &Complex64) -> bool {
        a.re == 0.0 && a.im == 0.0
    }

    fn is_finite(&self, a: &Complex64) -> bool {
        if !(a.re.is_finite() && a.im.is_finite()) {
            return false;
        }
        let m = a.re.abs().max(a.im.abs());
        m == 0.0 || (SAFE_MIN..=SAFE_MAX).contains(&m)
    }
}

impl NumericField for DoubleField {
    fn precision_bits(&self) -> u32 {
        53
    }

    fn from_c64(&self, z: Complex64) -> Complex64 {
        z
    }

    fn exp_i_pi(&self, num: i64, den: i64) -> Complex64 {
        let r = num.rem_euclid(2 * den);
        let theta = std::f64::consts::PI * (r as f64) / (den as f64);
        Complex64::new(theta.cos(), theta.sin())
    }

    fn abs_log2(&self, a: &Complex64) -> f64 {
        a.norm().log2()
    }

    fn abs_below(&self, a: &Complex64, bound: f64) -> bool {
        a.norm_sqr() < bound * bound
    }

    fn sqrt(&self, a: &Complex64) -> Complex64 {
        a.sqrt()
    }

    fn to_c64(&self, a: &Complex64) -> Complex64 {
        *a
    }

    fn to_decimal(&self, a: &Complex64, digits: usize) -> (String, String) {
        (sci(a.re, digits), sci(a.im, digits))
    }

    fn q2_powers_minus_one(&self, q: &Complex64, n_max: usize) -> Vec<Complex64> {
        super::dd::q2_powers_minus_one(*q, n_max)
    }

    fn horner_threshold(&self) -> f64 {
        1e-24
    }
}
