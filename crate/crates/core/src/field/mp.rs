use num_complex::Complex64;
use rug::float::Constant;
use rug::ops::Pow;
use rug::Float;

use super::{Field, NumericField};
use crate::error::{DcrError, Result};

/// Complex number with MPFR real and imaginary parts at a shared precision.
#[derive(Clone, PartialEq)]
pub struct MpComplex {
    pub re: Float,
    pub im: Float,
}

impl std::fmt::Debug for MpComplex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "({} + {}i)",
            self.re.to_string_radix(10, Some(20)),
            self.im.to_string_radix(10, Some(20))
        )
    }
}

impl MpComplex {
    pub fn norm(&self) -> Float {
        Float::with_val(self.re.prec(), self.re.hypot_ref(&self.im))
    }
}

/// Extended-precision complex arithmetic (binary mantissa of `prec` bits).
#[derive(Clone, Copy, Debug)]
pub struct MpField {
    prec: u32,
}

impl MpField {
    pub fn new(prec: u32) -> Result<Self> {
        if prec < 53 {
            return Err(DcrError::Domain(format!(
                "extended precision needs at least 53 bits, got {prec}"
            )));
        }
        Ok(Self { prec })
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn real(&self, x: Float) -> MpComplex {
        MpComplex {
            re: Float::with_val(self.prec, x),
            im: Float::new(self.prec),
        }
    }

    pub fn float(&self, v: f64) -> Float {
        Float::with_val(self.prec, v)
    }

    /// Exact conversion of a rational number.
    pub fn from_rational(&self, r: &rug::Rational) -> MpComplex {
        self.real(Float::with_val(self.prec, r))
    }
}

impl Field for MpField {
    type Elem = MpComplex;

    fn zero(&self) -> MpComplex {
        MpComplex {
            re: Float::new(self.prec),
            im: Float::new(self.prec),
        }
    }

    fn one(&self) -> MpComplex {
        self.from_i64(1)
    }

    fn from_i64(&self, v: i64) -> MpComplex {
        MpComplex {
            re: Float::with_val(self.prec, v),
            im: Float::new(self.prec),
        }
    }

    fn add(&self, a: &MpComplex, b: &MpComplex) -> MpComplex {
        MpComplex {
            re: Float::with_val(self.prec, &a.re + &b.re),
            im: Float::with_val(self.prec, &a.im + &b.im),
        }
    }

    fn sub(&self, a: &MpComplex, b: &MpComplex) -> MpComplex {
        MpComplex {
            re: Float::with_val(self.prec, &a.re - &b.re),
            im: Float::with_val(self.prec, &a.im - &b.im),
        }
    }

    fn mul(&self, a: &MpComplex, b: &MpComplex) -> MpComplex {
        let p = self.prec;
        let rr = Float::with_val(p, &a.re * &b.re);
        let ii = Float::with_val(p, &a.im * &b.im);
        let ri = Float::with_val(p, &a.re * &b.im);
        let ir = Float::with_val(p, &a.im * &b.re);
        MpComplex {
            re: rr - ii,
            im: ri + ir,
        }
    }

    fn neg(&self, a: &MpComplex) -> MpComplex {
        MpComplex {
            re: Float::with_val(self.prec, -&a.re),
            im: Float::with_val(self.prec, -&a.im),
        }
    }

    fn inv(&self, a: &MpComplex) -> Result<MpComplex> {
        if self.is_zero(a) {
            return Err(DcrError::DivisionByZero("extended precision inverse"));
        }
        let p = self.prec;
        let den = Float::with_val(p, a.re.square_ref()) + Float::with_val(p, a.im.square_ref());
        Ok(MpComplex {
            re: Float::with_val(p, &a.re / &den),
            im: -Float::with_val(p, &a.im / &den),
        })
    }

    fn is_zero(&self, a: &MpComplex) -> bool {
        a.re.is_zero() && a.im.is_zero()
    }

    fn is_finite(&self, a: &MpComplex) -> bool {
        a.re.is_finite() && a.im.is_finite()
    }

    fn add_scaled(&self, a: &MpComplex, c: i64, b: &MpComplex) -> MpComplex {
        MpComplex {
            re: Float::with_val(self.prec, &b.re * c) + &a.re,
            im: Float::with_val(self.prec, &b.im * c) + &a.im,
        }
    }
}

impl NumericField for MpField {
    fn precision_bits(&self) -> u32 {
        self.prec
    }

    fn from_c64(&self, z: Complex64) -> MpComplex {
        MpComplex {
            re: Float::with_val(self.prec, z.re),
            im: Float::with_val(self.prec, z.im),
        }
    }

    fn exp_i_pi(&self, num: i64, den: i64) -> MpComplex {
        let r = num.rem_euclid(2 * den);
        let work = self.prec + 32;
        let theta = Float::with_val(work, Constant::Pi) * r / den;
        let (s, c) = theta.sin_cos(Float::new(work));
        MpComplex {
            re: Float::with_val(self.prec, c),
            im: Float::with_val(self.prec, s),
        }
    }

    fn abs_log2(&self, a: &MpComplex) -> f64 {
        if self.is_zero(a) {
            return f64::NEG_INFINITY;
        }
        a.norm().log2().to_f64()
    }

    fn sqrt(&self, a: &MpComplex) -> MpComplex {
        // principal branch: sqrt((|a| + re)/2) + i sign(im) sqrt((|a| - re)/2)
        if self.is_zero(a) {
            return self.zero();
        }
        let p = self.prec;
        let r = a.norm();
        let re = Float::with_val(p, (Float::with_val(p, &r + &a.re) / 2u32).sqrt());
        let mut im = Float::with_val(p, (Float::with_val(p, &r - &a.re) / 2u32).sqrt());
        if a.im.is_sign_negative() {
            im = -im;
        }
        MpComplex { re, im }
    }

    fn to_c64(&self, a: &MpComplex) -> Complex64 {
        Complex64::new(a.re.to_f64(), a.im.to_f64())
    }

    fn rel_diff(&self, a: &MpComplex, b: &MpComplex) -> f64 {
        let d = self.sub(a, b).norm();
        if b.re.is_zero() && b.im.is_zero() {
            return if d.is_zero() { 0.0 } else { f64::INFINITY };
        }
        // keep the exponent in the Float so tiny ratios do not flush to zero
        let ratio = Float::with_val(64, &d / &b.norm());
        if ratio.is_zero() {
            0.0
        } else {
            let l = ratio.log2().to_f64();
            if l < -1000.0 {
                // report as a power of two that still fits in f64
                f64::MIN_POSITIVE.max(Float::with_val(64, 2).pow(l).to_f64())
            } else {
                l.exp2()
            }
        }
    }

    fn to_decimal(&self, a: &MpComplex, digits: usize) -> (String, String) {
        (
            a.re.to_string_radix(10, Some(digits)),
            a.im.to_string_radix(10, Some(digits)),
        )
    }
}

/// `log10` of the relative difference, usable below the double range.
pub fn log10_rel_diff(field: &MpField, a: &MpComplex, b: &MpComplex) -> f64 {
    let d = field.sub(a, b).norm();
    if d.is_zero() {
        return f64::NEG_INFINITY;
    }
    let ratio = Float::with_val(64, &d / &b.norm());
    ratio.log10().to_f64()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ring_ops() {
        let f = MpField::new(256).unwrap();
        let a = f.from_c64(Complex64::new(1.5, -2.0));
        let b = f.from_c64(Complex64::new(-0.5, 4.0));
        let p = f.to_c64(&f.mul(&a, &b));
        assert!((p - Complex64::new(1.5, -2.0) * Complex64::new(-0.5, 4.0)).norm() < 1e-15);
        let one = f.mul(&a, &f.inv(&a).unwrap());
        assert!(log10_rel_diff(&f, &one, &f.one()) < -70.0);
        assert!(f.inv(&f.zero()).is_err());
    }

    #[test]
    fn roots_of_unity() {
        let f = MpField::new(512).unwrap();
        let z = f.exp_i_pi(1, 7);
        let z14 = f.pow(&z, 14);
        assert!(log10_rel_diff(&f, &z14, &f.one()) < -150.0);
        assert_eq!(f.to_c64(&f.exp_i_pi(-3, 2)), f.to_c64(&f.exp_i_pi(1, 2)));
    }

    #[test]
    fn principal_sqrt() {
        let f = MpField::new(128).unwrap();
        let i = f.sqrt(&f.from_i64(-1));
        assert_eq!(f.to_c64(&i), Complex64::new(0.0, 1.0));
        let w = f.from_c64(Complex64::new(-3.0, -4.0));
        assert_eq!(f.to_c64(&f.sqrt(&w)), Complex64::new(1.0, -2.0));
        assert!(MpField::new(32).is_err());
    }
}
