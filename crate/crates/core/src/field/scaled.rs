use num_complex::Complex64;

use super::{sci, Field, NumericField};
use crate::error::{DcrError, Result};

/// Double-precision complex number with a separate binary exponent:
/// `mant * 2^exp`, with `max(|re|, |im|)` of the mantissa in `[0.5, 1)`.
///
/// Rounding behaves exactly like `Complex<f64>`; only the exponent range is
/// widened, so factorial-sized intermediates neither overflow nor flush to
/// zero.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ScaledComplex {
    mant: Complex64,
    exp: i64,
}

/// `x * 2^n` without intermediate overflow.
fn ldexp(mut x: f64, mut n: i64) -> f64 {
    const STEP: i64 = 1000;
    let up = f64::powi(2.0, STEP as i32);
    let down = f64::powi(2.0, -STEP as i32);
    while n > STEP {
        x *= up;
        n -= STEP;
        if !x.is_finite() {
            return x;
        }
    }
    while n < -STEP {
        x *= down;
        n += STEP;
        if x == 0.0 {
            return x;
        }
    }
    x * f64::powi(2.0, n as i32)
}

/// Exponent `k` with `x = f * 2^k`, `f` in `[0.5, 1)`, for finite `x > 0`.
fn frexp_exp(x: f64) -> i64 {
    let bits = x.to_bits();
    let raw = ((bits >> 52) & 0x7ff) as i64;
    if raw == 0 {
        // subnormal
        frexp_exp(x * f64::powi(2.0, 64)) - 64
    } else {
        raw - 1022
    }
}

impl ScaledComplex {
    pub const ZERO: ScaledComplex = ScaledComplex {
        mant: Complex64::new(0.0, 0.0),
        exp: 0,
    };

    pub fn new(z: Complex64) -> Self {
        Self { mant: z, exp: 0 }.normalized()
    }

    fn normalized(self) -> Self {
        let m = self.mant.re.abs().max(self.mant.im.abs());
        if m == 0.0 {
            return Self::ZERO;
        }
        if !m.is_finite() {
            return self;
        }
        let k = frexp_exp(m);
        Self {
            mant: Complex64::new(ldexp(self.mant.re, -k), ldexp(self.mant.im, -k)),
            exp: self.exp + k,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.mant.re == 0.0 && self.mant.im == 0.0
    }

    pub fn is_finite(&self) -> bool {
        self.mant.re.is_finite() && self.mant.im.is_finite()
    }

    pub fn to_c64(&self) -> Complex64 {
        Complex64::new(ldexp(self.mant.re, self.exp), ldexp(self.mant.im, self.exp))
    }

    pub fn abs_log2(&self) -> f64 {
        if self.is_zero() {
            return f64::NEG_INFINITY;
        }
        self.mant.norm().log2() + self.exp as f64
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self {
            mant: self.mant * o.mant,
            exp: self.exp + o.exp,
        }
        .normalized()
    }

    pub fn div(&self, o: &Self) -> Self {
        Self {
            mant: self.mant / o.mant,
            exp: self.exp - o.exp,
        }
        .normalized()
    }

    pub fn add(&self, o: &Self) -> Self {
        if self.is_zero() {
            return *o;
        }
        if o.is_zero() {
            return *self;
        }
        let (hi, lo) = if self.exp >= o.exp { (self, o) } else { (o, self) };
        let shift = lo.exp - hi.exp;
        if shift < -1100 {
            return *hi;
        }
        Self {
            mant: hi.mant + lo.mant * ldexp(1.0, shift),
            exp: hi.exp,
        }
        .normalized()
    }

    pub fn neg(&self) -> Self {
        Self {
            mant: -self.mant,
            exp: self.exp,
        }
    }

    pub fn sqrt(&self) -> Self {
        if self.is_zero() {
            return *self;
        }
        // make the exponent even so it halves exactly
        let (m, e) = if self.exp % 2 == 0 {
            (self.mant, self.exp)
        } else {
            (self.mant * 2.0, self.exp - 1)
        };
        Self {
            mant: m.sqrt(),
            exp: e / 2,
        }
        .normalized()
    }
}

/// IEEE double-precision complex arithmetic with a widened exponent range.
#[derive(Clone, Copy, Debug, Default)]
pub struct ScaledField;

impl Field for ScaledField {
    type Elem = ScaledComplex;

    fn zero(&self) -> ScaledComplex {
        ScaledComplex::ZERO
    }

    fn one(&self) -> ScaledComplex {
        ScaledComplex::new(Complex64::new(1.0, 0.0))
    }

    fn from_i64(&self, v: i64) -> ScaledComplex {
        ScaledComplex::new(Complex64::new(v as f64, 0.0))
    }

    fn add(&self, a: &ScaledComplex, b: &ScaledComplex) -> ScaledComplex {
        a.add(b)
    }

    fn sub(&self, a: &ScaledComplex, b: &ScaledComplex) -> ScaledComplex {
        a.add(&b.neg())
    }

    fn mul(&self, a: &ScaledComplex, b: &ScaledComplex) -> ScaledComplex {
        a.mul(b)
    }

    fn neg(&self, a: &ScaledComplex) -> ScaledComplex {
        a.neg()
    }

    fn inv(&self, a: &ScaledComplex) -> Result<ScaledComplex> {
        if a.is_zero() {
            return Err(DcrError::DivisionByZero("double precision inverse"));
        }
        Ok(self.one().div(a))
    }

    fn is_zero(&self, a: &ScaledComplex) -> bool {
        a.is_zero()
    }

    fn is_finite(&self, a: &ScaledComplex) -> bool {
        a.is_finite()
    }
}

impl NumericField for ScaledField {
    fn precision_bits(&self) -> u32 {
        53
    }

    fn from_c64(&self, z: Complex64) -> ScaledComplex {
        ScaledComplex::new(z)
    }

    fn exp_i_pi(&self, num: i64, den: i64) -> ScaledComplex {
        // reduce the angle exactly before rounding it
        let r = num.rem_euclid(2 * den);
        let theta = std::f64::consts::PI * (r as f64) / (den as f64);
        ScaledComplex::new(Complex64::new(theta.cos(), theta.sin()))
    }

    fn abs_log2(&self, a: &ScaledComplex) -> f64 {
        a.abs_log2()
    }

    fn sqrt(&self, a: &ScaledComplex) -> ScaledComplex {
        a.sqrt()
    }

    fn to_c64(&self, a: &ScaledComplex) -> Complex64 {
        a.to_c64()
    }

    fn to_decimal(&self, a: &ScaledComplex, digits: usize) -> (String, String) {
        let z = a.to_c64();
        (sci(z.re, digits), sci(z.im, digits))
    }

    fn q2_powers_minus_one(&self, q: &ScaledComplex, n_max: usize) -> Vec<ScaledComplex> {
        let x = self.mul(q, q);
        let one = self.one();
        let mut xn = one;
        super::dd::q2_powers_minus_one(q.to_c64(), n_max)
            .into_iter()
            .enumerate()
            .map(|(n, v)| {
                if n > 0 {
                    xn = self.mul(&xn, &x);
                }
                if v.re.is_finite() && v.im.is_finite() && v.norm() > 1e-290 {
                    ScaledComplex::new(v)
                } else {
                    self.sub(&xn, &one)
                }
            })
            .collect()
    }

    fn horner_threshold(&self) -> f64 {
        1e-24
    }
}
