//! Target fields for projection.
//!
//! Every projection regime is a [`Field`]: the projection code only needs
//! ring operations, inversion and a zero test. Numeric fields additionally
//! implement [`NumericField`] for square roots, magnitudes and conversion.

mod cyclo;
mod dd;
mod double;
mod mp;
mod rational;
mod scaled;

pub use cyclo::{CycloElem, CycloField};
pub use double::DoubleField;
pub use mp::{log10_rel_diff, MpComplex, MpField};
pub use rational::RationalField;
pub use scaled::{ScaledComplex, ScaledField};

use std::fmt::Debug;

use num_complex::Complex64;

use crate::error::Result;

pub trait Field: Send + Sync {
    type Elem: Clone + Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    #[allow(clippy::wrong_self_convention)]
    fn from_i64(&self, v: i64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;

    fn pow(&self, a: &Self::Elem, mut n: u64) -> Self::Elem {
        if n == 0 {
            return self.one();
        }
        let mut base = a.clone();
        while n & 1 == 0 {
            base = self.mul(&base, &base);
            n >>= 1;
        }
        let mut acc = base.clone();
        n >>= 1;
        while n > 0 {
            base = self.mul(&base, &base);
            if n & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            n >>= 1;
        }
        acc
    }

    /// `a + c * b` for a small integer `c`.
    fn add_scaled(&self, a: &Self::Elem, c: i64, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.mul(&self.from_i64(c), b))
    }

    /// Whether the element is a usable value (numeric fields reject NaN/inf).
    fn is_finite(&self, _a: &Self::Elem) -> bool {
        true
    }
}

/// Floating-point complex fields.
pub trait NumericField: Field {
    /// Mantissa precision in bits.
    fn precision_bits(&self) -> u32;
    #[allow(clippy::wrong_self_convention)]
    fn from_c64(&self, z: Complex64) -> Self::Elem;
    /// `exp(i pi num / den)` computed at the field's precision.
    fn exp_i_pi(&self, num: i64, den: i64) -> Self::Elem;
    /// `log2 |a|`, `-inf` for zero.
    fn abs_log2(&self, a: &Self::Elem) -> f64;
    /// `|a| < bound` for a positive `bound` in double range.
    fn abs_below(&self, a: &Self::Elem, bound: f64) -> bool {
        self.abs_log2(a) < bound.log2()
    }
    /// Principal square root.
    fn sqrt(&self, a: &Self::Elem) -> Self::Elem;
    /// Nearest double-precision value (may over- or underflow).
    fn to_c64(&self, a: &Self::Elem) -> Complex64;
    /// `|a - b| / |b|` as a double, computed in the field.
    fn rel_diff(&self, a: &Self::Elem, b: &Self::Elem) -> f64 {
        let d = self.abs_log2(&self.sub(a, b));
        let r = self.abs_log2(b);
        (d - r).exp2()
    }
    /// Real and imaginary parts in decimal scientific notation.
    fn to_decimal(&self, a: &Self::Elem, digits: usize) -> (String, String);
    /// `(q^2)^n - 1` for `n = 0..=n_max`.
    fn q2_powers_minus_one(&self, q: &Self::Elem, n_max: usize) -> Vec<Self::Elem> {
        let x = self.mul(q, q);
        let one = self.one();
        let mut xn = one.clone();
        let mut out = Vec::with_capacity(n_max + 1);
        for n in 0..=n_max {
            if n > 0 {
                xn = self.mul(&xn, &x);
            }
            out.push(self.sub(&xn, &one));
        }
        out
    }
    /// Relative size of `x^n - 1` below which `Phi_n(x)` is taken from its
    /// coefficients instead of the quotient.
    fn horner_threshold(&self) -> f64 {
        1e-8
    }
}

pub(crate) fn sci(x: f64, digits: usize) -> String {
    format!("{:.*e}", digits.saturating_sub(1), x)
}
