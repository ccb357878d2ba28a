use rug::Rational;

use super::Field;
use crate::error::{DcrError, Result};

/// Exact rational numbers.
#[derive(Clone, Copy, Debug, Default)]
pub struct RationalField;

impl Field for RationalField {
    type Elem = Rational;

    fn zero(&self) -> Rational {
        Rational::new()
    }

    fn one(&self) -> Rational {
        Rational::from(1)
    }

    fn from_i64(&self, v: i64) -> Rational {
        Rational::from(v)
    }

    fn add(&self, a: &Rational, b: &Rational) -> Rational {
        Rational::from(a + b)
    }

    fn sub(&self, a: &Rational, b: &Rational) -> Rational {
        Rational::from(a - b)
    }

    fn mul(&self, a: &Rational, b: &Rational) -> Rational {
        Rational::from(a * b)
    }

    fn neg(&self, a: &Rational) -> Rational {
        Rational::from(-a)
    }

    fn inv(&self, a: &Rational) -> Result<Rational> {
        if *a == 0 {
            return Err(DcrError::DivisionByZero("rational inverse"));
        }
        Ok(a.clone().recip())
    }

    fn is_zero(&self, a: &Rational) -> bool {
        *a == 0
    }
}
