use rug::{Float, Rational};

use super::{Field, MpComplex, MpField, NumericField};
use crate::error::{DcrError, Result};
use crate::projection::cyclotomic_coeffs;

/// Element of `Q(zeta_n)` as rational coefficients of `1, x, ..., x^(deg-1)`
/// reduced modulo `Phi_n(x)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycloElem {
    c: Vec<Rational>,
}

impl CycloElem {
    pub fn coeffs(&self) -> &[Rational] {
        &self.c
    }

    /// The element as a rational number, if it has no irrational part.
    pub fn as_rational(&self) -> Option<&Rational> {
        if self.c[1..].iter().all(|x| *x == 0) {
            Some(&self.c[0])
        } else {
            None
        }
    }
}

/// The cyclotomic field `Q(zeta_2h)`, in which `q = zeta_2h = exp(i pi / h)`.
#[derive(Clone, Debug)]
pub struct CycloField {
    h: u32,
    n: u32,
    deg: usize,
    /// `x^m mod Phi_n` for `0 <= m < n`.
    xpow: Vec<Vec<i64>>,
    /// Units of `Z/n` other than 1, indexing the non-trivial Galois conjugations.
    units: Vec<u32>,
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl CycloField {
    pub fn new(h: u32) -> Result<Self> {
        if h < 2 {
            return Err(DcrError::Domain(format!("root of unity order h = {h} < 2")));
        }
        let n = h.checked_mul(2).ok_or(DcrError::Overflow("field order"))?;
        let modulus = cyclotomic_coeffs(n);
        let deg = modulus.len() - 1;
        let mut xpow = Vec::with_capacity(n as usize);
        let mut cur = vec![0i64; deg];
        cur[0] = 1;
        for _ in 0..n {
            xpow.push(cur.clone());
            // multiply by x and reduce the overflow coefficient with the monic modulus
            let top = cur[deg - 1];
            for i in (1..deg).rev() {
                cur[i] = cur[i - 1];
            }
            cur[0] = 0;
            for i in 0..deg {
                cur[i] = top
                    .checked_mul(modulus[i])
                    .and_then(|t| cur[i].checked_sub(t))
                    .ok_or(DcrError::Overflow("cyclotomic reduction"))?;
            }
        }
        let units = (2..n).filter(|&k| gcd(k, n) == 1).collect();
        Ok(Self { h, n, deg, xpow, units })
    }

    pub fn h(&self) -> u32 {
        self.h
    }

    /// Degree `phi(2h)` of the field over `Q`.
    pub fn degree(&self) -> usize {
        self.deg
    }

    #[allow(clippy::wrong_self_convention)]
    fn from_int_vec(&self, v: &[i64]) -> CycloElem {
        CycloElem {
            c: v.iter().map(|&x| Rational::from(x)).collect(),
        }
    }

    /// `zeta_2h^m` for any integer `m`.
    pub fn zeta_pow(&self, m: i64) -> CycloElem {
        let r = m.rem_euclid(self.n as i64) as usize;
        self.from_int_vec(&self.xpow[r])
    }

    /// `p(zeta^2)` for an integer polynomial `p` in ascending coefficients.
    pub fn eval_int_poly_at_q2(&self, p: &[i64]) -> CycloElem {
        let mut acc = vec![0i128; self.deg];
        for (i, &a) in p.iter().enumerate() {
            if a == 0 {
                continue;
            }
            let m = (2 * i) % self.n as usize;
            for (slot, &x) in acc.iter_mut().zip(&self.xpow[m]) {
                *slot += a as i128 * x as i128;
            }
        }
        CycloElem {
            c: acc.into_iter().map(Rational::from).collect(),
        }
    }

    /// Galois conjugate `zeta -> zeta^k`.
    pub fn conjugate(&self, a: &CycloElem, k: u32) -> CycloElem {
        let mut c = vec![Rational::new(); self.deg];
        for (i, ai) in a.c.iter().enumerate() {
            if *ai == 0 {
                continue;
            }
            let m = (i as u64 * k as u64 % self.n as u64) as usize;
            for (slot, &x) in c.iter_mut().zip(&self.xpow[m]) {
                if x != 0 {
                    *slot += Rational::from(ai * x);
                }
            }
        }
        CycloElem { c }
    }

    /// Numeric value under `zeta -> exp(i pi / h)`.
    pub fn embed(&self, a: &CycloElem, f: &MpField) -> MpComplex {
        let mut acc = f.zero();
        for (i, ai) in a.c.iter().enumerate() {
            if *ai == 0 {
                continue;
            }
            let z = f.exp_i_pi(i as i64, self.h as i64);
            let w = Float::with_val(f.prec(), ai);
            acc.re += Float::with_val(f.prec(), &z.re * &w);
            acc.im += Float::with_val(f.prec(), &z.im * &w);
        }
        acc
    }
}

impl Field for CycloField {
    type Elem = CycloElem;

    fn zero(&self) -> CycloElem {
        CycloElem {
            c: vec![Rational::new(); self.deg],
        }
    }

    fn one(&self) -> CycloElem {
        self.from_i64(1)
    }

    fn from_i64(&self, v: i64) -> CycloElem {
        let mut e = self.zero();
        e.c[0] = Rational::from(v);
        e
    }

    fn add(&self, a: &CycloElem, b: &CycloElem) -> CycloElem {
        CycloElem {
            c: a.c.iter().zip(&b.c).map(|(x, y)| Rational::from(x + y)).collect(),
        }
    }

    fn sub(&self, a: &CycloElem, b: &CycloElem) -> CycloElem {
        CycloElem {
            c: a.c.iter().zip(&b.c).map(|(x, y)| Rational::from(x - y)).collect(),
        }
    }

    fn mul(&self, a: &CycloElem, b: &CycloElem) -> CycloElem {
        let mut prod = vec![Rational::new(); 2 * self.deg - 1];
        for (i, ai) in a.c.iter().enumerate() {
            if *ai == 0 {
                continue;
            }
            for (j, bj) in b.c.iter().enumerate() {
                if *bj != 0 {
                    prod[i + j] += Rational::from(ai * bj);
                }
            }
        }
        let mut c: Vec<Rational> = prod.drain(..self.deg).collect();
        for (k, p) in prod.into_iter().enumerate() {
            if p == 0 {
                continue;
            }
            for (slot, &x) in c.iter_mut().zip(&self.xpow[self.deg + k]) {
                if x != 0 {
                    *slot += Rational::from(&p * x);
                }
            }
        }
        CycloElem { c }
    }

    fn neg(&self, a: &CycloElem) -> CycloElem {
        CycloElem {
            c: a.c.iter().map(|x| Rational::from(-x)).collect(),
        }
    }

    fn inv(&self, a: &CycloElem) -> Result<CycloElem> {
        if self.is_zero(a) {
            return Err(DcrError::DivisionByZero("cyclotomic field inverse"));
        }
        // a^-1 = (product of the other conjugates) / norm(a)
        let mut rest = self.one();
        for &k in &self.units {
            rest = self.mul(&rest, &self.conjugate(a, k));
        }
        let norm = self.mul(a, &rest);
        let Some(nv) = norm.as_rational() else {
            return Err(DcrError::Internal("field norm is not rational".into()));
        };
        let scale = nv.clone().recip();
        Ok(CycloElem {
            c: rest.c.into_iter().map(|x| x * &scale).collect(),
        })
    }

    fn is_zero(&self, a: &CycloElem) -> bool {
        a.c.iter().all(|x| *x == 0)
    }
}
