//! Sparse exponent vectors over the cyclotomic basis `{q, Phi_d(q^2)}` and the
//! free abelian group of cyclotomic monomials built on them.
//!
//! A monomial `(sigma, P, e)` stands for `sigma * q^P * prod_d Phi_d(q^2)^e_d`.
//! Multiplication and division never touch a polynomial: they merge two sorted
//! index/exponent arrays and drop every entry that cancels to zero.

use std::cell::Cell;
use std::collections::BTreeMap;
use std::fmt;

use serde::de::{self, Deserializer};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};

use crate::error::{DcrError, Result};

thread_local! {
    static ENTRY_OPS: Cell<u64> = const { Cell::new(0) };
}

/// Number of exponent entries visited by merge operations on this thread
/// since the last [`reset_op_counter`].
pub fn op_counter() -> u64 {
    ENTRY_OPS.with(|c| c.get())
}

pub fn reset_op_counter() {
    ENTRY_OPS.with(|c| c.set(0));
}

#[inline]
fn count_ops(n: usize) {
    ENTRY_OPS.with(|c| c.set(c.get() + n as u64));
}

/// Sparse map `d -> e_d` with `d >= 2`, stored as an ascending array of
/// nonzero entries.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct ExponentVector {
    entries: Vec<(u32, i64)>,
}

impl ExponentVector {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a vector from arbitrary `(d, e)` pairs. Repeated indices are
    /// summed and zero entries dropped.
    pub fn from_pairs<I: IntoIterator<Item = (u32, i64)>>(pairs: I) -> Result<Self> {
        let mut map: BTreeMap<u32, i64> = BTreeMap::new();
        for (d, e) in pairs {
            if d < 2 {
                return Err(DcrError::Domain(format!("cyclotomic index {d} < 2")));
            }
            let slot = map.entry(d).or_insert(0);
            *slot = slot.checked_add(e).ok_or(DcrError::Overflow("exponent"))?;
        }
        Ok(Self {
            entries: map.into_iter().filter(|&(_, e)| e != 0).collect(),
        })
    }

    /// Wraps an already sorted, zero-free list. Callers inside the crate use
    /// this to skip the map round trip.
    pub(crate) fn from_sorted_unchecked(entries: Vec<(u32, i64)>) -> Self {
        debug_assert!(entries.windows(2).all(|w| w[0].0 < w[1].0));
        debug_assert!(entries.iter().all(|&(d, e)| d >= 2 && e != 0));
        Self { entries }
    }

    pub fn get(&self, d: u32) -> i64 {
        self.entries
            .binary_search_by_key(&d, |&(k, _)| k)
            .map(|i| self.entries[i].1)
            .unwrap_or(0)
    }

    /// Number of stored (nonzero) entries.
    pub fn support_size(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Largest stored index, if any.
    pub fn max_index(&self) -> Option<u32> {
        self.entries.last().map(|&(d, _)| d)
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, i64)> + '_ {
        self.entries.iter().copied()
    }

    /// Re-applies the normalization rules. Stored vectors are always
    /// normalized already, so this is the identity on valid values.
    pub fn normalize(&self) -> Self {
        Self {
            entries: self.entries.iter().copied().filter(|&(_, e)| e != 0).collect(),
        }
    }

    /// `self + sign * other`, merged in one pass over both supports.
    fn merge(&self, other: &Self, sign: i64) -> Result<Self> {
        let (a, b) = (&self.entries, &other.entries);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            let (da, ea) = a[i];
            let (db, eb) = b[j];
            if da < db {
                out.push((da, ea));
                i += 1;
            } else if db < da {
                out.push((db, eb.checked_mul(sign).ok_or(DcrError::Overflow("exponent"))?));
                j += 1;
            } else {
                let e = eb
                    .checked_mul(sign)
                    .and_then(|t| ea.checked_add(t))
                    .ok_or(DcrError::Overflow("exponent"))?;
                if e != 0 {
                    out.push((da, e));
                }
                i += 1;
                j += 1;
            }
        }
        out.extend_from_slice(&a[i..]);
        for &(d, e) in &b[j..] {
            out.push((d, e.checked_mul(sign).ok_or(DcrError::Overflow("exponent"))?));
        }
        count_ops(a.len() + b.len());
        Ok(Self { entries: out })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.merge(other, 1)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.merge(other, -1)
    }

    pub fn scale(&self, n: i64) -> Result<Self> {
        if n == 0 {
            return Ok(Self::new());
        }
        let entries = self
            .entries
            .iter()
            .map(|&(d, e)| e.checked_mul(n).map(|v| (d, v)))
            .collect::<Option<Vec<_>>>()
            .ok_or(DcrError::Overflow("exponent"))?;
        count_ops(entries.len());
        Ok(Self { entries })
    }
}

impl fmt::Debug for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.entries.iter().map(|(d, e)| (d, e))).finish()
    }
}

impl Serialize for ExponentVector {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_map(self.entries.iter().map(|(d, e)| (d.to_string(), e)))
    }
}

impl<'de> Deserialize<'de> for ExponentVector {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw: BTreeMap<String, i64> = BTreeMap::deserialize(d)?;
        let mut pairs = Vec::with_capacity(raw.len());
        for (k, v) in raw {
            let idx: u32 = k
                .parse()
                .map_err(|_| de::Error::custom(format!("cyclotomic index {k:?} is not an integer")))?;
            if v == 0 {
                return Err(de::Error::custom(format!("zero exponent stored at index {idx}")));
            }
            pairs.push((idx, v));
        }
        ExponentVector::from_pairs(pairs).map_err(de::Error::custom)
    }
}

/// Sign in `{-1, +1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn from_i64(v: i64) -> Option<Self> {
        match v {
            1 => Some(Sign::Plus),
            -1 => Some(Sign::Minus),
            _ => None,
        }
    }

    pub fn as_i64(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn is_negative(self) -> bool {
        self == Sign::Minus
    }

    pub fn flip(self) -> Self {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    /// `(-1)^n`.
    pub fn parity(n: i64) -> Self {
        if n.rem_euclid(2) == 0 {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl std::ops::Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl Serialize for Sign {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_i64(self.as_i64())
    }
}

impl<'de> Deserialize<'de> for Sign {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = i64::deserialize(d)?;
        Sign::from_i64(v).ok_or_else(|| de::Error::custom(format!("sigma must be +1 or -1, got {v}")))
    }
}

/// `sigma * q^P * prod_d Phi_d(q^2)^e_d`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CycloMonomial {
    pub sigma: Sign,
    #[serde(rename = "P")]
    pub q_power: i64,
    #[serde(rename = "e")]
    pub exps: ExponentVector,
}

impl Default for CycloMonomial {
    fn default() -> Self {
        Self::identity()
    }
}

impl fmt::Debug for CycloMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:+}, P={}, {:?})", self.sigma.as_i64(), self.q_power, self.exps)
    }
}

impl CycloMonomial {
    pub fn identity() -> Self {
        Self {
            sigma: Sign::Plus,
            q_power: 0,
            exps: ExponentVector::new(),
        }
    }

    pub fn new(sigma: Sign, q_power: i64, exps: ExponentVector) -> Self {
        Self { sigma, q_power, exps }
    }

    /// Convenience constructor used heavily in tests.
    pub fn from_parts(sigma: i64, q_power: i64, pairs: &[(u32, i64)]) -> Result<Self> {
        let sigma =
            Sign::from_i64(sigma).ok_or_else(|| DcrError::Domain(format!("sigma must be +1 or -1, got {sigma}")))?;
        Ok(Self {
            sigma,
            q_power,
            exps: ExponentVector::from_pairs(pairs.iter().copied())?,
        })
    }

    pub fn is_identity(&self) -> bool {
        self.sigma == Sign::Plus && self.q_power == 0 && self.exps.is_empty()
    }

    pub fn negated(&self) -> Self {
        Self {
            sigma: self.sigma.flip(),
            ..self.clone()
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        Ok(Self {
            sigma: self.sigma * other.sigma,
            q_power: self
                .q_power
                .checked_add(other.q_power)
                .ok_or(DcrError::Overflow("q power"))?,
            exps: self.exps.add(&other.exps)?,
        })
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(Self {
            sigma: self.sigma * other.sigma,
            q_power: self
                .q_power
                .checked_sub(other.q_power)
                .ok_or(DcrError::Overflow("q power"))?,
            exps: self.exps.sub(&other.exps)?,
        })
    }

    pub fn pow(&self, n: i64) -> Result<Self> {
        let sigma = if self.sigma.is_negative() && n.rem_euclid(2) == 1 {
            Sign::Minus
        } else {
            Sign::Plus
        };
        Ok(Self {
            sigma,
            q_power: self.q_power.checked_mul(n).ok_or(DcrError::Overflow("q power"))?,
            exps: self.exps.scale(n)?,
        })
    }

    pub fn inverse(&self) -> Result<Self> {
        self.pow(-1)
    }

    /// Multiplies in place by `other^n` without materializing the power.
    pub fn mul_pow_assign(&mut self, other: &Self, n: i64) -> Result<()> {
        if n == 0 {
            return Ok(());
        }
        let scaled = other.pow(n)?;
        *self = self.mul(&scaled)?;
        Ok(())
    }

    /// Splits `self = root^2 * rad` with every exponent of `rad` (and its
    /// q-power) in `{0, 1}`. The sign stays on `rad`.
    pub fn sqrt_split(&self) -> SquareSplit {
        let mut root = Vec::with_capacity(self.exps.support_size());
        let mut rad = Vec::new();
        for (d, e) in self.exps.iter() {
            let (half, rem) = (e.div_euclid(2), e.rem_euclid(2));
            if half != 0 {
                root.push((d, half));
            }
            if rem != 0 {
                rad.push((d, rem));
            }
        }
        count_ops(self.exps.support_size());
        SquareSplit {
            root: CycloMonomial {
                sigma: Sign::Plus,
                q_power: self.q_power.div_euclid(2),
                exps: ExponentVector::from_sorted_unchecked(root),
            },
            rad: CycloMonomial {
                sigma: self.sigma,
                q_power: self.q_power.rem_euclid(2),
                exps: ExponentVector::from_sorted_unchecked(rad),
            },
        }
    }

    /// Largest cyclotomic index present, or 1 when there is none.
    pub fn d_max(&self) -> u32 {
        self.exps.max_index().unwrap_or(1)
    }
}

/// Result of [`CycloMonomial::sqrt_split`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquareSplit {
    pub root: CycloMonomial,
    pub rad: CycloMonomial,
}

pub fn support_size(e: &ExponentVector) -> usize {
    e.support_size()
}
