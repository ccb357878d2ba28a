//! Cyclotomic factorization of quantum integers and quantum factorials.
//!
//! `[n]_q = q^(1-n) * prod_{d | n, d > 1} Phi_d(q^2)` and
//! `[n]_q! = q^(n(1-n)/2) * prod_{d=2..n} Phi_d(q^2)^floor(n/d)`.

use std::collections::HashMap;
use std::sync::Arc;

use once_cell::sync::Lazy;
use parking_lot::RwLock;

use crate::error::{DcrError, Result};
use crate::exponent::{CycloMonomial, ExponentVector, Sign};

static DIVISORS: Lazy<RwLock<HashMap<u64, Arc<[u64]>>>> = Lazy::new(Default::default);
static QFACT: Lazy<RwLock<HashMap<u64, CycloMonomial>>> = Lazy::new(Default::default);

fn divisors_uncached(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut i = 1u64;
    while i * i <= n {
        if n.is_multiple_of(i) {
            small.push(i);
            if i != n / i {
                large.push(n / i);
            }
        }
        i += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// All positive divisors of `n` in ascending order.
pub fn divisors(n: u64) -> Result<Arc<[u64]>> {
    if n == 0 {
        return Err(DcrError::Domain("divisors of 0 are undefined".into()));
    }
    if let Some(d) = DIVISORS.read().get(&n) {
        return Ok(d.clone());
    }
    let d: Arc<[u64]> = divisors_uncached(n).into();
    DIVISORS.write().entry(n).or_insert_with(|| d.clone());
    Ok(d)
}

/// `[n]_q` as a cyclotomic monomial. Requires `n >= 1`.
pub fn qint_monomial(n: i64) -> Result<CycloMonomial> {
    if n <= 0 {
        return Err(DcrError::Domain(format!("quantum integer [{n}] with n <= 0")));
    }
    let divs = divisors(n as u64)?;
    let entries = divs
        .iter()
        .skip(1)
        .map(|&d| Ok((to_index(d)?, 1i64)))
        .collect::<Result<Vec<_>>>()?;
    Ok(CycloMonomial::new(
        Sign::Plus,
        1 - n,
        ExponentVector::from_sorted_unchecked(entries),
    ))
}

fn to_index(d: u64) -> Result<u32> {
    u32::try_from(d).map_err(|_| DcrError::Overflow("cyclotomic index"))
}

fn qfact_uncached(n: i64) -> Result<CycloMonomial> {
    let q_power = n
        .checked_mul(1 - n)
        .map(|v| v / 2)
        .ok_or(DcrError::Overflow("q power"))?;
    let entries = (2..=n)
        .map(|d| Ok((to_index(d as u64)?, n / d)))
        .collect::<Result<Vec<_>>>()?;
    Ok(CycloMonomial::new(
        Sign::Plus,
        q_power,
        ExponentVector::from_sorted_unchecked(entries),
    ))
}

/// `[n]_q!` as a cyclotomic monomial. Requires `n >= 0`; results are
/// memoized for the lifetime of the process.
pub fn qfact_monomial(n: i64) -> Result<CycloMonomial> {
    if n < 0 {
        return Err(DcrError::Domain(format!("quantum factorial [{n}]! with n < 0")));
    }
    let key = n as u64;
    if let Some(m) = QFACT.read().get(&key) {
        return Ok(m.clone());
    }
    let m = qfact_uncached(n)?;
    QFACT.write().entry(key).or_insert_with(|| m.clone());
    Ok(m)
}
