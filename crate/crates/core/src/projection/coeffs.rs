use std::collections::HashMap;
use std::sync::Arc;

use once_cell::sync::Lazy;
use parking_lot::RwLock;

static COEFFS: Lazy<RwLock<HashMap<u32, Arc<[i64]>>>> = Lazy::new(Default::default);

/// Moebius function by trial division.
fn moebius(mut n: u32) -> i32 {
    let mut mu = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            mu = -mu;
        }
        p += 1;
    }
    if n > 1 {
        mu = -mu;
    }
    mu
}

/// `p * (x^d - 1)`.
fn mul_xd_minus_one(p: &[i64], d: usize) -> Vec<i64> {
    let mut out = vec![0i64; p.len() + d];
    for (i, &c) in p.iter().enumerate() {
        out[i + d] += c;
        out[i] -= c;
    }
    out
}

/// `p / (x^d - 1)`, assuming the division is exact.
fn div_xd_minus_one(p: &[i64], d: usize) -> Vec<i64> {
    let n = p.len() - d;
    let mut q = vec![0i64; n];
    // p_i = q_(i-d) - q_i
    for i in 0..n {
        q[i] = if i >= d { q[i - d] } else { 0 } - p[i];
    }
    q
}

fn build(d: u32) -> Vec<i64> {
    // Phi_d = prod_{e | d} (x^e - 1)^mu(d/e); multiply first so every
    // division is exact
    let divs: Vec<u32> = (1..=d).filter(|e| d.is_multiple_of(*e)).collect();
    let mut p = vec![1i64];
    for &e in &divs {
        if moebius(d / e) == 1 {
            p = mul_xd_minus_one(&p, e as usize);
        }
    }
    for &e in &divs {
        if moebius(d / e) == -1 {
            p = div_xd_minus_one(&p, e as usize);
        }
    }
    p
}

/// Integer coefficients of `Phi_d(x)` in ascending order. Cached.
pub fn cyclotomic_coeffs(d: u32) -> Arc<[i64]> {
    assert!(d >= 1, "Phi_0 is undefined");
    if let Some(c) = COEFFS.read().get(&d) {
        return c.clone();
    }
    let c: Arc<[i64]> = build(d).into();
    COEFFS.write().entry(d).or_insert_with(|| c.clone());
    c
}

/// Coefficients of `Phi_d` by dividing `x^d - 1` by every `Phi_e`, `e | d`,
/// `e < d`, with general long division. Slow; kept as an oracle.
pub fn cyclotomic_coeffs_by_division(d: u32) -> Vec<i64> {
    let mut p = vec![0i64; d as usize + 1];
    p[0] = -1;
    p[d as usize] = 1;
    for e in (1..d).filter(|e| d.is_multiple_of(*e)) {
        let div = cyclotomic_coeffs_by_division(e);
        let dl = div.len() - 1;
        let mut rem = p.clone();
        let mut quot = vec![0i64; p.len() - dl];
        for i in (0..quot.len()).rev() {
            // monic divisor
            let c = rem[i + dl];
            quot[i] = c;
            for (j, &dj) in div.iter().enumerate() {
                rem[i + j] -= c * dj;
            }
        }
        assert!(rem.iter().all(|&r| r == 0), "inexact division by Phi_{e}");
        p = quot;
    }
    p
}

/// `Phi_d(1)`: `p` when `d` is a power of the prime `p`, otherwise 1.
pub fn phi_at_one(d: u32) -> u64 {
    assert!(d >= 2, "Phi_1(1) = 0");
    let mut p = 2;
    while p * p <= d {
        if d.is_multiple_of(p) {
            let mut m = d;
            while m.is_multiple_of(p) {
                m /= p;
            }
            return if m == 1 { p as u64 } else { 1 };
        }
        p += 1;
    }
    d as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cases() {
        assert_eq!(&*cyclotomic_coeffs(1), &[-1, 1]);
        assert_eq!(&*cyclotomic_coeffs(2), &[1, 1]);
        assert_eq!(&*cyclotomic_coeffs(4), &[1, 0, 1]);
        assert_eq!(&*cyclotomic_coeffs(6), &[1, -1, 1]);
        assert_eq!(&*cyclotomic_coeffs(12), &[1, 0, -1, 0, 1]);
    }

    #[test]
    fn order_105_has_a_minus_two() {
        let c = cyclotomic_coeffs(105);
        assert_eq!(c.len(), 49);
        assert!(c.contains(&-2));
        assert_eq!(c.iter().filter(|&&x| x == -2).count(), 2);
    }

    #[test]
    fn matches_long_division() {
        for d in 1..=120 {
            assert_eq!(&*cyclotomic_coeffs(d), &cyclotomic_coeffs_by_division(d)[..], "d = {d}");
        }
    }

    #[test]
    fn values_at_one() {
        assert_eq!(phi_at_one(2), 2);
        assert_eq!(phi_at_one(3), 3);
        assert_eq!(phi_at_one(4), 2);
        assert_eq!(phi_at_one(6), 1);
        assert_eq!(phi_at_one(27), 3);
        assert_eq!(phi_at_one(97), 97);
        for d in 2..200u32 {
            let s: i64 = cyclotomic_coeffs(d).iter().sum();
            assert_eq!(s as u64, phi_at_one(d));
        }
    }
}
