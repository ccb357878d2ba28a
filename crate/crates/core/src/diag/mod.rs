//! Eager log-sum-exp baseline, conditioning diagnostics and recoupling
//! identity checks for 6j-symbols at `q = exp(i pi / h)`.

mod identities;
pub mod reference;

pub use identities::{identity_checks, IdentityKind, SixJCache};

use rug::float::Constant;
use rug::Float;
use serde::Serialize;

use crate::compiler::{compile_sixj, sixj_descriptor, Dcr, SixJLabels};
use crate::error::{DcrError, Result};
use crate::field::MpField;
use crate::projection::{evaluate_amplitude, term_values, ProjectionContext};

/// `log [n]` and `log [n]!` at `q = exp(i pi / h)` for `0 <= n <= n_max`.
#[derive(Clone, Debug)]
pub struct LogQTable {
    pub h: u32,
    /// `log(sin(n pi / h) / sin(pi / h))`; index 0 is unused.
    pub log_qint: Vec<f64>,
    /// Prefix sums of `log_qint`.
    pub log_qfact: Vec<f64>,
}

/// Natural-log quantum integer and factorial tables. `n_max` must stay
/// below `h`, where `[h] = 0`.
pub fn log_qint_table(h: u32, n_max: u32) -> Result<LogQTable> {
    if h < 3 {
        return Err(DcrError::Domain(format!("h = {h} < 3")));
    }
    if n_max >= h {
        return Err(DcrError::Domain(format!(
            "[{n_max}] vanishes or changes sign at h = {h}; log table needs n < h"
        )));
    }
    let s1 = (std::f64::consts::PI / h as f64).sin();
    let mut log_qint = vec![0.0];
    let mut log_qfact = vec![0.0];
    for n in 1..=n_max {
        let v = ((n as f64 * std::f64::consts::PI / h as f64).sin() / s1).ln();
        log_qint.push(v);
        log_qfact.push(log_qfact[n as usize - 1] + v);
    }
    Ok(LogQTable { h, log_qint, log_qfact })
}

/// Working precision of the eager baseline.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Precision {
    Double,
    Extended(u32),
}

/// Factorial arguments of one Racah summand, split into the numerator and
/// denominator of the fully expanded term including the triangle prefactor.
struct ExpandedTerm {
    /// `(argument, weight)`: weight 2 stands for a full factorial, 1 for a
    /// factorial under the square root.
    num: Vec<(i64, u32)>,
    den: Vec<(i64, u32)>,
}

fn expanded_terms(labels: SixJLabels, h: u32) -> Result<Vec<(i64, ExpandedTerm)>> {
    let k = h as i64 - 2;
    labels.check(Some(k))?;
    let d = sixj_descriptor(labels)?;
    let mut pre_num = Vec::new();
    let mut pre_den = Vec::new();
    for i in 0..4 {
        let (x, y, z) = labels.triad(i);
        pre_num.extend([((x + y - z) / 2, 1), ((x - y + z) / 2, 1), ((-x + y + z) / 2, 1)]);
        pre_den.push(((x + y + z) / 2 + 1, 1));
    }
    let mut out = Vec::new();
    for z in d.z_min()..=d.z_max() {
        if z + 1 >= h as i64 {
            // [z+1]! contains [h] = 0
            continue;
        }
        let mut num = vec![(z + 1, 2)];
        num.extend(&pre_num);
        let mut den: Vec<(i64, u32)> = d.a.iter().map(|&a| (z - a, 2)).collect();
        den.extend(d.b.iter().map(|&b| (b - z, 2)));
        den.extend(&pre_den);
        out.push((z, ExpandedTerm { num, den }));
    }
    Ok(out)
}

fn max_arg(terms: &[(i64, ExpandedTerm)]) -> i64 {
    terms
        .iter()
        .flat_map(|(_, t)| t.num.iter().chain(&t.den).map(|&(n, _)| n))
        .max()
        .unwrap_or(0)
}

/// Eager evaluation of the 6j-symbol from logarithmic q-factorial tables.
///
/// Every summand is formed as `exp(log N_z - log D_z)` with `N_z`, `D_z` the
/// full products of numerator and denominator factorials (prefactor
/// included through half-weights), then summed with alternating signs after
/// shifting by the largest exponent.
pub fn lse_eval_sixj(labels: SixJLabels, h: u32, precision: Precision) -> Result<f64> {
    let terms = expanded_terms(labels, h)?;
    if terms.is_empty() {
        return Ok(0.0);
    }
    let n_max = max_arg(&terms) as u32;
    match precision {
        Precision::Double => {
            let t = log_qint_table(h, n_max)?;
            let lf = |n: i64| t.log_qfact[n as usize];
            let logs: Vec<(i64, f64)> = terms
                .iter()
                .map(|(z, e)| {
                    let n: f64 = e.num.iter().map(|&(a, w)| 0.5 * w as f64 * lf(a)).sum();
                    let d: f64 = e.den.iter().map(|&(a, w)| 0.5 * w as f64 * lf(a)).sum();
                    (*z, n - d)
                })
                .collect();
            let m = logs.iter().map(|&(_, l)| l).fold(f64::NEG_INFINITY, f64::max);
            let s: f64 = logs
                .iter()
                .map(|&(z, l)| if z % 2 == 0 { 1.0 } else { -1.0 } * (l - m).exp())
                .sum();
            Ok(s * m.exp())
        }
        Precision::Extended(bits) => {
            if bits < 53 {
                return Err(DcrError::Domain(format!("{bits} bits < 53")));
            }
            if n_max >= h {
                return Err(DcrError::Domain(format!("[{n_max}] at h = {h}")));
            }
            let pi_h = Float::with_val(bits, Constant::Pi) / h;
            let s1 = Float::with_val(bits, pi_h.sin_ref());
            let mut lf = vec![Float::new(bits)];
            for n in 1..=n_max {
                let v = (Float::with_val(bits, &pi_h * n).sin() / &s1).ln();
                let next = Float::with_val(bits, &lf[n as usize - 1] + &v);
                lf.push(next);
            }
            let logs: Vec<(i64, Float)> = terms
                .iter()
                .map(|(z, e)| {
                    let mut l = Float::new(bits);
                    for &(a, w) in &e.num {
                        l += Float::with_val(bits, &lf[a as usize] * w) / 2u32;
                    }
                    for &(a, w) in &e.den {
                        l -= Float::with_val(bits, &lf[a as usize] * w) / 2u32;
                    }
                    (*z, l)
                })
                .collect();
            let m = logs
                .iter()
                .map(|(_, l)| l.clone())
                .reduce(|a, b| if a > b { a } else { b })
                .expect("non-empty");
            let mut s = Float::new(bits);
            for (z, l) in &logs {
                let t = Float::with_val(bits, l - &m).exp();
                if z % 2 == 0 {
                    s += t;
                } else {
                    s -= t;
                }
            }
            Ok((s * m.exp()).to_f64())
        }
    }
}

/// Conditioning of a 6j-symbol at `q = exp(i pi / h)`.
#[derive(Clone, Debug, Serialize)]
pub struct Diagnostics {
    /// `sum_z |T_z| / |S|`.
    pub kappa: f64,
    pub log10_kappa: f64,
    /// `log10(max_z |T_z| / |S|)`.
    pub delta_loss: f64,
    pub gamma_eager: f64,
    pub gamma_dcr: f64,
    pub max_term: f64,
    pub abs_sum: f64,
    /// Signed real value `S`.
    pub value: f64,
    /// Number of summands.
    pub terms: usize,
    /// Unit roundoff of IEEE double precision.
    pub unit_roundoff: f64,
}

/// `max_z` of the summed `log10` magnitudes of every factorial in the
/// unreduced Racah summand `[z+1]!, [z-a_i]!, [b_y-z]!`.
pub fn gamma_eager(labels: SixJLabels, h: u32) -> Result<f64> {
    labels.check(Some(h as i64 - 2))?;
    let d = sixj_descriptor(labels)?;
    let terms = expanded_terms(labels, h)?;
    let t = log_qint_table(h, max_arg(&terms).max(1) as u32)?;
    let lf10 = |n: i64| t.log_qfact[n as usize] * std::f64::consts::LOG10_E;
    let mut best = f64::NEG_INFINITY;
    for (z, _) in &terms {
        let g =
            lf10(z + 1) + d.a.iter().map(|&a| lf10(z - a)).sum::<f64>() + d.b.iter().map(|&b| lf10(b - z)).sum::<f64>();
        best = best.max(g);
    }
    Ok(best)
}

/// `max_z sum_d |e_d| log10 |Phi_d(q^2)|` over the reduced summand
/// monomials of `dcr`.
pub fn gamma_dcr(dcr: &Dcr, log_phi: &[f64]) -> Result<f64> {
    let mut best = f64::NEG_INFINITY;
    for m in dcr.cumulative_terms()? {
        let g: f64 = m
            .exps
            .iter()
            .map(|(d, e)| e.unsigned_abs() as f64 * log_phi[d as usize])
            .sum();
        best = best.max(g);
    }
    Ok(best)
}

/// Diagnostics with summands evaluated at `bits` of precision.
pub fn diagnostics_sixj(labels: SixJLabels, h: u32, bits: u32) -> Result<Diagnostics> {
    labels.check(Some(h as i64 - 2))?;
    let dcr = compile_sixj(labels)?;
    let mp = MpField::new(bits)?;
    let ctx = ProjectionContext::at_level(mp, h, dcr.d_max())?;

    let pref = {
        let root = ctx.project(dcr.root())?.norm();
        let rad = ctx.project(dcr.rad())?.norm();
        root * rad.sqrt()
    };
    let mut max_term = Float::new(bits);
    let mut abs_sum = Float::new(bits);
    let terms = term_values(&dcr, &ctx)?;
    for t in &terms {
        let v = Float::with_val(bits, t.norm() * &pref);
        abs_sum += &v;
        if v > max_term {
            max_term = v;
        }
    }
    let value = evaluate_amplitude(&dcr, &ctx)?.re;
    let abs_value = Float::with_val(bits, value.abs_ref());
    if abs_value.is_zero() {
        return Err(DcrError::Domain(format!("{labels} vanishes at h = {h}")));
    }
    let kappa = Float::with_val(bits, &abs_sum / &abs_value);
    let ratio = Float::with_val(bits, &max_term / &abs_value);

    let dbl = ProjectionContext::at_level(crate::field::ScaledField, h, dcr.d_max())?;
    Ok(Diagnostics {
        kappa: kappa.to_f64(),
        log10_kappa: kappa.log10().to_f64(),
        delta_loss: ratio.log10().to_f64(),
        gamma_eager: gamma_eager(labels, h)?,
        gamma_dcr: gamma_dcr(&dcr, &dbl.log_phi())?,
        max_term: max_term.to_f64(),
        abs_sum: abs_sum.to_f64(),
        value: value.to_f64(),
        terms: terms.len(),
        unit_roundoff: f64::EPSILON / 2.0,
    })
}
