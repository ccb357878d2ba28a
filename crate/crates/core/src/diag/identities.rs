use std::ops::Div;

use rug::Float;

use crate::compiler::{compile_sixj, triangle_admissible, SixJLabels};
use crate::error::{DcrError, Result};
use crate::field::MpField;
use crate::projection::{evaluate_amplitude, ProjectionContext};

/// Which recoupling identity to check.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IdentityKind {
    Orthogonality,
    Pentagon,
}

/// Real 6j values at `q = exp(i pi / h)` for all twice-spins `0..=k`,
/// filled lazily. Labels inadmissible at level `k` map to zero.
pub struct SixJCache {
    field: MpField,
    h: u32,
    k: i64,
    ctx: ProjectionContext<MpField>,
    table: Vec<Option<Float>>,
    qint: Vec<Float>,
}

impl SixJCache {
    pub fn new(h: u32, bits: u32) -> Result<Self> {
        if !(3..=40).contains(&h) {
            return Err(DcrError::Domain(format!("identity tables need 3 <= h <= 40, got {h}")));
        }
        let field = MpField::new(bits)?;
        let k = h as i64 - 2;
        // largest cyclotomic index of a level-admissible 6j is below 2h
        let ctx = ProjectionContext::at_level(field, h, 2 * h)?;
        let n = (k + 1) as usize;
        let qint = (0..=k)
            .map(|t| {
                // [t + 1] = sin((t+1) pi / h) / sin(pi / h)
                let pi = Float::with_val(bits, rug::float::Constant::Pi);
                let s1 = Float::with_val(bits, &pi / h).sin();
                Float::with_val(bits, &pi * (t + 1)).div(h).sin() / s1
            })
            .collect();
        Ok(Self {
            field,
            h,
            k,
            ctx,
            table: vec![None; n.pow(6)],
            qint,
        })
    }

    pub fn level(&self) -> i64 {
        self.k
    }

    pub fn h(&self) -> u32 {
        self.h
    }

    /// `[t + 1]` for a twice-spin `t`.
    pub fn dim(&self, t: i64) -> &Float {
        &self.qint[t as usize]
    }

    fn slot(&self, l: &[i64; 6]) -> Option<usize> {
        let n = self.k + 1;
        let mut idx = 0i64;
        for &t in l {
            if !(0..n).contains(&t) {
                return None;
            }
            idx = idx * n + t;
        }
        Some(idx as usize)
    }

    pub fn get(&mut self, l: [i64; 6]) -> Result<Float> {
        let labels = SixJLabels::new(l);
        let Some(slot) = self.slot(&l) else {
            return Ok(Float::new(self.field.prec()));
        };
        if let Some(v) = &self.table[slot] {
            return Ok(v.clone());
        }
        let v = if labels.is_admissible(Some(self.k)) {
            let canon = labels.canonical().twice_spins();
            let cs = self.slot(&canon).expect("canonical labels stay in range");
            match &self.table[cs] {
                Some(v) => v.clone(),
                None => {
                    let dcr = compile_sixj(labels.canonical())?;
                    let v = evaluate_amplitude(&dcr, &self.ctx)?.re;
                    self.table[cs] = Some(v.clone());
                    v
                }
            }
        } else {
            Float::new(self.field.prec())
        };
        self.table[slot] = Some(v.clone());
        Ok(v)
    }
}

/// Largest absolute residual of the orthogonality or Biedenharn-Elliott
/// identity over all labels with twice-spins `<= max_twice_spin`; summed
/// internal labels range over everything admissible at level `h - 2`.
///
/// Twice-spin conventions, with `[n] = sin(n pi / h) / sin(pi / h)`:
///
/// * `sum_x [x+1][f+1] {a b x; c d f}{a b x; c d g} = delta_fg`
/// * `sum_x (-1)^((S+x)/2) [x+1] {a b x; c d p}{c d x; e f q}{e f x; b a r}
///   = {p q r; e a d}{p q r; f b c}`, `S` the sum of the nine outer labels.
pub fn identity_checks(kind: IdentityKind, max_twice_spin: i64, h: u32, bits: u32) -> Result<f64> {
    let mut c = SixJCache::new(h, bits)?;
    let k = c.level();
    let m = max_twice_spin.min(k);
    if m < 0 {
        return Ok(0.0);
    }
    let adm = |a: i64, b: i64, x: i64| triangle_admissible(a, b, x, Some(k));
    let mut worst = Float::new(bits);
    let mut acc = Float::new(bits);
    for a in 0..=m {
        for b in 0..=m {
            for cc in 0..=m {
                for d in 0..=m {
                    match kind {
                        IdentityKind::Orthogonality => {
                            let fs: Vec<i64> = (0..=m).filter(|&f| adm(a, d, f) && adm(b, cc, f)).collect();
                            for &f in &fs {
                                for &g in &fs {
                                    acc.assign_zero();
                                    for x in 0..=k {
                                        if !(adm(a, b, x) && adm(x, cc, d)) {
                                            continue;
                                        }
                                        let s1 = c.get([a, b, x, cc, d, f])?;
                                        let s2 = c.get([a, b, x, cc, d, g])?;
                                        let w = Float::with_val(bits, c.dim(x) * c.dim(f));
                                        acc += w * s1 * s2;
                                    }
                                    if f == g {
                                        acc -= 1;
                                    }
                                    worst.max_abs(&acc);
                                }
                            }
                        }
                        IdentityKind::Pentagon => {
                            for e in 0..=m {
                                for f in 0..=m {
                                    pentagon_at(&mut c, [a, b, cc, d, e, f], m, &mut acc, &mut worst)?;
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(worst.to_f64())
}

fn pentagon_at(
    c: &mut SixJCache,
    [a, b, cc, d, e, f]: [i64; 6],
    m: i64,
    acc: &mut Float,
    worst: &mut Float,
) -> Result<()> {
    let k = c.level();
    let adm = |a: i64, b: i64, x: i64| triangle_admissible(a, b, x, Some(k));
    let ps: Vec<i64> = (0..=m).filter(|&p| adm(a, d, p) && adm(b, cc, p)).collect();
    let qs: Vec<i64> = (0..=m).filter(|&q| adm(cc, f, q) && adm(d, e, q)).collect();
    let rs: Vec<i64> = (0..=m).filter(|&r| adm(e, a, r) && adm(f, b, r)).collect();
    let bits = acc.prec();
    for &p in &ps {
        for &q in &qs {
            for &r in &rs {
                let s = a + b + cc + d + e + f + p + q + r;
                acc.assign_zero();
                for x in 0..=k {
                    if (s + x) % 2 != 0 || !(adm(a, b, x) && adm(cc, d, x) && adm(e, f, x)) {
                        continue;
                    }
                    let t = Float::with_val(bits, c.get([a, b, x, cc, d, p])? * c.get([cc, d, x, e, f, q])?)
                        * c.get([e, f, x, b, a, r])?
                        * c.dim(x);
                    if ((s + x) / 2) % 2 == 0 {
                        *acc += t;
                    } else {
                        *acc -= t;
                    }
                }
                let rhs = c.get([p, q, r, e, a, d])? * c.get([p, q, r, f, b, cc])?;
                *acc -= rhs;
                worst.max_abs(acc);
            }
        }
    }
    Ok(())
}

trait FloatExt {
    fn assign_zero(&mut self);
    fn max_abs(&mut self, v: &Float);
}

impl FloatExt for Float {
    fn assign_zero(&mut self) {
        *self = Float::new(self.prec());
    }

    fn max_abs(&mut self, v: &Float) {
        let a = Float::with_val(self.prec(), v.abs_ref());
        if a > *self {
            *self = a;
        }
    }
}
