//! Field projections of deferred representations.
//!
//! A [`ProjectionContext`] fixes a target field and a value of `q` and holds
//! the table `Phi_d(q^2)` for `d <= d_max`. Projecting a monomial is then a
//! product of table entries; [`evaluate`] runs the ratio recurrence with an
//! early exit when a ratio vanishes.

mod coeffs;

pub use coeffs::{cyclotomic_coeffs, cyclotomic_coeffs_by_division, phi_at_one};

use num_complex::Complex64;
use rug::Rational;

use crate::compiler::Dcr;
use crate::error::{DcrError, Result};
use crate::exponent::CycloMonomial;
use crate::field::{CycloElem, CycloField, DoubleField, Field, NumericField, RationalField, ScaledField};

/// Target regime of a projection.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldTag {
    ComplexDouble,
    ComplexExtended {
        precision_bits: u32,
    },
    /// Numeric evaluation at `q = exp(i pi / h)` with exact vanishing of `Phi_h`.
    RootOfUnityExact {
        h: u32,
    },
    /// Exact arithmetic in `Q(zeta_2h)`.
    ExactCyclotomic {
        h: u32,
    },
    Classical,
}

impl FieldTag {
    /// Root of unity order `h = k + 2`, if the regime fixes one.
    pub fn order(&self) -> Option<u32> {
        match *self {
            FieldTag::RootOfUnityExact { h } | FieldTag::ExactCyclotomic { h } => Some(h),
            _ => None,
        }
    }
}

/// An amplitude `a * sqrt(r)`.
#[derive(Clone, Debug, PartialEq)]
pub struct AmplitudeValue<E> {
    pub a: E,
    pub r: E,
}

/// Classical (`q = 1`) amplitude in exact rationals.
pub type ClassicalValue = AmplitudeValue<Rational>;

#[derive(Clone, Debug)]
enum QPowers<E> {
    /// `q = 1`.
    Trivial,
    /// General `q`; exponents are reduced modulo `period` when `q^period = 1`.
    Generic { q: E, q_inv: E, period: Option<i64> },
    /// All powers `q^0 .. q^(n-1)` for `q^n = 1`.
    Cycle(Vec<E>),
}

/// Immutable projection data for one field and one value of `q`.
#[derive(Clone, Debug)]
pub struct ProjectionContext<F: Field> {
    field: F,
    tag: FieldTag,
    q: QPowers<F::Elem>,
    phi: Vec<F::Elem>,
    phi_inv: Vec<Option<F::Elem>>,
    d_max: u32,
    vanishing: Vec<u32>,
}

fn horner<F: Field>(f: &F, coeffs: &[i64], x: &F::Elem) -> F::Elem {
    let mut acc = f.zero();
    for &c in coeffs.iter().rev() {
        acc = f.mul(&acc, x);
        if c != 0 {
            acc = f.add(&acc, &f.from_i64(c));
        }
    }
    acc
}

/// `Phi_d(q^2)` for `1 <= d <= d_max` (index 0 holds 1).
///
/// Uses `Phi_n(x) = (x^n - 1) / prod_{d | n, d < n} Phi_d(x)` while
/// `|x^n - 1|` is at least the field's Horner threshold times `n`, and
/// Horner's rule on the integer coefficients otherwise or when
/// `horner_only` is set.
pub fn phi_table<F: NumericField>(field: &F, q: &F::Elem, d_max: u32, horner_only: bool) -> Result<Vec<F::Elem>> {
    if field.is_zero(q) {
        return Err(DcrError::Domain("q = 0".into()));
    }
    let d_max = d_max.max(1) as usize;
    let x = field.mul(q, q);
    let one = field.one();
    let mut phi = vec![one.clone(); d_max + 1];
    let mut den = vec![one.clone(); d_max + 1];
    let nums = field.q2_powers_minus_one(q, d_max);
    for n in 1..=d_max {
        let num = &nums[n];
        phi[n] = if horner_only || field.abs_below(num, field.horner_threshold() * n as f64) {
            horner(field, &cyclotomic_coeffs(n as u32), &x)
        } else {
            field.mul(num, &field.inv(&den[n])?)
        };
        for m in (2 * n..=d_max).step_by(n) {
            den[m] = field.mul(&den[m], &phi[n]);
        }
    }
    Ok(phi)
}

impl<F: Field> ProjectionContext<F> {
    fn assemble(field: F, tag: FieldTag, q: QPowers<F::Elem>, phi: Vec<F::Elem>) -> Result<Self> {
        let d_max = (phi.len() - 1) as u32;
        let mut phi_inv = Vec::with_capacity(phi.len());
        let mut vanishing = Vec::new();
        for (d, v) in phi.iter().enumerate() {
            if field.is_zero(v) {
                if d >= 2 {
                    vanishing.push(d as u32);
                }
                phi_inv.push(None);
            } else {
                phi_inv.push(Some(field.inv(v)?));
            }
        }
        for d in 2..phi.len() {
            let ok = field.is_finite(&phi[d]) && phi_inv[d].as_ref().is_none_or(|v| field.is_finite(v));
            if !ok {
                return Err(DcrError::NonFinite("cyclotomic value table"));
            }
        }
        Ok(Self {
            field,
            tag,
            q,
            phi,
            phi_inv,
            d_max,
            vanishing,
        })
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn tag(&self) -> FieldTag {
        self.tag
    }

    pub fn d_max(&self) -> u32 {
        self.d_max
    }

    /// Indices `d >= 2` with `Phi_d(q^2) = 0` exactly.
    pub fn vanishing_indices(&self) -> &[u32] {
        &self.vanishing
    }

    /// `Phi_d(q^2)` for `d <= d_max`.
    pub fn phi(&self, d: u32) -> Option<&F::Elem> {
        self.phi.get(d as usize).filter(|_| d >= 1)
    }

    fn q_power(&self, p: i64) -> F::Elem {
        let f = &self.field;
        match &self.q {
            QPowers::Trivial => f.one(),
            QPowers::Cycle(t) => t[p.rem_euclid(t.len() as i64) as usize].clone(),
            QPowers::Generic { q, q_inv, period } => {
                let p = period.map_or(p, |n| {
                    // pick the representative of smallest magnitude
                    let r = p.rem_euclid(n);
                    if r > n / 2 {
                        r - n
                    } else {
                        r
                    }
                });
                if p >= 0 {
                    f.pow(q, p as u64)
                } else {
                    f.pow(q_inv, p.unsigned_abs())
                }
            }
        }
    }

    /// `sigma * q^P * prod Phi_d(q^2)^e_d`. A positive power of a vanishing
    /// factor gives exact zero; a negative one is a pole.
    pub fn project(&self, m: &CycloMonomial) -> Result<F::Elem> {
        if let Some(top) = m.exps.max_index() {
            if top > self.d_max {
                return Err(DcrError::IndexOutOfTable {
                    index: top,
                    d_max: self.d_max,
                });
            }
        }
        let f = &self.field;
        for &d in &self.vanishing {
            let e = m.exps.get(d);
            if e > 0 {
                return Ok(f.zero());
            }
            if e < 0 {
                return Err(DcrError::Pole(d));
            }
        }
        let mut acc = self.q_power(m.q_power);
        for (d, e) in m.exps.iter() {
            let base = if e > 0 {
                &self.phi[d as usize]
            } else {
                self.phi_inv[d as usize].as_ref().ok_or(DcrError::Pole(d))?
            };
            acc = if e.unsigned_abs() == 1 {
                f.mul(&acc, base)
            } else {
                f.mul(&acc, &f.pow(base, e.unsigned_abs()))
            };
        }
        if m.sigma.is_negative() {
            acc = f.neg(&acc);
        }
        Ok(acc)
    }

    fn check_table(&self, dcr: &Dcr) -> Result<()> {
        if dcr.d_max() > self.d_max {
            return Err(DcrError::IndexOutOfTable {
                index: dcr.d_max(),
                d_max: self.d_max,
            });
        }
        Ok(())
    }

    fn finish(&self, s: F::Elem, dcr: &Dcr) -> Result<AmplitudeValue<F::Elem>> {
        let f = &self.field;
        let a = f.mul(&self.project(dcr.root())?, &s);
        let r = self.project(dcr.rad())?;
        if !f.is_finite(&a) || !f.is_finite(&r) {
            return Err(DcrError::NonFinite("amplitude"));
        }
        Ok(AmplitudeValue { a, r })
    }
}

impl<F: NumericField> ProjectionContext<F> {
    fn tag_for(field: &F) -> FieldTag {
        match field.precision_bits() {
            53 => FieldTag::ComplexDouble,
            bits => FieldTag::ComplexExtended { precision_bits: bits },
        }
    }

    /// Context at an arbitrary non-zero `q`.
    pub fn numeric(field: F, q: F::Elem, d_max: u32) -> Result<Self> {
        let phi = phi_table(&field, &q, d_max, false)?;
        let q_inv = field.inv(&q)?;
        let tag = Self::tag_for(&field);
        Self::assemble(field, tag, QPowers::Generic { q, q_inv, period: None }, phi)
    }

    /// Context at `q = exp(i pi / h)` using the generic table construction.
    pub fn at_level(field: F, h: u32, d_max: u32) -> Result<Self> {
        if h < 2 {
            return Err(DcrError::Domain(format!("root of unity order h = {h} < 2")));
        }
        let q = field.exp_i_pi(1, h as i64);
        let phi = phi_table(&field, &q, d_max, false)?;
        let q_inv = field.exp_i_pi(-1, h as i64);
        let tag = Self::tag_for(&field);
        Self::assemble(
            field,
            tag,
            QPowers::Generic {
                q,
                q_inv,
                period: Some(2 * h as i64),
            },
            phi,
        )
    }

    /// Context at `q = exp(i pi / h)` with exact-coefficient tables and
    /// `Phi_h(q^2)` set to exact zero.
    pub fn root_of_unity(field: F, h: u32, d_max: u32) -> Result<Self> {
        if h < 3 {
            return Err(DcrError::Domain(format!("root of unity order h = {h} < 3")));
        }
        let q = field.exp_i_pi(1, h as i64);
        let mut phi = phi_table(&field, &q, d_max, true)?;
        if let Some(v) = phi.get_mut(h as usize) {
            *v = field.zero();
        }
        let cycle = (0..2 * h as i64).map(|p| field.exp_i_pi(p, h as i64)).collect();
        Self::assemble(field, FieldTag::RootOfUnityExact { h }, QPowers::Cycle(cycle), phi)
    }

    /// `log10 |Phi_d(q^2)|` for `2 <= d <= d_max` (index `d`).
    pub fn log_phi(&self) -> Vec<f64> {
        let mut out = vec![0.0; self.phi.len()];
        for (d, v) in self.phi.iter().enumerate().skip(2) {
            out[d] = self.field.abs_log2(v) * std::f64::consts::LOG10_2;
        }
        out
    }
}

impl ProjectionContext<CycloField> {
    /// Exact context in `Q(zeta_2h)` with `q = zeta_2h`.
    pub fn cyclotomic(h: u32, d_max: u32) -> Result<Self> {
        if h < 3 {
            return Err(DcrError::Domain(format!("root of unity order h = {h} < 3")));
        }
        let field = CycloField::new(h)?;
        let mut phi = vec![field.one()];
        for d in 1..=d_max.max(1) {
            phi.push(field.eval_int_poly_at_q2(&cyclotomic_coeffs(d)));
        }
        let cycle = (0..2 * h as i64).map(|p| field.zeta_pow(p)).collect();
        Self::assemble(field, FieldTag::ExactCyclotomic { h }, QPowers::Cycle(cycle), phi)
    }
}

impl ProjectionContext<RationalField> {
    /// Exact context at `q = 1`: `Phi_d(1)` is `p` for `d = p^m`, else 1.
    pub fn classical(d_max: u32) -> Result<Self> {
        let f = RationalField;
        let mut phi = vec![f.one(), f.zero()];
        for d in 2..=d_max.max(1) {
            phi.push(Rational::from(phi_at_one(d)));
        }
        Self::assemble(f, FieldTag::Classical, QPowers::Trivial, phi)
    }
}

/// Projects one monomial.
pub fn project_monomial<F: Field>(m: &CycloMonomial, ctx: &ProjectionContext<F>) -> Result<F::Elem> {
    ctx.project(m)
}

/// Ratio-recurrence evaluation of a compiled series.
///
/// Accumulates `Pi(base) * (1 + R_1 + R_1 R_2 + ...)` and stops at the first
/// ratio that projects to zero.
pub fn evaluate<F: Field>(dcr: &Dcr, ctx: &ProjectionContext<F>) -> Result<AmplitudeValue<F::Elem>> {
    ctx.check_table(dcr)?;
    let f = ctx.field();
    let base = ctx.project(dcr.base())?;
    let mut s = base.clone();
    let mut r = f.one();
    for ratio in dcr.ratios() {
        let v = ctx.project(ratio)?;
        if f.is_zero(&v) {
            break;
        }
        r = f.mul(&r, &v);
        if !f.is_finite(&r) {
            return Err(DcrError::NonFinite("ratio product"));
        }
        s = f.add(&s, &f.mul(&base, &r));
    }
    ctx.finish(s, dcr)
}

/// Projected summands `Pi(M_z)` for every `z`, with `M_z` formed exactly as
/// monomials before projection (no early exit).
pub fn term_values<F: Field>(dcr: &Dcr, ctx: &ProjectionContext<F>) -> Result<Vec<F::Elem>> {
    ctx.check_table(dcr)?;
    dcr.cumulative_terms()?.iter().map(|m| ctx.project(m)).collect()
}

/// Sum over the full range of exactly formed summands, without early exit.
pub fn evaluate_full_range<F: Field>(dcr: &Dcr, ctx: &ProjectionContext<F>) -> Result<AmplitudeValue<F::Elem>> {
    let f = ctx.field();
    let s = term_values(dcr, ctx)?.iter().fold(f.zero(), |acc, t| f.add(&acc, t));
    ctx.finish(s, dcr)
}

/// `a * sqrt(r)` with the principal square root.
pub fn amplitude_to_complex<F: NumericField>(v: &AmplitudeValue<F::Elem>, field: &F) -> F::Elem {
    field.mul(&v.a, &field.sqrt(&v.r))
}

/// `P + sum_d e_d deg(Phi_d)` for `rad = sigma q^P prod Phi_d(q^2)^e_d`.
///
/// Since `Phi_d(q^2) = q^deg(Phi_d) psi_d(q)` with `psi_d` real on the unit
/// circle for `d >= 2`, `rad q^-P'` is real there.
pub fn radicand_phase(rad: &CycloMonomial) -> i64 {
    rad.exps.iter().fold(rad.q_power, |acc, (d, e)| {
        acc + e * (cyclotomic_coeffs(d).len() as i64 - 1)
    })
}

/// `a sqrt(r)` with the square root continued from `q = 1`: the phase
/// `q^P'` of the radicand is moved into `a` before the principal root is
/// taken, so a radicand that is positive at `q = 1` stays on the positive
/// branch along the unit circle up to the first zero of a factor.
pub fn amplitude<F: NumericField>(dcr: &Dcr, ctx: &ProjectionContext<F>, v: &AmplitudeValue<F::Elem>) -> F::Elem {
    let f = ctx.field();
    let p = radicand_phase(dcr.rad());
    if p == 0 || p % 2 != 0 {
        return amplitude_to_complex(v, f);
    }
    let a = f.mul(&v.a, &ctx.q_power(p / 2));
    let r = f.mul(&v.r, &ctx.q_power(-p));
    f.mul(&a, &f.sqrt(&r))
}

/// [`evaluate`] followed by [`amplitude`].
pub fn evaluate_amplitude<F: NumericField>(dcr: &Dcr, ctx: &ProjectionContext<F>) -> Result<F::Elem> {
    let v = evaluate(dcr, ctx)?;
    Ok(amplitude(dcr, ctx, &v))
}

/// Exact value at `q = 1`.
pub fn classical_project(dcr: &Dcr) -> Result<ClassicalValue> {
    let ctx = ProjectionContext::classical(dcr.d_max())?;
    evaluate(dcr, &ctx)
}

/// Exact value in `Q(zeta_2h)` at `q = zeta_2h`.
pub fn exact_field_eval(dcr: &Dcr, h: u32) -> Result<AmplitudeValue<CycloElem>> {
    let ctx = ProjectionContext::cyclotomic(h, dcr.d_max())?;
    evaluate(dcr, &ctx)
}

/// Whether `m` vanishes at `q = exp(i pi / h)`.
pub fn vanishes_at(m: &CycloMonomial, h: u32) -> bool {
    m.exps.get(h) > 0
}

/// Amplitude in double precision at `q`, retrying with a widened exponent
/// range when plain doubles leave their safe range.
pub fn evaluate_double(dcr: &Dcr, q: Complex64, d_max: u32) -> Result<Complex64> {
    let d_max = d_max.max(dcr.d_max());
    let plain = ProjectionContext::numeric(DoubleField, q, d_max).and_then(|ctx| evaluate_amplitude(dcr, &ctx));
    match plain {
        Ok(v) if DoubleField.is_finite(&v) => Ok(v),
        Err(e) if !matches!(e, DcrError::NonFinite(_)) => Err(e),
        _ => {
            let f = ScaledField;
            let ctx = ProjectionContext::numeric(f, f.from_c64(q), d_max)?;
            Ok(evaluate_amplitude(dcr, &ctx)?.to_c64())
        }
    }
}

/// [`evaluate_double`] at `q = exp(i pi / h)`.
pub fn evaluate_double_at_level(dcr: &Dcr, h: u32) -> Result<Complex64> {
    let d_max = dcr.d_max();
    let plain = ProjectionContext::at_level(DoubleField, h, d_max).and_then(|ctx| evaluate_amplitude(dcr, &ctx));
    match plain {
        Ok(v) if DoubleField.is_finite(&v) => Ok(v),
        Err(e) if !matches!(e, DcrError::NonFinite(_)) => Err(e),
        _ => {
            let f = ScaledField;
            let ctx = ProjectionContext::at_level(f, h, d_max)?;
            Ok(evaluate_amplitude(dcr, &ctx)?.to_c64())
        }
    }
}
