//! Compilation of finite q-hypergeometric series
//!
//! `S(q) = sum_z (-1)^z q^f(z) prod_i [A_i(z)]! / prod_j [B_j(z)]!`
//!
//! into a [`Dcr`]: the summand at `z_min`, the ratio sequence
//! `R_z = T_(z+1) / T_z`, and the square/square-free split of the prefactor
//! radicand. Everything here is integer exponent arithmetic; no value of `q`
//! is ever involved.

mod dcr;
mod sixj;

pub use dcr::{dcr_from_json, dcr_to_json, Dcr};
pub use sixj::{
    compile_sixj, series_from_sixj, sixj_descriptor, triangle_admissible, SixJDescriptor, SixJLabels, TRIADS,
};

use std::sync::atomic::{AtomicU64, Ordering};

use crate::error::{DcrError, Result};
use crate::exponent::{CycloMonomial, Sign};
use crate::qfactor::{qfact_monomial, qint_monomial};

/// `c0 + c1 * z` with `c1` in `{-1, 0, +1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct AffineForm {
    c0: i64,
    c1: i64,
}

impl AffineForm {
    pub fn new(c0: i64, c1: i64) -> Result<Self> {
        if !(-1..=1).contains(&c1) {
            return Err(DcrError::Unsupported(format!(
                "factorial argument slope {c1}; only -1, 0, +1 are supported"
            )));
        }
        Ok(Self { c0, c1 })
    }

    /// `z + c0`.
    pub fn rising(c0: i64) -> Self {
        Self { c0, c1: 1 }
    }

    /// `c0 - z`.
    pub fn falling(c0: i64) -> Self {
        Self { c0, c1: -1 }
    }

    pub fn constant(c0: i64) -> Self {
        Self { c0, c1: 0 }
    }

    pub fn c0(&self) -> i64 {
        self.c0
    }

    pub fn slope(&self) -> i64 {
        self.c1
    }

    pub fn eval(&self, z: i64) -> Result<i64> {
        self.c1
            .checked_mul(z)
            .and_then(|t| t.checked_add(self.c0))
            .ok_or(DcrError::Overflow("affine argument"))
    }
}

/// Integer phase `f(z) = f0 + f1 z + f2 z^2`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct PhasePoly {
    pub f0: i64,
    pub f1: i64,
    pub f2: i64,
}

impl PhasePoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn eval(&self, z: i64) -> Result<i64> {
        let quad = z.checked_mul(z).and_then(|zz| zz.checked_mul(self.f2));
        let lin = z.checked_mul(self.f1);
        quad.zip(lin)
            .and_then(|(a, b)| a.checked_add(b))
            .and_then(|s| s.checked_add(self.f0))
            .ok_or(DcrError::Overflow("phase"))
    }
}

/// Shape of a finite q-hypergeometric series.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesDescriptor {
    pub num_args: Vec<AffineForm>,
    pub den_args: Vec<AffineForm>,
    pub phase: PhasePoly,
    pub alternating: bool,
    /// Product under the global square root; identity when there is none.
    pub prefactor_radicand: CycloMonomial,
}

/// Summation range of a series.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SummationRange {
    Range {
        z_min: i64,
        z_max: i64,
    },
    /// No admissible `z`: the series is identically zero.
    Empty,
}

impl SeriesDescriptor {
    fn all_args(&self) -> impl Iterator<Item = &AffineForm> {
        self.num_args.iter().chain(self.den_args.iter())
    }
}

/// Summation bounds from non-negativity of every factorial argument.
pub fn bounds(desc: &SeriesDescriptor) -> Result<SummationRange> {
    let mut lo: Option<i64> = None;
    let mut hi: Option<i64> = None;
    let mut empty = false;
    for arg in desc.all_args() {
        match arg.slope() {
            1 => {
                let v = arg.c0().checked_neg().ok_or(DcrError::Overflow("bounds"))?;
                lo = Some(lo.map_or(v, |l| l.max(v)));
            }
            -1 => hi = Some(hi.map_or(arg.c0(), |h| h.min(arg.c0()))),
            _ => empty |= arg.c0() < 0,
        }
    }
    let (Some(z_min), Some(z_max)) = (lo, hi) else {
        return Err(DcrError::Unbounded(if lo.is_none() {
            "no rising factorial argument bounds z from below"
        } else {
            "no falling factorial argument bounds z from above"
        }));
    };
    if empty || z_min > z_max {
        Ok(SummationRange::Empty)
    } else {
        Ok(SummationRange::Range { z_min, z_max })
    }
}

/// The full summand `T_z` as a monomial, assembled directly from factorials.
pub fn summand_monomial(desc: &SeriesDescriptor, z: i64) -> Result<CycloMonomial> {
    let mut m = CycloMonomial::identity();
    if desc.alternating {
        m.sigma = Sign::parity(z);
    }
    m.q_power = desc.phase.eval(z)?;
    for arg in &desc.num_args {
        m = m.mul(&factorial_at(arg, z)?)?;
    }
    for arg in &desc.den_args {
        m = m.div(&factorial_at(arg, z)?)?;
    }
    Ok(m)
}

fn factorial_at(arg: &AffineForm, z: i64) -> Result<CycloMonomial> {
    let n = arg.eval(z)?;
    if n < 0 {
        return Err(DcrError::Internal(format!("factorial argument {n} < 0 at z = {z}")));
    }
    qfact_monomial(n)
}

fn ratio_qint(n: i64, z: i64) -> Result<CycloMonomial> {
    if n <= 0 {
        return Err(DcrError::Internal(format!(
            "ratio needs [{n}] at z = {z}; summation bounds are inconsistent"
        )));
    }
    qint_monomial(n)
}

/// `R_z = T_(z+1) / T_z` built from local quantum integers only.
pub fn ratio_monomial(desc: &SeriesDescriptor, z: i64) -> Result<CycloMonomial> {
    let mut r = CycloMonomial::identity();
    if desc.alternating {
        r.sigma = Sign::Minus;
    }
    let z1 = z.checked_add(1).ok_or(DcrError::Overflow("summation index"))?;
    r.q_power = desc
        .phase
        .eval(z1)?
        .checked_sub(desc.phase.eval(z)?)
        .ok_or(DcrError::Overflow("phase"))?;
    // rising arg: [c0+z+1]! / [c0+z]! = [c0+z+1]; falling: [c0-z-1]! / [c0-z]! = 1/[c0-z]
    for (args, num) in [(&desc.num_args, true), (&desc.den_args, false)] {
        for arg in args {
            let (n, up) = match arg.slope() {
                1 => (arg.eval(z1)?, num),
                -1 => (arg.eval(z)?, !num),
                _ => continue,
            };
            let qi = ratio_qint(n, z)?;
            r = if up { r.mul(&qi)? } else { r.div(&qi)? };
        }
    }
    Ok(r)
}

static COMPILES: AtomicU64 = AtomicU64::new(0);

/// Number of [`compile`] calls in this process.
pub fn compile_count() -> u64 {
    COMPILES.load(Ordering::Relaxed)
}

/// Builds the deferred representation of `desc`.
pub fn compile(desc: &SeriesDescriptor) -> Result<Dcr> {
    COMPILES.fetch_add(1, Ordering::Relaxed);
    let (z_min, z_max) = match bounds(desc)? {
        SummationRange::Range { z_min, z_max } => (z_min, z_max),
        SummationRange::Empty => {
            return Err(DcrError::Domain("empty summation range".into()));
        }
    };
    let split = desc.prefactor_radicand.sqrt_split();
    let base = summand_monomial(desc, z_min)?;
    let ratios = (z_min..z_max)
        .map(|z| ratio_monomial(desc, z))
        .collect::<Result<Vec<_>>>()?;
    Ok(Dcr::from_parts(base, ratios, split.root, split.rad, z_min, z_max))
}
