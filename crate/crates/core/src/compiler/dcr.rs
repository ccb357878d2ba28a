use serde::{Deserialize, Serialize};

use crate::error::{DcrError, Result};
use crate::exponent::CycloMonomial;

/// Deferred cyclotomic representation of a finite series: the summand at
/// `z_min`, one ratio per step up to `z_max`, and the prefactor radicand split
/// as `root^2 * rad`. The represented value is
/// `root * sqrt(rad) * base * sum_z prod_{z' < z} R_z'`.
///
/// The sign `(-1)^z_min` of an alternating series is carried by `base`; each
/// ratio then carries one factor `-1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "DcrFields")]
pub struct Dcr {
    z_min: i64,
    z_max: i64,
    d_max: u32,
    base: CycloMonomial,
    ratios: Vec<CycloMonomial>,
    root: CycloMonomial,
    rad: CycloMonomial,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct DcrFields {
    z_min: i64,
    z_max: i64,
    d_max: u32,
    base: CycloMonomial,
    ratios: Vec<CycloMonomial>,
    root: CycloMonomial,
    rad: CycloMonomial,
}

impl TryFrom<DcrFields> for Dcr {
    type Error = DcrError;

    fn try_from(f: DcrFields) -> Result<Self> {
        let span = f.z_max.checked_sub(f.z_min).filter(|s| *s >= 0);
        if span != Some(f.ratios.len() as i64) {
            return Err(DcrError::Parse(format!(
                "{} ratios for range [{}, {}]",
                f.ratios.len(),
                f.z_min,
                f.z_max
            )));
        }
        if f.rad.exps.iter().any(|(_, e)| e != 1) || !(0..=1).contains(&f.rad.q_power) {
            return Err(DcrError::Parse("rad is not square-free".into()));
        }
        let dcr = Dcr::from_parts(f.base, f.ratios, f.root, f.rad, f.z_min, f.z_max);
        if dcr.d_max > f.d_max {
            return Err(DcrError::Parse(format!(
                "d_max {} is below the largest stored index {}",
                f.d_max, dcr.d_max
            )));
        }
        Ok(Dcr { d_max: f.d_max, ..dcr })
    }
}

impl Dcr {
    pub(crate) fn from_parts(
        base: CycloMonomial,
        ratios: Vec<CycloMonomial>,
        root: CycloMonomial,
        rad: CycloMonomial,
        z_min: i64,
        z_max: i64,
    ) -> Self {
        let d_max = std::iter::once(&base)
            .chain(ratios.iter())
            .chain([&root, &rad])
            .map(CycloMonomial::d_max)
            .max()
            .unwrap_or(1);
        Self {
            z_min,
            z_max,
            d_max,
            base,
            ratios,
            root,
            rad,
        }
    }

    pub fn z_min(&self) -> i64 {
        self.z_min
    }

    pub fn z_max(&self) -> i64 {
        self.z_max
    }

    /// Largest cyclotomic index needed to project this object.
    pub fn d_max(&self) -> u32 {
        self.d_max
    }

    pub fn base(&self) -> &CycloMonomial {
        &self.base
    }

    pub fn ratios(&self) -> &[CycloMonomial] {
        &self.ratios
    }

    pub fn root(&self) -> &CycloMonomial {
        &self.root
    }

    pub fn rad(&self) -> &CycloMonomial {
        &self.rad
    }

    pub fn term_count(&self) -> usize {
        self.ratios.len() + 1
    }

    /// Cumulative summand monomials `base * R_zmin * ... * R_(z-1)` for every
    /// `z` in range.
    pub fn cumulative_terms(&self) -> Result<Vec<CycloMonomial>> {
        let mut out = Vec::with_capacity(self.term_count());
        let mut acc = self.base.clone();
        out.push(acc.clone());
        for r in &self.ratios {
            acc = acc.mul(r)?;
            out.push(acc.clone());
        }
        Ok(out)
    }

    /// Total number of stored exponent entries.
    pub fn stored_entries(&self) -> usize {
        std::iter::once(&self.base)
            .chain(self.ratios.iter())
            .chain([&self.root, &self.rad])
            .map(|m| m.exps.support_size())
            .sum()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("DCR serialization cannot fail")
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("DCR serialization cannot fail")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| DcrError::Parse(e.to_string()))
    }
}

pub fn dcr_to_json(dcr: &Dcr) -> String {
    dcr.to_json()
}

pub fn dcr_from_json(text: &str) -> Result<Dcr> {
    Dcr::from_json(text)
}
