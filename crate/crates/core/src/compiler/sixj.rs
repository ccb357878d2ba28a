use std::fmt;

use super::{AffineForm, PhasePoly, SeriesDescriptor};
use crate::error::{DcrError, Result};
use crate::exponent::CycloMonomial;
use crate::qfactor::qfact_monomial;

/// The four triads of `{j1 j2 j3; j4 j5 j6}`, as zero-based label positions.
pub const TRIADS: [[usize; 3]; 4] = [[0, 1, 2], [0, 4, 5], [1, 3, 5], [2, 3, 4]];

/// Triangle condition on twice-spins, optionally with the level cutoff
/// `ta + tb + tc <= 2k`.
pub fn triangle_admissible(ta: i64, tb: i64, tc: i64, level: Option<i64>) -> bool {
    if ta < 0 || tb < 0 || tc < 0 {
        return false;
    }
    let sum = ta + tb + tc;
    (ta - tb).abs() <= tc && tc <= ta + tb && sum % 2 == 0 && level.is_none_or(|k| sum <= 2 * k)
}

/// Six twice-spins `(2 j1, ..., 2 j6)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SixJLabels(pub [i64; 6]);

impl SixJLabels {
    pub fn new(tj: [i64; 6]) -> Self {
        Self(tj)
    }

    /// All six labels equal to the twice-spin `tj`.
    pub fn symmetric(tj: i64) -> Self {
        Self([tj; 6])
    }

    pub fn twice_spins(&self) -> [i64; 6] {
        self.0
    }

    pub fn triad(&self, i: usize) -> (i64, i64, i64) {
        let [a, b, c] = TRIADS[i];
        (self.0[a], self.0[b], self.0[c])
    }

    /// Checks every triad, naming the first offending one.
    pub fn check(&self, level: Option<i64>) -> Result<()> {
        for i in 0..4 {
            let (a, b, c) = self.triad(i);
            if !triangle_admissible(a, b, c, level) {
                let ctx = match level {
                    Some(k) => format!(" at level {k}"),
                    None => String::new(),
                };
                return Err(DcrError::InadmissibleTriad(a, b, c, ctx));
            }
        }
        Ok(())
    }

    pub fn is_admissible(&self, level: Option<i64>) -> bool {
        self.check(level).is_ok()
    }

    /// Images under the 24 tetrahedral symmetries: column permutations of
    /// `{j1 j2 j3; j4 j5 j6}` combined with exchanging upper and lower
    /// entries in two columns.
    pub fn symmetry_orbit(&self) -> [SixJLabels; 24] {
        const PERMS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        const FLIPS: [[bool; 3]; 4] = [
            [false, false, false],
            [true, true, false],
            [true, false, true],
            [false, true, true],
        ];
        let cols = [(self.0[0], self.0[3]), (self.0[1], self.0[4]), (self.0[2], self.0[5])];
        let mut out = [*self; 24];
        let mut n = 0;
        for p in PERMS {
            for f in FLIPS {
                let mut up = [0; 3];
                let mut lo = [0; 3];
                for c in 0..3 {
                    let (u, l) = cols[p[c]];
                    (up[c], lo[c]) = if f[c] { (l, u) } else { (u, l) };
                }
                out[n] = SixJLabels([up[0], up[1], up[2], lo[0], lo[1], lo[2]]);
                n += 1;
            }
        }
        out
    }

    /// Lexicographic minimum over [`Self::symmetry_orbit`].
    pub fn canonical(&self) -> SixJLabels {
        self.symmetry_orbit().into_iter().min().expect("orbit is non-empty")
    }
}

impl fmt::Display for SixJLabels {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let t = self.0;
        write!(f, "{},{},{},{},{},{}", t[0], t[1], t[2], t[3], t[4], t[5])
    }
}

/// Integer data of the Racah sum: `a_i` are the triad sums, `b_y` the sums
/// over pairs of opposite edges.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SixJDescriptor {
    pub a: [i64; 4],
    pub b: [i64; 3],
    pub labels: SixJLabels,
}

impl SixJDescriptor {
    pub fn z_min(&self) -> i64 {
        *self.a.iter().max().unwrap()
    }

    pub fn z_max(&self) -> i64 {
        *self.b.iter().min().unwrap()
    }
}

pub fn sixj_descriptor(labels: SixJLabels) -> Result<SixJDescriptor> {
    labels.check(None)?;
    let t = labels.0;
    let mut a = [0; 4];
    for (i, slot) in a.iter_mut().enumerate() {
        let (x, y, z) = labels.triad(i);
        *slot = (x + y + z) / 2;
    }
    let b = [
        (t[0] + t[1] + t[3] + t[4]) / 2,
        (t[0] + t[2] + t[3] + t[5]) / 2,
        (t[1] + t[2] + t[4] + t[5]) / 2,
    ];
    Ok(SixJDescriptor { a, b, labels })
}

/// `Delta_abc^2 = [a+b-c]! [a-b+c]! [-a+b+c]! / [a+b+c+1]!` in twice-spins.
fn triangle_radicand(ta: i64, tb: i64, tc: i64) -> Result<CycloMonomial> {
    let num = qfact_monomial((ta + tb - tc) / 2)?
        .mul(&qfact_monomial((ta - tb + tc) / 2)?)?
        .mul(&qfact_monomial((-ta + tb + tc) / 2)?)?;
    num.div(&qfact_monomial((ta + tb + tc) / 2 + 1)?)
}

pub fn series_from_sixj(desc: &SixJDescriptor) -> Result<SeriesDescriptor> {
    desc.labels.check(None)?;
    let mut radicand = CycloMonomial::identity();
    for i in 0..4 {
        let (x, y, z) = desc.labels.triad(i);
        radicand = radicand.mul(&triangle_radicand(x, y, z)?)?;
    }
    let mut den_args: Vec<AffineForm> = desc.a.iter().map(|&a| AffineForm::rising(-a)).collect();
    den_args.extend(desc.b.iter().map(|&b| AffineForm::falling(b)));
    Ok(SeriesDescriptor {
        num_args: vec![AffineForm::rising(1)],
        den_args,
        phase: PhasePoly::zero(),
        alternating: true,
        prefactor_radicand: radicand,
    })
}

/// Compiles the 6j-symbol with the given twice-spins.
pub fn compile_sixj(labels: SixJLabels) -> Result<super::Dcr> {
    super::compile(&series_from_sixj(&sixj_descriptor(labels)?)?)
}
