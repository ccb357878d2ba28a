//! Turaev-Viro style state sums over small triangulations, with compiled
//! 6j-symbols shared across congruent tetrahedra.

mod cache;
mod triangulation;

pub use cache::{CacheStats, DcrCache};
pub use triangulation::{admissible_colorings, Colorings, Triangulation};

use std::collections::HashMap;

use num_complex::Complex64;

use crate::compiler::{compile_sixj, SixJLabels};
use crate::error::Result;
use crate::field::{DoubleField, MpField, NumericField};
use crate::projection::{evaluate_amplitude, ProjectionContext};

/// Bundled example triangulations.
pub mod bundled {
    /// One tetrahedron with every edge on the boundary.
    pub const ONE_TET: &str = include_str!("../../data/one_tet.json");
    /// Two tetrahedra glued along a face; the three edges of the shared
    /// face are interior, the other six are boundary.
    pub const TWO_TET: &str = include_str!("../../data/two_tet.json");
    /// The tetrahedron of [`ONE_TET`] split by a 1-4 move: four
    /// tetrahedra around an interior vertex with four interior edges.
    pub const FOUR_TET: &str = include_str!("../../data/four_tet.json");
}

/// Working precision of a state sum.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TvPrecision {
    Double,
    Extended(u32),
}

/// Normalization of the state sum.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TvOptions {
    /// Multiply each coloring by `prod_e [t_e + 1]`.
    pub edge_weights: bool,
    /// Multiply each tetrahedron by `i^(t1 + ... + t6)`, i.e. `(-1)^(j1 + ... + j6)`.
    pub tetra_phase: bool,
}

impl TvOptions {
    /// Bare sum of products of 6j amplitudes, scaled by `A^-|V|`.
    pub fn literal() -> Self {
        Self {
            edge_weights: false,
            tetra_phase: false,
        }
    }
}

impl Default for TvOptions {
    fn default() -> Self {
        Self {
            edge_weights: true,
            tetra_phase: true,
        }
    }
}

/// Value of a state sum.
#[derive(Clone, Debug)]
pub struct TvResult {
    pub value: Complex64,
    /// Real and imaginary parts in scientific notation at working precision.
    pub decimal: (String, String),
    pub colorings: usize,
    /// `sum_{t=0}^{k} [t+1]^2`.
    pub normalization: f64,
    pub stats: CacheStats,
}

/// Where 6j amplitudes come from.
enum Source<'a> {
    Cache(&'a DcrCache),
    /// Compile every tetrahedron of every coloring from scratch.
    Direct,
}

/// `A^-|V| sum_colorings prod_e w_e prod_tet i^(sum t) {6j}` at
/// `q = exp(i pi / (k+2))` with `w_e = [t_e + 1]` and
/// `A = sum_{t=0}^{k} [t+1]^2`. With these factors the sum is unchanged by
/// a 1-4 move.
pub fn tv_partition(
    tri: &Triangulation,
    k: u32,
    precision: TvPrecision,
    options: TvOptions,
    cache: &DcrCache,
) -> Result<TvResult> {
    run(tri, k, precision, options, Source::Cache(cache))
}

/// [`tv_partition`] without any caching; an oracle for the cached path.
pub fn tv_partition_direct(
    tri: &Triangulation,
    k: u32,
    precision: TvPrecision,
    options: TvOptions,
) -> Result<TvResult> {
    run(tri, k, precision, options, Source::Direct)
}

fn run(tri: &Triangulation, k: u32, precision: TvPrecision, options: TvOptions, src: Source) -> Result<TvResult> {
    match precision {
        TvPrecision::Double => sum_in(DoubleField, tri, k, options, &src),
        TvPrecision::Extended(bits) => sum_in(MpField::new(bits)?, tri, k, options, &src),
    }
}

fn sum_in<F: NumericField + Clone>(
    field: F,
    tri: &Triangulation,
    k: u32,
    options: TvOptions,
    src: &Source,
) -> Result<TvResult> {
    let h = k + 2;
    let ctx = ProjectionContext::at_level(field.clone(), h, 2 * h)?;
    let f = &field;
    let qint = |t: i64| -> F::Elem {
        // [t + 1] = (q^(t+1) - q^-(t+1)) / (q - q^-1)
        let num = f.sub(&f.exp_i_pi(t + 1, h as i64), &f.exp_i_pi(-(t + 1), h as i64));
        let den = f.sub(&f.exp_i_pi(1, h as i64), &f.exp_i_pi(-1, h as i64));
        f.mul(&num, &f.inv(&den).expect("q is not real"))
    };
    let weights: Vec<F::Elem> = (0..=k as i64).map(qint).collect();
    let mut norm = f.zero();
    for w in &weights {
        norm = f.add(&norm, &f.mul(w, w));
    }

    let i = f.from_c64(Complex64::i());
    let mut projected: HashMap<SixJLabels, F::Elem> = HashMap::new();
    let mut total = f.zero();
    let mut count = 0usize;
    for coloring in admissible_colorings(tri, k)? {
        count += 1;
        let mut term = f.one();
        if options.edge_weights {
            for &t in &coloring {
                term = f.mul(&term, &weights[t as usize]);
            }
        }
        for tet in tri.tetrahedra_indices() {
            let labels = SixJLabels::new(tet.map(|e| coloring[e]));
            let amp = match src {
                Source::Cache(cache) => {
                    let dcr = cache.get(labels)?;
                    let key = labels.canonical();
                    match projected.get(&key) {
                        Some(v) => v.clone(),
                        None => {
                            let v = evaluate_amplitude(&dcr, &ctx)?;
                            projected.insert(key, v.clone());
                            v
                        }
                    }
                }
                Source::Direct => evaluate_amplitude(&compile_sixj(labels)?, &ctx)?,
            };
            term = f.mul(&term, &amp);
            if options.tetra_phase {
                let t: i64 = labels.twice_spins().iter().sum();
                term = match t % 4 {
                    0 => term,
                    1 => f.mul(&term, &i),
                    2 => f.neg(&term),
                    _ => f.neg(&f.mul(&term, &i)),
                };
            }
        }
        total = f.add(&total, &term);
    }
    let scale = f.pow(&f.inv(&norm)?, tri.num_vertices as u64);
    let value = f.mul(&total, &scale);
    let stats = match src {
        Source::Cache(c) => c.stats(),
        Source::Direct => CacheStats::default(),
    };
    Ok(TvResult {
        value: f.to_c64(&value),
        decimal: f.to_decimal(
            &value,
            17.max((f.precision_bits() as f64 * std::f64::consts::LOG10_2) as usize - 3),
        ),
        colorings: count,
        normalization: f.to_c64(&norm).re,
        stats,
    })
}

#[cfg(test)]
mod tests;
