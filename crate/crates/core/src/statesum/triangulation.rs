use std::collections::{BTreeMap, HashMap};
use std::path::Path;

use serde::Deserialize;

use crate::compiler::{triangle_admissible, TRIADS};
use crate::error::{DcrError, Result};

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Raw {
    num_vertices: u32,
    edges: Vec<String>,
    tetrahedra: Vec<[String; 6]>,
    #[serde(default)]
    boundary: BTreeMap<String, i64>,
}

/// A triangulated 3-manifold given by its edges and tetrahedra.
///
/// Each tetrahedron lists six edges in 6j order `(j1, ..., j6)`; its faces
/// are the triads `(j1, j2, j3)`, `(j1, j5, j6)`, `(j2, j4, j6)` and
/// `(j3, j4, j5)`. For vertices `A, B, C, D` that order is
/// `(AB, AC, BC, CD, BD, AD)`.
#[derive(Clone, Debug)]
pub struct Triangulation {
    pub num_vertices: u32,
    pub edges: Vec<String>,
    tets: Vec<[usize; 6]>,
    /// Fixed twice-spin per edge index.
    fixed: Vec<Option<i64>>,
}

fn bad(msg: impl Into<String>) -> DcrError {
    DcrError::Triangulation(msg.into())
}

impl Triangulation {
    pub fn from_json(text: &str) -> Result<Self> {
        let raw: Raw = serde_json::from_str(text).map_err(|e| DcrError::Parse(e.to_string()))?;
        let mut index = HashMap::new();
        for (i, e) in raw.edges.iter().enumerate() {
            if index.insert(e.as_str(), i).is_some() {
                return Err(bad(format!("duplicate edge {e:?}")));
            }
        }
        let lookup = |e: &str| index.get(e).copied().ok_or_else(|| bad(format!("unknown edge {e:?}")));
        let mut tets = Vec::with_capacity(raw.tetrahedra.len());
        for (n, t) in raw.tetrahedra.iter().enumerate() {
            let mut ids = [0usize; 6];
            for (slot, e) in ids.iter_mut().zip(t) {
                *slot = lookup(e)?;
            }
            let mut sorted = ids;
            sorted.sort_unstable();
            if sorted.windows(2).any(|w| w[0] == w[1]) {
                return Err(bad(format!("tetrahedron {n} repeats an edge")));
            }
            tets.push(ids);
        }
        let mut fixed = vec![None; raw.edges.len()];
        for (e, &tj) in &raw.boundary {
            if tj < 0 {
                return Err(bad(format!("negative twice-spin on boundary edge {e:?}")));
            }
            fixed[lookup(e)?] = Some(tj);
        }
        Ok(Self {
            num_vertices: raw.num_vertices,
            edges: raw.edges,
            tets,
            fixed,
        })
    }

    pub fn from_path(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| DcrError::Parse(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    /// Edge indices of every tetrahedron in 6j order.
    pub fn tetrahedra_indices(&self) -> impl Iterator<Item = [usize; 6]> + '_ {
        self.tets.iter().copied()
    }

    pub fn num_tetrahedra(&self) -> usize {
        self.tets.len()
    }

    /// Indices of edges without a fixed color.
    pub fn interior_edges(&self) -> Vec<usize> {
        (0..self.edges.len()).filter(|&i| self.fixed[i].is_none()).collect()
    }

    /// Fixes the color of an edge, replacing any earlier value.
    pub fn set_boundary(&mut self, edge: &str, tj: i64) -> Result<()> {
        let i = self
            .edges
            .iter()
            .position(|e| e == edge)
            .ok_or_else(|| bad(format!("unknown edge {edge:?}")))?;
        self.fixed[i] = Some(tj);
        Ok(())
    }

    fn triads(&self) -> Vec<[usize; 3]> {
        let mut out: Vec<[usize; 3]> = Vec::new();
        for t in &self.tets {
            for tr in TRIADS {
                let mut f = tr.map(|i| t[i]);
                f.sort_unstable();
                if !out.contains(&f) {
                    out.push(f);
                }
            }
        }
        out
    }
}

/// Every coloring by twice-spins `0..=k` that extends the boundary colors
/// and makes every face admissible at level `k`. Items are full colorings
/// indexed by edge.
pub fn admissible_colorings(tri: &Triangulation, k: u32) -> Result<Colorings> {
    let k = k as i64;
    let order = tri.interior_edges();
    let pos: HashMap<usize, usize> = order.iter().enumerate().map(|(p, &e)| (e, p)).collect();
    let mut checks = vec![Vec::new(); order.len()];
    let mut fixed_ok = true;
    let cur: Vec<i64> = tri.fixed.iter().map(|c| c.unwrap_or(0)).collect();
    for f in tri.triads() {
        // check a face as soon as its last interior edge is assigned
        match f.iter().filter_map(|e| pos.get(e)).max() {
            Some(&p) => checks[p].push(f),
            None => fixed_ok &= triangle_admissible(cur[f[0]], cur[f[1]], cur[f[2]], Some(k)),
        }
    }
    Ok(Colorings {
        k,
        vals: vec![-1; order.len()],
        order,
        checks,
        cur,
        depth: 0,
        state: if fixed_ok { State::Fresh } else { State::Done },
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum State {
    Fresh,
    Running,
    Done,
}

/// Depth-first enumeration of admissible colorings.
#[derive(Clone, Debug)]
pub struct Colorings {
    k: i64,
    order: Vec<usize>,
    checks: Vec<Vec<[usize; 3]>>,
    cur: Vec<i64>,
    vals: Vec<i64>,
    depth: usize,
    state: State,
}

impl Iterator for Colorings {
    type Item = Vec<i64>;

    fn next(&mut self) -> Option<Vec<i64>> {
        match self.state {
            State::Done => return None,
            State::Fresh if self.order.is_empty() => {
                self.state = State::Done;
                return Some(self.cur.clone());
            }
            State::Fresh => self.state = State::Running,
            State::Running => {}
        }
        loop {
            let d = self.depth;
            self.vals[d] += 1;
            if self.vals[d] > self.k {
                self.vals[d] = -1;
                if d == 0 {
                    self.state = State::Done;
                    return None;
                }
                self.depth -= 1;
                continue;
            }
            self.cur[self.order[d]] = self.vals[d];
            let cur = &self.cur;
            if !self.checks[d]
                .iter()
                .all(|f| triangle_admissible(cur[f[0]], cur[f[1]], cur[f[2]], Some(self.k)))
            {
                continue;
            }
            if d + 1 == self.order.len() {
                return Some(self.cur.clone());
            }
            self.depth += 1;
        }
    }
}
