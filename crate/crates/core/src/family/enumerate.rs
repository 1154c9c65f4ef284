//! Complete enumeration of normalized reductor sets.
//!
//! For a fixed ray write `q_χ = v_χ + k_χ` with `v_χ = v(E_i, χ)` and
//! `k_χ ∈ Z`. The reductor inequality for `(χ, x_j)` becomes the difference
//! constraint `k_{χρ(x_j)} - k_χ ≤ ⌊v_χ + e_i(x_j)⌋`, and the maximal shift
//! bounds give a finite box. Depth-first search over the box with bound
//! propagation lists every solution.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};

use super::{maxshift::ray_minima, ReductorSet};
use crate::exact::Rational;
use crate::gdivisor::frac_vals;
use crate::toric::Fan;

/// All admissible coefficient columns for one ray. `rows[k][χ]` is the
/// coefficient `q_{χ,i}`, characters in [`crate::GroupData::characters`]
/// order. Rows are sorted lexicographically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PerRayTable {
    pub ray: usize,
    pub rows: Vec<Vec<Rational>>,
}

#[derive(Clone, Copy, Debug)]
struct Edge {
    from: usize,
    to: usize,
    /// `k_to - k_from <= weight`
    weight: i64,
}

// Offsets k are bounded by the maximal shifts, which are at most
// n·|G|·max(ray coordinate), so i64 is ample.
fn to_i64(q: &Rational) -> i64 {
    q.to_integer()
        .to_i64()
        .expect("shift offsets fit in 64 bits")
}

struct Search<'a> {
    edges: &'a [Edge],
    rows: Vec<Vec<i64>>,
}

impl Search<'_> {
    /// Tightens bounds to a fixpoint; false if some domain empties.
    fn propagate(&self, lo: &mut [i64], hi: &mut [i64]) -> bool {
        loop {
            let mut changed = false;
            for e in self.edges {
                let h = hi[e.from].saturating_add(e.weight);
                if h < hi[e.to] {
                    hi[e.to] = h;
                    changed = true;
                }
                let l = lo[e.to].saturating_sub(e.weight);
                if l > lo[e.from] {
                    lo[e.from] = l;
                    changed = true;
                }
                if lo[e.to] > hi[e.to] || lo[e.from] > hi[e.from] {
                    return false;
                }
            }
            if !changed {
                return true;
            }
        }
    }

    fn dfs(&mut self, var: usize, lo: &[i64], hi: &[i64]) {
        if var == lo.len() {
            self.rows.push(lo.to_vec());
            return;
        }
        for value in lo[var]..=hi[var] {
            let mut l = lo.to_vec();
            let mut h = hi.to_vec();
            l[var] = value;
            h[var] = value;
            if self.propagate(&mut l, &mut h) {
                self.dfs(var + 1, &l, &h);
            }
        }
    }
}

/// Every column `{q_{χ,i}}_χ` for ray `ray` with `q_{χ0} = 0`, correct
/// congruences, `-M_{χ^{-1},i} ≤ q_χ ≤ M_{χ,i}` and all reductor
/// inequalities at that ray.
pub fn enumerate_per_ray(fan: &Fan, ray: usize) -> PerRayTable {
    let g = fan.group();
    let chars = g.characters();
    let order = chars.len();
    let e = &fan.ray(ray).vector;
    let base = frac_vals(fan, ray);
    let minima = ray_minima(fan, ray);

    let mut lo = vec![0i64; order];
    let mut hi = vec![0i64; order];
    for (ci, chi) in chars.iter().enumerate().skip(1) {
        let inv = g.index_of(&g.inv(chi));
        hi[ci] = to_i64(&(&minima[ci] - &base[ci]));
        lo[ci] = to_i64(&(-&minima[inv] - &base[ci]));
    }

    let mut edges = Vec::with_capacity(order * fan.dim());
    for (ci, chi) in chars.iter().enumerate() {
        for (j, coord) in e.iter().enumerate() {
            let to = g.index_of(&g.mul(chi, &g.variable_weight(j)));
            let slack = &base[ci] + coord - &base[to];
            debug_assert!(slack.is_integer());
            edges.push(Edge {
                from: ci,
                to,
                weight: to_i64(&slack),
            });
        }
    }

    let mut search = Search {
        edges: &edges,
        rows: Vec::new(),
    };
    if search.propagate(&mut lo, &mut hi) {
        search.dfs(1, &lo, &hi);
    }
    let rows = search
        .rows
        .into_iter()
        .map(|ks| {
            ks.iter()
                .zip(&base)
                .map(|(&k, v)| v + Rational::from_integer(k.into()))
                .collect()
        })
        .collect();
    PerRayTable { ray, rows }
}

/// Streams every normalized reductor set as a product of per-ray tables.
pub struct NormalizedSets<'a> {
    fan: &'a Fan,
    tables: Vec<PerRayTable>,
    cursor: Option<Vec<usize>>,
}

impl NormalizedSets<'_> {
    pub fn tables(&self) -> &[PerRayTable] {
        &self.tables
    }

    /// Product of the per-ray row counts.
    pub fn total(&self) -> BigUint {
        self.tables
            .iter()
            .fold(BigUint::one(), |acc, t| acc * BigUint::from(t.rows.len()))
    }
}

impl Iterator for NormalizedSets<'_> {
    type Item = ReductorSet;

    fn next(&mut self) -> Option<ReductorSet> {
        let cursor = self.cursor.as_mut()?;
        let columns: Vec<(usize, &[Rational])> = self
            .tables
            .iter()
            .zip(cursor.iter())
            .map(|(t, &k)| (t.ray, t.rows[k].as_slice()))
            .collect();
        let set = ReductorSet::from_columns(self.fan.group(), &columns);

        // Odometer, last ray fastest.
        let mut pos = self.tables.len();
        loop {
            if pos == 0 {
                self.cursor = None;
                break;
            }
            pos -= 1;
            cursor[pos] += 1;
            if cursor[pos] < self.tables[pos].rows.len() {
                break;
            }
            cursor[pos] = 0;
        }
        Some(set)
    }
}

pub fn enumerate_normalized(fan: &Fan) -> NormalizedSets<'_> {
    let tables: Vec<PerRayTable> = (0..fan.rays().len())
        .map(|r| enumerate_per_ray(fan, r))
        .collect();
    let cursor = tables
        .iter()
        .all(|t| !t.rows.is_empty())
        .then(|| vec![0; tables.len()]);
    NormalizedSets {
        fan,
        tables,
        cursor,
    }
}
