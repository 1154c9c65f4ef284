//! Maximal-shift minima as shortest paths on the character group.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use num_traits::Zero;

use crate::exact::Rational;
use crate::toric::Fan;

/// `min e_i(m)` over nonnegative exponents `m` of each weight, in the order
/// of [`crate::GroupData::characters`].
///
/// Multiplying by `x_j` moves from `χ` to `χ·ρ(x_j)` and adds the `j`-th
/// coordinate of the ray to the valuation, so the minima are single-source
/// shortest path lengths from `χ0` in the Cayley graph of `G^∨`.
pub fn ray_minima(fan: &Fan, ray: usize) -> Vec<Rational> {
    let g = fan.group();
    let e = &fan.ray(ray).vector;
    let steps: Vec<usize> = (0..fan.dim())
        .map(|j| g.index_of(&g.variable_weight(j)))
        .collect();
    let chars = g.characters();
    let order = chars.len();
    let mut dist: Vec<Option<Rational>> = vec![None; order];
    let mut heap = BinaryHeap::new();
    dist[0] = Some(Rational::zero());
    heap.push(Reverse((Rational::zero(), 0usize)));
    while let Some(Reverse((d, u))) = heap.pop() {
        if dist[u].as_ref().is_some_and(|best| *best < d) {
            continue;
        }
        for (j, &s) in steps.iter().enumerate() {
            let v = g.index_of(&g.mul(&chars[u], &chars[s]));
            let nd = &d + &e[j];
            if dist[v].as_ref().is_none_or(|best| nd < *best) {
                dist[v] = Some(nd.clone());
                heap.push(Reverse((nd, v)));
            }
        }
    }
    dist.into_iter()
        .map(|d| d.expect("faithful action reaches every character"))
        .collect()
}
