//! The finite abelian group `G`, its characters and the weight map.
//!
//! `G` is a product of cyclic groups of orders `d_1..d_k` acting diagonally
//! on `C^n`; row `j` of the weight matrix holds the weights of `x_1..x_n`
//! in the `j`-th factor. The weight map sends a Laurent exponent `m` to the
//! character by which `G` acts on `x^m`.

use std::collections::VecDeque;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::ToPrimitive;

use crate::error::GroupError;
use crate::exact::{Integer, IntVector};

/// A character of `G`, stored as residues modulo the cyclic orders.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Character {
    residues: Vec<u64>,
}

impl Character {
    pub fn residues(&self) -> &[u64] {
        &self.residues
    }

    pub fn is_trivial(&self) -> bool {
        self.residues.iter().all(|&r| r == 0)
    }
}

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.residues.as_slice() {
            [k] => write!(f, "χ{k}"),
            rs => {
                let parts: Vec<String> = rs.iter().map(u64::to_string).collect();
                write!(f, "χ({})", parts.join(","))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupData {
    orders: Vec<u64>,
    weights: Vec<Vec<u64>>,
    n: usize,
}

impl GroupData {
    pub fn new(orders: Vec<u64>, weights: Vec<Vec<i64>>) -> Result<Self, GroupError> {
        if weights.len() != orders.len() {
            return Err(GroupError::WeightRows {
                rows: weights.len(),
                factors: orders.len(),
            });
        }
        if let Some(index) = orders.iter().position(|&d| d == 0) {
            return Err(GroupError::ZeroOrder { index });
        }
        let n = match weights.first() {
            Some(row) => row.len(),
            None => return Err(GroupError::EmptyDimension),
        };
        if n == 0 {
            return Err(GroupError::EmptyDimension);
        }
        let mut reduced = Vec::with_capacity(weights.len());
        for (row, (w, &d)) in weights.iter().zip(&orders).enumerate() {
            if w.len() != n {
                return Err(GroupError::WeightColumns {
                    row,
                    len: w.len(),
                    n,
                });
            }
            reduced.push(w.iter().map(|&a| a.rem_euclid(d as i64) as u64).collect());
        }
        let g = GroupData {
            orders,
            weights: reduced,
            n,
        };
        let generated = g.cayley_bfs().iter().filter(|r| r.is_some()).count() as u64;
        if generated != g.order() {
            return Err(GroupError::NotFaithful {
                generated,
                order: g.order(),
            });
        }
        Ok(g)
    }

    /// The cyclic group `1/r(a_1, ..., a_n)`.
    pub fn cyclic(order: u64, weights: &[i64]) -> Result<Self, GroupError> {
        Self::new(vec![order], vec![weights.to_vec()])
    }

    /// The trivial group acting on `C^n`.
    pub fn trivial(n: usize) -> Result<Self, GroupError> {
        Self::new(vec![1], vec![vec![0; n]])
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    /// Weight matrix, entries reduced into `[0, d_j)`.
    pub fn weight_matrix(&self) -> &[Vec<u64>] {
        &self.weights
    }

    pub fn order(&self) -> u64 {
        self.orders.iter().product()
    }

    /// `det` of the action is trivial, i.e. `G` lies in `SL_n`.
    pub fn is_special_linear(&self) -> bool {
        self.weights
            .iter()
            .zip(&self.orders)
            .all(|(w, &d)| w.iter().sum::<u64>() % d == 0)
    }

    pub fn trivial_character(&self) -> Character {
        Character {
            residues: vec![0; self.orders.len()],
        }
    }

    pub fn weight(&self, m: &[Integer]) -> Character {
        assert_eq!(m.len(), self.n, "exponent has wrong length");
        let residues = self
            .weights
            .iter()
            .zip(&self.orders)
            .map(|(w, &d)| {
                let s: BigInt = w.iter().zip(m).map(|(&a, x)| BigInt::from(a) * x).sum();
                s.mod_floor(&BigInt::from(d))
                    .to_u64()
                    .expect("residue fits in u64")
            })
            .collect();
        Character { residues }
    }

    /// Weight of the basic monomial `x_j`.
    pub fn variable_weight(&self, j: usize) -> Character {
        Character {
            residues: self.weights.iter().map(|w| w[j]).collect(),
        }
    }

    pub fn mul(&self, a: &Character, b: &Character) -> Character {
        Character {
            residues: a
                .residues
                .iter()
                .zip(&b.residues)
                .zip(&self.orders)
                .map(|((x, y), d)| (x + y) % d)
                .collect(),
        }
    }

    pub fn inv(&self, a: &Character) -> Character {
        Character {
            residues: a
                .residues
                .iter()
                .zip(&self.orders)
                .map(|(x, d)| (d - x) % d)
                .collect(),
        }
    }

    /// Position of `a` in [`GroupData::characters`].
    pub fn index_of(&self, a: &Character) -> usize {
        a.residues
            .iter()
            .zip(&self.orders)
            .fold(0u64, |acc, (r, d)| acc * d + r) as usize
    }

    pub fn character_at(&self, mut index: usize) -> Character {
        let mut residues = vec![0; self.orders.len()];
        for (slot, &d) in residues.iter_mut().zip(&self.orders).rev() {
            *slot = index as u64 % d;
            index /= d as usize;
        }
        Character { residues }
    }

    /// All characters, ordered by residue tuple.
    pub fn characters(&self) -> Vec<Character> {
        (0..self.order() as usize).map(|i| self.character_at(i)).collect()
    }

    pub fn contains(&self, a: &Character) -> bool {
        a.residues.len() == self.orders.len()
            && a.residues.iter().zip(&self.orders).all(|(r, d)| r < d)
    }

    pub fn character(&self, residues: &[i64]) -> Result<Character, GroupError> {
        if residues.len() != self.orders.len() {
            return Err(GroupError::BadCharacter(format!("{residues:?}")));
        }
        Ok(Character {
            residues: residues
                .iter()
                .zip(&self.orders)
                .map(|(&r, &d)| r.rem_euclid(d as i64) as u64)
                .collect(),
        })
    }

    /// Parses `"3"`, `"χ3"`, `"chi3"`, `"1,2"` or `"(1,2)"`.
    pub fn parse_character(&self, s: &str) -> Result<Character, GroupError> {
        let bad = || GroupError::BadCharacter(s.to_string());
        let t = s.trim();
        let t = t
            .strip_prefix("χ")
            .or_else(|| t.strip_prefix("chi"))
            .unwrap_or(t)
            .trim_start_matches('_');
        let t = t.trim_start_matches('(').trim_end_matches(')');
        let residues = t
            .split(',')
            .map(|p| p.trim().parse::<i64>().map_err(|_| bad()))
            .collect::<Result<Vec<_>, _>>()?;
        self.character(&residues)
    }

    /// Breadth-first search of the Cayley graph generated by the variable
    /// weights, starting at the trivial character. Entry `i` holds the first
    /// nonnegative exponent found reaching character `i`.
    fn cayley_bfs(&self) -> Vec<Option<Vec<u64>>> {
        let order = self.order() as usize;
        let mut found: Vec<Option<Vec<u64>>> = vec![None; order];
        let start = self.trivial_character();
        found[self.index_of(&start)] = Some(vec![0; self.n]);
        let mut queue = VecDeque::from([start]);
        while let Some(c) = queue.pop_front() {
            let exp = found[self.index_of(&c)].clone().expect("visited");
            for j in 0..self.n {
                let next = self.mul(&c, &self.variable_weight(j));
                let idx = self.index_of(&next);
                if found[idx].is_none() {
                    let mut e = exp.clone();
                    e[j] += 1;
                    found[idx] = Some(e);
                    queue.push_back(next);
                }
            }
        }
        found
    }

    /// A nonnegative exponent of weight `chi`, one per character, in the
    /// order of [`GroupData::characters`]. Each exponent has total degree
    /// below `|G|`.
    pub fn representative_monomials(&self) -> Vec<IntVector> {
        self.cayley_bfs()
            .into_iter()
            .map(|e| {
                e.expect("faithful action reaches every character")
                    .into_iter()
                    .map(BigInt::from)
                    .collect()
            })
            .collect()
    }

    pub fn representative_monomial(&self, chi: &Character) -> IntVector {
        self.representative_monomials().swap_remove(self.index_of(chi))
    }
}
