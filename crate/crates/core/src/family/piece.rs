//! Reductor pieces and labelled McKay quivers on a single chart `A_σ`.
//!
//! On a basic cone `σ` the divisor `D_χ` is generated by one Laurent
//! monomial `x^{p_χ}` with `p_χ = Σ_{e_i ∈ σ} q_{χ,i} ě_i`. Arrows and
//! exponents are keyed by the weight of the generator: the arrow `(χ, x_j)`
//! runs from `χ` to `χ·ρ(x_j)` and carries `x_j x^{p_χ} / x^{p_{χρ(x_j)}}`.

use std::fmt::Write as _;

use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use super::ReductorSet;
use crate::error::DivisorError;
use crate::exact::{to_integral, Integer, IntVector, Rational};
use crate::gdivisor::{format_monomial, frac_val, local_exponent};
use crate::group::Character;
use crate::toric::{pairing, Fan};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductorPiece {
    pub cone: usize,
    /// `p_χ`, characters in [`crate::GroupData::characters`] order.
    pub exponents: Vec<IntVector>,
}

impl ReductorPiece {
    /// Triples `(χ index, j, ray)` where `e_i(p_χ + u_j - p_{χρ(x_j)}) < 0`.
    pub fn violations(&self, fan: &Fan) -> Vec<(usize, usize, usize)> {
        let g = fan.group();
        let rays = &fan.cones()[self.cone].rays;
        let mut out = Vec::new();
        for (ci, chi) in g.characters().iter().enumerate() {
            for j in 0..fan.dim() {
                let label = arrow_exponent(fan, self, ci, chi, j);
                for &r in rays {
                    if pairing(&fan.ray(r).vector, &label).is_negative() {
                        out.push((ci, j, r));
                    }
                }
            }
        }
        out
    }

    pub fn monomials(&self) -> Vec<String> {
        self.exponents.iter().map(|p| format_monomial(p)).collect()
    }
}

fn arrow_exponent(fan: &Fan, piece: &ReductorPiece, ci: usize, chi: &Character, j: usize) -> IntVector {
    let g = fan.group();
    let target = g.index_of(&g.mul(chi, &g.variable_weight(j)));
    let mut label: IntVector = piece.exponents[ci]
        .iter()
        .zip(&piece.exponents[target])
        .map(|(a, b)| a - b)
        .collect();
    label[j] += 1;
    label
}

/// `{x^{p_χ}}` on cone `cone`.
pub fn reductor_piece(fan: &Fan, set: &ReductorSet, cone: usize) -> Result<ReductorPiece, DivisorError> {
    let g = fan.group();
    let rays = fan.cone(cone)?.rays.clone();
    let mut exponents = Vec::with_capacity(set.divisors().len());
    for d in set.divisors() {
        let m = local_exponent(fan, cone, |r| d.coeff(r))?;
        let bad = || {
            let r = rays
                .iter()
                .copied()
                .find(|&r| !(d.coeff(r) - frac_val(fan, r, d.character())).is_integer())
                .unwrap_or(rays[0]);
            DivisorError::CongruenceViolation {
                ray: fan.ray(r).label,
                coeff: d.coeff(r).to_string(),
                expected: frac_val(fan, r, d.character()).to_string(),
                character: d.character().to_string(),
            }
        };
        let m = to_integral(&m).ok_or_else(bad)?;
        if &g.weight(&m) != d.character() {
            return Err(bad());
        }
        exponents.push(m);
    }
    Ok(ReductorPiece { cone, exponents })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub source: usize,
    pub target: usize,
    /// The basic monomial `x_j` acting along this arrow.
    pub variable: usize,
    /// `p_source + u_j - p_target`.
    pub exponent: IntVector,
    /// `e_i(exponent)` for the rays of the cone, in cone order.
    pub local: Vec<Rational>,
}

impl Arrow {
    /// Whether the label is regular on `A_σ`.
    pub fn is_regular(&self) -> bool {
        self.local.iter().all(|x| !x.is_negative())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuiverRep {
    pub cone: usize,
    pub vertices: Vec<Character>,
    pub piece: ReductorPiece,
    pub arrows: Vec<Arrow>,
}

/// The McKay quiver of `G` labelled by the family on chart `cone`:
/// `n` arrows out of every vertex.
pub fn quiver(fan: &Fan, set: &ReductorSet, cone: usize) -> Result<QuiverRep, DivisorError> {
    let piece = reductor_piece(fan, set, cone)?;
    let g = fan.group();
    let chars = g.characters();
    let rays = &fan.cones()[cone].rays;
    let mut arrows = Vec::with_capacity(chars.len() * fan.dim());
    for (ci, chi) in chars.iter().enumerate() {
        for j in 0..fan.dim() {
            let target = g.index_of(&g.mul(chi, &g.variable_weight(j)));
            let exponent = arrow_exponent(fan, &piece, ci, chi, j);
            let local = rays
                .iter()
                .map(|&r| pairing(&fan.ray(r).vector, &exponent))
                .collect();
            arrows.push(Arrow {
                source: ci,
                target,
                variable: j,
                exponent,
                local,
            });
        }
    }
    Ok(QuiverRep {
        cone,
        vertices: chars,
        piece,
        arrows,
    })
}

fn variable_name(n: usize, j: usize) -> String {
    let mut u = vec![Integer::zero(); n];
    u[j] = Integer::one();
    format_monomial(&u)
}

fn local_tuple(local: &[Rational]) -> String {
    let parts: Vec<String> = local.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}

impl QuiverRep {
    pub fn is_regular(&self) -> bool {
        self.arrows.iter().all(Arrow::is_regular)
    }

    /// Arrow labels evaluated at the point of `A_σ` with local coordinates
    /// `point` (one per ray of the cone, `0^0 = 1`).
    pub fn evaluate(&self, point: &[Rational]) -> Vec<Rational> {
        self.arrows
            .iter()
            .map(|a| {
                a.local.iter().zip(point).fold(Rational::one(), |acc, (e, t)| {
                    let k = e.to_integer();
                    if k.is_zero() {
                        acc
                    } else if t.is_zero() {
                        if k.is_positive() {
                            Rational::zero()
                        } else {
                            panic!("label has a pole at the evaluation point")
                        }
                    } else {
                        let k: i32 = k.try_into().expect("small exponent");
                        acc * num_traits::pow::Pow::pow(t, k)
                    }
                })
            })
            .collect()
    }

    pub fn to_dot(&self, fan: &Fan) -> String {
        let n = fan.dim();
        let rays: Vec<String> = fan.cones()[self.cone].rays.iter().map(|&r| fan.ray(r).name()).collect();
        let mut out = String::new();
        let _ = writeln!(out, "digraph cone_{} {{", self.cone + 1);
        let _ = writeln!(out, "  label=\"cone {} <{}>\";", self.cone + 1, rays.join(","));
        for (ci, v) in self.vertices.iter().enumerate() {
            let _ = writeln!(
                out,
                "  \"{v}\" [label=\"{v}\\n{}\"];",
                format_monomial(&self.piece.exponents[ci])
            );
        }
        for a in &self.arrows {
            let _ = writeln!(
                out,
                "  \"{}\" -> \"{}\" [label=\"{}: {} {}\"];",
                self.vertices[a.source],
                self.vertices[a.target],
                variable_name(n, a.variable),
                format_monomial(&a.exponent),
                local_tuple(&a.local)
            );
        }
        out.push_str("}\n");
        out
    }

    pub fn to_json(&self, fan: &Fan) -> Value {
        let n = fan.dim();
        let rays: Vec<String> = fan.cones()[self.cone].rays.iter().map(|&r| fan.ray(r).name()).collect();
        let vertices: Vec<Value> = self
            .vertices
            .iter()
            .zip(&self.piece.exponents)
            .map(|(v, p)| {
                json!({
                    "char": v.residues(),
                    "exponent": ints(p),
                    "generator": format_monomial(p),
                })
            })
            .collect();
        let arrows: Vec<Value> = self
            .arrows
            .iter()
            .map(|a| {
                json!({
                    "source": self.vertices[a.source].residues(),
                    "target": self.vertices[a.target].residues(),
                    "variable": variable_name(n, a.variable),
                    "exponent": ints(&a.exponent),
                    "label": format_monomial(&a.exponent),
                    "local": a.local.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                })
            })
            .collect();
        json!({
            "cone": self.cone + 1,
            "rays": rays,
            "vertices": vertices,
            "arrows": arrows,
        })
    }
}

fn ints(v: &[Integer]) -> Vec<Value> {
    v.iter()
        .map(|x| match i64::try_from(x) {
            Ok(s) => json!(s),
            Err(_) => json!(x.to_string()),
        })
        .collect()
}
