//! Reductor sets: one `χ`-Weil divisor `D_χ` per character such that
//! `D_χ + (x_j) - D_{χ·ρ(x_j)}` is effective for every basic monomial.
//!
//! Each reductor set is a family `⊕ L(-D_χ)` of G-constellations
//! deforming the generic orbit, and normalized sets (`D_{χ0} = 0`) are in
//! bijection with equivalence classes of such families. The inequalities
//! split ray by ray, so the classification is a product of per-ray tables.

mod enumerate;
mod maxshift;
mod piece;

use num_traits::Signed;

use crate::error::{DivisorError, FamilyError};
use crate::exact::{IntVector, Rational};
use crate::gdivisor::{check_congruence, frac_vals, linear_equivalence_witness, GWeilDivisor};
use crate::group::{Character, GroupData};
use crate::toric::Fan;

pub use enumerate::{enumerate_normalized, enumerate_per_ray, NormalizedSets, PerRayTable};
pub use maxshift::ray_minima;
pub use piece::{quiver, reductor_piece, Arrow, QuiverRep, ReductorPiece};

/// One divisor per character, stored in the order of
/// [`GroupData::characters`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ReductorSet {
    divisors: Vec<GWeilDivisor>,
}

impl ReductorSet {
    /// Accepts the divisors in any order; exactly one per character.
    pub fn new(g: &GroupData, divisors: Vec<GWeilDivisor>) -> Result<Self, FamilyError> {
        let order = g.order() as usize;
        if divisors.len() != order {
            return Err(FamilyError::DivisorCount {
                found: divisors.len(),
                expected: order,
            });
        }
        let mut slots: Vec<Option<GWeilDivisor>> = vec![None; order];
        for d in divisors {
            if !g.contains(d.character()) {
                return Err(FamilyError::CharacterMismatch {
                    expected: "a character of G".into(),
                    found: d.character().to_string(),
                });
            }
            let i = g.index_of(d.character());
            if slots[i].is_some() {
                return Err(FamilyError::DuplicateCharacter(d.character().to_string()));
            }
            slots[i] = Some(d);
        }
        Ok(ReductorSet {
            divisors: slots.into_iter().map(|d| d.expect("all filled")).collect(),
        })
    }

    /// Builds a set from per-ray coefficient columns: `columns[r][χ]` is
    /// the coefficient of ray `r` in `D_χ`.
    pub fn from_columns(g: &GroupData, columns: &[(usize, &[Rational])]) -> Self {
        let divisors = g
            .characters()
            .into_iter()
            .enumerate()
            .map(|(ci, c)| GWeilDivisor::new(c, columns.iter().map(|(r, col)| (*r, col[ci].clone()))))
            .collect();
        ReductorSet { divisors }
    }

    pub fn divisors(&self) -> &[GWeilDivisor] {
        &self.divisors
    }

    /// `D_χ` for the character at position `index`.
    pub fn by_index(&self, index: usize) -> &GWeilDivisor {
        &self.divisors[index]
    }

    pub fn get(&self, g: &GroupData, chi: &Character) -> &GWeilDivisor {
        &self.divisors[g.index_of(chi)]
    }

    pub fn coeff(&self, chi_index: usize, ray: usize) -> Rational {
        self.divisors[chi_index].coeff(ray)
    }

    /// Coefficients of `ray` across all characters.
    pub fn column(&self, ray: usize) -> Vec<Rational> {
        self.divisors.iter().map(|d| d.coeff(ray)).collect()
    }

    /// `D_{χ0} = 0`.
    pub fn is_normalized(&self) -> bool {
        self.divisors[0].is_zero()
    }

    fn map_divisors(g: &GroupData, f: impl Fn(&Character) -> GWeilDivisor) -> ReductorSet {
        ReductorSet {
            divisors: g.characters().iter().map(f).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductorViolation {
    pub character: Character,
    /// Index `j` of the basic monomial `x_j`.
    pub variable: usize,
    pub ray: usize,
    /// `q_{χ,i} + e_i(x_j) - q_{χρ(x_j),i}`, which is negative.
    pub value: Rational,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ReductorReport {
    pub congruence: Vec<DivisorError>,
    pub violations: Vec<ReductorViolation>,
}

impl ReductorReport {
    pub fn passed(&self) -> bool {
        self.congruence.is_empty() && self.violations.is_empty()
    }
}

/// Checks every divisor's congruences and all `|G| · n · #rays`
/// inequalities `q_{χ,i} + e_i(x_j) - q_{χρ(x_j),i} ≥ 0`.
pub fn check_reductor(fan: &Fan, set: &ReductorSet) -> ReductorReport {
    let g = fan.group();
    let mut report = ReductorReport::default();
    for d in set.divisors() {
        if let Err(e) = check_congruence(fan, d) {
            report.congruence.push(e);
        }
    }
    let chars = g.characters();
    for (ci, chi) in chars.iter().enumerate() {
        for j in 0..fan.dim() {
            let target = g.index_of(&g.mul(chi, &g.variable_weight(j)));
            for (r, ray) in fan.rays().iter().enumerate() {
                let value = set.coeff(ci, r) + &ray.vector[j] - set.coeff(target, r);
                if value.is_negative() {
                    report.violations.push(ReductorViolation {
                        character: chi.clone(),
                        variable: j,
                        ray: r,
                        value,
                    });
                }
            }
        }
    }
    report
}

/// `D_χ = Σ v(E_i, χ) E_i`.
pub fn canonical_family(fan: &Fan) -> ReductorSet {
    let columns: Vec<Vec<Rational>> = (0..fan.rays().len()).map(|r| frac_vals(fan, r)).collect();
    let refs: Vec<(usize, &[Rational])> = columns.iter().enumerate().map(|(r, c)| (r, c.as_slice())).collect();
    ReductorSet::from_columns(fan.group(), &refs)
}

/// `M_χ = Σ_i (min over regular monomials of weight χ of e_i(m)) E_i`.
pub fn maximal_shift_family(fan: &Fan) -> ReductorSet {
    let columns: Vec<Vec<Rational>> = (0..fan.rays().len()).map(|r| ray_minima(fan, r)).collect();
    let refs: Vec<(usize, &[Rational])> = columns.iter().enumerate().map(|(r, c)| (r, c.as_slice())).collect();
    ReductorSet::from_columns(fan.group(), &refs)
}

/// `D'_χ = D_χ - D_{χ0}`.
pub fn normalize(g: &GroupData, set: &ReductorSet) -> ReductorSet {
    let base = set.by_index(0).clone();
    ReductorSet {
        divisors: set.divisors.iter().map(|d| d.sub(&base, g)).collect(),
    }
}

/// The `λ`-shift `D'_{χλ} = D_χ - D_{λ^{-1}}` of a normalized set.
pub fn lambda_shift(g: &GroupData, set: &ReductorSet, lambda: &Character) -> ReductorSet {
    let lambda_inv = g.inv(lambda);
    let base = set.get(g, &lambda_inv).clone();
    ReductorSet::map_divisors(g, |target| {
        let chi = g.mul(target, &lambda_inv);
        set.get(g, &chi).sub(&base, g)
    })
}

/// The reflection `D'_χ = -D_{χ^{-1}}`.
pub fn reflect(g: &GroupData, set: &ReductorSet) -> ReductorSet {
    ReductorSet::map_divisors(g, |chi| set.get(g, &g.inv(chi)).neg(g))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Bound {
    /// `D_χ ≤ M_χ`
    Upper,
    /// `D_χ ≥ -M_{χ^{-1}}`
    Lower,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundViolation {
    pub character: Character,
    pub ray: usize,
    pub bound: Bound,
    pub value: Rational,
    pub limit: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundsReport {
    pub violations: Vec<BoundViolation>,
    /// `D_χ = M_χ` for every character.
    pub upper_attained: bool,
    /// `D_χ = -M_{χ^{-1}}` for every character.
    pub lower_attained: bool,
}

impl BoundsReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks `M_χ ≥ D_χ ≥ -M_{χ^{-1}}` coefficientwise.
pub fn bounds_check(fan: &Fan, set: &ReductorSet) -> BoundsReport {
    bounds_check_with(fan, set, &maximal_shift_family(fan))
}

pub fn bounds_check_with(fan: &Fan, set: &ReductorSet, maxshift: &ReductorSet) -> BoundsReport {
    let g = fan.group();
    let mut violations = Vec::new();
    let mut upper_attained = true;
    let mut lower_attained = true;
    for (ci, chi) in g.characters().iter().enumerate() {
        let inv = g.index_of(&g.inv(chi));
        for r in 0..fan.rays().len() {
            let q = set.coeff(ci, r);
            let hi = maxshift.coeff(ci, r);
            let lo = -maxshift.coeff(inv, r);
            upper_attained &= q == hi;
            lower_attained &= q == lo;
            if q > hi {
                violations.push(BoundViolation {
                    character: chi.clone(),
                    ray: r,
                    bound: Bound::Upper,
                    value: q.clone(),
                    limit: hi,
                });
            }
            if q < lo {
                violations.push(BoundViolation {
                    character: chi.clone(),
                    ray: r,
                    bound: Bound::Lower,
                    value: q,
                    limit: lo,
                });
            }
        }
    }
    BoundsReport {
        violations,
        upper_attained,
        lower_attained,
    }
}

/// Result of comparing two reductor sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Equivalence {
    /// The common difference `N = D'_χ - D_χ`, a `χ0`-divisor.
    pub difference: GWeilDivisor,
    /// `m` with `(x^m) = N`, present when the families are isomorphic.
    pub isomorphism: Option<IntVector>,
}

/// `Some` iff `D'_χ - D_χ` does not depend on `χ`, i.e. the two sets
/// describe equivalent families.
pub fn equivalence_witness(fan: &Fan, a: &ReductorSet, b: &ReductorSet) -> Option<Equivalence> {
    let g = fan.group();
    let difference = b.by_index(0).sub(a.by_index(0), g);
    for (da, db) in a.divisors().iter().zip(b.divisors()).skip(1) {
        if db.sub(da, g) != difference {
            return None;
        }
    }
    let zero = GWeilDivisor::zero(g.trivial_character());
    let isomorphism = linear_equivalence_witness(fan, &zero, &difference);
    Some(Equivalence {
        difference,
        isomorphism,
    })
}

#[cfg(test)]
mod tests;
