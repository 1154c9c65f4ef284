//! G-Weil divisors supported on the rays of a fan.
//!
//! A `χ`-Weil divisor `Σ q_i E_i` has every coefficient congruent modulo
//! `Z` to the fractional valuation `v(E_i, χ)`. On a smooth toric
//! resolution these correspond exactly to G-Cartier data: one Laurent
//! monomial of weight `χ` per cone, agreeing on shared rays.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_traits::{One, Signed, Zero};

use crate::error::DivisorError;
use crate::exact::{frac, rat_from_int, to_integral, IntVector, RatVector, Rational};
use crate::group::{Character, GroupData};
use crate::toric::{pairing, Fan};

/// `Σ q_i E_i` together with its character. Coefficients are keyed by ray
/// index; absent entries are zero and zeros are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GWeilDivisor {
    character: Character,
    coeffs: BTreeMap<usize, Rational>,
}

impl GWeilDivisor {
    pub fn new(character: Character, coeffs: impl IntoIterator<Item = (usize, Rational)>) -> Self {
        let mut map: BTreeMap<usize, Rational> = BTreeMap::new();
        for (i, q) in coeffs {
            *map.entry(i).or_insert_with(Rational::zero) += q;
        }
        map.retain(|_, q| !q.is_zero());
        GWeilDivisor {
            character,
            coeffs: map,
        }
    }

    pub fn zero(character: Character) -> Self {
        GWeilDivisor {
            character,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn character(&self) -> &Character {
        &self.character
    }

    pub fn coeff(&self, ray: usize) -> Rational {
        self.coeffs.get(&ray).cloned().unwrap_or_else(Rational::zero)
    }

    /// Nonzero coefficients in ray order.
    pub fn coeffs(&self) -> impl Iterator<Item = (usize, &Rational)> {
        self.coeffs.iter().map(|(&i, q)| (i, q))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_effective(&self) -> bool {
        self.coeffs.values().all(|q| !q.is_negative())
    }

    pub fn set_coeff(&mut self, ray: usize, q: Rational) {
        if q.is_zero() {
            self.coeffs.remove(&ray);
        } else {
            self.coeffs.insert(ray, q);
        }
    }

    pub fn add(&self, other: &GWeilDivisor, g: &GroupData) -> GWeilDivisor {
        GWeilDivisor::new(
            g.mul(&self.character, &other.character),
            self.coeffs
                .iter()
                .chain(&other.coeffs)
                .map(|(&i, q)| (i, q.clone())),
        )
    }

    pub fn neg(&self, g: &GroupData) -> GWeilDivisor {
        GWeilDivisor {
            character: g.inv(&self.character),
            coeffs: self.coeffs.iter().map(|(&i, q)| (i, -q.clone())).collect(),
        }
    }

    pub fn sub(&self, other: &GWeilDivisor, g: &GroupData) -> GWeilDivisor {
        self.add(&other.neg(g), g)
    }

    /// `1/8 E4 + 1/4 E5 - E7` style, `0` for the zero divisor.
    pub fn format(&self, fan: &Fan) -> String {
        if self.coeffs.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, (&i, q)) in self.coeffs.iter().enumerate() {
            let name = fan.ray(i).name();
            let mag = q.abs();
            if k == 0 {
                if q.is_negative() {
                    out.push('-');
                }
            } else {
                out.push_str(if q.is_negative() { " - " } else { " + " });
            }
            if mag.is_one() {
                out.push_str(&name);
            } else {
                let _ = write!(out, "{mag} {name}");
            }
        }
        out
    }
}

/// G-Cartier data: one Laurent exponent of weight `χ` per cone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GCartierDivisor {
    pub character: Character,
    pub per_cone: Vec<IntVector>,
}

/// `v(E_i, χ)`: the fractional part of the valuation along `E_i` of any
/// monomial of weight `χ`.
pub fn frac_val(fan: &Fan, ray: usize, chi: &Character) -> Rational {
    let m = fan.group().representative_monomial(chi);
    frac(&pairing(&fan.ray(ray).vector, &m))
}

/// `v(E_i, χ)` for every character, in the order of
/// [`GroupData::characters`].
pub fn frac_vals(fan: &Fan, ray: usize) -> Vec<Rational> {
    let e = &fan.ray(ray).vector;
    fan.group()
        .representative_monomials()
        .iter()
        .map(|m| frac(&pairing(e, m)))
        .collect()
}

/// Checks `q_i - v(E_i, χ) ∈ Z` on every ray of the fan.
pub fn check_congruence(fan: &Fan, d: &GWeilDivisor) -> Result<(), DivisorError> {
    if !fan.group().contains(d.character()) {
        return Err(crate::error::GroupError::BadCharacter(d.character().to_string()).into());
    }
    let m = fan.group().representative_monomial(d.character());
    for (i, ray) in fan.rays().iter().enumerate() {
        let expected = frac(&pairing(&ray.vector, &m));
        let q = d.coeff(i);
        if !(&q - &expected).is_integer() {
            return Err(DivisorError::CongruenceViolation {
                ray: ray.label,
                coeff: q.to_string(),
                expected: expected.to_string(),
                character: d.character().to_string(),
            });
        }
    }
    if let Some((&i, _)) = d.coeffs.iter().find(|(&i, _)| i >= fan.rays().len()) {
        return Err(DivisorError::UnknownRay(format!("index {i}")));
    }
    Ok(())
}

/// `(x^m) = Σ e_i(m) E_i`, a divisor of character `weight(m)`.
pub fn principal_divisor(fan: &Fan, m: &[crate::exact::Integer]) -> GWeilDivisor {
    GWeilDivisor::new(
        fan.group().weight(m),
        fan.rays()
            .iter()
            .enumerate()
            .map(|(i, r)| (i, pairing(&r.vector, m))),
    )
}

/// `Σ_{e_i ∈ σ} q_i ě_i` on cone `cone`; integral exactly when the
/// coefficients on the cone's rays are congruent to a character.
pub fn local_exponent(fan: &Fan, cone: usize, coeff: impl Fn(usize) -> Rational) -> Result<RatVector, DivisorError> {
    let dual = fan.dual_basis(cone)?;
    let rays = &fan.cone(cone)?.rays;
    let mut m: RatVector = vec![Rational::zero(); fan.dim()];
    for (&r, dv) in rays.iter().zip(dual) {
        let q = coeff(r);
        if q.is_zero() {
            continue;
        }
        for (slot, x) in m.iter_mut().zip(dv) {
            *slot += &q * rat_from_int(x);
        }
    }
    Ok(m)
}

pub fn weil_to_cartier(fan: &Fan, d: &GWeilDivisor) -> Result<GCartierDivisor, DivisorError> {
    check_congruence(fan, d)?;
    let mut per_cone = Vec::with_capacity(fan.cones().len());
    for ci in 0..fan.cones().len() {
        let m = local_exponent(fan, ci, |r| d.coeff(r))?;
        let Some(m) = to_integral(&m) else {
            // Unreachable after the congruence check on a basic cone.
            let r = fan.cone(ci)?.rays[0];
            return Err(DivisorError::CongruenceViolation {
                ray: fan.ray(r).label,
                coeff: d.coeff(r).to_string(),
                expected: frac_val(fan, r, d.character()).to_string(),
                character: d.character().to_string(),
            });
        };
        let w = fan.group().weight(&m);
        if &w != d.character() {
            return Err(DivisorError::WeightMismatch {
                cone: ci,
                found: w.to_string(),
                expected: d.character().to_string(),
            });
        }
        per_cone.push(m);
    }
    Ok(GCartierDivisor {
        character: d.character().clone(),
        per_cone,
    })
}

pub fn cartier_to_weil(fan: &Fan, c: &GCartierDivisor) -> Result<GWeilDivisor, DivisorError> {
    if c.per_cone.len() != fan.cones().len() {
        return Err(DivisorError::ConeCount {
            found: c.per_cone.len(),
            expected: fan.cones().len(),
        });
    }
    for (ci, m) in c.per_cone.iter().enumerate() {
        let w = fan.group().weight(m);
        if w != c.character {
            return Err(DivisorError::WeightMismatch {
                cone: ci,
                found: w.to_string(),
                expected: c.character.to_string(),
            });
        }
    }
    let mut coeffs = Vec::new();
    for (r, ray) in fan.rays().iter().enumerate() {
        let mut seen: Option<(usize, Rational)> = None;
        for ci in fan.cones_with_ray(r) {
            let q = pairing(&ray.vector, &c.per_cone[ci]);
            match &seen {
                None => seen = Some((ci, q)),
                Some((first, q0)) if *q0 != q => {
                    return Err(DivisorError::GluingViolation {
                        ray: ray.label,
                        first: *first,
                        second: ci,
                        a: q0.to_string(),
                        b: q.to_string(),
                    })
                }
                Some(_) => {}
            }
        }
        if let Some((_, q)) = seen {
            coeffs.push((r, q));
        }
    }
    Ok(GWeilDivisor::new(c.character.clone(), coeffs))
}

/// A torus-invariant witness `m` with `(x^m) = D' - D`, if one exists.
///
/// The rays span the ambient space, so the system `e_i(m) = q'_i - q_i`
/// has at most one solution; it is found on the first basic cone and then
/// checked against every ray, for integrality and for the character.
pub fn linear_equivalence_witness(
    fan: &Fan,
    d: &GWeilDivisor,
    d2: &GWeilDivisor,
) -> Option<IntVector> {
    let g = fan.group();
    let diff = d2.sub(d, g);
    let cone = (0..fan.cones().len()).find(|&c| fan.is_basic(c))?;
    let m = local_exponent(fan, cone, |r| diff.coeff(r)).ok()?;
    let m = to_integral(&m)?;
    if g.weight(&m) != *diff.character() {
        return None;
    }
    let ok = fan
        .rays()
        .iter()
        .enumerate()
        .all(|(i, r)| pairing(&r.vector, &m) == diff.coeff(i));
    ok.then_some(m)
}

/// `x*y^2/z` style rendering of a Laurent exponent.
pub fn format_monomial(m: &[crate::exact::Integer]) -> String {
    let names: Vec<String> = match m.len() {
        1 => vec!["x".into()],
        2 => vec!["x".into(), "y".into()],
        3 => vec!["x".into(), "y".into(), "z".into()],
        n => (1..=n).map(|i| format!("x{i}")).collect(),
    };
    let part = |sign_positive: bool| -> Vec<String> {
        m.iter()
            .zip(&names)
            .filter(|(e, _)| if sign_positive { e.is_positive() } else { e.is_negative() })
            .map(|(e, v)| {
                let a = e.abs();
                if a.is_one() {
                    v.clone()
                } else {
                    format!("{v}^{a}")
                }
            })
            .collect()
    };
    let num = part(true);
    let den = part(false);
    let num = if num.is_empty() { "1".to_string() } else { num.join("*") };
    match den.len() {
        0 => num,
        1 => format!("{num}/{}", den[0]),
        _ => format!("{num}/({})", den.join("*")),
    }
}
