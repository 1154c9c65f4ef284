//! The overlattice `L`, fans of basic cones and the toric valuation pairing.
//!
//! Points of `L` are stored in standard coordinates of `(Z^n)^∨ ⊗ Q`, so a
//! ray such as `1/8(2,4,2)` pairs with an exponent `m` by a plain dot
//! product. That pairing is the valuation of `x^m` along the divisor of the
//! ray.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};

use crate::error::ToricError;
use crate::exact::{
    self, dot, hermite_rows, nonnegative_feasible, to_integral, IntVector, RatMatrix, RatVector,
    Rational,
};
use crate::group::GroupData;

/// The lattice `L ⊃ (Z^n)^∨` generated by `(Z^n)^∨` and the rows of the
/// weight matrix divided by the cyclic orders.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
    basis: RatMatrix,
    inverse: RatMatrix,
    group_order: u64,
    cosets: Vec<RatVector>,
}

impl Lattice {
    pub fn build(g: &GroupData) -> Lattice {
        let n = g.dim();
        let lcm = g.orders().iter().fold(1u64, |acc, &d| acc.lcm(&d));
        let big = BigInt::from(lcm);
        let mut gens: Vec<IntVector> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { big.clone() } else { BigInt::zero() })
                    .collect()
            })
            .collect();
        for (w, &d) in g.weight_matrix().iter().zip(g.orders()) {
            let scale = lcm / d;
            gens.push(w.iter().map(|&a| BigInt::from(a * scale)).collect());
        }
        let rows = hermite_rows(&gens);
        debug_assert_eq!(rows.len(), n);
        let denom = Rational::from_integer(big);
        let basis = RatMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|x| Rational::from_integer(x.clone()) / &denom).collect())
                .collect(),
        )
        .expect("square by construction");
        let inverse = basis.invert().expect("full-rank lattice");

        let mut cosets: Vec<RatVector> = g
            .characters()
            .iter()
            .map(|c| {
                // The group element with exponents c_j in each cyclic factor.
                (0..n)
                    .map(|i| {
                        let v = c
                            .residues()
                            .iter()
                            .zip(g.weight_matrix())
                            .zip(g.orders())
                            .fold(Rational::zero(), |acc, ((&cj, w), &d)| {
                                acc + exact::rat((cj * w[i]) as i64, d as i64)
                            });
                        exact::frac(&v)
                    })
                    .collect()
            })
            .collect();
        cosets.sort();
        cosets.dedup();

        Lattice {
            basis,
            inverse,
            group_order: g.order(),
            cosets,
        }
    }

    /// Rows generate `L`.
    pub fn basis(&self) -> &RatMatrix {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    /// `[L : (Z^n)^∨]`, equal to `|G|` for a faithful action.
    pub fn index(&self) -> Rational {
        self.basis.det().abs().recip()
    }

    pub fn group_order(&self) -> u64 {
        self.group_order
    }

    /// Coordinates of `v` with respect to [`Lattice::basis`].
    pub fn coordinates(&self, v: &[Rational]) -> RatVector {
        self.inverse.left_mul(v)
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        v.len() == self.dim() && self.coordinates(v).iter().all(Rational::is_integer)
    }

    /// `v ∈ L` and `v / k ∉ L` for every integer `k ≥ 2`.
    pub fn is_primitive(&self, v: &[Rational]) -> bool {
        let Some(coords) = to_integral(&self.coordinates(v)) else {
            return false;
        };
        let g = coords.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        g.is_one()
    }

    /// The `|G|` points of `L` in the half-open unit cube, sorted.
    pub fn cube_points(&self) -> &[RatVector] {
        &self.cosets
    }

    /// Points of `L` with nonnegative coordinates summing to one: the unit
    /// vectors first, then the interior points in lexicographic order.
    pub fn junior_simplex(&self) -> Vec<RatVector> {
        let n = self.dim();
        let mut out: Vec<RatVector> = (0..n).map(|i| unit_vector(n, i)).collect();
        out.extend(
            self.cosets
                .iter()
                .filter(|p| p.iter().sum::<Rational>().is_one())
                .cloned(),
        );
        out
    }

    /// The least `c > 0` with `c · u_axis ∈ L`. This is the valuation of
    /// `x_axis` along the image in `X` of the hyperplane `x_axis = 0`.
    pub fn x_valuation(&self, axis: usize) -> Rational {
        let n = self.dim();
        assert!(axis < n, "axis out of range");
        (1..=self.group_order)
            .rev()
            .map(|k| exact::rat(1, k as i64))
            .find(|c| {
                let mut v = vec![Rational::zero(); n];
                v[axis] = c.clone();
                self.contains(&v)
            })
            .unwrap_or_else(Rational::one)
    }
}

pub fn unit_vector(n: usize, i: usize) -> RatVector {
    (0..n)
        .map(|j| if i == j { Rational::one() } else { Rational::zero() })
        .collect()
}

/// `e(m)`: the valuation of `x^m` along the divisor of `e`.
pub fn pairing(e: &[Rational], m: &[exact::Integer]) -> Rational {
    dot(e, m)
}

/// Coordinate sum minus one.
pub fn discrepancy(e: &[Rational]) -> Rational {
    e.iter().sum::<Rational>() - Rational::one()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ray {
    /// 1-based label: the ray is `e_label`, its divisor `E_label`.
    pub label: usize,
    pub vector: RatVector,
}

impl Ray {
    pub fn name(&self) -> String {
        format!("E{}", self.label)
    }
}

impl fmt::Display for Ray {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{} = {}", self.label, format_point(&self.vector))
    }
}

/// Writes `1/8(2,4,2)` style when there is a common denominator.
pub fn format_point(v: &[Rational]) -> String {
    let d = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let scaled: Vec<String> = v
        .iter()
        .map(|x| (x * Rational::from_integer(d.clone())).to_integer().to_string())
        .collect();
    if d.is_one() {
        format!("({})", scaled.join(","))
    } else {
        format!("1/{}({})", d, scaled.join(","))
    }
}

/// A maximal cone, given by indices into [`Fan::rays`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cone {
    pub rays: Vec<usize>,
}

#[derive(Clone, Debug)]
struct ConeData {
    det: Rational,
    dual: Option<Vec<IntVector>>,
}

/// A fan of simplicial cones in `L`, together with the group it lives over.
#[derive(Clone, Debug)]
pub struct Fan {
    group: GroupData,
    lattice: Lattice,
    rays: Vec<Ray>,
    cones: Vec<Cone>,
    data: Vec<ConeData>,
}

impl Fan {
    /// Rays are labelled `1..` in the order given; cones index rays from 0.
    pub fn new(
        group: GroupData,
        rays: Vec<RatVector>,
        cones: Vec<Vec<usize>>,
    ) -> Result<Fan, ToricError> {
        let n = group.dim();
        let lattice = Lattice::build(&group);
        let mut out_rays = Vec::with_capacity(rays.len());
        for (i, v) in rays.into_iter().enumerate() {
            let label = i + 1;
            if v.len() != n {
                return Err(ToricError::RayDimension {
                    label,
                    len: v.len(),
                    n,
                });
            }
            if v.iter().any(Signed::is_negative) {
                return Err(ToricError::RayNegative { label });
            }
            if !lattice.contains(&v) {
                return Err(ToricError::RayNotInLattice { label });
            }
            if !lattice.is_primitive(&v) {
                return Err(ToricError::RayNotPrimitive { label });
            }
            out_rays.push(Ray { label, vector: v });
        }
        let mut out_cones = Vec::with_capacity(cones.len());
        let mut data = Vec::with_capacity(cones.len());
        for (ci, c) in cones.into_iter().enumerate() {
            if c.len() != n {
                return Err(ToricError::ConeSize {
                    cone: ci,
                    len: c.len(),
                    n,
                });
            }
            if let Some(&ray) = c.iter().find(|&&r| r >= out_rays.len()) {
                return Err(ToricError::ConeRayIndex { cone: ci, ray });
            }
            let m = RatMatrix::from_rows(c.iter().map(|&r| out_rays[r].vector.clone()).collect())?;
            let det = m.det();
            let basic = det.abs() == exact::rat(1, group.order() as i64);
            let dual = if basic {
                let inv = m.invert()?;
                Some(
                    (0..n)
                        .map(|j| to_integral(&inv.column(j)).expect("basic cone has integral dual"))
                        .collect(),
                )
            } else {
                None
            };
            out_cones.push(Cone { rays: c });
            data.push(ConeData { det, dual });
        }
        Ok(Fan {
            group,
            lattice,
            rays: out_rays,
            cones: out_cones,
            data,
        })
    }

    pub fn group(&self) -> &GroupData {
        &self.group
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn dim(&self) -> usize {
        self.group.dim()
    }

    pub fn rays(&self) -> &[Ray] {
        &self.rays
    }

    pub fn ray(&self, i: usize) -> &Ray {
        &self.rays[i]
    }

    pub fn cones(&self) -> &[Cone] {
        &self.cones
    }

    pub fn cone(&self, i: usize) -> Result<&Cone, ToricError> {
        self.cones.get(i).ok_or(ToricError::NoSuchCone(i))
    }

    /// Index of the ray named `E<label>` (or `e<label>`).
    pub fn ray_by_name(&self, name: &str) -> Option<usize> {
        let t = name.trim();
        let digits = t
            .strip_prefix('E')
            .or_else(|| t.strip_prefix('e'))
            .unwrap_or(t);
        let label: usize = digits.parse().ok()?;
        self.rays.iter().position(|r| r.label == label)
    }

    pub fn cone_det(&self, i: usize) -> &Rational {
        &self.data[i].det
    }

    pub fn is_basic(&self, i: usize) -> bool {
        self.data[i].dual.is_some()
    }

    /// Cones containing ray `r`.
    pub fn cones_with_ray(&self, r: usize) -> impl Iterator<Item = usize> + '_ {
        self.cones
            .iter()
            .enumerate()
            .filter(move |(_, c)| c.rays.contains(&r))
            .map(|(i, _)| i)
    }

    /// The basis of `M` dual to the rays of cone `i`, in cone order:
    /// `e_a(ě_b) = δ_ab`.
    pub fn dual_basis(&self, i: usize) -> Result<&[IntVector], ToricError> {
        let data = self.data.get(i).ok_or(ToricError::NoSuchCone(i))?;
        data.dual.as_deref().ok_or_else(|| ToricError::NotBasic {
            cone: i,
            det: data.det.abs().to_string(),
            order: self.group.order(),
        })
    }

    /// All rays have discrepancy zero and every junior point is a ray.
    pub fn is_crepant(&self) -> bool {
        let rays: BTreeSet<&RatVector> = self.rays.iter().map(|r| &r.vector).collect();
        let junior = self.lattice.junior_simplex();
        let junior: BTreeSet<&RatVector> = junior.iter().collect();
        rays == junior
    }

    pub fn validate(&self) -> FanReport {
        let cones = self
            .data
            .iter()
            .enumerate()
            .map(|(i, d)| ConeCheck {
                index: i,
                det: d.det.clone(),
                basic: d.dual.is_some(),
            })
            .collect();

        let mut overlaps = Vec::new();
        for a in 0..self.cones.len() {
            for b in a + 1..self.cones.len() {
                if !self.meet_in_common_face(a, b) {
                    overlaps.push((a, b));
                }
            }
        }

        let used: BTreeSet<usize> = self.cones.iter().flat_map(|c| c.rays.iter().copied()).collect();
        let unused_rays = (0..self.rays.len()).filter(|r| !used.contains(r)).collect();

        let mut warnings = Vec::new();
        let all_junior = self
            .rays
            .iter()
            .all(|r| discrepancy(&r.vector).is_zero());
        let coverage = if all_junior {
            // A cone over a simplex in the plane of coordinate sum one has
            // |det| equal to that simplex's share of the junior simplex.
            let covered: Rational = self.data.iter().map(|d| d.det.abs()).sum();
            if covered.is_one() {
                Coverage::Complete
            } else {
                Coverage::Incomplete { covered }
            }
        } else {
            warnings.push("support of the fan not verified (some ray is not junior); trusting it covers L_+".to_string());
            Coverage::Unchecked
        };

        FanReport {
            cones,
            overlaps,
            unused_rays,
            coverage,
            crepant: self.is_crepant(),
            warnings,
        }
    }

    /// Whether the intersection of cones `a` and `b` is the face spanned by
    /// their common rays. Decided by an exact feasibility problem: a point
    /// of both cones with positive weight on some non-shared ray.
    fn meet_in_common_face(&self, a: usize, b: usize) -> bool {
        let ra = &self.cones[a].rays;
        let rb = &self.cones[b].rays;
        let sa: BTreeSet<usize> = ra.iter().copied().collect();
        let sb: BTreeSet<usize> = rb.iter().copied().collect();
        if sa == sb {
            return false;
        }
        let n = self.dim();
        let nvars = ra.len() + rb.len();
        let mut rows: Vec<RatVector> = vec![vec![Rational::zero(); nvars]; n + 1];
        for (k, &r) in ra.iter().enumerate() {
            for (i, row) in rows.iter_mut().take(n).enumerate() {
                row[k] = self.rays[r].vector[i].clone();
            }
            if !sb.contains(&r) {
                rows[n][k] = Rational::one();
            }
        }
        for (k, &r) in rb.iter().enumerate() {
            let col = ra.len() + k;
            for (i, row) in rows.iter_mut().take(n).enumerate() {
                row[col] = -self.rays[r].vector[i].clone();
            }
            if !sa.contains(&r) {
                rows[n][col] = Rational::one();
            }
        }
        let mut rhs = vec![Rational::zero(); n + 1];
        rhs[n] = Rational::one();
        !nonnegative_feasible(&rows, &rhs)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeCheck {
    pub index: usize,
    pub det: Rational,
    pub basic: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Coverage {
    Complete,
    Incomplete { covered: Rational },
    Unchecked,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FanReport {
    pub cones: Vec<ConeCheck>,
    /// Pairs of cones whose intersection is not a common face.
    pub overlaps: Vec<(usize, usize)>,
    pub unused_rays: Vec<usize>,
    pub coverage: Coverage,
    pub crepant: bool,
    pub warnings: Vec<String>,
}

impl FanReport {
    pub fn passed(&self) -> bool {
        self.cones.iter().all(|c| c.basic)
            && self.overlaps.is_empty()
            && !matches!(self.coverage, Coverage::Incomplete { .. })
    }
}
