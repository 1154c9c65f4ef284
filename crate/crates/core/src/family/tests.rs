use std::collections::BTreeSet;

use num_traits::{Signed, Zero};
use proptest::prelude::*;

use super::*;
use crate::catalog::{self, running_example};
use crate::exact::{frac, int_vector, rat, Integer};
use crate::gdivisor::principal_divisor;
use crate::toric::pairing;

fn eighths(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&k| rat(k, 8)).collect()
}

// Columns E4..E7 of the canonical family, characters χ0..χ7.
const CANONICAL: [[i64; 8]; 4] = [
    [0, 1, 2, 3, 4, 5, 6, 7],
    [0, 2, 4, 6, 0, 2, 4, 6],
    [0, 4, 0, 4, 0, 4, 0, 4],
    [0, 5, 2, 7, 4, 1, 6, 3],
];

#[test]
fn canonical_family_of_running_example() {
    let fan = running_example();
    let set = canonical_family(&fan);
    for r in 0..3 {
        assert!(set.column(r).iter().all(Zero::is_zero));
    }
    for (k, col) in CANONICAL.iter().enumerate() {
        assert_eq!(set.column(3 + k), eighths(col), "E{}", 4 + k);
    }
    assert_eq!(set.by_index(3).format(&fan), "3/8 E4 + 3/4 E5 + 1/2 E6 + 7/8 E7");
    assert!(check_reductor(&fan, &set).passed());
    assert!(set.is_normalized());
}

#[test]
fn maximal_shift_family_of_running_example() {
    let fan = running_example();
    let set = maximal_shift_family(&fan);
    let mut expected = CANONICAL;
    expected[1][4] = 8;
    for (k, col) in expected.iter().enumerate() {
        assert_eq!(set.column(3 + k), eighths(col), "E{}", 4 + k);
    }
    assert_eq!(set.by_index(4).format(&fan), "1/2 E4 + E5 + 1/2 E7");
    assert!(check_reductor(&fan, &set).passed());
    let report = bounds_check(&fan, &set);
    assert!(report.passed() && report.upper_attained && !report.lower_attained);
}

/// Minimum of `e(m)` over `0 ≤ m_j ≤ |G|` with `weight(m) = χ`.
fn brute_minima(fan: &Fan, ray: usize) -> Vec<Rational> {
    let g = fan.group();
    let n = fan.dim();
    let bound = g.order() as i64;
    let mut best: Vec<Option<Rational>> = vec![None; g.order() as usize];
    let mut m = vec![0i64; n];
    loop {
        let mi = int_vector(&m);
        let ci = g.index_of(&g.weight(&mi));
        let v = pairing(&fan.ray(ray).vector, &mi);
        if best[ci].as_ref().is_none_or(|b| v < *b) {
            best[ci] = Some(v);
        }
        let mut j = 0;
        loop {
            if j == n {
                return best.into_iter().map(Option::unwrap).collect();
            }
            m[j] += 1;
            if m[j] <= bound {
                break;
            }
            m[j] = 0;
            j += 1;
        }
    }
}

#[test]
fn dijkstra_matches_brute_force() {
    for (name, fan) in catalog::all() {
        for r in 0..fan.rays().len() {
            assert_eq!(ray_minima(&fan, r), brute_minima(&fan, r), "{name} ray {r}");
        }
    }
    let fan = running_example();
    assert_eq!(ray_minima(&fan, 4), eighths(&[0, 2, 4, 6, 8, 2, 4, 6]));
}

fn sorted(rows: Vec<Vec<Rational>>) -> Vec<Vec<Rational>> {
    let mut rows = rows;
    rows.sort();
    rows
}

fn table_e4() -> Vec<Vec<Rational>> {
    (0..8)
        .map(|k| eighths(&(0..8).map(|i| if i == 0 || i < 8 - k { i } else { i - 8 }).collect::<Vec<_>>()))
        .collect()
}

fn table_e5() -> Vec<Vec<Rational>> {
    [
        [0, 2, 4, 6, 8, 2, 4, 6],
        [0, 2, 4, 6, 0, 2, 4, 6],
        [0, 2, 4, -2, 0, 2, 4, 6],
        [0, 2, 4, 6, 0, 2, 4, -2],
        [0, 2, 4, -2, 0, 2, 4, -2],
        [0, 2, -4, -2, 0, 2, 4, -2],
        [0, 2, 4, -2, 0, 2, -4, -2],
        [0, 2, -4, -2, 0, 2, -4, -2],
        [0, -6, -4, -2, 0, 2, -4, -2],
        [0, 2, -4, -2, 0, -6, -4, -2],
        [0, -6, -4, -2, 0, -6, -4, -2],
        [0, -6, -4, -2, -8, -6, -4, -2],
    ]
    .iter()
    .map(|r| eighths(r))
    .collect()
}

fn table_e6() -> Vec<Vec<Rational>> {
    vec![eighths(&[0, 4, 0, 4, 0, 4, 0, 4]), eighths(&[0, -4, 0, -4, 0, -4, 0, -4])]
}

fn table_e7() -> Vec<Vec<Rational>> {
    [
        [0, 5, 2, 7, 4, 1, 6, 3],
        [0, 5, 2, -1, 4, 1, 6, 3],
        [0, 5, 2, -1, 4, 1, -2, 3],
        [0, -3, 2, -1, 4, 1, -2, 3],
        [0, -3, 2, -1, -4, 1, -2, 3],
        [0, -3, 2, -1, -4, 1, -2, -5],
        [0, -3, -6, -1, -4, -7, -2, -5],
        // reflection of the second row
        [0, -3, -6, -1, -4, 1, -2, -5],
    ]
    .iter()
    .map(|r| eighths(r))
    .collect()
}

#[test]
fn per_ray_tables_of_running_example() {
    let fan = running_example();
    for r in 0..3 {
        assert_eq!(enumerate_per_ray(&fan, r).rows, vec![vec![Rational::zero(); 8]]);
    }
    let expected = [table_e4(), table_e5(), table_e6(), table_e7()];
    for (k, rows) in expected.into_iter().enumerate() {
        let table = enumerate_per_ray(&fan, 3 + k);
        assert_eq!(table.rows, sorted(table.rows.clone()), "rows come out sorted");
        assert_eq!(table.rows, sorted(rows), "E{}", 4 + k);
    }
    let sets = enumerate_normalized(&fan);
    assert_eq!(sets.total(), (8u32 * 12 * 2 * 8).into());
}

/// Per-ray columns found by scanning a box of integer offsets and testing
/// every inequality `q_χ + e(x_j) ≥ q_{χρ(x_j)}` directly, in units of
/// `1/|G|`.
fn brute_columns(fan: &Fan, ray: usize, radius: i64) -> BTreeSet<Vec<Rational>> {
    let g = fan.group();
    let order = g.order() as i64;
    let chars = g.characters();
    let reps = g.representative_monomials();
    let scale = |q: &Rational| -> i64 {
        let s = q * Rational::from_integer(order.into());
        assert!(s.is_integer());
        i64::try_from(s.to_integer()).unwrap()
    };
    let e: Vec<i64> = fan.ray(ray).vector.iter().map(scale).collect();
    let base: Vec<i64> = reps.iter().map(|m| scale(&frac(&pairing(&fan.ray(ray).vector, m)))).collect();
    let steps: Vec<Vec<usize>> = chars
        .iter()
        .map(|chi| (0..fan.dim()).map(|j| g.index_of(&g.mul(chi, &g.variable_weight(j)))).collect())
        .collect();
    let free = chars.len() - 1;
    let width = (2 * radius + 1) as usize;
    let mut out = BTreeSet::new();
    let mut col = vec![0i64; chars.len()];
    for code in 0..width.pow(free as u32) {
        let mut c = code;
        for ci in 1..chars.len() {
            col[ci] = base[ci] + ((c % width) as i64 - radius) * order;
            c /= width;
        }
        let ok = (0..chars.len()).all(|ci| (0..fan.dim()).all(|j| col[ci] + e[j] >= col[steps[ci][j]]));
        if ok {
            out.insert(col.iter().map(|&k| rat(k, order)).collect());
        }
    }
    out
}

#[test]
fn per_ray_tables_match_box_scan() {
    for (name, fan) in catalog::all() {
        let radius = if fan.group().order() > 4 { 2 } else { 4 };
        for r in 0..fan.rays().len() {
            let rows: BTreeSet<_> = enumerate_per_ray(&fan, r).rows.into_iter().collect();
            assert_eq!(rows, brute_columns(&fan, r, radius), "{name} ray {r}");
        }
    }
}

#[test]
fn per_ray_tables_closed_under_symmetries() {
    for (name, fan) in catalog::all() {
        let g = fan.group();
        let chars = g.characters();
        for r in 0..fan.rays().len() {
            let rows: BTreeSet<Vec<Rational>> = enumerate_per_ray(&fan, r).rows.into_iter().collect();
            for row in &rows {
                let reflected: Vec<Rational> = chars.iter().map(|c| -row[g.index_of(&g.inv(c))].clone()).collect();
                assert!(rows.contains(&reflected), "{name} ray {r}");
                for lambda in &chars {
                    let inv = g.inv(lambda);
                    let base = &row[g.index_of(&inv)];
                    let shifted: Vec<Rational> = chars
                        .iter()
                        .map(|t| &row[g.index_of(&g.mul(t, &inv))] - base)
                        .collect();
                    assert!(rows.contains(&shifted), "{name} ray {r} shift {lambda}");
                }
            }
        }
    }
}

#[test]
fn whole_sets_of_half_one_one() {
    // Every normalized set with coefficients in a box, checked as a whole.
    let fan = catalog::half_one_one();
    let g = fan.group();
    let chi = g.character(&[1]).unwrap();
    let base: Vec<Rational> = (0..3).map(|r| frac_val(&fan, r, &chi)).collect();
    let mut count = 0;
    for a in -3..=3 {
        for b in -3..=3 {
            for c in -3..=3 {
                let offsets = [a, b, c];
                let d1 = GWeilDivisor::new(
                    chi.clone(),
                    (0..3).map(|r| (r, &base[r] + Rational::from_integer(offsets[r].into()))),
                );
                let set = ReductorSet::new(g, vec![GWeilDivisor::zero(g.trivial_character()), d1]).unwrap();
                if check_reductor(&fan, &set).passed() {
                    count += 1;
                }
            }
        }
    }
    let listed: Vec<_> = enumerate_normalized(&fan).collect();
    assert_eq!(listed.len(), count);
    assert_eq!(count, 2);
}

use crate::gdivisor::frac_val;

#[test]
fn canonical_pieces() {
    let fan = running_example();
    let set = canonical_family(&fan);
    // cone 7 is <e6,e5,e7>
    let p = reductor_piece(&fan, &set, 6).unwrap();
    let expected: Vec<IntVector> = [
        [0, 0, 0],
        [1, 0, 0],
        [0, 1, 0],
        [1, 1, 0],
        [1, 0, -1],
        [0, 0, 1],
        [1, 1, -1],
        [0, 1, 1],
    ]
    .iter()
    .map(|v| int_vector(v))
    .collect();
    assert_eq!(p.exponents, expected);
    assert_eq!(p.monomials()[4], "x/z");

    // cone 6 is <e4,e6,e5>
    let p = reductor_piece(&fan, &set, 5).unwrap();
    let expected: Vec<IntVector> = [
        [0, 0, 0],
        [1, 0, 0],
        [0, 1, 0],
        [1, 1, 0],
        [-1, 0, 1],
        [0, 0, 1],
        [-1, 1, 1],
        [0, 1, 1],
    ]
    .iter()
    .map(|v| int_vector(v))
    .collect();
    assert_eq!(p.exponents, expected);
    assert!(p.violations(&fan).is_empty());
}

#[test]
fn pieces_glue_across_cones() {
    let fan = running_example();
    for set in [canonical_family(&fan), maximal_shift_family(&fan)] {
        let pieces: Vec<_> = (0..fan.cones().len())
            .map(|c| reductor_piece(&fan, &set, c).unwrap())
            .collect();
        for (ci, chi_coeffs) in set.divisors().iter().enumerate() {
            for p in &pieces {
                for &r in &fan.cones()[p.cone].rays {
                    assert_eq!(pairing(&fan.ray(r).vector, &p.exponents[ci]), chi_coeffs.coeff(r));
                }
            }
        }
    }
}

#[test]
fn quiver_labels() {
    let fan = running_example();
    let set = canonical_family(&fan);
    let q = quiver(&fan, &set, 5).unwrap();
    assert_eq!(q.arrows.len(), 24);
    assert!(q.is_regular());
    // (χ3, z) carries xyz; (χ0, x) carries 1.
    let a = q.arrows.iter().find(|a| a.source == 3 && a.variable == 2).unwrap();
    assert_eq!(a.target, 0);
    assert_eq!(a.exponent, int_vector(&[1, 1, 1]));
    assert_eq!(a.local, vec![rat(1, 1); 3]);
    let a = q.arrows.iter().find(|a| a.source == 0 && a.variable == 0).unwrap();
    assert_eq!(a.exponent, int_vector(&[0, 0, 0]));

    // At the torus-fixed point every label with a positive local exponent
    // vanishes.
    let origin = vec![Rational::zero(); 3];
    let values = q.evaluate(&origin);
    for (a, v) in q.arrows.iter().zip(&values) {
        assert_eq!(v.is_zero(), a.local.iter().any(Signed::is_positive));
    }

    let dot = q.to_dot(&fan);
    assert!(dot.starts_with("digraph cone_6 {"));
    assert!(dot.contains("\"χ3\" -> \"χ0\" [label=\"z: x*y*z (1,1,1)\"];"));
    let json = q.to_json(&fan);
    assert_eq!(json["arrows"].as_array().unwrap().len(), 24);
    assert_eq!(json["rays"], serde_json::json!(["E4", "E6", "E5"]));
}

#[test]
fn violated_triple_on_third_one_two() {
    let fan = catalog::third_one_two();
    let g = fan.group();
    let canonical = canonical_family(&fan);
    // Raise D_χ1 by E3: x·D_χ0 no longer dominates it.
    let mut bumped = canonical.by_index(1).clone();
    bumped.set_coeff(2, bumped.coeff(2) + rat(1, 1));
    let set = ReductorSet::new(
        g,
        vec![canonical.by_index(0).clone(), bumped, canonical.by_index(2).clone()],
    )
    .unwrap();
    let report = check_reductor(&fan, &set);
    assert!(report.congruence.is_empty());
    assert!(report
        .violations
        .iter()
        .any(|v| v.character.is_trivial() && v.variable == 0 && v.ray == 2));
    let piece = reductor_piece(&fan, &set, 1).unwrap();
    assert!(piece.violations(&fan).iter().any(|&(c, j, r)| c == 0 && j == 0 && r == 2));
    assert!(!quiver(&fan, &set, 1).unwrap().is_regular());
}

#[test]
fn symmetries_on_running_example() {
    let fan = running_example();
    let g = fan.group();
    let canonical = canonical_family(&fan);
    let maxshift = maximal_shift_family(&fan);
    assert_eq!(reflect(g, &reflect(g, &maxshift)), maxshift);
    for chi in g.characters() {
        let shifted = lambda_shift(g, &canonical, &chi);
        assert!(shifted.is_normalized());
        assert!(check_reductor(&fan, &shifted).passed(), "{chi}");
        let back = lambda_shift(g, &shifted, &g.inv(&chi));
        assert_eq!(back, canonical);
    }
    let r = reflect(g, &maxshift);
    assert!(check_reductor(&fan, &r).passed());
    let report = bounds_check(&fan, &r);
    assert!(report.passed() && report.lower_attained);
}

#[test]
fn normalize_and_equivalence() {
    let fan = running_example();
    let g = fan.group();
    let canonical = canonical_family(&fan);
    // Twist every divisor by (x^8), a χ0 principal divisor.
    let n = principal_divisor(&fan, &int_vector(&[8, 0, 0]));
    assert!(n.character().is_trivial());
    let twisted = ReductorSet::new(g, canonical.divisors().iter().map(|d| d.add(&n, g)).collect()).unwrap();
    assert!(!twisted.is_normalized());
    assert!(check_reductor(&fan, &twisted).passed());
    assert_eq!(normalize(g, &twisted), canonical);
    let eq = equivalence_witness(&fan, &canonical, &twisted).unwrap();
    assert_eq!(eq.difference, n);
    assert_eq!(eq.isomorphism, Some(int_vector(&[8, 0, 0])));
    assert!(equivalence_witness(&fan, &canonical, &maximal_shift_family(&fan)).is_none());
}

#[test]
fn bounds_detect_overshoot() {
    let fan = running_example();
    let g = fan.group();
    let maxshift = maximal_shift_family(&fan);
    let mut divisors = maxshift.divisors().to_vec();
    divisors[4].set_coeff(4, rat(2, 1));
    let set = ReductorSet::new(g, divisors).unwrap();
    let report = bounds_check(&fan, &set);
    assert_eq!(report.violations.len(), 1);
    let v = &report.violations[0];
    assert_eq!((v.bound, v.ray, v.value.clone(), v.limit.clone()), (Bound::Upper, 4, rat(2, 1), rat(1, 1)));
    // Reflected, the same entry breaks the lower bound of χ4.
    let report = bounds_check(&fan, &reflect(g, &set));
    assert!(report.violations.iter().all(|v| v.bound == Bound::Lower));
}

#[test]
fn trivial_group_has_one_empty_family() {
    let fan = catalog::trivial(3);
    let sets: Vec<_> = enumerate_normalized(&fan).collect();
    assert_eq!(sets.len(), 1);
    assert!(sets[0].divisors()[0].is_zero());
    assert!(maximal_shift_family(&fan).divisors()[0].is_zero());
}

#[test]
fn set_validation() {
    let fan = running_example();
    let g = fan.group();
    let d = canonical_family(&fan).divisors().to_vec();
    assert!(matches!(
        ReductorSet::new(g, d[..7].to_vec()),
        Err(FamilyError::DivisorCount { found: 7, expected: 8 })
    ));
    let mut dup = d.clone();
    dup[7] = dup[6].clone();
    assert!(matches!(ReductorSet::new(g, dup), Err(FamilyError::DuplicateCharacter(_))));
    let mut shuffled = d.clone();
    shuffled.reverse();
    assert_eq!(ReductorSet::new(g, shuffled).unwrap(), canonical_family(&fan));
}

fn running() -> &'static Fan {
    use std::sync::OnceLock;
    static FAN: OnceLock<Fan> = OnceLock::new();
    FAN.get_or_init(running_example)
}

fn running_sets() -> &'static [ReductorSet] {
    use std::sync::OnceLock;
    static SETS: OnceLock<Vec<ReductorSet>> = OnceLock::new();
    SETS.get_or_init(|| enumerate_normalized(running()).collect())
}

fn running_maxshift() -> &'static ReductorSet {
    use std::sync::OnceLock;
    static M: OnceLock<ReductorSet> = OnceLock::new();
    M.get_or_init(|| maximal_shift_family(running()))
}

proptest! {
    #[test]
    fn frac_val_ignores_representative(m in proptest::collection::vec(-30i64..30, 3), ray in 0usize..7) {
        let fan = running();
        let m: Vec<Integer> = int_vector(&m);
        let chi = fan.group().weight(&m);
        prop_assert_eq!(frac(&pairing(&fan.ray(ray).vector, &m)), frac_val(fan, ray, &chi));
    }

    #[test]
    fn principal_divisor_is_additive(
        a in proptest::collection::vec(-20i64..20, 3),
        b in proptest::collection::vec(-20i64..20, 3),
    ) {
        let fan = running();
        let g = fan.group();
        let sum: Vec<i64> = a.iter().zip(&b).map(|(x, y)| x + y).collect();
        let lhs = principal_divisor(fan, &int_vector(&sum));
        let rhs = principal_divisor(fan, &int_vector(&a)).add(&principal_divisor(fan, &int_vector(&b)), g);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn cartier_round_trip(c in 0i64..8, offsets in proptest::collection::vec(-5i64..5, 7)) {
        let fan = running();
        let g = fan.group();
        let chi = g.character(&[c]).unwrap();
        let d = GWeilDivisor::new(
            chi.clone(),
            offsets.iter().enumerate().map(|(r, &k)| (r, frac_val(fan, r, &chi) + Rational::from_integer(k.into()))),
        );
        let cartier = crate::gdivisor::weil_to_cartier(fan, &d).unwrap();
        prop_assert_eq!(crate::gdivisor::cartier_to_weil(fan, &cartier).unwrap(), d);
    }

    #[test]
    fn shift_preserves_reductor_sets(k in 0usize..1536, lambda in 0i64..8) {
        let fan = running();
        let g = fan.group();
        let set = &running_sets()[k];
        let shifted = lambda_shift(g, set, &g.character(&[lambda]).unwrap());
        prop_assert!(check_reductor(fan, &shifted).passed());
        prop_assert!(bounds_check_with(fan, &shifted, running_maxshift()).passed());
        prop_assert!(check_reductor(fan, &reflect(g, set)).passed());
    }
}
