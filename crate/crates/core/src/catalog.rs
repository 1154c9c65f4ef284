//! Small resolutions used throughout the tests, benches and documentation.

use crate::exact::{rat, RatVector};
use crate::group::GroupData;
use crate::toric::{unit_vector, Fan};

fn point(d: i64, xs: &[i64]) -> RatVector {
    xs.iter().map(|&x| rat(x, d)).collect()
}

fn cones(labels: &[&[usize]]) -> Vec<Vec<usize>> {
    labels
        .iter()
        .map(|c| c.iter().map(|&l| l - 1).collect())
        .collect()
}

/// `1/8(1,2,5)` with the crepant fan on `e1..e7`, where
/// `e4 = 1/8(1,2,5)`, `e5 = 1/8(2,4,2)`, `e6 = 1/8(4,0,4)`, `e7 = 1/8(5,2,1)`.
pub fn running_example() -> Fan {
    let g = GroupData::cyclic(8, &[1, 2, 5]).expect("valid group");
    let rays = vec![
        point(1, &[1, 0, 0]),
        point(1, &[0, 1, 0]),
        point(1, &[0, 0, 1]),
        point(8, &[1, 2, 5]),
        point(8, &[2, 4, 2]),
        point(8, &[4, 0, 4]),
        point(8, &[5, 2, 1]),
    ];
    let cones = cones(&[
        &[1, 2, 7],
        &[7, 2, 5],
        &[4, 2, 5],
        &[4, 3, 2],
        &[3, 4, 6],
        &[4, 6, 5],
        &[6, 5, 7],
        &[1, 6, 7],
    ]);
    Fan::new(g, rays, cones).expect("valid fan")
}

/// `1/2(1,1)`: the minimal resolution with one exceptional ray `1/2(1,1)`.
pub fn half_one_one() -> Fan {
    let g = GroupData::cyclic(2, &[1, 1]).expect("valid group");
    let rays = vec![point(1, &[1, 0]), point(1, &[0, 1]), point(2, &[1, 1])];
    Fan::new(g, rays, cones(&[&[1, 3], &[3, 2]])).expect("valid fan")
}

/// `1/3(1,2)` with its crepant fan; `e3 = 1/3(1,2)`, `e4 = 1/3(2,1)`.
pub fn third_one_two() -> Fan {
    let g = GroupData::cyclic(3, &[1, 2]).expect("valid group");
    let rays = vec![
        point(1, &[1, 0]),
        point(1, &[0, 1]),
        point(3, &[1, 2]),
        point(3, &[2, 1]),
    ];
    Fan::new(g, rays, cones(&[&[1, 4], &[4, 3], &[3, 2]])).expect("valid fan")
}

/// `1/3(1,1,1)` with the star subdivision at `1/3(1,1,1)`.
pub fn third_one_one_one() -> Fan {
    let g = GroupData::cyclic(3, &[1, 1, 1]).expect("valid group");
    let rays = vec![
        point(1, &[1, 0, 0]),
        point(1, &[0, 1, 0]),
        point(1, &[0, 0, 1]),
        point(3, &[1, 1, 1]),
    ];
    Fan::new(g, rays, cones(&[&[1, 2, 4], &[2, 3, 4], &[1, 3, 4]])).expect("valid fan")
}

/// `1/4(1,2)`: rays `1/2(1,0)`, `1/4(1,2)`, `(0,1)`; not crepant.
pub fn quarter_one_two() -> Fan {
    let g = GroupData::cyclic(4, &[1, 2]).expect("valid group");
    let rays = vec![point(2, &[1, 0]), point(4, &[1, 2]), point(1, &[0, 1])];
    Fan::new(g, rays, cones(&[&[1, 2], &[2, 3]])).expect("valid fan")
}

/// `C^n` itself: one cone spanned by the unit vectors.
pub fn trivial(n: usize) -> Fan {
    let g = GroupData::trivial(n).expect("valid group");
    let rays = (0..n).map(|i| unit_vector(n, i)).collect();
    Fan::new(g, rays, vec![(0..n).collect()]).expect("valid fan")
}

/// All catalogued fans, by name.
pub fn all() -> Vec<(&'static str, Fan)> {
    vec![
        ("1/8(1,2,5)", running_example()),
        ("1/2(1,1)", half_one_one()),
        ("1/3(1,2)", third_one_two()),
        ("1/3(1,1,1)", third_one_one_one()),
        ("1/4(1,2)", quarter_one_two()),
        ("trivial(3)", trivial(3)),
    ]
}
