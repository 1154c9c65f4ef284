//! Exact rational and integer linear algebra.
//!
//! Everything here works over arbitrary-precision integers. Rationals are
//! `num_rational::BigRational`, which is always kept in lowest terms with a
//! positive denominator, so structural equality is numeric equality.

#![allow(clippy::needless_range_loop)]

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::ExactError;

pub type Integer = BigInt;
pub type Rational = num_rational::BigRational;

/// Integer vector, e.g. the exponent of a Laurent monomial.
pub type IntVector = Vec<Integer>;
/// Rational vector, e.g. a point of the overlattice `L`.
pub type RatVector = Vec<Rational>;

pub fn int(v: i64) -> Integer {
    Integer::from(v)
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(Integer::from(n), Integer::from(d))
}

pub fn rat_from_int(v: &Integer) -> Rational {
    Rational::from_integer(v.clone())
}

pub fn int_vector(v: &[i64]) -> IntVector {
    v.iter().map(|&x| int(x)).collect()
}

/// `q - floor(q)`, always in `[0, 1)`.
pub fn frac(q: &Rational) -> Rational {
    q - q.floor()
}

pub fn is_integral(q: &Rational) -> bool {
    q.is_integer()
}

/// Parses `"p/q"`, `"p"` or `"-p/q"`.
pub fn parse_rational(s: &str) -> Result<Rational, ExactError> {
    let t = s.trim();
    let bad = || ExactError::ParseRational(s.to_string());
    let (n, d) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let n: Integer = n.parse().map_err(|_| bad())?;
    let d: Integer = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(n, d))
}

pub fn dot(a: &[Rational], m: &[Integer]) -> Rational {
    debug_assert_eq!(a.len(), m.len());
    a.iter()
        .zip(m)
        .fold(Rational::zero(), |acc, (x, y)| acc + x * rat_from_int(y))
}

pub fn dot_rat(a: &[Rational], b: &[Rational]) -> Rational {
    debug_assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

/// Converts a rational vector to an integer one if every entry is integral.
pub fn to_integral(v: &[Rational]) -> Option<IntVector> {
    v.iter()
        .map(|x| x.is_integer().then(|| x.to_integer()))
        .collect()
}

/// Dense square matrix with rational entries, stored by rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatMatrix {
    rows: Vec<RatVector>,
}

impl RatMatrix {
    pub fn from_rows(rows: Vec<RatVector>) -> Result<Self, ExactError> {
        let n = rows.len();
        if let Some(bad) = rows.iter().find(|r| r.len() != n) {
            return Err(ExactError::NotSquare {
                rows: n,
                cols: bad.len(),
            });
        }
        Ok(RatMatrix { rows })
    }

    pub fn identity(n: usize) -> Self {
        let rows = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { Rational::one() } else { Rational::zero() })
                    .collect()
            })
            .collect();
        RatMatrix { rows }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[RatVector] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.rows[i]
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.rows[i][j]
    }

    pub fn column(&self, j: usize) -> RatVector {
        self.rows.iter().map(|r| r[j].clone()).collect()
    }

    pub fn scale(&self, s: &Rational) -> Self {
        RatMatrix {
            rows: self
                .rows
                .iter()
                .map(|r| r.iter().map(|x| x * s).collect())
                .collect(),
        }
    }

    pub fn mul(&self, other: &RatMatrix) -> RatMatrix {
        let n = self.dim();
        assert_eq!(n, other.dim(), "dimension mismatch");
        let rows = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        (0..n).fold(Rational::zero(), |acc, k| {
                            acc + &self.rows[i][k] * &other.rows[k][j]
                        })
                    })
                    .collect()
            })
            .collect();
        RatMatrix { rows }
    }

    /// `v^T M`, i.e. the row vector `v` times this matrix.
    pub fn left_mul(&self, v: &[Rational]) -> RatVector {
        let n = self.dim();
        (0..n)
            .map(|j| {
                (0..n).fold(Rational::zero(), |acc, i| acc + &v[i] * &self.rows[i][j])
            })
            .collect()
    }

    /// Exact determinant by fraction-based Gaussian elimination.
    pub fn det(&self) -> Rational {
        let n = self.dim();
        let mut a = self.rows.clone();
        let mut det = Rational::one();
        for col in 0..n {
            let Some(pivot) = (col..n).find(|&r| !a[r][col].is_zero()) else {
                return Rational::zero();
            };
            if pivot != col {
                a.swap(pivot, col);
                det = -det;
            }
            let p = a[col][col].clone();
            det *= &p;
            for r in col + 1..n {
                if a[r][col].is_zero() {
                    continue;
                }
                let factor = &a[r][col] / &p;
                for c in col..n {
                    let sub = &factor * &a[col][c];
                    a[r][c] -= sub;
                }
            }
        }
        det
    }

    /// Exact inverse by Gauss-Jordan elimination.
    pub fn invert(&self) -> Result<RatMatrix, ExactError> {
        let n = self.dim();
        let mut a = self.rows.clone();
        let mut inv = RatMatrix::identity(n).rows;
        for col in 0..n {
            let pivot = (col..n)
                .find(|&r| !a[r][col].is_zero())
                .ok_or(ExactError::SingularMatrix)?;
            a.swap(pivot, col);
            inv.swap(pivot, col);
            let p = a[col][col].clone();
            for c in 0..n {
                a[col][c] /= &p;
                inv[col][c] /= &p;
            }
            for r in 0..n {
                if r == col || a[r][col].is_zero() {
                    continue;
                }
                let factor = a[r][col].clone();
                for c in 0..n {
                    let s = &factor * &a[col][c];
                    a[r][c] -= s;
                    let s = &factor * &inv[col][c];
                    inv[r][c] -= s;
                }
            }
        }
        Ok(RatMatrix { rows: inv })
    }
}

impl fmt::Display for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

/// Hermite normal form (row style) of an integer generator matrix.
///
/// Returns the nonzero rows of the echelon form; they form a basis of the
/// row lattice. Entries above each pivot are reduced into `[0, pivot)`.
pub fn hermite_rows(generators: &[IntVector]) -> Vec<IntVector> {
    let mut rows: Vec<IntVector> = generators.to_vec();
    let Some(ncols) = rows.first().map(Vec::len) else {
        return Vec::new();
    };
    let mut pivot_row = 0;
    for col in 0..ncols {
        // Euclid on the column below pivot_row until one nonzero entry remains.
        while let Some(min) = (pivot_row..rows.len())
            .filter(|&r| !rows[r][col].is_zero())
            .min_by_key(|&r| rows[r][col].abs())
        {
            rows.swap(pivot_row, min);
            let mut done = true;
            for r in pivot_row + 1..rows.len() {
                if rows[r][col].is_zero() {
                    continue;
                }
                let q = num_integer::Integer::div_floor(&rows[r][col], &rows[pivot_row][col]);
                for c in 0..ncols {
                    let s = &q * &rows[pivot_row][c];
                    rows[r][c] -= s;
                }
                if !rows[r][col].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if pivot_row >= rows.len() || rows[pivot_row][col].is_zero() {
            continue;
        }
        if rows[pivot_row][col].is_negative() {
            for c in 0..ncols {
                rows[pivot_row][c] = -rows[pivot_row][c].clone();
            }
        }
        for r in 0..pivot_row {
            let q = num_integer::Integer::div_floor(&rows[r][col], &rows[pivot_row][col]);
            if q.is_zero() {
                continue;
            }
            for c in 0..ncols {
                let s = &q * &rows[pivot_row][c];
                rows[r][c] -= s;
            }
        }
        pivot_row += 1;
        if pivot_row == rows.len() {
            break;
        }
    }
    rows.truncate(pivot_row);
    rows
}

/// Decides whether `A x = b, x >= 0` has a solution, exactly.
///
/// Phase one of the simplex method with Bland's rule on a dense tableau.
pub fn nonnegative_feasible(a: &[RatVector], b: &[Rational]) -> bool {
    let m = a.len();
    if m == 0 {
        return true;
    }
    let nvars = a[0].len();
    // Tableau columns: original vars, artificials, rhs.
    let width = nvars + m + 1;
    let mut t: Vec<RatVector> = Vec::with_capacity(m + 1);
    for (i, row) in a.iter().enumerate() {
        let flip = b[i].is_negative();
        let mut r = vec![Rational::zero(); width];
        for j in 0..nvars {
            r[j] = if flip { -row[j].clone() } else { row[j].clone() };
        }
        r[nvars + i] = Rational::one();
        r[width - 1] = if flip { -b[i].clone() } else { b[i].clone() };
        t.push(r);
    }
    // Objective: minimise the sum of artificials, written as reduced costs.
    let mut obj = vec![Rational::zero(); width];
    for row in &t {
        for j in 0..nvars {
            obj[j] -= &row[j];
        }
        obj[width - 1] -= &row[width - 1];
    }
    let mut basis: Vec<usize> = (nvars..nvars + m).collect();

    while let Some(enter) = (0..nvars + m).find(|&j| obj[j].is_negative()) {
        let mut leave: Option<(usize, Rational)> = None;
        for (i, row) in t.iter().enumerate() {
            if row[enter].is_positive() {
                let ratio = &row[width - 1] / &row[enter];
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        let Some((pr, _)) = leave else {
            // Unbounded cannot happen in phase one; objective is bounded below by 0.
            break;
        };
        let p = t[pr][enter].clone();
        for c in 0..width {
            t[pr][c] /= &p;
        }
        let pivot_row = t[pr].clone();
        for (i, row) in t.iter_mut().enumerate() {
            if i == pr || row[enter].is_zero() {
                continue;
            }
            let f = row[enter].clone();
            for c in 0..width {
                row[c] -= &f * &pivot_row[c];
            }
        }
        if !obj[enter].is_zero() {
            let f = obj[enter].clone();
            for c in 0..width {
                obj[c] -= &f * &pivot_row[c];
            }
        }
        basis[pr] = enter;
    }
    obj[width - 1].is_zero()
}
