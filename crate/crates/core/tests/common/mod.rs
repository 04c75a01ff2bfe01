//! Shared fixtures and independent oracles for the integration tests.
#![allow(dead_code)]

use std::path::PathBuf;

use k0cert::bratteli::{self, FiniteSystem, SystemDocument};
use k0cert::dimgroup::InductiveSystem;
use k0cert::kaction::K0Action;
use k0cert::linalg::lp::LinearProgram;
use k0cert::linalg::IntMatrix;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::Rng;

pub const GOLDENS: [&str; 7] = [
    "car.json",
    "compactified_shift.json",
    "diamond.json",
    "fibonacci.json",
    "minimal.json",
    "three_cycle.json",
    "two_swaps.json",
];

pub fn data_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(name)
}

pub fn golden_bytes(name: &str) -> Vec<u8> {
    std::fs::read(data_path(name)).unwrap()
}

pub fn golden(name: &str) -> SystemDocument {
    bratteli::parse(&golden_bytes(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

pub fn ints(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

pub fn q(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

pub fn random_matrix(rng: &mut StdRng, rows: usize, cols: usize, lo: i64, hi: i64) -> IntMatrix {
    let data: Vec<Vec<BigInt>> = (0..rows)
        .map(|_| (0..cols).map(|_| BigInt::from(rng.random_range(lo..=hi))).collect())
        .collect();
    IntMatrix::from_rows(data, cols).unwrap()
}

pub fn random_finite_system(rng: &mut StdRng, max_points: usize, max_generators: usize) -> FiniteSystem {
    let n = rng.random_range(1..=max_points);
    let r = rng.random_range(1..=max_generators);
    let perms = (0..r)
        .map(|_| {
            let mut p: Vec<usize> = (1..=n).collect();
            p.shuffle(rng);
            p
        })
        .collect();
    FiniteSystem::new(n, perms).unwrap()
}

/// One-stage system `Zᵖ` with unit all-ones and `r` nonnegative action
/// matrices (inverse slot filled with the same matrix; only the lattice
/// structure matters to the callers).
pub fn random_one_stage(rng: &mut StdRng, max_rank: usize, max_entry: i64) -> (InductiveSystem, K0Action) {
    let p = rng.random_range(1..=max_rank);
    let r = rng.random_range(1..=2);
    let system = InductiveSystem::new(vec![p], vec![], vec![BigInt::one(); p], false).unwrap();
    let ms: Vec<IntMatrix> = (0..r).map(|_| random_matrix(rng, p, p, 0, max_entry)).collect();
    let action = K0Action::one_stage(&system, ms.clone(), ms).unwrap();
    (system, action)
}

// ---- normal-form predicates, written independently of the library ----

pub fn is_echelon_reduced(h: &IntMatrix) -> bool {
    let mut last_pivot: Option<usize> = None;
    let mut seen_zero_row = false;
    for i in 0..h.rows() {
        let row = h.row(i);
        match row.iter().position(|x| !x.is_zero()) {
            None => seen_zero_row = true,
            Some(c) => {
                if seen_zero_row || last_pivot.is_some_and(|p| c <= p) || !row[c].is_positive() {
                    return false;
                }
                for k in 0..i {
                    let x = &h[(k, c)];
                    if x.is_negative() || x >= &row[c] {
                        return false;
                    }
                }
                last_pivot = Some(c);
            }
        }
    }
    true
}

pub fn is_smith_diagonal(s: &IntMatrix) -> bool {
    for i in 0..s.rows() {
        for j in 0..s.cols() {
            if i != j && !s[(i, j)].is_zero() {
                return false;
            }
        }
    }
    let d: Vec<&BigInt> = (0..s.rows().min(s.cols())).map(|i| &s[(i, i)]).collect();
    d.iter().all(|x| !x.is_negative())
        && d.windows(2).all(|w| {
            if w[0].is_zero() {
                w[1].is_zero()
            } else {
                (w[1] % w[0]).is_zero()
            }
        })
}

// ---- brute-force LP oracle ----

/// Gauss–Jordan on an augmented system; free variables set to zero.
fn gauss(mut rows: Vec<Vec<BigRational>>, n: usize) -> Option<Vec<BigRational>> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for x in rows[r].iter_mut() {
            *x = &*x * &inv;
        }
        let pivot = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, p) in row.iter_mut().zip(&pivot) {
                    *x -= p * &f;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    if rows[r..].iter().any(|row| !row[n].is_zero()) {
        return None;
    }
    let mut x = vec![BigRational::zero(); n];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = rows[i][n].clone();
    }
    Some(x)
}

/// Feasibility by enumerating minimal faces: the program is feasible iff
/// for some subset `I` of the inequalities, the affine set where `I` (and
/// every equality) is tight contains a point satisfying all rows.
pub fn brute_force_feasible(p: &LinearProgram) -> bool {
    let m = p.inequalities.len();
    assert!(m <= 12, "oracle is exponential in the inequality count");
    for mask in 0u32..(1 << m) {
        let mut rows: Vec<Vec<BigRational>> = p
            .equalities
            .iter()
            .map(|c| {
                let mut r = c.coeffs.clone();
                r.push(c.rhs.clone());
                r
            })
            .collect();
        for (i, c) in p.inequalities.iter().enumerate() {
            if mask & (1 << i) != 0 {
                let mut r = c.coeffs.clone();
                r.push(c.rhs.clone());
                rows.push(r);
            }
        }
        if let Some(x) = gauss(rows, p.variables) {
            if p.is_satisfied_by(&x) {
                return true;
            }
        }
    }
    false
}

// ---- lattice enumeration oracle ----

/// All nonzero vectors of `{0..=h}^p`.
pub fn nonneg_box(p: usize, h: i64) -> Vec<Vec<BigInt>> {
    let mut out = vec![vec![]];
    for _ in 0..p {
        out = out
            .into_iter()
            .flat_map(|v: Vec<i64>| {
                (0..=h).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out.into_iter()
        .filter(|v| v.iter().any(|&x| x != 0))
        .map(|v| ints(&v))
        .collect()
}

/// Membership of `v` in the column lattice of a basis in Hermite form
/// (columns), by back-substitution over the pivots.
pub fn in_column_lattice(basis: &IntMatrix, v: &[BigInt]) -> bool {
    // Rows of the transpose are in row-Hermite form with increasing pivots.
    let rows = basis.transpose();
    let mut rest = v.to_vec();
    for i in 0..rows.rows() {
        let row = rows.row(i);
        let Some(c) = row.iter().position(|x| !x.is_zero()) else {
            continue;
        };
        if !(&rest[c] % &row[c]).is_zero() {
            return false;
        }
        let t = &rest[c] / &row[c];
        for (x, a) in rest.iter_mut().zip(row) {
            *x -= &t * a;
        }
    }
    rest.iter().all(Zero::is_zero)
}
