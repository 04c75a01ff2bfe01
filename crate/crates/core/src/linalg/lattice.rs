//! Integer and rational linear systems, subgroup bases of `Zⁿ`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::matrix::{IntMatrix, IntVector};
use super::normal_form::{hermite_normal_form, smith_normal_form};

/// One integer solution of `A·x = b` plus a basis of the integer kernel of `A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeSolution {
    pub particular: IntVector,
    /// HNF-reduced rows spanning `{x ∈ Zⁿ : A·x = 0}`.
    pub kernel_basis: Vec<IntVector>,
}

/// Solves `A·x = b` over the integers via the Smith form.
///
/// Returns `None` when no integer solution exists or the shapes disagree.
pub fn solve_in_lattice(a: &IntMatrix, b: &[BigInt]) -> Option<LatticeSolution> {
    if b.len() != a.rows() {
        return None;
    }
    let smith = smith_normal_form(a);
    let r = smith.rank();
    let ub = smith.u.mul_vec(b)?;
    // S·y = U·b with x = V·y.
    let mut y = vec![BigInt::zero(); a.cols()];
    for (i, c) in ub.iter().enumerate() {
        if i < r {
            let d = &smith.s[(i, i)];
            if !c.is_multiple_of(d) {
                return None;
            }
            y[i] = c / d;
        } else if !c.is_zero() {
            return None;
        }
    }
    let particular = smith.v.mul_vec(&y)?;
    let kernel: Vec<IntVector> = (r..a.cols()).map(|j| smith.v.column(j)).collect();
    Some(LatticeSolution {
        particular,
        kernel_basis: reduced_row_basis(&kernel, a.cols()),
    })
}

/// HNF-reduced basis (as rows) of the subgroup generated by `vectors` in `Zⁿ`.
pub fn reduced_row_basis(vectors: &[IntVector], n: usize) -> Vec<IntVector> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let m = IntMatrix::from_rows(vectors.to_vec(), n).expect("vector length mismatch");
    let h = hermite_normal_form(&m);
    (0..h.rank()).map(|i| h.h.row(i).to_vec()).collect()
}

/// Whether `v` lies in the subgroup generated by the columns of `basis`.
pub fn lattice_contains(basis: &IntMatrix, v: &[BigInt]) -> bool {
    if basis.cols() == 0 {
        return v.iter().all(Zero::is_zero);
    }
    solve_in_lattice(basis, v).is_some()
}

/// One rational solution of `A·x = b` by Gauss–Jordan elimination, free
/// variables set to zero.
pub fn solve_rational(a: &[Vec<BigRational>], b: &[BigRational], n: usize) -> Option<Vec<BigRational>> {
    let m = a.len();
    if b.len() != m || a.iter().any(|r| r.len() != n) {
        return None;
    }
    let mut rows: Vec<Vec<BigRational>> = a
        .iter()
        .zip(b)
        .map(|(r, bi)| {
            let mut r = r.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let mut pivot_cols = Vec::new();
    let mut row = 0;
    for col in 0..n {
        let Some(p) = (row..m).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(row, p);
        let inv = rows[row][col].recip();
        for x in rows[row].iter_mut() {
            *x = &*x * &inv;
        }
        let pivot = rows[row].clone();
        for (i, r) in rows.iter_mut().enumerate().take(m) {
            if i != row && !r[col].is_zero() {
                let f = r[col].clone();
                for (x, p) in r[col..=n].iter_mut().zip(&pivot[col..=n]) {
                    *x -= p * &f;
                }
            }
        }
        pivot_cols.push(col);
        row += 1;
        if row == m {
            break;
        }
    }
    if rows[row..].iter().any(|r| !r[n].is_zero()) {
        return None;
    }
    let mut x = vec![BigRational::zero(); n];
    for (i, &c) in pivot_cols.iter().enumerate() {
        x[c] = rows[i][n].clone();
    }
    Some(x)
}

/// Least common multiple of the denominators.
pub fn common_denominator(v: &[BigRational]) -> BigInt {
    v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

/// Clears denominators and divides out the content, keeping the sign pattern.
///
/// The zero vector maps to the zero vector.
pub fn primitive_integer_vector(v: &[BigRational]) -> IntVector {
    let den = common_denominator(v);
    let ints: IntVector = v
        .iter()
        .map(|x| (x * BigRational::from_integer(den.clone())).to_integer())
        .collect();
    let content = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if content.is_zero() {
        return ints;
    }
    ints.into_iter().map(|x| x / &content).collect()
}

pub fn to_rational(v: &[BigInt]) -> Vec<BigRational> {
    v.iter().map(|x| BigRational::from_integer(x.clone())).collect()
}

/// Reduces `coeffs` modulo the kernel lattice by greedy ℓ¹ descent.
///
/// Deterministic: scans kernel vectors in order, both signs, until no single
/// step lowers the ℓ¹ norm.
pub fn l1_reduce(coeffs: &[BigInt], kernel: &[IntVector]) -> IntVector {
    let l1 = |v: &[BigInt]| -> BigInt { v.iter().map(|x| x.abs()).sum() };
    let mut cur = coeffs.to_vec();
    let mut norm = l1(&cur);
    loop {
        let mut improved = false;
        for k in kernel {
            for sign in [BigInt::one(), -BigInt::one()] {
                let cand: IntVector = cur.iter().zip(k).map(|(c, x)| c + &sign * x).collect();
                let n = l1(&cand);
                if n < norm {
                    cur = cand;
                    norm = n;
                    improved = true;
                }
            }
        }
        if !improved {
            return cur;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::matrix::to_bigints;

    #[test]
    fn identity_system() {
        let a = IntMatrix::identity(3);
        let b = to_bigints(&[4, -2, 7]);
        let sol = solve_in_lattice(&a, &b).unwrap();
        assert_eq!(sol.particular, b);
        assert!(sol.kernel_basis.is_empty());
    }

    #[test]
    fn parity_obstruction() {
        let a = IntMatrix::from_i64(&[&[2]]);
        assert!(solve_in_lattice(&a, &to_bigints(&[3])).is_none());
        assert!(solve_in_lattice(&a, &to_bigints(&[4])).is_some());
    }

    #[test]
    fn sum_kernel() {
        let a = IntMatrix::from_i64(&[&[1, 1]]);
        let sol = solve_in_lattice(&a, &to_bigints(&[0])).unwrap();
        assert_eq!(sol.particular, to_bigints(&[0, 0]));
        assert_eq!(sol.kernel_basis, vec![to_bigints(&[1, -1])]);
    }

    #[test]
    fn rational_solve_consistent_and_inconsistent() {
        let q = |x: i64| BigRational::from_integer(BigInt::from(x));
        let a = vec![vec![q(1), q(1)], vec![q(2), q(2)]];
        assert!(solve_rational(&a, &[q(1), q(3)], 2).is_none());
        let x = solve_rational(&a, &[q(1), q(2)], 2).unwrap();
        assert_eq!(&x[0] + &x[1], q(1));
    }

    #[test]
    fn primitive_vector_clears_denominators() {
        let v = vec![
            BigRational::new(BigInt::from(1), BigInt::from(2)),
            BigRational::new(BigInt::from(3), BigInt::from(4)),
        ];
        assert_eq!(primitive_integer_vector(&v), to_bigints(&[2, 3]));
    }

    #[test]
    fn l1_descent_reaches_unit_coefficient() {
        let kernel = vec![to_bigints(&[1, 1, 1])];
        assert_eq!(l1_reduce(&to_bigints(&[0, -1, -1]), &kernel), to_bigints(&[1, 0, 0]));
        assert_eq!(l1_reduce(&to_bigints(&[4, 3, 3]), &kernel), to_bigints(&[1, 0, 0]));
    }
}
