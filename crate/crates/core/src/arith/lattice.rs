//! Integer lattice computations: determinants, maximal minors, Smith normal
//! form, and unimodularity of sets of homogeneous vectors.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{linalg, HomogeneousVector, Rational};
use crate::error::{Error, Result};

/// Above this many columns the minor count explodes and the Smith form is used.
const MINOR_ROUTE_MAX_COLS: usize = 4;

/// Fraction-free (Bareiss) determinant of a square integer matrix.
pub fn integer_det(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a = m.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(sel) = (k + 1..n).find(|&r| !a[r][k].is_zero()) else {
                return BigInt::zero();
            };
            a.swap(k, sel);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Gcd of all maximal-order minors of a `k x c` integer matrix with `k <= c`.
/// Zero iff the rows are linearly dependent.
pub fn maximal_minor_gcd(rows: &[Vec<BigInt>]) -> BigInt {
    let k = rows.len();
    let c = rows.first().map_or(0, Vec::len);
    if k == 0 {
        return BigInt::one();
    }
    if k > c {
        return BigInt::zero();
    }
    combinations(c, k)
        .into_iter()
        .map(|cols| {
            let sub: Vec<Vec<BigInt>> = rows
                .iter()
                .map(|r| cols.iter().map(|&j| r[j].clone()).collect())
                .collect();
            integer_det(&sub)
        })
        .fold(BigInt::zero(), |g, d| g.gcd(&d))
}

/// `u * a * v = diag`, with `u`, `v` unimodular and the diagonal entries
/// non-negative, each dividing the next.
#[derive(Debug, Clone)]
pub struct SmithForm {
    pub u: Vec<Vec<BigInt>>,
    pub v: Vec<Vec<BigInt>>,
    pub diag: Vec<BigInt>,
}

fn identity(n: usize) -> Vec<Vec<BigInt>> {
    (0..n)
        .map(|i| (0..n).map(|j| BigInt::from((i == j) as i32)).collect())
        .collect()
}

pub fn smith_normal_form(a: &[Vec<BigInt>]) -> SmithForm {
    let r = a.len();
    let c = a.first().map_or(0, Vec::len);
    let mut m = a.to_vec();
    let mut u = identity(r);
    let mut v = identity(c);

    let row_sub = |m: &mut Vec<Vec<BigInt>>, dst: usize, src: usize, q: &BigInt| {
        let src_row = m[src].clone();
        for (x, s) in m[dst].iter_mut().zip(&src_row) {
            *x -= q * s;
        }
    };
    let col_sub = |m: &mut Vec<Vec<BigInt>>, dst: usize, src: usize, q: &BigInt| {
        for row in m.iter_mut() {
            let s = row[src].clone();
            row[dst] -= q * s;
        }
    };

    for t in 0..r.min(c) {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..r {
                for j in t..c {
                    if m[i][j].is_zero() {
                        continue;
                    }
                    if best.is_none_or(|(bi, bj)| m[i][j].abs() < m[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else {
                let diag = (0..r.min(c)).map(|i| m[i][i].clone()).collect();
                return SmithForm { u, v, diag };
            };
            m.swap(t, bi);
            u.swap(t, bi);
            for row in m.iter_mut() {
                row.swap(t, bj);
            }
            for row in v.iter_mut() {
                row.swap(t, bj);
            }

            let mut clean = true;
            for i in t + 1..r {
                if m[i][t].is_zero() {
                    continue;
                }
                let q = &m[i][t] / &m[t][t];
                row_sub(&mut m, i, t, &q);
                row_sub(&mut u, i, t, &q);
                if !m[i][t].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..c {
                if m[t][j].is_zero() {
                    continue;
                }
                let q = &m[t][j] / &m[t][t];
                col_sub(&mut m, j, t, &q);
                col_sub(&mut v, j, t, &q);
                if !m[t][j].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            let pivot = m[t][t].clone();
            let offender = (t + 1..r).find(|&i| (t + 1..c).any(|j| !m[i][j].is_multiple_of(&pivot)));
            if let Some(i) = offender {
                let minus_one = -BigInt::one();
                row_sub(&mut m, t, i, &minus_one);
                row_sub(&mut u, t, i, &minus_one);
                continue;
            }
            if pivot.is_negative() {
                for x in m[t].iter_mut() {
                    *x = -x.clone();
                }
                for x in u[t].iter_mut() {
                    *x = -x.clone();
                }
            }
            break;
        }
    }
    let diag = (0..r.min(c)).map(|i| m[i][i].clone()).collect();
    SmithForm { u, v, diag }
}

/// Invariant factors of an integer matrix (zeros included for rank deficiency).
pub fn smith_invariants(rows: &[Vec<BigInt>]) -> Vec<BigInt> {
    smith_normal_form(rows).diag
}

fn stack(vs: &[HomogeneousVector]) -> Result<Vec<Vec<BigInt>>> {
    let Some(first) = vs.first() else {
        return Ok(Vec::new());
    };
    let len = first.len();
    if let Some(bad) = vs.iter().find(|v| v.len() != len) {
        return Err(Error::DimensionMismatch {
            expected: len,
            found: bad.len(),
        });
    }
    Ok(vs.iter().map(|v| v.entries().to_vec()).collect())
}

/// True iff the vectors extend to a basis of `Z^{n+1}`. Dependent sets yield
/// `false`.
pub fn is_basis_extendable(vs: &[HomogeneousVector]) -> Result<bool> {
    let rows = stack(vs)?;
    Ok(rows_extend_to_basis(&rows))
}

pub(crate) fn rows_extend_to_basis(rows: &[Vec<BigInt>]) -> bool {
    let Some(first) = rows.first() else {
        return true;
    };
    let cols = first.len();
    if rows.len() > cols {
        return false;
    }
    if cols <= MINOR_ROUTE_MAX_COLS {
        maximal_minor_gcd(rows).is_one()
    } else {
        let diag = smith_invariants(rows);
        diag.len() == rows.len() && diag.iter().all(One::is_one)
    }
}

/// Index of the row lattice inside its saturation (zero for dependent rows).
pub fn lattice_index(rows: &[Vec<BigInt>]) -> BigInt {
    smith_invariants(rows)
        .iter()
        .fold(BigInt::one(), |acc, d| acc * d)
}

fn frac(q: &Rational) -> Rational {
    q - Rational::from_integer(q.floor().to_integer())
}

/// Enumeration bound for the search of the lowest-denominator point.
const PARALLELEPIPED_SCAN_LIMIT: u64 = 4096;

/// A nonzero primitive lattice point `w = sum lambda_i a_i` with all
/// `0 <= lambda_i < 1`, lying in the saturation of the row lattice of the
/// independent rows `a_i`. `None` when the rows already span a saturated
/// lattice. Among candidates the one with the smallest last coordinate (then
/// lexicographically least) is returned.
pub fn parallelepiped_point(rows: &[Vec<BigInt>]) -> Option<(Vec<BigInt>, Vec<Rational>)> {
    let k = rows.len();
    let snf = smith_normal_form(rows);
    if snf.diag.len() < k || snf.diag.iter().any(Zero::is_zero) {
        return None;
    }
    if snf.diag.iter().all(One::is_one) {
        return None;
    }
    // Coefficients of the saturation generators r_i = (1/d_i) * sum_j u_ij a_j.
    let generators: Vec<Vec<Rational>> = (0..k)
        .map(|i| {
            snf.u[i]
                .iter()
                .map(|x| Rational::new(x.clone(), snf.diag[i].clone()))
                .collect()
        })
        .collect();

    let reduce = |coeffs: Vec<Rational>| -> Option<(Vec<BigInt>, Vec<Rational>)> {
        let lambda: Vec<Rational> = coeffs.iter().map(frac).collect();
        if lambda.iter().all(Zero::is_zero) {
            return None;
        }
        let cols = rows[0].len();
        let w: Vec<Rational> = (0..cols)
            .map(|c| {
                lambda
                    .iter()
                    .zip(rows)
                    .map(|(l, r)| l * Rational::from_integer(r[c].clone()))
                    .sum()
            })
            .collect();
        let w: Vec<BigInt> = w.iter().map(|q| q.to_integer()).collect();
        let g = w.iter().fold(BigInt::zero(), |g, a| g.gcd(a));
        let w: Vec<BigInt> = w.into_iter().map(|a| a / &g).collect();
        let gq = Rational::from_integer(g);
        let lambda = lambda.into_iter().map(|l| l / &gq).collect();
        Some((w, lambda))
    };

    let total: Option<u64> = snf
        .diag
        .iter()
        .try_fold(1u64, |acc, d| u64::try_from(d).ok().and_then(|d| acc.checked_mul(d)));

    let mut best: Option<(Vec<BigInt>, Vec<Rational>)> = None;
    let mut consider = |cand: (Vec<BigInt>, Vec<Rational>)| {
        let better = match &best {
            None => true,
            Some((w, _)) => {
                let (a, b) = (cand.0.last().unwrap(), w.last().unwrap());
                a < b || (a == b && cand.0 < *w)
            }
        };
        if better {
            best = Some(cand);
        }
    };

    match total {
        Some(total) if total <= PARALLELEPIPED_SCAN_LIMIT => {
            let mut digits = vec![BigInt::zero(); k];
            'outer: loop {
                let coeffs: Vec<Rational> = (0..k)
                    .map(|j| {
                        (0..k)
                            .map(|i| Rational::from_integer(digits[i].clone()) * &generators[i][j])
                            .sum()
                    })
                    .collect();
                if let Some(cand) = reduce(coeffs) {
                    consider(cand);
                }
                for i in 0..k {
                    digits[i] += 1;
                    if digits[i] < snf.diag[i] {
                        continue 'outer;
                    }
                    digits[i] = BigInt::zero();
                }
                break;
            }
        }
        _ => {
            for (i, d) in snf.diag.iter().enumerate() {
                if !d.is_one() {
                    if let Some(cand) = reduce(generators[i].clone()) {
                        consider(cand);
                    }
                }
            }
        }
    }
    best
}

/// Rational inverse of a square integer matrix.
pub fn rational_inverse(m: &[Vec<BigInt>]) -> Option<Vec<Vec<Rational>>> {
    let n = m.len();
    let a: Vec<Vec<Rational>> = m
        .iter()
        .map(|r| r.iter().map(|x| Rational::from_integer(x.clone())).collect())
        .collect();
    let mut cols = Vec::with_capacity(n);
    for j in 0..n {
        let e: Vec<Rational> = (0..n)
            .map(|i| if i == j { Rational::one() } else { Rational::zero() })
            .collect();
        cols.push(linalg::solve_unique(&a, &e)?);
    }
    Some((0..n).map(|i| (0..n).map(|j| cols[j][i].clone()).collect()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect()
    }

    fn hv(e: &[i64]) -> HomogeneousVector {
        HomogeneousVector::from_i64(e).unwrap()
    }

    #[test]
    fn bareiss_matches_cofactor_expansion() {
        let a = m(&[&[2, -1, 3], &[0, 4, 1], &[5, 2, -2]]);
        // 2(4*-2 - 1*2) - (-1)(0*-2 - 1*5) + 3(0*2 - 4*5) = -20 - 5 - 60
        assert_eq!(integer_det(&a), BigInt::from(-85));
        assert_eq!(integer_det(&m(&[&[0, 1], &[1, 0]])), BigInt::from(-1));
    }

    #[test]
    fn basis_extension_examples() {
        assert!(is_basis_extendable(&[hv(&[0, 0, 1]), hv(&[1, 0, 1]), hv(&[1, 1, 1])]).unwrap());
        assert!(!is_basis_extendable(&[hv(&[1, 3]), hv(&[2, 3])]).unwrap());
        assert!(is_basis_extendable(&[hv(&[1, 1, 3])]).unwrap());
        assert_eq!(maximal_minor_gcd(&m(&[&[1, 3], &[2, 3]])), BigInt::from(3));
    }

    #[test]
    fn ragged_input_is_rejected() {
        let err = is_basis_extendable(&[hv(&[1, 1]), hv(&[1, 0, 1])]).unwrap_err();
        assert!(matches!(err, Error::DimensionMismatch { .. }));
    }

    #[test]
    fn dependent_rows_are_not_extendable() {
        assert!(!is_basis_extendable(&[hv(&[1, 1, 1]), hv(&[1, 1, 1])]).unwrap());
        assert!(!rows_extend_to_basis(&m(&[&[1, 0], &[0, 1], &[1, 1]])));
    }

    #[test]
    fn smith_form_reconstructs() {
        let a = m(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]);
        let s = smith_normal_form(&a);
        assert_eq!(s.diag, vec![BigInt::from(2), BigInt::from(6), BigInt::from(12)]);
        let mul = |x: &[Vec<BigInt>], y: &[Vec<BigInt>]| -> Vec<Vec<BigInt>> {
            (0..x.len())
                .map(|i| {
                    (0..y[0].len())
                        .map(|j| (0..y.len()).map(|k| &x[i][k] * &y[k][j]).sum())
                        .collect()
                })
                .collect()
        };
        let d = mul(&mul(&s.u, &a), &s.v);
        for (i, row) in d.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                if i == j {
                    assert_eq!(x, &s.diag[i]);
                } else {
                    assert!(x.is_zero());
                }
            }
        }
        assert!(integer_det(&s.u).abs().is_one());
        assert!(integer_det(&s.v).abs().is_one());
    }

    #[test]
    fn minors_and_smith_agree_on_wide_matrices() {
        let a = m(&[&[1, 2, 3, 4, 5, 6], &[0, 3, 1, 4, 1, 5], &[2, 7, 1, 8, 2, 8]]);
        let minors = maximal_minor_gcd(&a);
        assert_eq!(lattice_index(&a), minors);
    }

    #[test]
    fn parallelepiped_point_of_singular_segment() {
        let (w, lambda) = parallelepiped_point(&m(&[&[1, 3], &[2, 3]])).unwrap();
        assert_eq!(w, vec![BigInt::from(1), BigInt::from(2)]);
        assert!(lambda.iter().all(|l| l > &Rational::zero() && l < &Rational::one()));
        assert!(parallelepiped_point(&m(&[&[0, 1], &[1, 1]])).is_none());
    }
}
