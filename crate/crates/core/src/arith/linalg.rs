//! Dense exact linear algebra over the rationals.

use num_traits::{One, Zero};

use super::Rational;

/// Reduced row echelon form of `m` restricted to the first `cols` columns;
/// remaining columns ride along. Returns the pivot columns.
fn rref(m: &mut [Vec<Rational>], cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        if row == m.len() {
            break;
        }
        let Some(sel) = (row..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, sel);
        let inv = m[row][col].recip();
        for x in m[row].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = m[row].clone();
        for (r, other) in m.iter_mut().enumerate() {
            if r == row || other[col].is_zero() {
                continue;
            }
            let f = other[col].clone();
            for (x, p) in other.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x -= &f * p;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

pub fn rank(rows: &[Vec<Rational>]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let cols = rows[0].len();
    let mut m = rows.to_vec();
    rref(&mut m, cols).len()
}

/// Dimension of the affine hull of a point set (`None` for the empty set).
pub fn affine_dim<P: AsRef<[Rational]>>(points: &[P]) -> Option<usize> {
    let first = points.first()?.as_ref();
    let diffs: Vec<Vec<Rational>> = points[1..]
        .iter()
        .map(|p| p.as_ref().iter().zip(first).map(|(a, b)| a - b).collect())
        .collect();
    Some(rank(&diffs))
}

/// Unique solution of `a x = b`, or `None` when the system is singular or
/// inconsistent.
pub fn solve_unique(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let cols = a.first().map_or(0, Vec::len);
    let mut m: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let pivots = rref(&mut m, cols);
    if pivots.len() < cols {
        return None;
    }
    if m[cols..].iter().any(|r| !r[cols].is_zero()) {
        return None;
    }
    Some((0..cols).map(|i| m[i][cols].clone()).collect())
}

/// Solves `w * beta = rhs` where each entry of `rhs` is an affine form (a
/// row of coefficients). Returns `beta` as forms plus the residual forms that
/// must vanish for the system to be consistent; `None` if `w` has dependent
/// columns.
pub fn solve_parametric(
    w: &[Vec<Rational>],
    rhs: &[Vec<Rational>],
) -> Option<(Vec<Vec<Rational>>, Vec<Vec<Rational>>)> {
    let t = w.first().map_or(0, Vec::len);
    let mut m: Vec<Vec<Rational>> = w
        .iter()
        .zip(rhs)
        .map(|(row, form)| row.iter().chain(form.iter()).cloned().collect())
        .collect();
    let pivots = rref(&mut m, t);
    if pivots.len() < t {
        return None;
    }
    let solution = m[..t].iter().map(|r| r[t..].to_vec()).collect();
    let residual = m[t..]
        .iter()
        .map(|r| r[t..].to_vec())
        .filter(|f| f.iter().any(|x| !x.is_zero()))
        .collect();
    Some((solution, residual))
}

pub fn determinant(m: &[Vec<Rational>]) -> Rational {
    let n = m.len();
    let mut a = m.to_vec();
    let mut det = Rational::one();
    for col in 0..n {
        let Some(sel) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return Rational::zero();
        };
        if sel != col {
            a.swap(sel, col);
            det = -det;
        }
        let p = a[col][col].clone();
        det *= &p;
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let f = &a[r][col] / &p;
            for c in col..n {
                let d = &f * &a[col][c];
                a[r][c] -= d;
            }
        }
    }
    det
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};

    #[test]
    fn determinant_and_rank() {
        let m = vec![vec![int(1), int(2)], vec![int(3), int(4)]];
        assert_eq!(determinant(&m), int(-2));
        assert_eq!(rank(&m), 2);
        let s = vec![vec![int(1), int(2)], vec![int(2), int(4)]];
        assert_eq!(determinant(&s), int(0));
        assert_eq!(rank(&s), 1);
    }

    #[test]
    fn unique_solution() {
        let a = vec![vec![int(2), int(0)], vec![int(0), int(4)]];
        assert_eq!(
            solve_unique(&a, &[int(1), int(1)]),
            Some(vec![rat(1, 2), rat(1, 4)])
        );
        let s = vec![vec![int(1), int(1)], vec![int(1), int(1)]];
        assert_eq!(solve_unique(&s, &[int(1), int(2)]), None);
    }

    #[test]
    fn parametric_solution_reports_residuals() {
        // beta * (1, 1) = (mu, 1): beta = mu, residual 1 - mu = 0.
        let w = vec![vec![int(1)], vec![int(1)]];
        let rhs = vec![vec![int(1), int(0)], vec![int(0), int(1)]];
        let (sol, res) = solve_parametric(&w, &rhs).unwrap();
        assert_eq!(sol, vec![vec![int(1), int(0)]]);
        assert_eq!(res, vec![vec![int(-1), int(1)]]);
    }

    #[test]
    fn affine_dimension() {
        let pts = vec![vec![int(0), int(0)], vec![int(1), int(1)], vec![int(2), int(2)]];
        assert_eq!(affine_dim(&pts), Some(1));
        assert_eq!(affine_dim::<Vec<Rational>>(&[]), None);
    }
}
