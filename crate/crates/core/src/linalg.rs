//! Exact integer linear algebra over `i128`.
//!
//! Matrices are dense row-major `Vec<Vec<i128>>`. Everything here works with
//! unimodular row operations so that lattice information (not only the
//! rational span) is preserved.

#![allow(clippy::needless_range_loop)]

use num_integer::Integer;

pub type Mat = Vec<Vec<i128>>;

pub fn gcd_slice(v: &[i128]) -> i128 {
    v.iter().fold(0i128, |g, &x| g.gcd(&x))
}

/// Divides by the gcd of the entries. The zero vector is returned unchanged.
pub fn primitive(v: &[i128]) -> Vec<i128> {
    let g = gcd_slice(v);
    if g == 0 {
        v.to_vec()
    } else {
        v.iter().map(|x| x / g).collect()
    }
}

pub fn dot(a: &[i128], b: &[i128]) -> i128 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn identity(n: usize) -> Mat {
    (0..n).map(|i| (0..n).map(|j| i128::from(i == j)).collect()).collect()
}

pub fn transpose(m: &Mat, ncols: usize) -> Mat {
    (0..ncols).map(|j| m.iter().map(|row| row[j]).collect()).collect()
}

pub fn mat_vec(m: &Mat, v: &[i128]) -> Vec<i128> {
    m.iter().map(|row| dot(row, v)).collect()
}

/// Result of [`row_echelon`]: `transform * input == echelon`, with `transform`
/// unimodular and the nonzero rows of `echelon` occupying the first `rank` rows.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub echelon: Mat,
    pub transform: Mat,
    pub pivots: Vec<usize>,
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

/// Integer row echelon form by Euclidean row reduction.
pub fn row_echelon(m: &Mat, ncols: usize) -> Echelon {
    let nrows = m.len();
    let mut a = m.clone();
    let mut t = identity(nrows);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        loop {
            // smallest nonzero entry in column c at or below row r
            let pick = (r..nrows)
                .filter(|&i| a[i][c] != 0)
                .min_by_key(|&i| a[i][c].unsigned_abs());
            let Some(p) = pick else { break };
            a.swap(r, p);
            t.swap(r, p);
            let mut done = true;
            for i in (r + 1)..nrows {
                if a[i][c] != 0 {
                    let q = Integer::div_floor(&a[i][c], &a[r][c]);
                    for j in 0..ncols {
                        a[i][j] -= q * a[r][j];
                    }
                    for j in 0..nrows {
                        t[i][j] -= q * t[r][j];
                    }
                    if a[i][c] != 0 {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if a[r][c] != 0 {
            if a[r][c] < 0 {
                a[r].iter_mut().for_each(|x| *x = -*x);
                t[r].iter_mut().for_each(|x| *x = -*x);
            }
            pivots.push(c);
            r += 1;
        }
    }
    Echelon {
        echelon: a,
        transform: t,
        pivots,
    }
}

pub fn rank(m: &Mat, ncols: usize) -> usize {
    row_echelon(m, ncols).rank()
}

/// Basis of the integer kernel `{x in Z^ncols : m x = 0}`. The returned basis
/// spans the full (saturated) kernel lattice.
pub fn kernel(m: &Mat, ncols: usize) -> Mat {
    let mt = transpose(m, ncols);
    let e = row_echelon(&mt, m.len());
    e.transform[e.rank()..].to_vec()
}

/// Solves `sum_j c_j * cols[j] == target` over the integers.
pub fn solve_integer(cols: &[Vec<i128>], target: &[i128]) -> Option<Vec<i128>> {
    let n = target.len();
    let e = row_echelon(&cols.to_vec(), n);
    let mut residual = target.to_vec();
    let mut y = vec![0i128; cols.len()];
    for (i, &p) in e.pivots.iter().enumerate() {
        let piv = e.echelon[i][p];
        if residual[p] % piv != 0 {
            return None;
        }
        y[i] = residual[p] / piv;
        for j in 0..n {
            residual[j] -= y[i] * e.echelon[i][j];
        }
    }
    if residual.iter().any(|&x| x != 0) {
        return None;
    }
    // cols = T^{-1} E, so target = y^T E = (y^T T) cols
    let mut c = vec![0i128; cols.len()];
    for (i, yi) in y.iter().enumerate() {
        if *yi != 0 {
            for (k, ck) in c.iter_mut().enumerate() {
                *ck += yi * e.transform[i][k];
            }
        }
    }
    Some(c)
}

/// Determinant of a square matrix (Bareiss fraction-free elimination).
pub fn determinant(m: &Mat) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut a = m.clone();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n {
        if a[k][k] == 0 {
            let Some(p) = ((k + 1)..n).find(|&i| a[i][k] != 0) else {
                return 0;
            };
            a.swap(k, p);
            sign = -sign;
        }
        for i in (k + 1)..n {
            for j in (k + 1)..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}

/// Elementary divisors of an integer matrix (nonzero diagonal of its Smith
/// normal form), in divisibility order.
pub fn smith_divisors(m: &Mat, ncols: usize) -> Vec<i128> {
    let mut a = m.clone();
    let nrows = a.len();
    let mut divisors = Vec::new();
    let mut t = 0;
    while t < nrows.min(ncols) {
        // pivot: smallest nonzero entry in the trailing block
        let mut best: Option<(usize, usize)> = None;
        for i in t..nrows {
            for j in t..ncols {
                if a[i][j] != 0 && best.is_none_or(|(bi, bj)| a[i][j].unsigned_abs() < a[bi][bj].unsigned_abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut clean = true;
            for i in (t + 1)..nrows {
                let q = Integer::div_floor(&a[i][t], &a[t][t]);
                if q != 0 {
                    for j in t..ncols {
                        a[i][j] -= q * a[t][j];
                    }
                }
                if a[i][t] != 0 {
                    clean = false;
                }
            }
            for j in (t + 1)..ncols {
                let q = Integer::div_floor(&a[t][j], &a[t][t]);
                if q != 0 {
                    for row in a.iter_mut().skip(t) {
                        row[j] -= q * row[t];
                    }
                }
                if a[t][j] != 0 {
                    clean = false;
                }
            }
            if clean {
                // divisibility: fold any non-multiple into the pivot row
                let bad = ((t + 1)..nrows)
                    .flat_map(|i| ((t + 1)..ncols).map(move |j| (i, j)))
                    .find(|&(i, j)| a[i][j] % a[t][t] != 0);
                match bad {
                    None => break,
                    Some((i, _)) => {
                        for j in t..ncols {
                            a[t][j] += a[i][j];
                        }
                        continue;
                    }
                }
            }
            // move the smallest nonzero entry of row/column t to the pivot
            let mut best = (t, t);
            for i in t..nrows {
                if a[i][t] != 0 && a[i][t].unsigned_abs() < a[best.0][best.1].unsigned_abs() {
                    best = (i, t);
                }
            }
            for j in t..ncols {
                if a[t][j] != 0 && a[t][j].unsigned_abs() < a[best.0][best.1].unsigned_abs() {
                    best = (t, j);
                }
            }
            a.swap(t, best.0);
            for row in a.iter_mut() {
                row.swap(t, best.1);
            }
        }
        divisors.push(a[t][t].abs());
        t += 1;
    }
    divisors
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i128]]) -> Mat {
        rows.iter().map(|r| r.to_vec()).collect()
    }

    #[test]
    fn echelon_transform_reproduces_input() {
        let a = m(&[&[2, 4, 6], &[1, 3, 5], &[3, 7, 11]]);
        let e = row_echelon(&a, 3);
        assert_eq!(e.rank(), 2);
        for (i, trow) in e.transform.iter().enumerate() {
            let prod: Vec<i128> = (0..3).map(|j| (0..3).map(|k| trow[k] * a[k][j]).sum()).collect();
            assert_eq!(prod, e.echelon[i]);
        }
        assert_eq!(determinant(&e.transform).abs(), 1);
    }

    #[test]
    fn kernel_is_saturated() {
        // kernel of (2 4) over Z is spanned by (2,-1), not (4,-2)
        let k = kernel(&m(&[&[2, 4]]), 2);
        assert_eq!(k.len(), 1);
        assert_eq!(gcd_slice(&k[0]), 1);
        assert_eq!(dot(&k[0], &[2, 4]), 0);
    }

    #[test]
    fn kernel_of_singular_generator_matrix() {
        // generators (0,1),(1,0),(2,-1) as columns
        let k = kernel(&m(&[&[0, 1, 2], &[1, 0, -1]]), 3);
        assert_eq!(k.len(), 1);
        let v = &k[0];
        let s = if v[0] < 0 { -1 } else { 1 };
        assert_eq!(v.iter().map(|x| x * s).collect::<Vec<_>>(), vec![1, -2, 1]);
    }

    #[test]
    fn integer_solve() {
        let cols = vec![vec![2, 0], vec![0, 3]];
        assert_eq!(solve_integer(&cols, &[4, 9]), Some(vec![2, 3]));
        assert_eq!(solve_integer(&cols, &[1, 0]), None);
        let cols = vec![vec![1, 1], vec![1, -1]];
        let c = solve_integer(&cols, &[2, 0]).unwrap();
        assert_eq!(c, vec![1, 1]);
    }

    #[test]
    fn determinants() {
        assert_eq!(determinant(&m(&[&[1, 1], &[0, 2]])), 2);
        assert_eq!(determinant(&m(&[&[0, 1], &[1, 0]])), -1);
        assert_eq!(determinant(&m(&[&[2, 0, 1], &[1, 3, 2], &[1, 1, 2]])), 6);
        assert_eq!(determinant(&Vec::new()), 1);
    }

    #[test]
    fn smith_divisors_match_determinantal_divisors() {
        assert_eq!(smith_divisors(&m(&[&[2, 4], &[6, 8]]), 2), vec![2, 4]);
        assert_eq!(smith_divisors(&m(&[&[1, 0], &[1, 2]]), 2), vec![1, 2]);
        assert_eq!(smith_divisors(&m(&[&[2, 0], &[0, 3]]), 2), vec![1, 6]);
        assert_eq!(smith_divisors(&m(&[&[1, 0, 0], &[0, 1, 0]]), 3), vec![1, 1]);
        assert!(smith_divisors(&m(&[&[0, 0]]), 2).is_empty());
    }
}
