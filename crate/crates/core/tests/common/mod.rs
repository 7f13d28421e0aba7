//! Cone corpus and brute-force lattice oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::HashSet;

use torified::lattice::Cone;

pub fn cone(n: usize, rays: &[&[i64]]) -> Cone {
    Cone::new(n, &rays.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
}

/// Cones of dimension 1 to 3, all with Hilbert bases inside the box of radius
/// [`ORACLE_RADIUS`], for both the cone and its dual when full-dimensional.
pub fn corpus() -> Vec<Cone> {
    vec![
        cone(1, &[&[1]]),
        cone(1, &[&[-1]]),
        Cone::zero(2),
        cone(2, &[&[1, 0]]),
        cone(2, &[&[1, 0], &[0, 1]]),
        cone(2, &[&[1, 0], &[1, 2]]),
        cone(2, &[&[1, 0], &[1, 3]]),
        cone(2, &[&[1, 0], &[1, 5]]),
        cone(2, &[&[2, 1], &[1, 2]]),
        cone(2, &[&[1, 1], &[1, -1]]),
        cone(2, &[&[-1, -1], &[1, 0]]),
        cone(2, &[&[1, 0], &[2, 3]]),
        cone(2, &[&[0, 1], &[3, -2]]),
        cone(2, &[&[-1, 2], &[1, 2]]),
        cone(3, &[&[1, 0, 0]]),
        cone(3, &[&[1, 0, 0], &[1, 2, 0]]),
        cone(3, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]),
        cone(3, &[&[1, 0, 0], &[0, 1, 0], &[1, 1, 2]]),
        cone(3, &[&[1, 0, 0], &[0, 1, 0], &[-1, -1, 3]]),
        cone(3, &[&[0, 0, 1], &[1, 0, 1], &[0, 1, 1], &[1, 1, 1]]),
        cone(3, &[&[1, 0, 1], &[0, 1, 1], &[-1, 0, 1], &[0, -1, 1]]),
        cone(3, &[&[1, 1, 0], &[0, 1, 1], &[1, 0, 1]]),
        cone(3, &[&[1, 0, 0], &[0, 1, 0], &[1, 2, 3]]),
    ]
}

pub const ORACLE_RADIUS: i64 = 5;

fn det(m: &[Vec<i128>]) -> i128 {
    match m.len() {
        0 => 1,
        1 => m[0][0],
        2 => m[0][0] * m[1][1] - m[0][1] * m[1][0],
        _ => (0..m.len())
            .map(|j| {
                let minor: Vec<Vec<i128>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|(c, _)| *c != j)
                            .map(|(_, x)| *x)
                            .collect()
                    })
                    .collect();
                let sign = if j % 2 == 0 { 1 } else { -1 };
                sign * m[0][j] * det(&minor)
            })
            .sum(),
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0u32..(1 << n))
        .filter(|b| b.count_ones() as usize == k)
        .map(|b| (0..n).filter(|i| b & (1 << i) != 0).collect())
        .collect()
}

/// `v ∈ cone(rays)`, by Carathéodory: `v` is a nonnegative combination of
/// some linearly independent subset of the rays. Gram adjugates are prepared
/// once per cone.
pub struct Membership {
    pieces: Vec<Piece>,
}

/// Subset vectors, Gram determinant, Gram adjugate.
type Piece = (Vec<Vec<i128>>, i128, Vec<Vec<i128>>);

fn dot128(a: &[i128], b: &[i128]) -> i128 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

impl Membership {
    pub fn new(rays: &[Vec<i64>], n: usize) -> Membership {
        let mut pieces = Vec::new();
        for k in 1..=rays.len().min(n) {
            for s in subsets(rays.len(), k) {
                let vecs: Vec<Vec<i128>> = s
                    .iter()
                    .map(|&i| rays[i].iter().map(|&x| x as i128).collect())
                    .collect();
                let gram: Vec<Vec<i128>> = vecs
                    .iter()
                    .map(|a| vecs.iter().map(|b| dot128(a, b)).collect())
                    .collect();
                let d = det(&gram);
                if d == 0 {
                    continue;
                }
                // adj[i][j] = (-1)^{i+j} det(gram without row j, column i)
                let adj: Vec<Vec<i128>> = (0..k)
                    .map(|i| {
                        (0..k)
                            .map(|j| {
                                let minor: Vec<Vec<i128>> = (0..k)
                                    .filter(|&r| r != j)
                                    .map(|r| (0..k).filter(|&c| c != i).map(|c| gram[r][c]).collect())
                                    .collect();
                                let sign = if (i + j) % 2 == 0 { 1 } else { -1 };
                                sign * det(&minor)
                            })
                            .collect()
                    })
                    .collect();
                pieces.push((vecs, d, adj));
            }
        }
        Membership { pieces }
    }

    pub fn contains(&self, v: &[i64]) -> bool {
        if v.iter().all(|&x| x == 0) {
            return true;
        }
        let vv: Vec<i128> = v.iter().map(|&x| x as i128).collect();
        self.pieces.iter().any(|(vecs, d, adj)| {
            let rhs: Vec<i128> = vecs.iter().map(|a| dot128(a, &vv)).collect();
            let nums: Vec<i128> = adj.iter().map(|row| dot128(row, &rhs)).collect();
            if nums.iter().any(|x| x.signum() * d.signum() < 0) {
                return false;
            }
            (0..vv.len()).all(|c| vecs.iter().zip(&nums).map(|(a, x)| a[c] * x).sum::<i128>() == d * vv[c])
        })
    }
}

pub fn in_cone(rays: &[Vec<i64>], v: &[i64]) -> bool {
    Membership::new(rays, v.len()).contains(v)
}

fn box_points(n: usize, r: i64) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|p| (-r..=r).map(move |x| [p.clone(), vec![x]].concat()))
            .collect();
    }
    out
}

/// Irreducible nonzero points of a pointed monoid `{v : member(v)}` inside the
/// box of radius `ORACLE_RADIUS`; decompositions are searched in a box three
/// times larger.
fn irreducibles(n: usize, member: impl Fn(&[i64]) -> bool) -> Vec<Vec<i64>> {
    let big: Vec<Vec<i64>> = box_points(n, 3 * ORACLE_RADIUS)
        .into_iter()
        .filter(|p| p.iter().any(|&x| x != 0) && member(p))
        .collect();
    let set: HashSet<&Vec<i64>> = big.iter().collect();
    let mut out: Vec<Vec<i64>> = big
        .iter()
        .filter(|u| u.iter().all(|x| x.abs() <= ORACLE_RADIUS))
        .filter(|u| {
            !big.iter().any(|v| {
                let w: Vec<i64> = u.iter().zip(v.iter()).map(|(a, b)| a - b).collect();
                set.contains(&w)
            })
        })
        .cloned()
        .collect();
    out.sort();
    out
}

/// Hilbert basis of `cone ∩ Z^n` by brute force.
pub fn oracle_hilbert(c: &Cone) -> Vec<Vec<i64>> {
    let m = Membership::new(c.rays(), c.ambient_dim());
    irreducibles(c.ambient_dim(), |v| m.contains(v))
}

/// Hilbert basis of `cone^∨ ∩ Z^n` by brute force; the cone must be
/// full-dimensional so that the dual is pointed.
pub fn oracle_dual_hilbert(c: &Cone) -> Vec<Vec<i64>> {
    assert!(c.is_full_dimensional());
    let rays = c.rays().to_vec();
    irreducibles(c.ambient_dim(), |u| {
        rays.iter()
            .all(|r| r.iter().zip(u).map(|(a, b)| a * b).sum::<i64>() >= 0)
    })
}
