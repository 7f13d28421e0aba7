#![allow(clippy::needless_range_loop)]

use crate::linalg::{self, Mat};

/// A unimodular change of basis `M` of `Z^n` that maps the linear span of a
/// set of vectors onto the first `d` coordinates. Lattice points of the span
/// correspond bijectively to `Z^d`, and dual vectors transform by `M^T`.
#[derive(Clone, Debug)]
pub(crate) struct Frame {
    pub n: usize,
    pub d: usize,
    m: Mat,
    m_inv: Mat,
}

impl Frame {
    pub fn of(n: usize, vectors: &[Vec<i128>]) -> Frame {
        // columns are the vectors
        let cols: Mat = (0..n).map(|i| vectors.iter().map(|v| v[i]).collect()).collect();
        let e = linalg::row_echelon(&cols, vectors.len());
        let d = e.rank();
        if d == n {
            // full rank: keep the standard basis so dual rays come out canonical
            return Frame {
                n,
                d,
                m: linalg::identity(n),
                m_inv: linalg::identity(n),
            };
        }
        let m = e.transform;
        let m_inv = inverse_unimodular(&m);
        Frame { n, d, m, m_inv }
    }

    /// Coordinates of `v` inside the span, or `None` when `v` leaves the span.
    pub fn to_local(&self, v: &[i128]) -> Option<Vec<i128>> {
        let w = linalg::mat_vec(&self.m, v);
        if w[self.d..].iter().any(|&x| x != 0) {
            return None;
        }
        Some(w[..self.d].to_vec())
    }

    pub fn to_ambient(&self, w: &[i128]) -> Vec<i128> {
        let mut full = w.to_vec();
        full.resize(self.n, 0);
        linalg::mat_vec(&self.m_inv, &full)
    }

    /// Ambient dual vector `M^T (u, 0)` for a local dual vector `u`.
    pub fn dual_from_local(&self, u: &[i128]) -> Vec<i128> {
        (0..self.n)
            .map(|j| (0..self.d).map(|i| self.m[i][j] * u[i]).sum())
            .collect()
    }

    /// Lattice basis of the annihilator of the span, in ambient dual coordinates.
    pub fn annihilator(&self) -> Vec<Vec<i128>> {
        (self.d..self.n).map(|i| self.m[i].clone()).collect()
    }
}

pub(crate) fn adjugate(m: &Mat) -> Mat {
    let n = m.len();
    let mut adj = vec![vec![0i128; n]; n];
    for i in 0..n {
        for j in 0..n {
            let minor: Mat = m
                .iter()
                .enumerate()
                .filter(|&(r, _)| r != i)
                .map(|(_, row)| {
                    row.iter()
                        .enumerate()
                        .filter(|&(c, _)| c != j)
                        .map(|(_, &x)| x)
                        .collect()
                })
                .collect();
            let sign = if (i + j) % 2 == 0 { 1 } else { -1 };
            adj[j][i] = sign * linalg::determinant(&minor);
        }
    }
    adj
}

fn inverse_unimodular(m: &Mat) -> Mat {
    let det = linalg::determinant(m);
    debug_assert!(det == 1 || det == -1);
    adjugate(m)
        .into_iter()
        .map(|row| row.into_iter().map(|x| x * det).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn frame_round_trip() {
        let f = Frame::of(3, &[vec![1, 1, 0], vec![0, 1, 1]]);
        assert_eq!(f.d, 2);
        for v in [vec![1, 1, 0], vec![0, 1, 1], vec![1, 2, 1], vec![2, 1, -1]] {
            let w = f.to_local(&v).unwrap();
            assert_eq!(f.to_ambient(&w), v);
        }
        assert!(f.to_local(&[1, 0, 0]).is_none());
        let ann = f.annihilator();
        assert_eq!(ann.len(), 1);
        assert_eq!(linalg::dot(&ann[0], &[1, 1, 0]), 0);
        assert_eq!(linalg::dot(&ann[0], &[0, 1, 1]), 0);
    }

    #[test]
    fn dual_pairing_is_preserved() {
        let f = Frame::of(3, &[vec![1, 2, 0]]);
        let v = vec![1, 2, 0];
        let w = f.to_local(&v).unwrap();
        let u = vec![3];
        assert_eq!(linalg::dot(&f.dual_from_local(&u), &v), linalg::dot(&u, &w));
    }
}
