//! Rational polyhedral cones and fans in `Z^n`.
//!
//! Every cone is stored by its primitive extremal rays in sorted order, so two
//! cones are equal exactly when they are equal as sets. All computations are
//! exact; geometry is done in a lattice basis adapted to the linear span of the
//! cone.

mod cone;
mod fan;
mod frame;
mod hilbert;

pub use cone::{dual_cone, faces, is_smooth, Cone, DualCone};
pub use fan::{standard_fan, validate_fan, FaceViolation, Fan, FanKind, FanReport, IntersectionViolation};
pub use hilbert::hilbert_basis;

pub(crate) use frame::Frame;
pub(crate) use hilbert::hilbert_basis_full;

/// Integer coordinates of a lattice vector.
pub type LatticeVector = Vec<i64>;

/// Cones that are not simplicial are handled up to this span dimension.
pub const MAX_NONSIMPLICIAL_DIM: usize = 4;

pub(crate) fn widen(v: &[i64]) -> Vec<i128> {
    v.iter().map(|&x| i128::from(x)).collect()
}

pub(crate) fn narrow(v: &[i128]) -> crate::Result<Vec<i64>> {
    v.iter()
        .map(|&x| i64::try_from(x).map_err(|_| crate::Error::Overflow))
        .collect()
}

/// Extreme rays of the pointed cone `{x : <e,x> = 0 for e in eqs, <a,x> >= 0 for a in ineqs}`
/// in `R^n`, as primitive integer vectors. The caller guarantees pointedness.
pub(crate) fn extreme_rays(n: usize, eqs: &[Vec<i128>], ineqs: &[Vec<i128>]) -> Vec<Vec<i128>> {
    use crate::linalg;
    let eq_basis: Vec<Vec<i128>> = {
        let e = linalg::row_echelon(&eqs.to_vec(), n);
        e.echelon[..e.rank()].to_vec()
    };
    let e = eq_basis.len();
    if e >= n {
        return Vec::new();
    }
    let need = n - 1 - e;
    let mut out: Vec<Vec<i128>> = Vec::new();
    let mut push = |v: Vec<i128>| {
        if !out.contains(&v) {
            out.push(v);
        }
    };
    for subset in combinations(ineqs.len(), need) {
        let mut rows = eq_basis.clone();
        rows.extend(subset.iter().map(|&i| ineqs[i].clone()));
        let k = linalg::kernel(&rows, n);
        if k.len() != 1 {
            continue;
        }
        let v = linalg::primitive(&k[0]);
        for cand in [v.clone(), v.iter().map(|x| -x).collect()] {
            if ineqs.iter().all(|a| linalg::dot(a, &cand) >= 0) {
                push(cand);
            }
        }
    }
    out.sort();
    out
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub(crate) fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        let Some(i) = (0..k).rev().find(|&i| idx[i] != i + n - k) else {
            break;
        };
        idx[i] += 1;
        for j in (i + 1)..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn combinations_count_and_order() {
        assert_eq!(combinations(4, 2).len(), 6);
        assert_eq!(combinations(3, 0), vec![Vec::<usize>::new()]);
        assert_eq!(combinations(2, 3), Vec::<Vec<usize>>::new());
        assert_eq!(combinations(3, 2), vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
    }

    #[test]
    fn extreme_rays_of_quadrant() {
        let r = extreme_rays(2, &[], &[vec![1, 0], vec![0, 1]]);
        assert_eq!(r, vec![vec![0, 1], vec![1, 0]]);
    }

    #[test]
    fn extreme_rays_with_equalities() {
        // {z = 0, x >= 0, y >= 0} in R^3
        let r = extreme_rays(3, &[vec![0, 0, 1]], &[vec![1, 0, 0], vec![0, 1, 0]]);
        assert_eq!(r, vec![vec![0, 1, 0], vec![1, 0, 0]]);
    }
}
