use super::frame::adjugate;
use super::{combinations, extreme_rays, narrow, Cone, LatticeVector, MAX_NONSIMPLICIAL_DIM};
use crate::linalg;
use crate::{Error, Result};

/// Minimal generating set of the monoid `cone ∩ Z^n`, sorted.
///
/// The cone is covered by the simplicial cones on its full-rank ray subsets;
/// the lattice points of each half-open fundamental parallelepiped together
/// with the rays generate the monoid, and the irreducible elements of that
/// generating set form the Hilbert basis.
pub fn hilbert_basis(cone: &Cone) -> Result<Vec<LatticeVector>> {
    let frame = cone.frame();
    let local = cone.local_rays(&frame);
    let basis = hilbert_basis_full(frame.d, &local)?;
    let mut out = basis
        .iter()
        .map(|h| narrow(&frame.to_ambient(h)))
        .collect::<Result<Vec<_>>>()?;
    out.sort();
    Ok(out)
}

/// Hilbert basis of the full-dimensional pointed cone spanned by `rays` in `Z^d`.
pub(crate) fn hilbert_basis_full(d: usize, rays: &[Vec<i128>]) -> Result<Vec<Vec<i128>>> {
    if d == 0 {
        return Ok(Vec::new());
    }
    if rays.len() != d && d > MAX_NONSIMPLICIAL_DIM {
        return Err(Error::UnsupportedDimension(format!(
            "Hilbert basis of a non-simplicial cone of dimension {d} (limit {MAX_NONSIMPLICIAL_DIM})"
        )));
    }
    let facets = extreme_rays(d, &[], rays);
    let inside = |v: &[i128]| facets.iter().all(|f| linalg::dot(f, v) >= 0);

    let mut candidates: Vec<Vec<i128>> = rays.to_vec();
    for subset in combinations(rays.len(), d) {
        let basis: Vec<Vec<i128>> = subset.iter().map(|&i| rays[i].clone()).collect();
        if linalg::determinant(&basis) == 0 {
            continue;
        }
        for p in parallelepiped_points(&basis) {
            if !candidates.contains(&p) {
                candidates.push(p);
            }
        }
    }

    let mut basis: Vec<Vec<i128>> = candidates
        .iter()
        .filter(|h| {
            !candidates.iter().any(|g| {
                g != *h && {
                    let diff: Vec<i128> = h.iter().zip(g).map(|(a, b)| a - b).collect();
                    inside(&diff)
                }
            })
        })
        .cloned()
        .collect();
    basis.sort();
    Ok(basis)
}

/// Nonzero lattice points `sum λ_i b_i` with `0 <= λ_i < 1`.
fn parallelepiped_points(basis: &[Vec<i128>]) -> Vec<Vec<i128>> {
    let d = basis.len();
    // columns of B are the basis vectors; adj(B) x = det * λ
    let b: Vec<Vec<i128>> = (0..d).map(|i| basis.iter().map(|v| v[i]).collect()).collect();
    let det = linalg::determinant(&b);
    let adj = adjugate(&b);
    let lo: Vec<i128> = (0..d).map(|i| basis.iter().map(|v| v[i].min(0)).sum()).collect();
    let hi: Vec<i128> = (0..d).map(|i| basis.iter().map(|v| v[i].max(0)).sum()).collect();
    let mut out = Vec::new();
    let mut x = lo.clone();
    loop {
        if x.iter().any(|&c| c != 0) {
            let scaled = linalg::mat_vec(&adj, &x);
            let ok = scaled.iter().all(|&s| {
                let s = s * det.signum();
                s >= 0 && s < det.abs()
            });
            if ok {
                out.push(x.clone());
            }
        }
        let Some(i) = (0..d).find(|&i| x[i] < hi[i]) else {
            break;
        };
        x[i] += 1;
        for (j, xj) in x.iter_mut().enumerate().take(i) {
            *xj = lo[j];
        }
    }
    out
}
