use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::{extreme_rays, narrow, widen, Frame, LatticeVector, MAX_NONSIMPLICIAL_DIM};
use crate::linalg;
use crate::{Error, Result};

/// A strictly convex rational polyhedral cone, stored by its primitive extremal
/// rays in sorted order. The empty ray list is the zero cone.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Cone {
    ambient_dim: usize,
    dim: usize,
    rays: Vec<LatticeVector>,
}

impl Cone {
    pub fn zero(ambient_dim: usize) -> Cone {
        Cone {
            ambient_dim,
            dim: 0,
            rays: Vec::new(),
        }
    }

    /// Builds the cone spanned by `rays`. Every ray must be primitive; rays that
    /// are not extremal are dropped.
    pub fn new(ambient_dim: usize, rays: &[LatticeVector]) -> Result<Cone> {
        for r in rays {
            check_len(ambient_dim, r)?;
            let g = linalg::gcd_slice(&widen(r));
            if g == 0 {
                return Err(Error::ZeroRay);
            }
            if g != 1 {
                return Err(Error::NotPrimitive(r.clone()));
            }
        }
        Self::from_primitive(ambient_dim, rays)
    }

    /// Like [`Cone::new`] but divides each generator by the gcd of its
    /// coordinates first.
    pub fn from_generators(ambient_dim: usize, gens: &[LatticeVector]) -> Result<Cone> {
        let mut rays = Vec::with_capacity(gens.len());
        for g in gens {
            check_len(ambient_dim, g)?;
            let p = linalg::primitive(&widen(g));
            if p.iter().all(|&x| x == 0) {
                return Err(Error::ZeroRay);
            }
            rays.push(narrow(&p)?);
        }
        Self::from_primitive(ambient_dim, &rays)
    }

    fn from_primitive(ambient_dim: usize, rays: &[LatticeVector]) -> Result<Cone> {
        let mut uniq: Vec<LatticeVector> = rays.to_vec();
        uniq.sort();
        uniq.dedup();
        if uniq.is_empty() {
            return Ok(Cone::zero(ambient_dim));
        }
        let wide: Vec<Vec<i128>> = uniq.iter().map(|r| widen(r)).collect();
        let frame = Frame::of(ambient_dim, &wide);
        let local: Vec<Vec<i128>> = wide.iter().map(|r| frame.to_local(r).unwrap()).collect();
        let d = frame.d;
        let facets = extreme_rays(d, &[], &local);
        if linalg::rank(&facets, d) < d {
            return Err(Error::NotPointed);
        }
        let extremal: Vec<LatticeVector> = uniq
            .into_iter()
            .zip(&local)
            .filter(|(_, l)| {
                let tight: Vec<Vec<i128>> = facets.iter().filter(|f| linalg::dot(f, l) == 0).cloned().collect();
                linalg::rank(&tight, d) + 1 == d
            })
            .map(|(r, _)| r)
            .collect();
        Ok(Cone {
            ambient_dim,
            dim: d,
            rays: extremal,
        })
    }

    /// Builds a cone from a ray subset already known to be extremal and
    /// primitive (faces of an existing cone).
    fn from_extremal(ambient_dim: usize, mut rays: Vec<LatticeVector>) -> Cone {
        rays.sort();
        let dim = linalg::rank(&rays.iter().map(|r| widen(r)).collect(), ambient_dim);
        Cone { ambient_dim, dim, rays }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    /// Dimension of the linear span.
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rays(&self) -> &[LatticeVector] {
        &self.rays
    }

    pub fn is_zero(&self) -> bool {
        self.rays.is_empty()
    }

    pub fn is_simplicial(&self) -> bool {
        self.rays.len() == self.dim
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.dim == self.ambient_dim
    }

    pub(crate) fn frame(&self) -> Frame {
        let wide: Vec<Vec<i128>> = self.rays.iter().map(|r| widen(r)).collect();
        Frame::of(self.ambient_dim, &wide)
    }

    pub(crate) fn local_rays(&self, frame: &Frame) -> Vec<Vec<i128>> {
        self.rays
            .iter()
            .map(|r| frame.to_local(&widen(r)).expect("ray lies in its own span"))
            .collect()
    }

    /// Inequality and equality description in ambient coordinates:
    /// `v` is in the cone iff `<e, v> = 0` for all equalities and `<f, v> >= 0`
    /// for all facet normals.
    pub fn h_representation(&self) -> (Vec<Vec<i128>>, Vec<Vec<i128>>) {
        let frame = self.frame();
        let local = self.local_rays(&frame);
        let facets: Vec<Vec<i128>> = extreme_rays(frame.d, &[], &local)
            .iter()
            .map(|f| frame.dual_from_local(f))
            .collect();
        (frame.annihilator(), facets)
    }

    pub fn contains(&self, v: &[i64]) -> bool {
        if v.len() != self.ambient_dim {
            return false;
        }
        let v = widen(v);
        let (eqs, ineqs) = self.h_representation();
        eqs.iter().all(|e| linalg::dot(e, &v) == 0) && ineqs.iter().all(|f| linalg::dot(f, &v) >= 0)
    }

    /// True when every ray of `self` lies in `other` (so `self ⊆ other`).
    pub fn is_subcone_of(&self, other: &Cone) -> bool {
        self.rays.iter().all(|r| other.contains(r))
    }

    /// True when `self` is a face of `other`.
    pub fn is_face_of(&self, other: &Cone) -> bool {
        self.ambient_dim == other.ambient_dim && faces(other).contains(self)
    }

    /// Intersection with another cone of the same ambient dimension.
    pub fn intersection(&self, other: &Cone) -> Result<Cone> {
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim,
                found: other.ambient_dim,
            });
        }
        let (mut eqs, mut ineqs) = self.h_representation();
        let (e2, i2) = other.h_representation();
        eqs.extend(e2);
        ineqs.extend(i2);
        let rays = extreme_rays(self.ambient_dim, &eqs, &ineqs)
            .iter()
            .map(|r| narrow(r))
            .collect::<Result<Vec<_>>>()?;
        Cone::new(self.ambient_dim, &rays)
    }
}

impl fmt::Display for Cone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rays.is_empty() {
            return write!(f, "{{0}}");
        }
        write!(f, "cone(")?;
        for (i, r) in self.rays.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "(")?;
            for (j, x) in r.iter().enumerate() {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, ")")?;
        }
        write!(f, ")")
    }
}

fn check_len(n: usize, v: &[i64]) -> Result<()> {
    if v.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: v.len(),
        });
    }
    Ok(())
}

/// The dual cone `{u : <u, v> >= 0 for v in τ}`, split as a pointed part plus a
/// lineality space. The lineality space is `τ^⊥`; `rays` together with
/// `lineality` generate the dual as a cone, and the two lattices they span form
/// a direct sum decomposition of `(Z^n)^∨ ∩ span`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualCone {
    pub ambient_dim: usize,
    pub rays: Vec<LatticeVector>,
    pub lineality: Vec<LatticeVector>,
}

impl DualCone {
    /// The dual as a [`Cone`]; fails with `NotPointed` when a lineality space
    /// remains.
    pub fn into_cone(self) -> Result<Cone> {
        if !self.lineality.is_empty() {
            return Err(Error::NotPointed);
        }
        Cone::new(self.ambient_dim, &self.rays)
    }
}

pub fn dual_cone(cone: &Cone) -> Result<DualCone> {
    if !cone.is_simplicial() && cone.ambient_dim > MAX_NONSIMPLICIAL_DIM {
        return Err(Error::UnsupportedDimension(format!(
            "dual of a non-simplicial cone in dimension {} (limit {MAX_NONSIMPLICIAL_DIM})",
            cone.ambient_dim
        )));
    }
    let frame = cone.frame();
    let local = cone.local_rays(&frame);
    let mut rays = extreme_rays(frame.d, &[], &local)
        .iter()
        .map(|f| narrow(&frame.dual_from_local(f)))
        .collect::<Result<Vec<_>>>()?;
    rays.sort();
    let lineality = frame
        .annihilator()
        .iter()
        .map(|v| narrow(v))
        .collect::<Result<Vec<_>>>()?;
    Ok(DualCone {
        ambient_dim: cone.ambient_dim,
        rays,
        lineality,
    })
}

/// All faces of `cone`, from `{0}` up to the cone itself, ordered by
/// dimension then rays.
pub fn faces(cone: &Cone) -> Vec<Cone> {
    let n = cone.rays.len();
    let frame = cone.frame();
    let local = cone.local_rays(&frame);
    let facets = extreme_rays(frame.d, &[], &local);
    let zero_sets: Vec<BTreeSet<usize>> = facets
        .iter()
        .map(|f| (0..n).filter(|&i| linalg::dot(f, &local[i]) == 0).collect())
        .collect();
    let mut found: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
    let mut frontier = vec![(0..n).collect::<BTreeSet<usize>>()];
    while let Some(face) = frontier.pop() {
        if !found.insert(face.clone()) {
            continue;
        }
        for z in &zero_sets {
            let next: BTreeSet<usize> = face.intersection(z).copied().collect();
            if next != face && !found.contains(&next) {
                frontier.push(next);
            }
        }
    }
    let mut out: Vec<Cone> = found
        .into_iter()
        .map(|idx| {
            Cone::from_extremal(
                cone.ambient_dim,
                idx.into_iter().map(|i| cone.rays[i].clone()).collect(),
            )
        })
        .collect();
    out.sort();
    out
}

/// True iff the rays extend to a basis of `Z^n`: the cone is simplicial and
/// every elementary divisor of the ray matrix is 1.
pub fn is_smooth(cone: &Cone) -> bool {
    if !cone.is_simplicial() {
        return false;
    }
    let m: Vec<Vec<i128>> = cone.rays.iter().map(|r| widen(r)).collect();
    linalg::smith_divisors(&m, cone.ambient_dim).iter().all(|&d| d == 1)
}
