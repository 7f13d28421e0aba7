//! Affine monoids `A_τ = τ^∨ ∩ (Z^n)^∨`, their prime spectra and the monoid
//! scheme attached to a fan.

use serde::{Deserialize, Serialize};

use crate::lattice::{extreme_rays, faces, hilbert_basis_full, narrow, widen, Cone, Fan, LatticeVector};
use crate::linalg;
use crate::{Error, Result};

/// A finitely generated submonoid of a lattice, presented as
/// `A = <generators> ⊕ Z·unit_basis` with the generated part pointed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AffineMonoid {
    ambient_rank: usize,
    generators: Vec<LatticeVector>,
    unit_basis: Vec<LatticeVector>,
    source_cone: Option<Cone>,
}

impl AffineMonoid {
    /// A free-form monoid; operations that need the cone (such as [`spec`])
    /// are unavailable for it.
    pub fn new(
        ambient_rank: usize,
        generators: Vec<LatticeVector>,
        unit_basis: Vec<LatticeVector>,
    ) -> Result<AffineMonoid> {
        for v in generators.iter().chain(&unit_basis) {
            if v.len() != ambient_rank {
                return Err(Error::DimensionMismatch {
                    expected: ambient_rank,
                    found: v.len(),
                });
            }
        }
        let units: Vec<Vec<i128>> = unit_basis.iter().map(|v| widen(v)).collect();
        if linalg::rank(&units, ambient_rank) != units.len() {
            return Err(Error::ShapeMismatch("unit basis is not linearly independent".into()));
        }
        Ok(AffineMonoid {
            ambient_rank,
            generators,
            unit_basis,
            source_cone: None,
        })
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn generators(&self) -> &[LatticeVector] {
        &self.generators
    }

    pub fn unit_basis(&self) -> &[LatticeVector] {
        &self.unit_basis
    }

    pub fn source_cone(&self) -> Option<&Cone> {
        self.source_cone.as_ref()
    }

    /// Monoid generators including both signs of every unit basis vector:
    /// `generators ++ unit_basis ++ (-unit_basis)`.
    pub fn full_generators(&self) -> Vec<LatticeVector> {
        let mut out = self.generators.clone();
        out.extend(self.unit_basis.iter().cloned());
        out.extend(self.unit_basis.iter().map(|u| u.iter().map(|x| -x).collect()));
        out
    }

    /// Number of pointed generators followed by unit pairs in
    /// [`full_generators`](Self::full_generators).
    pub fn pointed_len(&self) -> usize {
        self.generators.len()
    }
}

/// `A_τ` with its Hilbert basis on the pointed part and a lattice basis of
/// `τ^⊥` as unit group.
pub fn monoid_of_cone(cone: &Cone) -> Result<AffineMonoid> {
    let frame = cone.frame();
    let local = cone.local_rays(&frame);
    let dual_rays = extreme_rays(frame.d, &[], &local);
    let basis = hilbert_basis_full(frame.d, &dual_rays)?;
    let mut generators = basis
        .iter()
        .map(|h| narrow(&frame.dual_from_local(h)))
        .collect::<Result<Vec<_>>>()?;
    generators.sort();
    let unit_basis = frame
        .annihilator()
        .iter()
        .map(|v| narrow(v))
        .collect::<Result<Vec<_>>>()?;
    Ok(AffineMonoid {
        ambient_rank: cone.ambient_dim(),
        generators,
        unit_basis,
        source_cone: Some(cone.clone()),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnitGroup {
    pub rank: usize,
    pub basis: Vec<LatticeVector>,
}

pub fn unit_group(monoid: &AffineMonoid) -> UnitGroup {
    UnitGroup {
        rank: monoid.unit_basis.len(),
        basis: monoid.unit_basis.clone(),
    }
}

/// A prime ideal of `A_τ`. Primes correspond to faces `σ` of `τ`: the prime is
/// the set of elements that do not vanish on `σ`, and localizing away from it
/// gives `A_σ`, whose unit group has rank `complement_rank = n - dim σ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonoidPrime {
    pub face_index: usize,
    pub face: Cone,
    pub complement_rank: usize,
    /// Indices into the pointed generators lying in the prime.
    pub ideal_generators: Vec<usize>,
}

pub fn spec(monoid: &AffineMonoid) -> Result<Vec<MonoidPrime>> {
    let cone = monoid.source_cone.as_ref().ok_or(Error::MissingSourceCone)?;
    let n = monoid.ambient_rank;
    Ok(faces(cone)
        .into_iter()
        .enumerate()
        .map(|(face_index, face)| {
            let ideal_generators = monoid
                .generators
                .iter()
                .enumerate()
                .filter(|(_, g)| face.rays().iter().any(|r| linalg::dot(&widen(g), &widen(r)) != 0))
                .map(|(i, _)| i)
                .collect();
            MonoidPrime {
                face_index,
                complement_rank: n - face.dim(),
                face,
                ideal_generators,
            }
        })
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DPoint {
    pub cone: usize,
    pub rank: usize,
    pub local_monoid: AffineMonoid,
}

/// The monoid scheme of a fan as a finite poset of points with local monoids.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DScheme {
    pub ambient_dim: usize,
    pub points: Vec<DPoint>,
    /// Strict specializations `(i, j)`: point `j` lies in the closure of point
    /// `i`, which happens iff cone `i` is a proper face of cone `j`.
    pub specialization: Vec<(usize, usize)>,
}

impl DScheme {
    /// Reflexive specialization relation.
    pub fn specializes(&self, i: usize, j: usize) -> bool {
        i == j || self.specialization.contains(&(i, j))
    }

    /// Points of rank `ambient_dim`: one generic point per irreducible component.
    pub fn generic_points(&self) -> Vec<usize> {
        (0..self.points.len())
            .filter(|&i| self.points[i].rank == self.ambient_dim)
            .collect()
    }

    pub fn is_connected(&self) -> bool {
        if self.points.is_empty() {
            return true;
        }
        let mut seen = vec![false; self.points.len()];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(i) = stack.pop() {
            for &(a, b) in &self.specialization {
                for (x, y) in [(a, b), (b, a)] {
                    if x == i && !seen[y] {
                        seen[y] = true;
                        stack.push(y);
                    }
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Local monoids are submonoids of a lattice, hence integral.
    pub fn is_integral(&self) -> bool {
        true
    }
}

pub fn dscheme_of_fan(fan: &Fan) -> Result<DScheme> {
    let fan = fan.clone().validated()?;
    let cones = fan.cones();
    let points = cones
        .iter()
        .enumerate()
        .map(|(i, c)| {
            Ok(DPoint {
                cone: i,
                rank: fan.ambient_dim() - c.dim(),
                local_monoid: monoid_of_cone(c)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let mut specialization = Vec::new();
    for (i, a) in cones.iter().enumerate() {
        for (j, b) in cones.iter().enumerate() {
            if i != j && a.is_subcone_of(b) {
                specialization.push((i, j));
            }
        }
    }
    Ok(DScheme {
        ambient_dim: fan.ambient_dim(),
        points,
        specialization,
    })
}

/// The monoid scheme of the single cone `cone` (the fan of its faces); its
/// points are the primes of `A_τ`.
pub fn dscheme_of_cone(cone: &Cone) -> Result<DScheme> {
    dscheme_of_fan(&Fan::with_faces(cone.ambient_dim(), vec![cone.clone()]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{standard_fan, FanKind};

    fn cone(n: usize, rays: &[&[i64]]) -> Cone {
        Cone::new(n, &rays.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn monoid_examples() {
        let a = monoid_of_cone(&cone(1, &[&[1]])).unwrap();
        assert_eq!(a.generators(), &[vec![1]]);
        assert!(a.unit_basis().is_empty());

        let a = monoid_of_cone(&Cone::zero(2)).unwrap();
        assert!(a.generators().is_empty());
        assert_eq!(unit_group(&a).rank, 2);

        let a = monoid_of_cone(&cone(2, &[&[1, 0], &[1, 2]])).unwrap();
        assert_eq!(a.generators(), &[vec![0, 1], vec![1, 0], vec![2, -1]]);
        assert!(a.unit_basis().is_empty());
    }

    #[test]
    fn monoid_of_a_ray_in_the_plane() {
        // τ = ray(1,0): A_τ = N ⊕ Z
        let a = monoid_of_cone(&cone(2, &[&[1, 0]])).unwrap();
        assert_eq!(unit_group(&a).rank, 1);
        assert_eq!(a.generators().len(), 1);
        let g = &a.generators()[0];
        let u = &a.unit_basis()[0];
        assert_eq!(u[0], 0);
        assert_eq!(g[0], 1);
    }

    #[test]
    fn unit_group_of_free_form_monoids() {
        let n2 = AffineMonoid::new(2, vec![vec![1, 0], vec![0, 1]], vec![]).unwrap();
        assert_eq!(unit_group(&n2).rank, 0);
        let z2 = AffineMonoid::new(2, vec![], vec![vec![1, 0], vec![0, 1]]).unwrap();
        assert_eq!(unit_group(&z2).rank, 2);
        let nz = AffineMonoid::new(2, vec![vec![1, 0]], vec![vec![0, 1]]).unwrap();
        assert_eq!(unit_group(&nz).rank, 1);
        assert_eq!(spec(&nz), Err(Error::MissingSourceCone));
    }

    #[test]
    fn spec_examples() {
        let full = monoid_of_cone(&cone(2, &[&[1, 0], &[1, 2]])).unwrap();
        let primes = spec(&full).unwrap();
        assert_eq!(primes.len(), 4);
        // {0} gives the empty prime, τ the maximal ideal containing every generator
        assert!(primes[0].ideal_generators.is_empty());
        assert_eq!(primes[0].complement_rank, 2);
        assert_eq!(primes[3].ideal_generators.len(), 3);
        assert_eq!(primes[3].complement_rank, 0);

        let group = monoid_of_cone(&Cone::zero(3)).unwrap();
        assert_eq!(spec(&group).unwrap().len(), 1);

        let nat = monoid_of_cone(&cone(1, &[&[1]])).unwrap();
        assert_eq!(spec(&nat).unwrap().len(), 2);
    }

    #[test]
    fn dscheme_examples() {
        let p1 = dscheme_of_fan(&standard_fan(FanKind::ProjectiveSpace, 1)).unwrap();
        assert_eq!(p1.points.iter().map(|p| p.rank).collect::<Vec<_>>(), vec![1, 0, 0]);
        assert_eq!(p1.generic_points(), vec![0]);
        assert!(p1.is_connected());

        let t = dscheme_of_fan(&standard_fan(FanKind::Torus, 3)).unwrap();
        assert_eq!(t.points.len(), 1);
        assert_eq!(t.points[0].rank, 3);

        let p2 = dscheme_of_fan(&standard_fan(FanKind::ProjectiveSpace, 2)).unwrap();
        assert_eq!(
            p2.points.iter().map(|p| p.rank).collect::<Vec<_>>(),
            vec![2, 1, 1, 1, 0, 0, 0]
        );
        // the generic point specializes to everything
        assert!((0..7).all(|j| p2.specializes(0, j)));
        assert!(!p2.specializes(4, 0));
    }

    #[test]
    fn dscheme_rejects_invalid_fans() {
        let bad = Fan::new(2, vec![cone(2, &[&[1, 0], &[0, 1]])]);
        assert!(matches!(dscheme_of_fan(&bad), Err(Error::InvalidFan(_))));
    }
}
