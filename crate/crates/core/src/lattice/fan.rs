use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::{faces, Cone, LatticeVector};
use crate::{Error, Result};

/// A finite collection of cones in `Z^n`, deduplicated and ordered by
/// (dimension, rays). The zero cone, when present, is always index 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fan {
    ambient_dim: usize,
    cones: Vec<Cone>,
}

impl Fan {
    /// Collects `cones` without checking the fan axioms; see [`validate_fan`].
    pub fn new(ambient_dim: usize, cones: Vec<Cone>) -> Fan {
        let set: BTreeSet<Cone> = cones.into_iter().collect();
        Fan {
            ambient_dim,
            cones: set.into_iter().collect(),
        }
    }

    /// Like [`Fan::new`] but adds every face of every cone.
    pub fn with_faces(ambient_dim: usize, cones: Vec<Cone>) -> Fan {
        let set: BTreeSet<Cone> = cones.iter().flat_map(faces).collect();
        Fan {
            ambient_dim,
            cones: set.into_iter().collect(),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn cones(&self) -> &[Cone] {
        &self.cones
    }

    pub fn len(&self) -> usize {
        self.cones.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cones.is_empty()
    }

    pub fn index_of(&self, cone: &Cone) -> Option<usize> {
        self.cones.binary_search(cone).ok()
    }

    /// Cones not properly contained in another cone of the fan.
    pub fn maximal_cones(&self) -> Vec<usize> {
        (0..self.cones.len())
            .filter(|&i| {
                !self
                    .cones
                    .iter()
                    .enumerate()
                    .any(|(j, c)| j != i && self.cones[i].is_subcone_of(c))
            })
            .collect()
    }

    /// Fails with `InvalidFan` unless the fan axioms hold.
    pub fn validated(self) -> Result<Fan> {
        let report = validate_fan(&self);
        if report.is_valid() {
            Ok(self)
        } else {
            Err(Error::InvalidFan(report.summary()))
        }
    }

    /// Distinct rays of the fan, sorted.
    pub fn rays(&self) -> Vec<LatticeVector> {
        let set: BTreeSet<LatticeVector> = self.cones.iter().flat_map(|c| c.rays().to_vec()).collect();
        set.into_iter().collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceViolation {
    pub missing_face: Cone,
    /// Indices of member cones that have this face.
    pub required_by: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntersectionViolation {
    pub first: usize,
    pub second: usize,
    pub intersection: Cone,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FanReport {
    pub dimension_mismatches: Vec<usize>,
    pub face_closure: Vec<FaceViolation>,
    pub intersection: Vec<IntersectionViolation>,
}

impl FanReport {
    pub fn is_valid(&self) -> bool {
        self.dimension_mismatches.is_empty() && self.face_closure.is_empty() && self.intersection.is_empty()
    }

    pub fn violation_count(&self) -> usize {
        self.dimension_mismatches.len() + self.face_closure.len() + self.intersection.len()
    }

    pub fn summary(&self) -> String {
        let mut parts = Vec::new();
        for i in &self.dimension_mismatches {
            parts.push(format!("cone {i} has the wrong ambient dimension"));
        }
        for v in &self.face_closure {
            parts.push(format!("missing face {} of cones {:?}", v.missing_face, v.required_by));
        }
        for v in &self.intersection {
            parts.push(format!(
                "cones {} and {} meet in {}, which is not a face of both",
                v.first, v.second, v.intersection
            ));
        }
        parts.join("; ")
    }
}

pub fn validate_fan(fan: &Fan) -> FanReport {
    let mut report = FanReport::default();
    let n = fan.ambient_dim;
    let cones = &fan.cones;
    report.dimension_mismatches = (0..cones.len()).filter(|&i| cones[i].ambient_dim() != n).collect();
    if !report.dimension_mismatches.is_empty() {
        return report;
    }
    let members: BTreeSet<&Cone> = cones.iter().collect();
    let face_lists: Vec<Vec<Cone>> = cones.iter().map(faces).collect();

    let mut missing: Vec<FaceViolation> = Vec::new();
    if cones.is_empty() {
        missing.push(FaceViolation {
            missing_face: Cone::zero(n),
            required_by: Vec::new(),
        });
    }
    for (i, fl) in face_lists.iter().enumerate() {
        for f in fl {
            if members.contains(f) {
                continue;
            }
            match missing.iter_mut().find(|v| &v.missing_face == f) {
                Some(v) => v.required_by.push(i),
                None => missing.push(FaceViolation {
                    missing_face: f.clone(),
                    required_by: vec![i],
                }),
            }
        }
    }
    missing.sort_by(|a, b| a.missing_face.cmp(&b.missing_face));
    report.face_closure = missing;

    for i in 0..cones.len() {
        for j in (i + 1)..cones.len() {
            let Ok(meet) = cones[i].intersection(&cones[j]) else {
                continue;
            };
            if !face_lists[i].contains(&meet) || !face_lists[j].contains(&meet) {
                report.intersection.push(IntersectionViolation {
                    first: i,
                    second: j,
                    intersection: meet,
                });
            }
        }
    }
    report
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FanKind {
    AffineSpace,
    ProjectiveSpace,
    Torus,
}

pub fn standard_fan(kind: FanKind, n: usize) -> Fan {
    let unit = |i: usize| -> LatticeVector { (0..n).map(|j| i64::from(i == j)).collect() };
    match kind {
        FanKind::Torus => Fan::new(n, vec![Cone::zero(n)]),
        FanKind::AffineSpace => {
            let orthant = Cone::new(n, &(0..n).map(unit).collect::<Vec<_>>()).expect("standard basis");
            Fan::with_faces(n, vec![orthant])
        }
        FanKind::ProjectiveSpace => {
            if n == 0 {
                return Fan::new(0, vec![Cone::zero(0)]);
            }
            let mut rays: Vec<LatticeVector> = (0..n).map(unit).collect();
            rays.push(vec![-1; n]);
            let maximal = (0..=n)
                .map(|skip| {
                    let r: Vec<LatticeVector> = rays
                        .iter()
                        .enumerate()
                        .filter(|&(i, _)| i != skip)
                        .map(|(_, r)| r.clone())
                        .collect();
                    Cone::new(n, &r).expect("standard projective cone")
                })
                .collect();
            Fan::with_faces(n, maximal)
        }
    }
}
