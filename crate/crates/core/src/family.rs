//! Named varieties with built-in torifications and point-count oracles.

use std::fmt;

use crate::cells::chevalley_data_sl;
use crate::lattice::{standard_fan, Cone, Fan, FanKind};
use crate::torification::{
    torify_affine_space, torify_chevalley, torify_flag, torify_grassmannian, torify_toric, torus, Torification,
};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Family {
    Point,
    /// The split torus `G_m^n`.
    Gm(usize),
    /// `A^n` torified by coordinate subsets.
    Affine(usize),
    /// `P^n` through its standard fan.
    Projective(usize),
    Toric(Fan),
    Grassmannian(usize, usize),
    Flag(Vec<usize>),
    Sl(usize),
}

pub const FAMILY_NAMES: &[&str] = &[
    "point",
    "gm",
    "affine",
    "projective",
    "toric",
    "grassmannian",
    "flag",
    "sl",
];

impl Family {
    /// Parses a family name and its integer parameters. `toric` needs a fan and
    /// cannot be built here; use [`Family::Toric`] directly.
    pub fn parse(name: &str, params: &[usize]) -> Result<Family> {
        let want = |k: usize| -> Result<()> {
            if params.len() != k {
                return Err(Error::InvalidParameters {
                    family: name.to_string(),
                    reason: format!("expected {k} parameter(s), got {}", params.len()),
                });
            }
            Ok(())
        };
        match name {
            "point" => want(0).map(|_| Family::Point),
            "gm" | "torus" => want(1).map(|_| Family::Gm(params[0])),
            "affine" | "affine_space" => want(1).map(|_| Family::Affine(params[0])),
            "projective" | "projective_space" => want(1).map(|_| Family::Projective(params[0])),
            "grassmannian" | "gr" => {
                want(2)?;
                if params[0] > params[1] {
                    return Err(Error::InvalidParameters {
                        family: name.to_string(),
                        reason: format!("need k <= n, got k = {}, n = {}", params[0], params[1]),
                    });
                }
                Ok(Family::Grassmannian(params[0], params[1]))
            }
            "flag" => {
                crate::cells::check_composition(params)?;
                Ok(Family::Flag(params.to_vec()))
            }
            "sl" => {
                want(1)?;
                if params[0] == 0 {
                    return Err(Error::InvalidParameters {
                        family: name.to_string(),
                        reason: "need n >= 1".into(),
                    });
                }
                Ok(Family::Sl(params[0]))
            }
            "toric" => Err(Error::InvalidParameters {
                family: name.to_string(),
                reason: "toric varieties are given by a fan file".into(),
            }),
            other => Err(Error::UnknownFamily(other.to_string())),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Family::Point => "point",
            Family::Gm(_) => "gm",
            Family::Affine(_) => "affine",
            Family::Projective(_) => "projective",
            Family::Toric(_) => "toric",
            Family::Grassmannian(..) => "grassmannian",
            Family::Flag(_) => "flag",
            Family::Sl(_) => "sl",
        }
    }

    pub fn params(&self) -> Vec<usize> {
        match self {
            Family::Point | Family::Toric(_) => Vec::new(),
            Family::Gm(n) | Family::Affine(n) | Family::Projective(n) | Family::Sl(n) => vec![*n],
            Family::Grassmannian(k, n) => vec![*k, *n],
            Family::Flag(parts) => parts.clone(),
        }
    }

    /// Dimension of the variety.
    pub fn dim(&self) -> usize {
        match self {
            Family::Point => 0,
            Family::Gm(n) | Family::Affine(n) | Family::Projective(n) => *n,
            Family::Toric(fan) => fan.ambient_dim(),
            Family::Grassmannian(k, n) => k * (n - k),
            Family::Flag(parts) => {
                let n: usize = parts.iter().sum();
                (n * n - parts.iter().map(|d| d * d).sum::<usize>()) / 2
            }
            Family::Sl(n) => n * n - 1,
        }
    }

    /// The built-in torification of this variety.
    pub fn torify(&self) -> Result<Torification> {
        match self {
            Family::Point => Ok(Torification::point()),
            Family::Gm(n) => Ok(torus(*n)),
            Family::Affine(n) => Ok(torify_affine_space(*n)),
            Family::Projective(n) => torify_toric(&standard_fan(FanKind::ProjectiveSpace, *n)),
            Family::Toric(fan) => torify_toric(fan),
            Family::Grassmannian(k, n) => torify_grassmannian(*k, *n),
            Family::Flag(parts) => torify_flag(parts),
            Family::Sl(n) => torify_chevalley(&chevalley_data_sl(*n)?),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Family::Toric(fan) = self {
            return write!(f, "toric(dim={}, cones={})", fan.ambient_dim(), fan.len());
        }
        let p: Vec<String> = self.params().iter().map(|x| x.to_string()).collect();
        write!(f, "{}({})", self.name(), p.join(","))
    }
}

/// The affine toric surface of the cone `(1,0),(1,2)`, whose coordinate monoid
/// has the Hilbert basis `(0,1),(1,0),(2,-1)`.
pub fn singular_cone() -> Cone {
    Cone::new(2, &[vec![1, 0], vec![1, 2]]).expect("valid cone")
}

pub fn singular_surface_fan() -> Fan {
    Fan::with_faces(2, vec![singular_cone()])
}

/// Every composition of `n` into positive parts, in lexicographic order.
pub fn compositions(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in 1..=n {
        for mut rest in compositions(n - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// The corpus of varieties the test suites sweep: toric `P^1`, `P^2`, `A^n`
/// (`n <= 5`), `G_m^n` (`n <= 4`) and the singular surface; Grassmannians with
/// `n <= 6`; flag varieties with `n <= 4`; `SL(n)` with `n <= 3`.
pub fn builtin_corpus() -> Vec<Family> {
    let mut out = vec![
        Family::Toric(standard_fan(FanKind::ProjectiveSpace, 1)),
        Family::Toric(standard_fan(FanKind::ProjectiveSpace, 2)),
    ];
    out.extend((0..=5).map(|n| Family::Toric(standard_fan(FanKind::AffineSpace, n))));
    out.extend((0..=4).map(|n| Family::Toric(standard_fan(FanKind::Torus, n))));
    out.push(Family::Toric(singular_surface_fan()));
    for n in 0..=6 {
        out.extend((0..=n).map(|k| Family::Grassmannian(k, n)));
    }
    for n in 1..=4 {
        out.extend(compositions(n).into_iter().map(Family::Flag));
    }
    out.extend((1..=3).map(Family::Sl));
    out
}
