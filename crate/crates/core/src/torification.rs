//! Torifications: decompositions of a variety into split tori `G_m^d`.
//!
//! Tori are kept in a deterministic order (cone order, lexicographic index or
//! permutation order, then coordinate subsets) so that every output is
//! reproducible.

use serde::{Deserialize, Serialize};

use crate::cells::{check_composition, schubert_cells_flag, schubert_cells_grassmannian, ChevalleyData};
use crate::lattice::Fan;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Torus {
    pub rank: usize,
    pub label: String,
}

/// A finite family of tori `T_i ≅ G_m^{d_i}`, optionally with an affine atlas
/// given as index sets `I_j` of the tori each chart contains.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Torification {
    tori: Vec<Torus>,
    charts: Option<Vec<Vec<usize>>>,
}

impl Torification {
    pub fn new(tori: Vec<Torus>, charts: Option<Vec<Vec<usize>>>) -> Torification {
        Torification { tori, charts }
    }

    pub fn empty() -> Torification {
        Torification::new(Vec::new(), Some(Vec::new()))
    }

    pub fn point() -> Torification {
        torus(0)
    }

    /// Largest torus rank, which is the dimension of the variety.
    pub fn dim(&self) -> usize {
        self.tori.iter().map(|t| t.rank).max().unwrap_or(0)
    }

    pub fn tori(&self) -> &[Torus] {
        &self.tori
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.tori.iter().map(|t| t.rank).collect()
    }

    pub fn charts(&self) -> Option<&[Vec<usize>]> {
        self.charts.as_deref()
    }

    pub fn is_affine(&self) -> bool {
        self.charts.is_some()
    }

    pub fn len(&self) -> usize {
        self.tori.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tori.is_empty()
    }

    fn relabel(mut self, prefix: &str) -> Torification {
        for t in &mut self.tori {
            t.label = format!("{prefix}/{}", t.label);
        }
        self
    }
}

/// The split torus `G_m^n` as a single piece.
pub fn torus(n: usize) -> Torification {
    Torification::new(
        vec![Torus {
            rank: n,
            label: format!("torus:{n}"),
        }],
        Some(vec![vec![0]]),
    )
}

/// `A^n = ⊔_J G_m^{|J|}` over coordinate subsets `J`, one chart.
pub fn torify_affine_space(n: usize) -> Torification {
    assert!(
        n < usize::BITS as usize,
        "affine space dimension too large to enumerate"
    );
    let tori: Vec<Torus> = (0..1usize << n)
        .map(|mask| {
            let coords: Vec<String> = (0..n)
                .filter(|i| mask & (1 << i) != 0)
                .map(|i| (i + 1).to_string())
                .collect();
            Torus {
                rank: mask.count_ones() as usize,
                label: format!("coords:{{{}}}", coords.join(",")),
            }
        })
        .collect();
    let all = (0..tori.len()).collect();
    Torification::new(tori, Some(vec![all]))
}

/// One torus `T_τ` of rank `n - dim τ` per cone, with the atlas of affine
/// charts `U_τ` for the maximal cones.
pub fn torify_toric(fan: &Fan) -> Result<Torification> {
    let fan = fan.clone().validated()?;
    let n = fan.ambient_dim();
    let cones = fan.cones();
    let tori = cones
        .iter()
        .enumerate()
        .map(|(i, c)| Torus {
            rank: n - c.dim(),
            label: format!("cone:{i}"),
        })
        .collect();
    let charts = fan
        .maximal_cones()
        .into_iter()
        .map(|m| {
            (0..cones.len())
                .filter(|&j| cones[j].is_subcone_of(&cones[m]))
                .collect()
        })
        .collect();
    Ok(Torification::new(tori, Some(charts)))
}

/// `T_i × S_j` for all pairs, of rank `d_i + e_j`. Charts are the pairwise
/// products when both factors are affine.
pub fn product(a: &Torification, b: &Torification) -> Torification {
    let nb = b.tori.len();
    let tori = a
        .tori
        .iter()
        .flat_map(|s| {
            b.tori.iter().map(move |t| Torus {
                rank: s.rank + t.rank,
                label: format!("{}×{}", s.label, t.label),
            })
        })
        .collect();
    let charts = match (&a.charts, &b.charts) {
        (Some(ca), Some(cb)) => Some(
            ca.iter()
                .flat_map(|ia| {
                    cb.iter().map(move |jb| {
                        ia.iter()
                            .flat_map(|&i| jb.iter().map(move |&j| i * nb + j))
                            .collect::<Vec<usize>>()
                    })
                })
                .map(|mut c| {
                    c.sort();
                    c
                })
                .collect(),
        ),
        _ => None,
    };
    Torification::new(tori, charts)
}

/// Concatenation of the parts. Charts survive only if every part has them.
pub fn disjoint_union(parts: &[Torification]) -> Torification {
    let mut tori = Vec::new();
    let mut charts = Some(Vec::new());
    for part in parts {
        let offset = tori.len();
        tori.extend(part.tori.iter().cloned());
        charts = match (charts, &part.charts) {
            (Some(mut acc), Some(pc)) => {
                acc.extend(pc.iter().map(|c| c.iter().map(|i| i + offset).collect()));
                Some(acc)
            }
            _ => None,
        };
    }
    Torification::new(tori, charts)
}

fn without_charts(mut t: Torification) -> Torification {
    t.charts = None;
    t
}

/// Schubert cells `C_i ≅ A^{dim}` each torified as affine space. The result
/// carries no atlas: the cell decomposition is not compatible with the
/// standard affine cover.
pub fn torify_grassmannian(k: usize, n: usize) -> Result<Torification> {
    let parts: Vec<Torification> = schubert_cells_grassmannian(k, n)?
        .into_iter()
        .map(|(idx, d)| torify_affine_space(d).relabel(&format!("schubert:{idx}")))
        .collect();
    Ok(without_charts(disjoint_union(&parts)))
}

pub fn torify_flag(parts: &[usize]) -> Result<Torification> {
    check_composition(parts)?;
    let cells: Vec<Torification> = schubert_cells_flag(parts)?
        .into_iter()
        .map(|(w, d)| torify_affine_space(d).relabel(&format!("schubert:w={w}")))
        .collect();
    Ok(without_charts(disjoint_union(&cells)))
}

/// `G = ⊔_w A^{s_w} × G_m^r × A^s`, with a single chart since `G` is affine.
pub fn torify_chevalley(data: &ChevalleyData) -> Result<Torification> {
    data.validate()?;
    let torus_part = torus(data.torus_rank);
    let unipotent = torify_affine_space(data.unipotent_dim);
    let cells: Vec<Torification> = data
        .cell_dims
        .iter()
        .enumerate()
        .map(|(i, &sw)| {
            let name = match &data.weyl_elements {
                Some(w) => format!("bruhat:w={},cell_dim={sw}", w[i]),
                None => format!("bruhat:cell={i},cell_dim={sw}"),
            };
            product(&product(&torify_affine_space(sw), &torus_part), &unipotent).relabel(&name)
        })
        .collect();
    let union = disjoint_union(&cells);
    let all = (0..union.len()).collect();
    Ok(Torification::new(union.tori, Some(vec![all])))
}

/// `δ_l` = number of tori of rank `l`, for `l = 0..=dim`; empty for the
/// empty torification.
pub fn delta_vector(t: &Torification) -> Vec<u64> {
    if t.tori.is_empty() {
        return Vec::new();
    }
    let mut delta = vec![0u64; t.dim() + 1];
    for torus in &t.tori {
        delta[torus.rank] += 1;
    }
    delta
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct AtlasReport {
    /// Torus indices contained in no chart.
    pub uncovered: Vec<usize>,
    /// `(chart, entry)` pairs naming a torus index that does not exist.
    pub invalid_entries: Vec<(usize, usize)>,
}

impl AtlasReport {
    pub fn is_valid(&self) -> bool {
        self.uncovered.is_empty() && self.invalid_entries.is_empty()
    }
}

pub fn check_atlas(t: &Torification) -> Result<AtlasReport> {
    let charts = t.charts.as_ref().ok_or(Error::MissingCharts)?;
    let mut covered = vec![false; t.tori.len()];
    let mut report = AtlasReport::default();
    for (c, chart) in charts.iter().enumerate() {
        for &i in chart {
            match covered.get_mut(i) {
                Some(slot) => *slot = true,
                None => report.invalid_entries.push((c, i)),
            }
        }
    }
    report.uncovered = (0..covered.len()).filter(|&i| !covered[i]).collect();
    Ok(report)
}

/// Orbit closures of a toric torification: the closure of the orbit of `τ` is
/// the union of the orbits of the cones containing `τ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegularityWitness {
    pub regular: bool,
    pub closures: Vec<Vec<usize>>,
}

pub fn is_regular_toric(fan: &Fan) -> Result<RegularityWitness> {
    let fan = fan.clone().validated()?;
    let cones = fan.cones();
    let closures: Vec<Vec<usize>> = cones
        .iter()
        .map(|tau| (0..cones.len()).filter(|&j| tau.is_subcone_of(&cones[j])).collect())
        .collect();
    // each closure must contain the closures of its own members
    let regular = closures
        .iter()
        .all(|star| star.iter().all(|&s| closures[s].iter().all(|x| star.contains(x))));
    Ok(RegularityWitness { regular, closures })
}
