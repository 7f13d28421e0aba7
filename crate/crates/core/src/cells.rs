//! Schubert cells of Grassmannians and partial flag varieties, and Bruhat
//! cell data of split Chevalley groups.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::lattice::combinations;
use crate::{Error, Result};

/// Strictly increasing multi-index `1 <= i_1 < ... < i_k <= n`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SchubertIndex(Vec<usize>);

impl SchubertIndex {
    pub fn new(n: usize, entries: Vec<usize>) -> Result<SchubertIndex> {
        let increasing = entries.windows(2).all(|w| w[0] < w[1]);
        let bounded = entries.iter().all(|&i| (1..=n).contains(&i));
        if !increasing || !bounded {
            return Err(Error::InvalidParameters {
                family: "grassmannian".into(),
                reason: format!("{entries:?} is not a strictly increasing index set in 1..={n}"),
            });
        }
        Ok(SchubertIndex(entries))
    }

    pub fn entries(&self) -> &[usize] {
        &self.0
    }

    /// `sum_t (i_t - t)`.
    pub fn cell_dim(&self) -> usize {
        self.0.iter().enumerate().map(|(t, &i)| i - (t + 1)).sum()
    }

    /// Componentwise order; `X_i ⊆ X_j` iff `i <= j`.
    pub fn le(&self, other: &SchubertIndex) -> bool {
        self.0.len() == other.0.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }
}

impl fmt::Display for SchubertIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

/// A permutation of `{1..n}` in one-line notation.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(one_line: Vec<usize>) -> Result<Permutation> {
        let n = one_line.len();
        let mut seen = vec![false; n];
        for &v in &one_line {
            if v == 0 || v > n || seen[v - 1] {
                return Err(Error::InvalidParameters {
                    family: "permutation".into(),
                    reason: format!("{one_line:?} is not a permutation of 1..={n}"),
                });
            }
            seen[v - 1] = true;
        }
        Ok(Permutation(one_line))
    }

    pub fn identity(n: usize) -> Permutation {
        Permutation((1..=n).collect())
    }

    pub fn one_line(&self) -> &[usize] {
        &self.0
    }

    /// Coxeter length: number of inversions.
    pub fn length(&self) -> usize {
        let w = &self.0;
        (0..w.len())
            .flat_map(|i| ((i + 1)..w.len()).map(move |j| (i, j)))
            .filter(|&(i, j)| w[i] > w[j])
            .count()
    }

    /// All permutations of `{1..n}` in lexicographic order.
    pub fn all(n: usize) -> Vec<Permutation> {
        minimal_coset_representatives(&vec![1; n])
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sep = if self.0.len() > 9 { "," } else { "" };
        let parts: Vec<String> = self.0.iter().map(|v| v.to_string()).collect();
        write!(f, "{}", parts.join(sep))
    }
}

/// Permutations increasing within each block of `parts`, in lexicographic order
/// of their one-line notation.
fn minimal_coset_representatives(parts: &[usize]) -> Vec<Permutation> {
    fn go(parts: &[usize], remaining: &[usize], prefix: &mut Vec<usize>, out: &mut Vec<Permutation>) {
        let Some((&block, rest)) = parts.split_first() else {
            out.push(Permutation(prefix.clone()));
            return;
        };
        for chosen in combinations(remaining.len(), block) {
            let values: Vec<usize> = chosen.iter().map(|&i| remaining[i]).collect();
            let left: Vec<usize> = remaining
                .iter()
                .enumerate()
                .filter(|(i, _)| !chosen.contains(i))
                .map(|(_, &v)| v)
                .collect();
            let mark = prefix.len();
            prefix.extend(values);
            go(rest, &left, prefix, out);
            prefix.truncate(mark);
        }
    }
    let n: usize = parts.iter().sum();
    let mut out = Vec::new();
    go(parts, &(1..=n).collect::<Vec<_>>(), &mut Vec::new(), &mut out);
    out
}

/// Schubert cells of `Gr(k, n)`: all multi-indices in lexicographic order with
/// their cell dimensions.
pub fn schubert_cells_grassmannian(k: usize, n: usize) -> Result<Vec<(SchubertIndex, usize)>> {
    if k > n {
        return Err(Error::InvalidParameters {
            family: "grassmannian".into(),
            reason: format!("need 0 <= k <= n, got k = {k}, n = {n}"),
        });
    }
    Ok(combinations(n, k)
        .into_iter()
        .map(|c| {
            let idx = SchubertIndex(c.into_iter().map(|i| i + 1).collect());
            let d = idx.cell_dim();
            (idx, d)
        })
        .collect())
}

pub fn check_composition(parts: &[usize]) -> Result<()> {
    if parts.contains(&0) {
        return Err(Error::InvalidComposition(parts.to_vec()));
    }
    Ok(())
}

/// Schubert cells of the flag variety `X(d_1, ..., d_m)`, indexed by minimal
/// coset representatives, each with dimension equal to its length. The empty
/// composition describes the flag variety of `k^0`, a point.
pub fn schubert_cells_flag(parts: &[usize]) -> Result<Vec<(Permutation, usize)>> {
    check_composition(parts)?;
    Ok(minimal_coset_representatives(parts)
        .into_iter()
        .map(|w| {
            let l = w.length();
            (w, l)
        })
        .collect())
}

/// Bruhat data of a split Chevalley group: torus rank `r`, dimension `s` of the
/// unipotent radical and the multiset of cell dimensions `s_w = |Φ_w|`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChevalleyData {
    pub torus_rank: usize,
    pub unipotent_dim: usize,
    pub cell_dims: Vec<usize>,
    /// Weyl group elements matching `cell_dims`, when known.
    pub weyl_elements: Option<Vec<Permutation>>,
}

impl ChevalleyData {
    pub fn new(torus_rank: usize, unipotent_dim: usize, cell_dims: Vec<usize>) -> Result<ChevalleyData> {
        let data = ChevalleyData {
            torus_rank,
            unipotent_dim,
            cell_dims,
            weyl_elements: None,
        };
        data.validate()?;
        Ok(data)
    }

    pub fn validate(&self) -> Result<()> {
        let (Some(&max), Some(&min)) = (self.cell_dims.iter().max(), self.cell_dims.iter().min()) else {
            return Err(Error::InvalidChevalleyData("the Weyl group is never empty".into()));
        };
        if max != self.unipotent_dim {
            return Err(Error::InvalidChevalleyData(format!(
                "largest cell dimension {max} differs from the unipotent dimension {}",
                self.unipotent_dim
            )));
        }
        if min != 0 {
            return Err(Error::InvalidChevalleyData(format!(
                "smallest cell dimension is {min}, the identity cell has dimension 0"
            )));
        }
        if let Some(w) = &self.weyl_elements {
            if w.len() != self.cell_dims.len() {
                return Err(Error::InvalidChevalleyData(
                    "Weyl element count differs from cell count".into(),
                ));
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.torus_rank + 2 * self.unipotent_dim
    }
}

/// `SL(n)`: `r = n - 1`, `s = n(n-1)/2`, `s_w = ℓ(w)` for `w` in `S_n`.
pub fn chevalley_data_sl(n: usize) -> Result<ChevalleyData> {
    if n == 0 {
        return Err(Error::InvalidParameters {
            family: "sl".into(),
            reason: "need n >= 1".into(),
        });
    }
    let weyl = Permutation::all(n);
    Ok(ChevalleyData {
        torus_rank: n - 1,
        unipotent_dim: n * (n - 1) / 2,
        cell_dims: weyl.iter().map(Permutation::length).collect(),
        weyl_elements: Some(weyl),
    })
}
