//! Point-set functors of F1 gadgets.
//!
//! * The CC functor sends a finite abelian group `D` to `⊔_i Hom(A_i, D) =
//!   ⊔_i D^{d_i}`, graded by torus rank.
//! * The Soulé local functor sends `R` to `Hom(A_τ, μ(R)_0)`; with `μ(R)`
//!   modeled as a cyclic group of order `m` this is counted by faces,
//!   `Σ_{σ ⊆ τ} m^{n - dim σ}`, and independently by brute-force enumeration
//!   of semigroup homomorphisms.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::counting::{counting_polynomial, eval_counting};
use crate::lattice::{faces, widen, Cone, Fan, LatticeVector};
use crate::linalg;
use crate::monoid::{monoid_of_cone, AffineMonoid};
use crate::torification::Torification;
use crate::{Error, Result};

/// Element budget for full enumerations.
pub const DEFAULT_BUDGET: u64 = 1_000_000;

/// Relation search radius used by [`enumerate_monoid_homs`].
pub const DEFAULT_RELATION_BOUND: i64 = 6;

/// `Z/m_1 × ... × Z/m_r`; elements are residue tuples.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FiniteAbelianGroup {
    orders: Vec<u64>,
}

pub type GroupElement = Vec<u64>;

impl FiniteAbelianGroup {
    pub fn new(orders: Vec<u64>) -> Result<FiniteAbelianGroup> {
        if orders.contains(&0) {
            return Err(Error::InvalidGroup("cyclic factor orders must be >= 1".into()));
        }
        let g = FiniteAbelianGroup { orders };
        g.order_checked()
            .ok_or_else(|| Error::InvalidGroup("group order overflows u64".into()))?;
        Ok(g)
    }

    pub fn trivial() -> FiniteAbelianGroup {
        FiniteAbelianGroup { orders: Vec::new() }
    }

    pub fn cyclic_orders(&self) -> &[u64] {
        &self.orders
    }

    fn order_checked(&self) -> Option<u64> {
        self.orders.iter().try_fold(1u64, |acc, &m| acc.checked_mul(m))
    }

    pub fn order(&self) -> u64 {
        self.order_checked().expect("checked at construction")
    }

    pub fn identity(&self) -> GroupElement {
        vec![0; self.orders.len()]
    }

    pub fn add(&self, a: &[u64], b: &[u64]) -> GroupElement {
        a.iter()
            .zip(b)
            .zip(&self.orders)
            .map(|((x, y), m)| (x + y) % m)
            .collect()
    }

    /// `k · a` for any integer `k`.
    pub fn scale(&self, k: i64, a: &[u64]) -> GroupElement {
        a.iter()
            .zip(&self.orders)
            .map(|(&x, &m)| {
                let km = i128::from(k).rem_euclid(i128::from(m));
                ((km * i128::from(x)) % i128::from(m)) as u64
            })
            .collect()
    }

    /// Elements in mixed-radix order, first factor varying fastest.
    pub fn elements(&self) -> Vec<GroupElement> {
        let mut out = Vec::with_capacity(self.order() as usize);
        let mut e = self.identity();
        loop {
            out.push(e.clone());
            let Some(i) = (0..e.len()).find(|&i| e[i] + 1 < self.orders[i]) else {
                break;
            };
            e[i] += 1;
            for x in e.iter_mut().take(i) {
                *x = 0;
            }
        }
        out
    }

    /// All isomorphism types of order `n`, as invariant factor lists
    /// `m_1 | m_2 | ...`.
    pub fn isomorphism_types(n: u64) -> Vec<FiniteAbelianGroup> {
        fn go(rem: u64, prev: u64) -> Vec<Vec<u64>> {
            if rem == 1 {
                return vec![Vec::new()];
            }
            let mut out = Vec::new();
            for m in 2..=rem {
                if rem.is_multiple_of(m) && m.is_multiple_of(prev) {
                    for mut tail in go(rem / m, m) {
                        tail.insert(0, m);
                        out.push(tail);
                    }
                }
            }
            out
        }
        go(n, 1)
            .into_iter()
            .map(|orders| FiniteAbelianGroup { orders })
            .collect()
    }

    /// Every isomorphism type of order at most `n`.
    pub fn all_up_to(n: u64) -> Vec<FiniteAbelianGroup> {
        (1..=n).flat_map(Self::isomorphism_types).collect()
    }

    /// The reduction map onto `target`, defined when both have the same number
    /// of cyclic factors and each target order divides the source order.
    pub fn reduction_to(&self, target: &FiniteAbelianGroup) -> Result<GroupReduction> {
        let ok =
            self.orders.len() == target.orders.len() && self.orders.iter().zip(&target.orders).all(|(m, t)| m % t == 0);
        if !ok {
            return Err(Error::ShapeMismatch(format!(
                "no componentwise reduction from {:?} to {:?}",
                self.orders, target.orders
            )));
        }
        Ok(GroupReduction { target: target.clone() })
    }
}

/// Componentwise reduction `Z/m_i → Z/m'_i` with `m'_i | m_i`.
#[derive(Clone, Debug)]
pub struct GroupReduction {
    target: FiniteAbelianGroup,
}

impl GroupReduction {
    pub fn apply(&self, a: &[u64]) -> GroupElement {
        a.iter().zip(&self.target.orders).map(|(x, m)| x % m).collect()
    }

    pub fn apply_point(&self, p: &CcPoint) -> CcPoint {
        CcPoint {
            torus: p.torus,
            coords: p.coords.iter().map(|c| self.apply(c)).collect(),
        }
    }
}

/// A point of `Hom(A_i, D) = D^{d_i}` on torus `i`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CcPoint {
    pub torus: usize,
    pub coords: Vec<GroupElement>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Enumeration {
    Full,
    CountsOnly,
}

/// `X(D) = ⊔_i D^{d_i}` with its grading by rank.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedPointSet {
    pub group: FiniteAbelianGroup,
    pub ranks: Vec<usize>,
    pub torus_counts: Vec<BigUint>,
    /// Present in full enumeration mode; ordered by torus, then mixed radix.
    pub points: Option<Vec<CcPoint>>,
}

impl GradedPointSet {
    pub fn cardinality(&self) -> BigUint {
        self.torus_counts.iter().sum()
    }

    /// Cardinality of each graded piece `X^{(l)}(D)`, `l = 0..=max rank`.
    pub fn grade_counts(&self) -> Vec<BigUint> {
        let top = self.ranks.iter().copied().max().map_or(0, |r| r + 1);
        let mut out = vec![BigUint::zero(); top];
        for (r, c) in self.ranks.iter().zip(&self.torus_counts) {
            out[*r] += c;
        }
        out
    }

    pub fn grade_of(&self, p: &CcPoint) -> usize {
        self.ranks[p.torus]
    }

    pub fn grade(&self, l: usize) -> Vec<&CcPoint> {
        self.points
            .iter()
            .flatten()
            .filter(|p| self.ranks[p.torus] == l)
            .collect()
    }
}

/// Evaluates the CC functor of `t` at `group`. Full mode fails with
/// `BudgetExceeded` when more than `budget` points would be listed.
pub fn cc_points(
    t: &Torification,
    group: &FiniteAbelianGroup,
    mode: Enumeration,
    budget: u64,
) -> Result<GradedPointSet> {
    let ranks = t.ranks();
    let order = BigUint::from(group.order());
    let torus_counts: Vec<BigUint> = ranks.iter().map(|&d| order.pow(d as u32)).collect();
    let total: BigUint = torus_counts.iter().sum();
    let points = match mode {
        Enumeration::CountsOnly => None,
        Enumeration::Full => {
            if total > BigUint::from(budget) {
                return Err(Error::BudgetExceeded {
                    needed: total.to_string(),
                    budget,
                });
            }
            let elements = group.elements();
            let mut pts = Vec::with_capacity(total.to_usize().unwrap_or(0));
            for (i, &d) in ranks.iter().enumerate() {
                let mut idx = vec![0usize; d];
                loop {
                    pts.push(CcPoint {
                        torus: i,
                        coords: idx.iter().map(|&k| elements[k].clone()).collect(),
                    });
                    let Some(j) = (0..d).find(|&j| idx[j] + 1 < elements.len()) else {
                        break;
                    };
                    idx[j] += 1;
                    for x in idx.iter_mut().take(j) {
                        *x = 0;
                    }
                }
            }
            Some(pts)
        }
    };
    Ok(GradedPointSet {
        group: group.clone(),
        ranks,
        torus_counts,
        points,
    })
}

/// Full enumeration when within `budget`, counts otherwise.
pub fn cc_points_auto(t: &Torification, group: &FiniteAbelianGroup, budget: u64) -> Result<GradedPointSet> {
    match cc_points(t, group, Enumeration::Full, budget) {
        Err(Error::BudgetExceeded { .. }) => cc_points(t, group, Enumeration::CountsOnly, budget),
        other => other,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CardinalityCheck {
    pub group: Vec<u64>,
    /// `#X(D)`, counted from listed points when they were enumerated.
    pub points: String,
    /// `N(|D| + 1)`.
    pub counting_value: String,
    pub enumerated: bool,
    pub agrees: bool,
}

/// Checks `#X(D) = N(|D| + 1)`.
pub fn cc_cardinality_check(t: &Torification, group: &FiniteAbelianGroup, budget: u64) -> Result<CardinalityCheck> {
    let set = cc_points_auto(t, group, budget)?;
    let (points, enumerated) = match &set.points {
        Some(p) => (BigUint::from(p.len()), true),
        None => (set.cardinality(), false),
    };
    let q = num_bigint::BigInt::from(group.order()) + 1;
    let n = eval_counting(&counting_polynomial(t), &q);
    let agrees = num_bigint::BigInt::from(points.clone()) == n;
    Ok(CardinalityCheck {
        group: group.cyclic_orders().to_vec(),
        points: points.to_string(),
        counting_value: n.to_string(),
        enumerated,
        agrees,
    })
}

/// A torified morphism on the level of tori: torus `i` of the source goes to
/// torus `index_map[i]` of the target through the integer matrix
/// `matrices[i]` (`target rank × source rank`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorifiedMap {
    source_ranks: Vec<usize>,
    target_ranks: Vec<usize>,
    index_map: Vec<usize>,
    matrices: Vec<Vec<Vec<i64>>>,
}

impl TorifiedMap {
    pub fn new(
        source: &Torification,
        target: &Torification,
        index_map: Vec<usize>,
        matrices: Vec<Vec<Vec<i64>>>,
    ) -> Result<TorifiedMap> {
        let map = TorifiedMap {
            source_ranks: source.ranks(),
            target_ranks: target.ranks(),
            index_map,
            matrices,
        };
        map.check_shapes()?;
        Ok(map)
    }

    fn check_shapes(&self) -> Result<()> {
        if self.index_map.len() != self.source_ranks.len() || self.matrices.len() != self.source_ranks.len() {
            return Err(Error::ShapeMismatch(format!(
                "{} source tori but {} index entries and {} matrices",
                self.source_ranks.len(),
                self.index_map.len(),
                self.matrices.len()
            )));
        }
        for (i, (&j, m)) in self.index_map.iter().zip(&self.matrices).enumerate() {
            let Some(&tr) = self.target_ranks.get(j) else {
                return Err(Error::ShapeMismatch(format!(
                    "torus {i} maps to missing target torus {j}"
                )));
            };
            let sr = self.source_ranks[i];
            if m.len() != tr || m.iter().any(|row| row.len() != sr) {
                return Err(Error::ShapeMismatch(format!("matrix for torus {i} must be {tr}×{sr}")));
            }
        }
        Ok(())
    }

    pub fn identity(t: &Torification) -> TorifiedMap {
        let ranks = t.ranks();
        let matrices = ranks
            .iter()
            .map(|&d| (0..d).map(|r| (0..d).map(|c| i64::from(r == c)).collect()).collect())
            .collect();
        TorifiedMap {
            source_ranks: ranks.clone(),
            target_ranks: ranks.clone(),
            index_map: (0..ranks.len()).collect(),
            matrices,
        }
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &TorifiedMap) -> Result<TorifiedMap> {
        if first.target_ranks != self.source_ranks {
            return Err(Error::ShapeMismatch("maps are not composable".into()));
        }
        let index_map = first.index_map.iter().map(|&j| self.index_map[j]).collect();
        let matrices = first
            .index_map
            .iter()
            .zip(&first.matrices)
            .zip(&first.source_ranks)
            .map(|((&j, f), &cols)| {
                let g = &self.matrices[j];
                g.iter()
                    .map(|grow| {
                        (0..cols)
                            .map(|c| grow.iter().zip(f).map(|(a, frow)| a * frow[c]).sum())
                            .collect()
                    })
                    .collect()
            })
            .collect();
        let composed = TorifiedMap {
            source_ranks: first.source_ranks.clone(),
            target_ranks: self.target_ranks.clone(),
            index_map,
            matrices,
        };
        composed.check_shapes()?;
        Ok(composed)
    }

    pub fn index_map(&self) -> &[usize] {
        &self.index_map
    }

    pub fn target_ranks(&self) -> &[usize] {
        &self.target_ranks
    }

    /// `x ↦ M_i x` on `D^{d_i}`.
    pub fn apply(&self, group: &FiniteAbelianGroup, p: &CcPoint) -> Result<CcPoint> {
        let m = self
            .matrices
            .get(p.torus)
            .ok_or_else(|| Error::ShapeMismatch(format!("no torus {}", p.torus)))?;
        if p.coords.len() != self.source_ranks[p.torus] {
            return Err(Error::ShapeMismatch("point has the wrong rank".into()));
        }
        let coords = m
            .iter()
            .map(|row| {
                row.iter()
                    .zip(&p.coords)
                    .fold(group.identity(), |acc, (&k, x)| group.add(&acc, &group.scale(k, x)))
            })
            .collect();
        Ok(CcPoint {
            torus: self.index_map[p.torus],
            coords,
        })
    }
}

/// Images of every point of `points` under `f`, in the order of `points`.
pub fn induced_map(f: &TorifiedMap, points: &GradedPointSet) -> Result<Vec<CcPoint>> {
    if points.ranks != f.source_ranks {
        return Err(Error::ShapeMismatch(
            "point set does not belong to the source torification".into(),
        ));
    }
    let list = points
        .points
        .as_ref()
        .ok_or_else(|| Error::ShapeMismatch("point set was evaluated in counts-only mode".into()))?;
    list.iter().map(|p| f.apply(&points.group, p)).collect()
}

/// `μ_m ∪ {0}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CyclicMonoidWithZero {
    pub m: u64,
}

/// An element of `μ_m ∪ {0}`: zero, or `ζ^k` stored as its exponent.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MuElem {
    Zero,
    Root(u64),
}

impl MuElem {
    /// `-1` for zero, the exponent otherwise.
    pub fn code(self) -> i64 {
        match self {
            MuElem::Zero => -1,
            MuElem::Root(k) => k as i64,
        }
    }
}

impl Serialize for MuElem {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_i64(self.code())
    }
}

impl CyclicMonoidWithZero {
    pub fn new(m: u64) -> Result<CyclicMonoidWithZero> {
        if m == 0 {
            return Err(Error::InvalidGroup("μ_m needs m >= 1".into()));
        }
        Ok(CyclicMonoidWithZero { m })
    }

    pub fn elements(&self) -> Vec<MuElem> {
        std::iter::once(MuElem::Zero)
            .chain((0..self.m).map(MuElem::Root))
            .collect()
    }

    pub fn mul(&self, a: MuElem, b: MuElem) -> MuElem {
        match (a, b) {
            (MuElem::Root(x), MuElem::Root(y)) => MuElem::Root((x + y) % self.m),
            _ => MuElem::Zero,
        }
    }

    pub fn pow(&self, a: MuElem, k: u64) -> MuElem {
        match (a, k) {
            (_, 0) => MuElem::Root(0),
            (MuElem::Zero, _) => MuElem::Zero,
            (MuElem::Root(x), k) => MuElem::Root(((u128::from(x) * u128::from(k)) % u128::from(self.m)) as u64),
        }
    }
}

/// `Σ_{σ ⊆ τ} m^{rank A_σ^×}`.
pub fn soule_count_by_faces(monoid: &AffineMonoid, m: u64) -> Result<BigUint> {
    let cone = monoid.source_cone().ok_or(Error::MissingSourceCone)?;
    let n = cone.ambient_dim();
    Ok(faces(cone)
        .iter()
        .map(|f| BigUint::from(m).pow((n - f.dim()) as u32))
        .sum())
}

/// `Σ lhs_i g_i = Σ rhs_i g_i` over [`AffineMonoid::full_generators`].
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BinomialRelation {
    pub lhs: Vec<u32>,
    pub rhs: Vec<u32>,
}

impl BinomialRelation {
    fn from_kernel_vector(v: &[i64]) -> BinomialRelation {
        BinomialRelation {
            lhs: v.iter().map(|&x| x.max(0) as u32).collect(),
            rhs: v.iter().map(|&x| (-x).max(0) as u32).collect(),
        }
    }

    /// True when `other` (in either orientation) fits inside `self`, which
    /// makes `self` a consequence of `other` and a smaller relation.
    fn implied_by(&self, other: &BinomialRelation) -> bool {
        let le = |a: &[u32], b: &[u32]| a.iter().zip(b).all(|(x, y)| x <= y);
        (le(&other.lhs, &self.lhs) && le(&other.rhs, &self.rhs))
            || (le(&other.rhs, &self.lhs) && le(&other.lhs, &self.rhs))
    }

    fn holds(&self, target: &CyclicMonoidWithZero, values: &[MuElem]) -> bool {
        let side = |coeffs: &[u32]| {
            coeffs.iter().zip(values).fold(MuElem::Root(0), |acc, (&c, &v)| {
                target.mul(acc, target.pow(v, u64::from(c)))
            })
        };
        side(&self.lhs) == side(&self.rhs)
    }
}

/// Binomial relations among the full generators: all integer kernel vectors of
/// the generator matrix with entries in `[-bound, bound]`, reduced to those not
/// implied by a smaller one.
pub fn discover_relations(monoid: &AffineMonoid, bound: i64) -> Result<Vec<BinomialRelation>> {
    let gens = monoid.full_generators();
    let g = gens.len();
    let n = monoid.ambient_rank();
    let wide: Vec<Vec<i128>> = gens.iter().map(|v| widen(v)).collect();
    let expected = g - linalg::rank(&wide, n);

    // rem[i][j]: largest |partial sum| in coordinate j the tail i.. can cancel
    let mut rem = vec![vec![0i64; n]; g + 1];
    for i in (0..g).rev() {
        for j in 0..n {
            rem[i][j] = rem[i + 1][j] + bound * gens[i][j].abs();
        }
    }
    let mut found: Vec<Vec<i64>> = Vec::new();
    let mut coeffs = vec![0i64; g];
    let mut partial = vec![0i64; n];
    search(&gens, &rem, bound, 0, false, &mut coeffs, &mut partial, &mut found);

    let rank_found = linalg::rank(&found.iter().map(|v| widen(v)).collect(), g);
    if rank_found < expected {
        return Err(Error::BoundTooSmall {
            bound,
            found: rank_found,
            expected,
        });
    }
    let rels: Vec<BinomialRelation> = found.iter().map(|v| BinomialRelation::from_kernel_vector(v)).collect();
    let mut minimal: Vec<BinomialRelation> = rels
        .iter()
        .filter(|r| !rels.iter().any(|o| o != *r && r.implied_by(o)))
        .cloned()
        .collect();
    minimal.sort();
    Ok(minimal)
}

#[allow(clippy::too_many_arguments)]
fn search(
    gens: &[LatticeVector],
    rem: &[Vec<i64>],
    bound: i64,
    i: usize,
    started: bool,
    coeffs: &mut Vec<i64>,
    partial: &mut Vec<i64>,
    found: &mut Vec<Vec<i64>>,
) {
    if partial.iter().zip(&rem[i]).any(|(s, r)| s.abs() > *r) {
        return;
    }
    if i == gens.len() {
        if started && partial.iter().all(|&s| s == 0) {
            found.push(coeffs.clone());
        }
        return;
    }
    // the first nonzero coefficient is positive, fixing the sign of each relation
    let lo = if started { -bound } else { 0 };
    for c in lo..=bound {
        coeffs[i] = c;
        for (p, x) in partial.iter_mut().zip(&gens[i]) {
            *p += c * x;
        }
        search(gens, rem, bound, i + 1, started || c != 0, coeffs, partial, found);
        for (p, x) in partial.iter_mut().zip(&gens[i]) {
            *p -= c * x;
        }
    }
    coeffs[i] = 0;
}

/// A semigroup homomorphism `A_τ → μ_m ∪ {0}` given by its values on the full
/// generators, with the face `σ` of `τ` it is supported on.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MonoidHom {
    pub values: Vec<MuElem>,
    pub support_face: usize,
}

/// A character of the unit group `A_σ^× = σ^⊥ ∩ Z^n`, by its values (as
/// exponents mod `m`) on a lattice basis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UnitCharacter {
    pub face: usize,
    pub basis: Vec<LatticeVector>,
    pub values: Vec<u64>,
}

/// Generators and the faces of the source cone, prepared once per monoid.
struct HomContext {
    gens: Vec<LatticeVector>,
    faces: Vec<Cone>,
}

impl HomContext {
    fn new(monoid: &AffineMonoid) -> Result<HomContext> {
        let cone = monoid.source_cone().ok_or(Error::MissingSourceCone)?;
        Ok(HomContext {
            gens: monoid.full_generators(),
            faces: faces(cone),
        })
    }

    fn vanishes_on(&self, g: &[i64], face: &Cone) -> bool {
        face.rays().iter().all(|r| linalg::dot(&widen(g), &widen(r)) == 0)
    }

    /// The smallest face on which the nonzero generators all vanish.
    fn support_face(&self, values: &[MuElem]) -> Result<usize> {
        let nonzero: Vec<&LatticeVector> = self
            .gens
            .iter()
            .zip(values)
            .filter(|(_, v)| **v != MuElem::Zero)
            .map(|(g, _)| g)
            .collect();
        let top = self.faces.last().expect("a cone has at least one face");
        let rays: Vec<LatticeVector> = top
            .rays()
            .iter()
            .filter(|r| nonzero.iter().all(|g| linalg::dot(&widen(g), &widen(r)) == 0))
            .cloned()
            .collect();
        self.faces
            .iter()
            .position(|f| f.rays() == rays.as_slice())
            .ok_or_else(|| Error::ShapeMismatch("nonzero set of the hom does not cut out a face".into()))
    }

    fn unit_basis(&self, face: usize) -> Vec<LatticeVector> {
        let f = &self.faces[face];
        f.frame()
            .annihilator()
            .iter()
            .map(|v| v.iter().map(|&x| x as i64).collect())
            .collect()
    }
}

fn check_budget(monoid: &AffineMonoid, m: u64, budget: u64) -> Result<()> {
    let g = monoid.full_generators().len() as u32;
    let needed = BigUint::from(m + 1).pow(g);
    if needed > BigUint::from(budget) {
        return Err(Error::BudgetExceeded {
            needed: needed.to_string(),
            budget,
        });
    }
    Ok(())
}

/// Every semigroup homomorphism `A → μ_m ∪ {0}`, using relations found with
/// [`DEFAULT_RELATION_BOUND`].
pub fn enumerate_monoid_homs(
    monoid: &AffineMonoid,
    target: &CyclicMonoidWithZero,
    budget: u64,
) -> Result<Vec<MonoidHom>> {
    let relations = discover_relations(monoid, DEFAULT_RELATION_BOUND)?;
    enumerate_monoid_homs_with(monoid, target, &relations, budget)
}

pub fn enumerate_monoid_homs_with(
    monoid: &AffineMonoid,
    target: &CyclicMonoidWithZero,
    relations: &[BinomialRelation],
    budget: u64,
) -> Result<Vec<MonoidHom>> {
    check_budget(monoid, target.m, budget)?;
    let ctx = HomContext::new(monoid)?;
    let g = ctx.gens.len();
    // check each relation as soon as its last generator is assigned
    let mut due: Vec<Vec<&BinomialRelation>> = vec![Vec::new(); g + 1];
    for r in relations {
        let last = r
            .lhs
            .iter()
            .zip(&r.rhs)
            .rposition(|(a, b)| *a != 0 || *b != 0)
            .map_or(0, |i| i + 1);
        due[last].push(r);
    }
    let choices = target.elements();
    let mut values = vec![MuElem::Zero; g];
    let mut out = Vec::new();
    fn go(
        i: usize,
        values: &mut Vec<MuElem>,
        due: &[Vec<&BinomialRelation>],
        choices: &[MuElem],
        target: &CyclicMonoidWithZero,
        out: &mut Vec<Vec<MuElem>>,
    ) {
        if !due[i].iter().all(|r| r.holds(target, values)) {
            return;
        }
        if i == values.len() {
            out.push(values.clone());
            return;
        }
        for &c in choices {
            values[i] = c;
            go(i + 1, values, due, choices, target, out);
        }
        values[i] = MuElem::Zero;
    }
    let mut raw = Vec::new();
    go(0, &mut values, &due, &choices, target, &mut raw);
    for v in raw {
        let support_face = ctx.support_face(&v)?;
        out.push(MonoidHom {
            values: v,
            support_face,
        });
    }
    Ok(out)
}

/// β: restricts a hom to the units of its support face.
pub fn beta(monoid: &AffineMonoid, target: &CyclicMonoidWithZero, hom: &MonoidHom) -> Result<UnitCharacter> {
    let ctx = HomContext::new(monoid)?;
    let face = ctx.support_face(&hom.values)?;
    let basis = ctx.unit_basis(face);
    let support: Vec<(Vec<i128>, u64)> = ctx
        .gens
        .iter()
        .zip(&hom.values)
        .filter_map(|(g, v)| match v {
            MuElem::Root(k) => Some((widen(g), *k)),
            MuElem::Zero => None,
        })
        .collect();
    let cols: Vec<Vec<i128>> = support.iter().map(|(g, _)| g.clone()).collect();
    let m = i128::from(target.m);
    let values = basis
        .iter()
        .map(|b| {
            let c = linalg::solve_integer(&cols, &widen(b))
                .ok_or_else(|| Error::ShapeMismatch("unit basis vector is not generated by the support".into()))?;
            let e: i128 = c.iter().zip(&support).map(|(ci, (_, k))| ci * i128::from(*k)).sum();
            Ok(e.rem_euclid(m) as u64)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(UnitCharacter { face, basis, values })
}

/// α: extends a unit character of a face by zero.
pub fn alpha(monoid: &AffineMonoid, target: &CyclicMonoidWithZero, chi: &UnitCharacter) -> Result<MonoidHom> {
    let ctx = HomContext::new(monoid)?;
    let face = ctx
        .faces
        .get(chi.face)
        .ok_or_else(|| Error::ShapeMismatch(format!("no face {}", chi.face)))?;
    let basis: Vec<Vec<i128>> = chi.basis.iter().map(|b| widen(b)).collect();
    let m = i128::from(target.m);
    let values = ctx
        .gens
        .iter()
        .map(|g| {
            if !ctx.vanishes_on(g, face) {
                return Ok(MuElem::Zero);
            }
            let c = linalg::solve_integer(&basis, &widen(g))
                .ok_or_else(|| Error::ShapeMismatch("generator outside the unit lattice".into()))?;
            let e: i128 = c.iter().zip(&chi.values).map(|(ci, v)| ci * i128::from(*v)).sum();
            Ok(MuElem::Root(e.rem_euclid(m) as u64))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(MonoidHom {
        values,
        support_face: chi.face,
    })
}

/// All unit characters of all faces, `⊔_σ Hom(A_σ^×, μ_m)`.
pub fn unit_characters(monoid: &AffineMonoid, target: &CyclicMonoidWithZero) -> Result<Vec<UnitCharacter>> {
    let ctx = HomContext::new(monoid)?;
    let mut out = Vec::new();
    for face in 0..ctx.faces.len() {
        let basis = ctx.unit_basis(face);
        let r = basis.len();
        let mut values = vec![0u64; r];
        loop {
            out.push(UnitCharacter {
                face,
                basis: basis.clone(),
                values: values.clone(),
            });
            let Some(j) = (0..r).find(|&j| values[j] + 1 < target.m) else {
                break;
            };
            values[j] += 1;
            for v in values.iter_mut().take(j) {
                *v = 0;
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ToricPointCount {
    pub q: u64,
    pub total: String,
    /// Points per torus orbit, indexed like the fan's cones.
    pub per_orbit: Vec<String>,
    /// Number of charts whose points were enumerated as homomorphisms rather
    /// than counted by faces.
    pub enumerated_charts: usize,
}

/// `#X_Δ(F_q)` assembled from `Hom(A_τ, F_q^×  ∪ {0})` over the maximal cones,
/// with each point attributed to the orbit of its support face.
pub fn toric_fq_points_via_homs(fan: &Fan, q: u64, budget: u64) -> Result<ToricPointCount> {
    if q < 2 {
        return Err(Error::InvalidFieldSize(q.to_string()));
    }
    let fan = fan.clone().validated()?;
    let n = fan.ambient_dim();
    let target = CyclicMonoidWithZero::new(q - 1)?;
    let mut per: BTreeMap<usize, BigUint> = BTreeMap::new();
    let mut enumerated_charts = 0;
    for idx in fan.maximal_cones() {
        let tau = &fan.cones()[idx];
        let monoid = monoid_of_cone(tau)?;
        let face_list = faces(tau);
        let mut counts = vec![BigUint::zero(); face_list.len()];
        match enumerate_monoid_homs(&monoid, &target, budget) {
            Ok(homs) => {
                enumerated_charts += 1;
                for h in homs {
                    counts[h.support_face] += BigUint::one();
                }
            }
            Err(Error::BudgetExceeded { .. }) => {
                for (c, f) in counts.iter_mut().zip(&face_list) {
                    *c = BigUint::from(target.m).pow((n - f.dim()) as u32);
                }
            }
            Err(e) => return Err(e),
        }
        for (f, c) in face_list.iter().zip(counts) {
            let orbit = fan.index_of(f).expect("faces of fan cones are fan cones");
            if let Some(prev) = per.insert(orbit, c.clone()) {
                if prev != c {
                    return Err(Error::ShapeMismatch(format!(
                        "charts disagree on the orbit of cone {orbit}: {prev} vs {c}"
                    )));
                }
            }
        }
    }
    let per_orbit: Vec<BigUint> = (0..fan.len())
        .map(|i| per.get(&i).cloned().unwrap_or_default())
        .collect();
    let total: BigUint = per_orbit.iter().sum();
    Ok(ToricPointCount {
        q,
        total: total.to_string(),
        per_orbit: per_orbit.iter().map(ToString::to_string).collect(),
        enumerated_charts,
    })
}
