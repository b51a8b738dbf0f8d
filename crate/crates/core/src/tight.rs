//! Tight contact structures on lens spaces as sign assignments on the
//! minimal Farey path, mixed tori, and Menke's meridional-slope candidates.
//!
//! The interior edges of the path (all but the first and last) split into
//! consecutive blocks whose sizes are `|aᵢ| - 2` for the negative continued
//! fraction `[a₁, …, aₙ]` of `-p/q`. Walking from `-p/q` the blocks appear in
//! the order `aₙ, …, a₁`. Two sign assignments give the same structure iff
//! they agree on the number of `+` signs in every block.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::farey::{minimal_path, neighbors_in_arc, FareyPath};
use crate::rational::{LensSpace, Slope};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn as_char(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }

    pub fn from_char(c: char) -> Option<Self> {
        match c {
            '+' => Some(Sign::Plus),
            '-' => Some(Sign::Minus),
            _ => None,
        }
    }
}

pub fn signs_to_string(signs: &[Sign]) -> String {
    signs.iter().map(|s| s.as_char()).collect()
}

pub fn parse_signs(text: &str) -> Result<Vec<Sign>> {
    text.chars()
        .map(|c| Sign::from_char(c).ok_or_else(|| invalid(format!("bad sign {c:?} in {text:?}"))))
        .collect()
}

/// A tight contact structure on `L(p,q)`: the minimal path together with a
/// canonical sign assignment on its interior edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TightStructure {
    lens: LensSpace,
    path: FareyPath,
    blocks: Vec<usize>,
    signs: Vec<Sign>,
}

impl TightStructure {
    fn from_plus_counts(lens: LensSpace, path: FareyPath, blocks: Vec<usize>, plus: &[usize]) -> Self {
        let mut signs = Vec::with_capacity(blocks.iter().sum());
        for (&size, &k) in blocks.iter().zip(plus) {
            signs.extend(std::iter::repeat_n(Sign::Plus, k));
            signs.extend(std::iter::repeat_n(Sign::Minus, size - k));
        }
        TightStructure {
            lens,
            path,
            blocks,
            signs,
        }
    }

    /// The structure on `lens` given by an arbitrary sign string over the
    /// interior edges; the signs are put into canonical order per block.
    pub fn from_signs(lens: &LensSpace, signs: &[Sign]) -> Result<Self> {
        let path = minimal_path(lens)?;
        let blocks = interior_blocks(lens)?;
        let interior: usize = blocks.iter().sum();
        if signs.len() != interior {
            return Err(invalid(format!(
                "L({lens}) has {interior} interior edges, got {} signs",
                signs.len()
            )));
        }
        let mut plus = Vec::with_capacity(blocks.len());
        let mut offset = 0;
        for &size in &blocks {
            plus.push(
                signs[offset..offset + size]
                    .iter()
                    .filter(|&&s| s == Sign::Plus)
                    .count(),
            );
            offset += size;
        }
        Ok(Self::from_plus_counts(*lens, path, blocks, &plus))
    }

    pub fn lens(&self) -> &LensSpace {
        &self.lens
    }

    pub fn path(&self) -> &FareyPath {
        &self.path
    }

    /// Block sizes in path order, starting at `-p/q`.
    pub fn blocks(&self) -> &[usize] {
        &self.blocks
    }

    /// Signs of the interior edges in path order, starting at `-p/q`.
    pub fn signs(&self) -> &[Sign] {
        &self.signs
    }

    /// Number of `+` signs in each block.
    pub fn plus_counts(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.blocks.len());
        let mut offset = 0;
        for &size in &self.blocks {
            out.push(
                self.signs[offset..offset + size]
                    .iter()
                    .filter(|&&s| s == Sign::Plus)
                    .count(),
            );
            offset += size;
        }
        out
    }

    /// Block index of every interior edge.
    fn block_of_edges(&self) -> Vec<usize> {
        self.blocks
            .iter()
            .enumerate()
            .flat_map(|(i, &size)| std::iter::repeat_n(i, size))
            .collect()
    }

    /// Path vertices `(r₁, r₂, r₃)` around the vertex shared by interior
    /// edges `j` and `j + 1`.
    fn vertex_between(&self, j: usize) -> MixedVertex {
        let v = self.path.vertices();
        MixedVertex {
            index: j + 2,
            r1: v[j + 1],
            r2: v[j + 2],
            r3: v[j + 3],
        }
    }
}

impl fmt::Display for TightStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let signs = signs_to_string(&self.signs);
        let kind = if is_universally_tight(self) {
            "universally tight"
        } else {
            "virtually overtwisted"
        };
        write!(f, "L({}) signs [{}] {}", self.lens, signs, kind)
    }
}

#[derive(Serialize, Deserialize)]
struct TightStructureWire {
    blocks: Vec<String>,
    p: String,
    path: FareyPath,
    q: String,
    signs: String,
}

impl Serialize for TightStructure {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        TightStructureWire {
            blocks: self.blocks.iter().map(ToString::to_string).collect(),
            p: self.lens.p().to_string(),
            path: self.path.clone(),
            q: self.lens.q().to_string(),
            signs: signs_to_string(&self.signs),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for TightStructure {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let wire = TightStructureWire::deserialize(deserializer)?;
        let int = |s: &str| s.parse::<i64>().map_err(D::Error::custom);
        let lens = LensSpace::new(int(&wire.p)?, int(&wire.q)?).map_err(D::Error::custom)?;
        let signs = parse_signs(&wire.signs).map_err(D::Error::custom)?;
        let t = TightStructure::from_signs(&lens, &signs).map_err(D::Error::custom)?;
        if t.path != wire.path || t.signs != signs {
            return Err(D::Error::custom("structure is not in canonical form"));
        }
        let blocks: Vec<String> = t.blocks.iter().map(ToString::to_string).collect();
        if blocks != wire.blocks {
            return Err(D::Error::custom("block sizes do not match the lens space"));
        }
        Ok(t)
    }
}

/// Interior vertex whose two incident edges carry opposite signs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MixedVertex {
    /// Position of `r₂` in the path.
    pub index: usize,
    pub r1: Slope,
    pub r2: Slope,
    pub r3: Slope,
}

/// Interior block sizes in path order: `|aᵢ| - 2` for `i = n, …, 1`.
pub fn interior_blocks(lens: &LensSpace) -> Result<Vec<usize>> {
    let cf = lens.neg_cf()?;
    Ok(cf.coeffs().iter().rev().map(|&a| (-a - 2) as usize).collect())
}

/// All tight structures on `lens`, ordered lexicographically by their
/// per-block `+` counts.
pub fn enumerate_tight(lens: &LensSpace) -> Result<Vec<TightStructure>> {
    let path = minimal_path(lens)?;
    let blocks = interior_blocks(lens)?;
    let interior = path.edge_count().saturating_sub(2);
    if blocks.iter().sum::<usize>() != interior {
        return Err(Error::InvariantViolation(format!(
            "L({lens}): blocks {blocks:?} do not cover {interior} interior edges"
        )));
    }

    let mut out = Vec::new();
    let mut plus = vec![0usize; blocks.len()];
    loop {
        out.push(TightStructure::from_plus_counts(
            *lens,
            path.clone(),
            blocks.clone(),
            &plus,
        ));
        // odometer with the last block varying fastest
        let mut i = blocks.len();
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            if plus[i] < blocks[i] {
                plus[i] += 1;
                plus[i + 1..].iter_mut().for_each(|k| *k = 0);
                break;
            }
        }
    }
}

/// `∏ |aᵢ + 1|` over the negative continued fraction of `-p/q`.
pub fn count_tight_formula(lens: &LensSpace) -> Result<u64> {
    if lens.p() < 2 {
        return Err(invalid(format!("L({lens}): need p >= 2")));
    }
    let cf = lens.neg_cf()?;
    Ok(cf.coeffs().iter().map(|&a| (a + 1).unsigned_abs()).product())
}

pub fn is_universally_tight(t: &TightStructure) -> bool {
    t.signs.windows(2).all(|w| w[0] == w[1])
}

/// Number of universally tight structures; the two uniform sign choices are
/// one plane field with opposite orientations, so `oriented = false`
/// collapses them.
pub fn universally_tight_count(structures: &[TightStructure], oriented: bool) -> usize {
    let oriented_count = structures.iter().filter(|t| is_universally_tight(t)).count();
    if oriented {
        oriented_count
    } else {
        oriented_count.min(1)
    }
}

/// Which sign orderings inside a block are inspected for sign changes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Orderings {
    /// Only the canonical `+…+-…-` representative.
    #[default]
    Canonical,
    /// Every ordering within every block.
    All,
}

pub fn mixed_vertices(t: &TightStructure) -> Vec<MixedVertex> {
    t.signs
        .windows(2)
        .enumerate()
        .filter(|(_, w)| w[0] != w[1])
        .map(|(j, _)| t.vertex_between(j))
        .collect()
}

/// Interior vertices that are mixed for some ordering of the signs within
/// blocks.
pub fn mixed_vertices_any_ordering(t: &TightStructure) -> Vec<MixedVertex> {
    let block_of = t.block_of_edges();
    let plus = t.plus_counts();
    // Some(sign) when every edge of the block carries that sign
    let uniform = |b: usize| match plus[b] {
        0 => Some(Sign::Minus),
        k if k == t.blocks[b] => Some(Sign::Plus),
        _ => None,
    };
    (0..t.signs.len().saturating_sub(1))
        .filter(|&j| {
            let (a, b) = (block_of[j], block_of[j + 1]);
            if a == b {
                uniform(a).is_none()
            } else {
                !matches!((uniform(a), uniform(b)), (Some(x), Some(y)) if x == y)
            }
        })
        .map(|j| t.vertex_between(j))
        .collect()
}

pub fn mixed_vertices_with(t: &TightStructure, orderings: Orderings) -> Vec<MixedVertex> {
    match orderings {
        Orderings::Canonical => mixed_vertices(t),
        Orderings::All => mixed_vertices_any_ordering(t),
    }
}

/// Farey neighbours of `r₂` strictly inside the counterclockwise arc from
/// `r₃` to `r₁`.
pub fn menke_candidates(t: &TightStructure, v: &MixedVertex) -> Result<Vec<Slope>> {
    if !mixed_vertices_any_ordering(t).contains(v) {
        return Err(invalid(format!("vertex {} of L({}) is not mixed", v.r2, t.lens)));
    }
    neighbors_in_arc(v.r2, v.r3, v.r1)
}

/// Union of the candidates over all mixed vertices, keyed by `r₂`'s position.
pub fn menke_candidate_union(t: &TightStructure, orderings: Orderings) -> Result<BTreeMap<usize, Vec<Slope>>> {
    mixed_vertices_with(t, orderings)
        .into_iter()
        .map(|v| Ok((v.index, neighbors_in_arc(v.r2, v.r3, v.r1)?)))
        .collect()
}

/// A Menke candidate that would produce an `S¹ × S²` summand.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SphereWitness {
    pub signs: String,
    pub vertex: MixedVertex,
    pub slope: Slope,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct SphereCheck {
    pub structures: usize,
    pub mixed_vertices: usize,
    pub witnesses: Vec<SphereWitness>,
    /// Mixed vertices with no candidate slope at all.
    pub empty_candidate_sets: Vec<MixedVertex>,
}

impl SphereCheck {
    pub fn holds(&self) -> bool {
        self.witnesses.is_empty() && self.empty_candidate_sets.is_empty()
    }
}

/// Checks that no meridional-slope candidate of any virtually overtwisted
/// structure on `lens` is `0` or `-p/q`.
pub fn verify_no_sphere_factor(lens: &LensSpace, orderings: Orderings) -> Result<SphereCheck> {
    let forbidden = [Slope::ZERO, Slope::lens_endpoint(lens)];
    let mut cache: BTreeMap<usize, Vec<Slope>> = BTreeMap::new();
    let mut empty = BTreeSet::new();
    let mut report = SphereCheck::default();
    for t in enumerate_tight(lens)? {
        if is_universally_tight(&t) && orderings == Orderings::Canonical {
            continue;
        }
        report.structures += 1;
        for v in mixed_vertices_with(&t, orderings) {
            report.mixed_vertices += 1;
            let candidates = match cache.entry(v.index) {
                Entry::Occupied(e) => e.into_mut(),
                Entry::Vacant(e) => e.insert(neighbors_in_arc(v.r2, v.r3, v.r1)?),
            };
            if candidates.is_empty() && empty.insert(v.index) {
                report.empty_candidate_sets.push(v);
            }
            for &slope in candidates.iter().filter(|s| forbidden.contains(s)) {
                report.witnesses.push(SphereWitness {
                    signs: signs_to_string(t.signs()),
                    vertex: v,
                    slope,
                });
            }
        }
    }
    Ok(report)
}
