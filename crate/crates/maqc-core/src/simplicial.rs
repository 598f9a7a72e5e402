//! Simplicial complexes with partitioned vertex sets.
//!
//! A [`ColoredComplex`] is a finite abstract simplicial complex together
//! with a partition `α = {α₁, …, α_k}` of its vertex set.  Vertices are
//! re-indexed at construction so that all of `α₁` precedes `α₂` and so on;
//! this fixes the total order `≺` that every sign convention below refers
//! to.  The empty simplex is a face of every complex.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use crate::error::{Error, Result};

/// A face of a simplicial complex: a strictly increasing list of vertex
/// indices.  The empty list is the empty simplex.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Simplex {
    verts: Vec<u32>,
}

impl Simplex {
    /// The empty simplex.
    pub fn empty() -> Self {
        Simplex { verts: Vec::new() }
    }

    /// Builds a simplex from an arbitrary vertex list, sorting and
    /// deduplicating.
    pub fn new(mut verts: Vec<u32>) -> Self {
        verts.sort_unstable();
        verts.dedup();
        Simplex { verts }
    }

    /// Builds a simplex from a list that is already strictly increasing.
    pub fn from_sorted(verts: Vec<u32>) -> Self {
        debug_assert!(verts.windows(2).all(|w| w[0] < w[1]));
        Simplex { verts }
    }

    /// Number of vertices.  `rank(σ) = dim(σ) + 1`; the empty simplex has
    /// rank 0.
    pub fn rank(&self) -> usize {
        self.verts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.verts.is_empty()
    }

    pub fn vertices(&self) -> &[u32] {
        &self.verts
    }

    pub fn contains(&self, v: u32) -> bool {
        self.verts.binary_search(&v).is_ok()
    }

    /// True if `self ⊆ other` as vertex sets.
    pub fn is_subset_of(&self, other: &Simplex) -> bool {
        self.verts.iter().all(|v| other.contains(*v))
    }

    /// Vertex-set intersection (always a simplex).
    pub fn intersection(&self, other: &Simplex) -> Simplex {
        Simplex::from_sorted(
            self.verts
                .iter()
                .copied()
                .filter(|v| other.contains(*v))
                .collect(),
        )
    }

    /// Vertex-set union, in increasing order.
    pub fn union(&self, other: &Simplex) -> Simplex {
        let mut v: Vec<u32> = self.verts.iter().chain(other.verts.iter()).copied().collect();
        v.sort_unstable();
        v.dedup();
        Simplex { verts: v }
    }

    /// All subsets (the full face lattice of this simplex).
    pub fn subsets(&self) -> Vec<Simplex> {
        let n = self.verts.len();
        let mut out = Vec::with_capacity(1 << n);
        for mask in 0u64..(1u64 << n) {
            let verts = (0..n)
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| self.verts[i])
                .collect();
            out.push(Simplex { verts });
        }
        out
    }

    /// The `rank` codimension-one faces, each obtained by dropping one
    /// vertex.
    pub fn facets(&self) -> Vec<Simplex> {
        (0..self.verts.len())
            .map(|i| {
                let mut v = self.verts.clone();
                v.remove(i);
                Simplex { verts: v }
            })
            .collect()
    }

    /// The simplex with one more vertex `v` (must be absent).
    pub fn extended(&self, v: u32) -> Simplex {
        debug_assert!(!self.contains(v));
        let pos = self.verts.partition_point(|&u| u < v);
        let mut verts = self.verts.clone();
        verts.insert(pos, v);
        Simplex { verts }
    }

    /// Deterministic order: by rank, then lexicographically.
    pub fn order_key(&self) -> (usize, Vec<u32>) {
        (self.verts.len(), self.verts.clone())
    }
}

impl PartialOrd for Simplex {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Simplex {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.verts
            .len()
            .cmp(&other.verts.len())
            .then_with(|| self.verts.cmp(&other.verts))
    }
}

impl fmt::Display for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.verts.is_empty() {
            return write!(f, "0̂");
        }
        write!(f, "{{")?;
        for (i, v) in self.verts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

/// A subset of the block index set `[k]`, stored as a bitmask.  Block
/// indices are 0-based internally; reports render them 1-based.  At most
/// 64 blocks are supported.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ColorSubset(pub u64);

impl ColorSubset {
    pub const EMPTY: ColorSubset = ColorSubset(0);

    pub fn full(k: usize) -> Self {
        if k == 64 {
            ColorSubset(u64::MAX)
        } else {
            ColorSubset((1u64 << k) - 1)
        }
    }

    pub fn singleton(i: usize) -> Self {
        ColorSubset(1u64 << i)
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn insert(self, i: usize) -> Self {
        ColorSubset(self.0 | 1u64 << i)
    }

    pub fn remove(self, i: usize) -> Self {
        ColorSubset(self.0 & !(1u64 << i))
    }

    pub fn union(self, other: ColorSubset) -> Self {
        ColorSubset(self.0 | other.0)
    }

    pub fn intersect(self, other: ColorSubset) -> Self {
        ColorSubset(self.0 & other.0)
    }

    pub fn difference(self, other: ColorSubset) -> Self {
        ColorSubset(self.0 & !other.0)
    }

    pub fn is_subset_of(self, other: ColorSubset) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    /// Member indices in increasing order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        (0..64).filter(move |i| self.0 >> i & 1 == 1)
    }

    /// All subsets of `[k]`, enumerated by popcount then numeric mask, so
    /// reports are stable.
    pub fn all_subsets(k: usize) -> Vec<ColorSubset> {
        let mut masks: Vec<u64> = (0..(1u64 << k)).collect();
        masks.sort_by_key(|m| (m.count_ones(), *m));
        masks.into_iter().map(ColorSubset).collect()
    }

    /// 1-based member list, for display.
    pub fn display_indices(self) -> Vec<usize> {
        self.iter().map(|i| i + 1).collect()
    }
}

/// A partition of the vertex set into `k` nonempty blocks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    blocks: Vec<Vec<u32>>,
    block_of: Vec<u32>,
}

impl Partition {
    fn new(blocks: Vec<Vec<u32>>, m: usize) -> Self {
        let mut block_of = vec![u32::MAX; m];
        for (i, b) in blocks.iter().enumerate() {
            for &v in b {
                block_of[v as usize] = i as u32;
            }
        }
        Partition { blocks, block_of }
    }

    pub fn k(&self) -> usize {
        self.blocks.len()
    }

    pub fn blocks(&self) -> &[Vec<u32>] {
        &self.blocks
    }

    /// Index `i_α(v)` of the block containing `v`.
    pub fn block_of(&self, v: u32) -> usize {
        self.block_of[v as usize] as usize
    }
}

/// A finite simplicial complex with named vertices and a vertex partition.
///
/// Vertices are re-indexed at construction so block `α₁` comes first, then
/// `α₂`, and so on, preserving the caller's within-block order; the dense
/// indices realize the vertex order `≺`.  Vertices that appear in the vertex
/// list but in no facet are kept as "ghost" entries: they occupy a partition
/// slot but are not faces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColoredComplex {
    names: Vec<String>,
    faces: Vec<Simplex>,
    face_index: HashMap<Simplex, usize>,
    partition: Partition,
}

impl ColoredComplex {
    /// Builds the downward closure of `facets` on the given vertex list.
    ///
    /// `partition` is a list of blocks of vertex names; `None` means the
    /// trivial partition (every vertex its own block).
    pub fn from_facets(
        vertices: &[String],
        facets: &[Vec<String>],
        partition: Option<&[Vec<String>]>,
    ) -> Result<Self> {
        let mut seen = HashMap::new();
        for (i, name) in vertices.iter().enumerate() {
            if seen.insert(name.clone(), i).is_some() {
                return Err(Error::DuplicateVertex(name.clone()));
            }
        }

        // Resolve the partition over the *input* order, then re-index so
        // blocks are contiguous.
        let trivial: Vec<Vec<String>>;
        let blocks_by_name: &[Vec<String>] = match partition {
            Some(p) => p,
            None => {
                trivial = vertices.iter().map(|v| vec![v.clone()]).collect();
                &trivial
            }
        };
        if blocks_by_name.len() > 64 {
            return Err(Error::TooManyBlocks(blocks_by_name.len()));
        }
        let mut assigned = vec![false; vertices.len()];
        let mut new_order: Vec<usize> = Vec::with_capacity(vertices.len());
        let mut blocks: Vec<Vec<u32>> = Vec::with_capacity(blocks_by_name.len());
        for (bi, block) in blocks_by_name.iter().enumerate() {
            if block.is_empty() {
                return Err(Error::EmptyBlock(bi + 1));
            }
            let mut b = Vec::with_capacity(block.len());
            for name in block {
                let &old = seen
                    .get(name)
                    .ok_or_else(|| Error::UnknownVertexInBlock(name.clone()))?;
                if assigned[old] {
                    return Err(Error::OverlappingBlocks(name.clone()));
                }
                assigned[old] = true;
                b.push(new_order.len() as u32);
                new_order.push(old);
            }
            blocks.push(b);
        }
        if let Some(missing) = assigned.iter().position(|a| !a) {
            return Err(Error::UncoveredVertex(vertices[missing].clone()));
        }

        let names: Vec<String> = new_order.iter().map(|&o| vertices[o].clone()).collect();
        let mut new_index = vec![0u32; vertices.len()];
        for (new, &old) in new_order.iter().enumerate() {
            new_index[old] = new as u32;
        }

        // Downward closure of the facets, plus the empty simplex.
        let mut face_set: BTreeSet<Simplex> = BTreeSet::new();
        face_set.insert(Simplex::empty());
        for facet in facets {
            let mut verts = Vec::with_capacity(facet.len());
            for name in facet {
                let &old = seen
                    .get(name)
                    .ok_or_else(|| Error::UnknownVertex(name.clone()))?;
                verts.push(new_index[old]);
            }
            let mut sorted = verts.clone();
            sorted.sort_unstable();
            if sorted.windows(2).any(|w| w[0] == w[1]) {
                let dup = sorted.windows(2).find(|w| w[0] == w[1]).unwrap()[0];
                return Err(Error::DuplicateVertexInFacet(names[dup as usize].clone()));
            }
            for sub in Simplex::from_sorted(sorted).subsets() {
                face_set.insert(sub);
            }
        }

        let faces: Vec<Simplex> = face_set.into_iter().collect();
        let face_index = faces
            .iter()
            .enumerate()
            .map(|(i, s)| (s.clone(), i))
            .collect();
        Ok(ColoredComplex {
            names,
            faces,
            face_index,
            partition: Partition::new(blocks, vertices.len()),
        })
    }

    /// Internal constructor from already-indexed data; used by
    /// `restricted_subcomplex`.
    fn from_parts(names: Vec<String>, faces: BTreeSet<Simplex>, blocks: Vec<Vec<u32>>) -> Self {
        let m = names.len();
        let faces: Vec<Simplex> = faces.into_iter().collect();
        let face_index = faces
            .iter()
            .enumerate()
            .map(|(i, s)| (s.clone(), i))
            .collect();
        ColoredComplex {
            names,
            faces,
            face_index,
            partition: Partition::new(blocks, m),
        }
    }

    /// Number of listed vertices (including ghosts).
    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn vertex_name(&self, v: u32) -> &str {
        &self.names[v as usize]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn partition(&self) -> &Partition {
        &self.partition
    }

    pub fn k(&self) -> usize {
        self.partition.k()
    }

    /// All faces in (rank, lex) order, starting with the empty simplex.
    pub fn faces(&self) -> &[Simplex] {
        &self.faces
    }

    pub fn faces_of_rank(&self, rank: usize) -> impl Iterator<Item = &Simplex> {
        self.faces.iter().filter(move |s| s.rank() == rank)
    }

    pub fn is_face(&self, s: &Simplex) -> bool {
        self.face_index.contains_key(s)
    }

    pub fn face_position(&self, s: &Simplex) -> Option<usize> {
        self.face_index.get(s).copied()
    }

    /// Largest rank among the faces.
    pub fn top_rank(&self) -> usize {
        self.faces.last().map_or(0, |s| s.rank())
    }

    /// The maximal faces, in (rank, lex) order.
    pub fn maximal_faces(&self) -> Vec<&Simplex> {
        self.faces
            .iter()
            .filter(|s| {
                !s.is_empty()
                    && !self
                        .faces
                        .iter()
                        .any(|t| t.rank() == s.rank() + 1 && s.is_subset_of(t))
            })
            .collect()
    }

    /// Color support `I_α(σ)`: the set of blocks meeting `σ`.
    pub fn color_support(&self, s: &Simplex) -> Result<ColorSubset> {
        if !self.is_face(s) {
            return Err(Error::NotAFace);
        }
        Ok(self.color_support_unchecked(s))
    }

    pub(crate) fn color_support_unchecked(&self, s: &Simplex) -> ColorSubset {
        let mut mask = ColorSubset::EMPTY;
        for &v in s.vertices() {
            mask = mask.insert(self.partition.block_of(v));
        }
        mask
    }

    /// The restricted subcomplex `K_{α,L} = {σ ∈ K : I_α(σ) ⊆ L}` as a
    /// standalone complex.  Vertices are re-indexed densely (preserving
    /// their relative order, so codimension-one signs agree with the
    /// ambient complex); empty blocks are dropped from the partition.
    pub fn restricted_subcomplex(&self, l: ColorSubset) -> ColoredComplex {
        let keep: Vec<u32> = (0..self.names.len() as u32)
            .filter(|&v| {
                l.contains(self.partition.block_of(v))
                    && self.is_face(&Simplex::from_sorted(vec![v]))
            })
            .collect();
        let mut new_index = HashMap::new();
        for (new, &old) in keep.iter().enumerate() {
            new_index.insert(old, new as u32);
        }
        let names = keep
            .iter()
            .map(|&v| self.names[v as usize].clone())
            .collect();
        let mut blocks = Vec::new();
        for i in l.iter() {
            if i >= self.k() {
                continue;
            }
            let b: Vec<u32> = self.partition.blocks()[i]
                .iter()
                .filter_map(|v| new_index.get(v).copied())
                .collect();
            if !b.is_empty() {
                blocks.push(b);
            }
        }
        let mut faces = BTreeSet::new();
        for f in &self.faces {
            if self.color_support_unchecked(f).is_subset_of(l) {
                faces.insert(Simplex::from_sorted(
                    f.vertices().iter().map(|v| new_index[v]).collect(),
                ));
            }
        }
        ColoredComplex::from_parts(names, faces, blocks)
    }

    /// The faces of `K_{α,L}` as faces of this complex (original indices,
    /// (rank, lex) order).  Used by the transport isomorphisms, which need
    /// the ambient indexing.
    pub fn restricted_faces(&self, l: ColorSubset) -> Vec<&Simplex> {
        self.faces
            .iter()
            .filter(|f| self.color_support_unchecked(f).is_subset_of(l))
            .collect()
    }

    /// True iff `|I_α(σ)| = rank(σ)` for every face, equivalently no edge
    /// has both vertices in one block.  The trivial partition is always
    /// non-degenerate.
    pub fn is_nondegenerate(&self) -> bool {
        self.faces.iter().all(|f| {
            f.rank() != 2 || self.color_support_unchecked(f).len() == 2
        })
    }

    /// The incidence sign `ε(σ,ω) = (−1)^{l(v,ω)}` for a codimension-one
    /// pair `σ ⊂ ω`, where `v` is the vertex of `ω` missing from `σ` and
    /// `l(v,ω)` counts vertices of `ω` below `v` in `≺`.  In particular
    /// `ε(0̂, vertex) = +1`.
    pub fn boundary_sign(&self, small: &Simplex, big: &Simplex) -> Result<i64> {
        if !self.is_face(small) || !self.is_face(big) {
            return Err(Error::NotAFace);
        }
        if big.rank() != small.rank() + 1 || !small.is_subset_of(big) {
            return Err(Error::NotCodimensionOne);
        }
        let v = big
            .vertices()
            .iter()
            .copied()
            .find(|v| !small.contains(*v))
            .expect("codimension-one pair has a missing vertex");
        let below = big.vertices().iter().filter(|&&u| u < v).count();
        Ok(if below % 2 == 0 { 1 } else { -1 })
    }

    /// Meet `σ ∧ τ` (always a face) and join `σ ∨ τ` (the face with vertex
    /// set `V(σ) ∪ V(τ)` if the complex contains it).
    pub fn join_meet(&self, a: &Simplex, b: &Simplex) -> Result<(Simplex, Option<Simplex>)> {
        if !self.is_face(a) || !self.is_face(b) {
            return Err(Error::NotAFace);
        }
        let meet = a.intersection(b);
        let join = a.union(b);
        let join = if self.is_face(&join) { Some(join) } else { None };
        Ok((meet, join))
    }

    /// Euler characteristic census of the real cellular model: each face
    /// `σ` contributes `2^{k − |I_α(σ)|}` cells of dimension `rank(σ)`.
    pub fn real_cell_euler(&self) -> i64 {
        self.faces
            .iter()
            .map(|f| {
                let cells = 1i64 << (self.k() - self.color_support_unchecked(f).len());
                if f.rank() % 2 == 0 {
                    cells
                } else {
                    -cells
                }
            })
            .sum()
    }

    /// Facet list by name, for serialization.
    pub fn facet_names(&self) -> Vec<Vec<String>> {
        self.maximal_faces()
            .iter()
            .map(|s| {
                s.vertices()
                    .iter()
                    .map(|&v| self.names[v as usize].clone())
                    .collect()
            })
            .collect()
    }

    /// Partition blocks by name, for serialization.
    pub fn block_names(&self) -> Vec<Vec<String>> {
        self.partition
            .blocks()
            .iter()
            .map(|b| b.iter().map(|&v| self.names[v as usize].clone()).collect())
            .collect()
    }
}

/// `κ(i,L) = (−1)^{r(i,L)}` where `r(i,L)` counts members of `L` below `i`;
/// with sphere dimensions `d`, `r` becomes the weighted count
/// `Σ_{j∈L, j<i} d_j`.  `i` must belong to `L`.
pub fn kappa(i: usize, l: ColorSubset, dims: Option<&[u32]>) -> Result<i64> {
    if !l.contains(i) {
        return Err(Error::BlockNotInColorSet { index: i });
    }
    let r: u64 = l
        .iter()
        .take_while(|&j| j < i)
        .map(|j| dims.map_or(1, |d| d[j] as u64))
        .sum();
    Ok(if r % 2 == 0 { 1 } else { -1 })
}

/// `κ(σ,L) = Π_{v ∈ V(σ)} κ(i_α(v), L)`.
pub fn kappa_face(
    cc: &ColoredComplex,
    s: &Simplex,
    l: ColorSubset,
    dims: Option<&[u32]>,
) -> Result<i64> {
    let mut sign = 1i64;
    for &v in s.vertices() {
        sign *= kappa(cc.partition().block_of(v), l, dims)?;
    }
    Ok(sign)
}

/// Convenience constructor used throughout the tests: vertices named
/// `v1..vn`, facets and partition given by 1-based indices.
pub fn complex_from_indices(
    n: usize,
    facets: &[&[usize]],
    partition: Option<&[&[usize]]>,
) -> ColoredComplex {
    let names: Vec<String> = (1..=n).map(|i| format!("v{i}")).collect();
    let facets: Vec<Vec<String>> = facets
        .iter()
        .map(|f| f.iter().map(|&i| format!("v{i}")).collect())
        .collect();
    let blocks: Option<Vec<Vec<String>>> = partition.map(|p| {
        p.iter()
            .map(|b| b.iter().map(|&i| format!("v{i}")).collect())
            .collect()
    });
    ColoredComplex::from_facets(&names, &facets, blocks.as_deref()).expect("valid test complex")
}

/// The simplicial circle with `n` vertices (`n ≥ 3`), trivial partition.
pub fn cycle_complex(n: usize) -> ColoredComplex {
    let facets: Vec<Vec<usize>> = (1..=n).map(|i| vec![i, i % n + 1]).collect();
    let refs: Vec<&[usize]> = facets.iter().map(|f| f.as_slice()).collect();
    complex_from_indices(n, &refs, None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn four_cycle_colored() -> ColoredComplex {
        complex_from_indices(
            4,
            &[&[1, 2], &[2, 3], &[3, 4], &[4, 1]],
            Some(&[&[1, 3], &[2, 4]]),
        )
    }

    #[test]
    fn downward_closure_of_a_path() {
        let cc = complex_from_indices(3, &[&[1, 2], &[2, 3]], None);
        assert_eq!(cc.faces().len(), 6); // 0̂, 3 vertices, 2 edges
        assert!(cc.is_face(&Simplex::empty()));
        for f in cc.faces() {
            for sub in f.subsets() {
                assert!(cc.is_face(&sub), "missing subset {sub} of {f}");
            }
        }
    }

    #[test]
    fn full_simplex_has_a_powerset_of_faces() {
        let cc = complex_from_indices(3, &[&[1, 2, 3]], None);
        assert_eq!(cc.faces().len(), 8);
    }

    #[test]
    fn ghost_vertices_are_listed_but_not_faces() {
        let names = vec!["a".to_string(), "b".to_string()];
        let cc = ColoredComplex::from_facets(&names, &[vec!["a".to_string()]], None).unwrap();
        assert_eq!(cc.faces().len(), 2); // 0̂ and {a}
        assert_eq!(cc.vertex_count(), 2);
        assert!(!cc.is_face(&Simplex::from_sorted(vec![1])));
    }

    #[test]
    fn construction_errors() {
        let names = vec!["a".to_string(), "b".to_string()];
        let e = ColoredComplex::from_facets(&names, &[vec!["z".to_string()]], None);
        assert_eq!(e.unwrap_err(), Error::UnknownVertex("z".into()));

        let e = ColoredComplex::from_facets(
            &names,
            &[vec!["a".to_string(), "a".to_string()]],
            None,
        );
        assert_eq!(e.unwrap_err(), Error::DuplicateVertexInFacet("a".into()));

        let e = ColoredComplex::from_facets(
            &names,
            &[],
            Some(&[vec!["a".to_string()], vec!["a".to_string(), "b".to_string()]]),
        );
        assert_eq!(e.unwrap_err(), Error::OverlappingBlocks("a".into()));

        let e = ColoredComplex::from_facets(&names, &[], Some(&[vec!["a".to_string()]]));
        assert_eq!(e.unwrap_err(), Error::UncoveredVertex("b".into()));
    }

    #[test]
    fn more_than_64_blocks_are_rejected() {
        let names: Vec<String> = (0..65).map(|i| format!("v{i}")).collect();
        let err = ColoredComplex::from_facets(&names, &[], None).unwrap_err();
        assert_eq!(err, Error::TooManyBlocks(65));
    }

    #[test]
    fn vertices_are_reindexed_block_major() {
        let names: Vec<String> = ["x", "y", "z"].iter().map(|s| s.to_string()).collect();
        let blocks = vec![vec!["z".to_string()], vec!["x".to_string(), "y".to_string()]];
        let cc = ColoredComplex::from_facets(&names, &[], Some(&blocks)).unwrap();
        assert_eq!(cc.names(), &["z", "x", "y"]);
        assert_eq!(cc.partition().block_of(0), 0);
        assert_eq!(cc.partition().block_of(1), 1);
    }

    #[test]
    fn color_support_examples() {
        let cc = four_cycle_colored();
        assert_eq!(cc.color_support(&Simplex::empty()).unwrap(), ColorSubset::EMPTY);
        // After re-indexing, block 1 = {v1,v3} = indices {0,1}, block 2 = indices {2,3}.
        let edge = Simplex::from_sorted(vec![0, 2]);
        assert_eq!(cc.color_support(&edge).unwrap(), ColorSubset(0b11));
        let vert = Simplex::from_sorted(vec![0]);
        assert_eq!(cc.color_support(&vert).unwrap(), ColorSubset(0b01));
        assert!(cc.color_support(&Simplex::from_sorted(vec![0, 1])).is_err());
    }

    #[test]
    fn restricted_subcomplex_filters_by_support() {
        let cc = four_cycle_colored();
        let empty = cc.restricted_subcomplex(ColorSubset::EMPTY);
        assert_eq!(empty.faces().len(), 1);

        let l1 = cc.restricted_subcomplex(ColorSubset(0b01));
        assert_eq!(l1.faces().len(), 3); // 0̂, v1, v3
        assert_eq!(l1.vertex_count(), 2);

        // Brute-force filter oracle against the ambient complex.
        let oracle: Vec<_> = cc
            .faces()
            .iter()
            .filter(|f| cc.color_support_unchecked(f).is_subset_of(ColorSubset(0b01)))
            .collect();
        assert_eq!(oracle.len(), l1.faces().len());
    }

    #[test]
    fn restriction_for_trivial_partition_is_full_subcomplex() {
        let cc = cycle_complex(5);
        // L = {1,3} (0-based {0,2}) keeps two isolated vertices.
        let sub = cc.restricted_subcomplex(ColorSubset(0b101));
        assert_eq!(sub.vertex_count(), 2);
        assert_eq!(sub.faces().len(), 3);
        // Monotonicity and the full-set case.
        let all = cc.restricted_subcomplex(ColorSubset::full(5));
        assert_eq!(all.faces().len(), cc.faces().len());
        for l in ColorSubset::all_subsets(5) {
            let small = cc.restricted_faces(l);
            let big = cc.restricted_faces(l.union(ColorSubset(0b1)));
            assert!(small.len() <= big.len());
        }
    }

    #[test]
    fn nondegeneracy_detects_monochromatic_edges() {
        assert!(four_cycle_colored().is_nondegenerate());
        let bad = complex_from_indices(
            4,
            &[&[1, 2], &[2, 3], &[3, 4], &[4, 1]],
            Some(&[&[1, 2], &[3, 4]]),
        );
        assert!(!bad.is_nondegenerate());
        assert!(cycle_complex(4).is_nondegenerate());
        // |I| ≤ rank, with equality iff non-degenerate.
        let cc = four_cycle_colored();
        for f in cc.faces() {
            assert!(cc.color_support_unchecked(f).len() <= f.rank());
        }
    }

    #[test]
    fn boundary_sign_examples() {
        let cc = complex_from_indices(3, &[&[1, 2, 3]], None);
        let e12 = Simplex::from_sorted(vec![0, 1]);
        let v1 = Simplex::from_sorted(vec![0]);
        let v2 = Simplex::from_sorted(vec![1]);
        assert_eq!(cc.boundary_sign(&v2, &e12).unwrap(), 1); // removed v1, l = 0
        assert_eq!(cc.boundary_sign(&v1, &e12).unwrap(), -1); // removed v2, l = 1
        let t = Simplex::from_sorted(vec![0, 1, 2]);
        let e13 = Simplex::from_sorted(vec![0, 2]);
        assert_eq!(cc.boundary_sign(&e13, &t).unwrap(), -1); // removed v2, l = 1
        assert_eq!(cc.boundary_sign(&Simplex::empty(), &v1).unwrap(), 1);
        assert!(cc.boundary_sign(&v1, &t).is_err());
    }

    #[test]
    fn two_step_boundary_signs_cancel() {
        // Σ ε(σ,τ)ε(τ,ω) = 0 over all chains σ ⊂ τ ⊂ ω, exhaustively.
        let cc = complex_from_indices(4, &[&[1, 2, 3, 4]], None);
        for omega in cc.faces().iter().filter(|f| f.rank() >= 2) {
            for sigma in omega.subsets() {
                if sigma.rank() + 2 != omega.rank() {
                    continue;
                }
                let mut total = 0i64;
                for tau in omega.subsets() {
                    if tau.rank() == sigma.rank() + 1 && sigma.is_subset_of(&tau) {
                        total += cc.boundary_sign(&sigma, &tau).unwrap()
                            * cc.boundary_sign(&tau, omega).unwrap();
                    }
                }
                assert_eq!(total, 0, "σ={sigma} ω={omega}");
            }
        }
    }

    #[test]
    fn kappa_examples() {
        // κ(3,{1,3,5}) = −1 (one element below); 0-based: κ(2,{0,2,4}).
        let l = ColorSubset(0b10101);
        assert_eq!(kappa(2, l, None).unwrap(), -1);
        assert_eq!(kappa(0, l, None).unwrap(), 1);
        assert!(kappa(1, l, None).is_err());
        // dims = (2,3,4): κ_S(3,{1,3}) = (−1)² = +1.
        let dims = [2u32, 3, 4];
        assert_eq!(kappa(2, ColorSubset(0b101), Some(&dims)).unwrap(), 1);
    }

    #[test]
    fn kappa_is_multiplicative_over_vertices() {
        let cc = four_cycle_colored();
        let l = ColorSubset(0b11);
        for omega in cc.faces().iter().filter(|f| !f.is_empty()) {
            for facet in omega.facets() {
                let v = omega
                    .vertices()
                    .iter()
                    .copied()
                    .find(|v| !facet.contains(*v))
                    .unwrap();
                let lhs = kappa_face(&cc, omega, l, None).unwrap();
                let rhs = kappa_face(&cc, &facet, l, None).unwrap()
                    * kappa(cc.partition().block_of(v), l, None).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn join_meet_examples() {
        let cc = four_cycle_colored();
        // After re-indexing: v1→0, v3→1, v2→2, v4→3.
        let v1 = Simplex::from_sorted(vec![0]);
        let v2 = Simplex::from_sorted(vec![2]);
        let v3 = Simplex::from_sorted(vec![1]);
        let (meet, join) = cc.join_meet(&v1, &v2).unwrap();
        assert!(meet.is_empty());
        assert_eq!(join, Some(Simplex::from_sorted(vec![0, 2])));
        let (meet, join) = cc.join_meet(&v1, &v3).unwrap();
        assert!(meet.is_empty());
        assert_eq!(join, None);
        let (meet, join) = cc.join_meet(&v1, &v1).unwrap();
        assert_eq!(meet, v1);
        assert_eq!(join, Some(v1.clone()));
    }
}
