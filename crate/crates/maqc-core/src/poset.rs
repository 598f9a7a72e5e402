//! Simplicial posets and the stretch construction.
//!
//! A simplicial poset has an initial element `0̂` and Boolean lower
//! intervals; unlike a simplicial complex, distinct faces may share a
//! vertex set (the bigon: two edges on the same two vertices).  The
//! stretch of a poset `S` lifts each maximal simplex to its own level of
//! `V(S) × {0..n}` and fills the pairwise intersections with triangulated
//! prisms, producing a genuine simplicial complex `K` with partition
//! `α_v = {(v,0), …, (v,n)}` whose torus-model quotient has the Betti
//! numbers of the moment-angle complex of `S`.
//!
//! Liftings here always use pairwise distinct levels.  Sharing levels
//! between liftings with disjoint vertex sets would also be valid and can
//! produce smaller complexes; distinct levels need no disjointness
//! analysis and are what this implementation commits to.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

use crate::error::{Error, Result};
use crate::simplicial::ColoredComplex;

/// Raw poset element as supplied by the caller (one JSON object each).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PosetElementSpec {
    pub id: String,
    pub rank: usize,
    pub vertices: Vec<String>,
    pub facets: Vec<String>,
}

#[derive(Clone, Debug)]
struct Element {
    id: String,
    rank: usize,
    vertices: Vec<String>,
    facets: Vec<usize>,
}

/// A validated simplicial poset.
#[derive(Clone, Debug)]
pub struct SimplicialPoset {
    elements: Vec<Element>,
    bottom: usize,
}

impl SimplicialPoset {
    /// Validates the raw elements: resolvable facet ids, one element of
    /// each rank below every face, Boolean lower intervals, vertex labels
    /// consistent with atoms.  A missing `0̂` is synthesized.
    pub fn validate(raw: &[PosetElementSpec]) -> Result<Self> {
        let mut elements: Vec<Element> = Vec::new();
        let mut by_id: HashMap<String, usize> = HashMap::new();
        let mut has_bottom = false;
        for spec in raw {
            if by_id.contains_key(&spec.id) {
                return Err(Error::DuplicatePosetElement(spec.id.clone()));
            }
            by_id.insert(spec.id.clone(), elements.len());
            if spec.rank == 0 {
                has_bottom = true;
            }
            elements.push(Element {
                id: spec.id.clone(),
                rank: spec.rank,
                vertices: spec.vertices.clone(),
                facets: Vec::new(),
            });
        }
        let bottom = if has_bottom {
            let idx = elements.iter().position(|e| e.rank == 0).unwrap();
            if elements.iter().filter(|e| e.rank == 0).count() > 1 {
                return Err(Error::NonBooleanInterval(elements[idx].id.clone()));
            }
            idx
        } else {
            elements.push(Element {
                id: "0".into(),
                rank: 0,
                vertices: Vec::new(),
                facets: Vec::new(),
            });
            elements.len() - 1
        };

        // Resolve facet ids; rank-1 elements implicitly sit above 0̂.
        for (i, spec) in raw.iter().enumerate() {
            let mut facets = Vec::new();
            for f in &spec.facets {
                let &t = by_id
                    .get(f)
                    .ok_or_else(|| Error::DanglingFacet(f.clone()))?;
                facets.push(t);
            }
            if spec.rank == 1 && facets.is_empty() {
                facets.push(bottom);
            }
            elements[i].facets = facets;
        }

        let poset = SimplicialPoset { elements, bottom };
        poset.check_structure()?;
        Ok(poset)
    }

    fn check_structure(&self) -> Result<()> {
        for (i, e) in self.elements.iter().enumerate() {
            if i == self.bottom {
                continue;
            }
            if e.rank == 0 {
                return Err(Error::NonBooleanInterval(e.id.clone()));
            }
            if e.facets.len() != e.rank {
                return Err(Error::FacetCountMismatch {
                    id: e.id.clone(),
                    rank: e.rank,
                    count: e.facets.len(),
                });
            }
            for &f in &e.facets {
                if self.elements[f].rank + 1 != e.rank {
                    return Err(Error::FacetRankMismatch {
                        id: e.id.clone(),
                        facet: self.elements[f].id.clone(),
                        expected: e.rank - 1,
                    });
                }
            }
            if e.vertices.len() != e.rank {
                return Err(Error::VertexCountMismatch {
                    id: e.id.clone(),
                    rank: e.rank,
                    got: e.vertices.len(),
                });
            }
            // Boolean interval: 2^rank elements below, with distinct atom
            // sets and the right atom count.
            let below = self.below(i);
            if below.len() != 1 << e.rank {
                return Err(Error::NonBooleanInterval(e.id.clone()));
            }
            let mut atom_sets: HashSet<Vec<usize>> = HashSet::new();
            for &b in &below {
                let atoms = self.atoms(b);
                if atoms.len() != self.elements[b].rank {
                    return Err(Error::NonBooleanInterval(e.id.clone()));
                }
                if !atom_sets.insert(atoms) {
                    return Err(Error::NonBooleanInterval(e.id.clone()));
                }
            }
            // Vertex labels must be the atoms' labels.
            let mut atom_labels: Vec<String> = self
                .atoms(i)
                .into_iter()
                .map(|a| self.elements[a].vertices[0].clone())
                .collect();
            atom_labels.sort();
            let mut labels = e.vertices.clone();
            labels.sort();
            if atom_labels != labels {
                return Err(Error::VertexLabelMismatch { id: e.id.clone() });
            }
        }
        // Atoms must carry distinct labels.
        let mut seen = HashSet::new();
        for e in self.elements.iter().filter(|e| e.rank == 1) {
            if !seen.insert(e.vertices[0].clone()) {
                return Err(Error::VertexLabelMismatch { id: e.id.clone() });
            }
        }
        Ok(())
    }

    /// All elements ≤ the given one (the lower interval), as sorted indices.
    fn below(&self, i: usize) -> Vec<usize> {
        let mut seen = BTreeSet::new();
        let mut stack = vec![i];
        while let Some(x) = stack.pop() {
            if seen.insert(x) {
                stack.extend(self.elements[x].facets.iter().copied());
                if self.elements[x].rank == 1 {
                    stack.push(self.bottom);
                }
            }
        }
        seen.into_iter().collect()
    }

    /// The rank-1 elements below `i`, sorted.
    fn atoms(&self, i: usize) -> Vec<usize> {
        self.below(i)
            .into_iter()
            .filter(|&b| self.elements[b].rank == 1)
            .collect()
    }

    /// Vertices of the poset in atom order.
    pub fn vertex_names(&self) -> Vec<String> {
        self.elements
            .iter()
            .filter(|e| e.rank == 1)
            .map(|e| e.vertices[0].clone())
            .collect()
    }

    /// Indices of the maximal elements, in input order.
    pub fn maximal_elements(&self) -> Vec<usize> {
        let covered: HashSet<usize> = self
            .elements
            .iter()
            .flat_map(|e| e.facets.iter().copied())
            .collect();
        (0..self.elements.len())
            .filter(|&i| i != self.bottom && !covered.contains(&i))
            .filter(|&i| self.elements[i].rank > 0)
            .collect()
    }

    pub fn element_id(&self, i: usize) -> &str {
        &self.elements[i].id
    }

    pub fn element_vertices(&self, i: usize) -> &[String] {
        &self.elements[i].vertices
    }

    /// The common faces of two elements: everything below both.
    fn common_faces(&self, a: usize, b: usize) -> Vec<usize> {
        let below_a: BTreeSet<usize> = self.below(a).into_iter().collect();
        self.below(b)
            .into_iter()
            .filter(|x| below_a.contains(x))
            .collect()
    }

    /// Encodes a plain simplicial complex as a poset (one element per
    /// nonempty face).  Used in tests and by round-trip tooling.
    pub fn from_complex(cc: &ColoredComplex) -> Self {
        let mut raw = Vec::new();
        for f in cc.faces() {
            if f.is_empty() {
                continue;
            }
            let id = format!(
                "f{}",
                f.vertices()
                    .iter()
                    .map(|v| v.to_string())
                    .collect::<Vec<_>>()
                    .join("_")
            );
            let facets = if f.rank() == 1 {
                Vec::new()
            } else {
                f.facets()
                    .iter()
                    .map(|s| {
                        format!(
                            "f{}",
                            s.vertices()
                                .iter()
                                .map(|v| v.to_string())
                                .collect::<Vec<_>>()
                                .join("_")
                        )
                    })
                    .collect()
            };
            raw.push(PosetElementSpec {
                id,
                rank: f.rank(),
                vertices: f
                    .vertices()
                    .iter()
                    .map(|&v| cc.vertex_name(v).to_string())
                    .collect(),
                facets,
            });
        }
        SimplicialPoset::validate(&raw).expect("face posets of complexes are simplicial")
    }
}

/// Output of the stretch construction.
#[derive(Clone, Debug)]
pub struct StretchResult {
    pub complex: ColoredComplex,
    /// Level assigned to each maximal element, by id.
    pub levels: BTreeMap<String, usize>,
    /// Top level `n` (maximal count − 1).
    pub top_level: usize,
}

/// The staircase triangulation of `σ × [level, level+1]` for an ordered
/// vertex list: `rank σ` simplices of rank `rank σ + 1`, glued along
/// staircase faces, compatible across shared faces of different bases.
pub fn prism_triangulation(base: &[u32], level: usize) -> Result<Vec<Vec<(u32, usize)>>> {
    if base.is_empty() {
        return Err(Error::EmptyPrism);
    }
    let r = base.len();
    let mut out = Vec::with_capacity(r);
    for split in 0..r {
        let mut cell = Vec::with_capacity(r + 1);
        for &v in &base[..=split] {
            cell.push((v, level));
        }
        for &v in &base[split..] {
            cell.push((v, level + 1));
        }
        out.push(cell);
    }
    Ok(out)
}

/// Stretches a simplicial poset into a simplicial complex with partition:
/// maximal simplex number `t` is lifted to level `t`, and every common
/// face of two maximal simplices is filled with prisms over `[0, n]`.
/// Block `α_v` collects all level copies of the vertex `v`.
pub fn stretch(poset: &SimplicialPoset) -> StretchResult {
    let maximal = poset.maximal_elements();
    let n = maximal.len().saturating_sub(1);
    let name = |v: &str, j: usize| format!("{v}@{j}");

    let mut facets: Vec<Vec<String>> = Vec::new();
    let mut levels = BTreeMap::new();
    for (t, &m) in maximal.iter().enumerate() {
        levels.insert(poset.element_id(m).to_string(), t);
        facets.push(
            poset
                .element_vertices(m)
                .iter()
                .map(|v| name(v, t))
                .collect(),
        );
    }

    // Prisms over every nonempty common face of two distinct maximal
    // simplices.  The vertex order inside a prism base is the poset's
    // atom order; the level-major product order makes shared staircases
    // agree.
    let atom_order = poset.vertex_names();
    let order_of: HashMap<&str, u32> = atom_order
        .iter()
        .enumerate()
        .map(|(i, v)| (v.as_str(), i as u32))
        .collect();
    let mut prism_bases: BTreeSet<Vec<u32>> = BTreeSet::new();
    for (a_pos, &a) in maximal.iter().enumerate() {
        for &b in &maximal[a_pos + 1..] {
            for c in poset.common_faces(a, b) {
                let verts = poset.element_vertices(c);
                if verts.is_empty() {
                    continue;
                }
                let mut base: Vec<u32> =
                    verts.iter().map(|v| order_of[v.as_str()]).collect();
                base.sort_unstable();
                prism_bases.insert(base);
            }
        }
    }
    for base in &prism_bases {
        for j in 0..n {
            for cell in prism_triangulation(base, j).expect("nonempty base") {
                facets.push(
                    cell.into_iter()
                        .map(|(v, j)| name(&atom_order[v as usize], j))
                        .collect(),
                );
            }
        }
    }

    // Vertex list and partition: all level copies, grouped per original
    // vertex; copies that end up in no face stay as ghosts.
    let mut vertices = Vec::new();
    let mut blocks = Vec::new();
    for v in &atom_order {
        let block: Vec<String> = (0..=n).map(|j| name(v, j)).collect();
        vertices.extend(block.iter().cloned());
        blocks.push(block);
    }

    let complex = ColoredComplex::from_facets(&vertices, &facets, Some(&blocks))
        .expect("stretch output is a valid complex");
    StretchResult {
        complex,
        levels,
        top_level: n,
    }
}

impl StretchResult {
    /// Projection to level zero is simplicial: every face maps onto a
    /// vertex set spanned inside some maximal simplex of the poset
    /// (collapses of prism faces onto their base are allowed).
    pub fn projection_is_simplicial(&self, poset: &SimplicialPoset) -> bool {
        let maximal = poset.maximal_elements();
        let maximal_sets: Vec<BTreeSet<&str>> = maximal
            .iter()
            .map(|&m| {
                poset
                    .element_vertices(m)
                    .iter()
                    .map(|s| s.as_str())
                    .collect()
            })
            .collect();
        self.complex.faces().iter().all(|f| {
            let mut projected = BTreeSet::new();
            for &v in f.vertices() {
                let full = self.complex.vertex_name(v);
                let base = full.rsplit_once('@').map(|(b, _)| b).unwrap_or(full);
                projected.insert(base);
            }
            f.is_empty()
                || maximal_sets
                    .iter()
                    .any(|m| projected.iter().all(|v| m.contains(v)))
        })
    }

    /// Liftings of distinct maximal simplices share no vertex (they live
    /// at distinct levels by construction).
    pub fn liftings_are_disjoint(&self, poset: &SimplicialPoset) -> bool {
        let mut seen: HashSet<String> = HashSet::new();
        for (id, &level) in &self.levels {
            let m = poset
                .maximal_elements()
                .into_iter()
                .find(|&m| poset.element_id(m) == id)
                .expect("level keys are maximal elements");
            for v in poset.element_vertices(m) {
                if !seen.insert(format!("{v}@{level}")) {
                    return false;
                }
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hochster::hochster_torus;
    use crate::homology::CoefficientRing;
    use crate::simplicial::{complex_from_indices, cycle_complex};

    fn bigon() -> SimplicialPoset {
        SimplicialPoset::validate(&[
            PosetElementSpec {
                id: "a".into(),
                rank: 1,
                vertices: vec!["a".into()],
                facets: vec![],
            },
            PosetElementSpec {
                id: "b".into(),
                rank: 1,
                vertices: vec!["b".into()],
                facets: vec![],
            },
            PosetElementSpec {
                id: "e1".into(),
                rank: 2,
                vertices: vec!["a".into(), "b".into()],
                facets: vec!["a".into(), "b".into()],
            },
            PosetElementSpec {
                id: "e2".into(),
                rank: 2,
                vertices: vec!["a".into(), "b".into()],
                facets: vec!["a".into(), "b".into()],
            },
        ])
        .unwrap()
    }

    #[test]
    fn complexes_are_valid_posets() {
        let cc = cycle_complex(4);
        let poset = SimplicialPoset::from_complex(&cc);
        assert_eq!(poset.maximal_elements().len(), 4);
        assert_eq!(poset.vertex_names().len(), 4);
    }

    #[test]
    fn bigon_is_a_valid_poset() {
        let poset = bigon();
        assert_eq!(poset.maximal_elements().len(), 2);
    }

    #[test]
    fn three_atoms_under_a_rank_two_element_is_invalid() {
        let err = SimplicialPoset::validate(&[
            PosetElementSpec {
                id: "a".into(),
                rank: 1,
                vertices: vec!["a".into()],
                facets: vec![],
            },
            PosetElementSpec {
                id: "b".into(),
                rank: 1,
                vertices: vec!["b".into()],
                facets: vec![],
            },
            PosetElementSpec {
                id: "c".into(),
                rank: 1,
                vertices: vec!["c".into()],
                facets: vec![],
            },
            PosetElementSpec {
                id: "e".into(),
                rank: 2,
                vertices: vec!["a".into(), "b".into(), "c".into()],
                facets: vec!["a".into(), "b".into(), "c".into()],
            },
        ])
        .unwrap_err();
        assert!(matches!(err, Error::FacetCountMismatch { .. }));
    }

    #[test]
    fn dangling_facets_are_rejected() {
        let err = SimplicialPoset::validate(&[PosetElementSpec {
            id: "e".into(),
            rank: 1,
            vertices: vec!["a".into()],
            facets: vec!["ghost".into()],
        }])
        .unwrap_err();
        assert_eq!(err, Error::DanglingFacet("ghost".into()));
    }

    #[test]
    fn duplicated_lower_interval_is_rejected() {
        // A rank-2 element listing the same atom twice: the interval has
        // only 3 elements, not 4.
        let err = SimplicialPoset::validate(&[
            PosetElementSpec {
                id: "a".into(),
                rank: 1,
                vertices: vec!["a".into()],
                facets: vec![],
            },
            PosetElementSpec {
                id: "e".into(),
                rank: 2,
                vertices: vec!["a".into(), "a".into()],
                facets: vec!["a".into(), "a".into()],
            },
        ])
        .unwrap_err();
        assert!(matches!(err, Error::NonBooleanInterval(_)));
    }

    #[test]
    fn prism_counts() {
        assert_eq!(prism_triangulation(&[0], 0).unwrap().len(), 1);
        assert_eq!(prism_triangulation(&[0, 1], 0).unwrap().len(), 2);
        assert_eq!(prism_triangulation(&[0, 1, 2], 0).unwrap().len(), 3);
        assert!(prism_triangulation(&[], 0).is_err());
        // Staircases of faces sit inside staircases of the base.
        let big = prism_triangulation(&[0, 1, 2], 0).unwrap();
        let small = prism_triangulation(&[0, 2], 0).unwrap();
        for cell in small {
            assert!(
                big.iter()
                    .any(|b| cell.iter().all(|x| b.contains(x))),
                "sub-staircase {cell:?} not contained"
            );
        }
    }

    #[test]
    fn stretch_of_a_single_simplex_is_contractible() {
        let cc = complex_from_indices(3, &[&[1, 2, 3]], None);
        let poset = SimplicialPoset::from_complex(&cc);
        let result = stretch(&poset);
        assert_eq!(result.top_level, 0);
        let t = hochster_torus(&result.complex, CoefficientRing::Z2).unwrap();
        assert_eq!(t.betti_vector(), vec![1]);
    }

    #[test]
    fn stretch_of_the_bigon() {
        let result = stretch(&bigon());
        assert_eq!(result.top_level, 1);
        // The stretch is a 4-cycle whose blocks pair *adjacent* corners:
        // the two lifted edges plus the two vertical prism edges, with
        // α_a = {a@0, a@1} and α_b = {b@0, b@1}.  Each singleton-L
        // subcomplex is a vertical edge, hence contractible, so only
        // L = ∅ and L = {a,b} contribute.  The moment-angle complex of
        // the bigon is S⁴ (two copies of D²×D² glued along S³), and the
        // table agrees with that.
        assert_eq!(result.complex.k(), 2);
        assert_eq!(result.complex.vertex_count(), 4);
        assert_eq!(
            result.complex.faces().iter().filter(|f| f.rank() == 2).count(),
            4
        );
        let t = hochster_torus(&result.complex, CoefficientRing::Z2).unwrap();
        assert_eq!(t.betti_vector(), vec![1, 0, 0, 0, 1]);
        assert!(result.liftings_are_disjoint(&bigon()));
        assert!(result.projection_is_simplicial(&bigon()));
    }

    #[test]
    fn stretch_of_a_complex_preserves_torus_betti() {
        let instances = vec![
            cycle_complex(4),
            cycle_complex(3),
            complex_from_indices(3, &[&[1, 2], &[2, 3]], None),
            complex_from_indices(4, &[&[1, 2], &[3, 4]], None),
            complex_from_indices(4, &[&[1, 2, 3], &[3, 4]], None),
        ];
        for cc in instances {
            let poset = SimplicialPoset::from_complex(&cc);
            let result = stretch(&poset);
            for ring in [CoefficientRing::Z2, CoefficientRing::Q] {
                let stretched = hochster_torus(&result.complex, ring).unwrap();
                let direct = hochster_torus(&cc, ring).unwrap();
                assert_eq!(stretched.betti_vector(), direct.betti_vector(), "{ring:?}");
            }
            assert!(result.projection_is_simplicial(&poset));
            assert!(result.liftings_are_disjoint(&poset));
        }
    }
}
