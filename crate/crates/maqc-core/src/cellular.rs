//! Explicit cellular cochain complexes of the quotient spaces.
//!
//! For a face `σ ∈ K` and a color set `J ⊆ [k] ∖ I_α(σ)` there is one basis
//! cochain, written `(σ, J)`.  Reconstructing the full `k`-tuple is
//! canonical: factor `i` carries the face `σ ∩ α_i` when `i ∈ I_α(σ)`, the
//! empty face `0̂` when `i ∈ J`, and the ghost face `−1̂` otherwise.  In the
//! real model the cochain has dimension `rank σ`; in the torus model
//! `rank σ + |I_α(σ)| + |J|`.
//!
//! The differential adds one vertex `v` to `σ` inside `K`; the term
//! survives exactly when the block of `v` lies in `I_α(σ) ∪ J`, with sign
//! `ε(σ,ω)` (real) or `κ(i_α(v), I_α(σ)∪J)·ε(σ,ω)` (torus).  Both models
//! preserve the color component `I_α(σ) ∪ J`, so the complex splits into
//! blocks `C^{*,L}`, each isomorphic to a shifted reduced simplicial
//! cochain complex of `K_{α,L}` via the transport maps below.

use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::homology::CochainComplex;
use crate::matrix::IntMatrix;
use crate::simplicial::{kappa, kappa_face, ColorSubset, ColoredComplex, Simplex};

/// Which cellular model: `S⁰` joins (real) or `S¹` joins (torus).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CellModel {
    Real,
    Torus,
}

/// The state of one factor of the reconstructed `k`-tuple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FactorLabel {
    /// `−1̂`: the basepoint cell of the factor.
    Ghost,
    /// `0̂`: the full sphere-factor cell.
    Empty,
    /// A nonempty face inside one block.
    Face(Simplex),
}

/// Basis element `(σ, J)` with `J ∩ I_α(σ) = ∅`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CellLabel {
    pub simplex: Simplex,
    pub colors: ColorSubset,
}

/// A cochain as a dense integer coefficient vector over the basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain {
    pub coeffs: Vec<i64>,
}

impl Cochain {
    pub fn zero(n: usize) -> Self {
        Cochain {
            coeffs: vec![0; n],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn add(&self, other: &Cochain) -> Cochain {
        Cochain {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn reduce_mod2(&mut self) {
        for c in &mut self.coeffs {
            *c = c.rem_euclid(2);
        }
    }

    pub fn support(&self) -> Vec<usize> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, _)| i)
            .collect()
    }
}

/// The cellular cochain complex of `X(K,λ_α)` or `X(K,Λ_α)`.
#[derive(Clone, Debug)]
pub struct CellComplex {
    pub model: CellModel,
    pub cc: ColoredComplex,
    pub basis: Vec<CellLabel>,
    index: HashMap<CellLabel, usize>,
    /// `diff[i]` lists `(target, coefficient)` pairs of `d(basis[i])`.
    pub diff: Vec<Vec<(usize, i64)>>,
}

impl CellComplex {
    /// Builds the complex.  Basis order: by `(σ, J)` with faces in
    /// (rank, lex) order and color masks increasing, so instances are
    /// reproducible.
    pub fn build(cc: &ColoredComplex, model: CellModel) -> Self {
        let k = cc.k();
        let mut basis = Vec::new();
        for f in cc.faces() {
            let support = cc.color_support_unchecked(f);
            let free: Vec<usize> = (0..k).filter(|&i| !support.contains(i)).collect();
            for mask in 0u64..(1u64 << free.len()) {
                let mut j = ColorSubset::EMPTY;
                for (b, &i) in free.iter().enumerate() {
                    if mask >> b & 1 == 1 {
                        j = j.insert(i);
                    }
                }
                basis.push(CellLabel {
                    simplex: f.clone(),
                    colors: j,
                });
            }
        }
        basis.sort();
        let index: HashMap<CellLabel, usize> = basis
            .iter()
            .enumerate()
            .map(|(i, l)| (l.clone(), i))
            .collect();

        let mut diff = vec![Vec::new(); basis.len()];
        for (src, label) in basis.iter().enumerate() {
            let support = cc.color_support_unchecked(&label.simplex);
            let live = support.union(label.colors);
            for v in 0..cc.vertex_count() as u32 {
                if label.simplex.contains(v) {
                    continue;
                }
                let omega = label.simplex.extended(v);
                if !cc.is_face(&omega) {
                    continue;
                }
                let block = cc.partition().block_of(v);
                if !live.contains(block) {
                    continue;
                }
                let mut sign = cc
                    .boundary_sign(&label.simplex, &omega)
                    .expect("codimension-one pair");
                if model == CellModel::Torus {
                    sign *= kappa(block, live, None).expect("block in live set");
                }
                let target = CellLabel {
                    simplex: omega,
                    colors: label.colors.remove(block),
                };
                diff[src].push((index[&target], sign));
            }
        }

        CellComplex {
            model,
            cc: cc.clone(),
            basis,
            index,
            diff,
        }
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn position(&self, label: &CellLabel) -> Option<usize> {
        self.index.get(label).copied()
    }

    /// Cochain dimension of a basis element.
    pub fn dim_of(&self, label: &CellLabel) -> i32 {
        let rank = label.simplex.rank() as i32;
        match self.model {
            CellModel::Real => rank,
            CellModel::Torus => {
                rank + self.cc.color_support_unchecked(&label.simplex).len() as i32
                    + label.colors.len() as i32
            }
        }
    }

    /// Multidegree `(−|J|, I_α(σ) ∪ J)`.
    pub fn mdeg(&self, label: &CellLabel) -> (i64, ColorSubset) {
        (
            -(label.colors.len() as i64),
            self.cc
                .color_support_unchecked(&label.simplex)
                .union(label.colors),
        )
    }

    /// The color component of the multidegree.
    pub fn color_of(&self, label: &CellLabel) -> ColorSubset {
        self.cc
            .color_support_unchecked(&label.simplex)
            .union(label.colors)
    }

    /// Reassembles the `k`-tuple of factor labels.
    pub fn factors(&self, label: &CellLabel) -> Vec<FactorLabel> {
        let support = self.cc.color_support_unchecked(&label.simplex);
        (0..self.cc.k())
            .map(|i| {
                if support.contains(i) {
                    let part: Vec<u32> = label
                        .simplex
                        .vertices()
                        .iter()
                        .copied()
                        .filter(|&v| self.cc.partition().block_of(v) == i)
                        .collect();
                    FactorLabel::Face(Simplex::from_sorted(part))
                } else if label.colors.contains(i) {
                    FactorLabel::Empty
                } else {
                    FactorLabel::Ghost
                }
            })
            .collect()
    }

    /// Packs the complex into degree-indexed matrices.
    pub fn to_cochain_complex(&self) -> CochainComplex {
        let mut order: BTreeMap<i32, Vec<usize>> = BTreeMap::new();
        for (i, label) in self.basis.iter().enumerate() {
            order.entry(self.dim_of(label)).or_default().push(i);
        }
        let pos_in_degree: HashMap<usize, usize> = order
            .values()
            .flat_map(|v| v.iter().enumerate().map(|(p, &i)| (i, p)))
            .collect();
        let sizes: BTreeMap<i32, usize> =
            order.iter().map(|(&d, v)| (d, v.len())).collect();
        let mut maps = BTreeMap::new();
        for (&d, members) in &order {
            let Some(next) = order.get(&(d + 1)) else {
                continue;
            };
            let mut m = IntMatrix::zero(next.len(), members.len());
            for (col, &i) in members.iter().enumerate() {
                for &(target, coeff) in &self.diff[i] {
                    m.set(pos_in_degree[&target], col, coeff);
                }
            }
            maps.insert(d, m);
        }
        CochainComplex::new(sizes, maps).expect("cell complex shapes")
    }

    /// Splits into the multidegree blocks `C^{*,L}`.  The differential
    /// never crosses blocks.
    pub fn split_multidegree(&self) -> BTreeMap<u64, CellComplex> {
        let mut groups: BTreeMap<u64, Vec<usize>> = BTreeMap::new();
        for (i, label) in self.basis.iter().enumerate() {
            groups.entry(self.color_of(label).0).or_default().push(i);
        }
        let mut out = BTreeMap::new();
        for (l, members) in groups {
            let basis: Vec<CellLabel> =
                members.iter().map(|&i| self.basis[i].clone()).collect();
            let index: HashMap<CellLabel, usize> = basis
                .iter()
                .enumerate()
                .map(|(i, lab)| (lab.clone(), i))
                .collect();
            let reindex: HashMap<usize, usize> = members
                .iter()
                .enumerate()
                .map(|(new, &old)| (old, new))
                .collect();
            let diff = members
                .iter()
                .map(|&old| {
                    self.diff[old]
                        .iter()
                        .map(|&(t, c)| {
                            (*reindex.get(&t).expect("differential preserves color"), c)
                        })
                        .collect()
                })
                .collect();
            out.insert(
                l,
                CellComplex {
                    model: self.model,
                    cc: self.cc.clone(),
                    basis,
                    index,
                    diff,
                },
            );
        }
        out
    }

    /// Applies the differential to a cochain.
    pub fn apply_diff(&self, a: &Cochain) -> Cochain {
        let mut out = Cochain::zero(self.len());
        for (i, &c) in a.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for &(t, s) in &self.diff[i] {
                out.coeffs[t] += c * s;
            }
        }
        out
    }

    pub fn basis_cochain(&self, label: &CellLabel) -> Option<Cochain> {
        let i = self.position(label)?;
        let mut c = Cochain::zero(self.len());
        c.coeffs[i] = 1;
        Some(c)
    }

    /// The multiplicative unit: all factors ghost, i.e. `(0̂, ∅)`.
    pub fn unit(&self) -> Cochain {
        self.basis_cochain(&CellLabel {
            simplex: Simplex::empty(),
            colors: ColorSubset::EMPTY,
        })
        .expect("unit cell exists")
    }

    /// Cellular cup product.  Ring-level guarantees hold over `Z₂` in the
    /// torus model; other rings and the real model are computed with the
    /// usual interchange sign and no further claims.
    pub fn cup(&self, a: &Cochain, b: &Cochain) -> Result<Cochain> {
        if a.coeffs.len() != self.len() || b.coeffs.len() != self.len() {
            return Err(Error::MixedCochains);
        }
        let mut out = Cochain::zero(self.len());
        for (ia, &ca) in a.coeffs.iter().enumerate() {
            if ca == 0 {
                continue;
            }
            let fa = self.factors(&self.basis[ia]);
            for (ib, &cb) in b.coeffs.iter().enumerate() {
                if cb == 0 {
                    continue;
                }
                let fb = self.factors(&self.basis[ib]);
                if let Some((label, sign)) = self.label_product(&fa, &fb) {
                    if let Some(t) = self.position(&label) {
                        out.coeffs[t] += ca * cb * sign;
                    }
                    // A product whose simplex is not a face of K restricts
                    // to zero on the subspace and is dropped.
                }
            }
        }
        Ok(out)
    }

    /// Factor-wise product of two basis tuples, with the interchange sign
    /// `(−1)^{Σ_{i>j} |a_i||b_j|}`.  Returns the resulting label (possibly
    /// not a face of `K`; the caller restricts) or `None` when some factor
    /// product vanishes.
    fn label_product(&self, fa: &[FactorLabel], fb: &[FactorLabel]) -> Option<(CellLabel, i64)> {
        let factor_dim = |f: &FactorLabel| -> i64 {
            match (self.model, f) {
                (_, FactorLabel::Ghost) => 0,
                (CellModel::Real, FactorLabel::Empty) => 0,
                (CellModel::Torus, FactorLabel::Empty) => 1,
                (CellModel::Real, FactorLabel::Face(s)) => s.rank() as i64,
                (CellModel::Torus, FactorLabel::Face(s)) => s.rank() as i64 + 1,
            }
        };
        let mut verts: Vec<u32> = Vec::new();
        let mut j = ColorSubset::EMPTY;
        for (i, (x, y)) in fa.iter().zip(fb.iter()).enumerate() {
            let product = match (self.model, x, y) {
                // The ghost factor is the unit in both models.
                (_, FactorLabel::Ghost, other) => Some(other.clone()),
                (_, other, FactorLabel::Ghost) => Some(other.clone()),
                // Torus factors square to zero away from the ghost.
                (CellModel::Torus, _, _) => None,
                // Real model: 0̂ is idempotent, faces multiply by disjoint
                // union, and mixed 0̂·face products vanish.
                (CellModel::Real, FactorLabel::Empty, FactorLabel::Empty) => {
                    Some(FactorLabel::Empty)
                }
                (CellModel::Real, FactorLabel::Face(s), FactorLabel::Face(t)) => {
                    if s.intersection(t).is_empty() {
                        Some(FactorLabel::Face(s.union(t)))
                    } else {
                        None
                    }
                }
                (CellModel::Real, _, _) => None,
            }?;
            match product {
                FactorLabel::Ghost => {}
                FactorLabel::Empty => j = j.insert(i),
                FactorLabel::Face(s) => verts.extend_from_slice(s.vertices()),
            }
        }
        let mut sign = 1i64;
        for i in 0..fa.len() {
            for jj in 0..i {
                if (factor_dim(&fa[i]) * factor_dim(&fb[jj])) % 2 == 1 {
                    sign = -sign;
                }
            }
        }
        verts.sort_unstable();
        Some((
            CellLabel {
                simplex: Simplex::from_sorted(verts),
                colors: j,
            },
            sign,
        ))
    }
}

/// The transport isomorphism from the reduced simplicial cochain complex
/// of `K_{α,L}` onto the block `C^{*,L}`: `σ* ↦ (σ, L∖I_α(σ))` with
/// coefficient 1 in the real model and `κ(σ,L)` in the torus model.  The
/// simplicial degree `q−1` lands in cellular dimension `q` (real) or
/// `q + |L|` (torus).
#[derive(Clone, Debug)]
pub struct Transport {
    pub colors: ColorSubset,
    /// Faces of `K_{α,L}` in ambient indices, (rank, lex) order; this is
    /// exactly the reduced-complex basis order of the subcomplex.
    pub faces: Vec<Simplex>,
    /// For each face, the image basis label and its coefficient.
    pub images: Vec<(CellLabel, i64)>,
}

/// Builds the transport map for one color set.
pub fn transport(cc: &ColoredComplex, l: ColorSubset, model: CellModel) -> Transport {
    let faces: Vec<Simplex> = cc.restricted_faces(l).into_iter().cloned().collect();
    let images = faces
        .iter()
        .map(|f| {
            let j = l.difference(cc.color_support_unchecked(f));
            let coeff = match model {
                CellModel::Real => 1,
                CellModel::Torus => kappa_face(cc, f, l, None).expect("face colors within L"),
            };
            (
                CellLabel {
                    simplex: f.clone(),
                    colors: j,
                },
                coeff,
            )
        })
        .collect();
    Transport {
        colors: l,
        faces,
        images,
    }
}

impl Transport {
    /// Checks that the map commutes with the differentials as an exact
    /// matrix identity: `d_cell(φ(σ*)) = φ(d_simplicial(σ*))` for every
    /// basis face.
    pub fn commutes(&self, cell: &CellComplex) -> bool {
        let cc = &cell.cc;
        let face_pos: HashMap<&Simplex, usize> =
            self.faces.iter().enumerate().map(|(i, f)| (f, i)).collect();
        for (i, f) in self.faces.iter().enumerate() {
            // Simplicial coboundary within K_{α,L}.
            let mut rhs = Cochain::zero(cell.len());
            for v in 0..cc.vertex_count() as u32 {
                if f.contains(v) {
                    continue;
                }
                let omega = f.extended(v);
                if !cc.is_face(&omega)
                    || !cc.color_support_unchecked(&omega).is_subset_of(self.colors)
                {
                    continue;
                }
                let eps = cc.boundary_sign(f, &omega).expect("codim-1");
                let (label, c) = &self.images[face_pos[&omega]];
                let t = cell.position(label).expect("image in basis");
                rhs.coeffs[t] += eps * c;
            }
            // Cellular differential of the image.
            let (label, c) = &self.images[i];
            let mut lhs = Cochain::zero(cell.len());
            let src = cell.position(label).expect("image in basis");
            for &(t, s) in &cell.diff[src] {
                lhs.coeffs[t] += c * s;
            }
            if lhs != rhs {
                return false;
            }
        }
        true
    }
}
