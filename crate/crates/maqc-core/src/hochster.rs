//! Hochster-type decompositions.
//!
//! The cohomology of the quotient spaces attached to `(K, α)` splits as a
//! direct sum of shifted reduced cohomology of the restricted subcomplexes
//! `K_{α,L}`:
//!
//! * real model:    `H^q ≅ ⊕_L H̃^{q−1}(K_{α,L})`
//! * torus model:   `H^q ≅ ⊕_L H̃^{q−|L|−1}(K_{α,L})`
//! * sphere model `𝕊 = (S^{d₁},…,S^{d_k})`:
//!   `H^q ≅ ⊕_L H̃^{q−1−Σ_{i∈L} d_i}(K_{α,L})`
//!
//! over any field and over `Z`.  The trivial partition recovers the
//! classical Hochster formulas for (real) moment-angle complexes via full
//! subcomplexes.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::homology::{reduced_cohomology, CoefficientRing, Group};
use crate::simplicial::{ColorSubset, ColoredComplex};

/// Sphere dimension sequence `(d₁, …, d_k)`, all ≥ 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SphereDims(pub Vec<u32>);

impl SphereDims {
    pub fn check(&self, k: usize) -> Result<()> {
        if self.0.len() != k {
            return Err(Error::DimsLengthMismatch {
                got: self.0.len(),
                expected: k,
            });
        }
        Ok(())
    }

    pub fn total(&self, l: ColorSubset) -> i64 {
        l.iter().map(|i| self.0[i] as i64).sum()
    }
}

/// Which family of quotient spaces is being modelled.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Model {
    /// Quotient of the real moment-angle complex (`S⁰` factors).
    Real,
    /// Quotient of the moment-angle complex (`S¹` factors).
    Torus,
    /// Sphere factors of the given dimensions.
    Spheres(SphereDims),
}

impl Model {
    /// Degree shift of the `L`-summand relative to `H̃^{q−1}`.
    pub fn shift(&self, l: ColorSubset) -> i64 {
        match self {
            Model::Real => 0,
            Model::Torus => l.len() as i64,
            Model::Spheres(d) => d.total(l),
        }
    }

    /// Suspension exponent of the `L`-summand in the stable decomposition.
    pub fn suspension_exponent(&self, l: ColorSubset) -> i64 {
        self.shift(l) + 2
    }

    pub fn label(&self) -> String {
        match self {
            Model::Real => "real".into(),
            Model::Torus => "torus".into(),
            Model::Spheres(d) => format!(
                "spheres({})",
                d.0.iter()
                    .map(|x| x.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            ),
        }
    }

    pub fn check(&self, k: usize) -> Result<()> {
        if let Model::Spheres(d) = self {
            d.check(k)?;
        }
        Ok(())
    }
}

/// The multigraded table: for each cohomological degree `q` and color set
/// `L`, the contribution `H̃^{q−1−shift(L)}(K_{α,L})`.  Absent entries are
/// zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultidegreeTable {
    pub model: String,
    pub ring: CoefficientRing,
    pub entries: BTreeMap<(i32, u64), Group>,
}

impl MultidegreeTable {
    pub fn entry(&self, q: i32, l: ColorSubset) -> Group {
        self.entries.get(&(q, l.0)).cloned().unwrap_or_default()
    }

    /// Direct sum over `L` per degree.
    pub fn totals(&self) -> BTreeMap<i32, Group> {
        let mut out: BTreeMap<i32, Group> = BTreeMap::new();
        for (&(q, _), g) in &self.entries {
            let cur = out.entry(q).or_default();
            *cur = cur.direct_sum(g);
        }
        out
    }

    /// Betti vector `(rank in degree 0, 1, …, top)`, for quick comparisons.
    pub fn betti_vector(&self) -> Vec<usize> {
        let totals = self.totals();
        let top = totals.keys().copied().max().unwrap_or(0);
        (0..=top)
            .map(|q| totals.get(&q).map_or(0, |g| g.rank))
            .collect()
    }

    /// Group-level equality of the per-degree totals.
    pub fn totals_isomorphic(&self, other: &MultidegreeTable) -> bool {
        let a = self.totals();
        let b = other.totals();
        let keys: std::collections::BTreeSet<i32> = a.keys().chain(b.keys()).copied().collect();
        keys.into_iter().all(|q| {
            a.get(&q)
                .cloned()
                .unwrap_or_default()
                .isomorphic(&b.get(&q).cloned().unwrap_or_default())
        })
    }
}

/// The subcomplexes `K_{α,L}` for all `L ⊆ [k]`, computed once and shared
/// by every consumer of the decomposition.  Enumeration order is popcount
/// then numeric mask, so downstream reports are stable.
pub struct Decomposition<'a> {
    pub cc: &'a ColoredComplex,
    pub pieces: Vec<(ColorSubset, ColoredComplex)>,
}

impl<'a> Decomposition<'a> {
    pub fn new(cc: &'a ColoredComplex) -> Self {
        let pieces = ColorSubset::all_subsets(cc.k())
            .into_iter()
            .map(|l| (l, cc.restricted_subcomplex(l)))
            .collect();
        Decomposition { cc, pieces }
    }

    /// The Hochster-type table for the given model and coefficients.
    pub fn table(&self, model: &Model, ring: CoefficientRing) -> Result<MultidegreeTable> {
        model.check(self.cc.k())?;
        let mut entries = BTreeMap::new();
        for (l, sub) in &self.pieces {
            let h = reduced_cohomology(sub, ring)?;
            let shift = model.shift(*l);
            for (&deg, g) in &h.by_degree {
                // entry(q, L) = H̃^{q−1−shift}(K_{α,L})
                let q = deg as i64 + 1 + shift;
                let q = i32::try_from(q).expect("degree fits i32");
                entries.insert((q, l.0), g.clone());
            }
        }
        Ok(MultidegreeTable {
            model: model.label(),
            ring,
            entries,
        })
    }

    /// The summands of the stable wedge decomposition: for each `L`, the
    /// subcomplex `K_{α,L}` suspended `shift(L) + 2` times (one suspension
    /// is spent on the left-hand side of the equivalence, so the wedge
    /// reproduces the table totals after shifting down by one).
    pub fn wedge_summands(&self, model: &Model) -> Result<Vec<WedgeSummand>> {
        model.check(self.cc.k())?;
        Ok(self
            .pieces
            .iter()
            .map(|(l, sub)| WedgeSummand {
                colors: *l,
                suspension_exponent: model.suspension_exponent(*l),
                subcomplex: sub.clone(),
            })
            .collect())
    }
}

/// One wedge summand `Σ^{e} K_{α,L}` of the stable decomposition.
#[derive(Clone, Debug)]
pub struct WedgeSummand {
    pub colors: ColorSubset,
    pub suspension_exponent: i64,
    pub subcomplex: ColoredComplex,
}

/// Reduced cohomology totals of the formal wedge `⋁_L Σ^{e_L} K_{α,L}`,
/// shifted down by one suspension.  By the stable decomposition this
/// reproduces the Hochster table totals degree by degree.
pub fn wedge_totals(
    summands: &[WedgeSummand],
    ring: CoefficientRing,
) -> Result<BTreeMap<i32, Group>> {
    let mut out: BTreeMap<i32, Group> = BTreeMap::new();
    for s in summands {
        let h = reduced_cohomology(&s.subcomplex, ring)?;
        for (&deg, g) in &h.by_degree {
            // H̃^{n}(Σ^e X) = H̃^{n−e}(X); the left-hand suspension eats one.
            let q =
                i32::try_from(deg as i64 + s.suspension_exponent - 1).expect("degree fits i32");
            let cur = out.entry(q).or_default();
            *cur = cur.direct_sum(g);
        }
    }
    Ok(out)
}

/// `H^*(X(K,λ_α))` decomposition.
pub fn hochster_real(cc: &ColoredComplex, ring: CoefficientRing) -> Result<MultidegreeTable> {
    Decomposition::new(cc).table(&Model::Real, ring)
}

/// `H^*(X(K,Λ_α))` decomposition.
pub fn hochster_torus(cc: &ColoredComplex, ring: CoefficientRing) -> Result<MultidegreeTable> {
    Decomposition::new(cc).table(&Model::Torus, ring)
}

/// `H^*(X(K,α,𝕊))` decomposition for a sphere dimension sequence.
pub fn hochster_spheres(
    cc: &ColoredComplex,
    dims: &SphereDims,
    ring: CoefficientRing,
) -> Result<MultidegreeTable> {
    Decomposition::new(cc).table(&Model::Spheres(dims.clone()), ring)
}
