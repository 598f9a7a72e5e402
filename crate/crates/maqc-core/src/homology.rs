//! Cohomology of finite cochain complexes over `Z₂`, `Q` and `Z`.
//!
//! Complexes store integer differential matrices indexed by degree; degrees
//! are sparse so the reduced convention (the empty simplex sitting in
//! degree −1 with `H̃^{−1}(K_∅) = k`) needs no offset bookkeeping.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::matrix::{smith_normal_form, BitMatrix, IntMatrix, Snf};
use crate::simplicial::{ColoredComplex, Simplex};

/// Coefficients: the field with two elements, the rationals, or the
/// integers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CoefficientRing {
    Z2,
    Q,
    Z,
}

impl CoefficientRing {
    pub const ALL: [CoefficientRing; 3] = [
        CoefficientRing::Z2,
        CoefficientRing::Q,
        CoefficientRing::Z,
    ];

    pub fn is_field(self) -> bool {
        !matches!(self, CoefficientRing::Z)
    }

    pub fn label(self) -> &'static str {
        match self {
            CoefficientRing::Z2 => "Z2",
            CoefficientRing::Q => "Q",
            CoefficientRing::Z => "Z",
        }
    }
}

/// A finitely generated abelian group (or vector space): free rank plus
/// torsion invariant factors in divisibility order, each ≥ 2.  Over a
/// field the torsion list is empty and `rank` is the dimension.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Group {
    pub rank: usize,
    pub torsion: Vec<u64>,
}

impl Group {
    pub fn free(rank: usize) -> Self {
        Group {
            rank,
            torsion: Vec::new(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    /// Primary decomposition: for each prime, the multiset of exponents.
    pub fn primary_parts(&self) -> BTreeMap<u64, Vec<u32>> {
        let mut parts: BTreeMap<u64, Vec<u32>> = BTreeMap::new();
        for &f in &self.torsion {
            let mut f = f;
            let mut p = 2u64;
            while p * p <= f {
                if f % p == 0 {
                    let mut e = 0;
                    while f % p == 0 {
                        f /= p;
                        e += 1;
                    }
                    parts.entry(p).or_default().push(e);
                }
                p += 1;
            }
            if f > 1 {
                parts.entry(f).or_default().push(1);
            }
        }
        for exps in parts.values_mut() {
            exps.sort_unstable();
        }
        parts
    }

    /// Direct sum; torsion is recomposed into invariant-factor form.
    pub fn direct_sum(&self, other: &Group) -> Group {
        let mut parts = self.primary_parts();
        for (p, exps) in other.primary_parts() {
            parts.entry(p).or_default().extend(exps);
        }
        for exps in parts.values_mut() {
            exps.sort_unstable();
        }
        let depth = parts.values().map(|e| e.len()).max().unwrap_or(0);
        // Largest factor takes the largest exponent of every prime.
        let mut factors = vec![1u64; depth];
        for (p, exps) in &parts {
            for (i, &e) in exps.iter().rev().enumerate() {
                factors[depth - 1 - i] *= p.pow(e);
            }
        }
        Group {
            rank: self.rank + other.rank,
            torsion: factors,
        }
    }

    /// Isomorphism test (as abstract groups): free ranks and primary parts
    /// agree.
    pub fn isomorphic(&self, other: &Group) -> bool {
        self.rank == other.rank && self.primary_parts() == other.primary_parts()
    }
}

impl std::fmt::Display for Group {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        if self.rank > 0 {
            parts.push(if self.rank == 1 {
                "Z".to_string()
            } else {
                format!("Z^{}", self.rank)
            });
        }
        for t in &self.torsion {
            parts.push(format!("Z/{t}"));
        }
        write!(f, "{}", parts.join(" + "))
    }
}

/// Per-degree cohomology groups.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct CohomologyResult {
    pub by_degree: BTreeMap<i32, Group>,
}

impl CohomologyResult {
    pub fn group(&self, q: i32) -> Group {
        self.by_degree.get(&q).cloned().unwrap_or_default()
    }

    pub fn rank(&self, q: i32) -> usize {
        self.by_degree.get(&q).map_or(0, |g| g.rank)
    }
}

/// A finite cochain complex: basis sizes per degree and integer
/// differential matrices `d_q : C^q → C^{q+1}` (rows = target basis).
#[derive(Clone, Debug)]
pub struct CochainComplex {
    sizes: BTreeMap<i32, usize>,
    maps: BTreeMap<i32, IntMatrix>,
}

impl CochainComplex {
    pub fn new(sizes: BTreeMap<i32, usize>, maps: BTreeMap<i32, IntMatrix>) -> Result<Self> {
        for (&q, m) in &maps {
            let src = sizes.get(&q).copied().unwrap_or(0);
            let dst = sizes.get(&(q + 1)).copied().unwrap_or(0);
            if m.cols != src || m.rows != dst {
                return Err(Error::ShapeMismatch { degree: q, next: q + 1 });
            }
        }
        Ok(CochainComplex { sizes, maps })
    }

    pub fn size(&self, q: i32) -> usize {
        self.sizes.get(&q).copied().unwrap_or(0)
    }

    pub fn degrees(&self) -> impl Iterator<Item = i32> + '_ {
        self.sizes.keys().copied()
    }

    pub fn map(&self, q: i32) -> Option<&IntMatrix> {
        self.maps.get(&q)
    }

    /// Verifies `d_{q+1} ∘ d_q = 0` for every adjacent pair.
    pub fn check_differential(&self) -> Result<()> {
        for (&q, d) in &self.maps {
            if let Some(d_next) = self.maps.get(&(q + 1)) {
                if !d_next.mul(d).is_zero() {
                    return Err(Error::BrokenDifferential { degree: q, next: q + 1 });
                }
            }
        }
        Ok(())
    }

    /// Alternating sum of basis sizes.
    pub fn euler_characteristic(&self) -> i64 {
        self.sizes
            .iter()
            .map(|(&q, &n)| if q.rem_euclid(2) == 0 { n as i64 } else { -(n as i64) })
            .sum()
    }
}

/// Cohomology of `cx` over `ring`.  The differential sanity check runs
/// first; a failure signals a builder bug rather than bad user input.
pub fn cohomology(cx: &CochainComplex, ring: CoefficientRing) -> Result<CohomologyResult> {
    cx.check_differential()?;
    let mut out = CohomologyResult::default();

    // Each differential's rank (and SNF over Z) is shared between the two
    // degrees it touches.
    let mut ranks: BTreeMap<i32, usize> = BTreeMap::new();
    let mut snfs: BTreeMap<i32, Snf> = BTreeMap::new();
    for (&q, m) in &cx.maps {
        match ring {
            CoefficientRing::Z2 => {
                ranks.insert(q, BitMatrix::from_int(m).rank());
            }
            CoefficientRing::Q => {
                ranks.insert(q, m.rank_over_q());
            }
            CoefficientRing::Z => {
                let snf = smith_normal_form(m);
                ranks.insert(q, snf.rank);
                snfs.insert(q, snf);
            }
        }
    }

    for (&q, &n) in &cx.sizes {
        let out_rank = ranks.get(&q).copied().unwrap_or(0);
        let in_rank = ranks.get(&(q - 1)).copied().unwrap_or(0);
        let free = n - out_rank - in_rank;
        let torsion = if ring == CoefficientRing::Z {
            snfs.get(&(q - 1)).map_or(Vec::new(), |s| s.torsion())
        } else {
            Vec::new()
        };
        let g = Group {
            rank: free,
            torsion,
        };
        if !g.is_zero() {
            out.by_degree.insert(q, g);
        }
    }
    Ok(out)
}

/// The reduced simplicial cochain complex of a complex: degree `q` basis =
/// rank-`(q+1)` faces, so the empty simplex sits in degree −1 and
/// `d(0̂*) = Σ_v v*`.
pub fn build_reduced_cochain(cc: &ColoredComplex) -> CochainComplex {
    let top = cc.top_rank();
    let mut by_rank: Vec<Vec<&Simplex>> = vec![Vec::new(); top + 1];
    for f in cc.faces() {
        by_rank[f.rank()].push(f);
    }
    let mut sizes = BTreeMap::new();
    for (rank, faces) in by_rank.iter().enumerate() {
        if !faces.is_empty() {
            sizes.insert(rank as i32 - 1, faces.len());
        }
    }
    let mut maps = BTreeMap::new();
    for rank in 0..top {
        let src = &by_rank[rank];
        let dst = &by_rank[rank + 1];
        if src.is_empty() || dst.is_empty() {
            continue;
        }
        let index: std::collections::HashMap<&Simplex, usize> =
            dst.iter().enumerate().map(|(i, s)| (*s, i)).collect();
        let mut m = IntMatrix::zero(dst.len(), src.len());
        for (j, s) in src.iter().enumerate() {
            for v in 0..cc.vertex_count() as u32 {
                if s.contains(v) {
                    continue;
                }
                let big = s.extended(v);
                if let Some(&i) = index.get(&big) {
                    m.set(i, j, cc.boundary_sign(s, &big).expect("codim-1 pair"));
                }
            }
        }
        maps.insert(rank as i32 - 1, m);
    }
    CochainComplex::new(sizes, maps).expect("reduced complex shapes")
}

/// Reduced cohomology of a complex in one call.
pub fn reduced_cohomology(cc: &ColoredComplex, ring: CoefficientRing) -> Result<CohomologyResult> {
    cohomology(&build_reduced_cochain(cc), ring)
}
