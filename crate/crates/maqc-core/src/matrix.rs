//! Exact linear algebra: bit-packed Gaussian elimination over GF(2) and
//! integer Smith normal form.
//!
//! GF(2) is the hot path (the verification sweep runs thousands of rank
//! computations), so rows are packed into `u64` words.  Integer reduction
//! first runs entirely in checked `i64`; if any intermediate value would
//! overflow, the matrix is lifted to `BigInt` and reduced there, so results
//! are exact regardless of coefficient growth.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

/// Dense integer matrix, row-major.  Rows index the target basis of a
/// linear map, columns the source basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<i64>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c));
        IntMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> i64 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: i64) {
        self.data[r * self.cols + c] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    /// Matrix product `self * other`.
    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = IntMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.get(i, j) + a * other.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    /// Rank over the rationals.
    pub fn rank_over_q(&self) -> usize {
        smith_normal_form(self).rank
    }
}

/// Result of a Smith normal form computation: the nonzero invariant
/// factors `f₁ | f₂ | …` (each ≥ 1) and the rank.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Snf {
    pub factors: Vec<u64>,
    pub rank: usize,
}

impl Snf {
    /// Invariant factors greater than one, i.e. the torsion of the
    /// cokernel restricted to the column space.
    pub fn torsion(&self) -> Vec<u64> {
        self.factors.iter().copied().filter(|&f| f > 1).collect()
    }
}

/// Smith normal form of an integer matrix.  Pivots are chosen with the
/// smallest absolute value, which controls coefficient growth; the `i64`
/// pass bails out to `BigInt` on any overflow.
pub fn smith_normal_form(m: &IntMatrix) -> Snf {
    match snf_i64(m) {
        Some(snf) => snf,
        None => snf_bigint(m),
    }
}

fn snf_i64(m: &IntMatrix) -> Option<Snf> {
    let (rows, cols) = (m.rows, m.cols);
    let mut a: Vec<Vec<i64>> = (0..rows)
        .map(|r| (0..cols).map(|c| m.get(r, c)).collect())
        .collect();
    let n = rows.min(cols);
    let mut diag: Vec<i64> = Vec::new();

    for t in 0..n {
        // Find the smallest nonzero entry of the trailing submatrix.
        let mut pivot: Option<(usize, usize)> = None;
        for r in t..rows {
            for c in t..cols {
                if a[r][c] != 0
                    && pivot.is_none_or(|(pr, pc)| a[r][c].abs() < a[pr][pc].abs())
                {
                    pivot = Some((r, c));
                }
            }
        }
        let Some((pr, pc)) = pivot else { break };
        a.swap(t, pr);
        for row in a.iter_mut() {
            row.swap(t, pc);
        }

        loop {
            // Clear the pivot column.
            let mut dirty = false;
            for r in t + 1..rows {
                if a[r][t] != 0 {
                    let q = div_round(a[r][t], a[t][t]);
                    for c in t..cols {
                        a[r][c] = a[r][c].checked_sub(q.checked_mul(a[t][c])?)?;
                    }
                    if a[r][t] != 0 {
                        // Remainder became the new smaller pivot.
                        a.swap(t, r);
                        dirty = true;
                    }
                }
            }
            if dirty {
                continue;
            }
            // Clear the pivot row.
            for c in t + 1..cols {
                if a[t][c] != 0 {
                    let q = div_round(a[t][c], a[t][t]);
                    for r in t..rows {
                        a[r][c] = a[r][c].checked_sub(q.checked_mul(a[r][t])?)?;
                    }
                    if a[t][c] != 0 {
                        for row in a.iter_mut() {
                            row.swap(t, c);
                        }
                        dirty = true;
                    }
                }
            }
            if dirty {
                continue;
            }
            // Pivot must divide the rest of the submatrix.
            let p = a[t][t];
            let mut offender = None;
            'scan: for r in t + 1..rows {
                for c in t + 1..cols {
                    if a[r][c] % p != 0 {
                        offender = Some(r);
                        break 'scan;
                    }
                }
            }
            match offender {
                Some(r) => {
                    for c in t..cols {
                        a[t][c] = a[t][c].checked_add(a[r][c])?;
                    }
                }
                None => break,
            }
        }
        diag.push(a[t][t].abs());
    }

    let rank = diag.len();
    Some(Snf {
        factors: diag.into_iter().map(|d| d as u64).collect(),
        rank,
    })
}

fn div_round(a: i64, b: i64) -> i64 {
    // Round-to-nearest division keeps remainders small.
    let q = a / b;
    let r = a - q * b;
    if 2 * r.abs() > b.abs() {
        q + if (r < 0) == (b < 0) { 1 } else { -1 }
    } else {
        q
    }
}

fn snf_bigint(m: &IntMatrix) -> Snf {
    let (rows, cols) = (m.rows, m.cols);
    let mut a: Vec<Vec<BigInt>> = (0..rows)
        .map(|r| (0..cols).map(|c| BigInt::from(m.get(r, c))).collect())
        .collect();
    let n = rows.min(cols);
    let mut diag: Vec<BigInt> = Vec::new();

    for t in 0..n {
        let mut pivot: Option<(usize, usize)> = None;
        for r in t..rows {
            for c in t..cols {
                if !a[r][c].is_zero()
                    && pivot
                        .is_none_or(|(pr, pc)| a[r][c].abs() < a[pr][pc].abs())
                {
                    pivot = Some((r, c));
                }
            }
        }
        let Some((pr, pc)) = pivot else { break };
        a.swap(t, pr);
        for row in a.iter_mut() {
            row.swap(t, pc);
        }

        loop {
            let mut dirty = false;
            for r in t + 1..rows {
                if !a[r][t].is_zero() {
                    let q = big_div_round(&a[r][t], &a[t][t]);
                    for c in t..cols {
                        let v = &a[r][c] - &q * &a[t][c];
                        a[r][c] = v;
                    }
                    if !a[r][t].is_zero() {
                        a.swap(t, r);
                        dirty = true;
                    }
                }
            }
            if dirty {
                continue;
            }
            for c in t + 1..cols {
                if !a[t][c].is_zero() {
                    let q = big_div_round(&a[t][c], &a[t][t]);
                    for r in t..rows {
                        let v = &a[r][c] - &q * &a[r][t];
                        a[r][c] = v;
                    }
                    if !a[t][c].is_zero() {
                        for row in a.iter_mut() {
                            row.swap(t, c);
                        }
                        dirty = true;
                    }
                }
            }
            if dirty {
                continue;
            }
            let p = a[t][t].clone();
            let mut offender = None;
            'scan: for r in t + 1..rows {
                for c in t + 1..cols {
                    if !(&a[r][c] % &p).is_zero() {
                        offender = Some(r);
                        break 'scan;
                    }
                }
            }
            match offender {
                Some(r) => {
                    for c in t..cols {
                        let v = &a[t][c] + &a[r][c];
                        a[t][c] = v;
                    }
                }
                None => break,
            }
        }
        diag.push(a[t][t].abs());
    }

    let rank = diag.len();
    Snf {
        factors: diag
            .into_iter()
            .map(|d| {
                let (_, digits) = d.to_u64_digits();
                match digits.len() {
                    0 => 0,
                    1 => digits[0],
                    _ => panic!("invariant factor exceeds u64"),
                }
            })
            .collect(),
        rank,
    }
}

fn big_div_round(a: &BigInt, b: &BigInt) -> BigInt {
    let q = a / b;
    let r = a - &q * b;
    if r.abs() * 2 > b.abs() {
        if (r < BigInt::zero()) == (b < &BigInt::zero()) {
            q + 1
        } else {
            q - 1
        }
    } else {
        q
    }
}

/// Dense matrix over GF(2), rows packed into `u64` words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BitMatrix {
    pub rows: usize,
    pub cols: usize,
    words: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        let words = cols.div_ceil(64).max(1);
        BitMatrix {
            rows,
            cols,
            words,
            data: vec![0; rows * words],
        }
    }

    pub fn from_int(m: &IntMatrix) -> Self {
        let mut b = BitMatrix::zero(m.rows, m.cols);
        for r in 0..m.rows {
            for c in 0..m.cols {
                if m.get(r, c).rem_euclid(2) == 1 {
                    b.set(r, c, true);
                }
            }
        }
        b
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> bool {
        self.data[r * self.words + c / 64] >> (c % 64) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: bool) {
        let w = r * self.words + c / 64;
        if v {
            self.data[w] |= 1u64 << (c % 64);
        } else {
            self.data[w] &= !(1u64 << (c % 64));
        }
    }

    fn xor_rows(&mut self, dst: usize, src: usize) {
        let (d, s) = (dst * self.words, src * self.words);
        for w in 0..self.words {
            let v = self.data[s + w];
            self.data[d + w] ^= v;
        }
    }

    fn row_word(&self, r: usize, w: usize) -> u64 {
        self.data[r * self.words + w]
    }

    /// Column-echelon data: returns the pivot column of each reduced row.
    fn eliminate(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            let mut sel = None;
            for r in row..self.rows {
                if self.get(r, col) {
                    sel = Some(r);
                    break;
                }
            }
            let Some(sel) = sel else { continue };
            self.data.swap(sel * self.words, row * self.words);
            for w in 1..self.words {
                self.data.swap(sel * self.words + w, row * self.words + w);
            }
            for r in 0..self.rows {
                if r != row && self.get(r, col) {
                    self.xor_rows(r, row);
                }
            }
            pivots.push(col);
            row += 1;
            if row == self.rows {
                break;
            }
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().eliminate().len()
    }

    /// Basis of the column null space: vectors `x` with `A·x = 0`,
    /// returned as bit vectors of length `cols`, in a deterministic order.
    pub fn kernel_basis(&self) -> Vec<BitVec> {
        let mut work = self.clone();
        let pivots = work.eliminate();
        let pivot_set: std::collections::HashSet<usize> = pivots.iter().copied().collect();
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_set.contains(&free) {
                continue;
            }
            let mut v = BitVec::zero(self.cols);
            v.set(free, true);
            for (row, &pc) in pivots.iter().enumerate() {
                if work.get(row, free) {
                    v.set(pc, true);
                }
            }
            basis.push(v);
        }
        basis
    }

    /// Solves `A·x = b`; returns any solution.
    pub fn solve(&self, b: &BitVec) -> Option<BitVec> {
        assert_eq!(b.len, self.rows);
        // Augment with b as an extra column.
        let mut aug = BitMatrix::zero(self.rows, self.cols + 1);
        for r in 0..self.rows {
            for w in 0..self.words {
                aug.data[r * aug.words + w] = self.row_word(r, w);
            }
            if b.get(r) {
                aug.set(r, self.cols, true);
            }
        }
        let pivots = aug.eliminate();
        if pivots.contains(&self.cols) {
            return None; // inconsistent
        }
        let mut x = BitVec::zero(self.cols);
        for (row, &pc) in pivots.iter().enumerate() {
            if aug.get(row, self.cols) {
                x.set(pc, true);
            }
        }
        Some(x)
    }
}

/// Bit vector of fixed length.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BitVec {
    pub len: usize,
    words: Vec<u64>,
}

impl BitVec {
    pub fn zero(len: usize) -> Self {
        BitVec {
            len,
            words: vec![0; len.div_ceil(64).max(1)],
        }
    }

    pub fn from_indices(len: usize, ones: &[usize]) -> Self {
        let mut v = BitVec::zero(len);
        for &i in ones {
            v.set(i, true);
        }
        v
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, v: bool) {
        if v {
            self.words[i / 64] |= 1u64 << (i % 64);
        } else {
            self.words[i / 64] &= !(1u64 << (i % 64));
        }
    }

    pub fn xor_assign(&mut self, other: &BitVec) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn ones(&self) -> Vec<usize> {
        (0..self.len).filter(|&i| self.get(i)).collect()
    }
}

/// A set of GF(2) vectors kept in echelon form, for incremental rank and
/// membership tests.
#[derive(Clone, Debug, Default)]
pub struct GfSpan {
    rows: Vec<BitVec>,
}

impl GfSpan {
    pub fn new() -> Self {
        GfSpan::default()
    }

    /// Reduces `v` against the span; returns the residue.
    pub fn reduce(&self, v: &BitVec) -> BitVec {
        let mut v = v.clone();
        for row in &self.rows {
            let lead = row.ones()[0];
            if v.get(lead) {
                v.xor_assign(row);
            }
        }
        v
    }

    /// Inserts `v` if independent; returns true when the rank grew.
    pub fn insert(&mut self, v: &BitVec) -> bool {
        let r = self.reduce(v);
        if r.is_zero() {
            return false;
        }
        let lead = r.ones()[0];
        let pos = self
            .rows
            .partition_point(|row| row.ones()[0] < lead);
        self.rows.insert(pos, r);
        true
    }

    pub fn contains(&self, v: &BitVec) -> bool {
        self.reduce(v).is_zero()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent oracle: invariant factors via gcds of k×k minors,
    /// `f_k = d_k / d_{k−1}` with `d_k = gcd` of all k×k minors.
    fn minor_gcd_factors(m: &IntMatrix) -> Vec<u64> {
        fn det(m: &IntMatrix, rows: &[usize], cols: &[usize]) -> i128 {
            if rows.is_empty() {
                return 1;
            }
            let mut total = 0i128;
            for (i, &r) in rows.iter().enumerate() {
                let sub_rows: Vec<usize> =
                    rows.iter().copied().filter(|&x| x != r).collect();
                let v = m.get(r, cols[0]) as i128;
                if v != 0 {
                    let sign = if i % 2 == 0 { 1 } else { -1 };
                    total += sign * v * det(m, &sub_rows, &cols[1..]);
                }
            }
            total
        }
        fn combos(n: usize, k: usize) -> Vec<Vec<usize>> {
            if k == 0 {
                return vec![vec![]];
            }
            let mut out = Vec::new();
            for first in 0..n {
                for mut rest in combos(n, k - 1) {
                    if rest.iter().all(|&x| x > first) {
                        let mut v = vec![first];
                        v.append(&mut rest);
                        out.push(v);
                    }
                }
            }
            out
        }
        fn gcd(a: u128, b: u128) -> u128 {
            if b == 0 {
                a
            } else {
                gcd(b, a % b)
            }
        }
        let mut factors = Vec::new();
        let mut prev = 1u128;
        for k in 1..=m.rows.min(m.cols) {
            let mut g = 0u128;
            for rows in combos(m.rows, k) {
                for cols in combos(m.cols, k) {
                    g = gcd(g, det(m, &rows, &cols).unsigned_abs());
                }
            }
            if g == 0 {
                break;
            }
            factors.push((g / prev) as u64);
            prev = g;
        }
        factors
    }

    #[test]
    fn snf_small_cases() {
        let m = IntMatrix::from_rows(vec![vec![2, 0], vec![0, 3]]);
        let snf = smith_normal_form(&m);
        assert_eq!(snf.factors, vec![1, 6]);
        assert_eq!(snf.rank, 2);
        assert_eq!(minor_gcd_factors(&m), vec![1, 6]);

        let z = IntMatrix::zero(3, 2);
        let snf = smith_normal_form(&z);
        assert!(snf.factors.is_empty());
        assert_eq!(snf.rank, 0);

        let one = IntMatrix::from_rows(vec![vec![1]]);
        let snf = smith_normal_form(&one);
        assert_eq!(snf.factors, vec![1]);
        assert_eq!(snf.rank, 1);
    }

    #[test]
    fn snf_matches_minor_gcd_oracle() {
        let samples = vec![
            IntMatrix::from_rows(vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, 4, 16]]),
            IntMatrix::from_rows(vec![vec![1, 2], vec![3, 4], vec![5, 6]]),
            IntMatrix::from_rows(vec![vec![0, 2], vec![4, 0]]),
            IntMatrix::from_rows(vec![vec![6, 0, 0], vec![0, 10, 0], vec![0, 0, 15]]),
        ];
        for m in samples {
            let snf = smith_normal_form(&m);
            assert_eq!(snf.factors, minor_gcd_factors(&m), "matrix {m:?}");
        }
    }

    #[test]
    fn snf_invariant_under_unimodular_multiplication() {
        // Randomized elementary row/column operations preserve the factors.
        let mut state = 0x5eed_1234_u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        let base = IntMatrix::from_rows(vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, 4, 16]]);
        let want = smith_normal_form(&base).factors;
        for _ in 0..20 {
            let mut m = base.clone();
            for _ in 0..6 {
                let r1 = (next() % 3) as usize;
                let r2 = (next() % 3) as usize;
                let c = (next() % 5) as i64 - 2;
                if r1 != r2 {
                    for j in 0..m.cols {
                        let v = m.get(r1, j) + c * m.get(r2, j);
                        m.set(r1, j, v);
                    }
                }
                let c1 = (next() % 3) as usize;
                let c2 = (next() % 3) as usize;
                if c1 != c2 {
                    for i in 0..m.rows {
                        let v = m.get(i, c1) + c * m.get(i, c2);
                        m.set(i, c1, v);
                    }
                }
            }
            assert_eq!(smith_normal_form(&m).factors, want);
        }
    }

    #[test]
    fn bit_rank_and_kernel() {
        let m = IntMatrix::from_rows(vec![vec![1, 1, 0], vec![0, 1, 1], vec![1, 0, 1]]);
        let b = BitMatrix::from_int(&m);
        assert_eq!(b.rank(), 2);
        let kernel = b.kernel_basis();
        assert_eq!(kernel.len(), 1);
        assert_eq!(kernel[0].ones(), vec![0, 1, 2]);

        // Solve: A x = (1,1,0)ᵗ has solution (1,0,0)+(kernel).
        let rhs = BitVec::from_indices(3, &[0, 1]);
        let x = b.solve(&rhs).unwrap();
        // Verify A·x = rhs.
        for r in 0..3 {
            let mut acc = false;
            for c in 0..3 {
                acc ^= b.get(r, c) && x.get(c);
            }
            assert_eq!(acc, rhs.get(r));
        }
        let bad = BitMatrix::from_int(&IntMatrix::from_rows(vec![vec![1, 1], vec![1, 1]]));
        assert!(bad.solve(&BitVec::from_indices(2, &[0])).is_none());
    }

    #[test]
    fn span_tracks_rank() {
        let mut span = GfSpan::new();
        assert!(span.insert(&BitVec::from_indices(4, &[0, 1])));
        assert!(span.insert(&BitVec::from_indices(4, &[1, 2])));
        assert!(!span.insert(&BitVec::from_indices(4, &[0, 2])));
        assert_eq!(span.rank(), 2);
        assert!(span.contains(&BitVec::from_indices(4, &[0, 2])));
        assert!(!span.contains(&BitVec::from_indices(4, &[3])));
    }
}
