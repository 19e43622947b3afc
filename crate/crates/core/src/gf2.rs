//! Dense linear algebra over GF(2).
//!
//! Every subspace computation in this crate (cycle space, cut space,
//! Hamilton-cycle span, witness search) reduces to XOR arithmetic on packed
//! bit vectors indexed by edge ids. Vectors and matrices are value-semantic:
//! operations return new values, nothing is mutated in place behind a cache.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Gf2Error {
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("row {row} has length {got}, expected {expected}")]
    RaggedRows {
        row: usize,
        expected: usize,
        got: usize,
    },
    #[error("basis is not row-reduced")]
    NotReduced,
}

/// A dense vector over GF(2), packed 64 bits per word.
///
/// Bit `i` lives at `words[i / 64]`, position `i % 64`. Also doubles as the
/// crate's general-purpose bitset (vertex sets, visited sets) since those
/// need exactly the same operations.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitVector {
    words: Vec<u64>,
    len: usize,
}

impl BitVector {
    #[must_use]
    pub fn zeros(len: usize) -> Self {
        Self {
            words: vec![0; len.div_ceil(64)],
            len,
        }
    }

    /// Builds a vector with the given bits set.
    ///
    /// Panics if any index is out of range.
    #[must_use]
    pub fn from_indices(len: usize, indices: &[usize]) -> Self {
        let mut v = Self::zeros(len);
        for &i in indices {
            v.set(i);
        }
        v
    }

    #[must_use]
    pub const fn len(&self) -> usize {
        self.len
    }

    #[must_use]
    pub const fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[must_use]
    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    #[inline]
    #[must_use]
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit index {i} out of range (len={})", self.len);
        (self.words[i / 64] >> (i % 64)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize) {
        assert!(i < self.len, "bit index {i} out of range (len={})", self.len);
        self.words[i / 64] |= 1u64 << (i % 64);
    }

    #[inline]
    pub fn clear(&mut self, i: usize) {
        assert!(i < self.len, "bit index {i} out of range (len={})", self.len);
        self.words[i / 64] &= !(1u64 << (i % 64));
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len, "bit index {i} out of range (len={})", self.len);
        self.words[i / 64] ^= 1u64 << (i % 64);
    }

    #[inline]
    pub fn assign(&mut self, i: usize, value: bool) {
        if value {
            self.set(i);
        } else {
            self.clear(i);
        }
    }

    pub fn xor_assign(&mut self, other: &Self) {
        self.check_len(other);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    #[must_use]
    pub fn xor(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.xor_assign(other);
        out
    }

    pub fn or_assign(&mut self, other: &Self) {
        self.check_len(other);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn and_assign(&mut self, other: &Self) {
        self.check_len(other);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    pub fn and_not_assign(&mut self, other: &Self) {
        self.check_len(other);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
    }

    /// Bitwise complement within the vector's length.
    #[must_use]
    pub fn complement(&self) -> Self {
        let mut out = Self {
            words: self.words.iter().map(|w| !w).collect(),
            len: self.len,
        };
        let tail = self.len % 64;
        if tail != 0 {
            if let Some(last) = out.words.last_mut() {
                *last &= (1u64 << tail) - 1;
            }
        }
        out
    }

    /// Number of positions set in both vectors.
    #[must_use]
    pub fn and_count(&self, other: &Self) -> usize {
        self.check_len(other);
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    #[must_use]
    pub fn intersects(&self, other: &Self) -> bool {
        self.check_len(other);
        self.words.iter().zip(&other.words).any(|(a, b)| a & b != 0)
    }

    #[must_use]
    pub fn is_subset_of(&self, other: &Self) -> bool {
        self.check_len(other);
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    /// GF(2) inner product: parity of the overlap.
    #[must_use]
    pub fn dot(&self, other: &Self) -> bool {
        self.and_count(other) % 2 == 1
    }

    #[must_use]
    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Index of the lowest set bit, if any.
    #[must_use]
    pub fn first_set(&self) -> Option<usize> {
        for (wi, &w) in self.words.iter().enumerate() {
            if w != 0 {
                let i = wi * 64 + w.trailing_zeros() as usize;
                return (i < self.len).then_some(i);
            }
        }
        None
    }

    /// Iterates the indices of set bits in ascending order.
    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        let len = self.len;
        self.words.iter().enumerate().flat_map(move |(wi, &w)| {
            OnesInWord { word: w, base: wi * 64 }.take_while(move |&i| i < len)
        })
    }

    #[must_use]
    pub fn to_indices(&self) -> Vec<usize> {
        self.ones().collect()
    }

    #[track_caller]
    fn check_len(&self, other: &Self) {
        assert_eq!(
            self.len, other.len,
            "bit vector length mismatch ({} vs {})",
            self.len, other.len
        );
    }
}

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVector(len={}, ones={:?})", self.len, self.to_indices())
    }
}

struct OnesInWord {
    word: u64,
    base: usize,
}

impl Iterator for OnesInWord {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.word == 0 {
            return None;
        }
        let bit = self.word.trailing_zeros() as usize;
        self.word &= self.word - 1;
        Some(self.base + bit)
    }
}

/// A row-major matrix over GF(2). All rows share one width.
///
/// `rank` is `Some` exactly on matrices produced by [`BitMatrix::row_reduce`]
/// (and by basis builders that keep reduced form); every mutation path
/// constructs a fresh value, so a cached rank can never go stale.
#[derive(Clone, PartialEq, Eq)]
pub struct BitMatrix {
    width: usize,
    rows: Vec<BitVector>,
    rank: Option<usize>,
}

impl BitMatrix {
    /// Builds a matrix from rows, rejecting ragged input.
    pub fn from_rows(width: usize, rows: Vec<BitVector>) -> Result<Self, Gf2Error> {
        for (i, r) in rows.iter().enumerate() {
            if r.len() != width {
                return Err(Gf2Error::RaggedRows {
                    row: i,
                    expected: width,
                    got: r.len(),
                });
            }
        }
        Ok(Self {
            width,
            rows,
            rank: None,
        })
    }

    #[must_use]
    pub fn empty(width: usize) -> Self {
        Self {
            width,
            rows: Vec::new(),
            rank: Some(0),
        }
    }

    #[must_use]
    pub const fn width(&self) -> usize {
        self.width
    }

    #[must_use]
    pub fn row_count(&self) -> usize {
        self.rows.len()
    }

    #[must_use]
    pub fn rows(&self) -> &[BitVector] {
        &self.rows
    }

    #[must_use]
    pub fn row(&self, i: usize) -> &BitVector {
        &self.rows[i]
    }

    /// Cached rank; `Some` iff this value is in reduced row-echelon form.
    #[must_use]
    pub const fn rank(&self) -> Option<usize> {
        self.rank
    }

    #[must_use]
    pub fn is_reduced(&self) -> bool {
        self.rank.is_some()
    }

    /// Reduced row-echelon form over GF(2).
    ///
    /// Zero rows are dropped; the surviving rows have strictly increasing
    /// pivot columns and each pivot column is zero in every other row. The
    /// row space is preserved. Returns the reduced matrix and its rank.
    #[must_use]
    pub fn row_reduce(&self) -> (Self, usize) {
        let mut basis = IncrementalBasis::new(self.width);
        for row in &self.rows {
            basis.insert(row.clone());
        }
        let rank = basis.rank();
        (basis.into_matrix(), rank)
    }

    /// Membership of `v` in the row space of a reduced matrix.
    pub fn span_contains(&self, v: &BitVector) -> Result<bool, Gf2Error> {
        Ok(self.reduce_vector(v)?.is_zero())
    }

    /// Reduces `v` against the rows, returning the residual. The residual is
    /// zero exactly when `v` lies in the row space.
    pub fn reduce_vector(&self, v: &BitVector) -> Result<BitVector, Gf2Error> {
        if v.len() != self.width {
            return Err(Gf2Error::LengthMismatch {
                left: self.width,
                right: v.len(),
            });
        }
        if !self.is_reduced() {
            return Err(Gf2Error::NotReduced);
        }
        let mut residual = v.clone();
        for row in &self.rows {
            let pivot = row.first_set().expect("reduced matrix has no zero rows");
            if residual.get(pivot) {
                residual.xor_assign(row);
            }
        }
        Ok(residual)
    }

    /// Like [`BitMatrix::span_contains`], but also recovers which rows sum
    /// to `v`. Returns `None` when `v` is outside the row space.
    pub fn decompose(&self, v: &BitVector) -> Result<Option<BitVector>, Gf2Error> {
        if v.len() != self.width {
            return Err(Gf2Error::LengthMismatch {
                left: self.width,
                right: v.len(),
            });
        }
        if !self.is_reduced() {
            return Err(Gf2Error::NotReduced);
        }
        let mut residual = v.clone();
        let mut coeffs = BitVector::zeros(self.rows.len());
        for (i, row) in self.rows.iter().enumerate() {
            let pivot = row.first_set().expect("reduced matrix has no zero rows");
            if residual.get(pivot) {
                residual.xor_assign(row);
                coeffs.set(i);
            }
        }
        Ok(residual.is_zero().then_some(coeffs))
    }

    /// Basis of the right null space `{x : m · x = 0}`.
    ///
    /// The result has `width - rank(self)` rows and is itself reduced.
    #[must_use]
    pub fn null_space(&self) -> Self {
        let (reduced, rank) = if self.is_reduced() {
            (self.clone(), self.rank.unwrap())
        } else {
            self.row_reduce()
        };
        let pivots: Vec<usize> = reduced
            .rows
            .iter()
            .map(|r| r.first_set().expect("no zero rows in reduced form"))
            .collect();
        let mut is_pivot = vec![false; self.width];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut out_rows = Vec::with_capacity(self.width - rank);
        for free in 0..self.width {
            if is_pivot[free] {
                continue;
            }
            let mut x = BitVector::zeros(self.width);
            x.set(free);
            for (row, &p) in reduced.rows.iter().zip(&pivots) {
                if row.get(free) {
                    x.set(p);
                }
            }
            out_rows.push(x);
        }
        let mut basis = IncrementalBasis::new(self.width);
        for r in out_rows {
            basis.insert(r);
        }
        basis.into_matrix()
    }

    /// Matrix-vector product over GF(2): one parity bit per row.
    pub fn mul_vector(&self, x: &BitVector) -> Result<BitVector, Gf2Error> {
        if x.len() != self.width {
            return Err(Gf2Error::LengthMismatch {
                left: self.width,
                right: x.len(),
            });
        }
        let mut out = BitVector::zeros(self.rows.len());
        for (i, row) in self.rows.iter().enumerate() {
            if row.dot(x) {
                out.set(i);
            }
        }
        Ok(out)
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix({}x{}, rank={:?})", self.rows.len(), self.width, self.rank)?;
        for r in &self.rows {
            writeln!(f, "  {:?}", r.to_indices())?;
        }
        Ok(())
    }
}

/// A growing basis kept permanently in reduced row-echelon form.
///
/// This is the workhorse of the rank-saturation loops: cycle enumeration
/// XOR-inserts candidate vectors one by one and stops as soon as the rank
/// stops being able to grow.
#[derive(Clone, Debug)]
pub struct IncrementalBasis {
    width: usize,
    rows: Vec<BitVector>,
}

impl IncrementalBasis {
    #[must_use]
    pub fn new(width: usize) -> Self {
        Self {
            width,
            rows: Vec::new(),
        }
    }

    #[must_use]
    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    #[must_use]
    pub const fn width(&self) -> usize {
        self.width
    }

    /// Inserts `v`, keeping reduced form. Returns true if the rank grew.
    pub fn insert(&mut self, mut v: BitVector) -> bool {
        assert_eq!(v.len(), self.width, "basis width mismatch");
        for row in &self.rows {
            let pivot = row.first_set().expect("basis rows are nonzero");
            if v.get(pivot) {
                v.xor_assign(row);
            }
        }
        let Some(pivot) = v.first_set() else {
            return false;
        };
        for row in &mut self.rows {
            if row.get(pivot) {
                row.xor_assign(&v);
            }
        }
        let at = self
            .rows
            .partition_point(|r| r.first_set().unwrap() < pivot);
        self.rows.insert(at, v);
        true
    }

    #[must_use]
    pub fn contains(&self, v: &BitVector) -> bool {
        let mut v = v.clone();
        for row in &self.rows {
            let pivot = row.first_set().expect("basis rows are nonzero");
            if v.get(pivot) {
                v.xor_assign(row);
            }
        }
        v.is_zero()
    }

    #[must_use]
    pub fn into_matrix(self) -> BitMatrix {
        BitMatrix {
            width: self.width,
            rank: Some(self.rows.len()),
            rows: self.rows,
        }
    }

    #[must_use]
    pub fn as_matrix(&self) -> BitMatrix {
        self.clone().into_matrix()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> BitMatrix {
        let rows = (0..rows)
            .map(|_| {
                let mut v = BitVector::zeros(cols);
                for i in 0..cols {
                    if rng.gen::<bool>() {
                        v.set(i);
                    }
                }
                v
            })
            .collect();
        BitMatrix::from_rows(cols, rows).unwrap()
    }

    /// Independent oracle: textbook Gaussian elimination on a bool matrix.
    fn naive_rank(m: &BitMatrix) -> usize {
        let mut a: Vec<Vec<bool>> = m
            .rows()
            .iter()
            .map(|r| (0..m.width()).map(|i| r.get(i)).collect())
            .collect();
        let mut rank = 0;
        for col in 0..m.width() {
            let Some(pivot_row) = (rank..a.len()).find(|&r| a[r][col]) else {
                continue;
            };
            a.swap(rank, pivot_row);
            for r in 0..a.len() {
                if r != rank && a[r][col] {
                    for c in 0..m.width() {
                        let v = a[rank][c];
                        a[r][c] ^= v;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    #[test]
    fn xor_self_is_zero() {
        let v = BitVector::from_indices(70, &[0, 3, 64, 69]);
        assert!(v.xor(&v).is_zero());
    }

    #[test]
    #[should_panic(expected = "out of range")]
    fn out_of_range_rejected() {
        let v = BitVector::zeros(10);
        v.get(10);
    }

    #[test]
    fn identity_reduces_to_itself() {
        let rows: Vec<BitVector> = (0..3).map(|i| BitVector::from_indices(3, &[i])).collect();
        let m = BitMatrix::from_rows(3, rows.clone()).unwrap();
        let (r, rank) = m.row_reduce();
        assert_eq!(rank, 3);
        assert_eq!(r.rows(), &rows[..]);
    }

    #[test]
    fn xor_dependent_rows() {
        // {110, 011, 101}: third row is the sum of the first two.
        let rows = vec![
            BitVector::from_indices(3, &[0, 1]),
            BitVector::from_indices(3, &[1, 2]),
            BitVector::from_indices(3, &[0, 2]),
        ];
        let m = BitMatrix::from_rows(3, rows).unwrap();
        assert_eq!(m.row_reduce().1, 2);
    }

    #[test]
    fn ragged_rows_rejected() {
        let rows = vec![BitVector::zeros(3), BitVector::zeros(4)];
        assert!(matches!(
            BitMatrix::from_rows(3, rows),
            Err(Gf2Error::RaggedRows { row: 1, .. })
        ));
    }

    #[test]
    fn rank_matches_naive_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let r = rng.gen_range(1..=20);
            let c = rng.gen_range(1..=40);
            let m = random_matrix(&mut rng, r, c);
            assert_eq!(m.row_reduce().1, naive_rank(&m));
        }
    }

    #[test]
    fn row_reduce_idempotent_and_preserves_span() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let m = random_matrix(&mut rng, 12, 24);
            let (r1, rank1) = m.row_reduce();
            let (r2, rank2) = r1.row_reduce();
            assert_eq!(rank1, rank2);
            assert_eq!(r1.rows(), r2.rows());
            for row in m.rows() {
                assert!(r1.span_contains(row).unwrap());
            }
        }
    }

    #[test]
    fn span_contains_coordinate_subspace() {
        let basis = BitMatrix::from_rows(
            3,
            vec![
                BitVector::from_indices(3, &[0]),
                BitVector::from_indices(3, &[1]),
            ],
        )
        .unwrap()
        .row_reduce()
        .0;
        assert!(basis.span_contains(&BitVector::from_indices(3, &[0, 1])).unwrap());
        assert!(!basis.span_contains(&BitVector::from_indices(3, &[2])).unwrap());
        assert!(basis.span_contains(&BitVector::zeros(3)).unwrap());
        assert!(matches!(
            basis.span_contains(&BitVector::zeros(4)),
            Err(Gf2Error::LengthMismatch { .. })
        ));
    }

    #[test]
    fn span_contains_constructed_combination() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..20 {
            let m = random_matrix(&mut rng, 8, 30).row_reduce().0;
            if m.row_count() < 3 {
                continue;
            }
            let mut v = m.row(0).clone();
            v.xor_assign(m.row(1));
            v.xor_assign(m.row(2));
            assert!(m.span_contains(&v).unwrap());
            let coeffs = m.decompose(&v).unwrap().unwrap();
            // Recovered combination must reproduce v.
            let mut rebuilt = BitVector::zeros(m.width());
            for i in coeffs.ones() {
                rebuilt.xor_assign(m.row(i));
            }
            assert_eq!(rebuilt, v);
        }
    }

    #[test]
    fn null_space_of_zero_matrix_is_everything() {
        let m = BitMatrix::from_rows(5, vec![BitVector::zeros(5); 3]).unwrap();
        assert_eq!(m.null_space().row_count(), 5);
    }

    #[test]
    fn null_space_of_identity_is_trivial() {
        let rows: Vec<BitVector> = (0..5).map(|i| BitVector::from_indices(5, &[i])).collect();
        let m = BitMatrix::from_rows(5, rows).unwrap();
        assert_eq!(m.null_space().row_count(), 0);
    }

    #[test]
    fn null_space_annihilates_and_rank_nullity() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..30 {
            let m = random_matrix(&mut rng, 10, 30);
            let (_, rank) = m.row_reduce();
            let ns = m.null_space();
            assert_eq!(ns.row_count(), 30 - rank);
            for x in ns.rows() {
                assert!(m.mul_vector(x).unwrap().is_zero(), "kernel vector fails m·x = 0");
            }
        }
    }

    #[test]
    fn incremental_basis_matches_batch_reduce() {
        let mut rng = ChaCha8Rng::seed_from_u64(19);
        let m = random_matrix(&mut rng, 15, 25);
        let mut inc = IncrementalBasis::new(25);
        for row in m.rows() {
            inc.insert(row.clone());
        }
        let (batch, rank) = m.row_reduce();
        assert_eq!(inc.rank(), rank);
        assert_eq!(inc.into_matrix().rows(), batch.rows());
    }
}
