//! Dense linear algebra over the two-element field.
//!
//! Vectors are packed into `u64` words. Sizes here are tiny (lattice ranks and
//! graph components of a few dozen), so the routines favour clarity over
//! blocking tricks.

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BitVector {
    words: Vec<u64>,
    len: usize,
}

impl BitVector {
    pub fn zeros(len: usize) -> Self {
        BitVector {
            words: vec![0; len.div_ceil(64)],
            len,
        }
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        let mut v = BitVector::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            v.set(i, b);
        }
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        debug_assert!(i < self.len);
        let mask = 1u64 << (i % 64);
        if value {
            self.words[i / 64] |= mask;
        } else {
            self.words[i / 64] &= !mask;
        }
    }

    pub fn xor_assign(&mut self, other: &BitVector) {
        debug_assert_eq!(self.len, other.len);
        for (w, o) in self.words.iter_mut().zip(&other.words) {
            *w ^= o;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(|&i| self.get(i))
    }

    pub fn to_bools(&self) -> Vec<bool> {
        (0..self.len).map(|i| self.get(i)).collect()
    }
}

/// Reduced row echelon form in place; returns the pivot column of each
/// nonzero row, in order. Only the first `ncols` columns are eligible pivots.
fn row_reduce(rows: &mut [BitVector], ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut next = 0;
    for col in 0..ncols {
        let Some(found) = (next..rows.len()).find(|&r| rows[r].get(col)) else {
            continue;
        };
        rows.swap(next, found);
        let pivot_row = rows[next].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != next && row.get(col) {
                row.xor_assign(&pivot_row);
            }
        }
        pivots.push(col);
        next += 1;
        if next == rows.len() {
            break;
        }
    }
    pivots
}

/// Finds coefficients `x` with `Σ x_k · vectors[k] = target`, if any exist.
///
/// Free variables are set to zero, so the returned solution is the one
/// supported on pivot columns.
pub fn solve(vectors: &[BitVector], target: &BitVector) -> Option<Vec<bool>> {
    let m = vectors.len();
    let n = target.len();
    // one equation per coordinate; columns are the unknowns plus the right-hand side
    let mut rows: Vec<BitVector> = (0..n)
        .map(|i| {
            let mut row = BitVector::zeros(m + 1);
            for (k, v) in vectors.iter().enumerate() {
                row.set(k, v.get(i));
            }
            row.set(m, target.get(i));
            row
        })
        .collect();
    let pivots = row_reduce(&mut rows, m);
    if rows[pivots.len()..].iter().any(|row| row.get(m)) {
        return None;
    }
    let mut x = vec![false; m];
    for (row, &col) in rows.iter().zip(&pivots) {
        x[col] = row.get(m);
    }
    Some(x)
}

/// A basis of `{x : M x = 0}` for the matrix whose rows are `rows`, each of length `ncols`.
pub fn kernel(rows: &[BitVector], ncols: usize) -> Vec<BitVector> {
    let mut reduced = rows.to_vec();
    let pivots = row_reduce(&mut reduced, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = BitVector::zeros(ncols);
            x.set(f, true);
            for (row, &p) in reduced.iter().zip(&pivots) {
                if row.get(f) {
                    x.set(p, true);
                }
            }
            x
        })
        .collect()
}
