//! Integer lattices with a symmetric bilinear pairing.
//!
//! An [`IntLattice`] models a finitely generated sublattice of the Picard group
//! of a K3 surface: a basis, its Gram matrix, and an explicit list of classes
//! known to be divisible by two in the ambient Picard group. Everything is
//! exact; there is no floating point anywhere in this module.

mod class;
pub mod definite;
pub mod gf2;
pub mod snf;

use num_bigint::BigInt;
use num_rational::Ratio;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use class::DivisorClass;
pub use definite::{determinant, determinant_i64, is_negative_definite_matrix};
pub use snf::{smith_normal_form, solve_integer, SmithForm};

use gf2::BitVector;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("lattice rank must be positive")]
    EmptyBasis,
    #[error("gram matrix must be {rank}x{rank}, row {row} has length {len}")]
    NotSquare { rank: usize, row: usize, len: usize },
    #[error("{labels} basis labels for a rank {rank} gram matrix")]
    LabelCount { labels: usize, rank: usize },
    #[error("duplicate basis label {0:?}")]
    DuplicateLabel(String),
    #[error("gram matrix is not symmetric at ({0}, {1})")]
    Asymmetric(usize, usize),
    #[error("basis element {label:?} has odd self-intersection {square}")]
    OddDiagonal { label: String, square: i64 },
    #[error("declared 2-divisible class #{index} has square {square}, not divisible by 8")]
    DeclaredSquare { index: usize, square: i64 },
    #[error(
        "declared 2-divisible class #{index} pairs oddly ({pairing}) with basis element {label:?}"
    )]
    DeclaredOddPairing {
        index: usize,
        label: String,
        pairing: i64,
    },
    #[error("declared 2-divisible classes #{0} and #{1} have pairing not divisible by 4")]
    DeclaredCrossPairing(usize, usize),
    #[error("class has {got} coordinates, lattice rank is {rank}")]
    DimensionMismatch { rank: usize, got: usize },
    #[error("basis index {index} out of range for rank {rank}")]
    IndexOutOfRange { index: usize, rank: usize },
    #[error("empty index subset")]
    EmptySubset,
    #[error("repeated index {0} in subset")]
    RepeatedIndex(usize),
    #[error("unknown basis label {0:?}")]
    UnknownLabel(String),
}

/// Witness that a class `B` is 2-divisible relative to the declared classes:
/// `B = 2·quotient + Σ_k coefficients[k]·declared_even[k]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EvennessCertificate {
    pub coefficients: Vec<u8>,
    pub quotient: DivisorClass,
}

/// Wire form of a lattice: `{"basis": [..], "gram": [[..]], "declared_even": [[..]]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LatticeDocument {
    pub basis: Vec<String>,
    pub gram: Vec<Vec<i64>>,
    #[serde(default)]
    pub declared_even: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "LatticeDocument", into = "LatticeDocument")]
pub struct IntLattice {
    labels: Vec<String>,
    gram: Vec<Vec<i64>>,
    declared_even: Vec<DivisorClass>,
}

impl TryFrom<LatticeDocument> for IntLattice {
    type Error = LatticeError;
    fn try_from(doc: LatticeDocument) -> Result<Self, LatticeError> {
        IntLattice::new(
            doc.basis,
            doc.gram,
            doc.declared_even
                .into_iter()
                .map(DivisorClass::new)
                .collect(),
        )
    }
}

impl From<IntLattice> for LatticeDocument {
    fn from(lat: IntLattice) -> Self {
        LatticeDocument {
            basis: lat.labels,
            gram: lat.gram,
            declared_even: lat
                .declared_even
                .into_iter()
                .map(DivisorClass::into_coords)
                .collect(),
        }
    }
}

impl IntLattice {
    /// Builds a lattice, checking the Gram matrix and the declared classes.
    ///
    /// A declared class `D = 2X` must satisfy what any genuinely 2-divisible
    /// class in an even lattice satisfies: `D·e` even for each basis vector,
    /// `D² ≡ 0 (mod 8)`, and `D·D' ≡ 0 (mod 4)` against the other declared classes.
    pub fn new(
        labels: Vec<String>,
        gram: Vec<Vec<i64>>,
        declared_even: Vec<DivisorClass>,
    ) -> Result<Self, LatticeError> {
        let rank = gram.len();
        if rank == 0 {
            return Err(LatticeError::EmptyBasis);
        }
        for (row, r) in gram.iter().enumerate() {
            if r.len() != rank {
                return Err(LatticeError::NotSquare {
                    rank,
                    row,
                    len: r.len(),
                });
            }
        }
        if labels.len() != rank {
            return Err(LatticeError::LabelCount {
                labels: labels.len(),
                rank,
            });
        }
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(LatticeError::DuplicateLabel(l.clone()));
            }
        }
        for i in 0..rank {
            for j in i + 1..rank {
                if gram[i][j] != gram[j][i] {
                    return Err(LatticeError::Asymmetric(i, j));
                }
            }
            if gram[i][i] % 2 != 0 {
                return Err(LatticeError::OddDiagonal {
                    label: labels[i].clone(),
                    square: gram[i][i],
                });
            }
        }
        let lat = IntLattice {
            labels,
            gram,
            declared_even: Vec::new(),
        };
        for (index, d) in declared_even.iter().enumerate() {
            lat.check_dim(d)?;
            for (e, label) in lat.labels.iter().enumerate() {
                let pairing = lat.pair_with_basis(d, e);
                if pairing % 2 != 0 {
                    return Err(LatticeError::DeclaredOddPairing {
                        index,
                        label: label.clone(),
                        pairing,
                    });
                }
            }
            let square = lat.pair_unchecked(d, d);
            if square % 8 != 0 {
                return Err(LatticeError::DeclaredSquare { index, square });
            }
            for (other, d2) in declared_even[..index].iter().enumerate() {
                if lat.pair_unchecked(d, d2) % 4 != 0 {
                    return Err(LatticeError::DeclaredCrossPairing(other, index));
                }
            }
        }
        Ok(IntLattice {
            declared_even,
            ..lat
        })
    }

    /// A lattice with generic labels `e0, e1, …`.
    pub fn from_gram(gram: Vec<Vec<i64>>) -> Result<Self, LatticeError> {
        let labels = (0..gram.len()).map(|i| format!("e{i}")).collect();
        IntLattice::new(labels, gram, Vec::new())
    }

    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn gram(&self) -> &[Vec<i64>] {
        &self.gram
    }

    pub fn declared_even(&self) -> &[DivisorClass] {
        &self.declared_even
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn basis_vector(&self, index: usize) -> Result<DivisorClass, LatticeError> {
        if index >= self.rank() {
            return Err(LatticeError::IndexOutOfRange {
                index,
                rank: self.rank(),
            });
        }
        Ok(DivisorClass::basis(self.rank(), index))
    }

    /// The class `Σ coeff·label` over the given basis labels.
    pub fn combination(&self, terms: &[(&str, i64)]) -> Result<DivisorClass, LatticeError> {
        let mut coords = vec![0; self.rank()];
        for &(label, coeff) in terms {
            let i = self
                .index_of(label)
                .ok_or_else(|| LatticeError::UnknownLabel(label.to_string()))?;
            coords[i] += coeff;
        }
        Ok(DivisorClass::new(coords))
    }

    pub fn check_dim(&self, a: &DivisorClass) -> Result<(), LatticeError> {
        if a.len() != self.rank() {
            return Err(LatticeError::DimensionMismatch {
                rank: self.rank(),
                got: a.len(),
            });
        }
        Ok(())
    }

    fn pair_with_basis(&self, a: &DivisorClass, e: usize) -> i64 {
        a.coords()
            .iter()
            .zip(&self.gram)
            .map(|(x, row)| x * row[e])
            .sum()
    }

    fn pair_unchecked(&self, a: &DivisorClass, b: &DivisorClass) -> i64 {
        let mut total = 0;
        for (i, &x) in a.coords().iter().enumerate() {
            if x == 0 {
                continue;
            }
            let row = &self.gram[i];
            total += x * b.coords().iter().zip(row).map(|(y, g)| y * g).sum::<i64>();
        }
        total
    }

    /// The intersection number `aᵀ · gram · b`.
    pub fn pair(&self, a: &DivisorClass, b: &DivisorClass) -> Result<i64, LatticeError> {
        self.check_dim(a)?;
        self.check_dim(b)?;
        Ok(self.pair_unchecked(a, b))
    }

    pub fn square(&self, a: &DivisorClass) -> Result<i64, LatticeError> {
        self.pair(a, a)
    }

    /// Whether the principal submatrix of the Gram matrix on `subset` is negative definite.
    pub fn is_negative_definite(&self, subset: &[usize]) -> Result<bool, LatticeError> {
        if subset.is_empty() {
            return Err(LatticeError::EmptySubset);
        }
        for (k, &i) in subset.iter().enumerate() {
            if i >= self.rank() {
                return Err(LatticeError::IndexOutOfRange {
                    index: i,
                    rank: self.rank(),
                });
            }
            if subset[..k].contains(&i) {
                return Err(LatticeError::RepeatedIndex(i));
            }
        }
        let sub: Vec<Vec<i64>> = subset
            .iter()
            .map(|&i| subset.iter().map(|&j| self.gram[i][j]).collect())
            .collect();
        Ok(is_negative_definite_matrix(&sub))
    }

    /// Decides whether `b` is 2-divisible relative to the declared classes.
    ///
    /// Solves `b ≡ Σ ε_k D_k (mod 2)` over F₂; on success the certificate
    /// carries the ε_k and the integral quotient `(b − Σ ε_k D_k) / 2`.
    pub fn is_even(&self, b: &DivisorClass) -> Result<Option<EvennessCertificate>, LatticeError> {
        self.check_dim(b)?;
        let columns: Vec<BitVector> = self
            .declared_even
            .iter()
            .map(|d| BitVector::from_bools(&d.parity()))
            .collect();
        let target = BitVector::from_bools(&b.parity());
        let Some(eps) = gf2::solve(&columns, &target) else {
            return Ok(None);
        };
        let mut residual = b.clone();
        for (d, &e) in self.declared_even.iter().zip(&eps) {
            if e {
                residual = residual - d;
            }
        }
        let quotient = residual
            .halved()
            .expect("F2 solution leaves an even residual");
        Ok(Some(EvennessCertificate {
            coefficients: eps.into_iter().map(u8::from).collect(),
            quotient,
        }))
    }

    /// `b² / 4`, exactly.
    pub fn half_square(&self, b: &DivisorClass) -> Result<Ratio<i64>, LatticeError> {
        Ok(Ratio::new(self.square(b)?, 4))
    }

    /// The overlattice generated by the basis together with `½D_k` for every
    /// declared class `D_k`.
    ///
    /// The result is described by a generating set (basis labels followed by
    /// one `half(k)` generator per declared class), so its Gram matrix is
    /// singular whenever declarations exist. A certificate `B = 2q + Σ ε_k D_k`
    /// from [`IntLattice::is_even`] yields `B/2 = q + Σ ε_k·half(k)` there.
    pub fn with_halves(&self) -> IntLattice {
        let n = self.rank();
        let m = self.declared_even.len();
        let mut gram = vec![vec![0; n + m]; n + m];
        for i in 0..n {
            gram[i][..n].copy_from_slice(&self.gram[i]);
        }
        for (k, d) in self.declared_even.iter().enumerate() {
            for e in 0..n {
                let p = self.pair_with_basis(d, e) / 2;
                gram[n + k][e] = p;
                gram[e][n + k] = p;
            }
            for (l, d2) in self.declared_even.iter().enumerate() {
                gram[n + k][n + l] = self.pair_unchecked(d, d2) / 4;
            }
        }
        let mut labels = self.labels.clone();
        labels.extend((0..m).map(|k| format!("half({k})")));
        let declared = self.declared_even.iter().map(|d| d.padded(m)).collect();
        IntLattice::new(labels, gram, declared)
            .expect("declared classes were validated at construction")
    }

    /// Invariant factors of the Gram matrix (the discriminant group is
    /// `⊕ ℤ/d_i` over the nonzero entries; zeros mark a degenerate pairing).
    pub fn discriminant_invariants(&self) -> Vec<BigInt> {
        smith_normal_form(&self.gram).diagonal()
    }

    pub fn determinant(&self) -> BigInt {
        determinant_i64(&self.gram)
    }
}
