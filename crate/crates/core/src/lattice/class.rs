use std::fmt;
use std::iter::Sum;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

/// Integer coordinate vector of a divisor class in some lattice basis.
///
/// Arithmetic between classes of different length panics; lattice operations
/// check lengths against the rank and report a [`LatticeError`] instead.
///
/// [`LatticeError`]: super::LatticeError
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DivisorClass(Vec<i64>);

impl DivisorClass {
    pub fn new(coords: Vec<i64>) -> Self {
        DivisorClass(coords)
    }

    pub fn zero(rank: usize) -> Self {
        DivisorClass(vec![0; rank])
    }

    /// The `index`-th basis vector of a rank-`rank` lattice.
    pub fn basis(rank: usize, index: usize) -> Self {
        let mut coords = vec![0; rank];
        coords[index] = 1;
        DivisorClass(coords)
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<i64> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    /// True when every coordinate is even, i.e. the class lies in `2·L`.
    pub fn is_coordinatewise_even(&self) -> bool {
        self.0.iter().all(|c| c % 2 == 0)
    }

    /// `self / 2`, if every coordinate is even.
    pub fn halved(&self) -> Option<DivisorClass> {
        self.is_coordinatewise_even()
            .then(|| DivisorClass(self.0.iter().map(|c| c / 2).collect()))
    }

    pub fn scaled(&self, k: i64) -> DivisorClass {
        DivisorClass(self.0.iter().map(|c| c * k).collect())
    }

    /// Appends `extra` zero coordinates (embedding into a lattice with more generators).
    pub fn padded(&self, extra: usize) -> DivisorClass {
        let mut coords = self.0.clone();
        coords.resize(self.0.len() + extra, 0);
        DivisorClass(coords)
    }

    /// Coordinates reduced mod 2.
    pub fn parity(&self) -> Vec<bool> {
        self.0.iter().map(|c| c.rem_euclid(2) == 1).collect()
    }
}

impl From<Vec<i64>> for DivisorClass {
    fn from(coords: Vec<i64>) -> Self {
        DivisorClass(coords)
    }
}

impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

fn zip_with(a: &DivisorClass, b: &DivisorClass, op: impl Fn(i64, i64) -> i64) -> DivisorClass {
    assert_eq!(a.len(), b.len(), "divisor classes of different rank");
    DivisorClass(a.0.iter().zip(&b.0).map(|(&x, &y)| op(x, y)).collect())
}

impl Add<&DivisorClass> for &DivisorClass {
    type Output = DivisorClass;
    fn add(self, rhs: &DivisorClass) -> DivisorClass {
        zip_with(self, rhs, |x, y| x + y)
    }
}

impl Add for DivisorClass {
    type Output = DivisorClass;
    fn add(self, rhs: DivisorClass) -> DivisorClass {
        &self + &rhs
    }
}

impl Add<&DivisorClass> for DivisorClass {
    type Output = DivisorClass;
    fn add(self, rhs: &DivisorClass) -> DivisorClass {
        &self + rhs
    }
}

impl Sub<&DivisorClass> for &DivisorClass {
    type Output = DivisorClass;
    fn sub(self, rhs: &DivisorClass) -> DivisorClass {
        zip_with(self, rhs, |x, y| x - y)
    }
}

impl Sub for DivisorClass {
    type Output = DivisorClass;
    fn sub(self, rhs: DivisorClass) -> DivisorClass {
        &self - &rhs
    }
}

impl Sub<&DivisorClass> for DivisorClass {
    type Output = DivisorClass;
    fn sub(self, rhs: &DivisorClass) -> DivisorClass {
        &self - rhs
    }
}

impl Neg for &DivisorClass {
    type Output = DivisorClass;
    fn neg(self) -> DivisorClass {
        self.scaled(-1)
    }
}

impl Neg for DivisorClass {
    type Output = DivisorClass;
    fn neg(self) -> DivisorClass {
        self.scaled(-1)
    }
}

impl Mul<&DivisorClass> for i64 {
    type Output = DivisorClass;
    fn mul(self, rhs: &DivisorClass) -> DivisorClass {
        rhs.scaled(self)
    }
}

impl Mul<DivisorClass> for i64 {
    type Output = DivisorClass;
    fn mul(self, rhs: DivisorClass) -> DivisorClass {
        rhs.scaled(self)
    }
}

/// Sums a non-empty iterator; an empty iterator yields the empty (rank 0) class,
/// so callers that may sum nothing should start from [`DivisorClass::zero`].
impl<'a> Sum<&'a DivisorClass> for DivisorClass {
    fn sum<I: Iterator<Item = &'a DivisorClass>>(iter: I) -> DivisorClass {
        let mut iter = iter;
        match iter.next() {
            None => DivisorClass::default(),
            Some(first) => iter.fold(first.clone(), |acc, c| acc + c),
        }
    }
}
