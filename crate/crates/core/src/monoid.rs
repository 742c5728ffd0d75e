//! Monoids used as label spaces.
//!
//! The verifier and the oracle are generic over [`Monoid`]: they only ever
//! touch labels through `identity`, `op` and `equals`. Three exact families
//! are bundled (free words, additive rationals, integer matrices), together
//! with [`MonoidKind`], a runtime descriptor that lets a diagram carry its
//! monoid through serialization.

use std::cell::Cell;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

/// A monoid with decidable equality.
///
/// Implementations must make `op` associative with `identity()` as a two-sided
/// unit, and `equals` an equivalence relation.
pub trait Monoid {
    type Element: Clone + fmt::Debug;

    fn identity(&self) -> Self::Element;

    fn op(&self, a: &Self::Element, b: &Self::Element) -> Self::Element;

    fn equals(&self, a: &Self::Element, b: &Self::Element) -> bool;

    /// Whether `value` belongs to this monoid instance.
    fn contains(&self, _value: &Self::Element) -> bool {
        true
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MonoidError {
    #[error("operands belong to different monoids: {left} and {right}")]
    InstanceMismatch { left: String, right: String },
    #[error("matrix dimension must be positive")]
    ZeroDimension,
    #[error("matrix has {got} entries, expected {expected}")]
    ShapeMismatch { expected: usize, got: usize },
    #[error("zero denominator")]
    ZeroDenominator,
}

/// Element of the free monoid over integer generators.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct FreeWord(pub Vec<u32>);

impl FreeWord {
    pub fn empty() -> Self {
        FreeWord(Vec::new())
    }

    pub fn generator(g: u32) -> Self {
        FreeWord(vec![g])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl From<Vec<u32>> for FreeWord {
    fn from(letters: Vec<u32>) -> Self {
        FreeWord(letters)
    }
}

/// Exact rational number under addition.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AdditiveNumber(pub BigRational);

impl AdditiveNumber {
    pub fn zero() -> Self {
        AdditiveNumber(BigRational::zero())
    }

    pub fn integer(v: i64) -> Self {
        AdditiveNumber(BigRational::from_integer(BigInt::from(v)))
    }

    pub fn ratio(numer: i64, denom: i64) -> Result<Self, MonoidError> {
        if denom == 0 {
            return Err(MonoidError::ZeroDenominator);
        }
        Ok(AdditiveNumber(BigRational::new(
            BigInt::from(numer),
            BigInt::from(denom),
        )))
    }

    pub fn negate(&self) -> Self {
        AdditiveNumber(-self.0.clone())
    }
}

impl fmt::Display for AdditiveNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

/// Square matrix with arbitrary-precision integer entries, stored row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    k: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Result<Self, MonoidError> {
        let k = rows.len();
        if k == 0 {
            return Err(MonoidError::ZeroDimension);
        }
        let mut entries = Vec::with_capacity(k * k);
        for row in rows {
            if row.len() != k {
                return Err(MonoidError::ShapeMismatch {
                    expected: k * k,
                    got: k * (k - 1) + row.len(),
                });
            }
            entries.extend(row.iter().cloned().map(Into::into));
        }
        Ok(IntMatrix { k, entries })
    }

    pub fn from_row_major(k: usize, entries: Vec<BigInt>) -> Result<Self, MonoidError> {
        if k == 0 {
            return Err(MonoidError::ZeroDimension);
        }
        if entries.len() != k * k {
            return Err(MonoidError::ShapeMismatch {
                expected: k * k,
                got: entries.len(),
            });
        }
        Ok(IntMatrix { k, entries })
    }

    pub fn identity(k: usize) -> Self {
        let mut m = Self::zero(k);
        for i in 0..k {
            m.entries[i * k + i] = BigInt::one();
        }
        m
    }

    pub fn zero(k: usize) -> Self {
        IntMatrix {
            k,
            entries: vec![BigInt::zero(); k * k],
        }
    }

    /// Matrix unit `E_{i,j}` with 1-based indices.
    pub fn unit(k: usize, i: usize, j: usize) -> Self {
        assert!(i >= 1 && i <= k && j >= 1 && j <= k, "unit index out of range");
        let mut m = Self::zero(k);
        m.entries[(i - 1) * k + (j - 1)] = BigInt::one();
        m
    }

    /// `[[1, x], [0, 1]]`.
    pub fn upper_unitriangular(x: impl Into<BigInt>) -> Self {
        IntMatrix {
            k: 2,
            entries: vec![BigInt::one(), x.into(), BigInt::zero(), BigInt::one()],
        }
    }

    pub fn dim(&self) -> usize {
        self.k
    }

    /// Entry at 0-based `(row, col)`.
    pub fn get(&self, row: usize, col: usize) -> &BigInt {
        &self.entries[row * self.k + col]
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.entries
    }

    pub fn rows(&self) -> impl Iterator<Item = &[BigInt]> {
        self.entries.chunks(self.k)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn checked_mul(&self, other: &IntMatrix) -> Result<IntMatrix, MonoidError> {
        if self.k != other.k {
            return Err(MonoidError::InstanceMismatch {
                left: format!("Mat_{}", self.k),
                right: format!("Mat_{}", other.k),
            });
        }
        let k = self.k;
        let mut entries = vec![BigInt::zero(); k * k];
        for i in 0..k {
            for l in 0..k {
                let a = &self.entries[i * k + l];
                if a.is_zero() {
                    continue;
                }
                for j in 0..k {
                    let b = &other.entries[l * k + j];
                    if !b.is_zero() {
                        entries[i * k + j] += a * b;
                    }
                }
            }
        }
        Ok(IntMatrix { k, entries })
    }
}

/// Free monoid over `u32` generators.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct FreeMonoid;

impl Monoid for FreeMonoid {
    type Element = FreeWord;

    fn identity(&self) -> FreeWord {
        FreeWord::empty()
    }

    fn op(&self, a: &FreeWord, b: &FreeWord) -> FreeWord {
        let mut letters = Vec::with_capacity(a.len() + b.len());
        letters.extend_from_slice(&a.0);
        letters.extend_from_slice(&b.0);
        FreeWord(letters)
    }

    fn equals(&self, a: &FreeWord, b: &FreeWord) -> bool {
        a == b
    }
}

/// Rationals under addition.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct AdditiveMonoid;

impl Monoid for AdditiveMonoid {
    type Element = AdditiveNumber;

    fn identity(&self) -> AdditiveNumber {
        AdditiveNumber::zero()
    }

    fn op(&self, a: &AdditiveNumber, b: &AdditiveNumber) -> AdditiveNumber {
        AdditiveNumber(&a.0 + &b.0)
    }

    fn equals(&self, a: &AdditiveNumber, b: &AdditiveNumber) -> bool {
        a == b
    }
}

/// `k × k` integer matrices under multiplication.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MatrixMonoid {
    pub k: usize,
}

impl Monoid for MatrixMonoid {
    type Element = IntMatrix;

    fn identity(&self) -> IntMatrix {
        IntMatrix::identity(self.k)
    }

    fn op(&self, a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
        a.checked_mul(b).expect("matrix operands of one MatrixMonoid share a dimension")
    }

    fn equals(&self, a: &IntMatrix, b: &IntMatrix) -> bool {
        a == b
    }

    fn contains(&self, value: &IntMatrix) -> bool {
        value.dim() == self.k
    }
}

/// Runtime monoid descriptor: family tag plus parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MonoidKind {
    Free,
    Additive,
    Matrix { k: usize },
}

impl MonoidKind {
    pub fn family_name(&self) -> &'static str {
        match self {
            MonoidKind::Free => "free",
            MonoidKind::Additive => "additive",
            MonoidKind::Matrix { .. } => "matrix",
        }
    }

    fn belongs(&self, value: &MonoidValue) -> bool {
        match (self, value) {
            (MonoidKind::Free, MonoidValue::Word(_)) | (MonoidKind::Additive, MonoidValue::Number(_)) => true,
            (MonoidKind::Matrix { k }, MonoidValue::Matrix(m)) => m.dim() == *k,
            _ => false,
        }
    }

    /// Product with instance checking.
    pub fn try_op(&self, a: &MonoidValue, b: &MonoidValue) -> Result<MonoidValue, MonoidError> {
        self.check(a)?;
        self.check(b)?;
        a.try_op(b)
    }

    /// Equality with instance checking.
    pub fn try_equals(&self, a: &MonoidValue, b: &MonoidValue) -> Result<bool, MonoidError> {
        self.check(a)?;
        self.check(b)?;
        a.try_equals(b)
    }

    fn check(&self, v: &MonoidValue) -> Result<(), MonoidError> {
        if self.belongs(v) {
            Ok(())
        } else {
            Err(MonoidError::InstanceMismatch {
                left: self.to_string(),
                right: v.instance_name(),
            })
        }
    }
}

impl fmt::Display for MonoidKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MonoidKind::Matrix { k } => write!(f, "Mat_{k}"),
            other => f.write_str(other.family_name()),
        }
    }
}

/// A value of one of the bundled families.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum MonoidValue {
    Word(FreeWord),
    Number(AdditiveNumber),
    Matrix(IntMatrix),
}

impl MonoidValue {
    pub fn kind(&self) -> MonoidKind {
        match self {
            MonoidValue::Word(_) => MonoidKind::Free,
            MonoidValue::Number(_) => MonoidKind::Additive,
            MonoidValue::Matrix(m) => MonoidKind::Matrix { k: m.dim() },
        }
    }

    fn instance_name(&self) -> String {
        self.kind().to_string()
    }

    pub fn try_op(&self, other: &MonoidValue) -> Result<MonoidValue, MonoidError> {
        match (self, other) {
            (MonoidValue::Word(a), MonoidValue::Word(b)) => Ok(MonoidValue::Word(FreeMonoid.op(a, b))),
            (MonoidValue::Number(a), MonoidValue::Number(b)) => {
                Ok(MonoidValue::Number(AdditiveMonoid.op(a, b)))
            }
            (MonoidValue::Matrix(a), MonoidValue::Matrix(b)) => a.checked_mul(b).map(MonoidValue::Matrix),
            (a, b) => Err(MonoidError::InstanceMismatch {
                left: a.instance_name(),
                right: b.instance_name(),
            }),
        }
    }

    pub fn try_equals(&self, other: &MonoidValue) -> Result<bool, MonoidError> {
        if self.kind() != other.kind() {
            return Err(MonoidError::InstanceMismatch {
                left: self.instance_name(),
                right: other.instance_name(),
            });
        }
        Ok(self == other)
    }
}

impl From<FreeWord> for MonoidValue {
    fn from(w: FreeWord) -> Self {
        MonoidValue::Word(w)
    }
}

impl From<AdditiveNumber> for MonoidValue {
    fn from(n: AdditiveNumber) -> Self {
        MonoidValue::Number(n)
    }
}

impl From<IntMatrix> for MonoidValue {
    fn from(m: IntMatrix) -> Self {
        MonoidValue::Matrix(m)
    }
}

/// Dispatches to the concrete family. Values must belong to this instance;
/// [`crate::Diagram`] construction guarantees that for labels.
impl Monoid for MonoidKind {
    type Element = MonoidValue;

    fn identity(&self) -> MonoidValue {
        match *self {
            MonoidKind::Free => MonoidValue::Word(FreeWord::empty()),
            MonoidKind::Additive => MonoidValue::Number(AdditiveNumber::zero()),
            MonoidKind::Matrix { k } => MonoidValue::Matrix(IntMatrix::identity(k)),
        }
    }

    fn op(&self, a: &MonoidValue, b: &MonoidValue) -> MonoidValue {
        match self.try_op(a, b) {
            Ok(v) => v,
            Err(e) => panic!("monoid invariant violated: {e}"),
        }
    }

    fn equals(&self, a: &MonoidValue, b: &MonoidValue) -> bool {
        debug_assert!(self.belongs(a) && self.belongs(b));
        a == b
    }

    fn contains(&self, value: &MonoidValue) -> bool {
        self.belongs(value)
    }
}

/// Wraps a monoid and counts every call made through it.
#[derive(Debug, Default)]
pub struct CountingMonoid<M> {
    inner: M,
    identities: Cell<u64>,
    ops: Cell<u64>,
    equalities: Cell<u64>,
}

impl<M> CountingMonoid<M> {
    pub fn new(inner: M) -> Self {
        CountingMonoid {
            inner,
            identities: Cell::new(0),
            ops: Cell::new(0),
            equalities: Cell::new(0),
        }
    }

    pub fn inner(&self) -> &M {
        &self.inner
    }

    pub fn identity_calls(&self) -> u64 {
        self.identities.get()
    }

    pub fn op_calls(&self) -> u64 {
        self.ops.get()
    }

    pub fn equality_calls(&self) -> u64 {
        self.equalities.get()
    }
}

impl<M: Monoid> Monoid for CountingMonoid<M> {
    type Element = M::Element;

    fn identity(&self) -> M::Element {
        self.identities.set(self.identities.get() + 1);
        self.inner.identity()
    }

    fn op(&self, a: &M::Element, b: &M::Element) -> M::Element {
        self.ops.set(self.ops.get() + 1);
        self.inner.op(a, b)
    }

    fn equals(&self, a: &M::Element, b: &M::Element) -> bool {
        self.equalities.set(self.equalities.get() + 1);
        self.inner.equals(a, b)
    }

    fn contains(&self, value: &M::Element) -> bool {
        self.inner.contains(value)
    }
}
