//! Sparse exact linear algebra over the rationals.
//!
//! Matrices are handled column-wise: a linear map is a slice of [`SparseVec`]s,
//! the images of the source basis vectors. [`Echelon`] is an incrementally built
//! row-echelon basis that also remembers how each stored row was produced from
//! the inserted vectors, which gives kernels and particular solutions for free.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use num_traits::{One, Zero};

use crate::Rational;

/// A sparse vector; absent entries are zero and stored entries are never zero.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SparseVec(BTreeMap<usize, Rational>);

impl SparseVec {
    pub fn new() -> Self {
        SparseVec(BTreeMap::new())
    }

    pub fn unit(index: usize) -> Self {
        let mut v = SparseVec::new();
        v.0.insert(index, Rational::one());
        v
    }

    pub fn from_entries<I: IntoIterator<Item = (usize, Rational)>>(entries: I) -> Self {
        let mut v = SparseVec::new();
        for (i, c) in entries {
            v.add_entry(i, &c);
        }
        v
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.0.len()
    }

    pub fn get(&self, index: usize) -> Option<&Rational> {
        self.0.get(&index)
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Rational)> + '_ {
        self.0.iter().map(|(i, c)| (*i, c))
    }

    pub fn leading(&self) -> Option<(usize, &Rational)> {
        self.0.iter().next().map(|(i, c)| (*i, c))
    }

    pub fn add_entry(&mut self, index: usize, c: &Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.0.entry(index).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.0.remove(&index);
        }
    }

    /// `self += c * other`
    pub fn add_scaled(&mut self, other: &SparseVec, c: &Rational) {
        if c.is_zero() {
            return;
        }
        for (i, x) in other.iter() {
            self.add_entry(i, &(x * c));
        }
    }

    pub fn scaled(&self, c: &Rational) -> SparseVec {
        if c.is_zero() {
            return SparseVec::new();
        }
        SparseVec(self.0.iter().map(|(i, x)| (*i, x * c)).collect())
    }

    pub fn dense(&self, len: usize) -> Vec<Rational> {
        let mut out = alloc::vec![Rational::zero(); len];
        for (i, c) in self.iter() {
            if i < len {
                out[i] = c.clone();
            }
        }
        out
    }

    /// Drop the entries with index `>= len` and shift the rest down by `offset`.
    pub fn window(&self, offset: usize, len: usize) -> SparseVec {
        SparseVec(
            self.0
                .range(offset..offset + len)
                .map(|(i, c)| (*i - offset, c.clone()))
                .collect(),
        )
    }

    pub fn shifted(&self, offset: usize) -> SparseVec {
        SparseVec(self.0.iter().map(|(i, c)| (*i + offset, c.clone())).collect())
    }
}

/// Apply a column-wise matrix to a coordinate vector.
pub fn apply(columns: &[SparseVec], v: &SparseVec) -> SparseVec {
    let mut out = SparseVec::new();
    for (j, c) in v.iter() {
        out.add_scaled(&columns[j], c);
    }
    out
}

#[derive(Clone, Debug)]
struct Row {
    vec: SparseVec,
    combo: SparseVec,
}

/// Incremental echelon basis with provenance tracking.
///
/// Every vector passed to [`insert`](Echelon::insert) gets the next input
/// index. Stored rows have a leading entry equal to one and no two rows share a
/// leading column.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    rows: BTreeMap<usize, Row>,
    inputs: usize,
}

impl Echelon {
    pub fn new() -> Self {
        Echelon::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn inputs(&self) -> usize {
        self.inputs
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    /// Reduce `v` until it has no entry in a pivot column.
    ///
    /// Returns `(remainder, combo)` with `v = remainder + sum combo[i] * input_i`.
    /// The remainder only depends on the class of `v` modulo the span.
    pub fn reduce(&self, v: &SparseVec) -> (SparseVec, SparseVec) {
        let mut rem = v.clone();
        let mut combo = SparseVec::new();
        let mut cursor = 0usize;
        loop {
            let next = rem
                .0
                .range(cursor..)
                .find(|(col, _)| self.rows.contains_key(col))
                .map(|(col, c)| (*col, c.clone()));
            let Some((col, c)) = next else { break };
            let row = &self.rows[&col];
            rem.add_scaled(&row.vec, &-c.clone());
            combo.add_scaled(&row.combo, &c);
            cursor = col + 1;
        }
        (rem, combo)
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).0.is_zero()
    }

    /// Insert the next input vector.
    ///
    /// Returns `None` when it enlarged the span, otherwise `Some(combo)`
    /// expressing it through the earlier inputs.
    pub fn insert(&mut self, v: &SparseVec) -> Option<SparseVec> {
        let index = self.inputs;
        self.inputs += 1;
        let (rem, combo) = self.reduce(v);
        if rem.is_zero() {
            return Some(combo);
        }
        let (pivot, lead) = rem.leading().map(|(i, c)| (i, c.clone())).unwrap();
        let inv = lead.recip();
        let mut own = SparseVec::unit(index);
        own.add_scaled(&combo, &-Rational::one());
        self.rows.insert(
            pivot,
            Row {
                vec: rem.scaled(&inv),
                combo: own.scaled(&inv),
            },
        );
        None
    }
}

/// Basis of the kernel of a column-wise matrix, in source coordinates.
///
/// The basis is deterministic: one vector per dependent column, in column order.
pub fn kernel(columns: &[SparseVec]) -> Vec<SparseVec> {
    let mut ech = Echelon::new();
    let mut out = Vec::new();
    for (j, col) in columns.iter().enumerate() {
        if let Some(combo) = ech.insert(col) {
            let mut k = SparseVec::unit(j);
            k.add_scaled(&combo, &-Rational::one());
            out.push(k);
        }
    }
    out
}

pub fn rank(vectors: &[SparseVec]) -> usize {
    let mut ech = Echelon::new();
    for v in vectors {
        ech.insert(v);
    }
    ech.rank()
}

/// A particular solution `x` of `columns * x = target`, if one exists.
pub fn solve(columns: &[SparseVec], target: &SparseVec) -> Option<SparseVec> {
    let mut ech = Echelon::new();
    for col in columns {
        ech.insert(col);
    }
    let (rem, combo) = ech.reduce(target);
    rem.is_zero().then_some(combo)
}
