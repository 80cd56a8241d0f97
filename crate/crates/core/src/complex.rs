//! Cochain complexes given by coordinates, their cohomology, and induced maps.

use alloc::vec::Vec;

use crate::linalg::{self, apply, Echelon, SparseVec};
use crate::{Error, Rational, Result};

/// A non-negatively graded cochain complex with finite-dimensional pieces.
pub trait Cochains {
    /// Dimension of the degree `n` piece.
    fn dim(&self, n: u32) -> usize;

    /// Images under `d` of the degree-`n` basis vectors, in degree `n + 1` coordinates.
    fn d_matrix(&self, n: u32) -> Vec<SparseVec>;

    /// Largest degree in which cohomology can be computed, `None` if unbounded.
    fn cohomology_limit(&self) -> Option<u32>;
}

/// A complex that also splits as a direct sum of weight blocks compatible with `d`.
pub trait WeightedCochains {
    /// Weights occurring in degree `n`, ascending.
    fn weights_in(&self, n: u32) -> Vec<i64>;
    fn block_dim(&self, n: u32, weight: i64) -> usize;
    fn block_d_matrix(&self, n: u32, weight: i64) -> Vec<SparseVec>;
    fn weighted_limit(&self) -> Option<u32>;
}

/// One weight block of a [`WeightedCochains`], viewed as a complex.
pub struct WeightBlock<'a, W: ?Sized> {
    pub inner: &'a W,
    pub weight: i64,
}

impl<W: WeightedCochains + ?Sized> Cochains for WeightBlock<'_, W> {
    fn dim(&self, n: u32) -> usize {
        self.inner.block_dim(n, self.weight)
    }
    fn d_matrix(&self, n: u32) -> Vec<SparseVec> {
        self.inner.block_d_matrix(n, self.weight)
    }
    fn cohomology_limit(&self) -> Option<u32> {
        self.inner.weighted_limit()
    }
}

/// A differential graded algebra whose elements can be moved to and from coordinates.
///
/// The unit is not part of the interface: Thom models are not unital.
pub trait DgAlgebra: Cochains {
    type Elem: Clone + PartialEq + core::fmt::Debug;

    fn zero(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn scale(&self, a: &Self::Elem, c: &Rational) -> Self::Elem;
    fn product(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn derivative(&self, a: &Self::Elem) -> Self::Elem;
    /// Coordinates of the degree-`n` component of `a`.
    fn to_coords(&self, a: &Self::Elem, n: u32) -> SparseVec;
    fn from_coords(&self, v: &SparseVec, n: u32) -> Self::Elem;
    /// Degree of a nonzero homogeneous element.
    fn degree_of(&self, a: &Self::Elem) -> Option<u32>;
}

pub(crate) fn check_limit(limit: Option<u32>, n: u32) -> Result<()> {
    match limit {
        Some(l) if n > l => Err(Error::BeyondTruncation { degree: n, limit: l }),
        _ => Ok(()),
    }
}

/// `H^n` of a complex, with deterministic representatives and a way to take classes.
#[derive(Clone, Debug)]
pub struct CohomologySpace {
    degree: u32,
    reps: Vec<SparseVec>,
    cycles: usize,
    boundaries: usize,
    // boundary images are inserted first, then representatives
    echelon: Echelon,
    boundary_inputs: usize,
}

impl CohomologySpace {
    /// Compute `H^n(c)`. The caller is responsible for `n` being within the limit.
    pub fn compute<C: Cochains + ?Sized>(c: &C, n: u32) -> Self {
        let incoming = if n == 0 { Vec::new() } else { c.d_matrix(n - 1) };
        let outgoing = c.d_matrix(n);
        let cycles = linalg::kernel(&outgoing);
        let mut echelon = Echelon::new();
        for b in &incoming {
            echelon.insert(b);
        }
        let boundary_inputs = echelon.inputs();
        let boundaries = echelon.rank();
        let mut reps = Vec::new();
        for z in &cycles {
            if !echelon.contains(z) {
                echelon.insert(z);
                reps.push(z.clone());
            }
        }
        CohomologySpace {
            degree: n,
            reps,
            cycles: cycles.len(),
            boundaries,
            echelon,
            boundary_inputs,
        }
    }

    pub fn checked<C: Cochains + ?Sized>(c: &C, n: u32) -> Result<Self> {
        check_limit(c.cohomology_limit(), n)?;
        Ok(Self::compute(c, n))
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.reps.len()
    }

    pub fn cycles_dim(&self) -> usize {
        self.cycles
    }

    pub fn boundaries_dim(&self) -> usize {
        self.boundaries
    }

    /// Coordinates of the representative cocycles.
    pub fn representatives(&self) -> &[SparseVec] {
        &self.reps
    }

    /// Coordinates of the class of a cocycle in the representative basis,
    /// or `None` if `v` is not a cocycle.
    pub fn class_of(&self, v: &SparseVec) -> Option<SparseVec> {
        let (rem, combo) = self.echelon.reduce(v);
        if !rem.is_zero() {
            return None;
        }
        Some(SparseVec::from_entries(
            combo
                .iter()
                .filter(|(i, _)| *i >= self.boundary_inputs)
                .map(|(i, c)| (i - self.boundary_inputs, c.clone())),
        ))
    }

    pub fn is_boundary(&self, v: &SparseVec) -> bool {
        self.class_of(v).is_some_and(|c| c.is_zero())
    }

    /// Cocycle representing the class with the given coordinates.
    pub fn cocycle(&self, class: &SparseVec) -> SparseVec {
        apply(&self.reps, class)
    }
}

/// Per-degree summary used by the report types.
#[derive(Clone, Debug, PartialEq)]
pub struct DegreeReport<E> {
    pub degree: u32,
    pub dimension: usize,
    pub representatives: Vec<E>,
    /// `(weight, dimension, representatives)` when the complex is weighted.
    pub weights: Vec<WeightPiece<E>>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct WeightPiece<E> {
    pub weight: i64,
    pub dimension: usize,
    pub representatives: Vec<E>,
}

/// Cohomology of a graded object in a range of degrees.
#[derive(Clone, Debug, PartialEq)]
pub struct GradedReport<E> {
    pub degrees: Vec<DegreeReport<E>>,
}

impl<E> GradedReport<E> {
    pub fn betti(&self) -> Vec<usize> {
        self.degrees.iter().map(|d| d.dimension).collect()
    }

    pub fn dim(&self, n: u32) -> usize {
        self.degrees
            .iter()
            .find(|d| d.degree == n)
            .map_or(0, |d| d.dimension)
    }

    pub fn weight_dim(&self, n: u32, weight: i64) -> usize {
        self.degrees
            .iter()
            .find(|d| d.degree == n)
            .and_then(|d| d.weights.iter().find(|w| w.weight == weight))
            .map_or(0, |w| w.dimension)
    }

    pub fn map<F, T>(self, mut f: F) -> GradedReport<T>
    where
        F: FnMut(u32, E) -> T,
    {
        GradedReport {
            degrees: self
                .degrees
                .into_iter()
                .map(|d| {
                    let n = d.degree;
                    DegreeReport {
                        degree: n,
                        dimension: d.dimension,
                        representatives: d.representatives.into_iter().map(|e| f(n, e)).collect(),
                        weights: d
                            .weights
                            .into_iter()
                            .map(|w| WeightPiece {
                                weight: w.weight,
                                dimension: w.dimension,
                                representatives: w.representatives.into_iter().map(|e| f(n, e)).collect(),
                            })
                            .collect(),
                    }
                })
                .collect(),
        }
    }
}

/// Cohomology in degrees `0..=up_to`, representatives in coordinates.
pub fn report<C: Cochains + ?Sized>(c: &C, up_to: u32) -> Result<GradedReport<SparseVec>> {
    check_limit(c.cohomology_limit(), up_to)?;
    let degrees = (0..=up_to)
        .map(|n| {
            let h = CohomologySpace::compute(c, n);
            DegreeReport {
                degree: n,
                dimension: h.dim(),
                representatives: h.representatives().to_vec(),
                weights: Vec::new(),
            }
        })
        .collect();
    Ok(GradedReport { degrees })
}

/// Bigraded cohomology in degrees `0..=up_to`; representatives are in block coordinates.
pub fn weighted_report<W: WeightedCochains + ?Sized>(w: &W, up_to: u32) -> Result<GradedReport<(i64, SparseVec)>> {
    check_limit(w.weighted_limit(), up_to)?;
    let degrees = (0..=up_to)
        .map(|n| {
            let mut pieces = Vec::new();
            for p in w.weights_in(n) {
                let h = CohomologySpace::compute(&WeightBlock { inner: w, weight: p }, n);
                if h.dim() > 0 {
                    pieces.push(WeightPiece {
                        weight: p,
                        dimension: h.dim(),
                        representatives: h.representatives().iter().map(|r| (p, r.clone())).collect(),
                    });
                }
            }
            DegreeReport {
                degree: n,
                dimension: pieces.iter().map(|p| p.dimension).sum(),
                representatives: pieces.iter().flat_map(|p| p.representatives.clone()).collect(),
                weights: pieces,
            }
        })
        .collect();
    Ok(GradedReport { degrees })
}

/// Rank of the induced map on `H^n` for one degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeMapReport {
    pub degree: u32,
    pub source_dim: usize,
    pub target_dim: usize,
    pub rank: usize,
}

impl DegreeMapReport {
    pub fn is_iso(&self) -> bool {
        self.rank == self.source_dim && self.rank == self.target_dim
    }
    pub fn is_mono(&self) -> bool {
        self.rank == self.source_dim
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuasiIsoReport {
    pub degrees: Vec<DegreeMapReport>,
}

impl QuasiIsoReport {
    pub fn is_quasi_iso(&self) -> bool {
        self.degrees.iter().all(DegreeMapReport::is_iso)
    }
}

/// Matrix of the map induced on `H^n`, columns indexed by source classes.
///
/// `map` gives the images of the degree-`n` source basis in target coordinates.
pub fn induced_on_cohomology(
    source: &CohomologySpace,
    target: &CohomologySpace,
    map: &[SparseVec],
) -> Vec<SparseVec> {
    source
        .representatives()
        .iter()
        .map(|z| {
            target
                .class_of(&apply(map, z))
                .expect("a chain map sends cocycles to cocycles")
        })
        .collect()
}

pub fn induced_rank<S, T>(source: &S, target: &T, map: &[SparseVec], n: u32) -> DegreeMapReport
where
    S: Cochains + ?Sized,
    T: Cochains + ?Sized,
{
    let hs = CohomologySpace::compute(source, n);
    let ht = CohomologySpace::compute(target, n);
    let cols = induced_on_cohomology(&hs, &ht, map);
    DegreeMapReport {
        degree: n,
        source_dim: hs.dim(),
        target_dim: ht.dim(),
        rank: linalg::rank(&cols),
    }
}

/// Compare cohomology through a chain map in degrees `0..=up_to`.
pub fn quasi_iso_report<S, T, F>(source: &S, target: &T, map: F, up_to: u32) -> Result<QuasiIsoReport>
where
    S: Cochains + ?Sized,
    T: Cochains + ?Sized,
    F: Fn(u32) -> Vec<SparseVec>,
{
    check_limit(source.cohomology_limit(), up_to)?;
    check_limit(target.cohomology_limit(), up_to)?;
    let degrees = (0..=up_to)
        .map(|n| induced_rank(source, target, &map(n), n))
        .collect();
    Ok(QuasiIsoReport { degrees })
}

/// Solve `d(u) = b` for `b` of degree `n`; returns coordinates of `u` in degree `n - 1`.
pub fn solve_coboundary<C: Cochains + ?Sized>(c: &C, b: &SparseVec, n: u32) -> Option<SparseVec> {
    if b.is_zero() {
        return Some(SparseVec::new());
    }
    if n == 0 {
        return None;
    }
    linalg::solve(&c.d_matrix(n - 1), b)
}

/// Structure constants of the cohomology product between classes of degree `>= from_degree`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingTable {
    /// `dims[n]` is `dim H^n` for `n <= up_to`.
    pub dims: Vec<usize>,
    pub entries: Vec<RingEntry>,
}

/// `h(left) * h(right)` expressed in the representative basis of the product degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingEntry {
    pub left: (u32, usize),
    pub right: (u32, usize),
    pub product: SparseVec,
}

impl RingTable {
    pub fn product(&self, left: (u32, usize), right: (u32, usize)) -> Option<&SparseVec> {
        self.entries
            .iter()
            .find(|e| e.left == left && e.right == right)
            .map(|e| &e.product)
    }

    pub fn is_trivial(&self) -> bool {
        self.entries.iter().all(|e| e.product.is_zero())
    }
}

/// Products of representative classes, for ordered pairs `left <= right`.
pub fn ring_table<A: DgAlgebra + ?Sized>(a: &A, up_to: u32, from_degree: u32) -> Result<RingTable> {
    check_limit(a.cohomology_limit(), up_to)?;
    let spaces: Vec<CohomologySpace> = (0..=up_to).map(|n| CohomologySpace::compute(a, n)).collect();
    let mut entries = Vec::new();
    for p in from_degree..=up_to {
        for q in p..=up_to.saturating_sub(p) {
            let hp = &spaces[p as usize];
            let hq = &spaces[q as usize];
            for (i, x) in hp.representatives().iter().enumerate() {
                let start = if p == q { i } else { 0 };
                for (j, y) in hq.representatives().iter().enumerate().skip(start) {
                    let prod = a.product(&a.from_coords(x, p), &a.from_coords(y, q));
                    let class = spaces[(p + q) as usize]
                        .class_of(&a.to_coords(&prod, p + q))
                        .expect("a product of cocycles is a cocycle");
                    entries.push(RingEntry {
                        left: (p, i),
                        right: (q, j),
                        product: class,
                    });
                }
            }
        }
    }
    Ok(RingTable {
        dims: spaces.iter().map(CohomologySpace::dim).collect(),
        entries,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use num_traits::One;

    /// 0 -> Q -> Q^2 -> Q -> 0 with d0 = (1, 0), d1 = (0 1).
    struct Toy;
    impl Cochains for Toy {
        fn dim(&self, n: u32) -> usize {
            [1, 2, 1].get(n as usize).copied().unwrap_or(0)
        }
        fn d_matrix(&self, n: u32) -> Vec<SparseVec> {
            match n {
                0 => vec![SparseVec::unit(0)],
                1 => vec![SparseVec::new(), SparseVec::unit(0)],
                2 => vec![SparseVec::new()],
                _ => Vec::new(),
            }
        }
        fn cohomology_limit(&self) -> Option<u32> {
            None
        }
    }

    #[test]
    fn toy_complex_is_acyclic() {
        let r = report(&Toy, 3).unwrap();
        assert_eq!(r.betti(), vec![0, 0, 0, 0]);
    }

    #[test]
    fn class_of_rejects_non_cocycles() {
        let h = CohomologySpace::compute(&Toy, 1);
        assert!(h.class_of(&SparseVec::unit(1)).is_none());
        assert!(h.is_boundary(&SparseVec::unit(0).scaled(&Rational::one())));
    }
}
