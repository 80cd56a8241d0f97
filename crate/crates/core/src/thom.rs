//! The Thom model `A[e]`: the `n`-fold suspension of `A` with product
//! `w_x * w_y = w_{e x y}` and differential `d(w_x) = w_{dx}`.
//!
//! ```
//! use thomforge_core::{thom, Cdga};
//! let cp1 = Cdga::builder(8).generator("x", 2).generator("y", 3).differential("y", "x^2").build().unwrap();
//! let e = cp1.parse_element("x").unwrap();
//! let t = thom::thom_model(&cp1, &e, 2).unwrap();
//! let one = t.wrap(cp1.unit());
//! assert_eq!(t.mul(&one, &one), t.wrap(e));
//! ```

use alloc::string::String;
use alloc::vec::Vec;
use num_traits::One;

use crate::algebra::{Cdga, CdgaMorphism, Element, Monomial};
use crate::complex::{
    self, check_limit, Cochains, DgAlgebra, GradedReport, QuasiIsoReport, RingTable, WeightedCochains,
};
use crate::linalg::SparseVec;
use crate::{Error, Rational, Result};

/// `w_x`, the suspension of an element `x` of the base.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Suspended(pub Element);

impl Suspended {
    pub fn underlying(&self) -> &Element {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ThomModel {
    base: Cdga,
    euler: Element,
    rank: u32,
    euler_weight: Option<i64>,
}

/// Validate `e` and build `A[e]`.
///
/// `rank` must be even and `e` closed of degree `rank` (or zero). On a weighted
/// base `e` must be weight-homogeneous; a zero `e` is given weight `rank`.
pub fn thom_model(base: &Cdga, euler: &Element, rank: u32) -> Result<ThomModel> {
    let weight = if base.is_weighted() && euler.is_zero() {
        Some(i64::from(rank))
    } else {
        None
    };
    build(base, euler, rank, weight)
}

/// Weighted Thom model with `||w_x|| = ||x|| + ||e||`.
///
/// `euler_weight` is only consulted when `e` is zero.
pub fn thom_weights(base: &Cdga, euler: &Element, rank: u32, euler_weight: Option<i64>) -> Result<ThomModel> {
    if !base.is_weighted() {
        return Err(Error::EulerInhomogeneous { rank });
    }
    let weight = if euler.is_zero() {
        Some(euler_weight.unwrap_or(i64::from(rank)))
    } else {
        None
    };
    build(base, euler, rank, weight)
}

fn build(base: &Cdga, euler: &Element, rank: u32, zero_weight: Option<i64>) -> Result<ThomModel> {
    if rank % 2 == 1 {
        return Err(Error::OddRankUnsupported(rank));
    }
    base.check_element(euler)?;
    let mut euler_weight = zero_weight;
    if !euler.is_zero() {
        if base.degree(euler) != Some(rank) {
            return Err(Error::EulerInhomogeneous { rank });
        }
        let de = base.d(euler);
        if !de.is_zero() {
            return Err(Error::EulerNotClosed(base.display(&de)));
        }
        if base.is_weighted() {
            euler_weight = Some(base.weight(euler).ok_or(Error::EulerInhomogeneous { rank })?);
        }
    }
    Ok(ThomModel {
        base: base.clone(),
        euler: euler.clone(),
        rank,
        euler_weight,
    })
}

impl ThomModel {
    pub fn base(&self) -> &Cdga {
        &self.base
    }

    pub fn euler(&self) -> &Element {
        &self.euler
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }

    pub fn euler_weight(&self) -> Option<i64> {
        self.euler_weight
    }

    pub fn is_weighted(&self) -> bool {
        self.euler_weight.is_some()
    }

    pub fn wrap(&self, x: Element) -> Suspended {
        Suspended(x)
    }

    pub fn parse(&self, src: &str) -> Result<Suspended> {
        Ok(Suspended(self.base.parse_element(src)?))
    }

    pub fn mul(&self, a: &Suspended, b: &Suspended) -> Suspended {
        let ex = self.base.mul(&self.euler, &a.0);
        Suspended(self.base.mul(&ex, &b.0))
    }

    pub fn d(&self, a: &Suspended) -> Suspended {
        Suspended(self.base.d(&a.0))
    }

    /// Relative cup product `(x, w_y) -> w_{xy}`.
    pub fn relative_cup(&self, x: &Element, w: &Suspended) -> Suspended {
        Suspended(self.base.mul(x, &w.0))
    }

    /// Restriction to the zero section: `w_u -> e u`.
    pub fn pullback(&self, w: &Suspended) -> Element {
        self.base.mul(&self.euler, &w.0)
    }

    pub fn degree(&self, a: &Suspended) -> Option<u32> {
        self.base.degree(&a.0).map(|d| d + self.rank)
    }

    pub fn weight(&self, a: &Suspended) -> Option<i64> {
        Some(self.base.weight(&a.0)? + self.euler_weight?)
    }

    /// Basis of degree `k`: the degree `k - n` basis of the base.
    pub fn basis(&self, k: u32) -> Result<Vec<Suspended>> {
        if k < self.rank {
            return Ok(Vec::new());
        }
        let one = Rational::one();
        Ok(self
            .base
            .basis(k - self.rank)?
            .iter()
            .map(|m| Suspended(Element::from_monomial(m.clone(), one.clone())))
            .collect())
    }

    /// Weight of every degree-`k` basis vector, in basis order.
    pub fn basis_weights(&self, k: u32) -> Option<Vec<i64>> {
        let shift = self.euler_weight?;
        if k < self.rank {
            return Some(Vec::new());
        }
        self.base
            .basis_raw(k - self.rank)
            .iter()
            .map(|m| Some(self.base.monomial_weight(m)? + shift))
            .collect()
    }

    pub fn display(&self, a: &Suspended) -> String {
        alloc::format!("w[{}]", self.base.display(&a.0))
    }

    pub fn cohomology(&self, up_to: u32) -> Result<ThomCohomology> {
        let groups = if self.is_weighted() {
            let shift = self.euler_weight.unwrap_or(0);
            complex::weighted_report(self, up_to)?
                .map(|k, (p, v)| Suspended(self.base.element_from_block(&v, k - self.rank, p - shift)))
        } else {
            complex::report(self, up_to)?.map(|k, v| self.from_coords(&v, k))
        };
        let ring = complex::ring_table(self, up_to, 1)?;
        Ok(ThomCohomology { groups, ring })
    }
}

/// Cohomology of a Thom model together with its (reduced) ring structure.
#[derive(Clone, Debug, PartialEq)]
pub struct ThomCohomology {
    pub groups: GradedReport<Suspended>,
    pub ring: RingTable,
}

pub fn thom_cohomology(t: &ThomModel, up_to: u32) -> Result<ThomCohomology> {
    t.cohomology(up_to)
}

impl Cochains for ThomModel {
    fn dim(&self, k: u32) -> usize {
        k.checked_sub(self.rank).map_or(0, |j| self.base.dim(j))
    }

    fn d_matrix(&self, k: u32) -> Vec<SparseVec> {
        k.checked_sub(self.rank)
            .map_or_else(Vec::new, |j| self.base.d_matrix(j))
    }

    fn cohomology_limit(&self) -> Option<u32> {
        self.base.cohomology_limit().map(|l| l + self.rank)
    }
}

impl WeightedCochains for ThomModel {
    fn weights_in(&self, k: u32) -> Vec<i64> {
        match (k.checked_sub(self.rank), self.euler_weight) {
            (Some(j), Some(s)) => self.base.weights_in(j).into_iter().map(|p| p + s).collect(),
            _ => Vec::new(),
        }
    }

    fn block_dim(&self, k: u32, weight: i64) -> usize {
        match (k.checked_sub(self.rank), self.euler_weight) {
            (Some(j), Some(s)) => self.base.block_dim(j, weight - s),
            _ => 0,
        }
    }

    fn block_d_matrix(&self, k: u32, weight: i64) -> Vec<SparseVec> {
        match (k.checked_sub(self.rank), self.euler_weight) {
            (Some(j), Some(s)) => self.base.block_d_matrix(j, weight - s),
            _ => Vec::new(),
        }
    }

    fn weighted_limit(&self) -> Option<u32> {
        self.cohomology_limit()
    }
}

impl DgAlgebra for ThomModel {
    type Elem = Suspended;

    fn zero(&self) -> Suspended {
        Suspended::default()
    }
    fn is_zero(&self, a: &Suspended) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &Suspended, b: &Suspended) -> Suspended {
        Suspended(&a.0 + &b.0)
    }
    fn scale(&self, a: &Suspended, c: &Rational) -> Suspended {
        Suspended(a.0.scaled(c))
    }
    fn product(&self, a: &Suspended, b: &Suspended) -> Suspended {
        self.mul(a, b)
    }
    fn derivative(&self, a: &Suspended) -> Suspended {
        self.d(a)
    }
    fn to_coords(&self, a: &Suspended, k: u32) -> SparseVec {
        k.checked_sub(self.rank)
            .map_or_else(SparseVec::new, |j| self.base.coords(&a.0, j))
    }
    fn from_coords(&self, v: &SparseVec, k: u32) -> Suspended {
        Suspended(self.base.element_from_coords(v, k.saturating_sub(self.rank)))
    }
    fn degree_of(&self, a: &Suspended) -> Option<u32> {
        self.degree(a)
    }
}

fn monomials_up_to(a: &Cdga, top: u32) -> Vec<(u32, Monomial)> {
    (0..=top)
        .flat_map(|d| a.basis_raw(d).iter().map(move |m| (d, m.clone())))
        .collect()
}

fn mono(m: &Monomial) -> Element {
    Element::from_monomial(m.clone(), Rational::one())
}

/// Outcome of comparing `A[e]` with `A[e']` for cohomologous Euler representatives.
#[derive(Clone, Debug, PartialEq)]
pub struct EulerComparison {
    pub pairs_checked: usize,
    /// `(x, y)` basis pairs where the homotopy identity failed.
    pub homotopy_failures: Vec<(String, String)>,
    pub betti: Vec<usize>,
    pub betti_other: Vec<usize>,
    pub rings_agree: bool,
}

impl EulerComparison {
    pub fn is_consistent(&self) -> bool {
        self.homotopy_failures.is_empty() && self.betti == self.betti_other && self.rings_agree
    }
}

/// Check that `H(x (x) y) = xyz` is a homotopy between the products of
/// `A[e]` and `A[e']`, where `dz = e - e'`.
///
/// The identity is checked on every pair of basis monomials whose product
/// stays in the trusted range, and the Betti numbers and ring tables of both
/// models are compared up to `up_to`.
pub fn compare_euler_reps(
    base: &Cdga,
    e: &Element,
    e_other: &Element,
    z: &Element,
    rank: u32,
    up_to: u32,
) -> Result<EulerComparison> {
    let diff = e - e_other;
    let residual = &base.d(z) - &diff;
    if !residual.is_zero() {
        return Err(Error::NotCohomologous(base.display(&residual)));
    }
    let t = thom_model(base, e, rank)?;
    let t2 = thom_model(base, e_other, rank)?;
    check_limit(t.cohomology_limit(), up_to)?;
    let top = base.truncation().degree.saturating_sub(rank);
    let monos = monomials_up_to(base, top);
    let mut pairs = 0;
    let mut failures = Vec::new();
    for (p, x) in &monos {
        for (q, y) in &monos {
            if p + q + rank > base.truncation().degree {
                continue;
            }
            pairs += 1;
            let (x, y) = (mono(x), mono(y));
            let h = |a: &Element, b: &Element| base.mul(&base.mul(a, b), z);
            let dh = base.d(&h(&x, &y));
            let sign = if p % 2 == 1 { -Rational::one() } else { Rational::one() };
            let hd = &h(&base.d(&x), &y) + &h(&x, &base.d(&y)).scaled(&sign);
            let lhs = &dh - &hd;
            let mu = t.mul(&Suspended(x.clone()), &Suspended(y.clone())).0;
            let mu2 = t2.mul(&Suspended(x.clone()), &Suspended(y.clone())).0;
            let mut rhs = &mu - &mu2;
            if (p + q) % 2 == 1 {
                rhs = -rhs;
            }
            if lhs != rhs {
                failures.push((base.display(&x), base.display(&y)));
            }
        }
    }
    let ring = complex::ring_table(&t, up_to, 1)?;
    let ring2 = complex::ring_table(&t2, up_to, 1)?;
    Ok(EulerComparison {
        pairs_checked: pairs,
        homotopy_failures: failures,
        betti: ring.dims.clone(),
        betti_other: ring2.dims.clone(),
        rings_agree: ring == ring2,
    })
}

/// The map `A[e] -> A'[f(e)]`, `w_x -> w_{f(x)}`, with its checks.
#[derive(Clone, Debug)]
pub struct ThomTransport {
    pub source: ThomModel,
    pub target: ThomModel,
    pub morphism: CdgaMorphism,
    pub commutes_with_d: bool,
    pub multiplicative: bool,
    /// The module square `g(x . w_y) = f(x) . g(w_y)`.
    pub square_commutes: bool,
    pub report: QuasiIsoReport,
}

impl ThomTransport {
    pub fn apply(&self, w: &Suspended) -> Suspended {
        Suspended(self.morphism.apply(&w.0))
    }

    pub fn is_valid(&self) -> bool {
        self.commutes_with_d && self.multiplicative && self.square_commutes
    }

    pub fn is_quasi_iso(&self) -> bool {
        self.is_valid() && self.report.is_quasi_iso()
    }
}

pub fn transport_thom(f: &CdgaMorphism, e: &Element, rank: u32, up_to: u32) -> Result<ThomTransport> {
    let source = thom_model(f.source(), e, rank)?;
    let target = thom_model(f.target(), &f.apply(e), rank)?;
    let top = f.source().truncation().degree.saturating_sub(rank);
    let monos = monomials_up_to(f.source(), top);
    let g = |w: &Suspended| Suspended(f.apply(&w.0));
    let mut commutes_with_d = true;
    let mut multiplicative = true;
    let mut square_commutes = true;
    for (p, x) in &monos {
        let wx = Suspended(mono(x));
        if *p < top && g(&source.d(&wx)) != target.d(&g(&wx)) {
            commutes_with_d = false;
        }
        for (q, y) in &monos {
            if p + q > top {
                continue;
            }
            let wy = Suspended(mono(y));
            if g(&source.mul(&wx, &wy)) != target.mul(&g(&wx), &g(&wy)) {
                multiplicative = false;
            }
            let lhs = g(&source.relative_cup(&mono(x), &wy));
            let rhs = target.relative_cup(&f.apply(&mono(x)), &g(&wy));
            if lhs != rhs {
                square_commutes = false;
            }
        }
    }
    let report = complex::quasi_iso_report(
        &source,
        &target,
        |k| k.checked_sub(rank).map_or_else(Vec::new, |j| f.matrix(j)),
        up_to,
    )?;
    Ok(ThomTransport {
        source,
        target,
        morphism: f.clone(),
        commutes_with_d,
        multiplicative,
        square_commutes,
        report,
    })
}
