//! Weight decompositions: validation and positivity, the purity truncation
//! and the formality certificate it yields, bigraded minimal models, and the
//! weight-scaling endomorphisms.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use num_traits::{One, Zero};

use crate::algebra::{Cdga, CdgaMorphism, Element, Generator, Truncation};
use crate::complex::{
    check_limit, induced_rank, Cochains, CohomologySpace, DegreeMapReport, QuasiIsoReport, WeightBlock,
    WeightedCochains,
};
use crate::linalg::{self, apply, Echelon, SparseVec};
use crate::{Error, Rational, Result};

/// Attach weights by generator name; returns the weighted presentation and the positivity verdict.
pub fn attach_weights(a: &Cdga, weights: &[(&str, i64)]) -> Result<(Cdga, bool)> {
    let mut ws = alloc::vec![None; a.num_generators()];
    for (name, w) in weights {
        let i = a
            .generator_index(name)
            .ok_or_else(|| Error::UnknownGenerator((*name).into()))?;
        ws[i] = Some(*w);
    }
    let mut out = Vec::with_capacity(ws.len());
    for (g, w) in a.generators().iter().zip(ws) {
        out.push(w.ok_or_else(|| Error::PartialWeights(g.name.clone()))?);
    }
    let w = a.with_weights(&out)?;
    let positive = is_positive(&w);
    Ok((w, positive))
}

/// Every generator (all have positive degree) carries a positive weight.
pub fn is_positive(a: &Cdga) -> bool {
    a.is_weighted() && a.generators().iter().all(|g| g.weight.is_some_and(|w| w > 0))
}

/// Weights determined by the degrees of cohomology classes.
///
/// Closed generators get weight equal to their degree; any other generator
/// inherits the weight of its differential, which is resolved iteratively.
/// Fails with `weight_violation` when a differential mixes weights.
pub fn natural_weights(a: &Cdga) -> Result<Cdga> {
    let n = a.num_generators();
    let mut ws: Vec<Option<i64>> = (0..n)
        .map(|i| {
            a.generator_differential(i)
                .is_zero()
                .then(|| i64::from(a.generators()[i].degree))
        })
        .collect();
    loop {
        let mut progress = false;
        for i in 0..n {
            if ws[i].is_some() {
                continue;
            }
            let mut found: Option<i64> = None;
            let mut ready = true;
            for (m, _) in a.generator_differential(i).terms() {
                let mut w = 0;
                for (j, &e) in m.exponents().iter().enumerate() {
                    if e > 0 {
                        match ws[j] {
                            Some(x) => w += i64::from(e) * x,
                            None => ready = false,
                        }
                    }
                }
                if !ready {
                    break;
                }
                match found {
                    None => found = Some(w),
                    Some(f) if f != w => {
                        return Err(Error::WeightViolation {
                            generator: a.generators()[i].name.clone(),
                            weight: f,
                        })
                    }
                    _ => {}
                }
            }
            if ready {
                ws[i] = found;
                progress = true;
            }
        }
        if !progress {
            break;
        }
    }
    let mut out = Vec::with_capacity(n);
    for (g, w) in a.generators().iter().zip(ws) {
        out.push(w.ok_or_else(|| Error::PartialWeights(g.name.clone()))?);
    }
    a.with_weights(&out)
}

/// Bigraded cohomology; the input must carry weights.
pub fn weighted_cohomology(w: &Cdga, up_to: u32) -> Result<crate::GradedReport<Element>> {
    if !w.is_weighted() {
        let g = w.generators().first().map_or_else(String::new, |g| g.name.clone());
        return Err(Error::PartialWeights(g));
    }
    w.cohomology(up_to)
}

enum TauBlock {
    Zero,
    Cycles(Vec<SparseVec>, Echelon),
    Full(usize),
}

/// The sub-complex `tau` with `tau^n_p = 0` for `p < n`, the cocycles for
/// `p = n`, and everything for `p > n`. It is presented by a basis in each
/// `(degree, weight)` block, written in the block coordinates of the ambient.
pub struct PureTruncation<'a, W: ?Sized> {
    ambient: &'a W,
    top: u32,
    blocks: BTreeMap<(u32, i64), TauBlock>,
}

pub fn pure_truncation<W: WeightedCochains + ?Sized>(w: &W, top: u32) -> PureTruncation<'_, W> {
    let mut blocks = BTreeMap::new();
    for n in 0..=top + 1 {
        for p in w.weights_in(n) {
            let b = match p.cmp(&i64::from(n)) {
                core::cmp::Ordering::Less => TauBlock::Zero,
                core::cmp::Ordering::Equal => {
                    let cycles = linalg::kernel(&w.block_d_matrix(n, p));
                    let mut ech = Echelon::new();
                    for z in &cycles {
                        ech.insert(z);
                    }
                    TauBlock::Cycles(cycles, ech)
                }
                core::cmp::Ordering::Greater => TauBlock::Full(w.block_dim(n, p)),
            };
            blocks.insert((n, p), b);
        }
    }
    PureTruncation { ambient: w, top, blocks }
}

impl<W: WeightedCochains + ?Sized> PureTruncation<'_, W> {
    /// Basis of `tau^n_p` in ambient block coordinates.
    pub fn basis(&self, n: u32, p: i64) -> Vec<SparseVec> {
        match self.blocks.get(&(n, p)) {
            None | Some(TauBlock::Zero) => Vec::new(),
            Some(TauBlock::Cycles(z, _)) => z.clone(),
            Some(TauBlock::Full(k)) => (0..*k).map(SparseVec::unit).collect(),
        }
    }

    fn coords(&self, v: &SparseVec, n: u32, p: i64) -> SparseVec {
        match self.blocks.get(&(n, p)) {
            None | Some(TauBlock::Zero) => SparseVec::new(),
            Some(TauBlock::Cycles(_, ech)) => {
                let (rem, combo) = ech.reduce(v);
                debug_assert!(rem.is_zero());
                combo
            }
            Some(TauBlock::Full(_)) => v.clone(),
        }
    }

    /// The inclusion `tau^n_p -> W^n_p` as a column matrix.
    pub fn inclusion(&self, n: u32, p: i64) -> Vec<SparseVec> {
        self.basis(n, p)
    }

    /// `d` on `tau^n_p` is the restriction of `d` on the ambient, which is
    /// checked to land in `tau^{n+1}_p`.
    pub fn is_subcomplex(&self) -> bool {
        self.blocks.keys().filter(|(n, _)| *n <= self.top).all(|&(n, p)| {
            let d = self.ambient.block_d_matrix(n, p);
            self.basis(n, p).iter().all(|v| {
                let img = apply(&d, v);
                match self.blocks.get(&(n + 1, p)) {
                    None | Some(TauBlock::Zero) => img.is_zero(),
                    Some(TauBlock::Cycles(_, ech)) => ech.contains(&img),
                    Some(TauBlock::Full(_)) => true,
                }
            })
        })
    }
}

impl<W: WeightedCochains + ?Sized> WeightedCochains for PureTruncation<'_, W> {
    fn weights_in(&self, n: u32) -> Vec<i64> {
        self.ambient
            .weights_in(n)
            .into_iter()
            .filter(|&p| p >= i64::from(n))
            .collect()
    }

    fn block_dim(&self, n: u32, p: i64) -> usize {
        match self.blocks.get(&(n, p)) {
            None | Some(TauBlock::Zero) => 0,
            Some(TauBlock::Cycles(z, _)) => z.len(),
            Some(TauBlock::Full(k)) => *k,
        }
    }

    fn block_d_matrix(&self, n: u32, p: i64) -> Vec<SparseVec> {
        let d = self.ambient.block_d_matrix(n, p);
        self.basis(n, p)
            .iter()
            .map(|v| self.coords(&apply(&d, v), n + 1, p))
            .collect()
    }

    fn weighted_limit(&self) -> Option<u32> {
        Some(match self.ambient.weighted_limit() {
            Some(l) => l.min(self.top),
            None => self.top,
        })
    }
}

/// `H(W)` with zero differential, one block per `(degree, weight)`.
struct CohomologyBlocks {
    dims: BTreeMap<(u32, i64), usize>,
}

impl WeightedCochains for CohomologyBlocks {
    fn weights_in(&self, n: u32) -> Vec<i64> {
        self.dims.keys().filter(|(m, _)| *m == n).map(|(_, p)| *p).collect()
    }
    fn block_dim(&self, n: u32, p: i64) -> usize {
        self.dims.get(&(n, p)).copied().unwrap_or(0)
    }
    fn block_d_matrix(&self, n: u32, p: i64) -> Vec<SparseVec> {
        alloc::vec![SparseVec::new(); self.block_dim(n, p)]
    }
    fn weighted_limit(&self) -> Option<u32> {
        None
    }
}

/// The zig-zag `tau W -> W` and `tau W -> H(W)` with their per-degree reports.
#[derive(Clone, Debug, PartialEq)]
pub struct FormalityCertificate {
    /// `(degree, weight, dim tau^n_p)` for the nonzero blocks.
    pub truncation_dims: Vec<(u32, i64, usize)>,
    pub inclusion: QuasiIsoReport,
    pub projection: QuasiIsoReport,
}

impl FormalityCertificate {
    pub fn is_verified(&self) -> bool {
        self.inclusion.is_quasi_iso() && self.projection.is_quasi_iso()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Formality {
    Certified(FormalityCertificate),
    /// Blocks `(n, p)` with `p != n` and `H^n_p != 0`.
    Obstructed(Vec<(u32, i64)>),
}

impl Formality {
    pub fn is_certified(&self) -> bool {
        matches!(self, Formality::Certified(c) if c.is_verified())
    }

    pub fn obstructions(&self) -> &[(u32, i64)] {
        match self {
            Formality::Obstructed(o) => o,
            Formality::Certified(_) => &[],
        }
    }
}

fn merge(reports: &mut BTreeMap<u32, DegreeMapReport>, r: DegreeMapReport) {
    let e = reports.entry(r.degree).or_insert(DegreeMapReport {
        degree: r.degree,
        source_dim: 0,
        target_dim: 0,
        rank: 0,
    });
    e.source_dim += r.source_dim;
    e.target_dim += r.target_dim;
    e.rank += r.rank;
}

/// Certify formality from purity of the weights, or list the impure blocks.
pub fn formality_certificate<W: WeightedCochains + ?Sized>(w: &W, up_to: u32) -> Result<Formality> {
    check_limit(w.weighted_limit(), up_to)?;
    let mut spaces = BTreeMap::new();
    let mut obstructions = Vec::new();
    for n in 0..=up_to {
        for p in w.weights_in(n) {
            let h = CohomologySpace::compute(&WeightBlock { inner: w, weight: p }, n);
            if h.dim() > 0 && p != i64::from(n) {
                obstructions.push((n, p));
            }
            spaces.insert((n, p), h);
        }
    }
    if !obstructions.is_empty() {
        return Ok(Formality::Obstructed(obstructions));
    }
    let tau = pure_truncation(w, up_to);
    let target = CohomologyBlocks {
        dims: spaces.iter().map(|(k, h)| (*k, h.dim())).collect(),
    };
    let mut inclusion = BTreeMap::new();
    let mut projection = BTreeMap::new();
    let mut truncation_dims = Vec::new();
    for n in 0..=up_to {
        let mut weights = w.weights_in(n);
        if n > 0 {
            weights.extend(w.weights_in(n - 1));
        }
        weights.extend(w.weights_in(n + 1));
        weights.sort_unstable();
        weights.dedup();
        for p in weights {
            let dim = tau.block_dim(n, p);
            if dim > 0 {
                truncation_dims.push((n, p, dim));
            }
            let tb = WeightBlock { inner: &tau, weight: p };
            let wb = WeightBlock { inner: w, weight: p };
            merge(&mut inclusion, induced_rank(&tb, &wb, &tau.inclusion(n, p), n));
            let proj: Vec<SparseVec> = match spaces.get(&(n, p)) {
                Some(h) if p == i64::from(n) => tau
                    .basis(n, p)
                    .iter()
                    .map(|z| h.class_of(z).expect("cocycle"))
                    .collect(),
                _ => alloc::vec![SparseVec::new(); dim],
            };
            let hb = WeightBlock { inner: &target, weight: p };
            merge(&mut projection, induced_rank(&tb, &hb, &proj, n));
        }
    }
    Ok(Formality::Certified(FormalityCertificate {
        truncation_dims,
        inclusion: QuasiIsoReport {
            degrees: inclusion.into_values().collect(),
        },
        projection: QuasiIsoReport {
            degrees: projection.into_values().collect(),
        },
    }))
}

/// Endomorphism multiplying the weight-`p` part by `lambda^p`.
pub fn weight_scaling(w: &Cdga, lambda: &Rational) -> Result<CdgaMorphism> {
    if lambda.is_zero() {
        return Err(Error::ZeroScale);
    }
    let images = w
        .generators()
        .iter()
        .enumerate()
        .map(|(i, g)| {
            let p = g.weight.unwrap_or(0);
            let s = if p >= 0 {
                num_traits::pow(lambda.clone(), p as usize)
            } else {
                num_traits::pow(lambda.recip(), p.unsigned_abs() as usize)
            };
            w.gen(i).scaled(&s)
        })
        .collect();
    CdgaMorphism::new(w, w, images)
}

/// No generator differential has a linear term.
pub fn is_decomposable(a: &Cdga) -> bool {
    (0..a.num_generators()).all(|i| a.generator_differential(i).terms().all(|(m, _)| m.length() != 1))
}

/// A minimal model `M -> W` valid through degree `up_to`.
#[derive(Clone, Debug)]
pub struct MinimalModel {
    pub model: Cdga,
    pub morphism: CdgaMorphism,
    /// Number of generators added per degree, indexed by degree.
    pub generator_counts: Vec<usize>,
    /// Degrees in which the iteration cap was reached before the cone became acyclic.
    pub capped: Vec<u32>,
}

pub const ITERATION_CAP: usize = 32;

/// Mapping cone of `f: M -> W` in one weight (or in total, when unweighted):
/// `C^k = M^{k+1} + W^k`, `d(m, w) = (dm, f(m) - dw)`.
struct Cone<'a> {
    m: &'a Cdga,
    w: &'a Cdga,
    f: &'a CdgaMorphism,
    weight: Option<i64>,
}

impl Cone<'_> {
    fn mdim(&self, k: u32) -> usize {
        match self.weight {
            Some(p) => self.m.block_dim(k, p),
            None => self.m.dim(k),
        }
    }
    fn wdim(&self, k: u32) -> usize {
        match self.weight {
            Some(p) => self.w.block_dim(k, p),
            None => self.w.dim(k),
        }
    }
    fn mbasis(&self, k: u32) -> Vec<Element> {
        let one = Rational::one();
        match self.weight {
            Some(p) => self.m.weighted_basis(k, p),
            None => self.m.basis_raw(k).to_vec(),
        }
        .into_iter()
        .map(|m| Element::from_monomial(m, one.clone()))
        .collect()
    }
    fn mcoords(&self, a: &Element, k: u32) -> SparseVec {
        match self.weight {
            Some(p) => self.m.block_coords(a, k, p),
            None => self.m.coords(a, k),
        }
    }
    fn wcoords(&self, a: &Element, k: u32) -> SparseVec {
        match self.weight {
            Some(p) => self.w.block_coords(a, k, p),
            None => self.w.coords(a, k),
        }
    }
    fn m_elem(&self, v: &SparseVec, k: u32) -> Element {
        match self.weight {
            Some(p) => self.m.element_from_block(v, k, p),
            None => self.m.element_from_coords(v, k),
        }
    }
    fn w_elem(&self, v: &SparseVec, k: u32) -> Element {
        match self.weight {
            Some(p) => self.w.element_from_block(v, k, p),
            None => self.w.element_from_coords(v, k),
        }
    }
    fn wd(&self, k: u32) -> Vec<SparseVec> {
        match self.weight {
            Some(p) => self.w.block_d_matrix(k, p),
            None => self.w.d_matrix(k),
        }
    }
}

impl Cochains for Cone<'_> {
    fn dim(&self, k: u32) -> usize {
        self.mdim(k + 1) + self.wdim(k)
    }

    fn d_matrix(&self, k: u32) -> Vec<SparseVec> {
        let offset = self.mdim(k + 2);
        let mut cols = Vec::new();
        for b in self.mbasis(k + 1) {
            let mut col = self.mcoords(&self.m.d(&b), k + 2);
            col.add_scaled(&self.wcoords(&self.f.apply(&b), k + 1).shifted(offset), &Rational::one());
            cols.push(col);
        }
        for c in self.wd(k) {
            cols.push(c.shifted(offset).scaled(&-Rational::one()));
        }
        cols
    }

    fn cohomology_limit(&self) -> Option<u32> {
        None
    }
}

/// Build a minimal model through degree `up_to` by killing the cohomology of
/// the mapping cone one degree at a time.
///
/// Weighted inputs give weighted models; an unweighted input with zero
/// differential is first given weights equal to degrees.
pub fn minimal_model(input: &Cdga, up_to: u32) -> Result<MinimalModel> {
    check_limit(input.cohomology_limit(), up_to)?;
    let h1 = CohomologySpace::compute(input, 1).dim();
    if h1 != 0 {
        return Err(Error::NotSimplyConnected(h1));
    }
    let w = if !input.is_weighted() && input.has_zero_differential() && input.num_generators() > 0 {
        let degrees: Vec<i64> = input.generators().iter().map(|g| i64::from(g.degree)).collect();
        input.with_weights(&degrees)?
    } else {
        input.clone()
    };
    let weighted = w.is_weighted() && w.num_generators() > 0;
    let top = Truncation::cutoff(up_to + 2);
    let mut gens: Vec<Generator> = Vec::new();
    let mut diffs: Vec<Element> = Vec::new();
    let mut images: Vec<Element> = Vec::new();
    let mut m = Cdga::new(Vec::new(), Vec::new(), top)?;
    let mut f = CdgaMorphism::new(&m, &w, Vec::new())?;
    let mut counts = alloc::vec![0usize; up_to as usize + 1];
    let mut capped = Vec::new();
    for n in 2..=up_to {
        let mut rounds = 0;
        loop {
            let weights: Vec<Option<i64>> = if weighted {
                let mut ps = w.weights_in(n);
                ps.extend(m.weights_in(n + 1));
                ps.sort_unstable();
                ps.dedup();
                ps.into_iter().map(Some).collect()
            } else {
                alloc::vec![None]
            };
            let mut new: Vec<(Option<i64>, Element, Element)> = Vec::new();
            for p in weights {
                let cone = Cone { m: &m, w: &w, f: &f, weight: p };
                let h = CohomologySpace::compute(&cone, n);
                let split = cone.mdim(n + 1);
                for rep in h.representatives() {
                    let dm = cone.m_elem(&rep.window(0, split), n + 1);
                    let img = cone.w_elem(&rep.window(split, cone.wdim(n)), n);
                    new.push((p, dm, img));
                }
            }
            if new.is_empty() {
                break;
            }
            if rounds == ITERATION_CAP {
                capped.push(n);
                break;
            }
            rounds += 1;
            for (p, dm, img) in new {
                counts[n as usize] += 1;
                let name = format!("g{}_{}", n, counts[n as usize]);
                gens.push(Generator {
                    name,
                    degree: n,
                    weight: p,
                });
                diffs.push(dm);
                images.push(img);
            }
            let len = gens.len();
            let padded: Vec<Element> = diffs.iter().map(|d| d.padded(len)).collect();
            m = Cdga::new(gens.clone(), padded, top)?;
            f = CdgaMorphism::new(&m, &w, images.clone())?;
        }
    }
    Ok(MinimalModel {
        model: m,
        morphism: f,
        generator_counts: counts,
        capped,
    })
}
