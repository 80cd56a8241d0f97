use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;
use num_traits::{One, Signed, Zero};

use super::element::{Element, Monomial};
use crate::complex::{self, Cochains, DgAlgebra, GradedReport, WeightedCochains};
use crate::expr::Expr;
use crate::linalg::SparseVec;
use crate::{Error, Rational, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub degree: u32,
    pub weight: Option<i64>,
}

impl Generator {
    pub fn new(name: impl Into<String>, degree: u32) -> Self {
        Generator {
            name: name.into(),
            degree,
            weight: None,
        }
    }

    pub fn weighted(name: impl Into<String>, degree: u32, weight: i64) -> Self {
        Generator {
            name: name.into(),
            degree,
            weight: Some(weight),
        }
    }

    pub fn is_odd(&self) -> bool {
        self.degree % 2 == 1
    }
}

/// How the degree cap `N` of a presentation is read.
///
/// * `Cutoff`: the free algebra, with results trusted in degrees `<= N`
///   (cohomology up to `N - 1`).
/// * `Quotient`: the quotient by everything of degree `> N`, which is itself a
///   cdga; cohomology is then available in every degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Truncation {
    pub degree: u32,
    pub quotient: bool,
}

impl Truncation {
    pub fn cutoff(degree: u32) -> Self {
        Truncation { degree, quotient: false }
    }

    pub fn quotient(degree: u32) -> Self {
        Truncation { degree, quotient: true }
    }

    pub fn cohomology_limit(&self) -> Option<u32> {
        if self.quotient {
            None
        } else {
            Some(self.degree.saturating_sub(1))
        }
    }
}

/// Generators plus the product rule; no differential.
#[derive(Clone, Debug)]
pub(crate) struct Signature {
    pub(crate) generators: Vec<Generator>,
    pub(crate) truncation: Truncation,
}

impl Signature {
    pub(crate) fn len(&self) -> usize {
        self.generators.len()
    }

    pub(crate) fn index_of(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.name == name)
    }

    pub(crate) fn mono_degree(&self, m: &Monomial) -> u32 {
        m.0.iter()
            .zip(&self.generators)
            .map(|(e, g)| e * g.degree)
            .sum()
    }

    pub(crate) fn mono_weight(&self, m: &Monomial) -> Option<i64> {
        let mut w = 0i64;
        for (e, g) in m.0.iter().zip(&self.generators) {
            if *e > 0 {
                w += i64::from(*e) * g.weight?;
            }
        }
        Some(w)
    }

    /// Product of canonical monomials: the result and whether the Koszul sign is negative.
    pub(crate) fn mul_mono(&self, a: &Monomial, b: &Monomial) -> Option<(Monomial, bool)> {
        let mut out = Vec::with_capacity(a.0.len());
        let mut odd_a_after = 0usize;
        let mut swaps = 0usize;
        // walk from the last generator down so that odd_a_after counts odd factors of
        // `a` with a larger index than the current one
        for i in (0..a.0.len()).rev() {
            let odd = self.generators[i].is_odd();
            if odd && b.0[i] == 1 {
                swaps += odd_a_after;
            }
            if odd && a.0[i] == 1 {
                odd_a_after += 1;
            }
        }
        for (i, (x, y)) in a.0.iter().zip(&b.0).enumerate() {
            let e = x + y;
            if e > 1 && self.generators[i].is_odd() {
                return None;
            }
            out.push(e);
        }
        Some((Monomial(out), swaps % 2 == 1))
    }

    fn keep(&self, m: &Monomial) -> bool {
        !self.truncation.quotient || self.mono_degree(m) <= self.truncation.degree
    }

    pub(crate) fn mul(&self, a: &Element, b: &Element) -> Element {
        let mut out = Element::zero();
        for (ma, ca) in a.terms() {
            for (mb, cb) in b.terms() {
                if let Some((m, neg)) = self.mul_mono(ma, mb) {
                    if !self.keep(&m) {
                        continue;
                    }
                    let c = ca * cb;
                    out.add_term(m, if neg { -c } else { c });
                }
            }
        }
        out
    }

    pub(crate) fn unit(&self) -> Element {
        let one = Monomial::one(self.len());
        Element::from_monomial(one, Rational::one())
    }

    pub(crate) fn gen(&self, i: usize) -> Element {
        let m = Monomial::generator(self.len(), i);
        if self.keep(&m) {
            Element::from_monomial(m, Rational::one())
        } else {
            Element::zero()
        }
    }

    pub(crate) fn pow(&self, a: &Element, k: u32) -> Element {
        let mut out = self.unit();
        for _ in 0..k {
            out = self.mul(&out, a);
        }
        out
    }

    pub(crate) fn eval(&self, e: &Expr) -> Result<Element> {
        Ok(match e {
            Expr::Num(c) => self.unit().scaled(c),
            Expr::Var { name, .. } => {
                let i = self
                    .index_of(name)
                    .ok_or_else(|| Error::UnknownGenerator(name.clone()))?;
                self.gen(i)
            }
            Expr::Neg(a) => -self.eval(a)?,
            Expr::Add(a, b) => self.eval(a)? + self.eval(b)?,
            Expr::Sub(a, b) => self.eval(a)? - self.eval(b)?,
            Expr::Mul(a, b) => self.mul(&self.eval(a)?, &self.eval(b)?),
            Expr::Pow(a, k) => self.pow(&self.eval(a)?, *k),
        })
    }

    pub(crate) fn fmt_monomial(&self, m: &Monomial) -> String {
        let mut parts = Vec::new();
        for (e, g) in m.0.iter().zip(&self.generators) {
            match e {
                0 => {}
                1 => parts.push(g.name.clone()),
                _ => parts.push(format!("{}^{}", g.name, e)),
            }
        }
        parts.join("*")
    }

    pub(crate) fn fmt_element(&self, a: &Element) -> String {
        if a.is_zero() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (k, (m, c)) in a.terms().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mono = self.fmt_monomial(m);
            if mono.is_empty() {
                s.push_str(&fmt_rational(&abs));
            } else if abs.is_one() {
                s.push_str(&mono);
            } else {
                s.push_str(&fmt_rational(&abs));
                s.push('*');
                s.push_str(&mono);
            }
        }
        s
    }
}

pub(crate) fn fmt_rational(c: &Rational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

fn enumerate_basis(gens: &[Generator], degree: u32) -> Vec<Monomial> {
    fn go(gens: &[Generator], i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i == gens.len() {
            if left == 0 {
                out.push(Monomial(cur.clone()));
            }
            return;
        }
        let d = gens[i].degree;
        let max = if gens[i].is_odd() { 1 } else { left / d };
        for e in 0..=max {
            if e * d > left {
                break;
            }
            cur[i] = e;
            go(gens, i + 1, left - e * d, cur, out);
        }
        cur[i] = 0;
    }
    let mut out = Vec::new();
    let mut cur = alloc::vec![0; gens.len()];
    go(gens, 0, degree, &mut cur, &mut out);
    out.sort();
    out
}

#[derive(Debug)]
struct Inner {
    sig: Signature,
    differential: Vec<Element>,
    bases: Vec<Vec<Monomial>>,
    index: Vec<BTreeMap<Monomial, usize>>,
    // per degree: weight -> positions in `bases[degree]`
    weight_blocks: Vec<BTreeMap<i64, Vec<usize>>>,
}

/// A free graded-commutative algebra on finitely many generators of positive
/// degree, with a differential given on generators.
///
/// Generators are kept in canonical order: by degree, then by declaration.
/// Values are immutable and cheap to clone.
#[derive(Clone, Debug)]
pub struct Cdga {
    inner: Arc<Inner>,
}

impl PartialEq for Cdga {
    fn eq(&self, other: &Self) -> bool {
        self.inner.sig.generators == other.inner.sig.generators
            && self.inner.sig.truncation == other.inner.sig.truncation
            && self.inner.differential == other.inner.differential
    }
}

impl Cdga {
    pub fn builder(truncation: u32) -> CdgaBuilder {
        CdgaBuilder {
            generators: Vec::new(),
            differentials: Vec::new(),
            truncation: Truncation::cutoff(truncation),
        }
    }

    /// Build from generators and the differential of each generator.
    ///
    /// `differential[i]` is written over `generators` in the order given; the
    /// result stores everything in canonical order.
    pub fn new(generators: Vec<Generator>, differential: Vec<Element>, truncation: Truncation) -> Result<Cdga> {
        if truncation.degree == 0 {
            return Err(Error::ZeroTruncation);
        }
        check_generators(&generators)?;
        let n = generators.len();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&i| generators[i].degree);
        // position of old index in the new order
        let mut new_pos = alloc::vec![0; n];
        for (p, &i) in order.iter().enumerate() {
            new_pos[i] = p;
        }
        let remap = |e: &Element| {
            let mut out = Element::zero();
            for (m, c) in e.terms() {
                let mut ex = alloc::vec![0; n];
                for (i, &k) in m.0.iter().enumerate() {
                    ex[new_pos[i]] = k;
                }
                out.add_term(Monomial(ex), c.clone());
            }
            out
        };
        let gens: Vec<Generator> = order.iter().map(|&i| generators[i].clone()).collect();
        let mut diff: Vec<Element> = alloc::vec![Element::zero(); n];
        for (i, e) in differential.iter().enumerate().take(n) {
            if let Some(len) = e.generators_len() {
                if len != n {
                    return Err(Error::MixedPresentations);
                }
            }
            diff[new_pos[i]] = remap(e);
        }
        Self::assemble(Signature { generators: gens, truncation }, diff)
    }

    fn assemble(sig: Signature, mut differential: Vec<Element>) -> Result<Cdga> {
        for d in &mut differential {
            d.retain(|m| !sig.truncation.quotient || sig.mono_degree(m) <= sig.truncation.degree);
        }
        for (g, d) in sig.generators.iter().zip(&differential) {
            for (m, _) in d.terms() {
                let found = sig.mono_degree(m);
                if found != g.degree + 1 {
                    return Err(Error::DegreeMismatch {
                        generator: g.name.clone(),
                        expected: g.degree + 1,
                        found,
                    });
                }
                if let Some(w) = g.weight {
                    if sig.mono_weight(m) != Some(w) {
                        return Err(Error::WeightViolation {
                            generator: g.name.clone(),
                            weight: w,
                        });
                    }
                }
            }
        }
        let top = if sig.truncation.quotient {
            sig.truncation.degree
        } else {
            sig.truncation.degree + 1
        };
        let bases: Vec<Vec<Monomial>> = (0..=top).map(|n| enumerate_basis(&sig.generators, n)).collect();
        let index = bases
            .iter()
            .map(|b| b.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect())
            .collect();
        let weighted = sig.generators.iter().all(|g| g.weight.is_some());
        let weight_blocks = if weighted {
            bases
                .iter()
                .map(|b| {
                    let mut blocks: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
                    for (i, m) in b.iter().enumerate() {
                        blocks.entry(sig.mono_weight(m).unwrap()).or_default().push(i);
                    }
                    blocks
                })
                .collect()
        } else {
            Vec::new()
        };
        let cdga = Cdga {
            inner: Arc::new(Inner {
                sig,
                differential,
                bases,
                index,
                weight_blocks,
            }),
        };
        for (i, g) in cdga.generators().iter().enumerate() {
            let dd = cdga.d(&cdga.inner.differential[i]);
            if !dd.is_zero() {
                return Err(Error::D2Nonzero {
                    generator: g.name.clone(),
                    residual: cdga.display(&dd),
                });
            }
        }
        Ok(cdga)
    }

    pub fn generators(&self) -> &[Generator] {
        &self.inner.sig.generators
    }

    pub fn num_generators(&self) -> usize {
        self.inner.sig.len()
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.inner.sig.index_of(name)
    }

    pub fn truncation(&self) -> Truncation {
        self.inner.sig.truncation
    }

    pub fn is_weighted(&self) -> bool {
        !self.inner.weight_blocks.is_empty()
    }

    /// True when every generator differential is zero.
    pub fn has_zero_differential(&self) -> bool {
        self.inner.differential.iter().all(Element::is_zero)
    }

    /// The differential assigned to generator `i` (canonical order).
    pub fn generator_differential(&self, i: usize) -> &Element {
        &self.inner.differential[i]
    }

    pub fn unit(&self) -> Element {
        self.inner.sig.unit()
    }

    pub fn gen(&self, i: usize) -> Element {
        self.inner.sig.gen(i)
    }

    pub fn generator(&self, name: &str) -> Result<Element> {
        let i = self
            .generator_index(name)
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))?;
        Ok(self.gen(i))
    }

    pub fn eval(&self, e: &Expr) -> Result<Element> {
        self.inner.sig.eval(e)
    }

    pub fn parse_element(&self, src: &str) -> Result<Element> {
        self.eval(&Expr::parse(src)?)
    }

    pub fn display(&self, a: &Element) -> String {
        self.inner.sig.fmt_element(a)
    }

    pub fn display_monomial(&self, m: &Monomial) -> String {
        let s = self.inner.sig.fmt_monomial(m);
        if s.is_empty() {
            "1".to_string()
        } else {
            s
        }
    }

    pub fn monomial_degree(&self, m: &Monomial) -> u32 {
        self.inner.sig.mono_degree(m)
    }

    pub fn monomial_weight(&self, m: &Monomial) -> Option<i64> {
        self.inner.sig.mono_weight(m)
    }

    /// Degree of a nonzero homogeneous element.
    pub fn degree(&self, a: &Element) -> Option<u32> {
        let mut it = a.terms().map(|(m, _)| self.monomial_degree(m));
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    /// Weight of a nonzero weight-homogeneous element.
    pub fn weight(&self, a: &Element) -> Option<i64> {
        let mut it = a.terms().map(|(m, _)| self.monomial_weight(m));
        let first = it.next()??;
        it.all(|w| w == Some(first)).then_some(first)
    }

    pub(crate) fn check_element(&self, a: &Element) -> Result<()> {
        match a.generators_len() {
            Some(n) if n != self.num_generators() => Err(Error::MixedPresentations),
            _ => Ok(()),
        }
    }

    /// Graded-commutative product.
    pub fn multiply(&self, a: &Element, b: &Element) -> Result<Element> {
        self.check_element(a)?;
        self.check_element(b)?;
        Ok(self.mul(a, b))
    }

    pub fn mul(&self, a: &Element, b: &Element) -> Element {
        self.inner.sig.mul(a, b)
    }

    pub fn pow(&self, a: &Element, k: u32) -> Element {
        self.inner.sig.pow(a, k)
    }

    /// The differential, refusing elements whose image would leave the trusted range.
    pub fn differentiate(&self, a: &Element) -> Result<Element> {
        self.check_element(a)?;
        let t = self.truncation();
        if !t.quotient {
            let limit = t.degree.saturating_sub(1);
            for (m, _) in a.terms() {
                let deg = self.monomial_degree(m);
                if deg > limit {
                    return Err(Error::BeyondTruncation { degree: deg, limit });
                }
            }
        }
        Ok(self.d(a))
    }

    pub fn d(&self, a: &Element) -> Element {
        let mut out = Element::zero();
        for (m, c) in a.terms() {
            out += &self.d_monomial(m).scaled(c);
        }
        out
    }

    fn d_monomial(&self, m: &Monomial) -> Element {
        let sig = &self.inner.sig;
        let n = sig.len();
        let mut out = Element::zero();
        for i in 0..n {
            let e = m.0[i];
            if e == 0 || self.inner.differential[i].is_zero() {
                continue;
            }
            let mut prefix = Monomial::one(n);
            prefix.0[..i].copy_from_slice(&m.0[..i]);
            let mut suffix = Monomial::one(n);
            suffix.0[i + 1..].copy_from_slice(&m.0[i + 1..]);
            let mut rest = Monomial::one(n);
            rest.0[i] = e - 1;
            let sign = if sig.mono_degree(&prefix) % 2 == 1 { -1 } else { 1 };
            let coeff = Rational::from_integer((i64::from(e) * sign).into());
            let inner = sig.mul(
                &Element::from_monomial(rest, coeff),
                &self.inner.differential[i],
            );
            let left = sig.mul(&Element::from_monomial(prefix, Rational::one()), &inner);
            out += &sig.mul(&left, &Element::from_monomial(suffix, Rational::one()));
        }
        out
    }

    /// Canonical monomials of degree `n`.
    pub fn basis(&self, n: u32) -> Result<&[Monomial]> {
        let t = self.truncation();
        if n > t.degree {
            if t.quotient {
                return Ok(&[]);
            }
            return Err(Error::BeyondTruncation {
                degree: n,
                limit: t.degree,
            });
        }
        Ok(&self.inner.bases[n as usize])
    }

    pub(crate) fn basis_raw(&self, n: u32) -> &[Monomial] {
        self.inner.bases.get(n as usize).map_or(&[], |b| b.as_slice())
    }

    /// Coordinates of the degree-`n` part of `a`.
    pub fn coords(&self, a: &Element, n: u32) -> SparseVec {
        let Some(index) = self.inner.index.get(n as usize) else {
            return SparseVec::new();
        };
        let mut v = SparseVec::new();
        for (m, c) in a.terms() {
            if self.monomial_degree(m) != n {
                continue;
            }
            let i = index.get(m).expect("monomial outside the precomputed range");
            v.add_entry(*i, c);
        }
        v
    }

    pub fn element_from_coords(&self, v: &SparseVec, n: u32) -> Element {
        let basis = self.basis_raw(n);
        let mut out = Element::zero();
        for (i, c) in v.iter() {
            out.add_term(basis[i].clone(), c.clone());
        }
        out
    }

    fn block(&self, n: u32, weight: i64) -> &[usize] {
        self.inner
            .weight_blocks
            .get(n as usize)
            .and_then(|b| b.get(&weight))
            .map_or(&[], |v| v.as_slice())
    }

    /// Canonical monomials of degree `n` and weight `weight`.
    pub fn weighted_basis(&self, n: u32, weight: i64) -> Vec<Monomial> {
        let basis = self.basis_raw(n);
        self.block(n, weight).iter().map(|&i| basis[i].clone()).collect()
    }

    /// Coordinates of the `(n, weight)` part of `a` in the block basis.
    pub fn block_coords(&self, a: &Element, n: u32, weight: i64) -> SparseVec {
        let full = self.coords(a, n);
        let block = self.block(n, weight);
        SparseVec::from_entries(
            full.iter()
                .filter_map(|(i, c)| block.binary_search(&i).ok().map(|p| (p, c.clone()))),
        )
    }

    pub fn element_from_block(&self, v: &SparseVec, n: u32, weight: i64) -> Element {
        let basis = self.basis_raw(n);
        let block = self.block(n, weight);
        let mut out = Element::zero();
        for (i, c) in v.iter() {
            out.add_term(basis[block[i]].clone(), c.clone());
        }
        out
    }

    /// Cohomology in degrees `0..=up_to`, refined by weight when the presentation is weighted.
    pub fn cohomology(&self, up_to: u32) -> Result<GradedReport<Element>> {
        if self.is_weighted() {
            let r = complex::weighted_report(self, up_to)?;
            Ok(r.map(|n, (p, v)| self.element_from_block(&v, n, p)))
        } else {
            let r = complex::report(self, up_to)?;
            Ok(r.map(|n, v| self.element_from_coords(&v, n)))
        }
    }

    /// Same presentation with the given weights (canonical generator order).
    pub fn with_weights(&self, weights: &[i64]) -> Result<Cdga> {
        let gens = self
            .generators()
            .iter()
            .zip(weights)
            .map(|(g, &w)| Generator::weighted(g.name.clone(), g.degree, w))
            .collect();
        Self::assemble(
            Signature {
                generators: gens,
                truncation: self.truncation(),
            },
            self.inner.differential.clone(),
        )
    }

    /// Same presentation without weights.
    pub fn unweighted(&self) -> Cdga {
        let gens = self
            .generators()
            .iter()
            .map(|g| Generator::new(g.name.clone(), g.degree))
            .collect();
        Self::assemble(
            Signature {
                generators: gens,
                truncation: self.truncation(),
            },
            self.inner.differential.clone(),
        )
        .expect("dropping weights keeps a valid presentation")
    }

    pub fn with_truncation(&self, truncation: Truncation) -> Result<Cdga> {
        if truncation.degree == 0 {
            return Err(Error::ZeroTruncation);
        }
        Self::assemble(
            Signature {
                generators: self.generators().to_vec(),
                truncation,
            },
            self.inner.differential.clone(),
        )
    }

    /// Re-express an element of `other` over this presentation, matching generators by name.
    pub fn transfer_from(&self, other: &Cdga, a: &Element) -> Result<Element> {
        let mut map = Vec::with_capacity(other.num_generators());
        for g in other.generators() {
            let i = self
                .generator_index(&g.name)
                .ok_or_else(|| Error::UnknownGenerator(g.name.clone()))?;
            map.push(i);
        }
        let mut out = Element::zero();
        for (m, c) in a.terms() {
            let mut ex = alloc::vec![0; self.num_generators()];
            for (i, &e) in m.0.iter().enumerate() {
                ex[map[i]] = e;
            }
            out.add_term(Monomial(ex), c.clone());
        }
        Ok(out)
    }
}

fn check_generators(gens: &[Generator]) -> Result<()> {
    for (i, g) in gens.iter().enumerate() {
        if gens[..i].iter().any(|h| h.name == g.name) {
            return Err(Error::DuplicateGenerator(g.name.clone()));
        }
        if g.degree == 0 {
            return Err(Error::DegreeZeroGenerator(g.name.clone()));
        }
    }
    let weighted = gens.iter().filter(|g| g.weight.is_some()).count();
    if weighted != 0 && weighted != gens.len() {
        let g = gens.iter().find(|g| g.weight.is_none()).unwrap();
        return Err(Error::PartialWeights(g.name.clone()));
    }
    Ok(())
}

impl Cochains for Cdga {
    fn dim(&self, n: u32) -> usize {
        self.basis_raw(n).len()
    }

    fn d_matrix(&self, n: u32) -> Vec<SparseVec> {
        self.basis_raw(n)
            .iter()
            .map(|m| self.coords(&self.d_monomial(m), n + 1))
            .collect()
    }

    fn cohomology_limit(&self) -> Option<u32> {
        self.truncation().cohomology_limit()
    }
}

impl WeightedCochains for Cdga {
    fn weights_in(&self, n: u32) -> Vec<i64> {
        self.inner
            .weight_blocks
            .get(n as usize)
            .map(|b| b.keys().copied().collect())
            .unwrap_or_default()
    }

    fn block_dim(&self, n: u32, weight: i64) -> usize {
        self.block(n, weight).len()
    }

    fn block_d_matrix(&self, n: u32, weight: i64) -> Vec<SparseVec> {
        let basis = self.basis_raw(n);
        self.block(n, weight)
            .iter()
            .map(|&i| self.block_coords(&self.d_monomial(&basis[i]), n + 1, weight))
            .collect()
    }

    fn weighted_limit(&self) -> Option<u32> {
        self.cohomology_limit()
    }
}

impl DgAlgebra for Cdga {
    type Elem = Element;

    fn zero(&self) -> Element {
        Element::zero()
    }
    fn is_zero(&self, a: &Element) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &Element, b: &Element) -> Element {
        a + b
    }
    fn scale(&self, a: &Element, c: &Rational) -> Element {
        a.scaled(c)
    }
    fn product(&self, a: &Element, b: &Element) -> Element {
        self.mul(a, b)
    }
    fn derivative(&self, a: &Element) -> Element {
        self.d(a)
    }
    fn to_coords(&self, a: &Element, n: u32) -> SparseVec {
        self.coords(a, n)
    }
    fn from_coords(&self, v: &SparseVec, n: u32) -> Element {
        self.element_from_coords(v, n)
    }
    fn degree_of(&self, a: &Element) -> Option<u32> {
        self.degree(a)
    }
}

/// Name-based construction of a [`Cdga`].
///
/// ```
/// use thomforge_core::Cdga;
/// let cp2 = Cdga::builder(12)
///     .generator("x", 2)
///     .generator("y", 5)
///     .differential("y", "x^3")
///     .build()
///     .unwrap();
/// assert_eq!(cp2.cohomology(6).unwrap().betti(), vec![1, 0, 1, 0, 1, 0, 0]);
/// ```
#[derive(Clone, Debug)]
pub struct CdgaBuilder {
    generators: Vec<Generator>,
    differentials: Vec<(String, DiffSource)>,
    truncation: Truncation,
}

#[derive(Clone, Debug)]
enum DiffSource {
    Text(String),
    Expr(Expr),
}

impl CdgaBuilder {
    pub fn generator(mut self, name: &str, degree: u32) -> Self {
        self.generators.push(Generator::new(name, degree));
        self
    }

    pub fn weighted_generator(mut self, name: &str, degree: u32, weight: i64) -> Self {
        self.generators.push(Generator::weighted(name, degree, weight));
        self
    }

    pub fn push_generator(mut self, g: Generator) -> Self {
        self.generators.push(g);
        self
    }

    pub fn differential(mut self, name: &str, expr: &str) -> Self {
        self.differentials
            .push((name.to_string(), DiffSource::Text(expr.to_string())));
        self
    }

    pub fn differential_expr(mut self, name: &str, expr: Expr) -> Self {
        self.differentials.push((name.to_string(), DiffSource::Expr(expr)));
        self
    }

    /// Read the truncation as a quotient by everything above it.
    pub fn quotient(mut self) -> Self {
        self.truncation.quotient = true;
        self
    }

    pub fn truncation(mut self, t: Truncation) -> Self {
        self.truncation = t;
        self
    }

    pub fn build(self) -> Result<Cdga> {
        if self.truncation.degree == 0 {
            return Err(Error::ZeroTruncation);
        }
        check_generators(&self.generators)?;
        let sig = Signature {
            generators: self.generators.clone(),
            truncation: Truncation::cutoff(u32::MAX),
        };
        let mut diffs = alloc::vec![Element::zero(); self.generators.len()];
        let mut seen = alloc::vec![false; self.generators.len()];
        for (name, src) in &self.differentials {
            let i = sig
                .index_of(name)
                .ok_or_else(|| Error::UnknownGenerator(name.clone()))?;
            if seen[i] {
                return Err(Error::DuplicateGenerator(name.clone()));
            }
            seen[i] = true;
            let expr = match src {
                DiffSource::Text(t) => Expr::parse(t)?,
                DiffSource::Expr(e) => e.clone(),
            };
            let expected = self.generators[i].degree + 1;
            let degree_of = |n: &str| sig.index_of(n).map(|k| sig.generators[k].degree);
            if let Some(found) = expr
                .term_degrees(&degree_of)?
                .into_iter()
                .find(|&d| d != expected)
            {
                return Err(Error::DegreeMismatch {
                    generator: name.clone(),
                    expected,
                    found,
                });
            }
            diffs[i] = sig.eval(&expr)?;
        }
        Cdga::new(self.generators, diffs, self.truncation)
    }
}

/// Coefficient helper for tests and callers: `n/d` as a rational.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

#[allow(dead_code)]
fn _assert_send_sync() {
    fn is<T: Send + Sync>() {}
    is::<Cdga>();
    is::<Element>();
    let _ = Rational::zero();
}
