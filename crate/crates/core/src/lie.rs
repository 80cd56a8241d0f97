//! Free graded Lie algebras over ℚ and differentials on them.
//!
//! Elements are stored through their expansion in the tensor algebra, where the
//! bracket is the graded commutator `[u, v] = uv - (-1)^{|u||v|} vu`. The free
//! Lie algebra is the sub-Lie algebra generated by the letters, so this is a
//! faithful canonical form. Degrees are homological and positive.
//!
//! The basis in each degree is the standard bracketing `P_w` of the Lyndon
//! words `w` of that degree, together with `[P_u, P_u]` for Lyndon words `u` of
//! odd degree.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::ops::{Add, Neg, Sub};
use num_traits::{One, Signed, Zero};

use crate::algebra::fmt_rational;
use crate::linalg::{self, SparseVec};
use crate::{Error, Rational, Result};

/// A linear combination of words in the generators.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LieElem {
    terms: BTreeMap<Vec<usize>, Rational>,
}

impl LieElem {
    pub fn zero() -> Self {
        LieElem::default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<usize>, &Rational)> + '_ {
        self.terms.iter()
    }

    pub(crate) fn add_term(&mut self, w: Vec<usize>, c: &Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(w.clone()).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&w);
        }
    }

    pub fn scaled(&self, c: &Rational) -> LieElem {
        let mut out = LieElem::zero();
        for (w, x) in &self.terms {
            out.add_term(w.clone(), &(x * c));
        }
        out
    }

    /// Largest word length occurring; a quadratic element has only length 2.
    pub fn lengths(&self) -> impl Iterator<Item = usize> + '_ {
        self.terms.keys().map(Vec::len)
    }

    pub fn letters(&self) -> impl Iterator<Item = usize> + '_ {
        self.terms.keys().flat_map(|w| w.iter().copied())
    }
}

impl Add<&LieElem> for &LieElem {
    type Output = LieElem;
    fn add(self, rhs: &LieElem) -> LieElem {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), c);
        }
        out
    }
}

impl Neg for &LieElem {
    type Output = LieElem;
    fn neg(self) -> LieElem {
        self.scaled(&-Rational::one())
    }
}

impl Sub<&LieElem> for &LieElem {
    type Output = LieElem;
    fn sub(self, rhs: &LieElem) -> LieElem {
        self + &(-rhs)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieGenerator {
    pub name: String,
    pub degree: u32,
}

/// The free graded Lie algebra on an ordered set of generators.
///
/// Generators are sorted by degree, keeping declaration order within a degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeLie {
    generators: Vec<LieGenerator>,
}

/// A basis element together with a bracket label such as `[v,[v,w]]`.
#[derive(Clone, Debug, PartialEq)]
pub struct BasisBracket {
    pub label: String,
    pub element: LieElem,
}

impl FreeLie {
    pub fn new(generators: Vec<(String, u32)>) -> Result<FreeLie> {
        let mut gens: Vec<LieGenerator> = Vec::with_capacity(generators.len());
        for (name, degree) in generators {
            if degree == 0 {
                return Err(Error::LieDegree(name));
            }
            if gens.iter().any(|g| g.name == name) {
                return Err(Error::DuplicateGenerator(name));
            }
            gens.push(LieGenerator { name, degree });
        }
        gens.sort_by_key(|g| g.degree);
        Ok(FreeLie { generators: gens })
    }

    pub fn generators(&self) -> &[LieGenerator] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.name == name)
    }

    pub fn gen(&self, i: usize) -> LieElem {
        let mut e = LieElem::zero();
        e.add_term(alloc::vec![i], &Rational::one());
        e
    }

    pub fn generator(&self, name: &str) -> Result<LieElem> {
        let i = self
            .index_of(name)
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))?;
        Ok(self.gen(i))
    }

    pub fn word_degree(&self, w: &[usize]) -> u32 {
        w.iter().map(|&i| self.generators[i].degree).sum()
    }

    /// Degree of a nonzero homogeneous element.
    pub fn degree(&self, a: &LieElem) -> Option<u32> {
        let mut it = a.terms.keys().map(|w| self.word_degree(w));
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    pub fn bracket(&self, a: &LieElem, b: &LieElem) -> LieElem {
        let mut out = LieElem::zero();
        for (u, cu) in &a.terms {
            let du = self.word_degree(u);
            for (v, cv) in &b.terms {
                let dv = self.word_degree(v);
                let c = cu * cv;
                let mut uv = u.clone();
                uv.extend_from_slice(v);
                out.add_term(uv, &c);
                let mut vu = v.clone();
                vu.extend_from_slice(u);
                if (du * dv) % 2 == 1 {
                    out.add_term(vu, &c);
                } else {
                    out.add_term(vu, &-c);
                }
            }
        }
        out
    }

    /// Lyndon words of total degree `d`, in lexicographic order.
    pub fn lyndon_words(&self, d: u32) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        self.words(d, &mut cur, &mut out);
        out.retain(|w| is_lyndon(w));
        out
    }

    fn words(&self, left: u32, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            if !cur.is_empty() {
                out.push(cur.clone());
            }
            return;
        }
        for (i, g) in self.generators.iter().enumerate() {
            if g.degree <= left {
                cur.push(i);
                self.words(left - g.degree, cur, out);
                cur.pop();
            }
        }
    }

    /// Standard bracketing of a Lyndon word.
    pub fn standard_bracket(&self, w: &[usize]) -> (String, LieElem) {
        if w.len() == 1 {
            return (self.generators[w[0]].name.clone(), self.gen(w[0]));
        }
        let split = (1..w.len()).find(|&k| is_lyndon(&w[k..])).unwrap();
        let (lu, u) = self.standard_bracket(&w[..split]);
        let (lv, v) = self.standard_bracket(&w[split..]);
        (format!("[{lu},{lv}]"), self.bracket(&u, &v))
    }

    /// Basis of the degree-`d` part.
    pub fn basis(&self, d: u32) -> Vec<BasisBracket> {
        let mut out: Vec<BasisBracket> = self
            .lyndon_words(d)
            .iter()
            .map(|w| {
                let (label, element) = self.standard_bracket(w);
                BasisBracket { label, element }
            })
            .collect();
        if d.is_multiple_of(2) && !(d / 2).is_multiple_of(2) {
            for w in self.lyndon_words(d / 2) {
                let (l, p) = self.standard_bracket(&w);
                out.push(BasisBracket {
                    label: format!("[{l},{l}]"),
                    element: self.bracket(&p, &p),
                });
            }
        }
        out
    }

    /// Coordinates of the degree-`d` part of `a` in [`basis`](Self::basis)`(d)`.
    pub fn coordinates(&self, a: &LieElem, d: u32) -> Option<SparseVec> {
        let basis = self.basis(d);
        let mut index: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
        let vec_of = |e: &LieElem, index: &mut BTreeMap<Vec<usize>, usize>| {
            let mut v = SparseVec::new();
            for (w, c) in e.terms() {
                if self.word_degree(w) != d {
                    continue;
                }
                let n = index.len();
                let i = *index.entry(w.clone()).or_insert(n);
                v.add_entry(i, c);
            }
            v
        };
        let cols: Vec<SparseVec> = basis.iter().map(|b| vec_of(&b.element, &mut index)).collect();
        let target = vec_of(a, &mut index);
        linalg::solve(&cols, &target)
    }

    /// Render in basis brackets, lowest degree first.
    pub fn display(&self, a: &LieElem) -> String {
        if a.is_zero() {
            return "0".to_string();
        }
        let mut degrees: Vec<u32> = a.terms.keys().map(|w| self.word_degree(w)).collect();
        degrees.sort_unstable();
        degrees.dedup();
        let mut s = String::new();
        for d in degrees {
            let basis = self.basis(d);
            let Some(coords) = self.coordinates(a, d) else {
                return "<not a Lie element>".to_string();
            };
            for (i, c) in coords.iter() {
                let neg = c.is_negative();
                if s.is_empty() {
                    if neg {
                        s.push('-');
                    }
                } else {
                    s.push_str(if neg { " - " } else { " + " });
                }
                let abs = c.abs();
                if !abs.is_one() {
                    s.push_str(&fmt_rational(&abs));
                    s.push('*');
                }
                s.push_str(&basis[i].label);
            }
        }
        s
    }
}

/// `w` is strictly smaller than each of its proper suffixes.
pub fn is_lyndon(w: &[usize]) -> bool {
    !w.is_empty() && (1..w.len()).all(|k| w < &w[k..])
}

/// A free graded Lie algebra with a differential of degree `-1` given on generators.
#[derive(Clone, Debug, PartialEq)]
pub struct DglPresentation {
    lie: FreeLie,
    differential: Vec<LieElem>,
}

impl DglPresentation {
    /// `differential` is indexed like `lie.generators()`; missing entries are zero.
    pub fn new(lie: FreeLie, mut differential: Vec<LieElem>) -> Result<DglPresentation> {
        differential.resize(lie.len(), LieElem::zero());
        for (g, d) in lie.generators().iter().zip(&differential) {
            if d.terms().any(|(w, _)| lie.word_degree(w) + 1 != g.degree) {
                return Err(Error::DglDegree {
                    generator: g.name.clone(),
                });
            }
        }
        Ok(DglPresentation { lie, differential })
    }

    pub fn lie(&self) -> &FreeLie {
        &self.lie
    }

    pub fn generator_differential(&self, i: usize) -> &LieElem {
        &self.differential[i]
    }

    /// The derivation extending the generator differential.
    pub fn d(&self, a: &LieElem) -> LieElem {
        let mut out = LieElem::zero();
        for (w, c) in a.terms() {
            let mut prefix_deg = 0;
            for (k, &letter) in w.iter().enumerate() {
                let sign = if prefix_deg % 2 == 1 { -c.clone() } else { c.clone() };
                for (dw, dc) in self.differential[letter].terms() {
                    let mut word = w[..k].to_vec();
                    word.extend_from_slice(dw);
                    word.extend_from_slice(&w[k + 1..]);
                    out.add_term(word, &(dc * &sign));
                }
                prefix_deg += self.lie.generators[letter].degree;
            }
        }
        out
    }

    pub fn is_zero_differential(&self) -> bool {
        self.differential.iter().all(LieElem::is_zero)
    }

    pub fn check_quadratic(&self) -> Result<()> {
        for (g, d) in self.lie.generators().iter().zip(&self.differential) {
            if d.lengths().any(|l| l != 2) {
                return Err(Error::NonQuadratic(g.name.clone()));
            }
        }
        Ok(())
    }

    /// `d(v_k)` only involves generators listed before `v_k`.
    pub fn check_order_preserving(&self) -> Result<()> {
        for (k, (g, d)) in self.lie.generators().iter().zip(&self.differential).enumerate() {
            if d.letters().any(|i| i >= k) {
                return Err(Error::NotOrderPreserving(g.name.clone()));
            }
        }
        Ok(())
    }

    pub fn display_differential(&self) -> Vec<(String, String)> {
        self.lie
            .generators()
            .iter()
            .zip(&self.differential)
            .map(|(g, d)| (g.name.clone(), self.lie.display(d)))
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DglReport {
    pub generators_checked: usize,
    pub leibniz_pairs_checked: usize,
}

/// Check `d² = 0` on generators and the Leibniz rule on pairs of basis
/// brackets whose degrees add up to at most `up_to`.
pub fn validate_dgl(dgl: &DglPresentation, up_to: u32) -> Result<DglReport> {
    let lie = dgl.lie();
    for (i, g) in lie.generators().iter().enumerate() {
        let dd = dgl.d(dgl.generator_differential(i));
        if !dd.is_zero() {
            return Err(Error::DglD2Nonzero {
                generator: g.name.clone(),
                residual: lie.display(&dd),
            });
        }
    }
    let bases: Vec<Vec<BasisBracket>> = (0..=up_to).map(|d| lie.basis(d)).collect();
    let mut pairs = 0;
    for p in 1..=up_to {
        for q in 1..=up_to.saturating_sub(p) {
            for a in &bases[p as usize] {
                for b in &bases[q as usize] {
                    pairs += 1;
                    let lhs = dgl.d(&lie.bracket(&a.element, &b.element));
                    let first = lie.bracket(&dgl.d(&a.element), &b.element);
                    let second = lie.bracket(&a.element, &dgl.d(&b.element));
                    let rhs = if p % 2 == 1 { &first - &second } else { &first + &second };
                    if lhs != rhs {
                        return Err(Error::DglD2Nonzero {
                            generator: format!("{}, {}", a.label, b.label),
                            residual: lie.display(&(&lhs - &rhs)),
                        });
                    }
                }
            }
        }
    }
    Ok(DglReport {
        generators_checked: lie.len(),
        leibniz_pairs_checked: pairs,
    })
}
