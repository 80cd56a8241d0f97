//! Mixed-Hodge bookkeeping through split bigradings.
//!
//! A splitting assigns each generator a type `(i, j)`; monomials add types and
//! the weight of a type is `i + j`. The Hodge filtration is tracked through the
//! first index only.

use alloc::string::String;
use alloc::vec::Vec;

use crate::algebra::{Cdga, Element, Monomial};
use crate::thom::{self, Suspended, ThomModel};
use crate::weight;
use crate::{Error, Result};

pub type HodgeType = (i64, i64);

/// A presentation whose generators carry Hodge types preserved by `d`.
#[derive(Clone, Debug, PartialEq)]
pub struct SplitMixedHodgeCdga {
    cdga: Cdga,
    types: Vec<HodgeType>,
}

impl SplitMixedHodgeCdga {
    /// `types` is keyed by generator name and must cover every generator.
    pub fn new(cdga: &Cdga, types: &[(&str, HodgeType)]) -> Result<SplitMixedHodgeCdga> {
        let mut slots = alloc::vec![None; cdga.num_generators()];
        for (name, t) in types {
            let i = cdga
                .generator_index(name)
                .ok_or_else(|| Error::UnknownGenerator((*name).into()))?;
            slots[i] = Some(*t);
        }
        let types = cdga
            .generators()
            .iter()
            .zip(slots)
            .map(|(g, t)| t.ok_or_else(|| Error::BigradingViolation(g.name.clone())))
            .collect::<Result<Vec<_>>>()?;
        Self::from_types(cdga, types)
    }

    /// `types` is indexed like `cdga.generators()`.
    pub fn from_types(cdga: &Cdga, types: Vec<HodgeType>) -> Result<SplitMixedHodgeCdga> {
        if types.len() != cdga.num_generators() {
            return Err(Error::MorphismArity);
        }
        let s = SplitMixedHodgeCdga {
            cdga: cdga.unweighted(),
            types,
        };
        for (i, g) in s.cdga.generators().iter().enumerate() {
            let dg = s.cdga.generator_differential(i);
            if dg.terms().any(|(m, _)| s.monomial_type(m) != s.types[i]) {
                return Err(Error::BigradingViolation(g.name.clone()));
            }
        }
        Ok(s)
    }

    pub fn cdga(&self) -> &Cdga {
        &self.cdga
    }

    pub fn types(&self) -> &[HodgeType] {
        &self.types
    }

    pub fn type_of(&self, name: &str) -> Option<HodgeType> {
        Some(self.types[self.cdga.generator_index(name)?])
    }

    pub fn monomial_type(&self, m: &Monomial) -> HodgeType {
        m.exponents()
            .iter()
            .zip(&self.types)
            .fold((0, 0), |(a, b), (&e, &(i, j))| (a + i64::from(e) * i, b + i64::from(e) * j))
    }

    /// Common type of all monomials of a nonzero element.
    pub fn bidegree(&self, x: &Element) -> Option<HodgeType> {
        let mut it = x.terms().map(|(m, _)| self.monomial_type(m));
        let first = it.next()?;
        it.all(|t| t == first).then_some(first)
    }

    /// Every generator satisfies `i + j >= degree`.
    pub fn satisfies_smooth_bound(&self) -> bool {
        self.cdga
            .generators()
            .iter()
            .zip(&self.types)
            .all(|(g, &(i, j))| i + j >= i64::from(g.degree))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SplitWeights {
    pub cdga: Cdga,
    pub positive: bool,
    pub smooth_bound: bool,
}

/// The weight decomposition `A_p = sum_{i+j=p} I^{i,j}`.
pub fn weights_from_splitting(s: &SplitMixedHodgeCdga) -> Result<SplitWeights> {
    let ws: Vec<i64> = s.types.iter().map(|(i, j)| i + j).collect();
    let cdga = s.cdga.with_weights(&ws)?;
    Ok(SplitWeights {
        positive: weight::is_positive(&cdga),
        smooth_bound: s.satisfies_smooth_bound(),
        cdga,
    })
}

/// Every monomial of `e` has type `(k, k)`.
pub fn check_euler_purity(s: &SplitMixedHodgeCdga, e: &Element, k: i64) -> bool {
    e.terms().all(|(m, _)| s.monomial_type(m) == (k, k))
}

/// The Thom model of a rank-`k` complex bundle with the `(k, k)` Tate twist.
#[derive(Clone, Debug, PartialEq)]
pub struct FilteredThomModel {
    split: SplitMixedHodgeCdga,
    model: ThomModel,
    k: i64,
}

pub fn thom_mhs(s: &SplitMixedHodgeCdga, e: &Element, k: u32) -> Result<FilteredThomModel> {
    let kk = i64::from(k);
    if !check_euler_purity(s, e, kk) {
        return Err(Error::EulerNotPure { k: kk });
    }
    let model = thom::thom_model(&s.cdga, e, 2 * k)?;
    Ok(FilteredThomModel {
        split: s.clone(),
        model,
        k: kk,
    })
}

impl FilteredThomModel {
    pub fn model(&self) -> &ThomModel {
        &self.model
    }

    pub fn splitting(&self) -> &SplitMixedHodgeCdga {
        &self.split
    }

    pub fn twist(&self) -> i64 {
        self.k
    }

    pub fn bidegree(&self, w: &Suspended) -> Option<HodgeType> {
        let (i, j) = self.split.bidegree(w.underlying())?;
        Some((i + self.k, j + self.k))
    }

    pub fn basis_types(&self, n: u32) -> Result<Vec<HodgeType>> {
        Ok(self
            .model
            .basis(n)?
            .iter()
            .map(|w| self.bidegree(w).expect("basis monomial"))
            .collect())
    }

    /// Weights `i + j` of the degree-`n` basis, in basis order.
    pub fn basis_weights(&self, n: u32) -> Result<Vec<i64>> {
        Ok(self.basis_types(n)?.into_iter().map(|(i, j)| i + j).collect())
    }

    /// Basis of `W_p M^n`.
    pub fn weight_filtration(&self, n: u32, p: i64) -> Result<Vec<Suspended>> {
        self.filtered(n, |(i, j)| i + j <= p)
    }

    /// Basis of `F^p M^n`.
    pub fn hodge_filtration(&self, n: u32, p: i64) -> Result<Vec<Suspended>> {
        self.filtered(n, |(i, _)| i >= p)
    }

    fn filtered(&self, n: u32, keep: impl Fn(HodgeType) -> bool) -> Result<Vec<Suspended>> {
        Ok(self
            .model
            .basis(n)?
            .into_iter()
            .filter(|w| keep(self.bidegree(w).expect("basis monomial")))
            .collect())
    }

    /// Check that `d`, products and the relative cup product respect the
    /// shifted bigrading on basis elements up to degree `up_to`.
    pub fn validate(&self, up_to: u32) -> Result<()> {
        let base = self.model.base();
        let bases = (0..=up_to).map(|n| self.model.basis(n)).collect::<Result<Vec<_>>>()?;
        for (n, basis) in bases.iter().enumerate() {
            for w in basis {
                let t = self.bidegree(w).expect("basis monomial");
                let dw = self.model.d(w);
                if !dw.is_zero() && self.bidegree(&dw) != Some(t) {
                    return Err(Error::BigradingViolation(self.model.display(w)));
                }
                for (m, other) in bases.iter().enumerate().skip(n) {
                    if n + m > up_to as usize {
                        break;
                    }
                    for v in other {
                        let s = self.bidegree(v).expect("basis monomial");
                        let p = self.model.mul(w, v);
                        if !p.is_zero() && self.bidegree(&p) != Some((t.0 + s.0, t.1 + s.1)) {
                            return Err(Error::BigradingViolation(self.model.display(w)));
                        }
                    }
                }
            }
        }
        for i in 0..base.num_generators() {
            let one = self.model.wrap(base.unit());
            let g = self.model.relative_cup(&base.gen(i), &one);
            let (a, b) = self.split.types[i];
            if self.bidegree(&g) != Some((a + self.k, b + self.k)) {
                return Err(Error::BigradingViolation(base.generators()[i].name.clone()));
            }
        }
        Ok(())
    }

    /// Every basis element up to `up_to` has weight at least its degree.
    pub fn satisfies_smooth_bound(&self, up_to: u32) -> Result<bool> {
        for n in 0..=up_to {
            if self.basis_weights(n)?.iter().any(|&w| w < i64::from(n)) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// The weighted Thom model obtained from the splitting weights.
    pub fn weighted(&self) -> Result<ThomModel> {
        let w = weights_from_splitting(&self.split)?;
        thom::thom_weights(&w.cdga, self.model.euler(), self.model.rank(), Some(2 * self.k))
    }
}

/// Compare the twisted weights with `thom_weights(weights_from_splitting(S), e, 2k)`
/// degree by degree; returns the first disagreeing degree.
pub fn compare_with_thom_weights(f: &FilteredThomModel, up_to: u32) -> Result<Option<u32>> {
    let w = f.weighted()?;
    for n in 0..=up_to {
        if w.basis_weights(n) != Some(f.basis_weights(n)?) {
            return Ok(Some(n));
        }
    }
    Ok(None)
}

pub fn describe_type((i, j): HodgeType) -> String {
    alloc::format!("({i},{j})")
}
