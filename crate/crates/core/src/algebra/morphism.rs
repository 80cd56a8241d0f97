use alloc::vec::Vec;

use super::{Cdga, Element};
use crate::complex::{self, QuasiIsoReport};
use crate::linalg::SparseVec;
use crate::{Error, Result};

/// An algebra map between presentations, given on generators.
#[derive(Clone, Debug, PartialEq)]
pub struct CdgaMorphism {
    source: Cdga,
    target: Cdga,
    images: Vec<Element>,
}

impl CdgaMorphism {
    /// `images[i]` is the image of source generator `i` (canonical order), written in the target.
    pub fn new(source: &Cdga, target: &Cdga, images: Vec<Element>) -> Result<Self> {
        if images.len() != source.num_generators() {
            return Err(Error::MorphismArity);
        }
        let both_weighted = source.is_weighted() && target.is_weighted();
        for (g, img) in source.generators().iter().zip(&images) {
            target.check_element(img)?;
            for (m, _) in img.terms() {
                let wrong_weight = both_weighted && target.monomial_weight(m) != g.weight;
                if target.monomial_degree(m) != g.degree || wrong_weight {
                    return Err(Error::MorphismGrading {
                        generator: g.name.clone(),
                    });
                }
            }
        }
        let f = CdgaMorphism {
            source: source.clone(),
            target: target.clone(),
            images,
        };
        for (i, g) in source.generators().iter().enumerate() {
            let lhs = f.apply(source.generator_differential(i));
            let rhs = target.d(&f.images[i]);
            let residual = &lhs - &rhs;
            if !residual.is_zero() {
                return Err(Error::MorphismNotChainMap {
                    generator: g.name.clone(),
                    residual: target.display(&residual),
                });
            }
        }
        Ok(f)
    }

    /// Images given as `(source generator, target expression)` pairs; missing generators map to zero.
    pub fn from_exprs(source: &Cdga, target: &Cdga, images: &[(&str, &str)]) -> Result<Self> {
        let mut out = alloc::vec![Element::zero(); source.num_generators()];
        for (name, expr) in images {
            let i = source
                .generator_index(name)
                .ok_or_else(|| Error::UnknownGenerator((*name).into()))?;
            out[i] = target.parse_element(expr)?;
        }
        Self::new(source, target, out)
    }

    pub fn identity(a: &Cdga) -> Self {
        let images = (0..a.num_generators()).map(|i| a.gen(i)).collect();
        CdgaMorphism {
            source: a.clone(),
            target: a.clone(),
            images,
        }
    }

    pub fn source(&self) -> &Cdga {
        &self.source
    }

    pub fn target(&self) -> &Cdga {
        &self.target
    }

    pub fn images(&self) -> &[Element] {
        &self.images
    }

    pub fn apply(&self, a: &Element) -> Element {
        let t = &self.target;
        let mut out = Element::zero();
        for (m, c) in a.terms() {
            let mut img = t.unit().scaled(c);
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    img = t.mul(&img, &t.pow(&self.images[i], e));
                }
                if img.is_zero() {
                    break;
                }
            }
            out += &img;
        }
        out
    }

    /// Images of the degree-`n` source basis in target coordinates.
    pub fn matrix(&self, n: u32) -> Vec<SparseVec> {
        self.source
            .basis_raw(n)
            .iter()
            .map(|m| {
                let e = Element::from_monomial(m.clone(), crate::Rational::from_integer(1.into()));
                self.target.coords(&self.apply(&e), n)
            })
            .collect()
    }

    pub fn compose(&self, after: &CdgaMorphism) -> Result<CdgaMorphism> {
        if after.source != self.target {
            return Err(Error::MixedPresentations);
        }
        let images = self.images.iter().map(|x| after.apply(x)).collect();
        Ok(CdgaMorphism {
            source: self.source.clone(),
            target: after.target.clone(),
            images,
        })
    }

    /// Ranks of the induced maps on `H^k` for `k <= up_to`.
    pub fn quasi_iso_report(&self, up_to: u32) -> Result<QuasiIsoReport> {
        complex::quasi_iso_report(&self.source, &self.target, |n| self.matrix(n), up_to)
    }

    pub fn is_quasi_iso(&self, up_to: u32) -> Result<bool> {
        Ok(self.quasi_iso_report(up_to)?.is_quasi_iso())
    }
}
