use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::ops::{Add, AddAssign, Neg, Sub};
use num_traits::{One, Zero};

use crate::Rational;

/// Exponent vector over the generators of a presentation, in canonical order.
///
/// Odd generators only ever carry exponent 0 or 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(pub(crate) Vec<u32>);

impl Monomial {
    pub fn one(generators: usize) -> Self {
        Monomial(alloc::vec![0; generators])
    }

    pub fn generator(generators: usize, index: usize) -> Self {
        let mut m = Monomial::one(generators);
        m.0[index] = 1;
        m
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn exponent(&self, index: usize) -> u32 {
        self.0[index]
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// Number of generator factors counted with multiplicity.
    pub fn length(&self) -> u32 {
        self.0.iter().sum()
    }
}

/// A finite rational combination of monomials; zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Element {
    terms: BTreeMap<Monomial, Rational>,
}

impl Element {
    pub fn zero() -> Self {
        Element::default()
    }

    pub fn from_monomial(m: Monomial, c: Rational) -> Self {
        let mut e = Element::zero();
        e.add_term(m, c);
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> + '_ {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            alloc::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            alloc::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scaled(&self, c: &Rational) -> Element {
        if c.is_zero() {
            return Element::zero();
        }
        Element {
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    /// Keep only the terms satisfying `keep`.
    pub fn filtered<F: FnMut(&Monomial) -> bool>(&self, mut keep: F) -> Element {
        Element {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| keep(m))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub(crate) fn generators_len(&self) -> Option<usize> {
        self.terms.keys().next().map(|m| m.0.len())
    }

    /// Same element over a presentation with `len >= current` generators, new exponents zero.
    pub(crate) fn padded(&self, len: usize) -> Element {
        Element {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let mut ex = m.0.clone();
                    ex.resize(len, 0);
                    (Monomial(ex), c.clone())
                })
                .collect(),
        }
    }

    pub(crate) fn retain<F: FnMut(&Monomial) -> bool>(&mut self, mut keep: F) {
        self.terms.retain(|m, _| keep(m));
    }
}

impl AddAssign<&Element> for Element {
    fn add_assign(&mut self, rhs: &Element) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl Add<&Element> for &Element {
    type Output = Element;
    fn add(self, rhs: &Element) -> Element {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for Element {
    type Output = Element;
    fn add(mut self, rhs: Element) -> Element {
        self += &rhs;
        self
    }
}

impl Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        self.scaled(&-Rational::one())
    }
}

impl Neg for Element {
    type Output = Element;
    fn neg(self) -> Element {
        -&self
    }
}

impl Sub<&Element> for &Element {
    type Output = Element;
    fn sub(self, rhs: &Element) -> Element {
        self + &(-rhs)
    }
}

impl Sub for Element {
    type Output = Element;
    fn sub(self, rhs: Element) -> Element {
        &self - &rhs
    }
}
