//! Triple Massey products with indeterminacy, higher Massey systems, and their
//! transfer into Thom models.
//!
//! Sign convention: `m̄ = (-1)^{|m|} m` and `a_{i,j} = sum_l m̄_{i,l} m_{l+1,j}`.
//! For three classes this gives `dλ = x̄ y`, `dμ = ȳ z` and the representative
//! `x̄ μ + λ̄ z`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use num_traits::One;

use crate::algebra::{Cdga, Element};
use crate::complex::{check_limit, solve_coboundary, Cochains, CohomologySpace, DgAlgebra};
use crate::linalg::{Echelon, SparseVec};
use crate::thom::{Suspended, ThomModel};
use crate::{Error, Rational, Result};

fn bar<A: DgAlgebra + ?Sized>(a: &A, x: &A::Elem, degree: u32) -> A::Elem {
    if degree % 2 == 1 {
        a.scale(x, &-Rational::one())
    } else {
        x.clone()
    }
}

/// A triple product `<x, y, z>` as a coset in `H^degree`.
#[derive(Clone, Debug, PartialEq)]
pub struct MasseyProduct<E> {
    pub degree: u32,
    /// `None` when the product is defined; otherwise which product is not exact.
    pub obstruction: Option<String>,
    pub representative: Option<E>,
    /// Class of the representative in the basis of `H^degree`.
    pub class: SparseVec,
    /// Basis (in class coordinates) of the indeterminacy subspace.
    pub indeterminacy: Vec<SparseVec>,
    pub cohomology_dim: usize,
}

impl<E> MasseyProduct<E> {
    pub fn is_defined(&self) -> bool {
        self.obstruction.is_none()
    }

    /// `None` when the product is not defined.
    pub fn contains_zero(&self) -> Option<bool> {
        if !self.is_defined() {
            return None;
        }
        let mut ech = Echelon::new();
        for v in &self.indeterminacy {
            ech.insert(v);
        }
        Some(ech.contains(&self.class))
    }

    pub fn is_nonzero(&self) -> bool {
        self.contains_zero() == Some(false)
    }
}

fn closed<A: DgAlgebra + ?Sized>(a: &A, x: &A::Elem) -> bool {
    a.is_zero(&a.derivative(x))
}

fn span_classes<A: DgAlgebra + ?Sized>(
    a: &A,
    h: &CohomologySpace,
    elems: impl Iterator<Item = A::Elem>,
) -> Vec<SparseVec> {
    let mut ech = Echelon::new();
    let mut out = Vec::new();
    for e in elems {
        let c = h
            .class_of(&a.to_coords(&e, h.degree()))
            .expect("indeterminacy products are cocycles");
        if !ech.contains(&c) {
            ech.insert(&c);
            out.push(c);
        }
    }
    out
}

/// `<x, y, z>` for closed elements of the given degrees.
pub fn triple_massey_graded<A: DgAlgebra + ?Sized>(
    a: &A,
    x: (&A::Elem, u32),
    y: (&A::Elem, u32),
    z: (&A::Elem, u32),
) -> Result<MasseyProduct<A::Elem>> {
    let (lambda, mu) = match solve_pair(a, x, y, z)? {
        Ok(pair) => pair,
        Err(obstruction) => {
            let degree = x.1 + y.1 + z.1 - 1;
            return Ok(MasseyProduct {
                degree,
                obstruction: Some(obstruction),
                representative: None,
                class: SparseVec::new(),
                indeterminacy: Vec::new(),
                cohomology_dim: 0,
            });
        }
    };
    triple_massey_from(a, x, y, z, &lambda, &mu)
}

type Pair<E> = core::result::Result<(E, E), String>;

fn solve_pair<A: DgAlgebra + ?Sized>(
    a: &A,
    (x, p): (&A::Elem, u32),
    (y, q): (&A::Elem, u32),
    (z, r): (&A::Elem, u32),
) -> Result<Pair<A::Elem>> {
    for e in [x, y, z] {
        if !closed(a, e) {
            return Err(Error::NotClosed);
        }
    }
    check_limit(a.cohomology_limit(), p + q + r - 1)?;
    let xy = a.product(&bar(a, x, p), y);
    let Some(l) = solve_coboundary(a, &a.to_coords(&xy, p + q), p + q) else {
        return Ok(Err("xy".into()));
    };
    let yz = a.product(&bar(a, y, q), z);
    let Some(m) = solve_coboundary(a, &a.to_coords(&yz, q + r), q + r) else {
        return Ok(Err("yz".into()));
    };
    Ok(Ok((a.from_coords(&l, p + q - 1), a.from_coords(&m, q + r - 1))))
}

/// `<x, y, z>` from a given choice of `λ`, `μ` with `dλ = x̄y` and `dμ = ȳz`.
pub fn triple_massey_from<A: DgAlgebra + ?Sized>(
    a: &A,
    (x, p): (&A::Elem, u32),
    (y, q): (&A::Elem, u32),
    (z, r): (&A::Elem, u32),
    lambda: &A::Elem,
    mu: &A::Elem,
) -> Result<MasseyProduct<A::Elem>> {
    let degree = p + q + r - 1;
    check_limit(a.cohomology_limit(), degree)?;
    let check = |u: &A::Elem, target: A::Elem| a.add(&a.derivative(u), &a.scale(&target, &-Rational::one()));
    if !a.is_zero(&check(lambda, a.product(&bar(a, x, p), y)))
        || !a.is_zero(&check(mu, a.product(&bar(a, y, q), z)))
    {
        return Err(Error::NotClosed);
    }
    let rep = a.add(
        &a.product(&bar(a, x, p), mu),
        &a.product(&bar(a, lambda, p + q - 1), z),
    );
    let h = CohomologySpace::compute(a, degree);
    let class = h
        .class_of(&a.to_coords(&rep, degree))
        .expect("Massey representative is a cocycle");
    let left = CohomologySpace::compute(a, q + r - 1);
    let right = CohomologySpace::compute(a, p + q - 1);
    let xs = left
        .representatives()
        .iter()
        .map(|u| a.product(x, &a.from_coords(u, q + r - 1)));
    let zs = right
        .representatives()
        .iter()
        .map(|v| a.product(&a.from_coords(v, p + q - 1), z));
    let indeterminacy = span_classes(a, &h, xs.chain(zs));
    Ok(MasseyProduct {
        degree,
        obstruction: None,
        representative: Some(rep),
        class,
        indeterminacy,
        cohomology_dim: h.dim(),
    })
}

/// `<x, y, z>` in a presentation, degrees read off the (nonzero, homogeneous) inputs.
pub fn triple_massey(a: &Cdga, x: &Element, y: &Element, z: &Element) -> Result<MasseyProduct<Element>> {
    let deg = |e: &Element| a.degree(e).ok_or(Error::Inhomogeneous);
    triple_massey_graded(a, (x, deg(x)?), (y, deg(y)?), (z, deg(z)?))
}

/// Comparison of `<w_x, w_y, w_z>` in `A[e]` with `e . <x, ey, z>` in `A`.
#[derive(Clone, Debug, PartialEq)]
pub struct TripleCorrespondence {
    pub thom: MasseyProduct<Suspended>,
    pub base: MasseyProduct<Element>,
    /// Whether the representatives agree modulo the (common) indeterminacy.
    pub representatives_agree: bool,
    pub thom_indeterminacy_dim: usize,
    pub base_indeterminacy_dim: usize,
    /// `e` times the base product contains zero.
    pub base_contains_zero: Option<bool>,
    pub thom_contains_zero: Option<bool>,
}

impl TripleCorrespondence {
    pub fn is_consistent(&self) -> bool {
        self.thom.is_defined() == self.base.is_defined()
            && self.base_contains_zero == self.thom_contains_zero
            && (!self.thom.is_defined()
                || (self.representatives_agree && self.thom_indeterminacy_dim == self.base_indeterminacy_dim))
    }
}

pub fn thom_triple_correspondence(
    t: &ThomModel,
    (x, p): (&Element, u32),
    (y, q): (&Element, u32),
    (z, r): (&Element, u32),
) -> Result<TripleCorrespondence> {
    let a = t.base();
    let n = t.rank();
    let e = t.euler();
    let (wx, wy, wz) = (t.wrap(x.clone()), t.wrap(y.clone()), t.wrap(z.clone()));
    let thom = triple_massey_graded(t, (&wx, p + n), (&wy, q + n), (&wz, r + n))?;
    let ey = a.mul(e, y);
    let base = triple_massey_graded(a, (x, p), (&ey, q + n), (z, r))?;
    let degree = p + q + r + 2 * n - 1;
    let mut out = TripleCorrespondence {
        thom_indeterminacy_dim: thom.indeterminacy.len(),
        base_indeterminacy_dim: 0,
        representatives_agree: false,
        base_contains_zero: None,
        thom_contains_zero: thom.contains_zero(),
        thom,
        base,
    };
    if !(out.thom.is_defined() && out.base.is_defined()) {
        return Ok(out);
    }
    // both sides live in H^degree(A): the Thom side through w_u <-> u
    check_limit(a.cohomology_limit(), degree)?;
    let h = CohomologySpace::compute(a, degree);
    let lower = CohomologySpace::compute(a, out.base.degree);
    let e_indet = span_classes(
        a,
        &h,
        out.base
            .indeterminacy
            .iter()
            .map(|c| a.mul(e, &a.element_from_coords(&lower.cocycle(c), out.base.degree))),
    );
    let base_rep = a.mul(e, out.base.representative.as_ref().unwrap());
    let base_class = h.class_of(&a.coords(&base_rep, degree)).expect("cocycle");
    let thom_rep = &out.thom.representative.as_ref().unwrap().0;
    let thom_class = h.class_of(&a.coords(thom_rep, degree)).expect("cocycle");
    let mut ech = Echelon::new();
    for v in &e_indet {
        ech.insert(v);
    }
    let mut diff = thom_class;
    diff.add_scaled(&base_class, &-Rational::one());
    out.representatives_agree = ech.contains(&diff);
    out.base_indeterminacy_dim = e_indet.len();
    out.base_contains_zero = Some(ech.contains(&base_class));
    Ok(out)
}

/// Which of the two exponent maps of the higher correspondence.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variant {
    First,
    Second,
}

/// `1` on odd indices, `0` on even ones.
pub fn phi(i: usize) -> i64 {
    (i % 2) as i64
}

pub fn gamma(i: usize) -> i64 {
    phi(i) - 1
}

/// Power of `e` attached to `y_{i,i}` relative to `x_{i,i}`: `φ(i)` or `1 - φ(i)`.
pub fn input_exponent(i: usize, variant: Variant) -> u32 {
    match variant {
        Variant::First => phi(i) as u32,
        Variant::Second => (1 - phi(i)) as u32,
    }
}

/// `s(i, j) = ⌊(j - i - φ(i)) / 2⌋` or `⌊(j - i + γ(i)) / 2⌋`.
///
/// Both satisfy `s(i, j) = s(i, l) + s(l + 1, j) + 1` and
/// `s(i, i) = -input_exponent(i)`.
pub fn s_exponent(i: usize, j: usize, variant: Variant) -> i64 {
    let diff = j as i64 - i as i64;
    let num = match variant {
        Variant::First => diff - phi(i),
        Variant::Second => diff + gamma(i),
    };
    num.div_euclid(2)
}

/// A defining system `{m_{i,j}}` for `k` classes, indexed from 1.
#[derive(Clone, Debug, PartialEq)]
pub struct MasseySystem<E> {
    k: usize,
    degrees: Vec<u32>,
    entries: BTreeMap<(usize, usize), E>,
}

impl<E: Clone> MasseySystem<E> {
    /// `entries` must hold every `(i, j)` with `i <= j` except `(1, k)`.
    pub fn new(degrees: Vec<u32>, entries: BTreeMap<(usize, usize), E>) -> Self {
        MasseySystem {
            k: degrees.len(),
            degrees,
            entries,
        }
    }

    pub fn len(&self) -> usize {
        self.k
    }

    pub fn is_empty(&self) -> bool {
        self.k == 0
    }

    pub fn class_degrees(&self) -> &[u32] {
        &self.degrees
    }

    pub fn entry(&self, i: usize, j: usize) -> Option<&E> {
        self.entries.get(&(i, j))
    }

    /// `|m_{i,j}| = sum |x_{l,l}| - (j - i)`.
    pub fn degree(&self, i: usize, j: usize) -> u32 {
        self.degrees[i - 1..j].iter().sum::<u32>() - (j - i) as u32
    }
}

fn a_entry<A: DgAlgebra + ?Sized>(alg: &A, s: &MasseySystem<A::Elem>, i: usize, j: usize) -> A::Elem {
    let mut acc = alg.zero();
    for l in i..j {
        let (Some(left), Some(right)) = (s.entry(i, l), s.entry(l + 1, j)) else {
            continue;
        };
        let term = alg.product(&bar(alg, left, s.degree(i, l)), right);
        acc = alg.add(&acc, &term);
    }
    acc
}

/// `a_{i,j} = sum_l m̄_{i,l} m_{l+1,j}`.
pub fn system_a<A: DgAlgebra + ?Sized>(alg: &A, s: &MasseySystem<A::Elem>, i: usize, j: usize) -> A::Elem {
    a_entry(alg, s, i, j)
}

/// The product cocycle `a_{1,k}`.
pub fn system_product<A: DgAlgebra + ?Sized>(alg: &A, s: &MasseySystem<A::Elem>) -> A::Elem {
    a_entry(alg, s, 1, s.k)
}

/// Check the axioms of a defining system.
///
/// 1. every entry `(i, j) != (1, k)` is present;
/// 2. each `m_{i,i}` is closed;
/// 3. each entry is zero or homogeneous of degree `sum |x| - (j - i)`;
/// 4. `d m_{i,j} = a_{i,j}` for `i < j`, `(i, j) != (1, k)`.
pub fn validate_system<A: DgAlgebra + ?Sized>(alg: &A, s: &MasseySystem<A::Elem>) -> Result<()> {
    let k = s.k;
    for i in 1..=k {
        for j in i..=k {
            if (i, j) == (1, k) {
                continue;
            }
            let Some(m) = s.entry(i, j) else {
                return Err(Error::InvalidMasseySystem { axiom: 1, i, j });
            };
            if i == j && !closed(alg, m) {
                return Err(Error::InvalidMasseySystem { axiom: 2, i, j });
            }
            if !alg.is_zero(m) && alg.degree_of(m) != Some(s.degree(i, j)) {
                return Err(Error::InvalidMasseySystem { axiom: 3, i, j });
            }
            if i < j {
                let residual = alg.add(&alg.derivative(m), &alg.scale(&a_entry(alg, s, i, j), &-Rational::one()));
                if !alg.is_zero(&residual) {
                    return Err(Error::InvalidMasseySystem { axiom: 4, i, j });
                }
            }
        }
    }
    Ok(())
}

/// Greedily solve for a defining system: each `m_{i,j}` is the deterministic
/// particular solution of `d m = a_{i,j}`. Returns `None` at the first
/// `a_{i,j}` that is not exact.
pub fn solve_system<A: DgAlgebra + ?Sized>(
    alg: &A,
    classes: &[(A::Elem, u32)],
) -> Result<Option<MasseySystem<A::Elem>>> {
    let k = classes.len();
    let mut s = MasseySystem::new(classes.iter().map(|c| c.1).collect(), BTreeMap::new());
    for (i, (x, _)) in classes.iter().enumerate() {
        if !closed(alg, x) {
            return Err(Error::NotClosed);
        }
        s.entries.insert((i + 1, i + 1), x.clone());
    }
    for len in 1..k.saturating_sub(1) {
        for i in 1..=k - len {
            let j = i + len;
            let target = a_entry(alg, &s, i, j);
            let deg = s.degree(i, j) + 1;
            check_limit(alg.cohomology_limit(), deg)?;
            let Some(m) = solve_coboundary(alg, &alg.to_coords(&target, deg), deg) else {
                return Ok(None);
            };
            s.entries.insert((i, j), alg.from_coords(&m, deg - 1));
        }
    }
    Ok(Some(s))
}

/// Lift a system for `y_{i,i} = e^{exp(i)} x_{i,i}` in `A` to a system for
/// `w_{x_{i,i}}` in `A[e]`, via `m'_{i,j} = w_{e^{s(i,j)} m_{i,j}}`.
///
/// The result is validated before it is returned.
pub fn lift_massey_system(
    t: &ThomModel,
    xs: &[(Element, u32)],
    system: &MasseySystem<Element>,
    variant: Variant,
) -> Result<MasseySystem<Suspended>> {
    let a = t.base();
    let k = system.len();
    if xs.len() != k {
        return Err(Error::InvalidMasseySystem { axiom: 1, i: xs.len(), j: k });
    }
    validate_system(a, system)?;
    let e = t.euler();
    for (i, (x, _)) in xs.iter().enumerate() {
        let y = a.mul(&a.pow(e, input_exponent(i + 1, variant)), x);
        if system.entry(i + 1, i + 1) != Some(&y) {
            return Err(Error::InvalidMasseySystem { axiom: 2, i: i + 1, j: i + 1 });
        }
    }
    let mut entries = BTreeMap::new();
    for i in 1..=k {
        entries.insert((i, i), t.wrap(xs[i - 1].0.clone()));
        for j in i + 1..=k {
            if (i, j) == (1, k) {
                continue;
            }
            let s = s_exponent(i, j, variant);
            debug_assert!(s >= 0);
            let m = system.entry(i, j).unwrap();
            entries.insert((i, j), t.wrap(a.mul(&a.pow(e, s as u32), m)));
        }
    }
    let lifted = MasseySystem::new(xs.iter().map(|x| x.1 + t.rank()).collect(), entries);
    validate_system(t, &lifted)?;
    Ok(lifted)
}

/// Render a system's entries for reports.
pub fn describe_system(a: &Cdga, s: &MasseySystem<Element>) -> Vec<String> {
    s.entries
        .iter()
        .map(|((i, j), m)| format!("m[{i},{j}] = {}", a.display(m)))
        .collect()
}
