//! Quillen models over a formal base and the Thom-space model built from the
//! dual of multiplication by the Euler class.
//!
//! Homological conventions: a cohomology class of degree `k` gives a homology
//! generator of degree `k` and a Quillen generator of degree `k - 1`.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use num_bigint::BigInt;

use crate::algebra::{Cdga, Element};
use crate::complex::{check_limit, Cochains, CohomologySpace};
use crate::lie::{validate_dgl, DglPresentation, FreeLie, LieElem};
use crate::linalg::SparseVec;
use crate::{Error, Rational, Result};

/// The quadratic Quillen model of a formal space, read off its cohomology ring.
#[derive(Clone, Debug)]
pub struct FormalQuillen {
    pub dgl: DglPresentation,
    /// For each Lie generator (in Lie order), the `(degree, index)` of its cohomology class.
    pub classes: Vec<(u32, usize)>,
    spaces: Vec<CohomologySpace>,
    base: Cdga,
}

fn generator_names(dims: &[usize]) -> Vec<(String, u32, (u32, usize))> {
    let mut out = Vec::new();
    for (k, &dim) in dims.iter().enumerate().skip(1) {
        for i in 0..dim {
            let name = if dim == 1 {
                format!("v{}", k - 1)
            } else {
                format!("v{}_{}", k - 1, i + 1)
            };
            out.push((name, k as u32 - 1, (k as u32, i)));
        }
    }
    out
}

/// `d(v_k) = 1/2 sum_{i,j} μ_{ij}^k (-1)^{|h_i|} [v_i, v_j]` where `h_i h_j = sum_k μ_{ij}^k h_k`.
pub fn formal_quillen_model(h: &Cdga, up_to: u32) -> Result<FormalQuillen> {
    check_limit(h.cohomology_limit(), up_to)?;
    let spaces: Vec<CohomologySpace> = (0..=up_to).map(|n| CohomologySpace::compute(h, n)).collect();
    if up_to >= 1 && spaces[1].dim() > 0 {
        return Err(Error::NotSimplyConnected(spaces[1].dim()));
    }
    let dims: Vec<usize> = spaces.iter().map(CohomologySpace::dim).collect();
    let named = generator_names(&dims);
    let lie = FreeLie::new(named.iter().map(|(n, d, _)| (n.clone(), *d)).collect())?;
    let classes: Vec<(u32, usize)> = lie
        .generators()
        .iter()
        .map(|g| named.iter().find(|(n, _, _)| *n == g.name).unwrap().2)
        .collect();
    let index_of = |c: (u32, usize)| classes.iter().position(|x| *x == c).unwrap();
    let half = Rational::new(BigInt::from(1), BigInt::from(2));
    let mut diffs = alloc::vec![LieElem::zero(); lie.len()];
    for (i, &(p, a)) in classes.iter().enumerate() {
        for (j, &(q, b)) in classes.iter().enumerate() {
            if p + q > up_to {
                continue;
            }
            let x = h.element_from_coords(&spaces[p as usize].representatives()[a], p);
            let y = h.element_from_coords(&spaces[q as usize].representatives()[b], q);
            let prod = h.coords(&h.mul(&x, &y), p + q);
            let mu = spaces[(p + q) as usize].class_of(&prod).expect("cocycle");
            let sign = if p % 2 == 1 { -half.clone() } else { half.clone() };
            let br = lie.bracket(&lie.gen(i), &lie.gen(j));
            for (c, coeff) in mu.iter() {
                let k = index_of((p + q, c));
                diffs[k] = &diffs[k] + &br.scaled(&(coeff * &sign));
            }
        }
    }
    let dgl = DglPresentation::new(lie, diffs)?;
    Ok(FormalQuillen {
        dgl,
        classes,
        spaces,
        base: h.clone(),
    })
}

impl FormalQuillen {
    /// `φ_e`: the transpose of multiplication by `e` on reduced cohomology, as a
    /// map on Lie generators (`result[j]` is `φ_e(v_j)` in generator coordinates).
    pub fn euler_dual_map(&self, e: &Element) -> Result<Vec<SparseVec>> {
        let h = &self.base;
        let up_to = self.spaces.len() as u32 - 1;
        let n = if e.is_zero() {
            return Ok(alloc::vec![SparseVec::new(); self.classes.len()]);
        } else {
            h.degree(e).ok_or(Error::Inhomogeneous)?
        };
        let de = h.d(e);
        if !de.is_zero() {
            return Err(Error::EulerNotClosed(h.display(&de)));
        }
        let mut phi = alloc::vec![SparseVec::new(); self.classes.len()];
        for (i, &(p, a)) in self.classes.iter().enumerate() {
            if p + n > up_to {
                continue;
            }
            let x = h.element_from_coords(&self.spaces[p as usize].representatives()[a], p);
            let prod = h.coords(&h.mul(e, &x), p + n);
            let m = self.spaces[(p + n) as usize].class_of(&prod).expect("cocycle");
            for (b, c) in m.iter() {
                let j = self.classes.iter().position(|x| *x == (p + n, b)).unwrap();
                phi[j].add_entry(i, c);
            }
        }
        Ok(phi)
    }
}

/// `d̄(s^n v_k) = s^n θ(d v_k)` with `θ[a, b] = [φa, b] + [a, φb]`, plus a
/// closed bottom generator `u0` of degree `n - 1`.
///
/// `phi[j]` is `φ(v_j)` in generator coordinates and must lower degree by `n`.
pub fn quillen_thom_model(base: &DglPresentation, phi: &[SparseVec], n: u32) -> Result<DglPresentation> {
    if n % 2 == 1 {
        return Err(Error::OddRankUnsupported(n));
    }
    base.check_quadratic()?;
    base.check_order_preserving()?;
    let lie = base.lie();
    for (j, g) in lie.generators().iter().enumerate() {
        let image = phi.get(j).cloned().unwrap_or_default();
        for (i, _) in image.iter() {
            if lie.generators()[i].degree + n != g.degree {
                return Err(Error::MapDegree(g.name.clone()));
            }
        }
    }
    let mut gens = alloc::vec![(String::from("u0"), n - 1)];
    gens.extend(
        lie.generators()
            .iter()
            .map(|g| (format!("s{n}{}", g.name), g.degree + n)),
    );
    let target = FreeLie::new(gens)?;
    let shift: Vec<usize> = lie
        .generators()
        .iter()
        .map(|g| target.index_of(&format!("s{n}{}", g.name)).unwrap())
        .collect();
    let mut diffs = alloc::vec![LieElem::zero(); target.len()];
    let empty = SparseVec::new();
    let phi_of = |i: usize| phi.get(i).unwrap_or(&empty);
    for k in 0..lie.len() {
        let out = &mut diffs[shift[k]];
        for (w, c) in base.generator_differential(k).terms() {
            let (a, b) = (w[0], w[1]);
            for (i, x) in phi_of(a).iter() {
                out.add_term(alloc::vec![shift[i], shift[b]], &(c * x));
            }
            for (i, x) in phi_of(b).iter() {
                out.add_term(alloc::vec![shift[a], shift[i]], &(c * x));
            }
        }
    }
    let out = DglPresentation::new(target, diffs)?;
    let top = out.lie().generators().iter().map(|g| g.degree).max().unwrap_or(0);
    validate_dgl(&out, top.min(6))?;
    Ok(out)
}
