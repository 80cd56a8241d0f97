//! Seeded sampling of the graded-commutative algebra laws.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thomforge_core::{Cdga, Element, Rational};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LawReport {
    pub triples: usize,
    pub failures: Vec<String>,
}

impl LawReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// A random homogeneous element of degree `n` with at most `terms` monomials.
pub fn random_element(a: &Cdga, n: u32, terms: usize, rng: &mut ChaCha8Rng) -> Element {
    let Ok(basis) = a.basis(n) else {
        return Element::zero();
    };
    let mut picked: Vec<_> = basis.iter().collect();
    picked.shuffle(rng);
    let mut out = Element::zero();
    for m in picked.into_iter().take(terms) {
        let c: i64 = rng.gen_range(-3..=3);
        out.add_term(m.clone(), Rational::from_integer(c.into()));
    }
    out
}

fn sign(p: u32, q: u32) -> Rational {
    Rational::from_integer(if (p * q) % 2 == 1 { (-1).into() } else { 1.into() })
}

/// Check associativity, graded commutativity, the Leibniz rule and `d² = 0`
/// on `triples` random homogeneous triples of degree at most `max_degree`.
pub fn sample_laws(a: &Cdga, triples: usize, max_degree: u32, seed: u64) -> LawReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let top = max_degree.min(a.truncation().degree);
    let mut report = LawReport::default();
    for _ in 0..triples {
        let degs: Vec<u32> = (0..3).map(|_| rng.gen_range(0..=top)).collect();
        let (p, q) = (degs[0], degs[1]);
        let x = random_element(a, p, 4, &mut rng);
        let y = random_element(a, q, 4, &mut rng);
        let z = random_element(a, degs[2], 4, &mut rng);
        report.triples += 1;
        let show = |e: &Element| a.display(e);
        if a.mul(&a.mul(&x, &y), &z) != a.mul(&x, &a.mul(&y, &z)) {
            report
                .failures
                .push(format!("associativity: ({}, {}, {})", show(&x), show(&y), show(&z)));
        }
        if a.mul(&x, &y) != a.mul(&y, &x).scaled(&sign(p, q)) {
            report.failures.push(format!("commutativity: ({}, {})", show(&x), show(&y)));
        }
        let lhs = a.d(&a.mul(&x, &y));
        let rhs = &a.mul(&a.d(&x), &y) + &a.mul(&x, &a.d(&y)).scaled(&sign(p, 1));
        if lhs != rhs {
            report.failures.push(format!("leibniz: ({}, {})", show(&x), show(&y)));
        }
        if !a.d(&a.d(&x)).is_zero() {
            report.failures.push(format!("d^2: {}", show(&x)));
        }
    }
    report
}
