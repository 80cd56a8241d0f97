use proptest::prelude::*;
use thomforge_core::lie::{is_lyndon, validate_dgl, DglPresentation, FreeLie, LieElem};
use thomforge_core::linalg::{self, SparseVec};
use thomforge_core::{Error, Rational};

fn free(gens: &[(&str, u32)]) -> FreeLie {
    FreeLie::new(gens.iter().map(|(n, d)| (n.to_string(), *d)).collect()).unwrap()
}

fn q(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

fn left_normed(lie: &FreeLie, d: u32) -> Vec<LieElem> {
    let mut out = Vec::new();
    let mut stack: Vec<(LieElem, u32)> = (0..lie.len())
        .map(|i| (lie.gen(i), lie.generators()[i].degree))
        .collect();
    while let Some((e, deg)) = stack.pop() {
        if deg == d {
            out.push(e);
            continue;
        }
        for i in 0..lie.len() {
            let gd = lie.generators()[i].degree;
            if deg + gd <= d {
                stack.push((lie.bracket(&e, &lie.gen(i)), deg + gd));
            }
        }
    }
    out
}

fn word_rank(elems: &[LieElem]) -> usize {
    let mut index = std::collections::BTreeMap::new();
    let vecs: Vec<SparseVec> = elems
        .iter()
        .map(|e| {
            let mut v = SparseVec::new();
            for (w, c) in e.terms() {
                let n = index.len();
                let i = *index.entry(w.clone()).or_insert(n);
                v.add_entry(i, c);
            }
            v
        })
        .collect();
    linalg::rank(&vecs)
}

// Hilbert series of T(V) against the graded PBW product over the Lie basis.
fn pbw_holds(lie: &FreeLie, top: u32) -> bool {
    let top = top as usize;
    let mut tensor = vec![0i128; top + 1];
    tensor[0] = 1;
    for d in 1..=top {
        for g in lie.generators() {
            let gd = g.degree as usize;
            if gd <= d {
                tensor[d] += tensor[d - gd];
            }
        }
    }
    let mut series = vec![0i128; top + 1];
    series[0] = 1;
    for d in 1..=top {
        let dim = lie.basis(d as u32).len();
        for _ in 0..dim {
            if d % 2 == 0 {
                for k in d..=top {
                    series[k] += series[k - d];
                }
            } else {
                for k in (d..=top).rev() {
                    series[k] += series[k - d];
                }
            }
        }
    }
    series == tensor
}

#[test]
fn one_odd_generator() {
    let lie = free(&[("v", 1)]);
    assert_eq!(lie.basis(1).len(), 1);
    let b2 = lie.basis(2);
    assert_eq!(b2.len(), 1);
    assert_eq!(b2[0].label, "[v,v]");
    assert!(lie.basis(3).is_empty());
    let v = lie.gen(0);
    assert!(lie.bracket(&lie.bracket(&v, &v), &v).is_zero());
}

#[test]
fn two_degree_one_generators() {
    let lie = free(&[("v", 1), ("w", 1)]);
    let labels: Vec<String> = lie.basis(2).into_iter().map(|b| b.label).collect();
    assert_eq!(labels.len(), 3);
    assert!(labels.contains(&"[v,w]".to_string()));
    assert!(labels.contains(&"[v,v]".to_string()));
    assert!(labels.contains(&"[w,w]".to_string()));
}

#[test]
fn empty_generator_set() {
    let lie = free(&[]);
    for d in 0..5 {
        assert!(lie.basis(d).is_empty());
    }
}

#[test]
fn even_generator_self_bracket_vanishes() {
    let lie = free(&[("a", 2)]);
    let a = lie.gen(0);
    assert!(lie.bracket(&a, &a).is_zero());
    assert!(lie.basis(4).is_empty());
}

#[test]
fn basis_matches_bracket_span() {
    let configs: Vec<(Vec<(&str, u32)>, u32)> = vec![
        (vec![("v", 1)], 8),
        (vec![("a", 2)], 8),
        (vec![("v", 1), ("w", 1)], 8),
        (vec![("a", 2), ("b", 2)], 8),
        (vec![("v", 1), ("a", 2)], 8),
        (vec![("v", 1), ("a", 2), ("u", 3)], 8),
        (vec![("v", 1), ("w", 1), ("a", 2)], 6),
        (vec![("a", 2), ("b", 2), ("u", 3)], 8),
    ];
    for (gens, top) in configs {
        let lie = free(&gens);
        for d in 1..=top {
            let basis: Vec<LieElem> = lie.basis(d).into_iter().map(|b| b.element).collect();
            let span = left_normed(&lie, d);
            assert_eq!(word_rank(&basis), basis.len(), "{gens:?} degree {d}");
            assert_eq!(word_rank(&span), basis.len(), "{gens:?} degree {d}");
            let mut both = span.clone();
            both.extend(basis.iter().cloned());
            assert_eq!(word_rank(&both), basis.len(), "{gens:?} degree {d}");
        }
    }
}

#[test]
fn pbw_character() {
    assert!(pbw_holds(&free(&[("v", 1)]), 10));
    assert!(pbw_holds(&free(&[("v", 1), ("w", 1), ("x", 1)]), 9));
    assert!(pbw_holds(&free(&[("v", 1), ("a", 2), ("u", 3)]), 10));
    assert!(pbw_holds(&free(&[("a", 2), ("b", 4)]), 12));
}

#[test]
fn lyndon_words() {
    assert!(is_lyndon(&[0, 1]));
    assert!(is_lyndon(&[0, 0, 1]));
    assert!(!is_lyndon(&[1, 0]));
    assert!(!is_lyndon(&[0, 0]));
    let lie = free(&[("v", 1), ("w", 1)]);
    assert_eq!(lie.lyndon_words(3), vec![vec![0, 0, 1], vec![0, 1, 1]]);
}

#[test]
fn coordinates_and_display() {
    let lie = free(&[("v", 1), ("w", 1)]);
    let (v, w) = (lie.gen(0), lie.gen(1));
    let wv = lie.bracket(&w, &v);
    assert_eq!(lie.display(&wv), "[v,w]");
    let x = &lie.bracket(&v, &v).scaled(&q(2)) - &lie.bracket(&v, &w);
    assert_eq!(lie.display(&x), "-[v,w] + 2*[v,v]");
    assert_eq!(lie.display(&LieElem::zero()), "0");
}

#[test]
fn zero_differential_is_valid() {
    let lie = free(&[("v", 1), ("w", 2), ("u", 3)]);
    let dgl = DglPresentation::new(lie, vec![]).unwrap();
    assert!(dgl.is_zero_differential());
    validate_dgl(&dgl, 6).unwrap();
}

#[test]
fn broken_differential_is_named() {
    // d(w) = v and d(b) = [v,w] give d²(b) = -[v,v].
    let lie = free(&[("v", 1), ("w", 2), ("b", 4)]);
    let (v, w) = (lie.gen(0), lie.gen(1));
    let diffs = vec![LieElem::zero(), v.clone(), lie.bracket(&v, &w)];
    let dgl = DglPresentation::new(lie.clone(), diffs).unwrap();
    match validate_dgl(&dgl, 5) {
        Err(Error::DglD2Nonzero { generator, .. }) => assert_eq!(generator, "b"),
        other => panic!("{other:?}"),
    }
}

#[test]
fn degree_checks() {
    let lie = free(&[("v", 1), ("a", 2)]);
    let v = lie.gen(0);
    assert!(matches!(
        DglPresentation::new(lie.clone(), vec![v.clone(), LieElem::zero()]),
        Err(Error::DglDegree { .. })
    ));
    assert!(matches!(FreeLie::new(vec![("z".into(), 0)]), Err(Error::LieDegree(_))));
    assert!(matches!(
        FreeLie::new(vec![("z".into(), 1), ("z".into(), 2)]),
        Err(Error::DuplicateGenerator(_))
    ));
}

fn combine(lie: &FreeLie, d: u32, cs: &[i64]) -> LieElem {
    let mut out = LieElem::zero();
    for (b, c) in lie.basis(d).iter().zip(cs) {
        out = &out + &b.element.scaled(&q(*c));
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn antisymmetry_and_jacobi(
        (p, q_, r) in (1u32..=3, 1u32..=3, 1u32..=3),
        cx in prop::collection::vec(-3i64..=3, 4),
        cy in prop::collection::vec(-3i64..=3, 4),
        cz in prop::collection::vec(-3i64..=3, 4),
    ) {
        let lie = free(&[("v", 1), ("a", 2), ("u", 3)]);
        let x = combine(&lie, p, &cx);
        let y = combine(&lie, q_, &cy);
        let z = combine(&lie, r, &cz);
        let xy = lie.bracket(&x, &y);
        let yx = lie.bracket(&y, &x);
        let sign = if (p * q_) % 2 == 1 { q(1) } else { q(-1) };
        prop_assert_eq!(&xy, &yx.scaled(&sign));
        let e = |a: u32, b: u32| if (a * b) % 2 == 1 { q(-1) } else { q(1) };
        let j1 = lie.bracket(&x, &lie.bracket(&y, &z)).scaled(&e(p, r));
        let j2 = lie.bracket(&y, &lie.bracket(&z, &x)).scaled(&e(q_, p));
        let j3 = lie.bracket(&z, &lie.bracket(&x, &y)).scaled(&e(r, q_));
        prop_assert!((&(&j1 + &j2) + &j3).is_zero());
        prop_assert!(lie.coordinates(&xy, p + q_).is_some());
    }
}
