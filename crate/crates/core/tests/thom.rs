use thomforge_core::complex::CohomologySpace;
use thomforge_core::thom::{self, compare_euler_reps, thom_model, thom_weights, transport_thom};
use thomforge_core::weight::natural_weights;
use thomforge_core::{Cdga, CdgaMorphism, Cochains, DgAlgebra, Element, Error};

fn cp(n: u32, cutoff: u32) -> Cdga {
    Cdga::builder(cutoff)
        .generator("x", 2)
        .generator("y", 2 * n + 1)
        .differential("y", &format!("x^{}", n + 1))
        .build()
        .unwrap()
}

fn quad() -> Cdga {
    Cdga::builder(8)
        .generator("x", 2)
        .generator("y", 2)
        .generator("a", 3)
        .generator("b", 3)
        .differential("a", "x^2")
        .differential("b", "x*y")
        .build()
        .unwrap()
}

fn class<C: Cochains>(c: &C, v: &thomforge_core::SparseVec, k: u32) -> thomforge_core::SparseVec {
    CohomologySpace::compute(c, k).class_of(v).unwrap()
}

#[test]
fn thom_model_of_cp3_is_cp4() {
    let base = cp(3, 10);
    let target = cp(4, 10);
    let x = base.parse_element("x").unwrap();
    let t = thom_model(&base, &x, 2).unwrap();
    let th = t.cohomology(8).unwrap();
    let direct = target.cohomology(8).unwrap();
    let mut reduced = direct.betti();
    reduced[0] = 0;
    assert_eq!(th.groups.betti(), reduced);
    let big_x = target.parse_element("x").unwrap();
    for i in 0..=2u32 {
        for j in 0..=2u32 {
            let k = 2 * (i + j) + 4;
            if k > 8 {
                continue;
            }
            let wi = t.wrap(base.pow(&x, i));
            let wj = t.wrap(base.pow(&x, j));
            let wk = t.wrap(base.pow(&x, i + j + 1));
            let lhs = class(&t, &t.to_coords(&t.mul(&wi, &wj), k), k);
            let rhs = class(&t, &t.to_coords(&wk, k), k);
            assert_eq!(lhs, rhs);
            assert!(!rhs.is_zero());
            let p = target.mul(&target.pow(&big_x, i + 1), &target.pow(&big_x, j + 1));
            let dp = class(&target, &target.coords(&p, k), k);
            let dk = class(&target, &target.coords(&target.pow(&big_x, i + j + 2), k), k);
            assert_eq!(dp, dk);
        }
    }
}

#[test]
fn dimensions_shift_by_rank() {
    let base = quad();
    for (e, n) in [("x", 2), ("y", 2), ("x^2 + x*y", 4), ("0", 2), ("0", 4)] {
        let e = base.parse_element(e).unwrap();
        let t = thom_model(&base, &e, n).unwrap();
        let betti = base.cohomology(7).unwrap().betti();
        let tb = t.cohomology(7 + n).unwrap().groups.betti();
        for k in 0..=7 + n {
            let want = k.checked_sub(n).map_or(0, |j| base.dim(j));
            assert_eq!(t.dim(k), want);
            let want = k.checked_sub(n).map_or(0, |j| betti[j as usize]);
            assert_eq!(tb[k as usize], want);
        }
    }
}

#[test]
fn zero_euler_class_kills_products() {
    let base = cp(2, 10);
    let t = thom_model(&base, &Element::zero(), 4).unwrap();
    let w = t.wrap(base.parse_element("x").unwrap());
    assert!(t.mul(&w, &w).is_zero());
    assert!(t.cohomology(8).unwrap().ring.is_trivial());
}

#[test]
fn euler_validation() {
    let base = cp(2, 10);
    assert!(matches!(
        thom_model(&base, &base.parse_element("x").unwrap(), 3),
        Err(Error::OddRankUnsupported(3))
    ));
    assert!(matches!(
        thom_model(&base, &base.parse_element("x").unwrap(), 4),
        Err(Error::EulerInhomogeneous { rank: 4 })
    ));
    let q = quad();
    let yb = q.parse_element("y*b").unwrap();
    assert!(matches!(thom_model(&q, &yb, 5), Err(Error::OddRankUnsupported(5))));
    let xa = Cdga::builder(10)
        .generator("x", 2)
        .generator("a", 3)
        .generator("u", 3)
        .differential("a", "x^2")
        .build()
        .unwrap();
    let e = xa.parse_element("a*u").unwrap();
    assert!(matches!(thom_model(&xa, &e, 6), Err(Error::EulerNotClosed(_))));
}

#[test]
fn relative_cup_and_pullback() {
    let base = cp(2, 10);
    let x = base.parse_element("x").unwrap();
    let t = thom_model(&base, &x, 2).unwrap();
    let one = t.wrap(base.unit());
    assert_eq!(t.relative_cup(&x, &one), t.wrap(x.clone()));
    assert_eq!(t.pullback(&t.wrap(x.clone())), base.pow(&x, 2));
    assert_eq!(t.display(&t.wrap(base.pow(&x, 2))), "w[x^2]");
    assert_eq!(t.degree(&one), Some(2));
}

#[test]
fn weighted_shift() {
    let base = natural_weights(&cp(2, 10)).unwrap();
    let x = base.parse_element("x").unwrap();
    let t = thom_weights(&base, &x, 2, None).unwrap();
    assert_eq!(t.euler_weight(), Some(2));
    assert_eq!(t.basis_weights(6), Some(vec![6]));
    let z = thom_weights(&base, &Element::zero(), 4, None).unwrap();
    assert_eq!(z.euler_weight(), Some(4));
    assert!(matches!(
        thom_weights(&cp(2, 10), &x, 2, None),
        Err(Error::EulerInhomogeneous { .. })
    ));
}

#[test]
fn cohomologous_euler_classes() {
    let base = quad();
    let cases = [("x^2 + y^2", "y^2", "a"), ("x^2 + x*y", "0", "a + b"), ("x*y", "x*y", "0")];
    for (e, e2, z) in cases {
        let p = |s: &str| base.parse_element(s).unwrap();
        let cmp = compare_euler_reps(&base, &p(e), &p(e2), &p(z), 4, 7).unwrap();
        assert!(cmp.pairs_checked > 0);
        assert!(cmp.is_consistent(), "{e} vs {e2}: {cmp:?}");
    }
    let p = |s: &str| base.parse_element(s).unwrap();
    assert!(matches!(
        compare_euler_reps(&base, &p("x^2"), &p("y^2"), &p("a"), 4, 7),
        Err(Error::NotCohomologous(_))
    ));
}

#[test]
fn transport_to_formal_model() {
    let a = cp(2, 10);
    let h = Cdga::builder(4).generator("x", 2).quotient().build().unwrap();
    let f = CdgaMorphism::from_exprs(&a, &h, &[("x", "x"), ("y", "0")]).unwrap();
    let e = a.parse_element("x").unwrap();
    let tr = transport_thom(&f, &e, 2, 10).unwrap();
    assert!(tr.is_valid());
    assert!(tr.is_quasi_iso());
    let w = tr.source.wrap(a.parse_element("x^2").unwrap());
    assert_eq!(tr.apply(&w), tr.target.wrap(h.parse_element("x^2").unwrap()));
    let _ = thom::thom_cohomology(&tr.target, 8).unwrap();
}
