use thomforge_core::hodge::{
    check_euler_purity, compare_with_thom_weights, thom_mhs, weights_from_splitting, SplitMixedHodgeCdga,
};
use thomforge_core::{Cdga, Element, Error};

fn cp(n: u32) -> SplitMixedHodgeCdga {
    let a = Cdga::builder(4 * n + 4)
        .generator("x", 2)
        .generator("y", 2 * n + 1)
        .differential("y", &format!("x^{}", n + 1))
        .build()
        .unwrap();
    let t = i64::from(n + 1);
    SplitMixedHodgeCdga::new(&a, &[("x", (1, 1)), ("y", (t, t))]).unwrap()
}

fn quad_t() -> SplitMixedHodgeCdga {
    let a = Cdga::builder(10)
        .generator("x", 2)
        .generator("y", 2)
        .generator("t", 2)
        .generator("a", 3)
        .generator("b", 3)
        .differential("a", "x^2")
        .differential("b", "x*y")
        .build()
        .unwrap();
    SplitMixedHodgeCdga::new(
        &a,
        &[("x", (1, 1)), ("y", (1, 1)), ("t", (1, 1)), ("a", (2, 2)), ("b", (2, 2))],
    )
    .unwrap()
}

#[test]
fn cp_weights_are_additive() {
    let s = cp(3);
    let w = weights_from_splitting(&s).unwrap();
    assert!(w.positive);
    assert!(w.smooth_bound);
    for i in 1..=3u32 {
        let xi = w.cdga.parse_element(&format!("x^{i}")).unwrap();
        assert_eq!(w.cdga.weight(&xi), Some(2 * i64::from(i)));
    }
}

#[test]
fn trivial_algebra() {
    let a = Cdga::builder(4).build().unwrap();
    let s = SplitMixedHodgeCdga::new(&a, &[]).unwrap();
    let w = weights_from_splitting(&s).unwrap();
    assert_eq!(w.cdga.weight(&w.cdga.unit()), Some(0));
    let f = thom_mhs(&s, &Element::zero(), 2).unwrap();
    assert_eq!(f.basis_types(4).unwrap(), vec![(2, 2)]);
    for n in [0, 1, 2, 3, 5, 6] {
        assert!(f.basis_types(n).unwrap().is_empty());
    }
}

#[test]
fn purity() {
    let s = cp(2);
    let a = s.cdga();
    assert!(check_euler_purity(&s, &a.parse_element("x").unwrap(), 1));
    assert!(check_euler_purity(&s, &Element::zero(), 1));
    assert!(check_euler_purity(&s, &a.parse_element("3*x^2").unwrap(), 2));
    assert!(!check_euler_purity(&s, &a.parse_element("x").unwrap(), 2));

    let b = Cdga::builder(6).generator("x", 2).generator("z", 2).build().unwrap();
    let mixed = SplitMixedHodgeCdga::new(&b, &[("x", (1, 1)), ("z", (2, 0))]).unwrap();
    let e = b.parse_element("x + z").unwrap();
    assert!(!check_euler_purity(&mixed, &e, 1));
    assert!(matches!(thom_mhs(&mixed, &e, 1), Err(Error::EulerNotPure { k: 1 })));
}

#[test]
fn bigrading_violation_is_named() {
    let a = Cdga::builder(8)
        .generator("x", 2)
        .generator("y", 3)
        .differential("y", "x^2")
        .build()
        .unwrap();
    match SplitMixedHodgeCdga::new(&a, &[("x", (1, 1)), ("y", (3, 1))]) {
        Err(Error::BigradingViolation(g)) => assert_eq!(g, "y"),
        other => panic!("{other:?}"),
    }
    assert!(matches!(
        SplitMixedHodgeCdga::new(&a, &[("x", (1, 1))]),
        Err(Error::BigradingViolation(_))
    ));
}

#[test]
fn tate_twist_on_cp() {
    let s = cp(3);
    let e = s.cdga().parse_element("x").unwrap();
    let f = thom_mhs(&s, &e, 1).unwrap();
    for i in 0..=3u32 {
        let w = f.model().wrap(s.cdga().parse_element(&format!("x^{i}")).unwrap());
        let t = i64::from(i) + 1;
        assert_eq!(f.bidegree(&w), Some((t, t)));
    }
    f.validate(10).unwrap();
    assert!(f.satisfies_smooth_bound(10).unwrap());
    assert_eq!(compare_with_thom_weights(&f, 12).unwrap(), None);
    assert_eq!(f.weight_filtration(6, 5).unwrap().len(), 0);
    assert_eq!(f.weight_filtration(6, 6).unwrap().len(), 1);
    assert_eq!(f.hodge_filtration(6, 3).unwrap().len(), 1);
    assert_eq!(f.hodge_filtration(6, 4).unwrap().len(), 0);
}

#[test]
fn agrees_with_thom_weights() {
    let s = quad_t();
    for e in ["t", "x", "x + y", "0"] {
        let e = s.cdga().parse_element(e).unwrap();
        let f = thom_mhs(&s, &e, 1).unwrap();
        f.validate(10).unwrap();
        assert_eq!(compare_with_thom_weights(&f, 10).unwrap(), None);
        assert!(f.satisfies_smooth_bound(10).unwrap());
    }
}

#[test]
fn smooth_bound_can_fail() {
    let a = Cdga::builder(6).generator("x", 2).build().unwrap();
    let s = SplitMixedHodgeCdga::new(&a, &[("x", (1, 0))]).unwrap();
    let w = weights_from_splitting(&s).unwrap();
    assert!(w.positive);
    assert!(!w.smooth_bound);
    let f = thom_mhs(&s, &Element::zero(), 1).unwrap();
    assert!(!f.satisfies_smooth_bound(6).unwrap());
}
