use std::path::{Path, PathBuf};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thomforge::checks::sample_laws;
use thomforge::presentation::Source;
use thomforge_core::complex::{CohomologySpace, Cochains};
use thomforge_core::hodge::{check_euler_purity, compare_with_thom_weights, thom_mhs, SplitMixedHodgeCdga};
use thomforge_core::lie::{validate_dgl, DglPresentation, FreeLie, LieElem};
use thomforge_core::massey::{self, Variant};
use thomforge_core::quillen::{formal_quillen_model, quillen_thom_model};
use thomforge_core::thom::{thom_model, thom_weights};
use thomforge_core::weight::{self, Formality};
use thomforge_core::{Cdga, DgAlgebra, Element, Error, Rational, SparseVec};

type Outcome = Result<String, String>;
type Criterion = (&'static str, u64, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn fixtures_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn fixture_path(name: &str) -> String {
    fixtures_dir().join(name).to_string_lossy().into_owned()
}

fn load(name: &str) -> (Source, Cdga) {
    let src = Source::read(&fixtures_dir().join(name)).unwrap();
    let trunc = src.truncation(None, None).unwrap();
    let a = src.build(trunc).unwrap();
    (src, a)
}

fn corpus() -> Vec<(String, Source, Cdga)> {
    let mut names: Vec<String> = std::fs::read_dir(fixtures_dir())
        .unwrap()
        .filter_map(|e| {
            let name = e.unwrap().file_name().into_string().unwrap();
            name.ends_with(".cdga").then_some(name)
        })
        .collect();
    names.sort();
    names
        .into_iter()
        .map(|n| {
            let (s, a) = load(&n);
            (n, s, a)
        })
        .collect()
}

fn limit(a: &Cdga) -> u32 {
    let t = a.truncation();
    t.cohomology_limit().unwrap_or(t.degree)
}

fn q(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// Cocycle representatives of `H^n`, zero, and their sum.
fn closed_classes(a: &Cdga, n: u32) -> Vec<Element> {
    let h = CohomologySpace::compute(a, n);
    let reps: Vec<Element> = h.representatives().iter().map(|v| a.element_from_coords(v, n)).collect();
    let mut out = vec![Element::zero()];
    if reps.len() > 1 {
        out.push(reps.iter().fold(Element::zero(), |s, r| &s + r));
    }
    out.extend(reps);
    out
}

fn kernel_laws() -> Outcome {
    let mut total = 0;
    for (name, _, a) in corpus() {
        let r = sample_laws(&a, 500, 8, 0);
        ensure!(r.passed(), "{name}: {}", r.failures.join("; "));
        total += r.triples;
    }
    Ok(format!("{total} triples"))
}

fn thom_isomorphism() -> Outcome {
    let mut cases = 0;
    for (name, _, a) in corpus() {
        let a = a.unweighted();
        let top = limit(&a);
        let betti = a.cohomology(top).map_err(|e| format!("{name}: {e}"))?.betti();
        for n in (2..=top).step_by(2) {
            for e in closed_classes(&a, n) {
                let t = thom_model(&a, &e, n).map_err(|err| format!("{name}: {err}"))?;
                let tb = t.cohomology(top + n).map_err(|err| format!("{name}: {err}"))?.groups.betti();
                for k in 0..=top + n {
                    let dim = k.checked_sub(n).map_or(0, |j| a.dim(j));
                    let b = k.checked_sub(n).map_or(0, |j| betti[j as usize]);
                    ensure!(t.dim(k) == dim, "{name} e={}: dim A[e]^{k}", a.display(&e));
                    ensure!(tb[k as usize] == b, "{name} e={}: H^{k}", a.display(&e));
                }
                cases += 1;
            }
        }
    }
    Ok(format!("{cases} (fixture, e) pairs"))
}

/// The model `Λ(x₂, y_{2N+3}; dy = x^{N+2})`, built from scratch.
fn cp_direct(n: u32, cutoff: u32) -> Cdga {
    Cdga::builder(cutoff)
        .generator("x", 2)
        .generator("y", 2 * n + 3)
        .differential("y", &format!("x^{}", n + 2))
        .build()
        .unwrap()
}

fn cp_reproduction() -> Outcome {
    let (_, base) = load("cpN.cdga");
    let x = base.parse_element("x").unwrap();
    let t = thom_model(&base, &x, 2).map_err(|e| e.to_string())?;
    let target = cp_direct(3, 12);
    let big_x = target.parse_element("x").unwrap();
    let th = t.cohomology(8).map_err(|e| e.to_string())?;
    let mut reduced = target.cohomology(8).map_err(|e| e.to_string())?.betti();
    reduced[0] = 0;
    ensure!(th.groups.betti() == reduced, "betti {:?} vs {:?}", th.groups.betti(), reduced);
    let class_t = |w: &thomforge_core::thom::Suspended, k: u32| {
        CohomologySpace::compute(&t, k).class_of(&t.to_coords(w, k)).unwrap()
    };
    let class_d = |e: &Element, k: u32| {
        CohomologySpace::compute(&target, k).class_of(&target.coords(e, k)).unwrap()
    };
    let mut products = 0;
    for i in 0..=3u32 {
        let k = 2 * i + 2;
        ensure!(!class_t(&t.wrap(base.pow(&x, i)), k).is_zero(), "w_x^{i} is zero");
        for j in i..=3u32 {
            let k = 2 * (i + j) + 4;
            if k > 8 {
                continue;
            }
            let lhs = class_t(&t.mul(&t.wrap(base.pow(&x, i)), &t.wrap(base.pow(&x, j))), k);
            let rhs = class_t(&t.wrap(base.pow(&x, i + j + 1)), k);
            let direct = class_d(&target.mul(&target.pow(&big_x, i + 1), &target.pow(&big_x, j + 1)), k);
            let direct_rhs = class_d(&target.pow(&big_x, i + j + 2), k);
            ensure!(lhs == rhs, "w_x^{i} w_x^{j}");
            ensure!(direct == direct_rhs, "oracle x^{} x^{}", i + 1, j + 1);
            ensure!(lhs.is_zero() == direct.is_zero(), "zero pattern at {i},{j}");
            products += 1;
        }
    }
    Ok(format!("{products} products match"))
}

fn formality_transfer() -> Outcome {
    let mut cases = 0;
    for (name, _, a) in corpus() {
        if !a.has_zero_differential() {
            continue;
        }
        let w = weight::natural_weights(&a.unweighted()).map_err(|e| e.to_string())?;
        let top = limit(&w);
        for n in (2..=top).step_by(2) {
            for e in closed_classes(&w, n) {
                let t = thom_weights(&w, &e, n, None).map_err(|err| format!("{name}: {err}"))?;
                let f = weight::formality_certificate(&t, top + n).map_err(|err| format!("{name}: {err}"))?;
                ensure!(f.is_certified(), "{name} e={}: {:?}", w.display(&e), f.obstructions());
                cases += 1;
            }
        }
    }
    ensure!(cases > 0, "no formal fixtures");
    Ok(format!("{cases} Thom models certified"))
}

fn non_formal_witness() -> Outcome {
    let (_, a) = load("massey-thom.cdga");
    let p = |s: &str| a.parse_element(s).unwrap();
    let (x, tx, y, e) = (p("x"), p("t*x"), p("y"), p("t"));
    let m = massey::triple_massey(&a, &x, &tx, &y).map_err(|e| e.to_string())?;
    ensure!(m.is_defined(), "<x,tx,y> undefined");
    ensure!(m.is_nonzero(), "<x,tx,y> zero");
    ensure!(m.contains_zero() == Some(false), "<x,tx,y> contains zero");
    let t = thom_model(&a, &e, 2).map_err(|e| e.to_string())?;
    let c = massey::thom_triple_correspondence(&t, (&x, 2), (&x, 2), (&y, 2)).map_err(|e| e.to_string())?;
    ensure!(c.thom.is_nonzero(), "<w_x,w_x,w_y> zero");
    ensure!(c.is_consistent(), "correspondence inconsistent");
    let w = weight::natural_weights(&a).map_err(|e| e.to_string())?;
    let tw = thom_weights(&w, &e, 2, None).map_err(|e| e.to_string())?;
    let f = weight::formality_certificate(&tw, limit(&a) + 2).map_err(|e| e.to_string())?;
    ensure!(!f.obstructions().is_empty(), "Thom model certified");
    Ok(format!("obstructions {:?}", f.obstructions()))
}

fn purity_formality() -> Outcome {
    let (_, cp2) = load("cp2.cdga");
    let w = weight::natural_weights(&cp2).map_err(|e| e.to_string())?;
    match weight::formality_certificate(&w, 8).map_err(|e| e.to_string())? {
        Formality::Certified(c) => {
            ensure!(c.inclusion.is_quasi_iso(), "inclusion not a quasi-iso");
            ensure!(c.projection.is_quasi_iso(), "projection not a quasi-iso");
        }
        Formality::Obstructed(o) => return Err(format!("cp2 obstructed at {o:?}")),
    }
    let (_, quad) = load("massey-thom.cdga");
    let w = weight::natural_weights(&quad).map_err(|e| e.to_string())?;
    let f = weight::formality_certificate(&w, limit(&w)).map_err(|e| e.to_string())?;
    ensure!(f.obstructions().contains(&(5, 6)), "obstructions {:?}", f.obstructions());
    Ok(format!("cp2 certified; obstructions {:?}", f.obstructions()))
}

fn minimal_models() -> Outcome {
    let (_, h) = load("cp2-formal.cdga");
    let mm = weight::minimal_model(&h, 6).map_err(|e| e.to_string())?;
    ensure!(mm.generator_counts == vec![0, 0, 1, 0, 0, 1, 0], "counts {:?}", mm.generator_counts);
    ensure!(weight::is_decomposable(&mm.model), "not decomposable");
    ensure!(mm.morphism.is_quasi_iso(6).map_err(|e| e.to_string())?, "not a quasi-iso");
    let mut weighted = 0;
    for (name, src, a) in corpus() {
        let w = if a.is_weighted() {
            a
        } else if src.presentation.generators.iter().any(|g| g.hodge_type.is_some()) {
            let s = src.splitting(&a).map_err(|e| e.to_string())?;
            thomforge_core::hodge::weights_from_splitting(&s).map_err(|e| e.to_string())?.cdga
        } else {
            continue;
        };
        if !weight::is_positive(&w) || w.generators().iter().any(|g| g.degree < 2) {
            continue;
        }
        let top = limit(&w).min(6);
        let mm = weight::minimal_model(&w, top).map_err(|e| format!("{name}: {e}"))?;
        ensure!(weight::is_positive(&mm.model), "{name}: weights not positive");
        ensure!(mm.morphism.is_quasi_iso(top).map_err(|e| e.to_string())?, "{name}: not a quasi-iso");
        weighted += 1;
    }
    ensure!(weighted > 0, "no weighted fixtures");
    Ok(format!("{weighted} weighted fixtures"))
}

fn massey_bookkeeping() -> Outcome {
    let mut triples = 0;
    for variant in [Variant::First, Variant::Second] {
        for i in 1..=12 {
            ensure!(
                massey::s_exponent(i, i, variant) == -i64::from(massey::input_exponent(i, variant)),
                "s({i},{i})"
            );
            for l in i..=12 {
                for j in l + 1..=12 {
                    let s = massey::s_exponent;
                    ensure!(
                        s(i, j, variant) == s(i, l, variant) + s(l + 1, j, variant) + 1,
                        "{variant:?} ({i},{l},{j})"
                    );
                    triples += 1;
                }
            }
        }
    }
    let (_, a) = load("massey-k4.cdga");
    let e = a.parse_element("t").unwrap();
    let t = thom_model(&a, &e, 2).map_err(|e| e.to_string())?;
    let xs: Vec<(Element, u32)> = ["x", "x", "x", "y"].iter().map(|s| (a.parse_element(s).unwrap(), 2)).collect();
    for variant in [Variant::First, Variant::Second] {
        let ys: Vec<(Element, u32)> = xs
            .iter()
            .enumerate()
            .map(|(i, (x, d))| {
                let k = massey::input_exponent(i + 1, variant);
                (a.mul(&a.pow(&e, k), x), d + 2 * k)
            })
            .collect();
        let sys = massey::solve_system(&a, &ys)
            .map_err(|e| e.to_string())?
            .ok_or("no defining system")?;
        massey::validate_system(&a, &sys).map_err(|e| e.to_string())?;
        let lifted = massey::lift_massey_system(&t, &xs, &sys, variant).map_err(|e| e.to_string())?;
        massey::validate_system(&t, &lifted).map_err(|e| format!("lifted system: {e}"))?;
        let s = massey::s_exponent(1, 4, variant) as u32;
        let expected = a.mul(&a.pow(&e, s + 1), &massey::system_product(&a, &sys));
        ensure!(t.pullback(&massey::system_product(&t, &lifted)) == expected, "{variant:?} product");
    }
    let mut reps = 0;
    for n in 0..=limit(&a) {
        for r in closed_classes(&a, n) {
            ensure!(t.pullback(&t.wrap(r.clone())) == a.mul(&e, &r), "pullback in degree {n}");
            reps += 1;
        }
    }
    Ok(format!("{triples} index triples, {reps} representatives"))
}

fn random_quillen_instance(rng: &mut ChaCha8Rng) -> (DglPresentation, Vec<SparseVec>, u32) {
    loop {
        let count = rng.gen_range(1..=4);
        let mut degrees: Vec<u32> = (0..count).map(|_| rng.gen_range(1..=6)).collect();
        degrees.sort_unstable();
        let lie = FreeLie::new(degrees.iter().enumerate().map(|(i, &d)| (format!("g{i}"), d)).collect()).unwrap();
        let mut diffs = vec![LieElem::zero(); count];
        for k in 0..count {
            for i in 0..k {
                for j in i..k {
                    if degrees[i] + degrees[j] + 1 == degrees[k] && rng.gen_bool(0.7) {
                        let br = lie.bracket(&lie.gen(i), &lie.gen(j));
                        diffs[k] = &diffs[k] + &br.scaled(&q(rng.gen_range(-3..=3)));
                    }
                }
            }
        }
        let dgl = DglPresentation::new(lie, diffs).unwrap();
        if validate_dgl(&dgl, 0).is_err() {
            continue;
        }
        let n = 2 * rng.gen_range(1..=2);
        let phi = degrees
            .iter()
            .map(|&dj| {
                let mut v = SparseVec::new();
                for (i, &di) in degrees.iter().enumerate() {
                    if di + n == dj {
                        v.add_entry(i, &q(rng.gen_range(-2..=2)));
                    }
                }
                v
            })
            .collect();
        return (dgl, phi, n);
    }
}

fn quillen() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    for case in 0..100 {
        let (dgl, phi, n) = random_quillen_instance(&mut rng);
        let t = quillen_thom_model(&dgl, &phi, n).map_err(|e| format!("case {case}: {e}"))?;
        t.check_quadratic().map_err(|e| format!("case {case}: {e}"))?;
        t.check_order_preserving().map_err(|e| format!("case {case}: {e}"))?;
        validate_dgl(&t, 8).map_err(|e| format!("case {case}: {e}"))?;
    }
    let (_, h) = load("cp2-formal.cdga");
    let f = formal_quillen_model(&h, 4).map_err(|e| e.to_string())?;
    let phi = f.euler_dual_map(&h.parse_element("x").unwrap()).map_err(|e| e.to_string())?;
    ensure!(phi[0].is_zero(), "phi(v1) != 0");
    ensure!(phi[1] == SparseVec::unit(0), "phi(v3) != v1");
    let t = quillen_thom_model(&f.dgl, &phi, 2).map_err(|e| e.to_string())?;
    ensure!(t.is_zero_differential(), "d is not zero");
    let names: Vec<(String, u32)> = t.lie().generators().iter().map(|g| (g.name.clone(), g.degree)).collect();
    ensure!(
        names == [("u0".into(), 1), ("s2v1".into(), 3), ("s2v3".into(), 5)],
        "generators {names:?}"
    );
    Ok("100 random models valid, CP2 hand check".into())
}

fn hodge() -> Outcome {
    let mut cases = 0;
    for (name, src, a) in corpus() {
        if src.presentation.generators.iter().all(|g| g.hodge_type.is_none()) {
            continue;
        }
        let s: SplitMixedHodgeCdga = src.splitting(&a).map_err(|e| e.to_string())?;
        let top = limit(&a);
        for k in 1..=top / 2 {
            for e in closed_classes(s.cdga(), 2 * k) {
                if !check_euler_purity(&s, &e, i64::from(k)) {
                    continue;
                }
                let f = thom_mhs(&s, &e, k).map_err(|err| format!("{name}: {err}"))?;
                f.validate(top + 2 * k).map_err(|err| format!("{name}: {err}"))?;
                let cmp = compare_with_thom_weights(&f, top + 2 * k).map_err(|err| format!("{name}: {err}"))?;
                ensure!(cmp.is_none(), "{name} e={}: differs in degree {cmp:?}", a.display(&e));
                cases += 1;
            }
        }
    }
    let (src, a) = load("mixed-hodge.cdga");
    let s = src.splitting(&a).map_err(|e| e.to_string())?;
    let mixed = a.parse_element("x + z").unwrap();
    ensure!(!check_euler_purity(&s, &mixed, 1), "x + z passed the purity check");
    ensure!(matches!(thom_mhs(&s, &mixed, 1), Err(Error::EulerNotPure { k: 1 })), "impure e accepted");
    ensure!(cases > 0, "no pure Euler classes");
    Ok(format!("{cases} pure Euler classes, mixed class rejected"))
}

fn run_twice(args: &[String]) -> Result<(), String> {
    let once = || {
        Command::new(env!("CARGO_BIN_EXE_thomforge"))
            .args(args)
            .env_remove("THOMFORGE_TRUNCATE")
            .output()
            .map_err(|e| e.to_string())
    };
    let (a, b) = (once()?, once()?);
    ensure!(
        a.stdout == b.stdout && a.stderr == b.stderr && a.status.code() == b.status.code(),
        "output differs: {}",
        args.join(" ")
    );
    ensure!(
        matches!(a.status.code(), Some(0 | 2)),
        "{} exited with {:?}: {}",
        args.join(" "),
        a.status.code(),
        String::from_utf8_lossy(&a.stderr)
    );
    Ok(())
}

fn cli_determinism() -> Outcome {
    let mut runs: Vec<Vec<String>> = Vec::new();
    let v = |xs: &[&str]| xs.iter().map(|s| s.to_string()).collect::<Vec<_>>();
    for (name, _, a) in corpus() {
        let p = fixture_path(&name);
        runs.push(v(&["validate", &p]));
        runs.push(v(&["cohomology", &p]));
        if a.generators().iter().all(|g| g.degree >= 2) && name != "mixed-hodge.cdga" {
            runs.push(v(&["formality", &p]));
        }
    }
    let (cpn, cp2f, mt, hodge) = (
        fixture_path("cpN.cdga"),
        fixture_path("cp2-formal.cdga"),
        fixture_path("massey-thom.cdga"),
        fixture_path("cp2-hodge.cdga"),
    );
    runs.push(v(&["thom", "--base", &cpn, "--euler", "x", "--rank", "2"]));
    runs.push(v(&["formality", &mt, "--euler", "t", "--rank", "2"]));
    runs.push(v(&["minimal-model", &cp2f, "--up-to", "6"]));
    runs.push(v(&["minimal-model", &fixture_path("cp2-weighted.cdga"), "--up-to", "6"]));
    runs.push(v(&["massey", &mt, "x", "x", "y", "--euler", "t", "--rank", "2"]));
    runs.push(v(&["massey", &fixture_path("heisenberg.cdga"), "a", "b", "b"]));
    runs.push(v(&["quillen", "--cohomology", &cp2f, "--euler", "x", "--rank", "2"]));
    runs.push(v(&["hodge-thom", "--input", &hodge, "--euler", "x", "--chern-rank", "1"]));
    runs.push(v(&[
        "hodge-thom", "--input", &fixture_path("mixed-hodge.cdga"), "--euler", "x + z", "--chern-rank", "1",
    ]));
    runs.push(v(&["validate", &fixture_path("cp2.json"), "--seed", "7", "--samples", "200"]));
    let mut count = 0;
    for args in &runs {
        for format in ["text", "json"] {
            let mut full = vec!["--format".to_string(), format.to_string()];
            full.extend(args.iter().cloned());
            run_twice(&full)?;
            count += 1;
        }
    }
    Ok(format!("{count} invocations byte-identical"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("kernel laws", 10, kernel_laws),
        ("Thom isomorphism", 5, thom_isomorphism),
        ("CP^3 -> CP^4 reproduction", 60, cp_reproduction),
        ("formality transfer", 5, formality_transfer),
        ("non-formal Thom witness", 30, non_formal_witness),
        ("purity implies formality", 10, purity_formality),
        ("minimal model", 60, minimal_models),
        ("Massey bookkeeping", 5, massey_bookkeeping),
        ("Quillen model", 30, quillen),
        ("Hodge consistency", 5, hodge),
        ("CLI determinism", 120, cli_determinism),
    ];
    let mut failed = 0;
    for (i, (name, budget, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = std::panic::catch_unwind(run).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let elapsed = start.elapsed();
        let result = match result {
            Ok(_) if elapsed > Duration::from_secs(*budget) => {
                Err(format!("took {:.2}s, budget {budget}s", elapsed.as_secs_f64()))
            }
            r => r,
        };
        let secs = elapsed.as_secs_f64();
        match result {
            Ok(detail) => println!("criterion {:>2} {name}: PASS ({secs:.2}s) {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} {name}: FAIL ({secs:.2}s) {why}", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
