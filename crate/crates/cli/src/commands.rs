use std::fmt::Write as _;
use std::path::Path;

use serde_json::{json, Value};
use thomforge_core::complex::{GradedReport, QuasiIsoReport, RingTable};
use thomforge_core::lie::{validate_dgl, DglPresentation};
use thomforge_core::massey::{self, MasseyProduct};
use thomforge_core::thom::{self, Suspended, ThomModel};
use thomforge_core::weight::{self, Formality};
use thomforge_core::{hodge, quillen, Cdga, Cochains, Element, Rational, SparseVec};

use crate::presentation::{Presentation, Source};
use crate::{checks, input, CliError, Command, Report, RunConfig};

pub fn dispatch(cmd: &Command, cfg: &RunConfig) -> Result<Report, CliError> {
    match cmd {
        Command::Validate { file, samples } => validate(file, *samples, cfg),
        Command::Cohomology { file, up_to } => cohomology(file, *up_to, cfg),
        Command::Thom {
            base,
            euler,
            rank,
            up_to,
        } => thom_cmd(base, euler, *rank, *up_to, cfg),
        Command::Formality {
            file,
            euler,
            rank,
            up_to,
        } => formality(file, euler.as_deref().zip(*rank), *up_to, cfg),
        Command::MinimalModel { file, up_to } => minimal_model(file, *up_to, cfg),
        Command::Massey {
            file,
            x,
            y,
            z,
            euler,
            rank,
        } => massey_cmd(file, [x, y, z], euler.as_deref().zip(*rank), cfg),
        Command::Quillen { cohomology, euler, rank } => quillen_cmd(cohomology, euler, *rank, cfg),
        Command::HodgeThom {
            input,
            euler,
            chern_rank,
            up_to,
        } => hodge_thom(input, euler, *chern_rank, *up_to, cfg),
    }
}

fn load(file: &Path, cfg: &RunConfig) -> Result<(Source, Cdga), CliError> {
    let src = Source::read(file)?;
    let t = src.truncation(cfg.truncate, cfg.default_truncate)?;
    let a = src.build(t)?;
    Ok((src, a))
}

fn parse(a: &Cdga, what: &str, expr: &str) -> Result<Element, CliError> {
    a.parse_element(expr)
        .map_err(|e| CliError::Input(format!("{what} `{expr}`: {e}")))
}

fn default_up_to(limit: Option<u32>, a: &Cdga, extra: u32) -> u32 {
    limit.unwrap_or(a.truncation().degree + extra)
}

fn fmt_q(c: &Rational) -> String {
    c.to_string()
}

fn truncation_json(a: &Cdga) -> Value {
    let t = a.truncation();
    json!({ "degree": t.degree, "mode": if t.quotient { "quotient" } else { "cutoff" } })
}

fn truncation_text(a: &Cdga) -> String {
    let t = a.truncation();
    format!("{} {}", if t.quotient { "quotient" } else { "cutoff" }, t.degree)
}

/// `sum c_i names[i]`, with non-unit coefficients in front.
fn combination(v: &SparseVec, names: &[String]) -> String {
    if v.is_zero() {
        return "0".into();
    }
    let mut s = String::new();
    for (i, c) in v.iter() {
        let c = fmt_q(c);
        let neg = c.starts_with('-');
        let abs = c.trim_start_matches('-');
        if s.is_empty() {
            if neg {
                s.push('-');
            }
        } else {
            s.push_str(if neg { " - " } else { " + " });
        }
        if abs != "1" {
            let _ = write!(s, "{abs}*");
        }
        let name = &names[i];
        if v.nnz() > 1 || abs != "1" {
            if name.contains(' ') {
                let _ = write!(s, "({name})");
            } else {
                s.push_str(name);
            }
        } else {
            s.push_str(name);
        }
    }
    s
}

fn coords_json(v: &SparseVec) -> Value {
    Value::Array(
        v.iter()
            .map(|(i, c)| json!({ "index": i, "coefficient": fmt_q(c) }))
            .collect(),
    )
}

fn graded_json<E>(r: &GradedReport<E>, show: impl Fn(&E) -> String) -> Value {
    Value::Array(
        r.degrees
            .iter()
            .map(|d| {
                let mut o = json!({
                    "degree": d.degree,
                    "dimension": d.dimension,
                    "representatives": d.representatives.iter().map(&show).collect::<Vec<_>>(),
                });
                if !d.weights.is_empty() {
                    o["weights"] = Value::Array(
                        d.weights
                            .iter()
                            .map(|w| {
                                json!({
                                    "weight": w.weight,
                                    "dimension": w.dimension,
                                    "representatives": w.representatives.iter().map(&show).collect::<Vec<_>>(),
                                })
                            })
                            .collect(),
                    );
                }
                o
            })
            .collect(),
    )
}

fn graded_text<E>(out: &mut String, r: &GradedReport<E>, show: impl Fn(&E) -> String) {
    let _ = writeln!(out, "degree  dim  classes");
    for d in &r.degrees {
        let reps: Vec<String> = if d.weights.is_empty() {
            d.representatives.iter().map(&show).collect()
        } else {
            d.weights
                .iter()
                .flat_map(|w| w.representatives.iter().map(|x| format!("{} (weight {})", show(x), w.weight)))
                .collect()
        };
        let _ = writeln!(out, "{:>6}  {:>3}  {}", d.degree, d.dimension, reps.join(", "));
    }
}

fn ring_entries<E>(ring: &RingTable, groups: &GradedReport<E>, show: impl Fn(&E) -> String) -> Vec<(String, String, String)> {
    let names = |n: u32| -> Vec<String> { groups.degrees[n as usize].representatives.iter().map(&show).collect() };
    ring.entries
        .iter()
        .filter(|e| !e.product.is_zero())
        .map(|e| {
            let l = names(e.left.0)[e.left.1].clone();
            let r = names(e.right.0)[e.right.1].clone();
            let p = combination(&e.product, &names(e.left.0 + e.right.0));
            (l, r, p)
        })
        .collect()
}

fn report_json(r: &QuasiIsoReport) -> Value {
    Value::Array(
        r.degrees
            .iter()
            .map(|d| json!({ "degree": d.degree, "source": d.source_dim, "target": d.target_dim, "rank": d.rank }))
            .collect(),
    )
}

fn report_text(out: &mut String, title: &str, r: &QuasiIsoReport) {
    let _ = writeln!(out, "{title}: {}", if r.is_quasi_iso() { "quasi-isomorphism" } else { "NOT a quasi-isomorphism" });
    for d in &r.degrees {
        let _ = writeln!(
            out,
            "  H^{}: {} -> {} rank {}",
            d.degree, d.source_dim, d.target_dim, d.rank
        );
    }
}

fn validate(file: &Path, samples: usize, cfg: &RunConfig) -> Result<Report, CliError> {
    let (src, a) = load(file, cfg)?;
    let p = &src.presentation;
    let typed = p.generators.iter().filter(|g| g.hodge_type.is_some()).count();
    let types = if typed > 0 {
        Some(src.splitting(&a)?)
    } else {
        None
    };
    let laws = checks::sample_laws(&a, samples, 8, cfg.seed);
    let positive = a.is_weighted().then(|| weight::is_positive(&a));
    let mut text = String::new();
    let _ = writeln!(text, "{}: {} generators, {}", src.origin, a.num_generators(), truncation_text(&a));
    let _ = writeln!(text, "d²=0 OK");
    if let Some(pos) = positive {
        let _ = writeln!(text, "weights OK ({})", if pos { "positive" } else { "not positive" });
    }
    if let Some(s) = &types {
        let _ = writeln!(
            text,
            "Hodge types OK (smooth bound {})",
            if s.satisfies_smooth_bound() { "holds" } else { "fails" }
        );
    }
    let _ = writeln!(
        text,
        "algebra laws: {} sampled triples (seed {}), {}",
        laws.triples,
        cfg.seed,
        if laws.passed() { "OK".to_string() } else { format!("{} FAILURES", laws.failures.len()) }
    );
    for f in &laws.failures {
        let _ = writeln!(text, "  {f}");
    }
    let canonical = Presentation::from_cdga(&a, types.as_ref().map(|s| s.types()));
    let json = json!({
        "file": src.origin,
        "generators": a.num_generators(),
        "truncation": truncation_json(&a),
        "d_squared_zero": true,
        "weights_positive": positive,
        "hodge_smooth_bound": types.as_ref().map(|s| s.satisfies_smooth_bound()),
        "laws": { "seed": cfg.seed, "triples": laws.triples, "failures": laws.failures },
        "presentation": p.to_json(),
        "canonical": canonical.to_json(),
    });
    Ok(Report {
        text,
        json,
        finding: !laws.passed(),
    })
}

fn cohomology(file: &Path, up_to: Option<u32>, cfg: &RunConfig) -> Result<Report, CliError> {
    let (src, a) = load(file, cfg)?;
    let up_to = up_to.unwrap_or(default_up_to(a.cohomology_limit(), &a, 0));
    let r = a.cohomology(up_to).map_err(input)?;
    let show = |x: &Element| a.display(x);
    let mut text = String::new();
    let _ = writeln!(text, "cohomology of {} ({}), degrees 0..={up_to}", src.origin, truncation_text(&a));
    graded_text(&mut text, &r, show);
    let json = json!({
        "file": src.origin,
        "truncation": truncation_json(&a),
        "up_to": up_to,
        "betti": r.betti(),
        "degrees": graded_json(&r, show),
    });
    Ok(Report {
        text,
        json,
        finding: false,
    })
}

fn build_thom(a: &Cdga, e: &Element, rank: u32) -> Result<ThomModel, CliError> {
    if a.is_weighted() {
        thom::thom_weights(a, e, rank, None)
    } else {
        thom::thom_model(a, e, rank)
    }
    .map_err(input)
}

fn thom_cmd(base: &Path, euler: &str, rank: u32, up_to: Option<u32>, cfg: &RunConfig) -> Result<Report, CliError> {
    let (src, a) = load(base, cfg)?;
    let e = parse(&a, "Euler class", euler)?;
    let t = build_thom(&a, &e, rank)?;
    let up_to = up_to.unwrap_or(default_up_to(t.cohomology_limit(), &a, rank));
    let c = t.cohomology(up_to).map_err(input)?;
    let base_betti = a.cohomology(up_to.saturating_sub(rank)).map_err(input)?.betti();
    let show = |w: &Suspended| t.display(w);
    let products = ring_entries(&c.ring, &c.groups, show);
    let mut text = String::new();
    let _ = writeln!(
        text,
        "Thom model of {} with e = {}, rank {rank} ({}), degrees 0..={up_to}",
        src.origin,
        a.display(&e),
        truncation_text(&a)
    );
    graded_text(&mut text, &c.groups, show);
    let _ = writeln!(text, "base betti: {:?}", base_betti);
    let _ = writeln!(text, "thom betti: {:?}", c.groups.betti());
    if products.is_empty() {
        let _ = writeln!(text, "products: all zero");
    } else {
        let _ = writeln!(text, "products:");
        for (l, r, p) in &products {
            let _ = writeln!(text, "  {l} * {r} = {p}");
        }
    }
    let json = json!({
        "file": src.origin,
        "euler": a.display(&e),
        "rank": rank,
        "euler_weight": t.euler_weight(),
        "up_to": up_to,
        "betti": c.groups.betti(),
        "base_betti": base_betti,
        "degrees": graded_json(&c.groups, show),
        "products": products.iter().map(|(l, r, p)| json!({ "left": l, "right": r, "product": p })).collect::<Vec<_>>(),
    });
    Ok(Report {
        text,
        json,
        finding: false,
    })
}

fn weighted(a: &Cdga) -> Result<Cdga, CliError> {
    if a.is_weighted() {
        Ok(a.clone())
    } else {
        weight::natural_weights(a).map_err(|e| CliError::Invalid {
            code: e.code(),
            message: format!("no natural weights: {e}"),
        })
    }
}

fn weights_json(a: &Cdga) -> Value {
    Value::Array(
        a.generators()
            .iter()
            .map(|g| json!({ "name": g.name, "degree": g.degree, "weight": g.weight }))
            .collect(),
    )
}

fn formality(file: &Path, thom_args: Option<(&str, u32)>, up_to: Option<u32>, cfg: &RunConfig) -> Result<Report, CliError> {
    let (src, a) = load(file, cfg)?;
    let w = weighted(&a)?;
    let (verdict, up_to, target) = match thom_args {
        Some((euler, rank)) => {
            let e = parse(&w, "Euler class", euler)?;
            let t = thom::thom_weights(&w, &e, rank, None).map_err(input)?;
            let up_to = up_to.unwrap_or(default_up_to(t.cohomology_limit(), &w, rank));
            let v = weight::formality_certificate(&t, up_to).map_err(input)?;
            (v, up_to, format!("Thom model A[{}], rank {rank}", w.display(&e)))
        }
        None => {
            let up_to = up_to.unwrap_or(default_up_to(w.cohomology_limit(), &w, 0));
            (weight::formality_certificate(&w, up_to).map_err(input)?, up_to, "A".to_string())
        }
    };
    let mut text = String::new();
    let _ = writeln!(text, "formality of {target} for {}, degrees 0..={up_to}", src.origin);
    let ws: Vec<String> = w
        .generators()
        .iter()
        .map(|g| format!("{}:{}/{}", g.name, g.degree, g.weight.unwrap_or_default()))
        .collect();
    let _ = writeln!(text, "weights (name:degree/weight): {}", ws.join(" "));
    let mut json = json!({
        "file": src.origin,
        "target": target,
        "up_to": up_to,
        "weights": weights_json(&w),
        "certified": verdict.is_certified(),
    });
    match &verdict {
        Formality::Certified(c) => {
            let _ = writeln!(text, "certified: cohomology is pure");
            report_text(&mut text, "inclusion of the pure truncation", &c.inclusion);
            report_text(&mut text, "projection to its cohomology", &c.projection);
            json["truncation_dims"] = Value::Array(
                c.truncation_dims
                    .iter()
                    .map(|(n, p, d)| json!({ "degree": n, "weight": p, "dimension": d }))
                    .collect(),
            );
            json["inclusion"] = report_json(&c.inclusion);
            json["projection"] = report_json(&c.projection);
        }
        Formality::Obstructed(o) => {
            let blocks: Vec<String> = o.iter().map(|(n, p)| format!("({n},{p})")).collect();
            let _ = writeln!(text, "obstructed: impure cohomology in blocks (degree,weight) {}", blocks.join(" "));
            json["obstructions"] = Value::Array(o.iter().map(|(n, p)| json!([n, p])).collect());
        }
    }
    Ok(Report {
        text,
        json,
        finding: !verdict.is_certified(),
    })
}

fn minimal_model(file: &Path, up_to: Option<u32>, cfg: &RunConfig) -> Result<Report, CliError> {
    let (src, a) = load(file, cfg)?;
    let up_to = up_to.unwrap_or(default_up_to(a.cohomology_limit(), &a, 2));
    let mm = weight::minimal_model(&a, up_to).map_err(input)?;
    let m = &mm.model;
    let qi = mm.morphism.quasi_iso_report(up_to).map_err(input)?;
    let decomposable = weight::is_decomposable(m);
    let positive = m.is_weighted().then(|| weight::is_positive(m));
    let mut text = String::new();
    let _ = writeln!(text, "minimal model of {}, degrees 0..={up_to}", src.origin);
    let _ = writeln!(text, "generator   degree  weight  differential   image");
    let mut gens = Vec::new();
    for (i, g) in m.generators().iter().enumerate() {
        let d = m.display(m.generator_differential(i));
        let img = a.display(&mm.morphism.images()[i]);
        let w = g.weight.map_or("-".to_string(), |w| w.to_string());
        let _ = writeln!(text, "{:<10}  {:>6}  {:>6}  {:<13}  {}", g.name, g.degree, w, d, img);
        gens.push(json!({ "name": g.name, "degree": g.degree, "weight": g.weight, "d": d, "image": img }));
    }
    let _ = writeln!(text, "generators per degree: {:?}", mm.generator_counts);
    let _ = writeln!(text, "decomposable: {}", if decomposable { "yes" } else { "no" });
    if let Some(p) = positive {
        let _ = writeln!(text, "positive weights: {}", if p { "yes" } else { "no" });
    }
    if !mm.capped.is_empty() {
        let _ = writeln!(text, "iteration cap reached in degrees {:?}", mm.capped);
    }
    report_text(&mut text, "comparison map", &qi);
    let json = json!({
        "file": src.origin,
        "up_to": up_to,
        "generators": gens,
        "generator_counts": mm.generator_counts,
        "decomposable": decomposable,
        "positive": positive,
        "capped": mm.capped,
        "quasi_isomorphism": qi.is_quasi_iso(),
        "comparison": report_json(&qi),
    });
    Ok(Report {
        text,
        json,
        finding: !mm.capped.is_empty() || !qi.is_quasi_iso(),
    })
}

fn massey_json<E>(p: &MasseyProduct<E>, show: impl Fn(&E) -> String) -> Value {
    json!({
        "degree": p.degree,
        "defined": p.is_defined(),
        "obstruction": p.obstruction,
        "representative": p.representative.as_ref().map(&show),
        "class": coords_json(&p.class),
        "cohomology_dimension": p.cohomology_dim,
        "indeterminacy_dimension": p.indeterminacy.len(),
        "contains_zero": p.contains_zero(),
        "nonzero": p.is_nonzero(),
    })
}

fn massey_text<E>(out: &mut String, title: &str, p: &MasseyProduct<E>, show: impl Fn(&E) -> String) {
    let _ = writeln!(out, "{title} in degree {}", p.degree);
    match &p.obstruction {
        Some(o) => {
            let _ = writeln!(out, "  not defined: {o}");
        }
        None => {
            let rep = p.representative.as_ref().map(&show).unwrap_or_default();
            let _ = writeln!(out, "  representative: {rep}");
            let _ = writeln!(out, "  dim H^{} = {}, indeterminacy dim {}", p.degree, p.cohomology_dim, p.indeterminacy.len());
            let cz = match p.contains_zero() {
                Some(true) => "yes",
                Some(false) => "no",
                None => "-",
            };
            let _ = writeln!(out, "  contains zero: {cz}");
        }
    }
}

fn massey_cmd(file: &Path, xyz: [&String; 3], thom_args: Option<(&str, u32)>, cfg: &RunConfig) -> Result<Report, CliError> {
    let (src, a) = load(file, cfg)?;
    let els = xyz
        .iter()
        .map(|s| parse(&a, "class", s))
        .collect::<Result<Vec<_>, _>>()?;
    let p = massey::triple_massey(&a, &els[0], &els[1], &els[2]).map_err(input)?;
    let show = |x: &Element| a.display(x);
    let names: Vec<String> = els.iter().map(show).collect();
    let title = format!("<{}>", names.join(", "));
    let mut text = String::new();
    let _ = writeln!(text, "Massey product in {}", src.origin);
    massey_text(&mut text, &title, &p, show);
    let mut json = json!({ "file": src.origin, "classes": names, "product": massey_json(&p, show) });
    if let Some((euler, rank)) = thom_args {
        let e = parse(&a, "Euler class", euler)?;
        let t = thom::thom_model(&a, &e, rank).map_err(input)?;
        let deg = |x: &Element| a.degree(x).ok_or_else(|| CliError::Input("Massey classes must be homogeneous".into()));
        let (dx, dy, dz) = (deg(&els[0])?, deg(&els[1])?, deg(&els[2])?);
        let c = massey::thom_triple_correspondence(&t, (&els[0], dx), (&els[1], dy), (&els[2], dz)).map_err(input)?;
        let tshow = |w: &Suspended| t.display(w);
        let ttitle = format!("<{}>", names.iter().map(|n| format!("w[{n}]")).collect::<Vec<_>>().join(", "));
        massey_text(&mut text, &format!("Thom side {ttitle}"), &c.thom, tshow);
        let _ = writeln!(
            text,
            "correspondence with e*<x, e*y, z>: {}",
            if c.is_consistent() { "consistent" } else { "INCONSISTENT" }
        );
        json["thom"] = json!({
            "euler": a.display(&e),
            "rank": rank,
            "product": massey_json(&c.thom, tshow),
            "base_product": massey_json(&c.base, show),
            "representatives_agree": c.representatives_agree,
            "base_contains_zero": c.base_contains_zero,
            "thom_contains_zero": c.thom_contains_zero,
            "consistent": c.is_consistent(),
        });
    }
    Ok(Report {
        text,
        json,
        finding: !p.is_defined(),
    })
}

fn dgl_json(d: &DglPresentation) -> Value {
    let gens = d.lie().generators();
    Value::Array(
        d.display_differential()
            .into_iter()
            .zip(gens)
            .map(|((name, diff), g)| json!({ "name": name, "degree": g.degree, "d": diff }))
            .collect(),
    )
}

fn dgl_text(out: &mut String, d: &DglPresentation) {
    for ((name, diff), g) in d.display_differential().into_iter().zip(d.lie().generators()) {
        let _ = writeln!(out, "  {name} (degree {}): d = {diff}", g.degree);
    }
}

fn quillen_cmd(file: &Path, euler: &str, rank: u32, cfg: &RunConfig) -> Result<Report, CliError> {
    let (src, a) = load(file, cfg)?;
    let up_to = default_up_to(a.cohomology_limit(), &a, 0);
    let f = quillen::formal_quillen_model(&a, up_to).map_err(input)?;
    let e = parse(&a, "Euler class", euler)?;
    let phi = f.euler_dual_map(&e).map_err(input)?;
    let t = quillen::quillen_thom_model(&f.dgl, &phi, rank).map_err(input)?;
    let top = t.lie().generators().iter().map(|g| g.degree).max().unwrap_or(0).min(6);
    let check = validate_dgl(&t, top).map_err(input)?;
    let lie = f.dgl.lie();
    let names: Vec<String> = lie.generators().iter().map(|g| g.name.clone()).collect();
    let phi_rows: Vec<(String, String)> = names
        .iter()
        .zip(&phi)
        .map(|(n, v)| (n.clone(), combination(v, &names)))
        .collect();
    let mut text = String::new();
    let _ = writeln!(text, "Quillen model of {} (cohomology up to degree {up_to})", src.origin);
    dgl_text(&mut text, &f.dgl);
    let _ = writeln!(text, "dual of multiplication by e = {}:", a.display(&e));
    for (n, v) in &phi_rows {
        let _ = writeln!(text, "  phi({n}) = {v}");
    }
    let _ = writeln!(text, "Thom space model, rank {rank}:");
    dgl_text(&mut text, &t);
    let _ = writeln!(
        text,
        "d²=0 OK on {} generators, Leibniz OK on {} bracket pairs",
        check.generators_checked, check.leibniz_pairs_checked
    );
    let json = json!({
        "file": src.origin,
        "euler": a.display(&e),
        "rank": rank,
        "base": dgl_json(&f.dgl),
        "phi": phi_rows.iter().map(|(n, v)| json!({ "generator": n, "image": v })).collect::<Vec<_>>(),
        "thom": dgl_json(&t),
        "validation": { "generators": check.generators_checked, "leibniz_pairs": check.leibniz_pairs_checked },
    });
    Ok(Report {
        text,
        json,
        finding: false,
    })
}

fn hodge_thom(file: &Path, euler: &str, k: u32, up_to: Option<u32>, cfg: &RunConfig) -> Result<Report, CliError> {
    let (src, a) = load(file, cfg)?;
    let split = src.splitting(&a)?;
    let base = split.cdga().clone();
    let e = parse(&base, "Euler class", euler)?;
    let f = match hodge::thom_mhs(&split, &e, k) {
        Ok(f) => f,
        Err(err @ thomforge_core::Error::EulerNotPure { .. }) => {
            return Err(CliError::Invalid {
                code: err.code(),
                message: format!("{}: e = {}: {err}", src.origin, base.display(&e)),
            })
        }
        Err(err) => return Err(input(err)),
    };
    let t = f.model();
    let up_to = up_to.unwrap_or(default_up_to(t.cohomology_limit(), &base, 2 * k));
    let valid = f.validate(up_to);
    let mismatch = hodge::compare_with_thom_weights(&f, up_to).map_err(input)?;
    let base_smooth = split.satisfies_smooth_bound();
    let thom_smooth = f.satisfies_smooth_bound(up_to).map_err(input)?;
    let mut text = String::new();
    let _ = writeln!(
        text,
        "Tate-twisted Thom model of {} with e = {}, Chern rank {k}, degrees 0..={up_to}",
        src.origin,
        base.display(&e)
    );
    let _ = writeln!(text, "degree  basis (type)");
    let mut degrees = Vec::new();
    for n in 0..=up_to {
        let basis = t.basis(n).map_err(input)?;
        let types = f.basis_types(n).map_err(input)?;
        if basis.is_empty() {
            continue;
        }
        let items: Vec<String> = basis
            .iter()
            .zip(&types)
            .map(|(w, ty)| format!("{} {}", t.display(w), hodge::describe_type(*ty)))
            .collect();
        let _ = writeln!(text, "{n:>6}  {}", items.join(", "));
        degrees.push(json!({
            "degree": n,
            "basis": basis.iter().zip(&types).map(|(w, (i, j))| json!({ "element": t.display(w), "type": [i, j], "weight": i + j })).collect::<Vec<_>>(),
        }));
    }
    let _ = writeln!(text, "bigrading respected by d, products and relative cup: {}", if valid.is_ok() { "yes" } else { "NO" });
    let _ = writeln!(
        text,
        "agrees with the weighted Thom model (||e|| = {}): {}",
        2 * k,
        match mismatch {
            None => "yes".to_string(),
            Some(n) => format!("NO (degree {n})"),
        }
    );
    let _ = writeln!(
        text,
        "smooth bound: base {}, Thom model {}",
        if base_smooth { "holds" } else { "fails" },
        if thom_smooth { "holds" } else { "fails" }
    );
    let json = json!({
        "file": src.origin,
        "euler": base.display(&e),
        "chern_rank": k,
        "up_to": up_to,
        "degrees": degrees,
        "bigrading_valid": valid.is_ok(),
        "agrees_with_thom_weights": mismatch.is_none(),
        "first_disagreement": mismatch,
        "smooth_bound": { "base": base_smooth, "thom": thom_smooth },
    });
    Ok(Report {
        text,
        json,
        finding: valid.is_err() || mismatch.is_some(),
    })
}
