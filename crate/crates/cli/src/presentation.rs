//! The `.cdga` text format and its JSON mirror.
//!
//! ```text
//! # CP^2
//! gen x : 2 weight 2 type (1,1)
//! gen y : 5
//! d y = x^3
//! truncate 10
//! ```
//!
//! `truncate N quotient` keeps only degrees `<= N` instead of treating `N` as a
//! trust cutoff.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thomforge_core::hodge::SplitMixedHodgeCdga;
use thomforge_core::{Cdga, Generator, Truncation};

use crate::CliError;

pub const PRESENTATION_SCHEMA: &str = "thomforge.presentation";
pub const PRESENTATION_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorDecl {
    pub name: String,
    pub degree: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weight: Option<i64>,
    #[serde(default, rename = "type", skip_serializing_if = "Option::is_none")]
    pub hodge_type: Option<(i64, i64)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DifferentialDecl {
    pub generator: String,
    pub expr: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TruncateDecl {
    pub degree: u32,
    #[serde(default)]
    pub quotient: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Presentation {
    pub generators: Vec<GeneratorDecl>,
    #[serde(default)]
    pub differentials: Vec<DifferentialDecl>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub truncate: Option<TruncateDecl>,
}

#[derive(Serialize, Deserialize)]
struct Document {
    schema: String,
    version: u32,
    #[serde(flatten)]
    presentation: Presentation,
}

/// A presentation together with where it came from, for error messages.
#[derive(Clone, Debug)]
pub struct Source {
    pub origin: String,
    pub presentation: Presentation,
    lines: BTreeMap<String, usize>,
}

fn line_error(origin: &str, line: usize, message: impl std::fmt::Display) -> CliError {
    CliError::Input(format!("{origin}:{line}: {message}"))
}

fn parse_int<T: std::str::FromStr>(s: &str, what: &str) -> Result<T, String> {
    s.trim().parse().map_err(|_| format!("expected {what}, found `{}`", s.trim()))
}

fn parse_type(s: &str) -> Result<(i64, i64), String> {
    let inner = s
        .trim()
        .strip_prefix('(')
        .and_then(|r| r.strip_suffix(')'))
        .ok_or_else(|| format!("expected a type `(i,j)`, found `{}`", s.trim()))?;
    let (i, j) = inner
        .split_once(',')
        .ok_or_else(|| format!("expected a type `(i,j)`, found `{}`", s.trim()))?;
    Ok((parse_int(i, "an integer")?, parse_int(j, "an integer")?))
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn parse_gen(rest: &str) -> Result<GeneratorDecl, String> {
    let (name, spec) = rest.split_once(':').ok_or("expected `gen <name> : <degree>`")?;
    let name = name.trim();
    if !is_identifier(name) {
        return Err(format!("invalid generator name `{name}`"));
    }
    let spec = spec.trim();
    let (head, tail) = spec.split_once(char::is_whitespace).unwrap_or((spec, ""));
    let mut decl = GeneratorDecl {
        name: name.to_string(),
        degree: parse_int(head, "a degree")?,
        weight: None,
        hodge_type: None,
    };
    let mut tail = tail.trim();
    while !tail.is_empty() {
        if let Some(r) = tail.strip_prefix("weight") {
            let r = r.trim_start();
            let (w, next) = r.split_once(char::is_whitespace).unwrap_or((r, ""));
            decl.weight = Some(parse_int(w, "a weight")?);
            tail = next.trim();
        } else if let Some(r) = tail.strip_prefix("type") {
            let r = r.trim_start();
            let end = r.find(')').ok_or("unterminated type")? + 1;
            decl.hodge_type = Some(parse_type(&r[..end])?);
            tail = r[end..].trim();
        } else {
            return Err(format!("unexpected `{tail}`"));
        }
    }
    Ok(decl)
}

fn parse_truncate(rest: &str) -> Result<TruncateDecl, String> {
    let mut words = rest.split_whitespace();
    let degree = parse_int(words.next().ok_or("expected `truncate <N>`")?, "a degree")?;
    let quotient = match words.next() {
        None => false,
        Some("quotient") => true,
        Some("cutoff") => false,
        Some(w) => return Err(format!("unknown truncation mode `{w}`")),
    };
    if let Some(w) = words.next() {
        return Err(format!("unexpected `{w}`"));
    }
    Ok(TruncateDecl { degree, quotient })
}

impl Source {
    pub fn parse_text(origin: &str, src: &str) -> Result<Source, CliError> {
        let mut p = Presentation::default();
        let mut lines = BTreeMap::new();
        for (i, raw) in src.lines().enumerate() {
            let n = i + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (kw, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
            match kw {
                "gen" => {
                    let g = parse_gen(rest).map_err(|m| line_error(origin, n, m))?;
                    if p.generators.iter().any(|h| h.name == g.name) {
                        return Err(line_error(origin, n, format!("generator `{}` declared twice", g.name)));
                    }
                    lines.insert(g.name.clone(), n);
                    p.generators.push(g);
                }
                "d" => {
                    let (name, expr) = rest
                        .split_once('=')
                        .ok_or_else(|| line_error(origin, n, "expected `d <name> = <expr>`"))?;
                    let name = name.trim().to_string();
                    if p.differentials.iter().any(|d| d.generator == name) {
                        return Err(line_error(origin, n, format!("differential of `{name}` given twice")));
                    }
                    lines.insert(format!("d {name}"), n);
                    p.differentials.push(DifferentialDecl {
                        generator: name,
                        expr: expr.trim().to_string(),
                    });
                }
                "truncate" => {
                    if p.truncate.is_some() {
                        return Err(line_error(origin, n, "truncation given twice"));
                    }
                    p.truncate = Some(parse_truncate(rest).map_err(|m| line_error(origin, n, m))?);
                }
                other => return Err(line_error(origin, n, format!("unknown directive `{other}`"))),
            }
        }
        Ok(Source {
            origin: origin.to_string(),
            presentation: p,
            lines,
        })
    }

    pub fn parse_json(origin: &str, src: &str) -> Result<Source, CliError> {
        let doc: Document =
            serde_json::from_str(src).map_err(|e| CliError::Input(format!("{origin}: {e}")))?;
        if doc.schema != PRESENTATION_SCHEMA || doc.version != PRESENTATION_VERSION {
            return Err(CliError::Input(format!(
                "{origin}: unsupported schema {} version {}",
                doc.schema, doc.version
            )));
        }
        Ok(Source {
            origin: origin.to_string(),
            presentation: doc.presentation,
            lines: BTreeMap::new(),
        })
    }

    pub fn parse(origin: &str, src: &str) -> Result<Source, CliError> {
        if src.trim_start().starts_with('{') {
            Source::parse_json(origin, src)
        } else {
            Source::parse_text(origin, src)
        }
    }

    pub fn read(path: &Path) -> Result<Source, CliError> {
        let origin = path.display().to_string();
        let src = std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{origin}: {e}")))?;
        Source::parse(&origin, &src)
    }

    fn locate(&self, key: &str) -> String {
        match self.lines.get(key) {
            Some(n) => format!("{}:{n}", self.origin),
            None => self.origin.clone(),
        }
    }

    fn context(&self, e: &thomforge_core::Error) -> String {
        use thomforge_core::Error as E;
        let key = match e {
            E::DegreeMismatch { generator, .. }
            | E::D2Nonzero { generator, .. }
            | E::WeightViolation { generator, .. } => format!("d {generator}"),
            E::DuplicateGenerator(g) | E::DegreeZeroGenerator(g) | E::PartialWeights(g) => g.clone(),
            E::BigradingViolation(g) => format!("d {g}"),
            _ => String::new(),
        };
        format!("{}: {e}", self.locate(&key))
    }

    /// Resolve the truncation: explicit override, then the file, then the fallback.
    pub fn truncation(&self, override_degree: Option<u32>, fallback: Option<u32>) -> Result<Truncation, CliError> {
        let quotient = self.presentation.truncate.is_some_and(|t| t.quotient);
        let degree = override_degree
            .or(self.presentation.truncate.map(|t| t.degree))
            .or(fallback)
            .ok_or_else(|| {
                CliError::Input(format!(
                    "{}: no truncation degree (add `truncate N`, pass --truncate or set THOMFORGE_TRUNCATE)",
                    self.origin
                ))
            })?;
        Ok(if quotient {
            Truncation::quotient(degree)
        } else {
            Truncation::cutoff(degree)
        })
    }

    /// Build the presentation; algebraic failures are reported as `Invalid`.
    pub fn build(&self, truncation: Truncation) -> Result<Cdga, CliError> {
        let p = &self.presentation;
        let gens: Vec<Generator> = p
            .generators
            .iter()
            .map(|g| Generator::new(g.name.clone(), g.degree))
            .collect();
        let bare = Cdga::new(gens.clone(), vec![], truncation).map_err(|e| self.invalid(&e))?;
        let mut diffs = vec![thomforge_core::Element::zero(); gens.len()];
        for d in &p.differentials {
            bare.generator_index(&d.generator).ok_or_else(|| {
                CliError::Input(format!(
                    "{}: differential of undeclared generator `{}`",
                    self.locate(&format!("d {}", d.generator)),
                    d.generator
                ))
            })?;
            let i = p.generators.iter().position(|g| g.name == d.generator).unwrap();
            diffs[i] = bare.parse_element(&d.expr).map_err(|e| {
                CliError::Input(format!("{}: {e}", self.locate(&format!("d {}", d.generator))))
            })?;
        }
        let a = Cdga::new(gens, diffs, truncation).map_err(|e| self.invalid(&e))?;
        let weighted = p.generators.iter().filter(|g| g.weight.is_some()).count();
        if weighted == 0 {
            return Ok(a);
        }
        if let Some(g) = p.generators.iter().find(|g| g.weight.is_none()) {
            return Err(self.invalid(&thomforge_core::Error::PartialWeights(g.name.clone())));
        }
        let ws: Vec<i64> = a
            .generators()
            .iter()
            .map(|g| {
                p.generators
                    .iter()
                    .find(|d| d.name == g.name)
                    .and_then(|d| d.weight)
                    .unwrap_or_default()
            })
            .collect();
        a.with_weights(&ws).map_err(|e| self.invalid(&e))
    }

    /// The split mixed Hodge structure given by the `type` annotations.
    pub fn splitting(&self, a: &Cdga) -> Result<SplitMixedHodgeCdga, CliError> {
        let mut types = Vec::new();
        for g in &self.presentation.generators {
            let t = g.hodge_type.ok_or_else(|| {
                CliError::Input(format!("{}: generator `{}` has no type", self.locate(&g.name), g.name))
            })?;
            types.push((g.name.as_str(), t));
        }
        SplitMixedHodgeCdga::new(a, &types).map_err(|e| self.invalid(&e))
    }

    fn invalid(&self, e: &thomforge_core::Error) -> CliError {
        CliError::Invalid {
            code: e.code(),
            message: self.context(e),
        }
    }
}

impl Presentation {
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for g in &self.generators {
            s.push_str(&format!("gen {} : {}", g.name, g.degree));
            if let Some(w) = g.weight {
                s.push_str(&format!(" weight {w}"));
            }
            if let Some((i, j)) = g.hodge_type {
                s.push_str(&format!(" type ({i},{j})"));
            }
            s.push('\n');
        }
        for d in &self.differentials {
            s.push_str(&format!("d {} = {}\n", d.generator, d.expr));
        }
        if let Some(t) = self.truncate {
            s.push_str(&format!("truncate {}", t.degree));
            if t.quotient {
                s.push_str(" quotient");
            }
            s.push('\n');
        }
        s
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(Document {
            schema: PRESENTATION_SCHEMA.to_string(),
            version: PRESENTATION_VERSION,
            presentation: self.clone(),
        })
        .expect("presentation serializes")
    }

    /// The presentation of a built algebra, with differentials in canonical form.
    pub fn from_cdga(a: &Cdga, types: Option<&[(i64, i64)]>) -> Presentation {
        let t = a.truncation();
        Presentation {
            generators: a
                .generators()
                .iter()
                .enumerate()
                .map(|(i, g)| GeneratorDecl {
                    name: g.name.clone(),
                    degree: g.degree,
                    weight: g.weight,
                    hodge_type: types.map(|ts| ts[i]),
                })
                .collect(),
            differentials: (0..a.num_generators())
                .filter(|&i| !a.generator_differential(i).is_zero())
                .map(|i| DifferentialDecl {
                    generator: a.generators()[i].name.clone(),
                    expr: a.display(a.generator_differential(i)),
                })
                .collect(),
            truncate: Some(TruncateDecl {
                degree: t.degree,
                quotient: t.quotient,
            }),
        }
    }
}
