//! The presentation file format.
//!
//! ```text
//! field Q            (or: field GF <p>)
//! vars X Y_1 Y_2
//! rel X*Y_1
//! expect edd = 1
//! ```
//!
//! Expect keys: edd, dim, minprimes, sing, jn(<n>), cond_ii(<n>),
//! cond_iii(<n>).  Blank lines and `#` comments are tolerated.

use serde::Serialize;
use std::fmt;
use workbench_core::text::parse_polynomial;
use workbench_core::{Field, Ideal, MonomialOrder, PolyRing, Polynomial};

/// A positioned parse failure (1-based line and column).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FileParseError {
    pub line: usize,
    pub col: usize,
    pub msg: String,
}

impl fmt::Display for FileParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, col {}: {}", self.line, self.col, self.msg)
    }
}

impl std::error::Error for FileParseError {}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldSpec {
    Rationals,
    PrimeField(u64),
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::PrimeField(p) => write!(f, "GF {p}"),
        }
    }
}

/// One `expect` line, with values still in source form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExpectKey {
    Edd(usize),
    Dim(usize),
    MinPrimes(Vec<Vec<String>>),
    Sing(Vec<String>),
    Jn(i64, Vec<String>),
    CondII(i64, bool),
    CondIII(i64, bool),
}

impl ExpectKey {
    pub fn operation_name(&self) -> String {
        match self {
            ExpectKey::Edd(_) => "edd".into(),
            ExpectKey::Dim(_) => "dim".into(),
            ExpectKey::MinPrimes(_) => "minprimes".into(),
            ExpectKey::Sing(_) => "sing".into(),
            ExpectKey::Jn(n, _) => format!("jn({n})"),
            ExpectKey::CondII(n, _) => format!("cond_ii({n})"),
            ExpectKey::CondIII(n, _) => format!("cond_iii({n})"),
        }
    }
}

/// A structurally validated presentation file, prior to choosing a field
/// instantiation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PresentationFile {
    pub field: FieldSpec,
    pub vars: Vec<String>,
    pub relations: Vec<String>,
    pub expects: Vec<(ExpectKey, usize)>,
}

fn split_top_level_commas(text: &str) -> Vec<String> {
    let mut parts = Vec::new();
    let mut depth = 0usize;
    let mut current = String::new();
    for c in text.chars() {
        match c {
            '(' => {
                depth += 1;
                current.push(c);
            }
            ')' => {
                depth = depth.saturating_sub(1);
                current.push(c);
            }
            ',' if depth == 0 => {
                parts.push(current.trim().to_string());
                current.clear();
            }
            _ => current.push(c),
        }
    }
    if !current.trim().is_empty() {
        parts.push(current.trim().to_string());
    }
    parts
}

fn parse_ideal_literal(text: &str, line: usize) -> Result<Vec<String>, FileParseError> {
    let t = text.trim();
    if !t.starts_with('(') || !t.ends_with(')') {
        return Err(FileParseError {
            line,
            col: 1,
            msg: format!("expected an ideal literal like (X, Y), found {t}"),
        });
    }
    Ok(split_top_level_commas(&t[1..t.len() - 1]))
}

fn parse_ideal_set_literal(text: &str, line: usize) -> Result<Vec<Vec<String>>, FileParseError> {
    let t = text.trim();
    if !t.starts_with('{') || !t.ends_with('}') {
        return Err(FileParseError {
            line,
            col: 1,
            msg: format!("expected a set literal like {{(X), (Y)}}, found {t}"),
        });
    }
    let inner = &t[1..t.len() - 1];
    // Split on commas that sit outside parentheses.
    let mut ideals = Vec::new();
    let mut depth = 0usize;
    let mut current = String::new();
    for c in inner.chars() {
        match c {
            '(' => {
                depth += 1;
                current.push(c);
            }
            ')' => {
                depth = depth.saturating_sub(1);
                current.push(c);
            }
            ',' if depth == 0 => {
                if !current.trim().is_empty() {
                    ideals.push(parse_ideal_literal(current.trim(), line)?);
                }
                current.clear();
            }
            _ => current.push(c),
        }
    }
    if !current.trim().is_empty() {
        ideals.push(parse_ideal_literal(current.trim(), line)?);
    }
    if ideals.is_empty() {
        return Err(FileParseError { line, col: 1, msg: "empty prime set".into() });
    }
    Ok(ideals)
}

fn parse_indexed_key(key: &str, name: &str) -> Option<Result<i64, ()>> {
    let rest = key.strip_prefix(name)?;
    let inner = rest.strip_prefix('(')?.strip_suffix(')')?;
    Some(inner.trim().parse::<i64>().map_err(|_| ()))
}

/// Parses the structural grammar; polynomial syntax is validated later,
/// once the coefficient field is known.
pub fn parse_presentation(text: &str) -> Result<PresentationFile, FileParseError> {
    let mut field: Option<FieldSpec> = None;
    let mut vars: Option<Vec<String>> = None;
    let mut relations = Vec::new();
    let mut expects = Vec::new();
    for (idx, raw_line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw_line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (head, rest) = match line.split_once(char::is_whitespace) {
            Some((h, r)) => (h, r.trim()),
            None => (line, ""),
        };
        match head {
            "field" => {
                if field.is_some() {
                    return Err(FileParseError {
                        line: line_no,
                        col: 1,
                        msg: "duplicate field line".into(),
                    });
                }
                let spec = if rest == "Q" {
                    FieldSpec::Rationals
                } else if let Some(ptxt) = rest
                    .strip_prefix("GF")
                    .map(|s| s.trim().trim_start_matches('(').trim_end_matches(')').trim())
                {
                    let p: u64 = ptxt.parse().map_err(|_| FileParseError {
                        line: line_no,
                        col: 7,
                        msg: format!("invalid modulus {ptxt}"),
                    })?;
                    if workbench_core::PrimeField::new(p).is_err() {
                        return Err(FileParseError {
                            line: line_no,
                            col: 7,
                            msg: format!("{p} not prime"),
                        });
                    }
                    FieldSpec::PrimeField(p)
                } else {
                    return Err(FileParseError {
                        line: line_no,
                        col: 7,
                        msg: format!("unknown field {rest}; use Q or GF <p>"),
                    });
                };
                field = Some(spec);
            }
            "vars" => {
                if vars.is_some() {
                    return Err(FileParseError {
                        line: line_no,
                        col: 1,
                        msg: "duplicate vars line".into(),
                    });
                }
                let names: Vec<String> = rest.split_whitespace().map(|s| s.to_string()).collect();
                if names.is_empty() {
                    return Err(FileParseError {
                        line: line_no,
                        col: 6,
                        msg: "vars line lists no variables".into(),
                    });
                }
                vars = Some(names);
            }
            "rel" => {
                if rest.is_empty() {
                    return Err(FileParseError {
                        line: line_no,
                        col: 5,
                        msg: "rel line without a polynomial".into(),
                    });
                }
                relations.push(rest.to_string());
            }
            "expect" => {
                let (key_text, value_text) =
                    rest.split_once('=').ok_or_else(|| FileParseError {
                        line: line_no,
                        col: 8,
                        msg: "expect line needs `key = value`".into(),
                    })?;
                let key_text = key_text.trim();
                let value_text = value_text.trim();
                let bad_value = |msg: String| FileParseError { line: line_no, col: 8, msg };
                let key = if key_text == "edd" {
                    ExpectKey::Edd(value_text.parse().map_err(|_| {
                        bad_value(format!("edd expects an integer, found {value_text}"))
                    })?)
                } else if key_text == "dim" {
                    ExpectKey::Dim(value_text.parse().map_err(|_| {
                        bad_value(format!("dim expects an integer, found {value_text}"))
                    })?)
                } else if key_text == "minprimes" {
                    ExpectKey::MinPrimes(parse_ideal_set_literal(value_text, line_no)?)
                } else if key_text == "sing" {
                    ExpectKey::Sing(parse_ideal_literal(value_text, line_no)?)
                } else if let Some(n) = parse_indexed_key(key_text, "jn") {
                    let n = n.map_err(|_| bad_value("jn(<n>) needs an integer index".into()))?;
                    ExpectKey::Jn(n, parse_ideal_literal(value_text, line_no)?)
                } else if let Some(n) = parse_indexed_key(key_text, "cond_ii") {
                    let n =
                        n.map_err(|_| bad_value("cond_ii(<n>) needs an integer index".into()))?;
                    ExpectKey::CondII(n, parse_bool(value_text, line_no)?)
                } else if let Some(n) = parse_indexed_key(key_text, "cond_iii") {
                    let n =
                        n.map_err(|_| bad_value("cond_iii(<n>) needs an integer index".into()))?;
                    ExpectKey::CondIII(n, parse_bool(value_text, line_no)?)
                } else {
                    return Err(bad_value(format!("unknown expect key {key_text}")));
                };
                expects.push((key, line_no));
            }
            other => {
                return Err(FileParseError {
                    line: line_no,
                    col: 1,
                    msg: format!("unknown directive {other}"),
                });
            }
        }
    }
    let field = field.ok_or(FileParseError { line: 1, col: 1, msg: "missing field line".into() })?;
    let vars = vars.ok_or(FileParseError { line: 1, col: 1, msg: "missing vars line".into() })?;
    Ok(PresentationFile { field, vars, relations, expects })
}

fn parse_bool(text: &str, line: usize) -> Result<bool, FileParseError> {
    match text {
        "true" => Ok(true),
        "false" => Ok(false),
        other => Err(FileParseError {
            line,
            col: 1,
            msg: format!("expected true or false, found {other}"),
        }),
    }
}

/// One parsed file bound to a concrete coefficient field.
#[derive(Debug, Clone)]
pub struct Bundle<F: Field> {
    pub file: PresentationFile,
    pub ring: PolyRing<F>,
    pub relations: Vec<Polynomial<F>>,
}

impl<F: Field> Bundle<F> {
    pub fn relations_ideal(&self) -> workbench_core::Result<Ideal<F>> {
        Ideal::new(&self.ring, self.relations.clone())
    }

    pub fn parse_poly(&self, text: &str) -> Result<Polynomial<F>, FileParseError> {
        parse_polynomial(&self.ring, text)
            .map_err(|e| FileParseError { line: 0, col: e.col, msg: e.msg })
    }

    pub fn parse_ideal(&self, gens: &[String]) -> Result<Ideal<F>, FileParseError> {
        let polys = gens
            .iter()
            .map(|g| self.parse_poly(g))
            .collect::<Result<Vec<_>, _>>()?;
        Ideal::new(&self.ring, polys)
            .map_err(|e| FileParseError { line: 0, col: 1, msg: e.to_string() })
    }
}

/// Binds a parsed file to a field instance, checking every polynomial.
pub fn instantiate<F: Field>(
    file: &PresentationFile,
    field: F,
    order: MonomialOrder,
) -> Result<Bundle<F>, FileParseError> {
    let ring = PolyRing::new(field, file.vars.clone(), order)
        .map_err(|e| FileParseError { line: 2, col: 6, msg: e.to_string() })?;
    let mut relations = Vec::new();
    for (idx, text) in file.relations.iter().enumerate() {
        let poly = parse_polynomial(&ring, text).map_err(|e| FileParseError {
            line: 3 + idx,
            col: e.col,
            msg: e.msg,
        })?;
        relations.push(poly);
    }
    // Metadata polynomials must live in the declared ring too.
    let check_list = |gens: &Vec<String>| -> Result<(), FileParseError> {
        for g in gens {
            parse_polynomial(&ring, g)
                .map_err(|e| FileParseError { line: 0, col: e.col, msg: e.msg })?;
        }
        Ok(())
    };
    for (key, _) in &file.expects {
        match key {
            ExpectKey::Sing(gens) | ExpectKey::Jn(_, gens) => check_list(gens)?,
            ExpectKey::MinPrimes(ideals) => {
                for gens in ideals {
                    check_list(gens)?;
                }
            }
            _ => {}
        }
    }
    Ok(Bundle { file: file.clone(), ring, relations })
}

/// A parsed file bound to whichever field it declares.
pub enum TypedBundle {
    Q(Bundle<workbench_core::Rationals>),
    Gf(Bundle<workbench_core::PrimeField>),
}

pub fn load(text: &str, order: MonomialOrder) -> Result<TypedBundle, FileParseError> {
    let file = parse_presentation(text)?;
    match file.field {
        FieldSpec::Rationals => Ok(TypedBundle::Q(instantiate(
            &file,
            workbench_core::Rationals,
            order,
        )?)),
        FieldSpec::PrimeField(p) => {
            let field = workbench_core::PrimeField::new(p)
                .map_err(|e| FileParseError { line: 1, col: 7, msg: e.to_string() })?;
            Ok(TypedBundle::Gf(instantiate(&file, field, order)?))
        }
    }
}

/// Canonical text for a presentation (relations reprinted canonically).
pub fn serialize_bundle<F: Field>(bundle: &Bundle<F>) -> String {
    let mut out = String::new();
    out.push_str(&format!("field {}\n", bundle.file.field));
    out.push_str(&format!("vars {}\n", bundle.ring.vars().join(" ")));
    for rel in &bundle.relations {
        out.push_str(&format!("rel {rel}\n"));
    }
    out
}

/// Serializes a bare presentation (used by the construct commands).
pub fn serialize_presentation<F: Field>(
    field: FieldSpec,
    pres: &workbench_core::Presentation<F>,
) -> String {
    let mut out = String::new();
    out.push_str(&format!("field {field}\n"));
    out.push_str(&format!("vars {}\n", pres.ring().vars().join(" ")));
    for rel in pres.relations().generators() {
        out.push_str(&format!("rel {rel}\n"));
    }
    out
}

pub fn ideal_to_string<F: Field>(ideal: &Ideal<F>) -> String {
    if ideal.generators().is_empty() {
        return "(0)".to_string();
    }
    let gens: Vec<String> = ideal.generators().iter().map(|g| g.to_string()).collect();
    format!("({})", gens.join(", "))
}
