//! Surface model configuration: a line-oriented key/value file with matrix
//! rows, exact integers only.
//!
//! ```text
//! name p1xp1
//! rank 2
//! gram 0 1
//! gram 1 0
//! canonical -2 -2
//! q 0
//! p_g 0
//! generator 1 0
//! generator 0 1
//! ```

use std::fmt;
use std::path::Path;

use wallkit_core::lattice::{NumClass, SurfaceModel};
use wallkit_core::{presets, Int};

/// A schema error with the line it occurred on.
#[derive(Debug)]
pub struct SchemaError {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for SchemaError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

fn schema_err(line: usize, message: impl Into<String>) -> SchemaError {
    SchemaError {
        line,
        message: message.into(),
    }
}

fn parse_int(line: usize, field: &str, token: &str) -> Result<Int, SchemaError> {
    token
        .parse::<Int>()
        .map_err(|_| schema_err(line, format!("{field}: `{token}` is not an integer")))
}

fn parse_row(line: usize, field: &str, tokens: &[&str]) -> Result<Vec<Int>, SchemaError> {
    tokens.iter().map(|t| parse_int(line, field, t)).collect()
}

/// Parse the surface schema from text. The model is not yet validated; the
/// caller decides whether to run validation and how to report it.
pub fn parse_surface(text: &str) -> Result<SurfaceModel, SchemaError> {
    let mut name: Option<String> = None;
    let mut rank: Option<usize> = None;
    let mut gram: Vec<Vec<Int>> = Vec::new();
    let mut canonical: Option<Vec<Int>> = None;
    let mut q: Option<u32> = None;
    let mut p_g: Option<u32> = None;
    let mut generators: Vec<Vec<Int>> = Vec::new();

    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut tokens = line.split_whitespace();
        let key = tokens.next().expect("nonempty line");
        let rest: Vec<&str> = tokens.collect();
        match key {
            "name" => {
                if rest.len() != 1 {
                    return Err(schema_err(lineno, "name takes exactly one token"));
                }
                name = Some(rest[0].to_string());
            }
            "rank" => {
                if rest.len() != 1 {
                    return Err(schema_err(lineno, "rank takes exactly one integer"));
                }
                rank = Some(rest[0].parse().map_err(|_| {
                    schema_err(lineno, format!("rank: `{}` is not a positive integer", rest[0]))
                })?);
            }
            "gram" => gram.push(parse_row(lineno, "gram", &rest)?),
            "canonical" => canonical = Some(parse_row(lineno, "canonical", &rest)?),
            "q" => {
                if rest.len() != 1 {
                    return Err(schema_err(lineno, "q takes exactly one integer"));
                }
                q = Some(rest[0].parse().map_err(|_| {
                    schema_err(lineno, format!("q: `{}` is not a non-negative integer", rest[0]))
                })?);
            }
            "p_g" => {
                if rest.len() != 1 {
                    return Err(schema_err(lineno, "p_g takes exactly one integer"));
                }
                p_g = Some(rest[0].parse().map_err(|_| {
                    schema_err(lineno, format!("p_g: `{}` is not a non-negative integer", rest[0]))
                })?);
            }
            "generator" => generators.push(parse_row(lineno, "generator", &rest)?),
            other => return Err(schema_err(lineno, format!("unknown key `{other}`"))),
        }
    }

    let total = text.lines().count();
    let missing = |field: &str| schema_err(total, format!("missing required key `{field}`"));
    Ok(SurfaceModel {
        name: name.ok_or_else(|| missing("name"))?,
        rank: rank.ok_or_else(|| missing("rank"))?,
        gram,
        canonical: NumClass::new(canonical.ok_or_else(|| missing("canonical"))?),
        q: q.ok_or_else(|| missing("q"))?,
        p_g: p_g.ok_or_else(|| missing("p_g"))?,
        ample_generators: generators.into_iter().map(NumClass::new).collect(),
    })
}

/// Resolve a `--surface` argument: an existing file path wins; otherwise a
/// bundled model name (p1xp1, p2, hyperbolic) is accepted.
pub fn resolve_surface(arg: &str) -> Result<SurfaceModel, String> {
    let path = Path::new(arg);
    if path.exists() {
        let text = std::fs::read_to_string(path)
            .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
        return parse_surface(&text).map_err(|e| format!("{}: {e}", path.display()));
    }
    for m in presets::all() {
        if m.name == arg {
            return Ok(m);
        }
    }
    Err(format!(
        "`{arg}` is neither an existing surface file nor a bundled model name"
    ))
}
