//! Text formats for field elements, matrices and generator files.
//!
//! A matrix is written row by row, rows separated by `;` and entries by `,`, each
//! entry the decimal value of its bit pattern: over GF(4), `1,2;2,3`.
//!
//! A generator file holds one matrix per line. Lines starting with `#` are comments,
//! except for directives of the form `# key: value`:
//!
//! - `q`: field order, needed unless the caller supplies it;
//! - `kind`: the [`StringKind`] the generators are meant to realize;
//! - `phi`: upper-triangular form matrix the generators must preserve;
//! - `bilinear-only`: comma-separated generator indices that only need to preserve
//!   the polar form of `phi`.

use std::fmt::Write as _;

use symstring_core::strings::GeneratorString;
use symstring_core::{Field, FieldElement, Matrix, StringKind};

use crate::error::{Error, Result};

pub fn format_matrix(m: &Matrix) -> String {
    format!("{m:?}")
}

pub fn format_elements(v: &[FieldElement]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

fn parse_element(field: &Field, s: &str, line: usize) -> Result<FieldElement> {
    let v: u32 = s.trim().parse().map_err(|_| Error::parse(line, format!("not an integer: {s:?}")))?;
    field.element(v).map_err(|e| Error::parse(line, e.to_string()))
}

/// Comma-separated field elements.
pub fn parse_elements(field: &Field, s: &str) -> Result<Vec<FieldElement>> {
    s.split(',').map(|t| parse_element(field, t, 1)).collect()
}

fn parse_matrix_at(field: &Field, s: &str, line: usize) -> Result<Matrix> {
    let rows = s
        .trim()
        .split(';')
        .map(|r| r.split(',').map(|t| parse_element(field, t, line)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    Matrix::from_rows(field, &rows).map_err(|e| Error::parse(line, e.to_string()))
}

pub fn parse_matrix(field: &Field, s: &str) -> Result<Matrix> {
    parse_matrix_at(field, s, 1)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorFile {
    pub field: Field,
    pub kind: Option<StringKind>,
    pub phi: Option<Matrix>,
    pub bilinear_only: Vec<usize>,
    pub gens: Vec<Matrix>,
}

impl GeneratorFile {
    pub fn from_string(gs: &GeneratorString) -> GeneratorFile {
        let bilinear_only =
            gs.quadratic_isometry_required().iter().enumerate().filter(|(_, &quad)| !quad).map(|(i, _)| i).collect();
        GeneratorFile {
            field: gs.field().clone(),
            kind: Some(gs.kind),
            phi: Some(gs.space.phi().clone()),
            bilinear_only,
            gens: gs.gens.clone(),
        }
    }

    /// Per-generator flag: must the quadratic form (not just its polar form) be preserved.
    pub fn quadratic_required(&self) -> Vec<bool> {
        (0..self.gens.len()).map(|i| !self.bilinear_only.contains(&i)).collect()
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        writeln!(out, "# q: {}", self.field.q()).unwrap();
        if let Some(k) = self.kind {
            writeln!(out, "# kind: {k}").unwrap();
        }
        if let Some(phi) = &self.phi {
            writeln!(out, "# phi: {}", format_matrix(phi)).unwrap();
        }
        if !self.bilinear_only.is_empty() {
            let idx: Vec<String> = self.bilinear_only.iter().map(|i| i.to_string()).collect();
            writeln!(out, "# bilinear-only: {}", idx.join(",")).unwrap();
        }
        for g in &self.gens {
            writeln!(out, "{}", format_matrix(g)).unwrap();
        }
        out
    }

    /// Parses a generator file; `q` overrides or supplies the field order.
    pub fn parse(text: &str, q: Option<u32>) -> Result<GeneratorFile> {
        let mut directives: Vec<(usize, String, String)> = Vec::new();
        let mut rows: Vec<(usize, &str)> = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() {
                continue;
            }
            if let Some(comment) = line.strip_prefix('#') {
                if let Some((key, value)) = comment.split_once(':') {
                    directives.push((i + 1, key.trim().to_ascii_lowercase(), value.trim().to_string()));
                }
                continue;
            }
            rows.push((i + 1, line));
        }
        let file_q = directives
            .iter()
            .find(|(_, k, _)| k == "q")
            .map(|(line, _, v)| v.parse::<u32>().map_err(|_| Error::parse(*line, "q must be an integer")))
            .transpose()?;
        let q = q.or(file_q).ok_or_else(|| Error::parse(0, "field order unknown: add a `# q:` line or pass --q"))?;
        let field = Field::from_order(q).map_err(|e| Error::parse(0, e.to_string()))?;
        let mut file =
            GeneratorFile { field: field.clone(), kind: None, phi: None, bilinear_only: Vec::new(), gens: Vec::new() };
        for (line, key, value) in &directives {
            match key.as_str() {
                "kind" => {
                    file.kind = Some(
                        StringKind::from_name(value)
                            .ok_or_else(|| Error::parse(*line, format!("unknown kind {value:?}")))?,
                    )
                }
                "phi" => file.phi = Some(parse_matrix_at(&field, value, *line)?),
                "bilinear-only" => {
                    file.bilinear_only = value
                        .split(',')
                        .map(|t| t.trim().parse().map_err(|_| Error::parse(*line, "expected generator indices")))
                        .collect::<Result<_>>()?
                }
                _ => {}
            }
        }
        for (line, row) in rows {
            file.gens.push(parse_matrix_at(&field, row, line)?);
        }
        if file.gens.is_empty() {
            return Err(Error::parse(0, "no generator matrices"));
        }
        let d = file.gens[0].rows();
        if let Some((i, _)) = file.gens.iter().enumerate().find(|(_, g)| g.rows() != d || g.cols() != d) {
            return Err(Error::parse(0, format!("generator {i} is not {d}x{d}")));
        }
        Ok(file)
    }
}
