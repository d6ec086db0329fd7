//! Incidence files for coset polytopes.
//!
//! ```text
//! <rank> <d> <q> <order>
//! F <rank> <label>          one line per face, by rank then label
//! I <rank> <label> <label>  one line per incidence between ranks <rank> and <rank>+1
//! ```
//!
//! Labels are lowercase hex of the canonical encoding of the least coset member.
//! The faces of each rank are written in ascending label order and the incidences in
//! ascending index order, so a polytope has exactly one rendering.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::path::Path;

use symstring_core::PolytopeData;

use crate::error::{Error, Result};

pub fn render_incidence(p: &PolytopeData) -> String {
    let mut out = String::new();
    writeln!(out, "{} {} {} {}", p.rank, p.dim, p.q, p.order).unwrap();
    for (r, faces) in p.faces.iter().enumerate() {
        for label in faces {
            writeln!(out, "F {r} {}", hex::encode(label)).unwrap();
        }
    }
    for (r, inc) in p.incidences.iter().enumerate() {
        for &(a, b) in inc {
            writeln!(
                out,
                "I {r} {} {}",
                hex::encode(&p.faces[r][a as usize]),
                hex::encode(&p.faces[r + 1][b as usize])
            )
            .unwrap();
        }
    }
    out
}

fn field<T: std::str::FromStr>(tok: Option<&str>, line: usize, what: &str) -> Result<T> {
    tok.ok_or_else(|| Error::parse(line, format!("missing {what}")))?
        .parse()
        .map_err(|_| Error::parse(line, format!("invalid {what}")))
}

pub fn parse_incidence(text: &str) -> Result<PolytopeData> {
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    let (_, header) = lines.next().ok_or_else(|| Error::parse(1, "empty file"))?;
    let mut h = header.split_whitespace();
    let rank: usize = field(h.next(), 1, "rank")?;
    let dim: usize = field(h.next(), 1, "dimension")?;
    let q: u32 = field(h.next(), 1, "field order")?;
    let order: u64 = field(h.next(), 1, "group order")?;
    if rank == 0 {
        return Err(Error::parse(1, "rank must be positive"));
    }
    let mut faces: Vec<Vec<Vec<u8>>> = vec![Vec::new(); rank];
    let mut raw_inc: Vec<(usize, usize, Vec<u8>, Vec<u8>)> = Vec::new();
    for (i, l) in lines {
        let line = i + 1;
        let mut t = l.split_whitespace();
        let decode = |s: Option<&str>| -> Result<Vec<u8>> {
            hex::decode(s.ok_or_else(|| Error::parse(line, "missing label"))?)
                .map_err(|_| Error::parse(line, "label is not hex"))
        };
        match t.next() {
            Some("F") => {
                let r: usize = field(t.next(), line, "rank")?;
                if r >= rank {
                    return Err(Error::parse(line, "face rank out of range"));
                }
                faces[r].push(decode(t.next())?);
            }
            Some("I") => {
                let r: usize = field(t.next(), line, "rank")?;
                if r + 1 >= rank {
                    return Err(Error::parse(line, "incidence rank out of range"));
                }
                raw_inc.push((line, r, decode(t.next())?, decode(t.next())?));
            }
            _ => return Err(Error::parse(line, "expected an F or I line")),
        }
    }
    for f in &mut faces {
        f.sort();
    }
    let index: Vec<HashMap<&[u8], u32>> =
        faces.iter().map(|f| f.iter().enumerate().map(|(i, l)| (l.as_slice(), i as u32)).collect()).collect();
    let mut incidences = vec![Vec::new(); rank - 1];
    for (line, r, a, b) in &raw_inc {
        let ia = *index[*r].get(a.as_slice()).ok_or_else(|| Error::parse(*line, "unknown lower face"))?;
        let ib = *index[r + 1].get(b.as_slice()).ok_or_else(|| Error::parse(*line, "unknown upper face"))?;
        incidences[*r].push((ia, ib));
    }
    for inc in &mut incidences {
        inc.sort_unstable();
        inc.dedup();
    }
    Ok(PolytopeData::from_parts(rank, dim, q, order, faces, incidences)?)
}

pub fn export_incidence(p: &PolytopeData, path: &Path) -> Result<()> {
    std::fs::write(path, render_incidence(p)).map_err(|e| Error::io(path, e))
}

pub fn import_incidence(path: &Path) -> Result<PolytopeData> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_incidence(&text)
}
