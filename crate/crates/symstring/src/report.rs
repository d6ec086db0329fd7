//! The JSON run report written to standard output by every command.

use serde::Serialize;
use symstring_core::{GeneratorString, PolytopeData, VerificationReport};

use crate::text::format_matrix;

/// How a run ended; also determines the process exit status.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Pass,
    Fail,
    CapExceeded,
    UsageError,
}

impl Outcome {
    pub fn exit_code(self) -> i32 {
        match self {
            Outcome::Pass => 0,
            Outcome::Fail => 1,
            Outcome::CapExceeded => 2,
            Outcome::UsageError => 3,
        }
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Params {
    pub q: Option<u32>,
    pub d: Option<usize>,
    #[serde(rename = "type")]
    pub kind: Option<String>,
    pub scalars: Option<Vec<u16>>,
    pub mode: Option<String>,
    pub cap: Option<usize>,
    pub threads: Option<usize>,
    pub gens: Option<String>,
    pub out: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Construction {
    pub kind: String,
    pub q: u32,
    pub d: usize,
    pub rank: usize,
    pub scalars: Vec<u16>,
    pub lambda: Option<u16>,
    pub mu: Option<u16>,
    pub alpha: Option<u16>,
    pub phi: String,
    pub generators: Vec<String>,
}

impl Construction {
    pub fn new(gs: &GeneratorString) -> Construction {
        Construction {
            kind: gs.kind.name().to_string(),
            q: gs.field().q(),
            d: gs.dim(),
            rank: gs.rank(),
            scalars: gs.scalars.iter().map(|s| s.0).collect(),
            lambda: gs.meta.lambda.map(|x| x.0),
            mu: gs.meta.mu.map(|x| x.0),
            alpha: gs.meta.alpha.map(|x| x.0),
            phi: format_matrix(gs.space.phi()),
            generators: gs.gens.iter().map(format_matrix).collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Verification {
    pub kind: Option<String>,
    pub q: u32,
    pub d: usize,
    pub rank: usize,
    pub involutions: bool,
    pub isometries: Option<bool>,
    pub string_condition: bool,
    pub intersection_property: bool,
    pub ip_mode: &'static str,
    pub group_order: u128,
    pub order_method: &'static str,
    pub expected_order: Option<u128>,
    pub order_matches: Option<bool>,
    pub schlafli: Vec<u64>,
    pub passed: bool,
}

impl From<&VerificationReport> for Verification {
    fn from(r: &VerificationReport) -> Verification {
        Verification {
            kind: r.kind.map(|k| k.name().to_string()),
            q: r.q,
            d: r.d,
            rank: r.rank,
            involutions: r.involutions,
            isometries: r.isometries,
            string_condition: r.string_condition,
            intersection_property: r.intersection_property,
            ip_mode: r.ip_mode.name(),
            group_order: r.group_order,
            order_method: r.order_method.name(),
            expected_order: r.expected_order,
            order_matches: r.order_matches(),
            schlafli: r.schlafli.clone(),
            passed: r.passed(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Polytope {
    pub rank: usize,
    pub order: u64,
    pub f_vector: Vec<usize>,
    pub schlafli: Vec<usize>,
    pub flag_count: u128,
    pub diamond: bool,
    pub incidence_file: Option<String>,
}

impl Polytope {
    pub fn new(p: &PolytopeData, diamond: bool, incidence_file: Option<String>) -> Polytope {
        Polytope {
            rank: p.rank,
            order: p.order,
            f_vector: p.f_vector.clone(),
            schlafli: p.schlafli.clone(),
            flag_count: p.flag_count,
            diamond,
            incidence_file,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ScalarSets {
    pub q: u32,
    pub a0: Vec<u16>,
    pub a: Vec<u16>,
    pub note: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub command: String,
    pub params: Params,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub scalars: Option<ScalarSets>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub construction: Option<Construction>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verification: Option<Verification>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub polytope: Option<Polytope>,
    pub outcome: Outcome,
    pub error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u128>,
}

impl RunReport {
    pub fn new(command: String, params: Params) -> RunReport {
        RunReport {
            command,
            params,
            scalars: None,
            construction: None,
            verification: None,
            polytope: None,
            outcome: Outcome::Pass,
            error: None,
            timing_ms: None,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report is always serializable");
        s.push('\n');
        s
    }

    /// Short human-readable summary.
    pub fn summary(&self) -> String {
        let mut lines = Vec::new();
        if let Some(s) = &self.scalars {
            lines.push(format!("q = {}: A0 = {:?}, A = {:?}", s.q, s.a0, s.a));
            if let Some(n) = &s.note {
                lines.push(format!("note: {n}"));
            }
        }
        if let Some(c) = &self.construction {
            lines.push(format!(
                "{} string over GF({}), d = {}, rank {}, scalars {:?}",
                c.kind, c.q, c.d, c.rank, c.scalars
            ));
        }
        if let Some(v) = &self.verification {
            lines.push(format!(
                "involutions {}, isometries {}, string condition {}, intersection property {} ({})",
                v.involutions,
                v.isometries.map_or("n/a".to_string(), |b| b.to_string()),
                v.string_condition,
                v.intersection_property,
                v.ip_mode
            ));
            let expected = v.expected_order.map_or(String::new(), |e| format!(", expected {e}"));
            lines.push(format!(
                "group order {} ({}){expected}; schlafli {:?}",
                v.group_order, v.order_method, v.schlafli
            ));
        }
        if let Some(p) = &self.polytope {
            lines.push(format!(
                "polytope rank {}: f-vector {:?}, schlafli {:?}, {} flags, diamond {}",
                p.rank, p.f_vector, p.schlafli, p.flag_count, p.diamond
            ));
            if let Some(f) = &p.incidence_file {
                lines.push(format!("incidence file written to {f}"));
            }
        }
        if let Some(e) = &self.error {
            lines.push(format!("error: {e}"));
        }
        lines.push(format!("outcome: {:?}", self.outcome));
        let mut s = lines.join("\n");
        s.push('\n');
        s
    }
}
