//! Machine-readable command reports and their plain-text rendering.
//!
//! A report serializes as
//!
//! ```json
//! {"version": 1, "input_digest": "sha256:…", "command": "imt", "result": {…}}
//! ```
//!
//! Rationals appear as canonical strings (`"3"`, `"-1/2"`), matrices as
//! `{"rows", "cols", "entries"}` with `entries` a list of rows.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::format::render_matrix_file;
use crate::imt::{ImtReport, TwoSidedReport};
use crate::matrix::{Matrix, Vector};
use crate::rref::RowOp;
use crate::solver::{RightInverse, SolveOutcome};

pub const REPORT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub version: u32,
    /// `sha256:` followed by the hex digest of the canonical rendering of
    /// every input matrix, concatenated.
    pub input_digest: String,
    #[serde(flatten)]
    pub body: ReportBody,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "command", content = "result", rename_all = "snake_case")]
pub enum ReportBody {
    Rref(RrefResult),
    Solve(SolveResult),
    Inverse(InverseResult),
    Imt(Box<ImtReport>),
    Gen(GenResult),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RrefResult {
    pub reduced: Matrix,
    pub pivot_cols: Vec<usize>,
    pub rank: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trace: Option<Vec<RowOp>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveResult {
    pub outcome: SolveOutcome,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InverseResult {
    pub right_inverse: RightInverse,
    /// Check of `(A, X)`; absent when no right inverse exists.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub two_sided: Option<TwoSidedReport>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenResult {
    pub seed: u64,
    pub size: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rank: Option<usize>,
    pub op_count: usize,
    pub entry_bound: u32,
    pub matrix: Matrix,
}

pub fn input_digest(inputs: &[&Matrix]) -> String {
    let mut hasher = Sha256::new();
    for m in inputs {
        hasher.update(render_matrix_file(m).as_bytes());
    }
    let hex: String = hasher
        .finalize()
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect();
    format!("sha256:{hex}")
}

impl ReportDocument {
    pub fn new(inputs: &[&Matrix], body: ReportBody) -> Self {
        ReportDocument {
            version: REPORT_VERSION,
            input_digest: input_digest(inputs),
            body,
        }
    }

    pub fn command(&self) -> &'static str {
        match self.body {
            ReportBody::Rref(_) => "rref",
            ReportBody::Solve(_) => "solve",
            ReportBody::Inverse(_) => "inverse",
            ReportBody::Imt(_) => "imt",
            ReportBody::Gen(_) => "gen",
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    /// Human-readable rendering. Every value shown here also appears in the
    /// JSON form.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        match &self.body {
            ReportBody::Rref(r) => render_rref(&mut out, r),
            ReportBody::Solve(s) => render_solve(&mut out, s),
            ReportBody::Inverse(i) => render_inverse(&mut out, i),
            ReportBody::Imt(r) => render_imt(&mut out, r),
            ReportBody::Gen(g) => out.push_str(&render_matrix_file(&g.matrix)),
        }
        out
    }
}

fn push_matrix(out: &mut String, label: &str, m: &Matrix) {
    let _ = writeln!(out, "{label} ({}x{}):", m.rows(), m.cols());
    for row in m.row_iter() {
        let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
        let _ = writeln!(out, "  [{}]", cells.join(", "));
    }
}

fn fmt_vector(v: &Vector) -> String {
    let cells: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("[{}]", cells.join(", "))
}

fn fmt_indices(ix: &[usize]) -> String {
    let cells: Vec<String> = ix.iter().map(ToString::to_string).collect();
    format!("[{}]", cells.join(", "))
}

fn render_rref(out: &mut String, r: &RrefResult) {
    push_matrix(out, "reduced row-echelon form", &r.reduced);
    let _ = writeln!(out, "pivot columns: {}", fmt_indices(&r.pivot_cols));
    let _ = writeln!(out, "rank: {}", r.rank);
    if let Some(trace) = &r.trace {
        let _ = writeln!(out, "row operations ({}):", trace.len());
        for (k, op) in trace.iter().enumerate() {
            let _ = writeln!(out, "  {:>3}. {op}", k + 1);
        }
    }
}

fn render_solve(out: &mut String, s: &SolveResult) {
    match &s.outcome {
        SolveOutcome::Unique { x } => {
            let _ = writeln!(out, "unique solution");
            let _ = writeln!(out, "x = {}", fmt_vector(x));
        }
        SolveOutcome::Infinite {
            particular,
            nullspace_basis,
        } => {
            let _ = writeln!(out, "infinitely many solutions");
            let _ = writeln!(out, "particular = {}", fmt_vector(particular));
            let _ = writeln!(out, "nullspace basis ({}):", nullspace_basis.len());
            for v in nullspace_basis {
                let _ = writeln!(out, "  {}", fmt_vector(v));
            }
        }
        SolveOutcome::Infeasible { witness_row } => {
            let _ = writeln!(out, "infeasible");
            let _ = writeln!(
                out,
                "row {witness_row} of the reduced augmented matrix reads [0 ... 0 | 1]"
            );
        }
    }
}

fn render_inverse(out: &mut String, i: &InverseResult) {
    match &i.right_inverse {
        RightInverse::Exists { inverse } => {
            push_matrix(out, "right inverse X", inverse);
        }
        RightInverse::Missing { first_infeasible } => {
            // Unit vectors are numbered from 1 in prose.
            let _ = writeln!(
                out,
                "no right inverse; Ax = e{} infeasible (index {first_infeasible})",
                first_infeasible + 1
            );
        }
    }
    if let Some(t) = &i.two_sided {
        let _ = writeln!(out, "AX = I: {}", t.ab_is_identity);
        let _ = writeln!(out, "XA = I: {}", t.ba_is_identity);
        if let Some(off) = &t.offending_column {
            let _ = writeln!(
                out,
                "XA - I column {} is nonzero: {} (A z = 0: {})",
                off.index,
                fmt_vector(&off.column),
                off.annihilated_by_a
            );
        }
    }
}

fn render_imt(out: &mut String, r: &ImtReport) {
    let _ = writeln!(out, "invertible matrix theorem, n = {}", r.size);
    for (name, value) in r.predicates() {
        let _ = writeln!(out, "  {name:<20} {value}");
    }
    let _ = writeln!(out, "verdict (all agree): {}", r.verdict);
    let _ = writeln!(out, "rank: {}", r.rank);
    let _ = writeln!(out, "pivot columns: {}", fmt_indices(&r.pivot_cols));
    let _ = writeln!(out, "row operations to reduced form: {}", r.row_trace.len());
    if let Some(x) = &r.inverse {
        push_matrix(out, "inverse witness", x);
    }
    if let Some(i) = r.first_infeasible_unit {
        let _ = writeln!(out, "Ax = e{} infeasible (index {i})", i + 1);
    }
    if let Some(v) = &r.dependence_witness {
        let _ = writeln!(out, "dependence witness: {}", fmt_vector(v));
    }
    if let Some(v) = &r.nontrivial_solution {
        let _ = writeln!(out, "nontrivial solution of Ax = 0: {}", fmt_vector(v));
    }
    if let Some(v) = &r.infeasible_b {
        let _ = writeln!(out, "infeasible b: {}", fmt_vector(v));
    }
    let p = &r.probes;
    let _ = writeln!(
        out,
        "random probes: {}/{} feasible (seed {}), certificate {}, divergence {}",
        p.feasible, p.count, p.seed, p.certificate, p.divergence
    );
    if let Some(b) = &p.first_infeasible {
        let _ = writeln!(out, "first infeasible probe: {}", fmt_vector(b));
    }
}
