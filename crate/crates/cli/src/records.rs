use std::io::Write;

use serde::Serialize;
use sundial_core::castelnuovo::{CastelnuovoReport, ReplayReport};
use sundial_core::expectations::{AppendixA1Report, AppendixA2Report};

use crate::args::Format;
use crate::error::CliError;

/// A report that can be written as one JSON object per line or as TSV rows.
pub trait Record: Serialize {
    fn header() -> &'static [&'static str];
    fn rows(&self) -> Vec<Vec<String>>;
}

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map_or_else(|| "-".to_string(), T::to_string)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub cmd: &'static str,
    pub n: usize,
    pub d: u32,
    pub s: u64,
    pub l: u64,
    pub prime: u32,
    pub seed: u64,
    pub trial: u32,
    pub computed_dim: u64,
    pub expected_dim: u64,
    #[serde(rename = "match")]
    pub matches: bool,
    pub elapsed_ms: u64,
}

impl Record for VerificationReport {
    fn header() -> &'static [&'static str] {
        &[
            "cmd",
            "n",
            "d",
            "s",
            "l",
            "prime",
            "seed",
            "trial",
            "computed_dim",
            "expected_dim",
            "match",
            "elapsed_ms",
        ]
    }

    fn rows(&self) -> Vec<Vec<String>> {
        vec![vec![
            self.cmd.to_string(),
            self.n.to_string(),
            self.d.to_string(),
            self.s.to_string(),
            self.l.to_string(),
            self.prime.to_string(),
            self.seed.to_string(),
            self.trial.to_string(),
            self.computed_dim.to_string(),
            self.expected_dim.to_string(),
            self.matches.to_string(),
            self.elapsed_ms.to_string(),
        ]]
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct AppendixRow {
    pub cmd: &'static str,
    #[serde(flatten)]
    pub a1: AppendixA1Report,
    /// Absent for `d <= 5`, where the second inequality is not needed.
    pub a2: Option<AppendixA2Report>,
    pub holds: bool,
}

impl AppendixRow {
    pub fn new(a1: AppendixA1Report, a2: Option<AppendixA2Report>) -> Self {
        let holds = a1.all_hold() && a2.as_ref().is_none_or(|r| r.holds);
        AppendixRow {
            cmd: "appendix",
            a1,
            a2,
            holds,
        }
    }
}

impl Record for AppendixRow {
    fn header() -> &'static [&'static str] {
        &[
            "cmd", "n", "d", "case", "t", "r", "s", "t_p", "r_p", "s_p", "a_value", "a_holds",
            "b_value", "b_holds", "c_value", "c_holds", "a2_lhs", "a2_rhs", "a2_holds", "holds",
        ]
    }

    fn rows(&self) -> Vec<Vec<String>> {
        let a = &self.a1;
        vec![vec![
            self.cmd.to_string(),
            a.n.to_string(),
            a.d.to_string(),
            a.case.label().to_string(),
            a.t.to_string(),
            a.r.to_string(),
            a.s.to_string(),
            a.t_p.to_string(),
            a.r_p.to_string(),
            a.s_p.to_string(),
            a.a_value.to_string(),
            a.a_holds.to_string(),
            a.b_value.to_string(),
            a.b_holds.to_string(),
            a.c_value.to_string(),
            a.c_holds.to_string(),
            opt(&self.a2.as_ref().map(|r| r.lhs)),
            opt(&self.a2.as_ref().map(|r| r.rhs)),
            opt(&self.a2.as_ref().map(|r| r.holds)),
            self.holds.to_string(),
        ]]
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ReplayRecord {
    pub cmd: &'static str,
    pub prime: u32,
    pub seed: u64,
    pub mismatches: usize,
    #[serde(flatten)]
    pub report: ReplayReport,
}

impl Record for ReplayRecord {
    fn header() -> &'static [&'static str] {
        &[
            "cmd", "kind", "n", "d", "h", "case", "check", "label", "claimed", "computed", "holds",
        ]
    }

    fn rows(&self) -> Vec<Vec<String>> {
        let r = &self.report;
        let prefix = || {
            vec![
                self.cmd.to_string(),
                r.kind.clone(),
                r.n.to_string(),
                r.d.to_string(),
                opt(&r.h),
                r.case.clone(),
            ]
        };
        let mut rows = Vec::new();
        for c in &r.claims {
            let mut row = prefix();
            row.extend([
                "claim".to_string(),
                c.label.clone(),
                c.claimed.to_string(),
                c.computed.to_string(),
                c.holds.to_string(),
            ]);
            rows.push(row);
        }
        for i in &r.inequalities {
            let rep = &i.report;
            let mut row = prefix();
            row.extend([
                "castelnuovo".to_string(),
                i.label.clone(),
                format!("<= {}", rep.dim_res + rep.dim_trace),
                rep.dim_x_d.to_string(),
                rep.inequality_holds.to_string(),
            ]);
            rows.push(row);
        }
        rows
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CastelnuovoRow {
    pub cmd: &'static str,
    pub trial: u32,
    pub n: usize,
    pub d: u32,
    pub s: u64,
    pub l: u64,
    pub prime: u32,
    pub seed: u64,
    pub hyperplane: Vec<u32>,
    #[serde(flatten)]
    pub report: CastelnuovoReport,
}

impl Record for CastelnuovoRow {
    fn header() -> &'static [&'static str] {
        &[
            "cmd",
            "trial",
            "n",
            "d",
            "s",
            "l",
            "prime",
            "seed",
            "hyperplane",
            "dim_x_d",
            "dim_res",
            "dim_trace",
            "inequality_holds",
        ]
    }

    fn rows(&self) -> Vec<Vec<String>> {
        let h: Vec<String> = self.hyperplane.iter().map(u32::to_string).collect();
        vec![vec![
            self.cmd.to_string(),
            self.trial.to_string(),
            self.n.to_string(),
            self.d.to_string(),
            self.s.to_string(),
            self.l.to_string(),
            self.prime.to_string(),
            self.seed.to_string(),
            h.join(","),
            self.report.dim_x_d.to_string(),
            self.report.dim_res.to_string(),
            self.report.dim_trace.to_string(),
            self.report.inequality_holds.to_string(),
        ]]
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct FamilyRow {
    pub cmd: &'static str,
    pub n: usize,
    pub d: u32,
    pub prime: u32,
    pub seed: u64,
    pub lambda: u32,
    pub fiber_hf: usize,
    pub generic_hf: usize,
    pub expected_hf: u64,
    /// `HF(fiber) <= HF(generic pair)`.
    pub semicontinuous: bool,
    pub equal: bool,
}

impl Record for FamilyRow {
    fn header() -> &'static [&'static str] {
        &[
            "cmd",
            "n",
            "d",
            "prime",
            "seed",
            "lambda",
            "fiber_hf",
            "generic_hf",
            "expected_hf",
            "semicontinuous",
            "equal",
        ]
    }

    fn rows(&self) -> Vec<Vec<String>> {
        vec![vec![
            self.cmd.to_string(),
            self.n.to_string(),
            self.d.to_string(),
            self.prime.to_string(),
            self.seed.to_string(),
            self.lambda.to_string(),
            self.fiber_hf.to_string(),
            self.generic_hf.to_string(),
            self.expected_hf.to_string(),
            self.semicontinuous.to_string(),
            self.equal.to_string(),
        ]]
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct DimRow {
    pub cmd: &'static str,
    pub scheme: String,
    pub n: usize,
    pub d: u32,
    pub prime: u32,
    pub components: usize,
    pub hilbert_function: usize,
    pub computed_dim: usize,
}

impl Record for DimRow {
    fn header() -> &'static [&'static str] {
        &[
            "cmd",
            "n",
            "d",
            "prime",
            "components",
            "hilbert_function",
            "computed_dim",
        ]
    }

    fn rows(&self) -> Vec<Vec<String>> {
        vec![vec![
            self.cmd.to_string(),
            self.scheme.clone(),
            self.n.to_string(),
            self.d.to_string(),
            self.prime.to_string(),
            self.components.to_string(),
            self.hilbert_function.to_string(),
            self.computed_dim.to_string(),
        ]]
    }
}

/// Writes records in the chosen format; the TSV header goes out once,
/// before the first row.
pub struct Emitter<W: Write> {
    format: Format,
    out: W,
    header_written: bool,
}

impl<W: Write> Emitter<W> {
    pub fn new(format: Format, out: W) -> Self {
        Emitter {
            format,
            out,
            header_written: false,
        }
    }

    pub fn emit<R: Record>(&mut self, record: &R) -> Result<(), CliError> {
        match self.format {
            Format::Jsonl => {
                serde_json::to_writer(&mut self.out, record)?;
                writeln!(self.out)?;
            }
            Format::Tsv => {
                if !self.header_written {
                    writeln!(self.out, "{}", R::header().join("\t"))?;
                    self.header_written = true;
                }
                for row in record.rows() {
                    writeln!(self.out, "{}", row.join("\t"))?;
                }
            }
        }
        Ok(())
    }

    pub fn into_inner(self) -> W {
        self.out
    }
}
