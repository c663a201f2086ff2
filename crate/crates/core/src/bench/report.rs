//! Benchmark run reports and their CSV form.
//!
//! Columns: `mode,seed,n,m,M,N,d,method,seconds,adds,subs,muls,divs,pows,
//! mean_common_digits`. Numeric fields use the shortest round-tripping
//! decimal form, so parsing a report and re-serializing it reproduces the
//! bytes. Operation fields are empty when a run was not instrumented, and the
//! accuracy field is empty on the reference method's row.

use crate::bench::{BenchError, BenchMode};
use crate::ops::OpCounter;

pub const REPORT_HEADER: &str =
    "mode,seed,n,m,M,N,d,method,seconds,adds,subs,muls,divs,pows,mean_common_digits";

#[derive(Debug, Clone, PartialEq)]
pub struct MethodReport {
    pub method: String,
    pub seconds: f64,
    pub ops: Option<OpCounter>,
    pub mean_common_digits: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunReport {
    pub mode: BenchMode,
    pub seed: u64,
    pub n: usize,
    pub m: usize,
    /// Curve count M of the configuration (echoed even when unused).
    pub curves: usize,
    /// Total evaluation points per dataset (grid cells for surfaces).
    pub points: usize,
    pub dim: usize,
    pub methods: Vec<MethodReport>,
}

fn opt_u64(v: Option<u64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

fn opt_f64(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

impl RunReport {
    pub fn to_csv_string(&self) -> String {
        let mut out = String::from(REPORT_HEADER);
        out.push('\n');
        for m in &self.methods {
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n",
                self.mode.as_str(),
                self.seed,
                self.n,
                self.m,
                self.curves,
                self.points,
                self.dim,
                m.method,
                m.seconds,
                opt_u64(m.ops.map(|o| o.adds)),
                opt_u64(m.ops.map(|o| o.subs)),
                opt_u64(m.ops.map(|o| o.muls)),
                opt_u64(m.ops.map(|o| o.divs)),
                opt_u64(m.ops.map(|o| o.pows)),
                opt_f64(m.mean_common_digits),
            ));
        }
        out
    }

    pub fn from_csv_str(text: &str) -> Result<RunReport, BenchError> {
        let bad = |what: &str| BenchError::Config(format!("malformed report CSV: {what}"));
        let mut lines = text.lines();
        let header = lines.next().ok_or_else(|| bad("empty file"))?;
        if header != REPORT_HEADER {
            return Err(bad("unexpected header"));
        }
        let mut report: Option<RunReport> = None;
        for line in lines {
            if line.is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split(',').collect();
            if fields.len() != 15 {
                return Err(bad("wrong field count"));
            }
            let mode = BenchMode::parse(fields[0]).ok_or_else(|| bad("unknown mode"))?;
            let parse_u = |s: &str| s.parse::<u64>().map_err(|_| bad("integer field"));
            let parse_us = |s: &str| s.parse::<usize>().map_err(|_| bad("integer field"));
            let parse_f = |s: &str| s.parse::<f64>().map_err(|_| bad("real field"));
            let ops = if fields[9].is_empty() {
                None
            } else {
                Some(OpCounter {
                    adds: parse_u(fields[9])?,
                    subs: parse_u(fields[10])?,
                    muls: parse_u(fields[11])?,
                    divs: parse_u(fields[12])?,
                    pows: parse_u(fields[13])?,
                })
            };
            let method = MethodReport {
                method: fields[7].to_string(),
                seconds: parse_f(fields[8])?,
                ops,
                mean_common_digits: if fields[14].is_empty() {
                    None
                } else {
                    Some(parse_f(fields[14])?)
                },
            };
            match &mut report {
                None => {
                    report = Some(RunReport {
                        mode,
                        seed: parse_u(fields[1])?,
                        n: parse_us(fields[2])?,
                        m: parse_us(fields[3])?,
                        curves: parse_us(fields[4])?,
                        points: parse_us(fields[5])?,
                        dim: parse_us(fields[6])?,
                        methods: vec![method],
                    });
                }
                Some(r) => {
                    if r.mode != mode || r.seed != parse_u(fields[1])? {
                        return Err(bad("rows disagree on the configuration"));
                    }
                    r.methods.push(method);
                }
            }
        }
        report.ok_or_else(|| bad("no data rows"))
    }

    /// Wall time of one method, when present.
    pub fn seconds_of(&self, method: &str) -> Option<f64> {
        self.methods
            .iter()
            .find(|m| m.method == method)
            .map(|m| m.seconds)
    }
}
