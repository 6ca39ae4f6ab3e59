use std::io::{self, Write};

use catalan_core::{BigInt, Error, ScanState, SequenceSpec, VerificationReport};
use clap::ValueEnum;
use serde_json::{json, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    /// Human-readable text; space-separated terms for sequences
    Plain,
    Json,
    Csv,
    /// `index value` per line
    OeisBfile,
    /// Aligned columns
    PlainTable,
}

pub enum Outcome {
    Pass,
    Fail,
}

fn unsupported(what: &str, f: Format) -> Error {
    Error::Usage(format!("{what} output does not support --format {f:?}").to_lowercase())
}

fn emit(text: &str) -> Result<(), Error> {
    let mut out = io::stdout().lock();
    out.write_all(text.as_bytes())?;
    out.flush()?;
    Ok(())
}

pub fn sequence(spec: &SequenceSpec, terms: &[BigInt], format: Format) -> Result<(), Error> {
    let pairs = spec.indices().zip(terms);
    let text = match format {
        Format::Plain => join(terms, " ") + "\n",
        Format::Csv => join(terms, ",") + "\n",
        Format::Json => {
            let v = json!({
                "sequence": spec.kind.to_string(),
                "start": spec.start,
                "terms": terms.iter().map(|t| t.to_string()).collect::<Vec<_>>(),
            });
            serde_json::to_string_pretty(&v)? + "\n"
        }
        Format::OeisBfile => pairs.map(|(i, t)| format!("{i} {t}\n")).collect(),
        Format::PlainTable => {
            let rows: Vec<(String, String)> = pairs.map(|(i, t)| (i.to_string(), t.to_string())).collect();
            let wi = rows.iter().map(|r| r.0.len()).max().unwrap_or(0).max(1);
            let wv = rows.iter().map(|r| r.1.len()).max().unwrap_or(0);
            let mut s = format!("{:>wi$}  {:>wv$}\n", "i", spec.kind.to_string());
            for (i, t) in rows {
                s += &format!("{i:>wi$}  {t:>wv$}\n");
            }
            s
        }
    };
    emit(&text)
}

fn join(terms: &[BigInt], sep: &str) -> String {
    terms.iter().map(|t| t.to_string()).collect::<Vec<_>>().join(sep)
}

pub fn reports(reports: &[VerificationReport], many: bool, format: Format) -> Result<(), Error> {
    let text = match format {
        Format::Json if many => {
            let all: Vec<Value> = reports.iter().map(serde_json::to_value).collect::<Result<_, _>>()?;
            serde_json::to_string_pretty(&all)? + "\n"
        }
        Format::Json => reports[0].to_json() + "\n",
        Format::Plain | Format::PlainTable => {
            let mut s = String::new();
            for r in reports {
                s += &report_line(r);
            }
            if many {
                let failed = reports.iter().filter(|r| !r.passed()).count();
                s += &format!("{} identities, {} failed\n", reports.len(), failed);
            }
            s
        }
        f => return Err(unsupported("verify", f)),
    };
    emit(&text)
}

fn report_line(r: &VerificationReport) -> String {
    let ranges: Vec<String> = r.domain.ranges.iter().map(|(k, v)| format!("{k}={v}")).collect();
    let timing = r.elapsed_ms.map(|ms| format!(" in {ms} ms")).unwrap_or_default();
    let early = if r.stopped_early { ", stopped early" } else { "" };
    let mut s = format!(
        "{}: {} ({} cells over {}{early}{timing})\n",
        r.identity,
        r.status,
        r.cells,
        ranges.join(", ")
    );
    const SHOWN: usize = 10;
    for m in r.mismatches.iter().take(SHOWN) {
        s += &format!("  mismatch at {m}\n");
    }
    if r.mismatches.len() > SHOWN {
        s += &format!("  ... {} more\n", r.mismatches.len() - SHOWN);
    }
    s
}

pub fn scan(state: &ScanState, format: Format, timing: bool) -> Result<(), Error> {
    let text = match format {
        Format::Json => {
            let mut v = serde_json::to_value(state)?;
            if !timing {
                if let Some(obj) = v.as_object_mut() {
                    obj.remove("elapsed_ms");
                }
            }
            serde_json::to_string_pretty(&v)? + "\n"
        }
        Format::Plain | Format::PlainTable => {
            let mut s = state.summary();
            if timing {
                s += &format!(" in {} ms", state.elapsed_ms);
            }
            s.push('\n');
            for ce in &state.counterexamples {
                s += &format!("  counterexample {ce}\n");
            }
            for cell in &state.zero_divisor_cells {
                s += &format!("  zero divisor at {cell}\n");
            }
            s
        }
        f => return Err(unsupported("scan", f)),
    };
    emit(&text)
}
