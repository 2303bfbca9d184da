//! Report rendering.
//!
//! JSON is the full report, pretty-printed with `wall_time_ms` as the last
//! field. CSV carries a series: `#` comment lines echo the configuration, then
//! a header row and one row per point with exact numerators and denominators.

use std::fmt::Write;

use crate::experiment::{ExperimentConfig, ExperimentReport, Format, Results};

/// Prefix of the only line that varies between otherwise identical runs.
pub const WALL_TIME_COMMENT: &str = "# wall_time_ms: ";

pub fn render(report: &ExperimentReport) -> String {
    match report.config.format() {
        Format::Json => {
            let mut out = serde_json::to_string_pretty(report).expect("reports serialize");
            out.push('\n');
            out
        }
        Format::Csv => csv(report),
    }
}

fn comment(out: &mut String, key: &str, value: impl serde::Serialize) {
    let value = serde_json::to_string(&value).expect("config values serialize");
    writeln!(out, "# {key}: {value}").unwrap();
}

fn csv(report: &ExperimentReport) -> String {
    let mut out = String::new();
    comment(&mut out, "command", report.command);
    comment(&mut out, "semantics", report.semantics);
    match &report.config {
        ExperimentConfig::Merge {
            mode,
            p,
            q,
            source,
            horizon,
            depth,
            ..
        } => {
            comment(&mut out, "mode", mode);
            comment(&mut out, "p", p);
            comment(&mut out, "q", q);
            comment(&mut out, "source", source);
            comment(&mut out, "horizon", horizon);
            comment(&mut out, "k", depth);
        }
        ExperimentConfig::Diagonal {
            predictor,
            cross,
            n,
            ..
        } => {
            comment(&mut out, "predictor", predictor);
            comment(&mut out, "cross", cross);
            comment(&mut out, "n", n);
        }
        _ => unreachable!("only series are rendered as CSV"),
    }
    comment(&mut out, "config", &report.config);
    writeln!(out, "{WALL_TIME_COMMENT}{}", report.wall_time_ms).unwrap();
    match &report.results {
        Results::Merge(m) => {
            out.push_str("n,prefix,tv_num,tv_den\n");
            for p in &m.trajectory {
                writeln!(
                    out,
                    "{},{},{},{}",
                    p.n,
                    p.prefix,
                    p.tv.numer(),
                    p.tv.denom()
                )
                .unwrap();
            }
        }
        Results::Diagonal(d) => {
            out.push_str("i,bit,mass_num,mass_den,envelope_num,envelope_den\n");
            for (i, (mass, bound)) in d.mass_trace.iter().zip(&d.envelope).enumerate() {
                let bit = d.diagonal.get(i).expect("one bit per mass").as_char();
                writeln!(
                    out,
                    "{},{bit},{},{},{},{}",
                    i + 1,
                    mass.numer(),
                    mass.denom(),
                    bound.numer(),
                    bound.denom()
                )
                .unwrap();
            }
        }
        _ => unreachable!("only series are rendered as CSV"),
    }
    out
}

/// `text` with the wall-time field or comment removed.
pub fn strip_wall_time(text: &str) -> String {
    text.lines()
        .filter(|l| {
            !l.starts_with(WALL_TIME_COMMENT) && !l.trim_start().starts_with("\"wall_time_ms\"")
        })
        .collect::<Vec<_>>()
        .join("\n")
}
