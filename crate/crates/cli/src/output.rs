//! Report rendering.

use catfourier::{Report, Status};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
}

pub fn emit_report(report: &Report, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("reports serialize");
            s.push('\n');
            s
        }
        Format::Text => text(report),
    }
}

fn text(report: &Report) -> String {
    let width = report.records.iter().map(|r| r.id.chars().count()).max().unwrap_or(0);
    let mut out = String::new();
    for r in &report.records {
        let status = match r.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skipped => "SKIP",
        };
        let level = serde_json::to_value(r.level).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default();
        out.push_str(&format!("{status}  {:<width$}  {:<22}  {}", r.id, level, r.anchor));
        if let Some(l) = &r.locus {
            out.push_str(&format!("  at ({}): {} {} vs {}", l.objects.join(","), l.quantity, l.lhs, l.rhs));
        }
        if let Some(n) = &r.note {
            out.push_str(&format!("  [{n}]"));
        }
        if let Some(ms) = r.elapsed_ms {
            out.push_str(&format!("  {ms} ms"));
        }
        out.push('\n');
    }
    let fails = report.failures().count();
    let skipped = report.records.iter().filter(|r| r.status == Status::Skipped).count();
    out.push_str(&format!(
        "{} checks: {} passed, {fails} failed, {skipped} skipped\n",
        report.len(),
        report.len() - fails - skipped
    ));
    out
}
