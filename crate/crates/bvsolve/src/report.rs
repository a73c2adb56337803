//! Aligned plain-text rendering of experiment reports.

use std::fmt::Write;

use bvsolve_core::analysis::format_sci;
use bvsolve_core::experiments::Report;

fn sci(v: f64) -> String {
    format_sci(v, 1)
}

fn opt(v: Option<f64>) -> String {
    v.map(sci).unwrap_or_else(|| "-".to_string())
}

pub fn render_text(report: &Report) -> String {
    let mut out = String::new();
    let _ = write!(out, "{}", report.experiment);
    if let Some(n) = report.degree {
        let _ = write!(out, "  n = {n}");
    }
    if let Some(k) = report.kappa_2 {
        let _ = write!(out, "  kappa_2 = {}", sci(k));
        if let Some(p) = report.published_kappa_2 {
            let _ = write!(out, " (published {})", sci(p));
        }
    }
    out.push('\n');

    if !report.conditions.is_empty() {
        let _ = writeln!(out, "  {:>4}  {:>10}  {:>10}", "n", "kappa_inf", "published");
        for row in &report.conditions {
            let _ = writeln!(
                out,
                "  {:>4}  {:>10}  {:>10}",
                row.degree,
                sci(row.kappa_inf),
                opt(row.published)
            );
        }
    }

    if !report.systems.is_empty() {
        let _ = writeln!(
            out,
            "  {:<4}  {:>8} {:>8}  {:>8} {:>8}  {:>8} {:>8}  {:>8} {:>8}",
            "rhs", "gamma", "ref", "err_MM", "ref", "err_TNBD", "ref", "err_A\\b", "ref"
        );
        for row in &report.systems {
            let p = row.published.as_ref();
            let _ = writeln!(
                out,
                "  {:<4}  {:>8} {:>8}  {:>8} {:>8}  {:>8} {:>8}  {:>8} {:>8}",
                row.rhs,
                opt(row.gamma),
                opt(p.and_then(|p| p.gamma)),
                sci(row.err_mm),
                opt(p.map(|p| p.err_mm)),
                sci(row.err_tnbd),
                opt(p.map(|p| p.err_tnbd)),
                sci(row.err_gauss),
                opt(p.map(|p| p.err_gauss)),
            );
        }
    }

    for check in &report.checks {
        let tag = if check.passed { "ok" } else { "MISMATCH" };
        let _ = writeln!(out, "  [{tag}] {}", check.description);
    }
    out
}
