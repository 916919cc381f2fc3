//! Text, JSON and CSV output.
//!
//! JSON reports are single-line objects with rationals as `"p/q"` strings.
//! The CSV header is [`CSV_HEADER`]; `proof_steps` is flattened into the
//! coset count and one all-steps-ok flag, and `findings` into a count.

use std::fmt::Write as _;

use cyclic_density::theorem::AlphaReport;
use cyclic_density::Rational;
use serde::Serialize;

use crate::sweep::{OutputFormat, SweepOutcome, SweepSummary};

pub const CSV_HEADER: [&str; 18] = [
    "label",
    "order",
    "cyclic_count",
    "center_order",
    "alpha_g",
    "alpha_z",
    "inequality",
    "equality",
    "structural",
    "quotient_exponent",
    "two_central",
    "four_abelian",
    "avg_order_g",
    "avg_order_z",
    "avg_inequality",
    "cosets",
    "proof_steps_ok",
    "findings",
];

fn approx(r: &Rational) -> String {
    format!("{r} (~{:.6})", r.to_f64())
}

pub fn render_report(r: &AlphaReport, format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => {
            let mut s = serde_json::to_string(r).expect("reports serialize");
            s.push('\n');
            s
        }
        OutputFormat::Csv => csv_document(std::slice::from_ref(r)),
        OutputFormat::Text => report_text(r),
    }
}

fn report_text(r: &AlphaReport) -> String {
    let mut s = String::new();
    let strict = if r.equality_holds { "equality" } else { "strict" };
    let _ = writeln!(s, "group            {}", r.label);
    let _ = writeln!(s, "order            {}", r.order);
    let _ = writeln!(s, "|C(G)|           {}", r.cyclic_count);
    let _ = writeln!(s, "alpha(G)         {}", approx(&r.alpha_g));
    let _ = writeln!(s, "|Z(G)|           {}", r.center_order);
    let _ = writeln!(s, "alpha(Z(G))      {}", approx(&r.alpha_z));
    let _ = writeln!(s, "inequality       {} ({strict})", holds(r.inequality_holds));
    let _ = writeln!(s, "equality         {}", r.equality_holds);
    let _ = writeln!(s, "structural       {}", r.structural_holds);
    let _ = writeln!(s, "exp(G/Z(G))      {}", r.quotient_exponent);
    let _ = writeln!(s, "2-central        {}", r.two_central);
    let _ = writeln!(s, "4-abelian        {}", r.four_abelian);
    let _ = writeln!(s, "o(G)             {}", approx(&r.avg_order_g));
    let _ = writeln!(s, "o(Z(G))          {}", approx(&r.avg_order_z));
    let _ = writeln!(s, "o(G) >= o(Z(G))  {}", holds(r.avg_inequality_holds));
    let _ = writeln!(s, "cosets of Z(G)   {}", r.proof_steps.len());
    let _ = writeln!(s, "  {:>5}  {:>12}  {:>8}  {:>8}  {:>8}", "k", "coset sum", "order-id", "phi-div", "ineq");
    for c in &r.proof_steps {
        let _ = writeln!(
            s,
            "  {:>5}  {:>12}  {:>8}  {:>8}  {:>8}",
            c.k,
            c.coset_sum.to_string(),
            ok(c.order_identity_ok),
            ok(c.divisibility_ok),
            ok(c.coset_inequality_ok)
        );
    }
    if r.findings.is_empty() {
        let _ = writeln!(s, "findings         none");
    } else {
        let _ = writeln!(s, "findings         {} COUNTEREXAMPLE(S)", r.findings.len());
        for f in &r.findings {
            let _ = writeln!(s, "  {}", serde_json::to_string(f).expect("findings serialize"));
        }
    }
    s
}

fn holds(b: bool) -> &'static str {
    if b {
        "holds"
    } else {
        "VIOLATED"
    }
}

fn ok(b: bool) -> &'static str {
    if b {
        "ok"
    } else {
        "FAIL"
    }
}

fn csv_row(r: &AlphaReport) -> [String; 18] {
    [
        r.label.clone(),
        r.order.to_string(),
        r.cyclic_count.to_string(),
        r.center_order.to_string(),
        r.alpha_g.to_string(),
        r.alpha_z.to_string(),
        r.inequality_holds.to_string(),
        r.equality_holds.to_string(),
        r.structural_holds.to_string(),
        r.quotient_exponent.to_string(),
        r.two_central.to_string(),
        r.four_abelian.to_string(),
        r.avg_order_g.to_string(),
        r.avg_order_z.to_string(),
        r.avg_inequality_holds.to_string(),
        r.proof_steps.len().to_string(),
        r.proof_steps_ok().to_string(),
        r.findings.len().to_string(),
    ]
}

fn csv_document(reports: &[AlphaReport]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(CSV_HEADER).expect("in-memory write");
    for r in reports {
        w.write_record(csv_row(r)).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv output is utf-8")
}

#[derive(Serialize)]
struct SweepJson<'a> {
    summary: &'a SweepSummary,
    reports: &'a [AlphaReport],
}

pub fn render_sweep(outcome: &SweepOutcome, format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => {
            let doc = SweepJson {
                summary: &outcome.summary,
                reports: &outcome.reports,
            };
            let mut s = serde_json::to_string(&doc).expect("reports serialize");
            s.push('\n');
            s
        }
        OutputFormat::Csv => csv_document(&outcome.reports),
        OutputFormat::Text => sweep_text(outcome),
    }
}

fn sweep_text(outcome: &SweepOutcome) -> String {
    let mut s = String::new();
    let width = outcome.reports.iter().map(|r| r.label.len()).max().unwrap_or(5).max(5);
    let _ = writeln!(
        s,
        "{:<width$}  {:>6}  {:>12}  {:>12}  {:>8}  {:>10}  status",
        "group", "order", "alpha(G)", "alpha(Z)", "equality", "structural"
    );
    for r in &outcome.reports {
        let status = if r.is_clean() {
            "ok".to_string()
        } else {
            format!("{} COUNTEREXAMPLE(S)", r.findings.len())
        };
        let _ = writeln!(
            s,
            "{:<width$}  {:>6}  {:>12}  {:>12}  {:>8}  {:>10}  {status}",
            r.label,
            r.order,
            r.alpha_g.to_string(),
            r.alpha_z.to_string(),
            r.equality_holds,
            r.structural_holds
        );
        for f in &r.findings {
            let _ = writeln!(s, "    {}", serde_json::to_string(f).expect("findings serialize"));
        }
    }
    let sum = &outcome.summary;
    let _ = writeln!(s);
    let _ = writeln!(s, "groups checked   {}", sum.groups_checked);
    let _ = writeln!(s, "equality cases   {}", sum.equality_cases);
    let _ = writeln!(s, "strict cases     {}", sum.strict_cases);
    let _ = writeln!(s, "counterexamples  {}", sum.counterexamples);
    if sum.skipped > 0 {
        let _ = writeln!(s, "skipped          {} (fail-fast)", sum.skipped);
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use cyclic_density::catalog::{make_cyclic, make_generalized_quaternion};
    use cyclic_density::theorem::full_report;
    use cyclic_density::SizeLimit;

    #[test]
    fn trivial_group_json() {
        let r = full_report(&make_cyclic(1, SizeLimit::default()).unwrap());
        let json = render_report(&r, OutputFormat::Json);
        assert!(json.starts_with(r#"{"label":"cyclic:1","order":1,"cyclic_count":1,"alpha_g":"1/1","#));
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        for key in [
            "label", "order", "cyclic_count", "alpha_g", "alpha_z", "equality", "structural",
            "quotient_exponent", "two_central", "four_abelian", "avg_order_g", "avg_order_z",
            "proof_steps",
        ] {
            assert!(v.get(key).is_some(), "missing {key}");
        }
    }

    #[test]
    fn q8_json_values() {
        let r = full_report(&make_generalized_quaternion(8, SizeLimit::default()).unwrap());
        let v: serde_json::Value = serde_json::from_str(&render_report(&r, OutputFormat::Json)).unwrap();
        assert_eq!(v["alpha_g"], "5/8");
        assert_eq!(v["alpha_z"], "1/1");
        assert_eq!(v["equality"], false);
        assert_eq!(v["proof_steps"].as_array().unwrap().len(), 4);
        assert_eq!(v["proof_steps"][0]["k"], 1);
    }

    #[test]
    fn csv_header_is_fixed() {
        let r = full_report(&make_cyclic(6, SizeLimit::default()).unwrap());
        let text = render_report(&r, OutputFormat::Csv);
        let mut lines = text.lines();
        assert_eq!(lines.next().unwrap(), CSV_HEADER.join(","));
        assert_eq!(
            lines.next().unwrap(),
            "cyclic:6,6,4,6,2/3,2/3,true,true,true,1,true,true,7/2,7/2,true,1,true,0"
        );
    }

    #[test]
    fn rendering_is_deterministic() {
        let g = make_generalized_quaternion(16, SizeLimit::default()).unwrap();
        for format in [OutputFormat::Text, OutputFormat::Json, OutputFormat::Csv] {
            assert_eq!(render_report(&full_report(&g), format), render_report(&full_report(&g), format));
        }
    }
}
