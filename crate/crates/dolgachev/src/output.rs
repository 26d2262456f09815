//! Structured output: one top-level shape `{meta, rows, ledger}` rendered
//! to JSON or CSV with every numeric value exact (integers as integers,
//! rationals as `numer/denom` strings).

use serde::Serialize;

use crate::invariant::{b_closed_form, coefficients};
use crate::lattice::SurfaceParams;
use crate::verify::VerifyReport;

#[derive(Debug, Clone, Serialize)]
pub struct Meta {
    pub p: Option<i64>,
    pub q: Option<i64>,
    pub n_max: Option<i64>,
    pub seed: Option<u64>,
}

/// One `(p, q, n)` line of the invariants table. Non-coprime requests
/// keep only `(p, q)` and carry a notice in `note`.
#[derive(Debug, Clone, Serialize)]
pub struct InvariantRow {
    pub p: i64,
    pub q: i64,
    pub n: Option<i64>,
    pub sum_m: Option<i64>,
    pub a: Option<i64>,
    pub b: Option<i64>,
    pub closed_form_a: Option<i64>,
    pub closed_form_b: Option<i64>,
    pub a_match: Option<bool>,
    pub b_match: Option<bool>,
    /// Known third coefficient, present only for `p = q = 1`.
    pub c: Option<i64>,
    pub note: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckRow {
    pub check: String,
    pub kind: String,
    pub status: String,
    pub details: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct LedgerRow {
    pub location: String,
    pub printed_form: String,
    pub working_form: String,
    pub witness: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct InvariantsReport {
    pub meta: Meta,
    pub rows: Vec<InvariantRow>,
    pub ledger: Vec<LedgerRow>,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReportDoc {
    pub meta: Meta,
    pub rows: Vec<CheckRow>,
    pub ledger: Vec<LedgerRow>,
}

impl InvariantsReport {
    pub fn any_mismatch(&self) -> bool {
        self.rows
            .iter()
            .any(|r| r.a_match == Some(false) || r.b_match == Some(false))
    }
}

/// Rows for one requested pair; a non-coprime pair produces a single
/// notice row.
pub fn invariant_rows(p: i64, q: i64, n_max: i64) -> Vec<InvariantRow> {
    let params = match SurfaceParams::new(p, q) {
        Ok(params) => params,
        Err(_) => {
            return vec![InvariantRow {
                p,
                q,
                n: None,
                sum_m: None,
                a: None,
                b: None,
                closed_form_a: None,
                closed_form_b: None,
                a_match: None,
                b_match: None,
                c: None,
                note: "not coprime".to_string(),
            }]
        }
    };
    (1..=n_max)
        .map(|n| {
            let inv = coefficients(n, &params).expect("n >= 1");
            let closed_a = 3 * n;
            let closed_b = b_closed_form(n, &params);
            InvariantRow {
                p: params.p(),
                q: params.q(),
                n: Some(n),
                sum_m: Some(inv.sum_m),
                a: Some(inv.a),
                b: Some(inv.b),
                closed_form_a: Some(closed_a),
                closed_form_b: Some(closed_b),
                a_match: Some(inv.a == closed_a),
                b_match: Some(inv.b == closed_b),
                c: inv.c_known,
                note: String::new(),
            }
        })
        .collect()
}

pub fn verify_report_doc(report: &VerifyReport) -> VerifyReportDoc {
    VerifyReportDoc {
        meta: Meta { p: None, q: None, n_max: Some(report.depth.n_max()), seed: Some(report.seed) },
        rows: report
            .checks
            .iter()
            .map(|c| CheckRow {
                check: c.name.clone(),
                kind: if c.hard { "hard" } else { "diagnostic" }.to_string(),
                status: c.status.as_str().to_string(),
                details: c.details.clone(),
            })
            .collect(),
        ledger: report
            .ledger
            .iter()
            .map(|e| LedgerRow {
                location: e.location.clone(),
                printed_form: e.printed_form.clone(),
                working_form: e.working_form.clone(),
                witness: e.witness.clone(),
            })
            .collect(),
    }
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable report");
    s.push('\n');
    s
}

fn opt_str<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map(|x| x.to_string()).unwrap_or_default()
}

pub fn invariants_csv(report: &InvariantsReport) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record([
        "p", "q", "n", "sum_m", "a", "b", "closed_form_a", "closed_form_b", "a_match", "b_match",
        "c", "note",
    ])
    .unwrap();
    for r in &report.rows {
        w.write_record([
            r.p.to_string(),
            r.q.to_string(),
            opt_str(&r.n),
            opt_str(&r.sum_m),
            opt_str(&r.a),
            opt_str(&r.b),
            opt_str(&r.closed_form_a),
            opt_str(&r.closed_form_b),
            opt_str(&r.a_match),
            opt_str(&r.b_match),
            opt_str(&r.c),
            r.note.clone(),
        ])
        .unwrap();
    }
    String::from_utf8(w.into_inner().unwrap()).unwrap()
}

pub fn verify_csv(doc: &VerifyReportDoc) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record([
        "record", "check", "kind", "status", "details", "location", "printed_form",
        "working_form", "witness",
    ])
    .unwrap();
    for r in &doc.rows {
        w.write_record([
            "check",
            &r.check,
            &r.kind,
            &r.status,
            &r.details,
            "",
            "",
            "",
            "",
        ])
        .unwrap();
    }
    for e in &doc.ledger {
        w.write_record([
            "ledger",
            "",
            "",
            "",
            "",
            &e.location,
            &e.printed_form,
            &e.working_form,
            &e.witness,
        ])
        .unwrap();
    }
    String::from_utf8(w.into_inner().unwrap()).unwrap()
}
