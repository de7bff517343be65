//! Report documents: the machine-readable JSON schema emitted by the CLI and
//! the human-readable table rendering.

use serde::Serialize;

use crate::problem::SCHEMA_VERSION;
use crate::tolerances::Tolerances;
use crate::universality::UniversalityReport;

#[derive(Debug, Clone, Serialize)]
pub struct ComponentDoc {
    #[serde(rename = "J")]
    pub label: usize,
    pub d: usize,
    pub n: usize,
    pub restricted_dim: usize,
    pub deficiency: usize,
    pub universal: bool,
    pub trivial_code: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct WedderburnDoc {
    pub alg_dim: usize,
    pub comm_dim: usize,
    pub sum_nd: usize,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct ToleranceDoc {
    pub tol_rank: f64,
    pub tol_inv: f64,
    pub cluster_gap: f64,
}

impl From<&Tolerances> for ToleranceDoc {
    fn from(t: &Tolerances) -> Self {
        ToleranceDoc {
            tol_rank: t.rank,
            tol_inv: t.invariance,
            cluster_gap: t.cluster_gap,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ConfigDoc {
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub samples: Option<u32>,
    pub tolerances: ToleranceDoc,
}

#[derive(Debug, Clone, Serialize)]
pub struct ReportDoc {
    pub schema_version: String,
    pub input_digest: String,
    pub closure_dim: usize,
    pub components: Vec<ComponentDoc>,
    pub wedderburn: WedderburnDoc,
    pub globally_universal: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub group_order: Option<usize>,
    pub config: ConfigDoc,
}

impl From<&UniversalityReport> for ReportDoc {
    fn from(r: &UniversalityReport) -> Self {
        ReportDoc {
            schema_version: SCHEMA_VERSION.into(),
            input_digest: r.input_digest.clone(),
            closure_dim: r.closure_dim,
            components: r
                .verdicts
                .iter()
                .map(|v| ComponentDoc {
                    label: v.label,
                    d: v.dim,
                    n: v.multiplicity,
                    restricted_dim: v.restricted_dim,
                    deficiency: v.deficiency,
                    universal: v.universal,
                    trivial_code: v.trivial_code,
                })
                .collect(),
            wedderburn: WedderburnDoc {
                alg_dim: r.wedderburn.alg_dim,
                comm_dim: r.wedderburn.comm_dim,
                sum_nd: r.wedderburn.sum_nd,
                pass: r.wedderburn.pass(),
            },
            globally_universal: r.globally_universal,
            group_order: r.group_order,
            config: ConfigDoc {
                seed: r.seed,
                samples: r.samples,
                tolerances: (&r.tolerances).into(),
            },
        }
    }
}

/// Verdict document for a user-supplied code subspace.
#[derive(Debug, Clone, Serialize)]
pub struct CheckDoc {
    pub schema_version: String,
    pub input_digest: String,
    pub code: String,
    /// "ok" or "invariance_violation".
    pub status: String,
    pub max_residual: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub restricted_dim: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub deficiency: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub universal: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trivial_code: Option<bool>,
    pub config: ConfigDoc,
}

pub fn to_json<T: Serialize>(doc: &T) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("report documents always serialize");
    s.push('\n');
    s
}

/// Plain-text table: one row per isotypic component.
pub fn render_table(r: &UniversalityReport) -> String {
    let mut out = String::new();
    out.push_str("  J |   d |   n | restricted_dim | deficiency | universal\n");
    out.push_str("----+-----+-----+----------------+------------+----------\n");
    for v in &r.verdicts {
        let flag = if v.universal {
            "yes"
        } else if v.trivial_code {
            "no (trivial)"
        } else {
            "no"
        };
        out.push_str(&format!(
            "{:>3} | {:>3} | {:>3} | {:>14} | {:>10} | {}\n",
            v.label, v.dim, v.multiplicity, v.restricted_dim, v.deficiency, flag
        ));
    }
    out.push_str(&format!(
        "closure_dim = {}, globally_universal = {}\n",
        r.closure_dim, r.globally_universal
    ));
    if let Some(order) = r.group_order {
        out.push_str(&format!("group order = {order}\n"));
    }
    let w = &r.wedderburn;
    out.push_str(&format!(
        "wedderburn: alg_dim {} vs Σd² {}, comm_dim {} vs Σn² {}, Σnd {} vs n {} → {}\n",
        w.alg_dim,
        w.sum_d_sq,
        w.comm_dim,
        w.sum_n_sq,
        w.sum_nd,
        w.total_dim,
        if w.pass() { "pass" } else { "FAIL" }
    ));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::example1_generators;
    use crate::universality::analyze;

    #[test]
    fn report_document_shape() {
        let report = analyze(&example1_generators(), 7, &Tolerances::default()).unwrap();
        let doc = ReportDoc::from(&report);
        let json = to_json(&doc);
        let value: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(value["schema_version"], "1");
        assert_eq!(value["closure_dim"], 3);
        assert_eq!(value["components"][0]["J"], 0);
        assert_eq!(value["components"][0]["d"], 2);
        assert_eq!(value["components"][0]["universal"], true);
        assert_eq!(value["wedderburn"]["alg_dim"], 5);
        assert_eq!(value["wedderburn"]["pass"], true);
        assert_eq!(value["config"]["seed"], 7);
        assert!(value["group_order"].is_null());
    }

    #[test]
    fn identical_runs_serialize_identically() {
        let tols = Tolerances::default();
        let a = analyze(&example1_generators(), 3, &tols).unwrap();
        let b = analyze(&example1_generators(), 3, &tols).unwrap();
        assert_eq!(to_json(&ReportDoc::from(&a)), to_json(&ReportDoc::from(&b)));
    }

    #[test]
    fn table_lists_each_component() {
        let report = analyze(&example1_generators(), 7, &Tolerances::default()).unwrap();
        let table = render_table(&report);
        assert!(table.contains("universal"));
        assert!(table.lines().count() >= 2 + report.verdicts.len());
    }
}
