//! Serializable output documents. Nodes appear by name, links as `u-v`
//! labels and rationals as `p/q` strings.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::connectivity::{ConditionReport, Method};
use crate::construction::{
    BorderClassification, CyclePairCertificate, MonitorAssignment, Verdicts,
};
use crate::document::{format_rational, DocumentKind};
use crate::error::Error;
use crate::graph::{Network, SimplePath};
use crate::linalg::Rational;
use crate::measurement::{IdentifiabilityReport, MeasurementMatrix, TransformedMatrix};
use crate::simulation::RoundTripReport;

fn rationals(row: &[Rational]) -> Vec<String> {
    row.iter().map(format_rational).collect()
}

fn matrix(rows: &[Vec<Rational>]) -> Vec<Vec<String>> {
    rows.iter().map(|r| rationals(r)).collect()
}

fn path_names(net: &Network, p: &SimplePath) -> Vec<String> {
    net.node_names(p.nodes())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConditionOneBody {
    pub pass: bool,
    pub failures: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConditionTwoBody {
    pub pass: bool,
    pub witness: Option<[String; 2]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConditionsBody {
    pub method: Method,
    pub condition_one: ConditionOneBody,
    pub condition_two: ConditionTwoBody,
}

impl ConditionsBody {
    pub fn new(net: &Network, report: &ConditionReport) -> Self {
        ConditionsBody {
            method: report.method,
            condition_one: ConditionOneBody {
                pass: report.condition_one.pass,
                failures: report
                    .condition_one
                    .failures
                    .iter()
                    .map(|&l| net.link_name(l))
                    .collect(),
            },
            condition_two: ConditionTwoBody {
                pass: report.condition_two.pass,
                witness: report
                    .condition_two
                    .witness
                    .map(|(a, b)| [net.name(a).to_owned(), net.name(b).to_owned()]),
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConditionsDocument {
    pub schema: String,
    pub conditions: ConditionsBody,
}

impl ConditionsDocument {
    pub fn new(net: &Network, report: &ConditionReport) -> Self {
        ConditionsDocument {
            schema: DocumentKind::Conditions.schema().into(),
            conditions: ConditionsBody::new(net, report),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PathsDocument {
    pub schema: String,
    pub count: usize,
    pub paths: Vec<Vec<String>>,
}

impl PathsDocument {
    pub fn new(net: &Network, paths: &[SimplePath]) -> Self {
        PathsDocument {
            schema: DocumentKind::Paths.schema().into(),
            count: paths.len(),
            paths: paths.iter().map(|p| path_names(net, p)).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TransformedRowBody {
    pub values: Vec<String>,
    /// `[original row, coefficient]` pairs.
    pub provenance: Vec<(usize, i64)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TransformDocument {
    pub schema: String,
    pub columns: Vec<String>,
    pub k1: usize,
    pub k2: usize,
    pub kh: usize,
    /// Half-open row ranges of the three row blocks.
    pub top_rows: [usize; 2],
    pub tee_rows: [usize; 2],
    pub l_rows: [usize; 2],
    pub rows: Vec<TransformedRowBody>,
    pub b: Vec<Vec<String>>,
    pub t: Vec<Vec<String>>,
    pub l: Vec<Vec<String>>,
    pub rank: usize,
}

impl TransformDocument {
    pub fn new(net: &Network, m: &MeasurementMatrix, t: &TransformedMatrix) -> Self {
        let span = |r: std::ops::Range<usize>| [r.start, r.end];
        TransformDocument {
            schema: DocumentKind::Transform.schema().into(),
            columns: m.columns.iter().map(|(l, _)| net.link_name(*l)).collect(),
            k1: t.k1,
            k2: t.k2,
            kh: t.kh,
            top_rows: span(t.top_rows()),
            tee_rows: span(t.tee_rows()),
            l_rows: span(t.l_rows()),
            rows: t
                .rows
                .iter()
                .map(|r| TransformedRowBody {
                    values: rationals(&r.values),
                    provenance: r.provenance.clone(),
                })
                .collect(),
            b: matrix(&t.b()),
            t: matrix(&t.t()),
            l: matrix(&t.l()),
            rank: t.rank(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IdentifyDocument {
    pub schema: String,
    pub conditions: ConditionsBody,
    pub rank: usize,
    pub path_count: usize,
    pub per_link: BTreeMap<String, bool>,
    pub identifiable_interior: Vec<String>,
    pub recovered: Option<BTreeMap<String, String>>,
}

impl IdentifyDocument {
    pub fn new(net: &Network, report: &IdentifiabilityReport) -> Self {
        IdentifyDocument {
            schema: DocumentKind::Identify.schema().into(),
            conditions: ConditionsBody::new(net, &report.conditions),
            rank: report.rank,
            path_count: report.path_count,
            per_link: report
                .per_link
                .iter()
                .map(|(l, ok)| (net.link_name(*l), *ok))
                .collect(),
            identifiable_interior: report
                .per_link
                .iter()
                .filter(|(l, ok)| **ok && net.is_interior_link(**l))
                .map(|(l, _)| net.link_name(*l))
                .collect(),
            recovered: report.recovered.as_ref().map(|r| {
                r.iter()
                    .map(|(l, x)| (net.link_name(*l), format_rational(x)))
                    .collect()
            }),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CertificateBody {
    pub link: String,
    pub v: String,
    pub w: String,
    /// The monitor playing `m*1`.
    pub first_monitor: String,
    pub c1: Vec<String>,
    pub c2: Vec<String>,
    pub p1: Vec<String>,
    pub p2: Vec<String>,
}

impl CertificateBody {
    pub fn new(net: &Network, cert: &CyclePairCertificate) -> Self {
        let (m1, _) = cert.assignment.resolve(net);
        CertificateBody {
            link: net.link_name(cert.link()),
            v: net.name(cert.v).to_owned(),
            w: net.name(cert.w).to_owned(),
            first_monitor: net.name(m1).to_owned(),
            c1: net.node_names(cert.c1.nodes()),
            c2: net.node_names(cert.c2.nodes()),
            p1: path_names(net, &cert.p1),
            p2: path_names(net, &cert.p2),
        }
    }

    /// Rebuilds the certificate without checking any of its properties.
    pub fn to_certificate(&self, net: &Network) -> crate::error::Result<CyclePairCertificate> {
        use crate::construction::Cycle;
        let node = |name: &str| {
            net.node(name)
                .ok_or_else(|| Error::MalformedCertificate(format!("unknown node `{name}`")))
        };
        let nodes = |names: &[String]| names.iter().map(|n| node(n)).collect::<Result<Vec<_>, _>>();
        let cycle = |names: &[String]| -> crate::error::Result<Cycle> {
            Cycle::new(net.graph(), nodes(names)?)
                .map_err(|e| Error::MalformedCertificate(e.to_string()))
        };
        let path = |names: &[String]| -> crate::error::Result<SimplePath> {
            SimplePath::new(net.graph(), nodes(names)?)
                .map_err(|e| Error::MalformedCertificate(e.to_string()))
        };
        let first = node(&self.first_monitor)?;
        let assignment = MonitorAssignment::ALL
            .into_iter()
            .find(|a| a.resolve(net).0 == first)
            .ok_or_else(|| Error::MalformedCertificate("first_monitor is not a monitor".into()))?;
        Ok(CyclePairCertificate {
            v: node(&self.v)?,
            w: node(&self.w)?,
            c1: cycle(&self.c1)?,
            c2: cycle(&self.c2)?,
            p1: path(&self.p1)?,
            p2: path(&self.p2)?,
            assignment,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CertificateDocument {
    pub schema: String,
    pub certificate: CertificateBody,
    /// Properties (a) to (g), in order.
    pub verdicts: [bool; 7],
}

impl CertificateDocument {
    pub fn new(net: &Network, cert: &CyclePairCertificate, verdicts: &Verdicts) -> Self {
        CertificateDocument {
            schema: DocumentKind::Certificate.schema().into(),
            certificate: CertificateBody::new(net, cert),
            verdicts: verdicts.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassificationDocument {
    pub schema: String,
    pub link: String,
    pub verdict: String,
    pub witness: CertificateBody,
    pub shared_nodes: Vec<String>,
    pub obstruction: Option<String>,
}

impl ClassificationDocument {
    pub fn new(net: &Network, c: &BorderClassification) -> Self {
        ClassificationDocument {
            schema: DocumentKind::Classification.schema().into(),
            link: net.link_name(c.link),
            verdict: c.verdict.as_str().into(),
            witness: CertificateBody::new(net, &c.witness),
            shared_nodes: net.node_names(&c.shared_nodes),
            obstruction: c.obstruction.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LinkOutcomeBody {
    pub link: String,
    pub assigned: String,
    pub recovered: Option<String>,
    pub identifiable: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RoundTripDocument {
    pub schema: String,
    pub digest: String,
    pub network: crate::document::GraphDocument,
    pub conditions: ConditionsBody,
    pub path_count: usize,
    pub rank: usize,
    pub links: Vec<LinkOutcomeBody>,
    pub exact_match: bool,
}

impl RoundTripDocument {
    pub fn new(net: &Network, r: &RoundTripReport) -> Self {
        RoundTripDocument {
            schema: DocumentKind::RoundTrip.schema().into(),
            digest: r.digest.clone(),
            network: crate::document::GraphDocument::from_network(net),
            conditions: ConditionsBody::new(net, &r.conditions),
            path_count: r.path_count,
            rank: r.rank,
            links: r
                .links
                .iter()
                .map(|o| LinkOutcomeBody {
                    link: net.link_name(o.link),
                    assigned: format_rational(&o.assigned),
                    recovered: o.recovered.as_ref().map(format_rational),
                    identifiable: o.identifiable,
                })
                .collect(),
            exact_match: r.exact_match,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ErrorDocument {
    pub schema: String,
    pub kind: String,
    pub message: String,
    pub exit_code: i32,
}

impl ErrorDocument {
    pub fn new(err: &Error) -> Self {
        ErrorDocument {
            schema: DocumentKind::Error.schema().into(),
            kind: err.kind().into(),
            message: err.to_string(),
            exit_code: err.exit_code(),
        }
    }
}

/// Pretty JSON with a trailing newline.
pub fn to_text<T: Serialize>(doc: &T) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("documents serialize");
    s.push('\n');
    s
}
