//! Graph documents, rational encoding and schema checks for output documents.
//!
//! A graph document is JSON with `nodes`, `links` and `monitors`. The
//! canonical serialization sorts nodes, sorts the endpoints of each link and
//! then the link list, and prints each field on one line.

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::graph::Network;
use crate::linalg::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphDocument {
    pub nodes: Vec<String>,
    pub links: Vec<[String; 2]>,
    pub monitors: [String; 2],
}

impl GraphDocument {
    pub fn from_network(net: &Network) -> Self {
        let (m1, m2) = net.monitors();
        GraphDocument {
            nodes: net.names().to_vec(),
            links: net
                .links()
                .into_iter()
                .map(|l| {
                    let (u, v) = l.endpoints();
                    [net.name(u).to_owned(), net.name(v).to_owned()]
                })
                .collect(),
            monitors: [net.name(m1).to_owned(), net.name(m2).to_owned()],
        }
    }

    pub fn to_network(&self) -> Result<Network> {
        let links: Vec<(&str, &str)> = self
            .links
            .iter()
            .map(|[a, b]| (a.as_str(), b.as_str()))
            .collect();
        let nodes: Vec<&str> = self.nodes.iter().map(String::as_str).collect();
        Network::new(&nodes, &links, (&self.monitors[0], &self.monitors[1]))
    }
}

/// Parses and validates a graph document.
pub fn parse_network(text: &str) -> Result<Network> {
    let doc: GraphDocument =
        serde_json::from_str(text).map_err(|e| Error::MalformedInput(e.to_string()))?;
    doc.to_network()
}

/// Canonical graph document text, newline-terminated.
pub fn serialize_network(net: &Network) -> String {
    let doc = GraphDocument::from_network(net);
    format!(
        "{{\n  \"nodes\": {},\n  \"links\": {},\n  \"monitors\": {}\n}}\n",
        compact(&doc.nodes),
        compact(&doc.links),
        compact(&doc.monitors)
    )
}

/// Single-line JSON with a space after each separating comma.
fn compact<T: Serialize>(value: &T) -> String {
    let raw = serde_json::to_string(value).expect("plain data serializes");
    let mut out = String::with_capacity(raw.len() + raw.len() / 4);
    let mut in_str = false;
    let mut escaped = false;
    for ch in raw.chars() {
        out.push(ch);
        if in_str {
            if escaped {
                escaped = false;
            } else if ch == '\\' {
                escaped = true;
            } else if ch == '"' {
                in_str = false;
            }
        } else if ch == '"' {
            in_str = true;
        } else if ch == ',' {
            out.push(' ');
        }
    }
    out
}

/// `p/q` with `q > 0`; integers keep the `/1`.
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Accepts `p/q` or a bare integer `p`.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let text = text.trim();
    let bad = || Error::MalformedInput(format!("not a rational: `{text}`"));
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(num, den))
}

/// Serde adapter writing rationals as `p/q` strings.
pub mod rational_string {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        let text = String::deserialize(d)?;
        parse_rational(&text).map_err(serde::de::Error::custom)
    }
}

/// Parses a measurement vector: a JSON array of rationals (strings or
/// integers), or whitespace/comma separated text.
pub fn parse_measurements(text: &str) -> Result<Vec<Rational>> {
    if let Ok(Value::Array(items)) = serde_json::from_str::<Value>(text) {
        return items
            .iter()
            .map(|v| match v {
                Value::String(s) => parse_rational(s),
                Value::Number(n) if n.is_i64() => {
                    Ok(Rational::from_integer(BigInt::from(n.as_i64().unwrap())))
                }
                other => Err(Error::MalformedInput(format!("not a rational: {other}"))),
            })
            .collect();
    }
    text.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(parse_rational)
        .collect()
}

/// Rationals as a CSV block, one row per line.
pub fn rationals_to_csv(header: &[String], rows: &[Vec<Rational>]) -> String {
    let mut out = header.join(",");
    out.push('\n');
    for row in rows {
        let cells: Vec<String> = row.iter().map(format_rational).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

pub fn csv_to_rationals(text: &str) -> Result<(Vec<String>, Vec<Vec<Rational>>)> {
    let mut lines = text.lines();
    let header: Vec<String> = lines
        .next()
        .ok_or_else(|| Error::MalformedInput("empty csv".into()))?
        .split(',')
        .map(str::to_owned)
        .collect();
    let rows = lines
        .filter(|l| !l.is_empty())
        .map(|l| l.split(',').map(parse_rational).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    if rows.iter().any(|r| r.len() != header.len()) {
        return Err(Error::MalformedInput("ragged csv".into()));
    }
    Ok((header, rows))
}

/// Output document kinds written by the command-line tool.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DocumentKind {
    Conditions,
    Paths,
    Transform,
    Identify,
    Certificate,
    Classification,
    RoundTrip,
    Error,
}

impl DocumentKind {
    pub fn schema(self) -> &'static str {
        match self {
            DocumentKind::Conditions => "tomolink.conditions/1",
            DocumentKind::Paths => "tomolink.paths/1",
            DocumentKind::Transform => "tomolink.transform/1",
            DocumentKind::Identify => "tomolink.identify/1",
            DocumentKind::Certificate => "tomolink.certificate/1",
            DocumentKind::Classification => "tomolink.classification/1",
            DocumentKind::RoundTrip => "tomolink.roundtrip/1",
            DocumentKind::Error => "tomolink.error/1",
        }
    }

    pub fn from_schema(schema: &str) -> Option<Self> {
        use DocumentKind::*;
        [
            Conditions,
            Paths,
            Transform,
            Identify,
            Certificate,
            Classification,
            RoundTrip,
            Error,
        ]
        .into_iter()
        .find(|k| k.schema() == schema)
    }
}

/// Checks a document against the typed schema named by its `schema` field
/// and returns its kind. Each typed document is deserialized strictly and
/// re-serialized; the result must reproduce the input value.
pub fn validate_document(text: &str) -> Result<DocumentKind> {
    let value: Value =
        serde_json::from_str(text).map_err(|e| Error::MalformedInput(e.to_string()))?;
    let schema = value
        .get("schema")
        .and_then(Value::as_str)
        .ok_or_else(|| Error::MalformedInput("missing `schema` field".into()))?;
    let kind = DocumentKind::from_schema(schema)
        .ok_or_else(|| Error::MalformedInput(format!("unknown schema `{schema}`")))?;

    fn check<T: serde::de::DeserializeOwned + Serialize>(value: &Value) -> Result<()> {
        let typed: T = serde_json::from_value(value.clone())
            .map_err(|e| Error::MalformedInput(e.to_string()))?;
        let back = serde_json::to_value(&typed).expect("typed documents serialize");
        if &back != value {
            return Err(Error::MalformedInput(
                "document does not round-trip through its schema".into(),
            ));
        }
        Ok(())
    }

    use crate::report;
    match kind {
        DocumentKind::Conditions => check::<report::ConditionsDocument>(&value)?,
        DocumentKind::Paths => check::<report::PathsDocument>(&value)?,
        DocumentKind::Transform => check::<report::TransformDocument>(&value)?,
        DocumentKind::Identify => check::<report::IdentifyDocument>(&value)?,
        DocumentKind::Certificate => check::<report::CertificateDocument>(&value)?,
        DocumentKind::Classification => check::<report::ClassificationDocument>(&value)?,
        DocumentKind::RoundTrip => check::<report::RoundTripDocument>(&value)?,
        DocumentKind::Error => check::<report::ErrorDocument>(&value)?,
    }
    Ok(kind)
}
