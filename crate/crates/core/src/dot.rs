//! Graphviz rendering of networks, optionally annotated with a certificate.

use std::collections::BTreeMap;
use std::fmt::Write;

use crate::construction::CyclePairCertificate;
use crate::graph::{Link, Network};

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

pub fn render(net: &Network, cert: Option<&CyclePairCertificate>) -> String {
    let mut styles: BTreeMap<Link, Vec<&str>> = BTreeMap::new();
    if let Some(c) = cert {
        for l in c.c1.links() {
            styles.entry(l).or_default().push("c1");
        }
        for l in c.c2.links() {
            styles.entry(l).or_default().push("c2");
        }
        for l in c.p1.links() {
            styles.entry(l).or_default().push("p1");
        }
        for l in c.p2.links() {
            styles.entry(l).or_default().push("p2");
        }
    }

    let mut out = String::from("graph tomolink {\n  node [shape=circle];\n");
    for u in 0..net.node_count() {
        let shape = if net.is_monitor(u) {
            " [shape=doublecircle]"
        } else {
            ""
        };
        writeln!(out, "  {}{shape};", quote(net.name(u))).unwrap();
    }
    for l in net.links() {
        let (a, b) = l.endpoints();
        let mut attrs = Vec::new();
        if let Some(tags) = styles.get(&l) {
            attrs.push(format!("label={}", quote(&tags.join(","))));
            let color = match tags[0] {
                "c1" => "blue",
                "c2" => "darkgreen",
                _ => "red",
            };
            attrs.push(format!("color={color}"));
            if tags.iter().any(|t| t.starts_with('p')) {
                attrs.push("style=dashed".into());
            }
        }
        if cert.is_some_and(|c| c.link() == l) {
            attrs.push("penwidth=3".into());
        }
        let attrs = if attrs.is_empty() {
            String::new()
        } else {
            format!(" [{}]", attrs.join(", "))
        };
        writeln!(
            out,
            "  {} -- {}{attrs};",
            quote(net.name(a)),
            quote(net.name(b))
        )
        .unwrap();
    }
    out.push_str("}\n");
    out
}
