//! Border-link classification and the face-level checks built on it.
//!
//! A link is NON_BORDER when some certificate has cycles meeting only in
//! `v` and `w` and a `p1` that stays off `c2 - v - w`. Otherwise it is a
//! border link: class 1 if certificates with cycles meeting only in `v`, `w`
//! exist but all of them force `p1` onto `c2`, class 2 if every certificate's
//! cycles share a third node.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::graph::{Link, Network, NodeId, SimplePath};

use super::certificate::{cycle_pairs, first_disjoint_pair, path_candidates, CyclePairCertificate};
use super::cycles::{
    enumerate_faces, faces_through, require_conditions, require_interior_link, Cycle,
};
use super::{SearchLimits, SearchOrder};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BorderVerdict {
    NonBorder,
    BorderClass1,
    BorderClass2,
}

impl BorderVerdict {
    pub fn as_str(self) -> &'static str {
        match self {
            BorderVerdict::NonBorder => "NON_BORDER",
            BorderVerdict::BorderClass1 => "BORDER_CLASS_1",
            BorderVerdict::BorderClass2 => "BORDER_CLASS_2",
        }
    }

    pub fn is_border(self) -> bool {
        self != BorderVerdict::NonBorder
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BorderClassification {
    pub link: Link,
    pub verdict: BorderVerdict,
    /// NON_BORDER: the strengthened certificate. Border classes: the first
    /// ordinary certificate met, for inspection.
    pub witness: CyclePairCertificate,
    /// Class 2: every third node shared by the cycles of some certificate.
    pub shared_nodes: Vec<NodeId>,
    pub obstruction: Option<String>,
}

/// Extra conditions of a NON_BORDER witness.
pub fn is_strengthened(cert: &CyclePairCertificate) -> bool {
    cert.extra_shared_nodes().is_empty()
        && !cert
            .p1
            .nodes()
            .iter()
            .any(|&u| u != cert.v && u != cert.w && cert.c2.contains(u))
}

pub fn classify_link(
    net: &Network,
    link: Link,
    limits: &SearchLimits,
    order: SearchOrder,
) -> Result<BorderClassification> {
    require_interior_link(net, link)?;
    require_conditions(net)?;
    let (v, w) = link.endpoints();
    let mut class1_example: Option<CyclePairCertificate> = None;
    let mut class2_example: Option<CyclePairCertificate> = None;
    let mut shared = BTreeSet::new();

    for (c1, c2, assignment) in cycle_pairs(net, link, limits, order)? {
        let cand = path_candidates(net, &c1, &c2, v, w, assignment, limits)?;
        let Some((p1, p2)) = first_disjoint_pair(&cand.p1, &cand.p2) else {
            continue;
        };
        let mut cert = CyclePairCertificate {
            v,
            w,
            c1: c1.clone(),
            c2: c2.clone(),
            p1: p1.clone(),
            p2: p2.clone(),
            assignment,
        };
        let extra = cert.extra_shared_nodes();
        if !extra.is_empty() {
            shared.extend(extra);
            class2_example.get_or_insert(cert);
            continue;
        }
        let off_c2 = cand.p1.iter().filter(|p| {
            !p.nodes()
                .iter()
                .any(|&u| u != v && u != w && c2.contains(u))
        });
        if let Some((p1, p2)) = first_disjoint_pair(off_c2, &cand.p2) {
            cert.p1 = p1.clone();
            cert.p2 = p2.clone();
            debug_assert!(is_strengthened(&cert));
            return Ok(BorderClassification {
                link,
                verdict: BorderVerdict::NonBorder,
                witness: cert,
                shared_nodes: Vec::new(),
                obstruction: None,
            });
        }
        class1_example.get_or_insert(cert);
    }

    if let Some(witness) = class1_example {
        return Ok(BorderClassification {
            link,
            verdict: BorderVerdict::BorderClass1,
            witness,
            shared_nodes: Vec::new(),
            obstruction: Some(
                "every certificate whose cycles meet only in v and w forces p1 onto c2 - v - w"
                    .into(),
            ),
        });
    }
    if let Some(witness) = class2_example {
        let names = net.node_names(&shared.iter().copied().collect::<Vec<_>>());
        return Ok(BorderClassification {
            link,
            verdict: BorderVerdict::BorderClass2,
            witness,
            shared_nodes: shared.into_iter().collect(),
            obstruction: Some(format!(
                "every certificate's cycles share a third node, from {{{}}}",
                names.join(", ")
            )),
        });
    }
    Err(Error::SearchExhausted(net.link_name(link)))
}

/// Classifies every interior link once.
pub fn classify_all(
    net: &Network,
    limits: &SearchLimits,
) -> Result<BTreeMap<Link, BorderClassification>> {
    net.links()
        .into_iter()
        .filter(|&l| net.is_interior_link(l))
        .map(|l| Ok((l, classify_link(net, l, limits, SearchOrder::Canonical)?)))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceBorderCount {
    pub face: Cycle,
    pub interior_links: usize,
    pub border_links: usize,
}

/// Border-link count for every face.
pub fn check_prop4a(net: &Network, limits: &SearchLimits) -> Result<Vec<FaceBorderCount>> {
    require_conditions(net)?;
    let classes = classify_all(net, limits)?;
    Ok(enumerate_faces(net, limits)?
        .into_iter()
        .map(|face| {
            let interior: Vec<Link> = face
                .links()
                .into_iter()
                .filter(|&l| net.is_interior_link(l))
                .collect();
            let border = interior
                .iter()
                .filter(|l| classes[l].verdict.is_border())
                .count();
            FaceBorderCount {
                face,
                interior_links: interior.len(),
                border_links: border,
            }
        })
        .collect())
}

/// A face through border link `link` avoiding both monitors.
pub fn find_monitor_face(net: &Network, link: Link, limits: &SearchLimits) -> Result<Cycle> {
    let class = classify_link(net, link, limits, SearchOrder::Canonical)?;
    if !class.verdict.is_border() {
        return Err(Error::PreconditionFailed(format!(
            "{} is not a border link",
            net.link_name(link)
        )));
    }
    faces_through(net, link, limits)?
        .into_iter()
        .find(|f| !f.nodes().iter().any(|&u| net.is_monitor(u)))
        .ok_or_else(|| {
            Error::NotFound(format!("monitor-free face through {}", net.link_name(link)))
        })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonitorPaths {
    /// From the first monitor to `v` (or to `w` when `swapped`).
    pub from_first: SimplePath,
    /// From the second monitor to `w` (or to `v` when `swapped`).
    pub from_second: SimplePath,
    pub swapped: bool,
}

/// Node-disjoint paths `m1 → v` and `m2 → w` that touch the face only at
/// their final node. The roles of `v` and `w` may be exchanged.
pub fn find_disjoint_monitor_paths(
    net: &Network,
    face: &Cycle,
    v: NodeId,
    w: NodeId,
    limits: &SearchLimits,
) -> Result<MonitorPaths> {
    let link = Link::new(v, w);
    if !face.contains_link(link) {
        return Err(Error::PreconditionFailed(
            "vw is not a link of the face".into(),
        ));
    }
    if face.nodes().iter().any(|&u| net.is_monitor(u)) {
        return Err(Error::PreconditionFailed(
            "the face uses a monitor, so its links are not all interior".into(),
        ));
    }
    let (m1, m2) = net.monitors();
    for (swapped, (t1, t2)) in [(false, (v, w)), (true, (w, v))] {
        let (t1, t2) = (t1, t2);
        let firsts = paths_into_face(net, face, m1, t1, &BTreeSet::new(), limits)?;
        for p in firsts {
            let used: BTreeSet<NodeId> = p.nodes().iter().copied().collect();
            if let Some(q) = paths_into_face(net, face, m2, t2, &used, limits)?
                .into_iter()
                .next()
            {
                return Ok(MonitorPaths {
                    from_first: p,
                    from_second: q,
                    swapped,
                });
            }
        }
    }
    Err(Error::NotFound(format!(
        "disjoint monitor paths to {}",
        net.link_name(link)
    )))
}

/// Simple paths `start → target` whose nodes other than `target` avoid the
/// face and `avoid`.
fn paths_into_face(
    net: &Network,
    face: &Cycle,
    start: NodeId,
    target: NodeId,
    avoid: &BTreeSet<NodeId>,
    limits: &SearchLimits,
) -> Result<Vec<SimplePath>> {
    let n = net.node_count();
    let mut blocked = vec![false; n];
    for &u in face.nodes() {
        blocked[u] = u != target;
    }
    for &u in avoid {
        blocked[u] = true;
    }
    let mut targets = vec![false; n];
    targets[target] = true;
    super::certificate::monitor_paths(
        net.graph(),
        &super::certificate::PathQuery {
            start,
            targets: &targets,
            blocked: &blocked,
            banned_links: &BTreeSet::new(),
        },
        limits,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construction::verify_certificate;
    use crate::fixtures;

    #[test]
    fn fixture_links_are_non_border() {
        let k4 = fixtures::k4();
        let ab = k4.link_by_names("a", "b").unwrap();
        let c = classify_link(&k4, ab, &SearchLimits::default(), SearchOrder::Canonical).unwrap();
        assert_eq!(c.verdict, BorderVerdict::NonBorder);
        assert!(is_strengthened(&c.witness));
        assert!(verify_certificate(&k4, &c.witness).unwrap().all());

        let wheel = fixtures::wheel();
        let ch = wheel.link_by_names("c", "h").unwrap();
        let c =
            classify_link(&wheel, ch, &SearchLimits::default(), SearchOrder::Canonical).unwrap();
        assert_eq!(c.verdict, BorderVerdict::NonBorder);
    }

    #[test]
    fn face_counts_are_zero_on_fixtures() {
        for net in [fixtures::k4(), fixtures::wheel()] {
            let counts = check_prop4a(&net, &SearchLimits::default()).unwrap();
            assert!(!counts.is_empty());
            assert!(counts.iter().all(|c| c.border_links == 0));
            assert!(counts.iter().all(|c| c.border_links <= c.interior_links));
        }
    }

    #[test]
    fn monitor_face_guard() {
        let k4 = fixtures::k4();
        let ab = k4.link_by_names("a", "b").unwrap();
        assert!(matches!(
            find_monitor_face(&k4, ab, &SearchLimits::default()),
            Err(Error::PreconditionFailed(_))
        ));
    }

    #[test]
    fn disjoint_paths_guard_on_wheel() {
        let wheel = fixtures::wheel();
        let faces = enumerate_faces(&wheel, &SearchLimits::default()).unwrap();
        assert!(faces
            .iter()
            .all(|f| f.nodes().iter().any(|&u| wheel.is_monitor(u))));
        let (c, h) = (wheel.node("c").unwrap(), wheel.node("h").unwrap());
        let face = faces
            .iter()
            .find(|f| f.contains_link(Link::new(c, h)))
            .unwrap();
        assert!(matches!(
            find_disjoint_monitor_paths(&wheel, face, c, h, &SearchLimits::default()),
            Err(Error::PreconditionFailed(_))
        ));
    }

    #[test]
    fn disjoint_paths_on_interior_triangle() {
        // triangle x-y-z hanging between the monitors
        let net = Network::new(
            &["m1", "m2", "x", "y", "z"],
            &[
                ("x", "y"),
                ("y", "z"),
                ("x", "z"),
                ("m1", "x"),
                ("m1", "y"),
                ("m2", "y"),
                ("m2", "z"),
                ("m1", "z"),
                ("m2", "x"),
            ],
            ("m1", "m2"),
        )
        .unwrap();
        let ids: Vec<NodeId> = ["x", "y", "z"]
            .iter()
            .map(|n| net.node(n).unwrap())
            .collect();
        let face = Cycle::new(net.graph(), ids.clone()).unwrap();
        let paths =
            find_disjoint_monitor_paths(&net, &face, ids[0], ids[1], &SearchLimits::default())
                .unwrap();
        let (m1, m2) = net.monitors();
        assert_eq!(paths.from_first.start(), m1);
        assert_eq!(paths.from_second.start(), m2);
        assert_eq!(paths.from_first.end(), ids[0]);
        assert_eq!(paths.from_second.end(), ids[1]);
        assert!(!paths
            .from_first
            .nodes()
            .iter()
            .any(|u| paths.from_second.contains(*u)));
    }
}
