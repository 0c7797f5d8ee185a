//! Cycle-pair certificates for interior links.
//!
//! A certificate for link `vw` is a face `c1` and a cycle `c2` through `vw`
//! together with monitor paths `p1` (from `m*1` to `c1 - v - w`) and `p2`
//! (from `m*2` to `c2 - v - w`). Its seven properties are checked here from
//! their definitions alone, independent of how the certificate was found.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::{Graph, Link, Network, NodeId, SimplePath};

use super::cycles::{
    cycles_through, faces_through, is_face, require_conditions, require_interior_link, Cycle,
};
use super::{SearchLimits, SearchOrder};

/// Which monitor plays `m*1` (the one joined to the face).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MonitorAssignment {
    FirstMonitor,
    SecondMonitor,
}

impl MonitorAssignment {
    pub const ALL: [MonitorAssignment; 2] = [
        MonitorAssignment::FirstMonitor,
        MonitorAssignment::SecondMonitor,
    ];

    /// `(m*1, m*2)`.
    pub fn resolve(self, net: &Network) -> (NodeId, NodeId) {
        let (m1, m2) = net.monitors();
        match self {
            MonitorAssignment::FirstMonitor => (m1, m2),
            MonitorAssignment::SecondMonitor => (m2, m1),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclePairCertificate {
    pub v: NodeId,
    pub w: NodeId,
    pub c1: Cycle,
    pub c2: Cycle,
    pub p1: SimplePath,
    pub p2: SimplePath,
    pub assignment: MonitorAssignment,
}

impl CyclePairCertificate {
    pub fn link(&self) -> Link {
        Link::new(self.v, self.w)
    }

    /// Cycle nodes shared besides `v` and `w`.
    pub fn extra_shared_nodes(&self) -> Vec<NodeId> {
        shared_beyond(&self.c1, &self.c2, self.v, self.w)
    }
}

fn shared_beyond(c1: &Cycle, c2: &Cycle, v: NodeId, w: NodeId) -> Vec<NodeId> {
    let a = c1.node_set();
    c2.nodes()
        .iter()
        .copied()
        .filter(|u| *u != v && *u != w && a.contains(u))
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect()
}

/// Verdicts for properties (a) through (g), in order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Verdicts(pub [bool; 7]);

impl Verdicts {
    pub const LABELS: [&'static str; 7] = ["a", "b", "c", "d", "e", "f", "g"];

    pub fn all(&self) -> bool {
        self.0.iter().all(|&b| b)
    }

    pub fn face(&self) -> bool {
        self.0[0]
    }
    pub fn single_shared_link(&self) -> bool {
        self.0[1]
    }
    pub fn at_most_one_extra_node(&self) -> bool {
        self.0[2]
    }
    pub fn path_endpoints(&self) -> bool {
        self.0[3]
    }
    pub fn paths_disjoint(&self) -> bool {
        self.0[4]
    }
    pub fn paths_off_cycle_links(&self) -> bool {
        self.0[5]
    }
    pub fn paths_avoid_link_ends(&self) -> bool {
        self.0[6]
    }
}

/// Re-validates the certificate structurally, then evaluates (a)–(g).
pub fn verify_certificate(net: &Network, cert: &CyclePairCertificate) -> Result<Verdicts> {
    let g = net.graph();
    let malformed = |what: &str| Error::MalformedCertificate(what.to_owned());
    if cert.v == cert.w || !net.has_link(cert.link()) {
        return Err(malformed("v and w must be the ends of a network link"));
    }
    let c1 = Cycle::new(g, cert.c1.nodes().to_vec()).map_err(|_| malformed("c1 is not a cycle"))?;
    let c2 = Cycle::new(g, cert.c2.nodes().to_vec()).map_err(|_| malformed("c2 is not a cycle"))?;
    let p1 = SimplePath::new(g, cert.p1.nodes().to_vec())
        .map_err(|_| malformed("p1 is not a simple path"))?;
    let p2 = SimplePath::new(g, cert.p2.nodes().to_vec())
        .map_err(|_| malformed("p2 is not a simple path"))?;
    let (v, w) = (cert.v, cert.w);
    let (star1, star2) = cert.assignment.resolve(net);

    let a = is_face(net, &c1);

    let l1: BTreeSet<Link> = c1.links().into_iter().collect();
    let l2: BTreeSet<Link> = c2.links().into_iter().collect();
    let b = l1.intersection(&l2).copied().collect::<Vec<_>>() == vec![cert.link()];

    let c = shared_beyond(&c1, &c2, v, w).len() <= 1;

    let on_rest = |cyc: &Cycle, u: NodeId| cyc.contains(u) && u != v && u != w;
    let d = p1.start() == star1
        && on_rest(&c1, p1.end())
        && p2.start() == star2
        && on_rest(&c2, p2.end());

    let e = !p1.nodes().iter().any(|u| p2.contains(*u));

    let rest1 = c1.links_avoiding(v, w);
    let rest2 = c2.links_avoiding(v, w);
    let f = !p1.links().any(|l| rest1.contains(&l)) && !p2.links().any(|l| rest2.contains(&l));

    let gg = ![v, w].iter().any(|&x| p1.contains(x) || p2.contains(x));

    Ok(Verdicts([a, b, c, d, e, f, gg]))
}

/// Constraint set for one monitor path.
pub(crate) struct PathQuery<'a> {
    pub start: NodeId,
    pub targets: &'a [bool],
    pub blocked: &'a [bool],
    pub banned_links: &'a BTreeSet<Link>,
}

/// Simple paths from `start` that stop at the first target reached, never
/// enter blocked nodes and never use banned links. Any valid monitor path
/// contains one of these as a prefix ending at a target, so existence
/// questions lose nothing by looking only at them.
pub(crate) fn monitor_paths(
    graph: &Graph,
    q: &PathQuery<'_>,
    limits: &SearchLimits,
) -> Result<Vec<SimplePath>> {
    if q.blocked[q.start] {
        return Ok(Vec::new());
    }
    if q.targets[q.start] {
        return Ok(vec![SimplePath::single(q.start)]);
    }
    let n = graph.node_count();
    let mut out = Vec::new();
    let mut on_path = vec![false; n];
    let mut path = vec![q.start];
    on_path[q.start] = true;
    let mut cursor = vec![0usize];
    while let Some(pos) = cursor.last_mut() {
        let u = *path.last().unwrap();
        let Some(&x) = graph.neighbors(u).get(*pos) else {
            cursor.pop();
            on_path[u] = false;
            path.pop();
            continue;
        };
        *pos += 1;
        if on_path[x] || q.blocked[x] || q.banned_links.contains(&Link::new(u, x)) {
            continue;
        }
        if q.targets[x] {
            let mut p = path.clone();
            p.push(x);
            out.push(SimplePath::from_trusted(p));
            limits.check(out.len(), "monitor paths")?;
            continue;
        }
        on_path[x] = true;
        path.push(x);
        cursor.push(0);
    }
    Ok(out)
}

/// Candidate monitor-path lists for one `(c1, c2, assignment)` triple.
pub(crate) struct PathCandidates {
    pub p1: Vec<SimplePath>,
    pub p2: Vec<SimplePath>,
}

pub(crate) fn path_candidates(
    net: &Network,
    c1: &Cycle,
    c2: &Cycle,
    v: NodeId,
    w: NodeId,
    assignment: MonitorAssignment,
    limits: &SearchLimits,
) -> Result<PathCandidates> {
    let n = net.node_count();
    let (star1, star2) = assignment.resolve(net);
    let rest = |c: &Cycle| {
        let mut t = vec![false; n];
        for &u in c.nodes() {
            t[u] = u != v && u != w;
        }
        t
    };
    let blocked = |other: NodeId| {
        let mut b = vec![false; n];
        b[v] = true;
        b[w] = true;
        b[other] = true;
        b
    };
    let (t1, t2) = (rest(c1), rest(c2));
    let (b1, b2) = (blocked(star2), blocked(star1));
    let (l1, l2) = (c1.links_avoiding(v, w), c2.links_avoiding(v, w));
    let p1 = monitor_paths(
        net.graph(),
        &PathQuery {
            start: star1,
            targets: &t1,
            blocked: &b1,
            banned_links: &l1,
        },
        limits,
    )?;
    let p2 = monitor_paths(
        net.graph(),
        &PathQuery {
            start: star2,
            targets: &t2,
            blocked: &b2,
            banned_links: &l2,
        },
        limits,
    )?;
    Ok(PathCandidates { p1, p2 })
}

/// First node-disjoint pair, scanning `p1` candidates in order.
pub(crate) fn first_disjoint_pair<'a>(
    p1s: impl IntoIterator<Item = &'a SimplePath>,
    p2s: &'a [SimplePath],
) -> Option<(&'a SimplePath, &'a SimplePath)> {
    for p1 in p1s {
        if let Some(p2) = p2s
            .iter()
            .find(|p2| !p1.nodes().iter().any(|u| p2.contains(*u)))
        {
            return Some((p1, p2));
        }
    }
    None
}

/// Candidate `(c1, c2, assignment)` triples satisfying (a), (b) and (c), in
/// search order.
pub(crate) fn cycle_pairs(
    net: &Network,
    link: Link,
    limits: &SearchLimits,
    order: SearchOrder,
) -> Result<Vec<(Cycle, Cycle, MonitorAssignment)>> {
    let (v, w) = link.endpoints();
    let mut faces = faces_through(net, link, limits)?;
    let mut cycles = cycles_through(net.graph(), link, limits)?;
    let mut assignments = MonitorAssignment::ALL.to_vec();
    if order == SearchOrder::Reversed {
        faces.reverse();
        cycles.reverse();
        assignments.reverse();
    }
    let mut out = Vec::new();
    for c1 in &faces {
        let l1: BTreeSet<Link> = c1.links().into_iter().collect();
        for c2 in &cycles {
            let only_vw = c2.links().iter().filter(|l| l1.contains(l)).count() == 1;
            if !only_vw || shared_beyond(c1, c2, v, w).len() > 1 {
                continue;
            }
            for &a in &assignments {
                out.push((c1.clone(), c2.clone(), a));
                limits.check(out.len(), "cycle pairs")?;
            }
        }
    }
    Ok(out)
}

/// First certificate in search order for interior link `link`.
pub fn find_cycle_pair(
    net: &Network,
    link: Link,
    limits: &SearchLimits,
    order: SearchOrder,
) -> Result<CyclePairCertificate> {
    require_interior_link(net, link)?;
    require_conditions(net)?;
    let (v, w) = link.endpoints();
    for (c1, c2, assignment) in cycle_pairs(net, link, limits, order)? {
        let cand = path_candidates(net, &c1, &c2, v, w, assignment, limits)?;
        if let Some((p1, p2)) = first_disjoint_pair(&cand.p1, &cand.p2) {
            return Ok(CyclePairCertificate {
                v,
                w,
                c1,
                c2,
                p1: p1.clone(),
                p2: p2.clone(),
                assignment,
            });
        }
    }
    Err(Error::SearchExhausted(net.link_name(link)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn cert_for(net: &Network, a: &str, b: &str) -> CyclePairCertificate {
        let l = net.link_by_names(a, b).unwrap();
        find_cycle_pair(net, l, &SearchLimits::default(), SearchOrder::Canonical).unwrap()
    }

    #[test]
    fn k4_certificate_uses_both_triangles_and_zero_length_paths() {
        let k4 = fixtures::k4();
        let cert = cert_for(&k4, "a", "b");
        let mut cycles = [
            k4.node_names(cert.c1.nodes()),
            k4.node_names(cert.c2.nodes()),
        ];
        cycles.sort();
        assert_eq!(cycles, [["a", "b", "m1"], ["a", "b", "m2"]]);
        assert!(cert.p1.is_empty() && cert.p2.is_empty());
        assert!(cert.c1.contains(cert.p1.start()));
        assert!(cert.c2.contains(cert.p2.start()));
        assert!(verify_certificate(&k4, &cert).unwrap().all());
    }

    #[test]
    fn wheel_certificates_verify() {
        let wheel = fixtures::wheel();
        for (a, b) in [("c", "h"), ("d", "h")] {
            let cert = cert_for(&wheel, a, b);
            assert!(verify_certificate(&wheel, &cert).unwrap().all());
        }
        let cert = cert_for(&wheel, "c", "h");
        assert_eq!(wheel.node_names(cert.c1.nodes()), ["c", "h", "m1"]);
    }

    #[test]
    fn identical_cycles_fail_b() {
        let k4 = fixtures::k4();
        let mut cert = cert_for(&k4, "a", "b");
        cert.c2 = cert.c1.clone();
        let v = verify_certificate(&k4, &cert).unwrap();
        assert!(!v.single_shared_link());
    }

    #[test]
    fn path_through_link_end_fails_g() {
        let k4 = fixtures::k4();
        let mut cert = cert_for(&k4, "a", "b");
        let star1 = cert.p1.start();
        let a = k4.node("a").unwrap();
        cert.p1 = SimplePath::new(k4.graph(), vec![star1, a]).unwrap();
        let v = verify_certificate(&k4, &cert).unwrap();
        assert!(!v.paths_avoid_link_ends());
    }

    #[test]
    fn malformed_certificates_are_rejected() {
        let k4 = fixtures::k4();
        let mut cert = cert_for(&k4, "a", "b");
        cert.w = cert.v;
        assert!(matches!(
            verify_certificate(&k4, &cert),
            Err(Error::MalformedCertificate(_))
        ));
    }

    #[test]
    fn reversed_order_also_finds_certificates() {
        let wheel = fixtures::wheel();
        let l = wheel.link_by_names("c", "h").unwrap();
        let cert =
            find_cycle_pair(&wheel, l, &SearchLimits::default(), SearchOrder::Reversed).unwrap();
        assert!(verify_certificate(&wheel, &cert).unwrap().all());
    }

    #[test]
    fn precondition_guard() {
        let path = fixtures::path();
        let l = path.link_by_names("a", "b").unwrap();
        let err = find_cycle_pair(&path, l, &SearchLimits::default(), SearchOrder::Canonical);
        assert!(matches!(err, Err(Error::PreconditionFailed(_))));
    }
}
