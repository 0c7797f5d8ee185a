//! Cycles, chordless cycles and faces.
//!
//! A face is a chordless cycle whose removal leaves no component without a
//! monitor. Graphs need not be planar; this is the only face property the
//! cycle-pair and border-link constructions rely on.

use std::collections::BTreeSet;

use crate::connectivity::{check_conditions, Method};
use crate::error::{Error, Result};
use crate::graph::{Graph, Link, Network, NodeId};

use super::SearchLimits;

/// Simple cycle in canonical form: rotated to start at its smallest node and
/// oriented so the second node is smaller than the last.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cycle {
    nodes: Vec<NodeId>,
}

impl Cycle {
    /// Validates a closed walk `nodes[0] .. nodes[k-1] nodes[0]` against
    /// `graph` and canonicalizes it.
    pub fn new(graph: &Graph, nodes: Vec<NodeId>) -> Result<Cycle> {
        if nodes.len() < 3 {
            return Err(Error::MalformedInput(
                "a cycle needs at least three nodes".into(),
            ));
        }
        if nodes.iter().any(|&u| u >= graph.node_count()) {
            return Err(Error::MalformedInput("cycle node out of range".into()));
        }
        let distinct: BTreeSet<_> = nodes.iter().collect();
        if distinct.len() != nodes.len() {
            return Err(Error::MalformedInput("cycle repeats a node".into()));
        }
        let k = nodes.len();
        if (0..k).any(|i| !graph.has_link(nodes[i], nodes[(i + 1) % k])) {
            return Err(Error::MalformedInput(
                "consecutive cycle nodes are not adjacent".into(),
            ));
        }
        Ok(Cycle::canonical(nodes))
    }

    pub(crate) fn canonical(mut nodes: Vec<NodeId>) -> Cycle {
        let start = nodes
            .iter()
            .enumerate()
            .min_by_key(|(_, &u)| u)
            .map(|(i, _)| i)
            .expect("nonempty");
        nodes.rotate_left(start);
        if nodes[1] > nodes[nodes.len() - 1] {
            nodes[1..].reverse();
        }
        Cycle { nodes }
    }

    pub fn nodes(&self) -> &[NodeId] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn contains(&self, node: NodeId) -> bool {
        self.nodes.contains(&node)
    }

    fn position(&self, node: NodeId) -> Option<usize> {
        self.nodes.iter().position(|&u| u == node)
    }

    pub fn links(&self) -> Vec<Link> {
        let k = self.nodes.len();
        (0..k)
            .map(|i| Link::new(self.nodes[i], self.nodes[(i + 1) % k]))
            .collect()
    }

    pub fn contains_link(&self, link: Link) -> bool {
        let (u, v) = link.endpoints();
        match (self.position(u), self.position(v)) {
            (Some(i), Some(j)) => {
                let k = self.nodes.len();
                (i + 1) % k == j || (j + 1) % k == i
            }
            _ => false,
        }
    }

    /// Links of the cycle with `v` and `w` deleted (the path `C - v - w`).
    pub fn links_avoiding(&self, v: NodeId, w: NodeId) -> BTreeSet<Link> {
        self.links()
            .into_iter()
            .filter(|l| !l.touches(v) && !l.touches(w))
            .collect()
    }

    pub fn node_set(&self) -> BTreeSet<NodeId> {
        self.nodes.iter().copied().collect()
    }

    /// Walks from `x` to `y` along the side that does not use `keep`, then
    /// splices in `replacement` (a path from `x` to `y`) instead.
    fn reroute(&self, x: NodeId, y: NodeId, keep: Link, replacement: &[NodeId]) -> Cycle {
        let k = self.nodes.len();
        let px = self.position(x).expect("x on cycle");
        let py = self.position(y).expect("y on cycle");
        let forward: Vec<NodeId> = (0..=(py + k - px) % k)
            .map(|s| self.nodes[(px + s) % k])
            .collect();
        let forward_has_keep = forward.windows(2).any(|w| Link::new(w[0], w[1]) == keep);
        // Arc from y back to x that contains `keep`.
        let kept: Vec<NodeId> = if forward_has_keep {
            // keep lies on x→y forward, so the kept arc is x→y forward; walk
            // it from y backwards to x.
            forward.iter().rev().copied().collect()
        } else {
            (0..=(px + k - py) % k)
                .map(|s| self.nodes[(py + s) % k])
                .collect()
        };
        debug_assert_eq!(kept.first(), Some(&y));
        debug_assert_eq!(kept.last(), Some(&x));
        debug_assert_eq!(replacement.first(), Some(&x));
        debug_assert_eq!(replacement.last(), Some(&y));
        let mut nodes = kept;
        nodes.extend_from_slice(&replacement[1..replacement.len() - 1]);
        Cycle::canonical(nodes)
    }
}

/// First chord in canonical order, if any.
pub fn first_chord(graph: &Graph, cycle: &Cycle) -> Option<Link> {
    let nodes = cycle.nodes();
    let mut sorted = nodes.to_vec();
    sorted.sort_unstable();
    for (i, &x) in sorted.iter().enumerate() {
        for &y in &sorted[i + 1..] {
            let l = Link::new(x, y);
            if graph.has_link(x, y) && !cycle.contains_link(l) {
                return Some(l);
            }
        }
    }
    None
}

pub fn is_chordless(graph: &Graph, cycle: &Cycle) -> bool {
    first_chord(graph, cycle).is_none()
}

/// Components of `G - V(cycle)` with no monitor.
pub fn monitor_free_components(net: &Network, cycle: &Cycle) -> Vec<Vec<NodeId>> {
    let mut alive = vec![true; net.node_count()];
    for &u in cycle.nodes() {
        alive[u] = false;
    }
    net.graph()
        .components(&alive)
        .into_iter()
        .filter(|c| !c.iter().any(|&u| net.is_monitor(u)))
        .collect()
}

pub fn is_face(net: &Network, cycle: &Cycle) -> bool {
    is_chordless(net.graph(), cycle) && monitor_free_components(net, cycle).is_empty()
}

/// Replaces chord-subtended arcs (the side not containing `keep`) by their
/// chord until the cycle is induced.
pub fn eliminate_chords(graph: &Graph, mut cycle: Cycle, keep: Link) -> Cycle {
    while let Some(chord) = first_chord(graph, &cycle) {
        let (x, y) = chord.endpoints();
        cycle = cycle.reroute(x, y, keep, &[x, y]);
        debug_assert!(cycle.contains_link(keep));
    }
    cycle
}

pub(crate) fn require_conditions(net: &Network) -> Result<()> {
    let report = check_conditions(net, Method::Characterization)?;
    if !report.condition_one.pass {
        return Err(Error::PreconditionFailed(
            "condition one fails: some G - l is not 2-edge-connected".into(),
        ));
    }
    if !report.condition_two.pass {
        return Err(Error::PreconditionFailed(
            "condition two fails: G + m1m2 is not 3-vertex-connected".into(),
        ));
    }
    Ok(())
}

pub(crate) fn require_interior_link(net: &Network, link: Link) -> Result<()> {
    if !net.has_link(link) {
        return Err(Error::UnknownLink(format!("{:?}", link.endpoints())));
    }
    if !net.is_interior_link(link) {
        return Err(Error::PreconditionFailed(format!(
            "{} is not an interior link",
            net.link_name(link)
        )));
    }
    Ok(())
}

/// First `v → w` path in `G - vw` found by depth-first search with sorted
/// neighbor order.
fn seed_path(graph: &Graph, v: NodeId, w: NodeId) -> Option<Vec<NodeId>> {
    let g = graph.without_link(Link::new(v, w));
    let mut on_path = vec![false; g.node_count()];
    let mut path = vec![v];
    let mut cursor = vec![0usize];
    on_path[v] = true;
    while let Some(pos) = cursor.last_mut() {
        let u = *path.last().unwrap();
        let Some(&x) = g.neighbors(u).get(*pos) else {
            cursor.pop();
            on_path[u] = false;
            path.pop();
            continue;
        };
        *pos += 1;
        if on_path[x] {
            continue;
        }
        path.push(x);
        if x == w {
            return Some(path);
        }
        on_path[x] = true;
        cursor.push(0);
    }
    None
}

/// Chordless cycle through `link`: a depth-first seed cycle followed by
/// repeated chord replacement on the side away from `link`.
pub fn grow_induced_cycle(net: &Network, link: Link) -> Result<Cycle> {
    require_interior_link(net, link)?;
    require_conditions(net)?;
    let (v, w) = link.endpoints();
    let path = seed_path(net.graph(), v, w)
        .ok_or_else(|| Error::PreconditionFailed(format!("{} is a bridge", net.link_name(link))))?;
    let seed = Cycle::canonical(path);
    Ok(eliminate_chords(net.graph(), seed, link))
}

/// Total node count of monitor-free components; refinement drives it to 0.
pub fn detached_size(net: &Network, cycle: &Cycle) -> usize {
    monitor_free_components(net, cycle)
        .iter()
        .map(Vec::len)
        .sum()
}

/// Inner paths `x1 → x2` whose internal nodes all lie in `component`.
fn inner_paths(
    graph: &Graph,
    component: &[NodeId],
    x1: NodeId,
    x2: NodeId,
    limits: &SearchLimits,
) -> Result<Vec<Vec<NodeId>>> {
    let mut inside = vec![false; graph.node_count()];
    for &u in component {
        inside[u] = true;
    }
    let mut out = Vec::new();
    let mut path = vec![x1];
    let mut on_path = vec![false; graph.node_count()];
    on_path[x1] = true;
    let mut cursor = vec![0usize];
    while let Some(pos) = cursor.last_mut() {
        let u = *path.last().unwrap();
        let Some(&y) = graph.neighbors(u).get(*pos) else {
            cursor.pop();
            on_path[u] = false;
            path.pop();
            continue;
        };
        *pos += 1;
        if y == x2 && path.len() >= 2 {
            let mut p = path.clone();
            p.push(x2);
            out.push(p);
            limits.check(out.len(), "inner paths")?;
            continue;
        }
        if !inside[y] || on_path[y] {
            continue;
        }
        on_path[y] = true;
        path.push(y);
        cursor.push(0);
    }
    Ok(out)
}

/// Reroutes a chordless cycle through monitor-free components until it is a
/// face. Every accepted step strictly lowers [`detached_size`]; if no inner
/// path achieves that, the refinement reports a stall.
pub fn refine_to_face(
    net: &Network,
    cycle: &Cycle,
    link: Link,
    limits: &SearchLimits,
) -> Result<Cycle> {
    if !cycle.contains_link(link) {
        return Err(Error::PreconditionFailed(format!(
            "cycle does not use {}",
            net.link_name(link)
        )));
    }
    if !is_chordless(net.graph(), cycle) {
        return Err(Error::PreconditionFailed("cycle has a chord".into()));
    }
    require_conditions(net)?;
    let g = net.graph();
    let mut current = cycle.clone();
    let mut metric = detached_size(net, &current);
    'outer: while metric > 0 {
        for comp in monitor_free_components(net, &current) {
            let attach: Vec<NodeId> = current
                .nodes()
                .iter()
                .copied()
                .filter(|&x| g.neighbors(x).iter().any(|y| comp.binary_search(y).is_ok()))
                .collect::<BTreeSet<_>>()
                .into_iter()
                .collect();
            for (i, &x1) in attach.iter().enumerate() {
                for &x2 in &attach[i + 1..] {
                    for inner in inner_paths(g, &comp, x1, x2, limits)? {
                        let rerouted = current.reroute(x1, x2, link, &inner);
                        let next = eliminate_chords(g, rerouted, link);
                        let next_metric = detached_size(net, &next);
                        if next_metric < metric {
                            current = next;
                            metric = next_metric;
                            continue 'outer;
                        }
                    }
                }
            }
        }
        return Err(Error::RefinementStalled(net.link_name(link)));
    }
    debug_assert!(is_face(net, &current));
    Ok(current)
}

/// Every simple cycle, canonical and sorted.
pub fn enumerate_cycles(graph: &Graph, limits: &SearchLimits) -> Result<Vec<Cycle>> {
    let n = graph.node_count();
    let mut out = Vec::new();
    for s in 0..n {
        let mut on_path = vec![false; n];
        let mut path = vec![s];
        on_path[s] = true;
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
            if x == s {
                if path.len() >= 3 && path[1] < path[path.len() - 1] {
                    out.push(Cycle {
                        nodes: path.clone(),
                    });
                    limits.check(out.len(), "cycles")?;
                }
                continue;
            }
            if x < s || on_path[x] {
                continue;
            }
            on_path[x] = true;
            path.push(x);
            cursor.push(0);
        }
    }
    out.sort();
    Ok(out)
}

/// Every simple cycle using `link`, canonical and sorted.
pub fn cycles_through(graph: &Graph, link: Link, limits: &SearchLimits) -> Result<Vec<Cycle>> {
    let (v, w) = link.endpoints();
    let g = graph.without_link(link);
    let n = g.node_count();
    let mut out = Vec::new();
    let mut on_path = vec![false; n];
    let mut path = vec![v];
    on_path[v] = true;
    let mut cursor = vec![0usize];
    while let Some(pos) = cursor.last_mut() {
        let u = *path.last().unwrap();
        let Some(&x) = g.neighbors(u).get(*pos) else {
            cursor.pop();
            on_path[u] = false;
            path.pop();
            continue;
        };
        *pos += 1;
        if on_path[x] {
            continue;
        }
        if x == w {
            if path.len() >= 2 {
                let mut nodes = path.clone();
                nodes.push(w);
                out.push(Cycle::canonical(nodes));
                limits.check(out.len(), "cycles through a link")?;
            }
            continue;
        }
        on_path[x] = true;
        path.push(x);
        cursor.push(0);
    }
    out.sort();
    Ok(out)
}

/// Faces, canonical order.
pub fn enumerate_faces(net: &Network, limits: &SearchLimits) -> Result<Vec<Cycle>> {
    Ok(enumerate_cycles(net.graph(), limits)?
        .into_iter()
        .filter(|c| is_face(net, c))
        .collect())
}

pub fn faces_through(net: &Network, link: Link, limits: &SearchLimits) -> Result<Vec<Cycle>> {
    Ok(cycles_through(net.graph(), link, limits)?
        .into_iter()
        .filter(|c| is_face(net, c))
        .collect())
}
