//! Network representation and the interior/exterior split.
//!
//! Node identifiers are opaque strings. A [`Network`] stores them sorted, and
//! every algorithm in the crate works on the resulting dense indices, so index
//! order and lexicographic order coincide. All canonical orderings (columns,
//! paths, cycles, witnesses) follow from that.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use crate::error::{Error, Result, ValidationCode};

/// Index of a node in a network's canonical (sorted) node list.
pub type NodeId = usize;

/// Undirected link with endpoints stored in ascending order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Link {
    lo: NodeId,
    hi: NodeId,
}

impl Link {
    pub fn new(u: NodeId, v: NodeId) -> Self {
        if u <= v {
            Link { lo: u, hi: v }
        } else {
            Link { lo: v, hi: u }
        }
    }

    pub fn endpoints(self) -> (NodeId, NodeId) {
        (self.lo, self.hi)
    }

    pub fn touches(self, node: NodeId) -> bool {
        self.lo == node || self.hi == node
    }

    pub fn other(self, node: NodeId) -> Option<NodeId> {
        if self.lo == node {
            Some(self.hi)
        } else if self.hi == node {
            Some(self.lo)
        } else {
            None
        }
    }
}

/// Simple undirected graph over dense indices with sorted adjacency lists.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Graph {
    adj: Vec<Vec<NodeId>>,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
        }
    }

    /// Builds a graph from a link list. Duplicates and self-loops are ignored.
    pub fn from_links(n: usize, links: impl IntoIterator<Item = Link>) -> Self {
        let mut g = Graph::empty(n);
        for l in links {
            g.add_link(l);
        }
        g
    }

    pub fn add_link(&mut self, link: Link) -> bool {
        let (u, v) = link.endpoints();
        if u == v || self.has_link(u, v) {
            return false;
        }
        let pos = self.adj[u].binary_search(&v).unwrap_err();
        self.adj[u].insert(pos, v);
        let pos = self.adj[v].binary_search(&u).unwrap_err();
        self.adj[v].insert(pos, u);
        true
    }

    pub fn remove_link(&mut self, link: Link) -> bool {
        let (u, v) = link.endpoints();
        match self.adj[u].binary_search(&v) {
            Ok(i) => {
                self.adj[u].remove(i);
                let j = self.adj[v].binary_search(&u).expect("symmetric adjacency");
                self.adj[v].remove(j);
                true
            }
            Err(_) => false,
        }
    }

    pub fn with_link(&self, link: Link) -> Graph {
        let mut g = self.clone();
        g.add_link(link);
        g
    }

    pub fn without_link(&self, link: Link) -> Graph {
        let mut g = self.clone();
        g.remove_link(link);
        g
    }

    pub fn node_count(&self) -> usize {
        self.adj.len()
    }

    pub fn link_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn neighbors(&self, u: NodeId) -> &[NodeId] {
        &self.adj[u]
    }

    pub fn degree(&self, u: NodeId) -> usize {
        self.adj[u].len()
    }

    pub fn has_link(&self, u: NodeId, v: NodeId) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// Links in canonical order.
    pub fn links(&self) -> Vec<Link> {
        let mut out = Vec::with_capacity(self.link_count());
        for (u, nbrs) in self.adj.iter().enumerate() {
            for &v in nbrs {
                if u < v {
                    out.push(Link::new(u, v));
                }
            }
        }
        out
    }

    /// Connected components of the subgraph induced by `alive` nodes, each
    /// sorted, ordered by smallest member.
    pub fn components(&self, alive: &[bool]) -> Vec<Vec<NodeId>> {
        let n = self.node_count();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if !alive[s] || seen[s] {
                continue;
            }
            let mut comp = Vec::new();
            let mut queue = VecDeque::from([s]);
            seen[s] = true;
            while let Some(u) = queue.pop_front() {
                comp.push(u);
                for &v in &self.adj[u] {
                    if alive[v] && !seen[v] {
                        seen[v] = true;
                        queue.push_back(v);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// True when the live nodes form at most one component.
    pub fn is_connected_within(&self, alive: &[bool]) -> bool {
        self.components(alive).len() <= 1
    }

    pub fn is_connected(&self) -> bool {
        self.is_connected_within(&vec![true; self.node_count()])
    }
}

/// Validated two-monitor network.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Network {
    names: Vec<String>,
    index: BTreeMap<String, NodeId>,
    graph: Graph,
    monitors: (NodeId, NodeId),
}

impl Network {
    /// Validates and canonicalizes a network description.
    ///
    /// Checks run in a fixed order so that documents with several defects
    /// always report the same code.
    pub fn new<S: AsRef<str>>(
        nodes: &[S],
        links: &[(S, S)],
        monitors: (&str, &str),
    ) -> Result<Network> {
        let mut names: Vec<String> = nodes.iter().map(|s| s.as_ref().to_owned()).collect();
        names.sort();
        if let Some(w) = names.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::MalformedInput(format!("duplicate node `{}`", w[0])));
        }
        let index: BTreeMap<String, NodeId> = names
            .iter()
            .enumerate()
            .map(|(i, n)| (n.clone(), i))
            .collect();

        let (m1, m2) = monitors;
        let m1_id = index.get(m1).copied();
        let m2_id = index.get(m2).copied();
        let (m1_id, m2_id) = match (m1_id, m2_id) {
            (Some(a), Some(b)) if a != b => (a, b),
            (Some(_), Some(_)) => {
                return Err(Error::validation(
                    ValidationCode::MonitorMissing,
                    format!("monitors must be distinct, got `{m1}` twice"),
                ))
            }
            _ => {
                let missing = if m1_id.is_none() { m1 } else { m2 };
                return Err(Error::validation(
                    ValidationCode::MonitorMissing,
                    format!("monitor `{missing}` is not a node"),
                ));
            }
        };

        let mut seen = BTreeSet::new();
        let mut graph = Graph::empty(names.len());
        for (a, b) in links {
            let (a, b) = (a.as_ref(), b.as_ref());
            let ia = *index.get(a).ok_or_else(|| {
                Error::MalformedInput(format!("link endpoint `{a}` is not a node"))
            })?;
            let ib = *index.get(b).ok_or_else(|| {
                Error::MalformedInput(format!("link endpoint `{b}` is not a node"))
            })?;
            if ia == ib {
                return Err(Error::validation(
                    ValidationCode::SelfLoop,
                    format!("self-loop at `{a}`"),
                ));
            }
            let link = Link::new(ia, ib);
            if !seen.insert(link) {
                return Err(Error::validation(
                    ValidationCode::DuplicateLink,
                    format!("link `{a}-{b}` appears more than once"),
                ));
            }
            if link == Link::new(m1_id, m2_id) {
                return Err(Error::validation(
                    ValidationCode::MonitorLink,
                    format!("direct monitor link `{m1}-{m2}` is not allowed"),
                ));
            }
            graph.add_link(link);
        }
        if !graph.is_connected() {
            return Err(Error::validation(
                ValidationCode::Disconnected,
                "network is not connected",
            ));
        }
        Ok(Network {
            names,
            index,
            graph,
            monitors: (m1_id, m2_id),
        })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn node_count(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, node: NodeId) -> &str {
        &self.names[node]
    }

    pub fn node(&self, name: &str) -> Option<NodeId> {
        self.index.get(name).copied()
    }

    pub fn monitors(&self) -> (NodeId, NodeId) {
        self.monitors
    }

    pub fn is_monitor(&self, node: NodeId) -> bool {
        node == self.monitors.0 || node == self.monitors.1
    }

    pub fn links(&self) -> Vec<Link> {
        self.graph.links()
    }

    pub fn has_link(&self, link: Link) -> bool {
        let (u, v) = link.endpoints();
        u < self.node_count() && v < self.node_count() && self.graph.has_link(u, v)
    }

    /// Link with neither endpoint a monitor.
    pub fn is_interior_link(&self, link: Link) -> bool {
        !self.is_monitor(link.lo) && !self.is_monitor(link.hi)
    }

    /// `G + m1m2`.
    pub fn augmented_graph(&self) -> Graph {
        self.graph
            .with_link(Link::new(self.monitors.0, self.monitors.1))
    }

    /// Canonical `u-v` label with endpoint names sorted.
    pub fn link_name(&self, link: Link) -> String {
        format!("{}-{}", self.names[link.lo], self.names[link.hi])
    }

    /// Resolves a `u-v` label. Node names may contain `-`, so every split
    /// point is tried.
    pub fn parse_link(&self, label: &str) -> Result<Link> {
        for (pos, _) in label.match_indices('-') {
            let (a, b) = (&label[..pos], &label[pos + 1..]);
            if let (Some(u), Some(v)) = (self.node(a), self.node(b)) {
                let link = Link::new(u, v);
                if self.has_link(link) {
                    return Ok(link);
                }
            }
        }
        Err(Error::UnknownLink(label.to_owned()))
    }

    pub fn link_by_names(&self, a: &str, b: &str) -> Result<Link> {
        match (self.node(a), self.node(b)) {
            (Some(u), Some(v)) if self.has_link(Link::new(u, v)) => Ok(Link::new(u, v)),
            _ => Err(Error::UnknownLink(format!("{a}-{b}"))),
        }
    }

    pub fn node_names(&self, nodes: &[NodeId]) -> Vec<String> {
        nodes.iter().map(|&n| self.names[n].clone()).collect()
    }

    /// Connected components after deleting `victims`, canonically sorted.
    pub fn delete_nodes(&self, victims: &BTreeSet<NodeId>) -> Vec<Vec<NodeId>> {
        let alive: Vec<bool> = (0..self.node_count())
            .map(|u| !victims.contains(&u))
            .collect();
        let mut comps = self.graph.components(&alive);
        comps.sort();
        comps
    }

    /// Interior/exterior split with the canonical column order.
    pub fn interior_decomposition(&self) -> Result<InteriorDecomposition> {
        let (m1, m2) = self.monitors;
        let interior_nodes: Vec<NodeId> = (0..self.node_count())
            .filter(|&u| !self.is_monitor(u))
            .collect();
        if interior_nodes.is_empty() {
            return Err(Error::EmptyInterior);
        }
        let interior_links: Vec<Link> = self
            .links()
            .into_iter()
            .filter(|&l| self.is_interior_link(l))
            .collect();
        Ok(InteriorDecomposition {
            m1_exterior: self.graph.neighbors(m1).to_vec(),
            m2_exterior: self.graph.neighbors(m2).to_vec(),
            interior_nodes,
            interior_links,
            monitors: (m1, m2),
        })
    }
}

impl fmt::Display for Network {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let links: Vec<String> = self
            .links()
            .into_iter()
            .map(|l| self.link_name(l))
            .collect();
        write!(
            f,
            "monitors ({}, {}); links [{}]",
            self.name(self.monitors.0),
            self.name(self.monitors.1),
            links.join(", ")
        )
    }
}

/// Role of a measurement-matrix column.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ColumnKind {
    /// `m1 – a_i`
    FirstExterior,
    /// `b_j – m2`
    SecondExterior,
    Interior,
}

/// Interior graph `H`, the exterior neighbors of both monitors and the
/// resulting column order
/// `[m1–a_1 .. m1–a_k1 | b_1–m2 .. b_k2–m2 | l_1 .. l_kh]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InteriorDecomposition {
    pub interior_nodes: Vec<NodeId>,
    pub interior_links: Vec<Link>,
    /// Neighbors `a_i` of the first monitor, sorted.
    pub m1_exterior: Vec<NodeId>,
    /// Neighbors `b_j` of the second monitor, sorted.
    pub m2_exterior: Vec<NodeId>,
    pub monitors: (NodeId, NodeId),
}

impl InteriorDecomposition {
    pub fn k1(&self) -> usize {
        self.m1_exterior.len()
    }

    pub fn k2(&self) -> usize {
        self.m2_exterior.len()
    }

    pub fn kh(&self) -> usize {
        self.interior_links.len()
    }

    pub fn column_count(&self) -> usize {
        self.k1() + self.k2() + self.kh()
    }

    pub fn columns(&self) -> Vec<(Link, ColumnKind)> {
        let (m1, m2) = self.monitors;
        let mut cols = Vec::with_capacity(self.column_count());
        cols.extend(
            self.m1_exterior
                .iter()
                .map(|&a| (Link::new(m1, a), ColumnKind::FirstExterior)),
        );
        cols.extend(
            self.m2_exterior
                .iter()
                .map(|&b| (Link::new(b, m2), ColumnKind::SecondExterior)),
        );
        cols.extend(
            self.interior_links
                .iter()
                .map(|&l| (l, ColumnKind::Interior)),
        );
        cols
    }

    pub fn column_of(&self, link: Link) -> Option<usize> {
        let (m1, m2) = self.monitors;
        if let Some(a) = link.other(m1) {
            return self.m1_exterior.binary_search(&a).ok();
        }
        if let Some(b) = link.other(m2) {
            return self
                .m2_exterior
                .binary_search(&b)
                .ok()
                .map(|j| self.k1() + j);
        }
        self.interior_links
            .binary_search(&link)
            .ok()
            .map(|q| self.k1() + self.k2() + q)
    }

    /// Columns of the interior links only.
    pub fn interior_columns(&self) -> std::ops::Range<usize> {
        let start = self.k1() + self.k2();
        start..start + self.kh()
    }
}

/// Sequence of distinct, consecutively adjacent nodes. May have a single
/// node and no links.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SimplePath {
    nodes: Vec<NodeId>,
}

impl SimplePath {
    /// Checks simplicity and adjacency against `graph`.
    pub fn new(graph: &Graph, nodes: Vec<NodeId>) -> Result<SimplePath> {
        if nodes.is_empty() {
            return Err(Error::MalformedInput("empty path".into()));
        }
        let mut seen = BTreeSet::new();
        for &u in &nodes {
            if u >= graph.node_count() {
                return Err(Error::MalformedInput(format!(
                    "node index {u} out of range"
                )));
            }
            if !seen.insert(u) {
                return Err(Error::MalformedInput("path repeats a node".into()));
            }
        }
        if nodes.windows(2).any(|w| !graph.has_link(w[0], w[1])) {
            return Err(Error::MalformedInput(
                "consecutive path nodes are not adjacent".into(),
            ));
        }
        Ok(SimplePath { nodes })
    }

    pub(crate) fn from_trusted(nodes: Vec<NodeId>) -> SimplePath {
        debug_assert!(!nodes.is_empty());
        SimplePath { nodes }
    }

    pub fn single(node: NodeId) -> SimplePath {
        SimplePath { nodes: vec![node] }
    }

    pub fn nodes(&self) -> &[NodeId] {
        &self.nodes
    }

    pub fn start(&self) -> NodeId {
        self.nodes[0]
    }

    pub fn end(&self) -> NodeId {
        *self.nodes.last().expect("paths are nonempty")
    }

    /// Number of links.
    pub fn len(&self) -> usize {
        self.nodes.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.len() == 1
    }

    pub fn links(&self) -> impl Iterator<Item = Link> + '_ {
        self.nodes.windows(2).map(|w| Link::new(w[0], w[1]))
    }

    pub fn contains(&self, node: NodeId) -> bool {
        self.nodes.contains(&node)
    }
}
