//! Bridges, cutvertices and the two identifiability conditions.
//!
//! Condition one: `G - l` is 2-edge-connected for every interior link `l`.
//! Condition two: `G + m1m2` is 3-vertex-connected, decided through the
//! pair-deletion characterization (after deleting any two nodes the graph is
//! connected, or every remaining component holds a monitor). The brute-force
//! routines here are independent oracles for both.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, Link, Network, NodeId};

/// Lowlink-based bridge detection, links in canonical order.
pub fn bridges(graph: &Graph) -> Vec<Link> {
    let mut state = LowLink::new(graph);
    state.run();
    let mut out = state.bridges;
    out.sort_unstable();
    out
}

/// Lowlink-based articulation points, sorted.
pub fn cutvertices(graph: &Graph) -> Vec<NodeId> {
    let mut state = LowLink::new(graph);
    state.run();
    (0..graph.node_count())
        .filter(|&u| state.is_cut[u])
        .collect()
}

struct LowLink<'a> {
    graph: &'a Graph,
    disc: Vec<usize>,
    low: Vec<usize>,
    time: usize,
    is_cut: Vec<bool>,
    bridges: Vec<Link>,
}

const UNSEEN: usize = usize::MAX;

impl<'a> LowLink<'a> {
    fn new(graph: &'a Graph) -> Self {
        let n = graph.node_count();
        LowLink {
            graph,
            disc: vec![UNSEEN; n],
            low: vec![UNSEEN; n],
            time: 0,
            is_cut: vec![false; n],
            bridges: Vec::new(),
        }
    }

    fn run(&mut self) {
        for root in 0..self.graph.node_count() {
            if self.disc[root] == UNSEEN {
                self.visit(root);
            }
        }
    }

    /// Iterative DFS; frames hold (node, parent, next neighbor position).
    fn visit(&mut self, root: NodeId) {
        let g = self.graph;
        let mut stack: Vec<(NodeId, NodeId, usize)> = vec![(root, UNSEEN, 0)];
        let mut root_children = 0;
        self.disc[root] = self.time;
        self.low[root] = self.time;
        self.time += 1;
        while let Some(&mut (u, parent, ref mut pos)) = stack.last_mut() {
            if let Some(&v) = g.neighbors(u).get(*pos) {
                *pos += 1;
                if v == parent {
                    continue;
                }
                if self.disc[v] == UNSEEN {
                    self.disc[v] = self.time;
                    self.low[v] = self.time;
                    self.time += 1;
                    if u == root {
                        root_children += 1;
                    }
                    stack.push((v, u, 0));
                } else {
                    self.low[u] = self.low[u].min(self.disc[v]);
                }
            } else {
                stack.pop();
                if parent != UNSEEN {
                    self.low[parent] = self.low[parent].min(self.low[u]);
                    if self.low[u] > self.disc[parent] {
                        self.bridges.push(Link::new(parent, u));
                    }
                    if parent != root && self.low[u] >= self.disc[parent] {
                        self.is_cut[parent] = true;
                    }
                }
            }
        }
        if root_children > 1 {
            self.is_cut[root] = true;
        }
    }
}

/// Bridges by deleting each link in turn.
pub fn bridges_bruteforce(graph: &Graph) -> Vec<Link> {
    let base = graph.components(&vec![true; graph.node_count()]).len();
    graph
        .links()
        .into_iter()
        .filter(|&l| {
            let g = graph.without_link(l);
            g.components(&vec![true; g.node_count()]).len() > base
        })
        .collect()
}

/// Cutvertices by deleting each node in turn.
pub fn cutvertices_bruteforce(graph: &Graph) -> Vec<NodeId> {
    let n = graph.node_count();
    let base = graph.components(&vec![true; n]).len();
    (0..n)
        .filter(|&u| {
            let mut alive = vec![true; n];
            alive[u] = false;
            // An isolated node vanishing lowers the count; only splits count.
            let isolated = graph.degree(u) == 0;
            graph.components(&alive).len() > base - usize::from(isolated)
        })
        .collect()
}

/// Connected and bridge-free. A single node counts as 2-edge-connected.
pub fn is_two_edge_connected(graph: &Graph) -> bool {
    if graph.node_count() <= 1 {
        return true;
    }
    graph.is_connected() && bridges(graph).is_empty()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Method {
    Characterization,
    BruteForce,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConditionOne {
    pub pass: bool,
    /// Interior links `l` for which `G - l` is not 2-edge-connected.
    pub failures: Vec<Link>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConditionTwo {
    pub pass: bool,
    /// First violating node pair in canonical order.
    pub witness: Option<(NodeId, NodeId)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConditionReport {
    pub condition_one: ConditionOne,
    pub condition_two: ConditionTwo,
    pub method: Method,
}

impl ConditionReport {
    pub fn both_pass(&self) -> bool {
        self.condition_one.pass && self.condition_two.pass
    }
}

pub fn condition_one(net: &Network) -> ConditionOne {
    let failures: Vec<Link> = net
        .links()
        .into_iter()
        .filter(|&l| net.is_interior_link(l))
        .filter(|&l| !is_two_edge_connected(&net.graph().without_link(l)))
        .collect();
    ConditionOne {
        pass: failures.is_empty(),
        failures,
    }
}

/// Node pairs `(a, b)`, `a < b`, ordered by `b` and then `a`. This is the
/// canonical order in which witnesses are reported.
fn pairs(n: usize) -> impl Iterator<Item = (NodeId, NodeId)> {
    (0..n).flat_map(|b| (0..b).map(move |a| (a, b)))
}

/// Pair-deletion characterization of condition two.
pub fn condition_two_characterization(net: &Network) -> ConditionTwo {
    let n = net.node_count();
    let g = net.graph();
    let witness = pairs(n).find(|&(a, b)| {
        let mut alive = vec![true; n];
        alive[a] = false;
        alive[b] = false;
        let comps = g.components(&alive);
        comps.len() > 1 && comps.iter().any(|c| !c.iter().any(|&u| net.is_monitor(u)))
    });
    ConditionTwo {
        pass: witness.is_none(),
        witness,
    }
}

/// Whether the network (optionally with the link `m1m2` added) survives the
/// deletion of every node pair.
pub fn is_three_vertex_connected_bruteforce(net: &Network, add_monitor_link: bool) -> Result<bool> {
    Ok(three_connectivity_witness(net, add_monitor_link)?.is_none())
}

/// First node pair whose deletion disconnects the graph.
pub fn three_connectivity_witness(
    net: &Network,
    add_monitor_link: bool,
) -> Result<Option<(NodeId, NodeId)>> {
    let n = net.node_count();
    if n < 4 {
        return Err(Error::TooSmall(n));
    }
    let g = if add_monitor_link {
        net.augmented_graph()
    } else {
        net.graph().clone()
    };
    Ok(pairs(n).find(|&(a, b)| {
        let mut alive = vec![true; n];
        alive[a] = false;
        alive[b] = false;
        !g.is_connected_within(&alive)
    }))
}

/// Both conditions. With [`Method::BruteForce`] condition two comes from
/// exhaustive pair deletion on `G + m1m2`, which needs at least four nodes.
pub fn check_conditions(net: &Network, method: Method) -> Result<ConditionReport> {
    let condition_two = match method {
        Method::Characterization => condition_two_characterization(net),
        Method::BruteForce => {
            let witness = three_connectivity_witness(net, true)?;
            ConditionTwo {
                pass: witness.is_none(),
                witness,
            }
        }
    };
    Ok(ConditionReport {
        condition_one: condition_one(net),
        condition_two,
        method,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn names(net: &Network, links: &[Link]) -> Vec<String> {
        links.iter().map(|&l| net.link_name(l)).collect()
    }

    #[test]
    fn bridges_examples() {
        let path = fixtures::path();
        assert_eq!(
            names(&path, &bridges(path.graph())),
            ["a-b", "a-m1", "b-m2"]
        );
        assert!(bridges(fixtures::k4().graph()).is_empty());
        let chain = Network::new(
            &["m1", "m2", "x"],
            &[("m1", "x"), ("x", "m2")],
            ("m1", "m2"),
        )
        .unwrap();
        assert_eq!(bridges(chain.graph()).len(), 2);
    }

    #[test]
    fn cutvertex_examples() {
        let path = fixtures::path();
        assert_eq!(path.node_names(&cutvertices(path.graph())), ["a", "b"]);
        assert!(cutvertices(fixtures::k4().graph()).is_empty());
        let star = Graph::from_links(4, [Link::new(0, 1), Link::new(0, 2), Link::new(0, 3)]);
        assert_eq!(cutvertices(&star), [0]);
    }

    #[test]
    fn two_edge_connectivity_examples() {
        let k4 = fixtures::k4();
        let ab = k4.link_by_names("a", "b").unwrap();
        assert!(is_two_edge_connected(&k4.graph().without_link(ab)));
        let path = fixtures::path();
        let ab = path.link_by_names("a", "b").unwrap();
        assert!(!is_two_edge_connected(&path.graph().without_link(ab)));
        assert!(is_two_edge_connected(&Graph::empty(1)));
        assert!(!is_two_edge_connected(&Graph::empty(2)));
    }

    #[test]
    fn condition_one_examples() {
        assert!(condition_one(&fixtures::k4()).pass);
        let path = fixtures::path();
        let c1 = condition_one(&path);
        assert!(!c1.pass);
        assert_eq!(names(&path, &c1.failures), ["a-b"]);
        assert!(condition_one(&fixtures::wheel()).pass);
    }

    #[test]
    fn condition_two_examples() {
        assert!(condition_two_characterization(&fixtures::k4()).pass);
        let path = fixtures::path();
        let c2 = condition_two_characterization(&path);
        assert!(!c2.pass);
        let (a, b) = c2.witness.unwrap();
        assert_eq!(path.node_names(&[a, b]), ["b", "m1"]);
        assert!(condition_two_characterization(&fixtures::wheel()).pass);
    }

    #[test]
    fn bruteforce_three_connectivity_examples() {
        let k4 = fixtures::k4();
        assert!(is_three_vertex_connected_bruteforce(&k4, true).unwrap());
        assert!(!is_three_vertex_connected_bruteforce(&k4, false).unwrap());
        assert!(!is_three_vertex_connected_bruteforce(&fixtures::path(), true).unwrap());
        let tiny = Network::new(
            &["m1", "m2", "x"],
            &[("m1", "x"), ("x", "m2")],
            ("m1", "m2"),
        )
        .unwrap();
        assert_eq!(
            is_three_vertex_connected_bruteforce(&tiny, true),
            Err(Error::TooSmall(3))
        );
    }

    #[test]
    fn lowlink_matches_bruteforce_on_fixtures() {
        for net in [fixtures::k4(), fixtures::path(), fixtures::wheel()] {
            assert_eq!(bridges(net.graph()), bridges_bruteforce(net.graph()));
            assert_eq!(
                cutvertices(net.graph()),
                cutvertices_bruteforce(net.graph())
            );
        }
    }

    #[test]
    fn disconnected_graphs_are_handled() {
        // two triangles joined by nothing plus an isolated node
        let g = Graph::from_links(
            7,
            [
                Link::new(0, 1),
                Link::new(1, 2),
                Link::new(0, 2),
                Link::new(3, 4),
                Link::new(4, 5),
            ],
        );
        assert_eq!(bridges(&g), bridges_bruteforce(&g));
        assert_eq!(cutvertices(&g), cutvertices_bruteforce(&g));
        assert_eq!(cutvertices(&g), [4]);
    }
}
