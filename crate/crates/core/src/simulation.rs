//! Network generators, ground-truth weights and end-to-end recovery runs.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};

use crate::connectivity::{check_conditions, ConditionReport, Method};
use crate::document::serialize_network;
use crate::error::{Error, Result};
use crate::graph::{Link, Network, SimplePath};
use crate::linalg::Rational;
use crate::measurement::{MeasurementMatrix, DEFAULT_PATH_CAP};

fn node_names(n: usize) -> Vec<String> {
    let width = (n.max(2) - 1).to_string().len();
    (0..n).map(|i| format!("n{i:0width$}")).collect()
}

/// Random connected network on `n` nodes: a random spanning tree plus
/// `extra_links` further links, never joining the two monitors. The
/// monitors are the two lexicographically first nodes.
pub fn random_network(n: usize, extra_links: usize, seed: u64) -> Result<Network> {
    if n < 4 {
        return Err(Error::Infeasible(format!("need at least 4 nodes, got {n}")));
    }
    let names = node_names(n);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut rng);
    // The first two tree nodes are joined directly, so they must not be
    // the monitor pair.
    if order[0] < 2 && order[1] < 2 {
        order.swap(1, 2);
    }
    let forbidden = Link::new(0, 1);
    let mut links = BTreeSet::new();
    for k in 1..order.len() {
        let u = order[k];
        let choices: Vec<usize> = order[..k]
            .iter()
            .copied()
            .filter(|&p| Link::new(p, u) != forbidden)
            .collect();
        let p = choices[rng.random_range(0..choices.len())];
        links.insert(Link::new(p, u));
    }

    let mut spare: Vec<Link> = (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| Link::new(a, b)))
        .filter(|l| *l != forbidden && !links.contains(l))
        .collect();
    if extra_links > spare.len() {
        return Err(Error::Infeasible(format!(
            "{extra_links} extra links requested, only {} available",
            spare.len()
        )));
    }
    spare.shuffle(&mut rng);
    links.extend(spare.into_iter().take(extra_links));

    let pairs: Vec<(&str, &str)> = links
        .iter()
        .map(|l| {
            let (a, b) = l.endpoints();
            (names[a].as_str(), names[b].as_str())
        })
        .collect();
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    Network::new(&refs, &pairs, (refs[0], refs[1]))
}

/// Every connected network on `n` labelled nodes whose monitors are the two
/// first nodes and are not adjacent. Nodes are named as in
/// [`random_network`].
pub fn all_networks(n: usize) -> Vec<Network> {
    if n < 3 {
        return Vec::new();
    }
    let names = node_names(n);
    let slots: Vec<Link> = (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| Link::new(a, b)))
        .filter(|&l| l != Link::new(0, 1))
        .collect();
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << slots.len()) {
        if (mask.count_ones() as usize) < n - 1 {
            continue;
        }
        let pairs: Vec<(&str, &str)> = slots
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, l)| {
                let (a, b) = l.endpoints();
                (names[a].as_str(), names[b].as_str())
            })
            .collect();
        if let Ok(net) = Network::new(&refs, &pairs, (refs[0], refs[1])) {
            out.push(net);
        }
    }
    out
}

/// Positive weight for every link of a network.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinkWeights(pub BTreeMap<Link, Rational>);

impl LinkWeights {
    pub fn get(&self, link: Link) -> Option<&Rational> {
        self.0.get(&link)
    }

    /// Weights listed in the column order of the measurement matrix.
    pub fn from_columns(net: &Network, values: &[Rational]) -> Result<LinkWeights> {
        let columns = net.interior_decomposition()?.columns();
        if columns.len() != values.len() {
            return Err(Error::MalformedInput(format!(
                "expected {} weights, got {}",
                columns.len(),
                values.len()
            )));
        }
        Ok(LinkWeights(
            columns
                .into_iter()
                .map(|(l, _)| l)
                .zip(values.iter().cloned())
                .collect(),
        ))
    }
}

/// Small positive rationals: numerators in 1..=9, denominators in 1..=4.
pub fn assign_weights(net: &Network, seed: u64) -> LinkWeights {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    LinkWeights(
        net.links()
            .into_iter()
            .map(|l| {
                let p: i64 = rng.random_range(1..=9);
                let q: i64 = rng.random_range(1..=4);
                (l, Rational::new(BigInt::from(p), BigInt::from(q)))
            })
            .collect(),
    )
}

/// Sum of link weights along each path.
pub fn measure_paths(
    net: &Network,
    weights: &LinkWeights,
    paths: &[SimplePath],
) -> Result<Vec<Rational>> {
    paths
        .iter()
        .map(|p| {
            p.links()
                .try_fold(Rational::from_integer(0.into()), |acc, l| {
                    weights
                        .get(l)
                        .map(|w| acc + w)
                        .ok_or_else(|| Error::MissingWeight(net.link_name(l)))
                })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinkOutcome {
    pub link: Link,
    pub assigned: Rational,
    pub recovered: Option<Rational>,
    pub identifiable: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RoundTripReport {
    /// SHA-256 of the canonical graph document, lowercase hex.
    pub digest: String,
    pub conditions: ConditionReport,
    pub path_count: usize,
    pub rank: usize,
    pub links: Vec<LinkOutcome>,
    pub exact_match: bool,
}

impl RoundTripReport {
    pub fn identifiable_links(&self) -> Vec<Link> {
        self.links
            .iter()
            .filter(|o| o.identifiable)
            .map(|o| o.link)
            .collect()
    }
}

pub fn network_digest(net: &Network) -> String {
    Sha256::digest(serialize_network(net).as_bytes())
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

/// Weights from `seed`, noise-free measurements, then recovery.
pub fn round_trip(net: &Network, seed: u64) -> Result<RoundTripReport> {
    round_trip_with(net, &assign_weights(net, seed))
}

pub fn round_trip_with(net: &Network, weights: &LinkWeights) -> Result<RoundTripReport> {
    let conditions = check_conditions(net, Method::Characterization)?;
    let m = MeasurementMatrix::for_network(net, DEFAULT_PATH_CAP)?;
    let measurements = measure_paths(net, weights, &m.paths)?;
    let recovered = m.recover_metrics(&measurements)?;
    let identifiable = m.identifiable_columns();
    let links: Vec<LinkOutcome> = m
        .columns
        .iter()
        .zip(identifiable)
        .map(|((l, _), ok)| LinkOutcome {
            link: *l,
            assigned: weights.get(*l).cloned().expect("weights cover every link"),
            recovered: recovered.get(l).cloned(),
            identifiable: ok,
        })
        .collect();
    let exact_match = links
        .iter()
        .filter(|o| o.identifiable)
        .all(|o| o.recovered.as_ref() == Some(&o.assigned));
    Ok(RoundTripReport {
        digest: network_digest(net),
        conditions,
        path_count: m.row_count(),
        rank: m.rank(),
        links,
        exact_match,
    })
}
