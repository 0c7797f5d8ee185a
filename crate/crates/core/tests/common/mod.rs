//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tomolink::linalg::Rational;
use tomolink::simulation::random_network;
use tomolink::Network;

pub const PRIMES: [u64; 2] = [1_000_000_007, 998_244_353];

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

/// Rank over GF(p) by plain elimination.
pub fn rank_mod(rows: &[Vec<i64>], p: u64) -> usize {
    let mut m: Vec<Vec<u64>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| x.rem_euclid(p as i64) as u64).collect())
        .collect();
    let ncols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..ncols {
        let Some(pr) = (rank..m.len()).find(|&r| m[r][c] != 0) else {
            continue;
        };
        m.swap(rank, pr);
        let inv = pow_mod(m[rank][c], p - 2, p);
        for x in m[rank].iter_mut() {
            *x = *x * inv % p;
        }
        let pivot = m[rank].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r != rank && row[c] != 0 {
                let f = row[c];
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x = (*x + p - f * y % p) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Rank agreed on by two primes; panics if they disagree.
pub fn rank_oracle(rows: &[Vec<i64>]) -> usize {
    let a = rank_mod(rows, PRIMES[0]);
    assert_eq!(a, rank_mod(rows, PRIMES[1]), "modular ranks disagree");
    a
}

/// Whether the unit vector of `col` is in the row space.
pub fn unit_in_row_space(rows: &[Vec<i64>], col: usize) -> bool {
    let mut aug = rows.to_vec();
    let mut unit = vec![0; rows.first().map_or(0, Vec::len)];
    unit[col] = 1;
    aug.push(unit);
    rank_oracle(&aug) == rank_oracle(rows)
}

pub fn to_ints(rows: &[Vec<Rational>]) -> Vec<Vec<i64>> {
    rows.iter()
        .map(|r| {
            r.iter()
                .map(|x| {
                    assert!(x.is_integer(), "non-integral entry {x}");
                    x.to_integer().to_i64().expect("small entry")
                })
                .collect()
        })
        .collect()
}

/// The subgraph on non-monitor nodes is nonempty and connected.
pub fn interior_connected(net: &Network) -> bool {
    let alive: Vec<bool> = (0..net.node_count()).map(|u| !net.is_monitor(u)).collect();
    alive.iter().any(|&a| a) && net.graph().is_connected_within(&alive)
}

/// Seeded random network with node count in `lo..=hi` and a random number
/// of extra links.
pub fn sample_network(rng: &mut ChaCha8Rng, lo: usize, hi: usize) -> Network {
    let n = rng.random_range(lo..=hi);
    let spare = n * (n - 1) / 2 - 1 - (n - 1);
    let extra = rng.random_range(0..=spare);
    random_network(n, extra, rng.random()).expect("parameters are feasible")
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Brute-force check that deleting any two nodes leaves `g + m1m2`
/// connected, written without the library's helpers.
pub fn three_connected_augmented(net: &Network) -> bool {
    let n = net.node_count();
    let (m1, m2) = net.monitors();
    let mut adj = vec![vec![false; n]; n];
    for l in net.links() {
        let (a, b) = l.endpoints();
        adj[a][b] = true;
        adj[b][a] = true;
    }
    adj[m1][m2] = true;
    adj[m2][m1] = true;
    for a in 0..n {
        for b in a + 1..n {
            let alive: Vec<usize> = (0..n).filter(|&u| u != a && u != b).collect();
            let Some(&start) = alive.first() else {
                continue;
            };
            let mut seen = vec![false; n];
            seen[a] = true;
            seen[b] = true;
            seen[start] = true;
            let mut stack = vec![start];
            while let Some(u) = stack.pop() {
                for v in 0..n {
                    if adj[u][v] && !seen[v] {
                        seen[v] = true;
                        stack.push(v);
                    }
                }
            }
            if !seen.iter().all(|&s| s) {
                return false;
            }
        }
    }
    true
}
