//! Path measurements, the path-incidence matrix and its block form.
//!
//! Rows are simple `m1 → m2` paths grouped by first hop `a_i`, then by last
//! hop `b_j`, then ordered lexicographically. Columns follow
//! [`InteriorDecomposition::columns`]. Everything is exact; no floating point
//! is involved anywhere in this module.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::connectivity::{check_conditions, ConditionReport, Method};
use crate::error::{Error, Result};
use crate::graph::{ColumnKind, InteriorDecomposition, Link, Network, NodeId, SimplePath};
use crate::linalg::{self, int, Rational, Solution};

pub const DEFAULT_PATH_CAP: usize = 100_000;

/// All simple `m1 → m2` paths in canonical row order.
pub fn enumerate_simple_paths(net: &Network, cap: usize) -> Result<Vec<SimplePath>> {
    let (m1, m2) = net.monitors();
    let g = net.graph();
    let mut found: Vec<Vec<NodeId>> = Vec::new();
    let mut on_path = vec![false; net.node_count()];
    let mut path = vec![m1];
    on_path[m1] = true;
    // Explicit DFS stack of neighbor cursors.
    let mut cursor = vec![0usize];
    while let Some(pos) = cursor.last_mut() {
        let u = *path.last().expect("stack and path move together");
        let Some(&v) = g.neighbors(u).get(*pos) else {
            cursor.pop();
            on_path[u] = false;
            path.pop();
            continue;
        };
        *pos += 1;
        if on_path[v] {
            continue;
        }
        if v == m2 {
            if found.len() == cap {
                return Err(Error::CapExceeded {
                    cap,
                    partial: found.len(),
                });
            }
            let mut p = path.clone();
            p.push(m2);
            found.push(p);
            continue;
        }
        on_path[v] = true;
        path.push(v);
        cursor.push(0);
    }
    found.sort_by(|p, q| {
        let key = |p: &Vec<NodeId>| (p[1], p[p.len() - 2]);
        key(p).cmp(&key(q)).then_with(|| p.cmp(q))
    });
    Ok(found.into_iter().map(SimplePath::from_trusted).collect())
}

/// Path-by-link incidence matrix `R`.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasurementMatrix {
    pub decomposition: InteriorDecomposition,
    pub columns: Vec<(Link, ColumnKind)>,
    pub rows: Vec<Vec<Rational>>,
    pub paths: Vec<SimplePath>,
}

impl MeasurementMatrix {
    pub fn build(net: &Network, paths: Vec<SimplePath>) -> MeasurementMatrix {
        let decomposition = net
            .interior_decomposition()
            .expect("a valid network always has an interior node");
        let columns = decomposition.columns();
        let rows = paths
            .iter()
            .map(|p| {
                let mut row = vec![Rational::zero(); columns.len()];
                for l in p.links() {
                    let c = decomposition
                        .column_of(l)
                        .expect("path links are network links");
                    row[c] = Rational::one();
                }
                row
            })
            .collect();
        MeasurementMatrix {
            decomposition,
            columns,
            rows,
            paths,
        }
    }

    /// Enumerates paths (up to `cap`) and builds the matrix.
    pub fn for_network(net: &Network, cap: usize) -> Result<MeasurementMatrix> {
        Ok(Self::build(net, enumerate_simple_paths(net, cap)?))
    }

    pub fn row_count(&self) -> usize {
        self.rows.len()
    }

    pub fn column_count(&self) -> usize {
        self.columns.len()
    }

    pub fn column_of(&self, link: Link) -> Option<usize> {
        self.decomposition.column_of(link)
    }

    /// `(i, j)` position of a row's first hop among `a_*` and last hop
    /// among `b_*`.
    pub fn group_of(&self, row: usize) -> (usize, usize) {
        let p = self.paths[row].nodes();
        let d = &self.decomposition;
        let i = d
            .m1_exterior
            .binary_search(&p[1])
            .expect("first hop neighbors m1");
        let j = d
            .m2_exterior
            .binary_search(&p[p.len() - 2])
            .expect("last hop neighbors m2");
        (i, j)
    }

    pub fn rank(&self) -> usize {
        linalg::rank(&self.rows, self.column_count())
    }

    pub fn rref(&self) -> linalg::Rref {
        linalg::rref(&self.rows, self.column_count())
    }

    /// Row-space membership of the unit vector of `link`'s column, decided by
    /// comparing `rank(R)` with the rank of `R` plus that unit row.
    pub fn link_identifiable(&self, link: Link) -> Result<bool> {
        let col = self
            .column_of(link)
            .ok_or_else(|| Error::UnknownColumn(format!("{:?}", link.endpoints())))?;
        let mut augmented = self.rows.clone();
        let mut unit = vec![Rational::zero(); self.column_count()];
        unit[col] = Rational::one();
        augmented.push(unit);
        Ok(linalg::rank(&augmented, self.column_count()) == self.rank())
    }

    /// Identifiability of every column from one reduction.
    pub fn identifiable_columns(&self) -> Vec<bool> {
        let red = self.rref();
        (0..self.column_count())
            .map(|c| red.contains_unit(c))
            .collect()
    }

    /// Solves `R w = c` and returns every uniquely determined link value.
    pub fn recover_metrics(&self, measurements: &[Rational]) -> Result<BTreeMap<Link, Rational>> {
        if measurements.len() != self.row_count() {
            return Err(Error::MalformedInput(format!(
                "expected {} measurements, got {}",
                self.row_count(),
                measurements.len()
            )));
        }
        match linalg::solve_determined(&self.rows, self.column_count(), measurements) {
            Solution::Inconsistent => Err(Error::InconsistentMeasurements(
                "no link weights reproduce these path sums".into(),
            )),
            Solution::Determined(values) => Ok(values
                .into_iter()
                .map(|(c, v)| (self.columns[c].0, v))
                .collect()),
        }
    }
}

/// A row of the transformed matrix together with the integer combination of
/// original rows that produced it.
#[derive(Debug, Clone, PartialEq)]
pub struct TransformedRow {
    pub values: Vec<Rational>,
    /// `(original row, coefficient)`, sorted by row, zero coefficients
    /// dropped.
    pub provenance: Vec<(usize, i64)>,
}

impl TransformedRow {
    fn original(index: usize, values: Vec<Rational>) -> Self {
        TransformedRow {
            values,
            provenance: vec![(index, 1)],
        }
    }

    fn subtract(&mut self, other: &TransformedRow) {
        for (x, y) in self.values.iter_mut().zip(&other.values) {
            if !y.is_zero() {
                *x -= y;
            }
        }
        let mut acc: BTreeMap<usize, i64> = self.provenance.iter().copied().collect();
        for &(r, c) in &other.provenance {
            *acc.entry(r).or_insert(0) -= c;
        }
        self.provenance = acc.into_iter().filter(|&(_, c)| c != 0).collect();
    }
}

/// Block form of `R`:
///
/// ```text
///   [ first k2 rows         | B ]   exterior part: e(a_1) + e(b_j)
///   [ k1 - 1 rows           | T ]   exterior part: e(a_q) - e(a_1)
///   [ remaining rows, 0 ext | L ]
/// ```
#[derive(Debug, Clone, PartialEq)]
pub struct TransformedMatrix {
    pub rows: Vec<TransformedRow>,
    pub k1: usize,
    pub k2: usize,
    pub kh: usize,
}

impl TransformedMatrix {
    pub fn top_rows(&self) -> std::ops::Range<usize> {
        0..self.k2
    }

    pub fn tee_rows(&self) -> std::ops::Range<usize> {
        self.k2..self.k2 + self.k1 - 1
    }

    pub fn l_rows(&self) -> std::ops::Range<usize> {
        self.k2 + self.k1 - 1..self.rows.len()
    }

    fn interior_block(&self, range: std::ops::Range<usize>) -> Vec<Vec<Rational>> {
        let start = self.k1 + self.k2;
        self.rows[range]
            .iter()
            .map(|r| r.values[start..].to_vec())
            .collect()
    }

    /// `k2 × kh` Boolean block.
    pub fn b(&self) -> Vec<Vec<Rational>> {
        self.interior_block(self.top_rows())
    }

    /// `(k1 - 1) × kh` block with entries in {-1, 0, 1}.
    pub fn t(&self) -> Vec<Vec<Rational>> {
        self.interior_block(self.tee_rows())
    }

    /// Rows involving interior links only.
    pub fn l(&self) -> Vec<Vec<Rational>> {
        self.interior_block(self.l_rows())
    }

    pub fn values(&self) -> Vec<Vec<Rational>> {
        self.rows.iter().map(|r| r.values.clone()).collect()
    }

    pub fn rank(&self) -> usize {
        linalg::rank(&self.values(), self.k1 + self.k2 + self.kh)
    }

    /// Recomputes every row from its provenance and the original matrix.
    pub fn provenance_consistent(&self, original: &MeasurementMatrix) -> bool {
        self.rows.iter().all(|row| {
            let mut acc = vec![Rational::zero(); original.column_count()];
            for &(r, c) in &row.provenance {
                let c = int(c);
                for (x, y) in acc.iter_mut().zip(&original.rows[r]) {
                    *x += &c * y;
                }
            }
            acc == row.values
        })
    }
}

/// Row reduction of `R` into the `B / T / L` block form.
///
/// Stages, in order:
/// 1. within every `(a_i, b_j)` group, subtract the group's first row from
///    the others; those differences form `L_1`, stacked below the first rows
///    (`k1 * k2` of them, `a`-major);
/// 2. subtract row `j` from row `q*k2 + j` for `q = 1..k1-1`, `j = 1..k2`;
/// 3. subtract row `q*k2 + 1` from row `q*k2 + j` for `j = 2..k2`;
/// 4. move the rows touched by stage 3 (now zero on every exterior column)
///    below `L_1`, in order.
///
/// Rows are 1-based above, as in the block picture.
pub fn lemma1_transform(m: &MeasurementMatrix, net: &Network) -> Result<TransformedMatrix> {
    let d = &m.decomposition;
    let (k1, k2, kh) = (d.k1(), d.k2(), d.kh());

    let mut groups: Vec<Vec<usize>> = vec![Vec::new(); k1 * k2];
    for r in 0..m.row_count() {
        let (i, j) = m.group_of(r);
        groups[i * k2 + j].push(r);
    }
    if let Some(empty) = groups.iter().position(Vec::is_empty) {
        return Err(Error::InteriorDisconnected {
            first_hop: net.name(d.m1_exterior[empty / k2]).to_owned(),
            last_hop: net.name(d.m2_exterior[empty % k2]).to_owned(),
        });
    }

    let mut firsts = Vec::with_capacity(k1 * k2);
    let mut l1 = Vec::new();
    for group in &groups {
        let head = TransformedRow::original(group[0], m.rows[group[0]].clone());
        for &r in &group[1..] {
            let mut row = TransformedRow::original(r, m.rows[r].clone());
            row.subtract(&head);
            l1.push(row);
        }
        firsts.push(head);
    }

    // Zero-based: row q*k2 + j is group (q, j).
    for q in 1..k1 {
        for j in 0..k2 {
            let base = firsts[j].clone();
            firsts[q * k2 + j].subtract(&base);
        }
    }
    for q in 1..k1 {
        let lead = firsts[q * k2].clone();
        for j in 1..k2 {
            firsts[q * k2 + j].subtract(&lead);
        }
    }

    let mut kept = Vec::with_capacity(k2 + k1 - 1);
    let mut moved = Vec::new();
    for (idx, row) in firsts.into_iter().enumerate() {
        let (q, j) = (idx / k2, idx % k2);
        if q >= 1 && j >= 1 {
            moved.push(row);
        } else {
            kept.push(row);
        }
    }
    let mut rows = kept;
    rows.extend(l1);
    rows.extend(moved);
    Ok(TransformedMatrix { rows, k1, k2, kh })
}

/// Conditions, rank and per-link identifiability, plus recovered values when
/// measurements are supplied.
#[derive(Debug, Clone, PartialEq)]
pub struct IdentifiabilityReport {
    pub conditions: ConditionReport,
    pub rank: usize,
    pub path_count: usize,
    /// Every column of `R`, exterior links included.
    pub per_link: BTreeMap<Link, bool>,
    pub recovered: Option<BTreeMap<Link, Rational>>,
}

impl IdentifiabilityReport {
    pub fn all_interior_identifiable(&self, net: &Network) -> bool {
        self.per_link
            .iter()
            .filter(|(l, _)| net.is_interior_link(**l))
            .all(|(_, ok)| *ok)
    }
}

pub fn identify(
    net: &Network,
    cap: usize,
    measurements: Option<&[Rational]>,
) -> Result<IdentifiabilityReport> {
    let conditions = check_conditions(net, Method::Characterization)?;
    let m = MeasurementMatrix::for_network(net, cap)?;
    let red = m.rref();
    let per_link = m
        .columns
        .iter()
        .enumerate()
        .map(|(c, (l, _))| (*l, red.contains_unit(c)))
        .collect();
    let recovered = measurements.map(|c| m.recover_metrics(c)).transpose()?;
    Ok(IdentifiabilityReport {
        conditions,
        rank: red.rank(),
        path_count: m.row_count(),
        per_link,
        recovered,
    })
}
