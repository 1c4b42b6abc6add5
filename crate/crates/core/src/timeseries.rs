//! Dynamic time warping and hierarchical agglomerative clustering of series.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::Write;

use serde::{Deserialize, Serialize};

use crate::math::{mean, population_std};
use crate::{Error, Result};

/// DTW distance with local cost `|a_i - b_j|`, unit steps and no window.
pub fn dtw_distance(a: &[f64], b: &[f64]) -> Result<f64> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::EmptySequence);
    }
    let m = b.len();
    let mut prev = vec![f64::INFINITY; m + 1];
    let mut cur = vec![f64::INFINITY; m + 1];
    prev[0] = 0.0;
    for &x in a {
        cur[0] = f64::INFINITY;
        for j in 1..=m {
            let cost = (x - b[j - 1]).abs();
            cur[j] = cost + prev[j - 1].min(prev[j]).min(cur[j - 1]);
        }
        core::mem::swap(&mut prev, &mut cur);
    }
    Ok(prev[m])
}

/// How the distance between two merged clusters is derived.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Linkage {
    Single,
    Complete,
    #[default]
    Average,
}

/// A labeled series whose missing points are `None`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LabeledSeries {
    pub label: String,
    pub values: Vec<Option<f64>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct ClusterOptions {
    pub linkage: Linkage,
    /// Standardize each series to zero mean and unit variance before DTW.
    pub z_normalize: bool,
}

/// Symmetric matrix of pairwise distances, stored densely.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DistanceMatrix {
    pub labels: Vec<String>,
    pub values: Vec<Vec<f64>>,
}

impl DistanceMatrix {
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[i][j]
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }
}

fn prepare(values: &[Option<f64>], z_normalize: bool) -> Vec<f64> {
    let observed: Vec<f64> = values.iter().flatten().copied().collect();
    if !z_normalize {
        return observed;
    }
    match (mean(&observed), population_std(&observed)) {
        (Some(m), Some(sd)) if sd > 0.0 => observed.iter().map(|v| (v - m) / sd).collect(),
        (Some(m), _) => observed.iter().map(|v| v - m).collect(),
        _ => observed,
    }
}

/// Pairwise DTW distances after dropping missing points.
pub fn dtw_matrix(series: &[LabeledSeries], z_normalize: bool) -> Result<DistanceMatrix> {
    let prepared: Vec<Vec<f64>> = series.iter().map(|s| prepare(&s.values, z_normalize)).collect();
    let n = series.len();
    let mut values = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in (i + 1)..n {
            let d = dtw_distance(&prepared[i], &prepared[j])?;
            values[i][j] = d;
            values[j][i] = d;
        }
    }
    Ok(DistanceMatrix { labels: series.iter().map(|s| s.label.clone()).collect(), values })
}

/// One agglomeration step: clusters `left` and `right` joined at `height`.
///
/// Node ids below the leaf count are leaves; the node created by merge `k`
/// has id `leaf_count + k`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Merge {
    pub left: usize,
    pub right: usize,
    pub height: f64,
    pub size: usize,
}

/// Binary merge tree over labeled leaves.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Dendrogram {
    pub labels: Vec<String>,
    pub merges: Vec<Merge>,
    pub linkage: Linkage,
}

/// Nested form of a [`Dendrogram`] for JSON output.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum DendrogramNode {
    Leaf { label: String },
    Merge { height: f64, children: [alloc::boxed::Box<DendrogramNode>; 2] },
}

impl Dendrogram {
    pub fn leaf_count(&self) -> usize {
        self.labels.len()
    }

    fn root(&self) -> usize {
        self.labels.len() + self.merges.len() - 1
    }

    fn height_of(&self, node: usize) -> f64 {
        if node < self.labels.len() {
            0.0
        } else {
            self.merges[node - self.labels.len()].height
        }
    }

    /// Leaf labels of the first cluster formed.
    pub fn first_merge_labels(&self) -> Option<(&str, &str)> {
        let m = self.merges.first()?;
        let n = self.labels.len();
        (m.left < n && m.right < n).then(|| (self.labels[m.left].as_str(), self.labels[m.right].as_str()))
    }

    pub fn to_tree(&self) -> DendrogramNode {
        self.node(self.root())
    }

    fn node(&self, id: usize) -> DendrogramNode {
        let n = self.labels.len();
        if id < n {
            return DendrogramNode::Leaf { label: self.labels[id].clone() };
        }
        let m = &self.merges[id - n];
        DendrogramNode::Merge {
            height: m.height,
            children: [alloc::boxed::Box::new(self.node(m.left)), alloc::boxed::Box::new(self.node(m.right))],
        }
    }

    /// Newick text; branch lengths are height differences between parent and child.
    pub fn to_newick(&self) -> String {
        let mut out = String::new();
        self.write_newick(self.root(), None, &mut out);
        out.push(';');
        out
    }

    fn write_newick(&self, id: usize, parent_height: Option<f64>, out: &mut String) {
        let n = self.labels.len();
        if id < n {
            out.push_str(&newick_label(&self.labels[id]));
        } else {
            let m = self.merges[id - n];
            out.push('(');
            self.write_newick(m.left, Some(m.height), out);
            out.push(',');
            self.write_newick(m.right, Some(m.height), out);
            out.push(')');
        }
        if let Some(h) = parent_height {
            let _ = write!(out, ":{}", h - self.height_of(id));
        }
    }
}

fn newick_label(label: &str) -> String {
    if label.chars().any(|c| " ():;,[]'\t\n".contains(c)) {
        format!("'{}'", label.replace('\'', "''"))
    } else {
        label.to_string()
    }
}

/// Agglomerates over a precomputed distance matrix.
///
/// At each step the closest pair of clusters merges; exact ties go to the
/// pair whose smallest leaf labels are lexicographically first.
pub fn agglomerate(matrix: &DistanceMatrix, linkage: Linkage) -> Result<Dendrogram> {
    let n = matrix.len();
    if n < 2 {
        return Err(Error::TooFewSeries(n));
    }
    let mut seen = BTreeSet::new();
    for l in &matrix.labels {
        if !seen.insert(l) {
            return Err(Error::DuplicateLabel(l.clone()));
        }
    }
    // Active clusters: (node id, size, smallest leaf label)
    let mut active: Vec<(usize, usize, String)> =
        matrix.labels.iter().enumerate().map(|(i, l)| (i, 1, l.clone())).collect();
    let mut dist: Vec<Vec<f64>> = matrix.values.clone();
    let mut merges = Vec::with_capacity(n - 1);
    while active.len() > 1 {
        let mut best: Option<(f64, (&str, &str), usize, usize)> = None;
        for i in 0..active.len() {
            for j in (i + 1)..active.len() {
                let d = dist[i][j];
                let (a, b) = (active[i].2.as_str(), active[j].2.as_str());
                let key = if a <= b { (a, b) } else { (b, a) };
                let better = match &best {
                    None => true,
                    Some((bd, bk, _, _)) => d < *bd || (d == *bd && key < *bk),
                };
                if better {
                    best = Some((d, key, i, j));
                }
            }
        }
        let (height, _, i, j) = best.expect("at least two active clusters");
        let (ni, si, li) = active[i].clone();
        let (nj, sj, lj) = active[j].clone();
        let (left, right) = if li <= lj { (ni, nj) } else { (nj, ni) };
        merges.push(Merge { left, right, height, size: si + sj });
        let merged_row: Vec<f64> = (0..active.len())
            .map(|k| {
                let (a, b) = (dist[i][k], dist[j][k]);
                match linkage {
                    Linkage::Single => a.min(b),
                    Linkage::Complete => a.max(b),
                    Linkage::Average => (si as f64 * a + sj as f64 * b) / (si + sj) as f64,
                }
            })
            .collect();
        // Replace i with the merged cluster, drop j (j > i).
        active[i] = (n + merges.len() - 1, si + sj, if li <= lj { li } else { lj });
        for (k, row) in dist.iter_mut().enumerate() {
            row[i] = merged_row[k];
        }
        dist[i] = merged_row;
        dist[i][i] = 0.0;
        active.remove(j);
        dist.remove(j);
        for row in dist.iter_mut() {
            row.remove(j);
        }
    }
    Ok(Dendrogram { labels: matrix.labels.clone(), merges, linkage })
}

/// DTW distance matrix plus agglomerative clustering.
pub fn cluster(series: &[LabeledSeries], options: ClusterOptions) -> Result<(DistanceMatrix, Dendrogram)> {
    if series.len() < 2 {
        return Err(Error::TooFewSeries(series.len()));
    }
    let matrix = dtw_matrix(series, options.z_normalize)?;
    let dendrogram = agglomerate(&matrix, options.linkage)?;
    Ok((matrix, dendrogram))
}
