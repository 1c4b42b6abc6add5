use std::path::{Path, PathBuf};

use inkspace_core::metrics::{ImbalanceSeries, MetricId};
use inkspace_core::timeseries::{cluster, ClusterOptions, DendrogramNode, DistanceMatrix, LabeledSeries, Linkage};
use serde::Serialize;

use crate::error::AppResult;
use crate::io::{write_bytes, write_csv, write_json};
use crate::pipeline::file_stem;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Tree {
    pub leaves: Vec<String>,
    pub newick: String,
    pub root: DendrogramNode,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClusterOutput {
    pub linkage: Linkage,
    pub z_normalize: bool,
    /// DTW runs without a warping window.
    pub window: Option<usize>,
    /// Series left out because no month was observed.
    pub excluded: Vec<String>,
    pub distances: DistanceMatrix,
    /// Every (outlet, metric) series in one tree.
    pub combined: Tree,
    /// Per metric, the outlets' series.
    pub by_metric: Vec<(MetricId, Option<Tree>)>,
}

fn labeled(series: &[&ImbalanceSeries], label: impl Fn(&ImbalanceSeries) -> String) -> (Vec<LabeledSeries>, Vec<String>) {
    let mut kept = Vec::new();
    let mut excluded = Vec::new();
    for s in series {
        let values: Vec<Option<f64>> = s.points.iter().map(|p| p.value).collect();
        if values.iter().any(Option::is_some) {
            kept.push(LabeledSeries { label: label(s), values });
        } else {
            excluded.push(label(s));
        }
    }
    (kept, excluded)
}

fn tree(series: &[LabeledSeries], options: ClusterOptions) -> AppResult<(DistanceMatrix, Tree)> {
    let (distances, dendrogram) = cluster(series, options)?;
    let tree = Tree { leaves: dendrogram.labels.clone(), newick: dendrogram.to_newick(), root: dendrogram.to_tree() };
    Ok((distances, tree))
}

pub fn compute(series: &[ImbalanceSeries], options: ClusterOptions) -> AppResult<ClusterOutput> {
    let all: Vec<&ImbalanceSeries> = series.iter().collect();
    let (kept, excluded) = labeled(&all, |s| format!("{}/{}", s.outlet, s.metric));
    for e in &excluded {
        log::warn!("series {e} has no observed month; left out of clustering");
    }
    let (distances, combined) = tree(&kept, options)?;
    let mut metrics: Vec<MetricId> = series.iter().map(|s| s.metric).collect();
    metrics.dedup();
    let mut by_metric = Vec::new();
    for m in metrics {
        let of_metric: Vec<&ImbalanceSeries> = series.iter().filter(|s| s.metric == m).collect();
        let (kept, _) = labeled(&of_metric, |s| s.outlet.clone());
        let t = if kept.len() >= 2 { Some(tree(&kept, options)?.1) } else { None };
        by_metric.push((m, t));
    }
    Ok(ClusterOutput {
        linkage: options.linkage,
        z_normalize: options.z_normalize,
        window: None,
        excluded,
        distances,
        combined,
        by_metric,
    })
}

pub fn write(out: &ClusterOutput, dir: &Path) -> AppResult<Vec<PathBuf>> {
    let dir = dir.join("cluster");
    let matrix_path = dir.join("distance_matrix.csv");
    let mut header = vec!["series"];
    header.extend(out.distances.labels.iter().map(String::as_str));
    let rows = out.distances.labels.iter().zip(&out.distances.values).map(|(label, row)| {
        std::iter::once(label.clone()).chain(row.iter().map(f64::to_string)).collect::<Vec<_>>()
    });
    write_csv(&matrix_path, &header, rows)?;

    let mut paths = vec![matrix_path];
    let nwk = dir.join("dendrogram.nwk");
    write_bytes(&nwk, format!("{}\n", out.combined.newick).as_bytes())?;
    let json = dir.join("dendrogram.json");
    write_json(&json, &out.combined.root)?;
    paths.extend([nwk, json]);
    for (metric, t) in &out.by_metric {
        if let Some(t) = t {
            let p = dir.join("by_metric").join(format!("{}.nwk", file_stem(metric.as_str())));
            write_bytes(&p, format!("{}\n", t.newick).as_bytes())?;
            paths.push(p);
        }
    }
    Ok(paths)
}

#[cfg(test)]
mod tests {
    use super::*;
    use inkspace_core::corpus::MonthKey;
    use inkspace_core::metrics::ImbalancePoint;

    fn series(outlet: &str, metric: MetricId, values: &[Option<f64>]) -> ImbalanceSeries {
        let points = values
            .iter()
            .enumerate()
            .map(|(i, &value)| ImbalancePoint { month: MonthKey::new(2012, i as u8 + 1).unwrap(), value, score_b: None, score_c: None })
            .collect();
        ImbalanceSeries { metric, outlet: outlet.into(), points }
    }

    #[test]
    fn unobserved_series_are_excluded() {
        let s = vec![
            series("a", MetricId::CovHead, &[Some(0.1), Some(0.2), None]),
            series("b", MetricId::CovHead, &[Some(0.1), Some(0.3), Some(0.2)]),
            series("c", MetricId::CovHead, &[None, None, None]),
            series("a", MetricId::Pov, &[Some(-0.5), None, Some(0.4)]),
        ];
        let out = compute(&s, ClusterOptions::default()).unwrap();
        assert_eq!(out.excluded, ["c/cov_head"]);
        assert_eq!(out.distances.labels, ["a/cov_head", "b/cov_head", "a/pov"]);
        assert!(out.by_metric[0].1.is_some());
        assert!(out.by_metric[1].1.is_none());
    }
}
