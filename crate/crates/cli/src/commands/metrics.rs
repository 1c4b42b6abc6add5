use std::path::{Path, PathBuf};

use inkspace_core::metrics::{
    aggregate_mean_abs, aggregate_pooled, compute_series, format_directed, ImbalanceSeries, MetricId,
};
use rayon::prelude::*;
use serde::Serialize;

use crate::config::LoadedConfig;
use crate::error::AppResult;
use crate::io::{cell, write_csv, write_json};
use crate::pipeline::Inputs;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AggregateRow {
    pub metric: MetricId,
    pub outlet: String,
    pub pooled: Option<f64>,
    pub pooled_display: String,
    pub mean_abs: Option<f64>,
    pub observed_months: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MetricsOutput {
    pub series: Vec<ImbalanceSeries>,
    pub aggregates: Vec<AggregateRow>,
}

pub fn compute(inputs: &Inputs, cfg: &LoadedConfig) -> AppResult<MetricsOutput> {
    let c = &cfg.config.metrics;
    let pair = c.pair();
    let per_metric: Vec<(Vec<ImbalanceSeries>, Vec<AggregateRow>)> = c
        .select
        .par_iter()
        .map(|&metric| -> AppResult<_> {
            let series = compute_series(&inputs.articles, &inputs.lexicons, &pair, metric, &inputs.analyzers)?;
            let pooled = aggregate_pooled(&inputs.articles, &inputs.lexicons, &pair, metric, &inputs.analyzers)?;
            let rows = series
                .iter()
                .map(|s| {
                    let p = pooled.get(&s.outlet).copied().flatten();
                    AggregateRow {
                        metric,
                        outlet: s.outlet.clone(),
                        pooled: p,
                        pooled_display: format_directed(p),
                        mean_abs: aggregate_mean_abs(s),
                        observed_months: s.observed().len(),
                    }
                })
                .collect();
            Ok((series, rows))
        })
        .collect::<AppResult<_>>()?;
    let (series, aggregates): (Vec<_>, Vec<_>) = per_metric.into_iter().unzip();
    Ok(MetricsOutput { series: series.concat(), aggregates: aggregates.concat() })
}

pub fn write(out: &MetricsOutput, dir: &Path) -> AppResult<Vec<PathBuf>> {
    let dir = dir.join("metrics");
    let series_path = dir.join("series.csv");
    let rows = out.series.iter().flat_map(|s| {
        s.points.iter().map(move |p| {
            vec![
                s.metric.to_string(),
                s.outlet.clone(),
                p.month.to_string(),
                cell(p.score_b),
                cell(p.score_c),
                cell(p.value),
            ]
        })
    });
    write_csv(&series_path, &["metric", "outlet", "month", "score_b", "score_c", "imbalance"], rows)?;

    let table_path = dir.join("aggregates.csv");
    let rows = out.aggregates.iter().map(|r| {
        vec![
            r.metric.to_string(),
            r.outlet.clone(),
            cell(r.pooled),
            r.pooled_display.clone(),
            cell(r.mean_abs),
            r.observed_months.to_string(),
        ]
    });
    write_csv(&table_path, &["metric", "outlet", "pooled", "pooled_display", "mean_abs", "observed_months"], rows)?;

    let json_path = dir.join("aggregates.json");
    write_json(&json_path, &out.aggregates)?;
    Ok(vec![series_path, table_path, json_path])
}
